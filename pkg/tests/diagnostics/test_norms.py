"""Tests for the theorem exponents and norm report."""

from __future__ import annotations

from dataclasses import replace

import pytest

from chb_simulator.diagnostics import make_record, theorem_exponents, theorem_norm_report
from chb_simulator.exceptions import ChbConfigurationError

pytestmark = pytest.mark.unit


@pytest.mark.parametrize(
    ("p", "q", "expected"),
    [
        (2.0, 2.0, (4.0, 2.0, 4.0)),
        (1.2, 1.2, (2.4, 1.2, 6.0)),
        (1.5, 2.0, (4.0, 1.5, 4.0)),
    ],
)
def test_exponents(p, q, expected):
    exponents = theorem_exponents(p, q)
    assert (exponents.p0, exponents.s, exponents.r) == pytest.approx(expected)
    assert exponents.as_dict() == pytest.approx(dict(zip(("P0", "S", "R"), expected, strict=True)))


@pytest.mark.parametrize(("p", "q"), [(1.0, 2.0), (2.5, 2.0), (1.5, 0.0)])
def test_exponents_reject_out_of_range(p, q):
    with pytest.raises(ChbConfigurationError):
        theorem_exponents(p, q)


def test_norm_report_of_rest_state(rest_state, zero_sources, model_params):
    first = make_record(rest_state, model_params, zero_sources, dt=0.0, mass_ode_ref=0.0)
    history = [first]
    for step in range(1, 5):
        state = replace(rest_state, t=0.25 * step, step=step)
        history.append(make_record(state, model_params, zero_sources, dt=0.25, mass_ode_ref=0.0))
    report = theorem_norm_report(history, model_params)
    assert report["phi_Linf_V"] == 0.0
    assert report["u_L2_L2"] == 0.0
    assert report["sup_abs_phi"] == 0.0
    assert report["ln_sigma_Linf_L1"] == 0.0
    # int sigma**2 = area for sigma = 1.
    assert report["sigma_Linf_Lq"] == pytest.approx(1.0)
    assert report["sigma_q_half_L2_V"] == pytest.approx(1.0)
    assert (report["P0"], report["S"], report["R"]) == (4.0, 2.0, 4.0)


def test_norm_report_needs_history(model_params):
    with pytest.raises(ChbConfigurationError):
        theorem_norm_report([], model_params)
