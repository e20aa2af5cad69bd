"""Tests for the flow solvers."""
