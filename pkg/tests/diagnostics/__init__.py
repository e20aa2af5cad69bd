"""Tests for the run diagnostics."""
