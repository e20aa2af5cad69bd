"""Tests for the experiments package."""
