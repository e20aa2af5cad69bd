"""Tests for the step loop coordinator."""
