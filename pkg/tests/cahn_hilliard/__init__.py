"""Tests for the Cahn-Hilliard-Oono step."""
