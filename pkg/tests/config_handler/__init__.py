"""Tests for the config_handler package."""
