"""Tests for the nutrient step."""
