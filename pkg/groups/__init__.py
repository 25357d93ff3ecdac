"""Concrete metric groups used throughout the verification suites."""
