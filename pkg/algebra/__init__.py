"""Metric groups, group-metric axioms and divisibility, independent of any concrete group."""
