"""Exact continued fractions of formal Laurent series over function fields."""
