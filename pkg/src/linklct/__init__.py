"""Exact computations around generic links of determinantal ideals."""
