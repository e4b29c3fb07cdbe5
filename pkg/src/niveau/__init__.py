"""Recurrence and non-recurrence witnesses in the groups G_p^(n) = F_p^(2^n)."""

__version__ = "0.1.0"
