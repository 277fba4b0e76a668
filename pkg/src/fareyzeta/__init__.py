"""Farey sums, quadratic Riemann sums and mean values of the Riemann zeta function."""

__version__ = "0.1.0"
