"""Certified shadowing, s-limit shadowing and linking verdicts for
piecewise-linear interval maps and shift spaces."""

__version__ = "0.1.0"
