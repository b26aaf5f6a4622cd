"""Cross-world mediation toolkit: g-formula estimation, NDE bounds and bias oracles."""

__version__ = "0.1.0"
