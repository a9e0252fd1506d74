"""Sign changes of Hecke eigenform coefficients at prime powers."""

__version__ = "0.1.0"
