"""Quantized 2x2 games with entangled referees and an equilibrium search engine."""

__version__ = "0.1.0"
