"""Monochromatic unit-edge probabilities of periodic plane colorings and the
graph bounds derived from them."""

__version__ = "0.1.0"
