"""Command-line front end for generalized score matching on the orthant."""

__version__ = "0.1.0"
