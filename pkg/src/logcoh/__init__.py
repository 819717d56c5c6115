"""Log cohomology of normal crossings pairs: exact algebra, spectral sequences, criteria."""

__version__ = "0.1.0"
