"""Set families, rank functions and H-matroid verification."""

__version__ = "0.1.0"
