"""Exact verification of isomorphisms, ideal identities and cocycles for the
threefolds ``x^n*y + z^2 + t^3 + x*p(x) = 0`` and their cylinders."""

__version__ = "0.1.0"
