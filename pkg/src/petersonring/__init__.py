"""Exact presentations of equivariant cohomology rings of type A Peterson varieties."""

__version__ = "0.1.0"
