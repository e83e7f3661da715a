"""Combinatorial Floer homology for pairs of curves on plane, sphere, annulus and torus."""

__version__ = "0.1.0"
