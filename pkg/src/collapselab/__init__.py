"""Numerical laboratory for curvature, collapse, and Yamabe computations
on 4-manifold model geometries."""

__version__ = "0.1.0"
