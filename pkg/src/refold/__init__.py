"""Common unfoldings and refolding sequences between convex polyhedra."""

__version__ = "0.1.0"
