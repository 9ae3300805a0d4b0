"""Exact-arithmetic toolkit for exceptional group data sets, elgebras and
coisotropic subspace classification."""

__all__ = ["linalg", "multilinear", "exc", "datasets", "subspaces",
           "elgebra", "serialize", "randomized", "cli"]
__version__ = "0.1.0"
