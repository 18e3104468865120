"""Exact Hochschild cohomology and Lie invariants for tame symmetric quiver algebras."""

from .field import Field

__version__ = "0.1.0"

__all__ = ["Field", "__version__"]
