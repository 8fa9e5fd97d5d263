"""Parametric subdeterminant tools: matrices over Z[x], total S-modularity,
forbidden minors, recognition and integer optimization."""

__version__ = "0.1.0"
