"""Exact verification of inflation and scissor-congruence facts for golden tetrahedra."""

__version__ = "0.1.0"
