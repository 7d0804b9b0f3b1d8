"""Diagram chasing in abelian categories, checked on concrete instances.

Two instances are provided: finitely generated abelian groups (``fgab``)
and finite-dimensional vector spaces over a prime field (``vecfp``).
"""

__version__ = "0.1.0"
