"""Menger toolkit.

Verification and construction of finite subtraction Menger algebras and
their representations by partial n-place functions.
"""

__version__ = "0.1.0"
