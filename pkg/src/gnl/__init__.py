"""Graded nilpotent Lie algebras and exact polynomial length checks."""

__version__ = "0.1.0"
