"""Rees algebras of modules, generic Bourbaki ideals and theorem checks."""

__version__ = "0.1.0"
