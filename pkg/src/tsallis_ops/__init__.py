"""Operator means, relative operator entropies and numerical verification of their inequalities."""

__version__ = "0.1.0"
SCHEMA_VERSION = "1"
