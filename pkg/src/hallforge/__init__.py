"""Exact-arithmetic workbench for Hall algebras of small finitary categories."""

__version__ = "0.1.0"
