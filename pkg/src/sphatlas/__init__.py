"""Exact-arithmetic engine for Bruhat cells and spherical conjugacy classes
of the simple algebraic groups."""

__version__ = "0.1.0"
