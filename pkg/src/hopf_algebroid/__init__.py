"""Bialgebroids and Hopf algebroids over function algebras L = R^H built from quasigroup data."""

__version__ = "0.1.0"
