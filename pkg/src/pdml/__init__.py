"""pdml: exact-arithmetic workbench for dynamical Mordell-Lang
experiments over F_p(t)."""

__version__ = "0.1.0"
