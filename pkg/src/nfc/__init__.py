"""Exact normal forms of Eulerian and rotational double-Hopf vector fields."""

__version__ = "0.1.0"
