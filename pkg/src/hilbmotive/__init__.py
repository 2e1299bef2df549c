"""Motivic decomposition of Hilbert schemes of points on surfaces, exactly."""
__version__ = "0.1.0"
