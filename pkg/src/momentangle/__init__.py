"""Moment-angle complex cohomology via the Hochster decomposition."""

__version__ = "0.1.0"
