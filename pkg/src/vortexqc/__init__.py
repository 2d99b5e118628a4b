"""Majorana zero modes in vortex cores, braiding, and Raman read-out."""

__version__ = "0.1.0"
