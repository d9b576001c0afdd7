"""Sphere Lagrange - exact stereographic correspondences, Ford horoballs and Lagrange spectra of rational spheres."""

try:
    from importlib import metadata

    __version__ = metadata.version("sphere-lagrange")
except ImportError:
    __version__ = "0.0.0"
