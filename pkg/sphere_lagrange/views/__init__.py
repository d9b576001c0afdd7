"""
Views package for the sphere lagrange runner.
Contains the text and JSON renderings of command results.
"""

from sphere_lagrange.views.formatters import render_json

__all__ = ["render_json"]
