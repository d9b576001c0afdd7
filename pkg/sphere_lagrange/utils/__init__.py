"""
Utilities package for sphere_lagrange.
Contains logging setup, interval helpers, graph and PDF export, and run archives.
"""
