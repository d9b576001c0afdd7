"""
Controllers package for sphere_lagrange.
Contains the operations on exact numbers, spheres, horoballs and spectra.
"""
