"""
Main entry point for sphere_lagrange when run as a module.
"""

import sys

from sphere_lagrange.app import main

if __name__ == "__main__":
    sys.exit(main())
