"""Conway Table Package.

This package rebuilds the table of Conway functions of the families of
alternating knots and links with up to six conways, verifying every published
factorization by exact polynomial expansion.
"""

__version__ = "0.1.0"
__author__ = "Minesh A. Jethva"
__email__ = "minesh.1291@gmail.com"
