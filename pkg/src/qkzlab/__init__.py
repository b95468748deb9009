"""qkzlab: numerical laboratory for the rational sl2 qKZ difference equation,
its Mellin-Barnes integral solutions, and the R-matrix machinery around them.
"""

__version__ = "0.1.0"
