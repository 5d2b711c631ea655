"""Kashaev equation, hexahedron recurrences, coherence and principal minors.

Modules:

* ``scalars``: exact rationals and tolerance-aware floats
* ``kashaev3d``: fields on Z^3, the positive recurrence, extension, gauges
* ``tilings``: rhombus tilings of the 2n-gon, flips and piles
* ``complexes``: directed cubical complexes of piles and comfortableness
* ``minors``: signed principal minors and symmetric realizability
* ``genrec``: the four box-shaped recurrence families
* ``cli``: the ``kashaev`` command
"""

from .report import Finding, Report
from .scalars import DEFAULT_TOLERANCE, ToleranceContext, approx_eq, sqrt_principal

__all__ = ["DEFAULT_TOLERANCE", "Finding", "Report", "ToleranceContext", "approx_eq", "sqrt_principal"]
__version__ = "0.1.0"
