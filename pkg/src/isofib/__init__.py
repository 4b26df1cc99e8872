"""isofib: isotropy-splitting fibrations of compact homogeneous spaces.

Enumerates fibrations G/K1 -> G/K arising from two-factor groupings of an
equal-rank (or, in one family, rank-deficient) isotropy group, via exact
root-system combinatorics, and verifies metric statements about them
(constant-length Killing fields, constant-displacement isometries,
fixed-point sets of isotropy elements) numerically on concrete matrix
models.
"""

__version__ = "0.1.0"

from .rootsys import RootSystem, SimpleType, build_root_system  # noqa: F401
from .dynkin import (  # noqa: F401
    BdSCase,
    CatalogConfig,
    FibrationRecord,
    bds_enumerate,
    catalog,
    splittings,
)
