"""ferrofock: exact verification of free-fermion structures in classical
(KP/BKP) and quantum (boson chains, XXZ, Felderhof, height) integrable models.

Every closed form carries an independent brute-force oracle: determinant and
Pfaffian formulas against elementary fermion actions, Bethe-state expansions
against operator products, factorized partition functions against
configuration sums, generating functions against plane-partition
enumeration.
"""

__version__ = "0.1.0"

from .exactnum import LaurentPoly, det, pfaffian, poly_eval
from . import partitions
from . import symfun
from . import fock
from . import hirota
from . import lattice
from . import elliptic
from .suites import run_suite, SuiteReport

__all__ = [
    "LaurentPoly", "det", "pfaffian", "poly_eval",
    "partitions", "symfun", "fock", "hirota", "lattice", "elliptic",
    "run_suite", "SuiteReport", "__version__",
]
