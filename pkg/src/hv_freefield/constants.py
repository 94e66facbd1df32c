# file: hv_freefield/constants.py

from enum import Enum, IntEnum
from typing import Final, Tuple

# ============================================================================
# Symbolic parameters
# ============================================================================

class Param(Enum):
    """
    Symbolic parameters of the coefficient field.

    Declaration order is the variable order of the field (graded-lex),
    so it must not be reshuffled.
    """
    CL = "cL"          # Virasoro central charge
    CLI = "cLI"        # mixed Heisenberg-Virasoro central charge
    R = "r"            # module label of Pi(p, r)
    H = "h"            # L(0) highest weight of an abstract Verma module
    HI = "hI"          # I(0) highest weight of an abstract Verma module
    LAMBDA = "lambda"  # Whittaker eigenvalue
    MU = "mu"          # W(2,2) deformation parameter
    CW = "cW"          # W(2,2) central charge

    def __str__(self) -> str:
        return self.value

    @classmethod
    def from_name(cls, name: str) -> 'Param':
        """Look up a parameter by its textual spelling (`lam` is accepted for lambda)."""
        if name == "lam":
            return cls.LAMBDA
        for param in cls:
            if param.value == name:
                return param
        raise KeyError(name)


PARAM_ORDER: Final[Tuple[str, ...]] = tuple(p.value for p in Param)


# ============================================================================
# Generators
# ============================================================================

class Generator(Enum):
    """Heisenberg generators of the rank-two hyperbolic lattice."""
    C = "c"
    D = "d"

    def __str__(self) -> str:
        return self.value

    @property
    def partner(self) -> 'Generator':
        """The generator this one pairs with non-trivially (<c,d> = 2)."""
        return Generator.D if self is Generator.C else Generator.C


class HGen(Enum):
    """Generators of the twisted Heisenberg-Virasoro algebra."""
    L = "L"
    I = "I"

    def __str__(self) -> str:
        return self.value


# <c, d> = 2, <c, c> = <d, d> = 0
LATTICE_CD_PAIRING: Final[int] = 2


# ============================================================================
# CLI / runner enumerations
# ============================================================================

class SuiteName(Enum):
    """Verification suites runnable through `hv-freefield verify`."""
    RELATIONS = "relations"
    SCREENING = "screening"
    RELACIJA = "relacija"
    CALQ = "calQ"
    SINGULAR = "singular"
    DEFORMED = "deformed"
    WHITTAKER = "whittaker"
    W22 = "w22"
    BJMN = "bjmn"
    WEYL = "weyl"
    FILTRATION = "filtration"

    def __str__(self) -> str:
        return self.value


class OutputFormat(Enum):
    TEXT = "text"
    JSON = "json"
    DOT = "dot"

    def __str__(self) -> str:
        return self.value


class Indexing(Enum):
    """Display convention for exponential modes."""
    ORDINARY = "ordinary"   # e^{mc}_n is the coefficient of z^{-n-1}
    WEIGHT = "weight"       # degree-preserving mode labelled 0

    def __str__(self) -> str:
        return self.value


class DiagramFamily(Enum):
    PIPR = "PiPR"
    PINEG = "PiNeg"
    PI0R = "Pi0r"
    WHITTAKER = "Whittaker"

    def __str__(self) -> str:
        return self.value


class ExitCode(IntEnum):
    OK = 0
    VERIFICATION_FAILED = 1
    CONFIG_ERROR = 2


# ============================================================================
# Defaults
# ============================================================================

DEFAULT_DEGREE_BOUND: Final[int] = 6
DEFAULT_MODE_BOUND: Final[int] = 4
DEFAULT_P_VALUES: Final[Tuple[int, ...]] = (1, 2, 3)
CONFIG_ENV_VAR: Final[str] = "HV_FREEFIELD_CONFIG"
