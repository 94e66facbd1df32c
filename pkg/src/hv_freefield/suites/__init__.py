"""
Verification suites.

Each suite is self-contained, declares its preconditions, and reports one
CheckResult per named check.
"""

from typing import Dict, List

from hv_freefield.constants import SuiteName
from hv_freefield.suites.base import (
    CheckPrecondition,
    CheckResult,
    Report,
    Suite,
    SuiteBase,
    SuiteContext,
)
from hv_freefield.suites.bjmn import BjmnSuite
from hv_freefield.suites.calq import CalQSuite
from hv_freefield.suites.deformed import DeformedSuite
from hv_freefield.suites.filtration import FiltrationSuite
from hv_freefield.suites.relacija import RelacijaSuite
from hv_freefield.suites.relations import RelationsSuite
from hv_freefield.suites.screening import ScreeningSuite
from hv_freefield.suites.singular import SingularSuite
from hv_freefield.suites.w22 import W22Suite
from hv_freefield.suites.weyl import WeylSuite
from hv_freefield.suites.whittaker import WhittakerSuite


def all_suites() -> List[Suite]:
    """One instance of every suite, in SuiteName order."""
    registry: Dict[SuiteName, Suite] = {
        suite.name: suite for suite in (
            RelationsSuite(), ScreeningSuite(), RelacijaSuite(), CalQSuite(), SingularSuite(), DeformedSuite(),
            WhittakerSuite(), W22Suite(), BjmnSuite(), WeylSuite(), FiltrationSuite(),
        )
    }
    return [registry[name] for name in SuiteName]


__all__ = [
    'CheckPrecondition',
    'CheckResult',
    'Report',
    'Suite',
    'SuiteBase',
    'SuiteContext',
    'all_suites',
]
