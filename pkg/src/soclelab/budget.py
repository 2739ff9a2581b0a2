"""Enumeration caps shared by every search in the package.

All quantifier checks here run over finite enumerations (projective points,
subspaces, families of submodules, whole rings).  A Budget keeps those loops
from silently exploding: callers get a distinct BudgetExceeded instead of a
partial answer.  The environment variable SOCLELAB_BUDGET overrides the
default enumeration cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import BudgetExceeded

DEFAULT_ENUMERATION_CAP = 1_000_000
DEFAULT_RING_CAP = 2**16  # element-count guard for whole-ring scans


@dataclass(frozen=True)
class Budget:
    max_enumeration: int = DEFAULT_ENUMERATION_CAP
    max_ring: int = DEFAULT_RING_CAP

    def guard(self, what: str, needed: int) -> None:
        if needed > self.max_enumeration:
            raise BudgetExceeded(what, needed, self.max_enumeration)

    def guard_ring(self, what: str, needed: int) -> None:
        if needed > self.max_ring:
            raise BudgetExceeded(what, needed, self.max_ring)


def default_budget() -> Budget:
    env = os.environ.get("SOCLELAB_BUDGET")
    if env is None:
        return Budget()
    try:
        cap = int(env)
    except ValueError:
        return Budget()
    return Budget(max_enumeration=cap, max_ring=min(cap, DEFAULT_RING_CAP))
