"""Three-valued answers for checks that only see a finite prefix."""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional


class Outcome(Enum):
    HOLDS = "Holds"
    FAILS = "Fails"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ThreeValued:
    """``Fails`` carries a finite witness; ``Unknown`` records the depth explored."""

    outcome: Outcome
    witness: Any = None
    depth: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.outcome is Outcome.HOLDS

    @property
    def fails(self) -> bool:
        return self.outcome is Outcome.FAILS

    @property
    def unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    @property
    def exit_code(self) -> int:
        return {Outcome.HOLDS: 0, Outcome.FAILS: 1, Outcome.UNKNOWN: 2}[self.outcome]

    def __str__(self):
        if self.fails:
            return f"Fails({self.witness})"
        if self.unknown:
            return f"Unknown(depth={self.depth})"
        return "Holds" if self.witness is None else f"Holds({self.witness})"


def Holds(witness: Any = None) -> ThreeValued:
    return ThreeValued(Outcome.HOLDS, witness)


def Fails(witness: Any) -> ThreeValued:
    return ThreeValued(Outcome.FAILS, witness)


def Unknown(depth: Optional[int] = None, witness: Any = None) -> ThreeValued:
    return ThreeValued(Outcome.UNKNOWN, witness, depth)
