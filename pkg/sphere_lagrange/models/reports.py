"""
Result records of the exact verification routines.
"""

from dataclasses import dataclass, field
from typing import Any


@dataclass
class PhiReport:
    """Outcome of checking the two stretching conditions of Phi for a pair of boundary points."""

    case: str
    z1: str
    z2: str
    phi_i_holds: bool
    phi_ii_holds: bool
    witnesses: dict[str, str] = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return self.phi_i_holds and self.phi_ii_holds

    def to_dict(self) -> dict[str, Any]:
        return {
            "case": self.case,
            "z1": self.z1,
            "z2": self.z2,
            "phi_i_holds": self.phi_i_holds,
            "phi_ii_holds": self.phi_ii_holds,
            "witnesses": dict(sorted(self.witnesses.items())),
        }


@dataclass
class SampleSummary:
    """Aggregate of a seeded batch of exact checks for one case."""

    case: str
    check: str
    samples: int
    seed: int
    failures: list[dict[str, Any]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict[str, Any]:
        return {
            "case": self.case,
            "check": self.check,
            "samples": self.samples,
            "seed": self.seed,
            "ok": self.ok,
            "failures": self.failures,
        }

    def __str__(self) -> str:
        status = "ok" if self.ok else f"FAILED ({len(self.failures)})"
        return f"{self.case} {self.check}: {self.samples} samples {status}"


@dataclass
class TransferCheck:
    """Both sides of the squared transfer identity for a pair (z, w)."""

    case: str
    z: str
    w: str
    lhs_sq: str
    rhs_sq: str

    @property
    def holds(self) -> bool:
        return self.lhs_sq == self.rhs_sq

    def to_dict(self) -> dict[str, Any]:
        return {
            "case": self.case,
            "z": self.z,
            "w": self.w,
            "lhs_sq": self.lhs_sq,
            "rhs_sq": self.rhs_sq,
            "holds": self.holds,
        }
