"""Verdict types shared by the convergence criteria.

A :class:`ConvergenceVerdict` records the outcome of classifying a
nonnegative series or improper integral. Decisions (Converges/Diverges)
are only ever issued on an analytic basis: truncated numerics alone yield
Inconclusive. When the verdict converges, the true value is certified to
lie in ``[partial_value, partial_value + tail_bound]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional


class Status(Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"
    INCONCLUSIVE = "inconclusive"


class Basis(Enum):
    ANALYTIC_TAIL = "analytic_tail"
    NUMERIC_ONLY = "numeric_only"


class Classification(Enum):
    TRANSIENT = "transient"
    RECURRENT = "recurrent"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class ConvergenceVerdict:
    """Outcome of classifying a nonnegative series/integral.

    ``partial_value`` is the truncated sum, ``tail_bound`` an upper bound
    for the remainder (+inf when divergent or unknown), ``truncation`` a
    human-readable record of the cutoff, and ``estimate`` the best point
    estimate (partial plus an analytic tail estimate where available).
    """

    status: Status
    partial_value: float
    tail_bound: float
    truncation: str
    basis: Basis
    estimate: Optional[float] = None
    note: str = ""

    def __post_init__(self):
        if self.partial_value < 0:
            raise ValueError("partial_value must be nonnegative")
        if self.tail_bound < 0:
            raise ValueError("tail_bound must be nonnegative")
        if self.status is not Status.INCONCLUSIVE and self.basis is not Basis.ANALYTIC_TAIL:
            raise ValueError("Converges/Diverges requires an analytic-tail basis")
        if self.status is Status.CONVERGES and not math.isfinite(self.tail_bound):
            raise ValueError("a convergent verdict needs a finite tail bound")
        if self.estimate is None:
            object.__setattr__(self, "estimate", self.partial_value)

    @property
    def value_interval(self) -> tuple[float, float]:
        return (self.partial_value, self.partial_value + self.tail_bound)

    def to_dict(self) -> dict:
        return {
            "status": self.status.value,
            "partial_value": self.partial_value,
            "tail_bound": self.tail_bound,
            "estimate": self.estimate,
            "truncation": self.truncation,
            "basis": self.basis.value,
            **({"note": self.note} if self.note else {}),
        }


@dataclass(frozen=True)
class CriterionEvidence:
    """One criterion's verdict plus the implication drawn from it."""

    criterion: str
    verdict: ConvergenceVerdict
    implication: str  # "transient", "recurrent", or "none"

    def to_dict(self) -> dict:
        return {
            "criterion": self.criterion,
            "implication": self.implication,
            "verdict": self.verdict.to_dict(),
        }


@dataclass(frozen=True)
class TransienceVerdict:
    """Final classification with the per-criterion evidence that produced it."""

    classification: Classification
    evidence: tuple[CriterionEvidence, ...]
    conflict: bool = False

    def __post_init__(self):
        implied = {e.implication for e in self.evidence}
        if self.classification is Classification.TRANSIENT and "transient" not in implied:
            raise ValueError("transient classification requires supporting evidence")
        if self.classification is Classification.RECURRENT and "recurrent" not in implied:
            raise ValueError("recurrent classification requires supporting evidence")
        if self.conflict and self.classification is not Classification.UNKNOWN:
            raise ValueError("conflicting evidence must yield Unknown")

    def to_dict(self) -> dict:
        return {
            "classification": self.classification.value,
            "conflict": self.conflict,
            "evidence": [e.to_dict() for e in self.evidence],
        }


def combine_evidence(evidence: list[CriterionEvidence]) -> TransienceVerdict:
    """Fold criterion evidence into a final verdict.

    Any transient evidence together with any recurrent evidence is a
    conflict (Unknown); otherwise the single direction present wins, and
    no direction at all is Unknown.
    """
    has_t = any(e.implication == "transient" for e in evidence)
    has_r = any(e.implication == "recurrent" for e in evidence)
    if has_t and has_r:
        return TransienceVerdict(Classification.UNKNOWN, tuple(evidence), conflict=True)
    if has_t:
        return TransienceVerdict(Classification.TRANSIENT, tuple(evidence))
    if has_r:
        return TransienceVerdict(Classification.RECURRENT, tuple(evidence))
    return TransienceVerdict(Classification.UNKNOWN, tuple(evidence))
