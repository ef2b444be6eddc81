"""Analytic tail models for jump laws.

Convergence verdicts in this package are never pure numerics: every
Converges/Diverges decision is taken from a declared tail model, and
truncated sums carry tail bounds derived from the same model. A tail
model is either a :class:`TailDescriptor` (the dominant behaviour, used
for classification) or a tuple of :class:`PowerTailComponent` entries
(per-residue-class models for lattice laws whose masses interleave
several decay rates).

A power model with ``lower_factor = upper_factor = 1`` is exact: the mass
or density equals ``K y^-rho`` beyond the onset. Inexact models (for
example bin-integrated densities) carry a certified envelope
``[lower_factor * K * y^-rho, upper_factor * K * y^-rho]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .powerint import power_integral_tail, strided_power_sum


class TailKind(Enum):
    POWER_LAW = "power_law"
    EXPONENTIAL = "exponential"
    COMPACT_SUPPORT = "compact_support"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class TailDescriptor:
    """Dominant tail behaviour of a symmetric jump law.

    For POWER_LAW, ``exponent`` is rho in ``mass(n) ~ K n^-rho`` (or
    ``f(y) ~ K |y|^-rho``); for EXPONENTIAL it is the decay rate lambda in
    ``K exp(-lambda y)``. The model applies for ``|y| >= onset``.
    COMPACT_SUPPORT means no mass beyond ``onset``.
    """

    kind: TailKind
    exponent: float = 0.0
    constant: float = 0.0
    onset: float = 1.0
    lower_factor: float = 1.0
    upper_factor: float = 1.0

    def __post_init__(self):
        if self.onset <= 0:
            raise ValueError("tail onset must be positive")
        if self.kind in (TailKind.POWER_LAW, TailKind.EXPONENTIAL):
            if self.exponent <= 0:
                raise ValueError("tail exponent/rate must be positive")
            if self.constant <= 0:
                raise ValueError("tail constant must be positive")
            if not 0 < self.lower_factor <= 1 <= self.upper_factor:
                raise ValueError("envelope factors must bracket 1")

    @property
    def exact(self) -> bool:
        return self.lower_factor == 1.0 == self.upper_factor

    def weighted_tail_converges(self, weight_power: float):
        """Does ``int_{onset}^inf y^weight_power * model(y) dy`` converge?

        Returns True/False, or None when the tail is UNKNOWN.
        """
        if self.kind is TailKind.POWER_LAW:
            return self.exponent - weight_power > 1.0
        if self.kind in (TailKind.EXPONENTIAL, TailKind.COMPACT_SUPPORT):
            return True
        return None

    def weighted_tail_upper(self, weight_power: float, y_from: float) -> float:
        """Upper bound for ``int_{y_from}^inf y^weight_power * model``, y_from >= onset."""
        y_from = max(y_from, self.onset)
        if self.kind is TailKind.COMPACT_SUPPORT:
            return 0.0
        if self.kind is TailKind.POWER_LAW:
            return self.upper_factor * power_integral_tail(
                self.constant, self.exponent - weight_power, y_from
            )
        if self.kind is TailKind.EXPONENTIAL:
            lam = self.exponent
            # int y^k e^{-lam y} <= y_from^k e^{-lam y_from} (1 + k/(lam y_from)) / lam, crude
            # use the clean bound for k <= 3 via repeated integration by parts envelope
            k = weight_power
            base = self.upper_factor * self.constant * math.exp(-lam * y_from) / lam
            poly = y_from ** k * (1.0 + max(k, 0.0) / (lam * y_from)) ** 3
            return base * poly
        return math.inf


@dataclass(frozen=True)
class PowerTailComponent:
    """Exact-envelope power model for lattice masses on one residue class.

    Masses at lags n >= start with n = offset (mod stride) satisfy
    ``lower_factor * K n^-rho <= m(n) <= upper_factor * K n^-rho``.
    """

    constant: float
    exponent: float
    stride: int = 1
    offset: int = 0
    start: int = 1
    lower_factor: float = 1.0
    upper_factor: float = 1.0

    def __post_init__(self):
        if self.constant <= 0 or self.exponent <= 0:
            raise ValueError("component constant and exponent must be positive")
        if self.stride < 1 or not 0 <= self.offset < self.stride:
            raise ValueError("invalid stride/offset")
        if not 0 < self.lower_factor <= 1 <= self.upper_factor:
            raise ValueError("envelope factors must bracket 1")

    @property
    def exact(self) -> bool:
        return self.lower_factor == 1.0 == self.upper_factor

    def contains(self, n: int) -> bool:
        return n >= self.start and n % self.stride == self.offset % self.stride

    def model(self, n):
        return self.constant * np.asarray(n, dtype=float) ** -self.exponent

    def weighted_tail_sum(self, weight_power: float, n_from: float):
        """Envelope of ``sum_{n > n_from} n^weight_power * m(n)`` on this class.

        Returns (lo, hi); requires n_from >= start - 1 so the model applies.
        """
        p = self.exponent - weight_power
        base = strided_power_sum(p, self.stride, self.offset, math.floor(n_from) + 1)
        if math.isinf(base):
            return (math.inf, math.inf) if self.lower_factor > 0 else (0.0, math.inf)
        return (self.constant * self.lower_factor * base,
                self.constant * self.upper_factor * base)

    def mass_lower(self, n):
        return self.lower_factor * self.model(n)

    def mass_upper(self, n):
        return self.upper_factor * self.model(n)


def components_from_descriptor(tail: TailDescriptor) -> tuple[PowerTailComponent, ...]:
    """Single full-lattice component mirroring a power descriptor, else empty."""
    if tail.kind is not TailKind.POWER_LAW:
        return ()
    return (
        PowerTailComponent(
            constant=tail.constant,
            exponent=tail.exponent,
            stride=1,
            offset=0,
            start=max(1, math.ceil(tail.onset)),
            lower_factor=tail.lower_factor,
            upper_factor=tail.upper_factor,
        ),
    )
