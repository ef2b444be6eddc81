"""Symmetric jump laws, Levy triplets, and the characteristic exponent.

A symmetric jump law stores only its positive side: lattice masses m(n)
for lags n >= 1 (plus an origin mass), or a density f(y) for y > 0, with
the mass/density at -y structurally equal to that at +y. Laws carry an
analytic tail model (see :mod:`levycrit.tails`) so that series/integral
classification never rests on truncated numerics alone.

The characteristic exponent of a symmetric triplet (0, c, nu) is

    psi(xi) = c xi^2 / 2 + int (1 - cos(xi y)) nu(dy),

real, even and nonnegative. For the built-in lattice families the jump
part is evaluated through an exact cosine transform (polylogarithms);
piecewise-power densities use closed-form power integrals; generic
densities fall back to adaptive quadrature plus the declared tail model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from typing import Callable, Optional, Sequence

import mpmath
import numpy as np
from scipy import integrate
from scipy.special import gamma as _gamma
from scipy.special import zeta as _zeta

from .powerint import one_minus_cos_range, one_minus_cos_tail
from .tails import PowerTailComponent, TailDescriptor, TailKind

PROBABILITY_TOL = 1e-10

_POLYLOG_DPS = 30


class Normalization(Enum):
    PROBABILITY = "probability"
    FINITE = "finite_measure"
    SIGMA_FINITE = "sigma_finite"


class DomainError(ValueError):
    """Invalid parameter or unusable law/normalization for an operation."""


class NumericError(RuntimeError):
    """A numeric routine failed to reach its tolerance; carries a partial value."""

    def __init__(self, message: str, partial: float = math.nan):
        super().__init__(message)
        self.partial = partial


# ---------------------------------------------------------------------------
# supports


@dataclass(frozen=True)
class LatticeSupport:
    """Masses on a delta-lattice; only lags n >= 1 are stored."""

    spacing: float
    mass_fn: Callable[[np.ndarray], np.ndarray]
    origin_mass: float = 0.0
    components: tuple[PowerTailComponent, ...] = ()
    max_lag: Optional[int] = None  # largest lag with mass, if the support is finite
    cos_sum: Optional[Callable[[float], float]] = None  # exact sum m(n)(1-cos(n u))

    def __post_init__(self):
        if self.spacing <= 0:
            raise DomainError("lattice spacing must be positive")
        if self.origin_mass < 0:
            raise DomainError("origin mass must be nonnegative")


@dataclass(frozen=True)
class PowerPiece:
    """Density ``sum_j K_j y^-rho_j`` on the interval [lo, hi)."""

    lo: float
    hi: float
    terms: tuple[tuple[float, float], ...]  # (K, rho)

    def __post_init__(self):
        if not 0.0 <= self.lo < self.hi:
            raise DomainError("piece interval must satisfy 0 <= lo < hi")
        if not self.terms:
            raise DomainError("piece needs at least one term")
        for k, _ in self.terms:
            if k <= 0:
                raise DomainError("piece coefficients must be positive")

    def density(self, y):
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y)
        for k, rho in self.terms:
            out = out + k * y ** -rho
        return out

    def weighted_integral(self, a: float, b: float, weight: float = 0.0) -> float:
        """``int_a^b y^weight * density(y) dy`` over [a,b] clipped to the piece."""
        a = max(a, self.lo)
        b = min(b, self.hi)
        if b <= a:
            return 0.0
        total = 0.0
        for k, rho in self.terms:
            p = weight - rho
            if a == 0.0 and p <= -1.0:
                return math.inf  # divergent at the origin
            if b == math.inf:
                if p >= -1.0:
                    return math.inf
                total += -k * a ** (p + 1.0) / (p + 1.0)
            elif p == -1.0:
                total += k * math.log(b / a)
            else:
                total += k * (b ** (p + 1.0) - a ** (p + 1.0)) / (p + 1.0)
        return total


@dataclass(frozen=True)
class ContinuousSupport:
    """Pointwise-evaluable density; optionally an exact piecewise-power form."""

    density_fn: Callable[[np.ndarray], np.ndarray]
    pieces: Optional[tuple[PowerPiece, ...]] = None


# ---------------------------------------------------------------------------
# the law


@dataclass(frozen=True)
class SymmetricJumpLaw:
    """A symmetric jump distribution or Levy measure on R (or a lattice)."""

    support: LatticeSupport | ContinuousSupport
    normalization: Normalization
    tail: TailDescriptor
    total_mass: Optional[float] = None  # None for sigma-finite measures
    unimodal: bool = False
    strictly_positive: bool = False
    label: str = ""

    def __post_init__(self):
        if self.unimodal and self.is_lattice:
            raise DomainError("discretely supported measures are never unimodal")
        if self.normalization is Normalization.PROBABILITY:
            if self.total_mass is None or abs(self.total_mass - 1.0) > PROBABILITY_TOL:
                raise DomainError(
                    f"probability law must have total mass 1 within {PROBABILITY_TOL}"
                )

    # -- structure ---------------------------------------------------------

    @property
    def is_lattice(self) -> bool:
        return isinstance(self.support, LatticeSupport)

    @property
    def spacing(self) -> float:
        if not self.is_lattice:
            raise DomainError("continuous law has no lattice spacing")
        return self.support.spacing

    @property
    def components(self) -> tuple[PowerTailComponent, ...]:
        if self.is_lattice:
            return self.support.components
        return ()

    def mass(self, n):
        """Lattice mass at lag ``n >= 1`` (same value at ``-n``)."""
        if not self.is_lattice:
            raise DomainError("mass() is only defined for lattice laws")
        arr = np.asarray(n)
        if np.any(arr < 1):
            raise DomainError("lags must be >= 1; the origin mass is separate")
        out = np.asarray(self.support.mass_fn(arr), dtype=float)
        return float(out) if np.isscalar(n) or arr.shape == () else out

    def density(self, y):
        """Density at ``y`` (evaluated at |y|; symmetric)."""
        if self.is_lattice:
            raise DomainError("density() is only defined for continuous laws")
        arr = np.abs(np.asarray(y, dtype=float))
        if np.any(arr == 0.0):
            raise DomainError("density is stored for |y| > 0 only")
        out = np.asarray(self.support.density_fn(arr), dtype=float)
        return float(out) if np.isscalar(y) else out

    # -- tail mass ---------------------------------------------------------

    def one_sided_tail_mass(self, x: float) -> tuple[float, float]:
        """Envelope (lo, hi) of ``nu((x, inf))`` for x >= 0 (one side only)."""
        if self.is_lattice:
            return self._lattice_tail_mass(x)
        return self._continuous_tail_mass(x)

    def _lattice_tail_mass(self, x: float) -> tuple[float, float]:
        sup = self.support
        # lags with spacing*n > x
        n_from = math.floor(x / sup.spacing) + 1
        if sup.max_lag is not None and not sup.components:
            if n_from > sup.max_lag:
                return (0.0, 0.0)
            lags = np.arange(n_from, sup.max_lag + 1)
            s = float(np.sum(self.mass(lags)))
            return (s, s)
        if not sup.components:
            # unknown tail: partial sum is only a lower bound
            cutoff = max(n_from, 10 ** 6)
            lags = np.arange(n_from, cutoff + 1)
            s = float(np.sum(self.mass(lags))) if lags.size else 0.0
            return (s, math.inf)
        start = max(c.start for c in sup.components)
        lo = hi = 0.0
        if n_from < start:
            lags = np.arange(n_from, start)
            s = float(np.sum(self.mass(lags))) if lags.size else 0.0
            lo += s
            hi += s
        base = max(n_from - 1, start - 1)
        for c in sup.components:
            c_lo, c_hi = c.weighted_tail_sum(0.0, base)
            lo += c_lo
            hi += c_hi
        return (lo, hi)

    def _continuous_tail_mass(self, x: float) -> tuple[float, float]:
        sup = self.support
        if sup.pieces is not None:
            total = 0.0
            for piece in sup.pieces:
                total += piece.weighted_integral(x, math.inf, 0.0)
            return (total, total)
        onset = self.tail.onset
        head = 0.0
        if x < onset:
            head, _ = integrate.quad(
                lambda y: float(self.density(y)), x, onset, limit=200
            )
        y_from = max(x, onset)
        hi_tail = self.tail.weighted_tail_upper(0.0, y_from)
        lo_tail = 0.0
        if self.tail.kind is TailKind.POWER_LAW:
            lo_tail = (
                hi_tail * self.tail.lower_factor / self.tail.upper_factor
                if math.isfinite(hi_tail)
                else math.inf
            )
        return (head + lo_tail, head + hi_tail)

    def with_normalization(self, normalization: Normalization) -> "SymmetricJumpLaw":
        return replace(self, normalization=normalization)


def as_finite_measure(law: SymmetricJumpLaw) -> SymmetricJumpLaw:
    """View a probability law as the finite Levy measure it also is."""
    if law.normalization is Normalization.SIGMA_FINITE:
        raise DomainError("sigma-finite law has no finite-measure view")
    return replace(law, normalization=Normalization.FINITE)


# ---------------------------------------------------------------------------
# the triplet


@dataclass(frozen=True)
class LevyTriplet:
    """Symmetric Levy triplet (b=0, c, nu); ``nu=None`` means no jump part."""

    c: float
    nu: Optional[SymmetricJumpLaw] = None
    label: str = ""

    def __post_init__(self):
        if self.c < 0:
            raise DomainError("Gaussian coefficient must be nonnegative")
        if self.nu is not None and self.nu.normalization is Normalization.PROBABILITY:
            raise DomainError(
                "triplet jump measure must be a finite or sigma-finite measure; "
                "wrap probability laws with as_finite_measure()"
            )
        if self.nu is None and self.c == 0:
            raise DomainError("triplet must have a Gaussian or a jump part")

    @property
    def b(self) -> float:
        return 0.0


def make_walk_triplet(law: SymmetricJumpLaw, label: str = "") -> LevyTriplet:
    """Triplet of the compound-Poisson process with the walk's jump law."""
    nu = as_finite_measure(law) if law.normalization is Normalization.PROBABILITY else law
    return LevyTriplet(c=0.0, nu=nu, label=label or law.label)


# ---------------------------------------------------------------------------
# constructors


def _polylog_cos_sum(terms: Sequence[tuple[float, float, int]]):
    """Exact ``sum_{n>=1} m(n)(1 - cos(n u))`` for interleaved power masses.

    ``terms`` lists (C, s, parity) with parity 0 = all lags, 2 = even lags,
    1 = odd lags, each contributing C * n^-s on its class. Evaluated with
    mpmath polylogarithms, so accurate down to u ~ 1e-12.
    """

    term_list = tuple(terms)

    def cos_sum(u: float) -> float:
        with mpmath.workdps(_POLYLOG_DPS):
            u_mp = mpmath.mpf(abs(u))
            z1 = mpmath.exp(1j * u_mp)
            z2 = mpmath.exp(2j * u_mp)
            total = mpmath.mpf(0)
            for c_coef, s, parity in term_list:
                if parity == 0:
                    val = mpmath.zeta(s) - mpmath.re(mpmath.polylog(s, z1))
                elif parity == 2:
                    val = 2 ** (-s) * (mpmath.zeta(s) - mpmath.re(mpmath.polylog(s, z2)))
                else:
                    zsum = (1 - mpmath.mpf(2) ** (-s)) * mpmath.zeta(s)
                    csum = mpmath.re(
                        mpmath.polylog(s, z1) - mpmath.mpf(2) ** (-s) * mpmath.polylog(s, z2)
                    )
                    val = zsum - csum
                total += c_coef * val
            return float(max(total, 0))

    return cos_sum


def make_power_law_lattice(alpha: float, normalize: bool = False) -> SymmetricJumpLaw:
    """Unit-spacing lattice law with masses ``C n^-(alpha+1)``.

    Raw form has C = 1 (a finite symmetric measure); the normalized form is
    the probability law with C = 1 / (2 zeta(alpha+1)).
    """
    if alpha <= 0:
        raise DomainError(f"alpha must be positive, got {alpha}")
    s = alpha + 1.0
    zeta_s = float(_zeta(s, 1))
    c_coef = 1.0 / (2.0 * zeta_s) if normalize else 1.0
    total = 1.0 if normalize else 2.0 * zeta_s

    def mass_fn(n, _c=c_coef, _s=s):
        return _c * np.asarray(n, dtype=float) ** -_s

    support = LatticeSupport(
        spacing=1.0,
        mass_fn=mass_fn,
        origin_mass=0.0,
        components=(PowerTailComponent(constant=c_coef, exponent=s),),
        cos_sum=_polylog_cos_sum([(c_coef, s, 0)]),
    )
    return SymmetricJumpLaw(
        support=support,
        normalization=Normalization.PROBABILITY if normalize else Normalization.FINITE,
        tail=TailDescriptor(TailKind.POWER_LAW, exponent=s, constant=c_coef, onset=1.0),
        total_mass=total,
        strictly_positive=True,
        label=f"power_lattice(alpha={alpha:g}{', normalized' if normalize else ', raw'})",
    )


def multi_index_total(alpha: float, beta: float) -> float:
    """Total mass ``sum_{n in Z, n != 0} p_n`` of the raw two-index lattice law."""
    s, t = alpha + 1.0, beta + 1.0
    even = 2.0 ** -s * float(_zeta(s, 1))
    odd = (1.0 - 2.0 ** -t) * float(_zeta(t, 1))
    return 2.0 * (even + odd)


def make_multi_index_lattice(
    alpha: float, beta: float, normalize: bool = False
) -> SymmetricJumpLaw:
    """Lattice law with even lags ``n^-(alpha+1)`` and odd lags ``n^-(beta+1)``.

    Interleaves two stability indices; the dominant tail exponent is
    min(alpha, beta) + 1. Both the raw measure and the normalized
    probability form are available, and reports record which one was used.
    """
    if alpha <= 0 or beta <= 0:
        raise DomainError("alpha and beta must be positive")
    s, t = alpha + 1.0, beta + 1.0
    raw_total = multi_index_total(alpha, beta)
    c_coef = 1.0 / raw_total if normalize else 1.0

    def mass_fn(n, _c=c_coef, _s=s, _t=t):
        arr = np.asarray(n, dtype=float)
        return _c * np.where(np.asarray(n) % 2 == 0, arr ** -_s, arr ** -_t)

    support = LatticeSupport(
        spacing=1.0,
        mass_fn=mass_fn,
        origin_mass=0.0,
        components=(
            PowerTailComponent(constant=c_coef, exponent=s, stride=2, offset=0, start=2),
            PowerTailComponent(constant=c_coef, exponent=t, stride=2, offset=1, start=1),
        ),
        cos_sum=_polylog_cos_sum([(c_coef, s, 2), (c_coef, t, 1)]),
    )
    rho_dom = min(s, t)
    return SymmetricJumpLaw(
        support=support,
        normalization=Normalization.PROBABILITY if normalize else Normalization.FINITE,
        tail=TailDescriptor(TailKind.POWER_LAW, exponent=rho_dom, constant=c_coef, onset=1.0),
        total_mass=1.0 if normalize else raw_total,
        strictly_positive=True,
        label=f"multi_index(alpha={alpha:g}, beta={beta:g}"
        f"{', normalized' if normalize else ', raw'})",
    )


def make_lattice_table(
    masses: dict[int, float],
    spacing: float = 1.0,
    origin_mass: float = 0.0,
    tail: Optional[TailDescriptor] = None,
    normalization: Optional[Normalization] = None,
    label: str = "",
) -> SymmetricJumpLaw:
    """Law from an explicit table of one-sided lattice masses.

    Without a declared tail the support is compact (zero mass beyond the
    largest tabulated lag). A POWER_LAW tail extends the table with
    ``K n^-rho`` beyond it.
    """
    if not masses:
        raise DomainError("mass table must not be empty")
    if any(k < 1 for k in masses):
        raise DomainError("table lags must be >= 1")
    if any(v < 0 for v in masses.values()):
        raise DomainError("masses must be nonnegative")
    max_lag = max(masses)
    table = np.zeros(max_lag + 1)
    for k, v in masses.items():
        table[k] = v

    if tail is None:
        tail = TailDescriptor(TailKind.COMPACT_SUPPORT, onset=max_lag * spacing)

    if tail.kind is TailKind.POWER_LAW:
        comp = (
            PowerTailComponent(
                constant=tail.constant,
                exponent=tail.exponent,
                start=max_lag + 1,
                lower_factor=tail.lower_factor,
                upper_factor=tail.upper_factor,
            ),
        )

        def mass_fn(n, _tbl=table, _K=tail.constant, _rho=tail.exponent, _m=max_lag):
            arr = np.asarray(n)
            small = arr <= _m
            out = np.where(small, _tbl[np.minimum(arr, _m)], _K * np.asarray(arr, float) ** -_rho)
            return out

        max_lag_field = None
    else:
        comp = ()

        def mass_fn(n, _tbl=table, _m=max_lag):
            arr = np.asarray(n)
            return np.where(arr <= _m, _tbl[np.minimum(arr, _m)], 0.0)

        max_lag_field = max_lag

    support = LatticeSupport(
        spacing=spacing,
        mass_fn=mass_fn,
        origin_mass=origin_mass,
        components=comp,
        max_lag=max_lag_field,
    )
    total_side = origin_mass + 2.0 * float(sum(masses.values()))
    if comp:
        t_lo, t_hi = comp[0].weighted_tail_sum(0.0, max_lag)
        total_side += t_lo + t_hi  # 2 * midpoint of one side
    if normalization is None:
        normalization = (
            Normalization.PROBABILITY
            if abs(total_side - 1.0) <= PROBABILITY_TOL
            else Normalization.FINITE
        )
    return SymmetricJumpLaw(
        support=support,
        normalization=normalization,
        tail=tail,
        total_mass=total_side,
        strictly_positive=all(v > 0 for v in masses.values()),
        label=label or f"table({len(masses)} lags, spacing={spacing:g})",
    )


def stable_levy_density_constant(alpha: float, gamma_scale: float) -> float:
    """Coefficient K in the stable Levy density ``K |y|^-alpha-1``.

    K = gamma * alpha * 2^(alpha-1) * Gamma((alpha+1)/2)
        / (sqrt(pi) * Gamma(1 - alpha/2)),
    which makes ``int (1-cos(xi y)) K |y|^-alpha-1 dy = gamma |xi|^alpha``.
    """
    if not 0 < alpha < 2:
        raise DomainError("density constant defined for 0 < alpha < 2")
    return (
        gamma_scale
        * alpha
        * 2.0 ** (alpha - 1.0)
        * _gamma((alpha + 1.0) / 2.0)
        / (math.sqrt(math.pi) * _gamma(1.0 - alpha / 2.0))
    )


def make_piecewise_power(
    pieces: Sequence[PowerPiece],
    unimodal: bool = False,
    label: str = "",
) -> SymmetricJumpLaw:
    """Continuous law from an ordered, contiguous piecewise-power density.

    Pieces must tile (lo_0, hi_last) contiguously starting at 0. The
    normalization is inferred: probability when the two-sided mass is 1
    within tolerance, finite when integrable, sigma-finite otherwise
    (subject to the Levy integrability check near the origin).
    """
    pieces = tuple(pieces)
    if not pieces:
        raise DomainError("need at least one piece")
    if pieces[0].lo != 0.0:
        raise DomainError("first piece must start at 0")
    for left, right in zip(pieces, pieces[1:]):
        if left.hi != right.lo:
            raise DomainError("pieces must be contiguous")

    # Levy integrability: int_0^1 y^2 f < inf and finite mass beyond 1
    first = pieces[0]
    for _, rho in first.terms:
        if rho >= 3.0:
            raise DomainError("density fails int min(1, y^2) d nu < inf near 0")
    if pieces[-1].hi == math.inf:
        for _, rho in pieces[-1].terms:
            if rho <= 1.0:
                raise DomainError("density has infinite mass away from 0")

    one_side = sum(p.weighted_integral(0.0, math.inf, 0.0) for p in pieces)
    sigma_finite = math.isinf(one_side)
    total = None if sigma_finite else 2.0 * one_side
    if sigma_finite:
        normalization = Normalization.SIGMA_FINITE
    elif abs(total - 1.0) <= PROBABILITY_TOL:
        normalization = Normalization.PROBABILITY
    else:
        normalization = Normalization.FINITE

    last = pieces[-1]
    if last.hi == math.inf:
        k_dom, rho_dom = min(last.terms, key=lambda t: t[1])
        onset = max(last.lo, 1.0)
        # subdominant terms only shrink with y, so the ratio at the onset
        # bounds the envelope: K y^-rho <= f(y) <= upper * K y^-rho
        upper = float(last.density(onset)) * onset ** rho_dom / k_dom
        tail = TailDescriptor(
            TailKind.POWER_LAW,
            exponent=rho_dom,
            constant=k_dom,
            onset=onset,
            lower_factor=1.0,
            upper_factor=max(1.0, upper),
        )
    else:
        tail = TailDescriptor(TailKind.COMPACT_SUPPORT, onset=last.hi)

    def density_fn(y, _pieces=pieces):
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y)
        for p in _pieces:
            sel = (y >= p.lo) & (y < p.hi)
            if np.any(sel):
                out[sel] = p.density(y[sel])
        return out

    return SymmetricJumpLaw(
        support=ContinuousSupport(density_fn=density_fn, pieces=pieces),
        normalization=normalization,
        tail=tail,
        total_mass=total,
        unimodal=unimodal,
        strictly_positive=last.hi == math.inf,
        label=label or f"piecewise_power({len(pieces)} pieces)",
    )


def make_stable_triplet(
    alpha: float, gamma_scale: float, unimodal: bool = True
) -> LevyTriplet:
    """Symmetric stable triplet with exponent ``psi(xi) = gamma |xi|^alpha``.

    For alpha < 2 the jump measure has the exact power density
    ``K |y|^-alpha-1``; alpha = 2 is the Brownian case (c = 2 gamma, no
    jumps). The density is decreasing on (0, inf), so the unimodal flag
    defaults to set; pass ``unimodal=False`` to withhold the assertion.
    """
    if not 0 < alpha <= 2:
        raise DomainError(f"alpha must lie in (0, 2], got {alpha}")
    if gamma_scale <= 0:
        raise DomainError("gamma must be positive")
    label = f"stable(alpha={alpha:g}, gamma={gamma_scale:g})"
    if alpha == 2:
        return LevyTriplet(c=2.0 * gamma_scale, nu=None, label=label)
    k_const = stable_levy_density_constant(alpha, gamma_scale)
    nu = make_piecewise_power(
        (PowerPiece(0.0, math.inf, ((k_const, alpha + 1.0),)),),
        unimodal=unimodal,
        label=f"stable_levy_measure(alpha={alpha:g}, gamma={gamma_scale:g})",
    )
    return LevyTriplet(c=0.0, nu=nu, label=label)


def make_gaussian_density(sigma: float = 1.0) -> SymmetricJumpLaw:
    """Centered Gaussian probability density (continuous jump law)."""
    if sigma <= 0:
        raise DomainError("sigma must be positive")
    norm = 1.0 / (sigma * math.sqrt(2.0 * math.pi))

    def density_fn(y, _n=norm, _s=sigma):
        y = np.asarray(y, dtype=float)
        return _n * np.exp(-(y * y) / (2.0 * _s * _s))

    onset = 8.0 * sigma
    return SymmetricJumpLaw(
        support=ContinuousSupport(density_fn=density_fn),
        normalization=Normalization.PROBABILITY,
        tail=TailDescriptor(
            TailKind.EXPONENTIAL, exponent=onset / (2.0 * sigma * sigma), constant=norm,
            onset=onset,
        ),
        total_mass=1.0,
        unimodal=True,
        strictly_positive=True,
        label=f"gaussian(sigma={sigma:g})",
    )


# ---------------------------------------------------------------------------
# characteristic exponent


def _mass_prefix(law: SymmetricJumpLaw, n_hi: int) -> np.ndarray:
    # tiny bounded cache: exponent grids re-read the same prefix many times;
    # keyed by the support object itself (ids would be unsafe to recycle)
    key = (law.support, n_hi)
    cached = _mass_prefix.cache.get(key)
    if cached is None:
        cached = np.asarray(law.mass(np.arange(1, n_hi + 1)), dtype=float)
        if len(_mass_prefix.cache) > 8:
            _mass_prefix.cache.clear()
        _mass_prefix.cache[key] = cached
    return cached


_mass_prefix.cache = {}


def _lattice_jump_exponent(law: SymmetricJumpLaw, axi: float, cutoff: int) -> float:
    sup = law.support
    u = sup.spacing * axi
    if sup.cos_sum is not None and u <= 0.05:
        return sup.cos_sum(u)
    n_hi = sup.max_lag if sup.max_lag is not None else cutoff
    lags = np.arange(1, n_hi + 1, dtype=float)
    partial = float(np.sum(_mass_prefix(law, n_hi) * 2.0 * np.sin(lags * (u / 2.0)) ** 2))
    if sup.max_lag is not None:
        return partial
    correction = 0.0
    if sup.components:
        for comp in sup.components:
            k_mid = comp.constant * 0.5 * (comp.lower_factor + comp.upper_factor)
            rho = comp.exponent
            correction += (
                (k_mid / comp.stride) * u ** (rho - 1.0) * one_minus_cos_tail(rho, u * n_hi)
            )
    else:
        t_lo, t_hi = law.one_sided_tail_mass(n_hi * sup.spacing)
        if math.isinf(t_hi):
            raise NumericError(
                "lattice exponent truncated with unknown tail", partial=2.0 * partial
            )
        correction = 0.5 * (t_lo + t_hi)
    return partial + correction


def _continuous_jump_exponent(law: SymmetricJumpLaw, axi: float) -> float:
    sup = law.support
    if sup.pieces is not None:
        total = 0.0
        for piece in sup.pieces:
            for k_coef, rho in piece.terms:
                lo_s = axi * piece.lo
                hi_s = axi * piece.hi if piece.hi != math.inf else math.inf
                total += k_coef * axi ** (rho - 1.0) * one_minus_cos_range(rho, lo_s, hi_s)
        return total
    # generic density: quadrature head + declared tail
    onset = law.tail.onset
    head, _ = integrate.quad(
        lambda y: 2.0 * math.sin(axi * y / 2.0) ** 2 * float(law.density(y)),
        0.0,
        onset,
        limit=400,
    )
    if law.tail.kind is TailKind.COMPACT_SUPPORT:
        return head
    if law.tail.kind is TailKind.POWER_LAW:
        rho = law.tail.exponent
        k_mid = law.tail.constant * 0.5 * (law.tail.lower_factor + law.tail.upper_factor)
        return head + k_mid * axi ** (rho - 1.0) * one_minus_cos_tail(rho, axi * onset)
    if law.tail.kind is TailKind.EXPONENTIAL:
        extra, _ = integrate.quad(
            lambda y: 2.0 * math.sin(axi * y / 2.0) ** 2 * float(law.density(y)),
            onset,
            onset + 60.0 / law.tail.exponent,
            limit=200,
        )
        return head + extra
    raise NumericError("cannot integrate against an unknown tail", partial=head)


def char_exponent(
    triplet: LevyTriplet, xi: float, *, lattice_cutoff: int = 100_000
) -> float:
    """Characteristic exponent ``psi(xi) = c xi^2/2 + int (1-cos(xi y)) d nu``.

    Even and nonnegative by construction; psi(0) = 0 exactly.
    """
    axi = abs(float(xi))
    if axi == 0.0:
        return 0.0
    value = 0.5 * triplet.c * axi * axi
    if triplet.nu is not None:
        if triplet.nu.is_lattice:
            value += 2.0 * _lattice_jump_exponent(triplet.nu, axi, lattice_cutoff)
        else:
            value += 2.0 * _continuous_jump_exponent(triplet.nu, axi)
    return max(0.0, value)


# ---------------------------------------------------------------------------
# moments


def moment(law: SymmetricJumpLaw, k: int, cutoff: float = 1e6):
    """Classify ``int_{|y|>1} |y|^k d nu`` from the tail model.

    Returns a :class:`levycrit.verdicts.ConvergenceVerdict`. The partial
    value is the two-sided truncated sum/integral over 1 < |y| <= cutoff;
    for power tails the verdict's ``estimate`` adds the exact Hurwitz-zeta
    tail of the model.
    """
    from .verdicts import Basis, ConvergenceVerdict, Status

    if k not in (0, 1, 2, 3):
        raise DomainError("moment order k must be in {0, 1, 2, 3}")
    if cutoff < 1:
        raise DomainError("cutoff must be >= 1")

    converges = law.tail.weighted_tail_converges(float(k))
    if law.is_lattice:
        delta = law.spacing
        n_start = math.floor(1.0 / delta) + 1
        n_stop = math.floor(cutoff / delta)
        partial = 0.0
        if n_stop >= n_start:
            lags = np.arange(n_start, n_stop + 1)
            partial = 2.0 * float(np.sum((lags * delta) ** k * law.mass(lags)))
        tail_lo = tail_hi = 0.0
        if law.components:
            for comp in law.components:
                c_lo, c_hi = comp.weighted_tail_sum(float(k), max(n_stop, comp.start - 1))
                tail_lo += delta ** k * 2.0 * c_lo
                tail_hi += delta ** k * 2.0 * c_hi
        elif law.support.max_lag is not None:
            tail_lo = tail_hi = 0.0
        else:
            tail_hi = math.inf
        truncation = f"lattice sum over 1 < n*delta <= {cutoff:g}"
    else:
        if law.support.pieces is not None:
            partial = 2.0 * sum(
                p.weighted_integral(1.0, cutoff, float(k)) for p in law.support.pieces
            )
            tail_mid = 2.0 * sum(
                p.weighted_integral(cutoff, math.inf, float(k)) for p in law.support.pieces
            )
            tail_lo = tail_hi = tail_mid
        else:
            val, _ = integrate.quad(
                lambda y: 2.0 * y ** k * float(law.density(y)), 1.0, cutoff, limit=400
            )
            partial = val
            tail_hi = 2.0 * law.tail.weighted_tail_upper(float(k), cutoff)
            tail_lo = 0.0
        truncation = f"integral over 1 < |y| <= {cutoff:g}"

    if converges is None:
        return ConvergenceVerdict(
            status=Status.INCONCLUSIVE,
            partial_value=partial,
            tail_bound=math.inf,
            truncation=truncation + "; unknown tail",
            basis=Basis.NUMERIC_ONLY,
        )
    status = Status.CONVERGES if converges else Status.DIVERGES
    return ConvergenceVerdict(
        status=status,
        partial_value=partial,
        tail_bound=tail_hi if converges else math.inf,
        truncation=truncation,
        basis=Basis.ANALYTIC_TAIL,
        estimate=partial + 0.5 * (tail_lo + tail_hi) if converges else partial,
    )


# ---------------------------------------------------------------------------
# normalization audit


def total_mass_interval(law: SymmetricJumpLaw) -> tuple[float, float]:
    """Envelope of the two-sided total mass (origin included)."""
    if law.is_lattice:
        lo, hi = law.one_sided_tail_mass(0.0)
        m0 = law.support.origin_mass
        return (m0 + 2.0 * lo, m0 + 2.0 * hi)
    lo, hi = law.one_sided_tail_mass(0.0)
    return (2.0 * lo, 2.0 * hi)


def check_probability(law: SymmetricJumpLaw, tol: float = PROBABILITY_TOL) -> float:
    """Verify total mass 1 within ``tol``; returns the midpoint estimate."""
    lo, hi = total_mass_interval(law)
    mid = 0.5 * (lo + hi)
    if not (lo - tol <= 1.0 <= hi + tol):
        raise DomainError(f"law is not a probability distribution: mass in [{lo}, {hi}]")
    return mid
