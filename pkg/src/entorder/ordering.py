"""Pairwise ordering of states by concurrence and negativity.

For two states the differences ``dC = C1 - C2`` and ``dN = N1 - N2`` either
agree in sign (same ordering), disagree (an ordering violation), or one of them
vanishes.  The violation magnitude is ``delta = -min(0, dC * dN)``.

Every two-qubit state lies in the band ``lower_bound_negativity(C) <= N <= C``.
States on the upper edge are MaxNeg, states on the lower edge are MinNeg, and
extremal disagreements always pair one of each.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import BandViolation, ParamOutOfRange
from .measures import concurrence, negativity
from .states import KAPPA, SQRT2, horodecki, werner

EQUAL_TOL = 1e-9
PRODUCT_TOL = 1e-12
BAND_TOL = 1e-9

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


class Verdict(str, enum.Enum):
    SAME_ORDER = "same_order"
    ORDER_VIOLATION = "order_violation"
    EQUAL_C_DIFF_N = "equal_c_diff_n"
    EQUAL_N_DIFF_C = "equal_n_diff_c"
    EQUAL_BOTH = "equal_both"

    def __str__(self):
        return self.value


def verdict(delta_c, delta_n):
    """Classify a pair from its measure differences.

    Equality (``|d| <= 1e-9``) is checked before the sign test, so a pair whose
    concurrences agree to roundoff is never reported as a violation.
    """
    eq_c = abs(delta_c) <= EQUAL_TOL
    eq_n = abs(delta_n) <= EQUAL_TOL
    if eq_c and eq_n:
        return Verdict.EQUAL_BOTH
    if eq_c:
        return Verdict.EQUAL_C_DIFF_N
    if eq_n:
        return Verdict.EQUAL_N_DIFF_C
    if delta_c * delta_n < -PRODUCT_TOL:
        return Verdict.ORDER_VIOLATION
    return Verdict.SAME_ORDER


def violation(delta_c, delta_n):
    return -min(0.0, delta_c * delta_n)


@dataclass(frozen=True)
class PairComparison:
    delta_c: float
    delta_n: float
    delta: float
    verdict: Verdict

    @classmethod
    def from_differences(cls, delta_c, delta_n):
        dc, dn = float(delta_c), float(delta_n)
        return cls(dc, dn, violation(dc, dn), verdict(dc, dn))

    def as_dict(self):
        return {
            "delta_c": self.delta_c,
            "delta_n": self.delta_n,
            "delta": self.delta,
            "verdict": self.verdict.value,
        }


@dataclass(frozen=True)
class CNPoint:
    """A point of the concurrence/negativity plane, checked against the band."""

    c: float
    n: float

    def __post_init__(self):
        c, n = float(self.c), float(self.n)
        if not (-BAND_TOL <= c <= 1.0 + BAND_TOL and -BAND_TOL <= n <= 1.0 + BAND_TOL):
            raise BandViolation(f"({c}, {n}) outside the unit square")
        cc = min(max(c, 0.0), 1.0)
        if n > cc + BAND_TOL or n < lower_bound_negativity(cc) - BAND_TOL:
            raise BandViolation(
                f"N={n!r} outside [{lower_bound_negativity(cc)!r}, {cc!r}] for C={c!r}"
            )
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "n", n)

    @classmethod
    def of(cls, rho):
        return cls(concurrence(rho), negativity(rho))


def lower_bound_negativity(c):
    """Smallest negativity compatible with concurrence ``c``:
    ``sqrt((1-c)^2 + c^2) - (1-c)``."""
    c = float(c)
    if not 0.0 <= c <= 1.0:
        raise ParamOutOfRange(f"c={c!r} outside [0, 1]")
    return math.hypot(1.0 - c, c) - (1.0 - c)


def lower_bound_values(c):
    c = np.asarray(c, dtype=float)
    return np.hypot(1.0 - c, c) - (1.0 - c)


def compare(rho1, rho2):
    dc = concurrence(rho1) - concurrence(rho2)
    dn = negativity(rho1) - negativity(rho2)
    return PairComparison.from_differences(dc, dn)


def classify_region(reference, other):
    """Verdict for ``other`` relative to ``reference`` from coordinates alone.

    ``order_violation`` means ``other`` lies in one of the two open regions of
    the band where concurrence and negativity are ordered oppositely with
    respect to ``reference``.
    """
    reference = reference if isinstance(reference, CNPoint) else CNPoint(*reference)
    other = other if isinstance(other, CNPoint) else CNPoint(*other)
    return verdict(reference.c - other.c, reference.n - other.n)


@dataclass(frozen=True)
class ExtremalGaps:
    max_dc: float
    max_dn: float
    max_delta: float
    witnesses: dict


def extremal_gaps():
    """Closed-form maximal disagreements and witness pairs.

    The MinNeg witness is ``horodecki(1/2)`` (``C = 1/2``, ``N = KAPPA``); the
    MaxNeg partners are Werner states with ``C = N`` equal to ``KAPPA``
    (equal negativity), ``1/2`` (equal concurrence) and ``sqrt(2)/4``
    (largest violation).
    """
    rho_x = horodecki(0.5)
    witnesses = {
        "dc": (werner(SQRT2 / 3.0), rho_x),
        "dn": (werner(2.0 / 3.0), rho_x),
        "delta": (werner(1.0 / 3.0 + SQRT2 / 6.0), rho_x),
    }
    gap = 1.0 - SQRT2 / 2.0
    return ExtremalGaps(gap, gap, KAPPA**2 / 2.0, witnesses)


def maxneg_minneg_delta(c1, c2):
    """``delta`` between a MaxNeg state with concurrence ``c1`` and a MinNeg
    state with concurrence ``c2`` (vectorized)."""
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    return -np.minimum(0.0, (c1 - c2) * (c1 - lower_bound_values(c2)))


def delta_grid(n1, n2):
    """``maxneg_minneg_delta`` on ``linspace(0, 1, n1) x linspace(0, 1, n2)``.

    Row ``i`` corresponds to ``C1 = i/(n1-1)``, column ``j`` to
    ``C2 = j/(n2-1)``.
    """
    if int(n1) < 2 or int(n2) < 2:
        raise ParamOutOfRange("delta_grid needs at least 2 points per axis")
    c1 = np.linspace(0.0, 1.0, int(n1))
    c2 = np.linspace(0.0, 1.0, int(n2))
    return maxneg_minneg_delta(c1[:, None], c2[None, :])


def _golden_max(f, lo, hi, tol=1e-12):
    a, b = lo, hi
    x1 = b - GOLDEN * (b - a)
    x2 = a + GOLDEN * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + GOLDEN * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - GOLDEN * (b - a)
            f1 = f(x1)
    x = 0.5 * (a + b)
    return x, f(x)


def _scan_then_refine(f, steps):
    xs = np.linspace(0.0, 1.0, steps + 1)
    i = int(np.argmax(f(xs)))
    h = 1.0 / steps
    x, v = _golden_max(lambda t: float(f(t)), max(0.0, xs[i] - h), min(1.0, xs[i] + h))
    return x, v


@dataclass(frozen=True)
class NumericGaps:
    max_dc: float
    max_dn: float
    max_delta: float
    argmax_dc: tuple
    argmax_dn: tuple
    argmax_delta: tuple


def numeric_extremal_search(grid_steps=1000):
    """Maximize the three gap functionals over the band edges numerically.

    State 1 runs over the MaxNeg edge (``N1 = C1``), state 2 over the MinNeg
    edge (``N2 = lower_bound(C2)``).  Each maximum is located on a grid of
    ``grid_steps`` intervals and then refined by golden-section search (per
    coordinate, alternating, for the two-dimensional ``delta``).
    """
    steps = int(grid_steps)
    if steps < 100:
        raise ParamOutOfRange(f"grid_steps={grid_steps!r} must be at least 100")

    # Equal negativity forces C1 = lower_bound(C2); equal concurrence forces
    # C1 = C2.  Both reduce to the gap C2 - lower_bound(C2).
    def edge_gap(c2):
        return np.asarray(c2) - lower_bound_values(c2)

    c2_dc, max_dc = _scan_then_refine(edge_gap, steps)
    c2_dn, max_dn = _scan_then_refine(edge_gap, steps)

    xs = np.linspace(0.0, 1.0, steps + 1)
    grid = maxneg_minneg_delta(xs[:, None], xs[None, :])
    i, j = np.unravel_index(int(np.argmax(grid)), grid.shape)
    c1, c2 = xs[i], xs[j]
    h = 1.0 / steps
    best = float(grid[i, j])
    for _ in range(60):
        c1, _v = _golden_max(lambda t: float(maxneg_minneg_delta(t, c2)),
                             max(0.0, c1 - h), min(1.0, c1 + h))
        c2, v = _golden_max(lambda t: float(maxneg_minneg_delta(c1, t)),
                            max(0.0, c2 - h), min(1.0, c2 + h))
        if abs(v - best) < 1e-16:
            best = v
            break
        best = v
    return NumericGaps(
        max_dc=float(max_dc),
        max_dn=float(max_dn),
        max_delta=float(best),
        argmax_dc=(float(lower_bound_negativity(c2_dc)), float(c2_dc)),
        argmax_dn=(float(c2_dn), float(c2_dn)),
        argmax_delta=(float(c1), float(c2)),
    )
