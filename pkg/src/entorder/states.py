"""Two-qubit states and the parametrized families built from them.

Every mixed family here is a mixture of the singlet

    |psi_B> = (|01> - |10>) / sqrt(2)

with a separable state.  ``mixture(p, q)`` is the general two-parameter form;
the Werner, Horodecki, XY, XZ and XV families are special cases or
one-parameter cuts of it.
"""

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from . import qmat
from .errors import (
    InvalidState,
    NotOrthogonal,
    NotSeparable,
    ParamOutOfRange,
    ZeroVector,
)

STATE_TOL = 1e-9
NORM_TOL = 1e-12
RANGE_TOL = 1e-12
Q_TOL = 1e-9

SQRT2 = math.sqrt(2.0)
#: Negativity of the MinNeg state with concurrence 1/2.
KAPPA = (SQRT2 - 1.0) / 2.0

FAMILIES = ("pure", "werner", "horodecki", "mixture", "xy", "xz", "xv")


def _readonly(a):
    a = np.array(a, dtype=complex)
    a.flags.writeable = False
    return a


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Validated 4x4 density matrix.

    Construction checks Hermiticity, unit trace and positivity, each within
    ``1e-9``, and raises :class:`InvalidState` naming the failed invariant.
    The stored array is read-only.
    """

    matrix: np.ndarray

    def __post_init__(self):
        try:
            m = qmat.as_cmat(self.matrix, (4, 4))
        except Exception as exc:
            raise InvalidState("shape", str(exc)) from exc
        if m.ndim != 2:
            raise InvalidState("shape", f"expected a single 4x4 matrix, got {m.shape}")
        herm = np.max(np.abs(m - m.conj().T))
        if herm > STATE_TOL:
            raise InvalidState("hermitian", f"max |rho - rho^dagger| = {herm:.3e}")
        tr = np.trace(m)
        if abs(tr - 1.0) > STATE_TOL:
            raise InvalidState("unit_trace", f"trace = {tr:.12g}")
        wmin = qmat.herm_eigvals(m)[0]
        if wmin < -STATE_TOL:
            raise InvalidState("positive_semidefinite", f"min eigenvalue = {wmin:.3e}")
        object.__setattr__(self, "matrix", _readonly(0.5 * (m + m.conj().T)))

    def __array__(self, dtype=None, copy=None):
        return np.array(self.matrix, dtype=dtype)

    def allclose(self, other, atol=1e-12):
        return bool(np.allclose(self.matrix, np.asarray(other), rtol=0.0, atol=atol))


@dataclass(frozen=True, eq=False)
class PureState:
    """Normalized amplitudes ``(c00, c01, c10, c11)``."""

    amplitudes: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.amplitudes, dtype=complex)
        if c.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got shape {c.shape}")
        norm = np.linalg.norm(c)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"amplitudes not normalized (norm {norm:.15g})")
        object.__setattr__(self, "amplitudes", _readonly(c))

    @property
    def density(self):
        return density_of(self)


def density_of(psi):
    """Rank-one projector ``|psi><psi|``."""
    c = np.asarray(psi.amplitudes if isinstance(psi, PureState) else psi, dtype=complex)
    return DensityMatrix(np.outer(c, c.conj()))


def pure_from_amplitudes(c):
    """Build a :class:`PureState`, renormalizing the input.

    Raises :class:`ZeroVector` when the norm is below ``1e-6``.
    """
    c = np.asarray(c, dtype=complex).reshape(4)
    norm = np.linalg.norm(c)
    if not np.isfinite(norm) or norm < 1e-6:
        raise ZeroVector(f"amplitude vector has norm {norm:.3e}")
    return PureState(c / norm)


BASIS = {label: np.eye(4, dtype=complex)[i] for i, label in enumerate(("00", "01", "10", "11"))}
SINGLET = (BASIS["01"] - BASIS["10"]) / SQRT2
SINGLET_PROJECTOR = _readonly(np.outer(SINGLET, SINGLET.conj()))


def singlet():
    return PureState(SINGLET)


def _check_range(name, value, lo, hi, tol=RANGE_TOL):
    value = float(value)
    if not (lo - tol <= value <= hi + tol):
        raise ParamOutOfRange(f"{name}={value!r} outside [{lo!r}, {hi!r}]")
    return min(max(value, lo), hi)


def _proj(v):
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def werner(p):
    p = _check_range("p", p, 0.0, 1.0)
    return DensityMatrix(p * SINGLET_PROJECTOR + (1.0 - p) / 4.0 * np.eye(4))


def horodecki(p):
    """Singlet mixed with ``|00>``; a MinNeg state for every ``p``."""
    p = _check_range("p", p, 0.0, 1.0)
    return DensityMatrix(p * SINGLET_PROJECTOR + (1.0 - p) * _proj(BASIS["00"]))


def psi_q(q):
    """Separable state ``sqrt(1-q)|00> + sqrt(q)|01>``."""
    q = _check_range("q", q, 0.0, 1.0)
    return PureState(math.sqrt(1.0 - q) * BASIS["00"] + math.sqrt(q) * BASIS["01"])


def mixture_matrix(p, q):
    """Unvalidated array form of :func:`mixture`; broadcasts over ``p`` and ``q``."""
    p, q = np.broadcast_arrays(np.asarray(p, dtype=float), np.asarray(q, dtype=float))
    sep = np.zeros(p.shape + (4,), dtype=complex)
    sep[..., 0] = np.sqrt(1.0 - q)
    sep[..., 1] = np.sqrt(q)
    sep_proj = sep[..., :, None] * sep[..., None, :].conj()
    return p[..., None, None] * SINGLET_PROJECTOR + (1.0 - p)[..., None, None] * sep_proj


def mixture(p, q):
    p = _check_range("p", p, 0.0, 1.0)
    q = _check_range("q", q, 0.0, 1.0)
    return DensityMatrix(mixture_matrix(p, q))


def pure_theta(p):
    """``sqrt(p)|01> + sqrt(1-p)|10>``, with concurrence ``2 sqrt(p(1-p))``."""
    p = _check_range("p", p, 0.0, 1.0)
    return PureState(math.sqrt(p) * BASIS["01"] + math.sqrt(1.0 - p) * BASIS["10"])


def _snap_unit(q, name):
    if abs(q) <= RANGE_TOL:
        return 0.0
    if abs(q - 1.0) <= RANGE_TOL:
        return 1.0
    if not (-Q_TOL <= q <= 1.0 + Q_TOL):
        raise ParamOutOfRange(f"{name}={q!r} falls outside [0, 1]")
    return min(max(q, 0.0), 1.0)


def q_prime_range(n_target):
    """Interval of ``p`` over which ``mixture(p, q_prime(N', p))`` exists."""
    n = float(n_target)
    return n, math.sqrt(2.0 * n * (n + 1.0)) - n


def q_prime(n_target, p):
    """Mixing parameter ``q`` giving ``mixture(p, q)`` negativity ``n_target``.

    Admissible for ``N' <= p <= sqrt(2N'(N'+1)) - N'`` and ``0 < p < 1``.
    """
    n = float(n_target)
    lo, hi = q_prime_range(n)
    p = _check_range("p", p, lo, hi)
    if not 0.0 < p < 1.0:
        raise ParamOutOfRange(f"p={p!r} must lie strictly inside (0, 1)")
    q = (n * (n + 2.0 * (1.0 - p)) - p * p) / (2.0 * p * (1.0 - p))
    return _snap_unit(q, "q'")


def q_triple_prime_range(n_ref, c_ref):
    return 0.5 * (float(c_ref) + float(n_ref)), float(c_ref)


def q_triple_prime(n_ref, c_ref, p):
    """Mixing parameter for which ``mixture(p, q)`` is anti-ordered with a
    reference state of concurrence ``c_ref`` and negativity ``n_ref``:
    ``C(ref) - C(new) = -(N(ref) - N(new))``.
    """
    n, c = float(n_ref), float(c_ref)
    if not c < 1.0:
        raise ParamOutOfRange(f"reference concurrence {c!r} must be below 1")
    lo, hi = q_triple_prime_range(n, c)
    p = _check_range("p", p, lo, hi)
    if not 0.0 < p < 1.0:
        raise ParamOutOfRange(f"p={p!r} must lie strictly inside (0, 1)")
    bracket = n + c + 1.0 - 2.0 * p
    q = 1.0 + (bracket * bracket - 1.0) / (2.0 * p * (1.0 - p))
    return _snap_unit(q, "q'''")


XY_RANGE = q_prime_range(KAPPA)
XV_RANGE = (SQRT2 / 4.0, 0.5)


def xy_q(p):
    p = _check_range("p", p, *XY_RANGE)
    return _snap_unit((1.0 - 2.0 * p) * (2.0 * SQRT2 + 2.0 * p - 1.0) / (8.0 * p * (1.0 - p)), "q")


def xv_q(p):
    p = _check_range("p", p, *XV_RANGE)
    return _snap_unit((1.0 - 2.0 * p) * (2.0 * SQRT2 + 1.0 - 2.0 * p) / (4.0 * p * (1.0 - p)), "q")


def family_xy(p):
    """Constant negativity ``KAPPA`` for ``KAPPA <= p <= 1/2``."""
    return mixture(p, xy_q(p))


def family_xz(q):
    """Constant concurrence 1/2 for ``0 <= q <= 1``."""
    return mixture(0.5, q)


def family_xv(p):
    """``C + N = sqrt(2)/2`` for ``sqrt(2)/4 <= p <= 1/2``."""
    return mixture(p, xv_q(p))


def pure_concurrence(c):
    c = np.asarray(c.amplitudes if isinstance(c, PureState) else c, dtype=complex)
    return 2.0 * abs(c[0] * c[3] - c[1] * c[2])


def min_neg_state(p, separable):
    """Singlet mixed with a separable pure state orthogonal to it."""
    p = _check_range("p", p, 0.0, 1.0)
    if not isinstance(separable, PureState):
        separable = pure_from_amplitudes(separable)
    s = separable.amplitudes
    overlap = abs(np.vdot(SINGLET, s))
    if overlap > STATE_TOL:
        raise NotOrthogonal(f"|<psi_B|s>| = {overlap:.3e}")
    if pure_concurrence(s) > STATE_TOL:
        raise NotSeparable(f"pure-state concurrence {pure_concurrence(s):.3e}")
    return DensityMatrix(p * SINGLET_PROJECTOR + (1.0 - p) * _proj(s))


@dataclass(frozen=True)
class FamilySpec:
    """A named family with its parameters; the single dispatch point for
    building states from command-line flags and state documents.

    ``mixture`` accepts ``p`` together with exactly one of ``q``, ``nprime``
    (constant-negativity cut) or ``cref`` + ``nref`` (anti-ordered cut).
    ``pure`` accepts ``p`` or real/imaginary amplitudes ``c00`` ... ``c11``
    and ``c00_im`` ... ``c11_im``.
    """

    family: str
    params: Mapping[str, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ParamOutOfRange(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        object.__setattr__(self, "params", {k: float(v) for k, v in dict(self.params).items()})

    def _require(self, *names, optional=()):
        missing = [n for n in names if n not in self.params]
        extra = set(self.params) - set(names) - set(optional)
        if missing:
            raise ParamOutOfRange(f"family {self.family!r} needs parameter(s) {missing}")
        if extra:
            raise ParamOutOfRange(f"family {self.family!r} does not take {sorted(extra)}")
        return [self.params[n] for n in names]

    def mixture_q(self):
        """Resolve the ``q`` of a ``mixture`` spec from whichever form was given."""
        keys = set(self.params)
        if keys == {"p", "q"}:
            return self.params["q"]
        if keys == {"p", "nprime"}:
            return q_prime(self.params["nprime"], self.params["p"])
        if keys == {"p", "cref", "nref"}:
            return q_triple_prime(self.params["nref"], self.params["cref"], self.params["p"])
        raise ParamOutOfRange(
            "mixture needs p plus one of: q | nprime | cref and nref; "
            f"got {sorted(keys)}"
        )

    def build(self):
        f = self.family
        if f == "pure":
            if "p" in self.params:
                (p,) = self._require("p")
                return density_of(pure_theta(p))
            labels = ("c00", "c01", "c10", "c11")
            self._require(optional=labels + tuple(l + "_im" for l in labels))
            amps = [self.params.get(l, 0.0) + 1j * self.params.get(l + "_im", 0.0) for l in labels]
            return density_of(pure_from_amplitudes(amps))
        if f == "werner":
            return werner(*self._require("p"))
        if f == "horodecki":
            return horodecki(*self._require("p"))
        if f == "mixture":
            return mixture(self.params.get("p", math.nan), self.mixture_q())
        if f == "xy":
            return family_xy(*self._require("p"))
        if f == "xz":
            return family_xz(*self._require("q"))
        return family_xv(*self._require("p"))
