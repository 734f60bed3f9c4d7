"""Entanglement measures of two-qubit density matrices.

All array functions with a ``_values`` suffix accept a stack of matrices of
shape ``(..., 4, 4)`` and skip density-matrix validation; the scalar functions
take a :class:`~entorder.states.DensityMatrix` (or anything that validates as
one) and return a ``float``.
"""

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import qmat
from .errors import ConsistencyError, ParamOutOfRange
from .states import DensityMatrix, PureState, pure_concurrence

BOUNDARY_TOL = 1e-9
# Eigenvalues of rho at or below this are roundoff from exact zeros.  The
# concurrence is only Holder-1/2 continuous along some null directions, so a
# 1e-17 residue would otherwise shift it by ~1e-8.
RANK_FLOOR = 1e-14


@dataclass(frozen=True)
class MeasureSet:
    concurrence: float
    negativity: float
    log_negativity: float
    eof: float

    def as_dict(self):
        return asdict(self)


def _stack(rho):
    if isinstance(rho, DensityMatrix):
        return rho.matrix
    return qmat.as_cmat(rho, (4, 4))


def _as_state(rho):
    return rho if isinstance(rho, DensityMatrix) else DensityMatrix(rho)


def _unit_interval(x, name):
    x = np.asarray(x, dtype=float)
    if np.any(x < -BOUNDARY_TOL) or np.any(x > 1.0 + BOUNDARY_TOL):
        bad = x[(x < -BOUNDARY_TOL) | (x > 1.0 + BOUNDARY_TOL)].ravel()[0]
        raise ConsistencyError(f"{name} = {bad!r} outside [0, 1]")
    return np.clip(x, 0.0, 1.0)


def wootters_lambdas(rho):
    """Descending square roots of the eigenvalues of ``rho rho~``.

    ``rho rho~`` is similar to the Hermitian ``sqrt(rho) rho~ sqrt(rho)``, whose
    eigenvalues are the squared singular values of ``A = sqrt(rho) sqrt(rho~)``
    (``sqrt(rho~)`` is the spin flip of ``sqrt(rho)``).  The singular values
    are read off the Hermitian dilation ``[[0, A], [A^dagger, 0]]``, whose
    spectrum is ``+-sigma_i``.  Square-rooting the near-zero eigenvalues of a
    rank-deficient state would amplify roundoff to ~1e-8; the dilation keeps
    the error at machine precision.
    """
    m = _stack(rho)
    root = qmat.herm_sqrt(m, floor=RANK_FLOOR)
    a = root @ qmat.spin_flip(root)
    lead = a.shape[:-2]
    dil = np.zeros(lead + (8, 8), dtype=complex)
    dil[..., :4, 4:] = a
    dil[..., 4:, :4] = qmat.dagger(a)
    w = qmat.herm_eigvals(dil)
    return np.abs(w[..., 4:])[..., ::-1]


def concurrence_values(rho):
    lam = wootters_lambdas(rho)
    c = lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3]
    return _unit_interval(np.maximum(c, 0.0), "concurrence")


def negativity_values(rho):
    mu_min = qmat.herm_eigvals(qmat.partial_transpose_b(_stack(rho)))[..., 0]
    return _unit_interval(np.maximum(-2.0 * mu_min, 0.0), "negativity")


def concurrence(rho):
    """Wootters concurrence ``max(0, l1 - l2 - l3 - l4)``."""
    return float(concurrence_values(_as_state(rho)))


def negativity(rho):
    """``max(0, -2 mu_min)`` with ``mu_min`` the lowest eigenvalue of the
    partial transpose."""
    return float(negativity_values(_as_state(rho)))


def log_negativity(rho):
    return math.log2(negativity(rho) + 1.0)


def binary_entropy(x):
    x = float(x)
    if not 0.0 <= x <= 1.0:
        raise ParamOutOfRange(f"x={x!r} outside [0, 1]")
    if x == 0.0 or x == 1.0:
        return 0.0
    return -x * math.log2(x) - (1.0 - x) * math.log2(1.0 - x)


def eof_from_concurrence(c):
    """Entanglement of formation of a two-qubit state with concurrence ``c``."""
    c = float(c)
    if not 0.0 <= c <= 1.0:
        raise ParamOutOfRange(f"c={c!r} outside [0, 1]")
    return binary_entropy(0.5 * (1.0 + math.sqrt(1.0 - c * c)))


def eof_values(c):
    c = np.asarray(c, dtype=float)
    x = 0.5 * (1.0 + np.sqrt(np.clip(1.0 - c * c, 0.0, 1.0)))
    with np.errstate(divide="ignore", invalid="ignore"):
        h = -x * np.log2(x) - (1.0 - x) * np.log2(1.0 - x)
    return np.where((x <= 0.0) | (x >= 1.0), 0.0, h)


def pure_measures(psi):
    """``2 |c00 c11 - c01 c10|``: concurrence and negativity of a pure state."""
    if not isinstance(psi, PureState):
        psi = PureState(psi)
    return float(pure_concurrence(psi))


def measure_all(rho):
    rho = _as_state(rho)
    c = concurrence(rho)
    n = negativity(rho)
    return MeasureSet(
        concurrence=c,
        negativity=n,
        log_negativity=math.log2(n + 1.0),
        eof=eof_from_concurrence(c),
    )


def measure_table(mats):
    """Vectorized :func:`measure_all` for a stack ``(k, 4, 4)``.

    Returns a dict of arrays keyed by the :class:`MeasureSet` field names.
    """
    c = concurrence_values(mats)
    n = negativity_values(mats)
    return {
        "concurrence": c,
        "negativity": n,
        "log_negativity": np.log2(n + 1.0),
        "eof": eof_values(c),
    }
