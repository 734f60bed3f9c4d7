"""Small dense complex matrix algebra for two-qubit operators.

Matrices are plain ``numpy`` arrays of shape ``(4, 4)`` (or ``(2, 2)`` for
single-qubit factors).  The basis is fixed as ``|00>, |01>, |10>, |11>`` with
the first qubit as the left Kronecker factor; the partial transpose always acts
on the second qubit.

The Hermitian eigensolver is a cyclic complex Jacobi iteration.  It also
accepts stacks of matrices with shape ``(..., n, n)`` and rotates every matrix
of the stack in lock step, which is how the samplers and sweeps stay fast.
"""

from typing import NamedTuple

import numpy as np

from .errors import (
    InvalidMatrix,
    NegativeEigenvalue,
    NoConvergence,
    NonHermitianInput,
    RootFindingFailure,
)

HERMITIAN_TOL = 1e-9
JACOBI_TOL = 1e-12
MAX_SWEEPS = 100
CLAMP_TOL = 1e-9
ORACLE_RESIDUAL_TOL = 1e-7

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)


class HermEigen(NamedTuple):
    """Eigendecomposition ``m = V diag(w) V^dagger`` with ascending ``w``."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def as_cmat(m, shape=None):
    """Return ``m`` as a finite complex array, optionally checking its shape."""
    a = np.asarray(m, dtype=complex)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise InvalidMatrix(f"expected square matrix, got shape {a.shape}")
    if shape is not None and a.shape[-2:] != shape:
        raise InvalidMatrix(f"expected {shape} matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise InvalidMatrix("matrix has NaN or infinite entries")
    return a


def dagger(m):
    """Conjugate transpose (acts on the last two axes)."""
    return np.conj(np.swapaxes(as_cmat(m), -1, -2))


def tensor(a, b):
    """Kronecker product ``a (x) b`` of two single-qubit operators."""
    return np.kron(as_cmat(a, (2, 2)), as_cmat(b, (2, 2)))


SIGMA_YY = tensor(SIGMA_Y, SIGMA_Y)


def partial_transpose_b(m):
    """Transpose the second-qubit index: ``<i l|m'|k j> = <i j|m|k l>``."""
    a = as_cmat(m, (4, 4))
    lead = a.shape[:-2]
    return a.reshape(lead + (2, 2, 2, 2)).swapaxes(-3, -1).reshape(lead + (4, 4))


def spin_flip(rho):
    """Wootters spin flip ``(sy (x) sy) rho* (sy (x) sy)``."""
    a = as_cmat(rho, (4, 4))
    return SIGMA_YY @ np.conj(a) @ SIGMA_YY


def _jacobi(a):
    # a: (B, n, n) Hermitian, modified in place.
    batch, n, _ = a.shape
    v = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy()
    scale = np.maximum(1.0, np.sqrt(np.sum(np.abs(a) ** 2, axis=(-2, -1))))
    offmask = ~np.eye(n, dtype=bool)
    idx = np.arange(batch)
    for _ in range(MAX_SWEEPS):
        off = np.sqrt(np.sum(np.abs(a[:, offmask]) ** 2, axis=-1))
        if np.all(off < JACOBI_TOL * scale):
            return a, v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[:, p, q]
                mag = np.abs(apq)
                active = mag > 1e-300
                safe = np.where(active, mag, 1.0)
                phase = np.where(active, apq / safe, 1.0)
                theta = (a[:, q, q].real - a[:, p, p].real) / (2.0 * safe)
                sgn = np.where(theta >= 0.0, 1.0, -1.0)
                t = np.where(active, sgn / (np.abs(theta) + np.hypot(theta, 1.0)), 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                ph = np.conj(phase)
                # columns: A <- A J
                colp = a[:, :, p].copy()
                colq = a[:, :, q]
                a[:, :, p] = c[:, None] * colp - (s * ph)[:, None] * colq
                a[:, :, q] = s[:, None] * colp + (c * ph)[:, None] * colq
                # rows: A <- J^dagger A
                rowp = a[:, p, :].copy()
                rowq = a[:, q, :]
                a[:, p, :] = c[:, None] * rowp - (s * phase)[:, None] * rowq
                a[:, q, :] = s[:, None] * rowp + (c * phase)[:, None] * rowq
                a[idx, p, q] = 0.0
                a[idx, q, p] = 0.0
                vp = v[:, :, p].copy()
                vq = v[:, :, q]
                v[:, :, p] = c[:, None] * vp - (s * ph)[:, None] * vq
                v[:, :, q] = s[:, None] * vp + (c * ph)[:, None] * vq
    off = np.sqrt(np.sum(np.abs(a[:, offmask]) ** 2, axis=-1))
    if np.all(off < JACOBI_TOL * scale):
        return a, v
    raise NoConvergence(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")


def herm_eigen(m):
    """Eigendecomposition of a Hermitian matrix (or stack of them).

    The input is symmetrized as ``(m + m^dagger)/2`` and diagonalized with
    cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
    ``1e-12`` (relative to the matrix norm when that exceeds one).

    Parameters
    ----------
    m : array_like, shape (..., n, n)
        Hermitian within ``1e-9`` in the max norm.

    Returns
    -------
    HermEigen
        Ascending eigenvalues and the matching orthonormal eigenvectors stored
        as columns.

    Raises
    ------
    NonHermitianInput
        If ``max |m - m^dagger| > 1e-9``.
    NoConvergence
        If 100 sweeps do not reach the tolerance.
    """
    a = as_cmat(m)
    herm_err = np.max(np.abs(a - dagger(a))) if a.size else 0.0
    if herm_err > HERMITIAN_TOL:
        raise NonHermitianInput(f"max |m - m^dagger| = {herm_err:.3e} exceeds {HERMITIAN_TOL}")
    lead, n = a.shape[:-2], a.shape[-1]
    work = (0.5 * (a + dagger(a))).reshape((-1, n, n)).copy()
    d, v = _jacobi(work)
    w = np.real(np.diagonal(d, axis1=-2, axis2=-1))
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    v = np.take_along_axis(v, order[:, None, :], axis=-1)
    return HermEigen(w.reshape(lead + (n,)), v.reshape(lead + (n, n)))


def herm_eigvals(m):
    return herm_eigen(m).eigenvalues


def clamp_eigenvalues(w, tol=CLAMP_TOL):
    """Zero eigenvalues in ``[-tol, 0)``; raise for anything more negative."""
    w = np.asarray(w, dtype=float)
    if np.any(w < -tol):
        raise NegativeEigenvalue(f"eigenvalue {w.min():.3e} below -{tol}")
    return np.where(w < 0.0, 0.0, w)


def herm_sqrt(m, floor=0.0):
    """Principal square root of a Hermitian positive semidefinite matrix.

    Eigenvalues in ``[-1e-9, floor]`` are treated as exact zeros.
    """
    w, v = herm_eigen(m)
    w = clamp_eigenvalues(w)
    root = np.sqrt(np.where(w <= floor, 0.0, w))
    s = (v * root[..., None, :]) @ dagger(v)
    return 0.5 * (s + dagger(s))


def char_poly(m):
    """Characteristic polynomial coefficients by Faddeev-LeVerrier.

    Returns ``[1, c1, ..., cn]`` such that ``det(x I - m) = sum c_k x^(n-k)``.
    """
    a = as_cmat(m)
    if a.ndim != 2:
        raise InvalidMatrix("char_poly expects a single matrix")
    n = a.shape[0]
    coeffs = [1.0 + 0j]
    mk = np.zeros_like(a)
    eye = np.eye(n, dtype=complex)
    for k in range(1, n + 1):
        mk = a @ mk + coeffs[-1] * eye
        coeffs.append(-np.trace(a @ mk) / k)
    return np.array(coeffs)


def _poly_eval(coeffs, z):
    p = np.zeros_like(z) + coeffs[0]
    dp = np.zeros_like(z)
    for c in coeffs[1:]:
        dp = dp * z + p
        p = p * z + c
    return p, dp


def poly_roots(coeffs, maxiter=500):
    """All roots of a monic complex polynomial by Aberth-Ehrlich iteration."""
    coeffs = np.asarray(coeffs, dtype=complex)
    coeffs = coeffs / coeffs[0]
    n = len(coeffs) - 1
    radius = 1.0 + np.max(np.abs(coeffs[1:]))
    # Start off the real axis so symmetric spectra do not stall the iteration.
    z = 0.5 * radius * np.exp(1j * (2 * np.pi * np.arange(n) / n + 0.4))
    for _ in range(maxiter):
        p, dp = _poly_eval(coeffs, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(p == 0, 0.0, p / dp)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, 1.0)
            inv = 1.0 / diff
            np.fill_diagonal(inv, 0.0)
            repulse = inv.sum(axis=1)
            step = np.where(p == 0, 0.0, ratio / (1.0 - ratio * repulse))
        if not np.all(np.isfinite(step)):
            step = np.where(np.isfinite(step), step, 1e-8 * radius)
        z = z - step
        if np.all(np.abs(step) <= 1e-16 * np.maximum(1.0, np.abs(z))):
            break
    return z


def quartic_eigenvalues_oracle(m):
    """Eigenvalues of a general 4x4 matrix from its characteristic polynomial.

    Independent of :func:`herm_eigen`: coefficients come from Faddeev-LeVerrier
    and the roots from an Aberth-Ehrlich iteration.  Each root is accepted only
    if ``|det(m - root I)| <= 1e-7``.
    """
    a = as_cmat(m, (4, 4))
    roots = poly_roots(char_poly(a))
    eye = np.eye(4)
    for r in roots:
        residual = abs(np.linalg.det(a - r * eye))
        if not np.isfinite(residual) or residual > ORACLE_RESIDUAL_TOL:
            raise RootFindingFailure(f"root {r} has residual {residual:.3e}")
    return roots[np.lexsort((roots.imag, roots.real))]
