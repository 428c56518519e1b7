"""Dense matrix kernels: eigendecomposition, determinants, signature,
smallest eigenvalue magnitude, Pfaffians, operator norm.

The exact determinant uses fraction-free Bareiss elimination.  Entries are
first scaled to Gaussian integers (one lcm of all denominators), so the
elimination runs on plain Python integer pairs; Bareiss guarantees every
interior division is exact.  The float Pfaffian uses Parlett-Reid skew
tridiagonalization with partial pivoting; the exact Pfaffian expands along
the first row, which is fine for the small self-dual blocks that arise.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from .errors import ContractError, SingularAtTolerance
from .matrices import EXACT, FLOAT, kind_of, require_hermitian, to_float
from .scalars import GaussianRational

SKEW_RTOL = 1e-12


def default_tolerance(m: np.ndarray) -> float:
    """Shared singularity tolerance: 1e-8 * (1 + operator norm)."""
    return 1e-8 * (1.0 + operator_norm(m))


def hermitian_eigen(m: np.ndarray):
    """Eigenvalues (ascending, real) and unitary eigenvectors of a float
    Hermitian matrix."""
    if kind_of(m) != FLOAT:
        raise ContractError("hermitian_eigen needs a float-kind matrix")
    if m.shape[0] != m.shape[1]:
        raise ContractError("hermitian_eigen needs a square matrix")
    require_hermitian(m)
    return np.linalg.eigh(m)


def hermitian_eigenvalues(m: np.ndarray) -> np.ndarray:
    if kind_of(m) != FLOAT:
        raise ContractError("eigenvalues need a float-kind matrix")
    require_hermitian(m)
    return np.linalg.eigvalsh(m)


def operator_norm(m: np.ndarray) -> float:
    """Largest singular value.  Exact input is converted to float first."""
    mf = to_float(m)
    if mf.size == 0:
        return 0.0
    return float(np.linalg.norm(mf, 2))


def smallest_eigen_magnitude(m: np.ndarray) -> float:
    """min |eigenvalue| of a Hermitian matrix; 0 signals singularity."""
    return float(np.min(np.abs(hermitian_eigenvalues(m))))


def signature(m: np.ndarray, tol: float | None = None) -> int:
    """Number of eigenvalues above tol minus number below -tol.

    Raises SingularAtTolerance if any eigenvalue magnitude is <= tol,
    since the signature (and hence the index) is undefined there.
    """
    eigs = hermitian_eigenvalues(m)
    if tol is None:
        tol = default_tolerance(m)
    gap = float(np.min(np.abs(eigs)))
    if gap <= tol:
        raise SingularAtTolerance(gap, tol)
    return int(np.sum(eigs > tol) - np.sum(eigs < -tol))


# ---------------------------------------------------------------------------
# determinants


def _scale_to_gaussian_integers(m: np.ndarray):
    """Return (den, re_rows, im_rows) with den*m having integer entries."""
    n = m.shape[0]
    den = 1
    for e in m.reshape(-1):
        den = math.lcm(den, e.re.denominator, e.im.denominator)
    re_rows = [[int(m[i, j].re * den) for j in range(n)] for i in range(n)]
    im_rows = [[int(m[i, j].im * den) for j in range(n)] for i in range(n)]
    return den, re_rows, im_rows


def _gaussian_int_bareiss(a_re, a_im, n):
    """Fraction-free elimination over Gaussian integers; returns det as an
    (re, im) integer pair.  Mutates its inputs."""
    sign = 1
    prev_re, prev_im, prev_norm = 1, 0, 1
    for k in range(n - 1):
        if a_re[k][k] == 0 and a_im[k][k] == 0:
            for r in range(k + 1, n):
                if a_re[r][k] != 0 or a_im[r][k] != 0:
                    a_re[k], a_re[r] = a_re[r], a_re[k]
                    a_im[k], a_im[r] = a_im[r], a_im[k]
                    sign = -sign
                    break
            else:
                return 0, 0
        pr = a_re[k][k]
        pi = a_im[k][k]
        rk_re = a_re[k]
        rk_im = a_im[k]
        trivial_prev = prev_norm == 1 and prev_re == 1
        for i in range(k + 1, n):
            ri_re = a_re[i]
            ri_im = a_im[i]
            lr = ri_re[k]
            li = ri_im[k]
            for j in range(k + 1, n):
                xr = ri_re[j] * pr - ri_im[j] * pi - (lr * rk_re[j] - li * rk_im[j])
                xi = ri_re[j] * pi + ri_im[j] * pr - (lr * rk_im[j] + li * rk_re[j])
                if trivial_prev:
                    ri_re[j] = xr
                    ri_im[j] = xi
                else:
                    ri_re[j] = (xr * prev_re + xi * prev_im) // prev_norm
                    ri_im[j] = (xi * prev_re - xr * prev_im) // prev_norm
            ri_re[k] = 0
            ri_im[k] = 0
        prev_re, prev_im = pr, pi
        prev_norm = pr * pr + pi * pi
    return sign * a_re[n - 1][n - 1], sign * a_im[n - 1][n - 1]


def exact_determinant(m: np.ndarray) -> GaussianRational:
    if m.shape[0] != m.shape[1]:
        raise ContractError("determinant needs a square matrix")
    n = m.shape[0]
    if n == 0:
        return GaussianRational(1)
    den, re_rows, im_rows = _scale_to_gaussian_integers(m)
    dr, di = _gaussian_int_bareiss(re_rows, im_rows, n)
    scale = Fraction(1, den**n)
    return GaussianRational(dr * scale, di * scale)


def determinant(m: np.ndarray):
    """Determinant: Bareiss (exact kind) or pivoted LU (float kind)."""
    if m.shape[0] != m.shape[1]:
        raise ContractError("determinant needs a square matrix")
    if kind_of(m) == EXACT:
        return exact_determinant(m)
    return complex(np.linalg.det(m))


# ---------------------------------------------------------------------------
# Pfaffians


def _require_skew(m: np.ndarray) -> None:
    n = m.shape[0]
    if m.shape[0] != m.shape[1] or n % 2:
        raise ContractError("pfaffian needs an even-sided square matrix")
    if kind_of(m) == EXACT:
        for i in range(n):
            for j in range(i, n):
                if m[i, j] != -m[j, i]:
                    raise ContractError("matrix is not skew-symmetric")
    else:
        scale = float(np.max(np.abs(m))) or 1.0
        if float(np.max(np.abs(m + m.T))) > SKEW_RTOL * scale:
            raise ContractError("matrix is not skew-symmetric")


def _pfaffian_expand(m: np.ndarray, rows: list) -> GaussianRational:
    if not rows:
        return GaussianRational(1)
    total = GaussianRational(0)
    first = rows[0]
    rest = rows[1:]
    for pos, other in enumerate(rest):
        entry = m[first, other]
        if entry.is_zero():
            continue
        sub = rest[:pos] + rest[pos + 1 :]
        term = entry * _pfaffian_expand(m, sub)
        total = total + term if pos % 2 == 0 else total - term
    return total


def _pfaffian_parlett_reid(m: np.ndarray) -> complex:
    a = np.array(m, dtype=complex)
    n = a.shape[0]
    value = 1.0 + 0.0j
    for k in range(0, n - 1, 2):
        pivot_row = k + 1 + int(np.argmax(np.abs(a[k + 1 :, k])))
        if pivot_row != k + 1:
            a[[k + 1, pivot_row], :] = a[[pivot_row, k + 1], :]
            a[:, [k + 1, pivot_row]] = a[:, [pivot_row, k + 1]]
            value = -value
        if a[k + 1, k] == 0:
            return 0.0j
        value *= a[k, k + 1]
        if k + 2 < n:
            tau = a[k + 2 :, k] / a[k + 1, k]
            col = a[k + 2 :, k + 1]
            a[k + 2 :, k + 2 :] += np.outer(tau, col) - np.outer(col, tau)
    return complex(value)


def pfaffian(m: np.ndarray):
    """Pfaffian of a skew-symmetric even-sided matrix; Pf(M)^2 = det(M)."""
    _require_skew(m)
    n = m.shape[0]
    if n == 0:
        return GaussianRational(1) if kind_of(m) == EXACT else 1.0 + 0.0j
    if kind_of(m) == EXACT:
        if n > 12:
            raise ContractError(
                "exact pfaffian limited to side <= 12; use the float path"
            )
        return _pfaffian_expand(m, list(range(n)))
    return _pfaffian_parlett_reid(m)
