"""Dense matrix values in two kinds and the Hermitian tuple type.

Exact matrices are numpy object arrays of GaussianRational entries; float
matrices are complex128 arrays.  The tensor product convention is fixed
package-wide by :func:`kron`: the *second* factor indexes the blocks,

    kron(A, [[a, b], [c, d]]) = [[aA, bA], [cA, dA]],

which is the opposite of ``numpy.kron``.  Every tensor product in the
package routes through this one function.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ContractError, KindMismatchError
from .scalars import EXACT, FLOAT, GaussianRational, as_gaussian

HERMITIAN_RTOL = 1e-12


def exact_matrix(rows) -> np.ndarray:
    """Build an exact matrix from nested (int | Fraction | GaussianRational |
    (re, im) pair) entries."""
    n = len(rows)
    out = np.empty((n, len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        if len(row) != out.shape[1]:
            raise ContractError("ragged rows in matrix literal")
        for j, e in enumerate(row):
            if isinstance(e, tuple):
                out[i, j] = GaussianRational(Fraction(e[0]), Fraction(e[1]))
            else:
                out[i, j] = as_gaussian(e)
    return out


def float_matrix(rows) -> np.ndarray:
    return np.asarray(rows, dtype=complex)


def kind_of(m: np.ndarray) -> str:
    return EXACT if m.dtype == object else FLOAT


def check_same_kind(*mats: np.ndarray) -> str:
    kinds = {kind_of(m) for m in mats}
    if len(kinds) != 1:
        raise KindMismatchError("operands mix exact and float matrices")
    return kinds.pop()


def exact_zeros(shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    flat = out.reshape(-1)
    for i in range(flat.size):
        flat[i] = GaussianRational(0)
    return out


def exact_eye(n: int) -> np.ndarray:
    out = exact_zeros((n, n))
    for i in range(n):
        out[i, i] = GaussianRational(1)
    return out


def to_float(m: np.ndarray) -> np.ndarray:
    """Explicit exact -> complex128 conversion (lossy for big fractions)."""
    if kind_of(m) == FLOAT:
        return m
    out = np.empty(m.shape, dtype=complex)
    flat_in = m.reshape(-1)
    flat_out = out.reshape(-1)
    for i in range(flat_in.size):
        flat_out[i] = flat_in[i].to_complex()
    return out


def dagger(m: np.ndarray) -> np.ndarray:
    if kind_of(m) == FLOAT:
        return m.conj().T
    out = np.empty((m.shape[1], m.shape[0]), dtype=object)
    for i in range(m.shape[0]):
        for j in range(m.shape[1]):
            out[j, i] = m[i, j].conjugate()
    return out


def transpose(m: np.ndarray) -> np.ndarray:
    return m.T.copy()


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    check_same_kind(a, b)
    # np.matmul rejects object dtype; np.dot handles both kinds.
    return np.dot(a, b)


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Tensor product with block structure given by the second factor."""
    check_same_kind(a, b)
    p, q = a.shape
    r, s = b.shape
    if kind_of(a) == FLOAT:
        out = np.einsum("kl,ij->kilj", b, a).reshape(r * p, s * q)
        return np.ascontiguousarray(out)
    out = np.empty((r * p, s * q), dtype=object)
    for k in range(r):
        for l in range(s):
            blk = b[k, l]
            for i in range(p):
                for j in range(q):
                    out[k * p + i, l * q + j] = blk * a[i, j]
    return out


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """AB - BA for square matrices of identical shape and kind."""
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise ContractError("commutator needs equal square shapes")
    return matmul(a, b) - matmul(b, a)


def hermiticity_defect(m: np.ndarray) -> float:
    """Max |M - M*| entry, as a float (exact matrices measured exactly)."""
    d = m - dagger(m)
    if kind_of(m) == FLOAT:
        return float(np.max(np.abs(d))) if d.size else 0.0
    worst = 0.0
    for e in d.reshape(-1):
        worst = max(worst, abs(e.to_complex()))
    return worst


def is_hermitian(m: np.ndarray) -> bool:
    if m.shape[0] != m.shape[1]:
        return False
    if kind_of(m) == EXACT:
        return all(
            m[i, j] == m[j, i].conjugate()
            for i in range(m.shape[0])
            for j in range(i, m.shape[1])
        )
    scale = float(np.linalg.norm(m)) or 1.0
    return hermiticity_defect(m) <= HERMITIAN_RTOL * scale


def require_hermitian(m: np.ndarray, what: str = "matrix") -> None:
    if not is_hermitian(m):
        raise ContractError(f"{what} is not Hermitian")


def direct_sum(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    check_same_kind(a, b)
    n, m = a.shape[0], b.shape[0]
    if kind_of(a) == FLOAT:
        out = np.zeros((n + m, n + m), dtype=complex)
    else:
        out = exact_zeros((n + m, n + m))
    out[:n, :n] = a
    out[n:, n:] = b
    return out


@dataclass(frozen=True, eq=False)
class HermitianTuple:
    """d Hermitian n-by-n matrices of a uniform scalar kind."""

    matrices: tuple = field()
    kind: str = field(init=False)

    def __init__(self, matrices):
        mats = tuple(np.asarray(m) for m in matrices)
        if not mats:
            raise ContractError("a Hermitian tuple needs at least one matrix")
        kind = check_same_kind(*mats)
        n = mats[0].shape[0]
        for k, m in enumerate(mats):
            if m.shape != (n, n):
                raise ContractError(f"matrix {k} is not {n}x{n}")
            require_hermitian(m, f"matrix {k}")
        object.__setattr__(self, "matrices", mats)
        object.__setattr__(self, "kind", kind)

    @property
    def d(self) -> int:
        return len(self.matrices)

    @property
    def n(self) -> int:
        return self.matrices[0].shape[0]

    def as_float(self) -> "HermitianTuple":
        if self.kind == FLOAT:
            return self
        return HermitianTuple([to_float(m) for m in self.matrices])

    def shifted(self, mu) -> "HermitianTuple":
        """Subtract mu_j from the diagonal of each matrix."""
        if len(mu) != self.d:
            raise ContractError("shift length must equal d")
        if self.kind == FLOAT:
            eye = np.eye(self.n)
            return HermitianTuple(
                [m - complex(s) * eye for m, s in zip(self.matrices, mu)]
            )
        eye = exact_eye(self.n)
        return HermitianTuple(
            [m - as_gaussian(s) * eye for m, s in zip(self.matrices, mu)]
        )

    def direct_sum(self, other: "HermitianTuple") -> "HermitianTuple":
        if other.d != self.d:
            raise ContractError("direct sum needs tuples of equal length")
        return HermitianTuple(
            [direct_sum(a, b) for a, b in zip(self.matrices, other.matrices)]
        )
