"""Gamma-matrix representations of the Clifford relations.

A rank-d representation is d Hermitian g-by-g matrices, g = 2^floor(d/2),
with gamma_j^2 = I and gamma_j gamma_k = -gamma_k gamma_j for j != k.
``standard_rep`` returns the fixed conventional choices for d <= 4 (the
d = 4 choice is block off-diagonal, which enables the reduced localizer);
``generated_rep`` covers every d via the usual tensor-product ladder.
All representations are exact-kind, so the relations can be checked with
no tolerance at all.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .matrices import FLOAT, dagger, exact_eye, exact_matrix, kind_of, kron, matmul, to_float
from .scalars import GaussianRational

# Pauli matrices, exact kind.
SIGMA_X = exact_matrix([[0, 1], [1, 0]])
SIGMA_Y = exact_matrix([[(0, 0), (0, -1)], [(0, 1), (0, 0)]])
SIGMA_Z = exact_matrix([[1, 0], [0, -1]])
EYE_2 = exact_eye(2)


def gamma_size(d: int) -> int:
    return 2 ** (d // 2)


@dataclass(frozen=True, eq=False)
class GammaRep:
    """d anticommuting Hermitian involutions, optionally with the
    upper-right blocks when every gamma is block off-diagonal."""

    gammas: tuple
    off_diagonal_blocks: tuple | None = None

    @property
    def d(self) -> int:
        return len(self.gammas)

    @property
    def g(self) -> int:
        return self.gammas[0].shape[0]

    def as_float(self):
        return tuple(to_float(g) for g in self.gammas)


@dataclass(frozen=True)
class RelationViolation:
    relation: str
    indices: tuple
    magnitude: float


@dataclass(frozen=True)
class RelationReport:
    violations: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def max_violation(self) -> float:
        return max((v.magnitude for v in self.violations), default=0.0)


def standard_rep(d: int) -> GammaRep:
    """The fixed conventional representation for d in 1..4."""
    if d == 1:
        return GammaRep((exact_matrix([[1]]),))
    if d == 2:
        return GammaRep((SIGMA_X, SIGMA_Y))
    if d == 3:
        return GammaRep((SIGMA_X, SIGMA_Y, SIGMA_Z))
    if d == 4:
        # upper-right blocks of the conventional block off-diagonal choice;
        # the second block carries a minus sign (the published 4x4 matrices
        # are authoritative, and their reduced determinants match the
        # tabulated torus polynomials only with this orientation)
        i = GaussianRational(0, 1)
        blocks = (i * SIGMA_X, -i * SIGMA_Y, i * SIGMA_Z, exact_eye(2))
        gammas = tuple(_embed_off_diagonal(b) for b in blocks)
        return GammaRep(gammas, off_diagonal_blocks=blocks)
    raise ContractError("standard_rep covers d in 1..4; use generated_rep")


def _embed_off_diagonal(block: np.ndarray) -> np.ndarray:
    """[[0, B], [B*, 0]] as an exact matrix."""
    m = block.shape[0]
    out = np.empty((2 * m, 2 * m), dtype=object)
    zero = GaussianRational(0)
    bh = dagger(block)
    for i in range(m):
        for j in range(m):
            out[i, j] = zero
            out[m + i, m + j] = zero
            out[i, m + j] = block[i, j]
            out[m + i, j] = bh[i, j]
    return out


def generated_rep(d: int) -> GammaRep:
    """Tensor-product construction valid for every d >= 1."""
    if d < 1:
        raise ContractError("need d >= 1")
    k = d // 2
    gammas = []
    for j in range(1, k + 1):
        prefix = None
        for _ in range(j - 1):
            prefix = SIGMA_Z if prefix is None else kron(prefix, SIGMA_Z)

        def pad(core, prefix=prefix, tail=k - j):
            m = core if prefix is None else kron(prefix, core)
            for _ in range(tail):
                m = kron(m, EYE_2)
            return m

        gammas.append(pad(SIGMA_X))
        gammas.append(pad(SIGMA_Y))
    if d % 2:
        if k == 0:
            gammas.append(exact_matrix([[1]]))
        else:
            tail = SIGMA_Z
            for _ in range(k - 1):
                tail = kron(tail, SIGMA_Z)
            gammas.append(tail)
    return GammaRep(tuple(gammas))


def rep_for(d: int) -> GammaRep:
    """Standard choice when available, generated otherwise."""
    return standard_rep(d) if d <= 4 else generated_rep(d)


def _max_abs(m: np.ndarray) -> float:
    worst = 0.0
    for e in m.reshape(-1):
        worst = max(worst, abs(e.to_complex()) if isinstance(e, GaussianRational) else abs(e))
    return worst


def validate(rep: GammaRep, float_tol: float = 1e-12) -> RelationReport:
    """Check Hermiticity, involution, and pairwise anticommutation.

    Exact representations must satisfy every relation with no tolerance;
    float ones are allowed `float_tol` of roundoff.
    """
    bad = []
    is_float = kind_of(rep.gammas[0]) == FLOAT
    cut = float_tol if is_float else 0.0
    eye = np.eye(rep.g, dtype=complex) if is_float else exact_eye(rep.g)
    for j, gm in enumerate(rep.gammas):
        h = _max_abs(gm - dagger(gm))
        if h > cut:
            bad.append(RelationViolation("hermitian", (j,), h))
        s = _max_abs(matmul(gm, gm) - eye)
        if s > cut:
            bad.append(RelationViolation("involution", (j,), s))
    for j in range(rep.d):
        for k in range(j + 1, rep.d):
            a = matmul(rep.gammas[j], rep.gammas[k]) + matmul(rep.gammas[k], rep.gammas[j])
            m = _max_abs(a)
            if m > cut:
                bad.append(RelationViolation("anticommutation", (j, k), m))
    if rep.off_diagonal_blocks is not None and not is_float:
        for j, (gm, blk) in enumerate(zip(rep.gammas, rep.off_diagonal_blocks)):
            m = _max_abs(gm - _embed_off_diagonal(blk))
            if m:
                bad.append(RelationViolation("off_diagonal_split", (j,), m))
    return RelationReport(tuple(bad))
