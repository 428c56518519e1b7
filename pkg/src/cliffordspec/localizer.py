"""Spectral localizer assembly.

L_lambda = sum_j (X_j - lambda_j I) (x) gamma_j is Hermitian for real
lambda; the joint (Clifford) spectrum is where it is singular.  For d = 4
with the block off-diagonal standard representation there is a half-size
reduced localizer built from the upper-right gamma blocks, with
|det L| = |det L_reduced|^2.  The Laplace operator sum (X_j - lambda_j)^2
is also provided; its determinant's zero set is the (often empty) Laplace
spectrum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cliffordrep import GammaRep, rep_for, standard_rep
from .errors import ContractError
from .matrices import (
    EXACT,
    FLOAT,
    HermitianTuple,
    commutator,
    exact_eye,
    kron,
    matmul,
    to_float,
)
from .linalg import operator_norm
from .scalars import as_gaussian, is_exact_scalar


def _coerce_lambda(tuple_: HermitianTuple, lam) -> list:
    if len(lam) != tuple_.d:
        raise ContractError(f"lambda must have length {tuple_.d}")
    if tuple_.kind == EXACT:
        out = []
        for v in lam:
            g = as_gaussian(v)
            if g.im:
                raise ContractError("lambda components must be real")
            out.append(g)
        return out
    vals = []
    for v in lam:
        if isinstance(v, complex):
            if v.imag:
                raise ContractError("lambda components must be real")
            v = v.real
        if is_exact_scalar(v):
            v = float(v)
        vals.append(float(v))
    return vals


def _rep_gammas(tuple_: HermitianTuple, rep: GammaRep):
    if tuple_.kind == FLOAT:
        return rep.as_float()
    return rep.gammas


@dataclass(frozen=True, eq=False)
class Localizer:
    tuple: HermitianTuple
    rep: GammaRep
    lam: tuple
    matrix: np.ndarray


@dataclass(frozen=True, eq=False)
class ReducedLocalizer:
    tuple: HermitianTuple
    lam: tuple
    matrix: np.ndarray


def build(tuple_: HermitianTuple, rep: GammaRep | None = None, lam=None) -> Localizer:
    """Assemble L_lambda = sum (X_j - lambda_j) (x) gamma_j."""
    if rep is None:
        rep = rep_for(tuple_.d)
    if rep.d != tuple_.d:
        raise ContractError("representation rank must match tuple length")
    if lam is None:
        lam = [0] * tuple_.d
    lam = _coerce_lambda(tuple_, lam)
    shifted = tuple_.shifted(lam)
    gammas = _rep_gammas(tuple_, rep)
    total = kron(shifted.matrices[0], gammas[0])
    for x, g in zip(shifted.matrices[1:], gammas[1:]):
        total = total + kron(x, g)
    return Localizer(tuple_, rep, tuple(lam), total)


def build_reduced(tuple_: HermitianTuple, lam=None) -> ReducedLocalizer:
    """Half-size localizer from the upper-right gamma blocks (d = 4 only)."""
    if tuple_.d != 4:
        raise ContractError("the reduced localizer needs a 4-tuple")
    rep = standard_rep(4)
    if lam is None:
        lam = [0] * 4
    lam = _coerce_lambda(tuple_, lam)
    shifted = tuple_.shifted(lam)
    blocks = rep.off_diagonal_blocks
    if tuple_.kind == FLOAT:
        blocks = tuple(to_float(b) for b in blocks)
    total = kron(shifted.matrices[0], blocks[0])
    for x, b in zip(shifted.matrices[1:], blocks[1:]):
        total = total + kron(x, b)
    return ReducedLocalizer(tuple_, tuple(lam), total)


def laplace(tuple_: HermitianTuple, lam=None) -> np.ndarray:
    """sum_j (X_j - lambda_j)^2, a PSD Hermitian n x n matrix."""
    if lam is None:
        lam = [0] * tuple_.d
    lam = _coerce_lambda(tuple_, lam)
    shifted = tuple_.shifted(lam)
    total = matmul(shifted.matrices[0], shifted.matrices[0])
    for x in shifted.matrices[1:]:
        total = total + matmul(x, x)
    return total


def square_identity_residual(tuple_: HermitianTuple, rep: GammaRep | None = None, lam=None):
    """|| L^2 - [ sum (X_j-l_j)^2 (x) I + sum_{j<k} [X_j,X_k] (x) g_j g_k ] ||.

    Exactly zero for exact tuples (returned as a float 0.0).
    """
    if rep is None:
        rep = rep_for(tuple_.d)
    loc = build(tuple_, rep, lam)
    lsq = matmul(loc.matrix, loc.matrix)
    gammas = _rep_gammas(tuple_, rep)
    g = rep.g
    eye = exact_eye(g) if tuple_.kind == EXACT else np.eye(g, dtype=complex)
    shifted = tuple_.shifted(loc.lam)
    rhs = kron(laplace(tuple_, loc.lam), eye)
    for j in range(tuple_.d):
        for k in range(j + 1, tuple_.d):
            comm = commutator(shifted.matrices[j], shifted.matrices[k])
            rhs = rhs + kron(comm, matmul(gammas[j], gammas[k]))
    diff = lsq - rhs
    if tuple_.kind == EXACT:
        worst = 0.0
        for e in diff.reshape(-1):
            worst = max(worst, abs(e.to_complex()))
        return worst
    return operator_norm(diff)
