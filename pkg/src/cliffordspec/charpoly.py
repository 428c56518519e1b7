"""Characteristic polynomials of Hermitian tuples.

The polynomial lambda -> det(L_lambda) is reconstructed from black-box
determinant evaluations on a tensor grid, one nested univariate Newton
interpolation per variable.  The per-variable degree bound is the
localizer side length (every entry is affine in each lambda_j).

Exact tuples interpolate at integer nodes 0..degree with fraction-free
integer determinants, so the result is exact.  Float tuples use centered
half-integer nodes (better conditioned than one-sided ones) and run the
determinants and transforms in double-double arithmetic; coefficients are
then correct to roughly double precision even for the 12x12 reduced
localizers, comfortably inside the 1e-9 comparison tolerances.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

from . import _ddet as dd
from .cliffordrep import GammaRep, rep_for, standard_rep
from .errors import ContractError, InterpolationError
from .localizer import build, build_reduced, laplace
from .matrices import EXACT, FLOAT, HermitianTuple, exact_eye, kron, to_float
from .multipoly import MultiPoly
from .linalg import _gaussian_int_bareiss, exact_determinant
from .parallel import ordered_chunk_map
from .scalars import GaussianRational

HELD_OUT_RTOL = 1e-9
REAL_COEFF_RTOL = 1e-9
_CHUNK = 4096


# ---------------------------------------------------------------------------
# node sets and Newton-basis change matrices


def _float_nodes(m: int) -> np.ndarray:
    # half-integer spacing, centered: every node and node difference is an
    # exact double, so only the determinant values carry rounding
    return (np.arange(m + 1) - m / 2.0) * 0.5


def _newton_basis_coeffs(nodes) -> list:
    """B[i][k] = coefficient of x^i in prod_{j<k}(x - nodes[j]), exact."""
    m = len(nodes) - 1
    cols = [[Fraction(1)]]
    for k in range(m):
        prev = cols[-1]
        nxt = [Fraction(0)] * (len(prev) + 1)
        xk = Fraction(nodes[k])
        for i, c in enumerate(prev):
            nxt[i + 1] += c
            nxt[i] -= c * xk
        cols.append(nxt)
    rows = [[Fraction(0)] * (m + 1) for _ in range(m + 1)]
    for k, col in enumerate(cols):
        for i, c in enumerate(col):
            rows[i][k] = c
    return rows


# ---------------------------------------------------------------------------
# exact path


def _interp_terms_exact(values: np.ndarray, m: int) -> dict:
    """Nested Newton interpolation of an exact value grid (nodes 0..m)."""
    d = values.ndim
    basis = _newton_basis_coeffs(list(range(m + 1)))
    work = values
    for axis in range(d):
        v = np.ascontiguousarray(np.moveaxis(work, axis, 0))
        shape = v.shape
        flat = v.reshape(m + 1, -1)
        for k in range(1, m + 1):
            for i in range(m, k - 1, -1):
                flat[i] = (flat[i] - flat[i - 1]) / k
        out = np.empty_like(flat)
        for i in range(m + 1):
            acc = None
            for k in range(i, m + 1):
                b = basis[i][k]
                if not b:
                    continue
                t = flat[k] * GaussianRational(b)
                acc = t if acc is None else acc + t
            out[i] = acc if acc is not None else flat[0] * GaussianRational(0)
        work = np.moveaxis(out.reshape(shape), 0, axis)
    terms = {}
    for expo in np.ndindex(*work.shape):
        c = work[expo]
        if not c.is_zero():
            terms[expo] = c
    return terms


class _AffineFamily:
    """Matrix family base - sum_j lambda_j * parts[j], with fast exact and
    double-double float determinant evaluation."""

    def __init__(self, base: np.ndarray, parts: list, kind: str):
        self.kind = kind
        self.size = base.shape[0]
        self.d = len(parts)
        if kind == EXACT:
            den = 1
            for mat in (base, *parts):
                for e in mat.reshape(-1):
                    den = math.lcm(den, e.re.denominator, e.im.denominator)
            self.den = den
            self.base_re = [int(e.re * den) for e in base.reshape(-1)]
            self.base_im = [int(e.im * den) for e in base.reshape(-1)]
            self.part_re = [
                [int(e.re * den) for e in p.reshape(-1)] for p in parts
            ]
            self.part_im = [
                [int(e.im * den) for e in p.reshape(-1)] for p in parts
            ]
        else:
            self.base_c = np.ascontiguousarray(base)
            self.parts_c = [np.ascontiguousarray(p) for p in parts]

    # -- exact -------------------------------------------------------------

    def det_scaled_at(self, node) -> GaussianRational:
        """det of the scaled-integer matrix at integer node (no 1/den^size)."""
        n = self.size
        re = list(self.base_re)
        im = list(self.base_im)
        for j, lam in enumerate(node):
            if not lam:
                continue
            pr = self.part_re[j]
            pi = self.part_im[j]
            for i in range(n * n):
                re[i] -= lam * pr[i]
                im[i] -= lam * pi[i]
        rows_re = [re[i * n : (i + 1) * n] for i in range(n)]
        rows_im = [im[i * n : (i + 1) * n] for i in range(n)]
        dr, di = _gaussian_int_bareiss(rows_re, rows_im, n)
        return GaussianRational(dr, di)

    def exact_det_at(self, node) -> GaussianRational:
        scale = Fraction(1, self.den**self.size)
        v = self.det_scaled_at(node)
        return GaussianRational(v.re * scale, v.im * scale)

    # -- float ---------------------------------------------------------------

    def _assemble_cdd(self, lam_chunk: np.ndarray):
        c = lam_chunk.shape[0]
        base = np.broadcast_to(self.base_c, (c, self.size, self.size))
        acc = dd.cdd_from_complex(base)
        for j, part in enumerate(self.parts_c):
            term = (-lam_chunk[:, j])[:, None, None] * part[None, :, :]
            acc = dd.cdd_add(acc, dd.cdd_from_complex(term))
        return acc

    def float_det_chunk(self, lam_chunk: np.ndarray):
        return dd.batched_cdd_det(self._assemble_cdd(lam_chunk))

    def float_det_single(self, lam) -> complex:
        m = self.base_c.copy()
        for j, part in enumerate(self.parts_c):
            m = m - complex(lam[j]) * part
        return complex(np.linalg.det(m))


def _interp_terms_cdd(det_cdd, d: int, m: int, nodes: np.ndarray) -> dict:
    """Nested Newton interpolation of a double-double value grid."""
    shape = (m + 1,) * d
    comps = [c.reshape(shape).copy() for c in det_cdd]
    # half-integer nodes are exact binary fractions, so the change-of-basis
    # matrix is computed exactly and rounds to float64 without error
    basis_fr = _newton_basis_coeffs([Fraction(float(x)) for x in nodes])
    basis = np.array([[float(b) for b in row] for row in basis_fr])
    for axis in range(d):
        comps = [np.ascontiguousarray(np.moveaxis(c, axis, 0)) for c in comps]
        vshape = comps[0].shape
        flat = [c.reshape(m + 1, -1) for c in comps]
        for k in range(1, m + 1):
            for i in range(m, k - 1, -1):
                cur = dd.cdd_getitem(tuple(flat), i)
                prev = dd.cdd_getitem(tuple(flat), i - 1)
                diff = dd.cdd_sub(cur, prev)
                step = float(nodes[i] - nodes[i - k])
                rh, rl = dd.dd_div_d(diff[0], diff[1], step)
                ih, il = dd.dd_div_d(diff[2], diff[3], step)
                dd.cdd_setitem(tuple(flat), i, (rh, rl, ih, il))
        out = [np.zeros_like(f) for f in flat]
        for i in range(m + 1):
            acc = dd.cdd_zeros(flat[0].shape[1])
            for k in range(i, m + 1):
                b = basis[i][k]
                if b == 0.0:
                    continue
                acc = dd.cdd_add(acc, dd.cdd_mul_d(dd.cdd_getitem(tuple(flat), k), b))
            dd.cdd_setitem(tuple(out), i, acc)
        comps = [np.moveaxis(o.reshape(vshape), 0, axis) for o in out]
    coeffs = dd.cdd_to_complex(tuple(comps))
    terms = {}
    for expo in np.ndindex(*coeffs.shape):
        c = complex(coeffs[expo])
        if c != 0:
            terms[expo] = c
    return terms


def _interpolate_affine(family: _AffineFamily, threads=None) -> MultiPoly:
    m = family.size
    d = family.d
    if family.kind == EXACT:
        values = np.empty((m + 1,) * d, dtype=object)
        nodes = list(itertools.product(range(m + 1), repeat=d))

        def run(chunk):
            return [family.det_scaled_at(node) for node in chunk]

        chunks = [nodes[i : i + 512] for i in range(0, len(nodes), 512)]
        results = ordered_chunk_map(run, chunks, threads)
        flatv = values.reshape(-1)
        pos = 0
        for block in results:
            for v in block:
                flatv[pos] = v
                pos += 1
        terms = _interp_terms_exact(values, m)
        scale = Fraction(1, family.den**family.size)
        terms = {
            e: GaussianRational(c.re * scale, c.im * scale) for e, c in terms.items()
        }
        poly = MultiPoly(d, terms, EXACT)
    else:
        nodes = _float_nodes(m)
        grids = np.array(list(itertools.product(nodes, repeat=d)))
        chunks = [grids[i : i + _CHUNK] for i in range(0, len(grids), _CHUNK)]
        dets = ordered_chunk_map(family.float_det_chunk, chunks, threads)
        det_cdd = tuple(np.concatenate([blk[i] for blk in dets]) for i in range(4))
        terms = _interp_terms_cdd(det_cdd, d, m, nodes)
        poly = MultiPoly(d, terms, FLOAT).pruned()
    _validate_interpolation(family, poly)
    return poly


def _validate_interpolation(family: _AffineFamily, poly: MultiPoly) -> None:
    """Held-out consistency: the polynomial must reproduce determinants at
    points that were not interpolation nodes."""
    d = family.d
    if family.kind == EXACT:
        probe = tuple(family.size + 1 + j for j in range(d))
        want = family.exact_det_at(probe)
        got = poly.evaluate(probe)
        if got != want:
            raise InterpolationError("exact interpolation failed held-out check")
        return
    rng = np.random.default_rng(20240917)
    half_width = family.size / 4.0
    for _ in range(4):
        pt = rng.uniform(-0.8 * half_width, 0.8 * half_width, size=d)
        want = family.float_det_single(pt)
        got = poly.evaluate(pt)
        scale = max(1.0, abs(want), poly.evaluate_abs(pt))
        if abs(got - want) > HELD_OUT_RTOL * scale:
            raise InterpolationError(
                f"interpolated polynomial residual {abs(got - want):.3e} "
                f"exceeds {HELD_OUT_RTOL:.1e} * {scale:.3e} at held-out point"
            )


def _gamma_parts(tuple_: HermitianTuple, blocks) -> list:
    n = tuple_.n
    eye = exact_eye(n) if tuple_.kind == EXACT else np.eye(n, dtype=complex)
    if tuple_.kind == FLOAT:
        blocks = [to_float(b) for b in blocks]
    return [kron(eye, b) for b in blocks]


def char_poly(
    tuple_: HermitianTuple, rep: GammaRep | None = None, *, threads=None
) -> MultiPoly:
    """det(L_lambda) as a polynomial in lambda_1..lambda_d.

    Real coefficients (validated); exact tuples give exact coefficients.
    """
    if rep is None:
        rep = rep_for(tuple_.d)
    loc0 = build(tuple_, rep)
    parts = _gamma_parts(tuple_, list(rep.gammas))
    family = _AffineFamily(loc0.matrix, parts, tuple_.kind)
    poly = _interpolate_affine(family, threads)
    return _force_real_coeffs(poly)


def reduced_char_poly(tuple_: HermitianTuple, *, threads=None) -> MultiPoly:
    """det of the half-size localizer for d = 4 (complex coefficients)."""
    if tuple_.d != 4:
        raise ContractError("the reduced characteristic polynomial needs d = 4")
    red0 = build_reduced(tuple_)
    blocks = list(standard_rep(4).off_diagonal_blocks)
    parts = _gamma_parts(tuple_, blocks)
    family = _AffineFamily(red0.matrix, parts, tuple_.kind)
    return _interpolate_affine(family, threads)


def _force_real_coeffs(poly: MultiPoly) -> MultiPoly:
    if poly.kind == EXACT:
        for c in poly.terms.values():
            if c.im:
                raise InterpolationError(
                    "exact characteristic polynomial has a nonzero imaginary part"
                )
        return poly
    scale = poly.max_abs_coeff() or 1.0
    worst = max((abs(c.imag) for c in poly.terms.values()), default=0.0)
    if worst > REAL_COEFF_RTOL * scale:
        raise InterpolationError(
            f"characteristic polynomial imaginary part {worst:.3e} too large"
        )
    return poly.map_coefficients(lambda c: complex(c.real))


def laplace_det_poly(tuple_: HermitianTuple) -> MultiPoly:
    """det(sum_j (X_j - lambda_j)^2) as a polynomial (degree 2n per variable)."""
    d = tuple_.d
    m = 2 * tuple_.n
    if tuple_.kind == EXACT:
        values = np.empty((m + 1,) * d, dtype=object)
        for node in itertools.product(range(m + 1), repeat=d):
            values[node] = exact_determinant(laplace(tuple_, node))
        return MultiPoly(d, _interp_terms_exact(values, m), EXACT)
    nodes = _float_nodes(m)
    grid = list(itertools.product(nodes, repeat=d))
    dets = np.array([np.linalg.det(laplace(tuple_, pt)) for pt in grid])
    det_cdd = dd.cdd_from_complex(dets)
    terms = _interp_terms_cdd(det_cdd, d, m, nodes)
    return MultiPoly(d, terms, FLOAT).pruned()
