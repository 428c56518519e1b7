"""Constructors for every worked matrix family, with expected facts.

All families with Gaussian-rational entries are exact-kind; the clock/shift
torus families involve roots of unity and are float-kind (except n = 4,
whose clock eigenvalues are Gaussian integers, available exactly for
cross-validation).
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .errors import ContractError
from .matrices import HermitianTuple, exact_matrix, float_matrix
from .multipoly import MultiPoly, variables
from .scalars import GaussianRational

F = Fraction


def _gi(re=0, im=0) -> GaussianRational:
    return GaussianRational(F(re), F(im))


def pauli() -> HermitianTuple:
    """The three Pauli spin matrices; joint spectrum is the unit sphere."""
    return scaled_pauli(1, 1, 1)


def scaled_pauli(a, b, c) -> HermitianTuple:
    """(a sigma_x, b sigma_y, c sigma_z) with rational scales."""
    a, b, c = F(a), F(b), F(c)
    return HermitianTuple(
        [
            exact_matrix([[0, a], [a, 0]]),
            exact_matrix([[0, _gi(0, -b)], [_gi(0, b), 0]]),
            exact_matrix([[c, 0], [0, -c]]),
        ]
    )


def lemniscate() -> HermitianTuple:
    """Half-scaled Pauli triple whose spectrum is a rotated lemniscate."""
    return scaled_pauli(F(1, 2), 1, F(1, 2))


def fuzzy_sphere_5(t=1) -> HermitianTuple:
    """5x5 fuzzy-sphere style triple (tA, B, C) along the scaling path."""
    t = F(t)
    diag = [2, 1, 0, -1, -2]
    a = exact_matrix(
        [[t * diag[i] if i == j else 0 for j in range(5)] for i in range(5)]
    )
    q = F(1, 4)
    b = exact_matrix(
        [[q if abs(i - j) == 1 else 0 for j in range(5)] for i in range(5)]
    )
    c = exact_matrix(
        [
            [
                _gi(0, -q) if j == i + 1 else (_gi(0, q) if j == i - 1 else 0)
                for j in range(5)
            ]
            for i in range(5)
        ]
    )
    return HermitianTuple([a, b, c])


def clock_shift(n: int, exact: bool = False):
    """The cyclic shift U (ones on the subdiagonal and top-right corner)
    and the clock V = diag(e^{2 pi i k / n}), k = 1..n."""
    if n < 2:
        raise ContractError("clock/shift matrices need n >= 2")
    if exact:
        if n not in (2, 4):
            raise ContractError("exact clock matrices exist only for n in {2, 4}")
        u = exact_matrix(
            [[1 if (i - j) % n == 1 else 0 for j in range(n)] for i in range(n)]
        )
        roots4 = [_gi(0, 1), _gi(-1), _gi(0, -1), _gi(1)]
        roots = [_gi(-1), _gi(1)] if n == 2 else roots4
        v = exact_matrix(
            [[roots[i] if i == j else 0 for j in range(n)] for i in range(n)]
        )
        return u, v
    u = float_matrix(
        [[1.0 if (i - j) % n == 1 else 0.0 for j in range(n)] for i in range(n)]
    )
    v = np.diag([cmath.exp(2j * cmath.pi * (k + 1) / n) for k in range(n)])
    return u, v


def torus_quadruple(n: int, exact: bool = False) -> HermitianTuple:
    """Hermitian and anti-Hermitian parts of the shift and clock unitaries."""
    u, v = clock_shift(n, exact=exact)
    if exact:
        from .matrices import dagger

        half = _gi(F(1, 2))
        ihalf = _gi(0, F(1, 2))
        ud = dagger(u)
        vd = dagger(v)
        return HermitianTuple(
            [
                half * ud + half * u,
                ihalf * ud - ihalf * u,
                half * vd + half * v,
                ihalf * vd - ihalf * v,
            ]
        )
    ud, vd = u.conj().T, v.conj().T
    return HermitianTuple(
        [
            0.5 * (ud + u),
            0.5j * (ud - u),
            0.5 * (vd + v),
            0.5j * (vd - v),
        ]
    )


def torus_triple(n: int = 5, big_radius: float = 0.9, small_radius: float = 0.5) -> HermitianTuple:
    """Three matrices tracing an embedded torus, from the clock and shift."""
    u, v = clock_shift(n)
    ud, vd = u.conj().T, v.conj().T
    w = big_radius * np.eye(n) + (small_radius / 2.0) * (ud + u)
    a = 0.5 * (w @ vd) + 0.5 * (v @ w)
    b = 0.5j * (w @ vd) - 0.5j * (v @ w)
    c = 0.5j * small_radius * (ud - u)
    return HermitianTuple([a, b, c])


def sykora_two_torus(r=1) -> HermitianTuple:
    """6x6 triple whose spectrum is a two-holed torus at r = 1."""
    r = F(r)
    h = F(1, 2)
    x = exact_matrix(
        [
            [F(4, 5), h, h, 0, 0, 0],
            [h, 0, 0, h, 0, 0],
            [h, 0, F(8, 5), r / 2, h, 0],
            [0, h, r / 2, F(4, 5), 0, h],
            [0, 0, h, 0, F(12, 5), h],
            [0, 0, 0, h, h, F(8, 5)],
        ]
    )
    p = _gi(0, F(1, 2))
    q = _gi(0, r / 2)
    y = exact_matrix(
        [
            [0, -p, -p, 0, 0, 0],
            [p, 0, 0, -p, 0, 0],
            [p, 0, 0, -q, -p, 0],
            [0, p, q, 0, 0, -p],
            [0, 0, p, 0, 0, -p],
            [0, 0, 0, p, p, 0],
        ]
    )
    z_diag = [0, F(13, 10), F(13, 10), F(13, 5), F(13, 5), F(39, 10)]
    z = exact_matrix(
        [[z_diag[i] if i == j else 0 for j in range(6)] for i in range(6)]
    )
    return HermitianTuple([x, y, z])


def direct_sum_sphere(r=0) -> HermitianTuple:
    """Two oppositely oriented Pauli triples in direct sum; the determinant
    is a perfect square, so sign-based plotting returns nothing."""
    r = F(r)
    x = exact_matrix(
        [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, r, 1], [0, 0, 1, r]]
    )
    i = _gi(0, 1)
    y = exact_matrix(
        [[0, -i, 0, 0], [i, 0, 0, 0], [0, 0, 0, i], [0, 0, -i, 0]]
    )
    z = exact_matrix(
        [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]
    )
    return HermitianTuple([x, y, z])


def self_dual_path(s=0) -> HermitianTuple:
    """Self-dual Hermitian path starting at the direct-sum triple, s in [0, 1/2]."""
    s = F(s)
    if s < 0 or s > F(1, 2):
        raise ContractError("path parameter must satisfy 0 <= s <= 1/2")
    a = 1 - 2 * s
    es = _gi(0, s)  # Hermiticity and self-duality force the corner entries
    x = exact_matrix(
        [
            [0, a, 0, es],
            [a, 0, -es, 0],
            [0, es, 0, a],
            [-es, 0, a, 0],
        ]
    )
    i = _gi(0, 1)
    y = exact_matrix(
        [[0, -i, 0, 0], [i, 0, 0, 0], [0, 0, 0, i], [0, 0, -i, 0]]
    )
    z = exact_matrix(
        [
            [1 - s, 0, 0, 0],
            [0, s - 1, 0, 0],
            [0, 0, 1 - s, 0],
            [0, 0, 0, s - 1],
        ]
    )
    return HermitianTuple([x, y, z])


def gamma_tuple(s1=1, s2=1, s3=1, s4=1) -> HermitianTuple:
    """The four standard gamma matrices themselves, optionally rescaled."""
    from .cliffordrep import standard_rep

    scales = [_gi(F(s)) for s in (s1, s2, s3, s4)]
    gammas = standard_rep(4).gammas
    return HermitianTuple([s * g for s, g in zip(scales, gammas)])


def even_odd(deform=0) -> HermitianTuple:
    """Four matrices graded even/even/even/odd by diag(1, 1, -1, -1);
    deform = 0 is the undeformed three-sphere example."""
    t = F(deform)
    i = _gi(0, 1)
    x = exact_matrix(
        [[t, 2, 0, 0], [2, 0, 0, 0], [0, 0, 0, -2], [0, 0, -2, t]]
    )
    y = exact_matrix(
        [[0, -i, 0, 0], [i, 0, 0, 0], [0, 0, 0, i], [0, 0, -i, 0]]
    )
    z = exact_matrix(
        [[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, -1, 0], [0, 0, 0, 1]]
    )
    h = exact_matrix(
        [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]]
    )
    return HermitianTuple([x, y, z, h])


def even_odd_grading(n: int = 4) -> np.ndarray:
    """diag(1, .., 1, -1, .., -1): the grading used by the even/odd family."""
    return exact_matrix(
        [[(1 if i < n // 2 else -1) if i == j else 0 for j in range(n)] for i in range(n)]
    )


# ---------------------------------------------------------------------------
# reference closed forms (expanded on demand, exact)


def sphere_char_reference() -> MultiPoly:
    x, y, z = variables("x y z")
    s = x**2 + y**2 + z**2
    return (s - 1) * (s + 3)


def lemniscate_char_reference() -> MultiPoly:
    x, y, z = variables("x y z")
    s = x**2 + y**2 + z**2
    return s**2 + 2 * z**2 + 2 * x**2 - y**2


def direct_sum_char_reference() -> MultiPoly:
    x, y, z = variables("x y z")
    s = x**2 + y**2 + z**2
    return (s - 1) ** 2 * (s + 3) ** 2


def gamma_reduced_reference() -> MultiPoly:
    w, x, y, z = variables("w x y z")
    s = w**2 + x**2 + y**2 + z**2
    return s**3 * (s + 8)


def scaled_gamma_reduced_reference() -> MultiPoly:
    w, x, y, z = variables("w x y z")
    r2 = x**2 + y**2 + z**2
    left = 9 + 6 * r2 + r2**2 - 6 * w**2 + 2 * r2 * w**2 + w**4
    right = -15 + 14 * r2 + r2**2 + 2 * w**2 + 2 * r2 * w**2 + w**4
    return left * right


def even_odd_reduced_reference() -> MultiPoly:
    w, x, y, z = variables("w x y z")
    r2 = x**2 + y**2 + z**2
    left = r2**2 + 2 * r2 * w**2 + 6 * r2 + w**4 - 6 * w**2 + 9
    right = r2**2 + 2 * r2 * w**2 + 14 * r2 + w**4 + 2 * w**2 - 15
    return left * right


def torus_quadruple_imag_reference(n: int) -> MultiPoly:
    """Closed forms for the imaginary part of the reduced characteristic
    polynomial of the clock/shift quadruple (n = 3 and n = 4)."""
    w, x, y, z = variables("w x y z", kind="float")
    locus = w**2 + x**2 - y**2 - z**2
    if n == 3:
        return locus * (1.5 * float(np.sqrt(3.0)))
    if n == 4:
        return locus * (4 * (w**2 + x**2 + y**2 + z**2) + 8)
    raise ContractError("closed-form imaginary parts recorded for n in {3, 4}")


TORUS_POLAR_CONSTANTS = {3: -1.0, 4: -4.0, 6: -27.0}


@dataclass(frozen=True, eq=False)
class NamedExample:
    name: str
    params: dict
    tuple: HermitianTuple
    expected: dict = field(default_factory=dict)


def _build_pauli(**kw):
    return NamedExample(
        "pauli",
        kw,
        pauli(),
        {"char_poly": sphere_char_reference, "index_at_origin": 1},
    )


def _build_lemniscate(**kw):
    return NamedExample(
        "lemniscate",
        kw,
        lemniscate(),
        {"char_poly": lemniscate_char_reference, "index_inside_lobe": 1},
    )


def _build_scaled_pauli(a=1, b=1, c=1):
    return NamedExample("scaled_pauli", {"a": a, "b": b, "c": c}, scaled_pauli(a, b, c))


def _build_fuzzy(t=1):
    return NamedExample("fuzzy_sphere_5", {"t": t}, fuzzy_sphere_5(t))


def _build_torus_triple(n=5, R=0.9, r=0.5):
    return NamedExample(
        "torus_triple", {"n": n, "R": R, "r": r}, torus_triple(int(n), float(R), float(r))
    )


def _build_torus_quadruple(n=4):
    return NamedExample("torus_quadruple", {"n": n}, torus_quadruple(int(n)))


def _build_sykora(r=1):
    return NamedExample(
        "sykora_two_torus",
        {"r": r},
        sykora_two_torus(r),
        # interior probe of the two-holed torus (the surface spans
        # z in [0, 3.9]); a nonzero half-signature certifies an enclosing
        # surface rather than a point cloud
        {"probe_point": (0.25, 0.0, 2.0), "probe_index": -1},
    )


def _build_bad_plot(r=0):
    return NamedExample(
        "bad_plot",
        {"r": r},
        direct_sum_sphere(r),
        {"char_poly": direct_sum_char_reference, "index_at_origin": 0},
    )


def _build_self_dual(s=0):
    return NamedExample("self_dual_path", {"s": s}, self_dual_path(s))


def _build_gamma4(s1=1, s2=1, s3=1, s4=1):
    expected = {}
    if (s1, s2, s3, s4) == (1, 1, 1, 1):
        expected["reduced_char_poly"] = gamma_reduced_reference
    if (s1, s2, s3, s4) == (2, 1, 1, 1):
        expected["reduced_char_poly"] = scaled_gamma_reduced_reference
    return NamedExample(
        "gamma4", {"s1": s1, "s2": s2, "s3": s3, "s4": s4}, gamma_tuple(s1, s2, s3, s4), expected
    )


def _build_even_odd(deform=0):
    expected = {"graded_index_at_origin": -1}
    if F(deform) == 0:
        expected["reduced_char_poly"] = even_odd_reduced_reference
    return NamedExample("even_odd", {"deform": deform}, even_odd(deform), expected)


EXAMPLE_BUILDERS = {
    "pauli": _build_pauli,
    "lemniscate": _build_lemniscate,
    "scaled_pauli": _build_scaled_pauli,
    "fuzzy_sphere_5": _build_fuzzy,
    "torus_triple": _build_torus_triple,
    "torus_quadruple": _build_torus_quadruple,
    "sykora_two_torus": _build_sykora,
    "bad_plot": _build_bad_plot,
    "self_dual_path": _build_self_dual,
    "gamma4": _build_gamma4,
    "even_odd": _build_even_odd,
}


def named_example(name: str, **params) -> NamedExample:
    if name not in EXAMPLE_BUILDERS:
        raise ContractError(f"unknown example {name!r}; see list_example_names()")
    return EXAMPLE_BUILDERS[name](**params)


def list_example_names() -> list:
    return sorted(EXAMPLE_BUILDERS)
