from fractions import Fraction

import numpy as np
import pytest

from cliffordspec.errors import ContractError, SingularAtTolerance, SymmetryError
from cliffordspec.gallery import (
    direct_sum_sphere,
    even_odd,
    lemniscate,
    pauli,
    self_dual_path,
    torus_quadruple,
)
from cliffordspec.invariants import (
    SymmetryProfile,
    archetypal,
    archetypal_sign,
    dual,
    graded_index,
    index,
    index_along_path,
    validate_symmetry,
)
from cliffordspec.linalg import operator_norm
from cliffordspec.localizer import build
from cliffordspec.matrices import float_matrix, to_float


def test_index_values():
    assert index(pauli(), [0, 0, 0]).value == 1
    assert index(lemniscate(), [0, 0.7, 0]).value == 1
    assert index(lemniscate(), [0, -0.7, 0]).value == 1
    assert index(pauli(), [0, 0, 5]).value == 0
    assert index(direct_sum_sphere(0), [0, 0, 0]).value == 0


def test_index_raises_on_spectrum():
    with pytest.raises(SingularAtTolerance):
        index(pauli(), [1.0, 0.0, 0.0])


def test_index_needs_triples():
    with pytest.raises(ContractError):
        index(even_odd(0), [0, 0, 0, 0])


def test_index_vanishes_beyond_norm():
    t = pauli()
    norm0 = operator_norm(build(t.as_float()).matrix)
    for direction in np.array([[1, 0, 0], [0, 1, 0], [0.6, -0.8, 0.4]]):
        lam = 2 * norm0 * direction / np.linalg.norm(direction)
        assert index(t, lam).value == 0


def test_index_constant_along_path_inside_lobe():
    reports = index_along_path(
        lemniscate(), [(0, 0.5, 0), (0, 0.9, 0), (0.05, 0.7, 0.05)], samples_per_segment=16
    )
    assert {r.value for r in reports} == {1}


def test_dual_examples():
    eye = float_matrix(np.eye(4))
    assert np.allclose(dual(eye), eye)
    m = float_matrix([[0, 1], [0, 0]])
    assert np.allclose(dual(m), [[0, -1], [0, 0]])
    for m in direct_sum_sphere(0).matrices:
        assert np.allclose(to_float(dual(m)), to_float(m))
    with pytest.raises(ContractError):
        dual(float_matrix(np.eye(3)))


def test_validate_symmetry_clock_shift():
    prof = SymmetryProfile(
        (
            frozenset({"symmetric"}),
            frozenset({"anti-symmetric"}),
            frozenset({"symmetric"}),
            frozenset({"symmetric"}),
        )
    )
    assert validate_symmetry(torus_quadruple(5), prof).ok


def test_validate_symmetry_self_dual_examples():
    prof = SymmetryProfile((frozenset({"self-dual"}),) * 3)
    assert validate_symmetry(direct_sum_sphere(0), prof).ok
    for s in (0, Fraction(1, 4), Fraction(1, 2)):
        assert validate_symmetry(self_dual_path(s), prof).ok
    # the 2x2 triple is not self-dual: flags fail (dual flips sigma_x)
    report = validate_symmetry(pauli(), prof)
    assert not report.ok


def test_validate_symmetry_grading():
    from cliffordspec.gallery import even_odd_grading

    prof = SymmetryProfile(
        (
            frozenset({"even"}),
            frozenset({"even"}),
            frozenset({"even"}),
            frozenset({"odd"}),
        ),
        grading=even_odd_grading(4),
    )
    assert validate_symmetry(even_odd(0), prof).ok
    assert validate_symmetry(even_odd(Fraction(3, 2)), prof).ok


def test_archetypal_values():
    t = self_dual_path(0)
    a0 = archetypal(t, [0, 0, 0])
    assert a0 * a0 == 9  # |char(0)| = 9
    assert archetypal(t.as_float(), [0.0, 0.0, 0.0]) == pytest.approx(-3.0)


def test_archetypal_square_matches_det(rng):
    for s in (0, Fraction(1, 6), Fraction(1, 3), Fraction(1, 2)):
        t = self_dual_path(s).as_float()
        for _ in range(6):
            lam = rng.uniform(-2, 2, 3)
            a = archetypal(t, lam)
            d = np.linalg.det(build(t, lam=lam).matrix).real
            assert abs(a * a - d) <= 1e-9 * max(1.0, abs(d))


def test_archetypal_sign_far_field():
    t = self_dual_path(0)
    norm0 = operator_norm(build(t.as_float()).matrix)
    r = archetypal_sign(t, [10 * norm0, 0, 0])
    assert r.value == 1
    inside = archetypal_sign(t, [0, 0, 0])
    assert inside.value == -1


def test_archetypal_requires_self_dual():
    with pytest.raises(SymmetryError):
        archetypal(pauli().as_float(), [0.0, 0.0, 0.0])


def test_graded_index_values():
    assert graded_index(even_odd(0), [0, 0, 0, 0]).value == -1
    assert graded_index(even_odd(0), [5, 0, 0, 0]).value == 0
    assert graded_index(even_odd(Fraction(3, 2)), [0, 0, 0, 0]).value == -1


def test_graded_index_preconditions():
    with pytest.raises(SymmetryError):
        graded_index(even_odd(0), [0, 0, 0, 0.3])
    with pytest.raises(SymmetryError):
        # torus quadruple does not satisfy the even/odd grading
        graded_index(torus_quadruple(4), [0, 0, 0, 0])
    with pytest.raises(ContractError):
        graded_index(pauli(), [0, 0, 0])


def test_index_report_fields():
    r = index(pauli(), [0, 0, 0])
    assert r.kind == "half-signature"
    assert r.gap == pytest.approx(1.0)
    assert r.lam == (0.0, 0.0, 0.0)


def test_two_holed_torus_probe_index():
    from cliffordspec.gallery import named_example, sykora_two_torus

    ex = named_example("sykora_two_torus", r=1)
    probe = ex.expected["probe_point"]
    r = index(sykora_two_torus(1), list(probe))
    assert r.value == ex.expected["probe_index"] == -1


def test_archetypal_exact_float_agreement(rng):
    t = self_dual_path(Fraction(1, 4))
    for _ in range(5):
        num = rng.integers(-4, 5, size=3)
        lam = [Fraction(int(v), 3) for v in num]
        exact_val = archetypal(t, lam)
        float_val = archetypal(t.as_float(), [float(v) for v in lam])
        assert abs(exact_val.to_complex().real - float_val) <= 1e-9 * max(
            1.0, abs(float_val)
        )
