from fractions import Fraction

import numpy as np
import pytest

from cliffordspec.errors import ContractError, KindMismatchError
from cliffordspec.matrices import (
    HermitianTuple,
    commutator,
    dagger,
    exact_matrix,
    float_matrix,
    is_hermitian,
    kron,
    to_float,
)
from cliffordspec.scalars import GaussianRational


def test_kron_blocks_indexed_by_second_factor():
    a = float_matrix([[1, 2], [3, 4]])
    b = float_matrix([[0, 5], [6, 7]])
    k = kron(a, b)
    # block (0, 1) must be 5 * a
    assert np.allclose(k[:2, 2:], 5 * a)
    assert np.allclose(k[2:, :2], 6 * a)
    assert np.allclose(k[:2, :2], 0)
    # opposite of numpy's convention
    assert np.allclose(k, np.kron(b, a))


def test_kron_exact_matches_float():
    a = exact_matrix([[1, Fraction(1, 2)], [Fraction(1, 2), 0]])
    b = exact_matrix([[(0, 1), 0], [0, (0, -1)]])
    k = kron(a, b)
    assert np.allclose(to_float(k), kron(to_float(a), to_float(b)))


def test_commutator_pauli():
    sx = float_matrix([[0, 1], [1, 0]])
    sy = float_matrix([[0, -1j], [1j, 0]])
    sz = float_matrix([[1, 0], [0, -1]])
    assert np.allclose(commutator(sx, sy), 2j * sz)
    assert np.allclose(commutator(sx, sx), 0)


def test_commutator_shape_check():
    with pytest.raises(ContractError):
        commutator(np.eye(2, dtype=complex), np.eye(3, dtype=complex))


def test_hermitian_checks():
    assert is_hermitian(float_matrix([[1, 1j], [-1j, 2]]))
    assert not is_hermitian(float_matrix([[1, 1j], [1j, 2]]))
    assert is_hermitian(exact_matrix([[1, (0, 1)], [(0, -1), 2]]))
    assert not is_hermitian(exact_matrix([[1, (0, 1)], [(0, 1), 2]]))


def test_tuple_validation():
    with pytest.raises(ContractError):
        HermitianTuple([])
    with pytest.raises(ContractError):
        HermitianTuple([float_matrix([[0, 1], [0, 0]])])  # not Hermitian
    with pytest.raises(KindMismatchError):
        HermitianTuple([float_matrix([[1]]), exact_matrix([[1]])])
    t = HermitianTuple([exact_matrix([[0, 1], [1, 0]])])
    assert t.d == 1 and t.n == 2 and t.kind == "exact"


def test_shift_and_direct_sum():
    t = HermitianTuple([exact_matrix([[2, 0], [0, 3]])])
    shifted = t.shifted([Fraction(1, 2)])
    assert shifted.matrices[0][0, 0] == GaussianRational(Fraction(3, 2))
    both = t.direct_sum(t)
    assert both.n == 4
    assert both.matrices[0][2, 2] == GaussianRational(2)


def test_dagger_exact():
    m = exact_matrix([[(1, 2), (3, 4)], [(5, 6), (7, 8)]])
    d = dagger(m)
    assert d[0, 1] == GaussianRational(5, -6)
