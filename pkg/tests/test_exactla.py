import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from curvesplit.exactla import MODULUS, MatFp, check_modulus, is_prime

P = MODULUS


def test_default_modulus_is_prime():
    assert is_prime(P)
    assert check_modulus(P) == P


def test_bad_moduli_rejected():
    with pytest.raises(ValueError):
        check_modulus(91)
    with pytest.raises(ValueError):
        check_modulus(2**40)


def test_rank_identity():
    assert MatFp.identity(3, P).rank() == 3


def test_rank_zero():
    assert MatFp.zeros(4, 7, P).rank() == 0


def test_rank_proportional_rows():
    # hand row-reduce: second row is twice the first
    assert MatFp([[1, 2], [2, 4]], 65537).rank() == 1


def test_kernel_identity_empty():
    assert MatFp.identity(3, P).kernel_basis() == []


def test_kernel_zero_matrix():
    basis = MatFp.zeros(2, 3, P).kernel_basis()
    assert len(basis) == 3


def test_kernel_vectors_annihilated():
    m = MatFp([[1, 1, 0]], P)
    basis = m.kernel_basis()
    assert len(basis) == 2
    for v in basis:
        assert not m.matvec(v).any()


def test_kernel_reduced_normal_form():
    m = MatFp([[1, 2, 3], [0, 0, 1]], P)
    basis = m.kernel_basis()
    assert len(basis) == 1
    v = basis[0]
    # free column is 1; pivot coordinates determined by the RREF
    assert v[1] == 1 and v[0] == P - 2 and v[2] == 0


def test_inverse_roundtrip():
    m = MatFp([[1, 2, 0], [0, 1, 5], [7, 0, 1]], P)
    inv = m.inverse()
    prod = np.zeros((3, 3), dtype=np.int64)
    for i in range(3):
        prod[:, i] = m.matvec(inv.entries[:, i])
    assert np.array_equal(prod, np.eye(3, dtype=np.int64))


def test_singular_inverse_raises():
    with pytest.raises(ValueError):
        MatFp([[1, 2], [2, 4]], P).inverse()


@st.composite
def small_matrices(draw):
    rows = draw(st.integers(min_value=1, max_value=6))
    cols = draw(st.integers(min_value=1, max_value=6))
    entries = draw(
        st.lists(
            st.lists(st.integers(min_value=0, max_value=P - 1), min_size=cols, max_size=cols),
            min_size=rows,
            max_size=rows,
        )
    )
    return MatFp(entries, P)


@settings(max_examples=60, deadline=None)
@given(m=small_matrices())
def test_rank_plus_nullity(m):
    assert m.rank() + len(m.kernel_basis()) == m.cols


@settings(max_examples=60, deadline=None)
@given(m=small_matrices(), data=st.data())
def test_rank_invariant_under_row_ops(m, data):
    perm = data.draw(st.permutations(range(m.rows)))
    scale = data.draw(st.integers(min_value=1, max_value=P - 1))
    row = data.draw(st.integers(min_value=0, max_value=m.rows - 1))
    arr = m.entries[list(perm)].copy()
    arr[row] = arr[row] * scale % P
    assert MatFp(arr, P).rank() == m.rank()


@settings(max_examples=40, deadline=None)
@given(m=small_matrices())
def test_kernel_vectors_all_annihilated(m):
    for v in m.kernel_basis():
        assert not m.matvec(v).any()
