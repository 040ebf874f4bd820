"""Graded matrices: block parity layout, supertranspose, grade adjoint,
supertrace, graded scalar action, graded Kronecker product, nilpotent exponential."""

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from superqubit.grassmann import (
    DimensionMismatch,
    ParityError,
    Supernumber,
    pair_product,
)
from superqubit.supermatrix import (
    NotNilpotent,
    Supermatrix,
    exp_nilpotent,
    grade_adjoint,
    graded_kron,
    scalar_left,
    scalar_right,
    supertrace,
    supertranspose,
)

from conftest import (
    matrix_residual,
    max_abs_coeff,
    rand_supermatrix,
    rand_supernumber,
    supermatrices,
)

ORDER = 4
P2 = (0, 1)
P3 = (0, 0, 1)


def _one():
    return Supernumber.one(ORDER)


def _eta(pair=1):
    return Supernumber.eta(pair, ORDER)


def _eta_hash(pair=1):
    return Supernumber.eta_hash(pair, ORDER)


# -- construction and validation ---------------------------------------------------


def test_entry_parity_is_enforced():
    # an even matrix over (0,1) parities must hold odd entries off the diagonal blocks
    with pytest.raises(ParityError):
        Supermatrix([[_eta(), _one()], [_one(), _one()]], P2, P2, 0)
    # odd matrix flips the rule
    Supermatrix([[_eta(), _one()], [_one(), _eta_hash()]], P2, P2, 1)
    with pytest.raises(ParityError):
        Supermatrix([[_one(), _one()], [_one(), _one()]], P2, P2, 1)


def test_ragged_and_mismatched_shapes_rejected():
    with pytest.raises(DimensionMismatch):
        Supermatrix([[_one()], [_one(), _one()]], P2, P2, 0)
    with pytest.raises(DimensionMismatch):
        Supermatrix([[_one(), _one()]], P2, P2, 0)


def test_mixed_orders_rejected():
    with pytest.raises(DimensionMismatch):
        Supermatrix([[Supernumber.one(2), Supernumber.zero(4)]], (0,), (0, 0), 0)


def test_identity_and_zeros():
    ident = Supermatrix.identity(P3, ORDER)
    assert ident.shape == (3, 3)
    for i in range(3):
        for j in range(3):
            want = _one() if i == j else Supernumber.zero(ORDER)
            assert ident[i, j] == want
    z = Supermatrix.zeros(P2, P3, ORDER)
    assert z.shape == (2, 3)
    assert z.is_zero()


def test_column_and_row_helpers():
    col = Supermatrix.column([_one(), _one(), _eta()], P3, 0, order=ORDER)
    assert col.shape == (3, 1)
    assert col.col_parity == (0,)
    row = Supermatrix.row([_one(), _one(), _eta()], P3, 0, order=ORDER)
    assert row.shape == (1, 3)
    assert row.row_parity == (0,)


def test_block_dims():
    m = Supermatrix.identity(P3, ORDER)
    assert m.row_dims == (2, 1)
    assert m.col_dims == (2, 1)
    assert m.is_square


# -- linear structure --------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(supermatrices(), supermatrices())
def test_addition_and_scalar_multiplication(a, b):
    assert (a + b) - b == a
    assert -(-a) == a
    assert 2 * a == a + a
    assert a * 0.5 + a * 0.5 == a


def test_addition_requires_matching_parities():
    a = Supermatrix.identity(P2, ORDER)
    b = Supermatrix.identity((1, 0), ORDER)
    with pytest.raises((ParityError, DimensionMismatch)):
        a + b


@settings(max_examples=25, deadline=None)
@given(supermatrices(), supermatrices(), supermatrices())
def test_matmul_associative(a, b, c):
    assert matrix_residual((a @ b) @ c - a @ (b @ c)) < 1e-9


def test_matmul_requires_compatible_layout():
    a = Supermatrix.identity(P2, ORDER)
    b = Supermatrix.identity(P3, ORDER)
    with pytest.raises((ParityError, DimensionMismatch)):
        a @ b


def test_matmul_identity_neutral():
    rng = random.Random(3)
    m = rand_supermatrix(rng, P3, P3, 1, ORDER)
    ident = Supermatrix.identity(P3, ORDER)
    assert ident @ m == m
    assert m @ ident == m


def test_even_odd_split():
    rng = random.Random(4)
    even = rand_supermatrix(rng, P2, P2, 0, ORDER)
    odd = rand_supermatrix(rng, P2, P2, 1, ORDER)
    total = even + odd
    assert total.even_part() == even
    assert total.odd_part() == odd


# -- supertranspose ----------------------------------------------------------------


def test_supertranspose_pinned_signs():
    a = Supernumber.from_complex(2 + 1j, ORDER)
    d = Supernumber.from_complex(3 - 2j, ORDER)
    s = Supermatrix([[a, _eta()], [_eta_hash(), d]], P2, P2, 0)
    t = s.supertranspose()
    assert t[0, 0] == a
    assert t[1, 1] == d
    assert t[0, 1] == _eta_hash()  # even matrix: odd-row block moves with sign +1
    assert t[1, 0] == -_eta()  # even matrix: odd-column block picks up -1


def test_supertranspose_odd_matrix_pinned_signs():
    s = Supermatrix(
        [[_eta(), _one()], [_one(), _eta_hash()]], P2, P2, 1
    )
    t = s.supertranspose()
    assert t[0, 0] == _eta()
    assert t[1, 1] == _eta_hash()
    assert t[0, 1] == -_one()  # odd matrix: (row 1, col 0) entries flip sign
    assert t[1, 0] == _one()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1), st.integers(0, 2**32 - 1))
def test_supertranspose_order_four(parity, seed):
    rng = random.Random(seed)
    m = rand_supermatrix(rng, P3, P3, parity, ORDER)
    t = m
    for _ in range(4):
        t = t.supertranspose()
    assert t == m


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1), st.integers(0, 1), st.integers(0, 2**32 - 1))
def test_supertranspose_composition_law(px, py, seed):
    rng = random.Random(seed)
    x = rand_supermatrix(rng, P3, P3, px, ORDER)
    y = rand_supermatrix(rng, P3, P3, py, ORDER)
    sign = -1 if px * py else 1
    lhs = (x @ y).supertranspose()
    rhs = sign * (y.supertranspose() @ x.supertranspose())
    assert matrix_residual(lhs - rhs) < 1e-10


def test_supertranspose_is_linear():
    rng = random.Random(9)
    even = rand_supermatrix(rng, P2, P2, 0, ORDER)
    odd = rand_supermatrix(rng, P2, P2, 1, ORDER)
    lhs = (even + odd).supertranspose()
    assert lhs == even.supertranspose() + odd.supertranspose()
    assert supertranspose(even) == even.supertranspose()


# -- hash and grade adjoint --------------------------------------------------------


def test_matrix_hash_is_entrywise():
    rng = random.Random(12)
    m = rand_supermatrix(rng, P2, P2, 1, ORDER)
    h = m.hash()
    for i in range(2):
        for j in range(2):
            assert h[i, j] == m[i, j].hash()


def test_grade_adjoint_is_hash_of_supertranspose():
    rng = random.Random(13)
    for parity in (0, 1):
        m = rand_supermatrix(rng, P3, P3, parity, ORDER)
        assert m.grade_adjoint() == m.supertranspose().hash()
        assert m.grade_adjoint() == m.hash().supertranspose()
        assert grade_adjoint(m) == m.grade_adjoint()


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1), st.integers(0, 2**32 - 1))
def test_grade_adjoint_squared(parity, seed):
    rng = random.Random(seed)
    m = rand_supermatrix(rng, P3, P3, parity, ORDER)
    sign = -1 if parity else 1
    assert matrix_residual(m.grade_adjoint().grade_adjoint() - sign * m) < 1e-12


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1), st.integers(0, 1), st.integers(0, 2**32 - 1))
def test_grade_adjoint_composition_law(px, py, seed):
    rng = random.Random(seed)
    x = rand_supermatrix(rng, P3, P3, px, ORDER)
    y = rand_supermatrix(rng, P3, P3, py, ORDER)
    sign = -1 if px * py else 1
    lhs = (x @ y).grade_adjoint()
    rhs = sign * (y.grade_adjoint() @ x.grade_adjoint())
    assert matrix_residual(lhs - rhs) < 1e-10


# -- supertrace --------------------------------------------------------------------


def test_supertrace_pinned():
    a = Supernumber.from_complex(2 + 1j, ORDER)
    d = Supernumber.from_complex(5.0, ORDER)
    s = Supermatrix([[a, _eta()], [_eta_hash(), d]], P2, P2, 0)
    assert supertrace(s) == Supernumber.from_complex((2 + 1j) - 5.0, ORDER)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1), st.integers(0, 1), st.integers(0, 2**32 - 1))
def test_supertrace_graded_cyclicity(px, py, seed):
    rng = random.Random(seed)
    x = rand_supermatrix(rng, P3, P3, px, ORDER)
    y = rand_supermatrix(rng, P3, P3, py, ORDER)
    sign = -1 if px * py else 1
    d = supertrace(x @ y) - sign * supertrace(y @ x)
    assert max_abs_coeff(d) < 1e-10


def test_supertrace_linear_on_mixed_matrices():
    rng = random.Random(21)
    even = rand_supermatrix(rng, P3, P3, 0, ORDER)
    odd = rand_supermatrix(rng, P3, P3, 1, ORDER)
    assert supertrace(even + odd) == supertrace(even) + supertrace(odd)


def test_supertrace_invariant_under_supertranspose():
    rng = random.Random(22)
    m = rand_supermatrix(rng, P3, P3, 0, ORDER)
    assert max_abs_coeff(supertrace(m.supertranspose()) - supertrace(m)) < 1e-12


# -- graded scalar action ----------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 1), st.integers(0, 1), st.integers(0, 2**32 - 1))
def test_scalar_left_right_koszul(zp, sp, seed):
    rng = random.Random(seed)
    zeta = rand_supernumber(rng, ORDER, zp)
    m = rand_supermatrix(rng, P2, P2, sp, ORDER)
    sign = -1 if zp * sp else 1
    assert matrix_residual(scalar_left(zeta, m) - sign * scalar_right(m, zeta)) < 1e-12


def test_scalar_action_compatible_with_matmul():
    rng = random.Random(31)
    zeta = rand_supernumber(rng, ORDER, 1)
    x = rand_supermatrix(rng, P2, P2, 1, ORDER)
    y = rand_supermatrix(rng, P2, P2, 0, ORDER)
    assert matrix_residual(scalar_left(zeta, x @ y) - scalar_left(zeta, x) @ y) < 1e-12
    assert matrix_residual(scalar_right(x @ y, zeta) - x @ scalar_right(y, zeta)) < 1e-12


def test_even_scalar_action_is_plain():
    rng = random.Random(32)
    zeta = rand_supernumber(rng, ORDER, 0)
    m = rand_supermatrix(rng, P2, P2, 1, ORDER)
    assert scalar_left(zeta, m) == scalar_right(m, zeta)


# -- graded Kronecker product ------------------------------------------------------


def test_graded_kron_requires_even_factors():
    rng = random.Random(41)
    odd = rand_supermatrix(rng, P2, P2, 1, ORDER)
    even = rand_supermatrix(rng, P2, P2, 0, ORDER)
    with pytest.raises(ParityError):
        graded_kron(odd, even)
    with pytest.raises(ParityError):
        graded_kron(even, odd)


def test_graded_kron_layout_and_koszul_sign():
    one = _one()
    a = Supermatrix([[one, _eta(1)], [_eta_hash(1), one]], P2, P2, 0)
    b = Supermatrix([[one, _eta(2)], [_eta_hash(2), one]], P2, P2, 0)
    k = graded_kron(a, b)
    assert k.shape == (4, 4)
    assert k.row_parity == (0, 1, 1, 0)  # lexicographic (i, k) -> 2 i + k
    assert k[2, 0] == _eta_hash(1)  # a[1,0] * b[0,0], no sign
    assert k[1, 0] == _eta_hash(2)  # a[0,0] * b[1,0], no sign
    # a[0,1] (odd column label) against b[1,0] (odd row label) picks up -1
    assert k[1, 2] == -(_eta(1) * _eta_hash(2))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_graded_kron_mixed_product(seed):
    rng = random.Random(seed)
    a, b, c, d = (rand_supermatrix(rng, P2, P2, 0, ORDER) for _ in range(4))
    lhs = graded_kron(a, b) @ graded_kron(c, d)
    rhs = graded_kron(a @ c, b @ d)
    assert matrix_residual(lhs - rhs) < 1e-9


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_graded_kron_supertrace_multiplicative(seed):
    rng = random.Random(seed)
    a = rand_supermatrix(rng, P2, P2, 0, ORDER)
    b = rand_supermatrix(rng, P2, P2, 0, ORDER)
    d = supertrace(graded_kron(a, b)) - supertrace(a) * supertrace(b)
    assert max_abs_coeff(d) < 1e-10


# -- nilpotent exponential ---------------------------------------------------------


def test_exp_nilpotent_of_zero():
    z = Supermatrix.zeros(P3, P3, ORDER)
    assert exp_nilpotent(z) == Supermatrix.identity(P3, ORDER)


def test_exp_nilpotent_inverse_law():
    rng = random.Random(51)
    for _ in range(20):
        entries = [
            [
                rand_supernumber(rng, ORDER, (P3[i] + P3[j]) % 2).soul()
                for j in range(3)
            ]
            for i in range(3)
        ]
        n = Supermatrix(entries, P3, P3, 0)
        prod = exp_nilpotent(n) @ exp_nilpotent(-n)
        assert matrix_residual(prod - Supermatrix.identity(P3, ORDER)) < 1e-10


def test_exp_nilpotent_rejects_non_nilpotent():
    with pytest.raises(NotNilpotent):
        exp_nilpotent(Supermatrix.identity(P2, ORDER))
