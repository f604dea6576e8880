import random
from fractions import Fraction

import pytest

from crprolong.exact import (
    QI,
    Echelon,
    Inconsistent,
    Matrix,
    frac_from_str,
    frac_to_str,
    invert,
    kernel_basis,
    rank,
    solve_linear,
)

I = QI(0, 1)


def test_field_arithmetic():
    a = QI(Fraction(3, 2), Fraction(-1, 3))
    b = QI(2, 5)
    assert a + b - b == a
    assert a * b == b * a
    assert (a * b) / b == a
    assert a * (b + I) == a * b + a * I
    assert QI(1) / a * a == QI(1)
    with pytest.raises(ZeroDivisionError):
        a / QI(0)


def test_conjugation_involution_and_norm():
    rng = random.Random(7)
    for _ in range(50):
        q = QI(Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        r = QI(Fraction(rng.randint(-9, 9), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
        assert q.conj().conj() == q
        assert (q + r).conj() == q.conj() + r.conj()
        assert (q * r).conj() == q.conj() * r.conj()
        norm = q * q.conj()
        assert norm.im == 0
        assert norm.re >= 0


def test_kernel_zero_map():
    assert kernel_basis(Matrix([[0]])) == [[QI(1)]]


def test_kernel_injective_map():
    assert kernel_basis(Matrix.identity(3)) == []


def test_kernel_gaussian_example():
    # hand row-reduction: x1 + i·x2 = 0, so the kernel is spanned by (-i, 1)
    m = Matrix([[1, I], [-I, 1]])
    basis = kernel_basis(m)
    assert len(basis) == 1
    assert basis[0] == [-I, QI(1)]
    assert all(not x for x in m.matvec(basis[0]))


def test_solve_identity():
    b = [QI(2), QI(0, 3)]
    assert solve_linear(Matrix.identity(2), b) == b


def test_solve_underdetermined_convention():
    assert solve_linear(Matrix([[1, 1]]), [QI(2)]) == [QI(2), QI(0)]


def test_solve_inconsistent():
    with pytest.raises(Inconsistent):
        solve_linear(Matrix([[1], [1]]), [QI(1), QI(2)])


def _random_matrix(rng, rows, cols):
    def q():
        return QI(
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
            Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
        )

    return Matrix([[q() for _ in range(cols)] for _ in range(rows)])


def test_rank_nullity_property():
    rng = random.Random(20240811)
    for _ in range(40):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = _random_matrix(rng, rows, cols)
        kern = kernel_basis(m)
        assert rank(m) + len(kern) == cols
        for v in kern:
            assert all(not x for x in m.matvec(v))


def test_solve_random_consistent_systems():
    rng = random.Random(99)
    for _ in range(30):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = _random_matrix(rng, rows, cols)
        x = [QI(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(cols)]
        b = m.matvec(x)
        y = solve_linear(m, b)
        assert m.matvec(y) == b


def test_invert_round_trip():
    m = Matrix([[1, I, 0], [0, 1, 2], [1, 0, 1]])
    inv = invert(m)
    assert m.mul(inv) == Matrix.identity(3)
    with pytest.raises(ValueError):
        invert(Matrix([[1, 1], [1, 1]]))


def test_echelon_reduction_right_preference():
    # span{(1,0,1), (0,1,0)} with trailing pivots: e3 reduces to -e1
    e = Echelon([[QI(1), QI(0), QI(1)], [QI(0), QI(1), QI(0)]], 3, col_order=range(2, -1, -1))
    assert e.rank == 2
    assert e.free_cols == [0]
    assert e.reduce([QI(0), QI(0), QI(1)]) == [QI(-1), QI(0), QI(0)]
    assert e.contains([QI(1), QI(0), QI(1)])
    assert not e.contains([QI(1), QI(0), QI(0)])


def test_fraction_string_round_trip():
    for s in ("0", "5", "-3/2", "22/7"):
        assert frac_to_str(frac_from_str(s)) == s
