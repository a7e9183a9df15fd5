import random
from fractions import Fraction

import pytest
import sympy

from freeqg.linalg import ExactMatrix


def random_int_matrix(rng, rows, cols, lo=-6, hi=6):
    return [[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)]


def test_constructor_shapes():
    m = ExactMatrix([[1, 2], [3, 4]])
    assert (m.rows, m.cols) == (2, 2)
    assert m.entry(1, 0) == 3
    empty = ExactMatrix([], cols=3)
    assert (empty.rows, empty.cols) == (0, 3)
    with pytest.raises(ValueError):
        ExactMatrix([[1, 2], [3]])
    with pytest.raises(ValueError):
        ExactMatrix([])


def test_floats_rejected():
    with pytest.raises(TypeError):
        ExactMatrix([[1.5]])
    with pytest.raises(TypeError):
        ExactMatrix([[1, 2]]).matvec([0.5, 1])


def test_fraction_entries_kept_exact():
    m = ExactMatrix([[Fraction(1, 3), 1]])
    assert m.entry(0, 0) == Fraction(1, 3)
    assert m.matvec([3, 1]) == [Fraction(2)]


def test_identity_and_zeros():
    assert ExactMatrix.identity(4).rank() == 4
    assert ExactMatrix.zeros(3, 5).rank() == 0
    assert ExactMatrix.zeros(3, 5).nullspace_basis() == [
        [1, 0, 0, 0, 0],
        [0, 1, 0, 0, 0],
        [0, 0, 1, 0, 0],
        [0, 0, 0, 1, 0],
        [0, 0, 0, 0, 1],
    ]


def test_matmul_and_transpose():
    a = ExactMatrix([[1, 2], [3, 4]])
    b = ExactMatrix([[0, 1], [1, 0]])
    assert (a @ b).row_list() == [[2, 1], [4, 3]]
    assert a.transpose().row_list() == [[1, 3], [2, 4]]
    with pytest.raises(ValueError):
        a @ ExactMatrix([[1, 2, 3]])


def test_rank_frozen_cases():
    assert ExactMatrix([[4, 2], [2, 4]]).rank() == 2
    assert ExactMatrix([[1, 1], [1, 1]]).rank() == 1
    assert ExactMatrix([[1, 2, 3], [2, 4, 6], [1, 1, 1]]).rank() == 2


def test_rank_matches_sympy_on_random_matrices():
    rng = random.Random(20240817)
    for _ in range(40):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        entries = random_int_matrix(rng, rows, cols)
        ours = ExactMatrix(entries).rank()
        theirs = sympy.Matrix(entries).rank()
        assert ours == theirs, entries


def test_nullspace_matches_sympy_dimension_and_is_integral():
    rng = random.Random(77)
    for _ in range(30):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 6)
        entries = random_int_matrix(rng, rows, cols, -4, 4)
        m = ExactMatrix(entries)
        basis = m.nullspace_basis()
        assert len(basis) == cols - m.rank()
        assert len(basis) == len(sympy.Matrix(entries).nullspace())
        for vec in basis:
            assert all(v.denominator == 1 for v in vec)
            assert all(x == 0 for x in m.matvec(vec))
            lead = next((v for v in vec if v), 0)
            assert lead > 0
        # basis vectors are independent: stacking them keeps full rank
        if basis:
            assert ExactMatrix(basis, cols=cols).rank() == len(basis)


def test_left_nullspace():
    m = ExactMatrix([[1, 2], [2, 4], [0, 1]])
    left = m.left_nullspace_basis()
    assert len(left) == 1
    row = ExactMatrix([left[0]], cols=3)
    assert (row @ m).row_list() == [[0, 0]]


def test_in_column_space_certificate():
    m = ExactMatrix([[1, 0], [0, 1], [1, 1]])
    ok, cert = m.in_column_space([2, 3, 5])
    assert ok
    assert m.matvec(cert) == [2, 3, 5]
    ok, cert = m.in_column_space([1, 0, 0])
    assert not ok and cert is None


def test_in_column_space_fractional_certificate():
    m = ExactMatrix([[2, 0], [0, 3]])
    ok, cert = m.in_column_space([1, 1])
    assert ok
    assert cert == [Fraction(1, 2), Fraction(1, 3)]


def test_in_column_space_random_consistency():
    rng = random.Random(5)
    for _ in range(25):
        rows = rng.randint(1, 5)
        cols = rng.randint(1, 5)
        m = ExactMatrix(random_int_matrix(rng, rows, cols, -3, 3))
        coeffs = [rng.randint(-3, 3) for _ in range(cols)]
        image = m.matvec(coeffs)
        ok, cert = m.in_column_space(image)
        assert ok
        assert m.matvec(cert) == image
        outside = [v + (1 if i == 0 else 0) for i, v in enumerate(image)]
        expected = sympy.Matrix(
            [list(r) for r in m.row_list()]
        ).rank() == sympy.Matrix([list(r) + [o] for r, o in zip(m.row_list(), outside)]).rank()
        assert m.in_column_space(outside)[0] == expected


def test_zero_row_and_zero_column_edges():
    no_rows = ExactMatrix([], cols=2)
    assert no_rows.rank() == 0
    assert no_rows.in_column_space([]) == (True, [0, 0])
    no_cols = ExactMatrix([[], []])
    assert no_cols.cols == 0
    assert no_cols.rank() == 0
    ok, cert = no_cols.in_column_space([0, 0])
    assert ok and cert == []
    assert no_cols.in_column_space([1, 0]) == (False, None)


def test_to_json_exact_strings():
    m = ExactMatrix([[Fraction(1, 2), 3]])
    assert m.to_json() == [["1/2", "3"]]
