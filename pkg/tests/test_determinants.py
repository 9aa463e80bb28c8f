import pytest
import sympy
from hypothesis import given, strategies as st

from pureshapes.determinants import (
    DivisibilityFailure,
    bareiss_det,
    composite_exponent_matrix,
    composite_jacobian_det,
    h_minus_analytic,
    jacobian_det,
    jacobian_exponent_matrix,
    maillet_class_number,
    maillet_matrix,
    reduced_exponent_matrix,
    reduction_pipeline,
    shadow_jacobian_det,
    shadow_matrix,
)

PRIMES = [3, 5, 7, 11, 13, 17, 19, 23]
# relative class numbers of Q(zeta_p) from the classical tables
H_MINUS_TABLE = {3: 1, 5: 1, 7: 1, 11: 1, 13: 1, 17: 1, 19: 1, 23: 3, 29: 8, 31: 9, 37: 37, 41: 121, 43: 211}


@given(st.lists(st.lists(st.integers(-50, 50), min_size=5, max_size=5), min_size=5, max_size=5))
def test_bareiss_matches_sympy(rows):
    assert bareiss_det(rows) == sympy.Matrix(rows).det()


@given(st.integers(2, 7), st.data())
def test_bareiss_repeated_row_is_singular(n, data):
    row = st.lists(st.integers(-3, 3), min_size=n, max_size=n)
    rows = data.draw(st.lists(row, min_size=n - 1, max_size=n - 1))
    assert bareiss_det(rows + [rows[0]]) == 0


def test_bareiss_edge_cases():
    assert bareiss_det([]) == 1
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    with pytest.raises(ValueError):
        bareiss_det([[1, 2]])


def test_jacobian_matrix_p3():
    assert jacobian_exponent_matrix(3) == [[-1, 1], [2, 0]]
    assert abs(jacobian_det(3)) == 2


def test_jacobian_p7_value():
    assert abs(jacobian_det(7)) == 1568


@pytest.mark.parametrize("p", PRIMES)
def test_jacobian_identity(p):
    h = maillet_class_number(p).h_minus
    assert h == H_MINUS_TABLE[p]
    assert h == h_minus_analytic(p)
    assert abs(jacobian_det(p)) == 2 ** (p - 2) * p ** ((p - 3) // 2) * h
    assert jacobian_det(p) == sympy.Matrix(jacobian_exponent_matrix(p)).det()


def test_p5_value_and_reduction():
    assert abs(jacobian_det(5)) == 40 == 2**3 * 5
    assert abs(jacobian_det(5)) == 2**2 * abs(bareiss_det([[1, 3], [-3, 1]]))
    # the reduced ell x ell block differs from the displayed one only by row/column sign flips
    R = reduced_exponent_matrix(5)
    assert 2**2 * abs(bareiss_det(R)) == 40


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_reduction_pipeline_preserves_det(p):
    dets = [bareiss_det(M) for M in reduction_pipeline(p)]
    assert dets[0] == dets[1] == dets[2]


@pytest.mark.parametrize("p", PRIMES)
def test_column_sums_are_one_before_replacement(p):
    C = jacobian_exponent_matrix(p)
    assert all(sum(row[j] for row in C) == 1 for j in range(p - 1))


@pytest.mark.parametrize("p", PRIMES)
def test_reduced_identity(p):
    ell = (p - 1) // 2
    assert abs(jacobian_det(p)) == 2**ell * abs(bareiss_det(reduced_exponent_matrix(p)))


def test_maillet_examples():
    assert maillet_matrix(5) == [[1, 3], [2, 1]]
    assert maillet_class_number(3).D_p == 1
    assert maillet_class_number(5).D_p == -5


@pytest.mark.parametrize("p", sorted(H_MINUS_TABLE))
def test_h_minus_table(p):
    assert maillet_class_number(p).h_minus == H_MINUS_TABLE[p]
    assert h_minus_analytic(p) == H_MINUS_TABLE[p]


@pytest.mark.parametrize("p", [101, 197, 199])
def test_h_minus_routes_agree_large(p):
    assert maillet_class_number(p).h_minus == h_minus_analytic(p)


def test_maillet_bound_and_divisibility():
    with pytest.raises(ValueError):
        maillet_class_number(211)
    with pytest.raises(ValueError):
        h_minus_analytic(211)
    assert issubclass(DivisibilityFailure, ArithmeticError)


def test_maillet_fixture(frozen):
    for p, d in frozen["maillet_det"].items():
        assert maillet_class_number(int(p)).D_p == d


def test_shadow_determinant():
    assert shadow_matrix(2) == [[1, -1], [0, 2]]
    assert all(shadow_jacobian_det(d) == 2 for d in range(2, 33, 2))


def test_shadow_matches_sympy():
    for d in (4, 12):
        assert sympy.Matrix(shadow_matrix(d)).det() == 2
    with pytest.raises(ValueError):
        shadow_matrix(3)
    with pytest.raises(ValueError):
        shadow_jacobian_det(66)


def test_composite_fixture(frozen):
    for n, v in frozen["composite_jacobian_det"].items():
        assert composite_jacobian_det(int(n)) == v
    assert composite_jacobian_det(9) != 0


@pytest.mark.parametrize("p", [5, 7, 11])
def test_composite_formula_at_primes(p):
    assert abs(composite_jacobian_det(p)) == abs(jacobian_det(p))


def test_composite_rejects_even():
    with pytest.raises(ValueError):
        composite_exponent_matrix(10)
