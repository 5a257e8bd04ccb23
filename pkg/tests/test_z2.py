"""GF(2) matrices and the standard-to-canonical change of basis."""

import pytest

from surfcurve.errors import DimensionMismatch
from surfcurve.z2 import RhoMap, Z2Matrix, change_basis_inverse, change_basis_matrix, compose_rho


def test_pinned_small_matrices():
    assert change_basis_matrix(1).to_lists() == [[1]]
    assert change_basis_matrix(2).to_lists() == [[1, 1], [0, 1]]
    assert change_basis_matrix(3).to_lists() == [[1, 1, 0], [1, 1, 1], [1, 0, 1]]
    assert change_basis_inverse(3).to_lists() == [[1, 1, 1], [0, 1, 1], [1, 1, 0]]
    assert change_basis_inverse(2).to_lists() == [[1, 1], [0, 1]]
    assert change_basis_inverse(1).to_lists() == [[1]]


@pytest.mark.parametrize("g", list(range(1, 65)))
def test_inverse_product_is_identity(g):
    a = change_basis_matrix(g)
    b = change_basis_inverse(g)
    assert a.matmul(b).is_identity()
    assert b.matmul(a).is_identity()


def test_apply():
    ident = Z2Matrix.identity(5)
    assert ident.apply(0b10110) == 0b10110
    a3 = change_basis_matrix(3)
    # all-ones in, expected product of the pinned matrix
    v = 0b111
    out = a3.apply(v)
    assert out == 0b010  # rows (1,1,0),(1,1,1),(1,0,1) dotted with 111
    assert a3.apply(0) == 0


def test_dimension_errors():
    with pytest.raises(DimensionMismatch):
        Z2Matrix(2, 2, [1])
    with pytest.raises(DimensionMismatch):
        Z2Matrix.identity(3).apply(0b11111)
    with pytest.raises(DimensionMismatch):
        Z2Matrix.identity(3).matmul(Z2Matrix.identity(4))


def test_compose_rho():
    ident3 = Z2Matrix.identity(3)
    rho = RhoMap(ident3, (0b111,))
    phi = change_basis_matrix(3)
    comp = compose_rho(rho, phi)
    assert comp.matrix == phi
    assert comp.targets == (0b111,)
    # composing with the identity changes nothing
    comp2 = compose_rho(rho, ident3)
    assert comp2.matrix == ident3
    # the all-ones row composed with a matrix is the column-sum row
    sum_row = RhoMap(Z2Matrix(1, 3, [0b111]), (1,))
    comp3 = compose_rho(sum_row, phi)
    cols = [sum(col) % 2 for col in zip(*phi.to_lists())]
    assert comp3.matrix.to_lists() == [cols]
