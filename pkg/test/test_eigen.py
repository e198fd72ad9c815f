import numpy as np
import pytest

from centralshadow.core.eigen import char_poly, eigenvalues, integer_det, \
    integer_inverse, invariant_subspace
from centralshadow.core.errors import InvalidSystem


CAT = np.array([[2, 1], [1, 1]])
CAT_PLUS_ID = np.array([[2, 1, 0], [1, 1, 0], [0, 0, 1]])
GOLDEN = (1 + 5 ** 0.5) / 2


def _sorted(values):
    return np.array(sorted((complex(v) for v in values),
                           key=lambda v: (round(v.real, 6), v.imag)))


def test_char_poly():
    assert char_poly(CAT) == [1, -3, 1]
    assert char_poly(CAT_PLUS_ID) == [1, -4, 4, -1]
    assert integer_det(CAT_PLUS_ID) == 1


def test_eigenvalues_cat_plus_identity():
    values = sorted(v.real for v in eigenvalues(CAT_PLUS_ID))
    assert values == pytest.approx([1 / GOLDEN ** 2, 1.0, GOLDEN ** 2],
                                   abs=1e-12)


def test_eigenvalues_closed_form_match_numpy():
    """
    trigonometric branch (three real roots) and Cardano branch (one real
    root, a conjugate pair)
    """
    for matrix in (np.array([[2, 1, 0], [1, 2, 1], [0, 1, 2]]),
                   np.array([[0, 0, 1], [1, 0, 1], [0, 1, 0]])):
        assert np.allclose(_sorted(eigenvalues(matrix)),
                           _sorted(np.linalg.eigvals(matrix.astype(float))),
                           atol=1e-9)


def test_integer_inverse():
    assert integer_inverse(CAT).tolist() == [[1, -1], [-1, 2]]
    inverse = integer_inverse(CAT_PLUS_ID)
    assert (inverse @ CAT_PLUS_ID).tolist() == np.eye(3).tolist()
    with pytest.raises(InvalidSystem):
        integer_inverse(np.array([[2, 0], [0, 1]]))


def test_invariant_subspace():
    stable = invariant_subspace(CAT, [1 / GOLDEN ** 2])
    unstable = invariant_subspace(CAT, [GOLDEN ** 2])
    assert stable.shape == (2, 1)
    assert np.allclose(CAT @ stable, stable / GOLDEN ** 2, atol=1e-12)
    assert np.allclose(CAT @ unstable, unstable * GOLDEN ** 2, atol=1e-12)
    assert abs(float(stable[:, 0] @ unstable[:, 0])) < 1e-12
    # sign normalized: first significant component positive
    assert stable[0, 0] > 0 and unstable[0, 0] > 0


def test_repeated_unit_roots_stay_exact():
    jordan = np.array([[2, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, 1],
                       [0, 0, 0, 1]])
    values = eigenvalues(jordan)
    assert values.count(complex(1)) == 2
    assert sorted(v.real for v in values if v != 1) == \
        pytest.approx([1 / GOLDEN ** 2, GOLDEN ** 2], abs=1e-12)
