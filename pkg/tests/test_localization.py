import pytest
from hypothesis import given
from hypothesis import strategies as st

from hilbvertex.corealg import M, ONE, Q, SQRT_QT, T, partitions_upto
from hilbvertex.fock import W_operator, matrix_element_H
from hilbvertex.localization import (
    FROZEN_W_NORMALIZATION, ONE_CHAR, SIGMA, Character, boson_from_residue, boson_point,
    box_char, ext_char, ext_duality_holds, fit_W_normalization, geometric_V_pairing,
    geometric_W_element, ideal_point, ideal_resolution_char, lambda_genus,
    norm_from_tangent, tangent_char,
)
from hilbvertex.macdonald import H_norm, hm2_norm
from hilbvertex.symfunc import SymFunc, p, schur

W_ = FROZEN_W_NORMALIZATION


def test_box_char_examples():
    assert box_char(()) == Character()
    assert box_char((1,)) == ONE_CHAR
    assert box_char((2, 1)).to_field() == 1 + Q + T


def test_ideal_point_examples():
    for k in range(1, 6):
        assert ideal_point(()).p(k) == ONE
        assert ideal_point((1,)).p(k) == Q ** k + T ** k - (Q * T) ** k
    assert ideal_point((2,)).p(1) == Q ** 2 + T - Q ** 2 * T


@pytest.mark.parametrize("lam", partitions_upto(6))
def test_resolution_shape(lam):
    res = ideal_resolution_char(lam)
    assert set(res.terms.values()) <= {-1, 1}
    assert res.rank() == 1


def test_boson_examples():
    w = ONE + M
    for k in range(1, 4):
        assert boson_point((), w).p(k) == (w * SQRT_QT) ** k / (1 - Q ** k)
    assert boson_point((1,), w).p(1) == w * SQRT_QT * (T - 1 + 1 / (1 - Q))
    for lam in [(2,), (2, 1), (3, 1)]:
        for k in range(1, 4):
            assert boson_from_residue(lam, w, k) == boson_point(lam, w).p(k)


def test_tangent_examples():
    assert tangent_char((1,)).to_field() == Q + T
    assert tangent_char((2,)).to_field() == Q ** 2 + T / Q + Q + T
    assert tangent_char((2, 1)).rank() == 6


@pytest.mark.parametrize("lam", partitions_upto(5))
def test_norm_from_tangent_matches_macdonald(lam):
    assert norm_from_tangent(lam) == hm2_norm(lam) == H_norm(lam)


def test_ext_examples():
    assert SIGMA == 1
    assert ext_char((), ()) == Character()
    for lam in partitions_upto(4):
        assert ext_char(lam, lam) == tangent_char(lam)
    assert ext_char((1,), (2,)).rank() == 3


@pytest.mark.parametrize("lam", partitions_upto(4))
def test_ext_rank_and_duality(lam):
    for mu in partitions_upto(4):
        e = ext_char(lam, mu)
        assert e.rank() == sum(lam) + sum(mu)
        assert e.is_effective() or not e.terms
        assert ext_duality_holds(lam, mu)


def test_lambda_genus_examples():
    assert lambda_genus(Character(), M) == ONE
    c = Character.from_weights([(1, 0), (0, 1)])
    assert lambda_genus(c, M) == (1 - M * Q) * (1 - M * T)
    assert lambda_genus(tangent_char((1,)), 1) == (1 - Q) * (1 - T)
    with pytest.raises(ValueError):
        lambda_genus(Character({(2, 0): -1}), M)


weights = st.lists(st.tuples(st.integers(-2, 2), st.integers(-2, 2)), max_size=4)


@given(weights, weights)
def test_lambda_genus_laws(a, b):
    ca, cb = Character.from_weights(a), Character.from_weights(b)
    assert lambda_genus(ca, 0) == ONE
    assert lambda_genus(ca + cb, M) == lambda_genus(ca, M) * lambda_genus(cb, M)


def test_geometric_V_pairing_examples():
    assert geometric_V_pairing(SymFunc.constant(1), (2, 1)) == ONE
    assert geometric_V_pairing(p(1), (1,)) == (Q + T - Q * T) / SQRT_QT
    # Lambda^2 of the unit ideal is zero
    assert geometric_V_pairing(schur((1, 1)), ()).is_zero()


def test_seed_fit_matches_frozen():
    fitted = fit_W_normalization()
    assert fitted == FROZEN_W_NORMALIZATION
    assert W_.scale == ONE and (W_.alpha, W_.beta) == (0, 0)
    assert W_.shift == 1 / (Q * T)


def test_W_element_examples():
    assert geometric_W_element((), ()) == ONE
    deg1 = (M - Q) * (M - T) / (SQRT_QT * (1 - Q) * (1 - T))
    assert geometric_W_element((1,), (1,)) == deg1 * H_norm((1,))
    assert len(geometric_W_element((2,), (1,)).m_coefficients()) == 4


def test_W_element_matches_operator_degree_two():
    W = W_operator(2)
    for lam in partitions_upto(2):
        for mu in partitions_upto(2):
            assert matrix_element_H(W, lam, mu) == geometric_W_element(lam, mu)
