import json

import pytest

from hilbvertex import macdonald
from hilbvertex.corealg import ONE, Q, T, ZERO, contains, partitions_of, partitions_upto
from hilbvertex.localization import ideal_point
from hilbvertex.macdonald import (
    T_eigenvalue, T_operator, fourier_pair, fourier_pair_general, from_H_basis,
    get_basis, hm2_norm, integral_J, interpolation_Hstar, macdonald_P,
    minus_ideal_point, modified_H, record, to_H_basis, top_degree, verify_vanishing,
)
from hilbvertex.symfunc import (
    SymFunc, basis_convert, dominance_leq, evaluate, herm, inner_qt, monomial, p, w_factor,
)


def test_P_examples():
    assert macdonald_P((1,)) == p(1)
    assert macdonald_P((1, 1)) == monomial((1, 1))
    assert macdonald_P((2,)) == monomial((2,)) + monomial((1, 1)) * ((1 + Q) * (1 - T) / (1 - Q * T))


def test_H_examples():
    assert modified_H(()) == SymFunc.constant(1)
    assert modified_H((1,)) == p(1)
    assert herm(modified_H((1,)), modified_H((1,))) == w_factor(1)
    # H_(2) = s_2 + q s_11
    s = basis_convert(modified_H((2,)), "schur")
    assert s == {(2,): ONE, (1, 1): Q}


@pytest.mark.parametrize("d", range(1, 6))
def test_P_monic_triangular_orthogonal(d):
    parts = partitions_of(d)
    for mu in parts:
        m = basis_convert(macdonald_P(mu), "monomial")
        assert m[mu] == ONE
        assert all(dominance_leq(nu, mu) for nu in m)
        for nu in parts:
            if nu != mu:
                assert inner_qt(macdonald_P(mu), macdonald_P(nu)).is_zero()


@pytest.mark.parametrize("mu", [mu for mu in partitions_upto(5) if mu])
def test_J_integral(mu):
    for c in basis_convert(integral_J(mu), "monomial").values():
        assert c.den.is_one(), (mu, c)


@pytest.mark.parametrize("d", range(6))
def test_hm2_norms(d):
    for lam in partitions_of(d):
        for mu in partitions_of(d):
            val = herm(modified_H(lam), modified_H(mu))
            assert val == (hm2_norm(lam) if lam == mu else ZERO)


def test_record_fields():
    r = record((2, 1))
    assert r.norm_herm == hm2_norm((2, 1))
    assert r.norm_qt == inner_qt(r.P, r.P)
    with pytest.raises(ValueError):
        get_basis((1,), "Q")


def test_H_basis_examples():
    assert to_H_basis(modified_H((2,))) == {(2,): ONE}
    assert to_H_basis(p(1)) == {(1,): ONE}
    assert to_H_basis(SymFunc()) == {}
    f = p(2, 1) * Q + p(1) - 3
    assert from_H_basis(to_H_basis(f)) == f


def test_T_examples():
    assert T_operator(modified_H((1,))) == modified_H((1,))
    assert T_operator(modified_H((2,))) == modified_H((2,)) * Q
    assert T_operator(modified_H((1, 1))) == modified_H((1, 1)) * T
    f = p(3) + p(2, 1) * T
    assert T_operator(T_operator(f, 1), -1) == f
    assert T_eigenvalue((2, 1)) == Q * T


def test_Hstar_examples():
    assert interpolation_Hstar(()) == SymFunc.constant(1)
    h1 = interpolation_Hstar((1,))
    assert h1.component(1) == p(1)
    assert h1.degrees() == [0, 1]
    assert evaluate(h1, minus_ideal_point(())).is_zero()
    assert top_degree(interpolation_Hstar((2, 1))) == modified_H((2, 1))


def test_vanishing_examples():
    assert verify_vanishing((2,), (1, 1))
    assert not verify_vanishing((), (2, 1))
    assert not verify_vanishing((1,), (1,))


@pytest.mark.parametrize("mu", partitions_upto(4))
def test_vanishing_pattern(mu):
    for lam in partitions_upto(4):
        assert verify_vanishing(mu, lam) == (not contains(lam, mu)), (mu, lam)


def test_minus_point_negates():
    x, y = ideal_point((2,)), minus_ideal_point((2,))
    for k in range(1, 4):
        assert y.p(k) == -x.p(k)


def test_fourier_examples():
    assert fourier_pair(SymFunc.constant(1), ()) == ONE
    for lam in partitions_upto(3):
        for mu in partitions_upto(3):
            if not contains(mu, lam):
                assert fourier_pair(interpolation_Hstar(lam), mu).is_zero()
            if lam != mu:
                assert fourier_pair_general(interpolation_Hstar(lam), interpolation_Hstar(mu)).is_zero()


def test_cache_round_trip(tmp_cache):
    first = {mu: modified_H(mu) for mu in partitions_of(3)}
    path = tmp_cache / "macdonald_deg3.json"
    assert path.exists()
    header = json.loads(path.read_text())["header"]
    assert header["monomial_order"] and header["version"]
    macdonald.clear_memory_cache()
    assert {mu: modified_H(mu) for mu in partitions_of(3)} == first


def test_cache_version_mismatch_recomputes(tmp_cache):
    want = macdonald_P((2,))
    path = tmp_cache / "macdonald_deg2.json"
    data = json.loads(path.read_text())
    data["header"]["version"] = "0.0.0-other"
    # poison the stored payload so a wrongful load would be visible
    for row in data["records"]:
        row["P"] = [[[1], "1"]]
    path.write_text(json.dumps(data))
    macdonald.clear_memory_cache()
    assert macdonald_P((2,)) == want
    assert json.loads(path.read_text())["header"]["version"] != "0.0.0-other"


def test_cache_unwritable_is_harmless(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    macdonald.set_cache_dir(blocker / "sub")
    macdonald.clear_memory_cache()
    try:
        assert macdonald_P((1, 1)) == monomial((1, 1))
    finally:
        macdonald.set_cache_dir(None)
        macdonald.clear_memory_cache()
