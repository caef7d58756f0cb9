import pytest

from hilbvertex.corealg import M, ONE, Q, SQRT_QT, T, ZERO
from hilbvertex.zfun import (
    QuiverSpec, check_pert, check_qt_symmetry, check_r1_degeneration, check_trace_bases,
    compare_zfun, mass_convention, swap_qt, z_inst_closed, z_inst_trace, z_pert,
)

DEG1 = (M - Q) * (M - T) / (SQRT_QT * (1 - Q) * (1 - T))


def test_trace_examples():
    tr = z_inst_trace(QuiverSpec(0), 2)
    assert tr[(0,)] == ONE
    assert tr[(1,)] == DEG1


def test_closed_examples():
    c = z_inst_closed(1)
    assert c[0] == ONE and c[1] == DEG1
    s = z_inst_closed(1, SQRT_QT)[1]
    assert s == (SQRT_QT - Q) * (SQRT_QT - T) / (SQRT_QT * (1 - Q) * (1 - T))
    assert z_inst_closed(1, ONE)[1] == 1 / SQRT_QT


@pytest.mark.parametrize("order", [0, 1, 4])
def test_compare(order):
    rep = compare_zfun(order)
    assert rep.ok, rep.summary()


def test_mass_convention_is_plain():
    assert mass_convention() == "none"
    assert not compare_zfun(1, redefine_mass=True).ok


def test_spec_validation():
    with pytest.raises(ValueError):
        QuiverSpec(1, [M])
    with pytest.raises(ValueError):
        QuiverSpec(-1, [])


def test_trace_basis_independence():
    assert check_trace_bases(4).ok


def test_r1_vacuum_sector():
    assert check_r1_degeneration(3).ok
    assert check_r1_degeneration(2, m0=M, m1=Q + M).ok


def test_qt_symmetry():
    assert check_qt_symmetry(4).ok
    assert swap_qt(Q) == T


def test_pert():
    assert check_pert(6).ok
    zp = z_pert(4)
    assert zp[(0, 0)] == ONE
    # leading term qt(1-m)/((1-q)(1-t)) expands to (1-m) q t + ...
    assert zp[(1, 1)] == 1 - M
    assert z_pert(6, ONE) == {(0, 0): ONE}
