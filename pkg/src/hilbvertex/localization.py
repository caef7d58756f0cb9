"""Torus characters at the fixed points of Hilbert schemes of points in C^2.

Characters are finite Laurent polynomials in q^(1/2), t^(1/2) with integer
multiplicities, stored as {(a, b): c} meaning c * q^(a/2) t^(b/2).
"""
from __future__ import annotations

from collections import Counter
from typing import Iterable, Mapping

from .corealg import (
    M,
    ONE,
    Q,
    SQRT_QT,
    T,
    FieldElem,
    Partition,
    arm,
    cells,
    leg,
    partitions_upto,
    qt_monomial,
)
from .symfunc import AlphabetPoint, SymFunc, evaluate


class Character:
    """sum c_ab q^(a/2) t^(b/2); exponents are stored doubled."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple[int, int], int] | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "Character":
        """c q^i t^j with integer i, j."""
        return cls({(2 * i, 2 * j): c})

    @classmethod
    def from_weights(cls, weights: Iterable[tuple[int, int]]) -> "Character":
        return cls(Counter((2 * i, 2 * j) for i, j in weights))

    def __add__(self, other: "Character") -> "Character":
        out = Counter(self.terms)
        out.update(other.terms)
        return Character(out)

    def __neg__(self):
        return Character({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return Character({k: v * other for k, v in self.terms.items()})
        out: Counter = Counter()
        for (a, b), c in self.terms.items():
            for (x, y), d in other.terms.items():
                out[(a + x, b + y)] += c * d
        return Character(out)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Character) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def conjugate(self) -> "Character":
        return Character({(-a, -b): c for (a, b), c in self.terms.items()})

    def shift(self, i: int, j: int) -> "Character":
        """Multiply by q^i t^j."""
        return Character({(a + 2 * i, b + 2 * j): c for (a, b), c in self.terms.items()})

    def rank(self) -> int:
        return sum(self.terms.values())

    def is_effective(self) -> bool:
        return all(c > 0 for c in self.terms.values())

    def weights(self) -> list[tuple[int, int]]:
        """Doubled exponent pairs, repeated by multiplicity (requires effectivity)."""
        if not self.is_effective():
            raise ValueError(f"character {self} has negative multiplicities")
        return [k for k, c in sorted(self.terms.items()) for _ in range(c)]

    def adams(self, k: int) -> "Character":
        return Character({(a * k, b * k): c for (a, b), c in self.terms.items()})

    def to_field(self) -> FieldElem:
        total = FieldElem.from_number(0)
        for (a, b), c in self.terms.items():
            total = total + FieldElem.monomial(u=a, v=b, coeff=c)
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        return str(self.to_field())

    __repr__ = __str__


ONE_CHAR = Character({(0, 0): 1})
# (1-q)(1-t)
KOSZUL = Character({(0, 0): 1, (2, 0): -1, (0, 2): -1, (2, 2): 1})


def box_char(lam: Partition) -> Character:
    """ch(O/I_lam): the box in row i, column j carries q^(j-1) t^(i-1)."""
    return Character.from_weights((j - 1, i - 1) for i, j in cells(lam))


def ideal_resolution_char(lam: Partition) -> Character:
    """(1-q)(1-t) ch(I_lam) = 1 - (1-q)(1-t) B_lam: generators minus relations."""
    return ONE_CHAR - KOSZUL * box_char(lam)


def ideal_point(lam: Partition) -> AlphabetPoint:
    """x_lam with p_k(x_lam) = 1 - (1-q^k)(1-t^k) B_lam(q^k, t^k)."""
    lam = tuple(lam)
    res = ideal_resolution_char(lam)
    return AlphabetPoint(lambda k: res.adams(k).to_field(), f"x_{lam}")


def residue_point(lam: Partition, w: FieldElem = ONE) -> AlphabetPoint:
    """Finite alphabet of box positions w q^(i-1/2) t^(j-1/2), row index i along q.

    Note the opposite orientation from box_char; this one matches boson_point.
    """
    w = FieldElem.from_number(w)
    elems = [w * FieldElem.monomial(u=2 * i - 1, v=2 * j - 1) for i, j in cells(lam)]
    return AlphabetPoint.finite(elems, f"residue_{tuple(lam)}")


def boson_point(lam: Partition, w: FieldElem = ONE) -> AlphabetPoint:
    """k -> (w sqrt(qt))^k [sum_i q^(k(i-1)) (t^(k lam_i) - 1) + 1/(1-q^k)]."""
    w = FieldElem.from_number(w)
    lam = tuple(lam)

    def rule(k):
        qk, tk = Q.adams(k), T.adams(k)
        s = 1 / (1 - qk)
        for i, part in enumerate(lam):
            s = s + qk ** i * (tk ** part - 1)
        return (w * SQRT_QT) ** k * s

    return AlphabetPoint(rule, f"xi_{lam}")


def boson_from_residue(lam: Partition, w: FieldElem, k: int) -> FieldElem:
    """alpha_k = (w sqrt(qt))^k/(1-q^k) - (1-t^k) p_k(residue point)."""
    w = FieldElem.from_number(w)
    pk = residue_point(lam, w).p(k)
    return (w * SQRT_QT) ** k / (1 - Q.adams(k)) - (1 - T.adams(k)) * pk


def tangent_char(lam: Partition) -> Character:
    return Character.from_weights(
        w for cell in cells(lam)
        for w in ((arm(lam, cell) + 1, -leg(lam, cell)), (-arm(lam, cell), leg(lam, cell) + 1))
    )


def cotangent_char(lam: Partition) -> Character:
    return tangent_char(lam).conjugate().shift(1, 1)


# --- Ext character ----------------------------------------------------------------------

def _ext_char_sigma(lam: Partition, mu: Partition, sigma: int) -> Character:
    """chi(O) - chi(I_lam, I_mu) with chi(F,G) = conj(ch F) ch G (1-q^s)(1-t^s).

    With ch I = ch O - B the infinite chi(O) parts cancel and what remains is
    a_s B_mu + b_s conj(B_lam) - (1-q^s)(1-t^s) conj(B_lam) B_mu, where
    (a_s, b_s) = (qt, 1) for s = +1 and (1, 1/(qt)) for s = -1.
    """
    Bl, Bm = box_char(lam).conjugate(), box_char(mu)
    if sigma == 1:
        return Bm.shift(1, 1) + Bl - KOSZUL * Bl * Bm
    if sigma == -1:
        return Bm + Bl.shift(-1, -1) - KOSZUL.conjugate() * Bl * Bm
    raise ValueError("sigma must be +1 or -1")


def _fix_sigma() -> int:
    probes = [(1,), (2,), (1, 1)]
    good = [s for s in (1, -1) if all(_ext_char_sigma(l, l, s) == tangent_char(l) for l in probes)]
    if len(good) != 1:
        raise RuntimeError(f"Ext convention self-check failed: candidates {good}")
    return good[0]


SIGMA = _fix_sigma()


def ext_char(lam: Partition, mu: Partition) -> Character:
    return _ext_char_sigma(tuple(lam), tuple(mu), SIGMA)


def ext_duality_holds(lam: Partition, mu: Partition) -> bool:
    """conj(E(lam, mu)) = (qt)^-1 E(mu, lam)."""
    return ext_char(lam, mu).conjugate() == ext_char(mu, lam).shift(-1, -1)


def lambda_genus(c: Character, marker) -> FieldElem:
    """prod over weights w of c of (1 - marker w)."""
    marker = FieldElem.from_number(marker)
    out = ONE
    for (a, b), mult in c.terms.items():
        if mult < 0:
            raise ValueError(f"negative multiplicity in {c}")
        out = out * (1 - marker * FieldElem.monomial(u=a, v=b)) ** mult
    return out


def norm_from_tangent(lam: Partition) -> FieldElem:
    """prod over cotangent weights w of (w^1/2 - w^-1/2), from tangent_char."""
    out = ONE
    for a, b in cotangent_char(lam).weights():
        half = FieldElem.monomial(u=a // 2, v=b // 2)
        out = out * (half - half.inverse())
    return out


def geometric_V_pairing(f: SymFunc, mu: Partition) -> FieldElem:
    """(qt)^(-deg f/2) fbar(x_mu), for homogeneous or inhomogeneous f."""
    total = FieldElem.from_number(0)
    x = ideal_point(mu)
    for d in f.degrees():
        total = total + SQRT_QT ** (-d) * evaluate(f.component(d).conjugate_coefficients(), x)
    return total


# --- fixed-point matrix elements of W(m) -----------------------------------------------

class WNormalization:
    """<H_lam, W(m) H_mu> = scale (qt)^((alpha|lam| + beta|mu|)/2) Lambda_{-m shift} E(lam, mu)."""

    __slots__ = ("scale", "alpha", "beta", "shift")

    def __init__(self, scale: FieldElem, alpha: int, beta: int, shift: FieldElem):
        self.scale, self.alpha, self.beta, self.shift = scale, alpha, beta, shift

    def prefactor(self, lam: Partition, mu: Partition) -> FieldElem:
        return self.scale * SQRT_QT ** (self.alpha * sum(lam) + self.beta * sum(mu))

    def __eq__(self, other):
        return (isinstance(other, WNormalization) and self.scale == other.scale
                and (self.alpha, self.beta) == (other.alpha, other.beta) and self.shift == other.shift)

    def __repr__(self):
        return (f"WNormalization(scale={self.scale}, alpha={self.alpha}, beta={self.beta}, "
                f"shift={self.shift})")


FROZEN_W_NORMALIZATION = WNormalization(ONE, 0, 0, (Q * T).inverse())


def _sqrt_qt_exponent(x: FieldElem, bound: int = 12) -> int:
    for a in range(-bound, bound + 1):
        if x == SQRT_QT ** a:
            return a
    raise RuntimeError(f"{x} is not a power of sqrt(qt)")


def fit_W_normalization() -> WNormalization:
    """Fit scale, alpha, beta, shift on the seeds and confirm on ((1),(1))."""
    from .fock import W_operator, matrix_element_H

    W = W_operator(1)
    one = (1,)
    c = matrix_element_H(W, (), ())
    if c.is_zero():
        raise RuntimeError("seed (empty, empty) vanishes")
    left = matrix_element_H(W, one, ()).m_coefficients()    # c (qt)^(alpha/2) (1 - m s)
    right = matrix_element_H(W, (), one).m_coefficients()   # c (qt)^(beta/2) (1 - m s qt)
    if len(left) != 2 or len(right) != 2:
        raise RuntimeError("seed elements are not linear in m")
    alpha = _sqrt_qt_exponent(left[0] / c)
    beta = _sqrt_qt_exponent(right[0] / c)
    shift = -left[1] / left[0]
    fitted = WNormalization(c, alpha, beta, shift)
    if -right[1] / right[0] != shift * Q * T:
        raise RuntimeError("seed (empty, (1)) disagrees with the fitted shift")
    check = matrix_element_H(W, one, one)
    if check != fitted.prefactor(one, one) * lambda_genus(ext_char(one, one), M * shift):
        raise RuntimeError("seed ((1),(1)) disagrees with the fitted normalization")
    return fitted


_active_normalization: WNormalization | None = None


def W_normalization() -> WNormalization:
    """Seed-fitted normalization; must agree with the frozen constants."""
    global _active_normalization
    if _active_normalization is None:
        fitted = fit_W_normalization()
        if fitted != FROZEN_W_NORMALIZATION:
            raise RuntimeError(f"seed fit {fitted} differs from frozen {FROZEN_W_NORMALIZATION}")
        _active_normalization = fitted
    return _active_normalization


def geometric_W_element(lam: Partition, mu: Partition, m=M) -> FieldElem:
    lam, mu = tuple(lam), tuple(mu)
    norm = W_normalization()
    return norm.prefactor(lam, mu) * lambda_genus(ext_char(lam, mu), FieldElem.from_number(m) * norm.shift)
