"""Symmetric functions in the power-sum basis.

A ``SymFunc`` is a finite sum of p_mu with ``FieldElem`` coefficients.  Basis
changes to Schur and monomial functions use integer/rational transition
matrices (Murnaghan-Nakayama and the monomial expansion of p_mu), computed
once per degree.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping

from .corealg import (
    ONE,
    ZERO,
    FieldElem,
    Partition,
    Q,
    T,
    U,
    V,
    dominates,
    multiplicities,
    partitions_of,
    zee,
)


def _insert_part(mu: Partition, k: int) -> Partition:
    out = list(mu)
    for i, p in enumerate(out):
        if p < k:
            out.insert(i, k)
            return tuple(out)
    out.append(k)
    return tuple(out)


def _merge(a: Partition, b: Partition) -> Partition:
    return tuple(sorted(a + b, reverse=True))


def _remove_part(mu: Partition, k: int) -> Partition:
    out = list(mu)
    out.remove(k)
    return tuple(out)


def order_key(mu: Partition):
    """Sort key: by degree, then reverse-lexicographic within a degree."""
    return (sum(mu), tuple(-p for p in mu))


class SymFunc:
    """Finite linear combination of power sums p_mu."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Partition, FieldElem] | None = None):
        clean = {}
        if terms:
            for mu, c in terms.items():
                c = FieldElem.from_number(c)
                if not c.is_zero():
                    clean[tuple(mu)] = c
        self.terms = clean

    @classmethod
    def p(cls, *parts: int) -> "SymFunc":
        return cls({tuple(sorted(parts, reverse=True)): ONE})

    @classmethod
    def constant(cls, c) -> "SymFunc":
        return cls({(): c})

    # structure ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> list[int]:
        return sorted({sum(mu) for mu in self.terms})

    def max_degree(self) -> int:
        return max((sum(mu) for mu in self.terms), default=-1)

    def component(self, d: int) -> "SymFunc":
        return SymFunc({mu: c for mu, c in self.terms.items() if sum(mu) == d})

    def truncate(self, max_deg: int) -> "SymFunc":
        return SymFunc({mu: c for mu, c in self.terms.items() if sum(mu) <= max_deg})

    def coefficient(self, mu: Partition) -> FieldElem:
        return self.terms.get(tuple(mu), ZERO)

    def map_coefficients(self, fn: Callable[[FieldElem], FieldElem]) -> "SymFunc":
        return SymFunc({mu: fn(c) for mu, c in self.terms.items()})

    def conjugate_coefficients(self) -> "SymFunc":
        return self.map_coefficients(FieldElem.conjugate)

    # arithmetic -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.constant(other)
        out = dict(self.terms)
        for mu, c in other.terms.items():
            out[mu] = out[mu] + c if mu in out else c
        return SymFunc(out)

    __radd__ = __add__

    def __neg__(self):
        return SymFunc({mu: -c for mu, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, SymFunc):
            out: dict[Partition, FieldElem] = {}
            for a, ca in self.terms.items():
                for b, cb in other.terms.items():
                    key = _merge(a, b)
                    val = ca * cb
                    out[key] = out[key] + val if key in out else val
            return SymFunc(out)
        c = FieldElem.from_number(other)
        if c.is_zero():
            return SymFunc()
        return SymFunc({mu: c * x for mu, x in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, SymFunc):
            other = SymFunc.constant(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def derivative(self, k: int) -> "SymFunc":
        """d/dp_k."""
        out: dict[Partition, FieldElem] = {}
        for mu, c in self.terms.items():
            mult = mu.count(k)
            if mult:
                key = _remove_part(mu, k)
                val = c * mult
                out[key] = out[key] + val if key in out else val
        return SymFunc(out)

    def times_p(self, k: int) -> "SymFunc":
        return SymFunc({_insert_part(mu, k): c for mu, c in self.terms.items()})

    # printing -------------------------------------------------------
    def serialize(self) -> list[tuple[list[int], str]]:
        return [(list(mu), self.terms[mu].serialize()) for mu in sorted(self.terms, key=order_key)]

    @classmethod
    def deserialize(cls, rows: Iterable) -> "SymFunc":
        return cls({tuple(mu): FieldElem.parse(s) for mu, s in rows})

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for mu in sorted(self.terms, key=order_key):
            c = self.terms[mu]
            basis = "p[" + ",".join(map(str, mu)) + "]" if mu else ""
            if not basis:
                out.append(str(c))
            elif c.is_one():
                out.append(basis)
            elif (-c).is_one():
                out.append("-" + basis)
            else:
                cs = str(c)
                if " " in cs and not cs.startswith("("):
                    cs = f"({cs})"
                out.append(f"{cs}*{basis}")
        return " + ".join(out)

    __repr__ = __str__


def sym_arith(f: SymFunc, g, op: str) -> SymFunc:
    if op == "add":
        return f + g
    if op == "mul":
        return f * g
    if op == "scale":
        return f * FieldElem.from_number(g)
    raise ValueError(f"unknown op {op!r}")


def p(*parts: int) -> SymFunc:
    return SymFunc.p(*parts)


# --- transition matrices ----------------------------------------------------

@lru_cache(maxsize=None)
def _mn_character(lam: Partition, mu: Partition) -> int:
    """chi^lam(mu) by the Murnaghan-Nakayama rule on beta-sets."""
    if not mu:
        return 1 if not lam else 0
    r = mu[0]
    n = len(lam)
    beta = [lam[i] + (n - 1 - i) for i in range(n)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - r
        if nb < 0 or nb in bset:
            continue
        sign = (-1) ** sum(1 for x in beta if nb < x < b)
        newbeta = sorted((bset - {b}) | {nb}, reverse=True)
        new_lam = tuple(x - (n - 1 - i) for i, x in enumerate(newbeta))
        new_lam = tuple(x for x in new_lam if x > 0)
        total += sign * _mn_character(new_lam, mu[1:])
    return total


def character(lam: Partition, mu: Partition) -> int:
    return _mn_character(tuple(lam), tuple(mu))


@lru_cache(maxsize=None)
def _p_to_m_counts(mu: Partition, lam: Partition) -> int:
    """Coefficient of m_lam in p_mu: ordered fillings of lam's rows by parts of mu."""
    target = list(lam)

    def fill(i: int) -> int:
        if i == len(mu):
            return 1 if all(x == 0 for x in target) else 0
        count = 0
        for j in range(len(target)):
            if target[j] >= mu[i]:
                target[j] -= mu[i]
                count += fill(i + 1)
                target[j] += mu[i]
        return count

    return fill(0)


@lru_cache(maxsize=None)
def _m_in_p(n: int) -> dict[Partition, dict[Partition, Fraction]]:
    """m_lam expanded in power sums, for all lam of size n."""
    parts = partitions_of(n)
    idx = {lam: i for i, lam in enumerate(parts)}
    size_ = len(parts)
    # R[mu][lam]: p_mu = sum_lam R m_lam ; invert R
    R = [[Fraction(_p_to_m_counts(mu, lam)) for lam in parts] for mu in parts]
    inv = _invert_fraction_matrix(R)
    # m_lam = sum_mu inv[lam][mu] p_mu  (inv is R^{-1} with R acting p = R m)
    out = {}
    for lam in parts:
        row = {}
        for mu in parts:
            c = inv[idx[lam]][idx[mu]]
            if c:
                row[mu] = c
        out[lam] = row
    assert len(out) == size_
    return out


def _invert_fraction_matrix(A):
    n = len(A)
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    return [row[n:] for row in aug]


def schur(lam: Partition) -> SymFunc:
    lam = tuple(lam)
    return SymFunc({mu: FieldElem.from_number(Fraction(character(lam, mu), zee(mu)))
                    for mu in partitions_of(sum(lam)) if character(lam, mu)})


def monomial(lam: Partition) -> SymFunc:
    lam = tuple(lam)
    return SymFunc({mu: FieldElem.from_number(c) for mu, c in _m_in_p(sum(lam))[lam].items()})


def basis_element(kind: str, lam: Partition) -> SymFunc:
    if kind == "power":
        return SymFunc({tuple(lam): ONE})
    if kind == "schur":
        return schur(lam)
    if kind == "monomial":
        return monomial(lam)
    raise ValueError(f"unknown basis {kind!r}")


def basis_convert(f: SymFunc, target: str) -> dict[Partition, FieldElem]:
    """Expansion of f in the power, monomial or Schur basis."""
    if target == "power":
        return dict(f.terms)
    out: dict[Partition, FieldElem] = {}
    for mu, c in f.terms.items():
        n = sum(mu)
        for lam in partitions_of(n):
            if target == "schur":
                coeff = character(lam, mu)
            elif target == "monomial":
                coeff = _p_to_m_counts(mu, lam)
            else:
                raise ValueError(f"unknown basis {target!r}")
            if coeff:
                val = c * coeff
                out[lam] = out[lam] + val if lam in out else val
    return {lam: c for lam, c in out.items() if not c.is_zero()}


def from_basis(expansion: Mapping[Partition, FieldElem], source: str) -> SymFunc:
    total = SymFunc()
    for lam, c in expansion.items():
        total = total + basis_element(source, lam) * c
    return total


# --- inner products -----------------------------------------------------------

@lru_cache(maxsize=None)
def qt_weight(mu: Partition) -> FieldElem:
    """z(mu) prod (1-q^mu_i)/(1-t^mu_i)."""
    w = FieldElem.from_number(zee(mu))
    for k in mu:
        w = w * (1 - Q.adams(k)) / (1 - T.adams(k))
    return w


@lru_cache(maxsize=None)
def prime_weight(mu: Partition) -> FieldElem:
    w = FieldElem.from_number(zee(mu))
    for k in mu:
        w = w * (1 - Q.adams(k)) * (1 - T.adams(k))
    return w


@lru_cache(maxsize=None)
def w_factor(k: int) -> FieldElem:
    """(q^(k/2) - q^(-k/2)) (t^(k/2) - t^(-k/2))."""
    return (U ** k - U ** (-k)) * (V ** k - V ** (-k))


@lru_cache(maxsize=None)
def herm_weight(mu: Partition) -> FieldElem:
    w = FieldElem.from_number(zee(mu))
    for k in mu:
        w = w * w_factor(k)
    return w


def _diag_pairing(f: SymFunc, g: SymFunc, weight, conj_first: bool) -> FieldElem:
    small, big = (f, g) if len(f.terms) <= len(g.terms) else (g, f)
    total = ZERO
    for mu in small.terms:
        if mu in big.terms:
            a = f.terms[mu]
            if conj_first:
                a = a.conjugate()
            total = total + a * g.terms[mu] * weight(mu)
    return total


def inner_qt(f: SymFunc, g: SymFunc) -> FieldElem:
    return _diag_pairing(f, g, qt_weight, False)


def inner_prime(f: SymFunc, g: SymFunc) -> FieldElem:
    return _diag_pairing(f, g, prime_weight, False)


def herm(f: SymFunc, g: SymFunc) -> FieldElem:
    """Hermitian form: antilinear in f, linear in g."""
    return _diag_pairing(f, g, herm_weight, True)


# --- involutions -------------------------------------------------------------------

def omega(f: SymFunc) -> SymFunc:
    out = {}
    for mu, c in f.terms.items():
        sign = (-1) ** sum(k - 1 for k in mu)
        out[mu] = c if sign > 0 else -c
    return SymFunc(out)


@lru_cache(maxsize=None)
def _upsilon_factor(k: int) -> FieldElem:
    return 1 / (1 - T.adams(k).inverse())


def upsilon(f: SymFunc, direction: str = "forward") -> SymFunc:
    """Algebra automorphism p_k -> p_k / (1 - t^-k) (or its inverse)."""
    if direction not in ("forward", "inverse"):
        raise ValueError("direction must be 'forward' or 'inverse'")
    out = {}
    for mu, c in f.terms.items():
        for k in mu:
            fac = _upsilon_factor(k)
            c = c * fac if direction == "forward" else c / fac
        out[mu] = c
    return SymFunc(out)


def scale_degrees(f: SymFunc, fn: Callable[[int], FieldElem]) -> SymFunc:
    """Multiply the degree-d component by fn(d)."""
    cache: dict[int, FieldElem] = {}
    out = {}
    for mu, c in f.terms.items():
        d = sum(mu)
        if d not in cache:
            cache[d] = FieldElem.from_number(fn(d))
        out[mu] = c * cache[d]
    return SymFunc(out)


# --- evaluation ----------------------------------------------------------------------

class AlphabetPoint:
    """A point of the spectrum: a rule k -> value of p_k."""

    def __init__(self, rule: Callable[[int], FieldElem], name: str = "x"):
        self._rule = rule
        self.name = name
        self._cache: dict[int, FieldElem] = {}

    def p(self, k: int) -> FieldElem:
        if k not in self._cache:
            self._cache[k] = FieldElem.from_number(self._rule(k))
        return self._cache[k]

    @classmethod
    def finite(cls, elems: Iterable, name: str = "finite") -> "AlphabetPoint":
        elems = [FieldElem.from_number(e) for e in elems]

        def rule(k):
            total = ZERO
            for e in elems:
                total = total + e ** k
            return total

        return cls(rule, name)

    @classmethod
    def geometric(cls, start: FieldElem, ratio: FieldElem, name: str = "geometric") -> "AlphabetPoint":
        """The infinite alphabet start, start*ratio, start*ratio^2, ..."""
        return cls(lambda k: start ** k / (1 - ratio ** k), name)

    @classmethod
    def principal(cls, mu: Partition, name: str | None = None) -> "AlphabetPoint":
        """q^(-mu-rho): the alphabet q^-mu_1, q^-mu_2 t, q^-mu_3 t^2, ..."""
        mu = tuple(mu)

        def rule(k):
            qk, tk = Q.adams(k), T.adams(k)
            total = 1 / (1 - tk)
            for i, part in enumerate(mu):
                total = total + (qk ** (-part) - 1) * tk ** i
            return total

        return cls(rule, name or f"q^(-{mu}-rho)")

    def negate(self) -> "AlphabetPoint":
        return AlphabetPoint(lambda k: -self.p(k), f"⊖{self.name}")


def evaluate(f: SymFunc, x: AlphabetPoint) -> FieldElem:
    total = ZERO
    for mu, c in f.terms.items():
        val = c
        for k in mu:
            val = val * x.p(k)
        total = total + val
    return total


def dominance_leq(nu: Partition, mu: Partition) -> bool:
    """nu <= mu in dominance order."""
    return sum(nu) == sum(mu) and dominates(mu, nu)


def rank_list(n: int) -> list[Partition]:
    """Partitions of n, reverse-lexicographic; a linear extension of dominance."""
    return list(partitions_of(n))

