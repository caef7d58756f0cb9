"""Exact coefficient field and partition combinatorics.

Coefficients live in the fraction field Q(u, v, m) where u = q^(1/2) and
v = t^(1/2).  Numerators and denominators are flint ``fmpz_mpoly`` objects
in a fixed graded-lexicographic context, always stored in reduced form.
Partitions are plain tuples of weakly decreasing positive integers.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator

import flint

MONOMIAL_ORDER = "deglex(u,v,m)"

_CTX = flint.fmpz_mpoly_ctx.get(("u", "v", "m"), "deglex")
_PU, _PV, _PM = _CTX.gens()
_PONE = _CTX.from_dict({(0, 0, 0): 1})
_PZERO = _CTX.from_dict({})

Partition = tuple  # tuple[int, ...], weakly decreasing, positive parts


class FieldElem:
    """Element of Q(q^(1/2), t^(1/2), m) kept as a reduced fraction."""

    __slots__ = ("num", "den", "_key")

    def __init__(self, num, den=None, _reduced=False):
        if den is None:
            den = _PONE
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            num, den = _reduce(num, den)
        self.num = num
        self.den = den
        self._key = None

    # construction -----------------------------------------------------
    @classmethod
    def from_number(cls, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, int):
            return cls(_CTX.from_dict({(0, 0, 0): x}) if x else _PZERO, _PONE, True)
        if isinstance(x, Fraction):
            return cls(_CTX.from_dict({(0, 0, 0): x.numerator}),
                       _CTX.from_dict({(0, 0, 0): x.denominator}))
        raise TypeError(f"cannot coerce {type(x).__name__} to FieldElem")

    @classmethod
    def monomial(cls, u: int = 0, v: int = 0, m: int = 0, coeff: int = 1) -> "FieldElem":
        """coeff * u^u * v^v * m^m with arbitrary integer exponents."""
        num = {(max(u, 0), max(v, 0), max(m, 0)): coeff}
        den = {(max(-u, 0), max(-v, 0), max(-m, 0)): 1}
        return cls(_CTX.from_dict(num), _CTX.from_dict(den), _reduced=coeff != 0)

    # predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def __bool__(self):
        return not self.num.is_zero()

    def key(self):
        if self._key is None:
            self._key = (tuple(self.num.terms()), tuple(self.den.terms()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, FieldElem):
            try:
                other = FieldElem.from_number(other)
            except TypeError:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash(self.key())

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return FieldElem(self.num + other.num, self.den)
        return FieldElem(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return FieldElem(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        if self.is_zero() or other.is_zero():
            return ZERO
        # cross-cancel first so the products stay small
        g1 = self.num.gcd(other.den)
        g2 = other.num.gcd(self.den)
        n = (self.num // g1) * (other.num // g2)
        d = (self.den // g2) * (other.den // g1)
        return FieldElem(*_normalise_sign(n, d), _reduced=True)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise ZeroDivisionError("FieldElem division by zero")
        return FieldElem(*_normalise_sign(self.den, self.num), _reduced=True)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElem(self.num ** k, self.den ** k, _reduced=True)

    # field maps -------------------------------------------------------
    def conjugate(self) -> "FieldElem":
        """u -> 1/u, v -> 1/v, m fixed."""
        return _conjugate(self)

    def adams(self, k: int) -> "FieldElem":
        """u -> u^k, v -> v^k, m -> m^k."""
        if k < 1:
            raise ValueError("Adams index must be positive")
        if k == 1:
            return self
        return FieldElem(self.num.inflate([k, k, k]), self.den.inflate([k, k, k]), _reduced=True)

    def invert_t(self) -> "FieldElem":
        """t -> 1/t (v -> 1/v), q and m fixed."""
        return _invert_vars(self, (False, True, False))

    def invert_q(self) -> "FieldElem":
        return _invert_vars(self, (True, False, False))

    def subs(self, u=None, v=None, m=None) -> "FieldElem":
        """Substitute FieldElem values for any of the generators."""
        images = [u if u is not None else U, v if v is not None else V, m if m is not None else M]
        images = [_coerce(x) for x in images]
        return _eval_poly(self.num, images) / _eval_poly(self.den, images)

    def specialize_t_power_of_q(self, k: int) -> "FieldElem":
        """t -> q^k (v -> u^k)."""
        return FieldElem(self.num.compose(_PU, _PU ** k, _PM), self.den.compose(_PU, _PU ** k, _PM))

    def m_coefficients(self) -> list["FieldElem"]:
        """Coefficients of a FieldElem that is a polynomial in m."""
        if self.den.degrees()[2] != 0:
            raise ValueError(f"not polynomial in m: {self}")
        buckets: dict[int, dict] = {}
        for (a, b, c), coeff in self.num.terms():
            buckets.setdefault(c, {})[(a, b, 0)] = coeff
        if not buckets:
            return []
        out = [ZERO] * (max(buckets) + 1)
        for c, terms in buckets.items():
            out[c] = FieldElem(_CTX.from_dict(terms), self.den)
        return out

    def u_laurent_terms(self):
        """(exponent, coefficient) pairs when self is a Laurent polynomial in u only."""
        dterms = list(self.den.terms())
        if len(dterms) != 1 or self.num.degrees()[1:] != (0, 0) or self.den.degrees()[1:] != (0, 0):
            raise ValueError("not a Laurent polynomial in u")
        (shift, _, _), c = dterms[0]
        return [(a - shift, Fraction(int(coeff), int(c))) for (a, _, _), coeff in self.num.terms()]

    # printing ---------------------------------------------------------
    def serialize(self) -> str:
        return f"{_poly_str(self.num)} / {_poly_str(self.den)}"

    def __str__(self):
        if self.den == _PONE:
            return _poly_str(self.num)
        n = _poly_str(self.num)
        if len(self.num) > 1:
            n = f"({n})"
        d = _poly_str(self.den)
        if len(self.den) > 1 or "*" in d:
            d = f"({d})"
        return f"{n}/{d}"

    def __repr__(self):
        return f"FieldElem({self.serialize()!r})"

    @classmethod
    def parse(cls, text: str) -> "FieldElem":
        text = text.strip()
        if " / " in text:
            n, d = text.split(" / ")
            return cls(_parse_poly(n), _parse_poly(d))
        return _parse_compact(text)


def _coerce(x):
    if isinstance(x, FieldElem):
        return x
    if isinstance(x, (int, Fraction)):
        return FieldElem.from_number(x)
    return None


def _normalise_sign(n, d):
    if d.leading_coefficient() < 0:
        return -n, -d
    return n, d


def _reduce(num, den):
    if num.is_zero():
        return _PZERO, _PONE
    g = num.gcd(den)
    if not g.is_one():
        num = num // g
        den = den // g
    return _normalise_sign(num, den)


def _reverse(poly, flags):
    """Return (reversed poly, shift) with poly(1/x) = reversed * x^-shift for flagged x."""
    degs = poly.degrees()
    shift = tuple(d if f else 0 for d, f in zip(degs, flags))
    terms = {}
    for e, c in poly.terms():
        terms[tuple(s - x if f else x for x, s, f in zip(e, shift, flags))] = c
    return _CTX.from_dict(terms), shift


def _invert_vars(a: FieldElem, flags) -> FieldElem:
    if a.is_zero():
        return a
    n, sn = _reverse(a.num, flags)
    d, sd = _reverse(a.den, flags)
    # a(1/x) = n x^-sn / (d x^-sd) = n x^(sd - sn) / d
    num_shift = tuple(max(y - x, 0) for x, y in zip(sn, sd))
    den_shift = tuple(max(x - y, 0) for x, y in zip(sn, sd))
    n = n * _CTX.from_dict({num_shift: 1})
    d = d * _CTX.from_dict({den_shift: 1})
    return FieldElem(n, d)


def _conjugate(a: FieldElem) -> FieldElem:
    return _invert_vars(a, (True, True, False))


def _eval_poly(poly, images) -> "FieldElem":
    total = ZERO
    powers: dict[tuple[int, int], FieldElem] = {}

    def pw(i, e):
        key = (i, e)
        if key not in powers:
            powers[key] = images[i] ** e
        return powers[key]

    for (a, b, c), coeff in poly.terms():
        term = FieldElem.from_number(int(coeff))
        for i, e in enumerate((a, b, c)):
            if e:
                term = term * pw(i, e)
        total = total + term
    return total


# --- canonical string form ---------------------------------------------

def _half_power(name: str, e: int) -> str:
    if e % 2 == 0:
        k = e // 2
        return name if k == 1 else f"{name}^{k}"
    return f"{name}^({e}/2)"


def _monomial_str(exps) -> str:
    a, b, c = exps
    parts = []
    if a:
        parts.append(_half_power("q", a))
    if b:
        parts.append(_half_power("t", b))
    if c:
        parts.append("m" if c == 1 else f"m^{c}")
    return "*".join(parts)


def _poly_str(poly) -> str:
    if poly.is_zero():
        return "0"
    out = []
    for i, (exps, coeff) in enumerate(poly.terms()):
        coeff = int(coeff)
        mono = _monomial_str(exps)
        mag = abs(coeff)
        if mono:
            body = mono if mag == 1 else f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            out.append(body if coeff > 0 else f"-{body}")
        else:
            out.append(f" + {body}" if coeff > 0 else f" - {body}")
    return "".join(out)


_FACTOR = re.compile(r"^(q|t|m)(?:\^(?:\((-?\d+)/2\)|(-?\d+)))?$")


def _parse_term(text: str):
    coeff = 1
    exps = [0, 0, 0]
    for factor in text.split("*"):
        factor = factor.strip()
        if factor.isdigit():
            coeff *= int(factor)
            continue
        mt = _FACTOR.match(factor)
        if not mt:
            raise ValueError(f"bad monomial factor {factor!r}")
        name, half, whole = mt.groups()
        idx = "qtm".index(name)
        if name == "m":
            if half is not None:
                raise ValueError("m has no half-integer powers")
            exps[idx] += int(whole) if whole else 1
        elif half is not None:
            exps[idx] += int(half)
        else:
            exps[idx] += 2 * (int(whole) if whole else 1)
    return tuple(exps), coeff


def _parse_poly(text: str):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        text = text[1:-1].strip()
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:]
    pieces = re.split(r"\s+([+-])\s+", text)
    terms: dict = {}
    signs = [sign] + [1 if s == "+" else -1 for s in pieces[1::2]]
    for s, body in zip(signs, pieces[0::2]):
        exps, coeff = _parse_term(body)
        if min(exps) < 0:
            raise ValueError("negative exponent in polynomial part")
        terms[exps] = terms.get(exps, 0) + s * coeff
    return _CTX.from_dict({k: c for k, c in terms.items() if c})


def _parse_compact(text: str) -> FieldElem:
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "/" and depth == 0:
            return FieldElem(_parse_poly(text[:i]), _parse_poly(text[i + 1:]))
    return FieldElem(_parse_poly(text))


ZERO = FieldElem(_PZERO, _PONE, True)
ONE = FieldElem(_PONE, _PONE, True)
U = FieldElem(_PU, _PONE, True)
V = FieldElem(_PV, _PONE, True)
M = FieldElem(_PM, _PONE, True)
Q = U * U
T = V * V
SQRT_QT = U * V


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Dispatch for the four field operations by name."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}")


def q_pow(e: Fraction | int) -> FieldElem:
    """q^e for e in (1/2)Z."""
    twice = Fraction(e) * 2
    if twice.denominator != 1:
        raise ValueError("only half-integer powers of q are representable")
    return FieldElem.monomial(u=int(twice))


def t_pow(e: Fraction | int) -> FieldElem:
    twice = Fraction(e) * 2
    if twice.denominator != 1:
        raise ValueError("only half-integer powers of t are representable")
    return FieldElem.monomial(v=int(twice))


def qt_monomial(a: int, b: int) -> FieldElem:
    """q^a t^b."""
    return FieldElem.monomial(u=2 * a, v=2 * b)


# --- partitions -----------------------------------------------------------

def partition(parts: Iterable[int]) -> Partition:
    """Validate and return a partition tuple (no silent sorting)."""
    parts = tuple(int(p) for p in parts)
    if any(p <= 0 for p in parts):
        raise ValueError(f"partition parts must be positive: {parts}")
    if any(a < b for a, b in zip(parts, parts[1:])):
        raise ValueError(f"partition parts must be weakly decreasing: {parts}")
    return parts


@lru_cache(maxsize=None)
def partitions_of(n: int) -> tuple[Partition, ...]:
    """All partitions of n in reverse-lexicographic order, (n) first."""
    if n < 0:
        raise ValueError("n must be nonnegative")

    def gen(rest: int, cap: int) -> Iterator[Partition]:
        if rest == 0:
            yield ()
            return
        for first in range(min(rest, cap), 0, -1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return tuple(gen(n, n))


def partitions_upto(n: int) -> list[Partition]:
    return [lam for d in range(n + 1) for lam in partitions_of(d)]


def size(lam: Partition) -> int:
    return sum(lam)


@lru_cache(maxsize=None)
def conjugate_partition(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def cells(lam: Partition) -> Iterator[tuple[int, int]]:
    """Cells (i, j), 1-based, row i of length lam[i-1]."""
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            yield i, j


def arm(lam: Partition, cell: tuple[int, int]) -> int:
    i, j = _check_cell(lam, cell)
    return lam[i - 1] - j


def leg(lam: Partition, cell: tuple[int, int]) -> int:
    i, j = _check_cell(lam, cell)
    return conjugate_partition(lam)[j - 1] - i


def _check_cell(lam, cell):
    i, j = cell
    if not (1 <= i <= len(lam) and 1 <= j <= lam[i - 1]):
        raise ValueError(f"cell {cell} is not in the diagram of {lam}")
    return i, j


def n_stat(lam: Partition) -> int:
    """n(lam) = sum (i-1) lam_i."""
    return sum(i * p for i, p in enumerate(lam))


def multiplicities(lam: Partition) -> dict[int, int]:
    out: dict[int, int] = {}
    for p in lam:
        out[p] = out.get(p, 0) + 1
    return out


@lru_cache(maxsize=None)
def zee(lam: Partition) -> int:
    """Centralizer order z(lam) = prod k^m_k m_k!."""
    out = 1
    for k, mk in multiplicities(lam).items():
        out *= k ** mk * math.factorial(mk)
    return out


def partition_stats(lam: Partition, cell: tuple[int, int] | None = None) -> dict:
    out = {
        "nstat": n_stat(lam),
        "conjugate": conjugate_partition(lam),
        "zcent": zee(lam),
    }
    if cell is not None:
        out["arm"] = arm(lam, cell)
        out["leg"] = leg(lam, cell)
    return out


def contains(big: Partition, small: Partition) -> bool:
    """Young diagram containment small ⊂ big."""
    if len(small) > len(big):
        return False
    return all(s <= b for s, b in zip(small, big))


def dominates(lam: Partition, mu: Partition) -> bool:
    """lam >= mu in dominance order (same size assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "0", "()", "empty"):
        return ()
    try:
        parts = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ValueError(f"cannot parse partition {text!r}") from exc
    return partition(parts)
