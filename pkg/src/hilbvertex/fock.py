"""Free boson Fock space: Heisenberg generators, vertex operators, V and W(m).

Operators are stored as ``TruncOp``: a dictionary of (d_out, d_in) blocks in
the power-sum basis together with the set of blocks known to be exact.  Reading
any other block raises ``WindowError`` rather than returning a silently
truncated answer.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable

from .corealg import (
    M,
    ONE,
    Q,
    SQRT_QT,
    T,
    ZERO,
    FieldElem,
    Partition,
    multiplicities,
    partitions_of,
    partitions_upto,
    zee,
)
from .macdonald import H_norm, T_operator, modified_H, to_H_basis
from .reporting import CheckReport
from .symfunc import SymFunc, herm, herm_weight, w_factor

Coeff = Callable[[int], FieldElem]


class WindowError(ValueError):
    """A block outside the exactly-known range was requested."""


def _coeff_fn(f) -> Coeff:
    """Plethystic coefficient rule k -> f_[k]; FieldElems use the Adams operation."""
    if callable(f) and not isinstance(f, FieldElem):
        cache: dict[int, FieldElem] = {}

        def rule(k):
            if k not in cache:
                cache[k] = FieldElem.from_number(f(k))
            return cache[k]

        return rule
    f = FieldElem.from_number(f)
    return lru_cache(maxsize=None)(f.adams)


# --- Heisenberg algebra ------------------------------------------------------

def alpha(n: int, f: SymFunc) -> SymFunc:
    """alpha_-n = p_n / ((1-q^n)(1-t^n)), alpha_n = n (qt)^(n/2) d/dp_n (n > 0)."""
    if n == 0:
        raise ValueError("alpha_0 is not part of this representation")
    if n < 0:
        k = -n
        return f.times_p(k) * (1 / ((1 - Q.adams(k)) * (1 - T.adams(k))))
    return f.derivative(n) * (SQRT_QT ** n * n)


def heisenberg_constant(n: int, m: int) -> FieldElem:
    """delta_{n+m,0} n / w(n)."""
    if n + m != 0:
        return ZERO
    return FieldElem.from_number(n) / w_factor(abs(n))


# --- vertex operators --------------------------------------------------------

def _exp_raising(coeff: Coeff, max_deg: int) -> SymFunc:
    """exp(sum_k c_k p_k / k) up to degree max_deg."""
    terms = {}
    for lam in partitions_upto(max_deg):
        c = ONE / zee(lam)
        for k in lam:
            c = c * coeff(k)
        terms[lam] = c
    return SymFunc(terms)


def raising_piece(coeff: Coeff, a: int) -> SymFunc:
    """Degree-a part G_a of exp(sum_k c_k p_k / k)."""
    terms = {}
    for lam in partitions_of(a):
        c = ONE / zee(lam)
        for k in lam:
            c = c * coeff(k)
        terms[lam] = c
    return SymFunc(terms)


def lowering_piece(coeff: Coeff, b: int, f: SymFunc) -> SymFunc:
    """Degree -b part D_b of exp(sum_k c_k d/dp_k) applied to f."""
    total = SymFunc()
    for lam in partitions_of(b):
        g = f
        c = ONE
        for k, mult in multiplicities(lam).items():
            for _ in range(mult):
                g = g.derivative(k)
            fact = 1
            for i in range(2, mult + 1):
                fact *= i
            c = c * coeff(k) ** mult / fact
        total = total + g * c
    return total


def _translate(f: SymFunc, coeff: Coeff) -> SymFunc:
    """Substitute p_k -> p_k + c_k (this is exp(sum c_k d/dp_k))."""
    out: dict[Partition, FieldElem] = {}
    for mu, c in f.terms.items():
        # expand prod_k (p_k + c_k)^{m_k} factor by factor
        partial = {(): c}
        for k in mu:
            ck = coeff(k)
            nxt: dict[Partition, FieldElem] = {}
            for nu, val in partial.items():
                with_k = tuple(sorted(nu + (k,), reverse=True))
                nxt[with_k] = nxt[with_k] + val if with_k in nxt else val
                if not ck.is_zero():
                    shifted = val * ck
                    nxt[nu] = nxt[nu] + shifted if nu in nxt else shifted
            partial = nxt
        for nu, val in partial.items():
            out[nu] = out[nu] + val if nu in out else val
    return SymFunc(out)


def gamma_plus(f_alphabet, g: SymFunc) -> SymFunc:
    """Gamma_+(f) g = exp(sum_k f_[k] d/dp_k) g, exact."""
    return _translate(g, _coeff_fn(f_alphabet))


def gamma_minus(f_alphabet, g: SymFunc, max_deg: int) -> SymFunc:
    """Gamma_-(f) g = exp(sum_k f_[k] p_k / k) g, exact through degree max_deg."""
    if max_deg is None:
        raise ValueError("Gamma_- needs a degree cap")
    coeff = _coeff_fn(f_alphabet)
    series = _exp_raising(coeff, max_deg)
    return (series * g).truncate(max_deg)


def gamma(sign: str, f_alphabet, g: SymFunc, max_deg: int | None = None) -> SymFunc:
    if sign in ("+", "plus"):
        return gamma_plus(f_alphabet, g)
    if sign in ("-", "minus"):
        return gamma_minus(f_alphabet, g, max_deg)
    raise ValueError(f"sign must be '+' or '-', got {sign!r}")


@dataclass(frozen=True)
class VertexArg:
    z: FieldElem

    def __post_init__(self):
        if FieldElem.from_number(self.z).is_zero():
            raise ValueError("vertex argument must be invertible")


def phi_plus_alphabet(z) -> FieldElem:
    """e^{phi_+(z)} = Gamma_-(this)."""
    z = VertexArg(FieldElem.from_number(z)).z
    return -z / ((1 - Q) * (1 - T))


def phi_minus_alphabet(z) -> FieldElem:
    """e^{phi_-(z)} = Gamma_+(this)."""
    z = VertexArg(FieldElem.from_number(z)).z
    return SQRT_QT / z


def exp_phi_plus(z, f: SymFunc, max_deg: int) -> SymFunc:
    return gamma_minus(phi_plus_alphabet(z), f, max_deg)


def exp_phi_minus(z, f: SymFunc) -> SymFunc:
    return gamma_plus(phi_minus_alphabet(z), f)


def phi_plus_series(z, f: SymFunc, max_deg: int) -> SymFunc:
    """phi_+(z) f = -sum_n alpha_-n z^n / n f, degree-capped."""
    z = FieldElem.from_number(z)
    total = SymFunc()
    for n in range(1, max_deg + 1):
        total = total - alpha(-n, f) * (z ** n / n)
    return total.truncate(max_deg)


def phi_minus_series(z, f: SymFunc) -> SymFunc:
    """phi_-(z) f = sum_n alpha_n z^-n / n f."""
    z = FieldElem.from_number(z)
    total = SymFunc()
    for n in range(1, max(f.max_degree(), 0) + 1):
        total = total + alpha(n, f) * (z ** (-n) / n)
    return total


def exponentiate(op: Callable[[SymFunc], SymFunc], f: SymFunc, order: int) -> SymFunc:
    """sum_{j<=order} op^j f / j!, the naive exponential used as a cross-check."""
    total, term = f, f
    for j in range(1, order + 1):
        term = op(term) * (ONE / j)
        total = total + term
    return total


# --- truncated operators ------------------------------------------------------

def _zero_block(e: int, d: int):
    return [[ZERO] * len(partitions_of(d)) for _ in partitions_of(e)]


def _matmul(A, B):
    if not A or not B:
        return [[ZERO] * (len(B[0]) if B else 0) for _ in A]
    n, k, m = len(A), len(B), len(B[0])
    out = []
    for i in range(n):
        row = [ZERO] * m
        Ai = A[i]
        for l in range(k):
            a = Ai[l]
            if a.is_zero():
                continue
            Bl = B[l]
            for j in range(m):
                if not Bl[j].is_zero():
                    row[j] = row[j] + a * Bl[j]
        out.append(row)
    return out


def _matadd(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def _vector(f: SymFunc, d: int):
    return [f.coefficient(mu) for mu in partitions_of(d)]


def _add_opt(a, b):
    return None if a is None or b is None else a + b


@dataclass
class TruncOp:
    """Graded operator restricted to degrees window[0]..window[1].

    ``max_raise``/``max_lower`` bound how far the operator moves degree
    (``None`` means unbounded); they decide which compositions are exact.
    """

    window: tuple[int, int]
    blocks: dict = field(default_factory=dict)
    exact: set = field(default_factory=set)
    max_raise: int | None = None
    max_lower: int | None = None
    name: str = "op"

    # construction ---------------------------------------------------------
    @classmethod
    def from_function(cls, fn: Callable[[SymFunc, int], SymFunc], max_deg: int, *,
                      min_deg: int = 0, max_raise=None, max_lower=None, name="op") -> "TruncOp":
        """Tabulate fn(p_mu, max_deg) for all min_deg <= |mu| <= max_deg.

        fn must return a result exact through degree max_deg.
        """
        op = cls((min_deg, max_deg), max_raise=max_raise, max_lower=max_lower, name=name)
        for d in range(min_deg, max_deg + 1):
            cols = [fn(SymFunc({mu: ONE}), max_deg) for mu in partitions_of(d)]
            for e in range(min_deg, max_deg + 1):
                if max_raise is not None and e - d > max_raise:
                    continue
                if max_lower is not None and d - e > max_lower:
                    continue
                block = [[col.coefficient(lam) for col in cols] for lam in partitions_of(e)]
                if any(not x.is_zero() for row in block for x in row):
                    op.blocks[(e, d)] = block
            for e in range(min_deg, max_deg + 1):
                op.exact.add((e, d))
        return op

    @classmethod
    def diagonal(cls, max_deg: int, fn: Callable[[int], FieldElem], name="diag") -> "TruncOp":
        op = cls((0, max_deg), max_raise=0, max_lower=0, name=name)
        for d in range(max_deg + 1):
            c = FieldElem.from_number(fn(d))
            n = len(partitions_of(d))
            op.blocks[(d, d)] = [[c if i == j else ZERO for j in range(n)] for i in range(n)]
            for e in range(max_deg + 1):
                op.exact.add((e, d))
        return op

    @classmethod
    def identity(cls, max_deg: int) -> "TruncOp":
        return cls.diagonal(max_deg, lambda d: ONE, name="id")

    # access ---------------------------------------------------------------
    def is_exact(self, e: int, d: int) -> bool:
        return (e, d) in self.exact

    def block(self, e: int, d: int):
        if (e, d) not in self.exact:
            raise WindowError(f"block ({e},{d}) of {self.name} is outside its exact window {self.window}")
        return self.blocks.get((e, d)) or _zero_block(e, d)

    def entry(self, lam: Partition, mu: Partition) -> FieldElem:
        e, d = sum(lam), sum(mu)
        i = partitions_of(e).index(tuple(lam))
        j = partitions_of(d).index(tuple(mu))
        return self.block(e, d)[i][j]

    def apply(self, f: SymFunc, out_degrees: Iterable[int] | None = None) -> SymFunc:
        """Apply to f, returning the requested output degrees (default: whole window)."""
        lo, hi = self.window
        outs = list(out_degrees) if out_degrees is not None else list(range(lo, hi + 1))
        terms: dict[Partition, FieldElem] = {}
        for d in f.degrees():
            vec = _vector(f, d)
            for e in outs:
                blk = self.block(e, d)
                for i, lam in enumerate(partitions_of(e)):
                    acc = ZERO
                    for x, y in zip(blk[i], vec):
                        if not x.is_zero() and not y.is_zero():
                            acc = acc + x * y
                    if not acc.is_zero():
                        terms[lam] = terms[lam] + acc if lam in terms else acc
        return SymFunc(terms)

    # algebra ---------------------------------------------------------------
    def compose(self, other: "TruncOp") -> "TruncOp":
        """self after other."""
        lo = max(self.window[0], other.window[0])
        hi = min(self.window[1], other.window[1])
        out = TruncOp((lo, hi), max_raise=_add_opt(self.max_raise, other.max_raise),
                      max_lower=_add_opt(self.max_lower, other.max_lower),
                      name=f"{self.name}*{other.name}")
        for d in range(lo, hi + 1):
            for e in range(lo, hi + 1):
                # intermediate degrees k where other(k,d) and self(e,k) may be nonzero
                k_lo = 0
                if other.max_lower is not None:
                    k_lo = max(k_lo, d - other.max_lower)
                if self.max_raise is not None:
                    k_lo = max(k_lo, e - self.max_raise)
                k_hi = None
                if other.max_raise is not None:
                    k_hi = d + other.max_raise
                if self.max_lower is not None:
                    k_hi = e + self.max_lower if k_hi is None else min(k_hi, e + self.max_lower)
                if k_hi is None:
                    continue
                ks = range(k_lo, k_hi + 1)
                if not all(self.is_exact(e, k) and other.is_exact(k, d) for k in ks):
                    continue
                acc = None
                for k in ks:
                    if (e, k) in self.blocks and (k, d) in other.blocks:
                        prod = _matmul(self.blocks[(e, k)], other.blocks[(k, d)])
                        acc = prod if acc is None else _matadd(acc, prod)
                out.exact.add((e, d))
                if acc is not None and any(not x.is_zero() for row in acc for x in row):
                    out.blocks[(e, d)] = acc
        return out

    __matmul__ = compose

    def scale_output(self, fn: Callable[[int], FieldElem], name: str | None = None) -> "TruncOp":
        """Left-multiply by the diagonal operator fn(L_0)."""
        out = TruncOp(self.window, {}, set(self.exact), self.max_raise, self.max_lower,
                      name or self.name)
        for (e, d), blk in self.blocks.items():
            c = FieldElem.from_number(fn(e))
            out.blocks[(e, d)] = [[x * c for x in row] for row in blk]
        return out

    def map_entries(self, fn: Callable[[FieldElem], FieldElem]) -> "TruncOp":
        out = TruncOp(self.window, {}, set(self.exact), self.max_raise, self.max_lower, self.name)
        for key, blk in self.blocks.items():
            out.blocks[key] = [[fn(x) for x in row] for row in blk]
        return out

    def adjoint(self) -> "TruncOp":
        return adjoint(self)

    def trace_deg(self, d: int) -> FieldElem:
        return trace_deg(self, d)

    def debug_serialize(self) -> list:
        """Block list for golden files: [(e, d, [[str]])] in sorted order."""
        rows = []
        for key in sorted(self.exact):
            blk = self.blocks.get(key)
            if blk is None:
                continue
            rows.append([key[0], key[1], [[x.serialize() for x in row] for row in blk]])
        return rows

    def __eq__(self, other):
        if not isinstance(other, TruncOp) or self.exact != other.exact:
            return NotImplemented if not isinstance(other, TruncOp) else False
        return all(self.block(e, d) == other.block(e, d) for e, d in self.exact)


def adjoint(A: TruncOp) -> TruncOp:
    """Hermitian adjoint for the form herm: (A*)_ij = conj(A_ji) G_j / G_i."""
    out = TruncOp(A.window, max_raise=A.max_lower, max_lower=A.max_raise, name=f"{A.name}^*")
    for (d, e) in A.exact:
        out.exact.add((e, d))
        blk = A.blocks.get((d, e))
        if blk is None:
            continue
        rows_e, cols_d = partitions_of(e), partitions_of(d)
        new = []
        for i, lam in enumerate(rows_e):
            gi = herm_weight(lam)
            new.append([blk[j][i].conjugate() * herm_weight(mu) / gi for j, mu in enumerate(cols_d)])
        out.blocks[(e, d)] = new
    return out


def trace_deg(A: TruncOp, d: int) -> FieldElem:
    blk = A.block(d, d)
    total = ZERO
    for i in range(len(blk)):
        total = total + blk[i][i]
    return total


def block_in_H_basis(A: TruncOp, e: int, d: int):
    """Matrix of the (e,d) block in the modified Macdonald basis."""
    rows = partitions_of(e)
    out = [[ZERO] * len(partitions_of(d)) for _ in rows]
    for j, mu in enumerate(partitions_of(d)):
        image = A.apply(modified_H(mu), out_degrees=[e])
        coeffs = to_H_basis(image)
        for i, lam in enumerate(rows):
            out[i][j] = coeffs.get(lam, ZERO)
    return out


def trace_deg_H(A: TruncOp, d: int) -> FieldElem:
    blk = block_in_H_basis(A, d, d)
    total = ZERO
    for i in range(len(blk)):
        total = total + blk[i][i]
    return total


def matrix_element_H(A: TruncOp, lam: Partition, mu: Partition) -> FieldElem:
    """<H_lam, A H_mu>."""
    image = A.apply(modified_H(tuple(mu)), out_degrees=[sum(lam)])
    return herm(modified_H(tuple(lam)), image)


# --- V and W(m) -----------------------------------------------------------------

V_RAISE_ALPHABET = -ONE / ((1 - Q) * (1 - T))


def _sign_L0(d: int) -> FieldElem:
    return ONE if d % 2 == 0 else -ONE


def apply_V(f: SymFunc, max_deg: int) -> SymFunc:
    """(-1)^{L_0} T e^{phi_+(1)} e^{phi_-(sqrt(qt))} f, exact through max_deg."""
    g = gamma_plus(ONE, f)
    g = gamma_minus(V_RAISE_ALPHABET, g, max_deg)
    g = T_operator(g, 1)
    from .symfunc import scale_degrees

    return scale_degrees(g, _sign_L0)


def W_alphabets(m: FieldElem = M) -> tuple[FieldElem, FieldElem]:
    """(Gamma_- alphabet, Gamma_+ alphabet) of W(m)."""
    m = FieldElem.from_number(m)
    raise_alpha = phi_plus_alphabet(ONE) - phi_plus_alphabet(Q * T / m)
    lower_alpha = phi_minus_alphabet(SQRT_QT) - phi_minus_alphabet(SQRT_QT / m)
    return raise_alpha, lower_alpha


def apply_W(f: SymFunc, max_deg: int, m: FieldElem = M) -> SymFunc:
    """(m/sqrt(qt))^{L_0} e^{phi_+(1)-phi_+(qt/m)} e^{phi_-(sqrt qt)-phi_-(sqrt qt/m)} f."""
    m = FieldElem.from_number(m)
    raise_alpha, lower_alpha = W_alphabets(m)
    g = gamma_plus(lower_alpha, f)
    g = gamma_minus(raise_alpha, g, max_deg)
    from .symfunc import scale_degrees

    ratio = m / SQRT_QT
    return scale_degrees(g, lambda d: ratio ** d)


def op_V(f: SymFunc, max_deg: int) -> SymFunc:
    return apply_V(f, max_deg)


def op_W(f: SymFunc, max_deg: int, m: FieldElem = M) -> SymFunc:
    return apply_W(f, max_deg, m)


@lru_cache(maxsize=None)
def V_operator(max_deg: int) -> TruncOp:
    return TruncOp.from_function(apply_V, max_deg, name="V")


@lru_cache(maxsize=None)
def W_operator(max_deg: int, m: FieldElem = M) -> TruncOp:
    return TruncOp.from_function(lambda f, n: apply_W(f, n, m), max_deg, name="W")


# --- (x)_{q,t} ---------------------------------------------------------------------

def qt_pochhammer_series(order: int, scale: FieldElem = ONE) -> list[FieldElem]:
    """Coefficients of y^0..y^order in (scale*y)_{q,t} = exp(-sum (scale y)^k/(k(1-q^k)(1-t^k)))."""
    scale = FieldElem.from_number(scale)
    G = [ZERO] + [-(scale ** k) / (k * (1 - Q.adams(k)) * (1 - T.adams(k))) for k in range(1, order + 1)]
    F = [ONE]
    for n in range(1, order + 1):
        acc = ZERO
        for k in range(1, n + 1):
            acc = acc + G[k] * k * F[n - k]
        F.append(acc / n)
    return F


# --- identity checks -------------------------------------------------------------------

def _fmt(block) -> str:
    return "[" + "; ".join(", ".join(str(x) for x in row) for row in block) + "]"


def check_heisenberg(max_index: int = 5, max_deg: int = 6) -> CheckReport:
    rep = CheckReport("heisenberg")
    basis = partitions_upto(max_deg)
    idx = [n for n in range(-max_index, max_index + 1) if n != 0]
    for n in idx:
        for m in idx:
            if m < n:
                continue
            c = heisenberg_constant(n, m)
            for mu in basis:
                f = SymFunc({mu: ONE})
                lhs = alpha(n, alpha(m, f)) - alpha(m, alpha(n, f))
                rep.record(lhs == f * c, lambda: f"[a_{n},a_{m}] on p{mu}: {lhs} vs {f * c}")
    return rep


def check_vertex_exponentials(max_deg: int = 3, z=ONE) -> CheckReport:
    """Gamma forms of e^{phi_pm(z)} against naive exponentials of alpha sums."""
    rep = CheckReport("vertex-exponentials")
    for f in (SymFunc.constant(ONE), SymFunc.p(1)):
        lhs = exp_phi_plus(z, f, max_deg)
        rhs = exponentiate(lambda g: phi_plus_series(z, g, max_deg), f, max_deg).truncate(max_deg)
        rep.record(lhs == rhs, f"e^phi+ on {f}")
        lhs = exp_phi_minus(z, f)
        rhs = exponentiate(lambda g: phi_minus_series(z, g), f, max(f.max_degree(), 0))
        rep.record(lhs == rhs, f"e^phi- on {f}")
    return rep


def check_comm_phi(order: int = 4, max_deg: int = 3) -> CheckReport:
    """e^{phi_-(z)} e^{phi_+(w)} = (sqrt(qt) w/z)_{q,t} e^{phi_+(w)} e^{phi_-(z)}.

    Both sides are double series in the markers w and 1/z; we compare the
    coefficient of w^a z^-b for a, b <= order on every p_mu with |mu| <= max_deg.
    """
    rep = CheckReport("comm_phi")
    plus_coeff = _coeff_fn(phi_plus_alphabet(ONE))    # w enters as w^a on G_a
    minus_coeff = _coeff_fn(phi_minus_alphabet(ONE))  # z enters as z^-b on D_b
    kappa = qt_pochhammer_series(order, SQRT_QT)
    G = [raising_piece(plus_coeff, a) for a in range(order + 1)]
    for mu in partitions_upto(max_deg):
        f = SymFunc({mu: ONE})
        D = [lowering_piece(minus_coeff, b, f) for b in range(order + 1)]
        for a in range(order + 1):
            Ga_f = G[a] * f
            for b in range(order + 1):
                lhs = lowering_piece(minus_coeff, b, Ga_f)
                rhs = SymFunc()
                for c in range(min(a, b) + 1):
                    rhs = rhs + G[a - c] * D[b - c] * kappa[c]
                rep.record(lhs == rhs, lambda: f"w^{a} z^-{b} on p{mu}: lhs {lhs} vs rhs {rhs}")
    return rep


def check_thm1(max_deg: int = 2, m_order: int = 4) -> CheckReport:
    """W(m) = (m)_{q,t} V^* (m/sqrt(qt))^{L_0} V, blockwise to order m^m_order."""
    rep = CheckReport("thm1")
    N = max(max_deg, m_order)
    Vop = V_operator(N)
    Vstar = adjoint(Vop)
    Wop = W_operator(max_deg)
    poch = qt_pochhammer_series(m_order)
    rep.details["pochhammer_m1"] = str(poch[1]) if m_order >= 1 else None
    for e in range(max_deg + 1):
        for d in range(max_deg + 1):
            # S_k = V*(e,k) V(k,d) carries m^k (qt)^(-k/2)
            S = [_matmul(Vstar.block(e, k), Vop.block(k, d)) for k in range(m_order + 1)]
            lhs_blk = Wop.block(e, d)
            lhs_coeffs = [[x.m_coefficients() for x in row] for row in lhs_blk]
            for j in range(m_order + 1):
                rhs = _zero_block(e, d)
                for k in range(j + 1):
                    c = poch[j - k] * SQRT_QT ** (-k)
                    rhs = _matadd(rhs, [[x * c for x in row] for row in S[k]])
                lhs_j = [[cs[j] if j < len(cs) else ZERO for cs in row] for row in lhs_coeffs]
                rep.record(lhs_j == rhs, lambda: f"block ({e},{d}) m^{j}: lhs {_fmt(lhs_j)} vs rhs {_fmt(rhs)}")
    return rep


def check_thm2(max_deg: int = 4) -> CheckReport:
    """<f, V H_mu> = (qt)^{-deg f/2} fbar(x_mu) on f = p_nu."""
    from .localization import ideal_point
    from .symfunc import evaluate

    rep = CheckReport("thm2")
    Vop = V_operator(max_deg)
    for mu in partitions_upto(max_deg):
        image = Vop.apply(modified_H(mu))
        x = ideal_point(mu)
        for nu in partitions_upto(max_deg):
            f = SymFunc({nu: ONE})
            lhs = herm(f, image)
            rhs = SQRT_QT ** (-sum(nu)) * evaluate(f.conjugate_coefficients(), x)
            rep.record(lhs == rhs, lambda: f"nu={nu}, mu={mu}: lhs {lhs} vs rhs {rhs}")
    return rep


def check_cor1(max_deg: int = 3) -> CheckReport:
    """<H_lam, W(m) H_mu> against the fixed-point formula."""
    from .localization import geometric_W_element

    rep = CheckReport("cor1")
    Wop = W_operator(max_deg)
    for lam in partitions_upto(max_deg):
        for mu in partitions_upto(max_deg):
            lhs = matrix_element_H(Wop, lam, mu)
            rhs = geometric_W_element(lam, mu)
            rep.record(lhs == rhs, lambda: f"lam={lam}, mu={mu}: operator {lhs} vs fixed-point {rhs}")
    return rep


def check_hm2(max_deg: int = 5) -> CheckReport:
    from .macdonald import hm2_norm

    rep = CheckReport("hm2")
    for d in range(max_deg + 1):
        parts = partitions_of(d)
        for lam in parts:
            for mu in parts:
                val = herm(modified_H(lam), modified_H(mu))
                want = hm2_norm(lam) if lam == mu else ZERO
                rep.record(val == want, lambda: f"lam={lam}, mu={mu}: {val} vs {want}")
    return rep


def W_at_qt_structure(max_deg: int = 2) -> CheckReport:
    """W(qt) only lowers degree; its diagonal blocks are (qt)^{d/2} <H,H> in the H basis."""
    rep = CheckReport("W(qt)")
    Wop = W_operator(max_deg, Q * T)
    for lam in partitions_upto(max_deg):
        for mu in partitions_upto(max_deg):
            val = matrix_element_H(Wop, lam, mu)
            if sum(lam) > sum(mu):
                want = ZERO
            elif sum(lam) == sum(mu):
                want = SQRT_QT ** sum(lam) * H_norm(lam) if lam == mu else ZERO
            else:
                continue
            rep.record(val == want, f"lam={lam}, mu={mu}")
    return rep
