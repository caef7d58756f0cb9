"""Instanton and perturbative partition functions of the U(1) theories.

Series in the couplings are plain dictionaries keyed by multi-degree tuples;
the couplings themselves never enter the coefficient field.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .corealg import M, ONE, Q, SQRT_QT, T, U, V, ZERO, FieldElem
from .fock import W_operator, _matmul, trace_deg, trace_deg_H
from .reporting import CheckReport

Series = dict  # multi-degree tuple -> FieldElem


@dataclass
class QuiverSpec:
    r: int
    masses: list | None = None

    def __post_init__(self):
        if self.r < 0:
            raise ValueError("r must be nonnegative")
        if self.masses is None:
            self.masses = [M] * (self.r + 1)
        self.masses = [FieldElem.from_number(m) for m in self.masses]
        if len(self.masses) != self.r + 1:
            raise ValueError(f"need {self.r + 1} masses, got {len(self.masses)}")


def _trace(mat) -> FieldElem:
    total = ZERO
    for i in range(len(mat)):
        total = total + mat[i][i]
    return total


def z_inst_trace(spec: QuiverSpec, order: int) -> Series:
    """Tr prod_i q_i^{L_0} W(m_i) through total coupling order `order`.

    The coefficient of prod q_i^{d_i} is tr W_0(d_0,d_1) W_1(d_1,d_2) ... W_r(d_r,d_0).
    """
    ops = [W_operator(order, m) for m in spec.masses]
    out: Series = {}
    n = spec.r + 1
    for degs in itertools.product(range(order + 1), repeat=n):
        if sum(degs) > order:
            continue
        if n == 1:
            val = trace_deg(ops[0], degs[0])
        else:
            prod = ops[0].block(degs[0], degs[1 % n])
            for i in range(1, n):
                prod = _matmul(prod, ops[i].block(degs[i], degs[(i + 1) % n]))
            val = _trace(prod)
        if not val.is_zero():
            out[degs] = val
    return out


def closed_exponent_coefficient(N: int, m: FieldElem) -> FieldElem:
    """q^N coefficient of sum_n Q^n/(n m^n) (m^n-q^n)(m^n-t^n)/((1-Q^n)(1-q^n)(1-t^n)), Q = q m/sqrt(qt)."""
    total = ZERO
    for n in range(1, N + 1):
        if N % n:
            continue
        mn = m ** n
        c = (mn - Q ** n) * (mn - T ** n) / (mn * (1 - Q ** n) * (1 - T ** n))
        total = total + c / n
    return total * (m / SQRT_QT) ** N


def exp_series(log: list[FieldElem]) -> list[FieldElem]:
    """Coefficients of exp(sum_{k>=1} log[k] x^k)."""
    F = [ONE]
    for n in range(1, len(log)):
        acc = ZERO
        for k in range(1, n + 1):
            acc = acc + log[k] * k * F[n - k]
        F.append(acc / n)
    return F


def z_inst_closed(order: int, m: FieldElem = M, redefine_mass: bool = False) -> list[FieldElem]:
    """Closed-form coefficients of q^0..q^order; redefine_mass substitutes m -> m q t."""
    m = FieldElem.from_number(m)
    if redefine_mass:
        m = m * Q * T
    log = [ZERO] + [closed_exponent_coefficient(N, m) for N in range(1, order + 1)]
    return exp_series(log)


def r1_vacuum_sector(order: int, m0: FieldElem, m1: FieldElem) -> list[FieldElem]:
    """Coefficients of q_0^d q_1^0 for r = 1 in closed form.

    Only the vacuum of the second factor contributes, giving
    exp(-sum_k (1-m1^k)(1-(qt/m0)^k) x^k / (k(1-q^k)(1-t^k))) with x = q_0 m0/sqrt(qt).
    The powers m^k are Adams substitutions, so non-monomial masses are allowed.
    """
    m0, m1 = FieldElem.from_number(m0), FieldElem.from_number(m1)
    log = [ZERO]
    for k in range(1, order + 1):
        qk, tk = Q ** k, T ** k
        g = -(1 - m1.adams(k)) * (1 - (Q * T / m0).adams(k)) / (k * (1 - qk) * (1 - tk))
        log.append(g * (m0 / SQRT_QT) ** k)
    return exp_series(log)


# --- perturbative factor: power series in q, t with coefficients in m ---------------------

def _pt_mul(a: dict, b: dict, order: int) -> dict:
    out: dict = {}
    for (i, j), c in a.items():
        for (k, l), d in b.items():
            if i + j + k + l <= order:
                key = (i + k, j + l)
                out[key] = out[key] + c * d if key in out else c * d
    return {k: v for k, v in out.items() if not v.is_zero()}


def z_pert(order: int, m: FieldElem = M) -> dict:
    """exp sum_n (qt)^n (1-m^n)/(n(1-q^n)(1-t^n)) as {(a,b): coefficient of q^a t^b}, a+b <= order."""
    m = FieldElem.from_number(m)
    log: dict = {}
    for n in range(1, order // 2 + 1):
        c = (1 - m ** n) / n
        for i in range(order + 1):
            for j in range(order + 1):
                a, b = n * (1 + i), n * (1 + j)
                if a + b <= order:
                    log[(a, b)] = log[(a, b)] + c if (a, b) in log else c
    out = {(0, 0): ONE}
    power = {(0, 0): ONE}
    for k in range(1, order // 2 + 1):
        power = _pt_mul(power, log, order)
        fact = 1
        for i in range(2, k + 1):
            fact *= i
        for key, v in power.items():
            val = v / fact
            out[key] = out[key] + val if key in out else val
    return {k: v for k, v in out.items() if not v.is_zero()}


def z_pert_product(order: int, m: FieldElem = M) -> dict:
    """prod_{i,j>=0} (1 - m q^(i+1) t^(j+1)) / (1 - q^(i+1) t^(j+1)) truncated at total degree order."""
    m = FieldElem.from_number(m)
    out = {(0, 0): ONE}
    for a in range(1, order + 1):
        for b in range(1, order + 1 - a):
            num = {(0, 0): ONE, (a, b): -m}
            geo = {(a * s, b * s): ONE for s in range(order // (a + b) + 1)}
            out = _pt_mul(_pt_mul(out, num, order), geo, order)
    return out


# --- comparisons ----------------------------------------------------------------------------

def compare_zfun(order: int, redefine_mass: bool = False) -> CheckReport:
    rep = CheckReport("zfun")
    rep.details["redefine_mass"] = redefine_mass
    trace = z_inst_trace(QuiverSpec(0, [M]), order)
    closed = z_inst_closed(order, redefine_mass=redefine_mass)
    rows = []
    for d in range(order + 1):
        a = trace.get((d,), ZERO)
        b = closed[d]
        rows.append((d, str(a), str(b)))
        rep.record(a == b, f"q^{d}: trace {a} vs closed {b}")
    rep.details["rows"] = rows
    return rep


def mass_convention(order: int = 2) -> str:
    """Which mass convention makes the trace agree with the closed form."""
    plain = compare_zfun(order, False).ok
    shifted = compare_zfun(order, True).ok
    if plain and not shifted:
        return "none"
    if shifted and not plain:
        return "m -> m q t"
    return "both" if plain else "neither"


def check_trace_bases(max_deg: int = 4) -> CheckReport:
    rep = CheckReport("trace-basis-independence")
    W = W_operator(max_deg)
    for d in range(max_deg + 1):
        rep.record(trace_deg(W, d) == trace_deg_H(W, d), f"degree {d}")
    return rep


def check_r1_degeneration(order: int = 3, m0: FieldElem = M, m1: FieldElem = None) -> CheckReport:
    """q_1^0 slice of the r = 1 trace against its closed vacuum form."""
    if m1 is None:
        m1 = M * Q
    rep = CheckReport("r1-degeneration")
    series = z_inst_trace(QuiverSpec(1, [m0, m1]), order)
    want = r1_vacuum_sector(order, m0, m1)
    for d in range(order + 1):
        got = series.get((d, 0), ZERO)
        rep.record(got == want[d], f"q0^{d} q1^0")
    return rep


def swap_qt(x: FieldElem) -> FieldElem:
    return x.subs(u=V, v=U)


def check_qt_symmetry(order: int = 4) -> CheckReport:
    rep = CheckReport("closed-form q<->t symmetry")
    for d, c in enumerate(z_inst_closed(order)):
        rep.record(swap_qt(c) == c, f"q^{d}")
    return rep


def check_pert(order: int = 6) -> CheckReport:
    rep = CheckReport("z_pert")
    a, b = z_pert(order), z_pert_product(order)
    for key in sorted(set(a) | set(b)):
        rep.record(a.get(key, ZERO) == b.get(key, ZERO), f"q^{key[0]} t^{key[1]}")
    rep.record(z_pert(order, ONE) == {(0, 0): ONE}, "m = 1 gives 1")
    return rep


def assembled_report(order: int) -> list[str]:
    """Printable Z = Z^pert * Z^inst with both factors expanded."""
    inst = z_inst_closed(order)
    pert = z_pert(order)
    lines = ["Z = Z_pert * Z_inst"]
    lines.append("Z_inst = " + " + ".join(f"({c})*qq^{d}" for d, c in enumerate(inst) if not c.is_zero()))
    lines.append("Z_pert = " + " + ".join(
        f"({c})*q^{a}*t^{b}" for (a, b), c in sorted(pert.items())))
    return lines
