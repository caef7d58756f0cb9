"""Macdonald polynomials P, J, H, the T operator and interpolation polynomials.

P_mu comes from Gram-Schmidt on monomial functions under the (q,t) inner
product, processed in increasing lexicographic order (a linear extension of
dominance).  Results for a whole degree are computed together and can be
persisted to a small JSON cache, one file per degree.
"""
from __future__ import annotations

import json
import os
import tempfile
import threading
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path

from . import __version__
from .corealg import (
    MONOMIAL_ORDER,
    ONE,
    ZERO,
    FieldElem,
    Partition,
    Q,
    T,
    U,
    V,
    arm,
    cells,
    conjugate_partition,
    contains,
    leg,
    n_stat,
    partitions_of,
    qt_monomial,
)
from .symfunc import (
    AlphabetPoint,
    SymFunc,
    evaluate,
    herm,
    inner_qt,
    monomial,
    upsilon,
)

CACHE_ENV = "HILBVERTEX_CACHE_DIR"


@dataclass(frozen=True)
class MacdonaldRecord:
    mu: Partition
    P: SymFunc
    J: SymFunc
    H: SymFunc
    norm_qt: FieldElem
    norm_herm: FieldElem


# --- cache -------------------------------------------------------------------

class DegreeCache:
    """One JSON file per degree holding serialized P, J, H.

    Writes go through a temp file and ``os.replace`` so concurrent writers of
    identical content are last-writer-wins; readers never see partial files.
    """

    def __init__(self, directory: str | os.PathLike):
        self.directory = Path(directory)
        self._lock = threading.Lock()

    def path(self, d: int) -> Path:
        return self.directory / f"macdonald_deg{d}.json"

    def header(self) -> dict:
        return {"format": "hilbvertex-macdonald-cache", "version": __version__,
                "monomial_order": MONOMIAL_ORDER}

    def load(self, d: int) -> dict | None:
        try:
            data = json.loads(self.path(d).read_text())
        except (OSError, ValueError):
            return None
        if data.get("header") != self.header() or data.get("degree") != d:
            return None
        out = {}
        for row in data["records"]:
            mu = tuple(row["mu"])
            out[mu] = {k: SymFunc.deserialize(row[k]) for k in ("P", "J", "H")}
        return out

    def store(self, d: int, records: dict) -> None:
        payload = {
            "header": self.header(),
            "degree": d,
            "records": [
                {"mu": list(mu), **{k: records[mu][k].serialize() for k in ("P", "J", "H")}}
                for mu in partitions_of(d)
            ],
        }
        with self._lock:
            try:
                self.directory.mkdir(parents=True, exist_ok=True)
                fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
                with os.fdopen(fd, "w") as fh:
                    json.dump(payload, fh, indent=1)
                os.replace(tmp, self.path(d))
            except OSError:
                # caching is advisory; an unwritable directory just disables it
                pass


_cache: DegreeCache | None = None
if os.environ.get(CACHE_ENV):
    _cache = DegreeCache(os.environ[CACHE_ENV])


def set_cache_dir(directory: str | os.PathLike | None) -> None:
    global _cache
    _cache = DegreeCache(directory) if directory else None


# --- construction ----------------------------------------------------------------

def _gram_schmidt(d: int) -> dict[Partition, SymFunc]:
    out: dict[Partition, SymFunc] = {}
    norms: dict[Partition, FieldElem] = {}
    for mu in reversed(partitions_of(d)):
        f = monomial(mu)
        m_mu = f
        for nu, pnu in out.items():
            c = inner_qt(m_mu, pnu) / norms[nu]
            if not c.is_zero():
                f = f - pnu * c
        out[mu] = f
        norms[mu] = inner_qt(f, f)
    return out


def hook_product_J(mu: Partition) -> FieldElem:
    """prod over boxes of (1 - q^a t^(l+1))."""
    c = ONE
    for cell in cells(mu):
        c = c * (1 - qt_monomial(arm(mu, cell), leg(mu, cell) + 1))
    return c


def _from_P(mu: Partition, P: SymFunc) -> tuple[SymFunc, SymFunc]:
    J = P * hook_product_J(mu)
    H = upsilon(J.map_coefficients(FieldElem.invert_t)) * qt_monomial(0, n_stat(mu))
    return J, H


_degree_records: dict[int, dict] = {}
_records_lock = threading.Lock()


def degree_records(d: int) -> dict[Partition, dict[str, SymFunc]]:
    """P, J, H for every partition of d (memoized, optionally disk-cached)."""
    with _records_lock:
        if d in _degree_records:
            return _degree_records[d]
    recs = _cache.load(d) if _cache is not None else None
    if recs is None:
        recs = {}
        for mu, P in _gram_schmidt(d).items():
            J, H = _from_P(mu, P)
            recs[mu] = {"P": P, "J": J, "H": H}
        if _cache is not None:
            _cache.store(d, recs)
    with _records_lock:
        _degree_records.setdefault(d, recs)
        return _degree_records[d]


def clear_memory_cache() -> None:
    with _records_lock:
        _degree_records.clear()
    H_norm.cache_clear()
    interpolation_Hstar.cache_clear()


def macdonald_P(mu: Partition) -> SymFunc:
    return degree_records(sum(mu))[tuple(mu)]["P"]


def integral_J(mu: Partition) -> SymFunc:
    return degree_records(sum(mu))[tuple(mu)]["J"]


def modified_H(mu: Partition) -> SymFunc:
    return degree_records(sum(mu))[tuple(mu)]["H"]


def record(mu: Partition) -> MacdonaldRecord:
    mu = tuple(mu)
    r = degree_records(sum(mu))[mu]
    return MacdonaldRecord(mu, r["P"], r["J"], r["H"], inner_qt(r["P"], r["P"]), herm(r["H"], r["H"]))


def cotangent_weights(lam: Partition) -> list[tuple[int, int]]:
    """(a, b) exponent pairs of q^a t^b over the arm/leg cotangent multiset."""
    out = []
    for cell in cells(lam):
        a, l = arm(lam, cell), leg(lam, cell)
        out.append((a + 1, -l))
        out.append((-a, l + 1))
    return out


def hm2_norm(lam: Partition) -> FieldElem:
    """prod over cotangent weights w of (w^1/2 - w^-1/2)."""
    out = ONE
    for a, b in cotangent_weights(lam):
        half = FieldElem.monomial(u=a, v=b)
        out = out * (half - half.inverse())
    return out


def get_basis(mu: Partition, basis: str) -> SymFunc:
    if basis not in ("P", "J", "H"):
        raise ValueError(f"unknown Macdonald basis {basis!r}")
    return degree_records(sum(mu))[tuple(mu)][basis]


# --- H-basis expansion and T ------------------------------------------------------

@lru_cache(maxsize=None)
def H_norm(lam: Partition) -> FieldElem:
    H = modified_H(lam)
    return herm(H, H)


def to_H_basis(f: SymFunc) -> dict[Partition, FieldElem]:
    """Coefficients c_lam with f = sum c_lam H_lam, via orthogonality."""
    out = {}
    for d in f.degrees():
        fd = f.component(d)
        for lam in partitions_of(d):
            c = herm(modified_H(lam), fd) / H_norm(lam)
            if not c.is_zero():
                out[lam] = c
    return out


def from_H_basis(coeffs: dict[Partition, FieldElem]) -> SymFunc:
    total = SymFunc()
    for lam, c in coeffs.items():
        total = total + modified_H(lam) * c
    return total


def T_eigenvalue(lam: Partition) -> FieldElem:
    return qt_monomial(n_stat(conjugate_partition(lam)), n_stat(lam))


def T_operator(f: SymFunc, power: int = 1) -> SymFunc:
    """Diagonal in the H basis with eigenvalue (q^n(lam') t^n(lam))^power."""
    coeffs = to_H_basis(f)
    return from_H_basis({lam: c * T_eigenvalue(lam) ** power for lam, c in coeffs.items()})


# --- interpolation polynomials ---------------------------------------------------------

def _alternating_translation(f: SymFunc) -> SymFunc:
    """exp(sum_n (-1)^(n+1) d/dp_n): substitute p_n -> p_n + (-1)^(n+1)."""
    from .fock import gamma_plus

    return gamma_plus(lambda k: ONE if k % 2 else -ONE, f)


@lru_cache(maxsize=None)
def interpolation_Hstar(mu: Partition) -> SymFunc:
    mu = tuple(mu)
    return T_operator(_alternating_translation(T_operator(modified_H(mu), 1)), -1)


def minus_ideal_point(lam: Partition) -> AlphabetPoint:
    from .localization import ideal_point

    return ideal_point(lam).negate()


def verify_vanishing(mu: Partition, lam: Partition) -> bool:
    """True when H*_mu vanishes at the point ⊖x_lam."""
    return evaluate(interpolation_Hstar(tuple(mu)), minus_ideal_point(tuple(lam))).is_zero()


def fourier_pair(f: SymFunc, mu: Partition) -> FieldElem:
    """(f, H_mu)_Fourier = f(⊖x_mu) H_mu(⊖x_empty)."""
    mu = tuple(mu)
    norm = evaluate(modified_H(mu), minus_ideal_point(()))
    return evaluate(f, minus_ideal_point(mu)) * norm


def fourier_pair_general(f: SymFunc, g: SymFunc) -> FieldElem:
    """Bilinear extension of the Fourier pairing to an arbitrary second slot."""
    total = ZERO
    for lam, c in to_H_basis(g).items():
        total = total + c * fourier_pair(f, lam)
    return total


def top_degree(f: SymFunc) -> SymFunc:
    return f.component(f.max_degree())
