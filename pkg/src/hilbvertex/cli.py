"""Command-line interface.

Exit status: 0 when everything checked passes, 1 on a failed verification,
2 on usage or configuration errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path

from . import __version__
from .corealg import M, Q, FieldElem, contains, parse_partition, partitions_upto
from .reporting import CheckReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
FORMAT_HEADER = f"# hilbvertex-output 1 (hilbvertex {__version__})"
CACHE_ENV = "HILBVERTEX_CACHE_DIR"


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Config:
    max_degree: int = 3
    m_order: int = 4
    q_precision: int = 10
    cache_dir: str | None = None
    output_format: str = "text"

    def validate(self) -> "Config":
        for name in ("max_degree", "m_order", "q_precision"):
            if getattr(self, name) < 0:
                raise UsageError(f"{name} must be nonnegative")
        if self.output_format not in ("text", "structured"):
            raise UsageError("output_format must be 'text' or 'structured'")
        return self


def read_config_file(path: str) -> dict:
    """key = value lines; '#' starts a comment."""
    out = {}
    types = {f.name: f.type for f in fields(Config)}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from exc
    for n, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{n}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in types:
            raise UsageError(f"{path}:{n}: unknown key {key!r}")
        if types[key] in (int, "int"):
            try:
                out[key] = int(value)
            except ValueError as exc:
                raise UsageError(f"{path}:{n}: {key} must be an integer") from exc
        else:
            out[key] = value
    return out


def build_config(args: argparse.Namespace) -> Config:
    cfg = Config()
    env_cache = os.environ.get(CACHE_ENV)
    if env_cache:
        cfg = replace(cfg, cache_dir=env_cache)
    if getattr(args, "config", None):
        cfg = replace(cfg, **read_config_file(args.config))
    overrides = {
        "max_degree": getattr(args, "max_degree", None),
        "m_order": getattr(args, "m_order", None),
        "q_precision": getattr(args, "qprec", None),
        "cache_dir": getattr(args, "cache_dir", None),
        "output_format": getattr(args, "format", None),
    }
    cfg = replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
    return cfg.validate()


# --- output ---------------------------------------------------------------------

class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout
        self.rows: list[tuple[str, str]] = []
        self.text: list[str] = []

    def kv(self, key: str, value) -> None:
        self.rows.append((key, _one_line(value)))

    def line(self, text: str) -> None:
        self.text.append(text)

    def report(self, rep: CheckReport, prefix: str = "") -> None:
        self.kv(f"{prefix}status", rep.status)
        self.kv(f"{prefix}checked", rep.checked)
        if rep.first_failure:
            self.kv(f"{prefix}first_failure", rep.first_failure)
        self.line(rep.summary())

    def flush(self) -> None:
        if self.fmt == "structured":
            print(FORMAT_HEADER, file=self.stream)
            for k, v in self.rows:
                print(f"{k}={v}", file=self.stream)
        else:
            for t in self.text:
                print(t, file=self.stream)


def _one_line(value) -> str:
    return str(value).replace("\n", " ")


def _partition_arg(text: str):
    try:
        return parse_partition(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


# --- commands -----------------------------------------------------------------------

def cmd_macdonald(args, cfg, out: Output) -> int:
    from .macdonald import get_basis

    f = get_basis(args.mu, args.basis)
    out.kv("mu", ",".join(map(str, args.mu)))
    out.kv("basis", args.basis)
    for mu, coeff in f.serialize():
        out.kv(f"coeff.p[{','.join(map(str, mu))}]", coeff)
    out.line(str(f))
    return EXIT_OK


def cmd_interp(args, cfg, out: Output) -> int:
    from .macdonald import interpolation_Hstar, verify_vanishing

    f = interpolation_Hstar(args.mu)
    out.kv("mu", ",".join(map(str, args.mu)))
    for mu, coeff in f.serialize():
        out.kv(f"coeff.p[{','.join(map(str, mu))}]", coeff)
    out.line(f"H*_{args.mu} = {f}")
    if not args.check_vanishing:
        return EXIT_OK
    rep = CheckReport("vanishing")
    bound = args.max if args.max is not None else cfg.max_degree
    for lam in partitions_upto(bound):
        vanishes = verify_vanishing(args.mu, lam)
        expected = not contains(lam, args.mu)
        rep.record(vanishes == expected, f"lam={lam}: vanishes={vanishes}, expected {expected}")
        key = ",".join(map(str, lam)) or "empty"
        out.kv(f"vanish[{key}]", "zero" if vanishes else "nonzero")
        out.line(f"  lam={lam}: {'zero' if vanishes else 'nonzero'}")
    out.report(rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify(args, cfg, out: Output) -> int:
    from . import fock

    d = cfg.max_degree
    suite = args.suite
    if suite == "thm2":
        rep = fock.check_thm2(d)
    elif suite == "cor1":
        rep = fock.check_cor1(d)
    elif suite == "thm1":
        rep = fock.check_thm1(d, cfg.m_order)
    elif suite == "comm":
        rep = fock.check_comm_phi(cfg.m_order, d)
        rep.merge(fock.check_heisenberg(min(5, d + 2), d + 1))
    elif suite == "hm2":
        rep = fock.check_hm2(d)
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown suite {suite}")
    out.kv("suite", suite)
    out.kv("max_degree", d)
    out.report(rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_ext(args, cfg, out: Output) -> int:
    from .fock import W_operator, matrix_element_H
    from .localization import ext_char, geometric_W_element

    E = ext_char(args.lam, args.mu)
    geo = geometric_W_element(args.lam, args.mu)
    deg = max(sum(args.lam), sum(args.mu))
    op = matrix_element_H(W_operator(deg), args.lam, args.mu)
    rep = CheckReport("ext")
    rep.record(geo == op, f"fixed-point {geo} vs operator {op}")
    weights = " ".join(str(FieldElem.monomial(u=a, v=b)) for a, b in E.weights())
    out.kv("weights", weights)
    out.kv("rank", E.rank())
    out.kv("matrix_element", geo)
    out.line(f"E({args.lam},{args.mu}) weights: {weights}")
    out.line(f"<H_lam, W(m) H_mu> = {geo}")
    out.report(rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_zfun(args, cfg, out: Output) -> int:
    from . import zfun

    order = args.order
    if args.r == 0:
        rep = zfun.compare_zfun(order, redefine_mass=args.redefine_mass)
        for d, trace, closed in rep.details["rows"]:
            out.kv(f"trace[{d}]", trace)
            out.kv(f"closed[{d}]", closed)
            out.line(f"q^{d}: trace  = {trace}")
            out.line(f"q^{d}: closed = {closed}")
        out.report(rep)
        return EXIT_OK if rep.ok else EXIT_FAIL
    masses = [M * Q ** i for i in range(args.r + 1)]
    spec = zfun.QuiverSpec(args.r, masses)
    series = zfun.z_inst_trace(spec, order)
    out.kv("masses", " ".join(str(m) for m in masses))
    for degs in sorted(series):
        key = ",".join(map(str, degs))
        out.kv(f"trace[{key}]", series[degs])
        out.line(f"q^{degs}: {series[degs]}")
    rep = CheckReport("zfun")
    if args.r == 1:
        rep = zfun.check_r1_degeneration(order, masses[0], masses[1])
    out.report(rep)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_mmc(args, cfg, out: Output) -> int:
    from .mmc import cherednik_check, finmac_check

    rep = cherednik_check(args.mu, args.nu, args.N, args.k, cfg.q_precision)
    out.kv("N", args.N)
    out.kv("k", args.k)
    out.kv("mu", ",".join(map(str, args.mu)))
    out.kv("nu", ",".join(map(str, args.nu)))
    for key in ("lhs", "rhs"):
        if key in rep.details:
            out.kv(key, rep.details[key])
            out.line(f"{key} = {rep.details[key]}")
    out.report(rep)
    status = rep.status
    if args.finmac:
        frep = finmac_check(args.mu, args.nu)
        out.kv("finmac.literal_form_holds", frep.details["literal_form_holds"])
        out.report(frep, "finmac.")
        if frep.status == "fail":
            status = "fail"
    # inconclusive counts as not verified
    return EXIT_OK if status == "pass" else EXIT_FAIL


# --- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value configuration file")
    common.add_argument("--cache-dir", help="directory for the Macdonald cache")
    common.add_argument("--format", choices=["text", "structured"])

    p = argparse.ArgumentParser(prog="hilbvertex", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("macdonald", parents=[common], help="print P, J or H")
    s.add_argument("--mu", type=_partition_arg, required=True)
    s.add_argument("--basis", choices=["P", "J", "H"], default="H")
    s.set_defaults(func=cmd_macdonald)

    s = sub.add_parser("interp", parents=[common], help="interpolation polynomials")
    s.add_argument("--mu", type=_partition_arg, required=True)
    s.add_argument("--check-vanishing", action="store_true")
    s.add_argument("--max", type=int)
    s.set_defaults(func=cmd_interp)

    s = sub.add_parser("verify", parents=[common], help="run an identity suite")
    s.add_argument("suite", choices=["thm2", "cor1", "thm1", "comm", "hm2"])
    s.add_argument("--max-degree", type=int)
    s.add_argument("--m-order", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("ext", parents=[common], help="Ext character and W matrix element")
    s.add_argument("--lam", type=_partition_arg, required=True)
    s.add_argument("--mu", type=_partition_arg, required=True)
    s.set_defaults(func=cmd_ext)

    s = sub.add_parser("zfun", parents=[common], help="partition function series")
    s.add_argument("--r", type=int, default=0)
    s.add_argument("--order", type=int, default=3)
    s.add_argument("--redefine-mass", action="store_true")
    s.set_defaults(func=cmd_zfun)

    s = sub.add_parser("mmc", parents=[common], help="constant-term check")
    s.add_argument("--N", type=int, required=True)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--qprec", type=int)
    s.add_argument("--mu", type=_partition_arg, default=())
    s.add_argument("--nu", type=_partition_arg, default=())
    s.add_argument("--finmac", action="store_true", help="also run the infinite-N form")
    s.set_defaults(func=cmd_mmc)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        cfg = build_config(args)
        if getattr(args, "r", 0) < 0 or getattr(args, "order", 0) < 0:
            raise UsageError("--r and --order must be nonnegative")
        if args.command == "mmc" and (args.N < 1 or args.k < 1):
            raise UsageError("--N and --k must be positive")
        if cfg.cache_dir:
            from .macdonald import set_cache_dir

            set_cache_dir(cfg.cache_dir)
        out = Output(cfg.output_format)
        out.kv("command", args.command)
        code = args.func(args, cfg, out)
        out.kv("exit", code)
        out.flush()
        return code
    except UsageError as exc:
        print(f"hilbvertex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # includes WindowError and malformed inputs
        print(f"hilbvertex: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
