"""Finite-N constant-term identity over a grid of N, k and partitions."""
from dataclasses import dataclass, field

from _config import parse_config
from hilbvertex.corealg import partitions_upto
from hilbvertex.mmc import cherednik_check


@dataclass
class ScanConfig:
    Ns: list = field(default_factory=lambda: [1, 2, 3])
    ks: list = field(default_factory=lambda: [1, 2])
    max_size: int = 2
    prec: int = 10


def main(argv=None):
    cfg = parse_config(ScanConfig, __doc__, argv)
    counts = {"pass": 0, "fail": 0, "inconclusive": 0}
    for N in cfg.Ns:
        for k in cfg.ks:
            for mu in partitions_upto(cfg.max_size):
                for nu in partitions_upto(cfg.max_size):
                    rep = cherednik_check(mu, nu, N, k, cfg.prec)
                    counts[rep.status] += 1
                    if not rep.ok:
                        print(f"N={N} k={k} mu={mu} nu={nu}: {rep.status} {rep.first_failure}")
    print(" ".join(f"{k}={v}" for k, v in counts.items()))
    return 0 if counts["fail"] == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
