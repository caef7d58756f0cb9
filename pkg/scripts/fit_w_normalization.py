"""Fit the fixed-point normalization of W(m) on seeds, then test it wider."""
from dataclasses import dataclass

from _config import parse_config
from hilbvertex.fock import W_operator, matrix_element_H
from hilbvertex.localization import FROZEN_W_NORMALIZATION, ext_char, fit_W_normalization, lambda_genus
from hilbvertex.corealg import M, partitions_upto


@dataclass
class FitConfig:
    max_degree: int = 3


def main(argv=None):
    cfg = parse_config(FitConfig, __doc__, argv)
    fitted = fit_W_normalization()
    print(f"fitted: {fitted}")
    print(f"frozen: {FROZEN_W_NORMALIZATION}  equal: {fitted == FROZEN_W_NORMALIZATION}")
    W = W_operator(cfg.max_degree)
    total = failures = 0
    for lam in partitions_upto(cfg.max_degree):
        for mu in partitions_upto(cfg.max_degree):
            pred = fitted.prefactor(lam, mu) * lambda_genus(ext_char(lam, mu), M * fitted.shift)
            total += 1
            if matrix_element_H(W, lam, mu) != pred:
                failures += 1
                print(f"mismatch at lam={lam}, mu={mu}")
    print(f"{total - failures}/{total} matrix elements agree")
    return 0 if failures == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
