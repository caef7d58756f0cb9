"""Ratio of the operator side to the bare principal-specialization side.

If the bare form were right the ratio would be 1.  The script prints the
ratio for each (mu, nu), checks it does not depend on nu, and compares it
with the limiting product of q-Pochhammer quotients.
"""
from dataclasses import dataclass

from _config import parse_config
from hilbvertex.corealg import partitions_upto
from hilbvertex.mmc import finmac_lhs, finmac_rhs_literal, finmac_stable_factor


@dataclass
class FinmacConfig:
    max_size: int = 3


def main(argv=None):
    cfg = parse_config(FinmacConfig, __doc__, argv)
    parts = partitions_upto(cfg.max_size)
    bad = 0
    for mu in parts:
        ratios = {nu: finmac_lhs(mu, nu) / finmac_rhs_literal(mu, nu) for nu in parts}
        distinct = set(ratios.values())
        factor = finmac_stable_factor(mu)
        same = distinct == {factor}
        bad += not same
        ratio = next(iter(distinct)) if len(distinct) == 1 else "depends on nu"
        print(f"mu={mu}: ratio {ratio}; matches product factor: {same}")
    print(f"{len(parts) - bad}/{len(parts)} shapes agree with the product factor")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    raise SystemExit(main())
