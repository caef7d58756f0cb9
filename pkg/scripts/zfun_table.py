"""Trace of qq^L0 W(m) against the closed product, order by order."""
from dataclasses import dataclass

from _config import parse_config
from hilbvertex.zfun import QuiverSpec, assembled_report, compare_zfun, z_inst_trace


@dataclass
class ZfunConfig:
    order: int = 4
    redefine_mass: bool = False
    r1_order: int = 2
    show_assembled: bool = False
    verbose: bool = False


def main(argv=None):
    cfg = parse_config(ZfunConfig, __doc__, argv)
    rep = compare_zfun(cfg.order, cfg.redefine_mass)
    for d, trace, closed in rep.details["rows"]:
        verdict = "equal" if trace == closed else "DIFFER"
        print(f"qq^{d}: {verdict}")
        if cfg.verbose or d <= 1 or trace != closed:
            print(f"  trace  {trace}\n  closed {closed}")
    print(rep.summary())

    # two-node necklace: coefficient table of qq0^a qq1^b
    if cfg.r1_order:
        series = z_inst_trace(QuiverSpec(1), cfg.r1_order)
        for key in sorted(series):
            val = str(series[key])
            if not cfg.verbose and len(val) > 100:
                val = val[:97] + "..."
            print(f"r=1 qq0^{key[0]} qq1^{key[1]}: {val}")
    if cfg.show_assembled:
        print("\n".join(assembled_report(min(cfg.order, 3))))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
