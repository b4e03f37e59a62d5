"""Tabulate the sl2 induced modules: submodule criterion, oracle and quotient maps."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from qcoideal import coideal as cd
from qcoideal import repthy as rt
from qcoideal.qfield import RatFunc, parse


@dataclass
class Sl2Config:
    n_max: int = 3
    window: int = 8
    generic: list = field(default_factory=lambda: ["q + 1", "2*q^3", "q^-1", "3", "q^2 - q^-2"])


def main(cfg: Sl2Config) -> None:
    print("e\tlemma\toracle\tquotient_dim\tinconsistencies\thom_ok")
    for n in range(cfg.n_max + 1):
        for eps in (1, -1):
            spec = rt.sl2_spec_for(RatFunc.qpow(n, eps) * cd.LAMBDA, cfg.window)
            h = rt.sl2_quotient_hom(spec, n, eps)
            print("%s\t%s\t%s\t%d\t%d\t%s" % (spec.values["e"], rt.sl2_submodule_test(spec),
                                              rt.submodule_oracle(spec, cfg.window), n + 1,
                                              h.inconsistencies, h.hom_ok))
    for text in cfg.generic:
        spec = rt.sl2_spec_for(parse(text), cfg.window)
        print("%s\t%s\t%s\t-\t-\t-" % (text, rt.sl2_submodule_test(spec),
                                       rt.submodule_oracle(spec, cfg.window)))


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-max", type=int, default=3)
    p.add_argument("--window", type=int, default=8)
    a = p.parse_args()
    main(Sl2Config(a.n_max, a.window))
