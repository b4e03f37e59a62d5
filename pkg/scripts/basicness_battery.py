"""Restriction of small simple modules to coideal subalgebras and non-basicness witnesses."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from qcoideal import coideal as cd
from qcoideal import repthy as rt
from qcoideal.qfield import ONE
from qcoideal.rootsys import get_datum, word_str


@dataclass
class BatteryConfig:
    weights: list = field(default_factory=lambda: [(1, 0), (0, 1), (1, 1)])
    lattice: tuple = ((1, 1),)


def main(cfg: BatteryConfig) -> None:
    d = get_datum("A2")
    mods = {lam: rt.simple_module(d, lam) for lam in cfg.weights}
    print("# k[L]U^-[w] restricted to L(lambda)")
    for w in d.all_elements():
        C = cd.build_presentation(w, {}, cfg.lattice, d.identity(), {}, 12)
        flags = [rt.restrict_and_factor(L, C).all_one_dimensional for L in mods.values()]
        print("%-8s %s" % (word_str(w.word), " ".join("1-dim" if f else "NOT" for f in flags)))
    print("# witnesses")
    a1 = get_datum("A1")
    s = a1.element((0,))
    cases = [("Uq(sl2)", cd.build_presentation(s, {}, a1.simple, s, {}, 12), [(1,)]),
             ("B(1,1)", cd.sl2_borel(ONE, ONE), [(1,)]),
             ("B(lambda,lambda')", cd.sl2_borel(), [(1,)])]
    cases += [(k, cd.sl3_borel(k), cfg.weights) for k in ("homogeneous", "type1", "type2")]
    for name, C, ws in cases:
        r = cd.nonbasic_witness(C, ws)
        print("%-18s %-26s %s %s" % (name, r.status, r.route, r.trace_power))


if __name__ == "__main__":
    argparse.ArgumentParser(description=__doc__).parse_args()
    main(BatteryConfig())
