"""Check the shift formula for T_m^-1 T_(v^-1)^-1 F_i on every admissible triple."""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field

from qcoideal import coideal as cd
from qcoideal.rootsys import get_datum, word_str


@dataclass
class PropShiftConfig:
    types: list = field(default_factory=lambda: ["A3", "B3", "C3"])
    sign: str = "example"


def main(cfg: PropShiftConfig) -> int:
    bad = 0
    for name in cfg.types:
        d = get_datum(name)
        for v, i, m in cd.prop_shift_triples(d):
            st = cd.prop_shift_check(v, i, m, sign=cfg.sign).status
            bad += st != "true"
            print("%s\t%s\ti=%d\tm=%d\t%s" % (name, word_str(v.word), i + 1, m + 1, st))
    return 1 if bad else 0


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("types", nargs="*", default=PropShiftConfig().types)
    p.add_argument("--sign", choices=("example", "literal"), default="example")
    a = p.parse_args()
    raise SystemExit(main(PropShiftConfig(a.types, a.sign)))
