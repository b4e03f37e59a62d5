"""Run the Conjecture-A sweep over several root data and write one JSONL report each."""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path

from qcoideal import cli


@dataclass
class SweepConfig:
    types: list = field(default_factory=lambda: ["A2", "A3", "G2", "B3", "C3"])
    window: int | None = None
    jobs: int = 1
    out_dir: Path = Path("results/conja")


def main(cfg: SweepConfig) -> int:
    cfg.out_dir.mkdir(parents=True, exist_ok=True)
    worst = 0
    for name in cfg.types:
        argv = ["sweep-conja", "--type", name, "--jobs", str(cfg.jobs),
                "--out", str(cfg.out_dir / ("%s.jsonl" % name))]
        if cfg.window:
            argv += ["--window", str(cfg.window)]
        code = cli.run(argv)
        print("%s: exit %d" % (name, code), file=sys.stderr)
        worst = max(worst, code)
    return worst


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("types", nargs="*", default=SweepConfig().types)
    p.add_argument("--window", type=int)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--out-dir", type=Path, default=SweepConfig.out_dir)
    a = p.parse_args()
    sys.exit(main(SweepConfig(a.types, a.window, a.jobs, a.out_dir)))
