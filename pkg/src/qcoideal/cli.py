"""Command-line driver: sweeps, the Borel catalog and induced modules.

Every command writes a report: a ``{"schema": 1, ...}`` header, one record per
case and a ``{"summary": ...}`` footer, as JSON lines or as a TSV projection.
Progress goes to stderr only.  Exit codes: 0 ok, 1 mismatch, 2 usage,
3 constraint violation.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence

from . import coideal as cd
from .qfield import ONE, RatFunc, coerce, parse
from .rootsys import RootSystemError, get_datum, parse_word, word_str

SCHEMA = 1
EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_CONSTRAINT = 0, 1, 2, 3

SWEEP_SET = ("A1", "A2", "A3", "B2", "B3", "C3", "G2")
HEAVY_SWEEP_SET = ("D4",)


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    datum: str = "A2"
    bound: int | None = None
    window: int | None = None
    jobs: int = 1
    out: str | None = None
    fmt: str = "json"
    seed: int = 0
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        for name in ("bound", "window", "jobs"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise UsageError("--%s must be positive" % name)
        if self.fmt not in ("json", "tsv"):
            raise UsageError("--format must be json or tsv")
        try:
            get_datum(self.datum)
        except RootSystemError as exc:
            raise UsageError(str(exc)) from None

    def header(self) -> dict:
        d = asdict(self)
        d.pop("out")
        d.pop("fmt")
        d.pop("jobs")  # parallelism never changes the records
        return {"schema": SCHEMA, **d}


@dataclass
class Outcome:
    records: list
    summary: dict
    code: int = EXIT_OK


# ----------------------------------------------------------------------------
# value parsing

def parse_value(text: str) -> RatFunc:
    """A RatFunc from text; 'lambda' and 'lambda_prime' name the standard constants."""
    t = text.strip()
    named = {"lambda": cd.LAMBDA, "lambda_prime": cd.LAMBDA_PRIME, "lambda'": cd.LAMBDA_PRIME}
    if t in named:
        return named[t]
    try:
        return parse(t)
    except (ValueError, ZeroDivisionError, ArithmeticError) as exc:
        raise UsageError("cannot parse value %r: %s" % (text, exc)) from None


def parse_indices(text: str | None) -> tuple[int, ...]:
    if not text:
        return ()
    return tuple(sorted(int(x) - 1 for x in text.replace("a", "").split(",") if x.strip()))


def parse_vectors(text: str) -> tuple:
    return tuple(tuple(int(x) for x in part.split(",")) for part in text.split(";") if part.strip())


def _progress(k: int, n: int, label: str) -> None:
    print("[%d/%d] %s" % (k, n, label), file=sys.stderr, flush=True)


# ----------------------------------------------------------------------------
# commands

def cmd_conja_sweep(cfg: RunConfig) -> Outcome:
    allowed = SWEEP_SET + (HEAVY_SWEEP_SET if cfg.options.get("heavy") else ())
    if cfg.datum not in allowed:
        raise UsageError("sweep-conja supports %s (D4 needs --heavy), not %s"
                         % (", ".join(allowed), cfg.datum))
    datum = get_datum(cfg.datum)
    timing = cfg.options.get("timing", False)

    def progress(k, n, rep):
        _progress(k, n, "%s %s %s" % (word_str(rep.w), rep.supp, rep.verdict))

    reps = cd.conjA_sweep(datum, window=cfg.window, jobs=cfg.jobs, progress=progress)
    records = []
    for rep in reps:
        r = rep.record()
        if not timing:
            r.pop("seconds", None)
        records.append(r)
    bad = [r for r in records if r["verdict"] != "confirmed"]
    summary = {"cases": len(records), "confirmed": len(records) - len(bad), "mismatches": len(bad)}
    return Outcome(records, summary, EXIT_MISMATCH if bad else EXIT_OK)


def _conjb_status(C: cd.CoidealPresentation) -> str:
    datum = C.datum
    supp = sorted(C.phi_minus.support.indices)
    for c in cd.conjB_candidates(datum):
        csupp = sorted(r.index(1) for r in c.supp)
        if (datum.element(c.w_minus) == C.w_minus and datum.element(c.w_plus) == C.w_plus
                and csupp == supp):
            return "passes (%s)" % c.tag
    return "filtered out"


def _identity_rows(rel: dict, errata: dict | None = None) -> list:
    rows = []
    for name, (lhs, rhs) in rel.items():
        ok = lhs == rhs
        row = {"relation": name, "holds": ok, "lhs": str(lhs), "rhs": str(rhs)}
        if errata and name in errata:
            row["corrected"] = errata[name]
        rows.append(row)
    return rows


def _catalog_entries(name: str, bound: int):
    datum = get_datum(name)
    if name == "A1":
        s, e = datum.element((0,)), datum.identity()
        return [
            ("U<=0", cd.build_presentation(s, {}, datum.simple, e, {}, bound)),
            ("U>=0", cd.build_presentation(e, {}, datum.simple, s, {}, bound)),
            ("B(lambda,lambda')", cd.sl2_borel()),
        ]
    if name == "A2":
        return [(k, cd.sl3_borel(k)) for k in ("homogeneous", "type1", "type2")]
    raise UsageError("catalog supports A1 and A2, not %s" % name)


def cmd_catalog(cfg: RunConfig) -> Outcome:
    bound = cfg.bound or 2
    records = []
    failed = 0
    entries = _catalog_entries(cfg.datum, 12)
    for k, (name, C) in enumerate(entries, 1):
        _progress(k, len(entries), name)
        rec = {"entry": name, **C.describe()}
        chk = cd.verify_coideal(C, bound=bound)
        rec["coideal"] = chk.outcome
        rec["conjecture_b"] = _conjb_status(C)
        ids = []
        if name == "B(lambda,lambda')":
            lhs, rhs = cd.weyl_identity(C)
            ids = _identity_rows({"[E1,F1]_q^2": (lhs, rhs)})
        elif name == "type2":
            corr = cd.sl3_type2_corrected_relations(C)
            corr_rows = {r["relation"]: r for r in _identity_rows(corr)}
            errata = {"[K,E12]_1": corr_rows["[K,E12]_q^3"],
                      "[K,F12]_1": corr_rows["[K,F12]_q^-3"],
                      "[E12,F12]_q^2": corr_rows["[E12,F12]_q^2"]}
            ids = _identity_rows(cd.sl3_type2_relations(C), errata)
        for row in ids:
            good = row["holds"] or row.get("corrected", {}).get("holds", False)
            failed += not good
        rec["identities"] = ids
        if chk.outcome == "false":
            failed += 1
        records.append(rec)
    summary = {"entries": len(records), "failed_checks": failed}
    return Outcome(records, summary, EXIT_MISMATCH if failed else EXIT_OK)


def cmd_induce(cfg: RunConfig) -> Outcome:
    from . import repthy as rt

    o = cfg.options
    N = cfg.window or (4 if cfg.datum == "A1" else 2)
    if cfg.datum == "A1":
        if o.get("e") is None:
            raise UsageError("induce on A1 needs --e")
        e = parse_value(o["e"])
        f = parse_value(o["f"]) if o.get("f") else cd.LAMBDA * cd.LAMBDA_PRIME / e
        spec = rt.InducedSpec("sl2", {"e": e, "f": f}, N)
        spec.check()
        V = rt.induced_sl2(spec)
        rec = {"borel": "B(lambda,lambda')", "values": {"e": str(e), "f": str(f)}, "window": N,
               "module": V.export(), "relation_failures": V.relation_failures()}
        test = rt.sl2_submodule_test(spec)
        oracle = rt.submodule_oracle(spec, cfg.bound or 8)
        rec["submodule_test"] = list(test) if test else None
        rec["submodule_oracle"] = list(oracle) if oracle else None
        if test is None:
            rec["verdict"] = "irreducible"
        else:
            n, eps = test
            h = rt.sl2_quotient_hom(spec, n, eps)
            rec["verdict"] = "reducible"
            rec["quotient"] = {"target": "L(%d,%s)" % (n, "+" if eps > 0 else "-"),
                               "dim": n + 1, "phi0": [str(x) for x in h.phi0],
                               "inconsistencies": h.inconsistencies, "hom_ok": h.hom_ok}
        bad = (test != oracle) or bool(rec["relation_failures"]) or \
            (test is not None and (rec["quotient"]["inconsistencies"] or not rec["quotient"]["hom_ok"]))
        return Outcome([rec], {"verdict": rec["verdict"], "agree": test == oracle},
                       EXIT_MISMATCH if bad else EXIT_OK)
    if cfg.datum == "A2":
        borel = o.get("borel") or "type2"
        if borel not in ("type1", "type2"):
            raise UsageError("--borel must be type1 or type2 on A2")
        if o.get("e") is None:
            raise UsageError("induce on A2 needs --e (the value on E1)")
        e1 = parse_value(o["e"])
        f1 = parse_value(o["f"]) if o.get("f") else cd.LAMBDA * cd.LAMBDA_PRIME / e1
        k = parse_value(o["k"]) if o.get("k") else ONE
        V = rt.induced_sl3(borel, {"e1": e1, "f1": f1, "k": k, "kinv": ONE / k if k else k}, N)
        ind = V.meta["induction"]
        rec = {"borel": borel, "values": {"e1": str(e1), "f1": str(f1), "k": str(k)},
               "window": N, "basis": "(i,j,k)", "module": V.export(),
               "relation_failures": V.relation_failures(),
               "character_failures": ind.character_failures()}
        bad = bool(rec["relation_failures"] or rec["character_failures"])
        return Outcome([rec], {"dim": V.dim, "interior": len(V.interior(1))},
                       EXIT_MISMATCH if bad else EXIT_OK)
    raise UsageError("induce supports A1 and A2, not %s" % cfg.datum)


def _character_values(indices: Sequence[int], text: str | None) -> dict:
    vals = [parse_value(t) for t in text.split(";")] if text else []
    if vals and len(vals) != len(indices):
        raise UsageError("need one value per support index")
    return {i: (vals[k] if vals else ONE) for k, i in enumerate(indices)}


def _presentation(cfg: RunConfig) -> cd.CoidealPresentation:
    o = cfg.options
    datum = get_datum(cfg.datum)
    wm = datum.element(parse_word(o.get("w_minus") or ""))
    wp = datum.element(parse_word(o.get("w_plus") or ""))
    sm = parse_indices(o.get("supp_minus"))
    sp = parse_indices(o.get("supp_plus"))
    lat = parse_vectors(o["lattice"]) if o.get("lattice") else \
        cd.orthogonal_lattice(datum, sorted(set(sm) & set(sp)))
    try:
        return cd.build_presentation(wm, _character_values(sm, o.get("phi_minus")), lat,
                                     wp, _character_values(sp, o.get("phi_plus")), 12)
    except cd.CoidealError as exc:
        raise UsageError(str(exc)) from None


def cmd_verify_coideal(cfg: RunConfig) -> Outcome:
    C = _presentation(cfg)
    chk = cd.verify_coideal(C, bound=cfg.bound or 2)
    rec = {**C.describe(), "outcome": chk.outcome, "span": chk.span_size,
           "failures": [list(f) for f in chk.failures]}
    return Outcome([rec], {"outcome": chk.outcome},
                   EXIT_MISMATCH if chk.outcome == "false" else EXIT_OK)


def cmd_graded(cfg: RunConfig) -> Outcome:
    datum = get_datum(cfg.datum)
    w = datum.element(parse_word(cfg.options.get("w") or ""))
    supp = parse_indices(cfg.options.get("supp"))
    try:
        rep = cd.graded_algebra(w, supp, window=cfg.window)
    except (cd.CoidealError, RootSystemError) as exc:
        raise UsageError(str(exc)) from None
    r = rep.record()
    if not cfg.options.get("timing"):
        r.pop("seconds", None)
    return Outcome([r], {"verdict": rep.verdict},
                   EXIT_OK if rep.verdict == "confirmed" else EXIT_MISMATCH)


_NAMED_BORELS = {"A1": ("standard", "uq", "borel"), "A2": ("homogeneous", "type1", "type2")}


def cmd_nonbasic_witness(cfg: RunConfig) -> Outcome:
    o = cfg.options
    datum = get_datum(cfg.datum)
    name = o.get("borel")
    if name:
        if name not in _NAMED_BORELS.get(cfg.datum, ()):
            raise UsageError("unknown --borel %r for %s" % (name, cfg.datum))
        if cfg.datum == "A2":
            C = cd.sl3_borel(name)
        elif name == "borel":
            lam = parse_value(o["lam"]) if o.get("lam") else cd.LAMBDA
            lamp = parse_value(o["lam_prime"]) if o.get("lam_prime") else cd.LAMBDA_PRIME
            C = cd.sl2_borel(lam, lamp)
        else:
            s, e = datum.element((0,)), datum.identity()
            C = cd.build_presentation(s, {}, datum.simple, s if name == "uq" else e, {}, 12)
    else:
        C = _presentation(cfg)
    if o.get("weights"):
        weights = parse_vectors(o["weights"])
    else:
        n = datum.rank
        weights = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        if n > 1:
            weights.append(tuple(1 for _ in range(n)))
    res = cd.nonbasic_witness(C, weights, bound=cfg.bound or 4)
    rec = {**C.describe(), "weights": [list(w) for w in weights], **res.record()}
    return Outcome([rec], {"status": res.status})


COMMANDS: dict[str, Callable[[RunConfig], Outcome]] = {
    "sweep-conja": cmd_conja_sweep,
    "catalog": cmd_catalog,
    "induce": cmd_induce,
    "verify-coideal": cmd_verify_coideal,
    "graded": cmd_graded,
    "nonbasic-witness": cmd_nonbasic_witness,
}


# ----------------------------------------------------------------------------
# report writing

def _tsv_cell(v) -> str:
    if isinstance(v, str):
        return v
    return json.dumps(v, sort_keys=True, separators=(",", ":"))


def render(cfg: RunConfig, out: Outcome) -> str:
    header = cfg.header()
    if cfg.fmt == "json":
        lines = [json.dumps(header, sort_keys=True)]
        lines += [json.dumps(r, sort_keys=True) for r in out.records]
        lines.append(json.dumps({"summary": out.summary}, sort_keys=True))
        return "\n".join(lines) + "\n"
    cols: list = []
    for r in out.records:
        for k in r:
            if k not in cols:
                cols.append(k)
    lines = ["# " + json.dumps(header, sort_keys=True), "\t".join(cols)]
    for r in out.records:
        lines.append("\t".join(_tsv_cell(r.get(c, "")) for c in cols))
    lines.append("# " + json.dumps({"summary": out.summary}, sort_keys=True))
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcoideal", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        s = sub.add_parser(name)
        s.add_argument("--type", default="A2", help="root datum, e.g. A3 or just A with --rank")
        s.add_argument("--rank", type=int, default=None)
        s.add_argument("--bound", type=int, default=None)
        s.add_argument("--window", type=int, default=None)
        s.add_argument("--jobs", type=int, default=1)
        s.add_argument("--out", default=None)
        s.add_argument("--format", dest="fmt", default="json", choices=("json", "tsv"))
        s.add_argument("--seed", type=int, default=0)
        s.add_argument("--timing", action="store_true", help="include wall-clock fields")
        if name == "sweep-conja":
            s.add_argument("--heavy", action="store_true", help="allow D4")
        if name in ("verify-coideal", "nonbasic-witness"):
            s.add_argument("--w-minus", dest="w_minus")
            s.add_argument("--supp-minus", dest="supp_minus")
            s.add_argument("--phi-minus", dest="phi_minus")
            s.add_argument("--lattice")
            s.add_argument("--w-plus", dest="w_plus")
            s.add_argument("--supp-plus", dest="supp_plus")
            s.add_argument("--phi-plus", dest="phi_plus")
        if name == "graded":
            s.add_argument("--w")
            s.add_argument("--supp")
        if name in ("induce", "nonbasic-witness"):
            s.add_argument("--borel")
        if name == "induce":
            s.add_argument("--e")
            s.add_argument("--f")
            s.add_argument("--k")
        if name == "nonbasic-witness":
            s.add_argument("--weights", help="Dynkin labels, e.g. '1,0;0,1'")
            s.add_argument("--lam")
            s.add_argument("--lam-prime", dest="lam_prime")
    return p


_COMMON = {"command", "type", "rank", "bound", "window", "jobs", "out", "fmt", "seed"}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    datum = ns.type.strip().upper()
    if ns.rank is not None:
        if datum[1:] and datum[1:] != str(ns.rank):
            raise UsageError("--type %s conflicts with --rank %d" % (ns.type, ns.rank))
        datum = datum[:1] + str(ns.rank)
    opts = {k: v for k, v in vars(ns).items() if k not in _COMMON and v not in (None, False)}
    return RunConfig(ns.command, datum, ns.bound, ns.window, ns.jobs, ns.out, ns.fmt, ns.seed, opts)


def run(argv: Sequence[str] | None = None, stdout=None) -> int:
    from .repthy import ConstraintError

    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = config_from_args(ns)
        out = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print("usage error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except ConstraintError as exc:
        print("constraint violated: %s" % exc, file=sys.stderr)
        return EXIT_CONSTRAINT
    text = render(cfg, out)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return out.code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
