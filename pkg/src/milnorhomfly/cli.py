"""Command-line interface.

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error,
3 node budget exhausted.  Numbers in JSON output are decimal strings or
reduced fractions ``"p/q"``.
"""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
import json
import re
import sys

from .diagram import InvalidDiagram, NotAKnot, PlanarDiagram, fusion_braid, fusion_closure, trace_closure
from .homfly import BudgetExceeded, default_budget, homflypt, homflypt_braid
from .milnor import NotPure, RepeatedIndex, milnor_result, mu_table
from .models import model_K_M, model_K_MM, model_K_mn, model_L_n, random_link
from .theorem import HypothesisViolated, rhs_main, rhs_main2, verify_batch
from .words import InvalidSubsequence, ParseError, StrandIndexError, parse_sequence, parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

USAGE_ERRORS = (
    ParseError,
    StrandIndexError,
    InvalidSubsequence,
    InvalidDiagram,
    NotAKnot,
    NotPure,
    RepeatedIndex,
    HypothesisViolated,
    ValueError,
    OSError,
)


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    """One validated invocation."""

    command: str
    options: dict = field(default_factory=dict)
    seed: int | None = None
    budget: int | None = None
    output: str = "json"


def _infer_strands(text):
    n = 1
    for m in re.finditer(r"\bs(\d+)", text):
        n = max(n, int(m.group(1)) + 1)
    for m in re.finditer(r"\bA(\d+)(?:,(\d+))?", text):
        if m.group(2) is not None:
            n = max(n, int(m.group(1)), int(m.group(2)))
        else:
            n = max(n, *(int(c) for c in m.group(1)))
    return n


def _word(opts):
    text = opts["word"]
    n = opts.get("n") or _infer_strands(text)
    return parse_word(text, n)


def _emit(obj, out):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _cmd_homfly(cfg, out):
    o = cfg.options
    if bool(o.get("pd")) == bool(o.get("word")):
        raise UsageError("give exactly one of --pd or --word")
    if o.get("pd"):
        with open(o["pd"]) as fh:
            D = PlanarDiagram.from_json(json.load(fh))
        P = homflypt(D, budget=cfg.budget)
    else:
        w = _word(o)
        closure = o.get("closure") or "trace"
        engine = o.get("engine") or "braid"
        if closure == "trace":
            gens, m = w.braid(), w.n
            D = trace_closure(w) if engine == "pd" else None
        else:
            J = parse_sequence(o["retain"]) if o.get("retain") else tuple(range(1, w.n + 1))
            gens, m = fusion_braid(w, J)
            D = fusion_closure(w, J) if engine == "pd" else None
        if engine == "pd":
            P = homflypt(D, budget=cfg.budget)
        elif m == 0:
            P = homflypt(fusion_closure(w, ()), budget=cfg.budget)
        else:
            P = homflypt_braid(gens, m, budget=cfg.budget)
    if cfg.output == "text":
        out.write(str(P) + "\n")
    else:
        _emit(P.to_json(), out)
    return EXIT_OK


def _cmd_milnor(cfg, out):
    o = cfg.options
    w = _word(o)
    if o.get("all_upto"):
        table = mu_table(w, int(o["all_upto"]))
        rows = [{"I": str(I), "mu": str(v)} for I, v in table.items()]
        _emit(rows, out)
        return EXIT_OK
    if not o.get("seq"):
        raise UsageError("give --seq or --all-upto")
    r = milnor_result(w, parse_sequence(o["seq"]))
    _emit(r.to_json(), out)
    return EXIT_OK


def _cmd_model(cfg, out):
    o = cfg.options
    if o.get("Kmn") is not None:
        D = model_K_mn(*o["Kmn"])
    elif o.get("Ln") is not None:
        D = model_L_n(o["Ln"])
    elif o.get("KM") is not None:
        M, x = o["KM"]
        D = model_K_M(parse_sequence(M), int(x), o.get("n") or 4)
    elif o.get("KMM") is not None:
        M, Mp, x, y = o["KMM"]
        D = model_K_MM(parse_sequence(M), parse_sequence(Mp), int(x), int(y), o.get("n") or 4)
    else:
        raise UsageError("give one of --Kmn, --Ln, --KM, --KMM")
    _emit(D.to_json(), out)
    return EXIT_OK


def _cmd_gen(cfg, out):
    o = cfg.options
    w = random_link(o["n"], o["k"], o["len"], cfg.seed if cfg.seed is not None else 0)
    out.write(w.text() + "\n")
    return EXIT_OK


def _report(r, cfg, out):
    if cfg.output == "text":
        out.write(
            f"I={r.I} mu={r.mu} delta={r.delta} sum_term={r.sum_term} "
            f"correction={r.correction} rhs={r.rhs} congruent={r.congruent}\n"
        )
    else:
        _emit(r.to_json(), out)
    return EXIT_OK if r.congruent else EXIT_FAIL


def _cmd_verify2(cfg, out):
    o = cfg.options
    w = _word(o)
    I = parse_sequence(o.get("perm") or "1234")
    if len(I) != 4 or sorted(I) != [1, 2, 3, 4] or w.n != 4:
        raise UsageError(f"--perm must be a permutation of 1234 on a 4-strand word, got {I}")
    return _report(rhs_main2(w, I, engine=o.get("engine") or "braid", budget=cfg.budget), cfg, out)


def _cmd_verify(cfg, out):
    o = cfg.options
    w = _word(o)
    k = o["k"]
    I = parse_sequence(o["perm"]) if o.get("perm") else tuple(range(1, 2 * k + 3))
    if len(I) != 2 * k + 2:
        raise UsageError(f"--perm must have length 2k+2 = {2 * k + 2}")
    return _report(rhs_main(w, I, k, engine=o.get("engine") or "braid", budget=cfg.budget), cfg, out)


def _cmd_batch(cfg, out):
    o = cfg.options
    s = verify_batch(
        o["count"], cfg.seed if cfg.seed is not None else 0, o["max_letters"],
        k=o["k"], budget=cfg.budget, workers=o.get("threads") or 1,
    )
    _emit(s.to_json(), out)
    if s.failed or s.errors:
        return EXIT_FAIL
    if s.skipped:
        return EXIT_BUDGET
    return EXIT_OK


def _cmd_selftest(cfg, out):
    from .selftest import run_selftest

    rows = run_selftest(cfg.budget)
    if cfg.output == "json":
        _emit(rows, out)
    else:
        for r in rows:
            tag = {"pass": "PASS", "fail": "FAIL", "budget": "BUDGET", "error": "ERROR"}[r["status"]]
            out.write(f"{tag:6} {r['name']}" + (f"  ({r['detail']})" if r["detail"] else "") + "\n")
    statuses = {r["status"] for r in rows}
    if statuses & {"fail", "error"}:
        return EXIT_FAIL
    if "budget" in statuses:
        return EXIT_BUDGET
    return EXIT_OK


COMMANDS = {
    "homfly": _cmd_homfly,
    "milnor": _cmd_milnor,
    "model": _cmd_model,
    "gen": _cmd_gen,
    "verify2": _cmd_verify2,
    "verify": _cmd_verify,
    "verify-batch": _cmd_batch,
    "selftest": _cmd_selftest,
}


def dispatch(cfg: RunConfig, out=None, err=None) -> int:
    """Run one command and map errors to exit codes."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return COMMANDS[cfg.command](cfg, out)
    except BudgetExceeded as exc:
        err.write(f"error: {exc}\n")
        return EXIT_BUDGET
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except (*USAGE_ERRORS, IndexError, KeyError) as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="milnorhomfly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(q, seed=False):
        q.add_argument("--budget", type=int, help="node budget (default: MH_BUDGET or 10^7)")
        q.add_argument("--text", action="store_true", help="human-readable output")
        q.add_argument("--json", action="store_true", help="JSON output (the default)")
        if seed:
            q.add_argument("--seed", type=int, default=0)

    q = sub.add_parser("homfly", help="HOMFLYPT polynomial of a diagram or a closed word")
    q.add_argument("--pd", help="diagram JSON file")
    q.add_argument("--word")
    q.add_argument("--n", type=int, help="strand count (default: inferred)")
    q.add_argument("--closure", choices=("trace", "fusion"), default="trace")
    q.add_argument("--retain", help="strands kept by the fusion closure, e.g. 134")
    q.add_argument("--engine", choices=("braid", "pd"), default="braid")
    common(q)

    q = sub.add_parser("milnor", help="Milnor invariants of a pure word")
    q.add_argument("--word", required=True)
    q.add_argument("--n", type=int)
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--seq")
    g.add_argument("--all-upto", type=int)
    common(q)

    q = sub.add_parser("model", help="diagram JSON of a model knot or link")
    g = q.add_mutually_exclusive_group(required=True)
    g.add_argument("--Kmn", nargs=2, type=int, metavar=("M", "N"))
    g.add_argument("--Ln", type=int)
    g.add_argument("--KM", nargs=2, metavar=("M", "X"))
    g.add_argument("--KMM", nargs=4, metavar=("M", "MP", "X", "Y"))
    q.add_argument("--n", type=int)
    common(q)

    q = sub.add_parser("gen", help="reproducible random pure word")
    q.add_argument("--n", type=int, default=4)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--len", type=int, default=10)
    common(q, seed=True)

    q = sub.add_parser("verify2", help="check the four-component formula")
    q.add_argument("--word", required=True)
    q.add_argument("--n", type=int)
    q.add_argument("--perm", default="1234")
    q.add_argument("--engine", choices=("braid", "pd"), default="braid")
    common(q)

    q = sub.add_parser("verify", help="check the general formula")
    q.add_argument("--word", required=True)
    q.add_argument("--n", type=int)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--perm")
    q.add_argument("--engine", choices=("braid", "pd"), default="braid")
    common(q)

    q = sub.add_parser("verify-batch", help="check many random instances")
    q.add_argument("--count", type=int, default=100)
    q.add_argument("--max-letters", type=int, default=10)
    q.add_argument("--k", type=int, default=1)
    q.add_argument("--threads", type=int, default=1)
    common(q, seed=True)

    q = sub.add_parser("selftest", help="run the built-in check table")
    common(q)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        # argparse exits on --help and on usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    opts = {k: v for k, v in vars(args).items() if k not in ("command", "budget", "text", "json", "seed")}
    if args.command == "selftest":
        output = "json" if args.json else "text"
    else:
        output = "text" if args.text else "json"
    budget = args.budget if args.budget is not None else default_budget()
    cfg = RunConfig(args.command, opts, getattr(args, "seed", None), budget, output)
    return dispatch(cfg)


if __name__ == "__main__":
    sys.exit(main())
