"""Command-line front end: JSON I/O, verdict taxonomy, reproduce driver.

Exit codes separate "the math said no" from "the program broke":
  0  checks passed
  1  legitimate mathematical negative (e.g. the inequality fails over a
     small field, which is the point of those examples)
  2  input error
  3  enumeration budget exhausted
  4  theorem violation: a proved statement failed on an instance (a bug)

Reports are JSON lines on stdout; --pretty renders a human table after
them.  Output is byte-identical for identical inputs and seeds; wall-clock
timing is attached only when --timing is passed.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .budget import Budget, default_budget
from .errors import (
    EXIT_BUDGET,
    EXIT_INPUT,
    EXIT_NEGATIVE,
    EXIT_PASS,
    EXIT_VIOLATION,
    BudgetExceeded,
    InputError,
    SocleLabError,
    TheoremViolation,
)
from .gf import field_make

VERDICT_EXIT = {
    "pass": EXIT_PASS,
    "counterexample": EXIT_NEGATIVE,
    "input-error": EXIT_INPUT,
    "budget": EXIT_BUDGET,
    "violation": EXIT_VIOLATION,
}
# precedence when aggregating many items into one exit code
_SEVERITY = ("violation", "input-error", "budget", "counterexample", "pass")


def _sha256_file(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise InputError(f"no such file: {path}")
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}")


class Reporter:
    def __init__(self, args):
        self.pretty = args.pretty
        self.timing = args.timing
        self.started = time.monotonic()
        self.lines: list[dict] = []

    def emit(self, command: str, verdict: str, details, inputs=None):
        record = {"command": command, "inputs": inputs or {}, "verdict": verdict, "details": details}
        if self.timing:
            record["timing"] = round(time.monotonic() - self.started, 3)
        self.lines.append(record)
        print(json.dumps(record, sort_keys=True))

    def table(self, rows, headers):
        if not self.pretty:
            return
        widths = [max(len(str(r[i])) for r in rows + [headers]) for i in range(len(headers))]
        fmt = "  ".join("{:<%d}" % w for w in widths)
        print(fmt.format(*headers), file=sys.stderr)
        print("  ".join("-" * w for w in widths), file=sys.stderr)
        for r in rows:
            print(fmt.format(*[str(x) for x in r]), file=sys.stderr)


def _aggregate_exit(verdicts) -> int:
    for level in _SEVERITY:
        if level in verdicts:
            return VERDICT_EXIT[level]
    return EXIT_PASS


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_cover_check(args, reporter: Reporter, budget: Budget) -> int:
    from .tensorcover import TensorSubspace, check_bound

    data = _load_json(args.file)
    ts = TensorSubspace.from_json(data)
    # check_bound raises TheoremViolation when the conditions hold yet the
    # bound fails, so a returned report is always a pass
    report = check_bound(ts, check_minimality=args.minimal)
    verdict = "pass"
    reporter.emit("cover check", verdict, report.to_json(), {args.file: _sha256_file(args.file)})
    reporter.table(
        [["conditions", report.both_hold], ["dim", report.dim_A],
         ["bound", report.m + report.n - 1], ["minimal", report.minimal]],
        ["key", "value"],
    )
    return VERDICT_EXIT[verdict]


def _cmd_cover_search(args, reporter: Reporter, budget: Budget) -> int:
    from .tensorcover import search_minimal

    field = _field_from({"q": args.q})
    result = search_minimal(args.m, args.n, field, budget, threads=args.threads)
    verdict = "pass" if result.complete else "budget"
    reporter.emit("cover search-minimal", verdict, result.to_json())
    reporter.table(
        [[t.dim, json.dumps(t.to_json())[:60]] for t in result.minimal],
        ["dim", "subspace"],
    )
    return VERDICT_EXIT[verdict]


def _cmd_algebra_analyze(args, reporter: Reporter, budget: Budget) -> int:
    from .algebra import (
        Algebra,
        bimodule_length,
        improved_bound,
        radical_bruteforce,
        socle_graph,
        socle_is_central,
        socles,
    )
    from .errors import NotSplitError

    data = _load_json(args.file)
    alg = Algebra.from_json(data)
    details: dict = {"dim": alg.dim, "field": alg.field.to_json()}
    radical = alg.radical(budget)
    details["radical_dim"] = radical.dim
    if args.oracle:
        brute = radical_bruteforce(alg, budget)
        details["radical_oracle_agrees"] = brute == radical
        if not details["radical_oracle_agrees"]:
            reporter.emit("algebra analyze", "violation", details, {args.file: _sha256_file(args.file)})
            return EXIT_VIOLATION
    st = socles(alg, budget)
    details["socle_dims"] = {"left": st.left.dim, "right": st.right.dim, "twosided": st.twosided.dim}
    details["socle_central"] = socle_is_central(alg, budget)
    try:
        graph = socle_graph(alg, budget)
        soc_len = bimodule_length(alg, st.twosided, budget)
        details["blocks"] = [{"n": b.n} for b in alg.blocks()]
        details["socle_graph"] = graph.to_json()
        details["socle_bimodule_length"] = soc_len
        details["improved_bound_rhs"] = improved_bound(graph, soc_len)
    except NotSplitError:
        details["blocks"] = "not split-certified"
    reporter.emit("algebra analyze", "pass", details, {args.file: _sha256_file(args.file)})
    reporter.table([[k, json.dumps(v)] for k, v in details.items()], ["key", "value"])
    return EXIT_PASS


def _resolve_module(args) -> "object":
    from .algebra import Algebra
    from .modrep import ModuleRep

    data = _load_json(args.file)
    algebra = None
    if "algebra_ref" in data:
        ref = Path(args.file).parent / data["algebra_ref"]
        algebra = Algebra.from_json(_load_json(str(ref)))
    return ModuleRep.from_json(data, algebra)


def _cmd_module_check(args, reporter: Reporter, budget: Budget) -> int:
    from .modrep import module_report

    mod = _resolve_module(args)
    report = module_report(mod, budget)
    ineq = report.inequality
    if ineq is not None and not ineq["holds"]:
        verdict = "counterexample"
    else:
        verdict = "pass"
    reporter.emit("module check", verdict, report.to_json(), {args.file: _sha256_file(args.file)})
    reporter.table([[k, json.dumps(v)] for k, v in report.to_json().items()], ["key", "value"])
    return VERDICT_EXIT[verdict]


def _cmd_module_shrink(args, reporter: Reporter, budget: Budget) -> int:
    from .modrep import shrink_quotient, shrink_subfactor, shrink_submodule, top_socle

    mod = _resolve_module(args)
    op = {"sub": shrink_submodule, "quot": shrink_quotient, "subfactor": shrink_subfactor}[args.mode]
    shrunk = op(mod, budget)
    ts = top_socle(shrunk, budget)
    details = {
        "mode": args.mode,
        "input_dim": mod.dim,
        "output_dim": shrunk.dim,
        "top_length": ts.top_length,
        "socle_length": ts.socle_length,
        "module": shrunk.to_json(),
    }
    reporter.emit("module shrink", "pass", details, {args.file: _sha256_file(args.file)})
    return EXIT_PASS


def _cmd_system_check(args, reporter: Reporter, budget: Budget) -> int:
    from .strongness import BilinearSystem, prop41_check

    sys_obj = BilinearSystem.from_json(_load_json(args.file))
    report = prop41_check(sys_obj, budget)
    verdict = "pass" if report.holds else "counterexample"
    reporter.emit("system check", verdict, report.to_json(), {args.file: _sha256_file(args.file)})
    reporter.table(
        [["lhs", report.lhs], ["rhs", report.rhs], ["holds", report.holds],
         ["hypotheses", json.dumps(report.hypotheses_met)]],
        ["key", "value"],
    )
    return VERDICT_EXIT[verdict]


def _parse_block(spec: str):
    if spec is None:
        return None, None
    parts = spec.split(",")
    f = int(parts[0]) if parts[0] != "" else None
    e = int(parts[1]) if len(parts) > 1 and parts[1] != "" else None
    return f, e


def _cmd_system_strong(args, reporter: Reporter, budget: Budget) -> int:
    from .exactla import Subspace
    from .strongness import BilinearSystem, n_strong, relative_n_strong

    sys_obj = BilinearSystem.from_json(_load_json(args.file))
    n_value = Fraction(args.N)
    f, e = _parse_block(args.block)
    if args.relative:
        t_idx = f if f is not None else 0
        mult = sys_obj.t_blocks[t_idx].mult
        target = Subspace.full(sys_obj.field, mult)
        strong = relative_n_strong(sys_obj, n_value, target, t_block=f, s_block=e, budget=budget)
        details = {"relative": True, "side": args.side, "N": str(n_value), "strong": strong}
        reporter.emit("system strong", "pass" if strong else "counterexample", details,
                      {args.file: _sha256_file(args.file)})
        return EXIT_PASS if strong else EXIT_NEGATIVE
    report = n_strong(sys_obj, args.side, n_value, t_block=f, s_block=e, budget=budget)
    verdict = "pass" if report.strong else "counterexample"
    reporter.emit("system strong", verdict, report.to_json(), {args.file: _sha256_file(args.file)})
    return VERDICT_EXIT[verdict]


def _cmd_gallery_list(args, reporter: Reporter, budget: Budget) -> int:
    details = {name: spec["description"] for name, spec in GALLERY.items()}
    reporter.emit("gallery list", "pass", details)
    reporter.table(sorted(details.items()), ["name", "description"])
    return EXIT_PASS


def _gallery_params(pairs) -> dict:
    out = {}
    for pair in pairs:
        if "=" not in pair:
            raise InputError(f"gallery parameters look like key=value, got {pair!r}")
        key, value = pair.split("=", 1)
        out[key] = int(value) if value.lstrip("-").isdigit() else value
    return out


def _cmd_gallery_make(args, reporter: Reporter, budget: Budget) -> int:
    if args.name not in GALLERY:
        raise InputError(f"unknown gallery item {args.name!r}; run `gallery list`")
    spec = GALLERY[args.name]
    params = _gallery_params(args.params)
    obj_json = spec["factory"](params, budget)
    if args.out:
        Path(args.out).write_text(json.dumps(obj_json, indent=2, sort_keys=True))
        reporter.emit("gallery make", "pass", {"name": args.name, "written": args.out})
    else:
        reporter.emit("gallery make", "pass", {"name": args.name, "object": obj_json})
    return EXIT_PASS


def _cmd_reproduce(args, reporter: Reporter, budget: Budget) -> int:
    from .reproduce import TARGETS, run_target

    if args.target not in TARGETS:
        raise InputError(f"unknown target {args.target!r}; choose from {', '.join(TARGETS)}")
    items = run_target(args.target, seed=args.seed, budget=budget)
    verdicts = {item["verdict"] for item in items}
    ok = all(item["ok"] for item in items)
    bundle = {
        "target": args.target,
        "seed": args.seed,
        "ok": ok,
        "items": items,
    }
    out_path = args.out or f"soclelab-reproduce-{args.target}.json"
    Path(out_path).write_text(json.dumps(bundle, indent=2, sort_keys=True))
    for item in items:
        reporter.emit(f"reproduce {args.target}", item["verdict"],
                      {"name": item["name"], "ok": item["ok"], **item["details"]})
    reporter.table(
        [[item["name"], item["verdict"], "ok" if item["ok"] else "MISMATCH"] for item in items],
        ["battery", "verdict", "expectation"],
    )
    if not ok:
        return EXIT_VIOLATION
    return _aggregate_exit(verdicts)


# ---------------------------------------------------------------------------
# gallery registry for the CLI
# ---------------------------------------------------------------------------

def _field_from(params: dict):
    q = params.get("q", 2)
    table = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}
    if q not in table:
        raise InputError(f"unsupported field size {q}")
    return field_make(*table[q])


def _make_cross_json(params, budget):
    from .gallery import make_cross

    return make_cross(params.get("m", 2), params.get("n", 2), _field_from(params)).to_json()


def _make_corner_json(params, budget):
    from .gallery import make_corner_family

    return make_corner_family(
        params.get("m", 3), params.get("n", 3), params.get("t", 2), _field_from(params)
    ).to_json()


def _make_triangular_json(params, budget):
    from .gallery import make_triangular

    return make_triangular(
        params.get("n", 3), _field_from(params), bool(params.get("scalar", 0))
    ).to_json()


def _make_matrix_json(params, budget):
    from .gallery import make_matrix_algebra

    return make_matrix_algebra(params.get("n", 2), _field_from(params)).to_json()


def _make_square_zero_json(params, budget):
    from .gallery import make_square_zero_extension

    return make_square_zero_extension(_field_from(params), params.get("g", 2)).to_json()


def _make_twisted_json(params, budget):
    from .gallery import make_twisted_truncated

    return make_twisted_truncated(params.get("p", 2), params.get("d", 2), params.get("n", 2), budget).to_json()


def _make_line_cover_json(params, budget):
    from .gallery import make_line_cover_system

    return make_line_cover_system(_field_from(params), params.get("d", 2), budget).to_json()


def _make_row_diagonal_json(params, budget):
    from .gallery import make_row_diagonal_pair

    ring, module = make_row_diagonal_pair()
    return {"algebra": ring.to_json(), "module": module.to_json(inline_algebra=True)}


def _make_number_field_json(params, budget):
    from .gallery import make_number_field_example

    make_number_field_example()


GALLERY = {
    "cross": {
        "description": "row + column support space; dim m+n-1, both coverage conditions (params m n q)",
        "factory": _make_cross_json,
    },
    "corner": {
        "description": "first t rows and columns with equal leading diagonal (params m n t q)",
        "factory": _make_corner_json,
    },
    "triangular": {
        "description": "upper triangular n x n matrices, optionally scalar diagonal (params n q scalar)",
        "factory": _make_triangular_json,
    },
    "matrix-algebra": {
        "description": "full n x n matrix algebra (params n q)",
        "factory": _make_matrix_json,
    },
    "square-zero-extension": {
        "description": "local algebra k + V with V V = 0, dim V = g (params q g)",
        "factory": _make_square_zero_json,
    },
    "twisted-truncated": {
        "description": "truncated twisted polynomial ring over F_{p^d} (params p d n)",
        "factory": _make_twisted_json,
    },
    "line-cover-system": {
        "description": "one block per line of k^d acting onto that line; fails the length inequality (params q d)",
        "factory": _make_line_cover_json,
    },
    "row-diagonal-module": {
        "description": "the 6-dim F_2 ring (first row + diagonal) with its 5-dim faithful minimal module",
        "factory": _make_row_diagonal_json,
    },
    "number-field-example": {
        "description": "characteristic-zero example: documented out-of-scope stub",
        "factory": _make_number_field_json,
    },
}


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="soclelab",
        description="Exact-arithmetic verification toolkit over small finite fields.",
    )
    parser.add_argument("--seed", type=int, default=20260808, help="seed for randomized batteries")
    parser.add_argument("--budget", type=int, default=None, help="enumeration cap override")
    parser.add_argument("--threads", type=int, default=1, help="worker count for partitioned searches")
    parser.add_argument("--pretty", action="store_true", help="render a human table after the JSON lines")
    parser.add_argument("--timing", action="store_true", help="attach wall-clock timing to reports")
    sub = parser.add_subparsers(dest="command", required=True)

    cover = sub.add_parser("cover", help="tensor-subspace coverage checks")
    cover_sub = cover.add_subparsers(dest="subcommand", required=True)
    cc = cover_sub.add_parser("check", help="coverage conditions and the dimension bound")
    cc.add_argument("file")
    cc.add_argument("--minimal", action="store_true", help="also decide hyperplane-minimality")
    cs = cover_sub.add_parser("search-minimal", help="exhaustive search for minimal satisfying subspaces")
    cs.add_argument("--m", type=int, required=True)
    cs.add_argument("--n", type=int, required=True)
    cs.add_argument("--q", type=int, required=True, help="field size (a prime power up to 9)")

    alg = sub.add_parser("algebra", help="algebra structure analysis")
    alg_sub = alg.add_subparsers(dest="subcommand", required=True)
    aa = alg_sub.add_parser("analyze", help="radical, socles, blocks, graph, bounds")
    aa.add_argument("file")
    aa.add_argument("--oracle", action="store_true", help="cross-check the radical by exhaustive scan")

    mod = sub.add_parser("module", help="module checks and shrinking")
    mod_sub = mod.add_subparsers(dest="subcommand", required=True)
    mc = mod_sub.add_parser("check", help="faithfulness, lengths, minimality, inequality")
    mc.add_argument("file")
    ms = mod_sub.add_parser("shrink", help="faithful submodule/quotient/subfactor with bounded lengths")
    ms.add_argument("file")
    ms.add_argument("--mode", choices=("sub", "quot", "subfactor"), required=True)

    system = sub.add_parser("system", help="bilinear-system checks")
    system_sub = system.add_subparsers(dest="subcommand", required=True)
    sc = system_sub.add_parser("check", help="full length-inequality report")
    sc.add_argument("file")
    ss = system_sub.add_parser("strong", help="N-strength of a map set")
    ss.add_argument("file")
    ss.add_argument("--side", choices=("left", "right"), required=True)
    ss.add_argument("--N", required=True, help="positive rational, e.g. 2 or 2/3")
    ss.add_argument("--block", default=None, help="f,e to pick one corner; f alone for a block row")
    ss.add_argument("--relative", action="store_true",
                    help="experimental: recursive relative strength against the full codomain")

    strong = sub.add_parser("strong", help="alias for `system strong`")
    strong.add_argument("file")
    strong.add_argument("--side", choices=("left", "right"), required=True)
    strong.add_argument("--N", required=True)
    strong.add_argument("--block", default=None)
    strong.add_argument("--relative", action="store_true")

    gallery = sub.add_parser("gallery", help="certified example constructors")
    gallery_sub = gallery.add_subparsers(dest="subcommand", required=True)
    gallery_sub.add_parser("list", help="list the available constructions")
    gm = gallery_sub.add_parser("make", help="build one construction as JSON")
    gm.add_argument("name")
    gm.add_argument("params", nargs="*", help="key=value parameters")
    gm.add_argument("-o", "--out", default=None)

    rep = sub.add_parser("reproduce", help="run a verification battery")
    rep.add_argument("target", help="paper-2 | paper-4 | paper-5.1 | paper-6 | all")
    rep.add_argument("--out", default=None, help="bundle path (default soclelab-reproduce-<target>.json)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    reporter = Reporter(args)
    if args.budget is not None:
        budget = Budget(max_enumeration=args.budget, max_ring=min(args.budget, 2**16))
    else:
        budget = default_budget()
    dispatch = {
        ("cover", "check"): _cmd_cover_check,
        ("cover", "search-minimal"): _cmd_cover_search,
        ("algebra", "analyze"): _cmd_algebra_analyze,
        ("module", "check"): _cmd_module_check,
        ("module", "shrink"): _cmd_module_shrink,
        ("system", "check"): _cmd_system_check,
        ("system", "strong"): _cmd_system_strong,
        ("strong", None): _cmd_system_strong,
        ("gallery", "list"): _cmd_gallery_list,
        ("gallery", "make"): _cmd_gallery_make,
        ("reproduce", None): _cmd_reproduce,
    }
    key = (args.command, getattr(args, "subcommand", None))
    handler = dispatch.get(key)
    if handler is None:
        parser.error(f"unknown command {key}")
    try:
        return handler(args, reporter, budget)
    except BudgetExceeded as exc:
        reporter.emit(args.command, "budget", {"error": str(exc)})
        return EXIT_BUDGET
    except TheoremViolation as exc:
        reporter.emit(args.command, "violation", {"error": str(exc)})
        return EXIT_VIOLATION
    except InputError as exc:
        reporter.emit(args.command, "input-error", {"error": str(exc)})
        return EXIT_INPUT
    except SocleLabError as exc:
        reporter.emit(args.command, "input-error", {"error": str(exc)})
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
