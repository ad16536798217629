"""Command-line front end: ``rigidkernel report | verify | patterns``."""

from __future__ import annotations

import argparse
import json
import logging
import math
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import fincon, kernel_pipeline as kp
from .dihedral_cayley import cycle_space_basis, schreier_edge_space, vertex_conditions
from .gf2 import rank, span_equal
from .hanoihedral import branching_identities_check
from .selfsim import evaluate, format_word, hanoihedral_spec, nucleus

VERSION = "rigidkernel-report/1"
SUITES = ("indices", "kernel", "closure", "nucleus", "all")
# verify runs every depth whose action degree stays at or below this bound
DEFAULT_VERIFY_DEGREE = 200

Check = kp.Check


def default_max_depth(d: int) -> int:
    n = 1
    while kp.chain_degree(d, n + 1) <= DEFAULT_VERIFY_DEGREE:
        n += 1
    return n


# ---------- serialization


def _value(x):
    """Booleans stay booleans; integers (possibly huge) and everything else become strings."""
    if isinstance(x, bool) or x is None:
        return x
    return str(x)


def check_dict(c: Check) -> dict:
    return {
        "name": c.name,
        "expected": _value(c.expected),
        "computed": _value(c.computed),
        "status": "pass" if c.passed else "fail",
    }


def _term_dict(t: fincon.RationalTerm) -> dict:
    return {"p": str(t.p), "q": str(t.q), "value": float(t)}


def level_section(rep: kp.IndexReport) -> dict:
    return {
        "n": rep.n,
        "order_G_mod_St_n": str(rep.order_G_mod_St_n),
        "closed_form": str(rep.closed_form),
        "rank_st_mod_triv": rep.rank_st_mod_triv,
        "closure_count": str(rep.closure_count),
        "index_rst_closed": str(rep.index_rst_closed),
        "index_rst_composed": str(rep.index_rst_composed),
        "hausdorff_term": _term_dict(fincon.hausdorff_term(rep.d, rep.n)),
        "checks": [check_dict(c) for c in rep.checks],
    }


def kernel_section(d: int) -> dict:
    crit = kp.criterion_check(d)
    return {
        "rank_st2_mod_triv2": kp.rank_st2_mod_triv2(d),
        "rank_st2_cap_K": kp.rank_st2_cap_K(d),
        "rank_st1_mod_branch": kp.rank_st1_mod_branch(d),
        "surjective": kp.surjectivity_check(d),
        "descriptor": kp.rigid_kernel_report(d).as_dict(),
        "criterion": {"lhs": str(crit.lhs), "rhs": str(crit.rhs), "nontrivial_kernel": crit.nontrivial_kernel},
        "checks": [check_dict(c) for c in kernel_checks(d)],
    }


def nucleus_section(d: int) -> dict:
    spec = hanoihedral_spec(d)
    elems = nucleus(spec)
    return {
        "size": len(elems),
        "elements": [format_word(spec, w) for w in elems],
        "checks": [check_dict(c) for c in nucleus_checks(d)],
    }


def cycle_section(d: int) -> dict:
    return {
        "rank_cycle_space": rank(cycle_space_basis(d)),
        "rank_vertex_conditions": rank(vertex_conditions(d)),
        "schreier_span_is_cycle_space": span_equal(schreier_edge_space(d), cycle_space_basis(d)),
        "checks": [check_dict(c) for c in cycle_checks(d)],
    }


def closure_section(d: int, max_depth: int, seed: int) -> dict:
    return {
        "allowed_size2_patterns": str(fincon.allowed_pattern_count(d)),
        "level1_index": fincon.closure_level1_index(d),
        "truncation_counts": [str(fincon.count_closure_truncations(d, n)) for n in range(1, max_depth + 1)],
        "checks": [check_dict(c) for c in closure_checks(d, max_depth, seed)],
    }


def hausdorff_section(d: int, max_depth: int) -> dict:
    terms, limit = fincon.hausdorff_terms(d, max_depth)
    return {
        "terms": [dict(n=n, **_term_dict(t)) for n, t in enumerate(terms, 1)],
        "limit": _term_dict(fincon.hausdorff_limit(d)),
        "checks": [check_dict(c) for c in hausdorff_checks(d, max_depth)],
    }


def build_document(d: int, max_depth: int, seed: int = 0, allow_large: bool = False) -> dict:
    reports = kp.full_report(d, max_depth, allow_large)
    doc = {
        "version": VERSION,
        "parameters": {"d": d, "max_depth": max_depth, "seed": seed},
        "levels": [level_section(r) for r in reports],
        "kernel": kernel_section(d),
        "nucleus": nucleus_section(d),
        "cycle_space": cycle_section(d),
        "closure": closure_section(d, max_depth, seed),
        "hausdorff": hausdorff_section(d, max_depth),
    }
    doc["all_passed"] = all(c["status"] == "pass" for c in _iter_checks(doc))
    return doc


def _iter_checks(doc: dict):
    for lvl in doc["levels"]:
        yield from lvl["checks"]
    for key in ("kernel", "nucleus", "cycle_space", "closure", "hausdorff"):
        yield from doc[key]["checks"]


def dump_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def render_text(doc: dict) -> str:
    p = doc["parameters"]
    lines = [f"{doc['version']}  d={p['d']}  max_depth={p['max_depth']}  seed={p['seed']}"]
    for lvl in doc["levels"]:
        lines.append(f"\nlevel n={lvl['n']}: [G:St(n)] = {lvl['order_G_mod_St_n']}, "
                     f"rank St(n)/Triv(n) = {lvl['rank_st_mod_triv']}")
        lines += _check_lines(lvl["checks"])
    k = doc["kernel"]
    lines.append(f"\nrigid kernel: {k['descriptor']['description']}")
    lines.append(f"  ranks A={k['descriptor']['rank_A']} B={k['descriptor']['rank_B']}, "
                 f"criterion {k['criterion']['lhs']} vs {k['criterion']['rhs']}")
    lines += _check_lines(k["checks"])
    lines.append(f"\nnucleus: {{{', '.join(doc['nucleus']['elements'])}}}")
    lines += _check_lines(doc["nucleus"]["checks"])
    lines.append(f"\ncycle space: rank {doc['cycle_space']['rank_cycle_space']}")
    lines += _check_lines(doc["cycle_space"]["checks"])
    lines.append(f"\nclosure: {doc['closure']['allowed_size2_patterns']} allowed size-2 patterns")
    lines += _check_lines(doc["closure"]["checks"])
    lim = doc["hausdorff"]["limit"]
    lines.append(f"\nHausdorff dimension: {lim['p']} - ({lim['q']}) log_{2 * p['d']}(2) = {lim['value']:.12f}")
    lines += _check_lines(doc["hausdorff"]["checks"])
    lines.append("\nall checks passed" if doc["all_passed"] else "\nSOME CHECKS FAILED")
    return "\n".join(lines) + "\n"


def _check_lines(checks: list[dict]) -> list[str]:
    return [f"  {c['status'].upper()}  {c['name']}  (expected {c['expected']}, computed {c['computed']})"
            for c in checks]


# ---------- suites


def index_checks(d: int, max_depth: int, allow_large: bool = False) -> list[Check]:
    out = []
    for rep in kp.full_report(d, max_depth, allow_large):
        out += [Check(f"n={rep.n}: {c.name}", c.expected, c.computed) for c in rep.checks]
    return out


def kernel_checks(d: int) -> list[Check]:
    return kp.level_two_checks(d)


def nucleus_checks(d: int) -> list[Check]:
    elems = nucleus(hanoihedral_spec(d))
    expected = [()] + [(i,) for i in range(d)]
    return [Check("nucleus is the identity together with the generators", expected, elems)]


def cycle_checks(d: int) -> list[Check]:
    cs = cycle_space_basis(d)
    return [
        Check("cycle space rank equals (d-1)^2", (d - 1) ** 2, rank(cs)),
        Check("vertex conditions have rank 2d-1", 2 * d - 1, rank(vertex_conditions(d))),
        Check("edge vectors of St(1) Schreier generators span the cycle space", True,
              span_equal(schreier_edge_space(d), cs)),
    ]


def closure_checks(d: int, max_depth: int, seed: int = 0) -> list[Check]:
    out = [
        Check("allowed size-2 patterns number (2d)^(d+1)/2", (2 * d) ** (d + 1) // 2, fincon.allowed_pattern_count(d)),
        Check("[X*cl D : cl St(1)] equals 2", 2, fincon.closure_level1_index(d)),
    ]
    for n in range(1, max_depth + 1):
        out.append(Check(f"n={n}: closure truncation count equals [D:St(n)]",
                         kp.closed_form_index_st(d, n), fincon.count_closure_truncations(d, n)))
    rng = random.Random(seed)
    spec = hanoihedral_spec(d)
    ps = fincon.PatternSet(d)
    depth = min(max_depth, 3) + 1
    inside = all(
        fincon.portrait_in_closure(ps, evaluate(spec, [rng.randrange(d) for _ in range(rng.randrange(20))], depth))
        for _ in range(50)
    )
    out.append(Check(f"random group elements lie in the closure at depth {depth}", True, inside))
    if d == 3:
        same, g, c = fincon.closure_equivalence_detail(3)
        out.append(Check("depth-2 group image equals the depth-2 closure (exhaustive)", (True, 648, 648), (same, g, c)))
        out.append(Check("odd-parity control predicate is rejected", False,
                         fincon.exhaustive_closure_equivalence(3, fincon.PatternSet(3, parity=1))))
    return out


def hausdorff_checks(d: int, max_depth: int) -> list[Check]:
    terms, limit = fincon.hausdorff_terms(d, max_depth)
    out = [
        Check(f"n={n}: term equals 1 - ((d^(n-1)-1)/(d^n-1)) log_2d(2)",
              Fraction(d ** (n - 1) - 1, d**n - 1), t.q)
        for n, t in enumerate(terms, 1)
    ]
    closed = 1 - math.log(2) / (d * math.log(2 * d))
    out.append(Check("limit equals 1 - (1/d) log_2d(2) within 1e-12", True, abs(limit - closed) < 1e-12))
    return out


def branching_checks(d: int) -> list[Check]:
    depth = 6 if d == 3 else 5 if d == 5 else 3
    return [
        Check(f"branching identities hold at depth {depth}", True, branching_identities_check(d, depth)),
        Check("shifted identities are rejected", False, branching_identities_check(d, depth, shift=1)),
    ]


def suite_checks(suite: str, d: int, max_depth: int, seed: int = 0, allow_large: bool = False) -> list[Check]:
    if suite == "indices":
        return index_checks(d, max_depth, allow_large)
    if suite == "kernel":
        return kernel_checks(d) + cycle_checks(d) + branching_checks(d)
    if suite == "closure":
        return closure_checks(d, max_depth, seed) + hausdorff_checks(d, max_depth)
    if suite == "nucleus":
        return nucleus_checks(d)
    if suite == "all":
        out = []
        for s in SUITES[:-1]:
            out += suite_checks(s, d, max_depth, seed, allow_large)
        return out
    raise ValueError(f"unknown suite {suite!r}")


# ---------- argument handling


def _odd_d(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if d < 3 or d % 2 == 0:
        raise argparse.ArgumentTypeError(f"d must be an odd integer >= 3, got {d}")
    return d


def _d_list(text: str) -> list[int]:
    return [_odd_d(t) for t in text.split(",") if t.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rigidkernel", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true", help="log chain construction")
    sub = parser.add_subparsers(dest="command", required=True)

    rep = sub.add_parser("report", help="full verification report for one d")
    rep.add_argument("--d", type=_odd_d, required=True)
    rep.add_argument("--max-depth", type=int, default=None)
    rep.add_argument("--format", choices=("json", "text"), default="json")
    rep.add_argument("--seed", type=int, default=0)
    rep.add_argument("--allow-large", action="store_true")

    ver = sub.add_parser("verify", help="run an acceptance suite; exit 1 on any failure")
    ver.add_argument("--suite", choices=SUITES, default="all")
    ver.add_argument("--d", type=_d_list, default=[3, 5, 7])
    ver.add_argument("--max-depth", type=int, default=None)
    ver.add_argument("--seed", type=int, default=0)
    ver.add_argument("--allow-large", action="store_true")

    pat = sub.add_parser("patterns", help="count allowed patterns of the closure")
    pat.add_argument("--d", type=_odd_d, required=True)
    pat.add_argument("--depth", type=int, default=None)
    pat.add_argument("--count-only", action="store_true")
    return parser


def cmd_report(args, out) -> int:
    max_depth = args.max_depth or default_max_depth(args.d)
    doc = build_document(args.d, max_depth, args.seed, args.allow_large)
    out.write(dump_json(doc) if args.format == "json" else render_text(doc))
    return 0 if doc["all_passed"] else 1


def cmd_verify(args, out) -> int:
    failed = 0
    for d in args.d:
        max_depth = args.max_depth or default_max_depth(d)
        for c in suite_checks(args.suite, d, max_depth, args.seed, args.allow_large):
            tag = "PASS" if c.passed else "FAIL"
            failed += not c.passed
            line = f"{tag} [{args.suite} d={d}] {c.name}"
            if not c.passed:
                line += f": expected {_value(c.expected)}, computed {_value(c.computed)}"
            out.write(line + "\n")
    out.write(f"{'all checks passed' if not failed else f'{failed} check(s) failed'}\n")
    return 1 if failed else 0


def cmd_patterns(args, out) -> int:
    d = args.d
    out.write(f"allowed size-2 patterns: {fincon.allowed_pattern_count(d)}\n")
    if not args.count_only:
        for e, k in fincon.allowed_patterns_by_root(d).items():
            out.write(f"  root {e}: {k}\n")
    if args.depth is not None:
        out.write(f"closure portraits of depth {args.depth}: {fincon.count_closure_truncations(d, args.depth)}\n")
    return 0


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)
    for name in ("max_depth", "depth"):
        v = getattr(args, name, None)
        if v is not None and v < 1:
            parser.error(f"--{name.replace('_', '-')} must be at least 1")
    try:
        return {"report": cmd_report, "verify": cmd_verify, "patterns": cmd_patterns}[args.command](args, out)
    except kp.ResourceLimit as e:
        parser.error(str(e))
    except kp.FrameworkInapplicable as e:
        sys.stderr.write(f"error: {e}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
