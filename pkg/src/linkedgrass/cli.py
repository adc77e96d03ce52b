"""Batch front end: analyze configurations, enumerate strata, run suites.

Subcommands: analyze, quiver, admissible, strata, verify, multidegree.
Exit codes: 0 success, 1 verification failure, 2 input or usage error.
Reports are deterministic for a fixed invocation (one seeded generator,
sorted JSON keys).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import admissible as adm
from . import independence as ind
from . import multidegree as md
from . import quiver as qv
from . import verify as vf
from .lattice import Configuration, is_convex, maximal_simplices


def _load_config(path: str) -> Configuration:
    try:
        return Configuration.from_json(Path(path).read_text())
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: cannot read configuration {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def _emit(report: dict, fmt: str, dot: str | None = None) -> None:
    if fmt == "dot" and dot is not None:
        print(dot)
    elif fmt == "text":
        for key, value in sorted(report.items()):
            print(f"{key}: {value}")
    else:
        print(json.dumps(report, sort_keys=True, indent=2, default=str))


def cmd_analyze(args) -> int:
    config = _load_config(args.config)
    convex, missing = is_convex(config)
    report = {
        "d": config.d,
        "vertices": [list(v) for v in config.vertices],
        "convex": convex,
        "missing": [list(v) for v in missing],
    }
    dot = None
    if convex:
        quiver = qv.Quiver(config)
        ok, certs = ind.weakly_independent(quiver)
        report.update(
            {
                "maximal_simplices": [[list(v) for v in s] for s in quiver.simplices],
                "arrows": [[list(u), list(v)] for u, v in quiver.arrows],
                "weakly_independent": ok,
                "linearly_independent": ind.linearly_independent(quiver),
                "certificates": [json.loads(c.to_json()) for c in certs],
            }
        )
        if ok:
            structure = ind.validate_structure(quiver)
            report["cycles"] = structure.cycle_count
            report["structure_ok"] = structure.ok
        dot = quiver.to_dot()
    else:
        report["warning"] = "configuration is not convex; closure needed"
    _emit(report, args.format, dot)
    return 0


def cmd_quiver(args) -> int:
    config = _load_config(args.config)
    quiver = qv.Quiver(config)
    if args.format == "json":
        report = {
            "arrows": [[list(u), list(v)] for u, v in quiver.arrows],
            "transitions": [
                [list(u), list(v), t.n, sorted(t.support)]
                for (u, v), t in sorted(quiver.trans.items())
                if u != v
            ],
        }
        _emit(report, "json")
    else:
        print(quiver.to_dot())
    return 0


def _hasse_dot(cols, ranks, quiver) -> str:
    lines = ["digraph hasse {"]
    n = len(cols)
    for i in range(n):
        for j in range(n):
            if i == j or not ranks[i].leq(ranks[j]):
                continue
            if any(
                k != i and k != j and ranks[i].leq(ranks[k]) and ranks[k].leq(ranks[j])
                for k in range(n)
            ):
                continue
            lines.append(f'  "s{i}" -> "s{j}";')
    lines.append("}")
    return "\n".join(lines)


def cmd_admissible(args) -> int:
    config = _load_config(args.config)
    quiver = qv.Quiver(config)
    cols = adm.enumerate_admissible_collections(quiver, args.r)
    ranks = [adm.stratum_rank_vector(c, quiver) for c in cols]
    ok_wi, _ = ind.weakly_independent(quiver)
    realizable = None
    if ok_wi:
        realizable = [adm.rank_vector_realizable(rv, quiver) for rv in ranks]
    strata = []
    for idx, (col, rank) in enumerate(zip(cols, ranks)):
        entry = {
            "index": idx,
            "faces": [[list(v) for v in f.vectors] for f in col.faces],
            "ranks": {f"{u}->{v}": val for (u, v), val in rank.entries if u != v},
        }
        if len(quiver.simplices) == 1:
            entry["dimension"] = adm.stratum_dimension(col.faces[0], args.r, cap=args.len_cap)
        if realizable is not None:
            entry["realizable"] = realizable[idx]
        strata.append(entry)
    tops = adm.top_strata(quiver, args.r)
    report = {
        "r": args.r,
        "strata": strata,
        "count": len(cols),
        "top_count": len(tops),
    }
    _emit(report, args.format, _hasse_dot(cols, ranks, quiver))
    return 0


def cmd_strata(args) -> int:
    config = _load_config(args.config)
    quiver = qv.Quiver(config)
    try:
        classes: dict = {}
        for M in qv.enumerate_subreps(quiver, args.r, args.p, args.budget):
            classes.setdefault(qv.rank_vector(M, quiver), []).append(M)
    except qv.BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    labels = {
        adm.stratum_rank_vector(c, quiver)
        for c in adm.enumerate_admissible_collections(quiver, args.r)
    }
    strata = []
    for rank, members in sorted(classes.items(), key=lambda kv: kv[0].entries):
        entry = {
            "ranks": {f"{u}->{v}": val for (u, v), val in rank.entries if u != v},
            "points": len(members),
            "is_stratum_label": rank in labels,
        }
        ok_wi, _ = ind.weakly_independent(quiver)
        if ok_wi:
            summands = qv.decompose(members[0], quiver, check_independent=False)
            entry["summand_types"] = [
                {"root": list(t.root), "support": sorted(map(list, t.support)), "mult": m}
                for t, m in sorted(
                    qv.type_multiset(summands, quiver, args.p).items(),
                    key=lambda kv: (kv[0].root, sorted(kv[0].support)),
                )
            ]
        strata.append(entry)
    mismatch = [s for s in strata if not s["is_stratum_label"]]
    report = {
        "r": args.r,
        "p": args.p,
        "classes": len(classes),
        "points": sum(len(v) for v in classes.values()),
        "strata": strata,
        "cross_check_ok": not mismatch,
    }
    _emit(report, args.format)
    return 0 if not mismatch else 1


def cmd_verify(args) -> int:
    kwargs = {
        "d": args.d,
        "n": args.n,
        "trials": args.trials,
        "seed": args.seed,
        "length_cap": args.len_cap,
        "budget": args.budget,
    }
    if args.p is not None:
        kwargs["p"] = args.p
        kwargs["ps"] = (args.p,)
    names = sorted(vf.SUITES) if args.suite == "all" else [args.suite]
    if any(name not in vf.SUITES for name in names):
        print(f"error: unknown suite {args.suite!r}; available: {sorted(vf.SUITES)} or 'all'", file=sys.stderr)
        return 2
    reports = [vf.run_suite(name, **kwargs) for name in names]
    for report in reports:
        report["seed"] = args.seed
        _emit(report, args.format)
    return 0 if all(r["passed"] for r in reports) else 1


def cmd_multidegree(args) -> int:
    if args.source == "kn":
        if args.n is None:
            print("error: kn mode needs --n", file=sys.stderr)
            return 2
        rep = md.kn_instance(args.n)
        report = {
            "graph": json.loads(rep.graph.to_json()),
            "w0": list(rep.w0),
            "multidegrees": [list(w) for w in rep.multidegrees],
            "formulas_match": rep.formulas_match,
            "concentrated": rep.concentrated,
            "vbar_matches": rep.vbar_matches,
            "twist_vectors": [list(a) for a in rep.twist_vectors],
            "nested_chain": rep.nested_chain,
            "ok": rep.ok,
        }
        _emit(report, args.format)
        return 0 if rep.ok else 1
    try:
        graph = md.DualGraph.from_json(Path(args.source).read_text())
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: cannot read graph {args.source}: {exc}", file=sys.stderr)
        return 2
    if args.w0 is None:
        print("error: graph mode needs --w0", file=sys.stderr)
        return 2
    w0 = tuple(int(x) for x in args.w0.split(","))
    if len(w0) != graph.n:
        print("error: --w0 length does not match the graph", file=sys.stderr)
        return 2
    report = {
        "graph": json.loads(graph.to_json()),
        "w0": list(w0),
        "concentrated_on": {
            v: is_conc for v in range(graph.n) for is_conc in [md.is_concentrated(graph, w0, v)[0]]
        },
        "twist_orbit_sample": [
            list(md.twist_at(graph, w0, v)) for v in range(graph.n)
        ],
    }
    _emit(report, args.format)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linkedgrass",
        description="Desk-scale analysis of lattice configurations and their degenerations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, with_rp=False):
        p.add_argument("--format", choices=["json", "dot", "text"], default="json")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--budget", type=int, default=10_000_000)
        p.add_argument("--len-cap", type=int, default=24, dest="len_cap")
        if with_rp:
            p.add_argument("--r", type=int, default=1)
            p.add_argument("--p", type=int, default=2)

    p_analyze = sub.add_parser("analyze", help="convexity, simplices, quiver, independence")
    p_analyze.add_argument("config")
    common(p_analyze)
    p_analyze.set_defaults(func=cmd_analyze)

    p_quiver = sub.add_parser("quiver", help="export the quiver with shifts and supports")
    p_quiver.add_argument("config")
    common(p_quiver)
    p_quiver.set_defaults(func=cmd_quiver)

    p_adm = sub.add_parser("admissible", help="admissible collections, ranks, dimensions")
    p_adm.add_argument("config")
    common(p_adm, with_rp=True)
    p_adm.set_defaults(func=cmd_admissible)

    p_strata = sub.add_parser("strata", help="brute-force rank strata over F_p")
    p_strata.add_argument("config")
    common(p_strata, with_rp=True)
    p_strata.set_defaults(func=cmd_strata)

    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("suite")
    p_verify.add_argument("--d", type=int, default=None)
    p_verify.add_argument("--n", type=int, default=None)
    p_verify.add_argument("--trials", type=int, default=None)
    p_verify.add_argument("--p", type=int, default=None)
    p_verify.add_argument("--format", choices=["json", "dot", "text"], default="json")
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--budget", type=int, default=None)
    p_verify.add_argument("--len-cap", type=int, default=None, dest="len_cap")
    p_verify.set_defaults(func=cmd_verify)

    p_md = sub.add_parser("multidegree", help="twists, concentration, compatibility sets")
    p_md.add_argument("source", help="'kn' or a graph JSON path")
    p_md.add_argument("--n", type=int, default=None)
    p_md.add_argument("--w0", type=str, default=None)
    common(p_md)
    p_md.set_defaults(func=cmd_multidegree)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
