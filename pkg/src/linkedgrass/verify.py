"""Named verification suites over small instances.

Each suite exercises one cluster of structural facts (Weyl arithmetic,
admissibility, stratum counts and orders, decomposition, degeneration,
realizability, the dimension-one stratification, multidegree twisting) and
returns a report dict with a `passed` flag, parameters, and per-check
details.  The command line (`linkedgrass verify`) and the acceptance tests
both run these.
"""

from __future__ import annotations

import itertools
import math
import random
import time
from typing import Sequence

from . import admissible as adm
from . import gf
from . import multidegree as md
from . import quiver as qv
from . import weyl
from .lattice import configuration

# weakly independent instances with d <= 4 and few vertices, shared by the
# quiver-side suites
WEAKLY_INDEPENDENT_INSTANCES: dict[str, tuple[list[tuple[int, ...]], int]] = {
    "segment-d2": ([(0, 0), (1, 0)], 1),
    "triangle-d3": ([(0, 0, 0), (1, 0, 0), (1, 1, 0)], 1),
    "triangle-d3-r2": ([(0, 0, 0), (1, 0, 0), (1, 1, 0)], 2),
    "path-d2": ([(0, 0), (1, 0), (2, 0)], 1),
    "alcove-d4-r2": ([(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0)], 2),
    "branched-d4": ([(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0)], 1),
    "branched-d4-r2": ([(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0)], 2),
}

# not weakly independent: two triangles glued along an edge
SHARED_EDGE_TRIANGLES = [(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 1, 0)]


def _report(name: str, passed: bool, **details) -> dict:
    out = {"suite": name, "passed": bool(passed)}
    out.update(details)
    return out


def _quiver(vertices) -> qv.Quiver:
    return qv.Quiver(configuration(vertices))


def suite_weyl(d: int = 4, seed: int = 0, trials: int = 400) -> dict:
    """Length formula on block translations, parahoric orders, group axioms."""
    checks = {}
    ok = True
    for dd in range(2, d + 1):
        for r in range(1, dd):
            got = weyl.length(weyl.translation(tuple([1] * r + [0] * (dd - r))))
            if got != r * (dd - r):
                ok = False
                checks[f"length-d{dd}-r{r}"] = got
    checks["block_translation_lengths"] = ok

    omega = adm.standard_alcove(4)
    orders = (
        len(weyl.face_stabilizer(omega)),
        len(weyl.face_stabilizer(omega[:3])),
        len(weyl.face_stabilizer([omega[0]])),
    )
    checks["parahoric_orders"] = orders
    parahoric_ok = orders == (1, 2, 24)

    rng = random.Random(seed)
    axiom_ok = True
    for _ in range(trials):
        dd = rng.randint(2, min(d, 6))

        def rand_elem():
            sigma = list(range(1, dd + 1))
            rng.shuffle(sigma)
            return weyl.WeylElement(
                tuple(sigma), tuple(rng.randint(-2, 2) for _ in range(dd))
            )

        g, h, k = rand_elem(), rand_elem(), rand_elem()
        a = tuple(rng.randint(-3, 3) for _ in range(dd))
        if weyl.compose(weyl.compose(g, h), k) != weyl.compose(g, weyl.compose(h, k)):
            axiom_ok = False
        if weyl.compose(g, weyl.invert(g)) != weyl.identity(dd):
            axiom_ok = False
        if weyl.act(weyl.compose(g, h), a) != weyl.act(g, weyl.act(h, a)):
            axiom_ok = False
    checks["group_axioms"] = axiom_ok

    return _report("weyl", ok and parahoric_ok and axiom_ok, d=d, checks=checks)


def suite_admissibility(d: int = 3, length_cap: int = 8) -> dict:
    """Coordinate and Bruhat admissibility criteria agree on a length ball."""
    results = {}
    passed = True
    for dd in range(2, d + 1):
        for r in range(1, dd):
            ok, witness = adm.admissibility_equivalence_check(r, dd, length_cap=length_cap)
            results[f"d{dd}-r{r}"] = True if ok else f"counterexample {witness}"
            passed = passed and ok
    return _report("admissibility", passed, d=d, length_cap=length_cap, checks=results)


def suite_components(d: int = 4) -> dict:
    """Top stratum count C(d, r) and dimension r(d-r) on standard alcoves."""
    results = {}
    passed = True
    for dd in range(2, d + 1):
        quiver = _quiver(adm.standard_alcove(dd))
        for r in range(1, dd):
            tops = adm.top_strata(quiver, r)
            dims = {adm.stratum_dimension(c.faces[0], r) for c in tops}
            ok = len(tops) == math.comb(dd, r) and dims == {r * (dd - r)}
            results[f"d{dd}-r{r}"] = {"tops": len(tops), "dims": sorted(dims), "ok": ok}
            passed = passed and ok
    return _report("components", passed, d=d, checks=results)


def _order_equivalence(quiver: qv.Quiver, r: int) -> bool:
    cols = adm.enumerate_admissible_collections(quiver, r)
    ranks = [adm.stratum_rank_vector(c, quiver) for c in cols]
    for (x, rx), (y, ry) in itertools.product(zip(cols, ranks), repeat=2):
        if adm.generalized_bruhat_leq(x, y, quiver) != rx.leq(ry):
            return False
    return True


def suite_orders(d: int = 4) -> dict:
    """Generalized Bruhat order equals componentwise rank order."""
    results = {}
    passed = True
    instances = []
    for dd in range(2, d + 1):
        omega = adm.standard_alcove(dd)
        instances.append((f"alcove-d{dd}", omega, 1))
        if dd > 2:
            instances.append((f"face-d{dd}", omega[: dd - 1], 1))
        if dd >= 3:
            instances.append((f"alcove-d{dd}-r2", omega, 2))
    instances.append(("path-d2", [(0, 0), (1, 0), (2, 0)], 1))
    instances.append(("path-d3", [(0, 0, 0), (1, 1, 0), (2, 2, 0)], 1))
    instances.append(
        ("branched-d4", [(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0)], 1)
    )
    for name, verts, r in instances:
        ok = _order_equivalence(_quiver(verts), r)
        results[name] = ok
        passed = passed and ok
    return _report("orders", passed, d=d, checks=results)


def suite_strata(ps: Sequence[int] = (2, 3), budget: int = 10_000_000) -> dict:
    """Enumerated rank vectors equal the realizable stratum labels."""
    results = {}
    passed = True
    for name, (verts, r) in WEAKLY_INDEPENDENT_INSTANCES.items():
        quiver = _quiver(verts)
        labels = {
            adm.stratum_rank_vector(c, quiver)
            for c in adm.enumerate_admissible_collections(quiver, r)
        }
        realizable = {
            adm.stratum_rank_vector(c, quiver) for c in adm.realizable_strata(quiver, r)
        }
        per_p = {
            p: {qv.rank_vector(M, quiver) for M in qv.enumerate_subreps(quiver, r, p, budget)}
            for p in ps
        }
        stable = all(per_p[p] == per_p[ps[0]] for p in ps)
        contained = all(per_p[p] <= labels for p in ps)
        exact = all(per_p[p] == realizable for p in ps)
        ok = stable and contained and exact
        results[name] = {
            "labels": len(labels),
            "realizable": len(realizable),
            "enumerated": {p: len(v) for p, v in per_p.items()},
            "ok": ok,
        }
        passed = passed and ok
    # not weakly independent: enumerated set must be a p-stable subset of labels
    quiver = _quiver(SHARED_EDGE_TRIANGLES)
    labels = {
        adm.stratum_rank_vector(c, quiver)
        for c in adm.enumerate_admissible_collections(quiver, 1)
    }
    per_p = {
        p: {qv.rank_vector(M, quiver) for M in qv.enumerate_subreps(quiver, 1, p, budget)}
        for p in ps
    }
    ok = all(v <= labels for v in per_p.values()) and all(
        per_p[p] == per_p[ps[0]] for p in ps
    )
    results["shared-edge-triangles"] = {
        "labels": len(labels),
        "enumerated": {p: len(v) for p, v in per_p.items()},
        "ok": ok,
    }
    passed = passed and ok
    return _report("strata", passed, checks=results)


def _random_subrep(quiver: qv.Quiver, p: int, rng: random.Random) -> qv.SubRep:
    seeds = []
    for _ in range(rng.randint(0, 3)):
        v = rng.choice(quiver.vertices)
        vec = tuple(rng.randrange(p) for _ in range(quiver.d))
        if not gf.is_zero(vec):
            seeds.append((v, vec))
    return qv.generated(quiver, seeds, p)


def suite_decomposition(trials: int = 1000, seed: int = 7, ps: Sequence[int] = (2, 3)) -> dict:
    """Random sub-representations decompose, reassemble, and match the
    multiplicity formulas."""
    results = {}
    passed = True
    for name, (verts, _) in WEAKLY_INDEPENDENT_INSTANCES.items():
        quiver = _quiver(verts)
        rng = random.Random(seed)
        failures = 0
        count = 0
        per_p = max(1, trials // len(ps))
        for p in ps:
            for _ in range(per_p):
                M = _random_subrep(quiver, p, rng)
                count += 1
                try:
                    summands = qv.decompose(M, quiver, check_independent=False)
                except AssertionError:
                    failures += 1
                    continue
                phi = qv.rank_vector(M, quiver)
                for t, mult in qv.type_multiset(summands, quiver, p).items():
                    if qv.multiplicities_from_rank(phi, t, quiver) != mult:
                        failures += 1
                        break
        results[name] = {"trials": count, "failures": failures}
        passed = passed and failures == 0
    return _report("decomposition", passed, trials=trials, seed=seed, checks=results)


def _phi_classes(quiver: qv.Quiver, r: int, p: int, budget: int) -> dict:
    classes = {}
    for M in qv.enumerate_subreps(quiver, r, p, budget):
        classes.setdefault(qv.rank_vector(M, quiver), M)
    return classes


def suite_degeneration(ps: Sequence[int] = (2, 3), budget: int = 10_000_000) -> dict:
    """Whenever ranks are comparable, deformation chains reach the target,
    each step realizing its predicted increment exactly."""
    results = {}
    passed = True
    for name, (verts, r) in WEAKLY_INDEPENDENT_INSTANCES.items():
        quiver = _quiver(verts)
        for p in ps:
            classes = _phi_classes(quiver, r, p, budget)
            chains = failures = 0
            for phi, M in classes.items():
                for phi2 in classes:
                    if phi != phi2 and phi.leq(phi2):
                        chains += 1
                        try:
                            qv.deform_chain(M, quiver, phi2)
                        except qv.DeformationError:
                            failures += 1
            results[f"{name}-p{p}"] = {"chains": chains, "failures": failures}
            passed = passed and failures == 0
    return _report("degeneration", passed, checks=results)


def suite_projective(ps: Sequence[int] = (2, 3), budget: int = 10_000_000) -> dict:
    """deform_step returns none exactly on the maximal rank-vector classes."""
    results = {}
    passed = True
    for name, (verts, r) in WEAKLY_INDEPENDENT_INSTANCES.items():
        quiver = _quiver(verts)
        for p in ps:
            classes = _phi_classes(quiver, r, p, budget)
            phis = list(classes)
            mismatches = 0
            for phi, M in classes.items():
                is_max = not any(phi != o and phi.leq(o) for o in phis)
                step = qv.deform_step(M, quiver, check_independent=False)
                if (step is None) != is_max:
                    mismatches += 1
            results[f"{name}-p{p}"] = {"classes": len(phis), "mismatches": mismatches}
            passed = passed and mismatches == 0
    return _report("projective", passed, checks=results)


def suite_simplex(p: int = 2) -> dict:
    """Inequality characterization equals the brute-force rank image on
    simplices with at most three vertices and entries at most two."""
    instances = [
        ([(0, 0), (1, 0)], (1, 1)),
        ([(0, 0), (1, 0)], (1, 0)),
        ([(0, 0, 0), (1, 0, 0), (1, 1, 0)], (1, 1, 1)),
        ([(0, 0, 0), (1, 1, 0)], (2, 1)),
        ([(0, 0, 0, 0), (1, 1, 0, 0), (1, 1, 1, 0)], (2, 2, 2)),
        ([(0, 0, 0, 0), (1, 1, 1, 0)], (2, 2)),
        ([(0, 0, 0, 0), (1, 1, 0, 0), (2, 2, 1, 1)], (2, 1, 2)),
    ]
    results = {}
    passed = True
    for verts, dims in instances:
        quiver = _quiver(verts)
        cycle = quiver.simplices[0]
        n = len(cycle) - 1
        dim_map = dict(zip(cycle, dims))
        image = set()
        for M in qv.enumerate_subreps(quiver, dim_map, p):
            rv = qv.rank_vector(M, quiver).as_dict()
            key = []
            for i in range(n + 1):
                for j in range(i + 1, i + n + 1):
                    key.append(((i, j), rv[(cycle[i], cycle[j % (n + 1)])]))
            image.add(tuple(sorted(key)))
        offdiag = [(i, j) for i in range(n + 1) for j in range(i + 1, i + n + 1)]
        accepted = set()
        for vals in itertools.product(
            *[range(min(dims[i], dims[j % (n + 1)]) + 1) for (i, j) in offdiag]
        ):
            entries = dict(zip(offdiag, vals))
            for i in range(n + 1):
                entries[(i, i)] = dims[i]
            ok, _ = adm.simplex_rank_realizable(entries, list(dims), quiver, p)
            if ok:
                accepted.add(
                    tuple(sorted((k, v) for k, v in entries.items() if k[0] != k[1]))
                )
        ok = image == accepted
        results[str((verts, dims))] = {
            "brute": len(image),
            "accepted": len(accepted),
            "ok": ok,
        }
        passed = passed and ok
    return _report("simplex", passed, p=p, checks=results)


def suite_dim1(p: int = 2) -> dict:
    """Dimension-one strata equal faces; rank order is reverse containment."""
    instances = [
        [(0, 0), (1, 0)],
        [(0, 0, 0), (1, 0, 0), (1, 1, 0)],
        [(0, 0), (1, 0), (2, 0)],
        [(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0)],
        SHARED_EDGE_TRIANGLES,
        [(0, 0), (1, 0), (2, 0), (3, 0), (4, 0)],
    ]
    results = {}
    passed = True
    for verts in instances:
        quiver = _quiver(verts)
        report = adm.r1_order_check(quiver, p)
        constructed = all(
            adm.r1_face_of(adm.r1_rep_of_face(quiver, tuple(sorted(f)), p), quiver)[0]
            == frozenset(f)
            for f in adm.complex_faces(quiver)
        )
        ok = report["ok"] and constructed
        report["constructed"] = constructed
        results[str(verts)] = report
        passed = passed and ok
    return _report("dim1", passed, p=p, checks=results)


def suite_kn(n: int = 6) -> dict:
    """Complete-graph multidegree family for all sizes up to n."""
    results = {}
    passed = True
    for k in range(2, n + 1):
        rep = md.kn_instance(k)
        results[f"K{k}"] = {
            "formulas": rep.formulas_match,
            "concentrated": rep.concentrated,
            "vbar": rep.vbar_matches,
            "nested": rep.nested_chain,
        }
        passed = passed and rep.ok
    return _report("kn", passed, n=n, checks=results)


SUITES = {
    "weyl": suite_weyl,
    "admissibility": suite_admissibility,
    "components": suite_components,
    "orders": suite_orders,
    "strata": suite_strata,
    "decomposition": suite_decomposition,
    "degeneration": suite_degeneration,
    "projective": suite_projective,
    "simplex": suite_simplex,
    "dim1": suite_dim1,
    "kn": suite_kn,
}


def run_suite(name: str, **kwargs) -> dict:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; available: {sorted(SUITES)}")
    fn = SUITES[name]
    accepted = {
        k: v
        for k, v in kwargs.items()
        if v is not None and k in fn.__code__.co_varnames[: fn.__code__.co_argcount]
    }
    start = time.time()
    report = fn(**accepted)
    report["elapsed_s"] = round(time.time() - start, 2)
    return report


def run_all(**kwargs) -> list[dict]:
    return [run_suite(name, **kwargs) for name in SUITES]
