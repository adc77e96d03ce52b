import itertools
import random

import pytest

from linkedgrass import gf
from linkedgrass import quiver as qv
from linkedgrass.lattice import configuration


def make_quiver(vertices):
    return qv.Quiver(configuration(vertices))


OMEGA3 = [(0, 0, 0), (1, 0, 0), (1, 1, 0)]
SEGMENT = [(0, 0), (1, 0)]
PATH2 = [(0, 0), (1, 0), (2, 0)]
BRANCHED = [(0, 0, 0, 0), (1, 0, 0, 0), (1, 1, 0, 0), (0, 0, 1, 0)]


def test_build_quiver_simplex_cycle():
    quiver = make_quiver(OMEGA3)
    chain = quiver.simplices[0]
    expected = {(chain[i], chain[(i + 1) % 3]) for i in range(3)}
    assert set(quiver.arrows) == expected


def test_build_quiver_two_cycle():
    quiver = make_quiver(SEGMENT)
    assert set(quiver.arrows) == {((0, 0), (1, 0)), ((1, 0), (0, 0))}


def test_build_quiver_chain_has_no_long_arrows():
    quiver = make_quiver(PATH2)
    assert ((0, 0), (2, 0)) not in quiver.arrows
    assert ((2, 0), (0, 0)) not in quiver.arrows
    assert len(quiver.arrows) == 4


def oracle_arrows(quiver):
    """All-paths factoring oracle: an arrow survives iff no non-repeating
    path of length >= 2 composes to the same reduced map."""
    verts = quiver.vertices
    kept = []
    for u, v in itertools.permutations(verts, 2):
        target = quiver.trans[(u, v)]
        found = False
        for k in range(1, len(verts) - 1):
            for middle in itertools.permutations([w for w in verts if w not in (u, v)], k):
                path = (u,) + middle + (v,)
                shift = sum(quiver.trans[(a, b)].n for a, b in zip(path, path[1:]))
                support = frozenset(range(1, quiver.d + 1))
                for a, b in zip(path, path[1:]):
                    support &= quiver.trans[(a, b)].support
                if shift == target.n and support == target.support:
                    found = True
                    break
            if found:
                break
        if not found:
            kept.append((u, v))
    return set(kept)


@pytest.mark.parametrize(
    "vertices",
    [OMEGA3, SEGMENT, PATH2, BRANCHED, [(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 1, 0)]],
)
def test_two_step_arrow_removal_matches_all_paths_oracle(vertices):
    quiver = make_quiver(vertices)
    assert set(quiver.arrows) == oracle_arrows(quiver)


def test_build_quiver_rejects_non_convex():
    with pytest.raises(ValueError):
        make_quiver([(0, 0), (2, 0)])


@pytest.mark.parametrize("vertices", [OMEGA3, PATH2, BRANCHED])
def test_every_pair_map_is_an_arrow_path_composite(vertices):
    quiver = make_quiver(vertices)
    for u in quiver.vertices:
        for v in quiver.vertices:
            if u == v:
                continue
            target = quiver.trans[(u, v)]
            found = False
            stack = [(u, 0, frozenset(range(1, quiver.d + 1)), frozenset({u}))]
            while stack and not found:
                node, shift, support, seen = stack.pop()
                for nxt in quiver.out_arrows[node]:
                    if nxt in seen:
                        continue
                    t = quiver.trans[(node, nxt)]
                    s2, supp2 = shift + t.n, support & t.support
                    if nxt == v:
                        if s2 == target.n and supp2 == target.support:
                            found = True
                            break
                    else:
                        stack.append((nxt, s2, supp2, seen | {nxt}))
            assert found, f"map {u}->{v} is not a composite along quiver arrows"


def test_ambient_ranks():
    quiver = make_quiver(OMEGA3)
    M = qv.ambient(quiver, 2)
    phi = qv.rank_vector(M, quiver).as_dict()
    for u in quiver.vertices:
        assert phi[(u, u)] == 3
        for v in quiver.vertices:
            if u != v:
                assert phi[(u, v)] == len(quiver.trans[(u, v)].support)
    # composites along a full cycle vanish
    chain = quiver.simplices[0]
    support = frozenset(range(1, 4))
    cycle = chain + (chain[0],)
    for a, b in zip(cycle, cycle[1:]):
        support &= quiver.trans[(a, b)].support
    assert not support


def test_is_subrep():
    quiver = make_quiver(SEGMENT)
    p = 2
    assert qv.is_subrep(qv.zero_rep(quiver, p), quiver) == (True, None)
    assert qv.is_subrep(qv.ambient(quiver, p), quiver) == (True, None)
    bad = qv.SubRep(p, {(0, 0): gf.rref([(0, 1)], p), (1, 0): gf.rref([(1, 0)], p)})
    ok, witness = qv.is_subrep(bad, quiver)
    assert not ok and witness == ((0, 0), (1, 0))


def test_generated():
    quiver = make_quiver(OMEGA3)
    p = 3
    assert qv.generated(quiver, [], p) == qv.zero_rep(quiver, p)
    full = []
    for v in quiver.vertices:
        for k in range(quiver.d):
            full.append((v, tuple(1 if i == k else 0 for i in range(quiver.d))))
    assert qv.generated(quiver, full, p) == qv.ambient(quiver, p)
    one = qv.generated(quiver, [((0, 0, 0), (1, 1, 1))], p)
    assert all(len(b) <= 1 for b in one.spaces.values())
    assert qv.is_subrep(one, quiver) == (True, None)


def test_support_of_generated():
    quiver = make_quiver(SEGMENT)
    p = 2
    assert qv.support_of_generated(quiver, (0, 0), (1, 1), p) == frozenset(SEGMENT)
    # e1 at (0,0) dies under the support-{2} map
    assert qv.support_of_generated(quiver, (0, 0), (1, 0), p) == frozenset({(0, 0)})
    with pytest.raises(ValueError):
        qv.support_of_generated(quiver, (0, 0), (0, 0), p)


def test_rank_vector_zero_and_single_generator():
    quiver = make_quiver(OMEGA3)
    p = 2
    zero = qv.rank_vector(qv.zero_rep(quiver, p), quiver)
    assert all(v == 0 for _, v in zero.entries)
    one = qv.generated(quiver, [((0, 0, 0), (1, 1, 1))], p)
    phi = qv.rank_vector(one, quiver).as_dict()
    supp = qv.support_of_generated(quiver, (0, 0, 0), (1, 1, 1), p)
    for u in quiver.vertices:
        assert phi[(u, u)] == (1 if u in supp else 0)
        for v in quiver.vertices:
            if u != v:
                assert phi[(u, v)] in (0, 1)


def test_decompose_zero_and_ambient_segment():
    quiver = make_quiver(SEGMENT)
    p = 2
    assert qv.decompose(qv.zero_rep(quiver, p), quiver) == []
    summands = qv.decompose(qv.ambient(quiver, p), quiver)
    types = qv.type_multiset(summands, quiver, p)
    assert len(summands) == 2
    assert all(t.is_projective(quiver) for t in types)
    assert {t.root for t in types} == set(quiver.vertices)


@pytest.mark.parametrize("vertices", [SEGMENT, OMEGA3, PATH2, BRANCHED])
def test_decompose_random_reassembly_and_multiplicities(vertices):
    quiver = make_quiver(vertices)
    rng = random.Random(7)
    for p in (2, 3):
        for _ in range(125):
            seeds = []
            for _ in range(rng.randint(0, 3)):
                v = rng.choice(quiver.vertices)
                vec = tuple(rng.randrange(p) for _ in range(quiver.d))
                if not gf.is_zero(vec):
                    seeds.append((v, vec))
            M = qv.generated(quiver, seeds, p)
            summands = qv.decompose(M, quiver)  # reassembly asserted inside
            phi = qv.rank_vector(M, quiver)
            for t, mult in qv.type_multiset(summands, quiver, p).items():
                assert qv.multiplicities_from_rank(phi, t, quiver) == mult


def test_decompose_rejects_dependent_configuration():
    quiver = make_quiver([(0, 0, 0), (1, 0, 0), (1, 1, 0), (2, 1, 0)])
    with pytest.raises(ValueError):
        qv.decompose(qv.ambient(quiver, 2), quiver)


def test_enumerate_zero_dims():
    quiver = make_quiver(SEGMENT)
    reps = list(qv.enumerate_subreps(quiver, 0, 2))
    assert reps == [qv.zero_rep(quiver, 2)]


def test_enumerate_segment_count_against_direct_oracle():
    # direct enumeration over all pairs of lines, filtering closure by hand
    quiver = make_quiver(SEGMENT)
    p = 2
    lines = gf.subspaces(2, 1, p)
    direct = []
    for l0 in lines:
        for l1 in lines:
            ok = True
            for row in l0:
                if not gf.contains(l1, quiver.apply_map((0, 0), (1, 0), row, p), p):
                    ok = False
            for row in l1:
                if not gf.contains(l0, quiver.apply_map((1, 0), (0, 0), row, p), p):
                    ok = False
            if ok:
                direct.append((l0, l1))
    assert len(direct) == 5
    reps = list(qv.enumerate_subreps(quiver, 1, p))
    assert len(reps) == 5
    assert {(M.spaces[(0, 0)], M.spaces[(1, 0)]) for M in reps} == set(direct)


def test_enumerate_count_invariant_under_relabeling():
    # the same chain translated inside the apartment
    a = make_quiver(PATH2)
    b = make_quiver([(0, 0), (0, 1), (0, 2)])
    for p in (2, 3):
        assert len(list(qv.enumerate_subreps(a, 1, p))) == len(
            list(qv.enumerate_subreps(b, 1, p))
        )


def test_enumerate_budget_exceeded():
    quiver = make_quiver(OMEGA3)
    with pytest.raises(qv.BudgetExceeded):
        list(qv.enumerate_subreps(quiver, 1, 3, budget=3))


def test_enumerate_matches_brute_force_product_filter():
    quiver = make_quiver(OMEGA3)
    p = 2
    spaces = gf.subspaces(3, 1, p)
    brute = 0
    for combo in itertools.product(spaces, repeat=3):
        rep = qv.SubRep(p, dict(zip(quiver.vertices, combo)))
        if qv.is_subrep(rep, quiver)[0]:
            brute += 1
    assert brute == len(list(qv.enumerate_subreps(quiver, 1, p)))


@pytest.mark.parametrize("vertices", [PATH2, BRANCHED])
def test_rank_vector_hull_constancy_and_bounds(vertices):
    from linkedgrass.lattice import convex_hull_pair

    quiver = make_quiver(vertices)
    rng = random.Random(3)
    p = 2
    for _ in range(60):
        seeds = []
        for _ in range(rng.randint(1, 3)):
            v = rng.choice(quiver.vertices)
            vec = tuple(rng.randrange(p) for _ in range(quiver.d))
            if not gf.is_zero(vec):
                seeds.append((v, vec))
        M = qv.generated(quiver, seeds, p)
        phi = qv.rank_vector(M, quiver).as_dict()
        for u in quiver.vertices:
            for v in quiver.vertices:
                if u == v:
                    continue
                assert phi[(u, v)] <= min(phi[(u, u)], phi[(v, v)])
                w = convex_hull_pair(u, v)[1]
                assert phi[(u, v)] == phi[(u, w)]


@pytest.mark.parametrize("vertices", [SEGMENT, OMEGA3, BRANCHED])
def test_rank_vector_determines_type_multiset(vertices):
    quiver = make_quiver(vertices)
    p = 2
    by_phi = {}
    for M in qv.enumerate_subreps(quiver, 1, p):
        multiset = tuple(
            sorted(
                (t.root, tuple(sorted(t.support)), mult)
                for t, mult in qv.type_multiset(qv.decompose(M, quiver), quiver, p).items()
            )
        )
        by_phi.setdefault(qv.rank_vector(M, quiver), set()).add(multiset)
    # same rank vector, same multiset; distinct rank vectors, distinct multisets
    assert all(len(m) == 1 for m in by_phi.values())
    flattened = [next(iter(m)) for m in by_phi.values()]
    assert len(set(flattened)) == len(flattened)


def test_deform_step_none_iff_projective():
    quiver = make_quiver(SEGMENT)
    p = 2
    projective = qv.generated(quiver, [((0, 0), (1, 1)), ((1, 0), (1, 1))], p)
    assert qv.deform_step(projective, quiver) is None
    non_projective = qv.SubRep(
        p, {(0, 0): gf.rref([(1, 0)], p), (1, 0): gf.rref([(0, 1)], p)}
    )
    step = qv.deform_step(non_projective, quiver)
    assert step is not None
    before = qv.rank_vector(non_projective, quiver)
    after = qv.rank_vector(step.rep, quiver)
    assert before.leq(after) and before != after
    assert step.rep.dims() == non_projective.dims()
    expected = {k: v + step.increment.get(k, 0) for k, v in before.as_dict().items()}
    assert after.as_dict() == expected


def test_deform_chain_terminates_within_bound():
    quiver = make_quiver(OMEGA3)
    p = 2
    classes = {}
    for M in qv.enumerate_subreps(quiver, 1, p):
        classes.setdefault(qv.rank_vector(M, quiver), M)
    bound = quiver.d * len(quiver.vertices) ** 2
    for phi, M in classes.items():
        current, steps = M, 0
        while True:
            step = qv.deform_step(current, quiver, check_independent=False)
            if step is None:
                break
            current = step.rep
            steps += 1
            assert steps <= bound
        top = qv.rank_vector(current, quiver)
        assert phi.leq(top)


def test_extend_partial_identity_and_agreement():
    quiver = make_quiver(OMEGA3)
    p = 3
    for M in itertools.islice(qv.enumerate_subreps(quiver, 1, p), 10):
        ext = qv.extend_partial(quiver, dict(M.spaces), 1, p)
        assert ext == M


def test_extend_partial_existence_oracle():
    quiver = make_quiver(OMEGA3)
    p = 2
    verts = quiver.vertices
    reps = list(qv.enumerate_subreps(quiver, 1, p))
    for s0 in gf.subspaces(3, 1, p):
        for s2 in gf.subspaces(3, 1, p):
            partial = {verts[0]: s0, verts[2]: s2}
            ext = qv.extend_partial(quiver, partial, 1, p)
            exists = any(
                M.spaces[verts[0]] == s0 and M.spaces[verts[2]] == s2 for M in reps
            )
            assert (ext is not None) == exists
            if ext is not None:
                assert ext.spaces[verts[0]] == s0 and ext.spaces[verts[2]] == s2
                assert qv.is_subrep(ext, quiver) == (True, None)


def test_extend_partial_kernel_seed():
    quiver = make_quiver(SEGMENT)
    p = 2
    # a line inside the kernel of the outgoing map extends
    partial = {(0, 0): gf.rref([(1, 0)], p)}
    ext = qv.extend_partial(quiver, partial, 1, p)
    assert ext is not None and ext.spaces[(0, 0)] == gf.rref([(1, 0)], p)


def test_subrep_json_roundtrip():
    quiver = make_quiver(SEGMENT)
    M = qv.generated(quiver, [((0, 0), (1, 1))], 3)
    assert qv.SubRep.from_json(M.to_json()) == M
