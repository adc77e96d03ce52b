"""Admissible faces, collections, Bruhat strata and the generalized order.

An admissible face of a maximal simplex perturbs each representative vector
by a 0/1 vector with r ones, staying a face of the same type; it is indexed
by a coset h * W_simplex in the extended affine Weyl group.  Collections
glue faces across simplices through double-coset equality over the shared
face stabilizers, and carry rank vectors, dimensions and the generalized
Bruhat order.  The dimension-one stratification is the face complex of the
configuration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from . import gf, weyl
from .lattice import Vertex, canonicalize, chain_order, convex_hull_pair
from .quiver import Quiver, RankVector, SubRep, generated, rank_vector

Vec = tuple[int, ...]


class FieldTooSmall(Exception):
    """No witness vector exists over the requested prime field."""


# ---------------------------------------------------------------------------
# Admissible faces of a single simplex


@dataclass(frozen=True)
class AdmissibleFace:
    simplex: tuple[Vertex, ...]  # chain-ordered canonical representatives
    vectors: tuple[Vec, ...]  # perturbed integer vectors, one per simplex vertex
    coset: weyl.WeylElement  # h with h . rep = vectors, well-defined mod W_simplex

    @property
    def increments(self) -> tuple[Vec, ...]:
        return tuple(
            tuple(x - r for x, r in zip(vec, rep))
            for vec, rep in zip(self.vectors, self.simplex)
        )


def _solve_face_map(
    source: Sequence[Vec], target: Sequence[Vec], d: int
) -> Optional[weyl.WeylElement]:
    """Some extended Weyl element sending the source vectors to the target."""
    for images in itertools.permutations(range(1, d + 1)):
        sigma = tuple(images)
        moved = weyl.perm_apply(sigma, source[0])
        trans = tuple(t - m for t, m in zip(target[0], moved))
        g = weyl.WeylElement(sigma, trans)
        if all(weyl.act(g, s) == tuple(t) for s, t in zip(source, target)):
            return g
    return None


def admissible_faces(simplex: Sequence[Vertex], r: int) -> list[AdmissibleFace]:
    """All admissible size-r perturbations of a maximal simplex."""
    chain = chain_order(simplex)
    d = len(chain[0])
    if not 0 < r < d:
        raise ValueError(f"need 0 < r < d, got r={r}, d={d}")
    increments = [
        tuple(1 if i in ones else 0 for i in range(d))
        for ones in itertools.combinations(range(d), r)
    ]
    out = []
    for eps in itertools.product(increments, repeat=len(chain)):
        vectors = tuple(
            tuple(x + e for x, e in zip(rep, inc)) for rep, inc in zip(chain, eps)
        )
        ok = all(
            all(a <= b <= a + 1 for a, b in zip(vectors[k], vectors[k + 1]))
            for k in range(len(chain) - 1)
        )
        if ok and len(chain) > 1:
            ok = all(b <= a + 1 for a, b in zip(vectors[0], vectors[-1]))
        if not ok:
            continue
        coset = _solve_face_map(chain, vectors, d)
        assert coset is not None, f"no Weyl element maps {chain} to {vectors}"
        out.append(AdmissibleFace(chain, vectors, coset))
    return out


def enumerate_admissible_alcoves(r: int, d: int) -> list[tuple[Vec, ...]]:
    """Admissible perturbations of the standard alcove, as vector arrays."""
    omega = tuple(tuple(1 if k < i else 0 for k in range(d)) for i in range(d))
    return [face.vectors for face in admissible_faces(omega, r)]


def standard_alcove(d: int) -> tuple[Vertex, ...]:
    return tuple(tuple(1 if k < i else 0 for k in range(d)) for i in range(d))


def admissibility_equivalence_check(
    r: int, d: int, length_cap: int = 8, iota_range: int = 1
) -> tuple[bool, Optional[weyl.WeylElement]]:
    """Agreement of the Bruhat-side and coordinate-side admissibility tests.

    Quantifies over all extended elements w * iota^s with l(w) <= length_cap
    and s within iota_range of the residues 0..d-1 around r.
    """
    omega = standard_alcove(d)
    mu_translations = [
        weyl.translation(tuple(perm))
        for perm in sorted(set(itertools.permutations([1] * r + [0] * (d - r))))
    ]
    cap = max(length_cap, r * (d - r)) + 1
    exponents = sorted(
        set(range(-iota_range, d + iota_range)) | {r - d, r, r + d}
    )
    for w in weyl.wa_elements(d, length_cap):
        for s in exponents:
            g = weyl.compose(w, weyl.iota_pow(d, s))
            bruhat_side = any(
                weyl.bruhat_leq(g, t, cap=cap) for t in mu_translations
            )
            images = [weyl.act(g, om) for om in omega]
            coord_side = all(
                all(o <= x <= o + 1 for o, x in zip(om, img))
                and sum(img) - sum(om) == r
                for om, img in zip(omega, images)
            )
            if bruhat_side != coord_side:
                return False, g
    return True, None


# ---------------------------------------------------------------------------
# Collections over a convex configuration


@dataclass(frozen=True)
class AdmissibleCollection:
    r: int
    faces: tuple[AdmissibleFace, ...]  # representative face per maximal simplex
    keys: tuple[weyl.WeylElement, ...]  # canonical double-coset key per simplex


def _simplex_stabilizer(simplex: Sequence[Vertex]) -> weyl.ParahoricGroup:
    return weyl.face_stabilizer(simplex)


def enumerate_admissible_collections(quiver: Quiver, r: int) -> list[AdmissibleCollection]:
    """Tuples of per-simplex admissible classes glued over shared faces."""
    simplices = [chain_order(s) for s in quiver.simplices]
    stabilizers = [_simplex_stabilizer(s) for s in simplices]

    per_simplex: list[list[tuple[weyl.WeylElement, AdmissibleFace]]] = []
    for simplex, stab in zip(simplices, stabilizers):
        classes: dict[weyl.WeylElement, AdmissibleFace] = {}
        for face in admissible_faces(simplex, r):
            key = weyl.double_coset_min(face.coset, stab, stab)
            if key not in classes or face.vectors < classes[key].vectors:
                classes[key] = face
        per_simplex.append(sorted(classes.items(), key=lambda kv: kv[1].vectors))

    shared_stabs: dict[tuple[int, int], weyl.ParahoricGroup] = {}
    for j1 in range(len(simplices)):
        for j2 in range(j1 + 1, len(simplices)):
            shared = sorted(set(simplices[j1]) & set(simplices[j2]))
            if shared:
                shared_stabs[(j1, j2)] = weyl.face_stabilizer(shared)

    collections: list[AdmissibleCollection] = []

    def glue(idx: int, chosen: list[tuple[weyl.WeylElement, AdmissibleFace]]):
        if idx == len(simplices):
            collections.append(
                AdmissibleCollection(
                    r,
                    tuple(face for _, face in chosen),
                    tuple(key for key, _ in chosen),
                )
            )
            return
        for key, face in per_simplex[idx]:
            ok = True
            for j1 in range(idx):
                pair = (j1, idx)
                if pair not in shared_stabs:
                    continue
                stab = shared_stabs[pair]
                left = weyl.double_coset_min(chosen[j1][1].coset, stab, stab)
                right = weyl.double_coset_min(face.coset, stab, stab)
                if left != right:
                    ok = False
                    break
            if ok:
                glue(idx + 1, chosen + [(key, face)])

    glue(0, [])
    return collections


def stratum_rank_vector(collection: AdmissibleCollection, quiver: Quiver) -> RankVector:
    """Rank vector of the stratum: in-simplex ranks from the increments,
    extended to all pairs by hull propagation."""
    r = collection.r
    data: dict[tuple[Vertex, Vertex], int] = {}
    for v in quiver.vertices:
        data[(v, v)] = r
    for face in collection.faces:
        eps = face.increments
        for a, u in enumerate(face.simplex):
            for b, v in enumerate(face.simplex):
                if u == v:
                    continue
                support = quiver.trans[(u, v)].support
                value = sum(1 for k in support if eps[a][k - 1] == 1)
                if (u, v) in data:
                    assert data[(u, v)] == value, "inconsistent glued rank at shared pair"
                else:
                    data[(u, v)] = value
    remaining = [
        (u, v)
        for u in quiver.vertices
        for v in quiver.vertices
        if (u, v) not in data
    ]
    while remaining:
        progressed = []
        for u, v in remaining:
            w = convex_hull_pair(u, v)[1]
            if (u, w) in data:
                data[(u, v)] = data[(u, w)]
                progressed.append((u, v))
        remaining = [pair for pair in remaining if pair not in data]
        assert progressed, "hull propagation stalled"
    return RankVector.from_dict(data)


_STANDARD_POSITION: dict[AdmissibleFace, tuple] = {}


def _to_standard_position(
    face: AdmissibleFace,
) -> tuple[list[Vec], weyl.WeylElement, weyl.WeylElement]:
    """Conjugate the simplex to a standard face: returns (omega_I, g, g^-1 h g).

    Lengths and the Bruhat order are based at the standard alcove, so coset
    comparisons and dimensions are read off after moving the simplex onto
    omega_I by the element g with g . omega_I = simplex.
    """
    if face in _STANDARD_POSITION:
        return _STANDARD_POSITION[face]
    d = len(face.simplex[0])
    sums = [sum(v) for v in face.simplex]
    span = sums[-1] - sums[0]
    for i0 in range(d - span):
        types = [i0 + s - sums[0] for s in sums]
        omega_i = [tuple(1 if k < i else 0 for k in range(d)) for i in types]
        g = _solve_face_map(omega_i, face.simplex, d)
        if g is not None:
            h_std = weyl.compose(weyl.compose(weyl.invert(g), face.coset), g)
            _STANDARD_POSITION[face] = (omega_i, g, h_std)
            return omega_i, g, h_std
    raise AssertionError("simplex is not a face of any standard type")


def generalized_bruhat_leq(
    x: AdmissibleCollection,
    y: AdmissibleCollection,
    quiver: Quiver,
    cap: int = weyl.DEFAULT_LEN_CAP,
) -> bool:
    """Componentwise double-coset order over the maximal simplices.

    Each simplex is conjugated to standard position first; the double-coset
    order there is the closure order of the corresponding Schubert cells.
    """
    assert x.r == y.r
    d = quiver.d
    shift = weyl.iota_pow(d, -x.r)
    for face_x, face_y in zip(x.faces, y.faces):
        assert face_x.simplex == face_y.simplex
        omega_i, _, hx = _to_standard_position(face_x)
        _, _, hy = _to_standard_position(face_y)
        w1 = weyl.face_stabilizer(omega_i)
        shifted = [weyl.act_class(weyl.iota_pow(d, x.r), om) for om in omega_i]
        w2 = weyl.face_stabilizer(shifted)
        gx = weyl.compose(hx, shift)
        gy = weyl.compose(hy, shift)
        if not weyl.double_coset_leq(gx, gy, w1, w2, cap):
            return False
    return True


def top_strata(quiver: Quiver, r: int) -> list[AdmissibleCollection]:
    """Maximal collections under the generalized Bruhat order."""
    collections = enumerate_admissible_collections(quiver, r)
    out = []
    for x in collections:
        if not any(
            y is not x and generalized_bruhat_leq(x, y, quiver) and not generalized_bruhat_leq(y, x, quiver)
            for y in collections
        ):
            out.append(x)
    return out


def stratum_dimension(face: AdmissibleFace, r: int, cap: int = weyl.DEFAULT_LEN_CAP) -> int:
    """Dimension of a one-simplex stratum from the minmax representative length."""
    d = len(face.simplex[0])
    omega_i, _, h_std = _to_standard_position(face)
    w1 = weyl.face_stabilizer(omega_i)
    shifted = [weyl.act_class(weyl.iota_pow(d, r), om) for om in omega_i]
    w2 = weyl.face_stabilizer(shifted)
    rep = weyl.minmax_rep(weyl.compose(h_std, weyl.iota_pow(d, -r)), w1, w2, cap)
    return weyl.length(rep, cap)


def all_summand_types(quiver: Quiver) -> list:
    """Every single-generator summand type: projective per root, plus one
    type per (root, cycle, death index) with a vector dying exactly there."""
    from .quiver import SummandType, _hang_positions

    types = []
    everything = frozenset(quiver.vertices)
    for v in quiver.vertices:
        types.append(SummandType(v, everything))
        for cycle in quiver.cycles_at(v):
            n = len(cycle) - 1
            hang = _hang_positions(quiver, cycle)
            for m in range(1, n + 1):
                prev_supp = quiver.trans[(v, cycle[m - 1])].support
                this_supp = quiver.trans[(v, cycle[m])].support
                if not (prev_supp - this_supp):
                    continue  # no vector dies exactly at position m
                support = frozenset(w for w in quiver.vertices if hang[w] < m)
                types.append(SummandType(v, support))
    return types


def rank_vector_realizable(phi: RankVector, quiver: Quiver) -> bool:
    """Field-free test: the label is the rank vector of some sub-representation.

    Derives the multiplicity of every summand type from the label, requires
    them nonnegative, and checks that the multiset reproduces the dimensions
    and the full rank vector.  Only valid over locally weakly independent
    configurations, where the decomposition theory applies.
    """
    from . import independence
    from .quiver import multiplicities_from_rank

    ok, _ = independence.weakly_independent(quiver)
    if not ok:
        raise ValueError("realizability formulas need a locally weakly independent configuration")
    ranks = phi.as_dict()
    types = all_summand_types(quiver)
    mults = {}
    for t in types:
        alpha = multiplicities_from_rank(phi, t, quiver)
        if alpha < 0:
            return False
        mults[t] = alpha
    dims = {v: 0 for v in quiver.vertices}
    predicted = {
        (u, w): 0 for u in quiver.vertices for w in quiver.vertices if u != w
    }
    for t, alpha in mults.items():
        if alpha == 0:
            continue
        for v in t.support:
            dims[v] += alpha
        for u in t.support:
            for w in t.support:
                if u != w and quiver.factors_through(t.root, u, w):
                    predicted[(u, w)] += alpha
    if any(dims[v] != ranks[(v, v)] for v in quiver.vertices):
        return False
    return all(predicted[(u, w)] == ranks[(u, w)] for (u, w) in predicted)


def realizable_strata(quiver: Quiver, r: int) -> list[AdmissibleCollection]:
    return [
        c
        for c in enumerate_admissible_collections(quiver, r)
        if rank_vector_realizable(stratum_rank_vector(c, quiver), quiver)
    ]


# ---------------------------------------------------------------------------
# Rank-vector realizability on a simplex


def simplex_rank_realizable(
    entries: dict[tuple[int, int], int],
    dims: Sequence[int],
    quiver: Quiver,
    p: int = 2,
) -> tuple[bool, Optional[SubRep]]:
    """Inequality test for realizability of a candidate rank tuple on a simplex,
    with an explicit witness sub-representation when realizable.

    `entries[(i, j)]` for 0 <= i <= n, i <= j <= n+i is the rank from vertex i
    to vertex j mod n+1, measured along the forward arcs; entries beyond
    winding n are zero by convention.
    """
    assert len(quiver.simplices) == 1, "realizability test expects a single simplex"
    cycle = chain_order(quiver.simplices[0])
    n = len(cycle) - 1
    dims = list(dims)

    def dd(i: int, j: int) -> int:
        i0 = i % (n + 1)
        j0 = j + (i0 - i)
        if 0 <= j0 - i0 <= n:
            return entries.get((i0, j0), 0)
        return 0

    for i in range(n + 1):
        if dd(i, i) != dims[i]:
            return False, None
    for i in range(n + 1):
        for j in range(i, i + n + 1):
            a = dd(i, j) + dd(i - 1, j + 1) - dd(i, j + 1) - dd(i - 1, j)
            if a < 0:
                return False, None
    for i in range(n + 1):
        ker_dim = len(cycle[0]) - len(quiver.trans[(cycle[i], cycle[(i + 1) % (n + 1)])].support)
        if dd(i, i) - dd(i, i + 1) > ker_dim:
            return False, None

    # witness: for each target slot j, plant m_j generators that survive the
    # whole cycle from v_{j+1} and cut them down to the prescribed arcs
    seeds: list[tuple[Vertex, Vec]] = []
    d = len(cycle[0])
    for j in range(n + 1):
        m_j = dd(j, j) - dd(j, j + 1)
        if m_j == 0:
            continue
        nxt = cycle[(j + 1) % (n + 1)]
        free_coords = sorted(quiver.trans[(nxt, cycle[j])].support)
        assert m_j <= len(free_coords)
        arcs = []
        for k in range(j - n, j + 1):
            a = dd(k, j) + dd(k - 1, j + 1) - dd(k, j + 1) - dd(k - 1, j)
            arcs.extend([k % (n + 1)] * a)
        assert len(arcs) == m_j
        for coord, start in zip(free_coords, arcs):
            y = tuple(1 if c == coord - 1 else 0 for c in range(d))
            vec = quiver.apply_map(nxt, cycle[start], y, p)
            assert not gf.is_zero(vec)
            seeds.append((cycle[start], vec))
    witness = generated(quiver, seeds, p)
    target = {}
    for a, u in enumerate(cycle):
        for b in range(a, a + n + 1):
            v = cycle[b % (n + 1)]
            if u == v:
                target[(u, v)] = dd(a, a)
            else:
                target[(u, v)] = dd(a, b)
    achieved = rank_vector(witness, quiver).as_dict()
    assert achieved == target, f"witness rank vector mismatch: {achieved} != {target}"
    return True, witness


# ---------------------------------------------------------------------------
# The dimension-one stratification


def complex_faces(quiver: Quiver) -> list[tuple[Vertex, ...]]:
    """All faces of the simplicial complex spanned by the configuration."""
    faces = set()
    for simplex in quiver.simplices:
        for k in range(1, len(simplex) + 1):
            for sub in itertools.combinations(simplex, k):
                faces.add(tuple(sorted(sub)))
    return sorted(faces)


def r1_face_of(M: SubRep, quiver: Quiver) -> tuple[frozenset[Vertex], dict[Vertex, frozenset[Vertex]]]:
    """Maximal vertices of a dimension-one subrep, plus the covering partition."""
    eps = {}
    for v in quiver.vertices:
        assert len(M.spaces[v]) == 1, "dimension-one representation expected"
        eps[v] = M.spaces[v][0]
    maximal = set()
    for u in quiver.vertices:
        if all(
            gf.is_zero(quiver.apply_map(v, u, eps[v], M.p))
            for v in quiver.vertices
            if v != u
        ):
            maximal.add(u)
    for a in maximal:
        for b in maximal:
            if a != b:
                from .lattice import classes_adjacent

                assert classes_adjacent(a, b), "maximal vertices must form a simplex"
    covering = {
        u: frozenset(
            w
            for w in quiver.vertices
            if w == u or not gf.is_zero(quiver.apply_map(u, w, eps[u], M.p))
        )
        for u in sorted(maximal)
    }
    return frozenset(maximal), covering


def _j_sets(quiver: Quiver, face: Sequence[Vertex]) -> dict[Vertex, list[Vertex]]:
    """Partition of the vertices by the unique face vertex every map factors through."""
    out: dict[Vertex, list[Vertex]] = {u: [] for u in face}
    for w in quiver.vertices:
        hits = [
            u
            for u in face
            if all(quiver.factors_through(x, u, w) for x in face)
        ]
        assert len(hits) == 1, f"no unique factoring face vertex for {w}"
        out[hits[0]].append(w)
    return out


def r1_order_check(quiver: Quiver, p: int = 2) -> dict:
    """Verify the dimension-one equivalences over all enumerated points.

    Checks that the maximal-vertex faces biject with the faces of the
    complex, and that the rank order is the reverse of face containment.
    """
    from .quiver import enumerate_subreps, rank_vector

    faces = {frozenset(f) for f in complex_faces(quiver)}
    face_phi: dict[frozenset, set] = {}
    for M in enumerate_subreps(quiver, 1, p):
        delta, covering = r1_face_of(M, quiver)
        face_phi.setdefault(delta, set()).add(rank_vector(M, quiver))
        covered = set()
        for part in covering.values():
            assert not covered & part, "covering sets overlap"
            covered |= part
        assert covered == set(quiver.vertices), "covering sets miss a vertex"
    bijective = (
        set(face_phi) == faces
        and all(len(s) == 1 for s in face_phi.values())
        and len({next(iter(s)) for s in face_phi.values()}) == len(face_phi)
    )
    items = [(delta, next(iter(s))) for delta, s in face_phi.items()]
    order_equivalent = all(
        phi1.leq(phi2) == (d2 <= d1)
        for d1, phi1 in items
        for d2, phi2 in items
    )
    return {
        "faces": len(faces),
        "realized": len(face_phi),
        "bijective": bijective,
        "order_equivalent": order_equivalent,
        "ok": bijective and order_equivalent,
    }


def r1_rep_of_face(quiver: Quiver, face: Sequence[Vertex], p: int) -> SubRep:
    """A dimension-one subrep whose maximal-vertex simplex is the given face."""
    face = tuple(sorted(canonicalize(v) for v in face))
    j_sets = _j_sets(quiver, face)
    seeds = []
    d = quiver.d
    for u in face:
        outside = [w for w in quiver.vertices if w not in j_sets[u]]
        blocked = set()
        for w in outside:
            blocked |= quiver.trans[(u, w)].support
        coords = [k for k in range(1, d + 1) if k not in blocked]
        eps = tuple(1 if (k + 1) in coords else 0 for k in range(d))
        if gf.is_zero(eps) or any(
            gf.is_zero(quiver.apply_map(u, w, eps, p)) for w in j_sets[u] if w != u
        ):
            raise FieldTooSmall(
                f"no vector at {u} supported away from {blocked} covers {j_sets[u]}"
            )
        seeds.append((u, eps))
    rep = generated(quiver, seeds, p)
    assert all(len(b) == 1 for b in rep.spaces.values()), "generated rep is not dimension one"
    got, _ = r1_face_of(rep, quiver)
    assert got == frozenset(face), f"realized face {got} differs from {face}"
    return rep
