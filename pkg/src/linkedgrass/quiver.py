"""Quivers of convex lattice configurations and their sub-representations.

The quiver Q(Gamma) has the configuration's classes as vertices; the arrow
(u, v) survives exactly when the reduction map u -> v admits no two-step
factorization with matching shift and support.  In apartment coordinates
every map is a 0/1 diagonal projection, so a representation datum is just a
subspace of F_p^d per vertex, stored as a reduced-echelon basis.

Sub-representations over locally weakly independent configurations split
into summands generated by a single vector; `decompose` implements the
constructive splitting, `deform_step` the rank-raising deformation toward
projective points, and `enumerate_subreps` a pruned brute-force oracle over
the whole quiver Grassmannian.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from . import gf
from .gf import Basis, Vec
from .lattice import (
    Configuration,
    TransitionData,
    Vertex,
    is_convex,
    maximal_simplices,
    transition,
)


class BudgetExceeded(Exception):
    """Enumeration left the configured candidate budget."""


class DeformationError(Exception):
    """No validating deformation was found for a non-projective point."""


class Quiver:
    """Q(Gamma) plus the transition data of every ordered pair."""

    def __init__(self, config: Configuration):
        convex, missing = is_convex(config)
        if not convex:
            raise ValueError(f"configuration is not convex; missing {missing}")
        self.config = config
        self.d = config.d
        self.vertices: tuple[Vertex, ...] = config.vertices
        self.trans: dict[tuple[Vertex, Vertex], TransitionData] = {}
        for u in self.vertices:
            for v in self.vertices:
                self.trans[(u, v)] = transition(u, v)
        self.arrows: tuple[tuple[Vertex, Vertex], ...] = tuple(
            (u, v)
            for u in self.vertices
            for v in self.vertices
            if u != v and not self._factors_two_step(u, v)
        )
        self.in_arrows: dict[Vertex, tuple[Vertex, ...]] = {
            v: tuple(u for (u, w) in self.arrows if w == v) for v in self.vertices
        }
        self.out_arrows: dict[Vertex, tuple[Vertex, ...]] = {
            u: tuple(w for (x, w) in self.arrows if x == u) for u in self.vertices
        }
        self.simplices: tuple[tuple[Vertex, ...], ...] = tuple(maximal_simplices(config))
        self._entry_cache: dict[tuple[Vertex, tuple[Vertex, ...]], Vertex] = {}

    # -- structure ---------------------------------------------------------

    def _factors_two_step(self, u: Vertex, v: Vertex) -> bool:
        target = self.trans[(u, v)]
        for k in self.vertices:
            if k in (u, v):
                continue
            first = self.trans[(u, k)]
            second = self.trans[(k, v)]
            if first.n + second.n == target.n and (first.support & second.support) == target.support:
                return True
        return False

    def factors_through(self, u: Vertex, k: Vertex, v: Vertex) -> bool:
        """Whether the map u -> v equals the composite through k."""
        first = self.trans[(u, k)]
        second = self.trans[(k, v)]
        return (
            first.n + second.n == self.trans[(u, v)].n
            and (first.support & second.support) == self.trans[(u, v)].support
        )

    def cycles_at(self, v: Vertex) -> list[tuple[Vertex, ...]]:
        """Each maximal simplex through v as its quiver cycle, rotated to start at v."""
        out = []
        for simplex in self.simplices:
            if v in simplex:
                i = simplex.index(v)
                out.append(simplex[i:] + simplex[:i])
        return out

    def cycle_through(self, v: Vertex, z: Vertex) -> tuple[Vertex, ...]:
        """The cycle at v whose last vertex (the in-neighbour) is z."""
        for cycle in self.cycles_at(v):
            if cycle[-1] == z:
                return cycle
        raise ValueError(f"{z} is not an in-neighbour of {v} on any cycle")

    def entry_vertex(self, w: Vertex, simplex: tuple[Vertex, ...]) -> Vertex:
        """The unique simplex vertex through which every map into w factors."""
        key = (w, simplex)
        if key in self._entry_cache:
            return self._entry_cache[key]
        if w in simplex:
            self._entry_cache[key] = w
            return w
        hits = [
            c
            for c in simplex
            if all(self.factors_through(x, c, w) for x in simplex)
        ]
        assert len(hits) == 1, f"entry vertex into {simplex} not unique for {w}: {hits}"
        self._entry_cache[key] = hits[0]
        return hits[0]

    # -- linear data -------------------------------------------------------

    def apply_map(self, u: Vertex, v: Vertex, vector: Vec, p: int) -> Vec:
        support = self.trans[(u, v)].support
        return tuple(x % p if (k + 1) in support else 0 for k, x in enumerate(vector))

    def map_image(self, u: Vertex, v: Vertex, basis: Basis, p: int) -> Basis:
        return gf.span([self.apply_map(u, v, row, p) for row in basis], p)

    def map_kernel_ambient(self, u: Vertex, v: Vertex, p: int) -> Basis:
        support = self.trans[(u, v)].support
        rows = []
        for k in range(self.d):
            if (k + 1) not in support:
                row = [0] * self.d
                row[k] = 1
                rows.append(tuple(row))
        return tuple(rows)

    def to_dot(self) -> str:
        lines = ["digraph quiver {"]
        for u, v in self.arrows:
            t = self.trans[(u, v)]
            supp = ",".join(str(k) for k in sorted(t.support))
            lines.append(f'  "{u}" -> "{v}" [label="n={t.n} supp={{{supp}}}"];')
        lines.append("}")
        return "\n".join(lines)


def build_quiver(config: Configuration) -> Quiver:
    return Quiver(config)


# ---------------------------------------------------------------------------
# Sub-representations


class SubRep:
    """Subspace of F_p^d per vertex, closed under all transition maps."""

    __slots__ = ("p", "spaces", "_key")

    def __init__(self, p: int, spaces: dict[Vertex, Basis]):
        self.p = p
        self.spaces = dict(spaces)
        self._key = (p, tuple(sorted(self.spaces.items())))

    def dims(self) -> dict[Vertex, int]:
        return {v: len(b) for v, b in self.spaces.items()}

    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, SubRep) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"SubRep(p={self.p}, dims={self.dims()})"

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "spaces": [[list(v), [list(row) for row in basis]] for v, basis in sorted(self.spaces.items())],
            }
        )

    @staticmethod
    def from_json(text: str) -> "SubRep":
        data = json.loads(text)
        spaces = {
            tuple(v): gf.rref([tuple(row) for row in rows], data["p"]) for v, rows in data["spaces"]
        }
        return SubRep(int(data["p"]), spaces)


def ambient(quiver: Quiver, p: int) -> SubRep:
    full = tuple(
        tuple(1 if i == k else 0 for i in range(quiver.d)) for k in range(quiver.d)
    )
    return SubRep(p, {v: full for v in quiver.vertices})


def zero_rep(quiver: Quiver, p: int) -> SubRep:
    return SubRep(p, {v: () for v in quiver.vertices})


def is_subrep(M: SubRep, quiver: Quiver) -> tuple[bool, Optional[tuple[Vertex, Vertex]]]:
    """Closure under the quiver arrows; returns a violating arrow on failure."""
    for u, v in quiver.arrows:
        for row in M.spaces[u]:
            if not gf.contains(M.spaces[v], quiver.apply_map(u, v, row, M.p), M.p):
                return False, (u, v)
    return True, None


def generated(quiver: Quiver, seeds: Sequence[tuple[Vertex, Vec]], p: int) -> SubRep:
    """Smallest sub-representation containing the seed vectors."""
    spaces = {v: [] for v in quiver.vertices}
    for v, vector in seeds:
        spaces[v].append(gf.vec(vector, p))
    changed = True
    while changed:
        changed = False
        for u, v in quiver.arrows:
            basis_v = gf.span(spaces[v], p)
            for row in gf.span(spaces[u], p):
                img = quiver.apply_map(u, v, row, p)
                if not gf.is_zero(img) and not gf.contains(basis_v, img, p):
                    spaces[v].append(img)
                    basis_v = gf.span(spaces[v], p)
                    changed = True
    return SubRep(p, {v: gf.span(rows, p) for v, rows in spaces.items()})


@dataclass(frozen=True)
class RankVector:
    entries: tuple[tuple[tuple[Vertex, Vertex], int], ...]

    @staticmethod
    def from_dict(data: dict[tuple[Vertex, Vertex], int]) -> "RankVector":
        return RankVector(tuple(sorted(data.items())))

    def as_dict(self) -> dict[tuple[Vertex, Vertex], int]:
        return dict(self.entries)

    def get(self, u: Vertex, v: Vertex) -> int:
        return dict(self.entries)[(u, v)]

    def leq(self, other: "RankVector") -> bool:
        mine = dict(self.entries)
        theirs = dict(other.entries)
        return all(mine[k] <= theirs[k] for k in mine)


def rank_vector(M: SubRep, quiver: Quiver) -> RankVector:
    data = {}
    for u in quiver.vertices:
        for v in quiver.vertices:
            if u == v:
                data[(u, v)] = len(M.spaces[u])
            else:
                data[(u, v)] = len(quiver.map_image(u, v, M.spaces[u], M.p))
    return RankVector.from_dict(data)


def support_of_generated(quiver: Quiver, v: Vertex, vector: Vec, p: int) -> frozenset[Vertex]:
    """Vertices where the rep generated by one vector at v is nonzero."""
    vector = gf.vec(vector, p)
    if gf.is_zero(vector):
        raise ValueError("zero vector has empty support")
    out = {v}
    for u in quiver.vertices:
        if u != v and not gf.is_zero(quiver.apply_map(v, u, vector, p)):
            out.add(u)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Decomposition into single-generator summands


@dataclass(frozen=True)
class SummandType:
    root: Vertex
    support: frozenset[Vertex]

    def is_projective(self, quiver: Quiver) -> bool:
        return self.support == frozenset(quiver.vertices)


@dataclass(frozen=True)
class Summand:
    root: Vertex
    vector: Vec

    def type_in(self, quiver: Quiver, p: int) -> SummandType:
        return SummandType(self.root, support_of_generated(quiver, self.root, self.vector, p))


def _split_single_generators(quiver: Quiver, v: Vertex, space: Basis, p: int) -> list[Vec]:
    """Split span(space) at v into vectors each generating one summand."""
    gens: list[Vec] = []
    work = space
    while gf.dim(work) > 0:
        found = None
        for cycle in quiver.cycles_at(v):
            n = len(cycle) - 1
            prev_kernel: Basis = ()
            for m in range(1, n + 1):
                kernel_m = gf.intersect(work, quiver.map_kernel_ambient(v, cycle[m], p), p)
                for eps in gf.nonzero_vectors(kernel_m, p):
                    if not gf.contains(prev_kernel, eps, p):
                        found = (eps, cycle, m)
                        break
                prev_kernel = kernel_m
                if found:
                    break
            if found:
                break
        if found is None:
            # all directions survive: split into echelon basis lines
            gens.extend(work)
            break
        eps, cycle, m = found
        z = cycle[-1]
        big = []
        for u in quiver.in_arrows[v]:
            if u != z:
                big.extend(quiver.map_kernel_ambient(v, u, p))
        big.extend(quiver.map_kernel_ambient(v, cycle[m - 1], p) if m > 1 else ())
        keep = gf.intersect(work, gf.rref(big, p), p)
        assert not gf.contains(keep, eps, p), "split vector landed in the kept kernel sum"
        base = list(keep)
        blocked = gf.rref(base + [eps], p)
        for row in work:
            if not gf.contains(blocked, row, p):
                base.append(row)
                blocked = gf.rref(base + [eps], p)
        new_work = gf.rref(base, p)
        assert gf.dim(new_work) == gf.dim(work) - 1
        gens.append(eps)
        work = new_work
    return gens


def decompose(M: SubRep, quiver: Quiver, check_independent: bool = True) -> list[Summand]:
    """Split M into summands generated by a single vector.

    The per-vertex seed spaces are carved out by the chain-complement
    construction; the result is validated to reassemble M as a direct sum
    (dimension count at every vertex).
    """
    if check_independent:
        from . import independence

        ok, cert = independence.weakly_independent(quiver)
        if not ok:
            raise ValueError(f"configuration is not locally weakly independent: {cert}")
    p = M.p
    summands: list[Summand] = []
    for v in quiver.vertices:
        space = M.spaces[v]
        if not space:
            continue
        images = {}
        for u in quiver.in_arrows[v]:
            images[u] = quiver.map_image(u, v, M.spaces[u], p)
        parts: list[Basis] = []
        for u in quiver.in_arrows[v]:
            cycle = quiver.cycle_through(v, u)
            n = len(cycle) - 1
            a_prev: Basis = ()
            b_prev: Basis = ()
            c_rows: list[Vec] = []
            for i in range(1, n + 1):
                kernel = quiver.map_kernel_ambient(v, cycle[i], p)
                a_i = gf.intersect(images[u], kernel, p)
                b_i = gf.intersect(space, kernel, p)
                c_i = gf.complement(gf.sum_spaces(a_i, b_prev, p), b_i, p)
                c_rows.extend(c_i)
                a_prev, b_prev = a_i, b_i
            parts.append(gf.rref(c_rows, p))
        inner_rows: list[Vec] = []
        for u in quiver.in_arrows[v]:
            inner_rows.extend(images[u])
        for part in parts:
            inner_rows.extend(part)
        u_prime = gf.complement(gf.rref(inner_rows, p), space, p)
        seed_rows = list(u_prime)
        for part in parts:
            seed_rows.extend(part)
        seed_space = gf.rref(seed_rows, p)
        for eps in _split_single_generators(quiver, v, seed_space, p):
            summands.append(Summand(v, eps))
    reassembled = reassemble(summands, quiver, p)
    assert reassembled == M, "decomposition failed to reassemble the representation"
    total = {v: 0 for v in quiver.vertices}
    for s in summands:
        rep = generated(quiver, [(s.root, s.vector)], p)
        for v in quiver.vertices:
            total[v] += len(rep.spaces[v])
    assert total == M.dims(), "decomposition summands are not independent"
    return summands


def reassemble(summands: Sequence[Summand], quiver: Quiver, p: int) -> SubRep:
    return generated(quiver, [(s.root, s.vector) for s in summands], p)


def type_multiset(summands: Sequence[Summand], quiver: Quiver, p: int) -> dict[SummandType, int]:
    out: dict[SummandType, int] = {}
    for s in summands:
        t = s.type_in(quiver, p)
        out[t] = out.get(t, 0) + 1
    return out


def _death_data(quiver: Quiver, t: SummandType) -> tuple[tuple[Vertex, ...], int]:
    """Cycle through the root on which the summand dies, and the death index."""
    hits = []
    for cycle in quiver.cycles_at(t.root):
        m = next((i for i, w in enumerate(cycle) if w not in t.support), None)
        if m is not None:
            assert all(cycle[j] not in t.support for j in range(m, len(cycle)))
            hits.append((cycle, m))
    assert len(hits) == 1, f"summand type must die on exactly one cycle, got {len(hits)}"
    return hits[0]


def multiplicities_from_rank(
    phi: RankVector, t: SummandType, quiver: Quiver
) -> int:
    """Multiplicity of the summand type in any rep with rank vector phi."""
    ranks = phi.as_dict()
    v = t.root
    if t.is_projective(quiver):
        x_v = ranks[(v, v)]
        return x_v - sum(x_v - ranks[(v, u)] for u in quiver.in_arrows[v])
    cycle, m = _death_data(quiver, t)
    n = len(cycle) - 1

    def entry(i: int, j: int) -> int:
        if not 0 <= j - i <= n:
            return 0
        return ranks[(cycle[i % (n + 1)], cycle[j % (n + 1)])]

    return entry(0, m - 1) + entry(-1, m) - entry(0, m) - entry(-1, m - 1)


# ---------------------------------------------------------------------------
# Brute-force enumeration of the quiver Grassmannian


def enumerate_subreps(
    quiver: Quiver,
    dims: dict[Vertex, int] | Sequence[int] | int,
    p: int,
    budget: int = 10_000_000,
) -> Iterator[SubRep]:
    """Every sub-representation with the given dimension vector, exactly once.

    Vertices are visited along the arrow structure so that incoming images
    prune the candidate subspaces; raises BudgetExceeded when more than
    `budget` candidate spaces are inspected.
    """
    if isinstance(dims, int):
        dim_map = {v: dims for v in quiver.vertices}
    elif isinstance(dims, dict):
        dim_map = dict(dims)
    else:
        dim_map = dict(zip(quiver.vertices, dims))
    for v, x in dim_map.items():
        if not 0 <= x <= quiver.d:
            raise ValueError(f"dimension {x} at {v} out of range")

    arrow_set = set(quiver.arrows)
    order: list[Vertex] = []
    remaining = set(quiver.vertices)
    while remaining:
        if not order:
            pick = min(remaining)
        else:
            pick = max(
                sorted(remaining),
                key=lambda v: sum(
                    1 for u in order if (u, v) in arrow_set or (v, u) in arrow_set
                ),
            )
        order.append(pick)
        remaining.discard(pick)
    counter = [0]

    def assign(idx: int, chosen: dict[Vertex, Basis]) -> Iterator[SubRep]:
        if idx == len(order):
            yield SubRep(p, chosen)
            return
        v = order[idx]
        lower_rows: list[Vec] = []
        for u in chosen:
            if (u, v) in arrow_set:
                for row in chosen[u]:
                    lower_rows.append(quiver.apply_map(u, v, row, p))
        lower = gf.rref(lower_rows, p)
        if len(lower) > dim_map[v]:
            return
        for cand in gf.superspaces(lower, dim_map[v], quiver.d, p):
            counter[0] += 1
            if counter[0] > budget:
                raise BudgetExceeded(f"enumeration exceeded budget {budget}")
            ok = True
            for u in chosen:
                if (v, u) in arrow_set:
                    for row in cand:
                        if not gf.contains(chosen[u], quiver.apply_map(v, u, row, p), p):
                            ok = False
                            break
                if not ok:
                    break
            if ok:
                chosen[v] = cand
                yield from assign(idx + 1, chosen)
                del chosen[v]

    yield from assign(0, {})


# ---------------------------------------------------------------------------
# Rank-raising deformation


@dataclass
class DeformStep:
    rep: SubRep
    replaced: Summand
    new_generator: tuple[Vertex, Vec]
    increment: dict[tuple[Vertex, Vertex], int]


def _arc_on_cycle(
    quiver: Quiver, s: Summand, cycle: tuple[Vertex, ...], p: int
) -> Optional[tuple[int, int]]:
    """Positions (start, end_lifted) covered on the cycle, None if disjoint.

    A full cover is reported as (start, start + n); a proper arc always
    starts at the entry position of the summand's root.
    """
    t = s.type_in(quiver, p)
    n = len(cycle) - 1
    covered = [w in t.support for w in cycle]
    if not any(covered):
        return None
    if s.root in cycle:
        start = cycle.index(s.root)
    else:
        start = cycle.index(quiver.entry_vertex(s.root, tuple(sorted(cycle))))
    length = 0
    while length <= n and covered[(start + length) % (n + 1)]:
        length += 1
    assert sum(covered) == length, f"support on cycle is not an arc from {cycle[start]}"
    return (start, start + length - 1)


def _hang_positions(quiver: Quiver, cycle: tuple[Vertex, ...]) -> dict[Vertex, int]:
    """Entry position on the cycle for every vertex of the configuration."""
    simplex = tuple(sorted(cycle))
    return {
        w: cycle.index(quiver.entry_vertex(w, simplex)) for w in quiver.vertices
    }


def _deform_candidates(
    quiver: Quiver, summands: Sequence[Summand], p: int
) -> list[tuple[Summand, Summand, tuple[Vertex, ...], int, int, int]]:
    """Candidate (replaced, donor, cycle, repl_start, donor_rel_start, donor_rel_end).

    The replaced summand covers a proper arc of the cycle; the donor's arc
    must abut or overlap it, extend strictly past its end, and stay clear of
    the replaced root (so the donor generator pulls back to the root).
    """
    candidates = []
    for simplex in quiver.simplices:
        n = len(simplex) - 1
        arcs = []
        for s in summands:
            arc = _arc_on_cycle(quiver, s, simplex, p)
            if arc is not None:
                arcs.append((s, arc))
        for repl, (a_r, b_r) in arcs:
            len_r = b_r - a_r
            if len_r >= n:
                continue  # covers the whole cycle, nothing to extend
            for donor, (a_s, b_s) in arcs:
                if donor is repl:
                    continue
                rel_start = (a_s - a_r) % (n + 1)
                rel_end = rel_start + (b_s - a_s)
                if rel_start == 0:
                    continue  # same start: a basis change, not a deformation
                if rel_start > len_r + 1:
                    continue  # gap between the arcs
                if rel_end <= len_r:
                    continue  # no extension
                if rel_end > n:
                    continue  # donor wraps over the replaced root
                priority = (-(b_s - a_s), rel_start, a_r, donor.root, repl.root)
                candidates.append(
                    (priority, repl, donor, simplex, a_r, rel_start, rel_end)
                )
    candidates.sort(key=lambda c: c[0])
    return [c[1:] for c in candidates]


def _predict_increment(
    quiver: Quiver,
    p: int,
    repl: Summand,
    cycle: tuple[Vertex, ...],
    a_r: int,
    rel_start: int,
    rel_end: int,
    old_len: int,
) -> dict[tuple[Vertex, Vertex], int]:
    """Rank increments: cycle sources over the replaced arc minus the donor
    arc, targets hanging over the newly covered positions.

    Branch vertices over source positions never gain rank: their vectors come
    through the cycle, and pushing back wraps a cycle, hence dies.
    """
    n = len(cycle) - 1
    hang = _hang_positions(quiver, cycle)
    source_rel = [i for i in range(old_len + 1) if not rel_start <= i <= rel_end]
    sources = [cycle[(a_r + i) % (n + 1)] for i in source_rel]
    ext_pos = {(a_r + i) % (n + 1) for i in range(old_len + 1, rel_end + 1)}
    targets = [w for w in quiver.vertices if hang[w] in ext_pos]
    return {(s, t): 1 for s in sources for t in targets}


def deform_step(
    M: SubRep,
    quiver: Quiver,
    target: Optional[RankVector] = None,
    check_independent: bool = True,
) -> Optional[DeformStep]:
    """One rank-raising deformation; None exactly when M is projective.

    Replaces one single-generator summand R by the span of (eps_R + t * eta)
    where eta pulls the generator of a donor arc back to R's root, searching
    t over F_p* and eta over the preimage space, and validating that the
    dimension vector is preserved and the rank vector increases by the
    predicted increments (bounded by `target` when given).
    """
    summands = decompose(M, quiver, check_independent=check_independent)
    p = M.p
    if all(s.type_in(quiver, p).is_projective(quiver) for s in summands):
        return None
    phi = rank_vector(M, quiver).as_dict()
    target_dict = target.as_dict() if target is not None else None

    for repl, donor, cycle, a_r, rel_start, rel_end in _deform_candidates(
        quiver, summands, p
    ):
        n = len(cycle) - 1
        arc = _arc_on_cycle(quiver, repl, cycle, p)
        old_len = arc[1] - arc[0]
        root = cycle[a_r]
        if repl.root != root:
            continue  # proper arcs are rooted at their start; skip degenerate cases
        donor_entry = cycle[(a_r + rel_start) % (n + 1)]
        donor_vec_at_entry = (
            donor.vector
            if donor.root == donor_entry
            else quiver.apply_map(donor.root, donor_entry, donor.vector, p)
        )
        if gf.is_zero(donor_vec_at_entry):
            continue
        # eta with f_{root -> donor_entry}(eta) = donor_vec_at_entry
        support = quiver.trans[(root, donor_entry)].support
        if any(
            donor_vec_at_entry[k] % p != 0 and (k + 1) not in support
            for k in range(quiver.d)
        ):
            continue
        base_eta = tuple(
            donor_vec_at_entry[k] % p if (k + 1) in support else 0 for k in range(quiver.d)
        )
        kernel = quiver.map_kernel_ambient(root, donor_entry, p)
        repl_vec_at_root = repl.vector
        predicted = _predict_increment(
            quiver, p, repl, cycle, a_r, rel_start, rel_end, old_len
        )
        others = [s for s in summands if s is not repl]
        for kernel_part in [()] + list(gf.nonzero_vectors(kernel, p)):
            eta = gf.vec_add(base_eta, kernel_part, p) if kernel_part else base_eta
            for t in range(1, p):
                new_vec = gf.vec_add(repl_vec_at_root, gf.vec_scale(t, eta, p), p)
                new_summands = others + [Summand(root, new_vec)]
                candidate = reassemble(new_summands, quiver, p)
                if candidate.dims() != M.dims():
                    continue
                new_phi = rank_vector(candidate, quiver).as_dict()
                expected = {
                    k: phi[k] + predicted.get(k, 0) for k in phi
                }
                if new_phi != expected:
                    continue
                if target_dict is not None and not all(
                    new_phi[k] <= target_dict[k] for k in new_phi
                ):
                    continue
                return DeformStep(
                    rep=candidate,
                    replaced=repl,
                    new_generator=(root, new_vec),
                    increment=predicted,
                )
    raise DeformationError("no validating deformation found for a non-projective point")


def deform_chain(
    M: SubRep, quiver: Quiver, target: RankVector, max_steps: int = 10_000
) -> list[SubRep]:
    """Strictly rank-increasing chain from M to the target rank vector."""
    chain = [M]
    current = M
    for _ in range(max_steps):
        if rank_vector(current, quiver) == target:
            return chain
        step = deform_step(current, quiver, target=target, check_independent=False)
        if step is None:
            break
        current = step.rep
        chain.append(current)
    if rank_vector(current, quiver) == target:
        return chain
    raise DeformationError("deformation chain did not reach the target rank vector")


# ---------------------------------------------------------------------------
# Extension of partial sub-representations


def extend_partial(
    quiver: Quiver,
    partial: dict[Vertex, Basis],
    r: int,
    p: int,
    check_independent: bool = True,
) -> Optional[SubRep]:
    """Extend r-dimensional spaces on a vertex subset to a full r-dim subrep.

    Returns None exactly when some pullback space has dimension below r.
    """
    if check_independent:
        from . import independence

        ok, cert = independence.weakly_independent(quiver)
        if not ok:
            raise ValueError(f"configuration is not locally weakly independent: {cert}")
    if not partial:
        raise ValueError("empty index set")
    for v, basis in partial.items():
        if len(basis) != r:
            raise ValueError(f"partial space at {v} must have dimension {r}")
    unit = tuple(
        tuple(1 if i == k else 0 for i in range(quiver.d)) for k in range(quiver.d)
    )
    pulled: dict[Vertex, Basis] = {}
    for u in quiver.vertices:
        space = unit
        for v, basis in partial.items():
            if u == v:
                space = gf.intersect(space, basis, p)
            else:
                images = [quiver.apply_map(u, v, e, p) for e in unit]
                space = gf.intersect(space, gf.preimage(images, basis, p), p)
        if len(space) < r:
            return None
        pulled[u] = space

    while True:
        oversized = [u for u in quiver.vertices if len(pulled[u]) > r]
        if not oversized:
            break
        pair = None
        for u2 in sorted(oversized):
            for u1 in quiver.in_arrows[u2]:
                if len(pulled[u1]) == r:
                    pair = (u1, u2)
                    break
            if pair:
                break
        assert pair is not None, "no shrinkable vertex with an exact in-neighbour"
        _, u2 = pair
        w_rows: list[Vec] = []
        for u in quiver.in_arrows[u2]:
            for row in pulled[u]:
                w_rows.append(quiver.apply_map(u, u2, row, p))
        w_space = gf.rref(w_rows, p)
        assert len(w_space) <= r, "incoming image space exceeded the target dimension"
        completed = list(w_space)
        for row in pulled[u2]:
            if len(completed) == r:
                break
            if not gf.contains(gf.rref(completed, p), row, p):
                completed.append(row)
        pulled[u2] = gf.rref(completed, p)

    result = SubRep(p, pulled)
    ok, witness = is_subrep(result, quiver)
    assert ok, f"extension failed closure at arrow {witness}"
    for v, basis in partial.items():
        assert result.spaces[v] == gf.rref(basis, p)
    return result
