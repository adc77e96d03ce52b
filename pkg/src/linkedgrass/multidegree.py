"""Multidegrees on a dual graph under twisting.

A twist at a vertex adds the negated Laplacian column: +1 on each neighbour,
-deg(v) at v.  Twists commute, twisting every vertex once is the identity,
and on a connected graph the twist vector between equivalent multidegrees is
unique once one coordinate is pinned to zero.  Concentrated multidegrees and
the finite compatibility set drive the limit-linear-series bookkeeping; the
complete-graph family is built in as a worked instance.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Multidegree = tuple[int, ...]


@dataclass(frozen=True)
class DualGraph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError("self-loops are not allowed")
            if not (0 <= a < self.n and 0 <= b < self.n):
                raise ValueError("edge endpoint out of range")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ValueError("parallel edges are not allowed")
            seen.add(key)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        if self.n > 1:
            reached = {0}
            frontier = [0]
            while frontier:
                v = frontier.pop()
                for u in self.neighbors(v):
                    if u not in reached:
                        reached.add(u)
                        frontier.append(u)
            if len(reached) != self.n:
                raise ValueError("graph is not connected")

    def neighbors(self, v: int) -> list[int]:
        return [b if a == v else a for a, b in self.edges if v in (a, b)]

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def to_json(self) -> str:
        return json.dumps({"n": self.n, "edges": [list(e) for e in self.edges]})

    @staticmethod
    def from_json(text: str) -> "DualGraph":
        data = json.loads(text)
        return DualGraph(int(data["n"]), tuple(tuple(e) for e in data["edges"]))


def complete_graph(n: int) -> DualGraph:
    return DualGraph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def twist_at(graph: DualGraph, w: Sequence[int], v: int) -> Multidegree:
    out = list(w)
    out[v] -= graph.degree(v)
    for u in graph.neighbors(v):
        out[u] += 1
    return tuple(out)


def negative_twist_at(graph: DualGraph, w: Sequence[int], v: int) -> Multidegree:
    out = list(w)
    out[v] += graph.degree(v)
    for u in graph.neighbors(v):
        out[u] -= 1
    return tuple(out)


def apply_twists(graph: DualGraph, w: Sequence[int], counts: Sequence[int]) -> Multidegree:
    out = tuple(w)
    for v, c in enumerate(counts):
        for _ in range(abs(c)):
            out = twist_at(graph, out, v) if c > 0 else negative_twist_at(graph, out, v)
    return out


def is_concentrated(
    graph: DualGraph, w: Sequence[int], v: int
) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Search for an ordering from v along which later degrees go negative."""
    n = graph.n
    start = tuple(w)
    seen: set[frozenset[int]] = set()

    def search(used: frozenset[int], current: Multidegree, order: tuple[int, ...]):
        if len(used) == n:
            return order
        if used in seen:
            return None
        seen.add(used)
        last = order[-1]
        current = negative_twist_at(graph, current, last)
        for nxt in range(n):
            if nxt in used:
                continue
            if current[nxt] < 0:
                hit = search(used | {nxt}, current, order + (nxt,))
                if hit is not None:
                    return hit
        return None

    if n == 1:
        return True, (v,)
    hit = search(frozenset([v]), start, (v,))
    return (hit is not None), hit


def _solve_reduced(
    graph: DualGraph, rhs: Sequence[int], forbidden: int
) -> Optional[list[Fraction]]:
    """Solve L a = rhs with a[forbidden] = 0 by exact elimination."""
    idx = [v for v in range(graph.n) if v != forbidden]
    lap = {
        (a, b): Fraction(
            graph.degree(a) if a == b else (-1 if (min(a, b), max(a, b)) in graph.edges else 0)
        )
        for a in idx
        for b in idx
    }
    mat = [[lap[(a, b)] for b in idx] + [Fraction(rhs[a])] for a in idx]
    m = len(idx)
    for col in range(m):
        piv = next((r for r in range(col, m) if mat[r][col] != 0), None)
        if piv is None:
            return None
        mat[col], mat[piv] = mat[piv], mat[col]
        inv = 1 / mat[col][col]
        mat[col] = [x * inv for x in mat[col]]
        for r in range(m):
            if r != col and mat[r][col] != 0:
                c = mat[r][col]
                mat[r] = [x - c * y for x, y in zip(mat[r], mat[col])]
    solution = [Fraction(0)] * graph.n
    for pos, v in enumerate(idx):
        solution[v] = mat[pos][m]
    return solution


def solve_twist(
    graph: DualGraph,
    w: Sequence[int],
    target: Sequence[int],
    forbidden: int,
) -> Optional[tuple[int, ...]]:
    """Nonnegative integral twist counts from w to target avoiding one vertex.

    The kernel of the twist matrix on a connected graph is the constants, so
    pinning a[forbidden] = 0 makes the solution unique; None means the target
    is not reachable this way.
    """
    if sum(w) != sum(target):
        return None
    rhs = [a - b for a, b in zip(w, target)]  # L a = w - target
    sol = _solve_reduced(graph, rhs, forbidden)
    if sol is None:
        return None
    if any(x.denominator != 1 for x in sol):
        return None
    counts = tuple(int(x) for x in sol)
    if any(x < 0 for x in counts):
        return None
    if apply_twists(graph, w, counts) != tuple(target):
        return None
    return counts


def vbar_set(
    graph: DualGraph,
    w0: Sequence[int],
    concentrated: dict[int, Sequence[int]],
    widen: int = 0,
) -> list[Multidegree]:
    """Twist-equivalent multidegrees from which every concentrated w_v stays
    reachable without twisting at v, enumerated over the nonnegative box."""
    w0 = tuple(w0)
    for v, w_v in concentrated.items():
        ok, _ = is_concentrated(graph, w_v, v)
        if not ok:
            raise ValueError(f"multidegree {w_v} is not concentrated on {v}")
    box = [0] * graph.n
    for v, w_v in concentrated.items():
        base = _solve_reduced(graph, [a - b for a, b in zip(w0, w_v)], v)
        if base is None or any(x.denominator != 1 for x in base):
            raise ValueError(f"{w_v} is not twist-equivalent to {w0}")
        shift = min(base)
        normalized = [int(x - shift) for x in base]
        box = [max(b, x) for b, x in zip(box, normalized)]
    box = [b + widen for b in box]
    members: set[Multidegree] = set()
    for counts in itertools.product(*[range(b + 1) for b in box]):
        w = apply_twists(graph, w0, counts)
        if w in members:
            continue
        if all(
            solve_twist(graph, w, w_v, v) is not None for v, w_v in concentrated.items()
        ):
            members.add(w)
    return sorted(members)


@dataclass
class CompleteGraphReport:
    graph: DualGraph
    w0: Multidegree
    multidegrees: list[Multidegree]
    formulas_match: bool
    concentrated: bool
    vbar_matches: bool
    twist_vectors: list[tuple[int, ...]]
    nested_chain: bool

    @property
    def ok(self) -> bool:
        return self.formulas_match and self.concentrated and self.vbar_matches and self.nested_chain


def kn_instance(n: int) -> CompleteGraphReport:
    """The complete-graph family: descending initial degrees, one twist per step.

    w_j twists w_0 at v_0..v_{j-1}; the closed form assigns j-i-1 at v_i for
    i < j and n-1+j-i otherwise; each w_j is concentrated on v_j, the
    compatibility set is exactly {w_0..w_{n-1}}, and the twist vectors nest.
    """
    if n < 2:
        raise ValueError("need at least two vertices")
    graph = complete_graph(n)
    w0 = tuple(n - 1 - i for i in range(n))
    multidegrees = [w0]
    for j in range(1, n):
        multidegrees.append(twist_at(graph, multidegrees[-1], j - 1))
    formulas = all(
        multidegrees[j][i] == (j - i - 1 if i < j else n - 1 + j - i)
        for j in range(n)
        for i in range(n)
    )
    concentrated = all(
        is_concentrated(graph, multidegrees[j], j)[0] for j in range(n)
    )
    vbar = vbar_set(graph, w0, {j: multidegrees[j] for j in range(n)})
    vbar_matches = vbar == sorted(set(multidegrees))
    twists = []
    nested = True
    for j in range(1, n):
        counts = solve_twist(graph, w0, multidegrees[j], n - 1)
        if counts is None:
            nested = False
            break
        twists.append(counts)
    if nested:
        chain = [(0,) * n] + twists + [(1,) * n]
        nested = all(
            all(a <= b for a, b in zip(chain[k], chain[k + 1]))
            for k in range(len(chain) - 1)
        )
    return CompleteGraphReport(
        graph, w0, multidegrees, formulas, concentrated, vbar_matches, twists, nested
    )
