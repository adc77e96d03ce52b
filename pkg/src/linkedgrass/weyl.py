"""Extended affine Weyl group of GL_d / SL_d in apartment coordinates.

Elements are pairs (sigma, trans) with sigma a permutation of {1..d} (tuple
of images, 1-based) and trans an integer d-vector, acting on Z^d by

    (sigma, v) . a  =  (a_{sigma^-1(1)}, ..., a_{sigma^-1(d)}) + v.

The group law is chosen so that `act` is a left action:
compose(g, h) = (sigma_g sigma_h, v_g + sigma_g . v_h).  The affine Weyl
group W_a is the subgroup with sum(trans) = 0; its Coxeter generators are
s_1..s_{d-1} (adjacent swaps) and s_0 = ((1 d), (1, 0, ..., 0, -1)).
Lengths are word lengths over these generators, computed by breadth-first
search in the Cayley graph, and the Bruhat order is the downward closure
along reflection covers.  Every element is uniquely w * iota^k with
w in W_a and k = sum(trans); the cyclic element iota = ((12...d), (1,0^{d-1}))
rotates the standard alcove.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .lattice import canonicalize, classes_adjacent

DEFAULT_LEN_CAP = 24


class LengthCapExceeded(Exception):
    """The requested element lies outside the configured Cayley-ball radius."""


@dataclass(frozen=True)
class WeylElement:
    sigma: tuple[int, ...]  # images of 1..d, 1-based
    trans: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.sigma)

    def __post_init__(self):
        if sorted(self.sigma) != list(range(1, len(self.sigma) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.sigma)}: {self.sigma}")
        if len(self.trans) != len(self.sigma):
            raise ValueError("sigma/trans dimension mismatch")

    def to_json(self) -> str:
        return json.dumps({"sigma": list(self.sigma), "trans": list(self.trans)})

    @staticmethod
    def from_json(text: str) -> "WeylElement":
        data = json.loads(text)
        return WeylElement(tuple(data["sigma"]), tuple(data["trans"]))


def identity(d: int) -> WeylElement:
    return WeylElement(tuple(range(1, d + 1)), (0,) * d)


def perm_apply(sigma: Sequence[int], a: Sequence[int]) -> tuple[int, ...]:
    """Coordinate permutation: entry at position sigma(i) is a_i."""
    out = [0] * len(a)
    for i, img in enumerate(sigma):
        out[img - 1] = a[i]
    return tuple(out)


def act(g: WeylElement, a: Sequence[int]) -> tuple[int, ...]:
    if len(a) != g.d:
        raise ValueError("dimension mismatch")
    moved = perm_apply(g.sigma, a)
    return tuple(x + t for x, t in zip(moved, g.trans))


def act_class(g: WeylElement, cls: Sequence[int]) -> tuple[int, ...]:
    return canonicalize(act(g, cls))


def compose(g: WeylElement, h: WeylElement) -> WeylElement:
    if g.d != h.d:
        raise ValueError("dimension mismatch")
    sigma = tuple(g.sigma[h.sigma[i] - 1] for i in range(g.d))
    trans = tuple(v + w for v, w in zip(g.trans, perm_apply(g.sigma, h.trans)))
    return WeylElement(sigma, trans)


def invert(g: WeylElement) -> WeylElement:
    inv_sigma = [0] * g.d
    for i, img in enumerate(g.sigma):
        inv_sigma[img - 1] = i + 1
    inv_sigma = tuple(inv_sigma)
    trans = tuple(-x for x in perm_apply(inv_sigma, g.trans))
    return WeylElement(inv_sigma, trans)


def compose_all(elements: Iterable[WeylElement]) -> WeylElement:
    result = None
    for g in elements:
        result = g if result is None else compose(result, g)
    if result is None:
        raise ValueError("empty product")
    return result


def simple_reflection(d: int, i: int) -> WeylElement:
    """Coxeter generator s_i of W_a, i in 0..d-1."""
    if not 0 <= i <= d - 1:
        raise ValueError(f"generator index {i} out of range for d={d}")
    if i == 0:
        sigma = list(range(1, d + 1))
        sigma[0], sigma[d - 1] = sigma[d - 1], sigma[0]
        trans = [0] * d
        trans[0], trans[d - 1] = 1, -1
        return WeylElement(tuple(sigma), tuple(trans))
    sigma = list(range(1, d + 1))
    sigma[i - 1], sigma[i] = sigma[i], sigma[i - 1]
    return WeylElement(tuple(sigma), (0,) * d)


def iota(d: int) -> WeylElement:
    sigma = tuple(list(range(2, d + 1)) + [1])
    trans = (1,) + (0,) * (d - 1)
    return WeylElement(sigma, trans)


def iota_pow(d: int, k: int) -> WeylElement:
    base = iota(d) if k >= 0 else invert(iota(d))
    result = identity(d)
    for _ in range(abs(k)):
        result = compose(result, base)
    return result


def translation(v: Sequence[int]) -> WeylElement:
    return WeylElement(tuple(range(1, len(v) + 1)), tuple(v))


def in_affine(g: WeylElement) -> bool:
    return sum(g.trans) == 0


def iota_decompose(g: WeylElement) -> tuple[WeylElement, int]:
    """Unique w in W_a and exponent k with g = w * iota^k.

    k equals sum(g.trans) exactly; its residue mod d is the class of g in
    the cyclic quotient over W_a and central shifts by (1,...,1).
    """
    k = sum(g.trans)
    w = compose(g, iota_pow(g.d, -k))
    assert in_affine(w)
    return w, k


# ---------------------------------------------------------------------------
# Cayley-graph lengths and the Bruhat order on W_a


class _CayleyBall:
    """Lazily grown BFS ball of W_a around the identity, with parent words."""

    def __init__(self, d: int):
        self.d = d
        self.gens = [simple_reflection(d, i) for i in range(d)]
        e = identity(d)
        self.length: dict[WeylElement, int] = {e: 0}
        self.parent: dict[WeylElement, tuple[WeylElement, int]] = {}
        self.frontier: list[WeylElement] = [e]
        self.radius = 0

    def extend_to(self, radius: int) -> None:
        while self.radius < radius and self.frontier:
            nxt = []
            for g in self.frontier:
                for i, s in enumerate(self.gens):
                    h = compose(g, s)
                    if h not in self.length:
                        self.length[h] = self.radius + 1
                        self.parent[h] = (g, i)
                        nxt.append(h)
            self.frontier = nxt
            self.radius += 1

    def elements_up_to(self, radius: int) -> list[WeylElement]:
        self.extend_to(radius)
        return [g for g, l in self.length.items() if l <= radius]


_BALLS: dict[int, _CayleyBall] = {}


def _ball(d: int) -> _CayleyBall:
    if d not in _BALLS:
        _BALLS[d] = _CayleyBall(d)
    return _BALLS[d]


def length(g: WeylElement, cap: int = DEFAULT_LEN_CAP) -> int:
    """Word length of the W_a-part of g over s_0..s_{d-1}."""
    w, _ = iota_decompose(g)
    ball = _ball(g.d)
    while w not in ball.length and ball.radius < cap and ball.frontier:
        ball.extend_to(ball.radius + 1)
    if w not in ball.length:
        raise LengthCapExceeded(f"element not within length cap {cap}")
    return ball.length[w]


def reduced_word(g: WeylElement, cap: int = DEFAULT_LEN_CAP) -> tuple[int, ...]:
    """One reduced word (generator indices) for the W_a-part of g."""
    w, _ = iota_decompose(g)
    length(w, cap)  # ensure discovered
    ball = _ball(g.d)
    word = []
    while ball.length[w] > 0:
        w, i = ball.parent[w]
        word.append(i)
    return tuple(reversed(word))


def wa_elements(d: int, max_len: int) -> list[WeylElement]:
    """All W_a elements of length at most max_len."""
    return _ball(d).elements_up_to(max_len)


def reflections(d: int, kmax: int) -> list[WeylElement]:
    """Affine reflections ((i j), k(e_i - e_j)) with |k| <= kmax."""
    out = []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            sigma = list(range(1, d + 1))
            sigma[i - 1], sigma[j - 1] = sigma[j - 1], sigma[i - 1]
            for k in range(-kmax, kmax + 1):
                trans = [0] * d
                trans[i - 1], trans[j - 1] = k, -k
                out.append(WeylElement(tuple(sigma), tuple(trans)))
    return out


_DOWNSETS: dict[int, dict[WeylElement, frozenset[WeylElement]]] = {}


def _downset(w: WeylElement, cap: int) -> frozenset[WeylElement]:
    """All W_a elements below w in Bruhat order, w included."""
    d = w.d
    memo = _DOWNSETS.setdefault(d, {})
    if w in memo:
        return memo[w]
    lw = length(w, cap)
    ball = _ball(d)
    ball.extend_to(lw)
    down = {w}
    if lw > 0:
        for t in reflections(d, lw + 1):
            u = compose(w, t)
            if ball.length.get(u) == lw - 1:
                down |= _downset(u, cap)
    result = frozenset(down)
    memo[w] = result
    return result


def bruhat_leq(u: WeylElement, w: WeylElement, cap: int = DEFAULT_LEN_CAP) -> bool:
    """Bruhat order on the extended group: equal iota parts, comparable W_a parts."""
    ua, ku = iota_decompose(u)
    wa, kw = iota_decompose(w)
    if ku != kw:
        return False
    if length(ua, cap) > length(wa, cap):
        return False
    if ua == wa:
        return True
    return ua in _downset(wa, cap)


# ---------------------------------------------------------------------------
# Parahoric (Iwahori-Weyl) subgroups and double cosets


@dataclass(frozen=True)
class ParahoricGroup:
    """Finite subgroup of W_a fixing a face of the building pointwise."""

    d: int
    face: tuple[tuple[int, ...], ...]
    elements: frozenset[WeylElement]

    def __len__(self) -> int:
        return len(self.elements)


def equal_difference_blocks(face: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Partition of positions 1..d by 'x(k) - x(k')' constant over the face."""
    verts = [canonicalize(v) for v in face]
    d = len(verts[0])
    blocks: list[list[int]] = []
    for k in range(1, d + 1):
        for block in blocks:
            k0 = block[0]
            if all(x[k - 1] - x[k0 - 1] == verts[0][k - 1] - verts[0][k0 - 1] for x in verts):
                block.append(k)
                break
        else:
            blocks.append([k])
    return [tuple(b) for b in blocks]


_STABILIZERS: dict[tuple, ParahoricGroup] = {}


def face_stabilizer(face: Sequence[Sequence[int]]) -> ParahoricGroup:
    """The finite subgroup of W_a fixing each class of the face.

    Generated by the reflections ((i j), (x_i - x_j)(e_i - e_j)) over pairs
    whose coordinate difference is constant across the face; saturated to a
    group.  Note a W_a element fixing a class fixes any representative
    vector on the nose (its translation part sums to zero).
    """
    if not face:
        raise ValueError("empty face")
    verts = sorted({canonicalize(v) for v in face})
    key = tuple(verts)
    if key in _STABILIZERS:
        return _STABILIZERS[key]
    d = len(verts[0])
    for a in verts:
        for b in verts:
            if a != b and not classes_adjacent(a, b):
                raise ValueError(f"face is not a simplex: {a} and {b} not adjacent")
    gens = []
    for i in range(1, d + 1):
        for j in range(i + 1, d + 1):
            diffs = {x[i - 1] - x[j - 1] for x in verts}
            if len(diffs) == 1:
                c = diffs.pop()
                sigma = list(range(1, d + 1))
                sigma[i - 1], sigma[j - 1] = sigma[j - 1], sigma[i - 1]
                trans = [0] * d
                trans[i - 1], trans[j - 1] = c, -c
                gens.append(WeylElement(tuple(sigma), tuple(trans)))
    elements = {identity(d)}
    frontier = [identity(d)]
    while frontier:
        nxt = []
        for g in frontier:
            for s in gens:
                h = compose(g, s)
                if h not in elements:
                    elements.add(h)
                    nxt.append(h)
        frontier = nxt
    for g in elements:
        for x in verts:
            assert act(g, x) == x, "stabilizer element moved a face vertex"
    group = ParahoricGroup(d, tuple(verts), frozenset(elements))
    _STABILIZERS[key] = group
    return group


_DC_MIN: dict[tuple, WeylElement] = {}


def double_coset_min(
    g: WeylElement, w1: ParahoricGroup, w2: ParahoricGroup, cap: int = DEFAULT_LEN_CAP
) -> WeylElement:
    """Unique minimal-length element of the double coset W1 * g * W2."""
    key = (g, w1.face, w2.face)
    if key in _DC_MIN:
        return _DC_MIN[key]
    best = None
    best_len = None
    ties = 0
    for a in w1.elements:
        ag = compose(a, g)
        for b in w2.elements:
            h = compose(ag, b)
            l = length(h, cap)
            if best_len is None or l < best_len:
                best, best_len, ties = h, l, 1
            elif l == best_len and h != best:
                ties += 1
    assert ties == 1, "minimal double-coset representative is not unique"
    _DC_MIN[key] = best
    return best


def min_coset_rep(g: WeylElement, w2: ParahoricGroup, cap: int = DEFAULT_LEN_CAP) -> WeylElement:
    """Unique minimal-length element of the left coset g * W2."""
    reps = {compose(g, b) for b in w2.elements}
    lens = {h: length(h, cap) for h in reps}
    lmin = min(lens.values())
    best = [h for h, l in lens.items() if l == lmin]
    assert len(best) == 1, "minimal coset representative is not unique"
    return best[0]


_MINMAX: dict[tuple, WeylElement] = {}


def minmax_rep(
    g: WeylElement, w1: ParahoricGroup, w2: ParahoricGroup, cap: int = DEFAULT_LEN_CAP
) -> WeylElement:
    """Element of maximal length among the minimal reps of (v g) W2, v in W1."""
    key = (g, w1.face, w2.face)
    if key in _MINMAX:
        return _MINMAX[key]
    reps = {min_coset_rep(compose(v, g), w2, cap) for v in w1.elements}
    lens = {h: length(h, cap) for h in reps}
    lmax = max(lens.values())
    best = [h for h, l in lens.items() if l == lmax]
    assert len(best) == 1, "maximal minimal-coset representative is not unique"
    _MINMAX[key] = best[0]
    return best[0]


def double_coset_leq(
    g: WeylElement,
    h: WeylElement,
    w1: ParahoricGroup,
    w2: ParahoricGroup,
    cap: int = DEFAULT_LEN_CAP,
) -> bool:
    """Induced Bruhat order on W1 \\ W~ / W2 via minimal representatives."""
    return bruhat_leq(double_coset_min(g, w1, w2, cap), double_coset_min(h, w1, w2, cap), cap)


def bruhat_poset_dot(elements: Iterable[WeylElement], cap: int = DEFAULT_LEN_CAP) -> str:
    """DOT digraph of the covering relations among the given elements."""
    nodes = sorted(set(elements), key=lambda g: (length(g, cap), g.sigma, g.trans))
    lines = ["digraph bruhat {"]

    def label(g: WeylElement) -> str:
        return f"{g.sigma}|{g.trans}"

    for u in nodes:
        for w in nodes:
            if u == w or not bruhat_leq(u, w, cap):
                continue
            if any(
                x not in (u, w) and bruhat_leq(u, x, cap) and bruhat_leq(x, w, cap)
                for x in nodes
            ):
                continue
            lines.append(f'  "{label(u)}" -> "{label(w)}";')
    lines.append("}")
    return "\n".join(lines)
