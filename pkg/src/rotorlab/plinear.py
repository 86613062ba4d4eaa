"""P-linear maps, their Markov graphs and the over-rotation interval of a pattern.

A Markov graph here has one vertex per closed interval between consecutive
partition points, where the partition contains every point of the invariant
set and every fixed point of the map.  Displacement ``f(x) - x`` then has a
constant sign on each vertex, and an edge ``I -> J`` (``f(I)`` covers ``J``)
has weight 1 exactly when it goes from a negative-displacement vertex to a
positive one.  A loop of length ``n`` realised by a cycle of over-rotation
pair ``(p, q)`` has weight ``p * n / q``, so the minimum mean weight is the
left end of the over-rotation interval.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Sequence

import networkx as nx
import numpy as np

from .combinatorics import CyclicPattern, over_rotation_number, over_rotation_pair
from .pwmap import PiecewiseMap

HALF = Fraction(1, 2)


def build_plinear(pattern: CyclicPattern) -> PiecewiseMap:
    """The P-linear map of ``pattern`` with its points rescaled to j -> (j-1)/(q-1)."""
    q = pattern.q
    if q < 2:
        raise ValueError("P-linear map needs a cycle of period >= 2")
    xs = [Fraction(j - 1, q - 1) for j in range(1, q + 1)]
    ys = [Fraction(pattern(j) - 1, q - 1) for j in range(1, q + 1)]
    return PiecewiseMap(xs, ys)


def pattern_points(pattern: CyclicPattern) -> list[Fraction]:
    q = pattern.q
    return [Fraction(j - 1, q - 1) for j in range(1, q + 1)]


@dataclass
class MarkovGraph:
    """Covering graph on closed intervals with constant displacement sign."""

    vertices: list[tuple[Fraction, Fraction]]
    signs: list[int]
    edges: dict[int, list[tuple[int, int]]] = field(default_factory=dict)
    affine: list[tuple[Fraction, Fraction]] = field(default_factory=list)

    def __len__(self):
        return len(self.vertices)

    def weight(self, i: int, j: int) -> int:
        return int(self.signs[i] < 0 < self.signs[j])

    def to_networkx(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(range(len(self.vertices)))
        for i, out in self.edges.items():
            for j, w in out:
                g.add_edge(i, j, weight=w)
        return g

    def relabelled(self, order: Sequence[int]) -> "MarkovGraph":
        """Same graph with vertex ``order[k]`` renamed ``k``."""
        pos = {v: k for k, v in enumerate(order)}
        return MarkovGraph(
            vertices=[self.vertices[v] for v in order],
            signs=[self.signs[v] for v in order],
            edges={pos[i]: [(pos[j], w) for j, w in out] for i, out in self.edges.items()},
            affine=[self.affine[v] for v in order],
        )


def graph_from_partition(f: PiecewiseMap, points: Sequence[Fraction]) -> MarkovGraph:
    """Markov graph of ``f`` on the partition ``points``.

    ``points`` must be forward invariant, contain all knots of ``f`` strictly
    inside their hull, and contain all fixed points of ``f`` there.  Intervals
    on which ``f`` is constant become no vertex.
    """
    pts = sorted(set(points))
    vertices, signs, affine = [], [], []
    for a, b in zip(pts, pts[1:]):
        fa, fb = f(a), f(b)
        if fa == fb:
            continue
        mid = (a + b) / 2
        d = f(mid) - mid
        vertices.append((a, b))
        signs.append((d > 0) - (d < 0))
        s = (fb - fa) / (b - a)
        affine.append((s, fa - s * a))
    graph = MarkovGraph(vertices, signs, affine=affine)
    lefts = [v[0] for v in vertices]
    for i, (a, b) in enumerate(vertices):
        lo, hi = sorted((f(a), f(b)))
        out = []
        # vertices are disjoint apart from endpoints, so scan from the first left end >= lo
        from bisect import bisect_left

        k = bisect_left(lefts, lo)
        while k < len(vertices) and vertices[k][1] <= hi:
            out.append((k, graph.weight(i, k)))
            k += 1
        graph.edges[i] = out
    return graph


def markov_graph(f: PiecewiseMap, P: Sequence[Fraction]) -> MarkovGraph:
    """Markov graph of the basic intervals of the invariant set ``P``, split at fixed points."""
    P = sorted(set(P))
    lo, hi = P[0], P[-1]
    for x in P:
        if f(x) not in set(P):
            raise ValueError("P is not invariant under the map")
    return graph_from_partition(f, P + f.fixed_points(lo, hi))


def _karp(n: int, src: np.ndarray, dst: np.ndarray, w: np.ndarray) -> Fraction | None:
    """Karp's minimum cycle mean on a strongly connected graph with small integer weights.

    Equal rationals with denominators <= n give identical correctly-rounded
    floats, so the float arg-min/arg-max pick the exact optimum.
    """
    inf = np.iinfo(np.int64).max // 4
    D = np.full((n + 1, n), inf, dtype=np.int64)
    D[0, 0] = 0
    for k in range(1, n + 1):
        cand = D[k - 1, src] + w
        row = D[k]
        np.minimum.at(row, dst, cand)
        row[row >= inf] = inf
    reach = D[n] < inf
    if not reach.any():
        return None
    ks = np.arange(n)
    with np.errstate(invalid="ignore"):
        valid = D[:n] < inf
        ratio = np.where(valid, (D[n][None, :] - D[:n]) / (n - ks)[:, None], -np.inf)
    kbest = ratio.argmax(axis=0)
    worst = ratio[kbest, np.arange(n)]
    worst[~reach] = np.inf
    v = int(worst.argmin())
    k = int(kbest[v])
    return Fraction(int(D[n, v] - D[k, v]), n - k)


def components(graph: MarkovGraph) -> list[list[int]]:
    """Strongly connected components with at least two vertices, in sorted order."""
    comps = nx.strongly_connected_components(graph.to_networkx())
    return sorted(sorted(c) for c in comps if len(c) >= 2)


def min_mean_cycle(graph: MarkovGraph) -> Fraction:
    """Minimum mean edge weight over cycles, by Karp's algorithm per component.

    One-vertex components are skipped: their only loop is a self-loop of weight 0,
    which a genuine cycle of period >= 2 can never realise on its own.
    """
    best = None
    for comp in components(graph):
        idx = {v: k for k, v in enumerate(comp)}
        triples = [
            (idx[u], idx[v], w) for u in comp for v, w in graph.edges[u] if v in idx
        ]
        src, dst, w = (np.array(c, dtype=np.int64) for c in zip(*triples))
        val = _karp(len(comp), src, dst, w)
        if val is not None and (best is None or val < best):
            best = val
    if best is None:
        raise RuntimeError("internal error: Markov graph has no cycle")
    return best


min_over_rotation = min_mean_cycle


def min_mean_closed_walk(graph: MarkovGraph, max_len: int) -> Fraction | None:
    """Brute force: minimum mean weight over closed walks of length <= max_len.

    Walks are confined to components with at least two vertices, matching
    min_mean_cycle.  Min-plus matrix powers, no cleverness.
    """
    best = None
    for comp in components(graph):
        idx = {v: k for k, v in enumerate(comp)}
        n = len(comp)
        A = np.full((n, n), np.inf)
        for u in comp:
            for v, w in graph.edges[u]:
                if v in idx:
                    A[idx[u], idx[v]] = min(A[idx[u], idx[v]], w)
        W = A.copy()
        for k in range(1, max_len + 1):
            d = np.diag(W)
            if np.isfinite(d).any():
                val = Fraction(int(d[np.isfinite(d)].min()), k)
                if best is None or val < best:
                    best = val
            W = np.min(W[:, :, None] + A[None, :, :], axis=1)
    return best


def rotation_interval_of_pattern(pattern: CyclicPattern) -> tuple[Fraction, Fraction]:
    """The over-rotation interval [r_pi, 1/2] of the pattern's P-linear map."""
    if pattern.q == 1:
        raise ValueError("a fixed point has no over-rotation interval")
    f = build_plinear(pattern)
    return min_mean_cycle(markov_graph(f, pattern_points(pattern))), HALF


def is_overtwist(pattern: CyclicPattern) -> bool:
    pair = over_rotation_pair(pattern)
    if gcd(pair.p, pair.q) != 1:
        return False
    return rotation_interval_of_pattern(pattern)[0] == pair.number


def _cylinder(graph: MarkovGraph, word: Sequence[int]):
    """Closed interval of points whose orbit follows ``word`` (None if empty)."""
    a, b = graph.vertices[word[-1]]
    for v in reversed(word[:-1]):
        s, c = graph.affine[v]
        lo, hi = sorted(((a - c) / s, (b - c) / s))
        va, vb = graph.vertices[v]
        a, b = max(lo, va), min(hi, vb)
        if a > b:
            return None
    return a, b


def _is_necklace(word: tuple[int, ...]) -> bool:
    return all(word <= word[i:] + word[:i] for i in range(1, len(word)))


def periodic_points_of_loops(graph: MarkovGraph, f: PiecewiseMap, cap: int):
    """Periodic orbits (in orbit order) realising closed walks of length <= cap.

    One walk per necklace.  When the return map of a walk is the identity, the
    orbits of the endpoints and midpoint of its cylinder are reported.
    """
    n_v = len(graph)
    for n in range(1, cap + 1):
        stack = [((s,), s) for s in range(n_v)]
        while stack:
            word, last = stack.pop()
            if len(word) == n:
                if word[0] in (v for v, _ in graph.edges[last]) and _is_necklace(word):
                    yield from _solve_loop(graph, f, word)
                continue
            for v, _ in graph.edges[last]:
                if v >= word[0]:
                    stack.append((word + (v,), v))


def _solve_loop(graph: MarkovGraph, f: PiecewiseMap, word):
    A, B = Fraction(1), Fraction(0)
    for v in word:
        s, c = graph.affine[v]
        A, B = s * A, s * B + c
    cyl = _cylinder(graph, word + (word[0],))
    if cyl is None:
        return
    if A == 1:
        if B != 0:
            return
        candidates = {cyl[0], cyl[1], (cyl[0] + cyl[1]) / 2}
    else:
        x = B / (1 - A)
        if not cyl[0] <= x <= cyl[1]:
            return
        candidates = {x}
    for x in candidates:
        orbit = [x]
        for v in word:
            a, b = graph.vertices[v]
            y = orbit[-1]
            if not a <= y <= b:
                break
            s, c = graph.affine[v]
            orbit.append(s * y + c)
        else:
            if orbit[-1] == x:
                yield orbit[:orbit.index(x, 1)]


def orbit_of(f: PiecewiseMap, x: Fraction) -> list[Fraction]:
    orbit = [x]
    y = f(x)
    while y != x:
        orbit.append(y)
        y = f(y)
    return orbit


def forced_cycles(pattern: CyclicPattern, period_cap: int) -> list[CyclicPattern]:
    """Patterns of all cycles of the P-linear map with period <= period_cap."""
    if period_cap < 1:
        raise ValueError("period_cap must be >= 1")
    f = build_plinear(pattern) if pattern.q >= 2 else None
    if f is None:
        return [pattern]
    P = pattern_points(pattern)
    graph = markov_graph(f, P)
    found: set[CyclicPattern] = set()
    for x in f.fixed_points(P[0], P[-1]):
        found.add(CyclicPattern((1,)))
    seen: set[frozenset] = set()
    for orbit in periodic_points_of_loops(graph, f, period_cap):
        key = frozenset(orbit)
        if key in seen:
            continue
        seen.add(key)
        rank = {x: i + 1 for i, x in enumerate(sorted(orbit))}
        n = len(orbit)
        image = [0] * n
        for k in range(n):
            image[rank[orbit[k]] - 1] = rank[orbit[(k + 1) % n]]
        found.add(CyclicPattern(tuple(image)))
    return sorted(found, key=lambda p: (p.q, p.image))


def lap_count(pattern: CyclicPattern) -> int:
    return len(build_plinear(pattern).laps())
