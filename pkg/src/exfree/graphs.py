"""Immutable simple graphs on vertex set 0..n-1 with bitmask adjacency.

Each vertex's neighborhood is a Python int used as a bitset, so set algebra
(intersection of neighborhoods, candidate filtering) is single int operations.
Python ints are arbitrary precision, which makes the same representation work
unchanged past 64 vertices.

Also hosts the deterministic generator family used throughout: complete and
complete multipartite (Turan) graphs, blow-ups, cycles, seeded G(n,p), and a
seeded minimum-degree model.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import GraphFormatError, PatternSyntaxError


def as_fraction(x: int | float | str | Fraction) -> Fraction:
    """Exact rational from user input; floats go through their shortest repr.

    Fraction(str(0.2)) == 1/5, while Fraction(0.2) would pick up binary noise.
    Degree floors like ceil((1 - eps) * n) must be computed exactly or a value
    such as (1 - 0.2) * 10 lands on 8.000000000000002 and rounds the wrong way.
    """
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def bits(mask: int) -> list[int]:
    """Indices of set bits, ascending."""
    out = []
    while mask:
        v = (mask & -mask).bit_length() - 1
        out.append(v)
        mask &= mask - 1
    return out


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph; adj[v] is the bitmask of v's neighbors."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0 or len(self.adj) != self.n:
            raise GraphFormatError(f"adjacency length {len(self.adj)} != n={self.n}")
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adj):
            if row & ~full:
                raise GraphFormatError(f"vertex {v} has neighbors outside 0..{self.n - 1}")
            if (row >> v) & 1:
                raise GraphFormatError(f"self-loop at vertex {v}")
        for v in range(self.n):
            for u in bits(self.adj[v]):
                if not (self.adj[u] >> v) & 1:
                    raise GraphFormatError(f"asymmetric adjacency between {u} and {v}")

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u},{v}) outside 0..{n - 1}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def min_degree(self) -> int:
        if self.n == 0:
            return 0
        return min(row.bit_count() for row in self.adj)

    def max_degree(self) -> int:
        if self.n == 0:
            return 0
        return max(row.bit_count() for row in self.adj)

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, sorted ascending."""
        out = []
        for u in range(self.n):
            rest = self.adj[u] >> (u + 1)
            w = u + 1
            while rest:
                if rest & 1:
                    out.append((u, w))
                rest >>= 1
                w += 1
        return out

    def neighbors(self, v: int) -> list[int]:
        return bits(self.adj[v])


# ---------------------------------------------------------------------------
# generators


def complete(n: int) -> Graph:
    if n < 0:
        raise PatternSyntaxError("complete(n) needs n >= 0")
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def empty(n: int) -> Graph:
    return Graph(n, (0,) * n)


def turan(n: int, r: int) -> Graph:
    """Complete r-partite graph with near-equal parts.

    The first n mod r parts get ceil(n/r) vertices, the rest floor(n/r);
    vertices are assigned to parts in contiguous blocks of ids.
    """
    if r < 1 or n < 0:
        raise PatternSyntaxError("turan(n, r) needs n >= 0, r >= 1")
    q, rem = divmod(n, r)
    sizes = [q + 1] * rem + [q] * (r - rem)
    part_masks = []
    start = 0
    for s in sizes:
        part_masks.append(((1 << s) - 1) << start)
        start += s
    full = (1 << n) - 1
    adj = []
    start = 0
    for s, pm in zip(sizes, part_masks):
        for _ in range(s):
            adj.append(full & ~pm)
        start += s
    return Graph(n, tuple(adj))


def blowup(m: int, t: int) -> Graph:
    """Complete m-partite graph with every part of size t (the clique blow-up)."""
    if m < 1 or t < 1:
        raise PatternSyntaxError("blowup(m, t) needs m >= 1, t >= 1")
    return turan(m * t, m)


def coned_blowup(m: int, t: int) -> Graph:
    """blowup(m, t) plus one extra vertex adjacent to everything else."""
    base = blowup(m, t)
    n = base.n + 1
    apex = base.n
    adj = [row | (1 << apex) for row in base.adj]
    adj.append((1 << base.n) - 1)
    return Graph(n, tuple(adj))


def cycle(n: int) -> Graph:
    if n < 3:
        raise PatternSyntaxError("cycle(n) needs n >= 3")
    return Graph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def gnp(n: int, p: float, seed: int, rng: random.Random | None = None) -> Graph:
    """Erdos-Renyi G(n, p), deterministic for a given seed."""
    if not 0 <= p <= 1:
        raise PatternSyntaxError("gnp needs 0 <= p <= 1")
    if rng is None:
        rng = random.Random(seed)
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.append((u, v))
    return Graph.from_edges(n, edges)


def min_degree_floor(n: int, eps: Fraction) -> int:
    """Target ceil((1 - eps) * n), capped at n - 1 so it is attainable."""
    if n == 0:
        return 0
    return min(ceil_frac((1 - eps) * n), n - 1)


def min_degree_random(n: int, eps: int | float | str | Fraction, seed: int) -> Graph:
    """Random graph with minimum degree at least ceil((1 - eps) * n).

    Sample G(n, p) at p = 1 - eps/2, then repeatedly add one seeded-random
    missing edge at the lowest-id vertex still below the degree floor. The
    floor is capped at n - 1, so eps = 0 yields the complete graph.
    """
    epsf = as_fraction(eps)
    if not 0 <= epsf <= 1:
        raise PatternSyntaxError("min_degree_random needs 0 <= eps <= 1")
    rng = random.Random(seed)
    g = gnp(n, float(1 - epsf / 2), seed, rng=rng)
    floor = min_degree_floor(n, epsf)
    adj = list(g.adj)
    while True:
        deficient = [v for v in range(n) if adj[v].bit_count() < floor]
        if not deficient:
            break
        v = deficient[0]
        candidates = [u for u in range(n) if u != v and not (adj[v] >> u) & 1]
        u = rng.choice(candidates)
        adj[v] |= 1 << u
        adj[u] |= 1 << v
    return Graph(n, tuple(adj))


# ---------------------------------------------------------------------------
# vertex deletion with id remapping


def remove_vertex(g: Graph, v: int) -> tuple[Graph, tuple[int, ...]]:
    """Delete v; returns the relabeled graph and remap with remap[new_id] = old_id."""
    if not 0 <= v < g.n:
        raise GraphFormatError(f"vertex {v} not in graph on {g.n} vertices")
    keep = [u for u in range(g.n) if u != v]
    return _relabel(g, keep)


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph on a vertex set; remap[new_id] = old_id, ids ascending."""
    keep = sorted(set(vertices))
    for u in keep:
        if not 0 <= u < g.n:
            raise GraphFormatError(f"vertex {u} not in graph on {g.n} vertices")
    return _relabel(g, keep)


def _relabel(g: Graph, keep: list[int]) -> tuple[Graph, tuple[int, ...]]:
    index = {old: new for new, old in enumerate(keep)}
    adj = [0] * len(keep)
    for new, old in enumerate(keep):
        row = g.adj[old]
        for w in bits(row):
            if w in index:
                adj[new] |= 1 << index[w]
    return Graph(len(keep), tuple(adj)), tuple(keep)


def subgraph_from_edges(g: Graph, edges) -> Graph:
    """Spanning subgraph of g restricted to the given edge subset."""
    for u, v in edges:
        if not g.has_edge(u, v):
            raise GraphFormatError(f"({u},{v}) is not an edge of the host graph")
    return Graph.from_edges(g.n, edges)


# ---------------------------------------------------------------------------
# generator specs (used by the CLI and by experiment records)


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one deterministic generator call."""

    kind: str
    n: int | None = None
    r: int | None = None
    m: int | None = None
    t: int | None = None
    p: float | None = None
    eps: Fraction | None = None
    seed: int | None = None

    def literal(self) -> str:
        k = self.kind
        if k == "complete":
            return f"gen:complete:{self.n}"
        if k == "empty":
            return f"gen:empty:{self.n}"
        if k == "turan":
            return f"gen:turan:{self.n}:{self.r}"
        if k == "blowup":
            return f"gen:blowup:{self.m}:{self.t}"
        if k == "coned_blowup":
            return f"gen:coned_blowup:{self.m}:{self.t}"
        if k == "cycle":
            return f"gen:cycle:{self.n}"
        if k == "gnp":
            return f"gen:gnp:{self.n}:{self.p}:{self.seed}"
        if k == "min_degree_random":
            return f"gen:min_degree_random:{self.n}:{self.eps}:{self.seed}"
        raise PatternSyntaxError(f"unknown generator kind {k!r}")


def generate(spec: GenSpec) -> Graph:
    k = spec.kind
    if k == "complete":
        return complete(spec.n)
    if k == "empty":
        return empty(spec.n)
    if k == "turan":
        return turan(spec.n, spec.r)
    if k == "blowup":
        return blowup(spec.m, spec.t)
    if k == "coned_blowup":
        return coned_blowup(spec.m, spec.t)
    if k == "cycle":
        return cycle(spec.n)
    if k == "gnp":
        return gnp(spec.n, spec.p, spec.seed)
    if k == "min_degree_random":
        return min_degree_random(spec.n, spec.eps, spec.seed)
    raise PatternSyntaxError(f"unknown generator kind {spec.kind!r}")


def parse_genspec(text: str) -> GenSpec:
    """Parse literals like gen:turan:6:3 or gen:min_degree_random:10:1/5:1."""
    parts = text.split(":")
    if parts[0] != "gen" or len(parts) < 2:
        raise PatternSyntaxError(f"not a generator literal: {text!r}")
    kind, args = parts[1], parts[2:]

    def ints(k):
        if len(args) != k:
            raise PatternSyntaxError(f"{kind} expects {k} argument(s): {text!r}")
        try:
            return [int(a) for a in args]
        except ValueError as exc:
            raise PatternSyntaxError(f"bad integer in {text!r}") from exc

    if kind == "complete":
        return GenSpec("complete", n=ints(1)[0])
    if kind == "empty":
        return GenSpec("empty", n=ints(1)[0])
    if kind == "turan":
        n, r = ints(2)
        return GenSpec("turan", n=n, r=r)
    if kind == "blowup":
        m, t = ints(2)
        return GenSpec("blowup", m=m, t=t)
    if kind == "coned_blowup":
        m, t = ints(2)
        return GenSpec("coned_blowup", m=m, t=t)
    if kind == "cycle":
        return GenSpec("cycle", n=ints(1)[0])
    if kind == "gnp":
        if len(args) != 3:
            raise PatternSyntaxError(f"gnp expects n:p:seed: {text!r}")
        try:
            return GenSpec("gnp", n=int(args[0]), p=float(args[1]), seed=int(args[2]))
        except ValueError as exc:
            raise PatternSyntaxError(f"bad gnp arguments in {text!r}") from exc
    if kind == "min_degree_random":
        if len(args) != 3:
            raise PatternSyntaxError(f"min_degree_random expects n:eps:seed: {text!r}")
        try:
            return GenSpec(
                "min_degree_random", n=int(args[0]), eps=as_fraction(args[1]), seed=int(args[2])
            )
        except (ValueError, ZeroDivisionError) as exc:
            raise PatternSyntaxError(f"bad min_degree_random arguments in {text!r}") from exc
    raise PatternSyntaxError(f"unknown generator kind {kind!r}")
