"""Exact graph coloring by backtracking with saturation-degree ordering.

Decisions are exact only: a yes answer always carries a verified proper
coloring, a no answer means an exhaustive refutation. Running out of the
node budget is a third outcome, reported as such and never collapsed into
"not colorable".
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceededError, GraphFormatError
from .graphs import Graph, bits
from .counting import max_clique_size

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


@dataclass(frozen=True)
class ColorOutcome:
    """Tri-state colorability answer; witness is set exactly when status is yes."""

    status: str
    witness: tuple[int, ...] | None
    nodes: int

    def __bool__(self) -> bool:
        if self.status == UNKNOWN:
            raise BudgetExceededError("colorability undecided within budget")
        return self.status == YES


@dataclass(frozen=True)
class ColorResult:
    chromatic_number: int
    witness: tuple[int, ...]
    nodes: int


def verify_proper(g: Graph, colors, k: int | None = None) -> bool:
    """Independent witness checker: every edge bichromatic, colors within range."""
    if len(colors) != g.n:
        return False
    for v in range(g.n):
        cv = colors[v]
        if cv < 0 or (k is not None and cv >= k):
            return False
        for u in bits(g.adj[v]):
            if colors[u] == cv:
                return False
    return True


class _Budget:
    __slots__ = ("limit", "used")

    def __init__(self, limit: int | None):
        self.limit = limit
        self.used = 0

    def spend(self) -> bool:
        """Account one search node; False once the budget is exhausted."""
        self.used += 1
        return self.limit is None or self.used <= self.limit


def _components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        stack = [s]
        seen |= 1 << s
        comp = [s]
        while stack:
            v = stack.pop()
            fresh = g.adj[v] & ~seen
            seen |= fresh
            for u in bits(fresh):
                comp.append(u)
                stack.append(u)
        comps.append(sorted(comp))
    return comps


def _color_component(g: Graph, comp: list[int], k: int, budget: _Budget, canonical: bool):
    """Color one connected component; returns (status, {vertex: color})."""
    order_pool = comp
    colors: dict[int, int] = {}

    if canonical:
        # fixed ascending vertex order, colors tried ascending: the first
        # solution found is the lexicographically least proper coloring
        def rec_canon(i: int):
            if not budget.spend():
                return UNKNOWN
            if i == len(order_pool):
                return YES
            v = order_pool[i]
            used_nb = {colors[u] for u in bits(g.adj[v]) if u in colors}
            for c in range(k):
                if c in used_nb:
                    continue
                colors[v] = c
                res = rec_canon(i + 1)
                if res != NO:
                    return res
                del colors[v]
            return NO

        return rec_canon(0), colors

    # saturation-degree ordering with symmetry breaking on fresh colors
    def rec(remaining: set[int], max_used: int):
        if not budget.spend():
            return UNKNOWN
        if not remaining:
            return YES
        v = max(
            remaining,
            key=lambda w: (
                len({colors[u] for u in bits(g.adj[w]) if u in colors}),
                g.degree(w),
                -w,
            ),
        )
        used_nb = {colors[u] for u in bits(g.adj[v]) if u in colors}
        remaining.remove(v)
        # trying one fresh color is enough: higher fresh colors are symmetric
        for c in range(min(k, max_used + 1)):
            if c in used_nb:
                continue
            colors[v] = c
            res = rec(remaining, max(max_used, c + 1))
            if res != NO:
                remaining.add(v)
                if res == UNKNOWN:
                    del colors[v]
                return res
            del colors[v]
        remaining.add(v)
        return NO

    return rec(set(comp), 0), colors


def is_k_colorable(
    g: Graph, k: int, *, budget: int | None = None, canonical: bool = False
) -> ColorOutcome:
    """Decide k-colorability; components are handled independently.

    canonical=True returns the lexicographically least witness (ascending
    vertex ids, colors tried in ascending order) at some extra search cost.
    """
    if k < 0:
        return ColorOutcome(NO, None, 0)
    if g.n == 0:
        return ColorOutcome(YES, (), 0)
    if k == 0:
        return ColorOutcome(NO, None, 0)
    b = _Budget(budget)
    assignment: dict[int, int] = {}
    for comp in _components(g):
        status, colors = _color_component(g, comp, k, b, canonical)
        if status == UNKNOWN:
            return ColorOutcome(UNKNOWN, None, b.used)
        if status == NO:
            return ColorOutcome(NO, None, b.used)
        assignment.update(colors)
    witness = tuple(assignment[v] for v in range(g.n))
    assert verify_proper(g, witness, k)
    return ColorOutcome(YES, witness, b.used)


def chromatic_number(g: Graph, *, budget: int | None = None) -> ColorResult:
    """Exact chromatic number with witness; raises BudgetExceededError if undecided."""
    if g.n == 0:
        return ColorResult(0, (), 0)
    spent = 0
    k = max(1, max_clique_size(g))  # clique size is a valid lower bound
    while True:
        remaining = None if budget is None else budget - spent
        if remaining is not None and remaining <= 0:
            raise BudgetExceededError("chromatic number undecided within budget")
        out = is_k_colorable(g, k, budget=remaining)
        spent += out.nodes
        if out.status == YES:
            return ColorResult(k, out.witness, spent)
        if out.status == UNKNOWN:
            raise BudgetExceededError("chromatic number undecided within budget")
        k += 1


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    if not g.has_edge(u, v):
        raise GraphFormatError(f"no edge ({u}, {v}) to remove")
    adj = list(g.adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph(g.n, tuple(adj))


def is_edge_critical(h: Graph, *, budget: int | None = None) -> tuple[bool, tuple[int, int] | None]:
    """Is there an edge whose removal lowers the chromatic number?

    Returns (answer, witness edge); the witness is the lexicographically
    first such edge. Raises BudgetExceededError if any subcall is undecided.
    """
    if h.edge_count() == 0:
        return False, None
    chi = chromatic_number(h, budget=budget).chromatic_number
    for u, v in h.edges():
        out = is_k_colorable(remove_edge(h, u, v), chi - 1, budget=budget)
        if out.status == UNKNOWN:
            raise BudgetExceededError("edge-criticality undecided within budget")
        if out.status == YES:
            return True, (u, v)
    return False, None


def critical_vertex(h: Graph, *, budget: int | None = None) -> int | None:
    """Lowest-id vertex whose removal lowers the chromatic number, or None.

    None is an honest answer: e.g. in a complete tripartite graph with parts
    of size two, deleting any single vertex leaves the chromatic number at 3.
    Every graph with an edge-critical edge has such a vertex (either endpoint).
    """
    from .graphs import remove_vertex

    if h.n == 0:
        return None
    chi = chromatic_number(h, budget=budget).chromatic_number
    for v in range(h.n):
        sub, _ = remove_vertex(h, v)
        out = is_k_colorable(sub, chi - 1, budget=budget)
        if out.status == UNKNOWN:
            raise BudgetExceededError("critical vertex undecided within budget")
        if out.status == YES:
            return v
    return None
