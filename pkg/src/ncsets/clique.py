"""Exact maximum clique on non-commuting graphs.

Graphs hold adjacency as Python ints used as bitsets.  The solver is a
branch-and-bound in the MCQ/BBMC family: vertices are renumbered by
descending degree (ties by original index), candidate sets are bitsets, and
each node is bounded by a greedy sequential colouring of its candidate set.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence, TextIO


@dataclass
class NCGraph:
    n: int
    adj: list[int]
    labels: list | None = None

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def num_edges(self) -> int:
        return sum(a.bit_count() for a in self.adj) // 2

    def edges(self) -> Iterable[tuple[int, int]]:
        for u in range(self.n):
            a = self.adj[u] >> (u + 1)
            v = u + 1
            while a:
                if a & 1:
                    yield u, v
                a >>= 1
                v += 1

    def is_clique(self, vs: Sequence[int]) -> bool:
        return all(self.has_edge(u, v) for u, v in itertools.combinations(vs, 2))

    def induced(self, vs: Sequence[int]) -> NCGraph:
        index = {v: k for k, v in enumerate(vs)}
        adj = []
        for v in vs:
            mask = 0
            for w in _bits(self.adj[v]):
                if w in index:
                    mask |= 1 << index[w]
            adj.append(mask)
        labels = [self.labels[v] for v in vs] if self.labels is not None else list(vs)
        return NCGraph(len(vs), adj, labels)

    def complement(self) -> NCGraph:
        full = (1 << self.n) - 1
        return NCGraph(self.n, [(full ^ a) & ~(1 << v) for v, a in enumerate(self.adj)], self.labels)


@dataclass
class CliqueResult:
    omega: int
    witness: list[int]
    nodes_explored: int
    exact: bool
    upper_bound: int
    seconds: float = 0.0
    labels: list = field(default_factory=list)


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def build_graph(items: Sequence, relation: Callable[[object, object], bool]) -> NCGraph:
    """Edge (u, v) iff u != v and not relation(items[u], items[v]); never any loops."""
    n = len(items)
    adj = [0] * n
    for u in range(n):
        a = items[u]
        for v in range(u + 1, n):
            if not relation(a, items[v]):
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return NCGraph(n, adj, list(items))


def greedy_clique(g: NCGraph) -> list[int]:
    """Greedy lower bound: repeatedly take the candidate of highest degree."""
    cand = (1 << g.n) - 1
    out = []
    while cand:
        v = max(_bits(cand), key=lambda w: ((g.adj[w] & cand).bit_count(), -w))
        out.append(v)
        cand &= g.adj[v]
    return sorted(out)


def coloring_bound(g: NCGraph) -> int:
    """Number of colours used by greedy sequential colouring (an upper bound on omega)."""
    if g.n == 0:
        return 0
    _, colors = _color_sort(g.adj, (1 << g.n) - 1)
    return colors[-1]


def _color_sort(adj: list[int], cand: int) -> tuple[list[int], list[int]]:
    order, colors = [], []
    k = 0
    uncolored = cand
    while uncolored:
        k += 1
        avail = uncolored
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~adj[v]
            avail ^= low
            uncolored ^= low
            order.append(v)
            colors.append(k)
    return order, colors


class _Timeout(Exception):
    pass


def max_clique(g: NCGraph, time_cap: float | None = None, initial: Sequence[int] | None = None) -> CliqueResult:
    """Exact maximum clique.

    The witness is the first maximum clique met in the fixed search order, mapped
    back to original labels and sorted.  If ``time_cap`` seconds elapse, the best
    clique so far is returned with ``exact=False``.  ``initial`` seeds the incumbent
    with a known clique (it is validated).
    """
    t0 = time.monotonic()
    n = g.n
    if n == 0:
        return CliqueResult(0, [], 0, True, 0, 0.0, [])
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    new_of = {v: k for k, v in enumerate(order)}
    adj = [0] * n
    for k, v in enumerate(order):
        mask = 0
        for w in _bits(g.adj[v]):
            mask |= 1 << new_of[w]
        adj[k] = mask

    best: list[int] = [0]
    if initial:
        if not g.is_clique(initial):
            raise ValueError("initial set is not a clique")
        best = sorted(new_of[v] for v in initial)
    stats = {"nodes": 0}
    deadline = None if time_cap is None else t0 + time_cap
    ub = coloring_bound(NCGraph(n, adj))

    def expand(clique: list[int], cand: int) -> None:
        nonlocal best
        stats["nodes"] += 1
        if deadline is not None and stats["nodes"] & 1023 == 0 and time.monotonic() > deadline:
            raise _Timeout
        vs, colors = _color_sort(adj, cand)
        size = len(clique)
        for idx in range(len(vs) - 1, -1, -1):
            if size + colors[idx] <= len(best):
                return
            v = vs[idx]
            clique.append(v)
            nc = cand & adj[v]
            if nc:
                expand(clique, nc)
            elif len(clique) > len(best):
                best = list(clique)
            clique.pop()
            cand &= ~(1 << v)

    exact = True
    try:
        expand([], (1 << n) - 1)
    except _Timeout:
        exact = False
    witness = sorted(order[k] for k in best)
    labels = [g.labels[v] for v in witness] if g.labels is not None else []
    return CliqueResult(len(witness), witness, stats["nodes"], exact, ub,
                        time.monotonic() - t0, labels)


def local_search_clique(g: NCGraph, steps: int = 20000, seed: int = 0,
                        initial: Sequence[int] | None = None, tenure: int = 7) -> list[int]:
    """Heuristic large clique by add/swap moves with a short tabu list.

    Each step adds a vertex adjacent to the whole clique if there is one, else
    swaps in a vertex missing exactly one clique member, else restarts around a
    random vertex.  Missing counts are kept incrementally through the
    non-neighbour lists, which are short for the dense graphs used here.  The
    result is only a lower bound; it is deterministic for a given seed.
    """
    import random

    n = g.n
    if n == 0:
        return []
    rng = random.Random(seed)
    full = (1 << n) - 1
    non = [list(_bits(full ^ a ^ (1 << v))) for v, a in enumerate(g.adj)]
    miss = [0] * n
    in_c = [False] * n
    zero, one = set(range(n)), set()
    tabu = [-1] * n

    def add(u: int) -> None:
        in_c[u] = True
        zero.discard(u)
        for v in non[u]:
            miss[v] += 1
            if miss[v] == 1:
                zero.discard(v)
                if not in_c[v]:
                    one.add(v)
            elif miss[v] == 2:
                one.discard(v)

    def remove(u: int) -> None:
        in_c[u] = False
        zero.add(u)
        for v in non[u]:
            miss[v] -= 1
            if miss[v] == 0:
                one.discard(v)
                zero.add(v)
            elif miss[v] == 1 and not in_c[v]:
                one.add(v)

    for v in initial or ():
        add(v)
    best = sorted(v for v in range(n) if in_c[v])
    size = len(best)
    for step in range(steps):
        adds = sorted(v for v in zero if not in_c[v] and tabu[v] < step)
        if adds:
            add(rng.choice(adds))
            size += 1
            if size > len(best):
                best = sorted(v for v in range(n) if in_c[v])
            continue
        swaps = sorted(v for v in one if tabu[v] < step)
        if swaps:
            v = rng.choice(swaps)
            w = next(x for x in non[v] if in_c[x])
            remove(w)
            add(v)
            tabu[w] = step + tenure
            continue
        v = rng.randrange(n)
        if in_c[v]:
            continue
        for w in non[v]:
            if in_c[w]:
                remove(w)
                size -= 1
        add(v)
        size += 1
    return best


def brute_force_omega(g: NCGraph) -> int:
    """Exhaustive subset enumeration; only for tiny graphs."""
    best = 0
    for mask in range(1 << g.n):
        vs = list(_bits(mask))
        if len(vs) > best and g.is_clique(vs):
            best = len(vs)
    return best


def reduce_by_classes(items: Sequence[Hashable], ambient: Sequence | None,
                      relation: Callable[[object, object], bool]) -> tuple[list, dict]:
    """One representative per centralizer-equality class of items.

    Two items are equivalent when they relate to exactly the same elements of
    ``ambient`` (defaults to ``items`` itself).  Returns the representatives, in
    order of first appearance, and a map representative -> class members.
    Omega of the representatives equals omega of all items whenever the relation
    is reflexive on items, because equivalent items then relate to each other.
    """
    if ambient is None:
        ambient = items
    classes: dict[int, list] = {}
    for x in items:
        mask = 0
        for k, y in enumerate(ambient):
            if relation(x, y):
                mask |= 1 << k
        classes.setdefault(mask, []).append(x)
    reps = [members[0] for members in classes.values()]
    return reps, {members[0]: members for members in classes.values()}


def omega(items: Sequence, relation: Callable[[object, object], bool], reduce: bool = False,
          ambient: Sequence | None = None, time_cap: float | None = None) -> CliqueResult:
    """Clique number of the non-commuting graph of items (labels are the items)."""
    if reduce:
        items, _ = reduce_by_classes(items, ambient, relation)
    return max_clique(build_graph(items, relation), time_cap=time_cap)


def is_noncommuting_set(items: Sequence, relation: Callable[[object, object], bool]) -> bool:
    """Whether every distinct pair fails the relation."""
    return all(not relation(a, b) for a, b in itertools.combinations(items, 2))


def first_commuting_pair(items: Sequence, relation: Callable[[object, object], bool]):
    for a, b in itertools.combinations(items, 2):
        if relation(a, b):
            return a, b
    return None


# --- DIMACS ---------------------------------------------------------------

def write_dimacs(g: NCGraph, out: TextIO, comment: str | None = None) -> None:
    if comment:
        for line in comment.splitlines():
            out.write(f"c {line}\n")
    edges = list(g.edges())
    out.write(f"p edge {g.n} {len(edges)}\n")
    for u, v in edges:
        out.write(f"e {u + 1} {v + 1}\n")


def to_dimacs(g: NCGraph, comment: str | None = None) -> str:
    import io

    buf = io.StringIO()
    write_dimacs(g, buf, comment)
    return buf.getvalue()


def read_dimacs(text: str) -> NCGraph:
    n = None
    adj: list[int] = []
    for line in text.splitlines():
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        if parts[0] == "p":
            n = int(parts[2])
            adj = [0] * n
        elif parts[0] == "e":
            if n is None:
                raise ValueError("edge before problem line")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            if u == v:
                continue
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    if n is None:
        raise ValueError("missing 'p edge' line")
    return NCGraph(n, adj)
