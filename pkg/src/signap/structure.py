"""Digraph view of sign patterns: connectivity, components, ear sequences.

Vertices keep their original labels when a subgraph is taken, so an ear
sequence computed on one irreducible component speaks directly about rows of
the ambient pattern.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .errors import (ComponentMismatch, ExtractionFailed, HasLoop,
                     NotApIrreducible, NotMinimallyStronglyConnected)
from .pattern import SignPattern, plus_and_reversed_minus, positive_part

Components = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class Digraph:
    vertices: tuple[int, ...]
    arcs: frozenset[tuple[int, int]]

    def __post_init__(self):
        vs = set(self.vertices)
        for a, b in self.arcs:
            if a not in vs or b not in vs:
                raise ValueError(f"arc ({a}, {b}) has an endpoint outside the vertex set")

    @classmethod
    def on_range(cls, n: int, arcs: Iterable[tuple[int, int]]) -> "Digraph":
        return cls(tuple(range(n)), frozenset((int(a), int(b)) for a, b in arcs))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def successors(self, x: int) -> list[int]:
        return sorted(b for a, b in self.arcs if a == x)

    def predecessors(self, x: int) -> list[int]:
        return sorted(a for a, b in self.arcs if b == x)

    def has_loop(self) -> bool:
        return any(a == b for a, b in self.arcs)

    def induced(self, vertices: Iterable[int]) -> "Digraph":
        vs = tuple(sorted(set(vertices)))
        keep = set(vs)
        return Digraph(vs, frozenset((a, b) for a, b in self.arcs if a in keep and b in keep))

    def reversed(self) -> "Digraph":
        return Digraph(self.vertices, frozenset((b, a) for a, b in self.arcs))

    def without(self, arc: tuple[int, int]) -> "Digraph":
        return Digraph(self.vertices, self.arcs - {arc})

    def to_doc(self) -> dict:
        return {"vertices": list(self.vertices), "arcs": sorted([list(a) for a in self.arcs])}


def digraph_of(A: SignPattern) -> Digraph:
    return Digraph.on_range(A.n, A.nonzeros())


def _scc_labels(D: Digraph) -> tuple[int, np.ndarray]:
    index = {x: i for i, x in enumerate(D.vertices)}
    n = len(D.vertices)
    if D.arcs:
        rows, cols = zip(*((index[a], index[b]) for a, b in D.arcs))
    else:
        rows, cols = (), ()
    graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(n, n))
    return connected_components(graph, directed=True, connection="strong")


def strongly_connected_components(D: Digraph) -> Components:
    """SCCs as sorted vertex tuples, ordered by their smallest vertex."""
    if not D.vertices:
        return ()
    _, labels = _scc_labels(D)
    groups: dict[int, list[int]] = {}
    for x, lab in zip(D.vertices, labels):
        groups.setdefault(int(lab), []).append(x)
    return tuple(sorted((tuple(sorted(g)) for g in groups.values()), key=lambda g: g[0]))


def is_strongly_connected(D: Digraph) -> bool:
    if len(D.vertices) <= 1:
        return True
    count, _ = _scc_labels(D)
    return count == 1


def is_minimally_strongly_connected(D: Digraph) -> bool:
    if not is_strongly_connected(D):
        return False
    return all(not is_strongly_connected(D.without(arc)) for arc in D.arcs)


def is_directed_cycle(D: Digraph) -> bool:
    """True when ``D`` is exactly one directed cycle through all its vertices (length >= 2)."""
    n = len(D.vertices)
    if n < 2 or len(D.arcs) != n or D.has_loop():
        return False
    outs = {a for a, _ in D.arcs}
    ins = {b for _, b in D.arcs}
    return len(outs) == n and len(ins) == n and is_strongly_connected(D)


# -- ear sequences -----------------------------------------------------------

@dataclass(frozen=True)
class Ear:
    """A directed path ``attach_from -> path[0] -> ... -> path[-1] -> attach_to``."""
    attach_from: int
    path: tuple[int, ...]
    attach_to: int


@dataclass(frozen=True)
class NestedSequence:
    cycle: tuple[int, ...]          # cycle[0] is the start vertex; arcs cycle[i] -> cycle[i+1]
    ears: tuple[Ear, ...] = field(default_factory=tuple)

    @property
    def sets(self) -> list[frozenset[int]]:
        out = [frozenset(self.cycle)]
        for ear in self.ears:
            out.append(out[-1] | frozenset(ear.path))
        return out

    def ear_index_of(self, x: int) -> int:
        """0 if ``x`` lies on the cycle, i if it lies on ``ears[i-1]``."""
        if x in self.cycle:
            return 0
        for i, ear in enumerate(self.ears, start=1):
            if x in ear.path:
                return i
        raise KeyError(x)


def _check_nested_input(D: Digraph, v: int) -> None:
    if v not in D.vertices:
        raise ValueError(f"start vertex {v} is not a vertex of the digraph")
    if D.has_loop():
        raise HasLoop("ear sequences are defined for loop-free digraphs")
    if not is_minimally_strongly_connected(D):
        raise NotMinimallyStronglyConnected("digraph is not minimally strongly connected")


def _shortest_path(D: Digraph, sources: Sequence[int], accept, avoid: set[int]) -> list[int] | None:
    """BFS over sorted successors; returns the first accepted path (shortest, then lexicographic)."""
    parent: dict[int, int | None] = {s: None for s in sources}
    queue = deque(sources)
    while queue:
        x = queue.popleft()
        for y in D.successors(x):
            if accept(x, y):
                path = [y, x]
                while parent[path[-1]] is not None:
                    path.append(parent[path[-1]])
                return path[::-1]
            if y in parent or y in avoid:
                continue
            parent[y] = x
            queue.append(y)
    return None


def _shortest_cycle(D: Digraph, v: int) -> tuple[int, ...]:
    path = _shortest_path(D, [v], lambda x, y: y == v, avoid={v})
    if path is None:
        raise NotMinimallyStronglyConnected(f"no directed cycle through {v}")
    return tuple(path[:-1])


def nested_sequence(D: Digraph, v: int) -> NestedSequence:
    """Deterministic ear sequence starting from the shortest cycle through ``v``.

    Ties are broken by lowest vertex: the cycle is the lexicographically first
    shortest one, each ear leaves from the lowest vertex that has an arc out of
    the current set (then the lowest head), and returns by the shortest path.
    """
    _check_nested_input(D, v)
    cycle = _shortest_cycle(D, v)
    covered = set(cycle)
    ears = []
    while len(covered) < len(D.vertices):
        x, y = min((a, b) for a, b in D.arcs if a in covered and b not in covered)
        path = _shortest_path(D, [y], lambda a, b: b in covered, avoid=covered)
        if path is None:
            raise NotMinimallyStronglyConnected(f"no return path from {y}")
        ear = Ear(x, tuple(path[:-1]), path[-1])
        ears.append(ear)
        covered.update(ear.path)
    return NestedSequence(cycle, tuple(ears))


def _simple_cycles_through(D: Digraph, v: int) -> list[tuple[int, ...]]:
    out = []

    def walk(path):
        for y in D.successors(path[-1]):
            if y == v:
                out.append(tuple(path))
            elif y not in path:
                walk(path + [y])
    walk([v])
    return sorted(out, key=lambda c: (len(c), c))


def _ears_from(D: Digraph, covered: frozenset[int]) -> list[Ear]:
    found = []
    for x, y in sorted(D.arcs):
        if x not in covered or y in covered:
            continue

        def walk(path):
            for b in D.successors(path[-1]):
                if b in covered:
                    found.append(Ear(x, tuple(path), b))
                elif b not in path:
                    walk(path + [b])
        walk([y])
    return sorted(set(found), key=lambda e: (len(e.path), e.attach_from, e.path, e.attach_to))


def iter_nested_sequences(D: Digraph, v: int, limit: int = 5000) -> Iterator[NestedSequence]:
    """Enumerate ear sequences starting at ``v`` (deterministic order, at most ``limit``).

    The first one yielded need not equal :func:`nested_sequence`; callers that
    want the canonical choice first should try that one separately.
    """
    _check_nested_input(D, v)
    total = len(D.vertices)
    budget = [limit]

    def grow(cycle, ears, covered):
        if budget[0] <= 0:
            return
        if len(covered) == total:
            budget[0] -= 1
            yield NestedSequence(cycle, tuple(ears))
            return
        for ear in _ears_from(D, covered):
            yield from grow(cycle, ears + [ear], covered | frozenset(ear.path))
            if budget[0] <= 0:
                return

    for cycle in _simple_cycles_through(D, v):
        yield from grow(cycle, [], frozenset(cycle))
        if budget[0] <= 0:
            return


# -- components and AP-irreducibility -----------------------------------------

def irreducible_components(A: SignPattern) -> Components:
    return strongly_connected_components(digraph_of(A))


def _every_row_and_column_has_plus(A: SignPattern) -> bool:
    plus = A.entries > 0
    return bool(plus.any(axis=1).all() and plus.any(axis=0).all())


def is_ap_irreducible(A: SignPattern) -> bool:
    return (is_strongly_connected(digraph_of(A))
            and _every_row_and_column_has_plus(A)
            and is_strongly_connected(digraph_of(plus_and_reversed_minus(A))))


def ap_irreducibility_failure(A: SignPattern) -> str | None:
    """Human-readable name of the first failing condition, or None."""
    if not is_strongly_connected(digraph_of(A)):
        return "the pattern is reducible (its digraph is not strongly connected)"
    plus = A.entries > 0
    for i in range(A.n):
        if not plus[i].any():
            return f"row {i + 1} contains no +"
    for j in range(A.n):
        if not plus[:, j].any():
            return f"column {j + 1} contains no +"
    if not is_strongly_connected(digraph_of(plus_and_reversed_minus(A))):
        return "the + part combined with the reversed - part is reducible"
    return None


def is_minimally_ap_irreducible(A: SignPattern) -> bool:
    if not is_ap_irreducible(A):
        return False
    return all(not is_ap_irreducible(A.with_entry(i, j, 0)) for i, j in A.nonzeros())


def _greedy_component_preserving(A: SignPattern) -> SignPattern:
    target = irreducible_components(positive_part(A))
    X = A
    changed = True
    while changed:
        changed = False
        for i, j in X.nonzeros():
            trial = X.with_entry(i, j, 0)
            if is_ap_irreducible(trial) and irreducible_components(positive_part(trial)) == target:
                X = trial
                changed = True
    return X


def minimal_ap_subpattern(A: SignPattern, *, node_limit: int = 20000,
                          allow_fallback: bool = False) -> SignPattern:
    """A minimally AP-irreducible subpattern whose + part has the same components as A's.

    Greedy row-major deletion first; if the greedy fixpoint is not minimal, a
    memoised depth-first search over deletion orders.  With ``allow_fallback``
    the greedy fixpoint is returned instead of raising ``ExtractionFailed``;
    it still has every structural property the realization engine relies on.
    """
    if not is_ap_irreducible(A):
        raise NotApIrreducible(ap_irreducibility_failure(A) or "not AP-irreducible")
    X = _greedy_component_preserving(A)
    if is_minimally_ap_irreducible(X):
        return X

    target = irreducible_components(positive_part(A))
    seen: set[SignPattern] = set()
    stack = [A]
    while stack and len(seen) < node_limit:
        P = stack.pop()
        if P in seen:
            continue
        seen.add(P)
        children = []
        for i, j in P.nonzeros():
            trial = P.with_entry(i, j, 0)
            if is_ap_irreducible(trial) and irreducible_components(positive_part(trial)) == target:
                children.append(trial)
        if not children and is_minimally_ap_irreducible(P):
            return P
        stack.extend(reversed(children))
    if allow_fallback:
        return X
    raise ExtractionFailed("no minimally AP-irreducible subpattern preserving the components "
                           f"of the + part was found within {node_limit} search nodes")


# -- arc colouring and the quotient digraph ------------------------------------

@dataclass(frozen=True)
class ArcColoring:
    blue: frozenset[tuple[int, int]]
    red: frozenset[tuple[int, int]]


def component_index(parts: Components) -> dict[int, int]:
    return {x: c for c, part in enumerate(parts) for x in part}


def color_arcs(X: SignPattern, parts: Components) -> ArcColoring:
    """Blue: both ends in the same component; red: otherwise."""
    if tuple(parts) != irreducible_components(positive_part(X)):
        raise ComponentMismatch("parts are not the irreducible components of the + part")
    where = component_index(parts)
    blue, red = set(), set()
    for i, j in X.nonzeros():
        (blue if where[i] == where[j] else red).add((i, j))
    return ArcColoring(frozenset(blue), frozenset(red))


def quotient_digraph(coloring: ArcColoring, parts: Components) -> Digraph:
    where = component_index(parts)
    arcs = {(where[p], where[q]) for p, q in coloring.red}
    return Digraph.on_range(len(parts), arcs)


def red_arc_table(coloring: ArcColoring, parts: Components) -> dict[tuple[int, int], list[tuple[int, int]]]:
    """Red arcs grouped by (tail component, head component), lowest arc first."""
    where = component_index(parts)
    table: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for p, q in sorted(coloring.red):
        table.setdefault((where[p], where[q]), []).append((p, q))
    return table

