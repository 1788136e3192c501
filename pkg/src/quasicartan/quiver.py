"""Skew-symmetric exchange matrices: mutation, chordless cycles, canonical labeling.

A quiver on n vertices is stored as its exchange matrix ``b`` with
``b[i][j] > 0`` meaning ``b[i][j]`` arrows from i to j.  All values are
immutable; every operation returns a fresh object.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence

IntMatrix = tuple[tuple[int, ...], ...]
Perm = tuple[int, ...]


def freeze_matrix(rows: Iterable[Iterable[int]]) -> IntMatrix:
    return tuple(tuple(int(x) for x in row) for row in rows)


@dataclass(frozen=True)
class Quiver:
    """Exchange quiver; ``b`` must be a skew-symmetric integer matrix."""

    b: IntMatrix
    labels: Optional[tuple[str, ...]] = None

    def __post_init__(self) -> None:
        b = freeze_matrix(self.b)
        object.__setattr__(self, "b", b)
        n = len(b)
        for i, row in enumerate(b):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        for i in range(n):
            if b[i][i] != 0:
                raise ValueError(f"diagonal entry b[{i}][{i}] = {b[i][i]} is nonzero")
            for j in range(i + 1, n):
                if b[i][j] != -b[j][i]:
                    raise ValueError(f"b is not skew-symmetric at ({i},{j})")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != n:
                raise ValueError("labels length does not match vertex count")
            object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return len(self.b)

    def weight(self, i: int, j: int) -> int:
        return abs(self.b[i][j])

    def max_weight(self) -> int:
        return max((abs(x) for row in self.b for x in row), default=0)

    def arrows(self) -> Iterator[tuple[int, int, int]]:
        """Yield (i, j, w) for each arrow bundle i -> j of weight w > 0."""
        for i in range(self.n):
            for j in range(self.n):
                if self.b[i][j] > 0:
                    yield (i, j, self.b[i][j])

    def edges(self) -> Iterator[tuple[int, int]]:
        """Unordered joined pairs (i < j) of the underlying graph."""
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if self.b[i][j] != 0:
                    yield (i, j)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(w for w in range(self.n) if w != v and self.b[v][w] != 0)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in self.neighbors(v):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n

    def relabel(self, perm: Perm) -> "Quiver":
        """Quiver with new vertex i carrying old vertex perm[i]."""
        b = tuple(tuple(self.b[perm[i]][perm[j]] for j in range(self.n)) for i in range(self.n))
        labels = None if self.labels is None else tuple(self.labels[perm[i]] for i in range(self.n))
        return Quiver(b, labels)

    def opposite(self) -> "Quiver":
        return Quiver(tuple(tuple(-x for x in row) for row in self.b), self.labels)


def quiver_from_arrows(n: int, arrows: Iterable[tuple[int, int, int]],
                       labels: Optional[Sequence[str]] = None) -> Quiver:
    """Build a quiver from 0-based (source, target, weight) triples."""
    b = [[0] * n for _ in range(n)]
    for i, j, w in arrows:
        if i == j:
            raise ValueError("loops are not allowed")
        b[i][j] += w
        b[j][i] -= w
    return Quiver(freeze_matrix(b), None if labels is None else tuple(labels))


def mutate_quiver(q: Quiver, k: int) -> Quiver:
    """Fomin-Zelevinsky mutation of the exchange matrix at vertex k (0-based)."""
    n = q.n
    if not 0 <= k < n:
        raise IndexError(f"mutation vertex {k} out of range for n={n}")
    b = q.b
    new = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                new[i][j] = -b[i][j]
            else:
                bik, bkj = b[i][k], b[k][j]
                prod = bik * bkj
                if prod > 0:
                    new[i][j] = b[i][j] + (prod if bik > 0 else -prod)
                else:
                    new[i][j] = b[i][j]
    return Quiver(freeze_matrix(new), q.labels)


def mutate_sequence(q: Quiver, seq: Iterable[int]) -> Quiver:
    for k in seq:
        q = mutate_quiver(q, k)
    return q


# ---------------------------------------------------------------------------
# chordless cycles


@dataclass(frozen=True)
class ChordlessCycle:
    """Cyclically ordered vertices of a chordless cycle plus orientation flag."""

    vertices: tuple[int, ...]
    oriented: bool

    def __len__(self) -> int:
        return len(self.vertices)


def _cycle_oriented(q: Quiver, cycle: Sequence[int]) -> bool:
    # A double arrow counts as a single directed edge here.
    k = len(cycle)
    signs = [1 if q.b[cycle[i]][cycle[(i + 1) % k]] > 0 else -1 for i in range(k)]
    return all(s == signs[0] for s in signs)


def chordless_cycles(q: Quiver) -> tuple[ChordlessCycle, ...]:
    """All chordless cycles of the underlying graph, deterministically ordered.

    Each cycle is reported with its lexicographically minimal vertex first and
    the smaller of its two neighbours on the cycle second, which is the
    lex-minimal representative among rotations and reflections.
    """
    n = q.n
    adj = [set(q.neighbors(v)) for v in range(n)]
    found: list[ChordlessCycle] = []

    def extend(path: list[int], blocked: set[int]) -> None:
        a, last = path[0], path[-1]
        for y in sorted(adj[last]):
            if y <= a or y in blocked:
                continue
            if any(y in adj[v] for v in path[1:-1]):
                continue
            if y in adj[a]:
                if path[1] < y:
                    found.append(ChordlessCycle(tuple(path) + (y,), _cycle_oriented(q, path + [y])))
                # a chord back to the start rules out longer chordless cycles
                continue
            path.append(y)
            blocked.add(y)
            extend(path, blocked)
            blocked.discard(y)
            path.pop()

    for a in range(n):
        for second in sorted(adj[a]):
            if second <= a:
                continue
            extend([a, second], {a, second})
    found.sort(key=lambda c: (len(c.vertices), c.vertices))
    return tuple(found)


# ---------------------------------------------------------------------------
# canonical form


@dataclass(frozen=True)
class CanonicalQuiver:
    quiver: Quiver
    perm: Perm  # canonical vertex i carries original vertex perm[i]


def _refine_colors(q: Quiver) -> list[int]:
    n = q.n
    colors = [0] * n
    while True:
        sigs = []
        for v in range(n):
            row = tuple(sorted((colors[w], q.b[v][w]) for w in range(n) if w != v))
            sigs.append((colors[v], row))
        order = sorted(set(sigs))
        new = [order.index(s) for s in sigs]
        if new == colors:
            return colors
        colors = new


def _search_min_perms(q: Quiver, collect_all: bool) -> list[Perm]:
    """Cell-respecting permutations minimising the relabelled matrix.

    Entries are compared column by column ((0,1),(0,2),(1,2),(0,3),...), which
    fixes a total order on matrices; exhaustive within refinement cells, so the
    result is a true digraph-isomorphism invariant at desk scale.
    """
    n = q.n
    colors = _refine_colors(q)
    cells: dict[int, list[int]] = {}
    for v in range(n):
        cells.setdefault(colors[v], []).append(v)
    slots: list[list[int]] = []
    for c in sorted(cells):
        slots.extend([cells[c]] * len(cells[c]))

    b = q.b
    best_cols: list[Optional[tuple[tuple[int, ...], ...]]] = [None]
    best_perms: list[Perm] = []

    def place(pos: int, perm: list[int], used: set[int],
              cols: list[tuple[int, ...]], equal_so_far: bool) -> None:
        if pos == n:
            cand = tuple(cols)
            if best_cols[0] is None or cand < best_cols[0]:
                best_cols[0] = cand
                best_perms.clear()
                best_perms.append(tuple(perm))
            elif cand == best_cols[0] and collect_all:
                best_perms.append(tuple(perm))
            return
        for v in slots[pos]:
            if v in used:
                continue
            col = tuple(b[perm[i]][v] for i in range(pos))
            eq = equal_so_far
            if best_cols[0] is not None and eq:
                ref = best_cols[0][pos]
                if col > ref:
                    continue
                if col < ref:
                    eq = False
            perm.append(v)
            used.add(v)
            cols.append(col)
            place(pos + 1, perm, used, cols, eq)
            cols.pop()
            used.discard(v)
            perm.pop()

    place(0, [], set(), [], True)
    return best_perms


def canonical_form(q: Quiver) -> CanonicalQuiver:
    """Canonical representative of the digraph-isomorphism class of q.

    Two quivers have equal canonical matrices iff some vertex permutation P
    satisfies P b Pᵀ equality; the witnessing permutation is returned.
    """
    perm = _search_min_perms(q, collect_all=False)[0]
    return CanonicalQuiver(q.relabel(perm), perm)


def canonical_perms(q: Quiver) -> tuple[Perm, ...]:
    """All permutations realising the canonical matrix (a coset of Aut(q))."""
    return tuple(_search_min_perms(q, collect_all=True))


def canonical_key(q: Quiver) -> IntMatrix:
    return canonical_form(q).quiver.b


def is_isomorphic(q1: Quiver, q2: Quiver) -> bool:
    return canonical_key(q1) == canonical_key(q2)


# ---------------------------------------------------------------------------
# subquivers


@dataclass(frozen=True)
class Subquiver:
    quiver: Quiver
    index_map: Perm  # subquiver vertex i carries original vertex index_map[i]


def subquiver(q: Quiver, vertices: Iterable[int]) -> Subquiver:
    """Restriction of the exchange matrix to a nonempty vertex subset."""
    sel = tuple(sorted(set(vertices)))
    if not sel:
        raise ValueError("vertex subset must be nonempty")
    for v in sel:
        if not 0 <= v < q.n:
            raise IndexError(f"vertex {v} out of range")
    b = tuple(tuple(q.b[i][j] for j in sel) for i in sel)
    labels = None if q.labels is None else tuple(q.labels[i] for i in sel)
    return Subquiver(Quiver(b, labels), sel)


def induced_matrix(q: Quiver, vertices: Sequence[int]) -> IntMatrix:
    """b restricted to an ordered vertex tuple (no sorting, repeats allowed)."""
    return tuple(tuple(q.b[i][j] for j in vertices) for i in vertices)
