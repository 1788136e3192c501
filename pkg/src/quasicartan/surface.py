"""Combinatorial triangulations of unpunctured marked surfaces.

A triangulation is a list of triangles, each a triple of sides in
counterclockwise order; a side is either an interior arc id (appearing in
exactly two triangles) or ``None`` for a boundary segment.  No coordinates
and no isotopy data: everything downstream only needs the ccw side order and
the arc incidences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .companion import CompanionBasis, Vector
from .quiver import Quiver, chordless_cycles, freeze_matrix

Side = Optional[int]
Triangle = tuple[Side, Side, Side]


class TriangulationError(ValueError):
    pass


class ConstructionError(RuntimeError):
    """Internal failure of the sign-assignment construction (a bug, not bad input)."""


@dataclass(frozen=True)
class SurfaceSpec:
    """Unpunctured surface: genus, and marked points per boundary component."""

    genus: int
    marked: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "marked", tuple(int(k) for k in self.marked))
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        if not self.marked:
            raise ValueError("at least one boundary component is required")
        if any(k < 1 for k in self.marked):
            raise ValueError("every boundary component needs a marked point")

    @property
    def boundaries(self) -> int:
        return len(self.marked)

    @property
    def arc_count(self) -> int:
        return 6 * self.genus - 6 + 3 * self.boundaries + sum(self.marked)

    @property
    def triangle_count(self) -> int:
        return 4 * self.genus - 4 + 2 * self.boundaries + sum(self.marked)

    @property
    def radical_rank(self) -> int:
        return 2 * self.genus + self.boundaries - 1


@dataclass(frozen=True)
class Triangulation:
    """Triangles as ccw side triples; sides are arc ids or None for boundary."""

    triangles: tuple[Triangle, ...]

    def __post_init__(self) -> None:
        tris = tuple(tuple(s if s is None else int(s) for s in tri) for tri in self.triangles)
        object.__setattr__(self, "triangles", tris)
        slots: dict[int, list[tuple[int, int]]] = {}
        for ti, tri in enumerate(tris):
            if len(tri) != 3:
                raise TriangulationError(f"triangle {ti} does not have 3 sides")
            for si, arc in enumerate(tri):
                if arc is not None:
                    slots.setdefault(arc, []).append((ti, si))
        arcs = sorted(slots)
        if arcs != list(range(len(arcs))):
            raise TriangulationError("arc ids must be 0..n-1 without gaps")
        for arc, occ in slots.items():
            if len(occ) != 2:
                raise TriangulationError(f"arc {arc} occupies {len(occ)} slots, expected 2")
            if occ[0][0] == occ[1][0]:
                raise TriangulationError(f"arc {arc} glues a triangle to itself")
        object.__setattr__(self, "_slots", {a: tuple(v) for a, v in slots.items()})

    @property
    def num_triangles(self) -> int:
        return len(self.triangles)

    @property
    def num_arcs(self) -> int:
        return len(self._slots)

    @property
    def num_boundary(self) -> int:
        return sum(1 for tri in self.triangles for s in tri if s is None)

    def arc_slots(self, arc: int) -> tuple[tuple[int, int], tuple[int, int]]:
        return self._slots[arc]

    def arc_triangles(self, arc: int) -> tuple[int, int]:
        (t1, _), (t2, _) = self._slots[arc]
        return (t1, t2)

    def is_connected(self) -> bool:
        if not self.triangles:
            return True
        seen = {0}
        stack = [0]
        while stack:
            t = stack.pop()
            for arc in self.triangles[t]:
                if arc is None:
                    continue
                for u in self.arc_triangles(arc):
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
        return len(seen) == self.num_triangles


def build_triangulation(spec: SurfaceSpec) -> Triangulation:
    """Deterministic triangulation of a spec: a fan over the polygon model.

    The surface is presented as one polygon whose boundary word reads, in ccw
    order, a commutator pair per handle, a cut-and-return loop enclosing each
    extra boundary component, and finally the marked segments of the first
    boundary component.  Fanning all diagonals from polygon vertex 0 and
    regluing the identified side pairs triangulates the surface.
    """
    if spec.arc_count < 1:
        raise TriangulationError(f"spec has arc count {spec.arc_count} < 1")
    word: list[tuple[str, int]] = []
    for h in range(spec.genus):
        word += [("h", h), ("t", h), ("h", h), ("t", h)]
    for j in range(1, spec.boundaries):
        word.append(("c", j))
        word += [("b", 0)] * spec.marked[j]
        word.append(("c", j))
    word += [("b", 0)] * spec.marked[0]

    n_sides = len(word)
    # both occurrences of an identified side carry the same token
    tokens: list[Optional[tuple[str, int]]] = [
        None if kind == "b" else (kind, idx) for kind, idx in word
    ]

    symbolic: list[tuple[object, object, object]] = []
    for i in range(1, n_sides - 1):
        left = tokens[0] if i == 1 else ("d", i)
        right = tokens[n_sides - 1] if i == n_sides - 2 else ("d", i + 1)
        symbolic.append((left, tokens[i], right))

    arc_of: dict[tuple, int] = {}
    triangles: list[Triangle] = []
    for tri in symbolic:
        sides: list[Side] = []
        for tok in tri:
            if tok is None:
                sides.append(None)
            else:
                if tok not in arc_of:
                    arc_of[tok] = len(arc_of)
                sides.append(arc_of[tok])
        triangles.append(tuple(sides))
    out = Triangulation(tuple(triangles))
    if out.num_arcs != spec.arc_count or out.num_triangles != spec.triangle_count:
        raise ConstructionError("polygon model does not match the spec counts")
    return out


def quiver_from_triangulation(tri: Triangulation,
                              arcs: Optional[Sequence[int]] = None) -> Quiver:
    """Adjacency quiver: one vertex per arc, ccw arrows inside each triangle.

    With ``arcs`` given, only those arcs become vertices (in the given order)
    and all other sides are treated as boundary.
    """
    if arcs is None:
        arcs = list(range(tri.num_arcs))
    index = {a: i for i, a in enumerate(arcs)}
    n = len(arcs)
    b = [[0] * n for _ in range(n)]
    for triangle in tri.triangles:
        for s in range(3):
            x, y = triangle[s], triangle[(s + 1) % 3]
            if x is not None and y is not None and x in index and y in index:
                i, j = index[x], index[y]
                b[i][j] += 1
                b[j][i] -= 1
    return Quiver(freeze_matrix(b))


def flip(tri: Triangulation, arc: int) -> Triangulation:
    """Replace the diagonal of the quadrilateral around an arc by the other one.

    Every interior arc of an unpunctured triangulation is flippable; the new
    diagonal reuses the flipped arc's id.
    """
    if not 0 <= arc < tri.num_arcs:
        raise TriangulationError(f"arc {arc} out of range")
    (t1, s1), (t2, s2) = tri.arc_slots(arc)

    def rot(t: Triangle, s: int) -> Triangle:
        return (t[s], t[(s + 1) % 3], t[(s + 2) % 3])

    _, p, q = rot(tri.triangles[t1], s1)
    _, p2, q2 = rot(tri.triangles[t2], s2)
    new = list(tri.triangles)
    new[t1] = (q, p2, arc)
    new[t2] = (arc, q2, p)
    try:
        return Triangulation(tuple(new))
    except TriangulationError as exc:  # pragma: no cover - unreachable on unpunctured input
        raise ConstructionError(f"flip at arc {arc} broke the triangulation: {exc}")


def flip_sequence(tri: Triangulation, arcs: Sequence[int]) -> Triangulation:
    for a in arcs:
        tri = flip(tri, a)
    return tri


def triangulations_isomorphic(t1: Triangulation, t2: Triangulation) -> bool:
    """Combinatorial isomorphism: relabel triangles, rotate triples, relabel arcs."""
    if (t1.num_triangles, t1.num_arcs, t1.num_boundary) != (t2.num_triangles, t2.num_arcs, t2.num_boundary):
        return False

    m = t1.num_triangles

    def match(tmap: dict[int, int], amap: dict[int, int], used: set[int]) -> bool:
        if len(tmap) == m:
            return True
        ti = len(tmap)
        tri = t1.triangles[ti]
        for tj in range(m):
            if tj in used:
                continue
            target = t2.triangles[tj]
            for r in range(3):
                rt = (target[r], target[(r + 1) % 3], target[(r + 2) % 3])
                trial = dict(amap)
                ok = True
                for a, b in zip(tri, rt):
                    if (a is None) != (b is None):
                        ok = False
                        break
                    if a is None:
                        continue
                    if a in trial:
                        if trial[a] != b:
                            ok = False
                            break
                    elif b in trial.values():
                        ok = False
                        break
                    else:
                        trial[a] = b
                if not ok:
                    continue
                tmap[ti] = tj
                used.add(tj)
                if match(tmap, trial, used):
                    amap.clear()
                    amap.update(trial)
                    return True
                del tmap[ti]
                used.discard(tj)
        return False

    return match({}, {}, set())


# ---------------------------------------------------------------------------
# companion bases from a triangulation


def _unit(t: int, i: int, sign: int = 1) -> list[Fraction]:
    v = [Fraction(0)] * t
    v[i] = Fraction(sign)
    return v


def naive_companion_basis(tri: Triangulation) -> CompanionBasis:
    """Assign e_i + e_j to the arc between triangles i and j.

    On unpunctured surfaces this always produces a positive semi-definite
    companion of the adjacency quiver.
    """
    t = tri.num_triangles
    vectors = []
    for arc in range(tri.num_arcs):
        i, j = tri.arc_triangles(arc)
        v = _unit(t, i)
        v[j] += 1
        vectors.append(tuple(v))
    return CompanionBasis(t, 0, tuple(vectors))


@dataclass(frozen=True)
class AdmissibleBasisData:
    basis: CompanionBasis
    tree_arcs: tuple[int, ...]
    cut_arcs: tuple[int, ...]
    cut_signs: tuple[int, ...]  # aligned with cut_arcs


def admissible_basis_data(tri: Triangulation) -> AdmissibleBasisData:
    """Companion basis whose gram is admissible, built without any mutation.

    Cutting the surface along the non-tree arcs of the dual graph leaves a
    disk; disk arcs get e_i + e_j.  Each cut arc is signed by regluing it
    alone: if its two triangles already share a disk arc the reglued quiver
    has an oriented 3-cycle through the arc and the sign is +; otherwise the
    arc lies on a unique chordless non-oriented cycle and the sign is + for
    even length, - for odd.  Uniqueness of that cycle is verified at runtime.
    """
    if not tri.is_connected():
        raise TriangulationError("triangulation must be connected")
    t = tri.num_triangles

    parent = list(range(t))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree: list[int] = []
    cuts: list[int] = []
    for arc in range(tri.num_arcs):
        i, j = (find(x) for x in tri.arc_triangles(arc))
        if i == j:
            cuts.append(arc)
        else:
            parent[i] = j
            tree.append(arc)

    vectors: dict[int, Vector] = {}
    for arc in tree:
        i, j = tri.arc_triangles(arc)
        v = _unit(t, i)
        v[j] += 1
        vectors[arc] = tuple(v)

    tree_set = set(tree)
    signs = []
    for arc in cuts:
        fi, fj = sorted(tri.arc_triangles(arc))
        shared_tree_arc = any(
            set(tri.arc_triangles(a)) == {fi, fj} for a in tree_set
        )
        allowed = sorted(tree_set) + [arc]
        sub = quiver_from_triangulation(tri, allowed)
        pos = allowed.index(arc)
        through = [c for c in chordless_cycles(sub) if pos in c.vertices]
        if shared_tree_arc:
            if through and not any(c.oriented and len(c) == 3 for c in through):
                raise ConstructionError(f"cut arc {arc}: expected an oriented triangle")
            sign = 1
        else:
            non_oriented = [c for c in through if not c.oriented]
            if len(non_oriented) != 1:
                raise ConstructionError(
                    f"cut arc {arc}: expected one non-oriented chordless cycle, "
                    f"found {len(non_oriented)}")
            sign = 1 if len(non_oriented[0]) % 2 == 0 else -1
        signs.append(sign)
        v = _unit(t, fi)
        v[fj] += sign
        vectors[arc] = tuple(v)

    basis = CompanionBasis(t, 0, tuple(vectors[a] for a in range(tri.num_arcs)))
    return AdmissibleBasisData(basis, tuple(tree), tuple(cuts), tuple(signs))


def admissible_companion_basis(tri: Triangulation) -> CompanionBasis:
    return admissible_basis_data(tri).basis
