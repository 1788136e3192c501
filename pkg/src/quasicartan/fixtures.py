"""Built-in fixtures: reference quivers, companions, bases, and surface specs.

Each fixture records where it comes from: ``transcribed`` entries were read
off a printed figure (and are flagged, since that step cannot be checked
mechanically); ``derived`` entries were reconstructed independently and are
pinned by the cross-checks in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .companion import Companion, CompanionBasis, make_vector
from .quiver import Quiver, quiver_from_arrows
from .surface import SurfaceSpec, Triangulation, build_triangulation

# ---------------------------------------------------------------------------
# quivers


def fig3_quiver() -> Quiver:
    """Oriented triangle with arrows 2->1, 3->2, 1->3 (orientation inferred
    from the printed companion mutation; flagged as an inference)."""
    return quiver_from_arrows(3, [(1, 0, 1), (2, 1, 1), (0, 2, 1)])


def fig3_companion() -> Companion:
    return Companion(((2, -1, -1), (-1, 2, -1), (-1, -1, 2)))


def fig3_mutated_companion() -> Companion:
    """The printed result of mutating the figure-3 companion at vertex 2."""
    return Companion(((2, 1, -2), (1, 2, -1), (-2, -1, 2)))


def twice_punctured_torus_quiver() -> Quiver:
    """The 6-vertex quiver with no fully compatible companion (figure 6).

    Derived, not transcribed: of all gluings of four oriented-triangle blocks
    along a perfect matching of their corners, exactly one admits no fully
    compatible companion, and it lies in the mutation class of the adjacency
    quiver of a two-vertex ideal triangulation of the closed torus.  This is
    its canonical form.
    """
    return Quiver((
        (0, -1, -1, 0, 1, 1),
        (1, 0, -1, 1, -1, 0),
        (1, 1, 0, -1, 0, -1),
        (0, -1, 1, 0, 1, -1),
        (-1, 1, 0, -1, 0, 1),
        (-1, 0, 1, 1, -1, 0),
    ))


def fig9_quiver() -> Quiver:
    """Once-punctured-square quiver carrying the figure-9 counterexample.

    Vertex 1 is the marked mutation vertex; orientations are pinned by the
    printed vector labels on both sides of the mutation.
    """
    return quiver_from_arrows(5, [(1, 0, 1), (0, 2, 1), (0, 3, 1), (2, 1, 1),
                                  (2, 3, 1), (3, 4, 1), (4, 2, 1), (4, 1, 1)])


def fig9_basis() -> CompanionBasis:
    t, s = 4, 0
    return CompanionBasis(t, s, (
        make_vector(t, s, {"e3": 1, "e1": -1}),
        make_vector(t, s, {"e4": 1, "e1": -1}),
        make_vector(t, s, {"e1": 1, "e2": 1}),
        make_vector(t, s, {"e2": 1, "e3": 1}),
        make_vector(t, s, {"e2": 1, "e4": 1}),
    ))


FIG9_MARKED_VERTEX = 0  # 0-based; reported as vertex 1


def fig15_quiver() -> Quiver:
    """Torus-with-one-boundary quiver in the printed vertex order (double
    arrow between vertices 2 and 3); orientation inferred from admissibility
    of the printed companion plus membership in the one-quiver class."""
    return quiver_from_arrows(4, [(0, 1, 1), (1, 2, 2), (2, 0, 1), (2, 3, 1),
                                  (3, 1, 1), (3, 0, 1)])


def fig15_basis() -> CompanionBasis:
    t, s = 3, 0
    return CompanionBasis(t, s, (
        make_vector(t, s, {"e1": 1, "e2": -1}),
        make_vector(t, s, {"e1": 1, "e3": -1}),
        make_vector(t, s, {"e1": 1, "e3": -1}),
        make_vector(t, s, {"e2": 1, "e3": -1}),
    ))


def x6_quiver() -> Quiver:
    """Exceptional 6-vertex quiver (mutation class of size 6).

    Two oriented (1,1,2)-triangles joined by one arrow between the vertices
    not on the double arrows; pinned as the unique 6-vertex mutation-finite
    class of size 6 by exhaustive generation (see the derivation script).
    """
    return quiver_from_arrows(6, [(0, 1, 1), (1, 2, 1), (2, 0, 2),
                                  (3, 4, 1), (4, 5, 1), (5, 3, 2),
                                  (4, 1, 1)])


def x7_quiver() -> Quiver:
    """Exceptional 7-vertex quiver: three oriented (1,1,2)-triangles sharing
    a central vertex (mutation class of size 2)."""
    return quiver_from_arrows(7, [(0, 1, 1), (1, 2, 2), (2, 0, 1),
                                  (0, 3, 1), (3, 4, 2), (4, 0, 1),
                                  (0, 5, 1), (5, 6, 2), (6, 0, 1)])


def _tree(n: int, edges: list[tuple[int, int]]) -> Quiver:
    return quiver_from_arrows(n, [(i, j, 1) for i, j in edges])


def e6_quiver() -> Quiver:
    return _tree(6, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])


def e7_quiver() -> Quiver:
    return _tree(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)])


def e8_quiver() -> Quiver:
    return _tree(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (2, 7)])


def e6_tilde_quiver() -> Quiver:
    return _tree(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])


def e7_tilde_quiver() -> Quiver:
    return _tree(8, [(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7)])


def e8_tilde_quiver() -> Quiver:
    return _tree(9, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 6), (6, 7), (0, 8)])


def _elliptic(tree_edges: list[tuple[int, int]], xp: int, n: int) -> Quiver:
    """Affine tree with its branch vertex xp twinned by a new vertex x.

    Every tree edge at xp becomes an oriented triangle xp -> y -> x, closed by
    the double arrow x => xp; twinning any other vertex is mutation-infinite.
    """
    x = n
    arrows = [(i, j, 1) for i, j in tree_edges if xp not in (i, j)]
    for i, j in tree_edges:
        if xp in (i, j):
            y = i if j == xp else j
            arrows += [(xp, y, 1), (y, x, 1)]
    arrows.append((x, xp, 2))
    return quiver_from_arrows(n + 1, arrows)


def e6_elliptic_quiver() -> Quiver:
    return _elliptic([(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)], xp=0, n=7)


def e7_elliptic_quiver() -> Quiver:
    return _elliptic([(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (0, 7)], xp=0, n=8)


def e8_elliptic_quiver() -> Quiver:
    return _elliptic([(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 6), (6, 7), (0, 8)],
                     xp=0, n=9)


def appendix_quiver() -> Quiver:
    """5-vertex handle-pattern quiver realised by the appendix vectors."""
    return quiver_from_arrows(5, [(0, 1, 1), (1, 2, 1), (2, 0, 2), (0, 3, 1),
                                  (3, 2, 1), (3, 1, 1), (1, 4, 1), (4, 3, 1)])


def appendix_basis() -> CompanionBasis:
    t, s = 4, 2
    return CompanionBasis(t, s, (
        make_vector(t, s, {"e2": 1, "e3": -1, "d1": 1}),
        make_vector(t, s, {"e1": 1, "e3": -1}),
        make_vector(t, s, {"e2": 1, "e3": -1, "d2": 1}),
        make_vector(t, s, {"e1": 1, "e2": -1}),
        make_vector(t, s, {"e1": 1, "e4": -1}),
    ))


def appendix_r4_basis() -> CompanionBasis:
    """The variant with the fourth vector replaced by e2 - e4."""
    t, s = 4, 2
    v = list(appendix_basis().vectors)
    v[3] = make_vector(t, s, {"e2": 1, "e4": -1})
    return CompanionBasis(t, s, tuple(v))


def appendix_matrices() -> tuple[tuple[tuple[int, ...], ...], ...]:
    """The five printed 8x8 reflection matrices (rows of each matrix)."""
    s1 = ((1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0, -1, 0), (0, 1, 0, 0, 0, 0, 1, 0),
          (0, 0, 0, 1, 0, 0, 0, 0), (0, -1, 1, 0, 1, 0, -1, 0), (0, 0, 0, 0, 0, 1, 0, 0),
          (0, 0, 0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 0, 0, 1))
    s2 = ((0, 0, 1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0, 0),
          (0, 0, 0, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1, 0, 0),
          (0, 0, 0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 0, 0, 1))
    s3 = ((1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0, 0, -1), (0, 1, 0, 0, 0, 0, 0, 1),
          (0, 0, 0, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0, 0, 0), (0, -1, 1, 0, 0, 1, 0, -1),
          (0, 0, 0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 0, 0, 1))
    s4 = ((0, 1, 0, 0, 0, 0, 0, 0), (1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0, 0, 0),
          (0, 0, 0, 1, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1, 0, 0),
          (0, 0, 0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 0, 0, 1))
    s5 = ((0, 0, 0, 1, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0, 0, 0),
          (1, 0, 0, 0, 0, 0, 0, 0), (0, 0, 0, 0, 1, 0, 0, 0), (0, 0, 0, 0, 0, 1, 0, 0),
          (0, 0, 0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 0, 0, 1))
    return (s1, s2, s3, s4, s5)


# ---------------------------------------------------------------------------
# surface specs


SURFACE_SPECS: dict[str, SurfaceSpec] = {
    "disk-5": SurfaceSpec(0, (5,)),
    "disk-6": SurfaceSpec(0, (6,)),
    "disk-7": SurfaceSpec(0, (7,)),
    "disk-8": SurfaceSpec(0, (8,)),
    "annulus-1-1": SurfaceSpec(0, (1, 1)),
    "annulus-2-1": SurfaceSpec(0, (2, 1)),
    "annulus-2-2": SurfaceSpec(0, (2, 2)),
    "sphere-1-1-1": SurfaceSpec(0, (1, 1, 1)),
    "torus-b1-m1": SurfaceSpec(1, (1,)),
    "torus-b1-m2": SurfaceSpec(1, (2,)),
}


# ---------------------------------------------------------------------------
# registry


@dataclass(frozen=True)
class Fixture:
    name: str
    kind: str  # quiver | companion | basis | surface | rep-matrices | patterns
    provenance: str
    build: Callable[[], object]


def _fixture_list() -> list[Fixture]:
    fx: list[Fixture] = [
        Fixture("fig3-quiver", "quiver",
                "figure 3; transcribed (orientation inferred from the printed matrices)",
                fig3_quiver),
        Fixture("fig3-companion", "companion", "figure 3; transcribed", fig3_companion),
        Fixture("fig3-mutated-companion", "companion", "figure 3; transcribed",
                fig3_mutated_companion),
        Fixture("twice-punctured-torus", "quiver",
                "figure 6; derived (unique four-block gluing with no fully compatible companion)",
                twice_punctured_torus_quiver),
        Fixture("fig9-quiver", "quiver",
                "figure 9; transcribed (orientation pinned by the printed vectors)",
                fig9_quiver),
        Fixture("fig9-basis", "basis", "figure 9; transcribed", fig9_basis),
        Fixture("fig15-quiver", "quiver",
                "figure 15; transcribed (orientation inferred from the printed companion)",
                fig15_quiver),
        Fixture("fig15-basis", "basis", "figure 15; transcribed", fig15_basis),
        Fixture("x6", "quiver",
                "figure 2; derived (unique 6-vertex mutation-finite class of size 6)",
                x6_quiver),
        Fixture("x7", "quiver", "figure 2; transcribed (class size 2 checked)", x7_quiver),
        Fixture("e6", "quiver", "figure 2; standard tree shape", e6_quiver),
        Fixture("e7", "quiver", "figure 2; standard tree shape", e7_quiver),
        Fixture("e8", "quiver", "figure 2; standard tree shape", e8_quiver),
        Fixture("e6-tilde", "quiver", "figure 2; standard tree shape", e6_tilde_quiver),
        Fixture("e7-tilde", "quiver", "figure 2; standard tree shape", e7_tilde_quiver),
        Fixture("e8-tilde", "quiver", "figure 2; standard tree shape", e8_tilde_quiver),
        Fixture("e6-elliptic", "quiver", "figure 2; derived (twinned branch vertex)",
                e6_elliptic_quiver),
        Fixture("e7-elliptic", "quiver", "figure 2; derived (twinned branch vertex)",
                e7_elliptic_quiver),
        Fixture("e8-elliptic", "quiver", "figure 2; derived (twinned branch vertex)",
                e8_elliptic_quiver),
        Fixture("appendix-quiver", "quiver", "appendix; derived from the printed vectors",
                appendix_quiver),
        Fixture("appendix-rep", "basis", "appendix; transcribed vectors u1..u5",
                appendix_basis),
        Fixture("appendix-r4-basis", "basis", "appendix; transcribed variant for the 4-cycle relation",
                appendix_r4_basis),
        Fixture("appendix-matrices", "rep-matrices", "appendix; transcribed 8x8 matrices",
                appendix_matrices),
        Fixture("fig4-patterns", "patterns", "figure 4; transcribed relation shapes",
                lambda: None),
    ]
    for name, spec in SURFACE_SPECS.items():
        fx.append(Fixture(name, "surface", "table 1 / section 6 surface list",
                          (lambda s: (lambda: s))(spec)))
    return fx


FIXTURES: dict[str, Fixture] = {f.name: f for f in _fixture_list()}
ALIASES = {"fig6": "twice-punctured-torus", "fig6-quiver": "twice-punctured-torus"}


def fixture_names() -> list[str]:
    return sorted(FIXTURES)


def get_fixture(name: str) -> Fixture:
    name = ALIASES.get(name, name)
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; see 'fixtures' for the list")
    return FIXTURES[name]


def fixture_quiver(name: str) -> Quiver:
    fx = get_fixture(name)
    if fx.kind == "quiver":
        return fx.build()
    if fx.kind == "surface":
        return _surface_quiver(fx.build())
    raise KeyError(f"fixture {name!r} is a {fx.kind}, not a quiver")


def fixture_triangulation(name: str) -> Triangulation:
    fx = get_fixture(name)
    if fx.kind != "surface":
        raise KeyError(f"fixture {name!r} is a {fx.kind}, not a surface")
    return build_triangulation(fx.build())


def _surface_quiver(spec: SurfaceSpec) -> Quiver:
    from .surface import quiver_from_triangulation
    return quiver_from_triangulation(build_triangulation(spec))


def fixture_bytes(name: str) -> tuple[str, bytes]:
    """Deterministic file name and contents for a fixture."""
    from . import formats

    fx = get_fixture(name)
    if fx.kind == "quiver":
        return f"{fx.name}.qvr", formats.serialize_qvr(fx.build(), fx.provenance).encode()
    if fx.kind == "companion":
        return f"{fx.name}.qcc", formats.serialize_qcc(fx.build(), fx.provenance).encode()
    if fx.kind == "basis":
        obj = formats.basis_to_json(fx.build())
        obj["provenance"] = fx.provenance
        return f"{fx.name}.json", formats.dump_json(obj).encode()
    if fx.kind == "surface":
        obj = formats.surface_spec_to_json(fx.build())
        obj["provenance"] = fx.provenance
        return f"{fx.name}.json", formats.dump_json(obj).encode()
    if fx.kind == "rep-matrices":
        obj = {"provenance": fx.provenance,
               "matrices": [[list(row) for row in m] for m in fx.build()]}
        return f"{fx.name}.json", formats.dump_json(obj).encode()
    if fx.kind == "patterns":
        from importlib import resources
        text = resources.files("quasicartan.data").joinpath("relation_patterns.json").read_text()
        return f"{fx.name}.json", text.encode()
    raise KeyError(f"fixture {name!r} has no file form")
