"""Wire formats: QVR v1 quivers, QCC v1 companions, JSON mirrors and reports.

All user-facing vertex indices are 1-based; the in-memory objects are
0-based.  Text formats allow '#' comment lines (used for provenance headers)
and parse errors carry line numbers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Optional, Sequence

from .companion import Companion, CompanionBasis
from .mutclass import MutationClassReport
from .quiver import Quiver
from .surface import SurfaceSpec, Triangulation
from .weyl import RelationReport


class FormatError(ValueError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")


def _data_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if stripped and not stripped.startswith("#"):
            out.append((ln, stripped))
    return out


def _header(provenance: Optional[str]) -> str:
    return f"# {provenance}\n" if provenance else ""


# ---------------------------------------------------------------------------
# QVR v1


def serialize_qvr(q: Quiver, provenance: Optional[str] = None) -> str:
    lines = [_header(provenance) + "# QVR v1", str(q.n)]
    for i in range(q.n):
        for j in range(i + 1, q.n):
            if q.b[i][j] != 0:
                lines.append(f"{i + 1} {j + 1} {q.b[i][j]}")
    return "\n".join(lines) + "\n"


def parse_qvr(text: str) -> Quiver:
    data = _data_lines(text)
    if not data:
        raise FormatError("empty QVR input")
    ln, head = data[0]
    try:
        n = int(head)
    except ValueError:
        raise FormatError(f"expected vertex count, got {head!r}", ln)
    if n < 1:
        raise FormatError("vertex count must be positive", ln)
    b = [[0] * n for _ in range(n)]
    for ln, row in data[1:]:
        parts = row.split()
        if len(parts) != 3:
            raise FormatError(f"expected 'i j b_ij', got {row!r}", ln)
        try:
            i, j, w = (int(p) for p in parts)
        except ValueError:
            raise FormatError(f"non-integer entry in {row!r}", ln)
        if not (1 <= i < j <= n):
            raise FormatError(f"indices must satisfy 1 <= i < j <= {n}", ln)
        if w == 0:
            raise FormatError("zero entries are omitted in QVR", ln)
        if b[i - 1][j - 1] != 0:
            raise FormatError(f"duplicate entry for ({i},{j})", ln)
        b[i - 1][j - 1] = w
        b[j - 1][i - 1] = -w
    return Quiver(tuple(tuple(r) for r in b))


def quiver_to_json(q: Quiver) -> dict:
    arrows = [[i + 1, j + 1, q.b[i][j]]
              for i in range(q.n) for j in range(i + 1, q.n) if q.b[i][j] != 0]
    out: dict[str, Any] = {"n": q.n, "arrows": arrows}
    if q.labels is not None:
        out["labels"] = list(q.labels)
    return out


def quiver_from_json(obj: dict) -> Quiver:
    n = int(obj["n"])
    b = [[0] * n for _ in range(n)]
    for i, j, w in obj.get("arrows", []):
        b[i - 1][j - 1] = int(w)
        b[j - 1][i - 1] = -int(w)
    labels = obj.get("labels")
    return Quiver(tuple(tuple(r) for r in b),
                  None if labels is None else tuple(labels))


# ---------------------------------------------------------------------------
# QCC v1


def serialize_qcc(a: Companion, provenance: Optional[str] = None) -> str:
    lines = [_header(provenance) + "# QCC v1", str(a.n)]
    for i in range(a.n):
        lines.append(" ".join(str(a.a[i][j]) for j in range(i + 1)))
    return "\n".join(lines) + "\n"


def parse_qcc(text: str) -> Companion:
    data = _data_lines(text)
    if not data:
        raise FormatError("empty QCC input")
    ln, head = data[0]
    try:
        n = int(head)
    except ValueError:
        raise FormatError(f"expected matrix size, got {head!r}", ln)
    if len(data) - 1 != n:
        raise FormatError(f"expected {n} triangle rows, got {len(data) - 1}", data[0][0])
    a = [[0] * n for _ in range(n)]
    for i, (ln, row) in enumerate(data[1:]):
        parts = row.split()
        if len(parts) != i + 1:
            raise FormatError(f"row {i + 1} must have {i + 1} entries", ln)
        for j, p in enumerate(parts):
            try:
                a[i][j] = a[j][i] = int(p)
            except ValueError:
                raise FormatError(f"non-integer entry {p!r}", ln)
    return Companion(tuple(tuple(r) for r in a))


def companion_to_json(a: Companion) -> dict:
    return {"n": a.n, "matrix": [list(r) for r in a.a]}


def companion_from_json(obj: dict) -> Companion:
    return Companion(tuple(tuple(int(x) for x in row) for row in obj["matrix"]))


# ---------------------------------------------------------------------------
# companion bases


def basis_to_json(basis: CompanionBasis) -> dict:
    return {
        "t": basis.t,
        "s": basis.s,
        "vectors": [[str(x) for x in v] for v in basis.vectors],
    }


def basis_from_json(obj: dict) -> CompanionBasis:
    try:
        vectors = tuple(tuple(Fraction(x) for x in v) for v in obj["vectors"])
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational coordinate: {exc}")
    return CompanionBasis(int(obj["t"]), int(obj["s"]), vectors)


# ---------------------------------------------------------------------------
# triangulations and surface specs


def triangulation_to_json(tri: Triangulation) -> dict:
    gluing = []
    for arc in range(tri.num_arcs):
        (t1, s1), (t2, s2) = tri.arc_slots(arc)
        gluing.append([[t1, s1], [t2, s2]])
    return {
        "triangles": [[[t, 0], [t, 1], [t, 2]] for t in range(tri.num_triangles)],
        "gluing": gluing,
    }


def triangulation_from_json(obj: dict) -> Triangulation:
    num = len(obj["triangles"])
    sides: list[list[Optional[int]]] = [[None, None, None] for _ in range(num)]
    for arc, pair in enumerate(obj["gluing"]):
        for t, s in pair:
            if not (0 <= t < num and 0 <= s < 3):
                raise FormatError(f"slot [{t},{s}] out of range in gluing pair {arc}")
            if sides[t][s] is not None:
                raise FormatError(f"slot [{t},{s}] glued twice")
            sides[t][s] = arc
    return Triangulation(tuple(tuple(row) for row in sides))


def surface_spec_to_json(spec: SurfaceSpec) -> dict:
    return {"g": spec.genus, "k": list(spec.marked)}


def surface_spec_from_json(obj: dict) -> SurfaceSpec:
    return SurfaceSpec(int(obj["g"]), tuple(int(x) for x in obj["k"]))


# ---------------------------------------------------------------------------
# reports


def class_report_to_json(report: MutationClassReport) -> dict:
    out: dict[str, Any] = {
        "finite": report.finite,
        "counting": "members-up-to-isomorphism",
        "members": [serialize_qvr(m) for m in report.members],
        "edges": [[m, k + 1, m2] for m, k, m2 in report.edges],
    }
    if report.witness is not None:
        out["witness"] = [k + 1 for k in report.witness]
    if report.certificates is not None:
        out["certificates"] = [
            {
                "member": c.member,
                "companion": serialize_qcc(c.companion),
                "inertia": list(c.inertia.as_tuple()),
                "admissible": c.admissible,
            }
            for c in report.certificates
        ]
    if report.violation is not None:
        v = report.violation
        out["violation"] = {
            "member": v.member,
            "vertex": v.vertex + 1,
            "reason": v.reason,
            "companion": serialize_qcc(v.companion),
            "quiver": serialize_qvr(v.quiver),
        }
    return out


def relation_report_to_json(report: RelationReport) -> dict:
    return {
        "instances": [
            {
                "pattern": c.instance.pattern,
                "vertices": [v + 1 for v in c.instance.vertices],
                "relator": [v + 1 for v in c.instance.word],
                "holds": c.holds,
            }
            for c in report.checks
        ],
        "pass": report.ok,
    }


def dump_json(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"
