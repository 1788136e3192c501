"""Reflection representations on the extended space and relation verification.

Reflections act on coordinates over (e_1..e_t, d_1..d_s, d*_1..d*_s) by
x -> x - <x,u>u for norm-2 vectors u.  Relation instances are located in a
quiver as induced subquivers matching shapes stored in a data file; each
instance's relator word is then evaluated as a matrix product and compared
with the identity.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Optional, Sequence

from .companion import (CompanionBasis, Vector, basis_rank, form_value,
                        gram_companion, is_companion, lift_basis)
from .quiver import Quiver, induced_matrix

Matrix = tuple[tuple[Fraction, ...], ...]


def mat_identity(dim: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(dim)) for i in range(dim))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    dim = len(a)
    bt = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def reflection_matrix(u: Vector, t: int, s: int) -> Matrix:
    """Matrix of x -> x - <x,u>u in the ordered ambient basis (columns = images)."""
    dim = t + 2 * s
    if len(u) != dim:
        raise ValueError(f"vector length {len(u)} does not match ambient {dim}")
    norm = form_value(t, s, u, u)
    if norm != 2:
        raise ValueError(f"reflection vector must have self-pairing 2, got {norm}")
    # pairing of u with the j-th ambient basis vector
    pair = [Fraction(0)] * dim
    for j in range(t):
        pair[j] = u[j]
    for j in range(s):
        pair[t + j] = u[t + s + j]
        pair[t + s + j] = u[t + j]
    def norm_entry(x: Fraction):
        # integer reflections stay in plain ints, which keeps words fast
        return int(x) if x.denominator == 1 else x

    cols = []
    for j in range(dim):
        col = [norm_entry(Fraction(1 if i == j else 0) - pair[j] * u[i]) for i in range(dim)]
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))


@dataclass(frozen=True)
class ReflectionRep:
    t: int
    s: int
    generators: tuple[Matrix, ...]

    @property
    def dim(self) -> int:
        return self.t + 2 * self.s

    def word(self, indices: Sequence[int]) -> Matrix:
        out = mat_identity(self.dim)
        for k in indices:
            out = mat_mul(out, self.generators[k])
        return out


def build_rep(basis: CompanionBasis) -> ReflectionRep:
    """One reflection generator per basis vector; vectors must be independent."""
    for i, v in enumerate(basis.vectors):
        if form_value(basis.t, basis.s, v, v) != 2:
            raise ValueError(f"vector {i} has self-pairing != 2")
    if basis_rank(basis) != basis.n:
        raise ValueError("basis vectors are dependent; lift_basis first")
    gens = tuple(reflection_matrix(v, basis.t, basis.s) for v in basis.vectors)
    return ReflectionRep(basis.t, basis.s, gens)


def word_order(m: Matrix, cap: int = 12) -> Optional[int]:
    """Smallest k <= cap with m^k = identity, or None when the cap is passed."""
    ident = mat_identity(len(m))
    acc = m
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = mat_mul(acc, m)
    return None


# ---------------------------------------------------------------------------
# relation instances


@dataclass(frozen=True)
class RelationInstance:
    pattern: str
    vertices: tuple[int, ...]  # quiver vertices in pattern order
    word: tuple[int, ...]      # relator as a sequence of quiver vertex indices


_PATTERN_ORDER = ("R2-commute", "R2-braid", "R3a", "R3b", "R4", "R5a", "R5b")


def _load_patterns() -> list[dict]:
    text = resources.files("quasicartan.data").joinpath("relation_patterns.json").read_text()
    return json.loads(text)["patterns"]


_PATTERNS = None


def relation_patterns() -> list[dict]:
    global _PATTERNS
    if _PATTERNS is None:
        _PATTERNS = _load_patterns()
    return _PATTERNS


def _pattern_matrix(pat: dict) -> tuple[tuple[int, ...], ...]:
    m = pat["vertices"]
    b = [[0] * m for _ in range(m)]
    for i, j, w in pat["arrows"]:
        b[i - 1][j - 1] += w
        b[j - 1][i - 1] -= w
    return tuple(tuple(r) for r in b)


def find_relation_instances(q: Quiver) -> tuple[RelationInstance, ...]:
    """All relation instances supported by q.

    Coxeter pairs contribute commuting/braid words; pairs joined by a double
    arrow carry no pair relation.  The remaining shapes are matched as induced
    subquivers, either with the stored orientation or with all arrows
    reversed, one instance per matched vertex set.
    """
    out: list[RelationInstance] = []
    for i in range(q.n):
        for j in range(i + 1, q.n):
            w = abs(q.b[i][j])
            if w == 0:
                out.append(RelationInstance("R2-commute", (i, j), (i, j) * 2))
            elif w == 1:
                out.append(RelationInstance("R2-braid", (i, j), (i, j) * 3))

    for pat in relation_patterns():
        m = pat["vertices"]
        if m > q.n:
            continue
        target = _pattern_matrix(pat)
        reverse = tuple(tuple(-x for x in row) for row in target)
        base = tuple(pat["relator_base"])
        exponent = pat["exponent"]
        for combo in itertools.combinations(range(q.n), m):
            best: Optional[tuple[int, ...]] = None
            for assign in itertools.permutations(combo):
                got = induced_matrix(q, assign)
                if got == target or got == reverse:
                    if best is None or assign < best:
                        best = assign
            if best is not None:
                word = tuple(best[v - 1] for v in base) * exponent
                out.append(RelationInstance(pat["name"], best, word))
    out.sort(key=lambda r: (_PATTERN_ORDER.index(r.pattern), r.vertices))
    return tuple(out)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class RelationCheck:
    instance: RelationInstance
    holds: bool


@dataclass(frozen=True)
class RelationReport:
    checks: tuple[RelationCheck, ...]
    ok: bool

    def failing(self) -> tuple[RelationInstance, ...]:
        return tuple(c.instance for c in self.checks if not c.holds)


def verify_relations(q: Quiver, basis: CompanionBasis) -> RelationReport:
    """Evaluate every relation instance of q in the reflection representation.

    The gram matrix of the basis must be a companion of q.  Dependent vector
    sets are lifted first (which keeps the gram matrix, hence the instance
    list, unchanged).
    """
    if not is_companion(gram_companion(basis), q):
        raise ValueError("gram matrix is not a quasi-Cartan companion of the quiver")
    if basis_rank(basis) != basis.n:
        basis = lift_basis(basis)
    rep = build_rep(basis)
    ident = mat_identity(rep.dim)
    checks = []
    for inst in find_relation_instances(q):
        checks.append(RelationCheck(inst, rep.word(inst.word) == ident))
    return RelationReport(tuple(checks), all(c.holds for c in checks))
