"""Quasi-Cartan companions of a quiver and their geometric realisations.

A companion of an exchange matrix b is a symmetric integer matrix with
diagonal 2 whose off-diagonal moduli match |b|.  Companions mutate alongside
the quiver, either by the matrix rule (:func:`mutate_companion`) or by
partial reflection of a realising vector set (:func:`reflect_basis`); the two
routes agree whenever the companion condition holds.

Everything here is exact: integers and :class:`fractions.Fraction` only.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .quiver import IntMatrix, Quiver, chordless_cycles, freeze_matrix

Vector = tuple[Fraction, ...]


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class Companion:
    """Symmetric integer matrix with all diagonal entries equal to 2."""

    a: IntMatrix

    def __post_init__(self) -> None:
        a = freeze_matrix(self.a)
        object.__setattr__(self, "a", a)
        n = len(a)
        for i, row in enumerate(a):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            if a[i][i] != 2:
                raise ValueError(f"diagonal entry a[{i}][{i}] = {a[i][i]}, expected 2")
            for j in range(i + 1, n):
                if a[i][j] != a[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i},{j})")

    @property
    def n(self) -> int:
        return len(self.a)


def companion_from_signs(q: Quiver, sign: dict[tuple[int, int], int]) -> Companion:
    """Companion of q with a_ij = sign[(i,j)] * |b_ij| on each joined pair i<j."""
    n = q.n
    a = [[0] * n for _ in range(n)]
    for i in range(n):
        a[i][i] = 2
        for j in range(i + 1, n):
            w = abs(q.b[i][j])
            if w:
                s = sign[(i, j)]
                if s not in (1, -1):
                    raise ValueError(f"sign for ({i},{j}) must be +-1")
                a[i][j] = a[j][i] = s * w
    return Companion(freeze_matrix(a))


def all_minus_companion(q: Quiver) -> Companion:
    return companion_from_signs(q, {e: -1 for e in q.edges()})


def is_companion(a: Companion, q: Quiver) -> bool:
    """True iff |a_ij| = |b_ij| for all off-diagonal entries."""
    if a.n != q.n:
        raise ValueError(f"dimension mismatch: companion {a.n} vs quiver {q.n}")
    return all(abs(a.a[i][j]) == abs(q.b[i][j])
               for i in range(q.n) for j in range(i + 1, q.n))


def mutate_companion(a: Companion, q: Quiver, k: int) -> Companion:
    """Matrix mutation of a companion at vertex k.

    Requires is_companion(a, q); the result need not be a companion of the
    mutated quiver.  sgn(0) = 0, so entries with a vanishing factor are kept.
    """
    if not 0 <= k < q.n:
        raise IndexError(f"mutation vertex {k} out of range for n={q.n}")
    if not is_companion(a, q):
        raise ValueError("matrix is not a quasi-Cartan companion of the quiver")
    n, b, old = q.n, q.b, a.a
    new = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                new[i][j] = 2
            elif j == k:
                new[i][j] = _sgn(b[i][k]) * old[i][k]
            elif i == k:
                new[i][j] = -_sgn(b[k][j]) * old[k][j]
            else:
                new[i][j] = old[i][j] - _sgn(old[i][k] * old[k][j]) * max(0, b[i][k] * b[k][j])
    return Companion(freeze_matrix(new))


# ---------------------------------------------------------------------------
# compatibility and admissibility


def _is_oriented_triangle(q: Quiver, i: int, j: int, k: int) -> bool:
    """True iff vertices i, j, k span a cyclically oriented 3-cycle."""
    bij, bjk, bki = q.b[i][j], q.b[j][k], q.b[k][i]
    if bij == 0 or bjk == 0 or bki == 0:
        return False
    return (bij > 0) == (bjk > 0) == (bki > 0)


def k_compatibility_violations(a: Companion, q: Quiver, k: int) -> list[tuple[int, int, int]]:
    if not is_companion(a, q):
        raise ValueError("matrix is not a quasi-Cartan companion of the quiver")
    bad = []
    for i in range(q.n):
        for j in range(i + 1, q.n):
            if i == k or j == k:
                continue
            prod = a.a[i][j] * a.a[j][k] * a.a[k][i]
            if _is_oriented_triangle(q, i, j, k):
                if prod <= 0:
                    bad.append((i, j, k))
            elif prod > 0:
                bad.append((i, j, k))
    return bad


def is_k_compatible(a: Companion, q: Quiver, k: int) -> bool:
    return not k_compatibility_violations(a, q, k)


def compatibility_violations(a: Companion, q: Quiver) -> list[tuple[int, int, int]]:
    """Triples (i, j, k) with k the pivot witnessing a compatibility failure."""
    bad = []
    for k in range(q.n):
        bad.extend(k_compatibility_violations(a, q, k))
    return bad


def is_fully_compatible(a: Companion, q: Quiver) -> bool:
    return not compatibility_violations(a, q)


@dataclass(frozen=True)
class CycleViolation:
    vertices: tuple[int, ...]
    oriented: bool
    cyclic_product: int


def admissibility_violations(a: Companion, q: Quiver) -> list[CycleViolation]:
    """Chordless cycles breaking the admissibility sign rule.

    The cyclic product of -a over an oriented chordless cycle must be
    negative; over a non-oriented one it must be positive.
    """
    if not is_companion(a, q):
        raise ValueError("matrix is not a quasi-Cartan companion of the quiver")
    bad = []
    for cyc in chordless_cycles(q):
        vs = cyc.vertices
        prod = 1
        for t in range(len(vs)):
            prod *= -a.a[vs[t]][vs[(t + 1) % len(vs)]]
        if (prod >= 0) if cyc.oriented else (prod <= 0):
            bad.append(CycleViolation(vs, cyc.oriented, prod))
    return bad


def is_admissible(a: Companion, q: Quiver) -> bool:
    return not admissibility_violations(a, q)


# ---------------------------------------------------------------------------
# sign changes


def flip_sign(a: Companion, i: int) -> Companion:
    """Negate row and column i, keeping the diagonal."""
    if not 0 <= i < a.n:
        raise IndexError(f"vertex {i} out of range")
    new = [list(row) for row in a.a]
    for j in range(a.n):
        if j != i:
            new[i][j] = -new[i][j]
            new[j][i] = -new[j][i]
    return Companion(freeze_matrix(new))


def sign_normal_form(a: Companion) -> Companion:
    """Canonical representative of the simultaneous-sign-change class.

    A spanning forest of the nonzero-entry graph is traversed from the
    smallest vertex of each component; each tree edge is forced positive.
    The orbit element with all tree entries positive is unique, so equality
    of normal forms decides sign equivalence in O(n^2).
    """
    n = a.n
    eps = [0] * n
    for root in range(n):
        if eps[root]:
            continue
        eps[root] = 1
        queue = [root]
        while queue:
            u = queue.pop(0)
            for v in range(n):
                if v != u and a.a[u][v] != 0 and eps[v] == 0:
                    eps[v] = eps[u] * _sgn(a.a[u][v])
                    queue.append(v)
    new = [[eps[i] * eps[j] * a.a[i][j] if i != j else 2 for j in range(n)] for i in range(n)]
    return Companion(freeze_matrix(new))


def sign_equivalent(a1: Companion, a2: Companion) -> bool:
    """Whether some set of row/column sign flips carries a1 to a2."""
    if a1.n != a2.n:
        raise ValueError("dimension mismatch")
    return sign_normal_form(a1).a == sign_normal_form(a2).a


# ---------------------------------------------------------------------------
# exact inertia


@dataclass(frozen=True)
class Inertia:
    n_plus: int
    n_minus: int
    n_zero: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_minus, self.n_zero)


def inertia(m: Sequence[Sequence[int]] | Companion) -> Inertia:
    """Exact inertia of a symmetric matrix by rational congruence reduction.

    Symmetric Gaussian elimination over Fraction; whenever every remaining
    diagonal entry vanishes, a 2x2 off-diagonal block [[0,c],[c,0]] is
    pivoted, contributing one positive and one negative eigenvalue.
    """
    rows = m.a if isinstance(m, Companion) else m
    n = len(rows)
    for i in range(n):
        if len(rows[i]) != n:
            raise ValueError("matrix is not square")
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")
    work = [[Fraction(x) for x in row] for row in rows]
    active = list(range(n))
    n_plus = n_minus = n_zero = 0
    while active:
        pivot = next((i for i in active if work[i][i] != 0), None)
        if pivot is not None:
            d = work[pivot][pivot]
            if d > 0:
                n_plus += 1
            else:
                n_minus += 1
            active.remove(pivot)
            for u in active:
                if work[u][pivot] == 0:
                    continue
                f = work[u][pivot] / d
                for v in active:
                    work[u][v] -= f * work[pivot][v]
            continue
        block = next(((i, j) for i in active for j in active if i < j and work[i][j] != 0), None)
        if block is None:
            n_zero += len(active)
            break
        i, j = block
        c = work[i][j]
        n_plus += 1
        n_minus += 1
        active.remove(i)
        active.remove(j)
        for u in active:
            fi, fj = work[u][i] / c, work[u][j] / c
            for v in active:
                work[u][v] -= fi * work[j][v] + fj * work[i][v]
    return Inertia(n_plus, n_minus, n_zero)


def is_positive_semidefinite(m: Sequence[Sequence[int]] | Companion) -> bool:
    return inertia(m).n_minus == 0


# ---------------------------------------------------------------------------
# exhaustive sign search


def enumerate_fully_compatible(q: Quiver, psd_only: bool = False,
                               jobs: int = 1) -> tuple[Companion, ...]:
    """All fully compatible companions of q, up to simultaneous sign changes.

    Exhaustive search over the 2^E sign assignments on joined pairs, pruned
    by the triangle conditions as soon as a triangle's last edge receives a
    sign; the surviving assignments are quotiented by vertex flips via
    :func:`sign_normal_form`.  With ``psd_only`` the list is further filtered
    by positive semi-definiteness.
    """
    edges = list(q.edges())
    if len(edges) > 30:
        raise ValueError(f"too many arrows for exhaustive search: {len(edges)} > 30")
    edge_pos = {e: t for t, e in enumerate(edges)}

    # triangle -> (edge slots, +1 for oriented / -1 for non-oriented)
    constraints: list[tuple[tuple[int, int, int], int]] = []
    for i, j, k in itertools.combinations(range(q.n), 3):
        if q.b[i][j] and q.b[j][k] and q.b[i][k]:
            want = 1 if _is_oriented_triangle(q, i, j, k) else -1
            constraints.append(((edge_pos[(i, j)], edge_pos[(j, k)], edge_pos[(i, k)]), want))
    by_last: dict[int, list[tuple[tuple[int, int, int], int]]] = {}
    for slots, want in constraints:
        by_last.setdefault(max(slots), []).append((slots, want))

    def search(prefix: list[int]) -> list[tuple[int, ...]]:
        out = []
        stack = [prefix]
        while stack:
            cur = stack.pop()
            t = len(cur)
            if t == len(edges):
                out.append(tuple(cur))
                continue
            for s in (1, -1):
                nxt = cur + [s]
                ok = True
                for slots, want in by_last.get(t, ()):
                    prod = nxt[slots[0]] * nxt[slots[1]] * nxt[slots[2]]
                    if prod != want:
                        ok = False
                        break
                if ok:
                    stack.append(nxt)
        return out

    if not edges:
        solutions = [()]
    elif jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        depth = min(len(edges), max(1, (jobs - 1).bit_length()))
        prefixes = [list(p) for p in itertools.product((1, -1), repeat=depth)]
        valid = []
        for p in prefixes:
            if all(p[s0] * p[s1] * p[s2] == w
                   for t in range(depth) for (s0, s1, s2), w in by_last.get(t, ())):
                valid.append(p)
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            solutions = [s for chunk in pool.map(search, valid) for s in chunk]
    else:
        solutions = search([])

    seen: dict[IntMatrix, Companion] = {}
    for sol in solutions:
        comp = companion_from_signs(q, {e: sol[t] for t, e in enumerate(edges)})
        if psd_only and not is_positive_semidefinite(comp):
            continue
        normal = sign_normal_form(comp)
        seen.setdefault(normal.a, normal)
    return tuple(seen[k] for k in sorted(seen))


# ---------------------------------------------------------------------------
# companion bases: vectors in the extended quadratic space


@dataclass(frozen=True)
class CompanionBasis:
    """Vectors with exact rational coordinates over (e_1..e_t, d_1..d_s, d*_1..d*_s).

    The ambient bilinear form pairs the Euclidean coordinates orthonormally,
    makes the d_i isotropic and orthogonal to every e_j, and pairs d_i with
    d*_j as the Kronecker delta; d* pairs to zero with itself.
    """

    t: int
    s: int
    vectors: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if self.t < 0 or self.s < 0:
            raise ValueError("ambient dimensions must be non-negative")
        dim = self.t + 2 * self.s
        vecs = tuple(tuple(Fraction(x) for x in v) for v in self.vectors)
        for v in vecs:
            if len(v) != dim:
                raise ValueError(f"vector length {len(v)} does not match ambient {dim}")
        object.__setattr__(self, "vectors", vecs)

    @property
    def n(self) -> int:
        return len(self.vectors)

    @property
    def dim(self) -> int:
        return self.t + 2 * self.s


def make_vector(t: int, s: int, coords: dict[str, int] | None = None) -> Vector:
    """Convenience constructor: keys 'e1'.., 'd1'.., 'd*1'.. with int values."""
    v = [Fraction(0)] * (t + 2 * s)
    for key, val in (coords or {}).items():
        if key.startswith("d*"):
            idx = t + s + int(key[2:]) - 1
        elif key.startswith("d"):
            idx = t + int(key[1:]) - 1
        elif key.startswith("e"):
            idx = int(key[1:]) - 1
        else:
            raise ValueError(f"bad coordinate key {key!r}")
        v[idx] += Fraction(val)
    return tuple(v)


def form_value(t: int, s: int, x: Vector, y: Vector) -> Fraction:
    """Ambient bilinear form on coordinate vectors."""
    acc = Fraction(0)
    for i in range(t):
        acc += x[i] * y[i]
    for j in range(s):
        acc += x[t + j] * y[t + s + j] + x[t + s + j] * y[t + j]
    return acc


def form_matrix(t: int, s: int) -> tuple[Vector, ...]:
    dim = t + 2 * s
    rows = [[Fraction(0)] * dim for _ in range(dim)]
    for i in range(t):
        rows[i][i] = Fraction(1)
    for j in range(s):
        rows[t + j][t + s + j] = Fraction(1)
        rows[t + s + j][t + j] = Fraction(1)
    return tuple(tuple(r) for r in rows)


def gram(basis: CompanionBasis) -> IntMatrix:
    """Matrix of pairwise form values; requires every pairing to be an integer."""
    n = basis.n
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            val = form_value(basis.t, basis.s, basis.vectors[i], basis.vectors[j])
            if val.denominator != 1:
                raise ValueError(f"non-integer pairing {val} at ({i},{j})")
            out[i][j] = out[j][i] = int(val)
    return freeze_matrix(out)


def gram_companion(basis: CompanionBasis) -> Companion:
    return Companion(gram(basis))


def reflect_basis(basis: CompanionBasis, q: Quiver, k: int) -> CompanionBasis:
    """Geometric mutation: negate v_k and reflect every v_i with b_ik > 0 in v_k."""
    if basis.n != q.n:
        raise ValueError("basis size does not match quiver")
    if not 0 <= k < q.n:
        raise IndexError(f"vertex {k} out of range")
    if not is_companion(gram_companion(basis), q):
        raise ValueError("gram matrix is not a quasi-Cartan companion of the quiver")
    vk = basis.vectors[k]
    new = []
    for i, v in enumerate(basis.vectors):
        if i == k:
            new.append(tuple(-x for x in v))
        elif q.b[i][k] > 0:
            c = form_value(basis.t, basis.s, v, vk)
            new.append(tuple(x - c * y for x, y in zip(v, vk)))
        else:
            new.append(v)
    return CompanionBasis(basis.t, basis.s, tuple(new))


def basis_rank(basis: CompanionBasis) -> int:
    """Rank of the coordinate vectors over the rationals."""
    rows = [list(v) for v in basis.vectors]
    rank = 0
    cols = basis.dim
    for c in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        lead = rows[rank][c]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / lead
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def lift_basis(basis: CompanionBasis) -> CompanionBasis:
    """Append fresh radical generators to dependent vectors until independent.

    Only positive semi-definite grams are accepted.  Each vector that lies in
    the span of its predecessors receives its own new isotropic coordinate,
    which leaves the gram matrix unchanged.
    """
    if inertia(gram(basis)).n_minus:
        raise ValueError("gram matrix is not positive semi-definite")
    dependent: list[int] = []
    rows: list[list[Fraction]] = []
    for idx, v in enumerate(basis.vectors):
        cand = rows + [list(v)]
        rank_before = len(rows)
        probe = CompanionBasis(basis.t, basis.s, tuple(tuple(r) for r in cand))
        if basis_rank(probe) == rank_before + 1:
            rows.append(list(v))
        else:
            dependent.append(idx)
    if not dependent:
        return basis
    extra = len(dependent)
    t, s_old, s_new = basis.t, basis.s, basis.s + extra
    out = []
    for idx, v in enumerate(basis.vectors):
        e_part = list(v[:t])
        d_part = list(v[t:t + s_old]) + [Fraction(0)] * extra
        dual_part = list(v[t + s_old:]) + [Fraction(0)] * extra
        if idx in dependent:
            d_part[s_old + dependent.index(idx)] = Fraction(1)
        out.append(tuple(e_part + d_part + dual_part))
    return CompanionBasis(t, s_new, tuple(out))
