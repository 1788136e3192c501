"""Shared test helpers: independent oracles and randomised generators.

The oracles here deliberately take different routes from the library code
they check: chordless cycles by subset scanning, inertia by Sturm counts on
the characteristic polynomial, class sizes by labelled search plus
brute-force isomorphism.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from quasicartan.quiver import Quiver, mutate_quiver
from quasicartan.surface import SurfaceSpec, Triangulation, build_triangulation, flip


# ---------------------------------------------------------------------------
# chordless-cycle oracle: a subset is a chordless cycle iff its induced
# underlying graph is connected and 2-regular


def subset_chordless_cycles(q: Quiver) -> set[tuple[tuple[int, ...], bool]]:
    out = set()
    for size in range(3, q.n + 1):
        for sub in itertools.combinations(range(q.n), size):
            deg = {v: [w for w in sub if w != v and q.b[v][w] != 0] for v in sub}
            if any(len(d) != 2 for d in deg.values()):
                continue
            # walk the cycle; connectivity fails iff we return early
            order = [sub[0], deg[sub[0]][0]]
            while True:
                a, b = order[-2], order[-1]
                nxt = deg[b][0] if deg[b][0] != a else deg[b][1]
                if nxt == order[0]:
                    break
                order.append(nxt)
            if len(order) != size:
                continue
            signs = [q.b[order[i]][order[(i + 1) % size]] > 0 for i in range(size)]
            oriented = all(signs) or not any(signs)
            # lex-minimal rotation/reflection representative
            best = None
            for seq in (order, order[::-1]):
                for r in range(size):
                    rot = tuple(seq[(r + i) % size] for i in range(size))
                    if best is None or rot < best:
                        best = rot
            out.add((best, oriented))
    return out


# ---------------------------------------------------------------------------
# inertia oracle: characteristic polynomial + Sturm counts


def charpoly(m) -> list[Fraction]:
    """Coefficients [c_0..c_n] of det(xI - M), by Faddeev-LeVerrier."""
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    coeffs = [Fraction(1)]  # leading
    work = [row[:] for row in a]
    for k in range(1, n + 1):
        c = -sum(work[i][i] for i in range(n)) / k
        coeffs.append(c)
        if k == n:
            break
        for i in range(n):
            work[i][i] += c
        work = [[sum(a[i][t] * work[t][j] for t in range(n)) for j in range(n)]
                for i in range(n)]
    return list(reversed(coeffs))  # c_0 + c_1 x + ... + x^n


def _poly_deg(p):
    d = len(p) - 1
    while d > 0 and p[d] == 0:
        d -= 1
    return d


def _poly_trim(p):
    return p[:_poly_deg(p) + 1]


def _poly_divmod(a, b):
    a = list(_poly_trim(a))
    db, lb = _poly_deg(b), b[_poly_deg(b)]
    quot = [Fraction(0)] * max(1, len(a) - db)
    while _poly_deg(a) >= db and any(x != 0 for x in a):
        da, la = _poly_deg(a), a[_poly_deg(a)]
        if la == 0:
            break
        shift, f = da - db, la / lb
        quot[shift] += f
        for i in range(db + 1):
            a[shift + i] -= f * b[i]
    return _poly_trim(quot), _poly_trim(a)


def _poly_div(a, b):
    return _poly_divmod(a, b)[1]


def _poly_gcd(a, b):
    a, b = _poly_trim(a), _poly_trim(b)
    while any(x != 0 for x in b):
        a, b = b, _poly_div(a, b)
        b = _poly_trim(b)
        if all(x == 0 for x in b):
            break
    lead = a[_poly_deg(a)]
    return [x / lead for x in _poly_trim(a)]


def _poly_derivative(p):
    return _poly_trim([i * p[i] for i in range(1, len(p))]) if len(p) > 1 else [Fraction(0)]


def _sturm_positive_negative(p) -> tuple[int, int]:
    """Distinct roots of a squarefree polynomial in (0, inf) and (-inf, 0)."""
    chain = [_poly_trim(p), _poly_derivative(p)]
    while _poly_deg(chain[-1]) > 0 or chain[-1][0] != 0:
        rem = _poly_div(chain[-2], chain[-1])
        if all(x == 0 for x in rem):
            break
        chain.append([-x for x in rem])
        if _poly_deg(chain[-1]) == 0:
            break

    def sign_near_zero(poly, side):  # sign of poly just right (+1) or left (-1) of 0
        for i, c in enumerate(poly):
            if c != 0:
                s = 1 if c > 0 else -1
                return s if (side > 0 or i % 2 == 0) else -s
        return 0

    def sign_at(poly, where):  # +1 for +inf, -1 for -inf
        d = _poly_deg(poly)
        lead = poly[d]
        s = 1 if lead > 0 else -1
        return s if (where > 0 or d % 2 == 0) else -s

    def variations(signs):
        signs = [s for s in signs if s != 0]
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)

    v0plus = variations([sign_near_zero(c, +1) for c in chain])
    v0minus = variations([sign_near_zero(c, -1) for c in chain])
    vpos = variations([sign_at(c, +1) for c in chain])
    vneg = variations([sign_at(c, -1) for c in chain])
    return v0plus - vpos, vneg - v0minus


def sturm_inertia(m) -> tuple[int, int, int]:
    p = charpoly(m)
    n_zero = 0
    while p[0] == 0:
        n_zero += 1
        p = p[1:]
    # peel squarefree layers: p/gcd(p,p') carries the distinct roots, the gcd
    # keeps every root with multiplicity one lower, so summing layer counts
    # totals multiplicities
    n_plus = n_minus = 0
    while _poly_deg(p) > 0:
        g = _poly_gcd(p, _poly_derivative(p))
        squarefree, rem = _poly_divmod(p, g)
        assert all(x == 0 for x in rem)
        pos, neg = _sturm_positive_negative(squarefree)
        n_plus += pos
        n_minus += neg
        p = g
    return (n_plus, n_minus, n_zero)


# ---------------------------------------------------------------------------
# labelled class enumeration + brute-force isomorphism quotient


def naive_class_members(q: Quiver, cap: int = 50000) -> list[Quiver]:
    seen = {q.b}
    frontier = [q]
    while frontier:
        nxt = []
        for cur in frontier:
            for k in range(cur.n):
                m = mutate_quiver(cur, k)
                if m.b not in seen:
                    if len(seen) > cap:
                        raise RuntimeError("naive enumeration cap hit")
                    seen.add(m.b)
                    nxt.append(m)
        frontier = nxt
    reps: list[Quiver] = []
    for b in sorted(seen):
        cand = Quiver(b)
        if not any(_brute_isomorphic(cand, r) for r in reps):
            reps.append(cand)
    return reps


def _brute_isomorphic(q1: Quiver, q2: Quiver) -> bool:
    if q1.n != q2.n:
        return False
    return any(q1.relabel(p).b == q2.b for p in itertools.permutations(range(q1.n)))


# ---------------------------------------------------------------------------
# randomised surfaces


RANDOM_SPEC_POOL = [
    SurfaceSpec(0, (5,)), SurfaceSpec(0, (6,)), SurfaceSpec(0, (7,)), SurfaceSpec(0, (8,)),
    SurfaceSpec(0, (2, 1)), SurfaceSpec(0, (2, 2)), SurfaceSpec(0, (3, 2)),
    SurfaceSpec(0, (1, 1, 1)), SurfaceSpec(0, (2, 1, 1)),
    SurfaceSpec(1, (1,)), SurfaceSpec(1, (2,)), SurfaceSpec(1, (3,)), SurfaceSpec(1, (1, 1)),
]


def random_triangulation(rng: random.Random, max_flips: int = 8) -> tuple[SurfaceSpec, Triangulation]:
    spec = rng.choice(RANDOM_SPEC_POOL)
    tri = build_triangulation(spec)
    for _ in range(rng.randrange(max_flips + 1)):
        tri = flip(tri, rng.randrange(tri.num_arcs))
    return spec, tri
