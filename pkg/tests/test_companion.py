import itertools
import random

import pytest

from conftest import random_triangulation, sturm_inertia
from quasicartan import fixtures as fx
from quasicartan.companion import (Companion, CompanionBasis, all_minus_companion,
                                   basis_rank, enumerate_fully_compatible, flip_sign,
                                   gram, gram_companion, inertia, is_admissible,
                                   is_companion, is_fully_compatible, is_k_compatible,
                                   is_positive_semidefinite, lift_basis, make_vector,
                                   mutate_companion, reflect_basis, sign_equivalent,
                                   sign_normal_form)
from quasicartan.quiver import Quiver, mutate_quiver, quiver_from_arrows
from quasicartan.surface import (admissible_companion_basis, naive_companion_basis,
                                 quiver_from_triangulation)


def test_a3_cartan_is_companion():
    q = quiver_from_arrows(3, [(0, 1, 1), (1, 2, 1)])
    a = Companion(((2, -1, 0), (-1, 2, -1), (0, -1, 2)))
    assert is_companion(a, q)


def test_fig3_mutation_is_not_companion_of_mutated_quiver():
    q, a = fx.fig3_quiver(), fx.fig3_companion()
    a2 = mutate_companion(a, q, 1)
    assert a2.a == fx.fig3_mutated_companion().a
    q2 = mutate_quiver(q, 1)
    assert not is_companion(a2, q2)
    # the mismatch is exactly at entry (1,3): |a| = 2 vs no arrow
    assert abs(a2.a[0][2]) == 2 and q2.b[0][2] == 0


def test_bad_diagonal_rejected_at_construction():
    with pytest.raises(ValueError):
        Companion(((1, 0), (0, 2)))


def test_mutate_companion_requires_companion():
    q = fx.fig3_quiver()
    bad = Companion(((2, -1, 0), (-1, 2, -1), (0, -1, 2)))
    with pytest.raises(ValueError):
        mutate_companion(bad, q, 0)


def test_zero_quiver_mutation_fixes_companion():
    q = Quiver(((0, 0), (0, 0)))
    a = Companion(((2, 0), (0, 2)))
    assert mutate_companion(a, q, 0).a == a.a


# ---------------------------------------------------------------------------
# geometric realisation


def test_reflect_matches_printed_counterexample():
    q, basis = fx.fig9_quiver(), fx.fig9_basis()
    out = reflect_basis(basis, q, fx.FIG9_MARKED_VERTEX)
    coords = [tuple(int(c) for c in v) for v in out.vectors]
    assert coords == [
        (1, 0, -1, 0),   # e1 - e3
        (0, 0, -1, 1),   # e4 - e3
        (1, 1, 0, 0),    # e1 + e2
        (0, 1, 1, 0),    # e2 + e3
        (0, 1, 0, 1),    # e2 + e4
    ]


def test_reflect_with_no_incoming_arrows_only_negates():
    q = quiver_from_arrows(2, [(0, 1, 1)])  # vertex 0 has no incoming arrow
    basis = CompanionBasis(3, 0, (make_vector(3, 0, {"e1": 1, "e2": 1}),
                                  make_vector(3, 0, {"e2": 1, "e3": 1})))
    out = reflect_basis(basis, q, 0)
    assert out.vectors[0] == tuple(-x for x in basis.vectors[0])
    assert out.vectors[1] == basis.vectors[1]


def test_reflect_equals_matrix_mutation_randomised():
    rng = random.Random(99)
    done = 0
    while done < 100:
        _, tri = random_triangulation(rng)
        q = quiver_from_triangulation(tri)
        basis = admissible_companion_basis(tri) if rng.random() < 0.5 else naive_companion_basis(tri)
        a = gram_companion(basis)
        if not is_companion(a, q):
            continue
        k = rng.randrange(q.n)
        assert gram(reflect_basis(basis, q, k)) == mutate_companion(a, q, k).a
        done += 1


def test_gram_examples():
    b = CompanionBasis(3, 0, (make_vector(3, 0, {"e1": 1, "e2": 1}),
                              make_vector(3, 0, {"e2": 1, "e3": 1})))
    assert gram(b) == ((2, 1), (1, 2))
    b2 = CompanionBasis(2, 1, (make_vector(2, 1, {"e1": 1, "e2": -1}),
                               make_vector(2, 1, {"e1": 1, "e2": -1, "d1": 1})))
    assert gram(b2) == ((2, 2), (2, 2))


# ---------------------------------------------------------------------------
# inertia


def test_inertia_examples():
    assert inertia(((2, 0), (0, 2))).as_tuple() == (2, 0, 0)
    assert inertia(((2, -2), (-2, 2))).as_tuple() == (1, 0, 1)
    assert inertia(gram(fx.fig15_basis())).as_tuple() == (2, 0, 2)


def test_inertia_rejects_non_symmetric():
    with pytest.raises(ValueError):
        inertia(((0, 1), (-1, 0)))


def test_inertia_matches_sturm_oracle():
    rng = random.Random(21)
    for _ in range(150):
        n = rng.randrange(1, 7)
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = rng.randrange(-4, 5)
            for j in range(i + 1, n):
                m[i][j] = m[j][i] = rng.randrange(-4, 5)
        assert inertia(m).as_tuple() == sturm_inertia(m)


def test_inertia_invariant_under_companion_mutation():
    rng = random.Random(3)
    for _ in range(50):
        _, tri = random_triangulation(rng)
        q = quiver_from_triangulation(tri)
        a = gram_companion(admissible_companion_basis(tri))
        k = rng.randrange(q.n)
        assert inertia(mutate_companion(a, q, k)).as_tuple() == inertia(a).as_tuple()


# ---------------------------------------------------------------------------
# compatibility


def test_oriented_triangle_all_plus_fully_compatible():
    q = fx.fig3_quiver()
    a = Companion(((2, 1, 1), (1, 2, 1), (1, 1, 2)))
    assert is_fully_compatible(a, q)


def test_acyclic_all_minus_fully_compatible():
    q = quiver_from_arrows(3, [(0, 1, 1), (1, 2, 1)])
    assert is_fully_compatible(all_minus_companion(q), q)


def test_fig9_right_triangle_not_compatible():
    q, basis = fx.fig9_quiver(), fx.fig9_basis()
    a = gram_companion(basis)
    assert is_fully_compatible(a, q)
    k = fx.FIG9_MARKED_VERTEX
    a2, q2 = mutate_companion(a, q, k), mutate_quiver(q, k)
    assert is_companion(a2, q2)
    for v in (1, 3, 4):  # the oriented triangle carrying e4-e3, e2+e3, e2+e4
        assert not is_k_compatible(a2, q2, v)


def test_k_compatibility_lemma_preserved():
    # k-compatible mutates to k-compatible companion of the mutated quiver
    rng = random.Random(41)
    checked = 0
    while checked < 200:
        _, tri = random_triangulation(rng)
        q = quiver_from_triangulation(tri)
        basis = admissible_companion_basis(tri) if rng.random() < 0.5 else naive_companion_basis(tri)
        a = gram_companion(basis)
        if not is_companion(a, q):
            continue
        k = rng.randrange(q.n)
        if not is_k_compatible(a, q, k):
            continue
        a2, q2 = mutate_companion(a, q, k), mutate_quiver(q, k)
        assert is_companion(a2, q2)
        assert is_k_compatible(a2, q2, k)
        checked += 1


# ---------------------------------------------------------------------------
# admissibility


def test_fig15_admissible():
    assert is_admissible(gram_companion(fx.fig15_basis()), fx.fig15_quiver())


def test_tree_vacuously_admissible():
    q = quiver_from_arrows(4, [(0, 1, 1), (2, 1, 1), (1, 3, 1)])
    assert is_admissible(all_minus_companion(q), q)


def test_all_minus_oriented_triangle_not_admissible():
    assert not is_admissible(fx.fig3_companion(), fx.fig3_quiver())


def test_admissible_implies_fully_compatible():
    rng = random.Random(7)
    for _ in range(100):
        _, tri = random_triangulation(rng)
        q = quiver_from_triangulation(tri)
        a = gram_companion(admissible_companion_basis(tri))
        assert is_admissible(a, q)
        assert is_fully_compatible(a, q)


def test_admissibility_preserved_by_flips():
    rng = random.Random(17)
    for _ in range(100):
        _, tri = random_triangulation(rng)
        q = quiver_from_triangulation(tri)
        a = gram_companion(admissible_companion_basis(tri))
        v = rng.randrange(q.n)
        assert is_admissible(flip_sign(a, v), q)


# ---------------------------------------------------------------------------
# sign changes


def test_flip_sign_involution():
    a = fx.fig3_companion()
    assert flip_sign(flip_sign(a, 1), 1).a == a.a


def test_sign_equivalent_a3_variants():
    c1 = Companion(((2, -1, 0), (-1, 2, -1), (0, -1, 2)))
    c2 = Companion(((2, 1, 0), (1, 2, -1), (0, -1, 2)))
    assert sign_equivalent(c1, c2)
    assert sign_normal_form(c1).a == sign_normal_form(c2).a
    c3 = Companion(((2, 1, 1), (1, 2, 1), (1, 1, 2)))
    c4 = Companion(((2, -1, 1), (-1, 2, 1), (1, 1, 2)))
    # an odd number of sign changes around a triangle is not a vertex flip
    assert not sign_equivalent(c3, c4)


def test_sign_equivalence_is_exact_orbit():
    rng = random.Random(5)
    q = fx.fig9_quiver()
    a = gram_companion(fx.fig9_basis())
    for _ in range(50):
        flips = [v for v in range(q.n) if rng.random() < 0.5]
        b = a
        for v in flips:
            b = flip_sign(b, v)
        assert sign_equivalent(a, b)


# ---------------------------------------------------------------------------
# exhaustive search


def test_triangle_sign_search():
    q = fx.fig3_quiver()
    raw = [s for s in itertools.product((1, -1), repeat=3)
           if s[0] * s[1] * s[2] > 0]
    assert len(raw) == 4  # of the 8 assignments, those with positive product
    assert len(enumerate_fully_compatible(q)) == 1


def test_path_search_contains_all_minus():
    q = quiver_from_arrows(3, [(0, 1, 1), (1, 2, 1)])
    sols = enumerate_fully_compatible(q)
    target = sign_normal_form(all_minus_companion(q)).a
    assert any(s.a == target for s in sols)


def test_twice_punctured_torus_has_no_fully_compatible_companion():
    assert enumerate_fully_compatible(fx.twice_punctured_torus_quiver()) == ()


def test_search_agrees_with_raw_enumeration():
    rng = random.Random(23)
    for _ in range(20):
        _, tri = random_triangulation(rng, max_flips=4)
        q = quiver_from_triangulation(tri)
        edges = list(q.edges())
        if len(edges) > 10:
            continue
        raw = set()
        for signs in itertools.product((1, -1), repeat=len(edges)):
            from quasicartan.companion import companion_from_signs
            a = companion_from_signs(q, dict(zip(edges, signs)))
            if is_fully_compatible(a, q):
                raw.add(sign_normal_form(a).a)
        assert raw == {s.a for s in enumerate_fully_compatible(q)}


def test_search_jobs_split_matches_serial():
    q = fx.fixture_quiver("sphere-1-1-1")
    assert enumerate_fully_compatible(q, jobs=1) == enumerate_fully_compatible(q, jobs=3)


def test_search_edge_cap():
    n = 9
    arrows = [(i, j, 1) for i in range(n) for j in range(i + 1, n)]
    q = quiver_from_arrows(n, arrows)
    with pytest.raises(ValueError):
        enumerate_fully_compatible(q)


# ---------------------------------------------------------------------------
# lifting


def test_lift_independent_basis_unchanged():
    b = fx.appendix_basis()
    assert lift_basis(b) is b or lift_basis(b).vectors == b.vectors


def test_lift_fig15_adds_two_radical_directions():
    b = fx.fig15_basis()
    assert basis_rank(b) == 2
    lifted = lift_basis(b)
    assert basis_rank(lifted) == 4
    assert lifted.s == 2
    assert gram(lifted) == gram(b)


def test_lift_rejects_indefinite():
    b = CompanionBasis(0, 1, ((1, 1), (1, -1)))  # d1 + d*1 and d1 - d*1
    assert inertia(gram(b)).n_minus == 1
    with pytest.raises(ValueError):
        lift_basis(b)


def test_lift_gram_always_preserved():
    rng = random.Random(31)
    for _ in range(50):
        _, tri = random_triangulation(rng)
        b = admissible_companion_basis(tri)
        assert gram(lift_basis(b)) == gram(b)
