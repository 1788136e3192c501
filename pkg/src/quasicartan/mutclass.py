"""Exchange-graph exploration: class enumeration, finiteness, twin certification."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .companion import (Companion, Inertia, inertia, is_admissible, is_companion,
                        mutate_companion, sign_normal_form)
from .quiver import (IntMatrix, Quiver, canonical_form, canonical_perms,
                     mutate_quiver)

DEFAULT_MEMBER_CAP = 100_000


class CapExceeded(RuntimeError):
    """The exploration hit the member cap before resolving; result inconclusive."""


@dataclass(frozen=True)
class StateCertificate:
    member: int
    companion: Companion
    inertia: Inertia
    admissible: bool


@dataclass(frozen=True)
class Violation:
    member: int
    vertex: int
    reason: str
    companion: Companion
    quiver: Quiver


@dataclass(frozen=True)
class MutationClassReport:
    members: tuple[Quiver, ...]
    edges: tuple[tuple[int, int, int], ...]  # (member, vertex, member)
    finite: bool
    witness: Optional[tuple[int, ...]] = None
    certificates: Optional[tuple[StateCertificate, ...]] = None
    violation: Optional[Violation] = None

    @property
    def certified(self) -> bool:
        return self.violation is None


def _bfs_members(q: Quiver, member_cap: int, weight_abort: bool,
                 shuffle: Optional[random.Random] = None
                 ) -> tuple[dict[IntMatrix, Quiver], Optional[tuple[int, ...]]]:
    """Mutation BFS with canonical-form deduplication.

    Returns canonical members keyed by canonical matrix, plus a witness
    mutation sequence (replayable on q) if ``weight_abort`` fired on an arrow
    of weight >= 3.  Weight growth is never an abort criterion at n = 2.
    """
    check_weights = weight_abort and q.n >= 3
    if check_weights and q.max_weight() >= 3:
        return {}, ()
    start = canonical_form(q)
    members: dict[IntMatrix, Quiver] = {start.quiver.b: start.quiver}
    frontier: list[tuple[Quiver, tuple[int, ...]]] = [(q, ())]
    while frontier:
        if shuffle is not None:
            shuffle.shuffle(frontier)
        nxt: list[tuple[Quiver, tuple[int, ...]]] = []
        for cur, path in frontier:
            for k in range(cur.n):
                child = mutate_quiver(cur, k)
                if check_weights and child.max_weight() >= 3:
                    return members, path + (k,)
                key = canonical_form(child).quiver.b
                if key not in members:
                    if len(members) >= member_cap:
                        raise CapExceeded(
                            f"more than {member_cap} members; raise the cap to resolve")
                    members[key] = Quiver(key)
                    nxt.append((child, path + (k,)))
        frontier = nxt
    return members, None


def enumerate_class(q: Quiver, member_cap: int = DEFAULT_MEMBER_CAP,
                    shuffle: Optional[random.Random] = None) -> MutationClassReport:
    """Mutation class of q up to isomorphism.

    Stops with ``finite=False`` and a witness sequence as soon as an arrow of
    weight >= 3 appears (valid for n >= 3); raises :class:`CapExceeded` when
    the cap is hit without resolution.
    """
    if member_cap < 1:
        raise ValueError("member_cap must be positive")
    members, witness = _bfs_members(q, member_cap, weight_abort=True, shuffle=shuffle)
    ordered = sorted(members)
    index = {key: i for i, key in enumerate(ordered)}
    edges: list[tuple[int, int, int]] = []
    if witness is None:
        for key in ordered:
            rep = members[key]
            for k in range(rep.n):
                target = canonical_form(mutate_quiver(rep, k)).quiver.b
                edges.append((index[key], k, index[target]))
    return MutationClassReport(
        members=tuple(members[key] for key in ordered),
        edges=tuple(edges),
        finite=witness is None,
        witness=witness,
    )


def is_mutation_finite(q: Quiver, member_cap: int = DEFAULT_MEMBER_CAP
                       ) -> tuple[bool, Optional[tuple[int, ...]]]:
    """Decide mutation-finiteness; a False comes with a witness sequence.

    A quiver with at least 3 vertices is mutation-infinite iff some mutation
    sequence produces an arrow of weight >= 3.  Searching only quivers with
    all weights <= 2 therefore terminates.  Rank-2 quivers are always finite.
    """
    if q.n < 2:
        return True, None
    if q.n == 2:
        return True, None
    _, witness = _bfs_members(q, member_cap, weight_abort=True)
    return witness is None, witness


# ---------------------------------------------------------------------------
# symmetric-twin certification


def _transported(a: Companion, perm: Sequence[int]) -> Companion:
    n = a.n
    return Companion(tuple(tuple(a.a[perm[i]][perm[j]] for j in range(n)) for i in range(n)))


def _state_key(q: Quiver, a: Companion, sign_quotient: bool) -> tuple[IntMatrix, IntMatrix]:
    """Deduplication key: canonical quiver plus minimal transported companion.

    The companion is transported by every permutation realising the canonical
    matrix (the automorphism coset), then sign-normalised when the quotient by
    simultaneous sign changes is in force, and the minimum is kept so the key
    does not depend on the representative.
    """
    perms = canonical_perms(q)
    canon_b = q.relabel(perms[0]).b
    best: Optional[IntMatrix] = None
    for perm in perms:
        moved = _transported(a, perm)
        if sign_quotient:
            moved = sign_normal_form(moved)
        if best is None or moved.a < best:
            best = moved.a
    return canon_b, best


def certify_symmetric_twin(q: Quiver, a: Companion, require_admissible: bool = False,
                           member_cap: int = DEFAULT_MEMBER_CAP) -> MutationClassReport:
    """Check that a stays a companion (optionally admissible) along every mutation path.

    BFS over (quiver, companion) states; a violation is a successful return
    carrying the offending state and direction, not an exception.  States are
    quotiented by simultaneous sign changes only when the input companion is
    admissible, where that quotient is known to be faithful; otherwise exact
    companions are kept.
    """
    if not is_companion(a, q):
        raise ValueError("matrix is not a quasi-Cartan companion of the quiver")
    finite, witness = is_mutation_finite(q, member_cap)
    if not finite:
        raise ValueError(f"quiver is not mutation-finite (witness {witness})")
    sign_quotient = is_admissible(a, q)

    key0 = _state_key(q, a, sign_quotient)
    index_of: dict[tuple[IntMatrix, IntMatrix], int] = {key0: 0}
    order: list[tuple[IntMatrix, IntMatrix]] = [key0]
    edges: list[tuple[int, int, int]] = []
    frontier: list[tuple[Quiver, Companion, int]] = [(q, a, 0)]
    violation: Optional[Violation] = None
    while frontier and violation is None:
        nxt: list[tuple[Quiver, Companion, int]] = []
        for cur_q, cur_a, ci in frontier:
            for k in range(cur_q.n):
                child_q = mutate_quiver(cur_q, k)
                child_a = mutate_companion(cur_a, cur_q, k)
                if not is_companion(child_a, child_q):
                    violation = Violation(ci, k, "not a companion of the mutated quiver",
                                          child_a, child_q)
                    break
                if require_admissible and not is_admissible(child_a, child_q):
                    violation = Violation(ci, k, "mutated companion is not admissible",
                                          child_a, child_q)
                    break
                key = _state_key(child_q, child_a, sign_quotient)
                if key not in index_of:
                    if len(order) >= member_cap:
                        raise CapExceeded(f"more than {member_cap} twin states")
                    index_of[key] = len(order)
                    order.append(key)
                    nxt.append((child_q, child_a, index_of[key]))
                edges.append((ci, k, index_of[key]))
            if violation is not None:
                break
        frontier = nxt

    ranked = sorted(range(len(order)), key=lambda i: order[i])
    rank_of = {old: new for new, old in enumerate(ranked)}
    members = []
    certs = []
    for new, old in enumerate(ranked):
        canon_b, comp = order[old]
        member_q = Quiver(canon_b)
        comp_c = Companion(comp)
        certs.append(StateCertificate(member=new, companion=comp_c,
                                      inertia=inertia(comp_c),
                                      admissible=is_admissible(comp_c, member_q)))
        members.append(member_q)
    if violation is not None:
        violation = Violation(member=rank_of[violation.member], vertex=violation.vertex,
                              reason=violation.reason, companion=violation.companion,
                              quiver=violation.quiver)
        edges = []
    else:
        edges = sorted((rank_of[i], k, rank_of[j]) for i, k, j in edges)
    return MutationClassReport(members=tuple(members), edges=tuple(edges),
                               finite=True, witness=None,
                               certificates=tuple(certs), violation=violation)
