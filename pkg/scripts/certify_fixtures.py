#!/usr/bin/env python3
"""Run the full certification pipeline across the built-in fixtures.

For every surface fixture: enumerate the mutation class, certify the
admissible companion as a symmetric twin (checking admissibility and the
expected inertia at every state), and verify all reflection relations before
and after every single transported mutation.  Also reports the sign-search
results for the exceptional quivers, where no reference values exist.
"""

import sys
import time

from quasicartan import fixtures as fx
from quasicartan.companion import (enumerate_fully_compatible, gram_companion,
                                   lift_basis)
from quasicartan.mutclass import certify_symmetric_twin, enumerate_class
from quasicartan.quiver import mutate_quiver
from quasicartan.companion import reflect_basis
from quasicartan.surface import (admissible_companion_basis, build_triangulation,
                                 quiver_from_triangulation)
from quasicartan.weyl import find_relation_instances, verify_relations


def surface_row(name, spec):
    tri = build_triangulation(spec)
    q = quiver_from_triangulation(tri)
    basis = admissible_companion_basis(tri)
    a = gram_companion(basis)

    t0 = time.perf_counter()
    cls = enumerate_class(q)
    twin = certify_symmetric_twin(q, a, require_admissible=True)
    want = (spec.arc_count - spec.radical_rank, 0, spec.radical_rank)
    inertia_ok = all(c.inertia.as_tuple() == want for c in twin.certificates)

    lifted = lift_basis(basis)
    relations_ok = verify_relations(q, lifted).ok
    for k in range(q.n):
        relations_ok &= verify_relations(mutate_quiver(q, k),
                                         reflect_basis(lifted, q, k)).ok
    elapsed = time.perf_counter() - t0
    n_inst = len(find_relation_instances(q))
    print(f"{name:14s} n={q.n} class={len(cls.members):3d} "
          f"twin={'ok' if twin.certified else 'VIOLATION'} "
          f"inertia={'ok' if inertia_ok else 'BAD'} "
          f"relations={'ok' if relations_ok else 'FAIL'} ({n_inst} instances) "
          f"[{elapsed:.2f}s]")
    return twin.certified and inertia_ok and relations_ok


def main():
    ok = True
    print("-- surface fixtures --")
    for name, spec in fx.SURFACE_SPECS.items():
        ok &= surface_row(name, spec)

    print("-- exceptional quivers --")
    for name in ("x6", "x7"):
        q = fx.fixture_quiver(name)
        cls = enumerate_class(q)
        found = enumerate_fully_compatible(q)
        psd = enumerate_fully_compatible(q, psd_only=True)
        print(f"{name:14s} n={q.n} class={len(cls.members):3d} "
              f"fully-compatible classes={len(found)} (PSD: {len(psd)})")

    q = fx.twice_punctured_torus_quiver()
    found = enumerate_fully_compatible(q)
    print(f"{'fig6':14s} n={q.n} fully-compatible classes={len(found)} (expected 0)")
    ok &= not found

    print("PASS" if ok else "FAIL")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
