"""Command-line front end.

Every verb reads files or named fixtures, writes deterministic JSON (or a
plain-text table with --format text) to stdout, and exits with:
0 success or certified, 1 usage or input error, 2 property violation found,
3 inconclusive (member cap hit).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

from . import fixtures as fx
from . import formats
from .companion import (Companion, CompanionBasis, admissibility_violations,
                        compatibility_violations, enumerate_fully_compatible, gram,
                        gram_companion, inertia, is_admissible, is_companion,
                        is_fully_compatible, is_k_compatible, lift_basis,
                        mutate_companion)
from .mutclass import (CapExceeded, certify_symmetric_twin, enumerate_class,
                       is_mutation_finite)
from .quiver import Quiver, mutate_sequence
from .surface import (SurfaceSpec, build_triangulation, flip_sequence,
                      quiver_from_triangulation, naive_companion_basis,
                      admissible_companion_basis)
from .weyl import verify_relations

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_INCONCLUSIVE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse default exit code is 2; we use 1
        raise UsageError(message)


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}")


def _load_quiver(args) -> Quiver:
    if getattr(args, "fixture", None):
        try:
            return fx.fixture_quiver(args.fixture)
        except KeyError as exc:
            raise UsageError(str(exc))
    if getattr(args, "quiver", None):
        return formats.parse_qvr(_read(args.quiver))
    raise UsageError("provide --quiver FILE or --fixture NAME")


def _load_companion(args) -> Companion:
    if getattr(args, "companion", None):
        return formats.parse_qcc(_read(args.companion))
    raise UsageError("provide --companion FILE")


def _load_basis(path: str) -> CompanionBasis:
    import json

    try:
        obj = json.loads(_read(path))
    except ValueError as exc:
        raise UsageError(f"bad JSON in {path}: {exc}")
    return formats.basis_from_json(obj)


def _parse_seq(text: str, n: int) -> list[int]:
    out = []
    for part in text.replace(",", " ").split():
        try:
            k = int(part)
        except ValueError:
            raise UsageError(f"bad vertex index {part!r}")
        if not 1 <= k <= n:
            raise UsageError(f"vertex {k} out of range 1..{n}")
        out.append(k - 1)
    return out


def _emit(text: str) -> None:
    sys.stdout.write(text)


# ---------------------------------------------------------------------------
# verbs


def cmd_mutate(args) -> int:
    q = _load_quiver(args)
    seq = []
    if args.at is not None:
        seq = _parse_seq(str(args.at), q.n)
    if args.seq:
        seq += _parse_seq(args.seq, q.n)
    if not seq:
        raise UsageError("provide --at K or --seq K1,K2,...")
    out = mutate_sequence(q, seq)
    if args.format == "json":
        _emit(formats.dump_json(formats.quiver_to_json(out)))
    else:
        _emit(formats.serialize_qvr(out))
    return EXIT_OK


def cmd_class(args) -> int:
    q = _load_quiver(args)
    try:
        report = enumerate_class(q, member_cap=args.cap)
    except CapExceeded as exc:
        _emit(formats.dump_json({"inconclusive": str(exc)}))
        return EXIT_INCONCLUSIVE
    if args.format == "text":
        lines = [f"finite: {report.finite}", f"members: {len(report.members)}"]
        if report.witness is not None:
            lines.append("witness: " + " ".join(str(k + 1) for k in report.witness))
        _emit("\n".join(lines) + "\n")
    else:
        _emit(formats.dump_json(formats.class_report_to_json(report)))
    return EXIT_OK


def cmd_finite(args) -> int:
    q = _load_quiver(args)
    try:
        finite, witness = is_mutation_finite(q, member_cap=args.cap)
    except CapExceeded as exc:
        _emit(formats.dump_json({"inconclusive": str(exc)}))
        return EXIT_INCONCLUSIVE
    out = {"finite": finite}
    if witness is not None:
        out["witness"] = [k + 1 for k in witness]
    _emit(formats.dump_json(out))
    return EXIT_OK


def cmd_companion_check(args) -> int:
    q = _load_quiver(args)
    a = _load_companion(args)
    companion = is_companion(a, q)
    out = {"companion": companion}
    failed = not companion
    if companion:
        out["fully_compatible"] = is_fully_compatible(a, q)
        out["admissible"] = is_admissible(a, q)
        out["inertia"] = list(inertia(a).as_tuple())
        if args.at is not None:
            k = _parse_seq(str(args.at), q.n)[0]
            out["k_compatible"] = is_k_compatible(a, q, k)
            if args.require == "k-compatible" and not out["k_compatible"]:
                failed = True
        if args.require == "fully-compatible" and not out["fully_compatible"]:
            out["violations"] = [[i + 1, j + 1, k + 1]
                                 for i, j, k in compatibility_violations(a, q)]
            failed = True
        if args.require == "admissible" and not out["admissible"]:
            out["failing_cycles"] = [
                {"vertices": [v + 1 for v in c.vertices], "oriented": c.oriented,
                 "cyclic_product": c.cyclic_product}
                for c in admissibility_violations(a, q)]
            failed = True
    _emit(formats.dump_json(out))
    return EXIT_VIOLATION if failed else EXIT_OK


def cmd_companion_mutate(args) -> int:
    q = _load_quiver(args)
    a = _load_companion(args)
    for k in _parse_seq(str(args.at), q.n):
        out = mutate_companion(a, q, k)
        q = mutate_sequence(q, [k])
        a = out
    _emit(formats.serialize_qcc(a))
    return EXIT_OK


def cmd_companion_search(args) -> int:
    q = _load_quiver(args)
    sols = enumerate_fully_compatible(q, psd_only=args.psd, jobs=args.jobs)
    out = {
        "count": len(sols),
        "companions": [formats.serialize_qcc(a) for a in sols],
    }
    _emit(formats.dump_json(out))
    return EXIT_OK


def _load_triangulation(args):
    if getattr(args, "fixture", None):
        try:
            tri = fx.fixture_triangulation(args.fixture)
        except KeyError as exc:
            raise UsageError(str(exc))
    elif getattr(args, "spec", None):
        import json

        try:
            spec = formats.surface_spec_from_json(json.loads(args.spec))
        except (ValueError, KeyError) as exc:
            raise UsageError(f"bad surface spec: {exc}")
        tri = build_triangulation(spec)
    else:
        raise UsageError("provide --spec JSON or --fixture NAME")
    if args.flips:
        tri = flip_sequence(tri, _parse_seq(args.flips, tri.num_arcs))
    return tri


def cmd_surface_quiver(args) -> int:
    tri = _load_triangulation(args)
    q = quiver_from_triangulation(tri)
    if args.format == "json":
        _emit(formats.dump_json(formats.quiver_to_json(q)))
    else:
        _emit(formats.serialize_qvr(q))
    return EXIT_OK


def cmd_surface_basis(args) -> int:
    tri = _load_triangulation(args)
    basis = (naive_companion_basis(tri) if args.construction == "naive"
             else admissible_companion_basis(tri))
    if args.lift:
        basis = lift_basis(basis)
    _emit(formats.dump_json(formats.basis_to_json(basis)))
    return EXIT_OK


def cmd_twin_certify(args) -> int:
    if args.fixture and fx.get_fixture(args.fixture).kind == "surface":
        tri = fx.fixture_triangulation(args.fixture)
        q = quiver_from_triangulation(tri)
        a = gram_companion(admissible_companion_basis(tri))
    else:
        q = _load_quiver(args)
        a = _load_companion(args)
    try:
        report = certify_symmetric_twin(q, a, require_admissible=args.admissible,
                                        member_cap=args.cap)
    except CapExceeded as exc:
        _emit(formats.dump_json({"inconclusive": str(exc)}))
        return EXIT_INCONCLUSIVE
    _emit(formats.dump_json(formats.class_report_to_json(report)))
    return EXIT_OK if report.certified else EXIT_VIOLATION


def cmd_weyl_verify(args) -> int:
    if args.fixture:
        kind = fx.get_fixture(args.fixture).kind
        if kind == "surface":
            tri = fx.fixture_triangulation(args.fixture)
            q = quiver_from_triangulation(tri)
            basis = lift_basis(admissible_companion_basis(tri))
        elif args.fixture == "appendix-rep":
            q = fx.appendix_quiver()
            basis = fx.appendix_basis()
        else:
            raise UsageError(f"fixture {args.fixture!r} has no associated basis")
    else:
        q = _load_quiver(args)
        if not args.basis:
            raise UsageError("provide --basis FILE")
        basis = _load_basis(args.basis)
    report = verify_relations(q, basis)
    _emit(formats.dump_json(formats.relation_report_to_json(report)))
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_fixtures(args) -> int:
    if not args.name:
        listing = [{"name": f.name, "kind": f.kind, "provenance": f.provenance}
                   for f in (fx.get_fixture(n) for n in fx.fixture_names())]
        _emit(formats.dump_json({"fixtures": listing}))
        return EXIT_OK
    try:
        fname, blob = fx.fixture_bytes(args.name)
    except KeyError as exc:
        raise UsageError(str(exc))
    if args.out:
        os.makedirs(args.out, exist_ok=True)
        path = os.path.join(args.out, fname)
        with open(path, "wb") as fh:
            fh.write(blob)
        _emit(path + "\n")
    else:
        sys.stdout.buffer.write(blob)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    p = _Parser(prog="qc", description="Exact quiver mutation and quasi-Cartan companion toolkit")
    sub = p.add_subparsers(dest="verb", required=True)

    def add(name, fn, **kw):
        sp = sub.add_parser(name, **kw)
        sp.set_defaults(fn=fn)
        return sp

    def quiver_args(sp):
        sp.add_argument("--quiver", help="QVR v1 file")
        sp.add_argument("--fixture", help="built-in fixture name")

    sp = add("mutate", cmd_mutate, help="mutate a quiver at a vertex or along a sequence")
    quiver_args(sp)
    sp.add_argument("--at", help="1-based vertex")
    sp.add_argument("--seq", help="comma-separated 1-based vertices")
    sp.add_argument("--format", choices=("qvr", "json"), default="qvr")

    sp = add("class", cmd_class, help="enumerate the mutation class up to isomorphism")
    quiver_args(sp)
    sp.add_argument("--cap", type=int, default=100000)
    sp.add_argument("--format", choices=("json", "text"), default="json")

    sp = add("finite", cmd_finite, help="decide mutation-finiteness")
    quiver_args(sp)
    sp.add_argument("--cap", type=int, default=100000)

    sp = add("companion-check", cmd_companion_check,
             help="check companion, compatibility, admissibility")
    quiver_args(sp)
    sp.add_argument("--companion", help="QCC v1 file")
    sp.add_argument("--at", help="also check k-compatibility at this 1-based vertex")
    sp.add_argument("--require", choices=("companion", "fully-compatible", "admissible",
                                          "k-compatible"), default="companion")

    sp = add("companion-mutate", cmd_companion_mutate, help="mutate a companion alongside its quiver")
    quiver_args(sp)
    sp.add_argument("--companion", help="QCC v1 file")
    sp.add_argument("--at", required=True, help="1-based vertex (or comma-separated sequence)")

    sp = add("companion-search", cmd_companion_search,
             help="enumerate fully compatible companions up to sign equivalence")
    quiver_args(sp)
    sp.add_argument("--psd", action="store_true", help="keep only positive semi-definite ones")
    sp.add_argument("--jobs", type=int, default=None)

    sp = add("surface-quiver", cmd_surface_quiver, help="adjacency quiver of a triangulated surface")
    sp.add_argument("--spec", help='surface spec JSON, e.g. {"g":0,"k":[5]}')
    sp.add_argument("--fixture", help="surface fixture name")
    sp.add_argument("--flips", help="comma-separated 1-based arcs to flip first")
    sp.add_argument("--format", choices=("qvr", "json"), default="qvr")

    sp = add("surface-basis", cmd_surface_basis, help="companion basis of a triangulation")
    sp.add_argument("--spec", help="surface spec JSON")
    sp.add_argument("--fixture", help="surface fixture name")
    sp.add_argument("--flips", help="comma-separated 1-based arcs to flip first")
    sp.add_argument("--construction", choices=("naive", "admissible"), default="admissible")
    sp.add_argument("--lift", action="store_true", help="append radical generators until independent")

    sp = add("twin-certify", cmd_twin_certify,
             help="certify a companion across the whole mutation class")
    quiver_args(sp)
    sp.add_argument("--companion", help="QCC v1 file")
    sp.add_argument("--admissible", action="store_true", help="also require admissibility at every state")
    sp.add_argument("--cap", type=int, default=100000)

    sp = add("weyl-verify", cmd_weyl_verify, help="verify reflection relations for a companion basis")
    quiver_args(sp)
    sp.add_argument("--basis", help="companion basis JSON file")

    sp = add("fixtures", cmd_fixtures, help="list fixtures or materialise one")
    sp.add_argument("name", nargs="?")
    sp.add_argument("--out", help="write the fixture into this directory")

    return p


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "jobs", None) is None and hasattr(args, "jobs"):
            args.jobs = int(os.environ.get("QC_JOBS", "1"))
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except formats.FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
