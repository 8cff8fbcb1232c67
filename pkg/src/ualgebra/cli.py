"""Deterministic command-line front end.

Exit codes: 0 for a computed-true answer or successful construction, 1 for a
computed-false answer (the report carries a witness), 2 for malformed input.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import congruences, digroups, groups, heaps, inner, outer
from .algebras import FiniteAlgebra, emit_algebra, parse_algebras
from .digroups import Digroup
from .envcat import TermTupleMorphism, TupleObject, functor_morphism, functor_object
from .errors import ParseError, UAError, UnknownVerb
from .partitions import parse_partition
from .terms import eval_term, parse_term, term_to_str
from .varieties import REGISTRY, check_identities, parse_varieties

VERBS = (
    "check",
    "congruences",
    "idempotents",
    "decompose",
    "outer",
    "group-sdp",
    "ring-sdp",
    "digroup-sdp",
    "brace",
    "heap",
    "truss",
    "envcat",
)


class Workspace:
    """Lazy `<file>#<name>` reference resolution with per-file caching."""

    def __init__(self):
        self._algebra_files: dict[str, dict[str, FiniteAlgebra]] = {}
        self._variety_files: dict[str, dict] = {}

    def algebra(self, ref: str) -> FiniteAlgebra:
        path, _, name = ref.partition("#")
        if not name:
            raise ParseError(f"reference {ref!r} needs the form <file>#<name>")
        if path not in self._algebra_files:
            self._algebra_files[path] = parse_algebras(Path(path).read_text(), source=path)
        try:
            return self._algebra_files[path][name]
        except KeyError:
            raise ParseError(f"no algebra {name!r} in {path}") from None

    def variety(self, ref: str):
        if "#" not in ref:
            if ref in REGISTRY:
                return REGISTRY[ref]
            raise ParseError(f"unknown variety {ref!r}")
        path, _, name = ref.partition("#")
        if path not in self._variety_files:
            self._variety_files[path] = parse_varieties(Path(path).read_text(), source=path)
        try:
            return self._variety_files[path][name]
        except KeyError:
            raise ParseError(f"no variety {name!r} in {path}") from None


def load_workspace(paths) -> dict[str, object]:
    """Merge algebra and variety files into one namespace; collisions are errors.

    A file is classified by its first non-comment keyword (`algebra` or
    `variety`); every algebra is fully validated during parsing.
    """
    from .errors import DuplicateName

    out: dict[str, object] = {}
    for path in paths:
        text = Path(path).read_text()
        keyword = ""
        for line in text.splitlines():
            stripped = line.strip()
            if stripped and not stripped.startswith("#"):
                keyword = stripped.split()[0]
                break
        if keyword == "variety":
            parsed: dict[str, object] = dict(parse_varieties(text, source=str(path)))
        else:
            parsed = dict(parse_algebras(text, source=str(path)))
        for name, value in parsed.items():
            if name in out:
                raise DuplicateName(f"name {name!r} defined in more than one file")
            out[name] = value
    return out


def _elements(text: str) -> frozenset[int]:
    return frozenset(int(x) for x in text.split(",") if x.strip() != "")


def _size_cap(args) -> int:
    if args.size_cap is not None:
        return args.size_cap
    env = os.environ.get("UA_SIZE_CAP")
    return int(env) if env else 8


def _parse_unary_tables(path: str, keyword: str, out: dict[int, tuple[int, ...]]):
    current = None
    pending: list[int] = []
    for raw in Path(path).read_text().splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if parts[0] == keyword:
            if current is not None:
                out[current] = tuple(pending)
            current = int(parts[1])
            pending = []
        elif parts[0][0].isdigit():
            if current is None:
                raise ParseError(f"{path}: table entries before any {keyword} line")
            pending.extend(int(p) for p in parts)
    if current is not None:
        out[current] = tuple(pending)


def _parse_map_file(path: str, keywords) -> dict[str, dict[int, tuple[int, ...]]]:
    out: dict[str, dict[int, tuple[int, ...]]] = {k: {} for k in keywords}
    current: tuple[str, int] | None = None
    pending: list[int] = []

    def flush():
        nonlocal current, pending
        if current is not None:
            out[current[0]][current[1]] = tuple(pending)
        current = None
        pending = []

    for raw in Path(path).read_text().splitlines():
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if parts[0] in keywords:
            flush()
            current = (parts[0], int(parts[1]))
        else:
            if current is None:
                raise ParseError(f"{path}: table entries before any map header")
            pending.extend(int(p) for p in parts)
    flush()
    return out


def cmd_check(args, ws: Workspace) -> int:
    A = ws.algebra(args.ref)
    V = ws.variety(args.variety)
    report = check_identities(A, V)
    if report.passes:
        print(f"{A.name}: passes {V.name}")
        return 0
    w = report.witness
    kind = "quasi condition" if w.quasi else "identity"
    print(f"{A.name}: fails {V.name} {kind} {w.identity} at {w.assignment}")
    return 1


def cmd_congruences(args, ws: Workspace) -> int:
    A = ws.algebra(args.ref)
    found = congruences.all_congruences(A, cap=_size_cap(args))
    print(len(found))
    for part in found:
        print(part)
    return 0


def cmd_idempotents(args, ws: Workspace) -> int:
    A = ws.algebra(args.ref)
    endos = inner.idempotent_endomorphisms(A, cap=_size_cap(args))
    print(len(endos))
    for endo in endos:
        print(" ".join(map(str, endo.map)))
    return 0


def cmd_decompose(args, ws: Workspace) -> int:
    A = ws.algebra(args.ref)
    B = _elements(args.B)
    omega = parse_partition(args.omega, A.size)
    report = inner.verify_inner_sdp(A, B, omega, cap=_size_cap(args))
    print(f"subalgebra: {report.b_is_subalgebra}")
    print(f"congruence: {report.omega_is_congruence}")
    for label, value in zip("abcd", (report.a, report.b, report.c, report.d)):
        print(f"({label}): {value}")
    return 0 if report.holds else 1


def cmd_outer(args, ws: Workspace) -> int:
    family, actions = outer.parse_action_file(
        Path(args.action).read_text(), ws.algebra, source=args.action
    )
    V = ws.variety(args.variety)
    built = outer.build_outer_product(family, actions, V, name=args.name)
    sys.stdout.write(emit_algebra(built.algebra))
    return 0


def cmd_group_sdp(args, ws: Workspace) -> int:
    N = ws.algebra(args.N)
    B = ws.algebra(args.B)
    tables: dict[int, tuple[int, ...]] = {}
    _parse_unary_tables(args.phi, "phi", tables)
    phi = tuple(tables[b] for b in range(B.size))
    G = groups.group_semidirect(N, B, phi)
    sys.stdout.write(emit_algebra(G))
    return 0


def cmd_ring_sdp(args, ws: Workspace) -> int:
    K = ws.algebra(args.K)
    S = ws.algebra(args.S)
    maps = _parse_map_file(args.maps, ("lambda", "rho"))
    pair = groups.RingActionPair(
        K,
        S,
        tuple(maps["lambda"][s] for s in range(S.size)),
        tuple(maps["rho"][s] for s in range(S.size)),
    )
    R = groups.ring_semidirect(pair)
    sys.stdout.write(emit_algebra(R))
    return 0


def cmd_digroup_sdp(args, ws: Workspace) -> int:
    Y = Digroup(ws.algebra(args.Y)).validate()
    K = Digroup(ws.algebra(args.K)).validate()
    maps = _parse_map_file(args.maps, ("phistar", "phicirc", "lambda"))
    triple = digroups.DigroupActionTriple(
        Y,
        K,
        tuple(maps["phistar"][y] for y in range(Y.n)),
        tuple(maps["phicirc"][y] for y in range(Y.n)),
        tuple(maps["lambda"][y] for y in range(Y.n)),
    )
    D = digroups.digroup_outer(triple, name=args.name)
    sys.stdout.write(emit_algebra(D.algebra))
    return 0


def cmd_brace(args, ws: Workspace) -> int:
    D = Digroup(ws.algebra(args.ref)).validate()
    if args.action == "check":
        report = digroups.skew_brace_check(D)
        print(f"left skew brace: {report.lsb}")
        if report.witness is not None:
            print(f"witness: {report.witness}")
        return 0 if report.lsb else 1
    if args.action == "commutator":
        ideal = digroups.brace_commutator(D, _elements(args.I), _elements(args.J))
        print("{" + ",".join(map(str, sorted(ideal))) + "}")
        return 0
    if args.action == "center":
        print("{" + ",".join(map(str, sorted(digroups.brace_center(D)))) + "}")
        return 0
    if args.action == "reflect":
        Q, ideal = digroups.skew_brace_reflection(D)
        print("ideal {" + ",".join(map(str, sorted(ideal))) + "}")
        sys.stdout.write(emit_algebra(Q.algebra))
        return 0
    raise UnknownVerb(f"unknown brace action {args.action!r}")


def cmd_heap(args, ws: Workspace) -> int:
    A = ws.algebra(args.ref)
    if args.action == "check":
        ok = heaps.is_heap(A)
        print(f"{A.name}: heap: {ok}")
        return 0 if ok else 1
    if args.action == "convert":
        if "t" in A.signature:
            G = heaps.group_from_heap(A, args.basepoint)
            sys.stdout.write(emit_algebra(G))
        else:
            sys.stdout.write(emit_algebra(heaps.heap_from_group(A)))
        return 0
    if args.action == "decompose":
        Y = _elements(args.Y)
        omega = parse_partition(args.omega, A.size)
        report = heaps.heap_inner_report(A, Y, omega, args.basepoint if args.basepoint >= 0 else None)
        for label, value in zip(
            "abcde", (report.a, report.b, report.c, report.d, report.e)
        ):
            print(f"({label}): {value}")
        return 0 if report.holds else 1
    raise UnknownVerb(f"unknown heap action {args.action!r}")


def cmd_truss(args, ws: Workspace) -> int:
    A = ws.algebra(args.ref)
    if args.action == "check":
        ok = heaps.is_near_truss(A, args.side)
        print(f"{A.name}: {args.side} near-truss: {ok}")
        return 0 if ok else 1
    if args.action == "decompose":
        Y = _elements(args.Y)
        omega = parse_partition(args.omega, A.size)
        report = heaps.near_truss_report(A, Y, omega, side=args.side)
        for label, value in zip("abcd", (report.a, report.b, report.c, report.d)):
            print(f"({label}): {value}")
        return 0 if report.holds else 1
    raise UnknownVerb(f"unknown truss action {args.action!r}")


def cmd_envcat(args, ws: Workspace) -> int:
    family, actions = outer.parse_action_file(
        Path(args.action).read_text(), ws.algebra, source=args.action
    )
    V = ws.variety(args.variety)
    built = outer.build_outer_product(family, actions, V)
    base = built.family.base
    src = TupleObject(base, tuple(int(x) for x in args.object.split(",") if x != ""))
    terms = tuple(parse_term(t.strip(), base.signature) for t in args.terms.split(";"))
    values = tuple(eval_term(t, base, src.elements) for t in terms)
    dst = TupleObject(base, values)
    morphism = TermTupleMorphism(src, dst, terms)
    tables = functor_morphism(built, morphism)
    print(f"object {src.elements} -> {dst.elements}")
    print(f"source fiber sizes: {functor_object(built, src).sizes}")
    for t, table in zip(terms, tables):
        print(f"{term_to_str(t)}: {' '.join(map(str, table))}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ua", description=__doc__)
    parser.add_argument("--size-cap", type=int, default=None, help="enumeration cap override")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="check an algebra against a variety")
    p.add_argument("ref")
    p.add_argument("--variety", required=True)

    p = sub.add_parser("congruences", help="list all congruences")
    p.add_argument("ref")

    p = sub.add_parser("idempotents", help="list all idempotent endomorphisms")
    p.add_argument("ref")

    p = sub.add_parser("decompose", help="inner decomposition report")
    p.add_argument("ref")
    p.add_argument("--B", required=True)
    p.add_argument("--omega", required=True)

    p = sub.add_parser("outer", help="build an outer product from an action file")
    p.add_argument("--action", required=True)
    p.add_argument("--variety", required=True)
    p.add_argument("--name", default="outer")

    p = sub.add_parser("group-sdp", help="group semidirect product")
    p.add_argument("--N", required=True)
    p.add_argument("--B", required=True)
    p.add_argument("--phi", required=True, help="file of per-b permutation tables")

    p = sub.add_parser("ring-sdp", help="ring semidirect product")
    p.add_argument("--K", required=True)
    p.add_argument("--S", required=True)
    p.add_argument("--maps", required=True, help="file with lambda/rho tables")

    p = sub.add_parser("digroup-sdp", help="digroup semidirect product")
    p.add_argument("--Y", required=True)
    p.add_argument("--K", required=True)
    p.add_argument("--maps", required=True, help="file with phistar/phicirc/lambda tables")
    p.add_argument("--name", default="outer_digroup")

    p = sub.add_parser("brace", help="skew brace reports")
    p.add_argument("action", choices=["check", "commutator", "center", "reflect"])
    p.add_argument("ref")
    p.add_argument("--I", default="")
    p.add_argument("--J", default="")

    p = sub.add_parser("heap", help="heap reports and conversions")
    p.add_argument("action", choices=["check", "convert", "decompose"])
    p.add_argument("ref")
    p.add_argument("--basepoint", type=int, default=-1)
    p.add_argument("--Y", default="")
    p.add_argument("--omega", default="")

    p = sub.add_parser("truss", help="near-truss reports")
    p.add_argument("action", choices=["check", "decompose"])
    p.add_argument("ref")
    p.add_argument("--side", choices=["left", "right"], default="left")
    p.add_argument("--Y", default="")
    p.add_argument("--omega", default="")

    p = sub.add_parser("envcat", help="print a functor table for a term tuple")
    p.add_argument("--action", required=True)
    p.add_argument("--variety", required=True)
    p.add_argument("--object", required=True, help="comma-separated base elements")
    p.add_argument("--terms", required=True, help="semicolon-separated terms")

    return parser


_HANDLERS = {
    "check": cmd_check,
    "congruences": cmd_congruences,
    "idempotents": cmd_idempotents,
    "decompose": cmd_decompose,
    "outer": cmd_outer,
    "group-sdp": cmd_group_sdp,
    "ring-sdp": cmd_ring_sdp,
    "digroup-sdp": cmd_digroup_sdp,
    "brace": cmd_brace,
    "heap": cmd_heap,
    "truss": cmd_truss,
    "envcat": cmd_envcat,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    ws = Workspace()
    try:
        return _HANDLERS[args.verb](args, ws)
    except (UAError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
