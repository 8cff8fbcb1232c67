"""Equationally defined classes of algebras and the exhaustive identity check."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .algebras import FiniteAlgebra
from .errors import DuplicateName, ParseError, SignatureMismatch
from .terms import Identity, Signature, eval_term, parse_identity


@dataclass(frozen=True)
class VarietySpec:
    name: str
    signature: Signature
    identities: tuple[Identity, ...]
    quasi_conditions: tuple[Identity, ...] = ()


@dataclass(frozen=True)
class Witness:
    """First failing instance: which equation, under which assignment."""

    identity: Identity
    assignment: tuple[int, ...]
    lhs_value: int
    rhs_value: int
    quasi: bool = False


@dataclass(frozen=True)
class IdentityReport:
    passes: bool
    witness: Witness | None = None


def check_identities(A: FiniteAlgebra, V: VarietySpec) -> IdentityReport:
    """Check every identity of V over all assignments (n^var_count each).

    Identities are scanned in definition order, assignments in lexicographic
    order, so the reported witness is deterministic. Quasi conditions run
    after the primary identities.
    """
    for sym, arity in V.signature.symbols:
        if sym not in A.signature or A.signature.arity(sym) != arity:
            raise SignatureMismatch(f"algebra lacks {sym}/{arity}")
    for quasi, ident in [(False, i) for i in V.identities] + [
        (True, i) for i in V.quasi_conditions
    ]:
        for assignment in iproduct(range(A.size), repeat=ident.var_count):
            left = eval_term(ident.lhs, A, assignment)
            right = eval_term(ident.rhs, A, assignment)
            if left != right:
                return IdentityReport(False, Witness(ident, assignment, left, right, quasi))
    return IdentityReport(True)


def satisfies(A: FiniteAlgebra, V: VarietySpec) -> bool:
    return check_identities(A, V).passes


def _build(name: str, symbols, identity_strings, quasi_strings=()) -> VarietySpec:
    sig = Signature(tuple(symbols))
    ids = tuple(parse_identity(s, sig) for s in identity_strings)
    quasi = tuple(parse_identity(s, sig) for s in quasi_strings)
    return VarietySpec(name, sig, ids, quasi)


GROUP_SIG = Signature((("m", 2), ("i", 1), ("e", 0)))
RING_SIG = Signature((("add", 2), ("neg", 1), ("zero", 0), ("mul", 2)))
LATTICE_SIG = Signature((("join", 2), ("meet", 2)))
HEAP_SIG = Signature((("t", 3),))
TRUSS_SIG = Signature((("t", 3), ("m", 2)))
DIGROUP_SIG = Signature(
    (("star", 2), ("star_inv", 1), ("circ", 2), ("circ_inv", 1), ("one", 0))
)

_GROUP_IDS = [
    "m(m(x0,x1),x2) = m(x0,m(x1,x2))",
    "m(e,x0) = x0",
    "m(i(x0),x0) = e",
]

_DIGROUP_IDS = [
    "star(star(x0,x1),x2) = star(x0,star(x1,x2))",
    "star(one,x0) = x0",
    "star(star_inv(x0),x0) = one",
    "circ(circ(x0,x1),x2) = circ(x0,circ(x1,x2))",
    "circ(one,x0) = x0",
    "circ(circ_inv(x0),x0) = one",
]

# a o (b * c) = ((a o b) * a^-*) * (a o c)
_LSB = "circ(x0,star(x1,x2)) = star(star(circ(x0,x1),star_inv(x0)),circ(x0,x2))"

_HEAP_IDS = [
    "t(x0,x0,x1) = x1",
    "t(x0,x1,x1) = x0",
    "t(t(x0,x1,x2),x3,x4) = t(x0,x1,t(x2,x3,x4))",
]

REGISTRY: dict[str, VarietySpec] = {}


def register(spec: VarietySpec) -> VarietySpec:
    if spec.name in REGISTRY:
        raise DuplicateName(f"variety {spec.name!r} already registered")
    REGISTRY[spec.name] = spec
    return spec


def get_variety(name: str) -> VarietySpec:
    try:
        return REGISTRY[name]
    except KeyError:
        raise ParseError(f"unknown variety {name!r}") from None


for _spec in [
    _build("semigroup", [("m", 2)], ["m(m(x0,x1),x2) = m(x0,m(x1,x2))"]),
    _build(
        "monoid",
        [("m", 2), ("e", 0)],
        ["m(m(x0,x1),x2) = m(x0,m(x1,x2))", "m(e,x0) = x0", "m(x0,e) = x0"],
    ),
    _build("group", GROUP_SIG.symbols, _GROUP_IDS),
    _build("abelian_group", GROUP_SIG.symbols, _GROUP_IDS + ["m(x0,x1) = m(x1,x0)"]),
    _build(
        "ring",
        RING_SIG.symbols,
        [
            "add(add(x0,x1),x2) = add(x0,add(x1,x2))",
            "add(x0,x1) = add(x1,x0)",
            "add(zero,x0) = x0",
            "add(neg(x0),x0) = zero",
            "mul(mul(x0,x1),x2) = mul(x0,mul(x1,x2))",
            "mul(x0,add(x1,x2)) = add(mul(x0,x1),mul(x0,x2))",
            "mul(add(x0,x1),x2) = add(mul(x0,x2),mul(x1,x2))",
        ],
    ),
    _build(
        "lattice",
        LATTICE_SIG.symbols,
        [
            "join(x0,x1) = join(x1,x0)",
            "meet(x0,x1) = meet(x1,x0)",
            "join(join(x0,x1),x2) = join(x0,join(x1,x2))",
            "meet(meet(x0,x1),x2) = meet(x0,meet(x1,x2))",
            "join(x0,meet(x0,x1)) = x0",
            "meet(x0,join(x0,x1)) = x0",
        ],
    ),
    _build("heap", HEAP_SIG.symbols, _HEAP_IDS),
    _build("digroup", DIGROUP_SIG.symbols, _DIGROUP_IDS),
    _build("skew_brace", DIGROUP_SIG.symbols, _DIGROUP_IDS, [_LSB]),
    _build(
        "left_near_truss",
        TRUSS_SIG.symbols,
        _HEAP_IDS
        + [
            "m(m(x0,x1),x2) = m(x0,m(x1,x2))",
            "m(x0,t(x1,x2,x3)) = t(m(x0,x1),m(x0,x2),m(x0,x3))",
        ],
    ),
    _build(
        "right_near_truss",
        TRUSS_SIG.symbols,
        _HEAP_IDS
        + [
            "m(m(x0,x1),x2) = m(x0,m(x1,x2))",
            "m(t(x1,x2,x3),x0) = t(m(x1,x0),m(x2,x0),m(x3,x0))",
        ],
    ),
]:
    register(_spec)


# -- text format ------------------------------------------------------------
#
# variety <name>
# op <symbol>/<arity>
# id <term> = <term>
# end


def parse_varieties(text: str, source: str = "<input>") -> dict[str, VarietySpec]:
    lines = text.splitlines()
    out: dict[str, VarietySpec] = {}
    i = 0
    while i < len(lines):
        stripped = lines[i].strip()
        i += 1
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if parts[0] != "variety" or len(parts) != 2:
            raise ParseError("expected 'variety <name>'", source, i)
        name = parts[1]
        if name in out:
            raise DuplicateName(f"{source}: variety {name!r} defined twice")
        symbols: list[tuple[str, int]] = []
        id_texts: list[str] = []
        closed = False
        while i < len(lines):
            stripped = lines[i].strip()
            i += 1
            if not stripped or stripped.startswith("#"):
                continue
            if stripped == "end":
                closed = True
                break
            word, _, rest = stripped.partition(" ")
            if word == "op":
                sym, _, ar = rest.strip().partition("/")
                if not ar.isdigit():
                    raise ParseError("expected 'op <name>/<arity>'", source, i)
                symbols.append((sym, int(ar)))
            elif word == "id":
                id_texts.append(rest)
            else:
                raise ParseError(f"unexpected line {stripped!r}", source, i)
        if not closed:
            raise ParseError("missing 'end'", source, i)
        sig = Signature(tuple(symbols))
        try:
            ids = tuple(parse_identity(s, sig) for s in id_texts)
        except Exception as exc:
            raise ParseError(f"bad identity: {exc}", source, i) from exc
        out[name] = VarietySpec(name, sig, ids)
    return out


def emit_variety(V: VarietySpec) -> str:
    lines = [f"variety {V.name}"]
    lines += [f"op {sym}/{arity}" for sym, arity in V.signature.symbols]
    lines += [f"id {ident}" for ident in V.identities]
    lines.append("end")
    return "\n".join(lines) + "\n"
