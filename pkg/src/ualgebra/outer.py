"""Outer semidirect products from pointed fibers and action families.

The data is a base algebra B, one pointed fiber per base element, and one
pointed map per function symbol and base tuple. The product lives on the
disjoint union of the fibers; a candidate is only a semidirect product when
the assembled algebra satisfies its variety.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct

from .algebras import (
    FiniteAlgebra,
    Homomorphism,
    _pack,
    is_homomorphism,
    subalgebra_as_algebra,
)
from .errors import (
    IdentityFailure,
    ParseError,
    PointednessViolation,
    SectionViolation,
    ShapeMismatch,
    SignatureMismatch,
)
from .inner import InnerDecomposition
from .varieties import VarietySpec, check_identities


@dataclass(frozen=True)
class PointedFamily:
    """One pointed fiber (size, basepoint) for every element of the base."""

    base: FiniteAlgebra
    fibers: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.fibers) != self.base.size:
            raise ShapeMismatch("one fiber per base element required")
        for size, basepoint in self.fibers:
            if size < 1 or not 0 <= basepoint < size:
                raise ShapeMismatch("fiber must be nonempty with an internal basepoint")

    @classmethod
    def constant(cls, base: FiniteAlgebra, size: int, basepoint: int) -> "PointedFamily":
        return cls(base, ((size, basepoint),) * base.size)

    def offsets(self) -> tuple[int, ...]:
        out, total = [], 0
        for size, _ in self.fibers:
            out.append(total)
            total += size
        return tuple(out)

    def total_size(self) -> int:
        return sum(size for size, _ in self.fibers)


@dataclass(frozen=True)
class ActionFamily:
    """Per symbol f and base tuple bs, a flat table over the argument fibers.

    `maps[(f, bs)][i]` is an element of the fiber over f(bs), where i packs
    the argument-fiber indices in row-major mixed radix.
    """

    maps: tuple[tuple[tuple[str, tuple[int, ...]], tuple[int, ...]], ...]

    @cached_property
    def _lookup(self) -> dict:
        return dict(self.maps)

    def table(self, symbol: str, bs: tuple[int, ...]) -> tuple[int, ...]:
        try:
            return self._lookup[(symbol, bs)]
        except KeyError:
            raise ShapeMismatch(f"no action table for {symbol} at {bs}") from None

    @classmethod
    def from_dict(cls, d: dict) -> "ActionFamily":
        return cls(tuple(sorted(d.items())))

    def as_dict(self) -> dict:
        return dict(self.maps)


def _mixed_pack(indices: tuple[int, ...], sizes: tuple[int, ...]) -> int:
    idx = 0
    for i, m in zip(indices, sizes):
        idx = idx * m + i
    return idx


def _mixed_unpack(idx: int, sizes: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(sizes)
    for j in range(len(sizes) - 1, -1, -1):
        idx, out[j] = divmod(idx, sizes[j])
    return tuple(out)


@dataclass(frozen=True)
class OuterProduct:
    """The assembled algebra on the disjoint union, with its fiber labeling."""

    algebra: FiniteAlgebra
    family: PointedFamily
    actions: ActionFamily

    def encode(self, b: int, i: int) -> int:
        return self.family.offsets()[b] + i

    def decode(self, x: int) -> tuple[int, int]:
        """Global element -> (fiber index within its block, base element)."""
        offsets = self.family.offsets()
        for b in range(self.family.base.size - 1, -1, -1):
            if x >= offsets[b]:
                return x - offsets[b], b
        raise ShapeMismatch(f"element {x} outside the disjoint union")

    def fiber(self, b: int) -> tuple[int, int]:
        return self.family.fibers[b]

    def section_map(self) -> tuple[int, ...]:
        """b -> the basepoint of its fiber, as a global element."""
        return tuple(self.encode(b, self.family.fibers[b][1]) for b in range(self.family.base.size))

    def projection_map(self) -> tuple[int, ...]:
        return tuple(self.decode(x)[1] for x in range(self.algebra.size))


def _validate_family(family: PointedFamily, actions: ActionFamily):
    base = family.base
    for p, (sym, arity) in enumerate(base.signature.symbols):
        table = base.tables[p]
        for bs in iproduct(range(base.size), repeat=arity):
            target = table[_pack(bs, base.size)]
            sizes = tuple(family.fibers[b][0] for b in bs)
            action = actions.table(sym, bs)
            if len(action) != _prod(sizes):
                raise ShapeMismatch(f"action table for {sym} at {bs} has wrong length")
            target_size, target_base = family.fibers[target]
            if any(not 0 <= v < target_size for v in action):
                raise ShapeMismatch(f"action table for {sym} at {bs} leaves its fiber")
            basepoints = tuple(family.fibers[b][1] for b in bs)
            if action[_mixed_pack(basepoints, sizes)] != target_base:
                raise PointednessViolation(
                    f"action for {sym} at {bs} does not send basepoints to the basepoint"
                )


def _prod(sizes: tuple[int, ...]) -> int:
    out = 1
    for s in sizes:
        out *= s
    return out


def assemble_union_algebra(
    family: PointedFamily, actions: ActionFamily, name: str = "outer"
) -> OuterProduct:
    """Build the disjoint-union algebra; pointedness is enforced, identities not."""
    _validate_family(family, actions)
    base = family.base
    offsets = family.offsets()
    n = family.total_size()
    labels = []
    for b in range(base.size):
        labels += [(i, b) for i in range(family.fibers[b][0])]
    tables = []
    for p, (sym, arity) in enumerate(base.signature.symbols):
        base_table = base.tables[p]
        table = []
        for args in iproduct(range(n), repeat=arity):
            parts = tuple(labels[x] for x in args)
            bs = tuple(b for _, b in parts)
            target = base_table[_pack(bs, base.size)]
            sizes = tuple(family.fibers[b][0] for b in bs)
            action = actions.table(sym, bs)
            value = action[_mixed_pack(tuple(i for i, _ in parts), sizes)]
            table.append(offsets[target] + value)
        tables.append(tuple(table))
    algebra = FiniteAlgebra(name, base.signature, n, tuple(tables))
    return OuterProduct(algebra, family, actions)


def build_outer_product(
    family: PointedFamily, actions: ActionFamily, V: VarietySpec, name: str = "outer"
) -> OuterProduct:
    """Assemble and validate: base and union must both satisfy V.

    A family whose union breaks an identity of V is rejected data, not a
    product; the raised error carries the first witness.
    """
    base_report = check_identities(family.base, V)
    if not base_report.passes:
        w = base_report.witness
        raise IdentityFailure(
            f"base fails {w.identity} at {w.assignment}", w.identity, w.assignment
        )
    outer = assemble_union_algebra(family, actions, name)
    report = check_identities(outer.algebra, V)
    if not report.passes:
        w = report.witness
        raise IdentityFailure(
            f"actions fail {w.identity} at {w.assignment}", w.identity, w.assignment
        )
    return outer


def inner_to_outer(dec: InnerDecomposition):
    """Fibers = omega-classes pointed by their B-element; actions = restrictions.

    Returns (family, actions, iso) where iso maps each a to its (position in
    class, class) coordinates in the assembled union, and is asserted to be a
    bijective homomorphism onto it.
    """
    A = dec.algebra
    base, members = subalgebra_as_algebra(A, dec.B, name=f"{A.name}_base")
    blocks = {}
    for block, basepoint in dec.pointed_partition:
        blocks[basepoint] = block
    fibers = []
    for b in members:
        block = blocks[b]
        fibers.append((len(block), block.index(b)))
    family = PointedFamily(base, tuple(fibers))
    position = {}
    for block, _ in dec.pointed_partition:
        for i, x in enumerate(block):
            position[x] = i
    maps = {}
    for p, (sym, arity) in enumerate(A.signature.symbols):
        for bs in iproduct(range(base.size), repeat=arity):
            sizes = tuple(family.fibers[b][0] for b in bs)
            source_blocks = [blocks[members[b]] for b in bs]
            table = []
            for idx in range(_prod(sizes)):
                local = _mixed_unpack(idx, sizes)
                args = tuple(source_blocks[j][local[j]] for j in range(arity))
                table.append(position[A.tables[p][_pack(args, A.size)]])
            maps[(sym, bs)] = tuple(table)
    actions = ActionFamily.from_dict(maps)
    outer = assemble_union_algebra(family, actions, name=f"{A.name}_outer")
    base_index = {m: i for i, m in enumerate(members)}
    iso = tuple(
        outer.encode(base_index[dec.e(a)], position[a]) for a in range(A.size)
    )
    assert len(set(iso)) == A.size, "the labeling must be a bijection"
    assert is_homomorphism(iso, A, outer.algebra), "the labeling must preserve operations"
    return family, actions, iso


def sdp_morphism_check(F: OuterProduct, G: OuterProduct, maps) -> bool:
    """Do the per-fiber pointed maps commute with every action square?

    The squares commute exactly when the induced map between the union
    algebras is a homomorphism, which is asserted as a cross-check.
    """
    if F.family.base != G.family.base:
        raise ShapeMismatch("both products must share the base")
    base = F.family.base
    if len(maps) != base.size:
        raise ShapeMismatch("one pointed map per base element required")
    for b in range(base.size):
        size_f, base_f = F.family.fibers[b]
        size_g, base_g = G.family.fibers[b]
        if len(maps[b]) != size_f or any(not 0 <= v < size_g for v in maps[b]):
            raise ShapeMismatch(f"map at base element {b} has the wrong shape")
        if maps[b][base_f] != base_g:
            return False
    squares = True
    for p, (sym, arity) in enumerate(base.signature.symbols):
        base_table = base.tables[p]
        for bs in iproduct(range(base.size), repeat=arity):
            target = base_table[_pack(bs, base.size)]
            sizes_f = tuple(F.family.fibers[b][0] for b in bs)
            tab_f = F.actions.table(sym, bs)
            tab_g = G.actions.table(sym, bs)
            sizes_g = tuple(G.family.fibers[b][0] for b in bs)
            for idx in range(_prod(sizes_f)):
                local = _mixed_unpack(idx, sizes_f)
                mapped = tuple(maps[b][i] for b, i in zip(bs, local))
                lhs = tab_g[_mixed_pack(mapped, sizes_g)]
                rhs = maps[target][tab_f[idx]]
                if lhs != rhs:
                    squares = False
                    break
            if not squares:
                break
        if not squares:
            break
    total = tuple(
        G.encode(b, maps[b][i])
        for x in range(F.algebra.size)
        for i, b in [F.decode(x)]
    )
    assert squares == is_homomorphism(total, F.algebra, G.algebra), (
        "square commutation must match the union-level homomorphism test"
    )
    return squares


def pointed_object_to_sdp(
    A: FiniteAlgebra,
    alpha: Homomorphism,
    beta: Homomorphism,
    V: VarietySpec | None = None,
) -> OuterProduct:
    """Turn a split pair (alpha: B -> A, beta: A -> B, beta o alpha = id)
    into the semidirect product with fibers beta^-1(b) pointed at alpha(b).

    The union algebra is asserted isomorphic to A; with V given, the product
    is also validated against the variety.
    """
    if alpha.target != A or beta.source != A or alpha.source != beta.target:
        raise ShapeMismatch("need alpha: B -> A and beta: A -> B")
    B = alpha.source
    if any(beta(alpha(b)) != b for b in range(B.size)):
        raise SectionViolation("beta o alpha must be the identity on B")
    fibers_elems = [sorted(x for x in range(A.size) if beta(x) == b) for b in range(B.size)]
    if any(not fiber for fiber in fibers_elems):
        raise SectionViolation("beta must be surjective")
    fibers = tuple(
        (len(fiber), fiber.index(alpha(b))) for b, fiber in enumerate(fibers_elems)
    )
    family = PointedFamily(B, fibers)
    position = {x: i for fiber in fibers_elems for i, x in enumerate(fiber)}
    maps = {}
    for p, (sym, arity) in enumerate(A.signature.symbols):
        base_table = B.tables[p]
        for bs in iproduct(range(B.size), repeat=arity):
            sizes = tuple(fibers[b][0] for b in bs)
            table = []
            for idx in range(_prod(sizes)):
                local = _mixed_unpack(idx, sizes)
                args = tuple(fibers_elems[b][i] for b, i in zip(bs, local))
                table.append(position[A.tables[p][_pack(args, A.size)]])
            maps[(sym, bs)] = tuple(table)
    actions = ActionFamily.from_dict(maps)
    if V is not None:
        outer = build_outer_product(family, actions, V, name=f"{A.name}_split")
    else:
        outer = assemble_union_algebra(family, actions, name=f"{A.name}_split")
    iso = tuple(outer.encode(beta(x), position[x]) for x in range(A.size))
    assert len(set(iso)) == A.size and is_homomorphism(iso, A, outer.algebra), (
        "the fiber labeling must be an isomorphism onto the union"
    )
    return outer


def outer_to_pointed_object(F: OuterProduct):
    """Every product yields a split pair: the basepoint section and the
    fiber projection, with projection o section = identity."""
    base = F.family.base
    section = Homomorphism(base, F.algebra, F.section_map())
    projection = Homomorphism(F.algebra, base, F.projection_map())
    assert all(projection(section(b)) == b for b in range(base.size))
    return section, projection


def direct_product_check(
    family: PointedFamily, actions: ActionFamily, K: FiniteAlgebra
) -> bool:
    """With a constant fiber K, is every action table K's own table?

    Agreement with the canonical pairing against product(K, B) is asserted:
    the pairing (i, b) -> i*|B| + b is an isomorphism exactly when the
    criterion holds (an accidental abstract isomorphism does not count).
    """
    base = family.base
    if K.signature != base.signature:
        raise SignatureMismatch("fiber algebra must share the base signature")
    if any(size != K.size for size, _ in family.fibers):
        raise ShapeMismatch("all fibers must share K's carrier")
    basepoints = {bp for _, bp in family.fibers}
    if len(basepoints) != 1:
        raise ShapeMismatch("all fibers must share one basepoint")
    from .inner import totally_idempotent_elements

    if next(iter(basepoints)) not in totally_idempotent_elements(K):
        raise ShapeMismatch("shared basepoint must be totally idempotent in K")
    criterion = True
    for p, (sym, arity) in enumerate(base.signature.symbols):
        for bs in iproduct(range(base.size), repeat=arity):
            if actions.table(sym, bs) != K.tables[p]:
                criterion = False
                break
        if not criterion:
            break
    outer = assemble_union_algebra(family, actions)
    from .algebras import product as direct_product

    target = direct_product(K, base)
    pairing = tuple(
        i * base.size + b for x in range(outer.algebra.size) for i, b in [outer.decode(x)]
    )
    canonical = len(set(pairing)) == outer.algebra.size and is_homomorphism(
        pairing, outer.algebra, target
    )
    assert criterion == canonical, "criterion must match the canonical pairing"
    return criterion


# -- text format ------------------------------------------------------------
#
# action
# base <name>
# fiber <b> <size> <basepoint>      (or: fiber * <size> <basepoint>)
# map <symbol> (<b1>,...,<bk>)
# <flat table>
# end


def parse_action_file(text: str, resolve, source: str = "<input>"):
    """Parse an action file; `resolve` maps a base reference to its algebra."""
    lines = text.splitlines()
    base = None
    fibers: dict[int, tuple[int, int]] = {}
    constant_fiber = None
    maps: dict[tuple[str, tuple[int, ...]], tuple[int, ...]] = {}
    current: tuple[str, tuple[int, ...]] | None = None
    pending: list[int] = []
    opened = False
    closed = False
    for no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if not opened:
            if stripped != "action":
                raise ParseError("expected 'action'", source, no)
            opened = True
            continue
        if parts[0] == "base":
            if len(parts) != 2:
                raise ParseError("expected 'base <ref>'", source, no)
            base = resolve(parts[1])
        elif parts[0] == "fiber":
            if len(parts) != 4:
                raise ParseError("expected 'fiber <b|*> <size> <basepoint>'", source, no)
            size, basepoint = int(parts[2]), int(parts[3])
            if parts[1] == "*":
                constant_fiber = (size, basepoint)
            else:
                fibers[int(parts[1])] = (size, basepoint)
        elif parts[0] == "map":
            if current is not None:
                maps[current] = tuple(pending)
            body = stripped[len("map") :].strip()
            sym, _, tup = body.partition("(")
            sym = sym.strip()
            tup = tup.rstrip(")")
            bs = tuple(int(x) for x in tup.split(",") if x.strip() != "")
            current = (sym, bs)
            pending = []
        elif parts[0] == "end":
            if current is not None:
                maps[current] = tuple(pending)
            closed = True
            break
        else:
            if current is None:
                raise ParseError("table entries before any map line", source, no)
            pending.extend(int(p) for p in parts)
    if not closed:
        raise ParseError("missing 'end'", source, len(lines))
    if base is None:
        raise ParseError("missing base", source, len(lines))
    fiber_list = []
    for b in range(base.size):
        if b in fibers:
            fiber_list.append(fibers[b])
        elif constant_fiber is not None:
            fiber_list.append(constant_fiber)
        else:
            raise ParseError(f"no fiber for base element {b}", source, len(lines))
    family = PointedFamily(base, tuple(fiber_list))
    # arity-0 maps may be omitted: they are forced onto the basepoint
    for p, (sym, arity) in enumerate(base.signature.symbols):
        if arity == 0 and (sym, ()) not in maps:
            target = base.tables[p][0]
            maps[(sym, ())] = (fiber_list[target][1],)
    return family, ActionFamily.from_dict(maps)


def emit_action_file(family: PointedFamily, actions: ActionFamily, base_ref: str) -> str:
    lines = ["action", f"base {base_ref}"]
    for b, (size, basepoint) in enumerate(family.fibers):
        lines.append(f"fiber {b} {size} {basepoint}")
    for (sym, bs), table in actions.maps:
        lines.append(f"map {sym} ({','.join(map(str, bs))})")
        lines.append(" ".join(map(str, table)))
    lines.append("end")
    return "\n".join(lines) + "\n"
