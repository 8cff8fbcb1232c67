"""Finite algebras as flat operation tables, and the maps between them."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .errors import (
    DuplicateName,
    NotACongruence,
    NotAHomomorphism,
    NotASubalgebra,
    ParseError,
    SignatureMismatch,
    SizeLimitExceeded,
    SizeMismatch,
    TableRangeError,
)
from .partitions import Partition
from .terms import Signature

ISO_SIZE_CAP = 12


def _pack(args: tuple[int, ...], n: int) -> int:
    # row-major mixed radix: f(i1,..,ik) sits at i1*n^(k-1)+...+ik
    idx = 0
    for a in args:
        idx = idx * n + a
    return idx


@dataclass(frozen=True)
class FiniteAlgebra:
    """Carrier {0..size-1} with one flat table per signature symbol.

    `tables[p]` belongs to `signature.symbols[p]` and has length size**arity,
    in row-major mixed-radix order.
    """

    name: str
    signature: Signature
    size: int
    tables: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.size < 1:
            raise SizeMismatch("carrier must be nonempty")
        if len(self.tables) != len(self.signature.symbols):
            raise SignatureMismatch("one table per symbol required")
        for (sym, arity), table in zip(self.signature.symbols, self.tables):
            if len(table) != self.size**arity:
                raise SizeMismatch(f"table for {sym!r} has wrong length")
            for v in table:
                if not 0 <= v < self.size:
                    raise TableRangeError(f"table entry {v} for {sym!r} out of range")

    @property
    def elements(self) -> range:
        return range(self.size)

    def table(self, symbol: str) -> tuple[int, ...]:
        return self.tables[self.signature.position(symbol)]

    def apply(self, symbol: str, args: tuple[int, ...]) -> int:
        return self.tables[self.signature.position(symbol)][_pack(args, self.size)]

    def constants(self) -> dict[str, int]:
        return {
            sym: self.tables[p][0]
            for p, (sym, arity) in enumerate(self.signature.symbols)
            if arity == 0
        }

    def rename(self, name: str) -> "FiniteAlgebra":
        return FiniteAlgebra(name, self.signature, self.size, self.tables)


def tuples(n: int, k: int):
    return iproduct(range(n), repeat=k)


def is_homomorphism(mapping, A: FiniteAlgebra, B: FiniteAlgebra) -> bool:
    """True iff f(map a1,..,map ak) = map f(a1,..,ak) for every symbol and tuple."""
    if A.signature != B.signature:
        raise SignatureMismatch("homomorphisms need a shared signature")
    if len(mapping) != A.size or any(not 0 <= v < B.size for v in mapping):
        raise SizeMismatch("map must send A's carrier into B's")
    for p, (sym, arity) in enumerate(A.signature.symbols):
        ta, tb = A.tables[p], B.tables[p]
        for args in tuples(A.size, arity):
            image = _pack(tuple(mapping[a] for a in args), B.size)
            if mapping[ta[_pack(args, A.size)]] != tb[image]:
                return False
    return True


@dataclass(frozen=True)
class Homomorphism:
    """A structure-preserving map, validated on construction."""

    source: FiniteAlgebra
    target: FiniteAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        if not is_homomorphism(self.map, self.source, self.target):
            raise NotAHomomorphism("map does not preserve the operations")

    def __call__(self, a: int) -> int:
        return self.map[a]

    @property
    def is_endo(self) -> bool:
        return self.source == self.target

    @property
    def is_idempotent(self) -> bool:
        return self.is_endo and all(self.map[v] == v for v in self.map)

    def image(self) -> frozenset[int]:
        return frozenset(self.map)

    def is_bijective(self) -> bool:
        return self.source.size == self.target.size and len(set(self.map)) == self.source.size

    def compose(self, first: "Homomorphism") -> "Homomorphism":
        """self after first."""
        if first.target != self.source:
            raise SignatureMismatch("composition endpoints do not match")
        return Homomorphism(first.source, self.target, tuple(self.map[v] for v in first.map))


def generated_subalgebra(A: FiniteAlgebra, seed) -> frozenset[int]:
    """Least superset of `seed` closed under all operations and constants."""
    current = set(seed)
    for c in A.constants().values():
        current.add(c)
    changed = True
    while changed:
        changed = False
        members = sorted(current)
        for p, (_, arity) in enumerate(A.signature.symbols):
            if arity == 0:
                continue
            table = A.tables[p]
            for args in iproduct(members, repeat=arity):
                v = table[_pack(args, A.size)]
                if v not in current:
                    current.add(v)
                    changed = True
    return frozenset(current)


def is_subalgebra(A: FiniteAlgebra, subset) -> bool:
    members = frozenset(subset)
    if not members:
        return False
    if any(not 0 <= x < A.size for x in members):
        raise SizeMismatch("subset outside the carrier")
    return generated_subalgebra(A, members) == members


def all_subalgebras(A: FiniteAlgebra, cap: int = 12) -> list[frozenset[int]]:
    """All nonempty closed subsets, by closing every subset (carrier <= cap)."""
    if A.size > cap:
        raise SizeLimitExceeded(f"subalgebra enumeration capped at {cap}")
    found: set[frozenset[int]] = set()
    for mask in range(1, 2**A.size):
        subset = frozenset(i for i in range(A.size) if mask >> i & 1)
        if generated_subalgebra(A, subset) == subset:
            found.add(subset)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def subalgebra_as_algebra(A: FiniteAlgebra, subset, name: str | None = None):
    """Relabel a closed subset as an algebra on {0..k-1}; returns (algebra, inclusion).

    Elements keep their relative order: inclusion[i] is the i-th smallest member.
    """
    members = sorted(subset)
    if not is_subalgebra(A, members):
        raise NotASubalgebra("subset is not closed under the operations")
    pos = {x: i for i, x in enumerate(members)}
    k = len(members)
    tables = []
    for p, (_, arity) in enumerate(A.signature.symbols):
        table = A.tables[p]
        tables.append(
            tuple(
                pos[table[_pack(tuple(members[i] for i in args), A.size)]]
                for args in tuples(k, arity)
            )
        )
    sub = FiniteAlgebra(name or f"{A.name}_sub", A.signature, k, tuple(tables))
    return sub, tuple(members)


def quotient(A: FiniteAlgebra, omega: Partition):
    """Quotient by a congruence; returns (algebra on blocks, projection).

    Blocks are ordered by least element. Well-definedness of every induced
    table entry is verified directly; a conflict raises NotACongruence.
    """
    if omega.n != A.size:
        raise SizeMismatch("partition size differs from carrier size")
    blocks = omega.blocks()
    index = {b[0]: i for i, b in enumerate(blocks)}
    proj = tuple(index[omega.rep[a]] for a in range(A.size))
    k = len(blocks)
    tables = []
    for p, (sym, arity) in enumerate(A.signature.symbols):
        table = A.tables[p]
        induced = [-1] * (k**arity)
        for args in tuples(A.size, arity):
            slot = _pack(tuple(proj[a] for a in args), k)
            value = proj[table[_pack(args, A.size)]]
            if induced[slot] == -1:
                induced[slot] = value
            elif induced[slot] != value:
                raise NotACongruence(f"operation {sym!r} is not well defined on blocks")
        tables.append(tuple(induced))
    Q = FiniteAlgebra(f"{A.name}_q", A.signature, k, tuple(tables))
    return Q, Homomorphism(A, Q, proj)


def product(A: FiniteAlgebra, B: FiniteAlgebra) -> FiniteAlgebra:
    """Componentwise product; pair (a, b) is encoded as a*|B| + b."""
    if A.signature != B.signature:
        raise SignatureMismatch("product needs a shared signature")
    n = A.size * B.size
    tables = []
    for p, (_, arity) in enumerate(A.signature.symbols):
        ta, tb = A.tables[p], B.tables[p]
        table = []
        for args in tuples(n, arity):
            aside = tuple(x // B.size for x in args)
            bside = tuple(x % B.size for x in args)
            table.append(ta[_pack(aside, A.size)] * B.size + tb[_pack(bside, B.size)])
        tables.append(tuple(table))
    return FiniteAlgebra(f"{A.name}_x_{B.name}", A.signature, n, tuple(tables))


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra, cap: int = ISO_SIZE_CAP):
    """Lexicographically least isomorphism A -> B, or None.

    Backtracking over images in carrier order; every operation instance whose
    arguments and result are already mapped must commute with the partial map.
    Intended for carriers up to `cap`.
    """
    if A.signature != B.signature:
        raise SignatureMismatch("isomorphism needs a shared signature")
    if A.size != B.size:
        return None
    if A.size > cap:
        raise SizeLimitExceeded(f"isomorphism search capped at {cap}")
    n = A.size
    sig = A.signature.symbols
    mapping = [-1] * n
    used = [False] * n

    def consistent(upto: int) -> bool:
        assigned = range(upto + 1)
        for p, (_, arity) in enumerate(sig):
            ta, tb = A.tables[p], B.tables[p]
            for args in iproduct(assigned, repeat=arity):
                out = ta[_pack(args, n)]
                if out > upto:
                    continue
                if any(a == upto for a in args) or out == upto or arity == 0:
                    image = _pack(tuple(mapping[a] for a in args), n)
                    if tb[image] != mapping[out]:
                        return False
        return True

    def extend(i: int):
        if i == n:
            return tuple(mapping)
        for v in range(n):
            if used[v]:
                continue
            mapping[i] = v
            used[v] = True
            if consistent(i):
                result = extend(i + 1)
                if result is not None:
                    return result
            used[v] = False
        mapping[i] = -1
        return None

    return extend(0)


def is_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra, cap: int = ISO_SIZE_CAP) -> bool:
    return find_isomorphism(A, B, cap) is not None


# -- text format ------------------------------------------------------------
#
# algebra <name>
# size <n>
# op <symbol>/<arity>
# <n^arity whitespace-separated integers>
# ...
# end
#
# `#` starts a comment line; several algebras may share one file.


def parse_algebras(text: str, source: str = "<input>") -> dict[str, FiniteAlgebra]:
    lines = text.splitlines()
    out: dict[str, FiniteAlgebra] = {}
    i = 0

    def err(msg: str, line_no: int, col: int = 1):
        raise ParseError(msg, source, line_no, col)

    while i < len(lines):
        raw = lines[i]
        stripped = raw.strip()
        i += 1
        if not stripped or stripped.startswith("#"):
            continue
        head = stripped.split()
        if head[0] != "algebra" or len(head) != 2:
            err("expected 'algebra <name>'", i)
        name = head[1]
        if name in out:
            raise DuplicateName(f"{source}: algebra {name!r} defined twice")
        size = None
        symbols: list[tuple[str, int]] = []
        tables: list[tuple[int, ...]] = []
        pending: list[int] = []
        needed = 0
        current: tuple[str, int] | None = None
        closed = False
        while i < len(lines):
            stripped = lines[i].strip()
            i += 1
            if not stripped or stripped.startswith("#"):
                continue
            parts = stripped.split()
            if parts[0] == "size":
                if size is not None or len(parts) != 2 or not parts[1].isdigit():
                    err("bad size line", i)
                size = int(parts[1])
            elif parts[0] == "op":
                if size is None:
                    err("size must precede op lines", i)
                if current is not None and len(pending) != needed:
                    err(f"table for {current[0]!r} has {len(pending)} of {needed} entries", i)
                if current is not None:
                    tables.append(tuple(pending))
                if len(parts) != 2 or "/" not in parts[1]:
                    err("expected 'op <name>/<arity>'", i)
                sym, _, ar = parts[1].partition("/")
                if not ar.isdigit():
                    err("arity must be an integer", i)
                current = (sym, int(ar))
                symbols.append(current)
                pending = []
                needed = size ** int(ar)
            elif parts[0] == "end":
                if current is not None:
                    if len(pending) != needed:
                        err(f"table for {current[0]!r} has {len(pending)} of {needed} entries", i)
                    tables.append(tuple(pending))
                closed = True
                break
            else:
                if current is None:
                    err("table entries before any op line", i)
                for p in parts:
                    try:
                        v = int(p)
                    except ValueError:
                        err(f"bad table entry {p!r}", i)
                    if not 0 <= v < size:  # type: ignore[operator]
                        raise TableRangeError(
                            f"{source}:{i}: entry {v} out of range for size {size}"
                        )
                    pending.append(v)
                if len(pending) > needed:
                    err(f"too many entries for {current[0]!r}", i)
        if not closed:
            err("missing 'end'", i)
        if size is None:
            err("missing size", i)
        out[name] = FiniteAlgebra(name, Signature(tuple(symbols)), size, tuple(tables))
    return out


def emit_algebra(A: FiniteAlgebra) -> str:
    """Deterministic text form; `parse_algebras` reads it back bit-exactly."""
    lines = [f"algebra {A.name}", f"size {A.size}"]
    for (sym, arity), table in zip(A.signature.symbols, A.tables):
        lines.append(f"op {sym}/{arity}")
        if arity == 0:
            lines.append(str(table[0]))
        else:
            row = A.size ** max(arity - 1, 1)
            for start in range(0, len(table), row):
                lines.append(" ".join(map(str, table[start : start + row])))
    lines.append("end")
    return "\n".join(lines) + "\n"
