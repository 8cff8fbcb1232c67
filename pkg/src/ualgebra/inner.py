"""Inner semidirect decompositions via idempotent endomorphisms.

A decomposition of A consists of a subalgebra B and a congruence omega such
that B meets every omega-class in exactly one point. Decompositions biject
with idempotent endomorphisms, and every carrier splits into pointed blocks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product as iproduct

from .algebras import (
    FiniteAlgebra,
    Homomorphism,
    _pack,
    is_homomorphism,
    is_subalgebra,
    quotient,
    subalgebra_as_algebra,
)
from .congruences import is_congruence, kernel, kernel_of_map
from .errors import NotIdempotent, SizeLimitExceeded
from .partitions import Partition

ENDO_ENUM_CAP = 8


def idempotent_endomorphisms(A: FiniteAlgebra, cap: int = ENDO_ENUM_CAP) -> tuple[Homomorphism, ...]:
    """All idempotent endomorphisms of A, in lexicographic map order.

    Backtracks over images element by element. Constants are pinned first
    (any endomorphism fixes them), idempotence is propagated eagerly (every
    chosen image must be a fixed point), and the homomorphism condition is
    enforced on every operation instance that is fully decided.
    """
    if A.size > cap:
        raise SizeLimitExceeded(f"endomorphism enumeration capped at {cap}")
    return _enumerate_idempotents(A)


@lru_cache(maxsize=None)
def _enumerate_idempotents(A: FiniteAlgebra) -> tuple[Homomorphism, ...]:
    n = A.size
    sig = A.signature.symbols
    image = [-1] * n
    for c in A.constants().values():
        image[c] = c

    def ok() -> bool:
        # check all instances whose arguments and result are decided
        decided = [x for x in range(n) if image[x] >= 0]
        for p, (_, arity) in enumerate(sig):
            table = A.tables[p]
            for args in iproduct(decided, repeat=arity):
                out = table[_pack(args, n)]
                if image[out] < 0:
                    continue
                if table[_pack(tuple(image[a] for a in args), n)] != image[out]:
                    return False
        return True

    results: list[tuple[int, ...]] = []

    def assign(x: int):
        while x < n and image[x] >= 0:
            x += 1
        if x == n:
            results.append(tuple(image))
            return
        for v in range(n):
            if image[v] >= 0 and image[v] != v:
                continue  # idempotence: the image point must be fixed
            undo = [(x, image[x])]
            image[x] = v
            if image[v] < 0:
                undo.append((v, image[v]))
                image[v] = v
            if ok():
                assign(x + 1)
            for pos, old in reversed(undo):
                image[pos] = old

    assign(0)
    return tuple(Homomorphism(A, A, m) for m in sorted(results))


@dataclass(frozen=True)
class InnerDecomposition:
    """A = B x| omega, with the witnessing idempotent endomorphism.

    `pointed_partition` lists (block, basepoint) in block order; the basepoint
    is the unique element of the block lying in B.
    """

    algebra: FiniteAlgebra
    B: frozenset[int]
    omega: Partition
    e: Homomorphism
    pointed_partition: tuple[tuple[tuple[int, ...], int], ...]


def decomposition_from_idempotent(A: FiniteAlgebra, e: Homomorphism) -> InnerDecomposition:
    """B = im(e), omega = ker(e), blocks pointed by their unique B-element."""
    if e.source != A or e.target != A:
        raise NotIdempotent("endomorphism of a different algebra")
    if not e.is_idempotent:
        raise NotIdempotent("map is not idempotent")
    B = e.image()
    omega = kernel(e)
    pointed = []
    for block in omega.blocks():
        inside = sorted(B.intersection(block))
        assert inside == [e(block[0])], "block must meet B exactly in its basepoint"
        pointed.append((block, inside[0]))
    return InnerDecomposition(A, B, omega, e, tuple(pointed))


def all_inner_decompositions(A: FiniteAlgebra, cap: int = ENDO_ENUM_CAP):
    return [decomposition_from_idempotent(A, e) for e in idempotent_endomorphisms(A, cap)]


@dataclass(frozen=True)
class InnerSdpReport:
    b_is_subalgebra: bool
    omega_is_congruence: bool
    a: bool  # B is a transversal of the omega-classes
    b: bool  # an idempotent endomorphism has image B and kernel omega
    c: bool  # a surjective A -> B restricting to the identity has kernel omega
    d: bool  # the canonical map B -> A/omega is an isomorphism
    decomposition: InnerDecomposition | None

    @property
    def holds(self) -> bool:
        return self.a


def _transversal(A: FiniteAlgebra, B: frozenset[int], omega: Partition) -> bool:
    return all(len(B.intersection(block)) == 1 for block in omega.blocks())


def _endo_witness(A: FiniteAlgebra, B: frozenset[int], omega: Partition, cap: int) -> bool:
    for e in idempotent_endomorphisms(A, cap):
        if e.image() == B and kernel(e) == omega:
            return True
    return False


def _retraction_witness(A: FiniteAlgebra, B: frozenset[int], omega: Partition) -> bool:
    # a map with kernel exactly omega is constant on classes and injective
    # across them, and the identity on B pins the classes that meet B
    sub, members = subalgebra_as_algebra(A, B)
    pos = {x: i for i, x in enumerate(members)}
    mapping = [-1] * A.size
    for block in omega.blocks():
        inside = [x for x in block if x in B]
        if len(inside) != 1:
            return False
        for x in block:
            mapping[x] = pos[inside[0]]
    return is_homomorphism(tuple(mapping), A, sub)


def _canonical_iso_witness(A: FiniteAlgebra, B: frozenset[int], omega: Partition) -> bool:
    Q, proj = quotient(A, omega)
    sub, members = subalgebra_as_algebra(A, B)
    canonical = tuple(proj(b) for b in members)
    if len(set(canonical)) != len(members) or len(members) != Q.size:
        return False
    return is_homomorphism(canonical, sub, Q)


def verify_inner_sdp(A: FiniteAlgebra, B, omega: Partition, cap: int = ENDO_ENUM_CAP) -> InnerSdpReport:
    """Evaluate the four equivalent decomposition conditions independently.

    Violated preconditions (B not a subalgebra, omega not a congruence) are
    reported as flags; all four conditions are then false rather than raised.
    """
    B = frozenset(B)
    sub_ok = is_subalgebra(A, B)
    cong_ok = is_congruence(A, omega)
    if not (sub_ok and cong_ok):
        return InnerSdpReport(sub_ok, cong_ok, False, False, False, False, None)
    flag_a = _transversal(A, B, omega)
    flag_b = _endo_witness(A, B, omega, cap)
    flag_c = _retraction_witness(A, B, omega)
    flag_d = _canonical_iso_witness(A, B, omega)
    assert flag_a == flag_b == flag_c == flag_d, "the four conditions must agree"
    dec = None
    if flag_a:
        mapping = [-1] * A.size
        for block in omega.blocks():
            rep = next(x for x in block if x in B)
            for x in block:
                mapping[x] = rep
        dec = decomposition_from_idempotent(A, Homomorphism(A, A, tuple(mapping)))
    return InnerSdpReport(sub_ok, cong_ok, flag_a, flag_b, flag_c, flag_d, dec)


def totally_idempotent_elements(A: FiniteAlgebra) -> frozenset[int]:
    """Elements a with f(a,...,a) = a for every operation (constants included)."""
    out = []
    for a in range(A.size):
        if all(
            A.tables[p][_pack((a,) * arity, A.size)] == a
            for p, (_, arity) in enumerate(A.signature.symbols)
        ):
            out.append(a)
    return frozenset(out)


def constant_endomorphisms(A: FiniteAlgebra) -> tuple[Homomorphism, ...]:
    """One constant endomorphism per totally idempotent element.

    The three descriptions (constant endomorphisms, singleton subalgebras,
    totally idempotent elements) are computed separately and asserted to
    coincide.
    """
    constants = [
        a for a in range(A.size) if is_homomorphism((a,) * A.size, A, A)
    ]
    singletons = [a for a in range(A.size) if is_subalgebra(A, {a})]
    totally = sorted(totally_idempotent_elements(A))
    assert constants == singletons == totally, "the three sets must biject"
    return tuple(Homomorphism(A, A, (a,) * A.size) for a in constants)


def endo_leq(e: Homomorphism, f: Homomorphism) -> bool:
    """e <= f iff im(e) is inside im(f) and ker(f) refines ker(e)."""
    return e.image() <= f.image() and kernel_of_map(f.map).refines(kernel_of_map(e.map))


@dataclass(frozen=True)
class BlockClassReport:
    """Per omega-class status for one decomposition."""

    endo_index: int
    block: tuple[int, ...]
    basepoint: int
    is_subalgebra: bool
    basepoint_totally_idempotent: bool
    dominated_constant_exists: bool


@dataclass(frozen=True)
class PosetReport:
    endos: tuple[Homomorphism, ...]
    leq: tuple[tuple[bool, ...], ...]
    class_reports: tuple[BlockClassReport, ...]


def idempotent_poset(A: FiniteAlgebra, cap: int = ENDO_ENUM_CAP) -> PosetReport:
    """Order the idempotent endomorphisms and grade every block of every
    decomposition by the three equivalent class conditions.

    The identity is asserted greatest and the constant endomorphisms minimal.
    For each decomposition e and omega-class K the report records whether K is
    a subalgebra, whether its basepoint is totally idempotent, and whether a
    constant endomorphism below e lands inside K; the three are asserted
    equivalent.
    """
    endos = idempotent_endomorphisms(A, cap)
    matrix = tuple(tuple(endo_leq(e, f) for f in endos) for e in endos)
    identity_index = endos.index(Homomorphism(A, A, tuple(range(A.size))))
    assert all(row[identity_index] for row in matrix), "identity must be greatest"
    constants = {e.map[0] for e in constant_endomorphisms(A)}
    for i, e in enumerate(endos):
        if len(e.image()) == 1:
            below = [j for j in range(len(endos)) if matrix[j][i] and j != i]
            assert not below, "constant endomorphisms must be minimal"
    totally = totally_idempotent_elements(A)
    reports = []
    for i, e in enumerate(endos):
        dec = decomposition_from_idempotent(A, e)
        for block, basepoint in dec.pointed_partition:
            is_sub = is_subalgebra(A, block)
            base_ti = basepoint in totally
            dominated = basepoint in constants and endo_leq(
                Homomorphism(A, A, (basepoint,) * A.size), e
            )
            assert is_sub == base_ti == dominated, "class conditions must agree"
            reports.append(
                BlockClassReport(i, block, basepoint, is_sub, base_ti, dominated)
            )
    return PosetReport(endos, matrix, tuple(reports))


def count_transversal_pairs(A: FiniteAlgebra, subalgebras, congruences) -> int:
    """|{(B, omega) : B meets every omega-class exactly once}| by direct scan."""
    count = 0
    for B in subalgebras:
        members = frozenset(B)
        for omega in congruences:
            if _transversal(A, members, omega):
                count += 1
    return count
