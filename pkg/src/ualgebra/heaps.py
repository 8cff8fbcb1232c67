"""Heaps (associative Mal'tsev ternary operation) and near-trusses.

Every nonempty heap is the heap of a group; decompositions mirror the general
theory, with normal subheaps giving congruences and a conjugation-style
action on the block of a chosen basepoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .algebras import (
    FiniteAlgebra,
    Homomorphism,
    find_isomorphism,
    is_homomorphism,
    product,
    quotient,
    subalgebra_as_algebra,
)
from .congruences import all_congruences, congruence_generated, is_congruence, kernel
from .errors import (
    AxiomFailure,
    DecompositionInvalid,
    EmptySet,
    HypothesisViolation,
    NotACongruence,
    NotASubheap,
    SignatureMismatch,
)
from .inner import idempotent_endomorphisms
from .partitions import Partition
from .varieties import GROUP_SIG, HEAP_SIG, TRUSS_SIG, REGISTRY, check_identities


def heap_op(X: FiniteAlgebra, a: int, b: int, c: int) -> int:
    return X.tables[0][(a * X.size + b) * X.size + c]


def is_heap(X: FiniteAlgebra) -> bool:
    if X.signature != HEAP_SIG:
        raise SignatureMismatch("expected the heap signature t/3")
    return check_identities(X, REGISTRY["heap"]).passes


def heap_from_group(G: FiniteAlgebra) -> FiniteAlgebra:
    """t(x, y, z) = x y^-1 z; verified to satisfy the heap axioms."""
    if G.signature != GROUP_SIG:
        raise SignatureMismatch("expected the group signature m/2, i/1, e/0")
    mul, inv = G.table("m"), G.table("i")
    n = G.size
    table = tuple(
        mul[mul[x * n + inv[y]] * n + z]
        for x in range(n)
        for y in range(n)
        for z in range(n)
    )
    X = FiniteAlgebra(f"{G.name}_heap", HEAP_SIG, n, (table,))
    if not is_heap(X):
        raise AxiomFailure("group-derived table fails the heap axioms")
    return X


def group_from_heap(X: FiniteAlgebra, e: int) -> FiniteAlgebra:
    """Retract at basepoint e: product t(x, e, y), identity e, inverse t(e, x, e)."""
    n = X.size
    if not 0 <= e < n:
        raise EmptySet("basepoint outside the carrier")
    mul = tuple(heap_op(X, x, e, y) for x in range(n) for y in range(n))
    inv = tuple(heap_op(X, e, x, e) for x in range(n))
    G = FiniteAlgebra(f"{X.name}_at{e}", GROUP_SIG, n, (mul, inv, (e,)))
    report = check_identities(G, REGISTRY["group"])
    if not report.passes:
        raise AxiomFailure(f"retract fails the group identities: {report.witness.identity}")
    return G


def is_subheap(X: FiniteAlgebra, S) -> bool:
    S = frozenset(S)
    return all(heap_op(X, a, b, c) in S for a in S for b in S for c in S)


def is_normal_subheap(X: FiniteAlgebra, S) -> bool:
    """Nonempty subheap with [[x,e,s],x,e] inside S for all x and e,s in S."""
    S = frozenset(S)
    if not S or not is_subheap(X, S):
        return False
    return all(
        heap_op(X, heap_op(X, x, e, s), x, e) in S
        for x in range(X.size)
        for e in S
        for s in S
    )


def all_normal_subheaps(X: FiniteAlgebra) -> list[frozenset[int]]:
    out = []
    for mask in range(1, 2**X.size):
        S = frozenset(i for i in range(X.size) if mask >> i & 1)
        if is_normal_subheap(X, S):
            out.append(S)
    return sorted(out, key=lambda s: (len(s), sorted(s)))


def subheap_relation(X: FiniteAlgebra, S) -> Partition:
    """The congruence generated by relating all of S to itself."""
    members = sorted(frozenset(S))
    if not members:
        raise EmptySet("the empty set generates no relation")
    pairs = [(members[0], s) for s in members[1:]]
    return congruence_generated(X, pairs)


def subheap_preorder_leq(X: FiniteAlgebra, M, N) -> bool:
    """M <= N iff whenever [x,y,s] lands in M for some s in M, some t in N
    puts [x,y,t] in N."""
    M, N = frozenset(M), frozenset(N)
    for x in range(X.size):
        for y in range(X.size):
            hit_m = any(heap_op(X, x, y, s) in M for s in M)
            if hit_m and not any(heap_op(X, x, y, t) in N for t in N):
                return False
    return True


@dataclass(frozen=True)
class NormalSubheapReport:
    normal: bool
    relation: Partition
    preorder_row: tuple[bool, ...]


def normal_subheap_report(X: FiniteAlgebra, S, others=()) -> NormalSubheapReport:
    S = frozenset(S)
    if not S:
        raise EmptySet("S must be nonempty")
    if not is_subheap(X, S):
        raise NotASubheap("S must be a subheap")
    row = tuple(subheap_preorder_leq(X, S, other) for other in others)
    return NormalSubheapReport(is_normal_subheap(X, S), subheap_relation(X, S), row)


@dataclass(frozen=True)
class HeapCorrespondenceReport:
    """How the normal subheaps map onto the congruences."""

    normal_subheaps: tuple[frozenset[int], ...]
    congruences: tuple[Partition, ...]
    relation_of: tuple[Partition, ...]
    surjective: bool
    order_isomorphic: bool


def heap_congruence_correspondence(X: FiniteAlgebra) -> HeapCorrespondenceReport:
    """S -> ~S must cover every congruence, and the preorder on normal
    subheaps must mirror refinement of the induced congruences."""
    subheaps = tuple(all_normal_subheaps(X))
    congruences = tuple(all_congruences(X))
    relations = tuple(subheap_relation(X, S) for S in subheaps)
    surjective = set(relations) == set(congruences)
    order_iso = all(
        subheap_preorder_leq(X, M, N) == relations[i].refines(relations[j])
        for i, M in enumerate(subheaps)
        for j, N in enumerate(subheaps)
    )
    return HeapCorrespondenceReport(subheaps, congruences, relations, surjective, order_iso)


@dataclass(frozen=True)
class HeapInnerReport:
    a: bool  # Y is a transversal of the omega-classes
    b: bool  # an idempotent heap endomorphism has image Y and kernel omega
    c: bool  # unique a = [b,c,d] with b omega c, d in Y
    d: bool  # unique a = [d,c,b] with b omega c, d in Y
    e: bool  # y -> [y] is an isomorphism Y -> X/omega
    action: tuple[tuple[int, ...], ...] | None
    block: tuple[int, ...] | None

    @property
    def holds(self) -> bool:
        return self.a


def heap_inner_report(
    X: FiniteAlgebra, Y, omega: Partition, e: int | None = None
) -> HeapInnerReport:
    """Evaluate the five decomposition conditions independently; on success
    build the action alpha_y(k) = [y, e, [k, y, e]] on the block of e and
    verify it is a heap morphism into the automorphism heap."""
    Y = frozenset(Y)
    if not Y or not is_subheap(X, Y):
        raise NotASubheap("Y must be a nonempty subheap")
    if not is_congruence(X, omega):
        raise NotACongruence("omega must be a congruence")

    flag_a = all(len(Y.intersection(block)) == 1 for block in omega.blocks())

    flag_b = any(
        e_.image() == Y and kernel(e_) == omega for e_ in idempotent_endomorphisms(X)
    )

    def unique_pairs(swap: bool) -> bool:
        for a in range(X.size):
            for c in sorted(Y):
                count = 0
                for b in range(X.size):
                    if not omega.same(b, c):
                        continue
                    for d in sorted(Y):
                        value = (
                            heap_op(X, d, c, b) if swap else heap_op(X, b, c, d)
                        )
                        if value == a:
                            count += 1
                if count != 1:
                    return False
        return True

    flag_c = unique_pairs(False)
    flag_d = unique_pairs(True)

    Q, proj = quotient(X, omega)
    subY, members_y = subalgebra_as_algebra(X, Y)
    canonical = tuple(proj(y) for y in members_y)
    flag_e = len(set(canonical)) == len(members_y) == Q.size and is_homomorphism(
        canonical, subY, Q
    )

    assert flag_a == flag_b == flag_c == flag_d == flag_e, "the five conditions must agree"

    action = None
    block = None
    if flag_a:
        if e is None:
            e = min(Y)
        if e not in Y:
            raise DecompositionInvalid("the basepoint must lie in Y")
        block = omega.block_of(e)
        pos = {x: i for i, x in enumerate(block)}
        action_rows = []
        for y in sorted(Y):
            row = tuple(
                pos[heap_op(X, y, e, heap_op(X, k, y, e))] for k in block
            )
            action_rows.append(row)
        action = tuple(action_rows)
        members = sorted(Y)
        # every congruence block is a subheap: t maps a block cube into the block
        block_heap, _ = subalgebra_as_algebra(X, block)
        for row in action:
            assert len(set(row)) == len(block), "each alpha_y must permute the block"
            assert is_homomorphism(row, block_heap, block_heap)
        # alpha is a heap morphism into Aut under [f,g,h] = f o g^-1 o h
        index_of = {y: i for i, y in enumerate(members)}
        for y1 in members:
            for y2 in members:
                inv2 = [0] * len(block)
                for i, v in enumerate(action[index_of[y2]]):
                    inv2[v] = i
                for y3 in members:
                    target = action[index_of[heap_op(X, y1, y2, y3)]]
                    composed = tuple(
                        action[index_of[y1]][inv2[action[index_of[y3]][k]]]
                        for k in range(len(block))
                    )
                    assert composed == target, "alpha must respect the heap operation"
        assert action[index_of[e]] == tuple(range(len(block))), "alpha_e must be id"
    return HeapInnerReport(flag_a, flag_b, flag_c, flag_d, flag_e, action, block)


@dataclass(frozen=True)
class HeapAction:
    """Base heap Y acting on K through automorphisms, trivial at y0."""

    Y: FiniteAlgebra
    K: FiniteAlgebra
    alpha: tuple[tuple[int, ...], ...]
    y0: int

    def __post_init__(self):
        if len(self.alpha) != self.Y.size:
            raise HypothesisViolation("one automorphism per element of Y required")


def _validate_heap_action(action: HeapAction):
    Y, K = action.Y, action.K
    if not is_heap(Y) or not is_heap(K):
        raise HypothesisViolation("both carriers must be heaps")
    for y, row in enumerate(action.alpha):
        if len(set(row)) != K.size or not is_homomorphism(row, K, K):
            raise HypothesisViolation(f"alpha[{y}] is not a heap automorphism")
    if action.alpha[action.y0] != tuple(range(K.size)):
        raise HypothesisViolation("alpha at the distinguished element must be id")
    for y1, y2, y3 in iproduct(range(Y.size), repeat=3):
        inv2 = [0] * K.size
        for i, v in enumerate(action.alpha[y2]):
            inv2[v] = i
        target = action.alpha[heap_op(Y, y1, y2, y3)]
        composed = tuple(action.alpha[y1][inv2[action.alpha[y3][k]]] for k in range(K.size))
        if composed != target:
            raise HypothesisViolation("alpha must be a heap morphism into Aut(K)")


@dataclass(frozen=True)
class HeapOuterResult:
    algebra: FiniteAlgebra
    action: HeapAction
    retractions: tuple[Homomorphism, ...]

    def encode(self, k: int, y: int) -> int:
        return k * self.action.Y.size + y

    def decode(self, x: int) -> tuple[int, int]:
        return divmod(x, self.action.Y.size)


def heap_outer(action: HeapAction, name: str = "outer_heap") -> HeapOuterResult:
    """Heap on K x Y with

        [(k1,y1),(k2,y2),(k3,y3)] = ([k1, a_w(k2), a_w(k3)], [y1,y2,y3])

    where w = [y1, y2, y0]. The axioms are verified (failure is a theorem
    contradiction); K x {y0} is asserted to be a normal subheap isomorphic to
    K and each (a, b) -> (k, b) an idempotent endomorphism with {k} x Y a
    subheap isomorphic to Y.
    """
    _validate_heap_action(action)
    Y, K = action.Y, action.K
    n = K.size * Y.size

    def enc(k, y):
        return k * Y.size + y

    table = []
    for x1 in range(n):
        k1, y1 = divmod(x1, Y.size)
        for x2 in range(n):
            k2, y2 = divmod(x2, Y.size)
            w = heap_op(Y, y1, y2, action.y0)
            row = action.alpha[w]
            for x3 in range(n):
                k3, y3 = divmod(x3, Y.size)
                table.append(
                    enc(
                        heap_op(K, k1, row[k2], row[k3]),
                        heap_op(Y, y1, y2, y3),
                    )
                )
    X = FiniteAlgebra(name, HEAP_SIG, n, (tuple(table),))
    if not is_heap(X):
        raise AxiomFailure("construction violated the heap axioms")
    fiber = frozenset(enc(k, action.y0) for k in range(K.size))
    assert is_normal_subheap(X, fiber), "K x {y0} must be a normal subheap"
    fiber_alg, _ = subalgebra_as_algebra(X, fiber)
    assert find_isomorphism(fiber_alg, K) is not None, "the fiber must be a copy of K"
    retractions = []
    for k in range(K.size):
        mapping = tuple(enc(k, x % Y.size) for x in range(n))
        h = Homomorphism(X, X, mapping)
        assert h.is_idempotent
        retractions.append(h)
        section = frozenset(enc(k, y) for y in range(Y.size))
        assert is_subheap(X, section)
        section_alg, _ = subalgebra_as_algebra(X, section)
        assert find_isomorphism(section_alg, Y) is not None
    return HeapOuterResult(X, action, tuple(retractions))


@dataclass(frozen=True)
class HeapDirectReport:
    a: bool  # Y is normal
    b: bool  # the canonical pairing X -> K x Y is an isomorphism
    c: bool  # [y,e,k] = [k,e,y] for all y, k
    d: bool  # an idempotent endomorphism has image K and fiber Y over e
    e: bool  # the action alpha is constantly the identity

    @property
    def holds(self) -> bool:
        return self.a


def heap_direct_criterion(
    X: FiniteAlgebra, omega: Partition, Y, e: int
) -> HeapDirectReport:
    """The five equivalent direct-product conditions for a decomposition.

    The canonical pairing sends a to (b, d) where a = [b, e, d] is the unique
    factorization with b in the block of e and d in Y.
    """
    Y = frozenset(Y)
    inner = heap_inner_report(X, Y, omega, e)
    if not inner.holds:
        raise DecompositionInvalid("X must decompose as omega x| Y")
    block = omega.block_of(e)
    pos_k = {x: i for i, x in enumerate(block)}
    pos_y = {x: i for i, x in enumerate(sorted(Y))}

    flag_a = is_normal_subheap(X, Y)

    block_alg, _ = subalgebra_as_algebra(X, block)
    sub_y, _ = subalgebra_as_algebra(X, Y)
    target = product(block_alg, sub_y)
    pairing = [-1] * X.size
    for a in range(X.size):
        found = [
            (b, d)
            for b in block
            for d in sorted(Y)
            if heap_op(X, b, e, d) == a
        ]
        assert len(found) == 1, "the [b,e,d] factorization must be unique"
        b, d = found[0]
        pairing[a] = pos_k[b] * len(Y) + pos_y[d]
    flag_b = len(set(pairing)) == X.size and is_homomorphism(tuple(pairing), X, target)

    flag_c = all(
        heap_op(X, y, e, k) == heap_op(X, k, e, y) for y in Y for k in block
    )

    flag_d = any(
        endo.image() == frozenset(block)
        and frozenset(x for x in range(X.size) if endo(x) == e) == Y
        for endo in idempotent_endomorphisms(X)
    )

    identity_row = tuple(range(len(block)))
    flag_e = all(row == identity_row for row in inner.action)

    report = HeapDirectReport(flag_a, flag_b, flag_c, flag_d, flag_e)
    assert len({flag_a, flag_b, flag_c, flag_d, flag_e}) == 1, (
        "the five conditions must agree"
    )
    return report


# -- near-trusses ------------------------------------------------------------


def truss_mul(X: FiniteAlgebra, a: int, b: int) -> int:
    return X.table("m")[a * X.size + b]


def is_near_truss(X: FiniteAlgebra, side: str) -> bool:
    if X.signature != TRUSS_SIG:
        raise SignatureMismatch("expected the near-truss signature t/3, m/2")
    if side not in ("left", "right"):
        raise SignatureMismatch("side must be 'left' or 'right'")
    name = "left_near_truss" if side == "left" else "right_near_truss"
    return check_identities(X, REGISTRY[name]).passes


def opposite_multiplication(X: FiniteAlgebra) -> FiniteAlgebra:
    """Transpose the binary table; swaps left and right distributivity."""
    n = X.size
    m = X.table("m")
    flipped = tuple(m[b * n + a] for a in range(n) for b in range(n))
    return FiniteAlgebra(f"{X.name}_op", TRUSS_SIG, n, (X.tables[0], flipped))


def truss_from_ring(R: FiniteAlgebra) -> FiniteAlgebra:
    """t(x,y,z) = x - y + z with the ring multiplication; two-sided."""
    n = R.size
    add, neg, mul = R.table("add"), R.table("neg"), R.table("mul")
    t = tuple(
        add[add[x * n + neg[y]] * n + z]
        for x in range(n)
        for y in range(n)
        for z in range(n)
    )
    return FiniteAlgebra(f"{R.name}_truss", TRUSS_SIG, n, (t, mul))


@dataclass(frozen=True)
class NearTrussReport:
    a: bool  # Y is a transversal of the omega-classes
    b: bool  # an idempotent endomorphism has image Y and kernel omega
    c: bool  # unique a = [d,c,b] with b omega c, d in Y
    d: bool  # y -> [y] is an isomorphism Y -> X/omega

    @property
    def holds(self) -> bool:
        return self.a


def near_truss_report(
    X: FiniteAlgebra, Y, omega: Partition, side: str = "left"
) -> NearTrussReport:
    """The four equivalent decomposition conditions for a near-truss."""
    if not is_near_truss(X, side):
        raise AxiomFailure(f"X is not a {side} near-truss")
    Y = frozenset(Y)
    if not Y or not all(
        heap_op(X, a, b, c) in Y and truss_mul(X, a, b) in Y
        for a in Y
        for b in Y
        for c in Y
    ):
        raise NotASubheap("Y must be a nonempty sub-near-truss")
    if not is_congruence(X, omega):
        raise NotACongruence("omega must be a congruence of both operations")

    flag_a = all(len(Y.intersection(block)) == 1 for block in omega.blocks())
    flag_b = any(
        endo.image() == Y and kernel(endo) == omega
        for endo in idempotent_endomorphisms(X)
    )

    flag_c = True
    for a in range(X.size):
        for c in sorted(Y):
            count = sum(
                1
                for b in range(X.size)
                if omega.same(b, c)
                for d in sorted(Y)
                if heap_op(X, d, c, b) == a
            )
            if count != 1:
                flag_c = False
                break
        if not flag_c:
            break

    Q, proj = quotient(X, omega)
    sub_y, members_y = subalgebra_as_algebra(X, Y)
    canonical = tuple(proj(y) for y in members_y)
    flag_d = len(set(canonical)) == len(members_y) == Q.size and is_homomorphism(
        canonical, sub_y, Q
    )

    report = NearTrussReport(flag_a, flag_b, flag_c, flag_d)
    assert len({flag_a, flag_b, flag_c, flag_d}) == 1, "the four conditions must agree"
    return report
