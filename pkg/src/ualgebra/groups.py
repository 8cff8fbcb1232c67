"""Specialized semidirect-product machinery for groups and rings."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct

from .algebras import FiniteAlgebra, is_homomorphism, quotient, subalgebra_as_algebra
from .errors import (
    CompatibilityViolation,
    ConditionViolation,
    NotAnAction,
    NotAutomorphism,
    NotNormal,
    NotSubgroup,
    PointednessViolation,
    SignatureMismatch,
)
from .inner import idempotent_endomorphisms
from .outer import ActionFamily, PointedFamily
from .partitions import Partition
from .varieties import GROUP_SIG, RING_SIG, REGISTRY, check_identities


def group_identity(G: FiniteAlgebra) -> int:
    return G.table("e")[0]


def group_mul(G: FiniteAlgebra, a: int, b: int) -> int:
    return G.table("m")[a * G.size + b]


def group_inv(G: FiniteAlgebra, a: int) -> int:
    return G.table("i")[a]


def _require_group(G: FiniteAlgebra):
    if G.signature != GROUP_SIG:
        raise SignatureMismatch("expected the group signature m/2, i/1, e/0")
    if not check_identities(G, REGISTRY["group"]).passes:
        raise SignatureMismatch(f"{G.name} fails the group identities")


def is_subgroup(G: FiniteAlgebra, S) -> bool:
    S = frozenset(S)
    if not S or group_identity(G) not in S:
        return False
    return all(group_mul(G, a, b) in S for a in S for b in S) and all(
        group_inv(G, a) in S for a in S
    )


def is_normal_subgroup(G: FiniteAlgebra, S) -> bool:
    S = frozenset(S)
    return is_subgroup(G, S) and all(
        group_mul(G, group_mul(G, g, s), group_inv(G, g)) in S
        for g in range(G.size)
        for s in S
    )


def automorphism_group(G: FiniteAlgebra) -> list[tuple[int, ...]]:
    """All automorphisms, by filtering bijections that fix the structure."""
    from itertools import permutations

    e = group_identity(G)
    out = []
    for perm in permutations(range(G.size)):
        if perm[e] != e:
            continue
        if is_homomorphism(perm, G, G):
            out.append(perm)
    return out


def group_semidirect(N: FiniteAlgebra, B: FiniteAlgebra, phi) -> FiniteAlgebra:
    """The group on N x B with (k, y)(k', y') = (k phi_y(k'), y y').

    `phi[y]` must be an automorphism table of N and y -> phi_y a homomorphism
    from B into Aut(N). Pairs are encoded k*|B| + y; the inverse and identity
    tables are derived and the result is verified against the group variety.
    """
    _require_group(N)
    _require_group(B)
    if len(phi) != B.size:
        raise NotAnAction("one automorphism per element of B required")
    for y in range(B.size):
        if len(set(phi[y])) != N.size or not is_homomorphism(phi[y], N, N):
            raise NotAutomorphism(f"phi[{y}] is not an automorphism of N")
    for y1 in range(B.size):
        for y2 in range(B.size):
            composed = tuple(phi[y1][phi[y2][k]] for k in range(N.size))
            if composed != phi[group_mul(B, y1, y2)]:
                raise NotAnAction("phi is not multiplicative")
    n = N.size * B.size

    def enc(k: int, y: int) -> int:
        return k * B.size + y

    mul = []
    for x1 in range(n):
        k1, y1 = divmod(x1, B.size)
        for x2 in range(n):
            k2, y2 = divmod(x2, B.size)
            mul.append(enc(group_mul(N, k1, phi[y1][k2]), group_mul(B, y1, y2)))
    inv = []
    for x in range(n):
        k, y = divmod(x, B.size)
        yi = group_inv(B, y)
        inv.append(enc(phi[yi][group_inv(N, k)], yi))
    e = enc(group_identity(N), group_identity(B))
    G = FiniteAlgebra(f"{N.name}_sdp_{B.name}", GROUP_SIG, n, (tuple(mul), tuple(inv), (e,)))
    report = check_identities(G, REGISTRY["group"])
    assert report.passes, "a valid action must produce a group"
    return G


@dataclass(frozen=True)
class GroupInnerReport:
    a: bool  # G = KY and K n Y = 1
    b: bool  # unique g = ky factorization
    c: bool  # unique g = yk factorization
    d: bool  # idempotent endomorphism with kernel K and image Y
    e: bool  # retraction onto Y with kernel K
    f: bool  # y -> yK is an isomorphism Y -> G/K

    @property
    def holds(self) -> bool:
        return self.a


def group_inner_equivalences(G: FiniteAlgebra, K, Y) -> GroupInnerReport:
    """Evaluate the six classical split-extension conditions independently."""
    _require_group(G)
    K, Y = frozenset(K), frozenset(Y)
    if not is_normal_subgroup(G, K):
        raise NotNormal("K must be a normal subgroup")
    if not is_subgroup(G, Y):
        raise NotSubgroup("Y must be a subgroup")
    one = group_identity(G)

    products = {group_mul(G, k, y) for k in K for y in Y}
    flag_a = products == set(G.elements) and K & Y == {one}

    flag_b = all(
        sum(1 for k in K for y in Y if group_mul(G, k, y) == g) == 1 for g in G.elements
    )
    flag_c = all(
        sum(1 for k in K for y in Y if group_mul(G, y, k) == g) == 1 for g in G.elements
    )

    flag_d = any(
        e.image() == Y and frozenset(x for x in G.elements if e(x) == one) == K
        for e in idempotent_endomorphisms(G)
    )

    # kernel K forces constancy on K-cosets and injectivity across them
    coset = Partition.from_pairs(
        G.size, [(g, group_mul(G, g, k)) for g in G.elements for k in K]
    )
    flag_e = False
    if all(len(Y.intersection(block)) == 1 for block in coset.blocks()):
        retract = [0] * G.size
        for block in coset.blocks():
            rep = next(y for y in block if y in Y)
            for x in block:
                retract[x] = rep
        flag_e = is_homomorphism(tuple(retract), G, G) and set(retract) == Y

    Q, proj = quotient(G, coset)
    subY, members_y = subalgebra_as_algebra(G, Y)
    canonical = tuple(proj(y) for y in members_y)
    flag_f = len(set(canonical)) == len(members_y) == Q.size and is_homomorphism(
        canonical, subY, Q
    )

    report = GroupInnerReport(flag_a, flag_b, flag_c, flag_d, flag_e, flag_f)
    assert len({flag_a, flag_b, flag_c, flag_d, flag_e, flag_f}) == 1, (
        "the six conditions must agree"
    )
    return report


def conjugation_action(G: FiniteAlgebra, K, Y) -> tuple[tuple[int, ...], ...]:
    """phi_y(k) = y k y^-1 restricted to K, re-indexed to sorted members.

    The result is indexed like the relabeled subalgebras: entry j is the
    action of the j-th smallest element of Y on K's sorted carrier.
    """
    members = sorted(frozenset(K))
    pos = {k: i for i, k in enumerate(members)}
    return tuple(
        tuple(
            pos[group_mul(G, group_mul(G, y, members[i]), group_inv(G, y))]
            for i in range(len(members))
        )
        for y in sorted(frozenset(Y))
    )


@dataclass(frozen=True)
class GroupSDPData:
    """Pointed tables describing one group structure on N x B.

    g[(b1, b2)] is a flat |N|x|N| table, h[b] a unary table, both pointed at
    N's identity.
    """

    N: FiniteAlgebra
    B: FiniteAlgebra
    g: tuple[tuple[tuple[int, int], tuple[int, ...]], ...]
    h: tuple[tuple[int, ...], ...]

    def g_table(self, b1: int, b2: int) -> tuple[int, ...]:
        return dict(self.g)[(b1, b2)]

    def __post_init__(self):
        one = group_identity(self.N)
        for _, table in self.g:
            if table[one * self.N.size + one] != one:
                raise PointednessViolation("g must send (1,1) to 1")
        for table in self.h:
            if table[one] != one:
                raise PointednessViolation("h must fix 1")

    @classmethod
    def build(cls, N, B, g_dict, h_list) -> "GroupSDPData":
        return cls(N, B, tuple(sorted(g_dict.items())), tuple(h_list))


def _check_51_conditions(data: GroupSDPData):
    """The three group axioms on the union, as conditions on the tables."""
    N, B = data.N, data.B
    one_n, one_b = group_identity(N), group_identity(B)
    g = dict(data.g)

    def gv(b1, b2, n1, n2):
        return g[(b1, b2)][n1 * N.size + n2]

    for b1, b2, b3 in iproduct(range(B.size), repeat=3):
        b12 = group_mul(B, b1, b2)
        b23 = group_mul(B, b2, b3)
        for n1, n2, n3 in iproduct(range(N.size), repeat=3):
            if gv(b12, b3, gv(b1, b2, n1, n2), n3) != gv(b1, b23, n1, gv(b2, b3, n2, n3)):
                raise ConditionViolation(
                    "associativity condition (1) fails",
                    condition="1",
                    witness=(b1, b2, b3, n1, n2, n3),
                )
    for b in range(B.size):
        for n in range(N.size):
            if gv(one_b, b, one_n, n) != n:
                raise ConditionViolation(
                    "left identity condition (2) fails", condition="2", witness=(b, n)
                )
    for b in range(B.size):
        binv = group_inv(B, b)
        for n in range(N.size):
            if gv(binv, b, data.h[b][n], n) != one_n:
                raise ConditionViolation(
                    "left inverse condition (3) fails", condition="3", witness=(b, n)
                )


def group_data_from_action(N: FiniteAlgebra, B: FiniteAlgebra, phi) -> GroupSDPData:
    """Synthesize the tables from an action: g(n1,n2) = n1 gamma_b1(n2) and
    h_b(n) = gamma_{b^-1}(n^-1); conditions (1)-(3) are then verified."""
    _require_group(N)
    _require_group(B)
    g = {}
    for b1 in range(B.size):
        for b2 in range(B.size):
            g[(b1, b2)] = tuple(
                group_mul(N, n1, phi[b1][n2])
                for n1 in range(N.size)
                for n2 in range(N.size)
            )
    h = []
    for b in range(B.size):
        binv = group_inv(B, b)
        h.append(tuple(phi[binv][group_inv(N, n)] for n in range(N.size)))
    data = GroupSDPData.build(N, B, g, h)
    _check_51_conditions(data)
    return data


def group_action_from_data(data: GroupSDPData) -> dict[int, tuple[int, ...]]:
    """Extract gamma_b = g_(b,1)(1,-) and verify it is an action by
    automorphisms satisfying conditions (1)-(3)."""
    N, B = data.N, data.B
    one_n, one_b = group_identity(N), group_identity(B)
    gamma = {}
    for b in range(B.size):
        table = data.g_table(b, one_b)
        gamma[b] = tuple(table[one_n * N.size + n] for n in range(N.size))
    for b, table in gamma.items():
        if len(set(table)) != N.size or not is_homomorphism(table, N, N):
            raise NotAutomorphism(f"gamma[{b}] is not an automorphism of N")
    for b1 in range(B.size):
        for b2 in range(B.size):
            composed = tuple(gamma[b1][gamma[b2][n]] for n in range(N.size))
            if composed != gamma[group_mul(B, b1, b2)]:
                raise NotAnAction("gamma is not multiplicative")
    _check_51_conditions(data)
    return gamma


def group_data_to_family(data: GroupSDPData):
    """Re-express the data as a pointed family and action family over B."""
    N, B = data.N, data.B
    one_n = group_identity(N)
    family = PointedFamily.constant(B, N.size, one_n)
    maps = {}
    for (b1, b2), table in data.g:
        maps[("m", (b1, b2))] = table
    for b in range(B.size):
        maps[("i", (b,))] = data.h[b]
    maps[("e", ())] = (one_n,)
    return family, ActionFamily.from_dict(maps)


def group_data_from_inner(G: FiniteAlgebra, K, Y) -> GroupSDPData:
    """Tables of an inner decomposition, transported along n -> nb:
    g(n1,n2) = (n1 b1)(n2 b2)(b1 b2)^-1 and h_b(n) = (n b)^-1 b."""
    _require_group(G)
    report = group_inner_equivalences(G, K, Y)
    assert report.holds, "need a genuine decomposition"
    members_k = sorted(frozenset(K))
    members_y = sorted(frozenset(Y))
    pos_k = {k: i for i, k in enumerate(members_k)}
    pos_y = {y: i for i, y in enumerate(members_y)}
    N, _ = subalgebra_as_algebra(G, frozenset(K), name=f"{G.name}_K")
    B, _ = subalgebra_as_algebra(G, frozenset(Y), name=f"{G.name}_Y")
    g = {}
    for b1 in members_y:
        for b2 in members_y:
            b12_inv = group_inv(G, group_mul(G, b1, b2))
            table = []
            for n1 in members_k:
                for n2 in members_k:
                    value = group_mul(
                        G,
                        group_mul(G, group_mul(G, n1, b1), group_mul(G, n2, b2)),
                        b12_inv,
                    )
                    table.append(pos_k[value])
            g[(pos_y[b1], pos_y[b2])] = tuple(table)
    h = []
    for b in members_y:
        table = tuple(
            pos_k[group_mul(G, group_inv(G, group_mul(G, n, b)), b)] for n in members_k
        )
        h.append(table)
    return GroupSDPData.build(N, B, g, h)


@dataclass(frozen=True)
class RingActionPair:
    """Two compatible one-sided actions of S on K, as unary tables per s."""

    K: FiniteAlgebra
    S: FiniteAlgebra
    lam: tuple[tuple[int, ...], ...]
    rho: tuple[tuple[int, ...], ...]


def _require_ring(R: FiniteAlgebra):
    if R.signature != RING_SIG:
        raise SignatureMismatch("expected the ring signature add/2, neg/1, zero/0, mul/2")
    if not check_identities(R, REGISTRY["ring"]).passes:
        raise SignatureMismatch(f"{R.name} fails the ring identities")


def _check_ring_pair(pair: RingActionPair):
    K, S = pair.K, pair.S
    lam, rho = pair.lam, pair.rho
    kadd = K.table("add")
    kmul = K.table("mul")
    sadd = S.table("add")
    smul = S.table("mul")

    def fail(name: str, witness):
        raise CompatibilityViolation(f"ring action condition {name} fails", name, witness)

    for s in range(S.size):
        for x, y in iproduct(range(K.size), repeat=2):
            if lam[s][kadd[x * K.size + y]] != kadd[lam[s][x] * K.size + lam[s][y]]:
                fail("lambda additive in K", (s, x, y))
            if rho[s][kadd[x * K.size + y]] != kadd[rho[s][x] * K.size + rho[s][y]]:
                fail("rho additive in K", (s, x, y))
            if lam[s][kmul[x * K.size + y]] != kmul[lam[s][x] * K.size + y]:
                fail("lambda right K-linear", (s, x, y))
            if rho[s][kmul[x * K.size + y]] != kmul[x * K.size + rho[s][y]]:
                fail("rho left K-linear", (s, x, y))
            if kmul[rho[s][x] * K.size + y] != kmul[x * K.size + lam[s][y]]:
                fail("rho(s)(x)y = x lambda(s)(y)", (s, x, y))
    for s, t in iproduct(range(S.size), repeat=2):
        st_add = sadd[s * S.size + t]
        st_mul = smul[s * S.size + t]
        for x in range(K.size):
            if lam[st_add][x] != kadd[lam[s][x] * K.size + lam[t][x]]:
                fail("lambda additive in S", (s, t, x))
            if rho[st_add][x] != kadd[rho[s][x] * K.size + rho[t][x]]:
                fail("rho additive in S", (s, t, x))
            if lam[st_mul][x] != lam[s][lam[t][x]]:
                fail("lambda multiplicative", (s, t, x))
            if rho[st_mul][x] != rho[t][rho[s][x]]:
                fail("rho antimultiplicative", (s, t, x))
            if lam[s][rho[t][x]] != rho[t][lam[s][x]]:
                fail("lambda and rho commute", (s, t, x))


def ring_semidirect(pair: RingActionPair) -> FiniteAlgebra:
    """Ring on K x S: componentwise addition and the twisted multiplication
    (k,s)(k',s') = (kk' + lambda_s(k') + rho_s'(k), ss').

    All compatibility conditions are verified before construction and the
    result is checked against the ring identities (associativity included).
    """
    _require_ring(pair.K)
    _require_ring(pair.S)
    K, S = pair.K, pair.S
    if len(pair.lam) != S.size or len(pair.rho) != S.size:
        raise CompatibilityViolation("one table per element of S required", "shape", None)
    _check_ring_pair(pair)
    n = K.size * S.size
    kadd, kneg, kmul = K.table("add"), K.table("neg"), K.table("mul")
    sadd, sneg, smul = S.table("add"), S.table("neg"), S.table("mul")

    def enc(k, s):
        return k * S.size + s

    add, neg, mul = [], [], []
    for x1 in range(n):
        k1, s1 = divmod(x1, S.size)
        neg.append(enc(kneg[k1], sneg[s1]))
        for x2 in range(n):
            k2, s2 = divmod(x2, S.size)
            add.append(enc(kadd[k1 * K.size + k2], sadd[s1 * S.size + s2]))
            twisted = kadd[
                kadd[kmul[k1 * K.size + k2] * K.size + pair.lam[s1][k2]] * K.size
                + pair.rho[s2][k1]
            ]
            mul.append(enc(twisted, smul[s1 * S.size + s2]))
    zero = enc(K.table("zero")[0], S.table("zero")[0])
    R = FiniteAlgebra(
        f"{pair.K.name}_rsdp_{pair.S.name}",
        RING_SIG,
        n,
        (tuple(add), tuple(neg), (zero,), tuple(mul)),
    )
    report = check_identities(R, REGISTRY["ring"])
    assert report.passes, "compatible actions must produce a ring"
    return R
