"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest -s tests/test_acceptance.py` to see the per-criterion lines.
Expected values marked as frozen were computed with the independent oracles
in oracles.py before the main implementation existed.
"""

import time
from contextlib import contextmanager
from itertools import product as iproduct
from random import Random

from ualgebra.algebras import (
    all_subalgebras,
    find_isomorphism,
    is_homomorphism,
    product,
)
from ualgebra.catalog import (
    cyclic_group,
    groups_up_to_8,
    klein_group,
    standard_corpus,
    symmetric_group_s3,
)
from ualgebra.congruences import all_congruences
from ualgebra.digroups import (
    DigroupActionTriple,
    all_digroups,
    all_ideals,
    all_skew_braces,
    brace_commutator,
    brace_ideal_generated,
    circ_reduct,
    digroup_direct_criterion,
    digroup_inner_report,
    digroup_outer,
    is_subdigroup,
    pair_identities,
    skew_brace_check,
    star_reduct,
)
from ualgebra.envcat import (
    TermTupleMorphism,
    TupleObject,
    _term_table,
    check_functoriality,
    check_identity_law,
    functor_object,
)
from ualgebra.groups import (
    automorphism_group,
    group_action_from_data,
    group_data_from_action,
    group_data_to_family,
    group_semidirect,
)
from ualgebra.heaps import (
    group_from_heap,
    heap_congruence_correspondence,
    heap_direct_criterion,
    heap_from_group,
    heap_inner_report,
    is_subheap,
)
from ualgebra.inner import (
    count_transversal_pairs,
    decomposition_from_idempotent,
    idempotent_endomorphisms,
    verify_inner_sdp,
)
from ualgebra.outer import build_outer_product, inner_to_outer
from ualgebra.terms import App, Var, eval_term, term_depth
from ualgebra.varieties import REGISTRY, check_identities

from oracles import FROZEN_IDEMPOTENT_COUNTS, brute_force_idempotent_endos


@contextmanager
def criterion(number: int, description: str, budget: float | None = None):
    start = time.monotonic()
    try:
        yield
    except BaseException:
        print(f"criterion {number:02d} FAIL: {description}")
        raise
    elapsed = time.monotonic() - start
    assert budget is None or elapsed < budget, (
        f"criterion {number} exceeded its {budget}s budget ({elapsed:.1f}s)"
    )
    print(f"criterion {number:02d} PASS: {description} ({elapsed:.2f}s)")


def small_corpus():
    return [(A, V) for A, V in standard_corpus() if A.size <= 6]


def test_criterion_01_idempotent_counts_match_brute_force():
    with criterion(1, "idempotent endomorphism counts match the n^n oracle", budget=5.0):
        named = {
            "z4": cyclic_group(4),
            "z6": cyclic_group(6),
            "s3": symmetric_group_s3(),
            "klein": klein_group(),
        }
        for name, algebra in named.items():
            oracle = brute_force_idempotent_endos(algebra)
            ours = {e.map for e in idempotent_endomorphisms(algebra)}
            assert ours == oracle, f"{name}: enumeration disagrees with the oracle"
            assert len(oracle) == FROZEN_IDEMPOTENT_COUNTS[name], (
                f"{name}: oracle count drifted from the frozen value"
            )


def test_criterion_02_decomposition_bijection_on_corpus():
    with criterion(
        2, "idempotent endomorphisms biject with transversal (B, omega) pairs", budget=30.0
    ):
        corpus = small_corpus()
        assert len(corpus) >= 10
        kinds = {V for _, V in corpus}
        assert {"group", "lattice", "semigroup", "heap"} <= kinds
        for A, _ in corpus:
            subs = all_subalgebras(A)
            congs = all_congruences(A)
            assert len(idempotent_endomorphisms(A)) == count_transversal_pairs(
                A, subs, congs
            ), A.name


def test_criterion_03_condition_equivalences():
    with criterion(
        3, "four-way and seven-way decomposition conditions never disagree", budget=60.0
    ):
        for A, _ in small_corpus():
            for B in all_subalgebras(A):
                for omega in all_congruences(A):
                    report = verify_inner_sdp(A, B, omega)
                    assert report.a == report.b == report.c == report.d, A.name
        for n in (1, 2, 3, 4):
            for D in all_digroups(n):
                subdigroups = [
                    frozenset(s)
                    for mask in range(1, 2**D.n)
                    for s in [frozenset(i for i in range(D.n) if mask >> i & 1)]
                    if is_subdigroup(D, s)
                ]
                for B in subdigroups:
                    for I in all_ideals(D):
                        report = digroup_inner_report(D, B, I)
                        assert len(set(report.conditions)) == 1
                        if report.holds:
                            assert report.factorization_formulas


def test_criterion_04_inner_outer_roundtrip():
    with criterion(4, "every inner decomposition rebuilds to an isomorphic outer product", budget=30.0):
        for A, vname in small_corpus():
            V = REGISTRY[vname]
            for e in idempotent_endomorphisms(A):
                dec = decomposition_from_idempotent(A, e)
                family, actions, iso = inner_to_outer(dec)
                rebuilt = build_outer_product(family, actions, V, name=f"{A.name}_re")
                assert len(set(iso)) == A.size
                assert is_homomorphism(iso, A, rebuilt.algebra)


def test_criterion_05_group_instantiation():
    with criterion(5, "group semidirect products and the action-data bijection", budget=10.0):
        z3, z2 = cyclic_group(3), cyclic_group(2)
        nontrivial = group_semidirect(z3, z2, ((0, 1, 2), (0, 2, 1)))
        assert find_isomorphism(nontrivial, symmetric_group_s3()) is not None
        trivial = group_semidirect(z3, z2, ((0, 1, 2), (0, 1, 2)))
        assert find_isomorphism(trivial, cyclic_group(6)) is not None

        groups4 = [cyclic_group(n) for n in (1, 2, 3, 4)] + [klein_group()]
        for N in groups4:
            auts = automorphism_group(N)
            index = {a: i for i, a in enumerate(auts)}
            for B in groups4:
                mul = B.table("m")
                for choice in iproduct(range(len(auts)), repeat=B.size):
                    if any(
                        index[
                            tuple(auts[choice[a]][auts[choice[b]][x]] for x in range(N.size))
                        ]
                        != choice[mul[a * B.size + b]]
                        for a in range(B.size)
                        for b in range(B.size)
                    ):
                        continue
                    phi = tuple(auts[i] for i in choice)
                    # conditions (1)-(3) are verified inside the constructor
                    data = group_data_from_action(N, B, phi)
                    gamma = group_action_from_data(data)
                    assert tuple(gamma[b] for b in range(B.size)) == phi
                    assert group_data_from_action(N, B, phi) == data


def _antihomomorphisms(Y_table, ny, auts, aut_index):
    """All maps y -> auts with f(y1 y2) = f(y2) o f(y1)."""
    out = []
    for choice in iproduct(range(len(auts)), repeat=ny):
        if all(
            aut_index[tuple(auts[choice[y2]][auts[choice[y1]][k]] for k in range(len(auts[0])))]
            == choice[Y_table[y1 * ny + y2]]
            for y1 in range(ny)
            for y2 in range(ny)
        ):
            out.append(tuple(auts[i] for i in choice))
    return out


def test_criterion_06_outer_digroup_construction_as_a_property():
    with criterion(
        6, "200 randomized action triples all build digroups with the pair identities", budget=60.0
    ):
        rng = Random(20250806)
        digroup_pool = [D for n in (1, 2, 3, 4) for D in all_digroups(n)]
        seen_direct = {True: 0, False: 0}
        built = 0
        while built < 200:
            Y = rng.choice(digroup_pool)
            K = rng.choice(digroup_pool)
            star_auts = automorphism_group(star_reduct(K))
            circ_auts = automorphism_group(circ_reduct(K))
            star_index = {a: i for i, a in enumerate(star_auts)}
            circ_index = {a: i for i, a in enumerate(circ_auts)}
            phis = _antihomomorphisms(Y.algebra.tables[0], Y.n, star_auts, star_index)
            phic = _antihomomorphisms(Y.algebra.tables[2], Y.n, circ_auts, circ_index)
            phi_star = rng.choice(phis)
            phi_circ = rng.choice(phic)
            lam = []
            for y in range(Y.n):
                if y == Y.one:
                    lam.append(tuple(range(K.n)))
                else:
                    rest = [k for k in range(K.n) if k != K.one]
                    rng.shuffle(rest)
                    perm = [0] * K.n
                    perm[K.one] = K.one
                    spots = [k for k in range(K.n) if k != K.one]
                    for spot, value in zip(spots, rest):
                        perm[spot] = value
                    lam.append(tuple(perm))
            triple = DigroupActionTriple(Y, K, phi_star, phi_circ, tuple(lam))
            D = digroup_outer(triple)
            assert check_identities(D.algebra, REGISTRY["digroup"]).passes
            assert pair_identities(triple, D) == (True, True, True, True)
            direct = digroup_direct_criterion(triple)
            expected = D.algebra.tables == product(Y.algebra, K.algebra).tables
            assert direct == expected
            seen_direct[direct] += 1
            built += 1
        assert seen_direct[True] > 0 and seen_direct[False] > 0, (
            "both directions of the direct-product criterion must be exercised"
        )


def test_criterion_07_brace_identity_matches_lambda_morphism():
    with criterion(7, "brace identity equals the lambda-morphism condition on the corpus"):
        for n in (1, 2, 3, 4):
            for D in all_digroups(n):
                report = skew_brace_check(D)
                assert report.lsb == report.lambda_morphism


def test_criterion_08_commutator_laws():
    with criterion(8, "commutator symmetry and join distributivity on all small braces"):
        for n in range(1, 7):
            for D in all_skew_braces(n):
                ideals = all_ideals(D)
                for I in ideals:
                    for J in ideals:
                        assert brace_commutator(D, I, J) == brace_commutator(D, J, I)
                for I in ideals:
                    for J in ideals:
                        for K in ideals:
                            join = brace_ideal_generated(D, J | K)
                            lhs = brace_commutator(D, I, join)
                            rhs = brace_ideal_generated(
                                D,
                                brace_commutator(D, I, J) | brace_commutator(D, I, K),
                            )
                            assert lhs == rhs


def _heap_corpus():
    heaps = [heap_from_group(G) for G in groups_up_to_8() if G.size <= 6]
    return heaps


def test_criterion_09_heap_suite():
    with criterion(9, "heap conversions, decomposition reports and the congruence map", budget=60.0):
        for G in groups_up_to_8():
            X = heap_from_group(G)
            back = group_from_heap(X, G.table("e")[0])
            assert back.tables == G.tables
        for X in _heap_corpus():
            subheaps = [
                frozenset(s)
                for mask in range(1, 2**X.size)
                for s in [frozenset(i for i in range(X.size) if mask >> i & 1)]
                if is_subheap(X, s)
            ]
            for Y in subheaps:
                for omega in all_congruences(X):
                    report = heap_inner_report(X, Y, omega)
                    flags = (report.a, report.b, report.c, report.d, report.e)
                    assert len(set(flags)) == 1
                    if report.holds:
                        for e in sorted(Y):
                            direct = heap_direct_criterion(X, omega, Y, e)
                            assert len(
                                {direct.a, direct.b, direct.c, direct.d, direct.e}
                            ) == 1
            correspondence = heap_congruence_correspondence(X)
            assert correspondence.surjective
            assert correspondence.order_isomorphic


def _depth_limited_terms(sig, var_count, max_depth=2):
    """Every term of depth <= max_depth over x0..x(var_count-1)."""
    by_depth = [[Var(j) for j in range(var_count)]]
    pool = list(by_depth[0])
    for depth in range(1, max_depth + 1):
        level = []
        shallower = [t for d in range(depth) for t in by_depth[d]]
        for name, arity in sig.symbols:
            for args in iproduct(shallower, repeat=arity):
                if arity == 0 or max(term_depth(a) for a in args) == depth - 1:
                    candidate = App(name, tuple(args))
                    if term_depth(candidate) == depth:
                        level.append(candidate)
        by_depth.append(level)
        pool.extend(level)
    return pool


def test_criterion_10_functor_laws_on_the_twisted_product():
    with criterion(10, "functor laws hold as exact tables over depth-2 terms", budget=10.0):
        data = group_data_from_action(
            cyclic_group(3), cyclic_group(2), ((0, 1, 2), (0, 2, 1))
        )
        family, actions = group_data_to_family(data)
        F = build_outer_product(family, actions, REGISTRY["group"])
        base = F.family.base
        objects = [
            TupleObject(base, elems)
            for k in (0, 1, 2)
            for elems in iproduct(range(base.size), repeat=k)
        ]
        for obj in objects:
            assert check_identity_law(F, obj)

        pools = {k: _depth_limited_terms(base.signature, k) for k in (0, 1, 2)}

        # Composition is checked per component: a tuple morphism's table is
        # the tuple of its component tables and composition acts slotwise, so
        # G(q o p) = G(q) o G(p) for all tuples iff it holds for every single
        # component q over every argument tuple p. Argument terms are
        # deduplicated by their induced (value, table) signature, which is
        # sound because the recursive table construction consults argument
        # subtrees only through those two data.
        for src in objects:
            classes: dict[int, dict] = {}
            for t in pools[len(src)]:
                value = eval_term(t, base, src.elements)
                table, _ = _term_table(F, src, t)
                classes.setdefault(value, {})[table] = t
            for mid in objects:
                if any(v not in classes for v in mid.elements):
                    continue
                slot_reps = [list(classes[v].values()) for v in mid.elements]
                mid_product = functor_object(F, mid)
                for q in pools[len(mid)]:
                    q_table, q_value = _term_table(F, mid, q)
                    # basepoint preservation is inherited from the actions
                    assert (
                        q_table[mid_product.flat_basepoint()]
                        == F.family.fibers[q_value][1]
                    )
                    for p_terms in iproduct(*slot_reps):
                        p = TermTupleMorphism(src, mid, tuple(p_terms))
                        q_m = TermTupleMorphism(
                            mid, TupleObject(base, (q_value,)), (q,)
                        )
                        assert check_functoriality(F, p, q_m)
