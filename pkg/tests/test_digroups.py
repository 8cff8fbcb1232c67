import pytest

from ualgebra.algebras import find_isomorphism, product
from ualgebra.catalog import cyclic_group, symmetric_group_s3
from ualgebra.digroups import (
    Digroup,
    DigroupActionTriple,
    all_digroups,
    all_ideals,
    all_skew_braces,
    brace_center,
    brace_commutator,
    brace_ideal_generated,
    digroup_direct_criterion,
    digroup_extract_actions,
    digroup_from_tables,
    digroup_inner_report,
    digroup_outer,
    ideal_partition,
    is_ideal,
    is_subdigroup,
    pair_identities,
    skew_brace_check,
    skew_brace_outer_condition,
    skew_brace_reflection,
    sub_digroup,
    trivial_digroup,
    trivial_triple,
)
from ualgebra.errors import AxiomFailure, HypothesisViolation, NotIdeal
from ualgebra.varieties import REGISTRY, check_identities

def klein_z4_digroup() -> Digroup:
    """Star = Z4, circ = the Klein table on the same carrier, identity 0."""
    z4 = cyclic_group(4).table("m")
    klein = tuple(((a >> 1) ^ (b >> 1)) << 1 | ((a & 1) ^ (b & 1)) for a in range(4) for b in range(4))
    return digroup_from_tables(z4, klein, "z4_klein")


def test_digroup_from_tables_validates():
    D = klein_z4_digroup()
    assert D.one == 0
    assert check_identities(D.algebra, REGISTRY["digroup"]).passes
    z4 = cyclic_group(4).table("m")
    shifted = tuple((a + b + 1) % 4 for a in range(4) for b in range(4))  # identity 3
    with pytest.raises(AxiomFailure):
        digroup_from_tables(z4, shifted)


def test_trivial_digroup_on_s3():
    D = trivial_digroup(symmetric_group_s3())
    assert skew_brace_check(D).lsb  # the identity reduces to associativity
    assert is_subdigroup(D, {0, 1})
    assert is_ideal(D, {0, 3, 4})
    assert not is_ideal(D, {0, 1})


def test_ideal_partition_matches_cosets():
    D = trivial_digroup(symmetric_group_s3())
    part = ideal_partition(D, {0, 3, 4})
    assert sorted(part.blocks()) == [(0, 3, 4), (1, 2, 5)]


def test_digroup_inner_report_s3():
    D = trivial_digroup(symmetric_group_s3())
    report = digroup_inner_report(D, {0, 1}, {0, 3, 4})
    assert report.conditions == (True,) * 7
    assert report.factorization_formulas


def test_digroup_inner_report_trivial_and_failing():
    D = trivial_digroup(cyclic_group(4))
    assert digroup_inner_report(D, {0}, set(range(4))).holds
    report = digroup_inner_report(D, {0, 2}, {0, 2})
    assert report.conditions == (False,) * 7
    assert report.factorization_formulas is None


def test_inner_report_requires_ideal():
    D = trivial_digroup(symmetric_group_s3())
    with pytest.raises(NotIdeal):
        digroup_inner_report(D, {0, 3, 4}, {0, 1})


def test_outer_trivial_triple_is_direct_product():
    Y = trivial_digroup(cyclic_group(2))
    K = trivial_digroup(cyclic_group(3))
    triple = trivial_triple(Y, K)
    D = digroup_outer(triple)
    assert D.n == 6
    assert digroup_direct_criterion(triple)
    assert D.algebra.tables == product(Y.algebra, K.algebra).tables


def test_outer_with_conjugation_style_action():
    Y = trivial_digroup(cyclic_group(2))
    K = trivial_digroup(cyclic_group(3))
    neg = (0, 2, 1)
    ident = (0, 1, 2)
    triple = DigroupActionTriple(Y, K, (ident, neg), (ident, neg), (ident, ident))
    D = digroup_outer(triple)
    s3 = symmetric_group_s3()
    from ualgebra.digroups import circ_reduct, star_reduct

    assert find_isomorphism(star_reduct(D), s3) is not None
    assert find_isomorphism(circ_reduct(D), s3) is not None
    assert not digroup_direct_criterion(triple)
    assert pair_identities(triple, D) == (True, True, True, True)


def test_outer_with_nontrivial_lambda_only():
    Y = trivial_digroup(cyclic_group(2))
    K = trivial_digroup(cyclic_group(3))
    ident = (0, 1, 2)
    neg = (0, 2, 1)
    triple = DigroupActionTriple(Y, K, (ident, ident), (ident, ident), (ident, neg))
    D = digroup_outer(triple)
    assert check_identities(D.algebra, REGISTRY["digroup"]).passes
    # the two reducts now differ
    assert D.algebra.tables[0] != D.algebra.tables[2]
    assert pair_identities(triple, D) == (True, True, True, True)
    assert not digroup_direct_criterion(triple)


def test_outer_accepts_lambda_that_moves_the_unit():
    # a permutation family pointed only at 1_Y still yields a digroup, but
    # the mixed-pair identities 3 and 4 fail
    Y = trivial_digroup(cyclic_group(2))
    K = trivial_digroup(cyclic_group(3))
    ident = (0, 1, 2)
    cycle = (1, 2, 0)  # does not fix K's identity
    triple = DigroupActionTriple(Y, K, (ident, ident), (ident, ident), (ident, cycle))
    D = digroup_outer(triple)
    assert check_identities(D.algebra, REGISTRY["digroup"]).passes
    flags = pair_identities(triple, D)
    assert flags[0] and flags[1]
    assert not flags[2] and not flags[3]


def test_outer_rejects_bad_hypotheses():
    Y = trivial_digroup(cyclic_group(2))
    K = trivial_digroup(cyclic_group(3))
    ident = (0, 1, 2)
    with pytest.raises(HypothesisViolation):
        DigroupActionTriple(Y, K, (ident, (0, 0, 0)), (ident, ident), (ident, ident))
        digroup_outer(
            DigroupActionTriple(Y, K, (ident, (0, 0, 0)), (ident, ident), (ident, ident))
        )
    with pytest.raises(HypothesisViolation):
        # Lambda not pointed at the identity of Y
        digroup_outer(DigroupActionTriple(Y, K, (ident, ident), (ident, ident), ((0, 2, 1), ident)))


def test_extract_actions_s3_sign_decomposition():
    D = trivial_digroup(symmetric_group_s3())
    triple, alpha = digroup_extract_actions(D, {0, 1}, {0, 3, 4})
    # trivial digroup: both conjugation families coincide and Lambda is trivial
    assert triple.phi_star == triple.phi_circ
    assert all(row == (0, 1, 2) for row in triple.Lambda)
    assert len(set(alpha)) == 6


def test_extract_actions_abelian_case_is_trivial():
    D = trivial_digroup(cyclic_group(6))
    triple, _ = digroup_extract_actions(D, {0, 3}, {0, 2, 4})
    ident = tuple(range(3))
    assert all(row == ident for row in triple.phi_star)
    assert all(row == ident for row in triple.phi_circ)
    assert all(row == ident for row in triple.Lambda)


def test_extract_actions_degenerate_base():
    D = trivial_digroup(cyclic_group(4))
    triple, alpha = digroup_extract_actions(D, {0}, set(range(4)))
    assert triple.Y.n == 1
    assert alpha == (0, 1, 2, 3)


def test_extract_actions_on_mixed_digroup():
    D = klein_z4_digroup()
    # find a proper decomposition if one exists; otherwise use the trivial one
    report = digroup_inner_report(D, {0}, set(range(4)))
    assert report.holds
    triple, alpha = digroup_extract_actions(D, {0}, set(range(4)))
    assert triple.K.n == 4


def test_prop_equivalence_sweep_over_small_digroups():
    for n in (2, 3, 4, 5, 6):
        for D in all_digroups(n):
            subs = [
                frozenset(s)
                for mask in range(1, 2**D.n)
                for s in [frozenset(i for i in range(D.n) if mask >> i & 1)]
                if is_subdigroup(D, s)
            ]
            ideals = all_ideals(D)
            for B in subs:
                for I in ideals:
                    report = digroup_inner_report(D, B, I)
                    assert len(set(report.conditions)) == 1


def test_bachi_flags_agree_on_small_corpus():
    for n in (2, 3, 4):
        for D in all_digroups(n):
            skew_brace_check(D)  # asserts lsb == lambda-morphism internally


def test_klein_z4_digroup_brace_status():
    report = skew_brace_check(klein_z4_digroup())
    assert report.lsb == report.lambda_morphism


def test_skew_brace_outer_condition_cross_check():
    Y = trivial_digroup(cyclic_group(2))
    K = trivial_digroup(cyclic_group(3))
    ident = (0, 1, 2)
    neg = (0, 2, 1)
    # all eight valid triples with Lambda a homomorphism (Y,o) -> Aut(K,*)
    outcomes = {}
    for ps in [(ident, ident), (ident, neg)]:
        for pc in [(ident, ident), (ident, neg)]:
            for lam in [(ident, ident), (ident, neg)]:
                triple = DigroupActionTriple(Y, K, ps, pc, lam)
                outcomes[(ps[1], pc[1], lam[1])] = skew_brace_outer_condition(triple)
    assert outcomes[(ident, ident, ident)] is True
    assert outcomes[(neg, ident, ident)] is True
    assert outcomes[(ident, neg, neg)] is True
    assert outcomes[(ident, ident, neg)] is False


def test_skew_brace_outer_condition_requires_braces():
    bad = next(D for D in all_digroups(4) if not skew_brace_check(D).lsb)
    Y = trivial_digroup(cyclic_group(2))
    ident4 = tuple(range(4))
    triple = DigroupActionTriple(Y, bad, (ident4, ident4), (ident4, ident4), (ident4, ident4))
    with pytest.raises(HypothesisViolation):
        skew_brace_outer_condition(triple)


def test_brace_ideal_generated():
    D = trivial_digroup(symmetric_group_s3())
    assert brace_ideal_generated(D, {0}) == {0}
    assert brace_ideal_generated(D, {3}) == {0, 3, 4}
    assert brace_ideal_generated(D, {1}) == frozenset(range(6))


def test_reflection_of_a_brace_is_itself():
    D = trivial_digroup(symmetric_group_s3())
    Q, ideal = skew_brace_reflection(D)
    assert ideal == {0}
    assert Q.n == 6


def test_reflection_of_a_non_brace_is_proper():
    bad = next(D for D in all_digroups(4) if not skew_brace_check(D).lsb)
    Q, ideal = skew_brace_reflection(bad)
    assert len(ideal) > 1
    assert skew_brace_check(Q).lsb


def test_commutator_on_trivial_braces():
    abelian = trivial_digroup(cyclic_group(4))
    everything = frozenset(range(4))
    assert brace_commutator(abelian, everything, everything) == {0}
    assert brace_center(abelian) == everything

    s3 = trivial_digroup(symmetric_group_s3())
    all6 = frozenset(range(6))
    assert brace_commutator(s3, all6, all6) == {0, 3, 4}
    assert brace_center(s3) == {0}


def test_commutator_laws_on_small_braces():
    for n in (2, 3, 4):
        for D in all_skew_braces(n):
            ideals = all_ideals(D)
            for I in ideals:
                for J in ideals:
                    assert brace_commutator(D, I, J) == brace_commutator(D, J, I)
            for I in ideals:
                for J in ideals:
                    for K in ideals:
                        jk = brace_ideal_generated(D, J | K)
                        lhs = brace_commutator(D, I, jk)
                        rhs = brace_ideal_generated(
                            D, brace_commutator(D, I, J) | brace_commutator(D, I, K)
                        )
                        assert lhs == rhs


def test_sub_digroup_relabeling():
    D = trivial_digroup(symmetric_group_s3())
    sub, members = sub_digroup(D, {0, 3, 4})
    assert members == (0, 3, 4)
    assert sub.n == 3


def test_digroup_corpus_counts():
    assert len(all_digroups(1)) == 1
    assert len(all_digroups(2)) == 1
    assert len(all_digroups(3)) == 1
    assert len(all_digroups(4)) == 5
    assert len(all_skew_braces(4)) == 4
    assert len(all_skew_braces(6)) == 6
