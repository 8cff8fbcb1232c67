from hypothesis import given, settings, strategies as st

from ualgebra.algebras import Homomorphism, quotient
from ualgebra.catalog import (
    chain_lattice,
    cyclic_group,
    cyclic_heap,
    klein_group,
    mult_semigroup,
    symmetric_group_s3,
)
from ualgebra.congruences import (
    all_congruences,
    congruence_generated,
    is_congruence,
    kernel,
)
from ualgebra.errors import NotACongruence, SizeLimitExceeded
from ualgebra.partitions import Partition, all_set_partitions

import pytest


def test_trivial_partitions_are_congruences():
    for A in [cyclic_group(4), chain_lattice(3), mult_semigroup(4)]:
        assert is_congruence(A, Partition.identity(A.size))
        assert is_congruence(A, Partition.total(A.size))


def test_non_congruence_detected_on_z4():
    z4 = cyclic_group(4)
    assert not is_congruence(z4, Partition.from_blocks(4, [[0, 1], [2, 3]]))
    assert is_congruence(z4, Partition.from_blocks(4, [[0, 2], [1, 3]]))


def test_congruence_generated_on_z4():
    z4 = cyclic_group(4)
    assert congruence_generated(z4, [(0, 2)]) == Partition.from_blocks(4, [[0, 2], [1, 3]])
    assert congruence_generated(z4, []) == Partition.identity(4)
    assert congruence_generated(z4, [(3, 3)]) == Partition.identity(4)


def test_all_congruences_counts():
    assert len(all_congruences(cyclic_group(4))) == 3
    assert len(all_congruences(symmetric_group_s3())) == 3
    assert len(all_congruences(chain_lattice(2))) == 2


def test_all_congruences_matches_partition_scan():
    # independent oracle: filter every partition of the carrier
    for A in [cyclic_group(4), chain_lattice(3), mult_semigroup(4), cyclic_heap(4)]:
        scanned = {p for p in all_set_partitions(A.size) if is_congruence(A, p)}
        assert set(all_congruences(A)) == scanned


def test_all_congruences_closed_under_join_and_meet():
    for A in [cyclic_group(6), symmetric_group_s3(), chain_lattice(4), klein_group()]:
        found = set(all_congruences(A))
        for a in found:
            for b in found:
                assert a.join(b) in found
                assert a.meet(b) in found


def test_congruence_iff_quotient_succeeds():
    for A in [cyclic_group(4), mult_semigroup(4), chain_lattice(3)]:
        for p in all_set_partitions(A.size):
            if is_congruence(A, p):
                quotient(A, p)
            else:
                with pytest.raises(NotACongruence):
                    quotient(A, p)


def test_enumeration_cap():
    with pytest.raises(SizeLimitExceeded):
        all_congruences(cyclic_group(9))


def test_kernels():
    z4 = cyclic_group(4)
    ident = Homomorphism(z4, z4, (0, 1, 2, 3))
    assert kernel(ident) == Partition.identity(4)
    const = Homomorphism(z4, z4, (0, 0, 0, 0))
    assert kernel(const) == Partition.total(4)
    s3 = symmetric_group_s3()
    # retraction onto {identity, transposition} along the sign of the permutation
    sign = Homomorphism(s3, s3, (0, 1, 1, 0, 0, 1))
    blocks = sorted(kernel(sign).blocks())
    assert blocks == [(0, 3, 4), (1, 2, 5)]
    assert is_congruence(s3, kernel(sign))


@settings(max_examples=40, deadline=None)
@given(pairs=st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5)), max_size=4))
def test_congruence_generated_is_a_closure_operator(pairs):
    A = cyclic_group(6)
    c = congruence_generated(A, pairs)
    assert is_congruence(A, c)
    # extensive
    assert all(c.same(a, b) for a, b in pairs)
    # idempotent: regenerating from the relation pairs changes nothing
    regen = congruence_generated(
        A, [(i, c.rep[i]) for i in range(6)]
    )
    assert regen == c
    # monotone: adding a pair only coarsens
    coarser = congruence_generated(A, list(pairs) + [(0, 3)])
    assert c.refines(coarser)
