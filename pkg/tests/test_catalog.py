from math import factorial

from ualgebra.algebras import find_isomorphism, is_isomorphic
from ualgebra.catalog import (
    all_group_tables,
    cyclic_group,
    dihedral_group,
    group_algebra_from_table,
    groups_up_to_8,
    quaternion_group,
    symmetric_group_s3,
)
from ualgebra.varieties import REGISTRY, check_identities


def test_catalog_groups_pass_the_group_identities():
    for G in groups_up_to_8():
        assert check_identities(G, REGISTRY["group"]).passes, G.name


def test_catalog_groups_are_pairwise_non_isomorphic():
    groups = groups_up_to_8()
    for i, A in enumerate(groups):
        for B in groups[i + 1 :]:
            if A.size != B.size:
                continue
            assert find_isomorphism(A, B) is None, (A.name, B.name)


def test_dihedral_and_quaternion_are_the_expected_groups():
    d4 = dihedral_group(4)
    q8 = quaternion_group()
    assert not check_identities(d4, REGISTRY["abelian_group"]).passes
    assert not check_identities(q8, REGISTRY["abelian_group"]).passes
    assert is_isomorphic(dihedral_group(3), symmetric_group_s3())


def test_all_group_tables_counts_match_the_orbit_formula():
    # tables with identity 0 on an n-set: sum over isomorphism classes of
    # (n-1)!/|Aut|; Aut sizes: Z2:1, Z3:2, Z4:2, V4:6, Z5:4, Z6:2, S3:6
    expected = {
        1: 1,
        2: 1,
        3: factorial(2) // 2,
        4: factorial(3) // 2 + factorial(3) // 6,
        5: factorial(4) // 4,
        6: factorial(5) // 2 + factorial(5) // 6,
    }
    for n, count in expected.items():
        assert len(all_group_tables(n)) == count


def test_all_group_tables_really_are_groups():
    for n in (1, 2, 3, 4, 5):
        for i, table in enumerate(all_group_tables(n)):
            G = group_algebra_from_table(table, f"t{n}_{i}")
            assert check_identities(G, REGISTRY["group"]).passes
            assert G.table("e")[0] == 0


def test_all_group_tables_iso_class_split():
    # of the four tables on a 4-set, three are cyclic and one is the
    # four-group; on a 6-set, sixty are cyclic and twenty symmetric
    z4, v4 = cyclic_group(4), None
    from ualgebra.catalog import klein_group

    v4 = klein_group()
    kinds = [
        "z4" if is_isomorphic(group_algebra_from_table(t, "x"), z4) else "v4"
        for t in all_group_tables(4)
    ]
    assert sorted(kinds) == ["v4", "z4", "z4", "z4"]
