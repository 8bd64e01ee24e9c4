"""Group construction, validation and structure queries."""

import pytest

from finitegeo import groups
from finitegeo.errors import NoIdentity, NoInverse, NotAssociative, TooLarge


def test_cyclic_group_basics():
    z5 = groups.cyclic(5)
    assert z5.order == 5
    assert z5.is_abelian()
    assert z5.name(0) == "e"
    for x in z5.elements():
        assert z5.mul(x, z5.inverse(x)) == 0


def test_symmetric_group_s3_structure(s3):
    assert s3.order == 6
    assert not s3.is_abelian()
    assert s3.center() == [0]
    classes = [sorted(c) for c in s3.conjugacy_classes()]
    sizes = sorted(len(c) for c in classes)
    assert sizes == [1, 2, 3]


def test_s3_letter_names_multiply_correctly(s3):
    a = s3.element_index("a")
    b = s3.element_index("b")
    ab = s3.element_index("ab")
    ba = s3.element_index("ba")
    c = s3.element_index("c")
    assert s3.mul(a, b) == ab
    assert s3.mul(b, a) == ba
    assert s3.mul(a, ba) == c
    assert s3.inverse(ab) == ba


def test_s3_cycle_aliases_resolve(s3):
    assert s3.element_index("(12)") == s3.element_index("a")
    assert s3.element_index("(23)") == s3.element_index("b")
    assert s3.element_index("(13)") == s3.element_index("c")
    assert s3.element_index("(123)") == s3.element_index("ab")
    assert s3.element_index("(132)") == s3.element_index("ba")


def test_adjoint_is_conjugation(s3):
    for h in s3.elements():
        for x in s3.elements():
            expected = s3.mul(s3.mul(h, x), s3.inverse(h))
            assert s3.adjoint(h, x) == expected


def test_ad_order_of_s3_is_six(s3):
    assert s3.ad_order() == 6


def test_alternating_group_a4():
    a4 = groups.alternating(4)
    assert a4.order == 12
    sizes = sorted(len(c) for c in a4.conjugacy_classes())
    assert sizes == [1, 3, 4, 4]


def test_dihedral_and_dicyclic_orders():
    assert groups.dihedral(4).order == 8
    assert groups.dicyclic(2).order == 8
    q8 = groups.dicyclic(2)
    central = q8.center()
    assert len(central) == 2


def test_direct_product_of_coprime_cyclics_is_cyclic():
    z6 = groups.direct_product(groups.cyclic(2), groups.cyclic(3))
    assert z6.order == 6
    assert z6.is_abelian()
    orders = sorted(z6.element_order(x) for x in z6.elements())
    assert orders == sorted(
        groups.cyclic(6).element_order(x) for x in range(6)
    )


def test_from_cayley_table_accepts_z2():
    g = groups.from_cayley_table([[0, 1], [1, 0]], names=["e", "t"])
    assert g.order == 2
    assert g.element_index("t") == 1


def test_from_cayley_table_rejects_nonassociative():
    table = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 1, 0],
    ]
    with pytest.raises((NotAssociative, NoInverse, NoIdentity)):
        groups.from_cayley_table(table)


def test_from_cayley_table_rejects_missing_identity():
    with pytest.raises(NoIdentity):
        groups.from_cayley_table([[0, 0], [0, 0]])


def test_from_cayley_table_relabels_identity_to_zero():
    g = groups.from_cayley_table([[1, 0], [0, 1]], names=["t", "e"])
    assert g.name(0) == "e"
    assert g.mul(1, 1) == 0


def test_size_bound_raises_too_large():
    with pytest.raises(TooLarge):
        groups.symmetric(4, max_order=10)


def test_from_permutations_generates_s3():
    g = groups.from_permutations([(1, 0, 2), (0, 2, 1)])
    assert g.order == 6
    assert not g.is_abelian()


def test_element_order_divides_group_order(s3):
    for x in s3.elements():
        assert s3.order % s3.element_order(x) == 0


def test_orbits_partition_the_point_set(s3):
    def act(g, p):
        return s3.mul(g, p)

    orbs = groups.orbits(list(s3.elements()), act, s3)
    assert sorted(x for orb in orbs for x in orb) == list(s3.elements())
    assert len(orbs) == 1


def test_small_group_catalog_orders():
    from finitegeo.catalog import small_group_catalog

    cat = small_group_catalog()
    assert len(cat) == 24
    for name, g in cat.items():
        assert g.order <= 12
    by_order = {}
    for g in cat.values():
        by_order[g.order] = by_order.get(g.order, 0) + 1
    assert by_order[8] == 5
    assert by_order[12] == 5
