"""A catalog of the groups of order at most 12, one per isomorphism class."""

from . import groups


def small_group_catalog():
    """name -> FiniteGroup for every isomorphism class of order <= 12."""
    cat = {}
    for n in range(1, 13):
        cat[f"Z{n}"] = groups.cyclic(n)
    cat["Z2xZ2"] = groups.direct_product(groups.cyclic(2), groups.cyclic(2))
    cat["S3"] = groups.symmetric(3)
    cat["Z2xZ4"] = groups.direct_product(groups.cyclic(2), groups.cyclic(4))
    cat["Z2xZ2xZ2"] = groups.direct_product(
        groups.direct_product(groups.cyclic(2), groups.cyclic(2)), groups.cyclic(2)
    )
    cat["D4"] = groups.dihedral(4)
    cat["Q8"] = groups.dicyclic(2)
    cat["Z3xZ3"] = groups.direct_product(groups.cyclic(3), groups.cyclic(3))
    cat["D5"] = groups.dihedral(5)
    cat["Z2xZ6"] = groups.direct_product(groups.cyclic(2), groups.cyclic(6))
    cat["D6"] = groups.dihedral(6)
    cat["A4"] = groups.alternating(4)
    cat["Dic3"] = groups.dicyclic(3)
    return cat
