"""Finite group actions on finite sets and covariant calculi on them.

A differential calculus on a finite set is a digraph without loops; the
calculus is covariant under a group acting on the set when the edge set
is stable under the diagonal action.  Covariant calculi are therefore
unions of orbits of the action on off-diagonal pairs, and the
irreducible ones are the single orbits.
"""

from .calculus import digraph_dot
from .errors import NotAnAction, TooLarge
from .groups import from_permutations


class GSet:
    """A finite set with a left group action, stored as a lookup table.

    The table maps (group element, point) to a point; the identity must
    fix every point and the table must respect the group product.
    """

    def __init__(self, group, size, table):
        self.group = group
        self.size = size
        self.table = {k: v for k, v in table.items()}
        self._validate()

    def _validate(self):
        group = self.group
        for a in range(group.order):
            for x in range(self.size):
                got = self.table.get((a, x))
                if got is None or not 0 <= got < self.size:
                    raise NotAnAction(
                        f"action table misses or misplaces ({a}, {x})"
                    )
        for x in range(self.size):
            if self.table[(0, x)] != x:
                raise NotAnAction("identity must fix every point")
        for a in range(group.order):
            for b in range(group.order):
                ab = group.mul(a, b)
                for x in range(self.size):
                    if self.table[(ab, x)] != self.table[(a, self.table[(b, x)])]:
                        raise NotAnAction(
                            "table does not respect the group product"
                        )

    def act(self, a, x):
        return self.table[(a, x)]

    def __repr__(self):
        return f"GSet({self.group.label}, {self.size} points)"


def gset_from_permutations(perms, size=None):
    """Build the group generated by permutations together with its
    natural action on the points.

    Permutations are tuples in one-line notation over range(size).
    """
    if not perms:
        raise NotAnAction("at least one permutation is needed")
    if size is None:
        size = len(perms[0])
    perms = [tuple(p) for p in perms]
    for p in perms:
        if sorted(p) != list(range(size)):
            raise NotAnAction(f"{p} is not a permutation of {size} points")
    group, elements = from_permutations(perms, with_elements=True)
    table = {}
    for i, perm in enumerate(elements):
        for x in range(size):
            table[(i, x)] = perm[x]
    return GSet(group, size, table)


def left_translation_gset(group):
    """The group acting on itself by left translation."""
    table = {}
    for a in range(group.order):
        for x in range(group.order):
            table[(a, x)] = group.mul(a, x)
    return GSet(group, group.order, table)


def pair_orbits(gs):
    """Orbits of the diagonal action on off-diagonal pairs.

    Returns a list of sorted tuples of pairs, ordered by their smallest
    member.
    """
    seen = set()
    orbits = []
    for x in range(gs.size):
        for y in range(gs.size):
            if x == y or (x, y) in seen:
                continue
            orb = set()
            stack = [(x, y)]
            while stack:
                p = stack.pop()
                if p in orb:
                    continue
                orb.add(p)
                for a in range(gs.group.order):
                    img = (gs.act(a, p[0]), gs.act(a, p[1]))
                    if img not in orb:
                        stack.append(img)
            orb = tuple(sorted(orb))
            orbits.append(orb)
            seen.update(orb)
    return orbits


def is_covariant(gs, edges):
    """Whether an edge set is stable under the diagonal action."""
    edges = set(edges)
    for (x, y) in edges:
        for a in range(gs.group.order):
            if (gs.act(a, x), gs.act(a, y)) not in edges:
                return False
    return True


ENUM_LIMIT = 4096


def covariant_calculi(gs, limit=ENUM_LIMIT):
    """All covariant calculi on the set, as sorted edge-set tuples.

    They are exactly the unions of pair orbits, including the empty
    union (the trivial calculus) and the full union (the universal
    one).  Raises TooLarge when there are more than `limit` unions;
    the orbit list from pair_orbits is a usable summary in that case.
    """
    orbs = pair_orbits(gs)
    if 2 ** len(orbs) > limit:
        raise TooLarge(
            f"{2 ** len(orbs)} orbit unions exceed the limit {limit}; "
            "inspect pair_orbits instead"
        )
    out = []
    for mask in range(2 ** len(orbs)):
        edges = []
        for i, orb in enumerate(orbs):
            if mask >> i & 1:
                edges.extend(orb)
        out.append(tuple(sorted(edges)))
    out.sort(key=lambda e: (len(e), e))
    return out


def irreducible_calculi(gs):
    """The covariant calculi obtained by deleting exactly one pair
    orbit from the universal calculus.

    The edge set of each is the complement of a single orbit, so there
    are as many irreducible calculi as orbits.
    """
    orbs = pair_orbits(gs)
    universe = {p for orb in orbs for p in orb}
    return [tuple(sorted(universe - set(orb))) for orb in orbs]


def gset_dot(gs, edges, names=None, collapse_bidirected=True):
    """DOT digraph of an edge set on the points of the set."""
    if names is None:
        names = [str(x + 1) for x in range(gs.size)]
    return digraph_dot(names, edges, collapse_bidirected=collapse_bidirected)
