"""The commutative algebra of rational-valued functions on a finite group.

Functions are stored densely as a tuple of Fractions indexed by element.
Translation operators and the difference operators built from them are
the raw material for differentials:

    (R_g f)(h) = f(hg)        (L_g f)(h) = f(gh)
    ell_g f = R_{g^-1} f - f   r_g f = L_{g^-1} f - f
"""

from dataclasses import dataclass
from fractions import Fraction


@dataclass(frozen=True)
class GroupFunction:
    group: object
    values: tuple

    def __call__(self, x):
        return self.values[x]

    def _wrap(self, values):
        return GroupFunction(self.group, tuple(values))

    def __add__(self, other):
        other = _coerce(self.group, other)
        return self._wrap(a + b for a, b in zip(self.values, other.values))

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self.group, other)
        return self._wrap(a - b for a, b in zip(self.values, other.values))

    def __rsub__(self, other):
        return _coerce(self.group, other) - self

    def __mul__(self, other):
        other = _coerce(self.group, other)
        return self._wrap(a * b for a, b in zip(self.values, other.values))

    __rmul__ = __mul__

    def __neg__(self):
        return self._wrap(-a for a in self.values)

    def is_zero(self):
        return all(v == 0 for v in self.values)

    def is_constant(self):
        return all(v == self.values[0] for v in self.values)

    def as_strings(self):
        return [str(v) for v in self.values]


def _coerce(group, value):
    if isinstance(value, GroupFunction):
        if value.group is not group:
            raise ValueError("functions live on different groups")
        return value
    return constant(group, value)


def constant(group, value):
    return GroupFunction(group, (Fraction(value),) * group.order)


def zero(group):
    return constant(group, 0)


def one(group):
    return constant(group, 1)


def delta(group, g):
    """The indicator function e_g."""
    return GroupFunction(
        group, tuple(Fraction(1 if h == g else 0) for h in range(group.order))
    )


def from_values(group, values):
    values = tuple(Fraction(v) for v in values)
    if len(values) != group.order:
        raise ValueError("value list does not match the group order")
    return GroupFunction(group, values)


def right_translate(g, f):
    grp = f.group
    return GroupFunction(grp, tuple(f.values[grp.mul(h, g)] for h in range(grp.order)))


def left_translate(g, f):
    grp = f.group
    return GroupFunction(grp, tuple(f.values[grp.mul(g, h)] for h in range(grp.order)))


def ell(g, f):
    """Difference operator ell_g f = R_{g^-1} f - f."""
    return right_translate(f.group.inverse(g), f) - f


def r_op(g, f):
    """Difference operator r_g f = L_{g^-1} f - f."""
    return left_translate(f.group.inverse(g), f) - f
