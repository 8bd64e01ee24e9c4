"""Solution spaces of symmetric, antisymmetric and bi-invariant tensors.

The braid operator of a bicovariant calculus acts on the constant fiber
of tensor squares.  Strong (anti)symmetry is a kernel condition, weak
(anti)symmetry an image condition, and bi-invariance identifies
coefficients along the orbits of the diagonal adjoint action.  Solutions
with function coefficients are spanned by the constant fiber solutions
with free function multipliers, so the spaces below store constant
basis tensors.
"""

from fractions import Fraction

from .braid import sigma_build, symmetrize, antisymmetrize, tensor_from_vector
from .groups import orbits as group_orbits


class SolutionSpace:
    """An exact solution space of constant tensor fields.

    The basis is echelonized over the fiber coordinates; every member of
    the space with function coefficients is a combination of the basis
    with arbitrary function multipliers.
    """

    def __init__(self, calculus, kind, vectors, orbit_classes=None):
        self.calculus = calculus
        self.kind = kind
        self.vectors = [list(v) for v in vectors]
        self.basis = [tensor_from_vector(calculus, v) for v in self.vectors]
        self.orbit_classes = orbit_classes

    @property
    def dimension(self):
        return len(self.basis)

    def verify(self):
        """Re-test the defining condition on every basis element."""
        sig = sigma_build(self.calculus)
        for t in self.basis:
            if self.kind == "s_sym":
                if not antisymmetrize(t, sig).is_zero():
                    return False
            elif self.kind == "s_antisym":
                if not symmetrize(t, sig).is_zero():
                    return False
            elif self.kind == "w_sym":
                red = sig.w_symmetric_reducer()
                if not red.contains(t.constant_vector()):
                    return False
            elif self.kind == "w_antisym":
                red = sig.w_antisymmetric_reducer()
                if not red.contains(t.constant_vector()):
                    return False
            elif self.kind == "bi_invariant":
                group = self.calculus.group
                for (g, gp), f in t.coeffs.items():
                    if not f.is_constant():
                        return False
                    val = f.values[0]
                    for a in range(group.order):
                        img = (group.adjoint(a, g), group.adjoint(a, gp))
                        got = t.coeffs.get(img)
                        gval = got.values[0] if got is not None else 0
                        if gval != val:
                            return False
            else:
                raise ValueError(f"unknown kind {self.kind!r}")
        return True

    def contains_vector(self, vec):
        """Solve for the vector inside the span of the basis."""
        from .linalg import SubspaceReducer

        red = SubspaceReducer(len(vec))
        for v in self.vectors:
            red.add(v)
        return red.contains(vec)

    def __repr__(self):
        return (
            f"SolutionSpace({self.kind}, dim {self.dimension} on "
            f"{self.calculus!r})"
        )


_KIND_TO_PART = {
    "s_sym": "ker_a",
    "s_antisym": "ker_s",
    "w_sym": "im_s",
    "w_antisym": "im_a",
}


def solve_symmetry(calculus, kind):
    """Solve a braid symmetry condition on the constant tensor fiber.

    Strong kinds are kernels of the (anti)symmetrization operators,
    weak kinds their images.
    """
    if kind not in _KIND_TO_PART:
        raise ValueError(
            f"kind must be one of {sorted(_KIND_TO_PART)}, got {kind!r}"
        )
    sig = sigma_build(calculus)
    report = sig.decompose()
    vectors = getattr(report, _KIND_TO_PART[kind])
    return SolutionSpace(calculus, kind, vectors)


def solve_bi_invariant(calculus):
    """Solve the bi-invariance condition on the constant tensor fiber.

    Constant coefficients must agree along the orbits of the diagonal
    adjoint action on pairs; the space has one free constant per orbit.
    """
    calculus.require_bicovariant()
    group = calculus.group
    pairs = calculus.pairs()
    index = {p: i for i, p in enumerate(pairs)}

    def act(a, p):
        return (group.adjoint(a, p[0]), group.adjoint(a, p[1]))

    orbs = group_orbits(pairs, act, group)
    vectors = []
    for orb in orbs:
        vec = [Fraction(0)] * len(pairs)
        for p in orb:
            vec[index[p]] = Fraction(1)
        vectors.append(vec)
    return SolutionSpace(calculus, "bi_invariant", vectors, orbit_classes=orbs)


def pattern_matrix(space, order=None):
    """Express a solution space as a symbolic coefficient matrix.

    Returns a dict with the element order, one coefficient vector over
    the canonical free parameters for each matrix cell, and a rendered
    string matrix.  Parameters are canonicalized by first occurrence in
    row-major order, so comparisons should use the equality classes and
    linear relations rather than parameter names.
    """
    from .linalg import rref

    cal = space.calculus
    if order is None:
        order = list(cal.hatG)
    pairs = cal.pairs()
    index = {p: i for i, p in enumerate(pairs)}
    cells = [(g, gp) for g in order for gp in order]
    cols = [index[c] for c in cells]
    rows = [[v[j] for j in cols] for v in space.vectors]
    if rows:
        reduced, _, rank = rref(rows)
        reduced = reduced[:rank]
    else:
        reduced = []
    n = len(order)
    coeff_cells = {}
    strings = [["0"] * n for _ in range(n)]
    for ci, cell in enumerate(cells):
        coeffs = tuple(row[ci] for row in reduced)
        coeff_cells[cell] = coeffs
        terms = []
        for k, c in enumerate(coeffs):
            if c == 0:
                continue
            name = f"p{k}"
            if c == 1:
                terms.append(f"+{name}" if terms else name)
            elif c == -1:
                terms.append(f"-{name}")
            else:
                sign = "+" if c > 0 and terms else ""
                terms.append(f"{sign}{c}*{name}")
        text = "".join(terms) if terms else "0"
        strings[ci // n][ci % n] = text
    return {"order": list(order), "cells": coeff_cells, "strings": strings}
