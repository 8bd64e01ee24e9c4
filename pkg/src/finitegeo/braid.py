"""The braid operator sigma on Omega^1 (x) Omega^1 and the 2-form quotient.

For a bicovariant calculus sigma permutes basis tensors,
sigma(theta^g (x) theta^g') = theta^{ad(g^-1)g'} (x) theta^g, and left
coefficients ride along unchanged.  Everything downstream (powers, order,
symmetrizers, the ker/im decomposition, 2-forms with projection pi = A)
reduces to exact linear algebra on the |hatG|^2-dimensional fiber.
"""

from fractions import Fraction
from math import gcd, lcm

from . import funcs
from .calculus import OneForm, StructureConstants
from .errors import CalculusMismatch, NotBicovariant
from .linalg import SubspaceReducer, image_basis, kernel_basis


class TensorField:
    """alpha = alpha_{g,g'} theta^g (x) theta^{g'} with left coefficients."""

    def __init__(self, calculus, coeffs=None):
        calculus.require_left_covariant()
        self.calculus = calculus
        grp = calculus.group
        full = {}
        coeffs = coeffs or {}
        for pair in calculus.pairs():
            c = coeffs.get(pair)
            if c is None:
                c = funcs.zero(grp)
            elif not isinstance(c, funcs.GroupFunction):
                c = funcs.constant(grp, c)
            full[pair] = c
        extra = set(coeffs) - set(full)
        if extra:
            raise ValueError(f"coefficients outside hatG x hatG: {sorted(extra)}")
        self.coeffs = full

    def _check(self, other):
        if self.calculus != other.calculus:
            raise CalculusMismatch("tensors live on different calculi")

    def __add__(self, other):
        self._check(other)
        return TensorField(
            self.calculus, {p: self.coeffs[p] + other.coeffs[p] for p in self.coeffs}
        )

    def __sub__(self, other):
        self._check(other)
        return TensorField(
            self.calculus, {p: self.coeffs[p] - other.coeffs[p] for p in self.coeffs}
        )

    def __neg__(self):
        return TensorField(self.calculus, {p: -c for p, c in self.coeffs.items()})

    def scale(self, a):
        a = Fraction(a)
        return TensorField(self.calculus, {p: a * c for p, c in self.coeffs.items()})

    def left_mul(self, f):
        return TensorField(self.calculus, {p: f * c for p, c in self.coeffs.items()})

    def right_mul(self, f):
        """t * f; the factor is translated across both basis legs."""
        grp = self.calculus.group
        out = {}
        for (u, v), c in self.coeffs.items():
            moved = funcs.right_translate(
                grp.inverse(grp.mul(v, u)), f
            )  # R_{u^-1} R_{v^-1} = R_{(vu)^-1}
            out[(u, v)] = c * moved
        return TensorField(self.calculus, out)

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs.values())

    def is_constant(self):
        return all(c.is_constant() for c in self.coeffs.values())

    def __eq__(self, other):
        return (
            isinstance(other, TensorField)
            and self.calculus == other.calculus
            and self.coeffs == other.coeffs
        )

    def fiber(self, h):
        """Coefficient vector at group point h, lexicographic pair order."""
        return [self.coeffs[p](h) for p in self.calculus.pairs()]

    def constant_vector(self):
        if not self.is_constant():
            raise ValueError("tensor has non-constant coefficients")
        return [self.coeffs[p].values[0] for p in self.calculus.pairs()]


def tensor_from_vector(calculus, vector):
    pairs = calculus.pairs()
    return TensorField(calculus, dict(zip(pairs, vector)))


def basis_tensor(calculus, g, gp):
    return TensorField(calculus, {(g, gp): 1})


def tensor_of_one_forms(phi, psi):
    """phi (x)_A psi; psi's coefficient moves left across theta^g."""
    if phi.calculus != psi.calculus:
        raise CalculusMismatch("forms live on different calculi")
    grp = phi.calculus.group
    coeffs = {}
    for g in phi.calculus.hatG:
        moved = {
            gp: funcs.right_translate(grp.inverse(g), psi.coeffs[gp])
            for gp in phi.calculus.hatG
        }
        for gp in phi.calculus.hatG:
            coeffs[(g, gp)] = phi.coeffs[g] * moved[gp]
    return TensorField(phi.calculus, coeffs)


class SigmaOperator:
    def __init__(self, calculus):
        calculus.require_bicovariant()
        self.calculus = calculus
        grp = calculus.group
        self.perm = {}
        for g, gp in calculus.pairs():
            self.perm[(g, gp)] = (grp.adjoint(grp.inverse(g), gp), g)
        self.inv_perm = {v: k for k, v in self.perm.items()}
        self._order = None
        self._decomposition = None
        self._w_sym_reducer = None
        self._w_antisym_reducer = None

    def map_pair(self, pair, power=1):
        table = self.perm if power >= 0 else self.inv_perm
        for _ in range(abs(power)):
            pair = table[pair]
        return pair

    def apply(self, t, power=1):
        """sigma^power on a tensor; coefficients ride with their basis pair."""
        out = {}
        for pair, c in t.coeffs.items():
            out[self.map_pair(pair, power)] = c
        return TensorField(self.calculus, out)

    def order(self):
        if self._order is None:
            self._order = _permutation_order(self.perm)
            ad_order = self.calculus.group.ad_order()
            if (2 * ad_order) % self._order != 0:
                raise AssertionError(
                    f"sigma order {self._order} does not divide 2|ad(G)| = {2 * ad_order}"
                )
        return self._order

    def cycle_lengths(self):
        return _cycle_lengths(self.perm)

    def matrix(self):
        """Permutation matrix on coefficient vectors in lexicographic pair order."""
        pairs = self.calculus.pairs()
        index = {p: i for i, p in enumerate(pairs)}
        m = len(pairs)
        rows = [[Fraction(0)] * m for _ in range(m)]
        for p in pairs:
            rows[index[self.perm[p]]][index[p]] = Fraction(1)
        return rows

    def decompose(self):
        if self._decomposition is None:
            pairs = self.calculus.pairs()
            m = len(pairs)
            P = self.matrix()
            half = Fraction(1, 2)
            A = [
                [half * ((1 if i == j else 0) - P[i][j]) for j in range(m)]
                for i in range(m)
            ]
            S = [
                [half * ((1 if i == j else 0) + P[i][j]) for j in range(m)]
                for i in range(m)
            ]
            self._decomposition = DecompositionReport(
                pairs=pairs,
                ker_a=kernel_basis(A),
                im_a=image_basis(A),
                ker_s=kernel_basis(S),
                im_s=image_basis(S),
            )
        return self._decomposition

    def _reducer(self, basis):
        red = SubspaceReducer(len(self.calculus.pairs()))
        for v in basis:
            red.add(v)
        return red

    def w_symmetric_reducer(self):
        if self._w_sym_reducer is None:
            self._w_sym_reducer = self._reducer(self.decompose().im_s)
        return self._w_sym_reducer

    def w_antisymmetric_reducer(self):
        if self._w_antisym_reducer is None:
            self._w_antisym_reducer = self._reducer(self.decompose().im_a)
        return self._w_antisym_reducer


class DecompositionReport:
    def __init__(self, pairs, ker_a, im_a, ker_s, im_s):
        self.pairs = pairs
        self.ker_a = ker_a
        self.im_a = im_a
        self.ker_s = ker_s
        self.im_s = im_s

    @property
    def dims(self):
        return (len(self.ker_a), len(self.im_a), len(self.ker_s), len(self.im_s))


def _cycle_lengths(perm):
    seen = set()
    lengths = []
    for start in perm:
        if start in seen:
            continue
        length = 0
        x = start
        while x not in seen:
            seen.add(x)
            x = perm[x]
            length += 1
        lengths.append(length)
    return lengths


def _permutation_order(perm):
    return lcm(*_cycle_lengths(perm)) if perm else 1


def sigma_build(calculus):
    return SigmaOperator(calculus)


def sigma_apply(sigma, t, power=1):
    return sigma.apply(t, power)


def sigma_order(sigma):
    return sigma.order()


def symmetric_universal_sigma_order(n):
    """Order of sigma on the universal calculus of the symmetric group S_n.

    Closed form for n >= 3: twice the smallest positive exponent that kills
    every element of S_n, built as an incremental product

        2 * n * prod_{k=1}^{n-2} (n-k) / gcd(n (n-1) ... (n-k+1), n-k).

    Each factor enlarges the running product just enough to absorb the
    cycle length n-k, so the result equals 2 * lcm(2, ..., n).
    """
    if n < 3:
        raise ValueError("closed form requires n >= 3")
    order = n
    running = n
    for k in range(1, n - 1):
        order = order * (n - k) // gcd(running, n - k)
        running *= n - k
    return 2 * order


def braid_check(sigma):
    """(sigma x id)(id x sigma)(sigma x id) = (id x sigma)(sigma x id)(id x sigma)."""
    hatG = sigma.calculus.hatG

    def t12(tr):
        a, b = sigma.perm[(tr[0], tr[1])]
        return (a, b, tr[2])

    def t23(tr):
        b, c = sigma.perm[(tr[1], tr[2])]
        return (tr[0], b, c)

    for a in hatG:
        for b in hatG:
            for c in hatG:
                tr = (a, b, c)
                if t12(t23(t12(tr))) != t23(t12(t23(tr))):
                    return False
    return True


def symmetrize(t, sigma):
    return (t + sigma.apply(t)).scale(Fraction(1, 2))


def antisymmetrize(t, sigma):
    return (t - sigma.apply(t)).scale(Fraction(1, 2))


def decompose(sigma):
    return sigma.decompose()


def classify(t, sigma):
    """Strong and weak (anti)symmetry flags for a tensor."""
    s_symmetric = antisymmetrize(t, sigma).is_zero()
    s_antisymmetric = symmetrize(t, sigma).is_zero()
    grp = sigma.calculus.group
    sym_red = sigma.w_symmetric_reducer()
    antisym_red = sigma.w_antisymmetric_reducer()
    w_symmetric = all(sym_red.contains(t.fiber(h)) for h in range(grp.order))
    w_antisymmetric = all(antisym_red.contains(t.fiber(h)) for h in range(grp.order))
    return {
        "s_symmetric": s_symmetric,
        "s_antisymmetric": s_antisymmetric,
        "w_symmetric": w_symmetric,
        "w_antisymmetric": w_antisymmetric,
    }


class TwoForm:
    """A 2-form, represented by its image under the projection pi = A."""

    def __init__(self, calculus, rep):
        self.calculus = calculus
        self.rep = rep

    def __add__(self, other):
        return TwoForm(self.calculus, self.rep + other.rep)

    def __sub__(self, other):
        return TwoForm(self.calculus, self.rep - other.rep)

    def __neg__(self):
        return TwoForm(self.calculus, -self.rep)

    def scale(self, a):
        return TwoForm(self.calculus, self.rep.scale(a))

    def left_mul(self, f):
        return TwoForm(self.calculus, self.rep.left_mul(f))

    def right_mul(self, f):
        return TwoForm(self.calculus, self.rep.right_mul(f))

    def is_zero(self):
        return self.rep.is_zero()

    def __eq__(self, other):
        return (
            isinstance(other, TwoForm)
            and self.calculus == other.calculus
            and self.rep == other.rep
        )

    def coordinates(self, sigma):
        """Coefficients in the canonical (echelonized) im A basis.

        The basis is in reduced echelon form, so the coordinate along
        basis vector j can be read off at its pivot position.
        """
        basis = sigma.decompose().im_a
        pairs = self.calculus.pairs()
        pivots = [next(i for i, x in enumerate(row) if x != 0) for row in basis]
        return [self.rep.coeffs[pairs[p]] for p in pivots]


def project_two_form(t, sigma):
    """pi = A: the 2-form class of a tensor."""
    return TwoForm(t.calculus, antisymmetrize(t, sigma))


def wedge(phi, psi, sigma):
    return project_two_form(tensor_of_one_forms(phi, psi), sigma)


def zero_two_form(calculus):
    return TwoForm(calculus, TensorField(calculus))


def d_theta(calculus, sigma, h):
    """Maurer-Cartan: d theta^h = -C^h_{g,g'} theta^{g'} theta^g."""
    sc = StructureConstants(calculus)
    coeffs = {}
    for u, v in calculus.pairs():
        coeffs[(u, v)] = -sc.C(h, v, u)
    return project_two_form(TensorField(calculus, coeffs), sigma)


def d_one_form_rep(phi):
    """Representative tensor of d(f theta^g) = df (x) theta^g + f d theta^g."""
    calculus = phi.calculus
    if phi.basis != "theta":
        raise ValueError("differential implemented in the theta basis")
    sc = StructureConstants(calculus)
    coeffs = {(u, v): funcs.zero(calculus.group) for (u, v) in calculus.pairs()}
    for g in calculus.hatG:
        f = phi.coeffs[g]
        for h in calculus.hatG:
            coeffs[(h, g)] = coeffs[(h, g)] + funcs.ell(h, f)
        for u, v in calculus.pairs():
            cval = sc.C(g, v, u)
            if cval:
                coeffs[(u, v)] = coeffs[(u, v)] - cval * f
    return TensorField(calculus, coeffs)


def d_one_form(phi, sigma):
    """d(f theta^g) = df ^ theta^g + f d theta^g, summed over the basis."""
    return project_two_form(d_one_form_rep(phi), sigma)


# ---------------------------------------------------------------------------
# Degree-3 support.  Rank-3 coefficient arrays are only needed to state the
# Bianchi identity; they are compared modulo the degree-3 slice of the
# differential ideal generated by the s-symmetric tensors.


class Rank3Field:
    """Coefficients over hatG^3, theta^u (x) theta^v (x) theta^w, left placed."""

    def __init__(self, calculus, coeffs=None):
        self.calculus = calculus
        grp = calculus.group
        self.coeffs = {}
        for u in calculus.hatG:
            for v in calculus.hatG:
                for w in calculus.hatG:
                    c = (coeffs or {}).get((u, v, w))
                    if c is None:
                        c = funcs.zero(grp)
                    elif not isinstance(c, funcs.GroupFunction):
                        c = funcs.constant(grp, c)
                    self.coeffs[(u, v, w)] = c

    def __add__(self, other):
        return Rank3Field(
            self.calculus, {t: self.coeffs[t] + other.coeffs[t] for t in self.coeffs}
        )

    def __sub__(self, other):
        return Rank3Field(
            self.calculus, {t: self.coeffs[t] - other.coeffs[t] for t in self.coeffs}
        )

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs.values())

    def is_constant(self):
        return all(c.is_constant() for c in self.coeffs.values())

    def __eq__(self, other):
        return (
            isinstance(other, Rank3Field)
            and self.calculus == other.calculus
            and self.coeffs == other.coeffs
        )

    def triples(self):
        return [
            (u, v, w)
            for u in self.calculus.hatG
            for v in self.calculus.hatG
            for w in self.calculus.hatG
        ]

    def fiber(self, h):
        return [self.coeffs[t](h) for t in self.triples()]


def one_form_times_two_rep(phi, t):
    """(f theta^k) * (T_{u,v} theta^u theta^v) at rank 3."""
    calculus = phi.calculus
    grp = calculus.group
    out = {}
    for k in calculus.hatG:
        f = phi.coeffs[k]
        if f.is_zero():
            continue
        kinv = grp.inverse(k)
        for (u, v), c in t.coeffs.items():
            if c.is_zero():
                continue
            term = f * funcs.right_translate(kinv, c)
            key = (k, u, v)
            out[key] = out.get(key, funcs.zero(grp)) + term
    return Rank3Field(calculus, out)


def two_rep_times_one_form(t, psi):
    """(T_{u,v} theta^u theta^v) * (c_w theta^w) at rank 3."""
    calculus = t.calculus
    grp = calculus.group
    out = {}
    for (u, v), c in t.coeffs.items():
        if c.is_zero():
            continue
        vu_inv = grp.inverse(grp.mul(v, u))
        for w in calculus.hatG:
            cw = psi.coeffs[w]
            if cw.is_zero():
                continue
            term = c * funcs.right_translate(vu_inv, cw)
            key = (u, v, w)
            out[key] = out.get(key, funcs.zero(grp)) + term
    return Rank3Field(calculus, out)


def d_two_rep(t):
    """d of a represented 2-form, as a rank-3 coefficient array."""
    calculus = t.calculus
    grp = calculus.group
    sc = StructureConstants(calculus)
    out = {}

    def bump(key, val):
        out[key] = out.get(key, funcs.zero(grp)) + val

    for (g, gp), c in t.coeffs.items():
        if c.is_zero():
            continue
        for h in calculus.hatG:
            lh = funcs.ell(h, c)
            if not lh.is_zero():
                bump((h, g, gp), lh)
        for u in calculus.hatG:
            for v in calculus.hatG:
                c1 = sc.C(g, u, v)
                if c1:
                    bump((v, u, gp), c * (-c1))
                c2 = sc.C(gp, u, v)
                if c2:
                    bump((g, v, u), c * c2)
    return Rank3Field(calculus, out)


class DegreeThreeIdeal:
    """Membership test for the degree-3 slice of the ideal generated by ker A.

    Fiberwise: right multiplication by delta functions masks a constant
    generator by the level sets of the reversed product w*v*u, so the
    fiber space is spanned by those masked pieces of
      ker A (x) theta^w,  theta^u (x) ker A,  and  d(ker A).
    An A-valued rank-3 array lies in the ideal iff each of its fibers
    lies in that span.
    """

    def __init__(self, calculus, sigma):
        self.calculus = calculus
        grp = calculus.group
        hatG = calculus.hatG
        pairs = calculus.pairs()
        triples = [(u, v, w) for u in hatG for v in hatG for w in hatG]
        index = {t: i for i, t in enumerate(triples)}
        dim = len(triples)
        generators = []
        ker_a = sigma.decompose().ker_a
        for kvec in ker_a:
            kmap = dict(zip(pairs, kvec))
            for w in hatG:
                vec = [Fraction(0)] * dim
                for (u, v), val in kmap.items():
                    vec[index[(u, v, w)]] = val
                generators.append(vec)
            for u in hatG:
                vec = [Fraction(0)] * dim
                for (v, w), val in kmap.items():
                    vec[index[(u, v, w)]] = val
                generators.append(vec)
            kt = tensor_from_vector(self.calculus, kvec)
            dk = d_two_rep(kt)
            generators.append([dk.coeffs[t].values[0] for t in triples])
        self.reducer = SubspaceReducer(dim)
        self.triples = triples
        for gen in generators:
            by_product = {}
            for i, t in enumerate(triples):
                if gen[i] == 0:
                    continue
                u, v, w = t
                q = grp.mul(grp.mul(w, v), u)
                by_product.setdefault(q, [Fraction(0)] * dim)[i] = gen[i]
            for piece in by_product.values():
                self.reducer.add(piece)

    def contains(self, r3):
        grp = self.calculus.group
        order = [r3.coeffs[t] for t in self.triples]
        for h in range(grp.order):
            if not self.reducer.contains([c(h) for c in order]):
                return False
        return True
