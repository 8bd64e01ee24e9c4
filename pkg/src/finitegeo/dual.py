"""Vector fields, dual connections, braid transposes and metrics.

Vector fields on a finite group carry right coefficients with respect to
the basis dual to the left-invariant 1-forms: X = ell_g X^g, where ell_g
is the difference operator f -> R_{g^-1} f - f.  The duality contraction
is left A-linear in the form slot and right A-linear in the field slot.
This module implements the contraction, the dual of a left connection,
the braid transposes on mixed and doubled field tensors, metrics and
their compatibility, and the canonical field-valued form whose covariant
derivatives reproduce torsion and curvature.
"""

import math
from fractions import Fraction

from .braid import (
    DegreeThreeIdeal,
    Rank3Field,
    d_two_rep,
    one_form_times_two_rep,
    project_two_form,
    two_rep_times_one_form,
)
from .calculus import OneForm, differential, theta_form
from .connection import extensibility_analysis, extend_on_pair, sigma_for
from .errors import CalculusMismatch, NotBicovariant, NotExtensible, NotInHatG
from .funcs import GroupFunction, constant, ell, right_translate, zero


def _as_function(group, value):
    if isinstance(value, GroupFunction):
        return value
    return constant(group, Fraction(value))


class VectorField:
    """A vector field X = ell_g X^g with right coefficient functions."""

    def __init__(self, calculus, coeffs):
        calculus.require_left_covariant()
        self.calculus = calculus
        group = calculus.group
        hset = set(calculus.hatG)
        clean = {}
        for g, value in coeffs.items():
            if g not in hset:
                raise NotInHatG(f"field label {g} outside the reduced set")
            f = _as_function(group, value)
            if not f.is_zero():
                clean[g] = f
        self.coeffs = clean

    def coeff(self, g):
        got = self.coeffs.get(g)
        if got is None:
            return zero(self.calculus.group)
        return got

    def __add__(self, other):
        if self.calculus != other.calculus:
            raise CalculusMismatch("vector fields on different calculi")
        out = dict(self.coeffs)
        for g, f in other.coeffs.items():
            out[g] = out.get(g, zero(self.calculus.group)) + f
        return VectorField(self.calculus, out)

    def __sub__(self, other):
        return self + other.scale(Fraction(-1))

    def scale(self, s):
        return VectorField(
            self.calculus, {g: f * s for g, f in self.coeffs.items()}
        )

    def right_mul(self, f):
        """X f: coefficients multiply directly."""
        return VectorField(
            self.calculus, {g: c * f for g, c in self.coeffs.items()}
        )

    def left_mul(self, f):
        """f X = ell_g (R_{g^-1} f) X^g."""
        group = self.calculus.group
        return VectorField(
            self.calculus,
            {
                g: right_translate(group.inverse(g), f) * c
                for g, c in self.coeffs.items()
            },
        )

    def is_zero(self):
        return all(f.is_zero() for f in self.coeffs.values())

    def is_constant(self):
        return all(f.is_constant() for f in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, VectorField):
            return NotImplemented
        return self.calculus == other.calculus and (self - other).is_zero()

    def __repr__(self):
        parts = ", ".join(
            f"{self.calculus.group.name(g)}: {f.as_strings()}"
            for g, f in sorted(self.coeffs.items())
        )
        return f"VectorField({{{parts}}})"

    def apply_to_function(self, f):
        """X f = <df, X> = (ell_g f) X^g."""
        group = self.calculus.group
        acc = zero(group)
        for g, c in self.coeffs.items():
            acc = acc + ell(g, f) * c
        return acc


def vector_field_basis(calculus, g):
    """The basis field ell_g."""
    return VectorField(calculus, {g: constant(calculus.group, Fraction(1))})


def pair(phi, x):
    """Duality contraction <phi, X> = phi_g X^g."""
    if phi.calculus != x.calculus:
        raise CalculusMismatch("form and field on different calculi")
    if phi.basis != "theta":
        raise CalculusMismatch("pairing expects the theta basis")
    group = phi.calculus.group
    acc = zero(group)
    for g in phi.calculus.hatG:
        c = phi.coeff(g)
        xg = x.coeffs.get(g)
        if xg is not None and not c.is_zero():
            acc = acc + c * xg
    return acc


def pair_tensor_field(t, x):
    """Contract the inner slot of a tensor field with a vector field.

    <t_{u,v} theta^u (x) theta^v, X> = t_{u,v} theta^u X^v is the 1-form
    with coefficient sum_v t_{u,v} R_{u^-1} X^v at u.
    """
    cal = t.calculus
    if cal != x.calculus:
        raise CalculusMismatch("tensor and field on different calculi")
    group = cal.group
    out = {}
    for (u, v), f in t.coeffs.items():
        xv = x.coeffs.get(v)
        if xv is None:
            continue
        term = f * right_translate(group.inverse(u), xv)
        out[u] = out.get(u, zero(group)) + term
    return OneForm(cal, {k: v for k, v in out.items() if not v.is_zero()})


def pair_metric(t, m):
    """Full contraction of a tensor field with a metric.

    <t_{a,b} theta^a (x) theta^b, ell_p (x) ell_q g^{p,q}> pairs the
    inner slots first, giving the function t_{a,b} g^{b,a}.
    """
    cal = t.calculus
    if cal != m.calculus:
        raise CalculusMismatch("tensor and metric on different calculi")
    group = cal.group
    acc = zero(group)
    for (a, b), f in t.coeffs.items():
        acc = acc + f * m.coeff(b, a)
    return acc


def pair_rank3_metric(r, m):
    """Contract the last two slots of a rank 3 field with a metric.

    The result is the 1-form with coefficient
    sum_{v,w} c_{u,v,w} R_{u^-1} g^{w,v} at u.
    """
    cal = r.calculus
    if cal != m.calculus:
        raise CalculusMismatch("tensor and metric on different calculi")
    group = cal.group
    out = {}
    for (u, v, w), f in r.coeffs.items():
        term = f * right_translate(group.inverse(u), m.coeff(w, v))
        out[u] = out.get(u, zero(group)) + term
    return OneForm(cal, {k: v for k, v in out.items() if not v.is_zero()})


class DualConnection:
    """The dual of a left connection, acting on vector fields.

    nabla* ell_g = ell_h (x) omega^h_g with the connection 1-forms of
    the source; values are stored as dicts mapping (h, k) to the theta
    coefficient of the h-th field component.
    """

    def __init__(self, source):
        self.source = source
        self.calculus = source.calculus
        self.omega = source.connection_one_forms()

    def apply(self, x):
        """nabla* X as a dict (h, k) -> coefficient of ell_h (x) theta^k."""
        cal = self.calculus
        if x.calculus != cal:
            raise CalculusMismatch("field lives on a different calculus")
        group = cal.group
        out = {}
        for h in cal.hatG:
            for k in cal.hatG:
                acc = ell(k, x.coeff(h))
                for g in cal.hatG:
                    gam = self.source.gamma.get((h, g, k))
                    if gam is not None:
                        xg = x.coeffs.get(g)
                        if xg is not None:
                            acc = acc + gam * right_translate(
                                group.inverse(k), xg
                            )
                if not acc.is_zero():
                    out[(h, k)] = acc
        return out

    def check_identity(self, gamma, x):
        """Verify <gamma, nabla* X> = d<gamma, X> - <nabla gamma, X>."""
        cal = self.calculus
        dual = self.apply(x)
        lhs = {}
        for (h, k), c in dual.items():
            term = gamma.coeff(h) * c
            lhs[k] = lhs.get(k, zero(cal.group)) + term
        lhs_form = OneForm(cal, {k: v for k, v in lhs.items() if not v.is_zero()})
        rhs = differential(cal, pair(gamma, x)) - pair_tensor_field(
            self.source.apply(gamma), x
        )
        return lhs_form == rhs

    def is_left_invariant(self):
        return all(f.is_constant() for f in self.source.gamma.values())


def dual_connection(conn):
    """The dual right connection of a left connection."""
    return DualConnection(conn)


def sigma_prime(calculus, h, g):
    """Basis action of the mixed braid transpose.

    sigma'(theta^h (x) ell_g) = ell_g (x) theta^{g^-1 h g}; returns the
    resulting index pair (g, g^-1 h g).
    """
    calculus.require_bicovariant()
    group = calculus.group
    if h not in set(calculus.hatG) or g not in set(calculus.hatG):
        raise NotInHatG("mixed basis labels must lie in the reduced set")
    return (g, group.adjoint(group.inverse(g), h))


def sigma_prime_connection(calculus):
    """The right connection X -> sigma'(rho (x) X) - X (x) rho.

    It annihilates every basis field ell_g and acts on general fields as
    ell_g (x) dX^g; it coincides with the dual of the braid connection.
    """
    calculus.require_bicovariant()

    class _SigmaPrimeConnection:
        def __init__(self, cal):
            self.calculus = cal

        def apply(self, x):
            cal = self.calculus
            out = {}
            for g, c in x.coeffs.items():
                for k in cal.hatG:
                    val = ell(k, c)
                    if not val.is_zero():
                        out[(g, k)] = val
            return out

    return _SigmaPrimeConnection(calculus)


def sigma_x(calculus, g, gp):
    """Basis action of the doubled-field braid transpose.

    sigma_X(ell_g (x) ell_g') = ell_{ad(g)g'} (x) ell_g; returns the
    resulting index pair.
    """
    calculus.require_bicovariant()
    if g not in set(calculus.hatG) or gp not in set(calculus.hatG):
        raise NotInHatG("field labels must lie in the reduced set")
    return (calculus.group.adjoint(g, gp), g)


def sigma_x_order(calculus):
    """Order of the doubled-field braid transpose."""
    calculus.require_bicovariant()
    hatg = calculus.hatG
    pairs = [(g, gp) for g in hatg for gp in hatg]
    index = {p: i for i, p in enumerate(pairs)}
    perm = [index[sigma_x(calculus, g, gp)] for (g, gp) in pairs]
    lengths = []
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        n = 0
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = perm[cur]
            n += 1
        lengths.append(n)
    return math.lcm(*lengths)


class Metric:
    """A doubled vector field g = ell_g (x) ell_g' g^{g,g'}."""

    def __init__(self, calculus, coeffs):
        calculus.require_left_covariant()
        self.calculus = calculus
        group = calculus.group
        hset = set(calculus.hatG)
        clean = {}
        for (g, gp), value in coeffs.items():
            if g not in hset or gp not in hset:
                raise NotInHatG(
                    f"metric label {(g, gp)} outside the reduced set"
                )
            f = _as_function(group, value)
            if not f.is_zero():
                clean[(g, gp)] = f
        self.coeffs = clean

    def coeff(self, g, gp):
        got = self.coeffs.get((g, gp))
        if got is None:
            return zero(self.calculus.group)
        return got

    def __sub__(self, other):
        out = dict(self.coeffs)
        for k, f in other.coeffs.items():
            out[k] = out.get(k, zero(self.calculus.group)) - f
        return Metric(self.calculus, out)

    def is_zero(self):
        return all(f.is_zero() for f in self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, Metric):
            return NotImplemented
        return self.calculus == other.calculus and (self - other).is_zero()

    def is_left_invariant(self):
        return all(f.is_constant() for f in self.coeffs.values())


def sigma_x_apply(m):
    """Apply the doubled-field transpose to a metric; right coefficients
    ride unchanged."""
    cal = m.calculus
    out = {}
    for (g, gp), f in m.coeffs.items():
        key = sigma_x(cal, g, gp)
        out[key] = out.get(key, zero(cal.group)) + f
    return Metric(cal, out)


def metric_symmetry(m):
    """Symmetry flags of a metric: fixed under the doubled transpose,
    and constancy of coefficients."""
    flags = {"left_invariant": m.is_left_invariant()}
    try:
        flags["s_symmetric"] = sigma_x_apply(m) == m
    except NotBicovariant:
        flags["s_symmetric"] = None
    return flags


def _dual_twist_apply(report, h, g):
    """Value of the dual twist on theta^h (x) ell_g, as a dict mapping
    the field label q to the 1-form component."""
    cal = report.connection.calculus
    group = cal.group
    out = {}
    q0, k0 = sigma_prime(cal, h, g)
    out[q0] = theta_form(cal, k0)
    for q in cal.hatG:
        kk = group.mul(group.mul(group.inverse(g), h), q)
        if kk not in set(cal.hatG):
            continue
        val = report.v_map.get((q, h, g, kk))
        if val is None:
            continue
        form = OneForm(cal, {kk: val})
        out[q] = out.get(q, OneForm(cal, {})) - form
    return {q: f for q, f in out.items() if not f.is_zero()}


def metric_compatibility(m, route="both", connection=None):
    """Covariant derivative of a metric along a connection's dual.

    Route "dual-extension" extends the dual connection to doubled
    fields using the dual twist; route "tensor-dual" dualizes the
    tensor-square extension of the source connection through the
    pairing.  Returns a dict with the residual components (a dict
    mapping (p, q) to the 1-form in ell_p (x) ell_q slot), the
    compatibility verdict, and, with route "both", whether the two
    routes agree.  The default connection is the braid connection,
    whose dual extension differentiates the coefficients.
    """
    cal = m.calculus
    if route not in ("dual-extension", "tensor-dual", "both"):
        raise ValueError(f"unknown route {route!r}")
    if connection is None:
        from .connection import nabla_sigma

        connection = nabla_sigma(cal)
    if connection.calculus != cal:
        raise CalculusMismatch("metric and connection on different calculi")
    report = extensibility_analysis(connection)
    if not report.extensible:
        raise NotExtensible("compatibility needs an extensible connection")
    group = cal.group
    results = {}
    if route in ("dual-extension", "both"):
        dual = dual_connection(connection)
        out = {}

        def add(p, q, form):
            if form.is_zero():
                return
            key = (p, q)
            out[key] = out.get(key, OneForm(cal, {})) + form

        for (g, gp), gv in m.coeffs.items():
            add(g, gp, differential(cal, gv))
            dgp = dual.apply(vector_field_basis(cal, gp))
            for (h, k), c in dgp.items():
                add(g, h, OneForm(cal, {k: c}).right_mul(gv))
            dg = dual.apply(vector_field_basis(cal, g))
            for (h, k), c in dg.items():
                twist = _dual_twist_apply(report, k, gp)
                for q, form in twist.items():
                    piece = form.left_mul(
                        right_translate(group.inverse(q), c)
                    ).right_mul(gv)
                    add(h, q, piece)
        results["dual-extension"] = {
            k: v for k, v in out.items() if not v.is_zero()
        }
    if route in ("tensor-dual", "both"):
        out = {}
        for w in cal.hatG:
            for v in cal.hatG:
                r3 = extend_on_pair(
                    connection, theta_form(cal, v), theta_form(cal, w)
                )
                form = differential(cal, m.coeff(w, v)) - pair_rank3_metric(
                    r3, m
                )
                if not form.is_zero():
                    out[(w, v)] = form
        results["tensor-dual"] = out
    report_out = {"routes": results}
    chosen = results.get("dual-extension", results.get("tensor-dual"))
    report_out["residual"] = chosen
    report_out["compatible"] = all(
        f.is_zero() for f in chosen.values()
    ) if chosen else True
    if route == "both":
        a = results["dual-extension"]
        b = results["tensor-dual"]
        keys = set(a) | set(b)
        agree = all(
            (a.get(k, OneForm(cal, {})) - b.get(k, OneForm(cal, {}))).is_zero()
            for k in keys
        )
        report_out["routes_agree"] = agree
    return report_out


def canonical_form_and_torsion(conn):
    """Covariant derivatives of the canonical field-valued form.

    The canonical form is Xi = ell_g (x) theta^g.  Its first covariant
    derivative is ell_g (x) Theta^g with Theta^g = d theta^g
    + omega^g_h theta^h, the torsion 2-form of theta^g; the second is
    ell_g (x) D Theta^g, and D Theta^g must reproduce the contraction
    of the curvature 2-forms with the basis modulo the degree 3 part of
    the differential ideal.  Returns the 2-forms and the identity
    verdicts.
    """
    cal = conn.calculus
    cal.require_bicovariant()
    sig = sigma_for(cal)
    ideal = DegreeThreeIdeal(cal, sig)
    omega = conn.connection_one_forms()
    theta_caps = {}
    theta_reps = {}
    for g in cal.hatG:
        rep = conn._torsion_raw_theta(g)
        theta_reps[g] = rep
        theta_caps[g] = project_two_form(rep, sig)
    bianchi = {}
    for g in cal.hatG:
        lhs = d_two_rep(theta_reps[g])
        for gp in cal.hatG:
            form = omega[(g, gp)]
            if not form.is_zero():
                lhs = lhs + one_form_times_two_rep(form, theta_reps[gp])
        rhs = Rank3Field(cal, {})
        for gp in cal.hatG:
            crep = conn._curvature_raw(g, gp)
            if not crep.is_zero():
                rhs = rhs + two_rep_times_one_form(
                    crep, theta_form(cal, gp)
                )
        bianchi[g] = {
            "holds": ideal.contains(lhs - rhs),
            "difference": lhs - rhs,
        }
    return {"Theta": theta_caps, "bianchi": bianchi}


def verify_dual_invariance(conn):
    """Check that the dual connection of a left-invariant connection has
    constant connection-form coefficients."""
    for form in conn.connection_one_forms().values():
        for g in conn.calculus.hatG:
            if not form.coeff(g).is_constant():
                return False
    return True
