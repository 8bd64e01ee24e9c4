"""Linear connections on first order differential calculi over finite groups.

A left connection on the bimodule of 1-forms is determined, relative to the
left-invariant basis, by coefficient functions Gamma^h_{g,g'} indexed by
triples of elements of the reduced set.  This module builds the named
connections (the C-connection, the braid family, the flat transport
connection), computes covariant derivatives, torsion and curvature,
solves linear invariance and torsion-freeness conditions, analyzes
extensibility to a two-argument Leibniz rule, and extends connections to
tensor products and to the two-sided setting.
"""

from fractions import Fraction

from .braid import (
    Rank3Field,
    TensorField,
    d_one_form,
    d_one_form_rep,
    d_theta,
    project_two_form,
    sigma_build,
    tensor_of_one_forms,
    wedge,
)
from .calculus import (
    OneForm,
    StructureConstants,
    differential,
    rho,
    theta_form,
)
from .errors import (
    BadLambdaLength,
    CalculusMismatch,
    Infeasible,
    NotExtensible,
    NotInHatG,
    NotUniversal,
    UsageError,
)
from .funcs import GroupFunction, constant, right_translate, zero
from .linalg import solve_affine


def _as_function(group, value):
    if isinstance(value, GroupFunction):
        return value
    return constant(group, Fraction(value))


def sigma_for(calculus):
    """Cached braid operator of a bicovariant calculus."""
    got = getattr(calculus, "_sigma_cache", None)
    if got is None:
        got = sigma_build(calculus)
        calculus._sigma_cache = got
    return got


class Connection:
    """A left connection nabla: Omega^1 -> Omega^1 (x) Omega^1.

    The connection is stored through its coefficients Gamma^h_{g,g'},
    which are functions on the group (constant for left-invariant
    connections).  The action on a basis form is

        nabla theta^h = -Gamma^h_{g,g'} theta^{g'} (x) theta^g,

    summed over g, g' in the reduced set.
    """

    def __init__(self, calculus, gamma):
        calculus.require_left_covariant()
        self.calculus = calculus
        group = calculus.group
        hset = set(calculus.hatG)
        coeffs = {}
        for key, value in gamma.items():
            h, g, gp = key
            if h not in hset or g not in hset or gp not in hset:
                raise NotInHatG(f"gamma key {key} outside the reduced set")
            func = _as_function(group, value)
            if not func.is_zero():
                coeffs[(h, g, gp)] = func
        self.gamma = coeffs
        self._torsion_free = None
        self._curvature_zero = None

    def gamma_value(self, h, g, gp):
        """Coefficient Gamma^h_{g,g'} as a group function."""
        got = self.gamma.get((h, g, gp))
        if got is None:
            return zero(self.calculus.group)
        return got

    def is_left_invariant(self):
        return all(f.is_constant() for f in self.gamma.values())

    def __eq__(self, other):
        if not isinstance(other, Connection):
            return NotImplemented
        if self.calculus != other.calculus:
            return False
        keys = set(self.gamma) | set(other.gamma)
        return all(
            self.gamma_value(*k) == other.gamma_value(*k) for k in keys
        )

    def __repr__(self):
        n = len(self.gamma)
        return f"Connection({self.calculus!r}, {n} nonzero coefficients)"

    def sigma(self):
        return sigma_for(self.calculus)

    def nabla_theta(self, h):
        """nabla theta^h as a tensor field."""
        cal = self.calculus
        if h not in set(cal.hatG):
            raise NotInHatG(f"{h} not in the reduced set")
        group = cal.group
        out = {}
        for g in cal.hatG:
            for gp in cal.hatG:
                f = self.gamma.get((h, g, gp))
                if f is not None:
                    out[(gp, g)] = out.get((gp, g), zero(group)) - f
        return TensorField(cal, {k: v for k, v in out.items() if not v.is_zero()})

    def connection_one_forms(self):
        """Matrix of 1-forms omega^i_j = Gamma^i_{j,k} theta^k with
        nabla theta^i = -omega^i_j (x) theta^j."""
        cal = self.calculus
        out = {}
        for i in cal.hatG:
            for j in cal.hatG:
                coeffs = {}
                for k in cal.hatG:
                    f = self.gamma.get((i, j, k))
                    if f is not None:
                        coeffs[k] = f
                out[(i, j)] = OneForm(cal, coeffs)
        return out

    def apply(self, phi):
        """Covariant derivative of a 1-form in the theta basis.

        The coefficient of the result at (g, g') is
        R_{g^-1} phi_{g'} - phi_{g'} - sum_h phi_h Gamma^h_{g',g}.
        """
        cal = self.calculus
        if phi.calculus != cal:
            raise CalculusMismatch("form lives on a different calculus")
        if phi.basis != "theta":
            raise CalculusMismatch("covariant derivative expects theta basis")
        group = cal.group
        out = {}
        for g in cal.hatG:
            ginv = group.inverse(g)
            for gp in cal.hatG:
                acc = right_translate(ginv, phi.coeff(gp)) - phi.coeff(gp)
                for h in cal.hatG:
                    f = self.gamma.get((h, gp, g))
                    if f is not None:
                        acc = acc - phi.coeff(h) * f
                if not acc.is_zero():
                    out[(g, gp)] = acc
        return TensorField(cal, out)

    def _torsion_raw_theta(self, h):
        cal = self.calculus
        group = cal.group
        sc = StructureConstants(cal)
        out = {}
        for u in cal.hatG:
            for v in cal.hatG:
                acc = self.gamma_value(h, v, u)
                c = sc.C(h, v, u)
                if c:
                    acc = acc - constant(group, Fraction(c))
                if not acc.is_zero():
                    out[(u, v)] = acc
        return TensorField(cal, out)

    def torsion(self, phi=None, raw=False):
        """Torsion T = nabla - d applied to a 1-form.

        With phi given, returns the torsion of that 1-form.  Without phi,
        returns a dict mapping each basis label h to the torsion of
        theta^h.  When raw is true the unprojected representative tensors
        are returned instead of 2-forms.
        """
        if phi is not None:
            diff = d_one_form_rep(phi) - self.apply(phi)
            if raw:
                return diff
            return project_two_form(diff, self.sigma())
        if raw:
            return {h: self._torsion_raw_theta(h) for h in self.calculus.hatG}
        return {
            h: project_two_form(self._torsion_raw_theta(h), self.sigma())
            for h in self.calculus.hatG
        }

    def is_torsion_free(self):
        if self._torsion_free is None:
            sig = self.sigma()
            ok = True
            for h in self.calculus.hatG:
                t = self._torsion_raw_theta(h)
                if not (t - sig.apply(t)).is_zero():
                    ok = False
                    break
            self._torsion_free = ok
        return self._torsion_free

    def _curvature_raw(self, h, gp):
        """Representative tensor of the curvature 2-form Omega^h_{gp},
        computed as d omega^h_{gp} + omega^h_k (x) omega^k_{gp} before
        projection."""
        cal = self.calculus
        group = cal.group
        sc = StructureConstants(cal)
        rep = {}
        for u in cal.hatG:
            uinv = group.inverse(u)
            for v in cal.hatG:
                acc = zero(group)
                gam = self.gamma.get((h, gp, v))
                if gam is not None:
                    acc = acc + right_translate(uinv, gam) - gam
                for k in cal.hatG:
                    a = self.gamma.get((h, k, u))
                    b = self.gamma.get((k, gp, v))
                    if a is not None and b is not None:
                        acc = acc + a * right_translate(uinv, b)
                    c = sc.C(k, v, u)
                    if c:
                        gk = self.gamma.get((h, gp, k))
                        if gk is not None:
                            acc = acc - c * gk
                if not acc.is_zero():
                    rep[(u, v)] = acc
        return TensorField(cal, rep)

    def curvature(self, h=None):
        """Curvature 2-forms with nabla^2 theta^h = -Omega^h_{g'} (x) theta^{g'}.

        For a basis label h, returns a dict mapping g' to the 2-form
        Omega^h_{g'}.  Without h, returns a dict over all basis labels.
        """
        if h is None:
            return {g: self.curvature(g) for g in self.calculus.hatG}
        sig = self.sigma()
        return {
            gp: project_two_form(self._curvature_raw(h, gp), sig)
            for gp in self.calculus.hatG
        }

    def curvature_is_zero(self):
        """True when every curvature 2-form vanishes."""
        if self._curvature_zero is None:
            sig = self.sigma()
            ok = True
            for h in self.calculus.hatG:
                for gp in self.calculus.hatG:
                    t = self._curvature_raw(h, gp)
                    if not (t - sig.apply(t)).is_zero():
                        ok = False
                        break
                if not ok:
                    break
            self._curvature_zero = ok
        return self._curvature_zero


def c_connection(calculus):
    """The connection whose coefficients are the structure constants."""
    calculus.require_left_covariant()
    sc = StructureConstants(calculus)
    gamma = {}
    for h in calculus.hatG:
        for g in calculus.hatG:
            for gp in calculus.hatG:
                c = sc.C(h, g, gp)
                if c:
                    gamma[(h, g, gp)] = c
    return Connection(calculus, gamma)


def canonical_connection(calculus):
    """The connection nabla phi = rho (x) phi.

    All its coefficients are Gamma^g_{g,g'} = -1; its twist map vanishes,
    so the tensor extension is nabla (x) id.
    """
    calculus.require_left_covariant()
    gamma = {}
    for g in calculus.hatG:
        for gp in calculus.hatG:
            gamma[(g, g, gp)] = -1
    return Connection(calculus, gamma)


def sigma_family(calculus, lambdas):
    """Member of the braid family of connections.

    The family is parametrized by one scalar per power of the braid
    operator: nabla phi = rho (x) phi - sum_n lambda_n sigma^n(phi (x) rho),
    with n running from 0 to one below the braid operator order.
    """
    sig = sigma_for(calculus)
    order = sig.order()
    lams = [Fraction(x) for x in lambdas]
    if len(lams) != order:
        raise BadLambdaLength(
            f"expected {order} parameters (the braid operator order), "
            f"got {len(lams)}"
        )
    counts = {}
    for n, lam in enumerate(lams):
        if lam == 0:
            continue
        for g in calculus.hatG:
            for h in calculus.hatG:
                u, v = sig.map_pair((g, h), n)
                key = (g, v, u)
                counts[key] = counts.get(key, Fraction(0)) + lam
    gamma = {}
    for g in calculus.hatG:
        for v in calculus.hatG:
            for u in calculus.hatG:
                val = counts.get((g, v, u), Fraction(0))
                if v == g:
                    val = val - 1
                if val:
                    gamma[(g, v, u)] = val
    return Connection(calculus, gamma)


def nabla_sigma(calculus):
    """The braid connection nabla phi = rho (x) phi - sigma(phi (x) rho).

    Every basis form theta^g is covariantly constant for it.
    """
    sig = sigma_for(calculus)
    lams = [Fraction(0)] * sig.order()
    lams[1 % len(lams)] = Fraction(1)
    return sigma_family(calculus, lams)


def nabla_sigma_inverse(calculus):
    """The braid connection built from the inverse power of sigma."""
    sig = sigma_for(calculus)
    lams = [Fraction(0)] * sig.order()
    lams[-1] = Fraction(1)
    return sigma_family(calculus, lams)


def flatness_representation_check(conn):
    """Test U_g U_g' = U_gg' for the transport matrices of a connection
    on the universal calculus.

    The matrices are U_g[h'][h] = delta^h_h' + Gamma^h_{h',g} for g in
    the reduced set, extended by U_e = id.  Returns True when they form
    a representation of the group.  The outcome is compared against the
    direct curvature computation; a mismatch between the two notions is
    flagged by raising AssertionError rather than silently preferring
    either answer.
    """
    cal = conn.calculus
    group = cal.group
    if len(cal.hatG) != group.order - 1:
        raise NotUniversal(
            "transport matrices need the universal calculus"
        )
    if not conn.is_left_invariant():
        raise UsageError("transport matrices need constant coefficients")
    n = len(cal.hatG)
    idx = {g: i for i, g in enumerate(cal.hatG)}
    ident = [
        [Fraction(1) if i == j else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    mats = {0: ident}
    for g in cal.hatG:
        m = [row[:] for row in ident]
        for hp in cal.hatG:
            for h in cal.hatG:
                f = conn.gamma.get((h, hp, g))
                if f is not None:
                    m[idx[hp]][idx[h]] += f.values[0]
        mats[g] = m
    is_rep = True
    labels = [0] + list(cal.hatG)
    for g in labels:
        for gp in labels:
            a, b, c = mats[g], mats[gp], mats[group.mul(g, gp)]
            for i in range(n):
                row = [
                    sum(a[i][k] * b[k][j] for k in range(n))
                    for j in range(n)
                ]
                if row != c[i]:
                    is_rep = False
                    break
            if not is_rep:
                break
        if not is_rep:
            break
    flat = conn.curvature_is_zero()
    if is_rep != flat:
        raise AssertionError(
            "transport representation property and zero curvature disagree "
            f"(representation={is_rep}, flat={flat})"
        )
    return is_rep


def _ad_orbits_on_triples(calculus):
    group = calculus.group
    seen = {}
    orbits = []
    for h in calculus.hatG:
        for g in calculus.hatG:
            for gp in calculus.hatG:
                key = (h, g, gp)
                if key in seen:
                    continue
                orb = set()
                stack = [key]
                while stack:
                    t = stack.pop()
                    if t in orb:
                        continue
                    orb.add(t)
                    for a in range(group.order):
                        img = tuple(group.adjoint(a, x) for x in t)
                        if img not in orb:
                            stack.append(img)
                orb = tuple(sorted(orb))
                orbits.append(orb)
                for t in orb:
                    seen[t] = orb
    return orbits


def invariance_constraints(calculus, mode="bi"):
    """Orbit structure of invariant connection coefficients.

    Left invariance forces the coefficients to be constants; in mode
    "left" each coefficient triple is then a free parameter.  Mode "bi"
    adds right covariance, identifying coefficients along the orbits of
    the diagonal adjoint action on triples.  Returns a dict with the
    orbit list and a predicate testing a given connection.
    """
    calculus.require_left_covariant()
    if mode == "left":
        orbits = [
            ((h, g, gp),)
            for h in calculus.hatG
            for g in calculus.hatG
            for gp in calculus.hatG
        ]
    elif mode == "bi":
        calculus.require_bicovariant()
        orbits = _ad_orbits_on_triples(calculus)
    else:
        raise ValueError(f"unknown invariance mode {mode!r}")

    def satisfies(conn):
        if conn.calculus != calculus:
            raise CalculusMismatch("connection lives on a different calculus")
        if not conn.is_left_invariant():
            return False
        for orb in orbits:
            vals = {conn.gamma_value(*t).values[0] for t in orb}
            if len(vals) > 1:
                return False
        return True

    return {"mode": mode, "orbits": orbits, "satisfies": satisfies}


class TorsionFreeFamily:
    """Affine family of invariant torsion-free connections.

    Members are parametrized by the free orbit variables; the family
    records a particular solution and a basis of the homogeneous
    solution space, both expressed over the coefficient orbits.
    """

    def __init__(self, calculus, mode, orbits, particular, basis):
        self.calculus = calculus
        self.mode = mode
        self.orbits = orbits
        self.particular = particular
        self.basis = basis

    @property
    def dimension(self):
        return len(self.basis)

    def member(self, params=None):
        if params is None:
            params = [Fraction(0)] * self.dimension
        params = [Fraction(p) for p in params]
        if len(params) != self.dimension:
            raise ValueError(
                f"expected {self.dimension} parameters, got {len(params)}"
            )
        vec = list(self.particular)
        for p, b in zip(params, self.basis):
            for i, x in enumerate(b):
                vec[i] += p * x
        gamma = {}
        for val, orb in zip(vec, self.orbits):
            if val:
                for t in orb:
                    gamma[t] = val
        return Connection(self.calculus, gamma)

    def contains(self, conn):
        """Parameters reproducing the connection, or None."""
        if conn.calculus != self.calculus:
            return None
        if not conn.is_left_invariant():
            return None
        target = []
        for orb in self.orbits:
            vals = {conn.gamma_value(*t).values[0] for t in orb}
            if len(vals) > 1:
                return None
            target.append(vals.pop())
        rows = [
            [self.basis[j][i] for j in range(self.dimension)]
            for i in range(len(self.orbits))
        ]
        rhs = [t - p for t, p in zip(target, self.particular)]
        try:
            sol, _ = solve_affine(rows, rhs)
        except Infeasible:
            return None
        return sol


def solve_torsion_free(calculus, mode="bi"):
    """Solve the torsion-free condition over invariant connections.

    On constant coefficients the condition reads

        Gamma^h_{g,g'} - Gamma^h_{ad(g)g',g}
            = -delta^h_{g'} + delta^h_{ad(g)g'}

    for all h, g, g' in the reduced set.  Returns a TorsionFreeFamily.
    """
    info = invariance_constraints(calculus, mode)
    orbits = info["orbits"]
    var_of = {}
    for i, orb in enumerate(orbits):
        for t in orb:
            var_of[t] = i
    group = calculus.group
    nvars = len(orbits)
    rows = []
    rhs = []
    for h in calculus.hatG:
        for g in calculus.hatG:
            for gp in calculus.hatG:
                adg = group.adjoint(g, gp)
                row = [Fraction(0)] * nvars
                row[var_of[(h, g, gp)]] += 1
                row[var_of[(h, adg, g)]] -= 1
                b = Fraction(0)
                if h == gp:
                    b -= 1
                if h == adg:
                    b += 1
                rows.append(row)
                rhs.append(b)
    particular, basis = solve_affine(rows, rhs)
    return TorsionFreeFamily(calculus, mode, orbits, particular, basis)


class ExtensibilityReport:
    """Outcome of testing a connection for the two-argument Leibniz rule.

    A connection is extensible when nabla(phi f) = (nabla phi) f
    + Psi(phi (x) df) holds with Psi = sigma - V for a bimodule map V.
    The attributes also record the stricter pointwise form, which in
    addition forbids coefficients on the diagonal slots.
    """

    def __init__(self, connection, extensible, violations,
                 psi_representable, psi_violations, v_map, w_map):
        self.connection = connection
        self.extensible = extensible
        self.violations = violations
        self.psi_representable = psi_representable
        self.psi_violations = psi_violations
        self.v_map = v_map
        self.w_map = w_map

    def v_apply(self, t):
        """Apply the bimodule map V to a tensor field."""
        cal = self.connection.calculus
        group = cal.group
        out = {}
        for (g, gp), f in t.coeffs.items():
            prod = group.mul(gp, g)
            for h in cal.hatG:
                hp = group.mul(group.inverse(h), prod)
                val = self.v_map.get((g, gp, h, hp))
                if val is not None:
                    key = (hp, h)
                    term = f * val
                    out[key] = out.get(key, zero(group)) + term
        return TensorField(
            cal, {k: v for k, v in out.items() if not v.is_zero()}
        )

    def psi_apply(self, t):
        """Apply the twist Psi = sigma - V to a tensor field."""
        if not self.extensible:
            raise NotExtensible(
                "connection does not satisfy the two-argument Leibniz rule"
            )
        sig = self.connection.sigma()
        return sig.apply(t) - self.v_apply(t)


def extensibility_analysis(conn):
    """Test a connection for extensibility and extract its twist map.

    nabla(phi f) = (nabla phi) f + Psi(phi (x) df) holds with a bimodule
    map Psi = sigma - V exactly when Gamma^g_{h,h'} vanishes whenever
    h h' g^-1 lies outside the reduced set and differs from the
    identity.  The stricter pointwise form additionally requires the
    coefficients with h h' = g to vanish.  Both verdicts are reported,
    together with the extracted maps V (off-diagonal) and W (diagonal).
    """
    cal = conn.calculus
    group = cal.group
    hset = set(cal.hatG)
    violations = []
    psi_violations = []
    v_map = {}
    w_map = {}
    for (g, h, hp), f in conn.gamma.items():
        t = group.mul(group.mul(h, hp), group.inverse(g))
        if t in hset:
            v_map[(g, t, h, hp)] = -f
        elif t == 0:
            w_map[(g, h, hp)] = -f
            psi_violations.append((g, h, hp))
        else:
            violations.append((g, h, hp))
            psi_violations.append((g, h, hp))
    violations.sort()
    psi_violations.sort()
    return ExtensibilityReport(
        conn,
        extensible=not violations,
        violations=violations,
        psi_representable=not psi_violations,
        psi_violations=psi_violations,
        v_map=v_map,
        w_map=w_map,
    )


def bimodule_hom_space(calculus, kind="V"):
    """Free coefficient slots of bimodule maps on tensor squares.

    Kind "V" lists the slots (g, g', h, h') with h h' = g' g available
    to maps Omega^1 (x) Omega^1 -> Omega^1 (x) Omega^1; kind "W" lists
    the slots (g, h, h') with h h' = g available to maps of the diagonal
    product type.  Entries may carry arbitrary function values.
    """
    calculus.require_left_covariant()
    group = calculus.group
    hatg = calculus.hatG
    hset = set(hatg)
    slots = []
    if kind == "V":
        for g in hatg:
            for gp in hatg:
                target = group.mul(gp, g)
                for h in hatg:
                    hp = group.mul(group.inverse(h), target)
                    if hp in hset:
                        slots.append((g, gp, h, hp))
    elif kind == "W":
        for g in hatg:
            for h in hatg:
                hp = group.mul(group.inverse(h), g)
                if hp in hset:
                    slots.append((g, h, hp))
    else:
        raise ValueError(f"unknown bimodule map kind {kind!r}")
    return slots


def _tensor3_left(t, phi):
    """(tensor field) (x) (1-form), transporting the form coefficients."""
    cal = t.calculus
    group = cal.group
    out = {}
    for (u, v), f in t.coeffs.items():
        trans = group.inverse(group.mul(v, u))
        for w in cal.hatG:
            c = phi.coeff(w)
            if c.is_zero():
                continue
            g = f * right_translate(trans, c)
            if not g.is_zero():
                out[(u, v, w)] = out.get((u, v, w), zero(group)) + g
    return Rank3Field(cal, {k: v for k, v in out.items() if not v.is_zero()})


def _extend_pair(report, phi, psi):
    conn = report.connection
    cal = conn.calculus
    group = cal.group
    out = _tensor3_left(conn.apply(phi), psi)
    nab_psi = conn.apply(psi)
    for g in cal.hatG:
        c = phi.coeff(g)
        if c.is_zero():
            continue
        ginv = group.inverse(g)
        for (u, v), f in nab_psi.coeffs.items():
            piece = TensorField(
                cal, {(g, u): c * right_translate(ginv, f)}
            )
            twisted = report.psi_apply(piece)
            extra = {}
            for (p, q), val in twisted.coeffs.items():
                extra[(p, q, v)] = val
            out = out + Rank3Field(cal, extra)
    return out


def extend_on_pair(conn, phi, psi):
    """nabla on the tensor square, applied to phi (x) psi.

    Computes (nabla phi) (x) psi + (Psi (x) id)(phi (x) nabla psi).
    Raises NotExtensible when the connection has no twist map.
    """
    report = extensibility_analysis(conn)
    if not report.extensible:
        raise NotExtensible("connection does not extend to tensor products")
    return _extend_pair(report, phi, psi)


def extend_to_tensor(conn, t):
    """nabla on the tensor square, applied to a tensor field.

    The field is decomposed along theta^g (x) (column forms) and each
    pair is extended; returns a rank 3 field.  Raises NotExtensible
    when the connection has no twist map.
    """
    report = extensibility_analysis(conn)
    if not report.extensible:
        raise NotExtensible("connection does not extend to tensor products")
    cal = conn.calculus
    group = cal.group
    out = Rank3Field(cal, {})
    for g in cal.hatG:
        col = {}
        for gp in cal.hatG:
            c = t.coeffs.get((g, gp))
            if c is not None:
                col[gp] = right_translate(g, c)
        psi = OneForm(cal, col)
        if psi.is_zero():
            continue
        out = out + _extend_pair(report, theta_form(cal, g), psi)
    return out


class TwoSidedConnection:
    """A connection on 1-forms with values in
    (Omega^1 (x) Gamma) + (Gamma (x) Omega^1), obeying the two-sided
    Leibniz rule nabla(f phi f') = df (x) phi f' + f phi (x) df'
    + f (nabla phi) f'.

    Stored through its action on a 1-form as a pair of tensor fields.
    """

    def __init__(self, calculus, left_map, right_map):
        calculus.require_left_covariant()
        self.calculus = calculus
        self._left = left_map
        self._right = right_map

    def apply(self, phi):
        return self._left(phi), self._right(phi)

    def check_leibniz(self, f, phi, fp):
        """Verify the two-sided Leibniz rule on the triple (f, phi, f')."""
        cal = self.calculus
        group = cal.group
        middle = phi.left_mul(f).right_mul(fp)
        lhs_l, lhs_r = self.apply(middle)
        nl, nr = self.apply(phi)

        def sandwich(t):
            return TensorField(
                cal,
                {
                    k: f
                    * v
                    * right_translate(
                        group.inverse(group.mul(k[1], k[0])), fp
                    )
                    for k, v in t.coeffs.items()
                },
            )

        df = differential(cal, f)
        dfp = differential(cal, fp)
        left_expected = sandwich(nl) + tensor_of_one_forms(
            df, phi.right_mul(fp)
        )
        right_expected = sandwich(nr) + tensor_of_one_forms(
            phi.left_mul(f), dfp
        )
        return (lhs_l - left_expected).is_zero() and (
            lhs_r - right_expected
        ).is_zero()


def two_sided_connection(calculus):
    """The basic two-sided connection phi -> (rho (x) phi, -phi (x) rho)."""
    calculus.require_left_covariant()
    r = rho(calculus)

    def left_map(phi):
        return tensor_of_one_forms(r, phi)

    def right_map(phi):
        return tensor_of_one_forms(phi, r).scale(Fraction(-1))

    return TwoSidedConnection(calculus, left_map, right_map)


def two_sided_space(calculus):
    """Describe the affine space of two-sided connections.

    The difference of two of them is a pair of bimodule maps from
    1-forms into tensor squares; each such map is supported on the
    diagonal slots listed by bimodule_hom_space(..., "W").  Returns a
    dict with the base connection, the slot lists for the two value
    factors, and the uniqueness verdict.
    """
    calculus.require_left_covariant()
    slots = bimodule_hom_space(calculus, "W")
    return {
        "base": two_sided_connection(calculus),
        "left_slots": list(slots),
        "right_slots": list(slots),
        "dimension": 2 * len(slots),
        "unique": not slots,
    }


def two_sided_square(ts, phi):
    """Square of a two-sided connection on a 1-form.

    Returns the three graded components of nabla(nabla phi): a dict
    mapping the middle label to a 2-form (forms on the left), a rank 3
    field (the mixed component), and a dict mapping the middle label to
    a 2-form (forms on the right).  Zero components are omitted from
    the dicts.
    """
    cal = ts.calculus
    group = cal.group
    sig = sigma_for(cal)
    r = rho(cal)
    left_part, right_part = ts.apply(phi)
    two_left = {}
    for v in cal.hatG:
        col = OneForm(
            cal,
            {
                u: left_part.coeffs[(u, v)]
                for u in cal.hatG
                if (u, v) in left_part.coeffs
            },
        )
        if col.is_zero():
            continue
        tf = d_one_form(col, sig) - wedge(col, r, sig)
        if not tf.is_zero():
            two_left[v] = tf
    mixed = {}
    for (u, v), c in left_part.coeffs.items():
        for w in cal.hatG:
            mixed[(u, v, w)] = mixed.get((u, v, w), zero(group)) + c
    for (u, v), c in right_part.coeffs.items():
        for w in cal.hatG:
            f = right_translate(group.inverse(w), c)
            mixed[(w, u, v)] = mixed.get((w, u, v), zero(group)) + f
    mixed_field = Rank3Field(
        cal, {k: v for k, v in mixed.items() if not v.is_zero()}
    )
    two_right = {}
    for u in cal.hatG:
        acc = None
        for v in cal.hatG:
            c = right_part.coeffs.get((u, v))
            if c is None:
                continue
            base = d_theta(cal, sig, v) - wedge(r, theta_form(cal, v), sig)
            piece = base.left_mul(right_translate(u, c))
            acc = piece if acc is None else acc + piece
        if acc is not None and not acc.is_zero():
            two_right[u] = acc
    return two_left, mixed_field, two_right


def verify_invariance_transport(conn):
    """Check that the twist, the tensor extension and the dual transport
    of a left-invariant extensible connection keep coefficients constant.

    Returns a dict of booleans.  Raises NotExtensible when the
    connection has no twist map.
    """
    report = extensibility_analysis(conn)
    if not report.extensible:
        raise NotExtensible("connection does not extend to tensor products")
    cal = conn.calculus
    ok_psi = True
    ok_tensor = True
    for g in cal.hatG:
        for gp in cal.hatG:
            t = tensor_of_one_forms(
                theta_form(cal, g), theta_form(cal, gp)
            )
            if not report.psi_apply(t).is_constant():
                ok_psi = False
            if not extend_to_tensor(conn, t).is_constant():
                ok_tensor = False
    from .dual import dual_connection, vector_field_basis

    ok_dual = True
    star = dual_connection(conn)
    for g in cal.hatG:
        dx = star.apply(vector_field_basis(cal, g))
        for f in dx.values():
            if not f.is_constant():
                ok_dual = False
    return {"psi": ok_psi, "tensor": ok_tensor, "dual": ok_dual}
