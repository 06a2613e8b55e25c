"""The audited laws: axioms of a synaptic algebra and their consequences.

A law is a function ``law(gen, ck)`` that draws inputs from ``gen`` and
records sub-checks on the :class:`Checker` ``ck``.  Every sub-check is a
residual ``R`` (an excess, so 0 means the law holds) compared with a bound
``B``.  In the exact model every ``B`` is 0.  In the matrix model ``B`` is
``1e-7 * (1 + scale)`` where ``scale`` is the size of the operands, unless
a check states otherwise; boolean equivalences are recorded as ``R in
{0, 1}`` with ``B = 0``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .. import calculus, lattice, spectral
from ..core import (
    Element,
    as_projection,
    carrier,
    commutes,
    in_bicommutant,
    is_effect,
    is_positive,
    is_projection,
    jordan_product,
    leq,
    product_norm,
    sandwich,
)

REL = 1e-7


@dataclass
class SubCheck:
    label: str
    residual: float
    bound: float

    @property
    def ok(self) -> bool:
        # written so that nan counts as a failure
        return bool(self.residual <= self.bound)


@dataclass
class Checker:
    model: object
    checks: list[SubCheck] = field(default_factory=list)
    error: str | None = None

    # -- bookkeeping -----------------------------------------------------------
    def _b(self, scale: float, rel: float = REL) -> float:
        return 0.0 if self.model.exact else rel * (1.0 + scale)

    def _el(self, x) -> Element:
        return x if isinstance(x, Element) else self.model.scalar(float(x))

    def add(self, label: str, residual: float, bound: float):
        self.checks.append(SubCheck(label, float(residual), float(bound)))

    @property
    def ok(self) -> bool:
        return self.error is None and all(c.ok for c in self.checks)

    def first_failure(self) -> SubCheck | None:
        for c in self.checks:
            if not c.ok:
                return c
        return None

    def worst(self) -> SubCheck | None:
        """The sub-check with the largest residual (failures first)."""
        if not self.checks:
            return None
        return max(self.checks, key=lambda c: (not c.ok, c.residual if c.residual == c.residual else math.inf))

    # -- check kinds -------------------------------------------------------------
    def holds(self, label: str, cond: bool):
        self.add(label, 0.0 if cond else 1.0, 0.0)

    def small(self, label: str, value: float, scale: float = 0.0, rel: float = REL, bound: float | None = None):
        self.add(label, max(0.0, value) if value == value else value, self._b(scale, rel) if bound is None else bound)

    def eq(self, label: str, x, y, rel: float = REL):
        x, y = self._el(x), self._el(y)
        m = self.model
        self.add(label, m.norm(x - y), self._b(max(m.norm(x), m.norm(y)), rel))

    def leq(self, label: str, x, y, rel: float = REL):
        x, y = self._el(x), self._el(y)
        m = self.model
        lowest = float(m.spectral_points(y - x)[0])
        self.add(label, max(0.0, -lowest), self._b(m.norm(x) + m.norm(y), rel))

    def product(self, label: str, a: Element, b: Element, c=None, rel: float = REL):
        """``||ab - c||`` in the enveloping algebra (``c = 0`` if omitted)."""
        m = self.model
        r = product_norm(a, b, minus=None if c is None else self._el(c))
        self.add(label, r, self._b(m.norm(a) * m.norm(b), rel))


def vanishes(a: Element, b: Element) -> bool:
    """Decide ``ab = 0`` (exactly in exact models, at ``1e-7`` scale otherwise)."""
    m = a.model
    r = product_norm(a, b)
    if m.exact:
        return r == 0.0
    return r <= REL * (1.0 + m.norm(a) * m.norm(b))


def is_zero(a: Element) -> bool:
    m = a.model
    return m.norm(a) == 0.0 if m.exact else m.norm(a) <= REL


def same(x: Element, y: Element) -> bool:
    m = x.model
    if m.exact:
        return bool(np.array_equal(x.data, y.data))
    return m.norm(x - y) <= REL * (1.0 + max(m.norm(x), m.norm(y)))


@dataclass(frozen=True)
class Law:
    id: str
    anchor: str
    group: str
    fn: Callable


LAWS: dict[str, Law] = {}


def law(law_id: str, anchor: str, group: str = "theorem"):
    def register(fn):
        if law_id in LAWS:
            raise ValueError(f"duplicate law id {law_id}")
        LAWS[law_id] = Law(law_id, anchor, group, fn)
        return fn

    return register


def axioms() -> list[Law]:
    return [x for x in LAWS.values() if x.group == "axiom"]


def theorems() -> list[Law]:
    return [x for x in LAWS.values() if x.group == "theorem"]


def _unit_fraction(g) -> float:
    # a dyadic factor just below 1, so the exact model stays exact
    return 1.0 - 2.0 ** -10


# ======================================================================================
# axioms
# ======================================================================================


@law("axiom.order_unit_norm", "||a|| is the least t with -t <= a <= t", "axiom")
def _(g, ck):
    a = g.record("a", g.element())
    m = g.model
    n = m.norm(a)
    ck.leq("-||a|| <= a", -n, a)
    ck.leq("a <= ||a||", a, n)
    if not is_zero(a):
        t = n * _unit_fraction(g)
        ck.holds("no smaller bound", not (leq(-t, a) and leq(a, t)))
    ck.leq("a <= ceil(||a||)", a, math.ceil(n))
    s = g.scalar(-2.0, 2.0)
    ck.small("||s a|| = |s| ||a||", abs(m.norm(s * a) - abs(s) * n), n)
    b = g.element()
    ck.small("triangle inequality", m.norm(a + b) - n - m.norm(b), n + m.norm(b))


@law("axiom.archimedean", "n a <= b for all n implies a <= 0", "axiom")
def _(g, ck):
    b = g.record("b", g.positive())
    c = g.record("c", g.positive())
    for a in (-c, g.element()):
        hyp = all(leq(n * a, b) for n in (1.0, 10.0, 1e3, 1e6))
        if hyp:
            ck.leq("a <= 0", a, 0.0)
        ck.holds("hypothesis implies conclusion", not hyp or leq(a, 0.0))


@law("axiom.commuting_positive_product", "commuting positives have a positive product", "axiom")
def _(g, ck):
    a, b = g.commuting(2, "positive")
    g.record("a", a)
    g.record("b", b)
    ck.leq("0 <= ab", 0.0, a * b)


@law("axiom.square_positive", "a^2 >= 0", "axiom")
def _(g, ck):
    a = g.record("a", g.element())
    ck.leq("0 <= a^2", 0.0, a * a)


@law("axiom.congruence_positive", "b >= 0 implies aba >= 0", "axiom")
def _(g, ck):
    a = g.record("a", g.element())
    b = g.record("b", g.positive())
    ck.leq("0 <= aba", 0.0, sandwich(a, b))


@law("axiom.sandwich_zero", "b >= 0 and aba = 0 imply ab = ba = 0", "axiom")
def _(g, ck):
    a, k = g.element_with_kernel()
    g.record("a", a)
    m = g.model
    for b in (sandwich(k, g.positive()), g.positive(), k):
        z = m.norm(sandwich(a, b))
        if m.exact:
            if z == 0.0:
                ck.product("ab = 0", a, b)
                ck.product("ba = 0", b, a)
            continue
        if z <= REL * (1.0 + m.norm(a) ** 2 * m.norm(b)):
            # ||ab|| <= sqrt(||aba|| ||b||) whenever b >= 0
            slack = math.sqrt(z * m.norm(b))
            extra = REL * (1.0 + m.norm(a) * m.norm(b))
            ck.small("ab = 0", product_norm(a, b), bound=slack + extra)
            ck.small("ba = 0", product_norm(b, a), bound=slack + extra)


@law("axiom.square_root", "a >= 0 has a positive square root in its double commutant", "axiom")
def _(g, ck):
    a = g.record("a", g.positive())
    r = g.model.sqrt(a)
    ck.leq("sqrt(a) >= 0", 0.0, r)
    ck.eq("sqrt(a)^2 = a", r * r, a)
    ck.holds("sqrt(a) in CC(a)", in_bicommutant(r, a))


@law("axiom.carrier", "ab = 0 iff a°b = 0, with a° a projection and a a° = a", "axiom")
def _(g, ck):
    a, k = g.element_with_kernel()
    g.record("a", a)
    p = carrier(a)
    ck.holds("carrier is a projection", is_projection(p))
    ck.product("a a° = a", a, p, a)
    ck.eq("a° = 1 - kernel", p, 1.0 - k)
    for b in (sandwich(k, g.positive()), g.element(), k, 1.0 - p, p):
        ck.holds("ab = 0 iff a°b = 0", vanishes(a, b) == vanishes(p, b))


@law("axiom.inverse_above_unit", "1 <= a implies a is invertible", "axiom")
def _(g, ck):
    a = g.record("a", g.at_least_one())
    r = calculus.inverse(a)
    unit = g.model.unit
    ck.small("a a^-1 = 1", product_norm(a, r, minus=unit), bound=0.0 if g.model.exact else 1e-8)
    ck.small("a^-1 a = 1", product_norm(r, a, minus=unit), bound=0.0 if g.model.exact else 1e-8)
    ck.leq("0 <= a^-1", 0.0, r)
    ck.leq("a^-1 <= 1", r, 1.0)


@law("axiom.commutant_limits", "limits of ascending commuting sequences in C(b) stay in C(b)", "axiom")
def _(g, ck):
    b = g.record("b", g.element())
    m = g.model
    dec = spectral.simple_decompose(b)
    us = dec.projections
    coef = g.distinct_values(len(us)) if len(us) > 1 else [g.scalar(-1.0, 1.0)]
    steps = [g.scalar(0.2, 0.9) for _ in us]

    def combo(vals):
        total = m.zero
        for v, u in zip(vals, us):
            total = total + v * u
        return total

    limit = combo(coef)
    top = max(steps)
    prev = None
    last = None
    for n in range(1, 13):
        an = combo([c - 2.0 ** -n * t for c, t in zip(coef, steps)])
        ck.holds("a_n in C(b)", commutes(an, b))
        ck.small("||a - a_n|| <= 2^-n", m.norm(limit - an) - 2.0 ** -n * top, 1.0)
        if prev is not None:
            ck.leq("a_n ascending", prev, an)
            ck.holds("a_n commute", commutes(prev, an))
        prev = last = an
    ck.holds("limit in C(b)", commutes(limit, b))
    delta = 2.0 ** -40
    moved = limit + delta * us[0]
    ck.holds("perturbed limit in C(b)", commutes(moved, b))
    ck.small("perturbed limit still approached", m.norm(moved - last) - 2.0 ** -12 * top - delta, 1.0)


# ======================================================================================
# norms and products
# ======================================================================================


@law("norm.laws", "||a^2|| = ||a||^2, norm bounds for differences and products")
def _(g, ck):
    a = g.record("a", g.element())
    b = g.record("b", g.element())
    m = g.model
    na, nb = m.norm(a), m.norm(b)
    lam = (na or 1.0) * float(g.rng.choice([0.75, 1.25]))
    ck.holds("-t <= a <= t iff a^2 <= t^2", (leq(-lam, a) and leq(a, lam)) == leq(a * a, lam * lam))
    ck.small("||a^2|| = ||a||^2", abs(m.norm(a * a) - na * na), na * na)
    c, d = g.positive(), g.positive()
    ck.small("||c - d|| <= max", m.norm(c - d) - max(m.norm(c), m.norm(d)), m.norm(c) + m.norm(d))
    ck.small("||a o b|| <= ||a|| ||b||", m.norm(jordan_product(a, b)) - na * nb, na * nb)
    x, y = g.commuting(2)
    ck.small("||xy|| <= ||x|| ||y||", m.norm(x * y) - m.norm(x) * m.norm(y), m.norm(x) * m.norm(y))


@law("jordan.identities", "a o 1 = a, commutativity, the Jordan identity, ab = a o b when commuting")
def _(g, ck):
    a = g.record("a", g.element())
    b = g.record("b", g.element())
    ck.eq("a o 1 = a", jordan_product(a, 1.0), a)
    ck.eq("a o b = b o a", jordan_product(a, b), jordan_product(b, a))
    ck.eq("a o a = a^2", jordan_product(a, a), a * a)
    a2 = a * a
    ck.eq("Jordan identity", jordan_product(jordan_product(a2, b), a), jordan_product(a2, jordan_product(b, a)))
    x, y = g.commuting(2)
    ck.eq("xy = x o y when commuting", x * y, jordan_product(x, y))


# ======================================================================================
# square roots, effects, carriers
# ======================================================================================


@law("sqrt.uniqueness", "the positive square root of a^2 is |a| whatever route computes it")
def _(g, ck):
    h = g.record("h", g.element())
    a = h * h
    r = g.model.sqrt(a)
    ck.eq("sqrt(h^2) = |h|", r, calculus.absolute(h))
    ck.leq("sqrt >= 0", 0.0, r)
    ck.eq("sqrt^2 = h^2", r * r, a)
    ck.holds("sqrt in CC(h^2)", in_bicommutant(r, a))
    ck.holds("sqrt commutes with h", commutes(r, h))


@law("effect.below_projection", "e <= p iff e = ep = pe iff e = pep")
def _(g, ck):
    p = g.record("p", g.projection())
    e = g.record("e", g.effect())
    f = sandwich(p, e)
    ck.leq("pep <= p", f, p)
    ck.product("fp = f", f, p, f)
    ck.product("pf = f", p, f, f)
    ck.eq("pfp = f", sandwich(p, f), f)
    below = leq(e, p)
    ep_is_e = product_norm(e, p, minus=e) <= (0.0 if g.model.exact else REL * (1.0 + g.model.norm(e)))
    ck.holds("e <= p iff ep = e", below == ep_is_e)
    ck.holds("e <= p iff pep = e", below == same(sandwich(p, e), e))


@law("effect.square_bounds", "0 <= e^2 <= e, and e - e^2 lies below both e and 1 - e")
def _(g, ck):
    e = g.record("e", g.effect())
    e2 = e * e
    ck.leq("0 <= e", 0.0, e)
    ck.leq("e <= 1", e, 1.0)
    ck.leq("0 <= e^2", 0.0, e2)
    ck.leq("e^2 <= e", e2, e)
    ck.holds("2e - e^2 is an effect", is_effect(2.0 * e - e2))
    ck.leq("e - e^2 <= e", e - e2, e)
    ck.leq("e - e^2 <= 1 - e", e - e2, 1.0 - e)


@law("effect.extreme_points", "projections are exactly the extreme effects")
def _(g, ck):
    p = g.record("p", g.projection())
    e = g.record("e", g.effect())
    m = g.model
    ck.eq("p - p^2 = 0", p - p * p, 0.0)
    grid = [0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875] if m.exact else [0.1 * i for i in range(1, 10)]
    lams = grid + [g.scalar()]
    rest = 1.0 - p
    candidates = (sandwich(p, e), e, sandwich(p, e) + 0.5 * sandwich(rest, e))
    for lam in lams:
        for x in candidates:
            ck.holds("lam x <= p implies x <= p", not leq(lam * x, p) or leq(x, p))
    x1, x2 = sandwich(p, g.effect()), sandwich(p, g.effect())
    ck.leq("x, y <= p and x + y effect imply x + y <= p", 0.5 * (x1 + x2), p)
    ck.holds("e projection iff e - e^2 = 0", is_projection(e) == is_zero(e - e * e))
    dec = spectral.simple_decompose(e)
    for alpha, u in zip(dec.coefficients, dec.projections):
        if 0.0 < alpha < 1.0 and (m.exact or min(alpha, 1.0 - alpha) > 1e-6):
            # a non-projection effect is below-scaled by an eigenprojection it does not dominate
            ck.holds("witness alpha u <= e", leq(alpha * u, e))
            ck.holds("witness u not <= e", not leq(u, e))
            ck.holds("e is a proper midpoint", is_effect(2.0 * e - e * e) and not is_zero(e - e * e))
            break


@law("carrier.properties", "carrier: smallest projection fixing a; annihilators, powers, order")
def _(g, ck):
    m = g.model
    a, k = g.element_with_kernel()
    g.record("a", a)
    c = carrier(a)
    ck.eq("0° = 0", carrier(m.zero), 0.0)
    p = g.projection()
    ck.eq("p° = p", carrier(p), p)
    ck.product("a a° = a", a, c, a)
    r = g.projection()
    e = sandwich(r, g.effect())
    ck.leq("e <= e°", e, carrier(e))
    ck.leq("e <= r implies e° <= r", carrier(e), r)
    for b in (sandwich(k, g.positive()), g.element(), k):
        bc = carrier(b)
        z = vanishes(a, b)
        ck.holds("ab = 0 iff ab° = 0", z == vanishes(a, bc))
        ck.holds("ab = 0 iff a°b° = 0", z == vanishes(c, bc))
    ck.holds("a° in CC(a)", in_bicommutant(c, a))
    power = a
    for n in range(1, 5):
        ck.eq(f"(a^{n})° = a°", carrier(power), c, rel=1e-9)
        power = power * a
    x, d = g.commuting(2, "positive")
    y = x + d
    ck.leq("0 <= x <= y implies x° <= y°", carrier(x), carrier(y))


# ======================================================================================
# positive and negative parts, polar form
# ======================================================================================


@law("parts.positive_negative", "a = a+ - a-, |a| = a+ + a-, a+ a- = 0, (a+)° + (a-)° = a°")
def _(g, ck):
    a = g.record("a", g.element())
    ap, an, ab = calculus.pos_part(a), calculus.neg_part(a), calculus.absolute(a)
    p, q = carrier(ap), carrier(an)
    ck.product("p a = a+", p, a, ap)
    ck.product("q a = -a-", q, a, -an)
    ck.product("p |a| = a+", p, ab, ap)
    ck.product("q |a| = a-", q, ab, an)
    ck.product("pq = 0", p, q)
    ck.eq("p + q = a°", p + q, carrier(a))
    ck.holds("p in CC(a)", in_bicommutant(p, a))
    ck.holds("q in CC(a)", in_bicommutant(q, a))
    ck.product("a+ a- = 0", ap, an)
    ck.eq("a = a+ - a-", ap - an, a)
    ck.eq("|a| = a+ + a-", ap + an, ab)
    ck.leq("a+ >= 0", 0.0, ap)
    ck.leq("a- >= 0", 0.0, an)
    ck.eq("a- = (-a)+", an, calculus.pos_part(-a))


@law("order.monotone_squares", "for commuting positives a^2 <= b^2 iff a <= b")
def _(g, ck):
    a, b0, c = g.commuting(3, "positive")
    b = a + c if g.rng.random() < 0.5 else b0
    g.record("a", a)
    g.record("b", b)
    lhs, rhs = leq(a * a, b * b), leq(a, b)
    ck.holds("a^2 <= b^2 iff a <= b", lhs == rhs)
    if rhs:
        ck.leq("a^2 <= b^2", a * a, b * b)


@law("polar.decomposition", "a = sgn(a)|a| with sgn(a) a symmetry on a° in CC(a)")
def _(g, ck):
    a = g.record("a", g.element())
    pol = calculus.polar(a)
    scale = g.model.norm(a)
    for label, r in pol.residuals().items():
        ck.small(label, r, scale)
    s = pol.signum
    ck.holds("sgn(a) in CC(a)", in_bicommutant(s, a))
    ck.product("sgn^3 = sgn", s, s * s, s)
    ck.product("a sgn = |a|", a, s, pol.absolute)


@law("absolute.annihilators", "ab = 0 iff |a|b = 0, and |a|° = a°")
def _(g, ck):
    a, k = g.element_with_kernel()
    g.record("a", a)
    ab = calculus.absolute(a)
    for b in (sandwich(k, g.element()), g.element(), k):
        ck.holds("ab = 0 iff |a|b = 0", vanishes(a, b) == vanishes(ab, b))
    ck.eq("|a|° = a°", carrier(ab), carrier(a))


# ======================================================================================
# quadratic maps, compressions, corners
# ======================================================================================


@law("quadratic.linear_monotone", "b -> aba is linear and order preserving")
def _(g, ck):
    a = g.record("a", g.element())
    b, c, d = g.element(), g.element(), g.positive()
    s, t = g.scalar(-1.0, 1.0), g.scalar(-1.0, 1.0)
    J = calculus.quadratic_map
    ck.eq("linear", J(a, s * b + t * c), s * J(a, b) + t * J(a, c))
    ck.leq("b <= b + d implies J(b) <= J(b + d)", J(a, b), J(a, b + d))
    ck.eq("J_a(1) = a^2", J(a, g.model.unit), a * a)


@law("quadratic.norm_bound", "||aba|| <= ||a||^2 ||b||; ||p|| = 1 for p != 0")
def _(g, ck):
    a = g.record("a", g.element())
    b = g.record("b", g.element())
    m = g.model
    J = calculus.quadratic_map
    bound = m.norm(a) ** 2 * m.norm(b)
    ck.small("||J_a(b)|| <= ||a||^2 ||b||", m.norm(J(a, b)) - bound, bound)
    p = g.proper_projection()
    if not is_zero(p):
        ck.small("||p|| = 1", abs(m.norm(p) - 1.0), 1.0)
    ck.small("||J_p(b)|| <= ||b||", m.norm(J(p, b)) - m.norm(b), m.norm(b))


@law("compression.properties", "J_p fixes effects below p, J_p(1) = p; a in C(p) iff a = J_p(a) + J_p'(a)")
def _(g, ck):
    p = g.record("p", g.projection())
    J = calculus.quadratic_map
    ck.eq("J_p(1) = p", J(p, g.model.unit), p)
    e = J(p, g.effect())
    ck.eq("J_p(e) = e for e <= p", J(p, e), e)
    b, d = g.element(), g.positive()
    ck.leq("order preserving", J(p, b), J(p, b + d))
    ck.eq("J_p idempotent", J(p, J(p, b)), J(p, b))
    q, x = g.commuting(2, ["projection", "element"])
    ck.eq("commuting split", J(q, x) + J(1.0 - q, x), x)
    y = g.element()
    ck.holds("y in C(p) iff y splits", commutes(y, p) == same(J(p, y) + J(1.0 - p, y), y))


@law("order.monotone_limits", "ascending norm-convergent sequences stay below their limit; the cone is closed")
def _(g, ck):
    a = g.record("a", g.element())
    c, d = g.positive(), g.positive()
    m = g.model
    b = a + d
    prev = None
    for n in range(1, 13):
        an = a - 2.0 ** -n * c
        ck.leq("a_n <= a", an, a)
        ck.leq("a_n <= b", an, b)
        ck.small("||a - a_n|| <= 2^-n ||c||", m.norm(a - an) - 2.0 ** -n * m.norm(c), m.norm(c))
        if prev is not None:
            ck.leq("ascending", prev, an)
        prev = an
        ck.leq("positive sequence", 0.0, c + 2.0 ** -n * d)
    ck.leq("limit below upper bound", a, b)
    ck.leq("limit of positives is positive", 0.0, c)


@law("sasaki.properties", "phi_a(b) = (aba)° is a monotone projection below a°, with phi_a(b)c = 0 iff phi_a(c)b = 0")
def _(g, ck):
    a = g.record("a", g.element())
    b = g.record("b", g.positive())
    c = b + g.positive()
    phi = calculus.sasaki_map
    pb = phi(a, b)
    ac = carrier(a)
    ck.holds("phi_a(b) is a projection", is_projection(pb))
    ck.eq("phi_a(1) = a°", phi(a, g.model.unit), ac)
    ck.leq("phi_a(b) <= a°", pb, ac)
    ck.leq("monotone", pb, phi(a, c))
    y = sandwich(1.0 - pb, g.positive())
    ck.product("phi_a(b) y = 0", pb, y)
    ck.product("then phi_a(y) b = 0", phi(a, y), b)
    x = g.positive()
    ck.holds("phi_a(b)x = 0 iff phi_a(x)b = 0", vanishes(pb, x) == vanishes(phi(a, x), b))
    ck.eq("phi_a(b) = phi_a(b°)", pb, phi(a, carrier(b)))


@law("corner.algebra", "vAv is a synaptic algebra with unit v under the inherited operations")
def _(g, ck):
    m = g.model
    v, x0, c0 = g.commuting(3, ["projection", "element", "positive"])
    if is_zero(v):
        v = m.unit
    g.record("v", v)
    V = calculus.corner(v)
    J = calculus.quadratic_map
    x, y = J(v, x0), J(v, g.element())
    pos = J(v, c0)
    ck.holds("x in vAv", V.contains(x))
    ck.eq("unit", J(v, m.unit), v)
    derived = {
        "x o y": jordan_product(x, y),
        "J_x(y)": J(x, y),
        "x°": carrier(x),
        "|x|": calculus.absolute(x),
        "x+": calculus.pos_part(x),
        "sgn(x)": calculus.signum(x),
        "sqrt": V.sqrt(pos),
        "pseudo-inverse": calculus.pseudo_inverse(x),
    }
    for label, z in derived.items():
        ck.holds(f"{label} in vAv", V.contains(z))
    b = v + pos
    r = V.inverse(b)
    ck.holds("inverse in vAv", V.contains(r))
    ck.product("b r = v", b, r, v)
    ck.product("r b = v", r, b, v)
    n = V.norm(x)
    ck.leq("-n v <= x", -n * v, x)
    ck.leq("x <= n v", x, n * v)
    if not is_zero(x):
        t = n * _unit_fraction(g)
        ck.holds("norm is tight in vAv", not (leq(-t * v, x) and leq(x, t * v)))


# ======================================================================================
# projection lattice
# ======================================================================================

meet, join, ortho = lattice.meet, lattice.join, lattice.ortho


def _below(g, q):
    """A projection below ``q``."""
    return calculus.sasaki_map(q, g.projection())


@law("lattice.commuting_projections", "for commuting p, q: p ^ q = pq; orthogonal joins add; q - p = p' ^ q for p <= q")
def _(g, ck):
    p, q = g.commuting(2, "projection")
    g.record("p", p)
    g.record("q", q)
    ck.eq("p ^ q = pq", lattice.meet(p, q), p * q)
    ck.eq("p v q = p + q - pq", lattice.join(p, q), p + q - p * q)
    r1, r2 = g.partition_projections(2)
    ck.holds("r1 orthogonal to r2", lattice.orthogonal(r1, r2))
    ck.eq("orthogonal join is the sum", lattice.join(r1, r2), r1 + r2)
    big = g.projection()
    small = _below(g, big)
    ck.leq("p <= q", small, big)
    ck.eq("q - p = p' ^ q", big - small, lattice.meet(lattice.ortho(small), big))
    ck.eq("orthomodular law", lattice.join(small, lattice.meet(lattice.ortho(small), big)), big)


@law("sasaki.suprema", "phi_a preserves joins; phi_a(p) orthogonal to q iff p orthogonal to phi_a(q)")
def _(g, ck):
    a = g.record("a", g.element())
    q1 = g.record("q1", g.projection())
    q2 = g.record("q2", g.projection())
    phi = calculus.sasaki_map
    ck.eq("phi_a(q1 v q2) = phi_a(q1) v phi_a(q2)", phi(a, lattice.join(q1, q2)), lattice.join(phi(a, q1), phi(a, q2)))
    p = g.projection()
    q = lattice.ortho(phi(a, p))
    ck.holds("phi_a(p) orthogonal to q", lattice.orthogonal(phi(a, p), q))
    ck.holds("hence p orthogonal to phi_a(q)", lattice.orthogonal(p, phi(a, q)))
    r = g.projection()
    ck.holds("equivalence on a random pair", lattice.orthogonal(phi(a, p), r) == lattice.orthogonal(p, phi(a, r)))


@law("sasaki.lattice_meet", "phi_p(q) <= p, fixes q <= p, kills q orthogonal to p; p ^ q = p - phi_p(q')")
def _(g, ck):
    m = g.model
    p = g.record("p", g.projection())
    q = g.record("q", g.projection())
    phi = calculus.sasaki_map
    ck.leq("phi_p(q) <= p", phi(p, q), p)
    s = phi(p, q)
    ck.eq("q <= p implies phi_p(q) = q", phi(p, s), s)
    ck.holds("q <= p iff phi_p(q) = q", leq(q, p) == same(phi(p, q), q))
    t = phi(1.0 - p, q)
    ck.eq("q orthogonal to p implies phi_p(q) = 0", phi(p, t), 0.0)
    ck.holds("q orthogonal to p iff phi_p(q) = 0", lattice.orthogonal(q, p) == is_zero(phi(p, q)))
    mt = lattice.meet(p, q)
    ck.leq("p ^ q <= p", mt, p)
    ck.leq("p ^ q <= q", mt, q)
    oracle = lattice.range_meet(p, q)
    if m.exact:
        ck.eq("meet = intersection", mt, oracle)
    else:
        ck.holds("rank of meet = rank of intersection", lattice.rank(mt) == lattice.rank(oracle))
        ck.small("meet close to intersection", lattice.subspace_distance(mt, oracle), bound=1e-6)


@law("lattice.orthomodular", "projections form an orthomodular lattice satisfying the Sasaki identity")
def _(g, ck):
    p = g.record("p", g.projection())
    q = g.record("q", g.projection())
    r = g.record("r", g.projection())
    M, Jn, O = lattice.meet, lattice.join, lattice.ortho
    ck.small("phi_p(q) = p ^ (p' v q)", lattice.sasaki_identity_residual(p, q), 1.0)
    ck.eq("meet commutative", M(p, q), M(q, p))
    ck.eq("join commutative", Jn(p, q), Jn(q, p))
    ck.eq("meet associative", M(M(p, q), r), M(p, M(q, r)))
    ck.eq("join associative", Jn(Jn(p, q), r), Jn(p, Jn(q, r)))
    ck.eq("absorption p ^ (p v q) = p", M(p, Jn(p, q)), p)
    ck.eq("absorption p v (p ^ q) = p", Jn(p, M(p, q)), p)
    ck.eq("De Morgan (p v q)' = p' ^ q'", O(Jn(p, q)), M(O(p), O(q)))
    ck.eq("De Morgan (p ^ q)' = p' v q'", O(M(p, q)), Jn(O(p), O(q)))
    ck.eq("p'' = p", O(O(p)), p)
    ck.eq("p ^ p' = 0", M(p, O(p)), 0.0)
    ck.eq("p v p' = 1", Jn(p, O(p)), 1.0)
    small = _below(g, q)
    ck.eq("orthomodular law", Jn(small, M(O(small), q)), q)
    ck.holds("compatible iff commuting (random pair)", lattice.compatible(p, q) == lattice.compatible_by_lattice(p, q))
    x, y = g.commuting(2, "projection")
    ck.holds("commuting pair is compatible", lattice.compatible_by_lattice(x, y))


# ======================================================================================
# inverses and regularity
# ======================================================================================


@law("inverse.properties", "a is invertible iff eps <= |a| for some eps > 0; |a|^-1 = |a^-1|")
def _(g, ck):
    a = g.record("a", g.invertible())
    m = g.model
    ck.holds("invertible", calculus.is_invertible(a))
    r = calculus.inverse(a)
    ck.product("a a^-1 = 1", a, r, m.unit)
    ck.eq("|a^-1| = |a|^-1", calculus.absolute(r), calculus.inverse(calculus.absolute(a)))
    ck.holds("a^-1 in CC(a)", in_bicommutant(r, a))
    eps = float(np.abs(m.spectral_points(a)).min())
    ck.leq("eps <= |a|", eps, calculus.absolute(a))
    c = g.at_least_one()
    ck.leq("positive inverse", 0.0, calculus.inverse(c))
    b, k = g.element_with_kernel()
    ck.holds("a nonzero kernel blocks invertibility", is_zero(k) or not calculus.is_invertible(b))


@law("regular.pseudo_inverse", "every element is regular with pseudo-inverse r: ar = ra = a°, r in a°Aa°")
def _(g, ck):
    a = g.record("a", g.element())
    m = g.model
    ck.holds("regular", calculus.is_regular(a))
    r = calculus.pseudo_inverse(a)
    c = carrier(a)
    ck.product("a r = a°", a, r, c)
    ck.product("r a = a°", r, a, c)
    ck.eq("r = a° r a°", sandwich(c, r), r)
    ck.holds("r in CC(a)", in_bicommutant(r, a))
    ck.eq("a r a = a", sandwich(a, r), a)
    ck.eq("pseudo-inverse is an involution", calculus.pseudo_inverse(r), a)
    full = same(c, m.unit)
    ck.holds("invertible iff regular with a° = 1", calculus.is_invertible(a) == (calculus.is_regular(a) and full))


@law("regular.parts", "a is regular iff a+ and a- are regular")
def _(g, ck):
    a = g.record("a", g.element())
    ck.holds(
        "regular(a) iff regular(a+) and regular(a-)",
        calculus.is_regular(a) == (calculus.is_regular(calculus.pos_part(a)) and calculus.is_regular(calculus.neg_part(a))),
    )


# ======================================================================================
# spectral theory
# ======================================================================================


@law("spectral.compression_base", "compressions by (a+)° split a by sign; J_{p+r} J_{q+r} = J_r; a' = 1 - a° is a Rickart map")
def _(g, ck):
    a, k = g.element_with_kernel()
    g.record("a", a)
    J = calculus.quadratic_map
    p = carrier(calculus.pos_part(a))
    ck.leq("J_p(a) >= 0", 0.0, J(p, a))
    ck.leq("J_p'(a) <= 0", J(1.0 - p, a), 0.0)
    r1, r2, r3 = g.partition_projections(3)
    x = g.element()
    ck.eq("J_{p+r} J_{q+r} = J_r", J(r1 + r3, J(r2 + r3, x)), J(r3, x))
    prime = 1.0 - carrier(a)
    t = _below(g, k)
    ck.holds("t <= a' gives at = 0", vanishes(a, t))
    ck.leq("t <= a'", t, prime)
    s = g.projection()
    ck.holds("s <= a' iff as = 0", leq(s, prime) == vanishes(a, s))
    u, w = g.commuting(2, "projection")
    d = u * w
    ck.holds("meet of commuting projections is a projection", is_projection(d))
    ck.leq("d + (u - d) + (w - d) <= 1", u + w - d, 1.0)


@law("spectral.resolution", "p_t = 1 - ((a - t)+)° is an ascending right-continuous family in CC(a)")
def _(g, ck):
    a = g.record("a", g.element())
    m = g.model
    res = spectral.spectral_resolution(a)
    pts = list(res.breakpoints)
    lo, hi = res.bounds
    ps, ds = res.projections_at, res.eigenprojections_at
    for x in ps + ds:
        ck.holds("in CC(a)", in_bicommutant(x, a))
    extra = [float(g.rng.uniform(lo - 0.5, hi + 0.5)) for _ in range(2)]
    for lam in pts + extra:
        p = spectral.resolution_at(a, lam)
        ck.leq("p_t (a - t) <= 0", sandwich(p, a - lam), 0.0)
        ck.leq("(1 - p_t)(a - t) >= 0", 0.0, sandwich(1.0 - p, a - lam))
        ck.eq("lookup agrees with formula", res.at(lam), p)
    for i in range(len(pts) - 1):
        ck.holds("consecutive commute", commutes(ps[i], ps[i + 1]))
        ck.leq("ascending", ps[i], ps[i + 1])
        ck.eq("p_u - p_t = p_u ^ p_t'", ps[i + 1] - ps[i], lattice.meet(ps[i + 1], lattice.ortho(ps[i])))
        ck.leq("d_t <= p_t", ds[i], ps[i])
        ck.leq("p_t <= 1 - d_u", ps[i], 1.0 - ds[i + 1])
        ck.holds("d_t orthogonal to d_u", vanishes(ds[i], ds[i + 1]))
    ck.eq("p_U = 1", ps[-1], 1.0)
    if len(pts) > 1:
        ck.holds("p_t != 1 below U", not same(spectral.resolution_at(a, 0.5 * (pts[-2] + hi)), m.unit))
    ck.eq("p_t = 0 below L", spectral.resolution_at(a, lo - 0.25), 0.0)
    ck.holds("p_t != 0 above L", not is_zero(spectral.resolution_at(a, lo + 0.5 * ((pts[1] - lo) if len(pts) > 1 else 1.0))))
    for i, alpha in enumerate(pts):
        up = (pts[i + 1] - alpha) if i + 1 < len(pts) else 1.0
        down = (alpha - pts[i - 1]) if i > 0 else 1.0
        f = float(g.rng.uniform(0.05, 0.5))
        ck.eq("right continuity", spectral.resolution_at(a, alpha + f * up), ps[i])
        ck.eq("p_t - d_t = sup below t", ps[i] - ds[i], spectral.resolution_at(a, alpha - f * down))


def _tags(g, part):
    return [float(g.rng.uniform(x, y)) for x, y in zip(part, part[1:])]


@law("spectral.riemann", "Riemann sums sum g_i (p_{t_i} - p_{t_(i-1)}) approximate a within the mesh")
def _(g, ck):
    a = g.record("a", g.element())
    m = g.model
    lo, hi = spectral.spectral_bounds(a)
    width = (hi - lo) or 1.0
    for frac in (1.0, 0.5, 0.25, 0.125):
        mesh = frac * width
        part = spectral.uniform_partition(a, mesh, float(g.rng.uniform(0.05, 0.95)))
        rs = spectral.riemann_approx(a, part, _tags(g, part))
        ck.small("||a - sum|| <= mesh", m.norm(a - rs.value) - rs.mesh, m.norm(a))
        total = m.zero
        for u in rs.cells:
            total = total + u
        ck.eq("cells sum to 1", total, 1.0)
        if frac == 0.125:
            for u in rs.cells:
                ck.holds("cell in CC(a)", in_bicommutant(u, a))


@law("spectral.ascending", "dyadic left-endpoint sums ascend to a within (U - L) / 2^k")
def _(g, ck):
    a = g.record("a", g.element())
    m = g.model
    lo, hi = spectral.spectral_bounds(a)
    seq = spectral.ascending_approx(a, 10)
    for k, ak in enumerate(seq, start=1):
        ck.leq("a_k <= a", ak, a)
        ck.small("||a - a_k|| <= (U - L) / 2^k", m.norm(a - ak) - (hi - lo) / 2 ** k, m.norm(a))
        if k > 1:
            ck.leq("ascending", seq[k - 2], ak)
    for k in (1, 5, 10):
        ck.holds("a_k in CC(a)", in_bicommutant(seq[k - 1], a))


def _eigvals(a: Element) -> np.ndarray:
    # independent route: LAPACK for matrices, the values themselves for functions
    return np.linalg.eigvalsh(a.data) if a.data.ndim == 2 else np.asarray(a.data)


@law("spectral.spectrum", "spec(a) is where p_t is not locally constant; its extremes are L and U")
def _(g, ck):
    a = g.record("a", g.element())
    m = g.model
    pts = spectral.spectrum(a)
    lo, hi = spectral.spectral_bounds(a)
    w = _eigvals(a)
    ck.small("min spec = L", abs(lo - w.min()), m.norm(a))
    ck.small("max spec = U", abs(hi - w.max()), m.norm(a))
    ck.small("||a|| = max |spec|", abs(m.norm(a) - np.abs(pts).max()), m.norm(a))
    for x in (a, g.positive()):
        cut = 0.0 if m.exact else m.tol.psd * (1.0 + m.norm(x))
        ck.holds("a >= 0 iff spec >= 0", is_positive(x) == bool(spectral.spectrum(x)[0] >= -cut))
    p = g.projection()
    ps = spectral.spectrum(p)
    ck.small("projection spec in {0, 1}", float(np.minimum(np.abs(ps), np.abs(ps - 1.0)).max()), 1.0)
    for lam in pts:
        ck.holds("spectral points are eigenvalues", not is_zero(spectral.eigenprojection_at(a, lam)))
    for x, y in zip(pts, pts[1:]):
        mid = 0.5 * (x + y)
        ck.holds("gaps are not eigenvalues", is_zero(spectral.eigenprojection_at(a, mid)))
        ck.eq("p_t locally constant in gaps", spectral.resolution_at(a, mid), spectral.resolution_at(a, x))


@law("spectral.simple", "a = sum alpha_i u_i uniquely with alpha ascending and u_i orthogonal projections")
def _(g, ck):
    a = g.record("a", g.element())
    m = g.model
    dec = spectral.simple_decompose(a)
    al, us = dec.coefficients, dec.projections
    ck.eq("sum alpha u = a", dec.value(), a)
    ck.holds("alpha strictly ascending", spectral.is_simple_decomposition_valid(dec))
    for i, u in enumerate(us):
        ck.holds("u_i != 0", not is_zero(u))
        for v in us[i + 1:]:
            ck.product("u_i u_j = 0", u, v)
    total = m.zero
    for u in us:
        total = total + u
    ck.eq("sum u = 1", total, 1.0)
    ck.small("||a|| = max |alpha|", abs(m.norm(a) - max(abs(x) for x in al)), m.norm(a))
    ck.eq("a° from alpha", dec.carrier(), carrier(a))
    absval = m.zero
    for x, u in zip(al, us):
        absval = absval + abs(x) * u
    ck.eq("|a| from alpha", absval, calculus.absolute(a))
    ck.eq("pseudo-inverse from alpha", dec.pseudo_inverse(), calculus.pseudo_inverse(a))
    again = spectral.simple_decompose(dec.value())
    ck.holds("re-decomposition has the same length", len(again.coefficients) == len(al))
    if len(again.coefficients) == len(al):
        for x, y in zip(al, again.coefficients):
            ck.small("same alpha", abs(x - y), abs(x))
        for u, v in zip(us, again.projections):
            ck.eq("same u", u, v)
    parts = g.partition_projections(3)
    rest = as_projection(1.0 - (parts[0] + parts[1] + parts[2]))
    blocks = [x for x in parts + [rest] if not is_zero(x)]
    vals = g.distinct_values(len(blocks))
    b = m.zero
    for v, x in zip(vals, blocks):
        b = b + v * x
    got = spectral.simple_decompose(b)
    ck.holds("recovers the number of terms", len(got.coefficients) == len(blocks))
    if len(got.coefficients) == len(blocks):
        order = np.argsort(vals)
        for j, i in enumerate(order):
            ck.small("recovers alpha", abs(got.coefficients[j] - vals[i]), abs(vals[i]))
            ck.eq("recovers u", got.projections[j], blocks[i])


@law("spectral.commutation", "b commutes with a iff b commutes with every p_t of a")
def _(g, ck):
    a = g.record("a", g.element())
    res = spectral.spectral_resolution(a)
    x, y = g.commuting(2)
    for b in (g.element(), a * a, res.projections_at[0]):
        ck.holds("spectral commutation iff commutation", spectral.spectrally_commutes(b, a, res) == commutes(a, b))
    ck.holds("commuting pair", spectral.spectrally_commutes(y, x))
    ck.holds("commuting pair (reverse)", spectral.spectrally_commutes(x, y))


@law("spectral.commutant_closed", "C(a) is closed under limits and the algebra operations")
def _(g, ck):
    a, b, c = g.commuting(3)
    g.record("a", a)
    for n in range(1, 13):
        ck.holds("b_n in C(a)", commutes(b + 2.0 ** -n * c, a))
    ck.holds("limit in C(a)", commutes(b, a))
    derived = {
        "b o c": jordan_product(b, c),
        "b°": carrier(b),
        "|b|": calculus.absolute(b),
        "b+": calculus.pos_part(b),
        "J_b(c)": calculus.quadratic_map(b, c),
        "phi_b(c)": calculus.sasaki_map(b, c),
        "b^2": b * b,
    }
    for label, z in derived.items():
        ck.holds(f"{label} in C(a)", commutes(z, a))
