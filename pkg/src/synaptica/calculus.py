"""Constructions built only from the model contract.

Absolute value, positive and negative parts, signum and polar form,
quadratic (compression) maps, Sasaki maps, inverses, regularity and
pseudo-inverses, and corner algebras ``vAv``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    Element,
    NotInvertibleError,
    NotProjectionError,
    NotRegularError,
    Projection,
    SynapticModel,
    as_projection,
    carrier,
    check_same_model,
    is_positive,
    leq,
    product_norm,
    sandwich,
)


def absolute(a: Element) -> Element:
    """``|a|``, the positive square root of ``a²``."""
    return a.model.abs(a)


def pos_part(a: Element) -> Element:
    """``a⁺ = (|a| + a) / 2``."""
    return a.model.pos_part(a)


def neg_part(a: Element) -> Element:
    """``a⁻ = (|a| - a) / 2 = (-a)⁺``."""
    return pos_part(-a)


def signum(a: Element) -> Element:
    """``(a⁺)° - (a⁻)°``."""
    return carrier(pos_part(a)) - carrier(neg_part(a))


@dataclass(frozen=True)
class PolarForm:
    signum: Element
    absolute: Element
    original: Element

    def residuals(self) -> dict[str, float]:
        """Defects of the polar identities, measured in the enveloping algebra."""
        s, r, a = self.signum, self.absolute, self.original
        return {
            "sgn*|a| = a": product_norm(s, r, minus=a),
            "|a|*sgn = a": product_norm(r, s, minus=a),
            "sgn*a = |a|": product_norm(s, a, minus=r),
            "sgn^2 = a°": product_norm(s, s, minus=carrier(a)),
        }


def polar(a: Element) -> PolarForm:
    return PolarForm(signum=signum(a), absolute=absolute(a), original=a)


def quadratic_map(a: Element, b: Element) -> Element:
    """``J_a(b) = aba``."""
    return sandwich(a, b)


compression = quadratic_map


def sasaki_map(a: Element, b: Element) -> Projection:
    """``φ_a(b) = (aba)°``."""
    return carrier(quadratic_map(a, b))


# -- invertibility and regularity ---------------------------------------------------


def _cut(a: Element) -> float:
    m = a.model
    if m.exact:
        return 0.0
    return m.tol.rank_cut(m.norm(a))


def is_invertible(a: Element) -> bool:
    """Invertible iff ``|a|`` is bounded below by a positive constant.

    In the finite models that constant is the smallest ``|λ|`` over the
    spectrum, so the test is ``min |spec(a)| > rank cut``.
    """
    pts = a.model.spectral_points(a)
    return bool(np.abs(pts).min() > _cut(a))


def inverse(a: Element) -> Element:
    if not is_invertible(a):
        raise NotInvertibleError("element is not invertible")
    return a.model.inverse(a)


def regularity_constant(a: Element) -> float:
    """Largest ``ε`` with ``ε a° <= |a|``: the smallest nonzero ``|λ|`` (``inf`` for ``a = 0``)."""
    pts = np.abs(a.model.spectral_points(a))
    nonzero = pts[pts > _cut(a)]
    return float(nonzero.min()) if nonzero.size else float("inf")


def is_regular(a: Element) -> bool:
    """Decide ``ε a° <= |a|`` for some ``ε > 0``.

    The witness ``ε`` is read off the spectrum and then checked against the
    defining inequality, so a model whose order or carrier misbehaves is
    reported as non-regular.
    """
    eps = regularity_constant(a)
    if not np.isfinite(eps):
        return True
    return leq(eps * carrier(a), absolute(a))


def pseudo_inverse(a: Element) -> Element:
    """Inverse of ``a`` inside the corner ``a°Aa°`` (``0`` for ``a = 0``).

    Computed as ``(a°aa° + 1 - a°)⁻¹ - (1 - a°)``: compressing first drops
    the spectrum below the rank cut, and the shifted element is invertible
    exactly when ``a`` is regular.
    """
    if not is_regular(a):
        raise NotRegularError("element is not regular")
    c = carrier(a)
    off = 1.0 - c
    return a.model.inverse(sandwich(c, a) + off) - off


# -- corner algebras ----------------------------------------------------------------


class CornerAlgebra:
    """The synaptic algebra ``vAv`` with unit ``v``, delegating to the parent model.

    Elements are parent elements satisfying ``b = vb = bv``.
    """

    def __init__(self, focus: Element):
        m = focus.model
        try:
            v = as_projection(focus)
        except NotProjectionError:
            raise NotProjectionError("corner focus must be a projection") from None
        if (m.exact and not np.any(v.data)) or (not m.exact and m.norm(v) < 0.5):
            raise ValueError("corner focus must be a nonzero projection")
        self.focus = v
        self.parent: SynapticModel = m

    @property
    def unit(self) -> Projection:
        return self.focus

    @property
    def zero(self) -> Element:
        return self.parent.zero

    def project(self, b: Element) -> Element:
        """``b ↦ vbv``."""
        check_same_model(self.focus, b)
        return sandwich(self.focus, b)

    def contains(self, b: Element) -> bool:
        m = self.parent
        v = self.focus
        if m.exact:
            return bool(np.array_equal(m.product(v.data, b.data), b.data))
        bound = m.tol.eq * (1.0 + m.norm(b))
        return product_norm(v, b, minus=b) <= bound and product_norm(b, v, minus=b) <= bound

    def _member(self, b: Element) -> Element:
        if not self.contains(b):
            raise ValueError("element is not in the corner algebra")
        return b

    def scalar(self, value: float) -> Element:
        return value * self.focus

    def norm(self, b: Element) -> float:
        # the order-unit norm of vAv is the restriction of the parent norm
        return self.parent.norm(self._member(b))

    def leq(self, b: Element, c: Element) -> bool:
        return leq(self._member(b), self._member(c))

    def is_positive(self, b: Element) -> bool:
        return is_positive(self._member(b))

    def sqrt(self, b: Element) -> Element:
        return self.parent.sqrt(self._member(b))

    def carrier(self, b: Element) -> Projection:
        return carrier(self._member(b))

    def is_invertible(self, b: Element) -> bool:
        b = self._member(b)
        return is_invertible(b + (1.0 - self.focus))

    def inverse(self, b: Element) -> Element:
        """Inverse of ``b`` relative to the unit ``v``: ``b r = r b = v``."""
        b = self._member(b)
        off = 1.0 - self.focus
        return inverse(b + off) - off

    def block(self, b: Element) -> np.ndarray:
        """Matrix model only: ``b`` compressed to an orthonormal basis of ``range(v)``."""
        if not hasattr(self.parent, "range_basis"):
            raise TypeError("block view is only available for the matrix model")
        q = self.parent.range_basis(self.focus)
        x = q.T @ self._member(b).data @ q
        return 0.5 * (x + x.T)

    def embed(self, block: np.ndarray) -> Element:
        """Inverse of :meth:`block`."""
        q = self.parent.range_basis(self.focus)
        x = q @ np.asarray(block, dtype=float) @ q.T
        return self.parent.element(0.5 * (x + x.T))


def corner(v: Element) -> CornerAlgebra:
    return CornerAlgebra(v)
