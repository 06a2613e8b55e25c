"""Model-independent synaptic-algebra contract.

A concrete model (real symmetric matrices, or finite-range functions over a
field of sets) subclasses :class:`SynapticModel` and supplies the primitive
operations.  Everything else in the package is written against that contract
and the :class:`Element` value type.

Real numbers are identified with multiples of the unit, so ``a + 2`` and
``2 - a`` are accepted wherever an :class:`Element` is expected.
"""
from __future__ import annotations

import abc
import os
from dataclasses import dataclass, replace
from numbers import Real

import numpy as np


class SynapticError(Exception):
    """Base class for errors raised by synaptica."""


class ModelMismatchError(SynapticError, ValueError):
    """Operands belong to different model instances."""


class NotSymmetricError(SynapticError, ValueError):
    pass


class NotMeasurableError(SynapticError, ValueError):
    pass


class NotPositiveError(SynapticError, ValueError):
    pass


class NotInAlgebraError(SynapticError, ValueError):
    """An enveloping-algebra product left the algebra (e.g. ab with a, b not commuting)."""


class NotProjectionError(SynapticError, ValueError):
    pass


class NotInvertibleError(SynapticError, ValueError):
    pass


class NotRegularError(SynapticError, ValueError):
    pass


@dataclass(frozen=True)
class Tolerances:
    """Tolerance hierarchy shared by every numerical test.

    ``psd`` and ``eq`` are multiplied by ``1 + norm`` of the operand;
    ``rank`` and ``cluster`` by the norm itself, with ``floor`` as an
    absolute minimum.
    """

    sym: float = 1e-10
    psd: float = 1e-9
    comm: float = 1e-9
    rank: float = 1e-8
    eq: float = 1e-9
    cluster: float = 1e-7
    floor: float = 1e-14

    def scaled(self, factor: float) -> "Tolerances":
        if factor <= 0:
            raise ValueError("tolerance scale must be positive")
        return replace(
            self,
            **{k: getattr(self, k) * factor for k in ("sym", "psd", "comm", "rank", "eq", "cluster", "floor")},
        )

    def rank_cut(self, norm: float) -> float:
        return max(self.rank * norm, self.floor)


DEFAULT_TOL = Tolerances()

TOL_SCALE_ENV = "SYNAPTICA_TOL_SCALE"


def tolerances_from_env(environ=None) -> Tolerances:
    """Default tolerances multiplied by ``$SYNAPTICA_TOL_SCALE`` (default 1)."""
    environ = os.environ if environ is None else environ
    raw = environ.get(TOL_SCALE_ENV)
    if not raw:
        return DEFAULT_TOL
    return DEFAULT_TOL.scaled(float(raw))


class Element:
    """An immutable member of a concrete synaptic-algebra model.

    ``data`` is a read-only numpy array whose meaning is fixed by ``model``
    (a symmetric matrix, or the value vector of a function).
    """

    __slots__ = ("model", "data", "_cache")

    def __init__(self, model: "SynapticModel", data: np.ndarray):
        data = np.array(data, dtype=float)
        data.setflags(write=False)
        self.model = model
        self.data = data
        self._cache = {}

    # -- arithmetic; scalars are promoted to multiples of the unit --------
    def _coerce(self, other) -> "Element":
        if isinstance(other, Element):
            check_same_model(self, other)
            return other
        if isinstance(other, Real):
            return self.model.scalar(float(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.model._wrap(self.data + other.data)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.model._wrap(self.data - other.data)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self.model._wrap(other.data - self.data)

    def __neg__(self):
        return self.model._wrap(-self.data)

    def __mul__(self, other):
        if isinstance(other, Real):
            return self.model._wrap(float(other) * self.data)
        if isinstance(other, Element):
            return mul(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, Real):
            return self.model._wrap(float(other) * self.data)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Real):
            return self.model._wrap(self.data / float(other))
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, (int, np.integer)) or n < 0:
            raise ValueError("only non-negative integer powers are supported")
        result = self.model.unit
        for _ in range(int(n)):
            result = self.model._wrap(self.model.product(result.data, self.data))
        return result

    def jordan(self, other) -> "Element":
        return jordan_product(self, other)

    def __repr__(self):
        return f"Element({self.model!r}, {np.array2string(self.data, precision=6)})"

    # elements compare by tolerance, never by identity or exact bits
    __hash__ = None

    def __eq__(self, other):
        raise TypeError("use synaptica.core.close(a, b) to compare elements")


class Projection(Element):
    """An :class:`Element` certified to satisfy ``p == p * p``.

    Arithmetic on projections returns plain elements; use
    :func:`as_projection` to certify a result again.
    """

    __slots__ = ()


class SynapticModel(abc.ABC):
    """The primitive operations every concrete model supplies."""

    name: str = "abstract"
    #: exact models compare with ``==`` and use zero tolerances in audits
    exact: bool = False

    def __init__(self, tol: Tolerances = DEFAULT_TOL):
        self.tol = tol
        self._unit = None
        self._zero = None

    # -- construction ------------------------------------------------------
    @abc.abstractmethod
    def _validate(self, data) -> np.ndarray:
        """Check membership of raw ``data`` and return its canonical array."""

    @abc.abstractmethod
    def _unit_data(self) -> np.ndarray:
        ...

    def element(self, data) -> Element:
        return Element(self, self._validate(data))

    def _wrap(self, data) -> Element:
        # results of linear operations on members; models may re-check
        return Element(self, data)

    @property
    def unit(self) -> Projection:
        if self._unit is None:
            self._unit = Projection(self, self._unit_data())
        return self._unit

    @property
    def zero(self) -> Projection:
        if self._zero is None:
            self._zero = Projection(self, np.zeros_like(self._unit_data()))
        return self._zero

    def scalar(self, value: float) -> Element:
        return Element(self, value * self._unit_data())

    # -- enveloping algebra ------------------------------------------------
    @abc.abstractmethod
    def product(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        """Product of raw payloads computed in the enveloping algebra."""

    @abc.abstractmethod
    def envelope_norm(self, x: np.ndarray) -> float:
        """Norm of an enveloping-algebra value (operator norm / sup norm)."""

    @abc.abstractmethod
    def in_algebra(self, x: np.ndarray) -> bool:
        """Whether an enveloping-algebra value lies in the algebra."""

    def from_envelope(self, x: np.ndarray) -> Element:
        if not self.in_algebra(x):
            raise NotInAlgebraError(f"product is not a member of the {self.name} model")
        return self.element(x)

    # -- order, norm and the existence axioms -------------------------------
    @abc.abstractmethod
    def norm(self, a: Element) -> float:
        ...

    @abc.abstractmethod
    def is_positive(self, a: Element) -> bool:
        """Order test ``0 <= a``."""

    @abc.abstractmethod
    def sqrt(self, a: Element) -> Element:
        ...

    @abc.abstractmethod
    def carrier(self, a: Element) -> Projection:
        ...

    @abc.abstractmethod
    def inverse(self, a: Element) -> Element:
        ...

    @abc.abstractmethod
    def spectral_points(self, a: Element) -> np.ndarray:
        """Ascending distinct spectral values of ``a`` (clustered)."""

    @abc.abstractmethod
    def in_bicommutant(self, b: Element, a: Element) -> bool:
        ...

    def abs(self, a: Element) -> Element:
        # models with a functional calculus override this; the value is the
        # same by uniqueness of positive square roots
        return self.sqrt(mul(a, a))

    def pos_part(self, a: Element) -> Element:
        return (self.abs(a) + a) / 2

    def close(self, a: Element, b: Element, rtol: float | None = None) -> bool:
        check_same_model(a, b)
        if self.exact:
            return bool(np.array_equal(a.data, b.data))
        rtol = self.tol.eq if rtol is None else rtol
        scale = max(self.norm(a), self.norm(b))
        return self.norm(a - b) <= rtol * (1.0 + scale)


def check_same_model(*elements: Element) -> None:
    first = elements[0].model
    for e in elements[1:]:
        if e.model is not first and e.model != first:
            raise ModelMismatchError(f"cannot combine elements of {first!r} and {e.model!r}")


def _lift(a, model: SynapticModel) -> Element:
    if isinstance(a, Element):
        return a
    return model.scalar(float(a))


def _pair(a, b) -> tuple[Element, Element]:
    if isinstance(a, Element):
        b = _lift(b, a.model)
    elif isinstance(b, Element):
        a = _lift(a, b.model)
    else:
        raise TypeError("at least one operand must be an Element")
    check_same_model(a, b)
    return a, b


def envelope_product(a: Element, b: Element) -> np.ndarray:
    """Raw product ``ab`` in the enveloping algebra (may leave the algebra)."""
    check_same_model(a, b)
    return a.model.product(a.data, b.data)


def mul(a: Element, b: Element) -> Element:
    """``ab`` as an element; raises :class:`NotInAlgebraError` if it is not one."""
    return a.model.from_envelope(envelope_product(a, b))


def sandwich(a: Element, b: Element) -> Element:
    """``aba``, which always lies in the algebra."""
    check_same_model(a, b)
    m = a.model
    x = m.product(m.product(a.data, b.data), a.data)
    if m.exact:
        return m.element(x)
    return m._wrap(0.5 * (x + x.T))


def product_norm(a: Element, b: Element, minus: Element | None = None) -> float:
    """``||ab - c||`` measured in the enveloping algebra."""
    x = envelope_product(a, b)
    if minus is not None:
        check_same_model(a, minus)
        x = x - minus.data
    return a.model.envelope_norm(x)


def jordan_product(a, b) -> Element:
    """Symmetrized product ``(ab + ba) / 2``."""
    a, b = _pair(a, b)
    m = a.model
    x = m.product(a.data, b.data)
    y = m.product(b.data, a.data)
    return m.element(0.5 * (x + y))


def order_unit_norm(a: Element) -> float:
    return a.model.norm(a)


norm = order_unit_norm


def is_positive(a: Element) -> bool:
    return a.model.is_positive(a)


def leq(a, b) -> bool:
    """``a <= b`` in the model's order (``b - a`` in the positive cone)."""
    a, b = _pair(a, b)
    return a.model.is_positive(b - a)


def commutator_norm(a: Element, b: Element) -> float:
    check_same_model(a, b)
    m = a.model
    return m.envelope_norm(m.product(a.data, b.data) - m.product(b.data, a.data))


def commutes(a: Element, b: Element) -> bool:
    """``||ab - ba|| <= comm_tol * (1 + ||a|| ||b||)``; exact in exact models."""
    check_same_model(a, b)
    m = a.model
    c = commutator_norm(a, b)
    if m.exact:
        return c == 0.0
    return c <= m.tol.comm * (1.0 + m.norm(a) * m.norm(b))


def in_bicommutant(b: Element, a: Element) -> bool:
    """Whether ``b`` lies in the double commutant of ``a``."""
    check_same_model(a, b)
    return a.model.in_bicommutant(b, a)


def close(a, b, rtol: float | None = None) -> bool:
    a, b = _pair(a, b)
    return a.model.close(a, b, rtol)


def distance(a, b) -> float:
    a, b = _pair(a, b)
    return a.model.norm(a - b)


def carrier(a: Element) -> Projection:
    return a.model.carrier(a)


def idempotence_defect(a: Element) -> float:
    return product_norm(a, a, minus=a)


def as_projection(a: Element) -> Projection:
    """Certify ``a`` as a projection, removing small idempotence drift.

    Inexact models get one Newton step ``q <- 3q^2 - 2q^3`` when the defect
    exceeds ``eq/10``; a defect above ``eq * (1 + ||a||)`` is an error.
    """
    if isinstance(a, Projection):
        return a
    m = a.model
    defect = idempotence_defect(a)
    if m.exact:
        if defect != 0.0:
            raise NotProjectionError(f"element is not idempotent (defect {defect:.3g})")
        return Projection(m, a.data)
    if defect > m.tol.eq * (1.0 + m.norm(a)):
        raise NotProjectionError(f"element is not idempotent (defect {defect:.3g})")
    data = a.data
    if defect > m.tol.eq / 10:
        q2 = m.product(data, data)
        data = 3 * q2 - 2 * m.product(q2, data)
        data = 0.5 * (data + data.T)
    return Projection(m, data)


def is_projection(a: Element) -> bool:
    try:
        as_projection(a)
    except NotProjectionError:
        return False
    return True


def is_effect(e: Element) -> bool:
    return is_positive(e) and leq(e, 1.0)
