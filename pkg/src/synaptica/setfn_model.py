"""Finite-range functions measurable with respect to a field of sets.

The universe is ``{0, ..., n-1}``; subsets are stored as integer bitmasks.
All operations are pointwise, so every order and equality test in this model
is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

import numpy as np

from .core import (
    DEFAULT_TOL,
    Element,
    ModelMismatchError,
    NotInvertibleError,
    NotMeasurableError,
    NotPositiveError,
    Projection,
    SynapticModel,
    Tolerances,
    check_same_model,
)


def to_mask(subset: Iterable[int] | int) -> int:
    if isinstance(subset, (int, np.integer)):
        return int(subset)
    mask = 0
    for x in subset:
        mask |= 1 << int(x)
    return mask


def from_mask(mask: int, n: int) -> frozenset[int]:
    return frozenset(i for i in range(n) if mask >> i & 1)


class FieldOfSets:
    """A family of subsets of ``{0..n-1}`` closed under complement and union."""

    def __init__(self, universe_size: int, members: Iterable[Iterable[int] | int]):
        if universe_size < 1:
            raise ValueError("universe must be nonempty")
        self.n = int(universe_size)
        self.full = (1 << self.n) - 1
        self.members = frozenset(to_mask(m) for m in members)
        for m in self.members:
            if m & ~self.full:
                raise ValueError(f"subset {sorted(from_mask(m, 64))} is not inside the universe")
        self._check_closed()
        atoms = set()
        for x in range(self.n):
            atom = self.full
            for m in self.members:
                if m >> x & 1:
                    atom &= m
            atoms.add(atom)
        self.atoms = tuple(sorted(atoms))

    def _check_closed(self):
        if 0 not in self.members or self.full not in self.members:
            raise ValueError("a field must contain the empty set and the universe")
        for m in self.members:
            if self.full ^ m not in self.members:
                raise ValueError("family is not closed under complement")
        for a, b in combinations(self.members, 2):
            if a | b not in self.members:
                raise ValueError("family is not closed under union")

    def __contains__(self, subset) -> bool:
        return to_mask(subset) in self.members

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return isinstance(other, FieldOfSets) and other.n == self.n and other.members == self.members

    def __hash__(self):
        return hash((self.n, self.members))

    def __repr__(self):
        return f"FieldOfSets(n={self.n}, size={len(self.members)})"

    def sets(self) -> list[frozenset[int]]:
        return [from_mask(m, self.n) for m in sorted(self.members)]

    def indicator(self, subset) -> np.ndarray:
        mask = to_mask(subset)
        return np.array([float(mask >> i & 1) for i in range(self.n)])


@lru_cache(maxsize=512)
def _generate(n: int, gens: tuple[int, ...]) -> FieldOfSets:
    full = (1 << n) - 1
    for g in gens:
        if g & ~full:
            raise ValueError("generator is not a subset of the universe")
    classes: dict[tuple[int, ...], int] = {}
    for x in range(n):
        key = tuple(g >> x & 1 for g in gens)
        classes[key] = classes.get(key, 0) | 1 << x
    atoms = list(classes.values())
    members = set()
    for r in range(len(atoms) + 1):
        for combo in combinations(atoms, r):
            m = 0
            for a in combo:
                m |= a
            members.add(m)
    return FieldOfSets(n, members)


def field_generate(universe_size: int, generators: Iterable[Iterable[int] | int] = ()) -> FieldOfSets:
    """Smallest field of subsets of ``{0..n-1}`` containing ``generators``.

    The atoms are the classes of points that no generator separates; the
    field is the set of all unions of atoms.
    """
    return _generate(int(universe_size), tuple(to_mask(g) for g in generators))


def power_set_field(n: int) -> FieldOfSets:
    return field_generate(n, [[i] for i in range(n)])


def partition_field(blocks: Iterable[Iterable[int]], n: int) -> FieldOfSets:
    """Field whose atoms are the given blocks (they must partition the universe)."""
    return field_generate(n, list(blocks))


class SetFnModel(SynapticModel):
    """Pointwise algebra of functions on ``{0..n-1}`` measurable for ``field``."""

    name = "setfn"
    exact = True

    def __init__(self, field: FieldOfSets, tol: Tolerances = DEFAULT_TOL):
        super().__init__(tol)
        self.field = field
        self.n = field.n

    def __eq__(self, other):
        return isinstance(other, SetFnModel) and (other.field is self.field or other.field == self.field)

    def __hash__(self):
        return hash((SetFnModel, self.field))

    def __repr__(self):
        return f"SetFnModel({self.field!r})"

    @property
    def dim(self) -> int:
        return self.n

    # -- construction ------------------------------------------------------------
    def _unit_data(self):
        return np.ones(self.n)

    def measurable(self, values) -> bool:
        """Every level set ``f^-1(v)`` belongs to the field."""
        values = np.asarray(values, dtype=float)
        for v in np.unique(values):
            if to_mask(np.flatnonzero(values == v)) not in self.field.members:
                return False
        return True

    def _validate(self, data):
        x = np.array(data, dtype=float)
        if x.shape != (self.n,):
            raise ValueError(f"expected {self.n} values, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ValueError("function values must be finite")
        if not self.measurable(x):
            raise NotMeasurableError("function is not measurable with respect to the field")
        return x

    def _wrap(self, data):
        # closure under the pointwise operations is checked, not assumed
        return Element(self, self._validate(data))

    def indicator(self, subset) -> Projection:
        mask = to_mask(subset)
        if mask not in self.field.members:
            raise NotMeasurableError("indicator of a set outside the field")
        return Projection(self, self.field.indicator(mask))

    def projections(self) -> list[Projection]:
        """Every projection of the model: the indicators of field members."""
        return [Projection(self, self.field.indicator(m)) for m in sorted(self.field.members)]

    def support_mask(self, f: Element) -> int:
        return to_mask(np.flatnonzero(f.data != 0.0))

    # -- enveloping algebra (the model is its own envelope) ----------------------
    def product(self, x, y):
        return x * y

    def envelope_norm(self, x):
        return float(np.abs(x).max()) if len(x) else 0.0

    def in_algebra(self, x):
        return self.measurable(x)

    # -- primitives ------------------------------------------------------------------
    def norm(self, a):
        return float(np.abs(a.data).max())

    def is_positive(self, a):
        return bool(np.all(a.data >= 0.0))

    def sqrt(self, a):
        if not self.is_positive(a):
            raise NotPositiveError("square root of a function with a negative value")
        return self._wrap(np.sqrt(a.data))

    def abs(self, a):
        return self._wrap(np.abs(a.data))

    def carrier(self, a):
        return Projection(self, (a.data != 0.0).astype(float))

    def inverse(self, a):
        if np.any(a.data == 0.0):
            raise NotInvertibleError("function vanishes somewhere")
        return self._wrap(1.0 / a.data)

    def spectral_points(self, a):
        return np.unique(a.data)

    def in_bicommutant(self, b, a):
        check_same_model(a, b)
        # b must be constant on every level set of a
        for v in np.unique(a.data):
            vals = b.data[a.data == v]
            if np.any(vals != vals[0]):
                return False
        return True


def simple_fn(field: FieldOfSets, values) -> Element:
    return SetFnModel(field).element(values)


def measurable(f: Element) -> bool:
    if not isinstance(f.model, SetFnModel):
        raise ModelMismatchError("measurable() applies to set-function elements")
    return f.model.measurable(f.data)


@dataclass(frozen=True)
class BooleanRealization:
    """A ``k``-atom Boolean algebra realized as the projections of a commutative model.

    ``atom_map[i]`` is the projection representing abstract atom ``i``;
    :meth:`realize` maps an abstract element (a bitmask over atoms) to its
    projection.
    """

    k: int
    field: FieldOfSets
    model: SetFnModel
    atom_map: tuple[Projection, ...]

    def realize(self, atoms_mask: int) -> Projection:
        return self.model.indicator(to_mask(atoms_mask))


def boolean_realize(k: int) -> BooleanRealization:
    """Realize the Boolean algebra with ``k`` atoms on the power set of ``k`` points."""
    if k < 1:
        raise ValueError("a Boolean algebra here needs at least one atom")
    field = power_set_field(k)
    model = SetFnModel(field)
    atoms = tuple(model.indicator([i]) for i in range(k))
    return BooleanRealization(k=k, field=field, model=model, atom_map=atoms)
