"""Seed-deterministic input generators used by the audit laws.

Both generators expose the same methods, so a law is written once and run on
either model.  Sampling policy:

* matrix model: Haar eigenbases; spectra uniform in a range, with repeated
  eigenvalues and exact zeros mixed in, nonzero eigenvalues kept at least
  5% of the range away from 0 and distinct eigenvalues at least 0.1% of the
  range apart (so every carrier and cluster decision is far from its cut);
* set-function model: a random field (partition of the universe into atoms,
  the number of atoms cycling through 1..n over the trials), values on small
  dyadic grids so that every tested identity holds exactly in binary64.
"""
from __future__ import annotations

import numpy as np

from ..core import DEFAULT_TOL, Element, Projection, Tolerances
from ..matrix_model import MatrixModel, random_orthogonal
from ..setfn_model import SetFnModel, partition_field

MIN_ABS = 0.05
MIN_SEP = 1e-3


def separated_spectrum(rng, dim, lo, hi, degenerate=0.3, zeros=True) -> np.ndarray:
    span = max(abs(lo), abs(hi), hi - lo)
    out: list[float] = []
    for _ in range(dim):
        r = rng.random()
        if out and r < degenerate / 2:
            out.append(out[rng.integers(0, len(out))])
            continue
        if zeros and lo <= 0.0 <= hi and r < degenerate:
            out.append(0.0)
            continue
        for _attempt in range(100):
            w = float(rng.uniform(lo, hi))
            if abs(w) < MIN_ABS * span and not (lo >= MIN_ABS * span or hi <= -MIN_ABS * span):
                continue
            if any(0 < abs(w - v) < MIN_SEP * span for v in out):
                continue
            break
        out.append(w)
    return np.array(out)


class MatrixGen:
    """Random elements of a :class:`MatrixModel`."""

    def __init__(self, dim: int, rng: np.random.Generator, model: MatrixModel | None = None):
        self.dim = dim
        self.rng = rng
        self.model = MatrixModel(dim) if model is None else model
        self.inputs: dict[str, list] = {}

    def record(self, name: str, e: Element) -> Element:
        self.inputs[name] = e.data.tolist()
        return e

    def _basis(self):
        return random_orthogonal(self.dim, self.rng)

    def _build(self, q, w) -> Element:
        x = (q * w) @ q.T
        return self.model.element(0.5 * (x + x.T))

    def element(self, lo=-1.0, hi=1.0, zeros=True) -> Element:
        return self._build(self._basis(), separated_spectrum(self.rng, self.dim, lo, hi, zeros=zeros))

    def positive(self) -> Element:
        return self.element(0.0, 2.0)

    def effect(self) -> Element:
        w = separated_spectrum(self.rng, self.dim, 0.0, 1.0)
        ones = self.rng.random(self.dim) < 0.15
        w[ones] = 1.0
        return self._build(self._basis(), w)

    def at_least_one(self) -> Element:
        return self.element(1.0, 3.0, zeros=False)

    def invertible(self) -> Element:
        w = separated_spectrum(self.rng, self.dim, 0.2, 1.5, zeros=False)
        w *= self.rng.choice([-1.0, 1.0], size=self.dim)
        return self._build(self._basis(), w)

    def projection(self, rank: int | None = None) -> Projection:
        if rank is None:
            rank = int(self.rng.integers(0, self.dim + 1))
        if rank == 0:
            return self.model.zero
        if rank == self.dim:
            return self.model.unit
        q = self._basis()[:, :rank]
        x = q @ q.T
        return Projection(self.model, 0.5 * (x + x.T))

    def proper_projection(self) -> Projection:
        """A projection other than 0 and 1 (0 or 1 only when dim == 1)."""
        if self.dim == 1:
            return self.projection()
        return self.projection(int(self.rng.integers(1, self.dim)))

    def element_with_kernel(self) -> tuple[Element, Projection]:
        """An element together with the projection onto its kernel, built from the construction."""
        q = self._basis()
        w = separated_spectrum(self.rng, self.dim, -1.0, 1.0)
        if self.rng.random() < 0.5:
            w[self.rng.integers(0, self.dim)] = 0.0
        k = q[:, w == 0.0]
        kx = k @ k.T
        return self._build(q, w), Projection(self.model, 0.5 * (kx + kx.T))

    def commuting(self, count: int, kind="element") -> list[Element]:
        """Elements diagonal in one shared random basis; ``kind`` may be a list of kinds."""
        kinds = [kind] * count if isinstance(kind, str) else list(kind)
        q = self._basis()
        out: list[Element] = []
        for k in kinds:
            if k == "element":
                w = separated_spectrum(self.rng, self.dim, -1.0, 1.0)
            elif k == "positive":
                w = separated_spectrum(self.rng, self.dim, 0.0, 2.0)
            elif k == "projection":
                w = (self.rng.random(self.dim) < 0.5).astype(float)
            else:
                raise ValueError(k)
            e = self._build(q, w)
            out.append(Projection(self.model, e.data) if k == "projection" else e)
        return out

    def distinct_values(self, count: int) -> list[float]:
        return sorted(separated_spectrum(self.rng, count, -1.0, 1.0, degenerate=0.0, zeros=False).tolist())

    def partition_projections(self, count: int) -> list[Projection]:
        """Pairwise orthogonal projections (possibly zero) summing to at most 1."""
        q = self._basis()
        labels = self.rng.integers(0, count + 1, size=self.dim)
        out = []
        for i in range(count):
            cols = q[:, labels == i]
            x = cols @ cols.T
            out.append(Projection(self.model, 0.5 * (x + x.T)))
        return out

    def scalar(self, lo=0.1, hi=0.9) -> float:
        return float(self.rng.uniform(lo, hi))


class SetFnGen:
    """Random elements of a :class:`SetFnModel` over a random field."""

    GRID = np.arange(-8, 9) / 4.0
    ROOTS = np.arange(0, 7) / 4.0
    EFFECT = np.array([0.0, 0.25, 0.5, 0.75, 1.0])
    POWERS = np.array([1.0, 2.0, 4.0, 8.0])

    def __init__(self, dim: int, rng: np.random.Generator, blocks: int | None = None, tol: Tolerances = DEFAULT_TOL):
        self.dim = dim
        self.rng = rng
        if blocks is None:
            blocks = int(rng.integers(1, dim + 1))
        labels = np.concatenate([np.arange(blocks), rng.integers(0, blocks, size=dim - blocks)])
        rng.shuffle(labels)
        parts = [np.flatnonzero(labels == b).tolist() for b in range(blocks)]
        self.blocks = parts
        self.model = SetFnModel(partition_field(tuple(tuple(p) for p in parts), dim), tol)
        self.inputs: dict[str, list] = {}

    def record(self, name: str, e: Element) -> Element:
        self.inputs[name] = e.data.tolist()
        return e

    def _from_block_values(self, vals) -> Element:
        x = np.zeros(self.dim)
        for block, v in zip(self.blocks, vals):
            x[block] = v
        return self.model.element(x)

    def _draw(self, grid) -> Element:
        return self._from_block_values(self.rng.choice(grid, size=len(self.blocks)))

    def element(self, lo=-2.0, hi=2.0, zeros=True) -> Element:
        grid = self.GRID[(self.GRID >= lo) & (self.GRID <= hi)]
        if not zeros:
            grid = grid[grid != 0.0]
        return self._draw(grid)

    def positive(self) -> Element:
        return self._draw(self.ROOTS ** 2)

    def effect(self) -> Element:
        return self._draw(self.EFFECT)

    def at_least_one(self) -> Element:
        return self._draw(self.POWERS)

    def invertible(self) -> Element:
        return self._from_block_values(
            self.rng.choice(self.POWERS / 4, size=len(self.blocks)) * self.rng.choice([-1.0, 1.0], size=len(self.blocks)))

    def projection(self, rank: int | None = None) -> Projection:
        mask = self.rng.random(len(self.blocks)) < 0.5
        e = self._from_block_values(mask.astype(float))
        return Projection(self.model, e.data)

    def proper_projection(self) -> Projection:
        return self.projection()

    def element_with_kernel(self) -> tuple[Element, Projection]:
        a = self.element()
        return a, Projection(self.model, (a.data == 0.0).astype(float))

    def commuting(self, count: int, kind="element") -> list[Element]:
        kinds = [kind] * count if isinstance(kind, str) else list(kind)
        draw = {"element": self.element, "positive": self.positive, "projection": self.projection}
        return [draw[k]() for k in kinds]

    def distinct_values(self, count: int) -> list[float]:
        return sorted(self.rng.choice(self.GRID, size=count, replace=False).tolist())

    def partition_projections(self, count: int) -> list[Projection]:
        labels = self.rng.integers(0, count + 1, size=len(self.blocks))
        return [Projection(self.model, self._from_block_values((labels == i).astype(float)).data) for i in range(count)]

    def scalar(self, lo=0.1, hi=0.9) -> float:
        # dyadic so that scaled grid values stay exact
        return float(self.rng.choice([0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875]))


def make_gen(model_name: str, dim: int, rng: np.random.Generator, trial: int = 0, tol: Tolerances = DEFAULT_TOL):
    if model_name == "matrix":
        return MatrixGen(dim, rng, MatrixModel(dim, tol))
    if model_name == "setfn":
        # the number of atoms cycles so that every field size up to the power set occurs
        return SetFnGen(dim, rng, blocks=trial % dim + 1, tol=tol)
    raise ValueError(f"unknown model {model_name!r}")
