"""Spectral bounds, spectral resolution, eigenprojections and simple elements.

``p_λ = 1 - ((a - λ)⁺)°`` and ``d_λ = 1 - (a - λ)°`` are evaluated through
the calculus module in every model.  A :class:`SpectralResolution` tabulates
``p_λ`` and ``d_λ`` at the spectral points; since ``p_λ`` is constant between
consecutive spectral points, :meth:`SpectralResolution.at` answers arbitrary
``λ`` by lookup.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field

import numpy as np

from .calculus import pos_part
from .core import Element, Projection, as_projection, carrier, check_same_model, commutes


def spectral_bounds(a: Element) -> tuple[float, float]:
    """``(L, U)``: the largest scalar below ``a`` and the smallest above it."""
    pts = a.model.spectral_points(a)
    return float(pts[0]), float(pts[-1])


def spectrum(a: Element) -> np.ndarray:
    """Ascending spectral points (eigenvalue clusters / distinct values)."""
    return np.asarray(a.model.spectral_points(a), dtype=float)


def resolution_at(a: Element, lam: float) -> Projection:
    """``p_λ = 1 - ((a - λ)⁺)°``."""
    return as_projection(1.0 - carrier(pos_part(a - lam)))


def eigenprojection_at(a: Element, lam: float) -> Projection:
    """``d_λ = 1 - (a - λ)°``; nonzero iff ``λ`` is an eigenvalue."""
    return as_projection(1.0 - carrier(a - lam))


@dataclass(frozen=True)
class SpectralResolution:
    element: Element
    breakpoints: tuple[float, ...]
    projections_at: tuple[Projection, ...]
    eigenprojections_at: tuple[Projection, ...]
    bounds: tuple[float, float] = field(default=(0.0, 0.0))

    def at(self, lam: float) -> Projection:
        """``p_λ``: 0 below the first breakpoint, else the value at the last breakpoint ``<= λ``."""
        i = bisect.bisect_right(self.breakpoints, lam)
        if i == 0:
            return self.element.model.zero
        return self.projections_at[i - 1]

    def eigenprojection(self, lam: float) -> Projection:
        for bp, d in zip(self.breakpoints, self.eigenprojections_at):
            if bp == lam:
                return d
        return eigenprojection_at(self.element, lam)


def spectral_resolution(a: Element) -> SpectralResolution:
    pts = spectrum(a)
    return SpectralResolution(
        element=a,
        breakpoints=tuple(float(x) for x in pts),
        projections_at=tuple(resolution_at(a, x) for x in pts),
        eigenprojections_at=tuple(eigenprojection_at(a, x) for x in pts),
        bounds=(float(pts[0]), float(pts[-1])),
    )


@dataclass(frozen=True)
class SimpleDecomposition:
    """``a = Σ αᵢ uᵢ`` with ``α`` strictly ascending and ``uᵢ`` orthogonal projections summing to 1."""

    coefficients: tuple[float, ...]
    projections: tuple[Projection, ...]

    def value(self) -> Element:
        model = self.projections[0].model
        total = model.zero
        for alpha, u in zip(self.coefficients, self.projections):
            total = total + alpha * u
        return total

    def pseudo_inverse(self) -> Element:
        model = self.projections[0].model
        total = model.zero
        for alpha, u in zip(self.coefficients, self.projections):
            if alpha != 0.0:
                total = total + (1.0 / alpha) * u
        return total

    def carrier(self) -> Element:
        model = self.projections[0].model
        total = model.zero
        for alpha, u in zip(self.coefficients, self.projections):
            if alpha != 0.0:
                total = total + u
        return total


def simple_decompose(a: Element) -> SimpleDecomposition:
    """Canonical form with ``uᵢ = d_{αᵢ}`` at each spectral point ``αᵢ``.

    Spectral points within the carrier cut of zero are reported as exactly 0.
    """
    pts = spectrum(a)
    m = a.model
    cut = 0.0 if m.exact else m.tol.rank_cut(m.norm(a))
    alphas = tuple(0.0 if abs(x) <= cut else float(x) for x in pts)
    return SimpleDecomposition(
        coefficients=alphas,
        projections=tuple(eigenprojection_at(a, x) for x in pts),
    )


@dataclass(frozen=True)
class RiemannSum:
    partition: tuple[float, ...]
    tags: tuple[float, ...]
    cells: tuple[Projection, ...]
    value: Element
    mesh: float


def _check_partition(a: Element, partition, tags):
    lo, hi = spectral_bounds(a)
    lam = [float(x) for x in partition]
    gam = [float(g) for g in tags]
    if len(lam) < 2:
        raise ValueError("partition needs at least two points")
    if len(gam) != len(lam) - 1:
        raise ValueError("need one tag per partition cell")
    if any(y <= x for x, y in zip(lam, lam[1:])):
        raise ValueError("partition must be strictly increasing")
    if not lam[0] < lo:
        raise ValueError(f"first partition point {lam[0]} must lie strictly below L = {lo}")
    m = a.model
    slack = 0.0 if m.exact else m.tol.cluster * (1.0 + m.norm(a))
    if abs(lam[-1] - hi) > slack:
        raise ValueError(f"last partition point {lam[-1]} must equal U = {hi}")
    if lo < hi and not lam[1] > lo:
        raise ValueError("second partition point must lie strictly above L")
    for i, g in enumerate(gam):
        if not lam[i] <= g <= lam[i + 1]:
            raise ValueError(f"tag {g} is outside cell [{lam[i]}, {lam[i + 1]}]")
    return lam, gam


def riemann_approx(a: Element, partition, tags, resolution: SpectralResolution | None = None) -> RiemannSum:
    """``Σ γᵢ uᵢ`` with ``uᵢ = p_{λᵢ} - p_{λᵢ₋₁}``; its distance to ``a`` is at most the mesh.

    ``partition`` is ``λ₀ < L < λ₁ < ... < λₙ = U``; tags satisfy
    ``λᵢ₋₁ <= γᵢ <= λᵢ``.  ``p_λ`` is evaluated directly unless a precomputed
    ``resolution`` is supplied.
    """
    lam, gam = _check_partition(a, partition, tags)
    if resolution is None:
        ps = [resolution_at(a, x) for x in lam]
    else:
        check_same_model(a, resolution.element)
        ps = [resolution.at(x) for x in lam]
    cells = tuple(as_projection(ps[i + 1] - ps[i]) for i in range(len(gam)))
    total = a.model.zero
    for g, u in zip(gam, cells):
        total = total + g * u
    mesh = max(y - x for x, y in zip(lam, lam[1:]))
    return RiemannSum(partition=tuple(lam), tags=tuple(gam), cells=cells, value=total, mesh=mesh)


def uniform_partition(a: Element, mesh: float, offset: float = 0.5):
    """Partition of mesh ``mesh`` with ``λ₁ = L + offset·mesh`` (``0 < offset < 1``)."""
    if not mesh > 0:
        raise ValueError("mesh must be positive")
    lo, hi = spectral_bounds(a)
    if hi == lo:
        return [lo - mesh, hi]
    first = lo + offset * mesh
    pts = [first - mesh]
    j = 0
    while first + j * mesh < hi:
        pts.append(first + j * mesh)
        j += 1
    pts.append(hi)
    return pts


def ascending_approx(a: Element, n: int, resolution: SpectralResolution | None = None) -> list[Element]:
    """``a₁ <= a₂ <= ... <= aₙ`` converging to ``a`` from below.

    ``a_k`` uses the dyadic partition of ``[L, U]`` into ``2^k`` cells with
    left-endpoint tags (``p`` just below ``L`` is 0), so
    ``||a - a_k|| <= (U - L) / 2^k``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    res = spectral_resolution(a) if resolution is None else resolution
    lo, hi = spectral_bounds(a)
    model = a.model
    out = []
    for k in range(1, n + 1):
        cells = 2 ** k
        width = (hi - lo) / cells
        if width == 0.0:
            out.append(model.scalar(lo))
            continue
        # p only changes at breakpoints, so visit the cells that contain one
        total = model.zero
        prev = model.zero
        for j, bp in enumerate(res.breakpoints):
            i = _cell_of(bp, lo, hi, width, cells)
            nxt = res.breakpoints[j + 1] if j + 1 < len(res.breakpoints) else None
            if nxt is not None and _cell_of(nxt, lo, hi, width, cells) == i:
                continue
            p = res.projections_at[j]
            total = total + (lo + (i - 1) * width) * (p - prev)
            prev = p
        out.append(total)
    return out


def _cell_of(x: float, lo: float, hi: float, width: float, cells: int) -> int:
    """Index ``i`` of the cell ``(lo + (i-1)w, lo + iw]`` holding ``x``; ``L`` is in cell 1."""
    def right(i):
        return hi if i == cells else lo + i * width

    i = min(max(int(np.ceil((x - lo) / width)), 1), cells)
    while i < cells and x > right(i):
        i += 1
    while i > 1 and x <= right(i - 1):
        i -= 1
    return i


def spectrally_commutes(b: Element, a: Element, resolution: SpectralResolution | None = None) -> bool:
    """``b`` commutes with every ``p_λ`` of ``a``."""
    check_same_model(a, b)
    res = spectral_resolution(a) if resolution is None else resolution
    return all(commutes(b, p) for p in res.projections_at)


def is_simple_decomposition_valid(dec: SimpleDecomposition) -> bool:
    alphas = dec.coefficients
    return all(y > x for x, y in zip(alphas, alphas[1:]))
