"""The projections of a synaptic algebra as an orthomodular lattice.

Meets use ``p ∧ q = p - φ_p(q⊥)`` in every model; joins are the De Morgan
dual.  :func:`range_meet` is an independent matrix-model oracle (projection
onto the intersection of ranges) used for cross-checks.
"""
from __future__ import annotations

import numpy as np

from .calculus import sasaki_map
from .core import (
    Element,
    NotProjectionError,
    Projection,
    as_projection,
    check_same_model,
    commutes,
    leq,
    product_norm,
)


def _proj(p: Element) -> Projection:
    try:
        return as_projection(p)
    except NotProjectionError:
        raise NotProjectionError("lattice operations require projections") from None


def ortho(p: Element) -> Projection:
    """``p⊥ = 1 - p``."""
    return as_projection(1.0 - _proj(p))


def meet(p: Element, q: Element) -> Projection:
    p, q = _proj(p), _proj(q)
    check_same_model(p, q)
    return as_projection(p - sasaki_map(p, ortho(q)))


def join(p: Element, q: Element) -> Projection:
    return ortho(meet(ortho(p), ortho(q)))


def orthogonal(p: Element, q: Element) -> bool:
    """``p ⊥ q`` iff ``pq = 0``."""
    p, q = _proj(p), _proj(q)
    m = p.model
    r = product_norm(p, q)
    return r == 0.0 if m.exact else r <= m.tol.eq * 10


def compatible(p: Element, q: Element) -> bool:
    """Compatibility in the lattice sense; equivalent to commuting."""
    return commutes(_proj(p), _proj(q))


def compatible_by_lattice(p: Element, q: Element) -> bool:
    """``p = (p ∧ q) ∨ (p ∧ q⊥)``, the lattice-theoretic definition."""
    p, q = _proj(p), _proj(q)
    rhs = join(meet(p, q), meet(p, ortho(q)))
    return projections_equal(p, rhs)


def projections_equal(p: Element, q: Element) -> bool:
    m = p.model
    if m.exact:
        return bool(np.array_equal(p.data, q.data))
    return m.norm(p - q) <= m.tol.eq * 100


def sasaki_projection(p: Element, q: Element) -> Projection:
    """``φ_p(q) = (pqp)°``."""
    p, q = _proj(p), _proj(q)
    return sasaki_map(p, q)


def sasaki_identity_residual(p: Element, q: Element) -> float:
    """``||φ_p(q) - p ∧ (p⊥ ∨ q)||``."""
    p, q = _proj(p), _proj(q)
    lhs = sasaki_projection(p, q)
    rhs = meet(p, join(ortho(p), q))
    return p.model.norm(lhs - rhs)


def proj_leq(p: Element, q: Element) -> bool:
    return leq(_proj(p), _proj(q))


def rank(p: Element) -> int:
    """Rank of a projection (trace; number of points for set functions)."""
    return int(round(float(np.trace(p.data) if p.data.ndim == 2 else p.data.sum())))


def range_meet(p: Element, q: Element) -> Projection:
    """Matrix oracle: projection onto ``range(p) ∩ range(q)``.

    Uses the null space of ``[P_basis, -Q_basis]`` via numpy's SVD, which is
    independent of the carrier/Sasaki route.
    """
    m = p.model
    if p.data.ndim != 2:
        # set functions: the intersection of supports
        return Projection(m, np.minimum(p.data, q.data))
    bp = _range_basis(p.data)
    bq = _range_basis(q.data)
    n = p.data.shape[0]
    if bp.shape[1] == 0 or bq.shape[1] == 0:
        return Projection(m, np.zeros((n, n)))
    stacked = np.hstack([bp, -bq])
    _, s, vt = np.linalg.svd(stacked)
    tol = 1e-7
    null = vt[np.sum(s > tol):].T
    if null.shape[1] == 0:
        return Projection(m, np.zeros((n, n)))
    vecs = bp @ null[: bp.shape[1]]
    u, sv, _ = np.linalg.svd(vecs, full_matrices=False)
    u = u[:, sv > tol]
    x = u @ u.T
    return Projection(m, 0.5 * (x + x.T))


def _range_basis(x: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(x)
    return v[:, w > 0.5]


def subspace_distance(p: Element, q: Element) -> float:
    """Spectral-norm distance between two projections (sine of the largest principal angle)."""
    return float(np.linalg.norm(p.data - q.data, 2)) if p.data.ndim == 2 else float(np.abs(p.data - q.data).max())
