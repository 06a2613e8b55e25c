"""Real symmetric matrices ordered by the positive-semidefinite cone.

The model's spectral work goes through :func:`eig`, a cyclic Jacobi solver
compiled with numba.  Every other primitive (norm, order test, square root,
carrier, inverse, absolute value) is a function of the eigenvalues applied in
the computed eigenbasis.
"""
from __future__ import annotations

from dataclasses import dataclass

import numba
import numpy as np

from .core import (
    DEFAULT_TOL,
    Element,
    NotInvertibleError,
    NotPositiveError,
    NotSymmetricError,
    Projection,
    SynapticModel,
    Tolerances,
    check_same_model,
)

JACOBI_TOL = 1e-15
JACOBI_MAX_SWEEPS = 60


@numba.njit(cache=True)
def _jacobi(a, tol, max_sweeps):
    n = a.shape[0]
    a = a.copy()
    v = np.eye(n)
    frob = 0.0
    for i in range(n):
        for j in range(n):
            frob += a[i, j] * a[i, j]
    thresh = tol * np.sqrt(frob)
    for sweep in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += a[i, j] * a[i, j]
        if np.sqrt(2.0 * off) <= thresh:
            return a, v, sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                # negligible next to both diagonal entries: annihilate without rotating
                g = 100.0 * abs(apq)
                if abs(a[p, p]) + g == abs(a[p, p]) and abs(a[q, q]) + g == abs(a[q, q]):
                    a[p, q] = 0.0
                    a[q, p] = 0.0
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(theta * theta + 1.0))
                else:
                    t = -1.0 / (-theta + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return a, v, -1


@dataclass(frozen=True)
class EigenDecomposition:
    """``a = vectors @ diag(values) @ vectors.T`` with ``values`` ascending."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self, values=None) -> np.ndarray:
        """``Q f(Λ) Qᵀ`` for replacement eigenvalues (default: the originals)."""
        w = self.values if values is None else np.asarray(values, dtype=float)
        x = (self.vectors * w) @ self.vectors.T
        return 0.5 * (x + x.T)

    def clusters(self, cluster_tol: float) -> list[tuple[float, np.ndarray]]:
        """Group ascending eigenvalues whose successive gaps are below ``cluster_tol``.

        Returns ``(mean value, column indices)`` per cluster.
        """
        vals = self.values
        cuts = np.flatnonzero(np.diff(vals) > cluster_tol) + 1
        bounds = np.concatenate(([0], cuts, [len(vals)]))
        return [
            (float(vals[i:j].sum() / (j - i)), np.arange(i, j))
            for i, j in zip(bounds[:-1].tolist(), bounds[1:].tolist())
        ]

    def cluster_projection(self, idx: np.ndarray) -> np.ndarray:
        q = self.vectors[:, idx]
        x = q @ q.T
        return 0.5 * (x + x.T)


def _symmetry_ok(x: np.ndarray, sym_tol: float) -> bool:
    scale = 1.0 + (np.abs(x).max() if x.size else 0.0)
    return bool(np.abs(x - x.T).max() <= sym_tol * scale)


@numba.njit(cache=True)
def _eigh_sorted(x, tol, max_sweeps):
    d, v, sweeps = _jacobi(x, tol, max_sweeps)
    n = x.shape[0]
    w = np.empty(n)
    for i in range(n):
        w[i] = d[i, i]
    order = np.argsort(w, kind="mergesort")
    return w[order], np.ascontiguousarray(v[:, order]), sweeps


def _decompose(x: np.ndarray) -> EigenDecomposition:
    w, v, sweeps = _eigh_sorted(np.ascontiguousarray(0.5 * (x + x.T)), JACOBI_TOL, JACOBI_MAX_SWEEPS)
    if sweeps < 0:
        raise RuntimeError("Jacobi iteration did not converge")
    return EigenDecomposition(values=w, vectors=v)


def eig(a) -> EigenDecomposition:
    """Symmetric eigendecomposition by cyclic Jacobi sweeps.

    Sweeps run until the off-diagonal Frobenius norm is at most
    ``1e-15 * ||a||_F`` (rotations negligible next to the diagonal are
    skipped); eigenvalues are then sorted ascending with a stable tie order,
    so the output is a deterministic function of the input.  Accepts an
    :class:`Element` of a :class:`MatrixModel` (cached) or a raw square array.
    """
    if isinstance(a, Element):
        cached = a._cache.get("eig")
        if cached is None:
            # elements are symmetric by construction
            cached = _decompose(a.data)
            a._cache["eig"] = cached
        return cached
    x = np.asarray(a, dtype=float)
    if x.ndim != 2 or x.shape[0] != x.shape[1] or x.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {x.shape}")
    if not _symmetry_ok(x, DEFAULT_TOL.sym):
        raise NotSymmetricError("eig requires a symmetric matrix")
    return _decompose(x)


class MatrixModel(SynapticModel):
    """Real symmetric ``dim x dim`` matrices."""

    name = "matrix"
    exact = False

    def __init__(self, dim: int, tol: Tolerances = DEFAULT_TOL):
        if int(dim) < 1:
            raise ValueError("dim must be >= 1")
        super().__init__(tol)
        self.dim = int(dim)

    def __eq__(self, other):
        return isinstance(other, MatrixModel) and other.dim == self.dim and other.tol == self.tol

    def __hash__(self):
        return hash((MatrixModel, self.dim, self.tol))

    def __repr__(self):
        return f"MatrixModel(dim={self.dim})"

    # -- construction --------------------------------------------------------
    def _unit_data(self):
        return np.eye(self.dim)

    def _validate(self, data):
        x = np.array(data, dtype=float)
        if x.shape == (self.dim * self.dim,):
            x = x.reshape(self.dim, self.dim)
        if x.shape != (self.dim, self.dim):
            raise ValueError(f"expected a {self.dim}x{self.dim} matrix, got shape {x.shape}")
        if not np.all(np.isfinite(x)):
            raise ValueError("matrix entries must be finite")
        if not _symmetry_ok(x, self.tol.sym):
            raise NotSymmetricError("matrix is not symmetric within sym_tol")
        return 0.5 * (x + x.T)

    def diag(self, *values) -> Element:
        if len(values) == 1 and np.ndim(values[0]) == 1:
            values = tuple(values[0])
        return self.element(np.diag(np.asarray(values, dtype=float)))

    # -- enveloping algebra --------------------------------------------------
    def product(self, x, y):
        return x @ y

    def envelope_norm(self, x):
        x = np.asarray(x, dtype=float)
        if not np.any(x):
            return 0.0
        # operator 2-norm (largest singular value)
        return float(np.linalg.svd(x, compute_uv=False)[0])

    def in_algebra(self, x):
        scale = 1.0 + np.abs(x).max()
        return bool(np.abs(x - x.T).max() <= self.tol.eq * scale)

    # -- primitives ------------------------------------------------------------
    def eig(self, a: Element) -> EigenDecomposition:
        return eig(a)

    def norm(self, a):
        w = eig(a).values
        return float(max(abs(w[0]), abs(w[-1])))

    def is_positive(self, a):
        w = eig(a).values
        return bool(w[0] >= -self.tol.psd * (1.0 + max(abs(w[0]), abs(w[-1]))))

    def _cut(self, a) -> float:
        return self.tol.rank_cut(self.norm(a))

    def sqrt(self, a):
        if not self.is_positive(a):
            raise NotPositiveError("square root requires 0 <= a")
        e = eig(a)
        # eigenvalues at or below the carrier cut are zero, so the root keeps
        # the carrier of a
        w = np.where(e.values > self._cut(a), e.values, 0.0)
        return self._wrap(e.reconstruct(np.sqrt(w)))

    def abs(self, a):
        e = eig(a)
        return self._wrap(e.reconstruct(np.abs(e.values)))

    def pos_part(self, a):
        e = eig(a)
        # eigenvalues within eq_tol * ||a|| of zero are round-off, so an element
        # with no positive spectrum has positive part exactly 0; the threshold
        # stays below eq_tol so that a = a+ - a- still holds
        cut = max(self.tol.eq * self.norm(a), self.tol.floor)
        w = np.where(e.values > cut, e.values, 0.0)
        return self._wrap(e.reconstruct(w))

    def carrier(self, a):
        e = eig(a)
        mask = (np.abs(e.values) > self._cut(a)).astype(float)
        return Projection(self, e.reconstruct(mask))

    def inverse(self, a):
        e = eig(a)
        if np.abs(e.values).min() <= self._cut(a):
            raise NotInvertibleError("matrix is singular at rank_tol")
        return self._wrap(e.reconstruct(1.0 / e.values))

    def cluster_tol(self, a) -> float:
        # relative to ||a|| like the rank cut, so spectra scale with the element
        return max(self.tol.cluster * self.norm(a), self.tol.floor)

    def spectral_points(self, a):
        return np.array([v for v, _ in eig(a).clusters(self.cluster_tol(a))])

    def eigenclusters(self, a) -> list[tuple[float, Projection]]:
        """``(eigenvalue, eigenprojection)`` per eigenvalue cluster of ``a``."""
        e = eig(a)
        return [(v, Projection(self, e.cluster_projection(idx))) for v, idx in e.clusters(self.cluster_tol(a))]

    def in_bicommutant(self, b, a):
        check_same_model(a, b)
        # CC(a) in the symmetric matrices is the span of a's eigenprojections
        e = eig(a)
        recon = np.zeros_like(b.data)
        for _, idx in e.clusters(self.cluster_tol(a)):
            q = e.vectors[:, idx]
            coeff = np.trace(q.T @ b.data @ q) / len(idx)
            recon += coeff * (q @ q.T)
        resid = np.linalg.norm(b.data - recon)
        return bool(resid <= self.tol.rank * (1.0 + self.norm(b)))

    # -- corner views ------------------------------------------------------------
    def range_basis(self, p: Element) -> np.ndarray:
        """Orthonormal columns spanning the range of ``p`` (rank cut as in carrier)."""
        e = eig(p)
        mask = np.abs(e.values) > self._cut(p)
        return e.vectors[:, mask]


def sqrt_psd(a: Element) -> Element:
    return a.model.sqrt(a)


def carrier(a: Element) -> Projection:
    return a.model.carrier(a)


# -- seed-deterministic generators --------------------------------------------


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_orthogonal(dim: int, seed) -> np.ndarray:
    """Haar-distributed orthogonal matrix (QR of a Gaussian with sign fix)."""
    rng = _rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((dim, dim)))
    return q * np.sign(np.where(np.diag(r) == 0, 1.0, np.diag(r)))


def random_spectrum(dim: int, seed, spec_range=(-1.0, 1.0), degenerate: float = 0.3) -> np.ndarray:
    """Eigenvalues drawn uniformly from ``spec_range``.

    With probability ``degenerate`` each value is replaced by a repeat of an
    earlier value or by 0 (when 0 lies in the range), so carriers and
    eigenspace clusters get exercised.
    """
    rng = _rng(seed)
    lo, hi = spec_range
    w = rng.uniform(lo, hi, size=dim)
    for i in range(dim):
        if rng.random() < degenerate:
            if i > 0 and rng.random() < 0.5:
                w[i] = w[rng.integers(0, i)]
            elif lo <= 0.0 <= hi:
                w[i] = 0.0
    return w


def _from_spectrum(model: MatrixModel, q: np.ndarray, w: np.ndarray) -> Element:
    x = (q * w) @ q.T
    return model.element(0.5 * (x + x.T))


def random_element(dim: int, seed, spec_range=(-1.0, 1.0), model: MatrixModel | None = None, degenerate=0.3) -> Element:
    """Random symmetric matrix ``Q diag(w) Qᵀ`` with Haar ``Q`` and ``w`` from :func:`random_spectrum`."""
    rng = _rng(seed)
    model = MatrixModel(dim) if model is None else model
    w = random_spectrum(dim, rng, spec_range, degenerate)
    return _from_spectrum(model, random_orthogonal(dim, rng), w)


def random_projection(dim: int, rank: int, seed, model: MatrixModel | None = None) -> Projection:
    """Orthogonal projection onto a Haar-random ``rank``-dimensional subspace."""
    if not 0 <= rank <= dim:
        raise ValueError(f"rank must lie in [0, {dim}]")
    rng = _rng(seed)
    model = MatrixModel(dim) if model is None else model
    if rank == 0:
        return model.zero
    if rank == dim:
        return model.unit
    q = random_orthogonal(dim, rng)[:, :rank]
    x = q @ q.T
    return Projection(model, 0.5 * (x + x.T))


def random_commuting_family(dim: int, count: int, seed, spec_range=(-1.0, 1.0), model: MatrixModel | None = None,
                            degenerate=0.3) -> list[Element]:
    """``count`` matrices diagonal in one shared Haar-random basis."""
    rng = _rng(seed)
    model = MatrixModel(dim) if model is None else model
    q = random_orthogonal(dim, rng)
    return [_from_spectrum(model, q, random_spectrum(dim, rng, spec_range, degenerate)) for _ in range(count)]
