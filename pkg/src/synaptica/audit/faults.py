"""Deliberately broken implementations used to show the audit is not vacuous.

Each fault patches one operation of the matrix model or the calculus for the
duration of a ``with inject(name):`` block.  Functions are replaced in every
synaptica module that imported them, so internal callers see the fault too.
"""
from __future__ import annotations

import contextlib
import sys
from dataclasses import dataclass
from typing import Callable
from unittest import mock

import numpy as np

from .. import calculus, core, lattice, spectral
from ..core import Projection, as_projection, carrier
from ..matrix_model import MatrixModel, eig


@dataclass(frozen=True)
class Fault:
    name: str
    description: str
    patches: Callable[[], list]


def _everywhere(original, replacement) -> list:
    """Patchers for every synaptica module attribute bound to ``original``."""
    out = []
    for modname, mod in sorted(sys.modules.items()):
        if not modname.startswith("synaptica") or mod is None:
            continue
        for attr, value in list(vars(mod).items()):
            if value is original:
                out.append(mock.patch.object(mod, attr, replacement))
    return out


def _sqrt_unclamped(self, a):
    d = eig(a)
    with np.errstate(invalid="ignore"):
        x = (d.vectors * np.sqrt(d.values)) @ d.vectors.T
    return self._wrap(0.5 * (x + x.T))


def _carrier_no_cut(self, a):
    d = eig(a)
    keep = np.abs(d.values) > 0.0
    v = d.vectors[:, keep]
    x = v @ v.T
    return Projection(self, 0.5 * (x + x.T))


def _meet_product(p, q):
    x = p.data @ q.data
    return Projection(p.model, 0.5 * (x + x.T))


def _jordan_no_half(a, b):
    a, b = core._pair(a, b)
    m = a.model
    return m.element(m.product(a.data, b.data) + m.product(b.data, a.data))


def _norm_signed_max(self, a):
    return float(eig(a).values[-1])


def _pos_part_flipped(a):
    return (calculus.absolute(a) - a) / 2


def _signum_positive_only(a):
    return carrier((calculus.absolute(a) + a) / 2)


def _sasaki_no_carrier(a, b):
    return calculus.quadratic_map(a, b)


def _resolution_left(a, lam):
    # eigenvalues strictly below lam: drops the eigenspace at lam itself
    below = 1.0 - carrier((calculus.absolute(a - lam) + (a - lam)) / 2) - (1.0 - carrier(a - lam))
    return as_projection(below)


def _positive_no_tolerance(self, a):
    return bool(eig(a).values[0] >= 0.0)


FAULTS: dict[str, Fault] = {
    f.name: f
    for f in [
        Fault("sqrt-unclamped", "square root of raw eigenvalues, without clamping round-off negatives",
              lambda: [mock.patch.object(MatrixModel, "sqrt", _sqrt_unclamped)]),
        Fault("carrier-no-cut", "carrier keeps every eigenvalue that is not exactly zero (rank_tol = 0)",
              lambda: [mock.patch.object(MatrixModel, "carrier", _carrier_no_cut)]),
        Fault("meet-product", "meet computed as the symmetrized product pq",
              lambda: _everywhere(lattice.meet, _meet_product)),
        Fault("jordan-no-half", "Jordan product ab + ba without the factor 1/2",
              lambda: _everywhere(core.jordan_product, _jordan_no_half)),
        Fault("norm-signed-max", "norm taken as the largest eigenvalue instead of the largest |eigenvalue|",
              lambda: [mock.patch.object(MatrixModel, "norm", _norm_signed_max)]),
        Fault("pos-part-flipped", "positive part computed as (|a| - a) / 2",
              lambda: _everywhere(calculus.pos_part, _pos_part_flipped)),
        Fault("signum-positive-only", "signum omits the negative carrier",
              lambda: _everywhere(calculus.signum, _signum_positive_only)),
        Fault("sasaki-no-carrier", "Sasaki map returns aba instead of its carrier",
              lambda: _everywhere(calculus.sasaki_map, _sasaki_no_carrier)),
        Fault("resolution-left-continuous", "p_t excludes the eigenspace at t",
              lambda: _everywhere(spectral.resolution_at, _resolution_left)),
        Fault("order-no-tolerance", "positivity test demands the smallest eigenvalue be >= 0 exactly",
              lambda: [mock.patch.object(MatrixModel, "is_positive", _positive_no_tolerance)]),
    ]
}


@contextlib.contextmanager
def inject(name: str):
    """Activate fault ``name`` inside the block."""
    try:
        fault = FAULTS[name]
    except KeyError:
        raise ValueError(f"unknown fault {name!r}; choose from {sorted(FAULTS)}") from None
    with contextlib.ExitStack() as stack:
        for p in fault.patches():
            stack.enter_context(p)
        yield fault
