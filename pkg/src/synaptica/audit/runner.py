"""Running laws over seeded trials and collecting an :class:`AuditReport`."""
from __future__ import annotations

import json
import math
import zlib
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from ..core import DEFAULT_TOL, Tolerances
from .generators import make_gen
from .laws import LAWS, Checker, Law, axioms, theorems

MODELS = ("matrix", "setfn")
SHRINK_TRIALS = 50


def trial_rng(seed: int, law_id: str, dim: int, trial: int) -> np.random.Generator:
    """Independent stream per (seed, law, dim, trial)."""
    return np.random.default_rng([seed, zlib.crc32(law_id.encode()), dim, trial])


def run_trial(law: Law, model: str, dim: int, trial: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> tuple[Checker, dict]:
    gen = make_gen(model, dim, trial_rng(seed, law.id, dim, trial), trial, tol)
    ck = Checker(gen.model)
    try:
        law.fn(gen, ck)
    except Exception as exc:  # failures are data
        ck.error = f"{type(exc).__name__}: {exc}"
    return ck, gen.inputs


def _finite(x: float | None):
    if x is None or not math.isfinite(x):
        return None
    return float(x)


def make_payload(law: Law, model: str, seed: int, dim: int, trial: int, ck: Checker, inputs: dict) -> dict:
    bad = ck.first_failure()
    payload = {
        "law": law.id,
        "model": model,
        "seed": seed,
        "dim": dim,
        "trial": trial,
        "inputs": inputs,
    }
    if ck.error is not None:
        payload["error"] = ck.error
    if bad is not None:
        payload["check"] = bad.label
        payload["residual"] = _finite(bad.residual)
        payload["bound"] = bad.bound
    return payload


@dataclass
class LawResult:
    id: str
    anchor: str
    passed: int = 0
    failed: int = 0
    worst_residual: float | None = 0.0
    bound: float = 0.0
    counterexample: dict | None = None

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "anchor": self.anchor,
            "pass": self.passed,
            "fail": self.failed,
            "worst_residual": self.worst_residual,
            "bound": self.bound,
        }
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "LawResult":
        return cls(d["id"], d["anchor"], d["pass"], d["fail"], d["worst_residual"], d["bound"], d.get("counterexample"))


@dataclass
class AuditReport:
    model: str
    seed: int
    trials: int
    dims: list[int]
    laws: list[LawResult] = field(default_factory=list)

    @property
    def failures(self) -> int:
        return sum(r.failed for r in self.laws)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def failing_laws(self) -> list[str]:
        return [r.id for r in self.laws if r.failed]

    def merged(self, other: "AuditReport") -> "AuditReport":
        if (self.model, self.seed, self.trials, self.dims) != (other.model, other.seed, other.trials, other.dims):
            raise ValueError("reports come from different runs")
        return AuditReport(self.model, self.seed, self.trials, list(self.dims), self.laws + other.laws)

    def to_dict(self) -> dict:
        return {
            "model": self.model,
            "seed": self.seed,
            "trials": self.trials,
            "dims": list(self.dims),
            "laws": [r.to_dict() for r in self.laws],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, allow_nan=False) + "\n"

    @classmethod
    def from_dict(cls, d: dict) -> "AuditReport":
        return cls(d["model"], d["seed"], d["trials"], list(d["dims"]), [LawResult.from_dict(x) for x in d["laws"]])

    @classmethod
    def from_json(cls, text: str) -> "AuditReport":
        return cls.from_dict(json.loads(text))

    def table(self) -> str:
        width = max([len(r.id) for r in self.laws] + [3])
        lines = [f"{'law':<{width}}  {'pass':>6}  {'fail':>5}  {'worst residual':>14}  {'bound':>9}"]
        for r in self.laws:
            worst = "nan/inf" if r.worst_residual is None else f"{r.worst_residual:.3g}"
            lines.append(f"{r.id:<{width}}  {r.passed:>6}  {r.failed:>5}  {worst:>14}  {r.bound:>9.3g}")
        lines.append(f"model={self.model} dims={self.dims} trials={self.trials} seed={self.seed} failures={self.failures}")
        return "\n".join(lines)


def _check_args(model: str, dims: Iterable[int], trials: int) -> list[int]:
    if model not in MODELS:
        raise ValueError(f"model must be one of {MODELS}")
    dims = [int(d) for d in dims]
    if not dims or any(d < 1 for d in dims):
        raise ValueError("dimensions must be positive")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    return dims


def run_law(law: Law, model: str, dims: list[int], trials: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> LawResult:
    res = LawResult(law.id, law.anchor)
    worst = -1.0
    for dim in dims:
        for t in range(trials):
            ck, inputs = run_trial(law, model, dim, t, seed, tol)
            w = ck.worst()
            if ck.ok:
                res.passed += 1
            else:
                res.failed += 1
                if res.counterexample is None:
                    res.counterexample = make_payload(law, model, seed, dim, t, ck, inputs)
            r = math.inf if ck.error is not None else (w.residual if w is not None else 0.0)
            if r != r:
                r = math.inf
            if r > worst:
                worst = r
                res.bound = w.bound if w is not None else 0.0
    res.worst_residual = _finite(worst)
    return res


def audit(model: str, dims, trials: int, seed: int, laws: list[Law] | None = None,
          tol: Tolerances = DEFAULT_TOL) -> AuditReport:
    """Run ``laws`` (default: all) for ``trials`` seeded trials at each dimension."""
    dims = _check_args(model, dims, trials)
    laws = list(LAWS.values()) if laws is None else laws
    return AuditReport(model, seed, trials, dims, [run_law(x, model, dims, trials, seed, tol) for x in laws])


def audit_axioms(model: str, dims, trials: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> AuditReport:
    return audit(model, dims, trials, seed, axioms(), tol)


def audit_theorems(model: str, dims, trials: int, seed: int, tol: Tolerances = DEFAULT_TOL) -> AuditReport:
    return audit(model, dims, trials, seed, theorems(), tol)


def _fails(law: Law, model: str, dim: int, trial: int, seed: int):
    ck, inputs = run_trial(law, model, dim, trial, seed)
    return (not ck.ok), ck, inputs


def counterexample_shrink(payload: dict) -> dict:
    """Smallest failing ``(dim, trial)`` for the payload's law, searched lexicographically.

    Smaller dimensions are tried first (trials ``0..SHRINK_TRIALS-1``), then
    earlier trials at the original dimension.  A payload that does not
    reproduce a failure is returned unchanged, and shrinking a shrunk payload
    is a fixpoint.
    """
    law = LAWS[payload["law"]]
    model, seed, dim, trial = payload["model"], payload["seed"], payload["dim"], payload["trial"]
    failing, _, _ = _fails(law, model, dim, trial, seed)
    if not failing:
        return dict(payload)
    for d in range(1, dim + 1):
        limit = trial if d == dim else SHRINK_TRIALS
        for t in range(limit):
            failing, ck, inputs = _fails(law, model, d, t, seed)
            if failing:
                return make_payload(law, model, seed, d, t, ck, inputs)
    ck, inputs = run_trial(law, model, dim, trial, seed)
    return make_payload(law, model, seed, dim, trial, ck, inputs)
