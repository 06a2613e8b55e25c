"""Acceptance gate: one test per criterion, each reporting a PASS/FAIL line."""
import io
import json
import sys
from contextlib import redirect_stderr

import numpy as np

from synaptica import (
    MatrixModel,
    ascending_approx,
    boolean_realize,
    carrier,
    commutes,
    in_bicommutant,
    is_positive,
    is_regular,
    join,
    leq,
    meet,
    neg_part,
    order_unit_norm,
    ortho,
    polar,
    pos_part,
    pseudo_inverse,
    random_element,
    random_projection,
    riemann_approx,
    sasaki_projection,
    simple_decompose,
    spectral_bounds,
    spectral_resolution,
    spectrally_commutes,
    spectrum,
    sqrt_psd,
)
from synaptica.audit import FAULTS, AuditReport
from synaptica.cli import main
from synaptica.lattice import projections_equal, rank, range_meet, subspace_distance
from synaptica.matrix_model import random_orthogonal
from synaptica.spectral import uniform_partition

from conftest import record


def rng_for(name, i):
    return np.random.default_rng([20260501, sum(map(ord, name)), i])


def from_spectrum(q, w):
    m = MatrixModel(len(w))
    x = (q * w) @ q.T
    return m.element(0.5 * (x + x.T))


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stderr(err):
        code = main(list(argv), out)
    return code, out.getvalue(), err.getvalue()


def bisect_bound(a, lower: bool) -> float:
    """``sup{t : t <= a}`` (lower) or ``inf{t : a <= t}`` by bisection on the order."""
    n = order_unit_norm(a)
    lo, hi = -n - 1.0, n + 1.0
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        inside = leq(mid, a) if lower else leq(a, mid)
        if lower == inside:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def test_axiom_suite_matrix():
    code, text, err = run_cli("audit", "--model", "matrix", "--dim", "2", "4", "6", "10",
                              "--trials", "200", "--seed", "42", "--json")
    report = AuditReport.from_json(text)
    over = [r.id for r in report.laws if r.worst_residual is None or r.worst_residual > r.bound]
    limits = next(r for r in report.laws if r.id == "axiom.commutant_limits")
    worst = max(r.worst_residual or 0.0 for r in report.laws)
    ok = code == 0 and not over and limits.failed == 0 and limits.passed == 800
    record("axiom suite (matrix, dims 2/4/6/10 x 200, seed 42)", ok,
           f"exit {code}, {len(report.laws)} laws, worst residual {worst:.2e}, over bound {over}")
    assert ok, err


def test_exact_model_suite():
    dims = list(range(1, 9))
    code, text, err = run_cli("audit", "--model", "setfn", "--dim", *map(str, dims),
                              "--trials", "16", "--seed", "42", "--json")
    report = AuditReport.from_json(text)
    nonzero = [r.id for r in report.laws if r.worst_residual != 0.0]
    ok = code == 0 and not nonzero
    record("exact model (universes 1..8, every partition size)", ok,
           f"exit {code}, {report.failures} failures, nonzero residuals {nonzero}")
    assert ok, err


def test_square_root_law():
    worst_sq = worst_rot = 0.0
    outside = 0
    for i in range(500):
        rng = rng_for("sqrt", i)
        n = 1 + i % 12
        w = rng.uniform(0, 3, n)
        w[rng.random(n) < 0.3] = 0.0
        if n > 1:
            w[rng.random(n) < 0.3] = w[0]
        q = random_orthogonal(n, rng)
        a = from_spectrum(q, w)
        r = sqrt_psd(a)
        scale = 1 + order_unit_norm(a)
        worst_sq = max(worst_sq, np.abs(r.data @ r.data - a.data).max() / scale)
        outside += not in_bicommutant(r, a)
        # recompute in another eigenbasis of a's eigenspaces and map back
        u = random_orthogonal(n, rng)
        r2 = u @ sqrt_psd(MatrixModel(n).element(u.T @ a.data @ u)).data @ u.T
        worst_rot = max(worst_rot, np.abs(r2 - r.data).max())
    ok = worst_sq <= 1e-8 and outside == 0 and worst_rot <= 1e-7
    record("square root (500 PSD)", ok,
           f"max |r^2 - a|/(1+|a|) {worst_sq:.2e}, outside CC(a) {outside}, rotated-basis gap {worst_rot:.2e}")
    assert ok


def test_polar_decomposition():
    worst = 0.0
    for i in range(500):
        rng = rng_for("polar", i)
        n = 1 + i % 10
        a = random_element(n, rng, (-2, 2))
        f = polar(a)
        bound = 1e-7 * (1 + order_unit_norm(a))
        p, q = carrier(pos_part(a)), carrier(neg_part(a))
        res = list(f.residuals().values()) + [
            np.abs(p.data + q.data - carrier(a).data).max(),
            np.abs(p.data @ q.data).max(),
        ]
        worst = max(worst, max(res) / bound)
    ok = worst <= 1.0
    record("polar decomposition (500)", ok, f"worst residual / bound {worst:.2e}")
    assert ok


def test_orthomodular_suite():
    bad = {"orthomodular": 0, "de morgan": 0, "sasaki": 0, "oracle rank": 0}
    worst_dist = 0.0
    for n in (3, 5, 8):
        for i in range(500):
            rng = rng_for(f"oml{n}", i)
            p, q, r = (random_projection(n, int(rng.integers(0, n + 1)), rng) for _ in range(3))
            low = meet(q, r)
            if not projections_equal(join(low, meet(ortho(low), q)), q):
                bad["orthomodular"] += 1
            if not projections_equal(ortho(meet(p, q)), join(ortho(p), ortho(q))):
                bad["de morgan"] += 1
            phi = sasaki_projection(p, q)
            if not projections_equal(phi, meet(p, join(ortho(p), q))):
                bad["sasaki"] += 1
            for x, y in ((p, q), (q, r), (low, p)):
                m, o = meet(x, y), range_meet(x, y)
                if rank(m) != rank(o):
                    bad["oracle rank"] += 1
                worst_dist = max(worst_dist, subspace_distance(m, o))
    ok = not any(bad.values()) and worst_dist <= 1e-6
    record("orthomodular lattice (500 per dim 3/5/8)", ok, f"violations {bad}, max subspace distance {worst_dist:.2e}")
    assert ok


def test_monotone_square_roots():
    wrong = 0
    seen = {True: 0, False: 0}
    for i in range(500):
        rng = rng_for("mono", i)
        n = 1 + i % 8
        wa = rng.uniform(0, 2, n)
        if i % 2:
            wb = wa + rng.uniform(0.05, 1, n)
        else:
            wb = rng.uniform(0, 2, n)
            close = np.abs(wb - wa) < 1e-3
            wb[close] += 1e-2
        q = random_orthogonal(n, rng)
        a, b = from_spectrum(q, wa), from_spectrum(q, wb)
        expected = bool(np.all(wa <= wb))
        seen[expected] += 1
        if leq(a * a, b * b) != expected or leq(a, b) != expected:
            wrong += 1
    ok = wrong == 0 and seen[True] > 0 and seen[False] > 0
    record("monotone square roots (500 commuting pairs)", ok,
           f"disagreements {wrong}, cases with a<=b {seen[True]}, without {seen[False]}")
    assert ok


def test_spectral_reconstruction():
    worst_riemann = worst_asc = 0.0
    not_monotone = 0
    for i in range(100):
        rng = rng_for("riemann", i)
        n = 2 + i % 15
        a = random_element(n, rng, (-2, 2))
        while spectral_bounds(a)[0] == spectral_bounds(a)[1]:
            # a scalar has no mesh to refine
            a = random_element(n, rng, (-2, 2))
        lo, hi = spectral_bounds(a)
        res = spectral_resolution(a)
        for frac in (1, 0.5, 0.25, 0.125):
            mesh = frac * (hi - lo)
            pts = uniform_partition(a, mesh, offset=float(rng.uniform(0.1, 0.9)))
            tags = [float(rng.uniform(x, y)) for x, y in zip(pts, pts[1:])]
            s = riemann_approx(a, pts, tags, res)
            worst_riemann = max(worst_riemann, order_unit_norm(a - s.value) / mesh)
        seq = ascending_approx(a, 10, res)
        slack = 1e-9 * (1 + order_unit_norm(a))
        for k, (x, y) in enumerate(zip(seq, seq[1:] + [a]), start=1):
            not_monotone += not leq(x, y)
            worst_asc = max(worst_asc, (order_unit_norm(a - x) - slack) / ((hi - lo) / 2 ** k))
    ok = worst_riemann <= 1.0 and worst_asc <= 1.0 and not_monotone == 0
    record("spectral reconstruction (100, dims 2..16)", ok,
           f"max error/mesh {worst_riemann:.3f}, ascending max error/bound {worst_asc:.3f}, non-monotone steps {not_monotone}")
    assert ok


def test_spectrum_laws():
    bad = {"bounds": 0, "norm": 0, "positivity": 0, "projection": 0, "commutation": 0}
    for i in range(500):
        rng = rng_for("spec", i)
        n = 1 + i % 9
        a = random_element(n, rng, (0, 2) if i % 3 == 0 else (-2, 2))
        spec = spectrum(a)
        if abs(spec[0] - bisect_bound(a, True)) > 1e-7 or abs(spec[-1] - bisect_bound(a, False)) > 1e-7:
            bad["bounds"] += 1
        if abs(order_unit_norm(a) - np.abs(spec).max()) > 1e-9 * (1 + order_unit_norm(a)):
            bad["norm"] += 1
        if is_positive(a) != bool(spec[0] >= -1e-9 * (1 + order_unit_norm(a))):
            bad["positivity"] += 1
        p = random_projection(n, int(rng.integers(0, n + 1)), rng)
        if not np.all(np.min(np.abs(spectrum(p)[:, None] - [0.0, 1.0]), axis=1) <= 1e-7):
            bad["projection"] += 1
        if i % 2:
            b = from_spectrum(np.linalg.eigh(a.data)[1], rng.uniform(-1, 1, n))
        else:
            b = random_element(n, rng)
        if spectrally_commutes(b, a) != commutes(a, b):
            bad["commutation"] += 1
    ok = not any(bad.values())
    record("spectrum laws (500 + 500 commutation pairs)", ok, f"violations {bad}")
    assert ok


def test_regularity():
    worst = 0.0
    bad_parts = bad_round = 0
    for i in range(500):
        rng = rng_for("regular", i)
        n = 1 + i % 10
        a = random_element(n, rng, (-2, 2), degenerate=0.5)
        r = pseudo_inverse(a)
        c = carrier(a).data
        worst = max(worst, np.abs(a.data @ r.data - c).max(), np.abs(r.data @ a.data - c).max())
        bad_parts += is_regular(a) != (is_regular(pos_part(a)) and is_regular(neg_part(a)))
        d = simple_decompose(a)
        again = simple_decompose(d.value())
        same = (
            len(again.coefficients) == len(d.coefficients)
            and np.allclose(again.coefficients, d.coefficients, atol=1e-9)
            and all(projections_equal(u, v) for u, v in zip(again.projections, d.projections))
            and np.abs(d.value().data - a.data).max() <= 1e-9 * (1 + order_unit_norm(a))
        )
        bad_round += not same
    ok = worst <= 1e-7 and bad_parts == 0 and bad_round == 0
    record("regularity and pseudo-inverse (500)", ok,
           f"max |ar - a°| {worst:.2e}, parts disagreements {bad_parts}, round-trip failures {bad_round}")
    assert ok


def test_boolean_realization():
    bad = 0
    for k in range(1, 7):
        br = boolean_realize(k)
        full = (1 << k) - 1
        images = {s: br.realize(s) for s in range(full + 1)}
        distinct = {tuple(p.data) for p in images.values()}
        model_projs = {tuple(p.data) for p in br.model.projections()}
        bad += distinct != model_projs or len(distinct) != full + 1
        for s, ps in images.items():
            bad += not np.array_equal(ortho(ps).data, images[full ^ s].data)
            for t, pt in images.items():
                bad += ((s & t) == s) != leq(ps, pt)
                bad += not np.array_equal(meet(ps, pt).data, images[s & t].data)
                bad += not np.array_equal(join(ps, pt).data, images[s | t].data)
        bad += [tuple(p.data) for p in br.atom_map] != [tuple(images[1 << i].data) for i in range(k)]
    ok = bad == 0
    record("Boolean realization (k = 1..6, exhaustive)", ok, f"violations {bad}")
    assert ok


def test_fault_injection():
    base = ("audit", "--model", "matrix", "--dim", "2", "4", "--trials", "6", "--seed", "0")
    clean = run_cli(*base)[0]
    caught = {}
    for name in FAULTS:
        code, _, err = run_cli(*base, "--inject-fault", name)
        named = err.split("failing laws: ", 1)[1].strip() if "failing laws: " in err else ""
        caught[name] = (code, named)
    missed = [n for n, (code, named) in caught.items() if code != 1 or not named]
    ok = clean == 0 and len(caught) == 10 and not missed
    detail = "; ".join(f"{n} -> {named.split(',')[0]}" for n, (_, named) in caught.items())
    record("fault injection (10 faults)", ok, f"clean exit {clean}, missed {missed}; {detail}")
    assert ok
