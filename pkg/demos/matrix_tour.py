"""Tour of the matrix model: order, carriers, polar form and spectral resolution."""
import numpy as np

from synaptica import (
    MatrixModel,
    ascending_approx,
    carrier,
    leq,
    order_unit_norm,
    polar,
    pseudo_inverse,
    riemann_approx,
    simple_decompose,
    spectral_resolution,
    sqrt_psd,
)
from synaptica.lattice import rank
from synaptica.spectral import uniform_partition

m = MatrixModel(3)
a = m.element([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, -1.0]])
print("a =\n", a.data)
print("norm", order_unit_norm(a), "(largest |eigenvalue|)")

# the order is the PSD cone: a <= 3 but not a <= 2
print("a <= 3:", leq(a, 3.0), " a <= 2:", leq(a, 2.0))

# polar form a = sgn(a)|a|
f = polar(a)
print("sgn(a) =\n", np.round(f.signum.data, 6))
print("polar residuals", {k: f"{v:.1e}" for k, v in f.residuals().items()})

# square root of a positive element, checked by squaring
b = a * a
r = sqrt_psd(b)
print("|| sqrt(a^2)^2 - a^2 || =", f"{np.abs(r.data @ r.data - b.data).max():.1e}")

# a singular element: carrier and pseudo-inverse
s = m.diag(4.0, 0.0, -2.0)
print("carrier of diag(4,0,-2):", np.diag(carrier(s).data))
print("pseudo-inverse:", np.diag(pseudo_inverse(s).data))

# spectral resolution: p_λ jumps at each eigenvalue
res = spectral_resolution(a)
for lam, p, d in zip(res.breakpoints, res.projections_at, res.eigenprojections_at):
    print(f"lambda {lam:+.3f}  rank p {rank(p)}  rank d {rank(d)}")

# simple decomposition a = Σ α u
dec = simple_decompose(a)
print("coefficients", [round(x, 6) for x in dec.coefficients])

# Riemann sums converge with the mesh; ascending approximations climb to a
lo, hi = res.bounds
for frac in (1, 0.5, 0.25, 0.125):
    pts = uniform_partition(a, frac * (hi - lo))
    tags = [0.5 * (x + y) for x, y in zip(pts, pts[1:])]
    s_ = riemann_approx(a, pts, tags, res)
    print(f"mesh {s_.mesh:.3f}  error {order_unit_norm(a - s_.value):.3f}")
for k, x in enumerate(ascending_approx(a, 5, res), start=1):
    print(f"a_{k}: error {order_unit_norm(a - x):.4f}  bound {(hi - lo) / 2 ** k:.4f}")
