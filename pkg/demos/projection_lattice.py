"""Projections form an orthomodular lattice that is not distributive."""
import numpy as np

from synaptica import MatrixModel, compatible, join, meet, ortho, sasaki_projection
from synaptica.lattice import range_meet, rank, sasaki_identity_residual

m = MatrixModel(2)
p = m.diag(1.0, 0.0)
q = m.element([[0.5, 0.5], [0.5, 0.5]])
r = ortho(q)

print("p and q compatible:", compatible(p, q))
print("rank(p ^ q) =", rank(meet(p, q)), " rank(p v q) =", rank(join(p, q)))
print("oracle agrees:", rank(range_meet(p, q)) == rank(meet(p, q)))

# distributivity fails: p ^ (q v r) = p but (p ^ q) v (p ^ r) = 0
lhs = meet(p, join(q, r))
rhs = join(meet(p, q), meet(p, r))
print("p ^ (q v r) =", np.diag(lhs.data), " (p ^ q) v (p ^ r) =", np.diag(rhs.data))

# the Sasaki projection of q onto p
phi = sasaki_projection(p, q)
print("phi_p(q) =", np.round(phi.data, 6).tolist())
print("identity phi_p(q) = p ^ (p' v q), residual", f"{sasaki_identity_residual(p, q):.1e}")

# orthomodular law in three dimensions
m3 = MatrixModel(3)
small = m3.diag(1.0, 0.0, 0.0)
big = m3.diag(1.0, 1.0, 0.0)
back = join(small, meet(ortho(small), big))
print("q = p v (p' ^ q):", np.allclose(back.data, big.data))
