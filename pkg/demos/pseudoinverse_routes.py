"""Three routes to the pseudoinverse of a delta block.

The production route is an exact rank factorization.  The sympy normal-
equations oracle and the floating-point Tikhonov limit must agree with it.
On C^1 the pseudoinverse is a rescaled transpose, delta+ = delta^T / nu(l).
"""
import numpy as np

from hochstar.blocksolve import delta_matrix, pinv, pinv_tikhonov
from hochstar.verify import check_u_formula, pinv_oracle

m = delta_matrix(2, (2, 1, 1))
exact = pinv(m)
print("block (p=2, l=(2,1,1)):", m.shape, "rank", m.rank())
print("rank factorization == sympy oracle:", exact == pinv_oracle(m))
for alpha in (1e-1, 1e-2, 1e-3, 1e-4):
    err = np.abs(pinv_tikhonov(m, alpha) - exact.to_numpy()).max()
    print(f"  alpha={alpha:g}: max |Tikhonov - exact| = {err:.2e}")

d = delta_matrix(1, (3, 1))
print("\nC^1 block l=(3,1): delta^T delta =", [[int(x) for x in r] for r in (d.T @ d).rows()])
report = check_u_formula(2, [(1, 0), (2, 0), (1, 1), (3, 1), (2, 2)])
print(report)
