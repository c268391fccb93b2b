"""Degree blocks of the Hochschild differential and their cohomology.

delta preserves the total degree l = a_1 + ... + a_p, so each block C^p_l is a
small integer matrix.  The harmonic projector P_ker - P_im has rank
dim H^p_l; only antisymmetric polyvectors survive on the tilde complex.
"""
from hochstar.blocksolve import cohomology_dim, delta_matrix, projectors
from hochstar.multiindex import indices_up_to

m = delta_matrix(2, (1, 1, 1))
print("delta on C^2_(1,1,1):", m.shape)
for key, row in zip(m.row_basis.tuples, m.rows()):
    print(f"  {key}: {[int(x) for x in row]}")

print("\ncohomology of the tilde complex, n = 3, |l| <= 3")
print("   l        H^1 H^2 H^3")
for l in indices_up_to(3, 3):
    if not any(l):
        continue
    dims = [cohomology_dim(p, l) for p in (1, 2, 3)]
    if any(dims):
        print(f"  {tuple(l)}  {dims[0]:3} {dims[1]:3} {dims[2]:3}")

proj = projectors(2, (2, 1))
print("\nprojector ranks on C^2_(2,1):",
      {name: P.rank() for name, P in zip(("ker", "ker_perp", "im", "harmonic"), proj)})
