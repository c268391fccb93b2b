"""Second order for linear Poisson structures: so(3) and sl(2).

For a linear bracket the e_i+e_j+e_k part of Pi^2 has a closed form,
phi_ijk = c_i (X^{e_i} (x) X^{e_j+e_k} + X^{e_j+e_k} (x) X^{e_i}) with
c_i = (1/24) sum_l (d_l w_ij w_lk + d_l w_ik w_lj).
For so(3) both the closed form and the solved block vanish.  For sl(2) they
do not, and the solved block comes out at exactly twice the closed form.
"""
from hochstar.poly import parse_poly
from hochstar.starprod import PoissonStructure, build, star_eval
from hochstar.verify import closed_form_pi2_block, distinct_index_blocks

sl2 = PoissonStructure(3, {(0, 1): parse_poly("2*x2", 3),
                           (0, 2): parse_poly("-2*x3", 3),
                           (1, 2): parse_poly("x1", 3)})

for name, ps in (("so(3)", PoissonStructure.so3()), ("sl(2)", sl2)):
    sp = build(ps, 2)
    block = distinct_index_blocks(sp.pi(2))
    closed = closed_form_pi2_block(ps)
    print(f"{name}: Pi^2 has {len(sp.pi(2))} terms; e_i+e_j+e_k block has {len(block)}")
    print(f"  block == closed form: {block == closed}; block == 2 x closed form: {block == closed * 2}")
    for key, c in sorted(block.terms.items())[:4]:
        print(f"  {key}: {c}")

sp = build(PoissonStructure.so3(), 2)
x = [parse_poly(f"x{i}", 3) for i in (1, 2, 3)]
print("so(3): x1 * x2 =", [str(c) for c in star_eval(sp, x[0], x[1])])
print("so(3): x1^2 * x2 =", [str(c) for c in star_eval(sp, x[0] * x[0], x[1])])
