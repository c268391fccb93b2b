"""Moyal plane: build the star product for {x1, x2} = 1 up to order 3.

The solver knows nothing about the Moyal formula.  It solves
delta Pi^k = Omega^k block by block with the minimal-norm choice, so the
result agrees with the Moyal product only up to gauge.  Fixing Pi^2 to the
Moyal cochain through the gauge hook shows the two constructions line up.
"""
from hochstar.cochain import delta
from hochstar.poly import parse_poly
from hochstar.starprod import PoissonStructure, associator, build, star_eval
from hochstar.verify import moyal_pi

ps = PoissonStructure.moyal()
sp = build(ps, 3)

x1, x2 = parse_poly("x1", 2), parse_poly("x2", 2)
print("x1 * x2 =", [str(c) for c in star_eval(sp, x1, x2)])
print("x2 * x1 =", [str(c) for c in star_eval(sp, x2, x1)])

f, g = parse_poly("x1^2", 2), parse_poly("x2^2", 2)
print("x1^2 * x2^2 =", [str(c) for c in star_eval(sp, f, g)])

h = parse_poly("x1*x2 + x2^3", 2)
print("associator (f*g)*h - f*(g*h) by order:", [str(c) for c in associator(sp, f, g, h)])

w = ps.matrix()
for k in (2, 3):
    print(f"Pi^{k}: {len(sp.pi(k))} terms, Moyal has {len(moyal_pi(k, w))}")
print("delta(Moyal Pi^2 - Pi^2) vanishes:", delta(moyal_pi(2, w) - sp.pi(2)).is_zero())
print("delta(Moyal Pi^3 - Pi^3) vanishes:", delta(moyal_pi(3, w) - sp.pi(3)).is_zero())

aligned = build(ps, 3, gauge={2: moyal_pi(2, w)})
print("with Pi^2 gauged to Moyal:")
print("  Pi^2 equals Moyal:", aligned.pi(2) == moyal_pi(2, w))
print("  delta(Moyal Pi^3 - Pi^3) vanishes:", delta(moyal_pi(3, w) - aligned.pi(3)).is_zero())
