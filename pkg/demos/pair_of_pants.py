"""Pairs of pants: degree-zero log classes, the Jacobian ring, and its mirror.

P^n minus n+2 generic hyperplanes has log ring whose degree-zero part is
the Stanley-Reisner ring of the boundary of a simplex.  On the mirror side
that ring is Jac(z_1 ... z_{n+2}).
"""
from logcoh.arrangements import (build_generic_pair, jacobian_ring, mirror_hochschild,
                                 sr_jacobian_isomorphism)
from logcoh.logring import presentation_topological, stanley_reisner

for n in (1, 2, 3):
    p = build_generic_pair(n, n + 2)
    ok, wit = sr_jacobian_isomorphism(n)
    print(f"n={n}")
    print("  SR :", stanley_reisner(p).text())
    print("  Jac:", jacobian_ring(n + 2).text())
    print("  isomorphic:", ok, wit["sr_hilbert"])

print()
print(presentation_topological(build_generic_pair(1, 3)).text())

rep = mirror_hochschild(4, 4)
print("mirror HH^0 by weight:", rep.h0)
print("mirror HH^1 by weight:", rep.h1, " b1 =", rep.b1)
