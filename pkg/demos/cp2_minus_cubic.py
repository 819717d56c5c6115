"""Log cohomology of the complement of a smooth cubic in CP^2.

The boundary torus bundle is a circle bundle of Euler number 9 over an
elliptic curve; its Betti numbers come from the Gysin sequence.  Each
weight that is a multiple of 3 then carries one copy of those numbers.
"""
from logcoh.fixtures import cp2_cubic
from logcoh.graded import algebra_from_table, gysin_circle_bundle
from logcoh.logring import build_log_ring, check_finite_generation, h1_class, hilbert_table

E = algebra_from_table([("1", 0), ("a", 1), ("b", 1), ("p", 2)], [("a", "b", {"p": 1})])
print("circle bundle over E, rational:", [g.rank for g in gysin_circle_bundle(E, {E.index("p"): 9})])
print("  integral torsion:", [g.torsion for g in gysin_circle_bundle(E, {E.index("p"): 9}, "ZZ")])

L = build_log_ring(cp2_cubic(), 9)
T = hilbert_table(L)
for w in T.weights():
    print(f"weight {w}: {T.column(w, [0, 1, 2, 3])}")

print("generated by H*(X) and primitive classes:", check_finite_generation(L).ok)
print("H_1 class of a loop winding 4 times:", h1_class((4,), [[3]]))
