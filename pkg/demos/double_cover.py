"""Double cover of the symmetric determinantal family [[x, y], [y, z]].

Run: python demos/double_cover.py
"""
from epwlab import dcover, polyring
from epwlab.polyring import MultiPoly

S = dcover.SymDet.parse(("x", "y", "z"), [["x", "y"], ["y", "z"]])
cov = dcover.cover_ideal(S)
print("cover ideal in", ", ".join(cov.ideal.vars))
for g in cov.ideal.gens:
    print("  ", g)

print("det in ideal:", dcover.det_in_cover_ideal(S))
print("product table (adjugate):", [[str(e) for e in row] for row in dcover.product_table(S).to_rows()])

# points of the base: off the conic, on it, and at the vertex
for p in ([1, 0, 1], [1, 0, 0], [0, 0, 0]):
    print(p, dcover.smoothness_test(S, p).value)

# a generic 4x4 symmetric matrix: every associativity witness closes up
G = dcover.SymDet.generic(4)
zero = MultiPoly.zero(G.vars)
ok = all(all(r == zero for r in dcover.associativity_witness(G, i, j, k)[1])
         for i in range(4) for j in range(4) for k in range(4))
print("associativity for generic 4x4:", ok)

minors, comps = dcover.universal_quadrics()
print("universal model spans agree:", polyring.same_span(minors, comps))
