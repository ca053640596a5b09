"""Sextic of a Lagrangian, its corank strata, and the first-order data at a corank-3 point.

Run: python demos/epw_strata.py [seed]
"""
import sys

from epwlab import epw, exactnum, lagrangian
from epwlab.exactnum import SeededRng, format_rational

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
rng = SeededRng(seed)

# a Lagrangian forced through three points, one of them with multiplicity two
pts = [rng.nonzero_vector(6, 5) for _ in range(3)]
A = lagrangian.lagrangian_through_points(rng, pts, [1, 1, 2])
S = epw.sextic(A, 0)
print("sextic has", len(S.poly.terms), "terms; agrees in chart 5:", epw.sextic(A, 5).poly == S.poly)
for p in pts + [rng.nonzero_vector(6, 5)]:
    coords = ",".join(format_rational(x) for x in p)
    print(f"  [{coords}]: corank {epw.corank_at(A, p)}, on sextic {S(p) == 0}")

# a corank-3 point at e0 and its classification
A, cert = lagrangian.build_delta_lagrangian(rng)
print("\ncorank at e0:", epw.corank_at(A, cert.v0), "emptiness certificate degree", cert.emptiness_degree)
tau = epw.tau_map(A, cert.D)
print("tau rank:", exactnum.rank(tau.matrix), "orbit:", epw.aloha_classify(A, cert.D))
print("tangent kernel dimension:", epw.delta_tangent(A, cert.D).rows)

A1, cert1, _, d = lagrangian.build_single_point_lagrangian(rng)
print("single-point kernel plane (certified at degree", d, "):", epw.aloha_classify(A1, cert1.D))
A2, cert2 = lagrangian.build_tangent_contact_lagrangian(rng)
print("tangent contact:", epw.aloha_classify(A2, cert2.D))
