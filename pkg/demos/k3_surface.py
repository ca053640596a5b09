"""The K3 surface at a corank-3 point, its inverse construction, and points mapping to the sextic.

Run: python demos/k3_surface.py [seed]
"""
import itertools
import sys

from epwlab import epw, k3, lagrangian, polyring
from epwlab.exactnum import SeededRng
from epwlab.lagrangian import Decomposition

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 0
rng = SeededRng(seed)

A, cert = lagrangian.build_delta_lagrangian(rng)
data = k3.k3_data(A, cert.D)
print("W_K quadrics:")
for g in data.wk_ideal.gens:
    print("  ", g)
print("r-quadric has", len(data.r_quadric.terms), "terms")
print("W_K (dim, degree):", polyring.hilbert_fit(data.wk_ideal))
print("S   (dim, degree):", polyring.hilbert_fit(data.s_ideal), "(takes a few seconds)")

# rebuild a Lagrangian from the kernel plane and r, and compare
A2 = k3.pellegrini(data.K, data.r_form)
again = k3.k3_data(A2, Decomposition.standard())
print("rebuilt K3 ideal equal:", polyring.same_span(data.s_ideal.gens, again.s_ideal.gens))

# another complement for the same point gives the same surface
D2 = lagrangian.random_decomposition(rng, v0=cert.D.v0)
print("independent of the complement:", bool(k3.decomposition_independence(A, cert.D, D2)))

# an instance with known rational points on S; pairs with a common line map onto the sextic
A, data, pts = k3.designed_instance(rng, 4)
print("\nrational points on S, digits of height:", [len(str(max(abs(x) for x in y))) for y in pts])
for p, q in itertools.combinations(pts, 2):
    if k3.support_overlap(data.annK, p, q) == 1:
        r = epw.gmap_point_check(A, data.D, data.to_vector(p), data.to_vector(q))
        print(f"  pair -> corank {r.corank}, on sextic {r.ok}, c symmetric {r.c == r.c_swapped}")
