"""Intersection lattices and Poincare polynomials.

Walks through the combinatorial layer: building an arrangement from
integer normal vectors, its intersection lattice with Moebius values,
Poincare polynomials, deconing, localization and essentialization.

Run:  python demos/01_lattices_and_poincare.py
"""

from logchern import (Arrangement, build_lattice, decone, essentialize,
                      localize, mobius, poincare_affine,
                      poincare_projective)

# The Boolean arrangement xyz = 0 in C^3.
boolean3 = Arrangement(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
lat = mobius(build_lattice(boolean3))
print("Boolean arrangement in C^3")
for level in lat.report():
    flats = ", ".join(f"{f['hyperplanes']} (mu={f['mu']})"
                      for f in level["flats"])
    print(f"  codim {level['codim']}: {flats}")
print("  pi(A, t)  =", poincare_affine(boolean3).render())
print("  pi(PA, t) =", poincare_projective(boolean3).render())
print()

# Three concurrent lines in C^2: the origin has Moebius value 2.
lines = Arrangement(2, [(1, 0), (0, 1), (1, 1)])
lat = mobius(build_lattice(lines))
origin = lat.flats_of_codim(2)[0]
print("Three lines through the origin of C^2")
print("  mu(origin) =", lat.mobius(origin))
print("  pi(A, t)   =", poincare_affine(lines).render())
print()

# Deconing: pi(A, t) = (1 + t) pi(dA, t), for any choice of hyperplane.
print("Deconing the three lines at each hyperplane:")
for h in range(lines.n):
    d = decone(lines, h)
    print(f"  decone at H{h}: {d.n} points in C^1, "
          f"pi = {poincare_affine(d).render()}")
print()

# The octic arrangement xyzw (x-w)(y-w)(x+y+z)(x-y+z) = 0 in C^4.
octic = Arrangement(4, [(1, 0, 0, 0), (0, 1, 0, 0), (0, 0, 1, 0),
                        (0, 0, 0, 1), (1, 0, 0, -1), (0, 1, 0, -1),
                        (1, 1, 1, 0), (1, -1, 1, 0)])
lat = build_lattice(octic)
print("Octic arrangement in C^4")
print("  flats by codim:", [len(lv) for lv in lat.levels])
print("  pi(A, t)  =", poincare_affine(octic, lat).render())
print("  pi(PA, t) =", poincare_projective(octic, lat).render())

# Localizing at a rank-3 flat keeps the hyperplanes through that line.
rich = max(lat.flats_of_codim(3), key=lambda f: len(f.indices))
sub = localize(octic, rich)
print(f"  richest codim-3 flat: hyperplanes {sorted(rich.indices)}, "
      f"localization has n = {sub.n}")
print()

# Essentialization: a rank-2 arrangement in C^3 rewritten in C^2.
triple = Arrangement(3, [(1, -1, 0), (1, 0, -1), (0, 1, -1)])
ess = essentialize(triple)
print("Braid-type triple in C^3 has rank", triple.rank())
print("  essentialized to C^%d with normals %s" % (ess.dim, list(ess.normals)))
print("  pi before:", poincare_affine(triple).render())
print("  pi after: ", poincare_affine(ess).render())
