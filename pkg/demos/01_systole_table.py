"""
Systole candidates for the two cyclic families
==============================================

The 4g-gon and the (4g+2)-gon with opposite sides glued give surfaces with
cyclic symmetry of order 4g and 4g+2.  Their shortest closed geodesic has
length 2h, where cosh h = 1 + cos 2a + cos 2b for the half angles a, b at
the polygon vertices.
"""

import math

from cyclic_systole import ModelKind, angles, candidate_systole, metrics

# the half angles: equal for the 4g-gon, in ratio 1:2 for the (4g+2)-gon
for kind, g in [(ModelKind.P1, 4), (ModelKind.P2, 7), (ModelKind.P2STAR, 7)]:
    ap = angles(kind, g)
    print(f"{kind.value:7s} g={g}: a = pi/{math.pi / ap.a:.0f}, b = pi/{math.pi / ap.b:.0f}, "
          f"{ap.sides} sides")

# P2 and its dual region P2* describe the same surface, so the lengths agree
print(candidate_systole(ModelKind.P2, 7) - candidate_systole(ModelKind.P2STAR, 7))

print()
print(" g   4g-gon       (4g+2)-gon")
for g in range(4, 11):
    print(f"{g:2d}   {candidate_systole(ModelKind.P1, g):.8f}   "
          f"{candidate_systole(ModelKind.P2, g):.8f}")

# both families approach 2 arccosh 3 from below as the polygons fill up
print("limit", 2 * math.acosh(3))

# the other lengths of the construction: circumradius, inradius, and the
# distance from the centre to the midpoint H of the short diagonal
m = metrics(angles(ModelKind.P1, 4))
print(f"|OA| = {m.oa:.6f}  |OD| = {m.od:.6f}  |OH| = {m.oh:.6f}  h = {m.de:.6f}")
