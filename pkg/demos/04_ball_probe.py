"""
How far does a ball of radius h reach?
======================================

The systole bound rests on a ball of radius h about the midpoint H of the
short diagonal embedding in the surface.  Half the shortest loop through a
point x is its injectivity radius; along the segment from the centre O to H
it should stay above h and touch h exactly at H.
"""

from cyclic_systole.figures import render
from cyclic_systole.fuchsian import injectivity_profile, probe_setup
from cyclic_systole.models import ModelKind

gs, batch, pts = probe_setup(ModelKind.P1, 4, samples=9)
h = gs.frame.m.de
prof = injectivity_profile(gs, pts, batch)
for i, r in enumerate(prof):
    print(f"x = O + {i}/8 OH   injectivity radius - h = {r - h:+.3e}")

# the same fact as a picture: translates of the ball touch but never overlap
svg, info = render("ball", ModelKind.P1, 4)
with open("ball-p1-g4.svg", "w") as fh:
    fh.write(svg)
print(info.components, "translates, smallest gap", info.min_gap)
