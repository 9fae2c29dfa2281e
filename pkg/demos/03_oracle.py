"""
The systole from the group itself
=================================

Independent of any trigonometry, the side pairings generate the surface
group.  Enumerating the elements that move the centre a bounded distance and
taking the smallest translation length gives the systole; counting the
conjugacy classes that realise it gives the number of systoles.
"""

import numpy as np

from cyclic_systole.fuchsian import (
    build_generators,
    cycle_relations,
    enumerate_batch,
    oracle_systole,
)
from cyclic_systole.models import ModelKind

gs = build_generators(ModelKind.P1, 3)
print(len(gs.gens), "side pairings, circumradius", round(gs.circumradius, 6))

# going once round the single vertex class multiplies out to the identity
for word, residual in cycle_relations(gs):
    print("cycle", word, "residual", residual)

batch = enumerate_batch(gs, 6.0)
lengths = batch.translation_lengths()[1:]
print(len(batch), "elements within distance 6 of the centre")
print("shortest translation lengths", np.unique(np.round(lengths, 6))[:4])

# a full run with the default bound, which is large enough to certify
for kind, g in [(ModelKind.P1, 2), (ModelKind.P1, 4), (ModelKind.P2, 3)]:
    r = oracle_systole(kind, g)
    print(f"{kind.value} g={g}: length {r.length:.10f} (formula {r.candidate:.10f}), "
          f"{r.multiplicity} systoles, {r.element_count} elements, {r.runtime:.1f} s")
