"""Brute-force systole oracle from the side-pairing group.

The regular polygon is placed with its centre at ``i`` and one vertex
straight above it, exactly as in :mod:`cyclic_systole.construction`.  Each
side is glued to the opposite one by the hyperbolic translation along the
line through the two side midpoints.  Group elements are enumerated by a
breadth-first walk over the tiling, and the systole is read off as the
smallest translation length 2 arccosh(|tr|/2).

Elements are identified by where they send the base point: the group acts
freely, so ``g(i)`` determines ``g`` up to sign.  Images are stored as
hyperboloid coordinates (X, Y, Z) with Z = cosh d(i, g i), which are sign
invariant and stay well conditioned far from the base point.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np
from scipy.spatial import cKDTree

from .construction import PolygonFrame
from .halfplane import HPoint, MoebiusMap, angle_at, distance
from .models import ModelKind, angles, candidate_systole, metrics

__all__ = [
    "FuchsianError",
    "ConstructionError",
    "ResourceError",
    "InconclusiveError",
    "GeneratorSet",
    "GroupElement",
    "ElementBatch",
    "OracleResult",
    "DEFAULT_MAX_ELEMENTS",
    "build_generators",
    "vertex_classes",
    "cycle_relations",
    "enumerate_batch",
    "enumerate_short_elements",
    "default_bound",
    "oracle_systole",
    "injectivity_profile",
    "ball_embedding_probe",
]

DEFAULT_MAX_ELEMENTS = 10**7
ENDPOINT_TOL = 1e-8
LENGTH_TOL = 1e-7
_CHUNK = 200_000
# distinct tiles have centres at least 2 sinh|OD| > 2 apart in hyperboloid
# coordinates; anything closer than this is the same element
_SAME_POINT = 0.5


class FuchsianError(RuntimeError):
    pass


class ConstructionError(FuchsianError):
    """Generator matrices do not glue the polygon as intended."""


class ResourceError(FuchsianError):
    """Enumeration would exceed the configured element cap."""


class InconclusiveError(FuchsianError):
    """The displacement bound is too small to certify the result."""


def _key_coords(m: np.ndarray) -> np.ndarray:
    """Hyperboloid coordinates (X, Y, Z) of g(i) for a stack of SL2 matrices."""
    a, b, c, d = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]
    sa, sb, sc, sd = a * a, b * b, c * c, d * d
    return np.stack(
        [(sa + sb - sc - sd) / 2, a * c + b * d, (sa + sb + sc + sd) / 2], axis=1
    )


def _displacement(z: np.ndarray) -> np.ndarray:
    return np.arccosh(np.maximum(z, 1.0))


@dataclass(frozen=True)
class GroupElement:
    word: tuple[int, ...]
    matrix: MoebiusMap
    displacement: float
    trace_abs: float

    @property
    def is_hyperbolic(self) -> bool:
        return self.trace_abs > 2

    @property
    def translation_length(self) -> float:
        if not self.is_hyperbolic:
            return 0.0
        return 2 * math.acosh(self.trace_abs / 2)


@dataclass(frozen=True)
class GeneratorSet:
    kind: ModelKind
    genus: int
    gens: tuple[MoebiusMap, ...]
    circumradius: float
    sides: int
    frame: PolygonFrame = field(repr=False, compare=False)

    @property
    def arrays(self) -> np.ndarray:
        return np.stack([g.as_array() for g in self.gens])

    def inverse_index(self, s: int) -> int:
        return (s + self.sides // 2) % self.sides

    def word_matrix(self, word) -> MoebiusMap:
        m = MoebiusMap.identity()
        for s in word:
            m = m @ self.gens[s]
        return m.normalized()

    def conjugate(self, h: MoebiusMap) -> "GeneratorSet":
        """The same group seen through the isometry ``h``: g -> h g h^-1."""
        hi = h.inverse()
        gens = tuple((h @ g @ hi).normalized() for g in self.gens)
        return GeneratorSet(self.kind, self.genus, gens, self.circumradius, self.sides, self.frame)


def build_generators(kind: ModelKind, genus: int) -> GeneratorSet:
    """Side pairings of the regular 4g-gon (P1) or (4g+2)-gon (P2).

    ``gens[s]`` carries side ``s + n/2`` onto side ``s`` (side k joins
    vertices k and k+1); ``gens[s + n/2]`` is its inverse.
    """
    kind = ModelKind(kind)
    if kind is ModelKind.P2STAR:
        raise ValueError("P2STAR has the same surface group as P2; use P2")
    ap = angles(kind, genus)
    frame = PolygonFrame(ap)
    n = ap.sides
    shift = MoebiusMap.translation_up(2 * frame.m.od)
    gens = []
    for s in range(n):
        r = frame.rotation((2 * s + 1) * ap.a)
        gens.append((r @ shift @ r.inverse()).normalized())
    gs = GeneratorSet(kind, genus, tuple(gens), frame.m.oa, n, frame)
    worst = endpoint_residual(gs)
    if worst > ENDPOINT_TOL:
        raise ConstructionError(f"side endpoints miss by {worst:.3g}")
    return gs


def endpoint_residual(gs: GeneratorSet) -> float:
    """Largest hyperbolic miss when each generator maps the endpoints of
    side s + n/2 to those of side s (in reversed order)."""
    n, f = gs.sides, gs.frame
    worst = 0.0
    for s in range(n):
        g = gs.gens[s]
        src = (f.vertex(s + n // 2), f.vertex(s + n // 2 + 1))
        dst = (f.vertex(s + 1), f.vertex(s))
        for p, q in zip(src, dst):
            worst = max(worst, distance(g(p), q))
    return worst


def vertex_classes(gs: GeneratorSet) -> list[list[int]]:
    """Vertices identified by the gluing, found by applying the generator
    matrices to the vertex points and locating the images."""
    n, f = gs.sides, gs.frame
    pts = [f.vertex(k) for k in range(n)]

    def locate(p):
        dists = [distance(p, q) for q in pts]
        k = int(np.argmin(dists))
        if dists[k] > ENDPOINT_TOL:
            raise ConstructionError("vertex image is not a polygon vertex")
        return k

    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for s in range(n):
        g = gs.gens[s]
        for k in (s + n // 2, s + n // 2 + 1):
            k %= n
            parent[find(k)] = find(locate(g(pts[k])))
    classes: dict[int, list[int]] = {}
    for k in range(n):
        classes.setdefault(find(k), []).append(k)
    return sorted(classes.values())


def class_angle_sums(gs: GeneratorSet) -> list[float]:
    """Sum of the measured interior angles over each vertex class."""
    f = gs.frame
    out = []
    for cls in vertex_classes(gs):
        total = 0.0
        for k in cls:
            total += angle_at(f.vertex(k), f.vertex(k - 1), f.vertex(k + 1))
        out.append(total)
    return out


def cycle_relations(gs: GeneratorSet) -> list[tuple[tuple[int, ...], float]]:
    """Vertex-cycle words and their distance from +-I after normalisation.

    Walking round a vertex, the side leaving vertex k is carried to the side
    arriving at vertex k + n/2 + 1, so the cycle visits k, k + n/2 + 1, ...
    """
    n = gs.sides
    seen = set()
    out = []
    for start in range(n):
        if start in seen:
            continue
        word = []
        k = start
        while True:
            seen.add(k)
            word.append((k + n // 2) % n)  # generator carrying side k away
            k = (k + n // 2 + 1) % n
            if k == start:
                break
        m = gs.word_matrix(word).as_array()
        res = min(np.abs(m - np.eye(2)).max(), np.abs(m + np.eye(2)).max())
        out.append((tuple(word), float(res)))
    return out


@dataclass
class ElementBatch:
    """Enumerated elements in array form, canonically sorted by
    (displacement, X, Y).  Index 0 is the identity."""

    gs: GeneratorSet
    matrices: np.ndarray  # (N, 2, 2), determinant 1
    coords: np.ndarray  # (N, 3) hyperboloid coordinates of g(i)
    bound: float
    # search tree over every visited element (including pruned prefixes
    # beyond the bound): node -> prefix node and appended generator
    tree_index: np.ndarray = field(repr=False)
    tree_parent: np.ndarray = field(repr=False)
    tree_last: np.ndarray = field(repr=False)

    def __len__(self) -> int:
        return len(self.matrices)

    @property
    def displacement(self) -> np.ndarray:
        return _displacement(self.coords[:, 2])

    @property
    def trace_abs(self) -> np.ndarray:
        return np.abs(self.matrices[:, 0, 0] + self.matrices[:, 1, 1])

    def translation_lengths(self) -> np.ndarray:
        t = self.trace_abs
        out = np.zeros(len(t))
        hyp = t > 2
        out[hyp] = 2 * np.arccosh(t[hyp] / 2)
        return out

    def word(self, i: int) -> tuple[int, ...]:
        w = []
        j = int(self.tree_index[i])
        while self.tree_parent[j] >= 0:
            w.append(int(self.tree_last[j]))
            j = int(self.tree_parent[j])
        return tuple(reversed(w))

    def element(self, i: int) -> GroupElement:
        m = self.matrices[i]
        return GroupElement(
            word=self.word(i),
            matrix=MoebiusMap.from_array(m),
            displacement=float(self.displacement[i]),
            trace_abs=float(abs(m[0, 0] + m[1, 1])),
        )

    def __iter__(self) -> Iterator[GroupElement]:
        for i in range(len(self)):
            yield self.element(i)

    def locate(self, m: np.ndarray, tol: float = _SAME_POINT) -> np.ndarray:
        """Index of each matrix in the batch, -1 when absent."""
        tree = self._tree()
        d, idx = tree.query(_key_coords(m), distance_upper_bound=tol)
        idx = np.where(np.isfinite(d), idx, -1)
        return idx

    def _tree(self) -> cKDTree:
        if getattr(self, "_cached_tree", None) is None:
            self._cached_tree = cKDTree(self.coords)
        return self._cached_tree


def _dedupe_new(coords: np.ndarray, trees: list[cKDTree]) -> np.ndarray:
    """Mask of candidates that are neither already known (within ``trees``)
    nor repeats of an earlier candidate in the same batch."""
    keep = np.zeros(len(coords), dtype=bool)
    if not len(coords):
        return keep
    # cheap pass: one representative per unit grid cell
    cells = np.floor(coords[:, :2]).astype(np.int64)
    _, first = np.unique(cells, axis=0, return_index=True)
    keep[first] = True
    idx = np.flatnonzero(keep)
    for tree in trees:
        d, _ = tree.query(coords[idx], distance_upper_bound=_SAME_POINT)
        known = np.isfinite(d)
        keep[idx[known]] = False
        idx = idx[~known]
    # a point near a cell boundary can leave a twin in the next cell
    if len(idx) > 1:
        pairs = cKDTree(coords[idx]).query_pairs(_SAME_POINT, output_type="ndarray")
        if len(pairs):
            keep[idx[pairs.max(axis=1)]] = False
    return keep


def _products(block: np.ndarray, gens: np.ndarray, prune_z: float):
    """All products block[f] @ gens[g] moving i by at most arccosh(prune_z),
    with their (f, g) indices."""
    a, b = block[:, None, 0, 0], block[:, None, 0, 1]
    c, d = block[:, None, 1, 0], block[:, None, 1, 1]
    p, q, r, s = gens[None, :, 0, 0], gens[None, :, 0, 1], gens[None, :, 1, 0], gens[None, :, 1, 1]
    m11, m12 = a * p + b * r, a * q + b * s
    m21, m22 = c * p + d * r, c * q + d * s
    z = (m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22) / 2
    fi, gi = np.nonzero(z <= prune_z)
    out = np.empty((len(fi), 2, 2))
    out[:, 0, 0], out[:, 0, 1] = m11[fi, gi], m12[fi, gi]
    out[:, 1, 0], out[:, 1, 1] = m21[fi, gi], m22[fi, gi]
    return out, fi, gi


def enumerate_batch(gs: GeneratorSet, displacement_bound: float,
                    max_elements: int = DEFAULT_MAX_ELEMENTS,
                    prune_slack: float | None = None) -> ElementBatch:
    """All group elements g with d(i, g i) <= ``displacement_bound``.

    Words are grown on the right, which walks from a tile to a neighbouring
    tile.  A tile whose centre is within ``bound`` of i is reached by
    following the tiles met by the segment from i to that centre; every such
    tile has its centre within one circumradius of the segment, so prefixes
    are pruned at ``bound + circumradius``.

    A product p*g with p found at depth L can only coincide with an element
    found at depth L-1, L or L+1, so deduplication only looks that far back.
    """
    limit = 4 * gs.circumradius + 8
    if displacement_bound > limit:
        raise ResourceError(f"displacement bound {displacement_bound:.4g} above guard {limit:.4g}")
    if displacement_bound < 0:
        raise ValueError("displacement bound must be non-negative")
    slack = gs.circumradius if prune_slack is None else prune_slack
    prune_z = math.cosh(displacement_bound + slack) * (1 + 1e-12)
    gens = gs.arrays

    mats = [np.eye(2)[None]]
    coords = [_key_coords(mats[0])]
    parent = [np.array([-1])]
    last = [np.array([-1])]
    trees = [cKDTree(coords[0])]
    frontier_start = 0
    total = 1
    while len(mats[-1]):
        frontier = mats[-1]
        new_m, new_c, new_p, new_l, new_t = [], [], [], [], []
        for lo in range(0, len(frontier), _CHUNK):
            cand, fi, gi = _products(frontier[lo:lo + _CHUNK], gens, prune_z)
            cc = _key_coords(cand)
            keep = _dedupe_new(cc, trees[-2:] + new_t)
            if keep.any():
                new_m.append(cand[keep])
                new_c.append(cc[keep])
                new_p.append(frontier_start + lo + fi[keep])
                new_l.append(gi[keep])
                new_t.append(cKDTree(new_c[-1]))
            total += int(keep.sum())
            if total > max_elements:
                raise ResourceError(
                    f"enumeration passed the cap of {max_elements} elements; "
                    "raise max_elements or lower the genus/bound"
                )
        frontier_start += len(frontier)
        if not new_m:
            break
        mats.append(np.concatenate(new_m))
        coords.append(np.concatenate(new_c))
        parent.append(np.concatenate(new_p))
        last.append(np.concatenate(new_l))
        trees.append(cKDTree(coords[-1]))

    m = np.concatenate(mats)
    c = np.concatenate(coords)
    p = np.concatenate(parent)
    w = np.concatenate(last)
    # keep prefixes so words stay reconstructible, then restrict and sort
    inside = c[:, 2] <= math.cosh(displacement_bound) * (1 + 1e-12)
    inside[0] = True
    return _restrict(gs, m, c, p, w, inside, displacement_bound)


def _restrict(gs, m, c, p, w, mask, bound) -> ElementBatch:
    # canonical order: displacement, then X, then Y (rounded so that the
    # order does not depend on the last bits of the arithmetic)
    disp = np.round(_displacement(c[:, 2]), 9)
    order = np.lexsort((np.round(c[:, 1], 6), np.round(c[:, 0], 6), disp))
    order = order[mask[order]]
    return ElementBatch(gs, m[order], c[order], bound, order, p, w)


def enumerate_short_elements(gs: GeneratorSet, displacement_bound: float,
                             max_elements: int = DEFAULT_MAX_ELEMENTS) -> list[GroupElement]:
    return list(enumerate_batch(gs, displacement_bound, max_elements))


def default_bound(kind: ModelKind, genus: int, slack: float = 0.5) -> float:
    """Smallest bound that certifies the systole, plus ``slack``.

    A shortest geodesic has a lift whose axis meets the polygon, and the
    corresponding element moves the centre by at most its translation length
    plus twice the circumradius.
    """
    return candidate_systole(kind, genus) + 2 * metrics(angles(kind, genus)).oa + slack


@dataclass(frozen=True)
class OracleResult:
    length: float
    multiplicity: int
    candidate: float
    element_count: int
    minimal_elements: int
    axes: int
    bound: float
    runtime: float

    def __iter__(self):
        # unpacks as (length, multiplicity)
        yield self.length
        yield self.multiplicity


class _UnionFind:
    def __init__(self, n: int):
        self.parent = np.arange(n)

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)

    def groups(self) -> int:
        return len({self.find(i) for i in range(len(self.parent))})


def count_geodesics(batch: ElementBatch, members: np.ndarray) -> int:
    """Number of unoriented closed geodesics represented by ``members``.

    Two members are merged when one is the inverse of the other or when one
    is the conjugate of the other by a generator.  Every lift of a geodesic
    whose axis crosses the polygon is in the batch (that is what the bound
    guarantees), and successive crossings are related by the side pairing,
    so each geodesic ends up as exactly one group.
    """
    sub = batch.matrices[members]
    sub_coords = _key_coords(sub)
    tree = cKDTree(sub_coords)
    uf = _UnionFind(len(members))

    def link(images: np.ndarray):
        d, j = tree.query(_key_coords(images), distance_upper_bound=_SAME_POINT)
        for i in np.flatnonzero(np.isfinite(d)):
            uf.union(int(i), int(j[i]))

    inv = np.empty_like(sub)
    inv[:, 0, 0], inv[:, 1, 1] = sub[:, 1, 1], sub[:, 0, 0]
    inv[:, 0, 1], inv[:, 1, 0] = -sub[:, 0, 1], -sub[:, 1, 0]
    link(inv)
    gens = batch.gs.arrays
    for s, g in enumerate(gens):
        gi = gens[batch.gs.inverse_index(s)]
        link(np.einsum("ij,njk,kl->nil", gi, sub, g))
    return uf.groups()


def distinct_axes(batch: ElementBatch, members: np.ndarray) -> int:
    """Number of distinct axes among ``members`` (lifts, not geodesics)."""
    keys = set()
    for m in batch.matrices[members]:
        fp = MoebiusMap.from_array(m).fixed_points()
        keys.add(tuple(round(x / LENGTH_TOL) if math.isfinite(x) else x for x in fp))
    return len(keys)


def oracle_systole(kind: ModelKind, genus: int, displacement_bound: float | None = None,
                   max_elements: int = DEFAULT_MAX_ELEMENTS, slack: float = 0.5) -> OracleResult:
    """Shortest translation length in the surface group, and the number of
    closed geodesics of that length.

    A shortest element is automatically primitive (a proper power is at
    least twice as long), so no power reduction is needed.
    """
    t0 = time.perf_counter()
    kind = ModelKind(kind)
    gs = build_generators(kind, genus)
    need = candidate_systole(kind, genus) + 2 * gs.circumradius
    bound = default_bound(kind, genus, slack) if displacement_bound is None else displacement_bound
    if bound < need:
        raise InconclusiveError(
            f"bound {bound:.6g} below {need:.6g} (systole candidate + 2 circumradius)"
        )
    batch = enumerate_batch(gs, bound, max_elements)
    lengths = batch.translation_lengths()
    lengths[0] = np.inf
    best = float(lengths.min())
    members = np.flatnonzero(lengths <= best + LENGTH_TOL)
    return OracleResult(
        length=best,
        multiplicity=count_geodesics(batch, members),
        candidate=candidate_systole(kind, genus),
        element_count=len(batch),
        minimal_elements=len(members),
        axes=distinct_axes(batch, members),
        bound=bound,
        runtime=time.perf_counter() - t0,
    )


def _points_on_segment(p: HPoint, q: HPoint, samples: int) -> list[HPoint]:
    from .halfplane import point_along

    d = distance(p, q)
    return [point_along(p, q, d * i / (samples - 1)) for i in range(samples)]


def injectivity_profile(gs: GeneratorSet, points: list[HPoint], batch: ElementBatch) -> np.ndarray:
    """min over non-trivial g in ``batch`` of d(x, g x) / 2, for each x."""
    m = batch.matrices[1:]
    a, b, c, d = m[:, 0, 0], m[:, 0, 1], m[:, 1, 0], m[:, 1, 1]
    out = []
    for x in points:
        z = x.z
        gz = (a * z + b) / (c * z + d)
        ch = 1 + np.abs(gz - z) ** 2 / (2 * x.im * gz.imag)
        out.append(float(np.arccosh(ch.min())) / 2)
    return np.array(out)


def ball_embedding_probe(kind: ModelKind, genus: int, samples: int = 33,
                         max_elements: int = DEFAULT_MAX_ELEMENTS,
                         include_oa: bool = False) -> float:
    """min over sample points x on OH of half the shortest loop through x.

    Any element moving a point x of OA by at most 2h moves the centre by at
    most 2h + 2|Ox|, so the enumeration bound 2h + 2|OA| covers every x
    sampled here.
    """
    if samples < 2:
        raise ValueError("need at least two samples")
    gs, batch, pts = probe_setup(kind, genus, samples, max_elements, include_oa)
    return float(injectivity_profile(gs, pts, batch).min())


def probe_setup(kind: ModelKind, genus: int, samples: int = 33,
                max_elements: int = DEFAULT_MAX_ELEMENTS, include_oa: bool = False):
    """Generators, the enumerated ball of elements and the sample points
    used by the probe (O to H, optionally continued to A)."""
    gs = build_generators(kind, genus)
    f = gs.frame
    h = f.m.de
    bound = 2 * h + 2 * f.m.oa + 0.1
    batch = enumerate_batch(gs, bound, max_elements)
    pts = _points_on_segment(f.O, f.H, samples)
    if include_oa:
        pts += _points_on_segment(f.H, f.A, samples)[1:]
    return gs, batch, pts
