"""Rational affine maps on curves, rational dilation, obstruction projection."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .abundancy import obstructions
from .errors import ContractedEdgeError, Genus2TypeError, PreconditionError, StructuralError
from .linalg import (
    RationalMatrix,
    ZERO,
    dot,
    invert,
    primitive_integer_vector,
    rational_content,
    row_space_basis,
    span_dimension,
)
from .model import Edge, Graph, TropicalCurve, core_neighbourhood, cycle_basis, genus, smoothing

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class AffineMap:
    """x -> Qx + b with rational Q (s x r) and offset b (length s)."""

    matrix: RationalMatrix
    offset: tuple[Fraction, ...]

    @staticmethod
    def linear(rows: Sequence[Sequence], source_dim: int | None = None) -> "AffineMap":
        m = RationalMatrix.from_rows(rows, cols=source_dim)
        return AffineMap(m, tuple(ZERO for _ in range(m.rows)))

    @staticmethod
    def identity(r: int) -> "AffineMap":
        rows = [[Fraction(1) if i == j else ZERO for j in range(r)] for i in range(r)]
        return AffineMap.linear(rows)

    @property
    def source_dim(self) -> int:
        return self.matrix.cols

    @property
    def target_dim(self) -> int:
        return self.matrix.rows

    def apply_point(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        img = self.matrix.mat_vec([Fraction(v) for v in x])
        return tuple(a + b for a, b in zip(img, self.offset))

    def compose(self, inner: "AffineMap") -> "AffineMap":
        """self after inner: x -> self(inner(x))."""
        m = self.matrix.mat_mul(inner.matrix)
        off = self.matrix.mat_vec(inner.offset)
        return AffineMap(m, tuple(a + b for a, b in zip(off, self.offset)))


@dataclass(frozen=True)
class DilationRecord:
    """Per-edge length factor and the integral direction after rescaling.

    One global rational 1/m is applied to every edge length; m is the
    minimal positive rational making all image directions integral at once.
    A single factor (rather than per-edge primitives) is what keeps the
    balancing condition exact at every vertex.
    """

    length_factors: tuple[Fraction, ...]
    new_directions: tuple[IntVec, ...]
    scale: Fraction


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _global_integral_scale(vectors: list[tuple[Fraction, ...]]) -> Fraction:
    """Minimal positive rational m with m*v integral for every v given."""
    den = 1
    num_gcd = 0
    for v in vectors:
        for x in v:
            if x == 0:
                continue
            den = _lcm(den, x.denominator)
            num_gcd = gcd(num_gcd, abs(x.numerator))
    if num_gcd == 0:
        raise StructuralError("cannot scale an all-zero direction family")
    # For v with entries p/q in lowest terms, m*v integral for all v iff m is
    # a multiple of lcm(q)/gcd(p).
    return Fraction(den, num_gcd)


def apply_affine(curve: TropicalCurve, amap: AffineMap) -> tuple[TropicalCurve, DilationRecord]:
    """Push a curve through x -> Qx + b, then rationally dilate to integrality.

    Every displacement is preserved exactly: the new direction of edge e is
    m*Q*w_e and its length is l_e/m for one global m, so l'w' = l*Qw.  An
    edge or leg with Q*w = 0 is refused (contraction changes the genus).
    """
    if amap.source_dim != curve.ambient_dim:
        raise StructuralError("map source dimension does not match the curve")
    q = amap.matrix
    images: list[tuple[Fraction, ...]] = []
    for e, w in zip(curve.graph.edges, curve.directions):
        img = q.mat_vec([Fraction(c) for c in w])
        if all(x == 0 for x in img):
            raise ContractedEdgeError(f"edge {e.id} contracted by the map")
        images.append(img)
    leg_images: list[tuple[Fraction, ...]] = []
    for leg, w in zip(curve.graph.legs, curve.leg_directions):
        img = q.mat_vec([Fraction(c) for c in w])
        if all(x == 0 for x in img):
            raise ContractedEdgeError(f"leg {leg.id} contracted by the map")
        leg_images.append(img)
    scale = _global_integral_scale(images + leg_images)
    new_dirs = tuple(tuple(int(x * scale) for x in img) for img in images)
    new_leg_dirs = tuple(tuple(int(x * scale) for x in img) for img in leg_images)
    factor = 1 / scale
    new_lengths = tuple(l * factor for l in curve.lengths)
    base_v = curve.base_vertex
    base_p = None
    if curve.base_position is not None:
        base_p = amap.apply_point(curve.base_position)
    new_curve = TropicalCurve(
        amap.target_dim, curve.graph, new_dirs, new_lengths, new_leg_dirs, base_v, base_p)
    record = DilationRecord(tuple(factor for _ in curve.lengths), new_dirs, scale)
    return new_curve, record


def project_to_subspace(curve: TropicalCurve, basis_rows: Sequence[Sequence[Fraction]],
                        ) -> tuple[TropicalCurve, AffineMap]:
    """Orthogonal projection onto span(basis_rows), in coordinates of that basis.

    The map is (B B^T)^{-1} B, a rational matrix: no square roots are
    needed to express the orthogonal projection in the chosen basis.
    Edges whose direction is orthogonal to the subspace are contracted:
    their endpoints are merged, which preserves the genus and balancing.
    Legs with zero image are dropped.
    """
    B = RationalMatrix.from_rows(basis_rows, cols=curve.ambient_dim)
    gram = B.mat_mul(B.transpose())
    proj = invert(gram).mat_mul(B)
    amap = AffineMap(proj, tuple(ZERO for _ in range(proj.rows)))

    images = [proj.mat_vec([Fraction(c) for c in w]) for w in curve.directions]
    contracted = [i for i, img in enumerate(images) if all(x == 0 for x in img)]
    if not contracted:
        leg_zero = [proj.mat_vec([Fraction(c) for c in w]) for w in curve.leg_directions]
        if not any(all(x == 0 for x in img) for img in leg_zero):
            out, _ = apply_affine(curve, amap)
            return out, amap

    # Merge endpoints of contracted edges (union-find), keep the rest.
    parent = {v: v for v in curve.graph.vertices}

    def find(v: str) -> str:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for i in contracted:
        e = curve.graph.edges[i]
        ra, rb = find(e.tail), find(e.head)
        if ra != rb:
            # Deterministic: keep the representative that appears first.
            order = {v: k for k, v in enumerate(curve.graph.vertices)}
            if order[rb] < order[ra]:
                ra, rb = rb, ra
            parent[rb] = ra

    vertices = []
    seen = set()
    for v in curve.graph.vertices:
        root = find(v)
        if root not in seen:
            seen.add(root)
            vertices.append(root)
    surviving = [i for i in range(len(curve.graph.edges)) if i not in set(contracted)]
    pairs = [(find(curve.graph.edges[i].tail), find(curve.graph.edges[i].head))
             for i in surviving]
    image_dirs = [images[i] for i in surviving]
    keep_leg_idx = []
    leg_imgs = []
    for k, w in enumerate(curve.leg_directions):
        img = proj.mat_vec([Fraction(c) for c in w])
        if any(x != 0 for x in img):
            keep_leg_idx.append(k)
            leg_imgs.append(img)
    scale = _global_integral_scale(image_dirs + leg_imgs)
    dirs = tuple(tuple(int(x * scale) for x in img) for img in image_dirs)
    leg_dirs = tuple(tuple(int(x * scale) for x in img) for img in leg_imgs)
    lens = tuple(curve.lengths[i] / scale for i in surviving)
    leg_vs = [find(curve.graph.legs[k].vertex) for k in keep_leg_idx]
    graph = Graph.build(vertices, pairs, leg_vs)
    base_v = find(curve.base_vertex) if curve.base_vertex is not None else None
    base_p = amap.apply_point(curve.base_position) if curve.base_position is not None else None
    out = TropicalCurve(proj.rows, graph, dirs, lens, leg_dirs, base_v, base_p)
    return out, amap


def obstruction_span(curve: TropicalCurve) -> list[tuple[Fraction, ...]]:
    """Primitive basis of the span of all lambda covectors of the curve."""
    tuples = obstructions(curve)
    rows = [tuple(Fraction(c) for c in lam) for t in tuples for lam in t.lambdas
            if any(c != 0 for c in lam)]
    if not rows:
        return []
    return [tuple(v) for v in row_space_basis(
        RationalMatrix.from_rows(rows, cols=curve.ambient_dim))]


def project_onto_obstruction(curve: TropicalCurve) -> tuple[TropicalCurve, AffineMap]:
    """Project onto the span of the obstruction covectors (dimension <= g).

    Requires a superabundant curve; the image is again superabundant.  When
    the span is full the projection is invertible and the ambient dimension
    is unchanged.
    """
    rows = obstruction_span(curve)
    if not rows:
        raise PreconditionError("curve is not superabundant")
    return project_to_subspace(curve, rows)


def genus2_normal_form(curve: TropicalCurve) -> tuple[TropicalCurve, AffineMap]:
    """Send the three theta-segment normals to e1, e2 and e1+e2.

    Only defined for genus-2 curves of the non-planar type: the obstruction
    tuple's two covectors must be linearly independent and the smoothed core
    must be the theta graph.  The returned map has rows a, b chosen among
    the signed segment normals so that the third normal is a + b; the three
    transformed segments then lie in {x=0}, {y=0} and the diagonal line.
    """
    if genus(curve.graph) != 2:
        raise Genus2TypeError("normal form is defined for genus-2 curves")
    tuples = obstructions(curve)
    if not tuples:
        raise Genus2TypeError("curve is not superabundant; use classify_genus2")
    tup = tuples[0]
    lam_rows = [tuple(Fraction(c) for c in lam) for lam in tup.lambdas]
    if span_dimension(lam_rows, curve.ambient_dim) < 2:
        raise Genus2TypeError("planar-type superabundancy; use classify_genus2")
    core = core_neighbourhood(curve)
    decomp = smoothing(core, cycle_basis(core.graph))
    if len(decomp.segments) != 3:
        raise Genus2TypeError("smoothed core is not the theta graph")
    normals = [tuple(Fraction(c) for c in nu) for nu in tup.segment_normals]
    if any(all(c == 0 for c in nu) for nu in normals):
        raise Genus2TypeError("degenerate segment normal; use classify_genus2")

    for j1, j2, j3 in ((0, 1, 2), (0, 2, 1), (1, 2, 0), (1, 0, 2), (2, 0, 1), (2, 1, 0)):
        for s1 in (1, -1):
            for s2 in (1, -1):
                a = tuple(s1 * c for c in normals[j1])
                b = tuple(s2 * c for c in normals[j2])
                ab = tuple(x + y for x, y in zip(a, b))
                if all(c == 0 for c in ab):
                    continue
                if _parallel(ab, normals[j3]):
                    amap = AffineMap.linear([a, b], curve.ambient_dim)
                    try:
                        out, _ = apply_affine(curve, amap)
                    except ContractedEdgeError:
                        continue
                    return out, amap
    raise Genus2TypeError("segment normals do not form the canonical pattern")


def _parallel(a: Sequence[Fraction], b: Sequence[Fraction]) -> bool:
    pa = primitive_integer_vector(a)
    pb = primitive_integer_vector(b)
    return pa == pb


def displacement(curve: TropicalCurve, edge_id: int) -> tuple[Fraction, ...]:
    w = curve.directions[edge_id]
    l = curve.lengths[edge_id]
    return tuple(l * c for c in w)
