"""Irreducibility, indecomposability, the genus-2 dichotomy, and verdicts."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .abundancy import AbundancyReport, analyze, obstructions
from .errors import (
    ContractedEdgeError,
    DegreeRangeError,
    Genus2TypeError,
    PreconditionError,
    UnknownTemplateError,
)
from .linalg import (
    RationalMatrix,
    ZERO,
    kernel_basis,
    primitive_integer_vector,
    rank,
    span_dimension,
)
from .model import (
    SegmentDecomposition,
    TropicalCurve,
    core_neighbourhood,
    cycle_basis,
    degree_profile,
    genus,
    smoothing,
    subcurve_from_segments,
    validate,
)
from .transforms import AffineMap, apply_affine, genus2_normal_form, project_to_subspace

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class SearchLimits:
    """Caps for the exhaustive searches; exceeding one yields 'unknown'."""

    subset_cap: int = 1 << 20
    coeff_bound: int = 3


@dataclass(frozen=True)
class PlanarWitness:
    cycle_coefficients: tuple[int, ...]
    edge_ids: tuple[int, ...]
    normal: IntVec


def _signed_boxes(k: int, bound: int) -> Iterable[tuple[int, ...]]:
    """Nonzero integer vectors in the box, one per +- pair, by max-norm."""
    for radius in range(1, bound + 1):
        for combo in itertools.product(range(-radius, radius + 1), repeat=k):
            if max(abs(c) for c in combo) != radius:
                continue
            lead = next((c for c in combo if c != 0), 0)
            if lead < 0:
                continue
            yield combo


def is_planar_superabundant(curve: TropicalCurve,
                            limits: SearchLimits = SearchLimits()) -> PlanarWitness | None:
    """A cycle whose edge directions fit in a hyperplane, if one is found.

    Searches the basis cycles and their integer combinations with
    coefficients bounded by ``limits.coeff_bound``.  A miss is not a proof
    of absence beyond that box.
    """
    basis = cycle_basis(curve.graph)
    g = len(basis)
    if g == 0:
        return None
    r = curve.ambient_dim
    etas = [[basis.eta(i, e.id) for e in curve.graph.edges] for i in range(g)]
    for combo in _signed_boxes(g, limits.coeff_bound):
        support = []
        for e in curve.graph.edges:
            coeff = sum(combo[i] * etas[i][e.id] for i in range(g))
            if coeff != 0:
                support.append(e.id)
        if not support:
            continue
        dirs = [tuple(Fraction(c) for c in curve.directions[eid]) for eid in support]
        if span_dimension(dirs, r) <= r - 1:
            mat = RationalMatrix.from_rows(dirs, cols=r)
            normal = kernel_basis(mat)[0]
            return PlanarWitness(combo, tuple(support),
                                 tuple(int(c) for c in primitive_integer_vector(normal)))
    return None


@dataclass(frozen=True)
class IrreducibilityResult:
    status: str  # "yes" | "no" | "unknown"
    witness_segments: tuple[int, ...] | None = None
    witness_report: AbundancyReport | None = None


def is_irreducible(curve: TropicalCurve,
                   limits: SearchLimits = SearchLimits()) -> IrreducibilityResult:
    """Does no proper lower-genus subcurve carry the superabundancy?

    Enumerates proper subsets of the core's segments (superabundancy only
    sees segments), analyzes each induced subcurve of genus 1..g-1, and
    answers 'no' with the first superabundant witness.  Subsets are visited
    smallest first; the cap turns an exhausted budget into 'unknown'.
    """
    base = analyze(curve)
    if not base.superabundant:
        raise PreconditionError("irreducibility is defined for superabundant curves")
    core = core_neighbourhood(curve)
    decomp = smoothing(core)
    t = len(decomp.segments)
    g = genus(core.graph)
    visited = 0
    truncated = False
    for size in range(1, t):
        for subset in itertools.combinations(range(t), size):
            visited += 1
            if visited > limits.subset_cap:
                truncated = True
                break
            sub = subcurve_from_segments(core, decomp, subset)
            sub_g = genus(sub.graph)
            if not 1 <= sub_g <= g - 1:
                continue
            report = analyze(core_neighbourhood(sub))
            if report.superabundant:
                return IrreducibilityResult("no", tuple(subset), report)
        if truncated:
            break
    if truncated:
        return IrreducibilityResult("unknown")
    return IrreducibilityResult("yes")


@dataclass(frozen=True)
class IndecomposabilityResult:
    status: str  # "yes" | "no" | "unknown"
    witness_map: AffineMap | None = None
    witness_report: AbundancyReport | None = None


def _tuple_matrix_rows(lambdas: Sequence[IntVec]) -> list[tuple[Fraction, ...]]:
    return [tuple(Fraction(c) for c in lam) for lam in lambdas if any(c != 0 for c in lam)]


def _span_witness(curve: TropicalCurve,
                  lambdas: Sequence[IntVec]) -> tuple[AffineMap, AbundancyReport] | None:
    rows = _tuple_matrix_rows(lambdas)
    if not rows:
        return None
    from .linalg import row_space_basis

    basis_rows = row_space_basis(RationalMatrix.from_rows(rows, cols=curve.ambient_dim))
    projected, amap = project_to_subspace(curve, basis_rows)
    report = analyze(projected)
    if not report.superabundant:
        return None
    return amap, report


def is_indecomposable(curve: TropicalCurve,
                      limits: SearchLimits = SearchLimits()) -> IndecomposabilityResult:
    """Does every linear map to a lower dimension kill the superabundancy?

    Decided through the left kernel: the curve is decomposable exactly when
    some nonzero obstruction tuple has lambda-span of dimension < r.  With a
    one-dimensional left kernel this is a complete decision; otherwise
    integer combinations of the kernel basis (coefficients bounded by
    ``limits.coeff_bound``) and all coordinate projections are tried, and an
    exhausted search returns 'unknown'.
    """
    r = curve.ambient_dim
    tuples = obstructions(curve)
    if not tuples:
        raise PreconditionError("indecomposability is defined for superabundant curves")
    if len(tuples) == 1:
        tup = tuples[0]
        if tup.span_dim < r:
            found = _span_witness(curve, tup.lambdas)
            if found is None:
                raise PreconditionError("internal: span witness failed to verify")
            return IndecomposabilityResult("no", found[0], found[1])
        return IndecomposabilityResult("yes")

    g = len(tuples[0].lambdas)
    flats = [t.flat() for t in tuples]
    for combo in _signed_boxes(len(tuples), limits.coeff_bound):
        mixed = [sum(c * f[idx] for c, f in zip(combo, flats)) for idx in range(g * r)]
        lambdas = tuple(tuple(mixed[i * r + c] for c in range(r)) for i in range(g))
        rows = _tuple_matrix_rows(lambdas)
        if not rows:
            continue
        if span_dimension(rows, r) < r:
            found = _span_witness(curve, lambdas)
            if found is not None:
                return IndecomposabilityResult("no", found[0], found[1])
    # Coordinate projections as independent candidates.
    for size in range(1, r):
        for keep in itertools.combinations(range(r), size):
            rows = [[Fraction(1) if j == k else ZERO for j in range(r)] for k in keep]
            amap = AffineMap.linear(rows)
            try:
                projected, _ = apply_affine(curve, amap)
            except ContractedEdgeError:
                projected, amap = project_to_subspace(
                    curve, [tuple(row) for row in rows])
            report = analyze(projected)
            if report.superabundant:
                return IndecomposabilityResult("no", amap, report)
    return IndecomposabilityResult("unknown")


@dataclass(frozen=True)
class SuperabundanceClass:
    superabundant: bool
    planar: bool
    irreducible: str
    indecomposable: str
    planar_witness: PlanarWitness | None = None
    irreducible_witness: tuple[int, ...] | None = None
    decomposition_witness: AffineMap | None = None


def classify_superabundance(curve: TropicalCurve,
                            limits: SearchLimits = SearchLimits()) -> SuperabundanceClass:
    report = analyze(curve)
    planar = is_planar_superabundant(curve, limits)
    if not report.superabundant:
        return SuperabundanceClass(False, planar is not None, "yes", "yes", planar)
    irr = is_irreducible(curve, limits)
    ind = is_indecomposable(curve, limits)
    return SuperabundanceClass(
        True,
        planar is not None,
        irr.status,
        ind.status,
        planar,
        irr.witness_segments,
        ind.witness_map,
    )


@dataclass(frozen=True)
class Genus2Classification:
    variant: str  # "NotSuperabundant" | "Planar" | "CanonicalType"
    normal_form: tuple[TropicalCurve, AffineMap] | None = None
    planar_witness: PlanarWitness | None = None


def classify_genus2(curve: TropicalCurve,
                    limits: SearchLimits = SearchLimits()) -> Genus2Classification:
    """The genus-2 dichotomy: planar, or the theta normal form, or neither.

    A superabundant genus-2 curve is Planar when an obstruction tuple has
    linearly dependent covectors or some cycle sits in a hyperplane; in the
    remaining case the two covectors are independent and the curve maps onto
    the canonical configuration with segments annihilated by e1, e2, e1+e2.
    """
    if genus(curve.graph) != 2:
        raise PreconditionError("classify_genus2 expects a genus-2 curve")
    report = analyze(curve)
    if not report.superabundant:
        return Genus2Classification("NotSuperabundant")
    tuples = obstructions(curve)
    dependent = any(t.span_dim < 2 for t in tuples)
    planar = is_planar_superabundant(curve, limits)
    if dependent or planar is not None:
        return Genus2Classification("Planar", planar_witness=planar)
    transformed, amap = genus2_normal_form(curve)
    return Genus2Classification("CanonicalType", (transformed, amap))


def moduli_dimension(g: int, r: int, d: int) -> int:
    """Dimension 3g - 3 - rg + (r+1)d of the matching logarithmic moduli space.

    Only valid for d > 2g - 2 (below that the count is not claimed).
    """
    if d <= 2 * g - 2:
        raise DegreeRangeError(f"moduli dimension needs d > 2g-2, got d={d}, g={g}")
    return 3 * g - 3 - r * g + (r + 1) * d


@dataclass(frozen=True)
class RealizabilityVerdict:
    verdict: str  # GenericNonRealizable | Inconclusive | NotSuperabundant | OutOfScope
    def_dim: int
    moduli_dim: int | None
    degree: int | None
    reason: str
    template_match: str | None = None


def realizability_verdict(curve: TropicalCurve) -> RealizabilityVerdict:
    """Dimension-gap verdict: moduli dimension vs. deformation dimension.

    GenericNonRealizable requires a standard degree d > 2g-2, superabundancy,
    and moduli_dimension(g, r, d) strictly below the actual deformation
    dimension.  Everything else is OutOfScope, NotSuperabundant, or an
    honest Inconclusive.
    """
    report = analyze(curve)
    profile = degree_profile(curve)
    d = profile.standard_degree
    template = _template_annotation(curve)
    if d is None:
        return RealizabilityVerdict(
            "OutOfScope", report.actual_dim, None, None,
            "legs do not form a standard degree pattern", template)
    if not report.superabundant:
        return RealizabilityVerdict(
            "NotSuperabundant", report.actual_dim, None, d,
            f"excess 0 at degree {d}; the expected dimension is attained", template)
    g = report.g
    if d <= 2 * g - 2:
        return RealizabilityVerdict(
            "Inconclusive", report.actual_dim, None, d,
            f"degree {d} does not exceed 2g-2={2 * g - 2}; the dimension "
            f"comparison is unavailable and the deformation dimension "
            f"{report.actual_dim} may be fully realizable",
            template)
    m = moduli_dimension(g, report.r, d)
    if m < report.actual_dim:
        return RealizabilityVerdict(
            "GenericNonRealizable", report.actual_dim, m, d,
            f"moduli dimension {m} < deformation dimension {report.actual_dim}",
            template)
    return RealizabilityVerdict(
        "Inconclusive", report.actual_dim, m, d,
        f"moduli dimension {m} is not below deformation dimension {report.actual_dim}",
        template)


def _template_annotation(curve: TropicalCurve) -> str | None:
    for name in ("phi3", "phi4", "tuning_fork"):
        try:
            if core_isomorphic(curve, name) is not None:
                return name
        except (PreconditionError, UnknownTemplateError):
            continue
    return None


# -- combinatorial-type isomorphism of smoothed cores ---------------------


@dataclass(frozen=True)
class CoreMatch:
    vertex_map: dict
    segment_map: dict
    gl_match: bool = True


def _collapsed_runs(core: TropicalCurve, seg_edges: Sequence[tuple[int, int]]) -> tuple[IntVec, ...]:
    runs: list[IntVec] = []
    for eid, sgn in seg_edges:
        w = tuple(sgn * c for c in core.directions[eid])
        if not runs or runs[-1] != w:
            runs.append(w)
    return tuple(runs)


def _reverse_runs(runs: Sequence[IntVec]) -> tuple[IntVec, ...]:
    return tuple(tuple(-c for c in w) for w in reversed(runs))


def _canonical_signature(runs: tuple[IntVec, ...], closed: bool) -> tuple[IntVec, ...]:
    if not closed:
        return min(runs, _reverse_runs(runs))
    best = None
    for candidate in (runs, _reverse_runs(runs)):
        k = len(candidate)
        for shift in range(k):
            rot = candidate[shift:] + candidate[:shift]
            if best is None or rot < best:
                best = rot
    return best


@dataclass(frozen=True)
class _SmoothedView:
    vertices: tuple[str, ...]
    segments: tuple[tuple[str, str, tuple[IntVec, ...], bool], ...]  # start, end, runs, closed


def _smoothed_view(curve: TropicalCurve) -> _SmoothedView:
    core = core_neighbourhood(curve)
    if not core.graph.edges:
        raise PreconditionError("genus-0 curve has an empty core")
    decomp = smoothing(core)
    verts = sorted({s.start for s in decomp.segments} | {s.end for s in decomp.segments})
    segs = []
    for seg in decomp.segments:
        runs = _collapsed_runs(core, seg.edges)
        segs.append((seg.start, seg.end, runs, seg.closed))
    return _SmoothedView(tuple(verts), tuple(segs))


def core_isomorphic(curve: TropicalCurve, template_name: str) -> CoreMatch | None:
    """Match the smoothed core against a named built-in combinatorial type.

    The match is exact on directions: a bijection of smoothed vertices and
    segments so that each segment's collapsed direction sequence agrees with
    its image (up to traversing the segment backwards).  Subdividing edges
    never changes the answer.  ``gl_match`` records whether the identity
    already aligns the directions; it is True by construction here since
    matching is direction-exact.
    """
    from . import catalog

    template = catalog.core_template(template_name)
    return match_smoothed_cores(curve, template)


def match_smoothed_cores(curve: TropicalCurve, template: TropicalCurve) -> CoreMatch | None:
    try:
        a = _smoothed_view(template)
        b = _smoothed_view(curve)
    except PreconditionError:
        return None
    if len(a.vertices) != len(b.vertices) or len(a.segments) != len(b.segments):
        return None

    def degree_of(view: _SmoothedView, v: str) -> int:
        n = 0
        for s, e, _, closed in view.segments:
            if s == v:
                n += 1
            if e == v:
                n += 1
        return n

    sig_multiset_a = sorted(
        _canonical_signature(runs, closed) for _, _, runs, closed in a.segments)
    sig_multiset_b = sorted(
        _canonical_signature(runs, closed) for _, _, runs, closed in b.segments)
    if sig_multiset_a != sig_multiset_b:
        return None

    deg_a = {v: degree_of(a, v) for v in a.vertices}
    deg_b = {v: degree_of(b, v) for v in b.vertices}
    if sorted(deg_a.values()) != sorted(deg_b.values()):
        return None

    order = sorted(a.vertices, key=lambda v: -deg_a[v])
    assignment: dict = {}
    used: set = set()

    def segments_consistent(partial: dict) -> dict | None:
        remaining = list(range(len(b.segments)))
        seg_map: dict = {}
        for ai, (s, e, runs, closed) in enumerate(a.segments):
            if s not in partial or e not in partial:
                continue
            ms, me = partial[s], partial[e]
            found = None
            for bi in remaining:
                bs, be, bruns, bclosed = b.segments[bi]
                if bclosed != closed:
                    continue
                if closed:
                    if bs == ms and _canonical_signature(bruns, True) == \
                            _canonical_signature(runs, True):
                        found = bi
                        break
                else:
                    if bs == ms and be == me and bruns == runs:
                        found = bi
                        break
                    if bs == me and be == ms and _reverse_runs(bruns) == runs:
                        found = bi
                        break
            if found is None:
                return None
            seg_map[ai] = found
            remaining.remove(found)
        return seg_map

    def backtrack(i: int) -> dict | None:
        if i == len(order):
            return segments_consistent(assignment)
        v = order[i]
        for w in b.vertices:
            if w in used or deg_b[w] != deg_a[v]:
                continue
            assignment[v] = w
            used.add(w)
            # Only fully-check at the leaves; partial pruning by degree.
            result = backtrack(i + 1)
            if result is not None and len(result) == len(a.segments):
                return result
            del assignment[v]
            used.discard(w)
        return None

    seg_map = backtrack(0)
    if seg_map is None:
        return None
    return CoreMatch(dict(assignment), seg_map, True)
