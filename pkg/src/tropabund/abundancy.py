"""The abundancy matrix, deformation dimensions, and obstruction covectors."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import PreconditionError
from .linalg import (
    RationalMatrix,
    Vector,
    ZERO,
    dot,
    left_kernel_basis,
    primitive_integer_vector,
    rank,
    span_dimension,
    strictly_positive_kernel_point,
)
from .model import (
    CycleBasis,
    SegmentDecomposition,
    TropicalCurve,
    core_neighbourhood,
    cycle_basis,
    genus,
    smoothing,
)

IntVec = tuple[int, ...]


def abundancy_matrix(curve: TropicalCurve, basis: CycleBasis | None = None) -> RationalMatrix:
    """The (g*r) x b matrix with block row i listing eta_{i,e} * w_e.

    Columns follow edge input order; rows are grouped by cycle, one block of
    r coordinate rows per basis cycle.  Edges outside every cycle give zero
    columns.  A genus-0 curve yields the empty 0 x b matrix.
    """
    if basis is None:
        basis = cycle_basis(curve.graph)
    r = curve.ambient_dim
    b = len(curve.graph.edges)
    rows = []
    for i in range(len(basis)):
        eta = [basis.eta(i, e.id) for e in curve.graph.edges]
        for c in range(r):
            rows.append(tuple(Fraction(eta[j] * curve.directions[j][c]) for j in range(b)))
    return RationalMatrix(len(rows), b, tuple(rows))


@dataclass(frozen=True)
class AbundancyReport:
    b: int
    n: int
    g: int
    r: int
    rank_K: int
    actual_dim: int
    expected_dim: int
    excess: int
    superabundant: bool
    positive_witness: tuple[Fraction, ...] | None
    cone_degenerate: bool

    @property
    def trivalent_identity_holds(self) -> bool:
        """b = n + 3g - 3, meaningful for trivalent curves only."""
        return self.b == self.n + 3 * self.g - 3


def analyze(curve: TropicalCurve, basis: CycleBasis | None = None) -> AbundancyReport:
    """Dimension bookkeeping for a curve or declared subcurve.

    actual_dim is b - rank(K), the dimension of the cone of length
    assignments; expected_dim is b - r*g; the excess r*g - rank(K) is
    positive exactly when the curve is superabundant.  The positive witness
    is the curve's own length vector when it lies in ker K (it always does
    for consistent input), otherwise an exact feasibility search; if no
    strictly positive kernel point exists the report is flagged degenerate.
    """
    if basis is None:
        basis = cycle_basis(curve.graph)
    K = abundancy_matrix(curve, basis)
    g = len(basis)
    r = curve.ambient_dim
    b = len(curve.graph.edges)
    rk = rank(K)
    actual = b - rk
    expected = b - r * g
    excess = r * g - rk
    witness: tuple[Fraction, ...] | None = None
    degenerate = False
    if b:
        own = tuple(curve.lengths)
        if all(v == 0 for v in K.mat_vec(own)) and all(l > 0 for l in own):
            witness = own
        else:
            witness = strictly_positive_kernel_point(K)
            degenerate = witness is None
    return AbundancyReport(
        b=b,
        n=len(curve.graph.legs),
        g=g,
        r=r,
        rank_K=rk,
        actual_dim=actual,
        expected_dim=expected,
        excess=excess,
        superabundant=excess > 0,
        positive_witness=witness,
        cone_degenerate=degenerate,
    )


@dataclass(frozen=True)
class ObstructionTuple:
    """One left-kernel covector of K, reshaped into g ambient covectors.

    The hyperplane normal of segment j is the signed sum of the lambdas over
    the cycles through that segment; every edge direction of the segment is
    annihilated by it.
    """

    lambdas: tuple[IntVec, ...]
    segment_normals: tuple[IntVec, ...]
    span_dim: int

    def flat(self) -> tuple[int, ...]:
        return tuple(c for lam in self.lambdas for c in lam)


def _core_context(curve: TropicalCurve) -> tuple[TropicalCurve, CycleBasis, SegmentDecomposition]:
    core = core_neighbourhood(curve)
    if not core.graph.edges:
        raise PreconditionError("curve has genus 0; no obstruction context")
    basis = cycle_basis(core.graph)
    decomp = smoothing(core, basis)
    return core, basis, decomp


def _normals_for(lambdas: Sequence[Sequence[int]], decomp: SegmentDecomposition,
                 r: int) -> tuple[IntVec, ...]:
    normals = []
    for j in range(len(decomp.segments)):
        nu = [0] * r
        for i, lam in enumerate(lambdas):
            s = decomp.eta[i][j]
            if s:
                for c in range(r):
                    nu[c] += s * lam[c]
        normals.append(tuple(nu))
    return tuple(normals)


def obstructions(curve: TropicalCurve) -> list[ObstructionTuple]:
    """All obstruction tuples of the curve, one per left-kernel basis vector.

    Computed on the core neighbourhood with its deterministic cycle basis,
    which changes nothing: bridge columns of K are zero, so both matrices
    have the same left kernel up to the choice of basis.  Tuples are
    normalized so the concatenated vector is integral and primitive.
    Returns the empty list exactly when the curve is not superabundant.
    """
    if genus(curve.graph) == 0:
        return []
    core, basis, decomp = _core_context(curve)
    K = abundancy_matrix(core, basis)
    r = core.ambient_dim
    g = len(basis)
    tuples = []
    for y in left_kernel_basis(K):
        flat = primitive_integer_vector(y)
        lambdas = tuple(
            tuple(int(flat[i * r + c]) for c in range(r)) for i in range(g)
        )
        normals = _normals_for(lambdas, decomp, r)
        span = span_dimension([tuple(Fraction(c) for c in lam) for lam in lambdas], r)
        tup = ObstructionTuple(lambdas, normals, span)
        _check_normals(core, decomp, tup)
        tuples.append(tup)
    return tuples


def _check_normals(core: TropicalCurve, decomp: SegmentDecomposition,
                   tup: ObstructionTuple) -> None:
    for j, seg in enumerate(decomp.segments):
        nu = tup.segment_normals[j]
        for col in decomp.blocks[j]:
            if dot([Fraction(c) for c in nu], [Fraction(c) for c in col]) != 0:
                raise PreconditionError(
                    f"internal: segment {j} not annihilated by its normal")


def verify_obstruction(curve: TropicalCurve, tup: ObstructionTuple) -> bool:
    """Exact check that a tuple witnesses superabundancy for this curve.

    True iff the tuple is nonzero, its concatenation lies in the left kernel
    of K, and its segment normals annihilate every edge of their segment.
    """
    try:
        core, basis, decomp = _core_context(curve)
    except PreconditionError:
        return False
    r = core.ambient_dim
    g = len(basis)
    if len(tup.lambdas) != g or any(len(lam) != r for lam in tup.lambdas):
        return False
    flat = [Fraction(c) for c in tup.flat()]
    if all(c == 0 for c in flat):
        return False
    K = abundancy_matrix(core, basis)
    if any(v != 0 for v in K.vec_mat(flat)):
        return False
    normals = _normals_for(tup.lambdas, decomp, r)
    if normals != tup.segment_normals:
        return False
    for j in range(len(decomp.segments)):
        nu = [Fraction(c) for c in normals[j]]
        for col in decomp.blocks[j]:
            if dot(nu, [Fraction(c) for c in col]) != 0:
                return False
    return True
