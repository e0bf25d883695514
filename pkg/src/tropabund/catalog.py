"""Built-in curves, the standard tropical plane test, and verdict fixtures.

Coordinates of the genus-3 plane curve deserve a note.  The published table
for it lists eleven letters with one duplicated position and leaves the
configuration unbalanced at one trivalent vertex, so it cannot be used
verbatim.  The shipped coordinates are the unique repair determined by the
surrounding constraints: twelve core edges forming a once-subdivided K4,
every edge inside the standard tropical plane, balancing at exactly the
four trivalent vertices, and deformation dimensions 4 (actual) versus 3
(expected).  Eight of the ten vertices keep their tabulated positions; the
two remaining bend points are then forced.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import PreconditionError, StructuralError, UnknownTemplateError
from .model import Graph, TropicalCurve, core_neighbourhood

IntVec = tuple[int, ...]

F = Fraction


@dataclass(frozen=True)
class CurveTemplate:
    name: str
    curve: TropicalCurve
    expected: Mapping[str, object]


# -- generic completion of a skeleton to a standard-degree curve ----------


def _ray_directions(r: int) -> list[IntVec]:
    rays = [tuple(1 if i == j else 0 for i in range(r)) for j in range(r)]
    rays.append(tuple(-1 for _ in range(r)))
    return rays


def _deficit_legs(deficit: IntVec, extra_quintuples: int) -> list[IntVec]:
    """Unit ray legs summing to the deficit, plus full zero-sum ray sets."""
    r = len(deficit)
    alpha = max(0, -min(deficit))
    rays = _ray_directions(r)
    legs: list[IntVec] = []
    for _ in range(alpha + extra_quintuples):
        legs.append(rays[-1])
    for i in range(r):
        for _ in range(deficit[i] + alpha + extra_quintuples):
            legs.append(rays[i])
    return legs


def _vec_add(a: Sequence[int], b: Sequence[int]) -> IntVec:
    return tuple(x + y for x, y in zip(a, b))


def _vec_sub(a: Sequence[int], b: Sequence[int]) -> IntVec:
    return tuple(x - y for x, y in zip(a, b))


def standard_degree_completion(skeleton: TropicalCurve,
                               pads: Mapping[str, int] | None = None,
                               prefix: str = "t") -> TropicalCurve:
    """Attach trivalent leg trees so every vertex balances with unit ray legs.

    Each unbalanced vertex receives a bridge into a caterpillar whose leaves
    are unit legs in the coordinate-ray directions (and the anti-diagonal),
    summing to the vertex deficit.  ``pads`` adds that many full zero-sum
    ray sets at a vertex, raising every class count by the same amount.
    """
    pads = dict(pads or {})
    vertices = list(skeleton.graph.vertices)
    pairs = [(e.tail, e.head) for e in skeleton.graph.edges]
    dirs = list(skeleton.directions)
    lens = list(skeleton.lengths)
    legs = [(l.vertex, w) for l, w in zip(skeleton.graph.legs, skeleton.leg_directions)]
    counter = 0
    for v in list(skeleton.graph.vertices):
        deficit = skeleton.vertex_deficit(v)
        quintuples = pads.pop(v, 0)
        if all(c == 0 for c in deficit) and quintuples == 0:
            continue
        leaf_legs = _deficit_legs(deficit, quintuples)
        if not leaf_legs:
            continue
        if len(leaf_legs) == 1:
            legs.append((v, leaf_legs[0]))
            continue
        # Caterpillar: v -> k1 -> k2 -> ...; each interior node drops one leg.
        remaining = list(leaf_legs)
        at = v
        while len(remaining) > 2:
            total = remaining[0]
            for w in remaining[1:]:
                total = _vec_add(total, w)
            # Choose a leg whose removal keeps the ongoing edge nonzero.
            pick = None
            for idx, cand in enumerate(remaining):
                rest = _vec_sub(total, cand)
                if any(c != 0 for c in rest):
                    pick = idx
                    break
            if pick is None:
                raise StructuralError("cannot realize deficit as a caterpillar")
            node = f"{prefix}{counter}"
            counter += 1
            vertices.append(node)
            pairs.append((at, node))
            dirs.append(total)
            lens.append(F(1))
            legs.append((node, remaining.pop(pick)))
            at = node
        total = _vec_add(remaining[0], remaining[1])
        if any(c != 0 for c in total):
            node = f"{prefix}{counter}"
            counter += 1
            vertices.append(node)
            pairs.append((at, node))
            dirs.append(total)
            lens.append(F(1))
            legs.append((node, remaining[0]))
            legs.append((node, remaining[1]))
        else:
            # The last two legs cancel; hang them one step apart.
            node = f"{prefix}{counter}"
            counter += 1
            node2 = f"{prefix}{counter}"
            counter += 1
            vertices.extend([node, node2])
            pairs.append((at, node))
            dirs.append(remaining[0])
            lens.append(F(1))
            legs.append((node, remaining[0]))
            pairs.append((node, node2))
            dirs.append(tuple(-c for c in remaining[1]))
            lens.append(F(1))
            legs.append((node2, remaining[1]))
    if pads:
        raise PreconditionError(f"pad vertices not found: {sorted(pads)}")
    graph = Graph.build(vertices, pairs, [v for v, _ in legs])
    return TropicalCurve(skeleton.ambient_dim, graph, tuple(dirs), tuple(lens),
                         tuple(w for _, w in legs),
                         skeleton.base_vertex, skeleton.base_position)


# -- the individual built-ins ---------------------------------------------


def _tuning_fork_r2() -> TropicalCurve:
    return TropicalCurve.build(
        2,
        ["u", "v", "A", "B", "C"],
        [
            ("u", "A", (1, 0), 1),
            ("v", "A", (1, 0), 1),
            ("u", "B", (0, 1), 1),
            ("v", "B", (0, 1), 1),
            ("u", "C", (-1, -1), 1),
            ("v", "C", (-1, -1), 1),
        ],
        [("A", (2, 0)), ("B", (0, 2)), ("C", (-2, -2))],
        base=("u", (0, 0)),
    )


def _tuning_fork_r3() -> TropicalCurve:
    return TropicalCurve.build(
        3,
        ["u", "v", "a1", "A", "b1", "B", "c1", "c2", "C"],
        [
            ("u", "a1", (1, 0, 1), 1),
            ("a1", "A", (1, 0, -1), 1),
            ("v", "A", (2, 0, -1), 1),
            ("u", "b1", (0, 1, 1), 1),
            ("b1", "B", (0, 1, -1), 1),
            ("v", "B", (0, 2, -1), 1),
            ("u", "c1", (-1, -1, -2), 1),
            ("c1", "C", (-1, -1, 2), 1),
            ("v", "c2", (-2, -2, 2), 1),
            ("c2", "C", (0, 0, -1), 3),
        ],
        [
            ("a1", (0, 0, 2)),
            ("b1", (0, 0, 2)),
            ("c1", (0, 0, -4)),
            ("c2", (-2, -2, 3)),
            ("A", (3, 0, -2)),
            ("B", (0, 3, -2)),
            ("C", (-1, -1, 1)),
        ],
        base=("u", (0, 0, 0)),
    )


def _composite_fig3() -> TropicalCurve:
    return TropicalCurve.build(
        2,
        ["u", "v", "A", "B", "C", "P", "Q", "R"],
        [
            ("u", "A", (1, 0), 1),
            ("v", "A", (1, 0), 1),
            ("u", "B", (0, 1), 1),
            ("v", "B", (0, 1), 1),
            ("u", "C", (-1, -1), 1),
            ("v", "C", (-1, -1), 1),
            ("A", "P", (2, 0), 1),
            ("P", "Q", (1, 1), 1),
            ("P", "R", (1, -1), 1),
            ("Q", "R", (0, -1), 2),
        ],
        [("B", (0, 2)), ("C", (-2, -2)), ("Q", (1, 2)), ("R", (1, -2))],
        base=("u", (0, 0)),
    )


_PHI3_EDGES = [
    ("a", "b", (1, 0, 0), 1),
    ("b", "c", (0, 0, -1), 1),
    ("a", "d", (-1, -1, 0), 1),
    ("d", "e", (0, 0, -1), 2),
    ("a", "f", (0, 1, 0), 1),
    ("f", "g", (0, 0, -1), 1),
    ("c", "h", (0, -1, -1), 1),
    ("h", "e", (-1, 0, 0), 2),
    ("e", "i", (-1, 0, -1), 1),
    ("i", "g", (1, 1, 1), 2),
    ("g", "j", (1, 1, 0), 1),
    ("j", "c", (0, -1, 0), 2),
]

_PHI3_LEGS = [
    ("b", (1, 0, 1)),
    ("d", (-1, -1, 1)),
    ("f", (0, 1, 1)),
    ("h", (1, -1, -1)),
    ("i", (-2, -1, -2)),
    ("j", (1, 2, 0)),
]

_PHI3_VERTICES = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"]


def _phi3_sub() -> TropicalCurve:
    return TropicalCurve.build(3, _PHI3_VERTICES, _PHI3_EDGES, [],
                               base=("a", (0, 0, 1)))


def _phi3() -> TropicalCurve:
    return TropicalCurve.build(3, _PHI3_VERTICES, _PHI3_EDGES, _PHI3_LEGS,
                               base=("a", (0, 0, 1)))


# Genus-4 plane data: the K3,3 curve inside (tropical line) x (tropical
# conic).  Per matching class, segments climb one ray of the line factor
# and return; per tip, they traverse the same two conic moves.
_PHI4_SIGMA = {"R": (0, 1), "G": (1, 0), "B": (-1, -1)}
_PHI4_ROUTES = {
    "b": ((0, 1), (1, 0)),
    "d": ((-1, -1), (0, 1)),
    "f": ((1, 0), (-1, -1)),
}
_PHI4_SEGMENTS = [
    ("a", "b", "R"),
    ("c", "f", "R"),
    ("e", "d", "R"),
    ("a", "f", "G"),
    ("e", "b", "G"),
    ("c", "d", "G"),
    ("a", "d", "B"),
    ("c", "b", "B"),
    ("e", "f", "B"),
]


def _phi4_curve(with_legs: bool) -> TropicalCurve:
    vertices = ["a", "c", "e", "b", "d", "f"]
    edges = []
    legs = []
    for x, y, m in _PHI4_SEGMENTS:
        sigma = _PHI4_SIGMA[m]
        q1, q2 = _PHI4_ROUTES[y]
        up = (sigma[0], sigma[1], 0, 0)
        move1 = (0, 0, q1[0], q1[1])
        move2 = (0, 0, q2[0], q2[1])
        down = (-sigma[0], -sigma[1], 0, 0)
        m1, m2, m3 = f"{x}{y}1", f"{x}{y}2", f"{x}{y}3"
        vertices.extend([m1, m2, m3])
        edges.extend([
            (x, m1, up, 1),
            (m1, m2, move1, 1),
            (m2, m3, move2, 1),
            (m3, y, down, 1),
        ])
        if with_legs:
            legs.append((m1, _vec_sub(up, move1)))
            legs.append((m2, _vec_sub(move1, move2)))
            legs.append((m3, _vec_add(move2, up)))
    return TropicalCurve.build(4, vertices, edges, legs, base=("a", (0, 0, 0, 0)))


def _triangle_g3() -> TropicalCurve:
    return TropicalCurve.build(
        2,
        ["T1", "T2", "T3", "M"],
        [
            ("T1", "T2", (1, 0), 4),
            ("T2", "T3", (-1, -1), 4),
            ("T3", "T1", (0, 1), 4),
            ("M", "T1", (-1, 1), 1),
            ("M", "T2", (3, 1), 1),
            ("M", "T3", (-1, -3), 1),
        ],
        [],
        base=("T1", (0, 0)),
    )


def _planar_g1() -> TropicalCurve:
    return TropicalCurve.build(
        2,
        ["u", "A"],
        [("u", "A", (1, 0), 1), ("u", "A", (1, 0), 1)],
        [("u", (-2, 0)), ("A", (2, 0))],
        base=("u", (0, 0)),
    )


def _fixture_g3_d5() -> TropicalCurve:
    return standard_degree_completion(_phi3_sub(), pads={"b": 1}, prefix="t")


# Degree-7 genus-4 verdict fixture: a split banana.  Five strands run
# between two trivalent trees; strand k spans the hyperplane orthogonal to
# nu_k with (nu_1..nu_5) = (e1, e2, e3, e4, all-ones), whose single linear
# dependency gives excess exactly 1.  The splitter-edge directions are
# forced by balancing and were chosen orthogonal to the partial sums of the
# nu's so the dependency survives on the full matrix.
_BANANA_STRANDS: list[dict] = [
    {"base": (0, 1, 0, 1), "steps": [(0, 1, 0, 0), (0, 0, -1, 0)],
     "p": "P1", "q": "Q1"},
    {"base": (-1, 0, 1, -1), "steps": [(0, 0, 1, 0), (-1, 0, 0, 0)],
     "p": "P1", "q": "Q3"},
    {"base": (0, -1, 0, 1), "steps": [(1, 0, 0, 0), (0, 0, 0, -1)],
     "p": "P2", "q": "Q1"},
    {"base": (-1, 1, -1, 0), "steps": [(0, 0, 1, 0), (0, -1, 0, 0)],
     "p": "P3", "q": "Q2"},
    {"base": (2, -1, 0, -1), "steps": [(1, 0, -1, 0), (-1, 0, 0, 1)],
     "p": "P3", "q": "Q3"},
]


def _banana_skeleton(strands: list[dict]) -> TropicalCurve:
    """The split-banana core plus splitter edges, without balancing legs."""
    vertices = ["P1", "P2", "P3", "Q1", "Q2", "Q3"]
    edges: list[tuple[str, str, IntVec, object]] = []
    firsts: dict[str, list[IntVec]] = {v: [] for v in vertices}
    lasts: dict[str, list[IntVec]] = {v: [] for v in vertices}
    for k, spec in enumerate(strands):
        dirs = [tuple(spec["base"])]
        for step in spec["steps"]:
            dirs.append(_vec_sub(dirs[-1], step))
        names = [spec["p"]] + [f"s{k}m{i}" for i in range(1, len(dirs))] + [spec["q"]]
        vertices.extend(names[1:-1])
        for i, w in enumerate(dirs):
            edges.append((names[i], names[i + 1], w, 1))
        firsts[spec["p"]].append(dirs[0])
        lasts[spec["q"]].append(dirs[-1])
    tp1 = tuple(-c for c in _vec_add(firsts["P1"][0], firsts["P1"][1]))
    tp2 = _vec_sub(tp1, firsts["P2"][0])
    tq1 = _vec_add(lasts["Q1"][0], lasts["Q1"][1])
    tq2 = _vec_add(tq1, lasts["Q2"][0])
    edges.append(("P1", "P2", tp1, 1))
    edges.append(("P2", "P3", tp2, 1))
    edges.append(("Q1", "Q2", tq1, 1))
    edges.append(("Q2", "Q3", tq2, 1))
    return TropicalCurve.build(4, vertices, edges, [], base=("P1", (0, 0, 0, 0)))


def _fixture_g4_d7() -> TropicalCurve:
    return standard_degree_completion(_banana_skeleton(_BANANA_STRANDS),
                                      pads={"s0m1": 1}, prefix="k")


_BUILDERS = {
    "tuning_fork_r2": _tuning_fork_r2,
    "tuning_fork_r3": _tuning_fork_r3,
    "composite_fig3": _composite_fig3,
    "phi3_sub": _phi3_sub,
    "phi3": _phi3,
    "phi4_sub": lambda: _phi4_curve(False),
    "phi4": lambda: _phi4_curve(True),
    "triangle_g3": _triangle_g3,
    "planar_g1": _planar_g1,
    "fixture_g3_d5": _fixture_g3_d5,
    "fixture_g4_d7": _fixture_g4_d7,
}

_EXPECTED: dict[str, dict[str, object]] = {
    "tuning_fork_r2": {
        "genus": 2, "b": 6, "n": 3, "actual_dim": 3, "expected_dim": 2,
        "excess": 1, "superabundant": True, "standard_degree": 2,
        "balanced": True,
    },
    "tuning_fork_r3": {
        "genus": 2, "b": 10, "actual_dim": 5, "expected_dim": 4, "excess": 1,
        "superabundant": True, "irreducible": "yes", "indecomposable": "no",
        "balanced": True,
    },
    "composite_fig3": {
        "genus": 3, "b": 10, "n": 4, "excess": 1, "superabundant": True,
        "irreducible": "no", "indecomposable": "yes", "balanced": True,
    },
    "phi3_sub": {
        "genus": 3, "b": 12, "actual_dim": 4, "expected_dim": 3, "excess": 1,
        "superabundant": True, "irreducible": "yes", "indecomposable": "yes",
        "balanced": False, "unbalanced_vertices": ["b", "d", "f", "h", "i", "j"],
        "plane_contained": True,
    },
    "phi3": {
        "genus": 3, "b": 12, "n": 6, "actual_dim": 4, "expected_dim": 3,
        "excess": 1, "superabundant": True, "standard_degree": None,
        "balanced": True, "plane_contained": True,
    },
    "phi4_sub": {
        "genus": 4, "b": 36, "actual_dim": 21, "expected_dim": 20, "excess": 1,
        "superabundant": True, "balanced": False,
    },
    "phi4": {
        "genus": 4, "b": 36, "n": 27, "actual_dim": 21, "expected_dim": 20,
        "excess": 1, "superabundant": True, "irreducible": "yes",
        "indecomposable": "no", "standard_degree": None, "balanced": True,
    },
    "triangle_g3": {
        "genus": 3, "b": 6, "actual_dim": 1, "expected_dim": 0, "excess": 1,
        "superabundant": True, "balanced": False,
    },
    "planar_g1": {
        "genus": 1, "b": 2, "actual_dim": 1, "expected_dim": 0, "excess": 1,
        "superabundant": True, "planar": True, "balanced": True,
    },
    "fixture_g3_d5": {
        "genus": 3, "b": 26, "n": 20, "actual_dim": 18, "excess": 1,
        "superabundant": True, "standard_degree": 5, "balanced": True,
        "verdict": "GenericNonRealizable", "moduli_dim": 17,
    },
    "fixture_g4_d7": {
        "genus": 4, "b": 44, "n": 35, "actual_dim": 29, "excess": 1,
        "superabundant": True, "standard_degree": 7, "balanced": True,
        "verdict": "GenericNonRealizable", "moduli_dim": 28,
    },
}


def names() -> list[str]:
    return sorted(_BUILDERS)


def builtin(name: str) -> CurveTemplate:
    """Construct a named built-in curve with its published expectations."""
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownTemplateError(
            f"unknown template {name!r}; available: {', '.join(names())}") from None
    return CurveTemplate(name, builder(), _EXPECTED.get(name, {}))


def core_template(template_name: str) -> TropicalCurve:
    """The reference core used for combinatorial-type matching."""
    mapping = {"phi3": "phi3_sub", "phi4": "phi4_sub", "tuning_fork": "tuning_fork_r2"}
    if template_name not in mapping:
        raise UnknownTemplateError(
            f"unknown core template {template_name!r}; one of {sorted(mapping)}")
    return core_neighbourhood(builtin(mapping[template_name]).curve)


# -- the standard tropical plane in R^3 ------------------------------------


def in_standard_tropical_plane(point: Sequence) -> bool:
    """Exact membership in the nine 2-cones of the standard plane fan.

    Cones: the positive spans of {e_i, e_j} for i < j, and of {u, e_i} with
    u = -(1,1,1).
    """
    p = [Fraction(x) for x in point]
    if len(p) != 3:
        raise PreconditionError("the standard tropical plane lives in R^3")
    for i in range(3):
        for j in range(i + 1, 3):
            k = 3 - i - j
            if p[k] == 0 and p[i] >= 0 and p[j] >= 0:
                return True
    for i in range(3):
        others = [k for k in range(3) if k != i]
        a, b = p[others[0]], p[others[1]]
        if a == b and a <= 0 and p[i] >= a:
            return True
    return False


def _segment_in_plane(start: Sequence[Fraction], direction: Sequence[Fraction],
                      t_end: Fraction | None) -> bool:
    """Is {start + t*direction : 0 <= t <= t_end} inside the plane fan?

    ``t_end`` of None means a leg (a full ray).  The sign pattern of the
    coordinates and their pairwise differences only changes at finitely
    many parameters; it is enough to test those breakpoints and one point
    inside each open interval between them.
    """
    breaks: set[Fraction] = {Fraction(0)}
    exprs = []
    for i in range(3):
        exprs.append((start[i], direction[i]))
    for i in range(3):
        for j in range(i + 1, 3):
            exprs.append((start[i] - start[j], direction[i] - direction[j]))
    horizon = Fraction(1)
    for c0, c1 in exprs:
        if c1 != 0:
            t = -Fraction(c0) / Fraction(c1)
            if t > 0 and (t_end is None or t < t_end):
                breaks.add(t)
    if t_end is not None:
        breaks.add(t_end)
        horizon = t_end
    ordered = sorted(breaks)
    samples = list(ordered)
    for a, b in zip(ordered, ordered[1:]):
        samples.append((a + b) / 2)
    if t_end is None:
        samples.append(ordered[-1] + horizon)
    for t in samples:
        point = tuple(Fraction(start[i]) + t * Fraction(direction[i]) for i in range(3))
        if not in_standard_tropical_plane(point):
            return False
    return True


def verify_plane_containment(curve: TropicalCurve) -> bool:
    """Every edge segment and leg ray of the curve lies in the plane fan."""
    if curve.ambient_dim != 3:
        raise PreconditionError("plane containment is an R^3 check")
    if curve.base_position is None:
        raise PreconditionError("curve needs a base position")
    pos = curve.positions()
    for e in curve.graph.edges:
        start = pos[e.tail]
        direction = tuple(Fraction(c) for c in curve.directions[e.id])
        if not _segment_in_plane(start, direction, curve.lengths[e.id]):
            return False
    for leg, w in zip(curve.graph.legs, curve.leg_directions):
        start = pos[leg.vertex]
        if not _segment_in_plane(start, tuple(Fraction(c) for c in w), None):
            return False
    return True
