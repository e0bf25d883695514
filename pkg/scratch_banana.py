"""Dev search: find banana strand data with rank 15 and a positive cone.

Not shipped; results are frozen into catalog._BANANA_STRANDS.
"""
import itertools
import random
from fractions import Fraction

from tropabund.catalog import _banana_skeleton
from tropabund.abundancy import abundancy_matrix
from tropabund.linalg import rank, strictly_positive_kernel_point
from tropabund.model import core_neighbourhood, cycle_basis, validate
from tropabund.errors import StructuralError, PreconditionError


def e(i):
    return tuple(1 if k == i else 0 for k in range(4))


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def neg(a):
    return tuple(-x for x in a)


RAYS = [e(0), e(1), e(2), e(3)]
DIFFS = [sub(e(i), e(j)) for i in range(4) for j in range(4) if i != j]

rng = random.Random(20240811)

# Strand k must be orthogonal to nu_k; steps stay inside nu_k-perp.
NUS = [e(0), e(1), e(2), e(3), (1, 1, 1, 1)]
STEP_POOL = [
    [s for s in [e(1), e(2), e(3)] ],                      # strand 0 (perp e1)
    [s for s in [e(0), e(2), e(3)] ],                      # strand 1 (perp e2)
    [s for s in [e(0), e(1), e(3)] ],                      # strand 2 (perp e3)
    [s for s in [e(0), e(1), e(2)] ],                      # strand 3 (perp e4)
    DIFFS,                                                  # strand 4 (perp 1111)
]

PAIRING = [("P1", "Q1"), ("P1", "Q3"), ("P2", "Q1"), ("P3", "Q2"), ("P3", "Q3")]


def random_base(k):
    while True:
        v = tuple(rng.randint(-2, 2) for _ in range(4))
        if all(c == 0 for c in v):
            continue
        if sum(a * b for a, b in zip(v, NUS[k])) != 0:
            continue
        return v


def candidate():
    # contents: strand k: one descent + one ascent within its perp space;
    # strand 4: two difference steps; total content must vanish.
    for _ in range(200):
        steps = []
        for k in range(4):
            d = rng.choice(STEP_POOL[k])
            a = rng.choice(STEP_POOL[k])
            if d == a:
                continue
            steps.append([d, neg(a)])
        if len(steps) != 4:
            continue
        total = (0, 0, 0, 0)
        for pair in steps:
            total = add(total, add(pair[0], pair[1]))
        # strand 4 must absorb -total with two difference steps
        needed = neg(total)
        if sum(needed) != 0:
            continue
        options = [(d1, d2) for d1 in DIFFS for d2 in DIFFS
                   if add(d1, d2) == needed and d1 != d2]
        if not options:
            continue
        steps.append(list(rng.choice(options)))
        bases = [random_base(k) for k in range(4)]
        w5 = neg(add(add(bases[0], bases[1]), add(bases[2], bases[3])))
        if sum(w5) != 0 or all(c == 0 for c in w5):
            continue
        bases.append(w5)
        spec = []
        for k in range(5):
            spec.append({"base": bases[k], "steps": steps[k],
                         "p": PAIRING[k][0], "q": PAIRING[k][1]})
        return spec
    return None


def check(spec):
    try:
        sk = _banana_skeleton(spec)
    except (StructuralError, PreconditionError):
        return None
    core = core_neighbourhood(sk)
    if len(core.graph.edges) != 19:
        return None
    basis = cycle_basis(core.graph)
    if len(basis) != 4:
        return None
    K = abundancy_matrix(core, basis)
    if rank(K) != 15:
        return None
    point = strictly_positive_kernel_point(K)
    if point is None:
        return None
    return point


found = 0
for trial in range(40000):
    spec = candidate()
    if spec is None:
        continue
    point = check(spec)
    if point is None:
        continue
    found += 1
    print("FOUND after", trial, "trials")
    for s in spec:
        print(" ", s)
    print("  lengths:", point)
    if found >= 3:
        break
if not found:
    print("no hit")
