"""Dev search for the genus-4 fixture's K4 block (frozen into catalog)."""
import itertools
import random
from fractions import Fraction

from tropabund.model import TropicalCurve, cycle_basis
from tropabund.abundancy import abundancy_matrix
from tropabund.linalg import rank, strictly_positive_kernel_point
from tropabund.errors import StructuralError

E = [tuple(1 if k == i else 0 for k in range(4)) for i in range(4)]
U = (-1, -1, -1, -1)


def add(*vs):
    out = (0, 0, 0, 0)
    for v in vs:
        out = tuple(a + b for a, b in zip(out, v))
    return out


def sub(a, b):
    return tuple(x - y for x, y in zip(a, b))


def neg(a):
    return tuple(-x for x in a)


SEGS = ["AB", "AC", "AD", "BC", "BD", "CD"]


def random_assignment(rng):
    """Distribute {u,u} + two copies of each e_i (grouped) into >= 7 bends."""
    blocks = [U, U]
    rays = [E[0], E[1], E[2], E[3], E[0], E[1], E[2], E[3]]
    rng.shuffle(rays)
    i = 0
    while i < len(rays):
        take = rng.choice([1, 1, 2])
        blocks.append(add(*rays[i:i + take]) if take > 1 else rays[i])
        i += take
    rng.shuffle(blocks)
    assign = {s: [] for s in SEGS}
    for b in blocks:
        assign[rng.choice(SEGS)].append(b)
    return assign


def build(assign, vAB, vAC, vBC):
    first = {}
    first["AB"], first["AC"], first["BC"] = vAB, vAC, vBC
    S = {s: add(*assign[s]) if assign[s] else (0, 0, 0, 0) for s in SEGS}
    first["AD"] = neg(add(vAB, vAC))
    last = lambda s: sub(first[s], S[s])
    first["BD"] = sub(last("AB"), vBC)
    first["CD"] = add(last("AC"), last("BC"))
    verts = ["A", "B", "C", "D"]
    edges = []
    for s in SEGS:
        chain = [first[s]]
        for d in assign[s]:
            chain.append(sub(chain[-1], d))
        if any(all(c == 0 for c in w) for w in chain):
            return None
        if any(chain[i] == chain[i + 1] for i in range(len(chain) - 1)):
            return None
        a, b = s[0], s[1]
        names = [a] + [f"{s.lower()}{i}" for i in range(1, len(chain))] + [b]
        verts.extend(names[1:-1])
        for i, w in enumerate(chain):
            edges.append((names[i], names[i + 1], w, 1))
    try:
        return TropicalCurve.build(4, verts, edges, [])
    except StructuralError:
        return None


def main():
    rng = random.Random(99)
    hits = 0
    for trial in range(300000):
        assign = random_assignment(rng)
        if max(len(v) for v in assign.values()) > 3:
            continue
        vAB = tuple(rng.randint(-2, 2) for _ in range(4))
        vAC = tuple(rng.randint(-2, 2) for _ in range(4))
        vBC = tuple(rng.randint(-2, 2) for _ in range(4))
        if not (any(vAB) and any(vAC) and any(vBC)):
            continue
        curve = build(assign, vAB, vAC, vBC)
        if curve is None:
            continue
        basis = cycle_basis(curve.graph)
        if len(basis) != 3:
            continue
        K = abundancy_matrix(curve, basis)
        if rank(K) != 12:
            continue
        pt = strictly_positive_kernel_point(K)
        if pt is None:
            continue
        print("HIT at trial", trial)
        print("  assign:", {s: v for s, v in assign.items()})
        print("  vAB,vAC,vBC:", vAB, vAC, vBC)
        print("  lengths:", [str(x) for x in pt])
        hits += 1
        if hits >= 3:
            return


main()
