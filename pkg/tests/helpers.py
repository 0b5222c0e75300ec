"""Shared test utilities: seeded RNG, random script generators, and an
independent integer determinant for cross-checking Smith normal forms."""

import os
import random
from itertools import combinations
from math import gcd

from reeb_forge import catalog as cat
from reeb_forge.engine import BubblingScript, normal_op, wedge_op
from reeb_forge.pid_algebra import euler_characteristic

SEED = int(os.environ.get("REEB_FORGE_SEED", "20260810"))


def make_rng(offset: int = 0) -> random.Random:
    return random.Random(SEED + offset)


def int_det(rows) -> int:
    """Fraction-free (Bareiss) determinant; exact for integer matrices."""
    a = [list(r) for r in rows]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def determinantal_divisor(rows, k: int) -> int:
    """gcd of all k x k minors (0 when every minor vanishes)."""
    n, m = len(rows), len(rows[0]) if rows else 0
    g = 0
    for ris in combinations(range(n), k):
        for cjs in combinations(range(m), k):
            sub = [[rows[i][j] for j in cjs] for i in ris]
            g = gcd(g, abs(int_det(sub)))
    return g


def generator_pool(ambient, torsion_free=False, chi_nonneg=False, max_param=4):
    """Catalog manifolds valid as generators at the given ambient dimension."""
    pool = [cat.point()]
    pool += [cat.sphere(k) for k in range(1, min(ambient - 1, 6) + 1)]
    if ambient >= 3:
        pool += [cat.surface(g) for g in range(0, max_param + 1)]
    if ambient >= 5:
        pool += [cat.lens(p, 1) for p in range(2, max_param + 1)]
    if ambient >= 4:
        pool.append(cat.product(cat.sphere(1), cat.sphere(2)))
    if ambient >= 7:
        pool.append(cat.product(cat.lens(2, 1), cat.sphere(ambient - 5)))
    if ambient >= 2:
        pool.append(cat.homology_sphere(min(ambient - 1, 6)))
    pool = [m for m in pool if m.dim < ambient and m.embed_dim <= ambient]
    if chi_nonneg:
        pool = [m for m in pool if euler_characteristic(m.homology) >= 0]
    if torsion_free:
        pool = [m for m in pool if all(not mod.torsion for mod in m.homology.degrees)]
    return pool


def random_script(
    rng,
    ambient,
    max_ops,
    allow_wedge=True,
    torsion_free=False,
    chi_nonneg=False,
    max_param=4,
) -> BubblingScript:
    pool = generator_pool(ambient, torsion_free, chi_nonneg, max_param)
    ops = []
    for _ in range(rng.randint(0, max_ops)):
        if allow_wedge and rng.random() < 0.3:
            size = rng.randint(1, 3)
            ops.append(wedge_op(cat.make_bouquet([rng.choice(pool) for _ in range(size)])))
        else:
            ops.append(normal_op(rng.choice(pool)))
    return BubblingScript(ambient, tuple(ops))
