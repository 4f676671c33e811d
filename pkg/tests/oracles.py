"""Independent reference implementations used only by the tests.

Nothing here imports the package's hull, counting or elimination code.
"""

from itertools import combinations, product
from math import comb

import numpy as np
from scipy.spatial import ConvexHull


def brute_ideals(d, leq):
    """Down-closed subsets by filtering the power set; ``leq(i, j)`` means i <= j."""
    out = []
    for bits in product((0, 1), repeat=d):
        s = {i + 1 for i, b in enumerate(bits) if b}
        if all(j in s for i in s for j in range(1, d + 1) if leq(j, i)):
            out.append(frozenset(s))
    return set(out)


def brute_antichains(d, leq):
    out = []
    for bits in product((0, 1), repeat=d):
        s = [i + 1 for i, b in enumerate(bits) if b]
        if all(not leq(a, b) and not leq(b, a) for a, b in combinations(s, 2)):
            out.append(frozenset(s))
    return set(out)


def brute_stable_sets(d, edges):
    E = {frozenset(e) for e in edges}
    return {frozenset(s) for k in range(d + 1) for s in combinations(range(1, d + 1), k)
            if not any(frozenset(p) in E for p in combinations(s, 2))}


def qhull_counts(points, upto):
    """L(0..upto) from Qhull's floating hyperplanes; exact for small lattice data
    because every lattice point is either on a facet or at distance >= 1/|a|."""
    pts = np.asarray(points, dtype=float)
    if pts.shape[1] == 1:
        # a segment [lo, hi]: Qhull needs at least two dimensions
        lo, hi = int(pts.min()), int(pts.max())
        return [n * (hi - lo) + 1 for n in range(upto + 1)]
    hull = ConvexHull(pts)
    # rows (a, c): a . x + c <= 0 inside; triangulation repeats hyperplanes
    eq = np.unique(np.round(hull.equations, 9), axis=0)
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    counts = [1]
    for n in range(1, upto + 1):
        axes = [np.arange(int(round(n * a)), int(round(n * b)) + 1) for a, b in zip(lo, hi)]
        grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(axes)).astype(float)
        total = 0
        for chunk in np.array_split(grid, max(1, len(grid) // 200_000)):
            for row in eq:
                chunk = chunk[chunk @ row[:-1] + n * row[-1] <= 1e-7]
            total += len(chunk)
        counts.append(total)
    return counts


def delta_from_counts(counts, d):
    return tuple(sum((-1) ** (i - j) * comb(d + 1, i - j) * counts[j] for j in range(i + 1))
                 for i in range(d + 1))


def normalized_volume_from_counts(counts, d):
    """d-th forward difference of L(0..d) equals d! times the leading Ehrhart coefficient."""
    return sum((-1) ** (d - j) * comb(d, j) * counts[j] for j in range(d + 1))


def qhull_facets(points):
    """Distinct facet hyperplanes as primitive integer (a, b), a . x <= b."""
    from fractions import Fraction
    from math import gcd, lcm

    hull = ConvexHull(np.asarray(points, dtype=float))
    out = set()
    for row in hull.equations:
        a, c = row[:-1], -row[-1]
        scale = max(abs(x) for x in a)
        fr = [Fraction(x / scale).limit_denominator(1000) for x in list(a) + [c]]
        den = 1
        for f in fr:
            den = lcm(den, f.denominator)
        ints = [int(f * den) for f in fr]
        g = 0
        for x in ints[:-1]:
            g = gcd(g, x)
        out.add((tuple(x // g for x in ints[:-1]), ints[-1] // g))
    return out


def is_induced_cycle(adj, cycle):
    k = len(cycle)
    for i in range(k):
        for j in range(i + 1, k):
            consecutive = (j - i) % k in (1, k - 1)
            if adj(cycle[i], cycle[j]) != consecutive:
                return False
    return True


def brute_initial_generators(images, D):
    """Minimal generators of degree <= D of the revlex initial ideal of a toric ideal.

    ``images[r]`` is the lattice point of the r-th variable in ascending
    variable order. Every monomial is enumerated; in each fiber the revlex
    smallest one is standard, all others lie in the initial ideal.
    Monomials are returned as sorted tuples of variable indices.
    """
    from itertools import combinations_with_replacement

    N = len(images)
    standard = {()}
    gens = set()
    for n in range(1, D + 1):
        fibers = {}
        for m in combinations_with_replacement(range(N), n):
            img = tuple(sum(images[r][c] for r in m) for c in range(len(images[0])))
            fibers.setdefault(img, []).append(m)
        new_standard = set()
        for members in fibers.values():
            # revlex: larger exponent on the smallest variable means smaller
            best = min(members, key=lambda m: tuple(-m.count(r) for r in range(N)))
            new_standard.add(best)
            for m in members:
                if m != best and all(m[:i] + m[i + 1:] in standard for i in range(n)):
                    gens.add(m)
        standard = new_standard
    return gens


def brute_standard_count(gens, N, n):
    from itertools import combinations_with_replacement
    from collections import Counter

    gc = [Counter(g) for g in gens]
    return sum(1 for m in combinations_with_replacement(range(N), n)
               if not any(all(Counter(m)[k] >= v for k, v in g.items()) for g in gc))
