"""Exact integer/rational linear algebra for the polytope engine.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator). Matrices are plain lists of rows. Elimination is done
fraction-free (Bareiss) on integer rows; rational input is scaled to
integers row by row first.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

Rational = Fraction | int
RatVector = Sequence[Rational]
RatMatrix = Sequence[RatVector]


def to_fraction(value) -> Fraction:
    """Parse ints, Fractions and ``"p/q"`` strings."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_fraction(value: Rational) -> str:
    """Serialize as ``"p/q"`` (``"p"`` when the denominator is 1)."""
    q = to_fraction(value)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _integer_row(row: RatVector) -> list[int]:
    fracs = [to_fraction(x) for x in row]
    den = 1
    for f in fracs:
        den = lcm(den, f.denominator)
    return [int(f * den) for f in fracs]


def row_echelon(rows: Iterable[RatVector]) -> list[list[int]]:
    """Fraction-free row echelon form (Bareiss) of an integer-scaled copy.

    Returns the nonzero echelon rows only; their count is the rank.
    """
    m = [_integer_row(r) for r in rows]
    if not m:
        return []
    ncols = len(m[0])
    if any(len(r) != ncols for r in m):
        raise ValueError("ragged matrix")
    out: list[list[int]] = []
    prev = 1
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        p = m[r][c]
        for i in range(r + 1, len(m)):
            f = m[i][c]
            # exact division is guaranteed by the Bareiss identity
            m[i] = [(p * m[i][k] - f * m[r][k]) // prev for k in range(ncols)]
        prev = p
        r += 1
        if r == len(m):
            break
    for row in m[:r]:
        g = 0
        for x in row:
            g = gcd(g, x)
        out.append([x // g for x in row] if g > 1 else list(row))
    return out


def rank(matrix: RatMatrix) -> int:
    """Exact rank of a rational matrix."""
    return len(row_echelon(matrix))


def nullspace(matrix: RatMatrix, ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right null space, via reduced row echelon form over Q."""
    rows = [[to_fraction(x) for x in r] for r in matrix]
    if ncols is None:
        if not rows:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(rows[0])
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def solve_affine_span(points: Sequence[RatVector]) -> tuple[int, list[list[int]]]:
    """Affine dimension of ``points`` and an integer basis of the span of differences."""
    if not points:
        raise ValueError("solve_affine_span needs at least one point")
    base = [to_fraction(x) for x in points[0]]
    diffs = [[to_fraction(x) - b for x, b in zip(p, base)] for p in points[1:]]
    basis = row_echelon(diffs)
    return len(basis), basis


def primitive_normalize(v: RatVector) -> tuple[list[int], Fraction]:
    """Write ``v = c * w`` with ``w`` a primitive integer vector and ``c > 0``."""
    fracs = [to_fraction(x) for x in v]
    if all(f == 0 for f in fracs):
        raise ValueError("cannot normalize the zero vector")
    den = 1
    for f in fracs:
        den = lcm(den, f.denominator)
    ints = [int(f * den) for f in fracs]
    g = 0
    for x in ints:
        g = gcd(g, x)
    return [x // g for x in ints], Fraction(g, den)


def primitive_int(v: Sequence[int]) -> tuple[int, ...]:
    """Divide an integer vector by the gcd of its entries (sign kept)."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g <= 1:
        return tuple(v)
    return tuple(x // g for x in v)


def dot(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(x * y for x, y in zip(a, b))
