"""Exact linear algebra over the rationals.

Plain Gaussian elimination on lists of Fractions.  Everything downstream
that certifies geometry (hulls, objectives, shellings) runs through these
few functions, so they stay exact and dependency-free.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Optional, Sequence

Vec = List[Fraction]
Mat = List[List[Fraction]]


def fvec(xs) -> Vec:
    return [Fraction(x) for x in xs]


def fmat(rows) -> Mat:
    return [fvec(r) for r in rows]


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def vsub(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return [x - y for x, y in zip(a, b)]


def vadd(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vec:
    return [x + y for x, y in zip(a, b)]


def vscale(c, a: Sequence[Fraction]) -> Vec:
    c = Fraction(c)
    return [c * x for x in a]


def _echelon(m: Mat):
    """Row-reduce in place; returns the list of pivot column indices."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    pivots = []
    rank = 0
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if m[r][c] != 0:
                piv = r
                break
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        inv = Fraction(1) / m[rank][c]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(rows):
            if r != rank and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[rank])]
        pivots.append(c)
        rank += 1
        if rank == rows:
            break
    return pivots


def rank(rows: Sequence[Sequence[Fraction]]) -> int:
    if not rows:
        return 0
    m = [list(r) for r in rows]
    return len(_echelon(m))


def det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in rows]
    sign = 1
    out = Fraction(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if m[r][c] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            sign = -sign
        out *= m[c][c]
        inv = Fraction(1) / m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] * inv
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return out * sign


def solve(a: Sequence[Sequence[Fraction]], b: Sequence[Fraction]) -> Optional[Vec]:
    """One solution of a x = b, or None when inconsistent (least pivots)."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    m = [list(r) + [Fraction(b[i])] for i, r in enumerate(a)]
    pivots = _echelon(m)
    for r in range(len(pivots), rows):
        if m[r][cols] != 0:
            return None
    x = [Fraction(0)] * cols
    for r, c in enumerate(pivots):
        if c < cols:
            x[c] = m[r][cols]
        elif m[r][cols] != 0:
            return None
    return x


def nullspace(rows: Sequence[Sequence[Fraction]], cols: int) -> List[Vec]:
    """Basis of {x : rows @ x = 0} over Q."""
    if not rows:
        return [[Fraction(1) if i == j else Fraction(0) for i in range(cols)] for j in range(cols)]
    m = [list(r) for r in rows]
    pivots = _echelon(m)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [Fraction(0)] * cols
        v[free] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -m[r][free]
        basis.append(v)
    return basis


def primitive(v: Sequence[Fraction]) -> List[int]:
    """Scale a nonzero rational vector to coprime integers, first nonzero > 0."""
    fr = [Fraction(x) for x in v]
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no primitive form")
    from math import gcd, lcm

    denom = 1
    for x in fr:
        denom = lcm(denom, x.denominator)
    ints = [int(x * denom) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    for x in ints:
        if x != 0:
            if x < 0:
                ints = [-y for y in ints]
            break
    return ints
