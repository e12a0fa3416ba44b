"""Chirotopes: basis orientation maps and the operations on them.

A chirotope of rank r on elements 1..n assigns a sign to every r-subset,
listed in colexicographic order.  Two text layouts are accepted: a
single line ``n r <signs>`` and a block of r digit rows (column k spells
the k-th subset) over one sign row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Iterable, List, Sequence, Tuple

from . import ratlinalg
from .signvec import SignVector

_SIGNS = {"+": 1, "0": 0, "-": -1}
_CHARS = {1: "+", 0: "0", -1: "-"}


def colex_subsets(n: int, r: int) -> List[Tuple[int, ...]]:
    """All r-subsets of {1..n} in colexicographic order."""
    return sorted(combinations(range(1, n + 1), r), key=lambda t: t[::-1])


def colex_rank(subset: Sequence[int]) -> int:
    """Position of a sorted subset within the colex enumeration."""
    return sum(comb(s - 1, i + 1) for i, s in enumerate(subset))


def _perm_parity(seq: Sequence[int]) -> int:
    """+1 for an even permutation of its sorted order, -1 for odd."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        j = min(range(i, len(seq)), key=seq.__getitem__)
        if j != i:
            seq[i], seq[j] = seq[j], seq[i]
            sign = -sign
    return sign


@dataclass(frozen=True)
class Chirotope:
    n: int
    r: int
    signs: Tuple[int, ...]

    def __post_init__(self):
        if not (1 <= self.r <= self.n):
            raise ValueError(f"need 1 <= r <= n, got r={self.r}, n={self.n}")
        if len(self.signs) != comb(self.n, self.r):
            raise ValueError(
                f"expected {comb(self.n, self.r)} signs for n={self.n}, r={self.r}, "
                f"got {len(self.signs)}"
            )
        if all(s == 0 for s in self.signs):
            raise ValueError("identically zero map is not a chirotope")

    def sign(self, subset: Iterable[int]) -> int:
        """Sign of an r-tuple of distinct elements (alternating in the order)."""
        t = tuple(subset)
        if len(t) != self.r:
            raise ValueError(f"expected {self.r} elements, got {len(t)}")
        if len(set(t)) != self.r:
            return 0
        if any(not (1 <= e <= self.n) for e in t):
            raise ValueError(f"elements must lie in 1..{self.n}")
        return _perm_parity(t) * self.signs[colex_rank(sorted(t))]

    def is_uniform(self) -> bool:
        return all(s != 0 for s in self.signs)

    def mutate(self, basis: Iterable[int]) -> "Chirotope":
        """Flip the sign of one basis; the subset must currently be nonzero."""
        b = tuple(sorted(basis))
        if len(b) != self.r or len(set(b)) != self.r:
            raise ValueError(f"mutation needs {self.r} distinct elements")
        k = colex_rank(b)
        if self.signs[k] == 0:
            raise ValueError(f"cannot mutate {b}: sign is zero")
        signs = list(self.signs)
        signs[k] = -signs[k]
        return Chirotope(self.n, self.r, tuple(signs))

    def negate(self) -> "Chirotope":
        return Chirotope(self.n, self.r, tuple(-s for s in self.signs))

    def cocircuits(self) -> Tuple[SignVector, ...]:
        """All signed cocircuits, closed under negation, sorted by code."""
        seen = {}
        subs = combinations(range(1, self.n + 1), self.r - 1)
        for s in subs:
            sset = set(s)
            vec = [0] * self.n
            nonzero = False
            for e in range(1, self.n + 1):
                if e in sset:
                    continue
                union = tuple(sorted(sset | {e}))
                i = union.index(e)
                val = self.signs[colex_rank(union)]
                if (self.r - 1 - i) % 2:
                    val = -val
                vec[e - 1] = val
                nonzero = nonzero or val != 0
            if not nonzero:
                continue
            sv = SignVector(vec)
            seen[sv.to_code()] = sv
            nv = -sv
            seen[nv.to_code()] = nv
        return tuple(seen[c] for c in sorted(seen))

    def to_line(self) -> str:
        return f"{self.n} {self.r} " + "".join(_CHARS[s] for s in self.signs)

    def __str__(self) -> str:
        return self.to_line()


def _parse_sign_row(row: str) -> Tuple[int, ...]:
    out = []
    for ch in row:
        if ch not in _SIGNS:
            raise ValueError(f"bad sign character {ch!r}")
        out.append(_SIGNS[ch])
    return tuple(out)


def parse_chirotope(text: str) -> Chirotope:
    """Parse either the one-line ``n r <signs>`` or the digit-block layout."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty chirotope text")
    if len(lines) == 1:
        parts = lines[0].split()
        if len(parts) != 3:
            raise ValueError("single-line layout must be 'n r <signs>'")
        n, r = int(parts[0]), int(parts[1])
        return Chirotope(n, r, _parse_sign_row(parts[2]))

    digit_rows, sign_row = lines[:-1], lines[-1]
    r = len(digit_rows)
    width = len(sign_row)
    for row in digit_rows:
        if len(row) != width:
            raise ValueError("block rows must all have equal length")
        if not row.isdigit():
            raise ValueError("block layout uses digit labels 1..9 only")
    n = max(int(ch) for row in digit_rows for ch in row)
    if comb(n, r) != width:
        raise ValueError(
            f"block has {width} columns but {comb(n, r)} subsets exist for n={n}, r={r}"
        )
    expected = colex_subsets(n, r)
    for k in range(width):
        col = tuple(int(digit_rows[i][k]) for i in range(r))
        if col != expected[k]:
            raise ValueError(
                f"column {k + 1} spells {col}, expected {expected[k]} in colex order"
            )
    return Chirotope(n, r, _parse_sign_row(sign_row))


def chirotope_from_points(points: Sequence[Sequence], r: int | None = None) -> Chirotope:
    """Chirotope of a vector configuration (rows are vectors, exact arithmetic).

    Element k (1-based) is row k-1.  The rows must span; r defaults to the
    vector length.
    """
    rows = [[Fraction(x) for x in p] for p in points]
    n = len(rows)
    if n == 0:
        raise ValueError("no points")
    d = len(rows[0])
    if any(len(p) != d for p in rows):
        raise ValueError("points must share one dimension")
    if r is None:
        r = d
    if r != d:
        raise ValueError(f"vectors of length {d} give rank {d}, not {r}")
    if ratlinalg.rank(rows) != r:
        raise ValueError("points do not span: chirotope would be identically zero")
    signs = []
    for s in colex_subsets(n, r):
        dv = ratlinalg.det([rows[e - 1] for e in s])
        signs.append(0 if dv == 0 else (1 if dv > 0 else -1))
    return Chirotope(n, r, tuple(signs))
