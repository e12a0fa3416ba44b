"""Oriented matroids represented by their full covector sets.

An OrientedMatroid holds labelled ground elements and a sorted uint64
array of covector codes.  Construction goes through covector_span (close
a cocircuit set under composition) or from_chirotope.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from . import _bits, kernels
from .chirotope import Chirotope
from .signvec import SignVector

DEFAULT_BUDGET = 1 << 22


@dataclass
class ValidationReport:
    ok: bool
    errors: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def validate_cocircuit_axioms(cocircuits: Sequence[SignVector]) -> ValidationReport:
    """Check the signed cocircuit axioms on an explicit vector list.

    Verified: vectors are nonzero, the set is closed under negation,
    supports are pairwise incomparable (equal only for a vector and its
    negative), and weak elimination holds for every separating element.
    """
    errors: List[str] = []
    vecs = list(cocircuits)
    if not vecs:
        return ValidationReport(False, ["empty cocircuit set"])
    n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        return ValidationReport(False, ["cocircuits have mixed lengths"])
    codes = sorted({v.to_code() for v in vecs})
    arr = np.array(codes, dtype=np.uint64)
    p = arr & np.uint64(0xFFFFFFFF)
    m = arr >> np.uint64(32)
    sup = p | m

    if 0 in codes:
        errors.append("zero vector listed as a cocircuit")
    neg = set(int(c) for c in _bits.negate_codes(arr))
    if neg != set(codes):
        errors.append("set is not closed under negation")

    k = arr.size
    for i in range(k):
        contained = (sup[i] & ~sup) == 0
        contained[i] = False
        bad = np.nonzero(contained)[0]
        for j in bad:
            if int(arr[j]) != _bits.negate_code(int(arr[i])):
                errors.append(
                    f"support of {SignVector.from_code(int(arr[i]), n)} contains "
                    f"support of {SignVector.from_code(int(arr[j]), n)}"
                )
                break
        if len(errors) > 8:
            return ValidationReport(False, errors)

    # weak elimination: for X != -Y and e with X_e = -Y_e != 0, some Z has
    # Z_e = 0, Z+ within X+|Y+, Z- within X-|Y-
    for i in range(k):
        for j in range(i, k):
            if int(arr[j]) == _bits.negate_code(int(arr[i])):
                continue
            sep = int((p[i] & m[j]) | (m[i] & p[j]))
            if not sep:
                continue
            pu = p[i] | p[j]
            mu = m[i] | m[j]
            valid = ((p & ~pu) == 0) & ((m & ~mu) == 0)
            covered = 0
            for z in np.nonzero(valid)[0]:
                covered |= int(~sup[z]) & ((1 << n) - 1)
            missing = sep & ~covered
            if missing:
                e = _bits.positions_of_mask(missing)[0]
                errors.append(
                    f"no eliminant at position {e} for pair "
                    f"{SignVector.from_code(int(arr[i]), n)}, "
                    f"{SignVector.from_code(int(arr[j]), n)}"
                )
                if len(errors) > 8:
                    return ValidationReport(False, errors)
    return ValidationReport(not errors, errors)


class OrientedMatroid:
    """Covector-level oriented matroid on labelled elements."""

    def __init__(self, ground: Sequence[int], codes: np.ndarray, rank: int):
        self.ground: Tuple[int, ...] = tuple(ground)
        if len(self.ground) != len(set(self.ground)):
            raise ValueError("duplicate ground labels")
        if len(self.ground) > _bits.MAXN:
            raise ValueError(f"at most {_bits.MAXN} elements supported")
        self.codes = np.asarray(codes, dtype=np.uint64)
        self.rank = int(rank)
        self._pos: Dict[int, int] = {e: i for i, e in enumerate(self.ground)}
        self._cache: Dict[str, object] = {}

    # -- construction ------------------------------------------------

    @classmethod
    def from_chirotope(cls, chi: Chirotope, budget: int = DEFAULT_BUDGET) -> "OrientedMatroid":
        cocs = chi.cocircuits()
        om = covector_span(cocs, ground=range(1, chi.n + 1), budget=budget)
        if om.rank != chi.r:
            raise ValueError(
                f"covector lattice has height {om.rank}, expected rank {chi.r}"
            )
        return om

    # -- bookkeeping ---------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.ground)

    def position(self, label: int) -> int:
        try:
            return self._pos[label]
        except KeyError:
            raise KeyError(f"element {label} not in ground set {self.ground}") from None

    def mask_of(self, labels: Iterable[int]) -> int:
        return _bits.mask_of_positions(self.position(e) for e in labels)

    def labels_of_mask(self, mask: int) -> Tuple[int, ...]:
        return tuple(self.ground[i] for i in _bits.positions_of_mask(mask))

    def _vec(self, code: int) -> SignVector:
        return SignVector.from_code(code, self.n)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, OrientedMatroid)
            and self.ground == other.ground
            and self.codes.shape == other.codes.shape
            and bool(np.all(self.codes == other.codes))
        )

    def __hash__(self) -> int:
        return hash((self.ground, self.codes.tobytes()))

    def __repr__(self) -> str:
        return f"OrientedMatroid(n={self.n}, rank={self.rank}, covectors={self.codes.size})"

    # -- covector access -----------------------------------------------

    def covectors(self) -> Tuple[SignVector, ...]:
        return tuple(self._vec(int(c)) for c in self.codes)

    def _cocircuit_codes(self) -> np.ndarray:
        if "cocs" not in self._cache:
            self._cache["cocs"] = kernels.active().minimal_nonzero(self.codes)
        return self._cache["cocs"]  # type: ignore[return-value]

    def cocircuits(self) -> Tuple[SignVector, ...]:
        return tuple(self._vec(int(c)) for c in self._cocircuit_codes())

    def _tope_codes(self) -> np.ndarray:
        if "topes" not in self._cache:
            self._cache["topes"] = kernels.active().maximal_codes(self.codes)
        return self._cache["topes"]  # type: ignore[return-value]

    def topes(self) -> Tuple[SignVector, ...]:
        return tuple(self._vec(int(c)) for c in self._tope_codes())

    def contains(self, sv: SignVector) -> bool:
        if len(sv) != self.n:
            raise ValueError("length mismatch")
        c = np.uint64(sv.to_code())
        i = int(np.searchsorted(self.codes, c))
        return i < self.codes.size and self.codes[i] == c

    # -- element properties ----------------------------------------------

    def loops(self) -> Tuple[int, ...]:
        """Elements zero in every covector."""
        if self.codes.size == 0:
            return self.ground
        allsup = 0
        for c in self._tope_codes():
            allsup |= _bits.support_mask(int(c))
        return self.labels_of_mask(~allsup & ((1 << self.n) - 1))

    def coloops(self) -> Tuple[int, ...]:
        """Elements whose sign is unconstrained: the singleton is a cocircuit."""
        cocs = set(int(c) for c in self._cocircuit_codes())
        out = []
        for e in self.ground:
            if _bits.pack([1 if x == self.position(e) else 0 for x in range(self.n)]) in cocs:
                out.append(e)
        return tuple(out)

    def is_uniform(self) -> bool:
        """True when every cocircuit has exactly rank-1 zero entries."""
        if self.rank == 0:
            return False
        pc = kernels.numpy_impl.popcount64(
            (self._cocircuit_codes() & np.uint64(0xFFFFFFFF))
            | (self._cocircuit_codes() >> np.uint64(32))
        )
        return bool(np.all(pc == self.n - self.rank + 1))

    # -- operations ------------------------------------------------------

    def reorient(self, labels: Iterable[int]) -> "OrientedMatroid":
        mask = self.mask_of(labels)
        codes = np.sort(_bits.reorient_codes(self.codes, mask))
        return OrientedMatroid(self.ground, codes, self.rank)

    def delete(self, labels: Iterable[int]) -> "OrientedMatroid":
        """Restrict every covector to the remaining elements."""
        drop = set(labels)
        for e in drop:
            self.position(e)
        keep = [i for i, e in enumerate(self.ground) if e not in drop]
        codes = _bits.compact_codes(self.codes, keep)
        rank = kernels.active().lattice_height(codes)
        return OrientedMatroid([self.ground[i] for i in keep], codes, rank)

    def contract(self, labels: Iterable[int]) -> "OrientedMatroid":
        """Keep covectors vanishing on the given elements, then restrict."""
        con = set(labels)
        for e in con:
            self.position(e)
        mask = np.uint64(self.mask_of(con))
        full = mask | (mask << np.uint64(32))
        kept = self.codes[(self.codes & full) == 0]
        keep = [i for i, e in enumerate(self.ground) if e not in con]
        codes = _bits.compact_codes(kept, keep)
        rank = kernels.active().lattice_height(codes)
        return OrientedMatroid([self.ground[i] for i in keep], codes, rank)

    def _edge_data(self):
        """(edge codes, endpoint index a, endpoint index b) into cocircuits."""
        if "edges" not in self._cache:
            self._cache["edges"] = kernels.active().edge_covectors(
                self.codes, self._cocircuit_codes()
            )
        return self._cache["edges"]

    def colines(self) -> Tuple[FrozenSet[int], ...]:
        """Zero sets of the rank-2 cells (edges), as label sets."""
        edges, _, _ = self._edge_data()
        out = set()
        for c in edges:
            z = ~_bits.support_mask(int(c)) & ((1 << self.n) - 1)
            out.add(frozenset(self.labels_of_mask(z)))
        return tuple(sorted(out, key=sorted))

    def validate(self) -> ValidationReport:
        return validate_cocircuit_axioms(self.cocircuits())


def covector_span(
    cocircuits: Iterable[SignVector],
    ground: Optional[Iterable[int]] = None,
    budget: int = DEFAULT_BUDGET,
) -> OrientedMatroid:
    """Oriented matroid spanned by a cocircuit set (closure under composition)."""
    vecs = list(cocircuits)
    if not vecs:
        raise ValueError("need at least one cocircuit")
    n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise ValueError("cocircuits have mixed lengths")
    if ground is None:
        ground = range(1, n + 1)
    ground = tuple(ground)
    if len(ground) != n:
        raise ValueError(f"{n}-entry vectors need {n} ground labels, got {len(ground)}")
    arr = np.array(sorted({v.to_code() for v in vecs}), dtype=np.uint64)
    arr = np.unique(np.concatenate((arr, _bits.negate_codes(arr))))
    codes = kernels.active().span_codes(arr, budget)
    rank = kernels.active().lattice_height(codes)
    return OrientedMatroid(ground, codes, rank)


def rank_of(om: OrientedMatroid) -> int:
    return om.rank
