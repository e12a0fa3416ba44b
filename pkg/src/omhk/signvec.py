"""Sign vectors with the composition and conformal-order operations."""

from __future__ import annotations

from typing import Iterable, Tuple

from . import _bits

_CHARS = {1: "+", 0: "0", -1: "-"}
_SIGNS = {"+": 1, "0": 0, "-": -1}


class SignVector:
    """An immutable vector over {-1, 0, +1}.

    Entries are indexed 0..n-1 internally; element labels are handled by
    the oriented matroid layer.
    """

    __slots__ = ("signs",)

    def __init__(self, signs: Iterable[int]):
        t = tuple(int(s) for s in signs)
        for s in t:
            if s not in (-1, 0, 1):
                raise ValueError(f"sign entries must be -1, 0 or +1, got {s}")
        object.__setattr__(self, "signs", t)

    def __setattr__(self, *a):
        raise AttributeError("SignVector is immutable")

    @classmethod
    def from_string(cls, s: str) -> "SignVector":
        try:
            return cls(_SIGNS[c] for c in s)
        except KeyError as e:
            raise ValueError(f"bad sign character {e.args[0]!r}") from None

    @classmethod
    def from_code(cls, code: int, n: int) -> "SignVector":
        return cls(_bits.unpack(code, n))

    def to_code(self) -> int:
        return _bits.pack(self.signs)

    def __len__(self) -> int:
        return len(self.signs)

    def __getitem__(self, i: int) -> int:
        return self.signs[i]

    def __iter__(self):
        return iter(self.signs)

    def __eq__(self, other) -> bool:
        return isinstance(other, SignVector) and self.signs == other.signs

    def __hash__(self) -> int:
        return hash(self.signs)

    def __neg__(self) -> "SignVector":
        return SignVector(-s for s in self.signs)

    def __str__(self) -> str:
        return "".join(_CHARS[s] for s in self.signs)

    def __repr__(self) -> str:
        return f"SignVector({self})"

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.signs) if s != 0)

    @property
    def zero_set(self) -> Tuple[int, ...]:
        return tuple(i for i, s in enumerate(self.signs) if s == 0)

    def is_zero(self) -> bool:
        return all(s == 0 for s in self.signs)

    def separates(self, other: "SignVector") -> Tuple[int, ...]:
        """Positions where the two vectors take opposite nonzero signs."""
        return tuple(
            i for i, (a, b) in enumerate(zip(self.signs, other.signs)) if a * b == -1
        )


def compose(x: SignVector, y: SignVector) -> SignVector:
    """x then y: keep x where nonzero, fall back to y."""
    if len(x) != len(y):
        raise ValueError("length mismatch")
    return SignVector(a if a != 0 else b for a, b in zip(x.signs, y.signs))


def conforms(x: SignVector, y: SignVector) -> bool:
    """True when x agrees with y on the support of x (x is a face of y)."""
    if len(x) != len(y):
        raise ValueError("length mismatch")
    return all(a == 0 or a == b for a, b in zip(x.signs, y.signs))
