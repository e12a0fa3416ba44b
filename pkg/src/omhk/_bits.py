"""Bit-packed sign vector codes.

A sign vector over a ground set of up to 32 elements is packed into one
uint64: bit i is set when entry i is '+', bit 32+i when entry i is '-'.
Zero entries leave both bits clear.  All heavy covector work in this
package runs on numpy arrays of such codes; the SignVector class is the
human-facing view.
"""

from __future__ import annotations

import numpy as np

MAXN = 32
LOW32 = np.uint64(0xFFFFFFFF)
_LOW32_INT = 0xFFFFFFFF


def pack(signs) -> int:
    """Pack a sequence over {-1, 0, +1} into a code."""
    p = 0
    m = 0
    for i, s in enumerate(signs):
        if s > 0:
            p |= 1 << i
        elif s < 0:
            m |= 1 << i
    return p | (m << 32)


def unpack(code: int, n: int) -> tuple:
    code = int(code)
    p = code & _LOW32_INT
    m = code >> 32
    return tuple(1 if (p >> i) & 1 else (-1 if (m >> i) & 1 else 0) for i in range(n))


def plus_mask(code: int) -> int:
    return int(code) & _LOW32_INT


def minus_mask(code: int) -> int:
    return int(code) >> 32


def support_mask(code: int) -> int:
    c = int(code)
    return (c & _LOW32_INT) | (c >> 32)


def make_code(p: int, m: int) -> int:
    return p | (m << 32)


def negate_code(code: int) -> int:
    c = int(code)
    return ((c & _LOW32_INT) << 32) | (c >> 32)


def compose_code(x: int, y: int) -> int:
    px, mx = plus_mask(x), minus_mask(x)
    py, my = plus_mask(y), minus_mask(y)
    free = ~(px | mx) & _LOW32_INT
    return make_code(px | (py & free), mx | (my & free))


def conforms_code(x: int, y: int) -> bool:
    """x <= y in the conformal (face) order."""
    return (plus_mask(x) & ~plus_mask(y)) == 0 and (minus_mask(x) & ~minus_mask(y)) == 0


def negate_codes(codes: np.ndarray) -> np.ndarray:
    p = codes & LOW32
    m = codes >> np.uint64(32)
    return (p << np.uint64(32)) | m


def reorient_codes(codes: np.ndarray, rmask: int) -> np.ndarray:
    """Flip the sign of every entry whose position bit is set in rmask."""
    r = np.uint64(rmask & _LOW32_INT)
    p = codes & LOW32
    m = codes >> np.uint64(32)
    p2 = (p & ~r) | (m & r)
    m2 = (m & ~r) | (p & r)
    return p2 | (m2 << np.uint64(32))


def restrict_codes(codes: np.ndarray, drop_mask: int) -> np.ndarray:
    """Zero out the entries in drop_mask, keeping bit positions (no compaction)."""
    keep = np.uint64(~drop_mask & _LOW32_INT)
    full = keep | (keep << np.uint64(32))
    return np.unique(codes & full)


def compact_codes(codes: np.ndarray, keep_positions) -> np.ndarray:
    """Restrict to keep_positions and renumber them 0..k-1 (sorted order)."""
    p = codes & LOW32
    m = codes >> np.uint64(32)
    np_ = np.zeros_like(codes)
    nm = np.zeros_like(codes)
    for newpos, oldpos in enumerate(sorted(keep_positions)):
        bit = np.uint64(1 << oldpos)
        np_ |= ((p & bit) >> np.uint64(oldpos)) << np.uint64(newpos)
        nm |= ((m & bit) >> np.uint64(oldpos)) << np.uint64(newpos)
    return np.unique(np_ | (nm << np.uint64(32)))


def mask_of_positions(positions) -> int:
    m = 0
    for i in positions:
        m |= 1 << i
    return m


def positions_of_mask(mask: int):
    out = []
    i = 0
    mask = int(mask)
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def popcount(x: int) -> int:
    return int(x).bit_count()
