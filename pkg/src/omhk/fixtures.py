"""Frozen example data used by tests and the command line demos."""

from __future__ import annotations

from .chirotope import Chirotope, parse_chirotope

# Uniform rank-4 example on 8 elements with 14 simplicial topes (below the
# 2n bound every realizable one meets), a cyclic objective digraph at
# (g, f) = (1, 8), and a shelling digraph on the coline {1, 8} with only
# two disjoint source-to-sink paths.  Column k of the digit rows spells
# the k-th basis in colex order.
IC842_BLOCK = """\
1111211121121231112112123112123123411121121231121231234112123123412345
2223322332334442233233444233444555522332334442334445555233444555566666
3344434445555553444555555666666666634445555556666666666777777777777777
4555566666666667777777777777777777788888888888888888888888888888888888
+++++++++++++++++++++++++++-------++------------+--+------+--+---+--++
"""


def ic842() -> Chirotope:
    """8-element rank-4 chirotope failing the disjoint-path conditions."""
    return parse_chirotope(IC842_BLOCK)


def all_plus(n: int, r: int) -> Chirotope:
    """Uniform chirotope with every colex basis sign + (alternating type)."""
    from math import comb

    return Chirotope(n, r, (1,) * comb(n, r))


def rank3_arrangement() -> Chirotope:
    """Vectors (0,0,1), (1,0,0), (0,1,0), (1,1,0): one dependent triple."""
    from .chirotope import chirotope_from_points

    return chirotope_from_points([(0, 0, 1), (1, 0, 0), (0, 1, 0), (1, 1, 0)])


def triangle_program() -> Chirotope:
    """Five-element rank-3 bundle carrying a bounded program.

    Elements 1..3 are the affine lines x = 0, y = 0, x + y = 1 in
    homogeneous form, element 4 is the line at infinity, element 5 a
    generic objective.  The program (g=4, f=5) is proper: the feasible
    region is the triangle, and f orders its corners (0,0), (0,1),
    (1,0) strictly.
    """
    from .chirotope import chirotope_from_points

    return chirotope_from_points(
        [(1, 0, 0), (0, 1, 0), (-1, -1, 1), (0, 0, 1), (2, 1, 1)])


def rank3_shelling() -> Chirotope:
    """Vectors (0,0,1), (1,0,0), (0,1,0), (1,1,1): uniform, and the
    fixation at {1} is proper with shelling order (2, 4, 3).

    Lifting the fourth vector off the z = 0 plane is what makes the
    fixation proper: with (1,1,0) the region positive on {2,3,4} keeps
    the whole z-axis, so element 4 only touches it in a line, not a
    facet.  On the circle z = 0 the two arrangements agree, so the
    shelling order is unchanged.
    """
    from .chirotope import chirotope_from_points

    return chirotope_from_points([(0, 0, 1), (1, 0, 0), (0, 1, 0), (1, 1, 1)])


# 3-cube skeleton: vertices are the 8 corners, named by coordinate bits.
CUBE_VERTICES = ("000", "100", "010", "001", "110", "101", "011", "111")

# Orientation with a directed vertex cut of size 2 ({100, 011}): acyclic,
# unique source and sink, every face has unique source and sink, but only
# two vertex-disjoint source-to-sink paths exist.
CUBE_CUT_ARCS = (
    ("000", "100"),
    ("000", "010"),
    ("000", "001"),
    ("100", "110"),
    ("100", "101"),
    ("110", "010"),
    ("101", "001"),
    ("010", "011"),
    ("001", "011"),
    ("110", "111"),
    ("101", "111"),
    ("011", "111"),
)


def cube_linear_arcs(c=(1, 2, 4)):
    """Arcs of the 3-cube oriented by a linear objective on the corners."""
    arcs = []
    for i, u in enumerate(CUBE_VERTICES):
        for v in CUBE_VERTICES:
            diff = [k for k in range(3) if u[k] != v[k]]
            if len(diff) != 1:
                continue
            fu = sum(c[k] * int(u[k]) for k in range(3))
            fv = sum(c[k] * int(v[k]) for k in range(3))
            if fu < fv:
                arcs.append((u, v))
    return tuple(arcs)
