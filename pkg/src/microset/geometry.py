"""Exact geometry over the unit cube: points, boxes, digital sets, brackets.

Coordinates are Fractions.  Distances are handled as squared values so that
every comparison stays rational; Euclidean roots appear only inside
``hausdorff_bracket``, which returns a certified rational enclosure.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence, Union

from .rational import DEFAULT_PRECISION, root_lower, root_upper


def _frac(value) -> Fraction:
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use Fraction")
    return Fraction(value)


@dataclass(frozen=True)
class Point:
    """A point of the closed unit cube."""

    coords: tuple[Fraction, ...]

    def __post_init__(self):
        coords = tuple(_frac(c) for c in self.coords)
        object.__setattr__(self, "coords", coords)
        if not coords:
            raise ValueError("point needs at least one coordinate")
        if any(c < 0 or c > 1 for c in coords):
            raise ValueError("point coordinates must lie in [0, 1]")

    @property
    def n(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class Box:
    """Closed axis-aligned box, one (lo, hi) pair per axis, lo <= hi."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        ivs = tuple((_frac(lo), _frac(hi)) for lo, hi in self.intervals)
        object.__setattr__(self, "intervals", ivs)
        if not ivs:
            raise ValueError("box needs at least one axis")
        for lo, hi in ivs:
            if lo > hi:
                raise ValueError(f"inverted interval [{lo}, {hi}]")

    @property
    def n(self) -> int:
        return len(self.intervals)

    def sides(self) -> tuple[Fraction, ...]:
        return tuple(hi - lo for lo, hi in self.intervals)

    def vertices(self) -> Iterable[tuple[Fraction, ...]]:
        return itertools.product(*self.intervals)


@dataclass(frozen=True)
class Cube(Box):
    """Box together with its witnessed common side length."""

    side: Fraction

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "side", _frac(self.side))
        if self.side <= 0:
            raise ValueError("cube side must be positive")
        for lo, hi in self.intervals:
            if hi - lo != self.side:
                raise ValueError("cube sides differ from the witnessed side")

    @classmethod
    def at_corner(cls, corner: Sequence[Fraction], side: Fraction) -> "Cube":
        side = _frac(side)
        ivs = tuple((_frac(c), _frac(c) + side) for c in corner)
        return cls(intervals=ivs, side=side)


@dataclass(frozen=True)
class DigitalSet:
    """Nonempty union of closed depth-m grid cells of [0,1]^n in base b.

    A cell index tuple (j_1, ..., j_n) names the box
    prod_i [j_i / b**m, (j_i + 1) / b**m].  Cells are stored sorted and
    deduplicated; this is the canonical form used by serialization.
    """

    n: int
    b: int
    m: int
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if self.b < 2:
            raise ValueError("base must be >= 2")
        if self.m < 0:
            raise ValueError("depth must be >= 0")
        cells = tuple(sorted({tuple(int(j) for j in cell) for cell in self.cells}))
        object.__setattr__(self, "cells", cells)
        if not cells:
            raise ValueError("digital set must be nonempty")
        top = self.b**self.m
        for cell in cells:
            if len(cell) != self.n:
                raise ValueError("cell arity differs from dimension")
            if any(j < 0 or j >= top for j in cell):
                raise ValueError(f"cell index out of range: {cell}")

    @property
    def cell_side(self) -> Fraction:
        return Fraction(1, self.b**self.m)

    def cell_box(self, cell: tuple[int, ...]) -> Box:
        s = self.cell_side
        return Box(tuple((j * s, (j + 1) * s) for j in cell))

    def boxes(self) -> list[Box]:
        return [self.cell_box(cell) for cell in self.cells]

    def refine(self, depth: int) -> "DigitalSet":
        """The same set re-gridded at a deeper depth (same base)."""
        if depth < self.m:
            raise ValueError("refinement depth must be >= current depth")
        if depth == self.m:
            return self
        f = self.b ** (depth - self.m)
        offsets = list(itertools.product(range(f), repeat=self.n))
        cells = [
            tuple(j * f + o for j, o in zip(cell, off))
            for cell in self.cells
            for off in offsets
        ]
        return DigitalSet(self.n, self.b, depth, tuple(cells))


@dataclass(frozen=True)
class HBracket:
    """Certified rational bracket [lo, hi] around a Hausdorff distance."""

    lo: Fraction
    hi: Fraction
    sample_depth: int
    width_cap: Fraction

    def __post_init__(self):
        if self.lo < 0 or self.hi < self.lo:
            raise ValueError("bracket must satisfy 0 <= lo <= hi")
        if self.hi - self.lo > self.width_cap:
            raise ValueError("bracket wider than its certified cap")


GeometricSet = Union[Point, Box, DigitalSet]


def volume(box: Box) -> Fraction:
    v = Fraction(1)
    for lo, hi in box.intervals:
        v *= hi - lo
    return v


def min_side(box: Box) -> Fraction:
    return min(hi - lo for lo, hi in box.intervals)


def diam_sq(box: Box) -> Fraction:
    return sum(((hi - lo) ** 2 for lo, hi in box.intervals), Fraction(0))


def _box_gap_sq(a: Box, b: Box) -> Fraction:
    total = Fraction(0)
    for (alo, ahi), (blo, bhi) in zip(a.intervals, b.intervals):
        gap = max(blo - ahi, alo - bhi)
        if gap > 0:
            total += gap * gap
    return total


def _dim(obj: GeometricSet) -> int:
    return obj.n


def _as_boxes(obj: GeometricSet) -> list[Box]:
    if isinstance(obj, Point):
        return [Box(tuple((c, c) for c in obj.coords))]
    if isinstance(obj, Box):
        return [obj]
    if isinstance(obj, DigitalSet):
        return obj.boxes()
    raise TypeError(f"unsupported geometric object: {type(obj)!r}")


def _dist_sq_digital(a: DigitalSet, b: DigitalSet) -> Fraction:
    # common integer scale keeps the whole pair loop in integer arithmetic
    scale = lcm(a.b**a.m, b.b**b.m)
    fa, fb = scale // a.b**a.m, scale // b.b**b.m
    best: int | None = None
    for ca in a.cells:
        for cb in b.cells:
            total = 0
            for ja, jb in zip(ca, cb):
                gap = max(jb * fb - (ja + 1) * fa, ja * fa - (jb + 1) * fb)
                if gap > 0:
                    total += gap * gap
                    if best is not None and total >= best:
                        break
            else:
                if best is None or total < best:
                    best = total
                    if best == 0:
                        return Fraction(0)
    assert best is not None
    return Fraction(best, scale * scale)


def dist_sq(a: GeometricSet, b: GeometricSet) -> Fraction:
    """Exact squared Euclidean distance between two compact sets.

    Zero exactly when the (closed) sets intersect.
    """
    if _dim(a) != _dim(b):
        raise ValueError("dimension mismatch")
    if isinstance(a, DigitalSet) and isinstance(b, DigitalSet):
        return _dist_sq_digital(a, b)
    boxes_a, boxes_b = _as_boxes(a), _as_boxes(b)
    best: Fraction | None = None
    for ba in boxes_a:
        for bb in boxes_b:
            d = _box_gap_sq(ba, bb)
            if best is None or d < best:
                best = d
                if best == 0:
                    return Fraction(0)
    assert best is not None
    return best


def _contains(piece: Box, lo: tuple, hi: tuple) -> bool:
    return all(
        plo <= tlo and thi <= phi
        for (plo, phi), tlo, thi in zip(piece.intervals, lo, hi)
    )


def _touches(piece: Box, lo: tuple, hi: tuple) -> bool:
    return all(
        plo <= thi and tlo <= phi
        for (plo, phi), tlo, thi in zip(piece.intervals, lo, hi)
    )


def covers_box(target: Box, pieces: Sequence[Box]) -> bool:
    """Exact decision of target ⊆ union(pieces), all boxes closed.

    Recursively splits the target along piece boundaries that cross its
    interior.  Once no piece boundary crosses a sub-box, the sub-box is
    covered iff a single piece contains it, which makes the verdict exact.
    """
    n = target.n
    for p in pieces:
        if p.n != n:
            raise ValueError("dimension mismatch")

    def rec(lo: tuple, hi: tuple, live: list[Box]) -> bool:
        live = [p for p in live if _touches(p, lo, hi)]
        for p in live:
            if _contains(p, lo, hi):
                return True
        for p in live:
            for axis, (plo, phi) in enumerate(p.intervals):
                for v in (plo, phi):
                    if lo[axis] < v < hi[axis]:
                        left_hi = hi[:axis] + (v,) + hi[axis + 1 :]
                        right_lo = lo[:axis] + (v,) + lo[axis + 1 :]
                        return rec(lo, left_hi, live) and rec(right_lo, hi, live)
        return False

    lo = tuple(iv[0] for iv in target.intervals)
    hi = tuple(iv[1] for iv in target.intervals)
    return rec(lo, hi, list(pieces))


def _directed_max_min_dist_sq(
    cells_a: Sequence[tuple[int, ...]],
    cells_b: Sequence[tuple[int, ...]],
    b_lookup: frozenset,
) -> int:
    # centers of A-cells against the union of B-cells, doubled-grid integers
    worst = 0
    for ca in cells_a:
        if ca in b_lookup:
            continue
        best: int | None = None
        for cb in cells_b:
            total = 0
            for ja, jb in zip(ca, cb):
                c = 2 * ja + 1
                gap = max(2 * jb - c, c - 2 * jb - 2)
                if gap > 0:
                    total += gap * gap
                    if best is not None and total >= best:
                        break
            else:
                if best is None or total < best:
                    best = total
                    if best == 0:
                        break
        assert best is not None
        if best > worst:
            worst = best
    return worst


def hausdorff_bracket(
    a: DigitalSet, b: DigitalSet, sample_depth: int, prec: int = DEFAULT_PRECISION
) -> HBracket:
    """Certified bracket around the Hausdorff distance of two digital sets.

    Both sets are refined to ``sample_depth``; cell centers sample each set
    exactly, and the 1-Lipschitz dependence of the distance function bounds
    the sampling error by half a cell diameter.
    """
    if a.n != b.n:
        raise ValueError("dimension mismatch")
    if a.b != b.b:
        raise ValueError("base mismatch")
    if sample_depth < max(a.m, b.m):
        raise ValueError("sample depth must refine both sets")
    ar = a.refine(sample_depth)
    br = b.refine(sample_depth)
    d2 = max(
        _directed_max_min_dist_sq(ar.cells, br.cells, frozenset(br.cells)),
        _directed_max_min_dist_sq(br.cells, ar.cells, frozenset(ar.cells)),
    )
    unit = 2 * a.b**sample_depth
    # keep the enclosure grid fine enough for the certified width cap
    eff = max(prec, unit * unit)
    sq = Fraction(d2, unit * unit)
    root_n_up = root_upper(Fraction(a.n), 2, eff)
    half_cell = root_n_up / unit
    lo = root_lower(sq, 2, eff)
    hi = root_upper(sq, 2, eff) + half_cell
    cap = root_n_up * Fraction(1, a.b**sample_depth)
    return HBracket(lo=lo, hi=hi, sample_depth=sample_depth, width_cap=cap)
