"""Cover certificates with shrinking volume budgets, and their verifiers.

A ``CoverSeq`` claims that its pieces cover some digital set while the
k-th piece (1-based) has Lebesgue measure at most ``eps**k``.  Claims are
never trusted: ``verify_cover`` decides budgets and coverage exactly, the
greedy searcher re-verifies anything it emits, and failed searches are
reported as data rather than as refutations.

Ball specifications (finite unions of boxes open relative to the unit
cube, each required to meet the set) get an exact membership decision and
a certified stability radius for the Hausdorff metric.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .geometry import Box, Cube, DigitalSet, Point, covers_box, dist_sq, volume
from .rational import DEFAULT_PRECISION, pow_lower, pow_upper, root_lower


@dataclass(frozen=True)
class CoverSeq:
    """Ordered cover pieces under the budget volume(piece_k) <= eps**k.

    The budget is a claim checked by ``verify_cover``, not a constructor
    guarantee, so defective certificates stay representable.  ``strong``
    asserts the geometric cube shape of every piece and is enforced here.
    """

    n: int
    eps: Fraction
    strong: bool
    pieces: tuple[Box, ...]

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "pieces", tuple(self.pieces))
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if not (0 < self.eps < 1):
            raise ValueError("eps must lie strictly between 0 and 1")
        for piece in self.pieces:
            if piece.n != self.n:
                raise ValueError("piece dimension mismatch")
            if self.strong:
                sides = piece.sides()
                if len(set(sides)) != 1 or sides[0] <= 0:
                    raise ValueError("strong cover pieces must be cubes")

    def budget(self, k: int) -> Fraction:
        return self.eps**k


@dataclass(frozen=True)
class CoverReport:
    budget_ok: bool
    coverage_ok: bool
    first_violation: tuple[int, str] | None
    uncovered_witness: tuple[int, ...] | None

    @property
    def ok(self) -> bool:
        return self.budget_ok and self.coverage_ok


@dataclass(frozen=True)
class GreedyFailure:
    """Search gave up: 'budget-infeasible' is certified, the rest are not."""

    reason: str
    position: int
    uncovered: int


@dataclass(frozen=True)
class BallSpec:
    """Finite tuple of boxes open relative to [0,1]^n.

    Interval bounds may spill outside the unit cube; membership is always
    taken strictly (lo < x < hi) and then intersected with the cube, so a
    face lying on the cube boundary stays available as relative interior.
    """

    n: int
    boxes: tuple[Box, ...]

    def __post_init__(self):
        object.__setattr__(self, "boxes", tuple(self.boxes))
        if self.n < 1:
            raise ValueError("dimension must be >= 1")
        if not self.boxes:
            raise ValueError("ball spec needs at least one box")
        for box in self.boxes:
            if box.n != self.n:
                raise ValueError("box dimension mismatch")
            for lo, hi in box.intervals:
                if not (max(lo, 0) < min(hi, 1)):
                    raise ValueError("box has empty interior relative to the cube")


def verify_cover(e: DigitalSet, cover: CoverSeq) -> CoverReport:
    """Exact budget and coverage verdicts for a claimed cover of e."""
    if e.n != cover.n:
        raise ValueError("dimension mismatch")
    first_violation = None
    for k, piece in enumerate(cover.pieces, start=1):
        if volume(piece) > cover.budget(k):
            first_violation = (k, "budget")
            break
    witness = None
    pieces = list(cover.pieces)
    for cell in e.cells:
        if not covers_box(e.cell_box(cell), pieces):
            witness = cell
            break
    return CoverReport(
        budget_ok=first_violation is None,
        coverage_ok=witness is None,
        first_violation=first_violation,
        uncovered_witness=witness,
    )


def _morton_key(cell: tuple[int, ...], width: int) -> int:
    key = 0
    for bit in range(width - 1, -1, -1):
        for j in cell:
            key = (key << 1) | ((j >> bit) & 1)
    return key


def _swallowed(cell: tuple[int, ...], cs: Fraction, lo: tuple[Fraction, ...], side: Fraction) -> bool:
    return all(l <= j * cs and (j + 1) * cs <= l + side for j, l in zip(cell, lo))


def greedy_strong_cover(
    e: DigitalSet,
    eps: Fraction,
    max_pieces: int,
    prec: int = DEFAULT_PRECISION,
) -> CoverSeq | GreedyFailure:
    """Greedy search for a verified strong cover of e at budget eps.

    Cells are processed in Morton (bit-interleaved) order.  Position k
    emits the largest admissible cube, side a certified lower enclosure of
    eps**(k/n), anchored at the first uncovered cell and clamped into the
    unit cube.  A failure is only a refutation when the side-sum bound
    certifies that the remaining budget cannot span the uncovered cells'
    projection; otherwise the result is inconclusive by design.
    """
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise ValueError("eps must lie strictly between 0 and 1")
    if max_pieces < 1:
        raise ValueError("max_pieces must be >= 1")
    n, cs = e.n, e.cell_side
    width = (e.b**e.m - 1).bit_length() or 1
    order = sorted(e.cells, key=lambda c: (_morton_key(c, width), c))
    uncovered = set(order)
    root_lo = pow_lower(eps, 1, n, prec)
    pieces: list[Cube] = []
    k = 0
    while uncovered:
        if len(pieces) >= max_pieces:
            return GreedyFailure("max-pieces", position=k + 1, uncovered=len(uncovered))
        k += 1
        side = max(pow_lower(eps, k, n, prec), root_lo**k)
        if side < cs:
            return _certify_infeasible(e, uncovered, k, eps, prec)
        target = next(c for c in order if c in uncovered)
        lo = tuple(min(j * cs, 1 - side) for j in target)
        pieces.append(Cube.at_corner(lo, side))
        uncovered = {c for c in uncovered if not _swallowed(c, cs, lo, side)}
    cover = CoverSeq(n=n, eps=eps, strong=True, pieces=tuple(pieces))
    report = verify_cover(e, cover)
    if not report.ok:
        raise AssertionError("greedy emitted a cover that fails verification")
    return cover


def _certify_infeasible(
    e: DigitalSet, uncovered: set, position: int, eps: Fraction, prec: int
) -> GreedyFailure:
    # refutes any cover of e, not just this search: the total side budget
    # must span the projection of the whole set on every axis
    r = pow_upper(eps, 1, e.n, prec)
    if r < 1:
        total = r / (1 - r)
        needed = max(
            len({c[axis] for c in e.cells}) * e.cell_side for axis in range(e.n)
        )
        if total < needed:
            return GreedyFailure(
                "budget-infeasible", position=position, uncovered=len(uncovered)
            )
    return GreedyFailure("stalled", position=position, uncovered=len(uncovered))


def side_budget_sum(
    eps: Fraction, n: int, terms: int, prec: int = DEFAULT_PRECISION
) -> Fraction:
    """Certified upper bound of sum_{k>=1} eps**(k/n).

    Finite prefix of per-term upper enclosures plus the geometric tail
    r**(terms+1)/(1-r) with r an upper enclosure of eps**(1/n).  When the
    value is below the extent of a set's projection, no strong cover at
    budget eps can exist for that set.
    """
    eps = Fraction(eps)
    if not (0 < eps < 1):
        raise ValueError("eps must lie strictly between 0 and 1")
    if n < 1 or terms < 0:
        raise ValueError("bad arguments")
    r = pow_upper(eps, 1, n, prec)
    while r >= 1:
        prec *= 10
        r = pow_upper(eps, 1, n, prec)
    partial = sum(
        (min(pow_upper(eps, k, n, prec), r**k) for k in range(1, terms + 1)),
        Fraction(0),
    )
    tail = r ** (terms + 1) / (1 - r)
    return partial + tail


def merge_covers(covers: Sequence[CoverSeq], eps: Fraction) -> CoverSeq:
    """Interleave m covers with strengthened budgets into one eps-cover.

    Requires every input cover to satisfy the budget (eps**m)**k at its own
    positions; piece k of cover i then lands at global position
    (k-1)*m + i or earlier, where the eps**position budget holds because
    position <= k*m.  Ragged inputs are compacted, which only ever moves a
    piece to an earlier (more generous) position.
    """
    eps = Fraction(eps)
    if not covers:
        raise ValueError("need at least one cover")
    if not (0 < eps < 1):
        raise ValueError("eps must lie strictly between 0 and 1")
    m = len(covers)
    n = covers[0].n
    strong = covers[0].strong
    strengthened = eps**m
    for i, cover in enumerate(covers, start=1):
        if cover.n != n:
            raise ValueError("dimension mismatch between covers")
        if cover.strong != strong:
            raise ValueError("cannot merge strong with non-strong covers")
        for k, piece in enumerate(cover.pieces, start=1):
            if volume(piece) > strengthened**k:
                raise ValueError(
                    f"cover {i} piece {k} exceeds the strengthened budget"
                )
    pieces = []
    for k in range(1, 1 + max(len(c.pieces) for c in covers)):
        for cover in covers:
            if k <= len(cover.pieces):
                pieces.append(cover.pieces[k - 1])
    merged = CoverSeq(n=n, eps=eps, strong=strong, pieces=tuple(pieces))
    for k, piece in enumerate(merged.pieces, start=1):
        if volume(piece) > merged.budget(k):
            raise AssertionError("merge produced an over-budget piece")
    return merged


def cover_measure_upper(
    cover: CoverSeq, alpha: Fraction, terms: int, prec: int = DEFAULT_PRECISION
) -> Fraction:
    """Certified upper bound of sum_k (diam piece_k)**alpha for a strong cover.

    Cube diameters obey diam <= sqrt(n) * eps**(k/n), so the sum is bounded
    by n**(alpha/2) * sum_k eps**(alpha*k/n), evaluated as a finite prefix
    plus geometric tail with every enclosure directed upward.
    """
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    if terms < 0:
        raise ValueError("terms must be >= 0")
    if not cover.strong:
        raise ValueError("measure bound requires a strong cover")
    for k, piece in enumerate(cover.pieces, start=1):
        if volume(piece) > cover.budget(k):
            raise ValueError("cover does not satisfy its budget")
    a, q = alpha.numerator, alpha.denominator
    n = cover.n
    u = pow_upper(cover.eps, a, q * n, prec)
    while u >= 1:
        prec *= 10
        u = pow_upper(cover.eps, a, q * n, prec)
    scale = pow_upper(Fraction(n), a, 2 * q, prec)
    partial = sum(
        (min(pow_upper(cover.eps, a * k, q * n, prec), u**k) for k in range(1, terms + 1)),
        Fraction(0),
    )
    tail = u ** (terms + 1) / (1 - u)
    return scale * (partial + tail)


def strong_cover_witness(
    e: DigitalSet, s: int, max_pieces: int, prec: int = DEFAULT_PRECISION
) -> CoverSeq | None:
    """Verified strong cover of e at budget 1/s, or None when inconclusive."""
    if s < 2:
        raise ValueError("scale s must be >= 2")
    result = greedy_strong_cover(e, Fraction(1, s), max_pieces, prec)
    return result if isinstance(result, CoverSeq) else None


def _strictly_inside(point: Point, box: Box) -> bool:
    return all(lo < c < hi for c, (lo, hi) in zip(point.coords, box.intervals))


def _open_union_contains(target: Box, boxes: Sequence[Box]) -> bool:
    """Exact decision of target ⊆ union of relative-open boxes.

    Builds the arrangement of box bounds inside the target and samples one
    point per arrangement atom (bound values and midpoints); strict
    membership is constant on each atom, so the sample decides it.
    """
    # single-box fast path
    for box in boxes:
        if all(
            blo < tlo and thi < bhi
            for (blo, bhi), (tlo, thi) in zip(box.intervals, target.intervals)
        ):
            return True
    axis_candidates: list[list[Fraction]] = []
    for axis, (tlo, thi) in enumerate(target.intervals):
        breaks = {tlo, thi}
        for box in boxes:
            for v in box.intervals[axis]:
                if tlo < v < thi:
                    breaks.add(v)
        ordered = sorted(breaks)
        cands = list(ordered)
        cands += [(x + y) / 2 for x, y in zip(ordered, ordered[1:])]
        axis_candidates.append(cands)
    for coords in itertools.product(*axis_candidates):
        if not any(
            all(blo < c < bhi for c, (blo, bhi) in zip(coords, box.intervals))
            for box in boxes
        ):
            return False
    return True


def ball_membership(k_set: DigitalSet, ball: BallSpec) -> bool:
    """Exact decision: k_set inside the union, and every box meets k_set."""
    if k_set.n != ball.n:
        raise ValueError("dimension mismatch")
    for cell in k_set.cells:
        if not _open_union_contains(k_set.cell_box(cell), ball.boxes):
            return False
    scale = k_set.b**k_set.m
    for box in ball.boxes:
        if not any(
            all(blo * scale < j + 1 and j < bhi * scale for j, (blo, bhi) in zip(cell, box.intervals))
            for cell in k_set.cells
        ):
            return False
    return True


def _complement_slabs(box: Box) -> list[list[Box]]:
    """Per-axis closed slabs of [0,1]^n minus a relative-open box."""
    n = box.n
    unit = [(Fraction(0), Fraction(1))] * n
    slabs = []
    for axis, (lo, hi) in enumerate(box.intervals):
        here = []
        if lo >= 0:
            ivs = list(unit)
            ivs[axis] = (Fraction(0), lo)
            here.append(Box(tuple(ivs)))
        if hi <= 1:
            ivs = list(unit)
            ivs[axis] = (hi, Fraction(1))
            here.append(Box(tuple(ivs)))
        slabs.append(here)
    return [s for s in slabs if s]


def _intersect_boxes(boxes: Sequence[Box]) -> Box | None:
    n = boxes[0].n
    ivs = []
    for axis in range(n):
        lo = max(b.intervals[axis][0] for b in boxes)
        hi = min(b.intervals[axis][1] for b in boxes)
        if lo > hi:
            return None
        ivs.append((lo, hi))
    return Box(tuple(ivs))


def ball_stability_radius(
    k_set: DigitalSet,
    ball: BallSpec,
    witnesses: Sequence[Point],
    prec: int = DEFAULT_PRECISION,
) -> Fraction:
    """Certified radius within which Hausdorff-perturbations stay in the ball.

    Every compact subset of the unit cube within Hausdorff distance of the
    returned value from k_set still lies in the same ball.  Per-box radii
    come from the witness's distance to the in-cube complement of its box
    (or the box's clipped minimal side when the witness sits on a cube
    vertex); the global radius adds the distance from k_set to the in-cube
    complement of the union, or 1 when the union exhausts the cube.  The
    result is exact except when a Euclidean root is needed, in which case
    a certified lower enclosure is returned.
    """
    if k_set.n != ball.n:
        raise ValueError("dimension mismatch")
    if len(witnesses) != len(ball.boxes):
        raise ValueError("need exactly one witness per box")
    if not ball_membership(k_set, ball):
        raise ValueError("set is not a member of the ball")
    scale = k_set.b**k_set.m
    radii: list[Fraction] = []
    for point, box in zip(witnesses, ball.boxes):
        if point.n != ball.n:
            raise ValueError("witness dimension mismatch")
        if not _strictly_inside(point, box):
            raise ValueError("witness must lie strictly inside its box")
        if not any(
            all(j <= c * scale <= j + 1 for c, j in zip(point.coords, cell))
            for cell in k_set.cells
        ):
            raise ValueError("witness must lie in the set")
        if all(c in (0, 1) for c in point.coords):
            clipped = min(
                min(hi, Fraction(1)) - max(lo, Fraction(0))
                for lo, hi in box.intervals
            )
            radii.append(clipped)
            continue
        gaps = []
        for c, (lo, hi) in zip(point.coords, box.intervals):
            if lo >= 0:
                gaps.append(c - lo)
            if hi <= 1:
                gaps.append(hi - c)
        if gaps:
            radii.append(min(gaps))
    unit_box = Box(tuple((Fraction(0), Fraction(1)) for _ in range(ball.n)))
    if _open_union_contains(unit_box, ball.boxes):
        radii.append(Fraction(1))
        return min(radii)
    slab_families = [_complement_slabs(box) for box in ball.boxes]
    if any(not family for family in slab_families):
        radii.append(Fraction(1))
        return min(radii)
    complement_sq: Fraction | None = None
    for choice in itertools.product(*(itertools.chain(*f) for f in slab_families)):
        region = _intersect_boxes(list(choice))
        if region is None:
            continue
        d = dist_sq(k_set, region)
        if complement_sq is None or d < complement_sq:
            complement_sq = d
    if complement_sq is None:
        radii.append(Fraction(1))
        return min(radii)
    if complement_sq == 0:
        raise AssertionError("membership held but the complement touches the set")
    best = min(radii) if radii else None
    if best is not None and best * best <= complement_sq:
        return best
    return root_lower(complement_sq, 2, prec)
