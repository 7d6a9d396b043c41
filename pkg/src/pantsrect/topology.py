"""Pants decompositions of a closed orientable genus-g surface, g >= 2.

A pants decomposition cuts the surface into 2g-2 pairs of pants along
3g-3 disjoint essential curves.  Here the decomposition is stored purely
combinatorially: each pants has three boundary *slots* (0, 1, 2) and each
curve records the two (pants, slot) attachments it glues, plus a gluing
flag used downstream to match marked points across the curve.  Self-glued
pants (a curve attached twice to the same pants at different slots) are
allowed; the pair of slots is the faithful object, not the pair of curves.

Orientation conventions (fixed once and consumed by every other module):
each pants carries the surface orientation, each slot circle the induced
boundary orientation (pants on the left), and marked points on a slot are
numbered from a per-slot basepoint along that induced orientation.  A
curve is oriented by its ``side_a`` walk, so the ``side_a`` pants lies on
its left and the ``side_b`` pants on its right.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass


@dataclass(frozen=True)
class Gluing:
    """One decomposition curve: its two (pants, slot) sides and the gluing flag.

    ``reversed`` controls how marked-point indices match across the curve
    (see :mod:`pantsrect.coordinates`): point k of side_a meets point
    ``(sigma(k) + t) mod m`` of side_b, where sigma is the identity when
    ``reversed`` is False and index reversal when True.
    """

    curve: int
    side_a: tuple[int, int]
    side_b: tuple[int, int]
    reversed: bool


@dataclass(frozen=True)
class PantsComplex:
    """A glued-up pants decomposition of the closed genus-g surface."""

    genus: int
    gluings: tuple[Gluing, ...]

    @property
    def pants_count(self) -> int:
        return 2 * self.genus - 2

    @property
    def curve_count(self) -> int:
        return 3 * self.genus - 3

    def gluing(self, curve: int) -> Gluing:
        return self.gluings[curve]

    def sides_of(self, curve: int) -> tuple[tuple[int, int], tuple[int, int]]:
        g = self.gluings[curve]
        return g.side_a, g.side_b

    def slot_table(self) -> dict[tuple[int, int], tuple[int, str]]:
        """Map every (pants, slot) to (curve, side) with side in {'a','b'}."""
        table: dict[tuple[int, int], tuple[int, str]] = {}
        for g in self.gluings:
            table[g.side_a] = (g.curve, "a")
            table[g.side_b] = (g.curve, "b")
        return table

    def curve_at(self, pants: int, slot: int) -> int:
        return self.slot_table()[(pants, slot)][0]


@dataclass(frozen=True)
class AdjacentPair:
    """Two distinct slots of one pants, joined by the essential seam arc.

    The two underlying curves may coincide (self-glued pants); ``curves``
    is aligned with ``slots``.
    """

    pants: int
    slots: tuple[int, int]
    curves: tuple[int, int]

    @property
    def key(self) -> str:
        return "p%d:%d%d" % (self.pants, self.slots[0], self.slots[1])


@dataclass(frozen=True)
class AdjacentTriple:
    """A middle curve plus one flanking slot on each of its two sides.

    ``left`` flanks the ``side_a`` pants of the middle curve, ``right``
    the ``side_b`` pants; each flank is a (pants, slot) with the slot
    distinct from the middle curve's own slot on that pants.  Every curve
    carries exactly four triples (2 x 2 flank choices).
    """

    curve: int
    left: tuple[int, int]
    right: tuple[int, int]

    @property
    def key(self) -> str:
        return "c%d:p%ds%d|p%ds%d" % (
            self.curve,
            self.left[0],
            self.left[1],
            self.right[0],
            self.right[1],
        )


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    code: str = "ok"
    message: str = ""
    detail: tuple[tuple[str, object], ...] = ()

    def detail_dict(self) -> dict:
        return dict(self.detail)


def _fail(code: str, message: str, **detail) -> ValidationResult:
    return ValidationResult(
        ok=False,
        code=code,
        message=message,
        detail=tuple(sorted(detail.items())),
    )


def validate_pants_complex(pc: PantsComplex) -> ValidationResult:
    """Check the structural invariants; report the first violation found.

    Check order: genus and counts, well-formed attachments, the perfect
    matching of the 6g-6 slots (matched twice before unmatched), then
    connectivity of the gluing graph.
    """
    if pc.genus < 2:
        return _fail("bad-genus", "genus must be >= 2, got %d" % pc.genus, genus=pc.genus)
    n_curves = 3 * pc.genus - 3
    n_pants = 2 * pc.genus - 2
    if len(pc.gluings) != n_curves:
        return _fail(
            "bad-counts",
            "expected %d curves for genus %d, got %d" % (n_curves, pc.genus, len(pc.gluings)),
            expected=n_curves,
            got=len(pc.gluings),
        )
    seen_curves = [g.curve for g in pc.gluings]
    if sorted(seen_curves) != list(range(n_curves)):
        return _fail(
            "bad-counts",
            "curve indices must be exactly 0..%d" % (n_curves - 1),
            got=tuple(seen_curves),
        )
    for g in pc.gluings:
        for side in (g.side_a, g.side_b):
            p, s = side
            if not (0 <= p < n_pants):
                return _fail(
                    "bad-counts",
                    "curve %d attaches to pants %d, but genus %d has pants 0..%d"
                    % (g.curve, p, pc.genus, n_pants - 1),
                    curve=g.curve,
                    pants=p,
                )
            if s not in (0, 1, 2):
                return _fail(
                    "bad-slot",
                    "curve %d attaches to slot %d; slots are 0, 1, 2" % (g.curve, s),
                    curve=g.curve,
                    slot=s,
                )
    seen: dict[tuple[int, int], int] = {}
    for g in pc.gluings:
        for side in (g.side_a, g.side_b):
            if side in seen:
                return _fail(
                    "slot-matched-twice",
                    "slot matched twice: pants %d slot %d used by curves %d and %d"
                    % (side[0], side[1], seen[side], g.curve),
                    pants=side[0],
                    slot=side[1],
                    curves=(seen[side], g.curve),
                )
            seen[side] = g.curve
    for p in range(n_pants):
        for s in (0, 1, 2):
            if (p, s) not in seen:
                return _fail(
                    "slot-unmatched",
                    "slot unmatched: pants %d slot %d has no curve" % (p, s),
                    pants=p,
                    slot=s,
                )
    # Connectivity of the gluing graph (pants as nodes, curves as edges).
    adjacency: dict[int, set[int]] = {p: set() for p in range(n_pants)}
    for g in pc.gluings:
        adjacency[g.side_a[0]].add(g.side_b[0])
        adjacency[g.side_b[0]].add(g.side_a[0])
    reached = {0}
    frontier = [0]
    while frontier:
        p = frontier.pop()
        for q in adjacency[p]:
            if q not in reached:
                reached.add(q)
                frontier.append(q)
    if len(reached) != n_pants:
        missing = sorted(set(range(n_pants)) - reached)
        return _fail(
            "disconnected",
            "gluing graph is disconnected: pants %s unreachable from pants 0" % missing,
            unreachable=tuple(missing),
        )
    return ValidationResult(ok=True)


def require_valid(pc: PantsComplex) -> None:
    from .errors import DiagramError

    res = validate_pants_complex(pc)
    if not res.ok:
        raise DiagramError(res.message, code=res.code, detail=res.detail_dict())


def enumerate_adjacent_pairs(pc: PantsComplex) -> list[AdjacentPair]:
    """All 3(2g-2) slot pairs, ordered by pants then slot pair."""
    table = pc.slot_table()
    pairs = []
    for p in range(pc.pants_count):
        for s0, s1 in ((0, 1), (0, 2), (1, 2)):
            pairs.append(
                AdjacentPair(
                    pants=p,
                    slots=(s0, s1),
                    curves=(table[(p, s0)][0], table[(p, s1)][0]),
                )
            )
    return pairs


def enumerate_adjacent_triples(pc: PantsComplex) -> list[AdjacentTriple]:
    """All 4(3g-3) triples: per curve, the 2 x 2 flanking slot choices.

    Flanks run over the two slots of each side's pants other than the
    middle curve's own slot there; when the curve is self-glued this can
    flank the middle curve with itself, which is allowed.
    """
    triples = []
    for g in pc.gluings:
        (pa, sa), (pb, sb) = g.side_a, g.side_b
        left_slots = [s for s in (0, 1, 2) if s != sa]
        right_slots = [s for s in (0, 1, 2) if s != sb]
        for ls, rs in itertools.product(left_slots, right_slots):
            triples.append(AdjacentTriple(curve=g.curve, left=(pa, ls), right=(pb, rs)))
    return triples


# ---------------------------------------------------------------------------
# Reference topologies
# ---------------------------------------------------------------------------


def ring_topology(genus: int) -> PantsComplex:
    """The ring-with-chords pants graph, defined for every genus >= 2.

    Pants 0..2g-3 sit on a cycle (curve i joins pants i to pants i+1 mod n)
    and the remaining n/2 curves are the antipodal chords.  For genus 2
    this is the theta graph: two pants joined by three curves.
    """
    n = 2 * genus - 2
    gluings = []
    if genus == 2:
        for c in range(3):
            gluings.append(Gluing(curve=c, side_a=(0, c), side_b=(1, c), reversed=True))
        return PantsComplex(genus=2, gluings=tuple(gluings))
    for i in range(n):
        gluings.append(
            Gluing(curve=i, side_a=(i, 0), side_b=((i + 1) % n, 1), reversed=True)
        )
    for j in range(n // 2):
        gluings.append(
            Gluing(curve=n + j, side_a=(j, 2), side_b=(j + n // 2, 2), reversed=True)
        )
    return PantsComplex(genus=genus, gluings=tuple(gluings))


def genus2_theta() -> PantsComplex:
    """Two pants joined by three curves (no self-gluing)."""
    return ring_topology(2)


def genus2_dumbbell() -> PantsComplex:
    """Two self-glued pants joined by one bridge curve."""
    return PantsComplex(
        genus=2,
        gluings=(
            Gluing(curve=0, side_a=(0, 0), side_b=(0, 1), reversed=True),
            Gluing(curve=1, side_a=(0, 2), side_b=(1, 0), reversed=True),
            Gluing(curve=2, side_a=(1, 1), side_b=(1, 2), reversed=True),
        ),
    )


def genus3_with_handle() -> PantsComplex:
    """A genus-3 pants graph with one self-glued pants."""
    return PantsComplex(
        genus=3,
        gluings=(
            Gluing(curve=0, side_a=(0, 0), side_b=(0, 1), reversed=True),
            Gluing(curve=1, side_a=(0, 2), side_b=(1, 0), reversed=True),
            Gluing(curve=2, side_a=(1, 1), side_b=(2, 0), reversed=True),
            Gluing(curve=3, side_a=(2, 1), side_b=(3, 0), reversed=True),
            Gluing(curve=4, side_a=(2, 2), side_b=(3, 1), reversed=True),
            Gluing(curve=5, side_a=(1, 2), side_b=(3, 2), reversed=True),
        ),
    )


def reference_topologies(genus: int) -> list[PantsComplex]:
    """The stock of topologies used by tests and the random corpus."""
    if genus == 2:
        return [genus2_theta(), genus2_dumbbell()]
    if genus == 3:
        return [ring_topology(3), genus3_with_handle()]
    return [ring_topology(genus)]
