"""Normal coordinates of a second curve system relative to a pants decomposition.

A multicurve transverse to the decomposition is recorded per curve c_i as
a pair (m_i, t_i): the geometric intersection count with c_i and an
integer twist measured in whole marked-point shifts.  Inside each pants
the multicurve is carried by the canonical normal arc pattern determined
by the three slot multiplicities; across each curve the marked points are
matched by the shift-and-maybe-reverse rule below.

Point matching across a curve with m points and twist t: point k of
side_a meets point ``(sigma(k) + t) mod m`` of side_b, where sigma is the
identity for an unreversed gluing and ``k -> m-1-k`` for a reversed one.
A full Dehn twist along the curve is exactly ``t -> t + m``, so twists in
point units make the twist action integral with no fractional bookkeeping.

Canonical arc pattern in a pants with slot multiplicities (m_0, m_1, m_2):
``x_jk`` parallel seam arcs join slots j and k, and ``s_j`` same-boundary
arcs sit at slot j (each separating the other two slots; these are exactly
the surface-level wave patterns).  Walking slot j from its basepoint, the
endpoint order is

    [x_{j,j+1} seam block] [s_j near ends] [x_{j,j+2} seam block] [s_j far ends]

with seam blocks pairing in reversed order across the two slots and the
same-boundary family nested rainbow-fashion around the x_{j,j+2} block.
The same-boundary endpoints must straddle the x_{j,j+2} block: a s_j arc
separates the other two slots, so arcs to either flanking slot have to
attach inside the corresponding complementary region.  (A single
contiguous block of same-boundary endpoints would trap one flanking slot
behind an innermost arc, which is impossible whenever both flanking
multiplicities are positive, e.g. multiplicities (6, 1, 1).)
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DiagramError
from .topology import PantsComplex, ValidationResult, _fail


@dataclass(frozen=True)
class DTCoordinates:
    """Per-curve (intersection count, twist) vectors, indexed by curve."""

    m: tuple[int, ...]
    t: tuple[int, ...]

    def __post_init__(self):
        if len(self.m) != len(self.t):
            raise DiagramError(
                "coordinate vectors disagree in length: %d m values, %d t values"
                % (len(self.m), len(self.t))
            )

    @property
    def curve_count(self) -> int:
        return len(self.m)

    def total_intersections(self) -> int:
        return sum(self.m)


@dataclass(frozen=True)
class Arc:
    """One normal arc of a pants pattern.

    ``kind`` is ``("seam", j, k)`` with j < k, or ``("wave", j)`` for a
    same-boundary arc at slot j.  ``ends`` are the two (slot, position)
    endpoints; for waves, index 0 nests innermost.
    """

    index: int
    kind: tuple
    ends: tuple[tuple[int, int], tuple[int, int]]


@dataclass(frozen=True)
class PantsArcPattern:
    """The canonical normal arc pattern for one multiplicity triple.

    ``x[(j, k)]`` (j < k) counts the seam arcs between slots j and k,
    ``s[j]`` the same-boundary arcs at slot j, and ``layout[j]`` lists the
    (arc index, end) labels along slot j in walk order.
    """

    m: tuple[int, int, int]
    x: tuple[tuple[tuple[int, int], int], ...]
    s: tuple[int, int, int]
    arcs: tuple[Arc, ...]
    layout: tuple[tuple[tuple[int, int], ...], ...]

    def x_between(self, j: int, k: int) -> int:
        return dict(self.x)[(min(j, k), max(j, k))]

    @property
    def arc_count(self) -> int:
        return len(self.arcs)


def _seam_counts(m0: int, m1: int, m2: int) -> tuple[dict, tuple[int, int, int]]:
    m = (m0, m1, m2)
    big = [j for j in range(3) if m[j] > m[(j + 1) % 3] + m[(j + 2) % 3]]
    x = {}
    s = [0, 0, 0]
    if not big:
        for j, k in ((0, 1), (0, 2), (1, 2)):
            l = 3 - j - k
            x[(j, k)] = (m[j] + m[k] - m[l]) // 2
    else:
        j = big[0]
        k, l = (j + 1) % 3, (j + 2) % 3
        x[(min(j, k), max(j, k))] = m[k]
        x[(min(j, l), max(j, l))] = m[l]
        x[(min(k, l), max(k, l))] = 0
        s[j] = (m[j] - m[k] - m[l]) // 2
    return x, tuple(s)


def expand_pants_arcs(m0: int, m1: int, m2: int) -> PantsArcPattern:
    """Expand a multiplicity triple into the canonical arc pattern.

    Raises on parity violation (the triple must have even sum).
    """
    if any(v < 0 for v in (m0, m1, m2)):
        raise DiagramError(
            "parity violation: multiplicities must be nonnegative, got (%d, %d, %d)"
            % (m0, m1, m2),
            code="negative-multiplicity",
        )
    if (m0 + m1 + m2) % 2 != 0:
        raise DiagramError(
            "parity violation: multiplicity triple (%d, %d, %d) has odd sum"
            % (m0, m1, m2),
            code="parity",
        )
    m = (m0, m1, m2)
    x, s = _seam_counts(m0, m1, m2)
    arcs: list[Arc] = []
    layout: list[list] = [[None] * m[j] for j in range(3)]

    def block_start(j: int, which: int) -> int:
        # Blocks on slot j: 0 = seams to j+1, 1 = wave near ends,
        # 2 = seams to j+2, 3 = wave far ends.
        xa = x[(min(j, (j + 1) % 3), max(j, (j + 1) % 3))]
        xb = x[(min(j, (j + 2) % 3), max(j, (j + 2) % 3))]
        sj = s[j]
        return [0, xa, xa + sj, xa + sj + xb][which]

    # Seam families, one per cyclic slot pair (j, j+1): arc q runs from
    # position q of j's leading block to position count-1-q of (j+1)'s
    # trailing block (parallel bands reverse the walk order).
    for j in range(3):
        k = (j + 1) % 3
        count = x[(min(j, k), max(j, k))]
        for q in range(count):
            pj = block_start(j, 0) + q
            pk = block_start(k, 2) + (count - 1 - q)
            arc = Arc(
                index=len(arcs),
                kind=("seam", min(j, k), max(j, k)),
                ends=(((j, pj)), ((k, pk))),
            )
            arcs.append(arc)
            layout[j][pj] = (arc.index, 0)
            layout[k][pk] = (arc.index, 1)
    # Same-boundary family at slot j (at most one j has s_j > 0): arc w
    # nests innermost-first around the x_{j,j+2} block.
    for j in range(3):
        sj = s[j]
        for w in range(sj):
            pa = block_start(j, 1) + (sj - 1 - w)
            pb = block_start(j, 3) + w
            arc = Arc(index=len(arcs), kind=("wave", j), ends=((j, pa), (j, pb)))
            arcs.append(arc)
            layout[j][pa] = (arc.index, 0)
            layout[j][pb] = (arc.index, 1)
    for j in range(3):
        assert all(e is not None for e in layout[j])
    return PantsArcPattern(
        m=m,
        x=tuple(sorted(x.items())),
        s=s,
        arcs=tuple(arcs),
        layout=tuple(tuple(row) for row in layout),
    )


def pants_multiplicities(pc: PantsComplex, coords: DTCoordinates, pants: int) -> tuple[int, int, int]:
    table = pc.slot_table()
    return tuple(coords.m[table[(pants, s)][0]] for s in (0, 1, 2))


def validate_coords(pc: PantsComplex, coords: DTCoordinates) -> ValidationResult:
    """Parity at every pants, twist only on met curves, sane lengths."""
    if coords.curve_count != pc.curve_count:
        return _fail(
            "bad-counts",
            "expected coordinates for %d curves, got %d"
            % (pc.curve_count, coords.curve_count),
            expected=pc.curve_count,
            got=coords.curve_count,
        )
    for i, (m, t) in enumerate(zip(coords.m, coords.t)):
        if m < 0:
            return _fail(
                "negative-multiplicity",
                "curve %d has negative multiplicity %d" % (i, m),
                curve=i,
            )
        if m == 0 and t != 0:
            return _fail(
                "twist-on-unmet-curve",
                "twist on unmet curve: curve %d has m=0 but t=%d" % (i, t),
                curve=i,
                t=t,
            )
    for p in range(pc.pants_count):
        triple = pants_multiplicities(pc, coords, p)
        if sum(triple) % 2 != 0:
            return _fail(
                "parity",
                "parity violation at pants %d: slot multiplicities %s have odd sum"
                % (p, (triple,)),
                pants=p,
                multiplicities=triple,
            )
    return ValidationResult(ok=True)


def require_valid_coords(pc: PantsComplex, coords: DTCoordinates) -> None:
    res = validate_coords(pc, coords)
    if not res.ok:
        raise DiagramError(res.message, code=res.code, detail=res.detail_dict())


def apply_twist(coords: DTCoordinates, curve: int, power: int) -> DTCoordinates:
    """Dehn twist ``power`` times along a decomposition curve.

    Acts as t_i -> t_i + power * m_i and fixes every multiplicity; with
    m_i = 0 it is the identity.  Powers add and distinct curves commute.
    """
    t = list(coords.t)
    t[curve] += power * coords.m[curve]
    return DTCoordinates(m=coords.m, t=tuple(t))


# ---------------------------------------------------------------------------
# Point matching across a gluing (the one convention everything shares)
# ---------------------------------------------------------------------------


def side_b_position(gluing, m: int, t: int, k: int) -> int:
    """Side_b position of the curve point numbered k on side_a."""
    q = (m - 1 - k) if gluing.reversed else k
    return (q + t) % m


def side_a_point(gluing, m: int, t: int, q: int) -> int:
    """Curve point index of the marked point at side_b position q."""
    r = (q - t) % m
    return (m - 1 - r) if gluing.reversed else r


def point_at_position(gluing, m: int, t: int, side: str, pos: int) -> int:
    """Curve point index of the marked point at ``pos`` on the given side."""
    return pos if side == "a" else side_a_point(gluing, m, t, pos)


def position_of_point(gluing, m: int, t: int, side: str, k: int) -> int:
    return k if side == "a" else side_b_position(gluing, m, t, k)


def edge_interval(gluing, m: int, t: int, side: str, k: int) -> int:
    """Slot position p of the boundary interval covered by curve edge (k, k+1).

    The edge between consecutive curve points k and k+1 spans one interval
    between adjacent marked points on each side's slot circle; the interval
    is named by the position it starts from in that side's walk.  On a
    reversed gluing the side_b walk traverses the edge from point k+1 to
    point k, so the interval starts at position f(k+1); unreversed, at
    f(k).  (Deciding by cyclic adjacency instead would be ambiguous at
    m = 2, where the two points bound two parallel edges.)
    """
    if side == "a":
        return k % m
    if gluing.reversed:
        return side_b_position(gluing, m, t, (k + 1) % m)
    return side_b_position(gluing, m, t, k % m)
