"""Wave detection, rectangle and double-rectangle enumeration, condition checks.

A rectangle is a length-4 face: two curve-edge sides in one pants and two
arc sides.  It qualifies for the slot pair its curve sides carry and for
the boundary-circle pair its arc sides lie on; either pair may degenerate
(both sides on one slot or one circle), in which case the rectangle
witnesses no condition cell.  A double rectangle is a pair of distinct
rectangle faces sharing an edge: sharing an arc edge covers (slot pair) x
(circle triple), sharing a curve edge covers (circle pair) x (slot triple).

The rectangle condition asks for at least one qualifying rectangle in
every (slot pair) x (circle pair) cell; the double rectangle condition
asks for a qualifying double rectangle in every (pair) x (triple) cell in
both directions, and implies the rectangle condition.  Both checks demand
that the second system actually bounds a pants decomposition (the
complement certificate); otherwise the verdict is REJECT with reason
"not a complete system".
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from .coordinates import DTCoordinates, require_valid_coords
from .errors import InternalInconsistencyError
from .intersection import (
    B_SIDE_A,
    B_SIDE_B,
    IntersectionComplex,
    build_complex,
    _UnionFind,
)
from .topology import (
    PantsComplex,
    enumerate_adjacent_pairs,
    enumerate_adjacent_triples,
    require_valid,
)

KIND_ORDER = {"not-a-complete-system": 0, "unmet-curve": 1, "uncovered-combination": 2}


@dataclass(frozen=True)
class Violation:
    kind: str
    message: str
    detail: tuple[tuple[str, object], ...] = ()

    def sort_key(self):
        return (KIND_ORDER.get(self.kind, 9), self.message)


@dataclass(frozen=True)
class WaveWitness:
    """A same-boundary essential arc of one system in a pants of the other.

    For system "B" the container is a pants of the reference decomposition
    and ``place`` its slot; for system "A" the container is a component of
    the complement of the second system and ``place`` a boundary-circle
    index of that component.
    """

    system: str
    container: int
    place: int
    multiplicity: int

    def key(self) -> tuple:
        return (self.system, self.container, self.place)


@dataclass(frozen=True)
class RectangleWitness:
    face: int
    a_pants: int
    a_slots: tuple[int, int]
    b_component: int
    b_circles: tuple[int, int]

    @property
    def a_pair_key(self) -> str | None:
        if self.a_slots[0] == self.a_slots[1]:
            return None
        return "p%d:%d%d" % (self.a_pants, self.a_slots[0], self.a_slots[1])

    @property
    def b_pair_key(self) -> str | None:
        if self.b_circles[0] == self.b_circles[1]:
            return None
        return "q%d:%d%d" % (self.b_component, self.b_circles[0], self.b_circles[1])


@dataclass(frozen=True)
class DoubleRectangleWitness:
    """Two distinct rectangle faces sharing one edge of the middle curve.

    ``direction`` "A" means the shared edge is an arc edge (the middle
    curve belongs to the second system; covers slot pair x circle triple);
    "B" means a shared curve edge (covers circle pair x slot triple).
    """

    direction: str
    shared_edge: int
    faces: tuple[int, int]
    pair_key: str | None
    triple_key: str | None


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    accepted: bool
    genus: int
    vertices: int
    edges: int | None = None
    faces: int | None = None
    rectangle_count: int | None = None
    double_rectangle_count: int | None = None
    complete_system: bool | None = None
    b_component_count: int | None = None
    waves: tuple[WaveWitness, ...] = ()
    a_pair_keys: tuple[str, ...] = ()
    b_pair_keys: tuple[str, ...] = ()
    rc_matrix: tuple[tuple[int, ...], ...] | None = None
    a_triple_keys: tuple[str, ...] = ()
    b_triple_keys: tuple[str, ...] = ()
    ab_matrix: tuple[tuple[int, ...], ...] | None = None
    ba_matrix: tuple[tuple[int, ...], ...] | None = None
    violations: tuple[Violation, ...] = ()
    rc: "ConditionReport | None" = None

    @property
    def verdict(self) -> str:
        return "ACCEPT" if self.accepted else "REJECT"


@dataclass(frozen=True)
class StrongIrreducibilityResult:
    """One-sided certificate: a passing rectangle condition suffices for
    strong irreducibility, but a failing one proves nothing."""

    certified: bool
    inconclusive: bool
    rc_report: ConditionReport


# ---------------------------------------------------------------------------
# Waves
# ---------------------------------------------------------------------------


def detect_waves(x: IntersectionComplex) -> list[WaveWitness]:
    """Same-boundary essential arcs of either system in the other's pants.

    B-waves are read straight off the realized patterns (the s_j counts).
    A-waves are curve edges inside one complement component with both
    endpoints on the same boundary circle, kept only when essential: the
    edge must not just cut a disk off that circle.  An edge whose interior
    crossed the second system would not be a wave, so single edges are the
    right unit.
    """
    witnesses: list[WaveWitness] = []
    for p, pattern in enumerate(x.patterns):
        for j in range(3):
            if pattern.s[j] > 0:
                witnesses.append(
                    WaveWitness(
                        system="B", container=p, place=j, multiplicity=pattern.s[j]
                    )
                )
    census = x.faces()
    dec = x.minus_b()
    grouped: dict[tuple[int, int], int] = {}
    for comp in dec.components:
        face_index = {f: i for i, f in enumerate(comp.faces)}
        for e in comp.interior_edges:
            i, k = x.a_edge_point(e)
            v1, v2 = x.vertex(i, k), x.vertex(i, k + 1)
            c1 = dec.circle_of_dart[x.twin[4 * v1 + B_SIDE_A]]
            c2 = dec.circle_of_dart[x.twin[4 * v2 + B_SIDE_B]]
            if c1 != c2:
                continue
            if _cuts_off_disk(x, census, dec, comp, face_index, e, c1):
                continue
            key = (comp.index, c1[1])
            grouped[key] = grouped.get(key, 0) + 1
    for (comp_idx, circle_idx), mult in sorted(grouped.items()):
        witnesses.append(
            WaveWitness(
                system="A", container=comp_idx, place=circle_idx, multiplicity=mult
            )
        )
    return witnesses


def _cuts_off_disk(x, census, dec, comp, face_index, cut_edge, circle) -> bool:
    """Does cutting the component along this edge leave a disk piece?

    The piece on one side is a disk exactly when it touches no boundary
    circle other than the one carrying the edge's endpoints; then the edge
    is boundary-parallel and not a wave.  A non-separating edge (possible
    only on non-planar components) is always essential.
    """
    uf = _UnionFind(len(comp.faces))
    for e in comp.interior_edges:
        if e == cut_edge:
            continue
        d1, d2 = x._a_darts_of_edge(e)
        uf.union(
            face_index[census.face_of_dart[d1]], face_index[census.face_of_dart[d2]]
        )
    sides: dict[int, set] = {}
    for f_local, f in enumerate(comp.faces):
        root = uf.find(f_local)
        touched = sides.setdefault(root, set())
        for d in census.faces[f].b_darts:
            touched.add(dec.circle_of_dart[d])
    if len(sides) == 1:
        return False
    if len(sides) != 2:
        raise InternalInconsistencyError(
            "cutting a component along one edge left %d pieces" % len(sides)
        )
    return any(touched <= {circle} for touched in sides.values())


# ---------------------------------------------------------------------------
# Rectangles
# ---------------------------------------------------------------------------


def enumerate_rectangles(x: IntersectionComplex) -> list[RectangleWitness]:
    """One witness per length-4 face, with slot-pair and circle-pair data."""
    census = x.faces()
    dec = x.minus_b()
    out = []
    for f in census.faces:
        if f.half_length != 2:
            continue
        slots = sorted(x.a_left[d][1] for d in f.a_darts)
        pants = {x.a_left[d][0] for d in f.a_darts}
        if pants != {f.pants}:
            raise InternalInconsistencyError("rectangle sides face a foreign pants")
        circles = sorted(dec.circle_of_dart[d] for d in f.b_darts)
        comps = {c for c, _ in circles}
        if comps != {dec.component_of_face[f.index]}:
            raise InternalInconsistencyError("rectangle arc sides leave its component")
        out.append(
            RectangleWitness(
                face=f.index,
                a_pants=f.pants,
                a_slots=tuple(slots),
                b_component=circles[0][0],
                b_circles=(circles[0][1], circles[1][1]),
            )
        )
    return out


def _b_pairs(dec) -> list[str]:
    keys = []
    for comp in dec.components:
        for c0, c1 in ((0, 1), (0, 2), (1, 2)):
            keys.append("q%d:%d%d" % (comp.index, c0, c1))
    return keys


def _b_curve_sides(x, dec) -> dict[int, tuple[tuple[int, int], tuple[int, int]]]:
    """For each closed component of the second system, its two side circles."""
    sides: dict[int, set] = {}
    for comp in dec.components:
        for circle in comp.circles:
            sides.setdefault(circle.on_curve, set()).add(
                (circle.component, circle.index)
            )
    out = {}
    for curve, circles in sides.items():
        if len(circles) != 2:
            raise InternalInconsistencyError(
                "component %s bounded by %d circles, expected 2" % (curve, len(circles))
            )
        a, b = sorted(circles)
        out[curve] = (a, b)
    return out


def _b_triples(x, dec) -> list[str]:
    """Keys of all 4(3g-3) circle triples of a complete second system."""
    keys = []
    sides = _b_curve_sides(x, dec)
    for curve in sorted(sides):
        (ca, cb) = sides[curve]
        left_flanks = [
            i for i in range(len(dec.components[ca[0]].circles)) if i != ca[1]
        ]
        right_flanks = [
            i for i in range(len(dec.components[cb[0]].circles)) if i != cb[1]
        ]
        for lf in left_flanks:
            for rf in right_flanks:
                keys.append(
                    "b%d:q%d.%d|q%d.%d" % (curve, ca[0], lf, cb[0], rf)
                )
    return keys


def check_rectangle_condition(x: IntersectionComplex) -> ConditionReport:
    """ACCEPT iff every (slot pair) x (circle pair) cell holds a rectangle."""
    census = x.faces()
    dec = x.minus_b()
    waves = tuple(detect_waves(x))
    common = dict(
        condition="rectangle",
        genus=x.genus,
        vertices=x.vertex_count,
        edges=x.edge_count,
        faces=len(census.faces),
        waves=waves,
        b_component_count=len(x.b_components()),
    )
    rectangles = enumerate_rectangles(x)
    if not dec.certificate.accepted:
        violations = tuple(
            Violation(
                kind="not-a-complete-system",
                message="not a complete system: %s" % reason,
            )
            for reason in dec.certificate.reasons
        )
        return ConditionReport(
            accepted=False,
            complete_system=False,
            rectangle_count=len(rectangles),
            violations=violations,
            **common,
        )
    a_keys = [p.key for p in enumerate_adjacent_pairs(x.pc)]
    b_keys = _b_pairs(dec)
    counts = {(a, b): 0 for a in a_keys for b in b_keys}
    for w in rectangles:
        ka, kb = w.a_pair_key, w.b_pair_key
        if ka is not None and kb is not None:
            counts[(ka, kb)] += 1
    violations = []
    for a in a_keys:
        for b in b_keys:
            if counts[(a, b)] == 0:
                violations.append(
                    Violation(
                        kind="uncovered-combination",
                        message="no rectangle for pair %s x pair %s" % (a, b),
                        detail=(("a_pair", a), ("b_pair", b)),
                    )
                )
    violations.sort(key=Violation.sort_key)
    matrix = tuple(tuple(counts[(a, b)] for b in b_keys) for a in a_keys)
    return ConditionReport(
        accepted=not violations,
        complete_system=True,
        rectangle_count=len(rectangles),
        a_pair_keys=tuple(a_keys),
        b_pair_keys=tuple(b_keys),
        rc_matrix=matrix,
        violations=tuple(violations),
        **common,
    )


# ---------------------------------------------------------------------------
# Double rectangles
# ---------------------------------------------------------------------------


def enumerate_double_rectangles(x: IntersectionComplex) -> list[DoubleRectangleWitness]:
    """All adjacent pairs of distinct rectangles, both edge directions.

    A face glued to itself across an edge is not counted: the condition
    asks for the union of two rectangles.
    """
    census = x.faces()
    dec = x.minus_b()
    rect = {f.index for f in census.faces if f.half_length == 2}
    by_face = {w.face: w for w in enumerate_rectangles(x)}
    curve_sides = _b_curve_sides(x, dec) if dec.certificate.accepted else None
    b_comp_of_edge = x.b_component_of_edge()
    out: list[DoubleRectangleWitness] = []

    # Shared arc edge: middle curve in the second system.
    for e in x.b_edges:
        d1, d2 = e.darts
        f1, f2 = census.face_of_dart[d1], census.face_of_dart[d2]
        if f1 == f2 or f1 not in rect or f2 not in rect:
            continue
        w1, w2 = by_face[f1], by_face[f2]
        if w1.a_slots != w2.a_slots or w1.a_pants != w2.a_pants:
            raise InternalInconsistencyError(
                "rectangles across arc edge %d disagree on their slot pair" % e.index
            )
        pair_key = w1.a_pair_key
        triple_key = None
        if curve_sides is not None:
            curve = b_comp_of_edge[e.index]
            ca, cb = curve_sides[curve]
            side1 = dec.circle_of_dart[d1]
            side2 = dec.circle_of_dart[d2]
            flank1 = _other_circle(dec, census, w1, f1, d1)
            flank2 = _other_circle(dec, census, w2, f2, d2)
            if {side1, side2} == {ca, cb} and flank1 is not None and flank2 is not None:
                if side1 == ca:
                    lf, rf = flank1, flank2
                else:
                    lf, rf = flank2, flank1
                if lf != ca and rf != cb and lf[0] == ca[0] and rf[0] == cb[0]:
                    triple_key = "b%d:q%d.%d|q%d.%d" % (curve, lf[0], lf[1], rf[0], rf[1])
        out.append(
            DoubleRectangleWitness(
                direction="A",
                shared_edge=e.index,
                faces=(min(f1, f2), max(f1, f2)),
                pair_key=pair_key,
                triple_key=triple_key,
            )
        )

    # Shared curve edge: middle curve in the reference system.
    for eid in range(x.vertex_count):
        da, db = x._a_darts_of_edge(eid)
        f1, f2 = census.face_of_dart[da], census.face_of_dart[db]
        if f1 == f2 or f1 not in rect or f2 not in rect:
            continue
        w1, w2 = by_face[f1], by_face[f2]
        if (w1.b_component, w1.b_circles) != (w2.b_component, w2.b_circles):
            raise InternalInconsistencyError(
                "rectangles across curve edge %d disagree on their circle pair" % eid
            )
        pair_key = w1.b_pair_key
        i, _k = x.a_edge_point(eid)
        g = x.pc.gluing(i)
        flank1 = _other_slot(x, census.faces[f1], da)
        flank2 = _other_slot(x, census.faces[f2], db)
        triple_key = None
        if flank1 is not None and flank2 is not None:
            (pa, sa), (pb, sb) = g.side_a, g.side_b
            if flank1 != sa and flank2 != sb:
                triple_key = "c%d:p%ds%d|p%ds%d" % (i, pa, flank1, pb, flank2)
        out.append(
            DoubleRectangleWitness(
                direction="B",
                shared_edge=eid,
                faces=(min(f1, f2), max(f1, f2)),
                pair_key=pair_key,
                triple_key=triple_key,
            )
        )
    return out


def _other_circle(dec, census, witness, face, shared_dart):
    """Circle of the rectangle's arc side other than the shared one."""
    others = [d for d in census.faces[face].b_darts if d != shared_dart]
    if len(others) != 1:
        return None  # both arc sides of the face lie on the shared edge's twin pair
    return dec.circle_of_dart[others[0]]


def _other_slot(x, face, shared_dart):
    others = [d for d in face.a_darts if d != shared_dart]
    if len(others) != 1:
        return None
    return x.a_left[others[0]][1]


def check_double_rectangle_condition(x: IntersectionComplex) -> ConditionReport:
    """ACCEPT iff both (pair x triple) matrices are everywhere positive."""
    rc = check_rectangle_condition(x)
    doubles = enumerate_double_rectangles(x)
    if not rc.complete_system:
        return ConditionReport(
            condition="double-rectangle",
            accepted=False,
            genus=rc.genus,
            vertices=rc.vertices,
            edges=rc.edges,
            faces=rc.faces,
            rectangle_count=rc.rectangle_count,
            double_rectangle_count=len(doubles),
            complete_system=False,
            b_component_count=rc.b_component_count,
            waves=rc.waves,
            violations=rc.violations,
            rc=rc,
        )
    dec = x.minus_b()
    a_pair_keys = list(rc.a_pair_keys)
    b_pair_keys = list(rc.b_pair_keys)
    a_triple_keys = [t.key for t in enumerate_adjacent_triples(x.pc)]
    b_triple_keys = _b_triples(x, dec)
    ab = {(a, bt): 0 for a in a_pair_keys for bt in b_triple_keys}
    ba = {(b, at): 0 for b in b_pair_keys for at in a_triple_keys}
    for w in doubles:
        if w.pair_key is None or w.triple_key is None:
            continue
        if w.direction == "A":
            ab[(w.pair_key, w.triple_key)] += 1
        else:
            ba[(w.pair_key, w.triple_key)] += 1
    violations = []
    for a in a_pair_keys:
        for bt in b_triple_keys:
            if ab[(a, bt)] == 0:
                violations.append(
                    Violation(
                        kind="uncovered-combination",
                        message="no double rectangle for pair %s x triple %s" % (a, bt),
                        detail=(("pair", a), ("triple", bt)),
                    )
                )
    for b in b_pair_keys:
        for at in a_triple_keys:
            if ba[(b, at)] == 0:
                violations.append(
                    Violation(
                        kind="uncovered-combination",
                        message="no double rectangle for pair %s x triple %s" % (b, at),
                        detail=(("pair", b), ("triple", at)),
                    )
                )
    violations.sort(key=Violation.sort_key)
    accepted = not violations
    if accepted and not rc.accepted:
        raise InternalInconsistencyError(
            "double rectangle condition accepted but rectangle condition rejected"
        )
    return ConditionReport(
        condition="double-rectangle",
        accepted=accepted,
        genus=rc.genus,
        vertices=rc.vertices,
        edges=rc.edges,
        faces=rc.faces,
        rectangle_count=rc.rectangle_count,
        double_rectangle_count=len(doubles),
        complete_system=True,
        b_component_count=rc.b_component_count,
        waves=rc.waves,
        a_pair_keys=tuple(a_pair_keys),
        b_pair_keys=tuple(b_pair_keys),
        rc_matrix=rc.rc_matrix,
        a_triple_keys=tuple(a_triple_keys),
        b_triple_keys=tuple(b_triple_keys),
        ab_matrix=tuple(tuple(ab[(a, bt)] for bt in b_triple_keys) for a in a_pair_keys),
        ba_matrix=tuple(tuple(ba[(b, at)] for at in a_triple_keys) for b in b_pair_keys),
        violations=tuple(violations),
        rc=rc,
    )


def certify_strongly_irreducible(x: IntersectionComplex) -> StrongIrreducibilityResult:
    rc = check_rectangle_condition(x)
    return StrongIrreducibilityResult(
        certified=rc.accepted, inconclusive=not rc.accepted, rc_report=rc
    )


# ---------------------------------------------------------------------------
# Whole-diagram pipeline (handles unmet curves before any complex exists)
# ---------------------------------------------------------------------------


def evaluate_diagram(
    pc: PantsComplex, coords: DTCoordinates, *, double: bool = False
) -> ConditionReport:
    """Validate, short-circuit unmet curves, then run the requested check."""
    require_valid(pc)
    require_valid_coords(pc, coords)
    unmet = [i for i, m in enumerate(coords.m) if m == 0]
    if unmet:
        pairs = enumerate_adjacent_pairs(pc)
        violations = []
        for i in sorted(unmet):
            affected = sorted(p.key for p in pairs if i in p.curves)
            violations.append(
                Violation(
                    kind="unmet-curve",
                    message="curve %d is unmet (m=0); no rectangle can involve pairs %s"
                    % (i, ", ".join(affected)),
                    detail=(("curve", i), ("pairs", tuple(affected))),
                )
            )
        report = ConditionReport(
            condition="double-rectangle" if double else "rectangle",
            accepted=False,
            genus=pc.genus,
            vertices=sum(coords.m),
            violations=tuple(violations),
        )
        if double:
            rc = dataclasses.replace(report, condition="rectangle")
            report = dataclasses.replace(report, rc=rc)
        return report
    x = build_complex(pc, coords)
    if double:
        return check_double_rectangle_condition(x)
    return check_rectangle_condition(x)
