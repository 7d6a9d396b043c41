"""The combinatorial map of a pants system union a transverse multicurve.

Vertices are the intersection points, one per marked point (curve i,
point k).  Every vertex carries four darts in counterclockwise rotation
order ``A+ , B_a , A- , B_b``: the two directions along the decomposition
curve and the two arc germs entering the side_a and side_b pants.  Since
the curve is oriented by its side_a walk, the side_a pants lies on the
left of ``A+`` and the rotation encodes a positively oriented transverse
crossing.

Faces are traced with the face on the left of each dart, i.e. as orbits
of ``d -> prev(twin(d))`` where ``prev`` is the clockwise rotation step.
Two structural facts drive everything downstream and are re-checked at
build time:

* every face keeps all of its arc edges inside a single pants and all of
  its curve-edge sides facing that pants (the rotation forces the face
  boundary to bounce between one pants' arcs and its slot intervals), and
* no face is a bigon: a bigon would need an arc whose endpoints are
  cyclically adjacent on one slot, which the canonical pattern only
  produces when some curve is unmet, and unmet curves are rejected here.

Both subsurface decompositions (cut along the arcs' system, cut along
the curves' system) use the same machinery of face components, interior
edges and boundary circles; the Euler characteristic of a component is
``faces - interior edges`` because boundary vertex copies and boundary
edge sides cancel in the cut cell structure.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coordinates import (
    DTCoordinates,
    PantsArcPattern,
    expand_pants_arcs,
    pants_multiplicities,
    point_at_position,
    require_valid_coords,
)
from .errors import CurveUnmetError, InternalInconsistencyError
from .topology import PantsComplex, require_valid

A_PLUS, B_SIDE_A, A_MINUS, B_SIDE_B = 0, 1, 2, 3


@dataclass(frozen=True)
class BEdge:
    """A normal arc of one pants, as an edge of the map."""

    index: int
    pants: int
    arc_index: int
    kind: tuple
    ends: tuple[tuple[int, int], tuple[int, int]]  # (slot, position) per end
    vertices: tuple[int, int]
    darts: tuple[int, int]


@dataclass(frozen=True)
class Face:
    index: int
    darts: tuple[int, ...]
    pants: int
    a_darts: tuple[int, ...]
    b_darts: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.darts)

    @property
    def half_length(self) -> int:
        return len(self.darts) // 2

    @property
    def face_class(self) -> str:
        k = self.half_length
        if k == 1:
            return "bigon"
        if k == 2:
            return "rectangle"
        return "%d-gon" % (2 * k)


@dataclass(frozen=True)
class FaceCensus:
    faces: tuple[Face, ...]
    face_of_dart: tuple[int, ...]

    def counts_by_pants_class(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = {}
        for f in self.faces:
            key = (f.pants, f.half_length)
            out[key] = out.get(key, 0) + 1
        return out


@dataclass(frozen=True)
class BoundaryCircle:
    component: int
    index: int
    darts: tuple[int, ...]
    on_curve: object  # B-curve component id, or (pants, slot) on the A side

    @property
    def key(self) -> str:
        return "q%d.%d" % (self.component, self.index)


@dataclass(frozen=True)
class SubsurfaceComponent:
    index: int
    faces: tuple[int, ...]
    interior_edges: tuple[int, ...]
    chi: int
    circles: tuple[BoundaryCircle, ...]


@dataclass(frozen=True)
class Certificate:
    accepted: bool
    reasons: tuple[str, ...]


@dataclass(frozen=True)
class SubsurfaceDecomposition:
    removed: str  # "A" or "B": which system was cut along
    components: tuple[SubsurfaceComponent, ...]
    component_of_face: tuple[int, ...]
    circle_of_dart: dict
    certificate: Certificate | None


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, a: int) -> int:
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


class IntersectionComplex:
    """Immutable after construction; face/component censuses are cached."""

    def __init__(self, pc: PantsComplex, coords: DTCoordinates):
        self.pc = pc
        self.coords = coords
        self.genus = pc.genus
        self._offsets = []
        total = 0
        for m in coords.m:
            self._offsets.append(total)
            total += m
        self.vertex_count = total
        self.edge_count = 2 * total
        self.patterns: tuple[PantsArcPattern, ...] = tuple(
            expand_pants_arcs(*pants_multiplicities(pc, coords, p))
            for p in range(pc.pants_count)
        )
        self._slot_table = pc.slot_table()
        self._build()
        self._faces: FaceCensus | None = None
        self._b_components: tuple[tuple[int, ...], ...] | None = None
        self._minus_b: SubsurfaceDecomposition | None = None
        self._minus_a: SubsurfaceDecomposition | None = None

    # -- indexing ----------------------------------------------------------

    def vertex(self, curve: int, k: int) -> int:
        return self._offsets[curve] + (k % self.coords.m[curve])

    def vertex_point(self, v: int) -> tuple[int, int]:
        return self._vertex_point[v]

    def vertex_at(self, pants: int, slot: int, pos: int) -> int:
        """Vertex holding the marked point at a slot position."""
        curve, side = self._slot_table[(pants, slot)]
        g = self.pc.gluing(curve)
        k = point_at_position(g, self.coords.m[curve], self.coords.t[curve], side, pos)
        return self.vertex(curve, k)

    def a_edge(self, curve: int, k: int) -> int:
        return self._offsets[curve] + (k % self.coords.m[curve])

    def a_edge_point(self, e: int) -> tuple[int, int]:
        return self._vertex_point[e]  # same indexing as vertices

    def next_dart(self, d: int) -> int:
        return (d & ~3) | ((d + 1) & 3)

    def prev_dart(self, d: int) -> int:
        return (d & ~3) | ((d + 3) & 3)

    def face_step(self, d: int) -> int:
        return self.prev_dart(self.twin[d])

    def is_a_dart(self, d: int) -> bool:
        return (d & 1) == 0

    # -- construction ------------------------------------------------------

    def _build(self) -> None:
        pc, coords = self.pc, self.coords
        V = self.vertex_count
        self._vertex_point = []
        for i, m in enumerate(coords.m):
            for k in range(m):
                self._vertex_point.append((i, k))
        twin = [-1] * (4 * V)
        a_left: list = [None] * (4 * V)
        a_edge_of_dart = [-1] * (4 * V)
        for i, m in enumerate(coords.m):
            g = pc.gluing(i)
            for k in range(m):
                v, w = self.vertex(i, k), self.vertex(i, k + 1)
                twin[4 * v + A_PLUS] = 4 * w + A_MINUS
                twin[4 * w + A_MINUS] = 4 * v + A_PLUS
                a_edge_of_dart[4 * v + A_PLUS] = self.a_edge(i, k)
                a_edge_of_dart[4 * w + A_MINUS] = self.a_edge(i, k)
                a_left[4 * v + A_PLUS] = g.side_a
                a_left[4 * w + A_MINUS] = g.side_b
        b_edges: list[BEdge] = []
        b_edge_of_dart = [-1] * (4 * V)
        for p in range(pc.pants_count):
            pattern = self.patterns[p]
            for arc in pattern.arcs:
                darts = []
                verts = []
                for slot, pos in arc.ends:
                    curve, side = self._slot_table[(p, slot)]
                    v = self.vertex_at(p, slot, pos)
                    r = B_SIDE_A if side == "a" else B_SIDE_B
                    darts.append(4 * v + r)
                    verts.append(v)
                e = BEdge(
                    index=len(b_edges),
                    pants=p,
                    arc_index=arc.index,
                    kind=arc.kind,
                    ends=arc.ends,
                    vertices=(verts[0], verts[1]),
                    darts=(darts[0], darts[1]),
                )
                b_edges.append(e)
                twin[darts[0]] = darts[1]
                twin[darts[1]] = darts[0]
                b_edge_of_dart[darts[0]] = e.index
                b_edge_of_dart[darts[1]] = e.index
        for d, td in enumerate(twin):
            if td < 0 or twin[td] != d or td == d:
                raise InternalInconsistencyError(
                    "twin is not a fixed-point-free involution at dart %d" % d
                )
        self.twin = twin
        self.a_left = a_left
        self.a_edge_of_dart = a_edge_of_dart
        self.b_edges = tuple(b_edges)
        self.b_edge_of_dart = b_edge_of_dart

    # -- faces -------------------------------------------------------------

    def faces(self) -> FaceCensus:
        if self._faces is not None:
            return self._faces
        n = 4 * self.vertex_count
        face_of = [-1] * n
        faces: list[Face] = []
        for d0 in range(n):
            if face_of[d0] >= 0:
                continue
            orbit = []
            d = d0
            while True:
                if face_of[d] >= 0:
                    raise InternalInconsistencyError("face orbits are not disjoint")
                face_of[d] = len(faces)
                orbit.append(d)
                d = self.face_step(d)
                if d == d0:
                    break
            a_darts = tuple(d for d in orbit if self.is_a_dart(d))
            b_darts = tuple(d for d in orbit if not self.is_a_dart(d))
            if len(orbit) % 2 != 0 or len(a_darts) != len(b_darts):
                raise InternalInconsistencyError(
                    "face %d does not alternate between the two systems" % len(faces)
                )
            for da, db in zip(orbit, orbit[1:] + orbit[:1]):
                if self.is_a_dart(da) == self.is_a_dart(db):
                    raise InternalInconsistencyError(
                        "face %d does not alternate between the two systems"
                        % len(faces)
                    )
            pants = {self.b_edges[self.b_edge_of_dart[d]].pants for d in b_darts}
            pants |= {self.a_left[d][0] for d in a_darts}
            if len(pants) != 1:
                raise InternalInconsistencyError(
                    "face %d spans more than one pants: %s" % (len(faces), sorted(pants))
                )
            faces.append(
                Face(
                    index=len(faces),
                    darts=tuple(orbit),
                    pants=pants.pop(),
                    a_darts=a_darts,
                    b_darts=b_darts,
                )
            )
        census = FaceCensus(faces=tuple(faces), face_of_dart=tuple(face_of))
        chi = self.vertex_count - self.edge_count + len(faces)
        if chi != 2 - 2 * self.genus:
            raise InternalInconsistencyError(
                "Euler characteristic %d, expected %d" % (chi, 2 - 2 * self.genus)
            )
        if any(f.half_length < 2 for f in faces):
            raise InternalInconsistencyError("bigon face in canonical position")
        self._faces = census
        return census

    # -- the second system's closed components ------------------------------

    def b_components(self) -> tuple[tuple[int, ...], ...]:
        """Partition of arc edges into the closed curves they concatenate to."""
        if self._b_components is not None:
            return self._b_components
        uf = _UnionFind(len(self.b_edges))
        for v in range(self.vertex_count):
            ea = self.b_edge_of_dart[4 * v + B_SIDE_A]
            eb = self.b_edge_of_dart[4 * v + B_SIDE_B]
            uf.union(ea, eb)
        groups: dict[int, list[int]] = {}
        for e in range(len(self.b_edges)):
            groups.setdefault(uf.find(e), []).append(e)
        comps = tuple(tuple(sorted(g)) for _, g in sorted(groups.items()))
        self._b_components = comps
        return comps

    def b_component_of_edge(self) -> dict[int, int]:
        out = {}
        for ci, comp in enumerate(self.b_components()):
            for e in comp:
                out[e] = ci
        return out

    # -- subsurface decompositions ------------------------------------------

    def _circle_orbits(self, system: str) -> list[tuple[int, ...]]:
        """Boundary circles of the cut surface, as orbits of edge sides.

        For ``system == 'B'`` the circles run along arc edges: from a dart,
        continue out of its head vertex along the other arc germ there.
        Mirrored for 'A'.
        """
        rots = (B_SIDE_A, B_SIDE_B) if system == "B" else (A_PLUS, A_MINUS)
        darts = [4 * v + r for v in range(self.vertex_count) for r in rots]
        seen = set()
        orbits = []
        for d0 in sorted(darts):
            if d0 in seen:
                continue
            orbit = []
            d = d0
            while True:
                seen.add(d)
                orbit.append(d)
                head = self.twin[d] & ~3
                back = self.twin[d] & 3
                other = rots[0] if back == rots[1] else rots[1]
                d = head | other
                if d == d0:
                    break
            orbits.append(tuple(orbit))
        return orbits

    def _decompose(self, removed: str) -> SubsurfaceDecomposition:
        census = self.faces()
        n_faces = len(census.faces)
        uf = _UnionFind(n_faces)
        interior_ids = (
            range(self.vertex_count) if removed == "B" else range(len(self.b_edges))
        )
        edge_darts = (
            (lambda e: (self._a_darts_of_edge(e)))
            if removed == "B"
            else (lambda e: self.b_edges[e].darts)
        )
        for e in interior_ids:
            d1, d2 = edge_darts(e)
            uf.union(census.face_of_dart[d1], census.face_of_dart[d2])
        roots: dict[int, int] = {}
        comp_faces: list[list[int]] = []
        for f in range(n_faces):
            r = uf.find(f)
            if r not in roots:
                roots[r] = len(comp_faces)
                comp_faces.append([])
            comp_faces[roots[r]].append(f)
        comp_of_face = tuple(roots[uf.find(f)] for f in range(n_faces))
        comp_edges: list[list[int]] = [[] for _ in comp_faces]
        for e in interior_ids:
            d1, _ = edge_darts(e)
            comp_edges[comp_of_face[census.face_of_dart[d1]]].append(e)
        circle_of_dart: dict[int, tuple[int, int]] = {}
        comp_circles: list[list[BoundaryCircle]] = [[] for _ in comp_faces]
        b_comp_of_edge = self.b_component_of_edge() if removed == "B" else None
        for orbit in self._circle_orbits(removed):
            comp = comp_of_face[census.face_of_dart[orbit[0]]]
            for d in orbit:
                if comp_of_face[census.face_of_dart[d]] != comp:
                    raise InternalInconsistencyError(
                        "boundary circle touches two components"
                    )
            if removed == "B":
                carriers = {b_comp_of_edge[self.b_edge_of_dart[d]] for d in orbit}
            else:
                carriers = {self.a_left[d] for d in orbit}
            if len(carriers) != 1:
                raise InternalInconsistencyError(
                    "boundary circle runs along more than one closed component"
                )
            circle = BoundaryCircle(
                component=comp,
                index=len(comp_circles[comp]),
                darts=orbit,
                on_curve=carriers.pop(),
            )
            comp_circles[comp].append(circle)
            for d in orbit:
                circle_of_dart[d] = (comp, circle.index)
        components = tuple(
            SubsurfaceComponent(
                index=ci,
                faces=tuple(sorted(faces)),
                interior_edges=tuple(sorted(comp_edges[ci])),
                chi=len(faces) - len(comp_edges[ci]),
                circles=tuple(comp_circles[ci]),
            )
            for ci, faces in enumerate(comp_faces)
        )
        total_chi = sum(c.chi for c in components)
        if total_chi != 2 - 2 * self.genus:
            raise InternalInconsistencyError(
                "component Euler characteristics sum to %d, expected %d"
                % (total_chi, 2 - 2 * self.genus)
            )
        certificate = None
        if removed == "B":
            certificate = self._pants_certificate(components)
        return SubsurfaceDecomposition(
            removed=removed,
            components=components,
            component_of_face=comp_of_face,
            circle_of_dart=circle_of_dart,
            certificate=certificate,
        )

    def _a_darts_of_edge(self, e: int) -> tuple[int, int]:
        i, k = self._vertex_point[e]
        v, w = self.vertex(i, k), self.vertex(i, k + 1)
        return (4 * v + A_PLUS, 4 * w + A_MINUS)

    def _pants_certificate(self, components) -> Certificate:
        reasons = []
        n_b = len(self.b_components())
        expected = 3 * self.genus - 3
        if n_b != expected:
            reasons.append(
                "second system has %d closed components, a complete system has %d"
                % (n_b, expected)
            )
        for c in components:
            if c.chi == 1:
                reasons.append(
                    "component %d: disk complement (null-homotopic B-component)"
                    % c.index
                )
            elif c.chi == -1 and len(c.circles) == 1:
                reasons.append("component %d: genus-1 complement" % c.index)
            elif c.chi != -1 or len(c.circles) != 3:
                reasons.append(
                    "component %d: chi=%d with %d boundary circles, a pants has chi=-1 with 3"
                    % (c.index, c.chi, len(c.circles))
                )
        if len(components) != 2 * self.genus - 2 and not reasons:
            reasons.append(
                "complement has %d components, expected %d"
                % (len(components), 2 * self.genus - 2)
            )
        return Certificate(accepted=not reasons, reasons=tuple(reasons))

    def minus_b(self) -> SubsurfaceDecomposition:
        """Components of the surface cut along the second system."""
        if self._minus_b is None:
            self._minus_b = self._decompose("B")
        return self._minus_b

    def minus_a(self) -> SubsurfaceDecomposition:
        """Components cut along the pants curves; must reproduce the input."""
        if self._minus_a is None:
            dec = self._decompose("A")
            self._check_minus_a(dec)
            self._minus_a = dec
        return self._minus_a

    def _check_minus_a(self, dec: SubsurfaceDecomposition) -> None:
        census = self.faces()
        if len(dec.components) != self.pc.pants_count:
            raise InternalInconsistencyError(
                "cutting along the pants curves gave %d components, expected %d"
                % (len(dec.components), self.pc.pants_count)
            )
        for c in dec.components:
            pants = {census.faces[f].pants for f in c.faces}
            if len(pants) != 1:
                raise InternalInconsistencyError(
                    "component %d mixes faces of several pants" % c.index
                )
            p = pants.pop()
            if c.chi != -1:
                raise InternalInconsistencyError(
                    "pants component %d has chi=%d" % (c.index, c.chi)
                )
            slots = sorted(circle.on_curve for circle in c.circles)
            if slots != [(p, 0), (p, 1), (p, 2)]:
                raise InternalInconsistencyError(
                    "component %d boundary circles %s do not match the slots of pants %d"
                    % (c.index, slots, p)
                )


def build_complex(pc: PantsComplex, coords: DTCoordinates) -> IntersectionComplex:
    """Build the map of the union; requires every curve to be met."""
    require_valid(pc)
    require_valid_coords(pc, coords)
    unmet = [i for i, m in enumerate(coords.m) if m == 0]
    if unmet:
        raise CurveUnmetError(unmet)
    return IntersectionComplex(pc, coords)


def trace_faces(x: IntersectionComplex) -> FaceCensus:
    return x.faces()


def trace_b_components(x: IntersectionComplex) -> tuple[tuple[int, ...], ...]:
    return x.b_components()


def decompose_minus_b(x: IntersectionComplex) -> SubsurfaceDecomposition:
    return x.minus_b()


def decompose_minus_a(x: IntersectionComplex) -> SubsurfaceDecomposition:
    return x.minus_a()
