"""Flag-based cellular embeddings of weighted graphs on surfaces.

A map is stored as a set of flags (vertex-edge-face incidence atoms)
with three fixed-point-free involutions:

  * ``sv`` moves along an edge (same edge, same face, other vertex end),
  * ``se`` rotates around a corner (same vertex, same face, other edge),
  * ``sf`` crosses an edge (same vertex, same edge, other face).

``sv`` and ``sf`` commute, so each edge is a 4-flag orbit of <sv, sf>.
Vertices are orbits of <se, sf>, faces orbits of <sv, se>.  This
representation handles non-orientable gluings without special cases:
the surface is orientable iff the graph on flags whose edges are all
involution pairs is bipartite.

Surfaces with boundary are closed maps in which some faces are marked
as holes; the Euler characteristic of the bordered surface is the
closed characteristic minus the number of holes.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from .errors import (
    DisconnectedError,
    GluingError,
    InternalInvariantError,
    NoSuchBoundary,
    NonPositiveWeight,
    ParseError,
)

SideOcc = tuple[int, int]  # (edge id, +1/-1)


class SurfaceMap:
    """A weighted graph cellularly embedded on a closed surface.

    Instances are treated as immutable once constructed; refinement
    operations return new maps.  Flags may be tombstoned (``alive``
    False) by internal surgery so that flag ids stay stable.
    """

    def __init__(self, sv, se, sf, edge_of, edge_weight, edge_ref, hole_faces=(), alive=None, check=True):
        self.sv = sv
        self.se = se
        self.sf = sf
        self.edge_of = edge_of          # flag -> edge id
        self.edge_weight = edge_weight  # edge id -> Fraction
        self.edge_ref = edge_ref        # edge id -> flag at the tail of the edge's direction
        self.alive = alive if alive is not None else [True] * len(sv)
        self._vertex_of = None
        self._face_of = None
        self._vertex_reps = None
        self._face_reps = None
        self._orientable = None
        self.hole_faces = set(hole_faces)
        if check:
            self.validate()

    # -- construction ------------------------------------------------------

    @staticmethod
    def from_faces(faces: list[list[SideOcc]], weights: dict[int, Fraction]) -> "SurfaceMap":
        """Build a map from face boundary words.

        Each face is a cyclic list of signed edge ids; every edge id must
        occur exactly twice in total.  Vertices are derived by corner
        walking, so inconsistent vertex data cannot be supplied.
        """
        occ: dict[int, list[tuple[int, int, int]]] = {}
        for fi, word in enumerate(faces):
            if not word:
                raise ParseError("empty face word")
            for pos, (e, s) in enumerate(word):
                occ.setdefault(e, []).append((fi, pos, s))
        for e, lst in occ.items():
            if len(lst) != 2:
                raise GluingError(f"edge {e} occurs {len(lst)} times, expected 2")
            if e not in weights:
                raise ParseError(f"edge {e} has no weight")
        for e, w in weights.items():
            if e not in occ:
                raise ParseError(f"weight given for unused edge {e}")
            if w <= 0:
                raise NonPositiveWeight(f"edge {e} has weight {w}")

        # two flags per side occurrence: tail t then head h, in face order
        base: list[int] = []
        nflags = 0
        for word in faces:
            base.append(nflags)
            nflags += 2 * len(word)
        sv = [0] * nflags
        se = [0] * nflags
        sf = [0] * nflags
        edge_of = [0] * nflags
        for fi, word in enumerate(faces):
            m = len(word)
            for pos, (e, s) in enumerate(word):
                t = base[fi] + 2 * pos
                h = t + 1
                sv[t] = h
                sv[h] = t
                edge_of[t] = edge_of[h] = e
                nt = base[fi] + 2 * ((pos + 1) % m)
                se[h] = nt
                se[nt] = h

        edge_ids = sorted(occ)
        edge_ref = {}
        for e in edge_ids:
            (f1, p1, s1), (f2, p2, s2) = occ[e]
            t1, h1 = base[f1] + 2 * p1, base[f1] + 2 * p1 + 1
            t2, h2 = base[f2] + 2 * p2, base[f2] + 2 * p2 + 1
            if s1 != s2:
                sf[t1], sf[h2] = h2, t1
                sf[h1], sf[t2] = t2, h1
            else:
                sf[t1], sf[t2] = t2, t1
                sf[h1], sf[h2] = h2, h1
            # canonical direction: first + traversal, else reverse of the first side
            if s1 == 1:
                edge_ref[e] = t1
            elif s2 == 1:
                edge_ref[e] = t2
            else:
                edge_ref[e] = h1
        wmap = {e: Fraction(weights[e]) for e in edge_ids}
        return SurfaceMap(sv, se, sf, edge_of, wmap, edge_ref)

    def validate(self) -> None:
        n = len(self.sv)
        for name, inv in (("sv", self.sv), ("se", self.se), ("sf", self.sf)):
            for x in range(n):
                if not self.alive[x]:
                    continue
                y = inv[x]
                if y == x:
                    raise InternalInvariantError(f"{name} has a fixed point at flag {x}")
                if inv[y] != x:
                    raise InternalInvariantError(f"{name} is not an involution at flag {x}")
        for x in range(n):
            if self.alive[x] and self.sf[self.sv[x]] != self.sv[self.sf[x]]:
                raise InternalInvariantError(f"sv and sf do not commute at flag {x}")
        if not self.is_connected():
            raise DisconnectedError("underlying surface is not connected")

    # -- derived cells -----------------------------------------------------

    def _orbits(self, gens) -> tuple[list[int], list[int]]:
        """Label orbits of the given involutions; ids ordered by smallest flag."""
        n = len(self.sv)
        label = [-1] * n
        reps = []
        for start in range(n):
            if label[start] != -1 or not self.alive[start]:
                continue
            oid = len(reps)
            reps.append(start)
            stack = [start]
            label[start] = oid
            while stack:
                x = stack.pop()
                for g in gens:
                    y = g[x]
                    if label[y] == -1:
                        label[y] = oid
                        stack.append(y)
        return label, reps

    def _ensure_cells(self) -> None:
        if self._vertex_of is None:
            self._vertex_of, self._vertex_reps = self._orbits((self.se, self.sf))
            self._face_of, self._face_reps = self._orbits((self.sv, self.se))

    @property
    def vertex_of(self):
        self._ensure_cells()
        return self._vertex_of

    @property
    def face_of(self):
        self._ensure_cells()
        return self._face_of

    @property
    def n_vertices(self) -> int:
        self._ensure_cells()
        return len(self._vertex_reps)

    @property
    def n_edges(self) -> int:
        return len(self.edge_weight)

    @property
    def n_faces(self) -> int:
        self._ensure_cells()
        return len(self._face_reps)

    @property
    def size(self) -> int:
        return self.n_vertices + self.n_edges + self.n_faces

    def euler_characteristic(self) -> int:
        """chi of the closed surface obtained by capping every hole."""
        return self.n_vertices - self.n_edges + self.n_faces

    def euler_genus(self) -> int:
        g = 2 - self.euler_characteristic()
        if g < 0:
            raise InternalInvariantError("negative Euler genus")
        return g

    def boundary_count(self) -> int:
        return len(self.hole_faces)

    def is_connected(self) -> bool:
        n = len(self.sv)
        start = next((x for x in range(n) if self.alive[x]), None)
        if start is None:
            return True
        seen = bytearray(n)
        seen[start] = 1
        stack = [start]
        count = 1
        total = sum(1 for x in range(n) if self.alive[x])
        while stack:
            x = stack.pop()
            for g in (self.sv, self.se, self.sf):
                y = g[x]
                if not seen[y]:
                    seen[y] = 1
                    count += 1
                    stack.append(y)
        return count == total

    def component_count(self) -> int:
        n = len(self.sv)
        seen = bytearray(n)
        comps = 0
        for start in range(n):
            if seen[start] or not self.alive[start]:
                continue
            comps += 1
            stack = [start]
            seen[start] = 1
            while stack:
                x = stack.pop()
                for g in (self.sv, self.se, self.sf):
                    y = g[x]
                    if not seen[y]:
                        seen[y] = 1
                        stack.append(y)
        return comps

    def is_orientable(self) -> bool:
        """Whether consistent face orientations exist.

        Equivalent to 2-colorability of flags where every involution pair
        flips the color: an orientation class of a flag is its color.
        """
        if self._orientable is None:
            self._orientable = self._component_orientability()[0]
        return self._orientable

    def _component_orientability(self):
        """(all orientable, per-component dict rep->bool)."""
        n = len(self.sv)
        color = [-1] * n
        per_comp = {}
        all_ok = True
        for start in range(n):
            if color[start] != -1 or not self.alive[start]:
                continue
            color[start] = 0
            ok = True
            stack = [start]
            while stack:
                x = stack.pop()
                for g in (self.sv, self.se, self.sf):
                    y = g[x]
                    if color[y] == -1:
                        color[y] = 1 - color[x]
                        stack.append(y)
                    elif color[y] == color[x]:
                        ok = False
            per_comp[start] = ok
            all_ok = all_ok and ok
        return all_ok, per_comp

    # -- flag geometry helpers ---------------------------------------------

    def face_flags(self, face_id: int) -> list[int]:
        """The face cycle as alternating tail/head flags, in walk order.

        Walk order: from a tail flag t the side is (t, sv t), and the next
        side's tail is se[sv[t]].
        """
        self._ensure_cells()
        rep = self._face_reps[face_id]
        # normalize rep to a tail flag: both flags of a side are in the face;
        # pick rep itself as tail.
        out = []
        t = rep
        while True:
            out.append(t)
            out.append(self.sv[t])
            t = self.se[self.sv[t]]
            if t == rep:
                break
        return out

    def face_sides(self, face_id: int) -> list[tuple[int, int, int]]:
        """Sides of a face as (tail flag, edge id, sign)."""
        fl = self.face_flags(face_id)
        out = []
        for i in range(0, len(fl), 2):
            t = fl[i]
            e = self.edge_of[t]
            out.append((t, e, self.side_sign(t)))
        return out

    def side_sign(self, tail_flag: int) -> int:
        """+1 if the side with this tail traverses its edge forward."""
        e = self.edge_of[tail_flag]
        r = self.edge_ref[e]
        return 1 if tail_flag in (r, self.sf[r]) else -1

    def face_word(self, face_id: int) -> list[SideOcc]:
        return [(e, s) for (_, e, s) in self.face_sides(face_id)]

    def vertex_rotation(self, vertex_id: int) -> list[int]:
        """Flags around a vertex in rotation order: x, se x, sf se x, ..."""
        self._ensure_cells()
        rep = self._vertex_reps[vertex_id]
        out = []
        x = rep
        while True:
            out.append(x)
            out.append(self.se[x])
            x = self.sf[self.se[x]]
            if x == rep:
                break
        return out

    def vertex_degree(self, vertex_id: int) -> int:
        # every edge end at the vertex contributes two flags
        return len(self.vertex_rotation(vertex_id)) // 2

    def edge_flags(self, e: int) -> tuple[int, int, int, int]:
        r = self.edge_ref[e]
        return r, self.sv[r], self.sf[r], self.sv[self.sf[r]]

    def edge_endpoints(self, e: int) -> tuple[int, int]:
        """(tail vertex, head vertex) of the edge's canonical direction."""
        r = self.edge_ref[e]
        return self.vertex_of[r], self.vertex_of[self.sv[r]]

    def edge_faces(self, e: int) -> tuple[int, int]:
        r = self.edge_ref[e]
        return self.face_of[r], self.face_of[self.sf[r]]

    # -- integer weight scaling --------------------------------------------

    def weight_scale(self) -> int:
        """Least common denominator of all edge weights."""
        return lcm(*(w.denominator for w in self.edge_weight.values())) if self.edge_weight else 1

    def int_weights(self, scale: int | None = None) -> dict[int, int]:
        s = self.weight_scale() if scale is None else scale
        return {e: int(w * s) for e, w in self.edge_weight.items()}

    # -- duality -------------------------------------------------------------

    def dual(self) -> "SurfaceMap":
        """The dual map: swap sv and sf; edges keep ids and weights."""
        if self.hole_faces:
            raise InternalInvariantError("dual of a bordered map is not defined")
        return SurfaceMap(
            sv=list(self.sf),
            se=list(self.se),
            sf=list(self.sv),
            edge_of=list(self.edge_of),
            edge_weight=dict(self.edge_weight),
            edge_ref=dict(self.edge_ref),
            alive=list(self.alive),
            check=False,
        )

    # -- cutting -------------------------------------------------------------

    def cut_along_edges(self, cut_edges) -> "CutResult":
        """Cut the surface open along a set of edges.

        Every cut edge becomes two boundary edges; vertices split into one
        vertex per fan of non-cut edge ends between consecutive cut ends.
        New faces consisting of the freshly created flags are the holes.
        """
        cut = set(cut_edges)
        sv = list(self.sv)
        se = list(self.se)
        sf = list(self.sf)
        edge_of = list(self.edge_of)
        alive = list(self.alive)
        weights = dict(self.edge_weight)
        edge_ref = dict(self.edge_ref)
        edge_map: dict[int, int] = {e: e for e in weights if e not in cut}

        next_edge = max(weights) + 1 if weights else 0
        partner: dict[int, int] = {}
        n0 = len(sv)

        def new_flag(e):
            sv.append(0)
            se.append(0)
            sf.append(0)
            edge_of.append(e)
            alive.append(True)
            return len(sv) - 1

        cut_side_flags = []
        for e in sorted(cut):
            r = self.edge_ref[e]
            a, b = r, self.sv[r]
            a2, b2 = self.sf[r], self.sv[self.sf[r]]
            e1, e2 = next_edge, next_edge + 1
            next_edge += 2
            for (x, y, ne) in ((a, b, e1), (a2, b2, e2)):
                nx, ny = new_flag(ne), new_flag(ne)
                sv[nx], sv[ny] = ny, nx
                sf[x], sf[nx] = nx, x
                sf[y], sf[ny] = ny, y
                partner[x], partner[y] = nx, ny
                edge_of[x] = edge_of[y] = ne
                weights[ne] = self.edge_weight[e]
                edge_map[ne] = e
                edge_ref[ne] = x if self.side_sign(x) == 1 else y
                cut_side_flags.extend((x, y))
            del weights[e]
            del edge_ref[e]

        # the fan rule: rotate from a cut-side flag across non-cut edges
        # until the next cut-side flag; pair the boundary partners there.
        for x in cut_side_flags:
            z = self.se[x]
            while self.edge_of[z] not in cut:
                z = self.se[self.sf[z]]
            se[partner[x]] = partner[z]
            # the reverse walk from z ends at x, so this assignment is symmetric

        cut_map = SurfaceMap(sv, se, sf, edge_of, weights, edge_ref, alive=alive, check=False)
        holes = set()
        fo = cut_map.face_of
        for x in range(n0, len(sv)):
            holes.add(fo[x])
        cut_map.hole_faces = holes
        return CutResult(self, cut_map, edge_map, n0)

    def with_hole_capped(self, face_id: int) -> "SurfaceMap":
        """Attach a disk to the named boundary component."""
        if face_id not in self.hole_faces:
            raise NoSuchBoundary(f"face {face_id} is not a boundary component")
        m = SurfaceMap(
            list(self.sv), list(self.se), list(self.sf), list(self.edge_of),
            dict(self.edge_weight), dict(self.edge_ref),
            hole_faces=self.hole_faces - {face_id},
            alive=list(self.alive), check=False,
        )
        return m

    # -- serialization -------------------------------------------------------

    def face_words(self) -> list[list[SideOcc]]:
        return [self.face_word(f) for f in range(self.n_faces)]

    def to_srf(self) -> str:
        lines = ["srf 1", f"edges {self.n_edges}"]
        for e in sorted(self.edge_weight):
            w = self.edge_weight[e]
            ws = str(w.numerator) if w.denominator == 1 else f"{w.numerator}/{w.denominator}"
            lines.append(f"weight {e} {ws}")
        for f in range(self.n_faces):
            word = " ".join(f"{'+' if s > 0 else '-'}{e}" for e, s in self.face_word(f))
            lines.append(f"face {word}")
        return "\n".join(lines) + "\n"

    def isomorphic_signature(self):
        """A cheap canonical-ish invariant used by round-trip tests."""
        words = []
        for f in range(self.n_faces):
            w = self.face_word(f)
            rots = []
            for k in range(len(w)):
                rots.append(tuple(w[k:] + w[:k]))
            words.append(min(rots))
        return (self.n_vertices, self.n_edges, self.n_faces, tuple(sorted(words)))


class CutResult:
    """Result of cutting a map along a set of edges.

    Exposes the cut map (holes marked), a map from new edges to the
    original edges, component and boundary counts, and per-component
    orientability.
    """

    def __init__(self, original: SurfaceMap, cut_map: SurfaceMap, edge_map: dict[int, int], first_new_flag: int):
        self.original = original
        self.map = cut_map
        self.edge_map = edge_map
        self.first_new_flag = first_new_flag

    @property
    def component_count(self) -> int:
        return self.map.component_count()

    @property
    def boundary_components(self) -> list[int]:
        return sorted(self.map.hole_faces)

    @property
    def boundary_count(self) -> int:
        return len(self.map.hole_faces)

    def is_orientable(self) -> bool:
        return self.map.is_orientable()

    def chi_surface(self) -> int:
        """chi of the bordered cut surface."""
        return self.map.euler_characteristic() - self.map.boundary_count()

    def original_vertex(self, cut_vertex: int) -> int | None:
        """The original vertex a cut vertex came from (None for new-only)."""
        vo = self.map.vertex_of
        for x in range(self.first_new_flag):
            if self.map.alive[x] and vo[x] == cut_vertex:
                return self.original.vertex_of[x]
        return None


# -- SRF text format ---------------------------------------------------------


def parse_srf(text: str) -> SurfaceMap:
    """Parse the SRF format.

    Header ``srf 1``; ``edges <m>``; ``weight <id> <positive decimal>``
    lines; one ``face <±id> ...`` line per face.  ``#`` starts a comment.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines or lines[0].split() != ["srf", "1"]:
        raise ParseError("missing 'srf 1' header")
    idx = 1
    if idx >= len(lines) or not lines[idx].startswith("edges"):
        raise ParseError("missing 'edges <m>' line")
    try:
        m = int(lines[idx].split()[1])
    except (IndexError, ValueError) as exc:
        raise ParseError(f"bad edges line: {lines[idx]!r}") from exc
    idx += 1
    weights: dict[int, Fraction] = {}
    while idx < len(lines) and lines[idx].startswith("weight"):
        parts = lines[idx].split()
        if len(parts) != 3:
            raise ParseError(f"bad weight line: {lines[idx]!r}")
        try:
            e = int(parts[1])
            w = Fraction(parts[2])
        except ValueError as exc:
            raise ParseError(f"bad weight line: {lines[idx]!r}") from exc
        if e in weights:
            raise ParseError(f"duplicate weight for edge {e}")
        if w <= 0:
            raise NonPositiveWeight(f"edge {e} has weight {w}")
        weights[e] = w
        idx += 1
    if len(weights) != m:
        raise ParseError(f"expected {m} weight lines, found {len(weights)}")
    faces: list[list[SideOcc]] = []
    while idx < len(lines):
        if not lines[idx].startswith("face"):
            raise ParseError(f"unexpected line: {lines[idx]!r}")
        word = []
        for tok in lines[idx].split()[1:]:
            if not tok or tok[0] not in "+-":
                raise ParseError(f"bad side token {tok!r}")
            try:
                e = int(tok[1:])
            except ValueError as exc:
                raise ParseError(f"bad side token {tok!r}") from exc
            word.append((e, 1 if tok[0] == "+" else -1))
        if not word:
            raise ParseError("empty face line")
        faces.append(word)
        idx += 1
    if not faces:
        raise ParseError("no face lines")
    return SurfaceMap.from_faces(faces, weights)


def load_surface(path_or_text: str) -> SurfaceMap:
    return parse_srf(path_or_text)
