"""Arrangements of curves with a metric graph on a surface.

An overlay refines a base map: curve segments (chords) subdivide faces,
and crossing points subdivide edges.  Every cell remembers its ancestor
cell in the base map, so curve lengths and crossing sequences are always
expressed in terms of the original metric edges.

Curves are sets of chord edges tagged with a curve id.  A transversal
crossing of two curve strands is a vertex holding four chord ends; the
walk through such a vertex pairs rotation-opposite ends ("go straight").
All surgery here is flag surgery on the three involutions; flag ids are
stable (deleted flags are tombstoned), which lets construction code hold
on to corners across operations.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    ChordEndpointMismatch,
    InternalInvariantError,
    NotAClosedCurve,
    NotSimple,
)
from .surface import CutResult, SurfaceMap

METRIC = "metric"
CHORD = "chord"
AUX = "aux"


class SubdivideRec:
    """Bookkeeping for one edge subdivision."""

    __slots__ = ("piece_a", "piece_b", "corner_1", "corner_2", "mid_flags", "side1", "side2")

    def __init__(self, piece_a, piece_b, corner_1, corner_2, mid_flags, side1, side2):
        self.piece_a = piece_a
        self.piece_b = piece_b
        self.corner_1 = corner_1  # corner flag at the new vertex, side-1 face
        self.corner_2 = corner_2  # corner flag at the new vertex, side-2 face
        self.mid_flags = mid_flags
        self.side1 = side1  # original flags (a, b) of the side containing corner_1
        self.side2 = side2


class OverlayMap:
    """Mutable arrangement of curves over a base :class:`SurfaceMap`."""

    def __init__(self, base: SurfaceMap):
        self.base = base
        self.sv = list(base.sv)
        self.se = list(base.se)
        self.sf = list(base.sf)
        self.edge_of = list(base.edge_of)
        self.alive = list(base.alive)
        self.edge_weight: dict[int, Fraction] = dict(base.edge_weight)
        self.edge_ref: dict[int, int] = dict(base.edge_ref)
        self.edge_kind: dict[int, str] = {e: METRIC for e in base.edge_weight}
        self.edge_anc: dict[int, int | None] = {e: e for e in base.edge_weight}
        self.edge_curve: dict[int, int | None] = {e: None for e in base.edge_weight}
        self.flag_face_anc = [base.face_of[x] if base.alive[x] else -1 for x in range(len(base.sv))]
        self.next_edge = max(base.edge_weight) + 1 if base.edge_weight else 0
        self.curves: dict[int, dict] = {}
        self._next_curve = 0
        self._cells = None

    # -- bookkeeping ---------------------------------------------------------

    def _invalidate(self):
        self._cells = None

    def _new_flag(self, edge, face_anc):
        self.sv.append(-1)
        self.se.append(-1)
        self.sf.append(-1)
        self.edge_of.append(edge)
        self.alive.append(True)
        self.flag_face_anc.append(face_anc)
        return len(self.sv) - 1

    def _kill_flag(self, x):
        self.alive[x] = False

    def new_curve_id(self, closed=True) -> int:
        cid = self._next_curve
        self._next_curve += 1
        self.curves[cid] = {"closed": closed}
        return cid

    def _new_edge_id(self):
        e = self.next_edge
        self.next_edge += 1
        return e

    def _register_edge(self, e, kind, anc, curve, weight, ref):
        self.edge_weight[e] = weight
        self.edge_ref[e] = ref
        self.edge_kind[e] = kind
        self.edge_anc[e] = anc
        self.edge_curve[e] = curve

    def _drop_edge(self, e):
        del self.edge_weight[e]
        del self.edge_ref[e]
        del self.edge_kind[e]
        del self.edge_anc[e]
        del self.edge_curve[e]

    # -- derived cells (lazy) --------------------------------------------------

    def _orbits(self, gens):
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

    def cells(self):
        if self._cells is None:
            vo, vreps = self._orbits((self.se, self.sf))
            fo, freps = self._orbits((self.sv, self.se))
            self._cells = (vo, vreps, fo, freps)
        return self._cells

    @property
    def vertex_of(self):
        return self.cells()[0]

    @property
    def face_of(self):
        return self.cells()[2]

    def n_faces(self):
        return len(self.cells()[3])

    def face_cycle(self, tail_flag: int) -> list[int]:
        """Face walk starting at the given flag taken as a side tail."""
        out = []
        t = tail_flag
        while True:
            out.append(t)
            out.append(self.sv[t])
            t = self.se[self.sv[t]]
            if t == tail_flag:
                return out

    def vertex_rotation_flags(self, flag: int) -> list[int]:
        out = []
        x = flag
        while True:
            out.append(x)
            out.append(self.se[x])
            x = self.sf[self.se[x]]
            if x == flag:
                return out

    def rotation_ends(self, flag: int) -> list[int]:
        """One flag per edge end around the vertex of ``flag``, in rotation order."""
        rot = self.vertex_rotation_flags(flag)
        return rot[0::2]

    def vertex_kind(self, flag: int) -> str:
        n_base = len(self.base.sv)
        rot = self.vertex_rotation_flags(flag)
        if any(x < n_base for x in rot):
            return "base"
        kinds = {self.edge_kind[self.edge_of[x]] for x in rot[0::2]}
        if METRIC in kinds and CHORD in kinds:
            return "crossing"
        return "interior"

    # -- surgeries -------------------------------------------------------------

    def subdivide(self, e: int) -> SubdivideRec:
        """Split edge ``e`` at a new degree-2 vertex; pieces keep its ancestry."""
        a = self.edge_ref[e]
        b = self.sv[a]
        a2 = self.sf[a]
        b2 = self.sv[a2]
        kind, anc, curve = self.edge_kind[e], self.edge_anc[e], self.edge_curve[e]
        w = self.edge_weight[e]
        fa1 = self.flag_face_anc[a]
        fa2 = self.flag_face_anc[a2]
        h1 = self._new_flag(-1, fa1)
        t1 = self._new_flag(-1, fa1)
        h2 = self._new_flag(-1, fa2)
        t2 = self._new_flag(-1, fa2)
        ea = self._new_edge_id()
        eb = self._new_edge_id()
        for x in (a, h1, a2, h2):
            self.edge_of[x] = ea
        for x in (t1, b, t2, b2):
            self.edge_of[x] = eb
        self.sv[a], self.sv[h1] = h1, a
        self.sv[t1], self.sv[b] = b, t1
        self.sv[a2], self.sv[h2] = h2, a2
        self.sv[t2], self.sv[b2] = b2, t2
        self.sf[h1], self.sf[h2] = h2, h1
        self.sf[t1], self.sf[t2] = t2, t1
        self.se[h1], self.se[t1] = t1, h1
        self.se[h2], self.se[t2] = t2, h2
        self._register_edge(ea, kind, anc, curve, w, a)
        self._register_edge(eb, kind, anc, curve, w, t1)
        self._drop_edge(e)
        self._invalidate()
        return SubdivideRec(ea, eb, t1, t2, (h1, t1, h2, t2), (a, b), (a2, b2))

    def merge_pieces(self, mid_flag: int) -> int:
        """Undo a subdivision: remove the degree-2 vertex holding ``mid_flag``.

        Both incident edges must have the same kind/ancestry; the merged
        edge gets a fresh id with that ancestry.
        """
        ends = self.rotation_ends(mid_flag)
        if len(ends) != 2:
            raise InternalInvariantError("merge_pieces needs a degree-2 vertex")
        x, y = ends
        ea, eb = self.edge_of[x], self.edge_of[y]
        if (self.edge_kind[ea], self.edge_anc[ea]) != (self.edge_kind[eb], self.edge_anc[eb]):
            raise InternalInvariantError("cannot merge pieces of different ancestry")
        # flags at the mid vertex: x, se[x], sf[x], se[sf[x]] in some order
        h1, t1 = (x, self.se[x])
        h2, t2 = (self.sf[h1], self.sf[t1])
        ea, eb = self.edge_of[h1], self.edge_of[t1]
        mid = {h1, t1, h2, t2}
        a, b = self.sv[h1], self.sv[t1]
        a2, b2 = self.sv[h2], self.sv[t2]
        em = self._new_edge_id()
        # keep the merged direction consistent with a piece directed into
        # or out of the mid vertex, so that undoing a subdivision restores
        # the original edge direction exactly
        r1, r2 = self.edge_ref[ea], self.edge_ref[eb]
        if r1 not in mid:
            ref = r1
        elif r2 not in mid:
            ref = r2
        else:
            ref = a
        self.sv[a], self.sv[b] = b, a
        self.sv[a2], self.sv[b2] = b2, a2
        for f in (a, b, a2, b2):
            self.edge_of[f] = em
        self._register_edge(em, self.edge_kind[ea], self.edge_anc[ea], self.edge_curve[ea],
                            self.edge_weight[ea], ref)
        for f in (h1, t1, h2, t2):
            self._kill_flag(f)
        self._drop_edge(ea)
        self._drop_edge(eb)
        self._invalidate()
        return em

    def _side_sign_raw(self, e, flag):
        r = self.edge_ref[e]
        return 1 if flag in (r, self.sf[r]) else -1

    def _normalize_corners(self, c1: int, c2: int) -> tuple[int, int, int, int]:
        """Return (p1, x1, p2, x2) with the face cycle reading ...p1 x1...p2 x2...

        Corner handles are arbitrary flags; the corner of flag ``x`` is the
        se-pair {x, se[x]}.
        """
        x1 = c1
        cyc = self.face_cycle(x1)
        pos = {f: i for i, f in enumerate(cyc)}
        if c2 not in pos:
            raise ChordEndpointMismatch("chord endpoints lie on different faces")
        p1 = self.se[x1]
        if pos[p1] != len(cyc) - 1:
            raise InternalInvariantError("corner normalization failed")
        x2 = c2
        p2 = self.se[x2]
        # in walk order the corner appears as (head, tail); tails sit at even positions
        if pos[x2] % 2 != 0:
            x2, p2 = p2, x2
        if self.se[x2] != p2 or pos[p2] != (pos[x2] - 1) % len(cyc):
            raise InternalInvariantError("corner normalization failed")
        return p1, x1, p2, x2

    def split_face(self, c1: int, c2: int, curve: int | None, kind: str = CHORD) -> int:
        """Insert a chord between two corners of one face; returns its edge id.

        If both handles name the same corner, a loop-chord is inserted and
        the enclosed side becomes a monogon face.
        """
        same = c2 == c1 or c2 == self.se[c1]
        face_anc = self.flag_face_anc[c1]
        d = self._new_edge_id()
        if same:
            x = c1 if self._is_tail_of_corner(c1) else self.se[c1]
            p = self.se[x]
            tA = self._new_flag(d, face_anc)
            hA = self._new_flag(d, face_anc)
            tB = self._new_flag(d, face_anc)
            hB = self._new_flag(d, face_anc)
            self.sv[tA], self.sv[hA] = hA, tA
            self.sv[tB], self.sv[hB] = hB, tB
            self.sf[tA], self.sf[hB] = hB, tA
            self.sf[hA], self.sf[tB] = tB, hA
            self.se[p], self.se[tA] = tA, p
            self.se[hA], self.se[x] = x, hA
            self.se[tB], self.se[hB] = hB, tB
            self._register_edge(d, kind, None, curve, Fraction(1), tA)
            self._invalidate()
            return d
        p1, x1, p2, x2 = self._normalize_corners(c1, c2)
        tA = self._new_flag(d, face_anc)  # at vertex(x2)
        hA = self._new_flag(d, face_anc)  # at vertex(x1)
        tB = self._new_flag(d, face_anc)  # at vertex(x1)
        hB = self._new_flag(d, face_anc)  # at vertex(x2)
        self.sv[tA], self.sv[hA] = hA, tA
        self.sv[tB], self.sv[hB] = hB, tB
        self.sf[tA], self.sf[hB] = hB, tA
        self.sf[hA], self.sf[tB] = tB, hA
        self.se[p2], self.se[tA] = tA, p2
        self.se[hA], self.se[x1] = x1, hA
        self.se[p1], self.se[tB] = tB, p1
        self.se[hB], self.se[x2] = x2, hB
        self._register_edge(d, kind, None, curve, Fraction(1), tA)
        self._invalidate()
        return d

    def _is_tail_of_corner(self, x):
        # a flag is the outgoing tail of its corner iff walking the face from it
        # puts its se-partner last; face_cycle always does, so just return True.
        return True

    def delete_chord(self, d: int) -> None:
        """Remove a chord edge, merging the two incident faces back."""
        tA = self.edge_ref[d]
        hA = self.sv[tA]
        hB = self.sf[tA]
        tB = self.sf[hA]
        p2, x1 = self.se[tA], self.se[hA]
        p1, x2 = self.se[tB], self.se[hB]
        if x2 == tB:  # monogon side B: loop chord
            self.se[p2], self.se[x1] = x1, p2
        else:
            self.se[p2], self.se[x2] = x2, p2
            self.se[p1], self.se[x1] = x1, p1
        for f in (tA, hA, tB, hB):
            self._kill_flag(f)
        self._drop_edge(d)
        self._invalidate()

    # -- routing ----------------------------------------------------------------

    def route(self, start_corners, end_corners, cross_ok=None, face_ok=None):
        """Shortest subface path from any start corner to any end corner.

        Transitions cross a single edge for which ``cross_ok(edge)`` holds
        (default: metric pieces only).  Returns ``(start_corner, end_corner,
        [side flags crossed])`` or None.  The side flag of a step is a tail
        flag of the crossed edge on the face the step leaves.
        """
        if cross_ok is None:
            cross_ok = lambda e: self.edge_kind[e] == METRIC
        fo = self.face_of
        allowed = (lambda f: True) if face_ok is None else face_ok
        starts = {}
        for c in start_corners:
            f = fo[c]
            if allowed(f):
                starts.setdefault(f, c)
        targets = {}
        for c in end_corners:
            f = fo[c]
            if allowed(f):
                targets.setdefault(f, c)
        if not starts or not targets:
            return None
        # BFS over faces
        prev: dict[int, tuple[int, int] | None] = {f: None for f in starts}
        order = sorted(starts)
        queue = list(order)
        qi = 0
        found = None
        for f in order:
            if f in targets:
                found = f
                break
        while found is None and qi < len(queue):
            f = queue[qi]
            qi += 1
            rep_candidates = []
            # iterate sides of face f deterministically
            for t in self._face_side_tails(f):
                e = self.edge_of[t]
                if not cross_ok(e):
                    continue
                g = fo[self.sf[t]]
                if g in prev or not allowed(g):
                    continue
                prev[g] = (f, t)
                queue.append(g)
                if g in targets:
                    found = g
                    break
            if found is not None:
                break
        if found is None:
            return None
        path = []
        f = found
        while prev[f] is not None:
            pf, t = prev[f]
            path.append(t)
            f = pf
        path.reverse()
        return starts[f], targets[found], path

    def _face_side_tails(self, face_id):
        _, _, fo, freps = self.cells()
        return self.face_cycle(freps[face_id])[0::2]

    def insert_arc(self, c_start: int, c_end_resolver, side_path, curve: int):
        """Insert a curve arc from a corner through the given crossed sides.

        ``c_end_resolver`` is either a corner flag or a callable invoked
        after the last crossing to produce the final corner (corners can be
        created by the arc's own surgery).  Returns the list of chord ids.
        """
        chords = []
        cur = c_start
        for t in side_path:
            e = self.edge_of[t]
            rec = self.subdivide(e)
            # the crossed side flag t identifies which of the two new corners
            # faces the subface the arc is currently in
            if t in rec.side1 or self.sv[t] in rec.side1:
                near, far = rec.corner_1, rec.corner_2
            else:
                near, far = rec.corner_2, rec.corner_1
            chords.append(self.split_face(cur, near, curve))
            cur = far
        c_end = c_end_resolver(cur) if callable(c_end_resolver) else c_end_resolver
        chords.append(self.split_face(cur, c_end, curve))
        return chords

    def _same_face(self, a, b):
        fo = self.face_of
        return fo[a] == fo[b]

    # -- curves -----------------------------------------------------------------

    def curve_edges(self, cid: int) -> list[int]:
        return sorted(e for e, c in self.edge_curve.items() if c == cid)

    def curve_end_flags(self, cid: int, vertex_flag: int) -> list[int]:
        """Rotation-ordered end flags of the curve's chords at a vertex."""
        return [x for x in self.rotation_ends(vertex_flag)
                if self.edge_curve.get(self.edge_of[x]) == cid and self.edge_kind[self.edge_of[x]] == CHORD]

    def is_simple(self, cid: int) -> bool:
        """No transversal self-intersection: at most two ends per vertex."""
        seen = set()
        for e in self.curve_edges(cid):
            for fl in (self.edge_ref[e], self.sv[self.edge_ref[e]]):
                v = self.vertex_of[fl]
                if v in seen:
                    continue
                seen.add(v)
                if len(self.curve_end_flags(cid, fl)) > 2:
                    return False
        return True

    def curve_walk(self, cid: int):
        """The cyclic sequence of (vertex flag, chord) visited by the curve.

        At a vertex with four ends of the same curve, rotation-opposite
        ends are paired.  Raises NotAClosedCurve if the chords do not form
        one closed walk.
        """
        edges = self.curve_edges(cid)
        if not edges:
            raise NotAClosedCurve(f"curve {cid} has no segments")
        start = edges[0]
        start_flag = self.edge_ref[start]
        walk = []
        used = set()
        e = start
        fl = start_flag  # entering the chord at this end
        while True:
            walk.append((fl, e))
            used.add(e)
            far = self.sv[fl]  # flag at the other end of the chord
            nxt = self._continue_straight(cid, far, e)
            fl = nxt
            e = self.edge_of[nxt]
            if e == start and fl in (start_flag, self.sf[start_flag]):
                break
            if len(walk) > 4 * len(edges):
                raise NotAClosedCurve(f"curve {cid} walk does not close")
        if len(used) != len(edges):
            raise NotAClosedCurve(f"curve {cid} has several components")
        return walk

    def _continue_straight(self, cid, arrive_flag, arrive_edge):
        ends = self.rotation_ends(arrive_flag)
        cends = [x for x in ends
                 if self.edge_curve.get(self.edge_of[x]) == cid and self.edge_kind[self.edge_of[x]] == CHORD]
        # locate the arriving end among the curve's ends
        pos = None
        arrive_set = (arrive_flag, self.sf[arrive_flag])
        for i, x in enumerate(cends):
            if x in arrive_set:
                pos = i
                break
        if pos is None:
            raise InternalInvariantError("arriving chord end not found in rotation")
        k = len(cends)
        if k % 2 != 0:
            raise NotAClosedCurve(f"curve {cid} has a loose end")
        out = cends[(pos + k // 2) % k]
        return out

    def crossing_sequence(self, cid: int):
        """Cyclic list of (base edge, base face entered) records of the curve."""
        walk = self.curve_walk(cid)
        out = []
        for i, (fl, e) in enumerate(walk):
            v = fl
            if self.vertex_kind(v) == "crossing":
                metric_end = next(x for x in self.rotation_ends(v)
                                  if self.edge_kind[self.edge_of[x]] == METRIC)
                base_edge = self.edge_anc[self.edge_of[metric_end]]
                out.append((base_edge, self.flag_face_anc[fl]))
        return out

    def curve_length(self, cid: int) -> Fraction:
        total = Fraction(0)
        for base_edge, _ in self.crossing_sequence(cid):
            total += self.base.edge_weight[base_edge]
        return total

    def curve_multiplicity(self, cid: int) -> int:
        counts: dict[int, int] = {}
        for base_edge, _ in self.crossing_sequence(cid):
            counts[base_edge] = counts.get(base_edge, 0) + 1
        return max(counts.values(), default=0)

    def erase_curve(self, cid: int) -> None:
        """Delete a curve's chords and un-subdivide freed crossing points."""
        for d in self.curve_edges(cid):
            self.delete_chord(d)
        # merge any degree-2 vertices lying on metric edges
        changed = True
        while changed:
            changed = False
            vo, vreps, _, _ = self.cells()
            for rep in vreps:
                ends = self.rotation_ends(rep)
                if len(ends) != 2:
                    continue
                ea, eb = self.edge_of[ends[0]], self.edge_of[ends[1]]
                if ea == eb:
                    continue
                if self.edge_kind[ea] != METRIC or self.edge_kind[eb] != METRIC:
                    continue
                if self.edge_anc[ea] != self.edge_anc[eb]:
                    continue
                if rep < len(self.base.sv):
                    continue  # original degree-2 vertex of the base map
                self.merge_pieces(rep)
                changed = True
                break

    # -- snapshots & cutting -----------------------------------------------------

    def to_surface_map(self, hole_faces=()) -> SurfaceMap:
        m = SurfaceMap(
            list(self.sv), list(self.se), list(self.sf), list(self.edge_of),
            dict(self.edge_weight), dict(self.edge_ref),
            hole_faces=set(hole_faces), alive=list(self.alive), check=False,
        )
        return m

    def cut_along(self, cids) -> CutResult:
        if isinstance(cids, int):
            cids = [cids]
        edges = []
        for cid in cids:
            edges.extend(self.curve_edges(cid))
        snap = self.to_surface_map()
        return snap.cut_along_edges(edges)

    def require_simple(self, cid: int) -> None:
        if not self.is_simple(cid):
            raise NotSimple(f"curve {cid} has a transversal self-intersection")

    # -- public insertion ---------------------------------------------------------

    def insert_trivial_curve(self) -> int:
        """A contractible circle attached at the first corner of face 0."""
        cid = self.new_curve_id()
        _, _, fo, freps = self.cells()
        corner = freps[0]
        self.split_face(corner, corner, cid)
        return cid

    def insert_closed_curve(self, crossings: list[tuple[int, int]]) -> int:
        """Insert a closed curve given as (edge crossed, face entered) records.

        Crossing points are placed along each edge in record order, and
        chords join consecutive crossing points inside the stated faces
        using the first available corner; this pins the nesting convention.
        """
        if not crossings:
            return self.insert_trivial_curve()
        cid = self.new_curve_id()
        base_faces = set(range(self.base.n_faces))
        for e, f in crossings:
            if e not in self.base.edge_weight:
                raise ChordEndpointMismatch(f"unknown edge {e}")
            if f not in base_faces:
                raise ChordEndpointMismatch(f"unknown face {f}")
        # create all crossing points first, in order, remembering corners
        corner_pairs = []
        for e, face_entered in crossings:
            piece = self._some_piece_of(e)
            rec = self.subdivide(piece)
            c1, c2 = rec.corner_1, rec.corner_2
            if self.flag_face_anc[c1] == face_entered:
                corner_pairs.append((c2, c1))  # (arrive side, depart side)
            elif self.flag_face_anc[c2] == face_entered:
                corner_pairs.append((c1, c2))
            else:
                raise ChordEndpointMismatch(
                    f"edge {e} does not bound face {face_entered}")
        k = len(crossings)
        for i in range(k):
            depart = corner_pairs[i][1]
            arrive = corner_pairs[(i + 1) % k][0]
            self._connect_in_face(depart, arrive, cid)
        return cid

    def _some_piece_of(self, base_edge):
        for e in sorted(self.edge_weight):
            if self.edge_kind[e] == METRIC and self.edge_anc[e] == base_edge:
                return e
        raise ChordEndpointMismatch(f"edge {base_edge} has no remaining pieces")

    def _connect_in_face(self, c_from, c_to, cid):
        fo = self.face_of
        if fo[c_from] == fo[c_to]:
            self.split_face(c_from, c_to, cid)
            return
        # the stated face has been subdivided by this curve's earlier chords;
        # route through subfaces of the same ancestor face, crossing earlier
        # chords of this same curve transversally is not allowed, so fail.
        raise ChordEndpointMismatch(
            "consecutive crossings are not on a common subface; "
            "curve description is not realizable with the fixed nesting")
