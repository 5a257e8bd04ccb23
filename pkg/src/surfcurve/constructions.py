"""Orienting curves and the crossing-multiplicity-to-simple-cycle rebuild.

Two constructive primitives:

* ``inconsistent_edges``: pick face orientations by propagation over the
  face adjacency; the edges whose two sides disagree form an even-degree
  subgraph, and cutting along it makes the surface orientable.

* ``merge_to_simple_cycle``: given per-edge crossing multiplicities with
  even totals around every vertex and connected support, draw one simple
  closed curve in the dual cross-metric surface realizing exactly those
  crossing numbers.  Multiplicities are first normalized to {0,1} by
  subdividing, faces are balanced to crossing degree <= 4 by diagonals,
  chords are drawn in boundary order, and the resulting disjoint cycles
  are merged along a DFS tree of the cycle graph by re-pairing the two
  chords inside each discovery face.

``orienting_curve`` combines the two: multiplicity 1 on inconsistent
edges, 2 elsewhere, rebuilt as a single simple curve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .curves import CrossCurve
from .errors import (
    DisconnectedSupport,
    InternalInvariantError,
    OddVertexDegree,
    SurfaceOrientable,
)
from .overlay import AUX, METRIC, OverlayMap
from .surface import SurfaceMap


@dataclass
class InconsistentEdgeSet:
    """Chosen face orientations and the edges bounding disagreeing faces."""

    surface: SurfaceMap
    face_orientation: dict[int, int]
    edges: set[int] = field(default_factory=set)

    def vertex_incidences(self) -> dict[int, int]:
        """Incidence count of the inconsistent set at each vertex (loops count twice)."""
        counts = {v: 0 for v in range(self.surface.n_vertices)}
        for e in self.edges:
            t, h = self.surface.edge_endpoints(e)
            counts[t] += 1
            counts[h] += 1
        return counts


def inconsistent_edges(m: SurfaceMap) -> InconsistentEdgeSet:
    """Orient every face by propagation and collect the inconsistent edges.

    An edge is consistent when its two incident face walks traverse it in
    opposite directions.  Orientations are propagated over a BFS tree of
    the face adjacency, so tree edges are always consistent and the set is
    empty exactly when the map is orientable.
    """
    m._ensure_cells()
    # walk parity of every flag inside its face
    n = len(m.sv)
    parity = [0] * n
    for f in range(m.n_faces):
        for i, fl in enumerate(m.face_flags(f)):
            parity[fl] = i & 1
    orient = {0: 0}
    queue = [0]
    qi = 0
    fo = m.face_of
    while qi < len(queue):
        f = queue[qi]
        qi += 1
        for t, _, _ in m.face_sides(f):
            g = fo[m.sf[t]]
            if g not in orient:
                orient[g] = 1 ^ parity[t] ^ parity[m.sf[t]] ^ orient[f]
                queue.append(g)
    if len(orient) != m.n_faces:
        raise InternalInvariantError("face adjacency is not connected")

    def color(flag):
        return parity[flag] ^ orient[fo[flag]]

    bad = set()
    for e in m.edge_weight:
        r = m.edge_ref[e]
        if color(r) == color(m.sf[r]):
            bad.add(e)
    return InconsistentEdgeSet(m, orient, bad)


def _check_mu(m: SurfaceMap, mu: dict[int, int]) -> None:
    deg = {v: 0 for v in range(m.n_vertices)}
    support_edges = []
    for e in m.edge_weight:
        v = mu.get(e, 0)
        if v < 0:
            raise OddVertexDegree(f"negative multiplicity on edge {e}")
        if v:
            support_edges.append(e)
        t, h = m.edge_endpoints(e)
        deg[t] += v
        deg[h] += v
    for v, d in deg.items():
        if d % 2:
            raise OddVertexDegree(f"vertex {v} has odd crossing degree {d}")
    if not support_edges:
        raise DisconnectedSupport("empty support")
    # connectivity of the support subgraph (on its own vertex set)
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    verts = set()
    for e in support_edges:
        t, h = m.edge_endpoints(e)
        verts.update((t, h))
        for v in (t, h):
            parent.setdefault(v, v)
        rt, rh = find(t), find(h)
        if rt != rh:
            parent[rt] = rh
    roots = {find(v) for v in verts}
    if len(roots) != 1:
        raise DisconnectedSupport("support subgraph is disconnected")


def merge_to_simple_cycle(g_map: SurfaceMap, mu: dict[int, int]) -> CrossCurve:
    """A simple closed curve in the dual crossing each dual edge mu(e) times."""
    _check_mu(g_map, mu)
    o = OverlayMap(g_map.dual())
    cid = o.new_curve_id()

    # normalize multiplicities to one crossing slot per overlay edge
    slot = {e: True for e in o.base.edge_weight if mu.get(e, 0) >= 1}
    slots: set[int] = set()
    for e in sorted(o.base.edge_weight):
        k = mu.get(e, 0)
        if k == 0:
            continue
        piece = e
        for _ in range(k - 1):
            rec = o.subdivide(piece)
            slots.add(rec.piece_a)
            piece = rec.piece_b
        slots.add(piece)

    # balance faces to crossing degree 0, 2 or 4 by adding diagonals that
    # separate three consecutive crossing slots from the rest
    while True:
        _, _, fo, freps = o.cells()
        did = False
        for f in range(len(freps)):
            tails = o.face_cycle(freps[f])[0::2]
            pos = [i for i, t in enumerate(tails) if o.edge_of[t] in slots]
            if len(pos) < 6:
                continue
            q1, q3 = pos[0], pos[2]
            c1 = tails[q1]
            c2 = tails[(q3 + 1) % len(tails)]
            if c1 == c2:
                raise InternalInvariantError("degenerate balancing diagonal")
            d = o.split_face(c1, c2, None, kind=AUX)
            slots.add(d)
            did = True
            break
        if not did:
            break

    # one midpoint per slot; remember its two corners
    mid_corners = []  # (corner side 1, corner side 2), index = crossing number
    for s in sorted(slots):
        rec = o.subdivide(s)
        mid_corners.append((rec.corner_1, rec.corner_2))

    # draw chords in boundary order inside every face
    _, _, fo2, freps2 = o.cells()
    corner_face = {}
    for idx, (c1, c2) in enumerate(mid_corners):
        corner_face.setdefault(fo2[c1], []).append(c1)
        corner_face.setdefault(fo2[c2], []).append(c2)
    chord_of = {}        # chord edge -> (corner, corner)
    face_chords = {}     # face -> [chord ids] for crossing-degree-4 faces
    face_corners4 = {}
    for f in range(len(freps2)):
        corners = corner_face.get(f, [])
        if not corners:
            continue
        cyc = o.face_cycle(freps2[f])
        at = {fl: i for i, fl in enumerate(cyc)}
        ordered = sorted(corners, key=lambda c: at[c])
        if len(ordered) % 2:
            raise InternalInvariantError("odd crossing degree survived balancing")
        if len(ordered) not in (2, 4):
            raise InternalInvariantError("face balancing failed")
        ids = []
        for i in range(0, len(ordered), 2):
            d = o.split_face(ordered[i], ordered[i + 1], cid)
            chord_of[d] = (ordered[i], ordered[i + 1])
            ids.append(d)
        if len(ordered) == 4:
            face_chords[f] = ids
            face_corners4[f] = ordered

    # cycles of chords through midpoints
    corner_mid = {}
    for idx, (c1, c2) in enumerate(mid_corners):
        corner_mid[c1] = idx
        corner_mid[c2] = idx
    mid_chords: dict[int, list[int]] = {}
    for d, (ca, cb) in chord_of.items():
        mid_chords.setdefault(corner_mid[ca], []).append(d)
        mid_chords.setdefault(corner_mid[cb], []).append(d)
    for mid, ds in mid_chords.items():
        if len(ds) != 2 and not (len(ds) == 1 and chord_of[ds[0]][0] in corner_mid and
                                 corner_mid[chord_of[ds[0]][0]] == corner_mid[chord_of[ds[0]][1]] == mid):
            if len(ds) != 2:
                raise InternalInvariantError(f"midpoint {mid} has degree {len(ds)}")
    cycle_of_chord = {}
    cyc_count = 0
    for d0 in sorted(chord_of):
        if d0 in cycle_of_chord:
            continue
        label = cyc_count
        cyc_count += 1
        frontier = [d0]
        cycle_of_chord[d0] = label
        while frontier:
            d = frontier.pop()
            for end in chord_of[d]:
                for d2 in mid_chords[corner_mid[end]]:
                    if d2 not in cycle_of_chord:
                        cycle_of_chord[d2] = label
                        frontier.append(d2)

    # root = cycle through the lowest-numbered crossing
    root = None
    for mid in sorted(mid_chords):
        root = cycle_of_chord[mid_chords[mid][0]]
        break

    # DFS on the cycle graph; discovery faces become re-pairing sites
    adj: dict[int, list[tuple[int, int]]] = {}
    for f in sorted(face_chords):
        da, db = face_chords[f]
        ca, cb = cycle_of_chord[da], cycle_of_chord[db]
        adj.setdefault(ca, []).append((cb, f))
        adj.setdefault(cb, []).append((ca, f))
    seen = {root}
    tree_faces = []
    stack = [root]
    while stack:
        c = stack.pop()
        for c2, f in adj.get(c, []):
            if c2 not in seen:
                seen.add(c2)
                tree_faces.append(f)
                stack.append(c2)
    if len(seen) != cyc_count:
        raise InternalInvariantError("cycle graph is disconnected; support check failed")

    # re-pair the two chords inside every discovery face
    for f in tree_faces:
        m1, m2, m3, m4 = face_corners4[f]
        for d in face_chords[f]:
            o.delete_chord(d)
        o.split_face(m2, m3, cid)
        o.split_face(m4, m1, cid)

    curve = CrossCurve(o, cid)
    if not curve.is_simple():
        raise InternalInvariantError("merged curve is not simple")
    counts = curve.crossing_counts()
    for e in g_map.edge_weight:
        if counts.get(e, 0) != mu.get(e, 0):
            raise InternalInvariantError(
                f"crossing count {counts.get(e, 0)} != mu {mu.get(e, 0)} on edge {e}")
    return curve


def orienting_curve(m: SurfaceMap) -> CrossCurve:
    """A simple curve whose complement is orientable, multiplicity <= 2.

    Crossing an inconsistent edge once flips the disagreement between its
    two faces; crossing every other edge twice keeps all parities intact,
    and the support is the whole (connected) graph.
    """
    if m.is_orientable():
        raise SurfaceOrientable("the surface is orientable; no orienting curve exists")
    g = m.dual()
    bad = inconsistent_edges(g).edges
    mu = {e: (1 if e in bad else 2) for e in g.edge_weight}
    return merge_to_simple_cycle(g, mu)
