"""Closed walks, cross-metric curves, signatures, and classification.

The topological type of a simple closed curve is read off in two
independent ways: from its crossing-parity signature against a canonical
system of loops (one-sided iff the signature has an odd number of ones,
orienting iff all ones, separating iff all zeros), and from actually
cutting the surface along the curve.  The second is the ground truth
used to verify the first throughout the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DimensionMismatch, SurfaceMismatch
from .overlay import OverlayMap
from .surface import SurfaceMap

SEPARATING = "separating"
ORIENTING = "nonseparating-orienting"
NONORIENTING = "nonseparating-nonorienting"
ONE_SIDED = "one-sided"
TWO_SIDED = "two-sided"


@dataclass(frozen=True)
class CurveClass:
    kind: str
    sided: str

    def __post_init__(self):
        if self.kind == SEPARATING and self.sided != TWO_SIDED:
            raise ValueError("separating curves are two-sided")


class ClosedWalk:
    """A cyclic sequence of directed edge traversals in a map's graph."""

    def __init__(self, surface: SurfaceMap, steps: list[tuple[int, int]], base_vertex: int | None = None):
        self.surface = surface
        self.steps = list(steps)  # (edge id, +1 forward / -1 backward)
        self.base_vertex = base_vertex
        if not steps and base_vertex is None:
            raise ValueError("trivial walk needs a base vertex")
        self._check_chain()

    def _check_chain(self):
        prev_head = None
        first_tail = None
        for e, d in self.steps:
            t, h = self.surface.edge_endpoints(e)
            if d < 0:
                t, h = h, t
            if prev_head is not None and t != prev_head:
                raise ValueError(f"walk breaks at edge {e}")
            if first_tail is None:
                first_tail = t
            prev_head = h
        if self.steps and prev_head != first_tail:
            raise ValueError("walk does not close up")

    @property
    def is_trivial(self) -> bool:
        return not self.steps

    def edges(self) -> list[int]:
        return [e for e, _ in self.steps]

    def length(self) -> Fraction:
        return sum((self.surface.edge_weight[e] for e, _ in self.steps), Fraction(0))

    def reversed(self) -> "ClosedWalk":
        return ClosedWalk(self.surface, [(e, -d) for e, d in reversed(self.steps)], self.base_vertex)

    def rotated(self, k: int) -> "ClosedWalk":
        if not self.steps:
            return self
        k %= len(self.steps)
        return ClosedWalk(self.surface, self.steps[k:] + self.steps[:k], self.base_vertex)


class CrossCurve:
    """A closed curve on a cross-metric surface, held inside an overlay."""

    def __init__(self, overlay: OverlayMap, cid: int):
        self.overlay = overlay
        self.cid = cid

    def crossing_sequence(self):
        return self.overlay.crossing_sequence(self.cid)

    def length(self) -> Fraction:
        return self.overlay.curve_length(self.cid)

    def multiplicity(self) -> int:
        return self.overlay.curve_multiplicity(self.cid)

    def is_simple(self) -> bool:
        return self.overlay.is_simple(self.cid)

    def crossing_counts(self) -> dict[int, int]:
        counts: dict[int, int] = {}
        for e, _ in self.crossing_sequence():
            counts[e] = counts.get(e, 0) + 1
        return counts

    def to_json_dict(self):
        return {"crossings": [{"edge": e, "face": f} for e, f in self.crossing_sequence()]}


@dataclass(frozen=True)
class SignatureVector:
    bits: int
    genus: int
    system_kind: str

    def as_tuple(self):
        return tuple((self.bits >> i) & 1 for i in range(self.genus))

    def ones(self) -> int:
        return self.bits.bit_count()


def signature(crossing_counts: dict[int, int], loop_system) -> SignatureVector:
    """Mod-2 crossing numbers of a curve with each loop of a system.

    ``crossing_counts`` maps metric edges to how often the curve meets
    them; the loop system supplies per-edge crossing-parity columns, so
    the signature is a sum of parity columns of the odd edges.
    """
    bits = 0
    for e, cnt in crossing_counts.items():
        if cnt % 2:
            bits ^= loop_system.parity_column(e)
    return SignatureVector(bits, loop_system.genus, loop_system.kind)


def walk_signature(walk: ClosedWalk, loop_system) -> SignatureVector:
    if loop_system.surface is not None and walk.surface is not loop_system.surface:
        raise SurfaceMismatch("walk and loop system live on different surfaces")
    counts: dict[int, int] = {}
    for e, _ in walk.steps:
        counts[e] = counts.get(e, 0) + 1
    return signature(counts, loop_system)


def classify_from_signature(sig: SignatureVector, genus: int) -> CurveClass:
    """Topological type from a signature w.r.t. a canonical system of loops."""
    if sig.genus != genus:
        raise DimensionMismatch(f"signature dimension {sig.genus} != genus {genus}")
    if sig.system_kind != "canonical":
        raise DimensionMismatch("classification requires a canonical-system signature")
    ones = sig.ones()
    if ones == 0:
        return CurveClass(SEPARATING, TWO_SIDED)
    sided = ONE_SIDED if ones % 2 else TWO_SIDED
    if ones == genus:
        return CurveClass(ORIENTING, sided)
    return CurveClass(NONORIENTING, sided)


def classify_by_cutting(overlay: OverlayMap, cid: int) -> CurveClass:
    """Ground-truth classification: cut along the curve and look.

    Separating iff the cut disconnects; the curve is one-sided iff the cut
    produces a single boundary circle; on a non-orientable surface it is
    orienting iff the cut surface is orientable.
    """
    overlay.require_simple(cid)
    res = overlay.cut_along(cid)
    if res.component_count == 2:
        return CurveClass(SEPARATING, TWO_SIDED)
    sided = ONE_SIDED if res.boundary_count == 1 else TWO_SIDED
    if not overlay.base.is_orientable() and res.is_orientable():
        return CurveClass(ORIENTING, sided)
    return CurveClass(NONORIENTING, sided)


def mu_from_walk(walk: ClosedWalk) -> dict[int, int]:
    """Crossing multiplicities for rebuilding a walk as a simple curve.

    Unused edges get 0, odd-count edges 1, even positive counts 2; this
    preserves all crossing parities while capping the multiplicity.
    """
    counts: dict[int, int] = {}
    for e, _ in walk.steps:
        counts[e] = counts.get(e, 0) + 1
    mu = {}
    for e in walk.surface.edge_weight:
        c = counts.get(e, 0)
        mu[e] = 0 if c == 0 else (1 if c % 2 else 2)
    return mu
