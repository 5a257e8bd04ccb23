"""Bit-packed GF(2) vectors and matrices, and the standard-to-canonical
change of basis.

Vectors over Z_2^n are ints with bit i holding component i.  A matrix is
a list of row masks.  The change-of-basis matrices convert crossing
signatures taken against a standard system of loops into signatures
against some canonical system; their band structure depends only on the
genus parity, and the product with the stated inverse is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DimensionMismatch


class Z2Matrix:
    """A rows x cols matrix over Z_2 with bit-packed rows."""

    def __init__(self, rows: int, cols: int, row_masks: list[int]):
        if rows <= 0 or cols <= 0:
            raise DimensionMismatch("matrix dimensions must be positive")
        if len(row_masks) != rows:
            raise DimensionMismatch("row count mismatch")
        mask = (1 << cols) - 1
        self.rows = rows
        self.cols = cols
        self.row_masks = [r & mask for r in row_masks]

    @staticmethod
    def identity(n: int) -> "Z2Matrix":
        return Z2Matrix(n, n, [1 << i for i in range(n)])

    @staticmethod
    def from_lists(entries: list[list[int]]) -> "Z2Matrix":
        rows = len(entries)
        cols = len(entries[0])
        masks = []
        for row in entries:
            if len(row) != cols:
                raise DimensionMismatch("ragged matrix")
            m = 0
            for i, b in enumerate(row):
                if b & 1:
                    m |= 1 << i
            masks.append(m)
        return Z2Matrix(rows, cols, masks)

    def to_lists(self) -> list[list[int]]:
        return [[(r >> i) & 1 for i in range(self.cols)] for r in self.row_masks]

    def apply(self, v: int) -> int:
        """Matrix-vector product over Z_2; v is a cols-bit mask."""
        if v >> self.cols:
            raise DimensionMismatch("vector too long")
        out = 0
        for i, r in enumerate(self.row_masks):
            if (r & v).bit_count() & 1:
                out |= 1 << i
        return out

    def matmul(self, other: "Z2Matrix") -> "Z2Matrix":
        if self.cols != other.rows:
            raise DimensionMismatch("inner dimensions differ")
        out_rows = []
        for r in self.row_masks:
            acc = 0
            m = r
            while m:
                low = m & -m
                acc ^= other.row_masks[low.bit_length() - 1]
                m ^= low
            out_rows.append(acc)
        return Z2Matrix(self.rows, other.cols, out_rows)

    def is_identity(self) -> bool:
        return self.rows == self.cols and all(r == 1 << i for i, r in enumerate(self.row_masks))

    def __eq__(self, other):
        return (isinstance(other, Z2Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.row_masks == other.row_masks)

    def __repr__(self):
        return f"Z2Matrix({self.to_lists()})"


def _bits(positions) -> int:
    m = 0
    for p in positions:
        m |= 1 << p
    return m


def change_basis_matrix(g: int) -> Z2Matrix:
    """Map standard-system signatures to canonical-system signatures.

    Standard coordinates are ordered (z, a_1, b_1, ...) for odd genus and
    (y, w, a_1, b_1, ...) for even genus, matching the loop order produced
    by the standard-loops construction.
    """
    if g < 1:
        raise DimensionMismatch("genus must be >= 1")
    rows = []
    if g % 2:
        p = (g - 1) // 2
        # columns: z=0, a_j=2j-1, b_j=2j
        for i in range(1, p + 1):
            first = _bits([0] + [2 * j for j in range(1, i)] + [2 * i - 1])
            rows.append(first)
            rows.append(first | (1 << (2 * i)))
        rows.append(_bits([0] + [2 * j for j in range(1, p + 1)]))
    else:
        p = g // 2
        # columns: y=0, w=1, a_j=2j, b_j=2j+1
        rows.append(_bits([0, 1]))
        for i in range(1, p):
            first = _bits([1] + [2 * j + 1 for j in range(1, i)] + [2 * i])
            rows.append(first)
            rows.append(first | (1 << (2 * i + 1)))
        rows.append(_bits([1] + [2 * j + 1 for j in range(1, p)]))
    return Z2Matrix(g, g, rows)


def change_basis_inverse(g: int) -> Z2Matrix:
    """Inverse of :func:`change_basis_matrix` over Z_2."""
    if g < 1:
        raise DimensionMismatch("genus must be >= 1")
    full = (1 << g) - 1
    rows = []
    if g % 2:
        p = (g - 1) // 2
        rows.append(full)  # z in terms of all canonical loops
        for i in range(1, p + 1):
            rows.append(full & ~((1 << (2 * i - 1)) - 1))  # a_i: columns 2i-1..g-1
            rows.append(_bits([2 * i - 2, 2 * i - 1]))     # b_i
    else:
        p = g // 2
        rows.append(full)                       # y
        rows.append(full & ~1)                  # w: columns 1..g-1
        for i in range(1, p):
            rows.append(full & ~((1 << (2 * i)) - 1))  # a_i: columns 2i..g-1
            rows.append(_bits([2 * i - 1, 2 * i]))     # b_i
    return Z2Matrix(g, g, rows)


@dataclass
class RhoMap:
    """A linear map Z_2^g -> Z_2^k with a target set A of k-bit values."""

    matrix: Z2Matrix
    targets: tuple[int, ...]

    def __post_init__(self):
        if self.matrix.rows < 1:
            raise DimensionMismatch("k must be >= 1")
        for a in self.targets:
            if a >> self.matrix.rows:
                raise DimensionMismatch("target has more than k bits")

    @property
    def k(self) -> int:
        return self.matrix.rows

    @property
    def genus(self) -> int:
        return self.matrix.cols

    def apply(self, v: int) -> int:
        return self.matrix.apply(v)


def compose_rho(rho: RhoMap, phi: Z2Matrix) -> RhoMap:
    """rho' = rho composed with phi; the target set is unchanged."""
    return RhoMap(rho.matrix.matmul(phi), rho.targets)
