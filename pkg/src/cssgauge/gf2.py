"""Exact linear algebra over GF(2).

Vectors and matrix rows are stored as Python integers (bit j of a row is
column j), which gives word-parallel XOR elimination for free while the
construction API stays sparse (sets of positions).  Everything is
immutable by convention; elimination results are memoised per matrix.

Canonical conventions, relied on throughout the package:

* row reduction picks the leftmost pivot in each column sweep,
* ``solve`` fixes all free variables to zero,
* ``kernel_basis`` enumerates free columns in ascending order.

These make kernel bases, solutions and everything derived from them
reproducible across runs.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


def _mask_to_support(bits: int) -> tuple[int, ...]:
    out = []
    i = 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return tuple(out)


class BitVec:
    """A vector over GF(2) with a fixed length."""

    __slots__ = ("length", "bits")

    def __init__(self, length: int, bits: int = 0):
        if length < 0:
            raise ValueError("negative length")
        if bits < 0 or bits >> length:
            raise ValueError("support index out of range")
        object.__setattr__(self, "length", length)
        object.__setattr__(self, "bits", bits)

    def __setattr__(self, name, value):
        raise AttributeError("BitVec is immutable")

    @classmethod
    def from_support(cls, length: int, support: Iterable[int]) -> "BitVec":
        bits = 0
        for i in support:
            if not 0 <= i < length:
                raise ValueError(f"support index {i} out of range for length {length}")
            bits |= 1 << i
        return cls(length, bits)

    @property
    def support(self) -> tuple[int, ...]:
        return _mask_to_support(self.bits)

    @property
    def weight(self) -> int:
        return self.bits.bit_count()

    def is_zero(self) -> bool:
        return self.bits == 0

    def get(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise ValueError(f"index {i} out of range")
        return (self.bits >> i) & 1

    def __xor__(self, other: "BitVec") -> "BitVec":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVec(self.length, self.bits ^ other.bits)

    def dot(self, other: "BitVec") -> int:
        """Parity of the overlap, i.e. the GF(2) inner product."""
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count() & 1

    def overlap(self, other: "BitVec") -> int:
        """Size of the common support (an integer, not mod 2)."""
        if self.length != other.length:
            raise ValueError("length mismatch")
        return (self.bits & other.bits).bit_count()

    def restrict(self, keep: "BitVec") -> "BitVec":
        """Zero out coordinates outside ``keep``."""
        if self.length != keep.length:
            raise ValueError("length mismatch")
        return BitVec(self.length, self.bits & keep.bits)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitVec)
            and self.length == other.length
            and self.bits == other.bits
        )

    def __hash__(self):
        return hash((self.length, self.bits))

    def __repr__(self):
        return f"BitVec({self.length}, support={list(self.support)})"

    def to_json(self) -> dict:
        return {"length": self.length, "support": list(self.support)}

    @classmethod
    def from_json(cls, data: dict) -> "BitVec":
        return cls.from_support(data["length"], data["support"])


class BitMatrix:
    """A matrix over GF(2); rows stored as integer bitmasks."""

    __slots__ = ("rows", "cols", "_rows", "_rref")

    def __init__(self, rows: int, cols: int, row_bits: Sequence[int]):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        if len(row_bits) != rows:
            raise ValueError("row count mismatch")
        for r in row_bits:
            if r < 0 or r >> cols:
                raise ValueError("entry column out of range")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_rows", tuple(row_bits))
        object.__setattr__(self, "_rref", None)

    def __setattr__(self, name, value):
        raise AttributeError("BitMatrix is immutable")

    # -- constructors ------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "BitMatrix":
        return cls(rows, cols, [0] * rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, [1 << i for i in range(n)])

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable[tuple[int, int]]) -> "BitMatrix":
        row_bits = [0] * rows
        seen = set()
        for r, c in entries:
            if not (0 <= r < rows and 0 <= c < cols):
                raise ValueError(f"entry ({r},{c}) out of range")
            if (r, c) in seen:
                raise ValueError(f"duplicate entry ({r},{c})")
            seen.add((r, c))
            row_bits[r] |= 1 << c
        return cls(rows, cols, row_bits)

    @classmethod
    def from_rows(cls, cols: int, rows: Iterable) -> "BitMatrix":
        """Rows may be BitVec instances or raw bitmask integers."""
        bits = []
        for r in rows:
            if isinstance(r, BitVec):
                if r.length != cols:
                    raise ValueError("row length mismatch")
                bits.append(r.bits)
            else:
                bits.append(int(r))
        return cls(len(bits), cols, bits)

    @classmethod
    def from_columns(cls, rows: int, columns: Iterable) -> "BitMatrix":
        cols_list = []
        for c in columns:
            if isinstance(c, BitVec):
                if c.length != rows:
                    raise ValueError("column length mismatch")
                cols_list.append(c.bits)
            else:
                cols_list.append(int(c))
        row_bits = [0] * rows
        for j, cbits in enumerate(cols_list):
            for i in _mask_to_support(cbits):
                row_bits[i] |= 1 << j
        return cls(rows, len(cols_list), row_bits)

    # -- access ------------------------------------------------------

    def row(self, i: int) -> BitVec:
        return BitVec(self.cols, self._rows[i])

    def row_bits(self, i: int) -> int:
        return self._rows[i]

    def column(self, j: int) -> BitVec:
        if not 0 <= j < self.cols:
            raise ValueError("column out of range")
        bits = 0
        for i, r in enumerate(self._rows):
            bits |= ((r >> j) & 1) << i
        return BitVec(self.rows, bits)

    @property
    def entries(self) -> tuple[tuple[int, int], ...]:
        out = []
        for i, r in enumerate(self._rows):
            for j in _mask_to_support(r):
                out.append((i, j))
        return tuple(out)

    def is_zero(self) -> bool:
        return all(r == 0 for r in self._rows)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BitMatrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.rows, self.cols, self._rows))

    def __repr__(self):
        return f"BitMatrix({self.rows}x{self.cols}, {len(self.entries)} entries)"

    # -- algebra -----------------------------------------------------

    def transpose(self) -> "BitMatrix":
        row_bits = [0] * self.cols
        for i, r in enumerate(self._rows):
            b = r
            j = 0
            while b:
                if b & 1:
                    row_bits[j] |= 1 << i
                b >>= 1
                j += 1
        return BitMatrix(self.cols, self.rows, row_bits)

    def mul_vec(self, v: BitVec) -> BitVec:
        if v.length != self.cols:
            raise ValueError("dimension mismatch in matrix-vector product")
        bits = 0
        for i, r in enumerate(self._rows):
            bits |= ((r & v.bits).bit_count() & 1) << i
        return BitVec(self.rows, bits)

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch in matrix product")
        out = []
        for r in self._rows:
            acc = 0
            b = r
            j = 0
            while b:
                if b & 1:
                    acc ^= other._rows[j]
                b >>= 1
                j += 1
            out.append(acc)
        return BitMatrix(self.rows, other.cols, out)

    def stack(self, other: "BitMatrix") -> "BitMatrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in stack")
        return BitMatrix(self.rows + other.rows, self.cols, self._rows + other._rows)

    def augment_columns(self, extra: Iterable[BitVec]) -> "BitMatrix":
        """Append extra columns (each a BitVec of length ``rows``)."""
        cols_extra = list(extra)
        row_bits = list(self._rows)
        for k, cv in enumerate(cols_extra):
            if cv.length != self.rows:
                raise ValueError("column length mismatch")
            for i in _mask_to_support(cv.bits):
                row_bits[i] |= 1 << (self.cols + k)
        return BitMatrix(self.rows, self.cols + len(cols_extra), row_bits)

    def select_rows(self, indices: Sequence[int]) -> "BitMatrix":
        return BitMatrix(len(indices), self.cols, [self._rows[i] for i in indices])

    # -- elimination -------------------------------------------------

    def _reduced(self):
        """Reduced row echelon form: (pivot column list, reduced row list).

        Leftmost-pivot order; rows fully reduced above and below.
        """
        if self._rref is not None:
            return self._rref
        work = list(self._rows)
        pivots = []
        pivot_row = 0
        for col in range(self.cols):
            sel = None
            mask = 1 << col
            for r in range(pivot_row, len(work)):
                if work[r] & mask:
                    sel = r
                    break
            if sel is None:
                continue
            work[pivot_row], work[sel] = work[sel], work[pivot_row]
            for r in range(len(work)):
                if r != pivot_row and (work[r] & mask):
                    work[r] ^= work[pivot_row]
            pivots.append(col)
            pivot_row += 1
            if pivot_row == len(work):
                break
        result = (tuple(pivots), tuple(work))
        object.__setattr__(self, "_rref", result)
        return result

    # -- serialisation -----------------------------------------------

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [list(e) for e in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "BitMatrix":
        return cls.from_entries(data["rows"], data["cols"], [tuple(e) for e in data["entries"]])


def rank(m: BitMatrix) -> int:
    """GF(2) row rank."""
    return len(m._reduced()[0])


def kernel_basis(m: BitMatrix) -> BitMatrix:
    """Rows form a canonical basis of the right kernel {v : M v = 0}."""
    pivots, reduced = m._reduced()
    pivot_set = set(pivots)
    free_cols = [c for c in range(m.cols) if c not in pivot_set]
    out = []
    for f in free_cols:
        v = 1 << f
        for i, c in enumerate(pivots):
            if (reduced[i] >> f) & 1:
                v |= 1 << c
        out.append(v)
    return BitMatrix(len(out), m.cols, out)


def solve(m: BitMatrix, b: BitVec) -> Optional[BitVec]:
    """Canonical solution of M x = b, or None when b is not in the image.

    Deterministic: leftmost pivots, free variables zero.  The returned
    solution is the unique one supported on pivot columns.
    """
    if b.length != m.rows:
        raise ValueError("right-hand side length mismatch")
    # Row-reduce the augmented matrix [M | b] with the same pivot policy.
    work = [m._rows[i] | (((b.bits >> i) & 1) << m.cols) for i in range(m.rows)]
    pivots = []
    pivot_row = 0
    for col in range(m.cols):
        sel = None
        mask = 1 << col
        for r in range(pivot_row, len(work)):
            if work[r] & mask:
                sel = r
                break
        if sel is None:
            continue
        work[pivot_row], work[sel] = work[sel], work[pivot_row]
        for r in range(len(work)):
            if r != pivot_row and (work[r] & mask):
                work[r] ^= work[pivot_row]
        pivots.append(col)
        pivot_row += 1
        if pivot_row == len(work):
            break
    aug_mask = 1 << m.cols
    for r in range(pivot_row, len(work)):
        if work[r] & aug_mask:
            return None
    x = 0
    for i, c in enumerate(pivots):
        if work[i] & aug_mask:
            x |= 1 << c
    return BitVec(m.cols, x)


class LinearSolver:
    """Reusable canonical solver for M x = b with many right-hand sides.

    Eliminates [M | I] once; each solve is then a handful of word-parallel
    dot products.  Solutions match ``solve`` exactly (leftmost pivots,
    free variables zero).
    """

    def __init__(self, m: BitMatrix):
        self.m = m
        work = [m._rows[i] | (1 << (m.cols + i)) for i in range(m.rows)]
        pivots = []
        pivot_row = 0
        for col in range(m.cols):
            sel = None
            mask = 1 << col
            for r in range(pivot_row, len(work)):
                if work[r] & mask:
                    sel = r
                    break
            if sel is None:
                continue
            work[pivot_row], work[sel] = work[sel], work[pivot_row]
            for r in range(len(work)):
                if r != pivot_row and (work[r] & mask):
                    work[r] ^= work[pivot_row]
            pivots.append(col)
            pivot_row += 1
            if pivot_row == len(work):
                break
        col_mask = (1 << m.cols) - 1
        self.pivots = pivots
        self.transform = [w >> m.cols for w in work]   # row ops applied to I
        self.reduced = [w & col_mask for w in work]

    def solve(self, b: BitVec) -> Optional[BitVec]:
        if b.length != self.m.rows:
            raise ValueError("right-hand side length mismatch")
        x = 0
        r = len(self.pivots)
        for i, c in enumerate(self.pivots):
            if (self.transform[i] & b.bits).bit_count() & 1:
                x |= 1 << c
        for i in range(r, self.m.rows):
            if (self.transform[i] & b.bits).bit_count() & 1:
                return None
        return BitVec(self.m.cols, x)


def is_zero_product(a: BitMatrix, b: BitMatrix) -> bool:
    """True iff A B = 0 over GF(2)."""
    if a.cols != b.rows:
        raise ValueError("dimension mismatch in product check")
    bt = b.transpose()
    for ra in a._rows:
        for rb in bt._rows:
            if (ra & rb).bit_count() & 1:
                return False
    return True


def row_space_contains(m: BitMatrix, v: BitVec) -> bool:
    """True iff v lies in the span of the rows of M."""
    if v.length != m.cols:
        raise ValueError("length mismatch")
    return solve(m.transpose(), v) is not None
