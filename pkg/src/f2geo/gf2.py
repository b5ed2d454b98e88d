"""Bit-packed linear algebra over GF(2).

Conventions used throughout the package:

  Vector: a python int, bit j = component j (component 0 in the least
          significant bit).  Addition is XOR.
  Matrix: ``GF2Matrix`` holding a tuple of row ints, M[i][j] = (rows[i] >> j) & 1.
          Matrices of any shape are supported; rows are arbitrary-precision
          ints so there is no column limit.

Enumeration order of GL(n,2) is lexicographic on the row-major bit string
with entry (0,0) most significant, i.e. ascending in the integer

    key(M) = sum of M[i][j] << (n*n - 1 - (i*n + j)).

Affine systems are solved by Gaussian elimination processing columns in
ascending order and picking the lowest-index remaining row as pivot, which
makes the reduced form, the particular solution (free variables = 0) and
the nullspace basis canonical.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence


class DimensionMismatch(ValueError):
    """Operands have incompatible shapes."""


class Singular(ValueError):
    """Matrix is not invertible over GF(2)."""


class Inconsistent(ValueError):
    """Linear system has no solution over GF(2)."""


@dataclass(frozen=True)
class GF2Matrix:
    """Immutable matrix over GF(2); rows[i] bit j is entry (i, j)."""

    rows: tuple[int, ...]
    cols: int

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def entry(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[self.entry(i, j) for j in range(self.cols)] for i in range(self.nrows)]

    def packed(self) -> int:
        """Row-major packing, entry (i,j) at bit i*cols + j."""
        out = 0
        for i, r in enumerate(self.rows):
            out |= r << (i * self.cols)
        return out

    def __str__(self) -> str:
        return "\n".join(
            "".join(str(self.entry(i, j)) for j in range(self.cols))
            for i in range(self.nrows)
        )


def mat_from_lists(entries: Sequence[Sequence[int]]) -> GF2Matrix:
    cols = len(entries[0])
    rows = []
    for row in entries:
        if len(row) != cols:
            raise DimensionMismatch("ragged rows")
        acc = 0
        for j, e in enumerate(row):
            acc |= (int(e) & 1) << j
        rows.append(acc)
    return GF2Matrix(tuple(rows), cols)


def mat_identity(n: int) -> GF2Matrix:
    return GF2Matrix(tuple(1 << i for i in range(n)), n)


def mat_transpose(m: GF2Matrix) -> GF2Matrix:
    rows = []
    for j in range(m.cols):
        acc = 0
        for i in range(m.nrows):
            acc |= m.entry(i, j) << i
        rows.append(acc)
    return GF2Matrix(tuple(rows), m.nrows)


def mat_vec(m: GF2Matrix, v: int) -> int:
    """Matrix times column vector: bit i of result = parity(rows[i] & v)."""
    out = 0
    for i, r in enumerate(m.rows):
        out |= ((r & v).bit_count() & 1) << i
    return out


def mat_mul(a: GF2Matrix, b: GF2Matrix) -> GF2Matrix:
    if a.cols != b.nrows:
        raise DimensionMismatch(f"{a.cols} cols vs {b.nrows} rows")
    rows = []
    for r in a.rows:
        acc = 0
        k = 0
        rr = r
        while rr:
            if rr & 1:
                acc ^= b.rows[k]
            rr >>= 1
            k += 1
        rows.append(acc)
    return GF2Matrix(tuple(rows), b.cols)


def mat_add(a: GF2Matrix, b: GF2Matrix) -> GF2Matrix:
    if a.cols != b.cols or a.nrows != b.nrows:
        raise DimensionMismatch("shape mismatch")
    return GF2Matrix(tuple(x ^ y for x, y in zip(a.rows, b.rows)), a.cols)


def mat_rank(m: GF2Matrix) -> int:
    rows = [r for r in m.rows if r]
    rank = 0
    for col in range(m.cols):
        bit = 1 << col
        pivot = None
        for idx in range(rank, len(rows)):
            if rows[idx] & bit:
                pivot = idx
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for idx in range(len(rows)):
            if idx != rank and rows[idx] & bit:
                rows[idx] ^= rows[rank]
        rank += 1
        if rank == len(rows):
            break
    return rank


def mat_inverse(m: GF2Matrix) -> GF2Matrix:
    """Inverse of a square matrix; raises Singular for degenerate input."""
    n = m.nrows
    if m.cols != n:
        raise DimensionMismatch("inverse needs a square matrix")
    # Augment each row with the identity in the high bits and eliminate.
    aug = [m.rows[i] | (1 << (n + i)) for i in range(n)]
    for col in range(n):
        bit = 1 << col
        pivot = None
        for idx in range(col, n):
            if aug[idx] & bit:
                pivot = idx
                break
        if pivot is None:
            raise Singular(f"rank < {n}")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        for idx in range(n):
            if idx != col and aug[idx] & bit:
                aug[idx] ^= aug[col]
    mask = (1 << n) - 1
    return GF2Matrix(tuple((r >> n) & mask for r in aug), n)


def is_invertible(m: GF2Matrix) -> bool:
    return m.nrows == m.cols and mat_rank(m) == m.nrows


def gl_order(n: int) -> int:
    """|GL(n,2)| = prod_{k<n} (2^n - 2^k)."""
    out = 1
    for k in range(n):
        out *= (1 << n) - (1 << k)
    return out


def enumerate_gl(n: int, unsafe_large: bool = False) -> Iterator[GF2Matrix]:
    """Yield every invertible n x n matrix once, in the documented order."""
    if not (1 <= n <= 4) and not unsafe_large:
        raise ValueError("n outside 1..4; pass unsafe_large=True to override")
    nn = n * n
    for key in range(1 << nn):
        rows = []
        for i in range(n):
            acc = 0
            for j in range(n):
                acc |= ((key >> (nn - 1 - (i * n + j))) & 1) << j
            rows.append(acc)
        m = GF2Matrix(tuple(rows), n)
        if mat_rank(m) == n:
            yield m


@lru_cache(maxsize=8)
def gl_group(n: int) -> tuple[GF2Matrix, ...]:
    return tuple(enumerate_gl(n))


@dataclass(frozen=True)
class AffineSolutionSpace:
    """Solutions {particular ^ span(basis)} of a linear system in nvars bits.

    members() walks the space in ascending combination index: member k is
    particular XOR basis[i] for every set bit i of k, so member 0 is the
    particular solution and the order is reproducible.
    """

    particular: int
    basis: tuple[int, ...]
    nvars: int

    @property
    def dim(self) -> int:
        return len(self.basis)

    def size(self) -> int:
        return 1 << self.dim

    def member(self, k: int) -> int:
        out = self.particular
        i = 0
        while k:
            if k & 1:
                out ^= self.basis[i]
            k >>= 1
            i += 1
        return out

    def members(self) -> Iterator[int]:
        # Gray-code walk, re-emitted in plain ascending order of k.
        for k in range(1 << self.dim):
            yield self.member(k)

    def contains(self, v: int) -> bool:
        """True iff v solves the originating system."""
        target = v ^ self.particular
        if target == 0:
            return True
        rows = list(self.basis)
        rank_a = mat_rank(GF2Matrix(tuple(rows), self.nvars))
        rank_aug = mat_rank(GF2Matrix(tuple(rows + [target]), self.nvars))
        return rank_a == rank_aug


def solve_affine(equations: Sequence[tuple[int, int]], nvars: int) -> AffineSolutionSpace:
    """Solve a linear system over GF(2).

    Each equation is (mask, rhs): XOR of the variables selected by mask
    equals rhs.  Returns the full affine solution space; raises Inconsistent
    when 0 = 1 is derived.
    """
    rows = [(mask, rhs & 1) for mask, rhs in equations if mask or rhs]
    pivots: dict[int, tuple[int, int]] = {}  # col -> reduced (mask, rhs)
    for mask, rhs in rows:
        for col, prow in pivots.items():
            if mask & (1 << col):
                mask ^= prow[0]
                rhs ^= prow[1]
        if mask == 0:
            if rhs:
                raise Inconsistent("0 = 1")
            continue
        col = (mask & -mask).bit_length() - 1
        # Reduce previous pivot rows by the new one.
        for c, (pm, pr) in list(pivots.items()):
            if pm & (1 << col):
                pivots[c] = (pm ^ mask, pr ^ rhs)
        pivots[col] = (mask, rhs)
    particular = 0
    for col, (_, rhs) in pivots.items():
        if rhs:
            particular |= 1 << col
    free_cols = [c for c in range(nvars) if c not in pivots]
    basis = []
    for f in free_cols:
        vec = 1 << f
        for col, (mask, _) in pivots.items():
            if mask & (1 << f):
                vec |= 1 << col
        basis.append(vec)
    return AffineSolutionSpace(particular, tuple(basis), nvars)


def bits_of(x: int) -> Iterator[int]:
    """Indices of the set bits of x, ascending."""
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low
