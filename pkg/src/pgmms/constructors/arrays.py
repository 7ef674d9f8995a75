"""Orthogonal arrays, Latin squares and the MacNeish product."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Sequence

from ..errors import ConstructionError
from ..fields import gf, is_prime_power
from ..geometry import IncidenceStructure, build_incidence


@dataclass(frozen=True)
class OrthogonalArray:
    """An m x n^2 array over {0..n-1}; any two rows show every symbol pair once."""

    rows: tuple[tuple[int, ...], ...]
    n: int

    def __post_init__(self):
        if self.n < 1 or not self.rows:
            raise ConstructionError("empty orthogonal array")
        width = self.n * self.n
        for r, row in enumerate(self.rows):
            if len(row) != width:
                raise ConstructionError(f"row {r} has {len(row)} entries, expected {width}")
            if any(not 0 <= x < self.n for x in row):
                raise ConstructionError(f"row {r} has a symbol outside 0..{self.n - 1}")
        for r1, r2 in combinations(range(self.m), 2):
            if len(set(zip(self.rows[r1], self.rows[r2]))) != width:
                raise ConstructionError(f"rows {r1} and {r2} repeat a symbol pair")

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def column_count(self) -> int:
        return self.n * self.n

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(row[c] for row in self.rows)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(c) for c in range(self.column_count)]

    def point(self, row: int, symbol: int) -> int:
        """Point index of (row, symbol) in :func:`oa_to_incidence`."""
        return row * self.n + symbol

    def column_points(self, c: int) -> tuple[int, ...]:
        return tuple(self.point(r, x) for r, x in enumerate(self.column(c)))


def is_orthogonal_array(rows: Sequence[Sequence[int]], n: int) -> bool:
    try:
        OrthogonalArray(tuple(tuple(r) for r in rows), n)
    except ConstructionError:
        return False
    return True


@dataclass(frozen=True)
class LatinSquare:
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.cells)
        full = set(range(n))
        for row in self.cells:
            if len(row) != n or set(row) != full:
                raise ConstructionError("every row must contain each symbol once")
        for j in range(n):
            if {row[j] for row in self.cells} != full:
                raise ConstructionError("every column must contain each symbol once")

    @property
    def order(self) -> int:
        return len(self.cells)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "LatinSquare":
        return cls(tuple(tuple(r) for r in rows))


def oa_from_field(q: int) -> OrthogonalArray:
    """OA(q+1, q) from GF(q): row r < q holds i + r*j, row q holds j.

    Column (i, j) sits at index i*q + j, so the all-zero column comes first.
    """
    if not is_prime_power(q):
        raise ConstructionError(f"{q} is not a prime power")
    F = gf(q)
    cols = [(i, j) for i in range(q) for j in range(q)]
    rows = [tuple(F.add(i, F.mul(r, j)) for i, j in cols) for r in range(q)]
    rows.append(tuple(j for _, j in cols))
    return OrthogonalArray(tuple(rows), q)


def _product_rows(a_rows, b_rows, n, modulus=None):
    # column (i, j) lives at index j*n^2 + i, so the first n^2 columns copy B
    w = n * n
    out = []
    for ar, br in zip(a_rows, b_rows):
        row = []
        for j in range(w):
            shift = n * ar[j]
            for i in range(w):
                x = br[i] + shift
                row.append(x % modulus if modulus else x)
        out.append(tuple(row))
    return tuple(out)


def macneish(A: OrthogonalArray, B: OrthogonalArray) -> OrthogonalArray:
    """OA(m, n^2) with entry B[r][i] + n*A[r][j] in column (i, j)."""
    if A.m != B.m or A.n != B.n:
        raise ConstructionError(
            f"shape mismatch: OA({A.m},{A.n}) vs OA({B.m},{B.n})"
        )
    n = A.n
    return OrthogonalArray(_product_rows(A.rows, B.rows, n), n * n)


@dataclass(frozen=True)
class ShiftedMacNeish:
    array: OrthogonalArray
    punctured_columns: tuple[int, ...]
    missing_column: tuple[int, ...]


def shifted_macneish(m: int) -> ShiftedMacNeish:
    """OA(m, (m-1)^2) containing an OA(m, m-1) minus its all-zero column.

    The base array is OA(m, m-1) over GF(m-1); its top-left entry is moved
    from 0 to m-1 before forming the product, entries taken mod (m-1)^2.
    """
    n = m - 1
    if m < 3 or not is_prime_power(n):
        raise ConstructionError(f"m-1 = {n} must be a prime power >= 2")
    A = oa_from_field(n)
    if any(A.column(0)):
        raise ConstructionError("base array must start with the all-zero column")
    b_rows = [list(r) for r in A.rows]
    b_rows[0][0] = n
    rows = _product_rows(A.rows, b_rows, n, modulus=n * n)
    arr = OrthogonalArray(rows, n * n)
    return ShiftedMacNeish(
        array=arr,
        punctured_columns=tuple(range(1, n * n)),
        missing_column=(0,) * m,
    )


def oa_to_incidence(A: OrthogonalArray) -> IncidenceStructure:
    """Points are (row, symbol) pairs, lines are columns."""
    return build_incidence(A.m * A.n, [A.column_points(c) for c in range(A.column_count)])


def column_line_indices(A: OrthogonalArray, structure: IncidenceStructure) -> list[int]:
    """Canonical line index of every column of ``A``."""
    return [structure.index_of_line(A.column_points(c)) for c in range(A.column_count)]


def latin_to_oa(L: LatinSquare) -> OrthogonalArray:
    n = L.order
    cells = [(i, j) for i in range(n) for j in range(n)]
    return OrthogonalArray(
        (
            tuple(i for i, _ in cells),
            tuple(j for _, j in cells),
            tuple(L.cells[i][j] for i, j in cells),
        ),
        n,
    )


def oa_to_latin(A: OrthogonalArray) -> LatinSquare:
    if A.m != 3:
        raise ConstructionError(f"need an OA with 3 rows, got {A.m}")
    n = A.n
    grid = [[None] * n for _ in range(n)]
    for c in range(A.column_count):
        i, j, k = A.column(c)
        grid[i][j] = k
    return LatinSquare(tuple(tuple(r) for r in grid))


def cyclic_latin_square(n: int) -> LatinSquare:
    return LatinSquare(tuple(tuple((i + j) % n for j in range(n)) for i in range(n)))


def elementary_abelian_square(p: int, e: int) -> LatinSquare:
    """Cayley table of (Z_p)^e, symbols encoded base p."""
    n = p**e

    def add(a, b):
        out, mul = 0, 1
        for _ in range(e):
            out += ((a % p + b % p) % p) * mul
            a //= p
            b //= p
            mul *= p
        return out

    return LatinSquare(tuple(tuple(add(i, j) for j in range(n)) for i in range(n)))


def symmetric_group_square() -> LatinSquare:
    """Cayley table of S3 with elements ordered lexicographically as permutations."""
    elems = list(permutations(range(3)))
    index = {g: i for i, g in enumerate(elems)}

    def compose(g, h):
        return tuple(g[h[x]] for x in range(3))

    return LatinSquare(tuple(tuple(index[compose(g, h)] for h in elems) for g in elems))


def transversals(L: LatinSquare) -> list[tuple[int, ...]]:
    """All transversals, each as the column chosen in row i (brute force)."""
    n = L.order
    out = []
    for perm in permutations(range(n)):
        if len({L.cells[i][perm[i]] for i in range(n)}) == n:
            out.append(perm)
    return out


def latin_subsquares(L: LatinSquare, k: int) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Every k x k subsquare as (row set, column set)."""
    n = L.order
    found = []
    for rows in combinations(range(n), k):
        for cols in combinations(range(n), k):
            syms = {L.cells[i][j] for i in rows for j in cols}
            if len(syms) == k:
                found.append((rows, cols))
    return found


def subsquare_points(L: LatinSquare, rows, cols) -> frozenset[int]:
    """Points of :func:`latin_to_oa` incidence that belong to a subsquare."""
    n = L.order
    syms = {L.cells[i][j] for i in rows for j in cols}
    return frozenset(
        [0 * n + i for i in rows] + [1 * n + j for j in cols] + [2 * n + s for s in syms]
    )


def subsquare_columns(L: LatinSquare, rows, cols) -> list[int]:
    """Column indices of :func:`latin_to_oa` that lie in a subsquare."""
    n = L.order
    return [i * n + j for i in rows for j in cols]
