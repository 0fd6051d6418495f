"""Smith normal form over Z, kernels, and the elementary divisors of a pair.

Matrices are :class:`IntMatrix` values holding Python ints, so there is no
overflow; the pivot rule (smallest nonzero absolute value, ties broken by
row then column) makes every result deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


class NotInSpanError(ValueError):
    """A vector of the sub-basis is not an integer combination of the ambient basis."""


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        entries = tuple(tuple(int(x) for x in r) for r in self.entries)
        if len(entries) != self.rows or any(len(r) != self.cols for r in entries):
            raise ValueError("matrix is not rectangular")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> IntMatrix:
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(r) for r in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], rows: int) -> IntMatrix:
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> IntMatrix:
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.entries[i][j]

    def __matmul__(self, other: IntMatrix) -> IntMatrix:
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        cols = list(zip(*other.entries)) if other.rows else [()] * other.cols
        return IntMatrix(self.rows, other.cols,
                         tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in cols) for r in self.entries))

    def transpose(self) -> IntMatrix:
        return IntMatrix(self.cols, self.rows, tuple(tuple(self.entries[i][j] for i in range(self.rows))
                                                     for j in range(self.cols)))

    def columns(self) -> list[tuple[int, ...]]:
        return [tuple(self.entries[i][j] for i in range(self.rows)) for j in range(self.cols)]

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.entries for x in r)

    def determinant(self) -> int:
        """Exact determinant by fraction-free (Bareiss) elimination."""
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1] if n else 1


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == D`` with ``U``, ``V`` unimodular and ``D`` diagonal."""

    U: IntMatrix
    V: IntMatrix
    D: IntMatrix
    divisors: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.divisors if d)

    def to_json(self) -> dict:
        return {"divisors": list(self.divisors), "rank": self.rank,
                "U": self.U.tolist(), "V": self.V.tolist(), "D": self.D.tolist()}


def _as_matrix(a) -> IntMatrix:
    return a if isinstance(a, IntMatrix) else IntMatrix.from_rows(a)


def snf(a: IntMatrix | Sequence[Sequence[int]]) -> SmithDecomposition:
    a = _as_matrix(a)
    m, n = a.rows, a.cols
    A = a.tolist()
    U = IntMatrix.identity(m).tolist()
    V = IntMatrix.identity(n).tolist()

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, q):
        # row_dst += q * row_src
        A[dst] = [x + q * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for M in (A, V):
            for r in M:
                r[dst] += q * r[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = A[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, pi, pj = best
            if pi != t:
                swap_rows(t, pi)
            if pj != t:
                swap_cols(t, pj)
            p = A[t][t]
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
            if any(A[i][t] for i in range(t + 1, m)) or any(A[t][j] for j in range(t + 1, n)):
                continue
            bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        if A[t][t] == 0:
            break

    divisors = tuple(A[i][i] for i in range(min(m, n)))
    return SmithDecomposition(IntMatrix(m, m, tuple(map(tuple, U))), IntMatrix(n, n, tuple(map(tuple, V))),
                              IntMatrix(m, n, tuple(map(tuple, A))), divisors)


def elementary_divisors(a) -> tuple[int, ...]:
    return snf(a).divisors


def rank(a) -> int:
    return snf(a).rank


def kernel_basis(a: IntMatrix | Sequence[Sequence[int]]) -> IntMatrix:
    """Columns form a Z-basis of ``{x : A x = 0}``."""
    a = _as_matrix(a)
    dec = snf(a)
    r = dec.rank
    return IntMatrix(a.cols, a.cols - r, tuple(row[r:] for row in dec.V.entries))


def solve_in_span(ambient_basis: IntMatrix, vectors: IntMatrix) -> IntMatrix:
    """Integer coefficients ``C`` with ``ambient_basis @ C == vectors``.

    ``ambient_basis`` must have independent columns.
    """
    if ambient_basis.rows != vectors.rows:
        raise ValueError("ambient and sub bases live in different lattices")
    k = ambient_basis.cols
    dec = snf(ambient_basis)
    if dec.rank != k:
        raise ValueError("ambient basis columns are not linearly independent")
    us = dec.U @ vectors
    y = []
    for i in range(k):
        d = dec.divisors[i]
        row = []
        for x in us.entries[i]:
            if x % d:
                raise NotInSpanError("sub-basis is not contained in the integer span of the ambient basis")
            row.append(x // d)
        y.append(row)
    if any(x for row in us.entries[k:] for x in row):
        raise NotInSpanError("sub-basis is not contained in the span of the ambient basis")
    return dec.V @ IntMatrix(k, vectors.cols, tuple(map(tuple, y)))


@dataclass(frozen=True)
class AbelianGroup:
    """``Z^free_rank  +  Z/d_1 + ... + Z/d_k`` with each ``d_i > 1``."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.insert(0, "Z")
        elif self.free_rank > 1:
            parts.insert(0, f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion), "text": str(self)}


def cokernel(a: IntMatrix | Sequence[Sequence[int]]) -> AbelianGroup:
    """``Z^rows / image(A)``."""
    a = _as_matrix(a)
    dec = snf(a)
    return AbelianGroup(a.rows - dec.rank, tuple(d for d in dec.divisors if d > 1))


def pair_divisors(ambient_basis: IntMatrix, sub_basis: IntMatrix) -> tuple[int, ...]:
    """Elementary divisors of the inclusion ``span(sub) <= span(ambient)``."""
    return snf(solve_in_span(ambient_basis, sub_basis)).divisors


def pair_quotient(ambient_basis: IntMatrix, sub_basis: IntMatrix) -> AbelianGroup:
    coeffs = solve_in_span(ambient_basis, sub_basis)
    dec = snf(coeffs)
    return AbelianGroup(ambient_basis.cols - dec.rank, tuple(d for d in dec.divisors if d > 1))

