"""Exact integer matrices and Smith normal form.

Entries are Python ints, so intermediate growth never overflows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable


@dataclass(frozen=True)
class IntMatrix:
    """Sparse integer matrix; ``entries`` holds only the nonzero cells."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimension")
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise ValueError(f"entry ({i}, {j}) outside {self.rows}x{self.cols}")
            if v == 0:
                raise ValueError("zero stored explicitly")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, {})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @classmethod
    def from_dense(cls, rows: Iterable[Iterable[int]], cols: int | None = None) -> "IntMatrix":
        data = [list(r) for r in rows]
        ncols = len(data[0]) if data else (cols or 0)
        if cols is not None and data and ncols != cols:
            raise ValueError("column count mismatch")
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        entries = {(i, j): int(v) for i, r in enumerate(data) for j, v in enumerate(r) if v}
        return cls(len(data), ncols, entries)

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __getitem__(self, ij) -> int:
        return self.entries.get(ij, 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self.entries.items())))

    def __neg__(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, {k: -v for k, v in self.entries.items()})

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return IntMatrix(self.rows, self.cols, out)

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        return self + (-other)

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        by_row: dict[int, list] = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return IntMatrix(self.rows, other.cols, {k: v for k, v in out.items() if v})

    @property
    def T(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def is_zero(self) -> bool:
        return not self.entries

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.entries)

    def diagonal(self) -> list[int]:
        return [self[i, i] for i in range(min(self.rows, self.cols))]


@dataclass(frozen=True)
class SNFDecomposition:
    """``U @ M @ V == D`` with ``U``, ``V`` unimodular and ``D`` in Smith form."""

    D: IntMatrix
    U: IntMatrix
    V: IntMatrix

    @property
    def invariant_factors(self) -> list[int]:
        return [d for d in self.D.diagonal() if d]

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)


def _snf_dense(a: list[list[int]], m: int, n: int, track: bool):
    U = [[int(i == j) for j in range(m)] for i in range(m)] if track else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if track else None

    def swap_rows(i, k):
        a[i], a[k] = a[k], a[i]
        if track:
            U[i], U[k] = U[k], U[i]

    def swap_cols(j, k):
        for r in a:
            r[j], r[k] = r[k], r[j]
        if track:
            for r in V:
                r[j], r[k] = r[k], r[j]

    def add_row(dst, src, q):  # row_dst += q * row_src
        rd, rs = a[dst], a[src]
        for j in range(n):
            if rs[j]:
                rd[j] += q * rs[j]
        if track:
            ud, us = U[dst], U[src]
            for j in range(m):
                if us[j]:
                    ud[j] += q * us[j]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for r in a:
            if r[src]:
                r[dst] += q * r[src]
        if track:
            for r in V:
                if r[src]:
                    r[dst] += q * r[src]

    t = 0
    while t < min(m, n):
        # pivot: smallest nonzero |entry| of the active block, row-major tie-break
        while True:
            best = None
            for i in range(t, m):
                row = a[i]
                for j in range(t, n):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
                        if best[0] == 1:
                            break
                if best is not None and best[0] == 1:
                    break
            if best is None:
                return t, U, V
            _, i, j = best
            if i != t:
                swap_rows(t, i)
            if j != t:
                swap_cols(t, j)
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                if a[i][t]:
                    add_row(i, t, -(a[i][t] // p))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, n):
                if a[t][j]:
                    add_col(j, t, -(a[t][j] // p))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, m) if any(a[i][j] % p for j in range(t + 1, n))),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                U[t] = [-x for x in U[t]]
        t += 1
    return t, U, V


def smith_normal_form(M: IntMatrix) -> SNFDecomposition:
    """Exact Smith normal form with unimodular transforms.

    The pivot at each stage is the smallest nonzero absolute value in the
    active block, ties broken by row-major position.
    """
    m, n = M.rows, M.cols
    a = M.to_dense()
    _, U, V = _snf_dense(a, m, n, track=True)
    return SNFDecomposition(IntMatrix.from_dense(a, n), IntMatrix.from_dense(U, m), IntMatrix.from_dense(V, n))


def invariant_factors(M: IntMatrix) -> list[int]:
    """Nonzero invariant factors of ``M`` in divisibility order.

    Unit pivots are eliminated sparsely first (they contribute factor 1 and
    leave the remaining factors unchanged); whatever is left without unit
    entries goes through the dense Smith form.
    """
    rows: dict[int, dict[int, int]] = {}
    col_index: dict[int, set] = {}
    for (i, j), v in M.entries.items():
        rows.setdefault(i, {})[j] = v
        col_index.setdefault(j, set()).add(i)
    ones = 0
    while True:
        pivot = None
        for i in sorted(rows, key=lambda r: (len(rows[r]), r)):
            row = rows[i]
            unit_cols = [j for j, v in row.items() if v in (1, -1)]
            if unit_cols:
                j = min(unit_cols, key=lambda c: (len(col_index[c]), c))
                pivot = (i, j)
                break
        if pivot is None:
            break
        i, j = pivot
        prow = rows.pop(i)
        u = prow[j]
        for c in prow:
            col_index[c].discard(i)
        for r in sorted(col_index[j]):
            row = rows[r]
            q = row[j] * u
            for c, v in prow.items():
                nv = row.get(c, 0) - q * v
                if nv:
                    if c not in row:
                        col_index[c].add(r)
                    row[c] = nv
                elif c in row:
                    del row[c]
                    col_index[c].discard(r)
            if not row:
                del rows[r]
        del col_index[j]
        ones += 1
    rows = {i: r for i, r in rows.items() if r}
    if not rows:
        return [1] * ones
    cols = sorted({c for r in rows.values() for c in r})
    cpos = {c: k for k, c in enumerate(cols)}
    dense = []
    for i in sorted(rows):
        line = [0] * len(cols)
        for c, v in rows[i].items():
            line[cpos[c]] = v
        dense.append(line)
    t, _, _ = _snf_dense(dense, len(dense), len(cols), track=False)
    return [1] * ones + [dense[k][k] for k in range(t)]


def rank(M: IntMatrix) -> int:
    return len(invariant_factors(M))


def is_unimodular(M: IntMatrix) -> bool:
    return M.rows == M.cols and abs(determinant(M)) == 1


def determinant(M: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of a non-square matrix")
    n = M.rows
    a = M.to_dense()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def divisibility_chain(factors: list[int]) -> bool:
    return all(b % a == 0 for a, b in zip(factors, factors[1:]))


__all__ = [
    "IntMatrix",
    "SNFDecomposition",
    "smith_normal_form",
    "invariant_factors",
    "rank",
    "determinant",
    "is_unimodular",
    "divisibility_chain",
    "gcd",
]
