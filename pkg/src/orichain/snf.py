"""Smith normal form over the integers.

Two entry points: :func:`smith_normal_form` works densely and returns the
unimodular transforms, :func:`invariant_factors` eliminates a sparse matrix in
place and only keeps the diagonal.  Both pivot on an entry of least absolute
value and reduce the rest of its row and column by division with remainder.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence


@dataclass
class IntegerMatrix:
    """Sparse integer matrix: ``entries`` maps ``(row, col)`` to a nonzero int."""

    rows: int
    cols: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, j), v in self.entries.items():
            if not (0 <= i < self.rows and 0 <= j < self.cols):
                raise IndexError(f"entry ({i}, {j}) outside a {self.rows}x{self.cols} matrix")
            if v:
                clean[(i, j)] = int(v)
        self.entries = clean

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "IntegerMatrix":
        rows = [list(r) for r in rows]
        n = len(rows)
        m = len(rows[0]) if rows else 0
        return cls(n, m, {(i, j): v for i, r in enumerate(rows) for j, v in enumerate(r) if v})

    @classmethod
    def identity(cls, n: int) -> "IntegerMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def to_dense(self) -> list:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def __matmul__(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict = {}
        for (k, j), v in other.entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: dict = {}
        for (i, k), a in self.entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return IntegerMatrix(self.rows, other.cols, out)

    def __eq__(self, other):
        return (
            isinstance(other, IntegerMatrix)
            and (self.rows, self.cols) == (other.rows, other.cols)
            and self.entries == other.entries
        )

    def diagonal(self) -> list:
        return [self.entries.get((i, i), 0) for i in range(min(self.rows, self.cols))]


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def smith_normal_form(A: IntegerMatrix | Sequence[Sequence[int]], check: bool = True):
    """Return ``(S, U, V)`` with ``U @ A @ V == S`` diagonal, ``d_1 | d_2 | ...``, ``d_i >= 0``."""
    if not isinstance(A, IntegerMatrix):
        A = IntegerMatrix.from_dense(A)
    n, m = A.rows, A.cols
    a = A.to_dense()
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def row_addmul(mat, dst, src, q):
        rs, rd = mat[src], mat[dst]
        for j in range(len(rd)):
            if rs[j]:
                rd[j] -= q * rs[j]

    def col_addmul(mat, dst, src, q):
        for row in mat:
            if row[src]:
                row[dst] -= q * row[src]

    def swap_rows(mat, i, j):
        mat[i], mat[j] = mat[j], mat[i]

    def swap_cols(mat, i, j):
        for row in mat:
            row[i], row[j] = row[j], row[i]

    t = 0
    while t < min(n, m):
        best = None
        for i in range(t, n):
            for j in range(t, m):
                v = a[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        swap_rows(a, t, i)
        swap_rows(U, t, i)
        swap_cols(a, t, j)
        swap_cols(V, t, j)
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, n):
                if a[i][t]:
                    q = a[i][t] // p
                    row_addmul(a, i, t, q)
                    row_addmul(U, i, t, q)
                    if a[i][t]:
                        dirty = True
            for j in range(t + 1, m):
                if a[t][j]:
                    q = a[t][j] // p
                    col_addmul(a, j, t, q)
                    col_addmul(V, j, t, q)
                    if a[t][j]:
                        dirty = True
            if dirty:
                # a remainder smaller than the pivot survived: move it to the pivot
                best = None
                for i in range(t, n):
                    if a[i][t] and (best is None or abs(a[i][t]) < best[0]):
                        best = (abs(a[i][t]), i, "r")
                for j in range(t, m):
                    if a[t][j] and (best is None or abs(a[t][j]) < best[0]):
                        best = (abs(a[t][j]), j, "c")
                _, idx, kind = best
                if kind == "r":
                    swap_rows(a, t, idx)
                    swap_rows(U, t, idx)
                else:
                    swap_cols(a, t, idx)
                    swap_cols(V, t, idx)
                continue
            # divisibility: fold an offending row into row t and go again
            p = a[t][t]
            bad = next(
                (i for i in range(t + 1, n) for j in range(t + 1, m) if a[i][j] % p),
                None,
            )
            if bad is None:
                break
            row_addmul(a, t, bad, -1)
            row_addmul(U, t, bad, -1)
        if a[t][t] < 0:
            a[t] = [-v for v in a[t]]
            U[t] = [-v for v in U[t]]
        t += 1

    S = IntegerMatrix.from_dense(a) if n and m else IntegerMatrix(n, m)
    Um = IntegerMatrix.from_dense(U) if n else IntegerMatrix(0, 0)
    Vm = IntegerMatrix.from_dense(V) if m else IntegerMatrix(0, 0)
    if check:
        _check_snf(A, S, Um, Vm)
    return S, Um, Vm


def _check_snf(A, S, U, V):
    if (U @ A) @ V != S:
        raise AssertionError("U A V != S")
    if any(v for (i, j), v in S.entries.items() if i != j):
        raise AssertionError("S is not diagonal")
    d = [v for v in S.diagonal()]
    if any(v < 0 for v in d):
        raise AssertionError("negative diagonal entry")
    for x, y in zip(d, d[1:]):
        if (x == 0 and y != 0) or (x and y % x):
            raise AssertionError(f"divisibility chain broken: {d}")
    for M in (U, V):
        if M.rows and abs(determinant(M.to_dense())) != 1:
            raise AssertionError("transform is not unimodular")


def normalize_diagonal(values: Iterable[int]) -> list:
    """Invariant factors of a diagonal matrix: sorted chain with ``d_i | d_{i+1}``."""
    d = sorted(abs(v) for v in values if v)
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                g = gcd(d[i], d[j])
                if g != d[i]:
                    d[i], d[j] = g, d[i] * d[j] // g
                    changed = True
        d.sort()
    return d


def invariant_factors(A: IntegerMatrix) -> list:
    """Nonzero invariant factors of ``A`` (their count is the rank)."""
    rows: dict[int, dict[int, int]] = {}
    cols: dict[int, set] = {}
    for (i, j), v in A.entries.items():
        rows.setdefault(i, {})[j] = v
        cols.setdefault(j, set()).add(i)

    def setv(i, j, v):
        if v:
            rows.setdefault(i, {})[j] = v
            cols.setdefault(j, set()).add(i)
        else:
            r = rows.get(i)
            if r is not None and j in r:
                del r[j]
                if not r:
                    del rows[i]
            c = cols.get(j)
            if c is not None:
                c.discard(i)
                if not c:
                    del cols[j]

    diag = []
    while rows:
        # least absolute value pivot, preferring sparse rows among ties
        pi, pj, pv = None, None, None
        for i, r in rows.items():
            for j, v in r.items():
                if pv is None or abs(v) < abs(pv) or (abs(v) == abs(pv) and len(r) < len(rows[pi])):
                    pi, pj, pv = i, j, v
            if pv is not None and abs(pv) == 1 and len(rows[pi]) == 1:
                break
        while True:
            for i in list(cols.get(pj, ())):
                if i == pi:
                    continue
                q = rows[i][pj] // pv
                for j, v in list(rows[pi].items()):
                    setv(i, j, rows.get(i, {}).get(j, 0) - q * v)
            for j in list(rows.get(pi, {})):
                if j == pj:
                    continue
                q = rows[pi][j] // pv
                for i in list(cols.get(pj, ())):
                    setv(i, j, rows.get(i, {}).get(j, 0) - q * rows[i][pj])
            others_r = [j for j in rows.get(pi, {}) if j != pj]
            others_c = [i for i in cols.get(pj, ()) if i != pi]
            if not others_r and not others_c:
                break
            # a smaller remainder is left; take it as the new pivot
            cand = [(abs(rows[pi][j]), pi, j) for j in others_r] + [(abs(rows[i][pj]), i, pj) for i in others_c]
            _, pi, pj = min(cand)
            pv = rows[pi][pj]
        diag.append(pv)
        setv(pi, pj, 0)
    return normalize_diagonal(diag)


def solve_integer(A: IntegerMatrix | Sequence[Sequence[int]], b: Sequence[int]):
    """An integer solution of ``A x = b``, or None if there is none."""
    if not isinstance(A, IntegerMatrix):
        A = IntegerMatrix.from_dense(A)
    if len(b) != A.rows:
        raise ValueError("right-hand side has the wrong length")
    if A.cols == 0:
        return [] if not any(b) else None
    S, U, V = smith_normal_form(A, check=False)
    Ud = U.to_dense()
    c = [sum(u * v for u, v in zip(row, b)) for row in Ud]
    d = S.diagonal()
    y = [0] * A.cols
    for i, ci in enumerate(c):
        di = d[i] if i < len(d) else 0
        if di == 0:
            if ci:
                return None
        else:
            if ci % di:
                return None
            y[i] = ci // di
    Vd = V.to_dense()
    return [sum(Vd[r][j] * y[j] for j in range(A.cols)) for r in range(A.cols)]
