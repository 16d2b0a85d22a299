"""Classical Goeritz matrices and the recursive bracket invariant mu.

A reduced Goeritz matrix is a symmetric integer matrix.  The invariant is
computed by repeatedly resolving an off-diagonal entry (two matrix moves) and
finally collapsing the diagonal; the result lives in the u ring of
:mod:`goeritz.polyring` with u = (-q)^(1/2).  Normalizing by the algebraic
crossing data (W, Wr) turns it into the Jones polynomial.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

from .polyring import D2_U, LaurentPoly, U, to_q_poly, u_pow

__all__ = [
    "UnreducedGoeritz",
    "GoeritzMatrix",
    "JonesNormData",
    "reduce",
    "transform_I",
    "transform_II",
    "transform_III",
    "P",
    "mu",
    "jones",
    "determinant",
    "MemoCache",
]


def _freeze(rows):
    return tuple(tuple(int(x) for x in row) for row in rows)


def _check_symmetric(rows):
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")


class GoeritzMatrix:
    """Reduced (symmetric, integer) Goeritz matrix."""

    __slots__ = ("rows", "deleted_index")

    def __init__(self, rows, deleted_index=None):
        self.rows = _freeze(rows)
        _check_symmetric(self.rows)
        self.deleted_index = deleted_index

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, GoeritzMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"GoeritzMatrix({list(map(list, self.rows))})"

    def mirror(self):
        return GoeritzMatrix([[-x for x in row] for row in self.rows],
                             self.deleted_index)


class UnreducedGoeritz:
    """Unreduced Goeritz matrix: symmetric with all row sums zero."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        self.rows = _freeze(rows)
        _check_symmetric(self.rows)
        for i, row in enumerate(self.rows):
            if sum(row) != 0:
                raise ValueError(f"row {i} does not sum to zero")

    def __len__(self):
        return len(self.rows)

    def __repr__(self):
        return f"UnreducedGoeritz({list(map(list, self.rows))})"

    def mirror(self):
        return UnreducedGoeritz([[-x for x in row] for row in self.rows])


@dataclass(frozen=True)
class JonesNormData:
    """Writhe metadata: W is the algebraic crossing count of the diagram,
    Wr the algebraic count of region self-crossings (invisible to the matrix)."""

    W: int
    Wr: int = 0


def reduce(unreduced, k):
    """Delete row and column k of an unreduced matrix."""
    rows = unreduced.rows if isinstance(unreduced, UnreducedGoeritz) else _freeze(unreduced)
    n = len(rows)
    if not 0 <= k < n:
        raise IndexError(f"delete index {k} out of range for {n}x{n} matrix")
    out = [[rows[i][j] for j in range(n) if j != k] for i in range(n) if i != k]
    return GoeritzMatrix(out, deleted_index=k)


def _rows_of(g):
    if isinstance(g, GoeritzMatrix):
        return g.rows
    rows = _freeze(g)
    _check_symmetric(rows)
    return rows


def transform_I(g, i, j):
    """Zero out the (i, j) entry, moving it onto both diagonal entries."""
    rows = _rows_of(g)
    if i == j:
        raise ValueError("transform_I needs i != j")
    out = [list(r) for r in rows]
    e = out[i][j]
    out[i][i] += e
    out[j][j] += e
    out[i][j] = out[j][i] = 0
    return GoeritzMatrix(out)


def transform_II(g, i, j):
    """Merge region j into region i; the matrix shrinks by one."""
    rows = _rows_of(g)
    if i == j:
        raise ValueError("transform_II needs i != j")
    n = len(rows)
    out = [list(r) for r in rows]
    out[i][i] = rows[i][i] + rows[j][j] + 2 * rows[i][j]
    for k in range(n):
        if k != i and k != j:
            out[i][k] = rows[i][k] + rows[j][k]
            out[k][i] = out[i][k]
    out = [[out[a][b] for b in range(n) if b != j] for a in range(n) if a != j]
    return GoeritzMatrix(out)


def transform_III(g, i):
    """Drop row/column i of a diagonal matrix."""
    rows = _rows_of(g)
    n = len(rows)
    for a in range(n):
        for b in range(n):
            if a != b and rows[a][b] != 0:
                raise ValueError("transform_III requires a diagonal matrix")
    out = [[rows[a][b] for b in range(n) if b != i] for a in range(n) if a != i]
    return GoeritzMatrix(out)


@lru_cache(maxsize=None)
def P(n):
    """Coefficient of the merging resolution of a band of n crossings.

    Binomial sum over partial resolutions; P(0) = 0, and
    P(n) * D2 = (-q)^(n/2) ((-1)^n q^(-2n) - 1) exactly.
    """
    if n == 0:
        return LaurentPoly.zero(U)
    s = 1 if n > 0 else -1
    a = abs(n)
    out = LaurentPoly.zero(U)
    for k in range(1, a + 1):
        out = out + math.comb(a, k) * D2_U ** (k - 1) * u_pow(s * (a - 2 * k))
    return out


class MemoCache(dict):
    """Invariant memo table, capped by the GOERITZ_MEMO_LIMIT env variable."""

    def store(self, key, value):
        limit = os.environ.get("GOERITZ_MEMO_LIMIT")
        if limit is None or len(self) < int(limit):
            self[key] = value
        return value


_MU_MEMO = MemoCache()


def _pivot(rows):
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j]:
                return i, j
    return None


def mu(g, _pivot_choice=None):
    """The bracket-valued invariant of a symmetric integer matrix.

    ``_pivot_choice`` optionally overrides pivot selection (a callable taking
    the matrix rows and returning an off-diagonal (i, j) or None); results do
    not depend on it, which is exercised by the property tests.
    """
    rows = _rows_of(g)
    if _pivot_choice is None:
        return _mu_memoized(rows)
    return _mu_rec(rows, _pivot_choice)


def _mu_memoized(rows):
    cached = _MU_MEMO.get(rows)
    if cached is not None:
        return cached
    return _MU_MEMO.store(rows, _mu_rec(rows, _pivot))


def _mu_rec(rows, pivot_choice):
    piv = pivot_choice(rows)
    if piv is not None:
        i, j = piv
        e = rows[i][j]
        if i == j or e == 0:
            raise ValueError("pivot must be a nonzero off-diagonal entry")
        branch_i = transform_I(rows, i, j).rows
        branch_ii = transform_II(rows, i, j).rows
        if pivot_choice is _pivot:
            a, b = _mu_memoized(branch_i), _mu_memoized(branch_ii)
        else:
            a, b = _mu_rec(branch_i, pivot_choice), _mu_rec(branch_ii, pivot_choice)
        return u_pow(e) * a + P(e) * b
    out = D2_U
    for i in range(len(rows)):
        e = rows[i][i]
        out = out * (u_pow(-e) * D2_U + P(-e))
    return out


def jones(g, norm):
    """Jones polynomial: (-(-q)^(3/2))^(-W + Wr) * mu(G), as a q-polynomial.

    Unknot value is q + 1/q.  Raises if the writhe metadata is inconsistent
    with the matrix (residual odd half-power).
    """
    e = -norm.W + norm.Wr
    val = (1 if e % 2 == 0 else -1) * u_pow(3 * e) * mu(g)
    try:
        return to_q_poly(val)
    except ValueError as exc:
        raise ValueError(
            f"inconsistent writhe metadata W={norm.W}, Wr={norm.Wr}") from exc


def determinant(g):
    """|det G| by fraction-free (Bareiss) elimination; empty matrix gives 1."""
    rows = [list(r) for r in _rows_of(g)]
    n = len(rows)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * rows[k][k] - rows[i][k] * rows[k][j]) // prev
            rows[i][k] = 0
        prev = rows[k][k]
    return abs(sign * rows[n - 1][n - 1])
