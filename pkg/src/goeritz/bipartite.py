"""Quadruple Goeritz matrices and the bipartite matrix invariant.

Entries carry four independent counts (x, y, z, t), one per kind of lock
tangle seen by the checkerboard shading.  The invariant mirrors the classical
recursion of :mod:`goeritz.goeritz` with coefficients in the symbol ring
(phi, phibar, DN); normalizing by the lock counts gives the HOMFLY-PT
polynomial of the bipartite link.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from . import polyring as pr
from .goeritz import GoeritzMatrix, JonesNormData, MemoCache
from .polyring import BIP, DN, LaurentPoly, PolyValue, phi_pow, phibar_pow, substitute

__all__ = [
    "QuadEntry",
    "QuadGoeritzMatrix",
    "LockCounts",
    "reduce_quad",
    "qtransform_I",
    "qtransform_II",
    "qtransform_III",
    "p_band_x",
    "p_band_y",
    "p_band_z",
    "p_band_t",
    "split_coeff",
    "merge_coeff",
    "diag_factor",
    "M",
    "homfly",
    "homfly_symbol",
    "compensation_factor",
    "to_precursor",
]

ONE = LaurentPoly.const(BIP, 1)


class QuadEntry(NamedTuple):
    """Signed counts of the four lock symbols in one matrix entry.

    An entry like "t_hat - 1" in a worked matrix means x = -1, t = 1.
    """

    x: int = 0
    y: int = 0
    z: int = 0
    t: int = 0

    def __add__(self, other):
        return QuadEntry(self.x + other.x, self.y + other.y,
                         self.z + other.z, self.t + other.t)

    def __neg__(self):
        return QuadEntry(-self.x, -self.y, -self.z, -self.t)

    def __mul__(self, k):
        return QuadEntry(k * self.x, k * self.y, k * self.z, k * self.t)

    __rmul__ = __mul__

    def is_zero(self):
        return self == (0, 0, 0, 0)

    def precursor(self):
        """Collapse to the classical integer entry."""
        return self.x + self.y + self.z + self.t

    def mirror(self):
        """Entry of the mirror diagram: swaps the phi and phibar families."""
        return QuadEntry(-self.z, -self.t, -self.x, -self.y)


ZERO_ENTRY = QuadEntry()


def _freeze(rows):
    return tuple(tuple(QuadEntry(*e) for e in row) for row in rows)


def _check_symmetric(rows):
    n = len(rows)
    for row in rows:
        if len(row) != n:
            raise ValueError("matrix must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if rows[i][j] != rows[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i},{j})")


class QuadGoeritzMatrix:
    """Symmetric matrix of QuadEntry values."""

    __slots__ = ("rows", "deleted_index")

    def __init__(self, rows, deleted_index=None):
        self.rows = _freeze(rows)
        _check_symmetric(self.rows)
        self.deleted_index = deleted_index

    def __len__(self):
        return len(self.rows)

    def __eq__(self, other):
        return isinstance(other, QuadGoeritzMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return f"QuadGoeritzMatrix({[[tuple(e) for e in r] for r in self.rows]})"

    def mirror(self):
        return QuadGoeritzMatrix([[e.mirror() for e in row] for row in self.rows],
                                 self.deleted_index)

    def precursor_rows(self):
        return tuple(tuple(e.precursor() for e in row) for row in self.rows)


def check_unreduced(rows):
    """Validate componentwise zero row sums of an unreduced quadruple matrix."""
    rows = _freeze(rows)
    _check_symmetric(rows)
    for i, row in enumerate(rows):
        total = ZERO_ENTRY
        for e in row:
            total = total + e
        if not total.is_zero():
            raise ValueError(f"row {i} does not sum to zero componentwise")
    return rows


def reduce_quad(rows, k):
    rows = _freeze(rows)
    n = len(rows)
    if not 0 <= k < n:
        raise IndexError(f"delete index {k} out of range")
    out = [[rows[i][j] for j in range(n) if j != k] for i in range(n) if i != k]
    return QuadGoeritzMatrix(out, deleted_index=k)


@dataclass(frozen=True)
class LockCounts:
    """Lock totals of the bipartite diagram plus self-crossing breakdown.

    ``n_pos``/``n_neg`` count the phi-family and phibar-family locks; the
    v/h fields count those whose two white corners land in a single region
    (invisible to the matrix) split by which resolution frees a loop.
    """

    n_pos: int = 0
    n_neg: int = 0
    n_pos_v: int = 0
    n_neg_v: int = 0
    n_pos_h: int = 0
    n_neg_h: int = 0

    def __post_init__(self):
        if min(self.n_pos, self.n_neg, self.n_pos_v, self.n_neg_v,
               self.n_pos_h, self.n_neg_h) < 0:
            raise ValueError("lock counts must be non-negative")
        if self.n_pos_v + self.n_pos_h > self.n_pos:
            raise ValueError("self-crossing counts exceed n_pos")
        if self.n_neg_v + self.n_neg_h > self.n_neg:
            raise ValueError("self-crossing counts exceed n_neg")

    def mirror(self):
        return LockCounts(self.n_neg, self.n_pos, self.n_neg_v, self.n_pos_v,
                          self.n_neg_h, self.n_pos_h)


def _q_band(var_monomial, n):
    """Binomial band coefficient over one symbol family.

    Sum over k of C(|n|, k) DN^(k-1) v^(sgn(n)(|n| - 2k)/2), zero at n = 0.
    """
    if n == 0:
        return LaurentPoly.zero(BIP)
    s = 1 if n > 0 else -1
    a = abs(n)
    out = LaurentPoly.zero(BIP)
    for k in range(1, a + 1):
        out = out + math.comb(a, k) * DN ** (k - 1) * var_monomial(Fraction(s * (a - 2 * k), 2))
    return out


def p_band_x(n):
    """Band coefficient for x-type locks (phi family)."""
    return _q_band(lambda e: phi_pow(e), n)


def p_band_t(n):
    """Band coefficient for t-type locks (phi family)."""
    return _q_band(lambda e: phi_pow(e), n)


def p_band_y(n):
    """Band coefficient for y-type locks (phibar family)."""
    return _q_band(lambda e: phibar_pow(e), n)


def p_band_z(n):
    """Band coefficient for z-type locks (phibar family)."""
    return _q_band(lambda e: phibar_pow(e), n)


def split_coeff(e):
    """Coefficient of the region-separating resolution of an entry."""
    e = QuadEntry(*e)
    return phi_pow(Fraction(e.x + e.t, 2)) * phibar_pow(Fraction(-(e.y + e.z), 2))


def merge_coeff(e):
    """Coefficient of the region-merging resolution of an entry."""
    e = QuadEntry(*e)
    px, pt = p_band_x(e.x), p_band_t(e.t)
    py, pz = p_band_y(-e.y), p_band_z(-e.z)
    first = phi_pow(Fraction(e.t, 2)) * phibar_pow(Fraction(-(e.y + e.z), 2)) * px
    inner = (phibar_pow(Fraction(-e.z, 2)) * pt + phi_pow(Fraction(e.t, 2)) * pz + DN * pz * pt)
    bracket = (phibar_pow(Fraction(-e.y, 2)) + DN * py) * inner \
        + phi_pow(Fraction(e.t, 2)) * phibar_pow(Fraction(-e.z, 2)) * py
    return first + (phi_pow(Fraction(e.x, 2)) + DN * px) * bracket


def diag_factor(e):
    """Factor contributed by a diagonal entry once the matrix is diagonal."""
    e = QuadEntry(*e)
    return split_coeff(-e) * DN + merge_coeff(-e)


_M_MEMO = MemoCache()


def _pivot(rows):
    n = len(rows)
    for i in range(n):
        for j in range(i + 1, n):
            if not rows[i][j].is_zero():
                return i, j
    return None


def qtransform_I(g, i, j):
    rows = g.rows if isinstance(g, QuadGoeritzMatrix) else _freeze(g)
    if i == j:
        raise ValueError("qtransform_I needs i != j")
    out = [list(r) for r in rows]
    e = out[i][j]
    out[i][i] = out[i][i] + e
    out[j][j] = out[j][j] + e
    out[i][j] = out[j][i] = ZERO_ENTRY
    return QuadGoeritzMatrix(out)


def qtransform_II(g, i, j):
    rows = g.rows if isinstance(g, QuadGoeritzMatrix) else _freeze(g)
    if i == j:
        raise ValueError("qtransform_II needs i != j")
    n = len(rows)
    out = [list(r) for r in rows]
    out[i][i] = rows[i][i] + rows[j][j] + 2 * rows[i][j]
    for k in range(n):
        if k != i and k != j:
            out[i][k] = rows[i][k] + rows[j][k]
            out[k][i] = out[i][k]
    out = [[out[a][b] for b in range(n) if b != j] for a in range(n) if a != j]
    return QuadGoeritzMatrix(out)


def qtransform_III(g, i):
    rows = g.rows if isinstance(g, QuadGoeritzMatrix) else _freeze(g)
    n = len(rows)
    for a in range(n):
        for b in range(n):
            if a != b and not rows[a][b].is_zero():
                raise ValueError("qtransform_III requires a diagonal matrix")
    out = [[rows[a][b] for b in range(n) if b != i] for a in range(n) if a != i]
    return QuadGoeritzMatrix(out)


def M(g, _pivot_choice=None):
    """The symbol-ring invariant of a quadruple matrix; M(empty) = DN."""
    rows = g.rows if isinstance(g, QuadGoeritzMatrix) else _freeze(g)
    _check_symmetric(rows)
    if _pivot_choice is None:
        return _m_memoized(rows)
    return _m_rec(rows, _pivot_choice)


def _m_memoized(rows):
    cached = _M_MEMO.get(rows)
    if cached is not None:
        return cached
    return _M_MEMO.store(rows, _m_rec(rows, _pivot))


def _m_rec(rows, pivot_choice):
    piv = pivot_choice(rows)
    if piv is not None:
        i, j = piv
        e = rows[i][j]
        if i == j or e.is_zero():
            raise ValueError("pivot must be a nonzero off-diagonal entry")
        branch_i = qtransform_I(rows, i, j).rows
        branch_ii = qtransform_II(rows, i, j).rows
        if pivot_choice is _pivot:
            a, b = _m_memoized(branch_i), _m_memoized(branch_ii)
        else:
            a, b = _m_rec(branch_i, pivot_choice), _m_rec(branch_ii, pivot_choice)
        return split_coeff(e) * a + merge_coeff(e) * b
    out = DN
    for i in range(len(rows)):
        out = out * diag_factor(rows[i][i])
    return out


def compensation_factor(counts):
    """Retouching factor restoring locks the matrix cannot see.

    The state sum over a lock diagram equals this factor times M of the
    extracted matrix.
    """
    inv_pos_v = phi_pow(Fraction(-1, 2)) + phi_pow(Fraction(1, 2)) * DN
    inv_neg_v = phibar_pow(Fraction(-1, 2)) + phibar_pow(Fraction(1, 2)) * DN
    pos_h = phi_pow(Fraction(-1, 2)) * (pr.PHI + DN)
    neg_h = phibar_pow(Fraction(-1, 2)) * (pr.PHIBAR + DN)
    return (inv_pos_v ** counts.n_pos_v * inv_neg_v ** counts.n_neg_v
            * pos_h ** counts.n_pos_h * neg_h ** counts.n_neg_h)


def homfly_symbol(g, counts):
    """The normalized value in the symbol ring, before substitution,
    together with the power of A it must be multiplied by."""
    c = counts
    a_power = -2 * (c.n_pos - c.n_pos_v - c.n_neg + c.n_neg_v)
    pref = (phi_pow(Fraction(c.n_pos - c.n_pos_h - c.n_pos_v, 2))
            * phibar_pow(Fraction(c.n_neg - c.n_neg_h - c.n_neg_v, 2))
            * (pr.PHI + DN) ** c.n_pos_h
            * (pr.PHIBAR + DN) ** c.n_neg_h)
    return a_power, pref * M(g)


def homfly(g, counts):
    """HOMFLY-PT polynomial of the bipartite link as a canonical PolyValue.

    Raises if the lock counts are inconsistent with the matrix (a residual
    half power of phi or phibar survives the normalization).
    """
    a_power, sym = homfly_symbol(g, counts)
    try:
        value = substitute(sym)
    except ValueError as exc:
        raise ValueError(f"lock-count mismatch: {exc}") from exc
    return PolyValue(value.num.shift(A=a_power), value.k, canonical=True)


def to_precursor(g, counts):
    """Collapse each entry to its integer sum; returns the single-crossing
    matrix together with writhe metadata derived from the lock counts."""
    rows = g.rows if isinstance(g, QuadGoeritzMatrix) else _freeze(g)
    mat = GoeritzMatrix([[e.precursor() for e in row] for row in rows])
    w = counts.n_pos - counts.n_neg
    wr = (counts.n_pos_v + counts.n_pos_h) - (counts.n_neg_v + counts.n_neg_h)
    return mat, JonesNormData(W=w, Wr=wr)
