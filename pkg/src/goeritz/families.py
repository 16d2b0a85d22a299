"""Built-in knot families: matrices, normalization data and closed forms.

Each builder transcribes the worked matrix of one family together with the
writhe / lock-count metadata that the matrix alone cannot carry.  Closed
forms are the known answers used for regression.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import polyring as pr
from .bipartite import (LockCounts, M, QuadEntry, QuadGoeritzMatrix,
                        check_unreduced, reduce_quad)
from .goeritz import GoeritzMatrix, JonesNormData, UnreducedGoeritz, reduce
from .polyring import AQ, BIP, DN, LaurentPoly, PolyValue, phi_pow, phibar_pow, substitute

__all__ = [
    "FamilySpec",
    "EvenCF",
    "NoClosedFormError",
    "FAMILIES",
    "build",
    "closed_form",
    "torus_transfer",
    "even_continued_fraction",
    "mirror_value",
]

E = QuadEntry


class NoClosedFormError(ValueError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """A family member: kind + parameters, coloring choice, chirality."""

    kind: str
    params: tuple = ()
    coloring: int = 1
    mirrored: bool = False
    bipartite: bool = False

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}")
        if self.coloring not in (1, 2):
            raise ValueError("coloring must be 1 or 2")
        FAMILIES[self.kind]["validate"](self)


def _validate_torus(spec):
    (p,) = spec.params
    if abs(p) < 2:
        raise ValueError("torus2 requires |p| >= 2")


def _validate_twist(spec):
    (m,) = spec.params
    if m < 1:
        raise ValueError("twist requires m >= 1; negative m is not the mirror "
                         "and is rejected")


def _validate_rational(spec):
    b, sign = spec.params
    if b < 0:
        raise ValueError("rationalB requires b >= 0")
    if sign not in ("+", "-"):
        raise ValueError("rationalB sign must be '+' or '-'")
    if spec.coloring != 1:
        raise ValueError("rationalB has a single built-in coloring")


def _validate_fixed(spec):
    if spec.params:
        raise ValueError(f"{spec.kind} takes no parameters")


def _validate_monte(spec):
    _validate_fixed(spec)
    if spec.coloring != 1:
        raise ValueError("montesinos10140 has a single built-in coloring")


FAMILIES = {
    "torus2": {"params": "p (|p| >= 2)", "validate": _validate_torus},
    "twist": {"params": "m (>= 1)", "validate": _validate_twist},
    "pretzel332": {"params": "", "validate": _validate_fixed},
    "rationalB": {"params": "b (>= 0), sign (+ or -)", "validate": _validate_rational},
    "montesinos10140": {"params": "", "validate": _validate_monte},
}


# -- classical builders -------------------------------------------------------

def _torus_classical(p, coloring):
    if coloring == 1:
        unred = UnreducedGoeritz([[-p, p], [p, -p]])
        return reduce(unred, 1), JonesNormData(W=p)
    n = abs(p)
    s = 1 if p > 0 else -1
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2 * s
        rows[i][(i + 1) % n] += -s
        rows[(i + 1) % n][i] += -s
    unred = UnreducedGoeritz(rows)
    return reduce(unred, 0), JonesNormData(W=p)


def _twist_classical(m, coloring, mirrored):
    s = -1 if mirrored else 1
    if coloring == 1:
        unred = UnreducedGoeritz([[s * (-m - 1), s * m, s],
                                  [s * m, s * (-m - 1), s],
                                  [s, s, -2 * s]])
        g = reduce(unred, 1)
    else:
        n = m + 1
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            rows[i][i] = 2 * s
        rows[0][0] = rows[n - 1][n - 1] = 3 * s
        for i in range(n - 1):
            rows[i][i + 1] = rows[i + 1][i] = -s
        rows[0][n - 1] += -2 * s
        rows[n - 1][0] += -2 * s
        unred = UnreducedGoeritz(rows)
        g = reduce(unred, 0)
    w = (-m + 2) if m % 2 == 0 else (-m - 2)
    return g, JonesNormData(W=s * w)


# -- bipartite builders -------------------------------------------------------

def _counts_from_unreduced(rows):
    """Totals by symbol family from the upper triangle of an unreduced matrix."""
    npos = nneg = 0
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            e = rows[i][j]
            npos += abs(e.x) + abs(e.t)
            nneg += abs(e.y) + abs(e.z)
    return npos, nneg


def _torus_bip(p):
    if p < 2:
        raise ValueError("bipartite torus2 requires p >= 2")
    if p == 2:
        unred = [[E(t=1), E(t=-1)], [E(t=-1), E(t=1)]]
    elif p == 3:
        unred = [[E(x=-1, t=1), E(x=1, t=-1)], [E(x=1, t=-1), E(x=-1, t=1)]]
    elif p == 4:
        unred = [[E(x=-2, t=1), E(x=2, t=-1)], [E(x=2, t=-1), E(x=-2, t=1)]]
    else:
        n = (p - 1) // 2 if p % 2 else (p - 2) // 2
        if p % 2:  # odd: S-type body
            diag = [E(x=-2, t=2)] * (n - 2) + [E(x=-1, t=2), E(x=-1, t=1)]
            off1 = [E(t=-1)] * (n - 1)
        else:      # even: C-type body
            diag = [E(x=-2, t=2)] * (n - 1) + [E(x=-2, t=1)]
            off1 = [E(t=-1)] * (n - 2) + [E(x=1, t=-1)]
        body = [[E() for _ in range(n)] for _ in range(n)]
        for i in range(n):
            body[i][i] = diag[i]
            if i + 1 < n:
                body[i][i + 1] = body[i + 1][i] = off1[i]
            if i + 2 < n:
                body[i][i + 2] = body[i + 2][i] = E(x=1)
        row0 = [E(x=-2, t=1), E(x=1, t=-1), E(x=1)] + [E()] * (n - 2)
        unred = [row0] + [[row0[i + 1]] + body[i] for i in range(n)]
    unred = check_unreduced(unred)
    npos, nneg = _counts_from_unreduced(unred)
    return reduce_quad(unred, 0), LockCounts(n_pos=npos, n_neg=nneg)


def _twist_bip(m, coloring):
    if m % 2 == 0:
        k = m // 2
        if coloring == 1:
            unred = [[E(x=-1, y=-k), E(x=1, y=k)], [E(x=1, y=k), E(x=-1, y=-k)]]
        else:
            n = k + 1
            unred = [[E() for _ in range(n)] for _ in range(n)]
            for i in range(n):
                unred[i][i] = E(z=2)
            unred[0][0] = unred[n - 1][n - 1] = E(z=1, t=1)
            for i in range(n - 1):
                unred[i][i + 1] = unred[i + 1][i] = E(z=-1)
            unred[0][n - 1] = unred[n - 1][0] = unred[0][n - 1] + E(t=-1)
    else:
        k = (m + 1) // 2
        if coloring == 1:
            unred = [[E(y=-k, z=1), E(y=k, z=-1)], [E(y=k, z=-1), E(y=-k, z=1)]]
        else:
            n = k + 1
            unred = [[E() for _ in range(n)] for _ in range(n)]
            for i in range(n):
                unred[i][i] = E(z=2)
            unred[0][0] = unred[n - 1][n - 1] = E(y=-1, z=1)
            for i in range(n - 1):
                unred[i][i + 1] = unred[i + 1][i] = E(z=-1)
            unred[0][n - 1] = unred[n - 1][0] = unred[0][n - 1] + E(y=1)
    unred = check_unreduced(unred)
    npos, nneg = _counts_from_unreduced(unred)
    return reduce_quad(unred, 0), LockCounts(n_pos=npos, n_neg=nneg)


def _pretzel_bip(coloring):
    if coloring == 1:
        unred = [
            [E(x=-2, t=1), E(x=1, t=-1), E(), E(x=1)],
            [E(x=1, t=-1), E(x=-2, t=2), E(x=1, t=-1), E()],
            [E(), E(x=1, t=-1), E(x=-1, y=-1, t=1), E(y=1)],
            [E(x=1), E(), E(y=1), E(x=-1, y=-1)],
        ]
        delete = 0
    else:
        unred = [
            [E(z=1, t=3), E(t=-1), E(t=-1), E(z=-1, t=-1)],
            [E(t=-1), E(x=-1, t=1), E(), E(x=1)],
            [E(t=-1), E(), E(x=-1, t=1), E(x=1)],
            [E(z=-1, t=-1), E(x=1), E(x=1), E(x=-2, z=1, t=1)],
        ]
        delete = 3
    unred = check_unreduced(unred)
    npos, nneg = _counts_from_unreduced(unred)
    return reduce_quad(unred, delete), LockCounts(n_pos=npos, n_neg=nneg)


def _rational_bip(b, sign):
    if sign == "+":
        unred = [
            [E(x=-1, y=-b, t=1), E(x=1, y=b), E(t=-1)],
            [E(x=1, y=b), E(x=-2, y=-b), E(x=1)],
            [E(t=-1), E(x=1), E(x=-1, t=1)],
        ]
    else:
        unred = [
            [E(x=-1, t=1 + b), E(x=1, t=-b), E(t=-1)],
            [E(x=1, t=-b), E(x=-2, t=b), E(x=1)],
            [E(t=-1), E(x=1), E(x=-1, t=1)],
        ]
    unred = check_unreduced(unred)
    npos, nneg = _counts_from_unreduced(unred)
    return reduce_quad(unred, 0), LockCounts(n_pos=npos, n_neg=nneg)


def _montesinos_bip():
    unred = [
        [E(x=-1, t=3), E(x=1, t=-1), E(t=-2)],
        [E(x=1, t=-1), E(x=-1, y=-1, z=1, t=1), E(y=1, z=-1)],
        [E(t=-2), E(y=1, z=-1), E(y=-1, z=1, t=2)],
    ]
    unred = check_unreduced(unred)
    npos, nneg = _counts_from_unreduced(unred)
    return reduce_quad(unred, 2), LockCounts(n_pos=npos, n_neg=nneg)


def build(spec):
    """Matrix plus normalization metadata for a family member.

    Classical specs give (GoeritzMatrix, JonesNormData); bipartite specs give
    (QuadGoeritzMatrix, LockCounts).
    """
    kind, params = spec.kind, spec.params
    if not spec.bipartite:
        if kind == "torus2":
            (p,) = params
            if spec.mirrored:
                p = -p
            return _torus_classical(p, spec.coloring)
        if kind == "twist":
            return _twist_classical(params[0], spec.coloring, spec.mirrored)
        raise ValueError(f"{kind} has no classical (Jones) build; use bipartite")
    if kind == "torus2":
        (p,) = params
        mirrored = spec.mirrored
        if p < 0:
            p, mirrored = -p, not mirrored
        g, counts = _torus_bip(p)
        if spec.coloring != 1:
            raise ValueError("bipartite torus2 ships one built-in coloring")
    elif kind == "twist":
        g, counts = _twist_bip(params[0], spec.coloring)
        mirrored = spec.mirrored
    elif kind == "pretzel332":
        g, counts = _pretzel_bip(spec.coloring)
        mirrored = spec.mirrored
    elif kind == "rationalB":
        g, counts = _rational_bip(*params)
        mirrored = spec.mirrored
    else:
        g, counts = _montesinos_bip()
        mirrored = spec.mirrored
    if mirrored:
        g, counts = g.mirror(), counts.mirror()
    return g, counts


# -- closed forms --------------------------------------------------------------

def _qp(terms):
    return LaurentPoly(("q",), {(2 * e,): c for e, c in terms.items()})


def mirror_value(v):
    """(A, q) -> (1/A, 1/q) on a PolyValue."""
    num = LaurentPoly(AQ, {(-a, -b): c for (a, b), c in v.num.terms.items()})
    return PolyValue(num * (1 if v.k % 2 == 0 else -1), v.k)


def _jones_torus(p):
    out = {}
    for e, c in ((-p - 2, 1), (-p, 1), (-3 * p, 1 if p % 2 == 0 else -1), (-p + 2, 1)):
        out[e] = out.get(e, 0) + c
    return _qp(out)


def _jones_twist(m):
    out = {}
    if m % 2 == 0:
        base = [(2 * m + 1, 1), (-5, 1), (-1, 1), (2 * m - 5, -1)]
    else:
        base = [(2 * m + 1, 1), (1, 1), (5, 1), (2 * m + 7, -1)]
    for e, c in base:
        out[e] = out.get(e, 0) + c
    return _qp(out)


_ABRACK = LaurentPoly(AQ, {(2, 0): 1, (-2, 0): -1})
_Q2P1 = LaurentPoly(AQ, {(0, 4): 1, (0, 0): 1})  # q^2 + 1


def _aq(terms):
    return LaurentPoly(AQ, {(2 * a, 2 * b): c for (a, b), c in terms.items()})


def _homfly_torus(p):
    from .polyring import _divide_q_only
    if p % 2:
        n = (p - 1) // 2
        core = _aq({(2, 2 * n + 4): 1, (0, 2 * n + 2): -1,
                    (2, -2 * n): -1, (0, -2 * n + 2): 1})
        num = _divide_q_only(core.shift(A=-2 * n) * _ABRACK, _Q2P1)
        return PolyValue(num.shift(A=-2, q=-1), 2)
    n = (p - 2) // 2
    core = _aq({(2, 2 * n + 6): 1, (0, 2 * n + 4): -1,
                (2, -2 * n): 1, (0, -2 * n + 2): -1})
    num = _divide_q_only(core.shift(A=-2 * n) * _ABRACK, _Q2P1)
    return PolyValue(num.shift(A=-3, q=-2), 2)


def _homfly_twist(m):
    one = LaurentPoly.const(BIP, 1)
    if m % 2 == 0:
        sym = ((DN * DN - one) * pr.PHI
               + (DN + pr.PHI) * (one + DN * pr.PHIBAR) ** (m // 2))
        a_power = m - 2
    else:
        sym = ((DN * DN - one) * pr.PHIBAR
               + (DN + pr.PHIBAR) * (one + DN * pr.PHIBAR) ** ((m + 1) // 2))
        a_power = m + 3
    v = substitute(sym)
    return PolyValue(v.num.shift(A=a_power), v.k)


def _homfly_rational(b, sign):
    f1 = _aq({(2, 0): 1, (0, 2): -1})                        # A^2 - q^2
    f2 = _aq({(2, 2): 1, (0, 0): -1})                        # A^2 q^2 - 1
    f3 = _aq({(0, 0): 1, (0, 2): -1, (0, 4): 1})             # 1 - q^2 + q^4
    g1 = _aq({(2, 0): 1, (2, 4): 1, (0, 2): -1})             # A^2 (1 + q^4) - q^2
    g2 = _aq({(2, 0): 1, (2, 2): -1, (2, 4): 1, (0, 2): -1})  # A^2(1 - q^2 + q^4) - q^2
    if sign == "+":
        num = f1 * f2 * f3 * LaurentPoly.monomial(AQ, {"A": 2 + 2 * b}) + g1 * g2
    else:
        num = (f1 * f2 * f3 * LaurentPoly.monomial(AQ, {"A": 2})
               + g1 * g2 * LaurentPoly.monomial(AQ, {"A": 2 * b})).shift(A=-2 * b)
    return PolyValue(num.shift(A=-7, q=-4), 1, canonical=True)


def closed_form(spec):
    """The known answer for a family member; raises NoClosedFormError where
    the family has none."""
    kind, params = spec.kind, spec.params
    if not spec.bipartite:
        if kind == "torus2":
            (p,) = params
            return _jones_torus(-p if spec.mirrored else p)
        if kind == "twist":
            val = _jones_twist(params[0])
            if spec.mirrored:
                val = LaurentPoly(("q",), {(-e,): c for (e,), c in val.terms.items()})
            return val
        raise NoClosedFormError(f"no Jones closed form for {kind}")
    if kind == "torus2":
        (p,) = params
        mirrored = spec.mirrored
        if p < 0:
            p, mirrored = -p, not mirrored
        val = _homfly_torus(p)
    elif kind == "twist":
        val = _homfly_twist(params[0])
        mirrored = spec.mirrored
    elif kind == "rationalB":
        val = _homfly_rational(*params)
        mirrored = spec.mirrored
    else:
        raise NoClosedFormError(f"no closed form for {kind}")
    return mirror_value(val) if mirrored else val


# -- transfer matrix -----------------------------------------------------------

def torus_transfer(n):
    """(M[S_n], M[C_n]) via the 2x2 symbolic transfer matrix power."""
    if n < 3:
        raise ValueError("torus_transfer requires n >= 3")
    s3, _ = build(FamilySpec("torus2", (7,), bipartite=True))
    c3, _ = build(FamilySpec("torus2", (8,), bipartite=True))
    vec = [M(s3), M(c3)]
    t = [[phi_pow(-1) + DN, phi_pow(Fraction(1, 2))],
         [phi_pow(Fraction(-1, 2)) + DN * phi_pow(Fraction(1, 2)),
          phi_pow(-1) + DN + phi_pow(1)]]
    for _ in range(n - 3):
        vec = [t[0][0] * vec[0] + t[0][1] * vec[1],
               t[1][0] * vec[0] + t[1][1] * vec[1]]
    return tuple(vec)


# -- even continued fractions ---------------------------------------------------

@dataclass(frozen=True)
class EvenCF:
    """All-even continued fraction expansion of p/q."""

    coefficients: tuple
    numerator: int
    denominator: int
    adjusted_from: tuple = None  # original (p, q) when the odd/odd shift applied

    def evaluate(self):
        val = Fraction(self.coefficients[-1])
        for a in reversed(self.coefficients[:-1]):
            val = a + 1 / val
        return val


def even_continued_fraction(p, q):
    """Unique all-even expansion of p/q (p or q even); odd/odd inputs are
    first shifted to p' = p - q (p > 0) or p' = p + q (p < 0)."""
    if q == 0:
        raise ValueError("denominator must be nonzero")
    if math.gcd(p, q) != 1:
        raise ValueError("p/q must be in lowest terms")
    adjusted = None
    if p % 2 and q % 2:
        adjusted = (p, q)
        p = p - q if p > 0 else p + q
    p0, q0 = p, q
    coeffs = []
    while True:
        a = 2 * round(Fraction(p, 2 * q))
        coeffs.append(a)
        r = p - a * q
        if r == 0:
            break
        p, q = q, r
    cf = EvenCF(tuple(coeffs), p0, q0, adjusted_from=adjusted)
    assert cf.evaluate() == Fraction(p0, q0)
    return cf
