"""Exact sparse Laurent-polynomial arithmetic on a half-integer exponent grid.

All symbolic values in this package are Laurent polynomials with integer
coefficients over a fixed, ordered tuple of variables.  Exponents live on the
half-integer grid and are stored *doubled*, so every stored exponent is a
plain int and arithmetic stays exact.  Three variable sets are used:

* ``("u",)``       -- the Kauffman-bracket side; u stands for (-q)^(1/2),
* ``("phi", "phibar", "DN")`` -- the bipartite symbol ring,
* ``("A", "q")``   -- the output ring of the two-variable polynomial.

Values are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = [
    "LaurentPoly",
    "PolyValue",
    "U",
    "BIP",
    "AQ",
    "u_pow",
    "D2_U",
    "DN",
    "PHI",
    "PHIBAR",
    "to_q_poly",
    "from_q_poly",
    "to_qu",
    "from_qu",
    "reduce_to_jones_vars",
    "substitute",
    "specialize_A",
    "evaluate_numeric",
    "render_plain",
    "render_json",
    "render_latex",
    "parse_plain",
]

U = ("u",)
BIP = ("phi", "phibar", "DN")
AQ = ("A", "q")


def _as_doubled(e):
    """Convert an exponent (int, Fraction or half-integer float-free) to 2*e."""
    if isinstance(e, int):
        return 2 * e
    f = Fraction(e)
    d = f * 2
    if d.denominator != 1:
        raise ValueError(f"exponent {e} is not on the half-integer grid")
    return int(d)


class LaurentPoly:
    """Sparse Laurent polynomial: map from doubled-exponent vectors to ints."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars, terms):
        self.vars = tuple(vars)
        # drop zero coefficients, freeze key tuples
        self.terms = {tuple(k): v for k, v in terms.items() if v != 0}

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, vars):
        return cls(vars, {})

    @classmethod
    def const(cls, vars, c):
        if c == 0:
            return cls.zero(vars)
        return cls(vars, {(0,) * len(vars): int(c)})

    @classmethod
    def monomial(cls, vars, exps, coeff=1):
        """Monomial with given exponents, e.g. monomial(AQ, {"q": -2}, 3)."""
        vec = [0] * len(vars)
        for name, e in exps.items():
            vec[list(vars).index(name)] = _as_doubled(e)
        return cls(vars, {tuple(vec): int(coeff)})

    # -- ring operations ----------------------------------------------------
    def _check(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable sets differ: {self.vars} vs {other.vars}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return LaurentPoly(self.vars, out)

    def __neg__(self):
        return LaurentPoly(self.vars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return LaurentPoly(self.vars, {k: v * other for k, v in self.terms.items()})
        self._check(other)
        out = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                out[k] = out.get(k, 0) + va * vb
        return LaurentPoly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        result = LaurentPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other):
        return (isinstance(other, LaurentPoly) and self.vars == other.vars
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({render_plain(self)!r})"

    # -- helpers ------------------------------------------------------------
    def is_zero(self):
        return not self.terms

    def coeff(self, **exps):
        vec = [0] * len(self.vars)
        for name, e in exps.items():
            vec[list(self.vars).index(name)] = _as_doubled(e)
        return self.terms.get(tuple(vec), 0)

    def shift(self, **exps):
        """Multiply by a monomial in the same variables."""
        dv = [0] * len(self.vars)
        for name, e in exps.items():
            dv[list(self.vars).index(name)] = _as_doubled(e)
        return LaurentPoly(self.vars,
                           {tuple(a + b for a, b in zip(k, dv)): v
                            for k, v in self.terms.items()})

    def map_vars(self, new_vars, mapping):
        """Re-express over ``new_vars``; ``mapping[old] -> new`` name or None to drop.

        Dropped variables must have zero exponent everywhere.
        """
        idx = {name: i for i, name in enumerate(new_vars)}
        out = {}
        for k, v in self.terms.items():
            vec = [0] * len(new_vars)
            for old, e in zip(self.vars, k):
                tgt = mapping.get(old, old)
                if tgt is None:
                    if e != 0:
                        raise ValueError(f"cannot drop {old} with exponent {e}/2")
                    continue
                vec[idx[tgt]] += e
            key = tuple(vec)
            out[key] = out.get(key, 0) + v
        return LaurentPoly(new_vars, out)


# -- canned monomials --------------------------------------------------------

def u_pow(n):
    """u^n in the bracket ring, i.e. (-q)^(n/2)."""
    return LaurentPoly(U, {(2 * n,): 1})


D2_U = LaurentPoly(U, {(4,): -1, (-4,): -1})  # q + 1/q written in u: -u^2 - u^-2

DN = LaurentPoly.monomial(BIP, {"DN": 1})
PHI = LaurentPoly.monomial(BIP, {"phi": 1})
PHIBAR = LaurentPoly.monomial(BIP, {"phibar": 1})


def phi_pow(e):
    return LaurentPoly.monomial(BIP, {"phi": Fraction(e)})


def phibar_pow(e):
    return LaurentPoly.monomial(BIP, {"phibar": Fraction(e)})


# -- conversions between u and q ---------------------------------------------

def to_q_poly(p):
    """Convert a u-ring value with even u-powers only to a polynomial in q.

    u^(2m) = (-1)^m q^m.  A residual odd power raises ValueError.
    """
    out = {}
    for (du,), c in p.terms.items():
        if du % 4 != 0:  # stored doubled: u-exponent du/2 must be even
            raise ValueError("value has a residual odd power of (-q)^(1/2)")
        m = du // 4
        out[(2 * m,)] = out.get((2 * m,), 0) + (c if m % 2 == 0 else -c)
    return LaurentPoly(("q",), out)


def from_q_poly(p):
    """Inverse of to_q_poly: q^m = (-1)^m u^(2m)."""
    out = {}
    for (dq,), c in p.terms.items():
        m = dq // 2
        out[(4 * m,)] = out.get((4 * m,), 0) + (c if m % 2 == 0 else -c)
    return LaurentPoly(U, out)


def to_qu(p):
    """Canonical (q, u) form of a u-ring value: u-exponent 0 or 1 per term."""
    out = {}
    for (du,), c in p.terms.items():
        n = du // 2
        m, r = divmod(n, 2)
        key = (2 * m, 2 * r)
        out[key] = out.get(key, 0) + (c if m % 2 == 0 else -c)
    return LaurentPoly(("q", "u"), out)


def from_qu(p):
    out = {}
    for (dq, du), c in p.terms.items():
        m, r = dq // 2, du // 2
        key = (2 * (2 * m + r),)
        out[key] = out.get(key, 0) + (c if m % 2 == 0 else -c)
    return LaurentPoly(U, out)


# -- bipartite-symbol substitutions -------------------------------------------

def reduce_to_jones_vars(p):
    """Apply phi -> -q, phibar -> -1/q, DN -> q + 1/q; result in the u ring.

    With u = (-q)^(1/2): phi^(1/2) -> u, phibar^(1/2) -> 1/u, so half powers
    are always representable.
    """
    out = LaurentPoly.zero(U)
    d2_pows = {0: LaurentPoly.const(U, 1)}
    for (dphi, dbar, ddn), c in p.terms.items():
        n = ddn // 2
        if ddn % 2 != 0 or n < 0:
            raise ValueError("DN exponent must be a non-negative integer")
        if n not in d2_pows:
            d2_pows[n] = D2_U ** n
        term = LaurentPoly(U, {(2 * (dphi - dbar),): c}) * d2_pows[n]
        out = out + term
    return out


_ABRACKET = LaurentPoly(AQ, {(2, 0): 1, (-2, 0): -1})   # A - 1/A
_QBRACKET = LaurentPoly(AQ, {(0, 2): 1, (0, -2): -1})   # q - 1/q


def _divide_q_only(p, divisor):
    """Exact division of an AQ Laurent polynomial by a q-only divisor.

    Returns the quotient or None if the division is not exact.
    """
    # split into slices by A-exponent, divide each univariate slice
    slices = {}
    for (da, dq), c in p.terms.items():
        slices.setdefault(da, {})[dq] = c
    div = {dq: c for (da, dq), c in divisor.terms.items()}
    dmax, dmin = max(div), min(div)
    lead = div[dmax]
    out = {}
    for da, sl in slices.items():
        quot = {}
        work = dict(sl)
        low = min(work) - dmin  # lowest exponent an exact quotient can reach
        while work:
            e = max(work)
            c = work[e]
            qc, qe = c // lead, e - dmax
            if c % lead != 0 or qe < low:
                return None
            quot[qe] = qc
            for de, dc in div.items():
                k = qe + de
                work[k] = work.get(k, 0) - qc * dc
                if work[k] == 0:
                    del work[k]
        for qe, qc in quot.items():
            out[(da, qe)] = qc
    return LaurentPoly(AQ, out)


class PolyValue:
    """A canonical rational value: Laurent numerator over (q - 1/q)^k.

    The numerator may contain negative powers of A and q (the "monomial"
    part of the denominator is folded into it); k is the number of
    (q - 1/q) factors that do not cancel.
    """

    __slots__ = ("num", "k")

    def __init__(self, num, k=0, canonical=False):
        if k < 0:
            raise ValueError("qbracket power must be non-negative")
        if not canonical:
            while k > 0:
                q = _divide_q_only(num, _QBRACKET)
                if q is None:
                    break
                num, k = q, k - 1
            if num.is_zero():
                k = 0
        self.num = num
        self.k = k

    @classmethod
    def from_poly(cls, p):
        return cls(p, 0, canonical=True)

    def __eq__(self, other):
        if not isinstance(other, PolyValue):
            return NotImplemented
        return (self.num * _QBRACKET ** other.k) == (other.num * _QBRACKET ** self.k)

    def __hash__(self):
        # hash via canonical representative
        return hash((self.num, self.k))

    def __mul__(self, other):
        if isinstance(other, PolyValue):
            return PolyValue(self.num * other.num, self.k + other.k)
        return PolyValue(self.num * other, self.k)

    __rmul__ = __mul__

    def __add__(self, other):
        k = max(self.k, other.k)
        num = (self.num * _QBRACKET ** (k - self.k)
               + other.num * _QBRACKET ** (k - other.k))
        return PolyValue(num, k)

    def __sub__(self, other):
        return self + PolyValue(-other.num, other.k, canonical=True)

    def is_zero(self):
        return self.num.is_zero()

    def __repr__(self):
        return f"PolyValue({render_plain(self.num)!r}, k={self.k})"

    def as_laurent(self):
        """Return the numerator if k = 0, else raise."""
        if self.k != 0:
            raise ValueError("value has a residual (q - 1/q) denominator")
        return self.num


def substitute(p):
    """Substitute phi = A(q-1/q), phibar = -(q-1/q)/A, DN = (A-1/A)/(q-1/q).

    Input must have integer phi/phibar exponents (half powers are a sign of a
    missing normalization upstream) and non-negative integer DN exponents.
    Returns a canonical PolyValue in (A, q).
    """
    rows = []
    kmax = 0
    for (dphi, dbar, ddn), c in p.terms.items():
        if dphi % 2 or dbar % 2:
            raise ValueError(
                "unnormalized input: residual half-integer phi/phibar exponent")
        if ddn % 2 or ddn < 0:
            raise ValueError("DN exponent must be a non-negative integer")
        a, b, n = dphi // 2, dbar // 2, ddn // 2
        # phi^a phibar^b DN^n = (-1)^b A^(a-b) {A}^n {q}^(a+b-n)
        qb = a + b - n
        rows.append((c if b % 2 == 0 else -c, a - b, n, qb))
        kmax = max(kmax, -qb)
    num = LaurentPoly.zero(AQ)
    for c, apow, n, qb in rows:
        term = (LaurentPoly.monomial(AQ, {"A": apow}, c)
                * _ABRACKET ** n * _QBRACKET ** (qb + kmax))
        num = num + term
    return PolyValue(num, kmax)


def specialize_A(v, n):
    """Substitute A = q^n into a PolyValue; returns a PolyValue in (A, q)
    with all A-exponents zero."""
    out = {}
    for (da, dq), c in v.num.terms.items():
        key = (0, dq + n * da)
        out[key] = out.get(key, 0) + c
    return PolyValue(LaurentPoly(AQ, out), v.k)


def evaluate_numeric(v, a, q):
    """Evaluate a PolyValue exactly at rational A = a, q = q."""
    a, q = Fraction(a), Fraction(q)
    if q in (1, -1) and v.k > 0:
        raise ZeroDivisionError("pole at q = +-1")
    total = Fraction(0)
    for (da, dq), c in v.num.terms.items():
        total += c * a ** (da // 2) * q ** (dq // 2)
    return total / (q - 1 / q) ** v.k


# -- textual formats ----------------------------------------------------------

def _sort_key(vec):
    # graded lexicographic: total (doubled) degree, then the exponent vector
    return (sum(vec), vec)


def _exp_str(d, latex=False):
    if d % 2 == 0:
        return str(d // 2)
    s = f"{d}/2"
    return s


def render_plain(p):
    """Plain text, e.g. ``q^-2 + 1 + q^2`` or ``2*phi^1/2*DN``."""
    if not p.terms:
        return "0"
    pieces = []
    for vec in sorted(p.terms, key=_sort_key):
        c = p.terms[vec]
        factors = []
        for name, d in zip(p.vars, vec):
            if d == 0:
                continue
            if d == 2:
                factors.append(name)
            else:
                factors.append(f"{name}^{_exp_str(d)}")
        if not factors:
            body = str(abs(c))
        else:
            body = "*".join(factors)
            if abs(c) != 1:
                body = f"{abs(c)}*{body}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    out = (("-" if first_sign == "-" else "") + first_body)
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def render_latex(p):
    if not p.terms:
        return "0"
    names = {"phi": r"\phi", "phibar": r"\bar\phi", "DN": "D_N"}
    pieces = []
    for vec in sorted(p.terms, key=_sort_key):
        c = p.terms[vec]
        factors = []
        for name, d in zip(p.vars, vec):
            if d == 0:
                continue
            nm = names.get(name, name)
            if d == 2:
                factors.append(nm)
            elif d % 2 == 0:
                factors.append(f"{nm}^{{{d // 2}}}")
            else:
                factors.append(f"{nm}^{{{d}/2}}")
        body = " ".join(factors) if factors else str(abs(c))
        if factors and abs(c) != 1:
            body = f"{abs(c)} {body}"
        pieces.append(("-" if c < 0 else "+", body))
    out = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def render_json(p, qbracket=None):
    """JSON-ready dict: {"terms": [{var: exp, ..., "c": coeff}], "qbracket": k}."""
    terms = []
    for vec in sorted(p.terms, key=_sort_key):
        entry = {}
        for name, d in zip(p.vars, vec):
            entry[name] = d // 2 if d % 2 == 0 else f"{d}/2"
        entry["c"] = p.terms[vec]
        terms.append(entry)
    out = {"terms": terms}
    if qbracket is not None:
        out["qbracket"] = qbracket
    return out


def render_value_plain(v):
    if v.k == 0:
        return render_plain(v.num)
    return f"({render_plain(v.num)}) / (q - q^-1)^{v.k}"


def render_value_latex(v):
    if v.k == 0:
        return render_latex(v.num)
    return rf"\frac{{{render_latex(v.num)}}}{{(q - q^{{-1}})^{{{v.k}}}}}"


def parse_plain(text, vars):
    """Parse the plain rendering back into a LaurentPoly over ``vars``."""
    s = text.replace(" ", "")
    if not s or s == "0":
        return LaurentPoly.zero(vars)
    # split into signed chunks
    chunks = []
    sign, buf = 1, ""
    for i, ch in enumerate(s):
        if ch in "+-" and buf and s[i - 1] not in "^/+-*":
            chunks.append((sign, buf))
            sign, buf = (1 if ch == "+" else -1), ""
        elif ch in "+-" and not buf:
            sign = sign * (1 if ch == "+" else -1)
        else:
            buf += ch
    chunks.append((sign, buf))
    total = LaurentPoly.zero(vars)
    for sign, body in chunks:
        coeff = sign
        exps = {}
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"bad term in {text!r}")
            if factor[0].isdigit():
                coeff *= int(factor)
                continue
            if "^" in factor:
                name, e = factor.split("^", 1)
                exps[name] = exps.get(name, Fraction(0)) + Fraction(e)
            else:
                exps[factor] = exps.get(factor, Fraction(0)) + 1
        for name in exps:
            if name not in vars:
                raise ValueError(f"unknown variable {name!r}")
        total = total + LaurentPoly.monomial(vars, exps, coeff)
    return total
