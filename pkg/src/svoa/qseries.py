"""Truncated formal series in rational powers of q, with exact coefficients.

:class:`PuiseuxSeries` holds finitely many terms ``c * q^(e/D)`` below a
truncation order T; all arithmetic tracks how far the result can be trusted
and never claims coefficients at or beyond it.  :class:`BiSeries` adds an
integer-power variable p for the charge-refined characters.

Closed forms: the Dedekind eta product ``eta(q^a)``, the three Weber
functions f, f1, f2, lattice theta series by exact short-vector enumeration,
and products over shifted exponent cosets ``prod (1 + c q^r)``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

from .scalars import CycScalar, rat, sqrt2


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class PuiseuxSeries:
    """Finite map {exponent numerator -> coefficient} over denominator D,
    trusted for exponents strictly below ``trunc``."""

    __slots__ = ("exp_den", "terms", "trunc")

    def __init__(self, exp_den: int, terms: dict, trunc: Fraction):
        self.exp_den = exp_den
        self.terms = {e: c for e, c in terms.items()
                      if not c.is_zero() and Fraction(e, exp_den) < trunc}
        self.trunc = Fraction(trunc)

    # -- constructors ---------------------------------------------------

    @staticmethod
    def zero(trunc) -> "PuiseuxSeries":
        return PuiseuxSeries(1, {}, Fraction(trunc))

    @staticmethod
    def one(trunc) -> "PuiseuxSeries":
        return PuiseuxSeries(1, {0: rat(1)}, Fraction(trunc))

    @staticmethod
    def q_power(e, trunc, coeff=None) -> "PuiseuxSeries":
        e = Fraction(e)
        c = coeff if coeff is not None else rat(1)
        return PuiseuxSeries(e.denominator, {e.numerator: c}, Fraction(trunc))

    # -- basic queries ---------------------------------------------------

    def exponents(self) -> list[Fraction]:
        return sorted(Fraction(e, self.exp_den) for e in self.terms)

    def coeff(self, e) -> CycScalar:
        e = Fraction(e)
        if e >= self.trunc:
            raise ValueError("coefficient at %s is beyond truncation %s" % (e, self.trunc))
        num = e * self.exp_den
        if num.denominator != 1:
            return rat(0)
        return self.terms.get(int(num), rat(0))

    def leading_exponent(self):
        exps = self.exponents()
        return exps[0] if exps else None

    def is_zero(self) -> bool:
        return not self.terms

    # -- arithmetic --------------------------------------------------------

    def _align(self, other):
        den = _lcm(self.exp_den, other.exp_den)
        fa, fb = den // self.exp_den, den // other.exp_den
        ta = {e * fa: c for e, c in self.terms.items()}
        tb = {e * fb: c for e, c in other.terms.items()}
        return den, ta, tb

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxSeries(1, {0: rat(other)}, self.trunc)
        den, ta, tb = self._align(other)
        for e, c in tb.items():
            ta[e] = ta[e] + c if e in ta else c
        return PuiseuxSeries(den, ta, min(self.trunc, other.trunc))

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.exp_den, {e: -c for e, c in self.terms.items()}, self.trunc)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PuiseuxSeries(1, {0: rat(other)}, self.trunc)
        return self + (-other)

    def scale(self, c) -> "PuiseuxSeries":
        if isinstance(c, (int, Fraction)):
            c = rat(c)
        return PuiseuxSeries(self.exp_den, {e: c * x for e, x in self.terms.items()}, self.trunc)

    def shift(self, e) -> "PuiseuxSeries":
        """Multiply by q^e; trust moves with the shift."""
        e = Fraction(e)
        den = _lcm(self.exp_den, e.denominator)
        f = den // self.exp_den
        off = int(e * den)
        return PuiseuxSeries(den, {x * f + off: c for x, c in self.terms.items()},
                             self.trunc + e)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.scale(other)
        den, ta, tb = self._align(other)
        la = min(ta) if ta else 0
        lb = min(tb) if tb else 0
        # trust: a coefficient at E needs both factors known below the cut;
        # cap at min of inputs so positive leading orders never inflate trust
        trunc = min(self.trunc, other.trunc,
                    self.trunc + Fraction(lb, den), other.trunc + Fraction(la, den))
        bound = trunc * den
        out: dict = {}
        for ea, ca in ta.items():
            for eb, cb in tb.items():
                e = ea + eb
                if e >= bound:
                    continue
                p = ca * cb
                out[e] = out[e] + p if e in out else p
        return PuiseuxSeries(den, out, trunc)

    __rmul__ = __mul__

    def power(self, k: int) -> "PuiseuxSeries":
        if k < 0:
            return self.reciprocal().power(-k)
        out = PuiseuxSeries.one(self.trunc)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def reciprocal(self) -> "PuiseuxSeries":
        lead = self.leading_exponent()
        if lead is None:
            raise ZeroDivisionError("not a unit: zero series")
        c0 = self.coeff(lead)
        # h = 1 + u with u of strictly positive order, trusted below trunc - lead
        rel = self.trunc - lead
        h = self.shift(-lead).scale(c0.invert())
        u = h - PuiseuxSeries.one(rel)
        inv = PuiseuxSeries.one(rel)
        term = PuiseuxSeries.one(rel)
        step = u.leading_exponent()
        if step is not None:
            k = 0
            while k * step < rel:
                term = term * (-u)
                if term.is_zero():
                    break
                inv = inv + term
                k += 1
        return inv.scale(c0.invert()).shift(-lead)

    def substitute(self, scale) -> "PuiseuxSeries":
        """q -> q^scale for a positive rational scale."""
        scale = Fraction(scale)
        if scale <= 0:
            raise ValueError("invalid scale %s" % (scale,))
        den = self.exp_den * scale.denominator
        return PuiseuxSeries(den, {e * scale.numerator: c for e, c in self.terms.items()},
                             self.trunc * scale)

    # -- comparison / display ---------------------------------------------

    def matches(self, other, upto=None) -> bool:
        """Coefficientwise equality below the common truncation (and upto)."""
        bound = min(self.trunc, other.trunc)
        if upto is not None:
            bound = min(bound, Fraction(upto))
        den, ta, tb = self._align(other)
        cut = bound * den
        for e in set(ta) | set(tb):
            if e < cut:
                ca = ta.get(e, rat(0))
                cb = tb.get(e, rat(0))
                if not (ca - cb).is_zero():
                    return False
        return True

    def __eq__(self, other):
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return self.trunc == other.trunc and self.matches(other)

    __hash__ = None

    def __str__(self):
        if not self.terms:
            return "0 + O(q^%s)" % self.trunc
        bits = []
        for e in sorted(self.terms):
            exp = Fraction(e, self.exp_den)
            bits.append("%s*q^(%s)" % (self.terms[e], exp))
        return " + ".join(bits) + " + O(q^%s)" % self.trunc

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "exp_den": self.exp_den,
            "terms": [[e, str(self.terms[e])] for e in sorted(self.terms)],
            "trunc": str(self.trunc),
        }


def series_op(a: PuiseuxSeries, b, op: str, k: int | None = None):
    """Dispatch: add, mul, power (with integer k), reciprocal."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "power":
        return a.power(k)
    if op == "reciprocal":
        return a.reciprocal()
    raise ValueError("unknown series op %r" % (op,))


# -- closed-form products ------------------------------------------------


def eta_series(scale, order) -> PuiseuxSeries:
    """q^(a/24) * prod_{n>=1} (1 - q^(a n)), truncated below ``order``."""
    a = Fraction(scale)
    if a <= 0:
        raise ValueError("invalid eta scale %s" % (a,))
    T = Fraction(order)
    rel = T - Fraction(a, 24)
    out = PuiseuxSeries.one(rel)
    n = 1
    while a * n < rel:
        out = out * (PuiseuxSeries.one(rel) - PuiseuxSeries.q_power(a * n, rel))
        n += 1
    return out.shift(Fraction(a, 24))


def coset_product(offset, order, coeff=None, sign=+1) -> PuiseuxSeries:
    """prod over r in (offset + Z), r > 0 of (1 + sign * c * q^r), truncated."""
    T = Fraction(order)
    off = Fraction(offset)
    r = off - int(off)  # smallest representative > 0 handled below
    while r <= 0:
        r += 1
    out = PuiseuxSeries.one(T)
    c = coeff if coeff is not None else rat(1)
    s = rat(sign)
    while r < T:
        out = out * (PuiseuxSeries.one(T) + PuiseuxSeries.q_power(r, T, s * c))
        r += 1
    return out


def weber_series(which: str, order) -> PuiseuxSeries:
    """The classical Weber functions f, f1, f2 as truncated q-products."""
    T = Fraction(order)
    if which == "f":
        return coset_product(Fraction(1, 2), T - Fraction(-1, 48), sign=+1).shift(Fraction(-1, 48))
    if which == "f1":
        return coset_product(Fraction(1, 2), T - Fraction(-1, 48), sign=-1).shift(Fraction(-1, 48))
    if which == "f2":
        body = coset_product(1, T - Fraction(1, 24), sign=+1).shift(Fraction(1, 24))
        return body.scale(sqrt2())
    raise ValueError("unknown Weber function %r" % (which,))


def theta_series(gram, order) -> PuiseuxSeries:
    """Sum over lattice vectors v of q^(<v,v>/2) for a positive-definite
    integer Gram matrix, by exact bounded enumeration."""
    T = Fraction(order)
    r = len(gram)
    if r == 0:
        return PuiseuxSeries.one(T)
    for row in gram:
        if len(row) != r:
            raise ValueError("gram matrix must be square")
    for i in range(r):
        for j in range(r):
            if gram[i][j] != gram[j][i]:
                raise ValueError("gram matrix must be symmetric")
    diag, lower = _ldl(gram)
    if any(d <= 0 for d in diag):
        raise ValueError("gram matrix must be positive definite")
    bound2 = 2 * T  # need <v,v> < 2T for exponent <v,v>/2 < T
    counts: dict[Fraction, int] = {}

    def walk(i, rest, tail):
        # Q(v) = sum_k diag[k] * (v_k + sum_{j>k} lower[j][k] v_j)^2
        if i < 0:
            norm = bound2 - rest
            if norm < bound2:
                counts[norm] = counts.get(norm, 0) + 1
            return
        center = -sum(lower[j][i] * tail[j] for j in range(i + 1, r))
        vi = int(center)
        while diag[i] * (Fraction(vi) - center) ** 2 <= rest:
            tail[i] = vi
            walk(i - 1, rest - diag[i] * (Fraction(vi) - center) ** 2, tail)
            vi += 1
        vi = int(center) - 1
        while diag[i] * (Fraction(vi) - center) ** 2 <= rest:
            tail[i] = vi
            walk(i - 1, rest - diag[i] * (Fraction(vi) - center) ** 2, tail)
            vi -= 1
        tail[i] = 0

    walk(r - 1, bound2, [0] * r)
    den = 2
    terms = {}
    for norm, cnt in counts.items():
        e = norm / 2
        terms[int(e * den)] = rat(cnt)
    return PuiseuxSeries(den, terms, T)


def _ldl(gram):
    """Exact LDL^T of a symmetric rational matrix: returns diag, unit lower."""
    r = len(gram)
    a = [[Fraction(gram[i][j]) for j in range(r)] for i in range(r)]
    lower = [[Fraction(0)] * r for _ in range(r)]
    diag = [Fraction(0)] * r
    for k in range(r):
        diag[k] = a[k][k] - sum(lower[k][m] ** 2 * diag[m] for m in range(k))
        lower[k][k] = Fraction(1)
        if diag[k] == 0:
            return diag, lower
        for i in range(k + 1, r):
            lower[i][k] = (a[i][k] - sum(lower[i][m] * lower[k][m] * diag[m]
                                         for m in range(k))) / diag[k]
    return diag, lower


# -- two-variable series ---------------------------------------------------


class BiSeries:
    """Series in integer powers of p and rational powers of q, truncated in q
    and clamped to |p-exponent| <= p_bound."""

    __slots__ = ("exp_den", "terms", "trunc", "p_bound")

    def __init__(self, exp_den: int, terms: dict, trunc, p_bound: int):
        self.exp_den = exp_den
        self.trunc = Fraction(trunc)
        self.p_bound = p_bound
        self.terms = {k: c for k, c in terms.items()
                      if not c.is_zero() and abs(k[0]) <= p_bound
                      and Fraction(k[1], exp_den) < self.trunc}

    @staticmethod
    def one(trunc, p_bound) -> "BiSeries":
        return BiSeries(1, {(0, 0): rat(1)}, trunc, p_bound)

    @staticmethod
    def term(pexp: int, qexp, trunc, p_bound, coeff=None) -> "BiSeries":
        e = Fraction(qexp)
        c = coeff if coeff is not None else rat(1)
        return BiSeries(e.denominator, {(pexp, e.numerator): c}, trunc, p_bound)

    def _align(self, other):
        den = _lcm(self.exp_den, other.exp_den)
        fa, fb = den // self.exp_den, den // other.exp_den
        ta = {(p, e * fa): c for (p, e), c in self.terms.items()}
        tb = {(p, e * fb): c for (p, e), c in other.terms.items()}
        return den, ta, tb

    def __add__(self, other):
        den, ta, tb = self._align(other)
        for k, c in tb.items():
            ta[k] = ta[k] + c if k in ta else c
        return BiSeries(den, ta, min(self.trunc, other.trunc),
                        min(self.p_bound, other.p_bound))

    def __neg__(self):
        return BiSeries(self.exp_den, {k: -c for k, c in self.terms.items()},
                        self.trunc, self.p_bound)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "BiSeries":
        if isinstance(c, (int, Fraction)):
            c = rat(c)
        return BiSeries(self.exp_den, {k: c * x for k, x in self.terms.items()},
                        self.trunc, self.p_bound)

    def qshift(self, e) -> "BiSeries":
        e = Fraction(e)
        den = _lcm(self.exp_den, e.denominator)
        f = den // self.exp_den
        off = int(e * den)
        return BiSeries(den, {(p, x * f + off): c for (p, x), c in self.terms.items()},
                        self.trunc + e, self.p_bound)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycScalar)):
            return self.scale(other)
        den, ta, tb = self._align(other)
        la = min((e for (_, e) in ta), default=0)
        lb = min((e for (_, e) in tb), default=0)
        trunc = min(self.trunc, other.trunc,
                    self.trunc + Fraction(lb, den), other.trunc + Fraction(la, den))
        pb = min(self.p_bound, other.p_bound)
        bound = trunc * den
        out: dict = {}
        for (pa, ea), ca in ta.items():
            for (pb2, eb), cb in tb.items():
                k = (pa + pb2, ea + eb)
                if abs(k[0]) > pb or k[1] >= bound:
                    continue
                x = ca * cb
                out[k] = out[k] + x if k in out else x
        return BiSeries(den, out, trunc, pb)

    __rmul__ = __mul__

    def specialize_p(self, value: CycScalar) -> PuiseuxSeries:
        out: dict = {}
        for (p, e), c in self.terms.items():
            x = c * value ** p
            out[e] = out[e] + x if e in out else x
        return PuiseuxSeries(self.exp_den, out, self.trunc)

    def matches(self, other, upto=None) -> bool:
        bound = min(self.trunc, other.trunc)
        if upto is not None:
            bound = min(bound, Fraction(upto))
        pb = min(self.p_bound, other.p_bound)
        den, ta, tb = self._align(other)
        cut = bound * den
        for k in set(ta) | set(tb):
            if k[1] < cut and abs(k[0]) <= pb:
                if not (ta.get(k, rat(0)) - tb.get(k, rat(0))).is_zero():
                    return False
        return True

    def __str__(self):
        bits = []
        for (p, e) in sorted(self.terms):
            exp = Fraction(e, self.exp_den)
            bits.append("%s*p^%d*q^(%s)" % (self.terms[(p, e)], p, exp))
        return (" + ".join(bits) or "0") + " + O(q^%s)" % self.trunc

    __repr__ = __str__

    def to_json(self) -> dict:
        return {
            "exp_den": self.exp_den,
            "terms": [[p, e, str(self.terms[(p, e)])] for (p, e) in sorted(self.terms)],
            "trunc": str(self.trunc),
            "p_bound": self.p_bound,
        }


def bi_coset_product(offset, pexp: int, order, p_bound: int) -> BiSeries:
    """prod over r in (offset + Z), r > 0 of (1 + p^pexp q^r), truncated."""
    T = Fraction(order)
    off = Fraction(offset)
    r = off - int(off)
    while r <= 0:
        r += 1
    out = BiSeries.one(T, p_bound)
    while r < T:
        out = out * (BiSeries.one(T, p_bound) + BiSeries.term(pexp, r, T, p_bound))
        r += 1
    return out
