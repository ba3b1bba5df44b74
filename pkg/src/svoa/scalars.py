"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Every coefficient in this package -- bracket structure constants, operator
matrix entries, series coefficients -- is a :class:`CycScalar`, an element of
a cyclotomic field Q(zeta_n) stored in the power basis
``1, z, ..., z^{phi(n)-1}`` with rational coefficients, reduced modulo the
n-th cyclotomic polynomial.  Conductors are unified pairwise by embedding
into their lcm, so ``i = zeta_4``, ``sqrt(2) = zeta_8 + zeta_8**7`` and any
root of unity ``zeta_k**j`` coexist transparently.

Rationals are stored with conductor 1 and take fast paths throughout; a
product that lands back in Q is demoted to conductor 1 on the spot, which
keeps the bulk of the matrix arithmetic in plain Fraction operations.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

Rational = Fraction


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    if n < 1:
        raise ValueError("invalid conductor %r" % (n,))
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the n-th cyclotomic polynomial."""
    if n == 1:
        return (-1, 1)
    # Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, by exact division in Z[x].
    num = [0] * (n + 1)
    num[0], num[n] = -1, 1
    for d in _divisors(n)[:-1]:
        den = list(cyclotomic_poly(d))
        num = _polydiv_exact(num, den)
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c == 0:
            continue
        q, r = divmod(c, den[dd])
        if r:
            raise ArithmeticError("non-exact cyclotomic division")
        quot[k - dd] = q
        for j in range(dd + 1):
            num[k - dd + j] -= q * den[j]
    if any(num):
        raise ArithmeticError("non-exact cyclotomic division")
    return quot


class CycField:
    """The field Q(zeta_n) with precomputed power-basis reduction rows."""

    _cache: dict[int, "CycField"] = {}

    def __new__(cls, n: int):
        if n in cls._cache:
            return cls._cache[n]
        if n < 1:
            raise ValueError("invalid conductor %r" % (n,))
        self = object.__new__(cls)
        self.n = n
        self.phi = euler_phi(n)
        poly = cyclotomic_poly(n)
        # rows[k] = coefficients of z^(phi + k) in the power basis, k = 0..phi-2
        head = [Fraction(-c) for c in poly[: self.phi]]
        rows = [head]
        for _ in range(self.phi - 2):
            prev = rows[-1]
            nxt = [Fraction(0)] + prev[:-1]
            top = prev[-1]
            if top:
                nxt = [nxt[i] + top * head[i] for i in range(self.phi)]
            rows.append(nxt)
        self.red_rows = rows
        cls._cache[n] = self
        return self

    def __repr__(self):
        return "CycField(%d)" % self.n


_ZEROF = Fraction(0)


class CycScalar:
    """Element of Q(zeta_n); immutable.  Conductor 1 means a plain rational."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: tuple[Fraction, ...]):
        self.n = n
        self.coeffs = coeffs

    # -- constructors -------------------------------------------------

    @staticmethod
    def rational(x) -> "CycScalar":
        return CycScalar(1, (Fraction(x),))

    @staticmethod
    def zeta(n: int, k: int = 1) -> "CycScalar":
        """The root of unity zeta_n^k, represented in conductor n."""
        if n < 1:
            raise ValueError("invalid conductor %r" % (n,))
        k %= n
        if n == 1:
            return CycScalar.rational(1)
        phi = euler_phi(n)
        if k < phi:
            coeffs = tuple(Fraction(1) if j == k else _ZEROF for j in range(phi))
            return CycScalar(n, coeffs)
        vec = [_ZEROF] * phi
        vec[phi - 1] = Fraction(1)
        s = CycScalar(n, tuple(vec))
        z = CycScalar.zeta(n, 1)
        for _ in range(k - (phi - 1)):
            s = s * z
        return s

    # -- predicates ---------------------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return self.n == 1 or all(c == 0 for c in self.coeffs[1:])

    def as_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("not a rational: %s" % (self,))
        return self.coeffs[0]

    # -- conductor handling -------------------------------------------

    def embed(self, n: int) -> "CycScalar":
        """Rewrite in Q(zeta_n); requires self.n | n."""
        if n == self.n:
            return self
        if n % self.n:
            raise ValueError("cannot embed conductor %d into %d" % (self.n, n))
        if self.is_rational():
            return CycScalar(n, (self.coeffs[0],) + (_ZEROF,) * (euler_phi(n) - 1))
        field = CycField(n)
        step = n // self.n
        vec = [_ZEROF] * (2 * field.phi - 1)
        for j, c in enumerate(self.coeffs):
            if c:
                _acc_power(vec, j * step, c, n, field)
        return _reduce(field, vec)

    # -- arithmetic ---------------------------------------------------

    def _unify(self, other):
        if isinstance(other, (int, Fraction)):
            other = CycScalar.rational(other)
        if not isinstance(other, CycScalar):
            return None, None
        if self.n == other.n:
            return self, other
        n = self.n * other.n // gcd(self.n, other.n)
        return self.embed(n), other.embed(n)

    def __add__(self, other):
        if isinstance(other, CycScalar) and self.n == 1 and other.n == 1:
            return CycScalar(1, (self.coeffs[0] + other.coeffs[0],))
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return _demote(CycScalar(a.n, tuple(x + y for x, y in zip(a.coeffs, b.coeffs))))

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.n, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        a, b = self._unify(other)
        if a is None:
            return NotImplemented
        return _demote(CycScalar(a.n, tuple(x - y for x, y in zip(a.coeffs, b.coeffs))))

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return CycScalar.rational(0)
            return CycScalar(self.n, tuple(c * other for c in self.coeffs))
        if not isinstance(other, CycScalar):
            return NotImplemented
        if self.n == 1:
            x = self.coeffs[0]
            if x == 0:
                return self
            return CycScalar(other.n, tuple(c * x for c in other.coeffs))
        if other.n == 1:
            x = other.coeffs[0]
            if x == 0:
                return other
            return CycScalar(self.n, tuple(c * x for c in self.coeffs))
        a, b = self._unify(other)
        field = CycField(a.n)
        phi = field.phi
        vec = [_ZEROF] * (2 * phi - 1)
        for i, ci in enumerate(a.coeffs):
            if ci:
                for j, cj in enumerate(b.coeffs):
                    if cj:
                        vec[i + j] += ci * cj
        return _demote(_reduce(field, vec))

    __rmul__ = __mul__

    def invert(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_%d)" % self.n)
        if self.is_rational():
            return CycScalar.rational(1 / self.coeffs[0])
        # extended Euclid in Q[x] against the cyclotomic polynomial
        phi_poly = [Fraction(c) for c in cyclotomic_poly(self.n)]
        a = list(self.coeffs)
        r0, r1 = phi_poly, _trim(a)
        s0, s1 = [_ZEROF], [Fraction(1)]
        while _deg(r1) > 0:
            q = _poly_divmod(r0, r1)
            r0, r1 = r1, _poly_sub(r0, _poly_mul(q, r1))
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        inv = [x / c for x in s1]
        phi = euler_phi(self.n)
        vec = inv + [_ZEROF] * (2 * phi - 1 - len(inv))
        return _demote(_reduce(CycField(self.n), vec))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * Fraction(1, 1) / CycScalar.rational(other)
        if not isinstance(other, CycScalar):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other):
        return CycScalar.rational(other) * self.invert()

    def __pow__(self, k: int):
        if k < 0:
            return self.invert() ** (-k)
        out = CycScalar.rational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- comparison / display -----------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycScalar):
            return NotImplemented
        a, b = self._unify(other)
        return a.coeffs == b.coeffs

    __hash__ = None  # values, never dict keys; equality crosses conductors

    def __repr__(self):
        return "CycScalar(%s)" % self

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            elif j == 1:
                parts.append("%s*z" % c)
            else:
                parts.append("%s*z^%d" % (c, j))
        return "%s (zeta_%d)" % (" + ".join(parts), self.n)

    def multiplicative_order(self):
        """Order as a root of unity, or None if not one of finite order."""
        if self.is_zero():
            return None
        p = CycScalar.rational(1)
        for m in range(1, 2 * self.n + 1):
            p = p * self
            if p == 1:
                return m
        return None


def _trim(a):
    while len(a) > 1 and a[-1] == 0:
        a = a[:-1]
    return a


def _deg(a):
    return len(_trim(a)) - 1 if any(a) else -1


def _poly_mul(a, b):
    out = [_ZEROF] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub(a, b):
    m = max(len(a), len(b))
    a = list(a) + [_ZEROF] * (m - len(a))
    b = list(b) + [_ZEROF] * (m - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_divmod(a, b):
    """Quotient of a by b in Q[x] (remainder discarded by caller via sub)."""
    a = list(a)
    b = _trim(b)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [_ZEROF]
    quot = [_ZEROF] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        if a[k] == 0:
            continue
        q = a[k] / b[db]
        quot[k - db] = q
        for j in range(db + 1):
            a[k - db + j] -= q * b[j]
    return quot


def _acc_power(vec, k, c, n, field):
    """Accumulate c * z^k into vec (length 2*phi-1), with z^n = 1 folding."""
    k %= n
    if k <= 2 * field.phi - 2:
        vec[k] += c
        return
    # fold via repeated reduction of a lone power
    tmp = [_ZEROF] * (2 * field.phi - 1)
    tmp[field.phi - 1] = Fraction(1)
    s = _reduce(field, tmp)
    z = CycScalar.zeta(n, 1)
    for _ in range(k - (field.phi - 1)):
        s = s * z
    for j, cj in enumerate(s.coeffs):
        vec[j] += c * cj


def _reduce(field: CycField, vec) -> CycScalar:
    phi = field.phi
    out = list(vec[:phi])
    for k in range(phi, len(vec)):
        c = vec[k]
        if c:
            row = field.red_rows[k - phi]
            for j in range(phi):
                if row[j]:
                    out[j] += c * row[j]
    return CycScalar(field.n, tuple(out))


def _demote(s: CycScalar) -> CycScalar:
    if s.n != 1 and all(c == 0 for c in s.coeffs[1:]):
        return CycScalar(1, (s.coeffs[0],))
    return s


# -- named constants and the spec-level operation surface ----------------

ZERO = CycScalar.rational(0)
ONE = CycScalar.rational(1)


def rat(x) -> CycScalar:
    return CycScalar.rational(x)


def i_unit() -> CycScalar:
    return CycScalar.zeta(4, 1)


def sqrt2() -> CycScalar:
    return CycScalar.zeta(8, 1) + CycScalar.zeta(8, 7)


def scalar_op(a: CycScalar, b, op: str) -> CycScalar:
    """Field operation dispatch: one of add, mul, neg, invert."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "invert":
        return a.invert()
    raise ValueError("unknown scalar op %r" % (op,))


def embed_symbol(symbol, *args) -> CycScalar:
    """Canonical constants: 'rational' x, 'i', 'sqrt2', or 'zeta' (n, k)."""
    if symbol == "rational":
        return rat(args[0])
    if symbol == "i":
        return i_unit()
    if symbol == "sqrt2":
        return sqrt2()
    if symbol == "zeta":
        n, k = args
        if n < 1:
            raise ValueError("invalid conductor %r" % (n,))
        lcm8 = 8 * n // gcd(8, n)
        return CycScalar.zeta(n, k).embed(lcm8)
    raise ValueError("unknown symbol %r" % (symbol,))
