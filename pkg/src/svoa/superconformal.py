"""Presentations of the superconformal algebra family and exact bracket calculus.

Families covered: the Virasoro algebra, the N=1 algebras (Neveu-Schwarz and
Ramond), the t-shifted N=2 algebras in the homogeneous basis ``L, J, G+, G-``
(t = 0 is N=2 Neveu-Schwarz, t = 1/2 is N=2 Ramond; G+- carry indices in
Z + 1/2 +- t), the N=2 algebras in the nonhomogeneous basis ``L, J, G1, G2``,
and the mirror-twisted N=2 algebra (J, G1 half-integer moded, L, G2 integer
moded).

Elements are finite linear combinations of generator symbols plus a central
term Z; the bracket is the bilinear extension of one universal structure
constant table, with each presentation selecting which symbols exist and on
which index cosets.  Everything is exact over the cyclotomic scalars.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, NamedTuple

from .scalars import CycScalar, i_unit, rat, sqrt2

HALF = Fraction(1, 2)

# generator families; all G-type symbols are odd
FAMILIES = ("L", "J", "Gp", "Gm", "G1", "G2", "G")
ODD = {"Gp", "Gm", "G1", "G2", "G"}


class GenSymbol(NamedTuple):
    family: str
    index: Fraction

    def parity(self) -> int:
        return 1 if self.family in ODD else 0

    def __str__(self):
        return "%s(%s)" % (self.family, self.index)


class UnsupportedMode(ValueError):
    """A generator index outside the mode support of the presentation."""


class AlgElement:
    """Finite linear combination of generator symbols plus a central term."""

    __slots__ = ("terms", "central")

    def __init__(self, terms=None, central=None):
        self.terms: dict[GenSymbol, CycScalar] = {}
        if terms:
            for k, c in terms.items():
                if not c.is_zero():
                    self.terms[k] = c
        self.central: CycScalar = central if central is not None else rat(0)

    @staticmethod
    def gen(family: str, index, coeff=None) -> "AlgElement":
        c = coeff if coeff is not None else rat(1)
        if isinstance(c, (int, Fraction)):
            c = rat(c)
        return AlgElement({GenSymbol(family, Fraction(index)): c})

    @staticmethod
    def central_term(coeff) -> "AlgElement":
        c = coeff if isinstance(coeff, CycScalar) else rat(coeff)
        return AlgElement({}, c)

    def __add__(self, other):
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out[k] + c if k in out else c
        return AlgElement(out, self.central + other.central)

    def __sub__(self, other):
        return self + other.scale(rat(-1))

    def __neg__(self):
        return self.scale(rat(-1))

    def scale(self, c) -> "AlgElement":
        if isinstance(c, (int, Fraction)):
            c = rat(c)
        return AlgElement({k: c * x for k, x in self.terms.items()}, c * self.central)

    def is_zero(self) -> bool:
        return not self.terms and self.central.is_zero()

    def parity(self):
        """0, 1 or None (for non-homogeneous combinations)."""
        ps = {k.parity() for k in self.terms}
        if not ps:
            return 0
        if len(ps) > 1:
            return None
        return ps.pop()

    def apply(self, fn: Callable[[GenSymbol, CycScalar], "AlgElement"]) -> "AlgElement":
        """Linear extension of a map defined on generator symbols; Z is fixed."""
        out = AlgElement({}, self.central)
        for k, c in self.terms.items():
            out = out + fn(k, c)
        return out

    def __eq__(self, other):
        if not isinstance(other, AlgElement):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __str__(self):
        bits = []
        for k in sorted(self.terms, key=lambda s: (s.family, s.index)):
            bits.append("%s*%s" % (self.terms[k], k))
        if not self.central.is_zero():
            bits.append("%s*Z" % self.central)
        return " + ".join(bits) if bits else "0"

    __repr__ = __str__


@dataclass(frozen=True)
class Presentation:
    """A member of the superconformal family: which symbols exist, on which
    index cosets.  ``t`` only applies to the homogeneous shifted N=2 family."""

    tag: str  # virasoro | n1ns | n1ramond | n2shifted | n2nonhom | n2mirror
    t: Fraction = Fraction(0)

    def supports(self) -> dict[str, Fraction]:
        """family -> coset offset (indices lie in offset + Z)."""
        t = self.t
        if self.tag == "virasoro":
            return {"L": Fraction(0)}
        if self.tag == "n1ns":
            return {"L": Fraction(0), "G": HALF}
        if self.tag == "n1ramond":
            return {"L": Fraction(0), "G": Fraction(0)}
        if self.tag == "n2shifted":
            return {"L": Fraction(0), "J": Fraction(0),
                    "Gp": (HALF + t) % 1, "Gm": (HALF - t) % 1}
        if self.tag == "n2nonhom":
            # both G's share a coset: only the NS (t=0) and Ramond (t=1/2) points
            if t % 1 not in (Fraction(0), HALF):
                raise ValueError("nonhomogeneous basis exists only at t in {0, 1/2}")
            off = (HALF + t) % 1
            return {"L": Fraction(0), "J": Fraction(0), "G1": off, "G2": off}
        if self.tag == "n2mirror":
            return {"L": Fraction(0), "J": HALF, "G1": HALF, "G2": Fraction(0)}
        raise ValueError("unknown presentation %r" % (self.tag,))

    def check(self, sym: GenSymbol):
        sup = self.supports()
        if sym.family not in sup:
            raise UnsupportedMode("%s has no %s generators" % (self.tag, sym.family))
        if (sym.index - sup[sym.family]) % 1 != 0:
            raise UnsupportedMode("unsupported mode %s in %s (coset %s + Z)"
                                  % (sym, self.tag, sup[sym.family]))

    def gen(self, family: str, index) -> AlgElement:
        sym = GenSymbol(family, Fraction(index))
        self.check(sym)
        return AlgElement({sym: rat(1)})

    def generators(self, index_bound) -> list[GenSymbol]:
        """All generator symbols with |index| <= bound, deterministic order."""
        bound = Fraction(index_bound)
        out = []
        for fam, off in sorted(self.supports().items()):
            i = off - ((off + bound) // 1)
            while i <= bound:
                if abs(i) <= bound:
                    out.append(GenSymbol(fam, i))
                i += 1
        return out


VIRASORO = Presentation("virasoro")
N1_NS = Presentation("n1ns")
N1_RAMOND = Presentation("n1ramond")
N2_MIRROR = Presentation("n2mirror")


def n2_shifted(t) -> Presentation:
    return Presentation("n2shifted", Fraction(t))


def n2_nonhom(t=0) -> Presentation:
    return Presentation("n2nonhom", Fraction(t))


# -- the universal structure constant table --------------------------------

from functools import lru_cache

_I_CONST = None


def _iconst():
    global _I_CONST
    if _I_CONST is None:
        _I_CONST = i_unit()
    return _I_CONST


@lru_cache(maxsize=1 << 18)
def _pair_bracket(a: GenSymbol, b: GenSymbol) -> AlgElement:
    """[a, b] with the families in canonical order (L < J < G...).
    Cached; callers must treat the result as immutable."""
    fa, fb = a.family, b.family
    m, n = a.index, b.index
    I = _iconst()
    if fa == "L" and fb == "L":
        out = AlgElement.gen("L", m + n, rat(m - n))
        if m + n == 0:
            out = out + AlgElement.central_term(Fraction(m ** 3 - m, 12))
        return out
    if fa == "L" and fb == "J":
        return AlgElement.gen("J", m + n, rat(-n))
    if fa == "L" and fb in ODD:
        return AlgElement.gen(fb, m + n, rat(Fraction(m, 2) - n))
    if fa == "J" and fb == "J":
        if m + n == 0:
            return AlgElement.central_term(Fraction(m, 3))
        return AlgElement()
    if fa == "J" and fb == "Gp":
        return AlgElement.gen("Gp", m + n)
    if fa == "J" and fb == "Gm":
        return AlgElement.gen("Gm", m + n, rat(-1))
    if fa == "J" and fb == "G1":
        return AlgElement.gen("G2", m + n, -I)
    if fa == "J" and fb == "G2":
        return AlgElement.gen("G1", m + n, I)
    if (fa, fb) in (("Gp", "Gp"), ("Gm", "Gm")):
        return AlgElement()
    if (fa, fb) == ("Gp", "Gm"):
        out = AlgElement.gen("L", m + n, rat(2)) + AlgElement.gen("J", m + n, rat(m - n))
        if m + n == 0:
            out = out + AlgElement.central_term(Fraction(1, 3) * (m * m - Fraction(1, 4)))
        return out
    if fa == fb and fa in ("G", "G1", "G2"):
        out = AlgElement.gen("L", m + n, rat(2))
        if m + n == 0:
            out = out + AlgElement.central_term(Fraction(1, 3) * (m * m - Fraction(1, 4)))
        return out
    if (fa, fb) == ("G1", "G2"):
        return AlgElement.gen("J", m + n, -I * rat(m - n))
    raise ValueError("no bracket rule for %s, %s" % (fa, fb))


_ORDER = {f: i for i, f in enumerate(FAMILIES)}


def bracket(pres: Presentation, a: AlgElement, b: AlgElement) -> AlgElement:
    """The super-bracket, bilinear over the terms; central terms drop out."""
    out = AlgElement()
    for sa, ca in a.terms.items():
        pres.check(sa)
        for sb, cb in b.terms.items():
            pres.check(sb)
            c = ca * cb
            if _ORDER[sa.family] <= _ORDER[sb.family]:
                out = out + _pair_bracket(sa, sb).scale(c)
            else:
                sign = -1 if not (sa.parity() and sb.parity()) else 1
                out = out + _pair_bracket(sb, sa).scale(c * sign)
    return out


# -- structural checks ------------------------------------------------------

@dataclass
class CheckReport:
    label: str
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_json(self) -> dict:
        return {"suite": self.label, "pairs_checked": self.checked,
                "failures": [str(f) for f in self.failures]}

    def __str__(self):
        status = "pass" if self.passed else "FAIL (%d)" % len(self.failures)
        return "%s: %d checks, %s" % (self.label, self.checked, status)


@lru_cache(maxsize=1 << 18)
def _bkt(a: GenSymbol, b: GenSymbol) -> AlgElement:
    """[a, b] for single symbols in either order; cached, treat as immutable."""
    if _ORDER[a.family] <= _ORDER[b.family]:
        return _pair_bracket(a, b)
    sign = 1 if (a.parity() and b.parity()) else -1
    return _pair_bracket(b, a).scale(rat(sign))


def _acc(out: dict, box: list, elem: AlgElement, coeff, sign: int):
    """out/box += sign * coeff * elem, accumulating terms and central part."""
    for s, c in elem.terms.items():
        v = c * coeff if coeff is not None else c
        if sign < 0:
            v = -v
        out[s] = out[s] + v if s in out else v
    if not elem.central.is_zero():
        v = elem.central * coeff if coeff is not None else elem.central
        box[0] = box[0] + (-v if sign < 0 else v)


def jacobi_check(pres: Presentation, index_bound) -> CheckReport:
    """Graded Jacobi identity on generator triples within the bound:
    [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|} [b,[a,c]], exactly.

    Triples are restricted to a <= b in the generator order, which loses
    nothing: swapping a and b multiplies the residual by -(-1)^{|a||b|}
    once super-skew-symmetry holds, and skew_check covers that separately.
    """
    gens = pres.generators(index_bound)
    for g in gens:
        pres.check(g)
    rep = CheckReport("jacobi:%s:t=%s" % (pres.tag, pres.t))
    n_gens = len(gens)
    for ia in range(n_gens):
        a = gens[ia]
        pa = a.parity()
        for ib in range(ia, n_gens):
            b = gens[ib]
            ab = _bkt(a, b)
            sign = -1 if (pa and b.parity()) else 1
            for c in gens:
                res: dict = {}
                box = [rat(0)]
                for s, coef in _bkt(b, c).terms.items():
                    _acc(res, box, _bkt(a, s), coef, +1)
                for s, coef in ab.terms.items():
                    _acc(res, box, _bkt(s, c), coef, -1)
                for s, coef in _bkt(a, c).terms.items():
                    _acc(res, box, _bkt(b, s), coef, -sign)
                rep.checked += 1
                if not box[0].is_zero() or any(not v.is_zero() for v in res.values()):
                    rep.failures.append((a, b, c, AlgElement(res, box[0])))
    return rep


def skew_check(pres: Presentation, index_bound) -> CheckReport:
    """[b,a] = -(-1)^{|a||b|} [a,b] for all generator pairs within bound."""
    gens = pres.generators(index_bound)
    rep = CheckReport("skew:%s:t=%s" % (pres.tag, pres.t))
    for a in gens:
        ea = AlgElement({a: rat(1)})
        for b in gens:
            eb = AlgElement({b: rat(1)})
            sign = (-1) ** (a.parity() * b.parity())
            resid = bracket(pres, eb, ea) + bracket(pres, ea, eb).scale(sign)
            rep.checked += 1
            if not resid.is_zero():
                rep.failures.append((a, b, resid))
    return rep


# -- maps: spectral flow, automorphisms, basis change ----------------------

def spectral_flow(t, a: AlgElement) -> AlgElement:
    """The flow D(t): L_n -> L_n + t J_n + (t^2/6) delta_{n,0} Z,
    J_n -> J_n + (t/3) delta_{n,0} Z, G+-_r -> G+-_{r +- t}, Z -> Z.

    Defined on the homogeneous basis; D(t) maps the s-shifted algebra into
    the (s+t)-shifted algebra and D(-t) inverts it."""
    t = Fraction(t)

    def fn(sym: GenSymbol, c: CycScalar) -> AlgElement:
        f, n = sym.family, sym.index
        if f == "L":
            out = AlgElement.gen("L", n, c)
            if not c.is_zero():
                out = out + AlgElement.gen("J", n, c * t)
            if n == 0:
                out = out + AlgElement.central_term(Fraction(t * t, 6)).scale(c)
            return out
        if f == "J":
            out = AlgElement.gen("J", n, c)
            if n == 0:
                out = out + AlgElement.central_term(Fraction(t, 3)).scale(c)
            return out
        if f == "Gp":
            return AlgElement.gen("Gp", n + t, c)
        if f == "Gm":
            return AlgElement.gen("Gm", n - t, c)
        raise ValueError("spectral flow needs the homogeneous basis, got %s" % f)

    return a.apply(fn)


def virasoro_auto(kind: str, a: AlgElement, xi: CycScalar | None = None) -> AlgElement:
    """Virasoro-preserving automorphisms: 'sigma_xi' (G+- -> xi^{+-1} G+-),
    'mirror' (G+ <-> G-, J -> -J), 'parity' (= sigma_{-1}), and the mirror
    map on the nonhomogeneous basis ('mirror_nonhom': G2 -> -G2, J -> -J)."""
    if kind == "sigma_xi":
        if xi is None or xi.multiplicative_order() is None:
            raise ValueError("sigma_xi requires a root of unity")
        xinv = xi.invert()

        def fn(sym, c):
            if sym.family == "Gp":
                return AlgElement.gen("Gp", sym.index, c * xi)
            if sym.family == "Gm":
                return AlgElement.gen("Gm", sym.index, c * xinv)
            if sym.family in ("L", "J"):
                return AlgElement({sym: c})
            raise ValueError("sigma_xi needs the homogeneous basis, got %s" % sym.family)

        return a.apply(fn)
    if kind == "parity":
        return virasoro_auto("sigma_xi", a, xi=rat(-1))
    if kind == "mirror":
        def fn(sym, c):
            if sym.family == "Gp":
                return AlgElement.gen("Gm", sym.index, c)
            if sym.family == "Gm":
                return AlgElement.gen("Gp", sym.index, c)
            if sym.family == "J":
                return AlgElement.gen("J", sym.index, -c)
            if sym.family == "L":
                return AlgElement({sym: c})
            raise ValueError("mirror map needs the homogeneous basis, got %s" % sym.family)

        return a.apply(fn)
    if kind == "mirror_nonhom":
        def fn(sym, c):
            if sym.family == "G2":
                return AlgElement.gen("G2", sym.index, -c)
            if sym.family == "J":
                return AlgElement.gen("J", sym.index, -c)
            if sym.family in ("L", "G1"):
                return AlgElement({sym: c})
            raise ValueError("mirror_nonhom acts on L, J, G1, G2; got %s" % sym.family)

        return a.apply(fn)
    raise ValueError("unknown automorphism %r" % (kind,))


def basis_change(direction: str, a: AlgElement) -> AlgElement:
    """G1_r = (G+_r + G-_r)/sqrt2, G2_r = i (G+_r - G-_r)/sqrt2 and back."""
    s2inv = sqrt2().invert()
    I = i_unit()
    if direction == "to_nonhomogeneous":
        def fn(sym, c):
            if sym.family == "Gp":
                # G+ = (G1 - i G2)/sqrt2
                return (AlgElement.gen("G1", sym.index, c * s2inv)
                        + AlgElement.gen("G2", sym.index, c * s2inv * (-I)))
            if sym.family == "Gm":
                return (AlgElement.gen("G1", sym.index, c * s2inv)
                        + AlgElement.gen("G2", sym.index, c * s2inv * I))
            return AlgElement({sym: c})

        return a.apply(fn)
    if direction == "to_homogeneous":
        def fn(sym, c):
            if sym.family == "G1":
                return (AlgElement.gen("Gp", sym.index, c * s2inv)
                        + AlgElement.gen("Gm", sym.index, c * s2inv))
            if sym.family == "G2":
                return (AlgElement.gen("Gp", sym.index, c * I * s2inv)
                        + AlgElement.gen("Gm", sym.index, c * (-I) * s2inv))
            return AlgElement({sym: c})

        return a.apply(fn)
    raise ValueError("unknown direction %r" % (direction,))


def homomorphism_check(map_fn, src: Presentation, dst: Presentation,
                       index_bound, label="hom") -> CheckReport:
    """map(bracket_src(a,b)) == bracket_dst(map a, map b) on all generator
    pairs of src within the index bound; image supports are validated too."""
    gens = src.generators(index_bound)
    rep = CheckReport("%s:%s->%s" % (label, src.tag, dst.tag))
    for a in gens:
        ea = AlgElement({a: rat(1)})
        fa = map_fn(ea)
        for sym in fa.terms:
            dst.check(sym)
        for b in gens:
            eb = AlgElement({b: rat(1)})
            lhs = map_fn(bracket(src, ea, eb))
            rhs = bracket(dst, fa, map_fn(eb))
            rep.checked += 1
            if not (lhs - rhs).is_zero():
                rep.failures.append((a, b, lhs - rhs))
    return rep
