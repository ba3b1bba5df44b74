"""Graded free-field state spaces for every sector: untwisted bosons and
fermions, parity-twisted fermions with their Clifford zero modes, the
half-integer-moded twisted boson, and the charged twisted fermion pair.

A sector is an ordered list of slots; each slot carries a species
(boson/fermion), a twist, and a flavor basis (orthonormal, polarized into
isotropic halves, or charged).  States are exact linear combinations of
canonically ordered monomials in creation modes applied to the vacuum.
Mode application implements the affinization (super)commutation relations,
including the Clifford rule e(0)^2 = 1 in the odd-dimensional twisted
fermion sector, with all reordering signs tracked during canonicalization.

Twisted-sector constructions pair an untwisted sector (where vertex-algebra
products of states are computed) with the twisted module itself; the
``channel`` table of a :class:`SectorContext` says how each untwisted
generator direction acts on the twisted side, as an exact linear combination
of primitive twisted modes, and in which eigenvalue coset its twisted field
lives.
"""

from __future__ import annotations

import json
from bisect import insort
from dataclasses import dataclass
from fractions import Fraction

from .scalars import CycScalar, i_unit, rat, sqrt2

HALF = Fraction(1, 2)

_CHARGE_RANK = {"a": 0, "+": 1, "-": 2, "e": 3}


@dataclass(frozen=True)
class Slot:
    """One free-field tensor factor."""

    name: str
    species: str        # 'boson' | 'fermion'
    twist: str          # 'none' | 'sigma' | 'kappa' | 'sigma_xi'
    d: int              # flavors of the underlying orthonormal space
    basis: str          # 'orthonormal' | 'polarized' | 'charged'
    j: int = 0          # sigma_xi twist exponent
    k: int = 1          # sigma_xi twist order

    def is_fermionic(self) -> bool:
        return self.species == "fermion"

    def directions(self) -> list[tuple[int, str]]:
        if self.basis == "orthonormal":
            return [(f, "a") for f in range(1, self.d + 1)]
        if self.basis == "charged":
            return [(f, c) for f in range(1, self.d + 1) for c in ("+", "-")]
        if self.basis == "polarized":
            l = self.d // 2
            out = [(f, c) for f in range(1, l + 1) for c in ("+", "-")]
            if self.d % 2:
                out.append((1, "e"))
            return out
        raise ValueError("unknown basis %r" % (self.basis,))

    def index_coset(self, charge: str) -> Fraction:
        """Indices of modes in this slot lie in coset + Z."""
        if self.species == "boson":
            return HALF if self.twist == "kappa" else Fraction(0)
        if self.twist == "none":
            return HALF
        if self.twist == "sigma":
            return Fraction(0)
        if self.twist == "sigma_xi":
            if charge == "+":
                return (HALF + Fraction(self.j, self.k)) % 1
            if charge == "-":
                return (HALF - Fraction(self.j, self.k)) % 1
        raise ValueError("no coset for %s/%s" % (self.twist, charge))

    def pairing(self, dir_a: tuple[int, str], dir_b: tuple[int, str]) -> Fraction:
        """<.,.> between directions; the contraction scalar of the slot."""
        (fa, ca), (fb, cb) = dir_a, dir_b
        if self.basis == "orthonormal":
            return Fraction(1 if fa == fb else 0)
        if ca == "e" and cb == "e":
            return Fraction(2)
        if fa == fb and {ca, cb} == {"+", "-"}:
            return Fraction(1)
        return Fraction(0)

    def zero_mode_creations(self) -> set[str]:
        """Charges whose index-0 mode lands in basis words."""
        if self.twist == "sigma":
            return {"+", "e"}
        return set()

    def creation_grades(self, flavor: int, charge: str, max_weight) -> list[Fraction]:
        """Positive grades g (= -index) of creation modes, weight <= max."""
        W = Fraction(max_weight)
        coset = self.index_coset(charge)
        start = (-coset) % 1
        out = []
        if charge in self.zero_mode_creations():
            out.append(Fraction(0))
        g = start if start > 0 else Fraction(1)
        while g <= W:
            out.append(g)
            g += 1
        return out


Mode = tuple  # (flavor, charge, index)
Monomial = tuple  # one word tuple per slot


@dataclass(frozen=True)
class SectorSpec:
    slots: tuple[Slot, ...]
    label: str = ""

    def vacuum(self) -> Monomial:
        return tuple(() for _ in self.slots)

    def to_json(self) -> dict:
        return {"label": self.label,
                "slots": [{"name": s.name, "species": s.species, "twist": s.twist,
                           "d": s.d, "basis": s.basis, "j": s.j, "k": s.k}
                          for s in self.slots]}


def sector_from_json(data) -> SectorSpec:
    if isinstance(data, str):
        data = json.loads(data)
    slots = tuple(Slot(name=s["name"], species=s["species"], twist=s.get("twist", "none"),
                       d=int(s["d"]), basis=s.get("basis", "orthonormal"),
                       j=int(s.get("j", 0)), k=int(s.get("k", 1)))
                  for s in data["slots"])
    return SectorSpec(slots, data.get("label", ""))


def _mode_key(mode: Mode):
    f, c, idx = mode
    return (f, _CHARGE_RANK[c], idx)


def weight_of(mono: Monomial) -> Fraction:
    w = Fraction(0)
    for word in mono:
        for (_, _, idx) in word:
            w -= idx
    return w


def parity_of(spec: SectorSpec, mono: Monomial) -> int:
    p = 0
    for slot, word in zip(spec.slots, mono):
        if slot.is_fermionic():
            p += len(word)
    return p & 1


def monomial_str(spec: SectorSpec, mono: Monomial) -> str:
    bits = []
    for slot, word in zip(spec.slots, mono):
        for (f, c, idx) in word:
            tag = {"a": "", "+": "+", "-": "-", "e": "e"}[c]
            bits.append("%s.%s%s(%s)" % (slot.name, "e" if c == "e" else f, tag, idx))
    return " ".join(bits) + (" " if bits else "") + "|0>"


# -- mode application -------------------------------------------------------

def _fermion_multiply(slot: Slot, mode: Mode, word: tuple) -> list[tuple[Fraction, tuple]]:
    """mode * word as a sum of canonical words, via the anticommutators.

    {X, Y} = <X,Y> delta_{ix+iy,0}; annihilators die on the vacuum, creations
    append and are sorted back in (the e(0)e(0) = 1 rule falls out of the
    anticommutator when the appended zero mode meets its double).
    """
    f, c, idx = mode
    out = []
    creation = idx < 0 or (idx == 0 and c in slot.zero_mode_creations())
    sign = 1
    for pos, y in enumerate(word):
        if idx + y[2] == 0:
            pv = slot.pairing((f, c), (y[0], y[1]))
            if pv:
                out.append((sign * pv, word[:pos] + word[pos + 1:]))
        sign = -sign
    if creation:
        res = _insert_sorted(word, mode, sign)
        if res is not None:
            out.append(res)
    return out


def _insert_sorted(word: tuple, mode: Mode, sign: int):
    """Insert a creation mode at its canonical position, tracking the sign;
    a duplicate annihilates the pair for e(0) (square one) and kills the
    term for any other fermionic mode."""
    key = _mode_key(mode)
    # 'sign' already accounts for passing the whole word; walk back from the end
    pos = len(word)
    s = sign
    while pos > 0 and _mode_key(word[pos - 1]) > key:
        pos -= 1
        s = -s
    if pos > 0 and word[pos - 1] == mode:
        if mode[1] == "e" and mode[2] == 0:
            # e0 meets e0: product is 1, remove the resident copy
            return (s, word[: pos - 1] + word[pos:])
        return None
    return (s, word[:pos] + (mode,) + word[pos:])


def _boson_multiply(slot: Slot, mode: Mode, word: tuple) -> list[tuple[Fraction, tuple]]:
    f, c, idx = mode
    if idx == 0:
        return []  # alpha(0) acts as zero on these Fock sectors
    if idx < 0:
        lst = list(word)
        insort(lst, mode, key=_mode_key)
        return [(Fraction(1), tuple(lst))]
    out = []
    for pos, y in enumerate(word):
        if idx + y[2] == 0:
            pv = slot.pairing((f, c), (y[0], y[1]))
            if pv:
                out.append((idx * pv, word[:pos] + word[pos + 1:]))
    return out


def apply_raw_mode(spec: SectorSpec, state: dict, slot_idx: int, flavor: int,
                   charge: str, index: Fraction) -> dict:
    """Apply one primitive mode to a state (monomial -> coefficient dict)."""
    slot = spec.slots[slot_idx]
    index = Fraction(index)
    if (index - slot.index_coset(charge)) % 1 != 0:
        raise ValueError("unsupported index %s for %s (support %s + Z)"
                         % (index, slot.name, slot.index_coset(charge)))
    mode = (flavor, charge, index)
    fermionic = slot.is_fermionic()
    out: dict = {}
    for mono, coeff in state.items():
        prefix = 1
        if fermionic:
            for si in range(slot_idx):
                if spec.slots[si].is_fermionic() and len(mono[si]) & 1:
                    prefix = -prefix
        word = mono[slot_idx]
        terms = (_fermion_multiply(slot, mode, word) if fermionic
                 else _boson_multiply(slot, mode, word))
        for sc, new_word in terms:
            new_mono = mono[:slot_idx] + (new_word,) + mono[slot_idx + 1:]
            v = coeff * (sc * prefix)
            if new_mono in out:
                out[new_mono] = out[new_mono] + v
            else:
                out[new_mono] = v
    return {m: c for m, c in out.items() if not c.is_zero()}


def apply_combo(spec: SectorSpec, state: dict, combo, index: Fraction) -> dict:
    """Apply a linear combination of primitive directions at a common index."""
    out: dict = {}
    for coeff, (slot_idx, flavor, charge) in combo:
        part = apply_raw_mode(spec, state, slot_idx, flavor, charge, index)
        for m, c in part.items():
            v = coeff * c
            out[m] = out[m] + v if m in out else v
    return {m: c for m, c in out.items() if not c.is_zero()}


# -- basis enumeration ------------------------------------------------------

def _slot_words(slot: Slot, max_weight) -> list[tuple[Fraction, tuple]]:
    """All canonical words of a slot with weight <= max_weight."""
    W = Fraction(max_weight)
    modes = []
    for (f, c) in slot.directions():
        for g in slot.creation_grades(f, c, W):
            modes.append((g, (f, c, -g)))
    modes.sort(key=lambda t: _mode_key(t[1]))
    fermionic = slot.is_fermionic()
    results: list[tuple[Fraction, tuple]] = []

    def rec(i, budget, acc):
        if i == len(modes):
            results.append((W - budget, tuple(acc)))
            return
        g, mode = modes[i]
        rec(i + 1, budget, acc)
        times = 1
        while times * g <= budget or (g == 0 and times == 1):
            if g == 0 and times > 1:
                break
            acc.extend([mode] * times)
            rec(i + 1, budget - times * g, acc)
            del acc[-times:]
            if fermionic:
                break
            if g == 0:
                break
            times += 1

    rec(0, W, [])
    return results


def enumerate_basis(spec: SectorSpec, max_weight) -> list[Monomial]:
    """All monomials of intrinsic weight <= max_weight, deterministically
    ordered by (weight, words)."""
    W = Fraction(max_weight)
    per_slot = [_slot_words(s, W) for s in spec.slots]
    out: list[tuple[Fraction, Monomial]] = []

    def rec(i, budget, acc):
        if i == len(per_slot):
            out.append((W - budget, tuple(acc)))
            return
        for w, word in per_slot[i]:
            if w <= budget:
                acc.append(word)
                rec(i + 1, budget - w, acc)
                acc.pop()

    rec(0, W, [])
    out.sort(key=lambda t: (t[0], t[1]))
    return [m for _, m in out]


# -- sector contexts and presets -------------------------------------------

@dataclass
class SectorContext:
    """An untwisted vertex-superalgebra sector paired with a (possibly
    twisted) module sector, plus the channel table connecting them.

    ``channel[vdir]`` lists (coefficient, mdir) pairs: how the untwisted
    generator direction acts on the module side.  ``twist_coset[vdir]`` is
    the automorphism-eigenvalue coset s in [0,1): the twisted field of that
    generator has mode indices in (untwisted coset + s) mod 1.
    """

    label: str
    vspec: SectorSpec
    mspec: SectorSpec
    channel: dict
    twist_coset: dict
    d: int
    j: int = 0
    k: int = 1

    def vdir_slot(self, vdir):
        return self.vspec.slots[vdir[0]]

    def vdir_weight(self, vdir) -> Fraction:
        return HALF if self.vdir_slot(vdir).is_fermionic() else Fraction(1)

    def vdir_parity(self, vdir) -> int:
        return 1 if self.vdir_slot(vdir).is_fermionic() else 0


def _identity_channels(spec: SectorSpec):
    ch = {}
    for si, slot in enumerate(spec.slots):
        for (f, c) in slot.directions():
            ch[(si, f, c)] = [(rat(1), (si, f, c))]
    return ch


def _polarized_channels(si_v: int, si_m: int, d: int):
    """Orthonormal fermion directions expanded in the polarized basis."""
    s2inv = sqrt2().invert()
    I = i_unit()
    l = d // 2
    ch = {}
    for f in range(1, d + 1):
        if f <= l:
            ch[(si_v, f, "a")] = [(s2inv, (si_m, f, "+")), (s2inv, (si_m, f, "-"))]
        elif f <= 2 * l:
            ch[(si_v, f, "a")] = [(-I * s2inv, (si_m, f - l, "+")),
                                  (I * s2inv, (si_m, f - l, "-"))]
        else:
            ch[(si_v, f, "a")] = [(s2inv, (si_m, 1, "e"))]
    return ch


def sector_context(name: str, d: int = 1, j: int = 1, k: int = 3) -> SectorContext:
    """Presets covering every construction: bos, fer, fer-charged, n1-free,
    n2-free, n2-free-charged, m-sigma, ramond-n1, ramond-n2, m-kappa,
    mirror-kappa, sigma-xi."""
    B = lambda nm: Slot(nm, "boson", "none", d, "orthonormal")
    F = lambda nm: Slot(nm, "fermion", "none", d, "orthonormal")

    if name == "bos":
        spec = SectorSpec((B("b"),), "bos")
        return SectorContext("bos", spec, spec, _identity_channels(spec),
                             {vd: Fraction(0) for vd in _identity_channels(spec)}, d)
    if name == "fer":
        spec = SectorSpec((F("f"),), "fer")
        return SectorContext("fer", spec, spec, _identity_channels(spec),
                             {vd: Fraction(0) for vd in _identity_channels(spec)}, d)
    if name == "fer-charged":
        spec = SectorSpec((Slot("F", "fermion", "none", d, "charged"),), "fer-charged")
        return SectorContext("fer-charged", spec, spec, _identity_channels(spec),
                             {vd: Fraction(0) for vd in _identity_channels(spec)}, d)
    if name == "n1-free":
        spec = SectorSpec((B("b"), F("f")), "n1-free")
        return SectorContext("n1-free", spec, spec, _identity_channels(spec),
                             {vd: Fraction(0) for vd in _identity_channels(spec)}, d)
    if name == "n2-free":
        spec = SectorSpec((B("b1"), F("f1"), B("b2"), F("f2")), "n2-free")
        return SectorContext("n2-free", spec, spec, _identity_channels(spec),
                             {vd: Fraction(0) for vd in _identity_channels(spec)}, d)
    if name == "n2-free-charged":
        spec = SectorSpec((B("b1"), B("b2"),
                           Slot("F", "fermion", "none", d, "charged")), "n2-free-charged")
        return SectorContext("n2-free-charged", spec, spec, _identity_channels(spec),
                             {vd: Fraction(0) for vd in _identity_channels(spec)}, d)
    if name == "m-sigma":
        vspec = SectorSpec((F("f"),), "fer")
        mspec = SectorSpec((Slot("fs", "fermion", "sigma", d, "polarized"),), "m-sigma")
        ch = _polarized_channels(0, 0, d)
        return SectorContext("m-sigma", vspec, mspec, ch,
                             {vd: HALF for vd in ch}, d)
    if name == "m-kappa":
        vspec = SectorSpec((B("b"),), "bos")
        mspec = SectorSpec((Slot("bk", "boson", "kappa", d, "orthonormal"),), "m-kappa")
        ch = {(0, f, "a"): [(rat(1), (0, f, "a"))] for f in range(1, d + 1)}
        return SectorContext("m-kappa", vspec, mspec, ch,
                             {vd: HALF for vd in ch}, d)
    if name == "ramond-n1":
        vspec = SectorSpec((B("b"), F("f")), "n1-free")
        mspec = SectorSpec((B("b"), Slot("fs", "fermion", "sigma", d, "polarized")),
                           "ramond-n1")
        ch = {(0, f, "a"): [(rat(1), (0, f, "a"))] for f in range(1, d + 1)}
        ch.update(_polarized_channels(1, 1, d))
        tw = {vd: (HALF if vd[0] == 1 else Fraction(0)) for vd in ch}
        return SectorContext("ramond-n1", vspec, mspec, ch, tw, d)
    if name == "ramond-n2":
        vspec = SectorSpec((B("b1"), F("f1"), B("b2"), F("f2")), "n2-free")
        mspec = SectorSpec((B("b1"), Slot("f1s", "fermion", "sigma", d, "polarized"),
                            B("b2"), Slot("f2s", "fermion", "sigma", d, "polarized")),
                           "ramond-n2")
        ch = {}
        for si in (0, 2):
            for f in range(1, d + 1):
                ch[(si, f, "a")] = [(rat(1), (si, f, "a"))]
        ch.update(_polarized_channels(1, 1, d))
        ch.update(_polarized_channels(3, 3, d))
        tw = {vd: (HALF if vd[0] in (1, 3) else Fraction(0)) for vd in ch}
        return SectorContext("ramond-n2", vspec, mspec, ch, tw, d)
    if name == "mirror-kappa":
        vspec = SectorSpec((B("b1"), F("f1"), B("b2"), F("f2")), "n2-free")
        mspec = SectorSpec((B("b1"), F("f1"),
                            Slot("bk", "boson", "kappa", d, "orthonormal"),
                            Slot("fs", "fermion", "sigma", d, "polarized")),
                           "mirror-kappa")
        ch = {}
        for f in range(1, d + 1):
            ch[(0, f, "a")] = [(rat(1), (0, f, "a"))]
            ch[(1, f, "a")] = [(rat(1), (1, f, "a"))]
            ch[(2, f, "a")] = [(rat(1), (2, f, "a"))]
        ch.update(_polarized_channels(3, 3, d))
        tw = {vd: (HALF if vd[0] in (2, 3) else Fraction(0)) for vd in ch}
        return SectorContext("mirror-kappa", vspec, mspec, ch, tw, d)
    if name == "sigma-xi":
        if not (0 < j < k):
            raise ValueError("sigma-xi requires 0 < j < k")
        vspec = SectorSpec((B("b1"), B("b2"),
                            Slot("F", "fermion", "none", d, "charged")), "n2-free-charged")
        mspec = SectorSpec((B("b1"), B("b2"),
                            Slot("F", "fermion", "sigma_xi", d, "charged", j=j, k=k)),
                           "sigma-xi")
        ch = _identity_channels(vspec)
        tw = {}
        for vd in ch:
            si, f, c = vd
            if si == 2:
                tw[vd] = Fraction(j, k) if c == "+" else Fraction(k - j, k)
            else:
                tw[vd] = Fraction(0)
        return SectorContext("sigma-xi", vspec, mspec, ch, tw, d, j=j, k=k)
    raise ValueError("unknown sector preset %r" % (name,))
