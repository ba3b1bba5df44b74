"""Operators on truncated sector modules: normal-ordered quadratic generator
modes, the recursive twisted-mode extraction, and automorphism matrices.

Two independent routes produce generator modes:

* closed-form normal-ordered bilinears (the displayed L, G, J sums, with
  their vacuum-anomaly constants), evaluated exactly column by column;

* the mode form of the twisted iterate formula.  For a generator a in the
  eigenvalue coset s and any state v, with integers q, m and n = w' - m in
  the matching coset,

      (a_q v)_{w'} = sum_l (-1)^l C(q,l) [ a_{q+m+s-l} v_{n-s+l}
                       - eps (-1)^q v_{q+n-s-l} a_{m+s+l} ]
                     - sum_{i>=1} C(m+s,i) (a_{q+i} v)_{w'-i}

  where eps = (-1)^{|a||v|} and the tail states a_{q+i} v live in the
  untwisted sector.  The vacuum anomalies (d/16, the charged-pair constant)
  emerge from the tail terms rather than being put in by hand.

All operators are lazy exact matrices over an ambient truncated basis: a
column is the exact image of a basis monomial with rows above the ambient
weight dropped, so products are trusted exactly where the weight-shift
analysis says they are.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .fock import (SectorContext, apply_combo, apply_raw_mode, enumerate_basis,
                   parity_of, weight_of)
from .scalars import CycScalar, i_unit, rat, sqrt2

HALF = Fraction(1, 2)


@lru_cache(maxsize=1 << 16)
def gbinom(q: Fraction, l: int) -> Fraction:
    """Generalized binomial C(q, l) for rational q and integer l >= 0."""
    out = Fraction(1)
    for i in range(l):
        out = out * (q - i) / (i + 1)
    return out


class Ambient:
    """A sector context with its truncated module basis."""

    def __init__(self, ctx: SectorContext, max_weight):
        self.ctx = ctx
        self.W = Fraction(max_weight)
        self.basis = enumerate_basis(ctx.mspec, self.W)
        self.index = {m: i for i, m in enumerate(self.basis)}
        self.weights = [weight_of(m) for m in self.basis]
        self.parities = [parity_of(ctx.mspec, m) for m in self.basis]

    def vacuum_vec(self) -> dict:
        return {self.index[self.ctx.mspec.vacuum()]: rat(1)}

    def state_to_vec(self, state: dict) -> dict:
        out = {}
        for mono, c in state.items():
            if mono in self.index:
                out[self.index[mono]] = c
            elif weight_of(mono) <= self.W:
                raise KeyError("monomial missing from ambient basis")
        return out

    def vec_to_state(self, vec: dict) -> dict:
        return {self.basis[i]: c for i, c in vec.items()}

    def project_state(self, state: dict) -> dict:
        """Drop monomials above the ambient weight, map the rest to indices."""
        out = {}
        for mono, c in state.items():
            i = self.index.get(mono)
            if i is not None:
                out[i] = c
        return out


class Op:
    """Lazy exact matrix on an ambient basis.

    ``col(i)`` is the exact image of basis monomial i, truncated to rows in
    the ambient basis.  ``shift`` is the weight shift (all images of weight-w
    states live at w + shift), ``parity`` the operator parity.
    """

    def __init__(self, amb: Ambient, shift, parity: int, colfn, label: str = ""):
        self.amb = amb
        self.shift = Fraction(shift)
        self.parity = parity
        self._colfn = colfn
        self._cols: dict[int, dict] = {}
        self.label = label

    def col(self, i: int) -> dict:
        c = self._cols.get(i)
        if c is None:
            c = self._colfn(i)
            self._cols[i] = c
        return c

    def apply(self, vec: dict) -> dict:
        out: dict = {}
        for i, ci in vec.items():
            for r, v in self.col(i).items():
                x = ci * v
                out[r] = out[r] + x if r in out else x
        return {r: v for r, v in out.items() if not v.is_zero()}

    def apply_state(self, state: dict) -> dict:
        """Apply to a monomial-keyed state, returning a monomial-keyed state."""
        vec = self.amb.state_to_vec(state)
        return self.amb.vec_to_state(self.apply(vec))

    def entries(self, cols) -> dict:
        return {(r, i): v for i in cols for r, v in self.col(i).items()}

    def __repr__(self):
        return "Op(%s, shift=%s)" % (self.label or "?", self.shift)


def op_zero(amb: Ambient, shift, parity=0) -> Op:
    return Op(amb, shift, parity, lambda i: {}, "0")


def op_identity(amb: Ambient) -> Op:
    return Op(amb, 0, 0, lambda i: {i: rat(1)}, "Id")


def op_add(amb: Ambient, parts, shift, parity, label="") -> Op:
    """Linear combination sum(coeff * op) of same-shift operators."""
    parts = [(c, op) for c, op in parts]

    def colfn(i):
        out: dict = {}
        for c, op in parts:
            for r, v in op.col(i).items():
                x = c * v
                out[r] = out[r] + x if r in out else x
        return {r: v for r, v in out.items() if not v.is_zero()}

    return Op(amb, shift, parity, colfn, label)


def op_compose(A: Op, B: Op, label="") -> Op:
    def colfn(i):
        return A.apply(B.col(i))

    return Op(A.amb, A.shift + B.shift, (A.parity + B.parity) & 1, colfn,
              label or "%s*%s" % (A.label, B.label))


def supercommutator(A: Op, B: Op) -> Op:
    """[A, B] = AB - (-1)^{|A||B|} BA, lazily."""
    sign = -1 if (A.parity and B.parity) else 1

    def colfn(i):
        out = dict(A.apply(B.col(i)))
        for r, v in B.apply(A.col(i)).items():
            x = -v if sign > 0 else v
            out[r] = out[r] + x if r in out else x
        return {r: v for r, v in out.items() if not v.is_zero()}

    return Op(A.amb, A.shift + B.shift, (A.parity + B.parity) & 1, colfn,
              "[%s,%s]" % (A.label, B.label))


# -- exact column application of primitive and channel modes ----------------

def _apply_vdir_m(amb: Ambient, state: dict, vdir, index) -> dict:
    """Apply an untwisted generator direction to a module-side state, via
    the channel expansion.  Exact (no truncation)."""
    ctx = amb.ctx
    combo = [(c, md) for c, md in ctx.channel[vdir]]
    return apply_combo(ctx.mspec, state, combo, Fraction(index))


def apply_vdir_v(ctx: SectorContext, state: dict, vdir, index) -> dict:
    """Apply a generator direction on the untwisted side itself."""
    si, f, c = vdir
    return apply_raw_mode(ctx.vspec, state, si, f, c, Fraction(index))


# -- closed-form quadratic templates -----------------------------------------

class QuadOperator(Op):
    """A normal-ordered quadratic-plus-constant mode template, evaluated
    exactly against the ambient truncation.

    ``terms_fn(n, w)`` yields (coeff, (vdirA, idxA), (vdirB, idxB)) with B
    applied first; ``constant`` multiplies the identity.
    """

    def __init__(self, amb: Ambient, index, shift, parity, terms_fn,
                 constant=None, label=""):
        self.index = Fraction(index)
        self.terms_fn = terms_fn
        self.constant = constant

        def colfn(i):
            mono = amb.basis[i]
            w = amb.weights[i]
            acc: dict = {}
            for coeff, (da, ia), (db, ib) in terms_fn(self.index, w):
                st = _apply_vdir_m(amb, {mono: rat(1)}, db, ib)
                if not st:
                    continue
                st = _apply_vdir_m(amb, st, da, ia)
                for m2, c2 in st.items():
                    v = c2 * coeff
                    acc[m2] = acc[m2] + v if m2 in acc else v
            out = amb.project_state(acc)
            if constant is not None and not constant.is_zero() and self.index == 0:
                out[i] = out[i] + constant if i in out else constant
            return {r: v for r, v in out.items() if not v.is_zero()}

        super().__init__(amb, shift, parity, colfn, label)


def _coset_range(offset: Fraction, lo, hi):
    """Members of offset + Z in the closed interval [lo, hi]."""
    t = offset + ((Fraction(lo) - offset) // 1)
    if t < lo:
        t += 1
    out = []
    while t <= hi:
        out.append(t)
        t += 1
    return out


def _same_slot_L_terms(vdirs, coset, weighted: bool, diag_half: bool):
    """Closed-form L(n) contribution of one slot, as a terms_fn.

    Sum over the right index t in the coset with t > n/2 of
    c(t) X(n-t) X(t), with c(t) = (t - n/2) for fermions (weighted) and 1
    for bosons, plus the boundary term (1/2) X(n/2)^2 when n/2 lies in the
    coset (bosonic half-integer moding only)."""

    def terms(n, w):
        for t in _coset_range(coset, Fraction(n, 2), w):
            if t <= Fraction(n, 2):
                continue
            c = rat(t - Fraction(n, 2)) if weighted else rat(1)
            for vd in vdirs:
                yield (c, (vd, n - t), (vd, t))
        if diag_half and (Fraction(n, 2) - coset) % 1 == 0 and Fraction(n, 2) <= w:
            for vd in vdirs:
                yield (rat(HALF), (vd, Fraction(n, 2)), (vd, Fraction(n, 2)))

    return terms


def _charged_L_terms(plus_dirs, minus_dirs, coset_plus, coset_minus):
    """L(n) of a charged fermion pair: sum over t > n/2 in each coset of
    (t - n/2) psi^+(n-t) psi^-(t) resp. psi^-(n-t) psi^+(t)."""

    def terms(n, w):
        for t in _coset_range(coset_minus, n / 2, w):
            if t <= n / 2:
                continue
            c = rat(t - Fraction(n, 2))
            for dp, dm in zip(plus_dirs, minus_dirs):
                yield (c, (dp, n - t), (dm, t))
        for t in _coset_range(coset_plus, n / 2, w):
            if t <= n / 2:
                continue
            c = rat(t - Fraction(n, 2))
            for dp, dm in zip(plus_dirs, minus_dirs):
                yield (c, (dm, n - t), (dp, t))

    return terms


def _cross_terms(pairs, coset_b):
    """sum_t A(n-t) B(t) over the B coset, for cross-slot (commuting) pairs;
    ``pairs`` lists (coeff, dirA, dirB)."""

    def terms(n, w):
        for t in _coset_range(coset_b, n - w, w):
            for c, da, db in pairs:
                yield (c, (da, n - t), (db, t))

    return terms


def _charged_J_terms(plus_dirs, minus_dirs, coset_plus, coset_minus):
    """Normal-ordered J(n) of a charged pair:
    sum_{t>0 in coset-} psi^+(n-t) psi^-(t) - sum_{t>0 in coset+} psi^-(n-t) psi^+(t)."""

    def terms(n, w):
        for t in _coset_range(coset_minus, 0, w):
            if t <= 0:
                continue
            for dp, dm in zip(plus_dirs, minus_dirs):
                yield (rat(1), (dp, n - t), (dm, t))
        for t in _coset_range(coset_plus, 0, w):
            if t <= 0:
                continue
            for dp, dm in zip(plus_dirs, minus_dirs):
                yield (rat(-1), (dm, n - t), (dp, t))

    return terms


def _combine_terms(*fns):
    def terms(n, w):
        for fn in fns:
            yield from fn(n, w)

    return terms


# -- generator families -------------------------------------------------------

class ModeFamily:
    """Generator modes X(index) -> Op, built on demand."""

    def __init__(self, amb: Ambient, name: str, coset: Fraction, delta,
                 parity: int, maker):
        self.amb = amb
        self.name = name
        self.coset = coset  # index coset (indices in coset + Z)
        self.delta = Fraction(delta)  # conformal weight of the field
        self.parity = parity
        self._maker = maker
        self._ops: dict[Fraction, Op] = {}

    def op(self, index) -> Op:
        index = Fraction(index)
        if (index - self.coset) % 1 != 0:
            raise ValueError("unsupported mode %s(%s): support %s + Z"
                             % (self.name, index, self.coset))
        if index not in self._ops:
            self._ops[index] = self._maker(index)
        return self._ops[index]

    def indices(self, bound) -> list[Fraction]:
        return _coset_range(self.coset, -Fraction(bound), Fraction(bound))


def quad_family(amb, name, coset, delta, parity, terms_fn, const0=None) -> ModeFamily:
    def maker(index):
        return QuadOperator(amb, index, -index, parity, terms_fn,
                            constant=const0, label="%s(%s)" % (name, index))

    return ModeFamily(amb, name, coset, delta, parity, maker)


def family_from_ops(amb, name, coset, delta, parity, opfn) -> ModeFamily:
    return ModeFamily(amb, name, coset, delta, parity, opfn)


def family_combo(amb, name, coset, delta, parity, parts) -> ModeFamily:
    """parts: list of (coeff, ModeFamily); all on the same index coset."""

    def maker(index):
        return op_add(amb, [(c, f.op(index)) for c, f in parts], -index, parity,
                      label="%s(%s)" % (name, index))

    return ModeFamily(amb, name, coset, delta, parity, maker)


# -- the recursive twisted-mode extraction -----------------------------------

class TwistedModes:
    """Mode families of twisted vertex operators, built recursively from the
    primitive twisted fields by the iterate-formula recursion."""

    def __init__(self, amb: Ambient):
        self.amb = amb
        self.ctx = amb.ctx
        self._mono: dict = {}  # monomial -> _MonoFamily
        self._raw_cache: dict = {}

    # base twisted fields ------------------------------------------------

    def raw_field_op(self, vdir, index) -> Op:
        """Primitive twisted field mode at a raw (field) index."""
        amb = self.amb
        index = Fraction(index)

        def colfn(i):
            st = _apply_vdir_m(amb, {amb.basis[i]: rat(1)}, vdir, index)
            return amb.project_state(st)

        return Op(amb, -index, self.ctx.vdir_parity(vdir), colfn,
                  "%s(%s)" % (vdir, index))

    def generator_mode(self, vdir, p) -> Op:
        """Twisted mode of the generator state in the v_w convention:
        a_p = field mode at raw index p + 1 - wt(a)."""
        key = (vdir, Fraction(p))
        cache = self._raw_cache
        got = cache.get(key)
        if got is None:
            raw = Fraction(p) + 1 - self.ctx.vdir_weight(vdir)
            got = self.raw_field_op(vdir, raw)
            cache[key] = got
        return got

    # public API -----------------------------------------------------------

    def state_modes(self, state: dict, w_prime) -> Op:
        """The w'-mode (v_{w'} convention) of the twisted operator of an
        untwisted-sector state."""
        w_prime = Fraction(w_prime)
        parts = []
        for mono, c in state.items():
            fam = self._mono_family(mono)
            parts.append((c, fam.op(w_prime)))
        if not parts:
            return op_zero(self.amb, 0)
        shift = parts[0][1].shift
        parity = parts[0][1].parity
        return op_add(self.amb, parts, shift, parity,
                      label="Y(state)_%s" % w_prime)

    def field_family(self, state: dict, name, delta, parity) -> ModeFamily:
        """Physics-convention family X(n) = state-mode_{n + delta - 1}."""
        mono0 = next(iter(state))
        coset = (self._state_coset(mono0) - delta + 1) % 1

        def maker(index):
            return self.state_modes(state, index + delta - 1)

        return ModeFamily(self.amb, name, coset, delta, parity, maker)

    # internals ------------------------------------------------------------

    def _state_coset(self, mono) -> Fraction:
        s = Fraction(0)
        for si, word in enumerate(mono):
            for (f, c, _) in word:
                s += self.ctx.twist_coset[(si, f, c)]
        return s % 1

    def _mono_family(self, mono):
        fam = self._mono.get(mono)
        if fam is None:
            fam = _MonoFamily(self, mono)
            self._mono[mono] = fam
        return fam


class _MonoFamily:
    """Twisted mode family of one untwisted-sector monomial."""

    def __init__(self, tm: TwistedModes, mono):
        self.tm = tm
        self.mono = mono
        self.amb = tm.amb
        self.ctx = tm.ctx
        self.weight = weight_of(mono)
        self.parity = parity_of(self.ctx.vspec, mono)
        self.coset = tm._state_coset(mono)
        self._ops: dict[Fraction, Op] = {}
        # peel the leading mode: mono = a(index) . rest
        self.is_vacuum = all(not w for w in mono)
        if not self.is_vacuum:
            for si, word in enumerate(mono):
                if word:
                    f, c, idx = word[0]
                    self.head = (si, f, c)
                    self.head_index = idx
                    rest = mono[:si] + (word[1:],) + mono[si + 1:]
                    self.rest = rest
                    break
            self.wt_a = tm.ctx.vdir_weight(self.head)
            self.s_a = tm.ctx.twist_coset[self.head]
            self.q = self.head_index - 1 + self.wt_a
            assert self.q.denominator == 1
            self.q = int(self.q)
            self.rest_weight = weight_of(self.rest)
            self.rest_parity = parity_of(self.ctx.vspec, self.rest)
            self.eps = -1 if (self.ctx.vdir_parity(self.head) and self.rest_parity & 1) else 1
            self._tails = None

    def op(self, w_prime: Fraction) -> Op:
        if (w_prime - self.coset) % 1 != 0:
            return op_zero(self.amb, self.weight - w_prime - 1, self.parity)
        got = self._ops.get(w_prime)
        if got is None:
            got = self._build(w_prime)
            self._ops[w_prime] = got
        return got

    def _build(self, w_prime: Fraction) -> Op:
        amb = self.amb
        shift = self.weight - w_prime - 1
        if self.is_vacuum:
            if w_prime == -1:
                return op_identity(amb)
            return op_zero(amb, shift, 0)
        tm = self.tm
        head, q, s = self.head, self.q, self.s_a
        wt_a, wt_v = self.wt_a, self.rest_weight
        eps, eps_q = self.eps, (-1) ** (self.q & 1)
        rest_fam = tm._mono_family(self.rest)
        tails = self._tail_states()

        def colfn(i):
            w = amb.weights[i]
            # split w' = m + n: balance the two creation depths so the
            # intermediates stay inside the ambient truncation
            m_center = (w_prime - wt_v + wt_a) / 2 - s
            m = int(m_center // 1)
            best = None
            for mm in (m - 1, m, m + 1, m + 2):
                n = w_prime - mm
                inter1 = w + wt_v - (n - s) - 1
                inter2 = w + wt_a - (mm + s) - 1
                need = max(inter1, inter2)
                if best is None or need < best[0]:
                    best = (need, mm, n)
            need, m, n = best
            if need > amb.W:
                raise ValueError(
                    "truncation too shallow: mode %s on weight-%s column needs "
                    "depth %s > ambient %s" % (w_prime, w, need, amb.W))
            vec = {i: rat(1)}
            acc: dict = {}
            # piece 1: + sum_l (-1)^l C(q,l) a_{q+m+s-l} v_{n-s+l}
            l = 0
            while n - s + l <= w + wt_v - 1:
                cl = gbinom(Fraction(q), l)
                if cl:
                    mid = rest_fam.op(n - s + l).apply(vec)
                    if mid:
                        out = tm.generator_mode(head, q + m + s - l).apply(mid)
                        _vec_acc(acc, out, rat(cl if l % 2 == 0 else -cl))
                l += 1
            # piece 2: - eps (-1)^q sum_l (-1)^l C(q,l) v_{q+n-s-l} a_{m+s+l}
            l = 0
            while m + s + l <= w + wt_a - 1:
                cl = gbinom(Fraction(q), l)
                if cl:
                    mid = tm.generator_mode(head, m + s + l).apply(vec)
                    if mid:
                        out = rest_fam.op(q + n - s - l).apply(mid)
                        sign = -eps * eps_q * (1 if l % 2 == 0 else -1)
                        _vec_acc(acc, out, rat(cl * sign))
                l += 1
            # tail: - sum_{i>=1} C(m+s, i) (a_{q+i} v)_{w'-i}
            for i_t, tail_fam in enumerate(tails, start=1):
                ci = gbinom(m + s, i_t)
                if ci and tail_fam is not None:
                    out = tail_fam.op(w_prime - i_t).apply(vec)
                    _vec_acc(acc, out, rat(-ci))
            return {r: v for r, v in acc.items() if not v.is_zero()}

        return Op(amb, shift, self.parity, colfn,
                  "T[%s]_%s" % (self.mono, w_prime))

    def _tail_states(self):
        """Families of a_{q+i} v for i >= 1 (None where the state vanishes)."""
        if self._tails is not None:
            return self._tails
        tm, ctx = self.tm, self.ctx
        out = []
        i = 1
        while True:
            q2 = self.q + i
            raw = q2 + 1 - self.wt_a
            if raw > self.rest_weight:
                break
            st = apply_vdir_v(ctx, {self.rest: rat(1)}, self.head, raw)
            out.append(_StateFamily(tm, st) if st else None)
            i += 1
        self._tails = out
        return out


class _StateFamily:
    """Linear combination of monomial families."""

    def __init__(self, tm: TwistedModes, state: dict):
        self.tm = tm
        self.state = state

    def op(self, w_prime) -> Op:
        return self.tm.state_modes(self.state, w_prime)


def _vec_acc(acc: dict, vec: dict, coeff: CycScalar):
    for r, v in vec.items():
        x = v * coeff
        acc[r] = acc[r] + x if r in acc else x


# -- untwisted-module states of the distinguished vectors ---------------------

def _mk_state(ctx: SectorContext, modes, coeff=None) -> dict:
    """Apply creation modes (vdir, index) right-to-left to the vacuum, on
    the untwisted side."""
    st = {ctx.vspec.vacuum(): coeff if coeff is not None else rat(1)}
    for vdir, idx in reversed(modes):
        st = apply_vdir_v(ctx, st, vdir, Fraction(idx))
    return st


def _state_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for m, c in b.items():
        out[m] = out[m] + c if m in out else c
    return {m: c for m, c in out.items() if not c.is_zero()}


def _state_scale(a: dict, c) -> dict:
    return {m: x * c for m, x in a.items()}


def conformal_state(ctx: SectorContext) -> dict:
    """omega: (1/2) sum alpha(-1)^2 per boson slot + (1/2) alpha(-3/2)alpha(-1/2)
    per fermion slot (charged pairs use the +- cross terms)."""
    out: dict = {}
    for si, slot in enumerate(ctx.vspec.slots):
        if slot.species == "boson":
            for f in range(1, slot.d + 1):
                st = _mk_state(ctx, [((si, f, "a"), -1), ((si, f, "a"), -1)], rat(HALF))
                out = _state_add(out, st)
        elif slot.basis == "orthonormal":
            for f in range(1, slot.d + 1):
                st = _mk_state(ctx, [((si, f, "a"), Fraction(-3, 2)),
                                     ((si, f, "a"), Fraction(-1, 2))], rat(HALF))
                out = _state_add(out, st)
        else:  # charged pair
            for f in range(1, slot.d + 1):
                st = _mk_state(ctx, [((si, f, "+"), Fraction(-3, 2)),
                                     ((si, f, "-"), Fraction(-1, 2))], rat(HALF))
                out = _state_add(out, st)
                st = _mk_state(ctx, [((si, f, "-"), Fraction(-3, 2)),
                                     ((si, f, "+"), Fraction(-1, 2))], rat(HALF))
                out = _state_add(out, st)
    return out


def n1_supercurrent_state(ctx: SectorContext, pair) -> dict:
    """tau over one (boson slot, fermion slot) pair: sum alpha(-1)alpha(-1/2)."""
    sb, sf = pair
    out: dict = {}
    for f in range(1, ctx.d + 1):
        st = _mk_state(ctx, [((sb, f, "a"), -1), ((sf, f, "a"), Fraction(-1, 2))])
        out = _state_add(out, st)
    return out


def n2_states(ctx: SectorContext) -> dict:
    """tau1, tau2, mu, tau+, tau- on the four-slot (b1,f1,b2,f2) sector."""
    I = i_unit()
    tau1 = _state_add(n1_supercurrent_state(ctx, (0, 1)), n1_supercurrent_state(ctx, (2, 3)))
    tau2: dict = {}
    for f in range(1, ctx.d + 1):
        tau2 = _state_add(tau2, _mk_state(ctx, [((0, f, "a"), -1), ((3, f, "a"), Fraction(-1, 2))]))
        tau2 = _state_add(tau2, _state_scale(
            _mk_state(ctx, [((2, f, "a"), -1), ((1, f, "a"), Fraction(-1, 2))]), rat(-1)))
    mu: dict = {}
    for f in range(1, ctx.d + 1):
        mu = _state_add(mu, _state_scale(
            _mk_state(ctx, [((1, f, "a"), Fraction(-1, 2)), ((3, f, "a"), Fraction(-1, 2))]), I))
    s2inv = sqrt2().invert()
    taup = _state_add(_state_scale(tau1, s2inv), _state_scale(tau2, -I * s2inv))
    taum = _state_add(_state_scale(tau1, s2inv), _state_scale(tau2, I * s2inv))
    return {"tau1": tau1, "tau2": tau2, "mu": mu, "taup": taup, "taum": taum}


def n2_states_charged(ctx: SectorContext) -> dict:
    """mu, tau+, tau- on the charged (b1,b2,F) sector."""
    I = i_unit()
    mu: dict = {}
    for f in range(1, ctx.d + 1):
        mu = _state_add(mu, _mk_state(ctx, [((2, f, "+"), Fraction(-1, 2)),
                                            ((2, f, "-"), Fraction(-1, 2))]))
    # tau+- = sqrt2 sum alpha_b^-+(-1) psi^+-(-1/2), alpha_b^-+ = (b1 +- i b2)/sqrt2
    taup: dict = {}
    taum: dict = {}
    for f in range(1, ctx.d + 1):
        taup = _state_add(taup, _mk_state(ctx, [((0, f, "a"), -1), ((2, f, "+"), Fraction(-1, 2))]))
        taup = _state_add(taup, _state_scale(
            _mk_state(ctx, [((1, f, "a"), -1), ((2, f, "+"), Fraction(-1, 2))]), I))
        taum = _state_add(taum, _mk_state(ctx, [((0, f, "a"), -1), ((2, f, "-"), Fraction(-1, 2))]))
        taum = _state_add(taum, _state_scale(
            _mk_state(ctx, [((1, f, "a"), -1), ((2, f, "-"), Fraction(-1, 2))]), -I))
    return {"mu": mu, "taup": taup, "taum": taum}
