"""Enveloping-algebra side: U_ab(gl_n), its root vectors, and the finite
root-of-unity quotients u, uhat and their Levi-type subalgebras.

The infinite algebra U is presented on the letters f_j < (torus) < e_j with
a degree-lexicographic order, so normal forms realize the triangular
decomposition F-part * torus * E-part.  The finite quotients are presented
on root-vector letters E_kl / F_kl (weight k-l+1, torus letters weight 0)
with straightening rules derived mechanically: each out-of-order product is
expanded inside U, reduced there, and re-expressed in the PBW basis by an
exact linear solve.  The derived rules are validated by the order check of
the rewrite engine and, in the test suite, by confluence and dimension
counts.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from . import exactlinalg
from .ncpoly import Gen, NCPoly, RewriteSystem, TensorElement, Word
from .scalars import CoefficientField, ParameterSpec

UVARIANTS = ("U", "u", "uhat", "Ul", "uhatl")


def _eletter(k: int, l: int) -> Gen:
    return Gen("e", k, l)


def _fletter(k: int, l: int) -> Gen:
    return Gen("f", k, l)


def _base(fam: str) -> str:
    return fam[:-4] if fam.endswith("_inv") else fam


class USession:
    """A presented algebra on the enveloping side.

    U / Ul      letters f_j, a_i, a_i^-1, b_i, b_i^-1, e_j (any mode)
    u           root letters F_kl, a_i, b_i, E_kl with ell-th power rules
    uhat        as u but with the torus collapsed to h_1 .. h_n
    uhatl       uhat restricted to the root segments inside I_+ / I_-
    """

    def __init__(self, variant: str, n: int, spec: ParameterSpec,
                 I_plus=None, I_minus=None):
        if variant not in UVARIANTS:
            raise ValueError(f"unknown variant {variant!r}")
        if variant in ("u", "uhat", "uhatl") and not spec.is_root:
            raise ValueError(f"{variant} requires a root-mode ParameterSpec")
        self.variant = variant
        self.n = n
        self.spec = spec
        self.field = CoefficientField(spec)
        full = tuple(range(1, n))
        self.I_plus = tuple(sorted(I_plus)) if I_plus is not None else full
        self.I_minus = tuple(sorted(I_minus)) if I_minus is not None else full
        if variant in ("U", "u", "uhat"):
            self.I_plus, self.I_minus = full, full
        for i in self.I_plus + self.I_minus:
            if not 1 <= i < n:
                raise ValueError(f"simple-root index {i} out of range for n={n}")

        if variant in ("U", "Ul"):
            self._init_infinite()
        else:
            self._init_finite()
        self._cop_cache: dict[Word, dict] = {}
        self._expand_cache: dict[Gen, NCPoly] = {}

    # ------------------------------------------------------------------ U, Ul

    def _segments(self, allowed: tuple[int, ...]) -> list[tuple[int, int]]:
        """Root intervals [l, k] with every simple index inside ``allowed``."""
        out = []
        for l in range(1, self.n):
            for k in range(l, self.n):
                if all(j in allowed for j in range(l, k + 1)):
                    out.append((k, l))
        return sorted(out)

    def _init_infinite(self):
        n, f = self.n, self.field
        froots = [_fletter(j, j) for j in self.I_minus]
        torus = []
        for i in range(1, n + 1):
            torus += [Gen("a", i), Gen("a_inv", i), Gen("b", i), Gen("b_inv", i)]
        eroots = [_eletter(j, j) for j in self.I_plus]
        self.froots = [(j, j) for j in self.I_minus]
        self.eroots = [(j, j) for j in self.I_plus]
        self.torus_letters = torus
        letters = froots + torus + eroots
        self.rs = RewriteSystem(letters, f.one)
        self.relations: list[NCPoly] = []
        rel = self._rel

        # torus: inverses cancel, everything commutes
        for i in range(1, n + 1):
            for base, inv in (("a", "a_inv"), ("b", "b_inv")):
                rel((Gen(base, i), Gen(inv, i)), NCPoly.term((), f.one))
                rel((Gen(inv, i), Gen(base, i)), NCPoly.term((), f.one))
        for x in torus:
            for y in torus:
                if self.rs.rank[x] > self.rs.rank[y] and (_base(x.fam), x.i) != (_base(y.fam), y.i):
                    rel((x, y), NCPoly.term((y, x), f.one))

        # torus past e and f
        for j in self.I_plus:
            ej = _eletter(j, j)
            for i in range(1, n + 1):
                d = (1 if i == j else 0) - (1 if i == j + 1 else 0)
                rel((ej, Gen("a", i)), NCPoly.term((Gen("a", i), ej), f.ab(-d, 0)))
                rel((ej, Gen("a_inv", i)), NCPoly.term((Gen("a_inv", i), ej), f.ab(d, 0)))
                rel((ej, Gen("b", i)), NCPoly.term((Gen("b", i), ej), f.ab(0, -d)))
                rel((ej, Gen("b_inv", i)), NCPoly.term((Gen("b_inv", i), ej), f.ab(0, d)))
        for j in self.I_minus:
            fj = _fletter(j, j)
            for i in range(1, n + 1):
                d = (1 if i == j else 0) - (1 if i == j + 1 else 0)
                rel((Gen("a", i), fj), NCPoly.term((fj, Gen("a", i)), f.ab(-d, 0)))
                rel((Gen("a_inv", i), fj), NCPoly.term((fj, Gen("a_inv", i)), f.ab(d, 0)))
                rel((Gen("b", i), fj), NCPoly.term((fj, Gen("b", i)), f.ab(0, -d)))
                rel((Gen("b_inv", i), fj), NCPoly.term((fj, Gen("b_inv", i)), f.ab(0, d)))

        # mixed e f
        inv_ab = f.one / (f.alpha() - f.beta())
        for j in self.I_plus:
            for l in self.I_minus:
                rhs = NCPoly.term((_fletter(l, l), _eletter(j, j)), f.one)
                if j == l:
                    w = (Gen("a", j), Gen("b", j + 1))
                    wp = (Gen("a", j + 1), Gen("b", j))
                    rhs = rhs + NCPoly({w: inv_ab, wp: -inv_ab})
                rel((_eletter(j, j), _fletter(l, l)), rhs)

        # e-e and f-f
        ab = f.alpha() * f.beta()
        s = f.alpha() + f.beta()
        for j in self.I_plus:
            for k in self.I_plus:
                if k > j + 1:
                    rel((_eletter(k, k), _eletter(j, j)),
                        NCPoly.term((_eletter(j, j), _eletter(k, k)), f.one))
            if j + 1 in self.I_plus:
                ej, ek = _eletter(j, j), _eletter(j + 1, j + 1)
                rel((ek, ej, ej),
                    NCPoly({(ej, ek, ej): s / ab, (ej, ej, ek): -(f.one / ab)}))
                rel((ek, ek, ej),
                    NCPoly({(ek, ej, ek): s / ab, (ej, ek, ek): -(f.one / ab)}))
        for j in self.I_minus:
            for k in self.I_minus:
                if k > j + 1:
                    rel((_fletter(k, k), _fletter(j, j)),
                        NCPoly.term((_fletter(j, j), _fletter(k, k)), f.one))
            if j + 1 in self.I_minus:
                fj, fk = _fletter(j, j), _fletter(j + 1, j + 1)
                rel((fk, fj, fj),
                    NCPoly({(fj, fk, fj): s, (fj, fj, fk): -ab}))
                rel((fk, fk, fj),
                    NCPoly({(fk, fj, fk): s, (fj, fk, fk): -ab}))

    def _rel(self, lhs: Word, rhs: NCPoly):
        self.rs.add_rule(lhs, rhs)
        self.relations.append(NCPoly.term(lhs, self.field.one) - rhs)

    # ------------------------------------------------------------- u, uhat(l)

    def _init_finite(self):
        n, f, ell = self.n, self.field, self.spec.ell
        self.froots = self._segments(self.I_minus)
        self.eroots = self._segments(self.I_plus)
        froots = [_fletter(k, l) for (k, l) in self.froots]
        eroots = [_eletter(k, l) for (k, l) in self.eroots]
        if self.variant == "u":
            torus = [Gen(base, i) for i in range(1, n + 1) for base in ("a", "b")]
        else:
            torus = [Gen("h", i) for i in range(1, n + 1)]
        self.torus_letters = torus
        letters = froots + torus + eroots
        weights = {g: (g.i - g.j + 1) for g in froots + eroots}
        weights.update({g: 0 for g in torus})
        self.rs = RewriteSystem(letters, f.one, weights)
        self.relations = []
        rel = self._rel

        # companion infinite presentation used for derivations and expansions
        self.ambient = u_session("U", n, self.spec)
        pbw = _PbwTables(self.ambient)
        self._pbw = pbw

        for x in torus:
            for y in torus:
                if self.rs.rank[x] > self.rs.rank[y]:
                    rel((x, y), NCPoly.term((y, x), f.one))
        for x in torus:
            rel((x,) * ell, NCPoly.term((), f.one))
        for g in eroots + froots:
            rel((g,) * ell, NCPoly.zero())

        def tor_exp(i, k, l):
            return (1 if i == l else 0) - (1 if i == k + 1 else 0)

        for g in eroots:
            for t in torus:
                d = tor_exp(t.i, g.i, g.j)
                if t.fam == "a":
                    c = f.ab(-d, 0)
                elif t.fam == "b":
                    c = f.ab(0, -d)
                else:
                    c = f.q(-d)
                rel((g, t), NCPoly.term((t, g), c))
        for g in froots:
            for t in torus:
                d = tor_exp(t.i, g.i, g.j)
                if t.fam == "a":
                    c = f.ab(-d, 0)
                elif t.fam == "b":
                    c = f.ab(0, -d)
                else:
                    c = f.q(-d)
                rel((t, g), NCPoly.term((g, t), c))

        # straightening rules, derived inside U
        for A in eroots:
            for B in eroots:
                if self.rs.rank[A] > self.rs.rank[B]:
                    prod = self.ambient.reduce(pbw.expand("e", (A.i, A.j)) *
                                               pbw.expand("e", (B.i, B.j)))
                    rel((A, B), self._from_U(prod))
        for A in froots:
            for B in froots:
                if self.rs.rank[A] > self.rs.rank[B]:
                    prod = self.ambient.reduce(pbw.expand("f", (A.i, A.j)) *
                                               pbw.expand("f", (B.i, B.j)))
                    rel((A, B), self._from_U(prod))
        for A in eroots:
            for B in froots:
                prod = self.ambient.reduce(pbw.expand("e", (A.i, A.j)) *
                                           pbw.expand("f", (B.i, B.j)))
                rel((A, B), self._from_U(prod))

    def _torus_word_from_U(self, w: Word) -> Word:
        """Map a torus word of U into the finite session's torus letters."""
        ell = self.spec.ell
        counts: dict[tuple[str, int], int] = {}
        for g in w:
            sgn = -1 if g.fam.endswith("_inv") else 1
            counts[(_base(g.fam), g.i)] = counts.get((_base(g.fam), g.i), 0) + sgn
        if self.variant == "u":
            exps = {("a", i): counts.get(("a", i), 0) % ell for i in range(1, self.n + 1)}
            exps.update({("b", i): counts.get(("b", i), 0) % ell for i in range(1, self.n + 1)})
            out: list[Gen] = []
            for t in self.torus_letters:
                out += [t] * exps[(t.fam, t.i)]
            return tuple(out)
        na, nb = self.spec.n_alpha, self.spec.n_beta
        out = []
        for i in range(1, self.n + 1):
            r = (counts.get(("a", i), 0) * na + counts.get(("b", i), 0) * nb) % ell
            out += [Gen("h", i)] * r
        return tuple(out)

    def _from_U(self, p: NCPoly) -> NCPoly:
        """Rewrite a reduced U element in the finite session's letters."""
        out = NCPoly.zero()
        for w, c in p.terms.items():
            k = 0
            while k < len(w) and w[k].fam == "f":
                k += 1
            m = k
            while m < len(w) and w[m].fam in ("a", "a_inv", "b", "b_inv"):
                m += 1
            fword, tword, eword = w[:k], w[k:m], w[m:]
            if any(g.fam not in ("e",) for g in eword):
                raise ValueError("unexpected normal form in U")
            fpart = self._pbw.coords("f", fword)
            epart = self._pbw.coords("e", eword)
            tw = self._torus_word_from_U(tword)
            for fmono, cf in fpart.items():
                for emono, ce in epart.items():
                    word = (tuple(_fletter(*r) for r in fmono) + tw +
                            tuple(_eletter(*r) for r in emono))
                    out = out + NCPoly.term(word, c * cf * ce)
        return self.rs.reduce(out)

    # ------------------------------------------------------------ common api

    def one(self) -> NCPoly:
        return NCPoly.term((), self.field.one)

    def reduce(self, p: NCPoly) -> NCPoly:
        return self.rs.reduce(p)

    def expand_to_U(self, p: NCPoly) -> NCPoly:
        """Image of a finite-session element inside U (e/f/torus letters)."""
        if self.variant in ("U", "Ul"):
            return p
        amb = self.ambient
        out = NCPoly.zero()
        for w, c in p.terms.items():
            acc = NCPoly.term((), self.field.one)
            for g in w:
                acc = acc * self._expand_letter(g)
            out = out + acc.scaled(c)
        return amb.reduce(out)

    def _expand_letter(self, g: Gen) -> NCPoly:
        cached = self._expand_cache.get(g)
        if cached is not None:
            return cached
        if g.fam in ("e", "f"):
            p = self._pbw.expand(g.fam, (g.i, g.j))
        elif g.fam == "h":
            p = NCPoly.term((Gen("a_inv", g.i), Gen("b", g.i)), self.field.one)
        else:
            p = NCPoly.term((g,), self.field.one)
        self._expand_cache[g] = p
        return p

    def counit_word(self, w: Word):
        f = self.field
        for g in w:
            if g.fam in ("e", "f"):
                return f.zero
        return f.one

    def counit(self, p: NCPoly):
        out = self.field.zero
        for w, c in p.terms.items():
            out = out + c * self.counit_word(w)
        return out

    def w_word(self, j: int) -> Word:
        """w_j = a_j b_(j+1) in the session's torus letters."""
        if self.variant in ("U", "Ul", "u"):
            return (Gen("a", j), Gen("b", j + 1))
        na, nb = self.spec.n_alpha, self.spec.n_beta
        return (Gen("h", j),) * na + (Gen("h", j + 1),) * nb

    def wp_word(self, j: int) -> Word:
        """w'_j = a_(j+1) b_j."""
        if self.variant in ("U", "Ul", "u"):
            return (Gen("a", j + 1), Gen("b", j))
        na, nb = self.spec.n_alpha, self.spec.n_beta
        return (Gen("h", j + 1),) * na + (Gen("h", j),) * nb

    def _letter_coproduct(self, g: Gen) -> list[tuple[Word, Word, object]]:
        f = self.field
        if g.fam in ("a", "a_inv", "b", "b_inv", "h", "h_inv"):
            return [((g,), (g,), f.one)]
        if g.fam == "e" and g.i == g.j:
            return [((g,), (), f.one), (self.w_word(g.i), (g,), f.one)]
        if g.fam == "f" and g.i == g.j:
            return [((), (g,), f.one), ((g,), self.wp_word(g.i), f.one)]
        raise ValueError("coproduct on root letters goes through expand_to_U")

    def coproduct_word(self, w: Word) -> dict[tuple[Word, Word], object]:
        cached = self._cop_cache.get(w)
        if cached is not None:
            return cached
        f = self.field
        acc = {((), ()): f.one}
        for g in w:
            pairs = self._letter_coproduct(g)
            nxt: dict[tuple[Word, Word], object] = {}
            for (w1, w2), c in acc.items():
                for (p1, p2, pc) in pairs:
                    for nw1, c1 in self.rs.reduce_word(w1 + p1).items():
                        for nw2, c2 in self.rs.reduce_word(w2 + p2).items():
                            key = (nw1, nw2)
                            add = c * pc * c1 * c2
                            v = nxt.get(key)
                            v = add if v is None else v + add
                            if v:
                                nxt[key] = v
                            else:
                                nxt.pop(key, None)
            acc = nxt
        self._cop_cache[w] = acc
        return acc


@lru_cache(maxsize=None)
def u_session(variant: str, n: int, spec: ParameterSpec,
              I_plus: tuple = None, I_minus: tuple = None) -> USession:
    return USession(variant, n, spec, I_plus, I_minus)


# ---------------------------------------------------------------------------
# root vectors and PBW tables
# ---------------------------------------------------------------------------

def root_vector_expand(session: USession, sign: str, k: int, l: int) -> NCPoly:
    """E_kl or F_kl, fully expanded in the e/f letters and reduced."""
    amb = session if session.variant in ("U", "Ul") else session.ambient
    return _expand_root(amb, "e" if sign.upper() == "E" else "f", k, l)


def _expand_root(amb: USession, sign: str, k: int, l: int) -> NCPoly:
    if not 1 <= l <= k < amb.n:
        raise ValueError(f"root vector indices out of range: ({k},{l}) for n={amb.n}")
    f = amb.field
    cache = getattr(amb, "_root_cache", None)
    if cache is None:
        cache = amb._root_cache = {}
    key = (sign, k, l)
    if key in cache:
        return cache[key]
    if k == l:
        out = NCPoly.term((Gen(sign, k, k),), f.one)
    else:
        # E_kl = e_k E_(k-1)l - al^-1 E_(k-1)l e_k; F twists by be^-1
        prev = _expand_root(amb, sign, k - 1, l)
        top = NCPoly.term((Gen(sign, k, k),), f.one)
        tw = f.ab(-1, 0) if sign == "e" else f.ab(0, -1)
        out = amb.reduce(top * prev - (prev * top).scaled(tw))
    cache[key] = out
    return out


class _PbwTables:
    """Coordinates of irreducible e-/f-words in the ordered root monomials."""

    def __init__(self, amb: USession):
        self.amb = amb
        if not hasattr(amb, "_pbw_solved"):
            amb._pbw_solved = {"e": {}, "f": {}}
            amb._pbw_monos = {"e": {}, "f": {}}

    def expand(self, sign: str, root: tuple[int, int]) -> NCPoly:
        return _expand_root(self.amb, sign, root[0], root[1])

    def monomials(self, sign: str, d: int) -> list[tuple]:
        """Ascending products of roots with total size d (size = k-l+1)."""
        store = self.amb._pbw_monos[sign]
        if d in store:
            return store[d]
        roots = sorted((k, l) for l in range(1, self.amb.n)
                       for k in range(l, self.amb.n))

        def rec(prefix, remaining, minidx):
            if remaining == 0:
                yield tuple(prefix)
                return
            for idx in range(minidx, len(roots)):
                r = roots[idx]
                size = r[0] - r[1] + 1
                if size <= remaining:
                    prefix.append(r)
                    yield from rec(prefix, remaining - size, idx)
                    prefix.pop()

        out = list(rec([], d, 0))
        store[d] = out
        return out

    def mono_expand(self, sign: str, mono: tuple) -> NCPoly:
        p = NCPoly.term((), self.amb.field.one)
        for r in mono:
            p = self.amb.reduce(p * self.expand(sign, r))
        return p

    def coords(self, sign: str, word: Word) -> dict[tuple, object]:
        """Write an irreducible e-/f-word as a combination of PBW monomials."""
        if not word:
            return {(): self.amb.field.one}
        solved = self.amb._pbw_solved[sign]
        if word in solved:
            return solved[word]
        d = len(word)
        monos = self.monomials(sign, d)
        expans = [self.mono_expand(sign, m) for m in monos]
        support = sorted({w for p in expans for w in p.terms} | {word})
        zero = self.amb.field.zero
        rows = [[p.terms.get(w, zero) for p in expans] for w in support]
        rhs = [self.amb.field.one if w == word else zero for w in support]
        sol = exactlinalg.solve_unique(rows, rhs, self.amb.field.one)
        out = {m: c for m, c in zip(monos, sol) if c}
        solved[word] = out
        return out


# ---------------------------------------------------------------------------
# Hopf structure and checks
# ---------------------------------------------------------------------------

def coproduct_U(session: USession, p: NCPoly) -> TensorElement:
    if session.variant in ("U", "Ul"):
        data: dict = {}
        for w, c in p.terms.items():
            for (w1, w2), c2 in session.coproduct_word(w).items():
                key = ((0, w1), (0, w2))
                v = data.get(key)
                add = c * c2
                v = add if v is None else v + add
                if v:
                    data[key] = v
                else:
                    data.pop(key, None)
        return TensorElement(session, session, data)
    amb = session.ambient
    lifted = session.expand_to_U(p)
    data = {}
    for w, c in lifted.terms.items():
        for (w1, w2), c2 in amb.coproduct_word(w).items():
            p1 = session._from_U(NCPoly.term(w1, session.field.one))
            p2 = session._from_U(NCPoly.term(w2, session.field.one))
            for u1, c3 in p1.terms.items():
                for u2, c4 in p2.terms.items():
                    key = ((0, u1), (0, u2))
                    add = c * c2 * c3 * c4
                    v = data.get(key)
                    v = add if v is None else v + add
                    if v:
                        data[key] = v
                    else:
                        data.pop(key, None)
    return TensorElement(session, session, data)


def antipode_U(session: USession, p: NCPoly) -> NCPoly:
    """Antialgebra extension of the derived antipode.

    The defining article leaves S implicit; the values are forced by the
    Hopf axioms on skew-primitives: S(a) = a^-1, S(e_j) = -w_j^-1 e_j,
    S(f_j) = -f_j w'_j^-1.  The axioms are verified in the test suite
    rather than assumed.
    """
    if session.variant not in ("U", "Ul"):
        raise ValueError("antipode implemented on the infinite presentation")
    f = session.field
    flip = {"a": "a_inv", "a_inv": "a", "b": "b_inv", "b_inv": "b"}

    def s_letter(g: Gen) -> NCPoly:
        if g.fam in flip:
            return NCPoly.term((Gen(flip[g.fam], g.i),), f.one)
        if g.fam == "e":
            j = g.i
            w = (Gen("a_inv", j), Gen("b_inv", j + 1), g)
            return NCPoly.term(w, -f.one)
        if g.fam == "f":
            j = g.i
            w = (g, Gen("a_inv", j + 1), Gen("b_inv", j))
            return NCPoly.term(w, -f.one)
        raise ValueError(f"no antipode letter for {g}")

    out = NCPoly.zero()
    for w, c in p.terms.items():
        acc = NCPoly.term((), f.one)
        for g in reversed(w):
            acc = acc * s_letter(g)
        out = out + acc.scaled(c)
    return session.reduce(out)


def comult_root_check(session: USession, k: int, l: int) -> bool:
    """Closed form of Delta(E_kl) against the direct algebra-map expansion:
    E_kl (x) 1 + w_k...w_l (x) E_kl + (1 - al^-1 be) *
    sum_j E_(k,j+1) w_j...w_l (x) E_jl."""
    amb = session if session.variant in ("U", "Ul") else session.ambient
    f = amb.field
    E = _expand_root(amb, "e", k, l)
    direct = coproduct_U(amb, E).data

    def wword(a, b):
        w: tuple = ()
        for s in range(a, b - 1, -1):
            w += amb.w_word(s)
        return w

    zeta = f.one - f.q()
    closed: dict = {}

    def accumulate(left: NCPoly, right: NCPoly, coeff):
        for w1, c1 in amb.reduce(left).terms.items():
            for w2, c2 in amb.reduce(right).terms.items():
                key = ((0, w1), (0, w2))
                add = coeff * c1 * c2
                v = closed.get(key)
                v = add if v is None else v + add
                if v:
                    closed[key] = v
                else:
                    closed.pop(key, None)

    one = NCPoly.term((), f.one)
    accumulate(E, one, f.one)
    accumulate(NCPoly.term(wword(k, l), f.one), E, f.one)
    for j in range(l, k):
        left = _expand_root(amb, "e", k, j + 1) * NCPoly.term(wword(j, l), f.one)
        accumulate(left, _expand_root(amb, "e", j, l), zeta)
    return direct == closed


def ws_relation_check(session: USession, s: int, k: int, l: int) -> dict:
    """Scalar commutation of w_s past E_kl, computed by reduction.

    Returns the computed eigenvalue, whether E_kl is in fact a torus
    eigenvector, and whether the printed exponents alpha^[l<=s<=k]
    beta^[l<=s+1<=k] of the source agree with the computation (they need
    not: the presentation forces alpha^(d_sl - d_s,k+1) beta^(d_s+1,l -
    d_s+1,k+1)).
    """
    amb = session if session.variant in ("U", "Ul") else session.ambient
    f = amb.field
    E = _expand_root(amb, "e", k, l)
    w = NCPoly.term((Gen("a", s), Gen("b", s + 1)), f.one)
    lhs = amb.reduce(w * E)
    rhs = amb.reduce(E * w)
    scalar = None
    if set(lhs.terms) == set(rhs.terms) and rhs.terms:
        wd = next(iter(rhs.terms))
        cand = lhs.terms[wd] / rhs.terms[wd]
        if lhs == rhs.scaled(cand):
            scalar = cand
    printed = f.ab(1 if l <= s <= k else 0, 1 if l <= s + 1 <= k else 0)
    derived = f.ab((1 if s == l else 0) - (1 if s == k + 1 else 0), 0) * \
        f.ab(0, (1 if s + 1 == l else 0) - (1 if s + 1 == k + 1 else 0))
    return {"holds": scalar is not None, "scalar": scalar,
            "matches_printed_formula": scalar == printed,
            "matches_derived_formula": scalar == derived}


def central_check(session: USession, candidate: NCPoly):
    """Reduce [candidate, g] for every generator; True iff all vanish."""
    for g in session.rs.letters:
        x = NCPoly.term((g,), session.field.one)
        r = session.reduce(candidate * x - x * candidate)
        if r:
            return False, (g, r)
    return True, None


def finite_basis(session: USession):
    """(dimension, iterator of PBW words) for u / uhat / uhatl."""
    if session.variant not in ("u", "uhat", "uhatl"):
        raise ValueError("finite_basis needs a finite variant")
    ell = session.spec.ell
    nletters = len(session.rs.letters)
    dim = ell ** nletters

    def words():
        letters = session.rs.letters
        for exps in itertools.product(range(ell), repeat=nletters):
            word = []
            for g, e in zip(letters, exps):
                word += [g] * e
            yield tuple(word)

    return dim, words()


def coproduct_ell_power_check(session: USession, k: int, power: int | None = None,
                              use_f: bool = False) -> bool:
    """Delta(e_k)^m two-term collapse at m = ell (negative control: m != ell)."""
    if not session.spec.is_root:
        raise ValueError("root mode required")
    amb = session if session.variant in ("U", "Ul") else session.ambient
    m = power if power is not None else session.spec.ell
    f = amb.field

    def tmul(t1: dict, t2: dict) -> dict:
        out: dict = {}
        for (a1, b1), c1 in t1.items():
            for (a2, b2), c2 in t2.items():
                for w1, d1 in amb.rs.reduce_word(a1 + a2).items():
                    for w2, d2 in amb.rs.reduce_word(b1 + b2).items():
                        key = (w1, w2)
                        add = c1 * c2 * d1 * d2
                        v = out.get(key)
                        v = add if v is None else v + add
                        if v:
                            out[key] = v
                        else:
                            out.pop(key, None)
        return out

    if use_f:
        fk = (Gen("f", k, k),)
        delta = {((), fk): f.one, (fk, amb.wp_word(k)): f.one}
    else:
        ek = (Gen("e", k, k),)
        delta = {(ek, ()): f.one, (amb.w_word(k), ek): f.one}
    acc = {((), ()): f.one}
    for _ in range(m):
        acc = tmul(acc, delta)
    if use_f:
        want = {}
        for w2, c2 in amb.rs.reduce_word(fk * m).items():
            want[((), w2)] = c2
        for w1, c1 in amb.rs.reduce_word(fk * m).items():
            for w2, c2 in amb.rs.reduce_word(amb.wp_word(k) * m).items():
                key = (w1, w2)
                want[key] = want.get(key, f.zero) + c1 * c2
        want = {k2: v for k2, v in want.items() if v}
    else:
        want = {}
        for w1, c1 in amb.rs.reduce_word(ek * m).items():
            want[(w1, ())] = c1
        for w1, c1 in amb.rs.reduce_word(amb.w_word(k) * m).items():
            for w2, c2 in amb.rs.reduce_word(ek * m).items():
                key = (w1, w2)
                want[key] = want.get(key, f.zero) + c1 * c2
        want = {k2: v for k2, v in want.items() if v}
    return acc == want
