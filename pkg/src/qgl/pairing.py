"""The Hopf pairing between the enveloping side and the coordinate side.

Evaluation strategy: the U-side word is peeled one letter at a time; each
step splits the O-side word with a single coproduct (memoized per word,
legs reduced) and pairs the leading U letter against the left leg via its
primitive/group-like structure.  Values are exact scalars of the common
parameter spec.  Gram matrices are eliminated fraction-free.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

from . import exactlinalg
from .ncpoly import Gen, NCPoly, Word
from .oab import GLElement, OSession
from .uab import USession, antipode_U, u_session


class PairingContext:
    """A U-side session paired against an O-side session.

    The generator table is the standard one: <a_i, x_st> = d_st al^(d_is),
    <b_i, x_st> = d_st be^(d_is), <e_j, x_st> = d_js d_(j+1)t,
    <f_j, x_st> = d_(j+1)s d_jt; h_i pairs as the group-like a_i^-1 b_i.
    """

    def __init__(self, u_sess: USession, o_sess: OSession):
        if u_sess.spec != o_sess.spec:
            raise ValueError("pairing requires matching parameter specs")
        self.u = u_sess
        self.o = o_sess
        self.field = o_sess.field
        self._memo: dict[tuple[Word, Word], object] = {}

    # -- generator-level table -------------------------------------------------

    def _grouplike_value(self, g: Gen, xi: int, xj: int):
        """<g, x_ij> for a group-like torus letter g; zero off the diagonal."""
        f = self.field
        if xi != xj:
            return f.zero
        d = 1 if g.i == xi else 0
        if g.fam == "a":
            return f.ab(d, 0)
        if g.fam == "a_inv":
            return f.ab(-d, 0)
        if g.fam == "b":
            return f.ab(0, d)
        if g.fam == "b_inv":
            return f.ab(0, -d)
        if g.fam == "h":
            return f.q(d)
        if g.fam == "h_inv":
            return f.q(-d)
        raise ValueError(f"not a torus letter: {g}")

    def _grouplike_word_value(self, w: Word, xi: int, xj: int):
        """<w, x_ij> for a word of torus letters."""
        f = self.field
        if xi != xj:
            return f.zero
        out = f.one
        for g in w:
            out = out * self._grouplike_value(g, xi, xj)
        return out

    def _pair_letter(self, g: Gen, x: Word):
        """<g, x> for a single U letter against an O word."""
        f = self.field
        if g.fam in ("a", "a_inv", "b", "b_inv", "h", "h_inv"):
            out = f.one
            for xg in x:
                out = out * self._grouplike_value(g, xg.i, xg.j)
                if not out:
                    return out
            return out
        if g.fam == "e" and g.i == g.j:
            j = g.i
            w = self.u.w_word(j)
            total = f.zero
            for p, xg in enumerate(x):
                if xg.i == j and xg.j == j + 1:
                    term = f.one
                    for r in range(p):
                        term = term * self._grouplike_word_value(w, x[r].i, x[r].j)
                        if not term:
                            break
                    else:
                        for r in range(p + 1, len(x)):
                            if x[r].i != x[r].j:
                                term = f.zero
                                break
                    if term:
                        total = total + term
            return total
        if g.fam == "f" and g.i == g.j:
            j = g.i
            wp = self.u.wp_word(j)
            total = f.zero
            for p, xg in enumerate(x):
                if xg.i == j + 1 and xg.j == j:
                    term = f.one
                    for r in range(p):
                        if x[r].i != x[r].j:
                            term = f.zero
                            break
                    if term:
                        for r in range(p + 1, len(x)):
                            term = term * self._grouplike_word_value(wp, x[r].i, x[r].j)
                            if not term:
                                break
                    if term:
                        total = total + term
            return total
        raise ValueError(f"root letter {g} must be expanded before pairing")

    # -- words and polynomials ---------------------------------------------------

    def pair_words(self, u: Word, x: Word):
        f = self.field
        if not u:
            return self.o.counit_word(x)
        if not x:
            return self.u.counit_word(u)
        key = (u, x)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if len(u) == 1:
            out = self._pair_letter(u[0], x)
        else:
            head, rest = u[0], u[1:]
            out = f.zero
            for (x1, x2), c in self.o.coproduct_word(x).items():
                v = self._pair_letter(head, x1)
                if v:
                    out = out + c * v * self.pair_words(rest, x2)
        self._memo[key] = out
        return out

    def pair(self, u: NCPoly, x) -> object:
        """<u, x> for a U element and an O element (GLElement or NCPoly)."""
        f = self.field
        uexp = self.u.expand_to_U(u) if self.u.variant not in ("U", "Ul") else u
        amb = self.u if self.u.variant in ("U", "Ul") else self.u.ambient
        if isinstance(x, GLElement):
            t, poly = x.t, x.poly
        else:
            t, poly = 0, x
        out = f.zero
        for uw, uc in uexp.terms.items():
            if t == 0:
                for xw, xc in poly.terms.items():
                    out = out + uc * xc * self.pair_words(uw, xw)
            else:
                # <u, g^-t p> = sum <u_(1), g^-t> <u_(2), p>
                for (u1, u2), c in amb.coproduct_word(uw).items():
                    gv = self._pair_ginv_power(u1, t, amb)
                    if not gv:
                        continue
                    for xw, xc in poly.terms.items():
                        out = out + uc * c * gv * xc * self.pair_words(u2, xw)
        return out

    def _pair_ginv_power(self, u: Word, t: int, amb: USession):
        """<u, g^-t> via <v, g^-1> = <S(v), g>."""
        f = self.field
        if t == 0:
            return amb.counit_word(u)
        if t == 1:
            su = antipode_U(amb, NCPoly.term(u, f.one))
            det = self.o.det
            out = f.zero
            for uw, uc in su.terms.items():
                for xw, xc in det.terms.items():
                    out = out + uc * xc * self.pair_words(uw, xw)
            return out
        out = f.zero
        for (u1, u2), c in amb.coproduct_word(u).items():
            v = self._pair_ginv_power(u1, 1, amb)
            if v:
                out = out + c * v * self._pair_ginv_power(u2, t - 1, amb)
        return out


def pairing_welldefined_check(ctx: PairingContext, degree_bound: int) -> list:
    """Pair every defining relation of one side against all irreducible
    words of the other side up to the degree bound; all values must vanish.

    The g^-1 commutation rules of a GL session are excluded: on the
    localization the pairing against g^-1 is defined through the antipode,
    so those rules are definitional rather than checkable identities of the
    free pairing recursion.
    """
    failures = []
    o_words = [w for w in ctx.o.rs.irreducible_words(max_weight=degree_bound)
               if not any(g.fam == "g_inv" for g in w)]
    for k, r in enumerate(ctx.u.relations):
        for w in o_words:
            val = ctx.pair(r, NCPoly.term(w, ctx.field.one))
            if val:
                failures.append(("U-relation", k, w, val))
    u_words = list(ctx.u.rs.irreducible_words(max_weight=degree_bound,
                                              max_len=degree_bound))
    for k, r in enumerate(ctx.o.relations):
        if any(g.fam == "g_inv" for word in r.terms for g in word):
            continue
        for w in u_words:
            val = ctx.pair(NCPoly.term(w, ctx.field.one), r)
            if val:
                failures.append(("O-relation", k, w, val))
    return failures


def radical_check(ctx: PairingContext, side: str, candidate: NCPoly,
                  words=None) -> tuple[bool, list]:
    """Zero pairing of a candidate radical element against test words.

    side = "right": candidate is an O element, tested against U words;
    side = "left": candidate is a U element, tested against O words.
    """
    bad = []
    if side == "right":
        if words is None:
            words = [(g,) for g in ctx.u.rs.letters]
        for w in words:
            val = ctx.pair(NCPoly.term(tuple(w), ctx.field.one), candidate)
            if val:
                bad.append((w, val))
    elif side == "left":
        if words is None:
            words = [(g,) for g in ctx.o.rs.letters if g.fam != "g_inv"]
        for w in words:
            val = ctx.pair(candidate, NCPoly.term(tuple(w), ctx.field.one))
            if val:
                bad.append((w, val))
    else:
        raise ValueError("side must be 'left' or 'right'")
    return (not bad), bad


def gram_matrix(ctx: PairingContext, u_words: list[Word], o_words: list[Word],
                entry_cap: int = 10_000) -> list[list]:
    """Exact matrix <u_i, gamma-lift of o_j>; rows indexed by U words."""
    if len(u_words) * len(o_words) > entry_cap:
        raise ValueError(
            f"gram matrix has {len(u_words) * len(o_words)} entries; cap is {entry_cap}")
    one = ctx.field.one
    threads = int(os.environ.get("QGL_THREADS", "1") or "1")

    def row(uw: Word):
        up = NCPoly.term(uw, one)
        return [ctx.pair(up, NCPoly.term(ow, one)) for ow in o_words]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            return list(ex.map(row, u_words))
    return [row(uw) for uw in u_words]


def gram_rank(matrix: list[list], one) -> int:
    return exactlinalg.rank(matrix, one)


# ---------------------------------------------------------------------------
# the diagonal-pairing structure of the upper-triangular quotients
# ---------------------------------------------------------------------------

def _em_word(u_sess: USession, M: dict[tuple[int, int], int]) -> NCPoly:
    """E^M = E^(M_n) ... E^(M_1) with E^(M_i) = E_(n-1,i)^M[i,n] ... E_(i,i)^M[i,i+1].

    M is a strictly upper exponent table {(i, j): m}; the root E_(k,i)
    carries the exponent at position (i, k+1).
    """
    amb = u_sess if u_sess.variant in ("U", "Ul") else u_sess.ambient
    n = amb.n
    out = NCPoly.term((), amb.field.one)
    from .uab import _expand_root
    for i in range(n, 0, -1):
        for k in range(n - 1, i - 1, -1):
            m = M.get((i, k + 1), 0)
            for _ in range(m):
                out = amb.reduce(out * _expand_root(amb, "e", k, i))
    return out


def _xn_word(o_sess: OSession, N: dict[tuple[int, int], int]) -> Word:
    """x^N = x^(N_1) ... x^(N_n) with x^(N_i) = x_ii^N[i,i] ... x_in^N[i,n]."""
    w: list[Gen] = []
    n = o_sess.n
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            w += [o_sess.gen(i, j)] * N.get((i, j), 0)
    return tuple(w)


def em_xn_tables(n: int, ell: int, spec) -> list[dict]:
    """All strictly upper exponent tables with entries in [0, ell)."""
    import itertools
    positions = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out = []
    for exps in itertools.product(range(ell), repeat=len(positions)):
        out.append(dict(zip(positions, exps)))
    return out


def em_xn_diagonal_check(n: int, spec, entry_cap: int = 10_000) -> dict:
    """Pairing matrix <E^M, x^N> over strictly upper exponent tables.

    Returns the off-diagonal-zero / diagonal-nonzero verdicts together with
    the list of diagonal values.
    """
    ell = spec.ell
    uh = u_session("uhat", n, spec)
    kp = OSession("Kplus", n, spec)
    ctx = PairingContext(uh, kp)
    tables = em_xn_tables(n, ell, spec)
    if len(tables) ** 2 > entry_cap:
        raise ValueError(f"{len(tables) ** 2} entries exceed the cap {entry_cap}")
    ems = [ctx.u.ambient.reduce(_em_word(uh, M)) for M in tables]
    xns = [_xn_word(kp, N) for N in tables]
    off_ok = True
    diag = []
    witness = None
    one = ctx.field.one
    for a, em in enumerate(ems):
        for b, xn in enumerate(xns):
            val = ctx.field.zero
            for w, c in em.terms.items():
                val = val + c * ctx.pair_words(w, xn)
            if a == b:
                diag.append(val)
            elif val and off_ok:
                off_ok = False
                witness = (tables[a], tables[b], val)
    diag_ok = all(bool(v) for v in diag)
    return {"off_diagonal_zero": off_ok, "diagonal_nonzero": diag_ok,
            "diagonal": diag, "witness": witness, "size": len(tables)}


def em_xn_closed_form_check(n: int, spec, rmax: int, smax: int) -> bool:
    """Part (i): <E_(n-1,1)^r, x_1n^s> = d_rs be^(r(r-1)/2) <E_(n-1,1), x_1n>^r
    prod_j geometric_sum(r - j, al^2), against brute-force pairing."""
    from .scalars import geometric_sum
    uh = u_session("uhat", n, spec)
    kp = OSession("Kplus", n, spec)
    ctx = PairingContext(uh, kp)
    amb = uh.ambient
    from .uab import _expand_root
    E = _expand_root(amb, "e", n - 1, 1)
    f = ctx.field
    base = f.zero
    for w, c in E.terms.items():
        base = base + c * ctx.pair_words(w, (kp.gen(1, n),))
    for r in range(rmax + 1):
        Er = amb.reduce(NCPoly.term((), f.one) if r == 0 else _power(amb, E, r))
        for s in range(smax + 1):
            xn = ((kp.gen(1, n),) * s)
            val = f.zero
            for w, c in Er.terms.items():
                val = val + c * ctx.pair_words(w, xn)
            if r == s:
                expect = f.ab(0, r * (r - 1) // 2) * base ** r
                for j in range(r):
                    expect = expect * geometric_sum(r - j, f.ab(2, 0))
            else:
                expect = f.zero
            if val != expect:
                return False
    return True


def _power(session, p: NCPoly, k: int) -> NCPoly:
    out = NCPoly.term((), session.field.one)
    for _ in range(k):
        out = session.reduce(out * p)
    return out
