"""Command-line front end: expression parsing, session configuration, JSON
emission, and the named verification suites.

Exit codes: 0 success, 2 validation/parse error, 3 computation error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import exactlinalg, oab, pairing, subgroup, uab
from .ncpoly import Gen, NCPoly, TensorElement, format_word
from .oab import GLElement, OSession
from .scalars import ParameterSpec, scalar_to_json
from .uab import USession, u_session


class ParseError(ValueError):
    pass


O_VARIANTS = {"Mn", "GLn", "Bplus", "Bminus", "Hbar", "Kplus", "Kminus"}
U_VARIANTS = {"U", "u", "uhat", "Ul", "uhatl"}


# ---------------------------------------------------------------------------
# expression grammar
# ---------------------------------------------------------------------------

_LETTER_FAMS = {
    "x": "x", "xb": "xbar", "xh": "xhat", "a": "a", "ai": "a_inv",
    "b": "b", "bi": "b_inv", "h": "h", "hi": "h_inv",
    "e": "e", "f": "f", "E": "e", "F": "f",
}

_INV_FAM = {"a": "a_inv", "b": "b_inv", "h": "h_inv",
            "a_inv": "a", "b_inv": "b", "h_inv": "h"}


def _tokenize(src: str):
    tokens = []
    i = 0
    while i < len(src):
        c = src[i]
        if c.isspace():
            i += 1
            continue
        if c in "+-*/^()[],":
            tokens.append((c, c))
            i += 1
            continue
        if c.isdigit():
            j = i
            while j < len(src) and src[j].isdigit():
                j += 1
            tokens.append(("int", int(src[i:j])))
            i = j
            continue
        if c.isalpha():
            j = i
            while j < len(src) and (src[j].isalnum() or src[j] == "_"):
                j += 1
            tokens.append(("name", src[i:j]))
            i = j
            continue
        raise ParseError(f"unexpected character {c!r} in expression")
    tokens.append(("end", None))
    return tokens


class _ExprParser:
    """Recursive-descent parser producing an NCPoly over a session."""

    def __init__(self, session, text: str):
        self.session = session
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos][0]

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, got {tok[0]!r}")
        return tok

    def parse(self) -> NCPoly:
        p = self.expr()
        if self.peek() != "end":
            raise ParseError(f"trailing input near token {self.tokens[self.pos]}")
        return p

    def expr(self) -> NCPoly:
        out = self.term()
        while self.peek() in "+-":
            op = self.next()[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def term(self) -> NCPoly:
        out = self.factor()
        while True:
            k = self.peek()
            if k == "*":
                self.next()
                out = out * self.factor()
            elif k == "/":
                self.next()
                d = self.factor()
                if list(d.terms.keys()) != [()]:
                    raise ParseError("division only by scalars")
                out = out.scaled(self.session.field.one / d.terms[()])
            elif k in ("name", "int", "("):
                out = out * self.factor()
            else:
                return out

    def factor(self) -> NCPoly:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            sign = 1
            if self.peek() == "-":
                self.next()
                sign = -1
            k = sign * self.expect("int")[1]
            return self._power(base, k)
        return base

    def _power(self, base: NCPoly, k: int) -> NCPoly:
        f = self.session.field
        if k >= 0:
            out = NCPoly.term((), f.one)
            for _ in range(k):
                out = out * base
            return out
        # negative powers: single scalar or a single invertible letter
        if list(base.terms.keys()) == [()]:
            return NCPoly.term((), (f.one / base.terms[()]) ** (-k))
        if len(base.terms) == 1:
            (w, c), = base.terms.items()
            if len(w) == 1:
                g = w[0]
                inv_word = None
                if g.fam in _INV_FAM and Gen(_INV_FAM[g.fam], g.i, g.j) in self.session.rs.rank:
                    inv_word = (Gen(_INV_FAM[g.fam], g.i, g.j),)
                elif self._letter_has_ell_order(g):
                    inv_word = (g,) * (self.session.spec.ell - 1)
                if inv_word is not None:
                    return NCPoly.term(inv_word * (-k), (f.one / c) ** (-k))
        raise ParseError("negative powers only for scalars and invertible letters")

    def _letter_has_ell_order(self, g: Gen) -> bool:
        s = self.session
        if not s.spec.is_root:
            return False
        if isinstance(s, USession):
            return s.variant in ("u", "uhat", "uhatl") and \
                g.fam in ("a", "b", "h")
        return s.variant in ("Hbar", "Kplus", "Kminus") and g.i == g.j

    def atom(self) -> NCPoly:
        f = self.session.field
        kind, val = self.next()
        if kind == "int":
            return NCPoly.term((), f.from_int(val))
        if kind == "(":
            p = self.expr()
            self.expect(")")
            return p
        if kind == "-":
            return -self.atom()
        if kind != "name":
            raise ParseError(f"unexpected token {kind!r}")
        if val == "al":
            return NCPoly.term((), f.alpha())
        if val == "be":
            return NCPoly.term((), f.beta())
        if val == "q":
            return NCPoly.term((), f.q())
        if val in ("z", "zeta"):
            return NCPoly.term((), f.zeta())
        if val == "gi":
            return NCPoly.term((Gen("g_inv"),), f.one)
        if val in _LETTER_FAMS:
            fam = _LETTER_FAMS[val]
            self.expect("[")
            i = self.expect("int")[1]
            j = None
            if self.peek() == ",":
                self.next()
                j = self.expect("int")[1]
            self.expect("]")
            return self._symbol(fam, i, j, val)
        raise ParseError(f"unknown symbol {val!r}")

    def _symbol(self, fam: str, i: int, j: int | None, token: str) -> NCPoly:
        s = self.session
        f = s.field
        if fam in ("x", "xbar", "xhat"):
            if j is None:
                raise ParseError(f"{token} needs two indices")
            if not isinstance(s, OSession):
                raise ParseError(f"{token} is a coordinate-side symbol")
            return NCPoly.term((s.gen(i, j),), f.one)
        if not isinstance(s, USession):
            raise ParseError(f"{token} is an enveloping-side symbol")
        if fam in ("e", "f"):
            k, l = (i, j if j is not None else i) if token in ("E", "F") else (i, i)
            if token in ("e", "f"):
                k = l = i
            g = Gen(fam, k, l)
            if g in s.rs.rank:
                return NCPoly.term((g,), f.one)
            if s.variant in ("U", "Ul"):
                return uab.root_vector_expand(s, fam, k, l)
            raise ParseError(f"{token}[{k},{l}] is not a generator of this session")
        # torus symbols, possibly rewritten per variant
        if s.variant in ("U", "Ul"):
            if fam == "h":
                return NCPoly.term((Gen("a_inv", i), Gen("b", i)), f.one)
            if fam == "h_inv":
                return NCPoly.term((Gen("a", i), Gen("b_inv", i)), f.one)
            return NCPoly.term((Gen(fam, i),), f.one)
        ell = s.spec.ell
        na, nb = s.spec.n_alpha, s.spec.n_beta
        if s.variant == "u":
            word = {"a": (Gen("a", i),), "b": (Gen("b", i),),
                    "a_inv": (Gen("a", i),) * (ell - 1),
                    "b_inv": (Gen("b", i),) * (ell - 1)}.get(fam)
            if word is None:
                raise ParseError(f"{token} is not available in variant u")
            return NCPoly.term(word, f.one)
        table = {"h": 1, "h_inv": ell - 1, "a": na, "a_inv": (ell - na) % ell,
                 "b": nb, "b_inv": (ell - nb) % ell}
        return NCPoly.term((Gen("h", i),) * table[fam], f.one)


def parse_expr(session, text: str) -> NCPoly:
    return _ExprParser(session, text).parse()


# ---------------------------------------------------------------------------
# JSON emission
# ---------------------------------------------------------------------------

def poly_to_json(p: NCPoly, gpow: int = 0) -> dict:
    terms = []
    for w in sorted(p.terms, key=lambda w: (len(w), w)):
        terms.append({"coeff": scalar_to_json(p.terms[w]),
                      "word": [format_word((g,)) for g in w]})
    out = {"terms": terms}
    if gpow:
        out["gpow"] = gpow
    return out


def poly_from_json(session, obj: dict) -> NCPoly:
    out = NCPoly.zero()
    from .scalars import scalar_from_json
    for t in obj["terms"]:
        word = ()
        for tok in t["word"]:
            word += next(iter(parse_expr(session, tok).terms))
        out = out + NCPoly.term(word, scalar_from_json(t["coeff"]))
    return out


def tensor_to_json(t: TensorElement) -> dict:
    out = []
    for (kl, kr) in sorted(t.data, key=lambda k: (len(k[0][1]), len(k[1][1]), k)):
        out.append({
            "coeff": scalar_to_json(t.data[(kl, kr)]),
            "left": {"gpow": kl[0], "word": [format_word((g,)) for g in kl[1]]},
            "right": {"gpow": kr[0], "word": [format_word((g,)) for g in kr[1]]},
        })
    return {"tensor": out}


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------

@dataclass
class CheckResult:
    check_id: str
    status: str
    witness: str = ""
    seconds: float = 0.0


@dataclass
class SuiteReport:
    name: str
    entries: list[CheckResult] = dc_field(default_factory=list)

    def add(self, check_id: str, ok: bool, witness: str = "", seconds: float = 0.0):
        self.entries.append(CheckResult(check_id, "pass" if ok else "fail",
                                        witness, seconds))

    @property
    def ok(self) -> bool:
        return all(e.status == "pass" for e in self.entries)

    def to_json(self) -> dict:
        return {"suite": self.name,
                "entries": [{"id": e.check_id, "status": e.status,
                             "witness": e.witness, "seconds": round(e.seconds, 3)}
                            for e in sorted(self.entries, key=lambda e: e.check_id)]}

    def format_text(self) -> str:
        lines = [f"suite {self.name}: {'PASS' if self.ok else 'FAIL'}"]
        for e in sorted(self.entries, key=lambda e: e.check_id):
            w = f"  [{e.witness}]" if e.witness and e.status == "fail" else ""
            lines.append(f"  {e.status.upper():4} {e.check_id} ({e.seconds:.2f}s){w}")
        return "\n".join(lines)


def _timed(report, check_id, fn):
    t0 = time.time()
    try:
        ok, witness = fn()
    except Exception as exc:  # a crashed check is a failing check
        ok, witness = False, f"{type(exc).__name__}: {exc}"
    report.add(check_id, ok, witness, time.time() - t0)


def suite_hopf_axioms(n: int, spec: ParameterSpec) -> SuiteReport:
    rep = SuiteReport("hopf-axioms")
    for nn in range(1, n + 1):
        gl = oab.session("GLn", nn, spec)
        _timed(rep, f"O.coassoc.n{nn}", lambda gl=gl: (o_coassoc(gl), ""))
        _timed(rep, f"O.counit.n{nn}", lambda gl=gl: (o_counit(gl), ""))
        _timed(rep, f"O.antipode.n{nn}", lambda gl=gl: (o_antipode(gl), ""))
        U = u_session("U", nn, spec)
        _timed(rep, f"U.coassoc.n{nn}", lambda U=U: (u_coassoc(U), ""))
        _timed(rep, f"U.counit.n{nn}", lambda U=U: (u_counit(U), ""))
        _timed(rep, f"U.antipode.n{nn}", lambda U=U: (u_antipode(U), ""))
    return rep


def o_coassoc(gl: OSession) -> bool:
    f = gl.field
    gens = [NCPoly.term((g,), f.one) for g in gl.rs.letters]
    for p in gens:
        left: dict = {}
        right: dict = {}
        for (w1, w2), c in oab.coproduct_O(gl, p).data.items():
            for (v1, v2), c2 in gl.coproduct_word(w1[1]).items():
                key = (v1, v2, w2[1])
                left[key] = left.get(key, f.zero) + c * c2
            for (v1, v2), c2 in gl.coproduct_word(w2[1]).items():
                key = (w1[1], v1, v2)
                right[key] = right.get(key, f.zero) + c * c2
        if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
            return False
    return True


def o_counit(gl: OSession) -> bool:
    f = gl.field
    for g in gl.rs.letters:
        p = NCPoly.term((g,), f.one)
        lhs = NCPoly.zero()
        rhs = NCPoly.zero()
        for (w1, w2), c in oab.coproduct_O(gl, p).data.items():
            lhs = lhs + NCPoly.term(w2[1], c * gl.counit_word(w1[1]))
            rhs = rhs + NCPoly.term(w1[1], c * gl.counit_word(w2[1]))
        if lhs != p or rhs != p:
            return False
    return True


def o_antipode(gl: OSession) -> bool:
    f = gl.field
    n = gl.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            acc1 = GLElement(gl, 0, NCPoly.zero())
            acc2 = GLElement(gl, 0, NCPoly.zero())
            for k in range(1, n + 1):
                xik = NCPoly.term((gl.gen(i, k),), f.one)
                xkj = NCPoly.term((gl.gen(k, j),), f.one)
                acc1 = acc1 + oab.antipode_O(gl, xik) * GLElement(gl, 0, xkj)
                acc2 = acc2 + GLElement(gl, 0, xik) * oab.antipode_O(gl, xkj)
            want = GLElement(gl, 0, gl.one() if i == j else NCPoly.zero())
            if acc1 != want or acc2 != want:
                return False
    gi = GLElement(gl, 1, gl.one())
    if oab.antipode_O(gl, gi) * gi != GLElement(gl, 0, gl.one()):
        return False
    return True


def u_coassoc(U: USession) -> bool:
    f = U.field
    for g in U.rs.letters:
        left: dict = {}
        right: dict = {}
        for (w1, w2), c in U.coproduct_word((g,)).items():
            for (v1, v2), c2 in U.coproduct_word(w1).items():
                key = (v1, v2, w2)
                left[key] = left.get(key, f.zero) + c * c2
            for (v1, v2), c2 in U.coproduct_word(w2).items():
                key = (w1, v1, v2)
                right[key] = right.get(key, f.zero) + c * c2
        if {k: v for k, v in left.items() if v} != {k: v for k, v in right.items() if v}:
            return False
    return True


def u_counit(U: USession) -> bool:
    f = U.field
    for g in U.rs.letters:
        p = NCPoly.term((g,), f.one)
        lhs = NCPoly.zero()
        rhs = NCPoly.zero()
        for (w1, w2), c in U.coproduct_word((g,)).items():
            lhs = lhs + NCPoly.term(w2, c * U.counit_word(w1))
            rhs = rhs + NCPoly.term(w1, c * U.counit_word(w2))
        if lhs != p or rhs != p:
            return False
    return True


def u_antipode(U: USession) -> bool:
    f = U.field
    for g in U.rs.letters:
        acc1 = NCPoly.zero()
        acc2 = NCPoly.zero()
        for (w1, w2), c in U.coproduct_word((g,)).items():
            acc1 = acc1 + (uab.antipode_U(U, NCPoly.term(w1, f.one))
                           * NCPoly.term(w2, c))
            acc2 = acc2 + (NCPoly.term(w1, c)
                           * uab.antipode_U(U, NCPoly.term(w2, f.one)))
        want = NCPoly.term((), U.counit_word((g,)))
        if U.reduce(acc1) != want or U.reduce(acc2) != want:
            return False
    return True


def suite_pairing_axioms(n: int, spec: ParameterSpec, degree: int = 3,
                         samples: int = 12, seed: int = 20260810) -> SuiteReport:
    rep = SuiteReport("pairing-axioms")
    rng = random.Random(seed)
    for nn in range(2, n + 1):
        U = u_session("U", nn, spec)
        gl = oab.session("GLn", nn, spec)
        ctx = pairing.PairingContext(U, gl)
        f = ctx.field
        uletters = U.rs.letters
        oletters = [g for g in gl.rs.letters if g.fam != "g_inv"]

        def rand_uword():
            return tuple(rng.choice(uletters) for _ in range(rng.randint(0, degree)))

        def rand_oword():
            return tuple(rng.choice(oletters) for _ in range(rng.randint(0, degree)))

        def ax_i():
            for _ in range(samples):
                u, x, y = rand_uword(), rand_oword(), rand_oword()
                lhs = ctx.pair(NCPoly.term(u, f.one),
                               NCPoly.term(x + y, f.one))
                rhs = f.zero
                for (u1, u2), c in U.coproduct_word(u).items():
                    rhs = rhs + c * ctx.pair(NCPoly.term(u1, f.one), NCPoly.term(x, f.one)) \
                        * ctx.pair(NCPoly.term(u2, f.one), NCPoly.term(y, f.one))
                if lhs != rhs:
                    return False, f"u={format_word(u)} x={format_word(x)} y={format_word(y)}"
            return True, ""

        def ax_ii():
            for _ in range(samples):
                u, v, x = rand_uword(), rand_uword(), rand_oword()
                lhs = ctx.pair(NCPoly.term(u + v, f.one), NCPoly.term(x, f.one))
                rhs = f.zero
                for (x1, x2), c in gl.coproduct_word(x).items():
                    rhs = rhs + c * ctx.pair(NCPoly.term(u, f.one), NCPoly.term(x1, f.one)) \
                        * ctx.pair(NCPoly.term(v, f.one), NCPoly.term(x2, f.one))
                if lhs != rhs:
                    return False, f"u={format_word(u)} v={format_word(v)} x={format_word(x)}"
            return True, ""

        def ax_iii_iv():
            for _ in range(samples):
                u, x = rand_uword(), rand_oword()
                if ctx.pair(NCPoly.term((), f.one), NCPoly.term(x, f.one)) != gl.counit_word(x):
                    return False, format_word(x)
                if ctx.pair(NCPoly.term(u, f.one), NCPoly.term((), f.one)) != U.counit_word(u):
                    return False, format_word(u)
            return True, ""

        def antipode_compat():
            for g in uletters:
                for xg in oletters:
                    lhs = ctx.pair(uab.antipode_U(U, NCPoly.term((g,), f.one)),
                                   NCPoly.term((xg,), f.one))
                    rhs = ctx.pair(NCPoly.term((g,), f.one),
                                   oab.antipode_O(gl, NCPoly.term((xg,), f.one)))
                    if lhs != rhs:
                        return False, f"{format_word((g,))} vs {format_word((xg,))}"
            return True, ""

        _timed(rep, f"axiom-i.n{nn}", ax_i)
        _timed(rep, f"axiom-ii.n{nn}", ax_ii)
        _timed(rep, f"axiom-iii-iv.n{nn}", ax_iii_iv)
        _timed(rep, f"antipode-compat.n{nn}", antipode_compat)

        def welldef():
            bad = pairing.pairing_welldefined_check(ctx, 2)
            return not bad, f"{len(bad)} failures" if bad else ""

        _timed(rep, f"well-defined.n{nn}", welldef)

    def pair_ef():
        spec4 = spec
        U4 = u_session("U", 4, spec4)
        gl4 = oab.session("GLn", 4, spec4)
        ctx4 = pairing.PairingContext(U4, gl4)
        f4 = ctx4.field
        for k in range(1, 4):
            for l in range(1, k + 1):
                E = uab.root_vector_expand(U4, "E", k, l)
                F = uab.root_vector_expand(U4, "F", k, l)
                for i in range(1, 5):
                    for j in range(1, 5):
                        x = NCPoly.term((gl4.gen(i, j),), f4.one)
                        wantE = ((-f4.one) ** (k - l) * f4.ab(l - k, 0)
                                 if (l == i and k + 1 == j) else f4.zero)
                        wantF = f4.one if (k + 1 == i and l == j) else f4.zero
                        if ctx4.pair(E, x) != wantE or ctx4.pair(F, x) != wantF:
                            return False, f"(k,l,i,j)=({k},{l},{i},{j})"
        return True, ""

    _timed(rep, "pair-e-f.n4", pair_ef)
    return rep


def suite_pbw(n: int, spec: ParameterSpec, degree: int = 5) -> SuiteReport:
    rep = SuiteReport("pbw")
    for nn in range(2, n + 1):
        U = u_session("U", nn, spec)

        def counts(sign, U=U, nn=nn):
            roots = [(k, l) for l in range(1, nn) for k in range(l, nn)]
            letters = [g for g in U.rs.letters if g.fam == sign]
            sub = make_subsystem(U, letters)
            for d in range(degree + 1):
                got = sub.graded_dimension(d)
                want = _pbw_count(roots, d)
                if got != want:
                    return False, f"degree {d}: {got} != {want}"
            return True, ""

        _timed(rep, f"U+.n{nn}", lambda U=U, nn=nn: counts("e"))
        _timed(rep, f"U-.n{nn}", lambda U=U, nn=nn: counts("f"))

        def confluent(U=U):
            bad = U.rs.confluence_check(6)
            return not bad, f"{len(bad)} ambiguities" if bad else ""

        _timed(rep, f"U.confluence.n{nn}", confluent)
    return rep


def make_subsystem(U: USession, letters):
    """Restriction of the rewrite system to a letter subset (e- or f-only)."""
    from .ncpoly import RewriteSystem
    sub = RewriteSystem(letters, U.field.one)
    lset = set(letters)
    for r in U.rs.rules:
        if all(g in lset for g in r.lhs) and all(g in lset for w in r.rhs.terms for g in w):
            sub.add_rule(r.lhs, r.rhs)
    return sub


def _pbw_count(roots, d):
    """Exponent vectors m on the root set with sum (k-l+1) m_kl = d."""
    sizes = [k - l + 1 for (k, l) in roots]

    def rec(i, rem):
        if i == len(sizes):
            return 1 if rem == 0 else 0
        total = 0
        m = 0
        while m * sizes[i] <= rem:
            total += rec(i + 1, rem - m * sizes[i])
            m += 1
        return total

    return rec(0, d)


def suite_frobenius(n: int, spec: ParameterSpec) -> SuiteReport:
    rep = SuiteReport("frobenius")
    gl = oab.session("GLn", n, spec)
    hb = oab.session("Hbar", n, spec)
    positions = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]

    def central():
        for pos in positions:
            for other in positions:
                if oab.frobenius_central_witness(gl, pos, other):
                    return False, f"[x{pos}^ell, x{other}]"
        return True, ""

    def multiplicative():
        a = oab.frobenius_embed(gl, [(1, 1)])
        b = oab.frobenius_embed(gl, [(n, n)])
        ab = oab.frobenius_embed(gl, [(1, 1), (n, n)])
        return (a * b == ab), ""

    def count():
        want = spec.ell ** (n * n)
        got = sum(1 for _ in hb.rs.irreducible_words())
        return got == want, f"{got} != {want}"

    def section_id():
        for w in hb.rs.irreducible_words():
            lift = oab.gamma_section(gl, w)
            if oab.hbar_project(hb, GLElement(gl, 0, lift)) != NCPoly.term(w, hb.field.one):
                return False, format_word(w)
        return True, ""

    def section_coalgebra():
        bad = [w for w in hb.rs.irreducible_words()
               if not oab.gamma_is_coalgebra_map(gl, hb, w)]
        return not bad, f"{len(bad)} basis words fail (see decisions ledger)" if bad else ""

    _timed(rep, "ell-power-centrality", central)
    _timed(rep, "multiplicative", multiplicative)
    _timed(rep, "hbar-count", count)
    _timed(rep, "pi-gamma-id", section_id)
    _timed(rep, "gamma-coalgebra", section_coalgebra)
    return rep


def suite_restricted(n: int, spec: ParameterSpec) -> SuiteReport:
    rep = SuiteReport("restricted")
    ell = spec.ell
    U = u_session("U", n, spec)
    gl = oab.session("GLn", n, spec)
    ctx = pairing.PairingContext(U, gl)
    f = U.field

    def ideal_central():
        cands = []
        for i in range(1, n + 1):
            cands.append((f"a{i}^ell", NCPoly.term((Gen("a", i),) * ell, f.one)))
            cands.append((f"b{i}^ell", NCPoly.term((Gen("b", i),) * ell, f.one)))
        for l in range(1, n):
            for k in range(l, n):
                E = uab.root_vector_expand(U, "E", k, l)
                F = uab.root_vector_expand(U, "F", k, l)
                cands.append((f"E{k}{l}^ell", pairing._power(U, E, ell)))
                cands.append((f"F{k}{l}^ell", pairing._power(U, F, ell)))
        for name, c in cands:
            ok, wit = uab.central_check(U, c)
            if not ok:
                return False, f"{name} vs {format_word((wit[0],))}"
        return True, ""

    def radical_right():
        for s in range(1, n + 1):
            for t in range(1, n + 1):
                x = NCPoly.term((gl.gen(s, t),) * ell, f.one)
                if s == t:
                    x = x - gl.one()
                ok, bad = pairing.radical_check(ctx, "right", x)
                if not ok:
                    return False, f"x[{s},{t}]^ell vs {format_word(bad[0][0])}"
        return True, ""

    def radical_left():
        cands = []
        for i in range(1, n + 1):
            h = (Gen("a_inv", i), Gen("b", i))
            cands.append((f"h{i}^ell-1",
                          NCPoly.term(h * ell, f.one) - NCPoly.term((), f.one)))
            cands.append((f"h{i}^na a{i}^-1-1",
                          NCPoly.term(h * spec.n_alpha + (Gen("a_inv", i),), f.one)
                          - NCPoly.term((), f.one)))
            cands.append((f"h{i}^nb b{i}^-1-1",
                          NCPoly.term(h * spec.n_beta + (Gen("b_inv", i),), f.one)
                          - NCPoly.term((), f.one)))
        for l in range(1, n):
            for k in range(l, n):
                E = uab.root_vector_expand(U, "E", k, l)
                F = uab.root_vector_expand(U, "F", k, l)
                cands.append((f"E{k}{l}^ell", pairing._power(U, E, ell)))
                cands.append((f"F{k}{l}^ell", pairing._power(U, F, ell)))
        for name, c in cands:
            ok, bad = pairing.radical_check(ctx, "left", U.reduce(c))
            if not ok:
                return False, f"{name} vs {format_word(bad[0][0])}"
        return True, ""

    def dims():
        want = {"u": ell ** (n * n + n), "uhat": ell ** (n * n)}
        for variant, target in want.items():
            sess = u_session(variant, n, spec)
            dim, words = uab.finite_basis(sess)
            if dim != target:
                return False, f"{variant}: {dim} != {target}"
            if target <= 1000 and sum(1 for _ in words) != target:
                return False, f"{variant}: enumeration disagrees"
        return True, ""

    def ideal_reduces_to_zero():
        uh = u_session("uhat", n, spec)
        for (k, l) in uh.eroots:
            if uh.reduce(NCPoly.term((Gen("e", k, l),) * ell, f.one)):
                return False, f"E{k}{l}^ell"
        for (k, l) in uh.froots:
            if uh.reduce(NCPoly.term((Gen("f", k, l),) * ell, f.one)):
                return False, f"F{k}{l}^ell"
        for i in range(1, n + 1):
            p = NCPoly.term((Gen("h", i),) * ell, f.one) - uh.one()
            if uh.reduce(p):
                return False, f"h{i}^ell-1"
        return True, ""

    def ell_power_coproduct():
        for k in range(1, n):
            if not uab.coproduct_ell_power_check(U, k):
                return False, f"e{k}"
            if not uab.coproduct_ell_power_check(U, k, use_f=True):
                return False, f"f{k}"
        return True, ""

    _timed(rep, "ideal-central", ideal_central)
    _timed(rep, "radical-right", radical_right)
    _timed(rep, "radical-left", radical_left)
    _timed(rep, "dims", dims)
    _timed(rep, "ideal-zero-in-uhat", ideal_reduces_to_zero)
    _timed(rep, "ell-power-coproduct", ell_power_coproduct)
    return rep


def suite_gram(n: int, spec: ParameterSpec) -> SuiteReport:
    rep = SuiteReport("gram")

    def full_rank():
        uh = u_session("uhat", n, spec)
        hb = oab.session("Hbar", n, spec)
        gl = oab.session("GLn", n, spec)
        ctx = pairing.PairingContext(uh, gl)
        dim, it = uab.finite_basis(uh)
        u_words = list(it)
        o_words = [tuple(Gen("x", g.i, g.j) for g in w)
                   for w in hb.rs.irreducible_words()]
        M = pairing.gram_matrix(ctx, u_words, o_words)
        r = pairing.gram_rank(M, ctx.field.one)
        return r == dim, f"rank {r} of {dim}"

    def diagonal():
        repd = pairing.em_xn_diagonal_check(n, spec)
        ok = repd["off_diagonal_zero"] and repd["diagonal_nonzero"]
        return ok, "" if ok else str(repd["witness"])

    _timed(rep, "gram-full-rank", full_rank)
    _timed(rep, "em-xn-diagonal", diagonal)
    return rep


def suite_datum_lattice(spec: ParameterSpec) -> SuiteReport:
    rep = SuiteReport("datum-lattice")
    corpus = subgroup.standard_corpus(spec)
    ell = spec.ell

    def sizes():
        return len(corpus) >= 20, f"{len(corpus)} data"

    def dims():
        for d in corpus:
            inv = subgroup.datum_validate(d)
            pos = len(inv.positions_plus | inv.positions_minus)
            if inv.dim_A_l_sigma != len(d.Gamma) * ell ** (d.n * d.n - pos):
                return False, d.name
            want_h = ell ** (len(d.I_plus) + len(d.I_minus)) * ell ** d.n // d.N.order
            if inv.dim_H != want_h or inv.dim_A_D != len(d.Gamma) * want_h:
                return False, d.name
        return True, ""

    def reflexive():
        for d in corpus:
            if subgroup.datum_compare(d, d) != "equivalent":
                return False, d.name
        return True, ""

    def transitive():
        rel = {}
        for i, a in enumerate(corpus):
            for j, b in enumerate(corpus):
                rel[(i, j)] = subgroup.datum_leq(a, b)
        for i in range(len(corpus)):
            for j in range(len(corpus)):
                for k in range(len(corpus)):
                    if rel[(i, j)] and rel[(j, k)] and not rel[(i, k)]:
                        return False, f"{corpus[i].name} <= {corpus[j].name} <= {corpus[k].name}"
        return True, ""

    def antisymmetric():
        for i, a in enumerate(corpus):
            for j, b in enumerate(corpus):
                if i < j and subgroup.datum_leq(a, b) and subgroup.datum_leq(b, a):
                    if (set(a.I_plus) != set(b.I_plus) or set(a.I_minus) != set(b.I_minus)
                            or a.N != b.N):
                        return False, f"{a.name} ~ {b.name}"
        return True, ""

    _timed(rep, "corpus-size", sizes)
    _timed(rep, "dimension-identities", dims)
    _timed(rep, "order-reflexive", reflexive)
    _timed(rep, "order-transitive", transitive)
    _timed(rep, "order-antisymmetric", antisymmetric)
    return rep


def suite_predicates(spec: ParameterSpec) -> SuiteReport:
    rep = SuiteReport("predicates")

    def pulenta_example():
        swap = subgroup.FiniteMatrixGroup(2, [[[0, 1], [1, 0]]])
        d = subgroup.SubgroupDatum(
            2, spec, (1,), (1,), subgroup.ZmodSubgroup(spec.ell, 2, []), swap,
            name="pulenta")
        inv = subgroup.datum_validate(d)
        ok = (inv.flags["pulenta"] and inv.flags["pulenta_strong"]
              and inv.dim_A_D == 2 * spec.ell ** 4)
        return ok, str(inv.flags)

    def semisimple_iff():
        corpus = subgroup.standard_corpus(spec)
        for d in corpus:
            flags = subgroup.predicates(d)
            if flags["semisimple"] != (not (set(d.I_plus) | set(d.I_minus))):
                return False, d.name
        return True, ""

    def diagonal_blocks():
        up, low, pattern = subgroup.position_sets(2, [], [])
        if up != {(1, 2)} or low != {(2, 1)}:
            return False, "n=2 empty"
        up, low, _ = subgroup.position_sets(3, [1], [])
        if up != {(1, 3), (2, 3)} or low != {(2, 1), (3, 1), (3, 2)}:
            return False, "n=3 I+={1}"
        up, low, _ = subgroup.position_sets(2, [1], [1])
        if up or low:
            return False, "n=2 full"
        return True, ""

    _timed(rep, "pulenta-example", pulenta_example)
    _timed(rep, "semisimple-iff", semisimple_iff)
    _timed(rep, "position-sets", diagonal_blocks)
    return rep


SUITES = ["hopf-axioms", "pairing-axioms", "pbw", "frobenius", "restricted",
          "gram", "datum-lattice", "predicates"]


def verify_suite(name: str, n: int, spec: ParameterSpec) -> list[SuiteReport]:
    if name == "all":
        return [r for s in SUITES for r in verify_suite(s, n, spec)]
    if name == "hopf-axioms":
        return [suite_hopf_axioms(min(n, 3), spec if not spec.is_root else spec)]
    if name == "pairing-axioms":
        return [suite_pairing_axioms(min(n, 3), ParameterSpec.generic())]
    if name == "pbw":
        return [suite_pbw(min(n, 3), ParameterSpec.generic())]
    if name == "frobenius":
        return [suite_frobenius(n, _require_root(spec))]
    if name == "restricted":
        return [suite_restricted(n, _require_root(spec))]
    if name == "gram":
        return [suite_gram(n, _require_root(spec))]
    if name == "datum-lattice":
        return [suite_datum_lattice(_require_root(spec))]
    if name == "predicates":
        return [suite_predicates(_require_root(spec))]
    raise ParseError(f"unknown suite {name!r}; choose from {SUITES + ['all']}")


def _require_root(spec: ParameterSpec) -> ParameterSpec:
    return spec if spec.is_root else ParameterSpec.root(3, 1, 2)


# ---------------------------------------------------------------------------
# command dispatch
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--mode", choices=["generic", "root"], default=None)
    common.add_argument("--ell", type=int, default=None)
    common.add_argument("--na", type=int, default=None)
    common.add_argument("--nb", type=int, default=None)
    common.add_argument("--variant", default=None,
                        help="algebra variant (Mn GLn Bplus Bminus Hbar Kplus "
                             "Kminus U u uhat Ul uhatl)")
    common.add_argument("--degree", type=int, default=3)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--out", default=None, help="write the output to a file")

    p = argparse.ArgumentParser(
        prog="qgl",
        description="Exact workbench for the two-parameter quantum groups of GL_n")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    v = verb("reduce"); v.add_argument("expr")
    v = verb("qdet")
    v.add_argument("--rows", default=None); v.add_argument("--cols", default=None)
    v.add_argument("--by-columns", action="store_true")
    v = verb("antipode"); v.add_argument("expr")
    v = verb("coproduct"); v.add_argument("expr")
    verb("s2")
    v = verb("frobenius"); v.add_argument("monomial", help="e.g. X[1,1]X[2,2]")
    v = verb("project"); v.add_argument("expr")
    v = verb("section"); v.add_argument("expr")
    v = verb("delta-borel"); v.add_argument("expr")
    verb("subst-check")
    verb("characters")
    v = verb("rootvec"); v.add_argument("sign", choices=["E", "F"])
    v.add_argument("k", type=int); v.add_argument("l", type=int)
    v = verb("u-coproduct"); v.add_argument("expr")
    v = verb("central"); v.add_argument("expr")
    verb("finite-basis")
    verb("dims")
    v = verb("pair"); v.add_argument("--u", required=True); v.add_argument("--o", required=True)
    verb("gram")
    verb("rank")
    v = verb("radical"); v.add_argument("--side", choices=["left", "right"], required=True)
    v.add_argument("expr")
    verb("diag-check")
    v = verb("datum"); v.add_argument("action",
                                      choices=["validate", "dims", "compare", "predicates"])
    v.add_argument("file"); v.add_argument("file2", nargs="?")
    v = verb("verify"); v.add_argument("suite")
    return p


def _spec_from_args(args) -> ParameterSpec:
    root_requested = (args.mode == "root" or args.ell is not None)
    if root_requested:
        ell = args.ell if args.ell is not None else 3
        na = args.na if args.na is not None else 1
        nb = args.nb if args.nb is not None else (na + 1) % ell or 1
        return ParameterSpec.root(ell, na, nb)
    return ParameterSpec.generic()


def _o_session(args, spec, default="GLn") -> OSession:
    variant = args.variant or default
    if variant not in O_VARIANTS:
        raise ParseError(f"verb needs a coordinate-side variant, got {variant!r}")
    return oab.session(variant, args.n, spec)


def _u_session(args, spec, default="U") -> USession:
    variant = args.variant or default
    if variant not in U_VARIANTS:
        raise ParseError(f"verb needs an enveloping-side variant, got {variant!r}")
    return u_session(variant, args.n, spec)


def run_command(argv) -> tuple[int, str]:
    args = _build_parser().parse_args(argv)
    spec = _spec_from_args(args)
    fmt = args.format
    out: object

    if args.verb == "reduce":
        if (args.variant or "GLn") in O_VARIANTS:
            s = _o_session(args, spec)
            p = s.reduce(parse_expr(s, args.expr))
        else:
            s = _u_session(args, spec)
            p = s.reduce(parse_expr(s, args.expr))
        out = poly_to_json(p) if fmt == "json" else str(p)

    elif args.verb == "qdet":
        s = _o_session(args, spec, default="Mn")
        rows = [int(x) for x in args.rows.split(",")] if args.rows else None
        cols = [int(x) for x in args.cols.split(",")] if args.cols else None
        p = s.qdet(rows, cols, by_columns=args.by_columns)
        out = poly_to_json(p) if fmt == "json" else str(p)

    elif args.verb == "antipode":
        s = _o_session(args, spec)
        el = GLElement.from_poly(s, parse_expr(s, args.expr))
        r = oab.antipode_O(s, el)
        out = {"gpow": r.t, **poly_to_json(r.poly)} if fmt == "json" else str(r)

    elif args.verb == "coproduct":
        s = _o_session(args, spec)
        el = GLElement.from_poly(s, parse_expr(s, args.expr))
        t = oab.coproduct_O(s, el)
        out = tensor_to_json(t) if fmt == "json" else str(t)

    elif args.verb == "s2":
        s = _o_session(args, spec)
        repd = oab.s2_spectrum(s)
        rows = {f"x[{i},{j}]": str(v) for (i, j), v in repd["eigenvalues"].items()}
        payload = {"eigenvalues": rows,
                   "matches_antipode_square_base": repd["matches_antipode_square_base"],
                   "matches_quotient_theorem_base": repd["matches_quotient_theorem_base"]}
        out = payload if fmt == "json" else "\n".join(
            [f"S^2(x[{i},{j}]) = {v}" for (i, j), v in sorted(repd["eigenvalues"].items())]
            + [f"matches (al^-1 be)^(j-i) base: {repd['matches_antipode_square_base']}",
               f"matches (al be)^(j-i) base:   {repd['matches_quotient_theorem_base']}"])

    elif args.verb == "frobenius":
        s = _o_session(args, spec)
        mono = []
        for tok in args.monomial.replace("]", "] ").split():
            if not tok.startswith("X["):
                raise ParseError("frobenius expects a product of X[i,j] symbols")
            i, j = tok[2:-1].split(",")
            mono.append((int(i), int(j)))
        r = oab.frobenius_embed(s, mono)
        out = poly_to_json(r.poly) if fmt == "json" else str(r)

    elif args.verb == "project":
        gl = oab.session("GLn", args.n, spec)
        hb = oab.session("Hbar", args.n, spec)
        el = GLElement.from_poly(gl, parse_expr(gl, args.expr))
        p = oab.hbar_project(hb, el)
        out = poly_to_json(p) if fmt == "json" else str(p)

    elif args.verb == "section":
        gl = oab.session("GLn", args.n, spec)
        hb = oab.session("Hbar", args.n, spec)
        p = hb.reduce(parse_expr(hb, args.expr))
        acc = NCPoly.zero()
        for w, c in p.terms.items():
            acc = acc + oab.gamma_section(gl, w).scaled(c)
        out = poly_to_json(gl.reduce(acc)) if fmt == "json" else str(gl.reduce(acc))

    elif args.verb == "delta-borel":
        gl = oab.session("GLn", args.n, spec)
        bp = oab.session("Bplus", args.n, spec)
        bm = oab.session("Bminus", args.n, spec)
        el = GLElement.from_poly(gl, parse_expr(gl, args.expr))
        t = oab.delta_borel(gl, bp, bm, el)
        out = tensor_to_json(t) if fmt == "json" else str(t)

    elif args.verb == "subst-check":
        table = oab.resolve_parameter_swap(args.n, spec)
        out = table if fmt == "json" else "\n".join(
            f"{k}: {'valid' if v else 'invalid'}" for k, v in table.items())

    elif args.verb == "characters":
        s = _o_session(args, spec)
        repd = oab.characters_O(s)
        payload = {"forced_zero": repd["forced_zero"],
                   "free_nonzero": repd["free_nonzero"],
                   "torus_rank": repd["torus_rank"],
                   "is_diagonal_torus": repd["is_diagonal_torus"]}
        out = payload if fmt == "json" else (
            f"Alg(O,C) = (C^x)^{repd['torus_rank']}: off-diagonal forced to 0 "
            f"({repd['is_diagonal_torus']}), diagonal free")

    elif args.verb == "rootvec":
        s = _u_session(args, spec)
        p = uab.root_vector_expand(s, args.sign, args.k, args.l)
        out = poly_to_json(p) if fmt == "json" else str(p)

    elif args.verb == "u-coproduct":
        s = _u_session(args, spec)
        t = uab.coproduct_U(s, s.reduce(parse_expr(s, args.expr)))
        out = tensor_to_json(t) if fmt == "json" else str(t)

    elif args.verb == "central":
        s = _u_session(args, spec)
        ok, wit = uab.central_check(s, s.reduce(parse_expr(s, args.expr)))
        payload = {"central": ok}
        if not ok:
            payload["witness"] = {"generator": format_word((wit[0],)),
                                  "commutator": str(wit[1])}
        out = payload if fmt == "json" else (
            "central" if ok else f"not central: [{format_word((wit[0],))}, .] = {wit[1]}")

    elif args.verb == "finite-basis":
        s = _u_session(args, spec, default="uhat")
        dim, words = uab.finite_basis(s)
        listing = [format_word(w) for w in words] if dim <= 1000 else None
        out = ({"dimension": dim, "basis": listing} if fmt == "json"
               else f"dimension {dim}" + ("" if not listing else
                                          "\n" + "\n".join(listing)))

    elif args.verb == "dims":
        variant = args.variant or "uhat"
        if variant in U_VARIANTS:
            s = _u_session(args, spec, default=variant)
            dim, _ = uab.finite_basis(s)
        else:
            s = _o_session(args, spec, default=variant)
            dim = sum(1 for _ in s.rs.irreducible_words())
        out = {"dimension": dim} if fmt == "json" else str(dim)

    elif args.verb == "pair":
        U = _u_session(args, spec)
        gl = oab.session("GLn", args.n, spec)
        ctx = pairing.PairingContext(U, gl)
        up = U.reduce(parse_expr(U, args.u))
        op = parse_expr(gl, args.o)
        val = ctx.pair(up, GLElement.from_poly(gl, op))
        out = {"value": scalar_to_json(val)} if fmt == "json" else str(val)

    elif args.verb in ("gram", "rank"):
        rspec = _require_root(spec)
        uh = u_session("uhat", args.n, rspec)
        hb = oab.session("Hbar", args.n, rspec)
        gl = oab.session("GLn", args.n, rspec)
        ctx = pairing.PairingContext(uh, gl)
        dim, it = uab.finite_basis(uh)
        u_words = list(it)
        o_words = [tuple(Gen("x", g.i, g.j) for g in w)
                   for w in hb.rs.irreducible_words()]
        M = pairing.gram_matrix(ctx, u_words, o_words)
        r = pairing.gram_rank(M, ctx.field.one)
        if args.verb == "rank":
            out = {"rank": r} if fmt == "json" else str(r)
        else:
            out = {"n": args.n, "ell": rspec.ell,
                   "u_basis": [format_word(w) for w in u_words],
                   "o_basis": [format_word(w) for w in o_words],
                   "rank": r,
                   "matrix": [[str(v) for v in row] for row in M]}
            if fmt == "text":
                out = f"rank {r} ({dim} x {len(o_words)})"

    elif args.verb == "radical":
        rspec = _require_root(spec)
        gl = oab.session("GLn", args.n, rspec)
        if args.side == "right":
            U = u_session("uhat", args.n, rspec)
            ctx = pairing.PairingContext(U, gl)
            cand = parse_expr(gl, args.expr)
        else:
            U = u_session("U", args.n, rspec)
            ctx = pairing.PairingContext(U, gl)
            cand = U.reduce(parse_expr(U, args.expr))
        ok, bad = pairing.radical_check(ctx, args.side, cand)
        out = ({"in_radical": ok,
                "witnesses": [[format_word(tuple(w)), str(v)] for w, v in bad]}
               if fmt == "json" else ("in radical" if ok else
                                      f"not in radical: {len(bad)} witnesses"))

    elif args.verb == "diag-check":
        rspec = _require_root(spec)
        repd = pairing.em_xn_diagonal_check(args.n, rspec)
        payload = {"off_diagonal_zero": repd["off_diagonal_zero"],
                   "diagonal_nonzero": repd["diagonal_nonzero"],
                   "size": repd["size"],
                   "diagonal": [str(v) for v in repd["diagonal"]]}
        out = payload if fmt == "json" else (
            f"{repd['size']} x {repd['size']}: off-diagonal zero: "
            f"{repd['off_diagonal_zero']}, diagonal nonzero: {repd['diagonal_nonzero']}")

    elif args.verb == "datum":
        with open(args.file) as fh:
            d = subgroup.datum_from_json(json.load(fh))
        if args.action == "validate":
            try:
                inv = subgroup.datum_validate(d)
                out = {"valid": True, "dim_A_D": inv.dim_A_D}
            except subgroup.ValidationError as exc:
                out = {"valid": False, "problems": exc.problems}
            if fmt == "text":
                out = json.dumps(out)
        elif args.action == "dims":
            out = subgroup.datum_dims(d)
            if fmt == "text":
                out = json.dumps(out)
        elif args.action == "predicates":
            out = subgroup.predicates(d)
            if fmt == "text":
                out = json.dumps(out)
        else:
            if not args.file2:
                raise ParseError("datum compare needs two files")
            with open(args.file2) as fh:
                d2 = subgroup.datum_from_json(json.load(fh))
            out = {"compare": subgroup.datum_compare(d, d2)}
            if fmt == "text":
                out = out["compare"]

    elif args.verb == "verify":
        reports = verify_suite(args.suite, args.n, spec)
        if fmt == "json":
            out = {"reports": [r.to_json() for r in reports],
                   "ok": all(r.ok for r in reports)}
        else:
            out = "\n".join(r.format_text() for r in reports)
        text = json.dumps(out, indent=2) if fmt == "json" else out
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text + "\n")
        return (0 if all(r.ok for r in reports) else 1), text

    else:  # pragma: no cover
        raise ParseError(f"unhandled verb {args.verb}")

    text = json.dumps(out, indent=2) if fmt == "json" and not isinstance(out, str) \
        else (out if isinstance(out, str) else json.dumps(out, indent=2))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    return 0, text


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        code, text = run_command(argv)
    except (ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # computation failure
        print(f"computation error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
