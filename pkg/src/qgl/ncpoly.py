"""Free noncommutative polynomials, monomial orders, and rewriting.

A word is a tuple of ``Gen`` symbols.  A rewrite system carries an ordered
alphabet with optional per-letter weights; words are compared by (total
weight, length, letter ranks), which is a monomial order compatible with
concatenation.  Every rule strictly decreases this order, so reduction
terminates; confluence of the shipped presentations is checked empirically
by overlap resolution up to a degree bound.
"""

from __future__ import annotations

import sys
from typing import Iterator, NamedTuple

# reduction chains on degree-8 words can nest a few thousand frames
sys.setrecursionlimit(max(sys.getrecursionlimit(), 100_000))


class Gen(NamedTuple):
    fam: str
    i: int = 0
    j: int = 0


Word = tuple[Gen, ...]

_TOKEN = {
    "x": "x", "xbar": "xb", "xhat": "xh", "g_inv": "gi",
    "a": "a", "a_inv": "ai", "b": "b", "b_inv": "bi",
    "h": "h", "h_inv": "hi", "e": "e", "f": "f",
}


def format_gen(g: Gen) -> str:
    t = _TOKEN[g.fam]
    if g.fam == "g_inv":
        return t
    if g.fam in ("x", "xbar", "xhat"):
        return f"{t}[{g.i},{g.j}]"
    if g.fam in ("e", "f"):
        if g.i == g.j:
            return f"{t}[{g.i}]"
        return f"{t.upper()}[{g.i},{g.j}]"
    return f"{t}[{g.i}]"


def format_word(w: Word) -> str:
    return " ".join(format_gen(g) for g in w) if w else "1"


class NCPoly:
    """Finite scalar combination of words; zero coefficients are pruned."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[Word, object] | None = None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls({})

    @classmethod
    def term(cls, word: Word, coeff) -> "NCPoly":
        return cls({word: coeff})

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        for w, c in other.terms.items():
            v = out.get(w)
            v = c if v is None else v + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
        return NCPoly(out)

    def __neg__(self) -> "NCPoly":
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, NCPoly):
            out: dict[Word, object] = {}
            for w1, c1 in self.terms.items():
                for w2, c2 in other.terms.items():
                    w = w1 + w2
                    v = out.get(w)
                    v = c1 * c2 if v is None else v + c1 * c2
                    if v:
                        out[w] = v
                    else:
                        out.pop(w, None)
            return NCPoly(out)
        return self.scaled(other)

    def __rmul__(self, coeff) -> "NCPoly":
        return self.scaled(coeff)

    def scaled(self, coeff) -> "NCPoly":
        if not coeff:
            return NCPoly({})
        return NCPoly({w: coeff * c for w, c in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def map_words(self, fn) -> "NCPoly":
        """Apply word -> word | None (drop) and collect like terms."""
        out: dict[Word, object] = {}
        for w, c in self.terms.items():
            nw = fn(w)
            if nw is None:
                continue
            v = out.get(nw)
            v = c if v is None else v + c
            if v:
                out[nw] = v
            else:
                out.pop(nw, None)
        return NCPoly(out)

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for w in sorted(self.terms, key=lambda w: (len(w), w)):
            c = self.terms[w]
            cs = str(c)
            if w:
                if cs == "1":
                    bits.append(format_word(w))
                elif cs == "-1":
                    bits.append("-" + format_word(w))
                else:
                    if ("+" in cs or "-" in cs.lstrip("-") or "/" in cs) and not (
                            cs.startswith("(") and cs.endswith(")")):
                        cs = f"({cs})"
                    bits.append(f"{cs} {format_word(w)}")
            else:
                bits.append(cs if ("+" not in cs and "/" not in cs) else f"({cs})")
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return f"NCPoly({self})"


class RewriteRule(NamedTuple):
    lhs: Word
    rhs: NCPoly


class Mismatch(NamedTuple):
    word: Word
    rule_a: int
    rule_b: int
    difference: NCPoly


class RewriteSystem:
    """Ordered alphabet plus strictly order-decreasing rules."""

    def __init__(self, letters: list[Gen], one, weights: dict[Gen, int] | None = None):
        self.letters = list(letters)
        self.one = one  # coefficient 1 of the session's scalar field
        self.rank = {g: k for k, g in enumerate(self.letters)}
        self.weights = dict(weights or {})
        self.rules: list[RewriteRule] = []
        self._by_first: dict[Gen, list[tuple[int, RewriteRule]]] = {}
        self._cache: dict[Word, dict[Word, object]] = {}

    def weight(self, g: Gen) -> int:
        return self.weights.get(g, 1)

    def order_key(self, w: Word):
        return (sum(self.weight(g) for g in w), len(w), tuple(self.rank[g] for g in w))

    def add_rule(self, lhs: Word, rhs: NCPoly) -> None:
        if not lhs:
            raise ValueError("rule lhs must be a nonempty word")
        key = self.order_key(lhs)
        for w in rhs.terms:
            if self.order_key(w) >= key:
                raise ValueError(
                    f"rule does not decrease the order: {format_word(lhs)} -> {format_word(w)}")
        rule = RewriteRule(lhs, rhs)
        self.rules.append(rule)
        self._by_first.setdefault(lhs[0], []).append((len(self.rules) - 1, rule))
        self._cache.clear()

    def add_relation(self, poly: NCPoly) -> None:
        """Orient a relation: leading word becomes the lhs."""
        if not poly:
            return
        lead = max(poly.terms, key=self.order_key)
        c = poly.terms[lead]
        rest = NCPoly({w: v for w, v in poly.terms.items() if w != lead})
        self.add_rule(lead, rest.scaled(-(self.one / c)))

    def find(self, w: Word):
        for pos in range(len(w)):
            cand = self._by_first.get(w[pos])
            if not cand:
                continue
            for _, rule in cand:
                n = len(rule.lhs)
                if pos + n <= len(w) and w[pos:pos + n] == rule.lhs:
                    return pos, rule
        return None

    def is_irreducible(self, w: Word) -> bool:
        return self.find(w) is None

    def reduce_word(self, w: Word) -> dict[Word, object]:
        cached = self._cache.get(w)
        if cached is not None:
            return cached
        hit = self.find(w)
        if hit is None:
            result = {w: self.one}
        else:
            pos, rule = hit
            pre, suf = w[:pos], w[pos + len(rule.lhs):]
            acc: dict[Word, object] = {}
            for rw, rc in rule.rhs.terms.items():
                for w2, c2 in self.reduce_word(pre + rw + suf).items():
                    v = acc.get(w2)
                    v = rc * c2 if v is None else v + rc * c2
                    if v:
                        acc[w2] = v
                    else:
                        acc.pop(w2, None)
            result = acc
        self._cache[w] = result
        return result

    def reduce(self, p: NCPoly) -> NCPoly:
        out: dict[Word, object] = {}
        for w, c in p.terms.items():
            for w2, c2 in self.reduce_word(w).items():
                v = out.get(w2)
                v = c * c2 if v is None else v + c * c2
                if v:
                    out[w2] = v
                else:
                    out.pop(w2, None)
        return NCPoly(out)

    # -- diagnostics ---------------------------------------------------------

    def confluence_check(self, degree_bound: int) -> list[Mismatch]:
        """Resolve all overlap/inclusion ambiguities up to the length bound."""
        seen: set[tuple[int, int, Word]] = set()
        bad: list[Mismatch] = []
        for ia, ra in enumerate(self.rules):
            la = ra.lhs
            for ib, rb in enumerate(self.rules):
                lb = rb.lhs
                # proper overlap: a suffix of la equals a prefix of lb
                for k in range(1, min(len(la), len(lb))):
                    if la[len(la) - k:] == lb[:k]:
                        w = la + lb[k:]
                        if len(w) <= degree_bound and (ia, ib, w) not in seen:
                            seen.add((ia, ib, w))
                            d = self._resolve(w, 0, ra) - self._resolve(w, len(la) - k, rb)
                            if d:
                                bad.append(Mismatch(w, ia, ib, d))
                # inclusion: lb occurs strictly inside la
                if ia != ib and len(lb) < len(la):
                    for pos in range(len(la) - len(lb) + 1):
                        if la[pos:pos + len(lb)] == lb:
                            w = la
                            if len(w) <= degree_bound and (ia, ib, w) not in seen:
                                seen.add((ia, ib, w))
                                d = self._resolve(w, 0, ra) - self._resolve(w, pos, rb)
                                if d:
                                    bad.append(Mismatch(w, ia, ib, d))
        return bad

    def _resolve(self, w: Word, pos: int, rule: RewriteRule) -> NCPoly:
        pre, suf = w[:pos], w[pos + len(rule.lhs):]
        out = NCPoly.zero()
        for rw, rc in rule.rhs.terms.items():
            out = out + NCPoly({pre + rw + suf: rc})
        return self.reduce(out)

    def irreducible_words(self, max_weight: int | None = None,
                          max_len: int | None = None,
                          limit: int | None = None) -> Iterator[Word]:
        """Depth-first enumeration of irreducible words, shortest-lex order."""
        count = 0
        max_rule = max((len(r.lhs) for r in self.rules), default=1)

        def ok(w: Word) -> bool:
            # only the tail can newly match: check suffixes through the last letter
            for k in range(1, min(len(w), max_rule) + 1):
                tail = w[len(w) - k:]
                cand = self._by_first.get(tail[0])
                if cand and any(r.lhs == tail for _, r in cand):
                    return False
            return True

        stack: list[tuple[Word, int]] = [((), 0)]
        while stack:
            w, wt = stack.pop()
            count += 1
            yield w
            if limit is not None and count >= limit:
                return
            for g in reversed(self.letters):
                nw = w + (g,)
                nwt = wt + self.weight(g)
                if max_weight is not None and nwt > max_weight:
                    continue
                if max_len is not None and len(nw) > max_len:
                    continue
                if ok(nw):
                    stack.append((nw, nwt))

    def graded_dimension(self, d: int) -> int:
        """Number of irreducible words of total weight d (homogeneous rules only)."""
        if any(self.weight(g) < 1 for g in self.letters):
            raise ValueError("graded_dimension requires all letter weights >= 1")
        for r in self.rules:
            dl = sum(self.weight(g) for g in r.lhs)
            for w in r.rhs.terms:
                if sum(self.weight(g) for g in w) != dl:
                    raise ValueError("graded_dimension requires a homogeneous system")
        n = 0
        for w in self.irreducible_words(max_weight=d):
            if sum(self.weight(g) for g in w) == d:
                n += 1
        return n


class TensorElement:
    """Finitely supported table over pairs of localized words.

    Keys are ((t1, w1), (t2, w2)); an integer tag t counts an inverted
    group-like factor on that leg (g^-t on GL legs, the inverse diagonal
    determinant on Borel legs, 0 elsewhere).  Both legs are kept reduced in
    their sessions.
    """

    __slots__ = ("left", "right", "data")

    def __init__(self, left, right, data: dict):
        self.left = left
        self.right = right
        self.data = {k: v for k, v in data.items() if v}

    def __eq__(self, other):
        if not isinstance(other, TensorElement):
            return NotImplemented
        return self.data == other.data

    def __bool__(self):
        return bool(self.data)

    def __str__(self):
        if not self.data:
            return "0"
        bits = []
        for (kl, kr) in sorted(self.data, key=lambda k: (len(k[0][1]), len(k[1][1]), k)):
            c = self.data[(kl, kr)]
            def leg(k):
                t, w = k
                body = format_word(w)
                return f"g^-{t} {body}" if t else body
            cs = str(c)
            if ("+" in cs or "/" in cs) or ("-" in cs.lstrip("-")):
                cs = f"({cs})"
            lead = "" if cs == "1" else ("-" if cs == "-1" else cs + " ")
            bits.append(f"{lead}{leg(kl)} (x) {leg(kr)}")
        return " + ".join(bits).replace("+ -", "- ")

    def __repr__(self):
        return f"TensorElement({self})"
