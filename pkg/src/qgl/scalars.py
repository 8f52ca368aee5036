"""Exact coefficient arithmetic for the two-parameter workbench.

Two modes share one interface.  In generic mode a scalar is a rational
function in the commuting symbols ``al`` (alpha) and ``be`` (beta) with
integer-coefficient Laurent polynomials as numerator and denominator, kept
in a canonical reduced form so that equality is structural.  In root mode a
scalar is an element of the cyclotomic field Q(zeta_m), stored as a
rational-coefficient vector reduced modulo the m-th cyclotomic polynomial.

Everything here is immutable and exact; no floating point is used anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Expt = tuple[int, int]     # (alpha exponent, beta exponent); may be negative
IPoly = dict[Expt, int]    # integer Laurent polynomial; zero coefficients absent

_E0: Expt = (0, 0)


class SpecializationError(ArithmeticError):
    """A denominator vanishes under alpha, beta -> zeta powers."""


# --------------------------------------------------------------------------
# parameter specifications
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class ParameterSpec:
    """Choice of coefficient field: generic Q(al, be) or Q(zeta_ell).

    In root mode ``ell`` is odd and >= 3, alpha = zeta^n_alpha and
    beta = zeta^n_beta for the fixed primitive root zeta, and the exponents
    satisfy n_beta - n_alpha = 1 (mod ell) so that al^-1 be = zeta, together
    with n_alpha + n_beta != 0 (mod ell), which encodes alpha != beta^-1.
    """

    mode: str
    ell: int | None = None
    n_alpha: int | None = None
    n_beta: int | None = None

    def __post_init__(self):
        if self.mode == "generic":
            if self.ell is not None or self.n_alpha is not None or self.n_beta is not None:
                raise ValueError("generic mode takes no root-of-unity data")
            return
        if self.mode != "root":
            raise ValueError(f"unknown mode {self.mode!r}")
        ell, na, nb = self.ell, self.n_alpha, self.n_beta
        if not isinstance(ell, int) or ell < 3 or ell % 2 == 0:
            raise ValueError(f"ell must be an odd integer >= 3, got {ell!r}")
        if not isinstance(na, int) or not 0 < na < ell:
            raise ValueError(f"n_alpha must lie strictly between 0 and ell, got {na!r}")
        if not isinstance(nb, int) or not 0 < nb < ell:
            raise ValueError(f"n_beta must lie strictly between 0 and ell, got {nb!r}")
        if (nb - na) % ell != 1:
            raise ValueError(f"n_beta - n_alpha = 1 (mod ell) required, got {na}, {nb} mod {ell}")
        # n_alpha + n_beta = 0 (mod ell), i.e. alpha = beta^-1, is not rejected:
        # for ell = 3 it is forced by the other constraints.  See alpha_equals_beta_inv.

    @property
    def alpha_equals_beta_inv(self) -> bool:
        """True when alpha*beta = 1; some classification statements exclude this."""
        if not self.is_root:
            return False
        return (self.n_alpha + self.n_beta) % self.ell == 0

    @classmethod
    def generic(cls) -> "ParameterSpec":
        return cls("generic")

    @classmethod
    def root(cls, ell: int, n_alpha: int, n_beta: int) -> "ParameterSpec":
        return cls("root", ell, n_alpha, n_beta)

    @property
    def is_root(self) -> bool:
        return self.mode == "root"


# --------------------------------------------------------------------------
# integer Laurent polynomials in (al, be), as plain dicts
# --------------------------------------------------------------------------

def _glex(e: Expt) -> tuple[int, int, int]:
    return (e[0] + e[1], e[0], e[1])


def _padd(a: IPoly, b: IPoly) -> IPoly:
    out = dict(a)
    for e, c in b.items():
        v = out.get(e, 0) + c
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def _pneg(a: IPoly) -> IPoly:
    return {e: -c for e, c in a.items()}


def _pmul(a: IPoly, b: IPoly) -> IPoly:
    out: IPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = (ea[0] + eb[0], ea[1] + eb[1])
            v = out.get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def _pcontent(a: IPoly) -> int:
    g = 0
    for c in a.values():
        g = math.gcd(g, c)
    return g or 1


def _pshift(a: IPoly) -> tuple[IPoly, Expt]:
    """Extract the monomial content: a = al^s0 be^s1 * (honest polynomial)."""
    s0 = min(e[0] for e in a)
    s1 = min(e[1] for e in a)
    if (s0, s1) == _E0:
        return a, _E0
    return {(e[0] - s0, e[1] - s1): c for e, c in a.items()}, (s0, s1)


def _plead(a: IPoly) -> Expt:
    return max(a, key=_glex)


def _pdiv_exact(a: IPoly, b: IPoly) -> IPoly | None:
    """Quotient of honest polynomials when b divides a exactly, else None."""
    if not a:
        return {}
    lb = _plead(b)
    cb = b[lb]
    q: dict[Expt, Fraction] = {}
    r: dict[Expt, Fraction] = {e: Fraction(c) for e, c in a.items()}
    while r:
        la = max(r, key=_glex)
        e = (la[0] - lb[0], la[1] - lb[1])
        if e[0] < 0 or e[1] < 0:
            return None
        c = r[la] / cb
        q[e] = c
        for eb, bc in b.items():
            key = (eb[0] + e[0], eb[1] + e[1])
            v = r.get(key, Fraction(0)) - c * bc
            if v:
                r[key] = v
            else:
                r.pop(key, None)
    if any(c.denominator != 1 for c in q.values()):
        return None
    return {e: int(c) for e, c in q.items() if c}


def _gcd_poly(a: IPoly, b: IPoly) -> IPoly:
    """Polynomial gcd over Z[al, be] of two honest polynomials (via sympy)."""
    import sympy

    x, y = sympy.symbols("al be")
    pa = sympy.Poly.from_dict({e: c for e, c in a.items()}, x, y, domain=sympy.ZZ)
    pb = sympy.Poly.from_dict({e: c for e, c in b.items()}, x, y, domain=sympy.ZZ)
    g = pa.gcd(pb)
    return {(int(i), int(j)): int(c) for (i, j), c in g.as_dict().items()}


def _fmt_ipoly(a: IPoly) -> str:
    if not a:
        return "0"
    parts = []
    for e in sorted(a, key=_glex, reverse=True):
        c = a[e]
        sym = []
        if e[0]:
            sym.append("al" if e[0] == 1 else f"al^{e[0]}")
        if e[1]:
            sym.append("be" if e[1] == 1 else f"be^{e[1]}")
        body = " ".join(sym)
        if not body:
            term = str(abs(c))
        elif abs(c) == 1:
            term = body
        else:
            term = f"{abs(c)} {body}"
        if not parts:
            parts.append(term if c > 0 else "-" + term)
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts)


# --------------------------------------------------------------------------
# generic-mode scalars
# --------------------------------------------------------------------------

class RationalFunction:
    """Element of Q(al, be) in canonical form.

    Invariants: the denominator is a nonzero honest polynomial (minimal
    exponents zero) with positive leading coefficient under graded-lex, the
    full gcd of numerator and denominator over Z[al, be] is 1, and zero is
    represented as {} / {1}.  Equality is plain structural comparison.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: IPoly, den: IPoly | None = None, _canonical: bool = False):
        if den is None:
            den = {_E0: 1}
        if _canonical:
            self.num, self.den = num, den
            return
        self.num, self.den = _normalize(num, den)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_int(cls, k: int) -> "RationalFunction":
        return cls({_E0: k} if k else {}, {_E0: 1}, _canonical=True)

    @classmethod
    def from_fraction(cls, f: Fraction) -> "RationalFunction":
        return cls({_E0: f.numerator} if f.numerator else {},
                   {_E0: f.denominator}, _canonical=True)

    @classmethod
    def monomial(cls, i: int, j: int, c: int = 1) -> "RationalFunction":
        return cls({(i, j): c} if c else {}, {_E0: 1}, _canonical=True)

    # -- ring structure ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, int):
            return RationalFunction.from_int(other)
        if isinstance(other, Fraction):
            return RationalFunction.from_fraction(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RationalFunction(_padd(self.num, o.num), self.den)
        return RationalFunction(
            _padd(_pmul(self.num, o.den), _pmul(o.num, self.den)),
            _pmul(self.den, o.den))

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(_pneg(self.num), self.den, _canonical=True)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den == {_E0: 1}:
            return RationalFunction(_pmul(self.num, o.num), {_E0: 1})
        return RationalFunction(_pmul(self.num, o.num), _pmul(self.den, o.den))

    __rmul__ = __mul__

    def inv(self) -> "RationalFunction":
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self.inv() if k < 0 else self
        k = abs(k)
        out = RationalFunction.from_int(1)
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((frozenset(self.num.items()), frozenset(self.den.items())))

    def __bool__(self):
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num == {_E0: 1} and self.den == {_E0: 1}

    # -- io -------------------------------------------------------------------

    def __str__(self):
        if self.den == {_E0: 1}:
            return _fmt_ipoly(self.num)
        ns = _fmt_ipoly(self.num)
        if len(self.num) > 1:
            ns = f"({ns})"
        ds = _fmt_ipoly(self.den)
        if len(self.den) > 1 or _plead(self.den) != _E0:
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __repr__(self):
        return f"RationalFunction({self})"

    def to_json(self):
        return {"num": sorted([i, j, c] for (i, j), c in self.num.items()),
                "den": sorted([i, j, c] for (i, j), c in self.den.items())}

    @classmethod
    def from_json(cls, obj) -> "RationalFunction":
        num = {(int(i), int(j)): int(c) for i, j, c in obj["num"]}
        den = {(int(i), int(j)): int(c) for i, j, c in obj["den"]}
        return cls(num, den)


def _normalize(num: IPoly, den: IPoly) -> tuple[IPoly, IPoly]:
    if not den:
        raise ZeroDivisionError("zero denominator in Q(al, be)")
    if not num:
        return {}, {_E0: 1}
    num, sn = _pshift(num)
    den, sd = _pshift(den)
    shift = (sn[0] - sd[0], sn[1] - sd[1])

    cn, cd = _pcontent(num), _pcontent(den)
    g = math.gcd(cn, cd)
    if g > 1:
        num = {e: c // g for e, c in num.items()}
        den = {e: c // g for e, c in den.items()}
        cn //= g
        cd //= g

    if _plead(den) != _E0 or len(den) > 1:   # denominator not a constant
        q = _pdiv_exact(num, den)
        if q is not None:
            num, den = q, {_E0: 1}
        else:
            pn = {e: c // cn for e, c in num.items()}
            pd = {e: c // cd for e, c in den.items()}
            gp = _gcd_poly(pn, pd)
            if gp and (len(gp) > 1 or _plead(gp) != _E0 or gp.get(_E0, 0) not in (1, -1)):
                qn = _pdiv_exact(pn, gp)
                qd = _pdiv_exact(pd, gp)
                assert qn is not None and qd is not None
                num = {e: c * cn for e, c in qn.items()}
                den = {e: c * cd for e, c in qd.items()}

    if den[_plead(den)] < 0:
        num, den = _pneg(num), _pneg(den)
    if shift != _E0:
        num = {(e[0] + shift[0], e[1] + shift[1]): c for e, c in num.items()}
    return num, den


# --------------------------------------------------------------------------
# cyclotomic polynomials and root-mode scalars
# --------------------------------------------------------------------------

def _upoly_div_exact(a: list[int], b: list[int]) -> list[int]:
    """Exact division of integer univariate polynomials, coefficients ascending."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for k in range(len(out) - 1, -1, -1):
        c, rem = divmod(a[k + len(b) - 1], b[-1])
        if rem:
            raise ArithmeticError("division not exact")
        out[k] = c
        if c:
            for i, bc in enumerate(b):
                a[k + i] -= c * bc
    if any(a):
        raise ArithmeticError("division not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of Phi_m (ascending degree), by exact division of z^m - 1."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        return (-1, 1)
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num = _upoly_div_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


@lru_cache(maxsize=None)
def _red_rows(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Reduction of z^k modulo Phi_m for k = 0 .. 2m, as coefficient rows."""
    phi = cyclotomic_poly(m)
    deg = len(phi) - 1
    rows: list[tuple[Fraction, ...]] = []
    for k in range(deg):
        rows.append(tuple(Fraction(1) if i == k else Fraction(0) for i in range(deg)))
    for k in range(deg, 2 * m + 1):
        prev = rows[k - 1]
        shifted = [Fraction(0)] + list(prev[:-1])
        top = prev[-1]
        if top:
            for i in range(deg):
                shifted[i] -= top * phi[i]   # z^deg = -(phi_0 + ... + phi_{deg-1} z^{deg-1})
        rows.append(tuple(shifted))
    return tuple(rows)


def _upoly_xgcd(a: list[Fraction], b: list[Fraction]):
    """Extended gcd in Q[z]: returns (g, s, t) with s*a + t*b = g."""
    def trim(p):
        while p and not p[-1]:
            p.pop()
        return p

    def sub_scaled(p, q, c, shift):
        for i, qc in enumerate(q):
            idx = i + shift
            while len(p) <= idx:
                p.append(Fraction(0))
            p[idx] -= c * qc
        return trim(p)

    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1 = [Fraction(1)], []
    t0, t1 = [], [Fraction(1)]
    while r1:
        while len(r0) >= len(r1) and r0:
            c = r0[-1] / r1[-1]
            shift = len(r0) - len(r1)
            r0 = sub_scaled(r0, r1, c, shift)
            s0 = sub_scaled(s0, s1, c, shift)
            t0 = sub_scaled(t0, t1, c, shift)
        r0, r1, s0, s1, t0, t1 = r1, r0, s1, s0, t1, t0
    return r0, s0, t0


class Cyclotomic:
    """Element of Q(zeta_m) as a vector of rationals modulo Phi_m."""

    __slots__ = ("m", "c")

    def __init__(self, m: int, coeffs):
        deg = len(cyclotomic_poly(m)) - 1
        c = list(coeffs) + [Fraction(0)] * deg
        self.m = m
        self.c = tuple(Fraction(x) for x in c[:deg])

    @classmethod
    def from_int(cls, m: int, k: int) -> "Cyclotomic":
        return cls(m, [Fraction(k)])

    @classmethod
    def from_fraction(cls, m: int, f: Fraction) -> "Cyclotomic":
        return cls(m, [f])

    @classmethod
    def zeta(cls, m: int, k: int = 1) -> "Cyclotomic":
        row = _red_rows(m)[k % m]
        return cls(m, row)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.m != self.m:
                raise ValueError(f"mixed cyclotomic fields Q(zeta_{self.m}), Q(zeta_{other.m})")
            return other
        if isinstance(other, int):
            return Cyclotomic.from_int(self.m, other)
        if isinstance(other, Fraction):
            return Cyclotomic.from_fraction(self.m, other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return Cyclotomic(self.m, [x + y for x, y in zip(self.c, o.c)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, [-x for x in self.c])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        deg = len(self.c)
        conv = [Fraction(0)] * (2 * deg - 1)
        for i, x in enumerate(self.c):
            if not x:
                continue
            for j, y in enumerate(o.c):
                if y:
                    conv[i + j] += x * y
        rows = _red_rows(self.m)
        out = [Fraction(0)] * deg
        for k, v in enumerate(conv):
            if v:
                row = rows[k]
                for i in range(deg):
                    if row[i]:
                        out[i] += v * row[i]
        return Cyclotomic(self.m, out)

    __rmul__ = __mul__

    def inv(self) -> "Cyclotomic":
        if not self:
            raise ZeroDivisionError("inverse of zero in Q(zeta_%d)" % self.m)
        phi = [Fraction(x) for x in cyclotomic_poly(self.m)]
        g, s, _ = _upoly_xgcd(list(self.c), phi)
        # g is a nonzero constant; scale s by 1/g
        c0 = g[0]
        return Cyclotomic(self.m, [x / c0 for x in s])

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self.inv() if k < 0 else self
        k = abs(k)
        out = Cyclotomic.from_int(self.m, 1)
        while k:
            if k & 1:
                out = out * base
            base = base * base if k > 1 else base
            k >>= 1
        return out

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((self.m, self.c))

    def __bool__(self):
        return any(self.c)

    def is_one(self) -> bool:
        return self.c[0] == 1 and not any(self.c[1:])

    def lift(self, target_m: int) -> "Cyclotomic":
        """Image under Q(zeta_m) -> Q(zeta_M), zeta_m -> zeta_M^(M/m)."""
        if target_m % self.m:
            raise ValueError(f"no embedding of Q(zeta_{self.m}) into Q(zeta_{target_m})")
        step = target_m // self.m
        out = Cyclotomic.from_int(target_m, 0)
        for k, v in enumerate(self.c):
            if v:
                out = out + Cyclotomic.zeta(target_m, k * step) * v
        return out

    def __str__(self):
        if not self:
            return "0"
        parts = []
        for k in range(len(self.c) - 1, -1, -1):
            v = self.c[k]
            if not v:
                continue
            if k == 0:
                body = str(abs(v))
            else:
                zs = "z" if k == 1 else f"z^{k}"
                body = zs if abs(v) == 1 else f"{abs(v)} {zs}"
            if not parts:
                parts.append(body if v > 0 else "-" + body)
            else:
                parts.append(("+ " if v > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Cyclotomic({self.m}; {self})"

    def to_json(self):
        return {"m": self.m, "cyclo": [str(x) for x in self.c]}

    @classmethod
    def from_json(cls, obj) -> "Cyclotomic":
        return cls(int(obj["m"]), [Fraction(s) for s in obj["cyclo"]])


Scalar = RationalFunction | Cyclotomic


# --------------------------------------------------------------------------
# specialization and shared helpers
# --------------------------------------------------------------------------

def specialize(s: RationalFunction, spec: ParameterSpec) -> Cyclotomic:
    """Apply the ring map al -> zeta^n_alpha, be -> zeta^n_beta."""
    if not spec.is_root:
        raise ValueError("specialize requires a root-mode ParameterSpec")
    m, na, nb = spec.ell, spec.n_alpha, spec.n_beta

    def ev(p: IPoly) -> Cyclotomic:
        out = Cyclotomic.from_int(m, 0)
        for (i, j), c in p.items():
            out = out + Cyclotomic.zeta(m, (i * na + j * nb) % m) * c
        return out

    dv = ev(s.den)
    if not dv:
        raise SpecializationError(
            f"denominator {_fmt_ipoly(s.den)} vanishes at al=z^{na}, be=z^{nb} (ell={m})")
    return ev(s.num) / dv


def geometric_sum(s: int, x: Scalar) -> Scalar:
    """1 + x + ... + x^(s-1); equals (x^s - 1)/(x - 1) away from x = 1."""
    if s < 0:
        raise ValueError("geometric_sum needs s >= 0")
    acc = x * 0
    power = x * 0 + 1
    for _ in range(s):
        acc = acc + power
        power = power * x
    return acc


class CoefficientField:
    """Constructor hub for scalars of a fixed ParameterSpec."""

    def __init__(self, spec: ParameterSpec):
        self.spec = spec
        if spec.is_root:
            self.zero = Cyclotomic.from_int(spec.ell, 0)
            self.one = Cyclotomic.from_int(spec.ell, 1)
        else:
            self.zero = RationalFunction.from_int(0)
            self.one = RationalFunction.from_int(1)

    def from_int(self, k: int) -> Scalar:
        if self.spec.is_root:
            return Cyclotomic.from_int(self.spec.ell, k)
        return RationalFunction.from_int(k)

    def from_fraction(self, f: Fraction) -> Scalar:
        if self.spec.is_root:
            return Cyclotomic.from_fraction(self.spec.ell, f)
        return RationalFunction.from_fraction(f)

    def ab(self, i: int, j: int) -> Scalar:
        """al^i be^j in the current mode."""
        if self.spec.is_root:
            k = i * self.spec.n_alpha + j * self.spec.n_beta
            return Cyclotomic.zeta(self.spec.ell, k % self.spec.ell)
        return RationalFunction.monomial(i, j)

    def alpha(self, k: int = 1) -> Scalar:
        return self.ab(k, 0)

    def beta(self, k: int = 1) -> Scalar:
        return self.ab(0, k)

    def q(self, k: int = 1) -> Scalar:
        return self.ab(-k, k)

    def zeta(self, k: int = 1) -> Cyclotomic:
        if not self.spec.is_root:
            raise ValueError("zeta only exists in root mode")
        return Cyclotomic.zeta(self.spec.ell, k % self.spec.ell)


def scalar_to_json(s: Scalar):
    return s.to_json()


def scalar_from_json(obj) -> Scalar:
    if "cyclo" in obj:
        return Cyclotomic.from_json(obj)
    return RationalFunction.from_json(obj)
