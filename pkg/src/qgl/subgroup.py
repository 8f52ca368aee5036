"""Subgroup-datum calculus: finite matrix groups, the character lattice of
the diagonal torus, datum validation, dimension formulas, the partial order
and equivalence, and the classification predicates.

A datum is (I_+, I_-, N, Gamma, sigma, delta) with Gamma a finite matrix
group over a cyclotomic field, sigma the inclusion into GL_n, N a subgroup
of the character lattice (Z/ell)^n of the torus of group-likes h_i, and
delta a homomorphism from N to the character group of Gamma.  Characters
take values in Q/Z (a value r stands for the root of unity e^(2 pi i r)),
which keeps every comparison exact.  ell need not be prime: all lattice
reasoning goes through integer Smith normal form, never field division.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .scalars import Cyclotomic, ParameterSpec


class ValidationError(ValueError):
    def __init__(self, problems):
        self.problems = list(problems)
        super().__init__("; ".join(str(p) for p in self.problems))


# ---------------------------------------------------------------------------
# integer Smith normal form (with transforms)
# ---------------------------------------------------------------------------

def smith_normal_form(mat: list[list[int]]):
    """(d, U, V) with U * mat * V diagonal, d_1 | d_2 | ..., d_i >= 0."""
    A = [list(r) for r in mat]
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in A:
            r[i], r[j] = r[j], r[i]
        for r in V:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, c):
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, c):
        for r in A:
            r[dst] += c * r[src]
        for r in V:
            r[dst] += c * r[src]

    def negate_row(i):
        A[i] = [-a for a in A[i]]
        U[i] = [-a for a in U[i]]

    def eliminate_at(t):
        while True:
            piv = None
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    v = abs(A[i][j])
                    if v and (best is None or v < best):
                        best, piv = v, (i, j)
            if piv is None:
                return False
            swap_rows(t, piv[0])
            swap_cols(t, piv[1])
            clean = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(t, i, -(A[i][t] // A[t][t]))
                    if A[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(t, j, -(A[t][j] // A[t][t]))
                    if A[t][j]:
                        clean = False
            if clean:
                if A[t][t] < 0:
                    negate_row(t)
                return True

    rank = 0
    for t in range(min(m, n)):
        if not eliminate_at(t):
            break
        rank += 1

    # enforce the divisibility chain d_i | d_(i+1)
    stable = False
    while not stable:
        stable = True
        for i in range(rank - 1):
            a, b = A[i][i], A[i + 1][i + 1]
            if a and b % a:
                add_col(i + 1, i, 1)
                for t in range(i, rank):
                    eliminate_at(t)
                stable = False
                break
    d = [A[i][i] for i in range(min(m, n))]
    return d, U, V


def solve_homogeneous_mod(rows, ell: int, n: int):
    """Generators of {t in (Z/ell)^n : rows * t = 0 (mod ell)} (t a column)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [tuple(1 if i == j else 0 for j in range(n)) for i in range(n)]
    d, U, V = smith_normal_form(rows)
    k = len(d)
    gens = []
    for j in range(n):
        dj = d[j] if j < k else 0
        step = ell // math.gcd(dj, ell) if dj else 1
        g = tuple(V[i][j] * step % ell for i in range(n))
        if any(g):
            gens.append(g)
    return gens


def left_kernel_mod(rows, ell: int):
    """Generators of {x in (Z/ell)^m : x * rows = 0 (mod ell)}."""
    m = len(rows)
    cols = len(rows[0]) if rows else 0
    transposed = [[rows[i][j] for i in range(m)] for j in range(cols)]
    return solve_homogeneous_mod(transposed, ell, m)


class ZmodSubgroup:
    """Subgroup of (Z/ell)^n given by generator vectors."""

    def __init__(self, ell: int, n: int, gens):
        self.ell = ell
        self.n = n
        self.gens = [tuple(x % ell for x in g) for g in gens]
        for g in self.gens:
            if len(g) != n:
                raise ValueError("generator length mismatch")
        self._snf = None

    def _lattice_snf(self):
        if self._snf is None:
            rows = [list(g) for g in self.gens]
            rows += [[self.ell if i == j else 0 for j in range(self.n)]
                     for i in range(self.n)]
            self._snf = smith_normal_form(rows)
        return self._snf

    @property
    def order(self) -> int:
        d, _, _ = self._lattice_snf()
        idx = 1
        for x in d:
            idx *= x
        return self.ell ** self.n // idx

    def contains(self, vec) -> bool:
        vec = tuple(x % self.ell for x in vec)
        d, _, V = self._lattice_snf()
        tv = [sum(vec[i] * V[i][j] for i in range(self.n)) for j in range(self.n)]
        return all(tv[j] % d[j] == 0 for j in range(self.n))

    def elements(self):
        seen = {(0,) * self.n}
        frontier = [(0,) * self.n]
        while frontier:
            cur = frontier.pop()
            for g in self.gens:
                nxt = tuple((a + b) % self.ell for a, b in zip(cur, g))
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return sorted(seen)

    def is_subgroup_of(self, other: "ZmodSubgroup") -> bool:
        return all(other.contains(g) for g in self.gens)

    def __eq__(self, other):
        if not isinstance(other, ZmodSubgroup):
            return NotImplemented
        return self.is_subgroup_of(other) and other.is_subgroup_of(self)

    def annihilator(self) -> "ZmodSubgroup":
        """{t : <g, t> = 0 mod ell for every g in the subgroup}."""
        return ZmodSubgroup(self.ell, self.n,
                            solve_homogeneous_mod(self.gens, self.ell, self.n))


# ---------------------------------------------------------------------------
# finite matrix groups over cyclotomic entries
# ---------------------------------------------------------------------------

def _as_cyclotomic(entry, m: int) -> Cyclotomic:
    if isinstance(entry, Cyclotomic):
        return entry.lift(m)
    if isinstance(entry, int):
        return Cyclotomic.from_int(m, entry)
    if isinstance(entry, Fraction):
        return Cyclotomic.from_fraction(m, entry)
    raise TypeError(f"bad matrix entry {entry!r}")


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(1, n)),
                           start=a[i][0] * b[0][j]) for j in range(n))
                 for i in range(n))


class ClosureCapExceeded(RuntimeError):
    pass


class FiniteMatrixGroup:
    """Closure of a list of invertible matrices over Q(zeta_m)."""

    def __init__(self, n: int, generators, zeta_order: int = 1, cap: int = 10_000):
        self.n = n
        ms = [zeta_order]
        for g in generators:
            for row in g:
                for e in row:
                    if isinstance(e, Cyclotomic):
                        ms.append(e.m)
        self.m = math.lcm(*ms)
        self.gens = [tuple(tuple(_as_cyclotomic(e, self.m) for e in row) for row in g)
                     for g in generators]
        for g in self.gens:
            if len(g) != n or any(len(r) != n for r in g):
                raise ValueError("generator matrices must be n x n")
        one = Cyclotomic.from_int(self.m, 1)
        zero = Cyclotomic.from_int(self.m, 0)
        self.identity = tuple(tuple(one if i == j else zero for j in range(n))
                              for i in range(n))
        self.elements = self._closure(cap)
        self.index = {g: k for k, g in enumerate(self.elements)}
        self._char_cache = None

    def _closure(self, cap):
        seen = {self.identity}
        order = [self.identity]
        frontier = [self.identity]
        while frontier:
            cur = frontier.pop()
            for g in self.gens:
                nxt = _mat_mul(cur, g)
                if nxt not in seen:
                    if len(seen) >= cap:
                        raise ClosureCapExceeded(f"group closure exceeded cap {cap}")
                    seen.add(nxt)
                    order.append(nxt)
                    frontier.append(nxt)
        for g in self.gens:
            if not any(_mat_mul(g, h) == self.identity for h in order):
                raise ValueError("generator matrix has no inverse in the closure")
        return order

    def __len__(self):
        return len(self.elements)

    def inverse(self, g):
        for h in self.elements:
            if _mat_mul(g, h) == self.identity:
                return h
        raise ValueError("element has no inverse in the closure")

    def commutator_subgroup(self):
        comms = {self.identity}
        for g in self.elements:
            gi = self.inverse(g)
            for h in self.elements:
                hi = self.inverse(h)
                comms.add(_mat_mul(_mat_mul(g, h), _mat_mul(gi, hi)))
        seen = set(comms)
        frontier = list(seen)
        while frontier:
            cur = frontier.pop()
            for c in comms:
                nxt = _mat_mul(cur, c)
                if nxt not in seen:
                    seen.add(nxt)
                    frontier.append(nxt)
        return seen

    def characters(self) -> list[tuple[Fraction, ...]]:
        """All one-dimensional characters as Q/Z value tuples over elements."""
        if self._char_cache is not None:
            return self._char_cache
        orders = []
        for g in self.gens:
            k, cur = 1, g
            while cur != self.identity:
                cur = _mat_mul(cur, g)
                k += 1
            orders.append(k)
        chars = []
        for values in itertools.product(*[range(o) for o in orders]):
            assign = {self.identity: Fraction(0)}
            ok = True
            frontier = [self.identity]
            while frontier and ok:
                cur = frontier.pop()
                for g, o, v in zip(self.gens, orders, values):
                    nxt = _mat_mul(cur, g)
                    val = (assign[cur] + Fraction(v, o)) % 1
                    prev = assign.get(nxt)
                    if prev is None:
                        assign[nxt] = val
                        frontier.append(nxt)
                    elif prev != val:
                        ok = False
                        break
            if ok:
                chars.append(tuple(assign[g] for g in self.elements))
        uniq = sorted(set(chars))
        expected = len(self) // len(self.commutator_subgroup())
        if len(uniq) != expected:
            raise RuntimeError("character count disagrees with the abelianization")
        self._char_cache = uniq
        return uniq

    def abelianization_invariants(self) -> list[int]:
        """Invariant factors of Gamma/[Gamma,Gamma] via Smith normal form of
        the relation lattice collected from a coset BFS."""
        m = len(self.gens)
        if m == 0:
            return []
        K = self.commutator_subgroup()

        def coset(g):
            return frozenset(_mat_mul(g, k) for k in K)

        start = coset(self.identity)
        vecs = {start: (0,) * m}
        frontier = [self.identity]
        reps = {start: self.identity}
        relations = []
        seen_reps = {start}
        while frontier:
            cur = frontier.pop()
            cvec = vecs[coset(cur)]
            for i, g in enumerate(self.gens):
                nxt = _mat_mul(cur, g)
                cs = coset(nxt)
                nvec = tuple(v + (1 if k == i else 0) for k, v in enumerate(cvec))
                if cs not in seen_reps:
                    seen_reps.add(cs)
                    vecs[cs] = nvec
                    reps[cs] = nxt
                    frontier.append(nxt)
                else:
                    rel = tuple(a - b for a, b in zip(nvec, vecs[cs]))
                    if any(rel):
                        relations.append(rel)
        d, _, _ = smith_normal_form([list(r) for r in relations])
        invs = [x for x in d if x not in (0, 1)]
        prod = 1
        for x in invs:
            prod *= x
        if prod != len(seen_reps):
            raise RuntimeError("relation lattice does not present the abelianization")
        return invs

    def is_diagonal(self) -> bool:
        zero = Cyclotomic.from_int(self.m, 0)
        return all(g[i][j] == zero
                   for g in self.gens for i in range(self.n) for j in range(self.n)
                   if i != j)

    def trivial_character(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(0) for _ in self.elements)


def character_group(G: FiniteMatrixGroup) -> dict:
    """Presentation of the character group: invariant factors + value table."""
    return {"invariant_factors": G.abelianization_invariants(),
            "order": len(G.characters()),
            "characters": G.characters()}


# ---------------------------------------------------------------------------
# position sets and the block subgroup pattern
# ---------------------------------------------------------------------------

def position_sets(n: int, I_plus, I_minus):
    """(script-I_+, script-I_-, L pattern) from the simple-root subsets."""
    Ip, Im = set(I_plus), set(I_minus)
    for x in Ip | Im:
        if not 1 <= x < n:
            raise ValueError(f"simple-root index {x} out of range for n={n}")
    upper = {(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)
             if any(k not in Ip for k in range(i, j))}
    lower = {(i, j) for j in range(1, n + 1) for i in range(j + 1, n + 1)
             if any(k not in Im for k in range(j, i))}
    pattern = tuple(tuple((i, j) not in upper and (i, j) not in lower
                          for j in range(1, n + 1)) for i in range(1, n + 1))
    return upper, lower, pattern


# ---------------------------------------------------------------------------
# the datum itself
# ---------------------------------------------------------------------------

@dataclass
class SubgroupDatum:
    n: int
    spec: ParameterSpec
    I_plus: tuple[int, ...]
    I_minus: tuple[int, ...]
    N: ZmodSubgroup
    Gamma: FiniteMatrixGroup
    delta: list[tuple[Fraction, ...]] = field(default_factory=list)
    name: str = ""

    def __post_init__(self):
        self.I_plus = tuple(sorted(set(self.I_plus)))
        self.I_minus = tuple(sorted(set(self.I_minus)))
        if not self.delta:
            self.delta = [self.Gamma.trivial_character() for _ in self.N.gens]


@dataclass
class DatumInvariants:
    positions_plus: set
    positions_minus: set
    L_pattern: tuple
    M_I: ZmodSubgroup
    Sigma: ZmodSubgroup
    dim_uhat_l: int
    dim_A_l_sigma: int
    dim_H: int
    dim_A_D: int
    flags: dict


def datum_validate(d: SubgroupDatum) -> DatumInvariants:
    """Check every datum invariant; raises ValidationError with witnesses."""
    spec = d.spec
    if not spec.is_root:
        raise ValidationError(["datum validation requires a root-mode spec"])
    ell, na, nb = spec.ell, spec.n_alpha, spec.n_beta
    if d.N.ell != ell or d.N.n != d.n:
        raise ValidationError(
            [f"N lives in (Z/{d.N.ell})^{d.N.n}, expected (Z/{ell})^{d.n}"])
    try:
        up, low, pattern = position_sets(d.n, d.I_plus, d.I_minus)
    except ValueError as exc:
        raise ValidationError([str(exc)]) from None

    problems = []
    # Sigma-compatibility (linear, so the generators suffice)
    for g in d.N.gens:
        for i in d.I_plus:
            if (na * g[i - 1] + nb * g[i]) % ell:
                problems.append(
                    f"chi={g} breaks n_a c_{i} + n_b c_{i + 1} = 0 (mod {ell}), i={i} in I_+")
        for j in d.I_minus:
            if (nb * g[j - 1] + na * g[j]) % ell:
                problems.append(
                    f"chi={g} breaks n_b c_{j} + n_a c_{j + 1} = 0 (mod {ell}), j={j} in I_-")

    # Gamma respects the block pattern of L (a group condition, so generators suffice)
    zero = Cyclotomic.from_int(d.Gamma.m, 0)
    for gi, g in enumerate(d.Gamma.gens):
        for (i, j) in sorted(up | low):
            if g[i - 1][j - 1] != zero:
                problems.append(
                    f"Gamma generator {gi} has a nonzero entry at {(i, j)} in script-I")

    # delta extends to a homomorphism N -> Gamma^
    if len(d.delta) != len(d.N.gens):
        problems.append("delta must list one Gamma-character per N generator")
    else:
        chars = set(d.Gamma.characters())
        for k, ch in enumerate(d.delta):
            if tuple(v % 1 for v in ch) not in chars:
                problems.append(f"delta[{k}] is not a character of Gamma")
        for k, ch in enumerate(d.delta):
            if any((ell * v) % 1 for v in ch):
                problems.append(
                    f"delta[{k}] is not {ell}-torsion, but {ell} * gen = 0 in N")
        if d.N.gens:
            for rel in left_kernel_mod([list(g) for g in d.N.gens], ell):
                acc = tuple(Fraction(0) for _ in d.Gamma.elements)
                for c, ch in zip(rel, d.delta):
                    acc = tuple((a + c * v) % 1 for a, v in zip(acc, ch))
                if any(acc):
                    problems.append(f"delta breaks the N-relation {rel}")

    # M_I and the containment N <= M_I (equivalent to Sigma-compatibility)
    forms = []
    for i in d.I_plus:
        row = [0] * d.n
        row[i - 1], row[i] = na, nb
        forms.append(tuple(row))
    for j in d.I_minus:
        row = [0] * d.n
        row[j - 1], row[j] = nb, na
        forms.append(tuple(row))
    M_I = ZmodSubgroup(ell, d.n, solve_homogeneous_mod(forms, ell, d.n))
    if not problems and not d.N.is_subgroup_of(M_I):
        problems.append("N is not contained in M_I")

    if problems:
        raise ValidationError(problems)

    Sigma = d.N.annihilator()
    dim_uhat_l = ell ** (d.n * d.n - len(up | low))
    dim_H = ell ** (len(d.I_plus) + len(d.I_minus)) * (ell ** d.n // d.N.order)
    return DatumInvariants(
        positions_plus=up, positions_minus=low, L_pattern=pattern,
        M_I=M_I, Sigma=Sigma,
        dim_uhat_l=dim_uhat_l,
        dim_A_l_sigma=len(d.Gamma) * dim_uhat_l,
        dim_H=dim_H,
        dim_A_D=len(d.Gamma) * dim_H,
        flags=predicates(d))


def datum_dims(d: SubgroupDatum) -> dict:
    inv = datum_validate(d)
    return {"dim_uhat_l": inv.dim_uhat_l, "dim_A_l_sigma": inv.dim_A_l_sigma,
            "dim_H": inv.dim_H, "dim_A_D": inv.dim_A_D}


def predicates(d: SubgroupDatum) -> dict:
    """Classification flags of the quotient attached to the datum."""
    Ip, Im = set(d.I_plus), set(d.I_minus)
    semisimple = not (Ip | Im)
    pointed_possible = not (Ip & Im)
    dual_pointed_possible = d.Gamma.is_diagonal()
    pulenta = bool(Ip & Im) and not d.Gamma.is_diagonal()
    I = sorted(Ip)
    connected = Ip == Im and bool(I) and all(b - a == 1 for a, b in zip(I, I[1:]))
    return {
        "semisimple": semisimple,
        "pointed_possible": pointed_possible,
        "dual_pointed_possible": dual_pointed_possible,
        "pulenta": pulenta,
        "pulenta_strong": pulenta and connected,
    }


def datum_leq(d: SubgroupDatum, dp: SubgroupDatum) -> bool:
    """d <= d' in the quotient order: I'_+- inside I_+-, N inside N',
    sigma'(Gamma') inside sigma(Gamma) (tau is forced to be the inclusion
    since sigma is injective) and delta' o eta = tau^t o delta."""
    if d.n != dp.n or d.spec != dp.spec:
        raise ValueError("data live over different ambient quantum groups")
    if not set(dp.I_plus) <= set(d.I_plus):
        return False
    if not set(dp.I_minus) <= set(d.I_minus):
        return False
    if not d.N.is_subgroup_of(dp.N):
        return False
    m = math.lcm(d.Gamma.m, dp.Gamma.m)

    def lift(M):
        return tuple(tuple(e.lift(m) for e in row) for row in M)

    delems = {lift(g): k for k, g in enumerate(d.Gamma.elements)}
    tau = []
    for g in dp.Gamma.elements:
        k = delems.get(lift(g))
        if k is None:
            return False
        tau.append(k)
    for gen, ch in zip(d.N.gens, d.delta):
        chp = evaluate_delta(dp, gen)
        pulled = tuple(ch[tau[k]] for k in range(len(dp.Gamma.elements)))
        if chp != pulled:
            return False
    return True


def evaluate_delta(d: SubgroupDatum, vec) -> tuple[Fraction, ...]:
    """delta at an arbitrary element of N (written in the generators)."""
    ell = d.spec.ell
    vec = tuple(v % ell for v in vec)
    m = len(d.N.gens)
    if m == 0:
        if any(vec):
            raise ValueError("element not in N")
        return d.Gamma.trivial_character()
    for cs in itertools.product(range(ell), repeat=m):
        acc = [0] * d.n
        for c, g in zip(cs, d.N.gens):
            acc = [(a + c * x) % ell for a, x in zip(acc, g)]
        if tuple(acc) == vec:
            out = tuple(Fraction(0) for _ in d.Gamma.elements)
            for c, ch in zip(cs, d.delta):
                out = tuple((a + c * v) % 1 for a, v in zip(out, ch))
            return out
    raise ValueError("element not in N")


def datum_compare(d: SubgroupDatum, dp: SubgroupDatum) -> str:
    le = datum_leq(d, dp)
    ge = datum_leq(dp, d)
    if le and ge:
        return "equivalent"
    if le:
        return "leq"
    if ge:
        return "geq"
    return "incomparable"


# ---------------------------------------------------------------------------
# serialization and the shipped corpus
# ---------------------------------------------------------------------------

def _entry_to_json(e: Cyclotomic):
    if not any(e.c[1:]):
        fr = e.c[0]
        return int(fr) if fr.denominator == 1 else str(fr)
    return {"m": e.m, "cyclo": [str(x) for x in e.c]}


def datum_to_json(d: SubgroupDatum) -> dict:
    return {
        "n": d.n, "ell": d.spec.ell, "na": d.spec.n_alpha, "nb": d.spec.n_beta,
        "Iplus": list(d.I_plus), "Iminus": list(d.I_minus),
        "N": [list(g) for g in d.N.gens],
        "zeta_order": d.Gamma.m,
        "Gamma": [[[_entry_to_json(e) for e in row] for row in g]
                  for g in d.Gamma.gens],
        "delta": [[str(v) for v in ch] for ch in d.delta],
        "name": d.name,
    }


def datum_from_json(obj: dict) -> SubgroupDatum:
    spec = ParameterSpec.root(int(obj["ell"]), int(obj["na"]), int(obj["nb"]))
    n = int(obj["n"])
    m = int(obj.get("zeta_order", 1))

    def entry(e):
        if isinstance(e, dict):
            return Cyclotomic(int(e["m"]), [Fraction(s) for s in e["cyclo"]])
        if isinstance(e, str):
            return Fraction(e)
        return int(e)

    gamma = FiniteMatrixGroup(
        n, [[[entry(e) for e in row] for row in g] for g in obj["Gamma"]],
        zeta_order=m)
    N = ZmodSubgroup(spec.ell, n, [tuple(int(x) for x in g) for g in obj["N"]])
    delta = [tuple(Fraction(s) for s in ch) for ch in obj.get("delta", [])]
    return SubgroupDatum(n=n, spec=spec, I_plus=tuple(obj["Iplus"]),
                         I_minus=tuple(obj["Iminus"]), N=N, Gamma=gamma,
                         delta=delta, name=obj.get("name", ""))


def standard_corpus(spec: ParameterSpec | None = None) -> list[SubgroupDatum]:
    """>= 20 validated data at n = 2 used by the lattice test battery."""
    spec = spec or ParameterSpec.root(3, 1, 2)
    ell = spec.ell
    n = 2

    def diag(a, b):
        return [[a, 0], [0, b]]

    zeta = Cyclotomic.zeta(ell)
    swap = [[0, 1], [1, 0]]
    trivial = FiniteMatrixGroup(2, [])
    gam_swap = FiniteMatrixGroup(2, [swap])
    gam_diag2 = FiniteMatrixGroup(2, [diag(-1, 1)])
    gam_diag_z = FiniteMatrixGroup(2, [diag(zeta, 1)])
    gam_diag_zz = FiniteMatrixGroup(2, [diag(zeta, zeta)])
    gam_diag22 = FiniteMatrixGroup(2, [diag(-1, 1), diag(1, -1)])
    gam_swap_z = FiniteMatrixGroup(2, [swap, diag(zeta, zeta)])

    out = []

    def mk(name, Ip, Im, Ngens, gamma, delta=None):
        N = ZmodSubgroup(ell, n, [tuple(g) for g in Ngens])
        d = SubgroupDatum(n=n, spec=spec, I_plus=tuple(Ip), I_minus=tuple(Im),
                          N=N, Gamma=gamma,
                          delta=[tuple(ch) for ch in delta] if delta else [],
                          name=name)
        datum_validate(d)
        out.append(d)
        return d

    # torus-type data (I empty; Gamma diagonal; N arbitrary)
    for Ngens in ([], [(1, 1)], [(1, 0)], [(0, 1)], [(1, 2)], [(1, 0), (0, 1)]):
        mk(f"torus N={Ngens}", (), (), Ngens, trivial)
    mk("torus diag2", (), (), [], gam_diag2)
    mk("torus diag2 N=(1,1)", (), (), [(1, 1)], gam_diag2)
    mk("torus diagz", (), (), [], gam_diag_z)
    mk("torus diagzz N=(1,2)", (), (), [(1, 2)], gam_diag_zz)
    mk("torus diag22", (), (), [], gam_diag22)

    # one-sided Borel data (M_I = {(c, c)} on either side at (3,1,2))
    mk("borel+ N=0", (1,), (), [], trivial)
    mk("borel+ N=M_I", (1,), (), [(1, 1)], trivial)
    mk("borel- N=0", (), (1,), [], trivial)
    mk("borel- N=M_I", (), (1,), [(1, 1)], trivial)
    mk("borel+ diag2", (1,), (), [], gam_diag2)

    # full data: I_+ = I_- = {1}
    mk("full N=0 trivial", (1,), (1,), [], trivial)
    mk("full swap (pulenta)", (1,), (1,), [], gam_swap)
    mk("full N=(1,1)", (1,), (1,), [(1, 1)], trivial)
    mk("full diag2", (1,), (1,), [], gam_diag2)
    mk("full diagz", (1,), (1,), [], gam_diag_z)
    mk("full swap*z", (1,), (1,), [], gam_swap_z)

    # nontrivial delta: the character group needs ell-torsion
    ch3 = [c for c in gam_diag_z.characters() if any(c)][0]
    mk("full diagz delta", (1,), (1,), [(1, 1)], gam_diag_z, delta=[ch3])
    ch6 = [c for c in gam_swap_z.characters()
           if any(c) and all((ell * v) % 1 == 0 for v in c)][0]
    mk("full swap*z delta", (1,), (1,), [(1, 1)], gam_swap_z, delta=[ch6])
    return out
