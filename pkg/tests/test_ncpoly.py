"""Rewriting engine: reduction, confluence reports, graded dimensions."""

import random

from qgl.ncpoly import Gen, NCPoly, RewriteSystem
from qgl.oab import OSession
from qgl.scalars import CoefficientField, ParameterSpec
from qgl.uab import u_session

GEN = ParameterSpec.generic()


def toy_system():
    f = CoefficientField(GEN)
    x, y = Gen("a", 1), Gen("a", 2)
    rs = RewriteSystem([x, y], f.one)
    rs.add_rule((x, y), NCPoly.term((), f.one))
    return rs, x, y, f


def test_reduce_basics():
    m2 = OSession("Mn", 2, GEN)
    f = m2.field
    p = NCPoly.term((m2.gen(1, 2), m2.gen(1, 1)), f.one)
    assert m2.reduce(p) == NCPoly.term((m2.gen(1, 1), m2.gen(1, 2)), f.ab(-1, 0))
    p = NCPoly.term((m2.gen(2, 2), m2.gen(1, 1)), f.one)
    want = (NCPoly.term((m2.gen(1, 1), m2.gen(2, 2)), f.one)
            + NCPoly.term((m2.gen(1, 2), m2.gen(2, 1)), f.beta() - f.alpha()))
    assert m2.reduce(p) == want
    assert m2.reduce(m2.one()) == m2.one()


def test_reduce_idempotent_and_linear():
    m3 = OSession("Mn", 3, GEN)
    f = m3.field
    rng = random.Random(7)
    letters = m3.rs.letters
    for _ in range(25):
        w1 = tuple(rng.choice(letters) for _ in range(rng.randint(0, 4)))
        w2 = tuple(rng.choice(letters) for _ in range(rng.randint(0, 4)))
        p = NCPoly.term(w1, f.ab(1, 0)) + NCPoly.term(w2, f.from_int(2))
        q = NCPoly.term(w2, f.beta())
        rp = m3.reduce(p)
        assert m3.reduce(rp) == rp
        s, t = f.ab(0, 1), f.from_int(-3)
        assert m3.reduce(p.scaled(s) + q.scaled(t)) == \
            m3.reduce(p).scaled(s) + m3.reduce(q).scaled(t)


def test_confluence_no_overlap_toy():
    rs, x, y, f = toy_system()
    assert rs.confluence_check(3) == []


def test_confluence_shipped_presentations():
    assert OSession("Mn", 2, GEN).rs.confluence_check(4) == []
    assert OSession("Mn", 3, GEN).rs.confluence_check(4) == []
    assert OSession("GLn", 2, GEN).rs.confluence_check(5) == []
    assert u_session("U", 2, GEN).rs.confluence_check(6) == []
    assert u_session("U", 3, GEN).rs.confluence_check(6) == []
    rspec = ParameterSpec.root(3, 1, 2)
    for variant in ("Hbar", "Kplus", "Kminus", "Bplus", "Bminus"):
        assert OSession(variant, 2, rspec).rs.confluence_check(6) == []
    assert u_session("u", 2, rspec).rs.confluence_check(6) == []
    assert u_session("uhat", 2, rspec).rs.confluence_check(6) == []
    assert u_session("uhat", 3, rspec).rs.confluence_check(6) == []


def _m2_like_system(row_coeff, diag_coeff):
    f = CoefficientField(GEN)
    x = lambda i, j: Gen("x", i, j)
    letters = [x(1, 1), x(1, 2), x(2, 1), x(2, 2)]
    rs = RewriteSystem(letters, f.one)
    rs.add_rule((x(1, 2), x(1, 1)), NCPoly.term((x(1, 1), x(1, 2)), row_coeff))
    rs.add_rule((x(2, 1), x(1, 1)), NCPoly.term((x(1, 1), x(2, 1)), f.beta()))
    rs.add_rule((x(2, 2), x(1, 2)), NCPoly.term((x(1, 2), x(2, 2)), f.beta()))
    rs.add_rule((x(2, 2), x(2, 1)), NCPoly.term((x(2, 1), x(2, 2)), f.ab(-1, 0)))
    rs.add_rule((x(2, 1), x(1, 2)), NCPoly.term((x(1, 2), x(2, 1)), f.ab(1, 1)))
    rs.add_rule((x(2, 2), x(1, 1)),
                NCPoly.term((x(1, 1), x(2, 2)), f.one)
                + NCPoly.term((x(1, 2), x(2, 1)), diag_coeff))
    return rs


def test_confluence_detects_perturbed_coefficient():
    f = CoefficientField(GEN)
    # deliberately break a q-commutation coefficient of the M_2 relations
    rs = _m2_like_system(f.ab(-1, 0) + f.one, f.beta() - f.alpha())
    assert rs.confluence_check(4) != []
    # unperturbed control at the same bound
    assert _m2_like_system(f.ab(-1, 0), f.beta() - f.alpha()).confluence_check(4) == []
    # the straightening coefficient of the fourth relation is a flat
    # deformation direction: every overlap resolves for any value of it
    assert _m2_like_system(f.ab(-1, 0), f.beta() - f.alpha() + f.one) \
        .confluence_check(6) == []


def test_graded_dimension_u_plus_gl3():
    U = u_session("U", 3, GEN)
    from qgl.cli import make_subsystem
    sub = make_subsystem(U, [g for g in U.rs.letters if g.fam == "e"])
    assert [sub.graded_dimension(d) for d in range(6)] == [1, 2, 4, 6, 9, 12]


def test_irreducible_word_enumeration():
    rs, x, y, f = toy_system()
    words = list(rs.irreducible_words(max_len=3))
    # all words over {x, y} avoiding the factor xy
    assert set(words) == {(), (x,), (y,), (x, x), (y, x), (y, y),
                          (x, x, x), (y, x, x), (y, y, x), (y, y, y)}


def test_order_violating_rule_rejected():
    rs, x, y, f = toy_system()
    import pytest
    with pytest.raises(ValueError):
        rs.add_rule((x,), NCPoly.term((x, y), f.one))
