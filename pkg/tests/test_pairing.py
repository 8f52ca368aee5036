"""Hopf pairing: table values, well-definedness, radicals, Gram ranks."""

from qgl.ncpoly import Gen, NCPoly
from qgl.oab import GLElement, session
from qgl.pairing import (PairingContext, _power, em_xn_closed_form_check,
                         em_xn_diagonal_check, gram_matrix, gram_rank,
                         pairing_welldefined_check, radical_check)
from qgl.scalars import ParameterSpec, geometric_sum
from qgl.uab import antipode_U, root_vector_expand, u_session

GEN = ParameterSpec.generic()
RSPEC = ParameterSpec.root(3, 1, 2)


def ctx_for(n, spec=GEN):
    return PairingContext(u_session("U", n, spec), session("GLn", n, spec))


def test_generator_table():
    ctx = ctx_for(2)
    f = ctx.field
    x = lambda i, j: NCPoly.term((ctx.o.gen(i, j),), f.one)
    u = lambda g: NCPoly.term((g,), f.one)
    assert ctx.pair(u(Gen("a", 1)), x(1, 1)) == f.alpha()
    assert ctx.pair(u(Gen("a", 1)), x(2, 2)) == f.one
    assert ctx.pair(u(Gen("b", 2)), x(2, 2)) == f.beta()
    assert ctx.pair(u(Gen("a", 1)), x(1, 2)) == f.zero
    assert ctx.pair(u(Gen("e", 1, 1)), x(1, 2)) == f.one
    assert ctx.pair(u(Gen("f", 1, 1)), x(2, 1)) == f.one
    assert ctx.pair(NCPoly.term((), f.one), NCPoly.term((), f.one)) == f.one


def test_pair_e_f_closed_forms_n4():
    ctx = ctx_for(4)
    f = ctx.field
    for k in range(1, 4):
        for l in range(1, k + 1):
            E = root_vector_expand(ctx.u, "E", k, l)
            F = root_vector_expand(ctx.u, "F", k, l)
            for i in range(1, 5):
                for j in range(1, 5):
                    x = NCPoly.term((ctx.o.gen(i, j),), f.one)
                    wantE = ((-f.one) ** (k - l) * f.ab(l - k, 0)
                             if (l == i and k + 1 == j) else f.zero)
                    wantF = f.one if (k + 1 == i and l == j) else f.zero
                    assert ctx.pair(E, x) == wantE
                    assert ctx.pair(F, x) == wantF


def test_well_definedness():
    for n in (2, 3):
        assert pairing_welldefined_check(ctx_for(n), 2) == []


def test_pair_against_g_inverse():
    ctx = ctx_for(2)
    f = ctx.field
    gi = GLElement(ctx.o, 1, ctx.o.one())
    for g in ctx.u.rs.letters:
        u = NCPoly.term((g,), f.one)
        lhs = ctx.pair(u, gi)
        rhs = ctx.pair(antipode_U(ctx.u, u), NCPoly.term((), f.one) * ctx.o.det)
        assert lhs == rhs
    # <a1 a2, g^-1 g> should equal epsilon = 1
    u = NCPoly.term((Gen("a", 1), Gen("a", 2)), f.one)
    prod = GLElement(ctx.o, 1, ctx.o.det)
    assert ctx.pair(u, prod) == f.one


def test_radical_examples():
    uh = u_session("uhat", 2, RSPEC)
    gl = session("GLn", 2, RSPEC)
    ctx = PairingContext(uh, gl)
    f = ctx.field
    # right radical: x_st^ell - d_st, against the full uhat basis
    from qgl.uab import finite_basis
    _, words = finite_basis(uh)
    basis = list(words)
    for s in (1, 2):
        for t in (1, 2):
            cand = NCPoly.term((gl.gen(s, t),) * 3, f.one)
            if s == t:
                cand = cand - gl.one()
            ok, bad = radical_check(ctx, "right", cand, words=basis)
            assert ok, (s, t, bad[:2])
    # left radical: h^ell - 1, h^na a^-1 - 1, E^ell, F^ell against Hbar basis
    U = u_session("U", 2, RSPEC)
    ctxU = PairingContext(U, gl)
    hb = session("Hbar", 2, RSPEC)
    owords = [tuple(Gen("x", g.i, g.j) for g in w) for w in hb.rs.irreducible_words()]
    h1 = (Gen("a_inv", 1), Gen("b", 1))
    cands = [
        NCPoly.term(h1 * 3, f.one) - NCPoly.term((), f.one),
        NCPoly.term(h1 * 1 + (Gen("a_inv", 1),), f.one) - NCPoly.term((), f.one),
        NCPoly.term(h1 * 2 + (Gen("b_inv", 1),), f.one) - NCPoly.term((), f.one),
        _power(U, root_vector_expand(U, "E", 1, 1), 3),
        _power(U, root_vector_expand(U, "F", 1, 1), 3),
    ]
    for cand in cands:
        ok, bad = radical_check(ctxU, "left", U.reduce(cand), words=owords)
        assert ok, bad[:2]


def test_left_radical_E_at_n3():
    U = u_session("U", 3, RSPEC)
    gl = session("GLn", 3, RSPEC)
    ctx = PairingContext(U, gl)
    E = _power(U, root_vector_expand(U, "E", 2, 1), 3)
    ok, bad = radical_check(ctx, "left", E)
    assert ok, bad


def test_torus_gram_block_is_vandermonde():
    uh = u_session("uhat", 2, RSPEC)
    gl = session("GLn", 2, RSPEC)
    ctx = PairingContext(uh, gl)
    f = ctx.field
    u_words = [(Gen("h", 1),) * r for r in range(3)]
    o_words = [(gl.gen(1, 1),) * e for e in range(3)]
    M = gram_matrix(ctx, u_words, o_words)
    for r in range(3):
        for e in range(3):
            assert M[r][e] == f.q(r * e)
    assert gram_rank(M, f.one) == 3


def test_em_xn_examples():
    rep = em_xn_diagonal_check(2, RSPEC)
    assert rep["size"] == 3
    assert rep["off_diagonal_zero"] and rep["diagonal_nonzero"]
    f = u_session("uhat", 2, RSPEC).field
    # diagonal entries: 1, <E11, xb12> = 1, closed form at r = 2
    assert rep["diagonal"][0] == f.one
    assert rep["diagonal"][1] == f.one
    want = f.ab(0, 1) * geometric_sum(2, f.ab(2, 0))
    assert rep["diagonal"][2] == want
    assert em_xn_closed_form_check(3, RSPEC, 2, 2)


def test_axiom_spot_checks_root_mode():
    # the pairing descends to uhat x Hbar: spot-check axiom (i) there
    uh = u_session("uhat", 2, RSPEC)
    gl = session("GLn", 2, RSPEC)
    ctx = PairingContext(uh, gl)
    f = ctx.field
    u = NCPoly.term((Gen("e", 1, 1), Gen("h", 1)), f.one)
    x = NCPoly.term((gl.gen(1, 1),), f.one)
    y = NCPoly.term((gl.gen(1, 2),), f.one)
    lhs = ctx.pair(u, gl.reduce(x * y))
    rhs = f.zero
    for (u1, u2), c in uh.coproduct_word((Gen("e", 1, 1), Gen("h", 1))).items():
        rhs = rhs + c * ctx.pair(NCPoly.term(u1, f.one), x) \
            * ctx.pair(NCPoly.term(u2, f.one), y)
    assert lhs == rhs
