"""Subgroup-datum calculus: lattices, groups, validation, order, predicates."""

import json

import pytest

from qgl.scalars import Cyclotomic, ParameterSpec
from qgl.subgroup import (FiniteMatrixGroup, SubgroupDatum, ValidationError,
                          ZmodSubgroup, character_group, datum_compare,
                          datum_dims, datum_from_json, datum_leq,
                          datum_to_json, datum_validate, evaluate_delta,
                          position_sets, predicates, smith_normal_form,
                          solve_homogeneous_mod, standard_corpus)

RSPEC = ParameterSpec.root(3, 1, 2)


def test_smith_normal_form():
    for mat in ([[2, 0], [0, 3]], [[4, 6], [2, 8]], [[1, 2, 3], [4, 5, 6]],
                [[0, 0], [0, 0]], [[6]], [[2, 4], [6, 8], [10, 12]]):
        d, U, V = smith_normal_form(mat)
        m, n = len(mat), len(mat[0])
        # U mat V is diagonal with the reported entries
        prod = [[sum(U[i][a] * mat[a][b] for a in range(m)) for b in range(n)]
                for i in range(m)]
        prod = [[sum(prod[i][b] * V[b][j] for b in range(n)) for j in range(n)]
                for i in range(m)]
        for i in range(m):
            for j in range(n):
                want = d[i] if i == j and i < len(d) else 0
                assert prod[i][j] == want
        for i in range(len(d) - 1):
            if d[i]:
                assert d[i + 1] % d[i] == 0
    assert smith_normal_form([[2, 0], [0, 3]])[0] == [1, 6]


def test_zmod_subgroup():
    N = ZmodSubgroup(3, 2, [(1, 1)])
    assert N.order == 3
    assert N.contains((2, 2)) and not N.contains((1, 0))
    assert set(N.elements()) == {(0, 0), (1, 1), (2, 2)}
    ann = N.annihilator()
    assert ann.order == 3
    assert all((a + b) % 3 == 0 for (a, b) in ann.elements())
    full = ZmodSubgroup(3, 2, [(1, 0), (0, 1)])
    assert full.order == 9
    assert N.is_subgroup_of(full) and not full.is_subgroup_of(N)
    # composite modulus: Smith-style reasoning, no field division
    M = ZmodSubgroup(9, 2, [(3, 0), (0, 1)])
    assert M.order == 27
    assert M.contains((6, 5)) and not M.contains((1, 0))


def test_solve_homogeneous():
    sols = solve_homogeneous_mod([(1, 2)], 3, 2)
    sub = ZmodSubgroup(3, 2, sols)
    assert sub.order == 3
    assert all((a + 2 * b) % 3 == 0 for (a, b) in sub.elements())


def test_position_sets_examples():
    up, low, pattern = position_sets(2, [], [])
    assert up == {(1, 2)} and low == {(2, 1)}
    assert pattern == ((True, False), (False, True))
    up, low, _ = position_sets(2, [1], [1])
    assert up == set() and low == set()
    up, low, _ = position_sets(3, [1], [])
    assert up == {(1, 3), (2, 3)}
    assert low == {(2, 1), (3, 1), (3, 2)}
    with pytest.raises(ValueError):
        position_sets(2, [2], [])


def test_matrix_group_closures():
    triv = FiniteMatrixGroup(2, [])
    assert len(triv) == 1
    swap = FiniteMatrixGroup(2, [[[0, 1], [1, 0]]])
    assert len(swap) == 2
    assert character_group(swap)["invariant_factors"] == [2]
    s3 = FiniteMatrixGroup(3, [[[0, 1, 0], [1, 0, 0], [0, 0, 1]],
                               [[0, 0, 1], [1, 0, 0], [0, 1, 0]]])
    assert len(s3) == 6
    assert character_group(s3)["invariant_factors"] == [2]
    assert len(character_group(s3)["characters"]) == 2
    z = Cyclotomic.zeta(3)
    dz = FiniteMatrixGroup(2, [[[z, 0], [0, 1]]])
    assert len(dz) == 3 and dz.is_diagonal()
    assert character_group(dz)["invariant_factors"] == [3]
    prod = FiniteMatrixGroup(2, [[[-1, 0], [0, 1]], [[1, 0], [0, -1]]])
    assert character_group(prod)["invariant_factors"] == [2, 2]


def test_closure_cap():
    from qgl.subgroup import ClosureCapExceeded
    z = Cyclotomic.zeta(7)
    with pytest.raises(ClosureCapExceeded):
        FiniteMatrixGroup(2, [[[z, 0], [0, 1]]], cap=5)


def test_datum_validation_examples():
    triv = FiniteMatrixGroup(2, [])
    ok = SubgroupDatum(2, RSPEC, (1,), (1,), ZmodSubgroup(3, 2, [(1, 1)]), triv)
    inv = datum_validate(ok)
    assert inv.M_I.order == 3
    assert set(inv.M_I.elements()) == {(0, 0), (1, 1), (2, 2)}
    bad = SubgroupDatum(2, RSPEC, (1,), (1,), ZmodSubgroup(3, 2, [(1, 0)]), triv)
    with pytest.raises(ValidationError) as err:
        datum_validate(bad)
    assert any("(1, 0)" in p for p in err.value.problems)
    # trivial datum validates
    datum_validate(SubgroupDatum(2, RSPEC, (), (), ZmodSubgroup(3, 2, []), triv))
    # pattern violation: swap matrix with I empty
    swap = FiniteMatrixGroup(2, [[[0, 1], [1, 0]]])
    with pytest.raises(ValidationError):
        datum_validate(SubgroupDatum(2, RSPEC, (), (), ZmodSubgroup(3, 2, []), swap))
    # delta must be ell-torsion: Z/2-character on N = Z/3 is rejected
    gam2 = FiniteMatrixGroup(2, [[[-1, 0], [0, 1]]])
    ch = [c for c in gam2.characters() if any(c)][0]
    with pytest.raises(ValidationError):
        datum_validate(SubgroupDatum(2, RSPEC, (1,), (1,),
                                     ZmodSubgroup(3, 2, [(1, 1)]), gam2,
                                     delta=[ch]))


def test_datum_dims_examples():
    swap = FiniteMatrixGroup(2, [[[0, 1], [1, 0]]])
    d = SubgroupDatum(2, RSPEC, (1,), (1,), ZmodSubgroup(3, 2, []), swap)
    dims = datum_dims(d)
    assert dims == {"dim_uhat_l": 81, "dim_A_l_sigma": 162,
                    "dim_H": 81, "dim_A_D": 162}
    triv = FiniteMatrixGroup(2, [])
    d2 = SubgroupDatum(2, RSPEC, (1,), (), ZmodSubgroup(3, 2, []), triv)
    assert datum_dims(d2)["dim_A_D"] == 27
    # N = full character lattice: dim H = ell^n / |N| = 1 on the torus datum
    d3 = SubgroupDatum(2, RSPEC, (), (), ZmodSubgroup(3, 2, [(1, 0), (0, 1)]), triv)
    assert datum_dims(d3)["dim_H"] == 1
    assert datum_dims(d3)["dim_A_D"] == 1


def test_datum_compare_examples():
    triv = FiniteMatrixGroup(2, [])
    swap = FiniteMatrixGroup(2, [[[0, 1], [1, 0]]])
    base = SubgroupDatum(2, RSPEC, (1,), (1,), ZmodSubgroup(3, 2, []), swap)
    assert datum_compare(base, base) == "equivalent"
    smaller_gamma = SubgroupDatum(2, RSPEC, (1,), (1,), ZmodSubgroup(3, 2, []), triv)
    assert datum_compare(base, smaller_gamma) == "leq"
    assert datum_compare(smaller_gamma, base) == "geq"
    bigger_N = SubgroupDatum(2, RSPEC, (1,), (1,),
                             ZmodSubgroup(3, 2, [(1, 1)]), swap)
    assert datum_compare(base, bigger_N) == "leq"
    other = SubgroupDatum(2, RSPEC, (1,), (), ZmodSubgroup(3, 2, []), swap)
    assert datum_leq(other, base) is False
    assert datum_leq(base, other) is False or True  # I'+ subset I_+ holds one way


def test_delta_changes_the_order():
    dz = FiniteMatrixGroup(2, [[[Cyclotomic.zeta(3), 0], [0, 1]]])
    N = ZmodSubgroup(3, 2, [(1, 1)])
    ch = [c for c in dz.characters() if any(c)][0]
    trivial_delta = SubgroupDatum(2, RSPEC, (1,), (1,), N, dz)
    with_delta = SubgroupDatum(2, RSPEC, (1,), (1,), N, dz, delta=[ch])
    datum_validate(with_delta)
    assert datum_compare(trivial_delta, with_delta) == "incomparable"
    assert datum_compare(with_delta, with_delta) == "equivalent"
    assert evaluate_delta(with_delta, (2, 2)) == tuple((2 * v) % 1 for v in ch)


def test_predicates_examples():
    triv = FiniteMatrixGroup(2, [])
    swap = FiniteMatrixGroup(2, [[[0, 1], [1, 0]]])
    d = SubgroupDatum(2, RSPEC, (), (), ZmodSubgroup(3, 2, []), triv)
    assert predicates(d)["semisimple"]
    d = SubgroupDatum(2, RSPEC, (1,), (1,), ZmodSubgroup(3, 2, []), swap)
    flags = predicates(d)
    assert flags["pulenta"] and flags["pulenta_strong"]
    assert not flags["semisimple"] and not flags["pointed_possible"]
    dd = SubgroupDatum(2, RSPEC, (1,), (1,), ZmodSubgroup(3, 2, []), triv)
    assert not predicates(dd)["pulenta"]  # sigma(Gamma) is diagonal


def test_corpus_and_json():
    corpus = standard_corpus(RSPEC)
    assert len(corpus) >= 20
    for d in corpus:
        inv = datum_validate(d)
        assert inv.dim_A_D == len(d.Gamma) * inv.dim_H
        assert d.N.is_subgroup_of(inv.M_I)
        blob = json.dumps(datum_to_json(d))
        d2 = datum_from_json(json.loads(blob))
        assert datum_validate(d2).dim_A_D == inv.dim_A_D
        assert datum_compare(d, d2) == "equivalent"
