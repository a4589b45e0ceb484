import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import refl, rel
from oracles import naive_compose, naive_is_admissible, naive_transitive_closure
from relcomm import (
    BinRel,
    CONGRUENCE,
    REFLEXIVE_ADMISSIBLE,
    TOLERANCE,
    FiniteAlgebra,
    RelFamily,
    adm_close,
    cg,
    compose,
    cong_join,
    converse,
    enumerate_relations,
    intersect,
    is_admissible,
    is_congruence,
    is_reflexive,
    is_symmetric,
    is_transitive,
    star,
    tol_close,
    union_,
)
from relcomm.relations import FamilyBoundError, SizeMismatch

Z2 = FiniteAlgebra(2, (("+", 2, (0, 1, 1, 0)),))
PURE2 = FiniteAlgebra(2, ())


def bits_of(pairs, n):
    return BinRel.from_pairs(n, pairs).bits


def random_rel(rng, n):
    return BinRel(n, rng.getrandbits(n * n))


def test_predicates_on_delta():
    d = BinRel.delta(3)
    assert is_reflexive(d) and is_symmetric(d) and is_transitive(d)


def test_predicates_single_pair():
    r = refl(3, (0, 1))
    assert is_reflexive(r)
    assert not is_symmetric(r)
    assert is_transitive(r)


def test_not_transitive():
    r = refl(3, (0, 1), (1, 2))
    assert not is_transitive(r)


def test_admissible_pure_set():
    assert is_admissible(PURE2, rel(2, (0, 1)))


def test_admissible_z2_counterexample():
    # (0,1)+(1,1) = (1,0) escapes delta u {(0,1)}
    assert not is_admissible(Z2, refl(2, (0, 1)))


def test_admissible_full():
    assert is_admissible(Z2, BinRel.full(2))


def test_converse_example():
    assert converse(refl(2, (0, 1))).bits == refl(2, (1, 0)).bits


def test_star_example():
    got = star(refl(3, (0, 1), (1, 2)))
    assert got.bits == refl(3, (0, 1), (1, 2), (0, 2)).bits


def test_compose_example():
    got = compose(refl(3, (0, 1)), refl(3, (1, 2)))
    assert got.bits == refl(3, (0, 1), (1, 2), (0, 2)).bits


def test_size_mismatch():
    with pytest.raises(SizeMismatch):
        compose(BinRel.delta(2), BinRel.delta(3))
    with pytest.raises(SizeMismatch):
        adm_close(Z2, BinRel.delta(3))


@settings(max_examples=80, deadline=None)
@given(st.integers(2, 4), st.integers())
def test_relation_algebra_laws(n, seed):
    rng = random.Random(seed)
    r = random_rel(rng, n)
    s = random_rel(rng, n)
    t = random_rel(rng, n)
    assert converse(converse(r)).bits == r.bits
    assert compose(compose(r, s), t).bits == compose(r, compose(s, t)).bits
    assert converse(compose(r, s)).bits == compose(converse(s), converse(r)).bits
    st_r = star(r)
    assert star(st_r).bits == st_r.bits
    assert r.is_subset(st_r)
    assert st_r.is_subset(star(union_(r, s)))
    assert set(star(r).pairs()) == naive_transitive_closure(r.pairs())
    assert set(compose(r, s).pairs()) == naive_compose(set(r.pairs()), set(s.pairs()))


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 3), st.integers(), st.integers())
def test_admissibility_matches_naive(n, table_seed, rel_seed):
    rng = random.Random(table_seed)
    table = tuple(rng.randrange(n) for _ in range(n * n))
    alg = FiniteAlgebra(n, (("f", 2, table),))
    r = random_rel(random.Random(rel_seed), n)
    assert is_admissible(alg, r) == naive_is_admissible(n, [2], [table], r.pairs())


def test_adm_close_examples():
    # pure set: nothing to close under
    r = rel(2, (0, 1))
    assert adm_close(PURE2, r).bits == r.bits
    # Z2: smallest compatible superset of {(0,1)} adds only (0,0)
    got = adm_close(Z2, rel(2, (0, 1)))
    assert got.bits == bits_of([(0, 1), (0, 0)], 2)
    # idempotence on an admissible input
    assert adm_close(Z2, BinRel.full(2)).bits == BinRel.full(2).bits


def test_tol_close_examples():
    t = tol_close(Z2, BinRel.full(2))
    assert t.bits == BinRel.full(2).bits
    assert tol_close(PURE2, refl(2, (0, 1))).bits == BinRel.full(2).bits
    z4 = FiniteAlgebra(4, (("+", 2, tuple((a + b) % 4 for a in range(4) for b in range(4))),))
    got = tol_close(z4, refl(4, (0, 2)))
    assert got.bits == refl(4, (0, 2), (2, 0), (1, 3), (3, 1)).bits


def test_cg_examples():
    assert cg(Z2, BinRel.delta(2)).bits == BinRel.delta(2).bits
    pure3 = FiniteAlgebra(3, ())
    got = cg(pure3, refl(3, (0, 1)))
    assert got.bits == refl(3, (0, 1), (1, 0)).bits
    assert cg(Z2, refl(2, (0, 1))).bits == BinRel.full(2).bits


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 4), st.integers(), st.integers())
def test_closure_operator_laws(n, table_seed, rel_seed):
    rng = random.Random(table_seed)
    table = tuple(rng.randrange(n) for _ in range(n * n))
    alg = FiniteAlgebra(n, (("f", 2, table),))
    rng2 = random.Random(rel_seed)
    r = random_rel(rng2, n)
    bigger = union_(r, random_rel(rng2, n))
    for close in (adm_close, tol_close, cg):
        cr = close(alg, r)
        assert r.is_subset(cr)  # extensive
        assert close(alg, cr).bits == cr.bits  # idempotent
        assert cr.is_subset(close(alg, bigger))  # monotone
    assert is_congruence(alg, cg(alg, r))


def test_cong_join_examples(algebras):
    z22 = algebras["Z2xZ2"]
    k1 = BinRel.from_pairs(4, [(a, b) for a in range(4) for b in range(4) if a // 2 == b // 2])
    k2 = BinRel.from_pairs(4, [(a, b) for a in range(4) for b in range(4) if a % 2 == b % 2])
    assert cong_join(z22, k1, k2).bits == BinRel.full(4).bits
    assert cong_join(z22, k1, BinRel.delta(4)).bits == k1.bits
    assert cong_join(z22, k1, k1).bits == k1.bits
    with pytest.raises(ValueError):
        cong_join(z22, refl(4, (0, 1)), k1)


def test_cong_join_is_least_upper_bound(algebras):
    alg = algebras["C3"]
    congs = list(enumerate_relations(alg, RelFamily(kind=CONGRUENCE)))
    for a in congs:
        for b in congs:
            j = cong_join(alg, a, b)
            assert is_congruence(alg, j)
            assert a.is_subset(j) and b.is_subset(j)
            assert j.bits == cg(alg, union_(a, b)).bits


def test_enumerate_pure2_reflexive():
    fam = RelFamily(kind=REFLEXIVE_ADMISSIBLE)
    got = list(enumerate_relations(PURE2, fam))
    assert len(got) == 4


def test_enumerate_z2_families():
    assert [r.bits for r in enumerate_relations(Z2, RelFamily(kind=REFLEXIVE_ADMISSIBLE))] == [
        BinRel.delta(2).bits,
        BinRel.full(2).bits,
    ]
    assert [r.bits for r in enumerate_relations(Z2, RelFamily(kind=CONGRUENCE))] == [
        BinRel.delta(2).bits,
        BinRel.full(2).bits,
    ]


def test_enumerate_order_and_uniqueness(algebras):
    for name in ("Set3", "C3", "Z4"):
        alg = algebras[name]
        for kind in (REFLEXIVE_ADMISSIBLE, TOLERANCE, CONGRUENCE):
            out = [r.bits for r in enumerate_relations(alg, RelFamily(kind=kind))]
            assert out == sorted(set(out))


def test_enumerate_members_satisfy_predicate(algebras):
    alg = algebras["C3"]
    for r in enumerate_relations(alg, RelFamily(kind=TOLERANCE)):
        assert is_reflexive(r) and is_symmetric(r) and is_admissible(alg, r)
    for r in enumerate_relations(alg, RelFamily(kind=CONGRUENCE)):
        assert is_congruence(alg, r)


def test_enumerate_bell_count():
    pure4 = FiniteAlgebra(4, ())
    got = list(enumerate_relations(pure4, RelFamily(kind=CONGRUENCE)))
    assert len(got) == 15  # Bell(4)


def test_enumerate_bounds():
    big = FiniteAlgebra(5, ())
    with pytest.raises(FamilyBoundError):
        list(enumerate_relations(big, RelFamily(kind=REFLEXIVE_ADMISSIBLE)))


def test_enumerate_bound_override(monkeypatch):
    import relcomm.relations as relations_mod

    monkeypatch.setenv("RELCOMM_MAX_N", "2")
    monkeypatch.setattr(relations_mod, "_warned_override", False)
    pure3 = FiniteAlgebra(3, ())
    with pytest.warns(UserWarning):
        with pytest.raises(FamilyBoundError):
            list(enumerate_relations(pure3, RelFamily(kind=REFLEXIVE_ADMISSIBLE)))


def test_sampled_mode_deterministic(algebras):
    alg = algebras["C3"]
    fam = RelFamily(kind=TOLERANCE, mode="sampled", sample_count=30, seed=5)
    a = [r.bits for r in enumerate_relations(alg, fam)]
    b = [r.bits for r in enumerate_relations(alg, fam)]
    assert a == b
    assert len(a) == len(set(a))
    for bits in a:
        r = BinRel(alg.size, bits)
        assert is_reflexive(r) and is_symmetric(r) and is_admissible(alg, r)
