import pytest

import gen
from coverkit.kernel import Family, GroundMismatchError, iter_bits
from coverkit.relations import (
    CoverSystem,
    Relation,
    between,
    is_upper,
    one_exists,
    polar_exists,
    polar_forall,
    star,
    structural_flags,
)
from coverkit.builders import meet_system

G2 = gen.ground(2)
G3 = gen.ground(3)
RNG = gen.rng_for(101)


# -- polar operators ----------------------------------------------------------

def test_polar_of_empty_query():
    rel = gen.random_relation(RNG, G2)
    assert polar_exists(rel, Family(G2, 0)).is_empty
    assert len(polar_forall(rel, Family(G2, 0))) == 4


def test_polars_agree_on_singletons():
    for _ in range(20):
        rel = gen.random_relation(RNG, G2)
        for code in range(4):
            q = Family(G2, 1 << code)
            assert polar_exists(rel, q) == polar_forall(rel, q)


def test_polar_exists_is_union_of_rows():
    rel = gen.random_relation(RNG, G2)
    whole = Family(G2, (1 << 4) - 1)
    expect = 0
    for r in rel.rows:
        expect |= r
    assert polar_exists(rel, whole).mask == expect


def test_polar_forall_antitone():
    for _ in range(30):
        rel = gen.random_relation(RNG, G3)
        a = RNG.randrange(1 << 8)
        b = a | RNG.randrange(1 << 8)
        small = polar_forall(rel, Family(G3, a))
        big = polar_forall(rel, Family(G3, b))
        assert big.mask & ~small.mask == 0


# -- structural flags -----------------------------------------------------------

def test_full_relation_flags_all_true():
    f = structural_flags(Relation.full(G2))
    assert f.upper and f.lower and f.monotone and f.cut and f.one_reflexive


def test_monotone_with_empty_pair_is_full():
    # the only monotone relation relating empty to empty is the full one
    for _ in range(200):
        rel = gen.random_monotone(RNG, G2)
        if rel.holds(0, 0):
            assert rel == Relation.full(G2)


def test_meet_relation_flags():
    sysm = meet_system(3)
    f = structural_flags(sysm.rel)
    assert f.monotone and f.one_reflexive and f.cut


def test_one_reflexive_iff_contains_meet():
    meet = meet_system(3).rel
    for _ in range(60):
        rel = gen.random_monotone(RNG, G3)
        assert structural_flags(rel).one_reflexive == meet.issubset(rel)


def test_upper_matches_inclusion_composition():
    # upper holds exactly when relating to G implies relating to every
    # superset of G, checked by a literal scan
    for _ in range(40):
        rel = gen.random_relation(RNG, G2)
        literal = all(
            rel.holds(f, h)
            for f in range(4)
            for g in iter_bits(rel.rows[f])
            for h in range(4)
            if g & h == g
        )
        assert is_upper(rel) == literal


def test_monotone_one_reflexive_almost_reflexive():
    for _ in range(40):
        rel = gen.random_monotone(RNG, G3)
        if structural_flags(rel).one_reflexive:
            assert all(rel.holds(f, f) for f in range(1, 8))


# -- one_exists -------------------------------------------------------------------

def test_one_exists_strengthens_upper():
    for _ in range(40):
        rel = gen.random_monotone(RNG, G3)
        assert one_exists(rel).issubset(rel)


def test_one_exists_empty_target_row():
    rel = gen.random_relation(RNG, G3)
    assert all(not one_exists(rel).holds(f, 0) for f in range(8))


def test_one_exists_matches_definition_scan():
    rel = gen.random_relation(RNG, G2)
    got = one_exists(rel)
    for f in range(4):
        for g in range(4):
            want = any(rel.holds(f, 1 << s) for s in iter_bits(g))
            assert got.holds(f, g) == want


def test_one_exists_idempotent():
    for _ in range(30):
        rel = gen.random_relation(RNG, G3)
        once = one_exists(rel)
        assert one_exists(once) == once


# -- between and star ----------------------------------------------------------------

def test_between_empty_family_requires_everything():
    rel = gen.random_relation(RNG, G2)
    full_row = (1 << 4) - 1
    for f in range(4):
        assert between(rel, f, Family(G2, 0)) == (rel.rows[f] == full_row)


def test_between_single_member_scan():
    rel = gen.random_relation(RNG, G2)
    g0 = G2.subset("a")
    famm = Family(G2, 1 << g0.bits)
    for f in range(4):
        want = all(rel.holds(f, h) for h in range(4) if h & g0.bits)
        assert between(rel, f, famm) == want


def test_between_with_empty_member_vacuous():
    rel = Relation.empty(G2)
    assert between(rel, 0, Family(G2, 1))  # family containing the empty set


def test_star_empty_left_vacuous():
    rel = gen.random_relation(RNG, G2)
    assert star(rel, Family(G2, 0), Family(G2, 3))


def test_star_implies_forall_between_for_upper():
    for _ in range(60):
        rel = gen.random_monotone(RNG, G3)
        a = Family(G3, RNG.randrange(1 << 8))
        b = Family(G3, RNG.randrange(1 << 8))
        if star(rel, a, b):
            assert all(between(rel, f, b) for f in iter_bits(a.mask))


def test_exists_extension_selection_equality():
    # for an elementwise relation, requiring an existential hit on every
    # selection of a family equals fully relating to some member
    from coverkit.kernel import selections_mask

    m = 3
    for _ in range(30):
        related = RNG.randrange(1 << m)  # elements related to a fixed r
        for fam_mask in range(0, 1 << (1 << m), 13):
            sel = selections_mask(m, fam_mask)
            exists_side = all(g & related for g in iter_bits(sel))
            forall_side = any(g & ~related == 0 for g in iter_bits(fam_mask))
            assert exists_side == forall_side


# -- CoverSystem --------------------------------------------------------------------

def test_cover_system_requires_endorelation():
    rel = Relation.empty(G2, G3)
    with pytest.raises(GroundMismatchError):
        CoverSystem(G2, rel)


def test_classification_cache_coherent():
    from coverkit.axioms import classify

    for _ in range(20):
        sys = CoverSystem(G2, gen.random_relation(RNG, G2))
        assert sys.classification.to_dict() == classify(sys).to_dict()
