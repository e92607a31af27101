import math

import pytest
from hypothesis import given, settings, strategies as st

from chromarank import (
    ChromarankError,
    DegreeMismatch,
    NotInGroup,
    ParseError,
    PermGroup,
    Permutation,
    ThresholdExceeded,
    cyclic,
    dihedral,
    group_from_generators,
    p_part,
    quaternion8,
    read_generator_file,
    symmetric,
)
from chromarank.group import Fingerprint, enumeration_limit

from conftest import (
    CORPUS_ORDERS,
    o_centralizer,
    o_classes,
    o_close,
    o_exponent,
    o_is_p_power,
    o_parity,
)


def test_orders_match_oracle(corpus):
    for name, group in corpus.items():
        assert group.order() == CORPUS_ORDERS[name] == len(o_close(list(group._raw))), name


def test_elements_sorted_and_complete(corpus):
    for group in corpus.values():
        elems = group.elements()
        raws = [e.images for e in elems]
        assert raws == o_close(list(group._raw))
        assert raws == sorted(raws)


def test_membership_by_parity():
    a4 = group_from_generators(
        [Permutation.from_cycles("(0 1 2)", degree=4), Permutation.from_cycles("(1 2 3)", degree=4)]
    )
    s4 = symmetric(4)
    for e in s4.elements():
        assert (e in a4) == (o_parity(e.images) == 0)


def test_contains_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        symmetric(3).contains(Permutation.identity(4))


def test_conjugacy_classes_match_oracle(corpus):
    for name, group in corpus.items():
        elems = [e.images for e in group.elements()]
        expected = o_classes(elems)
        table = group.conjugacy_classes()
        assert len(table) == len(expected), name
        got = sorted(
            frozenset(x.images for x in group.elements() if table.class_of(x) == i)
            for i in range(len(table))
        )
        assert got == sorted(expected)
        # reps are the lex-least member of their class
        for i, rep in enumerate(table.reps):
            cls = [e for e in elems if table.index[e] == i]
            assert rep.images == min(cls)
            assert table.sizes[i] == len(cls)


def test_class_equation(corpus):
    for group in corpus.values():
        table = group.conjugacy_classes()
        assert sum(table.sizes) == group.order()
        for size in table.sizes:
            assert group.order() % size == 0


def test_centralizer_matches_oracle(corpus):
    for name, group in corpus.items():
        elems = group.elements()
        for target in (elems[1], elems[len(elems) // 2]):
            cent = group.centralizer([target])
            expected = o_centralizer([e.images for e in elems], [target.images])
            assert sorted(e.images for e in cent.elements()) == expected, name


def test_centralizer_rejects_outsiders():
    with pytest.raises(NotInGroup):
        cyclic(3).centralizer([Permutation.from_cycles("(0 1)", degree=3)])


def test_center():
    assert quaternion8().center().order() == 2
    assert dihedral(4).center().order() == 2
    assert symmetric(4).center().order() == 1
    assert cyclic(6).center().order() == 6


def test_exponent(corpus):
    for name, group in corpus.items():
        assert group.exponent() == o_exponent([e.images for e in group.elements()]), name


def test_sylow_subgroups(corpus):
    for name, group in corpus.items():
        for p in (2, 3):
            syl = group.sylow_subgroup(p)
            assert syl.order() == p_part(group.order(), p), (name, p)
            for e in syl.elements():
                assert o_is_p_power(e.order(), p)
                assert e in group


def test_sylow_rejects_composite():
    with pytest.raises(ValueError):
        symmetric(4).sylow_subgroup(4)


def test_derived_subgroup():
    assert symmetric(4).derived_subgroup().order() == 12
    assert symmetric(3).derived_subgroup().order() == 3
    assert quaternion8().derived_subgroup().order() == 2
    assert cyclic(12).derived_subgroup().order() == 1
    # commutators all land in the derived subgroup
    g = symmetric(4)
    der = g.derived_subgroup()
    elems = g.elements()
    for a in elems[:6]:
        for b in elems[:6]:
            assert a.inverse() * b.inverse() * a * b in der


def test_fingerprint_distinguishes_q8_from_d8():
    fq = quaternion8().fingerprint()
    fd = dihedral(4).fingerprint()
    assert fq.order == fd.order == 8
    assert fq.element_order_histogram == ((1, 1), (2, 1), (4, 6))
    assert fd.element_order_histogram == ((1, 1), (2, 5), (4, 2))
    assert fq != fd


def test_fingerprint_record_roundtrip():
    fp = symmetric(4).fingerprint()
    assert Fingerprint.from_record(fp.to_record()) == fp
    with pytest.raises(ParseError):
        Fingerprint.from_record({**fp.to_record(), "bogus": 1})


def test_threshold_exceeded():
    with pytest.raises(ThresholdExceeded):
        symmetric(6).elements(limit=100)
    # order() itself needs no enumeration
    assert symmetric(12).order() == math.factorial(12)


def test_enumeration_limit_resolution(monkeypatch):
    assert enumeration_limit(500) == 500
    monkeypatch.setenv("CHROMARANK_MAX_ORDER", "1234")
    assert enumeration_limit(None) == 1234
    monkeypatch.delenv("CHROMARANK_MAX_ORDER")
    assert enumeration_limit(None) == 2**21
    with pytest.raises(ValueError):
        enumeration_limit(0)
    monkeypatch.setenv("CHROMARANK_MAX_ORDER", "junk")
    with pytest.raises(ChromarankError):
        enumeration_limit(None)


def test_conjugate_by_relabels():
    g = symmetric(3)
    s = Permutation.from_cycles("(0 2)", degree=3)
    h = g.conjugate_by(s)
    assert h.order() == 6
    assert sorted(e.images for e in h.elements()) == sorted(e.images for e in g.elements())


def test_trivial_group():
    t = PermGroup.trivial(4)
    assert t.order() == 1
    assert t.elements() == (Permutation.identity(4),)
    assert t.conjugacy_classes().sizes == (1,)


def test_empty_generators_rejected():
    with pytest.raises(ChromarankError):
        PermGroup(3, [])


def test_generator_file_roundtrip(tmp_path):
    path = tmp_path / "gens.txt"
    path.write_text("# a comment\ndegree 4\n(0 1 2 3)\n(0 1)\n")
    g = read_generator_file(str(path))
    assert g.order() == 24
    bad = tmp_path / "bad.txt"
    bad.write_text("degree 4\n(0 1\n")
    with pytest.raises(ParseError) as exc:
        read_generator_file(str(bad))
    assert "line 2" in str(exc.value)


@settings(deadline=None, max_examples=30)
@given(st.integers(min_value=0, max_value=10**6))
def test_random_generator_sets_close_consistently(seed):
    import random as _random

    rng = _random.Random(seed)
    degree = rng.randint(2, 6)
    gens = [
        Permutation(tuple(rng.sample(range(degree), degree))) for _ in range(rng.randint(1, 3))
    ]
    group = group_from_generators(gens)
    elems = o_close([g.images for g in gens])
    assert group.order() == len(elems)
    assert [e.images for e in group.elements()] == elems
    # membership agrees with the closure
    assert all(Permutation(e) in group for e in elems)
