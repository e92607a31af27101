import json
import logging

import pytest

from chromarank import (
    ConsistencyError,
    ParseError,
    Registry,
    RegistryEntry,
    certify,
    cyclic,
    explore,
    general_linear,
    register_derivation,
    replay,
    seed_defaults,
    unitriangular4,
    wreath_cyclic,
)
from chromarank.registry import DerivationTree, _match_seed
from chromarank import dsl


def entry_for(name, expr, p, group, status="good", rule="SEED", parents=()):
    return RegistryEntry(
        name=name,
        expr=expr,
        prime=p,
        order=group.order(),
        fingerprint=group.fingerprint(),
        status=status,
        rule=rule,
        parents=tuple(parents),
    )


# -- seeds -------------------------------------------------------------------


def test_seed_defaults_p2():
    seeds = seed_defaults(2)
    names = [e.name for e in seeds]
    assert names == [
        "axiom:abelian",
        "axiom:symmetric",
        "axiom:gl-coprime",
        "axiom:order-p3",
        "axiom:order-32",
    ]
    assert all(e.status == "good" and e.rule == "SEED" for e in seeds)


def test_seed_defaults_odd_p_has_bad_entry():
    seeds = seed_defaults(3)
    assert "axiom:order-32" not in [e.name for e in seeds]
    bad = [e for e in seeds if e.status == "bad"]
    assert len(bad) == 1
    assert bad[0].name == "unipotent-radical-gl4"
    assert bad[0].order == 729
    assert bad[0].fingerprint == unitriangular4(3).fingerprint()


def test_seed_matching():
    assert _match_seed(dsl.parse("s(5)"), 2, dsl.evaluate(dsl.parse("s(5)"))) == "symmetric"
    assert _match_seed(dsl.parse("gl(2,3)"), 2, general_linear(2, 3)) == "gl-coprime"
    assert _match_seed(dsl.parse("gl(2,2)"), 2, general_linear(2, 2)) is None  # p divides q
    assert _match_seed(dsl.parse("c(12)"), 2, cyclic(12)) == "abelian"
    assert _match_seed(dsl.parse("q8"), 2, dsl.evaluate(dsl.parse("q8"))) == "order-p3"
    assert _match_seed(dsl.parse("d(8)"), 2, dsl.evaluate(dsl.parse("d(8)"))) is None
    w32 = dsl.parse("wr(ab(2,2),c(2))")
    assert _match_seed(w32, 2, dsl.evaluate(w32)) == "order-32"


# -- registry mechanics --------------------------------------------------------


def test_add_rejects_prime_mismatch():
    reg = Registry(2)
    with pytest.raises(ConsistencyError):
        reg.add(entry_for("c(3)", "c(3)", 3, cyclic(3)))


def test_add_rejects_duplicate_names():
    reg = Registry(2)
    e = entry_for("c(4)", "c(4)", 2, cyclic(4))
    reg.add(e)
    reg.add(e)  # identical re-add is a no-op
    assert len(reg.entries) == 1
    with pytest.raises(ConsistencyError):
        reg.add(entry_for("c(4)", "c(4)", 2, cyclic(8)))


def test_contradictory_fingerprint_rejected():
    reg = Registry(2)
    reg.add(entry_for("good-c4", "c(4)", 2, cyclic(4)))
    with pytest.raises(ConsistencyError):
        reg.add(entry_for("bad-c4", None, 2, cyclic(4), status="bad", rule="CITED"))


def test_entry_record_roundtrip():
    e = entry_for("gl(2,3)", "gl(2,3)", 2, general_linear(2, 3), rule="SEED", parents=("axiom:gl-coprime",))
    assert RegistryEntry.from_record(e.to_record()) == e
    with pytest.raises(ParseError):
        RegistryEntry.from_record({**e.to_record(), "extra": 1})
    rec = e.to_record()
    del rec["order"]
    with pytest.raises(ParseError):
        RegistryEntry.from_record(rec)


def test_save_load_roundtrip(tmp_path):
    reg = Registry.with_defaults(2)
    reg.add(entry_for("c(4)", "c(4)", 2, cyclic(4), parents=("axiom:abelian",)))
    path = tmp_path / "reg.jsonl"
    reg.save(str(path))
    loaded = Registry.load(str(path))
    assert [e.to_record() for e in loaded.entries] == [e.to_record() for e in reg.entries]
    # canonical field order on every line
    for line in path.read_text().splitlines():
        assert list(json.loads(line)) == list(RegistryEntry.from_record(json.loads(line)).to_record())


def test_load_reports_line_numbers(tmp_path):
    path = tmp_path / "broken.jsonl"
    path.write_text('{"name":"x","expr":null,"prime":2,"order":null,"fingerprint":null,"status":"good","rule":"SEED","parents":[]}\nnot json\n')
    with pytest.raises(ParseError) as exc:
        Registry.load(str(path))
    assert "line 2" in str(exc.value)


def test_load_rejects_unknown_fields(tmp_path):
    path = tmp_path / "fields.jsonl"
    rec = {"name": "x", "expr": None, "prime": 2, "order": None, "fingerprint": None,
           "status": "good", "rule": "SEED", "parents": [], "surprise": 1}
    path.write_text(json.dumps(rec) + "\n")
    with pytest.raises(ParseError) as exc:
        Registry.load(str(path))
    assert "line 1" in str(exc.value)


def test_load_empty_file(tmp_path):
    path = tmp_path / "empty.jsonl"
    path.write_text("")
    reg = Registry.load(str(path))
    assert reg.entries == [] and reg.prime is None


def test_load_contradiction_fails(tmp_path):
    g = cyclic(4)
    a = entry_for("a", "c(4)", 2, g)
    b = entry_for("b", None, 2, g, status="bad", rule="CITED")
    path = tmp_path / "contra.jsonl"
    with open(path, "w") as fh:
        fh.write(json.dumps(a.to_record()) + "\n")
        fh.write(json.dumps(b.to_record()) + "\n")
    with pytest.raises(ConsistencyError):
        Registry.load(str(path))


# -- certify -------------------------------------------------------------------


def test_certify_trivial_group_via_abelian_seed():
    reg = Registry.with_defaults(2)
    tree = certify("c(1)", 2, reg)
    assert tree.rule == "SEED" and tree.detail == "abelian"


def test_certify_symmetric_and_gl():
    reg = Registry.with_defaults(2)
    assert certify("s(6)", 2, reg).detail == "symmetric"
    assert certify("gl(2,3)", 2, reg).detail == "gl-coprime"


def test_certify_wreath_narrative():
    reg = Registry.with_defaults(2)
    tree = certify("wr(gl(2,3),c(2))", 2, reg)
    assert tree.rule == "WREATH"
    assert tree.premises[0].rule == "SEED"
    replay(tree, 2, reg)


def test_certify_centralizer_rule():
    reg = Registry.with_defaults(2)
    tree = certify("cent(wr(gl(2,3),c(2)),order=4,czorder=96)", 2, reg)
    assert tree.rule == "CENTRALIZER"
    assert tree.premises[0].rule == "WREATH"
    replay(tree, 2, reg)


def test_certify_sylow_rule():
    # GL_2(2) is no seed at p=2, but its Sylow 2-subgroup is abelian
    reg = Registry.with_defaults(2)
    tree = certify("gl(2,2)", 2, reg)
    assert tree.rule == "SYLOW"
    assert tree.premises[0].subject == "syl(2,gl(2,2))"
    replay(tree, 2, reg)


def test_certify_product_rule():
    reg = Registry.with_defaults(2)
    tree = certify("prod(gl(2,2),s(3))", 2, reg)
    # the left factor is no seed at p=2 and resolves through its Sylow subgroup
    assert tree.rule == "PRODUCT"
    assert [t.rule for t in tree.premises] == ["SYLOW", "SEED"]
    replay(tree, 2, reg)


def test_certify_factor_rule():
    # D_16 at p=2: not a seed, order 16 equals its own 2-part so SYLOW is
    # barred, but a registered good product with a good cofactor frees it.
    reg = Registry.with_defaults(2)
    assert certify("d(8)", 2, reg) is None
    witness = dsl.evaluate(dsl.parse("prod(d(8),c(3))"))
    reg.add(entry_for("witness", "prod(d(8),c(3))", 2, witness, rule="CITED"))
    tree = certify("d(8)", 2, reg)
    assert tree.rule == "FACTOR"
    assert tree.detail == "witness witness"
    assert tree.premises[0].subject == "c(3)"
    replay(tree, 2, reg)


def test_certify_depth_zero_finds_nothing():
    reg = Registry.with_defaults(2)
    assert certify("s(5)", 2, reg, depth=0) is None


def test_certify_poisoned_registry_raises():
    reg = Registry.with_defaults(2)
    reg.add(entry_for("poison", None, 2, cyclic(4), status="bad", rule="CITED"))
    with pytest.raises(ConsistencyError):
        certify("c(4)", 2, reg)


def test_replay_rejects_tampered_tree():
    reg = Registry.with_defaults(2)
    tree = certify("wr(gl(2,3),c(2))", 2, reg)
    forged = DerivationTree(tree.subject, "WREATH", tree.detail, (
        DerivationTree("gl(2,2)", "SEED", "gl-coprime"),
    ))
    with pytest.raises(ConsistencyError):
        replay(forged, 2, reg)
    with pytest.raises(ConsistencyError):
        replay(DerivationTree("s(4)", "SEED", "abelian"), 2, reg)


def test_register_derivation_adds_all_nodes():
    reg = Registry.with_defaults(2)
    tree = certify("wr(gl(2,3),c(2))", 2, reg)
    added = register_derivation(reg, tree, 2)
    assert [e.name for e in added] == ["gl(2,3)", "wr(gl(2,3),c(2))"]
    assert reg.get("gl(2,3)").parents == ("axiom:gl-coprime",)
    assert reg.get("wr(gl(2,3),c(2))").rule == "WREATH"
    # re-registering is a no-op
    assert register_derivation(reg, tree, 2) == []


# -- explore -------------------------------------------------------------------


def seeded_registry(p, exprs):
    reg = Registry.with_defaults(p)
    for text in exprs:
        register_derivation(reg, certify(text, p, reg), p)
    return reg


def test_explore_finds_wreath_and_centralizer_children():
    reg = seeded_registry(2, ["gl(2,3)"])
    added = explore(reg, 2, 10**4, depth=1)
    names = {e.name for e in added}
    assert "wr(gl(2,3),c(2))" in names
    assert "cent(wr(gl(2,3),c(2)),order=4,czorder=96)" in names
    wreath = reg.get("wr(gl(2,3),c(2))")
    assert wreath.order == 4608 and wreath.rule == "WREATH"
    cent = reg.get("cent(wr(gl(2,3),c(2)),order=4,czorder=96)")
    assert cent.order == 96 and cent.rule == "CENTRALIZER"
    assert cent.parents == ("wr(gl(2,3),c(2))",)


def test_explore_from_trivial_builds_wreath_tower():
    reg = seeded_registry(2, ["c(1)"])
    added = explore(reg, 2, 10, depth=4)
    # the iterated-wreath tower appears: orders p, then p * p**p
    assert reg.get("wr(c(1),c(2))").order == 2
    assert reg.get("wr(wr(c(1),c(2)),c(2))").order == 8
    assert all(e.order <= 10 for e in added)


def test_explore_idempotent():
    reg = seeded_registry(2, ["c(2)", "s(3)"])
    explore(reg, 2, 200, depth=10)
    assert explore(reg, 2, 200, depth=10) == []


def test_explore_respects_bound():
    reg = seeded_registry(2, ["s(3)"])
    added = explore(reg, 2, 100, depth=3)
    assert all(e.order <= 100 for e in added)


def test_explore_never_certifies_bad_fingerprint_p3():
    reg = seeded_registry(3, ["c(3)", "c(1)"])
    bad = reg.get("unipotent-radical-gl4")
    assert bad is not None and bad.status == "bad"
    added = explore(reg, 3, 729, depth=6)
    assert added  # the run does construct groups up to the bound
    for e in reg.entries:
        if e.status == "good" and e.fingerprint is not None:
            assert e.fingerprint != bad.fingerprint


def test_explore_paranoid_mode_runs_clean():
    reg = seeded_registry(2, ["c(2)"])
    added = explore(reg, 2, 64, depth=3, paranoid=True)
    assert added


def test_explore_skips_unrealizable_entries(caplog):
    reg = Registry.with_defaults(2)
    reg.add(
        RegistryEntry(
            name="opaque",
            expr=None,
            prime=2,
            order=cyclic(4).order(),
            fingerprint=cyclic(4).fingerprint(),
            status="good",
            rule="CITED",
        )
    )
    with caplog.at_level(logging.INFO, logger="chromarank.registry"):
        added = explore(reg, 2, 16, depth=1)
    assert any("cannot realize" in m for m in caplog.messages)
    assert all(e.parents != ("opaque",) for e in added)
