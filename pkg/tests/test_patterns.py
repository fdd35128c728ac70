import itertools

import pytest

from oracles import classical_contains
from weylsep.patterns import (all_instances, avoids, avoids_forbidden, contains, first_forbidden,
                              forbidden_set, minimal_nonseparable, pattern_name, pattern_named)
from weylsep.rootsys import build, enumerate_subsystems, subsystem_from_subspace
from weylsep.separable import is_separable
from weylsep.weyl import complement_w0, enumerate_group, from_oneline, from_word, identity, restrict, to_oneline

NAMES = ["A3:3142", "A3:2413", "B2:len2a", "B2:len2b", "G2:len2a", "G2:len2b",
         "G2:len3a", "G2:len3b", "G2:len4a", "G2:len4b"]


def test_forbidden_set():
    pats = forbidden_set()
    assert [p.name for p in pats] == NAMES
    masks = {p.name: p.element.mask for p in pats}
    assert masks["A3:3142"] == 37 and masks["A3:2413"] == 26
    assert masks["B2:len2a"] == build("B2").mask_of([(1, 0), (1, 1)])
    assert [p.element.length for p in pats[4:]] == [2, 2, 3, 3, 4, 4]
    assert pattern_named("B2:len2b").element.mask == 9
    with pytest.raises(KeyError):
        pattern_named("A3:1234")


def test_identity_embedding_match():
    s = build("A3")
    inst = first_forbidden(from_oneline(s, [3, 1, 4, 2]))
    assert inst.matched.name == "A3:3142" and inst.is_identity_embedding
    inst = first_forbidden(from_oneline(s, [2, 4, 1, 3]))
    assert inst.matched.name == "A3:2413" and inst.is_identity_embedding
    w = pattern_named("B2:len2a").element
    assert contains(w, "B2:len2a").is_identity_embedding


def test_no_b2_in_simply_laced():
    w = from_oneline(build("A3"), [3, 1, 4, 2])
    assert contains(w, "B2:len2a") is None and contains(w, "B2:len2b") is None
    assert contains(w, "G2:len2a") is None


def test_example_flattening():
    s = build("A6")
    w = from_oneline(s, [4, 6, 2, 3, 1, 5, 7])
    e = subsystem_from_subspace(s, [s.simple_root(1), s.simple_root(2)])
    assert to_oneline(restrict(w, e)) == (3, 1, 2)


@pytest.mark.parametrize("n", [4, 5])
def test_type_a_containment_matches_classical(n):
    s = build(f"A{n - 1}")
    for perm in itertools.permutations(range(1, n + 1)):
        w = from_oneline(s, perm)
        for pat in ((3, 1, 4, 2), (2, 4, 1, 3)):
            name = "A3:" + "".join(map(str, pat))
            assert (contains(w, name) is not None) == classical_contains(perm, pat)


@pytest.mark.parametrize("name", ["A3", "A4", "B2", "B3", "B4", "C3", "D4", "G2", "F4"])
def test_separable_iff_avoids(name):
    for w in enumerate_group(build(name)):
        assert is_separable(w) == avoids_forbidden(w)
        assert avoids_forbidden(w) == avoids_forbidden(w, loose=True)


def test_identity_avoids():
    for name in ("A3", "B3", "G2", "F4"):
        assert avoids_forbidden(identity(build(name)))


def test_w0_transport_b3():
    s = build("B3")
    swap = {"B2:len2a": "B2:len2b", "B2:len2b": "B2:len2a"}
    for w in enumerate_group(s):
        c = complement_w0(w)
        for a, b in swap.items():
            assert (contains(w, a) is None) == (contains(c, b) is None)
        for k in (2, 3):
            for e in enumerate_subsystems(s, k):
                assert e.restrict_mask(c.mask) == e.child.full_mask ^ e.restrict_mask(w.mask)


def test_all_instances_and_json():
    s = build("A4")
    w = from_oneline(s, [4, 1, 5, 2, 3])
    insts = all_instances(w, "A3:3142")
    assert insts and all(i.flattened.mask == 37 for i in insts)
    j = insts[0].to_json()
    assert j["pattern"] == "A3:3142" and j["flattened"]["length"] == 3
    assert not avoids(w, ["A3:3142"]) and avoids(w, ["B2:len2a"])


def test_pattern_name():
    assert pattern_name(from_oneline(build("A3"), [3, 1, 4, 2])) == "A3:3142"
    assert pattern_name(from_word(build("A3"), [0])) is None


def test_minimal_nonseparable_small():
    assert sorted(pattern_name(w) for w in minimal_nonseparable(build("A3"))) == ["A3:2413", "A3:3142"]
    assert sorted(pattern_name(w) for w in minimal_nonseparable(build("B2"))) == ["B2:len2a", "B2:len2b"]
    assert sorted(pattern_name(w) for w in minimal_nonseparable(build("G2"))) == NAMES[4:]


@pytest.mark.parametrize("name", ["A4", "B3", "C3"])
def test_no_new_minimal_patterns(name):
    assert minimal_nonseparable(build(name)) == []
