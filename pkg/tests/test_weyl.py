import itertools
import json

import pytest
from hypothesis import given, settings, strategies as st

from oracles import permutation_inversions
from weylsep.rootsys import build, parabolic
from weylsep.weyl import (EnumerationTooLarge, act_on_root, check_guard, complement_w0, enumerate_group,
                          from_inversions, from_mask, from_oneline, from_word, group_order, identity,
                          is_biconvex, load_group, longest, lower_ideal, parabolic_decompose,
                          parabolic_quotient, right_mult_simple, to_oneline, upper_ideal, weak_leq)

ORDERS = {"A1": 2, "A2": 6, "A3": 24, "A4": 120, "A5": 720, "B2": 8, "B3": 48, "B4": 384,
          "C3": 48, "D4": 192, "D5": 1920, "G2": 12, "F4": 1152, "E6": 51840}


@pytest.mark.parametrize("name", [n for n in ORDERS if n != "E6"])
def test_group_orders(name):
    g = enumerate_group(build(name))
    assert len(g) == ORDERS[name] == group_order(build(name).cartan_type)


def test_group_order_formula_large():
    assert group_order(build("E7").cartan_type) == 2903040
    assert group_order(build("E8").cartan_type) == 696729600


@pytest.mark.parametrize("name", ["A3", "B3", "G2", "D4"])
def test_enumeration_invariants(name):
    s = build(name)
    g = enumerate_group(s)
    assert [(w.length, w.mask) for w in g] == sorted((w.length, w.mask) for w in g)
    assert g.identity.mask == 0 and g.longest.mask == s.full_mask
    sizes = g.rank_sizes()
    assert sizes == sizes[::-1]
    for w in g:
        assert is_biconvex(w.mask, s)
        assert len(w.word) == w.length
        assert from_word(s, w.word).mask == w.mask


def test_guard():
    with pytest.raises(EnumerationTooLarge, match="computationally infeasible"):
        check_guard(build("E8").cartan_type, allow_e7=True)
    with pytest.raises(EnumerationTooLarge):
        check_guard(build("E7").cartan_type)
    check_guard(build("E7").cartan_type, allow_e7=True)
    with pytest.raises(EnumerationTooLarge):
        enumerate_group(build("F4"), max_elements=1000)


def test_b2_census_words():
    s = build("B2")
    g = enumerate_group(s)
    assert len(g) == 8
    assert sorted(w.mask for w in g if w.length == 2) == [6, 9]


def test_from_mask_rejects():
    s = build("A3")
    with pytest.raises(ValueError, match="not biconvex"):
        from_inversions(s, [0, 1])
    with pytest.raises(ValueError):
        from_mask(s, 1 << 10)


def test_right_mult_errors():
    s = build("A2")
    w = from_word(s, [0])
    assert right_mult_simple(w, 1).length == 2
    with pytest.raises(ValueError, match="not an ascent"):
        right_mult_simple(w, 0)
    with pytest.raises(ValueError, match="not a descent"):
        right_mult_simple(w, 1, descend=True)
    assert right_mult_simple(w, 0, descend=True).mask == 0


def test_unreduced_words_cancel():
    s = build("B3")
    assert from_word(s, [0, 0]).mask == 0
    assert from_word(s, [0, 1, 0, 1, 0, 1]).mask == 0
    assert from_word(s, [1, 2, 1, 2, 1, 2, 1, 2]).mask == 0


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_oneline_against_classical_inversions(n):
    s = build(f"A{n - 1}") if n > 1 else None
    for perm in itertools.permutations(range(1, n + 1)):
        w = from_oneline(s, perm)
        assert w.length == permutation_inversions(perm)
        assert to_oneline(w) == perm


def test_oneline_matches_position_swaps():
    s = build("A4")
    for w in enumerate_group(s):
        p = list(range(1, 6))
        for i in w.word:
            p[i], p[i + 1] = p[i + 1], p[i]
        assert to_oneline(w) == tuple(p)


def test_oneline_example():
    w = from_oneline(build("A6"), [4, 6, 2, 3, 1, 5, 7])
    assert w.length == 9
    with pytest.raises(ValueError):
        from_oneline(build("B3"), [1, 2, 3])
    with pytest.raises(ValueError):
        from_oneline(build("A2"), [1, 1, 2])


def test_inversions_are_roots_sent_negative():
    s = build("B3")
    for w in enumerate_group(s):
        for k, beta in enumerate(s.positive_roots):
            img = act_on_root(w, beta)
            assert (min(img) < 0) == bool(w.mask >> k & 1)


def test_complement_and_longest():
    s = build("D4")
    w0 = longest(s)
    assert w0.length == 12 and identity(s).length == 0
    for w in enumerate_group(s):
        c = complement_w0(w)
        assert c.length == 12 - w.length
        assert complement_w0(c).mask == w.mask


def test_weak_order_ideals():
    s = build("A3")
    g = enumerate_group(s)
    w = from_oneline(s, [3, 1, 4, 2])
    low = lower_ideal(g, w)
    up = upper_ideal(g, w)
    assert all(weak_leq(u, w) for u in low)
    assert all(weak_leq(w, u) for u in up)
    assert len(low) + len(up) <= len(g) + 1


@pytest.mark.parametrize("name", ["A3", "B3", "G2"])
def test_parabolic_decomposition(name):
    s = build(name)
    g = enumerate_group(s)
    for r in range(s.rank + 1):
        for J in itertools.combinations(range(s.rank), r):
            quotient = parabolic_quotient(g, J)
            sub = enumerate_group(parabolic(s, J).child)
            assert len(quotient) * len(sub) == len(g)
            qmasks = {u.mask for u in quotient}
            for w in g:
                wj, w_j = parabolic_decompose(w, J)
                assert wj.length + w_j.length == w.length
                assert wj.mask in qmasks


def test_cache_round_trip(tmp_path):
    s = build("B3")
    g = enumerate_group(s)
    from weylsep.weyl import save_group
    path = tmp_path / "B3.json"
    save_group(g, path)
    back = load_group(s, path)
    assert [(w.mask, w.word) for w in back] == [(w.mask, w.word) for w in g]
    data = json.loads(path.read_text())
    data["version"] = 0
    path.write_text(json.dumps(data))
    assert load_group(s, path) is None
    assert load_group(s, tmp_path / "missing.json") is None


def test_to_json_one_based():
    s = build("A2")
    w = from_word(s, [0, 1])
    assert w.to_json() == {"length": 2, "word": [1, 2], "inversions": w.inversion_indices}


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["A4", "B4", "D4", "F4", "C3"]), st.lists(st.integers(0, 3), max_size=14))
def test_random_words_biconvex(name, word):
    s = build(name)
    word = [i % s.rank for i in word]
    w = from_word(s, word)
    assert is_biconvex(w.mask, s)
    assert w.length <= len(word)
    assert len(word) % 2 == w.length % 2
    assert from_mask(s, w.mask).mask == w.mask
