import pytest

from weylsep.rootsys import build
from weylsep.verify import (a3_triples, check_biconvex_oracle, check_color_lemma, check_decomposition_lemma,
                            check_fiber_lemma, check_heredity, check_main_theorem, check_pattern_theorem,
                            check_restriction_lemma, check_symmetry_prop, check_type_c_transport, check_w0J,
                            find_decomposition, fiber_polynomials, run_claim)
from weylsep.qpoly import q_int


@pytest.mark.parametrize("name", ["A2", "B2", "G2", "A3", "B3", "D4"])
def test_all_claims_pass(name):
    reports = run_claim("all", build(name))
    assert reports and all(r.passed for r in reports)


def test_main_population():
    rep = check_main_theorem(build("G2"))
    assert rep.passed and rep.population == 6
    assert rep.to_json()["pass"] is True
    assert rep.summary().startswith("PASS main G2")


def test_fibers_type_a():
    s = build("A3")
    fibers = fiber_polynomials(s, [0, 1])
    assert len(fibers) == 6
    assert set(fibers.values()) == {q_int(4)}
    assert check_fiber_lemma(s, [0, 1]).passed


def test_decomposition():
    for name in ("D4", "D5", "E6"):
        assert check_decomposition_lemma(build(name)).passed
    with pytest.raises(ValueError):
        check_decomposition_lemma(build("A3"))
    rep = check_decomposition_lemma(build("A3"), permissive=True)
    assert not rep.passed
    bad = {(tuple(c["root"]), c["simple"]) for c in rep.counterexamples}
    assert bad == {((1, 1, 1), 1), ((1, 1, 1), 3)}
    assert find_decomposition(build("A3"), (1, 1, 1), 1) is not None


def test_a3_triples_present():
    assert a3_triples(build("D4"))
    assert a3_triples(build("A3"))


def test_color_lemmas():
    assert check_color_lemma(build("D4"), "triple").passed
    assert check_color_lemma(build("A4"), "small").passed
    assert check_color_lemma(build("B3"), "hat").passed
    with pytest.raises(ValueError):
        check_color_lemma(build("B3"), "triple")
    with pytest.raises(ValueError):
        check_color_lemma(build("A3"), "hat")


def test_property_suites():
    for name in ("A3", "B2", "B3"):
        assert check_biconvex_oracle(build(name)).passed
    for name in ("A3", "B3", "D4"):
        assert check_restriction_lemma(build(name)).passed
    assert check_type_c_transport(3).passed
    assert check_heredity(build("B3")).passed
    assert check_symmetry_prop(build("C3")).passed
    assert check_w0J(build("B3")).passed
    assert check_pattern_theorem(build("A4")).passed


def test_unknown_claim():
    with pytest.raises(ValueError):
        run_claim("nonsense", build("A2"))
