"""Exhaustive checks of the separability results over enumerated groups.

Each ``check_*`` returns a :class:`VerificationReport`; a check passes exactly
when it found no counterexamples.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field

from .qpoly import QPolynomial, divide_exact, is_symmetric, is_unimodal, mul, rank_gen, from_lengths
from .rootsys import RootSystem, build, is_small, parabolic, realization
from .separable import mask_is_separable
from .patterns import mask_avoids
from .weyl import (DEFAULT_MAX_ELEMENTS, enumerate_group, from_word, is_biconvex, lower_ideal,
                   mul_simple_mask, parabolic_decompose, parabolic_quotient, upper_ideal)

A3_PATTERNS = ("A3:3142", "A3:2413")


@dataclass
class VerificationReport:
    claim: str
    type: str
    population: int = 0
    counterexamples: list = field(default_factory=list)
    millis: int = 0

    @property
    def passed(self) -> bool:
        return not self.counterexamples

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "type": self.type,
            "population": self.population,
            "pass": self.passed,
            "counterexamples": self.counterexamples,
            "millis": self.millis,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.claim} {self.type} population={self.population} ({self.millis} ms)"


class _Timer:
    def __init__(self, report):
        self.report = report

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self.report

    def __exit__(self, *exc):
        self.report.millis = int((time.perf_counter() - self.t0) * 1000)
        return False


def _group(s, max_elements, allow_e7):
    return enumerate_group(s, max_elements, allow_e7)


def check_main_theorem(s: RootSystem, max_elements: int = DEFAULT_MAX_ELEMENTS,
                       allow_e7: bool = False) -> VerificationReport:
    """For separable w: F(lower ideal), F(upper ideal) symmetric, unimodal, product F(W)."""
    rep = VerificationReport("main", str(s.cartan_type))
    with _Timer(rep):
        g = _group(s, max_elements, allow_e7)
        total = rank_gen(g.elements)
        for w in g:
            if not mask_is_separable(s, w.mask):
                continue
            rep.population += 1
            low = rank_gen(lower_ideal(g, w))
            up = rank_gen(upper_ideal(g, w), w.length)
            ok = (is_symmetric(low) and is_unimodal(low) and is_symmetric(up)
                  and is_unimodal(up) and mul(low, up) == total)
            if not ok:
                rep.counterexamples.append(w.mask)
    return rep


def check_pattern_theorem(s: RootSystem, patterns=None, max_elements: int = DEFAULT_MAX_ELEMENTS,
                          allow_e7: bool = False) -> VerificationReport:
    """Separable exactly when the forbidden patterns (or ``patterns``) are avoided."""
    rep = VerificationReport("patterns", str(s.cartan_type))
    with _Timer(rep):
        g = _group(s, max_elements, allow_e7)
        rep.population = len(g)
        for w in g:
            if mask_is_separable(s, w.mask) != mask_avoids(s, w.mask, patterns):
                rep.counterexamples.append(w.mask)
    return rep


def fiber_polynomials(s: RootSystem, J) -> dict[int, QPolynomial]:
    """``sum q^(l(w) - l(w'))`` over each fiber of restriction to ``Phi_J``."""
    emb = parabolic(s, J)
    g = enumerate_group(s)
    lengths: dict[int, list[int]] = {}
    for w in g:
        child = emb.restrict_mask(w.mask)
        lengths.setdefault(child, []).append(w.length - child.bit_count())
    return {m: from_lengths(ls) for m, ls in sorted(lengths.items())}


def check_fiber_lemma(s: RootSystem, J, max_elements: int = DEFAULT_MAX_ELEMENTS,
                      allow_e7: bool = False) -> VerificationReport:
    J = sorted(set(J))
    rep = VerificationReport(f"fibers J={[j + 1 for j in J]}", str(s.cartan_type))
    with _Timer(rep):
        g = _group(s, max_elements, allow_e7)
        emb = parabolic(s, J)
        sub = enumerate_group(emb.child)
        expected = divide_exact(rank_gen(g.elements), rank_gen(sub.elements))
        quotient = rank_gen(parabolic_quotient(g, J))
        fibers = fiber_polynomials(s, J)
        rep.population = len(fibers)
        if len(fibers) != len(sub):
            rep.counterexamples.append({"reason": "fiber count differs from |W_J|"})
        if expected != quotient:
            rep.counterexamples.append({"reason": "F(W)/F(W_J) differs from F(W^J)"})
        if not (is_symmetric(expected) and is_unimodal(expected)):
            rep.counterexamples.append({"reason": "quotient polynomial not symmetric and unimodal"})
        for m, poly in fibers.items():
            if poly != expected:
                rep.counterexamples.append(m)
    return rep


def check_w0J(s: RootSystem, max_elements: int = DEFAULT_MAX_ELEMENTS,
              allow_e7: bool = False) -> VerificationReport:
    """Lower ideal of w0^J is W^J, lengths add in w = w^J w_J, and the product identity."""
    rep = VerificationReport("w0j", str(s.cartan_type))
    with _Timer(rep):
        g = _group(s, max_elements, allow_e7)
        total = rank_gen(g.elements)
        for r in range(s.rank + 1):
            for J in itertools.combinations(range(s.rank), r):
                tag = [j + 1 for j in J]
                quotient = parabolic_quotient(g, J)
                w0J = max(quotient, key=lambda w: w.length)
                low = lower_ideal(g, w0J)
                up = upper_ideal(g, w0J)
                if {w.mask for w in low} != {w.mask for w in quotient}:
                    rep.counterexamples.append({"J": tag, "reason": "lower ideal of w0^J is not W^J"})
                f_low, f_up = rank_gen(low), rank_gen(up, w0J.length)
                if mul(f_low, f_up) != total or not all(
                        is_symmetric(f) and is_unimodal(f) for f in (f_low, f_up)):
                    rep.counterexamples.append({"J": tag, "reason": "product identity"})
                block = parabolic(s, J).support_mask
                for w in g:
                    rep.population += 1
                    wJ_, w_J = parabolic_decompose(w, J)
                    mask = wJ_.mask
                    for i in w_J.word:
                        mask = mul_simple_mask(s, mask, i)
                    if (wJ_.length + w_J.length != w.length or mask != w.mask
                            or wJ_.mask & block or w_J.mask & ~block):
                        rep.counterexamples.append({"J": tag, "mask": w.mask})
    return rep


def check_symmetry_prop(s: RootSystem, max_elements: int = DEFAULT_MAX_ELEMENTS,
                        allow_e7: bool = False) -> VerificationReport:
    """Separability is preserved by w -> w0 w."""
    rep = VerificationReport("symmetry", str(s.cartan_type))
    with _Timer(rep):
        g = _group(s, max_elements, allow_e7)
        rep.population = len(g)
        for w in g:
            if mask_is_separable(s, w.mask) != mask_is_separable(s, s.full_mask ^ w.mask):
                rep.counterexamples.append(w.mask)
    return rep


# ------------------------------------------------- root-level lemmas

def a3_triples(s: RootSystem):
    """Ordered triples of positive roots with the A3 inner-product profile."""
    roots = s.positive_roots
    out = []
    for b in roots:
        bb = s.form(b, b)
        for a in roots:
            if 2 * s.form(a, b) != -bb:
                continue
            for c in roots:
                if 2 * s.form(b, c) == -bb and s.form(a, c) == 0:
                    out.append((a, b, c))
    return out


def find_decomposition(s: RootSystem, r, i: int):
    """A witness ``("sum", b1, b2)`` or ``("triple", a, b, c)``, or None."""
    r = tuple(r)
    roots = s.positive_roots
    for b1 in roots:
        if b1[i] == 0:
            continue
        b2 = tuple(x - y for x, y in zip(r, b1))
        if b2 in s.index and b2[i] > 0:
            return ("sum", b1, b2)
    for b in roots:
        if b[i] == 0:
            continue
        for a in roots:
            if s.form(a, b) != -1:
                continue
            c = tuple(x - y - z for x, y, z in zip(r, a, b))
            if c in s.index and s.form(b, c) == -1 and s.form(a, c) == 0:
                return ("triple", a, b, c)
    return None


def check_decomposition_lemma(s: RootSystem, permissive: bool = False) -> VerificationReport:
    """Every full-support root splits as a sum of two or an A3 triple around each simple."""
    ct = s.cartan_type
    if not permissive and not (ct.is_irreducible and ct.family in "DE"):
        raise ValueError(f"decomposition lemma applies to types D and E, not {ct}")
    rep = VerificationReport("decomposition", str(ct))
    with _Timer(rep):
        for r in s.positive_roots:
            if not all(r):
                continue
            for i in range(s.rank):
                rep.population += 1
                if find_decomposition(s, r, i) is None:
                    rep.counterexamples.append({"root": list(r), "simple": i + 1})
    return rep


def _simply_laced(s):
    ct = s.cartan_type
    if not (ct.is_irreducible and ct.is_simply_laced):
        raise ValueError(f"lemma needs an irreducible simply-laced system, not {ct}")


def check_color_lemma(s: RootSystem, which: str, max_elements: int = DEFAULT_MAX_ELEMENTS,
                      allow_e7: bool = False) -> VerificationReport:
    """Coloring lemmas for avoiders; ``which`` is ``"triple"``, ``"small"`` or ``"hat"``.

    triple: in an A3-configured triple, if beta, alpha+beta, beta+gamma agree then
    so does alpha+beta+gamma. small: some simple root colors every small root above
    it alike. hat: in type B, beta and its small shadow share a color.
    """
    ct = s.cartan_type
    if which in ("triple", "small"):
        _simply_laced(s)
    elif which == "hat":
        if not (ct.is_irreducible and ct.family == "B"):
            raise ValueError(f"hat lemma needs type B, not {ct}")
    else:
        raise ValueError(f"unknown color lemma {which!r}")
    rep = VerificationReport(f"colors:{which}", str(ct))
    with _Timer(rep):
        g = _group(s, max_elements, allow_e7)
        patterns = A3_PATTERNS if which != "hat" else None
        avoiders = [w for w in g if mask_avoids(s, w.mask, patterns)]
        rep.population = len(avoiders)
        idx = s.index
        if which == "triple":
            quads = []
            for a, b, c in a3_triples(s):
                ab = tuple(x + y for x, y in zip(a, b))
                bc = tuple(x + y for x, y in zip(b, c))
                abc = tuple(x + y for x, y in zip(ab, c))
                if ab in idx and bc in idx and abc in idx:
                    quads.append((idx[b], idx[ab], idx[bc], idx[abc]))
            for w in avoiders:
                m = w.mask
                for kb, kab, kbc, kabc in quads:
                    col = m >> kb & 1
                    if (m >> kab & 1) == col and (m >> kbc & 1) == col and (m >> kabc & 1) != col:
                        rep.counterexamples.append(m)
                        break
        elif which == "small":
            groups = []
            for t in range(s.rank):
                ks = [idx[r] for r in s.positive_roots if r[t] > 0 and is_small(r)]
                groups.append((s.simple_index[t], ks))
            for w in avoiders:
                m = w.mask
                if not any(all((m >> k & 1) == (m >> kt & 1) for k in ks) for kt, ks in groups):
                    rep.counterexamples.append(m)
        else:
            pairs = []
            for r in s.positive_roots:
                hat = tuple(1 if c else 0 for c in r)
                if hat != r:
                    pairs.append((idx[r], idx[hat]))
            for w in avoiders:
                m = w.mask
                if any((m >> a & 1) != (m >> b & 1) for a, b in pairs):
                    rep.counterexamples.append(m)
    return rep


# ----------------------------------------------------- property suites

def check_biconvex_oracle(s: RootSystem, max_roots: int = 20) -> VerificationReport:
    """Inversion sets of W are exactly the biconvex subsets of the positive roots."""
    if s.n_positive > max_roots:
        raise ValueError(f"{s} has too many positive roots for a full mask scan")
    rep = VerificationReport("biconvex", str(s.cartan_type))
    with _Timer(rep):
        g = enumerate_group(s)
        masks = {w.mask for w in g}
        biconvex = {m for m in range(1 << s.n_positive) if is_biconvex(m, s)}
        rep.population = 1 << s.n_positive
        rep.counterexamples = sorted(masks ^ biconvex)
    return rep


def check_restriction_lemma(s: RootSystem) -> VerificationReport:
    """Restriction commutes with ascents inside J and ignores simples orthogonal to J."""
    rep = VerificationReport("restriction", str(s.cartan_type))
    with _Timer(rep):
        g = enumerate_group(s)
        for r in range(1, s.rank + 1):
            for J in itertools.combinations(range(s.rank), r):
                emb = parabolic(s, J)
                child = emb.child
                for i in range(s.rank):
                    inside = i in J
                    orth = not inside and all(s.gram[i][j] == 0 for j in J)
                    if not (inside or orth):
                        continue
                    for w in g:
                        if w.mask >> s.simple_index[i] & 1:
                            continue
                        rep.population += 1
                        before = emb.restrict_mask(w.mask)
                        after = emb.restrict_mask(mul_simple_mask(s, w.mask, i))
                        if inside:
                            expect = mul_simple_mask(child, before, J.index(i))
                            ok = after == expect and after.bit_count() == before.bit_count() + 1
                        else:
                            ok = after == before
                        if not ok:
                            rep.counterexamples.append({"J": [j + 1 for j in J], "simple": i + 1,
                                                        "mask": w.mask})
    return rep


def _ambient(s: RootSystem, family: str):
    simples = realization(family, s.rank)
    out = {}
    for k, r in enumerate(s.positive_roots):
        v = [0] * len(simples[0])
        for c, a in zip(r, simples):
            for j, x in enumerate(a):
                v[j] += c * x
        out[k] = tuple(v)
    return out


def check_type_c_transport(n: int) -> VerificationReport:
    """tau: e_i -> 2e_i carries I_B(w) onto I_C(w) for the common group of B_n and C_n."""
    sb, sc = build(f"B{n}"), build(f"C{n}")
    rep = VerificationReport("tau-transport", f"B{n}/C{n}")
    with _Timer(rep):
        amb_b = _ambient(sb, "B")
        c_index = {v: k for k, v in _ambient(sc, "C").items()}
        tau = {}
        for k, v in amb_b.items():
            if sum(1 for x in v if x) == 1:
                v = tuple(2 * x for x in v)
            tau[k] = c_index[v]
        for w in enumerate_group(sb):
            rep.population += 1
            wc = from_word(sc, w.word)
            image = 0
            for k in w.inversion_indices:
                image |= 1 << tau[k]
            if image != wc.mask:
                rep.counterexamples.append({"word": [i + 1 for i in w.word]})
    return rep


def check_heredity(s: RootSystem, max_rank: int | None = None) -> VerificationReport:
    """Every flattening of a separable element is separable."""
    from .rootsys import enumerate_subsystems

    rep = VerificationReport("heredity", str(s.cartan_type))
    with _Timer(rep):
        g = enumerate_group(s)
        top = s.rank if max_rank is None else max_rank
        subs = [e for k in range(2, top + 1) for e in enumerate_subsystems(s, k)]
        for w in g:
            if not mask_is_separable(s, w.mask):
                continue
            rep.population += 1
            for e in subs:
                if not mask_is_separable(e.child, e.restrict_mask(w.mask)):
                    rep.counterexamples.append(w.mask)
                    break
    return rep


# ------------------------------------------------------------ dispatch

CLAIMS = ("main", "patterns", "fibers", "w0j", "symmetry", "decomposition", "colors")


def run_claim(claim: str, s: RootSystem, max_elements: int = DEFAULT_MAX_ELEMENTS,
              allow_e7: bool = False) -> list[VerificationReport]:
    kw = {"max_elements": max_elements, "allow_e7": allow_e7}
    ct = s.cartan_type
    if claim == "all":
        out = []
        for c in CLAIMS:
            if c == "decomposition" and not (ct.is_irreducible and ct.family in "DE"):
                continue
            if c == "colors" and not (ct.is_irreducible and (ct.is_simply_laced or ct.family == "B")):
                continue
            out += run_claim(c, s, max_elements, allow_e7)
        return out
    if claim == "main":
        return [check_main_theorem(s, **kw)]
    if claim == "patterns":
        return [check_pattern_theorem(s, **kw)]
    if claim == "fibers":
        return [check_fiber_lemma(s, [j for j in range(s.rank) if j != i], **kw)
                for i in range(s.rank)]
    if claim == "w0j":
        return [check_w0J(s, **kw)]
    if claim == "symmetry":
        return [check_symmetry_prop(s, **kw)]
    if claim == "decomposition":
        return [check_decomposition_lemma(s)]
    if claim == "colors":
        if ct.is_irreducible and ct.family == "B":
            return [check_color_lemma(s, "hat", **kw)]
        return [check_color_lemma(s, "triple", **kw), check_color_lemma(s, "small", **kw)]
    raise ValueError(f"unknown claim {claim!r}")
