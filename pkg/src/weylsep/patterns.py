"""Pattern containment in the sense of subspace flattening.

``w`` contains ``(u, Psi)`` when some subsystem ``Phi ∩ U`` is isomorphic to
``Psi`` (by a bijection of simple roots preserving the Cartan matrix) and
``I(w) ∩ U`` is carried onto ``I(u)``. Every such test reduces to
``w.mask & support == want`` for precomputed masks, which is what the
sweeps below use.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .rootsys import RootSystem, SubsystemEmbedding, build, cartan_isomorphisms, enumerate_subsystems
from .separable import mask_is_separable
from .weyl import (DEFAULT_MAX_ELEMENTS, WeylElement, act_on_root, enumerate_group, from_mask,
                   from_oneline, longest)


@dataclass(frozen=True, eq=False)
class Pattern:
    name: str
    system: RootSystem
    element: WeylElement

    @property
    def rank(self) -> int:
        return self.system.rank

    def __repr__(self):
        return f"Pattern({self.name})"


@dataclass(frozen=True, eq=False)
class PatternInstance:
    embedding: SubsystemEmbedding
    flattened: WeylElement
    matched: Pattern
    iso: tuple[int, ...]

    @property
    def is_identity_embedding(self) -> bool:
        e = self.embedding
        return (e.child.rank == e.parent.rank
                and e.support_mask == e.parent.full_mask
                and self.iso == tuple(range(e.child.rank))
                and all(img == e.parent.simple_root(j) for j, img in enumerate(e.simple_images)))

    def to_json(self) -> dict:
        e = self.embedding
        return {
            "pattern": self.matched.name,
            "subsystem_simple_roots": [list(r) for r in e.simple_images],
            "subsystem_roots": sorted(e.root_map),
            "iso": [j + 1 for j in self.iso],
            "flattened": self.flattened.to_json(),
        }


@lru_cache(maxsize=None)
def forbidden_set() -> tuple[Pattern, ...]:
    """The ten minimal non-separable patterns: A3 3142/2413, two in B2, six in G2."""
    out = []
    a3 = build("A3")
    out.append(Pattern("A3:3142", a3, from_oneline(a3, [3, 1, 4, 2])))
    out.append(Pattern("A3:2413", a3, from_oneline(a3, [2, 4, 1, 3])))
    b2 = build("B2")
    masks = sorted([b2.mask_of([(1, 0), (1, 1)]), b2.mask_of([(0, 1), (1, 2)])])
    for tag, m in zip("ab", masks):
        out.append(Pattern(f"B2:len2{tag}", b2, from_mask(b2, m)))
    g2 = build("G2")
    group = enumerate_group(g2)
    for length in (2, 3, 4):
        same = sorted(w.mask for w in group if w.length == length)
        for tag, m in zip("ab", same):
            out.append(Pattern(f"G2:len{length}{tag}", g2, group.element(m)))
    return tuple(out)


def pattern_named(name: str) -> Pattern:
    for p in forbidden_set():
        if p.name == name:
            return p
    raise KeyError(name)


def pattern_name(w: WeylElement) -> str | None:
    """Canonical name if ``w`` is literally one of the forbidden patterns."""
    for p in forbidden_set():
        if p.system is w.system and p.element.mask == w.mask:
            return p.name
    return None


def _conjugate_by_w0_mask(p: Pattern) -> int:
    # I(w0 u w0) = -w0(I(u))
    s = p.system
    w0 = longest(s)
    mask = 0
    for beta in p.element.inversions:
        img = tuple(-c for c in act_on_root(w0, beta))
        mask |= 1 << s.index[img]
    return mask


@dataclass(frozen=True, eq=False)
class _Matcher:
    pattern: Pattern
    embedding: SubsystemEmbedding
    iso: tuple[int, ...]
    support: int
    want: int


def _transport(emb: SubsystemEmbedding, p: Pattern, iso, pattern_mask: int) -> int:
    target = p.system
    child_mask = 0
    for k, c in enumerate(emb.child.positive_roots):
        image = [0] * target.rank
        for j, x in enumerate(c):
            image[iso[j]] = x
        if pattern_mask >> target.index[tuple(image)] & 1:
            child_mask |= 1 << k
    return emb.extend_mask(child_mask)


@lru_cache(maxsize=None)
def _matchers(s: RootSystem, names: tuple[str, ...], loose: bool) -> tuple[_Matcher, ...]:
    out = []
    seen = set()
    for name in names:
        p = pattern_named(name)
        if p.rank > s.rank:
            continue
        masks = [p.element.mask]
        if loose:
            masks.append(_conjugate_by_w0_mask(p))
        for emb in enumerate_subsystems(s, p.rank):
            if emb.child.cartan_type != p.system.cartan_type:
                continue
            for iso in cartan_isomorphisms(emb.child.cartan, p.system.cartan):
                for m in masks:
                    want = _transport(emb, p, iso, m)
                    key = (name, emb.support_mask, want)
                    if key in seen:
                        continue
                    seen.add(key)
                    out.append(_Matcher(p, emb, iso, emb.support_mask, want))
    return tuple(out)


def _names(patterns) -> tuple[str, ...]:
    if patterns is None:
        return tuple(p.name for p in forbidden_set())
    return tuple(p.name if isinstance(p, Pattern) else p for p in patterns)


def _instance(w: WeylElement, m: _Matcher) -> PatternInstance:
    flat = from_mask(m.embedding.child, m.embedding.restrict_mask(w.mask), check=False)
    return PatternInstance(m.embedding, flat, m.pattern, m.iso)


def all_instances(w: WeylElement, p: "Pattern | str", loose: bool = False) -> list[PatternInstance]:
    return [_instance(w, m) for m in _matchers(w.system, _names([p]), loose)
            if w.mask & m.support == m.want]


def contains(w: WeylElement, p: "Pattern | str", loose: bool = False) -> PatternInstance | None:
    """First occurrence of ``p`` in canonical subsystem order, or None."""
    for m in _matchers(w.system, _names([p]), loose):
        if w.mask & m.support == m.want:
            return _instance(w, m)
    return None


def first_forbidden(w: WeylElement, patterns=None, loose: bool = False) -> PatternInstance | None:
    for m in _matchers(w.system, _names(patterns), loose):
        if w.mask & m.support == m.want:
            return _instance(w, m)
    return None


def mask_avoids(s: RootSystem, mask: int, patterns=None, loose: bool = False) -> bool:
    for m in _matchers(s, _names(patterns), loose):
        if mask & m.support == m.want:
            return False
    return True


def avoids_forbidden(w: WeylElement, loose: bool = False) -> bool:
    return mask_avoids(w.system, w.mask, None, loose)


def avoids(w: WeylElement, patterns, loose: bool = False) -> bool:
    return mask_avoids(w.system, w.mask, patterns, loose)


def minimal_nonseparable(s: RootSystem, max_elements: int = DEFAULT_MAX_ELEMENTS,
                         allow_e7: bool = False) -> list[WeylElement]:
    """Non-separable elements all of whose proper flattenings are separable."""
    g = enumerate_group(s, max_elements, allow_e7)
    subs = [e for k in range(2, s.rank) for e in enumerate_subsystems(s, k)]
    out = []
    for w in g:
        if mask_is_separable(s, w.mask):
            continue
        if all(mask_is_separable(e.child, e.restrict_mask(w.mask)) for e in subs):
            out.append(w)
    return out
