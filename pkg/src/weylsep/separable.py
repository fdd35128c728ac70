"""Separable elements: recursive pivot test, certificates and generation."""

from __future__ import annotations

from dataclasses import dataclass, field

from .rootsys import RootSystem, irreducible_components, parabolic
from .weyl import (DEFAULT_MAX_ELEMENTS, WeylElement, check_guard, from_mask)

_MEMO: dict[tuple, bool] = {}
_GEN_MEMO: dict[tuple, frozenset] = {}


def _without(s: RootSystem, i: int):
    return parabolic(s, [j for j in range(s.rank) if j != i])


def pivot_candidates(s: RootSystem, mask: int) -> list[int]:
    out = []
    for i, ideal in enumerate(s.dual_ideal_masks):
        hit = mask & ideal
        if hit == 0 or hit == ideal:
            out.append(i)
    return out


def pivots(w: WeylElement) -> list[int]:
    """Simple indices whose dual order ideal lies inside or outside ``I(w)``.

    Only the first half of the pivot condition: the restriction still has to
    be separable.
    """
    if not w.system.is_irreducible:
        raise ValueError(f"{w.system} is reducible")
    return pivot_candidates(w.system, w.mask)


def mask_is_separable(s: RootSystem, mask: int) -> bool:
    key = (s.key, mask)
    hit = _MEMO.get(key)
    if hit is not None:
        return hit
    if s.rank <= 1:
        result = True
    elif not s.is_irreducible:
        result = all(mask_is_separable(e.child, e.restrict_mask(mask))
                     for e in irreducible_components(s))
    else:
        result = False
        for i in pivot_candidates(s, mask):
            e = _without(s, i)
            if mask_is_separable(e.child, e.restrict_mask(mask)):
                result = True
                break
    _MEMO[key] = result
    return result


def is_separable(w: WeylElement) -> bool:
    return mask_is_separable(w.system, w.mask)


# --------------------------------------------------------- certificates

@dataclass(frozen=True)
class Certificate:
    """Proof tree of separability.

    ``kind`` is ``"leaf"`` (rank one; ``inverted`` says whether the root is an
    inversion), ``"split"`` (one child per irreducible component, labelled by
    its simple indices) or ``"pivot"`` (``simple`` with ``side`` full/empty and
    a child certificate for the restriction to the other simples).
    """

    kind: str
    inverted: bool = False
    simple: int = -1
    side: str = ""
    parts: tuple = field(default=())

    def to_json(self) -> dict:
        if self.kind == "leaf":
            return {"kind": "leaf", "inverted": self.inverted}
        if self.kind == "split":
            return {"kind": "split",
                    "components": [{"simples": [j + 1 for j in simples], "certificate": c.to_json()}
                                   for simples, c in self.parts]}
        return {"kind": "pivot", "simple": self.simple + 1, "side": self.side,
                "certificate": self.parts[0][1].to_json()}

    def describe(self, labels=None) -> str:
        labels = labels or {}

        def name(j):
            return f"α{labels.get(j, j) + 1}"

        if self.kind == "leaf":
            return "leaf(" + ("inverted" if self.inverted else "not inverted") + ")"
        if self.kind == "split":
            inner = []
            for simples, c in self.parts:
                sub = {k: labels.get(j, j) for k, j in enumerate(simples)}
                inner.append(c.describe(sub))
            return "split[" + "; ".join(inner) + "]"
        simples, child = self.parts[0]
        sub = {k: labels.get(j, j) for k, j in enumerate(simples)}
        return f"pivot {name(self.simple)} ({self.side}) -> {child.describe(sub)}"


def _certify(s: RootSystem, mask: int) -> Certificate | None:
    if s.rank == 1:
        return Certificate("leaf", inverted=bool(mask & 1))
    if not s.is_irreducible:
        parts = []
        for comp, e in zip(s.components, irreducible_components(s)):
            c = _certify(e.child, e.restrict_mask(mask))
            if c is None:
                return None
            parts.append((comp, c))
        return Certificate("split", parts=tuple(parts))
    for i in pivot_candidates(s, mask):
        e = _without(s, i)
        c = _certify(e.child, e.restrict_mask(mask))
        if c is not None:
            side = "empty" if mask & s.dual_ideal_masks[i] == 0 else "full"
            rest = tuple(j for j in range(s.rank) if j != i)
            return Certificate("pivot", simple=i, side=side, parts=((rest, c),))
    return None


def certificate(w: WeylElement) -> Certificate | None:
    """Pivot tree for ``w``, trying pivots in ascending order; None if not separable."""
    return _certify(w.system, w.mask)


def replay(cert: Certificate, s: RootSystem) -> int:
    """Rebuild the inversion mask a certificate describes."""
    if cert.kind == "leaf":
        return 1 if cert.inverted else 0
    if cert.kind == "split":
        mask = 0
        for simples, c in cert.parts:
            e = parabolic(s, simples)
            mask |= e.extend_mask(replay(c, e.child))
        return mask
    simples, child = cert.parts[0]
    e = parabolic(s, simples)
    mask = e.extend_mask(replay(child, e.child))
    if cert.side == "full":
        mask |= s.dual_ideal_masks[cert.simple]
    return mask


# ----------------------------------------------------------- generation

def _generate(s: RootSystem) -> frozenset:
    key = s.key
    hit = _GEN_MEMO.get(key)
    if hit is not None:
        return hit
    if s.rank == 0:
        out = frozenset([0])
    elif s.rank == 1:
        out = frozenset([0, 1])
    elif not s.is_irreducible:
        out = {0}
        for e in irreducible_components(s):
            sub = [e.extend_mask(m) for m in _generate(e.child)]
            out = {a | b for a in out for b in sub}
        out = frozenset(out)
    else:
        acc = set()
        for i in range(s.rank):
            e = _without(s, i)
            ideal = s.dual_ideal_masks[i]
            for m in _generate(e.child):
                lifted = e.extend_mask(m)
                acc.add(lifted)
                acc.add(lifted | ideal)
        out = frozenset(acc)
    _GEN_MEMO[key] = out
    return out


def generate_separable(s: RootSystem, max_elements: int = DEFAULT_MAX_ELEMENTS,
                       allow_e7: bool = False) -> list[WeylElement]:
    """All separable elements, built from pivots up; sorted by (length, mask)."""
    check_guard(s.cartan_type, max_elements, allow_e7)
    masks = sorted(_generate(s), key=lambda m: (m.bit_count(), m))
    return [from_mask(s, m, check=False) for m in masks]


def pivot_branch(s: RootSystem, i: int) -> list[int]:
    """Masks produced by the single pivot ``alpha_i`` (both sides)."""
    e = _without(s, i)
    out = set()
    for m in _generate(e.child):
        lifted = e.extend_mask(m)
        out.add(lifted)
        out.add(lifted | s.dual_ideal_masks[i])
    return sorted(out, key=lambda m: (m.bit_count(), m))
