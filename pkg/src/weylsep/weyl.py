"""Weyl group elements as inversion-set bit masks.

An element ``w`` is stored by ``I(w) = {beta > 0 : w beta < 0}`` as an int
mask over the canonical positive-root order, plus one reduced word
``(i1, ..., ik)`` meaning ``w = s_i1 ... s_ik``. Weak order is containment
of inversion sets.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from math import prod
from pathlib import Path

from .rootsys import CartanType, RootSystem, SubsystemEmbedding, parabolic

DEFAULT_MAX_ELEMENTS = 10**7
CACHE_VERSION = 1

_DEGREES = {
    "A": lambda n: list(range(2, n + 2)),
    "B": lambda n: list(range(2, 2 * n + 1, 2)),
    "C": lambda n: list(range(2, 2 * n + 1, 2)),
    "D": lambda n: list(range(2, 2 * n - 1, 2)) + [n],
    "E": lambda n: {6: [2, 5, 6, 8, 9, 12], 7: [2, 6, 8, 10, 12, 14, 18],
                    8: [2, 8, 12, 14, 18, 20, 24, 30]}[n],
    "F": lambda n: [2, 6, 8, 12],
    "G": lambda n: [2, 6],
}


class EnumerationTooLarge(RuntimeError):
    pass


def degrees(ctype: CartanType) -> list[int]:
    out = []
    for family, n in ctype.components:
        out += _DEGREES[family](n)
    return out


def group_order(ctype: CartanType) -> int:
    return prod(degrees(ctype))


def check_guard(ctype: CartanType, max_elements: int = DEFAULT_MAX_ELEMENTS, allow_e7: bool = False):
    for family, n in ctype.components:
        if family == "E" and n == 8:
            raise EnumerationTooLarge(
                "enumeration too large: W(E8) has 696729600 elements; "
                "exhaustive enumeration is computationally infeasible")
        if family == "E" and n == 7 and not allow_e7:
            raise EnumerationTooLarge(
                "enumeration too large: W(E7) has 2903040 elements; pass allow_e7 to override")
    size = group_order(ctype)
    if size > max_elements:
        raise EnumerationTooLarge(f"enumeration too large: |W({ctype})| = {size} exceeds cap {max_elements}")


# ------------------------------------------------------------ elements

@dataclass(frozen=True, eq=False)
class WeylElement:
    system: RootSystem
    mask: int
    word: tuple[int, ...]

    @property
    def length(self) -> int:
        return self.mask.bit_count()

    @property
    def inversions(self) -> list:
        return self.system.roots_of(self.mask)

    @property
    def inversion_indices(self) -> list[int]:
        return [k for k in range(self.system.n_positive) if self.mask >> k & 1]

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            return NotImplemented
        return self.system is other.system and self.mask == other.mask

    def __hash__(self):
        return hash((id(self.system), self.mask))

    def __repr__(self):
        return f"WeylElement({self.system.cartan_type}, word={list(self.word)}, mask={self.mask:#x})"

    def to_json(self) -> dict:
        # simple indices are 1-based outside the library
        return {
            "length": self.length,
            "word": [i + 1 for i in self.word],
            "inversions": self.inversion_indices,
        }


def mul_simple_mask(s: RootSystem, mask: int, i: int) -> int:
    """Inversion mask of ``w s_i`` from that of ``w`` (ascent or descent)."""
    bit = 1 << s.simple_index[i]
    img = s.reflect_mask(mask & ~bit, i)
    return img if mask & bit else img | bit


def is_biconvex(mask: int, s: RootSystem) -> bool:
    for a, b, c in s.sum_triples:
        ina = mask >> a & 1
        inb = mask >> b & 1
        inc = mask >> c & 1
        if ina and inb and not inc:
            return False
        if not ina and not inb and inc:
            return False
    return True


def reduced_word(s: RootSystem, mask: int) -> tuple[int, ...]:
    """A reduced word read off by peeling right descents."""
    letters = []
    simple_bits = [1 << k for k in s.simple_index]
    while mask:
        for i, bit in enumerate(simple_bits):
            if mask & bit:
                mask = mul_simple_mask(s, mask, i)
                letters.append(i)
                break
        else:
            raise ValueError("not biconvex: mask is not an inversion set")
        if len(letters) > s.n_positive:
            raise ValueError("not biconvex: mask is not an inversion set")
    return tuple(reversed(letters))


def identity(s: RootSystem) -> WeylElement:
    return WeylElement(s, 0, ())


def longest(s: RootSystem) -> WeylElement:
    return from_mask(s, s.full_mask, check=False)


def from_mask(s: RootSystem, mask: int, check: bool = True) -> WeylElement:
    if mask < 0 or mask > s.full_mask:
        raise ValueError("mask out of range")
    if check and not is_biconvex(mask, s):
        raise ValueError("not biconvex")
    return WeylElement(s, mask, reduced_word(s, mask))


def from_inversions(s: RootSystem, indices) -> WeylElement:
    mask = 0
    for k in indices:
        if not 0 <= k < s.n_positive:
            raise ValueError(f"root index {k} out of range")
        mask |= 1 << k
    return from_mask(s, mask)


def from_word(s: RootSystem, word) -> WeylElement:
    word = tuple(int(i) for i in word)
    mask = 0
    for i in word:
        if not 0 <= i < s.rank:
            raise ValueError(f"simple index {i} out of range for {s}")
        mask = mul_simple_mask(s, mask, i)
    if len(word) == mask.bit_count():
        return WeylElement(s, mask, word)
    return WeylElement(s, mask, reduced_word(s, mask))


def right_mult_simple(w: WeylElement, i: int, descend: bool = False) -> WeylElement:
    s = w.system
    has = w.mask >> s.simple_index[i] & 1
    if not descend and has:
        raise ValueError("not an ascent")
    if descend and not has:
        raise ValueError("not a descent")
    mask = mul_simple_mask(s, w.mask, i)
    if descend:
        if w.word and w.word[-1] == i:
            return WeylElement(s, mask, w.word[:-1])
        return from_mask(s, mask, check=False)
    return WeylElement(s, mask, w.word + (i,))


def _check_type_a(s: RootSystem) -> int:
    ct = s.cartan_type
    if not ct.is_irreducible or ct.family != "A":
        raise ValueError(f"one-line notation needs type A, got {ct}")
    return s.rank + 1


def _type_a_root_index(s: RootSystem, i: int, j: int) -> int:
    # e_i - e_j (0-based, i < j) is alpha_i + ... + alpha_{j-1}
    return s.index[tuple(1 if i <= k < j else 0 for k in range(s.rank))]


def from_oneline(s: RootSystem, perm) -> WeylElement:
    """Element of type A_n from a permutation of 1..n+1 in one-line notation."""
    m = _check_type_a(s)
    perm = [int(x) for x in perm]
    if sorted(perm) != list(range(1, m + 1)):
        raise ValueError(f"{perm} is not a permutation of 1..{m}")
    mask = 0
    for i in range(m):
        for j in range(i + 1, m):
            if perm[i] > perm[j]:
                mask |= 1 << _type_a_root_index(s, i, j)
    return from_mask(s, mask, check=False)


def to_oneline(w: WeylElement) -> tuple[int, ...]:
    s = w.system
    m = _check_type_a(s)
    out = []
    for i in range(m):
        below_left = sum(1 for j in range(i) if not w.mask >> _type_a_root_index(s, j, i) & 1)
        below_right = sum(1 for j in range(i + 1, m) if w.mask >> _type_a_root_index(s, i, j) & 1)
        out.append(1 + below_left + below_right)
    return tuple(out)


def act_on_root(w: WeylElement, beta) -> tuple[int, ...]:
    """``w(beta)`` as signed simple-root coefficients."""
    s = w.system
    beta = tuple(beta)
    if not s.is_root(beta):
        raise ValueError(f"{beta} is not a root of {s}")
    for i in reversed(w.word):
        beta = s.reflect(beta, i)
    return beta


def weak_leq(u: WeylElement, w: WeylElement) -> bool:
    if u.system is not w.system:
        raise ValueError("elements of different systems")
    return u.mask & ~w.mask == 0


def complement_w0(w: WeylElement) -> WeylElement:
    """``w0 w``, whose inversion set is the complement of ``I(w)``."""
    return from_mask(w.system, w.system.full_mask ^ w.mask, check=False)


def restrict(w: WeylElement, emb: SubsystemEmbedding) -> WeylElement:
    if emb.parent is not w.system:
        raise ValueError("embedding does not belong to this element's system")
    return from_mask(emb.child, emb.restrict_mask(w.mask), check=False)


def parabolic_decompose(w: WeylElement, J) -> tuple[WeylElement, WeylElement]:
    """``(w^J, w_J)`` with ``w = w^J w_J``, ``w^J`` a minimal coset representative."""
    s = w.system
    emb = parabolic(s, J)
    J = sorted(set(J))
    child = restrict(w, emb)
    lifted = tuple(J[j] for j in child.word)
    w_J = from_word(s, lifted)
    mask = w.mask
    for i in reversed(lifted):
        mask = mul_simple_mask(s, mask, i)
    return from_mask(s, mask, check=False), w_J


# --------------------------------------------------------------- groups

@dataclass(frozen=True, eq=False)
class WeylGroup:
    system: RootSystem
    elements: tuple[WeylElement, ...]

    @cached_property
    def index(self) -> dict[int, int]:
        return {w.mask: k for k, w in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, w):
        return isinstance(w, WeylElement) and w.system is self.system and w.mask in self.index

    def element(self, mask: int) -> WeylElement:
        return self.elements[self.index[mask]]

    @property
    def identity(self) -> WeylElement:
        return self.elements[0]

    @property
    def longest(self) -> WeylElement:
        return self.elements[-1]

    def rank_sizes(self) -> list[int]:
        sizes = [0] * (self.system.n_positive + 1)
        for w in self.elements:
            sizes[w.length] += 1
        return sizes


_GROUPS: dict[int, WeylGroup] = {}


def enumerate_group(s: RootSystem, max_elements: int = DEFAULT_MAX_ELEMENTS,
                    allow_e7: bool = False) -> WeylGroup:
    """All of W by breadth-first search over ascents ``w -> w s_i``.

    Elements come out sorted by (length, mask); the result is cached per system.
    """
    check_guard(s.cartan_type, max_elements, allow_e7)
    cached = _GROUPS.get(id(s))
    if cached is not None and cached.system is s:
        return cached
    seen = {0: ()}
    frontier = [0]
    simple_bits = [1 << k for k in s.simple_index]
    while frontier:
        fresh = []
        for mask in frontier:
            word = seen[mask]
            for i, bit in enumerate(simple_bits):
                if mask & bit:
                    continue
                new = s.reflect_mask(mask, i) | bit
                if new not in seen:
                    seen[new] = word + (i,)
                    fresh.append(new)
        frontier = fresh
    masks = sorted(seen, key=lambda m: (m.bit_count(), m))
    g = WeylGroup(s, tuple(WeylElement(s, m, seen[m]) for m in masks))
    _GROUPS[id(s)] = g
    return g


def lower_ideal(g: WeylGroup, w: WeylElement) -> list[WeylElement]:
    return [u for u in g.elements if u.mask & ~w.mask == 0]


def upper_ideal(g: WeylGroup, w: WeylElement) -> list[WeylElement]:
    return [u for u in g.elements if w.mask & ~u.mask == 0]


def parabolic_quotient(g: WeylGroup, J) -> list[WeylElement]:
    """Minimal left coset representatives ``W^J``: no inversions inside ``Phi_J``."""
    block = parabolic(g.system, J).support_mask
    return [w for w in g.elements if w.mask & block == 0]


# ---------------------------------------------------------------- cache

def save_group(g: WeylGroup, path) -> None:
    s = g.system
    data = {
        "version": CACHE_VERSION,
        "type": str(s.cartan_type),
        "roots": [list(r) for r in s.positive_roots],
        "elements": [[w.mask, list(w.word)] for w in g.elements],
    }
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data, separators=(",", ":")))
    tmp.replace(path)


def load_group(s: RootSystem, path) -> WeylGroup | None:
    """Read a cached group; returns None if the file is missing or stale."""
    path = Path(path)
    if not path.exists():
        return None
    try:
        data = json.loads(path.read_text())
    except (OSError, ValueError):
        return None
    if (data.get("version") != CACHE_VERSION
            or data.get("type") != str(s.cartan_type)
            or [tuple(r) for r in data.get("roots", [])] != list(s.positive_roots)):
        return None
    g = WeylGroup(s, tuple(WeylElement(s, m, tuple(word)) for m, word in data["elements"]))
    _GROUPS.setdefault(id(s), g)
    return g
