"""Finite crystallographic root systems in simple-root coordinates.

Roots are integer tuples indexed by the simple roots of their ambient system.
Positive roots are kept in a fixed canonical order (height, then
lexicographic), so a subset of them can be stored as an int bit mask whose
bit ``k`` refers to ``positive_roots[k]``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterator, Sequence

Root = tuple  # tuple[int, ...] of simple-root coefficients

MAX_POSITIVE_ROOTS = 400


class UnknownCartanType(ValueError):
    pass


class NotARootSystem(ValueError):
    pass


# ---------------------------------------------------------------- types

def _check_irreducible(family: str, rank: int) -> tuple[str, int]:
    family = family.upper()
    ok = (
        (family == "A" and rank >= 1)
        or (family == "B" and rank >= 2)
        or (family == "C" and rank >= 2)
        or (family == "D" and rank >= 4)
        or (family == "E" and 6 <= rank <= 8)
        or (family == "F" and rank == 4)
        or (family == "G" and rank == 2)
    )
    if not ok:
        raise UnknownCartanType(f"unknown Cartan type {family}{rank}")
    if family == "C" and rank == 2:
        # B2 and C2 are the same abstract system
        family = "B"
    return family, rank


@dataclass(frozen=True, order=True)
class CartanType:
    """Cartan type as a sorted multiset of irreducible (family, rank) pairs."""

    components: tuple[tuple[str, int], ...]

    def __post_init__(self):
        comps = tuple(sorted(_check_irreducible(f, int(r)) for f, r in self.components))
        object.__setattr__(self, "components", comps)

    @classmethod
    def irreducible(cls, family: str, rank: int) -> "CartanType":
        return cls(((family, rank),))

    @classmethod
    def parse(cls, text: "str | CartanType") -> "CartanType":
        """Parse ``"B3"``, ``"A1xA1"`` or ``"A1+B2"``; the empty string is rank 0."""
        if isinstance(text, CartanType):
            return text
        text = text.strip().replace(" ", "")
        if text in ("", "0", "empty"):
            return cls(())
        comps = []
        for part in text.replace("+", "x").split("x"):
            if len(part) < 2 or not part[1:].isdigit():
                raise UnknownCartanType(f"unknown Cartan type {text!r}")
            comps.append((part[0], int(part[1:])))
        return cls(tuple(comps))

    @property
    def rank(self) -> int:
        return sum(r for _, r in self.components)

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    @property
    def family(self) -> str:
        if not self.is_irreducible:
            raise ValueError(f"{self} is not irreducible")
        return self.components[0][0]

    @property
    def is_simply_laced(self) -> bool:
        return all(f in "ADE" for f, _ in self.components)

    def __str__(self) -> str:
        if not self.components:
            return "empty"
        return "x".join(f"{f}{r}" for f, r in self.components)


# ------------------------------------------------- standard realizations

def realization(family: str, n: int) -> list[tuple[int, ...]]:
    """Simple roots of a classical type in the usual coordinates on R^m."""
    family, n = _check_irreducible(family, n)
    if family == "A":
        dim = n + 1
    elif family in "BCD":
        dim = n
    else:
        raise UnknownCartanType(f"no coordinate realization for {family}{n}")

    def vec(pairs):
        v = [0] * dim
        for i, c in pairs:
            v[i] += c
        return tuple(v)

    simples = [vec([(i, 1), (i + 1, -1)]) for i in range(n if family == "A" else n - 1)]
    if family == "B":
        simples.append(vec([(n - 1, 1)]))
    elif family == "C":
        simples.append(vec([(n - 1, 2)]))
    elif family == "D":
        simples.append(vec([(n - 2, 1), (n - 1, 1)]))
    return simples


def realization_positive_roots(family: str, n: int) -> list[tuple[int, ...]]:
    """Explicit listing of the positive roots in ambient coordinates."""
    family, n = _check_irreducible(family, n)
    dim = n + 1 if family == "A" else n

    def e(i, c=1):
        v = [0] * dim
        v[i] = c
        return v

    out = []
    for i, j in itertools.combinations(range(dim), 2):
        out.append(tuple(a - b for a, b in zip(e(i), e(j))))
        if family in "BCD":
            out.append(tuple(a + b for a, b in zip(e(i), e(j))))
    if family == "B":
        out += [tuple(e(i)) for i in range(n)]
    elif family == "C":
        out += [tuple(e(i, 2)) for i in range(n)]
    return out


def _exceptional_cartan(family: str, n: int) -> list[list[int]]:
    # A[i][j] = <alpha_i, alpha_j^vee>, Bourbaki labelling
    A = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        A[i][j], A[j][i] = aij, aji

    if family == "E":
        link(0, 2)
        link(1, 3)
        for i in range(2, n - 1):
            link(i, i + 1)
    elif family == "F":
        link(0, 1)
        link(1, 2, -2, -1)  # alpha_2 long, alpha_3 short
        link(2, 3)
    elif family == "G":
        link(0, 1, -3, -1)  # alpha_1 long, alpha_2 short
    return A


def _exceptional_lengths(family: str, n: int) -> list[Fraction]:
    if family == "F":
        return [Fraction(2), Fraction(2), Fraction(1), Fraction(1)]
    if family == "G":
        return [Fraction(2), Fraction(2, 3)]
    return [Fraction(2)] * n


def standard_gram(family: str, n: int) -> list[list[Fraction]]:
    """Bilinear form on the simple roots, long roots of squared length 2."""
    family, n = _check_irreducible(family, n)
    if family in "ABCD":
        simples = realization(family, n)
        gram = [[Fraction(sum(a * b for a, b in zip(u, v))) for v in simples] for u in simples]
    else:
        A = _exceptional_cartan(family, n)
        lengths = _exceptional_lengths(family, n)
        gram = [[A[i][j] * lengths[j] / 2 for j in range(n)] for i in range(n)]
    longest = max(gram[i][i] for i in range(n))
    return [[x * 2 / longest for x in row] for row in gram]


def standard_cartan(family: str, n: int) -> tuple[tuple[int, ...], ...]:
    return _cartan_from_gram(standard_gram(family, n))


def _cartan_from_gram(gram) -> tuple[tuple[int, ...], ...]:
    n = len(gram)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if gram[j][j] <= 0:
                raise NotARootSystem("not a finite root system")
            a = 2 * Fraction(gram[i][j]) / gram[j][j]
            if a.denominator != 1:
                raise NotARootSystem("not a finite root system")
            row.append(int(a))
        rows.append(tuple(row))
    return tuple(rows)


def _reflection_closure(cartan) -> list[Root]:
    n = len(cartan)
    simples = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    found = set(simples)
    frontier = list(simples)
    while frontier:
        fresh = []
        for beta in frontier:
            for j in range(n):
                if beta == simples[j]:
                    continue
                p = sum(beta[i] * cartan[i][j] for i in range(n))
                if p == 0:
                    continue
                img = list(beta)
                img[j] -= p
                img = tuple(img)
                if min(img) < 0:
                    raise NotARootSystem("not a finite root system")
                if img not in found:
                    found.add(img)
                    fresh.append(img)
        if len(found) > MAX_POSITIVE_ROOTS:
            raise NotARootSystem("not a finite root system")
        frontier = fresh
    return sorted(found, key=lambda c: (sum(c), c))


# ------------------------------------------------------------ the system

class RootSystem:
    """A finite root system given by the bilinear form on its simple roots.

    Instances are treated as immutable values; derived tables are computed
    lazily and cached on the instance.
    """

    def __init__(self, gram: Sequence[Sequence], cartan_type: CartanType | None = None):
        self.gram = tuple(tuple(Fraction(x) for x in row) for row in gram)
        self.rank = len(self.gram)
        for i in range(self.rank):
            for j in range(self.rank):
                if self.gram[i][j] != self.gram[j][i]:
                    raise NotARootSystem("not a finite root system")
        self.cartan = _cartan_from_gram(self.gram)
        self.positive_roots: tuple[Root, ...] = tuple(_reflection_closure(self.cartan))
        self.index = {r: k for k, r in enumerate(self.positive_roots)}
        if cartan_type is not None:
            self.__dict__["cartan_type"] = cartan_type

    def __repr__(self):
        return f"RootSystem({self.cartan_type})"

    @cached_property
    def cartan_type(self) -> CartanType:
        return classify(self)

    @property
    def key(self):
        """Hashable value identifying the system up to equality of its form."""
        return self.gram

    @property
    def n_positive(self) -> int:
        return len(self.positive_roots)

    @cached_property
    def full_mask(self) -> int:
        return (1 << self.n_positive) - 1

    def simple_root(self, i: int) -> Root:
        return tuple(int(i == j) for j in range(self.rank))

    @cached_property
    def simple_index(self) -> tuple[int, ...]:
        """Position of each simple root in the canonical positive order."""
        return tuple(self.index[self.simple_root(i)] for i in range(self.rank))

    def root_index(self, beta) -> int:
        try:
            return self.index[tuple(beta)]
        except KeyError:
            raise ValueError(f"{tuple(beta)} is not a positive root of {self}") from None

    def is_root(self, beta) -> bool:
        beta = tuple(beta)
        return beta in self.index or tuple(-c for c in beta) in self.index

    def bilinear(self, beta, gamma) -> Fraction:
        for r in (beta, gamma):
            if not self.is_root(r):
                raise ValueError(f"{tuple(r)} is not a root of {self}")
        return self.form(beta, gamma)

    def form(self, u, v) -> Fraction:
        """The form on arbitrary coefficient vectors (no root check)."""
        g = self.gram
        return sum(
            (u[i] * v[j] * g[i][j] for i in range(self.rank) for j in range(self.rank) if u[i] and v[j]),
            Fraction(0),
        )

    def reflect(self, beta, i: int) -> Root:
        """s_i applied to a coefficient vector."""
        p = sum(beta[k] * self.cartan[k][i] for k in range(self.rank))
        out = list(beta)
        out[i] -= p
        return tuple(out)

    @cached_property
    def dynkin_adjacency(self) -> tuple[tuple[int, int, int, int], ...]:
        """Edges ``(i, j, multiplicity, toward)``; ``toward`` is the shorter end or -1."""
        edges = []
        for i, j in itertools.combinations(range(self.rank), 2):
            m = self.cartan[i][j] * self.cartan[j][i]
            if m == 0:
                continue
            if self.gram[i][i] == self.gram[j][j]:
                toward = -1
            else:
                toward = i if self.gram[i][i] < self.gram[j][j] else j
            edges.append((i, j, m, toward))
        return tuple(edges)

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Connected components of the Dynkin diagram, sorted by least node."""
        parent = list(range(self.rank))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j, _, _ in self.dynkin_adjacency:
            parent[find(i)] = find(j)
        groups: dict[int, list[int]] = {}
        for i in range(self.rank):
            groups.setdefault(find(i), []).append(i)
        return tuple(sorted(tuple(g) for g in groups.values()))

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    @cached_property
    def sum_triples(self) -> tuple[tuple[int, int, int], ...]:
        """All ``(a, b, c)`` with ``a < b`` and ``root_a + root_b = root_c``."""
        out = []
        roots = self.positive_roots
        for a, b in itertools.combinations(range(len(roots)), 2):
            c = self.index.get(tuple(x + y for x, y in zip(roots[a], roots[b])))
            if c is not None:
                out.append((a, b, c))
        return tuple(out)

    @cached_property
    def dual_ideal_masks(self) -> tuple[int, ...]:
        """Mask of ``{beta >= alpha_i}`` for each simple index."""
        masks = []
        for i in range(self.rank):
            m = 0
            for k, r in enumerate(self.positive_roots):
                if r[i] > 0:
                    m |= 1 << k
            masks.append(m)
        return tuple(masks)

    @cached_property
    def reflection_perms(self) -> tuple[tuple[int, ...], ...]:
        """For each simple i, the image index of every positive root under s_i.

        The entry for alpha_i itself is -1 (it goes negative).
        """
        perms = []
        for i in range(self.rank):
            perm = []
            for r in self.positive_roots:
                img = self.reflect(r, i)
                perm.append(self.index.get(img, -1))
            perms.append(tuple(perm))
        return tuple(perms)

    @cached_property
    def _chunk_tables(self):
        # 8-bit lookup tables mapping a byte of a mask to its image under s_i
        n = self.n_positive
        nchunks = (n + 7) // 8
        tables = []
        for perm in self.reflection_perms:
            per_chunk = []
            for c in range(nchunks):
                table = [0] * 256
                for byte in range(1, 256):
                    img = 0
                    for b in range(8):
                        k = 8 * c + b
                        if byte >> b & 1 and k < n and perm[k] >= 0:
                            img |= 1 << perm[k]
                    table[byte] = img
                per_chunk.append(table)
            tables.append(tuple(per_chunk))
        return tuple(tables)

    def reflect_mask(self, mask: int, i: int) -> int:
        """Image of a set of positive roots under s_i (alpha_i is dropped)."""
        out = 0
        for table in self._chunk_tables[i]:
            out |= table[mask & 0xFF]
            mask >>= 8
        return out

    def mask_of(self, roots) -> int:
        m = 0
        for r in roots:
            m |= 1 << self.root_index(r)
        return m

    def roots_of(self, mask: int) -> list[Root]:
        return [r for k, r in enumerate(self.positive_roots) if mask >> k & 1]

    @cached_property
    def highest_root(self) -> Root:
        if not self.is_irreducible:
            raise ValueError(f"{self} is reducible")
        return self.positive_roots[-1]

    def to_json(self):
        return {
            "type": str(self.cartan_type),
            "positive_roots": [list(r) for r in self.positive_roots],
        }


@lru_cache(maxsize=None)
def _build(ctype: CartanType) -> RootSystem:
    n = ctype.rank
    gram = [[Fraction(0)] * n for _ in range(n)]
    offset = 0
    for family, r in ctype.components:
        block = standard_gram(family, r)
        for i in range(r):
            for j in range(r):
                gram[offset + i][offset + j] = block[i][j]
        offset += r
    return RootSystem(gram, ctype)


def build(ctype: "CartanType | str") -> RootSystem:
    """The standard root system of a Cartan type (cached, so identical types share one object)."""
    return _build(CartanType.parse(ctype))


# ------------------------------------------------------------ root data

def _check_positive(beta):
    if not any(beta) or min(beta) < 0:
        raise ValueError(f"{tuple(beta)} is not a positive root")


def height(beta) -> int:
    _check_positive(beta)
    return sum(beta)


def support(beta) -> frozenset[int]:
    _check_positive(beta)
    return frozenset(i for i, c in enumerate(beta) if c > 0)


def is_small(beta) -> bool:
    _check_positive(beta)
    return all(c in (0, 1) for c in beta)


def root_poset_leq(beta, gamma) -> bool:
    return all(g - b >= 0 for b, g in zip(beta, gamma))


def dual_ideal_above_simple(s: RootSystem, i: int) -> set[Root]:
    if not s.is_irreducible:
        raise ValueError(f"{s} is reducible; decompose it first")
    return set(s.roots_of(s.dual_ideal_masks[i]))


# ------------------------------------------------------- rational algebra

def rref(rows) -> tuple[tuple[Fraction, ...], ...]:
    """Reduced row echelon form over Q, zero rows dropped."""
    m = [[Fraction(x) for x in row] for row in rows]
    if not m:
        return ()
    ncols = len(m[0])
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(m)) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        lead = m[r][c]
        m[r] = [x / lead for x in m[r]]
        for k in range(len(m)):
            if k != r and m[k][c] != 0:
                f = m[k][c]
                m[k] = [a - f * b for a, b in zip(m[k], m[r])]
        r += 1
        if r == len(m):
            break
    return tuple(tuple(row) for row in m[:r])


def span_key(basis) -> tuple[tuple[int, ...], ...]:
    """Canonical integer key of a row space: RREF with denominators cleared."""
    out = []
    for row in rref(basis):
        den = 1
        for x in row:
            den = den * x.denominator // _gcd(den, x.denominator)
        out.append(tuple(int(x * den) for x in row))
    return tuple(out)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _in_span(reduced, v) -> bool:
    v = [Fraction(x) for x in v]
    for row in reduced:
        c = next(k for k, x in enumerate(row) if x != 0)
        if v[c]:
            f = v[c]
            v = [a - f * b for a, b in zip(v, row)]
    return not any(v)


# --------------------------------------------------------- subsystems

@dataclass(frozen=True, eq=False)
class SubsystemEmbedding:
    """A subsystem ``child`` together with how its positive roots sit in ``parent``.

    ``root_map[k]`` is the parent index of the child's k-th positive root and
    ``simple_images[j]`` the parent coordinates of the child's j-th simple root.
    """

    parent: RootSystem
    child: RootSystem
    root_map: tuple[int, ...]
    simple_images: tuple[Root, ...]
    span_basis: tuple[tuple[int, ...], ...]

    @cached_property
    def support_mask(self) -> int:
        m = 0
        for k in self.root_map:
            m |= 1 << k
        return m

    def restrict_mask(self, mask: int) -> int:
        out = 0
        for k, p in enumerate(self.root_map):
            if mask >> p & 1:
                out |= 1 << k
        return out

    def extend_mask(self, child_mask: int) -> int:
        out = 0
        for k, p in enumerate(self.root_map):
            if child_mask >> k & 1:
                out |= 1 << p
        return out

    def to_parent(self, coeffs) -> Root:
        n = self.parent.rank
        out = [0] * n
        for c, img in zip(coeffs, self.simple_images):
            if c:
                for i in range(n):
                    out[i] += c * img[i]
        return tuple(out)


def _embed(parent: RootSystem, simple_images, basis_key) -> SubsystemEmbedding:
    gram = [[parent.form(a, b) for b in simple_images] for a in simple_images]
    child = RootSystem(gram)
    emb = SubsystemEmbedding(parent, child, (), tuple(simple_images), basis_key)
    root_map = tuple(parent.root_index(emb.to_parent(r)) for r in child.positive_roots)
    object.__setattr__(emb, "root_map", root_map)
    return emb


@lru_cache(maxsize=None)
def _parabolic(s: RootSystem, J: tuple[int, ...]) -> SubsystemEmbedding:
    images = [s.simple_root(j) for j in J]
    gram = [[s.gram[a][b] for b in J] for a in J]
    child = RootSystem(gram)
    n = s.rank
    root_map = []
    for r in child.positive_roots:
        v = [0] * n
        for c, j in zip(r, J):
            v[j] = c
        root_map.append(s.index[tuple(v)])
    return SubsystemEmbedding(s, child, tuple(root_map), tuple(images), span_key(images) if images else ())


def parabolic(s: RootSystem, J) -> SubsystemEmbedding:
    """Subsystem generated by the simple roots indexed by ``J``."""
    J = tuple(sorted(set(J)))
    if any(j < 0 or j >= s.rank for j in J):
        raise ValueError(f"simple indices {J} out of range for {s}")
    return _parabolic(s, J)


def subsystem_from_subspace(s: RootSystem, spanning) -> SubsystemEmbedding:
    """The subsystem ``Phi ∩ U`` with ``U`` the rational span of ``spanning``."""
    spanning = [tuple(r) for r in spanning]
    if not spanning:
        raise ValueError("need at least one spanning root")
    reduced = rref(spanning)
    members = [k for k, r in enumerate(s.positive_roots) if _in_span(reduced, r)]
    return _subsystem(s, span_key(spanning), tuple(members))


def _subsystem(s: RootSystem, key, members) -> SubsystemEmbedding:
    member_set = set(members)
    decomposable = set()
    for a, b, c in s.sum_triples:
        if a in member_set and b in member_set:
            decomposable.add(c)
    # order child simples like the parent's: a parabolic subsystem keeps its labels
    simples = sorted((s.positive_roots[k] for k in members if k not in decomposable),
                     key=lambda r: (sum(r), tuple(-c for c in r)))
    emb = _embed(s, simples, key)
    if set(emb.root_map) != member_set:
        raise NotARootSystem("subspace intersection is not closed")
    return emb


@lru_cache(maxsize=None)
def _subsystems(s: RootSystem, k: int) -> tuple[SubsystemEmbedding, ...]:
    seen = {}
    roots = s.positive_roots
    for combo in itertools.combinations(range(len(roots)), k):
        vecs = [roots[c] for c in combo]
        key = span_key(vecs)
        if len(key) != k or key in seen:
            continue
        reduced = rref(vecs)
        members = tuple(m for m, r in enumerate(roots) if _in_span(reduced, r))
        seen[key] = members
    return tuple(_subsystem(s, key, seen[key]) for key in sorted(seen))


def enumerate_subsystems(s: RootSystem, k: int) -> list[SubsystemEmbedding]:
    """Every ``Phi ∩ U`` with ``U`` a k-dimensional span of positive roots."""
    if k > s.rank:
        raise ValueError(f"rank {k} exceeds rank of {s}")
    if k <= 0:
        return []
    return list(_subsystems(s, k))


def irreducible_components(s: RootSystem) -> list[SubsystemEmbedding]:
    return [parabolic(s, comp) for comp in s.components]


# ------------------------------------------------------ classification

def cartan_isomorphisms(a, b) -> Iterator[tuple[int, ...]]:
    """Bijections ``p`` with ``a[i][j] == b[p[i]][p[j]]`` for all i, j."""
    n = len(a)
    if len(b) != n:
        return
    sig_a = [sorted(row) for row in a]
    sig_b = [sorted(row) for row in b]
    # order nodes so each one after the first touches an earlier one when possible
    order, seen = [], set()
    for start in range(n):
        if start in seen:
            continue
        stack = [start]
        seen.add(start)
        while stack:
            x = stack.pop(0)
            order.append(x)
            for y in range(n):
                if y not in seen and a[x][y]:
                    seen.add(y)
                    stack.append(y)
    assign = [-1] * n
    used = [False] * n

    def extend(pos):
        if pos == n:
            yield tuple(assign)
            return
        x = order[pos]
        for y in range(n):
            if used[y] or sig_a[x] != sig_b[y]:
                continue
            if all(a[x][z] == b[y][assign[z]] and a[z][x] == b[assign[z]][y]
                   for z in order[:pos]):
                assign[x] = y
                used[y] = True
                yield from extend(pos + 1)
                used[y] = False
                assign[x] = -1

    yield from extend(0)


def _candidates(rank: int):
    for fam in "ABCDEFG":
        try:
            yield _check_irreducible(fam, rank)
        except UnknownCartanType:
            continue


def classify_component(cartan) -> tuple[tuple[str, int], tuple[int, ...]]:
    """Type of an irreducible Cartan matrix and one isomorphism onto the standard one."""
    n = len(cartan)
    for fam, r in sorted(set(_candidates(n))):
        iso = next(cartan_isomorphisms(cartan, standard_cartan(fam, r)), None)
        if iso is not None:
            return (fam, r), iso
    raise NotARootSystem("not a finite root system")


def classify(s: RootSystem) -> CartanType:
    comps = []
    for comp in s.components:
        sub = [[s.cartan[i][j] for j in comp] for i in comp]
        comps.append(classify_component(sub)[0])
    return CartanType(tuple(comps))
