"""Independent reference implementations used by the tests.

None of these touch the weylsep machinery: they work on plain permutations,
ambient coordinate vectors and exhaustive subsets.
"""

from __future__ import annotations

import itertools


def classical_contains(perm, pattern) -> bool:
    """Classical subsequence containment of a permutation pattern."""
    k = len(pattern)
    for pos in itertools.combinations(range(len(perm)), k):
        vals = [perm[p] for p in pos]
        order = sorted(vals)
        if tuple(order.index(v) + 1 for v in vals) == tuple(pattern):
            return True
    return False


def classically_separable(perm) -> bool:
    return not (classical_contains(perm, (3, 1, 4, 2)) or classical_contains(perm, (2, 4, 1, 3)))


def sum_decomposable_separable(perm) -> bool:
    """Separable iff it splits recursively into direct or skew sums."""
    n = len(perm)
    if n <= 1:
        return True
    for k in range(1, n):
        left, right = perm[:k], perm[k:]
        if max(left) == k and min(right) == k + 1:
            return (sum_decomposable_separable(left)
                    and sum_decomposable_separable([v - k for v in right]))
        if min(left) == n - k + 1 and max(right) == n - k:
            return (sum_decomposable_separable([v - (n - k) for v in left])
                    and sum_decomposable_separable(right))
    return False


def permutation_inversions(perm) -> int:
    return sum(1 for i, j in itertools.combinations(range(len(perm)), 2) if perm[i] > perm[j])


def schroeder_large(n: int) -> int:
    """Large Schroeder numbers r_0, r_1, ... = 1, 2, 6, 22, 90, 394."""
    r = [1, 2]
    for m in range(2, n + 1):
        r.append((3 * (2 * m - 1) * r[m - 1] - (m - 2) * r[m - 2]) // (m + 1))
    return r[n]


def ambient_positive_roots(family: str, n: int) -> set:
    """Positive roots of A_n, B_n, C_n, D_n written out in the usual coordinates."""
    dim = n + 1 if family == "A" else n
    out = set()
    for i, j in itertools.combinations(range(dim), 2):
        v = [0] * dim
        v[i], v[j] = 1, -1
        out.add(tuple(v))
        if family in "BCD":
            v = [0] * dim
            v[i], v[j] = 1, 1
            out.add(tuple(v))
    if family in "BC":
        for i in range(n):
            v = [0] * dim
            v[i] = 1 if family == "B" else 2
            out.add(tuple(v))
    return out


def connected_subsets(adjacency) -> int:
    """Number of nonempty vertex subsets inducing a connected subgraph."""
    n = len(adjacency)
    count = 0
    for r in range(1, n + 1):
        for sub in itertools.combinations(range(n), r):
            seen = {sub[0]}
            stack = [sub[0]]
            while stack:
                v = stack.pop()
                for u in sub:
                    if u not in seen and adjacency[v][u]:
                        seen.add(u)
                        stack.append(u)
            count += len(seen) == r
    return count
