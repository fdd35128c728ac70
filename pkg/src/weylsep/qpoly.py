"""Integer polynomials in q and rank generating functions."""

from __future__ import annotations

from typing import Iterable, Sequence


class NotDivisible(ArithmeticError):
    pass


class QPolynomial:
    """Immutable polynomial ``sum coeffs[i] q^i`` with trailing zeros trimmed."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("QPolynomial is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        if isinstance(other, QPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == QPolynomial([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __mul__(self, other: "QPolynomial") -> "QPolynomial":
        return mul(self, other)

    def __call__(self, q):
        out = 0
        for c in reversed(self.coeffs):
            out = out * q + c
        return out

    def __repr__(self):
        return f"QPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
            if mono and c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}{mono}")
        return " + ".join(terms)

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs)}


def mul(p: QPolynomial, r: QPolynomial) -> QPolynomial:
    if not p.coeffs or not r.coeffs:
        return QPolynomial()
    out = [0] * (len(p.coeffs) + len(r.coeffs) - 1)
    for i, a in enumerate(p.coeffs):
        if a:
            for j, b in enumerate(r.coeffs):
                out[i + j] += a * b
    return QPolynomial(out)


def divide_exact(p: QPolynomial, d: QPolynomial) -> QPolynomial:
    if not d.coeffs:
        raise ZeroDivisionError("division by the zero polynomial")
    rem = list(p.coeffs)
    lead = d.coeffs[-1]
    dd = d.degree
    if len(rem) < len(d.coeffs):
        if any(rem):
            raise NotDivisible("not divisible")
        return QPolynomial()
    quot = [0] * (len(rem) - dd)
    for k in range(len(quot) - 1, -1, -1):
        c = rem[k + dd]
        if c % lead:
            raise NotDivisible("not divisible")
        c //= lead
        quot[k] = c
        if c:
            for j, b in enumerate(d.coeffs):
                rem[k + j] -= c * b
    if any(rem):
        raise NotDivisible("not divisible")
    return QPolynomial(quot)


def is_symmetric(p: QPolynomial) -> bool:
    c = p.coeffs
    return c == c[::-1]


def is_unimodal(p: QPolynomial) -> bool:
    c = p.coeffs
    k = 0
    while k + 1 < len(c) and c[k] <= c[k + 1]:
        k += 1
    while k + 1 < len(c) and c[k] >= c[k + 1]:
        k += 1
    return k + 1 >= len(c)


def q_int(n: int) -> QPolynomial:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return QPolynomial([1] * n)


def q_factorial(n: int) -> QPolynomial:
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = QPolynomial([1])
    for k in range(1, n + 1):
        out = mul(out, q_int(k))
    return out


def from_lengths(lengths: Sequence[int], offset: int = 0) -> QPolynomial:
    if not lengths:
        return QPolynomial()
    out = [0] * (max(lengths) - offset + 1)
    for n in lengths:
        e = n - offset
        if e < 0:
            raise ValueError(f"negative exponent {e}: offset exceeds a length")
        out[e] += 1
    return QPolynomial(out)


def rank_gen(elements, offset: int = 0) -> QPolynomial:
    """``sum q^(l(u) - offset)`` over the given Weyl group elements."""
    return from_lengths([w.mask.bit_count() for w in elements], offset)
