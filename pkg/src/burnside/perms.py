"""Permutations of a finite point set, with cycle-notation I/O.

Conventions used throughout the package:

* points are 0-based internally; cycle notation is 1-based (the only
  place where 1-based labels appear),
* permutations act on the right and compose left-to-right, so
  ``act(x, mul(g, h)) == act(act(x, g), h)``,
* the raw representation of a permutation is a tuple ``images`` of
  length ``degree`` with ``images[x] = x.g``.  Hot loops work on the
  raw tuples; :class:`Perm` is a thin wrapper for the public API.
"""

from __future__ import annotations

import re
from math import lcm


class CycleParseError(ValueError):
    """Malformed cycle expression, or a point outside 1..degree."""


# ---------------------------------------------------------------------------
# raw tuple helpers (hot path)

def identity_tuple(degree: int) -> tuple[int, ...]:
    return tuple(range(degree))


def mul(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Product `a then b` (left-to-right composition)."""
    return tuple(map(b.__getitem__, a))


def inv(a: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def conj(a: tuple[int, ...], g: tuple[int, ...]) -> tuple[int, ...]:
    """Conjugate g^-1 * a * g."""
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[g[i]] = g[x]
    return tuple(out)


def power(a: tuple[int, ...], n: int) -> tuple[int, ...]:
    if n < 0:
        return power(inv(a), -n)
    out = identity_tuple(len(a))
    base = a
    while n:
        if n & 1:
            out = mul(out, base)
        base = mul(base, base)
        n >>= 1
    return out


def order_of(a: tuple[int, ...]) -> int:
    """Order of a permutation: lcm of its cycle lengths."""
    n = len(a)
    seen = [False] * n
    result = 1
    for i in range(n):
        if seen[i] or a[i] == i:
            continue
        length = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = a[j]
            length += 1
        result = lcm(result, length)
    return result


def cycles_of(a: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Nontrivial cycles, 0-based, each rotated to start at its minimum."""
    n = len(a)
    seen = [False] * n
    out = []
    for i in range(n):
        if seen[i] or a[i] == i:
            seen[i] = True
            continue
        cyc = [i]
        seen[i] = True
        j = a[i]
        while j != i:
            cyc.append(j)
            seen[j] = True
            j = a[j]
        out.append(tuple(cyc))
    return out


def format_tuple(a: tuple[int, ...]) -> str:
    cycs = cycles_of(a)
    if not cycs:
        return "()"
    return "".join("(" + ",".join(str(x + 1) for x in c) + ")" for c in cycs)


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Parse a product of disjoint cycles like ``(1,2,3)(4,5)`` into a tuple.

    The empty string and ``()`` denote the identity.  Whitespace is
    ignored.  Raises CycleParseError on malformed input, points outside
    1..degree, or a repeated point.
    """
    if degree < 1:
        raise CycleParseError(f"degree must be >= 1, got {degree}")
    stripped = re.sub(r"\s+", "", text)
    images = list(range(degree))
    consumed = 0
    seen: set[int] = set()
    for m in _CYCLE_RE.finditer(stripped):
        consumed += len(m.group(0))
        body = m.group(1)
        if not body:
            continue
        try:
            points = [int(tok) for tok in body.split(",")]
        except ValueError as exc:
            raise CycleParseError(f"bad cycle {m.group(0)!r}") from exc
        for p in points:
            if not 1 <= p <= degree:
                raise CycleParseError(
                    f"point {p} out of range 1..{degree} in {text!r}")
            if p - 1 in seen:
                raise CycleParseError(f"repeated point {p} in {text!r}")
            seen.add(p - 1)
        for x, y in zip(points, points[1:]):
            images[x - 1] = y - 1
        images[points[-1] - 1] = points[0] - 1
    if consumed != len(stripped):
        raise CycleParseError(f"malformed cycle expression {text!r}")
    return tuple(images)


class Perm:
    """An immutable permutation of {0, ..., degree-1}."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a permutation: {images}")
        object.__setattr__(self, "images", images)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Perm is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    def __mul__(self, other: "Perm") -> "Perm":
        if len(self.images) != len(other.images):
            raise ValueError("degree mismatch")
        return Perm(mul(self.images, other.images))

    def __pow__(self, n: int) -> "Perm":
        return Perm(power(self.images, n))

    def inverse(self) -> "Perm":
        return Perm(inv(self.images))

    def __call__(self, x: int) -> int:
        return self.images[x]

    def order(self) -> int:
        return order_of(self.images)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def __eq__(self, other) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({format_tuple(self.images)}, degree={self.degree})"

    def __str__(self) -> str:
        return format_tuple(self.images)


def parse_perm(text: str, degree: int) -> Perm:
    """Parse cycle notation at the given degree; see :func:`parse_cycles`."""
    return Perm(parse_cycles(text, degree))


def identity(degree: int) -> Perm:
    return Perm(identity_tuple(degree))


def compose(g: Perm, h: Perm) -> Perm:
    """Apply g, then h."""
    return g * h


def inverse(g: Perm) -> Perm:
    return g.inverse()


def act(x: int, g: Perm) -> int:
    """Image of the (0-based) point x under g."""
    return g.images[x]
