"""Exact arithmetic on Z^d: the k-type cone orders, cone enumeration and
the bounded search for cone solutions of r(m) = 1.

Lattice vectors are plain tuples of Python ints (arbitrary precision).
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

Vec = tuple[int, ...]


def vec(values: Iterable[int]) -> Vec:
    out = tuple(int(v) for v in values)
    if not out:
        raise ValueError("lattice vectors need dimension >= 1")
    return out


def zero(d: int) -> Vec:
    return (0,) * d


def add(a: Sequence[int], b: Sequence[int]) -> Vec:
    _check_dims(a, b)
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> Vec:
    _check_dims(a, b)
    return tuple(x - y for x, y in zip(a, b))


def neg(a: Sequence[int]) -> Vec:
    return tuple(-x for x in a)


def scale(c: int, a: Sequence[int]) -> Vec:
    return tuple(c * x for x in a)


def max_norm(a: Sequence[int]) -> int:
    return max(abs(x) for x in a)


def cheb(a: Sequence[int], b: Sequence[int]) -> int:
    """Max-norm distance |a - b|_inf."""
    return max(abs(x - y) for x, y in zip(a, b))


def _check_dims(a: Sequence[int], b: Sequence[int]) -> None:
    if len(a) != len(b):
        raise ValueError(f"dimension mismatch: {len(a)} != {len(b)}")


@dataclass(frozen=True)
class ConeIndex:
    """Selects one of the 2^d open orthants of Z^d.

    Bit i of ``k - 1`` (least significant first) flips the sign of
    coordinate i, so k = 1 is the positive orthant.
    """

    k: int
    d: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValueError("dimension must be >= 1")
        if not 1 <= self.k <= 2**self.d:
            raise ValueError(f"k out of range 1..{2 ** self.d}")

    @property
    def mask(self) -> tuple[int, ...]:
        return tuple(((self.k - 1) >> i) & 1 for i in range(self.d))

    @property
    def signs(self) -> Vec:
        return tuple(-1 if bit else 1 for bit in self.mask)

    def contains(self, n: Sequence[int]) -> bool:
        """True iff n >^k 0."""
        return cone_greater(self, n, zero(self.d))

    def to_unsigned(self, n: Sequence[int]) -> Vec:
        return tuple(s * x for s, x in zip(self.signs, n))

    # the map is an involution
    from_unsigned = to_unsigned

    @classmethod
    def of(cls, n: Sequence[int]) -> "ConeIndex":
        """The unique cone containing a vector with no zero coordinate."""
        if any(x == 0 for x in n):
            raise ValueError(f"{tuple(n)} lies on a coordinate hyperplane")
        k = 1 + sum(1 << i for i, x in enumerate(n) if x < 0)
        return cls(k, len(n))

    @classmethod
    def all(cls, d: int) -> list["ConeIndex"]:
        return [cls(k, d) for k in range(1, 2**d + 1)]


def as_cone(k: "ConeIndex | int", d: int) -> ConeIndex:
    if isinstance(k, ConeIndex):
        if k.d != d:
            raise ValueError(f"cone dimension {k.d} != system dimension {d}")
        return k
    return ConeIndex(int(k), d)


def cone_greater(k: ConeIndex, a: Sequence[int], b: Sequence[int]) -> bool:
    """The strict order a >^k b."""
    if len(a) != k.d or len(b) != k.d:
        raise ValueError(f"dimension mismatch: cone has d={k.d}, got {len(a)} and {len(b)}")
    return all(s * x > s * y for s, x, y in zip(k.signs, a, b))


def cone_shell(k: ConeIndex, N: int) -> list[Vec]:
    """All n >^k 0 with |n|_inf <= N, ordered by max-norm shell and then
    lexicographically inside a shell."""
    if N < 1:
        raise ValueError("N must be >= 1")
    signs = k.signs
    out = [tuple(s * u for s, u in zip(signs, us))
           for us in itertools.product(range(1, N + 1), repeat=k.d)]
    out.sort(key=lambda v: (max_norm(v), v))
    return out


def r_eval(h: Sequence[int], n: Sequence[int]) -> int:
    """The linear form r(n) = h . n."""
    _check_dims(h, n)
    return sum(a * b for a, b in zip(h, n))


@dataclass(frozen=True)
class ConeUnit:
    """Outcome of a bounded search for m >^k 0 with r(m) = 1.

    ``m`` is None when nothing was found inside the max-norm box of
    radius ``bound``; that says nothing about larger vectors.
    """

    m: Vec | None
    bound: int

    @property
    def found(self) -> bool:
        return self.m is not None

    def __bool__(self) -> bool:
        return self.found


def solve_cone_unit(h: Sequence[int], k: ConeIndex, bound: int) -> ConeUnit:
    """First m in cone_shell order with r(m) = 1, searching |m|_inf <= bound.

    Each shell is searched by fixing the first d-1 coordinates and solving
    for the last one, so the cost per shell is O(s^(d-1)).
    """
    if bound < 1:
        raise ValueError("bound must be >= 1")
    h = vec(h)
    if len(h) != k.d:
        raise ValueError(f"dimension mismatch: form has d={len(h)}, cone has d={k.d}")
    signs = k.signs
    # work in unsigned coordinates u_i >= 1, r = sum a_i u_i
    a = tuple(hi * si for hi, si in zip(h, signs))
    for s in range(1, bound + 1):
        best: Vec | None = None
        for prefix in itertools.product(range(1, s + 1), repeat=k.d - 1):
            rest = 1 - sum(ai * ui for ai, ui in zip(a, prefix))
            on_shell = bool(prefix) and max(prefix) == s
            last_range = range(1, s + 1) if on_shell else range(s, s + 1)
            if a[-1] == 0:
                if rest != 0:
                    continue
                lasts = list(last_range)
            else:
                if rest % a[-1] != 0:
                    continue
                u = rest // a[-1]
                if u not in last_range:
                    continue
                lasts = [u]
            for u in lasts:
                cand = tuple(si * ui for si, ui in zip(signs, prefix + (u,)))
                if best is None or cand < best:
                    best = cand
        if best is not None:
            return ConeUnit(best, bound)
    return ConeUnit(None, bound)


def scale_cone_unit(m: Sequence[int], n: int, h: Sequence[int],
                    k: ConeIndex | None = None) -> Vec:
    """n * m, for m a cone solution of r(m) = 1; r(n m) = n and n m stays
    in the same cone."""
    m = vec(m)
    if n < 1:
        raise ValueError("n must be a positive integer")
    if r_eval(h, m) != 1:
        raise ValueError(f"r({m}) = {r_eval(h, m)}, expected 1")
    if k is None:
        k = ConeIndex.of(m)
    elif not k.contains(m):
        raise ValueError(f"{m} is not in cone k={k.k}")
    return scale(n, m)


def solve_form(h: Sequence[int], target: int) -> Vec | None:
    """Some n in Z^d with r(n) = target (no cone constraint), via extended
    Euclid. None when gcd(h) does not divide target."""
    h = vec(h)
    g, coeffs = 0, [0] * len(h)
    for i, hi in enumerate(h):
        if hi == 0:
            continue
        if g == 0:
            g, coeffs = abs(hi), [0] * len(h)
            coeffs[i] = 1 if hi > 0 else -1
            continue
        # combine: g' = x*g + y*|hi|
        x, y, g2 = _ext_gcd(g, abs(hi))
        coeffs = [c * x for c in coeffs]
        coeffs[i] = y * (1 if hi > 0 else -1)
        g = g2
    if g == 0:
        return zero(len(h)) if target == 0 else None
    if target % g:
        return None
    return tuple(c * (target // g) for c in coeffs)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0, a


def form_gcd(h: Sequence[int]) -> int:
    return math.gcd(*h) if len(h) > 1 else abs(h[0])
