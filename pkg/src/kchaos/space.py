"""Points and exact metrics.

Symbolic configurations of the full Z^d shift are presented as a periodic
background, finitely many defects and at most one block family; the metric
is d(x, y) = 2^-min{|m|_inf : x_m != y_m}. Everything here is exact: the
distance of two configurations is always a :class:`Dyadic`.
"""

from __future__ import annotations

import functools
import heapq
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, Mapping, Sequence

import numpy as np

from .lattice import Vec, cheb, max_norm, sub, vec


# -- dyadic distances ------------------------------------------------------

@functools.total_ordering
class Dyadic:
    """Zero or 2^exp with exp <= 0. Compares exactly with numbers."""

    __slots__ = ("exp",)

    def __init__(self, exp: int | None):
        if exp is not None:
            exp = int(exp)
            if exp > 0:
                raise ValueError("dyadic distances are at most 1")
        object.__setattr__(self, "exp", exp)

    def __setattr__(self, name, value):
        raise AttributeError("Dyadic is immutable")

    @classmethod
    def zero(cls) -> "Dyadic":
        return cls(None)

    @classmethod
    def from_radius(cls, radius: int | None) -> "Dyadic":
        """2^-radius; None means the points agree everywhere."""
        return cls(None if radius is None else -radius)

    @property
    def is_zero(self) -> bool:
        return self.exp is None

    @property
    def radius(self) -> int | None:
        return None if self.exp is None else -self.exp

    def as_fraction(self) -> Fraction:
        if self.exp is None:
            return Fraction(0)
        return Fraction(1, 2 ** (-self.exp))

    def __float__(self) -> float:
        return 0.0 if self.exp is None else math.ldexp(1.0, self.exp)

    def _cmp_key(self, other):
        if isinstance(other, Dyadic):
            return other.as_fraction()
        if isinstance(other, (int, Fraction)):
            return Fraction(other)
        if isinstance(other, Real):
            return Fraction(float(other))
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, Dyadic):
            return self.exp == other.exp
        key = self._cmp_key(other)
        if key is NotImplemented:
            return NotImplemented
        return self.as_fraction() == key

    def __lt__(self, other) -> bool:
        if isinstance(other, Dyadic):
            if self.exp is None:
                return other.exp is not None
            return other.exp is not None and self.exp < other.exp
        key = self._cmp_key(other)
        if key is NotImplemented:
            return NotImplemented
        return self.as_fraction() < key

    def __hash__(self) -> int:
        return hash(self.as_fraction())

    def __repr__(self) -> str:
        return "Dyadic(0)" if self.exp is None else f"Dyadic(2^{self.exp})"


def as_fraction(value) -> Fraction:
    """Exact value of a distance (Dyadic, Fraction, int) or a float."""
    if isinstance(value, Dyadic):
        return value.as_fraction()
    return Fraction(value)


# -- block families ---------------------------------------------------------

def block_index(t: int, base: int) -> int | None:
    """The j >= 1 with base^j <= t <= base^j + j, if any."""
    if t < base:
        return None
    p, j = base, 1
    while p * base <= t:
        p *= base
        j += 1
    return j if t <= p + j else None


def block_times(base: int, j: int) -> range:
    start = base**j
    return range(start, start + j + 1)


@dataclass(frozen=True)
class BlockFamily:
    """Cells offset + t*direction for t in [B^j, B^j + j], j >= 1, all
    carrying ``symbol``. The offset lets translations act exactly."""

    direction: Vec
    base: int
    symbol: int
    offset: Vec | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "direction", vec(self.direction))
        off = self.offset if self.offset is not None else (0,) * len(self.direction)
        object.__setattr__(self, "offset", vec(off))
        if len(self.offset) != len(self.direction):
            raise ValueError("block offset and direction differ in dimension")
        if all(v == 0 for v in self.direction):
            raise ValueError("block direction must be nonzero")
        if self.base < 2:
            raise ValueError("block base must be >= 2")

    @property
    def d(self) -> int:
        return len(self.direction)

    def param(self, m: Sequence[int]) -> int | None:
        """t with m = offset + t*direction, if m lies on the line."""
        t = None
        for mi, oi, vi in zip(m, self.offset, self.direction):
            diff = mi - oi
            if vi == 0:
                if diff != 0:
                    return None
                continue
            if diff % vi:
                return None
            ti = diff // vi
            if t is None:
                t = ti
            elif t != ti:
                return None
        return t

    def contains(self, m: Sequence[int]) -> bool:
        t = self.param(m)
        return t is not None and block_index(t, self.base) is not None

    def cell(self, t: int) -> Vec:
        return tuple(o + t * v for o, v in zip(self.offset, self.direction))

    def translated(self, n: Sequence[int]) -> "BlockFamily":
        return BlockFamily(self.direction, self.base, self.symbol, sub(self.offset, n))

    def relabeled(self, perm: Sequence[int]) -> "BlockFamily":
        return BlockFamily(self.direction, self.base, perm[self.symbol], self.offset)


# -- configurations ---------------------------------------------------------

def _lcm_vec(a: Sequence[int], b: Sequence[int]) -> Vec:
    return tuple(math.lcm(x, y) for x, y in zip(a, b))


def _minimal_periods(table: np.ndarray) -> np.ndarray:
    for axis in range(table.ndim):
        p = table.shape[axis]
        for cand in range(1, p + 1):
            if p % cand == 0 and np.array_equal(np.roll(table, -cand, axis=axis), table):
                table = np.take(table, range(cand), axis=axis)
                break
    return table


def _tile(table: np.ndarray, period: Sequence[int]) -> np.ndarray:
    reps = tuple(p // s for p, s in zip(period, table.shape))
    return np.tile(table, reps)


class SymbolicConfig:
    """A point of the full shift over {0..q-1}^(Z^d).

    Lookup priority: block family cell, then defect, then background at
    m mod period. The presentation is normalized at construction (minimal
    background periods, no defects equal to the background or hidden under
    the block family, no invisible block family), so structural equality
    is equality of configurations.
    """

    __slots__ = ("q", "d", "_bg", "_defects", "block", "_key")

    def __init__(self, q: int, background, defects: Mapping | Iterable = (),
                 block: BlockFamily | None = None, *, d: int | None = None):
        if q < 2:
            raise ValueError("alphabet size must be >= 2")
        if isinstance(background, (int, np.integer)):
            if d is None:
                raise ValueError("constant background needs an explicit dimension d")
            table = np.full((1,) * d, int(background), dtype=np.int64)
        else:
            table = np.asarray(background, dtype=np.int64)
            if d is not None and table.ndim != d:
                raise ValueError(f"background has {table.ndim} axes, expected {d}")
        if table.ndim < 1 or table.size == 0:
            raise ValueError("background table must be non-empty")
        if table.min() < 0 or table.max() >= q:
            raise ValueError("background symbol outside alphabet")
        table = _minimal_periods(table)
        table.setflags(write=False)
        self.q = q
        self.d = table.ndim
        self._bg = table

        if block is not None:
            if block.d != self.d:
                raise ValueError("block family dimension mismatch")
            if not 0 <= block.symbol < q:
                raise ValueError("block symbol outside alphabet")
            if self._block_invisible(block):
                block = None
        self.block = block

        items = defects.items() if isinstance(defects, Mapping) else defects
        clean: dict[Vec, int] = {}
        for pos, sym in items:
            pos = vec(pos)
            sym = int(sym)
            if len(pos) != self.d:
                raise ValueError(f"defect {pos} has wrong dimension")
            if not 0 <= sym < q:
                raise ValueError(f"defect symbol {sym} outside alphabet")
            if block is not None and block.contains(pos):
                continue
            if sym == self.background_at(pos):
                clean.pop(pos, None)
                continue
            clean[pos] = sym
        self._defects = clean
        self._key = (q, self._bg.shape, self._bg.tobytes(),
                     frozenset(clean.items()), block)

    @classmethod
    def _raw(cls, q, table, defects, block) -> "SymbolicConfig":
        # trusted constructor: inputs already normalized
        self = object.__new__(cls)
        self.q = q
        self.d = table.ndim
        self._bg = table
        self._defects = defects
        self.block = block
        self._key = (q, table.shape, table.tobytes(), frozenset(defects.items()), block)
        return self

    def _block_invisible(self, block: BlockFamily) -> bool:
        span = math.lcm(*self.period)
        return all(self.background_at(block.cell(t)) == block.symbol for t in range(span))

    # -- accessors
    @property
    def period(self) -> Vec:
        return tuple(self._bg.shape)

    @property
    def background(self) -> np.ndarray:
        return self._bg

    @property
    def defects(self) -> dict[Vec, int]:
        return dict(self._defects)

    def defect_positions(self) -> Iterable[Vec]:
        return self._defects.keys()

    def background_at(self, m: Sequence[int]) -> int:
        return int(self._bg[tuple(mi % pi for mi, pi in zip(m, self._bg.shape))])

    def __getitem__(self, m: Sequence[int]) -> int:
        m = tuple(m)
        if self.block is not None and self.block.contains(m):
            return self.block.symbol
        s = self._defects.get(m)
        if s is not None:
            return s
        return self.background_at(m)

    def is_overridden(self, m: Vec) -> bool:
        return m in self._defects or (self.block is not None and self.block.contains(m))

    # -- derived configurations
    def shifted(self, n: Sequence[int]) -> "SymbolicConfig":
        """The translate sigma^n x, with (sigma^n x)_m = x_{m+n}."""
        n = tuple(n)
        if len(n) != self.d:
            raise ValueError("shift vector dimension mismatch")
        if not any(n):
            return self
        table = np.roll(self._bg, tuple(-x for x in n), axis=tuple(range(self.d)))
        table.setflags(write=False)
        defects = {sub(p, n): s for p, s in self._defects.items()}
        block = self.block.translated(n) if self.block is not None else None
        return SymbolicConfig._raw(self.q, table, defects, block)

    def with_symbol(self, m: Sequence[int], symbol: int) -> "SymbolicConfig":
        """Copy with one cell rewritten (fails on block-family cells)."""
        m = vec(m)
        if self.block is not None and self.block.contains(m):
            raise ValueError(f"{m} lies on the block family")
        defects = dict(self._defects)
        defects[m] = symbol
        return SymbolicConfig(self.q, self._bg, defects, self.block)

    def with_block(self, block: BlockFamily | None) -> "SymbolicConfig":
        return SymbolicConfig(self.q, self._bg, self._defects, block)

    def relabeled(self, perm: Sequence[int]) -> "SymbolicConfig":
        lut = np.asarray(perm, dtype=np.int64)
        table = lut[self._bg]
        defects = {p: perm[s] for p, s in self._defects.items()}
        block = self.block.relabeled(perm) if self.block is not None else None
        return SymbolicConfig(self.q, table, defects, block)

    # -- equality
    def __eq__(self, other) -> bool:
        if not isinstance(other, SymbolicConfig):
            return NotImplemented
        return self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        parts = [f"q={self.q}", f"period={self.period}"]
        if self._defects:
            parts.append(f"defects={dict(sorted(self._defects.items()))}")
        if self.block is not None:
            b = self.block
            parts.append(f"block=(v={b.direction}, B={b.base}, s={b.symbol}, o={b.offset})")
        return f"SymbolicConfig({', '.join(parts)})"

    def window(self, radius: int) -> dict[Vec, int]:
        return {m: self[m] for m in itertools.product(range(-radius, radius + 1), repeat=self.d)}


def constant_config(d: int, symbol: int = 0, q: int = 2) -> SymbolicConfig:
    return SymbolicConfig(q, symbol, d=d)


def config_get(c: SymbolicConfig, m: Sequence[int]) -> int:
    if len(m) != c.d:
        raise ValueError("dimension mismatch")
    return c[m]


# -- difference sets --------------------------------------------------------

class DiffSet:
    """Structured description of {m : x_m != y_m}."""

    kind: str = ""


@dataclass(frozen=True)
class EmptyDiff(DiffSet):
    kind = "empty"


@dataclass(frozen=True)
class FiniteDiff(DiffSet):
    cells: frozenset

    kind = "finite"

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("finite difference set must be non-empty")


@dataclass(frozen=True)
class PeriodicDiff(DiffSet):
    period: Vec
    residues: frozenset

    kind = "periodic"

    def __post_init__(self) -> None:
        if not self.residues:
            raise ValueError("periodic difference set needs a residue")
        for r in self.residues:
            if any(not 0 <= ri < pi for ri, pi in zip(r, self.period)):
                raise ValueError(f"residue {r} not reduced mod {self.period}")


@dataclass(frozen=True)
class BlockLineDiff(DiffSet):
    direction: Vec
    base: int
    offset: Vec

    kind = "blockline"

    @property
    def family(self) -> BlockFamily:
        return BlockFamily(self.direction, self.base, 0, self.offset)


@dataclass(frozen=True)
class OpaqueDiff(DiffSet):
    reason: str = ""

    kind = "opaque"


class UnsupportedStructure(ValueError):
    pass


def _check_pair(x: SymbolicConfig, y: SymbolicConfig) -> None:
    if x.d != y.d or x.q != y.q:
        raise ValueError("configurations differ in dimension or alphabet")


def _background_diff(x: SymbolicConfig, y: SymbolicConfig) -> tuple[Vec, frozenset]:
    L = _lcm_vec(x.period, y.period)
    bx, by = _tile(x.background, L), _tile(y.background, L)
    residues = frozenset(tuple(int(i) for i in idx) for idx in np.argwhere(bx != by))
    return L, residues


def difference_set(x: SymbolicConfig, y: SymbolicConfig) -> DiffSet:
    """The most structured exact description of where x and y disagree."""
    _check_pair(x, y)
    if x == y:
        return EmptyDiff()
    L, residues = _background_diff(x, y)
    positions = set(x.defect_positions()) | set(y.defect_positions())

    if x.block == y.block:
        if not residues:
            cells = frozenset(p for p in positions if x[p] != y[p])
            return FiniteDiff(cells) if cells else EmptyDiff()
        if x.block is None:
            for p in positions:
                in_class = tuple(pi % li for pi, li in zip(p, L)) in residues
                if (x[p] != y[p]) != in_class:
                    return OpaqueDiff("defects break the periodic difference")
            return PeriodicDiff(L, residues)
        return OpaqueDiff("periodic difference interrupted by a shared block family")

    if residues:
        return OpaqueDiff("background and block families both differ")
    if x.block is not None and y.block is not None:
        return OpaqueDiff("two distinct block families")
    plain, fam_cfg = (x, y) if y.block is not None else (y, x)
    fam = fam_cfg.block
    span = math.lcm(*L)
    if any(plain.background_at(fam.cell(t)) == fam.symbol for t in range(span)):
        return OpaqueDiff("block family agrees with the background on some cells")
    for p, s in plain.defects.items():
        if fam.contains(p):
            if s == fam.symbol:
                return OpaqueDiff("a defect matches the block symbol")
        elif fam_cfg[p] != s:
            return OpaqueDiff("defects differ off the block family")
    for p in fam_cfg.defect_positions():
        if plain[p] != fam_cfg[p]:
            return OpaqueDiff("defects differ off the block family")
    return BlockLineDiff(fam.direction, fam.base, fam.offset)


def _circ(a: int, p: int) -> int:
    r = a % p
    return min(r, p - r)


def _line_argmin(offset: Vec, direction: Vec, n: Vec) -> int:
    """Integer t minimizing max_i |offset_i + t v_i - n_i| (a convex function)."""
    def f(t: int) -> int:
        return max(abs(o + t * v - x) for o, v, x in zip(offset, direction, n))

    pts = [Fraction(x - o, v) for o, v, x in zip(offset, direction, n) if v]
    lo, hi = math.floor(min(pts)) - 1, math.ceil(max(pts)) + 1
    # smallest t in [lo, hi] with f(t+1) >= f(t)
    while lo < hi:
        mid = (lo + hi) // 2
        if f(mid + 1) >= f(mid):
            hi = mid
        else:
            lo = mid + 1
    return lo


def blockline_distance(direction: Vec, base: int, offset: Vec, n: Sequence[int]) -> int:
    """min over block cells p of |p - n|_inf, without enumerating blocks."""
    n = tuple(n)

    def f(t: int) -> int:
        return max(abs(o + t * v - x) for o, v, x in zip(offset, direction, n))

    t0 = _line_argmin(offset, direction, n)
    if t0 < base:
        return f(base)
    j = 1
    p = base
    while p * base <= t0:
        p *= base
        j += 1
    if t0 <= p + j:
        return f(t0)
    return min(f(p + j), f(p * base))


def periodic_distance(period: Vec, residues: Iterable[Vec], n: Sequence[int]) -> int:
    return min(max(_circ(ni - ri, pi) for ni, ri, pi in zip(n, r, period)) for r in residues)


def diffset_min_radius(D: DiffSet, n: Sequence[int]) -> int | None:
    """min_{p in D} |p - n|_inf in closed form; None for the empty set."""
    if isinstance(D, EmptyDiff):
        return None
    if isinstance(D, FiniteDiff):
        return min(cheb(p, n) for p in D.cells)
    if isinstance(D, PeriodicDiff):
        return periodic_distance(D.period, D.residues, n)
    if isinstance(D, BlockLineDiff):
        return blockline_distance(D.direction, D.base, D.offset, n)
    raise UnsupportedStructure("no closed form for an opaque difference set")


def diffset_profile_value(D: DiffSet, n: Sequence[int]) -> Dyadic:
    """d(sigma^n x, sigma^n y) for the pair D was built from."""
    return Dyadic.from_radius(diffset_min_radius(D, n))


def covering_radius(D: PeriodicDiff) -> int:
    """max over n of the distance from n to the periodic set."""
    return max(periodic_distance(D.period, D.residues, n)
               for n in itertools.product(*(range(p) for p in D.period)))


# -- exact distance for arbitrary presentations -----------------------------

_MAX_BLOCKS = 4096


def nearest_difference(x: SymbolicConfig, y: SymbolicConfig,
                       center: Sequence[int] | None = None) -> int | None:
    """min{|m - center|_inf : x_m != y_m}, or None when x == y.

    Every disagreement is a defect position, a block-family cell, or a
    plain cell whose background residues differ; each source is searched
    outward from ``center`` with a stopping bound.
    """
    _check_pair(x, y)
    if x == y:
        return None
    n = vec(center) if center is not None else (0,) * x.d
    best = math.inf

    for p in set(x.defect_positions()) | set(y.defect_positions()):
        if x[p] != y[p]:
            best = min(best, cheb(p, n))

    L, residues = _background_diff(x, y)
    for r in residues:
        best = _scan_residue(x, y, r, L, n, best)

    if x.block != y.block:
        fams = [b for b in (x.block, y.block) if b is not None]
        best = _scan_families(x, y, fams, n, best)

    if best == math.inf:
        raise RuntimeError("structurally distinct configurations with no difference found")
    return int(best)


def _scan_residue(x, y, r: Vec, L: Vec, n: Vec, best: float) -> float:
    a = tuple((ri - ni) % li for ri, ni, li in zip(r, n, L))
    rho = 0
    while rho < best:
        for z in itertools.product(range(-rho, rho + 1), repeat=len(n)):
            if max((abs(zi) for zi in z), default=0) != rho:
                continue
            offs = tuple(ai + li * zi for ai, li, zi in zip(a, L, z))
            dist = max(abs(o) for o in offs)
            if dist >= best:
                continue
            c = tuple(ni + o for ni, o in zip(n, offs))
            if x.is_overridden(c) or y.is_overridden(c):
                continue
            best = dist
        rho += 1
    return best


def _scan_families(x, y, fams: list[BlockFamily], n: Vec, best: float) -> float:
    # blocks are visited in order of their distance lower bound across all
    # families at once: one family may be contained in the other and never
    # disagree, so scanning them one after another need not terminate
    heap = []
    for idx, fam in enumerate(fams):
        vnorm, gap = max_norm(fam.direction), cheb(fam.offset, n)
        heap.append((fam.base * vnorm - gap, idx, 1, vnorm, gap))
    heapq.heapify(heap)
    steps = 0
    while heap:
        bound, idx, j, vnorm, gap = heapq.heappop(heap)
        if bound >= best:
            break
        steps += 1
        if steps > _MAX_BLOCKS:
            raise RuntimeError("block-family scan did not terminate")
        fam = fams[idx]
        for t in block_times(fam.base, j):
            c = fam.cell(t)
            dist = cheb(c, n)
            if dist < best and x[c] != y[c]:
                best = dist
        heapq.heappush(heap, (fam.base ** (j + 1) * vnorm - gap, idx, j + 1, vnorm, gap))
    return best


def symbolic_distance(x: SymbolicConfig, y: SymbolicConfig) -> Dyadic:
    return Dyadic.from_radius(nearest_difference(x, y))


# -- finite metric spaces and the circle ------------------------------------

class FiniteSpace:
    """Points 0..size-1 with an exact rational metric table."""

    def __init__(self, metric: Sequence[Sequence]):
        table = [[Fraction(v) for v in row] for row in metric]
        n = len(table)
        if n < 1 or any(len(row) != n for row in table):
            raise ValueError("metric must be a non-empty square table")
        for i in range(n):
            if table[i][i] != 0:
                raise ValueError(f"d({i},{i}) != 0")
            for j in range(n):
                if table[i][j] != table[j][i]:
                    raise ValueError(f"metric not symmetric at ({i},{j})")
                if i != j and table[i][j] <= 0:
                    raise ValueError(f"d({i},{j}) must be positive")
        for i, j, k in itertools.product(range(n), repeat=3):
            if table[i][k] > table[i][j] + table[j][k]:
                raise ValueError(f"triangle inequality fails for ({i},{j},{k})")
        self.size = n
        self.metric = tuple(tuple(row) for row in table)

    @classmethod
    def discrete(cls, size: int) -> "FiniteSpace":
        return cls([[0 if i == j else 1 for j in range(size)] for i in range(size)])

    def dist(self, a: int, b: int) -> Fraction:
        return self.metric[a][b]

    @property
    def resolution(self) -> Fraction:
        """Smallest positive distance (infinite-like 1 for a single point)."""
        vals = [v for row in self.metric for v in row if v > 0]
        return min(vals) if vals else Fraction(1)

    def ball(self, center: int, radius) -> list[int]:
        return [p for p in range(self.size) if self.metric[center][p] < radius]


def circle_distance(a: float, b: float) -> float:
    diff = abs(a - b) % 1.0
    return min(diff, 1.0 - diff)
