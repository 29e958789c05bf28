"""Concrete Z^d actions behind one interface.

Every system exposes its dimension ``d``, ``act(n, x)``, ``dist(x, y)``,
membership and seeded point sampling, plus capability flags that the
analyzers dispatch on.
"""

from __future__ import annotations

import math
import random
from typing import Any, Callable, Sequence

import numpy as np

from .lattice import Vec, r_eval, vec
from .space import (
    FiniteSpace,
    SymbolicConfig,
    circle_distance,
    symbolic_distance,
)

#: tolerance for float identities on the circle (isometry, inverses)
CIRCLE_IDENTITY_TOL = 1e-12
#: tolerance when circle distances feed verdicts
CIRCLE_VERDICT_TOL = 1e-9


class System:
    kind = "abstract"
    is_finite = False
    is_isometric = False
    is_shift_structured = False
    #: distances are exact dyadics (shift metric)
    dyadic_metric = False

    d: int

    def act(self, n: Sequence[int], x):
        raise NotImplementedError

    def dist(self, x, y):
        raise NotImplementedError

    def contains(self, x) -> bool:
        return True

    def sample_points(self, rng: random.Random, count: int) -> list:
        raise NotImplementedError

    def flags(self) -> dict[str, bool]:
        return {
            "is_finite": self.is_finite,
            "is_isometric": self.is_isometric,
            "is_shift_structured": self.is_shift_structured,
        }

    def _check_n(self, n: Sequence[int]) -> Vec:
        n = tuple(n)
        if len(n) != self.d:
            raise ValueError(f"lattice element {n} does not have dimension {self.d}")
        return n

    def require(self, *points) -> None:
        for p in points:
            if not self.contains(p):
                raise ValueError(f"point {p!r} does not belong to this {self.kind} system")

    def __repr__(self) -> str:
        return f"<{type(self).__name__} kind={self.kind} d={self.d}>"


# -- finite permutation systems ----------------------------------------------

def _check_permutation(g: Sequence[int], size: int) -> tuple[int, ...]:
    g = tuple(int(v) for v in g)
    if len(g) != size or sorted(g) != list(range(size)):
        raise ValueError(f"generator {g} is not a bijection of {{0..{size - 1}}}")
    return g


def _cycles(g: tuple[int, ...]) -> dict[int, tuple[tuple[int, ...], int]]:
    where: dict[int, tuple[tuple[int, ...], int]] = {}
    for start in range(len(g)):
        if start in where:
            continue
        cyc = [start]
        p = g[start]
        while p != start:
            cyc.append(p)
            p = g[p]
        cyc_t = tuple(cyc)
        for i, c in enumerate(cyc_t):
            where[c] = (cyc_t, i)
    return where


class FiniteSystem(System):
    """Z^d acting on a finite metric space through d commuting permutations."""

    kind = "finite"
    is_finite = True

    def __init__(self, space: FiniteSpace, generators: Sequence[Sequence[int]]):
        if not generators:
            raise ValueError("need at least one generator")
        gens = [_check_permutation(g, space.size) for g in generators]
        for i, a in enumerate(gens):
            for j, b in enumerate(gens[:i]):
                ab = tuple(a[b[p]] for p in range(space.size))
                ba = tuple(b[a[p]] for p in range(space.size))
                if ab != ba:
                    raise ValueError(f"generators {j} and {i} do not commute")
        self.space = space
        self.generators = tuple(gens)
        self.d = len(gens)
        self._cyc = [_cycles(g) for g in gens]

    @property
    def orders(self) -> Vec:
        return tuple(math.lcm(*(len(c) for c, _ in cyc.values())) for cyc in self._cyc)

    def power(self, i: int, e: int, x: int) -> int:
        cyc, idx = self._cyc[i][x]
        return cyc[(idx + e) % len(cyc)]

    def act(self, n, x):
        n = self._check_n(n)
        for i, e in enumerate(n):
            if e:
                x = self.power(i, e, x)
        return x

    def dist(self, x, y):
        return self.space.dist(x, y)

    def contains(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.space.size

    def sample_points(self, rng, count):
        pts = list(range(self.space.size))
        return [pts[i % len(pts)] for i in range(count)]


def make_finite(space: FiniteSpace, generators: Sequence[Sequence[int]]) -> FiniteSystem:
    return FiniteSystem(space, generators)


# -- the full shift ----------------------------------------------------------

def random_config(rng: random.Random, d: int, q: int = 2, *, max_period: int = 3,
                  max_defects: int = 3, defect_radius: int = 4) -> SymbolicConfig:
    """Periodic background plus a few defects; no block family."""
    period = tuple(rng.randint(1, max_period) for _ in range(d))
    count = math.prod(period)
    flat = [rng.randrange(q) for _ in range(count)]
    table = np.asarray(flat, dtype=np.int64).reshape(period)
    defects = {}
    for _ in range(rng.randint(0, max_defects)):
        pos = tuple(rng.randint(-defect_radius, defect_radius) for _ in range(d))
        defects[pos] = rng.randrange(q)
    return SymbolicConfig(q, table, defects)


class ShiftSystem(System):
    """The full shift on {0..q-1}^(Z^d): (act(n, x))_m = x_{m+n}."""

    kind = "shift"
    is_shift_structured = True
    dyadic_metric = True

    def __init__(self, d: int, q: int = 2):
        if d < 1 or q < 2:
            raise ValueError("need d >= 1 and q >= 2")
        self.d = d
        self.q = q

    def act(self, n, x):
        return x.shifted(self._check_n(n))

    def dist(self, x, y):
        return symbolic_distance(x, y)

    def contains(self, x) -> bool:
        return isinstance(x, SymbolicConfig) and x.d == self.d and x.q == self.q

    def sample_points(self, rng, count):
        return [random_config(rng, self.d, self.q) for _ in range(count)]


def make_shift(d: int, alphabet_size: int = 2) -> ShiftSystem:
    return ShiftSystem(d, alphabet_size)


# -- circle rotations and induced actions ------------------------------------

class CircleRotation(System):
    """Rotation of R/Z by alpha, as a Z-action."""

    kind = "rotation"
    is_isometric = True

    def __init__(self, alpha: float):
        alpha = float(alpha)
        if not 0.0 < alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")
        self.alpha = alpha
        self.d = 1

    def act(self, n, x):
        (t,) = self._check_n(n)
        return (x + t * self.alpha) % 1.0

    def dist(self, x, y):
        return circle_distance(x, y)

    def contains(self, x) -> bool:
        return isinstance(x, float) and 0.0 <= x < 1.0

    def sample_points(self, rng, count):
        return [rng.random() for _ in range(count)]


class InducedSystem(System):
    """T_f(n, x) = f^{r(n)}(x) for a homeomorphism f and r(n) = h . n.

    With a structured 1-D ``base`` system, f^{r(n)} is a single base action
    by r(n); otherwise the forward/inverse maps are iterated.
    """

    def __init__(self, h: Sequence[int], *, base: System | None = None,
                 fwd: Callable | None = None, inv: Callable | None = None,
                 dist: Callable | None = None, samples: Sequence = ()):
        self.form = vec(h)
        self.d = len(self.form)
        self.base = base
        if base is not None:
            if base.d != 1:
                raise ValueError("the base of an induced action must be a Z-action")
            self._fwd = fwd or (lambda x: base.act((1,), x))
            self._inv = inv or (lambda x: base.act((-1,), x))
            self._dist = dist or base.dist
        else:
            if fwd is None or inv is None or dist is None:
                raise ValueError("generic induced systems need fwd, inv and dist")
            self._fwd, self._inv, self._dist = fwd, inv, dist
        self._samples = list(samples)
        self.kind = "rotation-induced" if isinstance(base, CircleRotation) else "induced"
        self.is_isometric = bool(base is not None and base.is_isometric)
        self.dyadic_metric = bool(base is not None and base.dyadic_metric)

    @property
    def shift_base(self) -> bool:
        return isinstance(self.base, ShiftSystem)

    def r(self, n: Sequence[int]) -> int:
        return r_eval(self.form, n)

    def base_power(self, e: int, x):
        if self.base is not None:
            return self.base.act((e,), x)
        step = self._fwd if e >= 0 else self._inv
        for _ in range(abs(e)):
            x = step(x)
        return x

    def act(self, n, x):
        return self.base_power(self.r(self._check_n(n)), x)

    def dist(self, x, y):
        return self._dist(x, y)

    def contains(self, x) -> bool:
        return self.base.contains(x) if self.base is not None else True

    def sample_points(self, rng, count):
        if self.base is not None:
            return self.base.sample_points(rng, count)
        if not self._samples:
            raise ValueError("no sample points supplied for this induced system")
        return [self._samples[i % len(self._samples)] for i in range(count)]


def make_rotation_induced(alpha: float, h: Sequence[int]) -> InducedSystem:
    return InducedSystem(h, base=CircleRotation(alpha))


def make_induced(base_fwd: Callable, base_inv: Callable, h: Sequence[int],
                 d: int | None = None, *, dist: Callable | None = None,
                 samples: Sequence = (), base: System | None = None) -> InducedSystem:
    """Induced action from an invertible map; the maps are checked to be
    mutually inverse on ``samples`` (or on base samples)."""
    h = vec(h)
    if d is not None and d != len(h):
        raise ValueError(f"form has dimension {len(h)}, expected {d}")
    sys = InducedSystem(h, base=base, fwd=base_fwd, inv=base_inv, dist=dist, samples=samples)
    pts = list(samples) or (base.sample_points(random.Random(0), 20) if base else [])
    for p in pts:
        if not _same_point(base_inv(base_fwd(p)), p) or not _same_point(base_fwd(base_inv(p)), p):
            raise ValueError(f"base maps are not mutually inverse at {p!r}")
    return sys


def make_induced_shift(h: Sequence[int], alphabet_size: int = 2) -> InducedSystem:
    base = ShiftSystem(1, alphabet_size)
    return make_induced(lambda x: x.shifted((1,)), lambda x: x.shifted((-1,)), h,
                        base=base)


def _same_point(a, b) -> bool:
    if isinstance(a, float) and isinstance(b, float):
        return circle_distance(a, b) <= CIRCLE_IDENTITY_TOL
    return a == b


# -- products and conjugates ------------------------------------------------

def _sup(a, b):
    return b if b > a else a


class ProductSystem(System):
    """T x S on X x Y with the supremum metric."""

    kind = "product"

    def __init__(self, A: System, B: System):
        if A.d != B.d:
            raise ValueError(f"dimension mismatch: {A.d} != {B.d}")
        self.A, self.B = A, B
        self.d = A.d
        self.is_isometric = A.is_isometric and B.is_isometric
        self.is_finite = False

    def act(self, n, x):
        n = self._check_n(n)
        return (self.A.act(n, x[0]), self.B.act(n, x[1]))

    def dist(self, x, y):
        return _sup(self.A.dist(x[0], y[0]), self.B.dist(x[1], y[1]))

    def contains(self, x) -> bool:
        return (isinstance(x, tuple) and len(x) == 2
                and self.A.contains(x[0]) and self.B.contains(x[1]))

    def sample_points(self, rng, count):
        return list(zip(self.A.sample_points(rng, count), self.B.sample_points(rng, count)))


def make_product(A: System, B: System) -> ProductSystem:
    return ProductSystem(A, B)


class SymbolRelabel:
    """Cellwise symbol permutation of configurations (a radius-0 block
    code); an isometry of the shift metric commuting with translations."""

    def __init__(self, perm: Sequence[int]):
        perm = tuple(int(p) for p in perm)
        if sorted(perm) != list(range(len(perm))):
            raise ValueError(f"{perm} is not a permutation")
        self.perm = perm

    def __call__(self, x: SymbolicConfig) -> SymbolicConfig:
        if x.q != len(self.perm):
            raise ValueError("relabeling alphabet does not match configuration")
        return x.relabeled(self.perm)

    def inverse(self) -> "SymbolRelabel":
        inv = [0] * len(self.perm)
        for i, p in enumerate(self.perm):
            inv[p] = i
        return SymbolRelabel(inv)

    def __repr__(self) -> str:
        return f"SymbolRelabel({list(self.perm)})"


class ConjugateSystem(System):
    """The action transported along a bijection h: act(n, y) = h(A.act(n, h^-1(y)))."""

    kind = "conjugate"

    def __init__(self, A: System, h_fwd: Callable, h_inv: Callable, *,
                 dist: Callable | None = None, samples: int = 50, seed: int = 0,
                 isometric_map: bool = False):
        self.A = A
        self.h_fwd, self.h_inv = h_fwd, h_inv
        self.d = A.d
        self._dist = dist or A.dist
        rng = random.Random(seed)
        pts = A.sample_points(rng, samples)
        for p in pts:
            if not _same_point(h_inv(h_fwd(p)), p):
                raise ValueError(f"h_inv(h_fwd(x)) != x at sample {p!r}")
        relabel = isinstance(h_fwd, SymbolRelabel) and A.is_shift_structured
        self.is_finite = A.is_finite
        self.is_isometric = A.is_isometric and (isometric_map or relabel)
        self.is_shift_structured = relabel
        self.dyadic_metric = A.dyadic_metric and (relabel or dist is None)
        if relabel:
            self.q = A.q
            # the shift capability is claimed only after it is observed
            for p in pts:
                y = h_fwd(p)
                for i in range(self.d):
                    e = tuple(1 if j == i else 0 for j in range(self.d))
                    if self.act(e, y) != y.shifted(e):
                        raise ValueError("relabeled action is not a translation")

    def act(self, n, y):
        return self.h_fwd(self.A.act(self._check_n(n), self.h_inv(y)))

    def dist(self, x, y):
        return self._dist(x, y)

    def contains(self, y) -> bool:
        try:
            return self.A.contains(self.h_inv(y))
        except (ValueError, TypeError, AttributeError, IndexError):
            return False

    def sample_points(self, rng, count):
        return [self.h_fwd(p) for p in self.A.sample_points(rng, count)]


def make_conjugate(A: System, h_fwd: Callable, h_inv: Callable, *,
                   samples: int = 50, **kwargs: Any) -> ConjugateSystem:
    return ConjugateSystem(A, h_fwd, h_inv, samples=samples, **kwargs)
