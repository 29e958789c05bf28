"""Canonical systems and pairs shared by the suites, the CLI and tests."""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .space import BlockFamily, FiniteSpace, SymbolicConfig, constant_config
from .systems import (
    FiniteSystem,
    make_finite,
    make_rotation_induced,
    make_shift,
)

GOLDEN = 0.6180339887498949


def cycle(n: int, step: int = 1) -> tuple[int, ...]:
    return tuple((i + step) % n for i in range(n))


def three_cycle_system() -> FiniteSystem:
    rho = cycle(3)
    return make_finite(FiniteSpace.discrete(3), [rho, rho])


def swap_identity_system() -> FiniteSystem:
    return make_finite(FiniteSpace.discrete(2), [(1, 0), (0, 1)])


def identity_system(size: int = 2, d: int = 2) -> FiniteSystem:
    return make_finite(FiniteSpace.discrete(size), [tuple(range(size))] * d)


def standard_battery():
    """The systems every dichotomy run covers, in report order."""
    return [
        ("shift-z2", make_shift(2, 2)),
        ("rotation-induced", make_rotation_induced(GOLDEN, (1, 0))),
        ("three-cycle", three_cycle_system()),
    ]


# -- configurations --------------------------------------------------------

def zeros(d: int) -> SymbolicConfig:
    return constant_config(d, 0, 2)


def defect(d: int, pos=None, symbol: int = 1) -> SymbolicConfig:
    pos = pos if pos is not None else (0,) * d
    return zeros(d).with_symbol(pos, symbol)


def block_config(direction, base: int, symbol: int = 1, background=None) -> SymbolicConfig:
    d = len(direction)
    base_cfg = background if background is not None else zeros(d)
    return base_cfg.with_block(BlockFamily(tuple(direction), base, symbol))


def canonical_shift_pairs() -> dict[str, tuple[SymbolicConfig, SymbolicConfig]]:
    """Finite, periodic and block-line differences on Z^2."""
    x = zeros(2)
    return {
        "finite": (x, defect(2)),
        "periodic": (x, SymbolicConfig(2, np.array([[1, 0], [0, 0]]))),
        "blockline": (x, block_config((1, 1), 4)),
    }


def pair_battery_2d() -> list[tuple[str, SymbolicConfig, SymbolicConfig]]:
    x = zeros(2)
    checker = SymbolicConfig(2, np.array([[0, 1], [1, 0]]))
    pairs = [(name, a, b) for name, (a, b) in canonical_shift_pairs().items()]
    pairs += [
        ("identical", x, x),
        ("far-defect", x, defect(2, (3, 2))),
        ("two-defects", defect(2, (1, -1)), defect(2, (2, 5))),
        ("stripes", x, SymbolicConfig(2, np.array([[0, 1]]))),
        ("checker-vs-zero", checker, x),
        ("steep-blockline", x, block_config((2, 1), 3)),
        ("blockline-with-defect", defect(2, (-2, 0)), block_config((1, 1), 2,
                                                                   background=defect(2, (-2, 0)))),
    ]
    return pairs


def pairs_1d() -> list[tuple[str, SymbolicConfig, SymbolicConfig]]:
    x = zeros(1)
    alt = SymbolicConfig(2, np.array([0, 1]))
    return [
        ("identical", x, x),
        ("defect-origin", x, defect(1)),
        ("defect-far", x, defect(1, (5,))),
        ("two-defects", defect(1, (-3,)), defect(1, (4,))),
        ("period-2", x, SymbolicConfig(2, np.array([1, 0]))),
        ("period-3", x, SymbolicConfig(2, np.array([0, 0, 1]))),
        ("forward-blocks", x, block_config((1,), 2)),
        ("backward-blocks", x, block_config((-1,), 2)),
        ("sparse-forward-blocks", x, block_config((2,), 3)),
        ("blocks-over-period-2", alt, block_config((2,), 2, background=alt)),
    ]


def period_two_config() -> SymbolicConfig:
    return SymbolicConfig(2, np.array([0, 1]))


# -- random finite systems -------------------------------------------------

def random_finite_system(rng: random.Random, d: int = 2, max_points: int = 8,
                         max_order: int = 6) -> FiniteSystem:
    """Commuting generators built part by part: each part is a cycle on
    which every generator acts as a power, or a Klein four-group block."""
    while True:
        size = rng.randint(1, max_points)
        points = list(range(size))
        rng.shuffle(points)
        gens = [list(range(size)) for _ in range(d)]
        i = 0
        while i < size:
            part = rng.randint(1, size - i)
            cells = points[i:i + part]
            if part == 4 and d >= 2 and rng.random() < 0.5:
                a, b, c, e = cells
                klein = [{a: b, b: a, c: e, e: c}, {a: c, c: a, b: e, e: b}]
                for j in range(d):
                    mp = klein[j % 2] if rng.random() < 0.8 else {p: p for p in cells}
                    for p in cells:
                        gens[j][p] = mp[p]
            else:
                for j in range(d):
                    shift = rng.randrange(part)
                    for idx, p in enumerate(cells):
                        gens[j][p] = cells[(idx + shift) % part]
            i += part
        system_orders = []
        for g in gens:
            o, p = 1, tuple(g)
            while p != tuple(range(size)):
                p = tuple(g[q] for q in p)
                o += 1
            system_orders.append(o)
        if max(system_orders) <= max_order:
            break
    steps = [Fraction(1) + Fraction(j, 4) for j in range(5)]
    metric = [[Fraction(0)] * size for _ in range(size)]
    for a in range(size):
        for b in range(a + 1, size):
            metric[a][b] = metric[b][a] = rng.choice(steps)
    return make_finite(FiniteSpace(metric), gens)
