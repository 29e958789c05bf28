"""Three-valued verdicts, pair classifications and analysis settings."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; the result cannot be trusted."""


class Outcome(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Verdict:
    """Yes/No carry a rule name (exact reasoning) or a witness; Unknown
    carries the window that was exhausted."""

    outcome: Outcome
    rule: str | None = None
    exact: bool = False
    witness: Any = None
    window: int | None = None
    note: str | None = None

    def __post_init__(self) -> None:
        if self.outcome is Outcome.UNKNOWN:
            if self.window is None:
                raise ValueError("Unknown verdicts must record the searched window")
            if self.exact:
                raise ValueError("Unknown verdicts cannot be exact")
        elif self.rule is None and self.witness is None:
            raise ValueError("Yes/No verdicts need a rule or a witness")

    @classmethod
    def yes(cls, rule: str, witness: Any = None, *, exact: bool = True,
            window: int | None = None, note: str | None = None) -> "Verdict":
        return cls(Outcome.YES, rule, exact, witness, window, note)

    @classmethod
    def no(cls, rule: str, witness: Any = None, *, exact: bool = True,
           window: int | None = None, note: str | None = None) -> "Verdict":
        return cls(Outcome.NO, rule, exact, witness, window, note)

    @classmethod
    def unknown(cls, window: int, note: str | None = None, witness: Any = None) -> "Verdict":
        return cls(Outcome.UNKNOWN, None, False, witness, window, note)

    @property
    def is_yes(self) -> bool:
        return self.outcome is Outcome.YES

    @property
    def is_no(self) -> bool:
        return self.outcome is Outcome.NO

    @property
    def is_unknown(self) -> bool:
        return self.outcome is Outcome.UNKNOWN

    @property
    def exact_yes(self) -> bool:
        return self.is_yes and self.exact

    @property
    def exact_no(self) -> bool:
        return self.is_no and self.exact

    def agrees_with(self, other: "Verdict") -> bool:
        """Unknown matches anything; otherwise outcomes must coincide."""
        if self.is_unknown or other.is_unknown:
            return True
        return self.outcome is other.outcome


def combine_li_yorke(proximal: Verdict, asymptotic: Verdict, rule: str) -> Verdict:
    exact = proximal.exact and asymptotic.exact
    window = proximal.window if proximal.window is not None else asymptotic.window
    if proximal.is_no:
        return Verdict.no(rule, {"because": "not proximal"}, exact=proximal.exact, window=window)
    if asymptotic.is_yes:
        return Verdict.no(rule, {"because": "asymptotic"}, exact=asymptotic.exact, window=window)
    if proximal.is_yes and asymptotic.is_no:
        return Verdict.yes(rule, {"because": "proximal and not asymptotic"}, exact=exact,
                           window=window)
    return Verdict.unknown(window if window is not None else 0,
                           "proximality or asymptoticity undecided")


@dataclass(frozen=True)
class PairClass:
    proximal: Verdict
    asymptotic_at: dict
    asymptotic: Verdict
    li_yorke: Verdict
    rule: str
    liminf: Any = None
    limsup: Any = None

    @property
    def exact(self) -> bool:
        return all(v.exact for v in self.verdicts())

    def verdicts(self) -> list[Verdict]:
        return [self.proximal, self.asymptotic, self.li_yorke, *self.asymptotic_at.values()]

    def consistency_errors(self) -> list[str]:
        errs = []
        ly, px, asy = self.li_yorke, self.proximal, self.asymptotic
        if ly.is_yes and not (px.is_yes and asy.is_no):
            errs.append("li_yorke Yes without proximal Yes and asymptotic No")
        if px.is_yes and asy.is_no and not ly.is_yes:
            errs.append("proximal Yes and asymptotic No but li_yorke not Yes")
        if asy.is_yes and not px.is_yes:
            errs.append("asymptotic Yes without proximal Yes")
        for eps, v in self.asymptotic_at.items():
            if asy.is_yes and v.is_no:
                errs.append(f"asymptotic Yes but asymptotic_at({eps}) No")
        return errs

    def same_exact_verdicts(self, other: "PairClass") -> bool:
        pairs = [(self.proximal, other.proximal), (self.asymptotic, other.asymptotic),
                 (self.li_yorke, other.li_yorke)]
        pairs += [(v, other.asymptotic_at[e]) for e, v in self.asymptotic_at.items()
                  if e in other.asymptotic_at]
        return all(a.agrees_with(b) for a, b in pairs)


def _fraction_tuple(values) -> tuple[Fraction, ...]:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class AnalysisConfig:
    window: int = 32
    eps_grid: tuple = (Fraction(1, 2), Fraction(1, 4), Fraction(1, 8), Fraction(1, 16))
    delta: Fraction = Fraction(1, 2)
    sample_count: int = 20
    seed: int = 0
    unit_bound: int = 10
    conjugacy_samples: int = 50
    cylinder_radius: int = 1
    threads: int = 1

    def __post_init__(self) -> None:
        grid = _fraction_tuple(self.eps_grid)
        object.__setattr__(self, "eps_grid", grid)
        object.__setattr__(self, "delta", Fraction(self.delta))
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if not grid or any(e <= 0 for e in grid):
            raise ValueError("eps_grid must hold positive values")
        if any(a <= b for a, b in zip(grid, grid[1:])):
            raise ValueError("eps_grid must be strictly decreasing")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.sample_count < 1 or self.unit_bound < 1 or self.cylinder_radius < 0:
            raise ValueError("sample_count and unit_bound must be positive")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")

    def replace(self, **changes: Any) -> "AnalysisConfig":
        return dataclasses.replace(self, **changes)

    def with_eps(self, *extra) -> "AnalysisConfig":
        grid = sorted(set(self.eps_grid) | {Fraction(e) for e in extra}, reverse=True)
        return self.replace(eps_grid=tuple(grid))
