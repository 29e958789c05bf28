"""Execute a run configuration: build the systems, run the analyses in
order (optionally on a thread pool) and assemble a canonical report."""

from __future__ import annotations

import json
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Mapping

import jsonschema

from . import harness
from .analysis import (
    AnalysisConfig,
    classify_pair,
    dichotomy_report,
    distance_profile,
    equicontinuity_point_check,
    gl_membership,
    li_yorke_sensitivity_check,
    limit_set_finite,
    periodic_point_check,
    prolongation_set_finite,
    scrambled_set_check,
    sensitivity_check,
    transitivity_check,
)
from .batteries import GOLDEN, pair_battery_2d, pairs_1d, standard_battery
from .lattice import ConeIndex, solve_cone_unit
from .report import (
    SCHEMA_VERSION,
    load_schema,
    pairclass_json,
    parse_config,
    parse_fraction,
    to_jsonable,
    verdict_json,
)
from .space import FiniteSpace, difference_set
from .systems import (
    FiniteSystem,
    InducedSystem,
    ProductSystem,
    SymbolRelabel,
    System,
    make_conjugate,
    make_finite,
    make_induced_shift,
    make_product,
    make_rotation_induced,
    make_shift,
)


class ConfigError(ValueError):
    """The configuration is malformed or inconsistent (exit status 1)."""


@dataclass
class RunOutput:
    report: dict
    profiles: list = field(default_factory=list)  # (index, k, profile)

    @property
    def failed(self) -> bool:
        s = self.report["summary"]
        return bool(s["refuted"] or s["violations"])


_CFG_KEYS = ("window", "eps_grid", "delta", "sample_count", "unit_bound",
             "conjugacy_samples", "cylinder_radius")


def _analysis_config(base: AnalysisConfig, overrides: Mapping | None) -> AnalysisConfig:
    if not overrides:
        return base
    changes: dict[str, Any] = {}
    for key in _CFG_KEYS:
        if key not in overrides:
            continue
        v = overrides[key]
        if key == "eps_grid":
            v = tuple(parse_fraction(e) for e in v)
        elif key == "delta":
            v = parse_fraction(v)
        changes[key] = v
    try:
        return base.replace(**changes)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def build_system(desc: Mapping, known: Mapping[str, System]) -> System:
    kind = desc["kind"]
    try:
        if kind == "shift":
            return make_shift(desc.get("d", 2), desc.get("q", 2))
        if kind == "finite":
            return make_finite(FiniteSpace([[parse_fraction(v) for v in row]
                                            for row in desc["metric"]]), desc["generators"])
        if kind == "rotation-induced":
            return make_rotation_induced(float(desc.get("alpha", repr(GOLDEN))), desc["h"])
        if kind == "induced-shift":
            return make_induced_shift(desc["h"], desc.get("q", 2))
        if kind == "product":
            a, b = (known[f] for f in desc["factors"])
            return make_product(a, b)
        if kind == "relabel":
            inner = known[desc["of"]]
            perm = SymbolRelabel(desc["perm"])
            return make_conjugate(inner, perm, perm.inverse())
    except KeyError as exc:
        raise ConfigError(f"system {desc['id']!r}: missing or unknown reference {exc}") from exc
    except (ValueError, TypeError) as exc:
        raise ConfigError(f"system {desc['id']!r}: {exc}") from exc
    raise ConfigError(f"unknown system kind {kind!r}")


def parse_point(sys: System, desc: Any):
    if isinstance(sys, ProductSystem):
        if not isinstance(desc, list) or len(desc) != 2:
            raise ConfigError("product points are [first, second]")
        return (parse_point(sys.A, desc[0]), parse_point(sys.B, desc[1]))
    if isinstance(sys, FiniteSystem):
        return int(desc)
    if isinstance(sys, InducedSystem) and not sys.shift_base:
        return float(desc) % 1.0
    d = 1 if isinstance(sys, InducedSystem) else sys.d
    if not isinstance(desc, Mapping):
        raise ConfigError("configurations are objects with background/defects/block")
    return parse_config(desc, d)


def _named_pair(sys: System, name: str):
    pool = pairs_1d() if isinstance(sys, InducedSystem) else pair_battery_2d()
    for n, x, y in pool:
        if n == name:
            return x, y
    raise ConfigError(f"unknown canonical pair {name!r}")


class Runner:
    def __init__(self, doc: Mapping, *, seed: int | None = None, threads: int = 1):
        try:
            jsonschema.validate(doc, load_schema("config"))
        except jsonschema.ValidationError as exc:
            raise ConfigError(f"config does not match schema: {exc.message}") from exc
        self.seed = int(doc.get("seed", 0)) if seed is None else seed
        self.threads = threads
        self.base_cfg = _analysis_config(AnalysisConfig(seed=self.seed), doc.get("defaults"))
        self.systems: dict[str, System] = {}
        for desc in doc["systems"]:
            if desc["id"] in self.systems:
                raise ConfigError(f"duplicate system id {desc['id']!r}")
            self.systems[desc["id"]] = build_system(desc, self.systems)
        self.analyses = list(doc["analyses"])
        for i, a in enumerate(self.analyses):
            self._validate(i, a)

    def _validate(self, i: int, a: Mapping) -> None:
        sid = a.get("system")
        if sid is not None and sid not in self.systems:
            raise ConfigError(f"analysis {i}: unknown system {sid!r}")
        d = None
        if sid is not None:
            d = self.systems[sid].d
        elif a["name"] == "cone-unit":
            d = len(a.get("h", ()))
        elif a["name"] == "theorems" and a.get("suite") == "induced":
            d = len(a.get("h", (2, -1)))
        if "k" in a and d:
            try:
                ConeIndex(a["k"], d)
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        needs_system = {"classify-pair", "profile", "sensitivity", "equicontinuity",
                        "gl-membership", "li-yorke-sensitivity", "transitivity",
                        "periodic-point", "limit-set", "scrambled-set"}
        if a["name"] in needs_system and sid is None:
            raise ConfigError(f"analysis {i}: {a['name']} needs a system")
        if a["name"] == "cone-unit" and "h" not in a:
            raise ConfigError(f"analysis {i}: cone-unit needs h")

    # -- execution
    def run(self) -> RunOutput:
        if self.threads > 1:
            with ThreadPoolExecutor(max_workers=self.threads) as pool:
                outs = list(pool.map(self._run_one, range(len(self.analyses))))
        else:
            outs = [self._run_one(i) for i in range(len(self.analyses))]
        results, profiles = [], []
        refuted = violations = 0
        for entry, prof, n_ref, n_vio in outs:
            results.append(entry)
            if prof is not None:
                profiles.append(prof)
            refuted += n_ref
            violations += n_vio
        report = {
            "schema_version": SCHEMA_VERSION,
            "seed": self.seed,
            "results": results,
            "summary": {"analyses": len(results), "refuted": refuted, "violations": violations},
        }
        jsonschema.validate(report, load_schema("report"))
        return RunOutput(report, profiles)

    def _run_one(self, i: int):
        a = self.analyses[i]
        cfg = _analysis_config(self.base_cfg, a.get("overrides"))
        sys = self.systems.get(a.get("system")) if a.get("system") else None
        k = a.get("k", 1)
        entry = {"index": i, "analysis": a["name"]}
        if sys is not None:
            entry["system"] = a["system"]
            entry["k"] = k
        result, prof, n_ref, n_vio = self._dispatch(a, sys, k, cfg)
        entry["result"] = result
        return entry, (i, prof) if prof is not None else None, n_ref, n_vio

    def _points(self, a: Mapping, sys: System):
        if "pair" in a:
            return _named_pair(sys, a["pair"])
        if "x" not in a or "y" not in a:
            raise ConfigError(f"{a['name']} needs x and y (or a canonical pair name)")
        return parse_point(sys, a["x"]), parse_point(sys, a["y"])

    def _samples(self, sys: System, cfg: AnalysisConfig) -> list:
        return sys.sample_points(random.Random(cfg.seed), cfg.sample_count)

    def _dispatch(self, a: Mapping, sys: System | None, k: int, cfg: AnalysisConfig):
        name = a["name"]
        if name in ("classify-pair", "profile"):
            x, y = self._points(a, sys)
            prof = distance_profile(sys, x, y, k, cfg.window, threads=cfg.threads)
            if name == "profile":
                return [[list(n), to_jsonable(v)] for n, v in prof.items()], prof, 0, 0
            pc = classify_pair(sys, x, y, k, cfg)
            out = pairclass_json(pc)
            if sys.is_shift_structured or (isinstance(sys, InducedSystem) and sys.shift_base):
                out["difference_set"] = difference_set(x, y).kind
            return out, prof, 0, 0
        if name == "sensitivity":
            return verdict_json(sensitivity_check(sys, k, cfg)), None, 0, 0
        if name == "li-yorke-sensitivity":
            return verdict_json(li_yorke_sensitivity_check(sys, k, cfg)), None, 0, 0
        if name == "transitivity":
            return verdict_json(transitivity_check(sys, k, cfg)), None, 0, 0
        if name in ("equicontinuity", "gl-membership", "periodic-point"):
            pts = [parse_point(sys, a["x"])] if "x" in a else self._samples(sys, cfg)
            if name == "equicontinuity":
                vs = [equicontinuity_point_check(sys, p, cfg) for p in pts]
            elif name == "gl-membership":
                vs = [gl_membership(sys, p, a.get("l", 1), cfg) for p in pts]
            else:
                vs = [periodic_point_check(sys, p, k, cfg) for p in pts]
            return [verdict_json(v) for v in vs], None, 0, 0
        if name == "scrambled-set":
            pts = [parse_point(sys, p) for p in a.get("points", [])]
            try:
                return verdict_json(scrambled_set_check(sys, pts, k, cfg)), None, 0, 0
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc
        if name == "limit-set":
            if not isinstance(sys, FiniteSystem):
                raise ConfigError("limit sets need a finite system")
            x = parse_point(sys, a.get("x", 0))
            L, J = limit_set_finite(sys, x, k), prolongation_set_finite(sys, x, k)
            return {"L": sorted(L), "J": sorted(J), "equal": L == J}, None, 0, int(L != J)
        if name == "dichotomy":
            named = [(a["system"], sys)] if sys is not None else standard_battery()
            out, vio = {}, 0
            for label, s in named:
                rep = dichotomy_report(s, k, cfg)
                vio += len(rep.violations)
                out[label] = {
                    "classification": rep.classification,
                    "transitivity": verdict_json(rep.transitivity),
                    "sensitivity": verdict_json(rep.sensitivity),
                    "equicontinuity_points": rep.equicontinuity_points,
                    "samples": len(rep.equicontinuity),
                    "violations": list(rep.violations),
                }
            return out, None, 0, vio
        if name == "cone-unit":
            h = tuple(a["h"])
            bound = a.get("bound", cfg.unit_bound)
            unit = solve_cone_unit(h, ConeIndex(k, len(h)), bound)
            return {"h": list(h), "k": k, "bound": bound, "found": unit.found,
                    "m": list(unit.m) if unit.found else None}, None, 0, 0
        if name == "theorems":
            cases = self._suite(a, k, cfg)
            refuted = sum(1 for c in cases if c.refuted)
            return [to_jsonable(c) for c in cases], None, refuted, 0
        raise ConfigError(f"unknown analysis {name!r}")

    def _suite(self, a: Mapping, k: int, cfg: AnalysisConfig):
        suite = a.get("suite", "all")
        if suite == "all":
            return harness.all_suites(cfg)
        if suite == "dichotomy":
            return harness.dichotomy_suite(cfg, k) + harness.untestable_cases()
        if suite == "induced":
            return harness.induced_suite(a.get("base", "shift"), a.get("h", (2, -1)), k, cfg)
        if suite == "conjugacy":
            S = make_shift(2, 2)
            swap = SymbolRelabel((1, 0))
            C = make_conjugate(S, swap, swap.inverse(), samples=cfg.conjugacy_samples,
                               seed=cfg.seed)
            return harness.conjugacy_suite(S, C, swap, swap.inverse(), k, cfg)
        if suite == "product":
            return harness.product_suite(make_shift(2, 2),
                                         make_rotation_induced(GOLDEN, (1, 0)), k, cfg)
        raise ConfigError(f"unknown suite {suite!r}")


def run_document(doc: Mapping, *, seed: int | None = None, threads: int = 1) -> RunOutput:
    return Runner(doc, seed=seed, threads=threads).run()


def load_document(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"config is not valid JSON: {exc}") from exc
