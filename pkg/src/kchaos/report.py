"""JSON encoding of verdicts and reports, schema validation and CSV export.

Distances are never written as binary floats: dyadics become
{"exp": e} ({"exp": null} for zero), rationals "p/q" strings and floats
shortest round-trip decimal strings.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from enum import Enum
from fractions import Fraction
from importlib import resources
from typing import Any, Mapping

import jsonschema
import numpy as np

from .analysis.verdict import PairClass, Verdict
from .space import BlockFamily, Dyadic, SymbolicConfig

SCHEMA_VERSION = 1


def load_schema(name: str) -> dict:
    text = resources.files("kchaos.schemas").joinpath(f"{name}.schema.json").read_text("utf-8")
    return json.loads(text)


def validate(doc: Any, name: str) -> None:
    jsonschema.validate(doc, load_schema(name))


def encode_key(key: Any) -> str:
    if isinstance(key, Fraction):
        return fraction_text(key)
    if isinstance(key, tuple):
        return ",".join(str(v) for v in key)
    return str(key)


def fraction_text(value: Fraction) -> str:
    return str(value.numerator) if value.denominator == 1 else f"{value.numerator}/{value.denominator}"


def config_json(c: SymbolicConfig) -> dict:
    out = {"q": c.q, "background": c.background.tolist(),
           "defects": [[list(p), s] for p, s in sorted(c.defects.items())]}
    if c.block is not None:
        b = c.block
        out["block"] = {"direction": list(b.direction), "base": b.base, "symbol": b.symbol,
                        "offset": list(b.offset)}
    return out


def to_jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, Dyadic):
        return {"exp": obj.exp}
    if isinstance(obj, Fraction):
        return fraction_text(obj)
    if isinstance(obj, (float, np.floating)):
        return repr(float(obj))
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, SymbolicConfig):
        return config_json(obj)
    if isinstance(obj, Verdict):
        return verdict_json(obj)
    if isinstance(obj, PairClass):
        return pairclass_json(obj)
    if isinstance(obj, Mapping):
        return {encode_key(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [to_jsonable(v) for v in obj]
        if isinstance(obj, (set, frozenset)):
            items.sort(key=lambda v: json.dumps(v, sort_keys=True))
        return items
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot encode {type(obj).__name__}")


def verdict_json(v: Verdict) -> dict:
    out = {"outcome": v.outcome.value, "exact": v.exact}
    if v.rule is not None:
        out["rule"] = v.rule
    if v.window is not None:
        out["window"] = v.window
    if v.note is not None:
        out["note"] = v.note
    if v.witness is not None:
        out["witness"] = to_jsonable(v.witness)
    return out


def pairclass_json(pc: PairClass) -> dict:
    return {
        "rule": pc.rule,
        "proximal": verdict_json(pc.proximal),
        "asymptotic": verdict_json(pc.asymptotic),
        "li_yorke": verdict_json(pc.li_yorke),
        "asymptotic_at": {fraction_text(e): verdict_json(v) for e, v in pc.asymptotic_at.items()},
        "liminf": to_jsonable(pc.liminf),
        "limsup": to_jsonable(pc.limsup),
    }


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def profile_csv(profile: Mapping[tuple, Any]) -> str:
    """Rows n_1..n_d,distance_exp; zero distance is written as -inf."""
    if not profile:
        raise ValueError("empty profile")
    d = len(next(iter(profile)))
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow([f"n_{i + 1}" for i in range(d)] + ["distance_exp"])
    for n, value in profile.items():
        if not isinstance(value, Dyadic):
            raise TypeError("CSV export needs exact dyadic distances")
        w.writerow(list(n) + ["-inf" if value.exp is None else value.exp])
    return buf.getvalue()


# -- parsing point descriptors -------------------------------------------------

def parse_fraction(value: Any) -> Fraction:
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, bool):
        raise ValueError("booleans are not numbers")
    return Fraction(value)


def parse_config(desc: Mapping, d: int) -> SymbolicConfig:
    q = desc.get("q", 2)
    bg = desc.get("background", 0)
    table = np.asarray(bg, dtype=np.int64) if isinstance(bg, list) else int(bg)
    defects = {tuple(p): s for p, s in desc.get("defects", [])}
    block = None
    if "block" in desc:
        b = desc["block"]
        block = BlockFamily(tuple(b["direction"]), b["base"], b["symbol"],
                            tuple(b["offset"]) if "offset" in b else None)
    return SymbolicConfig(q, table, defects, block, d=d)
