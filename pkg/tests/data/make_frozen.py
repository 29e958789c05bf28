"""Regenerate frozen.json from the brute-force oracle only.

    python tests/data/make_frozen.py
"""

import itertools
import json
from pathlib import Path

from kchaos.batteries import canonical_shift_pairs, pairs_1d, swap_identity_system, three_cycle_system
from kchaos.oracle import brute_cone_unit, brute_profile, classical_pair_classify
from kchaos.systems import make_shift

UNIT_CASES = [((2, -1), 1, 3), ((1, 1), 2, 3), ((1, 1), 1, 10), ((2, -1), 1, 10),
              ((3, -2), 1, 6), ((3, -2), 2, 6), ((1, 1, -1), 1, 4), ((2, 3), 2, 8),
              ((-5, 3), 1, 8), ((1,), 1, 5), ((-1,), 2, 5)]


def exp_of(v):
    return v.exp


def deep_orbit(sys, x, k, depth=40):
    # points hit at cone depth in [depth, depth + 12) in every coordinate
    from kchaos.lattice import ConeIndex

    cone = ConeIndex(k, sys.d)
    pts = set()
    for u in itertools.product(range(depth, depth + 12), repeat=sys.d):
        pts.add(sys.act(cone.from_unsigned(u), x))
    return sorted(pts)


def build():
    out = {"cone_unit": [], "profiles": {}, "classical": {}, "limit_sets": []}
    for h, k, bound in UNIT_CASES:
        m = brute_cone_unit(h, k, bound)
        out["cone_unit"].append({"h": list(h), "k": k, "bound": bound,
                                 "m": list(m) if m else None})
    S = make_shift(2)
    for name, (x, y) in canonical_shift_pairs().items():
        for k in range(1, 5):
            prof = brute_profile(S, x, y, k, 6)
            out["profiles"][f"{name}/{k}"] = [[list(n), exp_of(v)] for n, v in prof.items()]
    for name, x, y in pairs_1d():
        r = classical_pair_classify(x, y)
        out["classical"][name] = {"proximal": r.proximal, "asymptotic": r.asymptotic,
                                  "liminf": exp_of(r.liminf), "limsup": exp_of(r.limsup)}
    for label, sys in (("three-cycle", three_cycle_system()), ("swap-identity", swap_identity_system())):
        for k in range(1, 5):
            for x in range(sys.space.size):
                out["limit_sets"].append({"system": label, "k": k, "x": x,
                                          "L": deep_orbit(sys, x, k)})
    return out


if __name__ == "__main__":
    path = Path(__file__).with_name("frozen.json")
    path.write_text(json.dumps(build(), indent=1, sort_keys=True) + "\n")
    print(f"wrote {path}")
