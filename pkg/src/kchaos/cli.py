"""Command-line entry point.

Exit status: 0 on success, 1 for configuration errors, 2 when an
invariant is violated or a theorem case is refuted.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .analysis import InvariantViolation
from .report import dumps, profile_csv
from .runner import ConfigError, RunOutput, load_document, run_document

log = logging.getLogger("kchaos")


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=1, help="cone index 1..2^d")
    p.add_argument("--window", type=int, help="box half-width W")
    p.add_argument("--seed", type=int, help="seed for sampling")
    p.add_argument("--threads", type=int, default=1, help="worker threads")
    p.add_argument("--out", help="write the JSON report here (default stdout)")
    p.add_argument("--profile-csv", help="write distance profiles as CSV here")
    p.add_argument("--figures", help="render profile figures into this directory")
    p.add_argument("-v", "--verbose", action="store_true")


def _intvec(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kchaos",
                                     description="k-type chaos analyses for Z^d actions")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="run a JSON configuration")
    p.add_argument("config")
    _common(p)

    p = sub.add_parser("classify-pair", help="classify a canonical pair")
    p.add_argument("--pair", default="finite", help="canonical pair name")
    p.add_argument("--system", choices=["shift", "induced-shift"], default="shift")
    p.add_argument("--h", type=_intvec, default=[2, -1], help="form for induced-shift")
    _common(p)

    p = sub.add_parser("sensitivity", help="k-sensitivity of a standard system")
    p.add_argument("--system", choices=["shift", "rotation", "three-cycle", "induced-shift"],
                   default="shift")
    p.add_argument("--h", type=_intvec, default=[2, -1])
    _common(p)

    p = sub.add_parser("dichotomy", help="dichotomy over the standard battery")
    _common(p)

    p = sub.add_parser("cone-unit", help="search m >^k 0 with h . m = 1")
    p.add_argument("--h", type=_intvec, required=True)
    p.add_argument("--bound", type=int, default=10)
    _common(p)

    p = sub.add_parser("theorems", help="run theorem suites")
    p.add_argument("--suite", choices=["conjugacy", "product", "induced", "dichotomy", "all"],
                   default="all")
    p.add_argument("--base", choices=["shift", "rotation"], default="shift")
    p.add_argument("--h", type=_intvec, default=[2, -1])
    _common(p)
    return parser


def _system_desc(name: str, h: list[int]) -> dict:
    if name == "shift":
        return {"id": "shift", "kind": "shift", "d": 2, "q": 2}
    if name == "rotation":
        return {"id": "rotation", "kind": "rotation-induced", "h": [1, 0]}
    if name == "three-cycle":
        return {"id": "three-cycle", "kind": "finite", "metric": [[0, 1, 1], [1, 0, 1], [1, 1, 0]],
                "generators": [[1, 2, 0], [1, 2, 0]]}
    return {"id": "induced-shift", "kind": "induced-shift", "h": h}


def document_for(args: argparse.Namespace) -> dict:
    """Translate a shortcut subcommand into a configuration document."""
    if args.command == "run":
        return load_document(args.config)
    doc: dict = {"schema_version": 1, "systems": [], "analyses": []}
    k = args.k
    if args.command == "classify-pair":
        desc = _system_desc(args.system, args.h)
        doc["systems"].append(desc)
        doc["analyses"].append({"name": "classify-pair", "system": desc["id"], "k": k,
                                "pair": args.pair})
    elif args.command == "sensitivity":
        desc = _system_desc(args.system, args.h)
        doc["systems"].append(desc)
        doc["analyses"].append({"name": "sensitivity", "system": desc["id"], "k": k})
    elif args.command == "dichotomy":
        doc["analyses"].append({"name": "dichotomy", "k": k})
    elif args.command == "cone-unit":
        doc["analyses"].append({"name": "cone-unit", "h": args.h, "k": k, "bound": args.bound})
    elif args.command == "theorems":
        a = {"name": "theorems", "suite": args.suite, "k": k}
        if args.suite == "induced":
            a.update(base=args.base, h=args.h)
        doc["analyses"].append(a)
    return doc


def _apply_overrides(doc: dict, args: argparse.Namespace) -> dict:
    if args.window is not None:
        doc = dict(doc)
        doc["defaults"] = dict(doc.get("defaults", {}), window=args.window)
    return doc


def write_outputs(out: RunOutput, args: argparse.Namespace) -> None:
    text = dumps(out.report)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.profile_csv and out.profiles:
        chunks = []
        for i, prof in out.profiles:
            try:
                chunks.append(f"# analysis {i}\n" + profile_csv(prof))
            except TypeError:
                log.warning("analysis %d: profile is not dyadic, left out of the CSV", i)
        Path(args.profile_csv).write_text("".join(chunks), encoding="utf-8")
    if args.figures and out.profiles:
        from .plotting import plot_profile

        fig_dir = Path(args.figures)
        for i, prof in out.profiles:
            entry = out.report["results"][i]
            plot_profile(prof, fig_dir / f"profile-{i:03d}.png",
                         f"{entry.get('system', '')} k={entry.get('k', '')}")


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.threads < 1:
        print("error: --threads must be at least 1", file=sys.stderr)
        return 1
    try:
        doc = _apply_overrides(document_for(args), args)
        out = run_document(doc, seed=args.seed, threads=args.threads)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return 2
    write_outputs(out, args)
    if out.failed:
        s = out.report["summary"]
        print(f"failed: {s['refuted']} refuted, {s['violations']} violations", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
