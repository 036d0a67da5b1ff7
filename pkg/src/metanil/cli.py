"""Command-line front end.

    metanil analyze --group S4 --k 1..6
    metanil verify --corpus standard --k 1..6 --mode canonical --jobs 8
    metanil witness --group S3 --k 1 --format json

Exit codes: 0 success, 1 inconsistent verdict, 2 input error,
3 enumeration cap exceeded, 4 no witness (condition holds).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from .catalog import builtin, entry_from_dict, load_manifest, load_spec, standard_corpus
from .criterion import (
    CANONICAL,
    FAST,
    check_condition,
    check_lemma_solu,
    verdict_from_report,
    verify_corollary,
    verify_theorem,
)
from .errors import InputError, NoWitness, TooLarge
from .fitting import fitting_subgroup, fitting_height, is_metanilpotent, prime_set
from .perm import DEFAULT_CAP, Group, build_group
from .series import derived_length, derived_series, is_nilpotent, is_soluble, lower_central_series, nilpotency_class

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INCONSISTENT, EXIT_INPUT, EXIT_CAP, EXIT_NO_WITNESS = 0, 1, 2, 3, 4

log = logging.getLogger("metanil")


@dataclass(frozen=True)
class RunConfig:
    input: str
    ks: tuple[int, ...]
    mode: str = FAST
    format: str = "text"
    cap: int = DEFAULT_CAP
    jobs: int = 1
    soluble_only: bool = False

    def __post_init__(self):
        if not self.ks or min(self.ks) < 1:
            raise InputError("k must be >= 1")
        if self.cap < 1:
            raise InputError("cap must be >= 1")

    @property
    def timing(self) -> bool:
        # canonical reports must be byte-identical across runs
        return self.mode != CANONICAL


def parse_k(text: str) -> tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            ks = tuple(range(int(lo), int(hi) + 1))
        else:
            ks = (int(text),)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if not ks or ks[0] < 1:
        raise argparse.ArgumentTypeError(f"k range must be nonempty and >= 1: {text!r}")
    return ks


def resolve_group(ref: str, cap: int) -> Group:
    path = Path(ref)
    if path.is_file():
        spec = load_spec(path)
    else:
        spec = next((e.spec for e in standard_corpus() if e.name == ref), None) or builtin(ref)
    return build_group(spec, cap=cap)


def resolve_corpus(ref: str):
    if ref in ("standard", "builtin"):
        entries = standard_corpus()
    else:
        entries = load_manifest(ref)
    if not entries:
        raise InputError(f"corpus {ref!r} is empty")
    return entries


def _group_summary(G: Group) -> dict:
    soluble = is_soluble(G)
    return {
        "name": G.name,
        "degree": G.degree,
        "order": G.order,
        "primes": list(prime_set(G).primes),
        "soluble": soluble,
        "derived_length": derived_length(G),
        "derived_orders": derived_series(G).orders,
        "lcs_orders": lower_central_series(G).orders,
        "nilpotent": is_nilpotent(G),
        "nilpotency_class": nilpotency_class(G),
        "fitting_order": fitting_subgroup(G).order,
        "fitting_height": fitting_height(G) if soluble else "not soluble",
        "metanilpotent": is_metanilpotent(G),
    }


def analyze_report(G: Group, config: RunConfig) -> dict:
    results = []
    for k in config.ks:
        cond = check_condition(G, k, mode=config.mode, jobs=config.jobs)
        verdict = verdict_from_report(G, cond)
        results.append({"condition": cond.to_dict(timing=config.timing), "verdict": verdict.to_dict()})
    return {
        "schema": SCHEMA_VERSION,
        "command": "analyze",
        "mode": config.mode,
        "group": _group_summary(G),
        "results": results,
        "consistent": all(r["verdict"]["consistent"] for r in results),
    }


def _verify_one(args) -> dict:
    entry_data, ks, mode, cap, timing = args
    entry = entry_from_dict(entry_data, entry_data.get("name", "entry"))
    start = time.perf_counter()
    G = build_group(entry.spec, cap=cap)
    theorem = [verify_theorem(G, k, mode=mode).to_dict() for k in ks]
    corollary = verify_corollary(G).to_dict()
    lemma_solu = None
    if is_soluble(G) and corollary["minimal_k"] is not None:
        lemma_solu = check_lemma_solu(G, corollary["minimal_k"])
    expected = entry.expected
    live = {
        "order": G.order,
        "soluble": is_soluble(G),
        "metanilpotent": corollary["metanilpotent"],
        "minimal_k": corollary["minimal_k"],
        "fitting_order": fitting_subgroup(G).order,
    }
    pinned_ok = all(expected[key] == value for key, value in live.items() if key in expected)
    elapsed = (time.perf_counter() - start) * 1000.0
    return {
        "name": entry.name,
        "order": G.order,
        "theorem": theorem,
        "corollary": corollary,
        "lemma_solu": lemma_solu,
        "pinned_facts_match": pinned_ok,
        "consistent": (
            all(v["consistent"] for v in theorem)
            and corollary["consistent"]
            and lemma_solu is not False
            and pinned_ok
        ),
        "elapsed_ms": round(elapsed, 3) if timing else None,
    }


def verify_report(entries, config: RunConfig) -> dict:
    if config.soluble_only:
        entries = [e for e in entries if is_soluble(build_group(e.spec, cap=config.cap))]
    tasks = [(e.to_dict(), config.ks, config.mode, config.cap, config.timing) for e in entries]
    if config.jobs > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            groups = list(pool.map(_verify_one, tasks))
    else:
        groups = [_verify_one(t) for t in tasks]
    inconsistent = [g["name"] for g in groups if not g["consistent"]]
    summary = {
        "groups": len(groups),
        "verdicts": sum(len(g["theorem"]) for g in groups),
        "inconsistent": inconsistent,
        "consistent": not inconsistent,
        "slowest": None,
    }
    if config.timing:
        slow = sorted(groups, key=lambda g: -g["elapsed_ms"])[:5]
        summary["slowest"] = [{"name": g["name"], "elapsed_ms": g["elapsed_ms"]} for g in slow]
    return {
        "schema": SCHEMA_VERSION,
        "command": "verify",
        "mode": config.mode,
        "k": list(config.ks),
        "soluble_only": config.soluble_only,
        "groups": groups,
        "summary": summary,
    }


def witness_report(G: Group, config: RunConfig) -> dict:
    k = config.ks[0]
    report = check_condition(G, k, mode=config.mode, jobs=config.jobs)
    if report.holds:
        raise NoWitness(f"condition holds for {G.name} at k={k}")
    return {
        "schema": SCHEMA_VERSION,
        "command": "witness",
        "mode": config.mode,
        "group": G.name,
        "k": k,
        "witness": report.witness.to_dict(),
    }


def render_text(obj, indent: int = 0) -> list[str]:
    """Indented key: value lines; the same facts as the JSON form minus image arrays."""
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if key == "images":
                continue
            if isinstance(value, (dict, list)) and not _is_flat(value):
                lines.append(f"{pad}{key}:")
                lines.extend(render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    else:
        for item in obj:
            sub = render_text(item, indent + 1)
            lines.append(f"{pad}- " + sub[0].lstrip())
            lines.extend(sub[1:])
    return lines


def _is_flat(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _scalar(value) -> str:
    if isinstance(value, list):
        return "[" + ", ".join(_scalar(v) for v in value) + "]"
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        sys.stdout.write("\n".join(render_text(report)) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="metanil",
        description="Coprime-order product condition on gamma_k-commutators of permutation groups.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, default_k):
        p.add_argument("--k", type=parse_k, default=parse_k(default_k), help="N or A..B")
        p.add_argument("--mode", choices=(FAST, CANONICAL), default=FAST)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--cap", type=int, default=DEFAULT_CAP, help="element enumeration cap")
        p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = sub.add_parser("analyze", help="structural report and verdicts for one group")
    p.add_argument("--group", required=True, help="spec file path or builtin name")
    common(p, "1..6")

    p = sub.add_parser("verify", help="check every verdict over a corpus")
    p.add_argument("--corpus", default="standard", help="manifest path or 'standard'")
    p.add_argument("--soluble-only", action="store_true", help="restrict to soluble groups")
    common(p, "1..6")

    p = sub.add_parser("witness", help="least violating pair for one group and k")
    p.add_argument("--group", required=True, help="spec file path or builtin name")
    common(p, "1")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            input=getattr(args, "group", None) or getattr(args, "corpus", None),
            ks=args.k, mode=args.mode, format=args.format, cap=args.cap,
            jobs=max(1, args.jobs), soluble_only=getattr(args, "soluble_only", False),
        )
        if args.command == "analyze":
            report = analyze_report(resolve_group(config.input, config.cap), config)
            code = EXIT_OK if report["consistent"] else EXIT_INCONSISTENT
        elif args.command == "verify":
            report = verify_report(resolve_corpus(config.input), config)
            code = EXIT_OK if report["summary"]["consistent"] else EXIT_INCONSISTENT
        else:
            report = witness_report(resolve_group(config.input, config.cap), config)
            code = EXIT_OK
    except (InputError, OSError) as exc:
        log.error("%s", exc)
        return EXIT_INPUT
    except TooLarge as exc:
        log.error("%s", exc)
        return EXIT_CAP
    except NoWitness as exc:
        log.error("%s", exc)
        return EXIT_NO_WITNESS
    emit(report, config.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
