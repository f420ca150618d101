"""Command-line surface: thin client over the core library.

Exit codes: 0 success / all claims pass, 1 claim failure, 2 usage or parse
error. All randomized commands take --seed and are bit-reproducible.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .analysis import analyze
from .assignment import MessageAssignment
from .bounds import DEFAULT_EXHAUSTIVE_LIMIT, upper_bound
from .scheduler import EXACT_SEARCH_LIMIT, achievable_dof
from .topology import (
    Topology,
    TopologyError,
    cyclic_wyner,
    fully_connected,
    mixed_coherence_example,
    wyner,
)
from .verifier import (
    LinearScheme,
    SchemeError,
    check_interference_rank,
    monte_carlo_dof,
    random_full_rank_precoder,
    two_slot_repetition_scheme,
)

EXIT_OK = 0
EXIT_CLAIM_FAILED = 1
EXIT_USAGE = 2

GENERATORS = {
    "wyner": lambda k: wyner(k),
    "cyclic": lambda k: cyclic_wyner(k),
    "full": lambda k: fully_connected(k),
    "figure4": lambda k: mixed_coherence_example(),
    "mixed-coherence": lambda k: mixed_coherence_example(),
}


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc


def _load_topology(path: str) -> Topology:
    try:
        return Topology.from_json(_read_text(path))
    except TopologyError as exc:
        raise CliError(f"topology: {exc}") from exc


def _load_scheme(path: str) -> LinearScheme:
    try:
        return LinearScheme.from_json(_read_text(path))
    except SchemeError as exc:
        raise CliError(f"scheme: {exc}") from exc


def cmd_topology(args: argparse.Namespace) -> int:
    gen = GENERATORS[args.generator]
    needs_k = args.generator in ("wyner", "cyclic", "full")
    if needs_k and args.k is None:
        raise CliError(f"generator {args.generator!r} requires --k")
    try:
        t = gen(args.k)
    except TopologyError as exc:
        raise CliError(str(exc)) from exc
    print(t.to_json())
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    t = _load_topology(args.topology)
    report = analyze(t, exhaustive_limit=args.exhaustive_limit, seed=args.seed)
    if args.json:
        print(report.to_json())
    else:
        for line in report.summary_lines():
            print(line)
        print(report.to_json())
    return EXIT_OK


def cmd_bound(args: argparse.Namespace) -> int:
    t = _load_topology(args.topology)
    cert = upper_bound(t, args.exhaustive_limit)
    print(cert.to_json())
    return EXIT_OK


def cmd_achieve(args: argparse.Namespace) -> int:
    t = _load_topology(args.topology)
    _, cert = achievable_dof(t, exact_limit=args.exact_limit)
    print(cert.to_json())
    return EXIT_OK


def cmd_verify_scheme(args: argparse.Namespace) -> int:
    t = _load_topology(args.topology)
    s = _load_scheme(args.scheme)
    try:
        verdict = monte_carlo_dof(t, s, trials=args.trials, seed=args.seed)
    except SchemeError as exc:
        raise CliError(str(exc)) from exc
    print(json.dumps(verdict.to_json_dict(), separators=(",", ":")))
    return EXIT_OK if verdict.all_active_decodable(s) else EXIT_CLAIM_FAILED


def _print_table(rows: list[tuple[str, str, str, bool]]) -> bool:
    width = max(len(r[0]) for r in rows)
    all_ok = True
    for name, claim, observed, ok in rows:
        verdict = "pass" if ok else "FAIL"
        print(f"{name.ljust(width)}  claim={claim}  observed={observed}  {verdict}")
        all_ok = all_ok and ok
    return all_ok


def _repro_theorem1(k_list: list[int]) -> list[tuple[str, str, str, bool]]:
    rows = []
    for k in k_list:
        t = wyner(k)
        lower, _ = achievable_dof(t)
        upper = upper_bound(t)
        target = Fraction(2 * k, 3)
        ok = lower == upper.value == target
        rows.append((f"wyner K={k}", str(target), f"lower={lower} upper={upper.value}", ok))
    return rows


def _repro_lemma2(trials: int, seed: int) -> list[tuple[str, str, str, bool]]:
    import numpy as np

    rows = []
    rng = np.random.default_rng(seed)
    for k in (6, 9):
        t = wyner(k)
        failures = 0
        total = 0
        for i in range(3, k):
            for n in (2, 3, 4):
                for mi in range(1, n + 1):
                    m = [0] * k
                    m[i - 1] = mi
                    sets = [frozenset()] * k
                    sets[i - 1] = frozenset({i - 1, i})
                    scheme = LinearScheme(
                        n,
                        tuple(m),
                        MessageAssignment(k, tuple(sets)),
                        {
                            (i - 1, i): random_full_rank_precoder(n, mi, rng),
                            (i, i): random_full_rank_precoder(n, mi, rng),
                        },
                    )
                    rep = check_interference_rank(t, scheme, i, trials=trials, seed=seed)
                    failures += rep.failures
                    total += rep.trials
        rows.append((f"chain K={k}", "0 rank failures", f"{failures}/{total} failures", failures == 0))
    return rows


def _repro_fullyconnected() -> list[tuple[str, str, str, bool]]:
    rows = []
    for k in range(2, 11):
        t = fully_connected(k)
        lower, _ = achievable_dof(t)
        upper = upper_bound(t)
        ok = lower == upper.value == 1
        rows.append((f"full K={k}", "1", f"lower={lower} upper={upper.value}", ok))
    return rows


def _repro_coherence(trials: int, seed: int) -> list[tuple[str, str, str, bool]]:
    t = mixed_coherence_example()
    s = two_slot_repetition_scheme()
    mixed = monte_carlo_dof(t, s, trials=trials, seed=seed)
    flat = monte_carlo_dof(t.with_unit_coherence(), s, trials=trials, seed=seed)
    return [
        ("mixed coherence", "3/2", str(mixed.dof), mixed.generic and mixed.dof == Fraction(3, 2)),
        (
            "unit coherence",
            "1 (receiver 3 fails)",
            f"{flat.dof} decodable={list(flat.decodable)}",
            flat.generic and flat.dof == 1 and flat.decodable == (True, True, False),
        ),
    ]


def cmd_repro(args: argparse.Namespace) -> int:
    if args.case == "theorem1":
        k_list = args.k_list or [3, 6, 9, 12]
        rows = _repro_theorem1(k_list)
    elif args.case == "lemma2":
        rows = _repro_lemma2(args.trials, args.seed)
    elif args.case == "fullyconnected":
        rows = _repro_fullyconnected()
    else:
        rows = _repro_coherence(args.trials, args.seed)
    return EXIT_OK if _print_table(rows) else EXIT_CLAIM_FAILED


def cmd_serve(args: argparse.Namespace) -> int:
    try:
        import uvicorn
    except ImportError as exc:
        raise CliError("uvicorn is not installed; install the 'server' extra") from exc
    from .service import app

    uvicorn.run(app, host=args.host, port=args.port)
    return EXIT_OK


def _parse_k_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad k list {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="timcloud", description=__doc__)
    p.add_argument("--version", action="version", version=f"timcloud {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    pt = sub.add_parser("topology", help="emit a generated topology as JSON")
    pt.add_argument("generator", choices=sorted(GENERATORS))
    pt.add_argument("--k", type=int, default=None)
    pt.set_defaults(func=cmd_topology)

    pa = sub.add_parser("analyze", help="lower and upper DoF bounds with certificates")
    pa.add_argument("topology", help="topology JSON file, or - for stdin")
    pa.add_argument("--exhaustive-limit", type=int, default=DEFAULT_EXHAUSTIVE_LIMIT)
    pa.add_argument("--seed", type=int, default=0)
    pa.add_argument("--json", action="store_true", help="machine-readable output only")
    pa.set_defaults(func=cmd_analyze)

    pb = sub.add_parser("bound", help="converse upper bound certificate")
    pb.add_argument("topology")
    pb.add_argument("--exhaustive-limit", type=int, default=DEFAULT_EXHAUSTIVE_LIMIT)
    pb.add_argument("--json", action="store_true")
    pb.set_defaults(func=cmd_bound)

    pc = sub.add_parser("achieve", help="achievable lower bound certificate")
    pc.add_argument("topology")
    pc.add_argument("--exact-limit", type=int, default=EXACT_SEARCH_LIMIT)
    pc.add_argument("--json", action="store_true")
    pc.set_defaults(func=cmd_achieve)

    pv = sub.add_parser("verify-scheme", help="Monte Carlo decodability of a linear scheme")
    pv.add_argument("topology")
    pv.add_argument("scheme")
    pv.add_argument("--trials", type=int, default=50)
    pv.add_argument("--seed", type=int, default=0)
    pv.add_argument("--json", action="store_true")
    pv.set_defaults(func=cmd_verify_scheme)

    pr = sub.add_parser("repro", help="reproduce the headline claims at desk scale")
    pr.add_argument("case", choices=["theorem1", "lemma2", "fullyconnected", "coherence"])
    pr.add_argument("--k-list", type=_parse_k_list, default=None)
    pr.add_argument("--trials", type=int, default=50)
    pr.add_argument("--seed", type=int, default=0)
    pr.set_defaults(func=cmd_repro)

    ps = sub.add_parser("serve", help="run the HTTP service")
    ps.add_argument("--host", default="127.0.0.1")
    ps.add_argument("--port", type=int, default=8000)
    ps.set_defaults(func=cmd_serve)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
