"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 capacity exceeded,
3 internal cross-check failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

import numpy as np

from .builder import (
    DEFAULT_BUDGET,
    build_superposition,
    expected_measurement_cost,
    reverse_level,
    sample_repetitions,
)
from .encoding import decode_cycle, edge_count, to_ket
from .errors import CapacityExceeded, NotACycle
from .mapping import apply_um
from .oracle import WeightFormatError, WeightMatrix, min_tour
from .qstate import attach_ancilla_uniform
from . import verify as verify_mod

EXIT_OK, EXIT_USAGE, EXIT_CAPACITY, EXIT_MISMATCH = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _seed(text):
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="hamtree", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, *, need_n=True):
        p.add_argument("--n", type=int, required=need_n, help="vertex count")
        p.add_argument("--variant", choices=("projector", "aux"), default="projector")
        p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="live-term budget")
        p.add_argument("--out", type=Path, default=None)
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("-v", "--verbose", action="store_true",
                       help="print the gate trace to stderr")

    p = sub.add_parser("build", help="build the uniform cycle superposition")
    common(p)
    p.add_argument("--ancilla", choices=("reuse", "retain"), default="reuse")

    p = sub.add_parser("verify", help="run the built-in property checks")
    common(p)

    p = sub.add_parser("solve", help="minimum tour over the built superposition")
    common(p, need_n=False)
    p.add_argument("--weights", type=Path, required=True, help="CSV or JSON weight matrix")

    p = sub.add_parser("trace", help="gate trace and amplitude split for one level")
    common(p)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--sample", type=int, default=0, metavar="TRIALS",
                   help="Monte-Carlo repetition trials per level")
    p.add_argument("--seed", type=_seed, default=0)

    p = sub.add_parser("reverse", help="apply the inverse map to a built level")
    common(p)
    p.add_argument("--level", type=int, default=None,
                   help="level m to reverse into (default n-1)")
    return parser


def _tracer(args):
    if not args.verbose:
        return None
    return lambda line: print(line, file=sys.stderr)


def _check_n(n):
    if n is None or n < 3:
        raise UsageError(f"--n must be at least 3 (got {n})")


def _write(path: Path | None, obj):
    if path is not None:
        path.write_text(json.dumps(obj, indent=1) + "\n")


def cmd_build(args):
    _check_n(args.n)
    state, ledger = build_superposition(args.n, args.variant, ancilla_mode=args.ancilla,
                                        budget=args.budget, trace=_tracer(args))
    if args.out is not None:
        _write(args.out, state.to_json_obj())
        _write(args.out.with_suffix(".ledger.json"), ledger.to_json_obj())
    report = {
        "n": args.n,
        "terms": len(state),
        "levels_ok": ledger.levels_ok(),
        "ledger": ledger.to_json_obj(),
        "ancilla_mode": ledger.ancilla_mode,
        "ancilla_bits_consumed": ledger.ancilla_bits_consumed,
        "live_label_bits": ledger.live_label_bits,
        "sub_op_applications": ledger.sub_op_applications,
    }
    text = [f"n={args.n} terms={len(state)} levels_ok={str(ledger.levels_ok()).lower()}"]
    return EXIT_OK, report, text


def cmd_verify(args):
    _check_n(args.n)
    if args.n > 8:
        raise UsageError("verify runs exhaustive checks and needs n <= 8")
    checks = verify_mod.run_all(args.n, args.variant)
    ok = all(c.ok for c in checks)
    report = {"n": args.n, "ok": ok, "checks": [c.to_json_obj() for c in checks]}
    text = [f"{'PASS' if c.ok else 'FAIL'} {c.name}: {c.detail}" for c in checks]
    return (EXIT_OK if ok else EXIT_USAGE), report, text


def cmd_solve(args):
    try:
        w = WeightMatrix.load(args.weights)
    except OSError as exc:
        raise UsageError(f"cannot read {args.weights}: {exc}")
    if args.n is not None and args.n != w.n:
        raise UsageError(f"--n {args.n} but weight matrix has {w.n} vertices")
    state, _ = build_superposition(w.n, args.variant, budget=args.budget, trace=_tracer(args))
    s_mask, s_weight = min_tour(w, "state", state)
    e_mask, e_weight = min_tour(w, "exhaustive")
    agree = (s_mask, s_weight) == (e_mask, e_weight)
    tour = decode_cycle(s_mask, w.n)
    report = {
        "n": w.n,
        "tour": list(tour),
        "weight": s_weight,
        "mask": to_ket(s_mask, w.n),
        "exhaustive": {"tour": list(decode_cycle(e_mask, w.n)), "weight": e_weight},
        "sources_agree": agree,
    }
    text = [
        f"tour={'-'.join(map(str, tour))} weight={s_weight}",
        f"state={s_weight} exhaustive={e_weight} agree={str(agree).lower()}",
    ]
    return (EXIT_OK if agree else EXIT_MISMATCH), report, text


def cmd_trace(args):
    _check_n(args.n)
    m = args.level
    if not 3 <= m < args.n:
        raise UsageError(f"--level must satisfy 3 <= level < n (got {m})")
    lines = []
    state, _ = build_superposition(args.n, args.variant, budget=args.budget, upto=m)
    wide = attach_ancilla_uniform(state, m)
    if len(wide) > args.budget:
        raise CapacityExceeded(f"{len(wide)} live terms exceed budget {args.budget}")
    out = apply_um(wide, m, trace=lines.append)
    good = out.ancillas == 0
    total = out.norm_sq
    good_sq = int(np.dot(out.coeffs[good], out.coeffs[good]))
    good_frac = Fraction(good_sq, total)
    report = {
        "n": args.n,
        "level": m,
        "sub_ops": lines,
        "fired_terms": int(np.count_nonzero(good)),
        "residual_terms": int(np.count_nonzero(~good)),
        "good_fraction": str(good_frac),
        "residual_fraction": str(1 - good_frac),
    }
    text = lines + [
        f"fired={report['fired_terms']} residual={report['residual_terms']}",
        f"good_fraction={good_frac} residual_fraction={1 - good_frac}",
    ]
    if args.sample:
        rng = np.random.default_rng(args.seed)
        samples = []
        for level in range(3, args.n):
            counts = sample_repetitions(Fraction(2, level - 1), args.sample, rng)
            row = {"m": level, "mean": float(counts.mean()),
                   "expected": str(Fraction(level - 1, 2))}
            samples.append(row)
            text.append(f"m={level} mean_repetitions={row['mean']:.4f} expected={row['expected']}")
        report["samples"] = samples
        if args.n >= 4:
            report["expected_measurement_cost"] = str(expected_measurement_cost(args.n))
    return EXIT_OK, report, text


def cmd_reverse(args):
    _check_n(args.n)
    m = args.n - 1 if args.level is None else args.level
    if not 3 <= m < args.n:
        raise UsageError(f"--level must satisfy 3 <= level < n (got {m})")
    state, _ = build_superposition(args.n, args.variant, budget=args.budget, upto=m + 1)
    back = reverse_level(state, m, trace=_tracer(args))
    if args.out is not None:
        _write(args.out, back.to_json_obj())
    per_path = Counter(int(p) for p in back.paths)
    valid = True
    for p in per_path:
        try:
            decode_cycle(p, m)
        except NotACycle:
            valid = False
    uniform = len(set(per_path.values())) == 1
    restored = apply_um(back, m)
    roundtrip = bool(np.all(restored.ancillas == 0)) and restored.path_set() == state.path_set()
    report = {
        "n": args.n,
        "level": m,
        "terms": len(back),
        "distinct_paths": len(per_path),
        "ancillae_per_path": sorted(set(per_path.values())),
        "paths_valid": valid,
        "marginal_uniform": uniform,
        "roundtrip": roundtrip,
    }
    text = [f"level={m} terms={len(back)} paths={len(per_path)} "
            f"ancillae_per_path={report['ancillae_per_path']} "
            f"uniform={str(uniform).lower()} roundtrip={str(roundtrip).lower()}"]
    ok = valid and uniform and roundtrip
    return (EXIT_OK if ok else EXIT_MISMATCH), report, text


COMMANDS = {
    "build": cmd_build,
    "verify": cmd_verify,
    "solve": cmd_solve,
    "trace": cmd_trace,
    "reverse": cmd_reverse,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        code, report, text = COMMANDS[args.command](args)
    except CapacityExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (UsageError, WeightFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.format == "json":
        print(json.dumps(report, indent=1))
    else:
        print("\n".join(text))
    return code


if __name__ == "__main__":
    sys.exit(main())
