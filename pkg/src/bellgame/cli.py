"""Command-line front end.

Subcommands: ``convert``, ``classical``, ``quantum``, ``simulate``,
``catalog``, ``report``.  Numeric results print as a small table by default
or as ``key value`` lines with ``--format kv``.  Exit codes: 0 success,
1 malformed/invalid input, 2 solver failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog as cat
from .bellspec import parse, serialize
from .classical import DEFAULT_CAP, classical_bound, classical_value
from .errors import BellGameError, BellSpecSyntaxError, ValidationError
from .model import (
    CorrelationInequality,
    NonlocalGame,
    ValueReport,
    WeightedSumInequality,
)
from .quantum import (
    SeesawConfig,
    XorSolveConfig,
    seesaw_quantum_value,
    xor_quantum_value,
)
from .simulate import simulate
from .transform import (
    advantage,
    bell_to_game,
    correlation_to_weighted,
    game_to_bell,
    weighted_to_correlation,
)


def _read(path: str):
    return parse(Path(path).read_text(encoding="utf-8"))


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_pairs(pairs, fmt: str, out: str | None) -> None:
    if fmt == "kv":
        text = "".join(f"{k} {v}\n" for k, v in pairs)
    else:
        width = max(len(k) for k, _ in pairs)
        text = "".join(f"{k:<{width}}  {v}\n" for k, v in pairs)
    _emit(text, out)


def _real(x: float) -> str:
    return f"{x:.17g}"


def _as_game(value) -> NonlocalGame:
    if isinstance(value, NonlocalGame):
        return value
    if isinstance(value, CorrelationInequality):
        value = correlation_to_weighted(value)
    if isinstance(value, WeightedSumInequality):
        return bell_to_game(value)[0]
    raise BellSpecSyntaxError("input file is not a game or an inequality")


def _as_correlation(value) -> CorrelationInequality:
    if isinstance(value, CorrelationInequality):
        return value
    if isinstance(value, NonlocalGame):
        value = game_to_bell(value)
    if isinstance(value, WeightedSumInequality):
        return weighted_to_correlation(value)
    raise BellSpecSyntaxError("input file is not a game or an inequality")


def _default_dims(game: NonlocalGame) -> tuple[int, ...]:
    return tuple(
        max(2, max(len(game.alphabet(i, x)) for x in range(1, game.inputs[i - 1] + 1)))
        for i in range(1, game.parties + 1)
    )


def _cmd_convert(args) -> int:
    value = _read(args.infile)
    if args.to == "correlation":
        result = _as_correlation(value)
    elif args.to == "weighted":
        if isinstance(value, NonlocalGame):
            result = game_to_bell(value)
        elif isinstance(value, CorrelationInequality):
            result = correlation_to_weighted(value)
        elif isinstance(value, WeightedSumInequality):
            result = value
        else:
            raise BellSpecSyntaxError("input file is not a game or an inequality")
    else:
        result = _as_game(value)
    _emit(serialize(result), args.out)
    return 0


def _cmd_classical(args) -> int:
    value = _read(args.infile)
    if isinstance(value, NonlocalGame):
        result = classical_value(value, cap=args.cap, threads=args.threads)
        pairs = [
            ("classical_max", _real(result.p_max)),
            ("classical_min", _real(result.p_min)),
        ]
        if args.format == "table":
            for i in range(1, result.argmax.parties + 1):
                for x in range(1, result.argmax.input_counts[i - 1] + 1):
                    pairs.append((f"argmax_respond_{i}_{x}", str(result.argmax.response(i, x))))
    elif isinstance(value, (CorrelationInequality, WeightedSumInequality)):
        s_max, s_min = classical_bound(value, cap=args.cap, threads=args.threads)
        weighted = (
            correlation_to_weighted(value)
            if isinstance(value, CorrelationInequality)
            else value
        )
        total = weighted.total_weight()
        pairs = [
            ("s_max", _real(s_max)),
            ("s_min", _real(s_min)),
            ("p_max", _real(s_max / total)),
            ("p_min", _real(s_min / total)),
        ]
        if isinstance(value, CorrelationInequality):
            pairs.append(
                ("bound_reconstructed", _real(s_max - value.abs_coefficient_sum()))
            )
    else:
        raise BellSpecSyntaxError("input file is not a game or an inequality")
    _emit_pairs(pairs, args.format, None)
    return 0


def _cmd_quantum(args) -> int:
    value = _read(args.infile)
    if args.method == "xor":
        restarts = args.restarts if args.restarts is not None else 32
        ineq = _as_correlation(value)
        result = xor_quantum_value(
            ineq, XorSolveConfig(restarts=restarts, rng_seed=args.seed)
        )
        pairs = [
            ("method", "exact-xor"),
            ("bias", _real(result.bias)),
            ("quantum_value", _real(result.value)),
        ]
    else:
        restarts = args.restarts if args.restarts is not None else 16
        game = _as_game(value)
        dims = (
            tuple(int(d) for d in args.dims.split(","))
            if args.dims
            else _default_dims(game)
        )
        cfg = SeesawConfig(local_dims=dims, restarts=restarts, rng_seed=args.seed)
        result = seesaw_quantum_value(game, cfg)
        pairs = [
            ("method", "seesaw-lower-bound"),
            ("quantum_value", _real(result.value)),
            ("best_restart", str(result.best_restart)),
        ]
    _emit_pairs(pairs, args.format, None)
    return 0


def _cmd_simulate(args) -> int:
    game = _as_game(_read(args.infile))
    strategy = _read(args.strategy)
    report = simulate(game, strategy, rounds=args.rounds, seed=args.seed)
    if args.format == "kv":
        sys.stdout.write(report.kv_lines())
    else:
        pairs = [
            ("rounds", str(report.rounds)),
            ("wins", str(report.wins)),
            ("empirical_rate", _real(report.empirical_rate)),
            ("analytic_rate", _real(report.analytic_rate)),
            ("stderr", _real(report.stderr)),
            ("rng_seed", str(report.rng_seed)),
        ]
        _emit_pairs(pairs, "table", None)
    return 0


def _cmd_catalog(args) -> int:
    if args.name == "chsh":
        value = cat.chsh()
    elif args.name == "gisin":
        if args.n is None:
            raise BellSpecSyntaxError("catalog gisin requires --n")
        value = cat.gisin(args.n)
    else:
        value = cat.three_qutrit()
    if args.as_ == "game":
        if isinstance(value, CorrelationInequality):
            value = correlation_to_weighted(value)
        value = bell_to_game(value)[0]
    _emit(serialize(value), args.out)
    return 0


def _cmd_report(args) -> int:
    value = _read(args.infile)
    game = _as_game(value)
    classical = classical_value(game, cap=args.cap, threads=args.threads)

    use_xor = isinstance(value, CorrelationInequality) and value.parties == 2
    if use_xor:
        restarts = args.restarts if args.restarts is not None else 32
        xor = xor_quantum_value(
            value, XorSolveConfig(restarts=restarts, rng_seed=args.seed)
        )
        quantum, method, witness = xor.value, "exact-xor", None
    else:
        restarts = args.restarts if args.restarts is not None else 16
        dims = (
            tuple(int(d) for d in args.dims.split(","))
            if args.dims
            else _default_dims(game)
        )
        cfg = SeesawConfig(local_dims=dims, restarts=restarts, rng_seed=args.seed)
        seesaw = seesaw_quantum_value(game, cfg)
        quantum, method, witness = seesaw.value, "seesaw-lower-bound", seesaw.strategy

    report = ValueReport(
        classical_max=classical.p_max,
        classical_min=classical.p_min,
        witness_classical=classical.argmax,
        quantum_value=quantum,
        quantum_method=method,
        witness_quantum=witness,
    )
    pairs = [
        ("classical_max", _real(report.classical_max)),
        ("classical_min", _real(report.classical_min)),
        ("quantum_value", _real(report.quantum_value)),
        ("quantum_method", report.quantum_method),
        ("advantage", _real(advantage(report))),
    ]
    _emit_pairs(pairs, args.format, None)
    return 0


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors (exit 1), not solver failures (exit 2)
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="bellgame",
        description="Convert between Bell inequalities and nonlocal games; "
        "compute classical and quantum values; simulate play.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("table", "kv"), default="table")

    p = sub.add_parser("convert", help="convert between representations")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--to", choices=("game", "weighted", "correlation"), required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_convert)

    p = sub.add_parser("classical", help="exact classical value / bounds")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--threads", type=int, default=1)
    add_format(p)
    p.set_defaults(func=_cmd_classical)

    p = sub.add_parser("quantum", help="quantum value (exact xor / see-saw)")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--method", choices=("xor", "seesaw"), required=True)
    p.add_argument("--dims", help="comma-separated local dimensions for see-saw")
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    add_format(p)
    p.set_defaults(func=_cmd_quantum)

    p = sub.add_parser("simulate", help="Monte-Carlo referee")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--strategy", required=True)
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    add_format(p)
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("catalog", help="built-in inequalities and games")
    p.add_argument("name", choices=("chsh", "gisin", "three-qutrit"))
    p.add_argument("--n", type=int)
    p.add_argument("--as", dest="as_", choices=("bell", "game"), default="bell")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_catalog)

    p = sub.add_parser("report", help="classical + quantum values and advantage")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--dims")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=None)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--threads", type=int, default=1)
    add_format(p)
    p.set_defaults(func=_cmd_report)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, BellSpecSyntaxError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BellGameError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
