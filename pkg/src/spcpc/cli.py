"""Command-line interface: ``spcpc {info,exact,analyze,simulate,codec}``.

Every CSV starts with ``#`` metadata lines echoing the tool version and the
fully resolved command, so re-running that command reproduces the file.
Exit codes: 0 success, 2 configuration error, 3 resource-cap refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import os
import sys
import tempfile

import numpy as np

from . import __version__, analysis, bec_exact, sim
from .code import ProductCode
from .elias import elias_decode
from .sc import ERASED, format_ternary, parse_ternary, sc_decode, ternary_to_llr

EXIT_CONFIG = 2
EXIT_CAP = 3


class ConfigError(ValueError):
    pass


def parse_grid(text: str) -> list[float]:
    """``"0.05:0.05:0.5"`` (inclusive start:step:stop) or ``"0.1,0.2"``."""
    text = text.strip()
    try:
        if ":" in text:
            start, step, stop = (float(t) for t in text.split(":"))
            if step <= 0 or stop < start:
                raise ConfigError(f"grid {text!r} needs step > 0 and stop >= start")
            count = int(np.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + i * step, 12) for i in range(count)]
        return [float(t) for t in text.split(",") if t]
    except ValueError as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"malformed grid {text!r}") from None


def _parse_decoders(text: str, allowed) -> list[str]:
    decs = [d.strip().lower() for d in text.split(",") if d.strip()]
    bad = [d for d in decs if d not in allowed]
    if bad or not decs:
        raise ConfigError(f"decoder(s) {bad or text!r} not in {allowed}")
    return decs


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _render(meta: list[str], header: list[str], rows) -> str:
    buf = io.StringIO()
    buf.write(f"# tool: spcpc {__version__}\n")
    for line in meta:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) if not isinstance(v, str) else v for v in row])
    return buf.getvalue()


def _emit(text: str, out: str | None):
    if out is None:
        sys.stdout.write(text)
        return
    folder = os.path.dirname(os.path.abspath(out))
    fd, tmp = tempfile.mkstemp(dir=folder, prefix=".spcpc-", suffix=".tmp")
    with os.fdopen(fd, "w", newline="") as fh:
        fh.write(text)
    os.replace(tmp, out)


def _spec(text: str) -> ProductCode:
    try:
        return ProductCode.parse(text)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _eps_grid(text: str) -> list[float]:
    grid = parse_grid(text)
    if any(not 0.0 <= e <= 1.0 for e in grid):
        raise ConfigError("erasure probabilities must lie in [0, 1]")
    return grid


def _grid_text(grid) -> str:
    return ",".join(_fmt(g) for g in grid)


# ---- subcommands ----------------------------------------------------------


def cmd_info(args) -> str:
    code = _spec(args.spec)
    lines = [
        f"spec={','.join(map(str, code.dims))}",
        f"n={code.n} k={code.k} R={code.rate:.6g} d={code.d} A={code.a_min}",
        f"eta=({','.join(map(str, code.eta))})",
    ]
    for lvl, n_l in enumerate(code.dims, start=1):
        lines.append(f"level {lvl}: ({n_l},{n_l - 1},2) SPC, A_2={n_l * (n_l - 1) // 2}, local codes={code.eta[lvl - 1]}")
    if args.check:
        if code.k > 20:
            raise ConfigError(f"--check enumerates 2^k codewords; k={code.k} is over the limit 20")
        d, a = code.min_distance_bruteforce()
        lines.append(f"brute-force: d={d} A={a} ({'matches' if (d, a) == (code.d, code.a_min) else 'MISMATCH'})")
    return "\n".join(lines) + "\n"


def cmd_exact(args) -> str:
    code = _spec(args.spec)
    grid = _eps_grid(args.eps)
    decs = _parse_decoders(args.decoder, bec_exact.DECODERS)
    curves = {d: bec_exact.exact_block_error(code, d, grid, force=args.force, workers=args.workers) for d in decs}
    header = ["epsilon", "decoder", "block_error_prob"]
    if args.bounds:
        header += ["q_max", "sum_q", "k_qmax", "tub"]
    rows = []
    for i, e in enumerate(grid):
        extra = []
        if args.bounds:
            prof = analysis.de_profile(code, e)
            extra = [prof.lower, prof.upper_sum, prof.upper_loose, analysis.tub_bec(code, e)]
        for d in decs:
            rows.append([e, d, float(curves[d].values[i])] + extra)
    cmd = f"spcpc exact --spec {args.spec} --eps {_grid_text(grid)} --decoder {','.join(decs)}"
    cmd += " --bounds" * args.bounds + " --force" * args.force
    meta = [f"command: {cmd}", f"code: n={code.n} k={code.k} d={code.d} A={code.a_min}",
            "method: exhaustive enumeration of all erasure patterns, all-zero codeword"]
    return _render(meta, header, rows)


def cmd_analyze(args) -> str:
    code = _spec(args.spec)
    if args.mi is not None:
        if not 0.0 <= args.mi <= 1.0:
            raise ConfigError("--mi must lie in [0, 1]")
        rows = []
        for lvl, vals in enumerate(analysis.mi_evolution(code, args.mi)):
            rows += [[lvl, j, float(v)] for j, v in enumerate(vals)]
        meta = [f"command: spcpc analyze --spec {args.spec} --mi {_fmt(args.mi)}"]
        return _render(meta, ["level", "branch", "mutual_info"], rows)
    grid = _eps_grid(args.eps)
    header = ["epsilon"] + [f"q_{t + 1}" for t in range(code.k)] + ["q_max", "sum_q", "k_qmax", "tub_bec"]
    rows = []
    for e in grid:
        prof = analysis.de_profile(code, e)
        rows.append([e] + [float(q) for q in prof.q] + [prof.lower, prof.upper_sum, prof.upper_loose,
                                                        analysis.tub_bec(code, e)])
    meta = [f"command: spcpc analyze --spec {args.spec} --eps {_grid_text(grid)}",
            "q_t indexed by message order (SC decoding order)"]
    return _render(meta, header, rows)


def cmd_simulate(args) -> str:
    code = _spec(args.spec)
    if args.channel == "bec":
        if args.eps is None:
            raise ConfigError("--channel bec needs --eps")
        grid = _eps_grid(args.eps)
        params = [sim.ChannelParam.bec(e) for e in grid]
    else:
        if args.ebn0 is None:
            raise ConfigError("--channel awgn needs --ebn0")
        grid = parse_grid(args.ebn0)
        params = [sim.ChannelParam.awgn(e, code.rate) for e in grid]
    decs = _parse_decoders(args.decoder, sim.DECODERS)
    if "ml" in decs and args.channel != "bec":
        raise ConfigError("the ML decoder is only available with --channel bec")
    if args.max_trials < 1 or args.target_errors < 1 or args.batch_size < 1:
        raise ConfigError("--max-trials, --target-errors and --batch-size must be positive")
    header = ["channel", "param", "decoder", "trials", "block_errors", "bit_errors", "bler", "ber", "stderr", "seed"]
    if args.tub:
        header.append("tub")
    rows = []
    for d in decs:
        points = sim.run_curve(code, d, params, seed=args.seed, max_trials=args.max_trials,
                               target_errors=args.target_errors, batch_size=args.batch_size,
                               workers=args.workers)
        for p in points:
            row = [args.channel, p.param.value, d, p.trials, p.block_errors, p.bit_errors, p.bler, p.ber,
                   p.stderr, p.seed]
            if args.tub:
                row.append(analysis.tub_bec(code, p.param.value) if args.channel == "bec"
                           else analysis.tub_awgn(code, p.param.value))
            rows.append(row)
    grid_flag = "--eps" if args.channel == "bec" else "--ebn0"
    cmd = (f"spcpc simulate --spec {args.spec} --channel {args.channel} {grid_flag} {_grid_text(grid)} "
           f"--decoder {','.join(decs)} --seed {args.seed} --max-trials {args.max_trials} "
           f"--target-errors {args.target_errors} --batch-size {args.batch_size}" + " --tub" * args.tub)
    default_stop = (args.max_trials, args.target_errors) == (sim.DEFAULT_MAX_TRIALS, sim.DEFAULT_TARGET_ERRORS)
    meta = [f"command: {cmd}",
            f"stop_rule: {args.target_errors} block errors or {args.max_trials} trials"
            + (" (default choice)" if default_stop else ""),
            "messages: uniformly random; block error = any decoded bit differs or is erased"]
    return _render(meta, header, rows)


def cmd_codec(args) -> str:
    code = _spec(args.spec)
    if args.action == "encode":
        try:
            msg = np.array([int(ch) for ch in args.vector.replace(",", "")], dtype=np.uint8)
        except ValueError:
            raise ConfigError("message must be a string over {0,1}") from None
        if msg.size != code.k or np.any(msg > 1):
            raise ConfigError(f"message must be {code.k} bits over {{0,1}}")
        return "".join(map(str, code.encode(msg))) + "\n"
    if args.channel == "bec":
        try:
            rx = parse_ternary(args.vector)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if rx.size != code.n:
            raise ConfigError(f"received word must have {code.n} symbols")
        llr = ternary_to_llr(rx)
    else:
        try:
            llr = np.array([float(t) for t in args.vector.split(",")])
        except ValueError:
            raise ConfigError("AWGN input must be comma-separated LLRs") from None
        if llr.size != code.n:
            raise ConfigError(f"received word must have {code.n} LLRs")
    if args.decoder == "sc":
        out = sc_decode(code, llr, channel=args.channel)
    elif args.decoder == "elias":
        out = elias_decode(code, llr, channel=args.channel)
    else:
        if args.channel != "bec":
            raise ConfigError("the ML decoder is only available with --channel bec")
        out, bad = bec_exact.kernels.ml_erasure(code, (rx == ERASED)[None, :], np.where(rx == 1, 1, 0)[None, :])
        if bad[0]:
            raise ConfigError("received bits are inconsistent with every codeword")
        out = out[0]
    return format_ternary(out) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spcpc", description="SPC product codes: SC/Elias/ML decoding and analysis")
    parser.add_argument("--version", action="version", version=f"spcpc {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("info", help="code parameters")
    p.add_argument("--spec", required=True, help="component lengths, e.g. 3,3")
    p.add_argument("--check", action="store_true", help="also brute-force (d, A_d)")
    p.set_defaults(func=cmd_info)

    p = sub.add_parser("exact", help="exact BEC block error curves by enumeration")
    p.add_argument("--spec", required=True)
    p.add_argument("--eps", default="0.05:0.05:0.5")
    p.add_argument("--decoder", default="ml,sc,elias")
    p.add_argument("--bounds", action="store_true", help="add q_max, sum_q, k*q_max and TUB columns")
    p.add_argument("--force", action="store_true", help=f"allow n > {bec_exact.MAX_EXACT_N}")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("analyze", help="density-evolution profile, bounds and TUB")
    p.add_argument("--spec", required=True)
    p.add_argument("--eps", default="0.05:0.05:0.5")
    p.add_argument("--mi", type=float, help="emit the mutual-information evolution tree from this MI instead")
    p.add_argument("--out")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("simulate", help="Monte Carlo BLER/BER")
    p.add_argument("--spec", required=True)
    p.add_argument("--channel", choices=("bec", "awgn"), default="awgn")
    p.add_argument("--eps")
    p.add_argument("--ebn0")
    p.add_argument("--decoder", default="sc,elias")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-trials", type=int, default=sim.DEFAULT_MAX_TRIALS)
    p.add_argument("--target-errors", type=int, default=sim.DEFAULT_TARGET_ERRORS)
    p.add_argument("--batch-size", type=int, default=sim.DEFAULT_BATCH)
    p.add_argument("--workers", type=int, default=1, help="parallel batches; does not change results")
    p.add_argument("--tub", action="store_true", help="append the truncated union bound column")
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("codec", help="encode a message or decode one received word")
    p.add_argument("--spec", required=True)
    p.add_argument("action", choices=("encode", "decode"))
    p.add_argument("vector", help="bits (encode), {0,1,e} string (decode, bec) or comma-separated LLRs (awgn)")
    p.add_argument("--decoder", choices=("sc", "elias", "ml"), default="sc")
    p.add_argument("--channel", choices=("bec", "awgn"), default="bec")
    p.add_argument("--out")
    p.set_defaults(func=cmd_codec)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        text = args.func(args)
    except bec_exact.EnumerationLimitError as exc:
        print(f"spcpc: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ConfigError, ValueError) as exc:
        print(f"spcpc: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    _emit(text, getattr(args, "out", None))
    return 0


if __name__ == "__main__":
    sys.exit(main())
