"""Command-line front end: one subcommand per table the library can produce.

Every subcommand writes a single CSV or JSON file named
``<subcommand>-<params-hash>.<ext>`` into ``--out`` (else ``$HARMONIA_OUT``,
else the working directory) and prints its path.  The hash covers every
flag that can change the content; ``--workers`` and ``--out`` are left out.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
import tempfile
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from harmonia import circlemap, means, scales, temperament, threefreq
from harmonia.exactmath import farey_sequence, parse_ratio, ratio_text

OUT_ENV = "HARMONIA_OUT"
EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2


class NumericFailure(RuntimeError):
    """A sweep left points unresolved and the caller asked for --strict."""


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    params: dict
    out_dir: Path
    fmt: str
    workers: int

    @property
    def params_hash(self) -> str:
        blob = json.dumps({"cmd": self.subcommand, "fmt": self.fmt, **self.params}, sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:12]

    @property
    def path(self) -> Path:
        return self.out_dir / f"{self.subcommand}-{self.params_hash}.{self.fmt}"


# --- formatting ---------------------------------------------------------------


def fmt_value(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, Fraction):
        return ratio_text(x)
    if isinstance(x, float):
        return format(x, ".12g")
    if x is None:
        return ""
    return str(x)


def csv_text(header: list[str], rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt_value(v) for v in row])
    return buf.getvalue()


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, default=_json_default) + "\n"


def _json_default(x):
    if isinstance(x, Fraction):
        return ratio_text(x)
    raise TypeError(type(x).__name__)


def write_atomic(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


# --- argument types -------------------------------------------------------------


def ratio_arg(text: str) -> Fraction:
    try:
        return parse_ratio(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a ratio: {text!r}") from None


def range_arg(text: str) -> list[Fraction]:
    """``start:stop:step`` inclusive of both ends, parsed exactly."""
    try:
        start, stop, stepv = (parse_ratio(t) for t in text.split(":"))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected start:stop:step, got {text!r}") from None
    if stepv <= 0 or stop < start:
        raise argparse.ArgumentTypeError(f"empty or reversed range {text!r}")
    count = int((stop - start) / stepv)
    return [start + i * stepv for i in range(count + 1)]


def span_arg(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(parse_ratio(t)) for t in text.split(":"))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if hi < lo:
        raise argparse.ArgumentTypeError(f"reversed span {text!r}")
    return lo, hi


def positive_int(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return n


# --- subcommands ----------------------------------------------------------------


def cmd_scale(a, cfg):
    scale = scales.build_scale(a.kind, a.n)
    if cfg.fmt == "json":
        return json_text(scale.to_json())
    return csv_text(["index", "ratio", "cents"], scale.csv_rows())


def _interval_set(name: str):
    return {"consonant": scales.CONSONANT, "dissonant": scales.DISSONANT, "all": scales.JUST_INTERVALS}[name]


def cmd_intervals(a, cfg):
    ivs = _interval_set(a.set)
    if cfg.fmt == "json":
        return json_text(
            [{"name": i.name, "ratio": i.ratio, "consonant": i.consonant, "cents": i.cents} for i in ivs]
        )
    rows = [(i.name, "consonant" if i.consonant else "dissonant", i.ratio, i.cents) for i in ivs]
    return csv_text(["name", "quality", "ratio", "cents"], rows)


def cmd_temperament(a, cfg):
    sweep = temperament.sigma_sweep(a.min, a.max, _interval_set(a.intervals), cfg.workers)
    if cfg.fmt == "json":
        return json_text(
            {"minima": list(sweep.minima), "reports": [r.to_json() for r in sweep.reports]}
        )
    rows = [(r.n, r.sigma, sweep.is_min(r.n)) for r in sweep.reports]
    return csv_text(["N", "sigma", "is_local_min"], rows)


def cmd_kepler(a, cfg):
    g = means.kepler_orbit_means(a.rmin, a.rmax)
    record = {
        "r_min": g.r_min,
        "r_max": g.r_max,
        "a": g.a,
        "b": g.b,
        "l": g.l,
        "eccentricity": g.eccentricity,
        "l_equals_b2_over_a": g.latus_consistent(),
        "is_kepler_triangle": means.is_kepler_mean_triangle(a.rmin, a.rmax),
    }
    if cfg.fmt == "json":
        return json_text(record)
    return csv_text(list(record), [list(record.values())])


def _ratio_parts(r):
    return (r.numerator, r.denominator) if r is not None else (None, None)


def _rot_kw(a) -> dict:
    return {"n_transient": a.n_transient, "n_iter": a.n_iter, "tol": a.tol, "q_max": a.q_max}


def cmd_staircase(a, cfg):
    grid = [float(x) for x in a.omega]
    pts = circlemap.devils_staircase(a.k, grid, cfg.workers, **_rot_kw(a))
    if cfg.fmt == "json":
        return json_text(
            [{"omega": p.omega, "rho": p.rho, "locked": p.locked} for p in pts]
        )
    rows = [(p.omega, p.rho, *_ratio_parts(p.locked)) for p in pts]
    return csv_text(["omega", "rho", "locked_p", "locked_q"], rows)


def cmd_tongues(a, cfg):
    kw = _rot_kw(a)
    if a.grid:
        rows = []
        for k in a.k:
            for p in circlemap.devils_staircase(k, [float(x) for x in a.omega], cfg.workers, **kw):
                rows.append((p.omega, k, *_ratio_parts(p.locked)))
        return csv_text(["omega", "K", "locked_p", "locked_q"], rows)
    ratios = farey_sequence(a.denominators)
    regions = []
    for k in a.k:
        regions.extend(circlemap.tongues(k, ratios, cfg.workers, a.resolution, **kw))
    if cfg.fmt == "json":
        return json_text(
            [
                {"ratio": r.ratio, "K": r.k, "omega_lo": r.omega_lo, "omega_hi": r.omega_hi, "width": r.width}
                for r in regions
            ]
        )
    rows = [(r.ratio.numerator, r.ratio.denominator, r.k, r.omega_lo, r.omega_hi, r.width) for r in regions]
    return csv_text(["p", "q", "K", "omega_lo", "omega_hi", "width"], rows)


def _triple_parts(res):
    return (res.p, res.q, res.r, res.residual) if res is not None else (None, None, None, None)


def cmd_threefreq(a, cfg):
    pts = threefreq.three_freq_staircase(
        a.k, a.eps, [float(x) for x in a.omega], a.f2, a.n_transient, a.n_iter, a.max_order, a.tol, cfg.workers
    )
    if a.strict and not all(p.resolved for p in pts):
        raise NumericFailure(f"{sum(not p.resolved for p in pts)} staircase points unresolved")
    rows = [(p.omega, p.f3, *_triple_parts(p.resonance), p.resolved) for p in pts]
    return csv_text(["omega", "f3", "p", "q", "r", "residual", "resolved"], rows)


def cmd_ramps(a, cfg):
    cells = threefreq.ramps_grid(
        a.w, a.omega_span, a.k, a.eps, a.n_w, a.n_omega, a.n_transient, a.n_iter, a.max_order, a.tol, cfg.workers
    )
    if a.strict and not all(c.resolved for c in cells):
        raise NumericFailure(f"{sum(not c.resolved for c in cells)} grid cells unresolved")
    rows = []
    for c in cells:
        if c.resonance is None:
            rows.append((c.w, c.omega, c.f3, None, None, None, c.label))
        else:
            rows.append((c.w, c.omega, c.f3, c.resonance.p, c.resonance.q, c.resonance.r, "locked"))
    return csv_text(["w", "omega", "f3", "p", "q", "r", "status"], rows)


def read_pitch_data(path: Path) -> list[tuple[float, float, str]]:
    """Rows of (dw_or_f, P, subject_label); the header row is required."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        next(reader, None)
        return [(float(r[0]), float(r[1]), r[2] if len(r) > 2 else "") for r in reader if r]


def cmd_pitch(a, cfg):
    f0 = float(a.f0)
    rows = []
    for k in a.k:
        line = threefreq.pitch_shift_line(k, f0)
        for dw in a.dw:
            s = threefreq.PitchStimulus(k, f0, float(dw))
            pred = threefreq.predicted_pitch(s)
            rows.append((k, s.dw, s.center, pred.pitch, line.slope, line.intercept, "model"))
    if a.data is not None:
        k = a.k[0]
        for x, p, subject in read_pitch_data(a.data):
            dw = x - (k + 1) * f0 if a.x_axis == "f" else x
            rows.append((k, dw, (k + 1) * f0 + dw, p, None, None, subject or "data"))
    return csv_text(["k", "dw", "center", "P", "slope", "intercept", "source"], rows)


# --- parser -----------------------------------------------------------------------


def _common(p: argparse.ArgumentParser, formats=("csv", "json")):
    p.add_argument("--out", type=Path, default=None, help=f"output directory (default: ${OUT_ENV} or cwd)")
    p.add_argument("--format", choices=formats, default="csv", help="output format (default: %(default)s)")
    p.add_argument("--workers", type=positive_int, default=1, help="threads for sweeps (default: %(default)s)")


def _rotation_flags(p):
    p.add_argument("--n-transient", type=int, default=circlemap.N_TRANSIENT, help="discarded steps (default: %(default)s)")
    p.add_argument("--n-iter", type=int, default=circlemap.N_ITER, help="averaged steps (default: %(default)s)")
    p.add_argument("--tol", type=float, default=circlemap.TOL, help="lock tolerance on rho (default: %(default)s)")
    p.add_argument("--q-max", type=int, default=circlemap.Q_MAX, help="largest lock denominator (default: %(default)s)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmonia", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="SUBCOMMAND")
    D = argparse.ArgumentDefaultsHelpFormatter

    p = sub.add_parser("scale", help="scale notes as ratios and cents", formatter_class=D)
    p.add_argument("--kind", choices=[*scales.SCALE_KINDS, "equal"], default="zarlino-major")
    p.add_argument("--n", type=positive_int, default=12, help="note count for --kind equal")
    _common(p)
    p.set_defaults(func=cmd_scale)

    p = sub.add_parser("intervals", help="the just interval table", formatter_class=D)
    p.add_argument("--set", choices=["consonant", "dissonant", "all"], default="all")
    _common(p)
    p.set_defaults(func=cmd_intervals)

    p = sub.add_parser("temperament", help="sigma(N) sweep over equal temperaments", formatter_class=D)
    p.add_argument("--min", type=positive_int, default=5)
    p.add_argument("--max", type=positive_int, default=60)
    p.add_argument("--intervals", choices=["consonant", "dissonant", "all"], default="consonant")
    _common(p)
    p.set_defaults(func=cmd_temperament)

    p = sub.add_parser("kepler", help="orbit means from perihelion and aphelion", formatter_class=D)
    p.add_argument("--rmin", type=ratio_arg, default=Fraction(1))
    p.add_argument("--rmax", type=ratio_arg, default=Fraction(3))
    _common(p)
    p.set_defaults(func=cmd_kepler)

    p = sub.add_parser("staircase", help="devil's staircase of the sine circle map", formatter_class=D)
    p.add_argument("--k", type=float, default=1.0, help="coupling K")
    p.add_argument("--omega", type=range_arg, default="0:1:1/1000", help="omega grid start:stop:step")
    _rotation_flags(p)
    _common(p)
    p.set_defaults(func=cmd_staircase)

    p = sub.add_parser("tongues", help="Arnol'd tongue boundaries", formatter_class=D)
    p.add_argument("--k", type=float, nargs="+", default=[0.8], help="coupling values")
    p.add_argument("--denominators", type=positive_int, default=8, help="tongues of the Farey sequence of this order")
    p.add_argument("--resolution", type=float, default=circlemap.RESOLUTION, help="omega resolution of the bisection")
    p.add_argument("--grid", action="store_true", help="emit (omega, K, lock) triples instead of boundaries")
    p.add_argument("--omega", type=range_arg, default="0:1:1/200", help="omega grid for --grid")
    _rotation_flags(p)
    _common(p)
    p.set_defaults(func=cmd_tongues)

    p = sub.add_parser("threefreq", help="three-frequency devil's staircase", formatter_class=D)
    p.add_argument("--k", type=float, default=threefreq.DEFAULT_K)
    p.add_argument("--eps", type=float, default=threefreq.DEFAULT_EPS, help="second-drive amplitude")
    p.add_argument("--f2", type=ratio_arg, default=threefreq.F2_DEFAULT, help="second forcing frequency f2/f1")
    p.add_argument("--omega", type=range_arg, default="0:1:1/1000")
    p.add_argument("--n-transient", type=int, default=circlemap.N_TRANSIENT)
    p.add_argument("--n-iter", type=int, default=circlemap.N_ITER)
    p.add_argument("--max-order", type=positive_int, default=30)
    p.add_argument("--tol", type=float, default=1e-6, help="resonance residual tolerance (relative to f1)")
    p.add_argument("--strict", action="store_true", help="exit 1 if any point is unresolved")
    _common(p, formats=("csv",))
    p.set_defaults(func=cmd_threefreq)

    p = sub.add_parser("ramps", help="devil's ramps grid over (f2/f1, omega)", formatter_class=D)
    p.add_argument("--w", type=span_arg, default="0:1", help="f2/f1 span lo:hi")
    p.add_argument("--omega-span", type=span_arg, default="0:1", help="omega span lo:hi")
    p.add_argument("--n-w", type=positive_int, default=200)
    p.add_argument("--n-omega", type=positive_int, default=200)
    p.add_argument("--k", type=float, default=threefreq.DEFAULT_K)
    p.add_argument("--eps", type=float, default=threefreq.DEFAULT_EPS)
    p.add_argument("--n-transient", type=int, default=circlemap.N_TRANSIENT)
    p.add_argument("--n-iter", type=int, default=10_000)
    p.add_argument("--max-order", type=positive_int, default=5)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--strict", action="store_true", help="exit 1 if any cell is unresolved")
    _common(p, formats=("csv",))
    p.set_defaults(func=cmd_ramps)

    p = sub.add_parser("pitch", help="residue pitch-shift lines", formatter_class=D)
    p.add_argument("--k", type=positive_int, nargs="+", default=[6, 7, 8], help="harmonic indices")
    p.add_argument("--f0", type=ratio_arg, default=Fraction(100), help="fundamental (Hz)")
    p.add_argument("--dw", type=range_arg, default="-80:80:1", help="partial shift grid start:stop:step (Hz)")
    p.add_argument("--data", type=Path, default=None, help="experimental CSV: dw_or_f,P,subject_label")
    p.add_argument("--x-axis", choices=["dw", "f"], default="dw", help="meaning of the data file's first column")
    _common(p, formats=("csv",))
    p.set_defaults(func=cmd_pitch)
    return parser


def _content_params(args: argparse.Namespace) -> dict:
    skip = {"func", "out", "format", "workers", "command"}
    params = {}
    for key, val in sorted(vars(args).items()):
        if key in skip:
            continue
        if isinstance(val, list):
            val = [fmt_value(v) for v in val]
        elif isinstance(val, tuple):
            val = [fmt_value(v) for v in val]
        elif val is not None and not isinstance(val, (bool, int, float, str)):
            val = fmt_value(val) if isinstance(val, Fraction) else str(val)
        params[key] = val
    return params


_RANGE_FLAGS = {"--dw", "--omega", "--w", "--omega-span"}


def _glue_negative_ranges(argv: list[str]) -> list[str]:
    """Turn ``--dw -80:80:1`` into ``--dw=-80:80:1`` so argparse keeps the value."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok in _RANGE_FLAGS:
            nxt = next(it, None)
            if nxt is None:
                out.append(tok)
            elif nxt.startswith("-") and ":" in nxt:
                out.append(f"{tok}={nxt}")
            else:
                out.extend([tok, nxt])
        else:
            out.append(tok)
    return out


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(_glue_negative_ranges(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    out_dir = args.out or Path(os.environ.get(OUT_ENV) or ".")
    cfg = RunConfig(args.command, _content_params(args), Path(out_dir), args.format, args.workers)
    try:
        text = args.func(args, cfg)
    except NumericFailure as exc:
        print(f"harmonia {args.command}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"harmonia {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    write_atomic(cfg.path, text)
    print(cfg.path)
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
