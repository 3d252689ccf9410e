"""Command line driver: ``python -m ergodic_wigner <subcommand> ...``.

Every subcommand writes CSV. Settings come from an optional JSON file
(``--config``) and are overridden by flags. Exit codes: 0 success,
1 invalid configuration, 2 I/O failure, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ergodic_wigner.diag_process import ProcessSpec
from ergodic_wigner.ensemble import EnsembleConfig, build_matrix, trial_seed
from ergodic_wigner.errors import (
    DomainError,
    NumericalError,
    ParameterError,
    ResourceError,
    UnsupportedOracleError,
)
from ergodic_wigner.moment_oracle import expected_trace_moment, fluctuation_scan, map_trials, mc_trace_moment
from ergodic_wigner.partitions import (
    ENUMERATION_BUDGET,
    MAX_PARTITION_K,
    count_S,
    count_S_star,
    enumerate_pair_partitions,
    is_crossing,
)
from ergodic_wigner.spectra import (
    eigenvalues,
    esd_moment,
    histogram_rows,
    ks_distance,
    semicircle_cdf,
    semicircle_density,
    semicircle_moment,
)

log = logging.getLogger(__name__)

SUBCOMMANDS = ("simulate", "partitions", "oracle", "fluctuation", "semicircle")
SIMULATE_HEADER = ["trial", "n", "ks_distance", "m1", "m2", "m3", "m4", "m6"]
HIST_HEADER = ["bin_left", "bin_right", "count", "density"]
PARTITIONS_HEADER = ["k", "pi_canonical", "crossing", "n", "count_S", "count_S_star", "star_ratio"]
ORACLE_HEADER = ["n", "k", "spec", "exact", "mc_mean", "mc_stderr", "trials"]
FLUCTUATION_HEADER = ["n", "k", "spec", "a4_estimate", "trials"]

EXIT_OK, EXIT_CONFIG, EXIT_IO, EXIT_NUMERIC = 0, 1, 2, 3


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    spec: ProcessSpec = field(default_factory=lambda: ProcessSpec("IIDGaussian"))
    n: int = 256
    n_grid: tuple[int, ...] = ()
    k: tuple[int, ...] = (4,)
    trials: int = 20
    base_seed: int = 0
    out: str | None = None
    bins: int = 50
    threads: int | None = None

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        if self.n < 1 or any(n < 1 for n in self.n_grid):
            raise ConfigError("matrix dimensions must be positive")
        if not self.k or any(k < 0 for k in self.k):
            raise ConfigError("moment orders must be nonnegative")
        if self.trials < 1:
            raise ConfigError("trials must be positive")
        if self.base_seed < 0:
            raise ConfigError("seed must be nonnegative")
        if self.bins < 1:
            raise ConfigError("bins must be positive")
        if self.threads is not None and self.threads < 1:
            raise ConfigError("threads must be positive")
        sub = self.subcommand
        if sub == "partitions":
            for k in self.k:
                if k < 2 or k % 2 or k > MAX_PARTITION_K:
                    raise ConfigError(f"partitions needs even 2 <= k <= {MAX_PARTITION_K}, got {k}")
                for n in self.grid:
                    if n**k > ENUMERATION_BUDGET:
                        raise ConfigError(f"n={n}, k={k} exceeds the enumeration budget")
        if sub == "oracle" and self.trials < 2:
            raise ConfigError("oracle needs at least 2 trials")
        if sub == "fluctuation":
            if len(set(self.grid)) < 2:
                raise ConfigError("fluctuation needs at least two distinct n in --n-grid")
            if self.trials < 100:
                raise ConfigError("fluctuation needs at least 100 trials")

    @property
    def grid(self) -> tuple[int, ...]:
        return self.n_grid or (self.n,)


def _int_list(text) -> tuple[int, ...]:
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    if isinstance(text, int):
        return (text,)
    return tuple(int(x) for x in str(text).replace(",", " ").split())


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ergodic-wigner", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="subcommand", required=True)
    for name in SUBCOMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--config", help="JSON file with default settings")
        p.add_argument("--spec", help="process kind, e.g. AR1 or EquiCorrelated")
        p.add_argument("--param", type=float, help="process parameter")
        p.add_argument("--n", type=int)
        p.add_argument("--n-grid", dest="n_grid", help="comma separated dimensions")
        p.add_argument("--k", help="moment order(s), comma separated")
        p.add_argument("--trials", type=int)
        p.add_argument("--seed", type=int, help="base seed (fallback: $EW_SEED, then 0)")
        p.add_argument("--bins", type=int)
        p.add_argument("--out", help="output CSV path (default: stdout)")
        p.add_argument("--threads", type=int)
    return parser


_DEFAULTS = {
    "simulate": {"n": 256, "trials": 20, "k": (4,)},
    "partitions": {"n_grid": (10, 20), "k": (4,)},
    "oracle": {"n": 8, "trials": 200, "k": (4,)},
    "fluctuation": {"n_grid": (64, 128, 256, 512), "trials": 400, "k": (2,)},
    "semicircle": {"bins": 401, "k": (12,)},
}


def resolve_config(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    """Merge defaults, the JSON config file and flags, in that order."""
    values: dict = dict(_DEFAULTS.get(args.subcommand, {}))
    if args.config:
        try:
            with open(args.config) as fh:
                file_values = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(file_values, dict):
            raise ConfigError("config file must hold a JSON object")
        values.update(file_values)
    spec_d = dict(values.get("spec") or {"kind": "IIDGaussian"})
    if args.spec is not None:
        spec_d = {"kind": args.spec, "param": None}
    if args.param is not None:
        spec_d["param"] = args.param
    for key in ("n", "trials", "bins", "out", "threads"):
        if getattr(args, key) is not None:
            values[key] = getattr(args, key)
    if args.n_grid is not None:
        values["n_grid"] = args.n_grid
    if args.k is not None:
        values["k"] = args.k
    if args.seed is not None:
        values["seed"] = args.seed
    elif "seed" not in values and environ.get("EW_SEED"):
        values["seed"] = environ["EW_SEED"]
    try:
        cfg = RunConfig(
            subcommand=args.subcommand,
            spec=ProcessSpec(spec_d.get("kind"), spec_d.get("param")),
            n=int(values.get("n", 256)),
            n_grid=_int_list(values.get("n_grid", ())),
            k=_int_list(values.get("k", (4,))),
            trials=int(values.get("trials", 20)),
            base_seed=int(values.get("seed", 0)),
            out=values.get("out"),
            bins=int(values.get("bins", 50)),
            threads=None if values.get("threads") is None else int(values["threads"]),
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(str(exc)) from exc
    cfg.validate()
    return cfg


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _render(header, rows, comments=()) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) if not isinstance(v, str) else v for v in row])
    for c in comments:
        buf.write(f"# {c}\n")
    return buf.getvalue()


def _sibling(out: str | None, suffix: str) -> str | None:
    if out is None:
        return None
    p = Path(out)
    return str(p.with_name(f"{p.stem}_{suffix}{p.suffix or '.csv'}"))


def write_outputs(outputs: list[tuple[str | None, str]]) -> None:
    """Write all outputs atomically; stdout for a None path."""
    staged = []
    try:
        for path, text in outputs:
            if path is None:
                continue
            target = Path(path)
            fd, tmp = tempfile.mkstemp(dir=target.parent if str(target.parent) else ".", prefix=".tmp_")
            with os.fdopen(fd, "w", newline="") as fh:
                fh.write(text)
            staged.append((tmp, target))
        for tmp, target in staged:
            os.replace(tmp, target)
    finally:
        for tmp, _ in staged:
            if os.path.exists(tmp):
                os.unlink(tmp)
    for path, text in outputs:
        if path is None:
            sys.stdout.write(text)


def cmd_simulate(cfg: RunConfig) -> list[tuple[str | None, str]]:
    def trial(i):
        m = build_matrix(EnsembleConfig(cfg.n, cfg.spec, base_seed=trial_seed(cfg.base_seed, i)))
        return eigenvalues(m)

    esds = map_trials(trial, cfg.trials, cfg.threads)
    rows = []
    for i, esd in enumerate(esds):
        rows.append([i, cfg.n, ks_distance(esd)] + [esd_moment(esd, k) for k in (1, 2, 3, 4, 6)])
    pooled = np.concatenate([e.eigenvalues for e in esds])
    lo, hi = min(-2.5, float(pooled.min())), max(2.5, float(pooled.max()))
    hist = histogram_rows(pooled, cfg.bins, lo, hi)
    return [(cfg.out, _render(SIMULATE_HEADER, rows)), (_sibling(cfg.out, "hist"), _render(HIST_HEADER, hist))]


def cmd_partitions(cfg: RunConfig) -> list[tuple[str | None, str]]:
    rows, summary = [], []
    for k in cfg.k:
        for pp in enumerate_pair_partitions(k):
            crossing = is_crossing(pp)
            for n in cfg.grid:
                s, star = count_S(n, pp), count_S_star(n, pp)
                scale = n ** (k // 2 + 1)
                rows.append([k, pp.canonical(), crossing, n, s, star, star / scale])
                summary.append(f"k={k} pi={pp.canonical()} n={n} residual_ratio={(s - star) / scale!r}")
    for line in summary:
        print(line, file=sys.stderr)
    return [(cfg.out, _render(PARTITIONS_HEADER, rows))]


def cmd_oracle(cfg: RunConfig) -> list[tuple[str | None, str]]:
    rows = []
    for n in cfg.grid:
        for k in cfg.k:
            try:
                exact = expected_trace_moment(n, k, cfg.spec)
            except (UnsupportedOracleError, ResourceError) as exc:
                log.info("no exact value for n=%d k=%d: %s", n, k, exc)
                exact = None
            rep = mc_trace_moment(n, k, cfg.spec, cfg.trials, cfg.base_seed, cfg.threads)
            rows.append([n, k, str(cfg.spec), exact, rep.mc_mean, rep.mc_stderr, rep.trials])
    return [(cfg.out, _render(ORACLE_HEADER, rows))]


def cmd_fluctuation(cfg: RunConfig) -> list[tuple[str | None, str]]:
    rows, comments = [], []
    for k in cfg.k:
        rep = fluctuation_scan(cfg.spec, k, cfg.grid, cfg.trials, cfg.base_seed, cfg.threads)
        rows += [[n, k, str(cfg.spec), a4, rep.trials] for n, a4 in zip(rep.n_grid, rep.estimates)]
        comments.append(
            f"k={k} spec={cfg.spec} slope={rep.slope!r} ci95=[{rep.slope_ci[0]!r},{rep.slope_ci[1]!r}]"
        )
    return [(cfg.out, _render(FLUCTUATION_HEADER, rows, comments))]


def cmd_semicircle(cfg: RunConfig) -> list[tuple[str | None, str]]:
    xs = np.linspace(-2.5, 2.5, max(cfg.bins, 2))
    table = [[x, semicircle_density(x), semicircle_cdf(x)] for x in xs]
    moments = [[k, semicircle_moment(k)] for k in range(max(cfg.k) + 1)]
    return [
        (cfg.out, _render(["x", "density", "cdf"], table)),
        (_sibling(cfg.out, "moments"), _render(["k", "moment"], moments)),
    ]


COMMANDS = {
    "simulate": cmd_simulate,
    "partitions": cmd_partitions,
    "oracle": cmd_oracle,
    "fluctuation": cmd_fluctuation,
    "semicircle": cmd_semicircle,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = resolve_config(args)
    except (ConfigError, ParameterError, DomainError, KeyError) as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"error: cannot read config: {exc}", file=sys.stderr)
        return EXIT_IO
    if cfg.out is not None and not Path(cfg.out).resolve().parent.is_dir():
        print(f"error: output directory for {cfg.out} does not exist", file=sys.stderr)
        return EXIT_IO
    try:
        outputs = COMMANDS[cfg.subcommand](cfg)
    except NumericalError as exc:
        print(f"error: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (ParameterError, DomainError, ResourceError) as exc:
        print(f"error: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        write_outputs(outputs)
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
