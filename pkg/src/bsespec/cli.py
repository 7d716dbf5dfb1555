"""Command-line driver.

Subcommands
-----------
run       Estimate one spectrum and write it as delimited text.
gen       Write a generated problem (blocks + transition vector) to files.
converge  Emit a "k,angle" convergence table against the exact spectrum.

All configuration is flags and files; nothing is read from the environment,
and identical invocations produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from . import exceptions as exc
from .drivers import assemble_run, default_grid, oracle_spectrum, run_variant
from .fileio import read_matrix, read_vector, write_matrix, write_spectrum, write_vector
from .hamiltonian import (
    COMPLEX,
    REAL,
    build_hamiltonian,
    generate_cyclic_example,
    generate_random_definite,
    generate_random_transition,
)
from .metrics import convergence_history, spectrum_angle
from .spectrum import BroadeningKernel

GEN_CYCLIC = "cyclic16"

# Stable exit codes, one per error category.
EXIT_CODES = [
    (exc.ParseError, 3),
    (exc.DimensionMismatch, 4),
    (exc.StructureViolation, 5),
    (exc.NotDefinite, 6),
    (exc.InvalidSteps, 7),
    (exc.ZeroStartVector, 8),
    (exc.NotRealField, 9),
    (exc.IndefiniteInnerProduct, 10),
    (exc.BasisNotRetained, 11),
    (exc.InsufficientSteps, 12),
    (exc.BreakdownExact, 13),
    (exc.ConvergenceFailure, 14),
    (exc.MultipleNonpositiveNodes, 15),
    (exc.OddStepCount, 16),
    (exc.SingularProjection, 17),
    (exc.NeutralVectorBreakdown, 18),
    (exc.GramFactorizationFailure, 19),
    (exc.ZeroNormCurve, 20),
]
EXIT_CONFIG = 2
EXIT_IO = 21


@dataclass
class JobConfig:
    """Everything one `run` invocation needs."""

    variant: str
    k: int
    out: str
    a_path: str | None = None
    b_path: str | None = None
    d_path: str | None = None
    gen: str | None = None
    n: int = 8
    seed: int = 0
    field: str = COMPLEX
    diag_shift: float = 1.0
    gagq: bool = False
    kernel: str = "gaussian"
    sigma: float = 0.1
    omega_max: float | None = None
    grid_points: int = 2000
    scale: float = 1.0
    reorth: str = "none"
    oracle: bool = False
    fmt: str = "csv"


def _fail(code: int, message: str) -> int:
    print(f"bsespec: error: {message}", file=sys.stderr)
    return code


def _error_code(err: Exception) -> int:
    for klass, code in EXIT_CODES:
        if isinstance(err, klass):
            return code
    if isinstance(err, OSError):
        return EXIT_IO
    return 1


def _load_problem(cfg: JobConfig):
    """Materialize (ham, d) from files or from a generator spec."""
    if cfg.gen == GEN_CYCLIC:
        return generate_cyclic_example()
    if cfg.gen == "random":
        ham = generate_random_definite(cfg.n, cfg.seed, cfg.field, cfg.diag_shift)
        d = generate_random_transition(cfg.n, cfg.seed, cfg.field)
        return ham, d
    if cfg.gen is not None:
        raise ValueError(f"unknown generator {cfg.gen!r}")
    if cfg.a_path is None or cfg.d_path is None:
        raise ValueError("either --gen or both --a and --d are required")
    a = read_matrix(cfg.a_path)
    b = read_matrix(cfg.b_path) if cfg.b_path else None
    d = read_vector(cfg.d_path)
    ham = build_hamiltonian(a, b, tda=cfg.variant == "tda")
    return ham, d


def _validate_config(cfg: JobConfig):
    if cfg.gagq and cfg.variant in ("paired-omega", "paired-c"):
        raise ValueError("--gagq is not available for paired variants")
    if cfg.grid_points < 2:
        raise ValueError("--grid-points must be at least 2")


def run_job(cfg: JobConfig) -> int:
    """Execute one spectrum job; returns the process exit code."""
    try:
        _validate_config(cfg)
        ham, d = _load_problem(cfg)
        kernel = BroadeningKernel(cfg.kernel, cfg.sigma)
        grid = default_grid(ham, cfg.variant, cfg.grid_points, cfg.omega_max)
        run = run_variant(ham, d, cfg.variant, cfg.k, reorth=cfg.reorth)
        spec = assemble_run(run, cfg.gagq, kernel, grid, scale=cfg.scale)
        write_spectrum(spec, cfg.out, cfg.fmt)
        breakdown = spec.metadata.get("breakdown_at")
        if breakdown is not None:
            print(f"breakdown_at={breakdown}")
        dropped = spec.metadata.get("dropped_count")
        if dropped:
            print(f"dropped_count={dropped}")
        if cfg.oracle:
            oracle = oracle_spectrum(ham, d, cfg.variant, kernel, grid,
                                     scale=cfg.scale)
            out = Path(cfg.out)
            oracle_path = out.with_name(out.stem + ".oracle" + out.suffix)
            write_spectrum(oracle, oracle_path, cfg.fmt)
            if spec.is_complex:
                print("angle=nan")
            else:
                print(f"angle={spectrum_angle(spec, oracle):.12g}")
        return 0
    except ValueError as err:
        return _fail(EXIT_CONFIG, f"{type(err).__name__}: {err}")
    except Exception as err:  # noqa: BLE001 - mapped to stable codes
        return _fail(_error_code(err), f"{type(err).__name__}: {err}")


def gen_job(args) -> int:
    try:
        if args.generator == GEN_CYCLIC:
            ham, d = generate_cyclic_example()
        else:
            ham = generate_random_definite(args.n, args.seed, args.field,
                                           args.diag_shift)
            d = generate_random_transition(args.n, args.seed, args.field)
        prefix = str(args.out_prefix)
        paths = [Path(prefix + name) for name in ("A.mtx", "B.mtx", "d.vec")]
        for p in paths:
            p.parent.mkdir(parents=True, exist_ok=True)
        write_matrix(ham.a, paths[0])
        write_matrix(ham.b, paths[1])
        write_vector(d, paths[2])
        print(f"wrote {paths[0]} {paths[1]} {paths[2]}")
        return 0
    except ValueError as err:
        return _fail(EXIT_CONFIG, f"{type(err).__name__}: {err}")
    except Exception as err:  # noqa: BLE001
        return _fail(_error_code(err), f"{type(err).__name__}: {err}")


def converge_job(args) -> int:
    try:
        cfg = _namespace_to_config(args)
        _validate_config(cfg)
        ham, d = _load_problem(cfg)
        kernel = BroadeningKernel(cfg.kernel, cfg.sigma)
        grid = default_grid(ham, cfg.variant, cfg.grid_points, cfg.omega_max)
        oracle = oracle_spectrum(ham, d, cfg.variant, kernel, grid,
                                 scale=cfg.scale)
        rows = convergence_history(
            ham, d,
            {"variant": cfg.variant, "gagq": cfg.gagq, "reorth": cfg.reorth,
             "scale": cfg.scale},
            args.kmax, kernel, grid, oracle,
        )
        delim = "\t" if cfg.fmt == "tsv" else ","
        lines = [delim.join(("# k", "angle"))]
        for k, angle in rows:
            lines.append(delim.join((str(k), format(angle, ".12g"))))
        with open(cfg.out, "w", encoding="ascii") as fh:
            fh.write("\n".join(lines) + "\n")
        return 0
    except ValueError as err:
        return _fail(EXIT_CONFIG, f"{type(err).__name__}: {err}")
    except Exception as err:  # noqa: BLE001
        return _fail(_error_code(err), f"{type(err).__name__}: {err}")


def _add_problem_flags(p: argparse.ArgumentParser):
    p.add_argument("--a", dest="a_path", help="diagonal block file")
    p.add_argument("--b", dest="b_path", help="coupling block file")
    p.add_argument("--d", dest="d_path", help="transition vector file")
    p.add_argument("--gen", choices=["random", GEN_CYCLIC],
                   help="generate the problem instead of reading files")
    p.add_argument("--n", type=int, default=8, help="generator dimension")
    p.add_argument("--seed", type=int, default=0, help="generator seed")
    p.add_argument("--field", choices=[REAL, COMPLEX], default=COMPLEX)
    p.add_argument("--diag-shift", type=float, default=1.0,
                   help="smallest companion eigenvalue of the generated problem")


def _add_spectrum_flags(p: argparse.ArgumentParser):
    p.add_argument("--variant", required=True,
                   choices=["tda", "real-m", "omega", "gmg", "paired-omega",
                            "paired-c"])
    p.add_argument("--gagq", action="store_true", help="use the averaged rule")
    p.add_argument("--kernel", choices=["gaussian", "lorentzian"],
                   default="gaussian")
    p.add_argument("--sigma", type=float, default=0.1)
    p.add_argument("--omega-max", type=float, default=None)
    p.add_argument("--grid-points", type=int, default=2000)
    p.add_argument("--scale", type=float, default=1.0)
    p.add_argument("--reorth", choices=["none", "full"], default="none")
    p.add_argument("--format", dest="fmt", choices=["csv", "tsv"], default="csv")
    p.add_argument("--out", required=True, help="output path")


def _namespace_to_config(args) -> JobConfig:
    return JobConfig(
        variant=args.variant, k=getattr(args, "k", 1), out=args.out,
        a_path=args.a_path, b_path=args.b_path, d_path=args.d_path,
        gen=args.gen, n=args.n, seed=args.seed, field=args.field,
        diag_shift=args.diag_shift, gagq=args.gagq, kernel=args.kernel,
        sigma=args.sigma, omega_max=args.omega_max,
        grid_points=args.grid_points, scale=args.scale, reorth=args.reorth,
        oracle=getattr(args, "oracle", False), fmt=args.fmt,
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bsespec",
        description="Structure-preserving Lanczos absorption-spectrum estimator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="estimate one spectrum")
    _add_problem_flags(p_run)
    _add_spectrum_flags(p_run)
    p_run.add_argument("--k", type=int, required=True, help="Lanczos steps")
    p_run.add_argument("--oracle", action="store_true",
                       help="also write the exact spectrum and print the angle")

    p_gen = sub.add_parser("gen", help="write a generated problem to files")
    p_gen.add_argument("--generator", choices=["random", GEN_CYCLIC],
                       default="random")
    p_gen.add_argument("--n", type=int, default=8)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--field", choices=[REAL, COMPLEX], default=COMPLEX)
    p_gen.add_argument("--diag-shift", type=float, default=1.0)
    p_gen.add_argument("--out-prefix", required=True)

    p_conv = sub.add_parser("converge", help="emit a k,angle convergence table")
    _add_problem_flags(p_conv)
    _add_spectrum_flags(p_conv)
    p_conv.add_argument("--kmax", type=int, required=True)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as se:
        return EXIT_CONFIG if se.code not in (0, None) else 0
    if args.command == "run":
        return run_job(_namespace_to_config(args))
    if args.command == "gen":
        return gen_job(args)
    if args.command == "converge":
        return converge_job(args)
    return _fail(EXIT_CONFIG, f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
