"""
``baker-otoc`` command line.

    baker-otoc <command> [--n N] [--tmax T] [--jmin a] [--jmax b]
               [--mode quantum|semiquantum] [--seed s] [--samples k]
               [--normalize] [--out path] [--config file]

Exit codes: 0 success, 1 invalid configuration, 2 failed numerical check,
3 I/O error.  Flags override values from ``--config``.
"""

import argparse
import sys

import numpy as np

from .experiments import (
    COMMANDS,
    ConfigError,
    ExperimentConfig,
    load_config_file,
    run_cue_baseline,
    run_otoc,
    run_spectrum,
    run_verify,
)

EXIT_OK, EXIT_CONFIG, EXIT_CHECK, EXIT_IO = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="baker-otoc", description="OTOC experiments for the quantum baker's map")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n", type=int, dest="n")
    p.add_argument("--tmax", type=int, dest="t_max")
    p.add_argument("--jmin", type=int, dest="j_min")
    p.add_argument("--jmax", type=int, dest="j_max")
    p.add_argument("--mode", choices=("quantum", "semiquantum"))
    p.add_argument("--seed", type=int)
    p.add_argument("--samples", type=int, dest="n_samples")
    p.add_argument("--normalize", action="store_true", default=None, help="divide f-columns by N")
    p.add_argument("--out", dest="output_path")
    p.add_argument("--config", help="file of key=value lines")
    return p


def config_from_args(args):
    values = load_config_file(args.config) if args.config else {}
    for key in ("n", "t_max", "j_min", "j_max", "mode", "seed", "n_samples", "normalize", "output_path"):
        v = getattr(args, key)
        if v is not None:
            values[key] = v
    values.pop("command", None)
    return ExperimentConfig(args.command, **values)


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(args)
        if cfg.command == "verify":
            report = run_verify(cfg)
            sys.stdout.write(report.text())
            return EXIT_OK if report.passed else EXIT_CHECK
        runner = {"otoc": run_otoc, "semiquantum": run_otoc, "spectrum": run_spectrum, "cue-baseline": run_cue_baseline}
        text = runner[cfg.command](cfg)
        if not cfg.output_path:
            sys.stdout.write(text)
    except ConfigError as exc:
        print(f"baker-otoc: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except OSError as exc:
        print(f"baker-otoc: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"baker-otoc: numerical check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
