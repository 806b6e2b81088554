"""Command-line entry point.

Subcommands: solve, sweep, modes, oracle, reproduce.  Exit codes: 0 on
success, 2 on configuration errors, 3 on numerical non-convergence.
"""

import argparse
import sys

from .scenario import (
    FIGURES,
    ConfigError,
    parse_config,
    reproduce,
    run_modes,
    run_oracle,
    run_scenario,
    run_sweep,
    write_csv,
)
from .volterra import ConvergenceError

_FLAG_TO_KEY = {
    "model": "model",
    "eta": "eta",
    "n": "n",
    "omega_c": "omega_c",
    "omega_ref": "omega_ref",
    "g": "g",
    "xi": "xi",
    "omega_cavity": "omega_C",
    "sites": "N",
    "omega0": "omega0",
    "r": "r",
    "tmax": "t_max",
    "steps": "steps",
    "tol": "tol",
    "topology": "topology",
}


def _build_parser():
    parser = argparse.ArgumentParser(prog="gaussbath")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, doc in (
        ("solve", "solve one scenario and write the trajectory CSV"),
        ("sweep", "run a parameter sweep (sweep=/sweep_values= from the config)"),
        ("modes", "sample y(E) outside the support and report bound modes"),
        ("oracle", "exact finite-lattice amplitude through the same CSV pipeline"),
        ("reproduce", "emit the data behind a published figure"),
    ):
        p = sub.add_parser(name, help=doc)
        p.add_argument("--config", help="key=value config file")
        p.add_argument("--model", choices=("ohmic", "array"))
        p.add_argument("--eta", type=float)
        p.add_argument("--n", type=float)
        p.add_argument("--omega-c", dest="omega_c", type=float)
        p.add_argument("--omega-ref", dest="omega_ref", type=float)
        p.add_argument("--g", type=float)
        p.add_argument("--xi", type=float)
        p.add_argument("--omega-cavity", dest="omega_cavity", type=float)
        p.add_argument("--sites", help="array site count, or 'continuum'")
        p.add_argument("--omega0", type=float)
        p.add_argument("--r", type=float)
        p.add_argument("--tmax", type=float)
        p.add_argument("--steps", type=int)
        p.add_argument("--tol", type=float)
        p.add_argument("--topology", choices=("ring", "open"))
        p.add_argument("--out", help="output CSV path (default: <command>.csv)")
        if name == "reproduce":
            p.add_argument("--figure", choices=FIGURES)
    return parser


def _load_config(args):
    text = ""
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
    overrides = {}
    for flag, key in _FLAG_TO_KEY.items():
        value = getattr(args, flag, None)
        if value is not None:
            overrides[key] = value
    return parse_config(text, overrides=overrides)


def main(argv=None):
    args = _build_parser().parse_args(argv)
    out = args.out or f"{args.command}.csv"
    try:
        if args.command == "reproduce":
            if not args.figure:
                print("reproduce requires --figure", file=sys.stderr)
                return 2
            written = reproduce(args.figure, out)
            for path in written:
                print(path)
            return 0
        cfg = _load_config(args)
        if args.command == "solve":
            header, rows = run_scenario(cfg)
        elif args.command == "oracle":
            header, rows = run_oracle(cfg)
        elif args.command == "modes":
            header, rows = run_modes(cfg)
        else:  # sweep
            header, rows, failures = run_sweep(cfg)
            write_csv(out, header, rows)
            print(out)
            if failures:
                manifest = out + ".failures"
                with open(manifest, "w", encoding="utf-8", newline="\n") as fh:
                    for value, message in failures:
                        fh.write(f"{value!r}: {message}\n")
                for value, message in failures:
                    print(f"sweep point {value!r} failed: {message}", file=sys.stderr)
                return 3
            return 0
    except ConfigError as exc:
        for problem in exc.errors:
            print(f"config error: {problem}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"non-convergence: {exc}", file=sys.stderr)
        return 3
    write_csv(out, header, rows)
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
