"""Command line entry point.

Exit codes: 0 success or pass, 1 verification or acceptance failure, 2 usage
or configuration error. A crash recorded during ``run`` is not a failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import output
from .config import ConfigError, RunConfig, load_config
from .sbp import Grid1D, assemble_pair, make_periodic, resolve_coefficients, verify_pair
from .studies import convergence, crash_study, probe_config, probe_passes, run_config

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dpsbp", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify-operator", help="check the SBP and upwind properties of a pair")
    v.add_argument("operator", help="builtin:<name>, a builtin name, or a coefficient file")
    v.add_argument("--n", default="16,64,256", help="comma-separated grid sizes")
    v.add_argument("--periodic", action="store_true", help="also verify the periodic closure")

    for name, text in (("run", "one simulation"), ("convergence", "resolution sweep"),
                       ("crash-study", "scheme x operator x n end-time matrix"),
                       ("probe", "semi-discrete conservation and entropy report")):
        s = sub.add_parser(name, help=text)
        s.add_argument("config_path", nargs="?", help="config file (same as --config)")
        s.add_argument("--config", dest="config_opt")
        s.add_argument("--out", help="output directory (overrides the config)")
        s.add_argument("--override", action="append", default=[], metavar="KEY=VALUE")
    return p


def _config(args) -> RunConfig:
    path = args.config_opt or args.config_path
    if not path:
        raise ConfigError("a config file is required")
    cfg = load_config(path, args.override)
    if args.out:
        cfg.out = args.out
    return cfg


def cmd_verify(args) -> int:
    try:
        coeffs = resolve_coefficients(args.operator)
        ns = [int(t) for t in args.n.split(",") if t.strip()]
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    ok = True
    for n in ns:
        pair = assemble_pair(coeffs, Grid1D(n), verify=False)
        pairs = [pair, make_periodic(pair)] if args.periodic else [pair]
        for pr in pairs:
            rep = verify_pair(pr)
            print("\n".join(rep.lines()))
            print()
            ok &= rep.passed
    return EXIT_OK if ok else EXIT_FAIL


def cmd_run(cfg: RunConfig) -> int:
    prob, rec = run_config(cfg)
    meta = {"scenario": cfg.scenario, "operator": cfg.operator, "n": prob.model.ops.shape[0]}
    output.write_run(cfg.out, rec, prob, meta)
    state = f"crashed at t={rec.crash_time!r} ({rec.crash_reason})" if rec.crashed else "completed"
    print(f"{cfg.scenario} {cfg.variant}: {state}, end time {rec.end_time!r}, "
          f"{rec.steps} steps, outputs in {cfg.out}")
    return EXIT_OK


def cmd_convergence(cfg: RunConfig) -> int:
    if not cfg.ns:
        raise ConfigError("convergence needs 'ns'")
    ok = True
    for v in cfg.scheme_list:
        res = convergence(cfg.scenario, cfg.ns, v, cfg.operator, cfg.params, cfg.cfl,
                          cfg.t_final)
        path = output.write_convergence(cfg.out, res.table)
        print(f"{cfg.scenario} {v}: fitted order {res.fitted:.3f} -> {path}")
        print(res.table.to_csv(), end="")
        if cfg.min_eoc is not None and not res.fitted >= cfg.min_eoc:
            ok = False
    return EXIT_OK if ok else EXIT_FAIL


def cmd_crash_study(cfg: RunConfig) -> int:
    ns = cfg.ns or ((cfg.n,) if cfg.n else (64,))
    recs = crash_study(cfg.scenario, ns, cfg.scheme_list, cfg.operator_list, cfg.params,
                       cfg.cfl, cfg.t_final)
    cells = {k: r.end_time for k, r in recs.items()}
    text = output.crash_matrix_csv(cells)
    output.write_text(Path(cfg.out) / "crash_matrix.csv", text)
    print(text, end="")
    return EXIT_OK


def cmd_probe(cfg: RunConfig) -> int:
    ok = True
    lines = []
    for v in cfg.scheme_list:
        rep = probe_config(cfg, v)
        passed = probe_passes(rep)
        ok &= passed
        lines.extend(rep.lines() + ["  " + ("PASS" if passed else "FAIL")])
    text = "\n".join(lines) + "\n"
    output.write_text(Path(cfg.out) / "probe.txt", text)
    print(text, end="")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {"run": cmd_run, "convergence": cmd_convergence,
            "crash-study": cmd_crash_study, "probe": cmd_probe}


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.command == "verify-operator":
        return cmd_verify(args)
    try:
        cfg = _config(args)
        return COMMANDS[args.command](cfg)
    except (ConfigError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except output.OutputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
