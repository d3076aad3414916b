"""Command-line entry point: ``morsetilings <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import verify as V
from .complexes import ComplexError, FaceCapExceeded, f_vector, perfect_matching_complex
from .graphs import FAMILIES, GraphError, build_family
from .homology import homology_consistent_with, reduced_betti
from .matchings import bad_matching_report
from .morse import PairingSchedule, ScheduleError, run_schedule

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
CONFIG_ENV = "MORSETILINGS_CONFIG"


class UsageError(Exception):
    pass


def load_config(path: str | None) -> dict:
    """Read key=value lines; '#' starts a comment. Integer values are converted."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    out: dict = {}
    for num, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{num}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key in V.DEFAULT_CAPS:
            try:
                out[key] = int(value)
            except ValueError:
                raise UsageError(f"{path}:{num}: {key} must be an integer") from None
        elif key == "out":
            out[key] = value
        else:
            raise UsageError(f"{path}:{num}: unknown key {key!r}")
    return out


def resolve_settings(args) -> dict:
    """Defaults, then config file, then flags."""
    settings = dict(V.DEFAULT_CAPS)
    settings["out"] = None
    settings.update(load_config(args.config))
    if args.cap_faces is not None:
        settings["cap_faces"] = args.cap_faces
    if args.out is not None:
        settings["out"] = args.out
    return settings


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _graph(args):
    params = {k: getattr(args, k) for k in ("n", "k", "m") if getattr(args, k) is not None}
    return build_family(args.family, params)


# --- subcommands ------------------------------------------------------------


def cmd_family(args, settings) -> int:
    g = _graph(args)
    emit(g.to_dot() if args.dot else g.to_json() + "\n", settings["out"])
    return EXIT_OK


def cmd_badmatchings(args, settings) -> int:
    emit(dump(bad_matching_report(_graph(args))), settings["out"])
    return EXIT_OK


def cmd_complex(args, settings) -> int:
    c = perfect_matching_complex(_graph(args), cap=settings["cap_faces"])
    data = c.to_dict(full=args.full)
    data["void"] = c.void
    data["f_vector"] = f_vector(c)
    emit(dump(data), settings["out"])
    return EXIT_OK


def cmd_morse(args, settings) -> int:
    g = _graph(args)
    default = V.family_schedule(g)
    if args.schedule:
        schedule = PairingSchedule.parse(args.schedule)
    elif default is not None:
        schedule = default
    else:
        raise UsageError(f"family {g.family!r} has no default schedule; pass --schedule")
    c = perfect_matching_complex(g, cap=settings["cap_faces"])
    if c.void:
        raise UsageError("the perfect matching complex is void; nothing to pair")
    missing = [x for x in schedule.elements if x not in c.index_of_label]
    if missing:
        raise UsageError(f"unknown edge label(s): {', '.join(missing)}")
    run = run_schedule(c, schedule)
    report = run.report()
    report["euler_ok"] = run.euler_ok
    if default is not None and schedule.elements == default.elements:
        want = V.family_prediction(g)
        got = run.homotopy
        report["discrepancy"] = (got.kind, got.dim, got.count) != (want.kind, want.dim, want.count)
    emit(dump(report), settings["out"])
    return EXIT_OK if run.legal and run.acyclic and run.euler_ok else EXIT_FAIL


def cmd_homology(args, settings) -> int:
    g = _graph(args)
    r = reduced_betti(perfect_matching_complex(g, cap=settings["cap_faces"]))
    data = r.to_dict()
    want = V.family_prediction(g)
    if want is None:
        data["consistent_with"] = None
    else:
        predicted = want.to_dict()
        predicted.pop("evidence", None)
        data["consistent_with"] = {**predicted, "holds": homology_consistent_with(r, want)}
    emit(dump(data), settings["out"])
    if want is not None and not data["consistent_with"]["holds"]:
        return EXIT_FAIL
    return EXIT_OK


def _job_kwargs(job: str, args, caps: dict) -> dict:
    def pick(flag, default):
        value = getattr(args, flag)
        return default if value is None else value

    grid_small = min(8, caps["grid_n_max"])
    if job in ("thm-grid", "grid-schedules"):
        return {"n_max": pick("n_max", caps["grid_n_max"])}
    if job in ("lemma-bad", "lemma-bc", "ind-pm", "folds"):
        return {"n_max": pick("n_max", grid_small)}
    if job == "thm-even":
        return {"n_max": pick("n_max", caps["even_n_max"]), "k_max": pick("k_max", caps["even_k_max"])}
    if job in ("thm-odd-alternate", "thm-odd-simple"):
        return {"n_max": pick("n_max", caps["odd_n_max"]), "k_max": pick("k_max", caps["odd_k_max"])}
    if job == "thm-triangles":
        return {"k_max": pick("k_max", caps["triangle_k_max"])}
    if job == "lemma-attach":
        return {
            "n_max": pick("n_max", caps["odd_n_max"]),
            "k_max": pick("k_max", caps["odd_k_max"]),
            "tri_k_max": min(4, caps["triangle_k_max"]),
        }
    if job == "conjecture":
        return {"m_max": pick("m_max", caps["sweep_max"]), "n_max": pick("n_max", caps["sweep_max"])}
    raise UsageError(f"unknown job {job!r}")


def run_job(job: str, args, settings) -> list[V.InstanceResult]:
    return list(V.JOBS[job](settings, **_job_kwargs(job, args, settings)))


def cmd_verify(args, settings) -> int:
    results = run_job(args.job, args, settings)
    report = {"job": args.job, "instances": [r.to_dict() for r in results]}
    if args.json:
        sys.stdout.write(dump(report))
    else:
        for r in results:
            print(r.line())
        if args.job == "conjecture":
            sys.stdout.write(V.conjecture_csv(results))
    if settings["out"]:
        Path(settings["out"]).write_text(dump(report))
    return V.exit_code(results)


def cmd_conjecture(args, settings) -> int:
    results = run_job("conjecture", args, settings)
    if args.json:
        emit(dump({"job": "conjecture", "instances": [r.to_dict() for r in results]}), settings["out"])
    else:
        emit(V.conjecture_csv(results), settings["out"])
    return V.exit_code(results)


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON output")
    common.add_argument("--dot", action="store_true", help="Graphviz DOT output (family only)")
    common.add_argument("--out", metavar="PATH", help="write output to PATH")
    common.add_argument("--cap-faces", type=int, metavar="N", help="face-count cap (default 2000000)")
    common.add_argument("--config", metavar="PATH", help=f"key=value config file (fallback: ${CONFIG_ENV})")

    fam = argparse.ArgumentParser(add_help=False)
    fam.add_argument("family", choices=FAMILIES)
    fam.add_argument("--n", type=int)
    fam.add_argument("--k", type=int)
    fam.add_argument("--m", type=int)

    parser = argparse.ArgumentParser(
        prog="morsetilings", description="Perfect matching complexes, Morse pairings and homology."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", parents=[common, fam], help="serialize a graph")
    p.set_defaults(func=cmd_family)
    p = sub.add_parser("badmatchings", parents=[common, fam], help="list bad matchings")
    p.set_defaults(func=cmd_badmatchings)
    p = sub.add_parser("complex", parents=[common, fam], help="perfect matching complex")
    p.add_argument("--full", action="store_true", help="list every face, not just facets")
    p.set_defaults(func=cmd_complex)
    p = sub.add_parser("morse", parents=[common, fam], help="run an element-pairing schedule")
    p.add_argument("--schedule", help="comma-separated edge labels (default: the family's schedule)")
    p.set_defaults(func=cmd_morse)
    p = sub.add_parser("homology", parents=[common, fam], help="reduced integer homology")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("verify", parents=[common], help="run a verification job")
    p.add_argument("job", choices=sorted(V.JOBS))
    for flag in ("--n-max", "--k-max", "--m-max"):
        p.add_argument(flag, type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("conjecture", parents=[common], help="homology sweep over m x n grids (CSV)")
    p.add_argument("--m-max", type=int)
    p.add_argument("--n-max", type=int)
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        settings = resolve_settings(args)
        return args.func(args, settings)
    except FaceCapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, GraphError, ComplexError, ScheduleError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
