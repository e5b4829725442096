"""Command-line entry points.

    equivar verify <model.json | builtin-name> [--seed N] [--frame-trials N] [--json PATH]
    equivar index  <example> [--twist n] [--max-degree N] [--json PATH]
    equivar render <model.json | builtin-name> [--format text|latex] [--frame ID]

Exit codes: 0 all checks pass, 1 some check failed, 2 error (bad input,
violated model invariant, non-integer coefficients).  EQUIVAR_MAX_DEGREE
overrides the default expansion degree.  Reports are deterministic for
identical inputs and seed.
"""

import argparse
import os
import random
import sys

from .characters import EXAMPLES, run_pipeline
from .charclass import SeriesPolicy
from .errors import EquivarError
from .genco import fourier_fibre_integrate, with_fibre_coordinates
from .jform import check_closed, check_transversality, frame_change_compare, j_form
from .modelfile import builtin_names, load_builtin, load_model
from .randmodels import random_gl_plus
from .report import (LATEX, TEXT, make_report, render_frame_value, report_status,
                     report_to_json)
from .superalg import multiply


def _load(source):
    if os.path.exists(source):
        return load_model(source)
    name = source[:-5] if source.endswith(".json") else source
    if name in builtin_names():
        return load_builtin(name)
    return load_model(source)  # raise the file error


def run_verify(model, seed=0, frame_trials=25):
    rng = random.Random(seed)
    results = []
    rendered = {}
    for fid in sorted(model.frames):
        fr = model.frames[fid]
        ok, witness = check_transversality(model, fid)
        entry = {"check": f"{fid}:transversality", "status": "pass" if ok else "fail"}
        if witness is not None:
            entry["witness"] = witness
        results.append(entry)
        if not ok:
            continue
        jf = j_form(model, fid)
        results.append({"check": f"{fid}:closedness",
                        "status": "pass" if check_closed(model, jf) else "fail"})
        ann = all(multiply(model.gen(a), jf.value, model).is_zero()
                  for a in fr.alpha_slots)
        results.append({"check": f"{fid}:frame-annihilation",
                        "status": "pass" if ann else "fail"})
        frames_ok = all(
            frame_change_compare(model, fid, random_gl_plus(rng, fr.rank))
            for _ in range(frame_trials))
        results.append({"check": f"{fid}:frame-independence-{frame_trials}",
                        "status": "pass" if frames_ok else "fail"})
        lam = with_fibre_coordinates(model, fid)
        four_ok = fourier_fibre_integrate(lam, fid) == jf.value
        results.append({"check": f"{fid}:fourier-integral-identity",
                        "status": "pass" if four_ok else "fail"})
        rendered[fid] = {
            "text": render_frame_value(model, fid, TEXT),
            "latex": render_frame_value(model, fid, LATEX),
        }
    return make_report("verify", model.name, results,
                       extra={"rendered": rendered, "seed": seed,
                              "frameTrials": frame_trials})


def run_index(example, twist=0, max_degree=20):
    rep = run_pipeline(example, twist, SeriesPolicy(max_degree))
    extra = {k: rep[k] for k in ("case", "twist", "rank", "window", "branching")
             if k in rep}
    extra["maxDegree"] = max_degree
    return make_report("index", rep["example"], rep["results"],
                       rep.get("characters"), extra)


def _emit(rep, json_path):
    for r in rep["results"]:
        line = f"[{r['status']}] {r['check']}"
        if r["status"] == "fail" and "witness" in r:
            line += f"  witness: {r['witness']}"
        print(line)
    status = report_status(rep)
    print(f"{rep['command']} {rep['model']}: {status}")
    if json_path:
        with open(json_path, "w", encoding="utf-8") as fh:
            fh.write(report_to_json(rep))
    return 0 if status == "pass" else 1


def _build_parser():
    p = argparse.ArgumentParser(
        prog="equivar",
        description="Equivariant forms with delta coefficients: verification "
                    "and index pipelines over exact rational arithmetic.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the property suite on a model")
    v.add_argument("model", help="model file path or built-in name")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--frame-trials", type=int, default=25)
    v.add_argument("--json", metavar="PATH", help="write the report as JSON")

    env_deg = int(os.environ.get("EQUIVAR_MAX_DEGREE", "20"))
    ix = sub.add_parser("index", help="run an index pipeline vs its oracle")
    ix.add_argument("example", help="one of: " + ", ".join(EXAMPLES))
    ix.add_argument("--twist", type=int, default=0)
    ix.add_argument("--max-degree", type=int, default=env_deg)
    ix.add_argument("--json", metavar="PATH")

    rd = sub.add_parser("render", help="print the canonical form of each frame")
    rd.add_argument("model")
    rd.add_argument("--format", choices=(TEXT, LATEX), default=TEXT)
    rd.add_argument("--frame", help="render only this frame")
    return p


def main(argv=None):
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "verify":
            model = _load(args.model)
            rep = run_verify(model, args.seed, args.frame_trials)
            return _emit(rep, args.json)
        if args.command == "index":
            rep = run_index(args.example, args.twist, args.max_degree)
            return _emit(rep, args.json)
        model = _load(args.model)
        frames = [args.frame] if args.frame else sorted(model.frames)
        for fid in frames:
            print(f"{fid}: {render_frame_value(model, fid, args.format)}")
        return 0
    except EquivarError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
