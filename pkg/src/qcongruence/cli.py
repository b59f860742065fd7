"""Command-line runner: ``qcl verify``, ``qcl list-targets``, ``qcl check-proof-steps``, ``qcl padic``."""

from __future__ import annotations

import argparse
import datetime as _dt
import hashlib
import json
import os
import random
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import congruence, padic, qspec
from .congruence import FAIL, PASS, SKIPPED
from .qseries import catalog
from .qseries.terms import InadmissibleError, render_modulus

SCHEMA_VERSION = 1
POOL = (2, 3, 5, 7, 11, 13, Fraction(3, 2), Fraction(5, 3), Fraction(7, 2), -2, -3)
LHOPITAL_Q = (2, 3, Fraction(5, 2))
LEMMA_CHECKS = ("LEMMA-A", "LEMMA-CENTRAL", "LEMMA-B", "LHOPITAL")
VERIFY_ALL = (catalog.THEOREM_TARGETS + ("WEI-E", "WEI-F", "WEI-H") + catalog.SPECIAL_STEPS)


class UsageError(Exception):
    pass


# Sampling.

def _rng(seed, *key):
    h = hashlib.sha256(repr((seed,) + key).encode()).digest()
    return random.Random(int.from_bytes(h[:8], "big"))


def draw_sample(names, seed, target, index, exclude=()):
    """Distinct values from POOL for ``names``; deterministic in (seed, target, index)."""
    names = sorted(names)
    if not names:
        return {}
    rng = _rng(seed, target, index)
    banned = {(k, Fraction(v)) for k, v in exclude}
    for _ in range(1000):
        vals = [Fraction(v) for v in rng.sample(POOL, len(names))]
        s = dict(zip(names, vals))
        if any((k, v) in banned for k, v in s.items()):
            continue
        if "a" in s and "b" in s and s["a"] * s["b"] == 1:
            continue
        return s
    raise RuntimeError("could not draw an admissible sample")


def samples_for(names, seed, target, count, exclude=()):
    out, seen = [], set()
    for i in range(count):
        s = draw_sample(names, seed, target, i, exclude)
        key = tuple(sorted(s.items()))
        if key not in seen:
            seen.add(key)
            out.append(s)
    return out


# Jobs.  A job is a plain tuple so it pickles for worker processes.

def _params_of(target, task):
    if task is not None:
        return task.all_params(), task.exclude
    if target in catalog.SPECIAL_PARAMS:
        return catalog.SPECIAL_PARAMS[target], ()
    if target in ("LEMMA-A", "LEMMA-CENTRAL", "LEMMA-B"):
        return ("a", "b", "c", "d"), ()
    return (), ()


def _modes_for(target, task, modes):
    if task is not None:
        return modes if task.has_m() else ("-",)
    if target == "LEMMA-B":
        return modes
    return ("-",)


def build_jobs(targets, ns, modes, count, seed, spec_tasks=None):
    spec_tasks = spec_tasks or {}
    jobs = []
    for target in targets:
        task = spec_tasks.get(target) or catalog.CATALOG.get(target)
        names, exclude = _params_of(target, task)
        if target == "LHOPITAL":
            pool = [{"q": Fraction(v)} for v in LHOPITAL_Q[:max(1, count)]]
        else:
            pool = samples_for(names, seed, target, count, exclude)
        for n in ns:
            for mode in _modes_for(target, task, modes):
                for s in pool:
                    jobs.append((target, n, mode, tuple(sorted(s.items())),
                                 task if target in spec_tasks else None))
    return jobs


def _check(target, n, mode, sample, task):
    m = "half" if mode == "-" else mode
    if task is not None:
        return congruence.verify_task(task, n, m, sample)
    if target == "LEMMA-A":
        return congruence.lemma_a_symmetry_check(n, sample)
    if target == "LEMMA-CENTRAL":
        return congruence.central_term_check(n, sample)
    if target == "LEMMA-B":
        return congruence.lemma_b_check(n, m, sample)
    if target == "LHOPITAL":
        return congruence.lhopital_limit_check(n, sample["q"])
    return congruence.verify_target(target, n, m, sample)


def run_job(job, timings=False):
    target, n, mode, sample, task = job
    sample = dict(sample)
    t0 = time.perf_counter()
    try:
        v = _check(target, n, mode, sample, task)
        status, diag, digest, mod = v.status, v.diagnostics, v.digest(), v.modulus
    except InadmissibleError as exc:
        status, diag, digest, mod = SKIPPED, str(exc), "", ""
    except (ZeroDivisionError, ValueError, KeyError) as exc:
        status, diag, digest, mod = FAIL, f"{type(exc).__name__}: {exc}", "", ""
    if not mod and task is not None:
        mod = render_modulus(task.modulus)
    elapsed = round((time.perf_counter() - t0) * 1000, 3) if timings else 0
    return {
        "target": target, "n": n, "mMode": mode,
        "sample": {k: str(v) for k, v in sample.items()},
        "modulus": mod, "status": status, "elapsedMs": elapsed,
        "witness": digest, "diagnostics": diag,
    }


def _job_key(job):
    target, n, mode, sample, _ = job
    return (target, n, mode, tuple((k, Fraction(v)) for k, v in sample))


def run_jobs(jobs, threads=1, timings=False):
    jobs = sorted(jobs, key=_job_key)
    if threads <= 1 or len(jobs) < 2:
        return [run_job(j, timings) for j in jobs]
    with ProcessPoolExecutor(max_workers=threads) as ex:
        return list(ex.map(run_job, jobs, [timings] * len(jobs), chunksize=1))


# Reports.

def _timestamp(timings):
    if timings:
        return _dt.datetime.now(_dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    epoch = int(os.environ.get("SOURCE_DATE_EPOCH", "0"))
    return _dt.datetime.fromtimestamp(epoch, _dt.timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


def summarize(entries):
    out = {"pass": 0, "fail": 0, "skipped": 0}
    for e in entries:
        out[{PASS: "pass", FAIL: "fail", SKIPPED: "skipped"}[e["status"]]] += 1
    return out


def report_emit(entries, fmt="json", seed=0, timestamp=None):
    """Report bytes; identical inputs give identical bytes."""
    timestamp = timestamp or _timestamp(False)
    if fmt == "json":
        doc = {"schemaVersion": SCHEMA_VERSION, "run": {"seed": seed, "timestamp": timestamp},
               "entries": list(entries), "summary": summarize(entries)}
        return (json.dumps(doc, indent=2, sort_keys=True) + "\n").encode()
    if fmt == "md":
        return _markdown(entries, seed, timestamp).encode()
    raise ValueError(f"unknown format {fmt!r}")


def _markdown(entries, seed, timestamp):
    s = summarize(entries)
    lines = ["# Verification report", "",
             f"seed {seed}, {timestamp}: {s['pass']} pass, {s['fail']} fail, "
             f"{s['skipped']} skipped", ""]
    by_target = {}
    for e in entries:
        by_target.setdefault(e["target"], []).append(e)
    for target in by_target:
        lines += [f"## {target}", "",
                  "| n | M | sample | modulus | status | witness | notes |",
                  "|---|---|---|---|---|---|---|"]
        for e in by_target[target]:
            sample = ", ".join(f"{k}={v}" for k, v in e["sample"].items()) or "-"
            notes = e["diagnostics"].replace("|", "\\|")
            lines.append(f"| {e['n']} | {e['mMode']} | {sample} | {e['modulus']} | "
                         f"{e['status']} | {e['witness'] or '-'} | {notes} |")
        lines.append("")
    return "\n".join(lines)


def _write(data, out):
    if out:
        with open(out, "wb") as fh:
            fh.write(data)
    else:
        sys.stdout.write(data.decode())


# Argument handling.

def _int_list(text):
    try:
        vals = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a comma-separated list of integers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _odd_list(text):
    vals = _int_list(text)
    bad = [v for v in vals if v < 3 or v % 2 == 0]
    if bad:
        raise argparse.ArgumentTypeError(f"n must be odd and > 1, got {bad}")
    return vals


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _default_threads():
    try:
        return max(1, int(os.environ.get("QCL_THREADS", "1")))
    except ValueError:
        return 1


def resolve_targets(text):
    if text.strip().lower() == "all":
        return list(VERIFY_ALL)
    out = []
    for name in text.split(","):
        name = name.strip()
        if not name:
            continue
        try:
            tid = catalog.resolve(name)
        except KeyError:
            raise UsageError(f"unknown target {name!r}") from None
        if tid in catalog.PADIC_TARGETS:
            raise UsageError(f"{tid} is a classical target; use the padic command")
        if tid not in out:
            out.append(tid)
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="qcl", description="Exact checks of q-supercongruences.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="verify catalog targets and/or .qhs specs")
    v.add_argument("--target", default=None, help="comma-separated ids/aliases, or 'all'")
    v.add_argument("--n", type=_odd_list, default=[3, 5, 7], help="odd n values, e.g. 3,5,7")
    v.add_argument("--m-mode", choices=("half", "nm1", "both"), default="both")
    v.add_argument("--samples", type=_positive, default=3)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--spec", action="append", default=[], help=".qhs file (repeatable)")
    _common(v)

    sub.add_parser("list-targets", help="list catalog ids and aliases")

    c = sub.add_parser("check-proof-steps", help="lemma and proof-step checks")
    c.add_argument("--n", type=_odd_list, default=[3, 5, 7])
    c.add_argument("--samples", type=_positive, default=3)
    c.add_argument("--seed", type=int, default=0)
    _common(c)

    d = sub.add_parser("padic", help="classical supercongruences mod p^(r+3)")
    d.add_argument("--target", default="all", help="pad13..pad17 (comma-separated) or all")
    d.add_argument("--p", type=_int_list, required=True)
    d.add_argument("--r", type=_int_list, default=[1])
    d.add_argument("--out", default=None)
    d.add_argument("--format", choices=("json", "md"), default="json")
    return p


def _common(sp):
    sp.add_argument("--threads", type=_positive, default=_default_threads(),
                    help="worker processes (default: $QCL_THREADS or 1)")
    sp.add_argument("--out", default=None, help="write the report here instead of stdout")
    sp.add_argument("--format", choices=("json", "md"), default="json")
    sp.add_argument("--timings", action="store_true",
                    help="record wall-clock times (the report is then not reproducible)")


def _load_specs(paths):
    tasks = {}
    for path in paths:
        try:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {path}: {exc}") from None
        try:
            task = qspec.lower(qspec.parse_task(text))
        except qspec.ParseError as exc:
            raise SpecFailure(f"{path}:{exc.line}:{exc.column}: {exc.message}") from None
        except qspec.SpecSemanticError as exc:
            raise SpecFailure(f"{path}: {exc}") from None
        name = f"spec:{task.name}"
        if name in tasks:
            raise UsageError(f"duplicate spec name {task.name!r}")
        tasks[name] = task
    return tasks


class SpecFailure(Exception):
    pass


def _finish(entries, args, seed):
    data = report_emit(entries, args.format, seed, _timestamp(getattr(args, "timings", False)))
    _write(data, args.out)
    s = summarize(entries)
    print(f"{s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped", file=sys.stderr)
    return 1 if s["fail"] else 0


def cmd_verify(args):
    if not args.target and not args.spec:
        raise UsageError("give --target and/or --spec")
    targets = resolve_targets(args.target) if args.target else []
    specs = _load_specs(args.spec)
    modes = ("half", "nm1") if args.m_mode == "both" else (args.m_mode,)
    jobs = build_jobs(targets + list(specs), args.n, modes, args.samples, args.seed, specs)
    entries = run_jobs(jobs, args.threads, args.timings)
    return _finish(entries, args, args.seed)


def cmd_proof_steps(args):
    targets = list(catalog.PROOF_STEPS) + list(LEMMA_CHECKS)
    jobs = build_jobs(targets, args.n, ("half", "nm1"), args.samples, args.seed)
    entries = run_jobs(jobs, args.threads, args.timings)
    return _finish(entries, args, args.seed)


def cmd_padic(args):
    if args.target.strip().lower() == "all":
        ids = list(catalog.PADIC_TARGETS)
    else:
        ids = []
        for name in args.target.split(","):
            try:
                tid = catalog.resolve(name.strip())
            except KeyError:
                raise UsageError(f"unknown target {name!r}") from None
            if tid not in catalog.PADIC_TARGETS:
                raise UsageError(f"{tid} is not a classical target")
            ids.append(tid)
    entries = []
    for tid in ids:
        for p in args.p:
            for r in args.r:
                try:
                    v = padic.classical_check(tid, p, r)
                except ValueError as exc:
                    raise UsageError(str(exc)) from None
                entry = {"target": tid, "n": p**r, "mMode": "half", "sample": {"p": str(p), "r": str(r)},
                         "modulus": v.modulus, "status": v.status, "elapsedMs": 0,
                         "witness": v.digest(), "diagnostics": v.diagnostics}
                if r == 1 and v.status != SKIPPED:
                    q_side = catalog.CATALOG[padic.TARGETS[tid].q_side]
                    qv = congruence.verify_task(q_side, p, "half", {})
                    entry["diagnostics"] += f"; q-side {q_side.name} at n={p}: {qv.status}"
                entries.append(entry)
    return _finish(entries, args, 0)


def cmd_list(_args):
    rev = {}
    for alias, tid in catalog.ALIASES.items():
        rev.setdefault(tid, []).append(alias)
    for tid in catalog.ALL_IDS:
        print(f"{tid:<12} {','.join(sorted(rev.get(tid, []))):<14} {catalog.DESCRIPTIONS.get(tid, '')}")
    return 0


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    handler = {"verify": cmd_verify, "list-targets": cmd_list,
               "check-proof-steps": cmd_proof_steps, "padic": cmd_padic}[args.command]
    try:
        return handler(args)
    except UsageError as exc:
        print(f"qcl: error: {exc}", file=sys.stderr)
        return 2
    except SpecFailure as exc:
        print(f"qcl: spec error: {exc}", file=sys.stderr)
        return 3


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
