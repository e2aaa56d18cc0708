"""Command-line entry point: ``coinrep <command> ...``.

Exit codes: 0 success, 1 a checked property came out false, 2 invalid input.
Every JSON report carries a ``config`` block from which the run can be
repeated exactly (see ``revalidate``).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import random
import sys
from dataclasses import asdict, dataclass, field
from pathlib import Path

from . import __version__
from .cube import cube_parts, is_half_nondegenerate, named_rule, product_identities, theorem3_verify, truncate_rule
from .genfun import NathansonSpec, criterion_eq1, divisibility_check, nathanson_build, unit_root_multiplicity
from .partition import PartitionSpec, chenlev_sets, conjecture34_scan, verify_partition
from .search import CEILINGS, conjecture2_audit, enumerate_coinciding_pairs
from .sets import IntegerSet, Variant, eventual_coincidence_scan, first_mismatch, parse_set, rep_function
from .structure import check_conditions, classify_pair, solve_coinciding

OK, FAILED, INVALID = 0, 1, 2

# keys that describe how the run went rather than what it found
VOLATILE = {"config", "stats"}


class InputError(ValueError):
    pass


@dataclass
class RunConfig:
    command: list[str]
    args: dict
    format: str = "text"
    jobs: int = 1
    seed: int | None = None
    out: str | None = None
    ceilings: dict = field(default_factory=lambda: {str(k): v for k, v in CEILINGS.items()})
    version: str = __version__

    def to_json(self) -> dict:
        return asdict(self)

    @classmethod
    def from_json(cls, obj: dict) -> "RunConfig":
        return cls(**obj)

    def to_argv(self) -> list[str]:
        """Arguments that reproduce this run (without --out, checkpoints or resume)."""
        argv = ["--format", "json", "--jobs", str(self.jobs)]
        if self.seed is not None:
            argv += ["--seed", str(self.seed)]
        argv += list(self.command)
        for key, value in self.args.items():
            if key in ("checkpoint", "resume") or value is None or value is False:
                continue
            flag = "--" + key.replace("_", "-")
            if value is True:
                argv.append(flag)
            else:
                argv += [flag, str(value)]
        return argv


def _fmt_set(s) -> str:
    return "{" + ",".join(map(str, s)) + "}"


def _set_arg(text: str) -> IntegerSet:
    try:
        return parse_set(text)
    except (ValueError, OSError) as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _generators_arg(text: str):
    """Comma list, or a named rule (kept as a string until a bound is known)."""
    if text == "pow2" or text.startswith("chenlev:"):
        named_rule(text)
        return text
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad generator list {text!r}") from None


# ---- commands; each returns (exit code, payload dict, text lines) ----


def cmd_repfn(a):
    prof = rep_function(a.set, a.h, Variant(a.variant), a.n_max)
    payload = {"set": a.set.to_list(), "h": a.h, "variant": prof.variant.value,
               "n_max": a.n_max, "counts": list(prof.counts)}
    lines = [f"{n} {c}" for n, c in enumerate(prof.counts)]
    return OK, payload, lines


def cmd_cube(a):
    gens = a.generators
    if isinstance(gens, str):
        if a.bound is None:
            raise InputError(f"named rule {gens} needs --bound")
        gens = truncate_rule(named_rule(gens), a.bound)
    H0, H1 = cube_parts(gens, bound=a.bound)
    payload = {"generators": list(gens), "bound": a.bound}
    lines = []
    if a.parts:
        payload.update(H0=H0.to_list(), H1=H1.to_list())
        lines += [f"H0={_fmt_set(H0)}", f"H1={_fmt_set(H1)}"]
    else:
        H = H0 | H1
        payload["H"] = H.to_list()
        lines.append(f"H={_fmt_set(H)}")
    code = OK
    if a.check:
        nd = is_half_nondegenerate(gens)
        payload["half_nondegenerate"] = nd.ok
        lines.append(f"half_nondegenerate={str(nd.ok).lower()}")
        if not nd:
            payload["witness"] = [list(v) for v in nd.witness]
            lines.append(f"witness={nd.witness}")
            code = FAILED
        else:
            top = 2 * (H0 | H1).max_element if (H0 | H1) else 0
            if a.bound is not None:
                top = min(top, a.bound)
            same = theorem3_verify(gens, top)
            ident = product_identities(gens)
            payload.update(parts_coincide=same, product_identities=ident, n_max=top)
            lines += [f"parts_coincide={str(same).lower()} (n <= {top})",
                      f"product_identities={str(ident).lower()}"]
            if not (same and ident):
                code = FAILED
    return code, payload, lines


def _random_set(rng: random.Random, top: int, max_size: int) -> IntegerSet:
    return IntegerSet(rng.sample(range(top + 1), rng.randint(1, max_size)))


def cmd_verify_eq1(a):
    if a.random:
        if a.seed is None:
            raise InputError("--random needs an explicit --seed")
        rng = random.Random(a.seed)
        disagree = []
        for _ in range(a.random):
            C = _random_set(rng, a.max_value, a.max_size)
            D = _random_set(rng, a.max_value, a.max_size)
            by_poly = criterion_eq1(C, D)
            top = 2 * max(C.max_element, D.max_element)
            by_count = first_mismatch(C, D, top) is None
            if by_poly != by_count:
                disagree.append([C.to_list(), D.to_list()])
        payload = {"trials": a.random, "seed": a.seed, "disagreements": disagree}
        ok = not disagree
        return (OK if ok else FAILED), payload, [f"{a.random} trials, {len(disagree)} disagreements"]
    if a.C is None or a.D is None:
        raise InputError("verify-eq1 needs --C and --D (or --random N --seed S)")
    result = criterion_eq1(a.C, a.D, upto=a.upto)
    payload = {"C": a.C.to_list(), "D": a.D.to_list(), "upto": a.upto, "result": result}
    return (OK if result else FAILED), payload, [str(result).lower()]


def cmd_cert_mult(a):
    if a.C == a.D:
        raise InputError("C and D must differ")
    cert = unit_root_multiplicity(a.C, a.D)
    coinciding = criterion_eq1(a.C, a.D)
    payload = {
        "C": a.C.to_list(), "D": a.D.to_list(),
        "multiplicity": cert.multiplicity,
        "quotient": str(cert.quotient),
        "coinciding": coinciding,
    }
    lines = [f"multiplicity={cert.multiplicity}", f"quotient={cert.quotient}",
             f"coinciding={str(coinciding).lower()}"]
    code = OK
    if coinciding:
        law = 2**cert.multiplicity == len(a.C) + len(a.D)
        payload["power_of_two"] = law
        lines.append(f"2^multiplicity == |C|+|D|: {str(law).lower()}")
        if not law:
            code = FAILED
    return code, payload, lines


def cmd_nathanson(a):
    spec = NathansonSpec(a.FC, a.FD, a.T, a.M, a.n0, a.h)
    divisible = divisibility_check(spec)
    C, D = nathanson_build(spec, a.bound)
    lo, hi = a.h * a.M * a.n0, a.bound - a.h * a.M
    if hi < lo:
        raise InputError(f"bound {a.bound} leaves an empty window [{lo}, {hi}]")
    pc = rep_function(C, a.h, Variant.ORDERED, hi).counts
    pd = rep_function(D, a.h, Variant.ORDERED, hi).counts
    equal = pc[lo:] == pd[lo:]
    start = eventual_coincidence_scan(C, D, Variant.ORDERED, a.bound, h=a.h)
    payload = {"divisible": divisible, "window": [lo, hi], "profiles_equal": equal,
               "equal_from": start}
    lines = [f"divisible={str(divisible).lower()}",
             f"profiles_equal={str(equal).lower()} on [{lo}, {hi}]",
             f"equal_from={start}"]
    return (OK if divisible and equal else FAILED), payload, lines


def cmd_solve(a):
    D = a.D
    sols = solve_coinciding(D, max_solutions=a.max_solutions, n_max=a.n_max)
    classes = [classify_pair(C, D).to_json() for C in sols]
    payload = {"D": D.to_list(), "solutions": [C.to_list() for C in sols], "classification": classes}
    lines = [f"D={_fmt_set(D)}"]
    try:
        cond = check_conditions(D)
        payload["conditions"] = {"ok": cond.ok, "narrow_ok": cond.narrow_ok,
                                 "violation": list(cond.violation) if cond.violation else None}
        lines.append(f"conditions ok={str(cond.ok).lower()} narrow_ok={str(cond.narrow_ok).lower()}")
    except ValueError:
        pass
    for C, cls in zip(sols, classes):
        lines.append(f"C={_fmt_set(C)} {json.dumps(cls)}")
    if not sols:
        lines.append("no solutions")
    return (OK if sols else FAILED), payload, lines


def cmd_classify(a):
    cls = classify_pair(a.C, a.D)
    payload = {"C": a.C.to_list(), "D": a.D.to_list(), "classification": cls.to_json()}
    return OK, payload, [json.dumps(cls.to_json())]


def cmd_partition_verify(a):
    if a.l is not None:
        spec = PartitionSpec.chenlev(a.l)
        C, D = chenlev_sets(a.l, a.bound)
    else:
        if None in (a.C, a.D, a.r, a.m):
            raise InputError("partition verify needs --l, or all of --C --D --r --m")
        spec = PartitionSpec(a.r, a.m)
        C, D = a.C, a.D
    rep = verify_partition(C, D, spec, a.bound)
    payload = rep.to_json()
    lines = [f"{k}={str(v).lower()}" for k, v in payload.items() if k != "window"]
    lines.append(f"window=[{rep.window[0]},{rep.window[1]}]")
    return (OK if rep.ok else FAILED), payload, lines


def cmd_partition_scan(a):
    found = conjecture34_scan(a.bound, a.max_m)
    rows = []
    lines = []
    for r, m, C, D in found:
        # compare against the cube family with the same (r, m), if there is one
        family = None
        for l in range(1, 8):
            s = PartitionSpec.chenlev(l)
            if (s.r, s.m) == (r, m):
                family = l if (C, D) == chenlev_sets(l, a.bound) else None
        rows.append({"r": r, "m": m, "C": C.to_list(), "D": D.to_list(), "chenlev_l": family})
        lines.append(f"r={r} m={m} chenlev_l={family}")
    if not found:
        lines.append("no survivors")
    return OK, {"bound": a.bound, "max_m": a.max_m, "survivors": rows}, lines


def cmd_search(a):
    checkpoint = a.checkpoint
    if checkpoint is None and a.resume is not None:
        checkpoint = a.resume
    if checkpoint is None and a.out is not None:
        checkpoint = str(Path(a.out).with_suffix(".jsonl"))
    kwargs = dict(jobs=a.jobs, diagnostic=a.diagnostic, checkpoint=checkpoint,
                  resume=a.resume, ceiling=a.ceiling)
    if a.audit:
        verdict = conjecture2_audit(a.max_element, a.size, **kwargs)
        report = verdict.report
        payload = verdict.to_json()
        payload.update(report.to_json())
        lines = [f"verdict={verdict.verdict}"]
    else:
        report = enumerate_coinciding_pairs(a.max_element, a.size, classify=a.classify, **kwargs)
        payload = report.to_json()
        lines = []
    lines.insert(0, f"max_element={report.max_element} size={report.size} pairs={len(report.pairs)}")
    for C, D, cls in report.pairs:
        tail = "" if cls is None else " " + json.dumps(cls.to_json())
        lines.append(f"C={_fmt_set(C)} D={_fmt_set(D)}{tail}")
    return OK, payload, lines


# ---- parser ----


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    # subcommands repeat the flags with suppressed defaults, so a value given
    # before the command name is not reset by the subparser
    d = (lambda v: v) if defaults else (lambda v: argparse.SUPPRESS)
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--format", choices=("json", "csv", "text"), default=d("text"))
    g.add_argument("--out", default=d(None), help="also write the report to this file")
    g.add_argument("--quiet", action="store_true", default=d(False), help="no output on stdout")
    g.add_argument("--jobs", type=int, default=d(1))
    g.add_argument("--seed", type=int, default=d(None), help="seed for randomized modes")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags(False)
    p = argparse.ArgumentParser(prog="coinrep", description=__doc__.splitlines()[0],
                                parents=[_global_flags(True)])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("repfn", parents=[common], help="representation profile of a set")
    s.add_argument("--set", type=_set_arg, required=True)
    s.add_argument("--h", type=int, default=2)
    s.add_argument("--variant", choices=[v.value for v in Variant], default="strict")
    s.add_argument("--n-max", type=int, required=True)
    s.set_defaults(func=cmd_repfn)

    s = sub.add_parser("cube", parents=[common], help="Hilbert cube and its even/odd parts")
    s.add_argument("--generators", type=_generators_arg, required=True,
                   help="comma list, pow2 or chenlev:<l>")
    s.add_argument("--bound", type=int)
    s.add_argument("--parts", action="store_true")
    s.add_argument("--check", action="store_true", help="non-degeneracy, coincidence, product identities")
    s.set_defaults(func=cmd_cube)

    s = sub.add_parser("verify-eq1", parents=[common], help="polynomial coincidence test")
    s.add_argument("--C", type=_set_arg)
    s.add_argument("--D", type=_set_arg)
    s.add_argument("--upto", type=int)
    s.add_argument("--random", type=int, default=0, help="differential test on N random pairs")
    s.add_argument("--max-value", type=int, default=60)
    s.add_argument("--max-size", type=int, default=8)
    s.set_defaults(func=cmd_verify_eq1)

    s = sub.add_parser("cert-mult", parents=[common], help="power of (z-1) dividing C(z)-D(z)")
    s.add_argument("--C", type=_set_arg, required=True)
    s.add_argument("--D", type=_set_arg, required=True)
    s.set_defaults(func=cmd_cert_mult)

    s = sub.add_parser("nathanson", parents=[common], help="eventually periodic construction")
    s.add_argument("--FC", type=_set_arg, required=True)
    s.add_argument("--FD", type=_set_arg, required=True)
    s.add_argument("--T", type=_set_arg, required=True)
    s.add_argument("--M", type=int, required=True)
    s.add_argument("--n0", type=int, required=True)
    s.add_argument("--h", type=int, default=2)
    s.add_argument("--bound", type=int, default=100)
    s.set_defaults(func=cmd_nathanson)

    s = sub.add_parser("solve", parents=[common], help="recover every C from D")
    s.add_argument("--D", type=_set_arg, required=True)
    s.add_argument("--max-solutions", type=int, default=16)
    s.add_argument("--n-max", type=int)
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("classify", parents=[common], help="is (C, D) a cube pair")
    s.add_argument("--C", type=_set_arg, required=True)
    s.add_argument("--D", type=_set_arg, required=True)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("partition", parents=[common], help="overlapping partitions of [0, bound]")
    psub = s.add_subparsers(dest="action", required=True)
    v = psub.add_parser("verify", parents=[common])
    v.add_argument("--l", type=int)
    v.add_argument("--C", type=_set_arg)
    v.add_argument("--D", type=_set_arg)
    v.add_argument("--r", type=int)
    v.add_argument("--m", type=int)
    v.add_argument("--bound", type=int, required=True)
    v.set_defaults(func=cmd_partition_verify)
    v = psub.add_parser("scan", parents=[common])
    v.add_argument("--bound", type=int, required=True)
    v.add_argument("--max-m", type=int, required=True)
    v.set_defaults(func=cmd_partition_scan)

    s = sub.add_parser("search", parents=[common], help="exhaustive enumeration of coinciding pairs")
    s.add_argument("--max-element", type=int, required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--diagnostic", action="store_true", help="allow sizes that are not powers of two")
    s.add_argument("--classify", action="store_true")
    s.add_argument("--audit", action="store_true", help="classify and give an all-Hilbert verdict")
    s.add_argument("--ceiling", type=int, help="override the max_element ceiling")
    s.add_argument("--checkpoint", help="JSON lines file, one line per finished shard")
    s.add_argument("--resume", help="skip shards recorded in this checkpoint")
    s.set_defaults(func=cmd_search)
    return p


def _config(a: argparse.Namespace) -> RunConfig:
    skip = {"func", "command", "action", "format", "out", "quiet", "jobs", "seed"}
    args = {}
    for k, v in vars(a).items():
        if k in skip:
            continue
        if isinstance(v, IntegerSet):
            v = ",".join(map(str, v))
        elif isinstance(v, tuple):
            v = ",".join(map(str, v))
        args[k] = v
    command = [a.command] + ([a.action] if getattr(a, "action", None) else [])
    return RunConfig(command, args, a.format, a.jobs, a.seed, a.out)


def _render(fmt: str, payload: dict, lines: list[str]) -> str:
    if fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "count"])
        w.writerows(enumerate(payload["counts"]))
        return buf.getvalue()
    return "\n".join(lines) + "\n"


def run(argv=None) -> tuple[int, dict | None]:
    """Parse and execute; returns (exit code, report)."""
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return (OK if exc.code == 0 else INVALID), None
    if a.format == "csv" and a.func is not cmd_repfn:
        print("coinrep: --format csv is only available for repfn", file=sys.stderr)
        return INVALID, None
    if a.jobs < 1:
        print("coinrep: --jobs must be positive", file=sys.stderr)
        return INVALID, None
    try:
        code, payload, lines = a.func(a)
    except ValueError as exc:
        print(f"coinrep: {exc}", file=sys.stderr)
        return INVALID, None
    payload["config"] = _config(a).to_json()
    if not a.quiet:
        sys.stdout.write(_render(a.format, payload, lines))
    if a.out:
        fmt = "csv" if a.format == "csv" else "json"
        Path(a.out).write_text(_render(fmt, payload, lines))
    return code, payload


def revalidate(report: dict) -> bool:
    """Re-run the command recorded in a report and compare the findings."""
    config = RunConfig.from_json(report["config"])
    saved = sys.stdout
    sys.stdout = io.StringIO()
    try:
        _, fresh = run(["--quiet"] + config.to_argv())
    finally:
        sys.stdout = saved
    if fresh is None:
        return False

    def strip(d):
        return {k: v for k, v in d.items() if k not in VOLATILE}

    return strip(fresh) == strip(report)


def main(argv=None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
