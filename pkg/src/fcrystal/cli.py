"""Deterministic batch front door.

One subcommand per pipeline stage; every run prints a single JSON
report on stdout (diagnostics go to stderr) carrying the resolved job
parameters, the result, the tool version, and a sha256 digest of the
canonical serialization.  Identical jobs produce byte-identical
reports.

Exit codes: 0 all checks pass, 1 check failures, 2 invalid input,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from random import Random

from . import __version__
from .crystal import (
    CyclicRep,
    build_extension,
    build_kummer_crystal,
    sol_extension,
)
from .errors import CapExceededError, InvalidInputError
from .field import DEFAULT_SATURATION_CAP, make_field
from .functors import (
    fg_roundtrip,
    functor_F,
    gf_roundtrip,
    gluing_data,
    naturality_check_F,
    nearby_full,
    nearby_unipotent,
    recover_rep,
    rep_isomorphic,
    sol_crystal,
    vanishing,
)
from .samples import random_object, random_rep, random_rep_morphism
from .series import level_json, parse_series
from .vfilt import (
    ExtensionVFilt,
    SplitVFilt,
    check_axioms,
    check_specializing,
    compare,
    graded,
    mc_depth_grading,
    mc_vfilt,
    pullback_filtration,
    shifted_exactness,
    shifted_filtration,
    split_vfilt,
    standard_vfilt,
)

_BUILTIN_REPS = ("trivial", "companion", "regular")


def resolve_m(p: int, d: int, m=None) -> int:
    """Smallest m with d | p^m - 1 unless m is forced explicitly."""
    if m is not None:
        if d > 1 and (p**m - 1) % d:
            raise InvalidInputError(f"d={d} does not divide p^m-1={p**m - 1}")
        return m
    mm = 1
    while d > 1 and (p**mm - 1) % d:
        mm += 1
        if mm > 64:
            raise InvalidInputError(f"no field of degree <= 64 contains the {d}-th roots of unity")
    return mm


def _load_rep(args) -> CyclicRep:
    name = args.rep or "trivial"
    d = args.d
    if name in _BUILTIN_REPS:
        if d is None:
            d = 1 if name == "trivial" else 3
        if name == "trivial":
            return CyclicRep.trivial(d, args.p, args.rank)
        if name == "companion":
            return CyclicRep.companion(d, args.p)
        return CyclicRep.regular(d, args.p)
    if name.strip().startswith("{"):
        data = json.loads(name)
    else:
        data = json.loads(Path(name).read_text())
    rep = CyclicRep(data["d"], data.get("p", args.p), tuple(tuple(r) for r in data["mat"]))
    if d is not None and rep.d != d:
        raise InvalidInputError(f"--d {d} conflicts with representation d={rep.d}")
    return rep


def _job_echo(args, extra=None) -> dict:
    out = {
        "p": args.p,
        "m": getattr(args, "resolved_m", args.m),
        "d": args.d,
        "rep": args.rep,
        "c": args.c,
        "window": args.window,
        "cap": args.cap,
        "seed": args.seed,
    }
    if extra:
        out.update(extra)
    return {k: v for k, v in out.items() if v is not None}


def _emit(args, command: str, result: dict, code: int, extra_job=None) -> int:
    report = {
        "command": command,
        "job": _job_echo(args, extra_job),
        "result": result,
        "version": __version__,
    }
    canon = json.dumps(report, sort_keys=True, separators=(",", ":"))
    report["digest"] = hashlib.sha256(canon.encode()).hexdigest()
    sys.stdout.write(json.dumps(report, indent=2, sort_keys=True) + "\n")
    return code


def _make_objects(args):
    """Resolve the target module and its filtration from the flags."""
    if args.c is not None and args.rep is not None:
        raise InvalidInputError("--rep and --c are mutually exclusive")
    if args.c is not None:
        ctx = make_field(args.p, args.m or 1)
        args.resolved_m = ctx.m
        c = parse_series(ctx, args.c)
        mod = build_extension(ctx, c)
        if mod.split:
            spec = split_vfilt(mod)
        elif mod.n % args.p == 0:
            spec = mc_depth_grading(mod)
        else:
            spec = mc_vfilt(mod)
        return mod, spec, {"kind": "extension", "n": mod.n, "split": mod.split}
    rep = _load_rep(args)
    ctx = make_field(args.p, resolve_m(args.p, rep.d, args.m))
    args.resolved_m = ctx.m
    kc = build_kummer_crystal(rep, ctx)
    spec = standard_vfilt(kc)
    meta = {"kind": "crystal", "d": kc.d, "rank": kc.rank}
    return kc, spec, meta


def _window(args):
    return (-args.window, args.window)


def cmd_build(args) -> int:
    obj, spec, meta = _make_objects(args)
    result = dict(meta)
    result["object"] = obj.to_json()
    return _emit(args, "build", result, 0)


def cmd_vfilt(args) -> int:
    obj, spec, meta = _make_objects(args)
    win = _window(args)
    rep = graded(spec, win)
    checks = check_axioms(spec, win, depth=args.depth)
    result = {
        "kind": meta["kind"],
        "filtration": spec.to_json(),
        "jumps": [level_json(r) for r in spec.jumps(win)],
        "graded": rep.to_json(),
        "checks": checks.to_json(),
        "all_pass": checks.all_pass,
    }
    return _emit(args, "vfilt", result, 0 if checks.all_pass else 1)


def cmd_graded(args) -> int:
    obj, spec, meta = _make_objects(args)
    rep = graded(spec, _window(args))
    ok = rep.all_frobenius_invertible() and rep.all_t_invertible()
    result = {"kind": meta["kind"], "graded": rep.to_json(), "all_invertible": ok}
    return _emit(args, "graded", result, 0 if ok else 1)


def cmd_check(args) -> int:
    obj, spec, meta = _make_objects(args)
    if args.shift:
        spec = shifted_filtration(spec, args.shift)
    win = _window(args)
    checks = check_axioms(spec, win, depth=args.depth)
    result = {
        "kind": meta["kind"],
        "filtration": spec.to_json(),
        "checks": checks.to_json(),
        "all_pass": checks.all_pass,
    }
    if isinstance(spec, (ExtensionVFilt, SplitVFilt)):
        result["exactness"] = shifted_exactness(spec, win)
    return _emit(args, "check", result, 0 if checks.all_pass else 1)


def cmd_compare(args) -> int:
    if args.e is None and args.shift is None:
        raise InvalidInputError("compare needs --e or --shift")
    win = _window(args)
    if args.e is not None:
        rep = _load_rep(args)
        de = rep.d * args.e
        if de % args.p == 0:
            raise InvalidInputError(f"d*e={de} must stay prime to p={args.p}")
        ctx = make_field(args.p, resolve_m(args.p, de, args.m))
        args.resolved_m = ctx.m
        kc1 = build_kummer_crystal(rep, ctx)
        kc2 = build_kummer_crystal(CyclicRep(de, rep.p, rep.mat), ctx)
        verdict = compare(standard_vfilt(kc1), standard_vfilt(kc2), win)
        result = {"presentations": [rep.d, de], "compare": verdict}
    else:
        obj, spec, meta = _make_objects(args)
        verdict = compare(spec, shifted_filtration(spec, args.shift), win)
        result = {"shift": args.shift, "compare": verdict}
    return _emit(args, "compare", result, 0 if verdict["verdict"] == "equal" else 1)


def cmd_pullback(args) -> int:
    obj, spec, meta = _make_objects(args)
    pb = pullback_filtration(spec, args.dprime)
    win = _window(args)
    checks = check_specializing(pb, win, depth=args.depth)
    result = {
        "kind": meta["kind"],
        "filtration": pb.to_json(),
        "jumps": [level_json(r) for r in pb.jumps(win)],
        "checks": checks.to_json(),
        "all_pass": checks.all_pass,
    }
    return _emit(args, "pullback", result, 0 if checks.all_pass else 1)


def cmd_nearby(args) -> int:
    obj, spec, meta = _make_objects(args)
    if args.full:
        cg = nearby_full(spec)
        result = {"kind": meta["kind"], "nearby": cg.to_json()}
        return _emit(args, "nearby", result, 0)
    psi = nearby_unipotent(spec)
    result = {
        "kind": meta["kind"],
        "nearby": psi.to_json(),
        "saturated_dimension": psi.saturated_dimension(args.cap) if psi.dim else 0,
    }
    return _emit(args, "nearby", result, 0)


def cmd_vanishing(args) -> int:
    obj, spec, meta = _make_objects(args)
    van = vanishing(spec)
    result = {"kind": meta["kind"], "vanishing": van.to_json()}
    return _emit(args, "vanishing", result, 0 if van.commutes else 1)


def cmd_recover(args) -> int:
    rep = _load_rep(args)
    ctx = make_field(args.p, resolve_m(args.p, rep.d, args.m))
    args.resolved_m = ctx.m
    kc = build_kummer_crystal(rep, ctx)
    rec = recover_rep(kc, args.cap)
    iso = rep_isomorphic(rep, rec, ctx)
    result = {
        "input": rep.to_json(),
        "recovered": rec.to_json(),
        "isomorphic": iso,
    }
    return _emit(args, "recover", result, 0 if iso else 1)


def cmd_sol(args) -> int:
    if args.c is not None:
        ctx = make_field(args.p, args.m or 1)
        args.resolved_m = ctx.m
        mod = build_extension(ctx, parse_series(ctx, args.c))
        rep = sol_extension(mod)
        result = {
            "kind": "extension",
            "dimension": rep.dimension,
            "obstruction": rep.obstruction,
        }
    else:
        r = _load_rep(args)
        ctx = make_field(args.p, resolve_m(args.p, r.d, args.m))
        args.resolved_m = ctx.m
        kc = build_kummer_crystal(r, ctx)
        rep = sol_crystal(kc)
        result = {"kind": "crystal", "dimension": rep.dimension}
    return _emit(args, "sol", result, 0)


def _roundtrip_from_file(args) -> dict:
    entries = json.loads(Path(args.rep).read_text())
    if isinstance(entries, dict):
        entries = [entries]
    counters = {"pass": 0, "fail": 0, "rejected": 0}
    for entry in entries:
        try:
            if "mat" in entry:
                rep = CyclicRep(entry["d"], entry.get("p", args.p), tuple(tuple(r) for r in entry["mat"]))
                ctx = make_field(rep.p, resolve_m(rep.p, rep.d, args.m))
                verdict = gf_roundtrip(rep, ctx, args.cap)
            elif "classes" in entry:
                d = entry["d"]
                ctx = make_field(args.p, resolve_m(args.p, d, args.m))
                dims = [0] * d
                mats = [()] * d
                for cls in entry["classes"]:
                    a = cls["a"]
                    dims[a] = cls["dim"]
                    mats[a] = tuple(tuple(tuple(x) for x in row) for row in cls["C"])
                from .functors import CGObject

                obj = CGObject(ctx, d, tuple(dims), tuple(mats))
                verdict = fg_roundtrip(obj, args.cap)
            else:
                raise InvalidInputError("entry is neither a representation nor a graded object")
        except InvalidInputError:
            counters["rejected"] += 1
            continue
        counters["pass" if verdict["status"] == "pass" else "fail"] += 1
    return counters


def cmd_roundtrip(args) -> int:
    if args.rep is not None and not args.rep.strip().startswith("{") and args.rep not in _BUILTIN_REPS:
        counters = _roundtrip_from_file(args)
        result = {"source": "file", "counts": counters}
        code = 1 if counters["fail"] else (2 if counters["rejected"] else 0)
        return _emit(args, "roundtrip", result, code)
    rng = Random(args.seed)
    ds = [args.d] if args.d else [d for d in (2, 3, 4, 6) if d % args.p]
    reps = {"pass": 0, "fail": 0}
    objs = {"pass": 0, "fail": 0}
    nat = {"pass": 0, "fail": 0}
    per = max(1, args.count // len(ds))
    for d in ds:
        ctx = make_field(args.p, resolve_m(args.p, d, args.m))
        for _ in range(per):
            rep = random_rep(ctx, d, rng, max_rank=4)
            v = gf_roundtrip(rep, ctx, args.cap)
            reps["pass" if v["status"] == "pass" else "fail"] += 1
        for _ in range(per):
            obj = random_object(ctx, d, rng, max_rank=3)
            v = fg_roundtrip(obj, args.cap)
            objs["pass" if v["status"] == "pass" else "fail"] += 1
        for _ in range(max(1, per // 4)):
            r1 = random_rep(ctx, d, rng, max_rank=3)
            f = random_rep_morphism(r1, r1, rng)
            v = naturality_check_F(r1, r1, f, ctx)
            nat["pass" if v["status"] == "pass" else "fail"] += 1
    result = {
        "source": "sampled",
        "ds": ds,
        "per_d": per,
        "reps": reps,
        "objects": objs,
        "naturality": nat,
    }
    failures = reps["fail"] + objs["fail"] + nat["fail"]
    return _emit(args, "roundtrip", result, 1 if failures else 0)


def cmd_glue(args) -> int:
    if args.c is not None:
        ctx = make_field(args.p, args.m or 1)
        args.resolved_m = ctx.m
        mod = build_extension(ctx, parse_series(ctx, args.c))
        triple = gluing_data(mod)
    else:
        rep = _load_rep(args)
        ctx = make_field(args.p, resolve_m(args.p, rep.d, args.m))
        args.resolved_m = ctx.m
        triple = gluing_data(build_kummer_crystal(rep, ctx))
    result = {"triple": triple.to_json()}
    return _emit(args, "glue", result, 0 if triple.consistent else 1)


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, required=True, help="characteristic (prime)")
    common.add_argument("--m", type=int, default=None, help="field degree; minimal when omitted")
    common.add_argument("--d", type=int, default=None, help="cover degree / group order")
    common.add_argument("--rep", type=str, default=None, help="trivial|companion|regular, a JSON literal, or a file path")
    common.add_argument("--rank", type=int, default=1, help="rank for the trivial representation")
    common.add_argument("--c", type=str, default=None, help="extension class series, e.g. '3t^-2+t'")
    common.add_argument("--window", type=int, default=64, help="level window half-width N for [-N, N)")
    common.add_argument("--cap", type=int, default=DEFAULT_SATURATION_CAP, help="saturation degree cap")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    common.add_argument("--format", choices=["json"], default="json")
    common.add_argument("--depth", type=int, default=None, help="depth override for the ideal-power check")

    ap = argparse.ArgumentParser(prog="fcrystal", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    sub.add_parser("build", parents=[common]).set_defaults(func=cmd_build)
    sub.add_parser("vfilt", parents=[common]).set_defaults(func=cmd_vfilt)
    sub.add_parser("graded", parents=[common]).set_defaults(func=cmd_graded)

    p_check = sub.add_parser("check", parents=[common])
    p_check.add_argument("--shift", type=int, default=0, help="check the filtration shifted this much")
    p_check.set_defaults(func=cmd_check)

    p_cmp = sub.add_parser("compare", parents=[common])
    p_cmp.add_argument("--e", type=int, default=None, help="compare against the degree-d*e presentation")
    p_cmp.add_argument("--shift", type=int, default=None, help="compare against the shifted filtration")
    p_cmp.set_defaults(func=cmd_compare)

    p_pb = sub.add_parser("pullback", parents=[common])
    p_pb.add_argument("--dprime", type=int, required=True, help="degree of the fresh cover")
    p_pb.set_defaults(func=cmd_pullback)

    p_nb = sub.add_parser("nearby", parents=[common])
    p_nb.add_argument("--full", action="store_true", help="assemble all fractional pieces, not just level 0")
    p_nb.set_defaults(func=cmd_nearby)

    sub.add_parser("vanishing", parents=[common]).set_defaults(func=cmd_vanishing)
    sub.add_parser("recover", parents=[common]).set_defaults(func=cmd_recover)
    sub.add_parser("sol", parents=[common]).set_defaults(func=cmd_sol)

    p_rt = sub.add_parser("roundtrip", parents=[common])
    p_rt.add_argument("--count", type=int, default=24, help="total sampled cases")
    p_rt.set_defaults(func=cmd_roundtrip)

    sub.add_parser("glue", parents=[common]).set_defaults(func=cmd_glue)
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.func(args)
    except InvalidInputError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except CapExceededError as err:
        print(f"resource cap exceeded: {err}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
