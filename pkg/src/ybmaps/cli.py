"""Command-line front end: verify, construct, reduce, and report.

Exit codes: 0 when every requested verdict is Pass (or matches its declared
expectation), 1 on a Fail, 2 on usage or parse errors, 3 when the only
problem is an Inconclusive verdict (pole-resampling budget exhausted).

Identical invocations (same seed, field, samples, jobs) produce
byte-identical ``--format json`` output; the document layout is published in
``report-schema.json`` at the repository root.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import catalog, dsl
from .construct import (dynamical_yb_from_ternary, ternary_from_yb,
                        yb_from_ternary)
from .core import (check_3d_consistency, check_dynamical_yb, check_invariance,
                   check_involution, check_yb, maps_equal_pointwise,
                   ternaries_equal_pointwise)
from .errors import (ParseError, PreconditionFailedError, UnknownEntryError,
                     UnknownQuasigroupError)
from .field import DEFAULT_MODULUS, FieldConfig
from .lax import check_refactorization, check_strongness
from .quasigroup import builtin
from .reduce import (check_compatibility, constant_constraint,
                     expression_constraint, reduce_lax, reduce_map,
                     zero_constraint)

USAGE_ERROR = 2


def _parse_field(text: str, seed: int) -> FieldConfig:
    if text == "q":
        return FieldConfig(kind="q", rng_seed=seed)
    if text == "fp":
        return FieldConfig(kind="fp", modulus=DEFAULT_MODULUS, rng_seed=seed)
    if text.startswith("fp:"):
        return FieldConfig(kind="fp", modulus=int(text[3:]), rng_seed=seed)
    raise ValueError(f"bad --field value {text!r}; use q or fp[:modulus]")


def _common_flags(p: argparse.ArgumentParser):
    p.add_argument("--field", default=f"fp:{DEFAULT_MODULUS}",
                   help="q | fp[:modulus] (default fp with the Mersenne "
                        "prime 2^61-1)")
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--zeta-points", type=int, default=3, dest="zeta_points")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--strict", action=argparse.BooleanOptionalAction,
                   default=True,
                   help="enforce construction preconditions (default on)")
    p.add_argument("--jobs", type=int, default=1,
                   help="logical worker streams for the sample budget")


def build_parser() -> argparse.ArgumentParser:
    root = argparse.ArgumentParser(
        prog="ybmaps",
        description="verify and construct Yang-Baxter maps and 3D-compatible "
                    "ternary systems by exact randomized identity testing")
    sub = root.add_subparsers(dest="command", required=True)

    p = sub.add_parser("list", help="catalog entries with expected flags")
    _common_flags(p)

    p = sub.add_parser("verify", help="run one verifier on a catalog entry "
                                      "or definition file")
    p.add_argument("what", choices=("yb", "3d", "lax", "invariance",
                                    "involution", "dynamical"))
    p.add_argument("target")
    p.add_argument("--quasigroup", default=None)
    p.add_argument("--expect", choices=("yes", "no"), default=None,
                   help="for involution: expected outcome (catalog default)")
    _common_flags(p)

    p = sub.add_parser("construct", help="build a map or ternary system and "
                                         "auto-verify it")
    p.add_argument("kind", choices=("group", "abelian_additive", "division",
                                    "loop", "abelian_general",
                                    "shibukawa_dynamical", "inverse"))
    p.add_argument("--ternary", default=None)
    p.add_argument("--map", dest="map_target", default=None)
    p.add_argument("--quasigroup", default=None)
    _common_flags(p)

    p = sub.add_parser("reduce", help="pin one coordinate with a compatible "
                                      "constraint and verify the result")
    p.add_argument("--map", dest="map_target", required=True)
    p.add_argument("--constraint", required=True,
                   help="zero | constant:<int> | expr:<expression in "
                        "x1..x{n-1}, a1..a{d}>")
    p.add_argument("--index", type=int, default=1,
                   help="constrained coordinate k (1-based)")
    _common_flags(p)

    p = sub.add_parser("regress", help="run the whole catalog against its "
                                       "expectations")
    _common_flags(p)

    return root


# ---------------------------------------------------------------------------
# target resolution


def _looks_like_path(target: str) -> bool:
    return ("/" in target or target.endswith(".yb") or os.path.isfile(target))


def _load_map(target: str):
    if _looks_like_path(target):
        df = dsl.parse_file(target)
        return dsl.to_yb_map(df, name=os.path.basename(target)), df
    return catalog.get_map(target), None


def _load_ternary(target: str):
    if _looks_like_path(target):
        df = dsl.parse_file(target)
        return dsl.to_ternary(df, name=os.path.basename(target)), df
    return catalog.get_ternary(target), None


def _default_quasigroup(name, entry_name, df):
    if name:
        return builtin(name)
    if df is not None and df.quasigroup:
        return builtin(df.quasigroup)
    if entry_name:
        try:
            contexts = catalog.lookup(entry_name).expects.invariance
            if contexts:
                return builtin(contexts[0])
        except UnknownEntryError:
            pass
    return None


# ---------------------------------------------------------------------------
# output


def _exit_code(reports, mismatch=False):
    verdicts = [r.verdict for r in reports]
    if mismatch or "Fail" in verdicts:
        return 1
    if "Inconclusive" in verdicts:
        return 3
    return 0


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _payload(args, command, **extra):
    doc = {"command": command,
           "field": args.field,
           "samples": args.samples,
           "seed": args.seed}
    doc.update(extra)
    return doc


# ---------------------------------------------------------------------------
# subcommands


def _cmd_list(args, cfg):
    rows = []
    lines = []
    for e in catalog.list_entries():
        x = e.expects
        flags = []
        if x.yb is not None:
            flags.append("yb")
        if x.threed is not None:
            flags.append("3d")
        flags += [f"symmetry[{k}]@{q}" for k, q in x.symmetry]
        flags += [f"invariance@{q}" for q in x.invariance]
        if x.involution is not None:
            flags.append("involution:" + ("yes" if x.involution else "no"))
        if x.refactorization:
            flags.append(f"lax-for:{x.refactorization}")
        if x.gl_invariants:
            flags.append("gl-invariants")
        rows.append({"name": e.name, "kind": e.kind, "param_arity": e.param_arity,
                     "contexts": list(e.contexts), "flags": flags,
                     "label": e.label})
        lines.append(f"{e.name:22s} {e.kind:10s} arity={e.param_arity}  "
                     f"{', '.join(flags)}")
        lines.append(f"{'':22s} {e.label}")
    _emit(args, _payload(args, "list", entries=rows, exit_code=0), lines)
    return 0


def _verify_reports(args, cfg):
    what = args.what
    if what == "yb":
        r, _ = _load_map(args.target)
        return [check_yb(r, args.samples, cfg, jobs=args.jobs)], None
    if what == "3d":
        t, _ = _load_ternary(args.target)
        return [check_3d_consistency(t, args.samples, cfg, jobs=args.jobs)], None
    if what == "lax":
        entry = catalog.lookup(args.target)
        if entry.kind != "lax":
            raise UnknownEntryError(f"{args.target} is not a Lax entry")
        partner = catalog.get_map(entry.expects.refactorization)
        return [check_refactorization(entry.obj, partner, args.samples, cfg,
                                      zeta_points=args.zeta_points,
                                      jobs=args.jobs),
                check_strongness(entry.obj, partner,
                                 min(args.samples, 100), cfg,
                                 zeta_points=args.zeta_points,
                                 jobs=args.jobs)], None
    if what == "invariance":
        r, df = _load_map(args.target)
        q = _default_quasigroup(args.quasigroup, args.target, df)
        if q is None:
            raise UnknownQuasigroupError(
                "no quasigroup context; pass --quasigroup")
        return [check_invariance(r, q, args.samples, cfg, jobs=args.jobs)], None
    if what == "involution":
        r, _ = _load_map(args.target)
        expect = args.expect
        if expect is None:
            try:
                flag = catalog.lookup(args.target).expects.involution
                expect = "no" if flag is False else "yes"
            except UnknownEntryError:
                expect = "yes"
        rep = check_involution(r, args.samples, cfg, jobs=args.jobs)
        return [rep], ("Pass" if expect == "yes" else "Fail")
    if what == "dynamical":
        t, df = _load_ternary(args.target)
        q = _default_quasigroup(args.quasigroup, None, df) or builtin("multiplicative")
        dyn = dynamical_yb_from_ternary(t, q)
        return [check_dynamical_yb(dyn, args.samples, cfg, jobs=args.jobs)], None
    raise AssertionError(what)


def _cmd_verify(args, cfg):
    reports, expected = _verify_reports(args, cfg)
    if expected is None:
        code = _exit_code(reports)
        expectation_note = None
    else:
        matched = reports[0].verdict == expected
        code = 0 if matched else 1
        expectation_note = (f"expected verdict {expected}; "
                            f"{'matched' if matched else 'MISMATCH'}")
    lines = [r.summary() for r in reports]
    if expectation_note:
        lines.append(expectation_note)
    _emit(args, _payload(args, "verify", what=args.what, target=args.target,
                         reports=[r.to_dict() for r in reports],
                         expectation=expectation_note, exit_code=code), lines)
    return code


def _pointwise_matches(constructed, cfg, samples, kind):
    """Catalog entries the constructed object agrees with pointwise."""
    matches = []
    for e in catalog.list_entries():
        try:
            if kind == "map" and e.kind in ("ybmap", "glmap"):
                rep = maps_equal_pointwise(constructed, e.obj, samples, cfg)
            elif kind == "ternary" and e.kind in ("ternary", "glternary"):
                rep = ternaries_equal_pointwise(constructed, e.obj, samples, cfg)
            else:
                continue
        except Exception:
            continue
        if rep.verdict == "Pass":
            matches.append(e.name)
    return matches


def _cmd_construct(args, cfg):
    reports = []
    lines = []
    matches = []
    name = None
    if args.kind == "inverse":
        if not args.map_target:
            raise ValueError("construct inverse needs --map")
        r, df = _load_map(args.map_target)
        q = _default_quasigroup(args.quasigroup, args.map_target, df)
        if q is None:
            raise UnknownQuasigroupError("construct inverse needs --quasigroup")
        t = ternary_from_yb(r, q, cfg, strict=args.strict)
        name = t.name
        reports.append(check_3d_consistency(t, args.samples, cfg, jobs=args.jobs))
        matches = _pointwise_matches(t, cfg, args.samples, "ternary")
    elif args.kind == "shibukawa_dynamical":
        if not args.ternary:
            raise ValueError("construct shibukawa_dynamical needs --ternary")
        t, df = _load_ternary(args.ternary)
        q = _default_quasigroup(args.quasigroup, None, df) or builtin("multiplicative")
        dyn = dynamical_yb_from_ternary(t, q, cfg=cfg, strict=args.strict)
        name = dyn.name
        reports.append(check_dynamical_yb(dyn, args.samples, cfg, jobs=args.jobs))
    else:
        if not args.ternary:
            raise ValueError(f"construct {args.kind} needs --ternary")
        t, df = _load_ternary(args.ternary)
        q = None
        if args.kind in ("group", "abelian_general"):
            q = _default_quasigroup(args.quasigroup, None, df) or builtin("multiplicative")
        r = yb_from_ternary(t, args.kind, q, cfg, strict=args.strict)
        name = r.name
        reports.append(check_yb(r, args.samples, cfg, jobs=args.jobs))
        matches = _pointwise_matches(r, cfg, args.samples, "map")

    lines.append(f"constructed: {name}")
    lines += [r.summary() for r in reports]
    if matches:
        lines.append(f"pointwise equal to catalog: {', '.join(matches)}")
    code = _exit_code(reports)
    _emit(args, _payload(args, "construct", kind=args.kind, constructed=name,
                         reports=[r.to_dict() for r in reports],
                         matches=matches, exit_code=code), lines)
    return code


def _parse_constraint(spec: str, index: int, dim: int, param_arity: int):
    if spec == "zero":
        return zero_constraint(index, dim - 1)
    if spec.startswith("constant:"):
        return constant_constraint(int(spec.split(":", 1)[1]), index, dim - 1)
    if spec.startswith("expr:"):
        return expression_constraint(spec.split(":", 1)[1], index, dim - 1,
                                     param_arity)
    raise ValueError(f"bad --constraint {spec!r}; use zero, constant:<int> "
                     f"or expr:<expression>")


def _cmd_reduce(args, cfg):
    r, _ = _load_map(args.map_target)
    if not (1 <= args.index <= r.dim):
        raise ValueError(f"--index must be in 1..{r.dim}")
    f = _parse_constraint(args.constraint, args.index, r.dim, r.param_arity)
    reports = [check_compatibility(r, f, args.samples, cfg, jobs=args.jobs)]
    lines = [reports[0].summary()]
    matches = []
    reduced_name = None
    if reports[0].verdict == "Pass" or not args.strict:
        reduced = reduce_map(r, f, cfg, strict=False)
        reduced_name = reduced.name
        reports.append(check_yb(reduced, args.samples, cfg, jobs=args.jobs))
        lines.append(reports[-1].summary())
        for e in catalog.list_entries():
            if e.kind == "lax" and e.expects.refactorization == args.map_target:
                rlax = reduce_lax(e.obj, f, reduced_for=reduced.name)
                reports.append(check_refactorization(
                    rlax, reduced, args.samples, cfg,
                    zeta_points=args.zeta_points, jobs=args.jobs))
                lines.append(reports[-1].summary())
        matches = _pointwise_matches(reduced, cfg, args.samples, "map")
        if matches:
            lines.append(f"pointwise equal to catalog: {', '.join(matches)}")
    code = _exit_code(reports)
    _emit(args, _payload(args, "reduce", map=args.map_target,
                         constraint=args.constraint, index=args.index,
                         reduced=reduced_name,
                         reports=[r.to_dict() for r in reports],
                         matches=matches, exit_code=code), lines)
    return code


def _cmd_regress(args, cfg):
    rows = catalog.run_all(args.samples, cfg, jobs=args.jobs,
                           zeta_points=args.zeta_points)
    mismatch_rows = [r for r in rows if not r.matched]
    hard_mismatch = any(r.verdict != "Inconclusive" for r in mismatch_rows)
    if mismatch_rows:
        code = 1 if hard_mismatch else 3
    else:
        code = 0
    lines = []
    for r in rows:
        mark = "ok" if r.matched else "MISMATCH"
        lines.append(f"{mark:9s} {r.entry:22s} {r.check:34s} "
                     f"expected={r.expected} got={r.verdict}")
    lines.append(f"{len(rows)} checks, {len(mismatch_rows)} mismatches")
    _emit(args, _payload(args, "regress", rows=[r.to_dict() for r in rows],
                         mismatches=len(mismatch_rows), exit_code=code), lines)
    return code


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _parse_field(args.field, args.seed)
    except ValueError as exc:
        print(f"ybmaps: {exc}", file=sys.stderr)
        return USAGE_ERROR
    try:
        if args.command == "list":
            return _cmd_list(args, cfg)
        if args.command == "verify":
            return _cmd_verify(args, cfg)
        if args.command == "construct":
            return _cmd_construct(args, cfg)
        if args.command == "reduce":
            return _cmd_reduce(args, cfg)
        if args.command == "regress":
            return _cmd_regress(args, cfg)
        raise AssertionError(args.command)
    except PreconditionFailedError as exc:
        print(f"ybmaps: precondition failed: {exc}", file=sys.stderr)
        if exc.report is not None:
            print(exc.report.summary(), file=sys.stderr)
        return 1
    except (ParseError, UnknownEntryError, UnknownQuasigroupError,
            ValueError, OSError) as exc:
        print(f"ybmaps: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
