"""``confequiv`` command line.

Every subcommand prints one JSON report on stdout.  Exit status: 0 success,
1 for a negative mathematical verdict (differs / infeasible / invalid /
not similar / failed check), 2 for input errors.  Timing goes to stderr so
stdout is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import time

from . import __version__
from .amenability import build_system, solve
from .catalog import catalog, class_data, compare_catalogs, default_cache_dir, is_normal_set
from .configurations import (
    ONE_SIDED,
    TWO_SIDED,
    configurations,
    stabilized_configurations,
)
from .decomposition import pieces_bound, verify_decomposition
from .errors import ConfEquivError
from .io import (
    InputError,
    dumps,
    gen_names,
    load_json_arg,
    parse_claim,
    parse_elements,
    parse_gens,
    parse_group,
    parse_partition,
    partition_json,
)
from .paper_checks import (
    center_checks,
    identity_checks,
    inverse_checks,
    matrix_agreement,
    phi_checks,
    torsion_checks,
)
from .partitions import Homomorphism, atoms, meet, pullback_partition, similar

log = logging.getLogger("confequiv")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json-indent", type=int, default=2)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--threads", type=int, default=int(os.environ.get("CONFEQUIV_THREADS", "1")))


def _add_pair(p: argparse.ArgumentParser) -> None:
    p.add_argument("--group", required=True, help="JSON record, file, or short name (Z4, S3, F2, K ...)")
    p.add_argument("--gens", help="comma-separated labels or indices; default: built-in generators")
    p.add_argument("--partition", help="JSON block list or built-in: singletons, trivial, first-letter, a-parity")
    p.add_argument("--radius", type=int, help="ball radius (required for infinite groups)")
    p.add_argument("--stable-span", type=int, help="stabilize over radii 1..radius with this span")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="confequiv", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    for name in ("con", "con2", "amen"):
        p = sub.add_parser(name)
        _add_pair(p)
        _add_common(p)
    sub.choices["con"].add_argument("--two-sided", action="store_true")

    p = sub.add_parser("atoms")
    p.add_argument("--group", required=True)
    p.add_argument("--sets", required=True, help="JSON list of element-label lists")
    _add_common(p)

    p = sub.add_parser("meet")
    p.add_argument("--group", required=True)
    p.add_argument("--partition", required=True)
    p.add_argument("--other", required=True)
    _add_common(p)

    p = sub.add_parser("similar")
    p.add_argument("--group", required=True)
    p.add_argument("--fine", required=True)
    p.add_argument("--coarse", required=True)
    p.add_argument("--group-b", required=True)
    p.add_argument("--fine-b", required=True)
    p.add_argument("--coarse-b", required=True)
    _add_common(p)

    p = sub.add_parser("pullback")
    p.add_argument("--group", required=True, help="source group")
    p.add_argument("--target", required=True)
    p.add_argument("--images", required=True,
                   help='JSON object {source generator: target element}')
    p.add_argument("--partition", required=True, help="partition of the target")
    _add_common(p)

    p = sub.add_parser("verify-decomp")
    p.add_argument("--group", required=True)
    p.add_argument("--gens")
    p.add_argument("--claim", help="JSON claim or file; default: the classical free-group claim")
    p.add_argument("--radius", type=int)
    _add_common(p)

    p = sub.add_parser("classdata")
    p.add_argument("--group", required=True)
    p.add_argument("--normal-set", help="also test whether these elements form a normal set")
    _add_common(p)

    for name in ("catalog", "compare"):
        p = sub.add_parser(name)
        if name == "catalog":
            p.add_argument("--group", required=True)
        else:
            p.add_argument("--a", required=True)
            p.add_argument("--b", required=True)
            p.add_argument("--witness-limit", type=int, default=5)
        p.add_argument("--max-n", type=int, default=2)
        p.add_argument("--max-m", type=int, default=4)
        p.add_argument("--two-sided", action="store_true")
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--allow-large", action="store_true")
        _add_common(p)

    p = sub.add_parser("paper-demo")
    p.add_argument("--identities", action="store_true")
    p.add_argument("--mechanics", action="store_true")
    p.add_argument("--torsion", action="store_true")
    p.add_argument("--m-range", default="-6..6")
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--word-length", type=int, default=6)
    p.add_argument("--order-bound", type=int, default=100)
    _add_common(p)
    return parser


def _normalise_argv(argv: list[str]) -> list[str]:
    # "--m-range -6..6" would otherwise be read as an option
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--m-range" and i + 1 < len(argv):
            out.append(f"--m-range={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def _conf_set(args, two_sided: bool):
    view = parse_group(args.group)
    gens = parse_gens(view, args.gens)
    P = parse_partition(view, args.partition)
    if args.radius is None:
        if not view.is_finite:
            raise InputError("infinite groups need --radius")
        cs = configurations(view, gens, P, two_sided=two_sided)
    elif args.stable_span:
        cs = stabilized_configurations(view, gens, P, args.radius, args.stable_span, two_sided)
    else:
        cs = configurations(view, gens, P, radius=args.radius, two_sided=two_sided)
    inputs = {
        "group": view.spec(),
        "gens": gen_names(view, gens),
        "gens_verified": gens.verified,
        "partition": partition_json(view, P),
        "radius": args.radius,
        "stable_span": args.stable_span,
    }
    return view, cs, inputs


def cmd_con(args, two_sided=False):
    _, cs, inputs = _conf_set(args, two_sided or getattr(args, "two_sided", False))
    return 0, inputs, {"configurations": cs.to_json()}


def cmd_amen(args):
    _, cs, inputs = _conf_set(args, False)
    system = build_system(cs)
    verdict = solve(system)
    results = {
        "configurations": cs.to_json(),
        "system": {"rows": len(system.A), "columns": len(system.configs)},
        "verdict": verdict.to_json(system),
    }
    if not cs.is_exact:
        results["verdict"]["scope_note"] = "at observed radius"
    return (0 if verdict.feasible else 1), inputs, results


def cmd_atoms(args):
    view = parse_group(args.group)
    sets = load_json_arg(args.sets)
    if not isinstance(sets, list):
        raise InputError("--sets must be a JSON list of lists")
    parsed = [[view.parse_element(x) for x in s] for s in sets]
    P = atoms(view, parsed)
    return 0, {"group": view.spec(), "sets": sets}, {"atoms": partition_json(view, P)}


def cmd_meet(args):
    view = parse_group(args.group)
    P = parse_partition(view, args.partition)
    Q = parse_partition(view, args.other)
    R = meet(P, Q)
    inputs = {"group": view.spec(), "partition": partition_json(view, P),
              "other": partition_json(view, Q)}
    return 0, inputs, {"meet": partition_json(view, R)}


def cmd_similar(args):
    va, vb = parse_group(args.group), parse_group(args.group_b)
    fa, ca = parse_partition(va, args.fine), parse_partition(va, args.coarse)
    fb, cb = parse_partition(vb, args.fine_b), parse_partition(vb, args.coarse_b)
    flag, witness = similar((fa, ca), (fb, cb))
    inputs = {
        "group": va.spec(), "fine": partition_json(va, fa), "coarse": partition_json(va, ca),
        "group_b": vb.spec(), "fine_b": partition_json(vb, fb), "coarse_b": partition_json(vb, cb),
    }
    return (0 if flag else 1), inputs, {"similar": flag, "witness": witness.to_json()}


def cmd_pullback(args):
    src, tgt = parse_group(args.group), parse_group(args.target)
    images = load_json_arg(args.images)
    if not isinstance(images, dict):
        raise InputError("--images must be a JSON object")
    q = Homomorphism.from_generators(
        src, tgt, {src.parse_element(k): tgt.parse_element(v) for k, v in images.items()}
    )
    F = parse_partition(tgt, args.partition)
    P = pullback_partition(q, F)
    inputs = {"group": src.spec(), "target": tgt.spec(), "images": images,
              "partition": partition_json(tgt, F)}
    return 0, inputs, {"pullback": partition_json(src, P)}


def cmd_verify(args):
    view = parse_group(args.group)
    gens = parse_gens(view, args.gens)
    claim = parse_claim(view, gens, args.claim)
    if not view.is_finite and args.radius is None:
        raise InputError("infinite groups need --radius")
    verdict = verify_decomposition(view, gens, claim, radius=args.radius)
    inputs = {"group": view.spec(), "gens": gen_names(view, gens),
              "claim": args.claim or "classical", "radius": args.radius}
    results = {"verdict": verdict.to_json(view), "pieces_bound": pieces_bound(claim),
               "groups": len(claim.groups)}
    return (0 if verdict.valid else 1), inputs, results


def cmd_classdata(args):
    view = parse_group(args.group)
    results = {"class_data": class_data(view).to_json(view)}
    inputs = {"group": view.spec()}
    if args.normal_set:
        S = parse_elements(view, args.normal_set)
        results["normal_set"] = is_normal_set(view, S)
        inputs["normal_set"] = [view.label(x) for x in S]
    return 0, inputs, results


def _cache_dir(args):
    return args.cache_dir or default_cache_dir()


def cmd_catalog(args):
    view = parse_group(args.group)
    kind = TWO_SIDED if args.two_sided else ONE_SIDED
    cat = catalog(view, args.max_n, args.max_m, kind, cache_dir=_cache_dir(args),
                  threads=args.threads, allow_large=args.allow_large)
    inputs = {"group": view.spec(), "max_n": args.max_n, "max_m": args.max_m, "kind": kind}
    return 0, inputs, {"catalog": cat.to_json()}


def cmd_compare(args):
    va, vb = parse_group(args.a), parse_group(args.b)
    kind = TWO_SIDED if args.two_sided else ONE_SIDED
    opts = dict(cache_dir=_cache_dir(args), threads=args.threads, allow_large=args.allow_large)
    ca = catalog(va, args.max_n, args.max_m, kind, **opts)
    cb = catalog(vb, args.max_n, args.max_m, kind, **opts)
    cmp = compare_catalogs(ca, cb)
    inputs = {"a": va.spec(), "b": vb.spec(), "max_n": args.max_n, "max_m": args.max_m,
              "kind": kind}
    results = {"comparison": cmp.to_json(limit=args.witness_limit),
               "catalog_sizes": {"a": len(ca), "b": len(cb)}}
    return (0 if cmp.equal else 1), inputs, results


def _parse_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        if not sep:
            raise ValueError
        return int(lo), int(hi)
    except ValueError:
        raise InputError(f"--m-range must look like -6..6, got {text!r}") from None


def cmd_paper_demo(args):
    run_all = not (args.identities or args.mechanics or args.torsion)
    lo, hi = _parse_range(args.m_range)
    results = {}
    if args.identities or run_all:
        results["identities"] = identity_checks(lo, hi)
        results["matrix_agreement"] = matrix_agreement(args.samples, args.seed)
    if args.mechanics or run_all:
        results["phi"] = phi_checks(args.samples, args.seed)
        results["inverses"] = inverse_checks(max(1, args.samples // 10), args.seed)
        results["center"] = center_checks()
    if args.torsion or args.mechanics or run_all:
        results["torsion"] = torsion_checks(args.word_length, args.order_bound)
    ok = all(r["ok"] for r in results.values())
    results["all_ok"] = ok
    inputs = {"m_range": [lo, hi], "samples": args.samples, "seed": args.seed,
              "word_length": args.word_length, "order_bound": args.order_bound}
    return (0 if ok else 1), inputs, results


COMMANDS = {
    "con": cmd_con,
    "con2": lambda a: cmd_con(a, two_sided=True),
    "amen": cmd_amen,
    "atoms": cmd_atoms,
    "meet": cmd_meet,
    "similar": cmd_similar,
    "pullback": cmd_pullback,
    "verify-decomp": cmd_verify,
    "classdata": cmd_classdata,
    "catalog": cmd_catalog,
    "compare": cmd_compare,
    "paper-demo": cmd_paper_demo,
}


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    argv = _normalise_argv(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    start = time.perf_counter()
    try:
        code, inputs, results = COMMANDS[args.command](args)
    except ConfEquivError as exc:
        print(f"confequiv {args.command}: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    report = {"command": args.command, "inputs": inputs, "results": results}
    out.write(dumps(report, indent=args.json_indent) + "\n")
    log.info("%s finished in %.3fs", args.command, time.perf_counter() - start)
    print(f"[{args.command}] {time.perf_counter() - start:.3f}s exit={code}", file=sys.stderr)
    return code


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
