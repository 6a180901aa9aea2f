"""Command-line front end.

Exit codes: 0 success or a true verdict, 1 a false verdict or failing
suite, 2 invalid input (schema, rational, structure), 3 mismatched tags,
carriers, spaces or action sets.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import engine as E
from . import io
from .density import (product_density_lift, product_density_lift_direct,
                      stream_density_witness)
from .errors import (ActionMismatch, AmbientMismatch, CarrierMismatch, InvalidStructure,
                     KanliftError, SpaceMismatch, TagMismatch)
from .fibration import LiftingParam
from .giry import bisimulation_witness, simulation_single_witness, simulation_two_witness
from .kantorovich import kantorovich_oracle, kantorovich_solve
from .monad import powerset_monad
from .suites import SUITES, mutant_report, run_suite

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_MISMATCH = 0, 1, 2, 3
MISMATCH = (TagMismatch, CarrierMismatch, SpaceMismatch, ActionMismatch, AmbientMismatch)
MONADS = {"powerset": powerset_monad}


def _emit(args, result: dict) -> None:
    text = io.dumps(result)
    if getattr(args, "out", None):
        Path(args.out).write_text(text)
    if getattr(args, "json", False):
        sys.stdout.write(text)


def _load_structure(path):
    doc = io.load_document(path)
    kind, payload = doc["kind"], doc["payload"]
    if kind == "preorder":
        return io.decode_preorder(payload), payload
    if kind == "topology":
        return io.decode_topology(payload), payload
    raise io.SchemaError(f"{path}: cannot lift a {kind} instance")


def _param(args):
    if args.param_file:
        s, payload = _load_structure(args.param_file)
        if "base" not in payload:
            raise io.SchemaError("an inline parameter must declare its 'base' set R")
        base = io.decode_base(payload)
        return LiftingParam.single(base, s), f"custom:{Path(args.param_file).name}"
    return E.BUILTIN_PARAMS[E.Kind(args.param)](), args.param


def cmd_lift(args) -> int:
    m = MONADS[args.monad]()
    x, _ = _load_structure(args.instance)
    param, label = _param(args)
    lifted = E.codensity_lift(m, param, x)
    result = {"monad": args.monad, "param": label, "input": x, "lifted": lifted.result,
              "morphisms_inspected": lifted.witness_count}
    if not args.param_file and args.check_closed_form:
        result["closed_form_agrees"] = E.closed_form_lift(args.param, x) == lifted.result
    if not args.json:
        print(f"{label} lifting of {args.instance}:")
        print(io.render_table(lifted.result))
        if "closed_form_agrees" in result:
            print(f"closed form agrees: {str(result['closed_form_agrees']).lower()}")
    _emit(args, result)
    return EXIT_OK


def _verdict(args, check: str, witness) -> int:
    holds = witness is None
    result = {"check": check, "holds": holds, "witness": witness}
    if not args.json:
        print(f"{check}: {'holds' if holds else 'fails'}")
        if witness is not None:
            print("witness: " + io.dumps_compact(witness))
    _emit(args, result)
    return EXIT_OK if holds else EXIT_FALSE


def cmd_check(args) -> int:
    lmps = [io.decode_lmp(io.load(p, "lmp")) for p in args.lmp]
    if args.kind == "sim1":
        if len(lmps) != 1:
            raise io.SchemaError("sim1 takes exactly one LMP file")
        (lmp,) = lmps
        r = io.decode_relation(io.load(args.relation, "relation"),
                               lmp.space.carrier, lmp.space.carrier)
        return _verdict(args, "sim1", simulation_single_witness(lmp, r))
    if len(lmps) != 2:
        raise io.SchemaError(f"{args.kind} takes exactly two LMP files")
    l1, l2 = lmps
    if set(l1.actions) != set(l2.actions):
        raise ActionMismatch(f"action sets differ: {list(l1.actions)} vs {list(l2.actions)}")
    r = io.decode_relation(io.load(args.relation, "relation"),
                           l1.space.carrier, l2.space.carrier)
    if args.kind == "sim2":
        return _verdict(args, "sim2", simulation_two_witness(l1, l2, r, args.exhaustive))
    return _verdict(args, "bisim", bisimulation_witness(l1, l2, r))


def cmd_kantorovich(args) -> int:
    dspace, space = io.decode_metric(io.load(args.metric, "metric_space"))
    v1 = io.parse_measure_spec(space, args.mu)
    v2 = io.parse_measure_spec(space, args.nu)
    res = kantorovich_solve(dspace, v1, v2)
    result = {"distance": res.value, "certified": res.certified}
    if args.certificate:
        result["f"] = {str(k): v for k, v in res.f.items()}
        result["dual"] = list(res.lp.dual)
    if args.oracle:
        ref = kantorovich_oracle(dspace, v1, v2)
        result["oracle"] = ref
        result["oracle_agrees"] = ref == res.value
    if not args.json:
        print(io.format_rational(res.value))
        if args.certificate:
            for x, v in res.f.items():
                print(f"f({x}) = {io.format_rational(v)}")
            print(f"dual certificate verified: {str(res.certified).lower()}")
        if args.oracle:
            print(f"oracle: {io.format_rational(ref)} "
                  f"({'agrees' if ref == res.value else 'DISAGREES'})")
    _emit(args, result)
    if args.oracle and ref != res.value:
        return EXIT_FALSE
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.suite == "mutants":
        report = mutant_report()
    else:
        report = run_suite(args.suite)
    if args.json:
        _emit(args, report.to_json(io.to_jsonable))
    else:
        print(report)
        if args.out:
            Path(args.out).write_text(io.dumps(report.to_json(io.to_jsonable)))
    return EXIT_OK if report.ok else EXIT_FALSE


def cmd_density_lift(args) -> int:
    s, ra = io.decode_pred(io.load(args.param, "pred"))
    if ra is None:
        raise io.SchemaError("the parameter predicate needs 'r' and 'a' fields")
    r, a = ra
    x, _ = io.decode_pred(io.load(args.instance, "pred"))
    lifted = product_density_lift(a, r, s, x)
    result = {"lifted": lifted}
    if args.direct:
        result["direct_agrees"] = product_density_lift_direct(a, r, s, x) == lifted
    if not args.json:
        print("members: " + ", ".join(io.element_label(e) for e in lifted.members()))
        if args.direct:
            print(f"direct enumeration agrees: {str(result['direct_agrees']).lower()}")
    _emit(args, result)
    return EXIT_OK


def _split(text: str) -> list:
    return [t.strip() for t in text.split(",") if t.strip()] if text else []


def cmd_stream_member(args) -> int:
    param = io.decode_stream_param(io.load(args.param, "stream_param"))
    x, _ = io.decode_pred(io.load(args.instance, "pred"))
    table = {str(e): e for e in x.ambient}
    cycle = _split(args.cycle)
    if not cycle:
        raise io.SchemaError("a stream needs a nonempty cycle")
    lasso = io.decode_lasso({"prefix": _split(args.prefix), "cycle": cycle}, table)
    witness = stream_density_witness(param, x, lasso)
    result = {"stream": lasso, "member": witness is not None, "witness_v": witness}
    if not args.json:
        print(f"{lasso!r}: {'member' if witness is not None else 'not a member'}")
        if witness is not None:
            print(f"witness v = {witness!r}")
    _emit(args, result)
    return EXIT_OK if witness is not None else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="kanlift", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True)

    def common(sp):
        sp.add_argument("--json", action="store_true", help="print the JSON result")
        sp.add_argument("--out", help="write the JSON result to this file")

    sp = sub.add_parser("lift", help="codensity lifting of a preorder or topology")
    sp.add_argument("instance")
    sp.add_argument("--monad", choices=sorted(MONADS), default="powerset")
    group = sp.add_mutually_exclusive_group()
    group.add_argument("--param", choices=[k.value for k in E.Kind], default="lower-pre")
    group.add_argument("--param-file", help="instance file for an inline parameter above T R")
    sp.add_argument("--check-closed-form", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_lift)

    sp = sub.add_parser("check", help="simulation / bisimulation check for LMPs")
    sp.add_argument("kind", choices=["sim1", "sim2", "bisim"])
    sp.add_argument("lmp", nargs="+")
    sp.add_argument("--relation", required=True)
    sp.add_argument("--exhaustive", action="store_true",
                    help="sim2: test every measurable W, not just the least one")
    common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("kantorovich", help="exact Kantorovich distance")
    sp.add_argument("metric")
    sp.add_argument("mu", help='measure as "x=p/q,y=p/q"')
    sp.add_argument("nu")
    sp.add_argument("--certificate", action="store_true")
    sp.add_argument("--oracle", action="store_true")
    common(sp)
    sp.set_defaults(func=cmd_kantorovich)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("suite", choices=list(SUITES) + ["mutants"])
    common(sp)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("density-lift", help="density lifting for the product comonad")
    sp.add_argument("instance", help="pred instance X")
    sp.add_argument("--param", required=True, help="pred instance over R x A")
    sp.add_argument("--direct", action="store_true", help="cross-check by enumeration")
    common(sp)
    sp.set_defaults(func=cmd_density_lift)

    sp = sub.add_parser("stream-member", help="membership in the stream density lifting")
    sp.add_argument("instance", help="pred instance X")
    sp.add_argument("--param", required=True, help="stream_param instance")
    sp.add_argument("--prefix", default="", help="comma-separated prefix")
    sp.add_argument("--cycle", required=True, help="comma-separated cycle")
    common(sp)
    sp.set_defaults(func=cmd_stream_member)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except MISMATCH as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    except (io.SchemaError, InvalidStructure) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (KanliftError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
