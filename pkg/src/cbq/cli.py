"""Command-line front end: every computation as a subcommand.

Output is the deterministic JSON record schema of `records` (sorted keys,
exact "p/q" rationals); identical invocations produce byte-identical output.
Exit codes: 0 success, 2 invalid input, 1 internal error.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import records
from .birational_compare import compare_loci, pairwise_inequivalence, quotient_locus
from .cyclofield import CycloNum, FieldSpec, root_of_unity, sqrt_in_field
from .errors import CbqInputError, CbqError
from .example_factory import (
    ExampleSpec,
    build_example,
    build_stabilized_example,
    generate_family,
    verify_example,
)
from .hj_chains import FibreChain, contract_chain, hj_eval, hj_expand
from .proj_group import (
    Pgl2Elem,
    P1Point,
    fixed_points,
    fixed_points_defined_over,
    generate_group,
    group_fixed_points,
    minimal_field_for,
    special_orbit_table,
    standard_group,
)
from .quotient_engine import check_theorem_cbundle, quotient_count, table1_bound

FIELD_NAMES = ("Q", "Qi", "Qisqrt2", "Qsqrt5", "Qzeta5", "Qzeta12")


def named_field(name: str, conductor: int | None = None) -> FieldSpec:
    """The preset base fields usable from the command line."""
    presets = {
        "Q": (1, lambda n: []),
        "Qi": (4, lambda n: [root_of_unity(n, 4)]),
        "Qisqrt2": (8, lambda n: [root_of_unity(n, 8) + root_of_unity(n, 8) ** 3]),
        "Qsqrt5": (5, lambda n: [sqrt_in_field(CycloNum.rational(5, n))]),
        "Qzeta5": (5, lambda n: [root_of_unity(n, 5)]),
        "Qzeta12": (12, lambda n: [root_of_unity(n, 12)]),
    }
    if name not in presets:
        raise CbqInputError(f"unknown field {name!r}; choose from {FIELD_NAMES}")
    base_n, gens = presets[name]
    n = conductor or base_n
    if n % base_n != 0:
        raise CbqInputError(f"conductor {n} cannot host {name}")
    return FieldSpec(n, gens(n), label=name)


def _emit(record, path=None):
    text = records.dump(record)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _fractions(text: str) -> tuple[Fraction, ...]:
    return tuple(records.fraction_from_str(p) for p in text.split(","))


def _group_for(args):
    field = None
    if args.field:
        field = named_field(args.field, conductor=args.conductor)
        n = field.conductor
        need = minimal_field_for(args.kind, args.param, variant=args.variant).conductor
        import math
        n = math.lcm(n, need)
        field = named_field(args.field, conductor=n)
    return standard_group(args.kind, args.param, field=field, variant=args.variant)


# ---------------------------------------------------------------- group

def cmd_group(args) -> dict:
    group = _group_for(args)
    kind, param = group.kind
    base = {"kind": kind, "param": param, "order": len(group),
            "conductor": group.conductor}
    if args.action == "info":
        stats = group.order_statistics()
        base["element_orders"] = {str(k): v for k, v in sorted(stats.items())}
        return base
    if args.action == "orbits":
        base["special_orbit_lengths"] = list(special_orbit_table(group))
        return base
    if args.action == "fixed-points":
        pairs = []
        seen = set()
        fp = group_fixed_points(group)
        for g in group:
            if g.is_identity():
                continue
            pair = fp[g]
            key = tuple(p.sort_key() for p in pair)
            if key in seen:
                continue
            seen.add(key)
            pairs.append({
                "element_order": group.element_order(g),
                "points": [records.point_to_record(p) for p in pair],
            })
        pairs.sort(key=lambda r: (r["element_order"],
                                  str(r["points"])))
        base["fixed_pairs"] = pairs
        return base
    if args.action == "definability":
        field_name = args.over or args.field or "Q"
        import math
        field = named_field(field_name)
        n = math.lcm(field.conductor, group.conductor)
        field = named_field(field_name, conductor=n)
        rows = []
        seen_orders = set()
        for g in group:
            m = group.element_order(g)
            if m <= 2 or m in seen_orders:
                continue
            gg = g.embed(n)
            if not gg.defined_over(field):
                continue
            seen_orders.add(m)
            rows.append({
                "element_order": m,
                "fixed_points_defined": fixed_points_defined_over(gg, field, order=m),
                "zeta_in_field": field.contains_root_of_unity(m),
            })
        rows.sort(key=lambda r: r["element_order"])
        base["field"] = field_name
        base["definability"] = rows
        return base
    raise CbqInputError(f"unknown group action {args.action!r}")


# ---------------------------------------------------------------- chain

def cmd_chain(args) -> dict:
    if args.action == "expand":
        frac = hj_expand(args.k, args.a)
        return {"k": frac.k, "a": frac.a, "digits": list(frac.digits),
                "value": records.fraction_to_str(hj_eval(frac))}
    if args.action == "contract":
        chain = FibreChain.parse(args.chain)
        fate = contract_chain(chain)
        return {"chain": str(chain), "fate": fate.fate,
                "trace": [list(step) for step in fate.trace]}
    raise CbqInputError(f"unknown chain action {args.action!r}")


# ---------------------------------------------------------------- quotient

def cmd_quotient(args) -> dict:
    if args.action == "count":
        with open(args.model) as fh:
            model = records.model_from_record(records.load(fh.read()))
        report = quotient_count(model)
        return {
            "n": report.n,
            "m": report.m,
            "m_bound": report.m_bound,
            "k_y_squared": report.k_y_squared,
            "rationality": report.rationality,
            "fates": [{"orbit": records.orbit_to_record(o), "fate": fate}
                      for o, fate, _ in report.fate_per_orbit],
            "table": report.table,
        }
    if args.action == "table1":
        n, m = table1_bound(args.kind, args.param,
                            a=args.a, b=args.b, c=args.c, d=args.d)
        return {"kind": args.kind, "param": args.param,
                "letters": {"a": args.a, "b": args.b, "c": args.c, "d": args.d},
                "n": n, "m": m}
    if args.action == "scan-theorem":
        report = check_theorem_cbundle(k_max=args.kmax, n_max=args.nmax,
                                       jobs=args.jobs)
        return {
            "instances": report.instances,
            "violations": [list(v) for v in report.violations],
            "equality_cases": [
                {"kind": k, "param": p, "letters": letters, "n": n, "m": m}
                for k, p, letters, n, m in report.equality_cases],
            "ok": report.ok,
        }
    raise CbqInputError(f"unknown quotient action {args.action!r}")


# ---------------------------------------------------------------- example

def _example_spec(args) -> ExampleSpec:
    field = named_field(args.field)
    n = field.conductor
    u = CycloNum.rational(records.fraction_from_str(args.u), n)
    l = args.l
    zl = root_of_unity(n, l)
    g = Pgl2Elem.diag(zl, CycloNum.rational(1, n))
    group = generate_group([g])
    mus = _fractions(args.mu)
    b = CycloNum.rational(records.fraction_from_str(args.b), n) if args.b \
        else u
    c = CycloNum.rational(records.fraction_from_str(args.c), n) if args.c \
        else CycloNum.rational(-1, n)
    q1, q0 = _fractions(args.q)
    return ExampleSpec(base_field=field, group=group, g=g, l=l, u=u, mus=mus,
                       b_coeff=b, c_coeff=c, q=P1Point.of(q1, q0, n))


def _report_record(report) -> dict:
    return {
        "x_rational": report.x_rational,
        "x_rational_reason": report.x_rational_reason,
        "n": report.n,
        "singular_images": report.singular_images,
        "k_y_squared": report.k_y_squared,
        "verdict": report.verdict,
        "family_dimension": report.family_dimension,
        "orbit_fates": [{"orbit": records.orbit_to_record(o), "fate": f}
                        for o, f in report.orbit_fates],
        "quotient_m": report.quotient.m,
        "quotient_m_bound": report.quotient.m_bound,
        "quotient_rationality": report.quotient.rationality,
    }


def cmd_example(args) -> dict:
    if args.action == "build":
        model = build_example(_example_spec(args))
        return records.model_to_record(model)
    if args.action == "verify":
        if args.model:
            with open(args.model) as fh:
                model = records.model_from_record(records.load(fh.read()))
        else:
            model = build_example(_example_spec(args))
        return _report_record(verify_example(model))
    if args.action == "family":
        spec = _example_spec(args)
        models = generate_family(spec, args.count)
        return {"members": [records.model_to_record(m) for m in models]}
    if args.action == "stabilized":
        case_data = {
            3: ("D", 3, named_field("Q", 12), "i", None),
            4: ("S4", None, named_field("Qisqrt2", 24), "isqrt2", None),
            5: ("A5", None, minimal_field_for("A5"), "i", 5),
            6: ("A5", None, minimal_field_for("A5"), "i", 3),
        }
        if args.case not in case_data:
            raise CbqInputError("case must be 3, 4, 5 or 6")
        kind, param, field, variant, h_order = case_data[args.case]
        model = build_stabilized_example(kind, param, field,
                                         h_order=h_order, variant=variant)
        rec = records.model_to_record(model)
        rec["case"] = args.case
        rec["report"] = _report_record(verify_example(model))
        return rec
    raise CbqInputError(f"unknown example action {args.action!r}")


# ---------------------------------------------------------------- compare

def cmd_compare(args) -> dict:
    models = []
    for path in args.models:
        with open(path) as fh:
            models.append(records.model_from_record(records.load(fh.read())))
    if args.action == "pair":
        if len(models) != 2:
            raise CbqInputError("compare pair needs exactly two model files")
        verdict = compare_loci(quotient_locus(models[0]), quotient_locus(models[1]))
        rec = {"verdict": verdict.verdict, "note": verdict.note}
        if verdict.witness is not None:
            rec["witness"] = [[records.fraction_to_str(c) for c in
                               (v.as_rational() for v in row)]
                              if all(v.is_rational() for v in row) else
                              [records.cyclo_to_record(v) for v in row]
                              for row in verdict.witness.m]
        return rec
    if args.action == "family":
        matrix = pairwise_inequivalence(models)
        return {"size": len(models),
                "verdicts": [[cell.verdict if cell else None for cell in row]
                             for row in matrix]}
    raise CbqInputError(f"unknown compare action {args.action!r}")


# ---------------------------------------------------------------- reproduce

def cmd_reproduce(args) -> int:
    from .acceptance import run_all
    ok = run_all(out=lambda line: print(line))
    return 0 if ok else 1


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cbq",
        description="Finite group actions on the projective line and "
                    "singular-fibre bookkeeping for conic-bundle quotients.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_group = sub.add_parser("group", help="group information and orbits")
    p_group.add_argument("action",
                         choices=["info", "orbits", "fixed-points", "definability"])
    p_group.add_argument("--kind", required=True,
                         choices=["C", "D", "A4", "S4", "A5"])
    p_group.add_argument("--param", type=int, default=None,
                         help="k for C_k; k for D_2k")
    p_group.add_argument("--field", default=None, choices=FIELD_NAMES)
    p_group.add_argument("--over", default=None, choices=FIELD_NAMES,
                         help="field for the definability question")
    p_group.add_argument("--conductor", type=int, default=None)
    p_group.add_argument("--variant", default="i", choices=["i", "isqrt2"])
    p_group.set_defaults(fn=cmd_group)

    p_chain = sub.add_parser("chain", help="continued fractions and contraction")
    p_chain.add_argument("action", choices=["expand", "contract"])
    p_chain.add_argument("--k", type=int)
    p_chain.add_argument("--a", type=int)
    p_chain.add_argument("--chain", help='e.g. "-3,-1,-3,-1,-3;swap"')
    p_chain.set_defaults(fn=cmd_chain)

    p_quot = sub.add_parser("quotient", help="fibre counts and the scan")
    p_quot.add_argument("action", choices=["count", "table1", "scan-theorem"])
    p_quot.add_argument("--model", help="model record file")
    p_quot.add_argument("--kind", choices=["C", "D", "A4", "S4", "A5"])
    p_quot.add_argument("--param", type=int, default=None)
    p_quot.add_argument("--a", type=int, default=0)
    p_quot.add_argument("--b", type=int, default=0)
    p_quot.add_argument("--c", type=int, default=0)
    p_quot.add_argument("--d", type=int, default=0)
    p_quot.add_argument("--kmax", type=int, default=10)
    p_quot.add_argument("--nmax", type=int, default=12)
    p_quot.add_argument("--jobs", type=int, default=1)
    p_quot.set_defaults(fn=cmd_quotient)

    p_ex = sub.add_parser("example", help="explicit bundle constructions")
    p_ex.add_argument("action", choices=["build", "verify", "family", "stabilized"])
    p_ex.add_argument("--field", default="Q", choices=FIELD_NAMES)
    p_ex.add_argument("--u", default="2")
    p_ex.add_argument("--l", type=int, default=2)
    p_ex.add_argument("--mu", default="1,2,3,4", help="comma list of rationals")
    p_ex.add_argument("--b", default=None)
    p_ex.add_argument("--c", default=None)
    p_ex.add_argument("--q", default="1,1", help="k-point t1,t0")
    p_ex.add_argument("--count", type=int, default=6)
    p_ex.add_argument("--case", type=int, default=3)
    p_ex.add_argument("--model", help="model record file (verify)")
    p_ex.set_defaults(fn=cmd_example)

    p_cmp = sub.add_parser("compare", help="loci equivalence verdicts")
    p_cmp.add_argument("action", choices=["pair", "family"])
    p_cmp.add_argument("--models", nargs="+", required=True)
    p_cmp.set_defaults(fn=cmd_compare)

    p_rep = sub.add_parser("reproduce", help="run the acceptance checks")
    p_rep.add_argument("action", choices=["all"])
    p_rep.set_defaults(fn=None)

    parser.add_argument("--out", default=None, help="write the record to a file")
    return parser


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    argv = list(argv)
    # let chain values start with a dash: --chain -3,-1,... -> --chain=-3,-1,...
    for i, tok in enumerate(argv[:-1]):
        if tok == "--chain" and argv[i + 1].startswith("-"):
            argv[i:i + 2] = [f"--chain={argv[i + 1]}"]
            break
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "reproduce":
            return cmd_reproduce(args)
        record = args.fn(args)
        _emit(record, args.out)
        return 0
    except CbqInputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CbqError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
