"""Structured text records: the stable JSON schema of the CLI.

All rationals are exact "p/q" strings (or "p" for integers); field elements
are {"conductor": N, "coeffs": [...]}; records round-trip through
`model_to_record` / `model_from_record`.  Serialization is deterministic:
keys sorted, lists in canonical order, no environment-dependent content.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .cyclofield import CycloNum, FieldSpec
from .errors import CbqInputError
from .example_factory import EquationPayload
from .proj_group import P1Point
from .quotient_engine import OrbitDatum, SurfaceModel


def fraction_to_str(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def fraction_from_str(text: str) -> Fraction:
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return Fraction(int(num), int(den))
    return Fraction(int(text))


def cyclo_to_record(x: CycloNum) -> dict:
    return {"conductor": x.conductor,
            "coeffs": [fraction_to_str(c) for c in x.coeffs]}


def cyclo_from_record(rec: dict) -> CycloNum:
    return CycloNum(rec["conductor"], [fraction_from_str(c) for c in rec["coeffs"]])


def field_to_record(field: FieldSpec) -> dict:
    return {"conductor": field.conductor,
            "generators": [[fraction_to_str(c) for c in g.coeffs]
                           for g in field.generators],
            "label": field.label}


def field_from_record(rec: dict) -> FieldSpec:
    n = rec["conductor"]
    gens = [CycloNum(n, [fraction_from_str(c) for c in coeffs])
            for coeffs in rec["generators"]]
    return FieldSpec(n, gens, label=rec.get("label", ""))


def point_to_record(p: P1Point) -> dict:
    return {"t1": cyclo_to_record(p.t1), "t0": cyclo_to_record(p.t0)}


def point_from_record(rec: dict) -> P1Point:
    return P1Point(cyclo_from_record(rec["t1"]), cyclo_from_record(rec["t0"]))


def orbit_to_record(o: OrbitDatum) -> dict:
    return {
        "length": o.orbit_length,
        "stabilizer": o.stabilizer_order,
        "kind": o.fibre_kind,
        "weight": o.weight,
        "swap": o.swap,
        "mechanism": o.mechanism,
    }


def orbit_from_record(rec: dict) -> OrbitDatum:
    return OrbitDatum(
        orbit_length=rec["length"], stabilizer_order=rec["stabilizer"],
        fibre_kind=rec["kind"], weight=rec.get("weight"),
        swap=rec.get("swap"), mechanism=rec.get("mechanism"))


def equation_to_record(eq: EquationPayload) -> dict:
    return {
        "a": cyclo_to_record(eq.a_coeff),
        "b": cyclo_to_record(eq.b_coeff),
        "c": cyclo_to_record(eq.c_coeff),
        "x_form": [cyclo_to_record(c) for c in eq.x_form],
        "yz_form": [cyclo_to_record(c) for c in eq.yz_form],
        "u": cyclo_to_record(eq.u),
        "l": eq.l,
        "mus": [cyclo_to_record(m) for m in eq.mus],
        "q": point_to_record(eq.q),
        "text": eq.render(),
    }


def equation_from_record(rec: dict) -> EquationPayload:
    return EquationPayload(
        a_coeff=cyclo_from_record(rec["a"]),
        b_coeff=cyclo_from_record(rec["b"]),
        c_coeff=cyclo_from_record(rec["c"]),
        x_form=tuple(cyclo_from_record(c) for c in rec["x_form"]),
        yz_form=tuple(cyclo_from_record(c) for c in rec["yz_form"]),
        u=cyclo_from_record(rec["u"]),
        l=rec["l"],
        mus=tuple(cyclo_from_record(m) for m in rec["mus"]),
        q=point_from_record(rec["q"]))


def model_to_record(model: SurfaceModel) -> dict:
    if model.kind is None:
        raise CbqInputError("cannot serialize a model without a group kind")
    rec = {
        "group": {"kind": model.kind[0], "param": model.kind[1]},
        "group_order": model.group_order,
        "has_k_point": model.has_k_point,
        "orbits": [orbit_to_record(o) for o in model.orbits],
        "n": model.n,
    }
    if model.base_field is not None:
        rec["field"] = field_to_record(model.base_field)
    if model.equation is not None:
        rec["equation"] = equation_to_record(model.equation)
    return rec


def model_from_record(rec: dict) -> SurfaceModel:
    field = field_from_record(rec["field"]) if "field" in rec else None
    equation = equation_from_record(rec["equation"]) if "equation" in rec else None
    model = SurfaceModel(
        group_order=rec["group_order"],
        kind=(rec["group"]["kind"], rec["group"]["param"]),
        base_field=field,
        orbits=[orbit_from_record(o) for o in rec["orbits"]],
        has_k_point=rec.get("has_k_point"),
        equation=equation)
    if "n" in rec and model.n != rec["n"]:
        raise CbqInputError(
            f"record claims n = {rec['n']} but orbits give n = {model.n}")
    return model


def dump(record: dict) -> str:
    return json.dumps(record, sort_keys=True, indent=2) + "\n"


def load(text: str) -> dict:
    return json.loads(text)
