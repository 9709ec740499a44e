"""JSON encodings: arrangements, polynomials, and certificates.

Arrangement schema: ``{"field": "Q" | {"Fp": p}, "dim": n,
"hyperplanes": [[...], ...]}`` with rational entries as ints or "a/b"
strings and prime-field entries as residues.  Polynomials are integer
coefficient arrays, lowest degree first.
"""

from __future__ import annotations

import json

from . import intpoly
from .arrangement import Arrangement, flat_from_members, make_arrangement
from .exactalg import field_from_json, field_to_json, scalar_to_json
from .freeness import DivisionalFlag, IFCertificate, IFStep


class SchemaError(ValueError):
    """Input JSON does not match the expected schema."""


def arrangement_to_json(arr: Arrangement) -> dict:
    return {
        "field": field_to_json(arr.field),
        "dim": arr.dim,
        "hyperplanes": [
            [scalar_to_json(arr.field, x) for x in cov] for cov in arr.hyperplanes
        ],
    }


def arrangement_from_json(data) -> Arrangement:
    if not isinstance(data, dict):
        raise SchemaError("arrangement JSON must be an object")
    for key in ("field", "dim", "hyperplanes"):
        if key not in data:
            raise SchemaError(f"missing field {key!r} in arrangement JSON")
    try:
        field = field_from_json(data["field"])
    except ValueError as exc:
        raise SchemaError(f"bad 'field' entry: {exc}") from None
    dim = data["dim"]
    if not isinstance(dim, int):
        raise SchemaError("'dim' must be an integer")
    hyperplanes = data["hyperplanes"]
    if not isinstance(hyperplanes, list):
        raise SchemaError("'hyperplanes' must be a list of covectors")
    try:
        return make_arrangement(field, dim, hyperplanes)
    except ValueError as exc:
        raise SchemaError(f"bad 'hyperplanes' entry: {exc}") from None


def load_arrangement(path: str) -> Arrangement:
    with open(path) as fh:
        return arrangement_from_json(json.load(fh))


def save_json(path: str, data) -> None:
    with open(path, "w") as fh:
        json.dump(data, fh, indent=2, sort_keys=True)
        fh.write("\n")


def poly_to_json(f: intpoly.IntPoly) -> list[int]:
    return list(f)


def poly_from_json(data) -> intpoly.IntPoly:
    if not isinstance(data, list) or not all(isinstance(c, int) for c in data):
        raise SchemaError("polynomial must be a list of integer coefficients")
    return intpoly.poly(data)


def flag_to_json(flag: DivisionalFlag) -> dict:
    return {
        "kind": "divisional-flag",
        "levels": [
            {"members": list(flat.members), "charpoly": poly_to_json(chi)}
            for flat, chi in zip(flag.flats, flag.charpolys)
        ],
        "exponents": list(flag.exponents) if flag.exponents is not None else None,
    }


def flag_from_json(arr: Arrangement, data) -> DivisionalFlag:
    if not isinstance(data, dict) or data.get("kind") != "divisional-flag":
        raise SchemaError("expected a divisional-flag certificate")
    levels = data.get("levels")
    if not isinstance(levels, list) or not levels:
        raise SchemaError("certificate needs a nonempty 'levels' list")
    flats = []
    charpolys = []
    for entry in levels:
        members = entry.get("members")
        if not isinstance(members, list):
            raise SchemaError("each level needs a 'members' list")
        flats.append(flat_from_members(arr, members))
        charpolys.append(poly_from_json(entry.get("charpoly")))
    exponents = data.get("exponents")
    return DivisionalFlag(
        tuple(flats),
        tuple(charpolys),
        tuple(exponents) if exponents is not None else None,
    )


def if_certificate_to_json(cert: IFCertificate) -> dict:
    return {
        "kind": "inductive-freeness",
        "field": field_to_json(cert.field),
        "dim": cert.dim,
        "steps": [
            {
                "covector": [scalar_to_json(cert.field, x) for x in step.covector],
                "restriction_charpoly": poly_to_json(step.restriction_chi),
            }
            for step in cert.steps
        ],
    }


def if_certificate_from_json(data) -> IFCertificate:
    if not isinstance(data, dict) or data.get("kind") != "inductive-freeness":
        raise SchemaError("expected an inductive-freeness certificate")
    field = field_from_json(data.get("field"))
    dim = data.get("dim")
    if not isinstance(dim, int):
        raise SchemaError("'dim' must be an integer")
    steps = []
    for entry in data.get("steps", ()):
        cov = tuple(field.coerce(x) for x in entry["covector"])
        steps.append(IFStep(cov, poly_from_json(entry["restriction_charpoly"])))
    return IFCertificate(field, dim, tuple(steps))


def verify_certificate(arr: Arrangement, data) -> bool:
    """Re-verify an emitted certificate against the arrangement alone."""
    kind = data.get("kind") if isinstance(data, dict) else None
    if kind == "divisional-flag":
        flag = flag_from_json(arr, data)
        return flag.verify(arr)
    if kind == "inductive-freeness":
        cert = if_certificate_from_json(data)
        return cert.verify(arr)
    raise SchemaError(f"unknown certificate kind {kind!r}")
