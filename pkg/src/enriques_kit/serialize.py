"""JSON encodings for lattices, involutions, quadric actions, branch polynomials
and certificates. Integers wider than 53 bits are written as decimal strings;
rationals are ``"p/q"`` strings.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Any

from .algebra import NumberField, NFElement, gauss
from .involution import ExtendedInvolution, make_involution
from .lattice import Isometry, Lattice, enriques_lattice
from .model.germs import SingularityType
from .model.polynomial import BranchPolynomial, validate
from .model.singular import SingularityReport, SingularPoint
from .model.space import M0Certificate, M0Failure, PathCertificate
from .model.torus import Box, BudgetExhausted, HasZero, TorusCertificate, WitnessPoint, torus_restriction
from .quadric import ActionReport, P1Involution, QuadricAction, Sigma2Action

_SAFE = 2**53


class FormatError(ValueError):
    pass


def enc_int(v: int):
    v = int(v)
    return str(v) if abs(v) >= _SAFE else v


def dec_int(v) -> int:
    if isinstance(v, bool):
        raise FormatError("booleans are not integers")
    if isinstance(v, int):
        return v
    if isinstance(v, str):
        try:
            return int(v.strip())
        except ValueError:
            pass
    raise FormatError(f"expected an integer, got {v!r}")


def enc_rat(v) -> str:
    f = Fraction(int(v.numerator), int(v.denominator))
    return str(f)


def dec_rat(v) -> Fraction:
    if isinstance(v, float):
        raise FormatError("floats are not exact; use 'p/q' strings")
    try:
        return Fraction(v) if not isinstance(v, str) else Fraction(v.strip())
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {v!r}") from exc


def enc_gauss(v) -> list[str]:
    return [enc_rat(v.x), enc_rat(v.y)]


def dec_gauss(v):
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return gauss(dec_rat(v[0]), dec_rat(v[1]))
    return gauss(dec_rat(v), 0)


def _matrix(rows) -> list[list]:
    return [[enc_int(v) for v in row] for row in rows]


def _dec_matrix(rows) -> list[list[int]]:
    if not isinstance(rows, list):
        raise FormatError("matrix must be a list of rows")
    return [[dec_int(v) for v in row] for row in rows]


# --------------------------------------------------------------------------
# lattices


def lattice_to_json(lat: Lattice) -> dict:
    out: dict[str, Any] = {"rank": lat.rank, "gram": _matrix(lat.gram)}
    if lat.labels is not None:
        out["labels"] = list(lat.labels)
    return out


def lattice_from_json(doc: dict) -> Lattice:
    try:
        gram = _dec_matrix(doc["gram"])
    except KeyError as exc:
        raise FormatError("lattice document needs 'gram'") from exc
    if "rank" in doc and dec_int(doc["rank"]) != len(gram):
        raise FormatError("'rank' does not match the Gram matrix")
    return Lattice(gram, doc.get("labels"))


def vector_to_json(v) -> dict:
    return {"coords": [enc_int(x) for x in v]}


def vector_from_json(doc) -> tuple[int, ...]:
    coords = doc["coords"] if isinstance(doc, dict) else doc
    return tuple(dec_int(x) for x in coords)


def isometry_to_json(iso: Isometry) -> dict:
    return {"matrix": _matrix(iso.matrix)}


def isometry_from_json(doc: dict) -> Isometry:
    return Isometry(_dec_matrix(doc["matrix"]))


# --------------------------------------------------------------------------
# involutions


def involution_to_json(inv: ExtendedInvolution) -> dict:
    return {"m": _matrix(inv.m), "eps": list(inv.eps)}


def involution_from_json(doc: dict) -> ExtendedInvolution:
    lat = lattice_from_json(doc["lattice"]) if "lattice" in doc else enriques_lattice()
    try:
        return make_involution(_dec_matrix(doc["m"]), [dec_int(e) for e in doc["eps"]], lat)
    except KeyError as exc:
        raise FormatError(f"involution document needs {exc}") from exc


# --------------------------------------------------------------------------
# quadric actions


def _p1_to_json(f: P1Involution) -> dict:
    return {"matrix": [enc_gauss(v) for row in f.matrix for v in row], "anti": f.antiholomorphic}


def _mat2_from_json(entries):
    if len(entries) != 4:
        raise FormatError("a 2x2 matrix is four [re, im] entries, row-major")
    e = [dec_gauss(v) for v in entries]
    return ((e[0], e[1]), (e[2], e[3]))


def _p1_from_json(doc: dict) -> P1Involution:
    return P1Involution(_mat2_from_json(doc["matrix"]), bool(doc.get("anti", True)))


def action_to_json(a: QuadricAction) -> dict:
    if a.decomposable:
        return {"kind": "decomposable", "f1": _p1_to_json(a.f1), "f2": _p1_to_json(a.f2)}
    return {
        "kind": "indecomposable",
        "a": {"matrix": [enc_gauss(v) for row in a.a for v in row]},
        "b": {"matrix": [enc_gauss(v) for row in a.b for v in row]},
    }


def action_from_json(doc: dict):
    if doc.get("surface") == "Sigma2":
        return Sigma2Action(action_from_json(doc["reduced"]), dec_int(doc["marked_ruling"]), str(doc["marked_point"]))
    kind = doc.get("kind")
    if kind == "decomposable":
        return QuadricAction.product(_p1_from_json(doc["f1"]), _p1_from_json(doc["f2"]))
    if kind == "indecomposable":
        return QuadricAction.swapping(_mat2_from_json(doc["a"]["matrix"]), _mat2_from_json(doc["b"]["matrix"]))
    raise FormatError(f"unknown action kind {kind!r}")


def sigma2_to_json(a: Sigma2Action) -> dict:
    return {
        "surface": "Sigma2",
        "reduced": action_to_json(a.reduced),
        "marked_ruling": a.marked_ruling,
        "marked_point": a.marked_point,
    }


def report_to_json(r: ActionReport) -> dict:
    return {
        "surface": r.surface,
        "type_id": r.type_id,
        "half_topology": [h.value for h in r.halves],
        "invariant_fibers": list(r.fibers),
        "h2_matrix": [list(row) for row in r.h2],
        "decomposable": r.decomposable,
        "s_real_fixed_points": r.s_real_fixed,
    }


# --------------------------------------------------------------------------
# polynomials and certificates


def polynomial_to_json(p: BranchPolynomial) -> dict:
    return {"coeffs": [{"i": i, "j": j, "re": enc_rat(v.x), "im": enc_rat(v.y)} for (i, j), v in p.items()]}


def polynomial_from_json(doc: dict) -> BranchPolynomial:
    try:
        items = [((dec_int(c["i"]), dec_int(c["j"])), (dec_rat(c.get("re", 0)), dec_rat(c.get("im", 0)))) for c in doc["coeffs"]]
    except (KeyError, TypeError) as exc:
        raise FormatError("polynomial document needs 'coeffs' entries with i, j, re, im") from exc
    return validate(items)


def _box_to_json(box: Box, bound: Fraction) -> dict:
    t0, t1 = box.t_interval()
    u0, u1 = box.u_interval()
    return {
        "chart": box.chart,
        "depth": box.depth,
        "it": box.it,
        "iu": box.iu,
        "t": [str(t0), str(t1)],
        "u": [str(u0), str(u1)],
        "bound": str(bound),
    }


def torus_certificate_to_json(c: TorusCertificate) -> dict:
    charts = {
        str(eps): {"denominator": enc_int(ch.denominator), "coeffs": _matrix(ch.coeffs)} for eps, ch in c.charts.items()
    }
    return {
        "sign": c.sign,
        "depth": c.depth,
        "parametrization": "theta = 2 atan(t) (+pi on chart -1), phi = 2 atan(u)",
        "charts": charts,
        "boxes": [_box_to_json(b, v) for b, v in c.boxes],
    }


def torus_certificate_from_json(doc: dict, p: BranchPolynomial) -> TorusCertificate:
    boxes = tuple(
        (Box(dec_int(b["chart"]), dec_int(b["depth"]), dec_int(b["it"]), dec_int(b["iu"])), dec_rat(b["bound"]))
        for b in doc["boxes"]
    )
    return TorusCertificate(dec_int(doc["sign"]), boxes, dec_int(doc["depth"]), torus_restriction(p).charts)


def _witness_to_json(w: WitnessPoint) -> dict:
    th, ph = w.angles()
    return {"chart": w.chart, "t": str(w.t), "u": str(w.u), "value": str(w.value), "theta": th, "phi": ph}


def sign_outcome_to_json(r) -> dict:
    if isinstance(r, TorusCertificate):
        return {"outcome": "Positive" if r.sign > 0 else "Negative", "certificate": torus_certificate_to_json(r)}
    if isinstance(r, HasZero):
        return {"outcome": "HasZero", "kind": r.kind, "witness": [_witness_to_json(w) for w in r.points]}
    if isinstance(r, BudgetExhausted):
        return {"outcome": "BudgetExhausted", "budget": r.budget, "open_boxes": r.open_boxes}
    raise TypeError(type(r))


def _field_elem(v) -> list:
    if isinstance(v, NFElement):
        return [enc_gauss(c) for c in v.coeffs] or [["0", "0"]]
    return [enc_gauss(v)]


def point_to_json(pt: SingularPoint) -> dict:
    return {
        "chart": pt.chart,
        "field": None if pt.field is None else [enc_gauss(c) for c in pt.field.modulus],
        "x": _field_elem(pt.x),
        "y": _field_elem(pt.y),
        "multiplicity": pt.multiplicity,
        "numeric": [[[z.real, z.imag] for z in xy] for xy in pt.numeric()],
    }


def point_from_json(doc: dict) -> SingularPoint:
    if doc["field"] is None:
        return SingularPoint(dec_int(doc["chart"]), None, dec_gauss(doc["x"][0]), dec_gauss(doc["y"][0]))
    K = NumberField([dec_gauss(c) for c in doc["field"]])
    x = K([dec_gauss(c) for c in doc["x"]])
    y = K([dec_gauss(c) for c in doc["y"]])
    return SingularPoint(dec_int(doc["chart"]), K, x, y)


def singularities_to_json(s: SingularityReport) -> dict:
    return {
        "smooth": s.smooth,
        "non_reduced": s.non_reduced,
        "points": [point_to_json(p) for p in s.points],
        "types": [str(t) for t in s.types],
    }


def m0_to_json(c) -> dict:
    if isinstance(c, M0Failure):
        detail = c.detail
        if isinstance(detail, (HasZero, BudgetExhausted)):
            detail = sign_outcome_to_json(detail)
        elif isinstance(detail, SingularityReport):
            detail = singularities_to_json(detail)
        return {"valid": False, "clause": c.clause, "inconclusive": c.inconclusive, "detail": detail}
    return {
        "valid": c.valid,
        "torus": torus_certificate_to_json(c.torus),
        "corners_nonzero": c.corners_nonzero,
        "singularities": singularities_to_json(c.singularities),
    }


def m0_from_json(doc: dict, p: BranchPolynomial) -> M0Certificate:
    sing = doc["singularities"]
    report = SingularityReport(
        tuple(point_from_json(pt) for pt in sing["points"]),
        tuple(_type_from(t) for t in sing["types"]),
        bool(sing.get("non_reduced", False)),
    )
    return M0Certificate(torus_certificate_from_json(doc["torus"], p), bool(doc["corners_nonzero"]), report)


def _type_from(label: str) -> SingularityType:
    from .model.germs import parse_type

    return parse_type(label)


def path_to_json(path: PathCertificate) -> dict:
    return {
        "valid": path.valid,
        "repaired": path.repaired_count,
        "samples": [
            {
                "t": str(pt.t),
                "repairs": pt.repairs,
                "polynomial": polynomial_to_json(pt.polynomial),
                "certificate": m0_to_json(pt.certificate),
            }
            for pt in path.points
        ],
    }


def discriminant_form_to_json(form) -> dict:
    return {
        "invariant_factors": list(form.invariant_factors),
        "even": form.is_even,
        "q": [{"element": list(g), "value": enc_rat(form.q_values[g])} for g in form.elements()],
    }


__all__ = [
    "FormatError",
    "action_from_json",
    "action_to_json",
    "discriminant_form_to_json",
    "involution_from_json",
    "involution_to_json",
    "isometry_from_json",
    "isometry_to_json",
    "lattice_from_json",
    "lattice_to_json",
    "m0_from_json",
    "m0_to_json",
    "path_to_json",
    "point_from_json",
    "point_to_json",
    "polynomial_from_json",
    "polynomial_to_json",
    "report_to_json",
    "sigma2_to_json",
    "sign_outcome_to_json",
    "singularities_to_json",
    "torus_certificate_from_json",
    "torus_certificate_to_json",
    "vector_from_json",
    "vector_to_json",
]
