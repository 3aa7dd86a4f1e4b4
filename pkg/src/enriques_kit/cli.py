"""Command-line front end.

    enriques-kit lattice signature --name D4neg
    enriques-kit involution classify-plane plane.json
    enriques-kit actions table
    enriques-kit model check p.json --budget 20000
    enriques-kit verify-paper --only AC-8 --json

Exit codes: 0 success, 1 a check came back negative, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import acceptance, involution, lattice, quadric
from . import serialize as ser
from .model import polynomial, singular, space, torus

OK, NEGATIVE, USAGE = 0, 1, 2


class InputError(Exception):
    pass


# --------------------------------------------------------------------------
# input helpers


def _read_json(path: str | None, stdin) -> dict:
    try:
        if path in (None, "-"):
            text = stdin.read()
        else:
            text = Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("expected a JSON object")
    return doc


def _named_lattice(name: str) -> lattice.Lattice:
    parts = [s.strip() for s in name.split("+")] if "(" not in name else [name]
    out = None
    for part in parts:
        lat = lattice.enriques_lattice() if part in ("L", "Enriques") else lattice.standard_lattice(part)
        out = lat if out is None else lattice.direct_sum(out, lat)
    return out


def _lattice_arg(spec: str | None, name: str | None, file: str | None, stdin) -> lattice.Lattice:
    if name:
        return _named_lattice(name)
    if file:
        return ser.lattice_from_json(_read_json(file, stdin))
    if spec is None or spec == "-":
        return ser.lattice_from_json(_read_json(None, stdin))
    if Path(spec).is_file():
        return ser.lattice_from_json(_read_json(spec, stdin))
    return _named_lattice(spec)


def _vector(doc: dict, key: str):
    if key not in doc:
        raise InputError(f"missing {key!r}")
    return ser.vector_from_json(doc[key])


# --------------------------------------------------------------------------
# output


class Out:
    def __init__(self, stream, as_json: bool):
        self.stream = stream
        self.json = as_json

    def emit(self, text: str | None = None, doc=None):
        if self.json:
            self.stream.write(json.dumps(doc, indent=2) + "\n")
        elif text is not None:
            self.stream.write(text + "\n")


def _fmt_matrix(rows) -> str:
    return "\n".join(" ".join(f"{v:>3}" for v in row) for row in rows)


# --------------------------------------------------------------------------
# lattice


def cmd_lattice(args, out: Out, stdin) -> int:
    lat = _lattice_arg(args.spec, args.name, args.file, stdin)
    op = args.op
    if op == "show":
        out.emit(_fmt_matrix(lat.gram), ser.lattice_to_json(lat))
    elif op == "signature":
        sig = lattice.signature(lat)
        out.emit("({},{},{})".format(*sig), {"signature": list(sig), "sigma": sig[0] - sig[1]})
    elif op == "discriminant-group":
        group = lattice.discriminant_group(lat)
        out.emit("[" + ",".join(map(str, group)) + "]", {"invariant_factors": group, "order": abs(lat.det())})
    elif op == "discriminant-form":
        form = lattice.discriminant_form(lat)
        lines = [f"group {list(form.invariant_factors)}, {'even' if form.is_even else 'odd'}"]
        lines += [f"  q{list(g)} = {form.q_values[g]} mod 2" for g in form.elements() if any(g)]
        out.emit("\n".join(lines), ser.discriminant_form_to_json(form))
    elif op == "is-even":
        even = lattice.is_even(lat)
        out.emit(str(even).lower(), {"even": even})
    elif op == "max-even":
        sub, basis = lattice.max_even_sublattice(lat)
        index = math.isqrt(abs(sub.det() // lat.det())) if lat.det() else None
        doc = {"lattice": ser.lattice_to_json(sub), "basis": [list(b) for b in basis], "det": sub.det()}
        out.emit(f"det {sub.det()}, index {int(index) if index else '?'}\n{_fmt_matrix(sub.gram)}", doc)
    elif op == "isometry":
        other = _lattice_arg(args.to, args.to_name, args.to_file, stdin)
        iso = lattice.isometry_search(lat, other)
        if iso is None:
            out.emit("no isometry", {"isometry": None})
            return NEGATIVE
        out.emit(_fmt_matrix(iso.matrix), {"isometry": ser.isometry_to_json(iso)})
    return OK


# --------------------------------------------------------------------------
# involutions


def cmd_involution(args, out: Out, stdin) -> int:
    if args.op == "sample":
        rng = np.random.default_rng(args.seed)
        d = involution.random_pair_data(rng, reflections=args.reflections)
        doc = ser.involution_to_json(d.inv)
        doc.update(u1=list(d.u1), u2=list(d.u2), d4=[list(v) for v in d.d4])
        out.stream.write(json.dumps(doc) + "\n")
        return OK
    doc = _read_json(args.file, stdin)
    inv = ser.involution_from_json(doc)
    if args.op == "classify-plane":
        plane = involution.classify_plane(inv, _vector(doc, "u1"), _vector(doc, "u2"))
        out.emit(plane.value, {"plane_type": plane.value})
    elif args.op == "find-i0w2":
        d4 = [ser.vector_from_json(v) for v in doc.get("d4", [])]
        v1, v2 = involution.find_plane_I0w2(inv, _vector(doc, "u1"), _vector(doc, "u2"), d4)
        out.emit(f"{list(v1)}\n{list(v2)}", {"u1": list(v1), "u2": list(v2)})
    elif args.op == "pencil-reality":
        verdict = involution.pencil_reality(inv, _vector(doc, "x"))
        out.emit(verdict.value, {"verdict": verdict.value})
    elif args.op == "find-isotropic":
        found = involution.find_primitive_isotropic(inv, args.bound)
        if found.vector is None:
            out.emit("none found", {"vector": None, "exhausted": found.exhausted})
            return NEGATIVE
        out.emit(str(list(found.vector)), {"vector": list(found.vector), "delta": involution.delta(inv, found.vector)})
    return OK


# --------------------------------------------------------------------------
# quadric actions


def _table_lines(table) -> list[str]:
    return [r.row() for r in table.values()]


def cmd_actions(args, out: Out, stdin) -> int:
    if args.op == "table":
        text = "P1 x P1\n" + "\n".join(_table_lines(quadric.TABLE))
        text += "\nSigma2\n" + "\n".join(_table_lines(quadric.SIGMA2_TABLE))
        doc = {
            "quadric": [ser.report_to_json(r) for r in quadric.TABLE.values()],
            "sigma2": [ser.report_to_json(r) for r in quadric.SIGMA2_TABLE.values()],
        }
        out.emit(text, doc)
        return OK
    action = ser.action_from_json(_read_json(args.file, stdin))
    if isinstance(action, quadric.Sigma2Action):
        report = quadric.classify_sigma2_action(action)
    else:
        report = quadric.classify_action(action)
    out.emit(report.row(), ser.report_to_json(report))
    return OK


# --------------------------------------------------------------------------
# model space


def _polynomial(path, stdin) -> polynomial.BranchPolynomial:
    return ser.polynomial_from_json(_read_json(path, stdin))


def _m0_text(p, cert) -> str:
    if not cert.valid:
        return str(cert)
    counts = singular.summary(cert.singularities)
    sing = ", ".join(f"{n} {t}" for t, n in counts.items()) or "none"
    label = torus.exposition_sign(p, cert.torus)
    return f"in M0: {label}, {cert.torus.box_count} boxes (depth {cert.torus.depth}); singular points: {sing}"


def cmd_model(args, out: Out, stdin) -> int:
    op = args.op
    if op == "center":
        p = polynomial.center_polynomial()
        out.emit(polynomial.format_polynomial(p), ser.polynomial_to_json(p))
        return OK
    if op == "sample":
        p = space.sample_M0(args.seed, Fraction(args.radius), args.budget)
        out.emit(polynomial.format_polynomial(p), ser.polynomial_to_json(p))
        return OK
    if op == "validate":
        doc = _read_json(args.file, stdin)
        try:
            p = ser.polynomial_from_json(doc)
        except polynomial.ValidationError as exc:
            out.emit(str(exc), {"valid": False, "violations": [str(v) for v in exc.violations]})
            return NEGATIVE
        out.emit(polynomial.format_polynomial(p), {"valid": True, "polynomial": ser.polynomial_to_json(p)})
        return OK
    if op == "check":
        p = _polynomial(args.file, stdin)
        cert = space.is_in_M0(p, args.budget)
        out.emit(_m0_text(p, cert), ser.m0_to_json(cert))
        return OK if cert.valid else NEGATIVE
    if op == "connect":
        p0, p1 = _polynomial(args.a, stdin), _polynomial(args.b, stdin)
        try:
            path = space.connect_path(p0, p1, args.samples, args.seed, args.budget)
        except space.PathRepairFailed as exc:
            out.emit(str(exc), {"valid": False, "failed_at": str(exc.t), "failure": str(exc.failure)})
            return NEGATIVE
        except (space.NotCertified, space.OppositeSigns) as exc:
            out.emit(str(exc), {"valid": False, "error": str(exc)})
            return NEGATIVE
        text = f"certified chain of {len(path.points)} samples, {path.repaired_count} repaired"
        out.emit(text, ser.path_to_json(path))
        return OK if path.valid else NEGATIVE
    return USAGE


# --------------------------------------------------------------------------
# verify-paper


def cmd_verify(args, out: Out, stdin) -> int:
    unknown = [i for i in args.only or [] if i not in acceptance.CHECKS]
    if unknown:
        raise InputError(f"unknown acceptance ids {unknown}; known: {', '.join(acceptance.CHECKS)}")
    echo = None if out.json else (lambda e: (out.stream.write(e.line() + "\n"), out.stream.flush()))
    report = acceptance.verify_paper(args.only, on_entry=echo)
    if out.json:
        out.emit(None, report.to_json())
    else:
        passed = sum(e.status == acceptance.VERIFIED for e in report.entries)
        out.stream.write(f"{passed}/{len(report.entries)} verified\n")
    return OK if report.ok else NEGATIVE


# --------------------------------------------------------------------------
# parser


def _leaf(sub, name: str, help: str) -> argparse.ArgumentParser:
    p = sub.add_parser(name, help=help)
    p.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="enriques-kit", description="Exact checks for real Enriques surfaces.")
    parser.add_argument("--json", action="store_true", help="machine-readable output")
    groups = parser.add_subparsers(dest="group", required=True)

    lat = groups.add_parser("lattice", help="integral lattices").add_subparsers(dest="op", required=True)
    for name, text in [
        ("show", "print the Gram matrix"),
        ("signature", "signature (n+, n-, n0)"),
        ("discriminant-group", "invariant factors of L*/L"),
        ("discriminant-form", "finite quadratic form on L*/L"),
        ("is-even", "whether every norm is even"),
        ("max-even", "maximal even sublattice"),
        ("isometry", "search for an isometry onto a second lattice"),
    ]:
        p = _leaf(lat, name, text)
        p.add_argument("spec", nargs="?", help="lattice name (U, E8neg, D4neg, 4A1, diag(..), L, A+B) or JSON file")
        p.add_argument("--name")
        p.add_argument("--file")
        if name == "isometry":
            p.add_argument("to", nargs="?", help="target lattice name or JSON file")
            p.add_argument("--to-name")
            p.add_argument("--to-file")
        p.set_defaults(func=cmd_lattice)

    inv = groups.add_parser("involution", help="involutions on L + Z/2").add_subparsers(dest="op", required=True)
    for name, text in [
        ("classify-plane", "type of the plane spanned by u1, u2"),
        ("find-i0w2", "standard pair of type I(0,w2) from u1, u2, d4"),
        ("pencil-reality", "reality of the half-pencil x"),
        ("find-isotropic", "primitive isotropic vector of the (-1)-eigenlattice"),
    ]:
        p = _leaf(inv, name, text)
        p.add_argument("file", nargs="?", help="JSON document (default: stdin)")
        if name == "find-isotropic":
            p.add_argument("--bound", type=int, default=3)
        p.set_defaults(func=cmd_involution)
    p = _leaf(inv, "sample", "random involution with a standard pair and a D4 basis")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--reflections", type=int, default=3)
    p.set_defaults(func=cmd_involution)

    act = groups.add_parser("actions", help="(Z/2)^2 actions on quadrics").add_subparsers(dest="op", required=True)
    p = _leaf(act, "classify", "classify an action given as JSON")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=cmd_actions)
    _leaf(act, "table", "the classification tables").set_defaults(func=cmd_actions)

    mod = groups.add_parser("model", help="the model space M0").add_subparsers(dest="op", required=True)
    _leaf(mod, "center", "the base point p*").set_defaults(func=cmd_model)
    p = _leaf(mod, "validate", "check parity and reality of a polynomial")
    p.add_argument("file", nargs="?")
    p.set_defaults(func=cmd_model)
    p = _leaf(mod, "check", "certify membership in M0")
    p.add_argument("file", nargs="?")
    p.add_argument("--budget", type=int, default=torus.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_model)
    p = _leaf(mod, "sample", "seeded point of M0 near p*")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--radius", default="1/4")
    p.add_argument("--budget", type=int, default=torus.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_model)
    p = _leaf(mod, "connect", "certified straight path between two members")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--samples", type=int, default=33)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=torus.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_model)

    p = _leaf(groups, "verify-paper", "run the acceptance suite")
    p.add_argument("--only", action="append", metavar="ID", help="run only this criterion (repeatable)")
    p.set_defaults(func=cmd_verify)
    return parser


_INPUT_ERRORS = (
    InputError,
    ser.FormatError,
    polynomial.ValidationError,
    polynomial.PolynomialError,
    lattice.LatticeError,
    involution.InvolutionError,
    quadric.ActionError,
    KeyError,
    TypeError,
    ValueError,
)


def run(argv=None, stdout=None, stderr=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    out = Out(stdout, bool(getattr(args, "json", False)))
    try:
        return args.func(args, out, stdin)
    except _INPUT_ERRORS as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        stderr.write(f"enriques-kit: error: {msg}\n")
        return USAGE


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
