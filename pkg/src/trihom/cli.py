"""File-based front end.

Reads a diagram file (JSON, schema in the README), runs the requested
computation, and prints a text or JSON report. Exit codes: 0 success,
1 rejected diagram, 2 parse error, 3 unsatisfied precondition.

JSON reports are byte-deterministic: keys are sorted, matrices are
row-major nested arrays, and every lattice basis underneath is canonical.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Any, Sequence

from .charclass import linking_matrix_y, linking_matrix_z, spin_y, spin_z, w2_y, w2_z
from .exactalg import AbelianGroup, IntMatrix
from .homology import (
    HomologyResult,
    build_cy,
    build_cz,
    h_closed_forms,
    homology_of,
    intersection_form,
)
from .surface import (
    Diagram,
    DiagramError,
    DiagramMatrices,
    PreconditionError,
    SurfaceSignature,
    infer_k,
    j_matrix,
    r_matrix,
    s_matrix,
    validate,
    validate_matrices,
)


class ParseError(ValueError):
    """The input file is structurally malformed."""


# ---------------------------------------------------------------------------
# diagram files


@dataclass(frozen=True)
class DiagramFile:
    """Typed contents of one input file, either mode."""

    mode: str
    g: int
    p: int
    b: int
    k: tuple[int, int, int] | None = None
    alpha: tuple[tuple[int, ...], ...] | None = None
    beta: tuple[tuple[int, ...], ...] | None = None
    gamma: tuple[tuple[int, ...], ...] | None = None
    arcs: tuple[tuple[int, ...], ...] | None = None
    standard_position_assertion: bool = False
    k1: int | None = None
    q_gamma_beta: tuple[tuple[int, ...], ...] | None = None
    q_alpha_gamma: tuple[tuple[int, ...], ...] | None = None
    q_a_gamma: tuple[tuple[int, ...], ...] | None = None
    q_beta_alpha: tuple[tuple[int, ...], ...] | None = None


def _need(obj: dict, field: str) -> Any:
    if field not in obj:
        raise ParseError(f"missing field {field!r}")
    return obj[field]


def _as_int(value: Any, field: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{field}: expected an integer, got {value!r}")
    return value


def _as_vector(value: Any, length: int, field: str) -> tuple[int, ...]:
    if not isinstance(value, list):
        raise ParseError(f"{field}: expected a list, got {type(value).__name__}")
    if len(value) != length:
        raise ParseError(f"{field}: expected length {length}, got {len(value)}")
    return tuple(_as_int(x, f"{field}[{i}]") for i, x in enumerate(value))


def _as_vector_list(value: Any, length: int, field: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(value, list):
        raise ParseError(f"{field}: expected a list of vectors")
    return tuple(_as_vector(v, length, f"{field}[{i}]") for i, v in enumerate(value))


def _as_matrix(value: Any, rows: int, cols: int, field: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(value, list):
        raise ParseError(f"{field}: expected a nested list")
    if len(value) != rows:
        raise ParseError(f"{field}: expected {rows} rows, got {len(value)}")
    return tuple(_as_vector(r, cols, f"{field}[{i}]") for i, r in enumerate(value))


_CLASS_FIELDS = {"alpha", "beta", "gamma", "arcs", "standard_position_assertion"}
_MATRIX_FIELDS = {"k1", "Q_gamma_beta", "Q_alpha_gamma", "Q_a_gamma", "Q_beta_alpha"}
_COMMON_FIELDS = {"mode", "g", "p", "b", "k"}


def parse_obj(obj: Any) -> DiagramFile:
    """Typed DiagramFile from decoded JSON; raises ParseError with the
    offending field named."""
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object")
    mode = _need(obj, "mode")
    if mode not in ("class", "matrix"):
        raise ParseError(f"mode: expected 'class' or 'matrix', got {mode!r}")
    g = _as_int(_need(obj, "g"), "g")
    p = _as_int(_need(obj, "p"), "p")
    b = _as_int(_need(obj, "b"), "b")
    try:
        sig = SurfaceSignature(g, p, b)
    except ValueError as e:
        raise ParseError(str(e)) from None

    allowed = _COMMON_FIELDS | (_CLASS_FIELDS if mode == "class" else _MATRIX_FIELDS)
    for key in obj:
        if key not in allowed:
            raise ParseError(f"unexpected field {key!r} for mode {mode!r}")

    k = None
    if obj.get("k") is not None:
        kv = _as_vector(obj["k"], 3, "k")
        k = (kv[0], kv[1], kv[2])

    if mode == "class":
        n = sig.n
        alpha = _as_vector_list(_need(obj, "alpha"), n, "alpha")
        beta = _as_vector_list(_need(obj, "beta"), n, "beta")
        gamma = _as_vector_list(_need(obj, "gamma"), n, "gamma")
        arcs = None
        if obj.get("arcs") is not None:
            arcs = _as_vector_list(obj["arcs"], n, "arcs")
            if len(arcs) != n:
                raise ParseError(f"arcs: expected {n} arc classes, got {len(arcs)}")
        assertion = obj.get("standard_position_assertion", False)
        if not isinstance(assertion, bool):
            raise ParseError("standard_position_assertion: expected a boolean")
        return DiagramFile(
            mode=mode, g=g, p=p, b=b, k=k,
            alpha=alpha, beta=beta, gamma=gamma, arcs=arcs,
            standard_position_assertion=assertion,
        )

    c = sig.curves_per_family
    k1 = _as_int(_need(obj, "k1"), "k1")
    qgb = _as_matrix(_need(obj, "Q_gamma_beta"), c, c, "Q_gamma_beta")
    qag = _as_matrix(_need(obj, "Q_alpha_gamma"), c, c, "Q_alpha_gamma")
    qa_g = _as_matrix(_need(obj, "Q_a_gamma"), sig.l, c, "Q_a_gamma")
    qba = None
    if obj.get("Q_beta_alpha") is not None:
        qba = _as_matrix(obj["Q_beta_alpha"], c, c, "Q_beta_alpha")
    return DiagramFile(
        mode=mode, g=g, p=p, b=b, k=k,
        k1=k1, q_gamma_beta=qgb, q_alpha_gamma=qag, q_a_gamma=qa_g, q_beta_alpha=qba,
    )


def parse(path: str) -> DiagramFile:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"{path}: invalid JSON at line {e.lineno}, column {e.colno}: {e.msg}") from None
    return parse_obj(obj)


def serialize(df: DiagramFile) -> dict:
    """Canonical JSON object; parse_obj(serialize(df)) == df."""
    out: dict[str, Any] = {"mode": df.mode, "g": df.g, "p": df.p, "b": df.b}
    if df.k is not None:
        out["k"] = list(df.k)
    if df.mode == "class":
        out["alpha"] = [list(v) for v in df.alpha]
        out["beta"] = [list(v) for v in df.beta]
        out["gamma"] = [list(v) for v in df.gamma]
        if df.arcs is not None:
            out["arcs"] = [list(v) for v in df.arcs]
        if df.standard_position_assertion:
            out["standard_position_assertion"] = True
    else:
        out["k1"] = df.k1
        out["Q_gamma_beta"] = [list(r) for r in df.q_gamma_beta]
        out["Q_alpha_gamma"] = [list(r) for r in df.q_alpha_gamma]
        out["Q_a_gamma"] = [list(r) for r in df.q_a_gamma]
        if df.q_beta_alpha is not None:
            out["Q_beta_alpha"] = [list(r) for r in df.q_beta_alpha]
    return out


def to_diagram(df: DiagramFile, assert_standard: bool = False) -> Diagram:
    if df.mode != "class":
        raise PreconditionError("this operation needs curve classes; the file is matrix mode")
    return Diagram.build(
        df.g, df.p, df.b,
        alpha=df.alpha, beta=df.beta, gamma=df.gamma, k=df.k, arcs=df.arcs,
        standard_position=df.standard_position_assertion or assert_standard,
    )


def to_matrices(df: DiagramFile) -> DiagramMatrices:
    if df.mode != "matrix":
        raise PreconditionError("the file is class mode, not matrix mode")
    mk = lambda rows, c: IntMatrix.from_rows([list(r) for r in rows], cols=c)
    sig = SurfaceSignature(df.g, df.p, df.b)
    c = sig.curves_per_family
    return DiagramMatrices(
        sig=sig,
        k1=df.k1,
        q_gamma_beta=mk(df.q_gamma_beta, c),
        q_alpha_gamma=mk(df.q_alpha_gamma, c),
        q_a_gamma=mk(df.q_a_gamma, c),
        q_beta_alpha=mk(df.q_beta_alpha, c) if df.q_beta_alpha is not None else None,
    )


# ---------------------------------------------------------------------------
# report assembly


def _matrix_json(m: IntMatrix) -> list[list[int]]:
    return m.to_rows()


def _group_json(gp: AbelianGroup) -> dict:
    return {
        "free_rank": gp.free_rank,
        "invariant_factors": list(gp.invariant_factors),
        "pretty": str(gp),
    }


def _homology_json(h: HomologyResult) -> dict:
    return {
        "h0": _group_json(h.h0),
        "h1": _group_json(h.h1),
        "h2": _group_json(h.h2),
        "h3": _group_json(h.h3),
    }


def _validation_json(report) -> dict:
    return {
        "ok": report.ok,
        "checks": [
            {"name": c.name, "passed": c.passed, "detail": c.detail}
            for c in report.checks
        ],
    }


def _conventions_json(sig: SurfaceSignature) -> dict:
    return {
        "pairing_curve_curve": "x^T (S^T - S) y",
        "pairing_arc_curve": "a^T x (curve-arc pairing is the negative)",
        "S": _matrix_json(s_matrix(sig)),
        "J_equals_St_minus_S": _matrix_json(j_matrix(sig)),
        "R": _matrix_json(r_matrix(sig)),
        "anchors": [
            "genus-1, one boundary component: q_matrix([alpha],[gamma]) = [[1]] "
            "for alpha=(1,0), gamma=(1,1)",
            "disk bundle over the sphere with euler number -1, presented with "
            "(g,p,b)=(2,0,2) and k1=1: linking matrix y equals [[0,-1],[-1,-1]]",
        ],
        "bases": {
            "curves": "e_1..e_n in H_1 of the surface, n = 2g+b-1",
            "arcs": "dual classes f_1..f_n in H_1 rel boundary, <f_i, e_j> = delta_ij",
        },
    }


def _sig_json(sig: SurfaceSignature) -> dict:
    return {
        "g": sig.g, "p": sig.p, "b": sig.b,
        "n": sig.n, "l": sig.l,
        "curves_per_family": sig.curves_per_family,
    }


def _w2_json(w) -> dict:
    return {
        "basis": w.basis,
        "coefficients": list(w.coefficients),
        "linking_diagonal": list(w.linking.diagonal()),
    }


def _spin_json(s) -> dict:
    return {
        "spin": s.spin,
        "witness": list(s.witness) if s.witness is not None else None,
        "witness_basis": s.basis,
    }


def _skip(reason: str) -> dict:
    return {"skipped": reason}


_NO_CLASSES = "matrix mode carries no curve classes"


def build_report(df: DiagramFile, assert_standard: bool = False) -> tuple[int, dict]:
    """Full report over everything computable for this file.

    Unavailable sections are marked skipped with a reason; a failing
    validation stops the math and exits 1.
    """
    sig = SurfaceSignature(df.g, df.p, df.b)
    rep: dict[str, Any] = {
        "mode": df.mode,
        "signature": _sig_json(sig),
        "conventions": _conventions_json(sig),
    }

    if df.mode == "matrix":
        m = to_matrices(df)
        vrep = validate_matrices(m)
        rep["validation"] = _validation_json(vrep)
        rep["k1"] = m.k1
        if not vrep.ok:
            return 1, rep
        rep["homology"] = _skip(_NO_CLASSES)
        rep["intersection_form"] = _skip(_NO_CLASSES)
        rep["linking"] = {"y": _matrix_json(linking_matrix_y(m)), "z": _skip(_NO_CLASSES)}
        rep["w2"] = {"y": _w2_json(w2_y(m)), "z": _skip(_NO_CLASSES)}
        rep["spin"] = {"y": _spin_json(spin_y(m)), "z": _skip(_NO_CLASSES)}
        return 0, rep

    d = to_diagram(df, assert_standard)
    vrep = validate(d)
    rep["validation"] = _validation_json(vrep)
    if not vrep.ok:
        return 1, rep
    rep["inferred_k"] = list(infer_k(d))

    homology: dict[str, Any] = {}
    results: dict[str, HomologyResult] = {}
    try:
        results["y"] = homology_of(build_cy(d))
        homology["y"] = _homology_json(results["y"])
    except PreconditionError as e:
        homology["y"] = _skip(str(e))
    results["z"] = homology_of(build_cz(d))
    results["closed"] = h_closed_forms(d)
    homology["z"] = _homology_json(results["z"])
    homology["closed"] = _homology_json(results["closed"])
    agree = all(
        r.groups() == results["closed"].groups() for r in results.values()
    )
    homology["agree"] = agree
    if not agree:
        homology["internal_error"] = "homology methods disagree; this is a bug"
    rep["homology"] = homology

    form = intersection_form(d)
    rep["intersection_form"] = {
        "generators_gamma_coordinates": [list(g) for g in form.generators],
        "matrix": _matrix_json(form.matrix),
        "torsion_invariant_factors": list(form.torsion),
    }

    linking: dict[str, Any] = {"z": _matrix_json(linking_matrix_z(d))}
    w2: dict[str, Any] = {"z": _w2_json(w2_z(d))}
    spin: dict[str, Any] = {"z": _spin_json(spin_z(d))}
    try:
        linking["y"] = _matrix_json(linking_matrix_y(d))
        w2["y"] = _w2_json(w2_y(d))
        spin["y"] = _spin_json(spin_y(d))
    except PreconditionError as e:
        reason = str(e)
        linking["y"] = _skip(reason)
        w2["y"] = _skip(reason)
        spin["y"] = _skip(reason)
    rep["linking"] = linking
    rep["w2"] = w2
    rep["spin"] = spin
    return 0, rep


# ---------------------------------------------------------------------------
# commands


def _run_validate(df: DiagramFile, assert_standard: bool) -> tuple[int, dict]:
    sig = SurfaceSignature(df.g, df.p, df.b)
    rep: dict[str, Any] = {"mode": df.mode, "signature": _sig_json(sig)}
    if df.mode == "matrix":
        vrep = validate_matrices(to_matrices(df))
        rep["validation"] = _validation_json(vrep)
        rep["k1"] = df.k1
        return (0 if vrep.ok else 1), rep
    d = to_diagram(df, assert_standard)
    vrep = validate(d)
    rep["validation"] = _validation_json(vrep)
    if vrep.ok:
        rep["inferred_k"] = list(infer_k(d))
    return (0 if vrep.ok else 1), rep


def _require_class_valid(df: DiagramFile, assert_standard: bool) -> Diagram:
    d = to_diagram(df, assert_standard)
    vrep = validate(d)
    if not vrep.ok:
        msgs = "; ".join(f"{c.name}: {c.detail}" for c in vrep.failures())
        raise DiagramError(f"diagram rejected: {msgs}")
    return d


def _run_homology(df: DiagramFile, complex_choice: str, assert_standard: bool) -> tuple[int, dict]:
    d = _require_class_valid(df, assert_standard)
    wanted = ("y", "z", "closed") if complex_choice == "all" else (complex_choice,)
    out: dict[str, Any] = {}
    results: dict[str, HomologyResult] = {}
    for name in wanted:
        if name == "y":
            results[name] = homology_of(build_cy(d))
        elif name == "z":
            results[name] = homology_of(build_cz(d))
        else:
            results[name] = h_closed_forms(d)
        out[name] = _homology_json(results[name])
    if len(results) > 1:
        first = next(iter(results.values())).groups()
        out["agree"] = all(r.groups() == first for r in results.values())
    return 0, {"homology": out, "inferred_k": list(infer_k(d))}


def _run_form(df: DiagramFile, assert_standard: bool) -> tuple[int, dict]:
    d = _require_class_valid(df, assert_standard)
    form = intersection_form(d)
    return 0, {
        "intersection_form": {
            "generators_gamma_coordinates": [list(g) for g in form.generators],
            "matrix": _matrix_json(form.matrix),
            "torsion_invariant_factors": list(form.torsion),
        }
    }


def _char_targets(df: DiagramFile, complex_choice: str) -> tuple[str, ...]:
    if complex_choice == "closed":
        raise PreconditionError(
            "w2/spin have no closed-form route; use --complex y, z, or all"
        )
    if complex_choice == "all":
        return ("y", "z")
    return (complex_choice,)

def _run_w2(df: DiagramFile, complex_choice: str, assert_standard: bool) -> tuple[int, dict]:
    targets = _char_targets(df, complex_choice)
    explicit = complex_choice != "all"
    out: dict[str, Any] = {}
    if df.mode == "matrix":
        m = to_matrices(df)
        _vreject_matrix(m)
        for t in targets:
            if t == "y":
                out["y"] = _w2_json(w2_y(m))
            elif explicit:
                raise PreconditionError(_NO_CLASSES + "; the z route needs class mode")
            else:
                out["z"] = _skip(_NO_CLASSES)
        return 0, {"w2": out}
    d = _require_class_valid(df, assert_standard)
    for t in targets:
        if t == "z":
            out["z"] = _w2_json(w2_z(d))
            continue
        try:
            out["y"] = _w2_json(w2_y(d))
        except PreconditionError:
            if explicit:
                raise
            out["y"] = _skip("standard-position assertion or matching arcs absent")
    return 0, {"w2": out}


def _run_spin(df: DiagramFile, complex_choice: str, assert_standard: bool) -> tuple[int, dict]:
    targets = _char_targets(df, complex_choice)
    explicit = complex_choice != "all"
    out: dict[str, Any] = {}
    if df.mode == "matrix":
        m = to_matrices(df)
        _vreject_matrix(m)
        for t in targets:
            if t == "y":
                out["y"] = _spin_json(spin_y(m))
            elif explicit:
                raise PreconditionError(_NO_CLASSES + "; the z route needs class mode")
            else:
                out["z"] = _skip(_NO_CLASSES)
        return 0, {"spin": out}
    d = _require_class_valid(df, assert_standard)
    for t in targets:
        if t == "z":
            out["z"] = _spin_json(spin_z(d))
            continue
        try:
            out["y"] = _spin_json(spin_y(d))
        except PreconditionError:
            if explicit:
                raise
            out["y"] = _skip("standard-position assertion or matching arcs absent")
    return 0, {"spin": out}


def _vreject_matrix(m: DiagramMatrices) -> None:
    vrep = validate_matrices(m)
    if not vrep.ok:
        msgs = "; ".join(f"{c.name}: {c.detail}" for c in vrep.failures())
        raise DiagramError(f"matrix data rejected: {msgs}")


def run(
    command: str,
    path: str,
    complex_choice: str = "all",
    fmt: str = "text",
    assert_standard: bool = False,
) -> tuple[int, str]:
    """Execute one command; returns (exit_code, rendered output)."""
    try:
        df = parse(path)
        if command == "validate":
            code, payload = _run_validate(df, assert_standard)
        elif command == "homology":
            code, payload = _run_homology(df, complex_choice, assert_standard)
        elif command == "form":
            code, payload = _run_form(df, assert_standard)
        elif command == "w2":
            code, payload = _run_w2(df, complex_choice, assert_standard)
        elif command == "spin":
            code, payload = _run_spin(df, complex_choice, assert_standard)
        elif command == "report":
            code, payload = build_report(df, assert_standard)
        else:
            raise ParseError(f"unknown command {command!r}")
    except ParseError as e:
        return 2, _render_error("parse error", str(e), fmt)
    except DiagramError as e:
        return 1, _render_error("rejected", str(e), fmt)
    except PreconditionError as e:
        return 3, _render_error("precondition", str(e), fmt)
    payload = {"command": command, **payload}
    return code, _render(payload, fmt)


def _render_error(kind: str, message: str, fmt: str) -> str:
    if fmt == "json":
        return json.dumps({"error": {"kind": kind, "message": message}},
                          sort_keys=True, indent=2) + "\n"
    return f"error ({kind}): {message}\n"


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(payload, sort_keys=True, indent=2) + "\n"
    lines: list[str] = []
    _render_text(payload, lines, indent=0)
    return "\n".join(lines) + "\n"


def _render_text(value: Any, lines: list[str], indent: int, key: str | None = None) -> None:
    pad = "  " * indent
    if isinstance(value, dict):
        if key is not None:
            lines.append(f"{pad}{key}:")
            indent += 1
            pad += "  "
        for k in sorted(value):
            _render_text(value[k], lines, indent, k)
        return
    if isinstance(value, list) and value and not all(isinstance(x, int) for x in value):
        lines.append(f"{pad}{key}:" if key is not None else pad)
        for item in value:
            if isinstance(item, dict):
                lines.append(f"{pad}  -")
                for k in sorted(item):
                    _render_text(item[k], lines, indent + 2, k)
            else:
                lines.append(f"{pad}  {item}")
        return
    label = f"{key}: " if key is not None else ""
    lines.append(f"{pad}{label}{value}")


def main(argv: Sequence[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="trihom",
        description="Homology, intersection form, w2 and spin existence of a "
        "compact 4-manifold with boundary, from a relative trisection diagram file.",
    )
    parser.add_argument(
        "command",
        choices=["validate", "homology", "form", "w2", "spin", "report"],
    )
    parser.add_argument("file", help="diagram file (JSON; schema in the README)")
    parser.add_argument(
        "--complex",
        dest="complex_choice",
        choices=["y", "z", "closed", "all"],
        default="all",
        help="which computation route (default: all available)",
    )
    parser.add_argument(
        "--format", dest="fmt", choices=["text", "json"], default="text"
    )
    parser.add_argument(
        "--assert-standard-position",
        action="store_true",
        help="assert that the alpha/beta pair and the supplied arcs are in "
        "standard position, unlocking the y route for class-mode files",
    )
    args = parser.parse_args(argv)
    code, output = run(
        args.command,
        args.file,
        complex_choice=args.complex_choice,
        fmt=args.fmt,
        assert_standard=args.assert_standard_position,
    )
    stream = sys.stdout if code == 0 else sys.stderr
    stream.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
