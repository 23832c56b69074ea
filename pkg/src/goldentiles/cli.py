"""Command-line front end (``goldentiles``)."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, reference
from .angles import DehnValue
from .exactnum import GoldenNumber, Matrix, mpctx
from .verify import Report, corrupted_m2f, run_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt_number(x) -> dict:
    """Exact ``a+b·τ`` string plus a 15-digit decimal."""
    g = GoldenNumber.coerce(x)
    return {"exact": str(g), "decimal": mpctx().nstr(g.numeric(), 15)}


def fmt_dehn(d: DehnValue) -> dict:
    return {"beta": fmt_number(d.beta), "delta": fmt_number(d.delta), "text": str(d)}


def export_filename(name: str) -> str:
    return name.replace("*", "_star").lower() + ".json"


# ---------------------------------------------------------------------------
# output


def emit(payload, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(_markdown(payload) + "\n")


def _markdown(payload, depth: int = 0) -> str:
    pad = "  " * depth
    if isinstance(payload, dict):
        if set(payload) == {"exact", "decimal"}:
            return f"{payload['exact']} ({payload['decimal']})"
        lines = []
        for k, v in payload.items():
            if isinstance(v, (dict, list)) and not _is_leafish(v):
                lines.append(f"{pad}- **{k}**:")
                lines.append(_markdown(v, depth + 1))
            else:
                lines.append(f"{pad}- **{k}**: {_markdown(v, 0)}")
        return "\n".join(lines)
    if isinstance(payload, list):
        if payload and all(isinstance(r, list) for r in payload):
            return "\n".join(pad + "| " + " | ".join(str(c) for c in r) + " |" for r in payload)
        if _is_leafish(payload):
            return ", ".join(_markdown(v) for v in payload)
        return "\n".join(f"{pad}- {_markdown(v, depth + 1).lstrip()}" for v in payload)
    return str(payload)


def _is_leafish(v) -> bool:
    if isinstance(v, dict):
        return set(v) == {"exact", "decimal"}
    if isinstance(v, list):
        if any(isinstance(x, list) for x in v):
            return False
        return all(not isinstance(x, (dict, list)) or _is_leafish(x) for x in v)
    return True


def _matrix_rows(m: Matrix) -> list[list[str]]:
    return [[str(v) for v in r] for r in m]


# ---------------------------------------------------------------------------
# polyhedron input


def load_polyhedron(path: str):
    from .polyhedra import ExactPolyhedron

    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    try:
        return ExactPolyhedron.from_json(obj)
    except ValueError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _resolve_polyhedron(arg: str):
    """A catalog name (``C*``) or a polyhedron JSON path."""
    from .polyhedra import ExactPolyhedron, golden_catalog

    if arg in reference.GOLDEN_NAMES:
        return ExactPolyhedron.from_entry(golden_catalog()[arg])
    return load_polyhedron(arg)


# ---------------------------------------------------------------------------
# commands


def cmd_catalog(args) -> int:
    from .polyhedra import ExactPolyhedron, golden_catalog

    cat = golden_catalog()
    payload = {
        "tetrahedra": [
            {
                "name": e.name,
                "edge_labels": "".join(map(str, e.spec.labels)),
                "volume": fmt_number(e.volume),
                "dehn": fmt_dehn(e.dehn),
                "faces": dict(e.faces),
            }
            for e in cat.entries
        ],
        "flat": "".join(map(str, cat.flat.labels)),
        "classes": len(cat.candidates),
    }
    if args.export:
        out = Path(args.export)
        out.mkdir(parents=True, exist_ok=True)
        (out / "catalog.json").write_text(json.dumps(cat.to_json(), indent=2, ensure_ascii=False))
        for e in cat.entries:
            poly = ExactPolyhedron.from_entry(e)
            (out / export_filename(e.name)).write_text(json.dumps(poly.to_json(), indent=2))
        payload["exported_to"] = str(out)
    emit(payload, args.format)
    return EXIT_OK


def cmd_dehn(args) -> int:
    from .polyhedra import polyhedron_dehn

    poly = load_polyhedron(args.path)
    d = polyhedron_dehn(poly)
    payload = {"dehn": fmt_dehn(d), "edges": len(poly.edges)}
    if poly.volume is not None:
        payload["volume"] = fmt_number(poly.volume)
        payload["sydler_pair"] = {"volume": str(poly.volume), "dehn": str(d)}
    emit(payload, args.format)
    return EXIT_OK


def cmd_volumes(args) -> int:
    from .mosseri_sadoc import PSI_GT, PSI_GT_FIVE, build_tile_invariants
    from .polyhedra import golden_catalog

    cat = golden_catalog()
    ms = build_tile_invariants(cat, PSI_GT)
    five = build_tile_invariants(cat, PSI_GT_FIVE)
    payload = {
        "golden_tetrahedra": {e.name: fmt_number(e.volume) for e in cat.entries},
        "tiles": {t: fmt_number(ms.volume(t)) for t in ms.tiles},
        "halves": {t: fmt_number(five.volume(t)) for t in ("m", "r")},
    }
    emit(payload, args.format)
    return EXIT_OK


def cmd_reconstruct(args) -> int:
    from .inflation import constraint_matrices, eigen_residuals, reconstruct_matrix
    from .inflation import golden_tetrahedra_system
    from .mosseri_sadoc import ms_invariant_system

    system = golden_tetrahedra_system() if args.set == "gt" else ms_invariant_system()
    x, y = constraint_matrices(system)
    m = reconstruct_matrix(system)
    payload = {
        "set": args.set,
        "tiles": list(system.tiles),
        "matrix": _matrix_rows(m),
        "constraints_X": _matrix_rows(x),
        "constraints_Y": _matrix_rows(y),
        "square_system": system.is_square,
    }
    status = EXIT_OK
    if args.check_eigen:
        res = eigen_residuals(m, system)
        ok = all(not v for r in res for v in r)
        payload["eigen_relations_hold"] = ok
        status = EXIT_OK if ok else EXIT_FAIL
    emit(payload, args.format)
    return status


def cmd_power(args) -> int:
    from .inflation import PowerCoefficients, fibonacci_power_check, matrix_power

    if args.k < 1:
        raise UsageError("--k must be positive")
    m = matrix_power(reference.M_GT, args.k)
    pc = PowerCoefficients.for_power(args.k)
    ok = fibonacci_power_check(reference.M_GT, args.k)
    payload = {
        "k": args.k,
        "matrix": _matrix_rows(m),
        "integer": m.is_integer(),
        "coefficients": {"a": pc.a, "b": pc.b, "c": pc.c, "d": pc.d},
        "reduction_identity_holds": ok,
    }
    emit(payload, args.format)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_integrality(args) -> int:
    from .inflation import integrality_spectrum

    if args.kmax < 1:
        raise UsageError("--kmax must be positive")
    spec = integrality_spectrum(reference.M_GT, args.kmax)
    payload = {
        "kmax": args.kmax,
        "integral_powers": [k for k, ok in spec if ok],
        "multiples_of_three": all(ok == (k % 3 == 0) for k, ok in spec),
    }
    emit(payload, args.format)
    return EXIT_OK if payload["multiples_of_three"] else EXIT_FAIL


def cmd_covering(args) -> int:
    from .inflation import SearchTooLarge, covering_brute_force, covering_certificate

    if args.k < 1:
        raise UsageError("--k must be positive")
    cert = covering_certificate(args.k)
    payload = {"certificate": cert.to_json(), "certificate_valid": cert.valid}
    ok = cert.valid
    if args.brute_force:
        try:
            hit = covering_brute_force(args.k)
        except SearchTooLarge as exc:
            raise UsageError(str(exc)) from None
        payload["brute_force_solution"] = list(hit) if hit else None
        ok = ok and hit is None
    emit(payload, args.format)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_fields(args) -> int:
    from .fields import field_tower_ok, field_tower_report

    rep = field_tower_report()
    rep["all_hold"] = field_tower_ok(rep)
    emit(rep, args.format)
    return EXIT_OK if rep["all_hold"] else EXIT_FAIL


def cmd_crs(args) -> int:
    from .crs import InvalidPair, crs_construct, verify_decompositions

    if (args.p is None) != (args.d is None):
        raise UsageError("--p and --d go together")
    if args.p is not None:
        try:
            payload = crs_construct(args.p, args.d).to_json()
        except InvalidPair as exc:
            raise UsageError(str(exc)) from None
        emit(payload, args.format)
        return EXIT_OK
    payload = {
        "<5>_1": crs_construct(5, 1).to_json(),
        "<3>_5": crs_construct(3, 5).to_json(),
        "decompositions": verify_decompositions(),
    }
    emit(payload, args.format)
    ok = payload["decompositions"]["alpha_ok"] and payload["decompositions"]["gamma_ok"]
    return EXIT_OK if ok else EXIT_FAIL


def cmd_equivalent(args) -> int:
    from .polyhedra import polyhedron_dehn, scissor_equivalent

    p1, p2 = _resolve_polyhedron(args.first), _resolve_polyhedron(args.second)
    if p1.volume is None or p2.volume is None:
        raise UsageError("both polyhedra need a volume")
    d1, d2 = polyhedron_dehn(p1), polyhedron_dehn(p2)
    payload = {
        "first": {"volume": fmt_number(p1.volume), "dehn": fmt_dehn(d1)},
        "second": {"volume": fmt_number(p2.volume), "dehn": fmt_dehn(d2)},
        "equal_volume": p1.volume == p2.volume,
        "equal_dehn": d1 == d2,
        "scissor_equivalent": scissor_equivalent((p1.volume, d1), (p2.volume, d2)),
    }
    emit(payload, args.format)
    return EXIT_OK


def cmd_verify_all(args) -> Report:
    m2f = corrupted_m2f() if args.corrupt_m2f else None
    report = run_all(m2f=m2f, workers=args.workers)
    if args.format == "json":
        sys.stdout.write(report.dumps() + "\n")
    else:
        sys.stdout.write(report.to_markdown() + "\n")
    return report


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "markdown"), default="markdown")

    parser = argparse.ArgumentParser(prog="goldentiles", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalog", parents=[common], help="golden tetrahedra with volumes and Dehn invariants")
    p.add_argument("--export", metavar="DIR", help="write catalog.json and one polyhedron file per tetrahedron")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("dehn", parents=[common], help="Dehn invariant of a polyhedron JSON file")
    p.add_argument("path")
    p.set_defaults(func=cmd_dehn)

    p = sub.add_parser("volumes", parents=[common], help="volumes of tetrahedra and tiles")
    p.set_defaults(func=cmd_volumes)

    p = sub.add_parser("reconstruct", parents=[common], help="inflation matrix from invariants")
    p.add_argument("--set", choices=("gt", "ms"), default="gt")
    p.add_argument("--check-eigen", action="store_true", help="re-verify the eigen-relations in Q[tau]")
    p.set_defaults(func=cmd_reconstruct)

    p = sub.add_parser("power", parents=[common], help="power of the golden tetrahedra matrix")
    p.add_argument("--k", type=int, default=3)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("integrality", parents=[common], help="which powers are integral")
    p.add_argument("--kmax", type=int, default=30)
    p.set_defaults(func=cmd_integrality)

    p = sub.add_parser("covering", parents=[common], help="triangle covering obstruction")
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--brute-force", action="store_true")
    p.set_defaults(func=cmd_covering)

    p = sub.add_parser("fields", parents=[common], help="facts about the field tower")
    p.set_defaults(func=cmd_fields)

    p = sub.add_parser("crs", parents=[common], help="Conway-Radin-Sadun basis angles")
    p.add_argument("--p", type=int)
    p.add_argument("--d", type=int)
    p.set_defaults(func=cmd_crs)

    p = sub.add_parser("equivalent", parents=[common], help="scissor equivalence of two polyhedra")
    p.add_argument("first", help="catalog name such as 'C*' or a polyhedron JSON path")
    p.add_argument("second")
    p.set_defaults(func=cmd_equivalent)

    p = sub.add_parser("verify-all", parents=[common], help="run every check")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--corrupt-m2f", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        result = args.func(args)
    except UsageError as exc:
        print(f"goldentiles: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except Exception as exc:  # internal failure
        print(f"goldentiles: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(result, Report):
        return result.exit_code
    return result


if __name__ == "__main__":
    sys.exit(main())
