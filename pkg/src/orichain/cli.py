"""Command line front end: ``orichain homology|glue|cobordism|smoothing|verify``.

Exit codes:
  0  success
  1  a verification suite failed
  2  malformed input or schema violation
  3  subcomplex is not contained in the complex
  4  chain is not a cycle
  5  cobordism boundary does not match
  6  dimension above ORICHAIN_MAX_DIM
"""
from __future__ import annotations

import argparse
import random
import sys
import warnings
from fractions import Fraction
from itertools import combinations_with_replacement
from pathlib import Path

import numpy as np

from . import __version__
from .chains import NotSubcomplex
from .fixtures import support
from .gluing import (
    BoundaryMismatch,
    GluingError,
    NotACycle,
    build_cobordism,
    check_phi_psi_identity,
    cobordism_boundary_matches,
    cobordism_violations,
    extract_cobordism,
    extract_face_pairing,
    format_off,
    glue,
    off_mesh,
    pairing_violations,
)
from .homology import CoverError, homology, verify_mv_vanishing
from .io import (
    SchemaError,
    canonical_dumps,
    fixture_paths,
    homology_table,
    load_problem,
    oriented_sorted,
    parse_number,
)
from .prism import random_linear_map, verify_homotopy_identity
from .simplex import Perm, RegionSpec, project_to_face, region_contains
from .smoothing import DimensionOverflow, SmoothingMap, max_dim, phi

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_SCHEMA = 2
EXIT_SUBCOMPLEX = 3
EXIT_NOT_CYCLE = 4
EXIT_MISMATCH = 5
EXIT_DIMENSION = 6


class CommandError(Exception):
    def __init__(self, code: int, kind: str, message: str, extra: dict | None = None):
        super().__init__(message)
        self.code = code
        self.kind = kind
        self.extra = extra or {}


def _require(prob, kinds):
    if prob.kind not in kinds:
        raise CommandError(EXIT_SCHEMA, "schema", f"expected a problem of kind {' or '.join(kinds)}, got {prob.kind}")


# --------------------------------------------------------------------------
# commands


def cmd_homology(args) -> dict:
    prob = load_problem(args.input)
    _require(prob, ("complex",))
    K = prob.complex
    if args.subcomplex:
        sub = load_problem(args.subcomplex)
        _require(sub, ("complex",))
        K = K.relative_to(sub.complex)
    groups = homology(K, args.model)
    return {
        "model": args.model,
        "relative": K.subcomplex is not None,
        "f_vector": K.f_vector(),
        "homology": homology_table(groups),
    }


def cmd_glue(args) -> dict:
    prob = load_problem(args.input)
    _require(prob, ("cycle", "chain"))
    s = prob.chain
    try:
        pairing = extract_face_pairing(s)
    except NotACycle as exc:
        raise CommandError(EXIT_NOT_CYCLE, "not_a_cycle", str(exc), {"residue": oriented_sorted(exc.residue)})
    G = glue(s, pairing)
    result = {"pairing": pairing.table(), "violations": pairing_violations(pairing), "glued": G.summary()}
    if args.check_identity:
        K = prob.complex if prob.complex is not None else support(s)
        result["identity"] = check_phi_psi_identity(s, K)
    if args.export_off:
        if G.k != 2:
            warnings.warn(f"OFF export skipped: glued complex has dimension {G.k}, only 2-cells are exported")
            result["off"] = None
        else:
            smap = SmoothingMap(2) if args.subdivide > 1 else None
            verts, faces = off_mesh(G, args.subdivide, smap)
            Path(args.export_off).write_text(format_off(verts, faces), encoding="utf-8")
            result["off"] = {"vertices": len(verts), "faces": len(faces)}
    return result


def cmd_cobordism(args) -> dict:
    prob = load_problem(args.input)
    _require(prob, ("cobordism",))
    try:
        data = extract_cobordism(prob.chain, prob.s0, prob.s1)
    except BoundaryMismatch as exc:
        raise CommandError(EXIT_MISMATCH, "boundary_mismatch", str(exc), {"residue": oriented_sorted(exc.residue)})
    violations = cobordism_violations(data)
    M0 = glue(data.cells0, extract_face_pairing(data.cells0, "open"), allow_open=True) if data.cells0 else None
    M1 = glue(data.cells1, extract_face_pairing(data.cells1, "open"), allow_open=True) if data.cells1 else None
    C = build_cobordism(data, M0, M1)
    return {
        "partition": data.partition_sizes(),
        "boundary_assignment": {
            str(i): [{"cell": j, "slot": [slot.j, slot.p], "perm": list(tau.images)} for j, (slot, tau) in sorted(data.boundary[i].items())]
            for i in (0, 1)
        },
        "sign_conditions": not violations,
        "violations": violations,
        "ends_closed": {"s0": M0 is None or M0.closed, "s1": M1 is None or M1.closed},
        "collared": C.summary(),
        "boundary_matches": cobordism_boundary_matches(C, prob.s0, prob.s1),
    }


def _grid(k: int, n: int) -> list:
    pts = []
    for combo in combinations_with_replacement(range(k + 1), n):
        counts = [0] * (k + 1)
        for c in combo:
            counts[c] += 1
        pts.append(tuple(Fraction(c, n) for c in counts))
    return sorted(set(pts), reverse=True)


def _load_points(path, k: int) -> list:
    import json

    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"malformed JSON: {exc}") from None
    if isinstance(raw, dict):
        raw = raw.get("points")
    if not isinstance(raw, list):
        raise SchemaError("points file must be a list of points or {\"points\": [...]}")
    out = []
    for p in raw:
        if not isinstance(p, list) or len(p) != k + 1:
            raise SchemaError(f"expected points with {k + 1} coordinates")
        vals = [parse_number(v) for v in p]
        if any(v < 0 for v in vals) or abs(float(sum(vals)) - 1.0) > 1e-12:
            raise SchemaError(f"not a barycentric point: {p}")
        out.append(tuple(Fraction(v) if not isinstance(v, float) else v for v in vals))
    return out


def cmd_smoothing_eval(args) -> dict:
    k = args.k
    if k > max_dim():
        raise DimensionOverflow(f"k={k} exceeds ORICHAIN_MAX_DIM={max_dim()}")
    smap = SmoothingMap(k)
    pts = _load_points(args.points, k) if args.points else _grid(k, args.grid)
    arr = np.array([[float(t) for t in p] for p in pts], dtype=float)
    img = phi(smap, arr) if len(arr) else np.zeros((0, k + 1))
    rows, proj_dev = [], 0.0
    for p, x, y in zip(pts, arr, img):
        tags = []
        exact = all(isinstance(t, Fraction) for t in p)
        for q in range(k + 1):
            if exact and region_contains(RegionSpec("U_face", k, q), p)[0]:
                tags.append(f"U_face:{q}")
                proj_dev = max(proj_dev, float(np.max(np.abs(y - np.array([float(t) for t in project_to_face(p, q)])))))
        rows.append({"x": list(p), "phi": [float(v) for v in y], "regions": tags})
    eq_dev = face_dev = 0.0
    if len(arr):
        for tau in Perm.all(k):
            order = np.argsort(tau.images)
            # (tau x)_{tau(q)} = x_q, i.e. column r of tau x is column tau^{-1}(r) of x
            eq_dev = max(eq_dev, float(np.max(np.abs(phi(smap, arr[:, order]) - img[:, order]))))
        for p in range(k + 2):
            face_dev = max(face_dev, float(np.max(np.abs(phi(smap, arr, p=p) - img))))
    tol = 1e-12
    return {
        "k": k,
        "bump": {"lo": smap.bump.lo, "hi": smap.bump.hi},
        "points": rows,
        "checks": {
            "equivariance_max_deviation": eq_dev,
            "projection_max_deviation": proj_dev,
            "face_index_max_deviation": face_dev,
            "tolerance": tol,
            "passed": max(eq_dev, proj_dev, face_dev) <= tol,
        },
    }


def _suite_homotopy(seed: int, samples: int) -> dict:
    rng = random.Random(seed)
    failures = []
    checked = 0
    for k in (1, 2, 3):
        perms = list(Perm.all(k))
        for _ in range(samples):
            f = random_linear_map(k, k, rng)
            tau = rng.choice(perms)
            ok, defect = verify_homotopy_identity([(rng.choice((1, -1, 2)), f, tau)])
            checked += 1
            if not ok:
                failures.append({"k": k, "perm": list(tau.images), "defect_terms": len(defect)})
    return {"checked": checked, "failures": failures, "passed": not failures}


def _check_fixture(path) -> dict:
    try:
        prob = load_problem(path)
    except (SchemaError, NotSubcomplex) as exc:
        return {"file": Path(path).name, "passed": False, "reason": f"unreadable: {exc}"}
    exp = prob.expected
    got: dict = {}
    try:
        if prob.kind == "complex":
            got["homology"] = [g.as_dict() for g in homology(prob.complex)]
            got["homology_ordered"] = [g.as_dict() for g in homology(prob.complex, "ordered")] if prob.complex.dim <= 2 else got["homology"]
            ok = got["homology"] == exp.get("homology") and got["homology_ordered"] == got["homology"]
        elif prob.kind in ("cycle", "chain"):
            G = glue(prob.chain)
            got = {
                "euler_characteristic": G.euler_characteristic,
                "orientation_compatible": G.orientation_compatible,
                "identity": check_phi_psi_identity(prob.chain, support(prob.chain)),
            }
            ok = all(got[key] == exp.get(key) for key in got) and not pairing_violations(G.pairing)
        elif prob.kind == "cobordism":
            data = extract_cobordism(prob.chain, prob.s0, prob.s1)
            M0 = glue(data.cells0, extract_face_pairing(data.cells0, "open"), allow_open=True) if data.cells0 else None
            M1 = glue(data.cells1, extract_face_pairing(data.cells1, "open"), allow_open=True) if data.cells1 else None
            C = build_cobordism(data, M0, M1)
            got = {"boundary_matches": cobordism_boundary_matches(C, prob.s0, prob.s1), "partition": data.partition_sizes()}
            ok = got == {k: exp.get(k) for k in got} and not cobordism_violations(data)
        elif prob.kind == "cover":
            rep = verify_mv_vanishing(prob.complex, prob.cover)
            got = {"hypothesis_holds": rep.hypothesis_holds, "conclusion_holds": rep.conclusion_holds}
            ok = got == {k: exp.get(k) for k in got}
        else:
            ok = False
    except (GluingError, CoverError, ValueError) as exc:
        return {"file": Path(path).name, "passed": False, "reason": f"{type(exc).__name__}: {exc}"}
    out = {"file": Path(path).name, "kind": prob.kind, "passed": bool(ok)}
    if not ok:
        out["expected"] = exp
        out["got"] = got
    return out


def cmd_verify(args) -> dict:
    suites = ("homotopy", "mv", "fixtures") if args.suite == "all" else (args.suite,)
    result = {}
    paths = fixture_paths(args.fixtures)
    if "homotopy" in suites:
        result["homotopy"] = _suite_homotopy(args.seed, args.samples)
    if "mv" in suites:
        reports = []
        for path in paths:
            if path.name.startswith("cover_"):
                reports.append(_check_fixture(path))
        result["mv"] = {"reports": reports, "passed": bool(reports) and all(r["passed"] for r in reports)}
    if "fixtures" in suites:
        reports = [_check_fixture(p) for p in paths]
        result["fixtures"] = {"reports": reports, "passed": bool(reports) and all(r["passed"] for r in reports)}
    result["passed"] = all(v["passed"] for v in result.values())
    return result


# --------------------------------------------------------------------------
# dispatch


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="orichain", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"orichain {__version__}")
    ap.add_argument("-o", "--output", help="write the report here instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="integral homology of a complex or pair")
    p.add_argument("input", help="problem file of kind complex ('-' for stdin)")
    p.add_argument("--model", choices=("oriented", "ordered"), default="oriented")
    p.add_argument("--subcomplex", help="problem file whose complex is taken as the subcomplex")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("glue", help="face pairing and glued pseudomanifold of a cycle")
    p.add_argument("input")
    p.add_argument("--export-off", metavar="PATH")
    p.add_argument("--subdivide", type=int, default=1, help="grid subdivision of each cell for OFF export")
    p.add_argument("--check-identity", action="store_true", help="test that the glued fundamental cycle is homologous to the input")
    p.set_defaults(func=cmd_glue)

    p = sub.add_parser("cobordism", help="cobordism partition and collared boundary check")
    p.add_argument("input")
    p.set_defaults(func=cmd_cobordism)

    p = sub.add_parser("smoothing", help="evaluate the simplex smoothing maps")
    ssub = p.add_subparsers(dest="action", required=True)
    e = ssub.add_parser("eval")
    e.add_argument("--k", type=int, required=True)
    g = e.add_mutually_exclusive_group()
    g.add_argument("--points", help="JSON list of barycentric points (numbers or 'p/q' strings)")
    g.add_argument("--grid", type=int, default=6, help="all points with coordinates in (1/n)Z")
    e.set_defaults(func=cmd_smoothing_eval)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", choices=("homotopy", "mv", "fixtures", "all"), default="all")
    p.add_argument("--fixtures", help="directory of problem files (default: bundled)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=20, help="random generators per k for the homotopy suite")
    p.set_defaults(func=cmd_verify)
    return ap


def _emit(report: dict, output) -> None:
    text = canonical_dumps(report)
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    command = args.command if args.command != "smoothing" else f"smoothing {args.action}"
    report: dict = {"command": command}
    code = EXIT_OK
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            report["result"] = args.func(args)
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        if report["result"].get("passed") is False and args.command == "verify":
            code = EXIT_VERIFY
    except SchemaError as exc:
        code, report["error"] = EXIT_SCHEMA, {"type": "schema", "message": str(exc)}
    except NotSubcomplex as exc:
        code, report["error"] = EXIT_SUBCOMPLEX, {"type": "not_subcomplex", "message": str(exc)}
    except DimensionOverflow as exc:
        code, report["error"] = EXIT_DIMENSION, {"type": "dimension_overflow", "message": str(exc)}
    except CommandError as exc:
        code, report["error"] = exc.code, {"type": exc.kind, "message": str(exc), **exc.extra}
    report["exit_code"] = code
    _emit(report, args.output)
    if "error" in report:
        print(f"orichain: {report['error']['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
