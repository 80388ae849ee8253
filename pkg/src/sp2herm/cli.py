"""Command line front end.

Subcommands cover the full pipeline: inspect a surface, draw random
coordinates, build the representation, read coordinates back, check the
round trip, run a component census, and exercise the classical matrix
realizations.  Every subcommand produces a JSON payload and a short
human-readable report ending in PASS/FAIL when checks run.  With --out
the payload goes to the file and the report owns stdout; without it the
payload owns stdout (pure JSON, pipeable) and the report moves to
stderr.  Exit status is 0 only when every check passes, 1 when a check
fails and 2 on bad input, which also emits a machine-readable error
object.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .algebra import AlgebraDescriptor
from .errors import Sp2HermError
from .parametrization import (
    CLOSURE_SLACK,
    CoordinateVector,
    FramedRepresentation,
    component_label,
    count_components,
    extract,
    maximality_margin,
    sample_coordinates,
    synthesize,
    verify_adapted,
    verify_closure,
    verify_equivariance,
    verify_maximal,
)
from .realizations import (
    classical_form,
    embed_symplectic,
    is_compact_matrix,
    preserves_form,
)
from .surfaces import BUNDLED_SURFACES, FundamentalPolygon, bundled_surface
from .symplectic import sample_ksp2, sample_sp2, sp2_residual


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _emit(payload, out: str | None, report: list[str],
          verdict: bool | None = None) -> int:
    # with --out the report owns stdout; otherwise the payload does
    lines = list(report)
    if verdict is not None:
        lines.append("PASS" if verdict else "FAIL")
    if out:
        Path(out).write_text(_dump(payload))
        for line in lines:
            print(line)
    else:
        for line in lines:
            print(line, file=sys.stderr)
        sys.stdout.write(_dump(payload))
    return 1 if verdict is False else 0


def _load_json(path: str):
    return json.loads(Path(path).read_text())


def _load_surface(name: str) -> FundamentalPolygon:
    if name in BUNDLED_SURFACES:
        return bundled_surface(name)
    if Path(name).exists():
        return FundamentalPolygon.from_data(_load_json(name))
    raise ValueError(
        f"unknown surface {name!r}; bundled: {', '.join(BUNDLED_SURFACES)}"
    )


def _descriptor(args) -> AlgebraDescriptor:
    return AlgebraDescriptor(args.algebra, args.n, tol=args.tol)


def cmd_surface_info(args) -> int:
    poly = _load_surface(args.surface)
    d = poly.descriptor
    payload = {
        "surface": poly.to_data(),
        "descriptor": d.to_data(),
        "euler_characteristic": poly.stats.chi,
        "triangles": poly.n_triangles,
        "internal_edges": poly.stats.internal_edges,
        "diagonals": len(poly.diagonal_ids),
        "pairings": len(poly.pairing_ids),
        "vertex_orbits": len(set(poly.corner_orbit.values())),
    }
    report = [
        f"triangles: {poly.n_triangles}",
        f"internal edges: {poly.stats.internal_edges}",
        f"diagonals: {len(poly.diagonal_ids)}",
        f"pairings: {len(poly.pairing_ids)}",
        f"euler characteristic: {poly.stats.chi}",
        f"genus: {d.genus}",
        f"internal punctures: {d.internal_punctures}",
        f"boundary components: {d.boundary_components}",
        f"boundary punctures: {d.boundary_punctures}",
    ]
    return _emit(payload, args.out, report)


def cmd_sample(args) -> int:
    poly = _load_surface(args.surface)
    desc = _descriptor(args)
    coords = sample_coordinates(poly, desc, seed=args.seed)
    return _emit(coords.to_data(), args.out,
                 [f"sampled {len(coords.b)} positive and "
                  f"{len(coords.u)} unitary slots"])


def _rep_checks(ls, fr, coords, tol: float) -> tuple[dict, bool]:
    closure = verify_closure(ls, coords)
    membership = max(sp2_residual(*g.blocks()) for g in fr.rho.values()) if fr.rho else 0.0
    adapted = verify_adapted(ls, fr)
    equiv = verify_equivariance(fr)
    maximal = verify_maximal(fr)
    margin = maximality_margin(fr)
    slack = CLOSURE_SLACK * tol
    checks = {
        "cycle_closure_residual": float(closure),
        "generator_membership_residual": float(membership),
        "adapted_residual": float(adapted),
        "equivariance_residual": float(equiv),
        "maximal": bool(maximal),
        "maximality_margin": float(margin),
    }
    ok = (closure <= slack and membership <= slack and adapted <= slack
          and equiv <= slack and maximal)
    return checks, ok


def cmd_synthesize(args) -> int:
    poly = _load_surface(args.surface)
    coords = CoordinateVector.from_data(_load_json(args.coords), tol=args.tol)
    ls, fr = synthesize(poly, coords, base=args.base)
    checks, ok = _rep_checks(ls, fr, coords, args.tol)
    report = [f"{k}: {v}" for k, v in checks.items()]
    return _emit(fr.to_data(), args.out, report, verdict=ok)


def cmd_extract(args) -> int:
    poly = _load_surface(args.surface)
    fr = FramedRepresentation.from_data(poly, _load_json(args.rep), tol=args.tol)
    coords = extract(fr, base=args.base)
    label = component_label(coords)
    return _emit(coords.to_data(), args.out,
                 [f"component label: {list(label)}"])


def cmd_roundtrip(args) -> int:
    poly = _load_surface(args.surface)
    desc = _descriptor(args)
    coords = sample_coordinates(poly, desc, seed=args.seed)
    ls, fr = synthesize(poly, coords, base=args.base)
    checks, rep_ok = _rep_checks(ls, fr, coords, args.tol)
    back = extract(fr, base=args.base)
    deviation = coords.distance(back)
    checks["roundtrip_deviation"] = float(deviation)
    ok = rep_ok and deviation <= CLOSURE_SLACK * args.tol
    report = [f"{k}: {v}" for k, v in checks.items()]
    return _emit(checks, args.out, report, verdict=ok)


def cmd_components(args) -> int:
    poly = _load_surface(args.surface)
    desc = _descriptor(args)
    expected = count_components(poly.descriptor, desc)
    counts: dict[tuple, int] = {}
    for k in range(args.samples):
        coords = sample_coordinates(poly, desc, seed=args.seed + k)
        label = component_label(coords)
        counts[label] = counts.get(label, 0) + 1
    ok = len(counts) == expected
    payload = {
        "expected_components": expected,
        "observed_labels": {",".join(map(str, k)): v for k, v in sorted(counts.items())},
        "samples": args.samples,
    }
    report = [
        f"expected components: {expected}",
        f"observed labels: {len(counts)} across {args.samples} samples",
    ]
    for label, cnt in sorted(counts.items()):
        report.append(f"  label {list(label)}: {cnt}")
    return _emit(payload, args.out, report, verdict=ok)


def cmd_realize(args) -> int:
    desc = _descriptor(args)
    form = classical_form(desc)
    rng = np.random.default_rng(args.seed)
    preserved = perturbed_fail = compact = 0
    for k in range(args.samples):
        g = embed_symplectic(sample_sp2(desc, seed=args.seed + k))
        preserved += preserves_form(g, form)
        bad = g.copy()
        i, j = rng.integers(0, g.shape[0], size=2)
        bad[i, j] += 0.1 * max(1.0, np.abs(g[i, j]))
        perturbed_fail += not preserves_form(bad, form)
        u = embed_symplectic(sample_ksp2(desc, seed=args.seed + k))
        compact += is_compact_matrix(u, tol=args.tol) and preserves_form(u, form)
    ok = preserved == perturbed_fail == compact == args.samples
    payload = {
        "realization": form.label,
        "matrix_size": form.size,
        "samples": args.samples,
        "preserved": preserved,
        "perturbed_rejected": perturbed_fail,
        "compact_unitary": compact,
    }
    report = [
        f"realization: {form.label} on matrices of size {form.size}",
        f"form preserved: {preserved}/{args.samples}",
        f"perturbations rejected: {perturbed_fail}/{args.samples}",
        f"compact samples unitary: {compact}/{args.samples}",
    ]
    return _emit(payload, args.out, report, verdict=ok)


def _add_common(p, surface=True, algebra=True):
    if surface:
        p.add_argument("--surface", required=True,
                       help="bundled surface name or path to a surface JSON file")
    if algebra:
        p.add_argument("--algebra", choices=("R", "C", "H"), default="R")
        p.add_argument("--n", type=int, default=2, help="matrix size of the algebra")
        p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out", help="write the JSON payload to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sp2herm",
        description="maximal framed representations over Hermitian matrix algebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("surface-info", help="validate a surface and print its invariants")
    _add_common(p, algebra=False)
    p.set_defaults(func=cmd_surface_info)

    p = sub.add_parser("sample", help="draw a random coordinate vector")
    _add_common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("synthesize", help="build the representation from coordinates")
    _add_common(p, algebra=False)
    p.add_argument("--coords", required=True, help="coordinate JSON file")
    p.add_argument("--base", type=int, default=0, help="base triangle index")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("extract", help="read coordinates off a representation")
    _add_common(p, algebra=False)
    p.add_argument("--rep", required=True, help="representation JSON file")
    p.add_argument("--base", type=int, default=0, help="base triangle index")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("roundtrip", help="sample, synthesize, extract and compare")
    _add_common(p)
    p.add_argument("--base", type=int, default=0, help="base triangle index")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("components", help="Monte Carlo census of connected components")
    _add_common(p)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("realize", help="check the classical matrix realization")
    _add_common(p, surface=False)
    p.add_argument("--samples", type=int, default=20)
    p.set_defaults(func=cmd_realize)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (Sp2HermError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stdout.write(_dump({"error": type(exc).__name__, "message": str(exc)}))
        return 2


if __name__ == "__main__":
    sys.exit(main())
