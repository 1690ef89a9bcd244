"""Command-line entry point: ``planarends <command> [options]``.

Every command prints one summary line, optionally writes a JSON report with
``--out``, and exits with 0 (certified), 1 (certification failed) or 2
(usage error).
"""

from __future__ import annotations

import argparse
import logging
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import io
from .algebra import default_precision

log = logging.getLogger("planarends")

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
MIN_PRECISION = 30


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    k: int = 4
    precision: int = field(default_factory=default_precision)
    output_path: str | None = None
    grid: tuple = (512, 1024)
    exclusion: float = 0.02
    variant: str | None = None
    seed: int = 0

    def __post_init__(self):
        if self.precision < MIN_PRECISION:
            raise UsageError(f"--precision must be at least {MIN_PRECISION}, got {self.precision}")
        if self.k < 0:
            raise UsageError("--k must be a natural number")


def _need(cond: bool, message: str) -> None:
    if not cond:
        raise UsageError(message)


def _select_map(cfg: RunConfig):
    from .klein import paper_F, pipeline

    variant = cfg.variant or "pipeline"
    if variant == "pipeline":
        _need(cfg.k >= 4, f"pipeline needs k >= 4 (k={cfg.k})")
        return pipeline(cfg.k, cfg.precision)
    if variant == "pengxiao":
        _need(cfg.k == 4, "the pengxiao variant exists only for k = 4")
    else:
        _need(cfg.k >= 4, f"the section2 closed form needs k >= 4 (k={cfg.k})")
    return paper_F(cfg.k, variant, cfg.precision)


def cmd_verify_contact(cfg: RunConfig):
    from .contact import (
        DegenerateCurveError,
        branch_divisor,
        contact_curve,
        curve_degree,
        nondegenerate,
        verify_contact,
    )

    try:
        c = contact_curve(cfg.k)
    except DegenerateCurveError as exc:
        raise UsageError(str(exc)) from exc
    ok, cert = verify_contact(c)
    div = branch_divisor(c, cfg.precision)
    record = {
        "k": cfg.k,
        "contact": ok,
        "certificate": cert,
        "degree": curve_degree(c),
        "nondegenerate": nondegenerate(c),
        "branch_total": div.total,
        "branch_at_infinity": div.at_infinity(),
        "branch_divisor": div,
    }
    summary = (f"verify-contact k={cfg.k}: contact={ok} degree={record['degree']} "
               f"branch_total={div.total} nondegenerate={record['nondegenerate']}")
    return ok, record, summary


def cmd_pipeline(cfg: RunConfig):
    from .klein import certify_pipeline

    _need(cfg.k >= 4, f"pipeline needs k >= 4 (k={cfg.k}); k=3 degenerates to a point")
    F, record = certify_pipeline(cfg.k, cfg.precision)
    summary = (f"pipeline k={cfg.k}: certified={record['certified']} poles={record['pole_count']} "
               f"simple={record['simple_poles']} null={record['null_ok']}")
    return record["certified"], {"certificate": record, "F": F}, summary


def cmd_verify_paper_f(cfg: RunConfig):
    from .klein import paper_F, pole_structure, verify_null_C3

    variant = cfg.variant or "section2"
    _need(variant in ("section2", "pengxiao"), f"unknown variant {variant!r}")
    _need(cfg.k >= 4, f"the closed form needs k >= 4 (k={cfg.k})")
    _need(variant == "section2" or cfg.k == 4, "the pengxiao variant exists only for k = 4")
    F = paper_F(cfg.k, variant, cfg.precision)
    null_ok, residual = verify_null_C3(F, seed=cfg.seed)
    poles = pole_structure(F, cfg.precision)
    simple = all(p.order == 1 for p in poles)
    ok = bool(null_ok and simple and len(poles) == 2 * cfg.k + 1)
    record = {"k": cfg.k, "variant": variant, "null_ok": null_ok,
              "null_residual": residual if not F.exact else None,
              "pole_count": len(poles), "simple_poles": simple, "poles": poles}
    summary = f"verify-paper-f k={cfg.k} variant={variant}: null={null_ok} poles={len(poles)} simple={simple}"
    return ok, record, summary


def cmd_solve_pengxiao(cfg: RunConfig):
    from .weierstrass import continuation_initial, paper_params_k4, residue_system, solve_residues

    _need(cfg.k >= 4, f"the residue system is solved for k >= 4 (k={cfg.k})")
    start = paper_params_k4(cfg.precision) if cfg.k == 4 else continuation_initial(cfg.k, cfg.precision)
    params = solve_residues(cfg.k, start, cfg.precision, seed=cfg.seed, log=log.debug)
    worst = max(abs(r) for r in residue_system(params, cfg.precision))
    ok = worst < 10.0 ** (-(cfg.precision - 20))
    record = {"params": params, "max_residual": worst}
    vals = " ".join(f"{name}={float(v.real):.6g}" for name, v in zip(("a", "b", "c", "lambda"), params.values))
    summary = f"solve-pengxiao k={cfg.k}: {vals} max_residual={float(worst):.2e}"
    return ok, record, summary


def cmd_energy(cfg: RunConfig):
    from .geometry import MeshSpec, QuadratureError, total_curvature

    F = _select_map(cfg)
    mesh = MeshSpec(grid=cfg.grid, exclusion_radius=cfg.exclusion)
    try:
        report = total_curvature(F, mesh, precision=cfg.precision)
    except QuadratureError as exc:
        return False, {"error": str(exc)}, f"energy k={cfg.k}: {exc}"
    summary = (f"energy k={cfg.k}: n={report.n} willmore={report.willmore:.8f} "
               f"quadrature={report.quadrature_estimate:.8f} rel_err={report.relative_error:.2e} "
               f"converged={report.converged}")
    return report.converged, report, summary


def cmd_mesh(cfg: RunConfig):
    from .geometry import MeshSpec, make_mesh, write_obj, write_s3_sidecar

    F = _select_map(cfg)
    mesh = make_mesh(F, MeshSpec(grid=cfg.grid, exclusion_radius=cfg.exclusion), cfg.precision)
    record = {"vertices": len(mesh.vertices), "faces": len(mesh.faces), "excluded": mesh.excluded,
              "boundary_loops": mesh.boundary_loops}
    if cfg.output_path:
        stem = Path(cfg.output_path).with_suffix("")
        write_obj(mesh, f"{stem}.obj")
        write_obj(mesh, f"{stem}-s3.obj", view="s3")
        write_s3_sidecar(mesh, f"{stem}-s3.json")
        record["files"] = [f"{stem}.obj", f"{stem}-s3.obj", f"{stem}-s3.json"]
    summary = (f"mesh k={cfg.k}: vertices={record['vertices']} faces={record['faces']} "
               f"boundary_loops={record['boundary_loops']}")
    # the json report goes next to the meshes, not over the OBJ
    cfg.output_path = f"{stem}.json" if cfg.output_path else None
    return True, record, summary


def run_self_test(precision: int = 60) -> dict:
    """Isometry Gram check, the k=4 fixtures and the embedding round trip."""
    from .contact import branch_divisor, contact_curve, verify_contact
    from .klein import (
        certify_pipeline,
        isometry_self_test,
        paper_F,
        pole_structure,
        psi_embed,
        psi_invert,
        verify_null_C3,
    )
    from .weierstrass import paper_params_k4, residue_system

    checks = {}
    checks["isometry_gram"] = isometry_self_test()[0]
    c = contact_curve(4)
    div = branch_divisor(c, precision)
    checks["contact_k4"] = verify_contact(c)[0] and c.degree == 8 and div.total == 5
    F, record = certify_pipeline(4, precision)
    checks["pipeline_k4"] = record["certified"]
    checks["paper_F_k4_null"] = verify_null_C3(paper_F(4))[0]
    px = paper_F(4, "pengxiao", precision)
    checks["pengxiao_F_null"] = verify_null_C3(px)[0] and len(pole_structure(px, precision)) == 9
    res = residue_system(paper_params_k4(precision), precision)
    checks["pengxiao_residues"] = max(abs(r) for r in res) < 1e-35
    checks["psi_roundtrip"] = psi_invert(psi_embed(F)).F == F.F
    return checks


def cmd_self_test(cfg: RunConfig):
    checks = run_self_test(cfg.precision)
    ok = all(checks.values())
    failed = [k for k, v in checks.items() if not v]
    summary = f"self-test: {sum(checks.values())}/{len(checks)} passed" + (f" (failed: {failed})" if failed else "")
    return ok, checks, summary


COMMANDS = {
    "verify-contact": cmd_verify_contact,
    "pipeline": cmd_pipeline,
    "verify-paper-f": cmd_verify_paper_f,
    "solve-pengxiao": cmd_solve_pengxiao,
    "energy": cmd_energy,
    "mesh": cmd_mesh,
    "self-test": cmd_self_test,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="planarends",
        description="Certify and compute genus-0 minimal surfaces with 2k+1 embedded planar ends.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log solver progress")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        p = sub.add_parser(name)
        p.add_argument("--precision", type=int, default=None,
                       help="decimal digits (>= 30; default from WF_PRECISION or 60)")
        p.add_argument("--out", dest="output_path", default=None, help="write the JSON report here")
        if name == "self-test":
            continue
        p.add_argument("--k", type=int, default=4, help="the surface has 2k+1 ends")
        p.add_argument("--seed", type=int, default=0)
        if name in ("verify-paper-f", "energy", "mesh"):
            choices = ("section2", "pengxiao") if name == "verify-paper-f" else ("pipeline", "section2", "pengxiao")
            p.add_argument("--variant", choices=choices, default=None)
        if name in ("energy", "mesh"):
            default_grid = (512, 1024) if name == "energy" else (32, 64)
            p.add_argument("--grid", type=int, nargs=2, metavar=("RADIAL", "ANGULAR"), default=default_grid)
            p.add_argument("--exclusion", type=float, default=0.02, help="exclusion radius around ends")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    options = {k: v for k, v in vars(args).items() if k not in ("verbose",) and v is not None}
    if "grid" in options:
        options["grid"] = tuple(options["grid"])
    try:
        cfg = RunConfig(**options)
        t0 = time.perf_counter()
        ok, record, summary = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        # invalid parameters surfaced by the library (e.g. excluded k, bad mesh spec)
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    log.debug("%s finished in %.2fs", cfg.command, time.perf_counter() - t0)
    if cfg.output_path:
        io.write_json(record, cfg.output_path)
    print(summary)
    return EXIT_OK if ok else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
