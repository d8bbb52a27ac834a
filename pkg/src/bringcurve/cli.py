"""Command-line pipeline driver.

Each stage writes ``report.json`` (plus named artifacts) into the output
directory and prints a short summary; ``verify-all`` runs the full
acceptance battery and exits nonzero on any mismatch.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from . import curves, periods
from .config import PipelineConfig
from .continuation import INFINITY, ContinuationError, branch_points
from .pipeline import Engine
from .verify import run_all

SCHEMA_VERSION = 1

EXIT_INVALID_INPUT = 2
EXIT_NUMERICAL_FAILURE = 3
EXIT_VERIFICATION_MISMATCH = 4


def _jsonable(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.complexfloating):
        return [float(obj.real), float(obj.imag)]
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return [_jsonable(x) for x in obj.tolist()]
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    return obj


def _write_json(path: Path, payload: dict, config: PipelineConfig):
    payload = dict(payload)
    payload["schema_version"] = SCHEMA_VERSION
    payload["seed"] = config.seed
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_jsonable(payload), sort_keys=True, indent=2) + "\n")


def _write_report(out: Path, stage: str, payload: dict, config: PipelineConfig,
                  also: str | None = None):
    payload = {"stage": stage, **payload}
    _write_json(out / "report.json", payload, config)
    if also:
        _write_json(out / also, payload, config)


# ---------------------------------------------------------------------------
# stages
# ---------------------------------------------------------------------------

def stage_curve(engine: Engine, out: Path):
    rep = curves.verify_equivalence(20, seed=engine.config.seed)
    sing = curves.singular_points()
    payload = {
        "hulek_craig_coefficients": {str(k): int(v.real)
                                     for k, v in engine.curve.coefficients.items()},
        "equivalence": {
            "residual_published_constant": rep.max_residual,
            "residual_fitted_constant": rep.max_residual_fitted,
            "fitted_constant": rep.fitted_constant,
            "published_constant": rep.reference_constant,
        },
        "singular_points": [list(p) for p in sing],
        "ramanujan_residual_q_0.1": curves.ramanujan_check(0.1),
        "discriminant_coefficients": curves.discriminant_x(),
    }
    _write_report(out, "curve", payload, engine.config)
    return payload


def stage_branch_points(engine: Engine, out: Path):
    pts = branch_points()
    payload = {
        "count": len(pts),
        "points": [("inf" if p == INFINITY else p) for p in pts],
        "moduli": [(None if p == INFINITY else abs(p)) for p in pts],
    }
    _write_report(out, "branch-points", payload, engine.config)
    return payload


def stage_monodromy(engine: Engine, out: Path):
    data = engine.monodromy_data
    payload = {
        "base_point": 2.0,
        "sheet_order": "lexicographic by (Re y, Im y) over the base fiber",
        "entries": [{
            "branch_point": ("inf" if d.branch_point == INFINITY else d.branch_point),
            "permutation": list(d.permutation),
            "cycle_type": list(d.cycle_type()),
        } for d in data],
        "genus": engine.genus,
    }
    _write_report(out, "monodromy", payload, engine.config, also="monodromy.json")
    return payload


def stage_real_paths(engine: Engine, out: Path):
    rep = engine.real_paths
    payload = {"oval_count": rep.oval_count, "crossing_data": rep.crossing_data}
    _write_report(out, "real-paths", payload, engine.config)
    out.mkdir(parents=True, exist_ok=True)
    with (out / "real_paths.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["label", "x", "y"])
        for (_, label, samples) in rep.segments:
            for x, y in samples:
                w.writerow([label, repr(float(x)), repr(float(y))])
    return payload


def stage_homology(engine: Engine, out: Path):
    payload = {
        "intersection_matrix": engine.intersections,
        "basis_change_rows": engine.basis_change,
        "phi_action_alpha": engine.phi_action_alpha,
        "phi_action_canonical": engine.phi_action,
        "conjugation_action_alpha": engine.conjugation_action_alpha,
        "cycles": [c.to_jsonable() for c in engine.alphas],
    }
    _write_report(out, "homology", payload, engine.config, also="homology.json")
    out.mkdir(parents=True, exist_ok=True)
    with (out / "cycles.csv").open("w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["cycle", "leg", "x_re", "x_im", "sheet"])
        for i, c in enumerate(engine.alphas):
            for j, leg in enumerate(c.to_jsonable()):
                seg, _ = c.legs[j]
                for t in np.linspace(0.0, 1.0, 16, endpoint=False):
                    p = seg.at(t)
                    w.writerow([i + 1, j, repr(p.real), repr(p.imag), leg["sheet"]])
    return payload


def stage_periods(engine: Engine, out: Path):
    pd = engine.period_data
    scales, resid = periods.structured_a_matrix_fit(pd.a_periods)
    payload = {
        "pi_alpha": pd.pi_alpha,
        "a_periods": pd.a_periods,
        "b_periods": pd.b_periods,
        "tau": pd.tau,
        "tau0": pd.tau0,
        "tau_fit_residual": pd.tau_fit_residual,
        "j_tau0": periods.klein_j(pd.tau0),
        "j_5tau0": periods.klein_j(5.0 * pd.tau0),
        "symmetry_relation_residual": periods.verify_symmetry_relation(
            engine.phi_action, periods.PHI_DIFFERENTIAL_ACTION, pd.pi_canonical),
        "structured_a_fit_residual": resid,
        "structured_a_scales": scales,
    }
    _write_report(out, "periods", payload, engine.config, also="periods.json")
    return payload


def stage_riemann_constants(engine: Engine, out: Path):
    cons = engine.two_k_constraints
    res = engine.half_period_result
    tor = engine.torsion_report
    payload = {
        "snf_diagonal": list(cons.snf_diagonal),
        "congruences": [{"coefficients": list(c), "modulus": m}
                        for c, m in cons.congruences],
        "two_K_candidates": [{"n": list(c.n), "value": c.value}
                             for c in cons.candidates],
        "resolved_2K": {"n": list(engine.resolved_two_k.n),
                        "value": engine.resolved_two_k.value},
        "canonical_divisor_2K": engine.canonical_divisor_two_k,
        "K_Q": res.K,
        "half_period_shift": list(res.shift),
        "theta_vanishing_score": res.vanishing_score,
        "theta_separation": res.separation,
        "divisor_seed": res.divisor_seed,
        "direct_K": engine.direct_k_result.K,
        "direct_K_loop_period_error": engine.direct_k_result.loop_period_error,
        "torsion_checks": {
            "ten_K_distance": tor.ten_K_distance,
            "psi_orbit_distance": tor.psi_orbit_distance,
            "K_itself_distance": tor.K_not_lattice_distance,
        },
        "invariant_characteristic": [list(ch.a + ch.b)
                                     for ch in engine.invariant_characteristics],
    }
    _write_report(out, "riemann-constants", payload, engine.config,
                  also="riemann_constants.json")
    return payload


def stage_verify_all(engine: Engine, out: Path):
    results = run_all(engine)
    payload = {"criteria": [{
        "id": r.cid, "label": r.label, "passed": r.passed, "details": r.details,
    } for r in results]}
    _write_report(out, "verify-all", payload, engine.config)
    for r in results:
        print(r.line())
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    return payload, failed


STAGES = {
    "curve": stage_curve,
    "branch-points": stage_branch_points,
    "monodromy": stage_monodromy,
    "real-paths": stage_real_paths,
    "homology": stage_homology,
    "periods": stage_periods,
    "riemann-constants": stage_riemann_constants,
}


def _maybe_reload(engine: Engine, out: Path):
    """Reuse period data from an earlier run of the periods stage."""
    path = out / "periods.json"
    if not path.exists():
        return
    try:
        data = json.loads(path.read_text())
        if data.get("schema_version") != SCHEMA_VERSION or data.get("seed") != engine.config.seed:
            return
        def arr(key):
            return np.array([[complex(re, im) for re, im in row] for row in data[key]])
        pi_alpha = arr("pi_alpha")
        from .homology import CANONICAL_COMBINATIONS
        pi_c = CANONICAL_COMBINATIONS @ pi_alpha
        pd = periods.PeriodData(
            pi_alpha=pi_alpha, pi_canonical=pi_c,
            a_periods=arr("a_periods"), b_periods=arr("b_periods"),
            tau=arr("tau"), tau0=complex(*data["tau0"]),
            tau_fit_residual=float(data["tau_fit_residual"]))
        engine.__dict__["period_data"] = pd
    except (KeyError, ValueError, TypeError):
        return


def build_parser():
    p = argparse.ArgumentParser(
        prog="bringcurve",
        description="Periods, homology and Riemann constants of Bring's curve "
                    "from its plane sextic model.")
    p.add_argument("stage", choices=list(STAGES) + ["verify-all"])
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--seed", type=int, default=PipelineConfig.seed)
    p.add_argument("--tol-periods", type=float, default=PipelineConfig.tol_periods)
    p.add_argument("--tol-theta", type=float, default=PipelineConfig.tol_theta)
    p.add_argument("--quad-order", type=int, default=PipelineConfig.quad_order)
    p.add_argument("--theta-radius", type=int, default=None,
                   help="override the theta truncation radius")
    p.add_argument("--json", action="store_true",
                   help="also print the stage report to stdout")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = PipelineConfig(seed=args.seed, tol_periods=args.tol_periods,
                                tol_theta=args.tol_theta, quad_order=args.quad_order,
                                theta_radius_override=args.theta_radius,
                                out_dir=args.out)
    except ValueError as exc:
        print(f"invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID_INPUT
    engine = Engine(config)
    out = Path(args.out)
    try:
        if args.stage == "verify-all":
            payload, failed = stage_verify_all(engine, out)
            if args.json:
                print(json.dumps(_jsonable(payload), sort_keys=True, indent=2))
            return EXIT_VERIFICATION_MISMATCH if failed else 0
        _maybe_reload(engine, out)
        payload = STAGES[args.stage](engine, out)
        if args.json:
            print(json.dumps(_jsonable(payload), sort_keys=True, indent=2))
        print(f"stage {args.stage!r} written to {out}/")
        return 0
    except (ContinuationError, ArithmeticError, AssertionError, RuntimeError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL_FAILURE


if __name__ == "__main__":
    sys.exit(main())
