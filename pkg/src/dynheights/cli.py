"""Batch command-line front end.

Commands: lambda1, orbit, alpha, canh, ks-verify, sweep-periodic, bundle,
lattice, chow.  Reports are JSON (orbit tables CSV), deterministic under
--reproducible: no timestamps, sorted keys, fixed iteration orders.

Exit codes: 0 success, 2 config error, 3 mathematical precondition failure,
4 resource limit.
"""

import argparse
import csv
import datetime
import io
import json
import sys
from fractions import Fraction

from . import schemas
from ._logs import DEFAULT_LOG_DIGITS
from .bbforms import (
    induced_top_form,
    isometry_check,
    isotropy_and_bigness_report,
    signature,
)
from .bundles import (
    BundleEndoData,
    HNType,
    degree_identity_check,
    dichotomy_classify,
    nef_generators,
    pullback_action,
    slope_stats,
)
from .canonical import (
    alpha_estimate,
    canonical_forward,
    canonical_pair,
    ks_report,
    periodicity_test,
)
from .configio import (
    build_chow,
    build_lattice,
    build_system,
    config_cone,
    config_gram_form,
    config_point,
    fraction_str,
    interval_json,
    load_config,
    parse_rational,
    ran_json,
    round_up_str,
    validate,
)
from .errors import (
    DegenerateFiber,
    DomainError,
    InvalidInput,
    InvariantViolation,
    PreconditionError,
    ResourceLimit,
)
from .exactreal import compare_with_rational, Order
from .heights import MultiProjSpace, enumerate_bounded_points
from .lattice import (
    condition_A,
    condition_B,
    eigenvector_pair,
    middle_index_ell,
    spectral_radius,
)
from .systems import iterate_orbit

DEFAULTS = {
    "orbit_steps": 25,
    "tate_steps": 8,
    "precision_digits": DEFAULT_LOG_DIGITS,
    "coord_cap_bits": 10**6,
    "house_bound": 3,
    "max_period": 6,
    "height_bound": "60",
    "eigen_eps": "1/100000000",
    "workers": 1,
}


def _interval_report(box):
    out = interval_json(box)
    out["approx"] = repr(float(box.midpoint))
    return out


def _ran_report(x):
    out = ran_json(x)
    out["approx"] = repr(x.to_float())
    return out


def _effective_options(config, args):
    opts = dict(DEFAULTS)
    opts.update(config.get("options", {}))
    if args.steps is not None:
        opts["orbit_steps"] = args.steps
    if args.tate_steps is not None:
        opts["tate_steps"] = args.tate_steps
    if args.precision is not None:
        opts["precision_digits"] = args.precision
    if getattr(args, "house_bound", None) is not None:
        opts["house_bound"] = args.house_bound
    if getattr(args, "max_period", None) is not None:
        opts["max_period"] = args.max_period
    if getattr(args, "workers", None) is not None:
        opts["workers"] = args.workers
    return opts


def _emit(args, payload, schema=schemas.GENERIC_REPORT):
    if not args.reproducible:
        payload = dict(payload)
        payload["generated_at"] = datetime.datetime.now(
            datetime.timezone.utc).isoformat()
    validate(payload, schema)
    text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _house_repr(h):
    if h is None:
        return "?"
    h = int(h)
    if h.bit_length() <= 256:
        return str(h)
    return f"~2^{h.bit_length() - 1}"


def _system_and_point(args, needs_point=True):
    config = load_config(args.config)
    system = build_system(config)
    opts = _effective_options(config, args)
    point = None
    if needs_point:
        name = args.point or "sample"
        point = config_point(system, config, name)
    return config, system, opts, point


def cmd_lambda1(args):
    config, system, opts, _ = _system_and_point(args, needs_point=False)
    rho = spectral_radius(system.pullback_matrix())
    report = {
        "command": "lambda1",
        "lambda1": _ran_report(rho),
        "char_poly_factor": [int(c) for c in rho.poly.coeffs],
        "is_one": compare_with_rational(rho, 1) == Order.Equal,
    }
    _emit(args, report)
    return 0


def _run_orbit(args, with_summary):
    config, system, opts, point = _system_and_point(args)
    steps = opts["orbit_steps"]
    n_basis = system.num_basis_factors
    classes = {"ample": tuple(Fraction(1) for _ in range(n_basis))}
    exit_code = 0
    try:
        orbit = iterate_orbit(system, point, steps, classes,
                              opts["precision_digits"],
                              opts["coord_cap_bits"])
    except ResourceLimit as exc:
        orbit = exc.partial
        exit_code = 4
    rows = []
    for e in orbit.entries:
        h = e.class_heights["ample"]
        hp = e.class_h_plus["ample"]
        rows.append({
            "n": e.n,
            "houses": ";".join(_house_repr(x) for x in e.heights.houses),
            "h": repr(float(h.midpoint)),
            "h_err": repr(float(h.width)),
            "h_plus": repr(float(hp.midpoint)),
        })
    if args.format == "csv" or not with_summary:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=["n", "houses", "h", "h_err",
                                                 "h_plus"])
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
        if args.out:
            with open(args.out, "w") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
    if with_summary or args.format == "json":
        payload = {"command": "alpha", "complete": orbit.complete,
                   "abort_reason": orbit.abort_reason,
                   "rows": rows if args.format != "csv" else None}
        if len(orbit.entries) >= 3:
            est = alpha_estimate(orbit, "ample")
            payload["alpha"] = {
                "root_estimate": _interval_report(est.root_estimate),
                "ratio_estimate": _interval_report(est.ratio_estimate),
                "iterations": est.iterations,
            }
        out_holder = args.out
        if args.format == "csv" and with_summary:
            args.out = None  # summary to stdout next to the CSV file
        _emit(args, payload)
        args.out = out_holder
    return exit_code


def cmd_orbit(args):
    return _run_orbit(args, with_summary=False)


def cmd_alpha(args):
    return _run_orbit(args, with_summary=True)


def _canonical_result(config, system, opts, point):
    cone = config_cone(config)
    pm = system.pullback_matrix()
    if pm.is_automorphism and cone is not None:
        pair = eigenvector_pair(pm, cone,
                                parse_rational(opts.get(
                                    "eigen_eps", DEFAULTS["eigen_eps"])))
        return canonical_pair(system, point, pair, opts["tate_steps"],
                              opts["precision_digits"],
                              opts["coord_cap_bits"]), pair
    rho = spectral_radius(pm)
    n_basis = system.num_basis_factors
    weights = tuple(Fraction(1) for _ in range(n_basis))
    return canonical_forward(system, point, weights, rho,
                             opts["tate_steps"], opts["precision_digits"],
                             opts["coord_cap_bits"]), None


def _canonical_json(result):
    return {
        "hhat_plus": _interval_report(result.hhat_plus),
        "hhat_minus": _interval_report(result.hhat_minus),
        "hhat": _interval_report(result.hhat),
        "iterations_used": result.iterations_used,
        "tate_constant_estimate": round_up_str(
            result.tate_constant_estimate),
        "error_bound": round_up_str(result.error_bound),
        "caveat": result.caveat,
    }


def cmd_canh(args):
    config, system, opts, point = _system_and_point(args)
    result, _ = _canonical_result(config, system, opts, point)
    _emit(args, {"command": "canh", "canonical": _canonical_json(result)})
    return 0


def cmd_ks_verify(args):
    config, system, opts, point = _system_and_point(args)
    cone = config_cone(config)
    form = config_gram_form(config)
    report = ks_report(system, point, opts["orbit_steps"],
                       opts["tate_steps"], cone, form,
                       digits=opts["precision_digits"],
                       coord_cap_bits=opts["coord_cap_bits"])
    payload = {
        "command": "ks-verify",
        "lambda1": ran_json(report.lambda1),
        "alpha": {},
        "canonical": _canonical_json(report.canonical)
        if report.canonical else None,
        "canonical_alpha": _ran_report(report.canonical_alpha)
        if report.canonical_alpha else None,
        "conditions": {k: str(v) for k, v in report.conditions.items()},
        "density_heuristic": report.density,
        "verdict": report.verdict,
        "warnings": list(report.warnings),
        "fiber_check": None,
    }
    if report.alpha_root_estimate is not None:
        payload["alpha"] = {
            "root_estimate": _interval_report(report.alpha_root_estimate),
            "ratio_estimate": _interval_report(report.alpha_ratio_estimate),
        }
    if report.fiber_check is not None:
        payload["fiber_check"] = {
            "alpha_total": _interval_report(report.fiber_check["alpha_total"]),
            "alpha_base": _interval_report(report.fiber_check["alpha_base"]),
            "slack": fraction_str(report.fiber_check["slack"]),
            "holds": report.fiber_check["holds"],
        }
    _emit(args, payload, schemas.KS_REPORT)
    return 0


def _sweep_chunk(payload):
    """Worker for sweep-periodic: classify one chunk of candidate points."""
    config, point_lists, opts = payload
    system = build_system(config)
    out = []
    for coords in point_lists:
        point = system.parse_point(coords)
        if not system.on_surface(point):
            continue
        try:
            verdict = periodicity_test(system, point,
                                       parse_rational(opts["height_bound"]),
                                       opts["max_period"],
                                       opts["precision_digits"],
                                       opts["coord_cap_bits"])
        except (DegenerateFiber, ResourceLimit) as exc:
            out.append({"point": coords, "status": "aborted",
                        "reason": type(exc).__name__})
            continue
        if verdict.kind == "Periodic":
            out.append({"point": coords, "status": "periodic",
                        "period": verdict.period})
        elif verdict.kind == "BoundedOrbitCandidate":
            out.append({"point": coords, "status": "bounded-candidate"})
    return out


def _sweep_forward_only(args, config, system, opts):
    """Point sweep for non-invertible systems: forward exact repetition."""
    from .canonical import canonical_forward, forward_periodicity

    bound = opts["house_bound"]
    if system.kind == "power":
        space = MultiProjSpace((system.dim,))
    elif system.kind == "monomial":
        space = MultiProjSpace(tuple(1 for _ in range(system.dim)))
    else:
        raise PreconditionError(
            "sweep-periodic handles surface, power, and monomial systems")
    results = []
    rho = spectral_radius(system.pullback_matrix())
    lam_ok = compare_with_rational(rho, 1) == Order.Greater
    for candidate in enumerate_bounded_points(space, bound):
        try:
            point = system.parse_point(candidate.as_lists()
                                       if system.kind == "power"
                                       else [str(Fraction(int(t[0]),
                                                          int(t[1])))
                                             for t in candidate.coords])
        except (InvalidInput, DomainError):
            continue
        period = forward_periodicity(system, point, opts["max_period"],
                                     parse_rational(opts["height_bound"]))
        if period is None:
            continue
        row = {"point": candidate.as_lists(), "status": "periodic",
               "period": period}
        if lam_ok:
            n_basis = system.num_basis_factors
            weights = tuple(Fraction(1) for _ in range(n_basis))
            res = canonical_forward(system, point, weights, rho,
                                    opts["tate_steps"],
                                    opts["precision_digits"],
                                    opts["coord_cap_bits"])
            row["hhat"] = _interval_report(res.hhat)
            row["hhat_contains_zero"] = res.hhat.widened(
                res.error_bound).contains_zero()
        results.append(row)
    results.sort(key=lambda r: json.dumps(r["point"]))
    payload = {"command": "sweep-periodic", "house_bound": bound,
               "max_period": opts["max_period"], "results": results}
    _emit(args, payload)
    return 0


def cmd_sweep_periodic(args):
    config, system, opts, _ = _system_and_point(args, needs_point=False)
    if system.kind != "wehler":
        return _sweep_forward_only(args, config, system, opts)
    bound = opts["house_bound"]
    space = MultiProjSpace((1, 1, 1))
    candidates = [p.as_lists() for p in enumerate_bounded_points(space,
                                                                 bound)]
    workers = int(opts.get("workers", 1))
    chunks = [candidates[i::workers] for i in range(workers)] if workers > 1 \
        else [candidates]
    results = []
    if workers > 1:
        import multiprocessing
        with multiprocessing.Pool(workers) as pool:
            for part in pool.map(_sweep_chunk,
                                 [(config, chunk, opts) for chunk in chunks]):
                results.extend(part)
    else:
        results.extend(_sweep_chunk((config, candidates, opts)))
    results.sort(key=lambda r: json.dumps(r["point"]))

    # attach canonical-height intervals to every periodic point found
    cone = config_cone(config)
    pair = None
    if cone is not None:
        pair = eigenvector_pair(system.pullback_matrix(), cone)
    for row in results:
        if row["status"] == "periodic" and pair is not None:
            point = system.parse_point(row["point"])
            res = canonical_pair(system, point, pair, opts["tate_steps"],
                                 opts["precision_digits"],
                                 opts["coord_cap_bits"])
            row["hhat"] = _interval_report(res.hhat)
            row["hhat_contains_zero"] = res.hhat.widened(
                res.error_bound).contains_zero()
    payload = {"command": "sweep-periodic", "house_bound": bound,
               "max_period": opts["max_period"], "results": results}
    _emit(args, payload)
    return 0


def cmd_bundle(args):
    config = load_config(args.config)
    validate(config, schemas.BUNDLE_CONFIG)
    reports = []
    for case in config["cases"]:
        hn = HNType.of(case["hn"])
        stats = slope_stats(hn)
        data = BundleEndoData.of(case["n"], case["deg_g"],
                                 parse_rational(case["delta"]), stats.mu_min)
        action = pullback_action(data)
        ring = data.ring(0)
        sr = ring.scalars
        f_gen, d_gen = nef_generators(hn) if hn.total_rank >= 2 else (None,
                                                                      None)
        reports.append({
            "label": case.get("label", ""),
            "n": data.n,
            "deg_g": data.deg_g,
            "delta": fraction_str(data.delta),
            "mu_min": fraction_str(stats.mu_min),
            "mu_max": fraction_str(stats.mu_max),
            "mu": fraction_str(stats.mu),
            "semistable": stats.semistable,
            "action_matrix": [[repr(sr.to_float(x)) for x in row]
                              for row in action.matrix],
            "eigenvalues": {"base": fraction_str(action.eigenvalue_base),
                            "fiber": _ran_report(action.eigenvalue_fiber)},
            "lambda1": _ran_report(action.lambda1),
            "nef_generators": "F, D - (%s) F" % fraction_str(stats.mu_min),
            "dichotomy": dichotomy_classify(data, hn.total_degree),
            "degree_check": degree_identity_check(data, hn.total_degree),
        })
    _emit(args, {"command": "bundle", "cases": reports})
    return 0


def cmd_lattice(args):
    config = load_config(args.config)
    pullback, form, cone = build_lattice(config)
    rho = spectral_radius(pullback)
    report = {"command": "lattice", "lambda1": _ran_report(rho)}
    if pullback.is_automorphism:
        rep_a = condition_A(pullback)
        report["condition_A"] = rep_a.holds
        report["lambda_minus"] = _ran_report(rep_a.lambda_minus)
        if cone is not None and rep_a.exceeds_one:
            pair = eigenvector_pair(pullback, cone)
            report["nu_plus"] = [_interval_report(c)
                                 for c in pair.nu_plus.coords]
            report["nu_minus"] = [_interval_report(c)
                                  for c in pair.nu_minus.coords]
            rep_b = condition_B(form, pair, cone)
            report["condition_B"] = rep_b.verdict
            if rep_b.verdict == "True":
                mi = middle_index_ell(form, pair)
                report["middle_index"] = mi.ell
                report["eigenvalue_identity"] = mi.identity_holds
    _emit(args, report)
    return 0


def cmd_chow(args):
    config = load_config(args.config)
    bb, isometry, cone = build_chow(config)
    report = {
        "command": "chow",
        "signature": list(signature([list(r) for r in bb.gram])),
        "fujiki_constant": fraction_str(bb.fujiki_constant),
        "half_dim": bb.half_dim,
    }
    top = induced_top_form(bb)
    report["induced_form_arity"] = top.dim_x
    if isometry is not None:
        report["isometry_check"] = isometry_check(isometry, bb)
        if report["isometry_check"] and cone is not None:
            rho = spectral_radius(isometry)
            if compare_with_rational(rho, 1) == Order.Greater:
                pair = eigenvector_pair(isometry, cone)
                iso = isotropy_and_bigness_report(bb, pair)
                report["isotropy"] = {
                    "verdict": iso.verdict,
                    "q_plus": _interval_report(iso.q_plus),
                    "q_minus": _interval_report(iso.q_minus),
                    "q_plus_exact_zero": iso.q_plus_exact_zero,
                    "q_minus_exact_zero": iso.q_minus_exact_zero,
                    "nu_big": iso.nu_big,
                    "ell": iso.ell,
                    "identity_holds": iso.identity_holds,
                }
    _emit(args, report)
    return 0


COMMANDS = {
    "lambda1": cmd_lambda1,
    "orbit": cmd_orbit,
    "alpha": cmd_alpha,
    "canh": cmd_canh,
    "ks-verify": cmd_ks_verify,
    "sweep-periodic": cmd_sweep_periodic,
    "bundle": cmd_bundle,
    "lattice": cmd_lattice,
    "chow": cmd_chow,
}


def build_parser():
    parser = argparse.ArgumentParser(
        prog="dynheights",
        description="Dynamical degrees, canonical heights, and lattice "
                    "dynamics workbench")
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--config", required=True, help="config JSON path")
    parser.add_argument("--point", help="named point from the config")
    parser.add_argument("--steps", type=int, help="orbit length")
    parser.add_argument("--tate-steps", type=int, dest="tate_steps",
                        help="Tate limit depth")
    parser.add_argument("--precision", type=int,
                        help="log evaluation precision (decimal digits)")
    parser.add_argument("--house-bound", type=int, dest="house_bound")
    parser.add_argument("--max-period", type=int, dest="max_period")
    parser.add_argument("--workers", type=int)
    parser.add_argument("--reproducible", action="store_true",
                        help="omit timestamps; byte-identical reruns")
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--format", choices=["json", "csv"], default="json")
    parser.add_argument("--print-config", action="store_true",
                        dest="print_config",
                        help="print the effective config and exit")
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.print_config:
            config = load_config(args.config)
            merged = {"config": config,
                      "effective_options": _effective_options(config, args)}
            sys.stdout.write(json.dumps(merged, sort_keys=True, indent=2)
                             + "\n")
            return 0
        return COMMANDS[args.command](args)
    except (InvalidInput, FileNotFoundError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"config error: {exc}\n")
        return 2
    except (PreconditionError, DomainError, DegenerateFiber,
            InvariantViolation) as exc:
        sys.stderr.write(f"mathematical precondition failed: {exc}\n")
        return 3
    except ResourceLimit as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return 4


if __name__ == "__main__":
    sys.exit(main())
