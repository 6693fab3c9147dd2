"""Command-line front end with JSON-only input and output.

Exit codes: 0 success / in-image / pass, 1 fail / not-in-image / no
representation, 2 usage or input error, 3 internal inconsistency.  Results
go to stdout as a single JSON document carrying a "format" field;
diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import (
    DegenerateOrbitError,
    InputError,
    InternalInconsistencyError,
    NoRepresentationError,
)
from .grassmann import gr2_membership, multiaffine_detrep, squared_plucker
from .group_action import act_on_minor_vector, act_on_poly
from .hyperdet import (
    decide_membership_hypdet,
    evaluate_orbit_equation,
    f3_search,
    orbit_equation_ids,
)
from .jsonio import (
    FORMAT,
    detrep_to_json,
    group_from_json,
    matrix_from_json,
    matrix_to_json,
    p1_to_json,
    plucker_from_json,
    plucker_to_json,
    poly_from_json,
    poly_to_json,
    vector_from_json,
    vector_to_json,
)
from .minor_map import decide_membership_delta, principal_minors
from .rings import ring_from_string


def _load_json(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError("cannot read %s: %s" % (path, exc)) from None
    except json.JSONDecodeError as exc:
        raise InputError("invalid JSON in %s: %s" % (path, exc)) from None


def _emit(doc):
    doc = {"format": FORMAT, **doc}
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")


def _check_ring(flag_ring, obj_ring):
    want = ring_from_string(flag_ring)
    if want != obj_ring:
        raise InputError(
            "--ring %s does not match the file's ring %s" % (flag_ring, obj_ring.to_string())
        )
    return want


def _failure_json(ring, failure):
    if failure is None:
        return None
    detail = {}
    for key, val in failure.detail.items():
        if key == "value":
            detail[key] = ring.format(val)
        elif key == "polynomial":
            detail[key] = poly_to_json(val)
        elif key == "pair" or key == "triple":
            detail[key] = list(val)
        elif key == "gridpoint":
            detail[key] = [p1_to_json(p) for p in val]
        else:
            detail[key] = val
    return {"kind": failure.kind, **detail}


def _cmd_forward(args):
    matrix = matrix_from_json(_load_json(args.matrix))
    _check_ring(args.ring, matrix.ring)
    _emit({"vector": vector_to_json(principal_minors(matrix))})
    return 0


def _cmd_decide(args):
    vec = vector_from_json(_load_json(args.vector))
    ring = _check_ring(args.ring, vec.ring)
    if args.method == "delta":
        cert = decide_membership_delta(vec, with_witness=args.witness)
        doc = {
            "method": "delta",
            "verdict": cert.verdict,
            "failure": _failure_json(ring, cert.failure),
        }
        if args.witness and cert.witness is not None:
            doc["witness"] = matrix_to_json(cert.witness)
        _emit(doc)
        return 0 if cert.in_image else 1
    mode = "real" if args.method == "real" else "exact"
    report, cert = decide_membership_hypdet(vec, mode=mode, with_witness=args.witness)
    doc = {
        "method": args.method,
        "verdict": report.verdict,
    }
    if report.failed_equation is not None:
        doc["failed_equation"] = {
            "triple": list(report.failed_equation.triple),
            "point": [p1_to_json(p) for p in report.failed_equation.gridpoint],
        }
        doc["value"] = ring.format(report.failed_value)
    if report.pair_failures:
        doc["pair_failures"] = [
            {"pair": list(pair), "value": ring.format(v)} for pair, v in report.pair_failures
        ]
    if cert is not None and cert.failure is not None:
        doc["failure"] = _failure_json(ring, cert.failure)
    if args.witness and cert is not None and cert.witness is not None:
        doc["witness"] = matrix_to_json(cert.witness)
    _emit(doc)
    return 0 if report.passed else 1


def _cmd_act(args):
    gamma = group_from_json(_load_json(args.gamma))
    if (args.vector is None) == (args.poly is None):
        raise InputError("pass exactly one of --vector or --poly")
    if args.vector is not None:
        vec = vector_from_json(_load_json(args.vector))
        out = act_on_minor_vector(gamma, vec)
        _emit({"vector": vector_to_json(out)})
    else:
        if not args.degrees:
            raise InputError("--poly needs --degrees d1,...,dn")
        poly = poly_from_json(_load_json(args.poly))
        try:
            degrees = tuple(int(t) for t in args.degrees.split(","))
        except ValueError:
            raise InputError("--degrees must be a comma-separated integer list") from None
        out = act_on_poly(gamma, poly, degrees)
        _emit({"poly": poly_to_json(out)})
    return 0


def _cmd_orbit(args):
    ring = ring_from_string(args.ring)
    if args.n < 3:
        raise InputError("orbit equations need --n >= 3")
    ids = orbit_equation_ids(args.n, ring)
    ids_json = [
        {"triple": list(eq.triple), "point": [p1_to_json(p) for p in eq.gridpoint]}
        for eq in ids
    ]
    if args.list_only or args.vector is None:
        _emit({"n": args.n, "ring": ring.to_string(), "count": len(ids), "equations": ids_json})
        return 0
    vec = vector_from_json(_load_json(args.vector))
    _check_ring(args.ring, vec.ring)
    if vec.n != args.n:
        raise InputError("--n does not match the vector")
    values = []
    first_failure = None
    for eq, eq_json in zip(ids, ids_json):
        val = evaluate_orbit_equation(vec, eq)
        values.append({**eq_json, "value": ring.format(val)})
        if first_failure is None and not ring.is_zero(val):
            first_failure = values[-1]
    _emit(
        {
            "n": args.n,
            "ring": ring.to_string(),
            "count": len(ids),
            "values": values,
            "first_failure": first_failure,
            "verdict": "pass" if first_failure is None else "fail",
        }
    )
    return 0 if first_failure is None else 1


def _cmd_grass(args):
    if (args.matrix is None) == (args.q is None):
        raise InputError("pass exactly one of --matrix or --q")
    ring = ring_from_string(args.ring)
    if args.matrix is not None:
        doc = _load_json(args.matrix)
        try:
            rows = [[ring.parse(v) for v in row] for row in doc["rows"]]
        except (KeyError, TypeError) as exc:
            raise InputError("malformed matrix document: %s" % exc) from None
        if len(rows) != args.d:
            raise InputError("--d does not match the matrix")
        q = squared_plucker(ring, rows, args.n)
        _emit({"q": plucker_to_json(q)})
        return 0
    q = plucker_from_json(_load_json(args.q))
    if q.ring != ring or q.d != args.d or q.n != args.n:
        raise InputError("--ring/--d/--n do not match the vector file")
    report = gr2_membership(q)
    doc = {"verdict": report.verdict}
    if report.failed_equation is not None:
        doc["failed_equation"] = {
            "triple": list(report.failed_equation.triple),
            "point": [p1_to_json(p) for p in report.failed_equation.gridpoint],
        }
        doc["value"] = ring.format(report.failed_value)
    if report.pair_failures:
        key, val = report.pair_failures[0]
        i, j, s = key
        doc["pair_failure"] = {"i": i, "j": j, "S": list(s), "value": ring.format(val)}
    _emit(doc)
    return 0 if report.passed else 1


def _cmd_detrep(args):
    poly = poly_from_json(_load_json(args.poly))
    ring = _check_ring(args.ring, poly.ring)
    try:
        rep = multiaffine_detrep(poly)
    except NoRepresentationError as exc:
        _emit(
            {
                "verdict": "no_representation",
                "pair": list(exc.pair),
                "delta": poly_to_json(exc.delta),
            }
        )
        return 1
    _emit({"verdict": "represented", **detrep_to_json(ring, rep), "verified": True})
    return 0


def _cmd_f3_search(args):
    result = f3_search(args.n, args.samples, args.seed, exhaustive=args.exhaustive)
    _emit(result)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="minorforge",
        description="Exact principal-minor realizability toolkit (JSON in, JSON out)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("forward", help="principal minors of a symmetric matrix")
    p.add_argument("--ring", required=True)
    p.add_argument("--matrix", required=True)
    p.set_defaults(func=_cmd_forward)

    p = sub.add_parser("decide", help="decide realizability of a minor vector")
    p.add_argument("--method", choices=["delta", "hypdet", "real"], required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--vector", required=True)
    p.add_argument("--witness", action="store_true")
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("act", help="apply a group element to a vector or polynomial")
    p.add_argument("--gamma", required=True)
    p.add_argument("--vector")
    p.add_argument("--poly")
    p.add_argument("--degrees")
    p.set_defaults(func=_cmd_act)

    p = sub.add_parser("orbit", help="orbit equations: list them or evaluate on a vector")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--vector")
    p.add_argument("--list-only", action="store_true")
    p.add_argument("--jobs", type=int, default=1,
                   help="accepted for compatibility; evaluation is sequential and deterministic")
    p.set_defaults(func=_cmd_orbit)

    p = sub.add_parser("grass", help="squared Pluecker vectors and membership")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ring", required=True)
    p.add_argument("--matrix")
    p.add_argument("--q")
    p.set_defaults(func=_cmd_grass)

    p = sub.add_parser("detrep", help="multiaffine determinantal representation")
    p.add_argument("--ring", required=True)
    p.add_argument("--poly", required=True)
    p.set_defaults(func=_cmd_detrep)

    p = sub.add_parser("f3-search", help="probe the GF(3) criterion against the delta method")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--samples", type=int, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--exhaustive", action="store_true")
    p.set_defaults(func=_cmd_f3_search)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.jobs is not None and args.jobs < 1:
            raise InputError("--jobs must be at least 1")
    except AttributeError:
        pass
    try:
        return args.func(args)
    except (InputError, DegenerateOrbitError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    except InternalInconsistencyError as exc:
        sys.stderr.write("internal inconsistency: %s\n" % exc)
        return 3


def entry():
    raise SystemExit(main())
