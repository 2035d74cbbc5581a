"""Command-line front end.

Commands
--------
analyze PATH          classify a 3-form (JSON in, report JSON out)
canonical NAME        emit an exact model object (TAU0, SIGMA0, VOL3, A0,
                      OMEGA0, PSI_PLUS, PSI_MINUS)
lift PATH             lift an SU(3)-class form on R^6 to R^7
restrict PATH --vector "c1,...,cn"
                      cut a form down to the complement of a unit vector
conjugate PATH --seed K
                      pull back along a seeded random orthogonal matrix
su3-check             run the SU(3) identity suite at basis vectors plus
                      seeded random samples

All output is deterministic given the seed.  Exit codes: 0 on any clean
verdict, 1 on I/O or validation failure, 2 when the numerics contradict the
classification (an ANOMALY verdict or a failing identity suite).

Form JSON: ``{"dim": n, "degree": k, "terms": [{"indices": [i1 < ... < ik],
"coeff": c}, ...]}`` with 1-based strictly increasing indices and no duplicate
index sets.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .classify import Verdict, canonical, classify, conjugate, random_orthogonal
from .forms import ExteriorForm
from .lifting import lift, restrict
from .su3 import check_identities, standard_frame

OK = 0
FAILURE = 1
ANOMALY = 2


class CliError(Exception):
    """Input validation failure; message is printed to stderr, exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # usage problems are validation failures: exit 1
        self.print_usage(sys.stderr)
        raise CliError(message)


def _load_form(path: str) -> ExteriorForm:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror or exc}")
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}")
    return _form_from_payload(payload, path)


def _form_from_payload(payload, path: str) -> ExteriorForm:
    if not isinstance(payload, dict):
        raise CliError(f"{path}: top level must be an object")
    for key in ("dim", "degree", "terms"):
        if key not in payload:
            raise CliError(f"{path}: missing key {key!r}")
    if not isinstance(payload["terms"], list):
        raise CliError(f"{path}: 'terms' must be a list")
    terms = {}
    for pos, entry in enumerate(payload["terms"]):
        where = f"{path}: terms[{pos}]"
        if not isinstance(entry, dict) or "indices" not in entry or "coeff" not in entry:
            raise CliError(f"{where}: expected an object with 'indices' and 'coeff'")
        try:
            idx = tuple(int(i) for i in entry["indices"])
            coeff = float(entry["coeff"])
        except (TypeError, ValueError) as exc:
            raise CliError(f"{where}: {exc}")
        if idx in terms:
            raise CliError(f"{where}: duplicate blade {list(idx)}")
        terms[idx] = coeff
    try:
        return ExteriorForm(int(payload["dim"]), int(payload["degree"]), terms)
    except (TypeError, ValueError) as exc:
        raise CliError(f"{path}: {exc}")


def _emit(obj, out: str | None) -> None:
    text = json.dumps(obj, indent=2) + "\n"
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _matrix_payload(A: np.ndarray) -> dict:
    return {"dim": int(A.shape[0]), "matrix": [[float(x) for x in row] for row in A]}


def cmd_analyze(args) -> int:
    form = _load_form(args.path)
    try:
        report = classify(
            form, mode=args.mode, tol=args.tol, samples=args.samples, seed=args.seed
        )
    except ValueError as exc:
        raise CliError(f"{args.path}: {exc}")
    _emit(report.to_dict(), args.out)
    return ANOMALY if report.verdict is Verdict.ANOMALY else OK


def cmd_canonical(args) -> int:
    try:
        obj = canonical(args.name)
    except ValueError as exc:
        raise CliError(str(exc))
    payload = obj.to_dict() if isinstance(obj, ExteriorForm) else _matrix_payload(obj)
    _emit(payload, args.out)
    return OK


def cmd_lift(args) -> int:
    form = _load_form(args.path)
    try:
        lifted = lift(form, tol=args.tol)
    except ValueError as exc:
        raise CliError(f"{args.path}: {exc}")
    _emit(lifted.to_dict(), args.out)
    return OK


def cmd_restrict(args) -> int:
    form = _load_form(args.path)
    try:
        v = np.array([float(part) for part in args.vector.split(",")])
    except ValueError as exc:
        raise CliError(f"--vector: {exc}")
    try:
        cut = restrict(form, v)
    except ValueError as exc:
        raise CliError(f"{args.path}: {exc}")
    _emit(cut.to_dict(), args.out)
    return OK


def cmd_conjugate(args) -> int:
    form = _load_form(args.path)
    Q = random_orthogonal(args.seed, form.dim)
    _emit(conjugate(form, Q).to_dict(), args.out)
    return OK


def cmd_su3_check(args) -> int:
    frame = standard_frame()
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    evaluated = 0
    for i in range(6):
        worst = max(worst, max(check_identities(frame, np.eye(6)[i]).values()))
        evaluated += 1
    for _ in range(args.samples):
        x = rng.standard_normal(6)
        worst = max(worst, max(check_identities(frame, x).values()))
        evaluated += 1
    ok = worst <= args.tol
    _emit(
        {
            "max_residual": worst,
            "tolerance": args.tol,
            "vectors_checked": evaluated,
            "pass": ok,
        },
        args.out,
    )
    return OK if ok else ANOMALY


def _build_parser() -> _Parser:
    parser = _Parser(prog="crossforms", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p):
        p.add_argument("--out", help="write JSON output to this file instead of stdout")

    p = sub.add_parser("analyze", help="classify a 3-form")
    p.add_argument("path")
    p.add_argument("--mode", choices=["DETERMINISTIC", "SAMPLED"], default=None)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("canonical", help="emit an exact model object")
    p.add_argument("name")
    add_common(p)
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("lift", help="lift an SU(3)-class form on R^6 to R^7")
    p.add_argument("path")
    p.add_argument("--tol", type=float, default=1e-8)
    add_common(p)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("restrict", help="restrict a form to the complement of a unit vector")
    p.add_argument("path")
    p.add_argument("--vector", required=True, help="comma separated components")
    add_common(p)
    p.set_defaults(func=cmd_restrict)

    p = sub.add_parser("conjugate", help="pull back along a seeded orthogonal matrix")
    p.add_argument("path")
    p.add_argument("--seed", type=int, default=0)
    add_common(p)
    p.set_defaults(func=cmd_conjugate)

    p = sub.add_parser("su3-check", help="run the SU(3) identity suite")
    p.add_argument("--samples", type=int, default=256)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-10)
    add_common(p)
    p.set_defaults(func=cmd_su3_check)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILURE


if __name__ == "__main__":
    sys.exit(main())
