"""Command-line front end: ``ybkit <group> <command> [options]``.

Every run prints (or writes to ``--out``) one JSON document carrying
``"spec": "1"``, except ``set enumerate`` which streams JSON lines and ends
with a summary record.  Exit status: 0 when every report holds, 1 when some
check fails, 2 for unusable input.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import Callable

from . import entwining as ent
from . import geometry as geo
from . import serialize as io
from . import set_theoretic as st
from . import ujla
from . import yang_baxter as yb
from .errors import (
    BimoduleAxiomFailed,
    CertificationFailed,
    Degenerate,
    NotDerivation,
    NotUjla,
    WxzFailed,
    XNotInvertible,
    YBError,
)
from .reports import CheckReport, compare, failure
from .tensor import compose, identity

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class Result:
    """Reports plus extra payload for one command."""

    def __init__(self, command: str, reports: list[CheckReport], **payload):
        self.command = command
        self.reports = reports
        self.payload = payload

    @property
    def holds(self) -> bool:
        return all(r.holds for r in self.reports)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "holds": self.holds,
            "reports": [r.to_dict() for r in self.reports],
            **self.payload,
        }


def _rational(text: str) -> Fraction:
    try:
        return io.parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise io.InputError("<command line>", None, missing[0], "required for this command")


# yang-baxter ---------------------------------------------------------------------


def cmd_ybe(args) -> Result:
    _need(args, "operator")
    return Result("check ybe", [yb.check_braid(io.load_operator(args.operator))])


def cmd_qybe(args) -> Result:
    _need(args, "operator")
    return Result("check qybe", [yb.check_qybe(io.load_operator(args.operator))])


def _aux(args):
    if args.aux is None:
        return None
    doc = io.read_document(args.aux)
    return io.operator_from_doc(doc, "X"), io.operator_from_doc(doc, "Y")


def cmd_variant(args) -> Result:
    _need(args, "operator", "variant")
    R = io.load_operator(args.operator)
    return Result("check variant", [yb.check_variant(R, args.variant, _aux(args))])


def cmd_implications(args) -> Result:
    _need(args, "operator")
    rows = yb.check_implications(io.load_operator(args.operator), _aux(args))
    reports = [
        CheckReport(row.implication, True, 0)
        if row.consistent
        else failure(row.implication, "premise holds but conclusion fails")
        for row in rows
    ]
    return Result("check implications", reports, rows=[r.to_dict() for r in rows])


def cmd_algebra_yb(args) -> Result:
    _need(args, "algebra")
    A = io.load_algebra(args.algebra)
    r = args.r if args.r is not None else Fraction(1)
    s = args.s if args.s is not None else Fraction(1)
    R = yb.algebra_yb_operator(A, r, s)
    R_inv = yb.algebra_yb_inverse(A, r, s)
    reports = [
        yb.check_braid(R),
        compare("INVERSE", compose(R, R_inv), identity(R.domain)),
        compare("MINIMAL_POLYNOMIAL", compose(R, R), R.scale(r - s) + identity(R.domain).scale(r * s)),
    ]
    _write_artifact(args, io.operator_to_json(R))
    return Result("construct algebra-yb", reports, operator=io.operator_to_json(R), r=str(r), s=str(s))


def cmd_wxz(args) -> Result:
    _need(args, "wxz")
    return Result("check wxz", yb.check_wxz(io.load_wxz(args.wxz)))


def cmd_glue(args) -> Result:
    _need(args, "wxz")
    t = io.load_wxz(args.wxz)
    try:
        R = yb.glue(t)
    except XNotInvertible as exc:
        return Result("glue", [failure("GLUE", str(exc))])
    except WxzFailed as exc:
        return Result("glue", [failure("GLUE", str(exc))], wxz_reports=[r.to_dict() for r in yb.check_wxz(t)])
    _write_artifact(args, io.operator_to_json(R))
    return Result("glue", [yb.check_braid(R)], operator=io.operator_to_json(R))


# entwining -------------------------------------------------------------------------


def cmd_entwining(args) -> Result:
    _need(args, "algebra", "coalgebra", "operator")
    A, C = io.load_algebra(args.algebra), io.load_coalgebra(args.coalgebra)
    return Result("check entwining", ent.check_entwining(A, C, io.load_operator(args.operator)))


def cmd_entwining_iff_wxz(args) -> Result:
    _need(args, "algebra", "coalgebra", "operator")
    A, C = io.load_algebra(args.algebra), io.load_coalgebra(args.coalgebra)
    X = io.load_operator(args.operator)
    params = {k: getattr(args, k) if getattr(args, k) is not None else Fraction(1) for k in "rstp"}
    eq = ent.entwining_iff_wxz(A, C, X, **params)
    verdict = (
        CheckReport("ENTWINING_IFF_WXZ", True, 0)
        if eq.equivalence_consistent
        else failure("ENTWINING_IFF_WXZ", "the two sides disagree", wxz_holds=eq.wxz_holds, entwining_holds=eq.entwining_holds)
    )
    return Result("check entwining-iff-wxz", [verdict], equivalence=eq.to_dict())


# ujla ----------------------------------------------------------------------------


def cmd_ujla(args) -> Result:
    _need(args, "table")
    return Result("check ujla", [ujla.check_ujla(io.load_table(args.table))])


def cmd_weak(args) -> Result:
    _need(args, "table")
    return Result("check weak", [ujla.check_weak(io.load_table(args.table))])


def _structure(args, name: str, build: Callable, identities) -> Result:
    _need(args, "table")
    T = io.load_table(args.table)
    try:
        S = build(T)
    except NotUjla:
        return Result(f"check {name}", [ujla.check_ujla(T)])
    except CertificationFailed as exc:
        return Result(f"check {name}", [failure(name.upper(), str(exc))])
    reports = [ujla.check_identity(S, i) for i in identities]
    return Result(f"check {name}", reports, table=io.table_to_json(S))


def cmd_lie(args) -> Result:
    return _structure(args, "lie", ujla.lie_structure, (ujla.Identity.ANTICOMM, ujla.Identity.JACOBI))


def cmd_jordan(args) -> Result:
    return _structure(args, "jordan", ujla.jordan_structure, (ujla.Identity.JORDAN,))


def cmd_deform(args) -> Result:
    _need(args, "table", "alpha", "beta")
    T = ujla.deform(io.load_table(args.table), args.alpha, args.beta)
    _write_artifact(args, io.table_to_json(T))
    return Result("deform", [ujla.check_ujla(T)], table=io.table_to_json(T), alpha=str(args.alpha), beta=str(args.beta))


def cmd_derivation(args) -> Result:
    _need(args, "table", "derivation")
    T = io.load_table(args.table)
    return Result("check derivation", [ujla.check_derivation(T, io.load_matrix(args.derivation))])


def cmd_power_assoc(args) -> Result:
    _need(args, "table")
    nmax = args.n if args.n is not None else 5
    return Result("check power-assoc", [ujla.power_associativity(io.load_table(args.table), nmax)])


def cmd_module_derivation(args) -> Result:
    _need(args, "algebra", "module")
    A = io.load_algebra(args.algebra)
    M = io.load_module(args.module)
    try:
        report = ujla.module_derivation_check(A, M.d, M.m, M.left, M.right, M.D)
    except (BimoduleAxiomFailed, NotDerivation) as exc:
        report = failure("MODULE_DERIVATION", str(exc), gate=type(exc).__name__)
    return Result("check module-derivation", [report])


def cmd_generalized_derivation(args) -> Result:
    _need(args, "derivation", "operator")
    d = io.load_matrix(args.derivation)
    phi = io.load_operator(args.operator)
    return Result("check generalized-derivation", [ujla.generalized_derivation_check(len(d), d, phi)])


def cmd_tau_symmetry(args) -> Result:
    _need(args, "operator")
    return Result("check tau-symmetry", [ujla.tau_symmetry_check(io.load_operator(args.operator))])


# set-theoretic ---------------------------------------------------------------------


def cmd_set_check(args) -> Result:
    _need(args, "map")
    R = io.load_finite_map(args.map)
    return Result("set check", [st.fm_check_braid(R), st.fm_check_braid_components(R)])


def cmd_set_conjugated(args) -> Result:
    _need(args, "star", "circ")
    return Result("set conjugated", [st.yb_conjugated(io.load_binop(args.star), io.load_binop(args.circ))])


def run_enumerate(args, out) -> int:
    _need(args, "n")
    result = st.enumerate_solutions(args.n)
    reps = set(result.representatives)
    for i, R in enumerate(result.solutions):
        out.write(io.dumps({"index": i, "map": io.finite_map_to_json(R), "representative": R in reps}, lines=True) + "\n")
    summary = {"summary": True, "n": args.n, "count": result.count, "orbit_count": result.orbit_count}
    out.write(io.dumps(summary, lines=True) + "\n")
    if args.out:
        print(io.dumps(summary, lines=True))
    return EXIT_OK


# geometry ------------------------------------------------------------------------


def _geo_configs(args):
    if args.config is not None:
        return [io.load_geo_config(args.config)]
    trials = args.trials if args.trials is not None else 1000
    return geo.fuzz_configs(trials, args.seed or 0)


def _degenerate(name: str, cfg, exc: Degenerate) -> CheckReport:
    return failure(name, str(exc), pair=getattr(exc, "pair", None), config=cfg.to_dict())


def _geo_run(args, name: str, measure: Callable, key: str, default_tol: float, scale: Callable) -> Result:
    tol = args.tolerance if args.tolerance is not None else default_tol
    reports, rows, worst = [], [], 0.0
    for cfg in _geo_configs(args):
        try:
            rep = measure(cfg)
        except Degenerate as exc:
            reports.append(_degenerate(name, cfg, exc))
            continue
        value = getattr(rep, key)
        bound = tol * scale(cfg)
        worst = max(worst, value / scale(cfg))
        ok = value <= bound
        reports.append(
            CheckReport(name, ok, 0 if ok else 1, None if ok else {key: value, "bound": bound, "config": cfg.to_dict()})
        )
        rows.append(rep.to_dict())
    payload = {"tolerance": tol, "max_scaled_residual": worst, "configs": len(reports)}
    if args.config is not None:
        payload["geometry"] = rows[0] if rows else None
    else:
        payload["seed"] = args.seed or 0
    return Result(f"geo {name.lower()}", reports, **payload)


def cmd_geo_johnson(args) -> Result:
    return _geo_run(args, "JOHNSON", geo.verify_johnson, "johnson_residual", geo.JOHNSON_TOL, lambda c: c.r)


def cmd_geo_collinear(args) -> Result:
    return _geo_run(args, "COLLINEAR", geo.tangent_collinearity, "collinearity_residual", geo.COLLINEAR_TOL, lambda c: 1.0)


def cmd_geo_disk_cover(args) -> Result:
    _need(args, "config")
    cfg = io.load_geo_config(args.config)
    samples = args.n if args.n is not None else 10_000
    try:
        out = geo.disk_cover_check(cfg, samples, args.seed or 0)
    except Degenerate as exc:
        return Result("geo disk-cover", [_degenerate("DISK_COVER", cfg, exc)])
    # containment is an interpretation probe, not a theorem; report, never fail
    report = CheckReport("DISK_COVER_PROBE", True, 0)
    return Result("geo disk-cover", [report], disk_cover=out)


def cmd_geo_probe(args) -> Result:
    _need(args, "curve")
    out = geo.conjecture_probe(io.load_curve(args.curve))
    return Result("geo probe", [CheckReport("CONJECTURE_PROBE", True, 0)], probe=out)


# plumbing ------------------------------------------------------------------------


def _write_artifact(args, data: dict) -> None:
    """``--save`` stores the constructed object on its own (loadable later)."""
    if getattr(args, "save", None):
        with open(args.save, "w") as fh:
            fh.write(io.dumps(data) + "\n")


COMMANDS: dict[tuple[str, str], Callable] = {
    ("check", "ybe"): cmd_ybe,
    ("check", "qybe"): cmd_qybe,
    ("check", "variant"): cmd_variant,
    ("check", "implications"): cmd_implications,
    ("check", "wxz"): cmd_wxz,
    ("check", "entwining"): cmd_entwining,
    ("check", "entwining-iff-wxz"): cmd_entwining_iff_wxz,
    ("check", "ujla"): cmd_ujla,
    ("check", "weak"): cmd_weak,
    ("check", "lie"): cmd_lie,
    ("check", "jordan"): cmd_jordan,
    ("check", "derivation"): cmd_derivation,
    ("check", "power-assoc"): cmd_power_assoc,
    ("check", "module-derivation"): cmd_module_derivation,
    ("check", "generalized-derivation"): cmd_generalized_derivation,
    ("check", "tau-symmetry"): cmd_tau_symmetry,
    ("construct", "algebra-yb"): cmd_algebra_yb,
    ("glue", None): cmd_glue,
    ("deform", None): cmd_deform,
    ("set", "check"): cmd_set_check,
    ("set", "enumerate"): None,
    ("set", "conjugated"): cmd_set_conjugated,
    ("geo", "johnson"): cmd_geo_johnson,
    ("geo", "collinear"): cmd_geo_collinear,
    ("geo", "disk-cover"): cmd_geo_disk_cover,
    ("geo", "probe"): cmd_geo_probe,
}


def _add_options(p: argparse.ArgumentParser) -> None:
    files = p.add_argument_group("inputs (paths or builtin:NAME)")
    for name in ("operator", "table", "algebra", "coalgebra", "map", "wxz", "aux", "derivation", "module", "star", "circ", "config", "curve"):
        files.add_argument(f"--{name}")
    nums = p.add_argument_group("parameters")
    for name in ("r", "s", "t", "p", "alpha", "beta"):
        nums.add_argument(f"--{name}", type=_rational, help="rational, e.g. 3/4")
    nums.add_argument("--variant", choices=[v.value for v in yb.Variant])
    nums.add_argument("--n", type=int, help="set size, power bound or sample count")
    nums.add_argument("--seed", type=int)
    nums.add_argument("--trials", type=int)
    nums.add_argument("--tolerance", type=float)
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--save", help="write a constructed operator or table here")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ybkit", description="Exact checks for Yang-Baxter and related structures.")
    groups = parser.add_subparsers(dest="group", required=True)
    by_group: dict[str, list[str]] = {}
    for group, name in COMMANDS:
        by_group.setdefault(group, [])
        if name:
            by_group[group].append(name)
    for group, names in by_group.items():
        gp = groups.add_parser(group)
        if names:
            sub = gp.add_subparsers(dest="command", required=True)
            for name in names:
                _add_options(sub.add_parser(name))
        else:
            _add_options(gp)
            gp.set_defaults(command=None)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    key = (args.group, args.command)
    try:
        if key == ("set", "enumerate"):
            if args.out:
                with open(args.out, "w") as fh:
                    return run_enumerate(args, fh)
            return run_enumerate(args, sys.stdout)
        result = COMMANDS[key](args)
    except (YBError, ValueError) as exc:
        print(f"ybkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"ybkit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = io.dumps(result.to_dict()) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if result.holds else EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
