"""One test per acceptance criterion; each logs a PASS/FAIL line to the summary."""

import json
import math
import random
import time
from fractions import Fraction

import oracles
from conftest import PARAMS, operator_corpus
from ybkit.algebras import ALGEBRAS, dual_coalgebra, dual_numbers, matrix_algebra
from ybkit.cli import main
from ybkit.entwining import (
    coalgebra_braid_operator,
    entwining_iff_wxz,
    flip_entwining,
    perturbed_x,
    wxz_triple,
    x_from_psi,
)
from ybkit.geometry import conjecture_probe, fuzz
from ybkit.set_theoretic import (
    LogicKind,
    chain_lattice,
    enumerate_solutions,
    fm_check_braid,
    logic_solution,
    yb_conjugated,
)
from ybkit.tensor import compose, identity, twist
from ybkit.ujla import (
    Identity,
    check_identity,
    check_ujla,
    deform,
    endomorphism_ujla,
    generalized_derivation_check,
    inner_derivation_check,
    jordan_structure,
    lie_structure,
    module_derivation_check,
    power_associativity,
    regular_bimodule,
    tau_symmetry_check,
    transpose,
)
from ybkit.yang_baxter import (
    algebra_yb_inverse,
    algebra_yb_operator,
    check_braid,
    check_implications,
    check_qybe,
    check_wxz,
    glue,
)

EULER = [[0, 0], [0, 1]]


class Criterion:
    """Collects failures, times the run and writes one summary line."""

    def __init__(self, number, log, budget=None):
        self.number, self.log, self.budget = number, log, budget
        self.problems = []

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def expect(self, ok, what):
        if not ok:
            self.problems.append(what)

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.start
        if exc is not None:
            self.problems.append(f"error: {exc!r}")
        if self.budget is not None and elapsed > self.budget:
            self.problems.append(f"runtime {elapsed:.2f}s > {self.budget}s")
        status = "FAIL" if self.problems else "PASS"
        note = "; ".join(self.problems[:3]) or "ok"
        self.log(f"criterion {self.number}: {status} ({elapsed:.2f}s) {note}")
        if exc is None:
            assert not self.problems, self.problems
        return False


def test_criterion_1_algebra_operators(acceptance_log):
    with Criterion(1, acceptance_log, budget=5) as c:
        for name in ("field", "dual-numbers", "matrices-2", "diagonal-2"):
            A = ALGEBRAS[name]()
            for r, s in PARAMS:
                R = algebra_yb_operator(A, r, s)
                ident = identity(R.domain)
                braid = check_braid(R)
                c.expect(braid.holds and braid.residual_nonzero == 0, f"braid {name} {r},{s}")
                c.expect(compose(R, algebra_yb_inverse(A, r, s)) == ident, f"inverse {name} {r},{s}")
                r, s = Fraction(r), Fraction(s)
                c.expect(
                    compose(R, R) == R.scale(r - s) + ident.scale(r * s),
                    f"minimal polynomial {name} {r},{s}",
                )


def test_criterion_2_tau_equivalence(acceptance_log):
    with Criterion(2, acceptance_log) as c:
        corpus = operator_corpus()
        c.expect(len(corpus) >= 20, f"corpus has {len(corpus)} operators")
        disagreements = 0
        for R in corpus.values():
            n = R.domain[0]
            tau = twist(n, n)
            verdicts = {check_braid(R).holds, check_qybe(compose(R, tau)).holds, check_qybe(compose(tau, R)).holds}
            disagreements += len(verdicts) > 1
        c.expect(disagreements == 0, f"{disagreements} disagreements")


def test_criterion_3_implications(acceptance_log):
    with Criterion(3, acceptance_log) as c:
        for name, R in operator_corpus().items():
            rows = check_implications(R)
            c.expect(len(rows) == 5, f"{name}: {len(rows)} rows")
            for row in rows:
                c.expect(row.consistent, f"{name}: {row.implication}")


def test_criterion_4_set_theoretic(acceptance_log):
    with Criterion(4, acceptance_log, budget=1) as c:
        for kind in LogicKind:
            rep = fm_check_braid(logic_solution(kind))
            c.expect(rep.holds and rep.details["triples"] == 8, f"logic {kind}")
        brute = oracles.brute_force_solutions(2)
        c.expect(enumerate_solutions(2).count == len(brute), "n=2 count differs from brute force")
        for n in (2, 3):
            c.expect(yb_conjugated(*chain_lattice(n)).holds, f"chain {n}")


def _entwining_fixtures():
    fixtures = []
    for name in ("dual-numbers", "diagonal-2", "group-z2"):
        A = ALGEBRAS[name]()
        C = dual_coalgebra(A)
        fixtures.append((f"flip-{name}", A, C, x_from_psi(flip_entwining(A, C)), True))
        fixtures.append((f"perturbed-{name}", A, C, perturbed_x(A, C, 2), False))
    return fixtures


def test_criterion_5_entwining_equivalence(acceptance_log):
    with Criterion(5, acceptance_log, budget=10) as c:
        fixtures = _entwining_fixtures()
        c.expect(len(fixtures) >= 6, "too few fixtures")
        for name, A, C, X, valid in fixtures:
            eq = entwining_iff_wxz(A, C, X)
            c.expect(eq.equivalence_consistent, f"{name} inconsistent")
            c.expect(eq.entwining_holds == valid, f"{name} entwining verdict")
            if valid:
                t = wxz_triple(A, C, X)
                c.expect(all(r.holds for r in check_wxz(t)), f"{name} wxz")
                c.expect(check_braid(glue(t)).holds, f"{name} glue braid")


def test_criterion_6_ujla_suite(acceptance_log):
    with Criterion(6, acceptance_log, budget=60) as c:
        rng = random.Random(6)
        pairs = [(Fraction(rng.randint(-5, 5), rng.randint(1, 4)), Fraction(rng.randint(-5, 5), rng.randint(1, 4))) for _ in range(5)]
        fixtures = []
        for name, make in ALGEBRAS.items():
            A = make()
            for alpha, beta in pairs:
                T = deform(A, alpha, beta)
                c.expect(check_ujla(T).holds, f"deform {name} {alpha},{beta}")
                fixtures.append(T)
            L, J = lie_structure(A), jordan_structure(A)
            c.expect(all(check_identity(L, i).holds for i in (Identity.ANTICOMM, Identity.JACOBI)), f"lie {name}")
            c.expect(check_identity(J, Identity.JORDAN).holds, f"jordan {name}")
            c.expect(inner_derivation_check(A).holds, f"inner derivation {name}")
            fixtures += [A, L, J]
        for p, q in [(1, 0), (0, 1), (2, -3), (Fraction(1, 2), Fraction(1, 2)), (-1, 4)]:
            c.expect(endomorphism_ujla(p, q, 2)[1].holds, f"End {p},{q}")
        for T in fixtures:
            if T.dim <= 5:
                c.expect(power_associativity(T, 5).holds, f"power associativity dim {T.dim}")


def test_criterion_7_derivations(acceptance_log):
    with Criterion(7, acceptance_log) as c:
        A = dual_numbers()
        left, right = regular_bimodule(A)
        c.expect(module_derivation_check(A, EULER, 2, left, right, EULER).holds, "module derivation")
        phi_a = algebra_yb_operator(A, 1, 1)
        c.expect(generalized_derivation_check(2, EULER, phi_a).holds, "algebra generalized derivation")
        phi_c = coalgebra_braid_operator(dual_coalgebra(A))
        c.expect(generalized_derivation_check(2, transpose(EULER), phi_c).holds, "coalgebra generalized derivation")
        c.expect(tau_symmetry_check(phi_a).holds, "tau symmetry, commutative")
        bad = tau_symmetry_check(algebra_yb_operator(matrix_algebra(2), 1, 1))
        c.expect(not bad.holds and bool(bad.witness), "tau symmetry, matrices")


def test_criterion_8_geometry(acceptance_log):
    with Criterion(8, acceptance_log, budget=5) as c:
        out = fuzz(1000, seed=0)
        c.expect(out["trials"] == 1000, "config count")
        c.expect(out["max_relative_johnson_residual"] <= 1e-9, f"johnson {out['max_relative_johnson_residual']:.2e}")
        c.expect(out["max_collinearity_residual"] <= 1e-6, f"collinear {out['max_collinearity_residual']:.2e}")
        probe = conjecture_probe({"ellipse": [1, 1]})
        for key in ("ratio_low", "ratio_high"):
            c.expect(abs(probe[key] - math.pi) <= 1e-10, f"circle {key}")


NEGATIVES = {
    "non-UJLA table": ["check", "ujla", "--table", "builtin:not-ujla"],
    "broken entwining": [
        "check", "entwining", "--algebra", "builtin:algebra-dual-numbers",
        "--coalgebra", "builtin:coalgebra-dual-numbers", "--operator", "builtin:broken-entwining",
    ],
    "non-solution map": ["set", "check", "--map", "builtin:non-solution-map"],
    "degenerate geometry": ["geo", "johnson", "--config", "builtin:degenerate-geometry"],
}


def test_criterion_9_negative_fixtures(acceptance_log, capsys):
    with Criterion(9, acceptance_log) as c:
        for name, argv in NEGATIVES.items():
            code = main(argv)
            data = json.loads(capsys.readouterr().out)
            c.expect(code == 1, f"{name}: exit {code}")
            c.expect(data["holds"] is False, f"{name}: holds")
            failed = [r for r in data["reports"] if not r["holds"]]
            c.expect(bool(failed) and all(r["witness"] for r in failed), f"{name}: witness")
