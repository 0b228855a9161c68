"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line with its worst residual and
runtime; the lines are also collected and repeated in the terminal summary
(see conftest.py).
"""

import json
import math
import subprocess
import sys
import time

import numpy as np

from qnlo import pdm
from qnlo import statistics as stats
from qnlo.fock_algebra import deformation_f, energy_raw, uncertainty_report
from qnlo.p_hermite import recurrence_residual_down, recurrence_residual_up
from qnlo.states import (build_even, build_gis, build_gk, build_nlcs, build_odd, eigen_residual, gk_evolve,
                         synthesize_position)
from qnlo.wavefunctions import (apply_A_differential, apply_Adag_differential, overlap, psi_table,
                                schrodinger_residual)

RESULTS = []
SWEEP = np.round(np.arange(1, 201) * 0.1, 10)
ORACLE_POINTS = (0.25, 1.0, 4.0, 9.0, 16.0, 20.0)


class Criterion:
    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.worst = -math.inf

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def track(self, value):
        self.worst = max(self.worst, float(value))
        return value

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        ok = exc_type is None and elapsed < self.budget
        line = (f"criterion {self.number:2d} {'PASS' if ok else 'FAIL'}  {self.title}  "
                f"worst={self.worst:.3g}  runtime={elapsed:.3f}s (limit {self.budget:g}s)")
        RESULTS.append(line)
        print(line)
        if exc_type is None:
            assert elapsed < self.budget, line
        return False


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


def test_criterion_01_nlcs_anchors():
    with Criterion(1, "NLCS r=0 anchors <n>=3, Q=-1, g2=2/3", 1e-3) as c:
        rep = stats.statistics_report(build_nlcs(0.0))
        for got, want in ((rep.mean_n, 3.0), (rep.mandel_q, -1.0), (rep.g2, 2.0 / 3.0)):
            assert c.track(abs(got - want)) <= 1e-12


def test_criterion_02_sweep_properties():
    with Criterion(2, "NLCS and GK sweep r in (0,20]: Q<0 and g2<1 (worst = max(Q, g2-1))", 1.0) as c:
        for r in SWEEP:
            for s in (build_nlcs(math.sqrt(r)), build_gk(math.sqrt(r), 0.0)):
                m1, m2 = stats.moments(s)
                q, g = stats.q_from_moments(m1, m2), stats.g2_from_moments(m1, m2)
                c.track(max(q, g - 1.0))
                assert q < 0 and g < 1


def test_criterion_03_closed_forms_vs_sums():
    with Criterion(3, "closed forms vs amplitude sums at 6 points, 1e-10 relative", 1.0) as c:
        for r in ORACLE_POINTS:
            closed = stats.nlcs_closed_forms(r)
            # the normalization series itself
            s = build_nlcs(math.sqrt(r))
            direct_norm = sum(r ** (n - 3) * math.exp(-(math.lgamma(n + 1) - math.log(6)
                                                         + math.lgamma(n) + math.lgamma(n - 2) - math.log(2)))
                              for n in range(3, 200))
            assert c.track(rel(stats.normalization_series(r), direct_norm)) <= 1e-10
            for state in (s, build_gk(math.sqrt(r), 0.7)):
                m1, m2 = stats.moments(state)
                direct = stats.ClosedForms(m1, m2, stats.q_from_moments(m1, m2), stats.g2_from_moments(m1, m2))
                assert c.track(stats.compare(closed, direct)) <= 1e-10


def test_criterion_04_cat_anchors_and_report(tmp_path):
    with Criterion(4, "even/odd anchors, sweep Q<0, closed-form discrepancy report", 5.0) as c:
        for build, mean, g2 in ((build_even, 4.0, 0.75), (build_odd, 3.0, 2.0 / 3.0)):
            rep = stats.statistics_report(build(0.0))
            for got, want in ((rep.mean_n, mean), (rep.mandel_q, -1.0), (rep.g2, g2)):
                assert c.track(abs(got - want)) <= 1e-12
        for r in SWEEP:
            for build in (build_even, build_odd):
                q = stats.mandel_q(build(math.sqrt(r)))
                assert q < 0
        report = {p: [dict(stats.cat_discrepancy_report(float(r), p), r=float(r)) for r in SWEEP]
                  for p in ("even", "odd")}
        path = tmp_path / "cat_discrepancy.json"
        path.write_text(json.dumps(report, indent=1, default=float))
        flagged = [(p, e["r"]) for p in report for e in report[p] if e["flagged"]]
        worst = max(e["max_relative_mismatch"] for p in report for e in report[p])
        print(f"    cat closed-form report: {len(flagged)} flagged point(s), worst mismatch {worst:.2e}")
        # the report is the artifact; it must exist and be internally consistent
        assert all(e["flagged"] == (e["max_relative_mismatch"] >= stats.CAT_MISMATCH_TOL)
                   for p in report for e in report[p])


def test_criterion_05_differential_ladder():
    with Criterion(5, "differential ladder vs Fock contract, n in [4,10], x in [-5,5]", 2.0) as c:
        x = np.linspace(-5, 5, 1001)
        for n in range(4, 11):
            tab = psi_table(n + 1, x)
            for got, want in ((apply_A_differential(n, x), math.sqrt(n) * deformation_f(n) * tab[n - 1]),
                              (apply_Adag_differential(n, x), math.sqrt(n + 1) * deformation_f(n + 1) * tab[n + 1])):
                err = np.abs(got - want).max() / np.abs(want).max()
                assert c.track(err) <= 1e-7


def test_criterion_06_recurrences():
    rng = np.random.default_rng(20240611)
    x = rng.uniform(-6.0, 6.0, 100)
    with Criterion(6, "P-Hermite recurrences, n<=20, 100 random abscissae", 1.0) as c:
        for n in range(3, 21):
            assert c.track(np.max(recurrence_residual_up(n, x))) <= 1e-9
            if n >= 4:
                assert c.track(np.max(recurrence_residual_down(n, x))) <= 1e-9


def test_criterion_07_orthonormality_and_schrodinger():
    levels = (0, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12)
    x = np.linspace(-6, 6, 241)
    with Criterion(7, "orthonormality 1e-8 and Schrodinger residual 1e-6", 5.0) as c:
        for i, n in enumerate(levels):
            for m in levels[i:]:
                assert c.track(abs(overlap(n, m) - (n == m))) <= 1e-8
            assert schrodinger_residual(n, x).max() <= 1e-6


def test_criterion_08_gis():
    with Criterion(8, "GIS: lambda=1 collapse, eigen residual, uncertainty saturation", 5.0) as c:
        for alpha in (0.0, 0.5, 1.0, 2.0, 1 + 1j):
            assert np.array_equal(build_gis(alpha, 1.0).coeffs, build_nlcs(alpha).coeffs)
        for alpha in (1.0, 2.0):
            for lam in (0.3, 0.5, 2.0):
                s = build_gis(alpha, lam)
                assert c.track(eigen_residual(s, "gis", alpha=alpha, lam=lam)) <= 1e-8
                u = uncertainty_report(s)
                assert c.track(abs(u.saturation_residual)) <= 1e-6


def test_criterion_09_gk():
    with Criterion(9, "GK action identity and temporal stability", 1.0) as c:
        for z in (0.5, 1.0, 3.0):
            p = build_gk(z, 0.4).probabilities()
            h = float(np.dot(energy_raw(np.arange(p.size)), p))
            assert c.track(abs(h - z * z) / (z * z)) <= 1e-10
        for z, g, t in ((1.0, 0.2, 0.5), (3.0, 0.0, 1.7), (0.5 + 0.5j, 1.0, -0.3)):
            diff = np.abs(gk_evolve(build_gk(z, g), t).coeffs - build_gk(z, g + t).coeffs).max()
            assert c.track(diff) <= 1e-14


def test_criterion_10_completeness():
    with Criterion(10, "completeness integrals n=3..6 and n=3 pole flag", 2.0) as c:
        oracle = {3: 1.5, 4: 36.0, 5: 1209600.0}
        for n in (3, 4, 5, 6):
            rep = stats.completeness_integral(n)
            assert c.track(rel(rep.numeric, rep.gamma_form)) <= 1e-8
            if n in oracle:
                assert c.track(rel(rep.numeric, oracle[n])) <= 1e-8
        three = stats.completeness_integral(3)
        assert three.printed_form is None and "pole" in three.note


def test_criterion_11_pdm():
    y = np.linspace(-6, 6, 401)
    one, two = pdm.MassProfile.rational(1.0), pdm.MassProfile.rational(2.0)
    with Criterion(11, "PDM: gamma=1 reduction, gamma=2 ladder contracts, orthonormality", 10.0) as c:
        const = psi_table(12, y)
        assert c.track(np.abs(pdm.pdm_psi_table(12, one, y) - const).max()) <= 1e-10
        for n in range(3, 12):
            if n >= 4:
                assert c.track(np.abs(pdm.pdm_apply_A(n, one, y) - apply_A_differential(n, y)).max()) <= 1e-10
            assert c.track(np.abs(pdm.pdm_apply_Adag(n, one, y) - apply_Adag_differential(n, y)).max()) <= 1e-10
        for s in (build_nlcs(1.5), build_gis(1.0, 0.5), build_gk(1.0, 0.3), build_even(2.0), build_odd(2.0)):
            assert c.track(np.abs(pdm.pdm_state(s, one, y) - synthesize_position(s, y)).max()) <= 1e-10
        for n in range(3, 11):
            assert c.track(max(pdm.ladder_contract_error(n, two, y).values())) <= 1e-6
        levels = (0, 3, 4, 5, 6, 8)
        for i, n in enumerate(levels):
            for m in levels[i:]:
                assert c.track(abs(pdm.pdm_overlap(n, m, two) - (n == m))) <= 1e-7


def test_criterion_12_verify_command():
    with Criterion(12, "qnlo verify: exit 0", 60.0) as c:
        res = subprocess.run([sys.executable, "-m", "qnlo.cli", "verify"], capture_output=True, text=True,
                             timeout=120)
        doc = json.loads(res.stdout)
        c.track(max(s["max_residual"] for s in doc["suites"]))
        assert res.returncode == 0 and doc["passed"], res.stderr

