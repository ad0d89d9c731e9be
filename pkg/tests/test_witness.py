import math
import random

import pytest

from qtlab import hplane, quasitree, witness
from qtlab.groups import bass_serre as bs
from qtlab.groups import gog, words
from qtlab.groups.schottky import default_rep

P = words.parse


@pytest.fixture(scope="module")
def loopless():
    return witness.scenario("flip-loopless")


@pytest.fixture(scope="module")
def th(loopless):
    return witness.thresholds_for([loopless.X, loopless.Y])


def test_thresholds(loopless, th):
    assert th.eps_lox == pytest.approx(0.05 * min(loopless.X.unit, loopless.Y.unit))
    assert th.b_ell == pytest.approx(3 * max(loopless.X.xi, loopless.Y.xi) + 2)


def test_identity_is_elliptic(loopless, th):
    graph = loopless.extras["graph"]
    c = witness.classify_element(loopless.X, graph.identity(), th)
    assert c.kind == "elliptic"
    assert c.stable_translation_length == 0
    assert c.orbit_diameter == 0


def test_fiber_translation_length_on_its_quasi_line():
    sc = witness.scenario("seifert-f2xz")
    for n in (1, 3):
        stl = witness.stable_translation_length(sc.X, ((), n))
        assert stl == pytest.approx(n * sc.X.unit, rel=0.05)
    loop = witness.scenario("flip-with-loop")
    assert witness.stable_translation_length(loop.X, loop.a) == pytest.approx(loop.X.unit, rel=0.05)


def test_fiber_is_loxodromic_on_the_quasi_tree(loopless, th):
    c = witness.classify_element(loopless.X, loopless.a, th)
    assert c.kind == "loxodromic" and c.monotone
    assert c.orbit_diameter > th.b_ell


def test_other_fiber_is_elliptic_below_threshold(loopless, th):
    c = witness.classify_element(loopless.X, loopless.b, th)
    assert c.kind == "elliptic"
    assert c.stable_translation_length < th.eps_lox


def test_base_generator_on_Q1_is_below_threshold():
    graph = gog.flip_preset({"loop": True})[0]
    Q1 = witness.QuasiTreeAction(graph, 2, "class-label", bs.V1, label=graph.base, name="Q1")
    th = witness.thresholds_for([Q1])
    g = graph.vertex_element("a")
    Q1.prepare([g])
    disp = Q1.displacements(g, witness.N_ORB)
    assert max(disp) <= th.b_ell
    assert witness.stable_translation_length(Q1, g) < th.eps_lox
    assert witness.classify_element(Q1, g, th).kind == "elliptic"


def test_classification_is_conjugation_invariant(th):
    sc = witness.scenario("flip-loopless")
    graph = sc.extras["graph"]
    rng = random.Random(5)
    gens = gog.generators(graph)
    c = gog.random_element(graph, 2, rng, gens)
    for g, kind in ((sc.a, "loxodromic"), (sc.b, "elliptic")):
        assert witness.classify_element(sc.X, g.conj(c), th).kind == kind


@pytest.mark.parametrize("n", [2, 3, 4])
def test_power_stability(n, th):
    sc = witness.scenario("flip-loopless")
    stl = witness.stable_translation_length(sc.X, sc.a)
    got = witness.stable_translation_length(sc.X, sc.a**n)
    assert got == pytest.approx(n * stl, rel=0.10)
    assert witness.classify_element(sc.X, sc.a**n, th).kind == "loxodromic"
    assert witness.classify_element(sc.X, sc.b**n, th).kind == "elliptic"


def test_line_action_power_law():
    A = witness.LineAction("line", lambda g: g)
    for n in range(1, 5):
        assert witness.stable_translation_length(A, 0.7 * n) == pytest.approx(n * witness.stable_translation_length(A, 0.7))
    with pytest.raises(ValueError):
        witness.stable_translation_length(A, 1.0, N=1)


def test_cayley_action():
    A = witness.CayleyAction()
    assert witness.classify_element(A, P("ab")).kind == "loxodromic"
    assert witness.stable_translation_length(A, P("ab")) == 2
    # a conjugate of a generator translates by 1 asymptotically
    assert witness.stable_translation_length(A, P("baB"), N=12) == pytest.approx(1 + 2 / 12)
    assert witness.classify_element(A, ()).kind == "elliptic"


def test_equal_elements_are_not_a_witness(loopless, th):
    rep = witness.lemma_key_witness(loopless.a, loopless.a, loopless.X, loopless.Y, loopless.ops, th)
    assert rep.commute
    assert rep.verdict == "not-witness"


def test_non_commuting_pair_is_not_a_witness():
    sc = witness.scenario("seifert-f2xz")
    rep = witness.lemma_key_witness((P("a"), 0), (P("b"), 0), sc.X, sc.Y, sc.ops)
    assert not rep.commute
    assert rep.verdict == "not-witness"


@pytest.mark.parametrize("name", ["z2-torus", "seifert-f2xz"])
def test_easy_witnesses(name):
    sc = witness.scenario(name)
    rep = sc.witness()
    assert rep.verdict == "witness"
    d = rep.as_dict()
    assert d["pass"] and d["a_in_X"]["kind"] == "loxodromic"


def test_unknown_scenario():
    with pytest.raises(witness.UnknownScenario):
        witness.scenario("klein-bottle")


def test_small_K_is_rejected(loopless):
    with pytest.raises(quasitree.KTooSmall):
        witness.scenario("flip-loopless", radius=2, K=1.0)


def test_projection_recurrence_bounded(loopless):
    out = witness.projection_recurrence(loopless.X, loopless.a)
    assert out["bounded"]
    assert out["max_off_orbit_projection"] < out["K"]


def test_lemma_important_default():
    rep = witness.lemma_important_check(default_rep())
    assert rep.passed
    assert rep.case1_max <= rep.lambda_bound
    assert rep.case2_max <= rep.d2 + 2 * rep.xi + 1e-9
    # the axis of gamma itself sees the orbit run away linearly
    assert max(rep.axis_values) > rep.lambda_bound


def test_lemma_important_alpha_is_axis():
    rep0 = default_rep()
    gamma = P("abAB")
    alpha = hplane.axis(rep0.evaluate(gamma))[0]
    rep = witness.lemma_important_check(rep0, alpha=alpha)
    assert rep.d1 == pytest.approx(0, abs=1e-9)
    assert rep.max_observed <= rep.xi + 1e-12


def test_lemma_important_not_peripheral():
    rep0 = default_rep()
    with pytest.raises(witness.NotPeripheral):
        witness.lemma_important_check(rep0, gamma=P("abAB"), alpha=hplane.Geodesic(0.123, 4.56))
    with pytest.raises(witness.NotPeripheral):
        witness.lemma_important_check(rep0, gamma=P("ab"))


def test_inproof_K_too_small():
    with pytest.raises(quasitree.KTooSmall) as exc:
        witness.lemma_inproof_check(K=10)
    assert "lambda" in exc.value.what
    assert witness.inproof_K(1.0, 2.0) > 4 * 1.0 + 4 + 2 * 2.0 + 2.0**2
