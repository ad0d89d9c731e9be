import random

import pytest
from hypothesis import given, strategies as st

from qtlab import quasimorph, witness
from qtlab.groups import bass_serre as bs
from qtlab.groups import gog, words
from qtlab.groups.words import EmptyWord

P = words.parse

letters = st.sampled_from([1, -1, 2, -2])
word_st = st.lists(letters, max_size=8).map(words.reduce)


def substring_count(w, pattern):
    # oracle: overlapping occurrences via string slicing
    s, p = words.fmt(w), words.fmt(pattern)
    if s == "1":
        return 0
    return sum(s[i:i + len(p)] == p for i in range(len(s) - len(p) + 1))


@pytest.fixture(scope="module")
def ab():
    q = quasimorph.brooks(P("ab"))
    q.measure_defect(quasimorph.ball_pairs(2, 4))
    return q


@pytest.fixture(scope="module")
def loop_graph():
    return gog.flip_preset({"loop": True})[0]


def test_brooks_counts(ab):
    assert ab(P("abab")) == 2
    assert ab(()) == 0
    assert ab(P("BA")) == -1
    with pytest.raises(EmptyWord):
        quasimorph.brooks(())


@given(word_st)
def test_brooks_matches_substring_oracle(w):
    pat = P("ab")
    want = substring_count(w, pat) - substring_count(w, words.inv(pat))
    assert quasimorph.brooks(pat)(w) == want


@given(word_st)
def test_brooks_antisymmetric(w):
    q = quasimorph.brooks(P("aB"))
    assert q(words.inv(w)) == -q(w)


def test_brooks_defect_on_ball(ab):
    assert 0 < ab.defect <= 3


@pytest.mark.parametrize("w", ["ab", "abAB"])
def test_homogenize_converges(ab, w):
    g = P(w)
    vals = [quasimorph.homogenize(ab, g, N) for N in range(1, 7)]
    for N, (x, y) in enumerate(zip(vals, vals[1:]), start=1):
        assert abs(x - y) <= ab.defect / 2**N
    assert vals[-1] >= 1
    with pytest.raises(ValueError):
        quasimorph.homogenize(ab, g, 0)


def test_homogenize_kills_conjugates_of_other_letters(ab):
    # a b^n A carries a single "ab", so the average tends to zero
    assert quasimorph.homogenize(ab, P("abA"), 10) == pytest.approx(2**-10)


def test_homogenized_homomorphism_is_exact():
    # the exponent sum of a is a homomorphism: defect 0 and homogeneous
    q = quasimorph.brooks(P("a"))
    assert q.measure_defect(quasimorph.ball_pairs(2, 3)) == 0
    for w in words.ball(2, 3)[:40]:
        assert quasimorph.homogenize(q, w, 6) == q(w)


def test_bounded_function_homogenizes_to_zero():
    q = quasimorph.Quasimorphism(lambda g: float(len(g) % 3), "bounded")
    assert q.measure_defect(quasimorph.ball_pairs(2, 3)) <= 4
    for w in words.ball(2, 3)[:40]:
        assert abs(quasimorph.homogenize(q, w, 10)) <= 2 / 2**10


@pytest.mark.parametrize("w", ["ab", "abAB", "aab", "abbA"])
def test_power_law(ab, w):
    g = P(w)
    base = quasimorph.homogenize(ab, g)
    for n in range(1, 9):
        got = quasimorph.homogenize(ab, words.power(g, n))
        assert abs(got - n * base) <= n * ab.defect / 2**10 + 1e-12


@given(word_st, word_st)
def test_homogenized_conjugation_invariance(ab, g, c):
    if not g:
        return
    hq = ab.homogenized()
    conj = words.mul(c, g, words.inv(c))
    assert abs(hq(conj) - hq(g)) <= hq.defect / 2**quasimorph.N_DEFAULT


def test_fiber_qm(loop_graph):
    q = quasimorph.fiber_qm()
    assert q((P("ab"), 3)) == 3
    assert q(loop_graph.z(-2)) == -2
    assert q(loop_graph.vertex_element(P("aB"), 5)) == 5
    assert q.defect == 0 and q.homogeneous
    # z_omega is conjugate into the edge group, which lies in the base vertex group
    assert q(witness.z_omega_element(loop_graph)) == 0
    with pytest.raises(ValueError):
        q(bs.odd_element(loop_graph))


def test_rho_values(loop_graph):
    out = witness.rho_check(loop_graph, n_defect=20)
    assert out["rho_z_mu"] == 1
    assert out["rho_z_omega"] == 0
    assert out["z_mu_nonzero"] and out["z_omega_zero"]


def test_rho_needs_even_square(loop_graph):
    q = quasimorph.vertex_fiber_qm(loop_graph)
    h = bs.odd_element(loop_graph)
    assert not quasimorph.is_even(h)
    with pytest.raises(quasimorph.NotInSubgroupSquare):
        q(h)


def test_rho_conjugation_invariant(loop_graph):
    q = quasimorph.vertex_fiber_qm(loop_graph)
    h = bs.odd_element(loop_graph)
    rng = random.Random(3)
    gens = gog.generators(loop_graph)
    z_mu, z_om = loop_graph.z(), witness.z_omega_element(loop_graph)
    for _ in range(50):
        c = gog.random_element(loop_graph, 3, rng, gens)
        assert quasimorph.extend_rho(q, h, z_mu.conj(c)) == 1
        assert quasimorph.extend_rho(q, h, z_om.conj(c)) == 0


def test_translation_number_requires_homogeneous(ab):
    with pytest.raises(ValueError):
        quasimorph.translation_number(ab, P("ab"))
    assert quasimorph.translation_number(ab.homogenized(), P("ab")) == pytest.approx(1.0)
    assert quasimorph.nonzero(1.0, 3.0) and not quasimorph.nonzero(1e-3, 3.0)
