import math
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from crisislens.distribution import WordDistribution
from crisislens.errors import EmptyDistribution, SupportViolation
from crisislens.infotheory import CORPUS_1, CORPUS_2, binary_entropy, jsd, kl_divergence, shannon_entropy


def wd(**counts):
    return WordDistribution(Counter(counts))


class TestEntropy:
    def test_uniform_four(self):
        assert shannon_entropy(wd(a=1, b=1, c=1, d=1)) == 2.0

    def test_single(self):
        h = shannon_entropy(wd(a=7))
        assert h == 0.0 and math.copysign(1.0, h) == 1.0

    def test_mixed(self):
        assert shannon_entropy([0.5, 0.25, 0.25]) == pytest.approx(1.5, abs=1e-15)

    def test_zero_terms_ignored(self):
        assert shannon_entropy({"a": 0.5, "b": 0.5, "c": 0.0}) == 1.0

    def test_empty(self):
        with pytest.raises(EmptyDistribution):
            shannon_entropy(wd())


class TestKL:
    def test_self(self):
        assert kl_divergence(wd(a=1, b=3), wd(a=2, b=6)) == 0.0

    def test_value(self):
        assert kl_divergence({"a": 1.0}, {"a": 0.5, "b": 0.5}) == pytest.approx(1.0, abs=1e-15)

    def test_support(self):
        with pytest.raises(SupportViolation):
            kl_divergence({"a": 0.5, "z": 0.5}, {"a": 1.0})


class TestJSD:
    def test_identical(self):
        rep = jsd(wd(a=2, b=1), wd(a=4, b=2))
        assert rep.total == 0.0
        assert all(c.bits == 0.0 and c.direction is None for c in rep.contributions.values())

    def test_disjoint_balanced(self):
        assert jsd(wd(a=3), wd(b=3)).total == pytest.approx(1.0, abs=1e-15)

    def test_reference_pair(self):
        # m = {a: .75, b: .25}; frozen from the brute-force oracle
        rep = jsd({"a": 1.0}, {"a": 0.5, "b": 0.5}, weights=(0.5, 0.5))
        assert rep.total == pytest.approx(0.311278124459, abs=1e-12)
        assert rep.total == pytest.approx(oracles.jsd_bruteforce({"a": 2}, {"a": 1, "b": 1}, (0.5, 0.5)), abs=1e-15)
        assert rep.contributions["a"].direction == CORPUS_1
        assert rep.contributions["b"].direction == CORPUS_2
        assert rep.contributions["b"].bits == pytest.approx(0.25, abs=1e-15)

    def test_default_weights_are_relative_sizes(self):
        rep = jsd(wd(a=1, b=2), wd(a=3, c=3))
        assert rep.weights == (1 / 3, 2 / 3)

    def test_mixture_sums_to_one(self):
        rep = jsd(wd(a=1, b=2), wd(a=3, c=3))
        assert math.fsum(rep.mixture.values()) == pytest.approx(1.0, abs=1e-12)

    def test_bad_weights(self):
        with pytest.raises(ValueError):
            jsd(wd(a=1), wd(b=1), weights=(0.6, 0.6))

    def test_empty(self):
        with pytest.raises(EmptyDistribution):
            jsd(wd(), wd(a=1))

    def test_report_dict_sorted(self):
        doc = jsd(wd(a=5, b=1), wd(b=5, c=1)).to_dict()
        bits = [c["bits"] for c in doc["contributions"]]
        assert bits == sorted(bits, reverse=True)
        assert set(doc) == {"total_bits", "weights", "contributions"}


counts = st.dictionaries(st.sampled_from([f"w{i}" for i in range(20)]), st.integers(1, 100), min_size=1)


@given(counts, counts)
def test_symmetry_and_bounds(c1, c2):
    a, b = jsd(WordDistribution(Counter(c1)), WordDistribution(Counter(c2))), None
    b = jsd(WordDistribution(Counter(c2)), WordDistribution(Counter(c1)))
    assert abs(a.total - b.total) <= 1e-12
    for t, c in a.contributions.items():
        flipped = {CORPUS_1: CORPUS_2, CORPUS_2: CORPUS_1, None: None}[c.direction]
        assert b.contributions[t].direction == flipped
    assert -1e-12 <= a.total <= binary_entropy(*a.weights) + 1e-12 <= 1 + 1e-12


@given(counts, counts)
def test_decomposition_and_identity(c1, c2):
    p1, p2 = WordDistribution(Counter(c1)), WordDistribution(Counter(c2))
    rep = jsd(p1, p2)
    assert all(c.bits >= -1e-12 for c in rep.contributions.values())
    assert abs(math.fsum(c.bits for c in rep.contributions.values()) - rep.total) <= 1e-9
    pi1, pi2 = rep.weights
    identity = shannon_entropy(rep.mixture) - pi1 * shannon_entropy(p1) - pi2 * shannon_entropy(p2)
    assert abs(identity - rep.total) <= 1e-9
    assert abs(rep.total - oracles.jsd_bruteforce(c1, c2)) <= 1e-12


@given(counts)
def test_zero_only_for_equal(c):
    assert jsd(WordDistribution(Counter(c)), WordDistribution(Counter(c)).scaled(3)).total == pytest.approx(0.0, abs=1e-15)
