import io
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from jchlab import (
    JohnsonInstance, BudgetExceededError,
    cov, coverage_fraction, brute_force_max_coverage, fpt_cover_decide,
    gen_instance, turan_random_uncovered, inapprox_factors,
    read_instance, write_instance,
)

COMPLETE_432 = gen_instance("complete", 4, 3, 2, 2)


def test_cov_complete_pair():
    assert cov((1, 2), COMPLETE_432) == ((1, 2, 3), (1, 2, 4))


def test_cov_empty_edges():
    inst = JohnsonInstance(4, 3, 2, (), 2)
    assert cov((1, 2), inst) == ()


def test_cov_single_element():
    # oracle: enumerate all C(5,3)=10 triples and filter by membership
    inst = gen_instance("complete", 5, 3, 1, 1)
    expect = tuple(t for t in inst.edges if 3 in t)
    assert len(expect) == 6
    assert cov((3,), inst) == expect


def test_cov_validates():
    with pytest.raises(ValueError):
        cov((1, 2, 3), COMPLETE_432)
    with pytest.raises(ValueError):
        cov((0, 2), COMPLETE_432)


def test_coverage_fraction_examples():
    assert coverage_fraction([(1, 2), (3, 4)], COMPLETE_432).fraction == 1
    assert coverage_fraction([(1, 2)], COMPLETE_432).fraction == Fraction(2, 4)
    assert coverage_fraction([], COMPLETE_432).fraction == 0


def test_coverage_fraction_budget():
    with pytest.raises(ValueError):
        coverage_fraction([(1, 2), (1, 3), (1, 4)], COMPLETE_432)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_coverage_monotone_under_additions(data):
    n = data.draw(st.integers(4, 7))
    m = data.draw(st.integers(0, math.comb(n, 3)))
    seed = data.draw(st.integers(0, 10**6))
    inst = gen_instance("random", n, 3, 2, k=10, m=m, seed=seed)
    pairs = [tuple(sorted(p)) for p in
             data.draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n))
                                .filter(lambda p: p[0] != p[1]),
                                min_size=0, max_size=4))]
    pairs = sorted(set(pairs))
    extra = data.draw(st.tuples(st.integers(1, n), st.integers(1, n))
                      .filter(lambda p: p[0] != p[1] and tuple(sorted(p)) not in pairs))
    before = coverage_fraction(pairs, inst).covered
    after = coverage_fraction(pairs + [tuple(sorted(extra))], inst).covered
    assert after >= before


def test_brute_force_frozen_values():
    inst1 = JohnsonInstance(4, 3, 2, COMPLETE_432.edges, 1)
    best, rep = brute_force_max_coverage(inst1)
    assert rep.covered == 2 and best == ((1, 2),)
    best, rep = brute_force_max_coverage(COMPLETE_432)
    assert rep.covered == 4 and best == ((1, 2), (3, 4))
    inst3 = gen_instance("complete", 5, 3, 1, 1)
    best, rep = brute_force_max_coverage(inst3)
    assert rep.covered == 6


def test_brute_force_budget_error():
    with pytest.raises(BudgetExceededError):
        brute_force_max_coverage(COMPLETE_432, budget=3)


def test_brute_force_worker_independence():
    inst = gen_instance("random", 7, 3, 2, k=3, m=12, seed=11)
    results = [brute_force_max_coverage(inst, workers=w) for w in (1, 2, 5)]
    assert results[0] == results[1] == results[2]


def test_fpt_examples():
    assert fpt_cover_decide(COMPLETE_432) == (True, ((1, 2), (3, 4)))
    inst1 = JohnsonInstance(4, 3, 2, COMPLETE_432.edges, 1)
    assert fpt_cover_decide(inst1) == (False, None)
    empty = JohnsonInstance(4, 3, 2, (), 0)
    assert fpt_cover_decide(empty) == (True, ())


def test_fpt_requires_y_is_z_minus_1():
    inst = gen_instance("complete", 5, 3, 1, 2)
    with pytest.raises(ValueError):
        fpt_cover_decide(inst)


def test_fpt_witness_covers():
    decision, witness = fpt_cover_decide(COMPLETE_432)
    assert decision
    assert coverage_fraction(witness, COMPLETE_432).is_complete


def test_fpt_agrees_with_brute_small():
    # every instance with C(n, y) <= 20 candidates and k <= 4
    rng = random.Random(5)
    for trial in range(60):
        n = rng.randint(4, 6)
        m = rng.randint(0, math.comb(n, 3))
        k = rng.randint(0, 4)
        inst = gen_instance("random", n, 3, 2, k=k, m=m, seed=rng.randint(0, 10**6))
        assert math.comb(n, 2) <= 20
        decision, _ = fpt_cover_decide(inst)
        _, rep = brute_force_max_coverage(inst)
        assert decision == rep.is_complete


def test_gen_complete_counts():
    assert gen_instance("complete", 4, 3, 2, 1).num_edges == 4
    assert gen_instance("complete", 6, 4, 3, 1).num_edges == 15


def test_gen_random_deterministic():
    a = gen_instance("random", 10, 3, 2, 4, m=20, seed=7)
    b = gen_instance("random", 10, 3, 2, 4, m=20, seed=7)
    assert a.edges == b.edges and a.num_edges == 20
    c = gen_instance("random", 10, 3, 2, 4, m=20, seed=8)
    assert c.edges != a.edges


def test_gen_random_m_too_big():
    with pytest.raises(ValueError):
        gen_instance("random", 5, 3, 2, 1, m=11, seed=0)


def test_gen_dense_flag():
    with pytest.raises(ValueError):
        gen_instance("random", 6, 3, 2, 5, m=4, seed=0, dense=True)
    inst = gen_instance("random", 6, 3, 2, 1, m=10, seed=0, dense=True)
    assert inst.num_edges == 10


def test_complete_cover_degree():
    # on the complete instance each (z-1)-subset covers exactly n-z+1 edges
    for n, z in ((5, 3), (6, 4), (7, 3)):
        inst = gen_instance("complete", n, z, z - 1, 1)
        from itertools import combinations
        for s in combinations(range(1, n + 1), z - 1):
            assert len(cov(s, inst)) == n - z + 1


def test_instance_validation():
    with pytest.raises(ValueError):
        JohnsonInstance(4, 3, 3, (), 1)
    with pytest.raises(ValueError):
        JohnsonInstance(4, 3, 2, ((1, 2, 3), (1, 2, 3)), 1)
    with pytest.raises(ValueError):
        JohnsonInstance(4, 3, 2, ((1, 2, 5),), 1)


def test_instance_file_roundtrip():
    inst = gen_instance("random", 8, 3, 2, 3, m=14, seed=3)
    buf = io.StringIO()
    write_instance(inst, buf)
    buf.seek(0)
    assert read_instance(buf) == inst


def test_turan_values():
    assert turan_random_uncovered(4) == Fraction(24, 125)
    assert turan_random_uncovered(3) == 0
    assert abs(float(turan_random_uncovered(50)) - 1 / math.e) <= 0.01
    with pytest.raises(ValueError):
        turan_random_uncovered(1)


def test_turan_limit_behavior():
    for z in (10, 20, 50):
        v = turan_random_uncovered(z)
        assert 0 < v < 1
        assert abs(math.log(v) + 1) <= 1.2 / z


def test_inapprox_factors_values():
    e = math.e
    t = inapprox_factors(1, 1, 1 - 1 / e)
    assert abs(t.zeta1 - (1 + 2 / e)) < 1e-12
    assert abs(t.zeta2 - (1 + 8 / e)) < 1e-12
    t = inapprox_factors(2, 1, 1 - 1 / e)
    assert 1.26 <= t.zeta1 <= 1.28
    assert 1.73 <= t.zeta2 <= 1.74
    t = inapprox_factors(1, 2, Fraction(7, 8))
    assert t.zeta1 == Fraction(9, 8) and t.zeta2 == Fraction(11, 8)


def test_inapprox_factor_ordering():
    for p in (1, 2):
        for delta in (1, 2, 3):
            for alpha in (0.0, 0.3, 0.875):
                t = inapprox_factors(p, delta, alpha)
                assert t.zeta2 > t.zeta1 > 1


def test_inapprox_factors_rejects():
    with pytest.raises(ValueError):
        inapprox_factors(3, 1, 0.5)
    with pytest.raises(ValueError):
        inapprox_factors(1, 0, 0.5)
    with pytest.raises(ValueError):
        inapprox_factors(1, 1, 1.5)


def test_worker_count_env(monkeypatch):
    from jchlab.coverage import worker_count
    monkeypatch.setenv("JCHLAB_THREADS", "3")
    assert worker_count() == 3
    assert worker_count(2) == 2
    monkeypatch.delenv("JCHLAB_THREADS")
    assert worker_count() == 1
