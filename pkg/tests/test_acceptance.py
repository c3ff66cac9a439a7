"""Exit criteria for the package, one test per criterion.

Each test enforces its own runtime ceiling. ``pytest`` prints a
PASS/FAIL line per criterion in the "acceptance criteria" summary section.
"""

import random
import time
from fractions import Fraction

import pytest

from knapqsec import param_security as ps
from knapqsec import quantum_sim as qs
from knapqsec.chor_rivest import (
    ExtensionField,
    PrimeFieldPoly,
    binomial,
    decode_message,
    decrypt,
    discrete_log,
    discrete_log_naive,
    encode_message,
    encrypt,
    find_primitive,
    keygen,
    random_irreducible,
    recover_logs,
)
from knapqsec.core import (
    brute_force_solutions,
    count_extended_solutions,
    meet_in_the_middle_solutions,
    new_instance,
)

from conftest import random_instance

CR_PARAMS = [(7, 4), (11, 5), (13, 5)]


class Timer:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


def planted_instance(rng, n):
    """Random instance whose target is the subset sum of a random x, so k >= 1."""
    r = rng.randint(2, 4**n)
    b = [rng.randrange(r) for _ in range(n)]
    x = rng.getrandbits(n)
    s = sum(bi for i, bi in enumerate(b) if (x >> (n - 1 - i)) & 1) % r
    return new_instance(b, s, r)


def small_corpus():
    """n <= 2 exhaustively over every B and S for r in 2..32, then 10^4 random n = 3 instances."""
    for r in range(2, 33):
        for b1 in range(r):
            for s in range(r):
                yield new_instance([b1], s, r)
        for b1 in range(r):
            for b2 in range(r):
                for s in range(r):
                    yield new_instance([b1, b2], s, r)
    rng = random.Random(6)
    for _ in range(10_000):
        r = rng.randint(2, 32)
        yield new_instance([rng.randrange(r) for _ in range(3)], rng.randrange(r), r)


def test_criterion_01_quantum_ratio_reproduction():
    with Timer(1.0):
        ratio = ps.quantum_ratio(109, 29)
        report = ps.chor_rivest_quantum_audit(109, 29, budget=0)
        assert ps.round_decimal(ratio, 1) == "3460753.1"
        assert report.break_probability_bound == 1 / (2 * ratio)
        assert f"1/{ps.round_decimal(1 / report.break_probability_bound, 1)}" == "1/6921506.2"
        assert report.to_json()["break_probability_display"] == "1/6921506.2"


def test_criterion_02_five_conditions():
    with Timer(1.0):
        fc = ps.check_fc(109, 29)
        assert fc.to_json() == {"p_prime": True, "h_prime": True, "h_le_p": True,
                                "h_in_11_31": True, "size_window": True}


def test_criterion_03_simulator_soundness():
    rng = random.Random(3)
    runs = successes = 0
    with Timer(60.0):
        for _ in range(1000):
            n = rng.randint(2, 6)
            inst = planted_instance(rng, n) if rng.random() < 0.5 else random_instance(rng, n)
            for trial in range(25):
                out = qs.run_once(inst, qs.trial_seed(rng.getrandbits(64), trial))
                runs += 1
                if out.success:
                    successes += 1
                    assert inst.weighted_sum(out.m) == inst.s
    print(f"criterion 3: {successes} successes over {runs} runs, all sound")
    assert successes > 0


def test_criterion_04_exact_vs_sampled():
    rng = random.Random(4)
    trials = 10_000
    agree = 0
    with Timer(120.0):
        for idx in range(20):
            inst = planted_instance(rng, rng.randint(1, 5))
            exact = qs.success_probability_exact(inst)
            est = qs.estimate_success_probability(inst, trials, seed=1000 + idx)
            sigma = (float(exact) * (1 - float(exact)) / trials) ** 0.5
            ok = abs(est.frequency - float(exact)) <= 3 * sigma
            agree += ok
            print(f"  inst {idx}: exact={float(exact):.5f} sampled={est.frequency:.5f} ok={ok}")
    assert agree >= 19


def test_criterion_05_hand_enumeration_fixtures():
    with Timer(1.0):
        assert qs.success_probability_exact(new_instance([1], 1, 4)) == Fraction(1, 4)
        assert qs.success_probability_exact(new_instance([2], 1, 4)) == 0


def test_criterion_06_collision_identities_exhaustive():
    checked = 0
    with Timer(300.0):
        for inst in small_corpus():
            t1 = qs.verify_theorem1(inst)
            c1 = qs.verify_corollary1(inst)
            assert t1.holds, (inst, t1.counterexamples)
            assert c1.holds, (inst, c1.counterexamples)
            checked += 1
    print(f"criterion 6: {checked} instances, zero counterexamples")
    assert checked > 10_000


def test_criterion_07_bound_claim_report():
    produced = violating = 0
    for inst in small_corpus():
        report = qs.paper_bound_report(inst)
        dist = qs.exact_distribution(inst)
        assert {row.A: (row.N0, row.N1) for row in report.rows} == dist.counts
        assert all(row.p1 == dist.p_a0_given(row.A) for row in report.rows)
        produced += 1
        violating += bool(report.p1_claim_violations)
    known = qs.paper_bound_report(new_instance([1], 1, 4))
    assert 0 in known.p1_claim_violations
    print(f"criterion 7: {produced} reports, {violating} with a P1 <= 1/2 outcome")


def test_criterion_08_extended_count_partition():
    rng = random.Random(8)
    with Timer(60.0):
        for _ in range(50):
            n = rng.randint(1, 6)
            r = rng.randint(2, 4**n)
            b = [rng.randrange(r) for _ in range(n)]
            assert sum(count_extended_solutions(b, s, r) for s in range(r)) == 4**n


def test_criterion_09_solver_equivalence():
    rng = random.Random(9)
    with Timer(120.0):
        for _ in range(200):
            n = rng.randint(1, 18)
            inst = random_instance(rng, n, r_max=min(4**n, 2**40))
            assert meet_in_the_middle_solutions(inst) == brute_force_solutions(inst)


@pytest.fixture(scope="module")
def keypairs():
    return {ph: keygen(*ph, seed=10 + i) for i, ph in enumerate(CR_PARAMS)}


def test_criterion_10_chor_rivest_roundtrip(keypairs):
    rng = random.Random(10)
    with Timer(300.0):
        for (p, h), (pub, priv) in keypairs.items():
            top = binomial(p, h)
            messages = [0, top - 1] + [rng.randrange(top) for _ in range(100)]
            for m in messages:
                assert decrypt(priv, pub, encrypt(pub, m)) == m


def test_criterion_11_discrete_log_correctness(keypairs):
    for (p, h), (pub, priv) in keypairs.items():
        field = priv.field()
        for i, a in enumerate(recover_logs(pub, priv)):
            assert field.pow(priv.g, a) == PrimeFieldPoly((i, 1), p)
    for p in (3, 7):
        f = random_irreducible(p, 2, seed=p)
        field = ExtensionField(p, f)
        g = find_primitive(p, 2, f, seed=p)
        for e in field.nonzero_elements():
            assert discrete_log(g, e, p, 2, f, field=field) == discrete_log_naive(g, e, field)


def test_criterion_12_encoding_bijection():
    for p, h in [(7, 3), (9, 4)]:
        images = set()
        for m in range(binomial(p, h)):
            M = encode_message(m, p, h)
            assert M.weight == h
            assert decode_message(M, p, h) == m
            images.add(M.bits)
        assert len(images) == binomial(p, h)


def test_criterion_13_zr_audit_boundary():
    assert ps.knapsack_zr_audit(10, 512).secure
    assert not ps.knapsack_zr_audit(10, 1024).secure
    assert not ps.knapsack_zr_audit(10, 2048).secure
