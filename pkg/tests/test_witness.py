import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lydim import (
    AdmissibilityError,
    HorizonError,
    SimilarityIFS,
    SymbolStream,
    TransitionMatrix,
    WitnessSchedule,
    build_witness,
    code_point,
    delta_k,
    flip,
    is_admissible,
    local_dimension_probe,
    membership_violations,
    moran_root,
    phi_inverse,
    pr_map,
    verify_liyorke_geometric,
    verify_liyorke_symbolic,
)
from lydim.errors import PayloadExhaustedError

SQ = WitnessSchedule.power(2)


def random_star_stream(rng, m, n):
    out = [1]
    while len(out) < n:
        out.append(rng.randint(1, m) if out[-1] == 1 else 1)
    return SymbolStream(tuple(out), m)


def test_flip():
    assert [flip(a, 3) for a in (1, 2, 3)] == [2, 3, 1]
    for m in range(2, 8):
        assert all(flip(a, m) != a for a in range(1, m + 1))


def test_schedule_positions():
    assert SQ.sync_positions(11) == [0, 5, 13, 25, 43, 69, 105, 153, 215, 293, 389]
    zero = WitnessSchedule.parse("0")
    assert zero.sync_positions(4) == [0, 5, 12, 20]
    assert WitnessSchedule.parse("0,1,4,9").N(3) == 9
    with pytest.raises(HorizonError):
        WitnessSchedule.parse("0,1").N(2)
    with pytest.raises(ValueError):
        WitnessSchedule.parse("n**2")


def test_zero_schedule_template():
    s = SymbolStream.constant(1, 60, 2)
    t = build_witness(s, WitnessSchedule.parse("0"), TransitionMatrix.star(2), SymbolStream.constant(1, 60, 2))
    flips = {u + i + 2 for i, u in enumerate(WitnessSchedule.parse("0").blocks_within(60)) if u + i + 2 < 60}
    assert {k for k, a in enumerate(t.symbols) if a == 2} == flips
    assert membership_violations(t, s, WitnessSchedule.parse("0"), TransitionMatrix.star(2)) == []


def test_payload_placement():
    sched = WitnessSchedule.explicit([3] + [0] * 10)
    s = SymbolStream.constant(1, 8, 2)
    t = build_witness(s, sched, TransitionMatrix.star(2), SymbolStream((1, 2, 1), 2))
    assert t.symbols[4:7] == (1, 2, 1)
    assert t.symbols[7] == 1 and sched.sync_positions(2)[1] == 8


def test_payload_exhausted_and_inadmissible():
    A = TransitionMatrix.star(3)
    s = SymbolStream.constant(1, 100, 3)
    with pytest.raises(PayloadExhaustedError):
        build_witness(s, SQ, A, SymbolStream((1, 2, 1), 3))
    with pytest.raises(AdmissibilityError):
        build_witness(SymbolStream((1, 2, 3) + (1,) * 97, 3), SQ, A, SymbolStream.constant(1, 100, 3))


@pytest.mark.parametrize("m", [2, 3, 5])
def test_witness_suite(m):
    rng = random.Random(m)
    A = TransitionMatrix.star(m)
    u = SQ.sync_positions(21)
    H = u[20] + 24
    for _ in range(5):
        s = random_star_stream(rng, m, H)
        payload = random_star_stream(rng, m, H)
        t = build_witness(s, SQ, A, payload)
        assert is_admissible(t.symbols, A)
        assert membership_violations(t, s, SQ, A) == []
        report = verify_liyorke_symbolic(s, t, SQ, 20)
        assert report.passed
        assert all(r.prox <= 2.0**-r.i and r.sep >= 0.5 for r in report.rows)
        # pr with the same payload reproduces the witness
        assert pr_map(payload, s, SQ, A, horizon=H).symbols == t.symbols


def test_identical_streams_fail_separation():
    s = SymbolStream.constant(1, 100, 2)
    report = verify_liyorke_symbolic(s, s, SQ, 3)
    assert all(r.prox == 0 for r in report.rows) and not report.passed


def test_symbolic_horizon_check():
    s = SymbolStream.constant(1, 20, 2)
    with pytest.raises(HorizonError):
        verify_liyorke_symbolic(s, s, SQ, 3)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000), st.integers(2, 5))
def test_pr_injective_and_prefix_monotone(seed, m):
    rng = random.Random(seed)
    A = TransitionMatrix.star(m)
    s = random_star_stream(rng, m, 400)
    t = random_star_stream(rng, m, 80)
    t2 = list(t.symbols)
    k = rng.randrange(len(t2) - 1)
    t2[k] = flip(t2[k], m) if t2[k] == 1 and (k == 0 or t2[k - 1] == 1) and t2[k + 1] == 1 else t2[k]
    short = pr_map(SymbolStream(t.symbols[:40], m), s, SQ, A)
    full = pr_map(t, s, SQ, A)
    assert full.symbols[: len(short.symbols)] == short.symbols
    other = pr_map(SymbolStream(tuple(t2), m), s, SQ, A)
    assert (other.symbols == full.symbols) == (tuple(t2) == t.symbols)


def test_delta_bound_and_monotone():
    rng = random.Random(1)
    alpha = [rng.randint(1, 3) for _ in range(600)]
    prev = -1
    for k in range(600):
        d = delta_k(alpha[: k + 1], SQ)
        assert d.delta < d.bound
        assert d.delta >= prev
        prev = d.delta
        total = sum(SQ.N(n) for n in range(d.M))
        if total:
            assert d.delta / (2 * (k + 1)) < d.bound / total


def test_delta_zero_is_block_overhead():
    # N_0 = 0 under n^2: the first payload slot is in block 1 at u_1 + 5 = 10
    d = delta_k((1,), SQ)
    assert d.preimage_length == 1 and d.embedded_length == 11 and d.delta == 10


def test_geometric_witness_middle_thirds():
    ifs = SimilarityIFS.middle_thirds()
    A = TransitionMatrix.star(2)
    rng = random.Random(5)
    H = 420
    s = random_star_stream(rng, 2, H)
    t = build_witness(s, SQ, A, random_star_stream(rng, 2, H))
    x, y = code_point(ifs, s.symbols).lo, code_point(ifs, t.symbols).lo
    rep = verify_liyorke_geometric(ifs, x, y, 400, eps_prox=3.0**-10, eps_sep=F(1, 9))
    assert rep.witnessed and "not a proof" in rep.verdict()
    same = verify_liyorke_geometric(ifs, x, x, 50, eps_prox=1e-3, eps_sep=0.1)
    assert not same.separated
    fixed = verify_liyorke_geometric(ifs, F(0), F(1), 50, eps_prox=1e-3, eps_sep=0.1)
    assert not fixed.proximal


def test_local_probe_identity_is_exact():
    ifs = SimilarityIFS.middle_thirds()
    D = moran_root(ifs.ratios).p
    rng = random.Random(2)
    alpha = SymbolStream(tuple(rng.randint(1, 2) for _ in range(300)), 2)
    for _, r in local_dimension_probe(ifs, None, TransitionMatrix.star(2), alpha, [10, 100, 299]):
        assert r == pytest.approx(D, abs=1e-12)


def test_local_probe_below_and_approaching_D():
    ifs = SimilarityIFS.middle_thirds()
    D = moran_root(ifs.ratios).p
    alpha = SymbolStream((1,) * 2001, 2)
    rows = local_dimension_probe(ifs, SQ, TransitionMatrix.star(2), alpha, [50, 500, 2000])
    gaps = [D - r for _, r in rows]
    assert all(g > 0 for g in gaps)
    assert gaps == sorted(gaps, reverse=True)


def test_local_probe_unequal_ratios():
    ifs = SimilarityIFS.from_dict({"seed": [0, 1], "maps": [{"ratio": "1/2"}, {"ratio": "1/4", "offset": "3/4"}]})
    D = moran_root(ifs.ratios).p
    rng = random.Random(4)
    alpha = SymbolStream(tuple(rng.randint(1, 2) for _ in range(1001)), 2)
    rows = local_dimension_probe(ifs, SQ, TransitionMatrix.star(2), alpha, [100, 1000])
    assert abs(rows[1][1] - D) < abs(rows[0][1] - D)
