import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bentforge.boolfun import (TruthTable, dual, is_bent, is_hyper_bent_def, monomial_table,
                               rational_h, walsh, zero_function)
from bentforge.dillon import (DillonFunction, bent_criterion_U, detect_dillon, dillon_dual,
                              from_g, hyper_bent_weight_criterion, restricted_spectrum,
                              restricted_walsh)
from bentforge.gf2m import field_new


def random_dillon(F, rng, bent_bias=0.5):
    """Random g on U union {0}; with probability bent_bias the circle weight is
    forced to the bent value so both verdicts are well represented."""
    q = F.q
    g0 = int(rng.integers(0, 2))
    if rng.random() < bent_bias:
        w = q // 2 + g0           # sum_U (-1)^g = q + 1 - 2w = (-1)^g0
        g = np.zeros(q + 1, dtype=np.uint8)
        g[rng.choice(q + 1, w, replace=False)] = 1
    else:
        g = rng.integers(0, 2, q + 1)
    return DillonFunction(F, g, g0)


def test_rational_h_detected(F6):
    for a, b in [(1, 3), (F6.w(11), F6.w(7)), (5, 1)]:
        d = detect_dillon(rational_h(a, b, F6))
        assert d is not None and d.to_table() == rational_h(a, b, F6)


def test_linear_not_dillon(F6):
    assert detect_dillon(monomial_table(F6, 1, 1)) is None


def test_dillon_monomial_roundtrip(F6):
    for k in range(1, 9):
        for a in (1, F6.w(3), F6.w(50)):
            f = monomial_table(F6, a, 7 * k)
            d = detect_dillon(f)
            assert d is not None
            # g read back at x^(q-1) reproduces f
            x = F6.elements()
            lam = F6.pow_arr(x, 7)
            assert [d.g(int(v)) if v else d.g_at_zero for v in lam] == f.bits.tolist()


def test_from_g_roundtrip_exhaustive_circle_values(F6):
    # every g on the 9 circle points with g(0) = 0 and 1
    for mask in range(1 << 9):
        g = [(mask >> k) & 1 for k in range(9)]
        for g0 in (0, 1):
            d = from_g(F6, g, g0)
            assert detect_dillon(d.to_table()) == d


def test_from_g_callable(F6):
    d = from_g(F6, lambda lam: F6.tr(lam), 0)
    assert d.to_table() == TruthTable(F6, F6.trace_bits[F6.pow_arr(F6.elements(), 7)])
    assert d.g(F6.w(14)) == F6.tr(F6.w(14))
    with pytest.raises(ValueError):
        d.g(F6.w(1))


def test_circle_length_validated(F6):
    with pytest.raises(ValueError):
        DillonFunction(F6, np.zeros(8), 0)


def test_restricted_walsh_zero_g(F6):
    d = from_g(F6, np.zeros(9), 0)
    assert restricted_walsh(d, 0) == 64
    assert not bent_criterion_U(d)


def test_restricted_walsh_example_one(F6):
    for b in (F6.w(7), F6.w(1)):
        d = detect_dillon(rational_h(1, b, F6))
        W = walsh(d.to_table()).values
        assert [restricted_walsh(d, a) for a in range(64)] == W.tolist()
        assert bent_criterion_U(d)
        assert hyper_bent_weight_criterion(d.to_table())


@pytest.mark.parametrize("m", [6, 8, 10])
def test_restricted_spectrum_random(m):
    F = field_new(m)
    rng = np.random.default_rng(m)
    for _ in range(20):
        d = random_dillon(F, rng)
        W = walsh(d.to_table()).values
        assert np.array_equal(restricted_spectrum(d), W)
        assert all(restricted_walsh(d, int(a)) == W[a] for a in rng.integers(0, F.size, 10))


def test_bent_spectrum_closed_form(F8):
    rng = np.random.default_rng(0)
    checked = 0
    while checked < 10:
        d = random_dillon(F8, rng, 1.0)
        assert bent_criterion_U(d)
        W = walsh(d.to_table()).values
        # W(alpha) = q (-1)^g(alpha^(q^2-q))
        alpha = F8.elements()
        lam = F8.pow_arr(alpha, 16 * 16 - 16)
        expect = [16 * (1 - 2 * (d.g(int(v)) if v else d.g_at_zero)) for v in lam]
        assert W.tolist() == expect
        checked += 1


def test_equivalence_chain_all_h_at_m6(F6):
    for a in range(F6.size):
        for b in range(1, F6.size):
            f = rational_h(a, b, F6)
            d = detect_dillon(f)
            crit = bent_criterion_U(d)
            assert crit == is_bent(f)
            assert crit == hyper_bent_weight_criterion(d)


def test_equivalence_with_definitional_hyper_bentness(F6):
    for b in range(1, F6.size, 5):
        f = rational_h(F6.w(9), b, F6)
        assert is_hyper_bent_def(f) == is_bent(f) == bent_criterion_U(detect_dillon(f))


def test_weight_criterion_negated_when_f0_is_one(F6):
    rng = np.random.default_rng(4)
    for _ in range(50):
        d = random_dillon(F6, rng)
        flipped = DillonFunction(F6, d.g_on_circle ^ 1, d.g_at_zero ^ 1)
        assert hyper_bent_weight_criterion(d) == hyper_bent_weight_criterion(flipped)
        assert hyper_bent_weight_criterion(d) == is_bent(d.to_table())


def test_weight_criterion_needs_orbit_invariance(F6):
    with pytest.raises(ValueError):
        hyper_bent_weight_criterion(monomial_table(F6, 1, 1))
    assert not hyper_bent_weight_criterion(zero_function(F6))


def test_q_two_refused():
    F = field_new(2)
    with pytest.raises(ValueError):
        bent_criterion_U(from_g(F, [0, 1, 0], 0))


def test_dillon_dual(F6):
    d = detect_dillon(rational_h(1, F6.w(7), F6))
    dd = dillon_dual(d)
    assert dd.to_table() == dual(d.to_table())
    assert dillon_dual(dd) == d
    assert is_bent(dd.to_table())
    with pytest.raises(ValueError):
        dillon_dual(from_g(F6, np.zeros(9), 0))


def test_circle_csv(F6):
    d = detect_dillon(rational_h(1, F6.w(7), F6))
    rows = d.to_csv().splitlines()
    assert rows[0] == "lambda_hex,g_bit" and len(rows) == 10
    assert rows[1] == f"0x01,{d.g(1)}"
    assert rows[2].startswith(f"0x{F6.w(7):02x},")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 1), min_size=17, max_size=17), st.integers(0, 1))
def test_criterion_property_m8(g, g0):
    F = field_new(8)
    d = from_g(F, g, g0)
    f = d.to_table()
    assert bent_criterion_U(d) == is_bent(f) == hyper_bent_weight_criterion(d)
    assert np.array_equal(restricted_spectrum(d), walsh(f).values)
