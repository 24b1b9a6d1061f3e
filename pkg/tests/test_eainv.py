import numpy as np
import pytest

from bentforge.boolfun import (TruthTable, anf_degree, is_bent, monomial_table, rational_h,
                               zero_function)
from bentforge.dillon import detect_dillon
from bentforge.eainv import (INDISTINGUISHABLE, InvariantFingerprint, apply_linear,
                             bent_monomial, cck_exponent, distinguish, ea_transform,
                             fingerprint, gold_exponent, hyper_profile, kasami_exponent,
                             known_exponents, leander_exponent, random_ea_transform,
                             random_invertible_matrix, walsh_multiset)
from bentforge.gf2m import FieldError, field_new


def test_exponents():
    assert gold_exponent(1) == 3 and gold_exponent(2) == 5
    assert leander_exponent(8) == 25 and leander_exponent(6) is None
    assert cck_exponent(6) == 7 and cck_exponent(12) == 21 and cck_exponent(8) is None
    assert kasami_exponent(2) == 13
    assert known_exponents(12) == {"gold": 3, "leander": 81, "cck": 21}


def test_random_matrix_invertible():
    rng = np.random.default_rng(0)
    for m in (4, 6, 8):
        cols = random_invertible_matrix(m, rng)
        image = apply_linear(cols, 1 << m)
        assert sorted(image.tolist()) == list(range(1 << m))


def test_apply_linear_is_linear():
    rng = np.random.default_rng(1)
    cols = random_invertible_matrix(6, rng)
    img = apply_linear(cols, 64)
    for x, y in rng.integers(0, 64, (50, 2)):
        assert img[x ^ y] == img[x] ^ img[y]


def test_ea_transform_identity(F6):
    f = rational_h(1, F6.w(7), F6)
    ident = [1 << i for i in range(6)]
    assert ea_transform(f, ident, 0, 0, 0) == f
    assert ea_transform(f, ident, 0, 0, 1) == TruthTable(F6, f.bits ^ 1)


def test_fingerprint_example_one(F6):
    fp = fingerprint(rational_h(1, F6.w(7), F6))
    assert fp.degree == 3
    assert fp.walsh_multiset == ((8, 64),)
    assert all(bent for _, bent in fp.hyper_profile)
    s = fp.canonical()
    assert s.count("|") == 2 and s.startswith("3|8x64|")


def test_fingerprint_omits_profile_above_12():
    F = field_new(14)
    fp = fingerprint(rational_h(1, F.w(5), F))
    assert fp.hyper_profile is None and fp.hyper_profile_omitted
    assert fp.canonical().endswith("|omitted")
    with pytest.raises(ValueError):
        hyper_profile(rational_h(1, F.w(5), F))


def test_distinguish_self(F6):
    f = rational_h(1, F6.w(1), F6)
    r = distinguish(f, f)
    assert not r.distinguished and r.outcome == INDISTINGUISHABLE


def test_distinguish_gold_vs_h1(F6):
    gold = bent_monomial(F6, 3)
    assert gold is not None and anf_degree(gold) == 2
    r = distinguish(rational_h(1, F6.w(7), F6), gold)
    assert "degree" in r.differing and r.outcome.startswith("distinguished by")


def test_distinguish_field_mismatch(F6, F8):
    with pytest.raises(FieldError):
        distinguish(rational_h(1, 3, F6), rational_h(1, 3, F8))


def test_dillon_monomials_vs_h1(F6):
    h = rational_h(1, F6.w(7), F6)
    reports = {}
    for k in range(63):
        g = monomial_table(F6, F6.w(k), 7)
        reports[k] = distinguish(h, g)
        # same degree and spectrum whenever the monomial is bent
        if is_bent(g):
            assert "degree" not in reports[k].differing
            assert "walsh_multiset" not in reports[k].differing
        else:
            assert "walsh_multiset" in reports[k].differing
    assert any(not r.distinguished for r in reports.values())


@pytest.mark.parametrize("m", [6, 8])
def test_degree_and_spectrum_invariant_under_ea(m):
    F = field_new(m)
    rng = np.random.default_rng(m)
    f = rational_h(1, F.w(F.q - 1) if m == 6 else F.w(3), F)
    base = fingerprint(f)
    for _ in range(100):
        g = random_ea_transform(f, rng)
        assert anf_degree(g) == base.degree
        assert walsh_multiset(g) == base.walsh_multiset


def test_hyper_profile_not_ea_invariant(F6):
    # x -> f(x^i) does not commute with affine substitutions, so bentness of
    # every power composition is lost even though g stays bent
    f = rational_h(1, F6.w(7), F6)
    g = random_ea_transform(f, np.random.default_rng(0))
    assert is_bent(g) and detect_dillon(g) is None
    assert fingerprint(g).hyper_profile != fingerprint(f).hyper_profile


def test_hyper_profile_invariant_under_multiplicative_shift(F8):
    f = rational_h(F8.w(17), F8.w(3), F8)
    for c in (F8.w(1), F8.w(77)):
        g = TruthTable(F8, f.bits[F8.mul_arr(c, F8.elements())])
        assert fingerprint(g) == fingerprint(f)


def test_kasami_candidates_at_m8(F8):
    h = rational_h(1, F8.w(3), F8)
    assert anf_degree(h) == 4
    # Kasami exponents 2^(2i) - 2^i + 1 for i = 1..3
    degrees = {}
    for i in (1, 2, 3):
        f = bent_monomial(F8, kasami_exponent(i) % 255)
        if f is not None:
            degrees[i] = fingerprint(f).degree
    assert degrees
    for i, d in degrees.items():
        assert d == i + 1
        assert (d == 4) == (distinguish(h, bent_monomial(F8, kasami_exponent(i))).differing
                            .count("degree") == 0)


def test_fingerprint_dataclass_str():
    fp = InvariantFingerprint(2, ((8, 64),), None, True)
    assert str(fp) == "2|8x64|omitted"


def test_leander_bent_only_for_odd_half_n(F8, F12):
    assert bent_monomial(F8, leander_exponent(8)) is None
    f = bent_monomial(F12, leander_exponent(12))
    assert f is not None and anf_degree(f) == 3


def test_affine_functions_share_one_degree_class(F8):
    zero = zero_function(F8)
    linear = monomial_table(F8, 5, 1)
    assert anf_degree(zero) == 0 and anf_degree(linear) == 1
    assert fingerprint(zero).degree == fingerprint(linear).degree == 1
    assert "degree" not in distinguish(zero, linear).differing
    rng = np.random.default_rng(2)
    for _ in range(20):
        g = random_ea_transform(zero, rng)
        assert fingerprint(g).degree == 1
        assert fingerprint(g).walsh_multiset == fingerprint(zero).walsh_multiset
