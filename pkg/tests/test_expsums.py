import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracle
from bentforge import expsums
from bentforge.expsums import (BRUTE, CLOSED, KloostermanTable, build_kloosterman_table,
                               kloosterman, kloosterman_bound, kloosterman_table,
                               kloosterman_variant, m_sum, rational_sum_S, xi, xi_closed_arr)
from bentforge.gf2m import FieldError, FieldSpec, field_new


def test_kloosterman_n3_direct():
    F = FieldSpec(3)
    assert kloosterman(F, 1) == oracle.kloosterman(1, F.poly)
    assert kloosterman(F, 1) % 4 == 0


@pytest.mark.parametrize("m,n", [(4, 4), (5, 5), (6, 6), (6, 3), (8, 4), (12, 6)])
def test_table_routes_agree_with_direct_sum(m, n):
    F = FieldSpec(m)
    table = build_kloosterman_table(F, n)
    for a in list(table.values)[:40]:
        assert table[a] == kloosterman(F, a, n) == oracle.kloosterman(a, F.poly, n)


@pytest.mark.parametrize("n", range(4, 11))
def test_kloosterman_mod4_and_range(n):
    table = build_kloosterman_table(FieldSpec(n))
    lo, hi = kloosterman_bound(n)
    v = np.array(list(table.values.values()))
    assert len(v) == (1 << n) - 1
    assert np.all(v % 4 == 0) and np.all((v >= lo) & (v <= hi))


def test_kloosterman_errors(F6):
    with pytest.raises(FieldError):
        kloosterman(F6, 0)
    with pytest.raises(FieldError):
        kloosterman(F6, F6.w(1), 3)
    with pytest.raises(FieldError):
        kloosterman(F6, 1, 4)


def test_variant_small():
    F = FieldSpec(3)
    assert kloosterman_variant(F, 1) == -kloosterman(F, 1) // 2


@pytest.mark.parametrize("n", range(3, 9))
def test_variant_exhaustive(n):
    F = FieldSpec(n)
    for a in range(1, F.size):
        assert 2 * kloosterman_variant(F, a) == -kloosterman(F, a)


def test_variant_in_subfield(F12):
    for a in F12.subfield(6)[1:20]:
        assert 2 * kloosterman_variant(F12, int(a), 6) == -kloosterman(F12, int(a), 6)


def test_table_csv_roundtrip(tmp_path):
    F = FieldSpec(6)
    t = build_kloosterman_table(F)
    path = tmp_path / "k6.csv"
    t.write(path)
    lines = path.read_text().splitlines()
    assert lines[0] == "n=6" and "a_hex,value" in lines and len(lines) == 3 + 63
    back = KloostermanTable.read(path)
    assert back.values == t.values and back.source == "loaded-from-file" and back.field == F


def test_table_rejects_tampering():
    F = FieldSpec(6)
    rows = build_kloosterman_table(F).to_csv().splitlines()
    header, body = rows[:3], rows[3:]

    def with_value(v):
        a_hex = body[0].split(",")[0]
        return "\n".join(header + [f"{a_hex},{v}"] + body[1:])

    with pytest.raises(ValueError, match="multiple of 4"):
        KloostermanTable.from_csv(with_value(3))
    with pytest.raises(ValueError, match="outside"):
        KloostermanTable.from_csv(with_value(100))
    with pytest.raises(ValueError):
        KloostermanTable.from_csv("\n".join(header + body[1:]))        # missing a row
    with pytest.raises(ValueError):
        KloostermanTable.from_csv("\n".join(header + body + body[:1]))  # duplicate row
    with pytest.raises(ValueError):
        KloostermanTable.from_csv("bogus\n0x01,4")


def test_table_n8_complete():
    t = build_kloosterman_table(FieldSpec(8))
    assert len(t.values) == 255 and t.source == "computed"


def test_table_persistence(tmp_path, monkeypatch):
    monkeypatch.setenv("BENTFORGE_TABLE_DIR", str(tmp_path))
    monkeypatch.setattr(expsums, "_TABLES", {})
    F = field_new(8)
    t = kloosterman_table(F, 4)
    files = list(tmp_path.iterdir())
    assert len(files) == 1 and files[0].name == "kloosterman_m8_11d_n4.csv"
    monkeypatch.setattr(expsums, "_TABLES", {})
    again = kloosterman_table(F, 4)
    assert again.source == "loaded-from-file" and again.values == t.values


# -- quadratic-denominator sums --------------------------------------------------------

def _valid_S_args(F, n, A, B, d):
    if A == 0:
        return False
    r = F.div(B, A)
    return F.mul(r, r) ^ r ^ d != 0


def test_S_closed_equals_brute_n4_exhaustive():
    F = FieldSpec(4)
    count = 0
    for A in range(1, 16):
        for B in range(16):
            for d in range(16):
                if not _valid_S_args(F, 4, A, B, d):
                    with pytest.raises(FieldError):
                        rational_sum_S(F, A, B, d)
                    continue
                assert rational_sum_S(F, A, B, d, CLOSED) == rational_sum_S(F, A, B, d, BRUTE)
                count += 1
    assert count > 3000


def test_S_in_subfield(F12):
    rng = np.random.default_rng(0)
    sub = F12.subfield(6)
    checked = 0
    while checked < 200:
        A, B, d = (int(v) for v in sub[rng.integers(0, 64, 3)])
        if not _valid_S_args(F12, 6, A, B, d):
            continue
        assert (rational_sum_S(F12, A, B, d, CLOSED, n=6)
                == rational_sum_S(F12, A, B, d, BRUTE, n=6))
        checked += 1


def test_S_rejects_outside_subfield(F12):
    with pytest.raises(FieldError):
        rational_sum_S(F12, F12.w(1), 0, 1, n=6)
    with pytest.raises(ValueError):
        rational_sum_S(FieldSpec(4), 1, 0, 1, mode="other")


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 255), st.integers(0, 255), st.integers(0, 255))
def test_S_property_n8(A, B, d):
    F = FieldSpec(8)
    if not _valid_S_args(F, 8, A, B, d):
        return
    assert rational_sum_S(F, A, B, d, CLOSED) == rational_sum_S(F, A, B, d, BRUTE)


# -- sums over the unit circle ------------------------------------------------------

def test_xi_zero_a(F6):
    for b in range(1, 64):
        assert xi(F6, 0, b) == 9 == xi(F6, 0, b, BRUTE)


def test_xi_b_one_base_field(F6):
    for a in F6.subfield(3)[1:]:
        a = int(a)
        assert xi(F6, a, 1) == 1 + 8 * (1 - 2 * F6.tr_n(a)) == xi(F6, a, 1, BRUTE)


@pytest.mark.parametrize("m", [6, 8])
def test_xi_closed_equals_brute_exhaustive(m):
    F = field_new(m)
    A, B = np.meshgrid(np.arange(F.size), np.arange(1, F.size), indexing="ij")
    closed = xi_closed_arr(F, A, B)
    for a in range(F.size):
        for b in range(1, F.size):
            assert closed[a, b - 1] == xi(F, a, b, BRUTE), (a, b)
    # scalar closed form agrees with the vectorised one
    for a, b in np.random.default_rng(m).integers(1, F.size, (200, 2)):
        assert xi(F, int(a), int(b)) == closed[a, b - 1]


@pytest.mark.parametrize("m", [10, 12])
def test_xi_sampled(m):
    F = field_new(m)
    rng = np.random.default_rng(m)
    for a, b in rng.integers(1, F.size, (300, 2)):
        assert xi(F, int(a), int(b)) == xi(F, int(a), int(b), BRUTE)


@pytest.mark.parametrize("m", [6, 8, 10])
def test_xi_reduction_identity(m):
    # xi(a, b) = xi(a conj(a), a^(q-1) b^2)
    F = field_new(m)
    rng = np.random.default_rng(1)
    for a, b in rng.integers(1, F.size, (300, 2)):
        a, b = int(a), int(b)
        b2 = F.mul(F.pow(a, F.q - 1), F.mul(b, b))
        assert xi(F, a, b, BRUTE) == xi(F, F.norm(a), b2, BRUTE)


def test_xi_errors(F6):
    with pytest.raises(FieldError):
        xi(F6, 1, 0)
    with pytest.raises(FieldError):
        xi_closed_arr(F6, [1], [0])
    with pytest.raises(ValueError):
        xi(F6, 1, 1, "fast")


def test_m_sum(F6):
    for a in F6.subfield(3)[1:]:
        a = int(a)
        assert m_sum(F6, a, 1) == 8 * (1 - 2 * F6.tr_n(a))
    for a in range(64):
        for b in range(2, 64):
            split = 1 - 2 * F6.tr(F6.div(a, 1 ^ b))
            assert xi(F6, a, b, BRUTE) == split + m_sum(F6, a, b)
    with pytest.raises(FieldError):
        m_sum(F6, 1, 0)


def test_m_sum_circle_off_subfield(F8):
    # b on U minus 1 and Tr_n^m(a conj(b)) != 0: xi = 1, so M = 1 - (-1)^Tr(a/(1+b))
    circle = [u for u in range(2, 256) if F8.in_unit_circle(u) and not F8.in_base(u)]
    checked = 0
    for b in circle:
        for a in range(1, 256):
            t = F8.mul(a, F8.conj(b))
            if t ^ F8.conj(t) == 0:
                continue
            assert m_sum(F8, a, b) == 1 - (1 - 2 * F8.tr(F8.div(a, 1 ^ b)))
            checked += 1
    assert checked > 1000
