import math

import pytest
from hypothesis import given, settings, strategies as st

from elemfun.fixedpoint import FixedPoint
from elemfun.relations import (Basis, PrecisionExhausted, RelationTable,
                               coeff_growth_estimate, first_gaussian_primes,
                               first_primes, generate_table, load_table,
                               reduce_argument, save_table, table_from_coeffs,
                               weighted_norm)
from fixture_table import FIXTURE_COEFFS, FIXTURE_EPS


def test_first_primes():
    assert first_primes(13) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31,
                                37, 41]


def test_first_gaussian_primes():
    assert first_gaussian_primes(9) == [(1, 1), (2, 1), (3, 2), (4, 1),
                                        (5, 2), (6, 1), (5, 4), (7, 2),
                                        (6, 5)]


def test_basis_validation():
    with pytest.raises(ValueError):
        Basis("log", primes=[3, 5])
    with pytest.raises(ValueError):
        Basis("atan", gprimes=[(2, 1)])
    with pytest.raises(ValueError):
        Basis("squirrel")


def test_basis_values_and_weights():
    b = Basis.log_primes(3)
    vals = b.values(64)
    assert abs(float(vals[0]) - math.log(2)) < 1e-15
    assert abs(float(vals[2]) - math.log(5)) < 1e-15
    assert b.norm_weights() == [0.0, math.log2(3), math.log2(5)]
    g = Basis.gaussian_atan(2)
    gv = g.values(64)
    assert abs(float(gv[0]) - math.pi / 2) < 1e-15
    assert abs(float(gv[1]) - 2 * math.atan(0.5)) < 1e-15
    assert g.norm_weights()[0] == 0.0


def test_two_prime_table_factor_optimality():
    # with basis {log 2, log 3} every |eps| is |a log2 + b log3|; check
    # each table entry is within a factor 4 of the true minimum over the
    # coefficient box it had available
    table = generate_table(Basis.log_primes(2), 2, 40)
    for rel in table.relations:
        bound = max(abs(c) for c in rel.coeffs)
        if bound > 150:  # keep the brute-force search tractable
            continue
        best = min(abs(a * math.log(2) + b * math.log(3))
                   for a in range(-bound, bound + 1)
                   for b in range(-bound, bound + 1)
                   if (a, b) != (0, 0))
        assert rel.eps <= 4 * best + 1e-12


def test_thirteen_prime_table_depth():
    table = generate_table(Basis.log_primes(13), 10, 100)
    assert table.complete
    assert len(table.relations) <= 34
    eps = [r.eps for r in table.relations]
    assert all(e > 0 for e in eps)
    assert eps == sorted(eps, reverse=True)
    assert eps[-1] < 2 ** -100
    assert table.max_r() >= 100


def test_atan_table():
    table = generate_table(Basis.gaussian_atan(6), 10, 60)
    assert table.complete
    assert table.relations[-1].eps < 2 ** -60


def test_fixture_table_eps_match():
    basis = Basis.log_primes(13)
    table = table_from_coeffs(basis, FIXTURE_COEFFS, 10, precision=256)
    assert len(table.relations) == 30
    for rel, want in zip(table.relations, FIXTURE_EPS):
        assert abs(rel.eps - want) <= 1e-4 * want


def test_reduce_identity_zero():
    basis = Basis.log_primes(13)
    table = table_from_coeffs(basis, FIXTURE_COEFFS, 10, precision=256)
    res = reduce_argument(FixedPoint(0, 128), table, 50)
    assert res.coeffs == (0,) * 13 and res.residual.is_zero()


def test_reduce_progress_and_consistency():
    basis = Basis.log_primes(13)
    table = table_from_coeffs(basis, FIXTURE_COEFFS, 10, precision=256)
    x = FixedPoint.from_rational(41421356237309504880168872,
                                 10 ** 26, 200)  # sqrt(2)-1
    res = reduce_argument(x, table, 90)
    assert res.achieved_r >= 90
    # residual equals x - sum c_i log p_i up to working precision
    vals = basis.values(res.residual.fb + 64)
    acc = x.with_frac_bits(res.residual.fb + 64)
    for c, v in zip(res.coeffs, vals):
        if c:
            acc = acc.sub(v.mul_int(c))
    assert abs(acc.with_frac_bits(res.residual.fb).man
               - res.residual.man) <= 1 << 10
    assert abs(res.norm - weighted_norm(res.coeffs, basis)) < 1e-6


def test_reduce_norm_limit():
    basis = Basis.log_primes(13)
    table = table_from_coeffs(basis, FIXTURE_COEFFS, 10, precision=256)
    x = FixedPoint.from_float(0.414213562373, 200)
    res = reduce_argument(x, table, 200, norm_limit=50.0)
    assert res.norm <= 50.0


def test_precision_exhausted():
    # a huge C overshoots the table precision on the very first scale
    with pytest.raises(PrecisionExhausted):
        generate_table(Basis.log_primes(2), 2.0 ** 160, 100)


def test_generate_table_args():
    with pytest.raises(ValueError):
        generate_table(Basis.log_primes(3), 1, 20)
    with pytest.raises(ValueError):
        generate_table(Basis.log_primes(1), 10, 20)


def test_coeff_growth_estimate():
    assert coeff_growth_estimate(10, 13, 0) == 0.0
    e = math.e
    assert abs(coeff_growth_estimate(e, 1, 10)
               - e * e / (e - 1) * 1023) < 0.5
    est = coeff_growth_estimate(10, 13, 100)
    assert 100 < est < 10 ** 5
    with pytest.raises(ValueError):
        coeff_growth_estimate(1, 13, 10)


def test_weighted_norm_errors():
    with pytest.raises(ValueError):
        weighted_norm([1, 2], Basis.log_primes(3))


def test_table_round_trip(tmp_path):
    table = generate_table(Basis.log_primes(5), 10, 40)
    p = tmp_path / "t.txt"
    save_table(table, p)
    back = load_table(p)
    assert back.basis == table.basis
    assert back.C == table.C
    assert [r.coeffs for r in back.relations] == \
        [r.coeffs for r in table.relations]
    for a, b in zip(back.relations, table.relations):
        # eps is recomputed from the basis at load time; allow for the
        # different rounding of the basis values at the two precisions
        fb = min(a.eps_exact.fb, b.eps_exact.fb)
        assert abs(a.eps_exact.with_frac_bits(fb).man
                   - b.eps_exact.with_frac_bits(fb).man) <= 1 << 12


def test_table_round_trip_atan(tmp_path):
    table = generate_table(Basis.gaussian_atan(4), 8, 30)
    p = tmp_path / "g.txt"
    save_table(table, p)
    back = load_table(p)
    assert back.basis == table.basis
    assert [r.coeffs for r in back.relations] == \
        [r.coeffs for r in table.relations]


def test_load_rejects_garbage(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("hello world\n")
    with pytest.raises(ValueError):
        load_table(p)


@given(st.integers(min_value=-(10 ** 20), max_value=10 ** 20))
@settings(max_examples=25, deadline=None)
def test_reduce_random_consistency(man):
    basis = Basis.log_primes(13)
    table = _cached_table()
    x = FixedPoint(man, 70)
    res = reduce_argument(x, table, 60)
    vals = basis.values(140)
    acc = x.with_frac_bits(140)
    for c, v in zip(res.coeffs, vals):
        if c:
            acc = acc.sub(v.mul_int(c))
    assert abs(acc.with_frac_bits(res.residual.fb).man
               - res.residual.man) <= 1 << 8


_TABLE = None


def _cached_table():
    global _TABLE
    if _TABLE is None:
        _TABLE = table_from_coeffs(Basis.log_primes(13), FIXTURE_COEFFS,
                                   10, precision=256)
    return _TABLE
