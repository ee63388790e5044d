"""Laurent series windows, exactness, and the three twist operations."""

import pytest
from fractions import Fraction
from hypothesis import given, settings
from hypothesis import strategies as st

from fcrystal import InvalidInputError, LaurentSeries, make_field, parse_series, primitive_root_of_unity
from fcrystal.series import level_json, standard_level

CTX = make_field(5, 1)


def S(text):
    return parse_series(CTX, text)


def test_parse_monomial_sums():
    f = S("3t^-2+t")
    assert f.coeffs == {-2: (3,), 1: (1,)}
    assert f.is_exact()
    assert S("0").is_zero_on_window()
    assert S("2t^3-t+1").coeffs == {0: (1,), 1: (4,), 3: (2,)}
    assert S("-t^2").coeffs == {2: (4,)}


def test_parse_rejects_garbage():
    with pytest.raises(InvalidInputError):
        S("t^")
    with pytest.raises(InvalidInputError):
        S("3x+1")


def test_valuation():
    assert S("3t^-2+t").valuation() == -2
    assert S("t^4").valuation() == 4
    assert S("0").valuation() is None


def test_windows_shrink_under_addition():
    f = S("3t^-2+t")
    w = LaurentSeries(CTX, {0: CTX.one}, lo=0, hi=5)
    s = f.add(w)
    assert (s.lo, s.hi) == (-2, 5)
    assert not s.is_exact()


def test_window_of_product_accounts_for_unknown_tails():
    # (known up to t^5) * (exact from t^-2): products of the unknown
    # tail with t^-2 pollute exponents from 3 on
    f = S("3t^-2+t")
    w = LaurentSeries(CTX, {0: CTX.one}, lo=0, hi=5)
    m = f.mul(w)
    assert (m.lo, m.hi) == (-2, 3)


def test_truncate():
    assert S("3t^-2+t").truncate(0).coeffs == {-2: (3,)}


def test_frobenius_spreads_exponents():
    assert S("2t").frob().coeffs == {5: (2,)}
    assert S("t^-1+1").frob().coeffs == {-5: (1,), 0: (1,)}


def test_cover_pullback_multiplies_exponents():
    assert S("t^-2+t").kummer_pullback(3).coeffs == {-6: (1,), 3: (1,)}


def test_galois_twist_scales_by_root_of_unity():
    xi = primitive_root_of_unity(CTX, 4)
    g = S("t^2").galois_act(1, xi)
    assert g.coeffs == {2: (4,)}
    # acting by a then b is acting by a+b
    f = S("t^3+t^-1")
    assert f.galois_act(1, xi).galois_act(2, xi).same_values(f.galois_act(3, xi))


def test_same_values_ignores_representation():
    a = LaurentSeries(CTX, {1: CTX.one, 7: CTX.zero}, lo=0, hi=None)
    b = S("t")
    assert a.same_values(b)


def test_standard_level():
    assert standard_level(S("t^2"), 3) == Fraction(2, 3)
    with pytest.raises(InvalidInputError):
        standard_level(S("0"), 3)


def test_level_json():
    assert level_json(Fraction(-1, 5)) == {"num": -1, "den": 5}
    assert level_json(None) == {"num": None, "den": None}


coeff = st.integers(min_value=0, max_value=4)
exps = st.dictionaries(st.integers(min_value=-6, max_value=6), coeff, max_size=5)


def _mk(d):
    return LaurentSeries.exact(CTX, {e: (c,) for e, c in d.items() if c})


@given(exps, exps, exps)
@settings(max_examples=60, deadline=None)
def test_ring_laws_on_exact_series(da, db, dc):
    a, b, c = _mk(da), _mk(db), _mk(dc)
    assert a.add(b).same_values(b.add(a))
    assert a.mul(b).same_values(b.mul(a))
    assert a.mul(b.add(c)).same_values(a.mul(b).add(a.mul(c)))
    assert a.sub(a).is_zero_on_window()


@given(exps, exps)
@settings(max_examples=60, deadline=None)
def test_valuations_add_under_multiplication(da, db):
    a, b = _mk(da), _mk(db)
    va, vb = a.valuation(), b.valuation()
    if va is None or vb is None:
        assert a.mul(b).valuation() is None
    else:
        # exact series over a field: no zero divisors
        assert a.mul(b).valuation() == va + vb


@given(exps)
@settings(max_examples=40, deadline=None)
def test_frobenius_is_multiplicative(da):
    a = _mk(da)
    assert a.mul(a).frob().same_values(a.frob().mul(a.frob()))


@given(exps, st.integers(min_value=-4, max_value=4))
@settings(max_examples=40, deadline=None)
def test_shift_matches_monomial_multiplication(da, k):
    a = _mk(da)
    tk = LaurentSeries.monomial(CTX, k)
    assert a.shift(k).same_values(a.mul(tk))
