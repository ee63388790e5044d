"""Representations, weight decomposition, crystals, extensions."""

import pytest

from fcrystal import (
    CapExceededError,
    CyclicRep,
    DeltaElement,
    InvalidInputError,
    LaurentSeries,
    build_extension,
    build_kummer_crystal,
    direct_sum,
    galois_orbit_check,
    make_field,
    mc_depth_grading,
    mc_vfilt,
    parse_series,
    primitive_root_of_unity,
    sol_extension,
    weight_decompose,
)
from fcrystal import linalg

F25 = make_field(5, 2)
F5 = make_field(5, 1)


def test_rep_constructors():
    t = CyclicRep.trivial(3, 5, 2)
    assert t.rank == 2 and t.mat == ((1, 0), (0, 1))
    r = CyclicRep.regular(3, 5)
    assert r.rank == 3
    c = CyclicRep.companion(3, 5)
    assert c.rank == 2


def test_rep_requires_order_dividing_d():
    with pytest.raises(InvalidInputError):
        CyclicRep(4, 5, ((1, 1), (0, 1)))  # unipotent, order 5 does not divide 4
    with pytest.raises(InvalidInputError):
        CyclicRep(3, 5, ((0, 0), (0, 0)))
    # inflating to a multiple of the order is legitimate
    assert CyclicRep(6, 5, CyclicRep.companion(3, 5).mat).d == 6


def test_direct_sum_blocks():
    a = CyclicRep.trivial(3, 5)
    b = CyclicRep.companion(3, 5)
    s = direct_sum(a, b)
    assert s.rank == 3
    assert s.mat[0] == (1, 0, 0)
    assert s.mat[1][0] == 0 and s.mat[2][0] == 0
    with pytest.raises(InvalidInputError):
        direct_sum(a, CyclicRep.trivial(2, 5))


def test_weight_decomposition_eigen_property():
    rep = CyclicRep.companion(3, 5)
    dec = weight_decompose(rep, F25)
    assert dec.dims == {1: 1, 2: 1}
    xi = primitive_root_of_unity(F25, 3)
    mat = [[F25.from_int(x) for x in row] for row in rep.mat]
    for a, (rows, piv) in dec.bases.items():
        lam = F25.pow(xi, a)
        for v in rows:
            got = linalg.mat_vec(F25, mat, v)
            want = [F25.mul(lam, x) for x in v]
            assert list(got) == want


def test_weight_dims_sum_to_rank():
    for rep in (CyclicRep.trivial(3, 5, 4), CyclicRep.regular(3, 5), CyclicRep.companion(3, 5)):
        dec = weight_decompose(rep, F25)
        assert sum(dec.dims.values()) == rep.rank


def test_decomposition_needs_all_roots_of_unity():
    with pytest.raises(InvalidInputError):
        weight_decompose(CyclicRep.companion(3, 5), F5)


def test_kummer_crystal_shifts_and_dims():
    kc = build_kummer_crystal(CyclicRep.companion(3, 5), F25)
    assert kc.dims == {1: 1, 2: 1}
    # the cover exponent of weight a is (d - a) mod d
    assert kc.shifts == {1: 2, 2: 1}
    kr = build_kummer_crystal(CyclicRep.regular(3, 5), F25)
    assert kr.dims == {0: 1, 1: 1, 2: 1}
    assert kr.shifts == {0: 0, 1: 2, 2: 1}


def test_kummer_frobenius_relation():
    """B_a expresses the frobenius image of the a-basis in the pa-basis."""
    for rep in (CyclicRep.companion(3, 5), CyclicRep.regular(3, 5)):
        kc = build_kummer_crystal(rep, F25)
        for a in kc.dims:
            rows_a, _ = kc.bases[a]
            rows_pa, _ = kc.bases[(5 * a) % 3]
            ua_p = [[F25.frob(x) for x in row] for row in rows_a]
            assert linalg.mat_mul(F25, kc.frob_mats[a], rows_pa) == tuple(
                tuple(r) for r in ua_p
            )
            assert linalg.is_invertible(F25, kc.frob_mats[a])


def test_galois_orbit_check():
    kc = build_kummer_crystal(CyclicRep.companion(3, 5), F25)
    assert galois_orbit_check(kc)


def test_delta_element_operations():
    e1 = DeltaElement.basis(F5, 1)
    e3 = DeltaElement.basis(F5, 3)
    assert e1.mul_t().is_zero()
    assert e3.mul_t() == DeltaElement.basis(F5, 2)
    assert e3.frob() == DeltaElement.basis(F5, 15)
    two_e2 = DeltaElement(F5, {2: F5.from_int(2)})
    assert two_e2.frob() == DeltaElement(F5, {10: F5.from_int(2)})  # 2^5 = 2 mod 5
    assert e1.add(e1.neg()).is_zero()


def test_delta_from_series_tail():
    f = parse_series(F5, "3t^-2+t+4")
    g = DeltaElement.from_series_tail(f)
    assert g.coeffs == {2: (3,)}


def test_extension_pole_order():
    assert build_extension(F5, parse_series(F5, "t^-2")).n == 1
    assert build_extension(F5, parse_series(F5, "t^-11")).n == 10
    assert build_extension(F5, parse_series(F5, "3t^-2+t")).n == 1
    assert build_extension(F5, LaurentSeries.zero(F5)).split
    # a nonzero pole-free twist is the split class in disguise; the
    # builder insists on the honest representative
    with pytest.raises(InvalidInputError):
        build_extension(F5, parse_series(F5, "t^3"))


def test_extension_frobenius_values():
    mod = build_extension(F5, parse_series(F5, "t^-2"))
    f, g = mod.apply_F((LaurentSeries.one(F5), DeltaElement.zero(F5)))
    assert f.same_values(LaurentSeries.one(F5))
    assert g == DeltaElement.basis(F5, 1)
    f2, g2 = mod.apply_F((LaurentSeries.monomial(F5, -1), DeltaElement.zero(F5)))
    assert f2.same_values(LaurentSeries.monomial(F5, -5))
    assert g2 == DeltaElement.basis(F5, 6)


def test_extension_t_kills_first_delta_level():
    mod = build_extension(F5, parse_series(F5, "t^-2"))
    sec = (LaurentSeries.zero(F5), DeltaElement.basis(F5, 1))
    f, g = mod.mul_t(sec)
    assert f.is_zero_on_window() and g.is_zero()


def test_delta_cap_guard():
    mod = build_extension(F5, parse_series(F5, "t^-2"), delta_cap=3)
    sec = (LaurentSeries.zero(F5), DeltaElement.basis(F5, 1))
    with pytest.raises(CapExceededError):
        mod.apply_F(sec)  # e_1 maps to e_5, above the cap


def test_pole_order_zero_has_no_filtration_rule():
    mod = build_extension(F5, parse_series(F5, "t^-1"))
    assert mod.n == 0 and not mod.split
    with pytest.raises(InvalidInputError):
        mc_vfilt(mod)
    with pytest.raises(InvalidInputError):
        mc_depth_grading(mod)


def test_solutions_of_split_extension():
    rep = sol_extension(build_extension(F5, LaurentSeries.zero(F5)))
    assert rep.dimension == 1
    assert rep.obstruction is None


def test_solutions_blocked_by_pole():
    rep = sol_extension(build_extension(F5, parse_series(F5, "t^-2")))
    assert rep.dimension == 0
    assert rep.obstruction == [[1, [1]]]
    rep2 = sol_extension(build_extension(F5, parse_series(F5, "t^-4")))
    assert rep2.dimension == 0
    assert rep2.obstruction == [[3, [1]]]


def test_solutions_across_primes():
    F7 = make_field(7, 1)
    assert sol_extension(build_extension(F7, parse_series(F7, "t^-3"))).dimension == 0
    assert sol_extension(build_extension(F7, LaurentSeries.zero(F7))).dimension == 1


def test_rep_rejects_d_not_dividing_any_power():
    # d sharing a factor with p can never have exact order d
    with pytest.raises(InvalidInputError):
        CyclicRep.regular(5, 5)
