import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from slicerank.bounds import (
    BoundReport,
    bound_table,
    binomial_tail,
    capacities_summary,
    capacity_upper,
    capset_capacity_reduction,
    constant_weight_bound,
    count_below_growth_power,
    erdos_rado_bound,
    layer_bound_root,
    mod_count_bound,
    mod_growth_rate,
    report_row,
    search_max_within_growth,
    subset_family_bound,
)


# --- binary bounds ------------------------------------------------------------


def test_layer_and_family_bounds_small():
    assert constant_weight_bound(0) == 3
    assert subset_family_bound(0) == 3
    # n=3: threshold floor(3/3)=1, so 3*(C(3,0)+C(3,1)) = 12 per layer
    assert constant_weight_bound(3) == 12
    assert subset_family_bound(3) == 48


def test_binomial_tail_against_direct_sum():
    for n in range(0, 20):
        for kmax in range(-1, n + 2):
            brute = sum(math.comb(n, k) for k in range(0, max(kmax, -1) + 1))
            assert binomial_tail(n, kmax) == brute


def test_layer_root_bracket_at_30():
    r = layer_bound_root(30)
    assert 1.80 <= r <= 1.889881575


@given(st.integers(0, 120))
def test_family_bound_monotone(n):
    assert subset_family_bound(n + 1) >= subset_family_bound(n)


def test_capacity_upper_constant():
    assert abs(capacity_upper() - 1.889881574) < 1e-9


def test_layer_root_converges():
    # Stirling-rate convergence: within 0.01 at n=300
    assert abs(layer_bound_root(300) - capacity_upper()) < 0.01


# --- mod-D bounds ---------------------------------------------------------------


def test_growth_rate_values():
    g3 = mod_growth_rate(3)
    assert g3.exact == 3 and g3.value == 3.0
    # floating values from the closed form (27 (D-1)^2 / 4)^(1/3)
    assert abs(mod_growth_rate(4).value - (27 * 9 / 4) ** (1 / 3)) < 1e-12
    assert abs(mod_growth_rate(5).value - 4.762203156) < 1e-9
    with pytest.raises(ValueError):
        mod_growth_rate(2)


def test_growth_rate_strictly_increasing():
    values = [mod_growth_rate(D).value for D in range(3, 21)]
    assert all(a < b for a, b in zip(values, values[1:]))


def test_mod_count_bound_small():
    assert mod_count_bound(1, 3) == 3  # 3 * C(1,0) * 2^0
    assert mod_count_bound(3, 3) == 3 * (1 + 6 + 12)
    with pytest.raises(ValueError):
        mod_count_bound(1, 2)


def test_count_below_growth_power_hand_cases():
    # n=1, D=3: lhs=1, cubed check 4 <= 27*4
    assert count_below_growth_power(1, 3)
    # n=3, D=3: lhs = 19, 19^3 * 4^3 <= 27^3 * 2^6
    assert 19**3 * 4**3 <= 27**3 * 2**6
    assert count_below_growth_power(3, 3)


def test_count_below_growth_power_sweep():
    for D in range(3, 21):
        for n in range(1, 51):
            assert count_below_growth_power(n, D)


def test_count_bound_consistent_with_growth():
    # mod_count_bound(n,D) <= 3 g_D^n exactly, via the cubed comparison
    for D in range(3, 8):
        for n in range(1, 21):
            assert search_max_within_growth(mod_count_bound(n, D) // 3, n, D)


# --- classical bound -------------------------------------------------------------


def test_erdos_rado_values():
    assert erdos_rado_bound(0, 3) == 1
    assert erdos_rado_bound(2, 3) == 8
    assert erdos_rado_bound(5, 3) == 120 * 32
    with pytest.raises(ValueError):
        erdos_rado_bound(2, 1)


# --- capset reduction --------------------------------------------------------------


def test_capset_reduction_default():
    count, capacity = capset_capacity_reduction(1)
    assert count.exact == Fraction(1) + Fraction("2.7552")
    assert capacity.value == math.sqrt(float(1 + Fraction("2.7552")))
    assert capacity.value <= 1.938


def test_capset_reduction_degenerate_and_integer():
    count, capacity = capset_capacity_reduction(1, 0)
    assert count.exact == 1 and capacity.value == 1.0
    count, _ = capset_capacity_reduction(2, 3)
    assert count.exact == 16


def test_capacity_ordering():
    by_name = {r.name: r for r in capacities_summary()}
    lower = by_name["capacity-lower-cited"].value
    upper = by_name["capacity-upper"].value
    via_capset = by_name["capset-reduction-capacity"].value
    trivial = by_name["capacity-trivial"].value
    assert lower < upper < via_capset < trivial
    assert abs(upper - 1.889881574) < 1e-9
    assert lower == 1.554


# --- report plumbing -----------------------------------------------------------------


def test_report_rows_and_table():
    rows = [report_row(r) for r in bound_table(n=3, D=3)]
    names = [r[0] for r in rows]
    assert "family-count" in names and "mod-slice-count" in names
    family = rows[names.index("family-count")]
    assert family[1] == "3" and family[3] == "48"
    for row in rows:
        assert len(row) == 6


def test_exact_and_float_agree():
    for r in bound_table(n=6, D=5):
        if r.exact is not None:
            assert math.isclose(float(r.exact), r.value, rel_tol=1e-12)
        if r.log2 is not None and r.value > 0:
            assert math.isclose(r.log2, math.log2(r.value), rel_tol=1e-9, abs_tol=1e-9)


def test_report_is_frozen():
    r = BoundReport("x", {}, 1, 1.0, 0.0)
    with pytest.raises(AttributeError):
        r.value = 2.0
