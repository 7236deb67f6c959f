"""Closed-form bounds and capacities for sunflower-free families.

Everything is evaluated in exact integer/rational arithmetic first; floats
are produced from the exact values at the last step only, so outputs are
deterministic across platforms.  The central quantities:

* binary setting: a sunflower-free family of subsets of an n-set has size
  at most 3(n+1) * sum_{k <= n/3} C(n,k); each constant-weight layer
  contributes at most 3 * sum_{k <= n/3} C(n,k).  The n-th root of the layer
  bound converges to 3/2^(2/3) = 1.889881574..., the best known upper bound
  for the sunflower-free capacity.
* mod-D setting: a sunflower-free subset of (Z/DZ)^n has size at most
  3 * sum_{k <= 2n/3} C(n,k)(D-1)^k <= 3 * g_D^n with growth base
  g_D = (3/2^(2/3)) * (D-1)^(2/3); tensor powering removes the factor 3.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

DEFAULT_CAPSET_CAPACITY = Fraction("2.7552")
CITED_CAPACITY_LOWER_BOUND = 1.554


@dataclass(frozen=True)
class BoundReport:
    """A named bound value: exact when one exists, always a float and log2."""

    name: str
    params: dict = field(default_factory=dict)
    exact: int | Fraction | None = None
    value: float = 0.0
    log2: float | None = None


def _report(name: str, params: dict, exact=None, value=None) -> BoundReport:
    if value is None:
        value = float(exact)
    log2 = math.log2(value) if value > 0 else None
    if exact is not None and isinstance(exact, (int, Fraction)) and exact > 0:
        # exact log2 for big values float() may distort
        log2 = (
            math.log2(exact.numerator) - math.log2(exact.denominator)
            if isinstance(exact, Fraction)
            else math.log2(exact)
        )
    return BoundReport(name, params, exact, value, log2)


# ---------------------------------------------------------------------------
# binary setting


def binomial_tail(n: int, kmax: int) -> int:
    """sum_{k=0}^{kmax} C(n,k); empty (=0) when kmax < 0."""
    return sum(math.comb(n, k) for k in range(0, kmax + 1))


def constant_weight_bound(n: int) -> int:
    """Per-layer bound 3 * sum_{k <= n/3} C(n,k) for sunflower-free
    constant-weight families in {0,1}^n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 3 * binomial_tail(n, n // 3)


def subset_family_bound(n: int) -> int:
    """Total bound 3(n+1) * sum_{k <= n/3} C(n,k): one layer bound per
    weight 0..n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return (n + 1) * constant_weight_bound(n)


def layer_bound_root(n: int) -> float:
    """(constant_weight_bound(n))^(1/n), the finite-n capacity estimate."""
    if n < 1:
        raise ValueError("n must be positive")
    b = constant_weight_bound(n)
    return math.exp(math.log(b) / n)


def capacity_upper() -> float:
    """3/2^(2/3), the limit of layer_bound_root."""
    return 3.0 / 2.0 ** (2.0 / 3.0)


# ---------------------------------------------------------------------------
# mod-D setting


def mod_count_bound(n: int, D: int) -> int:
    """Slice-count bound 3 * sum_{k <= 2n/3} C(n,k)(D-1)^k for the character
    expansion over (Z/DZ)^n."""
    if D < 3:
        raise ValueError("the mod-D bounds need D >= 3")
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 3 * sum(math.comb(n, k) * (D - 1) ** k for k in range(0, (2 * n) // 3 + 1))


def _int_cbrt(v: int) -> int | None:
    """Exact integer cube root, or None."""
    if v < 0:
        r = _int_cbrt(-v)
        return None if r is None else -r
    r = round(v ** (1 / 3)) if v else 0
    for c in (r - 1, r, r + 1):
        if c >= 0 and c**3 == v:
            return c
    return None


def mod_growth_rate(D: int) -> BoundReport:
    """Growth base g_D = (3/2^(2/3)) (D-1)^(2/3); its cube 27(D-1)^2/4 is
    rational, and the exact field is set when the cube root is rational
    (D = 3 gives exactly 3)."""
    if D < 3:
        raise ValueError("the mod-D bounds need D >= 3")
    cubed = Fraction(27 * (D - 1) ** 2, 4)
    np3, dp3 = _int_cbrt(cubed.numerator), _int_cbrt(cubed.denominator)
    exact = Fraction(np3, dp3) if np3 is not None and dp3 is not None else None
    if exact is not None and exact.denominator == 1:
        exact = exact.numerator
    value = float(cubed) ** (1 / 3) if exact is None else float(exact)
    return _report("mod-growth-rate", {"D": D}, exact=exact, value=value)


def count_below_growth_power(n: int, D: int) -> bool:
    """Exact check that sum_{k <= 2n/3} C(n,k)(D-1)^k <= g_D^n, done by
    cubing both sides: lhs^3 * 4^n <= 27^n * (D-1)^(2n) over integers."""
    if D < 3 or n < 1:
        raise ValueError("need D >= 3 and n >= 1")
    lhs = sum(math.comb(n, k) * (D - 1) ** k for k in range(0, (2 * n) // 3 + 1))
    return lhs**3 * 4**n <= 27**n * (D - 1) ** (2 * n)


def search_max_within_growth(max_size: int, n: int, D: int) -> bool:
    """Exact check that max_size <= 3 * g_D^n, again by cubing."""
    return max_size**3 * 4**n <= 27 ** (n + 1) * (D - 1) ** (2 * n)


# ---------------------------------------------------------------------------
# classical set-size bound


def erdos_rado_bound(m: int, k: int) -> int:
    """m! * (k-1)^m, the classical bound for k-sunflower-free families of
    m-element sets."""
    if m < 0 or k < 2:
        raise ValueError("need m >= 0 and k >= 2")
    return math.factorial(m) * (k - 1) ** m


# ---------------------------------------------------------------------------
# capset reduction and the capacity summary


def capset_capacity_reduction(
    n: int, C: Fraction | float | str = DEFAULT_CAPSET_CAPACITY
) -> list[BoundReport]:
    """Bound the largest sunflower-free family in {0,1}^(2n) via the capset
    capacity C: the count is at most (1+C)^n, hence the binary capacity is
    at most sqrt(1+C).

    Returns the pair-count report (exact when C is rational) and the
    capacity report.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not isinstance(C, Fraction):
        C = Fraction(str(C))
    if C < 0:
        raise ValueError("capacity estimate must be nonnegative")
    count = (1 + C) ** n
    capacity = math.sqrt(float(1 + C))
    return [
        _report("capset-reduction-count", {"n": n, "C": C}, exact=count),
        _report("capset-reduction-capacity", {"n": n, "C": C}, value=capacity),
    ]


def capacities_summary(C: Fraction | float | str = DEFAULT_CAPSET_CAPACITY) -> list[BoundReport]:
    """The sunflower-free capacity constants: the 3/2^(2/3) upper bound, the
    cited 1.554 lower bound, the sqrt(1+C) comparison, and the trivial 2."""
    reports = [
        _report("capacity-upper", {}, value=capacity_upper()),
        _report("capacity-lower-cited", {}, value=CITED_CAPACITY_LOWER_BOUND),
        capset_capacity_reduction(1, C)[1],
        _report("capacity-trivial", {}, exact=2),
    ]
    return reports


# ---------------------------------------------------------------------------
# table/CSV plumbing


CSV_HEADER = ["name", "n", "D", "exact", "float", "log2"]


def format_float(v: float | None) -> str:
    return "" if v is None else f"{v:.12g}"


def report_row(r: BoundReport) -> list[str]:
    if r.exact is None:
        exact = ""
    elif isinstance(r.exact, Fraction) and r.exact.denominator != 1:
        exact = f"{r.exact.numerator}/{r.exact.denominator}"
    else:
        exact = str(int(r.exact))
    return [
        r.name,
        str(r.params.get("n", "")),
        str(r.params.get("D", "")),
        exact,
        format_float(r.value),
        format_float(r.log2),
    ]


def bound_table(n: int | None = None, D: int | None = None, C=DEFAULT_CAPSET_CAPACITY):
    """All reports relevant to the given parameters, for the CLI table."""
    reports: list[BoundReport] = []
    if n is not None:
        reports.append(_report("layer-count", {"n": n}, exact=constant_weight_bound(n)))
        reports.append(_report("family-count", {"n": n}, exact=subset_family_bound(n)))
        if n >= 1:
            reports.append(_report("layer-count-root", {"n": n}, value=layer_bound_root(n)))
    if D is not None:
        reports.append(mod_growth_rate(D))
        if n is not None:
            reports.append(
                _report("mod-slice-count", {"n": n, "D": D}, exact=mod_count_bound(n, D))
            )
    if n is not None:
        reports.extend(capset_capacity_reduction(n, C))
    reports.extend(capacities_summary(C))
    return reports
