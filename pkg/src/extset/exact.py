"""Exact binomial arithmetic, closed-form bound evaluators, and a catalog of
machine-checkable identities and inequalities.

Every verification path uses Python ints and `fractions.Fraction`; floats are
confined to the explicitly non-verifying `kz_bound_real` plotting helper.
Claims are registered in CLAIMS, keyed by ClaimId, with the parameters they
take and the regime in which they are meant to be evaluated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator

from .core import ParameterError
from .constructions import a0 as _a0_family
from .constructions import hilton_milner as _hm_family
from .invariants import min_t_degree as _min_t_degree


def binom(a: int, b: int) -> int:
    """C(a, b) as a total function: 0 whenever b < 0, b > a, or a < 0."""
    if a < 0 or b < 0 or b > a:
        return 0
    return math.comb(a, b)


def falling_product(terms: Iterator[tuple[int, int]]) -> Fraction:
    """Product of num/den pairs as an exact rational; rejects zero denominators."""
    out = Fraction(1)
    for num, den in terms:
        if den == 0:
            raise ZeroDivisionError("zero denominator in product")
        out *= Fraction(num, den)
    return out


# ---------------------------------------------------------------------------
# Closed-form bound evaluators
# ---------------------------------------------------------------------------


def kz_bound(n: int, k: int, u: int) -> int:
    """Size bound C(n-1, k-1) + C(n-u-1, n-k-1) - C(n-u-1, k-1) for
    intersecting families whose diversity is at least C(n-u-1, n-k-1)."""
    if not n > 2 * k > 0:
        raise ParameterError(f"need n > 2k > 0, got n={n}, k={k}")
    if not 3 <= u <= k:
        raise ParameterError(f"need 3 <= u <= k, got u={u}, k={k}")
    return binom(n - 1, k - 1) + binom(n - u - 1, n - k - 1) - binom(n - u - 1, k - 1)


def kz_bound_real(n: int, k: int, u: float) -> float:
    """Float evaluation of kz_bound for real u in [3, k], via log-Gamma.

    For plotting and exploration only; never used on a verification path.
    """
    if not n > 2 * k > 0:
        raise ParameterError(f"need n > 2k > 0, got n={n}, k={k}")
    if not 3 <= u <= k:
        raise ParameterError(f"need 3 <= u <= k, got u={u}, k={k}")

    def real_binom(a: float, b: float) -> float:
        if b < 0 or b > a:
            return 0.0
        return math.exp(
            math.lgamma(a + 1) - math.lgamma(b + 1) - math.lgamma(a - b + 1)
        )

    return (
        real_binom(n - 1, k - 1)
        + real_binom(n - u - 1, n - k - 1)
        - real_binom(n - u - 1, k - 1)
    )


def hm_t_degree_bound(n: int, k: int, t: int) -> int:
    """C(n-t-1, k-t-1) - C(n-t-k-1, k-t-1): the minimum t-degree of the
    size-k-core construction from `hilton_milner(n, k, k)`."""
    if not 1 <= t < k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={k}")
    if n < 2 * k + 1:
        raise ParameterError(f"need n >= 2k+1, got n={n}, k={k}")
    return binom(n - t - 1, k - t - 1) - binom(n - t - k - 1, k - t - 1)


def a0_t_degree(n: int, k: int, s: int, t: int) -> int:
    """C(n-t, k-t) - C(n-s-t, k-t): the minimum t-degree of `a0(n, k, s)`."""
    if not 1 <= t <= k <= n:
        raise ParameterError(f"need 1 <= t <= k <= n, got n={n}, k={k}, t={t}")
    if s < 1:
        raise ParameterError(f"need s >= 1, got s={s}")
    return binom(n - t, k - t) - binom(n - s - t, k - t)


@dataclass(frozen=True)
class EmcBound:
    """Exact rational size bound with its floor."""

    exact: Fraction
    floor: int


def emc_size_bound(n: int, k: int, s: int, u: int) -> EmcBound:
    """C(n, k) - C(n-s, k) - (u-s-1)/u * C(n-s-k, k-1), exactly.

    Valid on the parameter line n = (u+s-1)(k-1) + s + k with u >= s+1 and
    s, k >= 2; the bound applies to families with matching number exactly s
    and covering number at least s+1.
    """
    if s < 2 or k < 2:
        raise ParameterError(f"need s, k >= 2, got s={s}, k={k}")
    if u < s + 1:
        raise ParameterError(f"need u >= s+1, got u={u}, s={s}")
    expected_n = (u + s - 1) * (k - 1) + s + k
    if n != expected_n:
        raise ParameterError(
            f"n={n} inconsistent with (u={u}, s={s}, k={k}); expected n={expected_n}"
        )
    exact = (
        Fraction(binom(n, k) - binom(n - s, k))
        - Fraction(u - s - 1, u) * binom(n - s - k, k - 1)
    )
    return EmcBound(exact=exact, floor=math.floor(exact))


def hm_size(n: int, k: int, u: int) -> int:
    """Closed-form size of hilton_milner(n, k, u), by inclusion-exclusion."""
    if not 2 <= u <= k <= n - k:
        raise ParameterError(f"need 2 <= u <= k <= n-k, got n={n}, k={k}, u={u}")
    return (
        binom(n - u, k - u)
        + binom(n - 1, k - 1)
        - binom(n - u - 1, k - 1)
        - binom(n - u - 1, k - u - 1)
    )


def sparse_tail_count(n: int, k: int, t: int) -> int:
    """Number of k-sets of [n] containing element 1 and meeting the tail
    [k+2, n] in at most t-1 elements: sum over i in [k-t, k-1] of
    C(k, i) * C(n-k-1, k-i-1), where i counts elements taken from [2, k+1]."""
    if not 1 <= t <= k:
        raise ParameterError(f"need 1 <= t <= k, got t={t}, k={k}")
    if n < k + 1:
        raise ParameterError(f"need n >= k+1, got n={n}, k={k}")
    return sum(binom(k, i) * binom(n - k - 1, k - i - 1) for i in range(k - t, k))


# ---------------------------------------------------------------------------
# Family-level transfer predicates (exact, used on search output)
# ---------------------------------------------------------------------------


def check_eq02_family(n: int, k: int, t: int, max_degree: int, div: int) -> bool:
    """max_degree + k/(k-t) * diversity <= C(n-1, k-1), exactly."""
    if not 1 <= t < k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={k}")
    return Fraction(max_degree) + Fraction(k, k - t) * div <= binom(n - 1, k - 1)


def check_weighted_diversity_family(n: int, k: int, max_degree: int, div: int) -> bool:
    """max_degree + (n-k-2)/(k-2) * diversity <= C(n-1, k-1), exactly.

    Meaningful for intersecting families with diversity at most C(n-4, k-3)
    and n > 2k >= 6.
    """
    if k < 3:
        raise ParameterError(f"need k >= 3, got k={k}")
    return Fraction(max_degree) + Fraction(n - k - 2, k - 2) * div <= binom(n - 1, k - 1)


# ---------------------------------------------------------------------------
# Claim catalog
# ---------------------------------------------------------------------------


class ClaimId(str, Enum):
    EQ25_IDENTITY = "EQ25_IDENTITY"
    EQ04_BOUND = "EQ04_BOUND"
    EQ07_IDENTITY = "EQ07_IDENTITY"
    EQ01_BOUND = "EQ01_BOUND"
    EQ02_PRED = "EQ02_PRED"
    EQ151_PRED = "EQ151_PRED"
    EQ05_PRED = "EQ05_PRED"
    EQ19_PRED = "EQ19_PRED"
    EQ16_PRED = "EQ16_PRED"
    EQ13_PRED = "EQ13_PRED"
    EQ10_PRED = "EQ10_PRED"
    EQ11_PRED = "EQ11_PRED"
    EQ09_PRED = "EQ09_PRED"
    EQ33_35_PRED = "EQ33_35_PRED"
    EQHIL_BOUND = "EQHIL_BOUND"
    KZ_EQUALS_HM_AT_U_EQ_K = "KZ_EQUALS_HM_AT_U_EQ_K"
    A0_TDEGREE_FORM = "A0_TDEGREE_FORM"
    HM_TDEGREE_FORM = "HM_TDEGREE_FORM"


@dataclass(frozen=True)
class ParamPoint:
    """A parameter point (n, k, s, t, u); fields a claim does not use stay None."""

    n: int | None = None
    k: int | None = None
    s: int | None = None
    t: int | None = None
    u: int | None = None

    def as_dict(self) -> dict[str, int]:
        return {
            name: value
            for name, value in (
                ("n", self.n), ("k", self.k), ("s", self.s), ("t", self.t), ("u", self.u)
            )
            if value is not None
        }


@dataclass(frozen=True)
class ClaimResult:
    claim: ClaimId
    params: dict[str, int]
    holds: bool
    lhs: Fraction
    rhs: Fraction
    note: str | None = None


def _result(claim, params, holds, lhs, rhs, note=None) -> ClaimResult:
    return ClaimResult(claim, dict(params), bool(holds), Fraction(lhs), Fraction(rhs), note)


def _eval_eq25(n: int, k: int) -> ClaimResult:
    if k < 3 or n < k + 3:
        raise ParameterError(f"need k >= 3 and n >= k+3, got n={n}, k={k}")
    e1 = binom(n - 1, k - 1) - binom(n - 4, k - 1) + binom(n - 4, k - 3)
    e1b = sum(binom(n - i, k - 2) for i in (2, 3, 4)) + binom(n - 4, k - 3)
    e2 = binom(n - 2, k - 2) + 2 * binom(n - 3, k - 2)
    e3 = (1 + Fraction(2 * (n - k), n - 2)) * binom(n - 2, k - 2)
    e4 = Fraction(k * (k - 1) * (3 * n - 2 * k - 2), n * (n - 1) * (n - 2)) * binom(n, k)
    holds = e1 == e1b == e2 == e3 == e4
    return _result(ClaimId.EQ25_IDENTITY, {"n": n, "k": k}, holds, e1, e4)


def _eval_eq04(n: int, k: int, u: int) -> ClaimResult:
    if n < 2 * k + 2:
        raise ParameterError(f"need n >= 2k+2, got n={n}, k={k}")
    if not 3 <= u <= k:
        raise ParameterError(f"need 3 <= u <= k, got u={u}, k={k}")
    params = {"n": n, "k": k, "u": u}
    den = binom(n - u - 1, k - 1)
    rhs = Fraction((k - 1) * (k - 2), (n - k - 1) * (n - k - 2))
    if den == 0:
        return _result(ClaimId.EQ04_BOUND, params, True, 0, rhs,
                       note="skipped: zero denominator C(n-u-1, k-1)")
    lhs = Fraction(binom(n - u - 1, n - k - 1), den)
    return _result(ClaimId.EQ04_BOUND, params, lhs <= rhs, lhs, rhs)


def _eval_eq07(n: int, k: int, t: int) -> ClaimResult:
    if not 1 <= t < k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={k}")
    if n < 2 * k + 1:
        raise ParameterError(f"need n >= 2k+1, got n={n}, k={k}")
    params = {"n": n, "k": k, "t": t}
    den = binom(n - t - 1, k - t - 1)
    if den == 0:
        return _result(ClaimId.EQ07_IDENTITY, params, True, 0, 0,
                       note="skipped: zero denominator C(n-t-1, k-t-1)")
    lhs = Fraction(binom(n - t - k - 1, k - t - 1), den)
    rhs = falling_product((n - k + 1 - i, n - t - i) for i in range(1, k + 1))
    return _result(ClaimId.EQ07_IDENTITY, params, lhs == rhs, lhs, rhs)


def _eval_eq01(n: int, k: int, u: int) -> ClaimResult:
    value = kz_bound(n, k, u)  # validates the regime
    if not k <= n - k:
        raise ParameterError(f"need k <= n-k, got n={n}, k={k}")
    witness = hm_size(n, k, u)
    return _result(ClaimId.EQ01_BOUND, {"n": n, "k": k, "u": u},
                   value == witness, value, witness,
                   note="bound attained by the u-core construction")


def _eval_eq151(n: int, k: int, t: int) -> ClaimResult:
    if k < 3 or not 1 <= t < k:
        raise ParameterError(f"need k >= 3 and 1 <= t < k, got k={k}, t={t}")
    if n < 2 * k + 1:
        raise ParameterError(f"need n >= 2k+1, got n={n}, k={k}")
    lhs = Fraction(k, k - t)
    rhs = Fraction(n - k - 2, k - 2)
    return _result(ClaimId.EQ151_PRED, {"n": n, "k": k, "t": t}, lhs <= rhs, lhs, rhs)


def _eval_eq02(n: int, k: int, t: int) -> ClaimResult:
    """Worst-case instantiation of the degree/diversity balance: with
    diversity at the case boundary C(n-4, k-3) and the maximum degree allowed
    by the weighted-diversity bound, the k/(k-t)-weighted sum must stay within
    C(n-1, k-1)."""
    if k < 3 or not 1 <= t < k:
        raise ParameterError(f"need k >= 3 and 1 <= t < k, got k={k}, t={t}")
    if n < 2 * k + 1:
        raise ParameterError(f"need n > 2k, got n={n}, k={k}")
    gamma = binom(n - 4, k - 3)
    star = binom(n - 1, k - 1)
    delta_cap = star - Fraction(n - k - 2, k - 2) * gamma
    lhs = delta_cap + Fraction(k, k - t) * gamma
    return _result(ClaimId.EQ02_PRED, {"n": n, "k": k, "t": t}, lhs <= star, lhs, star)


def _eval_eq05(n: int, k: int, t: int) -> ClaimResult:
    if not 1 <= t < k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={k}")
    if n < 2 * k + 1:
        raise ParameterError(f"need n >= 2k+1, got n={n}, k={k}")
    lhs = Fraction(k * (k - 1) * (3 * n - 2 * k - 2), n * (n - 1) * (n - 2))
    rhs = Fraction(k - t, n - t)
    return _result(ClaimId.EQ05_PRED, {"n": n, "k": k, "t": t}, lhs <= rhs, lhs, rhs)


def _eval_eq19(n: int, k: int, t: int) -> ClaimResult:
    if not 1 <= t < k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={k}")
    if n < 2 * k + 1:
        raise ParameterError(f"need n >= 2k+1, got n={n}, k={k}")
    lhs = binom(n - k - 2, k - 2)
    rhs = binom(k, t) * (binom(n - k - 1, t) + binom(n - k + t + 1, t + 2))
    return _result(ClaimId.EQ19_PRED, {"n": n, "k": k, "t": t}, lhs >= rhs, lhs, rhs,
                   note="holds iff lhs >= rhs")


def _eval_eq16(n: int, k: int, t: int) -> ClaimResult:
    if not 1 <= t < k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={k}")
    if n < 2 * k + 2:
        raise ParameterError(f"need n >= 2k+2, got n={n}, k={k}")
    lhs = Fraction(k * (k - 1) * (k - 2), (k - t) * (n - k - 1) * (n - k - 2))
    rhs = Fraction(k, n - k + 1)
    return _result(ClaimId.EQ16_PRED, {"n": n, "k": k, "t": t}, lhs <= rhs, lhs, rhs)


def _eval_eq13(n: int, k: int, t: int, u: int) -> ClaimResult:
    if not 1 <= t < k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={k}")
    if not 3 <= u <= k - t - 2:
        raise ParameterError(f"need 3 <= u <= k-t-2, got u={u}, k={k}, t={t}")
    if n < 2 * k + 1:
        raise ParameterError(f"need n >= 2k+1, got n={n}, k={k}")
    prod = falling_product((n - k + 1 - i, n - t - i) for i in range(1, k + 1))
    lhs = (
        Fraction(binom(n - u - 1, k - 1))
        - Fraction(k, k - t) * binom(n - u - 1, n - k - 1)
        - prod * binom(n - 1, k - 1)
    )
    return _result(ClaimId.EQ13_PRED, {"n": n, "k": k, "t": t, "u": u},
                   lhs >= 0, lhs, 0)


def _eval_eq10(n: int, k: int, t: int) -> ClaimResult:
    """Compares 1 - (2k+6t)/n against (1 - k/n)^(3k/4); both sides are raised
    to the 4th power so the comparison stays in exact rationals."""
    if t < 1 or k < 1:
        raise ParameterError(f"need t >= 1 and k >= 1, got t={t}, k={k}")
    if n <= k:
        raise ParameterError(f"need n > k, got n={n}, k={k}")
    params = {"n": n, "k": k, "t": t}
    base = 1 - Fraction(2 * k + 6 * t, n)
    rhs4 = (1 - Fraction(k, n)) ** (3 * k)
    if base < 0:
        return _result(ClaimId.EQ10_PRED, params, False, base ** 4, rhs4,
                       note="left side negative; inequality fails outright")
    lhs4 = base ** 4
    return _result(ClaimId.EQ10_PRED, params, lhs4 >= rhs4, lhs4, rhs4,
                   note="both sides shown to the 4th power")


def _eval_eq11(n: int, k: int, t: int) -> ClaimResult:
    if not 1 <= t < k:
        raise ParameterError(f"need 1 <= t < k, got t={t}, k={k}")
    if n < 2 * k + 1:
        raise ParameterError(f"need n >= 2k+1, got n={n}, k={k}")
    prod = falling_product((n - k + 1 - i, n - t - i) for i in range(1, k + 1))
    lhs = Fraction(k - t, n - t) * (1 - prod)
    rhs = Fraction(k * (k - 1) * (3 * n - 2 * k - 2), n * (n - 1) * (n - 2))
    return _result(ClaimId.EQ11_PRED, {"n": n, "k": k, "t": t}, lhs >= rhs, lhs, rhs)


def _eval_eq09(n: int, k: int) -> ClaimResult:
    if k < 2:
        raise ParameterError(f"need k >= 2, got k={k}")
    if n < 2 * k + 1:
        raise ParameterError(f"need n >= 2k+1, got n={n}, k={k}")
    lhs = Fraction(n - 2 * k - 2, n)
    rhs = falling_product((n - k + 1 - i, n - 1 - i) for i in range(2, k + 1))
    return _result(ClaimId.EQ09_PRED, {"n": n, "k": k}, lhs >= rhs, lhs, rhs)


def _eval_eq33_35(n: int, k: int, s: int, t: int) -> ClaimResult:
    if s < 1 or not 1 <= t <= k - 1:
        raise ParameterError(f"need s >= 1 and 1 <= t <= k-1, got s={s}, t={t}, k={k}")
    if n < s + t + 2 * s * t:
        raise ParameterError(f"need n >= s+t+2st = {s + t + 2 * s * t}, got n={n}")
    if n < s + k + 2 * k * (k - 1):
        raise ParameterError(f"need n >= s+k+2k(k-1) = {s + k + 2 * k * (k - 1)}, got n={n}")
    params = {"n": n, "k": k, "s": s, "t": t}
    prod = falling_product((n - i, n - s - i) for i in range(t))
    lhs = prod - 1
    rhs = Fraction(2 * t * s, n - s - t)
    first = lhs <= rhs
    ratio = Fraction(binom(n - s - k, k - 1), binom(n - s, k))
    floor_ratio = Fraction(k, 2 * (n - s - t))
    second = ratio > floor_ratio
    return _result(ClaimId.EQ33_35_PRED, params, first and second, lhs, rhs,
                   note=f"companion ratio check: {ratio} > {floor_ratio}: {second}")


def _eval_eqhil(n: int, k: int, s: int, u: int) -> ClaimResult:
    bound = emc_size_bound(n, k, s, u)
    reference = binom(n, k) - binom(n - s, k)
    if u == s + 1:
        holds = bound.exact == reference
    else:
        holds = bound.exact < reference
    return _result(ClaimId.EQHIL_BOUND, {"n": n, "k": k, "s": s, "u": u},
                   holds, bound.exact, reference,
                   note="equality exactly at u = s+1, strictly below otherwise")


def _eval_kz_equals_hm(n: int, k: int) -> ClaimResult:
    if k < 3:
        raise ParameterError(f"need k >= 3, got k={k}")
    value = kz_bound(n, k, k)
    collapsed = binom(n - 1, k - 1) - binom(n - k - 1, k - 1) + 1
    return _result(ClaimId.KZ_EQUALS_HM_AT_U_EQ_K, {"n": n, "k": k},
                   value == collapsed, value, collapsed)


_ENUMERATION_CAP = 200_000  # layer size cap for dual-route claims


def _eval_a0_form(n: int, k: int, s: int, t: int) -> ClaimResult:
    formula = a0_t_degree(n, k, s, t)
    if s > n - 1:
        raise ParameterError(f"need s <= n-1 for the construction, got s={s}, n={n}")
    if math.comb(n, k) > _ENUMERATION_CAP:
        raise ParameterError(f"layer C({n}, {k}) too large to enumerate")
    enumerated = _min_t_degree(_a0_family(n, k, s), t).min_degree
    return _result(ClaimId.A0_TDEGREE_FORM, {"n": n, "k": k, "s": s, "t": t},
                   formula == enumerated, formula, enumerated,
                   note="rhs computed by enumeration")


def _eval_hm_form(n: int, k: int, t: int) -> ClaimResult:
    formula = hm_t_degree_bound(n, k, t)
    if k < 2:
        raise ParameterError(f"need k >= 2, got k={k}")
    if math.comb(n, k) > _ENUMERATION_CAP:
        raise ParameterError(f"layer C({n}, {k}) too large to enumerate")
    enumerated = _min_t_degree(_hm_family(n, k, k), t).min_degree
    return _result(ClaimId.HM_TDEGREE_FORM, {"n": n, "k": k, "t": t},
                   formula == enumerated, formula, enumerated,
                   note="rhs computed by enumeration")


@dataclass(frozen=True)
class ClaimSpec:
    claim: ClaimId
    params: tuple[str, ...]
    kind: str  # "identity": must hold everywhere admissible; "regime": data
    statement: str
    regime: str
    fn: Callable[..., ClaimResult] = field(repr=False)


CLAIMS: dict[ClaimId, ClaimSpec] = {
    spec.claim: spec
    for spec in (
        ClaimSpec(
            ClaimId.EQ25_IDENTITY, ("n", "k"), "identity",
            "C(n-1,k-1)-C(n-4,k-1)+C(n-4,k-3) = C(n-2,k-2)+2C(n-3,k-2) "
            "= (1+2(n-k)/(n-2))C(n-2,k-2) = k(k-1)(3n-2k-2)/(n(n-1)(n-2))C(n,k)",
            "k >= 3, n >= k+3", _eval_eq25),
        ClaimSpec(
            ClaimId.EQ04_BOUND, ("n", "k", "u"), "identity",
            "C(n-u-1,n-k-1)/C(n-u-1,k-1) <= (k-1)(k-2)/((n-k-1)(n-k-2))",
            "n >= 2k+2, 3 <= u <= k", _eval_eq04),
        ClaimSpec(
            ClaimId.EQ07_IDENTITY, ("n", "k", "t"), "identity",
            "C(n-t-k-1,k-t-1)/C(n-t-1,k-t-1) = prod_{i=1}^{k} (n-k+1-i)/(n-t-i)",
            "1 <= t < k, n >= 2k+1", _eval_eq07),
        ClaimSpec(
            ClaimId.EQ01_BOUND, ("n", "k", "u"), "identity",
            "C(n-1,k-1)+C(n-u-1,n-k-1)-C(n-u-1,k-1) equals the size of the "
            "u-core construction (sharpness at integer u)",
            "n > 2k, 3 <= u <= k", _eval_eq01),
        ClaimSpec(
            ClaimId.EQ02_PRED, ("n", "k", "t"), "regime",
            "with gamma = C(n-4,k-3) and Delta capped by the weighted-diversity "
            "bound, Delta + k/(k-t)*gamma <= C(n-1,k-1)",
            "k >= 3, 1 <= t < k, n >= 2k+1", _eval_eq02),
        ClaimSpec(
            ClaimId.EQ151_PRED, ("n", "k", "t"), "regime",
            "k/(k-t) <= (n-k-2)/(k-2)",
            "k >= 3, 1 <= t < k, n >= 2k+1", _eval_eq151),
        ClaimSpec(
            ClaimId.EQ05_PRED, ("n", "k", "t"), "regime",
            "k(k-1)(3n-2k-2)/(n(n-1)(n-2)) <= (k-t)/(n-t)",
            "1 <= t < k, n >= 2k+1", _eval_eq05),
        ClaimSpec(
            ClaimId.EQ19_PRED, ("n", "k", "t"), "regime",
            "C(n-k-2,k-2) >= C(k,t)(C(n-k-1,t) + C(n-k+t+1,t+2))",
            "1 <= t < k, n >= 2k+1", _eval_eq19),
        ClaimSpec(
            ClaimId.EQ16_PRED, ("n", "k", "t"), "regime",
            "k(k-1)(k-2)/((k-t)(n-k-1)(n-k-2)) <= k/(n-k+1)",
            "1 <= t < k, n >= 2k+2", _eval_eq16),
        ClaimSpec(
            ClaimId.EQ13_PRED, ("n", "k", "t", "u"), "regime",
            "C(n-u-1,k-1) - k/(k-t)C(n-u-1,n-k-1) "
            "- prod_{i=1}^{k}((n-k+1-i)/(n-t-i)) C(n-1,k-1) >= 0",
            "1 <= t < k, 3 <= u <= k-t-2, n >= 2k+1", _eval_eq13),
        ClaimSpec(
            ClaimId.EQ10_PRED, ("n", "k", "t"), "regime",
            "1 - (2k+6t)/n >= (1 - k/n)^(3k/4), compared at the 4th power",
            "t >= 1, n > k", _eval_eq10),
        ClaimSpec(
            ClaimId.EQ11_PRED, ("n", "k", "t"), "regime",
            "(k-t)/(n-t) (1 - prod_{i=1}^{k}(n-k+1-i)/(n-t-i)) "
            ">= k(k-1)(3n-2k-2)/(n(n-1)(n-2))",
            "1 <= t < k, n >= 2k+1", _eval_eq11),
        ClaimSpec(
            ClaimId.EQ09_PRED, ("n", "k"), "regime",
            "(n-2k-2)/n >= prod_{i=2}^{k} (n-k+1-i)/(n-1-i)",
            "k >= 2, n >= 2k+1", _eval_eq09),
        ClaimSpec(
            ClaimId.EQ33_35_PRED, ("n", "k", "s", "t"), "regime",
            "prod_{i=0}^{t-1}(n-i)/(n-s-i) - 1 <= 2ts/(n-s-t), and "
            "C(n-s-k,k-1)/C(n-s,k) > k/(2(n-s-t))",
            "s >= 1, 1 <= t <= k-1, n >= s+t+2st, n >= s+k+2k(k-1)", _eval_eq33_35),
        ClaimSpec(
            ClaimId.EQHIL_BOUND, ("n", "k", "s", "u"), "regime",
            "C(n,k)-C(n-s,k)-(u-s-1)/u C(n-s-k,k-1) stays below C(n,k)-C(n-s,k), "
            "with equality exactly at u = s+1",
            "s, k >= 2, u >= s+1, n = (u+s-1)(k-1)+s+k", _eval_eqhil),
        ClaimSpec(
            ClaimId.KZ_EQUALS_HM_AT_U_EQ_K, ("n", "k"), "identity",
            "the diversity bound at u = k collapses to "
            "C(n-1,k-1) - C(n-k-1,k-1) + 1",
            "k >= 3, n > 2k", _eval_kz_equals_hm),
        ClaimSpec(
            ClaimId.A0_TDEGREE_FORM, ("n", "k", "s", "t"), "identity",
            "C(n-t,k-t)-C(n-s-t,k-t) equals the enumerated minimum t-degree "
            "of a0(n, k, s)",
            "1 <= t <= k, 1 <= s <= n-1, layer small enough to enumerate",
            _eval_a0_form),
        ClaimSpec(
            ClaimId.HM_TDEGREE_FORM, ("n", "k", "t"), "identity",
            "C(n-t-1,k-t-1)-C(n-t-k-1,k-t-1) equals the enumerated minimum "
            "t-degree of hilton_milner(n, k, k)",
            "1 <= t < k, 2 <= k <= n-k, layer small enough to enumerate",
            _eval_hm_form),
    )
}


def evaluate_claim(claim: ClaimId | str, point: ParamPoint) -> ClaimResult:
    """Evaluate one claim at one parameter point, exactly."""
    claim = ClaimId(claim)
    spec = CLAIMS[claim]
    values = point.as_dict()
    missing = [p for p in spec.params if p not in values]
    if missing:
        raise ParameterError(f"{claim.value} needs parameters {missing}")
    kwargs = {p: values[p] for p in spec.params}
    return spec.fn(**kwargs)


def check_case_predicates(point: ParamPoint, claim: ClaimId | str) -> bool:
    """Truth value of `claim` at `point`; raises ParameterError outside the
    claim's stated regime."""
    return evaluate_claim(claim, point).holds


def check_eq25(n: int, k: int) -> bool:
    return _eval_eq25(n, k).holds


def check_eq04(n: int, k: int, u: int) -> bool:
    return _eval_eq04(n, k, u).holds


def check_eq07(n: int, k: int, t: int) -> bool:
    return _eval_eq07(n, k, t).holds


# ---------------------------------------------------------------------------
# Threshold discovery along affine rules n = a*k + b
# ---------------------------------------------------------------------------


K_WINDOW = (3, 200)


@dataclass(frozen=True)
class AffineRule:
    """n as an affine function of k: n = a*k + b."""

    a: int
    b: int

    def n_at(self, k: int) -> int:
        return self.a * k + self.b

    def __str__(self) -> str:
        if self.a == 0:
            return str(self.b)
        head = "k" if self.a == 1 else f"{self.a}k"
        if self.b == 0:
            return head
        return f"{head}{self.b:+d}"


def parse_affine_rule(text: str) -> AffineRule:
    """Parse rules like '2k+5', 'k-1', '3k', or a bare constant '30'."""
    import re

    cleaned = text.strip()
    m = re.fullmatch(r"(\d*)\s*k\s*([+-]\s*\d+)?", cleaned)
    if m:
        a = int(m.group(1)) if m.group(1) else 1
        b = int(m.group(2).replace(" ", "")) if m.group(2) else 0
        return AffineRule(a, b)
    m = re.fullmatch(r"[+-]?\d+", cleaned)
    if m:
        return AffineRule(0, int(cleaned))
    raise ParameterError(f"cannot parse affine rule {text!r}")


class NoThresholdError(RuntimeError):
    """The scanned window contains no k from which the claim always holds."""


@dataclass(frozen=True)
class ThresholdScan:
    claim: ClaimId
    rule: AffineRule
    fixed: dict[str, int]
    threshold: int
    first_hold: int
    non_monotone_at: tuple[int, ...]  # k values where holds flips back to False
    window: tuple[int, int]


def scan_threshold(
    claim: ClaimId | str,
    n_rule: AffineRule | str,
    t: int | None = None,
    s: int | None = None,
    u: int | None = None,
    window: tuple[int, int] = K_WINDOW,
) -> ThresholdScan:
    """Scan k over `window` along n = n_rule(k) and locate the smallest k from
    which the claim holds for every scanned k' >= k.

    A k at which the claim's preconditions fail counts as not holding.
    Non-monotonicity (holds, then fails again at larger k) is reported, not
    assumed away.
    """
    claim = ClaimId(claim)
    rule = n_rule if isinstance(n_rule, AffineRule) else parse_affine_rule(n_rule)
    lo, hi = window
    verdicts: dict[int, bool] = {}
    for k in range(lo, hi + 1):
        point = ParamPoint(n=rule.n_at(k), k=k, s=s, t=t, u=u)
        try:
            verdicts[k] = evaluate_claim(claim, point).holds
        except ParameterError:
            verdicts[k] = False
    holding = [k for k, v in verdicts.items() if v]
    if not holding:
        raise NoThresholdError(
            f"{claim.value} never holds for k in [{lo}, {hi}] along n = {rule}"
        )
    last_false = max((k for k, v in verdicts.items() if not v), default=lo - 1)
    threshold = max(last_false + 1, lo)
    if threshold > hi:
        raise NoThresholdError(
            f"{claim.value} keeps failing up to k = {hi} along n = {rule}"
        )
    first_hold = min(holding)
    non_monotone = tuple(
        k for k in range(first_hold + 1, hi + 1) if not verdicts[k]
    )
    return ThresholdScan(
        claim=claim,
        rule=rule,
        fixed={k: v for k, v in (("t", t), ("s", s), ("u", u)) if v is not None},
        threshold=threshold,
        first_hold=first_hold,
        non_monotone_at=non_monotone,
        window=window,
    )


def find_threshold(
    claim: ClaimId | str,
    n_rule: AffineRule | str,
    t: int | None = None,
    **fixed: int,
) -> int:
    """Smallest k in the scan window from which the claim holds onward."""
    return scan_threshold(claim, n_rule, t=t, **fixed).threshold
