"""Dominant singularities and closed-form asymptotics for the shape counts.

The growth of compatible pi-shape counts under minimum arc-length lam is
governed by the smallest positive root zeta of

    p(z) = z^(2 lam + 2) - 4 z^(lam + 3) - 2 z^(lam + 1) + 1.

For odd lam the polynomial is even and the roots come in a pair +-zeta.
Root isolation scans exact rational signs, so no floating-point
cancellation can misplace the first sign change; floats appear only in the
final witnesses and in the deflated cofactor values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction

from .counting import ExactCounts
from .errors import LargeRemainder, NoRootFound, UnsupportedTarget
from .series import CompatibleTable, compatible_counts

SQRT_PI = math.sqrt(math.pi)


def singular_polynomial(lam: int) -> list:
    """Ascending coefficients of p(z); exponents collide when lam = 1."""
    if lam < 1:
        raise ValueError(f"lam must be positive, got {lam}")
    coeffs = [0] * (2 * lam + 3)
    coeffs[0] += 1
    coeffs[lam + 1] -= 2
    coeffs[lam + 3] -= 4
    coeffs[2 * lam + 2] += 1
    return coeffs


def _eval_poly(coeffs, x):
    acc = coeffs[-1] * 0
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


@dataclass(frozen=True)
class DominantSingularity:
    """Isolated smallest positive root of the singular polynomial.

    ``low``/``high`` bracket the root with opposite exact signs; ``zeta``
    is the float midpoint witness.  After deflation, ``cofactor_at_zeta``
    holds Q(zeta) for even lam or R(zeta) for odd lam.
    """

    lam: int
    low: Fraction
    high: Fraction
    zeta: float
    parity: str  # "even" or "odd"
    cofactor_at_zeta: float | None = None


def find_zeta(lam: int, scan_steps: int = 1000,
              width: Fraction = Fraction(1, 10 ** 12)) -> DominantSingularity:
    """Isolate the smallest positive root of p(z) on (0, 1).

    Scans p at k / scan_steps with exact rationals until the first sign
    change (p(0) = 1 > 0), certifying no earlier root at the grid
    resolution, then bisects the bracket down to ``width``.
    """
    if not 1 <= lam <= 32:
        raise ValueError(f"lam must be in 1..32, got {lam}")
    coeffs = singular_polynomial(lam)
    low = Fraction(0)
    high = None
    for k in range(1, scan_steps + 1):
        x = Fraction(k, scan_steps)
        value = _eval_poly(coeffs, x)
        if value < 0:
            high = x
            break
        if value == 0:
            # p has no rational roots (only +-1 are candidates), so a grid
            # hit would mean a broken polynomial
            raise NoRootFound(f"unexpected exact zero at {x}")
        low = x
    if high is None:
        raise NoRootFound(f"no sign change of p on (0, 1) for lam = {lam}")
    while high - low > width:
        mid = (low + high) / 2
        if _eval_poly(coeffs, mid) > 0:
            low = mid
        else:
            high = mid
    zeta = float((low + high) / 2)
    return DominantSingularity(
        lam=lam,
        low=low,
        high=high,
        zeta=zeta,
        parity="odd" if lam % 2 else "even",
    )


def deflate(lam: int, sing: DominantSingularity,
            tol: float = 1e-8) -> DominantSingularity:
    """Divide out the dominant root factor(s) and store the cofactor value.

    Synthetic division in floats by (1 - z/zeta), and additionally by
    (1 + z/zeta) for odd lam; the remainders must stay below ``tol`` or the
    root witness is considered inaccurate.
    """
    coeffs = [float(c) for c in singular_polynomial(lam)]
    zeta = sing.zeta
    quotient, rem = _synthetic_div(coeffs, zeta)
    if abs(rem) > tol:
        raise LargeRemainder(f"division remainder {rem!r} exceeds {tol}")
    if sing.parity == "even":
        # p = Q(z) (1 - z/zeta) = (-Q(z)/zeta)(z - zeta)
        cofactor = [-zeta * c for c in quotient]
    else:
        quotient, rem2 = _synthetic_div(quotient, -zeta)
        if abs(rem2) > tol:
            raise LargeRemainder(f"division remainder {rem2!r} exceeds {tol}")
        # p = R(z) (1 - z/zeta)(1 + z/zeta) = (-R(z)/zeta^2)(z - zeta)(z + zeta)
        cofactor = [-zeta * zeta * c for c in quotient]
    value = _eval_poly(cofactor, zeta)
    return replace(sing, cofactor_at_zeta=value)


def _synthetic_div(ascending, root):
    """Divide by (z - root); returns (ascending quotient, remainder)."""
    coeffs = list(reversed(ascending))
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + out[-1] * root)
    rem = out.pop()
    return list(reversed(out)), rem


# ---------------------------------------------------------------------------
# limit distributions


def asym_level0(r0: int) -> float:
    """Limit of M(r0; n) / M_n: (r0 + 1) / 2^(r0 + 2)."""
    if r0 < 0:
        raise ValueError("r0 must be nonnegative")
    return (r0 + 1) / 2 ** (r0 + 2)


def _pi_constants(lam: int, sing: DominantSingularity | None) -> tuple[float, float, DominantSingularity]:
    sing = sing if sing is not None and sing.lam == lam else find_zeta(lam)
    z = sing.zeta
    a = z * z / (1 + z * z)
    b = (1 + z ** (lam + 1)) / (2 * (1 + z * z))
    return a, b, sing


def asym_pi(lam: int, r0: int, sing: DominantSingularity | None = None) -> float:
    """Limit of pi(r0; nu) / pi(nu): (r0 + 1) a b^r0 with a = (1 - b)^2."""
    if r0 < 0:
        raise ValueError("r0 must be nonnegative")
    a, b, _ = _pi_constants(lam, sing)
    return (r0 + 1) * a * b ** r0


def asym_pi_expected(lam: int, sing: DominantSingularity | None = None) -> float:
    """Limit of the expected r0 over compatible shapes: (1 - zeta^(lam+1)) / zeta^2."""
    _, _, sing = _pi_constants(lam, sing)
    z = sing.zeta
    return (1 - z ** (lam + 1)) / (z * z)


# ---------------------------------------------------------------------------
# leading-order count asymptotics
#
# Every formula folds Gamma(-1/2) = -2 sqrt(pi), so the constants below are
# positive whenever the counts are.


def _log_asym_motzkin(n: int) -> float:
    return (n + 1.5) * math.log(3) - math.log(2 * SQRT_PI) - 1.5 * math.log(n)


def _log_asym_level0_total(r0: int, n: int) -> float:
    return (
        math.log(r0 + 1)
        + (n + 1.5) * math.log(3)
        - (r0 + 3) * math.log(2)
        - math.log(SQRT_PI)
        - 1.5 * math.log(n)
    )


def _log_asym_level0_weighted(n: int) -> float:
    return (n + 1.5) * math.log(3) - math.log(SQRT_PI) - 1.5 * math.log(n)


def _require_cofactor(lam, sing):
    sing = sing if sing is not None and sing.lam == lam else deflate(lam, find_zeta(lam))
    if sing.cofactor_at_zeta is None:
        sing = deflate(lam, sing)
    return sing


def _parity_bracket(sing: DominantSingularity, nu: int) -> float:
    """1/(1-z) for even lam; the two-singularity sum for odd lam."""
    z = sing.zeta
    if sing.parity == "even":
        return 1 / (1 - z)
    return 1 / (1 - z) + (-1) ** nu / (1 + z)

def _sqrt_cofactor(sing: DominantSingularity) -> float:
    c = sing.cofactor_at_zeta
    if sing.parity == "odd":
        c = 2 * c
    if c <= 0:
        raise LargeRemainder(f"cofactor {c} at zeta is not positive")
    return math.sqrt(c)


def _log_asym_pi_total(lam: int, nu: int, sing: DominantSingularity) -> float:
    z = sing.zeta
    const = _sqrt_cofactor(sing) * _parity_bracket(sing, nu) / (4 * SQRT_PI)
    return (nu + 2) * math.log(1 / z) + math.log(const) - 1.5 * math.log(nu)


def _log_asym_pi_weighted(lam: int, nu: int, sing: DominantSingularity) -> float:
    z = sing.zeta
    const = (
        (1 - z ** (lam + 1))
        * _sqrt_cofactor(sing)
        * _parity_bracket(sing, nu)
        / (4 * SQRT_PI)
    )
    return (nu + 4) * math.log(1 / z) + math.log(const) - 1.5 * math.log(nu)


def _log_asym_pi_r0(lam: int, nu: int, r0: int, sing: DominantSingularity) -> float:
    z = sing.zeta
    const = (
        (r0 + 1)
        * (1 + z ** (lam + 1)) ** r0
        * _sqrt_cofactor(sing)
        * _parity_bracket(sing, nu)
        / (2 ** (r0 + 2) * SQRT_PI * (1 + z * z) ** (r0 + 1))
    )
    return nu * math.log(1 / z) + math.log(const) - 1.5 * math.log(nu)


ASYM_TARGETS = (
    "motzkin_number",
    "level0_total",
    "level0_weighted_sum",
    "pi_total",
    "pi_r0",
    "pi_weighted_sum",
)


@dataclass(frozen=True)
class AsymptoticReport:
    target: str
    params: dict
    exact: int
    asymptotic: float
    ratio: float


def _exp(logv: float) -> float:
    try:
        return math.exp(logv)
    except OverflowError:
        return math.inf


def asym_count(target: str, *, n: int | None = None, lam: int | None = None,
               nu: int | None = None, r0: int | None = None,
               counts: ExactCounts | None = None,
               table: CompatibleTable | None = None,
               sing: DominantSingularity | None = None,
               limit: int = 2000) -> AsymptoticReport:
    """Pair an exact count with its closed-form leading asymptotic.

    The ratio exact/asymptotic is computed through logarithms so that huge
    exact counts never overflow.
    """
    if target not in ASYM_TARGETS:
        raise UnsupportedTarget(f"unknown target {target!r}; known: {ASYM_TARGETS}")
    counts = counts or ExactCounts()
    params: dict = {}
    if target == "motzkin_number":
        if n is None or n < 1:
            raise ValueError("motzkin_number needs n >= 1")
        exact = counts.motzkin_number(n)
        log_asym = _log_asym_motzkin(n)
        params = {"n": n}
    elif target == "level0_total":
        if n is None or n < 1 or r0 is None:
            raise ValueError("level0_total needs n >= 1 and r0")
        exact = counts.level0_total(r0, n)
        log_asym = _log_asym_level0_total(r0, n)
        params = {"n": n, "r0": r0}
    elif target == "level0_weighted_sum":
        if n is None or n < 1:
            raise ValueError("level0_weighted_sum needs n >= 1")
        exact = counts.level0_weighted_sum(n)
        log_asym = _log_asym_level0_weighted(n)
        params = {"n": n}
    else:
        if lam is None or nu is None or nu < 1:
            raise ValueError(f"{target} needs lam and nu >= 1")
        sing = _require_cofactor(lam, sing)
        if table is None or table.lam != lam or table.nu_max < nu:
            table = compatible_counts(lam, nu, counts, limit=limit)
        if target == "pi_total":
            exact = table.total(nu)
            log_asym = _log_asym_pi_total(lam, nu, sing)
            params = {"lam": lam, "nu": nu}
        elif target == "pi_weighted_sum":
            exact = table.weighted_sum(nu)
            log_asym = _log_asym_pi_weighted(lam, nu, sing)
            params = {"lam": lam, "nu": nu}
        else:
            if r0 is None:
                raise ValueError("pi_r0 needs r0")
            exact = table.count(r0, nu)
            log_asym = _log_asym_pi_r0(lam, nu, r0, sing)
            params = {"lam": lam, "nu": nu, "r0": r0}

    asym = _exp(log_asym)
    ratio = _exp(math.log(exact) - log_asym) if exact > 0 else 0.0
    return AsymptoticReport(target, params, exact, asym, ratio)


# ---------------------------------------------------------------------------
# finite-size convergence data


def expected_level0(n: int, counts: ExactCounts | None = None) -> Fraction:
    """Exact expected r0 over Motzkin paths of size n."""
    counts = counts or ExactCounts()
    return Fraction(counts.level0_weighted_sum(n), counts.motzkin_number(n))


def expected_pi_r0(lam: int, nu: int, counts: ExactCounts | None = None,
                   table: CompatibleTable | None = None) -> Fraction:
    """Exact expected r0 over compatible pi shapes of backbone length nu."""
    if table is None or table.lam != lam or table.nu_max < nu:
        table = compatible_counts(lam, nu, counts)
    return Fraction(table.weighted_sum(nu), table.total(nu))


def convergence_report(family: str, *, n: int | None = None, lam: int | None = None,
                       nu: int | None = None, r0_max: int = 8,
                       counts: ExactCounts | None = None, limit: int = 2000) -> list:
    """Rows (r0, exact frequency, asymptotic value, absolute deviation).

    family "level0" compares M(r0; n)/M_n with its limit; family "pi"
    compares pi(r0; nu)/pi(nu) at the given lam.  Exact frequencies are
    computed with integer arithmetic and only converted to float at the end.
    """
    counts = counts or ExactCounts()
    rows = []
    if family == "level0":
        if n is None or n < 0:
            raise ValueError("level0 family needs n >= 0")
        total = counts.motzkin_number(n)
        for r0 in range(r0_max + 1):
            exact = Fraction(counts.level0_total(r0, n), total) if r0 <= n else Fraction(0)
            asym = asym_level0(r0)
            rows.append((r0, float(exact), asym, abs(float(exact) - asym)))
    elif family == "pi":
        if lam is None or nu is None:
            raise ValueError("pi family needs lam and nu")
        table = compatible_counts(lam, nu, counts, limit=limit)
        total = table.total(nu)
        if total == 0:
            raise ValueError(f"no compatible shapes up to nu = {nu}")
        sing = find_zeta(lam)
        for r0 in range(r0_max + 1):
            exact = Fraction(table.count(r0, nu), total)
            asym = asym_pi(lam, r0, sing)
            rows.append((r0, float(exact), asym, abs(float(exact) - asym)))
    else:
        raise ValueError(f"unknown family {family!r}; expected 'level0' or 'pi'")
    return rows
