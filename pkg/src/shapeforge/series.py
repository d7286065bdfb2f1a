"""Exact truncated power series and the generating functions built from them.

Coefficients live in an exact ring: Fraction, or Poly for multivariate
expansions.  Series are immutable; all operations truncate at the stated
order and never consult coefficients beyond it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .counting import ExactCounts
from .errors import (
    DivisibilityFailure,
    NonUnitConstantTerm,
    ResourceGuardExceeded,
    UnknownIdentity,
)
from .poly import Poly


class TruncatedSeries:
    """Coefficients c[0..order] of a power series in one variable."""

    __slots__ = ("variable", "order", "coeffs", "zero")

    def __init__(self, variable: str, coeffs: Sequence, order: int | None = None, zero=Fraction(0)):
        coeffs = list(coeffs)
        if order is None:
            order = len(coeffs) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        while len(coeffs) < order + 1:
            coeffs.append(zero)
        object.__setattr__(self, "variable", variable)
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(coeffs[: order + 1]))
        object.__setattr__(self, "zero", zero)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    @property
    def one(self):
        return self.zero + 1

    def coefficient(self, n: int):
        if not 0 <= n <= self.order:
            raise IndexError(f"coefficient {n} beyond truncation order {self.order}")
        return self.coeffs[n]

    def with_order(self, order: int) -> "TruncatedSeries":
        return TruncatedSeries(self.variable, self.coeffs[: order + 1], order, self.zero)

    def map_coeffs(self, f: Callable, zero=None) -> "TruncatedSeries":
        return TruncatedSeries(
            self.variable,
            [f(c) for c in self.coeffs],
            self.order,
            self.zero if zero is None else zero,
        )

    def _wrap(self, coeffs) -> "TruncatedSeries":
        return TruncatedSeries(self.variable, coeffs, self.order, self.zero)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(
            self.variable,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
            order,
            self.zero,
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        order = min(self.order, other.order)
        return TruncatedSeries(
            self.variable,
            [a - b for a, b in zip(self.coeffs, other.coeffs)],
            order,
            self.zero,
        )

    def __neg__(self) -> "TruncatedSeries":
        return self._wrap([-c for c in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            order = min(self.order, other.order)
            out = [self.zero] * (order + 1)
            for i, a in enumerate(self.coeffs[: order + 1]):
                if a == self.zero:
                    continue
                for j in range(order + 1 - i):
                    b = other.coeffs[j]
                    if b != other.zero:
                        out[i + j] = out[i + j] + a * b
            return TruncatedSeries(self.variable, out, order, self.zero)
        return self._wrap([c * other for c in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.order == other.order and list(self.coeffs) == list(other.coeffs)

    __hash__ = None

    def shift_down(self, k: int) -> "TruncatedSeries":
        """Divide by the k-th power of the variable; the dropped coefficients
        must vanish."""
        for n in range(k):
            if self.coeffs[n] != self.zero:
                raise DivisibilityFailure(
                    f"coefficient of order {n} is nonzero, cannot shift by {k}"
                )
        return TruncatedSeries(self.variable, self.coeffs[k:], self.order - k, self.zero)

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse; requires constant term 1."""
        if self.coeffs[0] != self.one:
            raise NonUnitConstantTerm("series inverse needs constant term 1")
        out = [self.one]
        for n in range(1, self.order + 1):
            acc = self.zero
            for k in range(1, n + 1):
                a = self.coeffs[k]
                if a != self.zero:
                    acc = acc + a * out[n - k]
            out.append(-acc)
        return self._wrap(out)

    def sqrt(self) -> "TruncatedSeries":
        """Square root by Newton iteration with doubling precision.

        Requires constant term 1; the result is squared back and compared
        exactly as a self-check.
        """
        if self.coeffs[0] != self.one:
            raise NonUnitConstantTerm("series sqrt needs constant term 1")
        y = TruncatedSeries(self.variable, [self.one], 0, self.zero)
        m = 0
        while m < self.order:
            m = min(2 * m + 1, self.order)
            a = self.with_order(m)
            ym = y.with_order(m)
            y = (ym + a * ym.inverse()) * Fraction(1, 2)
        assert y * y == self, "sqrt self-check failed"
        return y


# ---------------------------------------------------------------------------
# generating-function expansions


def expand_motzkin_gf(order: int = 64, with_v: bool = True,
                      counts: ExactCounts | None = None) -> TruncatedSeries:
    """Expand the Motzkin generating function from its closed form.

    The coefficient of w^n is the Motzkin polynomial in v (coefficient of
    v^k equals motzkin_poly_coeff(n, k)), or the Motzkin number at v = 1
    when ``with_v`` is false.  Goes through the square root and the exact
    division by 2 v w^2, which cross-validates the series machinery against
    the closed counting formulas.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if with_v:
        variables = ("v",)
        one = Poly.one(variables)
        v = Poly.var(variables, "v")
        zero = Poly.zero(variables)
        radicand = TruncatedSeries(
            "w", [one, Poly.const(variables, -2), one - 4 * v], order + 2, zero
        )
        linear = TruncatedSeries("w", [one, -one], order + 2, zero)
    else:
        zero = Fraction(0)
        radicand = TruncatedSeries(
            "w", [Fraction(1), Fraction(-2), Fraction(-3)], order + 2, zero
        )
        linear = TruncatedSeries("w", [Fraction(1), Fraction(-1)], order + 2, zero)
    numerator = linear - radicand.sqrt()
    shifted = numerator.shift_down(2)
    if with_v:
        divisor = 2 * v
        return shifted.map_coeffs(lambda p: p.exact_div(divisor))
    return shifted * Fraction(1, 2)


def _powers(base: Poly, n: int) -> list:
    out = [Poly.one(base.variables)]
    for _ in range(n):
        out.append(out[-1] * base)
    return out


ISLAND_GF_FORMS = ("narayana", "closed", "motzkin2")


def expand_island_gf(order: int = 24, form: str = "closed",
                     counts: ExactCounts | None = None,
                     limit: int = 24) -> TruncatedSeries:
    """Expand the island-diagram generating function in z to the given order.

    Coefficients are polynomials in x (hairpins) and y (islands); the
    coefficient of x^h y^I z^ell equals island_count(h, I, ell).  Three
    equivalent routes are provided: a direct Narayana sum, the closed form
    with a series square root, and the 2-Motzkin step-weight sum.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order > limit:
        raise ResourceGuardExceeded(f"island gf order {order} exceeds guard {limit}")
    if form not in ISLAND_GF_FORMS:
        raise ValueError(f"unknown form {form!r}; expected one of {ISLAND_GF_FORMS}")
    counts = counts or ExactCounts()
    variables = ("x", "y")
    zero = Poly.zero(variables)
    one = Poly.one(variables)
    x = Poly.var(variables, "x")
    y = Poly.var(variables, "y")
    oy = one + y

    if form == "narayana":
        oy_pows = _powers(oy, max(0, 2 * order - 2))
        coeffs = [zero]
        for ell in range(1, order + 1):
            acc = zero
            for h in range(1, ell + 1):
                acc = acc + counts.narayana(ell, h) * (x ** h) * (y ** (h + 1)) * oy_pows[2 * ell - 1 - h]
            coeffs.append(acc)
        return TruncatedSeries("z", coeffs, order, zero)

    if form == "motzkin2":
        up_weight = x * y * oy ** 3            # new bracket pair plus hairpin
        flat_weight = oy * (oy + x * y)        # blue nesting or red hairpin
        up_pows = _powers(up_weight, order // 2 + 1)
        flat_pows = _powers(flat_weight, max(0, order - 1))
        start = x * y * y
        coeffs = [zero]
        for ell in range(1, order + 1):
            n = ell - 1
            acc = zero
            for u in range(n // 2 + 1):
                acc = acc + counts.motzkin_poly_coeff(n, u) * up_pows[u] * flat_pows[n - 2 * u]
            coeffs.append(start * acc)
        return TruncatedSeries("z", coeffs, order, zero)

    # closed form: with A = z (1+y)^2 and B = x y / (1+y), the radicand
    # 1 - 2A(1+B) + A^2 (1-B)^2 clears denominators to a polynomial in z
    # whose coefficients are 1, -2(1+y)(1+y+xy), ((1+y)(1+y-xy))^2.
    c1 = oy * (oy + x * y)
    c2 = (oy * (oy - x * y)) ** 2
    radicand = TruncatedSeries("z", [one, -2 * c1, c2], order + 1, zero)
    linear = TruncatedSeries("z", [one, -c1], order + 1, zero)
    numerator = linear - radicand.sqrt()
    shifted = numerator.shift_down(1)  # DivisibilityFailure if z^0 survives
    divisor = 2 * oy ** 3
    coeffs = [zero] + [
        (y * shifted.coefficient(ell)).exact_div(divisor)
        for ell in range(1, order + 1)
    ]
    return TruncatedSeries("z", coeffs, order, zero)


def expand_level0_gf(order: int = 64, counts: ExactCounts | None = None,
                     limit: int = 200, t=None,
                     numeric_limit: int = 2000) -> TruncatedSeries:
    """Expand the level-0 refinement of the Motzkin generating function.

    Coefficients are polynomials in t; the coefficient of t^r0 w^n equals
    level0_total(r0, n).  Built as A / (1 - t w A) where A = 1 / (1 - w^2 m)
    generates the paths with no level-0 horizontal step.

    Passing a rational ``t`` keeps the coefficients in Fraction, which
    allows much larger orders than the polynomial guard.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    cap = limit if t is None else numeric_limit
    if order > cap:
        raise ResourceGuardExceeded(f"level0 gf order {order} exceeds guard {cap}")
    m1 = expand_motzkin_gf(order, with_v=False, counts=counts)
    denom = TruncatedSeries(
        "w",
        [Fraction(1), Fraction(0)] + [-c for c in m1.coeffs[: order - 1]],
        order,
    )
    a = denom.inverse()

    if t is not None:
        t = Fraction(t)
        twa = TruncatedSeries("w", [Fraction(0)] + [t * c for c in a.coeffs[:order]], order)
        one_series = TruncatedSeries("w", [Fraction(1)], order)
        return a * (one_series - twa).inverse()

    variables = ("t",)
    zero = Poly.zero(variables)
    tvar = Poly.var(variables, "t")
    a_t = TruncatedSeries("w", [Poly.const(variables, c) for c in a.coeffs], order, zero)
    series_twa = TruncatedSeries(
        "w", [zero] + [tvar * c for c in a.coeffs[:order]], order, zero
    )
    one_series = TruncatedSeries("w", [Poly.one(variables)], order, zero)
    return a_t * (one_series - series_twa).inverse()


# ---------------------------------------------------------------------------
# compatible pi-shape counts


@dataclass(frozen=True)
class CompatibleTable:
    """Counts of pi shapes compatible with backbones up to a given length.

    ``counts[r0][nu]`` is the number of pi shapes with r0 + 1 components
    whose minimum backbone length is at most nu, under a minimum hairpin
    loop of lam - 1 unpaired vertices.
    """

    lam: int
    nu_max: int
    counts: tuple

    @property
    def r0_max(self) -> int:
        return len(self.counts) - 1

    def count(self, r0: int, nu: int) -> int:
        if nu < 0 or nu > self.nu_max:
            raise IndexError(f"nu = {nu} outside 0..{self.nu_max}")
        if r0 < 0:
            raise IndexError("r0 must be nonnegative")
        if r0 >= len(self.counts):
            return 0
        return self.counts[r0][nu]

    def total(self, nu: int) -> int:
        return sum(self.count(r0, nu) for r0 in range(len(self.counts)))

    def weighted_sum(self, nu: int) -> int:
        return sum(r0 * self.count(r0, nu) for r0 in range(len(self.counts)))


def compatible_counts(lam: int, nu_max: int, counts: ExactCounts | None = None,
                      limit: int = 2000) -> CompatibleTable:
    """Tabulate compatible pi-shape counts by component number.

    A Motzkin path of size n with u up steps stands for a pi shape with
    2(n + 1) bracket vertices and n - u + 1 hairpin loops of lam - 1
    unpaired vertices each, so its minimum backbone length is
    (lam + 1)(n + 1) - (lam - 1) u.  Summing the closed path counts per
    (n, u, r0) class and cumulating over length realises the table without
    any Laurent-series substitution.
    """
    if lam < 1:
        raise ValueError(f"lam must be positive, got {lam}")
    if nu_max < 0:
        raise ValueError("nu_max must be nonnegative")
    if nu_max > limit:
        raise ResourceGuardExceeded(f"nu_max = {nu_max} exceeds guard {limit}")
    counts = counts or ExactCounts()
    rows: dict[int, dict[int, int]] = {}

    def add(r0: int, nu: int, c: int):
        row = rows.setdefault(r0, {})
        row[nu] = row.get(nu, 0) + c

    n = 0
    while True:
        base = (lam + 1) * (n + 1)
        if base - (lam - 1) * (n // 2) > nu_max:
            break
        if lam == 1:
            # length does not depend on u, so whole-size totals suffice
            if base <= nu_max:
                for r0 in range(n + 1):
                    c = counts.level0_total(r0, n)
                    if c:
                        add(r0, base, c)
        else:
            if base <= nu_max:
                add(n, base, 1)  # the all-horizontal path
            for u in range(1, n // 2 + 1):
                nu = base - (lam - 1) * u
                if nu > nu_max:
                    continue
                for r0 in range(n - 2 * u + 1):
                    c = counts.level0_count(r0, n, u)
                    if c:
                        add(r0, nu, c)
        n += 1

    r0_max = max(rows) if rows else 0
    table = []
    for r0 in range(r0_max + 1):
        row = rows.get(r0, {})
        cum = []
        acc = 0
        for nu in range(nu_max + 1):
            acc += row.get(nu, 0)
            cum.append(acc)
        table.append(tuple(cum))
    return CompatibleTable(lam, nu_max, tuple(table))


# ---------------------------------------------------------------------------
# identity verification


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of checking one identity over a parameter range."""

    name: str
    range_checked: str
    instances: tuple  # (instance description, ok) pairs

    @property
    def passed(self) -> bool:
        return all(ok for _, ok in self.instances)

    @property
    def counterexample(self) -> str | None:
        for desc, ok in self.instances:
            if not ok:
                return desc
        return None

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "range": self.range_checked,
            "status": "pass" if self.passed else "fail",
            "counterexample": self.counterexample,
        }


_XVARS = ("x",)
_XYVARS = ("x", "y")


def _narayana_motzkin_sides(ell: int, counts: ExactCounts) -> tuple[Poly, Poly]:
    """Both sides of the Narayana/Motzkin island identity at a fixed ell."""
    x = Poly.var(_XYVARS, "x")
    y = Poly.var(_XYVARS, "y")
    one = Poly.one(_XYVARS)
    oy = one + y
    lhs = Poly.zero(_XYVARS)
    for h in range(1, ell + 1):
        lhs = lhs + counts.narayana(ell, h) * (x ** h) * (y ** (h + 1)) * oy ** (2 * ell - 1 - h)
    rhs = Poly.zero(_XYVARS)
    up = x * y * oy ** 3
    flat = oy * (oy + x * y)
    for p in range((ell - 1) // 2 + 1):
        rhs = rhs + counts.motzkin_poly_coeff(ell - 1, p) * up ** p * flat ** (ell - 2 * p - 1)
    rhs = x * y * y * rhs
    return lhs, rhs


def _coker1_sides(n: int, counts: ExactCounts) -> tuple[Poly, Poly]:
    x = Poly.var(_XVARS, "x")
    one = Poly.one(_XVARS)
    lhs = Poly.zero(_XVARS)
    for k in range(1, n + 1):
        lhs = lhs + counts.narayana(n, k) * x ** (k - 1)
    rhs = Poly.zero(_XVARS)
    for k in range((n - 1) // 2 + 1):
        rhs = rhs + counts.motzkin_poly_coeff(n - 1, k) * x ** k * (one + x) ** (n - 2 * k - 1)
    return lhs, rhs


def _coker2_sides(n: int, counts: ExactCounts) -> tuple[Poly, Poly]:
    x = Poly.var(_XVARS, "x")
    one = Poly.one(_XVARS)
    lhs = Poly.zero(_XVARS)
    for k in range(1, n + 1):
        lhs = lhs + counts.narayana(n, k) * x ** (2 * (k - 1)) * (one + x) ** (2 * (n - k))
    rhs = Poly.zero(_XVARS)
    for k in range(1, n + 1):
        rhs = rhs + counts.catalan(k) * counts.binomial(n - 1, k - 1) * (x * (one + x)) ** (k - 1)
    return lhs, rhs


IDENTITY_NAMES = (
    "narayana_motzkin",
    "coker1",
    "coker2",
    "touchard",
    "chu_vandermonde",
    "parity_m0m1",
    "pi_parity",
    "island_gf_forms_agree",
)

_DEFAULT_BOUNDS = {
    "narayana_motzkin": 12,
    "coker1": 12,
    "coker2": 12,
    "touchard": 12,
    "chu_vandermonde": 6,
    "parity_m0m1": 30,
    "pi_parity": 50,
    "island_gf_forms_agree": 10,
}


def verify_identity(name: str, bound: int | None = None,
                    counts: ExactCounts | None = None) -> IdentityReport:
    """Check one named identity by exact arithmetic over its range.

    ``bound`` caps the range (ell, n, the chu_vandermonde box side, the
    pi_parity k, or the series order, depending on the identity).
    """
    if name not in IDENTITY_NAMES:
        raise UnknownIdentity(f"unknown identity {name!r}; known: {IDENTITY_NAMES}")
    counts = counts or ExactCounts()
    bound = bound if bound is not None else _DEFAULT_BOUNDS[name]
    instances: list[tuple[str, bool]] = []

    if name == "narayana_motzkin":
        for ell in range(1, bound + 1):
            lhs, rhs = _narayana_motzkin_sides(ell, counts)
            instances.append((f"ell={ell}", lhs == rhs))
        rng = f"ell = 1..{bound}"
    elif name == "coker1":
        for n in range(1, bound + 1):
            lhs, rhs = _coker1_sides(n, counts)
            instances.append((f"n={n}", lhs == rhs))
        rng = f"n = 1..{bound}"
    elif name == "coker2":
        for n in range(1, bound + 1):
            lhs, rhs = _coker2_sides(n, counts)
            instances.append((f"n={n}", lhs == rhs))
        rng = f"n = 1..{bound}"
    elif name == "touchard":
        for n in range(1, bound + 1):
            rhs = sum(
                counts.catalan(k) * counts.binomial(n - 1, 2 * k) * 2 ** (n - 2 * k - 1)
                for k in range((n - 1) // 2 + 1)
            )
            instances.append((f"n={n}", counts.catalan(n) == rhs))
        rng = f"n = 1..{bound}"
    elif name == "chu_vandermonde":
        for m in range(bound + 1):
            for t in range(m + 1):
                for n in range(bound + 1):
                    rhs = sum(
                        counts.binomial(m + n - t - alpha, n - alpha)
                        * counts.binomial(t + alpha, alpha)
                        for alpha in range(n + 1)
                    )
                    ok = counts.binomial(m + n + 1, n) == rhs
                    instances.append((f"m={m},t={t},n={n}", ok))
        rng = f"0 <= t <= m <= {bound}, n <= {bound}"
    elif name == "parity_m0m1":
        for n in range(1, bound + 1):
            diff = counts.level0_total(0, n) - counts.level0_total(1, n)
            instances.append((f"n={n}", diff == (-1) ** n))
        rng = f"n = 1..{bound}"
    elif name == "pi_parity":
        for lam in (1, 3):
            table = compatible_counts(lam, 2 * bound + 1, counts)
            for k in range(bound + 1):
                ok = table.total(2 * k) == table.total(2 * k + 1)
                instances.append((f"lam={lam},k={k}", ok))
        rng = f"lam in (1, 3), k = 0..{bound}"
    else:  # island_gf_forms_agree
        series = {f: expand_island_gf(bound, f, counts) for f in ISLAND_GF_FORMS}
        for ell in range(bound + 1):
            ok = (
                series["narayana"].coefficient(ell)
                == series["closed"].coefficient(ell)
                == series["motzkin2"].coefficient(ell)
            )
            instances.append((f"ell={ell}", ok))
        rng = f"z order 0..{bound}"

    return IdentityReport(name, rng, tuple(instances))
