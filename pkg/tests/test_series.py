import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import motzkin_paths, step_counts
from shapeforge import (
    IDENTITY_NAMES,
    Poly,
    TruncatedSeries,
    compatible_counts,
    expand_island_gf,
    expand_level0_gf,
    expand_motzkin_gf,
    verify_identity,
)
from shapeforge.errors import (
    NonUnitConstantTerm,
    ResourceGuardExceeded,
    UnknownIdentity,
)

# ---------------------------------------------------------------------------
# series arithmetic


def test_sqrt_of_one_is_one():
    s = TruncatedSeries("w", [Fraction(1)], 10)
    root = s.sqrt()
    assert root.coeffs[0] == 1 and all(c == 0 for c in root.coeffs[1:])


def test_sqrt_reproduces_catalan_numbers(counts):
    # (1 - sqrt(1 - 4w)) / (2w) generates the Catalan numbers
    order = 12
    s = TruncatedSeries("w", [Fraction(1), Fraction(-4)], order)
    numerator = TruncatedSeries("w", [Fraction(1)], order) - s.sqrt()
    series = numerator.shift_down(1) * Fraction(1, 2)
    for k in range(11):
        assert series.coefficient(k) == counts.catalan(k)


def test_sqrt_square_round_trip_on_random_polynomial_series():
    rng = random.Random(20240817)
    variables = ("x", "y")
    for _ in range(3):
        coeffs = [Poly.one(variables)]
        for _ in range(20):
            terms = {
                (rng.randrange(3), rng.randrange(3)): Fraction(rng.randrange(-4, 5))
                for _ in range(3)
            }
            coeffs.append(Poly(variables, terms))
        s = TruncatedSeries("z", coeffs, 20, Poly.zero(variables))
        root = s.sqrt()  # sqrt() asserts root * root == s internally
        assert root * root == s


@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=0, max_size=8))
@settings(max_examples=40, deadline=None)
def test_sqrt_inverts_squaring(tail):
    coeffs = [Fraction(1)] + [Fraction(c) for c in tail]
    f = TruncatedSeries("w", coeffs, len(coeffs) - 1)
    assert (f * f).sqrt() == f


def test_inverse_requires_unit_constant_term():
    with pytest.raises(NonUnitConstantTerm):
        TruncatedSeries("w", [Fraction(2), Fraction(1)], 4).inverse()
    with pytest.raises(NonUnitConstantTerm):
        TruncatedSeries("w", [Fraction(0), Fraction(1)], 4).sqrt()


def test_inverse_round_trip():
    f = TruncatedSeries("w", [Fraction(1), Fraction(3), Fraction(-2), Fraction(7)], 9)
    g = f.inverse()
    product = f * g
    assert product.coefficient(0) == 1
    assert all(c == 0 for c in product.coeffs[1:])


# ---------------------------------------------------------------------------
# Motzkin generating function


def test_motzkin_gf_examples(counts):
    m = expand_motzkin_gf(8, with_v=False)
    assert m.coefficient(0) == 1
    assert m.coefficient(4) == 9
    mv = expand_motzkin_gf(8, with_v=True)
    assert mv.coefficient(7).coefficient(v=2) == 70


def test_motzkin_gf_matches_closed_counts(counts):
    mv = expand_motzkin_gf(20, with_v=True)
    for n in range(21):
        poly = mv.coefficient(n)
        for k in range(n // 2 + 1):
            assert poly.coefficient(v=k) == counts.motzkin_poly_coeff(n, k)
        assert poly.degree() <= n // 2


def test_no_level0_factor_is_true_inverse(counts):
    # A(v, w) (1 - v w^2 m(v, w)) = 1 up to truncation
    order = 16
    m = expand_motzkin_gf(order, with_v=True)
    variables = ("v",)
    v = Poly.var(variables, "v")
    zero = Poly.zero(variables)
    coeffs = [Poly.one(variables), zero] + [-(v * c) for c in m.coeffs[: order - 1]]
    denom = TruncatedSeries("w", coeffs, order, zero)
    product = denom * denom.inverse()
    assert product.coefficient(0) == Poly.one(variables)
    assert all(c == zero for c in product.coeffs[1:])


# ---------------------------------------------------------------------------
# island-diagram generating function


def test_island_gf_examples(counts):
    g = expand_island_gf(4, "narayana")
    x = Poly.var(("x", "y"), "x")
    y = Poly.var(("x", "y"), "y")
    assert g.coefficient(1) == x * y * y
    assert g.coefficient(2).coefficient(x=1, y=3) == 2


def test_island_gf_forms_agree(counts):
    series = [expand_island_gf(8, form, counts) for form in ("narayana", "closed", "motzkin2")]
    assert series[0] == series[1] == series[2]


def test_island_gf_matches_island_count(counts):
    g = expand_island_gf(7, "closed", counts)
    for ell in range(1, 8):
        poly = g.coefficient(ell)
        for h in range(1, ell + 1):
            for islands in range(h + 1, 2 * ell + 1):
                assert poly.coefficient(x=h, y=islands) == counts.island_count(h, islands, ell)


def test_island_gf_guard():
    with pytest.raises(ResourceGuardExceeded):
        expand_island_gf(25)
    with pytest.raises(ValueError):
        expand_island_gf(5, "nonsense")


# ---------------------------------------------------------------------------
# level-0 generating function


def test_level0_gf_examples(counts):
    g = expand_level0_gf(6, counts)
    assert g.coefficient(4).coefficient(t=4) == 1
    assert g.coefficient(4).coefficient(t=0) == 3
    assert g.coefficient(4).coefficient(t=1) == 2


def test_level0_gf_matches_totals(counts):
    g = expand_level0_gf(16, counts)
    for n in range(17):
        poly = g.coefficient(n)
        for r0 in range(n + 1):
            assert poly.coefficient(t=r0) == counts.level0_total(r0, n)
        assert poly.degree() <= n


def test_level0_gf_at_t_one_recovers_motzkin(counts):
    g = expand_level0_gf(16, counts)
    for n in range(17):
        assert g.coefficient(n).evaluate(t=1) == counts.motzkin_number(n)


def test_level0_gf_numeric_t(counts):
    # fixing t numerically keeps Fraction coefficients and lifts the guard
    g1 = expand_level0_gf(12, counts, t=1)
    assert g1 == expand_motzkin_gf(12, with_v=False)
    g2 = expand_level0_gf(10, counts, t=2)
    for n in range(11):
        expected = sum(2 ** r0 * counts.level0_total(r0, n) for r0 in range(n + 1))
        assert g2.coefficient(n) == expected
    big = expand_level0_gf(250, counts, t=1)
    assert big.coefficient(250) == counts.motzkin_number(250)
    with pytest.raises(ResourceGuardExceeded):
        expand_level0_gf(250, counts)


def test_motzkin_self_convolution(counts):
    # [w^n] w m(1,w)^2 = sum_{i+j=n-1} M_i M_j = sum r0 * level0_total(r0, n)
    order = 14
    m = expand_motzkin_gf(order, with_v=False)
    msq = m * m
    for n in range(1, order + 1):
        conv = msq.coefficient(n - 1)
        assert conv == counts.level0_weighted_sum(n)
        assert conv == sum(r0 * counts.level0_total(r0, n) for r0 in range(n + 1))


# ---------------------------------------------------------------------------
# compatible shape counts


def test_compatible_examples(counts):
    table = compatible_counts(4, 12, counts)
    for nu in range(5):
        assert table.total(nu) == 0
    assert table.total(5) == 1
    assert table.total(10) == 2


def test_compatible_parity_lambda_one(counts):
    table = compatible_counts(1, 101, counts)
    for k in range(51):
        assert table.total(2 * k) == table.total(2 * k + 1)


def test_compatible_guard():
    with pytest.raises(ResourceGuardExceeded):
        compatible_counts(4, 2001)
    with pytest.raises(ValueError):
        compatible_counts(0, 10)


@pytest.mark.parametrize("lam", [1, 2, 3, 4, 5])
def test_compatible_against_path_enumeration(lam, counts):
    # brute force over all Motzkin paths of size <= 12; the cap keeps every
    # contributing path inside the enumerated range
    nu_cap = min(60, 8 * lam + 19)
    table = compatible_counts(lam, nu_cap, counts)
    brute: dict[tuple[int, int], int] = {}
    for n in range(13):
        for steps in motzkin_paths(n):
            u, _, r0 = step_counts(steps)
            nu = (lam + 1) * (n + 1) - (lam - 1) * u
            if nu <= nu_cap:
                brute[(r0, nu)] = brute.get((r0, nu), 0) + 1
    for r0 in range(table.r0_max + 1):
        acc = 0
        for nu in range(nu_cap + 1):
            acc += brute.get((r0, nu), 0)
            assert table.count(r0, nu) == acc


# ---------------------------------------------------------------------------
# identity suite


@pytest.mark.parametrize("name", IDENTITY_NAMES)
def test_identities_pass(name, counts):
    bounds = {"narayana_motzkin": 8, "coker1": 9, "coker2": 9, "touchard": 10,
              "chu_vandermonde": 5, "parity_m0m1": 20, "pi_parity": 20,
              "island_gf_forms_agree": 6}
    report = verify_identity(name, bounds[name], counts)
    assert report.passed, report.counterexample
    assert report.counterexample is None
    assert report.to_json()["status"] == "pass"


def test_unknown_identity():
    with pytest.raises(UnknownIdentity):
        verify_identity("no_such_identity")


def test_identity_report_json_fields(counts):
    report = verify_identity("touchard", 5, counts)
    doc = report.to_json()
    assert set(doc) == {"name", "range", "status", "counterexample"}


def test_specialisations_of_the_island_identity(counts):
    # setting y = 0 after replacing x by x/y turns the island identity into
    # the first bracket-count identity; substituting x = y/(1+y) and clearing
    # (1+y) keeps an exact polynomial identity
    XY = ("x", "y")
    x = Poly.var(XY, "x")
    y = Poly.var(XY, "y")
    one = Poly.one(XY)
    oy = one + y
    for ell in range(1, 11):
        lhs0 = Poly.zero(XY)
        for h in range(1, ell + 1):
            lhs0 = lhs0 + counts.narayana(ell, h) * x ** h * oy ** (2 * ell - 1 - h)
        rhs0 = Poly.zero(XY)
        for p in range((ell - 1) // 2 + 1):
            rhs0 = rhs0 + counts.motzkin_poly_coeff(ell - 1, p) * (x * oy ** 3) ** p * (
                oy * (oy + x)) ** (ell - 2 * p - 1)
        assert lhs0.substitute(y=0) == (x * rhs0).substitute(y=0)

        lhs1 = Poly.zero(XY)
        for h in range(1, ell + 1):
            lhs1 = lhs1 + counts.narayana(ell, h) * y ** (2 * h + 1) * oy ** (2 * (ell - h))
        mixed = one + 2 * y + 2 * y * y
        rhs1 = Poly.zero(XY)
        for p in range((ell - 1) // 2 + 1):
            rhs1 = rhs1 + counts.motzkin_poly_coeff(ell - 1, p) * (y * y * oy * oy) ** p * (
                mixed) ** (ell - 2 * p - 1)
        assert lhs1 == y ** 3 * rhs1
