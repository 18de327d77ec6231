import random

import pytest

from cubesum.arith import primes_up_to
from cubesum.modular import ap_closed_form, normalize_pi
from cubesum.pointcount import (
    CONVENTIONS,
    CountReport,
    ExtField,
    FROBENIUS_POWER,
    MODULAR_COEFFICIENT,
    PrimeField,
    a_pn,
    adjudicate_conventions,
    brute_count_elliptic,
    brute_count_surface,
    formula_count_surface,
    is_square,
    make_field,
    trace_alg,
)


def test_is_square_examples():
    F7 = PrimeField(7)
    assert is_square(F7, 2) == 1
    assert is_square(F7, 3) == -1
    assert is_square(F7, 0) == 0
    F49 = ExtField(7, 2)
    squares = {F49.mul(y, y) for y in F49.elements()}
    for x in F49.elements():
        expected = 0 if x == F49.zero else (1 if x in squares else -1)
        assert is_square(F49, x) == expected


def test_ext_field_structure():
    F = ExtField(7, 2)
    els = list(F.elements())
    assert len(els) == 49
    rng = random.Random(0)
    for _ in range(25):
        a, b = rng.choice(els), rng.choice(els)
        assert F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b))
        assert F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b))
    for a in els:
        assert F.pow(a, F.q) == a


def test_ext_field_modulus_is_deterministic_and_irreducible():
    F = ExtField(7, 2)
    assert F.modulus == (1, 0)  # T^2 + 1, the lexicographically first
    F3 = ExtField(5, 3)
    # no roots in F_5
    c0, c1, c2 = F3.modulus
    assert all((r**3 + c2 * r * r + c1 * r + c0) % 5 for r in range(5))


def test_field_constructor_validation():
    with pytest.raises(ValueError):
        PrimeField(6)
    with pytest.raises(ValueError):
        ExtField(4, 2)
    assert isinstance(make_field(7, 1), PrimeField)
    assert isinstance(make_field(7, 2), ExtField)


def test_brute_count_surface_examples():
    assert brute_count_surface(7, 1) == 61
    assert brute_count_surface(5, 1) == 25


def test_brute_count_surface_budget():
    with pytest.raises(ValueError):
        brute_count_surface(101, 2)
    with pytest.raises(ValueError):
        brute_count_surface(4, 1)


def test_brute_count_elliptic_examples():
    assert brute_count_elliptic(1, 7) == 12
    assert brute_count_elliptic(1, 5) == 6  # supersingular: 5 = 2 mod 3
    assert brute_count_elliptic(-1, 7) == 7 + 1 - normalize_pi(7, "minus").trace()


def test_plus_curve_counts_match_pi_traces():
    for p in primes_up_to(199):
        if p >= 5 and p % 3 == 1:
            assert brute_count_elliptic(1, p) == p + 1 - normalize_pi(p, "plus").trace(), p


def test_a_pn_examples():
    assert a_pn(7, 1, FROBENIUS_POWER) == -2
    assert a_pn(7, 1, MODULAR_COEFFICIENT) == -2
    assert a_pn(7, 2, FROBENIUS_POWER) == -94
    assert a_pn(7, 2, MODULAR_COEFFICIENT) == -45
    # inert: the eigenvalue pair {p, -p}
    assert a_pn(5, 1, FROBENIUS_POWER) == 0
    assert a_pn(5, 2, FROBENIUS_POWER) == 50
    assert a_pn(5, 3, FROBENIUS_POWER) == 0
    with pytest.raises(ValueError):
        a_pn(7, 1, "bogus")


def test_formula_count_examples():
    assert formula_count_surface(7, 1) == 61
    assert formula_count_surface(5, 1) == 25
    assert formula_count_surface(11, 1) == 121


def test_formula_matches_brute_for_all_small_primes():
    for p in primes_up_to(199):
        if p < 5:
            continue
        assert brute_count_surface(p, 1) == formula_count_surface(p, 1), p


def test_conventions_agree_at_n1():
    for p in (5, 7, 11, 13, 17, 19):
        assert formula_count_surface(p, 1, FROBENIUS_POWER) == formula_count_surface(
            p, 1, MODULAR_COEFFICIENT
        )


def test_adjudication_at_n2():
    winners, reports = adjudicate_conventions([(p, 2) for p in (5, 7, 11, 13)], budget=30000)
    assert winners == {FROBENIUS_POWER}
    # split p: exactly one convention matches; inert p: the corrected
    # frobenius value matches where the literal coefficient does not
    for r in reports:
        if r.convention == FROBENIUS_POWER:
            assert r.match, r
        else:
            assert not r.match, r


def test_count_report_build():
    r = CountReport.build(7, 1)
    assert r.match and r.brute == r.formula == 61
    assert r.a_term_used == -2
    assert r.convention in CONVENTIONS


def test_trace_alg_examples():
    assert trace_alg(7, 1) == 126
    assert trace_alg(5, 1) == 70
    for p in (5, 7, 13, 19):
        assert trace_alg(p, 2) == 20 * p * p
