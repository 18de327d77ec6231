"""Acceptance suite: one test per criterion, exact values, stated time budgets.

Each test prints a single pass/fail line (visible with pytest -s or in the
captured output on failure). The extended census is marked `extended` and
deselected by default; scripts/run_extended_census.py runs the same thing
standalone with progress reporting.
"""

import multiprocessing
import os
import time
from fractions import Fraction

import pytest

from cubesum import diophantine as dio
from cubesum import fibration as fib
from cubesum import modular as mod
from cubesum import pointcount as pc
from cubesum import surface_checks as surf
from cubesum.arith import primes_up_to
from cubesum.elliptic import (
    add,
    base_change_t_u3,
    cm_omega,
    curve_main,
    curve_over_omega,
    curve_sextic_twist,
    double,
    negate,
    point_over_omega,
    section_sigma1,
    section_tau,
    sextic_section_to_xyz,
)
from cubesum.polynomials import Poly, RationalFunction
from cubesum.rings import EisensteinInt, represent_eisenstein


class Criterion:
    """Times a criterion body and prints its pass/fail line."""

    def __init__(self, name: str, budget_s: float):
        self.name = name
        self.budget_s = budget_s

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb):
        elapsed = time.perf_counter() - self.t0
        status = "PASS" if exc_type is None else "FAIL"
        print(f"[{status}] {self.name}: {elapsed:.2f}s (budget {self.budget_s:g}s)")
        if exc_type is None:
            assert elapsed < self.budget_s, f"{self.name} exceeded its {self.budget_s}s budget"
        return False


PUBLISHED_COEFFS = {
    1: 1, 3: 3, 7: -2, 9: 9, 13: -22, 19: -26, 21: -6,
    25: 25, 27: 27, 31: 46, 37: 26, 39: -66, 43: 22, 49: -45,
}


def test_criterion_01_eta_expansion():
    with Criterion("1 q-expansion", 1.0):
        series = mod.eta_quotient(mod.CUSP_FORM_ETA, 50)
        assert series.nonzero() == PUBLISHED_COEFFS


def test_criterion_02_triple_agreement():
    with Criterion("2 triple coefficient agreement", 10.0):
        n = 200
        eta = mod.eta_quotient(mod.CUSP_FORM_ETA, n)
        hecke = mod.hecke_expand(n)
        lattice = mod.lattice_sum(n)
        assert eta.agrees_with(hecke, up_to=n)
        assert eta.agrees_with(lattice.series, up_to=n)
        assert lattice.argument_order == "mn"


def test_criterion_03_pointcount_n1():
    with Criterion("3 point-count oracle n=1", 30.0):
        for p in primes_up_to(199):
            if p >= 5:
                assert pc.brute_count_surface(p, 1) == pc.formula_count_surface(p, 1), p


def test_criterion_04_pointcount_n2_convention():
    with Criterion("4 point-count oracle n=2", 60.0):
        winners, reports = pc.adjudicate_conventions(
            [(p, 2) for p in (5, 7, 11, 13)], budget=30000
        )
        # exactly one convention matches, consistently across all tested pairs
        assert winners == {pc.FROBENIUS_POWER}
        # the recorded internal discrepancy at p=7, n=2
        assert pc.a_pn(7, 2, pc.FROBENIUS_POWER) == -94
        assert pc.a_pn(7, 2, pc.MODULAR_COEFFICIENT) == -45
        by = {(r.p, r.convention): r for r in reports if r.n == 2}
        assert by[(7, pc.FROBENIUS_POWER)].match and not by[(7, pc.MODULAR_COEFFICIENT)].match


def test_criterion_05_fiber_table():
    with Criterion("5 fiber table", 1.0):
        fibers = fib.classify_fibers(curve_main())
        got = sorted(
            (
                "inf" if f.place.is_infinity else str(f.place.root()),
                f.type,
                f.euler,
                f.m_t,
                f.m_simple,
            )
            for f in fibers
        )
        assert got == sorted(
            [
                ("0", "IV*", 8, 7, 3),
                ("1", "I0*", 6, 5, 4),
                ("-1", "I0*", 6, 5, 4),
                ("inf", "IV", 4, 3, 3),
            ]
        )
        assert fib.euler_total(fibers) == 24


def test_criterion_06_lattice_data():
    with Criterion("6 lattice data", 1.0):
        E = curve_over_omega(curve_main())
        s1 = point_over_omega(section_sigma1())
        ws1 = cm_omega(s1, E)
        gram = fib.height_gram([s1, ws1], E)
        assert gram.entries == (
            (Fraction(2, 3), Fraction(-1, 3)),
            (Fraction(-1, 3), Fraction(2, 3)),
        )
        assert gram.to_convention("canonical").entries == (
            (Fraction(1, 3), Fraction(-1, 6)),
            (Fraction(-1, 6), Fraction(1, 3)),
        )
        fibers = fib.classify_fibers(E)
        assert fib.shioda_tate_rank(fibers, 2) == 20
        assert fib.det_ns(fibers, gram) == -48


def test_criterion_07_section_arithmetic():
    with Criterion("7 section arithmetic", 1.0):
        E = curve_main()
        t = Poly.x()
        d = double(section_sigma1(), E)
        assert d.x == RationalFunction(t**2 * (t**2 + 8) * Fraction(1, 4))
        assert d.y == RationalFunction(t**2 * (t**4 - 20 * t**2 - 8) * Fraction(1, 8))

        Eu = curve_sextic_twist()
        u = Poly.x()
        s1p = base_change_t_u3(section_sigma1())
        a = add(s1p, section_tau(), Eu)
        assert a.x == RationalFunction((u**2 + 2) * (u**4 + u**2 + 1))
        mag = RationalFunction((u**4 + u**2 + 1) ** 2 * 3)
        assert a.y == mag or a.y == -mag

        branch = a if a.y == mag else add(negate(s1p), section_tau(), Eu)
        x, y, z = sextic_section_to_xyz(branch)
        assert x == RationalFunction((u**2 - 1) ** 2 * Fraction(1, 3))
        assert y == RationalFunction(u**3)
        assert z == RationalFunction(u * (u**2 - 1) * (u**2 + 2) * Fraction(1, 3))


def test_criterion_08_pagliani():
    with Criterion("8 parametric family", 1.0):
        sol = dio.pagliani(2)
        assert (sol.m, sol.k, sol.l) == (-2, 8, 6)
        canon = dio.canonical_form(dio.mkl_to_xyz(sol))
        swapped = dio.apply_symmetry(dio.SymmetryElement(("t3",)), canon)
        assert dio.xyz_to_mkl(swapped) == dio.SolutionMKL(3, 3, 6)
        for u in range(-50, 51):
            if u % 3 == 0 or u in (-1, 0, 1):
                continue
            dio.pagliani(u)  # constructor checks the cube-sum identity exactly
        assert dio.pagliani_identity_residual().is_zero()


def test_criterion_09_census_fast_tier():
    jobs = min(4, multiprocessing.cpu_count())
    with Criterion(f"9 census fast tier (bound 10^4, {jobs} workers)", 300.0):
        bound = 10**4
        sols = dio.search(bound, include_trivial=False, jobs=jobs)
        assert sols, "search returned nothing"
        for s in sols:
            assert s.x * s.y * (s.x**2 + s.y**2 - 1) == s.z**3
            assert 0 < s.y <= s.x <= bound and s.z > 0
        found = {s.as_tuple() for s in sols}
        u = 2
        while u**3 <= bound:
            if u % 3:
                member = dio.canonical_form(dio.mkl_to_xyz(dio.pagliani(u))).as_tuple()
                if max(member[:2]) <= bound:
                    assert member in found, (u, member)
            u += 1


@pytest.mark.extended
def test_criterion_10_census_extended():
    jobs = int(os.environ.get("CUBESUM_JOBS", multiprocessing.cpu_count()))
    with Criterion("10 census extended (bound 10^6)", 24 * 3600.0):
        bound = 10**6
        sols = dio.search(bound, include_trivial=False, jobs=jobs)
        in_family = [s for s in sols if dio.in_pagliani_family(s) is not None]
        # the reproduction targets: 32 nontrivial solutions, 15 in the family;
        # a different total is a finding about the uncounted trivial-family
        # convention, so it is reported rather than asserted
        print(
            f"extended census: {len(sols)} nontrivial solutions, "
            f"{len(in_family)} in the parametric family "
            f"(reproduction targets: 32 and 15)"
        )
        for s in sols:
            assert s.x * s.y * (s.x**2 + s.y**2 - 1) == s.z**3


def test_criterion_11_symbolic_identities():
    with Criterion("11 symbolic identities", 10.0):
        assert surf.verify_quotient_psi() is True
        assert surf.verify_pagliani_graph().matches
        assert surf.verify_pagliani_graph(sign=-1).matches
        assert surf.verify_inose_and_eps2() is True
        rep = surf.verify_lines_and_singular_points()
        assert rep.singular_points_ok
        assert all(rep.lines_on_surface)
        assert rep.orbit_sizes == (2, 2, 2, 12)


def test_criterion_12_character_machinery():
    with Criterion("12 character machinery", 30.0):
        for p in primes_up_to(199):
            if p < 5 or p % 3 != 1:
                continue
            assert mod.normalize_pi(p, "plus").trace() == p + 1 - pc.brute_count_elliptic(1, p)
            assert mod.surface_ap_via_characters(p) == mod.ap_closed_form(p)
        for p in primes_up_to(499):
            if p < 5 or p % 3 != 1:
                continue
            m, n = represent_eisenstein(p)
            base = EisensteinInt(m, n)
            traces = {
                mod._alpha_from_beta(b, p).trace()
                for z in (base, base.conj())
                for b in z.associates()
            }
            assert traces == {mod.ap_closed_form(p)}, p
