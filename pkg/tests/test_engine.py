"""Form state machines, expansions, convergents and form recovery."""

import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from anthyphairesis import (
    DEFECT,
    EXCESS,
    MIXED,
    ContinuedFraction,
    DomainError,
    QuadSurd,
    QuadraticForm,
    canonicalize_cf,
    convergents,
    defect_step,
    euclid_cf,
    excess_step,
    is_perfect_square,
    minimal_form,
    period_to_form,
    remainder,
    run_anthyphairesis,
    state_space_size,
    surd_cf,
)


class TestQuadraticForm:
    def test_coefficient_validation(self):
        with pytest.raises(DomainError):
            QuadraticForm(EXCESS, 0, 1, 1)
        with pytest.raises(DomainError):
            QuadraticForm(EXCESS, 1, -1, 1)
        with pytest.raises(DomainError):
            QuadraticForm(DEFECT, 1, 0, 1)
        with pytest.raises(DomainError):
            QuadraticForm(DEFECT, 1, 2, 1)  # disc 0: no real surd root
        with pytest.raises(DomainError):
            QuadraticForm(EXCESS, 1, 1, 1, smaller_root=True)

    def test_disc(self):
        assert QuadraticForm(EXCESS, 1, 0, 2).disc == 8
        assert QuadraticForm(DEFECT, 1, 3, 1).disc == 5
        assert QuadraticForm(MIXED, 1, 2, 7).disc == 32

    def test_roots(self):
        assert QuadraticForm(EXCESS, 1, 0, 2).root() == QuadSurd(0, 1, 1, 2)
        assert QuadraticForm(DEFECT, 1, 3, 1).root() == QuadSurd(3, 1, 2, 5)
        assert QuadraticForm(DEFECT, 1, 6, 7, smaller_root=True).root() == QuadSurd(
            3, -1, 1, 2
        )
        assert QuadraticForm(MIXED, 1, 2, 7).root() == QuadSurd(-1, 2, 1, 2)

    def test_root_fraction(self):
        assert QuadraticForm(EXCESS, 1, 0, 4).root_fraction() == 2
        assert QuadraticForm(EXCESS, 2, 3, 2).root_fraction() == 2
        with pytest.raises(DomainError):
            QuadraticForm(EXCESS, 1, 0, 2).root_fraction()

    def test_expandability(self):
        assert QuadraticForm(EXCESS, 1, 0, 2).is_expandable
        assert not QuadraticForm(EXCESS, 3, 1, 1).is_expandable  # root below 1
        assert QuadraticForm(DEFECT, 5, 13, 7).is_expandable
        assert QuadraticForm(DEFECT, 2, 4, 1).is_expandable  # root exactly tangent case
        assert QuadraticForm(MIXED, 1, 2, 7).is_expandable
        assert not QuadraticForm(MIXED, 1, 2, 2).is_expandable  # root (-1+sqrt(3)) < 1
        assert QuadraticForm(DEFECT, 1, 6, 7, smaller_root=True).is_expandable
        assert not QuadraticForm(DEFECT, 2, 4, 1, smaller_root=True).is_expandable

    def test_str_tags(self):
        assert str(QuadraticForm(EXCESS, 1, 0, 2)) == "excess(1, 0, 2)"
        assert str(QuadraticForm(DEFECT, 1, 6, 7, smaller_root=True)) == "defect-(1, 6, 7)"


class TestEuclid:
    def test_goldens(self):
        assert euclid_cf(17, 5) == ContinuedFraction((3, 2, 2))
        assert euclid_cf(7, 7) == ContinuedFraction((1,))
        assert euclid_cf(2, 1) == ContinuedFraction((2,))
        assert euclid_cf(1, 2) == ContinuedFraction((0, 2))

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            euclid_cf(0, 3)
        with pytest.raises(DomainError):
            euclid_cf(3, 0)

    @settings(deadline=None)
    @given(st.integers(1, 10**6), st.integers(1, 10**6))
    def test_reconstructs_the_fraction(self, m, n):
        cf = euclid_cf(m, n)
        value = Fraction(cf.preperiod[-1])
        for k in reversed(cf.preperiod[:-1]):
            value = k + 1 / value
        assert value == Fraction(m, n)
        # Euclid's output is already canonical: no trailing quotient 1
        assert canonicalize_cf(cf) == cf


class TestContinuedFraction:
    def test_validation(self):
        with pytest.raises(DomainError):
            ContinuedFraction(())
        with pytest.raises(DomainError):
            ContinuedFraction((1,), ())
        with pytest.raises(DomainError):
            ContinuedFraction((1, 0))  # inner quotient 0
        with pytest.raises(DomainError):
            ContinuedFraction((-1,))
        with pytest.raises(DomainError):
            ContinuedFraction((1,), (2,), truncated=True)
        ContinuedFraction((0, 2))  # leading 0 is fine
        ContinuedFraction((), None, truncated=True)  # nothing seen yet

    def test_head(self):
        cf = ContinuedFraction((1,), (2,))
        assert cf.head(5) == (1, 2, 2, 2, 2)
        assert cf.head(0) == ()
        fin = ContinuedFraction((3, 2, 2))
        assert fin.head(2) == (3, 2)
        with pytest.raises(DomainError):
            fin.head(4)

    def test_truncated_equality_is_never_true(self):
        t = ContinuedFraction((1, 2), None, truncated=True)
        assert t != t
        assert t != ContinuedFraction((1, 2))
        assert ContinuedFraction((1, 2)) != t

    def test_str(self):
        assert str(ContinuedFraction((1,), (2,))) == "[1; (2)]"
        assert str(ContinuedFraction((), (1,))) == "[(1)]"
        assert str(ContinuedFraction((3, 2, 2))) == "[3, 2, 2]"
        assert str(ContinuedFraction((1, 2), None, truncated=True)) == "[1, 2, ...]"


class TestCanonicalize:
    def test_finite_trailing_one_folds(self):
        assert canonicalize_cf(ContinuedFraction((1, 2, 1))) == ContinuedFraction((1, 3))
        assert canonicalize_cf(ContinuedFraction((2, 1))) == ContinuedFraction((3,))
        assert canonicalize_cf(ContinuedFraction((1, 1))) == ContinuedFraction((2,))
        assert canonicalize_cf(ContinuedFraction((1,))) == ContinuedFraction((1,))
        # a cascade: [1, 1, 1] -> [1, 2]
        assert canonicalize_cf(ContinuedFraction((1, 1, 1))) == ContinuedFraction((1, 2))

    def test_periodic_primitive_word(self):
        got = canonicalize_cf(ContinuedFraction((), (1, 2, 1, 2)))
        assert got == ContinuedFraction((), (1, 2))

    def test_preperiod_absorbed_into_period(self):
        got = canonicalize_cf(ContinuedFraction((1, 2), (2, 2)))
        assert got == ContinuedFraction((1,), (2,))
        got = canonicalize_cf(ContinuedFraction((1, 2), (1, 2)))
        assert got == ContinuedFraction((), (1, 2))

    def test_truncated_passes_through(self):
        t = ContinuedFraction((1, 1), None, truncated=True)
        assert canonicalize_cf(t) is t

    quotient = st.integers(1, 4)

    @settings(deadline=None)
    @given(
        st.lists(quotient, max_size=5),
        st.one_of(st.none(), st.lists(quotient, min_size=1, max_size=4)),
    )
    def test_idempotent(self, pre, per):
        if per is None and not pre:
            return
        cf = ContinuedFraction(tuple(pre), None if per is None else tuple(per))
        once = canonicalize_cf(cf)
        assert canonicalize_cf(once) == once


class TestExcessStep:
    def test_sqrt2_chain(self):
        form = QuadraticForm(EXCESS, 1, 0, 2)
        k, nxt = excess_step(form)
        assert (k, nxt) == (1, QuadraticForm(EXCESS, 1, 2, 1))
        k, again = excess_step(nxt)
        assert (k, again) == (2, nxt)

    def test_golden_form_is_a_fixed_point(self):
        form = QuadraticForm(EXCESS, 1, 1, 1)
        assert excess_step(form) == (1, form)

    def test_rejects_wrong_kind_square_disc_and_small_root(self):
        with pytest.raises(DomainError):
            excess_step(QuadraticForm(DEFECT, 5, 13, 7))
        with pytest.raises(DomainError):
            excess_step(QuadraticForm(EXCESS, 1, 0, 4))
        with pytest.raises(DomainError):
            excess_step(QuadraticForm(EXCESS, 3, 1, 1))


class TestDefectStep:
    def test_defect_to_mixed(self):
        k, nxt = defect_step(QuadraticForm(DEFECT, 5, 13, 7))
        assert (k, nxt) == (1, QuadraticForm(MIXED, 1, 3, 5))

    def test_mixed_to_excess(self):
        k, nxt = defect_step(QuadraticForm(MIXED, 1, 3, 5))
        assert (k, nxt) == (1, QuadraticForm(EXCESS, 1, 5, 1))

    def test_defect_to_excess(self):
        k, nxt = defect_step(QuadraticForm(DEFECT, 1, 3, 1))
        assert (k, nxt) == (2, QuadraticForm(EXCESS, 1, 1, 1))

    def test_defect_to_excess_with_zero_middle(self):
        k, nxt = defect_step(QuadraticForm(DEFECT, 3, 6, 1))
        assert (k, nxt) == (1, QuadraticForm(EXCESS, 2, 0, 3))

    def test_defect_to_conjugate_defect(self):
        # both roots of 10x^2 - 49x + 59 lie strictly between 2 and 3
        k, nxt = defect_step(QuadraticForm(DEFECT, 10, 49, 59))
        assert (k, nxt) == (2, QuadraticForm(DEFECT, 1, 9, 10, smaller_root=True))

    def test_conjugate_defect_steps_to_larger_root(self):
        k, nxt = defect_step(QuadraticForm(DEFECT, 1, 6, 7, smaller_root=True))
        assert (k, nxt) == (1, QuadraticForm(DEFECT, 2, 4, 1))

    def test_rejects_excess_square_disc_and_small_root(self):
        with pytest.raises(DomainError):
            defect_step(QuadraticForm(EXCESS, 1, 0, 2))
        with pytest.raises(DomainError):
            defect_step(QuadraticForm(DEFECT, 1, 5, 6))  # disc 1
        with pytest.raises(DomainError):
            defect_step(QuadraticForm(DEFECT, 2, 4, 1, smaller_root=True))

    def test_quotient_is_floor_of_root(self):
        rng = random.Random(4)
        found = 0
        while found < 200:
            a = rng.randint(1, 20)
            b = rng.randint(3, 40)
            cmax = (b * b - 1) // (4 * a)
            if cmax < 1:
                continue
            c = rng.randint(1, cmax)
            try:
                form = QuadraticForm(DEFECT, a, b, c)
            except DomainError:
                continue
            if is_perfect_square(form.disc) or not form.is_expandable:
                continue
            k, nxt = defect_step(form)
            assert k == form.root().floor()
            assert nxt.disc == form.disc
            found += 1


class TestRunAnthyphairesis:
    def test_sqrt2_full_report(self):
        cf, trace = run_anthyphairesis(QuadraticForm(EXCESS, 1, 0, 2))
        assert cf == ContinuedFraction((1,), (2,))
        assert trace.quotients == (1, 2)
        assert trace.states == (
            QuadraticForm(EXCESS, 1, 0, 2),
            QuadraticForm(EXCESS, 1, 2, 1),
            QuadraticForm(EXCESS, 1, 2, 1),
        )
        assert trace.repeat_at == (1, 2)

    def test_defect_chain_goldens(self):
        cf, trace = run_anthyphairesis(QuadraticForm(DEFECT, 5, 13, 7))
        assert cf == ContinuedFraction((1, 1), (5,))
        assert trace.states[0:2] == (
            QuadraticForm(DEFECT, 5, 13, 7),
            QuadraticForm(MIXED, 1, 3, 5),
        )
        cf, _ = run_anthyphairesis(QuadraticForm(DEFECT, 7, 20, 14))
        assert cf == ContinuedFraction((1, 1, 1, 1), (2,))

    def test_conjugate_defect_runs(self):
        cf, _ = run_anthyphairesis(QuadraticForm(DEFECT, 1, 6, 7, smaller_root=True))
        assert cf == surd_cf(QuadSurd(3, -1, 1, 2))
        assert cf == ContinuedFraction((1, 1, 1), (2,))

    def test_square_disc_falls_back_to_euclid(self):
        cf, trace = run_anthyphairesis(QuadraticForm(EXCESS, 1, 0, 4))
        assert cf == ContinuedFraction((2,))
        assert trace.states == (QuadraticForm(EXCESS, 1, 0, 4),)
        assert trace.repeat_at is None
        cf, _ = run_anthyphairesis(QuadraticForm(EXCESS, 2, 3, 2))
        assert cf == ContinuedFraction((2,))

    def test_truncation(self):
        cf, trace = run_anthyphairesis(QuadraticForm(EXCESS, 1, 0, 139), max_steps=2)
        assert cf.truncated
        assert cf.preperiod == (11, 1)
        assert trace.repeat_at is None
        cf, _ = run_anthyphairesis(QuadraticForm(EXCESS, 1, 0, 2), max_steps=0)
        assert cf.truncated and cf.preperiod == ()

    def test_rejects_unexpandable(self):
        with pytest.raises(DomainError):
            run_anthyphairesis(QuadraticForm(EXCESS, 3, 1, 1))
        with pytest.raises(DomainError):
            run_anthyphairesis(QuadraticForm(EXCESS, 1, 0, 2), max_steps=-1)


class TestSurdCf:
    def test_oracle_agreement_on_sample(self):
        rng = random.Random(11)
        for _ in range(100):
            a = rng.randint(1, 20)
            b = rng.randint(0, 30)
            c = rng.randint(1, 20)
            form = QuadraticForm(EXCESS, a, b, c)
            if is_perfect_square(form.disc) or not form.is_expandable:
                continue
            cf, _ = run_anthyphairesis(form)
            assert cf == surd_cf(form.root())

    def test_below_one_gets_head_zero(self):
        cf = surd_cf(QuadSurd(-1, 1, 1, 2))  # sqrt(2) - 1
        assert cf == ContinuedFraction((0,), (2,))

    def test_rational_input(self):
        assert surd_cf(Fraction(17, 5)) == euclid_cf(17, 5)
        assert surd_cf(3) == ContinuedFraction((3,))

    def test_golden_ratio(self):
        assert surd_cf(QuadSurd(1, 1, 2, 5)) == ContinuedFraction((), (1,))

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            surd_cf(QuadSurd(0))
        with pytest.raises(DomainError):
            surd_cf(QuadSurd(1, -1, 1, 2))

    def test_truncation(self):
        cf = surd_cf(QuadSurd(0, 1, 1, 139), max_steps=2)
        assert cf.truncated and cf.preperiod == (11, 1)


class TestConvergents:
    def test_sqrt2_table(self):
        sd = convergents((1, 2, 2), 3)
        assert sd.p == (0, 1, 2, 5)
        assert sd.q == (1, 1, 3, 7)

    def test_count_zero(self):
        sd = convergents((), 0)
        assert sd.p == (0,) and sd.q == (1,)

    def test_needs_enough_quotients(self):
        with pytest.raises(DomainError):
            convergents((1, 2), 3)
        with pytest.raises(DomainError):
            convergents((1, 0, 2), 3)

    def test_determinant_alternates(self):
        sd = convergents((1, 2, 2, 2, 2, 2), 6)
        for n in range(1, 7):
            assert sd.q[n] * sd.p[n - 1] - sd.p[n] * sd.q[n - 1] == (-1) ** n

    def test_remainders_sqrt2(self):
        sd = convergents((1, 2, 2), 3)
        a, b = QuadSurd(0, 1, 1, 2), 1
        assert remainder(0, a, b, sd) == 1
        assert remainder(1, a, b, sd) == QuadSurd(-1, 1, 1, 2)
        assert remainder(2, a, b, sd) == QuadSurd(3, -2, 1, 2)
        assert remainder(3, a, b, sd) == QuadSurd(-7, 5, 1, 2)

    def test_remainder_preconditions(self):
        sd = convergents((1, 2, 2), 3)
        with pytest.raises(DomainError):
            remainder(4, QuadSurd(0, 1, 1, 2), 1, sd)
        with pytest.raises(DomainError):
            remainder(1, 1, QuadSurd(0, 1, 1, 2), sd)  # needs a > b
        # convergents of the wrong expansion produce a nonpositive remainder
        wrong = convergents((3, 3, 3), 3)
        with pytest.raises(DomainError):
            remainder(1, QuadSurd(0, 1, 1, 2), 1, wrong)


class TestPeriodToForm:
    def test_goldens(self):
        assert period_to_form([2]) == QuadraticForm(EXCESS, 1, 2, 1)
        assert period_to_form([1]) == QuadraticForm(EXCESS, 1, 1, 1)
        assert period_to_form([1, 2]) == QuadraticForm(EXCESS, 2, 2, 1)

    def test_round_trip_examples(self):
        for per in ((2,), (1,), (1, 2), (3, 1, 2), (4, 4, 4)):
            form = period_to_form(per)
            cf, _ = run_anthyphairesis(form)
            assert cf == canonicalize_cf(ContinuedFraction((), per))
            assert cf.preperiod == ()

    def test_rejects_bad_periods(self):
        with pytest.raises(DomainError):
            period_to_form([])
        with pytest.raises(DomainError):
            period_to_form([1, 0])


def _state_space_brute(disc: int) -> int:
    count = 0
    for b in range(1, math.isqrt(disc) + 1):
        rest = disc - b * b
        if rest < 4 or rest % 4:
            continue
        m = rest // 4
        count += sum(1 for a in range(1, m + 1) if m % a == 0)
    return count


class TestStateSpace:
    def test_goldens(self):
        assert state_space_size(8) == 1
        assert state_space_size(5) == 1
        assert state_space_size(12) == 2
        assert state_space_size(1) == 0
        assert state_space_size(4) == 0

    def test_matches_brute_enumeration(self):
        for disc in range(5, 1200):
            assert state_space_size(disc) == _state_space_brute(disc), disc

    def test_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            state_space_size(0)


class TestMinimalForm:
    def test_goldens(self):
        assert minimal_form(QuadSurd(0, 1, 1, 2)) == QuadraticForm(EXCESS, 1, 0, 2)
        assert minimal_form(QuadSurd(1, 1, 2, 5)) == QuadraticForm(EXCESS, 1, 1, 1)
        assert minimal_form(QuadSurd(3, 1, 2, 5)) == QuadraticForm(DEFECT, 1, 3, 1)
        assert minimal_form(QuadSurd(3, -1, 1, 2)) == QuadraticForm(
            DEFECT, 1, 6, 7, smaller_root=True
        )
        assert minimal_form(QuadSurd(-1, 2, 1, 2)) == QuadraticForm(MIXED, 1, 2, 7)

    def test_rational_returns_fraction(self):
        assert minimal_form(Fraction(7, 2)) == Fraction(7, 2)
        assert minimal_form(5) == Fraction(5)

    def test_rejects_at_most_one(self):
        with pytest.raises(DomainError):
            minimal_form(1)
        with pytest.raises(DomainError):
            minimal_form(QuadSurd(-1, 1, 1, 2))

    def test_round_trip_form_root_form(self):
        rng = random.Random(5)
        checked = 0
        while checked < 300:
            kind = rng.choice((EXCESS, DEFECT, DEFECT, MIXED))
            a = rng.randint(1, 12)
            b = rng.randint(0 if kind == EXCESS else 1, 25)
            c = rng.randint(1, 12)
            smaller = kind == DEFECT and rng.random() < 0.3
            if math.gcd(math.gcd(a, b), c) != 1:
                continue  # only primitive forms are recovered verbatim
            try:
                form = QuadraticForm(kind, a, b, c, smaller_root=smaller)
            except DomainError:
                continue
            if is_perfect_square(form.disc) or not form.is_expandable:
                continue
            assert minimal_form(form.root()) == form
            checked += 1

    def test_non_primitive_form_reduces(self):
        # excess(2, 0, 4) has root sqrt(2); recovery yields the primitive form
        root = QuadraticForm(EXCESS, 2, 0, 4).root()
        assert minimal_form(root) == QuadraticForm(EXCESS, 1, 0, 2)
