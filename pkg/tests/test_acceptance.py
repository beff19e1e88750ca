"""Acceptance gate: twelve end-to-end criteria, one printed line each.

Run with `pytest tests/test_acceptance.py -v -s` to see the PASS lines;
every criterion is a single test so the pass/fail report is one line
per criterion either way.
"""

import json
import random
import time
from fractions import Fraction

import pytest

from anthyphairesis import (
    DEFECT,
    EXCESS,
    ContinuedFraction,
    QuadSurd,
    QuadraticForm,
    apply_in_defect,
    apply_in_excess,
    canonicalize_cf,
    check_ii4,
    check_ii5,
    check_ii6,
    commensurable_pure,
    convergents,
    cross_product_eq,
    defect_step,
    euclid_cf,
    excess_step,
    is_perfect_square,
    isqrt,
    line,
    period_to_form,
    ratio_eq,
    remainder,
    run_anthyphairesis,
    state_space_size,
    surd_cf,
)
import anthyphairesis.cli as cli

SQRT2 = QuadSurd(0, 1, 1, 2)


def _ok(n: int, text: str) -> None:
    print("PASS: criterion %d - %s" % (n, text))


@pytest.fixture(scope="module")
def excess_corpus():
    """1000 expandable excess forms, non-square disc up to 10**6."""
    rng = random.Random(20260815)
    corpus = []
    while len(corpus) < 1000:
        a = rng.randint(1, 60)
        c = rng.randint(1, 60)
        b = rng.randint(800, 990) if len(corpus) < 20 else rng.randint(0, 300)
        form = QuadraticForm(EXCESS, a, b, c)
        if form.disc > 10**6 or is_perfect_square(form.disc):
            continue
        if not form.is_expandable:
            continue
        corpus.append(form)
    return corpus


def test_criterion_01_sqrt2_report_and_trace(capsys):
    form = QuadraticForm(EXCESS, 1, 0, 2)
    cf, trace = run_anthyphairesis(form)
    assert cf == ContinuedFraction((1,), (2,))
    assert trace.states == (
        QuadraticForm(EXCESS, 1, 0, 2),
        QuadraticForm(EXCESS, 1, 2, 1),
        QuadraticForm(EXCESS, 1, 2, 1),
    )

    code = cli.main(["anth", "sqrt", "2", "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["result"]["preperiod"] == ["1"]
    assert doc["result"]["period"] == ["2"]
    assert [s["B"] for s in doc["result"]["states"]] == ["0", "2", "2"]

    best = min(
        (lambda t0: (run_anthyphairesis(form), time.perf_counter() - t0)[1])(
            time.perf_counter()
        )
        for _ in range(5)
    )
    assert best < 0.010, "expansion took %.4f s" % best
    _ok(1, "sqrt(2) gives [1; (2)] with the golden trace in %.2f ms" % (best * 1e3))


def test_criterion_02_root_survey_2_to_17():
    goldens = {
        2: ContinuedFraction((1,), (2,)),
        3: ContinuedFraction((1,), (1, 2)),
        5: ContinuedFraction((2,), (4,)),
        17: ContinuedFraction((4,), (8,)),
    }
    for n in range(2, 18):
        if is_perfect_square(n):
            cf, _ = run_anthyphairesis(QuadraticForm(EXCESS, 1, 0, n))
            assert cf == euclid_cf(isqrt(n), 1)
            continue
        cf, _ = run_anthyphairesis(QuadraticForm(EXCESS, 1, 0, n))
        oracle = surd_cf(QuadSurd(0, 1, 1, n))
        assert cf.is_periodic and cf == oracle
        assert cf.head(50) == oracle.head(50)
        if n in goldens:
            assert cf == goldens[n]
    _ok(2, "all non-square roots in 2..17 match the generic oracle to 50 quotients")


def test_criterion_03_disc_invariance(excess_corpus):
    for form in excess_corpus:
        cur = form
        for _ in range(100):
            k, cur = excess_step(cur)
            assert k >= 1
            assert cur.disc == form.disc
            assert cur.A >= 1 and cur.B >= 1 and cur.C >= 1
    _ok(3, "1000 forms x 100 steps: discriminant constant, coefficients positive")


def test_criterion_04_pigeonhole_recurrence(excess_corpus):
    worst = 0
    for form in excess_corpus:
        cf, trace = run_anthyphairesis(form, max_steps=200_000)
        assert not cf.truncated and trace.repeat_at is not None
        i, j = trace.repeat_at
        bound = state_space_size(form.disc) + 1
        assert j <= bound, "%s recurred after %d steps, bound %d" % (form, j, bound)
        worst = max(worst, j)
    _ok(4, "state recurrence within state_space_size(disc) + 1 steps (worst %d)" % worst)


def test_criterion_05_ratio_eq_matches_cross_products():
    rng = random.Random(1001)
    fields = (2, 3, 5, 6, 7, 10, 13)

    for _ in range(500):
        d = rng.choice(fields)
        x = QuadSurd(rng.randint(0, 3), rng.randint(1, 2), rng.randint(1, 3), d)
        b1 = QuadSurd(rng.randint(1, 5))
        b2 = QuadSurd(rng.randint(1, 5))
        c = b2 * x
        if rng.random() < 0.5:
            c = c + Fraction(1, rng.randint(1, 3))
        quad = (line(b1 * x), line(b1), line(c), line(b2))
        assert ratio_eq(*quad) == cross_product_eq(*quad)

    for _ in range(100):
        d = rng.choice(fields)
        a = QuadSurd(rng.randint(1, 2), rng.randint(0, 2), rng.randint(1, 2), d)
        b = QuadSurd(rng.randint(1, 2), rng.randint(0, 2), rng.randint(1, 2), d)
        c = QuadSurd(rng.randint(1, 2), rng.randint(0, 2), rng.randint(1, 2), d)
        last = b * c / a
        quad = (line(a), line(b), line(c), line(last))
        assert cross_product_eq(*quad) and ratio_eq(*quad)
    _ok(5, "ratio_eq and cross_product_eq agree on 500 random + 100 equal quadruples")


def test_criterion_06_period_to_form_round_trip():
    words = []
    for length in (1, 2, 3):
        stack = [()]
        for _ in range(length):
            stack = [w + (k,) for w in stack for k in (1, 2, 3, 4)]
        words.extend(stack)
    assert len(words) == 84  # 4 + 16 + 64 words of length <= 3 over 1..4

    for per in words:
        form = period_to_form(per)
        cf, _ = run_anthyphairesis(form)
        assert cf.preperiod == ()
        assert cf == canonicalize_cf(ContinuedFraction((), per))
    _ok(6, "all 84 period words round-trip through period_to_form purely periodically")


def test_criterion_07_remainder_identities_for_sqrt2():
    cf = surd_cf(SQRT2)
    qs = cf.head(20)
    sd = convergents(qs, 20)

    # formula remainders against the direct subtraction recurrence
    direct = [QuadSurd(1), SQRT2 - 1]
    for n in range(2, 10):
        direct.append(direct[n - 2] - qs[n - 1] * direct[n - 1])
    for n in range(10):
        e = remainder(n, SQRT2, 1, sd)
        assert e == direct[n]
        assert e > 0
        if n:
            assert e < direct[n - 1]

    # closed form: the n-th remainder is (sqrt(2) - 1)^n
    power = QuadSurd(1)
    for n in range(10):
        assert direct[n] == power
        power = power * (SQRT2 - 1)

    for n in range(1, 21):
        assert sd.q[n] * sd.p[n - 1] - sd.p[n] * sd.q[n - 1] == (-1) ** n
        assert sd.q[n] ** 2 - 2 * sd.p[n] ** 2 == (-1) ** n
    _ok(7, "remainder formula, recurrence, determinant and Pell identities to n = 20")


def test_criterion_08_defect_forms_reach_excess():
    k, nxt = defect_step(QuadraticForm(DEFECT, 1, 3, 1))
    assert (k, nxt) == (2, QuadraticForm(EXCESS, 1, 1, 1))
    cf, _ = run_anthyphairesis(QuadraticForm(DEFECT, 1, 3, 1))
    assert cf == ContinuedFraction((2,), (1,))

    rng = random.Random(88)
    checked = 0
    while checked < 200:
        a = rng.randint(1, 25)
        b = rng.randint(3, 60)
        cmax = (b * b - 1) // (4 * a)
        if cmax < 1:
            continue
        c = rng.randint(1, cmax)
        try:
            form = QuadraticForm(DEFECT, a, b, c)
        except Exception:
            continue
        if is_perfect_square(form.disc) or not form.is_expandable:
            continue

        cur, steps = form, 0
        while cur.kind != EXCESS:
            k, cur = defect_step(cur)
            steps += 1
            assert k >= 1 and cur.disc == form.disc
            assert steps <= form.B, "defect chain failed to shrink"

        cf, trace = run_anthyphairesis(form)
        assert not cf.truncated
        assert all(q >= 1 for q in trace.quotients)
        assert cf == surd_cf(form.root())
        checked += 1
    _ok(8, "200 random defect forms reach excess within B steps, disc preserved")


def test_criterion_09_area_identities_and_applications():
    assert apply_in_excess(3, 2) == 1
    assert apply_in_defect(5, 2) == 1

    rng = random.Random(99)
    for _ in range(1000):
        a = Fraction(rng.randint(1, 999), rng.randint(1, 99))
        b = Fraction(rng.randint(1, 999), rng.randint(1, 99))
        assert check_ii4(a, b).holds
        assert check_ii5(a, a / rng.randint(3, 9)).holds
        assert check_ii6(a, b).holds

        m = a / 2 * Fraction(rng.randint(1, 8), 8)
        x = apply_in_defect(a, m)
        assert x * (a - x) == m * m and 0 < x <= a / 2
        y = apply_in_excess(a, m)
        assert y * (a + y) == m * m and y > 0
    _ok(9, "square, gnomon and application identities hold on 1000 rational inputs")


def _brute_commensurable(a_coeff: int, c_coeff: int, limit: int = 1000) -> bool:
    for m in range(1, limit + 1):
        t = a_coeff * m * m
        if t % c_coeff:
            continue
        s = t // c_coeff
        r = isqrt(s)
        if r * r == s and 1 <= r <= limit:
            return True
    return False


def test_criterion_10_commensurability_oracles():
    for a in range(1, 301):
        for c in range(1, 301):
            assert commensurable_pure(a, c) == is_perfect_square(a * c)
    for a in range(1, 31):
        for c in range(1, 31):
            assert commensurable_pure(a, c) == _brute_commensurable(a, c)
    _ok(10, "commensurability verdicts match the product-square and search oracles")


def test_criterion_11_ratio_suite_clean(capsys):
    code = cli.main(["verify", "--suite", "ratio", "--trials", "200", "--seed", "0"])
    out = capsys.readouterr().out
    assert code == 0
    assert "0 failures" in out.splitlines()[-1]
    _ok(11, "ratio suite: 200 seeded trials per property, zero failures")


def test_criterion_12_cli_determinism(capsys):
    t0 = time.perf_counter()
    code1 = cli.main(["verify", "--json"])
    out1 = capsys.readouterr().out
    code2 = cli.main(["verify", "--json"])
    out2 = capsys.readouterr().out
    elapsed = time.perf_counter() - t0

    assert code1 == 0 and code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["result"]["verdict"] == "ok"
    assert elapsed < 60, "verification took %.1f s" % elapsed
    _ok(12, "repeated verify runs are byte-identical (%.2f s for both)" % elapsed)
