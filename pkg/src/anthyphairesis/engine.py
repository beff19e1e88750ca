"""Reciprocal-subtraction engine over integer quadratic forms.

The expansion of a quadratic ratio is driven entirely by integer form
arithmetic: each step replaces a form by its successor and emits one
quotient.  No root is ever evaluated numerically, which is what makes
recurrence detection exact and the periodicity argument a pigeonhole
over a finite set of integer triples sharing one discriminant.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence, Union

from .errors import DomainError, InternalInvariantError
from .exactarith import QuadSurd, as_surd, is_perfect_square, isqrt

EXCESS = "excess"
DEFECT = "defect"
MIXED = "mixed"

_KINDS = (EXCESS, DEFECT, MIXED)


@dataclass(frozen=True)
class QuadraticForm:
    """An integer relation pinning down a quadratic ratio a : b.

    kind "excess":  A*a^2 = B*a*b + C*b^2;  root (B + sqrt(disc)) / (2A),
                    disc = B^2 + 4*A*C.
    kind "defect":  A*a^2 + C*b^2 = B*a*b;  disc = B^2 - 4*A*C > 0; the
                    designated root is (B + sqrt(disc)) / (2A), or the
                    conjugate (B - sqrt(disc)) / (2A) when smaller_root
                    is set.
    kind "mixed":   A*a^2 + B*a*b = C*b^2;  root (-B + sqrt(disc)) / (2A),
                    disc = B^2 + 4*A*C.

    Mixed and smaller-root defect forms arise only as transient states
    while a defect relation is being driven toward an excess one; the
    public constructors and the CLI only ever hand out excess and
    larger-root defect forms.
    """

    kind: str
    A: int
    B: int
    C: int
    smaller_root: bool = False

    def __post_init__(self) -> None:
        if self.kind not in _KINDS:
            raise DomainError("QuadraticForm: unknown kind %r" % (self.kind,))
        for name, x in (("A", self.A), ("B", self.B), ("C", self.C)):
            if not isinstance(x, int):
                raise DomainError("QuadraticForm: %s must be an int" % name)
        if self.A < 1 or self.C < 1:
            raise DomainError("QuadraticForm: A and C must be >= 1")
        if self.kind == EXCESS:
            if self.B < 0:
                raise DomainError("QuadraticForm: excess form needs B >= 0")
        elif self.B < 1:
            raise DomainError("QuadraticForm: %s form needs B >= 1" % self.kind)
        if self.kind == DEFECT and self.B * self.B - 4 * self.A * self.C < 1:
            raise DomainError(
                "QuadraticForm: defect form needs B^2 - 4*A*C > 0 (real roots)"
            )
        if self.smaller_root and self.kind != DEFECT:
            raise DomainError("QuadraticForm: smaller_root applies to defect only")

    @property
    def disc(self) -> int:
        if self.kind == DEFECT:
            return self.B * self.B - 4 * self.A * self.C
        return self.B * self.B + 4 * self.A * self.C

    def root(self) -> QuadSurd:
        """The designated root, as an exact value."""
        if self.kind == MIXED:
            return QuadSurd(-self.B, 1, 2 * self.A, self.disc)
        if self.kind == DEFECT and self.smaller_root:
            return QuadSurd(self.B, -1, 2 * self.A, self.disc)
        return QuadSurd(self.B, 1, 2 * self.A, self.disc)

    def root_fraction(self) -> Fraction:
        """The designated root when the discriminant is a perfect square."""
        j = isqrt(self.disc)
        if j * j != self.disc:
            raise DomainError("root_fraction: discriminant %d is not a square" % self.disc)
        if self.kind == MIXED:
            return Fraction(j - self.B, 2 * self.A)
        if self.kind == DEFECT and self.smaller_root:
            return Fraction(self.B - j, 2 * self.A)
        return Fraction(self.B + j, 2 * self.A)

    @property
    def is_expandable(self) -> bool:
        """True when the designated root exceeds 1 (integer tests only)."""
        if self.kind == EXCESS:
            return self.A < self.B + self.C
        if self.kind == MIXED:
            t = 2 * self.A + self.B
            return self.disc > t * t
        if self.smaller_root:
            t = self.B - 2 * self.A
            return t > 0 and t * t > self.disc
        t = 2 * self.A - self.B
        return t <= 0 or self.disc > t * t

    def __str__(self) -> str:
        tag = self.kind
        if self.kind == DEFECT and self.smaller_root:
            tag = "defect-"
        return "%s(%d, %d, %d)" % (tag, self.A, self.B, self.C)


@dataclass(frozen=True, eq=False)
class ContinuedFraction:
    """Quotient sequence of an expansion, possibly eventually periodic.

    A truncated expansion records only what was seen before the step
    budget ran out.  It compares unequal to everything, including
    itself: equality of truncated data is unknown, and pretending
    otherwise is exactly the mistake this type exists to prevent.
    """

    preperiod: tuple[int, ...]
    period: Optional[tuple[int, ...]] = None
    truncated: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "preperiod", tuple(self.preperiod))
        if self.period is not None:
            object.__setattr__(self, "period", tuple(self.period))
        pre, per = self.preperiod, self.period
        for i, k in enumerate(pre):
            if not isinstance(k, int) or k < 0 or (i > 0 and k < 1):
                raise DomainError(
                    "ContinuedFraction: quotients must be positive (head may be 0)"
                )
        if per is not None:
            if self.truncated:
                raise DomainError("ContinuedFraction: a truncated expansion has no period")
            if not per:
                raise DomainError("ContinuedFraction: period must be nonempty when present")
            for k in per:
                if not isinstance(k, int) or k < 1:
                    raise DomainError("ContinuedFraction: period entries must be >= 1")
        elif not pre and not self.truncated:
            raise DomainError("ContinuedFraction: empty expansion")

    @property
    def is_finite(self) -> bool:
        return self.period is None and not self.truncated

    @property
    def is_periodic(self) -> bool:
        return self.period is not None

    def head(self, n: int) -> tuple[int, ...]:
        """First n quotients, unrolling the period as far as needed."""
        if n < 0:
            raise DomainError("head: n must be >= 0")
        if n <= len(self.preperiod):
            return self.preperiod[:n]
        if self.period is None:
            raise DomainError(
                "head: expansion has only %d quotients, %d requested"
                % (len(self.preperiod), n)
            )
        out = list(self.preperiod)
        i = 0
        while len(out) < n:
            out.append(self.period[i % len(self.period)])
            i += 1
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ContinuedFraction):
            return NotImplemented
        if self.truncated or other.truncated:
            return False
        return self.preperiod == other.preperiod and self.period == other.period

    def __hash__(self) -> int:
        return hash((self.preperiod, self.period, self.truncated))

    def __str__(self) -> str:
        pre = ", ".join(str(k) for k in self.preperiod)
        if self.truncated:
            return "[%s, ...]" % pre if pre else "[...]"
        if self.period is None:
            return "[%s]" % pre
        per = ", ".join(str(k) for k in self.period)
        if pre:
            return "[%s; (%s)]" % (pre, per)
        return "[(%s)]" % per


@dataclass(frozen=True)
class SideDiameter:
    """Parallel convergent rows p and q built from quotients.

    Seeds are p0 = 0, p1 = 1 and q0 = 1, q1 = k0; both rows obey
    x_n = k_{n-1} * x_{n-1} + x_{n-2}.  For the classic ratio of
    diagonal to side these are the side and diameter numbers.
    """

    p: tuple[int, ...]
    q: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.p) != len(self.q) or not self.p:
            raise DomainError("SideDiameter: p and q must be nonempty, equal length")
        if self.p[0] != 0 or self.q[0] != 1:
            raise DomainError("SideDiameter: seeds must be p0 = 0, q0 = 1")


@dataclass(frozen=True)
class ExpansionTrace:
    """Step-by-step record of one expansion run.

    states[t] is the form whose quotient is quotients[t]; the final
    state is the first one seen twice (or the frontier if truncated).
    repeat_at = (i, j) says states[i] == states[j] triggered detection.
    """

    quotients: tuple[int, ...]
    states: tuple[QuadraticForm, ...]
    repeat_at: Optional[tuple[int, int]] = None


def euclid_cf(m: int, n: int) -> ContinuedFraction:
    """Finite expansion of the ratio m : n by plain Euclidean division."""
    if m < 1 or n < 1:
        raise DomainError("euclid_cf: both arguments must be >= 1")
    qs = []
    while n:
        k, r = divmod(m, n)
        qs.append(k)
        m, n = n, r
    return ContinuedFraction(tuple(qs))


def canonicalize_cf(cf: ContinuedFraction) -> ContinuedFraction:
    """Canonical representative of an expansion, for decidable equality.

    Finite: a trailing quotient 1 is folded into its predecessor, since
    [..., k, 1] and [..., k + 1] name the same ratio.  Periodic: the
    period is cut to its primitive word, then the preperiod is shortened
    by rotating the period while its last entry matches the preperiod's
    last entry.  Truncated input is returned untouched.  Idempotent.
    """
    if cf.truncated:
        return cf
    if cf.period is None:
        pre = list(cf.preperiod)
        while len(pre) > 1 and pre[-1] == 1:
            pre.pop()
            pre[-1] += 1
        return ContinuedFraction(tuple(pre))
    per = list(cf.period)
    n = len(per)
    for width in range(1, n):
        if n % width == 0 and per[: width] * (n // width) == per:
            per = per[:width]
            break
    pre = list(cf.preperiod)
    while pre and pre[-1] == per[-1]:
        pre.pop()
        per = [per[-1]] + per[:-1]
    return ContinuedFraction(tuple(pre), tuple(per))


def excess_step(form: QuadraticForm) -> tuple[int, QuadraticForm]:
    """One reciprocal-subtraction step on an excess form.

    Emits k = floor of the root and the successor form, which is again
    excess with the same discriminant.  The root must exceed 1 and the
    discriminant must not be a square (a square discriminant means the
    ratio is of integer to integer; use the Euclidean fallback).
    """
    if form.kind != EXCESS:
        raise DomainError("excess_step: requires an excess form, got %s" % form.kind)
    disc = form.disc
    if is_perfect_square(disc):
        raise DomainError(
            "excess_step: square discriminant %d has a rational root; "
            "use the Euclidean fallback" % disc
        )
    A, B, C = form.A, form.B, form.C
    if A >= B + C:
        raise DomainError("excess_step: designated root must exceed 1 (needs A < B + C)")
    k = (B + isqrt(disc)) // (2 * A)
    a1 = B * k + C - A * k * k
    b1 = 2 * A * k - B
    if k < 1 or a1 < 1 or b1 < 1:
        raise InternalInvariantError(
            "excess_step: successor left the positive cone (k=%d, A'=%d, B'=%d)"
            % (k, a1, b1)
        )
    return k, QuadraticForm(EXCESS, a1, b1, A)


def defect_step(form: QuadraticForm) -> tuple[int, QuadraticForm]:
    """One step on a defect or mixed form.

    The quotient is the floor of the designated root.  The successor is
    classified by the signs of t1 = B*k - A*k^2 - C and t2 = 2*A*k - B
    (larger root): both positive gives an excess form, t2 negative gives
    a mixed form, t1 negative flips to the conjugate (smaller) root, and
    the remaining sign patterns cannot occur.  Mixed forms and
    smaller-root defect forms always step as the table below; the B
    coefficient strictly decreases along a defect chain, so an excess
    form is reached after finitely many steps.
    """
    if form.kind == EXCESS:
        raise DomainError("defect_step: requires a defect or mixed form")
    disc = form.disc
    if is_perfect_square(disc):
        raise DomainError(
            "defect_step: square discriminant %d has a rational root; "
            "use the Euclidean fallback" % disc
        )
    if not form.is_expandable:
        raise DomainError("defect_step: designated root must exceed 1")
    A, B, C = form.A, form.B, form.C
    j = isqrt(disc)

    if form.kind == MIXED:
        # root (-B + sqrt(disc)) / (2A); successor is always excess
        k = (j - B) // (2 * A)
        a1 = C - A * k * k - B * k
        b1 = B + 2 * A * k
        if k < 1 or a1 < 1:
            raise InternalInvariantError("defect_step: bad mixed successor (k=%d)" % k)
        return k, QuadraticForm(EXCESS, a1, b1, A)

    if form.smaller_root:
        # root (B - sqrt(disc)) / (2A); successor tracks the larger root
        k = (B - j - 1) // (2 * A)
        a1 = A * k * k + C - B * k
        b1 = B - 2 * A * k
        if k < 1 or a1 < 1 or b1 < 1:
            raise InternalInvariantError(
                "defect_step: bad conjugate successor (k=%d, A'=%d, B'=%d)" % (k, a1, b1)
            )
        return k, QuadraticForm(DEFECT, a1, b1, A)

    # larger root (B + sqrt(disc)) / (2A)
    k = (B + j) // (2 * A)
    t1 = B * k - A * k * k - C
    t2 = 2 * A * k - B
    if k < 1:
        raise InternalInvariantError("defect_step: quotient %d below 1" % k)
    if t1 > 0 and t2 >= 0:
        return k, QuadraticForm(EXCESS, t1, t2, A)
    if t1 > 0:
        return k, QuadraticForm(MIXED, t1, -t2, A)
    if t1 < 0 and t2 < 0:
        return k, QuadraticForm(DEFECT, -t1, -t2, A, smaller_root=True)
    # t1 == 0 forces a square discriminant; t1 < 0 with t2 >= 0 has no root
    raise InternalInvariantError(
        "defect_step: impossible sign pattern t1=%d, t2=%d at %s" % (t1, t2, form)
    )


def run_anthyphairesis(
    form: QuadraticForm, max_steps: int = 10_000
) -> tuple[ContinuedFraction, ExpansionTrace]:
    """Full expansion of a form's designated root, with its state trace.

    A square discriminant routes to the Euclidean algorithm and yields a
    finite expansion.  Otherwise steps are taken until an excess state
    recurs (the expansion is then eventually periodic and the canonical
    preperiod/period pair is returned) or the step budget is exhausted,
    in which case the result is flagged truncated.
    """
    if max_steps < 0:
        raise DomainError("run_anthyphairesis: max_steps must be >= 0")
    if not form.is_expandable:
        raise DomainError(
            "run_anthyphairesis: designated root of %s must exceed 1" % (form,)
        )
    if is_perfect_square(form.disc):
        fr = form.root_fraction()
        cf = euclid_cf(fr.numerator, fr.denominator)
        return cf, ExpansionTrace(cf.preperiod, (form,), None)

    quotients: list[int] = []
    states: list[QuadraticForm] = [form]
    seen: dict[QuadraticForm, int] = {}
    cur = form
    while True:
        if cur.kind == EXCESS:
            pos = len(quotients)
            if cur in seen:
                i = seen[cur]
                cf = canonicalize_cf(
                    ContinuedFraction(tuple(quotients[:i]), tuple(quotients[i:pos]))
                )
                return cf, ExpansionTrace(tuple(quotients), tuple(states), (i, pos))
            seen[cur] = pos
        if len(quotients) >= max_steps:
            cf = ContinuedFraction(tuple(quotients), None, truncated=True)
            return cf, ExpansionTrace(tuple(quotients), tuple(states), None)
        if cur.kind == EXCESS:
            k, cur = excess_step(cur)
        else:
            k, cur = defect_step(cur)
        quotients.append(k)
        states.append(cur)


def surd_cf(x: Union[QuadSurd, Fraction, int], max_steps: int = 10_000) -> ContinuedFraction:
    """Expansion of any positive exact value by the generic recurrence.

    This is the form engine's independent oracle: repeatedly split off
    the floor and invert the fractional part, detecting recurrence of
    the exact tail value.  Values below 1 are allowed and give a head
    quotient of 0.
    """
    val = as_surd(x)
    if not val > 0:
        raise DomainError("surd_cf: value must be positive, got %s" % val)
    if val.is_rational:
        fr = val.as_fraction()
        return euclid_cf(fr.numerator, fr.denominator)
    quotients: list[int] = []
    seen: dict[QuadSurd, int] = {}
    cur = val
    while True:
        if cur in seen:
            i = seen[cur]
            return canonicalize_cf(
                ContinuedFraction(tuple(quotients[:i]), tuple(quotients[i:]))
            )
        seen[cur] = len(quotients)
        if len(quotients) >= max_steps:
            return ContinuedFraction(tuple(quotients), None, truncated=True)
        k = cur.floor()
        quotients.append(k)
        cur = (cur - k).inverse()  # fractional part is never 0: cur is irrational


def convergents(quotients: Sequence[int], count: int) -> SideDiameter:
    """Convergent rows p[0..count], q[0..count] from the given quotients.

    Needs quotients k0 .. k_{count-1}; raises if fewer are supplied.
    """
    qs = list(quotients)
    if count < 0:
        raise DomainError("convergents: count must be >= 0")
    if count > len(qs):
        raise DomainError(
            "convergents: %d quotients needed, only %d supplied" % (count, len(qs))
        )
    for k in qs[:count]:
        if not isinstance(k, int) or k < 1:
            raise DomainError("convergents: quotients must be integers >= 1")
    p = [0, 1]
    q = [1, qs[0] if count >= 1 else 1]
    for i in range(2, count + 1):
        p.append(qs[i - 1] * p[-1] + p[-2])
        q.append(qs[i - 1] * q[-1] + q[-2])
    return SideDiameter(tuple(p[: count + 1]), tuple(q[: count + 1]))


def remainder(
    n: int,
    a: Union[QuadSurd, Fraction, int],
    b: Union[QuadSurd, Fraction, int],
    sd: SideDiameter,
) -> QuadSurd:
    """The n-th remainder (-1)^n * (q_n * b - p_n * a) of expanding a : b.

    When sd holds the convergents of the expansion of a : b, this is the
    magnitude left after n subtraction rounds: positive and strictly
    decreasing in n.  A nonpositive result means sd does not belong to
    this pair, which is reported as a domain error.
    """
    av, bv = as_surd(a), as_surd(b)
    if not (av > bv and bv > 0):
        raise DomainError("remainder: requires a > b > 0")
    if n < 0 or n >= len(sd.p):
        raise DomainError("remainder: index %d outside the convergent table" % n)
    e = bv * sd.q[n] - av * sd.p[n]
    if n % 2:
        e = -e
    if not e > 0:
        raise DomainError(
            "remainder: convergents do not match the expansion of this pair "
            "(remainder at n=%d is not positive)" % n
        )
    return e


def period_to_form(period: Sequence[int]) -> QuadraticForm:
    """Excess form whose expansion is purely periodic with this period.

    Built from the convergents of one full period: with n the last index
    of the period, the form is (p_{n+1}, q_{n+1} - p_n, q_n).
    """
    per = list(period)
    if not per:
        raise DomainError("period_to_form: period must be nonempty")
    for k in per:
        if not isinstance(k, int) or k < 1:
            raise DomainError("period_to_form: period entries must be >= 1")
    sd = convergents(per, len(per))
    n = len(per) - 1
    a = sd.p[n + 1]
    b = sd.q[n + 1] - sd.p[n]
    c = sd.q[n]
    if b < 0:
        raise InternalInvariantError("period_to_form: negative middle coefficient")
    return QuadraticForm(EXCESS, a, b, c)


_DIVISOR_TABLE: list[int] = []


def _divisor_counts_up_to(limit: int) -> list[int]:
    """Table t with t[m] = number of divisors of m, grown on demand."""
    global _DIVISOR_TABLE
    if len(_DIVISOR_TABLE) <= limit:
        size = max(limit + 1, 2 * len(_DIVISOR_TABLE), 1 << 10)
        table = [0] * size
        for i in range(1, size):
            for j in range(i, size, i):
                table[j] += 1
        _DIVISOR_TABLE = table
    return _DIVISOR_TABLE


@lru_cache(maxsize=None)
def state_space_size(disc: int) -> int:
    """Number of triples (A, B, C), all >= 1, with B^2 + 4*A*C == disc.

    This is the pigeonhole bound for the excess phase: every excess
    state after the first step lies in this set, so a state must recur
    within state_space_size(disc) + 1 excess steps.
    """
    if disc < 1:
        raise DomainError("state_space_size: discriminant must be >= 1")
    if disc < 5:
        return 0
    table = _divisor_counts_up_to(disc // 4)
    count = 0
    b = 1
    while b * b + 4 <= disc:
        rest = disc - b * b
        if rest % 4 == 0:
            count += table[rest // 4]
        b += 1
    return count


def minimal_form(x: Union[QuadSurd, Fraction, int]) -> Union[QuadraticForm, Fraction]:
    """Primitive form whose designated root is x, for exact x > 1.

    Rational x has no form: the value itself is returned as a Fraction
    and expansion falls to the Euclidean algorithm.  For irrational x
    the form kind and root selector are read off the minimal polynomial
    P*x^2 - Q*x + R = 0 with P = w^2, Q = 2*u*w, R = u^2 - v^2*d.
    """
    val = as_surd(x)
    if not val > 1:
        raise DomainError("minimal_form: requires x > 1, got %s" % val)
    if val.is_rational:
        return val.as_fraction()
    u, v, w, d = val.u, val.v, val.w, val.d
    p = w * w
    q = 2 * u * w
    r = u * u - v * v * d
    if r == 0:  # u^2 = v^2*d is impossible for squarefree d > 1
        raise InternalInvariantError("minimal_form: degenerate minimal polynomial")
    g = math.gcd(math.gcd(p, q), r)
    p, q, r = p // g, q // g, r // g
    if r < 0:
        if q >= 0:
            return QuadraticForm(EXCESS, p, q, -r)
        return QuadraticForm(MIXED, p, -q, -r)
    # r > 0 forces u > 0 (x is positive), hence q > 0: a defect form
    return QuadraticForm(DEFECT, p, q, r, smaller_root=(v < 0))
