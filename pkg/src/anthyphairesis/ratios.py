"""Ratio calculus where proportion means equal expansions.

Two pairs of magnitudes are proportional exactly when their
reciprocal-subtraction expansions coincide.  Nothing here relies on an
Archimedean comparison axiom: every verdict comes from canonical
expansion equality or from exact cross products, and the calculus is
deliberately restricted to pairs whose expansion is finite or
eventually periodic (anything else is reported as truncated, never
silently decided).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence, Union

from .engine import (
    ContinuedFraction,
    euclid_cf,
    minimal_form,
    run_anthyphairesis,
    surd_cf,
)
from .errors import DomainError, IndeterminateError, InternalInvariantError
from .exactarith import QuadSurd, as_surd, is_perfect_square, isqrt

LINE = "line"
AREA = "area"

ValueLike = Union[QuadSurd, Fraction, int]


@dataclass(frozen=True)
class Magnitude:
    """A positive exact value tagged as a line or an area.

    Areas enter the calculus as rectangles, i.e. products of two lines
    of one field; see rectangle().  The tag keeps ratios homogeneous:
    a ratio is always line to line or area to area.
    """

    value: QuadSurd
    role: str = LINE

    def __post_init__(self) -> None:
        if self.role not in (LINE, AREA):
            raise DomainError("Magnitude: role must be %r or %r" % (LINE, AREA))
        val = as_surd(self.value)
        if not val > 0:
            raise DomainError("Magnitude: value must be positive, got %s" % val)
        object.__setattr__(self, "value", val)

    def __add__(self, other: "Magnitude") -> "Magnitude":
        if not isinstance(other, Magnitude):
            return NotImplemented
        if self.role != other.role:
            raise DomainError("Magnitude: cannot add a %s to a %s" % (other.role, self.role))
        return Magnitude(self.value + other.value, self.role)

    def __sub__(self, other: "Magnitude") -> "Magnitude":
        if not isinstance(other, Magnitude):
            return NotImplemented
        if self.role != other.role:
            raise DomainError(
                "Magnitude: cannot subtract a %s from a %s" % (other.role, self.role)
            )
        return Magnitude(self.value - other.value, self.role)

    def __str__(self) -> str:
        return "%s %s" % (self.role, self.value)


def line(x: ValueLike) -> Magnitude:
    """A line magnitude from an exact positive value."""
    return Magnitude(as_surd(x), LINE)


def rectangle(p: Magnitude, q: Magnitude) -> Magnitude:
    """The area contained by two lines."""
    if p.role != LINE or q.role != LINE:
        raise DomainError("rectangle: both sides must be lines")
    return Magnitude(p.value * q.value, AREA)


@dataclass(frozen=True)
class PropReport:
    """Verdict of one proposition check on concrete magnitudes.

    hypotheses_hold reports the value-level hypotheses (proportions,
    orderings, existence of the needed ratios); conclusion_holds is
    evaluated only under the hypotheses.  The two expansions shown are
    the conclusion's sides when they were formed, otherwise the
    hypothesis pair that failed first; both are None when a hypothesis
    ratio does not even exist.
    """

    proposition: str
    hypotheses_hold: bool
    conclusion_holds: bool
    lhs_cf: Optional[ContinuedFraction]
    rhs_cf: Optional[ContinuedFraction]


def anth_of_ratio(a: Magnitude, b: Magnitude, max_steps: int = 10_000) -> ContinuedFraction:
    """Canonical expansion of the ratio a : b.

    Ratios above 1 run through the quadratic-form engine; rational and
    below-1 ratios fall to the generic expansion (head quotient 0 is
    possible there).  The result may be truncated if max_steps is hit.
    """
    if not isinstance(a, Magnitude) or not isinstance(b, Magnitude):
        raise DomainError("anth_of_ratio: arguments must be magnitudes")
    if a.role != b.role:
        raise DomainError("anth_of_ratio: a ratio relates magnitudes of one role")
    x = a.value / b.value
    if x.is_rational or not x > 1:
        return surd_cf(x, max_steps)
    form = minimal_form(x)
    cf, _ = run_anthyphairesis(form, max_steps)
    return cf


def _decided(cf: ContinuedFraction) -> ContinuedFraction:
    if cf.truncated:
        raise IndeterminateError(
            "expansion truncated before any period appeared; the proportion "
            "is undecided at this step budget"
        )
    return cf


def ratio_eq(
    a: Magnitude, b: Magnitude, c: Magnitude, d: Magnitude, max_steps: int = 10_000
) -> bool:
    """Whether a : b and c : d have the same expansion.

    Truncation raises IndeterminateError rather than answering; a
    truncated expansion is unknown, not unequal.
    """
    lhs = _decided(anth_of_ratio(a, b, max_steps))
    rhs = _decided(anth_of_ratio(c, d, max_steps))
    return lhs == rhs


def cross_product_eq(a: Magnitude, b: Magnitude, c: Magnitude, d: Magnitude) -> bool:
    """Whether a*d == b*c exactly.  All four must share role and field."""
    for m in (a, b, c, d):
        if not isinstance(m, Magnitude):
            raise DomainError("cross_product_eq: arguments must be magnitudes")
        if m.role != a.role:
            raise DomainError("cross_product_eq: magnitudes must share one role")
    fields = {m.value.d for m in (a, b, c, d) if not m.value.is_rational}
    if len(fields) > 1:
        raise DomainError(
            "cross_product_eq: magnitudes lie in distinct quadratic fields (%s)"
            % ", ".join("sqrt(%d)" % d_ for d_ in sorted(fields))
        )
    return a.value * d.value == b.value * c.value


def mixed_ratio_eq(
    a: Magnitude, b: Magnitude, m: int, n: int, max_steps: int = 10_000
) -> bool:
    """Whether the ratio a : b equals the number ratio m : n.

    This is proportion between a magnitude pair and a number pair: the
    expansion of a : b must coincide with the Euclidean expansion of
    m : n.
    """
    if not isinstance(m, int) or not isinstance(n, int) or m < 1 or n < 1:
        raise DomainError("mixed_ratio_eq: m and n must be integers >= 1")
    lhs = _decided(anth_of_ratio(a, b, max_steps))
    return lhs == euclid_cf(m, n)


def commensurable_pure(a_coeff: int, c_coeff: int) -> bool:
    """Commensurability of a, b tied by A*a^2 = C*b^2.

    The pair is commensurable exactly when C/A in lowest terms has
    square numerator and denominator, equivalently when A*C is a
    perfect square; both routes are computed and must agree.
    """
    if a_coeff < 1 or c_coeff < 1:
        raise DomainError("commensurable_pure: coefficients must be >= 1")
    g = math.gcd(a_coeff, c_coeff)
    reduced = is_perfect_square(a_coeff // g) and is_perfect_square(c_coeff // g)
    product = is_perfect_square(a_coeff * c_coeff)
    if reduced != product:
        raise InternalInvariantError("commensurable_pure: the two routes disagree")
    return reduced


def square_ratio_witness(c_coeff: int, a_coeff: int) -> Optional[tuple[int, int]]:
    """Numbers (m, n) with C/A = m^2/n^2, or None when there are none.

    None certifies incommensurability of the tied pair: it happens
    exactly when A*C is not a perfect square.
    """
    if a_coeff < 1 or c_coeff < 1:
        raise DomainError("square_ratio_witness: coefficients must be >= 1")
    g = math.gcd(c_coeff, a_coeff)
    cr, ar = c_coeff // g, a_coeff // g
    if is_perfect_square(cr) and is_perfect_square(ar):
        return isqrt(cr), isqrt(ar)
    if is_perfect_square(a_coeff * c_coeff):
        raise InternalInvariantError("square_ratio_witness: missed a square ratio")
    return None


# -- proposition checkers ---------------------------------------------------
#
# Each checker returns (hypotheses_hold, conclusion_holds, lhs_cf, rhs_cf).
# Value-level hypothesis failures (unequal proportions, missing orderings,
# ratios that do not exist across fields) make hypotheses_hold false; only
# wrong arity or wrong roles are caller errors.


def _anth_or_none(
    a: Magnitude, b: Magnitude, max_steps: int
) -> Optional[ContinuedFraction]:
    try:
        return _decided(anth_of_ratio(a, b, max_steps))
    except DomainError:
        return None  # the pair possesses no ratio in this calculus


def _chk_transitivity(m: Sequence[Magnitude], ms: int):
    a, b, c, d, e, f = m
    ab = _decided(anth_of_ratio(a, b, ms))
    cd = _decided(anth_of_ratio(c, d, ms))
    ef = _decided(anth_of_ratio(e, f, ms))
    hyp = ab == cd and cd == ef
    return hyp, hyp and ab == ef, ab, ef


def _chk_fundamental(m: Sequence[Magnitude], ms: int):
    a, b, c, d = m
    hyp = cross_product_eq(a, b, c, d)
    ab = _decided(anth_of_ratio(a, b, ms))
    cd = _decided(anth_of_ratio(c, d, ms))
    return hyp, hyp and ab == cd, ab, cd


def _chk_cancel(m: Sequence[Magnitude], ms: int):
    a, b, c = m
    ab = _decided(anth_of_ratio(a, b, ms))
    ac = _decided(anth_of_ratio(a, c, ms))
    hyp = ab == ac
    return hyp, hyp and b.value == c.value, ab, ac


def _chk_alternando(m: Sequence[Magnitude], ms: int):
    a, b, c, d = m
    ab = _decided(anth_of_ratio(a, b, ms))
    cd = _decided(anth_of_ratio(c, d, ms))
    if ab != cd:
        return False, False, ab, cd
    lhs = _anth_or_none(a, c, ms)
    rhs = _anth_or_none(b, d, ms)
    if lhs is None or rhs is None:
        return False, False, ab, cd
    return True, lhs == rhs, lhs, rhs


def _chk_ex_aequali(m: Sequence[Magnitude], ms: int):
    a, b, c, d, e, f = m
    h1 = _decided(anth_of_ratio(a, b, ms))
    h2 = _decided(anth_of_ratio(d, e, ms))
    if h1 != h2:
        return False, False, h1, h2
    h3 = _decided(anth_of_ratio(b, c, ms))
    h4 = _decided(anth_of_ratio(e, f, ms))
    if h3 != h4:
        return False, False, h3, h4
    lhs = _anth_or_none(a, c, ms)
    rhs = _anth_or_none(d, f, ms)
    if lhs is None or rhs is None:
        return False, False, h1, h2
    return True, lhs == rhs, lhs, rhs


def _chk_perturbed(m: Sequence[Magnitude], ms: int):
    a, b, c, d, e, f = m
    h1 = _decided(anth_of_ratio(a, b, ms))
    h2 = _decided(anth_of_ratio(e, f, ms))
    if h1 != h2:
        return False, False, h1, h2
    h3 = _decided(anth_of_ratio(b, c, ms))
    h4 = _decided(anth_of_ratio(d, e, ms))
    if h3 != h4:
        return False, False, h3, h4
    lhs = _anth_or_none(a, c, ms)
    rhs = _anth_or_none(d, f, ms)
    if lhs is None or rhs is None:
        return False, False, h1, h2
    return True, lhs == rhs, lhs, rhs


def _chk_componendo_pairs(m: Sequence[Magnitude], ms: int):
    a, b, c, d = m
    ab = _decided(anth_of_ratio(a, b, ms))
    cd = _decided(anth_of_ratio(c, d, ms))
    if ab != cd:
        return False, False, ab, cd
    try:
        lhs = _decided(anth_of_ratio(a + c, b + d, ms))
    except DomainError:
        return False, False, ab, cd
    return True, lhs == ab, lhs, ab


def _chk_separando_pairs(m: Sequence[Magnitude], ms: int):
    a, b, c, d = m
    ab = _decided(anth_of_ratio(a, b, ms))
    cd = _decided(anth_of_ratio(c, d, ms))
    if ab != cd:
        return False, False, ab, cd
    try:
        ordered = a.value > c.value and b.value > d.value
    except DomainError:
        return False, False, ab, cd
    if not ordered:
        return False, False, ab, cd
    lhs = _decided(anth_of_ratio(a - c, b - d, ms))
    return True, lhs == ab, lhs, ab


def _chk_plus_unit(m: Sequence[Magnitude], ms: int):
    a, b, c, d = m
    ab = _decided(anth_of_ratio(a, b, ms))
    cd = _decided(anth_of_ratio(c, d, ms))
    if ab != cd:
        return False, False, ab, cd
    lhs = _decided(anth_of_ratio(a + b, b, ms))
    rhs = _decided(anth_of_ratio(c + d, d, ms))
    return True, lhs == rhs, lhs, rhs


def _chk_minus_unit(m: Sequence[Magnitude], ms: int):
    a, b, c, d = m
    ab = _decided(anth_of_ratio(a, b, ms))
    cd = _decided(anth_of_ratio(c, d, ms))
    if ab != cd:
        return False, False, ab, cd
    # the remainders a - b and c - d must still exceed the consequents
    if not ((a.value - b.value) > b.value and (c.value - d.value) > d.value):
        return False, False, ab, cd
    lhs = _decided(anth_of_ratio(a - b, b, ms))
    rhs = _decided(anth_of_ratio(c - d, d, ms))
    return True, lhs == rhs, lhs, rhs


def _chk_topics_scaling(m: Sequence[Magnitude], ms: int):
    a, b, c = m
    ab = _decided(anth_of_ratio(a, b, ms))
    try:
        lhs = _decided(anth_of_ratio(rectangle(a, c), rectangle(b, c), ms))
    except DomainError:
        return False, False, ab, ab
    return True, lhs == ab, lhs, ab


def _chk_area_v9(m: Sequence[Magnitude], ms: int):
    big_a, big_b, big_c = m
    ab = _decided(anth_of_ratio(big_a, big_b, ms))
    ac = _decided(anth_of_ratio(big_a, big_c, ms))
    hyp = ab == ac
    return hyp, hyp and big_b.value == big_c.value, ab, ac


def _chk_area_alternando(m: Sequence[Magnitude], ms: int):
    return _chk_alternando(m, ms)


def _chk_area_ex_aequali(m: Sequence[Magnitude], ms: int):
    return _chk_ex_aequali(m, ms)


def _chk_area_mixed_ex_aequali(m: Sequence[Magnitude], ms: int):
    big_a, big_b, big_c, d, e, f = m
    h1 = _decided(anth_of_ratio(big_a, big_b, ms))
    h2 = _decided(anth_of_ratio(d, e, ms))
    if h1 != h2:
        return False, False, h1, h2
    h3 = _decided(anth_of_ratio(big_b, big_c, ms))
    h4 = _decided(anth_of_ratio(e, f, ms))
    if h3 != h4:
        return False, False, h3, h4
    lhs = _anth_or_none(big_a, big_c, ms)
    rhs = _anth_or_none(d, f, ms)
    if lhs is None or rhs is None:
        return False, False, h1, h2
    return True, lhs == rhs, lhs, rhs


def _chk_area_perturbed(m: Sequence[Magnitude], ms: int):
    return _chk_perturbed(m, ms)


def _chk_area_mixed_perturbed(m: Sequence[Magnitude], ms: int):
    big_a, big_b, big_c, d, e, f = m
    h1 = _decided(anth_of_ratio(big_a, big_b, ms))
    h2 = _decided(anth_of_ratio(e, f, ms))
    if h1 != h2:
        return False, False, h1, h2
    h3 = _decided(anth_of_ratio(big_b, big_c, ms))
    h4 = _decided(anth_of_ratio(d, e, ms))
    if h3 != h4:
        return False, False, h3, h4
    lhs = _anth_or_none(big_a, big_c, ms)
    rhs = _anth_or_none(d, f, ms)
    if lhs is None or rhs is None:
        return False, False, h1, h2
    return True, lhs == rhs, lhs, rhs


_L = LINE
_A = AREA

PROPOSITIONS: dict[str, tuple[tuple[str, ...], Callable]] = {
    "transitivity": ((_L,) * 6, _chk_transitivity),
    "fundamental": ((_L,) * 4, _chk_fundamental),
    "v9_cancel": ((_L,) * 3, _chk_cancel),
    "alternando": ((_L,) * 4, _chk_alternando),
    "ex_aequali": ((_L,) * 6, _chk_ex_aequali),
    "perturbed": ((_L,) * 6, _chk_perturbed),
    "componendo_pairs": ((_L,) * 4, _chk_componendo_pairs),
    "separando_pairs": ((_L,) * 4, _chk_separando_pairs),
    "plus_unit": ((_L,) * 4, _chk_plus_unit),
    "minus_unit": ((_L,) * 4, _chk_minus_unit),
    "topics_scaling": ((_L,) * 3, _chk_topics_scaling),
    "area_v9": ((_A,) * 3, _chk_area_v9),
    "area_alternando": ((_A,) * 4, _chk_area_alternando),
    "area_ex_aequali": ((_A,) * 6, _chk_area_ex_aequali),
    "area_mixed_ex_aequali": ((_A, _A, _A, _L, _L, _L), _chk_area_mixed_ex_aequali),
    "area_perturbed": ((_A,) * 6, _chk_area_perturbed),
    "area_mixed_perturbed": ((_A, _A, _A, _L, _L, _L), _chk_area_mixed_perturbed),
}


def check_proposition(
    name: str, magnitudes: Sequence[Magnitude], max_steps: int = 10_000
) -> PropReport:
    """Check a named proportion proposition on concrete magnitudes.

    Unknown names, wrong arity and wrong roles are caller errors; every
    value-level hypothesis failure is reported, not raised.
    """
    if name not in PROPOSITIONS:
        raise DomainError(
            "check_proposition: unknown proposition %r (known: %s)"
            % (name, ", ".join(sorted(PROPOSITIONS)))
        )
    roles, fn = PROPOSITIONS[name]
    if len(magnitudes) != len(roles):
        raise DomainError(
            "check_proposition: %s takes %d magnitudes, got %d"
            % (name, len(roles), len(magnitudes))
        )
    for i, (mag, role) in enumerate(zip(magnitudes, roles)):
        if not isinstance(mag, Magnitude):
            raise DomainError("check_proposition: input %d is not a Magnitude" % i)
        if mag.role != role:
            raise DomainError(
                "check_proposition: %s needs a %s in slot %d, got a %s"
                % (name, role, i, mag.role)
            )
    try:
        hyp, concl, lhs, rhs = fn(list(magnitudes), max_steps)
    except DomainError:
        # a hypothesis ratio, sum or product does not exist for these
        # values (distinct fields, missing ordering); that is a failed
        # hypothesis, not a caller error
        hyp, concl, lhs, rhs = False, False, None, None
    return PropReport(name, hyp, concl, lhs, rhs)
