"""Continued fractions of rationals and quadratic irrationals.

Everything here is exact: quadratic irrationals are (P + sqrt(D))/Q triples
of integers, expansions run on the (P, Q) state recurrence (never on floats),
and periodicity is detected by exact state repetition, which also proves
termination (Lagrange). The same machinery yields fundamental units of real
quadratic orders, Effros-Shen block sequences and tail equivalence of
expansions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple, Union

from .errors import (
    CountExceedsFiniteExpansion,
    InvalidDiscriminant,
    NotEventuallyPeriodic,
)
from .intmath import is_square

Rational = Union[int, Fraction]


@dataclass(frozen=True)
class QuadraticIrrational:
    """The real number (p + sqrt(d))/q with d > 0 not a perfect square.

    On construction the triple is canonicalized so that q divides d - p*p
    (scale p, q by |q| and d by q*q when needed); the continued-fraction
    recurrence needs that divisibility to stay integral.
    """

    p: int
    q: int
    d: int

    def __post_init__(self):
        if self.q == 0:
            raise ValueError("q must be nonzero")
        if self.d <= 0 or is_square(self.d):
            raise ValueError("d must be positive and not a perfect square")
        if (self.d - self.p * self.p) % self.q:
            m = abs(self.q)
            object.__setattr__(self, "d", self.d * m * m)
            object.__setattr__(self, "p", self.p * m)
            object.__setattr__(self, "q", self.q * m)

    @classmethod
    def sqrt(cls, n: int) -> "QuadraticIrrational":
        return cls(0, 1, n)

    def _key(self) -> tuple[int, int, int, int]:
        # Minimal polynomial plus root branch: a complete value invariant
        # that never factors d (sign of q picks the +sqrt branch).
        a, b, c = self.min_poly()
        return (a, b, c, 1 if self.q > 0 else -1)

    def __eq__(self, other) -> bool:
        if not isinstance(other, QuadraticIrrational):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __float__(self) -> float:
        return (self.p + self.d ** 0.5) / self.q

    def __repr__(self) -> str:
        return f"QuadraticIrrational({self.p}, {self.q}, {self.d})"

    def __str__(self) -> str:
        return f"({self.p}+sqrt({self.d}))/{self.q}"

    def conjugate(self) -> "QuadraticIrrational":
        """The algebraic conjugate (p - sqrt(d))/q."""
        return QuadraticIrrational(-self.p, -self.q, self.d)

    def floor(self) -> int:
        s = isqrt(self.d)
        if self.q > 0:
            return (self.p + s) // self.q
        return -((self.p + s) // -self.q) - 1

    def compare(self, r: Rational) -> int:
        """Exact comparison with a rational: -1 if self < r, +1 if self > r."""
        r = Fraction(r)
        u, v = r.numerator, r.denominator
        p, q, d = self.p, self.q, self.d
        sign = 1
        if q < 0:
            # (p + sqrt(d))/q < u/v  <=>  (p + sqrt(d))/|q| > -u/v
            q, u, sign = -q, -u, -1
        rest = u * q - p * v
        if rest <= 0:
            return sign
        return sign if d * v * v > rest * rest else -sign

    def __lt__(self, r: Rational) -> bool:
        return self.compare(r) < 0

    def __gt__(self, r: Rational) -> bool:
        return self.compare(r) > 0

    def shift(self, n: int) -> "QuadraticIrrational":
        """self + n."""
        return QuadraticIrrational(self.p + n * self.q, self.q, self.d)

    def mobius(self, a: int, b: int, c: int, e: int) -> "QuadraticIrrational":
        """(a*self + b) / (c*self + e) for an integer matrix with det != 0."""
        det = a * e - b * c
        if det == 0:
            raise ValueError("singular coefficient matrix")
        p, q, d = self.p, self.q, self.d
        u = (a * p + b * q) * (c * p + e * q) - a * c * d
        v = det * q
        w = (c * p + e * q) ** 2 - c * c * d
        g = gcd(gcd(abs(u), abs(v)), abs(w))
        u, v, w = u // g, v // g, w // g
        if v > 0:
            return QuadraticIrrational(u, w, v * v * d)
        return QuadraticIrrational(-u, -w, v * v * d)

    def satisfies(self, a: int, b: int, c: int) -> bool:
        """Whether a*x^2 + b*x + c = 0 holds exactly for x = self."""
        p, q, d = self.p, self.q, self.d
        rational = a * (p * p + d) + b * p * q + c * q * q
        irrational = 2 * a * p + b * q
        return rational == 0 and irrational == 0

    def min_poly(self) -> tuple[int, int, int]:
        """Primitive integral (A, B, C) with A > 0 and A x^2 + B x + C = 0."""
        a, b, c = self.q, -2 * self.p, (self.p * self.p - self.d) // self.q
        g = gcd(gcd(abs(a), abs(b)), abs(c))
        a, b, c = a // g, b // g, c // g
        if a < 0:
            a, b, c = -a, -b, -c
        return a, b, c

    @property
    def is_reduced(self) -> bool:
        """Greater than 1 with conjugate strictly between -1 and 0."""
        conj = self.conjugate()
        return self.compare(1) > 0 and conj.compare(-1) > 0 and conj.compare(0) < 0


@dataclass(frozen=True)
class ContinuedFraction:
    """A continued fraction [a0, a1, ...] with an optional repeating tail.

    ``preperiod`` holds the leading terms (first may be any integer, the rest
    are >= 1); ``period`` is the minimal repeating word, empty exactly for
    rationals. Finite expansions are kept canonical (last entry >= 2), and a
    period entry equal to the last preperiod entry is absorbed into the cycle
    so the preperiod is minimal too.
    """

    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def __post_init__(self):
        pre = tuple(int(a) for a in self.preperiod)
        per = tuple(int(a) for a in self.period)
        if not pre and not per:
            raise ValueError("empty continued fraction")
        if any(a < 1 for a in pre[1:]) or any(a < 1 for a in per):
            raise ValueError("partial quotients after the first must be >= 1")
        if not per and len(pre) >= 2 and pre[-1] < 2:
            raise ValueError("canonical finite expansion must end with >= 2")
        if per:
            # minimal cycle
            for width in range(1, len(per)):
                if len(per) % width == 0 and per[:width] * (len(per) // width) == per:
                    per = per[:width]
                    break
            # minimal preperiod: absorb matching trailing terms into the cycle
            # (the leading term may only be absorbed if it is a valid period entry)
            while pre and pre[-1] == per[-1] and (len(pre) > 1 or pre[0] >= 1):
                pre = pre[:-1]
                per = per[-1:] + per[:-1]
        object.__setattr__(self, "preperiod", pre)
        object.__setattr__(self, "period", per)

    @property
    def is_periodic(self) -> bool:
        return bool(self.period)

    def terms(self, count: int) -> list[int]:
        """First ``count`` partial quotients, unrolling the period as needed."""
        if count <= len(self.preperiod):
            return list(self.preperiod[:count])
        if not self.period:
            raise CountExceedsFiniteExpansion(
                f"{count} terms requested, expansion has {len(self.preperiod)}"
            )
        out = list(self.preperiod)
        i = 0
        while len(out) < count:
            out.append(self.period[i % len(self.period)])
            i += 1
        return out

    def __str__(self) -> str:
        pre = ",".join(str(a) for a in self.preperiod)
        if not self.period:
            return f"[{pre}]"
        per = ",".join(str(a) for a in self.period)
        return f"[{pre};({per})]"


@dataclass(frozen=True)
class BratteliBlockSequence:
    """Incidence blocks of the stationary-tail diagram of an expansion."""

    blocks: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    periodic_tail_start: int

    def __post_init__(self):
        for blk in self.blocks:
            (a, b), (c, e) = blk
            if abs(a * e - b * c) != 1:
                raise ValueError(f"block {blk} has determinant != +-1")


class FundamentalUnit(NamedTuple):
    x: int
    y: int
    norm: int


def _word_matrix(word) -> tuple[int, int, int, int]:
    """Product of the blocks [[a, 1], [1, 0]] over the word, left to right."""
    a11, a12, a21, a22 = 1, 0, 0, 1
    for a in word:
        a11, a12, a21, a22 = a11 * a + a12, a11, a21 * a + a22, a21
    return a11, a12, a21, a22


def _expand_states(
    value: QuadraticIrrational,
) -> tuple[list[int], list[tuple[int, int]], int]:
    """Run the (P, Q) recurrence until a state repeats.

    Returns (terms, states, cycle_start): terms[k] is the partial quotient of
    state states[k], and states[cycle_start:] is the minimal cycle.
    """
    p, q, d = value.p, value.q, value.d
    s = isqrt(d)
    seen: dict[tuple[int, int], int] = {}
    terms: list[int] = []
    states: list[tuple[int, int]] = []
    while (p, q) not in seen:
        seen[(p, q)] = len(terms)
        states.append((p, q))
        a = (p + s) // q if q > 0 else -((p + s) // -q) - 1
        terms.append(a)
        p = a * q - p
        q = (d - p * p) // q
    return terms, states, seen[(p, q)]


def cf_expand(x: Union[QuadraticIrrational, Rational]) -> ContinuedFraction:
    """Exact continued fraction of a rational or quadratic irrational.

    Rationals get the finite Euclidean expansion (canonical, last entry >= 2);
    quadratic irrationals get the exact preperiod and minimal period found by
    state repetition, which Lagrange's theorem guarantees to occur.
    """
    if isinstance(x, QuadraticIrrational):
        terms, _, start = _expand_states(x)
        return ContinuedFraction(tuple(terms[:start]), tuple(terms[start:]))
    x = Fraction(x)
    num, den = x.numerator, x.denominator
    terms = []
    while True:
        a, r = divmod(num, den)
        terms.append(a)
        if r == 0:
            break
        num, den = den, r
    return ContinuedFraction(tuple(terms), ())


def convergents(cf: ContinuedFraction, count: int) -> list[Fraction]:
    """First ``count`` convergents p_k/q_k, each in lowest terms."""
    if count < 1:
        raise ValueError("count must be positive")
    terms = cf.terms(count)
    out = []
    p_prev, q_prev = 1, 0
    p, q = terms[0], 1
    out.append(Fraction(p, q))
    for a in terms[1:]:
        p, p_prev = a * p + p_prev, p
        q, q_prev = a * q + q_prev, q
        out.append(Fraction(p, q))
    return out


def evaluate(cf: ContinuedFraction) -> Union[Fraction, QuadraticIrrational]:
    """Exact value of the (possibly periodic) expansion.

    For a periodic expansion the purely periodic tail t is the positive fixed
    point of the period's word matrix; the preperiod then acts on t as a
    Moebius map.
    """
    if not cf.is_periodic:
        value = Fraction(cf.preperiod[-1])
        for a in reversed(cf.preperiod[:-1]):
            value = a + 1 / value
        return value
    a11, a12, a21, a22 = _word_matrix(cf.period)
    # tail t solves a21*t^2 + (a22 - a11)*t - a12 = 0, t > 1: take + root
    disc = (a22 - a11) ** 2 + 4 * a12 * a21
    tail = QuadraticIrrational(a11 - a22, 2 * a21, disc)
    if not cf.preperiod:
        return tail
    b11, b12, b21, b22 = _word_matrix(cf.preperiod)
    return tail.mobius(b11, b12, b21, b22)


def is_rm(
    x: Union[QuadraticIrrational, Rational]
) -> tuple[bool, ContinuedFraction]:
    """Eventual periodicity of the expansion, with the expansion as witness."""
    cf = cf_expand(x)
    return cf.is_periodic, cf


def bratteli_blocks(cf: ContinuedFraction, count: int) -> BratteliBlockSequence:
    """First ``count`` incidence blocks [[a_i, 1], [1, 0]] of the expansion."""
    if not cf.is_periodic:
        raise NotEventuallyPeriodic("finite expansion has no block tail")
    if count < 1:
        raise ValueError("count must be positive")
    blocks = tuple(((a, 1), (1, 0)) for a in cf.terms(count))
    return BratteliBlockSequence(blocks, len(cf.preperiod))


def tail_equivalent(cf1: ContinuedFraction, cf2: ContinuedFraction) -> bool:
    """Whether some tails of the two expansions coincide.

    For eventually periodic expansions this holds exactly when the minimal
    periods agree up to cyclic rotation.
    """
    if not cf1.is_periodic or not cf2.is_periodic:
        raise NotEventuallyPeriodic("both expansions must be eventually periodic")
    p1, p2 = cf1.period, cf2.period
    if len(p1) != len(p2):
        return False
    doubled = p1 + p1
    return any(doubled[i : i + len(p2)] == p2 for i in range(len(p1)))


def _validate_real_discriminant(d: int) -> None:
    if d <= 0 or d % 4 not in (0, 1) or is_square(d):
        raise InvalidDiscriminant(f"{d} is not a positive non-square discriminant")


def _omega(d: int) -> QuadraticIrrational:
    # Standard generator (sigma + sqrt(d))/2 of the order of discriminant d.
    return QuadraticIrrational(d % 2, 2, d)


def fundamental_unit(d: int) -> FundamentalUnit:
    """Smallest (x, y) with x, y > 0 and x^2 - d*y^2 = +-4, plus the sign.

    (x + y*sqrt(d))/2 is the fundamental unit of the quadratic order of
    discriminant d. It is read off one traversal of the expansion cycle of
    the order's standard generator: the cycle's word matrix fixes the first
    reduced complete quotient, and the fixed-point relation is the unit.
    """
    _validate_real_discriminant(d)
    terms, states, start = _expand_states(_omega(d))
    _, _, a21, a22 = _word_matrix(terms[start:])
    ps, qs = states[start]
    if (2 * a21) % qs:
        raise AssertionError("unit does not lie in the order")
    y = 2 * a21 // qs
    x = y * ps + 2 * a22
    norm = -1 if (len(terms) - start) % 2 else 1
    if x * x - d * y * y != 4 * norm:
        raise AssertionError("fundamental unit fails its Pell equation")
    return FundamentalUnit(x, y, norm)


def unit_norm(d: int) -> int:
    """Norm (+1 or -1) of the fundamental unit of the order of discriminant d.

    Only the parity of the expansion's cycle length is needed, so this avoids
    building the (possibly huge) unit itself.
    """
    _validate_real_discriminant(d)
    terms, _, start = _expand_states(_omega(d))
    return -1 if (len(terms) - start) % 2 else 1
