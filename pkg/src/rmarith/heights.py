"""Minkowski question-mark values, projective and quantum heights, counting.

?(x) is evaluated exactly from the continued fraction: a finite alternating
sum of powers of 2 for rationals, a closed-form geometric tail over the
period for quadratic irrationals (so the result is rational either way).
The quantum height of a coordinate tuple pushes each coordinate through
?(.) and takes the standard height of the resulting rational point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from math import gcd, lcm, log2
from typing import Iterable, Iterator, Optional, Sequence, Union

from .contfrac import QuadraticIrrational, cf_expand
from .errors import OutOfDomain

Rational = Union[int, Fraction]
Coordinate = Union[int, Fraction, QuadraticIrrational]


@dataclass(frozen=True)
class ProjectivePoint:
    """Integer coordinates, canonical: gcd 1, first nonzero coordinate positive."""

    coordinates: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(v) for v in self.coordinates)
        if not coords or all(v == 0 for v in coords):
            raise ValueError("coordinates must be nonempty and not all zero")
        g = 0
        for v in coords:
            g = gcd(g, abs(v))
        coords = tuple(v // g for v in coords)
        for v in coords:
            if v != 0:
                if v < 0:
                    coords = tuple(-w for w in coords)
                break
        object.__setattr__(self, "coordinates", coords)

    def __str__(self) -> str:
        return "(" + ":".join(str(v) for v in self.coordinates) + ")"


class GrowthRegime(Enum):
    EXPONENTIAL_IN_TN = "ExponentialInTn"
    POLYNOMIAL_DEGREE_N = "PolynomialDegreeN"
    BOUNDED = "Bounded"


@dataclass(frozen=True)
class VarietyProfile:
    """Topological profile steering the point-counting regime.

    ``betti`` lists beta_0 .. beta_2n. ``m`` (complex moduli dimension) is
    optional; when given it must satisfy rank_k0 = 2m.
    """

    n: int
    betti: tuple[int, ...]
    rank_k0: int
    m: Optional[int] = None

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("dimension must be nonnegative")
        betti = tuple(int(v) for v in self.betti)
        if len(betti) != 2 * self.n + 1:
            raise ValueError(f"betti must have length {2 * self.n + 1}")
        if any(v < 0 for v in betti):
            raise ValueError("Betti numbers must be nonnegative")
        if self.rank_k0 < 0:
            raise ValueError("rank_k0 must be nonnegative")
        if self.m is not None and self.rank_k0 != 2 * self.m:
            raise ValueError(f"rank_k0 = {self.rank_k0} but 2m = {2 * self.m}")
        object.__setattr__(self, "betti", betti)


def minkowski_q(x: Union[Rational, QuadraticIrrational]) -> Fraction:
    """?(x) for x in [0, 1], exactly.

    Sum over the expansion [0; a1, a2, ...] of (-1)^(k+1) * 2^(1 - (a1+...+ak)).
    Rationals give a finite (dyadic) sum; for quadratic irrationals the
    periodic tail is an exact geometric series, hence a rational value.
    """
    if isinstance(x, QuadraticIrrational):
        if x.compare(0) < 0 or x.compare(1) > 0:
            raise OutOfDomain(f"{x} is not in (0, 1)")
        cf = cf_expand(x)
        terms = cf.preperiod[1:]  # skip the leading 0
        total = Fraction(0)
        running = 0
        for k, a in enumerate(terms, start=1):
            running += a
            total += Fraction((-1) ** (k + 1) * 2, 2**running)
        m = len(terms)
        block = Fraction(0)
        partial = running
        for i, a in enumerate(cf.period, start=1):
            partial += a
            block += Fraction((-1) ** (m + i + 1) * 2, 2**partial)
        ratio = Fraction((-1) ** len(cf.period), 2 ** sum(cf.period))
        return total + block / (1 - ratio)

    x = Fraction(x)
    if x < 0 or x > 1:
        raise OutOfDomain(f"{x} is not in [0, 1]")
    if x == 0 or x == 1:
        return Fraction(x)
    cf = cf_expand(x)
    total = Fraction(0)
    running = 0
    for k, a in enumerate(cf.preperiod[1:], start=1):
        running += a
        total += Fraction((-1) ** (k + 1) * 2, 2**running)
    return total


def inverse_minkowski_q(y: Rational) -> Fraction:
    """The rational x with ?(x) = y, for dyadic y in [0, 1].

    Walks the Stern-Brocot tree: the question-mark value of a mediant is the
    dyadic midpoint of its parents' values, so the walk is an exact binary
    search that terminates on dyadic input.
    """
    y = Fraction(y)
    if y < 0 or y > 1:
        raise OutOfDomain(f"{y} is not in [0, 1]")
    if y.denominator & (y.denominator - 1):
        raise OutOfDomain(f"{y} is not dyadic")
    if y == 0 or y == 1:
        return y
    lp, lq, ly = 0, 1, Fraction(0)
    rp, rq, ry = 1, 1, Fraction(1)
    while True:
        mp, mq = lp + rp, lq + rq
        my = (ly + ry) / 2
        if y == my:
            return Fraction(mp, mq)
        if y < my:
            rp, rq, ry = mp, mq, my
        else:
            lp, lq, ly = mp, mq, my


def projective_height(point: ProjectivePoint) -> int:
    """max |x_i| over the canonical coordinates."""
    return max(abs(v) for v in point.coordinates)


def quantum_height(thetas: Sequence[Coordinate]) -> int:
    """Height of (1, ?(theta_1), ..., ?(theta_n)) after clearing denominators.

    Each theta is reduced mod 1 into [0, 1) first.
    """
    values = []
    for theta in thetas:
        if isinstance(theta, QuadraticIrrational):
            shifted = theta.shift(-theta.floor())
            values.append(minkowski_q(shifted))
        else:
            frac = Fraction(theta)
            values.append(minkowski_q(frac - (frac.numerator // frac.denominator)))
    den = 1
    for v in values:
        den = lcm(den, v.denominator)
    coords = (den, *(int(v * den) for v in values))
    return projective_height(ProjectivePoint(coords))


def counting_function(points: Iterable, t: int) -> int:
    """Exact count of an already height-bounded point generator."""
    return sum(1 for _ in points)


def projective_points(n: int, t: int) -> Iterator[ProjectivePoint]:
    """All canonical points of P^n(Q) with classical height <= t."""
    if n < 1 or t < 1:
        raise ValueError("need n >= 1 and t >= 1")
    for lead_pos in range(n + 1):
        rest_len = n - lead_pos
        if rest_len == 0:
            yield ProjectivePoint((0,) * lead_pos + (1,))
            continue
        for lead in range(1, t + 1):
            for rest in product(range(-t, t + 1), repeat=rest_len):
                g = lead
                for v in rest:
                    g = gcd(g, abs(v))
                if g == 1:
                    yield ProjectivePoint((0,) * lead_pos + (lead,) + rest)


def quantum_theta_points(n: int, t: int) -> Iterator[tuple[Fraction, ...]]:
    """All rational theta tuples in [0,1)^n with quantum height <= t.

    The question-mark map sends them bijectively onto tuples of dyadics
    whose common denominator is at most t, so the enumeration inverts the
    dyadic grid of the largest power of 2 below t.
    """
    if n < 1 or t < 1:
        raise ValueError("need n >= 1 and t >= 1")
    den = 1 << (t.bit_length() - 1)
    singles = [inverse_minkowski_q(Fraction(j, den)) for j in range(den)]
    yield from product(singles, repeat=n)


def growth_regime(profile: VarietyProfile) -> GrowthRegime:
    """Asymptotic branch of log2 N(T), decided by rank_k0 against n + 1.

    Below n + 1 the count grows like 2^(T^n), at n + 1 like T^n, and above
    it stays bounded.
    """
    if profile.rank_k0 < profile.n + 1:
        return GrowthRegime.EXPONENTIAL_IN_TN
    if profile.rank_k0 == profile.n + 1:
        return GrowthRegime.POLYNOMIAL_DEGREE_N
    return GrowthRegime.BOUNDED


def finiteness_check(profile: VarietyProfile) -> bool:
    """True when the odd Betti sum beta_1 + beta_3 + ... exceeds n + 1."""
    odd_sum = sum(profile.betti[2 * i - 1] for i in range(1, profile.n + 1))
    return odd_sum > profile.n + 1


def loglog_slope(rows: Sequence[tuple[int, int]]) -> float:
    """Least-squares slope of log2(count) against log2(T)."""
    pts = [(log2(t), log2(c)) for t, c in rows if c > 0]
    if len(pts) < 2:
        raise ValueError("need at least two positive rows")
    mx = sum(x for x, _ in pts) / len(pts)
    my = sum(y for _, y in pts) / len(pts)
    num = sum((x - mx) * (y - my) for x, y in pts)
    den = sum((x - mx) ** 2 for x, y in pts)
    return num / den
