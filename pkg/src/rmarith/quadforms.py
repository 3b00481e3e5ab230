"""Binary quadratic forms, reduction, Gauss composition and class groups.

Forms (a, b, c) of discriminant D = b^2 - 4ac model ideal classes of the
quadratic order of discriminant D, for definite and indefinite D alike.
Definite forms reduce to a unique representative; indefinite forms reduce
onto rho-cycles, and each cycle is one proper class. Class numbers for
non-maximal orders go through the classical conductor formula (with the
unit index computed from the fundamental unit), which the form-enumeration
route cross-checks in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, isqrt, prod

from .contfrac import fundamental_unit, unit_norm
from .errors import (
    DiscriminantMismatch,
    InvalidDiscriminant,
    NonCyclicTwoPart,
    NonPrimitiveForm,
    SquareDiscriminant,
)
from .intmath import (
    crt_pair,
    divisors,
    factorization,
    is_square,
    kronecker,
    prime_factors,
    squarefree_core,
    xgcd,
)


@dataclass(frozen=True)
class BinaryQuadraticForm:
    """The integral form a*x^2 + b*x*y + c*y^2."""

    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    @property
    def is_primitive(self) -> bool:
        return gcd(gcd(abs(self.a), abs(self.b)), abs(self.c)) == 1

    def __call__(self, x: int, y: int) -> int:
        return self.a * x * x + self.b * x * y + self.c * y * y

    def inverse(self) -> "BinaryQuadraticForm":
        """Representative of the inverse class."""
        return BinaryQuadraticForm(self.a, -self.b, self.c)

    def __str__(self) -> str:
        return f"({self.a},{self.b},{self.c})"

    @classmethod
    def principal(cls, d: int) -> "BinaryQuadraticForm":
        """The identity class representative of discriminant d."""
        validate_discriminant(d)
        b0 = d % 2
        return cls(1, b0, (b0 * b0 - d) // 4)


@dataclass(frozen=True)
class QuadraticOrder:
    """The order Z + f*O_K of conductor f in the field of discriminant d_k."""

    d_k: int
    f: int = 1

    def __post_init__(self):
        if self.f < 1:
            raise ValueError("conductor must be positive")
        validate_discriminant(self.d_k)
        if split_discriminant(self.d_k)[1] != 1:
            raise InvalidDiscriminant(f"{self.d_k} is not fundamental")

    @property
    def discriminant(self) -> int:
        return self.d_k * self.f * self.f

    @classmethod
    def from_discriminant(cls, d: int) -> "QuadraticOrder":
        d_k, f = split_discriminant(d)
        return cls(d_k, f)

    def __str__(self) -> str:
        return f"Z + {self.f}*O_Q(sqrt({self.d_k}))"


@dataclass(frozen=True)
class ClassGroupStructure:
    """A finite abelian group in invariant-factor form d_1 | d_2 | ...

    Divisors equal to 1 are dropped; a divisor list that is not a
    divisibility chain is renormalized prime by prime. ``h`` is the order.
    """

    elementary_divisors: tuple[int, ...]
    h: int = 0

    def __post_init__(self):
        divs = tuple(int(d) for d in self.elementary_divisors if int(d) != 1)
        if any(d < 1 for d in divs):
            raise ValueError("divisors must be positive")
        if any(divs[i + 1] % divs[i] for i in range(len(divs) - 1)):
            divs = _invariant_factors_of_sum(list(divs))
        order = prod(divs)
        if self.h and self.h != order:
            raise ValueError(f"h={self.h} != product of divisors {order}")
        object.__setattr__(self, "elementary_divisors", divs)
        object.__setattr__(self, "h", order)

    @property
    def is_trivial(self) -> bool:
        return self.h == 1


def _invariant_factors_of_sum(divisor_lists) -> tuple[int, ...]:
    """Invariant factors of a direct sum given any divisor lists."""
    powers: dict[int, list[int]] = {}
    flat = []
    for d in divisor_lists:
        flat.extend(d if isinstance(d, (list, tuple)) else [d])
    for d in flat:
        for p, e in factorization(d):
            powers.setdefault(p, []).append(e)
    width = max((len(v) for v in powers.values()), default=0)
    out = []
    for i in range(width):
        factor = 1
        for p, exps in powers.items():
            exps_sorted = sorted(exps, reverse=True)
            if i < len(exps_sorted):
                factor *= p ** exps_sorted[i]
        out.append(factor)
    return tuple(sorted(out))


def validate_discriminant(d: int) -> None:
    """Raise InvalidDiscriminant unless d is a non-square 0/1 mod 4 integer."""
    if d % 4 not in (0, 1) or is_square(d):
        raise InvalidDiscriminant(f"{d} is not a non-square discriminant")


def split_discriminant(d: int) -> tuple[int, int]:
    """Write d = f^2 * d_K with d_K fundamental; return (d_K, f)."""
    validate_discriminant(d)
    core, s = squarefree_core(d)
    if core % 4 == 1:
        return core, s
    if s % 2:
        raise AssertionError(f"inconsistent square part for {d}")
    return 4 * core, s // 2


def fundamental_discriminant(m: int) -> int:
    """Discriminant of Q(sqrt(m)); m is replaced by its squarefree core."""
    if m == 0:
        raise InvalidDiscriminant("0 has no quadratic field")
    core, _ = squarefree_core(m)
    if core == 1:
        raise InvalidDiscriminant(f"{m} is a perfect square")
    return core if core % 4 == 1 else 4 * core


def _require_form(form: BinaryQuadraticForm) -> int:
    if not form.is_primitive:
        raise NonPrimitiveForm(f"{form} has content > 1")
    d = form.discriminant
    if d == 0 or is_square(d):
        raise SquareDiscriminant(f"{form} has square discriminant {d}")
    if d < 0 and form.a < 0:
        raise ValueError(f"{form} is negative definite")
    return d


# ---------------------------------------------------------------------------
# Reduction


def _reduce_definite(a: int, b: int, c: int) -> tuple[int, int, int]:
    if not -a < b <= a:
        r = (a - b) // (2 * a)
        b, c = b + 2 * r * a, a * r * r + b * r + c
    while a > c or (a == c and b < 0):
        s = (c + b) // (2 * c)
        a, b, c = c, -b + 2 * s * c, c * s * s - b * s + a
    if not -a < b <= a:
        r = (a - b) // (2 * a)
        b, c = b + 2 * r * a, a * r * r + b * r + c
    return a, b, c


def _is_reduced_indefinite(a: int, b: int, s: int) -> bool:
    # 0 < b < sqrt(D)  and  sqrt(D) - b < 2|a| < sqrt(D) + b, with s = isqrt(D)
    return 0 < b <= s and 2 * abs(a) + b > s and 2 * abs(a) - b <= s


def _rho(a: int, b: int, c: int, d: int, s: int) -> tuple[int, int, int]:
    """One reduction step: the new form leads with c."""
    ca = abs(c)
    if ca > s:
        b2 = -b % (2 * ca)
        if b2 > ca:
            b2 -= 2 * ca
    else:
        b2 = s - (s + b) % (2 * ca)
    return c, b2, (b2 * b2 - d) // (4 * c)


def _reduce_indefinite(a: int, b: int, c: int, d: int) -> tuple[int, int, int]:
    s = isqrt(d)
    while not _is_reduced_indefinite(a, b, s):
        a, b, c = _rho(a, b, c, d, s)
    return a, b, c


def reduce_form(form: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """An SL(2,Z)-equivalent reduced form.

    For D < 0 this is the unique reduced representative of the class; for
    D > 0 it is some form on the class's rho-cycle.
    """
    d = _require_form(form)
    if d < 0:
        return BinaryQuadraticForm(*_reduce_definite(form.a, form.b, form.c))
    return BinaryQuadraticForm(*_reduce_indefinite(form.a, form.b, form.c, d))


def _cycle(form: BinaryQuadraticForm) -> list[BinaryQuadraticForm]:
    """The rho-cycle through a reduced indefinite form."""
    d = form.discriminant
    s = isqrt(d)
    start = (form.a, form.b, form.c)
    out = [form]
    cur = _rho(*start, d, s)
    while cur != start:
        out.append(BinaryQuadraticForm(*cur))
        cur = _rho(*cur, d, s)
    return out


def canonical_representative(form: BinaryQuadraticForm) -> BinaryQuadraticForm:
    """Deterministic class representative.

    The unique reduced form for D < 0; the lexicographically least (a, b)
    on the reduction cycle for D > 0.
    """
    red = reduce_form(form)
    if red.discriminant < 0:
        return red
    return min(_cycle(red), key=lambda g: (g.a, g.b))


def enumerate_reduced_forms(d: int) -> list[BinaryQuadraticForm]:
    """All reduced primitive forms (D < 0) or one form per cycle (D > 0)."""
    validate_discriminant(d)
    if d < 0:
        out = []
        for a in range(1, isqrt(-d // 3) + 1):
            for b in range(-a, a + 1):
                if (b - d) % 2:
                    continue
                if (b * b - d) % (4 * a):
                    continue
                c = (b * b - d) // (4 * a)
                if c < a:
                    continue
                if b < 0 and (b == -a or a == c):
                    continue
                if gcd(gcd(a, abs(b)), c) == 1:
                    out.append(BinaryQuadraticForm(a, b, c))
        return sorted(out, key=lambda g: (g.a, g.b))

    s = isqrt(d)
    reduced = set()
    for b in range(1 + (d - 1) % 2, s + 1, 2):
        n = (d - b * b) // 4
        for a in divisors(n):
            if 2 * a + b <= s or 2 * a - b > s:
                continue
            c = n // a
            if gcd(gcd(a, b), c) == 1:
                reduced.add(BinaryQuadraticForm(a, b, -c))
                reduced.add(BinaryQuadraticForm(-a, b, c))
    reps = []
    seen: set[BinaryQuadraticForm] = set()
    for form in sorted(reduced, key=lambda g: (g.a, g.b)):
        if form in seen:
            continue
        cycle = _cycle(form)
        for g in cycle:
            if g not in reduced:
                raise AssertionError(f"cycle of {form} left the reduced set at {g}")
            seen.add(g)
        reps.append(min(cycle, key=lambda g: (g.a, g.b)))
    return sorted(reps, key=lambda g: (g.a, g.b))


# ---------------------------------------------------------------------------
# Class numbers


@lru_cache(maxsize=None)
def _real_unit_index(d_k: int, f: int) -> int:
    """[O_K^* : O_f^*]: least n >= 1 with f dividing the y-part of eps^n.

    Runs modulo 4f so the unit's size never matters.
    """
    x1, y1, _ = fundamental_unit(d_k)
    m = 4 * f
    x, y = x1 % m, y1 % m
    n = 1
    limit = 16 * f * f + 16
    while y % f:
        x, y = ((x * x1 + y * y1 * d_k) % (2 * m)) // 2, ((x * y1 + y * x1) % (2 * m)) // 2
        n += 1
        if n > limit:
            raise AssertionError(f"unit index loop exceeded {limit} for ({d_k}, {f})")
    return n


@lru_cache(maxsize=None)
def _class_numbers(d: int) -> tuple[int, int]:
    """(narrow, wide) class numbers of the order of discriminant d."""
    d_k, f = split_discriminant(d)
    if f == 1:
        narrow = len(enumerate_reduced_forms(d))
        if d < 0:
            return narrow, narrow
        wide = narrow if unit_norm(d) == -1 else narrow // 2
        return narrow, wide

    _, wide_k = _class_numbers(d_k)
    if d_k < 0:
        index = {(-3): 3, (-4): 2}.get(d_k, 1)
    else:
        index = _real_unit_index(d_k, f)
    h = wide_k
    for p, e in factorization(f):
        h *= p ** (e - 1) * (p - kronecker(d_k, p))
    if h % index:
        raise AssertionError(f"conductor formula not integral at D={d}")
    wide = h // index
    if d < 0:
        return wide, wide
    norm_f = unit_norm(d_k) if index % 2 else 1
    narrow = wide if norm_f == -1 else 2 * wide
    return narrow, wide


def class_number(d: int, flavor: str = "wide") -> int:
    """Class number of the order of discriminant d.

    ``narrow`` counts proper form classes; ``wide`` is the ideal class
    number of the order. They differ (by a factor 2) only for d > 0 when
    the fundamental unit has norm +1.
    """
    if flavor not in ("narrow", "wide"):
        raise ValueError(f"flavor must be 'narrow' or 'wide', got {flavor!r}")
    narrow, wide = _class_numbers(d)
    return narrow if flavor == "narrow" else wide


# ---------------------------------------------------------------------------
# Composition


def _transform(a: int, b: int, c: int, m11: int, m21: int, m12: int, m22: int):
    """Substitute (x, y) -> (m11 x + m12 y, m21 x + m22 y)."""
    a2 = a * m11 * m11 + b * m11 * m21 + c * m21 * m21
    c2 = a * m12 * m12 + b * m12 * m22 + c * m22 * m22
    b2 = 2 * a * m11 * m12 + b * (m11 * m22 + m12 * m21) + 2 * c * m21 * m22
    return a2, b2, c2


def _coprime_representation(a: int, b: int, c: int, m: int) -> tuple[int, int]:
    """Coprime (x, y) with the form's value at (x, y) coprime to m.

    Residues are picked prime by prime (a, c or a+b+c is a unit mod p for a
    primitive form) and glued by CRT, so no search over values is needed.
    """
    m = abs(m)
    if m == 1:
        return 1, 0
    x, y, mod = 0, 0, 1
    for p in prime_factors(m):
        if a % p:
            tx, ty = 1, 0
        elif c % p:
            tx, ty = 0, 1
        else:
            tx, ty = 1, 1
        x, _ = crt_pair(x, mod, tx, p)
        y, mod = crt_pair(y, mod, ty, p)
    if x == 0:
        return 0, 1
    k = 0
    while gcd(x, y + k * mod) != 1:
        k += 1
        if k > 10000:
            raise AssertionError("coprime lift not found")
    return x, y + k * mod


def compose(
    f1: BinaryQuadraticForm, f2: BinaryQuadraticForm
) -> BinaryQuadraticForm:
    """Gauss composition, returned as the canonical class representative.

    f1 is moved by an explicit SL(2,Z) substitution onto a form whose
    leading coefficient is coprime to f2's, the middle coefficients are
    united by CRT, and the concordant pair composes directly.
    """
    d1 = _require_form(f1)
    d2 = _require_form(f2)
    if d1 != d2:
        raise DiscriminantMismatch(f"{d1} != {d2}")
    x, y = _coprime_representation(f1.a, f1.b, f1.c, f2.a)
    _, u, v = xgcd(x, y)
    a1, b1, _ = _transform(f1.a, f1.b, f1.c, x, y, -v, u)
    b_united, _ = crt_pair(b1, 2 * abs(a1), f2.b, 2 * abs(f2.a))
    a3 = a1 * f2.a
    num = b_united * b_united - d1
    if num % (4 * a3):
        raise AssertionError("united middle coefficient is inconsistent")
    composed = BinaryQuadraticForm(a3, b_united, num // (4 * a3))
    if not composed.is_primitive:
        raise AssertionError(f"composition of {f1} and {f2} lost primitivity")
    return canonical_representative(composed)


# ---------------------------------------------------------------------------
# Group structure


def _invariant_factors(elems: list, op, identity) -> list[int]:
    if len(elems) == 1:
        return []

    def elem_order(g):
        k, acc = 1, g
        while acc != identity:
            acc = op(acc, g)
            k += 1
        return k

    orders = {g: elem_order(g) for g in elems}
    g_max = max(elems, key=lambda g: (orders[g], elems.index(g)))
    m = orders[g_max]
    subgroup = [identity]
    acc = g_max
    while acc != identity:
        subgroup.append(acc)
        acc = op(acc, g_max)
    coset_of = {}
    cosets = []
    for x in elems:
        if x in coset_of:
            continue
        cs = frozenset(op(x, h) for h in subgroup)
        for member in cs:
            coset_of[member] = cs
        cosets.append(cs)

    def qop(c1, c2):
        return coset_of[op(next(iter(c1)), next(iter(c2)))]

    lower = _invariant_factors(cosets, qop, coset_of[identity])
    return lower + [m]


def composition_table(d: int) -> tuple[list[BinaryQuadraticForm], list[list[int]]]:
    """Canonical class representatives and their full composition table."""
    reps = enumerate_reduced_forms(d)
    index = {g: i for i, g in enumerate(reps)}
    table = []
    for g in reps:
        row = []
        for k in reps:
            product = compose(g, k)
            if product not in index:
                raise AssertionError(f"composition left the class set: {product}")
            row.append(index[product])
        table.append(row)
    return reps, table


def class_group_structure(d: int) -> ClassGroupStructure:
    """Invariant factors of the form class group of discriminant d."""
    reps, table = composition_table(d)
    principal = canonical_representative(BinaryQuadraticForm.principal(d))
    identity = reps.index(principal)
    elems = list(range(len(reps)))
    factors = _invariant_factors(elems, lambda i, j: table[i][j], identity)
    if prod(factors) != len(reps):
        raise AssertionError("invariant factors do not multiply to the order")
    return ClassGroupStructure(tuple(factors), len(reps))


def two_part_decomposition(
    group: ClassGroupStructure,
) -> tuple[int, ClassGroupStructure]:
    """Split Cl = Z/2^k + odd part; error when the 2-Sylow is not cyclic."""
    evens = [d for d in group.elementary_divisors if d % 2 == 0]
    if len(evens) > 1:
        raise NonCyclicTwoPart(
            f"2-Sylow of {group.elementary_divisors} is not cyclic"
        )
    k = 0
    if evens:
        d = evens[0]
        while d % 2 == 0:
            d //= 2
            k += 1
    odd = []
    for d in group.elementary_divisors:
        while d % 2 == 0:
            d //= 2
        if d > 1:
            odd.append(d)
    return k, ClassGroupStructure(tuple(odd))


def class_representatives(d: int, flavor: str = "narrow") -> list[BinaryQuadraticForm]:
    """Canonical form representatives of the class group of discriminant d.

    ``narrow`` gives one form per proper class. ``wide`` merges each class
    with its image under the norm -1 principal twist when the fundamental
    unit has norm +1 (for d < 0 or norm -1 units the two notions agree).
    """
    if flavor not in ("narrow", "wide"):
        raise ValueError(f"flavor must be 'narrow' or 'wide', got {flavor!r}")
    reps = enumerate_reduced_forms(d)
    if flavor == "narrow" or d < 0 or unit_norm(d) == -1:
        return reps
    b0 = d % 2
    twist = canonical_representative(
        BinaryQuadraticForm(-1, b0, (d - b0 * b0) // 4)
    )
    out = []
    seen = set()
    for g in reps:
        if g in seen:
            continue
        partner = compose(g, twist)
        if partner == g:
            raise AssertionError("norm -1 twist fixed a class despite unit norm +1")
        seen.add(g)
        seen.add(partner)
        out.append(min(g, partner, key=lambda q: (q.a, q.b)))
    return sorted(out, key=lambda q: (q.a, q.b))
