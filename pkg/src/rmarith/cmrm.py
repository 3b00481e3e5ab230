"""The conductor map from imaginary to real quadratic orders.

Given an order of conductor f in Q(sqrt(-d)), the matching real order in
Q(sqrt(d)) has the least conductor f' whose wide class number equals the
imaginary side's. The scan is exhaustive from f' = 1, optionally evaluated
in parallel batches reduced by minimum index, so the answer never depends
on scheduling.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Optional

from . import quadforms
from .errors import SearchLimitExceeded
from .intmath import squarefree_core
from .quadforms import BinaryQuadraticForm, QuadraticOrder, fundamental_discriminant

DEFAULT_SEARCH_LIMIT = 10_000

ClassNumberFn = Callable[[int, str], int]


@dataclass(frozen=True)
class RMTriple:
    """An order in a real quadratic field with its ideal class representatives."""

    order: QuadraticOrder
    ideal_classes: tuple[BinaryQuadraticForm, ...]
    field_discriminant: int

    def __post_init__(self):
        if self.order.d_k <= 0:
            raise ValueError("the field must be real quadratic")
        if self.field_discriminant != self.order.d_k:
            raise ValueError("field discriminant does not match the order")
        expected = quadforms.class_number(self.order.discriminant, "wide")
        if len(self.ideal_classes) != expected:
            raise ValueError(
                f"{len(self.ideal_classes)} representatives for class number {expected}"
            )


def _normalize_radicand(d: int) -> int:
    if d <= 0:
        raise ValueError("d must be positive")
    core, _ = squarefree_core(d)
    if core == 1:
        raise ValueError(f"{d} is a perfect square; no quadratic field")
    return core


def rm_conductor(
    d: int,
    f: int,
    search_limit: int = DEFAULT_SEARCH_LIMIT,
    workers: int = 1,
    class_number_fn: Optional[ClassNumberFn] = None,
) -> int:
    """Least f' with |Cl(Z + f'*O_Q(sqrt(d)))| = |Cl(Z + f*O_Q(sqrt(-d)))|.

    Both class numbers are wide. d is normalized to its squarefree core.
    Raises SearchLimitExceeded when no f' <= search_limit matches.
    """
    d = _normalize_radicand(d)
    if f < 1:
        raise ValueError("conductor f must be positive")
    h = class_number_fn or quadforms.class_number
    cm_disc = fundamental_discriminant(-d)
    rm_disc = fundamental_discriminant(d)
    target = h(cm_disc * f * f, "wide")

    def matches(fp: int) -> bool:
        return h(rm_disc * fp * fp, "wide") == target

    if workers <= 1:
        for fp in range(1, search_limit + 1):
            if matches(fp):
                return fp
    else:
        batch = max(8 * workers, 32)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            start = 1
            while start <= search_limit:
                stop = min(start + batch, search_limit + 1)
                candidates = range(start, stop)
                for fp, hit in zip(candidates, pool.map(matches, candidates)):
                    if hit:
                        return fp
                start = stop
    raise SearchLimitExceeded(target, search_limit)


def rm_triple(
    d: int,
    f: int,
    search_limit: int = DEFAULT_SEARCH_LIMIT,
    workers: int = 1,
) -> RMTriple:
    """The real-multiplication data matching complex multiplication by (d, f)."""
    d = _normalize_radicand(d)
    fp = rm_conductor(d, f, search_limit, workers)
    d_k = fundamental_discriminant(d)
    order = QuadraticOrder(d_k, fp)
    reps = quadforms.class_representatives(order.discriminant, "wide")
    return RMTriple(order, tuple(reps), d_k)
