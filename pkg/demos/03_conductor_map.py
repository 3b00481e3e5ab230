#!/usr/bin/env python3
"""The imaginary-to-real conductor map and the triples it produces.

An order of conductor f in Q(sqrt(-d)) is matched with the order of least
conductor f' in Q(sqrt(d)) having the same (wide) class number.

Run:  python demos/03_conductor_map.py
"""

from rmarith import (
    SearchLimitExceeded,
    class_number,
    fundamental_discriminant,
    rm_conductor,
    rm_triple,
)

print("=== The matched conductor f' ===")
for d, f in [(2, 1), (5, 1), (5, 3), (26, 3), (38, 5)]:
    fp = rm_conductor(d, f)
    cm_disc = fundamental_discriminant(-d) * f * f
    rm_disc = fundamental_discriminant(d) * fp * fp
    h = class_number(cm_disc, "wide")
    print(
        f"d={d:2d} f={f}:  h(Z+{f}*O_Q(sqrt(-{d}))) = {h:3d}"
        f"  ->  f' = {fp:3d}  (real discriminant {rm_disc})"
    )

print("\n=== The full triple: order, ideal classes, field ===")
triple = rm_triple(5, 1)
print(f"order            {triple.order}  (discriminant {triple.order.discriminant})")
print(f"field            Q(sqrt(5)), discriminant {triple.field_discriminant}")
print("ideal classes   ", ", ".join(str(g) for g in triple.ideal_classes))
print(f"matching count   {len(triple.ideal_classes)} = h(Q(sqrt(-5)))")

print("\n=== The scan is total: a limit makes failure explicit ===")
try:
    rm_conductor(5, 1, search_limit=3)
except SearchLimitExceeded as exc:
    print(f"limit 3 fails as expected: {exc}")
