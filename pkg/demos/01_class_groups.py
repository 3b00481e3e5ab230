#!/usr/bin/env python3
"""Tour of the quadratic forms engine: reduction, composition, class groups.

Run:  python demos/01_class_groups.py
"""

from rmarith import (
    BinaryQuadraticForm,
    class_group_structure,
    class_number,
    compose,
    enumerate_reduced_forms,
    reduce_form,
    two_part_decomposition,
)

print("=== Reduction ===")
f = BinaryQuadraticForm(3, 4, 2)
print(f"{f} has discriminant {f.discriminant}")
print(f"its unique reduced representative is {reduce_form(f)}")

g = BinaryQuadraticForm(1, 2, -1)
print(f"\n{g} is indefinite (discriminant {g.discriminant});")
print(f"reduction lands on its cycle: {reduce_form(g)}")

print("\n=== Class groups ===")
for d in (-23, -56, -84, -3299):
    forms = enumerate_reduced_forms(d)
    structure = class_group_structure(d)
    names = " x ".join(f"Z/{v}" for v in structure.elementary_divisors) or "trivial"
    print(f"D = {d:6d}: h = {structure.h:3d}, group {names}")
    if d == -23:
        print("          reduced forms:", ", ".join(str(q) for q in forms))

print("\n=== Composition is the group law ===")
f = BinaryQuadraticForm(2, 1, 3)  # D = -23
print(f"[{f}]^2 = [{compose(f, f)}]")
print(f"[{f}] * [{f.inverse()}] = [{compose(f, BinaryQuadraticForm(2, -1, 3))}]  (the principal class)")

print("\n=== Indefinite class numbers need the fundamental unit ===")
for d in (8, 40, 60):
    print(f"D = {d}: narrow h = {class_number(d, 'narrow')}, wide h = {class_number(d, 'wide')}")

print("\n=== Splitting off the 2-part ===")
for d in (-23, -56, -84):
    structure = class_group_structure(d)
    try:
        k, odd = two_part_decomposition(structure)
        print(f"D = {d}: Cl = Z/2^{k} + odd part {odd.elementary_divisors or '(trivial)'}")
    except Exception as exc:
        print(f"D = {d}: {exc}")
