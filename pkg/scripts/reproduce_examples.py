#!/usr/bin/env python3
"""Walk through the worked examples end to end and print a short report.

    python scripts/reproduce_examples.py
"""

from __future__ import annotations

import sys
from pathlib import Path

ROOT = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT / "src"))

from k0heap.category import (  # noqa: E402
    compare_projection,
    k0_group,
    k0_presentation,
    split_presentation,
    truss_table,
)
from k0heap.heaps import reduce_word, word  # noqa: E402
from k0heap.instances import (  # noqa: E402
    CWComplexSpec,
    bounded_abelian_groups_file,
    cw_class,
    cw_word,
    finite_sets_spec,
    set_label,
    swindle_spec,
    vect_spec,
)
from k0heap.dsl import bracket_text  # noqa: E402
from k0heap.presentation import (  # noqa: E402
    AffineWord,
    retract_group_structure,
    truss_from_table,
    word_equal,
)


def shape(invariants):
    parts = ["Z"] * invariants.rank + [f"Z/{d}" for d in invariants.torsion]
    return " + ".join(parts) if parts else "0"


def main() -> None:
    print("== free heap words ==")
    for letters in (("x", "x", "y"), ("a", "b", "b", "a", "c")):
        w = word(*letters)
        print(f"  reduce {w} -> {reduce_word(w)}")

    print("\n== finite sets, bound 8 ==")
    sets8 = finite_sets_spec(8)
    gs = k0_group(sets8, "empty")
    print(f"  retract group at empty: {shape(gs.invariants)}")
    coords = {n: gs.class_coordinates(AffineWord.generator(set_label(n)))[0] for n in (1, 3, 8)}
    print(f"  class coordinates: {coords}")
    check = truss_from_table(k0_presentation(sets8), truss_table(sets8))
    two_times_three = check.truss.product(AffineWord.generator("2"), AffineWord.generator("3"))
    print(f"  truss ideal check: ok={check.ok}, omitted pairs={len(check.omitted)}")
    print(f"  2 * 3 = {two_times_three}")

    print("\n== vector spaces, bound 8 ==")
    v = vect_spec(8)
    print(f"  retract group at 0: {shape(k0_group(v, '0').invariants)}")
    print(f"  split vs full: {compare_projection(split_presentation(v), k0_presentation(v)).classification}")

    print("\n== infinite-dimensional swindle, bound 6 ==")
    sw = swindle_spec(6)
    p = k0_presentation(sw)
    collapsed = all(
        word_equal(p, AffineWord.generator(str(n)), AffineWord.generator("0")) for n in range(7)
    )
    print(f"  every bounded class equals the zero class: {collapsed}")
    print(f"  retract group: {shape(k0_group(sw, '0').invariants)}")

    print("\n== bounded abelian groups ==")
    z = bounded_abelian_groups_file()
    full = k0_presentation(z)
    split = split_presentation(z)
    print(f"  full retract group at 0: {shape(k0_group(z, '0').invariants)}")
    print(f"  split vs full: {compare_projection(split, full).classification}")
    torsion = AffineWord.generator("Z/2")
    print(f"  Z/2 class in full coordinates: {k0_group(z, '0').class_coordinates(torsion)}")
    print(f"  Z/2 class in split coordinates: {retract_group_structure(split, '0').class_coordinates(torsion)}")

    print("\n== CW cell words ==")
    torus_like = CWComplexSpec((1, 2, 1))
    for convention in ("same-index", "boundary"):
        tree = cw_word(torus_like, convention)
        cls = cw_class(torus_like, convention)
        print(f"  {convention}: {bracket_text(tree)}")
        print(f"    expands to {cls}")


if __name__ == "__main__":
    main()
