import random

import pytest

from k0heap.category import (
    CategorySpec,
    FunctorSpec,
    InvalidSpecError,
    PushoutEntry,
    compare_projection,
    ensure_valid,
    functor_induced,
    k0_group,
    k0_presentation,
    split_presentation,
    truss_table,
    validate_spec,
)
from k0heap.instances import finite_sets_spec, vect_spec
from k0heap.presentation import (
    AbelianHeapPresentation,
    RelationVector,
    in_relation_lattice,
)


def entry(apex, left, right, result, lm=True, rm=False):
    return PushoutEntry(apex=apex, left=left, right=right, result=result, left_mono=lm, right_mono=rm)


def test_validate_wellformed_spec_is_clean():
    assert validate_spec(finite_sets_spec(3)) == []


def test_validate_reports_unknown_label():
    s = CategorySpec(objects=("A",), pushouts=(entry("A", "A", "B", "A"),))
    issues = validate_spec(s)
    assert any(i.severity == "error" and "'B'" in i.message for i in issues)
    with pytest.raises(InvalidSpecError):
        ensure_valid(s)


def test_validate_flags_missing_mono_leg():
    s = CategorySpec(objects=("A",), pushouts=(entry("A", "A", "A", "A", lm=False, rm=False),))
    issues = validate_spec(s)
    assert any(i.severity == "warning" and "monomorphic" in i.message for i in issues)
    # warnings do not make the spec invalid
    ensure_valid(s)


def test_zero_sum_coherence_checked():
    s = CategorySpec(objects=("0", "A"), zero="0", sums={("0", "A"): "0"})
    issues = validate_spec(s)
    assert any("zero-object law" in i.message for i in issues)


def test_presentation_of_free_spec():
    s = CategorySpec(objects=("A", "B"))
    p = k0_presentation(s)
    assert p.generators == ("A", "B")
    assert p.relations == ()


def test_presentation_transcribes_entries():
    s = CategorySpec(objects=("X", "Y", "Z", "W"), pushouts=(entry("Y", "X", "Z", "W"),))
    p = k0_presentation(s)
    assert p.relations == (RelationVector.from_coefficients({"X": 1, "Y": -1, "Z": 1, "W": -1}),)


def test_identity_pushouts_drop_to_zero():
    # X = X along the identity apex, in both orientations
    s = CategorySpec(
        objects=("X", "Y"),
        pushouts=(entry("X", "X", "Y", "Y"), entry("X", "Y", "X", "Y", lm=False, rm=True)),
    )
    assert k0_presentation(s).relations == ()


def test_unqualified_entries_generate_no_relation():
    s = CategorySpec(objects=("X", "Y", "Z", "W"), pushouts=(entry("Y", "X", "Z", "W", lm=False, rm=False),))
    assert k0_presentation(s).relations == ()


def test_single_object_spec_has_trivial_group():
    s = CategorySpec(objects=("0",))
    gs = k0_group(s, "0")
    assert gs.invariants.is_trivial
    assert gs.report_lines()[-1] == "class 0"


def test_presentation_insensitive_to_entry_order():
    s = finite_sets_spec(4)
    entries = list(s.pushouts)
    rng = random.Random(1)
    rng.shuffle(entries)
    shuffled = CategorySpec(
        objects=s.objects,
        pushouts=tuple(entries),
        zero=s.zero,
        sums=s.sums,
        products=s.products,
        unit=s.unit,
    )
    p1 = k0_presentation(s)
    p2 = k0_presentation(shuffled)
    for r in p1.relations:
        assert in_relation_lattice(p2, r.as_dict())
    for r in p2.relations:
        assert in_relation_lattice(p1, r.as_dict())


def test_split_presentation_requires_sums_and_zero():
    with pytest.raises(ValueError):
        split_presentation(finite_sets_spec(2))  # sums but no zero object
    with pytest.raises(ValueError):
        split_presentation(CategorySpec(objects=("0",), zero="0"))


def test_split_presentation_transcription():
    s = CategorySpec(
        objects=("0", "a", "b", "ab"),
        zero="0",
        sums={("a", "b"): "ab", ("0", "a"): "a"},
    )
    p = split_presentation(s)
    assert p.relations == (RelationVector.from_coefficients({"a": 1, "0": -1, "b": 1, "ab": -1}),)


def test_split_empty_sums_table_gives_free_presentation():
    s = CategorySpec(objects=("0", "a"), zero="0", sums={("0", "a"): "a"})
    assert split_presentation(s).relations == ()


def test_compare_projection_on_vect_is_isomorphism():
    v = vect_spec(6)
    report = compare_projection(split_presentation(v), k0_presentation(v))
    assert report.contained and report.equal
    assert report.classification == "isomorphism"


def test_compare_projection_trivial_containment():
    s = CategorySpec(objects=("0", "a"), zero="0", sums={("0", "a"): "a"})
    report = compare_projection(split_presentation(s), k0_presentation(s))
    assert report.contained


def test_compare_projection_generator_mismatch():
    a = AbelianHeapPresentation(generators=("x",), relations=())
    b = AbelianHeapPresentation(generators=("y",), relations=())
    with pytest.raises(ValueError):
        compare_projection(a, b)


def test_projection_containment_holds_with_sum_pushouts():
    # sums consistent with pushouts along zero: containment must hold
    for spec in (vect_spec(4), vect_spec(7)):
        report = compare_projection(split_presentation(spec), k0_presentation(spec))
        assert report.contained


def test_basepoint_independence_of_invariants():
    s = finite_sets_spec(5)
    shapes = {k0_group(s, base).invariants for base in s.objects}
    assert len(shapes) == 1
    z = CategorySpec(
        objects=("e", "a", "b"),
        pushouts=(entry("a", "b", "b", "e"),),
    )
    shapes = {k0_group(z, base).invariants for base in z.objects}
    assert len(shapes) == 1


def test_functor_inclusion_of_set_bounds():
    f = FunctorSpec(
        source=finite_sets_spec(3),
        target=finite_sets_spec(5),
        object_map={o: o for o in finite_sets_spec(3).objects},
    )
    report = functor_induced(f)
    assert report.heap.ok
    assert report.truss_checked
    assert report.truss_ok
    assert report.truss_omitted == ()


def test_functor_identity():
    s = vect_spec(3)
    report = functor_induced(FunctorSpec(source=s, target=s, object_map={o: o for o in s.objects}))
    assert report.heap.ok
    assert report.truss_ok


def test_functor_breaking_a_relation():
    src = CategorySpec(objects=("X", "Y", "Z", "W"), pushouts=(entry("Y", "X", "Z", "W"),))
    dst = CategorySpec(objects=("X", "Y", "Z", "W"))
    report = functor_induced(
        FunctorSpec(source=src, target=dst, object_map={o: o for o in src.objects})
    )
    assert not report.heap.ok
    assert report.heap.witness == k0_presentation(src).relations[0]


def test_functor_partial_map_rejected():
    s = CategorySpec(objects=("A", "B"))
    with pytest.raises(ValueError):
        functor_induced(FunctorSpec(source=s, target=s, object_map={"A": "A"}))


def test_functor_product_mismatch_reported():
    src = CategorySpec(objects=("1", "a"), products={("a", "a"): "a"}, unit="1")
    dst = CategorySpec(objects=("1", "a"), products={("a", "a"): "1"}, unit="1")
    report = functor_induced(
        FunctorSpec(source=src, target=dst, object_map={"1": "1", "a": "a"})
    )
    assert report.heap.ok
    assert report.truss_checked
    assert not report.truss_ok
    assert report.truss_witness == ("a", "a", "a", "1")


def test_truss_table_requires_products():
    with pytest.raises(ValueError):
        truss_table(CategorySpec(objects=("A",)))


def test_spec_equality_ignores_entry_order():
    s = finite_sets_spec(3)
    reversed_entries = CategorySpec(
        objects=s.objects,
        pushouts=tuple(reversed(s.pushouts)),
        zero=s.zero,
        sums=dict(s.sums),
        products=dict(s.products),
        unit=s.unit,
    )
    assert s == reversed_entries
