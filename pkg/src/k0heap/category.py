"""From finite category descriptions to heap presentations and retract groups.

A category is ingested as data: object labels (one per isomorphism class),
enumerated pushout squares with per-leg monomorphism flags, and optional
zero object, direct-sum table and product table.  Each pushout square with
at least one monomorphic leg contributes the relation
left - apex + right - result; squares whose relation cancels to the zero
vector (for instance pushouts along an identity) are dropped.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import (
    AbelianHeapPresentation,
    AffineWord,
    GroupStructure,
    MorphismReport,
    RelationVector,
    TrussTable,
    combine,
    in_relation_lattice,
    induced_morphism,
    retract_group_structure,
)


class InvalidSpecError(ValueError):
    def __init__(self, issues):
        super().__init__("; ".join(i.message for i in issues))
        self.issues = tuple(issues)


@dataclass(frozen=True)
class SpecIssue:
    severity: str  # "error" or "warning"
    message: str


@dataclass(frozen=True)
class PushoutEntry:
    apex: str
    left: str
    right: str
    result: str
    left_mono: bool = False
    right_mono: bool = False

    @property
    def qualifies(self) -> bool:
        """Only squares with a monomorphic leg generate relations."""
        return self.left_mono or self.right_mono

    def relation_coefficients(self) -> dict[str, int]:
        return combine(
            [
                (1, {self.left: 1}),
                (-1, {self.apex: 1}),
                (1, {self.right: 1}),
                (-1, {self.result: 1}),
            ]
        )


def pushout_sort_key(e: PushoutEntry):
    return (e.apex, e.left, e.right, e.result, e.left_mono, e.right_mono)


@dataclass(frozen=True, eq=False)
class CategorySpec:
    """Finite category description; equality ignores entry order."""

    objects: tuple[str, ...]
    pushouts: tuple[PushoutEntry, ...] = ()
    zero: str | None = None
    sums: dict | None = None
    products: dict | None = None
    unit: str | None = None

    def __eq__(self, other) -> bool:
        if not isinstance(other, CategorySpec):
            return NotImplemented
        return (
            self.objects == other.objects
            and sorted(self.pushouts, key=pushout_sort_key) == sorted(other.pushouts, key=pushout_sort_key)
            and self.zero == other.zero
            and (self.sums or {}) == (other.sums or {})
            and (self.products or {}) == (other.products or {})
            and self.unit == other.unit
        )

    __hash__ = None


@dataclass(frozen=True)
class FunctorSpec:
    source: CategorySpec
    target: CategorySpec
    object_map: dict = field(default_factory=dict)


def validate_spec(s: CategorySpec) -> list[SpecIssue]:
    """Label closure, mono-flag presence, and sum/zero coherence diagnostics."""
    issues: list[SpecIssue] = []
    seen = set()
    for o in s.objects:
        if o in seen:
            issues.append(SpecIssue("error", f"duplicate object {o!r}"))
        seen.add(o)

    def known(label: str, where: str):
        if label not in seen:
            issues.append(SpecIssue("error", f"{where} references unknown object {label!r}"))

    for e in s.pushouts:
        for label in (e.apex, e.left, e.right, e.result):
            known(label, "pushout entry")
        if not e.qualifies:
            issues.append(
                SpecIssue(
                    "warning",
                    f"pushout ({e.left!r} <- {e.apex!r} -> {e.right!r}) has no monomorphic leg "
                    "and generates no relation",
                )
            )
    if s.zero is not None:
        known(s.zero, "zero declaration")
    if s.unit is not None:
        known(s.unit, "unit declaration")
    for (a, b), c in (s.sums or {}).items():
        for label in (a, b, c):
            known(label, "sum entry")
        if s.zero is not None:
            if a == s.zero and c != b:
                issues.append(SpecIssue("error", f"sum {a} + {b} = {c} breaks the zero-object law"))
            elif b == s.zero and c != a:
                issues.append(SpecIssue("error", f"sum {a} + {b} = {c} breaks the zero-object law"))
    for (a, b), c in (s.products or {}).items():
        for label in (a, b, c):
            known(label, "product entry")
    return issues


def ensure_valid(s: CategorySpec) -> None:
    errors = [i for i in validate_spec(s) if i.severity == "error"]
    if errors:
        raise InvalidSpecError(errors)


def k0_presentation(s: CategorySpec) -> AbelianHeapPresentation:
    """Generators are the objects; one relation per qualifying pushout square."""
    ensure_valid(s)
    relations = []
    for e in s.pushouts:
        if not e.qualifies:
            continue
        coeffs = e.relation_coefficients()
        if coeffs:
            relations.append(RelationVector.from_coefficients(coeffs))
    return AbelianHeapPresentation(generators=s.objects, relations=tuple(relations))


def k0_group(s: CategorySpec, base: str) -> GroupStructure:
    return retract_group_structure(k0_presentation(s), base)


def split_presentation(s: CategorySpec) -> AbelianHeapPresentation:
    """Relations from the direct-sum table only: A + B - zero - (A+B)."""
    ensure_valid(s)
    if s.sums is None or s.zero is None:
        raise ValueError("split presentation needs both a sums table and a zero object")
    relations = []
    for (a, b), c in sorted(s.sums.items()):
        coeffs = combine([(1, {a: 1}), (-1, {s.zero: 1}), (1, {b: 1}), (-1, {c: 1})])
        if coeffs:
            relations.append(RelationVector.from_coefficients(coeffs))
    return AbelianHeapPresentation(generators=s.objects, relations=tuple(relations))


@dataclass(frozen=True)
class ProjectionReport:
    """Comparison of the split relation lattice against the full one."""

    contained: bool
    equal: bool
    witness: RelationVector | None = None

    @property
    def strict(self) -> bool:
        return self.contained and not self.equal

    @property
    def classification(self) -> str:
        if not self.contained:
            return "not-contained"
        return "isomorphism" if self.equal else "proper-projection"


def compare_projection(
    split: AbelianHeapPresentation, full: AbelianHeapPresentation
) -> ProjectionReport:
    if split.generators != full.generators:
        raise ValueError("presentations must share the same generator tuple")
    for rel in split.relations:
        if not in_relation_lattice(full, rel.as_dict()):
            return ProjectionReport(contained=False, equal=False, witness=rel)
    for rel in full.relations:
        if not in_relation_lattice(split, rel.as_dict()):
            return ProjectionReport(contained=True, equal=False, witness=rel)
    return ProjectionReport(contained=True, equal=True)


def truss_table(s: CategorySpec) -> TrussTable:
    """Lift the object-level product table to single-generator affine words."""
    if s.products is None:
        raise ValueError("spec has no product table")
    entries = {
        (a, b): AffineWord.generator(c) for (a, b), c in sorted(s.products.items())
    }
    return TrussTable(entries=entries, unit=s.unit)


@dataclass(frozen=True)
class FunctorReport:
    heap: MorphismReport
    truss_checked: bool
    truss_ok: bool | None = None
    truss_witness: tuple | None = None
    truss_omitted: tuple[tuple[str, str], ...] = ()


def functor_induced(f: FunctorSpec) -> FunctorReport:
    """Heap morphism induced on presentations by an object map, plus truss status.

    The truss layer is checked only when both specs carry product tables:
    mapped product entries must agree label-for-label and units must
    correspond; source pairs whose image pair is missing from the target
    table are reported as omitted.
    """
    ensure_valid(f.source)
    ensure_valid(f.target)
    targets = set(f.target.objects)
    for o in f.source.objects:
        if o not in f.object_map:
            raise ValueError(f"object map is not total: missing {o!r}")
        if f.object_map[o] not in targets:
            raise ValueError(f"object map sends {o!r} outside the target objects")
    genmap = {o: AffineWord.generator(f.object_map[o]) for o in f.source.objects}
    heap = induced_morphism(k0_presentation(f.source), k0_presentation(f.target), genmap)

    checked = f.source.products is not None and f.target.products is not None
    if not checked:
        return FunctorReport(heap=heap, truss_checked=False)

    omitted: list[tuple[str, str]] = []
    truss_ok: bool = True
    witness: tuple | None = None
    for (a, b), c in sorted(f.source.products.items()):
        image_pair = (f.object_map[a], f.object_map[b])
        image_c = f.target.products.get(image_pair)
        if image_c is None:
            omitted.append((a, b))
            continue
        if image_c != f.object_map[c]:
            truss_ok = False
            witness = (a, b, c, image_c)
            break
    if truss_ok and f.source.unit is not None:
        if f.target.unit is None or f.object_map[f.source.unit] != f.target.unit:
            truss_ok = False
            witness = ("unit", f.source.unit)
    return FunctorReport(
        heap=heap,
        truss_checked=True,
        truss_ok=truss_ok,
        truss_witness=witness,
        truss_omitted=tuple(omitted),
    )
