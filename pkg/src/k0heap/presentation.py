"""Finitely presented abelian heaps.

Elements are affine words: finitely supported integer coefficient vectors
over generators with coefficient sum 1 (the abelian normal form of an
iterated bracket, since [a, b, c] = a - b + c once a basepoint exists).
Relations are sum-zero vectors; two words are equal exactly when their
difference lies in the integer span of the relations, decided through the
Hermite normal form of the relation matrix.  Retract groups are read off
the Smith normal form in basepoint-relative coordinates.

Presentations are immutable and hashable; the Hermite basis is cached per
presentation, so repeated equality queries are cheap and concurrency-safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping

from .heaps import check_label
from .lattice import IntMatrix, InvariantFactors, hnf, residue, smith_decomposition


class UnknownGeneratorError(ValueError):
    pass


class MissingProductError(ValueError):
    def __init__(self, pair: tuple[str, str]):
        super().__init__(f"no product entry for ({pair[0]}, {pair[1]})")
        self.pair = pair


def _clean_terms(coeffs: Mapping[str, int]) -> tuple[tuple[str, int], ...]:
    items = []
    for label, c in coeffs.items():
        check_label(label)
        if c:
            items.append((label, int(c)))
    items.sort()
    return tuple(items)


def _terms_text(terms: tuple[tuple[str, int], ...]) -> str:
    if not terms:
        return "0"
    return " ".join(f"{label}:{c}" for label, c in terms)


@dataclass(frozen=True)
class AffineWord:
    """Integer combination of generators with coefficient sum 1."""

    terms: tuple[tuple[str, int], ...]

    def __post_init__(self):
        total = sum(c for _, c in self.terms)
        if total != 1:
            raise ValueError(f"affine word coefficients must sum to 1, got {total}")

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[str, int]) -> "AffineWord":
        return cls(_clean_terms(coeffs))

    @classmethod
    def generator(cls, label: str) -> "AffineWord":
        return cls(((check_label(label), 1),))

    def coefficient(self, label: str) -> int:
        for name, c in self.terms:
            if name == label:
                return c
        return 0

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.terms)

    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    def __str__(self) -> str:
        return _terms_text(self.terms)


@dataclass(frozen=True)
class RelationVector:
    """Integer combination of generators with coefficient sum 0."""

    terms: tuple[tuple[str, int], ...]

    def __post_init__(self):
        total = sum(c for _, c in self.terms)
        if total != 0:
            raise ValueError(f"relation coefficients must sum to 0, got {total}")

    @classmethod
    def from_coefficients(cls, coeffs: Mapping[str, int]) -> "RelationVector":
        return cls(_clean_terms(coeffs))

    def coefficient(self, label: str) -> int:
        for name, c in self.terms:
            if name == label:
                return c
        return 0

    @property
    def support(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def as_dict(self) -> dict[str, int]:
        return dict(self.terms)

    def __str__(self) -> str:
        return _terms_text(self.terms)


def combine(parts: Iterable[tuple[int, Mapping[str, int]]]) -> dict[str, int]:
    """Integer linear combination of coefficient maps, zeros dropped."""
    acc: dict[str, int] = {}
    for coeff, mapping in parts:
        if not coeff:
            continue
        for label, c in mapping.items():
            acc[label] = acc.get(label, 0) + coeff * c
    return {k: v for k, v in acc.items() if v}


def bracket(a: AffineWord, b: AffineWord, c: AffineWord) -> AffineWord:
    """The heap bracket on affine words: a - b + c."""
    return AffineWord.from_coefficients(
        combine([(1, a.as_dict()), (-1, b.as_dict()), (1, c.as_dict())])
    )


def normalize_affine(tree) -> AffineWord:
    """Alternating-sign expansion of a nested bracket expression.

    ``tree`` is a generator label or an odd-length sequence of subtrees;
    signs alternate +,-,+,... inside every node.
    """
    return AffineWord.from_coefficients(_expand(tree, 1))


def _expand(node, sign: int) -> dict[str, int]:
    if isinstance(node, str):
        return {check_label(node): sign}
    children = list(node)
    if not children or len(children) % 2 == 0:
        raise ValueError(f"bracket nodes need odd arity >= 1, got {len(children)}")
    acc: dict[str, int] = {}
    for i, child in enumerate(children):
        child_sign = sign if i % 2 == 0 else -sign
        for label, c in _expand(child, child_sign).items():
            acc[label] = acc.get(label, 0) + c
    return {k: v for k, v in acc.items() if v}


@dataclass(frozen=True)
class AbelianHeapPresentation:
    generators: tuple[str, ...]
    relations: tuple[RelationVector, ...]

    def __post_init__(self):
        if not self.generators:
            raise ValueError("a presentation needs at least one generator")
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("generators must be distinct")
        for g in self.generators:
            check_label(g)
        known = set(self.generators)
        for r in self.relations:
            for g in r.support:
                if g not in known:
                    raise UnknownGeneratorError(f"relation mentions unknown generator {g!r}")

    def check_support(self, w: AffineWord | RelationVector) -> None:
        known = set(self.generators)
        for g in w.support:
            if g not in known:
                raise UnknownGeneratorError(f"unknown generator {g!r}")


@lru_cache(maxsize=None)
def _relation_hnf(p: AbelianHeapPresentation) -> IntMatrix:
    rows = [[r.coefficient(g) for g in p.generators] for r in p.relations]
    h, _ = hnf(IntMatrix.from_rows(rows, cols=len(p.generators)))
    return h


def in_relation_lattice(p: AbelianHeapPresentation, coeffs: Mapping[str, int]) -> bool:
    """True when the sum-zero vector lies in the span of the relations of ``p``."""
    vec = [coeffs.get(g, 0) for g in p.generators]
    return not any(residue(_relation_hnf(p), vec))


def word_equal(p: AbelianHeapPresentation, w1: AffineWord, w2: AffineWord) -> bool:
    p.check_support(w1)
    p.check_support(w2)
    diff = combine([(1, w1.as_dict()), (-1, w2.as_dict())])
    return in_relation_lattice(p, diff)


@dataclass(frozen=True)
class GroupStructure:
    """Retract group of a presented abelian heap at a basepoint.

    ``class_coordinates`` maps a word to rank + torsion many integers, the
    free coordinates first, each torsion coordinate reduced into [0, d).
    The basepoint maps to the zero vector and the map is constant on
    word_equal classes.
    """

    generators: tuple[str, ...]
    base: str
    axis: tuple[str, ...]
    invariants: InvariantFactors
    _transform: tuple[tuple[int, ...], ...]
    _free_columns: tuple[int, ...]
    _torsion_columns: tuple[tuple[int, int], ...]

    def class_coordinates(self, w: AffineWord) -> tuple[int, ...]:
        known = set(self.generators)
        for g in w.support:
            if g not in known:
                raise UnknownGeneratorError(f"unknown generator {g!r}")
        v = [w.coefficient(g) for g in self.axis]
        n = len(self.axis)
        image = [sum(v[i] * self._transform[i][j] for i in range(n)) for j in range(n)]
        free = [image[j] for j in self._free_columns]
        torsion = [image[j] % d for j, d in self._torsion_columns]
        return tuple(free + torsion)

    def report_lines(self) -> list[str]:
        lines = [f"base {self.base}", f"rank {self.invariants.rank}"]
        if self.invariants.torsion:
            lines.append("torsion " + " ".join(str(d) for d in self.invariants.torsion))
        else:
            lines.append("torsion none")
        for g in self.generators:
            coords = self.class_coordinates(AffineWord.generator(g))
            suffix = (" " + " ".join(str(c) for c in coords)) if coords else ""
            lines.append(f"class {g}{suffix}")
        return lines


def retract_group_structure(p: AbelianHeapPresentation, base: str) -> GroupStructure:
    """Structure of the retract group at ``base``.

    Substituting g -> (g - base) identifies the sum-zero sublattice with
    Z^(n-1); the Smith normal form of the relation matrix in those
    coordinates yields invariant factors and a canonical coordinate map.
    """
    if base not in p.generators:
        raise UnknownGeneratorError(f"basepoint {base!r} is not a generator")
    axis = tuple(g for g in p.generators if g != base)
    rows = [[r.coefficient(g) for g in axis] for r in p.relations]
    dec = smith_decomposition(IntMatrix.from_rows(rows, cols=len(axis)))
    r = dec.pivot_count
    n = len(axis)
    free_columns = tuple(range(r, n))
    torsion_columns = tuple((j, dec.diagonal[j]) for j in range(r) if dec.diagonal[j] > 1)
    invariants = InvariantFactors(rank=n - r, torsion=tuple(d for _, d in torsion_columns))
    transform = tuple(dec.right.row(i) for i in range(n))
    return GroupStructure(
        generators=p.generators,
        base=base,
        axis=axis,
        invariants=invariants,
        _transform=transform,
        _free_columns=free_columns,
        _torsion_columns=torsion_columns,
    )


@dataclass(frozen=True)
class PresentationMorphism:
    source: AbelianHeapPresentation
    target: AbelianHeapPresentation
    images: dict

    def apply(self, w: AffineWord) -> AffineWord:
        self.source.check_support(w)
        return AffineWord.from_coefficients(
            combine([(c, self.images[g].as_dict()) for g, c in w.terms])
        )


@dataclass(frozen=True)
class MorphismReport:
    ok: bool
    witness: RelationVector | None = None
    morphism: PresentationMorphism | None = None


def induced_morphism(
    src: AbelianHeapPresentation,
    dst: AbelianHeapPresentation,
    genmap: Mapping[str, AffineWord],
) -> MorphismReport:
    """Check that mapping generators by ``genmap`` sends relations into relations.

    On success the linear extension is returned; on failure the first
    offending source relation is the witness.
    """
    for g in src.generators:
        if g not in genmap:
            raise ValueError(f"generator map is not total: missing {g!r}")
        dst.check_support(genmap[g])
    for rel in src.relations:
        pushed = combine([(c, genmap[g].as_dict()) for g, c in rel.terms])
        if not in_relation_lattice(dst, pushed):
            return MorphismReport(ok=False, witness=rel)
    images = {g: genmap[g] for g in src.generators}
    return MorphismReport(
        ok=True, morphism=PresentationMorphism(source=src, target=dst, images=images)
    )


@dataclass(frozen=True)
class TrussTable:
    """Products of generator pairs as affine words, with an optional unit label."""

    entries: dict
    unit: str | None = None


@dataclass(frozen=True)
class TrussViolation:
    relation: RelationVector
    side: str
    generator: str


@dataclass(frozen=True)
class Truss:
    """Validated multiplicative structure on a presented abelian heap."""

    presentation: AbelianHeapPresentation
    table: TrussTable

    def product(self, w1: AffineWord, w2: AffineWord) -> AffineWord:
        """Bilinear extension of the generator table; total coefficient stays 1."""
        self.presentation.check_support(w1)
        self.presentation.check_support(w2)
        parts = []
        for g, a in w1.terms:
            for h, b in w2.terms:
                entry = self.table.entries.get((g, h))
                if entry is None:
                    raise MissingProductError((g, h))
                parts.append((a * b, entry.as_dict()))
        return AffineWord.from_coefficients(combine(parts))


@dataclass(frozen=True)
class TrussCheck:
    ok: bool
    violation: TrussViolation | None
    omitted: tuple[tuple[str, str], ...]
    unit_law: str  # "ok", "violated", or "unchecked"
    truss: Truss | None


def truss_from_table(p: AbelianHeapPresentation, table: TrussTable) -> TrussCheck:
    """Validate that the relation lattice is a two-sided ideal for the table.

    For every relation r and generator x the pushforwards of r through
    left and right multiplication by x must stay in the lattice.  Pairs
    missing from a truncated table are skipped and reported as omitted.
    """
    known = set(p.generators)
    for (g, h), w in table.entries.items():
        if g not in known or h not in known:
            raise UnknownGeneratorError(f"product entry ({g!r}, {h!r}) mentions unknown generators")
        p.check_support(w)
    if table.unit is not None and table.unit not in known:
        raise UnknownGeneratorError(f"unit {table.unit!r} is not a generator")

    omitted: set[tuple[str, str]] = set()
    for rel in p.relations:
        for x in p.generators:
            for side in ("left", "right"):
                parts = []
                missing = False
                for g, c in rel.terms:
                    pair = (x, g) if side == "left" else (g, x)
                    entry = table.entries.get(pair)
                    if entry is None:
                        omitted.add(pair)
                        missing = True
                        break
                    parts.append((c, entry.as_dict()))
                if missing:
                    continue
                if not in_relation_lattice(p, combine(parts)):
                    return TrussCheck(
                        ok=False,
                        violation=TrussViolation(relation=rel, side=side, generator=x),
                        omitted=tuple(sorted(omitted)),
                        unit_law="unchecked",
                        truss=None,
                    )

    unit_law = "unchecked"
    if table.unit is not None:
        unit_law = "ok"
        for g in p.generators:
            gen = AffineWord.generator(g)
            for pair in ((table.unit, g), (g, table.unit)):
                entry = table.entries.get(pair)
                if entry is None:
                    omitted.add(pair)
                    continue
                if not word_equal(p, entry, gen):
                    unit_law = "violated"

    return TrussCheck(
        ok=True,
        violation=None,
        omitted=tuple(sorted(omitted)),
        unit_law=unit_law,
        truss=Truss(presentation=p, table=table),
    )


def truss_product(t: Truss, w1: AffineWord, w2: AffineWord) -> AffineWord:
    return t.product(w1, w2)
