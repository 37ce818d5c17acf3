"""Concrete category generators: finite sets, vector spaces, swindles, CW cells.

Infinite categories are truncated to a size bound: objects beyond the bound
are omitted and so are pushout/sum/product entries whose result would leave
the range.  Truncation is honest: downstream checks report the omitted
pairs instead of failing.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources

from .category import CategorySpec, PushoutEntry, pushout_sort_key
from .presentation import AffineWord, combine


def set_label(k: int) -> str:
    return "empty" if k == 0 else str(k)


class _UnionFind:
    def __init__(self, items):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[rb] = ra


@dataclass(frozen=True)
class FiniteSetSpan:
    """Span A <-f- B -g-> C with f injective; elements are 0-based indices."""

    size_a: int
    size_b: int
    size_c: int
    injection: tuple[int, ...]  # f: B -> A
    attach: tuple[int, ...]  # g: B -> C

    def __post_init__(self):
        if min(self.size_a, self.size_b, self.size_c) < 0:
            raise ValueError("set sizes must be non-negative")
        if len(self.injection) != self.size_b or len(self.attach) != self.size_b:
            raise ValueError("f and g must be total on B")
        if any(not 0 <= x < self.size_a for x in self.injection):
            raise ValueError("f must land in A")
        if any(not 0 <= x < self.size_c for x in self.attach):
            raise ValueError("g must land in C")
        if len(set(self.injection)) != self.size_b:
            raise ValueError("f must be injective (the monomorphic leg)")


@dataclass(frozen=True)
class SetPushoutResult:
    size: int
    classes: tuple[tuple[str, ...], ...]


def set_pushout(span: FiniteSetSpan) -> SetPushoutResult:
    """Quotient of the disjoint union A + C by f(b) ~ g(b), via union-find.

    With f injective the identifications form no cycles, so the size is
    exactly |A| - |B| + |C|.
    """
    items = [f"a{i}" for i in range(span.size_a)] + [f"c{j}" for j in range(span.size_c)]
    uf = _UnionFind(items)
    for b in range(span.size_b):
        uf.union(f"a{span.injection[b]}", f"c{span.attach[b]}")
    groups: dict[str, list[str]] = {}
    for x in items:
        groups.setdefault(uf.find(x), []).append(x)
    classes = tuple(tuple(sorted(g)) for g in sorted(groups.values()))
    return SetPushoutResult(size=len(groups), classes=classes)


def _canonical_span(a: int, b: int, c: int) -> FiniteSetSpan:
    # b <= a and b <= c: take both legs to be the first-b-elements inclusion
    return FiniteSetSpan(
        size_a=a,
        size_b=b,
        size_c=c,
        injection=tuple(range(b)),
        attach=tuple(range(b)),
    )


def finite_sets_spec(n: int) -> CategorySpec:
    """Cardinality classes 'empty', '1' ... 'n' with all bounded pushouts.

    Every entry is cross-validated against a concrete union-find pushout.
    The product table is cartesian (truncated at the bound) with unit '1';
    sums are disjoint unions with 'empty' as the unit.  There is no zero
    object: this category is unpointed.
    """
    if n < 1:
        raise ValueError("bound must be >= 1")
    objects = tuple(set_label(k) for k in range(n + 1))
    entries = []
    for b in range(n + 1):
        for a in range(b, n + 1):
            for c in range(b, n + 1):
                d = a - b + c
                if d > n:
                    continue
                concrete = set_pushout(_canonical_span(a, b, c))
                if concrete.size != d:
                    raise AssertionError(f"pushout size oracle disagrees on ({a}, {b}, {c})")
                entries.append(
                    PushoutEntry(
                        apex=set_label(b),
                        left=set_label(a),
                        right=set_label(c),
                        result=set_label(d),
                        left_mono=True,
                        right_mono=True,
                    )
                )
    entries.sort(key=pushout_sort_key)
    sums = {
        (set_label(a), set_label(b)): set_label(a + b)
        for a in range(n + 1)
        for b in range(n + 1)
        if a + b <= n
    }
    products = {
        (set_label(a), set_label(b)): set_label(a * b)
        for a in range(n + 1)
        for b in range(n + 1)
        if a * b <= n
    }
    return CategorySpec(
        objects=objects,
        pushouts=tuple(entries),
        zero=None,
        sums=sums,
        products=products,
        unit="1",
    )


def vect_spec(n: int) -> CategorySpec:
    """Finite-dimensional vector spaces by dimension label '0' ... 'n'.

    Pushouts follow dimension arithmetic: the left leg b -> a is the
    monomorphic one (b <= a), the right leg is any map, and the result is
    a - b + c.  The zero object is '0', sums and products are truncated
    addition and multiplication with unit '1'.
    """
    if n < 1:
        raise ValueError("bound must be >= 1")
    objects = tuple(str(k) for k in range(n + 1))
    entries = []
    for b in range(n + 1):
        for a in range(b, n + 1):
            for c in range(n + 1):
                d = a - b + c
                if d > n:
                    continue
                entries.append(
                    PushoutEntry(
                        apex=str(b),
                        left=str(a),
                        right=str(c),
                        result=str(d),
                        left_mono=True,
                        right_mono=b <= c,
                    )
                )
    entries.sort(key=pushout_sort_key)
    sums = {(str(a), str(b)): str(a + b) for a in range(n + 1) for b in range(n + 1) if a + b <= n}
    products = {
        (str(a), str(b)): str(a * b) for a in range(n + 1) for b in range(n + 1) if a * b <= n
    }
    return CategorySpec(
        objects=objects,
        pushouts=tuple(entries),
        zero="0",
        sums=sums,
        products=products,
        unit="1",
    )


def swindle_spec(n: int) -> CategorySpec:
    """vect_spec(n) plus an absorbing object 'omega' with V + omega = omega.

    Each absorption V + omega = omega is a pushout along the zero object
    with both legs monomorphic; its relation collapses the class of V onto
    the class of 0, so the whole retract group is trivial.
    """
    base = vect_spec(n)
    objects = base.objects + ("omega",)
    entries = list(base.pushouts)
    for v in list(base.objects) + ["omega"]:
        entries.append(
            PushoutEntry(
                apex="0",
                left=v,
                right="omega",
                result="omega",
                left_mono=True,
                right_mono=True,
            )
        )
    entries.sort(key=pushout_sort_key)
    sums = dict(base.sums)
    for v in objects:
        sums[(v, "omega")] = "omega"
        sums[("omega", v)] = "omega"
    products = dict(base.products)
    for k in range(1, n + 1):
        products[(str(k), "omega")] = "omega"
        products[("omega", str(k))] = "omega"
    products[("omega", "omega")] = "omega"
    # tensoring with the zero object kills everything
    products[("0", "omega")] = "0"
    products[("omega", "0")] = "0"
    return CategorySpec(
        objects=objects,
        pushouts=tuple(entries),
        zero="0",
        sums=sums,
        products=products,
        unit="1",
    )


def bounded_abelian_groups_file() -> CategorySpec:
    """The shipped hand-written slice of finitely generated abelian groups.

    Short exact sequences 0 -> Z -n-> Z -> Z/n -> 0 appear as pushouts with
    a monomorphic leg; direct sums appear both as sum-table entries and as
    pushouts along the zero object.
    """
    from .dsl import SpecSource, parse_spec

    text = resources.files("k0heap").joinpath("data/zmod.cat").read_text(encoding="utf-8")
    result = parse_spec(SpecSource(text=text, name="zmod.cat"))
    if result.spec is None:
        raise RuntimeError("bundled zmod.cat failed to parse: " + "; ".join(
            d.message for d in result.diagnostics
        ))
    return result.spec


CW_CONVENTIONS = ("same-index", "boundary")


@dataclass(frozen=True)
class CWComplexSpec:
    """Cell counts per dimension; index k holds the number of k-cells."""

    cell_counts: tuple[int, ...]

    def __post_init__(self):
        if not self.cell_counts:
            raise ValueError("a CW spec needs at least dimension 0")
        if self.cell_counts[0] < 1:
            raise ValueError("at least one 0-cell is required")
        if any(c < 0 for c in self.cell_counts):
            raise ValueError("cell counts must be non-negative")

    @property
    def dimension(self) -> int:
        return len(self.cell_counts) - 1


def parse_cell_counts(text: str) -> CWComplexSpec:
    """One cell count per line; blank lines and '#' comments are ignored."""
    counts = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            counts.append(int(line))
        except ValueError:
            raise ValueError(f"line {lineno}: expected an integer cell count, got {line!r}")
    return CWComplexSpec(cell_counts=tuple(counts))


def _check_convention(convention: str) -> str:
    if convention not in CW_CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}; pick one of {CW_CONVENTIONS}")
    return convention


def _sphere_index(k: int, convention: str) -> int:
    return k if convention == "same-index" else k - 1


def _disjoint_union_tree(label: str, count: int):
    # m copies glued over the initial object: [X, empty, X, empty, ..., X]
    if count == 0:
        return "empty"
    parts: list = []
    for i in range(count):
        if i:
            parts.append("empty")
        parts.append(label)
    return parts if len(parts) > 1 else parts[0]


def cw_word(c: CWComplexSpec, convention: str = "same-index"):
    """Unexpanded skeleton bracket [uD^n, uS^?, ..., uD^1, uS^?, X0].

    ``same-index`` attaches the k-disks along S^k, ``boundary`` along
    S^(k-1).  Disjoint unions stay as nested brackets over 'empty'.
    """
    _check_convention(convention)
    x0 = _disjoint_union_tree("pt", c.cell_counts[0])
    if c.dimension == 0:
        return x0
    node: list = []
    for k in range(c.dimension, 0, -1):
        count = c.cell_counts[k]
        node.append(_disjoint_union_tree(f"D{k}", count))
        node.append(_disjoint_union_tree(f"S{_sphere_index(k, convention)}", count))
    node.append(x0)
    return node


def cw_class(c: CWComplexSpec, convention: str = "same-index") -> AffineWord:
    """Fully expanded class: sum over k of m_k * (D^k - S^?) plus the 0-skeleton."""
    _check_convention(convention)
    parts: list[tuple[int, dict[str, int]]] = []
    m0 = c.cell_counts[0]
    parts.append((m0, {"pt": 1}))
    parts.append((-(m0 - 1), {"empty": 1}))
    for k in range(1, c.dimension + 1):
        m = c.cell_counts[k]
        parts.append((m, {f"D{k}": 1}))
        parts.append((-m, {f"S{_sphere_index(k, convention)}": 1}))
    return AffineWord.from_coefficients(combine(parts))
