"""Isomorphism classes of loop algebras over the punctured line.

Everything reduces to finite group theory on the diagram symmetry group:
R-isomorphism classes of loop algebras correspond to conjugacy classes of
Out, which in turn realize the nonabelian H^1 of the base (the fundamental
group of the punctured line is procyclic, so a class is pinned by the image
of the topological generator).  Passing from R-algebras to k-algebras merges
each class with the class of the inverse; over diagram symmetry groups the
merge does nothing because every element is conjugate to its inverse, and
the centroid pins the base ring, which is why the two counts agree.  Both
hypotheses are checked, not assumed: the inverse-conjugacy search is
exhaustive and the centroid dimensions are recomputed per class.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Optional

from .affine import AffineLabel, affine_certificate
from .algebra import centroid_graded, eigengrading
from .chevalley import (
    DiagramPermutation,
    FiniteCartanMatrix,
    algebra_over,
    cartan_matrix,
    diagram_automorphism,
)

__all__ = [
    "ClassificationRow",
    "ClassifyError",
    "ConjClassTable",
    "H1Table",
    "InverseConjugacyReport",
    "KvsRReport",
    "OutGroup",
    "classification_table",
    "conjugacy_classes",
    "dynkin_automorphism_group",
    "h1_of_group",
    "h1_out",
    "inverse_conjugacy_check",
    "k_vs_r_classes",
    "k_vs_r_counts",
]


class ClassifyError(ValueError):
    pass


@dataclass(frozen=True)
class OutGroup:
    """Finite permutation group; diagram symmetries when cartan is set.

    Abstract groups (cartan=None) are allowed so that the hypotheses below
    can be exercised on inputs where they fail, e.g. a cyclic group of order
    3, which is not a diagram symmetry group of any irreducible type.
    """

    elements: tuple[DiagramPermutation, ...]
    cartan: Optional[FiniteCartanMatrix] = None

    def __post_init__(self) -> None:
        if not self.elements:
            raise ClassifyError("group must be nonempty")
        seen = {g.images for g in self.elements}
        if len(seen) != len(self.elements):
            raise ClassifyError("duplicate elements")
        rank = len(self.elements[0].images)
        if tuple(range(rank)) not in seen:
            raise ClassifyError("missing identity")
        for g in self.elements:
            if g.inverse().images not in seen:
                raise ClassifyError("not closed under inversion")
            for h in self.elements:
                if g.compose(h).images not in seen:
                    raise ClassifyError("not closed under composition")
        if self.cartan is not None:
            for g in self.elements:
                if not g.preserves(self.cartan):
                    raise ClassifyError("element does not preserve the Cartan matrix")

    @property
    def order(self) -> int:
        return len(self.elements)


def dynkin_automorphism_group(cartan: FiniteCartanMatrix) -> OutGroup:
    """All permutations of the nodes preserving the Cartan matrix."""
    if cartan.rank > 9:
        raise ClassifyError("rank above the brute-force budget")
    found = [
        DiagramPermutation(images)
        for images in permutations(range(cartan.rank))
        if DiagramPermutation(images).preserves(cartan)
    ]
    found.sort(key=lambda g: g.images)
    return OutGroup(elements=tuple(found), cartan=cartan)


@dataclass(frozen=True)
class ConjClassTable:
    classes: tuple[tuple[DiagramPermutation, int], ...]
    members: tuple[frozenset, ...]

    def class_of(self, g: DiagramPermutation) -> int:
        for index, orbit in enumerate(self.members):
            if g.images in orbit:
                return index
        raise ClassifyError("element not in the group")

    def to_obj(self) -> list:
        return [
            {"rep": rep.to_one_based(), "size": size} for rep, size in self.classes
        ]


def conjugacy_classes(group: OutGroup) -> ConjClassTable:
    """Brute-force conjugation orbits; representative = smallest member."""
    remaining = {g.images: g for g in group.elements}
    rows = []
    while remaining:
        start = remaining[min(remaining)]
        orbit = {h.compose(start).compose(h.inverse()).images for h in group.elements}
        for im in orbit:
            if im not in remaining:
                raise ClassifyError("conjugation left the group")
            del remaining[im]
        rows.append(((DiagramPermutation(min(orbit)), len(orbit)), frozenset(orbit)))
    rows.sort(key=lambda cm: cm[0][0].images)
    table = ConjClassTable(
        classes=tuple(c for c, _ in rows), members=tuple(m for _, m in rows)
    )
    if sum(size for _, size in table.classes) != group.order:
        raise ClassifyError("class sizes do not sum to the group order")
    return table


@dataclass(frozen=True)
class H1Table:
    """Conjugacy classes relabeled as classes of loop-algebra torsors.

    A continuous homomorphism from the procyclic fundamental group lands on
    a single finite-order element (its value on the topological generator),
    and cocycle twisting becomes conjugation, so the table is literally the
    conjugacy table with a cohomological tag.
    """

    tag: str
    table: ConjClassTable

    @property
    def class_count(self) -> int:
        return len(self.table.classes)


def h1_of_group(group: OutGroup) -> H1Table:
    return H1Table(tag="H¹(X, Out(G_X))", table=conjugacy_classes(group))


def h1_out(cartan: FiniteCartanMatrix) -> H1Table:
    return h1_of_group(dynkin_automorphism_group(cartan))


@dataclass(frozen=True)
class InverseConjugacyReport:
    ok: bool
    witnesses: tuple[tuple[DiagramPermutation, Optional[DiagramPermutation]], ...]

    def to_obj(self) -> list:
        return [
            {
                "element": g.to_one_based(),
                "witness": None if h is None else h.to_one_based(),
            }
            for g, h in self.witnesses
        ]


def inverse_conjugacy_check(group: OutGroup) -> InverseConjugacyReport:
    """Search h with h g h^-1 = g^-1 for every g (within the group)."""
    witnesses = []
    ok = True
    for g in group.elements:
        target = g.inverse().images
        found = None
        for h in group.elements:
            if h.compose(g).compose(h.inverse()).images == target:
                found = h
                break
        if found is None:
            ok = False
        witnesses.append((g, found))
    return InverseConjugacyReport(ok=ok, witnesses=tuple(witnesses))


@dataclass(frozen=True)
class ClassificationRow:
    class_rep: DiagramPermutation
    class_size: int
    twist_order: int
    affine_label: AffineLabel
    grading_dims: tuple[int, ...]

    def to_obj(self) -> dict:
        return {
            "class_rep": self.class_rep.to_one_based(),
            "class_size": self.class_size,
            "twist_order": self.twist_order,
            "affine_label": str(self.affine_label),
            "grading_dims": list(self.grading_dims),
        }


def classification_table(type_label: str) -> tuple[ClassificationRow, ...]:
    """One row per diagram class: build L(pi), grade it, extract its label.

    Row count must equal the H^1 class count, and distinct classes must
    carry distinct labels; both are enforced here rather than reported.
    """
    cartan = cartan_matrix(type_label)
    table = conjugacy_classes(dynkin_automorphism_group(cartan))
    rows = []
    for rep, size in table.classes:
        report = affine_certificate(type_label, perm=rep)
        rows.append(
            ClassificationRow(
                class_rep=rep,
                class_size=size,
                twist_order=rep.order(),
                affine_label=report.label,
                grading_dims=report.grading_dims,
            )
        )
    if len(rows) != h1_out(cartan).class_count:
        raise ClassifyError("row count differs from the H1 class count")
    labels = [str(r.affine_label) for r in rows]
    if len(set(labels)) != len(labels):
        raise ClassifyError(f"classes share an affine label: {labels}")
    return tuple(rows)


def k_vs_r_counts(group: OutGroup) -> tuple[int, int]:
    """(R-classes, k-classes): conjugacy classes before and after merging
    each class with the class of the inverses."""
    table = conjugacy_classes(group)
    r_count = len(table.classes)
    merged = []
    seen: set[int] = set()
    for index, (rep, _) in enumerate(table.classes):
        if index in seen:
            continue
        partner = table.class_of(rep.inverse())
        seen.add(index)
        seen.add(partner)
        merged.append({index, partner})
    return r_count, len(merged)


@dataclass(frozen=True)
class KvsRReport:
    type_label: str
    r_class_count: int
    k_class_count: int
    inverse_conjugacy_ok: bool
    centroid_ok: bool
    centroid_dims: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @property
    def hypotheses_hold(self) -> bool:
        return self.inverse_conjugacy_ok and self.centroid_ok

    def to_obj(self) -> dict:
        return {
            "type": self.type_label,
            "r_classes": self.r_class_count,
            "k_classes": self.k_class_count,
            "inverse_conjugacy": self.inverse_conjugacy_ok,
            "centroid_trivial": self.centroid_ok,
            "centroid_dims": [
                {"class_rep": [i + 1 for i in rep], "dims": list(dims)}
                for rep, dims in self.centroid_dims
            ],
        }


def k_vs_r_classes(type_label: str, check_centroid: bool = True) -> KvsRReport:
    """Compare R- and k-isomorphism class counts and verify both hypotheses.

    The k-relation merges sigma with sigma^-1 (swapping the two ends of the
    punctured line).  When every element is conjugate to its inverse and the
    centroid of each fixture L(pi) is one-dimensional in shift 0 and zero in
    every other shift (so k-isomorphisms descend to R up to that swap), the
    two counts must agree, and we assert that they do.
    """
    cartan = cartan_matrix(type_label)
    group = dynkin_automorphism_group(cartan)
    r_count, k_count = k_vs_r_counts(group)
    inverse_ok = inverse_conjugacy_check(group).ok
    centroid_dims = []
    centroid_ok = True
    if check_centroid:
        table = conjugacy_classes(group)
        for rep, _ in table.classes:
            period = rep.order()
            rs, alg = algebra_over(type_label, period)
            sigma = diagram_automorphism(alg, rs, rep)
            grading = eigengrading(alg, sigma)
            dims = tuple(
                centroid_graded(alg, grading, shift).solution_dim
                for shift in range(period)
            )
            centroid_dims.append((rep.images, dims))
            expected = (1,) + (0,) * (period - 1)
            if dims != expected:
                centroid_ok = False
    if inverse_ok and (centroid_ok or not check_centroid):
        if r_count != k_count:
            raise ClassifyError(
                f"hypotheses hold but counts differ: {r_count} vs {k_count}"
            )
    return KvsRReport(
        type_label=type_label,
        r_class_count=r_count,
        k_class_count=k_count,
        inverse_conjugacy_ok=inverse_ok,
        centroid_ok=centroid_ok,
        centroid_dims=tuple(centroid_dims),
    )
