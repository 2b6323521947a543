"""Affine type certificates for twisted loop algebras.

Given L(sigma) for sigma = pi o tau_s, the degree-window root data of the
loop algebra determines a generalized Cartan matrix: decompose every graded
component under ad of the pi-fixed Cartan h0, order the resulting affine
roots by (degree, then lexicographic weight), pick the indecomposable
positives in degrees 0 and 1 as a base, normalize coroots through exact
sl2-triples, and read off the matrix A_ij = weight_j(h_i).

The positivity order is a group order, so the selected base is a genuine
base of the affine system even though it need not be the textbook one; the
matrix is recovered up to simultaneous permutation, which is how catalog
matching operates.  The catalog itself is generated by this same extractor
(untwisted types from L(id), twisted ones from the nontrivial diagram
classes), so every label the package emits is reproducible from scratch.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

from .algebra import GradedDecomposition, MultTableAlgebra, eigengrading
from .chevalley import (
    ComposedAutomorphism,
    DiagramPermutation,
    RootSystem,
    ToralCharge,
    algebra_over,
    cartan_matrix,
    compose_pi_toral,
    root_system,
)
from .cyclo import CycloNum
from .linalg import SpanSolver, Vector, nullspace, vec_add, vec_scale, zero_vector

__all__ = [
    "AffineExtractError",
    "AffineLabel",
    "AffineRoot",
    "AffineRootData",
    "CatalogEntry",
    "ExtractionReport",
    "FixedCartan",
    "GCM",
    "affine_catalog",
    "affine_certificate",
    "affine_roots",
    "extract_gcm",
    "fixed_cartan",
    "gcm_equivalent",
    "match_affine_label",
    "simple_affine_roots",
]


class AffineExtractError(ValueError):
    pass


Weight = tuple[int, ...]


@dataclass(frozen=True)
class FixedCartan:
    """Basis of h0 = h^pi (orbit sums of the h_i) plus candidate weight data."""

    basis: tuple[Vector, ...]
    orbits: tuple[tuple[int, ...], ...]
    candidates: tuple[Weight, ...]

    @property
    def rank(self) -> int:
        return len(self.basis)


def fixed_cartan(alg: MultTableAlgebra, rs: RootSystem, perm: DiagramPermutation) -> FixedCartan:
    """Orbit sums b_O = sum_{i in O} h_i; abelian by inheritance, checked anyway.

    The candidate weights are the values of ad h0 on the original root
    vectors: for a root alpha, the eigenvalue on b_O is the integer
    sum_{i in O} <alpha, alpha_i^vee>.  Together with 0 these exhaust the
    spectrum, which is what lets the weight decomposition use exact kernels.
    """
    l = rs.rank
    if len(perm.images) != l:
        raise AffineExtractError("permutation rank mismatch")
    if not perm.preserves(rs.cartan):
        raise AffineExtractError("permutation does not preserve the Cartan matrix")
    seen: set[int] = set()
    orbits: list[tuple[int, ...]] = []
    for start in range(l):
        if start in seen:
            continue
        orbit = [start]
        seen.add(start)
        node = perm(start)
        while node != start:
            orbit.append(node)
            seen.add(node)
            node = perm(node)
        orbits.append(tuple(sorted(orbit)))
    orbits.sort()
    order = alg.scalar_order
    basis = []
    for orbit in orbits:
        vec = zero_vector(alg.dim, order)
        for i in orbit:
            vec = vec_add(vec, alg.basis_vector(i))
        basis.append(vec)
    for x in basis:
        for y in basis:
            if any(not c.is_zero() for c in alg.product(x, y)):
                raise AffineExtractError("fixed Cartan is not abelian")
    weights = {
        tuple(sum(rs.pairing(alpha, i) for i in orbit) for orbit in orbits)
        for alpha in rs.roots
    }
    weights.add(tuple(0 for _ in orbits))
    return FixedCartan(
        basis=tuple(basis),
        orbits=tuple(orbits),
        candidates=tuple(sorted(weights)),
    )


@dataclass(frozen=True)
class AffineRoot:
    weight: Weight
    degree: int
    multiplicity: int

    @property
    def is_real(self) -> bool:
        return any(self.weight)

    def to_obj(self) -> dict:
        return {"weight": list(self.weight), "degree": self.degree}


@dataclass(frozen=True)
class AffineRootData:
    h0: FixedCartan
    period: int
    window: int
    reals: tuple[AffineRoot, ...]
    imaginary: tuple[AffineRoot, ...]
    spaces: dict[tuple[Weight, int], tuple[Vector, ...]]


def affine_roots(
    alg: MultTableAlgebra,
    grading: GradedDecomposition,
    h0: FixedCartan,
    window: int,
) -> AffineRootData:
    """Exact ad-h0 weight decomposition of every graded slice in the window.

    Real roots (nonzero weight) must be one-dimensional; the zero-weight
    space at degree 0 must be exactly h0 (anything bigger means the chosen
    Cartan does not control the twist); zero-weight spaces at nonzero
    degrees are the imaginary layer and keep their dimension as multiplicity.
    """
    m = grading.period
    if window < m:
        raise AffineExtractError(f"window {window} is smaller than the twist order {m}")
    order = grading.scalar_order
    rank = h0.rank
    per_residue: dict[int, list[tuple[Weight, tuple[Vector, ...]]]] = {}
    for res in range(m):
        component = grading.component_bases[res]
        if not component:
            per_residue[res] = []
            continue
        solver = grading.component_solver(res)
        c = len(component)
        ad_mats = []
        for k in range(rank):
            cols = []
            for v in component:
                image = alg.product(h0.basis[k], v)
                coords = solver.coords(image)
                if coords is None:
                    raise AffineExtractError(
                        f"component {res} is not stable under the fixed Cartan"
                    )
                cols.append(coords)
            ad_mats.append(tuple(tuple(cols[j][i] for j in range(c)) for i in range(c)))
        found: list[tuple[Weight, tuple[Vector, ...]]] = []
        total = 0
        for w in h0.candidates:
            rows = []
            for k in range(rank):
                wk = CycloNum.rational(order, w[k])
                for i in range(c):
                    rows.append(
                        [ad_mats[k][i][j] - (wk if i == j else CycloNum.zero(order)) for j in range(c)]
                    )
            kernel = nullspace(rows, c, order)
            if not kernel:
                continue
            lifted = []
            for coeffs in kernel:
                vec = zero_vector(alg.dim, order)
                for j, coeff in enumerate(coeffs):
                    if not coeff.is_zero():
                        vec = vec_add(vec, vec_scale(coeff, component[j]))
                lifted.append(vec)
            found.append((w, tuple(lifted)))
            total += len(kernel)
        if total != c:
            raise AffineExtractError(
                f"component {res} is not diagonalizable over the candidate weights"
            )
        per_residue[res] = found
    reals: list[AffineRoot] = []
    imaginary: list[AffineRoot] = []
    spaces: dict[tuple[Weight, int], tuple[Vector, ...]] = {}
    for j in range(-window, window + 1):
        for w, vectors in per_residue[j % m]:
            spaces[(w, j)] = vectors
            if any(w):
                if len(vectors) != 1:
                    raise AffineExtractError(
                        f"real root {w} at degree {j} has multiplicity {len(vectors)}"
                    )
                reals.append(AffineRoot(weight=w, degree=j, multiplicity=1))
            elif j == 0:
                if len(vectors) != rank:
                    raise AffineExtractError(
                        "zero-weight space at degree 0 exceeds the fixed Cartan; "
                        "unsupported twist shape"
                    )
            else:
                imaginary.append(AffineRoot(weight=w, degree=j, multiplicity=len(vectors)))
    reals.sort(key=lambda r: (r.degree, r.weight))
    imaginary.sort(key=lambda r: (r.degree, r.weight))
    return AffineRootData(
        h0=h0,
        period=m,
        window=window,
        reals=tuple(reals),
        imaginary=tuple(imaginary),
        spaces=spaces,
    )


def _is_positive(weight: Weight, degree: int) -> bool:
    if degree != 0:
        return degree > 0
    return weight > tuple(0 for _ in weight)


def simple_affine_roots(data: AffineRootData) -> tuple[AffineRoot, ...]:
    """Indecomposable positive roots in degrees 0 and 1.

    Positivity is the group order (degree, then lex weight) > 0.  Sums may
    use the imaginary layer: a real positive like alpha + delta decomposes
    as (alpha, 0) + (0, 1) even though (0, 1) is not a real root, and
    dropping those decompositions would inflate the base.
    """
    positives: set[tuple[Weight, int]] = set()
    for root in data.reals:
        if _is_positive(root.weight, root.degree):
            positives.add((root.weight, root.degree))
    for root in data.imaginary:
        if _is_positive(root.weight, root.degree):
            positives.add((root.weight, root.degree))
    base = []
    for root in data.reals:
        if root.degree not in (0, 1) or not _is_positive(root.weight, root.degree):
            continue
        decomposable = False
        for w1, j1 in positives:
            w2 = tuple(a - b for a, b in zip(root.weight, w1))
            j2 = root.degree - j1
            if (w2, j2) in positives:
                decomposable = True
                break
        if not decomposable:
            base.append(root)
    base.sort(key=lambda r: (r.degree, r.weight))
    expected = data.h0.rank + 1
    if len(base) != expected:
        raise AffineExtractError(
            f"base has {len(base)} roots, expected {expected}; "
            "window too small or unsupported twist"
        )
    return tuple(base)


@dataclass(frozen=True)
class GCM:
    """Generalized Cartan matrix of affine type; all axioms checked on build."""

    entries: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def __post_init__(self) -> None:
        a = self.entries
        n = len(a)
        if any(len(row) != n for row in a):
            raise AffineExtractError("matrix must be square")
        for i in range(n):
            if a[i][i] != 2:
                raise AffineExtractError(f"diagonal entry {i} is {a[i][i]}, not 2")
            for j in range(n):
                if i == j:
                    continue
                if a[i][j] > 0:
                    raise AffineExtractError(f"positive off-diagonal entry at ({i},{j})")
                if (a[i][j] == 0) != (a[j][i] == 0):
                    raise AffineExtractError(f"zero pattern asymmetric at ({i},{j})")
        rank, det = _row_reduce_int(a)
        if det != 0:
            raise AffineExtractError(f"determinant {det} is not 0")
        if rank != n - 1:
            raise AffineExtractError(f"corank {n - rank} is not 1")
        reached = {0}
        frontier = [0]
        while frontier:
            i = frontier.pop()
            for j in range(n):
                if j not in reached and a[i][j] != 0:
                    reached.add(j)
                    frontier.append(j)
        if len(reached) != n:
            raise AffineExtractError("matrix is decomposable")

    def row_multiset(self, i: int) -> tuple[int, ...]:
        return tuple(sorted(self.entries[i]))

    def to_obj(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def _row_reduce_int(rows: Sequence[Sequence[int]]) -> tuple[int, Fraction]:
    n = len(rows)
    work = [[Fraction(x) for x in row] for row in rows]
    det = Fraction(1)
    rank = 0
    for col in range(n):
        pivot = None
        for r in range(rank, n):
            if work[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            det = Fraction(0)
            continue
        if pivot != rank:
            work[rank], work[pivot] = work[pivot], work[rank]
            det = -det
        det *= work[rank][col]
        inv = 1 / work[rank][col]
        for r in range(rank + 1, n):
            factor = work[r][col] * inv
            if factor:
                for c2 in range(col, n):
                    work[r][c2] -= factor * work[rank][c2]
        rank += 1
    return rank, det


@dataclass(frozen=True)
class GCMCertificate:
    gcm: GCM
    base: tuple[AffineRoot, ...]
    coroots: tuple[tuple[Fraction, ...], ...]

    def to_obj(self) -> dict:
        return {
            "gcm": self.gcm.to_obj(),
            "base": [r.to_obj() for r in self.base],
            "det": "0",
            "corank": 1,
        }


def extract_gcm(
    alg: MultTableAlgebra,
    base: Sequence[AffineRoot],
    data: AffineRootData,
) -> GCMCertificate:
    """Coroot normalization and the matrix A_ij = weight_j(h_i).

    For each base root, e_i spans its (one-dimensional) space and f_i is the
    spanning vector of the opposite space rescaled so that the triple
    satisfies weight_i([e_i, f_i]) = 2 exactly.  [e_i, f_i] must land inside
    h0; entries must come out integral; the assembled matrix must pass every
    affine GCM axiom.  Any failure raises rather than rounding.
    """
    order = alg.scalar_order
    h0 = data.h0
    solver = SpanSolver(h0.basis, alg.dim, order)
    coroots: list[tuple[Fraction, ...]] = []
    for root in base:
        e_space = data.spaces.get((root.weight, root.degree))
        opposite = (tuple(-c for c in root.weight), -root.degree)
        f_space = data.spaces.get(opposite)
        if not e_space or not f_space:
            raise AffineExtractError(f"missing root space for base root {root.weight}")
        if len(e_space) != 1 or len(f_space) != 1:
            raise AffineExtractError("base root space is not one-dimensional")
        h_raw = alg.product(e_space[0], f_space[0])
        coords = solver.coords(h_raw)
        if coords is None:
            raise AffineExtractError("[e, f] leaves the fixed Cartan")
        pairing = sum(
            (c * w for c, w in zip(coords, root.weight)),
            CycloNum.zero(order),
        )
        if pairing.is_zero():
            raise AffineExtractError(f"degenerate pairing for base root {root.weight}")
        scale = CycloNum.rational(order, 2) / pairing
        coroot = tuple((scale * c).as_fraction() for c in coords)
        coroots.append(coroot)
    n = len(base)
    entries = []
    for i in range(n):
        row = []
        for j in range(n):
            value = sum(c * w for c, w in zip(coroots[i], base[j].weight))
            if value.denominator != 1:
                raise AffineExtractError(f"entry ({i},{j}) = {value} is not an integer")
            row.append(int(value))
        entries.append(tuple(row))
    gcm = GCM(entries=tuple(entries))
    return GCMCertificate(gcm=gcm, base=tuple(base), coroots=tuple(coroots))


# -- catalog and matching ------------------------------------------------------


@dataclass(frozen=True)
class AffineLabel:
    base_type: str
    twist_order: int

    def __str__(self) -> str:
        return f"{self.base_type}^({self.twist_order})"

    def to_obj(self) -> dict:
        return {"type": self.base_type, "r": self.twist_order}


@dataclass(frozen=True)
class CatalogEntry:
    label: AffineLabel
    gcm: GCM


# one representative per nontrivial diagram class of the fixture types
# (0-based images); cross-checked against the conjugacy tables in the tests
_CATALOG_FIXTURES: tuple[tuple[str, Optional[tuple[int, ...]]], ...] = (
    ("A1", None),
    ("A2", None),
    ("A3", None),
    ("B2", None),
    ("C3", None),
    ("D4", None),
    ("G2", None),
    ("A2", (1, 0)),
    ("A3", (2, 1, 0)),
    ("D4", (0, 1, 3, 2)),
    ("D4", (2, 1, 3, 0)),
)


def gcm_equivalent(a: GCM, b: GCM) -> Optional[tuple[int, ...]]:
    """Permutation p with b[p(i)][p(j)] = a[i][j], or None.

    Backtracking over row multisets: a candidate image must reproduce the
    sorted row content before the pairwise entries are checked.
    """
    n = a.size
    if b.size != n:
        return None
    targets: dict[tuple[int, ...], list[int]] = {}
    for i in range(n):
        targets.setdefault(b.row_multiset(i), []).append(i)
    assignment: list[int] = []
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        for cand in targets.get(a.row_multiset(i), []):
            if used[cand]:
                continue
            ok = all(
                b.entries[cand][assignment[j]] == a.entries[i][j]
                and b.entries[assignment[j]][cand] == a.entries[j][i]
                for j in range(i)
            )
            if not ok:
                continue
            used[cand] = True
            assignment.append(cand)
            if extend(i + 1):
                return True
            assignment.pop()
            used[cand] = False
        return False

    if extend(0):
        return tuple(assignment)
    return None


@lru_cache(maxsize=1)
def affine_catalog() -> tuple[CatalogEntry, ...]:
    """Self-generated affine GCM catalog; entries pairwise non-equivalent."""
    entries = []
    for type_label, images in _CATALOG_FIXTURES:
        rank = cartan_matrix(type_label).rank
        perm = (
            DiagramPermutation.identity(rank)
            if images is None
            else DiagramPermutation(images)
        )
        cert = _extract_for(type_label, perm, None)
        entries.append(
            CatalogEntry(
                label=AffineLabel(base_type=type_label, twist_order=perm.order()),
                gcm=cert.gcm,
            )
        )
    for i in range(len(entries)):
        for j in range(i + 1, len(entries)):
            if gcm_equivalent(entries[i].gcm, entries[j].gcm) is not None:
                raise AffineExtractError(
                    f"catalog entries {entries[i].label} and {entries[j].label} coincide"
                )
    return tuple(entries)


def match_affine_label(gcm: GCM) -> AffineLabel:
    for entry in affine_catalog():
        if gcm_equivalent(gcm, entry.gcm) is not None:
            return entry.label
    raise AffineExtractError("matrix matches no catalog entry")


# -- end-to-end pipeline -------------------------------------------------------


@dataclass(frozen=True)
class ExtractionReport:
    type_label: str
    perm: DiagramPermutation
    charge: ToralCharge
    period: int
    grading_dims: tuple[int, ...]
    certificate: GCMCertificate
    label: AffineLabel

    @property
    def gcm(self) -> GCM:
        return self.certificate.gcm

    def to_obj(self) -> dict:
        obj = self.certificate.to_obj()
        obj["label"] = str(self.label)
        return obj


def _trivial_charge(rank: int) -> ToralCharge:
    return ToralCharge(s=tuple(0 for _ in range(rank)), modulus=1)


@lru_cache(maxsize=None)
def _extract_inner(
    type_label: str,
    perm: DiagramPermutation,
    charge: ToralCharge,
    window: Optional[int],
) -> tuple[int, tuple[int, ...], GCMCertificate]:
    from math import lcm

    period = lcm(perm.order(), charge.modulus)
    rs, alg = algebra_over(type_label, period)
    sigma = compose_pi_toral(alg, rs, perm, charge)
    grading = eigengrading(alg, sigma.auto)
    h0 = fixed_cartan(alg, rs, perm)
    data = affine_roots(alg, grading, h0, window if window is not None else period + 1)
    base = simple_affine_roots(data)
    cert = extract_gcm(alg, base, data)
    return period, grading.dims, cert


def _extract_for(
    type_label: str,
    perm: DiagramPermutation,
    charge: Optional[ToralCharge],
    window: Optional[int] = None,
) -> GCMCertificate:
    rank = cartan_matrix(type_label).rank
    if charge is None:
        charge = _trivial_charge(rank)
    _, _, cert = _extract_inner(type_label, perm, charge, window)
    return cert


def affine_certificate(
    type_label: str,
    perm: Optional[DiagramPermutation] = None,
    charge: Optional[ToralCharge] = None,
    window: Optional[int] = None,
) -> ExtractionReport:
    """Full pipeline: build L(pi o tau_s), extract its GCM, match the label."""
    rank = cartan_matrix(type_label).rank
    if perm is None:
        perm = DiagramPermutation.identity(rank)
    if charge is None:
        charge = _trivial_charge(rank)
    period, dims, cert = _extract_inner(type_label, perm, charge, window)
    label = match_affine_label(cert.gcm)
    return ExtractionReport(
        type_label=type_label,
        perm=perm,
        charge=charge,
        period=period,
        grading_dims=dims,
        certificate=cert,
        label=label,
    )
