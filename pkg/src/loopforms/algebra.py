"""Finite-dimensional algebras by structure constants, and their gradings.

An algebra is a multiplication table over some Q(zeta_M): sparse structure
constants on a fixed basis, tagged `lie` or `associative`.  A finite-order
automorphism with period m dividing that scalar order splits the algebra into
eigenspace components A_i for the eigenvalues zeta_m^i; that decomposition is
a Z/m grading and is the combinatorial heart of everything downstream: loop
elements live on it, the per-degree base-change check certifies that the loop
algebra really is a twisted form, and the centroid computation detects when
two loop algebras cannot be isomorphic over the Laurent base ring.

All verification here is exact and total over the stated ranges; nothing is
sampled.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .cyclo import CycloNum, zeta_power
from .linalg import (
    Matrix,
    SpanSolver,
    Vector,
    is_identity,
    mat_pow,
    mat_vec,
    nullspace,
    rank,
    vec_add,
    zero_vector,
)

__all__ = [
    "AlgebraError",
    "AutomorphismError",
    "BaseChangeReport",
    "CentroidReport",
    "FiniteOrderAutomorphism",
    "GradedDecomposition",
    "GradingError",
    "LoopElement",
    "MultTableAlgebra",
    "ValidationReport",
    "Violation",
    "base_change_check",
    "centroid_graded",
    "check_automorphism",
    "check_loop_element",
    "embed_algebra",
    "embed_automorphism",
    "embed_matrix",
    "embed_vector",
    "eigengrading",
    "loop_bracket",
    "loop_element",
    "ts_product",
    "validate_algebra",
]

KIND_LIE = "lie"
KIND_ASSOCIATIVE = "associative"


class AlgebraError(ValueError):
    pass


class AutomorphismError(ValueError):
    pass


class GradingError(ValueError):
    pass


Sparse = dict[int, CycloNum]
TableEntry = tuple[tuple[int, CycloNum], ...]


@dataclass(frozen=True)
class MultTableAlgebra:
    """Algebra given by structure constants on basis e_0, ..., e_{dim-1}.

    `constants` holds, for each basis pair (i, j) with nonzero product, the
    sparse expansion of e_i * e_j; omitted pairs multiply to zero.
    """

    dim: int
    scalar_order: int
    kind: str
    constants: tuple[tuple[int, int, TableEntry], ...]
    basis_labels: tuple[str, ...]
    _table: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise AlgebraError("dimension must be positive")
        if self.kind not in (KIND_LIE, KIND_ASSOCIATIVE):
            raise AlgebraError(f"unknown algebra kind {self.kind!r}")
        if len(self.basis_labels) != self.dim:
            raise AlgebraError("one label per basis element required")
        table: dict[tuple[int, int], TableEntry] = {}
        for i, j, entry in self.constants:
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise AlgebraError(f"structure constant index ({i},{j}) out of range")
            for k, c in entry:
                if not 0 <= k < self.dim:
                    raise AlgebraError(f"structure constant target {k} out of range")
                if c.order != self.scalar_order:
                    raise AlgebraError("structure constants must use the declared scalar order")
            table[(i, j)] = entry
        self._table.update(table)

    # -- products --------------------------------------------------------

    def basis_product(self, i: int, j: int) -> TableEntry:
        return self._table.get((i, j), ())

    def product_sparse(self, x: Sparse, y: Sparse) -> Sparse:
        out: Sparse = {}
        for i, xi in x.items():
            if xi.is_zero():
                continue
            for j, yj in y.items():
                if yj.is_zero():
                    continue
                entry = self._table.get((i, j))
                if not entry:
                    continue
                scale = xi * yj
                for k, c in entry:
                    prev = out.get(k)
                    term = scale * c
                    out[k] = term if prev is None else prev + term
        return {k: v for k, v in out.items() if not v.is_zero()}

    def product(self, x: Sequence[CycloNum], y: Sequence[CycloNum]) -> Vector:
        sx = {i: c for i, c in enumerate(x) if not c.is_zero()}
        sy = {j: c for j, c in enumerate(y) if not c.is_zero()}
        sparse = self.product_sparse(sx, sy)
        zero = CycloNum.zero(self.scalar_order)
        out = [zero] * self.dim
        for k, c in sparse.items():
            out[k] = c
        return tuple(out)

    def zero_vec(self) -> Vector:
        return zero_vector(self.dim, self.scalar_order)

    def basis_vector(self, i: int) -> Vector:
        zero = CycloNum.zero(self.scalar_order)
        one = CycloNum.one(self.scalar_order)
        return tuple(one if k == i else zero for k in range(self.dim))

    # -- serialization -----------------------------------------------------

    def to_obj(self) -> dict:
        return {
            "dim": self.dim,
            "scalar_order": self.scalar_order,
            "kind": self.kind,
            "labels": list(self.basis_labels),
            "constants": [
                [i, j, [[k, c.to_obj()] for k, c in entry]]
                for i, j, entry in self.constants
            ],
        }

    @staticmethod
    def from_obj(obj: dict) -> "MultTableAlgebra":
        constants = tuple(
            (
                int(i),
                int(j),
                tuple((int(k), CycloNum.from_obj(c)) for k, c in entry),
            )
            for i, j, entry in obj["constants"]
        )
        return MultTableAlgebra(
            dim=int(obj["dim"]),
            scalar_order=int(obj["scalar_order"]),
            kind=obj["kind"],
            constants=constants,
            basis_labels=tuple(obj["labels"]),
        )


def make_table(entries: dict[tuple[int, int], Sparse]) -> tuple[tuple[int, int, TableEntry], ...]:
    """Normalize a dict-of-sparse-products into the canonical constants tuple."""
    out = []
    for (i, j) in sorted(entries):
        sparse = {k: v for k, v in entries[(i, j)].items() if not v.is_zero()}
        if sparse:
            out.append((i, j, tuple(sorted(sparse.items()))))
    return tuple(out)


# -- validation ------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    law: str
    indices: tuple[int, ...]
    labels: tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.law} fails on ({', '.join(self.labels)})"


@dataclass(frozen=True)
class ValidationReport:
    kind: str
    dim: int
    triples_checked: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_obj(self) -> dict:
        return {
            "kind": self.kind,
            "dim": self.dim,
            "triples_checked": self.triples_checked,
            "ok": self.ok,
            "violations": [
                {"law": v.law, "indices": list(v.indices), "labels": list(v.labels)}
                for v in self.violations
            ],
        }


def _sparse_is_zero(s: Sparse) -> bool:
    return all(v.is_zero() for v in s.values())


def _sparse_sum(terms: Iterable[Sparse]) -> Sparse:
    out: Sparse = {}
    for t in terms:
        for k, v in t.items():
            prev = out.get(k)
            out[k] = v if prev is None else prev + v
    return out


def validate_algebra(alg: MultTableAlgebra) -> ValidationReport:
    """Check the axioms of the declared kind on every ordered basis triple.

    The report lists each violated law with the offending basis indices, so a
    corrupted table names the exact triple that broke.
    """
    n = alg.dim
    labels = alg.basis_labels
    violations: list[Violation] = []
    basis = [{i: CycloNum.one(alg.scalar_order)} for i in range(n)]

    def entry_sparse(i: int, j: int) -> Sparse:
        return dict(alg.basis_product(i, j))

    triples = 0
    if alg.kind == KIND_LIE:
        for i in range(n):
            if not _sparse_is_zero(entry_sparse(i, i)):
                violations.append(Violation("alternating", (i,), (labels[i],)))
        for i in range(n):
            for j in range(i + 1, n):
                anti = _sparse_sum([entry_sparse(i, j), entry_sparse(j, i)])
                if not _sparse_is_zero(anti):
                    violations.append(Violation("antisymmetry", (i, j), (labels[i], labels[j])))
        for i in range(n):
            for j in range(n):
                ij = entry_sparse(i, j)
                for k in range(n):
                    triples += 1
                    total = _sparse_sum(
                        [
                            alg.product_sparse(ij, basis[k]),
                            alg.product_sparse(entry_sparse(j, k), basis[i]),
                            alg.product_sparse(entry_sparse(k, i), basis[j]),
                        ]
                    )
                    if not _sparse_is_zero(total):
                        violations.append(
                            Violation("jacobi", (i, j, k), (labels[i], labels[j], labels[k]))
                        )
    else:
        for i in range(n):
            for j in range(n):
                ij = entry_sparse(i, j)
                for k in range(n):
                    triples += 1
                    left = alg.product_sparse(ij, basis[k])
                    right = alg.product_sparse(basis[i], entry_sparse(j, k))
                    diff = _sparse_sum([left, {m: -c for m, c in right.items()}])
                    if not _sparse_is_zero(diff):
                        violations.append(
                            Violation("associativity", (i, j, k), (labels[i], labels[j], labels[k]))
                        )
    return ValidationReport(alg.kind, n, triples, tuple(violations))


# -- automorphisms -----------------------------------------------------------


@dataclass(frozen=True)
class FiniteOrderAutomorphism:
    """Invertible multiplicative map, matrix acting on basis coordinates.

    Column j is the coordinate vector of the image of basis element j.  The
    period m need not be the exact order: matrix^m = 1 is all that is required,
    which is what lets automorphisms of different orders share a period.
    """

    matrix: Matrix
    period: int

    @property
    def dim(self) -> int:
        return len(self.matrix)

    @property
    def scalar_order(self) -> int:
        return self.matrix[0][0].order

    def apply(self, v: Sequence[CycloNum]) -> Vector:
        return mat_vec(self.matrix, v)

    def to_obj(self) -> dict:
        return {
            "period": self.period,
            "matrix": [[c.to_obj() for c in row] for row in self.matrix],
        }

    @staticmethod
    def from_obj(obj: dict) -> "FiniteOrderAutomorphism":
        matrix = tuple(tuple(CycloNum.from_obj(c) for c in row) for row in obj["matrix"])
        return FiniteOrderAutomorphism(matrix=matrix, period=int(obj["period"]))


def check_automorphism(alg: MultTableAlgebra, matrix: Matrix, period: int) -> FiniteOrderAutomorphism:
    """Verify invertibility, multiplicativity on all basis pairs, and period."""
    n = alg.dim
    if len(matrix) != n or any(len(row) != n for row in matrix):
        raise AutomorphismError(f"matrix must be {n}x{n}")
    if matrix[0][0].order != alg.scalar_order:
        raise AutomorphismError("matrix entries must use the algebra scalar order")
    if period < 1:
        raise AutomorphismError("period must be positive")
    if rank(matrix) != n:
        raise AutomorphismError("matrix is not invertible")
    columns = [tuple(matrix[i][j] for i in range(n)) for j in range(n)]
    for i in range(n):
        for j in range(n):
            entry = alg.basis_product(i, j)
            lhs = alg.zero_vec()
            for k, c in entry:
                lhs = vec_add(lhs, tuple(c * x for x in columns[k]))
            rhs = alg.product(columns[i], columns[j])
            if lhs != rhs:
                raise AutomorphismError(
                    f"multiplicativity fails on basis pair "
                    f"({alg.basis_labels[i]}, {alg.basis_labels[j]})"
                )
    if not is_identity(mat_pow(matrix, period)):
        raise AutomorphismError(f"matrix^{period} is not the identity")
    return FiniteOrderAutomorphism(matrix=tuple(tuple(row) for row in matrix), period=period)


# -- change of scalar order --------------------------------------------------


def embed_vector(v: Sequence[CycloNum], n: int) -> Vector:
    return tuple(c.embed(n) for c in v)


def embed_matrix(mat: Sequence[Sequence[CycloNum]], n: int) -> Matrix:
    return tuple(tuple(c.embed(n) for c in row) for row in mat)


def embed_algebra(alg: MultTableAlgebra, n: int) -> MultTableAlgebra:
    if n == alg.scalar_order:
        return alg
    constants = tuple(
        (i, j, tuple((k, c.embed(n)) for k, c in entry)) for i, j, entry in alg.constants
    )
    return MultTableAlgebra(
        dim=alg.dim,
        scalar_order=n,
        kind=alg.kind,
        constants=constants,
        basis_labels=alg.basis_labels,
    )


def embed_automorphism(auto: FiniteOrderAutomorphism, n: int) -> FiniteOrderAutomorphism:
    if n == auto.scalar_order:
        return auto
    return FiniteOrderAutomorphism(matrix=embed_matrix(auto.matrix, n), period=auto.period)


# -- eigenspace grading -------------------------------------------------------


@dataclass(frozen=True)
class GradedDecomposition:
    """Z/period grading by eigenspaces; component i belongs to zeta^i."""

    period: int
    scalar_order: int
    dim: int
    component_bases: tuple[tuple[Vector, ...], ...]
    _solvers: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.component_bases)

    def component_solver(self, i: int) -> SpanSolver:
        i %= self.period
        solver = self._solvers.get(i)
        if solver is None:
            solver = SpanSolver(self.component_bases[i], self.dim, self.scalar_order)
            self._solvers[i] = solver
        return solver

    def residue_zeta(self, i: int) -> CycloNum:
        step = self.scalar_order // self.period
        return zeta_power(self.scalar_order, step * (i % self.period))


def eigengrading(alg: MultTableAlgebra, sigma: FiniteOrderAutomorphism) -> GradedDecomposition:
    """Split the algebra into the eigenspaces of sigma.

    Requires the scalar order to contain the needed roots of unity, i.e.
    sigma.period | alg.scalar_order.  Verifies that the components exhaust the
    algebra, that multiplication respects residues, and that reassembling
    sigma from the components reproduces the input matrix.
    """
    m = sigma.period
    if alg.scalar_order % m != 0:
        raise GradingError(
            f"scalar order {alg.scalar_order} lacks the {m}-th roots of unity; embed first"
        )
    if sigma.scalar_order != alg.scalar_order:
        raise GradingError("automorphism and algebra must share a scalar order")
    n = alg.dim
    order = alg.scalar_order
    components: list[tuple[Vector, ...]] = []
    for i in range(m):
        zeta = zeta_power(order, (order // m) * i)
        rows = [
            [sigma.matrix[r][c] - (zeta if r == c else CycloNum.zero(order)) for c in range(n)]
            for r in range(n)
        ]
        basis = nullspace(rows, n, order)
        components.append(tuple(basis))
    grading = GradedDecomposition(
        period=m,
        scalar_order=order,
        dim=n,
        component_bases=tuple(components),
    )
    if sum(grading.dims) != n:
        raise GradingError(f"component dimensions {grading.dims} do not sum to {n}")
    stacked = [v for comp in components for v in comp]
    if rank(stacked) != n:
        raise GradingError("components are not independent")
    # reassembly: every component vector must really be scaled by its eigenvalue
    for i, comp in enumerate(components):
        zeta = grading.residue_zeta(i)
        for v in comp:
            if sigma.apply(v) != tuple(zeta * c for c in v):
                raise GradingError(f"component {i} is not an eigenspace of the automorphism")
    # product rule A_i * A_j inside A_{i+j}
    for i in range(m):
        for j in range(m):
            solver = grading.component_solver((i + j) % m)
            for x in components[i]:
                for y in components[j]:
                    if not solver.contains(alg.product(x, y)):
                        raise GradingError(
                            f"product of components {i} and {j} leaves component {(i + j) % m}"
                        )
    return grading


# -- loop elements -------------------------------------------------------------


@dataclass(frozen=True)
class LoopElement:
    """Finite sum of homogeneous terms a * z^degree, degrees distinct and sorted."""

    terms: tuple[tuple[int, Vector], ...]

    def degrees(self) -> tuple[int, ...]:
        return tuple(d for d, _ in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def shift(self, offset: int) -> "LoopElement":
        return LoopElement(tuple((d + offset, v) for d, v in self.terms))

    def scale(self, c: CycloNum) -> "LoopElement":
        return loop_element([(d, tuple(c * x for x in v)) for d, v in self.terms])

    def add(self, other: "LoopElement") -> "LoopElement":
        return loop_element(list(self.terms) + list(other.terms))


def loop_element(terms: Iterable[tuple[int, Sequence[CycloNum]]]) -> LoopElement:
    """Normalize: merge equal degrees, drop zero vectors, sort by degree."""
    acc: dict[int, Vector] = {}
    for d, v in terms:
        v = tuple(v)
        if d in acc:
            acc[d] = vec_add(acc[d], v)
        else:
            acc[d] = v
    out = []
    for d in sorted(acc):
        if any(not c.is_zero() for c in acc[d]):
            out.append((d, acc[d]))
    return LoopElement(tuple(out))


def check_loop_element(grading: GradedDecomposition, x: LoopElement) -> None:
    """Each term of a loop element must lie in the component of its residue."""
    seen = set()
    for d, v in x.terms:
        if d in seen:
            raise GradingError(f"duplicate degree {d} in loop element")
        seen.add(d)
        if not grading.component_solver(d % grading.period).contains(v):
            raise GradingError(f"term at degree {d} is not in component {d % grading.period}")


def ts_product(alg: MultTableAlgebra, x: LoopElement, y: LoopElement) -> LoopElement:
    """Product in A tensor k[z, 1/z]: multiply coefficients, add degrees."""
    terms = []
    for d1, v1 in x.terms:
        for d2, v2 in y.terms:
            terms.append((d1 + d2, alg.product(v1, v2)))
    return loop_element(terms)


def loop_bracket(
    alg: MultTableAlgebra, grading: GradedDecomposition, x: LoopElement, y: LoopElement
) -> LoopElement:
    """Multiply two elements of the twisted loop algebra, checking the grading.

    Inputs must be supported on the grading (term at degree d inside component
    d mod m); the result is verified to be as well before it is returned.
    """
    check_loop_element(grading, x)
    check_loop_element(grading, y)
    result = ts_product(alg, x, y)
    check_loop_element(grading, result)
    return result


# -- base change over the covering ring ----------------------------------------


@dataclass(frozen=True)
class BaseChangeReport:
    window: int
    degree_dims: tuple[tuple[int, tuple[int, ...]], ...]
    pairs_checked: int
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures

    def to_obj(self) -> dict:
        return {
            "window": self.window,
            "degree_dims": [[d, list(dims)] for d, dims in self.degree_dims],
            "pairs_checked": self.pairs_checked,
            "ok": self.ok,
            "failures": list(self.failures),
        }


def base_change_check(alg: MultTableAlgebra, grading: GradedDecomposition, window: int) -> BaseChangeReport:
    """Certify per-degree that extending scalars to the covering ring
    flattens the twisted loop algebra onto the full algebra.

    At every total degree d with |d| <= window the residue components
    A_{(d-j) mod m}, j = 0..m-1, must be independent and jointly span A, and
    multiplication through the identification must agree with the table for
    all component basis pairs whose degree sums stay inside the window.
    """
    m = grading.period
    n = alg.dim
    failures: list[str] = []
    degree_dims = []
    for d in range(-window, window + 1):
        slices = [grading.component_bases[(d - j) % m] for j in range(m)]
        dims = tuple(len(s) for s in slices)
        stacked = [v for s in slices for v in s]
        if len(stacked) != n or rank(stacked) != n:
            failures.append(f"degree {d}: residue slices of dims {dims} do not span exactly")
        degree_dims.append((d, dims))
    pairs = 0
    for d1 in range(-window, window + 1):
        for d2 in range(-window, window + 1):
            if abs(d1 + d2) > window:
                continue
            solver = grading.component_solver((d1 + d2) % m)
            for x in grading.component_bases[d1 % m]:
                for y in grading.component_bases[d2 % m]:
                    pairs += 1
                    if not solver.contains(alg.product(x, y)):
                        failures.append(
                            f"degrees ({d1},{d2}): product leaves the degree {d1 + d2} slice"
                        )
    return BaseChangeReport(
        window=window,
        degree_dims=tuple(degree_dims),
        pairs_checked=pairs,
        failures=tuple(failures),
    )


# -- graded centroid -------------------------------------------------------------


@dataclass(frozen=True)
class CentroidReport:
    """Solution space of maps commuting with all multiplications, by residue.

    A family assigns to each residue i a matrix A_i -> A_{i+shift} written in
    component coordinates; the family is constant across the integer degrees
    of a residue class, which is exactly a degree-homogeneous centroid
    transformation of the twisted loop algebra.
    """

    shift_residue: int
    period: int
    solution_dim: int
    basis: tuple[tuple[Matrix, ...], ...]

    def contains_identity(self) -> bool:
        if self.shift_residue % self.period != 0:
            return False
        return _identity_in_span(self)

    def to_obj(self) -> dict:
        return {
            "shift_residue": self.shift_residue,
            "period": self.period,
            "solution_dim": self.solution_dim,
            "basis": [
                [[[c.to_obj() for c in row] for row in mat] for mat in family]
                for family in self.basis
            ],
        }


def _identity_in_span(report: CentroidReport) -> bool:
    if not report.basis:
        return False
    order = None
    flat_basis = []
    for family in report.basis:
        flat = []
        for mat in family:
            for row in mat:
                for c in row:
                    flat.append(c)
                    order = c.order
        flat_basis.append(tuple(flat))
    assert order is not None
    ident = []
    for mat in report.basis[0]:
        rows = len(mat)
        cols = len(mat[0]) if rows else 0
        for r in range(rows):
            for c in range(cols):
                ident.append(CycloNum.one(order) if r == c else CycloNum.zero(order))
    solver = SpanSolver(flat_basis, len(ident), order)
    return solver.contains(tuple(ident))


def centroid_graded(
    alg: MultTableAlgebra, grading: GradedDecomposition, shift_residue: int
) -> CentroidReport:
    """Solve for residue-level families c_i: A_i -> A_{i+shift} with
    c(xy) = (cx)y = x(cy) on all homogeneous basis pairs.

    The system is cut down first by every degree-zero basis element that
    multiplies diagonally (Cartan-type elements), which pins most unknowns to
    zero; the surviving sparse equations are then eliminated exactly.
    """
    m = grading.period
    d = shift_residue % m
    order = alg.scalar_order
    comps = grading.component_bases
    dims = [len(c) for c in comps]
    solvers = [grading.component_solver(i) for i in range(m)]

    # unknown u[(res, r, s)] = entry of c_res in row r (target coord), col s
    index_of: dict[tuple[int, int, int], int] = {}
    unknowns: list[tuple[int, int, int]] = []
    for res in range(m):
        for r in range(dims[(res + d) % m]):
            for s in range(dims[res]):
                index_of[(res, r, s)] = len(unknowns)
                unknowns.append((res, r, s))
    total = len(unknowns)

    # coordinates of products of homogeneous basis vectors
    hom = [(res, t) for res in range(m) for t in range(dims[res])]
    prod_coords: dict[tuple[int, int, int, int], list[CycloNum]] = {}
    for (ri, ti) in hom:
        for (rj, tj) in hom:
            vec = alg.product(comps[ri][ti], comps[rj][tj])
            coords = solvers[(ri + rj) % m].coords(vec)
            if coords is None:
                raise GradingError("product rule violated while building centroid system")
            prod_coords[(ri, ti, rj, tj)] = coords

    # phase 1: diagonal degree-zero multipliers kill unknowns coordinate-wise
    alive = [True] * total

    def diagonal_eigenvalues(zres: int, zt: int, side: str) -> Optional[list[list[CycloNum]]]:
        eigen: list[list[CycloNum]] = []
        for res in range(m):
            lams = []
            for s in range(dims[res]):
                key = (zres, zt, res, s) if side == "left" else (res, s, zres, zt)
                coords = prod_coords[key]
                lam = None
                for k, c in enumerate(coords):
                    if c.is_zero():
                        continue
                    if k != s:
                        return None
                    lam = c
                lams.append(lam if lam is not None else CycloNum.zero(order))
            eigen.append(lams)
        return eigen

    for zt in range(dims[0]):
        for side in ("left", "right"):
            eigen = diagonal_eigenvalues(0, zt, side)
            if eigen is None:
                continue
            for res in range(m):
                tgt = (res + d) % m
                for r in range(dims[tgt]):
                    for s in range(dims[res]):
                        idx = index_of[(res, r, s)]
                        if alive[idx] and not (eigen[res][s] - eigen[tgt][r]).is_zero():
                            alive[idx] = False

    # phase 2: all remaining equations, sparse exact elimination
    rows: set[tuple[tuple[int, CycloNum], ...]] = set()

    def add_row(entries: dict[int, CycloNum]) -> None:
        entries = {k: v for k, v in entries.items() if alive[k] and not v.is_zero()}
        if not entries:
            return
        lead = min(entries)
        inv = entries[lead].inverse()
        rows.add(tuple(sorted((k, inv * v) for k, v in entries.items())))

    for (jres, t) in hom:  # x runs over homogeneous basis vectors
        for (ires, s) in hom:  # y likewise
            w = prod_coords[(jres, t, ires, s)]  # coords of x*y in comp (i+j)
            tgt_res = (ires + jres) % m
            out_dim = dims[(tgt_res + d) % m]
            # condition A: c(x*y) = x * (c y)
            for rho in range(out_dim):
                entries: dict[int, CycloNum] = {}
                for sig, wc in enumerate(w):
                    if not wc.is_zero():
                        entries[index_of[(tgt_res, rho, sig)]] = wc
                for r in range(dims[(ires + d) % m]):
                    coeff = prod_coords[(jres, t, (ires + d) % m, r)][rho]
                    if not coeff.is_zero():
                        idx = index_of[(ires, r, s)]
                        entries[idx] = entries.get(idx, CycloNum.zero(order)) - coeff
                add_row(entries)
            # condition B: c(x*y) = (c x) * y
            for rho in range(out_dim):
                entries = {}
                for sig, wc in enumerate(w):
                    if not wc.is_zero():
                        entries[index_of[(tgt_res, rho, sig)]] = wc
                for r in range(dims[(jres + d) % m]):
                    coeff = prod_coords[((jres + d) % m, r, ires, s)][rho]
                    if not coeff.is_zero():
                        idx = index_of[(jres, r, t)]
                        entries[idx] = entries.get(idx, CycloNum.zero(order)) - coeff
                add_row(entries)

    def row_sort_key(row_t):
        return tuple((k, c.coeffs) for k, c in row_t)

    pivots: dict[int, dict[int, CycloNum]] = {}
    for row_t in sorted(rows, key=row_sort_key):
        row = dict(row_t)
        while row:
            lead = min(row)
            pivot = pivots.get(lead)
            if pivot is None:
                inv = row[lead].inverse()
                pivots[lead] = {k: inv * v for k, v in row.items()}
                break
            factor = row[lead]
            for k, v in pivot.items():
                nv = row.get(k, CycloNum.zero(order)) - factor * v
                if nv.is_zero():
                    row.pop(k, None)
                else:
                    row[k] = nv
    # back-substitute to full reduction
    for lead in sorted(pivots, reverse=True):
        prow = pivots[lead]
        for other_lead, orow in pivots.items():
            if other_lead >= lead:
                continue
            factor = orow.get(lead)
            if factor is None or factor.is_zero():
                continue
            for k, v in prow.items():
                nv = orow.get(k, CycloNum.zero(order)) - factor * v
                if nv.is_zero():
                    orow.pop(k, None)
                else:
                    orow[k] = nv

    alive_indices = [i for i in range(total) if alive[i]]
    free = [i for i in alive_indices if i not in pivots]
    families = []
    zero = CycloNum.zero(order)
    for f in free:
        sol = {f: CycloNum.one(order)}
        for lead, prow in pivots.items():
            coeff = prow.get(f)
            if coeff is not None and not coeff.is_zero():
                sol[lead] = -coeff
        family = []
        for res in range(m):
            tgt = (res + d) % m
            mat = tuple(
                tuple(sol.get(index_of[(res, r, s)], zero) for s in range(dims[res]))
                for r in range(dims[tgt])
            )
            family.append(mat)
        families.append(tuple(family))
    return CentroidReport(
        shift_residue=d,
        period=m,
        solution_dim=len(free),
        basis=tuple(families),
    )
