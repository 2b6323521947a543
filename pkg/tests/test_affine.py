import json
from fractions import Fraction
from pathlib import Path

import pytest

from loopforms.affine import (
    GCM,
    AffineExtractError,
    affine_catalog,
    affine_certificate,
    affine_roots,
    extract_gcm,
    fixed_cartan,
    gcm_equivalent,
    match_affine_label,
    simple_affine_roots,
)
from loopforms.algebra import eigengrading
from loopforms.chevalley import (
    DiagramPermutation,
    ToralCharge,
    algebra_over,
    cartan_matrix,
    compose_pi_toral,
    root_system,
)

GOLDEN = Path(__file__).parent / "golden" / "affine_catalog.json"


def _pipeline(label, images, window=None):
    rank = cartan_matrix(label).rank
    perm = (
        DiagramPermutation.identity(rank)
        if images is None
        else DiagramPermutation(images)
    )
    m = perm.order()
    rs, alg = algebra_over(label, m)
    charge = ToralCharge(s=tuple(0 for _ in range(rank)), modulus=1)
    sigma = compose_pi_toral(alg, rs, perm, charge)
    grading = eigengrading(alg, sigma.auto)
    h0 = fixed_cartan(alg, rs, perm)
    data = affine_roots(alg, grading, h0, window if window is not None else m + 1)
    return alg, data


# -- fixed Cartan ----------------------------------------------------------------


def test_fixed_cartan_a2_flip():
    rs, alg = algebra_over("A2", 2)
    fc = fixed_cartan(alg, rs, DiagramPermutation((1, 0)))
    assert fc.rank == 1
    assert fc.orbits == ((0, 1),)
    assert fc.candidates == ((-2,), (-1,), (0,), (1,), (2,))


def test_fixed_cartan_rejects_bad_permutation():
    rs, alg = algebra_over("B2", 1)
    with pytest.raises(AffineExtractError):
        fixed_cartan(alg, rs, DiagramPermutation((1, 0)))
    with pytest.raises(AffineExtractError):
        fixed_cartan(alg, rs, DiagramPermutation.identity(3))


# -- root data -------------------------------------------------------------------


def test_affine_roots_a1_untwisted_window_3():
    alg, data = _pipeline("A1", None, window=3)
    assert data.period == 1
    weights = {(r.weight, r.degree) for r in data.reals}
    assert weights == {(w, j) for w in ((2,), (-2,)) for j in range(-3, 4)}
    assert all(r.multiplicity == 1 for r in data.reals)
    assert all(r.is_real for r in data.reals)
    imag = {(r.degree, r.multiplicity) for r in data.imaginary}
    assert imag == {(j, 1) for j in (-3, -2, -1, 1, 2, 3)}
    assert all(not any(r.weight) for r in data.imaginary)


def test_affine_roots_a2_flip_layers():
    alg, data = _pipeline("A2", (1, 0), window=2)
    assert data.period == 2
    odd = {r.weight for r in data.reals if r.degree == 1}
    even = {r.weight for r in data.reals if r.degree == 0}
    assert even == {(1,), (-1,)}
    assert odd == {(1,), (-1,), (2,), (-2,)}
    assert {(r.degree, r.multiplicity) for r in data.imaginary} == {
        (-2, 1),
        (-1, 1),
        (1, 1),
        (2, 1),
    }


def test_affine_roots_window_floor():
    rs, alg = algebra_over("A2", 2)
    perm = DiagramPermutation((1, 0))
    charge = ToralCharge(s=(0, 0), modulus=1)
    sigma = compose_pi_toral(alg, rs, perm, charge)
    grading = eigengrading(alg, sigma.auto)
    h0 = fixed_cartan(alg, rs, perm)
    with pytest.raises(AffineExtractError):
        affine_roots(alg, grading, h0, 1)


def test_base_a1_and_exact_gcm():
    alg, data = _pipeline("A1", None)
    base = simple_affine_roots(data)
    assert [(r.weight, r.degree) for r in base] == [((2,), 0), ((-2,), 1)]
    cert = extract_gcm(alg, base, data)
    assert cert.gcm.entries == ((2, -2), (-2, 2))
    obj = cert.to_obj()
    assert obj["det"] == "0"
    assert obj["corank"] == 1


def test_base_a2_flip():
    alg, data = _pipeline("A2", (1, 0))
    base = simple_affine_roots(data)
    assert [(r.weight, r.degree) for r in base] == [((1,), 0), ((-2,), 1)]
    cert = extract_gcm(alg, base, data)
    assert cert.gcm.entries == ((2, -4), (-1, 2))


# -- GCM axioms ------------------------------------------------------------------


@pytest.mark.parametrize(
    "entries",
    [
        ((2, -1), (-1, 2)),  # finite: determinant 3
        ((2, -2, 0, 0), (-2, 2, 0, 0), (0, 0, 2, -2), (0, 0, -2, 2)),  # corank 2
        ((2, 1), (1, 2)),  # positive off-diagonal
        ((2, -1), (0, 2)),  # asymmetric zero pattern
        ((1, -1), (-1, 1)),  # diagonal not 2
        ((2, -2), (-2, 2, 0)),  # not square
    ],
)
def test_gcm_axioms_reject(entries):
    with pytest.raises(AffineExtractError):
        GCM(entries=entries)


# -- bordered-matrix oracle for the untwisted entries ------------------------------


def _symmetrizer(a):
    n = len(a)
    d: list = [None] * n
    d[0] = Fraction(1)
    frontier = [0]
    while frontier:
        i = frontier.pop()
        for j in range(n):
            if a[i][j] != 0 and i != j and d[j] is None:
                d[j] = d[i] * a[i][j] / a[j][i]
                frontier.append(j)
    assert all(x is not None for x in d)
    for i in range(n):
        for j in range(n):
            assert d[i] * a[i][j] == d[j] * a[j][i]
    return d


def _bordered_untwisted(label):
    """Affix the affine node by hand: the new simple root is delta - theta,
    so its row and column come from the coroot of the highest root.  Uses
    only the Cartan matrix, the reflection closure, and the symmetrizer."""
    cartan = cartan_matrix(label).entries
    n = len(cartan)
    d = _symmetrizer(cartan)
    theta = root_system(cartan_matrix(label)).positives[-1]
    norm = sum(
        theta[i] * theta[j] * d[i] * cartan[i][j]
        for i in range(n)
        for j in range(n)
    )
    d_theta = Fraction(norm, 2)
    cvee = [theta[i] * d[i] / d_theta for i in range(n)]
    self_pairing = sum(
        cvee[i] * cartan[i][k] * theta[k] for i in range(n) for k in range(n)
    )
    assert self_pairing == 2
    top = [self_pairing] + [
        -sum(cvee[i] * cartan[i][j] for i in range(n)) for j in range(n)
    ]
    rows = [top]
    for j in range(n):
        col0 = -sum(cartan[j][k] * theta[k] for k in range(n))
        rows.append([Fraction(col0)] + [Fraction(x) for x in cartan[j]])
    assert all(x.denominator == 1 for row in rows for x in row)
    return GCM(entries=tuple(tuple(int(x) for x in row) for row in rows))


UNTWISTED = ("A1", "A2", "A3", "B2", "C3", "D4", "G2")


@pytest.mark.parametrize("label", UNTWISTED)
def test_untwisted_catalog_matches_bordered_oracle(label):
    oracle = _bordered_untwisted(label)
    entry = next(
        e
        for e in affine_catalog()
        if e.label.base_type == label and e.label.twist_order == 1
    )
    assert gcm_equivalent(oracle, entry.gcm) is not None


# -- frozen matrices for the twisted entries ---------------------------------------

TWISTED = {
    ("A2", 2): ((2, -4), (-1, 2)),
    ("A3", 2): ((2, -2, 0), (-1, 2, -1), (0, -2, 2)),
    ("D4", 2): ((2, 0, -2, 0), (0, 2, -1, -1), (-1, -1, 2, 0), (0, -2, 0, 2)),
    ("D4", 3): ((2, -1, 0), (-3, 2, -1), (0, -1, 2)),
}


@pytest.mark.parametrize("key", sorted(TWISTED))
def test_twisted_catalog_matches_frozen_matrices(key):
    base_type, order = key
    frozen = GCM(entries=TWISTED[key])
    entry = next(
        e
        for e in affine_catalog()
        if e.label.base_type == base_type and e.label.twist_order == order
    )
    assert gcm_equivalent(frozen, entry.gcm) is not None


def test_catalog_against_golden_file():
    catalog = affine_catalog()
    assert len(catalog) == 11
    recorded = json.loads(GOLDEN.read_text())
    produced = [{"label": str(e.label), "gcm": e.gcm.to_obj()} for e in catalog]
    assert produced == recorded


# -- matching --------------------------------------------------------------------


def _permute(entries, p):
    n = len(entries)
    return tuple(tuple(entries[p[i]][p[j]] for j in range(n)) for i in range(n))


def test_match_handles_reordered_bases():
    original = GCM(entries=TWISTED[("D4", 3)])
    shuffled = GCM(entries=_permute(original.entries, (2, 0, 1)))
    label = match_affine_label(shuffled)
    assert (label.base_type, label.twist_order) == ("D4", 3)


def test_match_rejects_unknown_matrix():
    b3 = _bordered_untwisted("B3")
    with pytest.raises(AffineExtractError):
        match_affine_label(b3)


def test_equivalence_distinguishes_same_size():
    a1 = GCM(entries=((2, -2), (-2, 2)))
    a2_twisted = GCM(entries=TWISTED[("A2", 2)])
    assert gcm_equivalent(a1, a2_twisted) is None


# -- end-to-end reports ------------------------------------------------------------


def test_certificate_a2_composed_charge():
    report = affine_certificate(
        "A2",
        perm=DiagramPermutation((1, 0)),
        charge=ToralCharge(s=(1, 1), modulus=2),
    )
    assert str(report.label) == "A2^(2)"
    assert report.period == 2


def test_certificate_window_override():
    default = affine_certificate("A2", perm=DiagramPermutation((1, 0)))
    wide = affine_certificate("A2", perm=DiagramPermutation((1, 0)), window=5)
    assert default.gcm.entries == wide.gcm.entries
    assert str(default.label) == "A2^(2)"


def test_certificate_d4_triality_dims():
    report = affine_certificate("D4", perm=DiagramPermutation((2, 1, 3, 0)))
    assert report.grading_dims == (14, 7, 7)
    assert str(report.label) == "D4^(3)"
    assert report.to_obj()["label"] == "D4^(3)"
