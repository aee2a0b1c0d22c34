"""Structural laws checked across the whole diagram corpus."""

import pytest

from corpus import CorpusEntry, corpus, det_int
from trihom.charclass import (
    linking_matrix_y,
    linking_matrix_z,
    spin_y,
    spin_z,
    w2_y,
    w2_z,
)
from trihom.exactalg import IntMatrix, kernel_basis
from trihom.homology import (
    build_cy,
    build_cz,
    euler_characteristic,
    h_closed_forms,
    homology_of,
    intersection_form,
    phi,
)
from trihom.surface import infer_k, validate

ENTRIES = corpus()
MOVED = [e for e in ENTRIES if e.base is not None]
BY_NAME = {e.name: e for e in ENTRIES}
WITH_ARCS = [e for e in ENTRIES if e.has_arcs]

entry_ids = [e.name for e in ENTRIES]


def groups_of(result) -> list[str]:
    return [str(g) for g in result.groups()]


def test_corpus_shape() -> None:
    assert len(ENTRIES) >= 20
    assert len(BY_NAME) == len(ENTRIES)
    assert len(WITH_ARCS) >= 6
    assert len(MOVED) >= 5


def test_corpus_is_deterministic() -> None:
    again = {e.name: e.diagram for e in corpus()}
    for entry in ENTRIES:
        other = again[entry.name]
        assert other.alpha == entry.diagram.alpha
        assert other.beta == entry.diagram.beta
        assert other.gamma == entry.diagram.gamma
        if entry.has_arcs:
            assert other.arcs.to_rows() == entry.diagram.arcs.to_rows()


@pytest.mark.parametrize("entry", ENTRIES, ids=entry_ids)
def test_every_entry_validates(entry: CorpusEntry) -> None:
    rep = validate(entry.diagram)
    assert rep.ok, [c.name for c in rep.failures()]


@pytest.mark.parametrize("entry", ENTRIES, ids=entry_ids)
def test_homology_routes_agree(entry: CorpusEntry) -> None:
    d = entry.diagram
    hy = groups_of(homology_of(build_cy(d)))
    hz = groups_of(homology_of(build_cz(d)))
    hc = groups_of(h_closed_forms(d))
    assert hy == hz == hc
    assert hy[0] == "Z"


@pytest.mark.parametrize("entry", ENTRIES, ids=entry_ids)
def test_boundary_composites_vanish(entry: CorpusEntry) -> None:
    for complex_ in (build_cy(entry.diagram), build_cz(entry.diagram)):
        d1, d2, d3 = complex_.boundaries
        assert d1.mul(d2).is_zero
        assert d2.mul(d3).is_zero


@pytest.mark.parametrize("entry", ENTRIES, ids=entry_ids)
def test_euler_characteristic_matches_handle_counts(entry: CorpusEntry) -> None:
    d = entry.diagram
    sig = d.sig
    k1, k2, k3 = infer_k(d)
    chi_small = 1 - k1 + (sig.g - sig.p) - (k2 + k3 - 2 * sig.l)
    chi_large = 1 - sig.n + 3 * (sig.g - sig.p) - (k1 + k2 + k3 - 3 * sig.l)
    assert chi_small == chi_large
    assert euler_characteristic(build_cy(d)) == chi_small
    assert euler_characteristic(build_cz(d)) == chi_large


@pytest.mark.parametrize("entry", ENTRIES, ids=entry_ids)
def test_intersection_form_laws(entry: CorpusEntry) -> None:
    d = entry.diagram
    form = intersection_form(d)
    h2 = h_closed_forms(d).h2
    assert form.matrix.rows == form.matrix.cols == h2.free_rank
    assert form.torsion == h2.invariant_factors
    assert form.matrix.to_rows() == form.matrix.transpose().to_rows()
    for i, gi in enumerate(form.generators):
        for j, gj in enumerate(form.generators):
            assert form.matrix.entry(i, j) == phi(d, gi, gj)


@pytest.mark.parametrize("entry", ENTRIES, ids=entry_ids)
def test_pairing_is_bilinear_on_classes(entry: CorpusEntry) -> None:
    d = entry.diagram
    gens = intersection_form(d).generators
    zero = tuple(0 for _ in range(len(d.gamma)))
    assert phi(d, zero, zero) == 0
    if not gens:
        return
    first = gens[0]
    doubled = tuple(2 * v for v in first)
    assert phi(d, doubled, first) == 2 * phi(d, first, first)
    if len(gens) > 1:
        second = gens[1]
        mixed = tuple(a + b for a, b in zip(first, second))
        assert phi(d, mixed, first) == phi(d, first, first) + phi(d, second, first)
        assert phi(d, first, second) == phi(d, second, first)


@pytest.mark.parametrize("entry", ENTRIES, ids=entry_ids)
def test_w2_parity_law(entry: CorpusEntry) -> None:
    # pairing a two-cycle of the large complex against the w2 coefficients
    # has the parity of the self-intersection of the class it represents
    d = entry.diagram
    count = len(d.gamma)
    coeffs = w2_z(d).coefficients
    d2 = build_cz(d).boundaries[1]
    for cycle in kernel_basis(d2).generators():
        gamma_part = tuple(-v for v in cycle[2 * count :])
        self_int = phi(d, gamma_part, gamma_part)
        dot = sum(a * b for a, b in zip(coeffs, cycle))
        assert (dot - self_int) % 2 == 0


@pytest.mark.parametrize("entry", ENTRIES, ids=entry_ids)
def test_w2_is_linking_diagonal_mod_two(entry: CorpusEntry) -> None:
    d = entry.diagram
    assert w2_z(d).coefficients == tuple(
        v % 2 for v in linking_matrix_z(d).diagonal()
    )
    if entry.has_arcs:
        assert w2_y(d).coefficients == tuple(
            v % 2 for v in linking_matrix_y(d).diagonal()
        )


@pytest.mark.parametrize("entry", WITH_ARCS, ids=[e.name for e in WITH_ARCS])
def test_spin_routes_agree(entry: CorpusEntry) -> None:
    assert spin_y(entry.diagram).spin == spin_z(entry.diagram).spin


@pytest.mark.parametrize("entry", ENTRIES, ids=entry_ids)
def test_spin_witness_certifies(entry: CorpusEntry) -> None:
    d = entry.diagram
    verdict = spin_z(d)
    if not verdict.spin:
        assert verdict.witness is None
        return
    assert verdict.witness is not None
    assert set(verdict.witness) <= {0, 1}
    rows = [list(v) for fam in ("alpha", "beta", "gamma") for v in d.family(fam)]
    if rows:
        stacked = IntMatrix.from_rows(rows)
        got = stacked.matvec(verdict.witness)
        for a, b in zip(got, w2_z(d).coefficients):
            assert (a - b) % 2 == 0


@pytest.mark.parametrize(
    "moved", MOVED, ids=[e.name for e in MOVED]
)
def test_moves_preserve_invariants(moved: CorpusEntry) -> None:
    base = BY_NAME[moved.base].diagram
    other = moved.diagram
    assert infer_k(base) == infer_k(other)
    assert groups_of(h_closed_forms(base)) == groups_of(h_closed_forms(other))
    assert euler_characteristic(build_cz(base)) == euler_characteristic(
        build_cz(other)
    )
    assert spin_z(base).spin == spin_z(other).spin

    form_a = intersection_form(base)
    form_b = intersection_form(other)
    assert form_a.matrix.rows == form_b.matrix.rows
    assert form_a.torsion == form_b.torsion
    # congruent integer matrices share their determinant
    assert det_int(form_a.matrix) == det_int(form_b.matrix)

    if moved.has_arcs and BY_NAME[moved.base].has_arcs:
        # the small-route outputs depend only on pairings, which moves preserve
        assert linking_matrix_y(base).to_rows() == linking_matrix_y(other).to_rows()
        assert w2_y(base).coefficients == w2_y(other).coefficients
        assert spin_y(base).spin == spin_y(other).spin
