"""Tests for the Koszul-Vinberg complex."""

import pytest

from kvpoisson.analysis import algebra, classify, exactla
from kvpoisson.cohomology import kv_cohomology
from kvpoisson.exceptions import ComplexPreconditionError, MalformedInputError, SizeGuardError


def test_cochain_dimensions():
    assert [kv_cohomology.kv_cochain_dim(2, q) for q in range(4)] == [2, 4, 8, 16]
    assert kv_cohomology.kv_cochain_dim(3, 1) == 9
    assert kv_cohomology.kv_cochain_dim(2, -1) == 0


def test_delta_shapes(unit1):
    mu = algebra.zero_structure(2)
    assert kv_cohomology.kv_delta_matrix(mu, 0).shape == (4, 2)
    assert kv_cohomology.kv_delta_matrix(mu, 2).shape == (16, 8)
    with pytest.raises(MalformedInputError):
        kv_cohomology.kv_delta_matrix(unit1, -1)


def test_zero_structure_table(zero2):
    report = kv_cohomology.kv_complex_report(zero2, q_max=2)
    assert report.betti == (2, 4, 8)
    assert report.notes == []
    for q in range(3):
        assert exactla.is_zero(kv_cohomology.kv_delta_matrix(zero2, q))


def test_unit_algebra_table(unit1):
    report = kv_cohomology.kv_complex_report(unit1, q_max=2)
    assert report.betti == (1, 0, 0)
    assert report.ranks == (0, 1, 0)


def test_square_zero_on_unit_algebra(unit1):
    for q in range(3):
        assert kv_cohomology.kv_square_zero_check(unit1, q) == (True, None)


def test_invariant_subspace_of_associative_algebra_is_everything(unit1, zero2):
    assert len(kv_cohomology.kv_invariant_subspace(unit1)) == 1
    assert len(kv_cohomology.kv_invariant_subspace(zero2)) == 2


def test_refuses_non_kv_product(family):
    with pytest.raises(ComplexPreconditionError) as excinfo:
        kv_cohomology.kv_complex_report(family(1, 0))
    assert excinfo.value.axiom == "kv"
    assert excinfo.value.witness == (1, 2, 2)


def test_degree_guard(zero2):
    with pytest.raises(SizeGuardError):
        kv_cohomology.kv_complex_report(zero2, q_max=4)


def test_cocycle_basis_of_zero_structure(zero2):
    cocycles = kv_cohomology.kv_cocycle_basis(zero2, 1)
    assert len(cocycles) == 4
    assert all(not c.alternating for c in cocycles)
    vectors = [kv_cohomology.kv_coordinates(2, 1, c.as_dict()) for c in cocycles]
    assert exactla.subspace_equal(vectors, [tuple(row) for row in exactla.identity(4)])


def test_coordinates_reject_unknown_keys():
    with pytest.raises(KeyError):
        kv_cohomology.kv_coordinates(2, 1, {((3,), 1): 1})


def test_square_zero_on_kv_grid_survivors():
    survivors = classify.grid_scan(2, 1, 1, ["kv"])
    assert survivors
    for mu in survivors:
        for q in range(2):
            ok, witness = kv_cohomology.kv_square_zero_check(mu, q)
            assert ok, (mu.constants, q, witness)


def test_square_zero_check_fails_off_kv_structures(family):
    mu = family(1, 0)
    assert kv_cohomology.kv_square_zero_check(mu, 0) == (True, None)
    ok, witness = kv_cohomology.kv_square_zero_check(mu, 1)
    assert not ok
    assert witness.degree == 1
    assert witness.as_dict()
    assert kv_cohomology.kv_square_zero_check(mu, 2) == (True, None)


def test_gate_covers_every_reported_degree(monkeypatch, zero2):
    checked = []
    original = kv_cohomology.kv_square_zero_check

    def recording(mu, q):
        checked.append(q)
        return original(mu, q)

    monkeypatch.setattr(kv_cohomology, "kv_square_zero_check", recording)
    kv_cohomology.kv_complex_report(zero2, q_max=2)
    assert checked == [0, 1, 2]


def test_negative_degree_is_rejected(zero2):
    with pytest.raises(MalformedInputError):
        kv_cohomology.kv_complex_report(zero2, q_max=-1)


def test_degree_zero_cocycles_lie_in_the_invariant_subspace():
    for mu in classify.grid_scan(2, 1, 1, ["kv"]):
        invariant = kv_cohomology.kv_invariant_subspace(mu)
        cocycles = kv_cohomology.kv_cocycle_basis(mu, 0)
        assert len(cocycles) == kv_cohomology.kv_complex_report(mu, q_max=1).betti[0]
        for c in cocycles:
            vector = kv_cohomology.kv_coordinates(2, 0, c.as_dict())
            assert exactla.in_span(invariant, vector), mu.constants


def test_invariant_subspace_of_non_associative_algebra():
    mu = algebra.make_structure(2, {(1, 2, 2): 1})
    assert algebra.passes(mu, ["kv"])
    assert not algebra.passes(mu, ["associative"])
    assert exactla.subspace_equal(kv_cohomology.kv_invariant_subspace(mu), [(1, 0)])
    report = kv_cohomology.kv_complex_report(mu, q_max=2)
    assert report.rows[0].cochain_dim == 1
    assert report.betti[0] == 0
    assert report.notes == ["degree 0 restricted to J(V) of dimension 1"]
    assert kv_cohomology.kv_cocycle_basis(mu, 0) == []
