import pytest
from hypothesis import given

from conftest import instances
from mglfsr.ff import Field
from mglfsr.instance import build_basis, extract_minimal, is_solution, new_instance, weak_popov_certificate
from mglfsr.ms import (
    reduce_to_weak_popov,
    reduce_to_weak_popov_mod,
    row_reduction_bound,
)
from mglfsr.polymat import (
    PolyMatrix,
    WeightProfile,
    is_weak_popov,
    orthogonality_defect,
    row_leads,
)

F3 = Field(3)
T1 = WeightProfile.trivial(1)


def test_bound_formula():
    assert row_reduction_bound(1, 1, 0) == 3
    assert row_reduction_bound(2, 2, 3) == 10  # ceil(9/2) + 5
    assert row_reduction_bound(3, 1, 4) == 23


def test_weak_popov_input_needs_no_reductions():
    V = PolyMatrix.identity(F3, 3)
    stats = reduce_to_weak_popov(V, WeightProfile.trivial(2))
    assert stats.row_reductions == 0
    assert V == PolyMatrix.identity(F3, 3)


def test_unit_sequence_example():
    inst = new_instance(F3, [F3.one()], [F3.x() ** 3], T1)
    V = build_basis(inst)
    stats = reduce_to_weak_popov(V, T1)
    assert is_weak_popov(V, T1)
    assert (3, 0) in row_leads(V, T1)
    # zero defect still allows up to 2l+1 reductions
    assert orthogonality_defect(build_basis(inst), T1) == 0
    assert stats.row_reductions <= stats.bound == 3


def test_mod_variant_is_void_when_columns_stay_small():
    inst = new_instance(F3, [F3.one()], [F3.x() ** 3], T1)
    A, B = build_basis(inst), build_basis(inst)
    sa = reduce_to_weak_popov(A, T1)
    sb = reduce_to_weak_popov_mod(B, T1, inst.G)
    assert A == B and sa == sb


def test_rank_deficient_input_is_rejected():
    x = F3.x()
    V = PolyMatrix([[x, F3.one()], [x, F3.one()]])
    with pytest.raises(ValueError):
        reduce_to_weak_popov(V, T1)


def test_moduli_count_checked():
    inst = new_instance(F3, [F3.one()], [F3.x() ** 3], T1)
    with pytest.raises(ValueError):
        reduce_to_weak_popov_mod(build_basis(inst), T1, [])


@given(instances(ells=(1, 2, 3, 4), nus=(1, 2, 3), w_range=(0, 7)))
def test_reduction_count_within_bound(inst):
    prof = inst.profile
    for mod in (False, True):
        V = build_basis(inst)
        if mod:
            stats = reduce_to_weak_popov_mod(V, prof, inst.G)
        else:
            stats = reduce_to_weak_popov(V, prof)
        assert stats.within_bound(), (stats, mod)
        assert weak_popov_certificate(inst, V)


@given(instances())
def test_mod_variant_gives_same_minimal_degree(inst):
    A, B = build_basis(inst), build_basis(inst)
    reduce_to_weak_popov(A, inst.profile)
    reduce_to_weak_popov_mod(B, inst.profile, inst.G)
    a, b = extract_minimal(inst, A), extract_minimal(inst, B)
    assert a.lam.deg == b.lam.deg
    assert is_solution(inst, a.vector) and is_solution(inst, b.vector)
