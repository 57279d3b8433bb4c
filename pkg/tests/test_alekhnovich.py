import random

import pytest
from hypothesis import given, strategies as st

from conftest import instances
from mglfsr import ms
from mglfsr.alekhnovich import accuracy_reduce, polymatrix_mul, reduce_full, t_projection
from mglfsr.ff import Field
from mglfsr.instance import build_basis, is_member, new_instance, weak_popov_certificate
from mglfsr.polymat import (
    PolyMatrix,
    WeightProfile,
    apply_reduction,
    degree_sum,
    determinant,
    is_weak_popov,
    maxdeg,
    row_leads,
)

F5 = Field(5)
x = F5.x()
T1 = WeightProfile.trivial(1)


def test_projection_examples():
    V = PolyMatrix([[x**2 + x + 1, x], [F5.one(), x**3 + 2]])
    assert t_projection(V, maxdeg(V) + 1, T1) == V
    assert t_projection(V, 2, T1).rows[0] == [x**2 + x, x]
    assert t_projection(V, 1, T1) == PolyMatrix([[x**2, F5.zero()], [F5.zero(), x**3]])
    Z = PolyMatrix([[F5.zero(), F5.zero()], [F5.one(), x]])
    assert t_projection(Z, 1, T1).rows[0] == Z.rows[0]
    with pytest.raises(ValueError):
        t_projection(V, -1, T1)


def test_projection_with_weights():
    prof = WeightProfile(2, (1, 0))
    # weighted degrees: row 0 entries 5 and 4, row 1 entries 1 and 2
    V = PolyMatrix([[x**2 + 1, x**2 + x], [F5.one(), x]])
    P = t_projection(V, 1, prof)
    assert P.rows[0] == [x**2, x**2]
    assert P.rows[1] == [F5.one(), x]


def test_weak_popov_input_gives_identity():
    V = PolyMatrix([[x**2, F5.one()], [F5.one(), x]])
    assert accuracy_reduce(V, 3, T1) == PolyMatrix.identity(F5, 2)


def test_zero_defect_still_reduces():
    f3 = Field(3)
    inst = new_instance(f3, [f3.one()], [f3.x() ** 3], T1)
    V = build_basis(inst)
    W = reduce_full(V, T1)
    assert is_weak_popov(W, T1)
    assert V == build_basis(inst)


def test_polymatrix_mul_identities():
    rng = random.Random(5)
    A = PolyMatrix([[F5([rng.randrange(5) for _ in range(3)]) for _ in range(3)] for _ in range(3)])
    B = PolyMatrix([[F5([rng.randrange(5) for _ in range(3)]) for _ in range(3)] for _ in range(3)])
    I = PolyMatrix.identity(F5, 3)
    assert polymatrix_mul(A, I) == A and polymatrix_mul(I, B) == B
    v = [F5([1, 2]), F5([3]), F5([0, 0, 4])]
    assert polymatrix_mul(A, B).apply(v) == A.apply(B.apply(v))


@given(instances(ells=(1, 2, 3), nus=(1, 2, 3), w_range=(0, 6)), st.integers(0, 8))
def test_replay_and_postcondition(inst, t):
    prof = inst.profile
    V = build_basis(inst)
    log = []
    U = accuracy_reduce(V, t, prof, log)
    # replaying the recorded reductions on the full matrix gives U @ V
    R = V.copy()
    for i, j, alpha, shift in log:
        apply_reduction(R, i, j, alpha, shift)
    assert U @ V == R
    W = U @ V
    assert is_weak_popov(W, prof) or degree_sum(V, prof) - degree_sum(W, prof) >= t * prof.nu
    d = determinant(U)
    assert d.deg == 0


@given(instances(ells=(1, 2, 3), nus=(1, 2, 3), w_range=(0, 6)), st.integers(0, 6))
def test_transform_degrees_are_relative_to_row_degrees(inst, t):
    prof = inst.profile
    V = build_basis(inst)
    U = accuracy_reduce(V, t, prof)
    D = [d for d, _ in row_leads(V, prof)]
    for j, row in enumerate(U):
        for k, u in enumerate(row):
            if u:
                assert prof.nu * u.deg <= D[j] - D[k] + t * prof.nu


def test_transform_degree_can_exceed_budget_plus_one():
    # a short first row may be subtracted from a much longer second one
    inst = new_instance(F5, [F5.one()], [x**10], T1)
    U = accuracy_reduce(build_basis(inst), 1, T1)
    assert U.rows[1][0].deg == 10


@given(instances(ells=(1, 2, 3, 4), nus=(1, 2, 3), w_range=(0, 7)))
def test_full_reduction_matches_mulders_storjohann(inst):
    prof = inst.profile
    V = build_basis(inst)
    W, count = reduce_full(V, prof, with_count=True)
    M = build_basis(inst)
    stats = ms.reduce_to_weak_popov(M, prof)
    assert W == M
    assert count == stats.row_reductions
    assert weak_popov_certificate(inst, W)


def _adjugate(U):
    n = U.size
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            minor = PolyMatrix(
                [[U[r][c] for c in range(n) if c != i] for r in range(n) if r != j], U.field
            ) if n > 1 else None
            cof = determinant(minor) if minor else U.field.one()
            row.append(cof if (i + j) % 2 == 0 else -cof)
        out.append(row)
    return PolyMatrix(out, U.field)


@given(instances(ells=(1, 2), deg_range=(1, 5)))
def test_full_reduction_spans_the_same_module(inst):
    prof = inst.profile
    V = build_basis(inst)
    W = reduce_full(V, prof)
    assert all(is_member(inst, row) for row in W)
    # express V in terms of W: find U with U V = W, then adj(U) W = det(U) V
    U = PolyMatrix.identity(inst.field, V.size)
    R = V.copy()
    log = []
    while not is_weak_popov(R, prof):
        step = accuracy_reduce(R, maxdeg(R, prof) + 1, prof, log)
        U = step @ U
        R = step @ R
    assert R == W
    det = determinant(U)
    assert det.deg == 0
    lhs = _adjugate(U) @ W
    assert lhs == PolyMatrix([[det * a for a in row] for row in V], inst.field)
