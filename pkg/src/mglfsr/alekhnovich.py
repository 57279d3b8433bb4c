"""Divide-and-conquer weak Popov reduction (Alekhnovich's scheme).

The reducer makes exactly the row reductions Mulders-Storjohann would make
with the same conflict rule, but decides them on truncated copies of the
matrix and collects them into transformation matrices.

A node receives a matrix that is exact only in the top ``budget`` weighted
degrees of every row, and performs reductions until the matrix is in weak
Popov form or the row degrees have dropped by ``budget`` in total.  While the
total drop stays below the budget, every row still has an exact leading part
(a reduction of ``v_j`` by ``v_i`` can only inherit ``v_i``'s remaining
accuracy, which is at least ``budget`` minus the drop so far), so all
decisions are the true ones.  The node splits its budget in two: the left
child runs on a tighter truncation, its transform is applied, and the right
child continues with whatever budget is left.
"""

from __future__ import annotations

from .polymat import (
    PolyMatrix,
    WeightProfile,
    apply_reduction,
    orthogonality_defect,
    pick_conflict,
    reduction_multiplier,
    row_leads,
)


def polymatrix_mul(A: PolyMatrix, B: PolyMatrix) -> PolyMatrix:
    return A @ B


def _project(V: PolyMatrix, budget: int, profile: WeightProfile) -> PolyMatrix:
    nu, w = profile.nu, profile.w
    rows = []
    for row in V:
        deg, pos = profile.leading(row)
        if pos < 0:
            rows.append(list(row))
            continue
        cutoff = deg - budget
        rows.append([a.high_part((cutoff - w[k]) // nu + 1) for k, a in enumerate(row)])
    return PolyMatrix(rows, V.field)


def t_projection(V: PolyMatrix, t: int, profile: WeightProfile) -> PolyMatrix:
    """Keep, per row, the monomials of weighted degree above ``deg v_i - t*nu``."""
    if t < 0:
        raise ValueError("t must be non-negative")
    return _project(V, t * profile.nu, profile)


def _base(V: PolyMatrix, profile: WeightProfile, log: list) -> PolyMatrix:
    # V holds only its leading monomials; stop at the first degree drop.
    W = V.copy()
    U = PolyMatrix.identity(V.field, V.size)
    leads = row_leads(W, profile)
    while (pair := pick_conflict(leads)) is not None:
        i, j = pair
        alpha, shift = reduction_multiplier(W, i, j, profile)
        apply_reduction(W, i, j, alpha, shift)
        apply_reduction(U, i, j, alpha, shift)
        log.append((i, j, alpha, shift))
        new = profile.leading(W.rows[j])
        if new[1] < 0 or new[0] < leads[j][0]:
            break
        leads[j] = new
    return U


def _reduce(V: PolyMatrix, budget: int, profile: WeightProfile, log: list) -> PolyMatrix:
    identity = PolyMatrix.identity(V.field, V.size)
    if budget <= 0:
        return identity
    leads = row_leads(V, profile)
    if pick_conflict(leads) is None:
        return identity
    if budget == 1:
        return _base(V, profile, log)

    left = (budget + 1) // 2
    U1 = _reduce(_project(V, left, profile), left, profile, log)
    V1 = U1 @ V
    leads1 = [profile.leading(r) for r in V1]
    if any(pos < 0 for _, pos in leads1):
        # a row fell below its exact part: the budget is spent
        return U1
    dropped = sum(d0 - d1 for (d0, _), (d1, _) in zip(leads, leads1))
    if dropped >= budget or pick_conflict(leads1) is None:
        return U1
    rest = budget - dropped
    U2 = _reduce(_project(V1, rest, profile), rest, profile, log)
    return U2 @ U1


def accuracy_reduce(
    V: PolyMatrix, t: int, profile: WeightProfile, log: list | None = None
) -> PolyMatrix:
    """Transform ``U`` with ``U @ V`` weak Popov or of degree sum lower by ``>= t*nu``.

    Only the ``t``-projection of ``V`` is inspected.  If ``log`` is given, the
    elementary reductions ``(i, j, alpha, shift)`` are appended to it in order;
    replaying them on ``V`` with ``apply_reduction`` reproduces ``U @ V``.
    """
    if t < 0:
        raise ValueError("t must be non-negative")
    budget = t * profile.nu
    return _reduce(_project(V, budget, profile), budget, profile, [] if log is None else log)


def reduce_full(V: PolyMatrix, profile: WeightProfile, *, with_count: bool = False):
    """Weak Popov basis of the row space of ``V``; ``V`` itself is left untouched.

    A budget of one more than the orthogonality defect can never be used up,
    since the total degree drop of a full reduction equals the defect; the
    loop is a guard only.
    """
    log: list = []
    V = V.copy()
    while pick_conflict(row_leads(V, profile)) is not None:
        budget = orthogonality_defect(V, profile) + 1
        U = _reduce(_project(V, budget, profile), budget, profile, log)
        V = U @ V
    if with_count:
        return V, len(log)
    return V
