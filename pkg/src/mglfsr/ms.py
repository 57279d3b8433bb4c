"""Mulders-Storjohann reduction to weak Popov form.

Row reductions are applied until no two rows share a leading position.  The
``_mod`` variant additionally reduces entries ``1..l`` of every replaced row
modulo the corresponding ``G_i``, which keeps entry degrees below ``deg G_i``
without changing the module or the reduction bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .ff import Poly
from .polymat import (
    PolyMatrix,
    WeightProfile,
    apply_reduction,
    orthogonality_defect,
    pick_conflict,
    reduction_multiplier,
    row_leads,
)


@dataclass
class ReductionStats:
    row_reductions: int
    bound: int

    def within_bound(self) -> bool:
        return self.row_reductions <= self.bound


def row_reduction_bound(ell: int, nu: int, defect: int) -> int:
    """``ceil((l+1)/nu * defect) + 2l + 1``."""
    return -(-(ell + 1) * defect // nu) + 2 * ell + 1


def reduce_row_mod(V: PolyMatrix, j: int, moduli: Sequence[Poly]) -> None:
    row = V.rows[j]
    V.rows[j] = [row[0]] + [a % g for a, g in zip(row[1:], moduli)]


def reduce_step_mod(
    V: PolyMatrix, i: int, j: int, profile: WeightProfile, moduli: Sequence[Poly]
) -> None:
    """One row reduction of ``v_j`` by ``v_i`` followed by reducing ``v_j`` mod the ``G``'s."""
    alpha, shift = reduction_multiplier(V, i, j, profile)
    apply_reduction(V, i, j, alpha, shift)
    reduce_row_mod(V, j, moduli)


def _run(V: PolyMatrix, profile: WeightProfile, moduli: Sequence[Poly] | None) -> ReductionStats:
    ell = V.size - 1
    if profile.ell != ell:
        raise ValueError("profile length does not match the matrix size")
    if moduli is not None and len(moduli) != ell:
        raise ValueError(f"expected {ell} moduli, got {len(moduli)}")
    bound = row_reduction_bound(ell, profile.nu, orthogonality_defect(V, profile))
    leads = row_leads(V, profile)
    count = 0
    inv = V.field.inv
    p = V.field.p
    while (pair := pick_conflict(leads)) is not None:
        i, j = pair
        h = leads[j][1]
        a, b = V.rows[i][h], V.rows[j][h]
        apply_reduction(V, i, j, b.lc * inv(a.lc) % p, len(b.coeffs) - len(a.coeffs))
        if moduli is not None:
            reduce_row_mod(V, j, moduli)
        leads[j] = profile.leading(V.rows[j])
        if leads[j][1] < 0:
            raise ValueError(f"row {j} vanished; the input was not a full-rank basis")
        count += 1
    return ReductionStats(count, bound)


def reduce_to_weak_popov(V: PolyMatrix, profile: WeightProfile) -> ReductionStats:
    """Reduce ``V`` in place; ``stats.bound`` is computed from the input's defect."""
    return _run(V, profile, None)


def reduce_to_weak_popov_mod(
    V: PolyMatrix, profile: WeightProfile, moduli: Sequence[Poly]
) -> ReductionStats:
    return _run(V, profile, moduli)
