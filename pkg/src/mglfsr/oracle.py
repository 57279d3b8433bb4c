"""Reference solvers for small instances, independent of the module machinery.

Both search monic ``lambda`` by ascending degree ``D``.  For a fixed ``D``
the conditions on ``lambda`` are linear: every coefficient of
``lambda * S_i mod G_i`` at a plain degree ``d`` with
``nu*d + w_i >= nu*D + w_0`` must vanish.  (Any other ``Omega_i`` in the
residue class has degree at least ``deg G_i``, so the remainder is the best
candidate.)
"""

from __future__ import annotations

import itertools
from typing import TYPE_CHECKING

from .ff import Field, Poly

if TYPE_CHECKING:
    from .instance import MgLfsrInstance, Solution

ENUMERATION_BUDGET = 200_000


class BudgetExceeded(RuntimeError):
    pass


def default_max_degree(inst: MgLfsrInstance) -> int:
    """Generous search bound; ``prod G_i`` (made monic) is always a solution."""
    nu, w = inst.profile.nu, inst.profile.w
    slack = max(0, max(-(-(wi - w[0]) // nu) for wi in w[1:]))
    return sum(g.deg for g in inst.G) + slack + 1


def solve_linear(field: Field, rows: list[list[int]], rhs: list[int]) -> list[int] | None:
    """One solution of ``rows @ x = rhs`` over GF(p), or None if inconsistent."""
    p = field.p
    ncols = len(rows[0]) if rows else 0
    aug = [[a % p for a in r] + [b % p] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((k for k in range(r, len(aug)) if aug[k][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = field.inv(aug[r][c])
        aug[r] = [a * inv % p for a in aug[r]]
        for k in range(len(aug)):
            if k != r and aug[k][c]:
                f = aug[k][c]
                aug[k] = [(a - f * b) % p for a, b in zip(aug[k], aug[r])]
        pivots.append(c)
        r += 1
    if any(not any(row[:-1]) and row[-1] for row in aug):
        return None
    x = [0] * ncols
    for row, c in zip(aug, pivots):
        x[c] = row[-1]
    return x


def _solution(inst: MgLfsrInstance, lam: Poly) -> Solution:
    from .instance import Solution

    return Solution(lam, tuple((lam * s) % g for s, g in zip(inst.S, inst.G)))


def minimal_degree_by_linear_algebra(
    inst: MgLfsrInstance, max_degree: int | None = None
) -> tuple[int, Solution] | None:
    field, p = inst.field, inst.field.p
    nu, w = inst.profile.nu, inst.profile.w
    if max_degree is None:
        max_degree = default_max_degree(inst)
    # column e holds x**e * S_i mod G_i, for every i
    columns = []
    for s, g in zip(inst.S, inst.G):
        cur, cols = s, []
        for _ in range(max_degree + 1):
            cols.append(cur)
            cur = cur.shift(1) % g
        columns.append(cols)

    for D in range(max_degree + 1):
        rows, rhs = [], []
        for idx, (cols, g) in enumerate(zip(columns, inst.G), 1):
            for d in range(g.deg):
                if nu * d + w[idx] >= nu * D + w[0]:
                    rows.append([cols[e].coeff(d) for e in range(D)])
                    rhs.append(-cols[D].coeff(d) % p)
        x = solve_linear(field, rows, rhs) if rows else [0] * D
        if x is None:
            continue
        lam = field(x + [1])
        return D, _solution(inst, lam)
    return None


def exhaustive_enumerate(
    inst: MgLfsrInstance, max_degree: int | None = None, budget: int = ENUMERATION_BUDGET
) -> tuple[int, Solution] | None:
    from .instance import is_solution

    field, p = inst.field, inst.field.p
    if max_degree is None:
        max_degree = default_max_degree(inst)
    if p ** (max_degree + 1) > budget:
        raise BudgetExceeded(f"{p}^{max_degree + 1} candidates exceed the budget of {budget}")
    for D in range(max_degree + 1):
        for low in itertools.product(range(p), repeat=D):
            lam = field(list(low) + [1])
            sol = _solution(inst, lam)
            if is_solution(inst, sol.vector):
                return D, sol
    return None
