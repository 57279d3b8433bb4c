"""Demand-driven minimisation.

Runs Mulders-Storjohann (modulo-reducing variant) on the starting basis while
keeping only its first column ``lambda_0..lambda_l`` plus the leading
monomial ``alpha_j x**theta_j`` of rows ``1..l``.  Row 0 is the only row that
ever needs reducing; its other entries are ``lambda_0 * S_i mod G_i`` and are
probed one coefficient at a time, walking a cursor ``(theta, i)`` down
through the admissible values ``(l+1) * theta + i``.

Degrees ``theta`` are weighted (embedded) degrees; polynomials are kept
unweighted, so a weighted shift ``theta - theta_i`` becomes the plain shift
``(theta - theta_i) / nu``, exact because both sides share the residue
``w_i mod nu``.
"""

from __future__ import annotations

from typing import TYPE_CHECKING

import numpy as np

from .ff import Poly
from .polymat import WeightProfile

if TYPE_CHECKING:
    from .instance import MgLfsrInstance

# moduli with at most this many non-zero terms take the incremental path
SPARSE_TERMS = 4

# int64 is safe for dot products of up to _INT64_TERMS terms below this modulus
_INT64_MAX_P = 2**24
_INT64_TERMS = 2**14


class InvariantViolation(AssertionError):
    pass


def _previous(theta: int, i: int, profile: WeightProfile) -> tuple[int, int]:
    size, nu, w = profile.size, profile.nu, profile.w
    target = size * theta + i
    best_val, best = None, (0, 0)
    for k in range(size):
        t = (target - 1 - k) // size
        t -= (t - w[k]) % nu
        v = size * t + k
        if best_val is None or v > best_val:
            best_val, best = v, (t, k)
    return best


def previous(theta: int, i: int, profile: WeightProfile) -> tuple[int, int]:
    """Admissible ``(theta', i')`` with the largest value below ``val(theta, i)``.

    Admissible means ``theta' == w_i' (mod nu)``: the degree/position pairs a
    module element can lead with.
    """
    t, k = _previous(theta, i, profile)
    if t < 0:
        raise ValueError(f"no admissible predecessor of ({theta}, {i})")
    return t, k


def _dtype_for(p: int):
    return np.int64 if p <= _INT64_MAX_P else object


def _as_array(a: Poly, dtype) -> np.ndarray:
    return np.array(a.coeffs, dtype=dtype)


def _trim(a: np.ndarray) -> np.ndarray:
    nz = np.flatnonzero(a)
    return a[: nz[-1] + 1] if nz.size else a[:0]


def _dot(a: np.ndarray, b: np.ndarray, p: int) -> int:
    if a.dtype != object and len(a) > _INT64_TERMS:
        a, b = a.astype(object), b.astype(object)
    return int(np.dot(a, b) % p)


def _axpy(a: np.ndarray, c: int, shift: int, b: np.ndarray, p: int) -> np.ndarray:
    """``a - c * x**shift * b`` mod p."""
    n = max(len(a), len(b) + shift)
    out = np.zeros(n, dtype=a.dtype)
    out[: len(a)] = a
    out[shift: shift + len(b)] -= c * b
    return _trim(out % p)


class CoefficientOracle:
    """Coefficients of ``lambda * S_i mod G_i`` for a single position ``i``.

    ``path`` is ``"monomial"`` (plain convolution, no reduction needed),
    ``"sparse"`` (a lazily grown table of ``x**j * S_i mod G_i``, each row
    obtained from the previous one by a shift and a few-term correction) or
    ``"dense"`` (full multiply and remainder per probe).
    """

    def __init__(self, inst: MgLfsrInstance, i: int) -> None:
        if not 1 <= i <= inst.ell:
            raise ValueError(f"position {i} out of range 1..{inst.ell}")
        self.field = inst.field
        self.p = inst.field.p
        self.S = inst.S[i - 1]
        self.G = inst.G[i - 1]
        self.nu = inst.profile.nu
        self.w = inst.profile.w[i]
        self.dtype = _dtype_for(self.p)
        self.mod_deg = len(self.G.coeffs) - 1
        terms = self.G.term_count()
        if terms == 1:
            self.path = "monomial"
            self._srev = _as_array(self.S, self.dtype)[::-1].copy()
        elif terms <= SPARSE_TERMS:
            self.path = "sparse"
            self._table = np.zeros((0, self.mod_deg), dtype=self.dtype)
            self._g_terms = [(k, c) for k, c in enumerate(self.G.coeffs[:-1]) if c]
            self._inv_lc = self.field.inv(self.G.lc)
        else:
            self.path = "dense"

    def plain_degree(self, theta: int) -> int:
        if (theta - self.w) % self.nu:
            raise ValueError(f"degree {theta} is not admissible at this position")
        return (theta - self.w) // self.nu

    def _grow(self, rows: int) -> None:
        table = self._table
        have = table.shape[0]
        if have >= rows:
            return
        new = np.zeros((max(rows, 2 * have), self.mod_deg), dtype=self.dtype)
        new[:have] = table
        p = self.p
        if have == 0:
            new[0, : len(self.S.coeffs)] = self.S.coeffs
            have = 1
        for j in range(have, new.shape[0]):
            prev = new[j - 1]
            row = new[j]
            row[1:] = prev[:-1]
            top = int(prev[-1])
            if top:
                q = top * self._inv_lc % p
                for k, c in self._g_terms:
                    row[k] = (int(row[k]) - q * c) % p
        self._table = new

    def query(self, lam: np.ndarray | Poly, theta: int) -> int:
        d = self.plain_degree(theta)
        if d < 0 or d >= self.mod_deg:
            return 0
        if self.path == "dense":
            if not isinstance(lam, Poly):
                lam = Poly(self.field, lam.tolist())
            return self.query_general(lam, theta)
        if isinstance(lam, Poly):
            lam = _as_array(lam, self.dtype)
        if not len(lam):
            return 0
        if self.path == "monomial":
            n = len(self._srev)
            lo = max(0, d - n + 1)
            hi = min(len(lam) - 1, d)
            if lo > hi:
                return 0
            return _dot(lam[lo: hi + 1], self._srev[n - 1 - d + lo: n - d + hi], self.p)
        self._grow(len(lam))
        return _dot(lam, self._table[: len(lam), d], self.p)

    def query_general(self, lam: Poly, theta: int) -> int:
        """Reference path: multiply, reduce, read one coefficient."""
        d = self.plain_degree(theta)
        return ((lam * self.S) % self.G).coeff(d)


def coefficient_query(
    inst: MgLfsrInstance, lam0: Poly, i: int, theta: int, *, general: bool = False
) -> int:
    """Coefficient of weighted degree ``theta`` in position ``i`` of ``lam0``'s row."""
    oracle = CoefficientOracle(inst, i)
    if general:
        return oracle.query_general(lam0, theta)
    return oracle.query(lam0, theta)


class _Shadow:
    """Full-matrix twin of a demand run, stepped with the same schedule."""

    def __init__(self, inst: MgLfsrInstance) -> None:
        from .instance import build_basis

        self.inst = inst
        self.profile = inst.profile
        self.V = build_basis(inst)
        self.checks = 0

    def _fail(self, which: int, msg: str) -> None:
        raise InvariantViolation(f"invariant {which}: {msg}")

    def check(self, solver: DemandSolver, theta: int, i: int, in_loop: bool) -> None:
        field, prof, V = self.inst.field, self.profile, self.V
        for j, lam in enumerate(solver.lam):
            if V.rows[j][0] != Poly(field, lam.tolist()):
                self._fail(2, f"lambda_{j} differs from the first column")
        for j in range(1, prof.size):
            deg, pos = prof.leading(V.rows[j])
            if pos != j or deg != solver.theta_lead[j] or V.rows[j][j].lc != solver.alpha_lead[j]:
                self._fail(3, f"leading monomial of row {j} is not tracked correctly")
        if in_loop:
            deg, pos = prof.leading(V.rows[0])
            if prof.size * deg + pos > prof.size * theta + i:
                self._fail(4, f"row 0 value exceeds the cursor ({theta}, {i})")
        self.checks += 1

    def reduce(self, theta: int, i: int, swap: bool) -> None:
        from . import ms
        from .polymat import find_conflict

        prof, V = self.profile, self.V
        if prof.leading(V.rows[0]) != (theta, i):
            self._fail(1, f"non-zero probe at ({theta}, {i}) but row 0 leads elsewhere")
        pair = find_conflict(V, prof)
        if pair is None or set(pair) != {0, i}:
            self._fail(1, f"expected the only conflict on rows (0, {i}), found {pair}")
        if swap:
            V.rows[0], V.rows[i] = V.rows[i], V.rows[0]
        ms.reduce_step_mod(V, i, 0, prof, self.inst.G)

    def finish(self, lam0: np.ndarray) -> None:
        from .polymat import is_weak_popov

        V, prof = self.V, self.profile
        if not is_weak_popov(V, prof) or prof.leading(V.rows[0])[1] != 0:
            self._fail(4, "final shadow basis is not weak Popov with row 0 leading at 0")
        if V.rows[0][0] != Poly(self.inst.field, lam0.tolist()):
            self._fail(2, "final lambda_0 differs from the shadow")


class DemandSolver:
    """One demand-driven run; counters are kept for tests and the CLI."""

    def __init__(self, inst: MgLfsrInstance, *, shadow: bool = False) -> None:
        self.inst = inst
        self.iterations = 0
        self.reductions = 0
        self.shadow = _Shadow(inst) if shadow else None

    def run(self) -> Poly:
        inst, prof = self.inst, self.inst.profile
        field, p = inst.field, inst.field.p
        nu, w, ell = prof.nu, prof.w, inst.ell
        dtype = _dtype_for(p)

        start = [inst.field.one(), *inst.S]
        theta, i = prof.leading(start)
        if i == 0:
            return field.one()

        oracles = [None] + [CoefficientOracle(inst, k) for k in range(1, ell + 1)]
        self.lam = [np.ones(1, dtype=dtype)] + [np.zeros(0, dtype=dtype) for _ in range(ell)]
        self.alpha_lead = [0] + [g.lc for g in inst.G]
        self.theta_lead = [0] + [nu * g.deg + w[k] for k, g in enumerate(inst.G, 1)]
        lam, alpha_lead, theta_lead = self.lam, self.alpha_lead, self.theta_lead
        shadow = self.shadow

        while nu * (len(lam[0]) - 1) + w[0] <= theta:
            if shadow:
                shadow.check(self, theta, i, in_loop=True)
            self.iterations += 1
            alpha = oracles[i].query(lam[0], theta)
            if alpha:
                swap = theta < theta_lead[i]
                if shadow:
                    shadow.reduce(theta, i, swap)
                if swap:
                    lam[0], lam[i] = lam[i], lam[0]
                    alpha, alpha_lead[i] = alpha_lead[i], alpha
                    theta, theta_lead[i] = theta_lead[i], theta
                c = alpha * field.inv(alpha_lead[i]) % p
                lam[0] = _axpy(lam[0], c, (theta - theta_lead[i]) // nu, lam[i], p)
                self.reductions += 1
            theta, i = _previous(theta, i, prof)
            if i == 0:
                theta, i = _previous(theta, i, prof)

        if shadow:
            shadow.check(self, theta, i, in_loop=False)
            shadow.finish(lam[0])
        return Poly(field, lam[0].tolist()).monic()


def demand_solve(inst: MgLfsrInstance, *, shadow: bool = False) -> Poly:
    """Monic ``Lambda`` of a minimal solution."""
    return DemandSolver(inst, shadow=shadow).run()
