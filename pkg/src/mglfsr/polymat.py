"""Vectors and square matrices over F[x] read through a weight profile.

A profile ``(nu, w_0..w_l)`` stands for the embedding that sends entry ``k`` of
a vector to ``x**w_k * a_k(x**nu)``.  Nothing here materialises those sparse
polynomials; every routine works on the plain entries and computes weighted
degrees ``nu * deg a_k + w_k`` on the side.  Row operations found in the
embedded picture always shift by a power of ``x**nu``, so they translate to
shifts by ``x**(delta / nu)`` on the plain entries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .ff import NEG_INF, Field, Poly

PolyVector = Sequence[Poly]


@dataclass(frozen=True)
class WeightProfile:
    nu: int
    w: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "w", tuple(self.w))
        if self.nu < 1:
            raise ValueError("nu must be a positive integer")
        if len(self.w) < 2:
            raise ValueError("a profile needs at least two weights (ell >= 1)")
        if any(wi < 0 for wi in self.w):
            raise ValueError("weights must be non-negative")

    @classmethod
    def trivial(cls, ell: int) -> WeightProfile:
        return cls(1, (0,) * (ell + 1))

    @property
    def ell(self) -> int:
        return len(self.w) - 1

    @property
    def size(self) -> int:
        return len(self.w)

    def entry_degree(self, a: Poly, k: int) -> int | float:
        if not a.coeffs:
            return NEG_INF
        return self.nu * (len(a.coeffs) - 1) + self.w[k]

    def leading(self, v: PolyVector) -> tuple[int | float, int]:
        """``(phi_degree, leading position)``; position is -1 for the zero vector."""
        self._check_len(v)
        best, pos = NEG_INF, -1
        nu, w = self.nu, self.w
        for k, a in enumerate(v):
            if a.coeffs:
                d = nu * (len(a.coeffs) - 1) + w[k]
                if d >= best:
                    best, pos = d, k
        return best, pos

    def _check_len(self, v: PolyVector) -> None:
        if len(v) != len(self.w):
            raise ValueError(f"vector of length {len(v)} under a profile of length {len(self.w)}")


def phi_degree(v: PolyVector, profile: WeightProfile) -> int | float:
    return profile.leading(v)[0]


def phi_leading_position(v: PolyVector, profile: WeightProfile) -> int:
    deg, pos = profile.leading(v)
    if pos < 0:
        raise ValueError("leading position of the zero vector is undefined")
    return pos


def value(v: PolyVector, profile: WeightProfile) -> int:
    """``(l+1) * phi_degree(v) + LP(v)``; strictly decreases under row reduction."""
    deg, pos = profile.leading(v)
    if pos < 0:
        raise ValueError("value of the zero vector is undefined")
    return len(v) * deg + pos


class PolyMatrix:
    """Square matrix over F[x], stored as a list of mutable rows."""

    __slots__ = ("field", "rows")

    def __init__(self, rows: Iterable[Iterable[Poly]], field: Field | None = None) -> None:
        self.rows = [list(r) for r in rows]
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise ValueError("PolyMatrix must be square and non-empty")
        self.field = field if field is not None else self.rows[0][0].field
        p = self.field.p
        if any(a.field.p != p for r in self.rows for a in r):
            raise ValueError("field mismatch inside matrix")

    @classmethod
    def identity(cls, field: Field, n: int) -> PolyMatrix:
        zero, one = field.zero(), field.one()
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], field)

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, i: int) -> list[Poly]:
        return self.rows[i]

    def __iter__(self):
        return iter(self.rows)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __repr__(self) -> str:
        body = ",\n ".join("[" + ", ".join(repr(a) for a in r) + "]" for r in self.rows)
        return f"PolyMatrix([{body}])"

    def copy(self) -> PolyMatrix:
        return PolyMatrix([list(r) for r in self.rows], self.field)

    def __matmul__(self, other: PolyMatrix) -> PolyMatrix:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        n = self.size
        if other.size != n:
            raise ValueError(f"size mismatch: {n} vs {other.size}")
        zero = self.field.zero()
        out = []
        for row in self.rows:
            new_row = []
            for j in range(n):
                acc = zero
                for k, a in enumerate(row):
                    if a.coeffs:
                        b = other.rows[k][j]
                        if b.coeffs:
                            acc = acc + a * b
                new_row.append(acc)
            out.append(new_row)
        return PolyMatrix(out, self.field)

    def apply(self, v: PolyVector) -> list[Poly]:
        """Matrix times column vector."""
        if len(v) != self.size:
            raise ValueError("size mismatch")
        zero = self.field.zero()
        out = []
        for row in self.rows:
            acc = zero
            for a, b in zip(row, v):
                if a.coeffs and b.coeffs:
                    acc = acc + a * b
            out.append(acc)
        return out

    def is_upper_triangular(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.size) for j in range(i))


def maxdeg(V: PolyMatrix, profile: WeightProfile | None = None) -> int | float:
    """Largest (weighted, if a profile is given) entry degree."""
    if profile is None:
        return max(a.deg for r in V for a in r)
    return max(profile.entry_degree(a, k) for r in V for k, a in enumerate(r))


def row_leads(V: PolyMatrix, profile: WeightProfile) -> list[tuple[int | float, int]]:
    leads = [profile.leading(r) for r in V]
    for idx, (_, pos) in enumerate(leads):
        if pos < 0:
            raise ValueError(f"row {idx} is zero; the basis is not full rank")
    return leads


def degree_sum(V: PolyMatrix, profile: WeightProfile) -> int:
    return sum(d for d, _ in row_leads(V, profile))


def is_weak_popov(V: PolyMatrix, profile: WeightProfile) -> bool:
    positions = [pos for _, pos in row_leads(V, profile)]
    return len(set(positions)) == len(positions)


def determinant(V: PolyMatrix) -> Poly:
    """Leibniz expansion; meant for the small sizes used here."""
    n = V.size
    acc = V.field.zero()
    for perm in itertools.permutations(range(n)):
        term = V.field.one()
        for i, j in enumerate(perm):
            term = term * V.rows[i][j]
            if not term:
                break
        if not term:
            continue
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        acc = acc - term if inversions % 2 else acc + term
    return acc


def det_phi_degree(V: PolyMatrix, profile: WeightProfile) -> int | float:
    """Degree of the determinant of the embedded matrix.

    The embedding is ``V(x**nu) * diag(x**w_k)``, so the degree is
    ``nu * deg det V + sum(w)``.
    """
    if V.is_upper_triangular():
        d = sum(V.rows[i][i].deg for i in range(V.size))
    else:
        d = determinant(V).deg
    return profile.nu * d + sum(profile.w)


def orthogonality_defect(V: PolyMatrix, profile: WeightProfile) -> int:
    """``deg V - deg det V`` for the embedded matrix."""
    return degree_sum(V, profile) - det_phi_degree(V, profile)


def orthogonality_defect_of_M(instance) -> int:
    """Closed form for the triangular starting basis of an instance."""
    prof = instance.profile
    w0 = prof.w[0]
    top = max([w0] + [prof.w[i] + prof.nu * s.deg for i, s in enumerate(instance.S, 1) if s])
    return top - w0


def pick_conflict(leads: Sequence[tuple[int | float, int]]) -> tuple[int, int] | None:
    """Deterministic conflict choice from cached ``(degree, LP)`` pairs.

    Scans leading positions upwards and takes the two lowest row indices
    sharing the first repeated position.  Returns ``(i, j)`` where row ``j``
    is the one to reduce; on equal degrees the higher index is reduced.
    """
    first: dict[int, int] = {}
    clash: dict[int, int] = {}
    for idx, (_, pos) in enumerate(leads):
        if pos in first:
            clash.setdefault(pos, idx)
        else:
            first[pos] = idx
    if not clash:
        return None
    pos = min(clash)
    a, b = first[pos], clash[pos]
    if leads[a][0] <= leads[b][0]:
        return a, b
    return b, a


def find_conflict(V: PolyMatrix, profile: WeightProfile) -> tuple[int, int] | None:
    return pick_conflict(row_leads(V, profile))


def reduction_multiplier(
    V: PolyMatrix, i: int, j: int, profile: WeightProfile
) -> tuple[int, int]:
    """``(alpha, shift)`` such that ``v_j - alpha * x**shift * v_i`` cancels LT(v_j)."""
    if i == j:
        raise ValueError("row reduction needs two different rows")
    di, hi = profile.leading(V.rows[i])
    dj, hj = profile.leading(V.rows[j])
    if hi < 0 or hj < 0:
        raise ValueError("row reduction on a zero row")
    if hi != hj:
        raise ValueError(f"rows {i} and {j} lead at different positions ({hi}, {hj})")
    if di > dj:
        raise ValueError(f"row {i} has larger degree than row {j}")
    a, b = V.rows[i][hi], V.rows[j][hi]
    shift = len(b.coeffs) - len(a.coeffs)
    alpha = b.lc * V.field.inv(a.lc) % V.field.p
    return alpha, shift


def apply_reduction(V: PolyMatrix, i: int, j: int, alpha: int, shift: int) -> None:
    src = V.rows[i]
    V.rows[j] = [b.sub_scaled_shift(alpha, shift, a) for a, b in zip(src, V.rows[j])]


def row_reduce_step(V: PolyMatrix, i: int, j: int, profile: WeightProfile) -> None:
    """Replace row ``j`` by ``v_j - alpha x**delta v_i``, in place."""
    alpha, shift = reduction_multiplier(V, i, j, profile)
    apply_reduction(V, i, j, alpha, shift)
