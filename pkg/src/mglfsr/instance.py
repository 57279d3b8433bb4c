"""The generalised multi-sequence shift-register problem.

Given ``S_i``, moduli ``G_i`` and a weight profile ``(nu, w_0..w_l)``, find a
lowest-degree ``Lambda`` for which there are ``Omega_i`` with

    Lambda * S_i == Omega_i  (mod G_i)
    nu * deg Lambda + w_0 > nu * deg Omega_i + w_i

The solutions live in the F[x]-module spanned by the rows of
``[[1, S_1, ..., S_l], G_1 e_1, ..., G_l e_l]``; any weak Popov basis of it
(under the profile) contains a minimal solution as its row leading at 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import alekhnovich, demand, ms
from .ff import Field, Poly
from .ms import ReductionStats
from .polymat import (
    PolyMatrix,
    PolyVector,
    WeightProfile,
    is_weak_popov,
    orthogonality_defect_of_M,
    row_leads,
)

ALGORITHMS = ("ms", "ms_mod", "alekhnovich", "demand")


class ParseError(ValueError):
    """Malformed instance text; ``lineno`` is 1-based, 0 if not line-specific."""

    def __init__(self, message: str, lineno: int = 0) -> None:
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno else message)


@dataclass(frozen=True)
class MgLfsrInstance:
    field: Field
    S: tuple[Poly, ...]
    G: tuple[Poly, ...]
    profile: WeightProfile

    @property
    def ell(self) -> int:
        return len(self.S)

    @property
    def m(self) -> Fraction:
        nu = self.profile.nu
        return max(Fraction(g.deg) + Fraction(w, nu) for g, w in zip(self.G, self.profile.w[1:]))


@dataclass(frozen=True)
class Solution:
    lam: Poly
    omegas: tuple[Poly, ...]

    @property
    def vector(self) -> list[Poly]:
        return [self.lam, *self.omegas]


def new_instance(
    field: Field, S: Sequence[Poly], G: Sequence[Poly], profile: WeightProfile
) -> MgLfsrInstance:
    """Validate and normalise: each ``S_i`` is replaced by ``S_i mod G_i``."""
    if len(S) != len(G):
        raise ValueError(f"{len(S)} sequences but {len(G)} moduli")
    if not S:
        raise ValueError("need at least one sequence (ell >= 1)")
    if profile.ell != len(S):
        raise ValueError(f"profile has {profile.size} weights, expected {len(S) + 1}")
    for idx, (s, g) in enumerate(zip(S, G), 1):
        if s.field.p != field.p or g.field.p != field.p:
            raise ValueError(f"S_{idx} or G_{idx} is over a different field")
        if g.deg < 1:
            raise ValueError(f"G_{idx} must be non-constant")
    return MgLfsrInstance(field, tuple(s % g for s, g in zip(S, G)), tuple(G), profile)


def has_trivial_solution(inst: MgLfsrInstance) -> Solution | None:
    """``(1, S_1, ..., S_l)`` when it already satisfies the degree constraints."""
    prof = inst.profile
    w0 = prof.w[0]
    if all(w0 > prof.nu * s.deg + wi for s, wi in zip(inst.S, prof.w[1:])):
        return Solution(inst.field.one(), inst.S)
    return None


def build_basis(inst: MgLfsrInstance) -> PolyMatrix:
    zero = inst.field.zero()
    n = inst.ell + 1
    rows = [[inst.field.one(), *inst.S]]
    for i, g in enumerate(inst.G, 1):
        rows.append([g if k == i else zero for k in range(n)])
    return PolyMatrix(rows, inst.field)


def is_member(inst: MgLfsrInstance, v: PolyVector) -> bool:
    if len(v) != inst.ell + 1:
        return False
    v0 = v[0]
    return all(not ((v0 * s - vi) % g) for s, g, vi in zip(inst.S, inst.G, v[1:]))


def is_solution(inst: MgLfsrInstance, v: PolyVector) -> bool:
    if not is_member(inst, v) or not v[0]:
        return False
    _, pos = inst.profile.leading(v)
    return pos == 0


def extract_minimal(inst: MgLfsrInstance, V: PolyMatrix) -> Solution:
    """The row of a weak Popov basis leading at position 0, made monic."""
    for row, (_, pos) in zip(V, row_leads(V, inst.profile)):
        if pos == 0:
            scale = inst.field.inv(row[0].lc)
            return Solution(row[0].scale(scale), tuple(a.scale(scale) for a in row[1:]))
    raise RuntimeError("no row leads at position 0; the basis is not in weak Popov form")


def reduction_bound(inst: MgLfsrInstance) -> int:
    return ms.row_reduction_bound(inst.ell, inst.profile.nu, orthogonality_defect_of_M(inst))


def solve_detailed(
    inst: MgLfsrInstance, algorithm: str = "ms"
) -> tuple[Solution, ReductionStats, PolyMatrix | None]:
    """Solve and also report the reduction count and (if built) the final basis."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")
    bound = reduction_bound(inst)
    trivial = has_trivial_solution(inst)
    if trivial is not None:
        return trivial, ReductionStats(0, bound), None

    if algorithm == "demand":
        solver = demand.DemandSolver(inst)
        lam = solver.run()
        omegas = tuple((lam * s) % g for s, g in zip(inst.S, inst.G))
        return Solution(lam, omegas), ReductionStats(solver.reductions, bound), None

    V = build_basis(inst)
    if algorithm == "alekhnovich":
        V, count = alekhnovich.reduce_full(V, inst.profile, with_count=True)
        stats = ReductionStats(count, bound)
    elif algorithm == "ms_mod":
        stats = ms.reduce_to_weak_popov_mod(V, inst.profile, inst.G)
    else:
        stats = ms.reduce_to_weak_popov(V, inst.profile)
    return extract_minimal(inst, V), stats, V


def solve(inst: MgLfsrInstance, algorithm: str = "ms") -> Solution:
    return solve_detailed(inst, algorithm)[0]


def weak_popov_certificate(inst: MgLfsrInstance, V: PolyMatrix) -> bool:
    """Distinct leading positions and the degree sum equal to deg det."""
    prof = inst.profile
    expected = prof.w[0] + sum(prof.nu * g.deg + w for g, w in zip(inst.G, prof.w[1:]))
    leads = row_leads(V, prof)
    return is_weak_popov(V, prof) and sum(d for d, _ in leads) == expected


# -- text format -----------------------------------------------------------


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def parse_instance(text: str) -> MgLfsrInstance:
    header: dict[str, tuple[list[int], int]] = {}
    seqs: dict[str, dict[int, tuple[list[int], int]]] = {"S": {}, "G": {}}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, *rest = line.split()
        if key in ("p", "ell", "nu", "w"):
            if key in header:
                raise ParseError(f"duplicate {key!r} line", lineno)
            header[key] = (_ints(rest, lineno), lineno)
        elif key in seqs:
            if not rest:
                raise ParseError(f"{key} line needs an index", lineno)
            idx, *coeffs = _ints(rest, lineno)
            if idx in seqs[key]:
                raise ParseError(f"duplicate {key} {idx}", lineno)
            seqs[key][idx] = (coeffs, lineno)
        else:
            raise ParseError(f"unknown keyword {key!r}", lineno)

    for key in ("p", "ell", "nu", "w"):
        if key not in header:
            raise ParseError(f"missing {key!r} line")
    for key in ("p", "ell", "nu"):
        vals, lineno = header[key]
        if len(vals) != 1:
            raise ParseError(f"{key!r} takes exactly one value", lineno)
    (p,), p_line = header["p"]
    (ell,), ell_line = header["ell"]
    (nu,), nu_line = header["nu"]
    w, w_line = header["w"]
    try:
        field = Field(p)
    except ValueError as exc:
        raise ParseError(str(exc), p_line) from None
    if ell < 1:
        raise ParseError("ell must be >= 1", ell_line)
    if len(w) != ell + 1:
        raise ParseError(f"expected {ell + 1} weights, got {len(w)}", w_line)
    try:
        profile = WeightProfile(nu, tuple(w))
    except ValueError as exc:
        raise ParseError(str(exc), nu_line if nu < 1 else w_line) from None

    polys: dict[str, list[Poly]] = {}
    for key in ("S", "G"):
        got = seqs[key]
        for idx, (_, lineno) in got.items():
            if not 1 <= idx <= ell:
                raise ParseError(f"{key} index {idx} out of range 1..{ell}", lineno)
        missing = [i for i in range(1, ell + 1) if i not in got]
        if missing:
            raise ParseError(f"missing {key} line(s) for index {missing}")
        polys[key] = [field(got[i][0]) for i in range(1, ell + 1)]
    for i, g in enumerate(polys["G"], 1):
        if g.deg < 1:
            raise ParseError(f"G {i} must be non-constant", seqs["G"][i][1])
    return new_instance(field, polys["S"], polys["G"], profile)


def format_instance(inst: MgLfsrInstance) -> str:
    lines = [
        f"p {inst.field.p}",
        f"ell {inst.ell}",
        f"nu {inst.profile.nu}",
        "w " + " ".join(map(str, inst.profile.w)),
    ]
    lines += [f"S {i} {s.to_text()}" for i, s in enumerate(inst.S, 1)]
    lines += [f"G {i} {g.to_text()}" for i, g in enumerate(inst.G, 1)]
    return "\n".join(lines) + "\n"


def format_solution(sol: Solution) -> str:
    lines = [f"lambda {sol.lam.to_text()}"]
    lines += [f"omega {i} {o.to_text()}" for i, o in enumerate(sol.omegas, 1)]
    return "\n".join(lines) + "\n"


# -- random instances ------------------------------------------------------


def random_poly(field: Field, rng: random.Random, length: int) -> Poly:
    return field([rng.randrange(field.p) for _ in range(length)])


def random_instance(
    rng: random.Random,
    primes: Sequence[int] = (2, 3, 5, 13, 17),
    ells: Sequence[int] = (1, 2, 3),
    nus: Sequence[int] = (1, 2),
    deg_range: tuple[int, int] = (1, 8),
    w_range: tuple[int, int] = (0, 4),
) -> MgLfsrInstance:
    """Random instance with a mix of monomial and dense moduli."""
    field = Field(rng.choice(list(primes)))
    ell = rng.choice(list(ells))
    nu = rng.choice(list(nus))
    w = tuple(rng.randint(*w_range) for _ in range(ell + 1))
    G, S = [], []
    for _ in range(ell):
        d = rng.randint(*deg_range)
        if rng.random() < 0.4:
            g = field.monomial(rng.randrange(1, field.p), d)
        else:
            g = field([rng.randrange(field.p) for _ in range(d)] + [rng.randrange(1, field.p)])
        G.append(g)
        S.append(random_poly(field, rng, d))
    return new_instance(field, S, G, WeightProfile(nu, w))
