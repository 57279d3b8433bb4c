"""Power-Gao decoding of simple generalised Reed-Solomon codes.

The received word is interpolated to ``R`` and the key equations
``Lambda * R**i == Lambda * f**i (mod G)``, ``i = 1..l``, with
``G = prod (x - alpha_j)`` are solved as one weighted shift-register instance.
A minimal solution is only the error locator when decoding succeeds, so the
candidate message is always re-encoded and checked before it is reported.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .ff import Field, Poly, lagrange_interpolate, vanishing_poly
from .instance import MgLfsrInstance, new_instance, solve
from .polymat import WeightProfile


@dataclass(frozen=True)
class GrsCode:
    field: Field
    n: int
    k: int
    alphas: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "alphas", tuple(a % self.field.p for a in self.alphas))
        if not 1 <= self.k < self.n <= self.field.p:
            raise ValueError(f"need 1 <= k < n <= p, got n={self.n}, k={self.k}, p={self.field.p}")
        if len(self.alphas) != self.n:
            raise ValueError(f"{len(self.alphas)} evaluation points for length {self.n}")
        if len(set(self.alphas)) != self.n:
            raise ValueError("evaluation points must be distinct")

    @classmethod
    def standard(cls, field: Field, n: int, k: int) -> GrsCode:
        """Evaluation points ``0, 1, ..., n-1``."""
        return cls(field, n, k, tuple(range(n)))

    @property
    def d(self) -> int:
        return self.n - self.k + 1


@dataclass(frozen=True)
class DecodeOutcome:
    status: str
    f: Poly | None
    lam: Poly

    @property
    def decoded(self) -> bool:
        return self.status == "decoded"

    @property
    def error_estimate(self) -> int:
        return int(self.lam.deg)


def encode(code: GrsCode, f: Poly) -> list[int]:
    if f.deg >= code.k:
        raise ValueError(f"message degree {f.deg} is not below k={code.k}")
    return [f(a) for a in code.alphas]


def hamming_distance(a: Sequence[int], b: Sequence[int]) -> int:
    return sum(1 for x, y in zip(a, b) if x != y)


def build_key_equation(code: GrsCode, r: Sequence[int], ell: int) -> MgLfsrInstance:
    if ell < 1:
        raise ValueError("ell must be >= 1")
    if len(r) != code.n:
        raise ValueError(f"received word has length {len(r)}, expected {code.n}")
    field = code.field
    G = vanishing_poly(field, code.alphas)
    R = lagrange_interpolate(field, list(zip(code.alphas, r)))
    S, power = [], field.one()
    for _ in range(ell):
        power = (power * R) % G
        S.append(power)
    km1 = code.k - 1
    w = (ell * km1 + 1,) + tuple((ell - i) * km1 for i in range(1, ell + 1))
    return new_instance(field, S, [G] * ell, WeightProfile(1, w))


def radius(code: GrsCode, ell: int) -> int:
    """Largest integer strictly below ``l/(l+1) * (n-1) - l*(k-1)/2``."""
    bound = Fraction(ell * (code.n - 1), ell + 1) - Fraction(ell * (code.k - 1), 2)
    return math.ceil(bound) - 1


def decode(code: GrsCode, r: Sequence[int], ell: int = 1, algorithm: str = "ms") -> DecodeOutcome:
    r = [x % code.field.p for x in r]
    inst = build_key_equation(code, r, ell)
    sol = solve(inst, algorithm)
    lam = sol.lam
    f_hat, rem = divmod(sol.omegas[0], lam)
    if rem or f_hat.deg >= code.k:
        return DecodeOutcome("failure", None, lam)
    if hamming_distance(r, encode(code, f_hat)) != lam.deg:
        return DecodeOutcome("failure", None, lam)
    return DecodeOutcome("decoded", f_hat, lam)


def corrupt(field: Field, word: Sequence[int], tau: int, seed: int | None) -> list[int]:
    """Change exactly ``tau`` uniformly chosen positions to different random symbols."""
    if not 0 <= tau <= len(word):
        raise ValueError(f"cannot place {tau} errors in a word of length {len(word)}")
    p = field.p
    rng = random.Random(seed)
    out = [x % p for x in word]
    for pos in rng.sample(range(len(word)), tau):
        out[pos] = (out[pos] + rng.randrange(1, p)) % p
    return out


def error_locator(code: GrsCode, sent: Sequence[int], received: Sequence[int]) -> Poly:
    """``prod (x - alpha_j)`` over the positions where the words differ."""
    return vanishing_poly(
        code.field, [a for a, s, r in zip(code.alphas, sent, received) if s != r]
    )
