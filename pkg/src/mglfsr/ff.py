"""Prime fields GF(p) and dense univariate polynomials over them.

Polynomials are immutable and store their coefficients in ascending order as
canonical residues in ``[0, p)``.  The zero polynomial has no coefficients and
degree :data:`NEG_INF`, which compares below every integer and survives the
weighted-degree arithmetic ``nu * deg + w`` unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

NEG_INF = float("-inf")

KARATSUBA_CUTOFF = 32

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Field:
    """The prime field GF(p) for a word-sized prime ``p``."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError(f"modulus must be an int, got {self.p!r}")
        if not 2 <= self.p < 2**64:
            raise ValueError(f"modulus {self.p} is not a machine-word prime")
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")

    def __call__(self, coeffs: Iterable[int] = ()) -> Poly:
        return Poly(self, coeffs)

    def __repr__(self) -> str:
        return f"GF({self.p})"

    def inv(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return pow(a, -1, self.p)

    def zero(self) -> Poly:
        return Poly._raw(self, ())

    def one(self) -> Poly:
        return Poly._raw(self, (1,))

    def x(self) -> Poly:
        return Poly._raw(self, (0, 1))

    def monomial(self, c: int, d: int) -> Poly:
        """``c * x**d``."""
        if d < 0:
            raise ValueError("negative exponent")
        c %= self.p
        if not c:
            return self.zero()
        return Poly._raw(self, (0,) * d + (c,))


def _trim(cs: list[int]) -> list[int]:
    while cs and not cs[-1]:
        cs.pop()
    return cs


def _schoolbook(a: Sequence[int], b: Sequence[int]) -> list[int]:
    lb = len(b)
    res = [0] * (len(a) + lb - 1)
    for i, ai in enumerate(a):
        if ai:
            seg = res[i:i + lb]
            res[i:i + lb] = [s + ai * bj for s, bj in zip(seg, b)]
    return res


def _add_into(dst: list[int], src: Sequence[int], offset: int) -> None:
    end = offset + len(src)
    dst[offset:end] = [d + s for d, s in zip(dst[offset:end], src)]


def _karatsuba(a: Sequence[int], b: Sequence[int]) -> list[int]:
    # Unreduced integer product; callers reduce mod p once at the end.
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return []
    if len(b) <= KARATSUBA_CUTOFF:
        return _schoolbook(a, b)
    half = len(a) // 2
    a0, a1 = a[:half], a[half:]
    res = [0] * (len(a) + len(b) - 1)
    if len(b) <= half:
        # Unbalanced: split only the longer operand.
        _add_into(res, _karatsuba(a0, b), 0)
        _add_into(res, _karatsuba(a1, b), half)
        return res
    b0, b1 = b[:half], b[half:]
    z0 = _karatsuba(a0, b0)
    z2 = _karatsuba(a1, b1)
    sa = [x + y for x, y in zip(a0, a1)] + list(a1[len(a0):])
    sb = [x + y for x, y in zip(b0, b1)] + list(b1[len(b0):])
    sa += a0[len(a1):]
    sb += b0[len(b1):]
    z1 = _karatsuba(sa, sb)
    _add_into(z1, [-c for c in z0], 0)
    _add_into(z1, [-c for c in z2], 0)
    _add_into(res, z0, 0)
    _add_into(res, z1[:len(res) - half], half)
    _add_into(res, z2, 2 * half)
    return res


class Poly:
    """Dense polynomial over a prime field, coefficients ascending."""

    __slots__ = ("field", "coeffs")

    field: Field
    coeffs: tuple[int, ...]

    def __init__(self, field: Field, coeffs: Iterable[int] = ()) -> None:
        p = field.p
        self.field = field
        self.coeffs = tuple(_trim([c % p for c in coeffs]))

    @classmethod
    def _raw(cls, field: Field, coeffs: Sequence[int]) -> Poly:
        # Trusted constructor: coefficients already reduced mod p.
        obj = cls.__new__(cls)
        obj.field = field
        cs = list(coeffs)
        obj.coeffs = tuple(_trim(cs))
        return obj

    # -- basic accessors -------------------------------------------------

    @property
    def deg(self) -> int | float:
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    @property
    def lc(self) -> int:
        """Leading coefficient (0 for the zero polynomial)."""
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, d: int) -> int:
        if 0 <= d < len(self.coeffs):
            return self.coeffs[d]
        return 0

    def is_monomial(self) -> bool:
        return sum(1 for c in self.coeffs if c) == 1

    def term_count(self) -> int:
        return sum(1 for c in self.coeffs if c)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.field.p == other.field.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == Poly(self.field, (other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.coeffs))

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            if d == 0:
                terms.append(str(c))
            else:
                mono = "x" if d == 1 else f"x^{d}"
                terms.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(terms)

    def to_text(self) -> str:
        """Space-separated ascending coefficients; ``0`` for the zero polynomial."""
        return " ".join(map(str, self.coeffs)) if self.coeffs else "0"

    # -- ring operations -------------------------------------------------

    def _check(self, other: Poly) -> None:
        if self.field.p != other.field.p:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def _coerce(self, other: object) -> Poly:
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, int):
            return Poly(self.field, (other,))
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other: Poly | int) -> Poly:
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        p = self.field.p
        out = [(x + y) % p for x, y in zip(a, b)]
        out.extend(a[len(b):])
        return Poly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self) -> Poly:
        p = self.field.p
        return Poly._raw(self.field, [(p - c) % p for c in self.coeffs])

    def __sub__(self, other: Poly | int) -> Poly:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Poly | int) -> Poly:
        return self._coerce(other) - self

    def __mul__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return self.field.zero()
        p = self.field.p
        prod = _karatsuba(self.coeffs, other.coeffs)
        return Poly._raw(self.field, [c % p for c in prod])

    __rmul__ = __mul__

    def scale(self, c: int) -> Poly:
        p = self.field.p
        c %= p
        if not c:
            return self.field.zero()
        return Poly._raw(self.field, [x * c % p for x in self.coeffs])

    def shift(self, k: int) -> Poly:
        """Multiply by ``x**k`` (k >= 0)."""
        if k < 0:
            raise ValueError("negative shift")
        if not self.coeffs or k == 0:
            return self
        return Poly._raw(self.field, (0,) * k + self.coeffs)

    def sub_scaled_shift(self, c: int, k: int, other: Poly) -> Poly:
        """``self - c * x**k * other`` in one pass."""
        self._check(other)
        p = self.field.p
        c %= p
        if not c or not other.coeffs:
            return self
        out = list(self.coeffs)
        end = k + len(other.coeffs)
        if len(out) < end:
            out.extend([0] * (end - len(out)))
        out[k:end] = [(x - c * y) % p for x, y in zip(out[k:end], other.coeffs)]
        return Poly._raw(self.field, out)

    def high_part(self, d: int) -> Poly:
        """Keep only the monomials of degree >= d."""
        if d <= 0:
            return self
        if d >= len(self.coeffs):
            return self.field.zero()
        return Poly._raw(self.field, (0,) * d + self.coeffs[d:])

    def monic(self) -> Poly:
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic associate")
        return self.scale(self.field.inv(self.lc))

    def __divmod__(self, other: Poly) -> tuple[Poly, Poly]:
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        p = self.field.p
        db = len(other.coeffs) - 1
        rem = list(self.coeffs)
        if len(rem) <= db:
            return self.field.zero(), self
        inv_lc = self.field.inv(other.lc)
        b = other.coeffs
        if not any(b[:-1]):
            # c * x**db: split the coefficient list
            quo = [c * inv_lc % p for c in rem[db:]]
            return Poly._raw(self.field, quo), Poly._raw(self.field, rem[:db])
        quo = [0] * (len(rem) - db)
        for d in range(len(rem) - 1, db - 1, -1):
            c = rem[d]
            if not c:
                continue
            q = c * inv_lc % p
            quo[d - db] = q
            lo = d - db
            rem[lo:d + 1] = [(x - q * y) % p for x, y in zip(rem[lo:d + 1], b)]
        return Poly._raw(self.field, quo), Poly._raw(self.field, rem[:db])

    def __floordiv__(self, other: Poly) -> Poly:
        return divmod(self, other)[0]

    def __mod__(self, other: Poly) -> Poly:
        other = self._coerce(other)
        if len(self.coeffs) < len(other.coeffs):
            if not other.coeffs:
                raise ZeroDivisionError("polynomial division by zero")
            return self
        return divmod(self, other)[1]

    def __pow__(self, e: int) -> Poly:
        if e < 0:
            raise ValueError("negative power")
        result, base = self.field.one(), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x0: int) -> int:
        p = self.field.p
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x0 + c) % p
        return acc


# -- named operations ------------------------------------------------------


def poly_add(a: Poly, b: Poly) -> Poly:
    return a + b


def poly_mul(a: Poly, b: Poly) -> Poly:
    return a * b


def poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    return divmod(a, b)


def poly_eval(a: Poly, x0: int) -> int:
    return a(x0)


def poly_coeff(a: Poly, d: int) -> int:
    return a.coeff(d)


def vanishing_poly(field: Field, xs: Iterable[int]) -> Poly:
    """``prod_j (x - x_j)``."""
    p = field.p
    cs = [1]
    for x0 in xs:
        # multiply by (x - x0)
        nxt = [0] * (len(cs) + 1)
        for i, c in enumerate(cs):
            nxt[i + 1] += c
            nxt[i] -= c * x0
        cs = [c % p for c in nxt]
    return Poly._raw(field, cs)


def lagrange_interpolate(field: Field, points: Sequence[tuple[int, int]]) -> Poly:
    """Unique polynomial of degree < len(points) through the given points."""
    p = field.p
    xs = [x % p for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation points must have distinct abscissae")
    if not points:
        return field.zero()
    full = vanishing_poly(field, xs).coeffs
    n = len(xs)
    acc = [0] * n
    for (x0, y0), xj in zip(points, xs):
        y0 %= p
        if not y0:
            continue
        # synthetic division of the vanishing polynomial by (x - xj)
        q = [0] * n
        carry = 0
        for d in range(n, 0, -1):
            carry = (full[d] + carry * xj) % p
            q[d - 1] = carry
        denom = 0
        for c in reversed(q):
            denom = (denom * xj + c) % p
        scale = y0 * field.inv(denom) % p
        acc = [(a + scale * c) % p for a, c in zip(acc, q)]
    return Poly._raw(field, acc)
