"""Exact roots of unity, q-numbers, and concrete splitting fields.

Roots of unity are kept symbolic as (order, exponent) pairs.  Whenever genuine
linear algebra is needed (adjoint powers, symmetrizer ranks) the values are
embedded into a :class:`SplittingField`, which is either a cyclotomic field over
the rationals or a finite field ``F_p[x]/(f)`` with ``f`` an irreducible factor
of the cyclotomic polynomial.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class ScalarError(ValueError):
    """Raised for invalid scalars (bad characteristic, order mismatch, syntax)."""


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def check_char(char: int) -> int:
    if char != 0 and not _is_prime(char):
        raise ScalarError(f"characteristic must be 0 or a prime, got {char}")
    return char


class _Infinity:
    """Sentinel for an infinite height; compares greater than every integer."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "infinity"

    def __eq__(self, other) -> bool:
        return other is self

    def __hash__(self) -> int:
        return hash("infinity")

    def __lt__(self, other) -> bool:
        return False

    def __gt__(self, other) -> bool:
        return other is not self


INFINITY = _Infinity()


@dataclass(frozen=True, order=True)
class RootOfUnity:
    """The root of unity zeta_order^exponent, stored gcd-reduced.

    After construction ``order`` is the true multiplicative order.
    """

    order: int
    exponent: int

    def __post_init__(self) -> None:
        d, k = self.order, self.exponent
        if d < 1:
            raise ScalarError(f"order must be positive, got {d}")
        k %= d
        g = math.gcd(d, k)
        object.__setattr__(self, "order", d // g)
        object.__setattr__(self, "exponent", k // g)

    def __mul__(self, other: RootOfUnity) -> RootOfUnity:
        n = self.order * other.order // math.gcd(self.order, other.order)
        return RootOfUnity(
            n, self.exponent * (n // self.order) + other.exponent * (n // other.order)
        )

    def __pow__(self, m: int) -> RootOfUnity:
        return RootOfUnity(self.order, self.exponent * m)

    def inverse(self) -> RootOfUnity:
        return RootOfUnity(self.order, -self.exponent)

    def __neg__(self) -> RootOfUnity:
        return self * MINUS_ONE

    def is_one(self) -> bool:
        return self.order == 1

    def valid_in(self, char: int) -> bool:
        return char == 0 or self.order % char != 0

    def literal(self) -> str:
        if self.order == 1:
            return "1"
        if self.order == 2:
            return "-1"
        return f"zeta({self.order},{self.exponent})"

    def __repr__(self) -> str:
        return self.literal()


ONE = RootOfUnity(1, 0)
MINUS_ONE = RootOfUnity(2, 1)


def zeta(n: int, k: int = 1, char: int = 0) -> RootOfUnity:
    """Return zeta_n^k, rejecting orders divisible by a positive characteristic."""
    q = RootOfUnity(n, k)
    if not q.valid_in(char):
        raise ScalarError(
            f"zeta({n},{k}) has order {q.order}, divisible by the characteristic {char}"
        )
    return q


def minus_one(char: int) -> RootOfUnity:
    """The scalar -1 in characteristic ``char`` (equal to 1 when char = 2)."""
    return ONE if char == 2 else MINUS_ONE


_LITERAL = re.compile(r"^\s*zeta\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$")


def parse_scalar(text: str, char: int = 0) -> RootOfUnity:
    """Parse the literal syntax ``zeta(n,k)``, ``1`` or ``-1``."""
    s = str(text).strip()
    if s == "1":
        return ONE
    if s == "-1":
        return minus_one(char)
    m = _LITERAL.match(s)
    if not m:
        raise ScalarError(f"cannot parse scalar literal {text!r}")
    return zeta(int(m.group(1)), int(m.group(2)), char)


def q_number(m: int, q: RootOfUnity, char: int = 0) -> bool:
    """Return whether the q-number (m)_q = 1 + q + ... + q^(m-1) vanishes."""
    if m < 0:
        raise ScalarError("m must be non-negative")
    if m == 0:
        return True
    if q.is_one():
        return char > 0 and m % char == 0
    return m % q.order == 0


def q_factorial_nonzero(m: int, q: RootOfUnity, char: int = 0) -> bool:
    """Return whether (1)_q (2)_q ... (m)_q is nonzero."""
    return not any(q_number(i, q, char) for i in range(1, m + 1))


def height(q: RootOfUnity, char: int = 0):
    """Smallest n >= 1 with (n)_q = 0, or :data:`INFINITY`."""
    if not q.is_one():
        return q.order
    return char if char > 0 else INFINITY


# ---------------------------------------------------------------------------
# Integer polynomials (coefficient lists, lowest degree first)


def _poly_trim(a: list) -> list:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def _poly_divexact(a: list[int], b: list[int]) -> list[int]:
    a = list(a)
    q = [0] * (len(a) - len(b) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = a[i + len(b) - 1] // b[-1]
        q[i] = c
        for j, bj in enumerate(b):
            a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("inexact polynomial division")
    return q


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def _poly_rem_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a = [x % p for x in a]
    inv = pow(b[-1], -1, p)
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] * inv % p
        if c:
            for j, bj in enumerate(b):
                a[i + j] = (a[i + j] - c * bj) % p
    return _poly_trim(a[: len(b) - 1] or [0])


def multiplicative_order(a: int, n: int) -> int:
    if n == 1:
        return 1
    k, x = 1, a % n
    while x != 1:
        x = x * a % n
        k += 1
    return k


def _poly_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_rem_mod(out, f, p)


def _poly_powmod(a: list[int], e: int, f: list[int], p: int) -> list[int]:
    out, base = [1], _poly_rem_mod(a, f, p)
    while e:
        if e & 1:
            out = _poly_mulmod(out, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        e >>= 1
    return out


def _poly_gcd_mod(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _poly_trim([x % p for x in a]), _poly_trim([x % p for x in b])
    while b != [0]:
        a, b = b, _poly_rem_mod(a, b, p)
    return a


def _prime_divisors(n: int) -> list[int]:
    out, q = [], 2
    while q * q <= n:
        if n % q == 0:
            out.append(q)
            while n % q == 0:
                n //= q
        q += 1
    if n > 1:
        out.append(n)
    return out


def _is_irreducible_mod(f: list[int], p: int) -> bool:
    """Rabin's test for a monic polynomial over F_p."""
    d = len(f) - 1
    x = [0, 1]
    if _poly_powmod(x, p**d, f, p) != _poly_rem_mod(x, f, p):
        return False
    for r in _prime_divisors(d):
        h = _poly_powmod(x, p ** (d // r), f, p)
        h = _poly_trim([(c - (1 if i == 1 else 0)) % p for i, c in enumerate(h + [0] * (2 - len(h)))])
        if len(_poly_gcd_mod(f, h, p)) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def _finite_field_modulus(p: int, n: int) -> tuple[int, ...]:
    """First monic irreducible polynomial of degree ord_n(p) over F_p.

    Candidates are ordered by their coefficient vectors read from the top
    degree down, so the constant term varies fastest.
    """
    d = multiplicative_order(p, n)
    if d == 1:
        return (0, 1)
    for coeffs in itertools.product(range(p), repeat=d):
        f = list(reversed(coeffs)) + [1]
        if f[0] == 0:
            continue
        if _is_irreducible_mod(f, p):
            return tuple(f)
    raise ArithmeticError(f"no irreducible polynomial of degree {d} mod {p}")


# ---------------------------------------------------------------------------
# Splitting fields


class SplittingField:
    """A field containing the N-th roots of unity, in characteristic 0 or p.

    Elements are tuples of coefficients in the power basis of a primitive N-th
    root of unity x.  Coefficients are ints/Fractions in characteristic 0 and
    ints in ``range(p)`` in characteristic p.  The raw-tuple methods
    (:meth:`add`, :meth:`mul`, ...) are the fast path used by the linear
    algebra; :class:`FieldElement` wraps them for public use.
    """

    def __init__(self, char: int, conductor: int) -> None:
        check_char(char)
        if conductor < 1:
            raise ScalarError("conductor must be positive")
        if char and conductor % char == 0:
            raise ScalarError(
                f"conductor {conductor} is divisible by the characteristic {char}"
            )
        self.char = char
        self.conductor = conductor
        if char == 0:
            self.modulus = cyclotomic_polynomial(conductor)
        else:
            self.modulus = _finite_field_modulus(char, conductor)
        self.degree = len(self.modulus) - 1
        d = self.degree
        self.zero = (0,) * d
        self.one = (1,) + (0,) * (d - 1)
        # x^k reduced modulo the (monic) modulus for d <= k <= 2d - 2
        self._reductions: list[tuple] = []
        cur = [0] * d
        for k in range(d, 2 * d - 1):
            if k == d:
                cur = [self._c(-c) for c in self.modulus[:d]]
            else:
                top = cur[-1]
                cur = [0] + cur[:-1]
                cur = [
                    self._c(cur[i] - top * self.modulus[i]) for i in range(d)
                ]
            self._reductions.append(tuple(cur))
        # powers of the generator and a discrete-log table
        self._powers: list[tuple] = []
        x = self.one
        gen = self._generator()
        for _ in range(conductor):
            self._powers.append(x)
            x = self.mul(x, gen)
        if x != self.one:
            raise ArithmeticError("generator does not have the declared order")
        self._log = {v: k for k, v in enumerate(self._powers)}
        if len(self._log) != conductor:
            raise ArithmeticError("generator is not a primitive root of unity")

    def _c(self, c):
        return c % self.char if self.char else c

    def _pow(self, a: tuple, e: int) -> tuple:
        out, base = self.one, a
        while e:
            if e & 1:
                out = self.mul(out, base)
            base = self.mul(base, base)
            e >>= 1
        return out

    def _generator(self) -> tuple:
        """A primitive root of unity of order ``conductor``."""
        n, d = self.conductor, self.degree
        if self.char == 0:
            # the class of x modulo the cyclotomic polynomial
            return (self._c(-self.modulus[0]),) if d == 1 else (0, 1) + (0,) * (d - 2)
        cofactor = (self.char**d - 1) // n
        for coeffs in itertools.product(range(self.char), repeat=d):
            y = tuple(reversed(coeffs))
            if self.is_zero(y):
                continue
            g = self._pow(y, cofactor)
            if all(self._pow(g, n // r) != self.one for r in _prime_divisors(n)):
                return g
        raise ArithmeticError(f"no element of order {n} found")

    # -- raw tuple arithmetic -------------------------------------------------

    def add(self, a: tuple, b: tuple) -> tuple:
        if self.char:
            p = self.char
            return tuple((x + y) % p for x, y in zip(a, b))
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a: tuple, b: tuple) -> tuple:
        if self.char:
            p = self.char
            return tuple((x - y) % p for x, y in zip(a, b))
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a: tuple) -> tuple:
        if self.char:
            p = self.char
            return tuple(-x % p for x in a)
        return tuple(-x for x in a)

    def mul(self, a: tuple, b: tuple) -> tuple:
        d = self.degree
        if d == 1:
            return (self._c(a[0] * b[0]),)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        res = prod[:d]
        for k in range(d, 2 * d - 1):
            c = prod[k]
            if c:
                red = self._reductions[k - d]
                for i in range(d):
                    res[i] += c * red[i]
        if self.char:
            p = self.char
            return tuple(x % p for x in res)
        return tuple(res)

    def scale(self, a: tuple, c: int) -> tuple:
        return tuple(self._c(x * c) for x in a)

    def is_zero(self, a: tuple) -> bool:
        return not any(a)

    def inv(self, a: tuple) -> tuple:
        """Inverse via the extended Euclidean algorithm over the prime field."""
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        d = self.degree
        if d == 1:
            if self.char:
                return (pow(a[0], -1, self.char),)
            return (Fraction(1) / a[0],)
        # polynomials over the prime field as lists, lowest first
        r0, r1 = list(self.modulus), _poly_trim(list(a))
        s0, s1 = [0], [1]
        while not (len(r1) == 1 and r1[0] == 0):
            q, r = self._divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, self._psub(s0, self._pmul(q, s1))
        # r0 is a nonzero constant
        c = r0[0]
        cinv = pow(c, -1, self.char) if self.char else Fraction(1) / c
        out = [self._c(x * cinv) for x in s0] + [0] * d
        return tuple(out[:d])

    def _pmul(self, a: list, b: list) -> list:
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return _poly_trim([self._c(x) for x in out])

    def _psub(self, a: list, b: list) -> list:
        n = max(len(a), len(b))
        a = a + [0] * (n - len(a))
        b = b + [0] * (n - len(b))
        return _poly_trim([self._c(x - y) for x, y in zip(a, b)])

    def _divmod(self, a: list, b: list) -> tuple[list, list]:
        a = list(a)
        lead = b[-1]
        linv = pow(lead, -1, self.char) if self.char else Fraction(1) / lead
        q = [0] * max(1, len(a) - len(b) + 1)
        for i in range(len(a) - len(b), -1, -1):
            c = self._c(a[i + len(b) - 1] * linv)
            q[i] = c
            if c:
                for j, bj in enumerate(b):
                    a[i + j] = self._c(a[i + j] - c * bj)
        rem = _poly_trim(a[: len(b) - 1] or [0])
        return _poly_trim(q), rem

    def div(self, a: tuple, b: tuple) -> tuple:
        return self.mul(a, self.inv(b))

    # -- roots of unity -------------------------------------------------------

    def root(self, q: RootOfUnity) -> tuple:
        """Raw image of a root of unity whose order divides the conductor."""
        if self.conductor % q.order:
            raise ScalarError(
                f"order {q.order} does not divide the conductor {self.conductor}"
            )
        return self._powers[q.exponent * (self.conductor // q.order)]

    def log(self, a: tuple) -> RootOfUnity | None:
        """Return the root of unity equal to ``a``, or None if there is none."""
        k = self._log.get(tuple(a))
        if k is None:
            return None
        return RootOfUnity(self.conductor, k)

    def from_int(self, n: int) -> tuple:
        return (self._c(n),) + (0,) * (self.degree - 1)

    def element(self, a: tuple) -> FieldElement:
        return FieldElement(self, tuple(a))

    def __repr__(self) -> str:
        return f"SplittingField(char={self.char}, conductor={self.conductor})"


@lru_cache(maxsize=None)
def splitting_field(char: int, conductor: int) -> SplittingField:
    """Cached constructor; fields are immutable and shareable."""
    return SplittingField(char, conductor)


class FieldElement:
    """An element of a :class:`SplittingField` with operator support."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: SplittingField, coeffs: tuple) -> None:
        self.field = field
        self.coeffs = coeffs

    @property
    def characteristic(self) -> int:
        return self.field.char

    def _other(self, other) -> tuple:
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise ScalarError("elements of different fields")
            return other.coeffs
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.add(self.coeffs, o))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(self.coeffs, o))

    def __rsub__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.sub(o, self.coeffs))

    def __mul__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.mul(self.coeffs, o))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.coeffs))

    def __truediv__(self, other):
        o = self._other(other)
        return FieldElement(self.field, self.field.div(self.coeffs, o))

    def __pow__(self, m: int):
        if m < 0:
            return FieldElement(self.field, self.field.inv(self.coeffs)) ** (-m)
        out = self.field.one
        base = self.coeffs
        while m:
            if m & 1:
                out = self.field.mul(out, base)
            base = self.field.mul(base, base)
            m >>= 1
        return FieldElement(self.field, out)

    def inverse(self) -> FieldElement:
        return FieldElement(self.field, self.field.inv(self.coeffs))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (FieldElement, int)):
            o = self._other(other)
            return tuple(self.coeffs) == tuple(o)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.char, self.field.conductor, self.coeffs))

    def __repr__(self) -> str:
        return f"FieldElement({list(self.coeffs)}, {self.field!r})"


def embed(q: RootOfUnity, conductor: int, char: int = 0) -> FieldElement:
    """Multiplicative embedding of a root of unity into the splitting field."""
    if not q.valid_in(char):
        raise ScalarError(f"{q.literal()} is not valid in characteristic {char}")
    field = splitting_field(char, conductor)
    return FieldElement(field, field.root(q))


def conductor_of(values, char: int = 0) -> int:
    """Least common multiple of the orders of the given roots of unity."""
    n = 1
    for q in values:
        if not q.valid_in(char):
            raise ScalarError(f"{q.literal()} is not valid in characteristic {char}")
        n = n * q.order // math.gcd(n, q.order)
    return n
