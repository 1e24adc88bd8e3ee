"""Exact arithmetic in GF(p^n).

Elements are dense coefficient tuples ``(c_0, c_1, ..., c_{n-1})`` of a
polynomial representative modulo a fixed monic irreducible polynomial.
Fields here are tiny (p^n <= 2^20), so no log tables are kept.

Candidate polynomials and elements are ordered by their base-p integer
encoding ``c_0 + c_1 p + ... + c_{n-1} p^(n-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .errors import DegreeOutOfRange, NotPrime, ZeroInverse

MAX_FIELD_SIZE = 2**20


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, n)`` with ``q == p**n``, or None."""
    if q < 2:
        return None
    fs = prime_factors(q)
    if len(fs) != 1:
        return None
    p, n = fs[0], 0
    while q > 1:
        q //= p
        n += 1
    return p, n


# -- polynomials over Z/pZ, coefficient lists low degree first ---------------

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mod(a: list[int] | tuple[int, ...], m: tuple[int, ...], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m``."""
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        c = a[-1]
        shift = len(a) - 1 - dm
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _monic_polys(degree: int, p: int):
    for low in product(range(p), repeat=degree):
        yield tuple(reversed(low)) + (1,)


def is_irreducible(m: tuple[int, ...], p: int) -> bool:
    """Exhaustive search for a monic factor of degree <= deg(m) / 2."""
    n = len(m) - 1
    if n < 1:
        return False
    for d in range(1, n // 2 + 1):
        for f in _monic_polys(d, p):
            if not poly_mod(m, f, p):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    p: int
    n: int
    modulus: tuple[int, ...]  # length n + 1, low degree first, monic

    @property
    def size(self) -> int:
        return self.p**self.n

    def elem(self, coeffs) -> FieldElem:
        if isinstance(coeffs, int):
            coeffs = [coeffs]
        c = [x % self.p for x in coeffs]
        c = poly_mod(c, self.modulus, self.p)
        return FieldElem(self, tuple(c + [0] * (self.n - len(c))))

    def zero(self) -> FieldElem:
        return FieldElem(self, (0,) * self.n)

    def one(self) -> FieldElem:
        return self.elem([1])

    def gen(self) -> FieldElem:
        """The class of ``x``."""
        return self.elem([0, 1])

    def from_int(self, v: int) -> FieldElem:
        digits = []
        for _ in range(self.n):
            v, r = divmod(v, self.p)
            digits.append(r)
        return FieldElem(self, tuple(digits))

    def elements(self):
        """All elements in encoding order."""
        for v in range(self.size):
            yield self.from_int(v)

    def __str__(self) -> str:
        return f"GF({self.p}^{self.n}) mod {poly_str(self.modulus)}"


def poly_str(c: tuple[int, ...]) -> str:
    terms = []
    for i in range(len(c) - 1, -1, -1):
        if c[i] == 0:
            continue
        mono = "1" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if c[i] != 1:
            mono = f"{c[i]}" if i == 0 else f"{c[i]}*{mono}"
        terms.append(mono)
    return " + ".join(terms) or "0"


@dataclass(frozen=True)
class FieldElem:
    field: FieldSpec
    coeffs: tuple[int, ...]

    def _check(self, other: FieldElem) -> None:
        if other.field != self.field:
            raise ValueError("elements belong to different fields")

    def __add__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        p = self.field.p
        return FieldElem(self.field, tuple((a - b) % p for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> FieldElem:
        p = self.field.p
        return FieldElem(self.field, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other: FieldElem) -> FieldElem:
        self._check(other)
        f = self.field
        prod = [0] * (2 * f.n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[i + j] += a * b
        return f.elem(prod)

    def __pow__(self, e: int) -> FieldElem:
        if e < 0:
            return self.inv() ** (-e)
        result = self.field.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def inv(self) -> FieldElem:
        if self.is_zero():
            raise ZeroInverse("zero has no multiplicative inverse")
        return self ** (self.field.size - 2)

    def to_int(self) -> int:
        v = 0
        for c in reversed(self.coeffs):
            v = v * self.field.p + c
        return v

    def order(self) -> int:
        """Multiplicative order."""
        if self.is_zero():
            raise ZeroInverse("zero has no multiplicative order")
        order = self.field.size - 1
        one = self.field.one()
        for r in prime_factors(order):
            while order % r == 0 and self ** (order // r) == one:
                order //= r
        return order

    def __str__(self) -> str:
        return poly_str(self.coeffs)


@lru_cache(maxsize=None)
def field_make(p: int, n: int) -> FieldSpec:
    """GF(p^n) with the first monic irreducible modulus having nonzero constant term."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if n < 1 or p**n > MAX_FIELD_SIZE:
        raise DegreeOutOfRange(f"need 1 <= n and p^n <= 2^20, got p={p}, n={n}")
    for m in _monic_polys(n, p):
        if m[0] != 0 and is_irreducible(m, p):
            return FieldSpec(p, n, m)
    raise AssertionError("unreachable: irreducible polynomials exist in every degree")


def field_arith(a: FieldElem, b: FieldElem | None, op: str) -> FieldElem:
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inv()
    raise ValueError(f"unknown op {op!r}")


@lru_cache(maxsize=None)
def primitive_element(f: FieldSpec) -> FieldElem:
    target = f.size - 1
    for v in range(1, f.size):
        a = f.from_int(v)
        if a.order() == target:
            return a
    raise AssertionError("unreachable: the multiplicative group is cyclic")
