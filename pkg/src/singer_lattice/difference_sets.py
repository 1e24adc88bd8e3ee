"""Cyclic planar difference sets of order q in Z/(q^2+q+1)Z."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .errors import ModulusMismatch, NotAUnit, NotPrimePower, TooLarge
from .finite_field import field_make, prime_power, primitive_element

MAX_SINGER_ORDER = 64
MAX_ENUMERATION_ORDER = 5


def delta_of(q: int) -> int:
    return q * q + q + 1


def order_of_delta(delta: int) -> int | None:
    """Inverse of ``delta_of``; None if ``delta`` is not of the form q^2+q+1."""
    q = 0
    while delta_of(q) < delta:
        q += 1
    return q if delta_of(q) == delta else None


@dataclass(frozen=True)
class DifferenceSet:
    q: int
    delta: int
    elements: tuple[int, ...]

    @classmethod
    def of(cls, elements, delta: int) -> DifferenceSet:
        """Build and validate; raises ValueError if not a planar difference set."""
        els = tuple(sorted({e % delta for e in elements}))
        report = verify_difference_set(els, delta)
        if not report.valid:
            raise ValueError(f"not a difference set mod {delta}: {report.reason}")
        return cls(report.order, delta, els)

    @property
    def based(self) -> bool:
        return 0 in self.elements

    @property
    def nonzero(self) -> tuple[int, ...]:
        """The elements other than 0 (D* for a based set)."""
        return tuple(e for e in self.elements if e != 0)

    def pair_with_difference(self, n: int) -> tuple[int, int]:
        """The unique pair (d, d') with d - d' = n (mod delta), n nonzero."""
        n %= self.delta
        for d in self.elements:
            e = (d - n) % self.delta
            if e in self.elements and e != d:
                return d, e
        raise ValueError(f"{n} is not a nonzero difference of {self.elements}")

    def serialize(self) -> str:
        return f"diffset q={self.q} delta={self.delta} : " + " ".join(map(str, self.elements))


@dataclass(frozen=True)
class DiffReport:
    valid: bool
    order: int | None = None
    duplicated: int | None = None
    missing: int | None = None
    reason: str = ""

    def __str__(self) -> str:
        if self.valid:
            return f"valid order={self.order}"
        return f"invalid: {self.reason}"


def verify_difference_set(elements, delta: int) -> DiffReport:
    """Reports the smallest duplicated difference, else the smallest missing one."""
    els = [e % delta for e in elements]
    if len(set(els)) != len(els):
        return DiffReport(False, reason="repeated residue")
    counts = Counter((x - y) % delta for x in els for y in els if x != y)
    dup = min((d for d, c in counts.items() if c > 1), default=None)
    if dup is not None:
        return DiffReport(False, duplicated=dup, reason=f"difference {dup} occurs {counts[dup]} times")
    missing = next((d for d in range(1, delta) if d not in counts), None)
    if missing is not None:
        return DiffReport(False, missing=missing, reason=f"difference {missing} missing")
    return DiffReport(True, order=len(els) - 1)


def _trace_zero_exponents(q: int) -> list[int]:
    p, n = prime_power(q)
    big = field_make(p, 3 * n)
    theta = primitive_element(big)
    delta = delta_of(q)
    # Tr(a) = a + a^q + a^(q^2); run theta^i, theta^(qi), theta^(q^2 i) together.
    t1 = theta ** q
    t2 = t1 ** q
    u = v = w = big.one()
    out = []
    for i in range(delta):
        if (u + v + w).is_zero():
            out.append(i)
        u, v, w = u * theta, v * t1, w * t2
    return out


def singer_difference_set(q: int) -> DifferenceSet:
    """Points of PG(2,q) as powers of a primitive element of GF(q^3), trace-zero line."""
    if prime_power(q) is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if q > MAX_SINGER_ORDER:
        raise TooLarge(f"q={q} exceeds {MAX_SINGER_ORDER}")
    delta = delta_of(q)
    d = DifferenceSet.of(_trace_zero_exponents(q), delta)
    return rebase(d)


def translate_scale(d: DifferenceSet, r: int, x: int) -> DifferenceSet:
    if gcd(r, d.delta) != 1:
        raise NotAUnit(f"{r} is not a unit mod {d.delta}")
    return DifferenceSet.of((r * e + x for e in d.elements), d.delta)


def _units(delta: int) -> list[int]:
    return [r for r in range(1, delta) if gcd(r, delta) == 1] if delta > 1 else [0]


def are_equivalent(d1: DifferenceSet, d2: DifferenceSet) -> tuple[int, int] | None:
    """Smallest (r, x) with d2 = r*d1 + x, searching r then x ascending."""
    if d1.delta != d2.delta:
        raise ModulusMismatch(f"{d1.delta} != {d2.delta}")
    delta = d1.delta
    target = set(d2.elements)
    if len(target) != len(d1.elements):
        return None
    for r in _units(delta):
        scaled = [r * e % delta for e in d1.elements]
        for x in range(delta):
            if all((s + x) % delta in target for s in scaled):
                return r, x
    return None


def rebase(d: DifferenceSet) -> DifferenceSet:
    m = min(d.elements)
    return DifferenceSet(d.q, d.delta, tuple(sorted((e - m) % d.delta for e in d.elements)))


def canonical_form(d: DifferenceSet) -> tuple[int, ...]:
    """Lexicographically smallest sorted tuple in the equivalence class of ``d``."""
    delta = d.delta
    best = None
    for r in _units(delta):
        scaled = [r * e % delta for e in d.elements]
        for x in range(delta):
            cand = tuple(sorted((s + x) % delta for s in scaled))
            if best is None or cand < best:
                best = cand
    return best


def based_difference_sets(q: int) -> list[DifferenceSet]:
    """Every difference set of order q containing 0, sorted."""
    delta = delta_of(q)
    out = []
    for rest in combinations(range(1, delta), q):
        els = (0,) + rest
        if _is_perfect(els, delta):
            out.append(DifferenceSet(q, delta, els))
    return out


def _is_perfect(els, delta: int) -> bool:
    seen = set()
    for x in els:
        for y in els:
            if x != y:
                d = (x - y) % delta
                if d in seen:
                    return False
                seen.add(d)
    return len(seen) == delta - 1


def enumerate_difference_sets(q: int) -> list[DifferenceSet]:
    """Exhaust all C(d, q+1) subsets of Z/dZ; one canonical representative per class."""
    if q < 1:
        raise ValueError("q must be >= 1")
    if q > MAX_ENUMERATION_ORDER:
        raise TooLarge(f"q={q} exceeds {MAX_ENUMERATION_ORDER}")
    delta = delta_of(q)
    keys = set()
    for els in combinations(range(delta), q + 1):
        if _is_perfect(els, delta):
            keys.add(canonical_form(DifferenceSet(q, delta, els)))
    return [DifferenceSet(q, delta, k) for k in sorted(keys)]
