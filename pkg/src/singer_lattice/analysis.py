"""Checks on finite presentations: abelian invariants via Smith normal form,
and Hasselgrove-Leech-Trotter coset enumeration."""

from __future__ import annotations

from dataclasses import dataclass, field

from .presentation import GroupPresentation

DEFAULT_MAX_COSETS = 100_000


# -- abelianization ----------------------------------------------------------

@dataclass(frozen=True)
class AbelianInvariants:
    torsion: tuple[int, ...]
    free_rank: int

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "trivial"

    @property
    def order(self) -> int | None:
        """Group order, or None when infinite."""
        if self.free_rank:
            return None
        out = 1
        for d in self.torsion:
            out *= d
        return out


def relation_matrix(p: GroupPresentation) -> list[list[int]]:
    """Exponent sums: one row per relator, one column per generator."""
    col = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for r in p.relators:
        row = [0] * len(p.generators)
        for g, e in r:
            row[col[g]] += e
        rows.append(row)
    return rows


def smith_normal_form(matrix: list[list[int]]) -> list[int]:
    """Nonzero diagonal entries d1 | d2 | ... of the Smith form, all positive.

    The pivot is the entry of least absolute value in the untouched block,
    first in row-major order on ties.
    """
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if a else 0
    diag = []
    t = 0
    while t < min(rows, cols):
        entries = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]
        while True:
            # clear column t below the pivot, then row t to its right
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    f = a[i][t] // a[t][t]
                    a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    f = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= f * row[t]
                    if a[t][j]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                            if a[i][j] % a[t][t]), None)
                if bad is None:
                    break
                # fold the offending row in so the pivot must shrink
                a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
                continue
            # a remainder is smaller than the pivot: move it into place
            _, pi, pj = min((abs(a[i][j]), i, j)
                            for i in range(t, rows) for j in range(t, cols)
                            if a[i][j] and (i == t or j == t))
            a[t], a[pi] = a[pi], a[t]
            for row in a:
                row[t], row[pj] = row[pj], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def abelianization(p: GroupPresentation) -> AbelianInvariants:
    diag = smith_normal_form(relation_matrix(p))
    return AbelianInvariants(tuple(d for d in diag if d > 1), len(p.generators) - len(diag))


# -- coset enumeration -------------------------------------------------------

@dataclass
class CosetTable:
    status: str  # "complete" or "exceeded"
    generators: tuple[str, ...]
    index: int | None = None
    limit: int = DEFAULT_MAX_COSETS
    # table[c][2i] is c.g_i, table[c][2i+1] is c.g_i^-1, cosets numbered 0..index-1
    table: list[list[int]] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return self.status == "complete"

    def permutation(self, gen: str) -> list[int]:
        return [row[2 * self.generators.index(gen)] for row in self.table]

    def __str__(self) -> str:
        if self.complete:
            return f"complete index={self.index}"
        return f"exceeded limit={self.limit}"


class _Enumerator:
    def __init__(self, p: GroupPresentation, max_cosets: int):
        self.ngen = len(p.generators)
        col = {g: i for i, g in enumerate(p.generators)}
        self.col = col
        self.rels = [self.expand(r) for r in p.relators]
        self.limit = max_cosets
        self.table: list[list[int | None]] = [[None] * (2 * self.ngen)]
        self.parent = [0]

    def expand(self, word) -> list[int]:
        out = []
        for g, e in word:
            c = 2 * self.col[g] + (e < 0)
            out.extend([c] * abs(e))
        return out

    @staticmethod
    def inv(c: int) -> int:
        return c ^ 1

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.limit:
            raise OverflowError
        n = len(self.table)
        self.table.append([None] * (2 * self.ngen))
        self.parent.append(n)
        self.table[c][x] = n
        self.table[n][self.inv(x)] = c

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        k, l = min(k, l), max(k, l)
        self.parent[l] = k
        queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            for x in range(2 * self.ngen):
                d = self.table[g][x]
                if d is None:
                    continue
                ix = self.inv(x)
                if self.table[d][ix] == g:
                    self.table[d][ix] = None
                m, n = self.rep(g), self.rep(d)
                if self.table[m][x] is not None:
                    self.merge(n, self.table[m][x], queue)
                elif self.table[n][ix] is not None:
                    self.merge(m, self.table[n][ix], queue)
                else:
                    self.table[m][x] = n
                    self.table[n][ix] = m

    def scan_and_fill(self, a: int, w: list[int]) -> None:
        if not w:
            return
        f, b = a, a
        i, j = 0, len(w) - 1
        while True:
            while i <= j and self.table[f][w[i]] is not None:
                f = self.table[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][self.inv(w[j])] is not None:
                b = self.table[b][self.inv(w[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                self.table[f][w[i]] = b
                self.table[b][self.inv(w[i])] = f
                return
            self.define(f, w[i])

    def run(self, subgroup) -> None:
        for h in subgroup:
            self.scan_and_fill(0, h)
            if not self.live(0):
                break
        a = 0
        while a < len(self.table):
            for w in self.rels:
                if not self.live(a):
                    break
                self.scan_and_fill(a, w)
            if self.live(a):
                for x in range(2 * self.ngen):
                    if self.table[a][x] is None:
                        self.define(a, x)
            a += 1

    def compact(self) -> list[list[int]]:
        alive = [c for c in range(len(self.table)) if self.live(c)]
        renum = {c: i for i, c in enumerate(alive)}
        return [[renum[self.rep(self.table[c][x])] for x in range(2 * self.ngen)] for c in alive]


def coset_enumerate(p: GroupPresentation, subgroup=(),
                    max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """HLT enumeration of the cosets of <subgroup> in the group of ``p``.

    ``max_cosets`` bounds the number of coset definitions, live or dead.
    """
    if max_cosets < 1:
        raise ValueError("max_cosets must be >= 1")
    en = _Enumerator(p, max_cosets)
    sub = [en.expand(h) for h in subgroup]
    try:
        en.run(sub)
    except OverflowError:
        return CosetTable("exceeded", p.generators, None, max_cosets)
    table = en.compact()
    return CosetTable("complete", p.generators, len(table), max_cosets, table)
