"""Partitions, Murnaghan-Nakayama characters and seminormal forms for S_n."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple

Partition = Tuple[int, ...]


def partitions(n: int, max_part: int | None = None) -> List[Partition]:
    """All partitions of n in reverse lexicographic order."""
    if max_part is None:
        max_part = n
    if n == 0:
        return [()]
    out = []
    for first in range(min(n, max_part), 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return out


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > i) for i in range(lam[0]))


def partition_label(lam: Partition) -> str:
    return "[" + ",".join(map(str, lam)) + "]"


def parse_partition(label: str) -> Partition:
    body = label.strip()
    if not (body.startswith("[") and body.endswith("]")):
        raise ValueError(label)
    inner = body[1:-1].strip()
    return tuple(int(p) for p in inner.split(",")) if inner else ()


@lru_cache(maxsize=None)
def mn_character(lam: Partition, mu: Partition) -> int:
    """Character of the irreducible S_n module ``lam`` on cycle type ``mu``.

    Border strips are removed through bead moves on the beta-set of ``lam``.
    """
    if sum(lam) != sum(mu):
        raise ValueError("sizes differ")
    if not mu:
        return 1
    k = mu[0]
    rest = mu[1:]
    m = len(lam)
    beta = [lam[i] + (m - 1 - i) for i in range(m)]
    bset = set(beta)
    total = 0
    for b in beta:
        t = b - k
        if t < 0 or t in bset:
            continue
        height = sum(1 for x in beta if t < x < b)
        nb = sorted((bset - {b}) | {t}, reverse=True)
        new = tuple(x - (m - 1 - i) for i, x in enumerate(nb))
        new = tuple(p for p in new if p > 0)
        total += (-1) ** height * mn_character(new, rest)
    return total


def cycle_type(perm: Tuple[int, ...]) -> Partition:
    seen = [False] * len(perm)
    lengths = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            n += 1
        lengths.append(n)
    return tuple(sorted(lengths, reverse=True))


Tableau = Tuple[Tuple[int, ...], ...]


def standard_tableaux(lam: Partition) -> List[Tableau]:
    """Standard Young tableaux of shape lam, entries 1..n, in a fixed order."""
    n = sum(lam)
    out: List[Tableau] = []

    def rec(rows: List[List[int]], k: int):
        if k > n:
            out.append(tuple(tuple(r) for r in rows))
            return
        for i in range(len(lam)):
            if len(rows[i]) < lam[i] and (i == 0 or len(rows[i - 1]) > len(rows[i])):
                rows[i].append(k)
                rec(rows, k + 1)
                rows[i].pop()

    rec([[] for _ in lam], 1)
    return out


def _position(t: Tableau) -> Dict[int, Tuple[int, int]]:
    return {v: (i, j) for i, row in enumerate(t) for j, v in enumerate(row)}


def _swap(t: Tableau, k: int) -> Tableau:
    def f(v):
        return k + 1 if v == k else (k if v == k + 1 else v)

    return tuple(tuple(f(v) for v in row) for row in t)


def seminormal_form(lam: Partition):
    """Young's seminormal form.

    Returns ``(tableaux, gens, gram)``: ``gens[k-1]`` is the matrix of the
    transposition (k, k+1) on the basis indexed by ``tableaux`` and ``gram`` is
    a diagonal invariant form.
    """
    tabs = standard_tableaux(lam)
    index = {t: i for i, t in enumerate(tabs)}
    d = len(tabs)
    n = sum(lam)
    gens = []
    for k in range(1, n):
        m = [[Fraction(0)] * d for _ in range(d)]
        for t, i in index.items():
            pos = _position(t)
            (r1, c1), (r2, c2) = pos[k], pos[k + 1]
            if r1 == r2:
                m[i][i] = Fraction(1)
                continue
            if c1 == c2:
                m[i][i] = Fraction(-1)
                continue
            rho = (c2 - r2) - (c1 - r1)
            a = Fraction(1, rho)
            j = index[_swap(t, k)]
            m[i][i] = a
            # column i is the image of v_t
            if r1 < r2:
                m[j][i] = Fraction(1)
            else:
                m[j][i] = 1 - a * a
        gens.append(tuple(tuple(row) for row in m))
    gram = [Fraction(0)] * d
    gram[0] = Fraction(1)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        t = tabs[i]
        pos = _position(t)
        for k in range(1, n):
            (r1, c1), (r2, c2) = pos[k], pos[k + 1]
            if r1 == r2 or c1 == c2:
                continue
            j = index[_swap(t, k)]
            if j in seen:
                continue
            g = gens[k - 1]
            # invariance forces gram_i * g[i][j] == gram_j * g[j][i]
            gram[j] = gram[i] * g[i][j] / g[j][i]
            seen.add(j)
            stack.append(j)
    gmat = tuple(tuple(gram[i] if i == j else Fraction(0) for j in range(d)) for i in range(d))
    return tabs, gens, gmat
