"""Exact linear algebra over the rationals.

Vectors are sparse dicts ``{key: Fraction}`` with zero entries omitted.
Keys only need to be hashable and mutually comparable, so that a
deterministic column order can be fixed by sorting.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from .errors import NotSymmetric

Vector = Dict[Hashable, Fraction]


def clean(v: Vector) -> Vector:
    return {k: c for k, c in v.items() if c}


def add_into(acc: Vector, v: Vector, scale=1) -> None:
    """acc += scale * v, in place."""
    if not scale:
        return
    for k, c in v.items():
        s = acc.get(k, 0) + scale * c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)


def combine(pairs: Iterable[Tuple[object, Vector]]) -> Vector:
    """Linear combination of sparse vectors."""
    out: Vector = {}
    for coeff, v in pairs:
        add_into(out, v, coeff)
    return out


def scale(v: Vector, s) -> Vector:
    if not s:
        return {}
    return {k: s * c for k, c in v.items()}


def rref(rows: Sequence[Vector], columns: Optional[Sequence[Hashable]] = None):
    """Reduced row echelon form of the given rows.

    Returns ``(basis, pivots)`` where ``basis[i]`` has a 1 at ``pivots[i]``
    and zeros at every other pivot column. The result is canonical for the
    row space once the column order is fixed.
    """
    work = [clean(dict(r)) for r in rows]
    work = [r for r in work if r]
    if columns is None:
        cols = set()
        for r in work:
            cols.update(r)
        columns = sorted(cols)
    out: List[Vector] = []
    pivots = []
    for col in columns:
        piv = None
        for i, r in enumerate(work):
            if col in r:
                piv = i
                break
        if piv is None:
            continue
        prow = work.pop(piv)
        inv = 1 / Fraction(prow[col])
        prow = {k: c * inv for k, c in prow.items()}
        for r in work:
            f = r.get(col)
            if f:
                add_into(r, prow, -f)
        for r in out:
            f = r.get(col)
            if f:
                add_into(r, prow, -f)
        work = [r for r in work if r]
        out.append(prow)
        pivots.append(col)
        if not work:
            break
    return out, pivots


def rank(vectors: Sequence[Vector]) -> int:
    return len(rref(vectors)[0])


def span_basis(vectors: Sequence[Vector]) -> List[Vector]:
    """Canonical (reduced echelon) basis of the span."""
    return rref(vectors)[0]


def reduce_against(basis: Sequence[Vector], pivots: Sequence[Hashable], v: Vector) -> Vector:
    r = dict(v)
    for b, p in zip(basis, pivots):
        f = r.get(p)
        if f:
            add_into(r, b, -f)
    return r


def in_span(vectors: Sequence[Vector], v: Vector) -> bool:
    basis, piv = rref(vectors)
    return not reduce_against(basis, piv, v)


def nullspace(columns: Sequence[Vector]) -> List[Dict[int, Fraction]]:
    """Kernel of the linear map whose j-th column is ``columns[j]``.

    The kernel vectors are returned as sparse dicts over column indices,
    one per free column, in increasing order of the free column.
    """
    rows: Dict[Hashable, Dict[int, Fraction]] = {}
    for j, col in enumerate(columns):
        for t, c in col.items():
            if c:
                rows.setdefault(t, {})[j] = Fraction(c)
    order = list(range(len(columns)))
    basis, pivots = rref(list(rows.values()), order)
    pivset = set(pivots)
    kernel = []
    for f in order:
        if f in pivset:
            continue
        v = {f: Fraction(1)}
        for b, p in zip(basis, pivots):
            c = b.get(f)
            if c:
                v[p] = -c
        kernel.append(v)
    return kernel


def matrix_rank(mat: Sequence[Sequence]) -> int:
    return rank([{j: Fraction(x) for j, x in enumerate(row) if x} for row in mat])


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0]) if b else 0
    return tuple(
        tuple(sum((a[i][t] * b[t][j] for t in range(k) if a[i][t]), Fraction(0)) for j in range(m))
        for i in range(n)
    )


def identity(n: int):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def transpose(a):
    return tuple(zip(*a)) if a else ()


def kron(a, b):
    return tuple(
        tuple(a[i][j] * b[p][q] for j in range(len(a[0])) for q in range(len(b[0])))
        for i in range(len(a))
        for p in range(len(b))
    )


def solve(mat: Sequence[Sequence], rhs: Sequence) -> Optional[List[Fraction]]:
    """One solution of mat * x = rhs, or None when inconsistent."""
    ncols = len(mat[0]) if mat else 0
    rows = []
    for i, row in enumerate(mat):
        r = {j: Fraction(x) for j, x in enumerate(row) if x}
        if rhs[i]:
            r[ncols] = Fraction(rhs[i])
        rows.append(r)
    basis, pivots = rref(rows, list(range(ncols + 1)))
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for b, p in zip(basis, pivots):
        x[p] = b.get(ncols, Fraction(0))
    return x


@dataclass(frozen=True)
class Positivity:
    """Outcome of the symmetric elimination used to classify a Gram matrix."""

    status: str  # "positive_definite", "semidefinite", "indefinite"
    kernel_dim: int
    pivots: Tuple[Fraction, ...]
    failing_index: Optional[int] = None

    @property
    def positive_definite(self) -> bool:
        return self.status == "positive_definite"


def positivity(mat: Sequence[Sequence]) -> Positivity:
    """Classify a symmetric rational matrix by exact LDL^T with diagonal pivoting.

    A negative pivot, or a remaining block with zero diagonal but nonzero
    off-diagonal entries, certifies indefiniteness. ``failing_index`` is the
    original index of the offending pivot.
    """
    n = len(mat)
    a = [[Fraction(x) for x in row] for row in mat]
    for i in range(n):
        if len(a[i]) != n:
            raise NotSymmetric("matrix is not square")
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise NotSymmetric(f"entry ({i},{j}) differs from ({j},{i})")
    active = list(range(n))
    pivots = []
    while active:
        piv = next((i for i in active if a[i][i] > 0), None)
        if piv is None:
            neg = next((i for i in active if a[i][i] < 0), None)
            if neg is not None:
                return Positivity("indefinite", 0, tuple(pivots) + (a[neg][neg],), neg)
            off = next(((i, j) for i in active for j in active if i != j and a[i][j]), None)
            if off is not None:
                return Positivity("indefinite", 0, tuple(pivots), off[0])
            return Positivity("semidefinite", len(active), tuple(pivots), active[0])
        d = a[piv][piv]
        pivots.append(d)
        active.remove(piv)
        col = {i: a[i][piv] for i in active if a[i][piv]}
        for i, ci in col.items():
            f = ci / d
            row_i = a[i]
            for j, cj in col.items():
                row_i[j] -= f * cj
    return Positivity("positive_definite", 0, tuple(pivots))


def frac(s) -> Fraction:
    """Parse a rational given as int, Fraction or a "p/q" string."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, bool):
        raise ValueError("boolean is not a rational")
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, str):
        return Fraction(s.strip())
    raise ValueError(f"not an exact rational: {s!r}")


def fmt(x) -> str:
    return str(Fraction(x))
