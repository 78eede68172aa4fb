"""Clifford algebra of h + h* with {x_i, y_j} = delta_ij, and its spin module.

A normally ordered monomial x_{i1}...x_{ik} y_{j1}...y_{jl} (increasing
indices) is stored as the pair of bit masks ``(X, Y)``. The spin module is the
exterior algebra of h*, with a basis vector x_{i1} ^ ... ^ x_{ik} stored as a
bit mask.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from .coxeter import RootSystem, dot

Mono = Tuple[int, int]


def _below(mask: int, i: int) -> int:
    return bin(mask & ((1 << i) - 1)).count("1")


def _bits(mask: int) -> List[int]:
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


class CliffordElement:
    __slots__ = ("terms", "r")

    def __init__(self, terms: Dict[Mono, Fraction] | None = None, r: int = 0):
        self.r = r
        self.terms = {k: Fraction(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def scalar(cls, c, r: int) -> "CliffordElement":
        return cls({(0, 0): c}, r)

    @classmethod
    def x(cls, i: int, r: int) -> "CliffordElement":
        return cls({(1 << i, 0): 1}, r)

    @classmethod
    def y(cls, i: int, r: int) -> "CliffordElement":
        return cls({(0, 1 << i): 1}, r)

    @classmethod
    def x_vector(cls, v: Sequence, r: int | None = None) -> "CliffordElement":
        return cls({(1 << i, 0): a for i, a in enumerate(v) if a}, len(v) if r is None else r)

    @classmethod
    def y_vector(cls, v: Sequence, r: int | None = None) -> "CliffordElement":
        return cls({(0, 1 << i): a for i, a in enumerate(v) if a}, len(v) if r is None else r)

    def __add__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(other, self.r)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return CliffordElement(out, self.r)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement({k: -v for k, v in self.terms.items()}, self.r)

    def __sub__(self, other):
        return self + (-other if isinstance(other, CliffordElement) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CliffordElement):
            return clifford_mul(self, other)
        return CliffordElement({k: v * other for k, v in self.terms.items()}, self.r)

    def __rmul__(self, other):
        return CliffordElement({k: v * other for k, v in self.terms.items()}, self.r)

    def __eq__(self, other):
        if not isinstance(other, CliffordElement):
            other = CliffordElement.scalar(other, self.r)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (X, Y), v in sorted(self.terms.items()):
            word = [f"x{i+1}" for i in _bits(X)] + [f"y{j+1}" for j in _bits(Y)]
            parts.append(f"({v})" + ("*" + "*".join(word) if word else ""))
        return " + ".join(parts)

    def parity(self) -> int:
        """0 or 1 when homogeneous; raises otherwise."""
        ps = {(bin(X).count("1") + bin(Y).count("1")) % 2 for X, Y in self.terms}
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop() if ps else 0


def _left_gen(kind: str, i: int, mono: Mono) -> List[Tuple[int, Mono]]:
    X, Y = mono
    bit = 1 << i
    if kind == "x":
        if X & bit:
            return []
        return [((-1) ** _below(X, i), (X | bit, Y))]
    out = []
    if X & bit:
        out.append(((-1) ** _below(X, i), (X ^ bit, Y)))
    if not Y & bit:
        out.append(((-1) ** (bin(X).count("1") + _below(Y, i)), (X, Y | bit)))
    return out


def _word(mono: Mono) -> List[Tuple[str, int]]:
    X, Y = mono
    return [("x", i) for i in _bits(X)] + [("y", j) for j in _bits(Y)]


def clifford_mul(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    out: Dict[Mono, Fraction] = {}
    for ma, ca in a.terms.items():
        cur = dict(b.terms)
        for kind, i in reversed(_word(ma)):
            nxt: Dict[Mono, Fraction] = {}
            for m, v in cur.items():
                for s, m2 in _left_gen(kind, i, m):
                    nxt[m2] = nxt.get(m2, 0) + s * v
            cur = {k: v for k, v in nxt.items() if v}
        for m, v in cur.items():
            out[m] = out.get(m, 0) + ca * v
    return CliffordElement(out, max(a.r, b.r))


def supercommutator(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    sign = (-1) ** (a.parity() * b.parity())
    return a * b - (b * a) * sign


def wedge_sign(mask: int, i: int):
    """x_i ^ omega as (sign, mask) or None."""
    if mask >> i & 1:
        return None
    return (-1) ** _below(mask, i), mask | (1 << i)


def contract_sign(mask: int, i: int):
    """Contraction of omega by y_i as (sign, mask) or None."""
    if not mask >> i & 1:
        return None
    return (-1) ** _below(mask, i), mask ^ (1 << i)


def spin_action(a: CliffordElement, vec: Dict[int, Fraction]) -> Dict[int, Fraction]:
    """Action of a on a vector of the spin module (x wedges, y contracts)."""
    out: Dict[int, Fraction] = {}
    for mono, ca in a.terms.items():
        cur = dict(vec)
        for kind, i in reversed(_word(mono)):
            nxt: Dict[int, Fraction] = {}
            op = wedge_sign if kind == "x" else contract_sign
            for m, v in cur.items():
                res = op(m, i)
                if res is not None:
                    s, m2 = res
                    nxt[m2] = nxt.get(m2, 0) + s * v
            cur = {k: v for k, v in nxt.items() if v}
        for m, v in cur.items():
            out[m] = out.get(m, 0) + ca * v
    return {k: v for k, v in out.items() if v}


def tau_alpha(rs: RootSystem, a: int) -> CliffordElement:
    """tau_alpha = 1 - alpha alpha^vee."""
    r = rs.rank
    alpha = CliffordElement.x_vector(rs.positive_roots[a], r)
    cor = CliffordElement.y_vector(rs.coroots[a], r)
    return CliffordElement.scalar(1, r) - alpha * cor


def rho_w(rs: RootSystem, word: Iterable[int]) -> CliffordElement:
    """tau_w for w given as a word in positive-root indices."""
    out = CliffordElement.scalar(1, rs.rank)
    for a in word:
        out = out * tau_alpha(rs, a)
    return out


def transform(elem: CliffordElement, mat) -> CliffordElement:
    """Image under the automorphism induced by an orthogonal matrix on h + h*."""
    r = elem.r
    xs = [CliffordElement.x_vector([mat[j][i] for j in range(r)], r) for i in range(r)]
    ys = [CliffordElement.y_vector([mat[j][i] for j in range(r)], r) for i in range(r)]
    out = CliffordElement({}, r)
    for mono, v in elem.terms.items():
        p = CliffordElement.scalar(v, r)
        for kind, i in _word(mono):
            p = p * (xs[i] if kind == "x" else ys[i])
        out = out + p
    return out


def z_element(i: int, r: int) -> CliffordElement:
    """z_i = [x_i, y_i] = 2 x_i y_i - 1."""
    x, y = CliffordElement.x(i, r), CliffordElement.y(i, r)
    return x * y - y * x


def z0(r: int) -> CliffordElement:
    out = CliffordElement({}, r)
    for i in range(r):
        out = out + z_element(i, r) * Fraction(1, 2)
    return out


def z0_grade(elem: CliffordElement) -> Dict[int, CliffordElement]:
    """Split into eigencomponents of ad(Z_0); the eigenvalue is #x - #y."""
    parts: Dict[int, Dict[Mono, Fraction]] = {}
    for (X, Y), v in elem.terms.items():
        n = bin(X).count("1") - bin(Y).count("1")
        parts.setdefault(n, {})[(X, Y)] = v
    return {n: CliffordElement(t, elem.r) for n, t in sorted(parts.items())}


def bivector_element(i: int, j: int, r: int) -> CliffordElement:
    """x_i y_j - x_j y_i inside the Clifford algebra."""
    return CliffordElement.x(i, r) * CliffordElement.y(j, r) - CliffordElement.x(j, r) * CliffordElement.y(i, r)


def basis(r: int) -> List[Mono]:
    return [(X, Y) for X in range(1 << r) for Y in range(1 << r)]


def faithfulness_rank(r: int) -> int:
    """Rank of C -> End(spin module); equals 4^r exactly when the action is faithful."""
    from .linalg import rank

    vecs = []
    for mono in basis(r):
        e = CliffordElement({mono: 1}, r)
        v = {}
        for s in range(1 << r):
            for t, c in spin_action(e, {s: Fraction(1)}).items():
                v[(t, s)] = c
        vecs.append(v)
    return rank(vecs)


def exterior_action(mat, mask: int, r: int) -> Dict[int, Fraction]:
    """w (x_{i1} ^ ... ^ x_{ik}) computed from the matrix of w."""
    cur: Dict[int, Fraction] = {0: Fraction(1)}
    for i in reversed(_bits(mask)):
        col = [mat[k][i] for k in range(r)]
        nxt: Dict[int, Fraction] = {}
        for m, v in cur.items():
            for k, a in enumerate(col):
                if not a:
                    continue
                res = wedge_sign(m, k)
                if res is not None:
                    s, m2 = res
                    nxt[m2] = nxt.get(m2, 0) + s * a * v
        cur = {k: v for k, v in nxt.items() if v}
    return cur
