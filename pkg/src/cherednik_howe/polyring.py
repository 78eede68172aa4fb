"""Exact polynomials on the ambient space, the reflection action and Dunkl operators."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterator, List, Sequence, Tuple

from .coxeter import Matrix, ParameterFunction, RootSystem, dot, reflection_matrix
from .errors import NonDivisible

Exp = Tuple[int, ...]


def monomials(m: int, r: int) -> List[Exp]:
    """Exponent vectors of degree m, lexicographically decreasing (x_1^m first)."""
    if r == 0:
        return [()] if m == 0 else []
    if r == 1:
        return [(m,)]
    out = []
    for a in range(m, -1, -1):
        for rest in monomials(m - a, r - 1):
            out.append((a,) + rest)
    return out


class Poly:
    """Polynomial in r variables with rational coefficients."""

    __slots__ = ("terms", "nvars")

    def __init__(self, terms: Dict[Exp, Fraction] | None = None, nvars: int = 0):
        self.nvars = nvars
        self.terms = {e: Fraction(c) for e, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c, nvars: int) -> "Poly":
        return cls({(0,) * nvars: Fraction(c)}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        return cls({tuple(int(k == i) for k in range(nvars)): Fraction(1)}, nvars)

    @classmethod
    def linear(cls, coeffs: Sequence, nvars: int | None = None) -> "Poly":
        n = len(coeffs) if nvars is None else nvars
        return cls({tuple(int(k == i) for k in range(n)): Fraction(c) for i, c in enumerate(coeffs) if c}, n)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def __add__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(out, self.nvars)

    __radd__ = __add__

    def __neg__(self):
        return Poly({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other):
        return self + (-other if isinstance(other, Poly) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return Poly({e: c * other for e, c in self.terms.items()}, self.nvars)
        out: Dict[Exp, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(out, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1, self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.nvars)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e), reverse=True):
            mono = "*".join(f"x{i+1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"({self.terms[e]})" + (f"*{mono}" if mono else ""))
        return " + ".join(parts)

    def derivative(self, i: int) -> "Poly":
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[tuple(f)] = c * e[i]
        return Poly(out, self.nvars)

    def directional(self, eta: Sequence) -> "Poly":
        out = Poly({}, self.nvars)
        for i, a in enumerate(eta):
            if a:
                out = out + self.derivative(i) * a
        return out

    def homogeneous_part(self, m: int) -> "Poly":
        return Poly({e: c for e, c in self.terms.items() if sum(e) == m}, self.nvars)


class _Substitution:
    """Cache of x_i -> linear form substitutions for one matrix."""

    def __init__(self, mat: Matrix):
        r = len(mat)
        self.r = r
        self.images = [Poly.linear([mat[j][i] for j in range(r)], r) for i in range(r)]
        self.signed_perm = all(sum(1 for j in range(r) if mat[j][i]) == 1 for i in range(r))
        self.powers: Dict[Tuple[int, int], Poly] = {}
        self.mono_cache: Dict[Exp, Poly] = {}

    def power(self, i: int, k: int) -> Poly:
        key = (i, k)
        p = self.powers.get(key)
        if p is None:
            p = Poly.const(1, self.r) if k == 0 else self.power(i, k - 1) * self.images[i]
            self.powers[key] = p
        return p

    def monomial(self, e: Exp) -> Poly:
        p = self.mono_cache.get(e)
        if p is None:
            if self.signed_perm:
                exp = [0] * self.r
                coef = Fraction(1)
                for i, k in enumerate(e):
                    if k:
                        (f, ci), = self.images[i].terms.items()
                        exp[f.index(1)] += k
                        coef *= ci**k
                p = Poly({tuple(exp): coef}, self.r)
            else:
                p = Poly.const(1, self.r)
                for i, k in enumerate(e):
                    if k:
                        p = p * self.power(i, k)
            self.mono_cache[e] = p
        return p


_SUBS: Dict[Matrix, _Substitution] = {}


def _subs(mat: Matrix) -> _Substitution:
    s = _SUBS.get(mat)
    if s is None:
        s = _Substitution(mat)
        _SUBS[mat] = s
    return s


def act_monomial(mat: Matrix, e: Exp) -> Poly:
    """(w . x^e)(v) = x^e(w^{-1} v) for the orthogonal matrix ``mat`` of w."""
    return _subs(mat).monomial(e)


def group_action(mat: Matrix, p: Poly) -> Poly:
    s = _subs(mat)
    out: Dict[Exp, Fraction] = {}
    for e, c in p.terms.items():
        for f, d in s.monomial(e).terms.items():
            out[f] = out.get(f, 0) + c * d
    return Poly(out, p.nvars)


def divide_linear(p: Poly, alpha: Sequence) -> Poly:
    """Exact quotient p / alpha for a nonzero linear form alpha."""
    r = p.nvars
    k = next(i for i, a in enumerate(alpha) if a)
    ak = Fraction(alpha[k])
    lin = [(i, Fraction(a)) for i, a in enumerate(alpha) if a]

    def lead_key(e):
        return (e[k],) + tuple(e[:k]) + tuple(e[k + 1 :])

    rem = dict(p.terms)
    quo: Dict[Exp, Fraction] = {}
    while rem:
        e = max(rem, key=lead_key)
        if e[k] == 0:
            raise NonDivisible("polynomial is not divisible by the linear form")
        c = rem[e] / ak
        q = list(e)
        q[k] -= 1
        q = tuple(q)
        quo[q] = quo.get(q, 0) + c
        for i, a in lin:
            f = list(q)
            f[i] += 1
            f = tuple(f)
            v = rem.get(f, 0) - c * a
            if v:
                rem[f] = v
            else:
                rem.pop(f, None)
    return Poly(quo, r)


def divided_difference(alpha: Sequence, p: Poly) -> Poly:
    """(p - s_alpha p) / alpha."""
    s = reflection_matrix(tuple(Fraction(a) for a in alpha))
    return divide_linear(p - group_action(s, p), alpha)


def dunkl(eta: Sequence, p: Poly, rs: RootSystem, c: ParameterFunction) -> Poly:
    """T_eta p = d_eta p - sum_{alpha>0} c_alpha (alpha, eta) Delta_alpha p."""
    out = p.directional(eta)
    for a, alpha in enumerate(rs.positive_roots):
        k = c.at(rs, a) * dot(alpha, eta)
        if k:
            out = out - divided_difference(alpha, p) * k
    return out


def commuting_check(rs: RootSystem, c: ParameterFunction, eta1: Sequence, eta2: Sequence, n: int):
    """Check T_eta1 T_eta2 = T_eta2 T_eta1 on every monomial of degree <= n.

    Returns ``(ok, witness)`` with the first failing monomial, if any.
    """
    r = rs.rank
    for m in range(n + 1):
        for e in monomials(m, r):
            p = Poly({e: Fraction(1)}, r)
            a = dunkl(eta1, dunkl(eta2, p, rs, c), rs, c)
            b = dunkl(eta2, dunkl(eta1, p, rs, c), rs, c)
            if a != b:
                return False, e
    return True, None
