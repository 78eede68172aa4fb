"""Deformed angular momenta X_ij, their commutation relations, the Dirac element and
the diagonal elements F_ij."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from . import clifford as cl
from .coxeter import RootSystem
from .errors import EqualIndices, TruncationTooSmall
from .linalg import add_into
from .module import BlockOperator, KModule, commutator, compare_on, identity_operator, linear_sum, super_bracket, vector_json, format_key, zero_operator
from .spo import REALIZED, SYMBOLS, abstract_bracket, realize


class Bivector:
    """Element sum B_ij X_ij of the span of the X_ij, stored with i < j."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Tuple[int, int], Fraction]] = None):
        self.terms: Dict[Tuple[int, int], Fraction] = {}
        for (i, j), v in (terms or {}).items():
            self._add(i, j, Fraction(v))

    def _add(self, i: int, j: int, v: Fraction):
        if i == j or not v:
            return
        if i > j:
            i, j, v = j, i, -v
        s = self.terms.get((i, j), 0) + v
        if s:
            self.terms[(i, j)] = s
        else:
            self.terms.pop((i, j), None)

    @classmethod
    def pair(cls, i: int, j: int, v=1) -> "Bivector":
        return cls({(i, j): v})

    @classmethod
    def wedge(cls, u, v) -> "Bivector":
        """u ^ v for vectors in coordinates, as a combination of X_ij = x_i ^ x_j."""
        b = cls()
        for i, a in enumerate(u):
            for j, c in enumerate(v):
                if a and c:
                    b._add(i, j, Fraction(a) * c)
        return b

    def __add__(self, other: "Bivector") -> "Bivector":
        out = Bivector(self.terms)
        for (i, j), v in other.terms.items():
            out._add(i, j, v)
        return out

    def __sub__(self, other: "Bivector") -> "Bivector":
        return self + other * -1

    def __mul__(self, s) -> "Bivector":
        return Bivector({k: v * s for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Bivector) and self.terms == other.terms

    def __repr__(self):
        return " + ".join(f"{v}*X{i+1}{j+1}" for (i, j), v in sorted(self.terms.items())) or "0"

    def contract_right(self, u) -> List[Fraction]:
        """X -| u: sum B_ij (u_i x_j - u_j x_i)."""
        n = len(u)
        out = [Fraction(0)] * n
        for (i, j), v in self.terms.items():
            out[j] += v * u[i]
            out[i] -= v * u[j]
        return out

    def contract_left(self, u) -> List[Fraction]:
        """u |- X: sum B_kl (u_l x_k - u_k x_l)."""
        n = len(u)
        out = [Fraction(0)] * n
        for (k, l), v in self.terms.items():
            out[k] += v * u[l]
            out[l] -= v * u[k]
        return out


def classical_bracket(X: Bivector, Y: Bivector) -> Bivector:
    """so(h) bracket: [X_ij, X_kl]_0 = d_jk X_il - d_li X_kj - d_ik X_jl + d_lj X_ki."""
    out = Bivector()
    for (i, j), a in X.terms.items():
        for (k, l), b in Y.terms.items():
            ab = a * b
            t = Bivector()
            if j == k:
                t._add(i, l, ab)
            if l == i:
                t._add(k, j, -ab)
            if i == k:
                t._add(j, l, -ab)
            if l == j:
                t._add(k, i, ab)
            out = out + t
    return out


def kappa_vectors(alpha, cor, X: Bivector, Y: Bivector) -> Bivector:
    """(X -| alpha^vee) ^ (alpha |- Y) for explicit root and coroot coordinates."""
    return Bivector.wedge(X.contract_right(cor), Y.contract_left(alpha))


def kappa(rs: RootSystem, a: int, X: Bivector, Y: Bivector) -> Bivector:
    """kappa_alpha(X, Y) for the positive root with index a."""
    return kappa_vectors(rs.positive_roots[a], rs.coroots[a], X, Y)


def kappa_closed(rs: RootSystem, a: int, X: Bivector, Y: Bivector) -> Bivector:
    return kappa_closed_vectors(rs.positive_roots[a], rs.coroots[a], X, Y)


def kappa_closed_vectors(al, co, X: Bivector, Y: Bivector) -> Bivector:
    """Expanded form of kappa on basis elements, extended bilinearly."""
    out = Bivector()
    for (i, j), s in X.terms.items():
        for (k, l), t in Y.terms.items():
            st = s * t
            out._add(i, l, st * al[j] * co[k])
            out._add(k, j, -st * al[l] * co[i])
            out._add(j, l, -st * al[i] * co[k])
            out._add(k, i, st * al[l] * co[j])
    return out


def x_op(module: KModule, i: int, j: int) -> BlockOperator:
    """X_ij = x_i y_j - x_j y_i acting on the C[h] (x) V(tau) factor."""
    if i == j:
        raise EqualIndices(f"X_{i+1}{j+1} needs distinct indices")
    x, y = module.x, module.y

    def build():
        op = linear_sum([(1, x(i) @ y(j)), (-1, x(j) @ y(i))], f"X{i+1}{j+1}")
        op.shift = (0, 0)
        return op

    return module._cached(("X", i, j), build)


def bivector_op(module: KModule, B: Bivector) -> BlockOperator:
    op = linear_sum([(v, x_op(module, i, j)) for (i, j), v in sorted(B.terms.items())], repr(B))
    op.shift = (0, 0)
    return op


def _x_any(module: KModule, i: int, j: int) -> BlockOperator:
    if i == j:
        return zero_operator()
    return x_op(module, i, j)


def yx_bracket(module: KModule, l: int, k: int) -> BlockOperator:
    """[y_l, x_k] = delta_kl - sum c_alpha <alpha, y_l> <x_k, alpha^vee> s_alpha, as an element of CW."""
    rs = module.rs
    terms = [(Fraction(int(k == l)), identity_operator())]
    for a in range(module.nroots):
        coef = module.c.at(rs, a) * rs.positive_roots[a][l] * rs.coroots[a][k]
        if coef:
            terms.append((-coef, module.reflection_m(a)))
    op = linear_sum(terms, f"[y{l+1},x{k+1}]")
    op.shift = (0, 0)
    return op


def _blocks_m(module: KModule, top: int, all_l: bool = False):
    ls = range(module.r + 1) if all_l else [0]
    for m in range(top + 1):
        for l in ls:
            yield (m, l), module.block(m, l)


def _first_failure(a: BlockOperator, b: BlockOperator, module: KModule, top: int, all_l=False):
    for blk, keys in _blocks_m(module, top, all_l):
        bad = compare_on(a, b, keys)
        if bad is not None:
            key, diff = bad
            return {"block": list(blk), "source": format_key(key), "difference": vector_json(diff)}
    return None


def verify_sl2_commute(module: KModule, n: int) -> dict:
    if n < 4:
        raise TruncationTooSmall("N >= 4 required")
    checks = []
    r = module.r
    for i in range(r):
        for j in range(i + 1, r):
            X = x_op(module, i, j)
            for g in ("H", "E1+", "E1-"):
                G = module.generator(g)
                wit = _first_failure(X @ G, G @ X, module, n - 2)
                checks.append({"X": [i + 1, j + 1], "with": g, "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
    return _summary("sl2_commute", checks, f"m <= {n - 2}")


def _summary(name, checks, blocks):
    failed = [c for c in checks if c["status"] == "fail"]
    return {"name": name, "status": "fail" if failed else "pass", "blocks_checked": blocks, "verified": "to degree N", "checks": checks}


def verify_u_relation(module: KModule, n: int) -> dict:
    """Deformed bracket of X's and the quadratic relation, on M_c(tau) blocks m <= N-2."""
    rs = module.rs
    r = module.r
    drop = "drop-kappa" in module.mutations
    checks = []
    pairs = [(i, j) for i in range(r) for j in range(i + 1, r)]
    for (i, j) in pairs:
        for (k, l) in pairs:
            X, Y = Bivector.pair(i, j), Bivector.pair(k, l)
            lhs = commutator(x_op(module, i, j), x_op(module, k, l))
            terms = [(1, bivector_op(module, classical_bracket(X, Y)))]
            if not drop:
                for a in range(module.nroots):
                    kap = kappa(rs, a, X, Y)
                    ca = module.c.at(rs, a)
                    if ca and kap.terms:
                        terms.append((-ca, bivector_op(module, kap) @ module.reflection_m(a)))
            rhs = linear_sum(terms, "rhs")
            wit = _first_failure(lhs, rhs, module, n - 2)
            checks.append({"relation": "bracket", "X": [i + 1, j + 1], "Y": [k + 1, l + 1], "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
    idx = range(r)
    for i in idx:
        for j in idx:
            for k in idx:
                for l in idx:
                    if i == j or k == l:
                        continue
                    X = lambda a, b: _x_any(module, a, b)
                    lhs = X(i, j) @ X(k, l)
                    rhs = linear_sum(
                        [
                            (1, X(k, j) @ X(i, l)),
                            (1, X(i, k) @ X(j, l)),
                            (1, X(i, j) @ yx_bracket(module, l, k)),
                            (-1, X(k, j) @ yx_bracket(module, l, i)),
                            (-1, X(i, k) @ yx_bracket(module, l, j)),
                        ],
                        "quadratic",
                    )
                    wit = _first_failure(lhs, rhs, module, n - 2)
                    checks.append({"relation": "quadratic", "indices": [i + 1, j + 1, k + 1, l + 1], "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
    return _summary("u_relation", checks, f"m <= {n - 2}")


# Dirac element and the differential -------------------------------------

def dirac_ops(module: KModule):
    """(D, d) with d(a) = D a - (-1)^{|a|} a D."""
    D = module.dirac()

    def d(a: BlockOperator) -> BlockOperator:
        return super_bracket(D, a)

    return D, d


def sample_elements(module: KModule, seed: int = 0, size: int = 8) -> List[Tuple[str, BlockOperator]]:
    """Homogeneous elements of H_c (x) C used to test d^2 = [H+Z, .]."""
    r = module.r
    pool = []
    for i in range(r):
        pool.append((f"x{i+1}(x)1", module.x(i)))
        pool.append((f"y{i+1}(x)1", module.y(i)))
        pool.append((f"1(x)x{i+1}", module.wedge(i)))
        pool.append((f"1(x)y{i+1}", module.contract(i)))
        for j in range(r):
            pool.append((f"x{i+1}(x)y{j+1}", module.x(i) @ module.contract(j)))
            pool.append((f"y{i+1}(x)x{j+1}", module.y(i) @ module.wedge(j)))
    pool.append(("E1+", module.generator("E1+")))
    pool.append(("E3-", module.generator("E3-")))
    rng = random.Random(seed)
    if len(pool) > size:
        pool = rng.sample(pool, size)
    return pool


def verify_dirac(module: KModule, n: int, seed: int = 0) -> dict:
    D, d = dirac_ops(module)
    HZ = linear_sum([(1, module.generator("H")), (1, module.generator("Z"))], "H+Z")
    checks = []
    wit = _first_failure(D @ D, HZ, module, n - 2, all_l=True)
    checks.append({"identity": "D^2 = H+Z", "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
    for name, a in sample_elements(module, seed):
        lhs = d(d(a))
        rhs = super_bracket(HZ, a)
        wit = _first_failure(lhs, rhs, module, n - 4, all_l=True)
        checks.append({"identity": f"d^2({name}) = [H+Z,{name}]", "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
    for g in SYMBOLS:
        expected = {}
        for s in ("e2+", "e2-"):
            for k, v in abstract_bracket(s, g).items():
                expected[k] = expected.get(k, 0) + v
        expected = {k: v for k, v in expected.items() if v}
        wit = _first_failure(d(module.generator(REALIZED[g])), realize(module, expected), module, n - 4, all_l=True)
        checks.append({"identity": f"d({g}) from the abstract brackets", "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
    return _summary("dirac", checks, f"m <= {n - 2}")


# diagonal angular momenta -------------------------------------------------

def f_op(module: KModule, i: int, j: int, construction: str = "formula") -> BlockOperator:
    """F_ij on K, either from X_ij^Delta minus the reflection correction or as half of d(...)."""
    if i == j:
        raise EqualIndices(f"F_{i+1}{j+1} needs distinct indices")
    if construction == "formula":
        return module._cached(("F", i, j, tuple(sorted(module.mutations))), lambda: _f_formula(module, i, j))
    if construction == "dirac":
        return module._cached(("Fd", i, j), lambda: _f_dirac(module, i, j))
    raise ValueError(construction)


def _f_formula(module: KModule, i: int, j: int) -> BlockOperator:
    r = module.r
    rs = module.rs
    Xc = cl.bivector_element(i, j, r)
    terms = [(1, x_op(module, i, j)), (1, module.cliff(Xc, f"1(x)X{i+1}{j+1}"))]
    if "drop-f-half" not in module.mutations:
        for a in range(module.nroots):
            ca = module.c.at(rs, a)
            if not ca:
                continue
            t = cl.tau_alpha(rs, a)
            diff = Xc - t * Xc * t
            if not diff.terms:
                continue
            terms.append((-Fraction(1, 2) * ca, module.reflection_m(a) @ module.cliff(diff, "corr")))
    op = linear_sum(terms, f"F{i+1}{j+1}")
    op.shift = (0, 0)
    return op


def _f_dirac(module: KModule, i: int, j: int) -> BlockOperator:
    _, d = dirac_ops(module)
    x, y, w, k = module.x, module.y, module.wedge, module.contract
    a = linear_sum([(1, x(i) @ k(j)), (-1, x(j) @ k(i)), (1, y(j) @ w(i)), (-1, y(i) @ w(j))], "a")
    a.parity = 1
    op = d(a).scaled(Fraction(1, 2))
    op.name = f"F{i+1}{j+1}[d]"
    op.shift = (0, 0)
    op.parity = 0
    return op


def zw_projection(module: KModule, op: BlockOperator) -> BlockOperator:
    """sum_sigma e_sigma op e_sigma: the component commuting with rho(Z_W)."""
    table = module._table()
    terms = [(1, module.projector(lab) @ op @ module.projector(lab)) for lab in table.labels]
    out = linear_sum(terms, f"P({op.name})")
    out.shift = op.shift
    out.parity = op.parity
    return out


def verify_f_dual(module: KModule, n: int) -> dict:
    checks = []
    r = module.r
    for i in range(r):
        for j in range(i + 1, r):
            wit = _first_failure(f_op(module, i, j), f_op(module, i, j, "dirac"), module, n - 2, all_l=True)
            checks.append({"F": [i + 1, j + 1], "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
    return _summary("f_dual_construction", checks, f"m <= {n - 2}")


def verify_f_centralizes(module: KModule, n: int) -> dict:
    """Membership of V^{Z_W} in the centralizer of spo(2|2).

    For each F_ij, its Z_W-commutant part commutes with all eight generators, the
    F_ij themselves commute with H, E1+-, Z_0, and W commutes with the generators.
    Commutators of the bare F_ij with the odd generators and Z are recorded
    without affecting the status.
    """
    r = module.r
    top = n - 4
    gens = [(g, module.generator(g)) for g in ("H", "Z", "E1+", "E1-", "E2+", "E2-", "E3+", "E3-")]
    checks = []
    raw = []
    for i in range(r):
        for j in range(i + 1, r):
            F = f_op(module, i, j)
            PF = zw_projection(module, F)
            for g, G in gens:
                wit = _first_failure(PF @ G, G @ PF, module, top, all_l=True)
                checks.append({"element": f"P(F{i+1}{j+1})", "with": g, "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
            for g, G in gens[0:1] + gens[2:4] + [("Z0", module.z0())]:
                wit = _first_failure(F @ G, G @ F, module, top, all_l=True)
                checks.append({"element": f"F{i+1}{j+1}", "with": g, "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
            for g, G in gens:
                wit = _first_failure(F @ G, G @ F, module, top, all_l=True)
                raw.append({"element": f"F{i+1}{j+1}", "with": g, "commutes": wit is None})
    for w in range(module.group.order):
        Wd = module.diag(w)
        for g, G in gens:
            wit = _first_failure(Wd @ G, G @ Wd, module, top, all_l=True)
            if wit:
                checks.append({"element": f"w{w}", "with": g, "status": "fail", "witness": wit})
    checks.append({"element": "W", "with": "all generators", "status": "pass" if all(c["status"] == "pass" for c in checks if c["element"].startswith("w")) else "fail"})
    out = _summary("f_centralizes", checks, f"m <= {top}")
    out["bare_commutators"] = raw
    return out


def class_sum_commutation(module: KModule, n: int) -> dict:
    """Class sums commute with spo(2|2) and with V^{Z_W}, and [Omega_c, h] = 0 exactly when
    h commutes with every class sum (checked for h = F_ij and its Z_W-commutant part)."""
    table = module._table()
    top = n - 2
    gens = [(g, module.generator(g)) for g in ("H", "Z", "E1+", "E1-", "E2+", "E2-", "E3+", "E3-")]
    sums = [(k, module.class_sum(k)) for k in range(len(table.classes))]
    checks = []
    for k, C in sums:
        for g, G in gens:
            wit = _first_failure(C @ G, G @ C, module, top, all_l=True)
            checks.append({"class": k, "with": g, "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
    omega = module.omega()
    r = module.r
    equiv = []
    for i in range(r):
        for j in range(i + 1, r):
            F = f_op(module, i, j)
            PF = zw_projection(module, F)
            for k, C in sums:
                wit = _first_failure(C @ PF, PF @ C, module, top, all_l=True)
                checks.append({"class": k, "with": f"P(F{i+1}{j+1})", "status": "fail" if wit else "pass", **({"witness": wit} if wit else {})})
            for name, h in ((f"F{i+1}{j+1}", F), (f"P(F{i+1}{j+1})", PF)):
                om = _first_failure(omega @ h, h @ omega, module, top, all_l=True) is None
                cs = all(_first_failure(C @ h, h @ C, module, top, all_l=True) is None for _, C in sums)
                ok = om == cs
                equiv.append({"element": name, "commutes_with_omega": om, "commutes_with_class_sums": cs, "status": "pass" if ok else "fail"})
                checks.append({"class": "all", "with": name, "status": "pass" if ok else "fail", "equivalence": True})
    out = _summary("class_sum_commutation", checks, f"m <= {top}")
    out["omega_equivalence"] = equiv
    return out
