"""The space K = C[h] (x) V(tau) (x) S with its operators, gradings and forms.

Basis keys are triples ``(exponents, t, mask)``: a monomial of C[h], the
index of a basis vector of V(tau), and a wedge monomial of the spin module S.
A block (m, l) is spanned by keys of polynomial degree m and wedge degree l.
Operators act on sparse vectors and are never truncated; a truncation N only
decides which source blocks are examined.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Callable, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

from . import clifford as cl
from .coxeter import CharacterTable, CoxeterGroup, ParameterFunction, RepModel, RootSystem, resolve_label
from .errors import UnknownGenerator
from .linalg import Vector, add_into, positivity, span_basis
from .polyring import Poly, act_monomial, divided_difference, monomials

Key = Tuple[Tuple[int, ...], int, int]
Shift = Optional[Tuple[int, int]]

GENERATORS = ("H", "Z", "E1+", "E1-", "E2+", "E2-", "E3+", "E3-")
MUTATIONS = ("flip-e3minus", "drop-kappa", "drop-f-half")


class BlockOperator:
    """Linear operator on K given column by column, with cached columns."""

    def __init__(self, name: str, column: Callable[[Key], Vector], shift: Shift = None, parity: int = 0):
        self.name = name
        self._fn = column
        self.shift = shift
        self.parity = parity
        self._cols: Dict[Key, Vector] = {}

    def __repr__(self):
        return f"BlockOperator({self.name})"

    def column(self, key: Key) -> Vector:
        col = self._cols.get(key)
        if col is None:
            col = self._fn(key)
            self._cols.setdefault(key, col)
        return col

    def __call__(self, vec: Vector) -> Vector:
        out: Vector = {}
        for k, c in vec.items():
            add_into(out, self.column(k), c)
        return out

    def matrix(self, keys: Sequence[Key]) -> List[Vector]:
        return [self.column(k) for k in keys]

    @staticmethod
    def _shift_sum(a: Shift, b: Shift) -> Shift:
        if a is None or b is None:
            return None
        return (a[0] + b[0], a[1] + b[1])

    def __matmul__(self, other: "BlockOperator") -> "BlockOperator":
        return BlockOperator(
            f"{self.name}*{other.name}",
            lambda k: self(other.column(k)),
            self._shift_sum(self.shift, other.shift),
            (self.parity + other.parity) % 2,
        )

    def __add__(self, other: "BlockOperator") -> "BlockOperator":
        shift = self.shift if self.shift == other.shift else None

        def col(k):
            out = dict(self.column(k))
            add_into(out, other.column(k))
            return out

        return BlockOperator(f"({self.name}+{other.name})", col, shift, self.parity)

    def __neg__(self) -> "BlockOperator":
        return self.scaled(-1)

    def __sub__(self, other: "BlockOperator") -> "BlockOperator":
        return self + other.scaled(-1)

    def scaled(self, s) -> "BlockOperator":
        s = Fraction(s)
        return BlockOperator(f"{s}*{self.name}", lambda k: {t: s * v for t, v in self.column(k).items()} if s else {}, self.shift, self.parity)


def zero_operator(shift: Shift = (0, 0), parity: int = 0) -> BlockOperator:
    return BlockOperator("0", lambda k: {}, shift, parity)


def identity_operator() -> BlockOperator:
    return BlockOperator("1", lambda k: {k: Fraction(1)}, (0, 0), 0)


def linear_sum(terms: Iterable[Tuple[object, BlockOperator]], name: str = "sum") -> BlockOperator:
    terms = [(Fraction(c), op) for c, op in terms if c]
    shifts = {op.shift for _, op in terms}
    parities = {op.parity for _, op in terms}
    shift = shifts.pop() if len(shifts) == 1 else (None if shifts else (0, 0))
    parity = parities.pop() if len(parities) == 1 else 0

    def col(k):
        out: Vector = {}
        for c, op in terms:
            add_into(out, op.column(k), c)
        return out

    return BlockOperator(name, col, shift, parity)


def super_bracket(a: BlockOperator, b: BlockOperator) -> BlockOperator:
    """[a, b] = ab - (-1)^{|a||b|} ba."""
    sign = -1 if a.parity and b.parity else 1
    return linear_sum([(1, a @ b), (-sign, b @ a)], f"[{a.name},{b.name}]")


def commutator(a: BlockOperator, b: BlockOperator) -> BlockOperator:
    return linear_sum([(1, a @ b), (-1, b @ a)], f"[{a.name},{b.name}]0")


def compare_on(a: BlockOperator, b: BlockOperator, keys: Iterable[Key]):
    """First basis key on which a and b differ, with the difference, or None."""
    for k in keys:
        ca, cb = a.column(k), b.column(k)
        if ca != cb:
            diff = dict(ca)
            add_into(diff, cb, -1)
            return k, diff
    return None


def format_key(key: Key) -> str:
    e, t, mask = key
    mono = "*".join(f"x{i+1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k) or "1"
    wedge = "^".join(f"x{i+1}" for i in cl._bits(mask)) or "1"
    return f"{mono} (x) e{t} (x) {wedge}"


def vector_json(vec: Vector) -> List[dict]:
    return [
        {"mono": list(k[0]), "tau": k[1], "wedge": cl._bits(k[2]), "coeff": str(v), "text": format_key(k)}
        for k, v in sorted(vec.items())
    ]


class KModule:
    """K_c(tau) = M_c(tau) (x) S for fixed (W, c, tau), with every operator built lazily."""

    def __init__(
        self,
        rs: RootSystem,
        c: ParameterFunction,
        tau: RepModel,
        group: CoxeterGroup,
        table: Optional[CharacterTable] = None,
        mutations: Iterable[str] = (),
    ):
        self.rs = rs
        self.r = rs.rank
        self.c = c
        self.tau = tau
        self.group = group
        self.table = table
        self.mutations = frozenset(mutations)
        self.nroots = len(rs.positive_roots)
        self.s_elem = [group.reflection(a) for a in range(self.nroots)]
        self.s_mat = [group.elements[e].matrix for e in self.s_elem]
        self.rho_s = [tau.of(e) for e in self.s_elem]
        self._delta: Dict[Tuple[int, Tuple[int, ...]], Poly] = {}
        self._ops: Dict[Hashable, BlockOperator] = {}
        self._gram: Dict[int, Tuple[List[Key], Dict[Key, Dict[Key, Fraction]]]] = {}
        self._iso: Dict[Tuple[int, int], Dict[str, List[Vector]]] = {}

    # basis ------------------------------------------------------------
    def masks(self, l: int) -> List[int]:
        if l < 0 or l > self.r:
            return []
        return sorted(sum(1 << i for i in comb) for comb in combinations(range(self.r), l))

    def block(self, m: int, l: int) -> List[Key]:
        if m < 0:
            return []
        return [(e, t, mask) for e in monomials(m, self.r) for t in range(self.tau.dim) for mask in self.masks(l)]

    @staticmethod
    def bidegree(key: Key) -> Tuple[int, int]:
        return sum(key[0]), bin(key[2]).count("1")

    def _cached(self, name, build) -> BlockOperator:
        op = self._ops.get(name)
        if op is None:
            op = build()
            self._ops[name] = op
        return op

    # primitive operators ---------------------------------------------
    def _tau_column(self, mat, t: int) -> Dict[int, Fraction]:
        return {s: mat[s][t] for s in range(self.tau.dim) if mat[s][t]}

    def delta(self, a: int, e: Tuple[int, ...]) -> Poly:
        key = (a, e)
        p = self._delta.get(key)
        if p is None:
            p = divided_difference(self.rs.positive_roots[a], Poly({e: Fraction(1)}, self.r))
            self._delta[key] = p
        return p

    def x(self, i: int) -> BlockOperator:
        def col(k):
            e, t, mask = k
            f = list(e)
            f[i] += 1
            return {(tuple(f), t, mask): Fraction(1)}

        return self._cached(("x", i), lambda: BlockOperator(f"x{i+1}", col, (1, 0), 0))

    def y(self, i: int) -> BlockOperator:
        """Dunkl action of y_i on the M_c(tau) factor."""
        rs, c = self.rs, self.c

        def col(k):
            e, t, mask = k
            out: Vector = {}
            if e[i]:
                f = list(e)
                f[i] -= 1
                out[(tuple(f), t, mask)] = Fraction(e[i])
            for a in range(self.nroots):
                coef = c.at(rs, a) * rs.positive_roots[a][i]
                if not coef:
                    continue
                d = self.delta(a, e)
                if d.is_zero():
                    continue
                tcol = self._tau_column(self.rho_s[a], t)
                for f, pv in d.terms.items():
                    for s, tv in tcol.items():
                        kk = (f, s, mask)
                        v = out.get(kk, 0) - coef * pv * tv
                        if v:
                            out[kk] = v
                        else:
                            out.pop(kk, None)
            return out

        return self._cached(("y", i), lambda: BlockOperator(f"y{i+1}", col, (-1, 0), 0))

    def wedge(self, i: int) -> BlockOperator:
        def col(k):
            e, t, mask = k
            res = cl.wedge_sign(mask, i)
            return {} if res is None else {(e, t, res[1]): Fraction(res[0])}

        return self._cached(("wedge", i), lambda: BlockOperator(f"(1(x)x{i+1})", col, (0, 1), 1))

    def contract(self, i: int) -> BlockOperator:
        def col(k):
            e, t, mask = k
            res = cl.contract_sign(mask, i)
            return {} if res is None else {(e, t, res[1]): Fraction(res[0])}

        return self._cached(("contract", i), lambda: BlockOperator(f"(1(x)y{i+1})", col, (0, -1), 1))

    def group_m(self, g: int) -> BlockOperator:
        """w acting on the M_c(tau) factor only."""
        mat = self.group.elements[g].matrix
        rho = self.tau.of(g)

        def col(k):
            e, t, mask = k
            p = act_monomial(mat, e)
            tcol = self._tau_column(rho, t)
            return {(f, s, mask): pv * tv for f, pv in p.terms.items() for s, tv in tcol.items()}

        return self._cached(("gm", g), lambda: BlockOperator(f"w{g}(x)1", col, (0, 0), 0))

    def group_s(self, g: int) -> BlockOperator:
        mat = self.group.elements[g].matrix

        def col(k):
            e, t, mask = k
            return {(e, t, m2): v for m2, v in cl.exterior_action(mat, mask, self.r).items()}

        return self._cached(("gs", g), lambda: BlockOperator(f"1(x)w{g}", col, (0, 0), 0))

    def diag(self, g: int) -> BlockOperator:
        """Diagonal action of w on C[h] (x) V(tau) (x) S."""
        return self._cached(("diag", g), lambda: self.group_m(g) @ self.group_s(g))

    def cliff(self, elem: cl.CliffordElement, name: str = "c") -> BlockOperator:
        """1 (x) elem acting through the spin module."""

        def col(k):
            e, t, mask = k
            return {(e, t, m2): v for m2, v in cl.spin_action(elem, {mask: Fraction(1)}).items()}

        try:
            parity = elem.parity()
        except ValueError:
            parity = 0
        grades = cl.z0_grade(elem)
        shift = (0, next(iter(grades))) if len(grades) == 1 else None
        return BlockOperator(name, col, shift, parity)

    def tau_s(self, a: int) -> BlockOperator:
        return self._cached(("taus", a), lambda: self.cliff(cl.tau_alpha(self.rs, a), f"1(x)tau{a}"))

    def reflection_m(self, a: int) -> BlockOperator:
        return self.group_m(self.s_elem[a])

    def omega(self) -> BlockOperator:
        """Omega_c = sum c_alpha s_alpha (x) tau_alpha."""
        return self._cached(
            "Omega",
            lambda: linear_sum(
                [(self.c.at(self.rs, a), self.reflection_m(a) @ self.tau_s(a)) for a in range(self.nroots)],
                "Omega",
            ),
        )

    def z0(self) -> BlockOperator:
        return self._cached("Z0", lambda: self.cliff(cl.z0(self.r), "Z0"))

    # realized spo(2|2) ------------------------------------------------
    def generator(self, name: str) -> BlockOperator:
        if name == "Z0":
            return self.z0()
        if name == "Omega":
            return self.omega()
        if name not in GENERATORS:
            raise UnknownGenerator(name)
        return self._cached(("gen", name), lambda: self._build_generator(name))

    def _build_generator(self, name: str) -> BlockOperator:
        r = range(self.r)
        half = Fraction(1, 2)
        x, y, w, k = self.x, self.y, self.wedge, self.contract
        if name == "H":
            op = linear_sum([(half, x(i) @ y(i)) for i in r] + [(half, y(i) @ x(i)) for i in r], "H")
            op.shift = (0, 0)
        elif name == "Z":
            op = linear_sum([(1, self.z0()), (1, self.omega())], "Z")
            op.shift = (0, 0)
        elif name == "E1+":
            op = linear_sum([(-half, x(i) @ x(i)) for i in r], name)
        elif name == "E1-":
            op = linear_sum([(half, y(i) @ y(i)) for i in r], name)
        elif name == "E2+":
            op = linear_sum([(1, y(i) @ w(i)) for i in r], name)
        elif name == "E2-":
            op = linear_sum([(1, x(i) @ k(i)) for i in r], name)
        elif name == "E3+":
            op = linear_sum([(-1, x(i) @ w(i)) for i in r], name)
        else:
            sign = 1 if "flip-e3minus" in self.mutations else -1
            op = linear_sum([(sign, y(i) @ k(i)) for i in r], name)
        op.name = name
        return op

    def dirac(self) -> BlockOperator:
        return self._cached("D", lambda: linear_sum([(1, self.generator("E2+")), (1, self.generator("E2-"))], "D"))

    # isotypic decomposition --------------------------------------------
    def _table(self) -> CharacterTable:
        if self.table is None:
            from .coxeter import character_table

            self.table = character_table(self.rs, self.group)
        return self.table

    def projector(self, label: str) -> BlockOperator:
        table = self._table()
        label = resolve_label(table, label)

        def build():
            n = self.group.order
            deg = table.degree(label)
            terms = [(Fraction(deg, n) * table.chi(label, g), self.diag(g)) for g in range(n)]
            return linear_sum(terms, f"e[{label}]")

        op = self._cached(("proj", label), build)
        op.shift = (0, 0)
        return op

    def class_sum(self, k: int) -> BlockOperator:
        cls = self._table().classes[k]
        op = self._cached(("class", k), lambda: linear_sum([(1, self.diag(g)) for g in cls], f"C{k}"))
        op.shift = (0, 0)
        return op

    def isotypic_split(self, m: int, l: int) -> Dict[str, List[Vector]]:
        """Canonical bases of the sigma-isotypic parts of block (m, l), for every sigma."""
        key = (m, l)
        got = self._iso.get(key)
        if got is None:
            keys = self.block(m, l)
            got = {}
            for lab in self._table().labels:
                p = self.projector(lab)
                got[lab] = span_basis([p.column(k) for k in keys])
            self._iso[key] = got
        return got

    def isotypic_dims(self, m: int, l: int) -> Dict[str, int]:
        return {lab: len(b) for lab, b in self.isotypic_split(m, l).items()}

    # forms -------------------------------------------------------------
    def gram_beta(self, m: int):
        """Contravariant form on degree-m part of M_c(tau), from beta(x_j p, q) = beta(p, y_j q).

        Returns ``(keys, G)`` with keys of wedge mask 0 and ``G[a][b]``.
        """
        got = self._gram.get(m)
        if got is not None:
            return got
        keys = self.block(m, 0)
        G: Dict[Key, Dict[Key, Fraction]] = {}
        if m == 0:
            for a in keys:
                G[a] = {b: self.tau.gram[a[1]][b[1]] for b in keys}
        else:
            _, prev = self.gram_beta(m - 1)
            for a in keys:
                e = a[0]
                j = next(i for i, v in enumerate(e) if v)
                f = list(e)
                f[j] -= 1
                a1 = (tuple(f), a[1], 0)
                row = prev[a1]
                yj = self.y(j)
                G[a] = {}
                for b in keys:
                    col = yj.column(b)
                    G[a][b] = sum((v * row[kk] for kk, v in col.items()), Fraction(0))
        self._gram[m] = (keys, G)
        return keys, G

    def gram_matrix(self, m: int) -> List[List[Fraction]]:
        keys, G = self.gram_beta(m)
        return [[G[a][b] for b in keys] for a in keys]

    def inner(self, u: Vector, v: Vector) -> Fraction:
        """<u|v> = beta (x) (orthonormal form on S)."""
        total = Fraction(0)
        for ka, ca in u.items():
            m = sum(ka[0])
            _, G = self.gram_beta(m)
            row = G[(ka[0], ka[1], 0)]
            for kb, cb in v.items():
                if kb[2] != ka[2] or sum(kb[0]) != m:
                    continue
                total += ca * cb * row[(kb[0], kb[1], 0)]
        return total

    def gram_positivity(self, m: int):
        return positivity(self.gram_matrix(m))
