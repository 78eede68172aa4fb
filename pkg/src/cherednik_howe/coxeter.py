"""Root systems, finite reflection groups, characters and representation models."""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import symmetric as sym
from .errors import (
    GroupSizeCapExceeded,
    InvalidRepresentation,
    NonRationalRoots,
    NotClosedUnderReflection,
    NotFoundBelowBound,
    OrthogonalityFailure,
    RankMismatch,
    UnknownLabel,
    UnsupportedGroup,
    UnsupportedGroupNoTableFile,
)
from .linalg import frac, identity, kron, mat_mul, positivity, transpose

Vec = Tuple[Fraction, ...]
Matrix = Tuple[Tuple[Fraction, ...], ...]

GROUP_CAP = 1152


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def mat_vec(m: Matrix, v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def _lex_positive(v: Vec) -> bool:
    for x in v:
        if x:
            return x > 0
    return False


def reflection_matrix(alpha: Vec) -> Matrix:
    """Matrix of v -> v - <v, alpha^vee> alpha in ambient coordinates."""
    n2 = dot(alpha, alpha)
    r = len(alpha)
    return tuple(
        tuple(Fraction(int(i == j)) - 2 * alpha[i] * alpha[j] / n2 for j in range(r)) for i in range(r)
    )


@dataclass(frozen=True)
class Component:
    family: str
    n: int
    offset: int
    dim: int
    roots: Tuple[int, ...]


@dataclass(frozen=True)
class RootSystem:
    """Positive roots of a rational reflection group acting on an ambient space."""

    name: str
    rank: int
    positive_roots: Tuple[Vec, ...]
    orbit_id: Tuple[int, ...]
    simple: Tuple[int, ...]
    components: Tuple[Component, ...]

    @property
    def coroots(self) -> Tuple[Vec, ...]:
        return tuple(tuple(2 * a / dot(alpha, alpha) for a in alpha) for alpha in self.positive_roots)

    @property
    def n_orbits(self) -> int:
        return max(self.orbit_id) + 1 if self.orbit_id else 0

    @property
    def span_rank(self) -> int:
        return len(self.simple)

    def root_index(self, v: Sequence) -> Tuple[int, int]:
        """(index, sign) with v = sign * positive_roots[index]."""
        v = tuple(Fraction(x) for x in v)
        for i, a in enumerate(self.positive_roots):
            if a == v:
                return i, 1
            if all(x == -y for x, y in zip(a, v)):
                return i, -1
        raise KeyError(v)

    def reflect(self, a: int, v: Sequence) -> Vec:
        alpha = self.positive_roots[a]
        k = 2 * dot(v, alpha) / dot(alpha, alpha)
        return tuple(x - k * y for x, y in zip(v, alpha))


def _family_roots(family: str, n: int) -> Tuple[int, List[Vec]]:
    def e(i, dim):
        return [Fraction(0)] * dim if i is None else [Fraction(int(k == i)) for k in range(dim)]

    roots: List[Vec] = []
    if family == "A1":
        return 1, [(Fraction(1),)]
    if family == "Sym":
        if n < 2:
            raise UnsupportedGroup("Sym:n needs n >= 2")
        for i in range(n):
            for j in range(i + 1, n):
                v = e(i, n)
                v[j] = Fraction(-1)
                roots.append(tuple(v))
        return n, roots
    if family in ("B", "D"):
        if n < 2:
            raise UnsupportedGroup(f"{family}:n needs n >= 2")
        if family == "B":
            roots.extend(tuple(e(i, n)) for i in range(n))
        for i in range(n):
            for j in range(i + 1, n):
                p = e(i, n)
                p[j] = Fraction(1)
                m = e(i, n)
                m[j] = Fraction(-1)
                roots.append(tuple(p))
                roots.append(tuple(m))
        return n, roots
    if family == "G2":
        ints = [(1, -1, 0), (1, 0, -1), (0, 1, -1), (2, -1, -1), (1, -2, 1), (1, 1, -2)]
        return 3, [tuple(Fraction(x) for x in v) for v in ints]
    raise UnsupportedGroup(family)


def _orbits_and_simple(rank: int, roots: List[Vec]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
    lookup: Dict[Vec, Tuple[int, int]] = {}
    for i, a in enumerate(roots):
        lookup[a] = (i, 1)
        lookup[tuple(-x for x in a)] = (i, -1)
    parent = list(range(len(roots)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    simple = []
    for a, alpha in enumerate(roots):
        n2 = dot(alpha, alpha)
        stays_positive = True
        for b, beta in enumerate(roots):
            k = 2 * dot(beta, alpha) / n2
            img = tuple(x - k * y for x, y in zip(beta, alpha))
            if img not in lookup:
                raise NotClosedUnderReflection(f"s_{a} maps root {b} outside the root set")
            c, sign = lookup[img]
            ra, rc = find(b), find(c)
            if ra != rc:
                parent[max(ra, rc)] = min(ra, rc)
            if b != a and sign < 0:
                stays_positive = False
        if stays_positive:
            simple.append(a)
    labels: Dict[int, int] = {}
    orbit = []
    for i in range(len(roots)):
        root = find(i)
        if root not in labels:
            labels[root] = len(labels)
        orbit.append(labels[root])
    return tuple(orbit), tuple(simple)


def _check_rational(values) -> List[Fraction]:
    out = []
    for x in values:
        if isinstance(x, float):
            raise NonRationalRoots(f"floating point coordinate {x!r}; use 'p/q' strings")
        try:
            out.append(frac(x))
        except (ValueError, ZeroDivisionError) as exc:
            raise NonRationalRoots(f"not a rational: {x!r}") from exc
    return out


def root_system_from_vectors(name: str, vectors, rank: Optional[int] = None) -> RootSystem:
    """Build a root system from explicit positive roots.

    Every root is replaced by its lexicographically positive multiple, which
    fixes the positive system used throughout.
    """
    roots = [tuple(_check_rational(v)) for v in vectors]
    if not roots:
        raise RankMismatch("no roots given")
    dims = {len(v) for v in roots}
    if len(dims) != 1 or (rank is not None and dims != {rank}):
        raise RankMismatch(f"root lengths {sorted(dims)} do not match rank {rank}")
    r = dims.pop()
    fixed: List[Vec] = []
    for v in roots:
        if not any(v):
            raise RankMismatch("zero vector is not a root")
        if not _lex_positive(v):
            v = tuple(-x for x in v)
        if v in fixed:
            continue
        fixed.append(v)
    orbit, simple = _orbits_and_simple(r, fixed)
    comp = Component("file", 0, 0, r, tuple(range(len(fixed))))
    return RootSystem(name, r, tuple(fixed), orbit, simple, (comp,))


_COMPONENT = re.compile(r"^(A1)(?:\^(\d+))?$|^(Sym|B|D):(\d+)$|^(G2)$")


def _split_product(spec: str) -> List[str]:
    parts = re.split(r"\s*(?:×|\*|(?<=[0-9A-Za-z])x(?=[A-Z]))\s*", spec.strip())
    return [p for p in parts if p]


def build_root_system(spec: str) -> RootSystem:
    """Parse a group spec such as ``A1^2``, ``Sym:3``, ``B:2xA1`` or ``file:roots.json``."""
    spec = spec.strip()
    if spec.startswith("file:"):
        path = spec[5:]
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh, parse_float=float)
        return root_system_from_vectors(data.get("name", spec), data["positive_roots"], data.get("rank"))
    pieces: List[Tuple[str, int]] = []
    for token in _split_product(spec):
        m = _COMPONENT.match(token)
        if not m:
            raise UnsupportedGroup(f"cannot parse group component {token!r}")
        if m.group(1):
            pieces.extend([("A1", 1)] * int(m.group(2) or 1))
        elif m.group(3):
            pieces.append((m.group(3), int(m.group(4))))
        else:
            pieces.append(("G2", 2))
    if not pieces:
        raise UnsupportedGroup("empty group spec")
    total = 0
    fam_roots = []
    for fam, n in pieces:
        dim, roots = _family_roots(fam, n)
        fam_roots.append((fam, n, dim, roots))
        total += dim
    all_roots: List[Vec] = []
    comps = []
    offset = 0
    for fam, n, dim, roots in fam_roots:
        start = len(all_roots)
        for v in roots:
            all_roots.append(tuple([Fraction(0)] * offset + list(v) + [Fraction(0)] * (total - offset - dim)))
        comps.append(Component(fam, n, offset, dim, tuple(range(start, len(all_roots)))))
        offset += dim
    orbit, simple = _orbits_and_simple(total, all_roots)
    return RootSystem(spec, total, tuple(all_roots), orbit, simple, tuple(comps))


def component_root_system(rs: RootSystem, k: int) -> RootSystem:
    comp = rs.components[k]
    if len(rs.components) == 1:
        return rs
    sub = [rs.positive_roots[i][comp.offset : comp.offset + comp.dim] for i in comp.roots]
    orbit, simple = _orbits_and_simple(comp.dim, sub)
    label = comp.family if comp.family in ("A1", "G2") else f"{comp.family}:{comp.n}"
    return RootSystem(label, comp.dim, tuple(sub), orbit, simple, (Component(comp.family, comp.n, 0, comp.dim, tuple(range(len(sub)))),))


@dataclass(frozen=True)
class ParameterFunction:
    """A W-invariant function on roots, stored as one value per orbit."""

    values: Tuple[Fraction, ...]

    @classmethod
    def make(cls, rs: RootSystem, values) -> "ParameterFunction":
        if isinstance(values, (int, str, Fraction)):
            values = [values]
        vals = [frac(v) for v in values]
        if len(vals) == 1:
            vals = vals * rs.n_orbits
        if len(vals) != rs.n_orbits:
            raise ValueError(f"expected {rs.n_orbits} parameter values, got {len(vals)}")
        return cls(tuple(vals))

    def at(self, rs: RootSystem, a: int) -> Fraction:
        return self.values[rs.orbit_id[a]]

    def is_zero(self) -> bool:
        return not any(self.values)

    def label(self) -> List[str]:
        return [str(v) for v in self.values]


@dataclass(frozen=True)
class GroupElement:
    matrix: Matrix
    word: Tuple[int, ...]


class CoxeterGroup:
    """Elements of W enumerated by breadth-first search over simple reflections."""

    def __init__(self, rs: RootSystem, cap: int = GROUP_CAP):
        self.rs = rs
        r = rs.rank
        gens = [(a, reflection_matrix(rs.positive_roots[a])) for a in rs.simple]
        ident = identity(r)
        self.elements: List[GroupElement] = [GroupElement(ident, ())]
        self.index: Dict[Matrix, int] = {ident: 0}
        head = 0
        while head < len(self.elements):
            g = self.elements[head]
            head += 1
            for a, s in gens:
                m = mat_mul(g.matrix, s)
                if m not in self.index:
                    if len(self.elements) >= cap:
                        raise GroupSizeCapExceeded(f"|W| exceeds the cap {cap}")
                    self.index[m] = len(self.elements)
                    self.elements.append(GroupElement(m, g.word + (a,)))
        self._mul: Dict[Tuple[int, int], int] = {}
        self._reflections = [self.index[reflection_matrix(alpha)] for alpha in rs.positive_roots]
        self._classes: Optional[List[Tuple[int, ...]]] = None

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        key = (i, j)
        v = self._mul.get(key)
        if v is None:
            v = self.index[mat_mul(self.elements[i].matrix, self.elements[j].matrix)]
            self._mul[key] = v
        return v

    def inv(self, i: int) -> int:
        return self.index[transpose(self.elements[i].matrix)]

    def reflection(self, a: int) -> int:
        return self._reflections[a]

    def act(self, i: int, v: Sequence) -> Vec:
        return mat_vec(self.elements[i].matrix, v)

    def classes(self) -> List[Tuple[int, ...]]:
        if self._classes is None:
            seen = set()
            out = []
            for i in range(len(self)):
                if i in seen:
                    continue
                cl = sorted({self.mul(self.mul(g, i), self.inv(g)) for g in range(len(self))})
                seen.update(cl)
                out.append(tuple(cl))
            self._classes = out
        return self._classes

    def trace(self, i: int) -> Fraction:
        m = self.elements[i].matrix
        return sum((m[k][k] for k in range(len(m))), Fraction(0))

    def det_sign(self, i: int) -> int:
        return (-1) ** (len(self.elements[i].word) % 2)

    def power(self, i: int, k: int) -> int:
        out = 0
        for _ in range(k):
            out = self.mul(out, i)
        return out


@dataclass
class CharacterTable:
    """Irreducible characters as class functions; ``values[label][k]`` is the value on class k."""

    group: CoxeterGroup
    labels: Tuple[str, ...]
    values: Dict[str, Tuple[Fraction, ...]]
    aliases: Dict[str, str] = field(default_factory=dict)
    linear_on_simple: Dict[str, Dict[int, int]] = field(default_factory=dict)

    def __post_init__(self):
        self._class_of = {}
        for k, cl in enumerate(self.group.classes()):
            for e in cl:
                self._class_of[e] = k

    @property
    def classes(self) -> List[Tuple[int, ...]]:
        return self.group.classes()

    def resolve(self, label: str) -> str:
        if label in self.values:
            return label
        if label in self.aliases:
            return self.aliases[label]
        raise UnknownLabel(f"no irreducible labelled {label!r}; known: {', '.join(self.labels)}")

    def chi(self, label: str, element: int) -> Fraction:
        return self.values[self.resolve(label)][self._class_of[element]]

    def degree(self, label: str) -> int:
        return int(self.chi(label, 0))

    def inner(self, f: Sequence[Fraction], g: Sequence[Fraction]) -> Fraction:
        total = sum((len(cl) * a * b for cl, a, b in zip(self.classes, f, g)), Fraction(0))
        return total / self.group.order

    def check_orthogonality(self) -> None:
        for i, a in enumerate(self.labels):
            for b in self.labels[i:]:
                v = self.inner(self.values[a], self.values[b])
                if v != (1 if a == b else 0):
                    raise OrthogonalityFailure(f"<{a},{b}> = {v}")
        if len(self.labels) != len(self.classes):
            raise OrthogonalityFailure("number of irreducibles differs from number of classes")


def _dihedral_values(rs: RootSystem, group: CoxeterGroup):
    """Character values on each element for the dihedral families B:2 and G2."""
    lengths = sorted({dot(a, a) for a in rs.positive_roots})
    short = {a for a, alpha in enumerate(rs.positive_roots) if dot(alpha, alpha) == lengths[0]}
    extra = rs.rank - rs.span_rank
    vals: Dict[str, List[Fraction]] = {k: [] for k in ("triv", "sgn", "sgn_short", "sgn_long", "refl")}
    family = rs.components[0].family
    if family == "G2":
        vals["refl2"] = []
    for i, g in enumerate(group.elements):
        ns = sum(1 for a in g.word if a in short)
        nl = len(g.word) - ns
        vals["triv"].append(Fraction(1))
        vals["sgn"].append(Fraction((-1) ** (ns + nl)))
        vals["sgn_short"].append(Fraction((-1) ** ns))
        vals["sgn_long"].append(Fraction((-1) ** nl))
        rotation = (ns + nl) % 2 == 0
        t = group.trace(i) - extra
        vals["refl"].append(t if rotation else Fraction(0))
        if family == "G2":
            vals["refl2"].append(t * t - 2 if rotation else Fraction(0))
    return vals, {}


def _symmetric_values(rs: RootSystem, group: CoxeterGroup):
    n = rs.rank
    lams = sym.partitions(n)
    vals: Dict[str, List[Fraction]] = {sym.partition_label(l): [] for l in lams}
    for g in group.elements:
        m = g.matrix
        perm = tuple(next(r for r in range(n) if m[r][c]) for c in range(n))
        mu = sym.cycle_type(perm)
        for l in lams:
            vals[sym.partition_label(l)].append(Fraction(sym.mn_character(l, mu)))
    aliases = {
        "triv": sym.partition_label((n,)),
        "sgn": sym.partition_label((1,) * n),
        "refl": sym.partition_label((n - 1, 1)) if n > 2 else sym.partition_label((1, 1)),
    }
    return vals, aliases


def _a1_values(rs: RootSystem, group: CoxeterGroup):
    vals = {"triv": [], "sgn": []}
    for g in group.elements:
        vals["triv"].append(Fraction(1))
        vals["sgn"].append(Fraction((-1) ** len(g.word)))
    return vals, {"refl": "sgn"}


def _component_values(rs: RootSystem, group: CoxeterGroup):
    comp = rs.components[0]
    if comp.family == "A1":
        return _a1_values(rs, group)
    if comp.family == "Sym":
        return _symmetric_values(rs, group)
    if comp.family == "G2" or (comp.family == "B" and comp.n == 2):
        return _dihedral_values(rs, group)
    raise UnsupportedGroupNoTableFile(
        f"no built-in character table for {rs.name}; supply a character table file"
    )


def _table_from_element_values(group, labels, per_element, aliases) -> CharacterTable:
    values = {}
    for lab in labels:
        row = per_element[lab]
        values[lab] = tuple(row[cl[0]] for cl in group.classes())
    # every built-in family lists the trivial character first
    table = CharacterTable(group, tuple(labels), values, aliases)
    table.check_orthogonality()
    return table


def character_table(rs: RootSystem, group: Optional[CoxeterGroup] = None, table_file: Optional[str] = None) -> CharacterTable:
    """Character table of W from built-in families, products of them, or a file."""
    group = group or CoxeterGroup(rs)
    if table_file is not None:
        return load_character_table(rs, group, table_file)
    if len(rs.components) == 1:
        vals, aliases = _component_values(rs, group)
        return _table_from_element_values(group, list(vals), vals, aliases)
    comp_data = []
    for k, comp in enumerate(rs.components):
        sub = component_root_system(rs, k)
        sg = CoxeterGroup(sub)
        vals, aliases = _component_values(sub, sg)
        comp_data.append((comp, sg, vals, aliases))
    labels: List[Tuple[str, ...]] = [()]
    for _, _, vals, _ in comp_data:
        labels = [l + (lab,) for l in labels for lab in vals]
    per_element: Dict[str, List[Fraction]] = {",".join(l): [] for l in labels}
    for g in group.elements:
        locs = []
        for comp, sg, _, _ in comp_data:
            block = tuple(row[comp.offset : comp.offset + comp.dim] for row in g.matrix[comp.offset : comp.offset + comp.dim])
            locs.append(sg.index[block])
        for l in labels:
            v = Fraction(1)
            for (comp, sg, vals, _), lab, e in zip(comp_data, l, locs):
                v *= vals[lab][e]
            per_element[",".join(l)].append(v)

    def canon(name):
        parts = []
        for _, _, vals, aliases in comp_data:
            parts.append(aliases.get(name, name))
        return ",".join(parts)

    aliases = {}
    for name in ("triv", "sgn"):
        aliases[name] = canon(name)
    table = _table_from_element_values(group, [",".join(l) for l in labels], per_element, aliases)
    # component aliases such as "triv,refl" are resolved through these
    table._comp_aliases = [a for _, _, _, a in comp_data]
    return table


def _resolve_product_label(table: CharacterTable, label: str) -> str:
    try:
        return table.resolve(label)
    except UnknownLabel:
        comp_aliases = getattr(table, "_comp_aliases", None)
        parts = label.split(",")
        if comp_aliases and len(parts) == len(comp_aliases):
            cand = ",".join(a.get(p, p) for a, p in zip(comp_aliases, parts))
            if cand in table.values:
                return cand
        raise


def resolve_label(table: CharacterTable, label: str) -> str:
    return _resolve_product_label(table, label)


def load_character_table(rs: RootSystem, group: CoxeterGroup, path: str) -> CharacterTable:
    """Read ``{"classes": [[word], ...], "characters": {label: [values]}}``."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    classes = group.classes()
    cls_of = {e: k for k, cl in enumerate(classes) for e in cl}
    order = []
    for word in data["classes"]:
        e = 0
        for a in word:
            e = group.mul(e, group.reflection(int(a)))
        order.append(cls_of[e])
    if sorted(order) != list(range(len(classes))):
        raise OrthogonalityFailure("class list in table file does not match the computed classes")
    values = {}
    for lab, row in data["characters"].items():
        vals = [Fraction(0)] * len(classes)
        for k, v in zip(order, row):
            vals[k] = frac(v)
        values[lab] = tuple(vals)
    table = CharacterTable(group, tuple(data["characters"]), values, dict(data.get("aliases", {})))
    table.check_orthogonality()
    return table


@dataclass
class RepModel:
    """Explicit matrices of an irreducible W-module together with an invariant Gram matrix."""

    label: str
    dim: int
    generators: Dict[int, Matrix]
    gram: Matrix
    group: CoxeterGroup
    _cache: Dict[int, Matrix] = field(default_factory=dict, repr=False)

    def of(self, element: int) -> Matrix:
        m = self._cache.get(element)
        if m is None:
            m = identity(self.dim)
            for a in self.group.elements[element].word:
                m = mat_mul(m, self.generators[a])
            self._cache[element] = m
        return m

    def trace(self, element: int) -> Fraction:
        m = self.of(element)
        return sum((m[i][i] for i in range(self.dim)), Fraction(0))

    def relations_hold(self) -> bool:
        """Coxeter relations (s_a s_b)^m_ab = 1 on simple reflections."""
        g = self.group
        ident = identity(self.dim)
        for a in g.rs.simple:
            for b in g.rs.simple:
                e = g.mul(g.reflection(a), g.reflection(b))
                order, x = 1, e
                while x != 0:
                    x = g.mul(x, e)
                    order += 1
                m = ident
                prod = mat_mul(self.generators[a], self.generators[b])
                for _ in range(order):
                    m = mat_mul(m, prod)
                if m != ident:
                    return False
        return True

    def gram_invariant(self) -> bool:
        return all(mat_mul(mat_mul(transpose(s), self.gram), s) == self.gram for s in self.generators.values())


def _simple_root_model(rs: RootSystem, simple_ids: Sequence[int]):
    """Reflection representation on the basis of simple roots."""
    simples = [rs.positive_roots[a] for a in simple_ids]
    k = len(simples)
    gens = {}
    for j, a in enumerate(simple_ids):
        cor = rs.coroots[a]
        cols = []
        for i in range(k):
            c = dot(simples[i], cor)
            col = [Fraction(int(t == i)) for t in range(k)]
            col[j] -= c
            cols.append(col)
        gens[a] = tuple(tuple(cols[i][t] for i in range(k)) for t in range(k))
    gram = tuple(tuple(dot(u, v) for v in simples) for u in simples)
    return gens, gram


def _component_model(rs: RootSystem, group: CoxeterGroup, table: Optional[CharacterTable], label: str):
    comp = rs.components[0]
    simple = list(rs.simple)
    one = ((Fraction(1),),)
    if label == "triv":
        return {a: one for a in simple}, one
    if label == "sgn":
        return {a: ((Fraction(-1),),) for a in simple}, one
    if comp.family == "Sym":
        n = rs.rank
        aliases = {"triv": (n,), "sgn": (1,) * n, "refl": (n - 1, 1) if n > 2 else (1, 1)}
        lam = aliases.get(label)
        if lam is None:
            try:
                lam = sym.parse_partition(label)
            except ValueError:
                raise UnknownLabel(label) from None
        if sorted(lam, reverse=True) != list(lam) or sum(lam) != n:
            raise UnknownLabel(label)
        _, sgens, gram = sym.seminormal_form(lam)
        gens = {}
        for a in simple:
            alpha = rs.positive_roots[a]
            k = next(i for i, x in enumerate(alpha) if x == 1)
            gens[a] = sgens[k]
        return gens, gram
    if label == "refl":
        return _simple_root_model(rs, simple)
    if table is not None and label in table.values and table.values[label][0] == 1:
        return {a: ((table.chi(label, group.reflection(a)),),) for a in simple}, one
    if comp.family == "G2" and label == "refl2":
        gens, gram = _simple_root_model(rs, simple)
        lengths = sorted({dot(x, x) for x in rs.positive_roots})
        twisted = {}
        for a, m in gens.items():
            s = -1 if dot(rs.positive_roots[a], rs.positive_roots[a]) == lengths[0] else 1
            twisted[a] = tuple(tuple(s * x for x in row) for row in m)
        return twisted, gram
    raise UnknownLabel(f"no representation model for {label!r} on {rs.name}")


def rep_model(rs: RootSystem, group: CoxeterGroup, label: str, table: Optional[CharacterTable] = None, rep_file: Optional[str] = None) -> RepModel:
    """Explicit model of the irreducible labelled ``label``."""
    if rep_file is not None:
        return load_rep_model(rs, group, rep_file)
    if len(rs.components) == 1:
        sub_table = table
        if table is not None:
            try:
                label = table.resolve(label) if label not in ("triv", "sgn", "refl", "refl2") else label
            except UnknownLabel:
                pass
        gens, gram = _component_model(rs, group, sub_table, label)
        return RepModel(label, len(gram), gens, gram, group)
    if label in ("triv", "sgn"):
        parts = [label] * len(rs.components)
    else:
        parts = label.split(",")
    if len(parts) != len(rs.components):
        raise UnknownLabel(f"{label!r} needs one label per component of {rs.name}")
    models = []
    for k, part in enumerate(parts):
        sub = component_root_system(rs, k)
        sg = CoxeterGroup(sub)
        st = None
        try:
            st = character_table(sub, sg)
        except UnsupportedGroupNoTableFile:
            pass
        gens, gram = _component_model(sub, sg, st, part)
        models.append((rs.components[k], sub, gens, gram))
    dims = [len(m[3]) for m in models]
    full_gens: Dict[int, Matrix] = {}
    for k, (comp, sub, gens, gram) in enumerate(models):
        for local, a in enumerate(comp.roots):
            if a not in rs.simple:
                continue
            mats = [identity(d) for d in dims]
            mats[k] = gens[local]
            m = mats[0]
            for x in mats[1:]:
                m = kron(m, x)
            full_gens[a] = m
    gram = models[0][3]
    for m in models[1:]:
        gram = kron(gram, m[3])
    canon = label
    if table is not None:
        try:
            canon = resolve_label(table, label)
        except UnknownLabel:
            pass
    return RepModel(canon, len(gram), full_gens, gram, group)


def load_rep_model(rs: RootSystem, group: CoxeterGroup, path: str) -> RepModel:
    """Read ``{"label", "generators": {root_index: matrix}, "gram": matrix}``."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    gens = {int(k): tuple(tuple(frac(x) for x in row) for row in m) for k, m in data["generators"].items()}
    gram = tuple(tuple(frac(x) for x in row) for row in data["gram"])
    missing = set(rs.simple) - set(gens)
    if missing:
        raise UnknownLabel(f"representation file lacks generators for simple roots {sorted(missing)}")
    model = RepModel(data.get("label", path), len(gram), gens, gram, group)
    if not model.relations_hold():
        raise InvalidRepresentation("matrices in representation file violate the Coxeter relations")
    if not model.gram_invariant() or not positivity(gram).positive_definite:
        raise InvalidRepresentation("Gram matrix in representation file is not invariant and positive definite")
    return model


def n_c(rs: RootSystem, c: ParameterFunction, table: CharacterTable, label: str) -> Fraction:
    """Scalar by which sum_{alpha>0} c_alpha s_alpha acts on the irreducible ``label``."""
    label = resolve_label(table, label)
    g = table.group
    deg = table.chi(label, 0)
    total = sum((c.at(rs, a) * table.chi(label, g.reflection(a)) for a in range(len(rs.positive_roots))), Fraction(0))
    return total / deg


@dataclass(frozen=True)
class AssumptionVerdict:
    generic: bool
    strong: bool
    violations: Tuple[str, ...]
    strong_violations: Tuple[str, ...]
    n_values: Tuple[Tuple[str, Fraction], ...]


def _is_int(x: Fraction) -> bool:
    return x.denominator == 1


def assumption_check(rs: RootSystem, c: ParameterFunction, tau: str, table: CharacterTable) -> AssumptionVerdict:
    """Genericity conditions on (c, tau) needed by the decomposition theorem."""
    tau = resolve_label(table, tau)
    r = rs.rank
    nt = n_c(rs, c, table, tau)
    viol = []
    strong = []
    first = Fraction(r, 2) - nt
    if _is_int(first) and first <= 0:
        viol.append(f"r/2 - N_c({tau}) = {first} is a non-positive integer")
    values = []
    for lab in table.labels:
        ns = n_c(rs, c, table, lab)
        values.append((lab, ns))
        if lab == tau:
            continue
        d = nt - ns
        if _is_int(d):
            strong.append(f"N_c({tau}) - N_c({lab}) = {d} is an integer")
            if d >= 0:
                viol.append(f"N_c({tau}) - N_c({lab}) = {d} is a non-negative integer")
    return AssumptionVerdict(not viol, not strong, tuple(viol), tuple(strong), tuple(values))


def symmetric_power_character(group: CoxeterGroup, m: int) -> List[Fraction]:
    """Character of Sym^m of the dual ambient space, one value per class."""
    out = []
    for cl in group.classes():
        e = cl[0]
        p = []
        x = 0
        for k in range(1, m + 1):
            x = group.mul(x, e)
            p.append(group.trace(x))
        h = [Fraction(1)]
        for n in range(1, m + 1):
            h.append(sum((p[k - 1] * h[n - k] for k in range(1, n + 1)), Fraction(0)) / n)
        out.append(h[m])
    return out


def min_occurrence_degree(rs: RootSystem, label: str, table: CharacterTable) -> int:
    """Least m such that the irreducible occurs in the polynomials of degree m."""
    label = resolve_label(table, label)
    bound = len(rs.positive_roots) + rs.span_rank
    for m in range(bound + 1):
        if table.inner(table.values[label], symmetric_power_character(table.group, m)) > 0:
            return m
    raise NotFoundBelowBound(f"{label} does not occur in degree <= {bound}")


def unitarity_region_check(rs: RootSystem, c: ParameterFunction, table: CharacterTable):
    """Per irreducible sigma != triv, the quantity m(sigma) - (N_c(triv) - N_c(sigma)).

    Returns ``(unitary, {label: value})``.
    """
    triv = resolve_label(table, "triv")
    nt = n_c(rs, c, table, triv)
    vals = {}
    for lab in table.labels:
        if lab == triv:
            continue
        vals[lab] = min_occurrence_degree(rs, lab, table) - (nt - n_c(rs, c, table, lab))
    return all(v > 0 for v in vals.values()), vals
