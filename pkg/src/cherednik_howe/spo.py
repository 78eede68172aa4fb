"""The Lie superalgebra spo(2|2): abstract brackets, its realization on K, hooks and
lowest weight module types."""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import NotHookPartition, NotLowestWeight, TruncationTooSmall, UnknownGenerator
from .linalg import Vector, rank
from .module import BlockOperator, KModule, compare_on, linear_sum, super_bracket, vector_json, format_key

SYMBOLS = ("h", "z", "e1+", "e1-", "e2+", "e2-", "e3+", "e3-")
PARITY = {"h": 0, "z": 0, "e1+": 0, "e1-": 0, "e2+": 1, "e2-": 1, "e3+": 1, "e3-": 1}
REALIZED = {"h": "H", "z": "Z", "e1+": "E1+", "e1-": "E1-", "e2+": "E2+", "e2-": "E2-", "e3+": "E3+", "e3-": "E3-"}

Combo = Dict[str, Fraction]

# Defining brackets; the remaining ones follow from super-antisymmetry.
_RELATIONS = {
    ("h", "z"): {},
    ("h", "e1+"): {"e1+": 2},
    ("h", "e1-"): {"e1-": -2},
    ("e1+", "e1-"): {"h": 1},
    ("z", "e1+"): {},
    ("z", "e1-"): {},
    ("h", "e2+"): {"e2+": -1},
    ("h", "e2-"): {"e2-": 1},
    ("z", "e2+"): {"e2+": 1},
    ("z", "e2-"): {"e2-": -1},
    ("h", "e3+"): {"e3+": 1},
    ("h", "e3-"): {"e3-": -1},
    ("z", "e3+"): {"e3+": 1},
    ("z", "e3-"): {"e3-": -1},
    ("e1+", "e2-"): {},
    ("e1-", "e2+"): {},
    ("e1+", "e2+"): {"e3+": -1},
    ("e1-", "e2-"): {"e3-": -1},
    ("e1+", "e3+"): {},
    ("e1-", "e3-"): {},
    ("e1+", "e3-"): {"e2-": -1},
    ("e1-", "e3+"): {"e2+": -1},
    ("e2+", "e2-"): {"h": 1, "z": 1},
    ("e3+", "e3-"): {"h": 1, "z": -1},
    ("e2-", "e3+"): {"e1+": 2},
    ("e2+", "e3-"): {"e1-": -2},
    ("e2+", "e2+"): {},
    ("e2-", "e2-"): {},
    ("e3+", "e3+"): {},
    ("e3-", "e3-"): {},
    ("e2+", "e3+"): {},
    ("e2-", "e3-"): {},
}


@dataclass(frozen=True)
class SpoStructure:
    table: Dict[Tuple[str, str], Combo]

    def bracket(self, a: str, b: str) -> Combo:
        if a not in PARITY or b not in PARITY:
            raise UnknownGenerator(f"{a!r} or {b!r}")
        return dict(self.table[(a, b)])


def _build_table() -> Dict[Tuple[str, str], Combo]:
    table: Dict[Tuple[str, str], Combo] = {}
    for a in SYMBOLS:
        table[(a, a)] = {}
    for (a, b), v in _RELATIONS.items():
        v = {k: Fraction(c) for k, c in v.items()}
        table[(a, b)] = v
        sign = -1 if not (PARITY[a] and PARITY[b]) else 1
        table[(b, a)] = {k: sign * c for k, c in v.items()}
    missing = [(a, b) for a in SYMBOLS for b in SYMBOLS if (a, b) not in table]
    assert not missing, missing
    return table


SPO = SpoStructure(_build_table())


def abstract_bracket(a: str, b: str) -> Combo:
    """Super-bracket of two basis symbols of spo(2|2), as a combination of symbols."""
    return SPO.bracket(a, b)


# 4x4 supermatrix model: indices 0,1 even, 2,3 odd.
def _E(i, j):
    m = [[Fraction(0)] * 4 for _ in range(4)]
    m[i][j] = Fraction(1)
    return m


def _lin(*terms):
    m = [[Fraction(0)] * 4 for _ in range(4)]
    for c, e in terms:
        for i in range(4):
            for j in range(4):
                m[i][j] += c * e[i][j]
    return m


MATRIX_MODEL = {
    "h": _lin((1, _E(0, 0)), (-1, _E(1, 1))),
    "z": _lin((1, _E(2, 2)), (-1, _E(3, 3))),
    "e1+": _E(0, 1),
    "e1-": _E(1, 0),
    "e2+": _lin((1, _E(2, 0)), (-1, _E(1, 3))),
    "e2-": _lin((1, _E(0, 2)), (1, _E(3, 1))),
    "e3+": _lin((1, _E(0, 3)), (1, _E(2, 1))),
    "e3-": _lin((1, _E(3, 0)), (-1, _E(1, 2))),
}


def matrix_bracket(a: str, b: str) -> Combo:
    """Bracket computed in the supermatrix model and expanded back in the basis."""
    A, B = MATRIX_MODEL[a], MATRIX_MODEL[b]
    sign = -1 if PARITY[a] and PARITY[b] else 1

    def mm(X, Y):
        return [[sum(X[i][k] * Y[k][j] for k in range(4)) for j in range(4)] for i in range(4)]

    AB, BA = mm(A, B), mm(B, A)
    target = [[AB[i][j] - sign * BA[i][j] for j in range(4)] for i in range(4)]
    from .linalg import solve

    cols = [[MATRIX_MODEL[s][i][j] for s in SYMBOLS] for i in range(4) for j in range(4)]
    rhs = [target[i][j] for i in range(4) for j in range(4)]
    sol = solve(cols, rhs)
    if sol is None:
        raise ValueError("bracket leaves the span of the basis")
    return {s: v for s, v in zip(SYMBOLS, sol) if v}


def combo_text(c: Combo) -> str:
    if not c:
        return "0"
    return " + ".join(f"{v}*{k}" for k, v in c.items())


def realize(module: KModule, combo: Combo) -> BlockOperator:
    return linear_sum([(v, module.generator(REALIZED[k])) for k, v in combo.items()], combo_text(combo))


def realize_spo(name: str, module: KModule) -> BlockOperator:
    if name in REALIZED:
        name = REALIZED[name]
    return module.generator(name)


def unordered_pairs() -> List[Tuple[str, str]]:
    return [(a, b) for i, a in enumerate(SYMBOLS) for b in SYMBOLS[i:]]


def relation_blocks(module: KModule, n: int) -> List[Tuple[int, int]]:
    if n < 4:
        raise TruncationTooSmall("relation checks need N >= 4")
    return [(m, l) for m in range(n - 3) for l in range(module.r + 1)]


def _check_pair(module: KModule, pair, blocks):
    a, b = pair
    lhs = super_bracket(module.generator(REALIZED[a]), module.generator(REALIZED[b]))
    expected = abstract_bracket(a, b)
    rhs = realize(module, expected)
    for blk in blocks:
        bad = compare_on(lhs, rhs, module.block(*blk))
        if bad is not None:
            key, diff = bad
            return {
                "pair": [a, b],
                "expected": combo_text(expected),
                "status": "fail",
                "witness": {"block": list(blk), "source": format_key(key), "difference": vector_json(diff)},
            }
    return {"pair": [a, b], "expected": combo_text(expected), "status": "pass"}


def verify_realization(module: KModule, n: int, threads: int = 1) -> dict:
    """Compare every realized super-bracket with the abstract one on blocks m <= N-4."""
    blocks = relation_blocks(module, n)
    pairs = unordered_pairs()
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            results = list(ex.map(lambda p: _check_pair(module, p, blocks), pairs))
    else:
        results = [_check_pair(module, p, blocks) for p in pairs]
    failed = [r for r in results if r["status"] == "fail"]
    orientation = []
    for a, b in (("e2+", "e3-"), ("e2-", "e3+")):
        lhs = super_bracket(module.generator(REALIZED[a]), module.generator(REALIZED[b]))
        found = None
        for sym_, sign in (("e1-", -2), ("e1-", 2), ("e1+", 2), ("e1+", -2)):
            rhs = realize(module, {sym_: Fraction(sign)})
            if all(compare_on(lhs, rhs, module.block(*blk)) is None for blk in blocks):
                found = f"{{{a},{b}}} = {sign}*{sym_}"
                break
        orientation.append(found or f"{{{a},{b}}} matches no multiple of e1+ or e1-")
    return {
        "name": "spo_realization",
        "status": "fail" if failed else "pass",
        "blocks_checked": f"m <= {n - 4}",
        "pairs": results,
        "failed_pairs": [r["pair"] for r in failed],
        "odd_orientation": orientation,
    }


def weight_of(module: KModule, table, m: int, l: int, sigma: str) -> Tuple[Fraction, Fraction]:
    """(H, Z) eigenvalues on the sigma-isotypic part of block (m, l)."""
    from .coxeter import n_c

    r = module.r
    rs, c = module.rs, module.c
    return (m + Fraction(r, 2) - n_c(rs, c, table, module.tau.label), l - Fraction(r, 2) + n_c(rs, c, table, sigma))


# hooks and the support set --------------------------------------------

def b_set(r: int, cap: int) -> List[Tuple[int, int]]:
    """Bidegrees (m, l) with m <= cap where lowest weight vectors may live."""
    out = [(0, 0)]
    if cap >= 1:
        out.append((1, r - 1))
    for m in range(1, cap + 1):
        for l in range(0, r - 1):
            if (m, l) not in out:
                out.append((m, l))
    return sorted(set(out))


def is_hook(lam: Tuple[int, ...]) -> bool:
    return all(p == 1 for p in lam[1:]) and all(p > 0 for p in lam)


def hook_lambda(m: int, l: int) -> Tuple[int, ...]:
    """Lambda(m, l) = (m, 1^l)."""
    if m == 0:
        if l:
            raise NotHookPartition(f"(0,{l}) has no hook")
        return ()
    return (m,) + (1,) * l


def hook_upsilon(lam: Tuple[int, ...]) -> Tuple[int, int]:
    """Upsilon(lambda) = (lambda_1, lambda_1' - 1), with the empty partition sent to (0, 0)."""
    lam = tuple(lam)
    if not lam:
        return (0, 0)
    if not is_hook(lam):
        raise NotHookPartition(str(lam))
    return (lam[0], len(lam) - 1)


def hooks_in(r: int, cap: int) -> List[Tuple[int, ...]]:
    """Hook partitions with lambda_1 <= cap and lambda_1' + lambda_2' <= r."""
    out = [()]
    for a in range(1, cap + 1):
        for b in range(0, r + 1):
            lam = (a,) + (1,) * b
            col1 = b + 1
            col2 = 1 if a >= 2 else 0
            if col1 + col2 <= r:
                out.append(lam)
    return out


def hook_bijection_check(r: int, cap: int) -> dict:
    bs = b_set(r, cap)
    hs = hooks_in(r, cap)
    ok = sorted(hook_upsilon(h) for h in hs) == sorted(bs)
    ok &= all(hook_upsilon(hook_lambda(m, l)) == (m, l) for m, l in bs)
    ok &= all(hook_lambda(*hook_upsilon(h)) == tuple(h) for h in hs)
    ok &= all(tuple(hook_lambda(m, l)) in set(map(tuple, hs)) for m, l in bs)
    table = [{"bidegree": [m, l], "hook": list(hook_lambda(m, l))} for m, l in bs]
    return {"name": "hook_bijection", "r": r, "cap": cap, "status": "pass" if ok else "fail", "size": len(bs), "table": table}


# lowest weight module types ---------------------------------------------

TYPES = ("L0", "L1", "Free")


def lw_type_dims(kind: str, p_max: int) -> Dict[Tuple[int, int], int]:
    """Dimensions of a lowest weight module of the given type, per bidegree offset (dm, dl).

    Offsets e1+ = (2, 0), e2+ = (-1, 1), e3+ = (1, 1); ``p_max`` bounds the power of e1+.
    """
    out: Dict[Tuple[int, int], int] = {}
    for p in range(p_max + 1):
        out[(2 * p, 0)] = 1
        if kind == "L0":
            out[(2 * p + 1, 1)] = 1
        elif kind == "L1":
            out[(2 * p - 1, 1)] = 1
        elif kind == "Free":
            out[(2 * p, 2)] = 1
            out[(2 * p + 1, 1)] = 2
            out[(-1, 1)] = 1
        else:
            raise ValueError(kind)
    return out


def predicted_type(m: int, l: int, r: int) -> str:
    if (m, l) == (0, 0):
        return "L0"
    if (m, l) == (1, r - 1):
        return "L1"
    return "Free"


def is_lowest_weight(module: KModule, v: Vector) -> bool:
    return all(not module.generator(g)(v) for g in ("E1-", "E2-", "E3-"))


def classify_lw_vector(module: KModule, v: Vector) -> str:
    """Type of the module generated by a lowest weight vector."""
    if not is_lowest_weight(module, v):
        raise NotLowestWeight("vector is not killed by E1-, E2-, E3-")
    e2 = module.generator("E2+")(v)
    if not e2:
        return "L0"
    if not module.generator("E2+")(module.generator("E3+")(v)):
        return "L1"
    return "Free"


def generated_vectors(module: KModule, v: Vector, m0: int, n: int) -> Dict[Tuple[int, int], List[Vector]]:
    """PBW images (e2+)^a (e3+)^b (e1+)^p v grouped by absolute bidegree, with degree <= n."""
    e1, e2, e3 = (module.generator(g) for g in ("E1+", "E2+", "E3+"))
    out: Dict[Tuple[int, int], List[Vector]] = {}
    p = 0
    cur = v
    while m0 + 2 * p - 1 <= n and cur:
        for a in (0, 1):
            for b in (0, 1):
                w = cur
                if b:
                    w = e3(w)
                if a:
                    w = e2(w)
                if not w:
                    continue
                key = next(iter(w))
                out.setdefault(module.bidegree(key), []).append(w)
        cur = e1(cur)
        p += 1
    return {k: vs for k, vs in out.items() if k[0] <= n}


def generated_dims(module: KModule, v: Vector, m0: int, n: int) -> Dict[Tuple[int, int], int]:
    return {k: rank(vs) for k, vs in sorted(generated_vectors(module, v, m0, n).items()) if rank(vs)}
