from fractions import Fraction
from itertools import product

import pytest

from cherednik_howe.errors import NotHookPartition, NotLowestWeight, TruncationTooSmall
from cherednik_howe.module import compare_on, identity_operator
from cherednik_howe.spo import (
    PARITY,
    SYMBOLS,
    abstract_bracket,
    b_set,
    classify_lw_vector,
    hook_bijection_check,
    hook_lambda,
    hook_upsilon,
    hooks_in,
    lw_type_dims,
    matrix_bracket,
    unordered_pairs,
    verify_realization,
    weight_of,
)

from conftest import module

F = Fraction


def bracket_combo(x, y):
    """Bilinear extension of the abstract super-bracket to combinations."""
    out = {}
    for a, ca in x.items():
        for b, cb in y.items():
            for s, v in abstract_bracket(a, b).items():
                out[s] = out.get(s, 0) + ca * cb * v
    return {k: v for k, v in out.items() if v}


def test_bracket_examples():
    assert abstract_bracket("e1+", "e1-") == {"h": 1}
    assert abstract_bracket("e2+", "e2+") == {}
    assert abstract_bracket("e2-", "e3+") == {"e1+": 2}
    assert abstract_bracket("e2+", "e2-") == {"h": 1, "z": 1}
    assert abstract_bracket("e3+", "e3-") == {"h": 1, "z": -1}
    assert abstract_bracket("h", "z") == {}


def test_table_matches_matrix_model():
    for a, b in product(SYMBOLS, repeat=2):
        assert abstract_bracket(a, b) == matrix_bracket(a, b), (a, b)


def test_super_antisymmetry_and_jacobi():
    count = 0
    for a, b in product(SYMBOLS, repeat=2):
        sign = -((-1) ** (PARITY[a] * PARITY[b]))
        assert abstract_bracket(b, a) == {k: sign * v for k, v in abstract_bracket(a, b).items()}
    for a, b, c in product(SYMBOLS, repeat=3):
        pa, pb, pc = PARITY[a], PARITY[b], PARITY[c]
        lhs = bracket_combo({a: 1}, bracket_combo({b: 1}, {c: 1}))
        t1 = bracket_combo(bracket_combo({a: 1}, {b: 1}), {c: 1})
        t2 = bracket_combo({b: 1}, bracket_combo({a: 1}, {c: 1}))
        rhs = dict(t1)
        for k, v in t2.items():
            rhs[k] = rhs.get(k, 0) + (-1) ** (pa * pb) * v
        assert lhs == {k: v for k, v in rhs.items() if v}
        count += 1
    assert count == 512


def test_unordered_pairs():
    assert len(unordered_pairs()) == 36


@pytest.mark.parametrize("group,c,tau,n", [("A1", "1/3", "triv", 8), ("B:2", ("1/3", "1/7"), "refl", 6), ("G2", ("1/4", "2/5"), "triv", 5)])
def test_realization_passes(group, c, tau, n):
    rep = verify_realization(module(group, c, tau), n)
    assert rep["status"] == "pass" and not rep["failed_pairs"]
    assert rep["odd_orientation"] == ["{e2+,e3-} = -2*e1-", "{e2-,e3+} = 2*e1+"]


def test_truncation_too_small():
    with pytest.raises(TruncationTooSmall):
        verify_realization(module("A1", "1/3"), 3)


def test_flip_e3minus_mutant():
    rep = verify_realization(module("B:2", ("1/3", "1/7"), "triv", ("flip-e3minus",)), 6)
    assert rep["status"] == "fail"
    # flipping a generator's sign breaks a relation iff the bracket is nonzero and
    # e3- occurs an odd number of times across the pair and its image
    expected = []
    for a, b in unordered_pairs():
        rhs = abstract_bracket(a, b)
        occurrences = (a == "e3-") + (b == "e3-") + ("e3-" in rhs)
        if rhs and occurrences % 2:
            expected.append([a, b])
    assert sorted(map(sorted, rep["failed_pairs"])) == sorted(map(sorted, expected))
    assert sorted(map(sorted, expected)) == sorted(map(sorted, [["e1+", "e3-"], ["e1-", "e2-"], ["e2+", "e3-"], ["e3+", "e3-"]]))
    for p in rep["pairs"]:
        if p["status"] == "fail":
            assert p["witness"]["block"] and p["witness"]["difference"]


def test_weights():
    K = module("A1", "1/3")
    t = K._table()
    assert weight_of(K, t, 0, 0, "triv") == (F(1, 2) - F(1, 3), F(-1, 2) + F(1, 3))
    assert weight_of(K, t, 1, 0, "sgn") == (F(3, 2) - F(1, 3), F(-1, 2) - F(1, 3))
    K0 = module("B:2", "0")
    for m, l in ((0, 0), (2, 1), (3, 2)):
        assert weight_of(K0, K0._table(), m, l, "triv") == (m + 1, l - 1)


def test_b_set():
    assert b_set(1, 10) == [(0, 0), (1, 0)]
    assert b_set(2, 3) == [(0, 0), (1, 0), (1, 1), (2, 0), (3, 0)]
    for r in range(1, 7):
        assert all(l == 0 for m, l in b_set(r, 6) if m == 0)
        assert (0, 5) not in b_set(r, 6)


def test_hooks():
    assert hook_lambda(0, 0) == ()
    assert hook_lambda(3, 1) == (3, 1)
    assert hook_upsilon((3, 1)) == (3, 1)
    with pytest.raises(NotHookPartition):
        hook_upsilon((2, 2))
    with pytest.raises(NotHookPartition):
        hook_lambda(0, 2)


def _hooks_brute(r, cap):
    # all partitions with lambda_1 <= cap and at most r + 1 parts, filtered by the hook and column conditions
    def parts(n, mx):
        if n == 0:
            yield ()
            return
        for k in range(min(n, mx), 0, -1):
            for rest in parts(n - k, k):
                yield (k,) + rest

    out = set()
    for n in range(0, cap + r + 2):
        for lam in parts(n, cap):
            if any(p != 1 for p in lam[1:]):
                continue
            conj = [sum(1 for p in lam if p > j) for j in range(lam[0] if lam else 0)] + [0, 0]
            if conj[0] + conj[1] <= r:
                out.add(lam)
    return out


@pytest.mark.parametrize("r", range(1, 7))
def test_hook_bijection(r):
    assert hook_bijection_check(r, 10)["status"] == "pass"
    assert set(hooks_in(r, 10)) == _hooks_brute(r, 10)
    for m, l in b_set(r, 10):
        assert hook_upsilon(hook_lambda(m, l)) == (m, l)


def test_lw_type_dims():
    free = lw_type_dims("Free", 0)
    assert free == {(0, 0): 1, (-1, 1): 1, (0, 2): 1, (1, 1): 2}
    assert lw_type_dims("L0", 3).get((-1, 1), 0) == 0
    assert all(lw_type_dims("L1", 3).get((2 * p, 2), 0) == 0 for p in range(4))
    # Verma pattern per row p: (2p,0), (2p-1,1) or (-1,1) for p=0, (2p,2), (2p+1,1)
    for p in range(1, 5):
        f = lw_type_dims("Free", p)
        assert [f[(2 * p, 0)], f.get((2 * p - 1, 1), 0), f[(2 * p, 2)], f[(2 * p + 1, 1)]] == [1, 2, 1, 2]
    assert [free[(0, 0)], free[(-1, 1)], free[(0, 2)], free[(1, 1)]] == [1, 1, 1, 2]


def test_classify_examples():
    K = module("A1", "1/3")
    assert classify_lw_vector(K, {((0,), 0, 0): F(1)}) == "L0"
    assert classify_lw_vector(K, {((1,), 0, 0): F(1)}) == "L1"
    K = module("A1", "1/2")
    assert classify_lw_vector(K, {((1,), 0, 0): F(1)}) == "L0"
    with pytest.raises(NotLowestWeight):
        classify_lw_vector(module("A1", "1/3"), {((2,), 0, 0): F(1)})


def test_free_vectors_split():
    from cherednik_howe.howe import lowest_weight_spaces, _lam

    K = module("B:2", ("1/3", "1/7"))
    lw = lowest_weight_spaces(K, 6)
    e1p, e1m, e2, e3 = (K.generator(g) for g in ("E1+", "E1-", "E2+", "E3+"))
    seen = 0
    for (m, l), vecs in lw.spaces.items():
        for v in vecs:
            if classify_lw_vector(K, v) != "Free":
                continue
            seen += 1
            lam = _lam(K, m)
            f = {}
            for kk, c in e2(e1p(v)).items():
                f[kk] = f.get(kk, 0) + c
            for kk, c in e3(v).items():
                f[kk] = f.get(kk, 0) - lam * c
            for w in (v, e2(v), e2(e3(v)), {a: b for a, b in f.items() if b}):
                assert not e1m(w)
    assert seen


@pytest.mark.parametrize("group,c", [("A1", "1/3"), ("B:2", ("1/3", "1/7"))])
def test_e2_e1_power_identity(group, c):
    # [E2+, (E1+)^(p+1)] = (p+1) E3+ (E1+)^p
    K = module(group, c)
    e1, e2, e3 = (K.generator(g) for g in ("E1+", "E2+", "E3+"))
    keys = [k for m in range(3) for l in range(K.r + 1) for k in K.block(m, l)]
    power = identity_operator()
    for p in range(4):
        nxt = power @ e1
        assert compare_on(e2 @ nxt - nxt @ e2, (e3 @ power).scaled(p + 1), keys) is None
        power = nxt
