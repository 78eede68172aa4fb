from fractions import Fraction

import pytest

from cherednik_howe import howe
from cherednik_howe.linalg import in_span, positivity, rank
from cherednik_howe.spo import b_set

from conftest import module

F = Fraction
B2 = ("1/3", "1/7")


def nonzero_dims(lw):
    return {k: v for k, v in lw.dims().items() if v}


def test_lw_dims_rank_one():
    assert nonzero_dims(howe.lowest_weight_spaces(module("A1", "1/3"), 10)) == {(0, 0, "triv"): 1, (1, 0, "sgn"): 1}
    assert nonzero_dims(howe.lowest_weight_spaces(module("A1", "-2/7", "sgn"), 10)) == {(0, 0, "sgn"): 1, (1, 0, "triv"): 1}


@pytest.mark.parametrize("tau", ["triv", "refl"])
def test_support_b2(tau):
    K = module("B:2", B2, tau)
    lw = howe.lowest_weight_spaces(K, 6)
    assert howe.verify_support(K, lw)["status"] == "pass"
    assert {(m, l) for (m, l), v in lw.spaces.items() if v} <= set(b_set(2, 6))


def test_lw_vectors_are_killed():
    K = module("B:2", B2, "refl")
    lw = howe.lowest_weight_spaces(K, 6)
    for vecs in lw.spaces.values():
        for v in vecs:
            for g in ("E1-", "E2-", "E3-"):
                assert not K.generator(g)(v)


def test_harmonics_rank_one():
    K = module("A1", "1/3")
    dims = [len(howe.harmonic_spaces(K, m, 0)[0]) for m in range(6)]
    assert dims == [1, 1, 0, 0, 0, 0]
    assert len(howe.harmonic_spaces(K, 0, 1)[0]) == 1


@pytest.mark.parametrize("group,c,tau", [("A1", "1/3", "triv"), ("B:2", B2, "triv"), ("B:2", B2, "refl")])
def test_inclusions_and_sl2_part(group, c, tau):
    K = module(group, c, tau)
    lw = howe.lowest_weight_spaces(K, 6)
    for (m, l), M in lw.spaces.items():
        H, A = howe.harmonic_spaces(K, m, l)
        assert all(in_span(A, v) for v in M)
        assert all(in_span(H, v) for v in A)
        if l == 0:
            assert rank(M) == len(H)


@pytest.mark.parametrize("group,c,tau", [("A1", "1/3", "triv"), ("B:2", B2, "triv"), ("B:2", B2, "refl")])
def test_a_is_stable(group, c, tau):
    # E2+-, E3+- map kernels of E1- and E3- into themselves
    K = module(group, c, tau)
    for m in range(4):
        for l in range(K.r + 1):
            _, A = howe.harmonic_spaces(K, m, l)
            for g, (dm, dl) in (("E2+", (-1, 1)), ("E2-", (1, -1)), ("E3+", (1, 1)), ("E3-", (-1, -1))):
                if g == "E3+":
                    # on A, E1- E3+ = -E2+, so E3+ leaves A unless E2+ kills the vector
                    for v in A:
                        w = K.generator("E1-")(K.generator("E3+")(v))
                        assert w == {a: -b for a, b in K.generator("E2+")(v).items()}
                    continue
                tm, tl = m + dm, l + dl
                if tm < 0 or not 0 <= tl <= K.r:
                    continue
                _, A2 = howe.harmonic_spaces(K, tm, tl)
                for v in A:
                    assert in_span(A2, K.generator(g)(v))


def test_a_splits_under_e2():
    K = module("B:2", B2)
    n_max = 4
    for n in range(1, n_max + 1):
        A = [v for m in range(n + 1) for v in howe.harmonic_spaces(K, m, n - m)[1] if n - m <= K.r]
        plus = [K.generator("E2+")(v) for v in A]
        minus = [K.generator("E2-")(v) for v in A]
        assert rank(plus) + rank(minus) == len(A) == rank(plus + minus)


def test_row_decomposition():
    assert howe.verify_row_decomposition(module("A1", "1/3"), 8)["status"] == "pass"
    for group in ("B:2", "Sym:3"):
        assert howe.verify_row_decomposition(module(group, "0"), 4)["status"] == "pass"


def test_row_decomposition_at_half():
    # x^2 is killed by the Dunkl Laplacian once 1 - 2c = 0, so it collides with E1+(1)
    rep = howe.verify_row_decomposition(module("A1", "1/2"), 8)
    assert rep["status"] == "fail"
    w = rep["witness"]
    assert w["block"] == [2, 0] and w["columns"] == 2 and w["rank"] == 1
    assert w["vector"][0]["mono"] == [2]


def test_h_decomposition():
    assert howe.verify_h_decomposition(module("A1", "1/3"), 8)["status"] == "pass"
    rep = howe.verify_h_decomposition(module("B:2", B2), 6)
    assert rep["status"] == "pass"
    blk = next(b for b in rep["blocks"] if b["block"] == [1, 1])
    assert sum(blk["summand_ranks"]) == blk["harmonic_dim"]
    assert all(b["orthogonal"] for b in rep["blocks"])
    K = module("B:2", B2)
    assert howe._lam(K, 0) == 1 - F(20, 21)


def test_exactness():
    rep = howe.verify_exactness(module("A1", "1/3"), 8)
    assert rep["status"] == "pass"
    assert any(s["degree"] == 1 and s["sigma"] == "sgn" and s["status"] == "pass" for s in rep["spaces"])
    assert all(s["degree"] > 0 for s in rep["spaces"])
    bad = howe.verify_exactness(module("A1", "1/2"), 8)
    assert bad["status"] == "fail"
    assert bad["witness"]["degree"] == 1 and bad["witness"]["sigma"] == "sgn"


def test_main_theorem_rank_one():
    rep = howe.verify_main_theorem(module("A1", "1/3"), 10)
    assert rep["status"] == "pass"
    got = [(v["block"], v["sigma"], v["classified"], v["weight"]) for v in rep["lowest_weight_vectors"]]
    assert got == [([0, 0], "triv", "L0", ["1/6", "-1/6"]), ([1, 0], "sgn", "L1", ["7/6", "-5/6"])]
    assert all(e["actual"] == e["predicted"] for e in rep["reconstruction"])


def test_main_theorem_degenerate():
    rep = howe.verify_main_theorem(module("A1", "1/2"), 10)
    assert rep["status"] == "fail"
    x = next(v for v in rep["lowest_weight_vectors"] if v["block"] == [1, 0])
    assert x["e2plus_zero"] and x["classified"] == "L0"
    deficit = [f for f in rep["failures"] if f["kind"] == "reconstruction" and f["status"] == "deficit"]
    assert deficit[0]["block"] == [0, 1]
    assert deficit[0]["witness"] == [{"mono": [0], "tau": 0, "wedge": [0], "coeff": "1", "text": "1 (x) e0 (x) x1"}]


def test_main_theorem_b2():
    rep = howe.verify_main_theorem(module("B:2", B2), 6)
    assert rep["status"] == "pass"
    assert all(v["classified"] == v["predicted"] for v in rep["lowest_weight_vectors"])


def test_c_comparison():
    assert howe.verify_c_comparison(module("A1", "1/3"), module("A1", "0"), 10)["status"] == "pass"
    bad = howe.verify_c_comparison(module("A1", "1/2"), module("A1", "0"), 10)
    assert bad["status"] == "fail" and bad["witness"]["block"] == [2, 0]
    assert howe.verify_c_comparison(module("B:2", B2), module("B:2", "0"), 6)["status"] == "pass"


@pytest.mark.parametrize("group,c,tau", [("A1", "1/3", "triv"), ("B:2", B2, "triv"), ("B:2", B2, "refl")])
def test_gram_positive_on_lowest_weight_spaces(group, c, tau):
    K = module(group, c, tau)
    lw = howe.lowest_weight_spaces(K, 6)
    for vecs in lw.isotypic.values():
        if vecs:
            G = [[K.inner(u, v) for v in vecs] for u in vecs]
            assert positivity(G).positive_definite


def test_sl2_table():
    rows = howe.sl2_table(module("A1", "1/3"), 8)["rows"]
    assert rows == [{"m": 0, "lowest_weight": "1/6", "dim": 1}, {"m": 1, "lowest_weight": "7/6", "dim": 1}]
