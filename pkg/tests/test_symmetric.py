from fractions import Fraction
from itertools import permutations
from math import factorial

import pytest

from cherednik_howe.linalg import mat_mul
from cherednik_howe.symmetric import conjugate, cycle_type, mn_character, parse_partition, partition_label, partitions, seminormal_form, standard_tableaux


def L(m):
    return [list(r) for r in m]


def hook_length_dim(lam):
    n = sum(lam)
    conj = conjugate(lam)
    prod = 1
    for i, row in enumerate(lam):
        for j in range(row):
            prod *= row - j + conj[j] - i - 1
    return factorial(n) // prod


def perm_matrix_word(perm):
    """Adjacent transpositions (0-based k means (k, k+1)) whose product is perm."""
    p = list(perm)
    word = []
    for i in range(len(p)):
        for j in range(len(p) - 1, i, -1):
            if p[j - 1] > p[j]:
                p[j - 1], p[j] = p[j], p[j - 1]
                word.append(j - 1)
    return word[::-1]


def test_partitions_and_labels():
    assert partitions(4) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert conjugate((3, 1)) == (2, 1, 1)
    assert parse_partition(partition_label((2, 1))) == (2, 1)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_mn_degree_and_tableaux(n):
    for lam in partitions(n):
        d = mn_character(lam, (1,) * n)
        assert d == hook_length_dim(lam) == len(standard_tableaux(lam))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_mn_matches_seminormal_traces(n):
    # independent route: trace of the seminormal model on a permutation of each cycle type
    for lam in partitions(n):
        tabs, gens, gram = seminormal_form(lam)
        dim = len(tabs)
        seen = {}
        for perm in permutations(range(n)):
            mu = cycle_type(perm)
            if mu in seen:
                continue
            mat = [[Fraction(int(i == j)) for j in range(dim)] for i in range(dim)]
            for k in perm_matrix_word(perm):
                mat = mat_mul(mat, gens[k])
            seen[mu] = sum(mat[i][i] for i in range(dim))
        for mu, tr in seen.items():
            assert tr == mn_character(lam, mu)


@pytest.mark.parametrize("n", [4, 5])
def test_seminormal_relations_and_gram(n):
    for lam in partitions(n):
        _, gens, gram = seminormal_form(lam)
        k = len(gens)
        eye = [[Fraction(int(i == j)) for j in range(len(gram))] for i in range(len(gram))]
        for i in range(k):
            s = gens[i]
            assert L(mat_mul(s, s)) == eye
            g_s = mat_mul(mat_mul([list(r) for r in zip(*s)], gram), s)
            assert L(g_s) == L(gram)
            if i + 1 < k:
                t = gens[i + 1]
                assert L(mat_mul(mat_mul(s, t), s)) == L(mat_mul(mat_mul(t, s), t))


def test_character_orthogonality_s4():
    n = 4
    classes = {}
    for perm in permutations(range(n)):
        mu = cycle_type(perm)
        classes[mu] = classes.get(mu, 0) + 1
    for a in partitions(n):
        for b in partitions(n):
            s = sum(size * mn_character(a, mu) * mn_character(b, mu) for mu, size in classes.items())
            assert s == (factorial(n) if a == b else 0)
