"""Field arithmetic and exact linear algebra, checked against brute-force oracles."""

import itertools
import random

import numpy as np
import pytest

from tamecoh.field import (
    Field,
    Section,
    Subspace,
    expand_vector,
    image_basis,
    kernel_basis,
    kernel_space,
    matmul,
    matvec,
    pack_vector,
    rank,
    rref,
    semilinear_kernel,
    solve,
)

ALL_PARAMS = [(p, m) for p in (2, 3, 5, 7) for m in (1, 2, 3, 4)]


# ---------------------------------------------------------------------------
# field axioms and tables
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("p,m", ALL_PARAMS)
def test_field_constructs_and_generator_is_primitive(p, m):
    f = Field(p, m)
    assert f.q == p**m
    # exp table hits every nonzero element exactly once
    assert sorted(int(x) for x in f.exp[: f.q - 1]) == list(range(1, f.q))


def brute_axiom_check(f, triples):
    for a, b, c in triples:
        assert f.mul(a, f.mul(b, c)) == f.mul(f.mul(a, b), c)
        assert f.add(a, f.add(b, c)) == f.add(f.add(a, b), c)
        assert f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c))
        assert f.add(a, b) == f.add(b, a)
        assert f.mul(a, b) == f.mul(b, a)
    for a in f.elements():
        assert f.add(a, f.neg(a)) == 0
        assert f.mul(a, 1) == a
        assert f.add(a, 0) == a
        if a != 0:
            assert f.mul(a, f.inv(a)) == 1


@pytest.mark.parametrize("p,m", [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2), (2, 3)])
def test_field_axioms_exhaustive_small(p, m):
    f = Field(p, m)
    brute_axiom_check(f, itertools.product(f.elements(), repeat=3))


@pytest.mark.parametrize("p,m", [(5, 2), (7, 2), (2, 4), (3, 3), (3, 4), (5, 3), (5, 4), (7, 3), (7, 4)])
def test_field_axioms_sampled_large(p, m):
    f = Field(p, m)
    rng = random.Random(20260823)
    triples = [(rng.randrange(f.q), rng.randrange(f.q), rng.randrange(f.q)) for _ in range(300)]
    brute_axiom_check(f, triples)


@pytest.mark.parametrize("p,m", [(2, 2), (3, 2), (2, 3), (5, 2), (7, 2), (3, 4)])
def test_mul_matches_schoolbook(p, m):
    f = Field(p, m)
    rng = random.Random(7)
    for _ in range(200):
        a, b = rng.randrange(f.q), rng.randrange(f.q)
        assert f.mul(a, b) == f._mul_slow(a, b)


@pytest.mark.parametrize("p,m", [(2, 2), (2, 4), (3, 2), (5, 2), (7, 2), (3, 3)])
def test_frobenius_is_field_automorphism_fixing_prime_field(p, m):
    f = Field(p, m)
    rng = random.Random(11)
    for _ in range(100):
        a, b = rng.randrange(f.q), rng.randrange(f.q)
        assert f.frobenius(f.add(a, b)) == f.add(f.frobenius(a), f.frobenius(b))
        assert f.frobenius(f.mul(a, b)) == f.mul(f.frobenius(a), f.frobenius(b))
        assert f.frobenius(a) == f.pow(a, p)
        assert f.frobenius(f.frobenius(a)) == f.frobenius(a, 2)
    for c in range(p):
        assert f.frobenius(c) == c
    # m-fold Frobenius is the identity
    for _ in range(20):
        a = rng.randrange(f.q)
        assert f.frobenius(a, m) == a


def test_array_ops_match_scalar_ops():
    for p, m in [(2, 2), (3, 1), (5, 2), (7, 1), (2, 4)]:
        f = Field(p, m)
        rng = random.Random(23)
        a = f.rand(rng, (6, 5))
        b = f.rand(rng, (6, 5))
        s = f.add(a, b)
        d = f.sub(a, b)
        pr = f.mul(a, b)
        fr = f.frobenius(a)
        for i in range(6):
            for j in range(5):
                assert s[i, j] == f.add(int(a[i, j]), int(b[i, j]))
                assert d[i, j] == f.sub(int(a[i, j]), int(b[i, j]))
                assert pr[i, j] == f.mul(int(a[i, j]), int(b[i, j]))
                assert fr[i, j] == f.frobenius(int(a[i, j]))


def test_parse_descriptors():
    assert Field.parse("GF(4)") == Field(2, 2)
    assert Field.parse("GF(3^2)") == Field(3, 2)
    assert Field.parse("GF(7)") == Field(7, 1)
    assert Field.parse("GF(625)") == Field(5, 4)
    with pytest.raises(ValueError):
        Field.parse("GF(6)")
    with pytest.raises(ValueError):
        Field.parse("GF(11)")


def test_element_str_round_trip_notation():
    f = Field(2, 2)
    assert f.element_str(0) == "0"
    assert f.element_str(1) == "1"
    assert f.element_str(2) == "w"
    assert f.element_str(3) == "1+w"


# ---------------------------------------------------------------------------
# linear algebra against oracles
# ---------------------------------------------------------------------------


def span_size(f, rows):
    """Brute-force span enumeration; returns |span| (so rank = log_q)."""
    vecs = {tuple(np.zeros(rows.shape[1], dtype=np.int64))}
    for r in rows:
        new = set(vecs)
        for c in range(1, f.q):
            scaled = f.mul(c, r)
            for v in vecs:
                new.add(tuple(f.add(np.array(v), scaled)))
        vecs = new
        # close under addition until stable
        changed = True
        while changed:
            changed = False
            for v1 in list(vecs):
                for v2 in list(vecs):
                    s = tuple(f.add(np.array(v1), np.array(v2)))
                    if s not in vecs:
                        vecs.add(s)
                        changed = True
    return len(vecs)


def test_rank_matches_span_enumeration_gf2():
    f = Field(2)
    m = np.array([[1, 1, 0], [0, 1, 1], [1, 0, 1]], dtype=np.int64)
    assert span_size(f, m) == 2**2
    assert rank(f, m) == 2


def test_rank_matches_span_enumeration_random():
    rng = random.Random(101)
    for p in (2, 3):
        f = Field(p)
        for _ in range(10):
            m = f.rand(rng, (3, 3))
            sz = span_size(f, m)
            r = 0
            while p**r < sz:
                r += 1
            assert rank(f, m) == r


def test_rref_is_idempotent_and_preserves_row_space():
    rng = random.Random(5)
    for p, m in [(2, 1), (3, 1), (5, 1), (2, 2)]:
        f = Field(p, m)
        for _ in range(20):
            a = f.rand(rng, (4, 6))
            r1, piv1 = rref(f, a)
            r2, piv2 = rref(f, r1)
            assert np.array_equal(r1, r2) and piv1 == piv2
            assert Subspace(f, 6, a) == Subspace(f, 6, r1[: len(piv1)])


def test_subspace_canonical_under_row_mixing():
    rng = random.Random(6)
    f = Field(3)
    base = f.rand(rng, (3, 5))
    s0 = Subspace(f, 5, base)
    for _ in range(20):
        mixer = f.rand(rng, (3, 3))
        while rank(f, mixer) < 3:
            mixer = f.rand(rng, (3, 3))
        assert Subspace(f, 5, matmul(f, mixer, base)) == s0


def test_kernel_basis_annihilates_and_has_right_dim():
    rng = random.Random(9)
    for p, m in [(2, 1), (3, 1), (2, 2), (5, 1)]:
        f = Field(p, m)
        for _ in range(15):
            a = f.rand(rng, (4, 7))
            k = kernel_basis(f, a)
            assert k.shape[0] == 7 - rank(f, a)
            for v in k:
                assert not np.any(matvec(f, a, v))
            assert rank(f, k) == k.shape[0]


def test_kernel_exhaustive_small():
    f = Field(2)
    a = np.array([[1, 0, 1, 1], [0, 1, 1, 0]], dtype=np.int64)
    ker = kernel_space(f, a)
    brute = [v for v in itertools.product(range(2), repeat=4)
             if not np.any(matvec(f, a, np.array(v)))]
    assert len(brute) == 2**ker.dim
    for v in brute:
        assert ker.contains(np.array(v))


def test_solve_consistent_and_inconsistent():
    rng = random.Random(13)
    for p, m in [(2, 1), (3, 1), (2, 2)]:
        f = Field(p, m)
        for _ in range(15):
            a = f.rand(rng, (4, 5))
            x0 = f.rand(rng, (5,))
            b = matvec(f, a, x0)
            x = solve(f, a, b)
            assert x is not None
            assert np.array_equal(matvec(f, a, x), b)
    f = Field(2)
    a = np.array([[1, 0], [1, 0]], dtype=np.int64)
    assert solve(f, a, np.array([1, 0])) is None


def test_image_basis_is_column_space():
    f = Field(3)
    a = np.array([[1, 2, 0], [0, 1, 1], [1, 0, 1]], dtype=np.int64)
    img = image_basis(f, a)
    assert img.dim == rank(f, a)
    for j in range(3):
        assert img.contains(a[:, j])


def test_matmul_matches_naive_extension_field():
    f = Field(2, 2)
    rng = random.Random(17)
    a = f.rand(rng, (3, 4))
    b = f.rand(rng, (4, 2))
    c = matmul(f, a, b)
    for i in range(3):
        for j in range(2):
            acc = 0
            for k in range(4):
                acc = f.add(acc, f.mul(int(a[i, k]), int(b[k, j])))
            assert c[i, j] == acc


def test_section_splits_ambient():
    rng = random.Random(19)
    for p, m in [(2, 1), (3, 1), (2, 2)]:
        f = Field(p, m)
        amb = Subspace(f, 8, f.rand(rng, (6, 8)))
        sub_rows = amb.rows[:2]
        sub = Subspace(f, 8, sub_rows)
        sec = Section(f, sub, amb)
        assert sec.dim == amb.dim - sub.dim
        for _ in range(10):
            coeffs = f.rand(rng, (amb.dim,))
            v = matvec(f, amb.rows.T, coeffs)
            s_part, c_part = sec.decompose(v)
            recomposed = f.add(matvec(f, sub.rows.T, s_part) if sub.dim else 0,
                               matvec(f, sec.comp.T, c_part) if sec.dim else 0)
            assert np.array_equal(np.asarray(recomposed), v)
        # class coords of anything in sub vanish
        for r in sub.rows:
            assert not np.any(sec.class_coords(r))
        # lift then project is the identity on classes
        for _ in range(5):
            c = f.rand(rng, (sec.dim,))
            assert np.array_equal(sec.class_coords(sec.lift(c)), c)


def test_subspace_intersect():
    f = Field(2)
    a = Subspace(f, 4, np.array([[1, 0, 0, 0], [0, 1, 0, 0]]))
    b = Subspace(f, 4, np.array([[0, 1, 0, 0], [0, 0, 1, 0]]))
    cap = a.intersect(b)
    assert cap.dim == 1
    assert cap.contains(np.array([0, 1, 0, 0]))


# ---------------------------------------------------------------------------
# semilinear kernels
# ---------------------------------------------------------------------------


def test_semilinear_kernel_frozen_example():
    # over GF(4): w * v^2 = 0 has only v = 0
    f = Field(2, 2)
    ker = semilinear_kernel(f, np.array([[2]], dtype=np.int64), 1)
    assert ker.dim == 0


def test_semilinear_kernel_zero_map():
    f = Field(2, 2)
    ker = semilinear_kernel(f, np.array([[0, 0]], dtype=np.int64), 1)
    assert ker.dim == 4  # all of GF(4)^2 expanded over GF(2)


def test_semilinear_kernel_matches_exhaustive_search():
    rng = random.Random(31)
    for p, m in [(2, 2), (3, 2)]:
        f = Field(p, m)
        for frob_power in (0, 1):
            mat = f.rand(rng, (2, 3))
            ker = semilinear_kernel(f, mat, frob_power)
            count = 0
            for v in itertools.product(range(f.q), repeat=3):
                v_arr = np.array(v, dtype=np.int64)
                if not np.any(matvec(f, mat, f.frobenius(v_arr, frob_power))):
                    count += 1
                    assert ker.contains(expand_vector(f, v_arr))
            assert count == p**ker.dim


def test_expand_pack_round_trip():
    for p, m in [(2, 2), (3, 3), (5, 2)]:
        f = Field(p, m)
        rng = random.Random(37)
        v = f.rand(rng, (6,))
        assert np.array_equal(pack_vector(f, expand_vector(f, v)), v)


def test_mult_and_frob_matrices_realize_maps():
    f = Field(3, 2)
    rng = random.Random(41)
    prime = Field(3, 1)
    for _ in range(30):
        a = rng.randrange(f.q)
        v = rng.randrange(f.q)
        got = matvec(prime, f.mult_matrix(a), np.array(f.digits(v)))
        assert f.from_digits(got) == f.mul(a, v)
        got_f = matvec(prime, f.frob_matrix(1), np.array(f.digits(v)))
        assert f.from_digits(got_f) == f.frobenius(v)
