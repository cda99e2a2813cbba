import math
import threading

import pytest
from hypothesis import given, strategies as st

from overmahon import core_numbers as cn
from overmahon.errors import InvalidArgumentError, SubtractionUnderflowError
from tests.oracles import brute_row, odd_product, poly_row

PUBLISHED_ROWS = {
    1: [1],
    2: [1, 2],
    3: [1, 4, 6, 4],
    4: [1, 6, 16, 26, 28, 20, 8],
    5: [1, 8, 30, 72, 126, 172, 188, 164, 112, 56, 16],
}


@pytest.mark.parametrize("n", sorted(PUBLISHED_ROWS))
def test_published_rows_all_methods(n):
    assert cn.row_by_recurrence(n) == PUBLISHED_ROWS[n]
    assert cn.row_by_alt_recurrence(n) == PUBLISHED_ROWS[n]
    assert cn.row_by_genfun(n).tolist() == PUBLISHED_ROWS[n]


@pytest.mark.parametrize("n", range(1, 7))
def test_rows_match_brute_force(n):
    assert cn.row_by_recurrence(n) == brute_row(n)


@pytest.mark.parametrize("n", range(1, 31))
def test_three_methods_agree_and_match_convolution(n):
    a = cn.row_by_recurrence(n)
    assert a == cn.row_by_alt_recurrence(n) == cn.row_by_genfun(n).tolist() == poly_row(n)
    assert len(a) == math.comb(n, 2) + 1
    assert a[0] == 1


def test_genfun_examples():
    assert cn.row_by_genfun(1).tolist() == [1]
    assert cn.row_by_genfun(5)[6] == 188
    assert cn.row_by_genfun(5).degree == 10
    # f_n(1) is the row sum
    assert cn.row_by_genfun(6)(1) == odd_product(11)


def test_row_four_is_not_palindromic():
    row = cn.row_by_recurrence(4)
    assert row != row[::-1]


def test_triangle_zero_outside_support():
    assert cn.triangle(4, -1) == 0
    assert cn.triangle(4, 7) == 0
    assert cn.triangle(4, 6) == 8
    tri = cn.OverMahonianTriangle.generate(5)
    assert tri[5, 6] == 188
    assert tri[3, -2] == 0 and tri[3, 4] == 0
    assert tri.n_max == 5
    assert 0 not in tri.row(5)
    with pytest.raises(KeyError):
        tri[6, 0]


def test_triangle_with_alternate_method():
    a = cn.OverMahonianTriangle.generate(8)
    b = cn.OverMahonianTriangle.generate(8, cn.row_by_alt_recurrence)
    assert a == b


@pytest.mark.parametrize("bad", [0, -3, 2.5, True])
def test_nonpositive_n_rejected(bad):
    with pytest.raises(InvalidArgumentError):
        cn.row_by_recurrence(bad)
    with pytest.raises(InvalidArgumentError):
        cn.row_by_alt_recurrence(bad)
    with pytest.raises(InvalidArgumentError):
        cn.row_by_genfun(bad)


def test_checked_sub():
    assert cn.checked_sub(5, 5) == 0
    with pytest.raises(SubtractionUnderflowError):
        cn.checked_sub(3, 4)


def test_double_factorial():
    assert cn.double_factorial(1) == 1
    assert cn.double_factorial(5) == 15
    assert cn.double_factorial(9) == 945
    for bad in (0, 2, 10, -1):
        with pytest.raises(InvalidArgumentError):
            cn.double_factorial(bad)


def test_row_sum_examples():
    assert cn.row_sum(3) == 15
    assert cn.row_sum(5) == 945
    assert cn.row_sum(10) == 1 * 3 * 5 * 7 * 9 * 11 * 13 * 15 * 17 * 19


@pytest.mark.parametrize("n", range(1, 21))
def test_row_sum_law(n):
    assert cn.row_sum(n) == cn.double_factorial(2 * n - 1) == odd_product(2 * n - 1)


def test_values_exceed_machine_words():
    # (2n-1)!! passes 2^64 before n = 20
    assert cn.row_sum(20) > 2 ** 64


def test_total_inversion_examples():
    assert cn.total_inversions_by_recursion(1) == 0
    assert cn.total_inversions_by_moment(2) == 2
    assert cn.total_inversions_by_recursion(3) == 28
    assert cn.total_inversions_by_recursion(4) == cn.total_inversions_by_moment(4) == 376
    assert cn.total_inversions_by_moment(5) == 5484
    assert 105 * 20 + 9 * 376 == 5484


@pytest.mark.parametrize("n", range(1, 21))
def test_moment_law(n):
    assert cn.total_inversions_by_moment(n) == cn.total_inversions_by_recursion(n)


@pytest.mark.parametrize("n", range(1, 6))
def test_moment_matches_brute_force(n):
    row = brute_row(n)
    assert sum(k * v for k, v in enumerate(row)) == cn.total_inversions_by_recursion(n)


def test_identity_suite_examples():
    rep4 = cn.identity_suite(4)
    assert rep4.passed
    assert cn.row_by_recurrence(4)[-1] == 8
    assert cn.row_by_recurrence(5)[1] == 8
    rep1 = cn.identity_suite(1)
    assert rep1.passed
    assert [c.name for c in rep1.checks] == ["top_entry", "k1_entry", "even_entries"]
    assert "vacuous" in rep1.checks[1].detail


@pytest.mark.parametrize("n", range(1, 21))
def test_identity_suite_passes(n):
    rep = cn.identity_suite(n)
    assert rep.passed, rep
    assert all(c.offender is None for c in rep.checks)


def test_identity_suite_reports_offender(monkeypatch):
    real = cn.row_by_recurrence

    def broken(n):
        row = real(n)
        row[2] += 1
        return row

    monkeypatch.setattr(cn, "row_by_recurrence", broken)
    rep = cn.identity_suite(4)
    assert not rep.passed
    parity = next(c for c in rep.checks if c.name == "even_entries")
    assert parity.offender == (4, 2)


def test_four_term_underflow_surfaces(monkeypatch):
    # a corrupted cached row is the only way to reach a negative difference
    cn._four_term_cache.clear()
    monkeypatch.setitem(cn._four_term_cache._rows, 2, (0, -1))
    try:
        with pytest.raises(SubtractionUnderflowError, match=r"n=3, k=1"):
            cn.row_by_alt_recurrence(3)
    finally:
        cn._four_term_cache.clear()


def test_dense_polynomial():
    assert cn.DensePolynomial((1, 2, 0, 0)).coefficients == (1, 2)
    assert cn.DensePolynomial(()).coefficients == (0,)
    assert cn.DensePolynomial((0, 0)).coefficients == (0,)
    p = cn.DensePolynomial((1, 2)) * cn.DensePolynomial((1, 2, 2))
    assert p.tolist() == [1, 4, 6, 4]
    assert p[7] == 0 and p[-1] == 0
    with pytest.raises(InvalidArgumentError):
        cn.DensePolynomial((1, -1))


@given(st.lists(st.integers(0, 50), min_size=1, max_size=6),
       st.lists(st.integers(0, 50), min_size=1, max_size=6),
       st.integers(-3, 3))
def test_polynomial_product_evaluates_multiplicatively(a, b, z):
    pa, pb = cn.DensePolynomial(tuple(a)), cn.DensePolynomial(tuple(b))
    assert (pa * pb)(z) == pa(z) * pb(z)


def test_caches_are_thread_safe():
    cn._additive_cache.clear()
    results = []

    def work():
        results.append(cn.row_by_recurrence(25))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert all(r == poly_row(25) for r in results)
