from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import brute_graded_length
from hkfun import oracle
from hkfun.oracle import (
    GradedQuotientQuery,
    OracleError,
    colength_profile,
    dense_rank_modp,
    ehk_estimate,
    fn_sample,
    fthreshold_estimate,
    graded_piece_length,
    graded_piece_length_raw,
    monomial_alpha,
    parse_polynomial,
    scaling_check,
    top_nonzero_degree,
    variable_powers,
)
from hkfun.verify import QUADRIC_CONE

import numpy as np

XY_VARS = variable_powers(2, 1)
XYZ_VARS = variable_powers(3, 1)


def test_dense_rank_modp():
    assert dense_rank_modp(np.array([[1, 2], [2, 4]]), 5) == 1
    assert dense_rank_modp(np.array([[1, 2], [2, 4]]), 3) == 1
    assert dense_rank_modp(np.array([[1, 0], [0, 1]]), 2) == 2
    assert dense_rank_modp(np.array([[2, 4], [1, 2]]), 2) == 1  # 2 = 0 mod 2


def test_graded_piece_examples():
    assert graded_piece_length_raw(2, None, XY_VARS, 2, 1) == 2
    assert graded_piece_length_raw(2, None, XY_VARS, 2, 3) == 0
    # quadric cone over F3 at q=3, m=4: frozen from the definition-level
    # dense computation below
    assert graded_piece_length_raw(3, QUADRIC_CONE, XYZ_VARS, 3, 4) == 0
    assert graded_piece_length_raw(3, QUADRIC_CONE, XYZ_VARS, 3, 4) == \
        brute_graded_length(3, QUADRIC_CONE, XYZ_VARS, 3, 4, 3)


def test_query_wrapper():
    q = GradedQuotientQuery(p=3, num_vars=3, hypersurface=QUADRIC_CONE,
                            generators=tuple(XYZ_VARS), frobenius_power=3, degree=3)
    assert graded_piece_length(q) == 4
    with pytest.raises(ValueError):
        GradedQuotientQuery(p=3, num_vars=3, hypersurface=None,
                            generators=tuple(XYZ_VARS), frobenius_power=2, degree=1)


def test_structured_path_matches_definition(rng):
    """Monomial-box walk vs an independent dense elimination, on random
    trinomials over random monomial ideals."""
    for _ in range(30):
        p = rng.choice([2, 3, 5])
        q = rng.choice([p, p * p]) if p == 2 else p
        exps = rng.sample([(2, 1, 0), (0, 2, 1), (1, 0, 2), (3, 0, 0), (0, 3, 0),
                           (0, 0, 3), (1, 1, 1), (2, 0, 1), (0, 1, 2)], 3)
        h = {e: rng.randint(1, p - 1) if p > 2 else 1 for e in exps}
        if len({sum(e) for e in h}) != 1:
            continue
        n = rng.randint(1, 2)
        gens = variable_powers(3, n)
        for m in range(0, 3 * n * q + 4, rng.randint(1, 3)):
            assert graded_piece_length_raw(p, h, gens, q, m) == \
                brute_graded_length(p, h, gens, q, m, 3)


def test_dense_path_matches_definition(rng):
    # a non-monomial generator forces the dense path
    p = 5
    gens = [{(1, 0): 1, (0, 1): 1}, {(0, 2): 1}, {(2, 0): 1}]  # (x+y, y^2, x^2)
    for q in (5, 25):
        for m in range(0, 11):
            assert graded_piece_length_raw(p, None, gens, q, m) == \
                brute_graded_length(p, None, gens, q, m, 2)


def test_profile_box_case_exact():
    profile = colength_profile(5, None, XY_VARS, 5)
    assert profile.lengths == {m: min(m + 1, 9 - m) for m in range(9)}
    assert profile.top_nonzero == 8


def test_profile_quadric_cone():
    profile = colength_profile(3, QUADRIC_CONE, XYZ_VARS, 3)
    assert profile.lengths == {0: 1, 1: 3, 2: 5, 3: 4}
    assert profile.top_nonzero == 3


def test_profile_monotone_under_more_generators(rng):
    for _ in range(10):
        p = rng.choice([2, 3])
        q = rng.choice([2, 4]) if p == 2 else 3
        base = variable_powers(2, rng.randint(1, 2))
        extra = base + [{(rng.randint(1, 2), rng.randint(1, 2)): 1}]
        for m in range(0, 10):
            small = graded_piece_length_raw(p, None, extra, q, m)
            big = graded_piece_length_raw(p, None, base, q, m)
            assert small <= big


def test_profile_detects_infinite_colength():
    with pytest.raises(OracleError):
        colength_profile(3, None, [{(1, 0): 1}], 3)  # (x) alone in k[x,y]


def test_top_nonzero_matches_profile(rng):
    cases = [(3, QUADRIC_CONE, XYZ_VARS, 3), (3, QUADRIC_CONE, XYZ_VARS, 9),
             (5, None, XY_VARS, 5), (2, None, variable_powers(2, 2), 4)]
    for p, h, gens, q in cases:
        profile = colength_profile(p, h, gens, q)
        assert top_nonzero_degree(p, h, gens, q) == profile.top_nonzero


def test_profile_thread_determinism():
    serial = colength_profile(3, QUADRIC_CONE, XYZ_VARS, 9)
    threaded = colength_profile(3, QUADRIC_CONE, XYZ_VARS, 9, threads=4)
    assert serial.lengths == threaded.lengths
    assert serial.top_nonzero == threaded.top_nonzero


def test_fn_sample():
    assert fn_sample(5, None, XY_VARS, 5, Fraction(1)) == Fraction(4, 5)
    # convergence to the tent at a grid of points
    for q, p in ((5, 5), (25, 5)):
        for k in range(0, 11):
            x = Fraction(k, 4)
            tent = max(Fraction(0), 1 - abs(x - 1)) if x <= 2 else Fraction(0)
            assert abs(fn_sample(p, None, XY_VARS, q, x) - tent) <= Fraction(2, q)
    # quadric cone density at x=1 is 2
    assert abs(fn_sample(3, QUADRIC_CONE, XYZ_VARS, 9, Fraction(1)) - 2) <= Fraction(2, 9)
    # far beyond the support everything vanishes
    assert fn_sample(3, QUADRIC_CONE, XYZ_VARS, 9, Fraction(4)) == 0


def test_ehk_estimates():
    assert ehk_estimate(5, None, XY_VARS, 5) == 1
    quadric9 = ehk_estimate(3, QUADRIC_CONE, XYZ_VARS, 9)
    assert abs(quadric9 - Fraction(3, 2)) <= Fraction(1, 10)


def test_fthreshold_estimates():
    assert fthreshold_estimate(3, QUADRIC_CONE, 1, 3) == 1  # top 3 at q=3
    est9 = fthreshold_estimate(3, QUADRIC_CONE, 1, 9)
    assert abs(est9 - Fraction(3, 2)) <= Fraction(3, 9)


def test_fthreshold_monotone_convergence():
    # the estimate at q*p never exceeds the estimate at q by more than 1/q
    prev_q, prev = 3, fthreshold_estimate(3, QUADRIC_CONE, 1, 3)
    for q in (9, 27):
        cur = fthreshold_estimate(3, QUADRIC_CONE, 1, q)
        assert cur <= prev + Fraction(1, prev_q)
        prev_q, prev = q, cur


def test_monomial_alpha_examples():
    assert monomial_alpha(2, [{(2, 0): 1}, {(1, 1): 1}, {(0, 3): 1}]) == 4
    assert monomial_alpha(2, [{(1, 0): 1}, {(0, 1): 1}]) == 2
    assert monomial_alpha(3, [{(2, 0, 0): 1}, {(0, 2, 0): 1}, {(0, 0, 2): 1}]) == 6


def test_monomial_alpha_rejects_infinite_colength():
    with pytest.raises(ValueError):
        monomial_alpha(2, [{(2, 0): 1}, {(1, 1): 1}])


def test_scaling_check():
    assert scaling_check(3, QUADRIC_CONE, XYZ_VARS, 3, 3)
    assert scaling_check(2, None, XY_VARS, 2, 4)
    # negative control: a deliberately corrupted bracket must disagree with
    # I^[9] at some degree
    corrupted = [oracle.frobenius_power(g, 3, 3)
                 for g in ({(2, 0, 0): 1}, {(0, 1, 0): 1}, {(0, 0, 1): 1})]
    assert any(
        graded_piece_length_raw(3, QUADRIC_CONE, corrupted, 3, m) !=
        graded_piece_length_raw(3, QUADRIC_CONE, XYZ_VARS, 9, m)
        for m in range(16)
    )


def test_parse_polynomial():
    assert parse_polynomial("x*y - z^2", 3) == {(1, 1, 0): 1, (0, 0, 2): -1}
    assert parse_polynomial("x^4+y^4+z^4", 3) == {(4, 0, 0): 1, (0, 4, 0): 1, (0, 0, 4): 1}
    assert parse_polynomial("3*x^2*w", 4) == {(2, 0, 0, 1): 3}
    with pytest.raises(ValueError):
        parse_polynomial("x + q", 3)


def test_determinism():
    a = colength_profile(3, QUADRIC_CONE, XYZ_VARS, 9)
    b = colength_profile(3, QUADRIC_CONE, XYZ_VARS, 9)
    assert a == b and a.lengths == b.lengths
