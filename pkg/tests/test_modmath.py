"""
模运算与切比雪夫预测滤波器构造测试
"""
import math
from dataclasses import replace

import mpmath
import numpy as np
import pytest

from modulo_sampling_py.common.errors import InvalidArgumentError
from modulo_sampling_py.core import (
    LaurentPoly,
    build_pk,
    chebyshev_value,
    difference_in_band_bound,
    difference_taps,
    eval_on_unit_circle,
    in_band_max,
    mod_reduce,
    pk_sequence,
    precision_digits,
    white_noise_gain
)

BAND_EDGES = [-1.9, -1.0, 0.0, 1.0, 1.9]
MAX_ORDER = 200


def edge_frequency(a: float) -> float:
    return math.acos(a / 2) / (2 * math.pi)


@pytest.mark.parametrize("x, delta, expected", [
    (0.0, 1.0, 0.0),
    (0.6, 1.0, -0.4),
    (-0.5, 1.0, -0.5),
    (2.25, 1.0, 0.25),
    (0.5, 1.0, -0.5),
    (-0.05, 0.1, -0.05)
])
def test_mod_reduce_examples(x, delta, expected):
    assert mod_reduce(x, delta) == pytest.approx(expected, abs=1e-15)


def test_mod_reduce_mpf_keeps_type():
    with mpmath.workdps(40):
        r = mod_reduce(mpmath.mpf('2.25'), mpmath.mpf(1))
        assert isinstance(r, mpmath.mpf)
        assert r == mpmath.mpf('0.25')


@pytest.mark.parametrize("x, delta", [
    (1.0, 0.0),
    (1.0, -1.0),
    (float('inf'), 1.0),
    (float('nan'), 1.0),
    (1.0, float('inf'))
])
def test_mod_reduce_invalid(x, delta):
    with pytest.raises(InvalidArgumentError):
        mod_reduce(x, delta)


def test_mod_reduce_randomized_properties():
    """10^5 次随机检查: 区间、Δ整数倍、平移不变性"""
    rng = np.random.default_rng(20240601)
    xs = rng.uniform(-50.0, 50.0, 100000)
    bs = rng.uniform(-50.0, 50.0, 100000)
    deltas = rng.uniform(0.01, 5.0, 100000)
    for x, b, delta in zip(xs, bs, deltas):
        x, b, delta = float(x), float(b), float(delta)
        r = mod_reduce(x, delta)
        assert -delta / 2 <= r < delta / 2
        multiple = (x - r) / delta
        assert abs(multiple - round(multiple)) <= 1e-9

        left = mod_reduce(r + b, delta)
        right = mod_reduce(x + b, delta)
        # 两侧可能分别落在 ±Δ/2 附近, 按圆周距离比较
        gap = abs(left - right)
        assert min(gap, delta - gap) <= 1e-9 * delta


def test_chebyshev_value_examples():
    assert chebyshev_value(0, 0.3) == 1.0
    assert chebyshev_value(1, 0.3) == 0.3
    assert chebyshev_value(2, 0.5) == pytest.approx(-0.5)
    assert chebyshev_value(7, math.cos(0.4)) == pytest.approx(math.cos(2.8), abs=1e-12)
    with pytest.raises(InvalidArgumentError):
        chebyshev_value(-1, 0.3)


def test_chebyshev_value_cosine_oracle():
    """T_k(cos θ) = cos(kθ), k ≤ 50, 1000 个 θ"""
    thetas = np.linspace(0.0, math.pi, 1000)
    for k in range(51):
        for theta in thetas:
            value = chebyshev_value(k, math.cos(theta))
            assert abs(value - math.cos(k * theta)) <= 1e-8


def test_laurent_poly_arithmetic():
    p = LaurentPoly((1, -1, 1))
    q = LaurentPoly((2,))
    assert (p * p).coeffs == (1, -2, 3, -2, 1)
    assert (p - q).coeffs == (-1, -1, 1)
    assert (p + q.shift(2)).coeffs == (1, -1, 3)
    assert (p * 3).coeffs == (3, -3, 3)
    assert LaurentPoly((1, 2, 0, 0)).trim().coeffs == (1, 2)
    assert p.is_palindromic()
    assert not LaurentPoly((1, 2, 3)).is_palindromic()
    assert p(mpmath.mpf(2)) == 3
    with pytest.raises(InvalidArgumentError):
        LaurentPoly(())


def test_build_pk_first_order():
    """p_1(z) = z² - z + 1 (a = 0)"""
    taps = build_pk(1, 0.0)
    assert len(taps.taps) == 2
    assert taps.taps[0] == 1
    assert taps.taps[1] == -1
    assert taps.guaranteed_bound == 1
    assert taps.polynomial.coeffs == (1, -1, 1)


def test_build_pk_second_order():
    taps = build_pk(2, 0.0)
    poly = taps.polynomial
    assert poly.is_palindromic()
    with mpmath.workdps(taps.dps):
        assert abs(poly(mpmath.mpf(1)) - mpmath.mpf('0.5')) < mpmath.mpf(10) ** -12


def test_build_pk_small_orders_by_expansion():
    """k ≤ 3 与 z^K·T_K^{[a,2]}(z + 1/z) 的直接展开一致"""
    a = 0.5
    c = a / 2 + 1
    r = (2 - a) / 2
    z_plus = np.polynomial.Polynomial
    for k in range(1, 4):
        # T_K^{[a,2]}(y) = 2·(r/2)^K·T_K((y - c)/r)
        cheb = np.polynomial.Chebyshev.basis(k).convert(kind=np.polynomial.Polynomial)
        monic = 2 * (r / 2) ** k * cheb(z_plus([-c / r, 1 / r]))
        expanded = np.zeros(2 * k + 1)
        for j, coef in enumerate(monic.coef):
            # z^K·(z + 1/z)^j
            binom = np.array([math.comb(j, i) for i in range(j + 1)], dtype=float)
            expanded[k - j:k + j + 1:2] += coef * binom
        taps = build_pk(k, a)
        coeffs = [float(v) for v in taps.polynomial.coeffs]
        assert coeffs == pytest.approx(list(expanded), abs=1e-12)
        assert taps.taps[-1] == -1


@pytest.mark.parametrize("a", BAND_EDGES)
def test_pk_invariants_up_to_order_200(a):
    """h_{2K} = -1, 回文性, p_K(1) = 2((2-a)/4)^K"""
    dps = precision_digits(MAX_ORDER, a)
    s = (2 - mpmath.mpf(a)) / 4
    count = 0
    for taps in pk_sequence(a, MAX_ORDER, dps):
        k = taps.k
        count += 1
        assert len(taps.taps) == 2 * k
        assert taps.taps[-1] == -1
        poly = taps.polynomial
        assert poly.is_palindromic(rel_tol=1e-9)
        with mpmath.workdps(dps):
            expected = 2 * s ** k
            assert abs(poly(mpmath.mpf(1)) - expected) <= 1e-9 * expected
            assert abs(taps.guaranteed_bound - expected) <= 1e-12 * expected
    assert count == MAX_ORDER


def test_pk_sequence_matches_build_pk():
    sequence = list(pk_sequence(1.0, 5))
    direct = build_pk(5, 1.0, sequence[-1].dps)
    assert sequence[-1].taps == direct.taps


@pytest.mark.parametrize("a", [-2.0, 2.0, 2.5])
def test_build_pk_rejects_band_edge(a):
    with pytest.raises(InvalidArgumentError):
        build_pk(3, a)


def test_build_pk_rejects_order():
    with pytest.raises(InvalidArgumentError):
        build_pk(0, 0.0)


def test_precision_digits_grows_with_order():
    assert precision_digits(10, 0.0) < precision_digits(100, 0.0)
    assert precision_digits(10, -1.0) < precision_digits(10, 1.9)
    assert precision_digits(1, 0.0, headroom=0) <= 1


def test_eval_on_unit_circle_examples():
    taps = build_pk(1, 0.0)
    assert float(eval_on_unit_circle(taps, 0.25)) == pytest.approx(1.0)
    assert float(eval_on_unit_circle(taps, 0.5)) == pytest.approx(3.0)
    assert float(eval_on_unit_circle(taps, 0.0)) == pytest.approx(1.0)

    taps = build_pk(9, -1.0)
    expected = 2 * (3 / 4) ** 9
    assert float(eval_on_unit_circle(taps, 0.0)) == pytest.approx(expected, rel=1e-9)


def test_in_band_max_examples():
    taps = build_pk(1, 0.0)
    assert float(in_band_max(taps, 0.25, 1001)) <= 1 + 1e-6
    assert float(in_band_max(taps, 0.25, 1001)) == pytest.approx(1.0, rel=1e-6)

    taps = build_pk(6, 0.0)
    assert float(in_band_max(taps, 0.25, 4097)) <= 0.03125 * (1 + 1e-6)

    # 两点网格只看端点
    taps = build_pk(3, 0.0)
    endpoints = max(eval_on_unit_circle(taps, 0.0), eval_on_unit_circle(taps, 0.25))
    assert float(in_band_max(taps, 0.25, 2)) == pytest.approx(float(endpoints), rel=1e-9)


def test_in_band_max_matches_direct_evaluation():
    """Clenshaw 求值与系数直接求值一致"""
    taps = build_pk(15, 0.5)
    edge = edge_frequency(0.5)
    grid = np.linspace(0.0, edge, 33)
    direct = max(eval_on_unit_circle(taps, f) for f in grid)
    assert float(in_band_max(taps, edge, 33)) == pytest.approx(float(direct), rel=1e-9)


def closed_form_in_band_max(k: int, a: float, edge: float, points: int) -> mpmath.mpf:
    """|p_K(e^{iθ})| = 2·s^K·|T_K((2cosθ - c)/r)|, c = a/2 + 1, r = (2 - a)/2"""
    with mpmath.workdps(40):
        a = mpmath.mpf(a)
        s = (2 - a) / 4
        c = a / 2 + 1
        r = (2 - a) / 2
        best = mpmath.mpf(0)
        for f in np.linspace(0.0, edge, points):
            y = (2 * mpmath.cos(2 * mpmath.pi * mpmath.mpf(f)) - c) / r
            y = min(max(y, mpmath.mpf(-1)), mpmath.mpf(1))
            best = max(best, 2 * s ** k * abs(mpmath.cos(k * mpmath.acos(y))))
        return best


@pytest.mark.parametrize("a", [0.0, -1.0])
@pytest.mark.parametrize("k", [25, 40, 60])
def test_in_band_max_matches_closed_form(a, k):
    """高阶时带内最大值与闭式求值一致, 系数不得按双精度舍入"""
    taps = build_pk(k, a)
    edge = edge_frequency(a)
    expected = closed_form_in_band_max(k, a, edge, 257)
    assert float(in_band_max(taps, edge, 257)) == pytest.approx(float(expected), rel=1e-9)


def test_polynomial_keeps_construction_precision():
    """在默认精度下读取系数, 仍保留构造精度"""
    taps = build_pk(40, 0.0)
    poly = taps.polynomial
    with mpmath.workdps(taps.dps):
        value = abs(poly(mpmath.mpf(1)))
        expected = 2 * (mpmath.mpf(2) / 4) ** 40
        assert abs(value - expected) <= mpmath.mpf('1e-9') * expected


@pytest.mark.parametrize("a", BAND_EDGES)
def test_in_band_max_within_bound_every_order(a):
    """K = 1…200 逐阶检查; 65 点网格逐阶, 4097 点网格查低阶与最高阶"""
    edge = edge_frequency(a)
    tolerance = 1 + mpmath.mpf('1e-6')
    for taps in pk_sequence(a, MAX_ORDER):
        # 各阶按自身所需精度求值
        taps = replace(taps, dps=precision_digits(taps.k, a))
        points = 4097 if taps.k <= 5 or taps.k == MAX_ORDER else 65
        value = in_band_max(taps, edge, points)
        assert value <= taps.guaranteed_bound * tolerance, f"K={taps.k}, 网格={points}"


def test_in_band_max_invalid_arguments():
    taps = build_pk(2, 0.0)
    with pytest.raises(InvalidArgumentError):
        in_band_max(taps, 0.25, 1)
    with pytest.raises(InvalidArgumentError):
        in_band_max(taps, 0.5, 10)


def test_difference_taps():
    assert difference_taps(1) == [1]
    assert difference_taps(2) == [2, -1]
    assert difference_taps(3) == [3, -3, 1]
    with pytest.raises(InvalidArgumentError):
        difference_taps(0)


def test_difference_in_band_bound():
    assert difference_in_band_bound(1, 1 / 6) == pytest.approx(1.0)
    # W·T_s = 0.45 时 2sin(πf) > 1, 阶数越高带内增益越大
    assert difference_in_band_bound(8, 0.45) > difference_in_band_bound(1, 0.45) > 1


def test_white_noise_gain():
    assert float(white_noise_gain([1])) == pytest.approx(math.sqrt(2))
    assert float(white_noise_gain(difference_taps(2))) == pytest.approx(math.sqrt(6))
    small = white_noise_gain(build_pk(3, -1.0).taps)
    large = white_noise_gain(build_pk(30, -1.0).taps)
    assert large > 1000 * small
