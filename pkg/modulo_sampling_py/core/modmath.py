"""
ModSampling 模运算与切比雪夫预测滤波器构造
"""
import logging
import math
from dataclasses import dataclass
from typing import Iterator, List, Sequence, Tuple, Union

import mpmath
import numpy as np
from numpy.polynomial import chebyshev as npcheb

from ..common.errors import InvalidArgumentError

logger = logging.getLogger(__name__)

Real = Union[int, float, mpmath.mpf]

DEFAULT_HEADROOM_DIGITS = 15
DEFAULT_GRID_POINTS = 4097
BOUND_TOLERANCE = 1e-6
# 条件数不超过 10^5 时频响直接用双精度求值
FLOAT_PATH_DIGITS = 5


def _is_mp(*values) -> bool:
    return any(isinstance(v, (mpmath.mpf, mpmath.mpc)) for v in values)


def mod_reduce(x: Real, delta: Real) -> Real:
    """
    将 x 约化到 [-Δ/2, Δ/2)

    Args:
        x: 实数(float 或 mpf)
        delta: 模数 Δ

    Returns:
        满足 x - r ∈ ΔZ 的唯一 r, 类型与输入一致

    Raises:
        InvalidArgumentError: Δ 非正, 或 x / Δ 非有限
    """
    if not (delta > 0 and mpmath.isfinite(delta)):
        raise InvalidArgumentError(f"模数必须为有限正数: {delta}")
    if not mpmath.isfinite(x):
        raise InvalidArgumentError(f"输入必须为有限实数: {x}")

    if _is_mp(x, delta):
        x = mpmath.mpf(x)
        delta = mpmath.mpf(delta)
        r = x - delta * mpmath.floor(x / delta + mpmath.mpf(0.5))
    else:
        x = float(x)
        delta = float(delta)
        r = x - delta * math.floor(x / delta + 0.5)

    # 舍入可能恰好落在 Δ/2, 强制半开区间
    half = delta / 2
    if r >= half:
        r -= delta
    elif r < -half:
        r += delta
    return r


def chebyshev_value(k: int, y: Real) -> Real:
    """
    用三项递推求第一类切比雪夫多项式 T_k(y)

    Args:
        k: 阶数, 非负
        y: 自变量

    Returns:
        T_k(y)
    """
    if k < 0:
        raise InvalidArgumentError(f"切比雪夫阶数不能为负: {k}")
    t_prev, t_curr = y * 0 + 1, y
    if k == 0:
        return t_prev
    for _ in range(1, k):
        t_prev, t_curr = t_curr, 2 * y * t_curr - t_prev
    return t_curr


@dataclass(frozen=True)
class LaurentPoly:
    """z 的多项式, 系数按 z^0 … z^D 升幂存放"""
    coeffs: Tuple[Real, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        if not coeffs:
            raise InvalidArgumentError("多项式系数不能为空")
        object.__setattr__(self, 'coeffs', coeffs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def as_array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=object)

    def _zero(self) -> Real:
        return self.coeffs[0] * 0

    def _padded(self, size: int) -> Tuple[Real, ...]:
        return self.coeffs + (self._zero(),) * (size - len(self.coeffs))

    def trim(self) -> 'LaurentPoly':
        """去掉末尾的零系数"""
        coeffs = list(self.coeffs)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        return LaurentPoly(tuple(coeffs))

    def shift(self, n: int) -> 'LaurentPoly':
        """乘以 z^n"""
        if n < 0:
            raise InvalidArgumentError(f"只支持非负次移位: {n}")
        return LaurentPoly((self._zero(),) * n + self.coeffs)

    def __add__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        size = max(len(self.coeffs), len(other.coeffs))
        return LaurentPoly(
            tuple(a + b for a, b in zip(self._padded(size), other._padded(size)))
        )

    def __sub__(self, other: 'LaurentPoly') -> 'LaurentPoly':
        size = max(len(self.coeffs), len(other.coeffs))
        return LaurentPoly(
            tuple(a - b for a, b in zip(self._padded(size), other._padded(size)))
        )

    def __mul__(self, other) -> 'LaurentPoly':
        if isinstance(other, LaurentPoly):
            return LaurentPoly(tuple(np.convolve(self.as_array(), other.as_array())))
        return LaurentPoly(tuple(c * other for c in self.coeffs))

    __rmul__ = __mul__

    def __call__(self, z):
        return mpmath.polyval(list(reversed(self.coeffs)), z)

    def is_palindromic(self, rel_tol: float = 1e-9) -> bool:
        """检查 z^j 与 z^{D-j} 系数是否相等(相对最大系数)"""
        scale = max(abs(c) for c in self.coeffs) or 1
        return all(
            abs(c - d) <= rel_tol * scale
            for c, d in zip(self.coeffs, reversed(self.coeffs))
        )


@dataclass(frozen=True)
class PredictorTaps:
    """切比雪夫预测多项式 p_K(z) = 1 - h_1 z - … - h_{2K} z^{2K}"""
    k: int                      # 切比雪夫阶数 K
    band_edge_a: Real           # a = 2cos(2πW·T_s)
    taps: Tuple[Real, ...]      # h_1 … h_{2K}
    guaranteed_bound: Real      # 2·((2-a)/4)^K
    dps: int = DEFAULT_HEADROOM_DIGITS  # 构造时的十进制工作精度

    @property
    def polynomial(self) -> LaurentPoly:
        # 按构造精度取负, 不受调用处上下文精度影响
        with mpmath.workdps(self.dps):
            one = self.taps[0] * 0 + 1
            return LaurentPoly((one,) + tuple(-h for h in self.taps))


def _check_band_edge(band_edge_a: Real):
    if not -2 < band_edge_a < 2:
        raise InvalidArgumentError(
            f"带边参数必须位于(-2, 2): {band_edge_a}"
        )


def _outer_radius(band_edge_a: Real) -> float:
    a = float(band_edge_a)
    u = (6.0 + a) / (2.0 - a)
    return u + math.sqrt(max(u * u - 1.0, 0.0))


def precision_digits(
    k: int,
    band_edge_a: Real,
    headroom: int = DEFAULT_HEADROOM_DIGITS
) -> int:
    """
    估算构造 p_K 所需的十进制工作精度

    单项式系数按 ρ^K 增长(ρ 为 z=-1 处映射点的外半径), 而带内取值只有
    2·((2-a)/4)^K, 求和抵消损失约 K·log10(ρ) 位.

    Args:
        k: 切比雪夫阶数
        band_edge_a: 带边参数 a
        headroom: 额外保留的有效位数

    Returns:
        十进制位数
    """
    _check_band_edge(band_edge_a)
    lost = k * math.log10(_outer_radius(band_edge_a))
    return int(math.ceil(lost)) + headroom


def _taps_from_poly(k: int, a, poly: LaurentPoly, s, dps: int) -> PredictorTaps:
    coeffs = poly.coeffs
    if len(coeffs) != 2 * k + 1 or coeffs[0] != 1:
        raise InvalidArgumentError(f"p_{k} 的系数结构异常")
    return PredictorTaps(
        k=k,
        band_edge_a=a,
        taps=tuple(-c for c in coeffs[1:]),
        guaranteed_bound=2 * s ** k,
        dps=dps
    )


def pk_sequence(
    band_edge_a: Real,
    k_max: int,
    dps: int = None
) -> Iterator[PredictorTaps]:
    """
    一次递推依次生成 p_1 … p_{k_max}

    Q_0 = 2, Q_1 = z² - (a/2+1)z + 1,
    Q_K = (z² - (a/2+1)z + 1)·Q_{K-1} - s²·z²·Q_{K-2}, s = (2-a)/4

    Args:
        band_edge_a: 带边参数 a ∈ (-2, 2)
        k_max: 最大阶数
        dps: 工作精度, 默认按 k_max 估算

    Yields:
        各阶 PredictorTaps
    """
    if k_max < 1:
        raise InvalidArgumentError(f"切比雪夫阶数必须为正: {k_max}")
    _check_band_edge(band_edge_a)
    if dps is None:
        dps = precision_digits(k_max, band_edge_a)

    with mpmath.workdps(dps):
        a = mpmath.mpf(band_edge_a)
        s = (2 - a) / 4
        s2 = s * s
        one = mpmath.mpf(1)
        base = LaurentPoly((one, -(a / 2 + 1), one))
        q_prev = LaurentPoly((mpmath.mpf(2),))
        q_curr = base

    for k in range(1, k_max + 1):
        with mpmath.workdps(dps):
            if k > 1:
                q_prev, q_curr = q_curr, base * q_curr - (q_prev * s2).shift(2)
            taps = _taps_from_poly(k, a, q_curr, s, dps)
        yield taps


def build_pk(k: int, band_edge_a: Real, dps: int = None) -> PredictorTaps:
    """
    构造 p_K(z) = z^K · T_K^{[a,2]}(z + 1/z) 的预测抽头

    Args:
        k: 切比雪夫阶数 K ≥ 1
        band_edge_a: 带边参数 a ∈ (-2, 2)
        dps: 工作精度, 默认按 K 与 a 估算

    Returns:
        PredictorTaps

    Raises:
        InvalidArgumentError: K < 1 或 a 不在开区间内
    """
    if k < 1:
        raise InvalidArgumentError(f"切比雪夫阶数必须为正: {k}")
    taps = None
    for taps in pk_sequence(band_edge_a, k, dps):
        pass
    logger.debug(f"构造 p_{k}: a={float(band_edge_a):.6g}, 精度={taps.dps}位")
    return taps


def eval_on_unit_circle(taps: PredictorTaps, f_norm: Real) -> mpmath.mpf:
    """
    |p_K(e^{-2πi·f_norm})|, 由系数直接求值

    Args:
        taps: 预测抽头
        f_norm: 归一化频率 f·T_s

    Returns:
        幅度(mpf)
    """
    with mpmath.workdps(taps.dps):
        z = mpmath.expj(-2 * mpmath.pi * mpmath.mpf(f_norm))
        return abs(taps.polynomial(z))


def in_band_max(
    taps: PredictorTaps,
    f_norm_edge: float,
    grid_points: int = DEFAULT_GRID_POINTS
) -> mpmath.mpf:
    """
    在 [0, f_norm_edge] 的均匀网格上求 |p_K| 的最大值

    由回文性 z^{-K}p_K(z) = c_K + 2Σ_j c_{K+j}·cos(jθ), 用 Clenshaw 求值.

    Args:
        taps: 预测抽头
        f_norm_edge: 归一化带边
        grid_points: 网格点数

    Returns:
        网格最大值(mpf)
    """
    if grid_points < 2:
        raise InvalidArgumentError(f"网格点数至少为2: {grid_points}")
    if not 0 < f_norm_edge < 0.5:
        raise InvalidArgumentError(f"归一化带边必须位于(0, 1/2): {f_norm_edge}")

    k = taps.k
    freqs = np.linspace(0.0, f_norm_edge, grid_points)

    with mpmath.workdps(taps.dps):
        coeffs = taps.polynomial.coeffs
        series = [coeffs[k]] + [2 * c for c in coeffs[k + 1:]]

    if precision_digits(k, taps.band_edge_a, headroom=0) <= FLOAT_PATH_DIGITS:
        values = npcheb.chebval(
            np.cos(2 * np.pi * freqs),
            np.array([float(c) for c in series])
        )
        return mpmath.mpf(float(np.max(np.abs(values))))

    with mpmath.workdps(taps.dps):
        nodes = np.array(
            [mpmath.cos(2 * mpmath.pi * mpmath.mpf(f)) for f in freqs],
            dtype=object
        )
        values = npcheb.chebval(nodes, np.array(series, dtype=object))
        return max(abs(v) for v in values)


def difference_taps(order: int) -> List[int]:
    """(1 - z)^L = 1 - h_1 z - … - h_L z^L 的抽头"""
    if order < 1:
        raise InvalidArgumentError(f"差分阶数必须为正: {order}")
    return [(-1) ** (i + 1) * math.comb(order, i) for i in range(1, order + 1)]


def difference_in_band_bound(order: int, f_norm_edge: float) -> float:
    """|1 - e^{-2πif}|^L 在 |f| ≤ f_norm_edge 上的最大值"""
    return (2.0 * math.sin(math.pi * f_norm_edge)) ** order


def white_noise_gain(taps: Sequence[Real]) -> mpmath.mpf:
    """
    单位首项滤波器 c = (1, -h_1, …, -h_L) 的 ℓ2 范数

    加性白噪声经预测误差滤波器后按此倍数放大.
    """
    dps = max(mpmath.mp.dps, DEFAULT_HEADROOM_DIGITS)
    with mpmath.workdps(dps):
        return mpmath.sqrt(1 + mpmath.fsum(mpmath.mpf(h) ** 2 for h in taps))
