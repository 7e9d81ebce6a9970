"""
ModSampling 信号模型: 生成、采样、折叠与插值重建
"""
import logging
import math
from contextlib import nullcontext
from typing import Optional, Sequence

import mpmath
import numpy as np

from ..common.errors import InvalidArgumentError
from ..common.protocol import SampleStream, SignalSpec
from .modmath import mod_reduce

logger = logging.getLogger(__name__)

INNER_BAND_RATIO = 0.95
DEFAULT_WINDOW = 2000


def _precision(dps: Optional[int]):
    return nullcontext() if dps is None else mpmath.workdps(dps)


def make_signal(
    amps: Sequence[float],
    centers: Sequence[float],
    w0: float,
    w: float
) -> SignalSpec:
    """
    由显式 sinc 项构造信号描述, 计算能量与尾部常数

    网格对齐的 sinc 两两正交, E = Σc²/(2w0); |t| ≥ 2·max|τ| 时
    |t - τ| ≥ |t|/2, 由三角不等式 |x(t)| ≤ Σ|c|/(π·w0·|t|).

    Args:
        amps: 幅度 c_k
        centers: 中心 τ_k
        w0: 内带宽
        w: 类带宽

    Returns:
        SignalSpec
    """
    amps = [float(c) for c in amps]
    centers = [float(t) for t in centers]
    if not amps or len(amps) != len(centers):
        raise InvalidArgumentError("幅度与中心必须等长且非空")

    energy = sum(c * c for c in amps) / (2.0 * w0)
    abs_sum = sum(abs(c) for c in amps)
    tail_t0 = max(
        2.0 * max(abs(t) for t in centers),
        2.0 * abs_sum / (math.pi * w0),
        1.0 / (2.0 * w0)
    )
    return SignalSpec(
        w0=w0,
        w=w,
        amps=tuple(amps),
        centers=tuple(centers),
        energy_e=energy,
        tail_t0=tail_t0,
        tail_rho=1.0
    )


def gen_signal(
    w: float,
    energy_budget: float,
    num_terms: int,
    seed: int
) -> SignalSpec:
    """
    生成随机的类内信号

    幅度取自 [-1, 1] 均匀分布, 中心位于 t=0 附近的 1/(2w0) 网格上;
    缩放使 E ≤ energy_budget 且 Σ|c| ≤ π·w0(保证 ρ=1 的尾部界).

    Args:
        w: 类带宽 W
        energy_budget: 能量预算
        num_terms: sinc 项数
        seed: 随机种子

    Returns:
        SignalSpec
    """
    if num_terms < 1:
        raise InvalidArgumentError(f"sinc 项数必须为正: {num_terms}")
    if not (w > 0 and energy_budget > 0):
        raise InvalidArgumentError(f"带宽与能量预算必须为正: {w}, {energy_budget}")

    rng = np.random.default_rng(seed)
    w0 = INNER_BAND_RATIO * w
    amps = rng.uniform(-1.0, 1.0, size=num_terms)
    span = max(num_terms, 2)
    grid = rng.choice(np.arange(-span, span + 1), size=num_terms, replace=False)
    centers = np.sort(grid) / (2.0 * w0)

    raw_energy = float(np.sum(amps ** 2)) / (2.0 * w0)
    raw_abs_sum = float(np.sum(np.abs(amps)))
    scale = min(
        math.sqrt(energy_budget / raw_energy),
        math.pi * w0 / raw_abs_sum
    ) * (1.0 - 1e-12)

    spec = make_signal(amps * scale, centers, w0, w)
    logger.debug(
        f"生成信号: seed={seed}, 项数={num_terms}, E={spec.energy_e:.6g}, "
        f"T0={spec.tail_t0:.6g}"
    )
    return spec


def eval_signal(spec: SignalSpec, t) -> mpmath.mpf:
    """
    在当前 mpmath 精度下求 x(t)

    Args:
        spec: 信号描述
        t: 时刻(float 或 mpf)

    Returns:
        x(t)
    """
    t = mpmath.mpf(t)
    two_w0 = 2 * mpmath.mpf(spec.w0)
    return mpmath.fsum(
        mpmath.mpf(c) * mpmath.sincpi(two_w0 * (t - mpmath.mpf(tau)))
        for c, tau in zip(spec.amps, spec.centers)
    )


def eval_signal_grid(spec: SignalSpec, t: np.ndarray) -> np.ndarray:
    """双精度向量化求 x(t)"""
    t = np.asarray(t, dtype=float)
    amps = np.asarray(spec.amps)
    centers = np.asarray(spec.centers)
    args = 2.0 * spec.w0 * (t[..., np.newaxis] - centers)
    return np.sinc(args) @ amps


def tail_ratio(spec: SignalSpec, points: int = 10000) -> float:
    """[T0, 10·T0] 上 max|x(t)|·|t|, 正负时刻都检查"""
    t = np.linspace(spec.tail_t0, 10.0 * spec.tail_t0, points)
    right = np.abs(eval_signal_grid(spec, t)) * t
    left = np.abs(eval_signal_grid(spec, -t)) * t
    return float(max(right.max(), left.max()))


def sample(
    spec: SignalSpec,
    ts: float,
    n_lo: int,
    n_hi: int,
    dps: Optional[int] = None
) -> SampleStream:
    """
    取样 x_n = x(n·T_s), n ∈ [n_lo, n_hi]

    Args:
        spec: 信号描述
        ts: 采样周期
        n_lo: 起始下标
        n_hi: 结束下标(含)
        dps: mpmath 精度; None 时用双精度

    Returns:
        未折叠的 SampleStream
    """
    if n_lo > n_hi:
        raise InvalidArgumentError(f"下标范围无效: [{n_lo}, {n_hi}]")
    if dps is None:
        t = np.arange(n_lo, n_hi + 1) * ts
        values = tuple(float(v) for v in eval_signal_grid(spec, t))
    else:
        with mpmath.workdps(dps):
            step = mpmath.mpf(ts)
            values = tuple(eval_signal(spec, n * step) for n in range(n_lo, n_hi + 1))
    return SampleStream(start_index=n_lo, samples=values, ts=ts)


def fold(stream: SampleStream, delta: float, dps: Optional[int] = None) -> SampleStream:
    """
    逐点模约化 x*_n = [x_n]*

    Args:
        stream: 样本流
        delta: 模数 Δ
        dps: mpmath 精度, 样本为 mpf 时应与取样一致

    Raises:
        InvalidArgumentError: 样本流已按另一模数折叠
    """
    if stream.is_folded:
        if stream.folded_delta == delta:
            return stream
        raise InvalidArgumentError(
            f"样本流已按 Δ={stream.folded_delta} 折叠, 不能再按 Δ={delta} 折叠"
        )
    with _precision(dps):
        folded = tuple(mod_reduce(v, delta) for v in stream.samples)
    return SampleStream(
        start_index=stream.start_index,
        samples=folded,
        ts=stream.ts,
        folded_delta=delta
    )


def add_uniform_noise(
    stream: SampleStream,
    amplitude: float,
    seed: int,
    dps: Optional[int] = None
) -> SampleStream:
    """
    叠加 [-amplitude, amplitude] 上独立均匀噪声, 用于折叠前的量化噪声模型

    Args:
        stream: 未折叠样本流
        amplitude: 噪声幅度 ε_u ≥ 0
        seed: 随机种子
        dps: mpmath 精度
    """
    if stream.is_folded:
        raise InvalidArgumentError("噪声只能叠加在未折叠样本上")
    if amplitude < 0:
        raise InvalidArgumentError(f"噪声幅度不能为负: {amplitude}")
    if amplitude == 0:
        return stream
    rng = np.random.default_rng(seed)
    noise = rng.uniform(-amplitude, amplitude, size=len(stream))
    with _precision(dps):
        noisy = tuple(v + type(v)(u) for v, u in zip(stream.samples, noise))
    return SampleStream(start_index=stream.start_index, samples=noisy, ts=stream.ts)


def whittaker_reconstruct(
    stream: SampleStream,
    t: float,
    window: int = DEFAULT_WINDOW
) -> float:
    """
    Shannon-Whittaker 截断插值

    x(t) ≈ Σ_{|n - t/T_s| ≤ window} x_n·sinc((t - n·T_s)/T_s), 截断误差 O(1/window)

    Args:
        stream: 未折叠样本流
        t: 时刻
        window: 截断半宽(样本数)

    Returns:
        x(t) 的估计

    Raises:
        InvalidArgumentError: 样本流已折叠, 或窗口内没有样本
        OutOfRangeError: 窗口超出样本流范围
    """
    if stream.is_folded:
        raise InvalidArgumentError("插值需要未折叠样本")
    if window < 0:
        raise InvalidArgumentError(f"窗口不能为负: {window}")
    center = t / stream.ts
    n_lo = math.ceil(center - window)
    n_hi = math.floor(center + window)
    if n_lo > n_hi:
        raise InvalidArgumentError(f"t={t} 的插值窗口内没有样本")

    values = np.array([float(v) for v in stream.window(n_lo, n_hi)])
    offsets = center - np.arange(n_lo, n_hi + 1)
    return float(values @ np.sinc(offsets))
