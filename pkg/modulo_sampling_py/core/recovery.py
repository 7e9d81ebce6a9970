"""
ModSampling 恢复算法: 滤波器选阶、起点选择与逐点展开译码
"""
import logging
import math
from dataclasses import dataclass
from typing import Any, List, Optional, Sequence, Tuple, Union

import mpmath

from ..common.config import RecoveryConfig
from ..common.errors import ConsistencyError, InvalidArgumentError
from ..common.protocol import FilterKind, SampleStream, SignalSpec, TrialReport
from .modmath import (
    BOUND_TOLERANCE,
    DEFAULT_HEADROOM_DIGITS,
    build_pk,
    difference_taps,
    in_band_max,
    mod_reduce,
    precision_digits
)
from .signal_model import DEFAULT_WINDOW, sample, whittaker_reconstruct

logger = logging.getLogger(__name__)

DEFAULT_SUCCESS_TOLERANCE = 1e-6


@dataclass(frozen=True)
class PredictorFilter:
    """单位首项预测滤波器 c = (1, -h_1, …, -h_L)"""
    kind: FilterKind
    taps: Tuple[Any, ...]                 # h_1 … h_L
    order_param: int                      # 切比雪夫为 K, 差分为 L
    error_bound: Optional[Any] = None     # √(2WE)·2·((2-a)/4)^K, 差分无此界
    dps: int = DEFAULT_HEADROOM_DIGITS    # 译码工作精度
    band_edge_a: Optional[Any] = None
    degenerate_order: bool = False

    @property
    def length(self) -> int:
        return len(self.taps)


def _is_degenerate(config: RecoveryConfig) -> bool:
    return math.sqrt(32.0 * config.w * config.energy_e) <= config.delta


def required_k(config: RecoveryConfig) -> int:
    """
    满足 K > log(√(32WE)/Δ) / log(2/(1 - cos(2πW·T_s))) 的最小整数

    分子中的 Δ 按 Δ·(1 - margin) 计, 使构造出的界同时满足安全裕量.

    Args:
        config: 恢复参数

    Returns:
        切比雪夫阶数 K; √(32WE) ≤ Δ(1 - margin) 时返回 1

    Raises:
        InfeasibleRateError: W·T_s ≥ 1/2
    """
    config.validate()
    if _is_degenerate(config):
        logger.warning(
            f"√(32WE) ≤ Δ, 误差界与阶数无关 (W={config.w}, E={config.energy_e}, "
            f"Δ={config.delta})"
        )
    ratio = math.sqrt(32.0 * config.w * config.energy_e) / (config.delta * (1.0 - config.margin))
    if ratio <= 1.0:
        return 1
    denominator = math.log(2.0 / (1.0 - math.cos(2.0 * math.pi * config.wts)))
    return math.floor(math.log(ratio) / denominator) + 1


def start_index(config: RecoveryConfig) -> int:
    """
    起点 N = -ceil(max(T0, (Δ/2)^{-1/ρ}) / T_s) - 1

    n < N 时 |x_n| < Δ/2, 折叠样本即真值.
    """
    reach = max(config.tail_t0, (config.delta / 2.0) ** (-1.0 / config.tail_rho))
    return -math.ceil(reach / config.ts) - 1


def band_edge(config: RecoveryConfig) -> mpmath.mpf:
    """a = 2cos(2πW·T_s), 在当前精度下计算"""
    return 2 * mpmath.cos(2 * mpmath.pi * mpmath.mpf(config.w) * mpmath.mpf(config.ts))


def working_digits(
    config: RecoveryConfig,
    kind: FilterKind,
    order: int,
    band_edge_a: Optional[float] = None,
    headroom: int = DEFAULT_HEADROOM_DIGITS
) -> int:
    """
    译码所需十进制精度

    预测值的舍入误差约为 10^{-dps}·Σ|h_i|·max|x|, 其中 |x(t)| ≤ √(2WE);
    切比雪夫抽头按 ρ^K 增长, 差分抽头之和为 2^L.
    """
    peak = math.sqrt(2.0 * config.w * config.energy_e)
    scale = max(0, math.ceil(math.log10(peak / config.delta)))
    scale += math.ceil(math.log10(2 * order + 1)) + 1
    if kind is FilterKind.CHEBYSHEV:
        if band_edge_a is None:
            band_edge_a = 2.0 * math.cos(2.0 * math.pi * config.wts)
        return precision_digits(order, band_edge_a, headroom) + scale
    return math.ceil(order * math.log10(2.0)) + headroom + scale


def build_filter(
    config: RecoveryConfig,
    kind: Union[FilterKind, str],
    order: Optional[int] = None,
    headroom: int = DEFAULT_HEADROOM_DIGITS,
    grid_points: Optional[int] = None
) -> PredictorFilter:
    """
    构造预测滤波器

    Args:
        config: 恢复参数
        kind: chebyshev 或 difference
        order: 差分阶数 L, 仅 difference 需要
        headroom: 额外精度位数
        grid_points: 非空时在 [0, W·T_s] 的网格上核对 |p_K| 不超过理论上界

    Returns:
        PredictorFilter

    Raises:
        InfeasibleRateError: W·T_s ≥ 1/2
        InvalidArgumentError: 差分滤波器未给出阶数
        ConsistencyError: 误差界未落在 (Δ/2)(1 - margin) 以内, 或带内网格检查超出上界
    """
    config.validate()
    kind = FilterKind(kind)

    if kind is FilterKind.DIFFERENCE:
        if order is None or order < 1:
            raise InvalidArgumentError(f"差分滤波器必须指定正的阶数: {order}")
        dps = working_digits(config, kind, order, headroom=headroom)
        with mpmath.workdps(dps):
            taps = tuple(mpmath.mpf(h) for h in difference_taps(order))
        logger.info(f"差分滤波器: L={order}, W·T_s={config.wts:.6g}")
        return PredictorFilter(kind=kind, taps=taps, order_param=order, dps=dps)

    k = required_k(config)
    dps = working_digits(config, kind, k, headroom=headroom)
    with mpmath.workdps(dps):
        a = band_edge(config)
    pk = build_pk(k, a, dps)

    with mpmath.workdps(dps):
        bound = mpmath.sqrt(2 * mpmath.mpf(config.w) * mpmath.mpf(config.energy_e))
        bound *= pk.guaranteed_bound
        limit = mpmath.mpf(config.delta) / 2 * (1 - mpmath.mpf(config.margin))
        if bound >= limit:
            raise ConsistencyError(
                f"K={k} 的误差界 {float(bound):.6g} 未小于 (Δ/2)(1-margin)={float(limit):.6g}"
            )

    if grid_points is not None:
        peak = in_band_max(pk, config.wts, grid_points)
        if peak > pk.guaranteed_bound * (1 + mpmath.mpf(BOUND_TOLERANCE)):
            logger.error(
                f"p_{k} 带内最大值 {float(peak):.6g} 超过上界 {float(pk.guaranteed_bound):.6g}"
            )
            raise ConsistencyError(
                f"K={k} 带内网格检查失败: {float(peak):.6g} > {float(pk.guaranteed_bound):.6g}"
            )
        logger.debug(f"p_{k} 带内检查通过: {grid_points}点, 最大值={float(peak):.6g}")

    logger.info(
        f"切比雪夫滤波器: K={k}, 长度={2 * k}, 误差界={float(bound):.6g}, "
        f"W·T_s={config.wts:.6g}, 精度={dps}位"
    )
    return PredictorFilter(
        kind=kind,
        taps=pk.taps,
        order_param=k,
        error_bound=bound,
        dps=dps,
        band_edge_a=a,
        degenerate_order=_is_degenerate(config)
    )


def predict(filter: PredictorFilter, history: Sequence[Any]) -> mpmath.mpf:
    """
    预测值 Σ h_i·x_{n-i}

    Args:
        filter: 预测滤波器
        history: 最近在前的 L 个样本 [x_{n-1}, …, x_{n-L}]
    """
    if len(history) != filter.length:
        raise InvalidArgumentError(
            f"历史长度 {len(history)} 与滤波器长度 {filter.length} 不符"
        )
    with mpmath.workdps(filter.dps):
        return mpmath.fdot(filter.taps, history)


def max_prediction_error(
    truth: SampleStream,
    filter: PredictorFilter,
    n_lo: int,
    n_hi: int
) -> mpmath.mpf:
    """真实样本上 n ∈ [n_lo, n_hi] 的 max|e_n|"""
    values = truth.window(n_lo - filter.length, n_hi)
    reversed_taps = list(reversed(filter.taps))
    worst = mpmath.mpf(0)
    with mpmath.workdps(filter.dps):
        for offset in range(n_hi - n_lo + 1):
            history = values[offset:offset + filter.length]
            current = values[offset + filter.length]
            error = abs(current - mpmath.fdot(reversed_taps, history))
            worst = max(worst, error)
    return worst


def verify_error_bound(
    spec: SignalSpec,
    filter: PredictorFilter,
    config: RecoveryConfig,
    n_range: Tuple[int, int]
) -> mpmath.mpf:
    """
    在真实样本上计算 max|e_n| 并与滤波器误差界比较

    Args:
        spec: 真值信号
        filter: 预测滤波器
        config: 恢复参数
        n_range: (n_lo, n_hi)

    Returns:
        max|e_n|
    """
    n_lo, n_hi = n_range
    truth = sample(spec, config.ts, n_lo - filter.length, n_hi, dps=filter.dps)
    worst = max_prediction_error(truth, filter, n_lo, n_hi)
    if filter.error_bound is not None and worst > filter.error_bound:
        logger.error(
            f"预测误差 {float(worst):.6g} 超过误差界 {float(filter.error_bound):.6g}"
        )
    return worst


def unfold(
    folded: SampleStream,
    filter: PredictorFilter,
    config: RecoveryConfig,
    warmup: Optional[Sequence[Any]] = None,
    n_end: Optional[int] = None,
    truth: Optional[SampleStream] = None,
    tolerance: float = DEFAULT_SUCCESS_TOLERANCE
) -> Tuple[SampleStream, TrialReport]:
    """
    逐点展开: x̂_n = p_n + [x*_n - p_n]*, p_n = Σ h_i·x̂_{n-i}

    Args:
        folded: 覆盖 [N - L, n_end] 的折叠样本
        filter: 预测滤波器
        config: 恢复参数
        warmup: 下标 N-L … N-1 的未折叠样本, 默认取折叠样本本身
        n_end: 最后恢复的下标, 默认 -N
        truth: 可选的真值样本流, 用于计算恢复误差
        tolerance: 成功判据 max|x̂ - x| ≤ tolerance·Δ

    Returns:
        (覆盖 [N - L, n_end] 的未折叠样本流, 试验报告)

    Raises:
        InvalidArgumentError: 模数不符或预热长度错误
        OutOfRangeError: 折叠样本缺少所需下标
    """
    if folded.folded_delta != config.delta:
        raise InvalidArgumentError(
            f"样本流模数 {folded.folded_delta} 与配置 Δ={config.delta} 不符"
        )
    start = start_index(config)
    if n_end is None:
        n_end = -start
    if n_end < start:
        raise InvalidArgumentError(f"结束下标 {n_end} 小于起点 {start}")

    length = filter.length
    observed = folded.window(start, n_end)
    if warmup is None:
        warmup = folded.window(start - length, start - 1)
    if len(warmup) != length:
        raise InvalidArgumentError(f"预热样本需要 {length} 个, 实际 {len(warmup)} 个")

    reversed_taps = list(reversed(filter.taps))
    near_boundary = 0
    with mpmath.workdps(filter.dps):
        delta = mpmath.mpf(config.delta)
        limit = delta / 2 * (1 - mpmath.mpf(config.margin))
        recovered: List[Any] = [mpmath.mpf(v) for v in warmup]
        worst = mpmath.mpf(0)
        for offset, value in enumerate(observed):
            prediction = mpmath.fdot(reversed_taps, recovered[-length:])
            residual = mod_reduce(value - prediction, delta)
            recovered.append(prediction + residual)
            worst = max(worst, abs(residual))
            if abs(residual) >= limit:
                near_boundary += 1
                logger.debug(f"n={start + offset}: 残差 {float(residual):.6g} 接近 Δ/2")

        max_recovery_error = None
        if truth is not None:
            expected = truth.window(start, n_end)
            max_recovery_error = max(
                abs(x_hat - x) for x_hat, x in zip(recovered[length:], expected)
            )

    warnings = []
    if near_boundary:
        message = f"{near_boundary}步残差接近 Δ/2, 可能发生错误展开"
        warnings.append(message)
        logger.warning(message)

    if max_recovery_error is not None:
        success = max_recovery_error <= tolerance * config.delta
    else:
        success = near_boundary == 0

    report = TrialReport(
        config=config.to_dict(),
        kind=filter.kind,
        order=filter.order_param,
        max_pred_error=float(worst),
        success=bool(success),
        n_start=start,
        n_end=n_end,
        max_recovery_error=None if max_recovery_error is None else float(max_recovery_error),
        near_boundary_count=near_boundary,
        error_bound=None if filter.error_bound is None else float(filter.error_bound),
        degenerate_order=filter.degenerate_order,
        warnings=warnings
    )
    stream = SampleStream(start_index=start - length, samples=tuple(recovered), ts=folded.ts)
    return stream, report


def recover_signal(
    recovered: SampleStream,
    t: float,
    window: int = DEFAULT_WINDOW
) -> float:
    """
    由展开后的样本流插值 x(t)

    Raises:
        InvalidArgumentError: 传入的仍是折叠样本
        OutOfRangeError: 插值窗口超出恢复范围
    """
    if recovered.is_folded:
        raise InvalidArgumentError("需要先展开折叠样本再插值")
    return whittaker_reconstruct(recovered, t, window)
