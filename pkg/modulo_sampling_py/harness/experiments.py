"""
ModSampling 实验: 取样 → 加噪 → 折叠 → 展开 → 与真值比较
"""
import asyncio
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple, Union

from ..common.config import HarnessConfig, RecoveryConfig
from ..common.errors import ModuloSamplingError
from ..common.protocol import FilterKind, SampleStream, SignalSpec, TrialReport
from ..core import (
    PredictorFilter,
    add_uniform_noise,
    build_filter,
    fold,
    gen_signal,
    max_prediction_error,
    sample,
    start_index,
    unfold
)

logger = logging.getLogger(__name__)


def run_trial(
    spec: SignalSpec,
    config: RecoveryConfig,
    kind: Union[FilterKind, str] = FilterKind.CHEBYSHEV,
    order: Optional[int] = None,
    noise: float = 0.0,
    seed: int = 0,
    predictor: Optional[PredictorFilter] = None,
    harness: Optional[HarnessConfig] = None
) -> Tuple[TrialReport, SampleStream]:
    """
    单次端到端试验

    Args:
        spec: 真值信号
        config: 恢复参数
        kind: 滤波器类型
        order: 差分阶数
        noise: 折叠前叠加的均匀噪声幅度
        seed: 噪声种子
        predictor: 已构造的滤波器, 扫描时同一单元格复用
        harness: 运行配置(成功判据、精度余量)

    Returns:
        (试验报告, 展开后的样本流)

    Raises:
        InfeasibleRateError: W·T_s ≥ 1/2
        ConsistencyError: 滤波器误差界自检失败
    """
    harness = harness or HarnessConfig()
    config.validate()
    if predictor is None:
        predictor = build_filter(
            config, kind, order, harness.headroom_digits, harness.grid_points
        )

    start = start_index(config)
    n_end = -start
    truth = sample(spec, config.ts, start - predictor.length, n_end, dps=predictor.dps)
    observed = add_uniform_noise(truth, noise, seed, dps=predictor.dps)
    folded = fold(observed, config.delta, dps=predictor.dps)

    recovered, report = unfold(
        folded,
        predictor,
        config,
        n_end=n_end,
        truth=truth,
        tolerance=harness.success_tolerance
    )
    true_error = max_prediction_error(truth, predictor, start, n_end)
    report.true_pred_error = float(true_error)
    report.noise_amplitude = noise

    if predictor.error_bound is not None and true_error > predictor.error_bound:
        message = (
            f"真实预测误差 {float(true_error):.6g} 超过误差界 "
            f"{float(predictor.error_bound):.6g}"
        )
        report.warnings.append(message)
        logger.error(message)

    logger.info(
        f"试验完成: {predictor.kind.value} 阶数={predictor.order_param}, "
        f"W·T_s={config.wts:.6g}, Δ={config.delta}, 噪声={noise}, 成功={report.success}"
    )
    return report, recovered


@dataclass
class SweepSpec:
    """扫描参数: W·T_s 与 Δ 的网格, 每格若干随机信号"""
    wts_values: List[float]
    deltas: List[float]
    trials: int = 20
    seed: int = 0
    kinds: List[FilterKind] = field(
        default_factory=lambda: [FilterKind.CHEBYSHEV, FilterKind.DIFFERENCE]
    )
    difference_orders: List[int] = field(default_factory=lambda: [6])
    w: float = 1.0
    energy: float = 1.0
    terms: int = 8

    def __post_init__(self):
        self.kinds = [FilterKind(kind) for kind in self.kinds]
        if self.trials < 1:
            raise ValueError(f"每格试验次数必须为正: {self.trials}")


@dataclass
class SweepRow:
    """扫描结果中的一行"""
    wts: float
    delta: float
    kind: FilterKind
    order: Optional[int]
    max_pred_err: float
    max_rec_err: float
    success: bool


@dataclass(frozen=True)
class _Cell:
    wts: float
    delta: float
    kind: FilterKind
    order: Optional[int]


def _iter_cells(spec: SweepSpec) -> Iterator[_Cell]:
    for wts in spec.wts_values:
        for delta in spec.deltas:
            for kind in spec.kinds:
                if kind is FilterKind.CHEBYSHEV:
                    yield _Cell(wts, delta, kind, None)
                else:
                    for order in spec.difference_orders:
                        yield _Cell(wts, delta, kind, order)


def _failed_rows(cell: _Cell, trials: int, order: Optional[int] = None) -> List[SweepRow]:
    order = cell.order if order is None else order
    return [
        SweepRow(cell.wts, cell.delta, cell.kind, order, math.nan, math.nan, False)
        for _ in range(trials)
    ]


def _run_cell_sync(cell: _Cell, spec: SweepSpec, harness: HarnessConfig) -> List[SweepRow]:
    """同步执行一个单元格, 滤波器按类参数构造一次"""
    ts = cell.wts / spec.w
    class_config = RecoveryConfig(
        w=spec.w,
        energy_e=spec.energy,
        tail_t0=1.0,
        tail_rho=1.0,
        delta=cell.delta,
        ts=ts,
        margin=harness.margin
    )
    try:
        predictor = build_filter(
            class_config, cell.kind, cell.order, harness.headroom_digits, harness.grid_points
        )
    except ModuloSamplingError as e:
        logger.error(f"单元格 W·T_s={cell.wts}, Δ={cell.delta}, {cell.kind.value} 构造失败: {e}")
        return _failed_rows(cell, spec.trials)

    rows = []
    for trial in range(spec.trials):
        try:
            signal = gen_signal(spec.w, spec.energy, spec.terms, spec.seed + trial)
            config = RecoveryConfig.from_signal(
                signal, cell.delta, ts, harness.margin, energy_e=spec.energy
            )
            report, _ = run_trial(
                signal, config, cell.kind, cell.order,
                predictor=predictor, harness=harness
            )
        except ModuloSamplingError as e:
            logger.error(f"试验 {trial} 失败: {e}")
            rows.extend(_failed_rows(cell, 1, predictor.order_param))
            continue
        rows.append(SweepRow(
            wts=cell.wts,
            delta=cell.delta,
            kind=cell.kind,
            order=predictor.order_param,
            max_pred_err=report.max_pred_error,
            max_rec_err=report.max_recovery_error,
            success=report.success
        ))
    return rows


async def run_sweep(spec: SweepSpec, harness: Optional[HarnessConfig] = None) -> List[SweepRow]:
    """
    执行参数扫描

    max_workers > 1 时各单元格在进程池中并行(mpmath 精度为进程级全局状态),
    结果按单元格顺序返回.

    Args:
        spec: 扫描参数
        harness: 运行配置

    Returns:
        每个 (W·T_s, Δ, 类型, 阶数, 试验) 一行
    """
    harness = harness or HarnessConfig()
    cells = list(_iter_cells(spec))
    logger.info(f"开始扫描: {len(cells)}个单元格, 每格{spec.trials}次试验")

    if harness.max_workers <= 1:
        results = []
        for cell in cells:
            results.append(_run_cell_sync(cell, spec, harness))
            await asyncio.sleep(0)
    else:
        loop = asyncio.get_running_loop()
        with ProcessPoolExecutor(max_workers=harness.max_workers) as pool:
            futures = [
                loop.run_in_executor(pool, _run_cell_sync, cell, spec, harness)
                for cell in cells
            ]
            results = await asyncio.gather(*futures)

    rows = [row for cell_rows in results for row in cell_rows]
    logger.info(f"扫描完成: {sum(r.success for r in rows)}/{len(rows)} 成功")
    return rows
