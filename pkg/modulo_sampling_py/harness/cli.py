"""
ModSampling 命令行入口

子命令: gen, pipeline, sweep, noise-demo, reconstruct
退出码: 0 成功, 1 运行错误, 2 用法错误
"""
import argparse
import asyncio
import logging
import sys
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import List, Optional

from jsonschema import ValidationError

from ..common.config import ConfigError, HarnessConfig, LogConfig, RecoveryConfig, load_harness_config
from ..common.errors import ModuloSamplingError
from ..common.protocol import FilterKind
from ..core import gen_signal, recover_signal
from .experiments import SweepSpec, run_sweep, run_trial
from .results import load_signal, load_stream, save_document, write_sweep_csv

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_USAGE = 2


def setup_logging(log_config: LogConfig, level: Optional[str] = None):
    """设置日志: 标准错误输出, 可选滚动日志文件"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if log_config.file_enabled:
        log_path = Path(log_config.file_path)
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(RotatingFileHandler(
            log_path,
            maxBytes=log_config.max_size,
            backupCount=log_config.backup_count,
            encoding='utf-8'
        ))

    logging.basicConfig(
        level=getattr(logging, (level or log_config.level).upper()),
        format=log_config.format,
        handlers=handlers,
        force=True
    )


def positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"必须为正整数: {text}")
    return value


def positive_float(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"必须为正数: {text}")
    return value


def non_negative_float(text: str) -> float:
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"不能为负: {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    """构造参数解析器"""
    parser = argparse.ArgumentParser(
        prog="modsampling",
        description="超奈奎斯特率模数折叠采样恢复"
    )
    parser.add_argument("--config", help="YAML/JSON 运行配置文件")
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"],
        help="日志级别 (默认取配置文件)"
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    gen = subparsers.add_parser("gen", help="生成随机类内信号")
    gen.add_argument("--w", type=positive_float, help="类带宽 W")
    gen.add_argument("--energy", type=positive_float, help="能量预算 E")
    gen.add_argument("--terms", type=positive_int, help="sinc 项数")
    gen.add_argument("--seed", type=int, default=0, help="随机种子 (默认: 0)")
    gen.add_argument("-o", "--output", required=True, help="信号描述输出路径")

    pipeline = subparsers.add_parser("pipeline", help="取样、折叠、展开并与真值比较")
    pipeline.add_argument("signal", help="信号描述 JSON")
    pipeline.add_argument("--ts", type=positive_float, required=True, help="采样周期 T_s")
    pipeline.add_argument("--delta", type=positive_float, required=True, help="模数 Δ")
    pipeline.add_argument(
        "--kind",
        choices=[kind.value for kind in FilterKind],
        default=FilterKind.CHEBYSHEV.value,
        help="预测滤波器 (默认: chebyshev)"
    )
    pipeline.add_argument("--order", type=positive_int, help="差分阶数 L (仅 difference)")
    pipeline.add_argument("-o", "--output", required=True, help="试验报告输出路径")
    pipeline.add_argument("--recovered", help="展开后样本流输出路径")

    sweep = subparsers.add_parser("sweep", help="W·T_s × Δ 网格扫描, 输出 CSV")
    sweep.add_argument("--w", type=positive_float, help="类带宽 W")
    sweep.add_argument("--energy", type=positive_float, help="能量预算 E")
    sweep.add_argument("--terms", type=positive_int, help="sinc 项数")
    sweep.add_argument("--seed", type=int, default=0, help="首个信号的种子 (默认: 0)")
    sweep.add_argument(
        "--wts", type=positive_float, nargs="*", default=[0.1, 0.25, 0.4, 0.45],
        help="W·T_s 取值"
    )
    sweep.add_argument(
        "--delta", type=positive_float, nargs="*", default=[1.0, 0.1], help="Δ 取值"
    )
    sweep.add_argument("--trials", type=positive_int, default=5, help="每格信号数 (默认: 5)")
    sweep.add_argument(
        "--kind",
        action="append",
        choices=[kind.value for kind in FilterKind],
        help="参与比较的滤波器, 可重复 (默认: 两种都比较)"
    )
    sweep.add_argument(
        "--order", type=positive_int, nargs="+", default=[6], help="差分阶数 (默认: 6)"
    )
    sweep.add_argument("--workers", type=positive_int, help="并行进程数")
    sweep.add_argument("-o", "--output", required=True, help="CSV 输出路径")

    noise = subparsers.add_parser("noise-demo", help="折叠前加入均匀噪声后运行切比雪夫译码")
    noise.add_argument("signal", help="信号描述 JSON")
    noise.add_argument("--ts", type=positive_float, required=True, help="采样周期 T_s")
    noise.add_argument("--delta", type=positive_float, required=True, help="模数 Δ")
    noise.add_argument("--noise", type=non_negative_float, required=True, help="噪声幅度 ε_u")
    noise.add_argument("--seed", type=int, default=0, help="噪声种子 (默认: 0)")
    noise.add_argument("-o", "--output", required=True, help="试验报告输出路径")

    reconstruct = subparsers.add_parser("reconstruct", help="由展开后的样本流插值 x(t)")
    reconstruct.add_argument("recovered", help="未折叠样本流 JSON")
    reconstruct.add_argument(
        "--t", type=float, action="append", required=True, help="求值时刻, 可重复"
    )
    reconstruct.add_argument("--window", type=positive_int, help="截断半宽(样本数)")
    reconstruct.add_argument("-o", "--output", help="结果 JSON 输出路径")

    return parser


def cmd_gen(args: argparse.Namespace, harness: HarnessConfig) -> int:
    """生成信号描述"""
    spec = gen_signal(
        args.w or harness.w,
        args.energy or harness.energy,
        args.terms or harness.terms,
        args.seed
    )
    save_document(spec, args.output)
    print(f"信号已保存到 {args.output}: E={spec.energy_e:.6g}, T0={spec.tail_t0:.6g}")
    return EXIT_OK


def _run_single(args: argparse.Namespace, harness: HarnessConfig, kind: FilterKind,
                order: Optional[int], noise: float, seed: int):
    spec = load_signal(args.signal)
    config = RecoveryConfig.from_signal(spec, args.delta, args.ts, harness.margin)
    report, recovered = run_trial(
        spec, config, kind, order, noise=noise, seed=seed, harness=harness
    )
    save_document(report, args.output)
    print(
        f"成功={report.success}, 阶数={report.order}, "
        f"max|e*|={report.max_pred_error:.6g}, max|x̂-x|={report.max_recovery_error:.6g}"
    )
    return report, recovered


def cmd_pipeline(args: argparse.Namespace, harness: HarnessConfig) -> int:
    """端到端恢复试验"""
    kind = FilterKind(args.kind)
    _, recovered = _run_single(args, harness, kind, args.order, 0.0, 0)
    if args.recovered:
        save_document(recovered, args.recovered)
    return EXIT_OK


def cmd_noise_demo(args: argparse.Namespace, harness: HarnessConfig) -> int:
    """量化噪声下的切比雪夫译码"""
    _run_single(args, harness, FilterKind.CHEBYSHEV, None, args.noise, args.seed)
    return EXIT_OK


def cmd_sweep(args: argparse.Namespace, harness: HarnessConfig) -> int:
    """参数扫描"""
    if args.workers:
        harness.max_workers = args.workers
    spec = SweepSpec(
        wts_values=args.wts,
        deltas=args.delta,
        trials=args.trials,
        seed=args.seed,
        kinds=args.kind or [kind.value for kind in FilterKind],
        difference_orders=args.order,
        w=args.w or harness.w,
        energy=args.energy or harness.energy,
        terms=args.terms or harness.terms
    )
    rows = asyncio.run(run_sweep(spec, harness))
    count = write_sweep_csv(rows, args.output)
    print(f"扫描完成: {count}行, {sum(row.success for row in rows)}行成功")
    return EXIT_OK


def cmd_reconstruct(args: argparse.Namespace, harness: HarnessConfig) -> int:
    """Shannon-Whittaker 插值"""
    stream = load_stream(args.recovered)
    window = args.window or harness.interpolation_window
    points = []
    for t in args.t:
        value = recover_signal(stream, t, window)
        points.append({'t': t, 'x': value})
        print(f"x({t!r}) = {value!r}")
    if args.output:
        save_document({'window': window, 'points': points}, args.output)
    return EXIT_OK


COMMANDS = {
    'gen': cmd_gen,
    'pipeline': cmd_pipeline,
    'sweep': cmd_sweep,
    'noise-demo': cmd_noise_demo,
    'reconstruct': cmd_reconstruct
}


def main(argv: Optional[List[str]] = None) -> int:
    """主函数"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == 'pipeline':
            if args.kind == FilterKind.DIFFERENCE.value and args.order is None:
                parser.error("difference 滤波器需要 --order")
            if args.kind == FilterKind.CHEBYSHEV.value and args.order is not None:
                parser.error("--order 仅用于 difference 滤波器")
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    try:
        harness = load_harness_config(args.config)
    except ConfigError as e:
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_RUNTIME

    setup_logging(harness.log, args.log_level)

    try:
        return COMMANDS[args.command](args, harness)
    except KeyboardInterrupt:
        print("\n操作已取消", file=sys.stderr)
        return EXIT_RUNTIME
    except (ModuloSamplingError, ValidationError, OSError, ValueError) as e:
        logger.error(f"{args.command} 失败: {e}")
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == '__main__':
    sys.exit(main())
