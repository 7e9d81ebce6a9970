"""
ModSampling 核心算法包
"""

from .modmath import (
    LaurentPoly,
    PredictorTaps,
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
from .recovery import (
    PredictorFilter,
    band_edge,
    build_filter,
    max_prediction_error,
    predict,
    recover_signal,
    required_k,
    start_index,
    unfold,
    verify_error_bound,
    working_digits
)
from .signal_model import (
    add_uniform_noise,
    eval_signal,
    eval_signal_grid,
    fold,
    gen_signal,
    make_signal,
    sample,
    tail_ratio,
    whittaker_reconstruct
)

__all__ = [
    # 模运算与滤波器设计
    'LaurentPoly',
    'PredictorTaps',
    'build_pk',
    'chebyshev_value',
    'difference_in_band_bound',
    'difference_taps',
    'eval_on_unit_circle',
    'in_band_max',
    'mod_reduce',
    'pk_sequence',
    'precision_digits',
    'white_noise_gain',

    # 恢复
    'PredictorFilter',
    'band_edge',
    'build_filter',
    'max_prediction_error',
    'predict',
    'recover_signal',
    'required_k',
    'start_index',
    'unfold',
    'verify_error_bound',
    'working_digits',

    # 信号模型
    'add_uniform_noise',
    'eval_signal',
    'eval_signal_grid',
    'fold',
    'gen_signal',
    'make_signal',
    'sample',
    'tail_ratio',
    'whittaker_reconstruct'
]
