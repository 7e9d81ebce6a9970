"""
ModSampling JSON 文档结构
"""

_NUMBER_ARRAY = {"type": "array", "items": {"type": "number"}}
_POSITIVE = {"type": "number", "exclusiveMinimum": 0}

SIGNAL_SPEC_SCHEMA = {
    "type": "object",
    "required": ["w0", "w", "amps", "centers", "energy_e", "tail_t0", "tail_rho"],
    "properties": {
        "w0": _POSITIVE,
        "w": _POSITIVE,
        "amps": dict(_NUMBER_ARRAY, minItems=1),
        "centers": dict(_NUMBER_ARRAY, minItems=1),
        "energy_e": _POSITIVE,
        "tail_t0": _POSITIVE,
        "tail_rho": _POSITIVE
    }
}

SAMPLE_STREAM_SCHEMA = {
    "type": "object",
    "required": ["start_index", "samples", "ts"],
    "properties": {
        "start_index": {"type": "integer"},
        "samples": _NUMBER_ARRAY,
        "ts": _POSITIVE,
        "folded_delta": {"anyOf": [_POSITIVE, {"type": "null"}]}
    }
}

TRIAL_REPORT_SCHEMA = {
    "type": "object",
    "required": [
        "config", "kind", "order", "max_pred_error", "success", "n_start", "n_end"
    ],
    "properties": {
        "config": {"type": "object"},
        "kind": {"enum": ["chebyshev", "difference"]},
        "order": {"type": "integer", "minimum": 1},
        "max_pred_error": {"type": "number"},
        "max_recovery_error": {"type": ["number", "null"]},
        "success": {"type": "boolean"},
        "n_start": {"type": "integer"},
        "n_end": {"type": "integer"},
        "near_boundary_count": {"type": "integer", "minimum": 0},
        "warnings": {"type": "array", "items": {"type": "string"}}
    }
}
