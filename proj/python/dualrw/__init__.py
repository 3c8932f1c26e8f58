"""Forward-mode automatic differentiation by dual-number term transformation."""

from ._core import (
    EvalError,
    ParseError,
    StrategyError,
    Term,
    Type,
    TypeCheckError,
    bench_vector_sum,
    default_pipeline,
    dual_term,
    dual_type,
    emit_futhark,
    evaluate,
    loss_grad,
    optimize,
    parse,
    parse_type,
    rule_names,
    typecheck,
)

__all__ = [
    "EvalError",
    "ParseError",
    "StrategyError",
    "Term",
    "Type",
    "TypeCheckError",
    "bench_vector_sum",
    "default_pipeline",
    "dual_term",
    "dual_type",
    "emit_futhark",
    "evaluate",
    "loss_grad",
    "optimize",
    "parse",
    "parse_type",
    "rule_names",
    "typecheck",
]
