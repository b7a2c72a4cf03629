"""Text front end: eta-quotient expressions and ``.qds`` proof scripts."""

from .ast import Script, strip_parens, to_text
from .evaluate import (
    AssertionResult,
    EvalError,
    ScriptError,
    ScriptReport,
    eval_expr,
    run_script,
)
from .parser import DslError, ParseError, parse_expr, parse_script, tokenize

__all__ = [
    "AssertionResult",
    "DslError",
    "EvalError",
    "ParseError",
    "Script",
    "ScriptError",
    "ScriptReport",
    "eval_expr",
    "parse_expr",
    "parse_script",
    "run_script",
    "strip_parens",
    "to_text",
    "tokenize",
]
