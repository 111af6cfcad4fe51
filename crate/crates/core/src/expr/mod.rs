//! Nested sum and product expressions: syntax, evaluation, compilation into
//! a tower and reinterpretation back into expressions.

mod ast;
mod compile;
mod eval;
mod parse;
mod reinterpret;

use thiserror::Error;

use crate::dfield::DFieldError;
use crate::telescope::TelescopeError;

pub use ast::{index_name, SumExpr};
pub use compile::{compile, CompileResult, Compiler};
pub use eval::{
    eval_field, eval_ratfunc, evaluate, evaluate_seq, o_function, o_function_base, z_function_base, EvalSpec,
    Evaluator, GenSpec,
};
pub use parse::{parse, parse_ratfunc, ParseError};
pub use reinterpret::reinterpret;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExprError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("zero element has no z-function")]
    ZeroElement,
    #[error("element is not a polynomial part")]
    NotPolynomialPart,
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
}

impl From<TelescopeError> for ExprError {
    fn from(e: TelescopeError) -> Self {
        match e {
            TelescopeError::UnsupportedShape(s) => ExprError::UnsupportedShape(s),
        }
    }
}

impl From<DFieldError> for ExprError {
    fn from(e: DFieldError) -> Self {
        ExprError::UnsupportedShape(e.to_string())
    }
}
