//! The probabilistic while-language: syntax, expression evaluation, and the
//! two command semantics (on states and on mass functions).

mod ast;
mod concrete;
mod eval;
mod lifted;
mod parser;

pub use ast::{Aexp, ArithOp, Bexp, CmpOp, Command};
pub use concrete::{exec_concrete, ConcreteLimits};
pub use eval::{eval_aexp, eval_bexp, expand_bexp};
pub use lifted::{exec_lifted, LiftedLimits};
pub use parser::{parse_aexp, parse_bexp, parse_program};
