use crate::error::{Error, Result};
use crate::frames::{JointFrame, Tuple, TupleSet, Value};

use super::ast::{Aexp, ArithOp, Bexp, CmpOp};

fn int_operand(v: Value, op: &str) -> Result<i64> {
    v.as_int().ok_or_else(|| Error::Eval(format!("`{op}` applied to atom `{v}`")))
}

/// Value of `a` in the state `state` of `frame`.
pub fn eval_aexp(a: &Aexp, frame: &JointFrame, state: &Tuple) -> Result<Value> {
    match a {
        Aexp::Int(n) => Ok(Value::Int(*n)),
        Aexp::Atom(s) => Ok(Value::Atom(s.clone())),
        Aexp::Var(x) => {
            frame.get(state, x.as_str()).cloned().ok_or_else(|| Error::Eval(format!("unbound variable `{x}`")))
        }
        Aexp::Bin(op, l, r) => {
            let sym = match op {
                ArithOp::Add => "+",
                ArithOp::Sub => "-",
                ArithOp::Mul => "*",
            };
            let l = int_operand(eval_aexp(l, frame, state)?, sym)?;
            let r = int_operand(eval_aexp(r, frame, state)?, sym)?;
            let v = match op {
                ArithOp::Add => l.checked_add(r),
                ArithOp::Sub => l.checked_sub(r),
                ArithOp::Mul => l.checked_mul(r),
            };
            v.map(Value::Int).ok_or_else(|| Error::Eval(format!("overflow in {l} {sym} {r}")))
        }
    }
}

/// Truth of `b` in the state `state` of `frame`. Values of different kinds
/// are never equal; ordering applies to integers only.
pub fn eval_bexp(b: &Bexp, frame: &JointFrame, state: &Tuple) -> Result<bool> {
    match b {
        Bexp::True => Ok(true),
        Bexp::False => Ok(false),
        Bexp::Cmp(op, l, r) => {
            let l = eval_aexp(l, frame, state)?;
            let r = eval_aexp(r, frame, state)?;
            match op {
                CmpOp::Eq => Ok(l == r),
                CmpOp::Ne => Ok(l != r),
                CmpOp::Lt => Ok(int_operand(l, "<")? < int_operand(r, "<")?),
                CmpOp::Le => Ok(int_operand(l, "<=")? <= int_operand(r, "<=")?),
            }
        }
        Bexp::Not(b) => Ok(!eval_bexp(b, frame, state)?),
        Bexp::And(l, r) => Ok(eval_bexp(l, frame, state)? && eval_bexp(r, frame, state)?),
        Bexp::Or(l, r) => Ok(eval_bexp(l, frame, state)? || eval_bexp(r, frame, state)?),
    }
}

/// The tuples of `frame` satisfying `b`.
pub fn expand_bexp(b: &Bexp, frame: &JointFrame) -> Result<TupleSet> {
    let mut sat = Vec::new();
    for t in frame.worlds() {
        if eval_bexp(b, frame, &t)? {
            sat.push(t);
        }
    }
    TupleSet::new(frame, sat)
}
