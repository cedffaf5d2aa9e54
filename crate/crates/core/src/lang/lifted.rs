//! Commands acting on mass functions.
//!
//! Conditionals split the incoming mass with unnormalized conditioning on the
//! guard and its negation and add the two branch results; probabilistic
//! choice scales by `p` and `1 - p`. Totals therefore drift away from 1 and
//! mass collects on the empty set; callers normalize at the end of the
//! program.

use crate::belief::{weighted_sum, SubnormalMass};
use crate::error::{Error, Result};
use crate::evidence::{condition_unnormalized, mass_update};

use super::ast::Command;
use super::eval::{eval_aexp, expand_bexp};

/// Bounds for the loop fixed-point iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LiftedLimits {
    pub max_iterations: usize,
    /// A loop is finished once the mass still satisfying its guard drops below this.
    pub tolerance: f64,
}

impl Default for LiftedLimits {
    fn default() -> Self {
        LiftedLimits { max_iterations: 10_000, tolerance: 1e-9 }
    }
}

/// Runs `c` on a (sub)normal mass over the program's frame.
pub fn exec_lifted(c: &Command, sm: &SubnormalMass, limits: LiftedLimits) -> Result<SubnormalMass> {
    let frame = sm.frame();
    match c {
        Command::Skip => Ok(sm.clone()),
        Command::Assign(x, a) => mass_update(sm, x.as_str(), |t| eval_aexp(a, frame, t)),
        Command::Seq(c0, c1) => exec_lifted(c1, &exec_lifted(c0, sm, limits)?, limits),
        Command::If(b, c0, c1) => {
            let sat = expand_bexp(b, frame)?;
            let then_part = exec_lifted(c0, &condition_unnormalized(sm, &sat)?, limits)?;
            let else_part = exec_lifted(c1, &condition_unnormalized(sm, &sat.complement())?, limits)?;
            then_part.add(&else_part)
        }
        Command::While(b, body) => {
            let sat = expand_bexp(b, frame)?;
            let unsat = sat.complement();
            let mut done = SubnormalMass::zero(frame);
            let mut current = sm.clone();
            for _ in 0..limits.max_iterations {
                done = done.add(&condition_unnormalized(&current, &unsat)?)?;
                let inside = condition_unnormalized(&current, &sat)?;
                // Empty-set mass would circulate forever; it leaves through the exit.
                let inside = SubnormalMass::from_entries(frame, inside.focal_sets().map(|(s, m)| (s.clone(), m)))?;
                if inside.nonempty_total() < limits.tolerance {
                    return Ok(done);
                }
                current = exec_lifted(body, &inside, limits)?;
            }
            let residual = condition_unnormalized(&current, &sat)?.nonempty_total();
            if residual < limits.tolerance {
                done.add(&condition_unnormalized(&current, &unsat)?)
            } else {
                Err(Error::NonTermination { residual, iterations: limits.max_iterations })
            }
        }
        Command::Choice(p, c0, c1) => {
            let left = exec_lifted(c0, &sm.scale(*p), limits)?;
            let right = exec_lifted(c1, &sm.scale(1.0 - p), limits)?;
            weighted_sum(frame, &[(1.0, &left), (1.0, &right)])
        }
    }
}
