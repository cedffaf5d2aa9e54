use rand::Rng;

use crate::error::{Error, Result};
use crate::frames::{JointFrame, Tuple};

use super::ast::Command;
use super::eval::{eval_aexp, eval_bexp};

/// Bounds for running a command on a single state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConcreteLimits {
    /// Loop iterations allowed before the run is declared divergent.
    pub max_steps: u64,
}

impl Default for ConcreteLimits {
    fn default() -> Self {
        ConcreteLimits { max_steps: 1_000_000 }
    }
}

/// Runs `c` from `state`, drawing probabilistic choices from `rng`.
pub fn exec_concrete<R: Rng + ?Sized>(
    c: &Command,
    frame: &JointFrame,
    state: &Tuple,
    rng: &mut R,
    limits: ConcreteLimits,
) -> Result<Tuple> {
    frame.check_tuple(state)?;
    let mut budget = limits.max_steps;
    run(c, frame, state.clone(), rng, &mut budget, limits.max_steps)
}

fn run<R: Rng + ?Sized>(
    c: &Command,
    frame: &JointFrame,
    state: Tuple,
    rng: &mut R,
    budget: &mut u64,
    max: u64,
) -> Result<Tuple> {
    match c {
        Command::Skip => Ok(state),
        Command::Assign(x, a) => {
            let v = eval_aexp(a, frame, &state)?;
            frame.update(&state, x.as_str(), v)
        }
        Command::Seq(c0, c1) => {
            let mid = run(c0, frame, state, rng, budget, max)?;
            run(c1, frame, mid, rng, budget, max)
        }
        Command::If(b, c0, c1) => {
            if eval_bexp(b, frame, &state)? {
                run(c0, frame, state, rng, budget, max)
            } else {
                run(c1, frame, state, rng, budget, max)
            }
        }
        Command::While(b, body) => {
            let mut state = state;
            while eval_bexp(b, frame, &state)? {
                if *budget == 0 {
                    return Err(Error::StepBudgetExhausted(max));
                }
                *budget -= 1;
                state = run(body, frame, state, rng, budget, max)?;
            }
            Ok(state)
        }
        Command::Choice(p, c0, c1) => {
            if rng.gen_bool(*p) {
                run(c0, frame, state, rng, budget, max)
            } else {
                run(c1, frame, state, rng, budget, max)
            }
        }
    }
}
