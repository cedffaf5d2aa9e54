//! Quantitative information flow with Dempster-Shafer attacker beliefs.
//!
//! An attacker's knowledge about a program's secret inputs is a mass
//! function over the joint frame of the high variables. Programs written in a
//! small probabilistic while-language run both on concrete states and on
//! mass functions; the attacker runs a program on their prebelief, conditions
//! the prediction on what she observed and projects back to the secrets. The
//! flow of an interaction is the improvement in accuracy of their belief,
//! measured by a generalized Jensen-Shannon divergence against the truth.
//!
//! Modules, bottom up:
//! - [`frames`]: variables, joint frames, tuples and tuple sets
//! - [`belief`]: mass functions, belief values, (sub)normalization
//! - [`evidence`]: Dempster combination and conditioning
//! - [`uncertainty`]: Shannon, KL, JS and their Dempster-Shafer generalizations
//! - [`lang`]: the while-language, its concrete and mass-lifted semantics
//! - [`inference`]: the attacker's interaction protocol
//! - [`qif`]: the flow measure and its range
//! - [`scenario`]: scenario files, orchestration and reports

pub mod belief;
pub mod error;
pub mod evidence;
pub mod frames;
pub mod inference;
pub mod lang;
pub mod qif;
pub mod scenario;
pub mod uncertainty;

pub use belief::{make_mass, point_mass, MassFunction, SubnormalMass};
pub use error::{Error, Result};
pub use evidence::{combine_join, combine_same_frame, condition_on_set, ConflictWeight};
pub use frames::{build_joint_frame, JointFrame, Tuple, TupleSet, Value, VariableId};
