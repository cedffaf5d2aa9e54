//! The flow of an interaction: how much closer the attacker's belief moved
//! to the truth, measured with the generalized Jensen-Shannon divergence.

use crate::belief::MassFunction;
use crate::error::{Error, Result};
use crate::frames::JointFrame;
use crate::uncertainty::UncertaintyConfig;

/// Slack allowed on the range check.
pub const BOUND_SLACK: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlowReport {
    /// `gjs_pre - gjs_post`, in bits.
    pub q: f64,
    pub gjs_pre: f64,
    pub gjs_post: f64,
    /// `log2 |W_h|`.
    pub eta: f64,
    /// Whether `q` lies in `[-eta, eta]`.
    pub within_bounds: bool,
    /// Size of the exhaustive search left to the attacker, `2^(eta - q)`.
    pub search_space: f64,
}

/// `(-eta, eta)` for a secret frame.
pub fn flow_range(high: &JointFrame) -> (f64, f64) {
    let eta = (high.cardinality() as f64).log2();
    (-eta, eta)
}

pub fn flow_measure(pre: &MassFunction, post: &MassFunction, truth: &MassFunction) -> Result<FlowReport> {
    flow_measure_with(&UncertaintyConfig::default(), pre, post, truth)
}

pub fn flow_measure_with(
    config: &UncertaintyConfig,
    pre: &MassFunction,
    post: &MassFunction,
    truth: &MassFunction,
) -> Result<FlowReport> {
    for m in [post, truth] {
        if m.frame() != pre.frame() {
            return Err(Error::IncompatibleFrames(format!("{} vs {}", pre.frame().var_list(), m.frame().var_list())));
        }
    }
    let gjs_pre = config.gen_js(pre, truth)?;
    let gjs_post = config.gen_js(post, truth)?;
    let q = gjs_pre - gjs_post;
    let (_, eta) = flow_range(pre.frame());
    Ok(FlowReport {
        q,
        gjs_pre,
        gjs_post,
        eta,
        within_bounds: (-eta - BOUND_SLACK..=eta + BOUND_SLACK).contains(&q),
        search_space: (eta - q).exp2(),
    })
}
