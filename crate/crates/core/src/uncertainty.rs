//! Information measures, in bits.
//!
//! Classical measures act on [`Distribution`]s. Their Dempster-Shafer
//! counterparts act on mass functions: generalized Hartley (nonspecificity),
//! aggregate uncertainty (the largest Shannon entropy among distributions that
//! dominate the belief function), generalized Shannon (conflict, the
//! difference of the two) and the generalized Jensen-Shannon divergence built
//! from it. All logarithms are binary and `0 log 0 = 0`.

use std::collections::BTreeMap;

use crate::belief::{MassFunction, MASS_TOLERANCE};
use crate::error::{Error, Result};
use crate::frames::{JointFrame, Tuple};

/// Default largest frame on which aggregate uncertainty is computed.
pub const DEFAULT_MAX_FRAME: usize = 16;

/// Negative conflict values down to this are float noise and read as zero.
const CLAMP: f64 = 1e-9;
/// Ratios closer than this are ties in the aggregate uncertainty search.
const TIE: f64 = 1e-12;

/// A probability distribution over the worlds of a frame.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    frame: JointFrame,
    prob: BTreeMap<Tuple, f64>,
}

impl Distribution {
    pub fn new(frame: &JointFrame, prob: impl IntoIterator<Item = (Tuple, f64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (t, p) in prob {
            frame.check_tuple(&t)?;
            if !(0.0..=1.0 + MASS_TOLERANCE).contains(&p) {
                return Err(Error::InvalidMass(p));
            }
            *map.entry(t).or_insert(0.0) += p;
        }
        let total: f64 = map.values().sum();
        if (total - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::MassSum(total));
        }
        Ok(Distribution { frame: frame.clone(), prob: map })
    }

    /// From probabilities listed in [`JointFrame::worlds`] order.
    pub fn from_world_probs(frame: &JointFrame, probs: &[f64]) -> Result<Self> {
        if probs.len() != frame.cardinality() {
            return Err(Error::NotTotal(format!("{} probabilities for {} worlds", probs.len(), frame.cardinality())));
        }
        Self::new(frame, frame.worlds().zip(probs.iter().copied()))
    }

    /// The distribution induced by a mass whose focal sets are all singletons.
    pub fn from_bayesian(m: &MassFunction) -> Option<Self> {
        if !m.is_bayesian() {
            return None;
        }
        let prob = m.focal_sets().map(|(s, p)| (s.iter().next().expect("singleton").clone(), p)).collect();
        Some(Distribution { frame: m.frame().clone(), prob })
    }

    pub fn frame(&self) -> &JointFrame {
        &self.frame
    }

    pub fn prob(&self, t: &Tuple) -> f64 {
        self.prob.get(t).copied().unwrap_or(0.0)
    }

    /// Probabilities in [`JointFrame::worlds`] order.
    pub fn world_probs(&self) -> Vec<f64> {
        self.frame.worlds().map(|t| self.prob(&t)).collect()
    }
}

fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy of raw probabilities.
pub fn entropy(probs: &[f64]) -> f64 {
    -probs.iter().map(|&p| plogp(p)).sum::<f64>()
}

pub fn shannon_entropy(p: &Distribution) -> f64 {
    entropy(&p.world_probs())
}

fn same_frame(p1: &Distribution, p2: &Distribution) -> Result<()> {
    if p1.frame != p2.frame {
        return Err(Error::IncompatibleFrames(format!("{} vs {}", p1.frame, p2.frame)));
    }
    Ok(())
}

/// Kullback-Leibler divergence; `+inf` when `p1` charges a world `p2` rules out.
pub fn kl_divergence(p1: &Distribution, p2: &Distribution) -> Result<f64> {
    same_frame(p1, p2)?;
    let mut total = 0.0;
    for (a, b) in p1.world_probs().into_iter().zip(p2.world_probs()) {
        if a > 0.0 {
            if b <= 0.0 {
                return Ok(f64::INFINITY);
            }
            total += a * (a / b).log2();
        }
    }
    Ok(total)
}

/// `2 S((p1 + p2)/2) - S(p1) - S(p2)`; lies in `[0, 2]`.
pub fn js_divergence(p1: &Distribution, p2: &Distribution) -> Result<f64> {
    same_frame(p1, p2)?;
    let (a, b) = (p1.world_probs(), p2.world_probs());
    let mid: Vec<f64> = a.iter().zip(&b).map(|(x, y)| (x + y) / 2.0).collect();
    Ok((2.0 * entropy(&mid) - entropy(&a) - entropy(&b)).max(0.0))
}

/// Nonspecificity: `sum m(A) log |A|` over focal sets.
pub fn gen_hartley(m: &MassFunction) -> f64 {
    m.focal_sets().map(|(s, w)| w * (s.len() as f64).log2()).sum()
}

/// Settings for the measures whose cost grows with `2^|W|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UncertaintyConfig {
    pub max_frame_size: usize,
}

impl Default for UncertaintyConfig {
    fn default() -> Self {
        UncertaintyConfig { max_frame_size: DEFAULT_MAX_FRAME }
    }
}

/// Result of the aggregate uncertainty search.
#[derive(Clone, Debug, PartialEq)]
pub struct MaxEntropy {
    /// The maximizing distribution, in [`JointFrame::worlds`] order.
    pub probs: Vec<f64>,
    pub entropy: f64,
}

impl UncertaintyConfig {
    /// Belief table indexed by world bitmask. Bit `i` stands for the `i`-th
    /// world in value order, so the result does not depend on the order in
    /// which frame values were declared.
    fn belief_table(&self, m: &MassFunction) -> Result<(Vec<Tuple>, Vec<f64>)> {
        let frame = m.frame();
        let n = frame.cardinality();
        if n > self.max_frame_size || n >= usize::BITS as usize {
            return Err(Error::FrameTooLarge { size: n, cap: self.max_frame_size });
        }
        let worlds: Vec<Tuple> = frame.full_set().iter().cloned().collect();
        let bit: BTreeMap<&Tuple, usize> = worlds.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut bel = vec![0.0; 1usize << n];
        for (set, w) in m.focal_sets() {
            let mask = set.iter().map(|t| 1usize << bit[t]).fold(0, |a, b| a | b);
            bel[mask] += w;
        }
        // Subset-sum transform: bel[S] = sum of masses of focal sets inside S.
        for bit in 0..n {
            for s in 0..bel.len() {
                if s & (1 << bit) != 0 {
                    bel[s] += bel[s ^ (1 << bit)];
                }
            }
        }
        Ok((worlds, bel))
    }

    /// The largest-entropy distribution dominating Bel, found by repeatedly
    /// peeling off the set maximizing `Bel(A)/|A|` (ties: larger sets first,
    /// then the smaller bitmask) and conditioning Bel on its removal.
    pub fn max_entropy(&self, m: &MassFunction) -> Result<MaxEntropy> {
        let (worlds, mut bel) = self.belief_table(m)?;
        let n = worlds.len();
        let mut probs = vec![0.0; n];
        let mut entropy = 0.0;
        let mut remaining: usize = (1usize << n) - 1;
        while remaining != 0 && bel[remaining] > TIE {
            let mut best = (0usize, f64::NEG_INFINITY, 0u32);
            let mut sub = remaining;
            while sub != 0 {
                let card = sub.count_ones();
                let ratio = bel[sub] / card as f64;
                let (bmask, bratio, bcard) = best;
                let better = ratio > bratio + TIE
                    || ((ratio - bratio).abs() <= TIE && (card > bcard || (card == bcard && sub < bmask)));
                if better {
                    best = (sub, ratio, card);
                }
                sub = (sub - 1) & remaining;
            }
            let (chosen, ratio, card) = best;
            let mass = bel[chosen];
            for (i, p) in probs.iter_mut().enumerate() {
                if chosen & (1 << i) != 0 {
                    *p = ratio;
                }
            }
            if mass > 0.0 {
                entropy += mass * ((card as f64).log2() - mass.log2());
            }
            let rest = remaining & !chosen;
            let base = bel[chosen];
            let mut b = rest;
            loop {
                bel[b] = (bel[b | chosen] - base).max(0.0);
                if b == 0 {
                    break;
                }
                b = (b - 1) & rest;
            }
            remaining = rest;
        }
        let frame = m.frame();
        let mut in_frame_order = vec![0.0; n];
        for (t, p) in worlds.iter().zip(probs) {
            in_frame_order[frame.world_index(t).expect("world of the frame")] = p;
        }
        Ok(MaxEntropy { probs: in_frame_order, entropy: entropy.max(0.0) })
    }

    pub fn aggregate_uncertainty(&self, m: &MassFunction) -> Result<f64> {
        Ok(self.max_entropy(m)?.entropy)
    }

    /// Conflict: aggregate uncertainty minus nonspecificity.
    pub fn gen_shannon(&self, m: &MassFunction) -> Result<f64> {
        let gs = self.aggregate_uncertainty(m)? - gen_hartley(m);
        Ok(if (-CLAMP..0.0).contains(&gs) { 0.0 } else { gs })
    }

    /// `2 GS((m1 + m2)/2) - GS(m1) - GS(m2)`.
    pub fn gen_js(&self, m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
        let mid = m1.mix(m2)?;
        let d = 2.0 * self.gen_shannon(&mid)? - self.gen_shannon(m1)? - self.gen_shannon(m2)?;
        Ok(if (-CLAMP..0.0).contains(&d) { 0.0 } else { d })
    }
}

pub fn aggregate_uncertainty(m: &MassFunction) -> Result<f64> {
    UncertaintyConfig::default().aggregate_uncertainty(m)
}

pub fn gen_shannon(m: &MassFunction) -> Result<f64> {
    UncertaintyConfig::default().gen_shannon(m)
}

pub fn gen_js(m1: &MassFunction, m2: &MassFunction) -> Result<f64> {
    UncertaintyConfig::default().gen_js(m1, m2)
}
