//! Dempster's rule of combination and conditioning, plus the unnormalized
//! set conditioning and mass update used by the lifted program semantics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::belief::{MassFunction, SubnormalMass, PRUNE_THRESHOLD};
use crate::error::{Error, Result};
use crate::frames::{Tuple, TupleSet, Value};

/// The normalization constant `k` of a combination or conditioning step.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConflictWeight {
    k: f64,
}

impl ConflictWeight {
    fn from_agreement(agreement: f64) -> Self {
        ConflictWeight { k: 1.0 / agreement }
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Mass of the non-conflicting pairs, `1/k`.
    pub fn agreement(&self) -> f64 {
        1.0 / self.k
    }

    /// Mass lost to conflict, `1 - 1/k`.
    pub fn conflict_mass(&self) -> f64 {
        1.0 - 1.0 / self.k
    }
}

impl fmt::Display for ConflictWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "k = {:.6}", self.k)
    }
}

fn finish(
    frame: crate::frames::JointFrame,
    acc: BTreeMap<TupleSet, f64>,
    agreement: f64,
    on_zero: Error,
) -> Result<(MassFunction, ConflictWeight)> {
    if agreement < PRUNE_THRESHOLD {
        return Err(on_zero);
    }
    let mut focal: BTreeMap<TupleSet, f64> = acc.into_iter().map(|(s, m)| (s, m / agreement)).collect();
    focal.retain(|_, m| *m >= PRUNE_THRESHOLD);
    Ok((MassFunction::from_parts_unchecked(frame, focal), ConflictWeight::from_agreement(agreement)))
}

/// Dempster's rule on a shared frame: focal sets meet by intersection.
pub fn combine_same_frame(m1: &MassFunction, m2: &MassFunction) -> Result<(MassFunction, ConflictWeight)> {
    if m1.frame() != m2.frame() {
        return Err(Error::IncompatibleFrames(format!("{} vs {}", m1.frame(), m2.frame())));
    }
    let mut acc: BTreeMap<TupleSet, f64> = BTreeMap::new();
    let mut agreement = 0.0;
    for (b, mb) in m1.focal_sets() {
        for (c, mc) in m2.focal_sets() {
            let a = b.intersection(c)?;
            if !a.is_empty() {
                let w = mb * mc;
                agreement += w;
                *acc.entry(a).or_insert(0.0) += w;
            }
        }
    }
    finish(m1.frame().clone(), acc, agreement, Error::TotalConflict)
}

/// Dempster's rule across frames: focal sets meet by natural join.
///
/// On identical frames this coincides with [`combine_same_frame`].
pub fn combine_join(m1: &MassFunction, m2: &MassFunction) -> Result<(MassFunction, ConflictWeight)> {
    let frame = m1.frame().union(m2.frame())?;
    let mut acc: BTreeMap<TupleSet, f64> = BTreeMap::new();
    let mut agreement = 0.0;
    for (b, mb) in m1.focal_sets() {
        for (c, mc) in m2.focal_sets() {
            let a = b.natural_join(c)?;
            if !a.is_empty() {
                let w = mb * mc;
                agreement += w;
                *acc.entry(a).or_insert(0.0) += w;
            }
        }
    }
    finish(frame, acc, agreement, Error::TotalConflict)
}

/// Dempster's conditioning on the evidence "the true world is in `set`".
pub fn condition_on_set(m: &MassFunction, set: &TupleSet) -> Result<(MassFunction, ConflictWeight)> {
    if set.frame() != m.frame() {
        return Err(Error::IncompatibleFrames(format!("{} vs {}", set.frame(), m.frame())));
    }
    let mut acc: BTreeMap<TupleSet, f64> = BTreeMap::new();
    let mut agreement = 0.0;
    for (c, mc) in m.focal_sets() {
        let a = c.intersection(set)?;
        if !a.is_empty() {
            agreement += mc;
            *acc.entry(a).or_insert(0.0) += mc;
        }
    }
    finish(m.frame().clone(), acc, agreement, Error::NoIntersection)
}

/// Conditioning without renormalization: each focal set hands its whole mass
/// to its intersection with `set`. Mass landing on the empty set is kept.
pub fn condition_unnormalized(sm: &SubnormalMass, set: &TupleSet) -> Result<SubnormalMass> {
    if set.frame() != sm.frame() {
        return Err(Error::IncompatibleFrames(format!("{} vs {}", set.frame(), sm.frame())));
    }
    let mut out = SubnormalMass::zero(sm.frame());
    for (c, mc) in sm.focal_sets() {
        out.add_entry(c.intersection(set)?, mc);
    }
    out.add_entry(sm.frame().empty_set(), sm.empty_mass());
    out.prune();
    Ok(out)
}

/// Rewrites `var` in every tuple of every focal set with `value_of(tuple)`.
/// Focal sets that coincide afterwards pool their mass.
pub fn mass_update<F>(sm: &SubnormalMass, var: &str, mut value_of: F) -> Result<SubnormalMass>
where
    F: FnMut(&Tuple) -> Result<Value>,
{
    let frame = sm.frame();
    if !frame.contains_var(var) {
        return Err(Error::UnknownVariable(var.to_string()));
    }
    let mut out = SubnormalMass::zero(frame);
    for (c, mc) in sm.focal_sets() {
        let mut image = BTreeSet::new();
        for t in c.iter() {
            let v = value_of(t)?;
            image.insert(frame.update(t, var, v)?);
        }
        out.add_entry(TupleSet::from_parts(frame.clone(), image), mc);
    }
    out.add_entry(frame.empty_set(), sm.empty_mass());
    out.prune();
    Ok(out)
}
