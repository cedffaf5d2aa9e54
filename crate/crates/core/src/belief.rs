//! Mass functions and the belief values derived from them.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::frames::{JointFrame, TupleSet};

/// Allowed deviation of a normalized mass total from 1.
pub const MASS_TOLERANCE: f64 = 1e-9;
/// Focal sets whose mass falls below this after arithmetic are dropped.
pub const PRUNE_THRESHOLD: f64 = 1e-12;

/// A normalized mass function: positive masses on nonempty tuple sets, summing to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct MassFunction {
    frame: JointFrame,
    focal: BTreeMap<TupleSet, f64>,
}

fn check_key(frame: &JointFrame, set: &TupleSet) -> Result<()> {
    if set.frame() != frame {
        return Err(Error::IncompatibleFrames(format!("focal set on {} in a mass on {}", set.frame(), frame)));
    }
    Ok(())
}

fn render_entries<'a>(
    f: &mut fmt::Formatter<'_>,
    entries: impl Iterator<Item = (&'a TupleSet, f64)>,
    empty: Option<f64>,
) -> fmt::Result {
    let mut parts: Vec<String> = entries.map(|(s, m)| format!("{s}: {m:.6}")).collect();
    if let Some(e) = empty {
        parts.push(format!("∅: {e:.6}"));
    }
    write!(f, "[{}]", parts.join("; "))
}

/// Builds a normalized mass function, rejecting anything that is not one.
pub fn make_mass(frame: &JointFrame, entries: impl IntoIterator<Item = (TupleSet, f64)>) -> Result<MassFunction> {
    let mut focal: BTreeMap<TupleSet, f64> = BTreeMap::new();
    for (set, mass) in entries {
        check_key(frame, &set)?;
        if set.is_empty() {
            return Err(Error::MassOnEmptySet);
        }
        if !mass.is_finite() || mass <= 0.0 {
            return Err(Error::InvalidMass(mass));
        }
        *focal.entry(set).or_insert(0.0) += mass;
    }
    if focal.is_empty() {
        return Err(Error::NoFocalSets);
    }
    let total: f64 = focal.values().sum();
    if (total - 1.0).abs() > MASS_TOLERANCE {
        return Err(Error::MassSum(total));
    }
    Ok(MassFunction { frame: frame.clone(), focal })
}

/// The mass function fully concentrated on `set`.
pub fn point_mass(set: &TupleSet) -> Result<MassFunction> {
    if set.is_empty() {
        return Err(Error::EmptyPoint);
    }
    Ok(MassFunction { frame: set.frame().clone(), focal: BTreeMap::from([(set.clone(), 1.0)]) })
}

impl MassFunction {
    /// Total ignorance: all mass on the whole frame.
    pub fn vacuous(frame: &JointFrame) -> Self {
        MassFunction { frame: frame.clone(), focal: BTreeMap::from([(frame.full_set(), 1.0)]) }
    }

    pub fn frame(&self) -> &JointFrame {
        &self.frame
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = (&TupleSet, f64)> + '_ {
        self.focal.iter().map(|(s, m)| (s, *m))
    }

    pub fn focal_count(&self) -> usize {
        self.focal.len()
    }

    /// m(A); zero for sets that are not focal.
    pub fn mass_of(&self, set: &TupleSet) -> f64 {
        self.focal.get(set).copied().unwrap_or(0.0)
    }

    /// True when every focal set is a singleton.
    pub fn is_bayesian(&self) -> bool {
        self.focal.keys().all(|s| s.len() == 1)
    }

    /// Bel(A): the total mass of focal sets contained in `set`.
    pub fn belief(&self, set: &TupleSet) -> Result<f64> {
        check_key(&self.frame, set)?;
        Ok(self.focal.iter().filter(|(b, _)| b.is_subset(set)).map(|(_, m)| m).sum())
    }

    /// Marginalizes onto a subframe; masses of colliding projections add.
    pub fn project(&self, target: &JointFrame) -> Result<MassFunction> {
        let mut focal: BTreeMap<TupleSet, f64> = BTreeMap::new();
        for (set, m) in &self.focal {
            *focal.entry(set.project(target)?).or_insert(0.0) += m;
        }
        Ok(MassFunction { frame: target.clone(), focal })
    }

    /// Pointwise average with `other`.
    pub fn mix(&self, other: &MassFunction) -> Result<MassFunction> {
        if self.frame != other.frame {
            return Err(Error::IncompatibleFrames(format!("{} vs {}", self.frame, other.frame)));
        }
        let mut focal: BTreeMap<TupleSet, f64> = BTreeMap::new();
        for (set, m) in self.focal.iter().chain(other.focal.iter()) {
            *focal.entry(set.clone()).or_insert(0.0) += m / 2.0;
        }
        Ok(MassFunction { frame: self.frame.clone(), focal })
    }

    /// Largest absolute difference in mass over the union of focal sets.
    pub fn max_abs_diff(&self, other: &MassFunction) -> f64 {
        self.focal
            .keys()
            .chain(other.focal.keys())
            .map(|s| (self.mass_of(s) - other.mass_of(s)).abs())
            .fold(0.0, f64::max)
    }

    /// Focal-set-wise equality within `tol`.
    pub fn approx_eq(&self, other: &MassFunction, tol: f64) -> bool {
        self.frame == other.frame && self.max_abs_diff(other) <= tol
    }

    pub(crate) fn from_parts_unchecked(frame: JointFrame, focal: BTreeMap<TupleSet, f64>) -> Self {
        MassFunction { frame, focal }
    }
}

pub fn project_mass(m: &MassFunction, target: &JointFrame) -> Result<MassFunction> {
    m.project(target)
}

pub fn belief_of(m: &MassFunction, set: &TupleSet) -> Result<f64> {
    m.belief(set)
}

pub fn mix(m1: &MassFunction, m2: &MassFunction) -> Result<MassFunction> {
    m1.mix(m2)
}

impl fmt::Display for MassFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_entries(f, self.focal_sets(), None)
    }
}

/// An intermediate mass that may weigh the empty set and need not sum to 1.
///
/// Produced by unnormalized conditioning, probabilistic scaling and branch
/// summation; turned back into a [`MassFunction`] by [`SubnormalMass::normalize`].
#[derive(Clone, Debug, PartialEq)]
pub struct SubnormalMass {
    frame: JointFrame,
    focal: BTreeMap<TupleSet, f64>,
    empty: f64,
}

impl From<MassFunction> for SubnormalMass {
    fn from(m: MassFunction) -> Self {
        SubnormalMass { frame: m.frame, focal: m.focal, empty: 0.0 }
    }
}

impl From<&MassFunction> for SubnormalMass {
    fn from(m: &MassFunction) -> Self {
        SubnormalMass::from(m.clone())
    }
}

impl SubnormalMass {
    pub fn zero(frame: &JointFrame) -> Self {
        SubnormalMass { frame: frame.clone(), focal: BTreeMap::new(), empty: 0.0 }
    }

    /// Builds from raw entries; the empty set may appear as a key.
    pub fn from_entries(frame: &JointFrame, entries: impl IntoIterator<Item = (TupleSet, f64)>) -> Result<Self> {
        let mut sm = SubnormalMass::zero(frame);
        for (set, m) in entries {
            check_key(frame, &set)?;
            if !m.is_finite() || m < 0.0 {
                return Err(Error::InvalidMass(m));
            }
            sm.add_entry(set, m);
        }
        sm.prune();
        Ok(sm)
    }

    pub fn frame(&self) -> &JointFrame {
        &self.frame
    }

    pub fn focal_sets(&self) -> impl Iterator<Item = (&TupleSet, f64)> + '_ {
        self.focal.iter().map(|(s, m)| (s, *m))
    }

    pub fn empty_mass(&self) -> f64 {
        self.empty
    }

    pub fn mass_of(&self, set: &TupleSet) -> f64 {
        if set.is_empty() {
            self.empty
        } else {
            self.focal.get(set).copied().unwrap_or(0.0)
        }
    }

    pub fn nonempty_total(&self) -> f64 {
        self.focal.values().sum()
    }

    /// Total including the empty-set mass.
    pub fn total(&self) -> f64 {
        self.nonempty_total() + self.empty
    }

    pub fn is_zero(&self) -> bool {
        self.focal.is_empty() && self.empty <= PRUNE_THRESHOLD
    }

    pub(crate) fn add_entry(&mut self, set: TupleSet, m: f64) {
        if set.is_empty() {
            self.empty += m;
        } else {
            *self.focal.entry(set).or_insert(0.0) += m;
        }
    }

    pub(crate) fn prune(&mut self) {
        self.focal.retain(|_, m| *m >= PRUNE_THRESHOLD);
        if self.empty < PRUNE_THRESHOLD {
            self.empty = 0.0;
        }
    }

    /// Every entry multiplied by `w`.
    pub fn scale(&self, w: f64) -> SubnormalMass {
        let mut out = SubnormalMass {
            frame: self.frame.clone(),
            focal: self.focal.iter().map(|(s, m)| (s.clone(), m * w)).collect(),
            empty: self.empty * w,
        };
        out.prune();
        out
    }

    /// Entry-wise sum, empty set included.
    pub fn add(&self, other: &SubnormalMass) -> Result<SubnormalMass> {
        if self.frame != other.frame {
            return Err(Error::IncompatibleFrames(format!("{} vs {}", self.frame, other.frame)));
        }
        let mut out = self.clone();
        for (s, m) in &other.focal {
            out.add_entry(s.clone(), *m);
        }
        out.empty += other.empty;
        out.prune();
        Ok(out)
    }

    /// Drops the empty-set mass and rescales the rest to sum to 1.
    pub fn normalize(&self) -> Result<MassFunction> {
        let total = self.nonempty_total();
        if self.focal.is_empty() || total < PRUNE_THRESHOLD {
            return Err(Error::AllMassOnEmpty);
        }
        let mut focal: BTreeMap<TupleSet, f64> = self.focal.iter().map(|(s, m)| (s.clone(), m / total)).collect();
        focal.retain(|_, m| *m >= PRUNE_THRESHOLD);
        Ok(MassFunction { frame: self.frame.clone(), focal })
    }
}

/// Scales each part by its weight and adds them entry-wise.
pub fn weighted_sum(frame: &JointFrame, parts: &[(f64, &SubnormalMass)]) -> Result<SubnormalMass> {
    let mut acc = SubnormalMass::zero(frame);
    for &(w, part) in parts {
        if !w.is_finite() || w < 0.0 {
            return Err(Error::InvalidMass(w));
        }
        acc = acc.add(&part.scale(w))?;
    }
    Ok(acc)
}

impl fmt::Display for SubnormalMass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let empty = (self.empty > 0.0).then_some(self.empty);
        render_entries(f, self.focal_sets(), empty)
    }
}
