//! Frames of discernment over program variables.
//!
//! A [`JointFrame`] is the product of the value frames of a set of variables.
//! Every frame lives inside a universe (the universal variable set): frames
//! built from the same declaration list share variable order and value lists,
//! which is what makes projection and natural join well defined. Tuples store
//! their values in the universe's declaration order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A value a variable can take: an integer or a symbolic atom.
///
/// Integers order before atoms; atoms order lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Int(i64),
    Atom(String),
}

impl Value {
    pub fn atom(name: impl Into<String>) -> Self {
        Value::Atom(name.into())
    }

    pub fn as_int(&self) -> Option<i64> {
        match self {
            Value::Int(n) => Some(*n),
            Value::Atom(_) => None,
        }
    }
}

impl From<i64> for Value {
    fn from(n: i64) -> Self {
        Value::Int(n)
    }
}

impl From<&str> for Value {
    fn from(s: &str) -> Self {
        Value::Atom(s.to_string())
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(n) => write!(f, "{n}"),
            Value::Atom(a) => f.write_str(a),
        }
    }
}

/// A program variable name. Starts with a lowercase ASCII letter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct VariableId(String);

impl VariableId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        let mut chars = name.chars();
        let ok = matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if ok {
            Ok(VariableId(name))
        } else {
            Err(Error::InvalidVariableName(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for VariableId {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        VariableId::new(s)
    }
}

impl From<VariableId> for String {
    fn from(v: VariableId) -> String {
        v.0
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Universe {
    names: Vec<VariableId>,
    values: Vec<Vec<Value>>,
}

/// The joint frame on a variable set: the product of the variables' frames.
#[derive(Clone, Debug)]
pub struct JointFrame {
    universe: Arc<Universe>,
    /// Universe indices of this frame's variables, ascending.
    vars: Arc<[usize]>,
}

impl PartialEq for JointFrame {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe) && self.vars == other.vars
    }
}

impl Eq for JointFrame {}

impl Ord for JointFrame {
    fn cmp(&self, other: &Self) -> Ordering {
        if Arc::ptr_eq(&self.universe, &other.universe) {
            self.vars.cmp(&other.vars)
        } else {
            self.universe.cmp(&other.universe).then_with(|| self.vars.cmp(&other.vars))
        }
    }
}

impl PartialOrd for JointFrame {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Hash for JointFrame {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.vars.hash(state);
    }
}

/// Builds the joint frame over every declared variable.
///
/// The declaration order becomes the universe's variable order, used for
/// tuple layout and textual output.
pub fn build_joint_frame<N, I, V>(decls: I) -> Result<JointFrame>
where
    N: AsRef<str>,
    I: IntoIterator<Item = (N, V)>,
    V: IntoIterator<Item = Value>,
{
    let mut names: Vec<VariableId> = Vec::new();
    let mut values = Vec::new();
    for (name, vals) in decls {
        let id = VariableId::new(name.as_ref())?;
        if names.contains(&id) {
            return Err(Error::DuplicateVariable(id.0));
        }
        let vals: Vec<Value> = vals.into_iter().collect();
        if vals.is_empty() {
            return Err(Error::EmptyFrame(id.0));
        }
        let mut seen = BTreeSet::new();
        for v in &vals {
            if !seen.insert(v) {
                return Err(Error::DuplicateValue { var: id.0.clone(), value: v.to_string() });
            }
        }
        names.push(id);
        values.push(vals);
    }
    if names.is_empty() {
        return Err(Error::NoVariables);
    }
    let vars: Arc<[usize]> = (0..names.len()).collect();
    Ok(JointFrame { universe: Arc::new(Universe { names, values }), vars })
}

impl JointFrame {
    pub fn variables(&self) -> impl Iterator<Item = &VariableId> + '_ {
        self.vars.iter().map(|&i| &self.universe.names[i])
    }

    pub fn arity(&self) -> usize {
        self.vars.len()
    }

    /// Number of worlds |W_s|, saturating at `usize::MAX`.
    pub fn cardinality(&self) -> usize {
        self.vars.iter().fold(1usize, |acc, &i| acc.saturating_mul(self.universe.values[i].len()))
    }

    /// Position of `var` within this frame's tuples.
    pub fn position(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|&i| self.universe.names[i].as_str() == var)
    }

    pub fn contains_var(&self, var: &str) -> bool {
        self.position(var).is_some()
    }

    pub fn values_of(&self, var: &str) -> Option<&[Value]> {
        self.position(var).map(|p| self.universe.values[self.vars[p]].as_slice())
    }

    fn values_at(&self, pos: usize) -> &[Value] {
        &self.universe.values[self.vars[pos]]
    }

    fn name_at(&self, pos: usize) -> &VariableId {
        &self.universe.names[self.vars[pos]]
    }

    fn same_universe(&self, other: &JointFrame) -> bool {
        Arc::ptr_eq(&self.universe, &other.universe) || self.universe == other.universe
    }

    fn check_universe(&self, other: &JointFrame) -> Result<()> {
        if self.same_universe(other) {
            return Ok(());
        }
        for (i, name) in self.universe.names.iter().enumerate() {
            if let Some(j) = other.universe.names.iter().position(|n| n == name) {
                if self.universe.values[i] != other.universe.values[j] {
                    return Err(Error::IncompatibleFrames(format!("variable `{name}` has different value frames")));
                }
            }
        }
        Err(Error::IncompatibleFrames("frames come from different variable universes".into()))
    }

    pub fn is_subframe_of(&self, other: &JointFrame) -> bool {
        self.same_universe(other) && self.vars.iter().all(|v| other.vars.contains(v))
    }

    /// The joint frame on a subset of this frame's variables.
    pub fn subframe<S: AsRef<str>>(&self, vars: &[S]) -> Result<JointFrame> {
        let mut idx = Vec::with_capacity(vars.len());
        for v in vars {
            let v = v.as_ref();
            let pos = self.position(v).ok_or_else(|| Error::NotASubset {
                sub: format!("{{{}}}", vars.iter().map(|s| s.as_ref()).collect::<Vec<_>>().join(", ")),
                sup: self.var_list(),
            })?;
            if idx.contains(&self.vars[pos]) {
                return Err(Error::DuplicateVariable(v.to_string()));
            }
            idx.push(self.vars[pos]);
        }
        if idx.is_empty() {
            return Err(Error::NoVariables);
        }
        idx.sort_unstable();
        Ok(JointFrame { universe: self.universe.clone(), vars: idx.into() })
    }

    /// The frame on the union of both variable sets.
    pub fn union(&self, other: &JointFrame) -> Result<JointFrame> {
        self.check_universe(other)?;
        let idx: BTreeSet<usize> = self.vars.iter().chain(other.vars.iter()).copied().collect();
        Ok(JointFrame { universe: self.universe.clone(), vars: idx.into_iter().collect() })
    }

    /// The frame on the variables of `self` absent from `other`, if any.
    pub fn difference(&self, other: &JointFrame) -> Result<Option<JointFrame>> {
        self.check_universe(other)?;
        let idx: Vec<usize> = self.vars.iter().copied().filter(|v| !other.vars.contains(v)).collect();
        if idx.is_empty() {
            Ok(None)
        } else {
            Ok(Some(JointFrame { universe: self.universe.clone(), vars: idx.into() }))
        }
    }

    pub fn var_list(&self) -> String {
        let names: Vec<&str> = self.variables().map(|v| v.as_str()).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Builds a tuple from `(variable, value)` pairs covering exactly this frame.
    pub fn tuple<S: AsRef<str>>(&self, pairs: &[(S, Value)]) -> Result<Tuple> {
        let mut values: Vec<Option<Value>> = vec![None; self.arity()];
        for (name, value) in pairs {
            let name = name.as_ref();
            let pos = self.position(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
            if values[pos].is_some() {
                return Err(Error::DuplicateVariable(name.to_string()));
            }
            if !self.values_at(pos).contains(value) {
                return Err(Error::ValueOutsideFrame { var: name.to_string(), value: value.to_string() });
            }
            values[pos] = Some(value.clone());
        }
        let values: Option<Vec<Value>> = values.into_iter().collect();
        values.map(Tuple).ok_or_else(|| Error::NotTotal(format!("expected assignments for {}", self.var_list())))
    }

    /// Checks that `t` is a tuple of this frame.
    pub fn check_tuple(&self, t: &Tuple) -> Result<()> {
        if t.0.len() != self.arity() {
            return Err(Error::NotTotal(format!("tuple of arity {} on {}", t.0.len(), self.var_list())));
        }
        for (pos, v) in t.0.iter().enumerate() {
            if !self.values_at(pos).contains(v) {
                return Err(Error::ValueOutsideFrame { var: self.name_at(pos).to_string(), value: v.to_string() });
            }
        }
        Ok(())
    }

    pub fn get<'t>(&self, t: &'t Tuple, var: &str) -> Option<&'t Value> {
        self.position(var).map(|p| &t.0[p])
    }

    /// Copy of `t` with `var` set to `value`.
    pub fn update(&self, t: &Tuple, var: &str, value: Value) -> Result<Tuple> {
        let pos = self.position(var).ok_or_else(|| Error::UnknownVariable(var.to_string()))?;
        if !self.values_at(pos).contains(&value) {
            return Err(Error::ValueOutsideFrame { var: var.to_string(), value: value.to_string() });
        }
        let mut out = t.clone();
        out.0[pos] = value;
        Ok(out)
    }

    /// All tuples of the frame, in mixed-radix order over the declared values.
    pub fn worlds(&self) -> Worlds<'_> {
        Worlds { frame: self, counter: vec![0; self.arity()], done: false }
    }

    /// Index of `t` among [`JointFrame::worlds`].
    pub fn world_index(&self, t: &Tuple) -> Option<usize> {
        let mut idx = 0usize;
        for (pos, v) in t.0.iter().enumerate() {
            let vals = self.values_at(pos);
            let k = vals.iter().position(|x| x == v)?;
            idx = idx * vals.len() + k;
        }
        Some(idx)
    }

    /// The whole frame as a tuple set.
    pub fn full_set(&self) -> TupleSet {
        TupleSet { frame: self.clone(), tuples: self.worlds().collect() }
    }

    pub fn empty_set(&self) -> TupleSet {
        TupleSet { frame: self.clone(), tuples: BTreeSet::new() }
    }

    /// Default starting state: zero where the frame has it, otherwise the
    /// first declared value.
    pub fn initial_tuple(&self) -> Tuple {
        Tuple(
            (0..self.arity())
                .map(|pos| {
                    let vals = self.values_at(pos);
                    vals.iter().find(|v| **v == Value::Int(0)).unwrap_or(&vals[0]).clone()
                })
                .collect(),
        )
    }

    /// Restriction of a tuple of `self` to `target` (which must be a subframe).
    pub fn project_tuple(&self, t: &Tuple, target: &JointFrame) -> Result<Tuple> {
        if !target.is_subframe_of(self) {
            return Err(Error::NotASubset { sub: target.var_list(), sup: self.var_list() });
        }
        Ok(self.restrict(t, target))
    }

    fn restrict(&self, t: &Tuple, target: &JointFrame) -> Tuple {
        Tuple(
            target
                .vars
                .iter()
                .map(|u| {
                    let pos = self.vars.iter().position(|x| x == u).expect("subframe variable");
                    t.0[pos].clone()
                })
                .collect(),
        )
    }

    /// Renders a tuple as `(p->A, g->A, a->1)`.
    pub fn render_tuple(&self, t: &Tuple) -> String {
        let parts: Vec<String> =
            t.0.iter().enumerate().map(|(pos, v)| format!("{}->{}", self.name_at(pos), v)).collect();
        format!("({})", parts.join(", "))
    }

    /// `(variable, value)` pairs of a tuple in frame order.
    pub fn assignments<'a>(&'a self, t: &'a Tuple) -> impl Iterator<Item = (&'a VariableId, &'a Value)> + 'a {
        t.0.iter().enumerate().map(move |(pos, v)| (self.name_at(pos), v))
    }
}

impl fmt::Display for JointFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.var_list())
    }
}

pub struct Worlds<'a> {
    frame: &'a JointFrame,
    counter: Vec<usize>,
    done: bool,
}

impl Iterator for Worlds<'_> {
    type Item = Tuple;

    fn next(&mut self) -> Option<Tuple> {
        if self.done {
            return None;
        }
        let t = Tuple(self.counter.iter().enumerate().map(|(pos, &k)| self.frame.values_at(pos)[k].clone()).collect());
        let mut pos = self.counter.len();
        loop {
            if pos == 0 {
                self.done = true;
                break;
            }
            pos -= 1;
            self.counter[pos] += 1;
            if self.counter[pos] < self.frame.values_at(pos).len() {
                break;
            }
            self.counter[pos] = 0;
        }
        Some(t)
    }
}

/// A total assignment of values to a frame's variables, in frame order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple(Vec<Value>);

impl Tuple {
    pub fn values(&self) -> &[Value] {
        &self.0
    }
}

/// A set of tuples of one frame.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TupleSet {
    frame: JointFrame,
    tuples: BTreeSet<Tuple>,
}

impl TupleSet {
    pub fn new(frame: &JointFrame, tuples: impl IntoIterator<Item = Tuple>) -> Result<Self> {
        let tuples: BTreeSet<Tuple> = tuples.into_iter().collect();
        for t in &tuples {
            frame.check_tuple(t)?;
        }
        Ok(TupleSet { frame: frame.clone(), tuples })
    }

    /// Convenience constructor from assignment lists.
    pub fn from_assignments<S: AsRef<str>>(frame: &JointFrame, rows: &[Vec<(S, Value)>]) -> Result<Self> {
        let tuples = rows.iter().map(|r| frame.tuple(r)).collect::<Result<BTreeSet<_>>>()?;
        Ok(TupleSet { frame: frame.clone(), tuples })
    }

    pub fn singleton(frame: &JointFrame, t: Tuple) -> Result<Self> {
        Self::new(frame, [t])
    }

    pub(crate) fn from_parts(frame: JointFrame, tuples: BTreeSet<Tuple>) -> Self {
        TupleSet { frame, tuples }
    }

    pub fn frame(&self) -> &JointFrame {
        &self.frame
    }

    pub fn tuples(&self) -> &BTreeSet<Tuple> {
        &self.tuples
    }

    pub fn iter(&self) -> impl Iterator<Item = &Tuple> {
        self.tuples.iter()
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    pub fn contains(&self, t: &Tuple) -> bool {
        self.tuples.contains(t)
    }

    pub fn is_subset(&self, other: &TupleSet) -> bool {
        self.tuples.is_subset(&other.tuples)
    }

    fn check_same_frame(&self, other: &TupleSet) -> Result<()> {
        if self.frame == other.frame {
            Ok(())
        } else {
            Err(Error::IncompatibleFrames(format!("{} vs {}", self.frame, other.frame)))
        }
    }

    pub fn intersection(&self, other: &TupleSet) -> Result<TupleSet> {
        self.check_same_frame(other)?;
        Ok(TupleSet { frame: self.frame.clone(), tuples: self.tuples.intersection(&other.tuples).cloned().collect() })
    }

    pub fn union(&self, other: &TupleSet) -> Result<TupleSet> {
        self.check_same_frame(other)?;
        Ok(TupleSet { frame: self.frame.clone(), tuples: self.tuples.union(&other.tuples).cloned().collect() })
    }

    /// Complement within the frame.
    pub fn complement(&self) -> TupleSet {
        TupleSet {
            frame: self.frame.clone(),
            tuples: self.frame.worlds().filter(|t| !self.tuples.contains(t)).collect(),
        }
    }

    /// Restricts every tuple to `target`; duplicates collapse.
    pub fn project(&self, target: &JointFrame) -> Result<TupleSet> {
        if !target.is_subframe_of(&self.frame) {
            return Err(Error::NotASubset { sub: target.var_list(), sup: self.frame.var_list() });
        }
        Ok(TupleSet {
            frame: target.clone(),
            tuples: self.tuples.iter().map(|t| self.frame.restrict(t, target)).collect(),
        })
    }

    /// All tuples on the union frame whose restrictions lie in `self` and `other`.
    pub fn natural_join(&self, other: &TupleSet) -> Result<TupleSet> {
        let joint = self.frame.union(&other.frame)?;
        let (a, b) = (&self.frame, &other.frame);
        // For each position of the joint frame, where to read the value from.
        let sources: Vec<(Option<usize>, Option<usize>)> = joint
            .vars
            .iter()
            .map(|u| (a.vars.iter().position(|x| x == u), b.vars.iter().position(|x| x == u)))
            .collect();
        let shared: Vec<(usize, usize)> = sources.iter().filter_map(|&(x, y)| Some((x?, y?))).collect();
        let mut tuples = BTreeSet::new();
        for left in &self.tuples {
            for right in &other.tuples {
                if shared.iter().all(|&(i, j)| left.0[i] == right.0[j]) {
                    let values = sources
                        .iter()
                        .map(|&(x, y)| match (x, y) {
                            (Some(i), _) => left.0[i].clone(),
                            (None, Some(j)) => right.0[j].clone(),
                            (None, None) => unreachable!("joint variable from neither side"),
                        })
                        .collect();
                    tuples.insert(Tuple(values));
                }
            }
        }
        Ok(TupleSet { frame: joint, tuples })
    }

    /// Cylindrical extension to a frame containing this set's variables.
    pub fn extend(&self, target: &JointFrame) -> Result<TupleSet> {
        if !self.frame.is_subframe_of(target) {
            return Err(Error::NotASubset { sub: self.frame.var_list(), sup: target.var_list() });
        }
        match target.difference(&self.frame)? {
            None => Ok(self.clone()),
            Some(rest) => self.natural_join(&rest.full_set()),
        }
    }
}

/// Restriction of a tuple set to the variables of `target`.
pub fn project_tuple_set(set: &TupleSet, target: &JointFrame) -> Result<TupleSet> {
    set.project(target)
}

pub fn natural_join(a: &TupleSet, b: &TupleSet) -> Result<TupleSet> {
    a.natural_join(b)
}

pub fn extend_tuple_set(set: &TupleSet, target: &JointFrame) -> Result<TupleSet> {
    set.extend(target)
}

impl fmt::Display for TupleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.tuples.iter().map(|t| self.frame.render_tuple(t)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Vec<Value> {
        vec!["A".into(), "B".into(), "C".into()]
    }

    fn pwc() -> JointFrame {
        build_joint_frame([("p", abc()), ("g", abc()), ("a", vec![0.into(), 1.into()])]).unwrap()
    }

    fn set(frame: &JointFrame, rows: &[&[(&str, Value)]]) -> TupleSet {
        let rows: Vec<Vec<(&str, Value)>> = rows.iter().map(|r| r.to_vec()).collect();
        TupleSet::from_assignments(frame, &rows).unwrap()
    }

    #[test]
    fn cardinalities() {
        let h = build_joint_frame([("p", abc())]).unwrap();
        assert_eq!(h.cardinality(), 3);
        let a = build_joint_frame([("a", vec![0.into(), 1.into()])]).unwrap();
        assert_eq!(a.cardinality(), 2);
        assert_eq!(pwc().cardinality(), 18);
        assert_eq!(pwc().worlds().count(), 18);
    }

    #[test]
    fn frame_errors() {
        assert_eq!(build_joint_frame([("p", abc()), ("p", abc())]).unwrap_err(), Error::DuplicateVariable("p".into()));
        assert_eq!(build_joint_frame([("p", vec![])]).unwrap_err(), Error::EmptyFrame("p".into()));
        assert!(matches!(
            build_joint_frame([("p", vec![Value::from(1), Value::from(1)])]),
            Err(Error::DuplicateValue { .. })
        ));
        assert!(matches!(build_joint_frame([("P", abc())]), Err(Error::InvalidVariableName(_))));
    }

    #[test]
    fn tuple_rendering_follows_declaration_order() {
        let w = pwc();
        let t = w.tuple(&[("a", 1.into()), ("p", "A".into()), ("g", "A".into())]).unwrap();
        assert_eq!(w.render_tuple(&t), "(p->A, g->A, a->1)");
        assert_eq!(w.world_index(&t), Some(1));
    }

    #[test]
    fn projection_examples() {
        let w = pwc();
        let s = set(&w, &[&[("p", "A".into()), ("g", "A".into()), ("a", 1.into())]]);
        let l = w.subframe(&["g", "a"]).unwrap();
        assert_eq!(s.project(&l).unwrap().to_string(), "{(g->A, a->1)}");
        assert_eq!(s.project(&w).unwrap(), s);

        let s = set(
            &w,
            &[
                &[("p", "B".into()), ("g", "A".into()), ("a", 0.into())],
                &[("p", "C".into()), ("g", "A".into()), ("a", 0.into())],
            ],
        );
        let h = w.subframe(&["p"]).unwrap();
        assert_eq!(s.project(&h).unwrap().to_string(), "{(p->B), (p->C)}");
        assert!(matches!(s.project(&l).unwrap().project(&h), Err(Error::NotASubset { .. })));
    }

    #[test]
    fn join_examples() {
        let w = pwc();
        let h = w.subframe(&["p"]).unwrap();
        let l = w.subframe(&["g", "a"]).unwrap();
        let hs = set(&h, &[&[("p", "A".into())]]);
        let ls = set(&l, &[&[("g", "A".into()), ("a", 0.into())]]);
        assert_eq!(hs.natural_join(&ls).unwrap().to_string(), "{(p->A, g->A, a->0)}");

        let pg = w.subframe(&["p", "g"]).unwrap();
        let a = set(&pg, &[&[("p", "A".into()), ("g", "A".into())], &[("p", "B".into()), ("g", "B".into())]]);
        assert_eq!(a.natural_join(&ls).unwrap().to_string(), "{(p->A, g->A, a->0)}");

        // Join with the full frame on t extends.
        assert_eq!(hs.natural_join(&l.full_set()).unwrap(), hs.extend(&w).unwrap());
    }

    #[test]
    fn extension_examples() {
        let w = pwc();
        let h = w.subframe(&["p"]).unwrap();
        let l = w.subframe(&["g", "a"]).unwrap();
        let hs = set(&h, &[&[("p", "A".into())]]);
        let ext = hs.extend(&w).unwrap();
        assert_eq!(ext.len(), 6);
        assert!(ext.iter().all(|t| w.get(t, "p") == Some(&"A".into())));
        assert_eq!(hs.extend(&h).unwrap(), hs);

        let ls = set(&l, &[&[("g", "A".into()), ("a", 0.into())]]);
        assert_eq!(ls.extend(&w).unwrap().to_string(), "{(p->A, g->A, a->0), (p->B, g->A, a->0), (p->C, g->A, a->0)}");
        assert!(matches!(ext.extend(&h), Err(Error::NotASubset { .. })));
    }

    #[test]
    fn incompatible_universes() {
        let one = build_joint_frame([("p", abc())]).unwrap();
        let other = build_joint_frame([("p", vec![Value::from(0), Value::from(1)])]).unwrap();
        let err = one.full_set().natural_join(&other.full_set()).unwrap_err();
        assert!(matches!(err, Error::IncompatibleFrames(_)));
        // Structurally equal universes are interchangeable.
        let twin = build_joint_frame([("p", abc())]).unwrap();
        assert_eq!(one.full_set().natural_join(&twin.full_set()).unwrap(), one.full_set());
    }

    #[test]
    fn value_ordering() {
        let mut v = vec![Value::atom("B"), Value::Int(3), Value::atom("A"), Value::Int(-1)];
        v.sort();
        assert_eq!(v, vec![Value::Int(-1), Value::Int(3), Value::atom("A"), Value::atom("B")]);
        assert_ne!(Value::Int(0), Value::atom("0"));
    }
}
