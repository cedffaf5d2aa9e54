//! The attacker's side of one program interaction.
//!
//! The attacker combines an initial belief with any extra evidence into a
//! prebelief over the high frame. The system runs the program on the real
//! secret and the attacker's low input and reveals the low part of a sampled
//! output. The attacker predicts the output from their prebelief, conditions
//! the prediction on the observation and projects back to the high frame.

use rand::Rng;

use crate::belief::{point_mass, MassFunction};
use crate::error::{Error, Result};
use crate::evidence::{combine_join, combine_same_frame, condition_on_set, ConflictWeight};
use crate::frames::{JointFrame, Tuple, TupleSet};
use crate::lang::{exec_lifted, Command, LiftedLimits};

/// Everything fixed before the first interaction.
#[derive(Clone, Debug)]
pub struct AttackerSetup {
    frame: JointFrame,
    high: JointFrame,
    low: JointFrame,
    initial: MassFunction,
    evidence: Vec<MassFunction>,
    program: Command,
}

impl AttackerSetup {
    /// `high` and `low` must partition the variables of `frame`, and every
    /// belief must live on `high`.
    pub fn new(
        frame: &JointFrame,
        high: &JointFrame,
        low: &JointFrame,
        initial: MassFunction,
        evidence: Vec<MassFunction>,
        program: Command,
    ) -> Result<Self> {
        if !high.is_subframe_of(frame) || !low.is_subframe_of(frame) {
            return Err(Error::IncompatibleFrames("high and low variables must belong to the program frame".into()));
        }
        if low.variables().any(|v| high.contains_var(v.as_str())) {
            return Err(Error::IncompatibleFrames(format!("{} and {} overlap", high.var_list(), low.var_list())));
        }
        if &high.union(low)? != frame {
            return Err(Error::IncompatibleFrames(format!(
                "{} and {} do not cover {}",
                high.var_list(),
                low.var_list(),
                frame.var_list()
            )));
        }
        for m in std::iter::once(&initial).chain(&evidence) {
            if m.frame() != high {
                return Err(Error::IncompatibleFrames(format!(
                    "belief on {} but the secret frame is {}",
                    m.frame().var_list(),
                    high.var_list()
                )));
            }
        }
        if let Some(v) = program.variables().into_iter().find(|v| !frame.contains_var(v)) {
            return Err(Error::UnknownVariable(v.to_string()));
        }
        Ok(AttackerSetup { frame: frame.clone(), high: high.clone(), low: low.clone(), initial, evidence, program })
    }

    pub fn frame(&self) -> &JointFrame {
        &self.frame
    }

    pub fn high(&self) -> &JointFrame {
        &self.high
    }

    pub fn low(&self) -> &JointFrame {
        &self.low
    }

    pub fn initial(&self) -> &MassFunction {
        &self.initial
    }

    pub fn evidence(&self) -> &[MassFunction] {
        &self.evidence
    }

    pub fn program(&self) -> &Command {
        &self.program
    }
}

/// One run of the program: the real secret, the attacker's low input and
/// whether the attacker keeps the resulting postbelief for the next run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interaction {
    pub secret: Tuple,
    pub low_choice: Tuple,
    pub carry_postbelief: bool,
}

/// Every intermediate value of an interaction.
#[derive(Clone, Debug)]
pub struct InteractionTrace {
    pub prebelief: MassFunction,
    pub point_high: MassFunction,
    pub point_low: MassFunction,
    /// Real input: the secret joined with the low choice.
    pub real_input: MassFunction,
    pub k_real_input: ConflictWeight,
    /// The program's output on the real input, normalized.
    pub output: MassFunction,
    pub sampled: Tuple,
    /// The low part of `sampled`, on the low frame.
    pub observation: Tuple,
    /// The attacker's predicted input: the low choice joined with the prebelief.
    pub predicted_input: MassFunction,
    pub k_predicted_input: ConflictWeight,
    pub prediction: MassFunction,
    /// Every full-frame tuple that agrees with the observation.
    pub observed_set: TupleSet,
    pub revised: MassFunction,
    pub k_revised: ConflictWeight,
    pub postbelief: MassFunction,
}

impl InteractionTrace {
    /// Conflict constants in the order they were met.
    pub fn conflict_weights(&self) -> [ConflictWeight; 3] {
        [self.k_real_input, self.k_predicted_input, self.k_revised]
    }
}

/// Initial belief combined with every piece of evidence, left to right.
pub fn compute_prebelief(setup: &AttackerSetup) -> Result<MassFunction> {
    setup.evidence.iter().try_fold(setup.initial.clone(), |acc, m| Ok(combine_same_frame(&acc, m)?.0))
}

/// Picks a focal set uniformly, then a tuple uniformly inside it.
pub fn sample_output<R: Rng + ?Sized>(m: &MassFunction, rng: &mut R) -> Tuple {
    let i = rng.gen_range(0..m.focal_count());
    let (set, _) = m.focal_sets().nth(i).expect("index below focal count");
    let j = rng.gen_range(0..set.len());
    set.iter().nth(j).expect("index below set size").clone()
}

fn run_program(setup: &AttackerSetup, input: &MassFunction, limits: LiftedLimits) -> Result<MassFunction> {
    exec_lifted(&setup.program, &input.into(), limits)?.normalize()
}

/// Runs one interaction starting from `prebelief`.
pub fn run_interaction<R: Rng + ?Sized>(
    setup: &AttackerSetup,
    prebelief: &MassFunction,
    interaction: &Interaction,
    rng: &mut R,
    limits: LiftedLimits,
) -> Result<InteractionTrace> {
    if prebelief.frame() != &setup.high {
        return Err(Error::IncompatibleFrames(format!(
            "prebelief on {} but the secret frame is {}",
            prebelief.frame().var_list(),
            setup.high.var_list()
        )));
    }
    let point_high = point_mass(&TupleSet::singleton(&setup.high, interaction.secret.clone())?)?;
    let point_low = point_mass(&TupleSet::singleton(&setup.low, interaction.low_choice.clone())?)?;

    let (real_input, k_real_input) = combine_join(&point_high, &point_low)?;
    let output = run_program(setup, &real_input, limits)?;
    let sampled = sample_output(&output, rng);
    let observation = setup.frame.project_tuple(&sampled, &setup.low)?;

    let (predicted_input, k_predicted_input) = combine_join(&point_low, prebelief)?;
    let prediction = run_program(setup, &predicted_input, limits)?;
    let observed_set = TupleSet::singleton(&setup.low, observation.clone())?.extend(&setup.frame)?;
    let (revised, k_revised) = condition_on_set(&prediction, &observed_set)?;
    let postbelief = revised.project(&setup.high)?;

    Ok(InteractionTrace {
        prebelief: prebelief.clone(),
        point_high,
        point_low,
        real_input,
        k_real_input,
        output,
        sampled,
        observation,
        predicted_input,
        k_predicted_input,
        prediction,
        observed_set,
        revised,
        k_revised,
        postbelief,
    })
}

/// Runs interactions in order. Each starts from the combined prebelief
/// unless the previous one asked to carry its postbelief forward.
pub fn run_session<R: Rng + ?Sized>(
    setup: &AttackerSetup,
    interactions: &[Interaction],
    rng: &mut R,
    limits: LiftedLimits,
) -> Result<Vec<InteractionTrace>> {
    let fresh = compute_prebelief(setup)?;
    let mut carried: Option<MassFunction> = None;
    let mut traces = Vec::with_capacity(interactions.len());
    for it in interactions {
        let pre = carried.take().unwrap_or_else(|| fresh.clone());
        let trace = run_interaction(setup, &pre, it, rng, limits)?;
        if it.carry_postbelief {
            carried = Some(trace.postbelief.clone());
        }
        traces.push(trace);
    }
    Ok(traces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::make_mass;
    use crate::frames::{build_joint_frame, Value};
    use crate::lang::parse_program;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn abc() -> Vec<Value> {
        vec!["A".into(), "B".into(), "C".into()]
    }

    fn frames() -> (JointFrame, JointFrame, JointFrame) {
        let w = build_joint_frame([("p", abc()), ("g", abc()), ("a", vec![0.into(), 1.into()])]).unwrap();
        let h = w.subframe(&["p"]).unwrap();
        let l = w.subframe(&["g", "a"]).unwrap();
        (w, h, l)
    }

    fn hs(h: &JointFrame, atoms: &[&str]) -> TupleSet {
        TupleSet::new(h, atoms.iter().map(|a| h.tuple(&[("p", Value::from(*a))]).unwrap())).unwrap()
    }

    fn ws(w: &JointFrame, rows: &[(&str, &str, i64)]) -> TupleSet {
        TupleSet::new(
            w,
            rows.iter().map(|&(p, g, a)| w.tuple(&[("p", p.into()), ("g", g.into()), ("a", a.into())]).unwrap()),
        )
        .unwrap()
    }

    fn setup(initial: &[(&[&str], f64)]) -> AttackerSetup {
        let (w, h, l) = frames();
        let m = make_mass(&h, initial.iter().map(|(s, x)| (hs(&h, s), *x))).unwrap();
        let c = parse_program("if p = g then a := 1 else a := 0 end").unwrap();
        AttackerSetup::new(&w, &h, &l, m, vec![], c).unwrap()
    }

    fn interaction(s: &AttackerSetup, secret: &str) -> Interaction {
        Interaction {
            secret: s.high().tuple(&[("p", Value::from(secret))]).unwrap(),
            low_choice: s.low().tuple(&[("g", Value::from("A")), ("a", 0.into())]).unwrap(),
            carry_postbelief: false,
        }
    }

    #[test]
    fn first_experiment() {
        let s = setup(&[(&["A"], 0.98), (&["B", "C"], 0.02)]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let traces =
            run_session(&s, &[interaction(&s, "A"), interaction(&s, "C")], &mut rng, LiftedLimits::default()).unwrap();
        let h = s.high();
        assert!(traces[0].postbelief.approx_eq(&point_mass(&hs(h, &["A"])).unwrap(), 1e-12));
        assert!(traces[1].postbelief.approx_eq(&point_mass(&hs(h, &["B", "C"])).unwrap(), 1e-12));
    }

    #[test]
    fn second_experiment() {
        let s = setup(&[(&["A", "B"], 0.98), (&["A", "B", "C"], 0.02)]);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let traces =
            run_session(&s, &[interaction(&s, "A"), interaction(&s, "C")], &mut rng, LiftedLimits::default()).unwrap();
        let h = s.high();
        assert!(traces[0].postbelief.approx_eq(&point_mass(&hs(h, &["A"])).unwrap(), 1e-12));
        let want = make_mass(h, [(hs(h, &["B"]), 0.98), (hs(h, &["B", "C"]), 0.02)]).unwrap();
        assert!(traces[1].postbelief.approx_eq(&want, 1e-12));
    }

    #[test]
    fn worked_trace() {
        let s = setup(&[(&["A"], 0.98), (&["B", "C"], 0.02)]);
        let w = s.frame().clone();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let pre = compute_prebelief(&s).unwrap();
        let t = run_interaction(&s, &pre, &interaction(&s, "A"), &mut rng, LiftedLimits::default()).unwrap();
        assert_eq!(t.real_input, point_mass(&ws(&w, &[("A", "A", 0)])).unwrap());
        assert_eq!(t.k_real_input.k(), 1.0);
        assert_eq!(t.output, point_mass(&ws(&w, &[("A", "A", 1)])).unwrap());
        assert_eq!(t.sampled, w.tuple(&[("p", "A".into()), ("g", "A".into()), ("a", 1.into())]).unwrap());
        let predicted =
            make_mass(&w, [(ws(&w, &[("A", "A", 0)]), 0.98), (ws(&w, &[("B", "A", 0), ("C", "A", 0)]), 0.02)]).unwrap();
        assert!(t.predicted_input.approx_eq(&predicted, 1e-12));
        let prediction =
            make_mass(&w, [(ws(&w, &[("A", "A", 1)]), 0.98), (ws(&w, &[("B", "A", 0), ("C", "A", 0)]), 0.02)]).unwrap();
        assert!(t.prediction.approx_eq(&prediction, 1e-12));
        assert_eq!(t.observed_set, ws(&w, &[("A", "A", 1), ("B", "A", 1), ("C", "A", 1)]));
        assert!((t.k_revised.k() - 1.0 / 0.98).abs() < 1e-12);
        assert!(t.revised.approx_eq(&point_mass(&ws(&w, &[("A", "A", 1)])).unwrap(), 1e-12));
    }

    #[test]
    fn carried_postbelief_feeds_the_next_run() {
        let s = setup(&[(&["A", "B"], 0.98), (&["A", "B", "C"], 0.02)]);
        let mut first = interaction(&s, "C");
        first.carry_postbelief = true;
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let traces = run_session(&s, &[first, interaction(&s, "C")], &mut rng, LiftedLimits::default()).unwrap();
        assert_eq!(traces[1].prebelief, traces[0].postbelief);
    }

    #[test]
    fn prebelief_from_evidence() {
        let (w, h, l) = frames();
        let init = make_mass(&h, [(hs(&h, &["A"]), 0.5), (h.full_set(), 0.5)]).unwrap();
        let ev = point_mass(&hs(&h, &["A", "B"])).unwrap();
        let s = AttackerSetup::new(&w, &h, &l, init.clone(), vec![ev.clone()], Command::Skip).unwrap();
        let want = make_mass(&h, [(hs(&h, &["A"]), 0.5), (hs(&h, &["A", "B"]), 0.5)]).unwrap();
        assert!(compute_prebelief(&s).unwrap().approx_eq(&want, 1e-12));

        let s = AttackerSetup::new(&w, &h, &l, init.clone(), vec![], Command::Skip).unwrap();
        assert_eq!(compute_prebelief(&s).unwrap(), init);
        let s = AttackerSetup::new(&w, &h, &l, MassFunction::vacuous(&h), vec![ev.clone()], Command::Skip).unwrap();
        assert_eq!(compute_prebelief(&s).unwrap(), ev);
    }

    #[test]
    fn sampling_frequencies() {
        let (_, h, _) = frames();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 10_000;
        let two = make_mass(&h, [(hs(&h, &["A"]), 0.9), (hs(&h, &["B"]), 0.1)]).unwrap();
        let a = h.tuple(&[("p", Value::from("A"))]).unwrap();
        let hits = (0..n).filter(|_| sample_output(&two, &mut rng) == a).count() as f64;
        // Focal sets are picked uniformly, not by mass.
        let se = (0.25 / n as f64).sqrt();
        assert!((hits / n as f64 - 0.5).abs() < 3.0 * se);

        let one = point_mass(&h.full_set()).unwrap();
        let mut counts = [0usize; 3];
        for _ in 0..n {
            let t = sample_output(&one, &mut rng);
            counts[h.world_index(&t).unwrap()] += 1;
        }
        let se = (2.0 / 9.0 / n as f64).sqrt();
        for c in counts {
            assert!((c as f64 / n as f64 - 1.0 / 3.0).abs() < 3.0 * se);
        }
    }

    #[test]
    fn rejects_bad_partitions() {
        let (w, h, _) = frames();
        let m = MassFunction::vacuous(&h);
        let g = w.subframe(&["g"]).unwrap();
        assert!(AttackerSetup::new(&w, &h, &g, m.clone(), vec![], Command::Skip).is_err());
        assert!(AttackerSetup::new(&w, &h, &h, m, vec![], Command::Skip).is_err());
    }
}
