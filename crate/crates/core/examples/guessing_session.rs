//! An attacker who keeps their postbelief between runs and guesses their
//! way through a larger password space.
//!
//! ```bash
//! cargo run --example guessing_session
//! ```

use dsqif::frames::{build_joint_frame, TupleSet, Value};
use dsqif::inference::{run_session, AttackerSetup, Interaction};
use dsqif::lang::{parse_program, LiftedLimits};
use dsqif::qif::flow_measure;
use dsqif::{point_mass, MassFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dsqif::Result<()> {
    let atoms: Vec<Value> = ["A", "B", "C", "D", "E", "F"].iter().map(|a| Value::from(*a)).collect();
    let w = build_joint_frame([("p", atoms.clone()), ("g", atoms.clone()), ("a", vec![0.into(), 1.into()])])?;
    let h = w.subframe(&["p"])?;
    let l = w.subframe(&["g", "a"])?;
    let pwc = parse_program("if p = g then a := 1 else a := 0 end")?;
    let setup = AttackerSetup::new(&w, &h, &l, MassFunction::vacuous(&h), vec![], pwc)?;

    let secret = h.tuple(&[("p", "E".into())])?;
    let guesses: Vec<Interaction> = atoms
        .iter()
        .take(5)
        .map(|g| {
            Ok(Interaction {
                secret: secret.clone(),
                low_choice: l.tuple(&[("g", g.clone()), ("a", 0.into())])?,
                carry_postbelief: true,
            })
        })
        .collect::<dsqif::Result<_>>()?;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let traces = run_session(&setup, &guesses, &mut rng, LiftedLimits::default())?;
    let truth = point_mass(&TupleSet::singleton(&h, secret)?)?;
    for (it, t) in guesses.iter().zip(&traces) {
        let f = flow_measure(&t.prebelief, &t.postbelief, &truth)?;
        println!(
            "guess {}: answer {}, belief {}, Q {:+.6}, search space {:.3}",
            l.get(&it.low_choice, "g").unwrap(),
            l.get(&t.observation, "a").unwrap(),
            t.postbelief,
            f.q,
            f.search_space
        );
    }
    Ok(())
}
