//! A checker that lies with some probability. The output is no longer a
//! single state, so the observation is sampled from the lifted output.
//!
//! ```bash
//! cargo run --example noisy_checker
//! ```

use dsqif::frames::{build_joint_frame, TupleSet, Value};
use dsqif::inference::{compute_prebelief, run_interaction, AttackerSetup, Interaction};
use dsqif::lang::{parse_program, LiftedLimits};
use dsqif::qif::flow_measure;
use dsqif::{point_mass, MassFunction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dsqif::Result<()> {
    let abc = || vec![Value::from("A"), "B".into(), "C".into()];
    let w = build_joint_frame([("p", abc()), ("g", abc()), ("a", vec![0.into(), 1.into()])])?;
    let h = w.subframe(&["p"])?;
    let l = w.subframe(&["g", "a"])?;
    let program = parse_program(
        "if p = g then a := 1 else a := 0 end;
         { skip } [0.8] { a := 1 - a }",
    )?;
    print!("{}", program.pretty());
    let setup = AttackerSetup::new(&w, &h, &l, MassFunction::vacuous(&h), vec![], program)?;
    let pre = compute_prebelief(&setup)?;
    let secret = h.tuple(&[("p", "A".into())])?;
    let truth = point_mass(&TupleSet::singleton(&h, secret.clone())?)?;
    let it =
        Interaction { secret, low_choice: l.tuple(&[("g", "A".into()), ("a", 0.into())])?, carry_postbelief: false };

    for seed in 0..4 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = run_interaction(&setup, &pre, &it, &mut rng, LiftedLimits::default())?;
        let f = flow_measure(&pre, &t.postbelief, &truth)?;
        println!("\nseed {seed}: output {}", t.output);
        println!("  observed {} -> postbelief {}", l.render_tuple(&t.observation), t.postbelief);
        println!("  Q = {:+.6} bits", f.q);
    }
    Ok(())
}
