//! The attacker protocol against a password checker, step by step, for two
//! different prebeliefs and two secrets each.
//!
//! ```bash
//! cargo run --example password_checker
//! ```

use dsqif::frames::{build_joint_frame, JointFrame, TupleSet, Value};
use dsqif::inference::{compute_prebelief, run_interaction, AttackerSetup, Interaction};
use dsqif::lang::{parse_program, LiftedLimits};
use dsqif::qif::flow_measure;
use dsqif::{make_mass, point_mass};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn set(h: &JointFrame, atoms: &[&str]) -> TupleSet {
    TupleSet::new(h, atoms.iter().map(|a| h.tuple(&[("p", Value::from(*a))]).unwrap())).unwrap()
}

fn main() -> dsqif::Result<()> {
    let abc = || vec![Value::from("A"), "B".into(), "C".into()];
    let w = build_joint_frame([("p", abc()), ("g", abc()), ("a", vec![0.into(), 1.into()])])?;
    let h = w.subframe(&["p"])?;
    let l = w.subframe(&["g", "a"])?;
    let pwc = parse_program("if p = g then a := 1 else a := 0 end")?;
    let beliefs = [
        ("fairly sure it is A", make_mass(&h, [(set(&h, &["A"]), 0.98), (set(&h, &["B", "C"]), 0.02)])?),
        ("fairly sure it is not C", make_mass(&h, [(set(&h, &["A", "B"]), 0.98), (h.full_set(), 0.02)])?),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (label, initial) in beliefs {
        let setup = AttackerSetup::new(&w, &h, &l, initial, vec![], pwc.clone())?;
        let pre = compute_prebelief(&setup)?;
        println!("== attacker {label}: {pre}");
        for secret in ["A", "C"] {
            let it = Interaction {
                secret: h.tuple(&[("p", secret.into())])?,
                low_choice: l.tuple(&[("g", "A".into()), ("a", 0.into())])?,
                carry_postbelief: false,
            };
            let t = run_interaction(&setup, &pre, &it, &mut rng, LiftedLimits::default())?;
            println!("-- password {secret}, guess A");
            println!("   real input      {}", t.real_input);
            println!("   output          {}", t.output);
            println!("   observed        {}", l.render_tuple(&t.observation));
            println!("   predicted input {}", t.predicted_input);
            println!("   prediction      {}", t.prediction);
            println!("   revised         {} ({})", t.revised, t.k_revised);
            println!("   postbelief      {}", t.postbelief);
            let truth = point_mass(&set(&h, &[secret]))?;
            let f = flow_measure(&pre, &t.postbelief, &truth)?;
            println!("   Q = {:.6} bits (GJS {:.6} -> {:.6}, eta {:.6})", f.q, f.gjs_pre, f.gjs_post, f.eta);
        }
    }
    Ok(())
}
