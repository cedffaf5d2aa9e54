//! Mass functions, belief, Dempster's rule and conditioning.
//!
//! ```bash
//! cargo run --example evidence_combination
//! ```

use dsqif::frames::{build_joint_frame, JointFrame, TupleSet, Value};
use dsqif::{combine_join, combine_same_frame, condition_on_set, make_mass, point_mass, Error, MassFunction};

fn set(h: &JointFrame, atoms: &[&str]) -> TupleSet {
    TupleSet::new(h, atoms.iter().map(|a| h.tuple(&[("p", Value::from(*a))]).unwrap())).unwrap()
}

fn main() -> dsqif::Result<()> {
    let h = build_joint_frame([("p", vec![Value::from("A"), "B".into(), "C".into()])])?;

    let witness = make_mass(&h, [(set(&h, &["A"]), 0.5), (set(&h, &["A", "B"]), 0.5)])?;
    let rumour = make_mass(&h, [(set(&h, &["B"]), 0.5), (set(&h, &["A", "B"]), 0.5)])?;
    println!("witness {witness}");
    println!("rumour  {rumour}");
    println!("Bel(A) = {}, Bel(A,B) = {}", witness.belief(&set(&h, &["A"]))?, witness.belief(&set(&h, &["A", "B"]))?);

    let (both, k) = combine_same_frame(&witness, &rumour)?;
    println!("\ncombined {both}");
    println!("{k}, conflict mass {:.6}", k.conflict_mass());

    // Ignorance changes nothing.
    let (same, _) = combine_same_frame(&witness, &MassFunction::vacuous(&h))?;
    println!("with the vacuous mass: {same}");

    match combine_same_frame(&point_mass(&set(&h, &["A"]))?, &point_mass(&set(&h, &["C"]))?) {
        Err(Error::TotalConflict) => println!("A for sure and C for sure: total conflict"),
        other => println!("unexpected {other:?}"),
    }

    let prior = make_mass(&h, [(set(&h, &["A"]), 0.98), (set(&h, &["B", "C"]), 0.02)])?;
    let (revised, k) = condition_on_set(&prior, &set(&h, &["B"]))?;
    println!("\n{prior} given p = B: {revised}, {k}");

    // Combining across frames joins focal sets instead of intersecting them.
    let w = build_joint_frame([
        ("p", vec![Value::from("A"), "B".into(), "C".into()]),
        ("g", vec!["A".into(), "B".into()]),
    ])?;
    let g = w.subframe(&["g"])?;
    let low = point_mass(&TupleSet::singleton(&g, g.tuple(&[("g", "A".into())])?)?)?;
    let prior_h = make_mass(
        &w.subframe(&["p"])?,
        [(set(&w.subframe(&["p"])?, &["A"]), 0.98), (set(&w.subframe(&["p"])?, &["B", "C"]), 0.02)],
    )?;
    let (joined, k) = combine_join(&low, &prior_h)?;
    println!("\njoined over {}: {joined}, {k}", joined.frame().var_list());
    Ok(())
}
