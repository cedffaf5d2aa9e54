//! Joint frames, tuple sets, projection, natural join and extension.
//!
//! ```bash
//! cargo run --example frames_and_tuples
//! ```

use dsqif::frames::{build_joint_frame, TupleSet, Value};

fn main() -> dsqif::Result<()> {
    let abc = || vec![Value::from("A"), "B".into(), "C".into()];
    let w = build_joint_frame([("p", abc()), ("g", abc()), ("a", vec![0.into(), 1.into()])])?;
    let high = w.subframe(&["p"])?;
    let low = w.subframe(&["g", "a"])?;
    println!("W{} has {} worlds", w.var_list(), w.cardinality());
    println!("W{} has {} worlds", high.var_list(), high.cardinality());
    println!("W{} has {} worlds", low.var_list(), low.cardinality());

    let states = TupleSet::new(
        &w,
        [
            w.tuple(&[("p", "A".into()), ("g", "A".into()), ("a", 1.into())])?,
            w.tuple(&[("p", "B".into()), ("g", "A".into()), ("a", 0.into())])?,
        ],
    )?;
    println!("\nstates           {states}");
    println!("projected to p   {}", states.project(&high)?);
    println!("projected to g,a {}", states.project(&low)?);

    let secrets = TupleSet::new(&high, [high.tuple(&[("p", "B".into())])?, high.tuple(&[("p", "C".into())])?])?;
    let guess = TupleSet::singleton(&low, low.tuple(&[("g", "A".into()), ("a", 0.into())])?)?;
    println!("\n{secrets} joined with {guess}:\n  {}", secrets.natural_join(&guess)?);

    // Extension pads a set with every value of the missing variables.
    let seen = TupleSet::singleton(&low, low.tuple(&[("g", "A".into()), ("a", 1.into())])?)?;
    println!("\n{seen} extended to W{}:\n  {}", w.var_list(), seen.extend(&w)?);
    println!("its complement has {} tuples", seen.extend(&w)?.complement().len());
    Ok(())
}
