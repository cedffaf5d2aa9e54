//! Parsing, pretty-printing and running programs on states and on masses.
//!
//! ```bash
//! cargo run --example while_language
//! ```

use dsqif::belief::SubnormalMass;
use dsqif::frames::{build_joint_frame, TupleSet, Value};
use dsqif::lang::{exec_concrete, exec_lifted, expand_bexp, parse_bexp, parse_program, ConcreteLimits, LiftedLimits};
use dsqif::{make_mass, point_mass};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> dsqif::Result<()> {
    let abc = || vec![Value::from("A"), "B".into(), "C".into()];
    let w = build_joint_frame([("p", abc()), ("g", abc()), ("a", vec![0.into(), 1.into()])])?;
    let pwc = parse_program("if p = g then a := 1 else a := 0 end")?;
    print!("{}", pwc.pretty());

    let guard = expand_bexp(&parse_bexp("p = g")?, &w)?;
    println!("p = g holds in {} of {} states", guard.len(), w.cardinality());

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = w.tuple(&[("p", "C".into()), ("g", "A".into()), ("a", 0.into())])?;
    let end = exec_concrete(&pwc, &w, &start, &mut rng, ConcreteLimits::default())?;
    println!("\n{} -> {}", w.render_tuple(&start), w.render_tuple(&end));

    // The same program on a belief about its inputs.
    let s = |rows: &[(&str, &str, i64)]| {
        TupleSet::new(
            &w,
            rows.iter().map(|&(p, g, a)| w.tuple(&[("p", p.into()), ("g", g.into()), ("a", a.into())]).unwrap()),
        )
        .unwrap()
    };
    let input = make_mass(&w, [(s(&[("A", "A", 0)]), 0.98), (s(&[("B", "A", 0), ("C", "A", 0)]), 0.02)])?;
    let raw = exec_lifted(&pwc, &SubnormalMass::from(&input), LiftedLimits::default())?;
    println!("\ninput      {input}");
    println!("unnormalized output {raw}");
    println!("normalized output   {}", raw.normalize()?);

    // A coin-flipping loop; the number of flips before stopping decides n.
    let v = build_joint_frame([("stop", vec![Value::from(0), 1.into()]), ("n", vec![Value::from(0), 1.into()])])?;
    let coin = parse_program("while stop = 0 do { stop := 1 } [0.5] { n := 1 - n } end")?;
    print!("\n{}", coin.pretty());
    let from = point_mass(&TupleSet::singleton(&v, v.initial_tuple())?)?;
    let out = exec_lifted(&coin, &from.into(), LiftedLimits::default())?.normalize()?;
    println!("lifted: {out}");
    let mut even = 0;
    for _ in 0..10_000 {
        let t = exec_concrete(&coin, &v, &v.initial_tuple(), &mut rng, ConcreteLimits::default())?;
        even += (v.get(&t, "n") == Some(&Value::Int(0))) as usize;
    }
    println!("sampled: n = 0 in {:.4} of 10000 runs", even as f64 / 10_000.0);
    Ok(())
}
