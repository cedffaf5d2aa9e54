//! Shannon, KL and JS on distributions; nonspecificity, aggregate
//! uncertainty, conflict and the generalized JS divergence on masses.
//!
//! ```bash
//! cargo run --example uncertainty_measures
//! ```

use dsqif::frames::{build_joint_frame, JointFrame, TupleSet, Value};
use dsqif::uncertainty::{
    gen_hartley, gen_js, gen_shannon, js_divergence, kl_divergence, shannon_entropy, Distribution, UncertaintyConfig,
};
use dsqif::{make_mass, point_mass, MassFunction};

fn set(h: &JointFrame, atoms: &[&str]) -> TupleSet {
    TupleSet::new(h, atoms.iter().map(|a| h.tuple(&[("p", Value::from(*a))]).unwrap())).unwrap()
}

fn main() -> dsqif::Result<()> {
    let h = build_joint_frame([("p", vec![Value::from("A"), "B".into(), "C".into()])])?;

    let p = Distribution::from_world_probs(&h, &[0.98, 0.01, 0.01])?;
    let q = Distribution::from_world_probs(&h, &[1.0 / 3.0; 3])?;
    println!("S(.98, .01, .01) = {:.6}", shannon_entropy(&p));
    println!("KL(p, uniform)   = {:.6}", kl_divergence(&p, &q)?);
    println!("KL(uniform, A)   = {}", kl_divergence(&q, &Distribution::from_world_probs(&h, &[1.0, 0.0, 0.0])?)?);
    println!("JS(p, uniform)   = {:.6}", js_divergence(&p, &q)?);

    let config = UncertaintyConfig::default();
    let masses: Vec<(&str, MassFunction)> = vec![
        ("point A", point_mass(&set(&h, &["A"]))?),
        ("vacuous", MassFunction::vacuous(&h)),
        ("A .98, BC .02", make_mass(&h, [(set(&h, &["A"]), 0.98), (set(&h, &["B", "C"]), 0.02)])?),
        ("AB .98, ABC .02", make_mass(&h, [(set(&h, &["A", "B"]), 0.98), (h.full_set(), 0.02)])?),
    ];
    println!("\n{:<16} {:>9} {:>9} {:>9}  maximizing distribution", "mass", "GH", "AU", "GS");
    for (name, m) in &masses {
        let me = config.max_entropy(m)?;
        println!(
            "{name:<16} {:>9.6} {:>9.6} {:>9.6}  {:?}",
            gen_hartley(m),
            me.entropy,
            gen_shannon(m)?,
            me.probs.iter().map(|x| (x * 1e6).round() / 1e6).collect::<Vec<_>>()
        );
    }

    let truth = point_mass(&set(&h, &["A"]))?;
    println!();
    for (name, m) in &masses {
        println!("GJS({name}, point A) = {:.6}", gen_js(m, &truth)?);
    }
    Ok(())
}
