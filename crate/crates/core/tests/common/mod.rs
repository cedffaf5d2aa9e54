//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use dsqif::frames::{build_joint_frame, JointFrame, TupleSet, Value};
use dsqif::lang::{Aexp, ArithOp, Bexp, CmpOp, Command};
use dsqif::{make_mass, MassFunction};
use rand::Rng;

/// A single-variable frame `w` with `n` integer worlds.
pub fn frame_n(n: usize) -> JointFrame {
    build_joint_frame([("w", (0..n as i64).map(Value::Int).collect::<Vec<_>>())]).unwrap()
}

/// The set of worlds whose bits are set in `mask`.
pub fn set_of(frame: &JointFrame, mask: usize) -> TupleSet {
    let worlds: Vec<_> = frame.worlds().collect();
    TupleSet::new(frame, (0..worlds.len()).filter(|i| mask & (1 << i) != 0).map(|i| worlds[i].clone())).unwrap()
}

pub fn mask_of(frame: &JointFrame, set: &TupleSet) -> usize {
    set.iter().map(|t| 1 << frame.world_index(t).unwrap()).fold(0, |a, b| a | b)
}

/// Up to `max_focal` random focal sets with random weights.
pub fn random_mass<R: Rng>(rng: &mut R, frame: &JointFrame, max_focal: usize) -> MassFunction {
    let n = frame.cardinality();
    let count = rng.gen_range(1..=max_focal);
    let entries: Vec<(usize, f64)> =
        (0..count).map(|_| (rng.gen_range(1..(1usize << n)), rng.gen_range(0.05..1.0))).collect();
    let total: f64 = entries.iter().map(|e| e.1).sum();
    make_mass(frame, entries.into_iter().map(|(mask, w)| (set_of(frame, mask), w / total))).unwrap()
}

/// A random mass with singleton focal sets only.
pub fn random_bayesian<R: Rng>(rng: &mut R, frame: &JointFrame) -> MassFunction {
    let n = frame.cardinality();
    let mut w: Vec<f64> = (0..n).map(|_| if rng.gen_bool(0.2) { 0.0 } else { rng.gen_range(0.01..1.0) }).collect();
    if w.iter().all(|x| *x == 0.0) {
        w[0] = 1.0;
    }
    let total: f64 = w.iter().sum();
    make_mass(frame, w.iter().enumerate().filter(|(_, x)| **x > 0.0).map(|(i, x)| (set_of(frame, 1 << i), x / total)))
        .unwrap()
}

pub fn random_point<R: Rng>(rng: &mut R, frame: &JointFrame) -> MassFunction {
    let i = rng.gen_range(0..frame.cardinality());
    dsqif::point_mass(&set_of(frame, 1 << i)).unwrap()
}

fn entropy(p: &[f64]) -> f64 {
    -p.iter().filter(|x| **x > 0.0).map(|x| x * x.log2()).sum::<f64>()
}

/// Bel over every world mask, by brute force.
pub fn belief_by_mask(m: &MassFunction) -> Vec<f64> {
    let frame = m.frame();
    let n = frame.cardinality();
    let focal: Vec<(usize, f64)> = m.focal_sets().map(|(s, w)| (mask_of(frame, s), w)).collect();
    (0..1usize << n).map(|a| focal.iter().filter(|(f, _)| f & !a == 0).map(|(_, w)| w).sum()).collect()
}

fn dominates(p: &[f64], bel: &[f64]) -> bool {
    (1..bel.len()).all(|a| {
        let s: f64 = (0..p.len()).filter(|i| a & (1 << i) != 0).map(|i| p[i]).sum();
        s >= bel[a] - 1e-12
    })
}

/// Largest entropy among distributions dominating Bel, for frames of two or
/// three worlds. Searches the simplex on a 1e-3 grid, then climbs by moving
/// probability between pairs of worlds with shrinking steps.
pub fn max_entropy_oracle(m: &MassFunction) -> f64 {
    let n = m.frame().cardinality();
    assert!((2..=3).contains(&n), "oracle handles 2 or 3 worlds");
    let bel = belief_by_mask(m);
    const N: usize = 1000;
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut consider = |p: Vec<f64>| {
        if dominates(&p, &bel) {
            let h = entropy(&p);
            if best.as_ref().is_none_or(|(bh, _)| h > *bh) {
                best = Some((h, p));
            }
        }
    };
    if n == 2 {
        for i in 0..=N {
            let a = i as f64 / N as f64;
            consider(vec![a, 1.0 - a]);
        }
    } else {
        for i in 0..=N {
            for j in 0..=N - i {
                let (a, b) = (i as f64 / N as f64, j as f64 / N as f64);
                consider(vec![a, b, (1.0 - a - b).max(0.0)]);
            }
        }
    }
    // Spreading every focal mass evenly over its set always dominates Bel.
    let mut pig = vec![0.0; n];
    for (s, w) in m.focal_sets() {
        for t in s.iter() {
            pig[m.frame().world_index(t).unwrap()] += w / s.len() as f64;
        }
    }
    consider(pig);
    let (mut h, mut p) = best.expect("a dominating distribution");
    let mut step = 1e-2;
    while step > 1e-11 {
        let mut improved = true;
        while improved {
            improved = false;
            for i in 0..n {
                for j in 0..n {
                    if i == j || p[i] < step {
                        continue;
                    }
                    let mut q = p.clone();
                    q[i] -= step;
                    q[j] += step;
                    if dominates(&q, &bel) {
                        let hq = entropy(&q);
                        if hq > h {
                            h = hq;
                            p = q;
                            improved = true;
                        }
                    }
                }
            }
        }
        step /= 4.0;
    }
    h
}

/// Expressions whose value stays in `0..=2`.
fn random_aexp<R: Rng>(rng: &mut R, vars: &[&str]) -> Aexp {
    let var = Aexp::Var(dsqif::VariableId::new(vars[rng.gen_range(0..vars.len())]).unwrap());
    match rng.gen_range(0..3) {
        0 => Aexp::Int(rng.gen_range(0..=2)),
        1 => var,
        _ => Aexp::bin(ArithOp::Sub, Aexp::Int(2), var),
    }
}

fn random_bexp<R: Rng>(rng: &mut R, vars: &[&str], depth: u32) -> Bexp {
    let choice = if depth == 0 { rng.gen_range(0..2) } else { rng.gen_range(0..5) };
    match choice {
        0 => {
            let op = [CmpOp::Eq, CmpOp::Ne, CmpOp::Lt, CmpOp::Le][rng.gen_range(0..4)];
            Bexp::Cmp(op, random_aexp(rng, vars), random_aexp(rng, vars))
        }
        1 => [Bexp::True, Bexp::False][rng.gen_range(0..2)].clone(),
        2 => !random_bexp(rng, vars, depth - 1),
        3 => Bexp::and(random_bexp(rng, vars, depth - 1), random_bexp(rng, vars, depth - 1)),
        _ => Bexp::or(random_bexp(rng, vars, depth - 1), random_bexp(rng, vars, depth - 1)),
    }
}

/// A loop-free program over `vars`, each ranging over `0..=2`.
pub fn random_program<R: Rng>(rng: &mut R, vars: &[&str], depth: u32, with_choice: bool) -> Command {
    let kinds = if depth == 0 {
        2
    } else if with_choice {
        5
    } else {
        4
    };
    match rng.gen_range(0..kinds) {
        0 => Command::Skip,
        1 => Command::assign(vars[rng.gen_range(0..vars.len())], random_aexp(rng, vars)).unwrap(),
        2 => Command::seq(
            random_program(rng, vars, depth - 1, with_choice),
            random_program(rng, vars, depth - 1, with_choice),
        ),
        3 => Command::if_(
            random_bexp(rng, vars, 2),
            random_program(rng, vars, depth - 1, with_choice),
            random_program(rng, vars, depth - 1, with_choice),
        ),
        _ => {
            let p = (rng.gen_range(1..20) as f64) / 20.0;
            Command::choice(
                p,
                random_program(rng, vars, depth - 1, with_choice),
                random_program(rng, vars, depth - 1, with_choice),
            )
            .unwrap()
        }
    }
}

/// Program with at least one probabilistic choice.
pub fn random_choice_program<R: Rng>(rng: &mut R, vars: &[&str]) -> Command {
    loop {
        let c = random_program(rng, vars, 3, true);
        if c.pretty().contains('[') {
            return c;
        }
    }
}

pub fn two_var_frame() -> JointFrame {
    let vals = || (0..=2).map(Value::Int).collect::<Vec<_>>();
    build_joint_frame([("x", vals()), ("y", vals())]).unwrap()
}

/// Weight a loop-free program applies to total mass: branches of a
/// conditional each see all of the input.
pub fn mass_weight(c: &Command) -> f64 {
    match c {
        Command::Skip | Command::Assign(..) => 1.0,
        Command::Seq(a, b) => mass_weight(a) * mass_weight(b),
        Command::If(_, a, b) => mass_weight(a) + mass_weight(b),
        Command::Choice(p, a, b) => p * mass_weight(a) + (1.0 - p) * mass_weight(b),
        Command::While(..) => panic!("loop-free programs only"),
    }
}
