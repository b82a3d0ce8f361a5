#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Feasible geometry for `d_min = 0.1`: cumulative gaps in `[0.1, 1.2]`,
/// re-centred so a randomly chosen element sits at the origin and comes first.
pub fn random_geometry(rng: &mut ChaCha8Rng, n: usize) -> Vec<f64> {
    let mut line = vec![0.0];
    for _ in 1..n {
        let gap = rng.gen_range(0.1..1.2);
        line.push(line.last().unwrap() + gap);
    }
    let origin = rng.gen_range(0..n);
    let shift = line[origin];
    let mut x: Vec<f64> = line.iter().map(|p| p - shift).collect();
    x.swap(0, origin);
    x[0] = 0.0;
    x
}

pub fn random_u(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(-1.0..=1.0)
}

pub fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
