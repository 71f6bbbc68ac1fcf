#![allow(dead_code)]

use latentiv_core::{DataPair, RngStream};
use rand_distr::{Distribution, StandardNormal};

fn normal(rng: &mut RngStream) -> f64 {
    StandardNormal.sample(rng)
}

/// Three well separated populations (levels -3, 0, 3) selected by a hidden
/// instrument of the cause.
fn level(rng: &mut RngStream) -> f64 {
    (rng.index(3) as f64 - 1.0) * 3.0
}

/// `I_x -> X -> Y` with a cluster-structured cause: `x = level + 0.5 e`, `y = x + 0.5 e'`.
pub fn clustered_chain(n: usize, seed: u64) -> DataPair {
    let mut rng = RngStream::new(seed);
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let xv = level(&mut rng) + 0.5 * normal(&mut rng);
        x.push(xv);
        y.push(xv + 0.5 * normal(&mut rng));
    }
    DataPair::new(x, y).unwrap()
}

/// `X <- U -> Y` with a cluster-structured hidden cause.
pub fn clustered_confounded(n: usize, seed: u64) -> DataPair {
    let mut rng = RngStream::new(seed);
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let u = level(&mut rng);
        x.push(u + 0.5 * normal(&mut rng));
        y.push(u + 0.5 * normal(&mut rng));
    }
    DataPair::new(x, y).unwrap()
}

pub fn gaussian_triple(n: usize, rng: &mut RngStream) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let z: Vec<f64> = (0..n).map(|_| normal(rng)).collect();
    let x: Vec<f64> = z.iter().map(|a| 0.6 * a + normal(rng)).collect();
    let y: Vec<f64> = z.iter().zip(&x).map(|(a, b)| -0.5 * a + 0.15 * b + normal(rng)).collect();
    (x, y, z)
}
