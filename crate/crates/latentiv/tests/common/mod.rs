#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use latentiv::io::format_pair;
use latentiv_core::RngStream;
use rand_distr::{Distribution, StandardNormal};

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_latentiv"));
    c.env("RUST_LOG", "warn");
    c
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn latentiv")
}

/// `x = level + 0.5 e`, `y = x + 0.5 e'` with three separated levels of the cause.
pub fn clustered_chain(n: usize, seed: u64) -> (Vec<f64>, Vec<f64>) {
    let mut rng = RngStream::new(seed);
    let mut x = Vec::with_capacity(n);
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        let e: f64 = StandardNormal.sample(&mut rng);
        let xv = (rng.index(3) as f64 - 1.0) * 3.0 + 0.5 * e;
        let e: f64 = StandardNormal.sample(&mut rng);
        x.push(xv);
        y.push(xv + 0.5 * e);
    }
    (x, y)
}

pub fn write_chain(path: &Path, n: usize, seed: u64) {
    let (x, y) = clustered_chain(n, seed);
    std::fs::write(path, format_pair(&x, &y)).unwrap();
}

/// A small corpus of clustered chains; odd ids store the effect in the first column.
/// With `flip_truth` the metadata states the opposite direction for every pair.
pub fn write_corpus(dir: &Path, pairs: u32, n: usize, flip_truth: bool) -> PathBuf {
    std::fs::create_dir_all(dir).unwrap();
    let mut meta = String::new();
    for id in 1..=pairs {
        let (x, y) = clustered_chain(n, 100 + u64::from(id));
        let reversed = id % 2 == 1;
        let body = if reversed { format_pair(&y, &x) } else { format_pair(&x, &y) };
        std::fs::write(dir.join(format!("pair{id:04}.txt")), body).unwrap();
        let cause_first = reversed == flip_truth;
        let cols = if cause_first { "1 1 2 2" } else { "2 2 1 1" };
        meta.push_str(&format!("{id} {cols} {}\n", 0.5 + f64::from(id) / 4.0));
    }
    std::fs::write(dir.join("pairmeta.txt"), meta).unwrap();
    dir.to_path_buf()
}

pub fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

pub fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}
