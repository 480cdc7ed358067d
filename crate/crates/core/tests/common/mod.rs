#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sumtrees::{Label, SumTree, Tree};

/// A random summation over `n` distinct labels, uniform over split points
/// at every node and over label orders.
pub fn random_tree(n: usize, seed: u64) -> SumTree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut labels = Label::alphabet(n);
    labels.shuffle(&mut rng);
    build(&labels, &mut rng)
}

fn build(labels: &[Label], rng: &mut impl Rng) -> SumTree {
    if labels.len() == 1 {
        return Tree::leaf(labels[0].clone());
    }
    let k = rng.gen_range(1..labels.len());
    Tree::node(build(&labels[..k], rng), build(&labels[k..], rng))
}

/// Finite values spanning many binades, with some exact cancellations.
pub fn random_values(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut v: Vec<f64> = (0..n)
        .map(|_| {
            let m: f64 = rng.gen_range(-1.0..1.0);
            m * 2f64.powi(rng.gen_range(-60..60))
        })
        .collect();
    if n >= 2 && rng.gen_bool(0.3) {
        v[1] = -v[0];
    }
    v
}
