#![allow(dead_code)]

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swtqft::{BigRational, Monomial, MultiVector, SpMatrix, Surface};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

/// Transvection directions generating `Sp(2g, Z)`: every basis vector plus
/// `a_i + a_{i+1}` and `b_i - a_{i+1}`.
pub fn generator_directions(g: usize) -> Vec<Vec<i64>> {
    let n = 2 * g;
    let mut dirs = Vec::new();
    for i in 0..n {
        let mut v = vec![0; n];
        v[i] = 1;
        dirs.push(v);
    }
    for i in 0..g.saturating_sub(1) {
        let mut v = vec![0; n];
        v[2 * i] = 1;
        v[2 * i + 2] = 1;
        dirs.push(v);
        let mut w = vec![0; n];
        w[2 * i + 1] = 1;
        w[2 * i + 2] = -1;
        dirs.push(w);
    }
    dirs
}

/// Product of `len` random elementary symplectic transvections.
pub fn random_symplectic(rng: &mut impl Rng, g: usize, len: usize) -> SpMatrix {
    let s = Surface::new(g);
    let dirs = generator_directions(g);
    let mut m = SpMatrix::identity(s);
    if dirs.is_empty() {
        return m;
    }
    for _ in 0..len {
        let v = &dirs[rng.gen_range(0..dirs.len())];
        let lambda = if rng.gen_bool(0.5) { 1 } else { -1 };
        m = m
            .mul(&SpMatrix::transvection(s, v, lambda).unwrap())
            .unwrap();
    }
    m
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn symplectic_strategy(g: usize) -> impl Strategy<Value = SpMatrix> {
    (any::<u64>(), 0usize..7).prop_map(move |(seed, len)| random_symplectic(&mut rng(seed), g, len))
}

pub fn multivector_strategy(g: usize) -> impl Strategy<Value = MultiVector> {
    let n = 2 * g;
    prop::collection::vec((0u64..(1u64 << n), -3i64..=3), 0..6).prop_map(move |terms| {
        MultiVector::from_terms(Surface::new(g), terms.into_iter().map(|(m, c)| (m, q(c))))
    })
}

/// Keeps only the terms of exterior degree `p`.
pub fn degree_part(x: &MultiVector, p: u32) -> MultiVector {
    MultiVector::from_terms(
        x.surface(),
        x.terms()
            .iter()
            .filter(|(m, _)| m.count_ones() == p)
            .map(|(&m, c)| (m, c.clone())),
    )
}

pub fn all_monomials(g: usize) -> impl Iterator<Item = Monomial> {
    0u64..(1u64 << (2 * g))
}

/// Binomial coefficient, exact.
pub fn binomial(n: u64, k: u64) -> i64 {
    if k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc as i64
}
