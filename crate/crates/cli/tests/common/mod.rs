#![allow(dead_code)]

use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swtqft::{CobordismWord, SpMatrix, Surface};
use swtqft_cli::parse_word_file;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Transvection directions generating `Sp(2g, Z)`.
fn generator_directions(g: usize) -> Vec<Vec<i64>> {
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

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Word files of the shipped corpus, sorted by name.
pub fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "word"))
        .collect();
    files.sort();
    files
}

pub fn corpus_words() -> Vec<(String, CobordismWord)> {
    corpus_files()
        .into_iter()
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            let word = parse_word_file(&std::fs::read_to_string(&p).unwrap()).unwrap();
            (name, word)
        })
        .collect()
}

pub fn binomial(n: i64, r: i64) -> i64 {
    if r < 0 || r > n {
        return 0;
    }
    (0..r).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
