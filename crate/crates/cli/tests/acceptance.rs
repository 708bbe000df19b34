//! Acceptance gate. Runs every criterion, prints one PASS/FAIL line each,
//! and exits non-zero if any fails.

mod common;

use std::time::{Duration, Instant};

use common::*;
use num_traits::Zero;
use rand::Rng;
use swtqft::{
    compose_moves, compose_word, graded_trace, induced_map, macdonald_series, rho_one_handle,
    rho_two_handle, sw_sum, BigRational, Chamber, CobordismWord, GradedOperator, Move, SpMatrix,
    SpincParams, Surface, SymSpace,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:.2?}, limit {limit:?}"))?;
    Ok(took)
}

fn params(d: i64, chamber: Chamber) -> SpincParams {
    SpincParams::with_default_eta(d, chamber).unwrap()
}

fn sw(word: &CobordismWord) -> Result<i64, String> {
    sw_sum(word).map(|r| r.value).map_err(|e| e.to_string())
}

fn identity_word(g: usize, d: i64, chamber: Chamber) -> CobordismWord {
    CobordismWord::mapping_torus(params(d, chamber), SpMatrix::identity(Surface::new(g))).unwrap()
}

fn s1_cross_sigma() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for g in 1..=5usize {
        let gi = g as i64;
        for d in -(gi - 1)..=(gi - 1) {
            let m = gi - 1 - d.abs();
            let expected = if m % 2 == 0 { 1 } else { -1 } * binomial(2 * gi - 2, m);
            for chamber in [Chamber::Plus, Chamber::Minus] {
                let word = identity_word(g, d, chamber);
                let value = sw(&word)?;
                let k = word.k_trail().unwrap()[0].1;
                let series = macdonald_series(word.glue(), k as usize);
                let oracle = series[k as usize].clone();
                ensure(
                    BigRational::from_integer(value.into()) == oracle && value == expected,
                    || {
                        format!("g={g} d={d} {chamber}: trace {value}, series {oracle}, closed form {expected}")
                    },
                )?;
                cases += 1;
            }
        }
    }
    let took = within(start, Duration::from_secs(10))?;
    Ok(format!("{cases} cases in {took:.2?}"))
}

fn genus_zero_chambers() -> Outcome {
    let start = Instant::now();
    for d in -5..=5i64 {
        let plus = sw(&identity_word(0, d, Chamber::Plus))?;
        let want = d.max(0);
        ensure(plus == want, || {
            format!("chamber + d={d}: {plus}, expected {want}")
        })?;
        let minus = sw(&identity_word(0, d, Chamber::Minus))?;
        let want = if d <= 0 { -d } else { 0 };
        ensure(minus == want, || {
            format!("chamber - d={d}: {minus}, expected {want}")
        })?;
    }
    let took = within(start, Duration::from_secs(1))?;
    Ok(format!("d in -5..=5, both chambers, {took:.2?}"))
}

fn vanishing_band() -> Outcome {
    let mut cases = 0;
    // g = 0 has no band: its chambered values are the previous criterion.
    for g in 1..=4i64 {
        for d in -(g + 4)..=(g + 4) {
            if d.abs() < g {
                continue;
            }
            for chamber in [Chamber::Plus, Chamber::Minus] {
                let v = sw(&identity_word(g as usize, d, chamber))?;
                ensure(v == 0, || format!("g={g} d={d} {chamber}: {v}"))?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} cases"))
}

fn oracle_equality() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2024);
    let mut matrices = 0;
    let mut traces = 0;
    for g in 1..=3usize {
        for _ in 0..20 {
            let m = random_symplectic(&mut r, g, 10);
            let kmax = 2 * g - 2;
            let series = macdonald_series(&m, kmax);
            for (k, coeff) in series.iter().enumerate() {
                let op = induced_map(&m, SymSpace::new(m.surface(), k as i64))
                    .map_err(|e| e.to_string())?;
                let t = graded_trace(&op).map_err(|e| e.to_string())?;
                ensure(&t == coeff, || {
                    format!("{m} k={k}: trace {t}, series {coeff}")
                })?;
                traces += 1;
            }
            matrices += 1;
        }
    }
    let took = within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{matrices} matrices, {traces} traces in {took:.2?}"
    ))
}

fn random_moves(r: &mut impl Rng, start: usize, len: usize, max_genus: usize) -> Vec<Move> {
    let mut g = start;
    let mut moves = Vec::new();
    for _ in 0..len {
        let mv = match r.gen_range(0..3) {
            0 if g < max_genus => Move::H1,
            1 if g > 0 => Move::H2,
            _ => Move::Twist(random_symplectic(r, g, 4)),
        };
        g = mv.genus_after(g).unwrap();
        moves.push(mv);
    }
    moves
}

fn functoriality_and_cancellation() -> Outcome {
    let mut r = rng(77);
    let mut splits = 0;
    for _ in 0..40 {
        let start = r.gen_range(0..=2usize);
        let len = r.gen_range(1..=4usize);
        let moves = random_moves(&mut r, start, len, 2);
        let d = r.gen_range(-1..=2i64);
        let p = params(d, Chamber::Plus);
        let whole = compose_moves(start, &p, &moves).map_err(|e| e.to_string())?;
        for cut in 0..=moves.len() {
            let (w0, w1) = moves.split_at(cut);
            let mid = swtqft::cobordism::genus_trail(start, w0).unwrap();
            let first = compose_moves(start, &p, w0).map_err(|e| e.to_string())?;
            let second = compose_moves(*mid.last().unwrap(), &p, w1).map_err(|e| e.to_string())?;
            let composite = second.compose(&first).map_err(|e| e.to_string())?;
            ensure(composite == whole, || {
                format!("start genus {start}, d={d}, cut {cut} of {moves:?}")
            })?;
            splits += 1;
        }
    }
    let mut pairs = 0;
    for g in 0..=3usize {
        for k in 0..=(2 * g as i64 - 2) {
            let up = rho_one_handle(g, k).map_err(|e| e.to_string())?;
            let down = rho_two_handle(g + 1, k + 1).map_err(|e| e.to_string())?;
            let id = GradedOperator::identity(SymSpace::new(Surface::new(g), k));
            ensure(down.compose(&up).map_err(|e| e.to_string())? == id, || {
                format!("2-handle after 1-handle is not the identity at g={g} k={k}")
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{splits} splits, {pairs} cancellations"))
}

fn transpose(m: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

fn transpose_duality() -> Outcome {
    let mut cases = 0;
    for g in 0..=2usize {
        for k in 0..=2i64 {
            let up = rho_one_handle(g, k).map_err(|e| e.to_string())?.to_dense();
            let down = rho_two_handle(g + 1, k + 1)
                .map_err(|e| e.to_string())?
                .to_dense();
            ensure(down == transpose(&up), || format!("g={g} k={k}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (g,k) pairs"))
}

/// Classes `Λ^i H^1 · x^j` with `i + 2j = d` and `i + j ≤ k`.
fn betti_closed_form(g: usize, k: usize, d: usize) -> u64 {
    (0..=d.min(2 * g))
        .filter(|i| (d - i).is_multiple_of(2) && i + (d - i) / 2 <= k)
        .map(|i| binomial(2 * g as i64, i as i64) as u64)
        .sum()
}

fn betti_duality() -> Outcome {
    let mut cases = 0;
    for g in 0..=4usize {
        for k in 0..=g {
            let space = SymSpace::new(Surface::new(g), k as i64);
            let dims = space.betti();
            ensure(dims.len() == 2 * k + 1, || {
                format!("g={g} k={k}: {} degrees", dims.len())
            })?;
            let mut counted = vec![0u64; 2 * k + 1];
            for key in space.enumerate_basis() {
                counted[key.degree() as usize] += 1;
            }
            for d in 0..=2 * k {
                ensure(
                    dims[d] == counted[d] && dims[d] == betti_closed_form(g, k, d),
                    || format!("g={g} k={k} degree {d}: {} vs {}", dims[d], counted[d]),
                )?;
                ensure(dims[d] == dims[2 * k - d], || {
                    format!("g={g} k={k}: not palindromic")
                })?;
            }
            if k >= 1 {
                ensure(dims[1] == 2 * g as u64, || {
                    format!("g={g} k={k}: b1 = {}", dims[1])
                })?;
            }
            cases += 1;
        }
    }
    Ok(format!("{cases} symmetric products"))
}

fn with_moves(
    word: &CobordismWord,
    start: usize,
    moves: Vec<Move>,
    glue: SpMatrix,
) -> CobordismWord {
    CobordismWord::new(start, word.params().clone(), moves, glue).unwrap()
}

fn trace_invariances() -> Outcome {
    let mut r = rng(8);
    let corpus = corpus_words();
    ensure(corpus.len() >= 10, || {
        format!("corpus has {} words", corpus.len())
    })?;
    let mut flips = 0;
    for (name, w) in &corpus {
        let g = w.start_genus();
        let value = sw(w)?;
        let glue = w.glue().clone();
        let id = SpMatrix::identity(glue.surface());

        let n = random_symplectic(&mut r, g, 6);
        let mut conj = vec![Move::Twist(n.inverse())];
        conj.extend(w.moves().iter().cloned());
        let conjugated = with_moves(w, g, conj, n.mul(&glue).unwrap());
        ensure(sw(&conjugated)? == value, || format!("{name}: conjugation"))?;

        // Absorb the glue as a final twist, then rotate it to the front.
        let mut absorbed = w.moves().to_vec();
        absorbed.push(Move::Twist(glue.clone()));
        ensure(
            sw(&with_moves(w, g, absorbed, id.clone()))? == value,
            || format!("{name}: glue absorbed as a twist"),
        )?;
        let mut rotated = vec![Move::Twist(glue.clone())];
        rotated.extend(w.moves().iter().cloned());
        let rotated = with_moves(w, g, rotated, id.clone());
        ensure(sw(&rotated)? == value, || format!("{name}: twist rotation"))?;

        // Rotating a final handle to the front is odd against odd: the sign flips.
        if let Some(last @ (Move::H1 | Move::H2)) = w.moves().last() {
            let trail = w.genus_trail();
            let before = trail[trail.len() - 2];
            let mut moves = vec![last.clone(), Move::Twist(glue.clone())];
            moves.extend(w.moves()[..w.moves().len() - 1].iter().cloned());
            let rotated = with_moves(w, before, moves, SpMatrix::identity(Surface::new(before)));
            ensure(sw(&rotated)? == -value, || {
                format!("{name}: handle rotation")
            })?;
            flips += 1;
        }
    }
    Ok(format!(
        "{} corpus words, {flips} handle rotations",
        corpus.len()
    ))
}

fn cli_round_trip() -> Outcome {
    let files = corpus_files();
    ensure(files.len() >= 10, || {
        format!("corpus has {} files", files.len())
    })?;
    for required in ["example_s1xsigma2.word", "empty_moduli.word"] {
        ensure(files.iter().any(|f| f.ends_with(required)), || {
            format!("missing {required}")
        })?;
    }
    for f in &files {
        let recorded = std::fs::read_to_string(f.with_extension("json"))
            .map_err(|e| format!("{}: {e}", f.display()))?;
        let out = swtqft_cli::run(["swtqft", "--json", "sw", f.to_str().unwrap()]);
        ensure(out.code == 0, || {
            format!("{}: exit {} {}", f.display(), out.code, out.stderr)
        })?;
        ensure(out.stdout == recorded, || {
            format!("{}: output differs", f.display())
        })?;
    }
    let s1 = swtqft_cli::run([
        "swtqft",
        "sw",
        corpus_dir()
            .join("example_s1xsigma2.word")
            .to_str()
            .unwrap(),
    ]);
    ensure(s1.stdout.contains("value: -2"), || {
        "S^1 x Sigma_2 does not print value: -2".into()
    })?;
    let empty = swtqft_cli::run([
        "swtqft",
        "--json",
        "sw",
        corpus_dir().join("empty_moduli.word").to_str().unwrap(),
    ]);
    ensure(empty.stdout.contains("\"empty\": true"), || {
        "empty-moduli file is not empty".into()
    })?;
    Ok(format!("{} files byte-identical", files.len()))
}

fn integrality() -> Outcome {
    let mut traces = 0;
    let check = |t: BigRational, what: String| ensure(t.is_integer(), || format!("{what}: {t}"));
    for (name, w) in corpus_words() {
        let g = w.start_genus() as i64;
        for d in -(g + 2)..=(g + 2) {
            for chamber in [Chamber::Plus, Chamber::Minus] {
                let p = params(d, chamber);
                let w = w.with_params(p).map_err(|e| e.to_string())?;
                let op = compose_word(&w).map_err(|e| e.to_string())?;
                let t = if op.domain().is_zero_space() {
                    BigRational::zero()
                } else {
                    graded_trace(&op).map_err(|e| e.to_string())?
                };
                check(t, format!("{name} d={d} {chamber}"))?;
                traces += 1;
            }
        }
    }
    let mut r = rng(31);
    for g in 1..=3usize {
        for _ in 0..10 {
            let m = random_symplectic(&mut r, g, 8);
            for k in 0..=(2 * g as i64) {
                let op =
                    induced_map(&m, SymSpace::new(m.surface(), k)).map_err(|e| e.to_string())?;
                check(
                    graded_trace(&op).map_err(|e| e.to_string())?,
                    format!("{m} k={k}"),
                )?;
                traces += 1;
            }
        }
    }
    Ok(format!("{traces} traces integral"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("S^1 x Sigma values", s1_cross_sigma),
        ("genus 0 chambered values", genus_zero_chambers),
        ("vanishing outside the band", vanishing_band),
        (
            "trace equals characteristic-polynomial series",
            oracle_equality,
        ),
        (
            "functoriality and handle cancellation",
            functoriality_and_cancellation,
        ),
        (
            "2-handle is the transpose of the 1-handle",
            transpose_duality,
        ),
        ("Betti numbers and Poincare duality", betti_duality),
        ("conjugation and rotation invariance", trace_invariances),
        ("CLI JSON round trip", cli_round_trip),
        ("integrality of traces", integrality),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
