//! The closed-up invariant: the graded trace of a composed cobordism word.
//!
//! The value is the sum of Seiberg-Witten invariants over every Spin^c
//! structure reachable from the word's Spin^c data by gluing parameters. It
//! is never split into individual Spin^c contributions, and it carries the
//! global sign fixed by the basis conventions of [`crate::cobordism`].

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::cobordism::{compose_word, CobordismWord, Move, SpincParams};
use crate::error::{Error, Result};
use crate::series::{det_one_minus_t, mul_truncated, one_minus_t_squared, IntPoly};
use crate::surface::SpMatrix;
use crate::symprod::{induced_map, SymSpace};

pub const WARN_TRANSVERSALITY: &str = "transversality of the elementary cobordisms was not checked";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantReport {
    pub word: CobordismWord,
    pub k_trail: Vec<(usize, i64)>,
    pub value: i64,
    pub empty: bool,
    pub warnings: Vec<String>,
}

fn integral(trace: &BigRational) -> Result<BigInt> {
    if !trace.is_integer() {
        return Err(Error::NonIntegralTrace(trace.to_string()));
    }
    Ok(trace.to_integer())
}

/// Graded trace of `glue_* ∘ ρ_{W_n} ∘ … ∘ ρ_{W_1}`.
pub fn sw_sum(word: &CobordismWord) -> Result<InvariantReport> {
    let k_trail = word.k_trail()?;
    let empty = k_trail.iter().any(|&(_, k)| k < 0);
    let op = compose_word(word)?;
    let trace = integral(&op.graded_trace()?)?;
    let value = trace.to_i64().ok_or(Error::Overflow("invariant value"))?;
    debug_assert!(!empty || value == 0);
    let mut warnings = Vec::new();
    if word.moves().iter().any(|m| !matches!(m, Move::Twist(_))) {
        warnings.push(WARN_TRANSVERSALITY.to_string());
    }
    Ok(InvariantReport {
        word: word.clone(),
        k_trail,
        value,
        empty,
        warnings,
    })
}

/// Sweeps `d` over `d_min..=d_max` with the template's chamber. One flux is
/// used for the whole sweep: `d_max + 1` in the `+` chamber, `d_min - 1` in
/// the `-` chamber.
pub fn sw_series(template: &CobordismWord, d_min: i64, d_max: i64) -> Result<Vec<(i64, i64)>> {
    if d_min > d_max {
        return Err(Error::InvalidRange { d_min, d_max });
    }
    let chamber = template.params().chamber;
    let eta = match chamber {
        crate::cobordism::Chamber::Plus => d_max.checked_add(1),
        crate::cobordism::Chamber::Minus => d_min.checked_sub(1),
    }
    .ok_or(Error::Overflow("series flux"))?;
    let eta = BigRational::from_integer(eta.into());
    (d_min..=d_max)
        .into_par_iter()
        .map(|d| {
            let params = SpincParams::new(d, chamber, eta.clone())?;
            let report = sw_sum(&template.with_params(params)?)?;
            Ok((d, report.value))
        })
        .collect()
}

/// Both sides of `(Σ_k L_k t^k)(1 - t)^2 = det(I - tM)` through `t^{k_max}`,
/// where `L_k` is the graded trace of `M` on `H^*(Sym^k Σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlexanderCheck {
    pub holds: bool,
    pub traces: Vec<BigInt>,
    pub lhs: IntPoly,
    pub rhs: IntPoly,
}

pub fn alexander_check(m: &SpMatrix, k_max: usize) -> Result<AlexanderCheck> {
    let surface = m.surface();
    if k_max < surface.rank() {
        return Err(Error::KMaxTooSmall {
            k_max,
            two_g: surface.rank(),
        });
    }
    let traces = (0..=k_max)
        .map(|k| {
            let op = induced_map(m, SymSpace::new(surface, k as i64))?;
            integral(&op.graded_trace()?)
        })
        .collect::<Result<Vec<_>>>()?;
    let lhs = mul_truncated(&traces, &one_minus_t_squared(), k_max);
    let mut rhs = det_one_minus_t(m);
    rhs.resize(k_max + 1, BigInt::from(0));
    Ok(AlexanderCheck {
        holds: lhs == rhs,
        traces,
        lhs,
        rhs,
    })
}
