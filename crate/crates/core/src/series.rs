//! Integer polynomial helpers and the classical trace generating function
//! `Σ_k L(Sym^k h) t^k = det(I - tM) / (1 - t)^2`.
//!
//! Nothing here touches the exterior algebra: the determinant comes from the
//! Faddeev-LeVerrier recursion on the integer matrix, so the series is an
//! independent check on traces computed through `induced_map`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::surface::SpMatrix;

/// Coefficients in ascending powers of `t`.
pub type IntPoly = Vec<BigInt>;

/// `det(I - tM)` for a square integer matrix, via Faddeev-LeVerrier.
pub fn det_one_minus_t(m: &SpMatrix) -> IntPoly {
    let n = m.size();
    let a: Vec<Vec<BigInt>> = m
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigInt::from).collect())
        .collect();
    // With det(sI - A) = Σ_k c_k s^{n-k}, c_0 = 1, we have det(I - tA) = Σ_k c_k t^k.
    let mut coeffs: IntPoly = vec![BigInt::one()];
    let mut aux = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // aux ← A·aux + c_{k-1} I
        let mut next = mat_mul(&a, &aux);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[k - 1];
        }
        aux = next;
        let prod = mat_mul(&a, &aux);
        let trace: BigInt = (0..n).map(|i| prod[i][i].clone()).sum();
        let (quot, rem) = (-trace).div_rem(&BigInt::from(k));
        assert!(
            rem.is_zero(),
            "Faddeev-LeVerrier division must be exact over Z"
        );
        coeffs.push(quot);
    }
    coeffs
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|l| &a[i][l] * &b[l][j]).sum())
                .collect()
        })
        .collect()
}

/// Product of two polynomials, truncated to degree `max_degree`.
pub fn mul_truncated(p: &[BigInt], q: &[BigInt], max_degree: usize) -> IntPoly {
    let mut out = vec![BigInt::zero(); max_degree + 1];
    for (i, a) in p.iter().enumerate().take(max_degree + 1) {
        for (j, b) in q.iter().enumerate().take(max_degree + 1 - i) {
            out[i + j] += a * b;
        }
    }
    out
}

/// `(1 - t)^2`.
pub fn one_minus_t_squared() -> IntPoly {
    vec![BigInt::one(), BigInt::from(-2), BigInt::one()]
}

/// Coefficients of `t^0 .. t^{k_max}` in `det(I - tM) / (1 - t)^2`.
pub fn macdonald_series(m: &SpMatrix, k_max: usize) -> Vec<BigRational> {
    let det = det_one_minus_t(m);
    // 1/(1-t)^2 = Σ (n+1) t^n
    let inverse: IntPoly = (0..=k_max).map(|n| BigInt::from(n + 1)).collect();
    mul_truncated(&det, &inverse, k_max)
        .into_iter()
        .map(BigRational::from_integer)
        .collect()
}
