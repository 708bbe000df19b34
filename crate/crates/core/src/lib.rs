//! Exact computation of summed Seiberg-Witten invariants of closed
//! 3-manifolds with `b_1 > 0`, presented as a surface `Σ` and a cobordism
//! `Σ → Σ` built from elementary handles and closed up by a mapping class.
//!
//! The pipeline:
//!
//! * [`surface`] and [`exterior`]: `H^1(Σ; Q)` with its intersection form,
//!   the exterior algebra over it, and the `Sp(2g, Z)` action.
//! * [`symprod`]: the graded space `H^*(Sym^k Σ)`, induced maps of mapping
//!   classes, and graded traces.
//! * [`cobordism`]: vortex-degree bookkeeping and the push-pull maps of 1-,
//!   2-handles and twists.
//! * [`tqft`]: the invariant itself, sweeps over the Spin^c degree, and the
//!   characteristic-polynomial cross-check.
//!
//! All arithmetic is over `Q` with arbitrary-precision integers.

pub mod cobordism;
pub mod error;
pub mod exterior;
pub mod linalg;
pub mod series;
pub mod surface;
pub mod symprod;
pub mod tqft;

pub use cobordism::{
    check_transverse, compose_moves, compose_word, rho_one_handle, rho_twist, rho_two_handle,
    vortex_degree, Chamber, CobordismWord, Move, SpincParams,
};
pub use error::{Error, Result};
pub use exterior::{Monomial, MultiVector};
pub use series::macdonald_series;
pub use surface::{SpMatrix, Surface};
pub use symprod::{graded_trace, induced_map, GradedOperator, SymCohClass, SymKey, SymSpace};
pub use tqft::{alexander_check, sw_series, sw_sum, AlexanderCheck, InvariantReport};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
