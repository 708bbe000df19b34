//! Cohomology of the symmetric product `Sym^k Σ` as a graded vector space.
//!
//! Basis elements are pairs `(S, j)`: an exterior monomial `e_S` in
//! `Λ^{|S|} H^1` times `x^j u^{k-|S|-j}`, where `x` is the point class (degree
//! 2) and `u` the unit. The `u` exponent is implicit. Admissible keys satisfy
//! `|S| + j <= k`; the total degree is `|S| + 2j`. A negative `k` encodes an
//! empty moduli space and gives the zero vector space.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exterior::{column_images, image_of_monomial, indices, Monomial};
use crate::surface::{basis_label, SpMatrix, Surface};

/// A basis element `(S, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymKey {
    pub subset: Monomial,
    pub x_power: u32,
}

impl SymKey {
    pub fn new(subset: Monomial, x_power: u32) -> Self {
        Self { subset, x_power }
    }

    pub fn exterior_degree(&self) -> u32 {
        self.subset.count_ones()
    }

    pub fn degree(&self) -> u32 {
        self.exterior_degree() + 2 * self.x_power
    }

    /// `(-1)^{degree}`, which only depends on `|S|`.
    pub fn is_odd(&self) -> bool {
        self.exterior_degree() % 2 == 1
    }
}

impl Ord for SymKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.exterior_degree()
            .cmp(&other.exterior_degree())
            .then(self.subset.cmp(&other.subset))
            .then(self.x_power.cmp(&other.x_power))
    }
}

impl PartialOrd for SymKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SymKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = indices(self.subset).map(basis_label).collect();
        write!(f, "({{{}}}, {})", labels.join(","), self.x_power)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymSpace {
    surface: Surface,
    k: i64,
}

impl SymSpace {
    pub fn new(surface: Surface, k: i64) -> Self {
        Self { surface, k }
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn genus(&self) -> usize {
        self.surface.genus()
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn is_zero_space(&self) -> bool {
        self.k < 0
    }

    pub fn contains(&self, key: &SymKey) -> bool {
        let n = self.surface.rank();
        self.k >= 0
            && (n >= 64 || key.subset >> n == 0)
            && key.exterior_degree() as i64 + key.x_power as i64 <= self.k
    }

    /// Total dimension `Σ_i C(2g, i) (k - i + 1)`, saturating at `u128::MAX`.
    pub fn dimension(&self) -> u128 {
        if self.k < 0 {
            return 0;
        }
        let n = self.surface.rank() as u128;
        let k = self.k as u128;
        let mut binom: u128 = 1;
        let mut total: u128 = 0;
        for i in 0..=n.min(k) {
            total = total.saturating_add(binom.saturating_mul(k - i + 1));
            binom = binom.saturating_mul(n - i) / (i + 1);
        }
        total
    }

    /// Basis keys ordered by `|S|`, then bitmask value, then `j`.
    pub fn enumerate_basis(&self) -> Vec<SymKey> {
        if self.k < 0 {
            return Vec::new();
        }
        let n = self.surface.rank();
        let max_size = n.min(self.k as usize);
        let mut keys = Vec::new();
        for size in 0..=max_size {
            let top = self.k as u32 - size as u32;
            for subset in subsets_of_size(n, size) {
                keys.extend((0..=top).map(|j| SymKey::new(subset, j)));
            }
        }
        keys
    }

    /// Dimensions by total degree, `dims[d]` for `d = 0..=max degree`.
    /// Empty for the zero space.
    pub fn betti(&self) -> Vec<u64> {
        if self.k < 0 {
            return Vec::new();
        }
        let n = self.surface.rank() as u64;
        let k = self.k as u64;
        // x^k sits in degree 2k, the top degree.
        let mut dims = vec![0u64; 2 * k as usize + 1];
        let mut binom: u64 = 1;
        for i in 0..=n.min(k) {
            for j in 0..=(k - i) {
                dims[(i + 2 * j) as usize] += binom;
            }
            binom = binom * (n - i) / (i + 1);
        }
        dims
    }

    /// Alternating sum of the Betti numbers.
    pub fn euler_char(&self) -> i64 {
        self.betti()
            .iter()
            .enumerate()
            .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum()
    }
}

/// All `size`-element subsets of `0..n` as bitmasks, ascending.
fn subsets_of_size(n: usize, size: usize) -> Vec<Monomial> {
    if size > n {
        return Vec::new();
    }
    if size == 0 {
        return vec![0];
    }
    // Gosper's hack walks same-popcount masks in increasing order.
    let mut out = Vec::new();
    let mut mask: u128 = (1u128 << size) - 1;
    let limit: u128 = 1u128 << n;
    while mask < limit {
        out.push(mask as Monomial);
        let lowest = mask & mask.wrapping_neg();
        let ripple = mask + lowest;
        mask = (((ripple ^ mask) >> 2) / lowest) | ripple;
    }
    out
}

pub(crate) type Column = BTreeMap<SymKey, BigRational>;

pub(crate) fn add_into(col: &mut Column, key: SymKey, coeff: BigRational) {
    if coeff.is_zero() {
        return;
    }
    let slot = col.entry(key).or_insert_with(BigRational::zero);
    *slot += coeff;
    if slot.is_zero() {
        col.remove(&key);
    }
}

/// A vector in `H^*(Sym^k Σ)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymCohClass {
    space: SymSpace,
    terms: Column,
}

impl SymCohClass {
    pub fn zero(space: SymSpace) -> Self {
        Self {
            space,
            terms: Column::new(),
        }
    }

    /// Panics if `key` is not a basis element of `space`.
    pub fn basis(space: SymSpace, key: SymKey) -> Self {
        Self::from_terms(space, [(key, BigRational::one())])
    }

    pub fn from_terms<I>(space: SymSpace, terms: I) -> Self
    where
        I: IntoIterator<Item = (SymKey, BigRational)>,
    {
        let mut out = Self::zero(space);
        for (key, coeff) in terms {
            assert!(space.contains(&key), "key {key} outside Sym^{}", space.k());
            add_into(&mut out.terms, key, coeff);
        }
        out
    }

    pub fn space(&self) -> SymSpace {
        self.space
    }

    pub fn terms(&self) -> &BTreeMap<SymKey, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, key: &SymKey) -> BigRational {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A linear map between two symmetric-product cohomologies, stored as sparse
/// columns indexed by domain basis keys. Zero columns are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedOperator {
    domain: SymSpace,
    codomain: SymSpace,
    degree_shift: i64,
    columns: BTreeMap<SymKey, Column>,
}

impl GradedOperator {
    pub fn zero(domain: SymSpace, codomain: SymSpace, degree_shift: i64) -> Self {
        Self {
            domain,
            codomain,
            degree_shift,
            columns: BTreeMap::new(),
        }
    }

    pub fn identity(space: SymSpace) -> Self {
        let columns = space
            .enumerate_basis()
            .into_iter()
            .map(|key| (key, Column::from([(key, BigRational::one())])))
            .collect();
        Self {
            domain: space,
            codomain: space,
            degree_shift: 0,
            columns,
        }
    }

    /// Assembles an operator from columns, dropping zero entries. Keys must
    /// belong to the respective spaces.
    pub(crate) fn from_columns<I>(
        domain: SymSpace,
        codomain: SymSpace,
        degree_shift: i64,
        columns: I,
    ) -> Self
    where
        I: IntoIterator<Item = (SymKey, Column)>,
    {
        let columns = columns
            .into_iter()
            .filter(|(_, c)| !c.is_empty())
            .inspect(|(key, col)| {
                debug_assert!(domain.contains(key));
                debug_assert!(col.keys().all(|r| codomain.contains(r)));
            })
            .collect();
        Self {
            domain,
            codomain,
            degree_shift,
            columns,
        }
    }

    pub fn domain(&self) -> SymSpace {
        self.domain
    }

    pub fn codomain(&self) -> SymSpace {
        self.codomain
    }

    pub fn degree_shift(&self) -> i64 {
        self.degree_shift
    }

    pub fn is_zero(&self) -> bool {
        self.columns.is_empty()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.domain == self.codomain
    }

    pub fn entry(&self, row: &SymKey, col: &SymKey) -> BigRational {
        self.columns
            .get(col)
            .and_then(|c| c.get(row))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// The image of a basis vector.
    pub fn column(&self, key: &SymKey) -> SymCohClass {
        SymCohClass {
            space: self.codomain,
            terms: self.columns.get(key).cloned().unwrap_or_default(),
        }
    }

    pub fn apply(&self, v: &SymCohClass) -> Result<SymCohClass> {
        if v.space != self.domain {
            return Err(Error::ComposeMismatch);
        }
        let mut out = Column::new();
        for (key, coeff) in &v.terms {
            if let Some(col) = self.columns.get(key) {
                for (row, entry) in col {
                    add_into(&mut out, *row, entry * coeff);
                }
            }
        }
        Ok(SymCohClass {
            space: self.codomain,
            terms: out,
        })
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &GradedOperator) -> Result<GradedOperator> {
        if inner.codomain != self.domain {
            return Err(Error::ComposeMismatch);
        }
        let columns: Vec<(SymKey, Column)> = inner
            .columns
            .par_iter()
            .map(|(key, col)| {
                let mut out = Column::new();
                for (mid, coeff) in col {
                    if let Some(outer) = self.columns.get(mid) {
                        for (row, entry) in outer {
                            add_into(&mut out, *row, entry * coeff);
                        }
                    }
                }
                (*key, out)
            })
            .collect();
        Ok(Self::from_columns(
            inner.domain,
            self.codomain,
            inner.degree_shift + self.degree_shift,
            columns,
        ))
    }

    /// Dense matrix in the deterministic basis order: `rows[r][c]` is the
    /// coefficient of codomain key `r` in the image of domain key `c`.
    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let rows = self.codomain.enumerate_basis();
        let cols = self.domain.enumerate_basis();
        rows.iter()
            .map(|r| cols.iter().map(|c| self.entry(r, c)).collect())
            .collect()
    }

    /// `Σ_{(S,j)} (-1)^{|S|} · A[(S,j)][(S,j)]`.
    pub fn graded_trace(&self) -> Result<BigRational> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism);
        }
        Ok(self
            .columns
            .iter()
            .filter_map(|(key, col)| {
                col.get(key)
                    .map(|d| if key.is_odd() { -d.clone() } else { d.clone() })
            })
            .fold(BigRational::zero(), |acc, x| acc + x))
    }
}

/// The action of a mapping class on `H^*(Sym^k Σ)`: `M` acts on the exterior
/// factor and fixes the unit and the point class.
pub fn induced_map(m: &SpMatrix, space: SymSpace) -> Result<GradedOperator> {
    if m.surface() != space.surface() {
        return Err(Error::SizeMismatch {
            expected: space.surface().rank(),
            found: m.size(),
        });
    }
    let images = column_images(m);
    let surface = space.surface();
    let keys = space.enumerate_basis();
    // Exterior images depend only on S; compute once per subset.
    let mut subsets: Vec<Monomial> = keys.iter().map(|k| k.subset).collect();
    subsets.dedup();
    let lambda_images: BTreeMap<Monomial, _> = subsets
        .par_iter()
        .map(|&s| (s, image_of_monomial(&images, surface, s)))
        .collect();
    let columns = keys.into_iter().map(|key| {
        let image = &lambda_images[&key.subset];
        let col: Column = image
            .terms()
            .iter()
            .map(|(&t, c)| (SymKey::new(t, key.x_power), c.clone()))
            .collect();
        (key, col)
    });
    Ok(GradedOperator::from_columns(space, space, 0, columns))
}

/// Graded trace of an endomorphism; see [`GradedOperator::graded_trace`].
pub fn graded_trace(op: &GradedOperator) -> Result<BigRational> {
    op.graded_trace()
}
