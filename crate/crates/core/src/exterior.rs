//! Sparse exact-rational elements of the exterior algebra `Λ* H^1(Σ; Q)`.
//!
//! A monomial `e_S` is stored as a bitmask over the `2g` basis indices; the
//! canonical representative lists the indices of `S` in ascending order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::surface::{basis_label, partner, sign, SpMatrix, Surface};

/// Bitmask of basis indices; bit `i` set means `e_i` is a factor.
pub type Monomial = u64;

/// Number of transpositions needed to sort `e_A ∧ e_B` into ascending order,
/// reduced mod 2. Assumes `A ∩ B = ∅`.
pub(crate) fn wedge_is_negative(a: Monomial, b: Monomial) -> bool {
    let mut parity = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        parity += a.checked_shr(j + 1).unwrap_or(0).count_ones();
        rest &= rest - 1;
    }
    parity % 2 == 1
}

/// Ascending list of the indices in a monomial.
pub fn indices(mask: Monomial) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(j)
    })
}

pub fn mask_of(indices: &[usize]) -> Monomial {
    indices.iter().fold(0, |m, &i| m | (1u64 << i))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiVector {
    surface: Surface,
    terms: BTreeMap<Monomial, BigRational>,
}

impl MultiVector {
    pub fn zero(surface: Surface) -> Self {
        Self {
            surface,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(surface: Surface) -> Self {
        Self::monomial(surface, 0, BigRational::one())
    }

    /// `coeff · e_S`. Panics if `mask` names an index outside `0..2g`.
    pub fn monomial(surface: Surface, mask: Monomial, coeff: BigRational) -> Self {
        assert!(
            fits(surface, mask),
            "monomial {mask:#b} outside genus {}",
            surface.genus()
        );
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mask, coeff);
        }
        Self { surface, terms }
    }

    /// The basis vector `e_index`.
    pub fn generator(surface: Surface, index: usize) -> Self {
        assert!(index < surface.rank(), "generator index out of range");
        Self::monomial(surface, 1 << index, BigRational::one())
    }

    /// Degree-one element `Σ coeffs[i] e_i`.
    pub fn from_vector(surface: Surface, coeffs: &[BigRational]) -> Result<Self> {
        if coeffs.len() != surface.rank() {
            return Err(Error::SizeMismatch {
                expected: surface.rank(),
                found: coeffs.len(),
            });
        }
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (1u64 << i, c.clone()))
            .collect();
        Ok(Self { surface, terms })
    }

    /// Builds from arbitrary `(mask, coeff)` pairs, summing duplicates.
    pub fn from_terms<I>(surface: Surface, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut out = Self::zero(surface);
        for (mask, coeff) in terms {
            assert!(fits(surface, mask), "monomial outside surface");
            out.add_term(mask, coeff);
        }
        out
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, mask: Monomial) -> BigRational {
        self.terms
            .get(&mask)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common exterior degree of all terms, if there is one.
    /// The zero element has no degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.count_ones());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub(crate) fn add_term(&mut self, mask: Monomial, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(mask).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&mask);
        }
    }

    fn same_ambient(&self, other: &MultiVector) -> Result<()> {
        if self.surface != other.surface {
            return Err(Error::AmbientMismatch {
                left: self.surface.genus(),
                right: other.surface.genus(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &MultiVector) -> Result<MultiVector> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &BigRational) -> MultiVector {
        if factor.is_zero() {
            return Self::zero(self.surface);
        }
        Self {
            surface: self.surface,
            terms: self.terms.iter().map(|(&m, c)| (m, c * factor)).collect(),
        }
    }

    /// Exterior product `self ∧ right`.
    pub fn wedge(&self, right: &MultiVector) -> Result<MultiVector> {
        self.same_ambient(right)?;
        let mut out = Self::zero(self.surface);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &right.terms {
                if a & b != 0 {
                    continue;
                }
                let prod = ca * cb;
                let coeff = if wedge_is_negative(a, b) { -prod } else { prod };
                out.add_term(a | b, coeff);
            }
        }
        Ok(out)
    }

    /// Interior product `ι_c` with a degree-one class `c`, paired through the
    /// intersection form: `ι_c(e_j) = ⟨c, e_j⟩`, extended as a graded
    /// derivation of degree `-1`.
    pub fn contract(c: &MultiVector, omega: &MultiVector) -> Result<MultiVector> {
        c.same_ambient(omega)?;
        if c.homogeneous_degree() != Some(1) {
            return Err(Error::NotDegreeOne);
        }
        let surface = omega.surface;
        // ⟨c, e_j⟩ = Σ_i c_i Q[i][j]
        let pairing: Vec<BigRational> = (0..surface.rank())
            .map(|j| {
                let p = partner(j);
                c.coefficient(1 << p) * BigRational::from_integer(BigInt::from(sign(p)))
            })
            .collect();
        let mut out = Self::zero(surface);
        for (&mask, coeff) in &omega.terms {
            for (pos, j) in indices(mask).enumerate() {
                let pj = &pairing[j];
                if pj.is_zero() {
                    continue;
                }
                let term = coeff * pj;
                let term = if pos % 2 == 1 { -term } else { term };
                out.add_term(mask & !(1 << j), term);
            }
        }
        Ok(out)
    }

    /// Pushes `self` forward along `M`: `e_j ↦ Σ_i M[i][j] e_i`, extended
    /// multiplicatively.
    pub fn sp_apply(&self, m: &SpMatrix) -> Result<MultiVector> {
        if m.surface() != self.surface {
            return Err(Error::SizeMismatch {
                expected: self.surface.rank(),
                found: m.size(),
            });
        }
        let images = column_images(m);
        let mut out = Self::zero(self.surface);
        for (&mask, coeff) in &self.terms {
            let image = image_of_monomial(&images, self.surface, mask);
            for (&im, ic) in &image.terms {
                out.add_term(im, ic * coeff);
            }
        }
        Ok(out)
    }

    /// Inner product making the monomial basis orthonormal.
    pub fn monomial_pairing(&self, other: &MultiVector) -> Result<BigRational> {
        self.same_ambient(other)?;
        Ok(self
            .terms
            .iter()
            .filter_map(|(m, c)| other.terms.get(m).map(|d| c * d))
            .fold(BigRational::zero(), |acc, x| acc + x))
    }
}

fn fits(surface: Surface, mask: Monomial) -> bool {
    let n = surface.rank();
    n >= 64 || mask >> n == 0
}

/// Images of the basis vectors under `M`, one degree-one element per column.
pub(crate) fn column_images(m: &SpMatrix) -> Vec<MultiVector> {
    let surface = m.surface();
    let n = surface.rank();
    (0..n)
        .map(|j| {
            let terms = (0..n).filter(|&i| m.get(i, j) != 0).map(|i| {
                (
                    1u64 << i,
                    BigRational::from_integer(BigInt::from(m.get(i, j))),
                )
            });
            MultiVector::from_terms(surface, terms)
        })
        .collect()
}

pub(crate) fn image_of_monomial(
    images: &[MultiVector],
    surface: Surface,
    mask: Monomial,
) -> MultiVector {
    indices(mask).fold(MultiVector::one(surface), |acc, j| {
        acc.wedge(&images[j])
            .expect("images share the ambient surface")
    })
}

impl fmt::Display for MultiVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (&mask, coeff)) in self.terms.iter().enumerate() {
            let label = if mask == 0 {
                "1".to_string()
            } else {
                indices(mask).map(basis_label).collect::<Vec<_>>().join("^")
            };
            let sep = match (n, coeff.is_negative()) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let abs = coeff.abs();
            if abs.is_one() {
                write!(f, "{sep}{label}")?;
            } else {
                write!(f, "{sep}{abs}*{label}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn e(s: Surface, i: usize) -> MultiVector {
        MultiVector::generator(s, i)
    }

    /// Parity of the permutation sorting `seq`, by brute-force bubble sort.
    fn sort_parity(seq: &[usize]) -> bool {
        let mut v = seq.to_vec();
        let mut swaps = 0;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    swaps += 1;
                }
            }
        }
        swaps % 2 == 1
    }

    #[test]
    fn wedge_with_unit() {
        let s = Surface::new(2);
        assert_eq!(e(s, 0).wedge(&MultiVector::one(s)).unwrap(), e(s, 0));
    }

    #[test]
    fn wedge_nilpotent() {
        let s = Surface::new(2);
        assert!(e(s, 0).wedge(&e(s, 0)).unwrap().is_zero());
    }

    #[test]
    fn wedge_sign_matches_sorting_parity() {
        // e4 ∧ e1 in one-based labels: one transposition.
        let s = Surface::new(2);
        let got = e(s, 3).wedge(&e(s, 0)).unwrap();
        let expected_negative = sort_parity(&[3, 0]);
        assert!(expected_negative);
        assert_eq!(got, MultiVector::monomial(s, mask_of(&[0, 3]), q(-1)));

        // Exhaustive check of the sign routine on disjoint pairs, g = 2.
        for a in 0u64..16 {
            for b in 0u64..16 {
                if a & b != 0 {
                    continue;
                }
                let seq: Vec<usize> = indices(a).chain(indices(b)).collect();
                assert_eq!(wedge_is_negative(a, b), sort_parity(&seq), "{a:b} {b:b}");
            }
        }
    }

    #[test]
    fn contraction_examples() {
        let s = Surface::new(1);
        let a = e(s, 0);
        let b = e(s, 1);
        assert_eq!(MultiVector::contract(&a, &b).unwrap(), MultiVector::one(s));
        assert!(MultiVector::contract(&a, &a).unwrap().is_zero());
        let ab = a.wedge(&b).unwrap();
        assert_eq!(MultiVector::contract(&a, &ab).unwrap(), a.scale(&q(-1)));
    }

    #[test]
    fn contraction_rejects_non_degree_one() {
        let s = Surface::new(1);
        let ab = e(s, 0).wedge(&e(s, 1)).unwrap();
        assert_eq!(
            MultiVector::contract(&ab, &e(s, 0)),
            Err(Error::NotDegreeOne)
        );
        let mixed = e(s, 0).add(&MultiVector::one(s)).unwrap();
        assert_eq!(
            MultiVector::contract(&mixed, &e(s, 0)),
            Err(Error::NotDegreeOne)
        );
    }

    #[test]
    fn ambient_mismatch() {
        let x = e(Surface::new(1), 0);
        let y = e(Surface::new(2), 0);
        assert_eq!(
            x.wedge(&y),
            Err(Error::AmbientMismatch { left: 1, right: 2 })
        );
        assert!(x.monomial_pairing(&y).is_err());
    }

    #[test]
    fn sp_apply_examples() {
        let s = Surface::new(1);
        let a = e(s, 0);
        let b = e(s, 1);
        let ab = a.wedge(&b).unwrap();
        let id = SpMatrix::identity(s);
        assert_eq!(ab.sp_apply(&id).unwrap(), ab);

        let rot = SpMatrix::from_row_major(s, &[0, -1, 1, 0]).unwrap();
        assert_eq!(a.sp_apply(&rot).unwrap(), b);
        assert_eq!(b.sp_apply(&rot).unwrap(), a.scale(&q(-1)));
        assert_eq!(ab.sp_apply(&rot).unwrap(), ab);

        let shear = SpMatrix::from_row_major(s, &[1, 1, 0, 1]).unwrap();
        assert_eq!(b.sp_apply(&shear).unwrap(), a.add(&b).unwrap());
    }

    #[test]
    fn sp_apply_size_mismatch() {
        let m = SpMatrix::identity(Surface::new(2));
        assert!(e(Surface::new(1), 0).sp_apply(&m).is_err());
    }

    #[test]
    fn pairing_examples() {
        let s = Surface::new(1);
        let e1 = e(s, 0);
        let e2 = e(s, 1);
        assert_eq!(e1.monomial_pairing(&e1).unwrap(), q(1));
        assert_eq!(e1.monomial_pairing(&e2).unwrap(), q(0));
        let e12 = e1.wedge(&e2).unwrap();
        let x = e1.scale(&q(2)).add(&e12.scale(&q(3))).unwrap();
        assert_eq!(x.monomial_pairing(&e12).unwrap(), q(3));
    }

    #[test]
    fn display() {
        let s = Surface::new(1);
        let x = e(s, 0)
            .scale(&q(2))
            .add(&e(s, 0).wedge(&e(s, 1)).unwrap().scale(&q(-1)))
            .unwrap();
        assert_eq!(x.to_string(), "2*a1 - a1^b1");
        assert_eq!(MultiVector::zero(s).to_string(), "0");
    }
}
