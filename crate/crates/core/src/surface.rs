//! Closed oriented surfaces, their intersection form on `H^1`, and integral
//! symplectic matrices acting on it.
//!
//! The basis of `H^1(Σ_g; Q)` is indexed from zero: index `2i` is `a_{i+1}`
//! and index `2i + 1` is `b_{i+1}`. The intersection form `Q` has
//! `Q[a_i][b_i] = 1`, `Q[b_i][a_i] = -1` and vanishes elsewhere.

use std::fmt;

use crate::error::{Error, Result};

/// Largest genus whose exterior monomials fit in a `u64` bitmask.
pub const MAX_GENUS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surface {
    genus: usize,
}

impl Surface {
    /// Panics if `genus > MAX_GENUS`; use [`Surface::try_new`] for unchecked input.
    pub fn new(genus: usize) -> Self {
        Self::try_new(genus).expect("genus out of range")
    }

    pub fn try_new(genus: usize) -> Result<Self> {
        if genus > MAX_GENUS {
            return Err(Error::GenusTooLarge(genus));
        }
        Ok(Self { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    /// Rank of `H^1`, i.e. `2g`.
    pub fn rank(&self) -> usize {
        2 * self.genus
    }

    /// Entry `Q[i][j]` of the intersection form.
    pub fn intersection(&self, i: usize, j: usize) -> i64 {
        debug_assert!(i < self.rank() && j < self.rank());
        if j == partner(i) {
            sign(i)
        } else {
            0
        }
    }

    pub fn intersection_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        (0..n)
            .map(|i| (0..n).map(|j| self.intersection(i, j)).collect())
            .collect()
    }

    /// Basis labels `a1, b1, a2, b2, ...`.
    pub fn basis_labels(&self) -> Vec<String> {
        (0..self.rank()).map(basis_label).collect()
    }
}

/// Index paired with `i` by the intersection form.
pub(crate) fn partner(i: usize) -> usize {
    i ^ 1
}

/// `Q[i][partner(i)]`: `+1` on `a` indices, `-1` on `b` indices.
pub(crate) fn sign(i: usize) -> i64 {
    if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn basis_label(i: usize) -> String {
    let kind = if i.is_multiple_of(2) { 'a' } else { 'b' };
    format!("{kind}{}", i / 2 + 1)
}

/// An integral `2g x 2g` matrix preserving the intersection form.
///
/// Column `j` holds the image of basis vector `e_j`. The symplectic condition
/// `M^T Q M = Q` is verified at construction, so every value of this type
/// lies in `Sp(2g, Z)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpMatrix {
    surface: Surface,
    entries: Vec<i64>,
}

impl SpMatrix {
    pub fn identity(surface: Surface) -> Self {
        let n = surface.rank();
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Self { surface, entries }
    }

    /// Builds a matrix from row-major entries, checking the symplectic condition.
    pub fn from_row_major(surface: Surface, entries: &[i64]) -> Result<Self> {
        let n = surface.rank();
        if entries.len() != n * n {
            return Err(Error::SizeMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        let m = Self {
            surface,
            entries: entries.to_vec(),
        };
        m.check_symplectic()?;
        Ok(m)
    }

    pub fn from_rows(surface: Surface, rows: &[Vec<i64>]) -> Result<Self> {
        let n = surface.rank();
        if rows.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::SizeMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        let flat: Vec<i64> = rows.iter().flatten().copied().collect();
        Self::from_row_major(surface, &flat)
    }

    /// The symplectic transvection `x ↦ x + λ·⟨v, x⟩·v`.
    pub fn transvection(surface: Surface, v: &[i64], lambda: i64) -> Result<Self> {
        let n = surface.rank();
        if v.len() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                found: v.len(),
            });
        }
        // ⟨v, e_j⟩ = Σ_i v_i Q[i][j] = v_{partner(j)} · Q[partner(j)][j]
        let pair: Vec<i128> = (0..n)
            .map(|j| v[partner(j)] as i128 * sign(partner(j)) as i128)
            .collect();
        let mut entries = Vec::with_capacity(n * n);
        for (i, &vi) in v.iter().enumerate() {
            for (j, &pj) in pair.iter().enumerate() {
                let delta = if i == j { 1i128 } else { 0 };
                let value = delta + lambda as i128 * vi as i128 * pj;
                entries.push(i64::try_from(value).map_err(|_| Error::Overflow("transvection"))?);
            }
        }
        Ok(Self { surface, entries })
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn size(&self) -> usize {
        self.surface.rank()
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.size() + col]
    }

    pub fn row_major(&self) -> &[i64] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        if n == 0 {
            return Vec::new();
        }
        self.entries.chunks(n).map(|r| r.to_vec()).collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.surface)
    }

    /// Verifies `M^T Q M = Q`, reporting the first offending entry.
    pub fn check_symplectic(&self) -> Result<()> {
        let n = self.size();
        for r in 0..n {
            for c in 0..n {
                // (M^T Q M)[r][c] = Σ_i M[i][r] · Q[i][partner(i)] · M[partner(i)][c]
                let mut acc: i128 = 0;
                for i in 0..n {
                    let term =
                        self.get(i, r) as i128 * sign(i) as i128 * self.get(partner(i), c) as i128;
                    acc = acc
                        .checked_add(term)
                        .ok_or(Error::Overflow("symplectic check"))?;
                }
                let expected = self.surface.intersection(r, c) as i128;
                if acc != expected {
                    return Err(Error::NotSymplectic {
                        row: r,
                        col: c,
                        found: acc,
                        expected,
                    });
                }
            }
        }
        Ok(())
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &SpMatrix) -> Result<SpMatrix> {
        if self.surface != rhs.surface {
            return Err(Error::SizeMismatch {
                expected: self.size(),
                found: rhs.size(),
            });
        }
        let n = self.size();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: i64 = 0;
                for l in 0..n {
                    let term = self
                        .get(i, l)
                        .checked_mul(rhs.get(l, j))
                        .ok_or(Error::Overflow("matrix product"))?;
                    acc = acc
                        .checked_add(term)
                        .ok_or(Error::Overflow("matrix product"))?;
                }
                entries.push(acc);
            }
        }
        Ok(SpMatrix {
            surface: self.surface,
            entries,
        })
    }

    /// `M^{-1} = Q^{-1} M^T Q`, which for this `Q` is a signed permuted transpose.
    pub fn inverse(&self) -> SpMatrix {
        let n = self.size();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(sign(i) * sign(j) * self.get(partner(j), partner(i)));
            }
        }
        SpMatrix {
            surface: self.surface,
            entries,
        }
    }

    pub fn trace(&self) -> i64 {
        (0..self.size()).map(|i| self.get(i, i)).sum()
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .rows()
            .iter()
            .map(|r| {
                let cells: Vec<String> = r.iter().map(|x| x.to_string()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}
