//! Elementary cobordisms and their push-pull maps on symmetric-product
//! cohomology, plus the bookkeeping that picks the vortex degree on each
//! intermediate surface.
//!
//! Conventions: attaching a 1-handle to `Σ_g` creates the pair
//! `(a_{g+1}, b_{g+1}) = (e_{2g}, e_{2g+1})` (zero-based) and wedges with
//! `c = b_{g+1}`. Attaching a 2-handle to `Σ_{g+1}` kills that pair and
//! contracts with `c = a_{g+1}`, then discards every monomial still touching
//! the dying pair. Handles in other positions are conjugates of these by
//! twists.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exterior::MultiVector;
use crate::linalg;
use crate::surface::{SpMatrix, Surface};
use crate::symprod::{add_into, induced_map, Column, GradedOperator, SymKey, SymSpace};

/// Largest symmetric-product dimension the engine will materialize.
pub const MAX_SPACE_DIMENSION: u128 = 1 << 21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chamber {
    Plus,
    Minus,
}

impl Chamber {
    pub fn symbol(&self) -> char {
        match self {
            Chamber::Plus => '+',
            Chamber::Minus => '-',
        }
    }
}

impl fmt::Display for Chamber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// The Spin^c degree `d`, the chamber, and the perturbation flux.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SpincParams {
    pub d: i64,
    pub chamber: Chamber,
    pub eta_bar: BigRational,
}

impl SpincParams {
    pub fn new(d: i64, chamber: Chamber, eta_bar: BigRational) -> Result<Self> {
        let params = Self {
            d,
            chamber,
            eta_bar,
        };
        params.validate()?;
        Ok(params)
    }

    /// Uses the flux `d + 1` in the `+` chamber and `d - 1` in the `-` chamber.
    pub fn with_default_eta(d: i64, chamber: Chamber) -> Result<Self> {
        let shift = match chamber {
            Chamber::Plus => 1,
            Chamber::Minus => -1,
        };
        let eta = d
            .checked_add(shift)
            .ok_or(Error::Overflow("default eta_bar"))?;
        Self::new(d, chamber, BigRational::from_integer(eta.into()))
    }

    pub fn validate(&self) -> Result<()> {
        let d = BigRational::from_integer(self.d.into());
        if self.eta_bar == d {
            return Err(Error::MorseBott);
        }
        match self.chamber {
            Chamber::Plus if d > self.eta_bar => Err(Error::ChamberInconsistent {
                chamber: '+',
                requirement: "d < eta_bar",
            }),
            Chamber::Minus if d < self.eta_bar => Err(Error::ChamberInconsistent {
                chamber: '-',
                requirement: "d > eta_bar",
            }),
            _ => Ok(()),
        }
    }
}

/// Vortex degree on a genus-`g` surface: `(g - 1) + d` in the `+` chamber
/// (vortices) and `(g - 1) - d` in the `-` chamber (anti-vortices). A negative
/// result means the moduli space is empty.
pub fn vortex_degree(g: usize, params: &SpincParams) -> Result<i64> {
    params.validate()?;
    let half_canonical = g as i64 - 1;
    let k = match params.chamber {
        Chamber::Plus => half_canonical.checked_add(params.d),
        Chamber::Minus => half_canonical.checked_sub(params.d),
    };
    k.ok_or(Error::Overflow("vortex degree"))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Move {
    /// 1-handle, genus `g → g + 1`.
    H1,
    /// 2-handle, genus `g → g - 1`.
    H2,
    /// Mapping-class twist at the current genus.
    Twist(SpMatrix),
}

impl Move {
    pub fn genus_after(&self, g: usize) -> Option<usize> {
        match self {
            Move::H1 => Some(g + 1),
            Move::H2 => g.checked_sub(1),
            Move::Twist(_) => Some(g),
        }
    }

    pub fn degree_shift(&self) -> i64 {
        match self {
            Move::H1 => 1,
            Move::H2 => -1,
            Move::Twist(_) => 0,
        }
    }
}

/// Genus at every stage of a move sequence, starting with `start`.
pub fn genus_trail(start: usize, moves: &[Move]) -> Result<Vec<usize>> {
    let mut trail = Vec::with_capacity(moves.len() + 1);
    trail.push(start);
    let mut g = start;
    for (idx, mv) in moves.iter().enumerate() {
        if let Move::Twist(m) = mv {
            if m.surface().genus() != g {
                return Err(Error::SizeMismatch {
                    expected: 2 * g,
                    found: m.size(),
                });
            }
        }
        g = mv
            .genus_after(g)
            .ok_or(Error::GenusUnderflow { move_index: idx })?;
        Surface::try_new(g)?;
        trail.push(g);
    }
    Ok(trail)
}

/// A cobordism `Σ → Σ` written as elementary moves, closed up by `glue`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CobordismWord {
    start_genus: usize,
    params: SpincParams,
    moves: Vec<Move>,
    glue: SpMatrix,
}

impl CobordismWord {
    pub fn new(
        start_genus: usize,
        params: SpincParams,
        moves: Vec<Move>,
        glue: SpMatrix,
    ) -> Result<Self> {
        params.validate()?;
        let surface = Surface::try_new(start_genus)?;
        let trail = genus_trail(start_genus, &moves)?;
        let end = *trail.last().expect("trail is never empty");
        if end != start_genus {
            return Err(Error::NotClosed {
                start: start_genus,
                end,
            });
        }
        if glue.surface() != surface {
            return Err(Error::SizeMismatch {
                expected: surface.rank(),
                found: glue.size(),
            });
        }
        Ok(Self {
            start_genus,
            params,
            moves,
            glue,
        })
    }

    /// The mapping torus of `glue`: no handles.
    pub fn mapping_torus(params: SpincParams, glue: SpMatrix) -> Result<Self> {
        Self::new(glue.surface().genus(), params, Vec::new(), glue)
    }

    pub fn start_genus(&self) -> usize {
        self.start_genus
    }

    pub fn surface(&self) -> Surface {
        Surface::new(self.start_genus)
    }

    pub fn params(&self) -> &SpincParams {
        &self.params
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn glue(&self) -> &SpMatrix {
        &self.glue
    }

    pub fn with_params(&self, params: SpincParams) -> Result<Self> {
        Self::new(
            self.start_genus,
            params,
            self.moves.clone(),
            self.glue.clone(),
        )
    }

    pub fn genus_trail(&self) -> Vec<usize> {
        genus_trail(self.start_genus, &self.moves).expect("validated at construction")
    }

    /// `(genus, k)` at every stage.
    pub fn k_trail(&self) -> Result<Vec<(usize, i64)>> {
        self.genus_trail()
            .into_iter()
            .map(|g| Ok((g, vortex_degree(g, &self.params)?)))
            .collect()
    }
}

/// `ω ↦ c ∧ ω` with `c = b_{g+1}`, from `Sym^k Σ_g` to `Sym^{k+1} Σ_{g+1}`.
pub fn rho_one_handle(g: usize, k: i64) -> Result<GradedOperator> {
    let source = SymSpace::new(Surface::try_new(g)?, k);
    let target = SymSpace::new(Surface::try_new(g + 1)?, k + 1);
    let new_b = 2 * g + 1;
    let columns = source.enumerate_basis().into_iter().map(|key| {
        // e_{2g+1} ∧ e_S = (-1)^{|S|} e_{S ∪ {2g+1}}: every index of S is smaller.
        let coeff = if key.is_odd() {
            -BigRational::one()
        } else {
            BigRational::one()
        };
        let image = SymKey::new(key.subset | (1 << new_b), key.x_power);
        (key, Column::from([(image, coeff)]))
    });
    Ok(GradedOperator::from_columns(source, target, 1, columns))
}

/// `ω ↦ ι_c ω` with `c = a_{g+1}`, from `Sym^{k+1} Σ_{g+1}` to `Sym^k Σ_g`,
/// followed by projection onto the subalgebra generated by `H^1(Σ_g)`.
pub fn rho_two_handle(g_plus_1: usize, k_plus_1: i64) -> Result<GradedOperator> {
    let g = g_plus_1
        .checked_sub(1)
        .ok_or(Error::GenusUnderflow { move_index: 0 })?;
    let big = Surface::try_new(g_plus_1)?;
    let source = SymSpace::new(big, k_plus_1);
    let target = SymSpace::new(Surface::new(g), k_plus_1 - 1);
    let c = MultiVector::generator(big, 2 * g);
    let dying: u64 = 0b11 << (2 * g);
    let columns: Vec<(SymKey, Column)> = source
        .enumerate_basis()
        .into_iter()
        .map(|key| {
            let e_s = MultiVector::monomial(big, key.subset, BigRational::one());
            let contracted = MultiVector::contract(&c, &e_s).expect("c is a degree-one generator");
            let mut col = Column::new();
            for (&mask, coeff) in contracted.terms() {
                if mask & dying == 0 {
                    add_into(&mut col, SymKey::new(mask, key.x_power), coeff.clone());
                }
            }
            (key, col)
        })
        .collect();
    Ok(GradedOperator::from_columns(source, target, -1, columns))
}

/// The twist `M` acting on `Sym^k Σ_g`.
pub fn rho_twist(m: &SpMatrix, g: usize, k: i64) -> Result<GradedOperator> {
    induced_map(m, SymSpace::new(Surface::try_new(g)?, k))
}

fn ensure_size(space: SymSpace) -> Result<()> {
    let dim = space.dimension();
    if dim > MAX_SPACE_DIMENSION {
        return Err(Error::SpaceTooLarge {
            genus: space.genus(),
            k: space.k(),
            dim,
            limit: MAX_SPACE_DIMENSION,
        });
    }
    Ok(())
}

/// Composite `ρ_{move_n} ∘ … ∘ ρ_{move_1}` of a (not necessarily closed)
/// move sequence, from the start space to the end space. If any stage has an
/// empty moduli space the result is the zero operator.
pub fn compose_moves(
    start_genus: usize,
    params: &SpincParams,
    moves: &[Move],
) -> Result<GradedOperator> {
    let trail = genus_trail(start_genus, moves)?;
    let stages: Vec<SymSpace> = trail
        .iter()
        .map(|&g| Ok(SymSpace::new(Surface::new(g), vortex_degree(g, params)?)))
        .collect::<Result<_>>()?;
    let first = stages[0];
    let last = *stages.last().expect("trail is never empty");
    let shift: i64 = moves.iter().map(Move::degree_shift).sum();
    if stages.iter().any(SymSpace::is_zero_space) {
        return Ok(GradedOperator::zero(first, last, shift));
    }
    for &space in &stages {
        ensure_size(space)?;
    }
    let mut acc = GradedOperator::identity(first);
    for (mv, space) in moves.iter().zip(&stages) {
        let (g, k) = (space.genus(), space.k());
        let step = match mv {
            Move::H1 => rho_one_handle(g, k)?,
            Move::H2 => rho_two_handle(g, k)?,
            Move::Twist(m) => rho_twist(m, g, k)?,
        };
        acc = step.compose(&acc)?;
    }
    Ok(acc)
}

/// `glue_* ∘ ρ_{move_n} ∘ … ∘ ρ_{move_1}` on the start space.
pub fn compose_word(word: &CobordismWord) -> Result<GradedOperator> {
    let body = compose_moves(word.start_genus, &word.params, &word.moves)?;
    if body.is_zero() {
        return Ok(body);
    }
    let glue = induced_map(&word.glue, body.codomain())?;
    glue.compose(&body)
}

/// Whether `span U + span V` is all of `Q^{2g}`.
pub fn check_transverse(
    surface: Surface,
    u: &[Vec<BigRational>],
    v: &[Vec<BigRational>],
) -> Result<bool> {
    let n = surface.rank();
    if let Some(bad) = u.iter().chain(v).find(|w| w.len() != n) {
        return Err(Error::SizeMismatch {
            expected: n,
            found: bad.len(),
        });
    }
    let rows: Vec<Vec<BigRational>> = u.iter().chain(v).cloned().collect();
    Ok(linalg::rank(&rows) == n)
}
