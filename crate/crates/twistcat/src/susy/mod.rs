//! Supersymmetry algebras `𝔄 = V ⊕ ΠΣ` with auxiliary spaces, and invariants of their
//! odd elements.
//!
//! Σ is laid out block by block. Each block is `S_b ⊗ W_b` for a spinor sector `S_b` and
//! an auxiliary space `W_b`, with coordinate `offset + s·dim W_b + w`:
//!
//! | n mod 8 | Σ                         | W data                                   |
//! |---------|---------------------------|------------------------------------------|
//! | 1, 3    | `S ⊗ W`                   | symmetric, `dim W = 𝒩`                   |
//! | 5, 7    | `S ⊗ W`                   | symplectic, `dim W = 2𝒩`                 |
//! | 2       | `S₊⊗W₊ ⊕ S₋⊗W₋`           | symmetric, `𝒩 = (𝒩₊, 𝒩₋)`                |
//! | 6       | `S₊⊗W₊ ⊕ S₋⊗W₋`           | symplectic, `dim W± = 2𝒩±`               |
//! | 0, 4    | `S₊⊗W ⊕ S₋⊗W*`            | dual pair, `dim W = 𝒩`                   |
//!
//! Symmetric forms are hyperbolic: `⟨w₂ₖ, w₂ₖ₊₁⟩ = 1`, plus one self-paired vector when
//! the dimension is odd. Symplectic forms have `ω(w₂ₖ, w₂ₖ₊₁) = 1`. The dual pair uses
//! the evaluation pairing.

mod aux;
mod classify;
mod reduce;
mod section;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::clifford::{self, CliffordError, CliffordModel, Sector};
use crate::exactfield::{is_zero_vec, ExactMatrix, GaussianRational, Vector};
use crate::octonion::OctonionError;

pub use aux::{hyperbolic_form, symplectic_form, AuxCount, AuxKind, AuxSpace};
pub use classify::{
    classify, image_subspace, invariant_directions, lemma_square_zero, pure_flag, rank, ExtraValue, Rank, TwistClass,
    TwistLabel,
};
pub use reduce::{reduce_dimension, reduction};
pub use section::{abelian_section, covered_by_hypotheses, verify_section, AbelianSection, SectionMethod};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SusyError {
    #[error("dimension {n} expects {expected}, got {found}")]
    IllegalAux { n: usize, expected: String, found: String },
    #[error("cannot parse auxiliary data {0:?}; expected N=k or N=(a,b)")]
    BadAuxSpec(String),
    #[error("auxiliary pairing is malformed: {0}")]
    BadForm(String),
    #[error("supercharges belong to different algebras")]
    AlgebraMismatch,
    #[error("expected {expected} coefficients, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("zero supercharge")]
    ZeroSupercharge,
    #[error("supercharge does not square to zero")]
    NotSquareZero,
    #[error("no abelian section found: {0}")]
    NotCovered(String),
    #[error("no reduction below dimension 1")]
    NoReduction,
    #[error("reduced pairing does not match the projection of the original one")]
    ReductionMismatch,
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Octonion(#[from] OctonionError),
}

/// One summand `S_b ⊗ W_b` of Σ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub sector: Sector,
    pub spinor_dim: usize,
    pub aux_dim: usize,
    pub offset: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.spinor_dim * self.aux_dim
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, s: usize, w: usize) -> usize {
        self.offset + s * self.aux_dim + w
    }
}

/// Entries `(i, j, c)` of one component of the bracket tensor, both orders stored.
type TensorComponent = Vec<(usize, usize, GaussianRational)>;

/// The supertranslation algebra on `V ⊕ ΠΣ`.
#[derive(Debug, Clone)]
pub struct SusyAlgebra {
    n: usize,
    aux: AuxSpace,
    blocks: Vec<Block>,
    sigma_dim: usize,
    tensor: Vec<TensorComponent>,
}

impl PartialEq for SusyAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.n == o.n && self.aux == o.aux
    }
}

impl Eq for SusyAlgebra {}

/// Build the algebra for dimension `n` with the standard auxiliary pairing for `count`.
pub fn build_susy(n: usize, count: AuxCount) -> Result<Arc<SusyAlgebra>, SusyError> {
    let aux = AuxSpace::standard(n, count)?;
    SusyAlgebra::with_aux(n, aux).map(Arc::new)
}

/// Build from a `"N=k"` / `"N=(a,b)"` string.
pub fn build_susy_str(n: usize, spec: &str) -> Result<Arc<SusyAlgebra>, SusyError> {
    build_susy(n, spec.parse()?)
}

impl SusyAlgebra {
    /// Build with explicit auxiliary pairings; they are validated against `n`.
    pub fn with_aux(n: usize, aux: AuxSpace) -> Result<SusyAlgebra, SusyError> {
        let model = clifford::model(n)?;
        aux.validate(n)?;
        let wdims = aux.block_dims();
        let sectors: Vec<Sector> = if n % 2 == 1 { vec![Sector::Full] } else { vec![Sector::Plus, Sector::Minus] };
        let mut blocks = Vec::new();
        let mut offset = 0;
        for (sector, wd) in sectors.into_iter().zip(wdims) {
            let b = Block { sector, spinor_dim: model.sector_dim(sector), aux_dim: wd, offset };
            offset += b.len();
            blocks.push(b);
        }
        let tensor = assemble_tensor(model, &aux, &blocks);
        Ok(SusyAlgebra { n, aux, blocks, sigma_dim: offset, tensor })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn clifford(&self) -> &'static CliffordModel {
        clifford::model(self.n).expect("validated at construction")
    }

    pub fn aux(&self) -> &AuxSpace {
        &self.aux
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn sigma_dim(&self) -> usize {
        self.sigma_dim
    }

    /// Nonzero entries of the `μ`-th component of the bracket tensor.
    pub fn tensor_component(&self, mu: usize) -> &[(usize, usize, GaussianRational)] {
        &self.tensor[mu]
    }

    /// `[x, y] ∈ V` for coordinate vectors of Σ.
    pub fn bracket_vec(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
        self.tensor
            .iter()
            .map(|comp| {
                let mut acc = GaussianRational::zero();
                for (i, j, c) in comp {
                    if !x[*i].is_zero() && !y[*j].is_zero() {
                        acc += &(&(c * &x[*i]) * &y[*j]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Matrix of `σ ↦ [x, σ]`, of shape `n × dim Σ`.
    pub fn bracket_map(&self, x: &[GaussianRational]) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.n, self.sigma_dim);
        for (mu, comp) in self.tensor.iter().enumerate() {
            for (i, j, c) in comp {
                if !x[*i].is_zero() {
                    m[(mu, *j)] += &(c * &x[*i]);
                }
            }
        }
        m
    }

    pub fn zero(self: &Arc<Self>) -> Supercharge {
        Supercharge { algebra: Arc::clone(self), coeffs: vec![GaussianRational::zero(); self.sigma_dim] }
    }

    pub fn supercharge(self: &Arc<Self>, coeffs: Vector) -> Result<Supercharge, SusyError> {
        if coeffs.len() != self.sigma_dim {
            return Err(SusyError::WrongLength { expected: self.sigma_dim, found: coeffs.len() });
        }
        Ok(Supercharge { algebra: Arc::clone(self), coeffs })
    }

    /// The coordinate basis vector `e_i` of Σ.
    pub fn basis_element(self: &Arc<Self>, i: usize) -> Supercharge {
        let mut q = self.zero();
        q.coeffs[i] = GaussianRational::one();
        q
    }

    /// The pure tensor `s ⊗ w` placed in block `b`.
    pub fn pure_tensor(self: &Arc<Self>, b: usize, s: &[GaussianRational], w: &[GaussianRational]) -> Supercharge {
        let blk = self.blocks[b];
        let mut q = self.zero();
        for (si, x) in s.iter().enumerate() {
            for (wi, y) in w.iter().enumerate() {
                q.coeffs[blk.index(si, wi)] = x * y;
            }
        }
        q
    }

    /// Supercharge from per-block coefficient matrices of shape `spinor_dim × aux_dim`.
    pub fn from_blocks(self: &Arc<Self>, mats: &[ExactMatrix]) -> Supercharge {
        let mut q = self.zero();
        for (blk, m) in self.blocks.iter().zip(mats) {
            for s in 0..blk.spinor_dim {
                for w in 0..blk.aux_dim {
                    q.coeffs[blk.index(s, w)] = m[(s, w)].clone();
                }
            }
        }
        q
    }

    /// Whether the induced map `Σ → Hom(Σ, V)` is injective.
    pub fn is_nondegenerate(&self) -> bool {
        (0..self.sigma_dim).all(|i| {
            let mut e = vec![GaussianRational::zero(); self.sigma_dim];
            e[i] = GaussianRational::one();
            !self.bracket_map(&e).is_zero()
        }) && {
            let rows: Vec<Vector> = (0..self.sigma_dim)
                .map(|i| {
                    let mut e = vec![GaussianRational::zero(); self.sigma_dim];
                    e[i] = GaussianRational::one();
                    self.bracket_map(&e).entries().to_vec()
                })
                .collect();
            rows.is_empty() || ExactMatrix::from_rows(rows).expect("equal lengths").rank() == self.sigma_dim
        }
    }

    /// Whether the stored tensor is symmetric in its two Σ arguments.
    pub fn is_symmetric(&self) -> bool {
        self.tensor.iter().all(|comp| {
            let mut fwd: Vec<_> = comp.iter().map(|(i, j, c)| (*i, *j, c.clone())).collect();
            let mut rev: Vec<_> = comp.iter().map(|(i, j, c)| (*j, *i, c.clone())).collect();
            fwd.sort_by_key(|a| (a.0, a.1));
            rev.sort_by_key(|a| (a.0, a.1));
            fwd == rev
        })
    }
}

fn assemble_tensor(model: &CliffordModel, aux: &AuxSpace, blocks: &[Block]) -> Vec<TensorComponent> {
    let d = model.spinor_dim();
    let mut position = vec![vec![None; d]; blocks.len()];
    for (b, blk) in blocks.iter().enumerate() {
        for (p, &idx) in model.sector_indices(blk.sector).iter().enumerate() {
            position[b][idx] = Some(p);
        }
    }
    let mut tensor = vec![Vec::new(); model.n()];
    for (b1, b2, k) in aux.couplings() {
        let (blk1, blk2) = (blocks[b1], blocks[b2]);
        if blk1.is_empty() || blk2.is_empty() {
            continue;
        }
        for (mu, comp) in tensor.iter_mut().enumerate() {
            for (a, b, c) in model.pairing_entries(mu) {
                let (Some(s), Some(t)) = (position[b1][*a], position[b2][*b]) else { continue };
                for w in 0..blk1.aux_dim {
                    for u in 0..blk2.aux_dim {
                        let kwu = &k[(w, u)];
                        if kwu.is_zero() {
                            continue;
                        }
                        let v = c * kwu;
                        let (i, j) = (blk1.index(s, w), blk2.index(t, u));
                        if b1 != b2 {
                            comp.push((j, i, v.clone()));
                        }
                        comp.push((i, j, v));
                    }
                }
            }
        }
    }
    tensor
}

/// An odd element `Q ∈ Σ`.
#[derive(Clone)]
pub struct Supercharge {
    algebra: Arc<SusyAlgebra>,
    coeffs: Vector,
}

impl PartialEq for Supercharge {
    fn eq(&self, o: &Self) -> bool {
        self.algebra == o.algebra && self.coeffs == o.coeffs
    }
}

impl Eq for Supercharge {}

impl fmt::Debug for Supercharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Supercharge")
            .field("dim", &self.algebra.n)
            .field("aux", &self.algebra.aux.count)
            .field("coeffs", &self.coeffs)
            .finish()
    }
}

impl Supercharge {
    pub fn algebra(&self) -> &Arc<SusyAlgebra> {
        &self.algebra
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.algebra.n
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn scale(&self, c: &GaussianRational) -> Supercharge {
        Supercharge { algebra: Arc::clone(&self.algebra), coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, o: &Supercharge) -> Result<Supercharge, SusyError> {
        if self.algebra != o.algebra {
            return Err(SusyError::AlgebraMismatch);
        }
        let coeffs = self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect();
        Ok(Supercharge { algebra: Arc::clone(&self.algebra), coeffs })
    }

    /// Coefficient matrix of block `b`, rows indexed by spinor coordinates.
    pub fn block_matrix(&self, b: usize) -> ExactMatrix {
        let blk = self.algebra.blocks[b];
        let mut m = ExactMatrix::zeros(blk.spinor_dim, blk.aux_dim);
        for s in 0..blk.spinor_dim {
            for w in 0..blk.aux_dim {
                m[(s, w)] = self.coeffs[blk.index(s, w)].clone();
            }
        }
        m
    }
}

/// `[Q₁, Q₂] ∈ V`.
pub fn bracket(q1: &Supercharge, q2: &Supercharge) -> Result<Vector, SusyError> {
    if q1.algebra != q2.algebra {
        return Err(SusyError::AlgebraMismatch);
    }
    Ok(q1.algebra.bracket_vec(&q1.coeffs, &q2.coeffs))
}

pub fn is_square_zero(q: &Supercharge) -> bool {
    is_zero_vec(&q.algebra.bracket_vec(&q.coeffs, &q.coeffs))
}

#[derive(Serialize, Deserialize)]
struct SuperchargeData {
    dim: usize,
    aux: AuxSpace,
    coeffs: Vec<GaussianRational>,
}

impl Serialize for Supercharge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        SuperchargeData { dim: self.algebra.n, aux: self.algebra.aux.clone(), coeffs: self.coeffs.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Supercharge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let data = SuperchargeData::deserialize(d)?;
        let algebra = SusyAlgebra::with_aux(data.dim, data.aux).map_err(serde::de::Error::custom)?;
        Arc::new(algebra).supercharge(data.coeffs).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests;
