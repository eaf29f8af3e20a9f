//! Complex Clifford algebras Cl(n) for n = 1..10, their spin modules, vector-valued spinor
//! pairings, Fierz components, nullspaces and purity.
//!
//! Gamma matrices come from the tensor recursion
//! `γₖ ↦ γₖ ⊗ 1`, `γ₂ₘ₊₁ = Zₘ ⊗ σ₁`, `γ₂ₘ₊₂ = Zₘ ⊗ σ₂` with `Zₘ = σ₃^{⊗m}`;
//! odd `n = 2m+1` appends `γₙ = Zₘ`. All gammas are monomial with entries in
//! {±1, ±i}, the chirality operator is diagonal and every coordinate basis
//! vector of S is a pure spinor.

mod monomial;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exactfield::{dot, is_zero_vec, span_dim, ExactMatrix, GaussianRational, SparseSystem, Vector};

pub use monomial::Monomial;

pub const MAX_DIM: usize = 10;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CliffordError {
    #[error("dimension {0} outside 1..=10")]
    DimensionOutOfRange(usize),
    #[error("spinor sectors {0:?} and {1:?} are not paired in dimension {2}")]
    SectorMismatch(Sector, Sector, usize),
    #[error("sector {sector:?} expects {expected} coefficients, found {found}")]
    WrongLength { sector: Sector, expected: usize, found: usize },
    #[error("spinor is zero")]
    ZeroSpinor,
    #[error("spinor is not a Weyl spinor in even dimension {0}")]
    NotWeyl(usize),
    #[error("spinor does not lie in the {0:?} chirality eigenspace")]
    NotInSector(Sector),
    #[error("invalid rotation axes ({0}, {1}) in dimension {2}")]
    BadAxes(usize, usize, usize),
    #[error("purity routes disagree: nullspace says {nullspace}, Chevalley says {chevalley}")]
    PurityRoutesDisagree { nullspace: bool, chevalley: bool },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sector {
    Full,
    Plus,
    Minus,
}

impl Sector {
    pub fn opposite(self) -> Sector {
        match self {
            Sector::Plus => Sector::Minus,
            Sector::Minus => Sector::Plus,
            Sector::Full => Sector::Full,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConjSign {
    Plus,
    Minus,
}

/// Symmetry type of the vector-valued pairing Γ, by `n mod 8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingSymmetry {
    /// n ≡ 1, 3: Sym²(S) → V.
    Symmetric,
    /// n ≡ 5, 7: ∧²(S) → V.
    Antisymmetric,
    /// n ≡ 0, 4: S₊ ⊗ S₋ → V.
    DualChiral,
    /// n ≡ 2: Sym²(S₊) → V and Sym²(S₋) → V.
    ChiralSymmetric,
    /// n ≡ 6: ∧²(S₊) → V and ∧²(S₋) → V.
    ChiralAntisymmetric,
}

impl PairingSymmetry {
    pub fn for_dim(n: usize) -> PairingSymmetry {
        match n % 8 {
            1 | 3 => PairingSymmetry::Symmetric,
            5 | 7 => PairingSymmetry::Antisymmetric,
            0 | 4 => PairingSymmetry::DualChiral,
            2 => PairingSymmetry::ChiralSymmetric,
            _ => PairingSymmetry::ChiralAntisymmetric,
        }
    }

    /// Sector paired with `s` by Γ.
    pub fn partner(self, s: Sector) -> Sector {
        match self {
            PairingSymmetry::DualChiral => s.opposite(),
            _ => s,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairingKind {
    pub symmetry: PairingSymmetry,
    /// Which charge-conjugation intertwiner builds Γ.
    pub conjugation: ConjSign,
}

type SparseBilinear = Vec<(usize, usize, GaussianRational)>;

#[derive(Debug, Clone)]
pub struct CliffordModel {
    n: usize,
    dim: usize,
    gammas: Vec<ExactMatrix>,
    mono: Vec<Monomial>,
    chirality: Option<ExactMatrix>,
    chirality_diag: Vec<i8>,
    conj_plus: Option<ExactMatrix>,
    conj_minus: Option<ExactMatrix>,
    pairing_kind: PairingKind,
    conj: ExactMatrix,
    pairing: Vec<SparseBilinear>,
    plus_idx: Vec<usize>,
    minus_idx: Vec<usize>,
}

/// A spinor given by its coefficients in a sector of the spin module of `Cl(dim)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Spinor {
    pub dim: usize,
    pub sector: Sector,
    pub coeffs: Vec<GaussianRational>,
}

impl Spinor {
    pub fn new(dim: usize, sector: Sector, coeffs: Vec<GaussianRational>) -> Self {
        Spinor { dim, sector, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }
}

/// Fierz components `F_p` of `Q ⊗ Q`, each stored on increasing index tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FierzDecomposition {
    pub n: usize,
    pub components: BTreeMap<usize, BTreeMap<Vec<usize>, GaussianRational>>,
}

impl FierzDecomposition {
    pub fn max_degree(&self) -> usize {
        self.components.keys().copied().max().unwrap_or(0)
    }

    pub fn vanishes(&self, p: usize) -> bool {
        self.components.get(&p).is_none_or(|c| c.values().all(GaussianRational::is_zero))
    }

    /// `F_p` at an arbitrary index tuple, extended antisymmetrically.
    pub fn component(&self, idx: &[usize]) -> GaussianRational {
        let mut sorted = idx.to_vec();
        let sign = sort_sign(&mut sorted);
        let Some(sign) = sign else { return GaussianRational::zero() };
        let v = self
            .components
            .get(&idx.len())
            .and_then(|c| c.get(&sorted))
            .cloned()
            .unwrap_or_else(GaussianRational::zero);
        if sign < 0 {
            -v
        } else {
            v
        }
    }
}

/// Sort in place, returning the permutation sign, or `None` on a repeated index.
fn sort_sign(v: &mut [usize]) -> Option<i32> {
    let mut sign = 1;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            } else if v[j] == v[j + 1] {
                return None;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

/// All increasing `p`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, p: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, p: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == p {
            out.push(cur.clone());
            return;
        }
        for k in start..n {
            if n - k < p - cur.len() {
                break;
            }
            cur.push(k);
            rec(k + 1, n, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, p, &mut Vec::new(), &mut out);
    out
}

fn pauli() -> [ExactMatrix; 3] {
    let g = GaussianRational::from_ints;
    let z = GaussianRational::zero;
    [
        ExactMatrix::from_rows(vec![vec![z(), g(1, 0)], vec![g(1, 0), z()]]).unwrap(),
        ExactMatrix::from_rows(vec![vec![z(), g(0, -1)], vec![g(0, 1), z()]]).unwrap(),
        ExactMatrix::from_rows(vec![vec![g(1, 0), z()], vec![z(), g(-1, 0)]]).unwrap(),
    ]
}

fn build_gammas(n: usize) -> Vec<ExactMatrix> {
    let [s1, s2, s3] = pauli();
    let id2 = ExactMatrix::identity(2);
    let mut gammas: Vec<ExactMatrix> = Vec::new();
    let mut z = ExactMatrix::identity(1);
    for _ in 0..n / 2 {
        let mut next: Vec<ExactMatrix> = gammas.iter().map(|g| g.kron(&id2)).collect();
        next.push(z.kron(&s1));
        next.push(z.kron(&s2));
        gammas = next;
        z = z.kron(&s3);
    }
    if n % 2 == 1 {
        gammas.push(z);
    }
    gammas
}

impl CliffordModel {
    pub fn build(n: usize) -> Result<CliffordModel, CliffordError> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(CliffordError::DimensionOutOfRange(n));
        }
        let gammas = build_gammas(n);
        let dim = gammas[0].rows();
        let mono: Vec<Monomial> =
            gammas.iter().map(|g| Monomial::from_matrix(g).expect("tensor gammas are monomial")).collect();

        let (chirality, chirality_diag) = if n.is_multiple_of(2) {
            let mut prod = Monomial::identity(dim);
            for g in &mono {
                prod = prod.compose(g);
            }
            let mut chi = prod.scale(&GaussianRational::i().pow((n / 2) as u32));
            if !chi.compose(&chi).to_matrix().eq(&ExactMatrix::identity(dim)) {
                chi = chi.scale(&GaussianRational::i());
            }
            let diag: Vec<i8> = (0..dim)
                .map(|q| {
                    assert_eq!(chi.target(q), q, "chirality is diagonal in the tensor basis");
                    if chi.coef(q).is_one() {
                        1
                    } else {
                        -1
                    }
                })
                .collect();
            (Some(chi.to_matrix()), diag)
        } else {
            (None, vec![1; dim])
        };
        let plus_idx: Vec<usize> = (0..dim).filter(|&q| chirality_diag[q] > 0).collect();
        let minus_idx: Vec<usize> =
            if n.is_multiple_of(2) { (0..dim).filter(|&q| chirality_diag[q] < 0).collect() } else { Vec::new() };

        let conj_plus = solve_intertwiner(&mono, dim, ConjSign::Plus);
        let conj_minus = solve_intertwiner(&mono, dim, ConjSign::Minus);
        let symmetry = PairingSymmetry::for_dim(n);

        let mut model = CliffordModel {
            n,
            dim,
            gammas,
            mono,
            chirality,
            chirality_diag,
            conj_plus,
            conj_minus,
            pairing_kind: PairingKind { symmetry, conjugation: ConjSign::Plus },
            conj: ExactMatrix::zeros(0, 0),
            pairing: Vec::new(),
            plus_idx,
            minus_idx,
        };
        let candidates = [(ConjSign::Plus, model.conj_plus.clone()), (ConjSign::Minus, model.conj_minus.clone())];
        let mut chosen = None;
        for (sign, c) in candidates {
            let Some(c) = c else { continue };
            let mats: Vec<ExactMatrix> = model.gammas.iter().map(|g| c.mul(g)).collect();
            if model.has_symmetry_type(&mats) {
                chosen = Some((sign, c, mats));
                break;
            }
        }
        let (sign, c, mats) = chosen.expect("one conjugation intertwiner realises the pairing type");
        model.pairing_kind.conjugation = sign;
        model.conj = c;
        model.pairing = mats
            .iter()
            .map(|m| {
                let mut e = Vec::new();
                for a in 0..dim {
                    for b in 0..dim {
                        if !m[(a, b)].is_zero() {
                            e.push((a, b, m[(a, b)].clone()));
                        }
                    }
                }
                e
            })
            .collect();
        Ok(model)
    }

    fn has_symmetry_type(&self, mats: &[ExactMatrix]) -> bool {
        let chi = |q: usize| self.chirality_diag[q];
        mats.iter().all(|m| {
            let entry_ok = |a: usize, b: usize| -> bool {
                let x = &m[(a, b)];
                let y = &m[(b, a)];
                match self.pairing_kind.symmetry {
                    PairingSymmetry::Symmetric => x == y,
                    PairingSymmetry::Antisymmetric => *x == -y,
                    PairingSymmetry::DualChiral => chi(a) != chi(b) || x.is_zero(),
                    PairingSymmetry::ChiralSymmetric => {
                        if chi(a) == chi(b) {
                            x == y
                        } else {
                            x.is_zero()
                        }
                    }
                    PairingSymmetry::ChiralAntisymmetric => {
                        if chi(a) == chi(b) {
                            *x == -y
                        } else {
                            x.is_zero()
                        }
                    }
                }
            };
            (0..self.dim).all(|a| (0..self.dim).all(|b| entry_ok(a, b)))
        }) && mats.iter().any(|m| !m.is_zero())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension `2^⌊n/2⌋` of the full spin module.
    pub fn spinor_dim(&self) -> usize {
        self.dim
    }

    pub fn sector_dim(&self, s: Sector) -> usize {
        match s {
            Sector::Full => self.dim,
            Sector::Plus => self.plus_idx.len(),
            Sector::Minus => self.minus_idx.len(),
        }
    }

    /// Full-module indices spanned by a sector.
    pub fn sector_indices(&self, s: Sector) -> Vec<usize> {
        match s {
            Sector::Full => (0..self.dim).collect(),
            Sector::Plus => self.plus_idx.clone(),
            Sector::Minus => self.minus_idx.clone(),
        }
    }

    pub fn is_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    /// The sectors a single spinor of this model naturally lives in.
    pub fn weyl_sectors(&self) -> Vec<Sector> {
        if self.is_even() {
            vec![Sector::Plus, Sector::Minus]
        } else {
            vec![Sector::Full]
        }
    }

    pub fn gammas(&self) -> &[ExactMatrix] {
        &self.gammas
    }

    pub fn gamma_monomials(&self) -> &[Monomial] {
        &self.mono
    }

    pub fn chirality(&self) -> Option<&ExactMatrix> {
        self.chirality.as_ref()
    }

    pub fn conj_plus(&self) -> Option<&ExactMatrix> {
        self.conj_plus.as_ref()
    }

    pub fn conj_minus(&self) -> Option<&ExactMatrix> {
        self.conj_minus.as_ref()
    }

    pub fn charge_conjugation(&self, sign: ConjSign) -> Option<&ExactMatrix> {
        match sign {
            ConjSign::Plus => self.conj_plus(),
            ConjSign::Minus => self.conj_minus(),
        }
    }

    pub fn pairing_kind(&self) -> PairingKind {
        self.pairing_kind
    }

    /// The intertwiner `C` used to build Γ.
    pub fn pairing_conjugation(&self) -> &ExactMatrix {
        &self.conj
    }

    /// Nonzero entries `(a, b, c)` of `C·γ^μ` on the full module.
    pub fn pairing_entries(&self, mu: usize) -> &[(usize, usize, GaussianRational)] {
        &self.pairing[mu]
    }

    pub fn spinor(&self, sector: Sector, coeffs: Vec<GaussianRational>) -> Result<Spinor, CliffordError> {
        let expected = self.sector_dim(sector);
        if expected == 0 || coeffs.len() != expected {
            return Err(CliffordError::WrongLength { sector, expected, found: coeffs.len() });
        }
        Ok(Spinor::new(self.n, sector, coeffs))
    }

    fn check(&self, q: &Spinor) -> Result<(), CliffordError> {
        let expected = self.sector_dim(q.sector);
        if q.dim != self.n || expected == 0 || q.coeffs.len() != expected {
            return Err(CliffordError::WrongLength { sector: q.sector, expected, found: q.coeffs.len() });
        }
        Ok(())
    }

    /// Embed sector coordinates into the full module.
    pub fn embed(&self, q: &Spinor) -> Vector {
        let mut v = vec![GaussianRational::zero(); self.dim];
        for (k, &idx) in self.sector_indices(q.sector).iter().enumerate() {
            v[idx] = q.coeffs[k].clone();
        }
        v
    }

    /// Restrict a full-module vector to a sector's coordinates (the chirality projector).
    pub fn project(&self, v: &[GaussianRational], sector: Sector) -> Spinor {
        let coeffs = self.sector_indices(sector).iter().map(|&i| v[i].clone()).collect();
        Spinor::new(self.n, sector, coeffs)
    }

    /// Re-express a spinor in a Weyl sector when it lies in one; odd dimensions keep `Full`.
    pub fn to_weyl(&self, q: &Spinor) -> Result<Spinor, CliffordError> {
        self.check(q)?;
        if !self.is_even() || q.sector != Sector::Full {
            return Ok(q.clone());
        }
        let in_plus = self.minus_idx.iter().all(|&i| q.coeffs[i].is_zero());
        let in_minus = self.plus_idx.iter().all(|&i| q.coeffs[i].is_zero());
        match (in_plus, in_minus) {
            (true, _) => Ok(self.project(&q.coeffs, Sector::Plus)),
            (_, true) => Ok(self.project(&q.coeffs, Sector::Minus)),
            _ => Err(CliffordError::NotWeyl(self.n)),
        }
    }

    /// `γ(v)·Q` on the full module.
    pub fn clifford_action(&self, v: &[GaussianRational], q_full: &[GaussianRational]) -> Vector {
        let mut out = vec![GaussianRational::zero(); self.dim];
        for (mu, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (k, x) in self.mono[mu].apply(q_full).into_iter().enumerate() {
                if !x.is_zero() {
                    out[k] += &(c * &x);
                }
            }
        }
        out
    }

    /// `Γ(x, y)` for full-module vectors.
    pub fn pairing_full(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
        (0..self.n)
            .map(|mu| {
                let mut acc = GaussianRational::zero();
                for (a, b, c) in &self.pairing[mu] {
                    if !x[*a].is_zero() && !y[*b].is_zero() {
                        acc += &(&(c * &x[*a]) * &y[*b]);
                    }
                }
                acc
            })
            .collect()
    }

    fn sectors_paired(&self, a: Sector, b: Sector) -> bool {
        if !self.is_even() {
            return a == Sector::Full && b == Sector::Full;
        }
        a != Sector::Full && b == self.pairing_kind.symmetry.partner(a)
    }

    /// The V-valued pairing `Γ^μ(Q₁, Q₂) = Q₁ᵀ·C·γ^μ·Q₂`.
    pub fn gamma_pairing(&self, q1: &Spinor, q2: &Spinor) -> Result<Vector, CliffordError> {
        self.check(q1)?;
        self.check(q2)?;
        if !self.sectors_paired(q1.sector, q2.sector) {
            return Err(CliffordError::SectorMismatch(q1.sector, q2.sector, self.n));
        }
        Ok(self.pairing_full(&self.embed(q1), &self.embed(q2)))
    }

    /// The scalar pairing `⟨x, y⟩ = xᵀ·C·y` on the full module.
    pub fn scalar_pairing(&self, x: &[GaussianRational], y: &[GaussianRational]) -> GaussianRational {
        self.conj.bilinear(x, y)
    }

    /// `γ^A = γ_{a₁}⋯γ_{a_p}` for an increasing index list.
    pub fn gamma_product(&self, idx: &[usize]) -> Monomial {
        let mut m = Monomial::identity(self.dim);
        for &a in idx {
            m = m.compose(&self.mono[a]);
        }
        m
    }

    /// Largest Fierz degree kept: `n` for even `n`, `⌊n/2⌋` for odd `n`.
    pub fn fierz_max_degree(&self) -> usize {
        if self.is_even() {
            self.n
        } else {
            self.n / 2
        }
    }

    /// Fierz components `F_A = tr(Q⊗Q · (γ^A)⁻¹) / dim S` where `Q⊗Q` acts as `x ↦ Q⟨Q, x⟩`.
    pub fn fierz_decompose(&self, q: &Spinor) -> Result<FierzDecomposition, CliffordError> {
        self.fierz_upto(q, self.fierz_max_degree())
    }

    fn fierz_upto(&self, q: &Spinor, max_p: usize) -> Result<FierzDecomposition, CliffordError> {
        self.check(q)?;
        if q.is_zero() {
            return Err(CliffordError::ZeroSpinor);
        }
        let qf = self.embed(q);
        let cq = self.conj.transpose().mul_vec(&qf);
        let inv_d = GaussianRational::int(self.dim as i64).inv().expect("nonzero");
        let mut components = BTreeMap::new();
        for p in 0..=max_p {
            let mut comp = BTreeMap::new();
            for a in subsets(self.n, p) {
                let rev: Vec<usize> = a.iter().rev().copied().collect();
                let g_inv = self.gamma_product(&rev);
                let val = &dot(&cq, &g_inv.apply(&qf)) * &inv_d;
                comp.insert(a, val);
            }
            components.insert(p, comp);
        }
        Ok(FierzDecomposition { n: self.n, components })
    }

    /// The matrix of `Q⊗Q` as the endomorphism `x ↦ Q·⟨Q, x⟩`.
    pub fn tensor_square(&self, q: &Spinor) -> ExactMatrix {
        let qf = self.embed(q);
        let row = self.conj.transpose().mul_vec(&qf);
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = &qf[i] * &row[j];
            }
        }
        m
    }

    /// `Σ_A F_A·γ^A`.
    pub fn fierz_reconstruct(&self, f: &FierzDecomposition) -> ExactMatrix {
        let mut m = ExactMatrix::zeros(self.dim, self.dim);
        for comp in f.components.values() {
            for (a, c) in comp {
                if c.is_zero() {
                    continue;
                }
                m = m.add(&self.gamma_product(a).to_matrix().scale(c));
            }
        }
        m
    }

    fn nullspace_matrix(&self, qf: &[GaussianRational]) -> ExactMatrix {
        let cols: Vec<Vector> = self.mono.iter().map(|g| g.apply(qf)).collect();
        ExactMatrix::from_columns(self.dim, &cols)
    }

    /// `T_Q = {v ∈ V : γ(v)Q = 0}`.
    pub fn nullspace(&self, q: &Spinor) -> Result<Vec<Vector>, CliffordError> {
        self.check(q)?;
        if q.is_zero() {
            return Err(CliffordError::ZeroSpinor);
        }
        Ok(self.nullspace_matrix(&self.embed(q)).kernel())
    }

    /// `S_Q`: image of `Γ(Q, −)` on the partner sector.
    pub fn spinor_image(&self, q: &Spinor) -> Result<Vec<Vector>, CliffordError> {
        self.check(q)?;
        if q.is_zero() {
            return Err(CliffordError::ZeroSpinor);
        }
        let partner = if self.is_even() {
            if q.sector == Sector::Full {
                return Err(CliffordError::NotWeyl(self.n));
            }
            self.pairing_kind.symmetry.partner(q.sector)
        } else {
            Sector::Full
        };
        let qf = self.embed(q);
        let cols: Vec<Vector> = self
            .sector_indices(partner)
            .iter()
            .map(|&b| {
                let mut e = vec![GaussianRational::zero(); self.dim];
                e[b] = GaussianRational::one();
                self.pairing_full(&qf, &e)
            })
            .collect();
        Ok(ExactMatrix::from_columns(self.n, &cols).image_basis())
    }

    /// Purity through the nullspace: `dim T_Q = ⌊n/2⌋`.
    pub fn is_pure_by_nullspace(&self, q: &Spinor) -> Result<bool, CliffordError> {
        Ok(self.nullspace(q)?.len() == self.n / 2)
    }

    /// Purity through Chevalley's criterion: Weyl (even n) and `F_p = 0` for `p < ⌊n/2⌋`.
    pub fn is_pure_by_chevalley(&self, q: &Spinor) -> Result<bool, CliffordError> {
        let q = self.to_weyl(q)?;
        let m = self.n / 2;
        if m == 0 {
            return Ok(!q.is_zero());
        }
        let f = self.fierz_upto(&q, m - 1)?;
        Ok((0..m).all(|p| f.vanishes(p)))
    }

    /// Purity computed by both routes; a disagreement is reported as an error.
    pub fn is_pure(&self, q: &Spinor) -> Result<bool, CliffordError> {
        let q = self.to_weyl(q)?;
        if q.is_zero() {
            return Err(CliffordError::ZeroSpinor);
        }
        let nullspace = self.is_pure_by_nullspace(&q)?;
        let chevalley = self.is_pure_by_chevalley(&q)?;
        if nullspace != chevalley {
            return Err(CliffordError::PurityRoutesDisagree { nullspace, chevalley });
        }
        Ok(nullspace)
    }

    /// Infinitesimal rotation in the `(i, j)` plane, generator `¼[γᵢ, γⱼ]`.
    pub fn so_action(&self, i: usize, j: usize, q: &Spinor) -> Result<Spinor, CliffordError> {
        self.check(q)?;
        if i >= self.n || j >= self.n || i == j {
            return Err(CliffordError::BadAxes(i, j, self.n));
        }
        let half = GaussianRational::from_fracs(1, 2, 0, 1);
        let g = self.mono[i].compose(&self.mono[j]).scale(&half);
        let out = g.apply(&self.embed(q));
        Ok(self.project(&out, q.sector))
    }

    /// Whether a full-module vector lies in the stated chirality sector.
    pub fn in_sector(&self, v: &[GaussianRational], s: Sector) -> bool {
        let outside = match s {
            Sector::Full => return true,
            Sector::Plus => &self.minus_idx,
            Sector::Minus => &self.plus_idx,
        };
        outside.iter().all(|&i| v[i].is_zero())
    }
}

/// The rotation `r_{ij}` on V matching [`CliffordModel::so_action`]: `r e_j = -e_i`, `r e_i = e_j`.
pub fn rotate_vector(i: usize, j: usize, v: &[GaussianRational]) -> Vector {
    let mut out = vec![GaussianRational::zero(); v.len()];
    out[i] = v[j].clone();
    out[j] = -&v[i];
    out
}

fn solve_intertwiner(mono: &[Monomial], d: usize, sign: ConjSign) -> Option<ExactMatrix> {
    // Unknown A[r][c] sits at column r*d + c; equation s_c·A[r,σ(c)] − ε·s_r·A[σ(r),c] = 0.
    let eps = match sign {
        ConjSign::Plus => GaussianRational::one(),
        ConjSign::Minus => -GaussianRational::one(),
    };
    let mut sys = SparseSystem::new(d * d);
    for g in mono {
        for r in 0..d {
            for c in 0..d {
                sys.push([(r * d + g.target(c), g.coef(c).clone()), (g.target(r) * d + c, -(&eps * g.coef(r)))]);
            }
        }
    }
    let kernel = sys.kernel();
    let v = kernel.into_iter().next()?;
    let v = crate::exactfield::normalize_first(&v);
    let a = ExactMatrix::from_entries(d, d, v).expect("d*d entries");
    a.inverse().map(|_| a)
}

/// Shared read-only registry of models, built on first use.
pub fn model(n: usize) -> Result<&'static CliffordModel, CliffordError> {
    static MODELS: [OnceLock<CliffordModel>; MAX_DIM + 1] = [const { OnceLock::new() }; MAX_DIM + 1];
    if !(1..=MAX_DIM).contains(&n) {
        return Err(CliffordError::DimensionOutOfRange(n));
    }
    Ok(MODELS[n].get_or_init(|| CliffordModel::build(n).expect("dimension checked")))
}

/// Map a spinor of odd dimension `n` to the `+` sector in dimension `n + 1`
/// (identity on coefficients).
pub fn lift_to_even(q: &Spinor) -> Spinor {
    assert!(q.dim % 2 == 1, "lift starts in odd dimension");
    Spinor::new(q.dim + 1, Sector::Plus, q.coeffs.clone())
}

/// Restriction from dimension `n` to `n − 1`: identity on coefficients when the module
/// dimensions agree, otherwise Weyl-sector coordinates become full coordinates.
pub fn restrict_spinor(q: &Spinor) -> Spinor {
    assert!(q.dim >= 2, "restriction needs n ≥ 2");
    if q.dim % 2 == 1 {
        Spinor::new(q.dim - 1, Sector::Full, q.coeffs.clone())
    } else {
        assert!(q.sector != Sector::Full, "restriction from even n acts on Weyl spinors");
        Spinor::new(q.dim - 1, Sector::Full, q.coeffs.clone())
    }
}

/// Orthogonal complement in V for the standard bilinear form.
pub fn orthogonal_complement(n: usize, basis: &[Vector]) -> Vec<Vector> {
    if basis.is_empty() {
        return (0..n)
            .map(|k| {
                let mut e = vec![GaussianRational::zero(); n];
                e[k] = GaussianRational::one();
                e
            })
            .collect();
    }
    ExactMatrix::from_rows(basis.to_vec()).expect("equal lengths").kernel()
}

/// Whether a subspace of V is totally isotropic for the standard form.
pub fn is_isotropic(basis: &[Vector]) -> bool {
    basis.iter().all(|v| basis.iter().all(|w| dot(v, w).is_zero()))
}

/// Whether two subspaces of V coincide.
pub fn same_subspace(n: usize, a: &[Vector], b: &[Vector]) -> bool {
    let da = span_dim(n, a);
    da == span_dim(n, b) && {
        let mut all = a.to_vec();
        all.extend(b.iter().cloned());
        span_dim(n, &all) == da
    }
}

/// A pure spinor `γ(v₁)⋯γ(v₂ₖ)·e_b` for a random coordinate basis vector `e_b` of the sector
/// and random non-null rational vectors `vᵢ`.
pub fn random_pure_spinor<R: rand::Rng>(model: &CliffordModel, sector: Sector, rng: &mut R, bound: i64) -> Spinor {
    use crate::sampling::{random_vector, small_gaussian};
    let idx = model.sector_indices(sector);
    let mut v = vec![GaussianRational::zero(); model.spinor_dim()];
    v[idx[rng.gen_range(0..idx.len())]] = GaussianRational::one();
    let steps = 2 * rng.gen_range(1..=2);
    for _ in 0..steps {
        let w = loop {
            let w = random_vector(rng, model.n(), bound);
            if !dot(&w, &w).is_zero() {
                break w;
            }
        };
        v = model.clifford_action(&w, &v);
    }
    let c = loop {
        let c = small_gaussian(rng, bound);
        if !c.is_zero() {
            break c;
        }
    };
    let v = crate::exactfield::scale_vec(&v, &c);
    model.project(&v, sector)
}

/// Agreement of the two purity routes, and `S_Q = T_Q^⊥`, on sampled spinors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuritySurvey {
    pub n: usize,
    pub samples: usize,
    pub pure: usize,
    pub routes_agree: usize,
    pub image_is_complement: usize,
}

impl PuritySurvey {
    pub fn passed(&self) -> bool {
        self.routes_agree == self.samples && self.image_is_complement == self.samples
    }
}

/// Even-indexed samples are constructed pure, odd-indexed ones are random; Weyl sectors alternate.
pub fn purity_survey(n: usize, samples: usize, seed: u64) -> Result<PuritySurvey, CliffordError> {
    use rayon::prelude::*;
    let m = model(n)?;
    let sectors = m.weyl_sectors();
    let outcomes = (0..samples)
        .into_par_iter()
        .map(|k| {
            let mut rng = crate::sampling::rng(crate::sampling::derive_seed(seed, k as u64));
            let s = sectors[(k / 2) % sectors.len()];
            let q = if k % 2 == 0 {
                random_pure_spinor(m, s, &mut rng, 2)
            } else {
                m.spinor(s, crate::sampling::random_nonzero_vector(&mut rng, m.sector_dim(s), 2))?
            };
            let by_nullspace = m.is_pure_by_nullspace(&q)?;
            let by_chevalley = m.is_pure_by_chevalley(&q)?;
            let t = m.nullspace(&q)?;
            let complement = same_subspace(n, &m.spinor_image(&q)?, &orthogonal_complement(n, &t));
            Ok((by_nullspace, by_nullspace == by_chevalley, complement))
        })
        .collect::<Result<Vec<_>, CliffordError>>()?;
    Ok(PuritySurvey {
        n,
        samples,
        pure: outcomes.iter().filter(|o| o.0).count(),
        routes_agree: outcomes.iter().filter(|o| o.1).count(),
        image_is_complement: outcomes.iter().filter(|o| o.2).count(),
    })
}

#[cfg(test)]
mod tests;
