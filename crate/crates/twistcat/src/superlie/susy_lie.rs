//! The supersymmetry algebra `(so(n) ⋉ V ⊕ 𝔤_R) ⋉ ΠΣ` as a super Lie algebra.

use std::fmt;
use std::sync::Arc;

use super::basis::{commutator, planes, preserving, spinor_rep, vector_rep, Basis};
use super::twist::{find_twisting_datum, TwistingDatum, TwistingHom};
use super::{sector, Parity, SuperLieAlgebra, SuperLieBuilder, SuperLieError, Terms};
use crate::exactfield::{is_zero_vec, ExactMatrix, GaussianRational, Vector};
use crate::susy::{AuxKind, Supercharge, SusyAlgebra};

/// The R-symmetry Lie algebra acting on the auxiliary space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RSymmetry {
    /// `so(𝒩)`, or `so(𝒩₊) ⊕ so(𝒩₋)`.
    Orthogonal,
    /// `sp(2𝒩)`, or `sp(2𝒩₊) ⊕ sp(2𝒩₋)`.
    Symplectic,
    /// `gl(𝒩)` acting on `W` and dually on `W*`.
    General,
}

impl RSymmetry {
    pub fn for_kind(kind: AuxKind) -> RSymmetry {
        match kind {
            AuxKind::Symmetric => RSymmetry::Orthogonal,
            AuxKind::Symplectic => RSymmetry::Symplectic,
            AuxKind::DualPair => RSymmetry::General,
        }
    }
}

impl fmt::Display for RSymmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RSymmetry::Orthogonal => "so",
            RSymmetry::Symplectic => "sp",
            RSymmetry::General => "gl",
        })
    }
}

/// A supersymmetry algebra with its generator layout: `M{i}{j}`, `P{μ}`, `R{a}`, `S{k}`.
#[derive(Debug, Clone)]
pub struct SusySuperLie {
    algebra: SuperLieAlgebra,
    susy: Arc<SusyAlgebra>,
    rsym: RSymmetry,
    planes: Vec<(usize, usize)>,
    /// Per R-generator, one matrix on each block's auxiliary space.
    r_mats: Vec<Vec<ExactMatrix>>,
    r_basis: Basis,
}

fn flatten(mats: &[ExactMatrix]) -> Vector {
    mats.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

fn r_generators(susy: &SusyAlgebra, rsym: RSymmetry) -> Vec<Vec<ExactMatrix>> {
    let aux = susy.aux();
    let dims: Vec<usize> = susy.blocks().iter().map(|b| b.aux_dim).collect();
    let zeros = || dims.iter().map(|&d| ExactMatrix::zeros(d, d)).collect::<Vec<_>>();
    match rsym {
        RSymmetry::General => {
            let k = &aux.forms[0];
            let k_inv = k.inverse().expect("validated coupling");
            let n = k.rows();
            let mut out = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    let mut e = ExactMatrix::zeros(n, n);
                    e[(a, b)] = GaussianRational::one();
                    let dual = k_inv.mul(&e.transpose()).mul(k).scale(&-GaussianRational::one());
                    out.push(vec![e, dual]);
                }
            }
            out
        }
        _ => {
            let mut out = Vec::new();
            for (b, form) in aux.forms.iter().enumerate() {
                for x in preserving(form) {
                    let mut mats = zeros();
                    mats[b] = x;
                    out.push(mats);
                }
            }
            out
        }
    }
}

/// Assemble the supersymmetry algebra with R-symmetry `g_R`.
pub fn build_susy_superlie(susy: &Arc<SusyAlgebra>, rsym: RSymmetry) -> Result<SusySuperLie, SuperLieError> {
    let expected = RSymmetry::for_kind(susy.aux().kind);
    if rsym != expected {
        return Err(SuperLieError::RSymmetryMismatch { expected: expected.to_string(), found: rsym.to_string() });
    }
    let n = susy.n();
    let model = susy.clifford();
    let pls = planes(n);
    let vreps: Vec<ExactMatrix> = pls.iter().map(|&(i, j)| vector_rep(n, i, j)).collect();
    let v_basis = Basis::of_matrices(&vreps).expect("rotations are independent");
    let r_mats = r_generators(susy, rsym);
    let r_basis = Basis::new(r_mats.iter().map(|m| flatten(m)).collect())
        .ok_or_else(|| SuperLieError::Unsupported("dependent R-symmetry generators".into()))?;
    let srep: Vec<Vec<ExactMatrix>> = susy
        .blocks()
        .iter()
        .map(|blk| pls.iter().map(|&(i, j)| spinor_rep(model, blk.sector, i, j)).collect())
        .collect();

    let (nm, nr, ns) = (pls.len(), r_mats.len(), susy.sigma_dim());
    let (m0, p0, r0, s0) = (0, nm, nm + n, nm + n + nr);
    let mut b = SuperLieBuilder::new();
    for &(i, j) in &pls {
        b.generator(format!("M{i}{j}"), Parity::Even);
    }
    for mu in 0..n {
        b.generator(format!("P{mu}"), Parity::Even);
    }
    for a in 0..nr {
        b.generator(format!("R{a}"), Parity::Even);
    }
    for k in 0..ns {
        b.generator(format!("S{k}"), Parity::Odd);
    }
    let coords_terms = |c: Vector, offset: usize| -> Terms {
        c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (offset + k, x)).collect()
    };

    for a in 0..nm {
        for c in a + 1..nm {
            let coords = v_basis.matrix_coords(&commutator(&vreps[a], &vreps[c])).expect("so(n) closes");
            b.set_bracket(m0 + a, m0 + c, coords_terms(coords, m0));
        }
        for mu in 0..n {
            b.set_bracket(m0 + a, p0 + mu, coords_terms(vreps[a].column(mu), p0));
        }
        for (bi, blk) in susy.blocks().iter().enumerate() {
            let rho = &srep[bi][a];
            for s in 0..blk.spinor_dim {
                for w in 0..blk.aux_dim {
                    let terms: Terms = (0..blk.spinor_dim)
                        .filter(|&t| !rho[(t, s)].is_zero())
                        .map(|t| (s0 + blk.index(t, w), rho[(t, s)].clone()))
                        .collect();
                    b.set_bracket(m0 + a, s0 + blk.index(s, w), terms);
                }
            }
        }
    }
    for a in 0..nr {
        for c in a + 1..nr {
            let comm: Vec<ExactMatrix> = r_mats[a].iter().zip(&r_mats[c]).map(|(x, y)| commutator(x, y)).collect();
            let coords = r_basis.coords(&flatten(&comm)).expect("R-symmetry closes");
            b.set_bracket(r0 + a, r0 + c, coords_terms(coords, r0));
        }
        for (bi, blk) in susy.blocks().iter().enumerate() {
            let x = &r_mats[a][bi];
            for s in 0..blk.spinor_dim {
                for w in 0..blk.aux_dim {
                    let terms: Terms = (0..blk.aux_dim)
                        .filter(|&u| !x[(u, w)].is_zero())
                        .map(|u| (s0 + blk.index(s, u), x[(u, w)].clone()))
                        .collect();
                    b.set_bracket(r0 + a, s0 + blk.index(s, w), terms);
                }
            }
        }
    }
    let mut odd_pairs: std::collections::BTreeMap<(usize, usize), Terms> = std::collections::BTreeMap::new();
    for mu in 0..n {
        for (i, j, c) in susy.tensor_component(mu) {
            if i <= j {
                odd_pairs.entry((*i, *j)).or_default().push((p0 + mu, c.clone()));
            }
        }
    }
    for ((i, j), terms) in odd_pairs {
        b.set_bracket(s0 + i, s0 + j, terms);
    }

    let d = b.len();
    let units = |range: std::ops::Range<usize>| -> Vec<Vector> {
        range
            .map(|k| {
                let mut e = vec![GaussianRational::zero(); d];
                e[k] = GaussianRational::one();
                e
            })
            .collect()
    };
    b.sector(sector::ROTATIONS, units(m0..p0));
    b.sector(sector::TRANSLATIONS, units(p0..r0));
    b.sector(sector::R_SYMMETRY, units(r0..s0));
    b.sector(sector::ODD, units(s0..d));
    Ok(SusySuperLie { algebra: b.build()?, susy: Arc::clone(susy), rsym, planes: pls, r_mats, r_basis })
}

impl SusySuperLie {
    pub fn algebra(&self) -> &SuperLieAlgebra {
        &self.algebra
    }

    pub fn susy(&self) -> &Arc<SusyAlgebra> {
        &self.susy
    }

    pub fn rsym(&self) -> RSymmetry {
        self.rsym
    }

    fn r_offset(&self) -> usize {
        self.planes.len() + self.susy.n()
    }

    fn s_offset(&self) -> usize {
        self.r_offset() + self.r_mats.len()
    }

    /// The rotation generator `M{i}{j}` for `i < j`.
    pub fn rotation(&self, i: usize, j: usize) -> Result<Vector, SuperLieError> {
        let k = self
            .planes
            .iter()
            .position(|&p| p == (i, j))
            .ok_or_else(|| SuperLieError::UnknownGenerator(format!("M{i}{j}")))?;
        Ok(self.algebra.unit(k))
    }

    /// Matrix of the rotation `M{i}{j}` on the spinor factor of block `b`.
    pub fn spinor_rep(&self, block: usize, i: usize, j: usize) -> ExactMatrix {
        spinor_rep(self.susy.clifford(), self.susy.blocks()[block].sector, i, j)
    }

    /// The R-symmetry element acting by the given matrix on each block's auxiliary space.
    pub fn r_element(&self, mats: &[ExactMatrix]) -> Result<Vector, SuperLieError> {
        let c = self
            .r_basis
            .coords(&flatten(mats))
            .ok_or_else(|| SuperLieError::NotInSubspace("matrices are not in the R-symmetry algebra".into()))?;
        let mut v = self.algebra.zero();
        for (k, x) in c.into_iter().enumerate() {
            v[self.r_offset() + k] = x;
        }
        Ok(v)
    }

    /// Per-block auxiliary matrices of the R-symmetry part of an element.
    pub fn r_matrices(&self, x: &[GaussianRational]) -> Vec<ExactMatrix> {
        let dims: Vec<usize> = self.susy.blocks().iter().map(|b| b.aux_dim).collect();
        let mut out: Vec<ExactMatrix> = dims.iter().map(|&d| ExactMatrix::zeros(d, d)).collect();
        for (k, mats) in self.r_mats.iter().enumerate() {
            let c = &x[self.r_offset() + k];
            if c.is_zero() {
                continue;
            }
            for (o, m) in out.iter_mut().zip(mats) {
                *o = o.add(&m.scale(c));
            }
        }
        out
    }

    pub fn embed(&self, q: &Supercharge) -> Vector {
        let mut v = self.algebra.zero();
        for (k, c) in q.coeffs().iter().enumerate() {
            v[self.s_offset() + k] = c.clone();
        }
        v
    }

    /// The supercharge with the odd coordinates of `x`; `x` must be odd.
    pub fn supercharge_of(&self, x: &[GaussianRational]) -> Result<Supercharge, SuperLieError> {
        let s0 = self.s_offset();
        if !is_zero_vec(&x[..s0]) {
            return Err(SuperLieError::NotInSubspace("element has an even component".into()));
        }
        Ok(self.susy.supercharge(x[s0..].to_vec())?)
    }

    /// A weight-one `u(1)` built from the auxiliary images of `Q`: `+1` on each image, `−1` on
    /// a complementary isotropic (or dual) subspace, `0` elsewhere.
    pub fn constructive_datum(&self, q: &Supercharge) -> Option<Vector> {
        let blocks = self.susy.blocks();
        let images: Vec<Vec<Vector>> = (0..blocks.len()).map(|b| q.block_matrix(b).transpose().image_basis()).collect();
        let mats = match self.rsym {
            RSymmetry::General => {
                let k = &self.susy.aux().forms[0];
                let a = &images[0];
                let bvecs: Vec<Vector> = images[1].iter().map(|c| k.mul_vec(c)).collect();
                let x = dual_pair_grading(k.rows(), a, &bvecs)?;
                let k_inv = k.inverse()?;
                let dual = k_inv.mul(&x.transpose()).mul(k).scale(&-GaussianRational::one());
                vec![x, dual]
            }
            _ => self
                .susy
                .aux()
                .forms
                .iter()
                .zip(&images)
                .map(|(form, img)| isotropic_grading(form, img))
                .collect::<Option<Vec<_>>>()?,
        };
        self.r_element(&mats).ok()
    }

    /// Twisting datum for `Q` in the R-symmetry, optionally commuting with `φ`.
    pub fn twisting_datum(&self, q: &Supercharge, phi: Option<&TwistingHom>) -> Option<TwistingDatum> {
        let qv = self.embed(q);
        let within = self.algebra.sector(sector::R_SYMMETRY).ok()?;
        let hints: Vec<Vector> = self.constructive_datum(q).into_iter().collect();
        find_twisting_datum(&self.algebra, &qv, within, phi, &hints)
    }
}

/// `X` with `X = 1` on the isotropic subspace `img`, `−1` on a dual isotropic subspace and `0`
/// on the orthogonal complement of both; `XᵀF + FX = 0`.
fn isotropic_grading(form: &ExactMatrix, img: &[Vector]) -> Option<ExactMatrix> {
    let d = form.rows();
    if img.is_empty() {
        return Some(ExactMatrix::zeros(d, d));
    }
    if img.iter().any(|x| img.iter().any(|y| !form.bilinear(x, y).is_zero())) {
        return None;
    }
    // u_j with ⟨w_i, u_j⟩ = δ_ij
    let k = img.len();
    let a = ExactMatrix::from_rows(img.iter().map(|w| form.transpose().mul_vec(w)).collect()).ok()?;
    let mut duals = Vec::new();
    for j in 0..k {
        let mut e = vec![GaussianRational::zero(); k];
        e[j] = GaussianRational::one();
        duals.push(a.solve(&e)?);
    }
    // make the duals isotropic: u'_j = u_j − ½ Σ_l ⟨u_j, u_l⟩ w_l
    let half = GaussianRational::from_fracs(1, 2, 0, 1);
    let corrected: Vec<Vector> = duals
        .iter()
        .map(|u| {
            let mut v = u.clone();
            for (l, ul) in duals.iter().enumerate() {
                let c = &half * &form.bilinear(u, ul);
                v = crate::exactfield::sub_vec(&v, &crate::exactfield::scale_vec(&img[l], &c));
            }
            v
        })
        .collect();
    let mut cols = img.to_vec();
    cols.extend(corrected.iter().cloned());
    let rest = complement(form, &cols);
    cols.extend(rest.iter().cloned());
    let p = ExactMatrix::from_columns(d, &cols);
    let mut diag = vec![GaussianRational::one(); k];
    diag.extend(vec![-GaussianRational::one(); k]);
    diag.extend(vec![GaussianRational::zero(); d - 2 * k]);
    let x = p.mul(&ExactMatrix::diagonal(&diag)).mul(&p.inverse()?);
    x.transpose().mul(form).add(&form.mul(&x)).is_zero().then_some(x)
}

/// Basis of `{v : F(c, v) = 0 for all c in cols}`.
fn complement(form: &ExactMatrix, cols: &[Vector]) -> Vec<Vector> {
    if cols.is_empty() {
        return (0..form.rows())
            .map(|i| {
                let mut e = vec![GaussianRational::zero(); form.rows()];
                e[i] = GaussianRational::one();
                e
            })
            .collect();
    }
    let rows: Vec<Vector> = cols.iter().map(|c| form.transpose().mul_vec(c)).collect();
    ExactMatrix::from_rows(rows).expect("equal lengths").kernel()
}

/// `X` on `W` with `X = 1` on `A`, `Xᵀ = −1` on `B`; needs `Bᵀ A = 0`.
fn dual_pair_grading(n: usize, a: &[Vector], b: &[Vector]) -> Option<ExactMatrix> {
    if a.iter().any(|x| b.iter().any(|y| !crate::exactfield::dot(x, y).is_zero())) {
        return None;
    }
    let ker_b = if b.is_empty() {
        complement(&ExactMatrix::identity(n), &[])
    } else {
        ExactMatrix::from_rows(b.to_vec()).ok()?.kernel()
    };
    // A' with Bᵀ A' = I
    let mut a_prime = Vec::new();
    if !b.is_empty() {
        let bt = ExactMatrix::from_rows(b.to_vec()).ok()?;
        for j in 0..b.len() {
            let mut e = vec![GaussianRational::zero(); b.len()];
            e[j] = GaussianRational::one();
            a_prime.push(bt.solve(&e)?);
        }
    }
    let mut cols = a.to_vec();
    let mut diag = vec![GaussianRational::one(); a.len()];
    cols.extend(a_prime.iter().cloned());
    diag.extend(vec![-GaussianRational::one(); a_prime.len()]);
    for v in ker_b {
        let mut trial = cols.clone();
        trial.push(v.clone());
        if crate::exactfield::span_dim(n, &trial) == trial.len() {
            cols.push(v);
            diag.push(GaussianRational::zero());
        }
    }
    let p = ExactMatrix::from_columns(n, &cols);
    Some(p.mul(&ExactMatrix::diagonal(&diag)).mul(&p.inverse()?))
}
