//! The twisting homomorphisms of the low-dimensional supersymmetry algebras, as maps from
//! rotation generators to R-symmetry matrices on the auxiliary spaces.
//!
//! A rotation acting on `Σ = S ⊗ W` by `ρ ⊗ 1` is cancelled on `S ⊗ W` against `1 ⊗ X` when
//! `X = −ρᵀ` in matching bases, which is how the projections onto spinor factors are realized.

use super::basis::{planes, spinor_rep, vector_rep};
use super::susy_lie::{RSymmetry, SusySuperLie};
use super::twist::TwistingHom;
use super::SuperLieError;
use crate::clifford::{self, Sector};
use crate::exactfield::{ExactMatrix, GaussianRational, SparseSystem, Vector};
use crate::susy::{AuxCount, AuxKind};

fn expect(sl: &SusySuperLie, n: usize, count: AuxCount) -> Result<(), SuperLieError> {
    let (found_n, found) = (sl.susy().n(), sl.susy().aux().count);
    if found_n != n || found != count || !sl.susy().aux().is_standard() {
        return Err(SuperLieError::Unsupported(format!(
            "homomorphism defined for n={n} {count} with standard pairings, not n={found_n} {found}"
        )));
    }
    Ok(())
}

fn clifford_err(e: clifford::CliffordError) -> SuperLieError {
    SuperLieError::Unsupported(e.to_string())
}

/// `diag(i, −i)` on a hyperbolic plane.
fn plane_generator() -> ExactMatrix {
    ExactMatrix::diagonal(&[GaussianRational::i(), -GaussianRational::i()])
}

fn block_diag(blocks: &[ExactMatrix]) -> ExactMatrix {
    let n: usize = blocks.iter().map(ExactMatrix::rows).sum();
    let mut out = ExactMatrix::zeros(n, n);
    let mut o = 0;
    for b in blocks {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                out[(o + i, o + j)] = b[(i, j)].clone();
            }
        }
        o += b.rows();
    }
    out
}

/// Per-block R-symmetry matrices for `X` acting on `W`; for `gl(𝒩)` the dual block is filled in.
fn r_mats(sl: &SusySuperLie, x: ExactMatrix) -> Vec<ExactMatrix> {
    match sl.rsym() {
        RSymmetry::General => {
            let k = &sl.susy().aux().forms[0];
            let dual = k.inverse().expect("nondegenerate").mul(&x.transpose()).mul(k).scale(&-GaussianRational::one());
            vec![x, dual]
        }
        _ => vec![x],
    }
}

fn full_hom(
    sl: &SusySuperLie,
    source: &str,
    x_of: impl Fn(usize, usize) -> Vec<ExactMatrix>,
) -> Result<TwistingHom, SuperLieError> {
    let images = planes(sl.susy().n())
        .into_iter()
        .map(|(i, j)| sl.r_element(&x_of(i, j)))
        .collect::<Result<Vec<Vector>, _>>()?;
    TwistingHom::full(sl.algebra(), source, images)
}

/// 2d `𝒩 = (k, l)` with `k, l ∈ {0, 2}`: `φ(r₀₁)` acts on each nonzero block's hyperbolic
/// plane by `(wᵦ/2)·diag(i, −i)`, with winding numbers `w = (w₊, w₋)`.
pub fn winding_2d(sl: &SusySuperLie, plus: i64, minus: i64) -> Result<TwistingHom, SuperLieError> {
    let AuxCount::Pair(a, b) = sl.susy().aux().count else {
        return Err(SuperLieError::Unsupported("winding homomorphisms need 2d N=(a,b)".into()));
    };
    if sl.susy().n() != 2 || ![a, b].iter().all(|&k| k == 0 || k == 2) || !sl.susy().aux().is_standard() {
        return Err(SuperLieError::Unsupported(format!(
            "winding homomorphisms need N=(2,2), (2,0) or (0,2), got {}",
            sl.susy().aux().count
        )));
    }
    let mats: Vec<ExactMatrix> = [(a, plus), (b, minus)]
        .into_iter()
        .map(|(k, w)| {
            if k == 0 {
                ExactMatrix::zeros(0, 0)
            } else {
                plane_generator().scale(&GaussianRational::from_fracs(w, 2, 0, 1))
            }
        })
        .collect();
    full_hom(sl, &format!("phi_({plus},{minus})"), |_, _| mats.clone())
}

/// 3d `𝒩 = 2`: the rotation `r₀₁` of a codimension-one plane mapped to `(d/2)·diag(i, −i)`.
pub fn degree_3d(sl: &SusySuperLie, d: i64) -> Result<TwistingHom, SuperLieError> {
    expect(sl, 3, AuxCount::Single(2))?;
    let x = plane_generator().scale(&GaussianRational::from_fracs(d, 2, 0, 1));
    TwistingHom::new(sl.algebra(), format!("so(2) degree {d}"), vec![sl.rotation(0, 1)?], vec![sl.r_element(&[x])?])
}

/// 3d `𝒩 = 3`: `so(3) → so(3)` identifying `V` with `W`. With `w₀ = e₀ + i e₁`,
/// `w₁ = (e₀ − i e₁)/2`, `w₂ = e₂` the hyperbolic form on `W` is the Euclidean one on `V`.
pub fn projection_3d(sl: &SusySuperLie) -> Result<TwistingHom, SuperLieError> {
    expect(sl, 3, AuxCount::Single(3))?;
    let half = GaussianRational::from_fracs(1, 2, 0, 1);
    let i = GaussianRational::i();
    let u = ExactMatrix::from_rows(vec![
        vec![GaussianRational::one(), half.clone(), GaussianRational::zero()],
        vec![i.clone(), -(&half * &i), GaussianRational::zero()],
        vec![GaussianRational::zero(), GaussianRational::zero(), GaussianRational::one()],
    ])
    .expect("3x3");
    let u_inv = u.inverse().expect("invertible");
    full_hom(sl, "projection", |a, b| vec![u_inv.mul(&vector_rep(3, a, b)).mul(&u)])
}

/// The isometry `S₁ ⊗ S₂ → W` (hyperbolic, dimension 4): `w₀ = e₀₀, w₁ = e₁₁, w₂ = e₀₁,
/// w₃ = −e₁₀`, columns in `S₁ ⊗ S₂` coordinates `2a + b`.
pub(crate) fn spinor_square_frame() -> ExactMatrix {
    let mut u = ExactMatrix::zeros(4, 4);
    for (k, (e, sgn)) in [(0usize, 1i64), (3, 1), (1, 1), (2, -1)].into_iter().enumerate() {
        u[(e, k)] = GaussianRational::int(sgn);
    }
    u
}

/// 3d `𝒩 = 4`: `su(2) → so(4) ≅ su(2) ⊕ su(2)` into the first (`i₁`) or second (`i₂`) factor.
pub fn inclusion_3d(sl: &SusySuperLie, first: bool) -> Result<TwistingHom, SuperLieError> {
    expect(sl, 3, AuxCount::Single(4))?;
    let model = clifford::model(3).map_err(clifford_err)?;
    let u = spinor_square_frame();
    let u_inv = u.inverse().expect("invertible");
    let id = ExactMatrix::identity(2);
    full_hom(sl, if first { "i1" } else { "i2" }, |a, b| {
        let rho = spinor_rep(model, Sector::Full, a, b);
        let x = if first { rho.kron(&id) } else { id.kron(&rho) };
        vec![u_inv.mul(&x).mul(&u)]
    })
}

fn chiral_dual(model: &clifford::CliffordModel, sector: Sector, a: usize, b: usize) -> ExactMatrix {
    spinor_rep(model, sector, a, b).transpose().scale(&-GaussianRational::one())
}

/// 4d `𝒩 = 2`: the projection onto the factor acting on `S₊` (`π₁`) or `S₋` (`π₂`).
pub fn projection_4d(sl: &SusySuperLie, first: bool) -> Result<TwistingHom, SuperLieError> {
    expect(sl, 4, AuxCount::Single(2))?;
    let model = clifford::model(4).map_err(clifford_err)?;
    let sector = if first { Sector::Plus } else { Sector::Minus };
    full_hom(sl, if first { "pi1" } else { "pi2" }, |a, b| r_mats(sl, chiral_dual(model, sector, a, b)))
}

fn four_d_n4(sl: &SusySuperLie, name: &str, parts: [Option<Sector>; 2]) -> Result<TwistingHom, SuperLieError> {
    expect(sl, 4, AuxCount::Single(4))?;
    let model = clifford::model(4).map_err(clifford_err)?;
    full_hom(sl, name, |a, b| {
        let blocks: Vec<ExactMatrix> =
            parts.iter().map(|p| p.map_or_else(|| ExactMatrix::zeros(2, 2), |s| chiral_dual(model, s, a, b))).collect();
        r_mats(sl, block_diag(&blocks))
    })
}

/// 4d `𝒩 = 4`, `(A, B) ↦ diag(A, B)`.
pub fn kapustin_witten(sl: &SusySuperLie) -> Result<TwistingHom, SuperLieError> {
    four_d_n4(sl, "kapustin_witten", [Some(Sector::Plus), Some(Sector::Minus)])
}

/// 4d `𝒩 = 4`, `(A, B) ↦ diag(A, A)`.
pub fn vafa_witten(sl: &SusySuperLie) -> Result<TwistingHom, SuperLieError> {
    four_d_n4(sl, "vafa_witten", [Some(Sector::Plus), Some(Sector::Plus)])
}

/// 4d `𝒩 = 4`, `(A, B) ↦ diag(A, 1, 1)`.
pub fn half_twist_4d(sl: &SusySuperLie) -> Result<TwistingHom, SuperLieError> {
    four_d_n4(sl, "half", [Some(Sector::Plus), None])
}

/// Basis `(v₀, f₀, v₁, f₁, …)` with `B(v_j, f_j) = 1` and all other pairings zero.
pub(crate) fn darboux(b: &ExactMatrix) -> Option<ExactMatrix> {
    let n = b.rows();
    let mut rest: Vec<Vector> = (0..n)
        .map(|i| {
            let mut e = vec![GaussianRational::zero(); n];
            e[i] = GaussianRational::one();
            e
        })
        .collect();
    let mut cols = Vec::new();
    while let Some(v) = rest.first().cloned() {
        let x = rest.iter().find(|x| !b.bilinear(&v, x).is_zero())?.clone();
        let f = crate::exactfield::scale_vec(&x, &b.bilinear(&v, &x).inv().ok()?);
        rest = rest
            .iter()
            .map(|x| {
                let t1 = crate::exactfield::scale_vec(&v, &b.bilinear(x, &f));
                let t2 = crate::exactfield::scale_vec(&f, &b.bilinear(x, &v));
                crate::exactfield::add_vec(&crate::exactfield::sub_vec(x, &t1), &t2)
            })
            .filter(|x| !crate::exactfield::is_zero_vec(x))
            .collect();
        cols.push(v);
        cols.push(f);
    }
    (cols.len() == n).then(|| ExactMatrix::from_columns(n, &cols))
}

/// 5d `𝒩 = 2`: `so(5) ≅ sp(4)` acting on `W` through a symplectic isometry `S → W`.
pub fn maximal_compact_5d(sl: &SusySuperLie) -> Result<TwistingHom, SuperLieError> {
    expect(sl, 5, AuxCount::Single(2))?;
    let model = clifford::model(5).map_err(clifford_err)?;
    let d = model.sector_dim(Sector::Full);
    let rhos: Vec<ExactMatrix> = planes(5).into_iter().map(|(a, b)| spinor_rep(model, Sector::Full, a, b)).collect();
    // invariant antisymmetric B: ρᵀB + Bρ = 0, B + Bᵀ = 0
    let mut sys = SparseSystem::new(d * d);
    for rho in &rhos {
        for a in 0..d {
            for c in 0..d {
                let mut row = Vec::new();
                for k in 0..d {
                    row.push((k * d + c, rho[(k, a)].clone()));
                    row.push((a * d + k, rho[(k, c)].clone()));
                }
                sys.push(row);
            }
        }
    }
    for a in 0..d {
        for c in a..d {
            sys.push([(a * d + c, GaussianRational::one()), (c * d + a, GaussianRational::one())]);
        }
    }
    let kernel = sys.kernel();
    let b = kernel
        .first()
        .map(|v| ExactMatrix::from_entries(d, d, v.clone()).expect("d*d"))
        .ok_or_else(|| SuperLieError::Unsupported("no invariant symplectic form on S".into()))?;
    let u = darboux(&b).ok_or_else(|| SuperLieError::Unsupported("invariant form is degenerate".into()))?;
    let u_inv = u.inverse().expect("basis");
    full_hom(sl, "maximal_compact", |a, c| vec![u_inv.mul(&spinor_rep(model, Sector::Full, a, c)).mul(&u)])
}

/// The full-`so(n)` twisting homomorphisms encoded for this algebra.
pub fn standard_full_homs(sl: &SusySuperLie) -> Result<Vec<TwistingHom>, SuperLieError> {
    let susy = sl.susy();
    if !susy.aux().is_standard() {
        return Ok(Vec::new());
    }
    let kind = susy.aux().kind;
    Ok(match (susy.n(), susy.aux().count, kind) {
        (3, AuxCount::Single(3), AuxKind::Symmetric) => vec![projection_3d(sl)?],
        (3, AuxCount::Single(4), AuxKind::Symmetric) => vec![inclusion_3d(sl, true)?, inclusion_3d(sl, false)?],
        (4, AuxCount::Single(2), _) => vec![projection_4d(sl, true)?, projection_4d(sl, false)?],
        (4, AuxCount::Single(4), _) => vec![kapustin_witten(sl)?, vafa_witten(sl)?, half_twist_4d(sl)?],
        (5, AuxCount::Single(2), _) => vec![maximal_compact_5d(sl)?],
        _ => Vec::new(),
    })
}
