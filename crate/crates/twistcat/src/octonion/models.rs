use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{cross7, gamma10, ComplexOctonion};
use crate::clifford::{self, Monomial, Sector, Spinor};
use crate::exactfield::{is_zero_vec, ExactMatrix, GaussianRational, SparseSystem, Vector};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OctonionError {
    #[error("octonionic models exist for dimensions 7..=10, not {0}")]
    DimensionOutOfRange(usize),
    #[error("no exact intertwiner over ℚ(i) in dimension {0}")]
    NoIntertwiner(usize),
}

/// Spinor data in an octonionic model: two complexified octonions.
///
/// * n = 7: `Q = s₁⊗w₁ + s₂⊗w₂ ∈ S⊗W` with `ω(w₁, w₂) = 1`;
/// * n = 8: `(Q₊, Q₋) ∈ S₊ ⊕ S₋`;
/// * n = 9, 10: `(Q, Q′) ∈ (𝕆⊗ℂ)²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OctonionicSpinor {
    pub dim: usize,
    pub parts: [ComplexOctonion; 2],
}

impl OctonionicSpinor {
    pub fn new(dim: usize, a: ComplexOctonion, b: ComplexOctonion) -> Self {
        OctonionicSpinor { dim, parts: [a, b] }
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(ComplexOctonion::is_zero)
    }

    pub fn to_vec(&self) -> Vector {
        let mut v = self.parts[0].to_vec();
        v.extend(self.parts[1].to_vec());
        v
    }

    pub fn from_vec(dim: usize, v: &[GaussianRational]) -> Self {
        OctonionicSpinor::new(dim, ComplexOctonion::from_slice(&v[..8]), ComplexOctonion::from_slice(&v[8..16]))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OctonionicInvariants {
    pub square_zero: bool,
    pub image_dim: usize,
    pub pure: bool,
}

/// The pairing `[Q, σ]` in the octonionic model, as a vector in V.
fn bracket(n: usize, q: &OctonionicSpinor, s: &OctonionicSpinor) -> Vector {
    let [a, b] = &q.parts;
    let [c, d] = &s.parts;
    match n {
        7 => {
            let v = &cross7(a, d) - &cross7(b, c);
            v.to_vec()[1..].to_vec()
        }
        8 => (&a.mul(d) + &c.mul(b)).to_vec(),
        9 => gamma10((a, b), (c, d))[..9].to_vec(),
        _ => gamma10((a, b), (c, d)),
    }
}

/// `Γ₁₀` with the octonionic component `Q₁·Q₂′ + Q₁′·Q₂` read literally.
///
/// Off the diagonal this is not symmetric, and its diagonal is `QQ′ + Q′Q`
/// rather than `2QQ′`; [`super::gamma10`] is the symmetric pairing used everywhere else.
pub fn gamma10_as_printed(p: (&ComplexOctonion, &ComplexOctonion), q: (&ComplexOctonion, &ComplexOctonion)) -> Vector {
    let (q1, q1p) = p;
    let (q2, q2p) = q;
    let o = &q1.mul(q2p) + &q1p.mul(q2);
    let t = q1.mul(&q2.conj()).trace();
    let tp = q1p.mul(&q2p.conj()).trace();
    let mut v = o.to_vec();
    v.push(&t - &tp);
    v.push(&t + &tp);
    v
}

/// Square-zero flag, bracket-image dimension and purity computed in the octonionic model.
pub fn octonionic_invariants(n: usize, q: &OctonionicSpinor) -> Result<OctonionicInvariants, OctonionError> {
    if !(7..=10).contains(&n) {
        return Err(OctonionError::DimensionOutOfRange(n));
    }
    let [a, b] = &q.parts;
    let square_zero = match n {
        7 => cross7(a, b).is_zero(),
        8 => a.mul(b).is_zero(),
        9 => a.mul(b).is_zero() && a.norm() == b.norm(),
        _ => a.mul(b).is_zero() && a.norm().is_zero() && b.norm().is_zero(),
    };
    let basis: Vec<Vector> = (0..16)
        .map(|k| {
            let mut e = vec![GaussianRational::zero(); 16];
            e[k] = GaussianRational::one();
            bracket(n, q, &OctonionicSpinor::from_vec(n, &e))
        })
        .collect();
    let vdim = basis[0].len();
    let image_dim = ExactMatrix::from_columns(vdim, &basis).rank();
    let pure = !q.is_zero()
        && match n {
            7 => a.norm().is_zero() && b.norm().is_zero() && a.inner(b).is_zero(),
            8 => a.norm().is_zero() && b.norm().is_zero(),
            _ => is_zero_vec(&gamma10((a, b), (a, b))),
        };
    Ok(OctonionicInvariants { square_zero, image_dim, pure })
}

fn monomials_from_columns(d: usize, columns: impl Fn(usize) -> Vector) -> Monomial {
    let cols: Vec<Vector> = (0..d).map(columns).collect();
    Monomial::from_matrix(&ExactMatrix::from_columns(d, &cols)).expect("octonionic gammas are monomial")
}

/// Gamma matrices of Cl(10) on `S₊ ⊕ S₋ = (𝕆⊗ℂ)² ⊕ (𝕆⊗ℂ)²` in orthonormal coordinates
/// `y = (o₀…o₇, x₉/2, i·x₁₀/2)` of V, where `(o, x₉, x₁₀)` are the components of [`gamma10`].
pub fn octonionic_gammas10() -> Vec<Monomial> {
    let e = |k: usize| -> OctonionicSpinor {
        let mut v = vec![GaussianRational::zero(); 16];
        v[k] = GaussianRational::one();
        OctonionicSpinor::from_vec(10, &v)
    };
    let half = GaussianRational::from_fracs(1, 2, 0, 1);
    let half_i = GaussianRational::from_fracs(0, 1, 1, 2);
    let g = |mu: usize, a: usize, b: usize| -> GaussianRational {
        let (pa, pb) = (e(a), e(b));
        let v = gamma10((&pa.parts[0], &pa.parts[1]), (&pb.parts[0], &pb.parts[1]));
        match mu {
            8 => &v[8] * &half,
            9 => &v[9] * &half_i,
            _ => v[mu].clone(),
        }
    };
    (0..10)
        .map(|mu| {
            let sign = if mu == 9 { -GaussianRational::one() } else { GaussianRational::one() };
            monomials_from_columns(32, |c| {
                let mut col = vec![GaussianRational::zero(); 32];
                if c < 16 {
                    for b in 0..16 {
                        col[16 + b] = g(mu, b, c);
                    }
                } else {
                    for a in 0..16 {
                        col[a] = &sign * &g(mu, a, c - 16);
                    }
                }
                col
            })
        })
        .collect()
}

/// Gamma matrices of Cl(7) on `S = 𝕆⊗ℂ`: `γₖ = ε·i·L_{e_{k+1}}`.
fn octonionic_gammas7(eps: i64) -> Vec<Monomial> {
    let c = GaussianRational::from_ints(0, eps);
    (1..8)
        .map(|k| {
            let ek = ComplexOctonion::unit(k);
            monomials_from_columns(8, |j| ek.mul(&ComplexOctonion::unit(j)).scale(&c).to_vec())
        })
        .collect()
}

/// Solve `Φ·fromᵢ = toᵢ·Φ` for all `i`; `None` when only `Φ = 0` solves it.
pub fn monomial_intertwiner(from: &[Monomial], to: &[Monomial]) -> Option<ExactMatrix> {
    let d = from[0].dim();
    let mut sys = SparseSystem::new(d * d);
    for (f, t) in from.iter().zip(to) {
        let mut inv = vec![0; d];
        for k in 0..d {
            inv[t.target(k)] = k;
        }
        for r in 0..d {
            for c in 0..d {
                // (Φ·f)_{rc} = Φ[r, f(c)]·f_c ; (t·Φ)_{rc} = t_{k}·Φ[k, c] with t(k) = r.
                let k = inv[r];
                sys.push([(r * d + f.target(c), f.coef(c).clone()), (k * d + c, -t.coef(k))]);
            }
        }
    }
    let v = sys.kernel().into_iter().next()?;
    let v = crate::exactfield::normalize_first(&v);
    let phi = ExactMatrix::from_entries(d, d, v).expect("square");
    phi.inverse().map(|_| phi)
}

struct Intertwiners {
    phi10: Option<ExactMatrix>,
    phi7: Option<ExactMatrix>,
}

fn intertwiners() -> &'static Intertwiners {
    static I: OnceLock<Intertwiners> = OnceLock::new();
    I.get_or_init(|| {
        let m10 = clifford::model(10).expect("n = 10");
        let phi10 = monomial_intertwiner(&octonionic_gammas10(), m10.gamma_monomials());
        let m7 = clifford::model(7).expect("n = 7");
        let phi7 =
            [1, -1].into_iter().find_map(|eps| monomial_intertwiner(&octonionic_gammas7(eps), m7.gamma_monomials()));
        Intertwiners { phi10, phi7 }
    })
}

/// The exact intertwiner from the octonionic module to the Clifford module (n = 7 or 10).
pub fn intertwiner(n: usize) -> Result<&'static ExactMatrix, OctonionError> {
    let i = intertwiners();
    match n {
        7 => i.phi7.as_ref().ok_or(OctonionError::NoIntertwiner(7)),
        8..=10 => i.phi10.as_ref().ok_or(OctonionError::NoIntertwiner(n)),
        _ => Err(OctonionError::DimensionOutOfRange(n)),
    }
}

/// Octonionic spinor data carried into the Clifford module of the same dimension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transported {
    /// n = 7: `[s₁, s₂]`; n = 8: `[Q₊-part, Q₋-part]` as Weyl spinors; n = 9, 10: `[Q]`.
    pub spinors: Vec<Spinor>,
}

/// Transport through the exact intertwiner. Dimensions 8 and 9 go through the
/// dimension-10 intertwiner followed by the coefficient-identity restrictions.
pub fn clifford_transport(q: &OctonionicSpinor) -> Result<Transported, OctonionError> {
    let n = q.dim;
    let phi = intertwiner(n)?;
    if n == 7 {
        let spinors = q.parts.iter().map(|p| Spinor::new(7, Sector::Full, phi.mul_vec(&p.to_vec()))).collect();
        return Ok(Transported { spinors });
    }
    let m10 = clifford::model(10).expect("n = 10");
    let mut v = q.to_vec();
    v.extend(vec![GaussianRational::zero(); 16]);
    let full = phi.mul_vec(&v);
    let sector = if m10.in_sector(&full, Sector::Plus) { Sector::Plus } else { Sector::Minus };
    let s10 = m10.project(&full, sector);
    let spinors = match n {
        10 => vec![s10],
        9 => vec![clifford::restrict_spinor(&s10)],
        _ => {
            let s9 = clifford::restrict_spinor(&s10);
            let m8 = clifford::model(8).expect("n = 8");
            let plus = m8.project(&s9.coeffs, Sector::Plus);
            let minus = m8.project(&s9.coeffs, Sector::Minus);
            vec![plus, minus]
        }
    };
    Ok(Transported { spinors })
}

/// Chirality sector of the Clifford module that receives the octonionic `S₊` in dimension 10.
pub fn image_sector10() -> Result<Sector, OctonionError> {
    let phi = intertwiner(10)?;
    let m10 = clifford::model(10).expect("n = 10");
    let mut e = vec![GaussianRational::zero(); 32];
    e[0] = GaussianRational::one();
    let v = phi.mul_vec(&e);
    Ok(if m10.in_sector(&v, Sector::Plus) { Sector::Plus } else { Sector::Minus })
}

fn transport_matrix(n: usize) -> Result<ExactMatrix, OctonionError> {
    let cols = (0..16)
        .map(|k| {
            let mut e = vec![GaussianRational::zero(); 16];
            e[k] = GaussianRational::one();
            let t = clifford_transport(&OctonionicSpinor::from_vec(n, &e))?;
            Ok(t.spinors.iter().flat_map(|s| s.coeffs.iter().cloned()).collect::<Vector>())
        })
        .collect::<Result<Vec<Vector>, OctonionError>>()?;
    Ok(ExactMatrix::from_columns(16, &cols))
}

/// Inverse of [`clifford_transport`]: octonionic data from the concatenated Clifford
/// coefficients (`[s₁, s₂]`, `[Q₊, Q₋]` or `[Q]`, in the layout of [`Transported`]).
pub fn octonionic_coordinates(
    n: usize,
    clifford_coeffs: &[GaussianRational],
) -> Result<OctonionicSpinor, OctonionError> {
    static INV: [OnceLock<Option<ExactMatrix>>; 4] = [const { OnceLock::new() }; 4];
    if !(7..=10).contains(&n) {
        return Err(OctonionError::DimensionOutOfRange(n));
    }
    let inv = INV[n - 7].get_or_init(|| transport_matrix(n).ok().and_then(|m| m.inverse()));
    let inv = inv.as_ref().ok_or(OctonionError::NoIntertwiner(n))?;
    Ok(OctonionicSpinor::from_vec(n, &inv.mul_vec(clifford_coeffs)))
}
