//! Complexified octonions and the octonionic spinor models in dimensions 7–10.
//!
//! Multiplication uses the Fano plane with oriented lines
//! `(1,2,4) (2,3,5) (3,4,6) (4,5,7) (5,6,1) (6,7,2) (7,1,3)`:
//! `eₐ·e_b = e_c` along each line, `e_b·eₐ = −e_c`, `eₐ² = −1`.

mod models;

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::exactfield::{GaussianRational, Vector};

pub use models::{
    clifford_transport, gamma10_as_printed, image_sector10, intertwiner, monomial_intertwiner, octonionic_coordinates,
    octonionic_gammas10, octonionic_invariants, OctonionError, OctonionicInvariants, OctonionicSpinor, Transported,
};

pub const FANO_LINES: [(usize, usize, usize); 7] =
    [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)];

/// `e_a · e_b = sign · e_c`.
fn table() -> &'static [[(i8, usize); 8]; 8] {
    static T: OnceLock<[[(i8, usize); 8]; 8]> = OnceLock::new();
    T.get_or_init(|| {
        let mut t = [[(0i8, 0usize); 8]; 8];
        for (i, row) in t.iter_mut().enumerate() {
            row[0] = (1, i);
        }
        for j in 0..8 {
            t[0][j] = (1, j);
        }
        for i in 1..8 {
            t[i][i] = (-1, 0);
        }
        for &(a, b, c) in &FANO_LINES {
            for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                t[x][y] = (1, z);
                t[y][x] = (-1, z);
            }
        }
        t
    })
}

/// An element of 𝕆 ⊗ ℂ with coefficients in ℚ(i) over `1, e₁, …, e₇`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ComplexOctonion {
    coeffs: [GaussianRational; 8],
}

impl Default for ComplexOctonion {
    fn default() -> Self {
        ComplexOctonion::zero()
    }
}

impl ComplexOctonion {
    pub fn new(coeffs: [GaussianRational; 8]) -> Self {
        ComplexOctonion { coeffs }
    }

    pub fn from_slice(v: &[GaussianRational]) -> Self {
        assert_eq!(v.len(), 8, "octonions have 8 coefficients");
        ComplexOctonion { coeffs: std::array::from_fn(|k| v[k].clone()) }
    }

    pub fn zero() -> Self {
        ComplexOctonion { coeffs: std::array::from_fn(|_| GaussianRational::zero()) }
    }

    pub fn one() -> Self {
        Self::unit(0)
    }

    /// Basis element `e_k` (`e₀ = 1`).
    pub fn unit(k: usize) -> Self {
        let mut o = Self::zero();
        o.coeffs[k] = GaussianRational::one();
        o
    }

    pub fn coeffs(&self) -> &[GaussianRational; 8] {
        &self.coeffs
    }

    pub fn to_vec(&self) -> Vector {
        self.coeffs.to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(GaussianRational::is_zero)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        ComplexOctonion { coeffs: std::array::from_fn(|k| &self.coeffs[k] * c) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let t = table();
        let mut out = Self::zero();
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (s, k) = t[i][j];
                let p = a * b;
                if s > 0 {
                    out.coeffs[k] += &p;
                } else {
                    out.coeffs[k] -= &p;
                }
            }
        }
        out
    }

    /// Octonionic conjugate: negate the imaginary units (complex-linear).
    pub fn conj(&self) -> Self {
        ComplexOctonion {
            coeffs: std::array::from_fn(|k| if k == 0 { self.coeffs[0].clone() } else { -&self.coeffs[k] }),
        }
    }

    /// `N(a) = a·ā`, the complex-bilinear norm `Σ aₖ²`.
    pub fn norm(&self) -> GaussianRational {
        self.inner(self)
    }

    /// `tr(a) = a + ā = 2a₀`.
    pub fn trace(&self) -> GaussianRational {
        &self.coeffs[0] + &self.coeffs[0]
    }

    /// Polarised norm `⟨a, b⟩ = ½ tr(a·b̄) = Σ aₖbₖ`.
    pub fn inner(&self, o: &Self) -> GaussianRational {
        crate::exactfield::dot(&self.coeffs, &o.coeffs)
    }

    pub fn real_part(&self) -> GaussianRational {
        self.coeffs[0].clone()
    }

    pub fn imaginary_part(&self) -> Self {
        let mut o = self.clone();
        o.coeffs[0] = GaussianRational::zero();
        o
    }
}

impl Add for &ComplexOctonion {
    type Output = ComplexOctonion;
    fn add(self, o: &ComplexOctonion) -> ComplexOctonion {
        ComplexOctonion { coeffs: std::array::from_fn(|k| &self.coeffs[k] + &o.coeffs[k]) }
    }
}

impl Sub for &ComplexOctonion {
    type Output = ComplexOctonion;
    fn sub(self, o: &ComplexOctonion) -> ComplexOctonion {
        ComplexOctonion { coeffs: std::array::from_fn(|k| &self.coeffs[k] - &o.coeffs[k]) }
    }
}

impl Mul for &ComplexOctonion {
    type Output = ComplexOctonion;
    fn mul(self, o: &ComplexOctonion) -> ComplexOctonion {
        ComplexOctonion::mul(self, o)
    }
}

impl Neg for &ComplexOctonion {
    type Output = ComplexOctonion;
    fn neg(self) -> ComplexOctonion {
        ComplexOctonion { coeffs: std::array::from_fn(|k| -&self.coeffs[k]) }
    }
}

/// The dimension-7 pairing ∧²(𝕆) → Im(𝕆): the imaginary part of `x·ȳ`.
///
/// On imaginary octonions this is minus the usual cross product `Im(x·y)`.
pub fn cross7(x: &ComplexOctonion, y: &ComplexOctonion) -> ComplexOctonion {
    x.mul(&y.conj()).imaginary_part()
}

/// The vector pairing Sym²(S₊) → V in dimension 10, for `S₊ = (𝕆⊗ℂ)²`.
///
/// Components: the octonion `Q₁·Q₂′ + Q₂·Q₁′`, then `tr(Q₁Q̄₂) − tr(Q₁′Q̄₂′)` and
/// `tr(Q₁Q̄₂) + tr(Q₁′Q̄₂′)`. On the diagonal this is `(2QQ′, 2N(Q) − 2N(Q′), 2N(Q) + 2N(Q′))`.
pub fn gamma10(p: (&ComplexOctonion, &ComplexOctonion), q: (&ComplexOctonion, &ComplexOctonion)) -> Vector {
    let (q1, q1p) = p;
    let (q2, q2p) = q;
    let o = &q1.mul(q2p) + &q2.mul(q1p);
    let t = q1.mul(&q2.conj()).trace();
    let tp = q1p.mul(&q2p.conj()).trace();
    let mut v = o.to_vec();
    v.push(&t - &tp);
    v.push(&t + &tp);
    v
}
