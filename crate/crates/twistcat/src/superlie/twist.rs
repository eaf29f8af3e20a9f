//! Twisting homomorphisms, compatibility with a supercharge, and twisting data.

use std::collections::BTreeMap;

use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::basis::Basis;
use super::susy_lie::SusySuperLie;
use super::{sector, Parity, SuperLieAlgebra, SuperLieError};
use crate::exactfield::{add_vec, is_zero_vec, scale_vec, ExactMatrix, GaussianRational, SparseSystem, Vector};
use crate::sampling;
use crate::susy::{classify, TwistLabel};

/// A Lie algebra homomorphism from a subalgebra of the rotations into the R-symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistingHom {
    /// Descriptor of the source subalgebra, e.g. `"so(4)"` or `"u(1)"`.
    pub source: String,
    /// Basis of the source inside the ambient algebra.
    pub domain: Vec<Vector>,
    /// Images of the domain basis, in the R-symmetry sector.
    pub images: Vec<Vector>,
}

impl TwistingHom {
    /// Validates lengths, that the images lie in the R-symmetry, and the homomorphism property.
    pub fn new(
        l: &SuperLieAlgebra,
        source: impl Into<String>,
        domain: Vec<Vector>,
        images: Vec<Vector>,
    ) -> Result<TwistingHom, SuperLieError> {
        if domain.len() != images.len() {
            return Err(SuperLieError::WrongLength { expected: domain.len(), found: images.len() });
        }
        for v in domain.iter().chain(&images) {
            if v.len() != l.dim() {
                return Err(SuperLieError::WrongLength { expected: l.dim(), found: v.len() });
            }
        }
        let hom = TwistingHom { source: source.into(), domain, images };
        hom.check_homomorphism(l)?;
        Ok(hom)
    }

    /// A homomorphism defined on the whole rotation sector.
    pub fn full(
        l: &SuperLieAlgebra,
        source: impl Into<String>,
        images: Vec<Vector>,
    ) -> Result<TwistingHom, SuperLieError> {
        TwistingHom::new(l, source, l.sector(sector::ROTATIONS)?.to_vec(), images)
    }

    /// `φ = 0` on the whole rotation sector.
    pub fn zero(l: &SuperLieAlgebra) -> Result<TwistingHom, SuperLieError> {
        let n = l.sector(sector::ROTATIONS)?.len();
        TwistingHom::full(l, "zero", vec![l.zero(); n])
    }

    /// Exact check that the domain closes and `φ([a, b]) = [φ(a), φ(b)]` on domain pairs.
    pub fn check_homomorphism(&self, l: &SuperLieAlgebra) -> Result<(), SuperLieError> {
        let basis = Basis::new(self.domain.clone())
            .ok_or_else(|| SuperLieError::NotHomomorphism("domain vectors are dependent".into()))?;
        if l.has_sector(sector::R_SYMMETRY) {
            let r = Basis::new(l.sector(sector::R_SYMMETRY)?.to_vec())
                .ok_or_else(|| SuperLieError::NotHomomorphism("R-symmetry sector is dependent".into()))?;
            if let Some(k) = self.images.iter().position(|x| r.coords(x).is_none()) {
                return Err(SuperLieError::NotHomomorphism(format!(
                    "image of {} is outside the R-symmetry",
                    l.describe(&self.domain[k])
                )));
            }
        }
        for a in 0..self.domain.len() {
            for b in a + 1..self.domain.len() {
                let c = basis
                    .coords(&l.bracket(&self.domain[a], &self.domain[b]))
                    .ok_or_else(|| SuperLieError::NotHomomorphism(format!("{} is not a subalgebra", self.source)))?;
                let lhs = combine(l.dim(), &c, &self.images);
                if lhs != l.bracket(&self.images[a], &self.images[b]) {
                    return Err(SuperLieError::NotHomomorphism(format!(
                        "bracket of {} and {} is not preserved",
                        l.describe(&self.domain[a]),
                        l.describe(&self.domain[b])
                    )));
                }
            }
        }
        Ok(())
    }

    /// `φ(x)` for `x` in the span of the domain.
    pub fn apply(&self, x: &[GaussianRational]) -> Option<Vector> {
        let c = Basis::new(self.domain.clone())?.coords(x)?;
        Some(combine(x.len(), &c, &self.images))
    }

    /// The twisted generators `r + φ(r)` for the domain basis.
    pub fn twisted(&self) -> Vec<Vector> {
        self.domain.iter().zip(&self.images).map(|(r, p)| add_vec(r, p)).collect()
    }

    /// Whether the domain is the whole rotation sector.
    pub fn is_full(&self, l: &SuperLieAlgebra) -> bool {
        l.sector(sector::ROTATIONS).is_ok_and(|rot| {
            rot.len() == self.domain.len()
                && Basis::new(self.domain.clone()).is_some_and(|b| rot.iter().all(|r| b.coords(r).is_some()))
        })
    }

    pub fn to_named(&self, l: &SuperLieAlgebra) -> NamedHom {
        NamedHom {
            source: self.source.clone(),
            map: self.domain.iter().zip(&self.images).map(|(d, x)| (named(l, d), named(l, x))).collect(),
        }
    }

    pub fn from_named(l: &SuperLieAlgebra, h: &NamedHom) -> Result<TwistingHom, SuperLieError> {
        let mut domain = Vec::new();
        let mut images = Vec::new();
        for (d, x) in &h.map {
            domain.push(unnamed(l, d)?);
            images.push(unnamed(l, x)?);
        }
        TwistingHom::new(l, h.source.clone(), domain, images)
    }
}

/// An element as a map from generator names to coefficients.
pub type NamedElement = BTreeMap<String, GaussianRational>;

/// JSON form of a [`TwistingHom`] with generator names.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedHom {
    pub source: String,
    pub map: Vec<(NamedElement, NamedElement)>,
}

fn named(l: &SuperLieAlgebra, x: &[GaussianRational]) -> NamedElement {
    x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (l.name(k).to_string(), c.clone())).collect()
}

fn unnamed(l: &SuperLieAlgebra, x: &NamedElement) -> Result<Vector, SuperLieError> {
    let terms: Vec<(&str, GaussianRational)> = x.iter().map(|(k, c)| (k.as_str(), c.clone())).collect();
    l.element(&terms)
}

fn combine(len: usize, c: &[GaussianRational], vs: &[Vector]) -> Vector {
    let mut out = vec![GaussianRational::zero(); len];
    for (x, v) in c.iter().zip(vs) {
        if !x.is_zero() {
            out = add_vec(&out, &scale_vec(v, x));
        }
    }
    out
}

/// `[r + φ(r), Q] = 0` for every domain generator `r`.
pub fn twist_compat(l: &SuperLieAlgebra, q: &[GaussianRational], phi: &TwistingHom) -> bool {
    phi.twisted().iter().all(|t| is_zero_vec(&l.bracket(t, q)))
}

/// Basis of the elements of `span(within)` compatible with `φ`.
pub fn compatible_subspace(
    l: &SuperLieAlgebra,
    phi: &TwistingHom,
    within: &[Vector],
) -> Result<Vec<Vector>, SuperLieError> {
    let mut sys = SparseSystem::new(within.len());
    for t in phi.twisted() {
        let images: Vec<Vector> = within.iter().map(|w| l.bracket(&t, w)).collect();
        for k in 0..l.dim() {
            sys.push(images.iter().enumerate().map(|(i, v)| (i, v[k].clone())));
        }
    }
    Ok(sys.kernel().iter().map(|c| combine(l.dim(), c, within)).collect())
}

/// A `u(1)` direction in the R-symmetry under which the supercharge has weight one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistingDatum {
    pub alpha: Vector,
}

impl TwistingDatum {
    pub fn to_named(&self, l: &SuperLieAlgebra) -> NamedElement {
        named(l, &self.alpha)
    }

    pub fn from_named(l: &SuperLieAlgebra, x: &NamedElement) -> Result<TwistingDatum, SuperLieError> {
        Ok(TwistingDatum { alpha: unnamed(l, x)? })
    }
}

/// `[α, Q] = Q`.
pub fn weight_check(l: &SuperLieAlgebra, q: &[GaussianRational], datum: &TwistingDatum) -> bool {
    l.bracket(&datum.alpha, q) == q
}

/// Upper bound on the modulus of any eigenvalue, by Gershgorin discs.
fn eigenvalue_bound(a: &ExactMatrix) -> i64 {
    (0..a.rows())
        .map(|i| {
            let row: num_rational::BigRational = a
                .row(i)
                .iter()
                .map(|x| x.re().abs() + x.im().abs())
                .fold(num_rational::BigRational::from_integer(0.into()), |s, x| s + x);
            row.ceil().to_integer().to_i64().unwrap_or(i64::MAX)
        })
        .max()
        .unwrap_or(0)
}

/// Whether `ad α` acts on the odd part semisimply with integer eigenvalues.
pub fn is_integral_grading(l: &SuperLieAlgebra, alpha: &[GaussianRational]) -> bool {
    if matches!(l.parity_of(alpha), Some(Parity::Odd)) || l.parity_of(alpha).is_none() && !is_zero_vec(alpha) {
        return false;
    }
    let odd = l.indices(Parity::Odd);
    let ad = l.ad_matrix(alpha).select(&odd, &odd);
    let bound = eigenvalue_bound(&ad);
    if bound > 64 {
        return false;
    }
    let total: usize = (-bound..=bound)
        .map(|lambda| {
            let shifted = ad.sub(&ExactMatrix::identity(odd.len()).scale(&GaussianRational::int(lambda)));
            odd.len() - shifted.rank()
        })
        .sum();
    total == odd.len()
}

/// The affine space `{α ∈ span(within) : [α, Q] = Q, [α, φ(r)] = 0}` as a particular
/// solution and a basis of directions, or `None` when it is empty.
fn datum_solutions(
    l: &SuperLieAlgebra,
    q: &[GaussianRational],
    within: &[Vector],
    commuting_with: Option<&TwistingHom>,
) -> Option<(Vector, Vec<Vector>)> {
    let m = within.len();
    let mut sys = SparseSystem::new(m + 1);
    let images: Vec<Vector> = within.iter().map(|w| l.bracket(w, q)).collect();
    for k in 0..l.dim() {
        let mut row: Vec<(usize, GaussianRational)> =
            images.iter().enumerate().map(|(i, v)| (i, v[k].clone())).collect();
        row.push((m, -q[k].clone()));
        sys.push(row);
    }
    if let Some(phi) = commuting_with {
        for p in &phi.images {
            let images: Vec<Vector> = within.iter().map(|w| l.bracket(w, p)).collect();
            for k in 0..l.dim() {
                sys.push(images.iter().enumerate().map(|(i, v)| (i, v[k].clone())));
            }
        }
    }
    let (particular, directions) = split_affine(sys.kernel(), m)?;
    Some((combine(l.dim(), &particular, within), directions.iter().map(|d| combine(l.dim(), d, within)).collect()))
}

/// Splits the kernel of a system with a trailing homogenizing column into a particular
/// solution (that column set to one) and the homogeneous directions.
pub(crate) fn split_affine(kernel: Vec<Vector>, t: usize) -> Option<(Vector, Vec<Vector>)> {
    let pos = kernel.iter().position(|v| !v[t].is_zero())?;
    let scale = kernel[pos][t].inv().expect("nonzero");
    let p = scale_vec(&kernel[pos], &scale);
    let dirs = kernel
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pos)
        .map(|(_, v)| {
            let d = crate::exactfield::sub_vec(v, &scale_vec(&p, &v[t]));
            d[..t].to_vec()
        })
        .collect();
    Some((p[..t].to_vec(), dirs))
}

/// Candidate points `p + Σ cᵢ dᵢ` with at most two nonzero `cᵢ ∈ [−bound, bound]`.
pub(crate) fn bounded_candidates(p: &[GaussianRational], dirs: &[Vector], bound: i64) -> Vec<Vector> {
    let coeffs: Vec<i64> = (-bound..=bound).filter(|c| *c != 0).collect();
    let mut out = vec![p.to_vec()];
    for (i, di) in dirs.iter().enumerate() {
        for &a in &coeffs {
            let pi = add_vec(p, &scale_vec(di, &GaussianRational::int(a)));
            out.push(pi.clone());
            for dj in &dirs[i + 1..] {
                for &b in &coeffs {
                    out.push(add_vec(&pi, &scale_vec(dj, &GaussianRational::int(b))));
                }
            }
        }
    }
    out
}

/// Search for a twisting datum `α ∈ span(within)` for `Q`, optionally commuting with the image
/// of `φ`. Nonexistence of any `α` with `[α, Q] = Q` is decided exactly by a linear solve;
/// integrality of the grading is then checked on the `hints` and a bounded search over the
/// affine solution space.
pub fn find_twisting_datum(
    l: &SuperLieAlgebra,
    q: &[GaussianRational],
    within: &[Vector],
    commuting_with: Option<&TwistingHom>,
    hints: &[Vector],
) -> Option<TwistingDatum> {
    let (p, dirs) = datum_solutions(l, q, within, commuting_with)?;
    let span = Basis::new(crate::exactfield::span_basis(l.dim(), within));
    let admissible = |a: &Vector| {
        span.as_ref().is_some_and(|s| s.coords(a).is_some())
            && l.bracket(a, q) == q
            && commuting_with.is_none_or(|phi| phi.images.iter().all(|x| is_zero_vec(&l.bracket(a, x))))
            && is_integral_grading(l, a)
    };
    hints
        .iter()
        .find(|h| admissible(h))
        .cloned()
        .or_else(|| bounded_candidates(&p, &dirs, 2).into_iter().find(|a| admissible(a)))
        .map(|alpha| TwistingDatum { alpha })
}

/// Whether some `α ∈ span(within)` satisfies the linear condition `[α, Q] = Q`.
pub fn weight_one_solvable(l: &SuperLieAlgebra, q: &[GaussianRational], within: &[Vector]) -> bool {
    datum_solutions(l, q, within, None).is_some()
}

/// Outcome of classifying the square-zero elements of a compatible subspace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompatReport {
    pub n: usize,
    pub hom: String,
    pub compatible_dim: usize,
    pub square_zero_checked: usize,
    /// Counts keyed by `"rank label"`.
    pub classes: BTreeMap<String, usize>,
    pub non_topological: usize,
}

impl CompatReport {
    pub fn all_topological(&self) -> bool {
        self.square_zero_checked > 0 && self.non_topological == 0
    }
}

/// Classify square-zero elements of the `φ`-compatible part of Σ: the basis, pairwise sums and
/// differences, and `samples` random combinations.
pub fn compatible_report(
    sl: &SusySuperLie,
    phi: &TwistingHom,
    samples: usize,
    seed: u64,
) -> Result<CompatReport, SuperLieError> {
    let l = sl.algebra();
    let basis = compatible_subspace(l, phi, l.sector(sector::ODD)?)?;
    let mut candidates: Vec<Vector> = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            candidates.push(add_vec(&basis[i], &basis[j]));
            candidates.push(crate::exactfield::sub_vec(&basis[i], &basis[j]));
        }
    }
    let mut rng = sampling::rng(seed);
    if !basis.is_empty() {
        for _ in 0..samples {
            let c = sampling::random_nonzero_vector(&mut rng, basis.len(), 3);
            candidates.push(combine(l.dim(), &c, &basis));
        }
    }
    let mut report = CompatReport {
        n: sl.susy().n(),
        hom: phi.source.clone(),
        compatible_dim: basis.len(),
        square_zero_checked: 0,
        classes: BTreeMap::new(),
        non_topological: 0,
    };
    for x in candidates.iter().filter(|x| !is_zero_vec(x)) {
        if !is_zero_vec(&l.bracket(x, x)) {
            continue;
        }
        let class = classify(&sl.supercharge_of(x)?)?;
        report.square_zero_checked += 1;
        if class.label != TwistLabel::Topological {
            report.non_topological += 1;
        }
        *report.classes.entry(format!("{} {}", class.rank, class.label)).or_default() += 1;
    }
    Ok(report)
}

/// Every sampled square-zero supercharge compatible with a full-`so(n)` twisting
/// homomorphism is topological. Requires `n ≥ 3`.
pub fn compatible_implies_topological_check(
    sl: &SusySuperLie,
    phi: &TwistingHom,
    samples: usize,
    seed: u64,
) -> Result<CompatReport, SuperLieError> {
    if sl.susy().n() < 3 {
        return Err(SuperLieError::Unsupported("the check needs n ≥ 3".into()));
    }
    if !phi.is_full(sl.algebra()) {
        return Err(SuperLieError::Unsupported(format!("{} is not defined on all of so(n)", phi.source)));
    }
    compatible_report(sl, phi, samples, seed)
}
