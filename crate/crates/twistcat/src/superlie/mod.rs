//! Finite-dimensional Lie superalgebras given by structure constants, twisting data on
//! top of them, and the concrete algebras the twisting constructions live in.
//!
//! Elements are coefficient vectors over the generators. The bracket of basis elements
//! is stored for both orders; graded antisymmetry `[x, y] = −(−1)^{|x||y|}[y, x]` is part
//! of what [`jacobi_check`] verifies.

mod basis;
mod homs;
mod osp;
mod potential;
mod susy_lie;
mod twist;

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exactfield::{ExactMatrix, GaussianRational, Vector};
use crate::susy::SusyError;

pub(crate) use basis::Basis;
pub(crate) use homs::darboux;
pub use homs::{
    degree_3d, half_twist_4d, inclusion_3d, kapustin_witten, maximal_compact_5d, projection_3d, projection_4d,
    standard_full_homs, vafa_witten, winding_2d,
};
pub use osp::{
    build_global_2d_superconformal, build_osp, even_part_check, osp_from_forms, superconformal_2d_twist,
    superconformal_3d, Osp, Superconformal2dTwist, Superconformal3d,
};
pub use potential::{
    affine_potential_check, dilation_potential_check, find_affine_potential, find_affine_potential_bounded,
    find_dilation_potential, AffinePotential, PotentialReport,
};
pub use susy_lie::{build_susy_superlie, RSymmetry, SusySuperLie};
pub use twist::{
    compatible_implies_topological_check, compatible_report, compatible_subspace, find_twisting_datum,
    is_integral_grading, twist_compat, weight_check, weight_one_solvable, CompatReport, NamedElement, NamedHom,
    TwistingDatum, TwistingHom,
};

/// Sector names used by the twisting constructions.
pub mod sector {
    pub const ROTATIONS: &str = "rotations";
    pub const TRANSLATIONS: &str = "translations";
    pub const R_SYMMETRY: &str = "r_symmetry";
    pub const ODD: &str = "odd";
    pub const DILATION: &str = "dilation";
    pub const SPECIAL_CONFORMAL: &str = "special_conformal";
    pub const SIGMA: &str = "sigma";
    pub const SIGMA_DUAL: &str = "sigma_dual";
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SuperLieError {
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("bracket [{0}, {1}] has a component of the wrong parity")]
    ParityMismatch(String, String),
    #[error("algebra has no sector named {0:?}")]
    MissingSector(String),
    #[error("R-symmetry {found} does not match {expected} auxiliary data")]
    RSymmetryMismatch { expected: String, found: String },
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("element is not in the expected subspace: {0}")]
    NotInSubspace(String),
    #[error("expected a vector of length {expected}, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Susy(#[from] SusyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn add(self, o: Parity) -> Parity {
        if self == o {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `(−1)^{|a||b|}`.
    pub fn koszul(a: Parity, b: Parity) -> GaussianRational {
        if a == Parity::Odd && b == Parity::Odd {
            -GaussianRational::one()
        } else {
            GaussianRational::one()
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub parity: Parity,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weight: Option<GaussianRational>,
}

/// Sparse `(index, coefficient)` terms, sorted by index, no zeros.
pub type Terms = Vec<(usize, GaussianRational)>;

fn terms_from_vec(v: &[GaussianRational]) -> Terms {
    v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (k, c.clone())).collect()
}

fn clean(terms: Terms) -> Terms {
    let mut acc: BTreeMap<usize, GaussianRational> = BTreeMap::new();
    for (k, c) in terms {
        *acc.entry(k).or_insert_with(GaussianRational::zero) += c;
    }
    acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperLieAlgebra {
    generators: Vec<Generator>,
    table: Vec<Vec<Terms>>,
    sectors: BTreeMap<String, Vec<Vector>>,
}

/// Incremental construction; setting `[e_i, e_j]` also sets `[e_j, e_i]` by graded antisymmetry.
#[derive(Debug, Clone, Default)]
pub struct SuperLieBuilder {
    generators: Vec<Generator>,
    table: BTreeMap<(usize, usize), Terms>,
    sectors: BTreeMap<String, Vec<Vector>>,
}

impl SuperLieBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn generator(&mut self, name: impl Into<String>, parity: Parity) -> usize {
        self.generators.push(Generator { name: name.into(), parity, weight: None });
        self.generators.len() - 1
    }

    pub fn weighted(&mut self, name: impl Into<String>, parity: Parity, weight: GaussianRational) -> usize {
        self.generators.push(Generator { name: name.into(), parity, weight: Some(weight) });
        self.generators.len() - 1
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, terms: Terms) {
        let terms = clean(terms);
        let s = -Parity::koszul(self.generators[i].parity, self.generators[j].parity);
        let mirror: Terms = terms.iter().map(|(k, c)| (*k, &s * c)).collect();
        self.table.insert((i, j), terms);
        self.table.insert((j, i), mirror);
    }

    pub fn sector(&mut self, name: impl Into<String>, basis: Vec<Vector>) {
        self.sectors.insert(name.into(), basis);
    }

    pub fn build(self) -> Result<SuperLieAlgebra, SuperLieError> {
        let d = self.generators.len();
        let mut seen = std::collections::BTreeSet::new();
        for g in &self.generators {
            if !seen.insert(g.name.clone()) {
                return Err(SuperLieError::DuplicateGenerator(g.name.clone()));
            }
        }
        let mut table = vec![vec![Terms::new(); d]; d];
        for ((i, j), terms) in self.table {
            table[i][j] = terms;
        }
        let alg = SuperLieAlgebra { generators: self.generators, table, sectors: self.sectors };
        alg.validate()?;
        Ok(alg)
    }
}

impl SuperLieAlgebra {
    fn validate(&self) -> Result<(), SuperLieError> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let p = self.parity(i).add(self.parity(j));
                for (k, _) in &self.table[i][j] {
                    if *k >= d {
                        return Err(SuperLieError::IndexOutOfRange(*k));
                    }
                    if self.parity(*k) != p {
                        return Err(SuperLieError::ParityMismatch(self.name(i).into(), self.name(j).into()));
                    }
                }
            }
        }
        for basis in self.sectors.values() {
            if let Some(v) = basis.iter().find(|v| v.len() != d) {
                return Err(SuperLieError::WrongLength { expected: d, found: v.len() });
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn name(&self, i: usize) -> &str {
        &self.generators[i].name
    }

    pub fn parity(&self, i: usize) -> Parity {
        self.generators[i].parity
    }

    pub fn index_of(&self, name: &str) -> Result<usize, SuperLieError> {
        self.generators
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| SuperLieError::UnknownGenerator(name.to_string()))
    }

    pub fn indices(&self, parity: Parity) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.parity(i) == parity).collect()
    }

    pub fn even_dim(&self) -> usize {
        self.indices(Parity::Even).len()
    }

    pub fn odd_dim(&self) -> usize {
        self.indices(Parity::Odd).len()
    }

    /// `[e_i, e_j]` as sparse terms.
    pub fn structure(&self, i: usize, j: usize) -> &Terms {
        &self.table[i][j]
    }

    pub fn zero(&self) -> Vector {
        vec![GaussianRational::zero(); self.dim()]
    }

    pub fn unit(&self, i: usize) -> Vector {
        let mut e = self.zero();
        e[i] = GaussianRational::one();
        e
    }

    /// `Σ cₖ·e_{nameₖ}`.
    pub fn element(&self, terms: &[(&str, GaussianRational)]) -> Result<Vector, SuperLieError> {
        let mut v = self.zero();
        for (name, c) in terms {
            let i = self.index_of(name)?;
            v[i] += c;
        }
        Ok(v)
    }

    pub fn bracket(&self, x: &[GaussianRational], y: &[GaussianRational]) -> Vector {
        let mut out = self.zero();
        let xs = terms_from_vec(x);
        let ys = terms_from_vec(y);
        for (i, a) in &xs {
            for (j, b) in &ys {
                let row = &self.table[*i][*j];
                if row.is_empty() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in row {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    /// The parity of a homogeneous nonzero element.
    pub fn parity_of(&self, x: &[GaussianRational]) -> Option<Parity> {
        let mut found = None;
        for (i, c) in x.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match found {
                None => found = Some(self.parity(i)),
                Some(p) if p != self.parity(i) => return None,
                _ => {}
            }
        }
        found
    }

    /// Matrix of `ad_x`: column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[GaussianRational]) -> ExactMatrix {
        let cols: Vec<Vector> = (0..self.dim()).map(|j| self.bracket(x, &self.unit(j))).collect();
        ExactMatrix::from_columns(self.dim(), &cols)
    }

    pub fn sector(&self, name: &str) -> Result<&[Vector], SuperLieError> {
        self.sectors.get(name).map(Vec::as_slice).ok_or_else(|| SuperLieError::MissingSector(name.to_string()))
    }

    pub fn sectors(&self) -> &BTreeMap<String, Vec<Vector>> {
        &self.sectors
    }

    pub fn has_sector(&self, name: &str) -> bool {
        self.sectors.contains_key(name)
    }

    pub fn set_sector(&mut self, name: impl Into<String>, basis: Vec<Vector>) {
        self.sectors.insert(name.into(), basis);
    }

    /// Render an element as `c·name + …`.
    pub fn describe(&self, x: &[GaussianRational]) -> String {
        let parts: Vec<String> = terms_from_vec(x)
            .into_iter()
            .map(|(k, c)| if c.is_one() { self.name(k).to_string() } else { format!("({c})·{}", self.name(k)) })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    /// Whether the sector spans a subalgebra.
    pub fn closes(&self, name: &str) -> Result<bool, SuperLieError> {
        let basis = self.sector(name)?;
        let span = Basis::new(basis.to_vec());
        Ok(span
            .as_ref()
            .is_some_and(|s| basis.iter().all(|x| basis.iter().all(|y| s.coords(&self.bracket(x, y)).is_some()))))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JacobiFailure {
    #[error("graded antisymmetry fails for [{0}, {1}]")]
    Antisymmetry(String, String),
    #[error("graded Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
}

/// Exact check of graded antisymmetry on all pairs and the graded Jacobi identity
/// `[x,[y,z]] = [[x,y],z] + (−1)^{|x||y|}[y,[x,z]]` on all generator triples `i ≤ j ≤ k`.
///
/// Given antisymmetry, the Jacobiator is graded-alternating, so sorted triples suffice.
pub fn jacobi_check(l: &SuperLieAlgebra) -> Result<(), JacobiFailure> {
    let d = l.dim();
    for i in 0..d {
        for j in i..d {
            let s = -Parity::koszul(l.parity(i), l.parity(j));
            let mirror: Terms = l.table[j][i].iter().map(|(k, c)| (*k, &s * c)).collect();
            if l.table[i][j] != mirror {
                return Err(JacobiFailure::Antisymmetry(l.name(i).into(), l.name(j).into()));
            }
        }
    }
    let failure = (0..d).into_par_iter().find_map_first(|i| {
        let x = l.unit(i);
        for j in i..d {
            let y = l.unit(j);
            let xy = l.bracket(&x, &y);
            let sign = Parity::koszul(l.parity(i), l.parity(j));
            for k in j..d {
                let z = l.unit(k);
                let lhs = l.bracket(&x, &l.bracket(&y, &z));
                let a = l.bracket(&xy, &z);
                let b = l.bracket(&y, &l.bracket(&x, &z));
                let ok = lhs.iter().zip(a.iter().zip(&b)).all(|(u, (p, q))| *u == p + &(&sign * q));
                if !ok {
                    return Some((i, j, k));
                }
            }
        }
        None
    });
    match failure {
        Some((i, j, k)) => Err(JacobiFailure::Jacobi(l.name(i).into(), l.name(j).into(), l.name(k).into())),
        None => Ok(()),
    }
}

#[derive(Serialize, Deserialize)]
struct BracketData {
    i: usize,
    j: usize,
    coeffs: BTreeMap<usize, GaussianRational>,
}

#[derive(Serialize, Deserialize)]
struct AlgebraData {
    generators: Vec<Generator>,
    brackets: Vec<BracketData>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    sectors: BTreeMap<String, Vec<Vector>>,
}

impl Serialize for SuperLieAlgebra {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut brackets = Vec::new();
        for i in 0..self.dim() {
            for j in i..self.dim() {
                if !self.table[i][j].is_empty() {
                    brackets.push(BracketData { i, j, coeffs: self.table[i][j].iter().cloned().collect() });
                }
            }
        }
        AlgebraData { generators: self.generators.clone(), brackets, sectors: self.sectors.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SuperLieAlgebra {
    /// Entries with `i ≤ j` are mirrored by graded antisymmetry unless the mirror is listed too.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let data = AlgebraData::deserialize(d)?;
        let n = data.generators.len();
        let mut listed = std::collections::BTreeSet::new();
        let mut b = SuperLieBuilder { generators: data.generators, table: BTreeMap::new(), sectors: data.sectors };
        for e in &data.brackets {
            if e.i >= n || e.j >= n {
                return Err(D::Error::custom(format!("bracket ({}, {}) out of range", e.i, e.j)));
            }
            listed.insert((e.i, e.j));
        }
        for e in data.brackets {
            let terms: Terms = e.coeffs.into_iter().collect();
            if listed.contains(&(e.j, e.i)) && e.i != e.j {
                b.table.insert((e.i, e.j), clean(terms));
            } else {
                b.set_bracket(e.i, e.j, terms);
            }
        }
        b.build().map_err(D::Error::custom)
    }
}
