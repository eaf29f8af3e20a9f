//! The classification of square-zero supercharges in dimensions 1–10 as reviewed data, with
//! constructive samplers and verifiers that replay every entry.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::superlie::SuperLieError;
use crate::susy::{AuxCount, ExtraValue, Rank, SusyError, TwistClass, TwistLabel};

mod report;
mod sample;
mod twisting;
mod verify;


pub use report::{render_catalogue_md, render_twisting_md};
pub use sample::{generic_square_zero, sample_square_zero, SampleSpec};
pub use twisting::{named_hom, verify_twisting_table, GradabilityCheck, HomCheck, TwistingTableReport};
pub use verify::{verify_catalogue, CatalogueReport, ClassCount, SectionStats};

const TABLE_JSON: &str = include_str!("../../data/catalogue.json");

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogueError {
    #[error("no catalogue entry for dimension {dim} with {aux}")]
    Unsupported { dim: usize, aux: String },
    #[error("class index {index} out of range for dimension {dim} with {aux}")]
    NoSuchClass { dim: usize, aux: String, index: usize },
    #[error("sampler for {class} failed to replay: {detail}")]
    SamplerFailed { class: String, detail: String },
    #[error("catalogue data is malformed: {0}")]
    BadData(String),
    #[error(transparent)]
    Susy(#[from] SusyError),
    #[error(transparent)]
    SuperLie(#[from] SuperLieError),
    #[error(transparent)]
    Octonion(#[from] crate::octonion::OctonionError),
}

/// Whether the two spinor factors of a sample pair to zero or not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingConstraint {
    Zero,
    Nonzero,
}

/// Constructive parametrization realizing one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Recipe {
    /// Random spinors tensored with standard isotropic vectors `e₀, e₂, …` of each block
    /// (`e₀, e₃` with `alt`), then a random isometry of each block.
    Isotropic {
        ranks: Vec<usize>,
        #[serde(default)]
        alt: bool,
        #[serde(default)]
        pairing: Option<PairingConstraint>,
    },
    /// `W_{Q₊}` and `W_{Q₋}` on disjoint coordinate vectors, then a random `GL(W)`.
    DualPair { ranks: [usize; 2] },
    /// Dimension 5, rank 4: a symplectic isomorphism `S → W` up to a random symplectic frame.
    SymplecticFull,
    /// Dimension 6, rank (2,2): the chiral bivectors cancel.
    Hodge6,
    /// Dimension 7 from octonion pairs `(a, b)` with `a × b = 0`.
    Octonion7 { rank: usize, pure: bool },
    /// Dimension 8 from `(a, b)` with `a·b = 0`.
    Octonion8 { blocks: [bool; 2], pure: bool },
    /// Dimension 9 from zero divisors `a·b = 0`.
    Octonion9,
    /// Dimension 10: a pure Weyl spinor.
    PureWeyl,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedClass {
    pub dim: usize,
    pub aux: AuxCount,
    pub rank: Rank,
    pub invariant_directions: usize,
    pub label: TwistLabel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, ExtraValue>,
    /// Extras that are computed but take a continuum of values.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub free_extras: Vec<String>,
    pub z_gradable: bool,
    /// Whether a grading exists inside the derived R-symmetry algebra.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traceless_datum: Option<bool>,
    pub sampler: Recipe,
    pub anchor: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub twisting_note: String,
}

impl ExpectedClass {
    /// Sortable identifier, e.g. `"(1,1) holomorphic_topological(4) sector_pairing_nonzero=false"`.
    pub fn key(&self) -> String {
        let mut key = format!("{} {}", self.rank, self.label);
        if let Some(p) = self.pure {
            key.push_str(if p { " pure" } else { " impure" });
        }
        for (k, v) in &self.extra {
            key.push_str(&format!(" {k}={}", extra_text(v)));
        }
        key
    }

    /// Field-by-field agreement with a computed class.
    pub fn matches(&self, c: &TwistClass) -> bool {
        self.matches_core(c)
            && self.extra.keys().all(|k| c.extra.contains_key(k))
            && c.extra.iter().all(|(k, v)| self.free_extras.contains(k) || self.extra.get(k) == Some(v))
    }

    /// Agreement on the extras the computed class carries; extras it does not compute (for
    /// instance on non-standard pairings) are not required.
    pub fn matches_lenient(&self, c: &TwistClass) -> bool {
        self.matches_core(c)
            && c.extra.iter().all(|(k, v)| self.free_extras.contains(k) || self.extra.get(k).is_none_or(|e| e == v))
    }

    fn matches_core(&self, c: &TwistClass) -> bool {
        self.rank == c.rank
            && self.invariant_directions == c.invariant_directions
            && self.label == c.label
            && self.pure == c.pure
    }

    fn check_consistent(&self) -> Result<(), String> {
        if TwistLabel::from_directions(self.dim, self.invariant_directions) != self.label {
            return Err(format!("{}: label does not match {} directions", self.key(), self.invariant_directions));
        }
        if 2 * self.invariant_directions < self.dim {
            return Err(format!("{}: fewer than half the directions", self.key()));
        }
        Ok(())
    }
}

pub(crate) fn extra_text(v: &ExtraValue) -> String {
    match v {
        ExtraValue::Bool(b) => b.to_string(),
        ExtraValue::Count(k) => k.to_string(),
        ExtraValue::Text(s) => s.clone(),
    }
}

/// Expected outcome of one encoded twisting homomorphism.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistingExpectation {
    pub dim: usize,
    pub aux: AuxCount,
    pub hom: String,
    /// `"rank label"` keys of the square-zero classes in the compatible subspace.
    pub compatible: BTreeSet<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub compatible_dim: Option<usize>,
    /// Whether a compatible supercharge has a twisting datum commuting with the image of `φ`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum_commutes: Option<bool>,
    pub anchor: String,
}

#[derive(Deserialize)]
struct RawTable {
    algebras: Vec<RawAlgebra>,
    twisting: Vec<RawTwisting>,
}

#[derive(Deserialize)]
struct RawAlgebra {
    dim: usize,
    aux: String,
    classes: Vec<RawClass>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawClass {
    rank: Rank,
    directions: usize,
    label: TwistLabel,
    #[serde(default)]
    pure: Option<bool>,
    #[serde(default)]
    extra: BTreeMap<String, ExtraValue>,
    #[serde(default)]
    free_extras: Vec<String>,
    z_gradable: bool,
    #[serde(default)]
    traceless_datum: Option<bool>,
    sampler: Recipe,
    anchor: String,
    #[serde(default)]
    twisting_note: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTwisting {
    dim: usize,
    aux: String,
    hom: String,
    compatible: BTreeSet<String>,
    #[serde(default)]
    compatible_dim: Option<usize>,
    #[serde(default)]
    datum_commutes: Option<bool>,
    anchor: String,
}

/// The parsed data file.
#[derive(Debug, Clone)]
pub struct Catalogue {
    pub algebras: Vec<(usize, AuxCount, Vec<ExpectedClass>)>,
    pub twisting: Vec<TwistingExpectation>,
}

fn parse_aux(dim: usize, s: &str) -> Result<AuxCount, String> {
    s.parse().map_err(|e: SusyError| format!("dimension {dim}: {e}"))
}

pub fn parse_catalogue(json: &str) -> Result<Catalogue, CatalogueError> {
    let bad = CatalogueError::BadData;
    let raw: RawTable = serde_json::from_str(json).map_err(|e| bad(e.to_string()))?;
    let mut algebras = Vec::new();
    for a in raw.algebras {
        let aux = parse_aux(a.dim, &a.aux).map_err(bad)?;
        crate::susy::AuxSpace::standard(a.dim, aux).map_err(|e| bad(e.to_string()))?;
        let classes: Vec<ExpectedClass> = a
            .classes
            .into_iter()
            .map(|c| ExpectedClass {
                dim: a.dim,
                aux,
                rank: c.rank,
                invariant_directions: c.directions,
                label: c.label,
                pure: c.pure,
                extra: c.extra,
                free_extras: c.free_extras,
                z_gradable: c.z_gradable,
                traceless_datum: c.traceless_datum,
                sampler: c.sampler,
                anchor: c.anchor,
                twisting_note: c.twisting_note,
            })
            .collect();
        for c in &classes {
            c.check_consistent().map_err(|e| bad(format!("dimension {}: {e}", a.dim)))?;
        }
        let keys: BTreeSet<String> = classes.iter().map(ExpectedClass::key).collect();
        if keys.len() != classes.len() {
            return Err(bad(format!("dimension {} {aux}: duplicate class keys", a.dim)));
        }
        if algebras.iter().any(|(d, x, _)| *d == a.dim && *x == aux) {
            return Err(bad(format!("dimension {} {aux} listed twice", a.dim)));
        }
        algebras.push((a.dim, aux, classes));
    }
    let twisting = raw
        .twisting
        .into_iter()
        .map(|t| {
            Ok(TwistingExpectation {
                dim: t.dim,
                aux: parse_aux(t.dim, &t.aux).map_err(bad)?,
                hom: t.hom,
                compatible: t.compatible,
                compatible_dim: t.compatible_dim,
                datum_commutes: t.datum_commutes,
                anchor: t.anchor,
            })
        })
        .collect::<Result<Vec<_>, CatalogueError>>()?;
    Ok(Catalogue { algebras, twisting })
}

/// The built-in catalogue.
pub fn catalogue() -> &'static Catalogue {
    static CAT: OnceLock<Catalogue> = OnceLock::new();
    CAT.get_or_init(|| parse_catalogue(TABLE_JSON).expect("built-in catalogue parses"))
}

/// Every tabulated `(dim, aux)` pair, in data-file order.
pub fn tabulated() -> Vec<(usize, AuxCount)> {
    catalogue().algebras.iter().map(|(d, a, _)| (*d, *a)).collect()
}

pub fn expected_table(dim: usize, aux: AuxCount) -> Result<&'static [ExpectedClass], CatalogueError> {
    catalogue()
        .algebras
        .iter()
        .find(|(d, a, _)| *d == dim && *a == aux)
        .map(|(_, _, c)| c.as_slice())
        .ok_or_else(|| CatalogueError::Unsupported { dim, aux: aux.to_string() })
}

pub fn twisting_expectations(dim: usize, aux: AuxCount) -> Vec<&'static TwistingExpectation> {
    catalogue().twisting.iter().filter(|t| t.dim == dim && t.aux == aux).collect()
}
