use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{expected_table, sample_square_zero, twisting_expectations, CatalogueError, SampleSpec};
use crate::exactfield::{add_vec, is_zero_vec, span_basis, sub_vec, Vector};
use crate::sampling::derive_seed;
use crate::superlie::{
    self, build_susy_superlie, compatible_subspace, sector, weight_one_solvable, RSymmetry, SuperLieError,
    SusySuperLie, TwistingHom,
};
use crate::susy::{build_susy, classify, AuxCount, Supercharge};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomCheck {
    pub hom: String,
    pub expected: BTreeSet<String>,
    pub computed: BTreeSet<String>,
    pub compatible_dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub datum_commutes: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_datum_commutes: Option<bool>,
    pub passed: bool,
    pub anchor: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradabilityCheck {
    pub class: String,
    pub expected: bool,
    pub found: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traceless_expected: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub traceless_found: Option<bool>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistingTableReport {
    pub dim: usize,
    pub aux: AuxCount,
    pub homs: Vec<HomCheck>,
    pub gradability: Vec<GradabilityCheck>,
    pub mismatches: Vec<String>,
    pub passed: bool,
}

fn parse_args(s: &str, name: &str) -> Option<Vec<i64>> {
    let inner = s.strip_prefix(name)?.strip_prefix('(')?.strip_suffix(')')?;
    inner.split(',').map(|x| x.trim().parse().ok()).collect()
}

/// An encoded twisting homomorphism by name: `winding(a,b)`, `degree(d)`, `projection`,
/// `i1`, `i2`, `pi1`, `pi2`, `kapustin_witten`, `vafa_witten`, `half`, `maximal_compact`.
pub fn named_hom(sl: &SusySuperLie, name: &str) -> Result<TwistingHom, SuperLieError> {
    if let Some([a, b]) = parse_args(name, "winding").as_deref() {
        return superlie::winding_2d(sl, *a, *b);
    }
    if let Some([d]) = parse_args(name, "degree").as_deref() {
        return superlie::degree_3d(sl, *d);
    }
    match name {
        "projection" => superlie::projection_3d(sl),
        "i1" => superlie::inclusion_3d(sl, true),
        "i2" => superlie::inclusion_3d(sl, false),
        "pi1" => superlie::projection_4d(sl, true),
        "pi2" => superlie::projection_4d(sl, false),
        "kapustin_witten" => superlie::kapustin_witten(sl),
        "vafa_witten" => superlie::vafa_witten(sl),
        "half" => superlie::half_twist_4d(sl),
        "maximal_compact" => superlie::maximal_compact_5d(sl),
        _ => Err(SuperLieError::Unsupported(format!("unknown twisting homomorphism {name:?}"))),
    }
}

/// Square-zero elements of the compatible subspace: the basis and pairwise sums and differences.
fn compatible_candidates(
    sl: &SusySuperLie,
    basis: &[Vector],
) -> Result<Vec<(Supercharge, String, usize)>, CatalogueError> {
    let l = sl.algebra();
    let mut cands: Vec<Vector> = basis.to_vec();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            cands.push(add_vec(&basis[i], &basis[j]));
            cands.push(sub_vec(&basis[i], &basis[j]));
        }
    }
    let mut out = Vec::new();
    for x in cands.iter().filter(|x| !is_zero_vec(x) && is_zero_vec(&l.bracket(x, x))) {
        let q = sl.supercharge_of(x)?;
        let c = classify(&q)?;
        out.push((q, format!("{} {}", c.rank, c.label), c.invariant_directions));
    }
    Ok(out)
}

fn check_hom(sl: &SusySuperLie, exp: &super::TwistingExpectation) -> Result<HomCheck, CatalogueError> {
    let phi = named_hom(sl, &exp.hom)?;
    let l = sl.algebra();
    let basis = compatible_subspace(l, &phi, l.sector(sector::ODD)?)?;
    let cands = compatible_candidates(sl, &basis)?;
    let computed: BTreeSet<String> = cands.iter().map(|(_, k, _)| k.clone()).collect();
    let datum_commutes = match cands.iter().max_by_key(|(_, _, d)| *d) {
        Some((q, _, _)) if exp.datum_commutes.is_some() => Some(sl.twisting_datum(q, Some(&phi)).is_some()),
        _ => None,
    };
    let passed = computed == exp.compatible
        && exp.compatible_dim.is_none_or(|d| d == basis.len())
        && exp.datum_commutes.is_none_or(|d| Some(d) == datum_commutes);
    Ok(HomCheck {
        hom: exp.hom.clone(),
        expected: exp.compatible.clone(),
        computed,
        compatible_dim: basis.len(),
        expected_dim: exp.compatible_dim,
        datum_commutes,
        expected_datum_commutes: exp.datum_commutes,
        passed,
        anchor: exp.anchor.clone(),
    })
}

/// Basis of `[g_R, g_R]`.
fn derived_r_symmetry(sl: &SusySuperLie) -> Result<Vec<Vector>, SuperLieError> {
    let l = sl.algebra();
    let r = l.sector(sector::R_SYMMETRY)?;
    let brackets: Vec<Vector> =
        r.iter().enumerate().flat_map(|(i, x)| r[i + 1..].iter().map(move |y| l.bracket(x, y))).collect();
    Ok(span_basis(l.dim(), &brackets))
}

/// Check each encoded twisting homomorphism against its expected compatible classes, and each
/// class's ℤ-gradability against an exact search for a twisting datum.
pub fn verify_twisting_table(dim: usize, aux: AuxCount, seed: u64) -> Result<TwistingTableReport, CatalogueError> {
    let table = expected_table(dim, aux)?;
    let susy = build_susy(dim, aux)?;
    let sl = build_susy_superlie(&susy, RSymmetry::for_kind(susy.aux().kind))?;
    let homs = twisting_expectations(dim, aux).par_iter().map(|e| check_hom(&sl, e)).collect::<Result<Vec<_>, _>>()?;
    let derived = if table.iter().any(|c| c.traceless_datum.is_some()) { Some(derived_r_symmetry(&sl)?) } else { None };
    let gradability = table
        .par_iter()
        .enumerate()
        .map(|(i, c)| {
            let spec = SampleSpec { dim, aux, class: i, seed: derive_seed(seed, i as u64), bound: 3 };
            let q = sample_square_zero(&spec)?;
            let found = sl.twisting_datum(&q, None).is_some();
            let traceless_found = match (&derived, c.traceless_datum) {
                (Some(d), Some(_)) => Some(weight_one_solvable(sl.algebra(), &sl.embed(&q), d)),
                _ => None,
            };
            Ok(GradabilityCheck {
                class: c.key(),
                expected: c.z_gradable,
                found,
                traceless_expected: c.traceless_datum,
                traceless_found,
                passed: found == c.z_gradable && traceless_found == c.traceless_datum,
            })
        })
        .collect::<Result<Vec<_>, CatalogueError>>()?;
    let mut mismatches = Vec::new();
    for h in homs.iter().filter(|h| !h.passed) {
        mismatches.push(format!(
            "{}: expected {:?} (dim {:?}, datum {:?}), computed {:?} (dim {}, datum {:?})",
            h.hom,
            h.expected,
            h.expected_dim,
            h.expected_datum_commutes,
            h.computed,
            h.compatible_dim,
            h.datum_commutes
        ));
    }
    for g in gradability.iter().filter(|g| !g.passed) {
        mismatches.push(format!(
            "{}: z_gradable expected {}, found {}; traceless expected {:?}, found {:?}",
            g.class, g.expected, g.found, g.traceless_expected, g.traceless_found
        ));
    }
    let passed = mismatches.is_empty();
    Ok(TwistingTableReport { dim, aux, homs, gradability, mismatches, passed })
}
