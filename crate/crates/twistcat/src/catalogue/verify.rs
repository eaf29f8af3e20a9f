use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{expected_table, generic_square_zero, sample_square_zero, CatalogueError, ExpectedClass, SampleSpec};
use crate::octonion::{octonionic_coordinates, octonionic_invariants};
use crate::sampling::{self, derive_seed};
use crate::susy::{
    abelian_section, build_susy, classify, covered_by_hypotheses, is_square_zero, lemma_square_zero, reduce_dimension,
    verify_section, AuxCount, Supercharge, SusyAlgebra, TwistClass,
};

const BOUND: i64 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub key: String,
    pub rank: String,
    pub invariant_directions: usize,
    pub label: String,
    pub z_gradable: bool,
    /// Samples (constructive and generic) classified into this class.
    pub realized: usize,
    pub anchor: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionStats {
    /// Covered by the hypotheses, section found and replayed.
    pub covered_ok: usize,
    /// Covered by the hypotheses, but no section found.
    pub covered_failed: usize,
    /// Outside the hypotheses, section found and replayed.
    pub fallback_ok: usize,
    /// Outside the hypotheses, reported as not covered.
    pub not_covered: usize,
    /// A returned section that fails its replay.
    pub false_success: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogueReport {
    pub dim: usize,
    pub aux: AuxCount,
    pub seed: u64,
    pub samples_per_class: usize,
    pub classes: Vec<ClassCount>,
    pub constructive_samples: usize,
    pub generic_drawn: usize,
    pub generic_square_zero: usize,
    pub lower_bound_violations: usize,
    pub reductions_checked: usize,
    pub reductions_landed: usize,
    pub oracle_checked: usize,
    pub oracle_agreed: usize,
    pub sections: SectionStats,
    pub mismatches: Vec<String>,
    pub passed: bool,
}

#[derive(Default)]
struct Outcome {
    matched: Option<usize>,
    lower_bound_ok: bool,
    reduction: Option<bool>,
    oracle: Option<bool>,
    section: SectionStats,
    problems: Vec<String>,
}

fn lower_table(q: &Supercharge) -> Option<(TwistClass, &'static [ExpectedClass])> {
    let r = reduce_dimension(q).ok()?;
    let table = expected_table(r.dim(), r.algebra().aux().count).ok()?;
    Some((classify(&r).ok()?, table))
}

/// Octonionic coordinates of a minimal supercharge in dimensions 7–10, when the octonionic
/// model covers its chirality.
fn octonionic_input(q: &Supercharge) -> Option<Vec<crate::exactfield::GaussianRational>> {
    let alg = q.algebra();
    let blocks = alg.blocks();
    match (alg.n(), alg.aux().count) {
        (7, AuxCount::Single(1)) => {
            let m = q.block_matrix(0);
            let mut v = m.column(0);
            v.extend(m.column(1));
            Some(v)
        }
        (8, AuxCount::Single(1)) => {
            let mut v = q.block_matrix(0).column(0);
            v.extend(q.block_matrix(1).column(0));
            Some(v)
        }
        (9, AuxCount::Single(1)) => Some(q.block_matrix(0).column(0)),
        (10, _) => {
            let b = blocks.iter().position(|b| b.aux_dim == 1)?;
            (blocks[b].sector == crate::octonion::image_sector10().ok()?).then(|| q.block_matrix(b).column(0))
        }
        _ => None,
    }
}

fn oracle(q: &Supercharge, c: &TwistClass) -> Result<Option<bool>, CatalogueError> {
    let n = q.dim();
    if n < 7 {
        return Ok(None);
    }
    let lemma = lemma_square_zero(q)?;
    let Some(v) = octonionic_input(q) else { return Ok(lemma.map(|l| l == is_square_zero(q))) };
    let inv = octonionic_invariants(n, &octonionic_coordinates(n, &v).map_err(crate::susy::SusyError::from)?)
        .map_err(crate::susy::SusyError::from)?;
    let agree = lemma == Some(is_square_zero(q))
        && inv.square_zero == is_square_zero(q)
        && inv.image_dim == c.invariant_directions
        && Some(inv.pure) == c.pure;
    Ok(Some(agree))
}

fn examine(q: &Supercharge, table: &[ExpectedClass], tag: &str) -> Result<Outcome, CatalogueError> {
    let mut out = Outcome::default();
    let n = q.dim();
    let c = classify(q)?;
    let hits: Vec<usize> = (0..table.len()).filter(|&i| table[i].matches(&c)).collect();
    match hits[..] {
        [i] => out.matched = Some(i),
        [] => out
            .problems
            .push(format!("{tag}: {} {} ({} directions) is not in the table", c.rank, c.label, c.invariant_directions)),
        _ => out.problems.push(format!("{tag}: matches {} classes", hits.len())),
    }
    out.lower_bound_ok = 2 * c.invariant_directions >= n;
    if !out.lower_bound_ok {
        out.problems.push(format!("{tag}: only {} invariant directions", c.invariant_directions));
    }
    if n > 1 {
        let landed = lower_table(q).is_some_and(|(rc, lower)| lower.iter().any(|e| e.matches_lenient(&rc)));
        out.reduction = Some(landed);
        if !landed {
            out.problems.push(format!("{tag}: reduction to dimension {} is not a tabulated class", n - 1));
        }
    }
    out.oracle = oracle(q, &c)?;
    if out.oracle == Some(false) {
        out.problems.push(format!("{tag}: octonionic and Clifford invariants disagree"));
    }
    let covered = covered_by_hypotheses(q);
    match abelian_section(q) {
        Ok(s) if !verify_section(q, &s) => {
            out.section.false_success += 1;
            out.problems.push(format!("{tag}: abelian section fails its replay"));
        }
        Ok(_) if covered => out.section.covered_ok += 1,
        Ok(_) => out.section.fallback_ok += 1,
        Err(_) if covered => {
            out.section.covered_failed += 1;
            out.problems.push(format!("{tag}: no abelian section although covered"));
        }
        Err(_) => out.section.not_covered += 1,
    }
    Ok(out)
}

fn merge(a: &mut SectionStats, b: &SectionStats) {
    a.covered_ok += b.covered_ok;
    a.covered_failed += b.covered_failed;
    a.fallback_ok += b.fallback_ok;
    a.not_covered += b.not_covered;
    a.false_success += b.false_success;
}

fn constructive(
    table: &[ExpectedClass],
    dim: usize,
    aux: AuxCount,
    samples: usize,
    seed: u64,
) -> Vec<Result<Outcome, CatalogueError>> {
    let jobs: Vec<(usize, usize)> = (0..table.len()).flat_map(|i| (0..samples).map(move |j| (i, j))).collect();
    jobs.par_iter()
        .map(|&(i, j)| {
            let spec = SampleSpec {
                dim,
                aux,
                class: i,
                seed: derive_seed(derive_seed(seed, i as u64), j as u64),
                bound: BOUND,
            };
            let tag = format!("{} sample {j}", table[i].key());
            let q = match sample_square_zero(&spec) {
                Ok(q) => q,
                Err(e) => {
                    return Ok(Outcome {
                        problems: vec![format!("{tag}: {e}")],
                        lower_bound_ok: true,
                        ..Outcome::default()
                    })
                }
            };
            let mut out = examine(&q, table, &tag)?;
            if out.matched != Some(i) && out.problems.is_empty() {
                out.problems.push(format!("{tag}: sampler landed in another class"));
            }
            Ok(out)
        })
        .collect()
}

fn generic(
    alg: &Arc<SusyAlgebra>,
    table: &[ExpectedClass],
    draws: usize,
    seed: u64,
) -> Vec<Result<Outcome, CatalogueError>> {
    (0..draws)
        .into_par_iter()
        .filter_map(|j| {
            let mut rng = sampling::rng(derive_seed(seed ^ 0x6765_6e65_7269_63, j as u64));
            let q = generic_square_zero(alg, &mut rng, BOUND)?;
            let tag = format!("generic sample {j}");
            if !is_square_zero(&q) {
                return Some(Ok(Outcome {
                    problems: vec![format!("{tag}: not square-zero")],
                    lower_bound_ok: true,
                    ..Outcome::default()
                }));
            }
            Some(examine(&q, table, &tag))
        })
        .collect()
}

/// Sample every expected class of `(dim, aux)` and check that each sample classifies into
/// exactly the class it was built for; generic samples must land in some class.
pub fn verify_catalogue(
    dim: usize,
    aux: AuxCount,
    samples_per_class: usize,
    seed: u64,
) -> Result<CatalogueReport, CatalogueError> {
    let table = expected_table(dim, aux)?;
    let alg = build_susy(dim, aux)?;
    let per_class = samples_per_class.max(1);
    let cons = constructive(table, dim, aux, per_class, seed);
    let gen = generic(&alg, table, samples_per_class * table.len().max(1), seed);

    let mut realized = vec![0usize; table.len()];
    let mut report = CatalogueReport {
        dim,
        aux,
        seed,
        samples_per_class: per_class,
        classes: Vec::new(),
        constructive_samples: cons.len(),
        generic_drawn: if dim <= 2 { samples_per_class * table.len().max(1) } else { 0 },
        generic_square_zero: gen.len(),
        lower_bound_violations: 0,
        reductions_checked: 0,
        reductions_landed: 0,
        oracle_checked: 0,
        oracle_agreed: 0,
        sections: SectionStats::default(),
        mismatches: Vec::new(),
        passed: false,
    };
    for out in cons.into_iter().chain(gen) {
        let out = out?;
        if let Some(i) = out.matched {
            realized[i] += 1;
        }
        report.lower_bound_violations += usize::from(!out.lower_bound_ok);
        if let Some(r) = out.reduction {
            report.reductions_checked += 1;
            report.reductions_landed += usize::from(r);
        }
        if let Some(o) = out.oracle {
            report.oracle_checked += 1;
            report.oracle_agreed += usize::from(o);
        }
        merge(&mut report.sections, &out.section);
        report.mismatches.extend(out.problems);
    }
    for (e, &count) in table.iter().zip(&realized) {
        if count == 0 {
            report.mismatches.push(format!("{}: never realized", e.key()));
        }
        report.classes.push(ClassCount {
            key: e.key(),
            rank: e.rank.to_string(),
            invariant_directions: e.invariant_directions,
            label: e.label.to_string(),
            z_gradable: e.z_gradable,
            realized: count,
            anchor: e.anchor.clone(),
        });
    }
    report.classes.sort_by(|a, b| a.key.cmp(&b.key));
    report.passed = report.mismatches.is_empty();
    Ok(report)
}
