use std::sync::Arc;

use super::{AuxCount, AuxKind, AuxSpace, Supercharge, SusyAlgebra, SusyError};
use crate::clifford::{self, Sector};
use crate::exactfield::{ExactMatrix, GaussianRational};

/// Reduction of Σ in dimension `n` to Σ in dimension `n − 1`: the target algebra and the
/// coordinate permutation `i ↦ map[i]`.
///
/// Spinors restrict by the coefficient identity. Auxiliary spaces are identified as
/// `W⁹ = W₊ ⊕ W₋`, `W⁸ = W⁹`, `W⁷ = W ⊕ W*`, `W₊⁶ = W₋⁶ = W⁷`, `W⁵ = W₊ ⊕ W₋`, `W⁴ = W⁵`,
/// `W³ = W ⊕ W*`, `W₊² = W₋² = W³`, `W¹ = W₊ ⊕ W₋`. The target pairings are the induced
/// ones, rescaled so that the target bracket equals the projection of the source bracket
/// to the first `n − 1` coordinates.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub target: Arc<SusyAlgebra>,
    pub map: Vec<usize>,
}

fn block_diagonal(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let (p, q) = (a.rows(), b.rows());
    let mut m = ExactMatrix::zeros(p + q, p + q);
    for i in 0..p {
        for j in 0..p {
            m[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..q {
        for j in 0..q {
            m[(p + i, p + j)] = b[(i, j)].clone();
        }
    }
    m
}

/// `[[0, K], [ε·Kᵀ, 0]]` on `W ⊕ W*`.
fn off_diagonal(k: &ExactMatrix, eps: &GaussianRational) -> ExactMatrix {
    let p = k.rows();
    let mut m = ExactMatrix::zeros(2 * p, 2 * p);
    for i in 0..p {
        for j in 0..p {
            m[(i, p + j)] = k[(i, j)].clone();
            m[(p + j, i)] = eps * &k[(i, j)];
        }
    }
    m
}

struct Plan {
    kind: AuxKind,
    count: AuxCount,
    map: Vec<usize>,
    /// Part of the target pairing each source coordinate feeds into.
    part: Vec<usize>,
    forms: Box<dyn Fn(&[GaussianRational]) -> Vec<ExactMatrix>>,
    parts: usize,
}

fn plan(alg: &SusyAlgebra) -> Result<Plan, SusyError> {
    let n = alg.n();
    if n < 2 {
        return Err(SusyError::NoReduction);
    }
    let aux = alg.aux().clone();
    let (kind, _) = AuxKind::for_dim(n - 1);
    let blocks = alg.blocks();
    let mut map = vec![0; alg.sigma_dim()];
    let mut part = vec![0; alg.sigma_dim()];
    if n % 2 == 1 {
        let lower = clifford::model(n - 1)?;
        let plus = lower.sector_indices(Sector::Plus);
        let minus = lower.sector_indices(Sector::Minus);
        let src = blocks[0];
        let wd = src.aux_dim;
        let half = plus.len();
        for a in 0..src.spinor_dim {
            let (b, s) = match plus.iter().position(|&x| x == a) {
                Some(s) => (0, s),
                None => (1, minus.iter().position(|&x| x == a).expect("sectors cover S")),
            };
            for w in 0..wd {
                let target = b * half * wd + s * wd + w;
                map[src.index(a, w)] = target;
                part[src.index(a, w)] = if kind == AuxKind::DualPair { 0 } else { b };
            }
        }
        let k = aux.forms[0].clone();
        let AuxCount::Single(count) = aux.count else { unreachable!("odd n has a single count") };
        return Ok(match kind {
            AuxKind::DualPair => Plan {
                kind,
                count: AuxCount::Single(wd),
                map,
                part,
                forms: Box::new(move |r| vec![k.scale(&r[0])]),
                parts: 1,
            },
            _ => Plan {
                kind,
                count: AuxCount::Pair(count, count),
                map,
                part,
                forms: Box::new(move |r| vec![k.scale(&r[0]), k.scale(&r[1])]),
                parts: 2,
            },
        });
    }
    let (p, m) = (blocks[0], blocks[1]);
    let wd = p.aux_dim + m.aux_dim;
    for (b, blk) in [p, m].iter().enumerate() {
        let shift = if b == 0 { 0 } else { p.aux_dim };
        for s in 0..blk.spinor_dim {
            for w in 0..blk.aux_dim {
                map[blk.index(s, w)] = s * wd + shift + w;
                part[blk.index(s, w)] = if aux.kind == AuxKind::DualPair { 0 } else { b };
            }
        }
    }
    Ok(match aux.kind {
        AuxKind::DualPair => {
            let k = aux.forms[0].clone();
            let eps = if kind == AuxKind::Symmetric { GaussianRational::one() } else { -GaussianRational::one() };
            let count = if kind == AuxKind::Symmetric { 2 * k.rows() } else { k.rows() };
            Plan {
                kind,
                count: AuxCount::Single(count),
                map,
                part,
                forms: Box::new(move |r| vec![off_diagonal(&k.scale(&r[0]), &eps)]),
                parts: 1,
            }
        }
        _ => {
            let (kp, km) = (aux.forms[0].clone(), aux.forms[1].clone());
            Plan {
                kind,
                count: AuxCount::Single(aux.count.total()),
                map,
                part,
                forms: Box::new(move |r| vec![block_diagonal(&kp.scale(&r[0]), &km.scale(&r[1]))]),
                parts: 2,
            }
        }
    })
}

fn unit(d: usize, i: usize) -> Vec<GaussianRational> {
    let mut e = vec![GaussianRational::zero(); d];
    e[i] = GaussianRational::one();
    e
}

pub fn reduction(alg: &SusyAlgebra) -> Result<Reduction, SusyError> {
    let plan = plan(alg)?;
    let n = alg.n();
    let d = alg.sigma_dim();
    let build = |rhos: &[GaussianRational]| {
        let aux = AuxSpace { kind: plan.kind, count: plan.count, forms: (plan.forms)(rhos) };
        SusyAlgebra::with_aux(n - 1, aux)
    };
    let unit_target = build(&vec![GaussianRational::one(); plan.parts])?;
    let mut rhos: Vec<Option<GaussianRational>> = vec![None; plan.parts];
    'pairs: for i in 0..d {
        for j in i..d {
            let p = plan.part[i];
            if plan.part[j] != p || rhos[p].is_some() {
                continue;
            }
            let src = alg.bracket_vec(&unit(d, i), &unit(d, j));
            let tgt = unit_target.bracket_vec(&unit(d, plan.map[i]), &unit(d, plan.map[j]));
            if let Some(mu) = (0..n - 1).find(|&mu| !tgt[mu].is_zero()) {
                rhos[p] = Some(&src[mu] / &tgt[mu]);
                if rhos.iter().all(Option::is_some) {
                    break 'pairs;
                }
            }
        }
    }
    let rhos: Vec<GaussianRational> = rhos.into_iter().map(|r| r.unwrap_or_else(GaussianRational::one)).collect();
    if rhos.iter().any(GaussianRational::is_zero) {
        return Err(SusyError::ReductionMismatch);
    }
    let target = build(&rhos)?;
    for i in 0..d {
        for j in i..d {
            let src = alg.bracket_vec(&unit(d, i), &unit(d, j));
            let tgt = target.bracket_vec(&unit(d, plan.map[i]), &unit(d, plan.map[j]));
            if src[..n - 1] != tgt[..] {
                return Err(SusyError::ReductionMismatch);
            }
        }
    }
    Ok(Reduction { target: Arc::new(target), map: plan.map })
}

/// `Q` viewed in dimension `n − 1`.
pub fn reduce_dimension(q: &Supercharge) -> Result<Supercharge, SusyError> {
    let r = reduction(q.algebra())?;
    let mut coeffs = vec![GaussianRational::zero(); q.coeffs().len()];
    for (i, c) in q.coeffs().iter().enumerate() {
        coeffs[r.map[i]] = c.clone();
    }
    r.target.supercharge(coeffs)
}
