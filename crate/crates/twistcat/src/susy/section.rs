use serde::{Deserialize, Serialize};

use super::{is_square_zero, AuxCount, AuxKind, Supercharge, SusyError};
use crate::exactfield::{is_zero_vec, scale_vec, span_basis, span_dim, sub_vec, ExactMatrix, GaussianRational, Vector};

const SEARCH_BUDGET: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionMethod {
    /// `Q` sits in one block of a dual-pair algebra; the section lives in the other block.
    ChiralComplement,
    /// Bounded exact search over spinor coordinates tensored with isotropic directions adapted
    /// to `W_Q`, then null coordinate vectors and their two-term combinations.
    Search,
}

/// A subspace `𝔞 ⊂ Σ` with `[𝔞, 𝔞] = 0` on which `[Q, −]` is a bijection onto `S_Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianSection {
    pub basis: Vec<Vector>,
    pub method: SectionMethod,
}

/// Whether `Q` falls under the hypotheses guaranteeing an abelian section:
/// `n ≡ 5, 6, 7`; `n ≡ 0, 4` with `Q` in a single block; `n ≡ 1, 3` with `𝒩 ≥ 2`;
/// `n ≡ 2` with `𝒩₊, 𝒩₋ ≥ 2`.
pub fn covered_by_hypotheses(q: &Supercharge) -> bool {
    let alg = q.algebra();
    match (alg.n() % 8, alg.aux().count) {
        (5..=7, _) => true,
        (0 | 4, _) => (0..2).any(|b| is_zero_vec(&block_coeffs(q, b))),
        (1 | 3, AuxCount::Single(k)) => k >= 2,
        (2, AuxCount::Pair(a, b)) => a >= 2 && b >= 2,
        _ => false,
    }
}

fn block_coeffs(q: &Supercharge, b: usize) -> Vector {
    let blk = q.algebra().blocks()[b];
    q.coeffs()[blk.offset..blk.offset + blk.len()].to_vec()
}

/// Replay the defining conditions of an abelian section exactly.
pub fn verify_section(q: &Supercharge, section: &AbelianSection) -> bool {
    let alg = q.algebra();
    let Ok(target) = super::image_subspace(q) else { return false };
    let abelian = section.basis.iter().all(|a| section.basis.iter().all(|b| is_zero_vec(&alg.bracket_vec(a, b))));
    let map = alg.bracket_map(q.coeffs());
    let images: Vec<Vector> = section.basis.iter().map(|a| map.mul_vec(a)).collect();
    abelian && section.basis.len() == target.len() && span_dim(alg.n(), &images) == target.len()
}

pub fn abelian_section(q: &Supercharge) -> Result<AbelianSection, SusyError> {
    if q.is_zero() {
        return Err(SusyError::ZeroSupercharge);
    }
    if !is_square_zero(q) {
        return Err(SusyError::NotSquareZero);
    }
    let alg = q.algebra();
    let map = alg.bracket_map(q.coeffs());
    let k = map.rank();
    if alg.aux().kind == AuxKind::DualPair {
        if let Some(other) = (0..2).find(|&b| is_zero_vec(&block_coeffs(q, 1 - b))).map(|b| 1 - b) {
            let blk = alg.blocks()[other];
            let basis = pivot_columns(&map, blk.offset..blk.offset + blk.len(), alg.sigma_dim());
            let section = AbelianSection { basis, method: SectionMethod::ChiralComplement };
            if verify_section(q, &section) {
                return Ok(section);
            }
        }
    }
    search(q, &map, k)
        .map(|basis| AbelianSection { basis, method: SectionMethod::Search })
        .filter(|s| verify_section(q, s))
        .ok_or_else(|| {
            let why =
                if covered_by_hypotheses(q) { "search budget exhausted" } else { "outside the covered hypotheses" };
            SusyError::NotCovered(format!("dimension {}, {}: {why}", alg.n(), alg.aux().count))
        })
}

/// Coordinate vectors `e_j`, `j ∈ range`, whose images under `map` form a basis of its image.
fn pivot_columns(map: &ExactMatrix, range: std::ops::Range<usize>, len: usize) -> Vec<Vector> {
    let mut chosen = Vec::new();
    let mut images: Vec<Vector> = Vec::new();
    for j in range {
        let col = map.column(j);
        images.push(col);
        if span_dim(map.rows(), &images) > chosen.len() {
            let mut e = vec![GaussianRational::zero(); len];
            e[j] = GaussianRational::one();
            chosen.push(e);
        } else {
            images.pop();
        }
    }
    chosen
}

struct Candidate {
    vector: Vector,
    image: Vector,
}

/// Rows of `m` spanning its row space.
fn row_space(m: &ExactMatrix) -> Vec<Vector> {
    span_basis(m.cols(), &(0..m.rows()).map(|i| m.row(i).to_vec()).collect::<Vec<_>>())
}

/// Vectors `u_j` with `form(w_i, u_j) = δ_ij`.
fn duals(form: &ExactMatrix, ws: &[Vector]) -> Option<Vec<Vector>> {
    let a = ExactMatrix::from_rows(ws.iter().map(|w| form.transpose().mul_vec(w)).collect()).ok()?;
    (0..ws.len())
        .map(|j| {
            let mut e = vec![GaussianRational::zero(); ws.len()];
            e[j] = GaussianRational::one();
            a.solve(&e)
        })
        .collect()
}

/// An isotropic family for `form`, greedily extended from `seeds`, then from coordinate
/// vectors and their two-term combinations.
fn greedy_isotropic(form: &ExactMatrix, seeds: &[Vector]) -> Vec<Vector> {
    let k = form.rows();
    let unit = |j: usize| {
        let mut e = vec![GaussianRational::zero(); k];
        e[j] = GaussianRational::one();
        e
    };
    let phases = [GaussianRational::one(), -GaussianRational::one(), GaussianRational::i(), -GaussianRational::i()];
    let mut pool: Vec<Vector> = seeds.to_vec();
    pool.extend((0..k).map(unit));
    for j in 0..k {
        for l in j + 1..k {
            for p in &phases {
                let mut v = unit(j);
                v[l] = p.clone();
                pool.push(v);
            }
        }
    }
    let mut out: Vec<Vector> = Vec::new();
    for v in pool {
        if out.len() * 2 >= k {
            break;
        }
        if !form.bilinear(&v, &v).is_zero() || out.iter().any(|u| !form.bilinear(u, &v).is_zero()) {
            continue;
        }
        out.push(v);
        if span_dim(k, &out) < out.len() {
            out.pop();
        }
    }
    out
}

struct Adapted {
    block: usize,
    dirs: Vec<Vector>,
    perp: Vec<Vector>,
}

/// Isotropic vectors of `W_b` pairing nondegenerately with `W_{Q,b}` when it is isotropic,
/// and a maximal isotropic family containing as many duals as possible otherwise.
fn adapted_directions(q: &Supercharge) -> Vec<Adapted> {
    let alg = q.algebra();
    let mut out = Vec::new();
    for (b0, b1, form) in alg.aux().couplings() {
        if b0 == b1 {
            let ws = row_space(&q.block_matrix(b0));
            if ws.is_empty() {
                continue;
            }
            let Some(us) = duals(form, &ws) else { continue };
            let isotropic = ws.iter().all(|w| ws.iter().all(|x| form.bilinear(w, x).is_zero()));
            let dirs = if isotropic {
                let half = GaussianRational::from_fracs(1, 2, 0, 1);
                us.iter()
                    .map(|u| {
                        let mut v = u.clone();
                        for (w, ul) in ws.iter().zip(&us) {
                            v = sub_vec(&v, &scale_vec(w, &(&half * &form.bilinear(u, ul))));
                        }
                        v
                    })
                    .collect()
            } else {
                greedy_isotropic(form, &us)
            };
            // A non-isotropic image also admits `S ⊗ u ⊕ s ⊗ u^⊥` for one isotropic `u`.
            let perp = match (isotropic, dirs.first()) {
                (false, Some(u)) => {
                    ExactMatrix::from_rows(vec![form.transpose().mul_vec(u)]).map(|m| m.kernel()).unwrap_or_default()
                }
                _ => Vec::new(),
            };
            out.push(Adapted { block: b0, dirs, perp });
        } else {
            // Dual pair: block `b0` pairs with `W_{Q,b1}` and vice versa.
            let w0 = row_space(&q.block_matrix(b0));
            let w1 = row_space(&q.block_matrix(b1));
            let us = if w1.is_empty() { Vec::new() } else { duals(&form.transpose(), &w1).unwrap_or_default() };
            let mut vs = if w0.is_empty() { Vec::new() } else { duals(form, &w0).unwrap_or_default() };
            for v in &mut vs {
                for (u, w) in us.iter().zip(&w1) {
                    *v = sub_vec(v, &scale_vec(w, &form.bilinear(u, v)));
                }
            }
            out.push(Adapted { block: b0, dirs: us, perp: Vec::new() });
            out.push(Adapted { block: b1, dirs: vs, perp: Vec::new() });
        }
    }
    out
}

fn candidates(q: &Supercharge, map: &ExactMatrix) -> Vec<Candidate> {
    let alg = q.algebra();
    let d = alg.sigma_dim();
    let unit = |j: usize| {
        let mut e = vec![GaussianRational::zero(); d];
        e[j] = GaussianRational::one();
        e
    };
    let phases = [GaussianRational::one(), -GaussianRational::one(), GaussianRational::i(), -GaussianRational::i()];
    let mut out = Vec::new();
    let mut push = |v: Vector| {
        let image = map.mul_vec(&v);
        if !is_zero_vec(&image) && is_zero_vec(&alg.bracket_vec(&v, &v)) {
            out.push(Candidate { vector: v, image });
        }
    };
    for a in adapted_directions(q) {
        let blk = alg.blocks()[a.block];
        let spinor = |s: usize| {
            let mut e = vec![GaussianRational::zero(); blk.spinor_dim];
            e[s] = GaussianRational::one();
            e
        };
        let mut tensors: Vec<(usize, &Vector)> = Vec::new();
        if let Some(u) = a.dirs.first() {
            tensors.extend((0..blk.spinor_dim).map(|s| (s, u)));
        }
        for s in 0..blk.spinor_dim {
            tensors.extend(a.perp.iter().map(|x| (s, x)));
        }
        for u in a.dirs.iter().skip(1) {
            tensors.extend((0..blk.spinor_dim).map(|s| (s, u)));
        }
        for (s, w) in tensors {
            push(alg.pure_tensor(a.block, &spinor(s), w).coeffs().to_vec());
        }
    }
    for j in 0..d {
        push(unit(j));
    }
    for j in 0..d {
        for l in j + 1..d {
            for p in &phases {
                let mut v = unit(j);
                v[l] = p.clone();
                push(v);
            }
        }
    }
    out
}

fn search(q: &Supercharge, map: &ExactMatrix, k: usize) -> Option<Vec<Vector>> {
    let alg = q.algebra();
    let cands = candidates(q, map);
    let n = alg.n();
    let mut chosen: Vec<usize> = Vec::new();
    let mut budget = SEARCH_BUDGET;

    fn dfs(
        cands: &[Candidate],
        alg: &super::SusyAlgebra,
        n: usize,
        k: usize,
        start: usize,
        chosen: &mut Vec<usize>,
        budget: &mut usize,
    ) -> bool {
        if chosen.len() == k {
            return true;
        }
        for idx in start..cands.len() {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            let c = &cands[idx];
            let mut images: Vec<Vector> = chosen.iter().map(|&i| cands[i].image.clone()).collect();
            images.push(c.image.clone());
            if span_dim(n, &images) <= chosen.len() {
                continue;
            }
            if !chosen.iter().all(|&i| is_zero_vec(&alg.bracket_vec(&cands[i].vector, &c.vector))) {
                continue;
            }
            chosen.push(idx);
            if dfs(cands, alg, n, k, idx + 1, chosen, budget) {
                return true;
            }
            chosen.pop();
        }
        false
    }

    dfs(&cands, alg, n, k, 0, &mut chosen, &mut budget)
        .then(|| chosen.iter().map(|&i| cands[i].vector.clone()).collect())
}
