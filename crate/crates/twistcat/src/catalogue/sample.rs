use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{expected_table, CatalogueError, PairingConstraint, Recipe};
use crate::clifford::{self, Sector, Spinor};
use crate::exactfield::{is_zero_vec, scale_vec, sub_vec, ExactMatrix, GaussianRational, Vector};
use crate::octonion::{clifford_transport, image_sector10, ComplexOctonion, OctonionicSpinor};
use crate::sampling::{self, nonzero_gaussian, random_nonzero_vector, random_real_vector, SampleRng};
use crate::susy::{self, build_susy, classify, is_square_zero, AuxCount, AuxKind, Supercharge, SusyAlgebra};

const ATTEMPTS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub dim: usize,
    pub aux: AuxCount,
    /// Index into [`expected_table`].
    pub class: usize,
    pub seed: u64,
    pub bound: i64,
}

/// A square-zero supercharge of the requested class, replayed through [`classify`].
pub fn sample_square_zero(spec: &SampleSpec) -> Result<Supercharge, CatalogueError> {
    let table = expected_table(spec.dim, spec.aux)?;
    let class = table.get(spec.class).ok_or_else(|| CatalogueError::NoSuchClass {
        dim: spec.dim,
        aux: spec.aux.to_string(),
        index: spec.class,
    })?;
    let alg = build_susy(spec.dim, spec.aux)?;
    let mut rng = sampling::rng(spec.seed);
    let mut last = String::from("every draw was degenerate");
    for _ in 0..ATTEMPTS {
        let Some(q) = construct(&class.sampler, &alg, &mut rng, spec.bound.max(1))? else { continue };
        if !is_square_zero(&q) {
            last = "constructed supercharge is not square-zero".into();
            continue;
        }
        let c = classify(&q)?;
        if class.matches(&c) {
            return Ok(q);
        }
        last = format!("landed in {} {} with {} directions", c.rank, c.label, c.invariant_directions);
    }
    Err(CatalogueError::SamplerFailed { class: class.key(), detail: last })
}

fn construct(
    recipe: &Recipe,
    alg: &Arc<SusyAlgebra>,
    rng: &mut SampleRng,
    bound: i64,
) -> Result<Option<Supercharge>, CatalogueError> {
    Ok(match recipe {
        Recipe::Isotropic { ranks, alt, pairing } => isotropic(alg, ranks, *alt, *pairing, rng, bound),
        Recipe::DualPair { ranks } => dual_pair(alg, *ranks, rng, bound),
        Recipe::SymplecticFull => symplectic_full(alg, rng, bound),
        Recipe::Hodge6 => hodge6(alg, rng, bound)?,
        Recipe::Octonion7 { rank, pure } => octonion7(alg, *rank, *pure, rng, bound)?,
        Recipe::Octonion8 { blocks, pure } => octonion8(alg, *blocks, *pure, rng, bound)?,
        Recipe::Octonion9 => octonion9(alg, rng, bound)?,
        Recipe::PureWeyl => pure_weyl(alg, rng, bound)?,
    })
}

fn unit(len: usize, i: usize) -> Vector {
    let mut e = vec![GaussianRational::zero(); len];
    e[i] = GaussianRational::one();
    e
}

fn outer(x: &[GaussianRational], y: &[GaussianRational]) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(x.len(), y.len());
    for (i, a) in x.iter().enumerate() {
        for (j, b) in y.iter().enumerate() {
            m[(i, j)] = a * b;
        }
    }
    m
}

/// Random element of the isometry group of a symmetric (`O`, even products of reflections)
/// or antisymmetric (`Sp`, transvections) form.
fn random_isometry(form: &ExactMatrix, rng: &mut SampleRng, bound: i64) -> ExactMatrix {
    let k = form.rows();
    let mut g = ExactMatrix::identity(k);
    if k == 0 {
        return g;
    }
    let two = GaussianRational::int(2);
    let mut steps = 0;
    while steps < 4 {
        let v = random_nonzero_vector(rng, k, bound);
        let fv = form.transpose().mul_vec(&v);
        let step = if form.is_symmetric() {
            let c = form.bilinear(&v, &v);
            if c.is_zero() {
                continue;
            }
            let factor = &two / &c;
            ExactMatrix::identity(k).sub(&outer(&v, &scale_vec(&fv, &factor)))
        } else {
            let t = nonzero_gaussian(rng, bound);
            // x ↦ x + t·ω(v, x)·v
            ExactMatrix::identity(k).add(&outer(&scale_vec(&v, &t), &fv))
        };
        g = step.mul(&g);
        steps += 1;
    }
    debug_assert!(g.transpose().mul(form).mul(&g) == *form);
    g
}

fn random_invertible(k: usize, rng: &mut SampleRng, bound: i64) -> ExactMatrix {
    loop {
        let entries = sampling::random_vector(rng, k * k, bound);
        let m = ExactMatrix::from_entries(k, k, entries).expect("square");
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Move `q` by a random element of the R-symmetry group.
fn random_frame(q: &Supercharge, rng: &mut SampleRng, bound: i64) -> Supercharge {
    let alg = q.algebra();
    let aux = alg.aux();
    let mats: Vec<ExactMatrix> = match aux.kind {
        AuxKind::DualPair => {
            let k = &aux.forms[0];
            let a = random_invertible(k.rows(), rng, bound);
            // Aᵀ K B = K
            let b = k.inverse().expect("pairing").mul(&a.transpose().inverse().expect("invertible")).mul(k);
            vec![q.block_matrix(0).mul(&a.transpose()), q.block_matrix(1).mul(&b.transpose())]
        }
        _ => (0..alg.blocks().len())
            .map(|b| q.block_matrix(b).mul(&random_isometry(&aux.forms[b], rng, bound).transpose()))
            .collect(),
    };
    alg.from_blocks(&mats)
}

/// Standard isotropic vectors of a hyperbolic or symplectic form.
fn isotropic_vectors(k: usize, r: usize, alt: bool) -> Option<Vec<Vector>> {
    let idx: Vec<usize> = if alt { vec![0, 3] } else { (0..r).map(|j| 2 * j).collect() };
    let idx = &idx[..r.min(idx.len())];
    if idx.len() < r || idx.iter().any(|&i| i >= k) || (k % 2 == 1 && idx.contains(&(k - 1))) {
        return None;
    }
    Some(idx.iter().map(|&i| unit(k, i)).collect())
}

/// `v ↦ ⟨x, v⟩` on a block's spinor coordinates, as a vector of coefficients.
fn pairing_functional(alg: &SusyAlgebra, sx: Sector, x: &[GaussianRational], sy: Sector) -> Vector {
    let model = alg.clifford();
    let n = alg.n();
    let xf = model.embed(&Spinor::new(n, sx, x.to_vec()));
    (0..model.sector_dim(sy))
        .map(|i| model.scalar_pairing(&xf, &model.embed(&Spinor::new(n, sy, unit(model.sector_dim(sy), i)))))
        .collect()
}

fn isotropic(
    alg: &Arc<SusyAlgebra>,
    ranks: &[usize],
    alt: bool,
    pairing: Option<PairingConstraint>,
    rng: &mut SampleRng,
    bound: i64,
) -> Option<Supercharge> {
    let blocks = alg.blocks();
    if ranks.len() != blocks.len() {
        return None;
    }
    let mut factors: Vec<(usize, Vector)> = Vec::new();
    let mut frames: Vec<Vec<Vector>> = Vec::new();
    for (b, (&r, blk)) in ranks.iter().zip(blocks).enumerate() {
        frames.push(isotropic_vectors(blk.aux_dim, r, alt)?);
        for _ in 0..r {
            factors.push((b, random_nonzero_vector(rng, blk.spinor_dim, bound)));
        }
    }
    if let Some(constraint) = pairing {
        let [(b1, x), (b2, y), ..] = &mut factors[..] else { return None };
        let f = pairing_functional(alg, blocks[*b1].sector, x, blocks[*b2].sector);
        let value = crate::exactfield::dot(&f, y);
        match constraint {
            PairingConstraint::Zero => {
                let k = f.iter().position(|c| !c.is_zero())?;
                let shift = scale_vec(&unit(f.len(), k), &(&value / &f[k]));
                *y = sub_vec(y, &shift);
            }
            PairingConstraint::Nonzero if value.is_zero() => return None,
            PairingConstraint::Nonzero => {}
        }
    }
    let mut q = alg.zero();
    let mut used = vec![0; blocks.len()];
    for (b, s) in &factors {
        let w = &frames[*b][used[*b]];
        used[*b] += 1;
        q = q.add(&alg.pure_tensor(*b, s, w)).ok()?;
    }
    Some(random_frame(&q, rng, bound))
}

fn dual_pair(alg: &Arc<SusyAlgebra>, ranks: [usize; 2], rng: &mut SampleRng, bound: i64) -> Option<Supercharge> {
    let k = alg.blocks()[0].aux_dim;
    if ranks[0] + ranks[1] > k {
        return None;
    }
    let mut q = alg.zero();
    for (b, offset) in [(0, 0), (1, ranks[0])] {
        for j in 0..ranks[b] {
            let s = random_nonzero_vector(rng, alg.blocks()[b].spinor_dim, bound);
            q = q.add(&alg.pure_tensor(b, &s, &unit(k, offset + j))).ok()?;
        }
    }
    Some(random_frame(&q, rng, bound))
}

fn symplectic_full(alg: &Arc<SusyAlgebra>, rng: &mut SampleRng, bound: i64) -> Option<Supercharge> {
    let c = alg.clifford().pairing_conjugation();
    let p = crate::superlie::darboux(c)?;
    if p.cols() != alg.blocks()[0].aux_dim {
        return None;
    }
    let q = alg.from_blocks(&[p.scale(&nonzero_gaussian(rng, bound))]);
    Some(random_frame(&q, rng, bound))
}

/// `Q₋` random of rank 2; `Q₊ = x₁⊗w₀ + λ·x₂⊗w₁` on the 2-plane of `S₊` annihilated by
/// `[Q₋, Q₋]`, with `λ` solving `[Q, Q] = 0`.
fn hodge6(alg: &Arc<SusyAlgebra>, rng: &mut SampleRng, bound: i64) -> Result<Option<Supercharge>, CatalogueError> {
    let blocks = alg.blocks();
    let model = alg.clifford();
    let n = alg.n();
    let (kp, km) = (blocks[0].aux_dim, blocks[1].aux_dim);
    if kp != 2 || km != 2 {
        return Ok(None);
    }
    let t1 = random_nonzero_vector(rng, blocks[1].spinor_dim, bound);
    let t2 = random_nonzero_vector(rng, blocks[1].spinor_dim, bound);
    let qm = alg.pure_tensor(1, &t1, &unit(2, 0)).add(&alg.pure_tensor(1, &t2, &unit(2, 1)))?;
    let u = susy::bracket(&qm, &qm)?;
    if is_zero_vec(&u) {
        return Ok(None);
    }
    let dp = blocks[0].spinor_dim;
    let cols: Vec<Vector> = (0..dp)
        .map(|i| model.clifford_action(&u, &model.embed(&Spinor::new(n, blocks[0].sector, unit(dp, i)))))
        .collect();
    let plane = ExactMatrix::from_columns(model.spinor_dim(), &cols).kernel();
    if plane.len() != 2 {
        return Ok(None);
    }
    let mix = random_invertible(2, rng, bound);
    let x: Vec<Vector> = (0..2)
        .map(|r| crate::exactfield::add_vec(&scale_vec(&plane[0], &mix[(r, 0)]), &scale_vec(&plane[1], &mix[(r, 1)])))
        .collect();
    let a = qm.add(&alg.pure_tensor(0, &x[0], &unit(2, 0)))?;
    let c = alg.pure_tensor(0, &x[1], &unit(2, 1));
    let w = susy::bracket(&a, &c)?;
    let Some(k) = w.iter().position(|x| !x.is_zero()) else { return Ok(None) };
    let lambda = -(&u[k] / &(&GaussianRational::int(2) * &w[k]));
    let q = a.add(&c.scale(&lambda))?;
    Ok(Some(random_frame(&q, rng, bound)))
}

/// A rational unit imaginary octonion, by inverse stereographic projection.
fn unit_imaginary(rng: &mut SampleRng, bound: i64) -> ComplexOctonion {
    let p = random_real_vector(rng, 6, bound);
    let norm2 = p.iter().fold(GaussianRational::zero(), |acc, x| &acc + &(x * x));
    let denom = &norm2 + &GaussianRational::one();
    let mut c: [GaussianRational; 8] = std::array::from_fn(|_| GaussianRational::zero());
    for (i, x) in p.iter().enumerate() {
        c[i + 1] = &(&GaussianRational::int(2) * x) / &denom;
    }
    c[7] = &(&norm2 - &GaussianRational::one()) / &denom;
    ComplexOctonion::new(c)
}

/// `x + i·x·u` for real `x` and unit imaginary `u`; its norm vanishes.
fn null_octonion(rng: &mut SampleRng, bound: i64) -> ComplexOctonion {
    let x = ComplexOctonion::from_slice(&random_nonzero_real(rng, 8, bound));
    let u = unit_imaginary(rng, bound);
    let i = GaussianRational::from_ints(0, 1);
    let a = &x + &x.mul(&u).scale(&i);
    a.scale(&nonzero_gaussian(rng, bound))
}

fn random_nonzero_real(rng: &mut SampleRng, len: usize, bound: i64) -> Vector {
    loop {
        let v = random_real_vector(rng, len, bound);
        if !is_zero_vec(&v) {
            return v;
        }
    }
}

fn generic_octonion(rng: &mut SampleRng, bound: i64) -> ComplexOctonion {
    ComplexOctonion::from_slice(&random_nonzero_vector(rng, 8, bound))
}

/// A random element of the kernel of the linear map `x ↦ f(x)` on octonions.
fn random_in_kernel(
    f: impl Fn(&ComplexOctonion) -> ComplexOctonion,
    rng: &mut SampleRng,
    bound: i64,
) -> Option<ComplexOctonion> {
    let cols: Vec<Vector> = (0..8).map(|k| f(&ComplexOctonion::unit(k)).to_vec()).collect();
    let ker = ExactMatrix::from_columns(8, &cols).kernel();
    if ker.is_empty() {
        return None;
    }
    let c = random_nonzero_vector(rng, ker.len(), bound);
    let v = ker
        .iter()
        .zip(&c)
        .fold(vec![GaussianRational::zero(); 8], |acc, (k, x)| crate::exactfield::add_vec(&acc, &scale_vec(k, x)));
    Some(ComplexOctonion::from_slice(&v))
}

fn octonion7(
    alg: &Arc<SusyAlgebra>,
    rank: usize,
    pure: bool,
    rng: &mut SampleRng,
    bound: i64,
) -> Result<Option<Supercharge>, CatalogueError> {
    if alg.blocks()[0].aux_dim != 2 {
        return Ok(None);
    }
    let a = if pure { null_octonion(rng, bound) } else { generic_octonion(rng, bound) };
    let b = match rank {
        1 => a.scale(&sampling::small_gaussian(rng, bound)),
        _ => match random_in_kernel(|x| crate::octonion::cross7(&a, x), rng, bound) {
            Some(b) => b,
            None => return Ok(None),
        },
    };
    let t = clifford_transport(&OctonionicSpinor::new(7, a, b))?;
    let q = alg.pure_tensor(0, &t.spinors[0].coeffs, &unit(2, 0)).add(&alg.pure_tensor(
        0,
        &t.spinors[1].coeffs,
        &unit(2, 1),
    ))?;
    Ok(Some(random_frame(&q, rng, bound)))
}

/// Place transported Weyl spinors into the blocks with matching chirality.
fn from_weyl(alg: &Arc<SusyAlgebra>, spinors: &[Spinor]) -> Result<Supercharge, CatalogueError> {
    let mut q = alg.zero();
    for (b, blk) in alg.blocks().iter().enumerate() {
        if blk.aux_dim == 0 {
            continue;
        }
        if let Some(s) = spinors.iter().find(|s| s.sector == blk.sector) {
            q = q.add(&alg.pure_tensor(b, &s.coeffs, &unit(blk.aux_dim, 0)))?;
        }
    }
    Ok(q)
}

fn octonion8(
    alg: &Arc<SusyAlgebra>,
    blocks: [bool; 2],
    pure: bool,
    rng: &mut SampleRng,
    bound: i64,
) -> Result<Option<Supercharge>, CatalogueError> {
    let pick = |rng: &mut SampleRng| if pure { null_octonion(rng, bound) } else { generic_octonion(rng, bound) };
    let (a, b) = match blocks {
        // The first octonion slot transports into the second block.
        [true, false] => (ComplexOctonion::zero(), pick(rng)),
        [false, true] => (pick(rng), ComplexOctonion::zero()),
        _ => {
            let a = null_octonion(rng, bound);
            match random_in_kernel(|x| a.mul(x), rng, bound) {
                Some(b) => (a, b),
                None => return Ok(None),
            }
        }
    };
    let t = clifford_transport(&OctonionicSpinor::new(8, a, b))?;
    let q = from_weyl(alg, &t.spinors)?;
    Ok(Some(random_frame(&q, rng, bound)))
}

fn octonion9(alg: &Arc<SusyAlgebra>, rng: &mut SampleRng, bound: i64) -> Result<Option<Supercharge>, CatalogueError> {
    let a = null_octonion(rng, bound);
    let Some(b) = random_in_kernel(|x| a.mul(x), rng, bound) else { return Ok(None) };
    let t = clifford_transport(&OctonionicSpinor::new(9, a, b))?;
    Ok(Some(alg.pure_tensor(0, &t.spinors[0].coeffs, &unit(1, 0)).scale(&nonzero_gaussian(rng, bound))))
}

fn pure_weyl(alg: &Arc<SusyAlgebra>, rng: &mut SampleRng, bound: i64) -> Result<Option<Supercharge>, CatalogueError> {
    let Some(blk) = alg.blocks().iter().find(|b| b.aux_dim > 0) else { return Ok(None) };
    let s = if blk.sector == image_sector10()? && rng.gen_bool(0.5) {
        let a = null_octonion(rng, bound);
        let Some(b) = random_in_kernel(|x| a.mul(x), rng, bound) else { return Ok(None) };
        clifford_transport(&OctonionicSpinor::new(10, a, b))?.spinors.remove(0)
    } else {
        clifford::random_pure_spinor(alg.clifford(), blk.sector, rng, bound)
    };
    if s.is_zero() {
        return Ok(None);
    }
    Ok(Some(from_weyl(alg, &[s])?))
}

/// Generic rejection sampling for dimensions 1 and 2, where each block has a one-dimensional
/// spinor space: draw `w` and solve the hyperbolic partner coordinate so that `⟨w, w⟩ = 0`.
/// Blocks are independently left empty with probability one quarter. `None` elsewhere.
pub fn generic_square_zero(alg: &Arc<SusyAlgebra>, rng: &mut SampleRng, bound: i64) -> Option<Supercharge> {
    if alg.n() > 2 || alg.aux().kind != AuxKind::Symmetric {
        return None;
    }
    let mats: Vec<ExactMatrix> = alg
        .blocks()
        .iter()
        .enumerate()
        .map(|(b, blk)| {
            let k = blk.aux_dim;
            let mut m = ExactMatrix::zeros(1, k);
            if k < 2 || rng.gen_bool(0.25) {
                return m;
            }
            let form = &alg.aux().forms[b];
            let mut w = sampling::random_vector(rng, k, bound);
            if w[1].is_zero() {
                w[1] = GaussianRational::one();
            }
            w[0] = GaussianRational::zero();
            let rest = form.bilinear(&w, &w);
            w[0] = -(&rest / &(&GaussianRational::int(2) * &w[1]));
            for (j, x) in w.into_iter().enumerate() {
                m[(0, j)] = x;
            }
            m
        })
        .collect();
    let q = alg.from_blocks(&mats);
    (!q.is_zero()).then_some(q)
}
