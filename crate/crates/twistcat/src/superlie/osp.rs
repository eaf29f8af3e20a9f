//! Orthosymplectic supermatrix algebras and the finite superconformal algebras in 2d and 3d.
//!
//! Supermatrices act on `ℂ^{m|2k}` with the even coordinates first. The invariant form is
//! `G ⊕ Ω`, `G` symmetric on the even block and `Ω` symplectic on the odd block. An odd
//! supermatrix `[[0, A], [C, 0]]` preserves it exactly when `C = Ω⁻¹AᵀG`, so odd
//! generators are indexed by the entries of `A`.

use super::basis::{planes, preserving, spinor_rep, vector_rep, Basis};
use super::potential::AffinePotential;
use super::twist::{compatible_subspace, TwistingHom};
use super::{sector, Parity, SuperLieAlgebra, SuperLieBuilder, SuperLieError, Terms};
use crate::clifford::{self, Sector};
use crate::exactfield::{ExactMatrix, GaussianRational, Vector};

/// An orthosymplectic algebra together with its defining supermatrices.
#[derive(Debug, Clone)]
pub struct Osp {
    pub algebra: SuperLieAlgebra,
    pub matrices: Vec<ExactMatrix>,
    pub g: ExactMatrix,
    pub omega: ExactMatrix,
    basis: Basis,
}

fn half() -> GaussianRational {
    GaussianRational::from_fracs(1, 2, 0, 1)
}

fn block_diag(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let (m, p) = (a.rows(), b.rows());
    let mut x = ExactMatrix::zeros(m + p, m + p);
    for i in 0..m {
        for j in 0..m {
            x[(i, j)] = a[(i, j)].clone();
        }
    }
    for i in 0..p {
        for j in 0..p {
            x[(m + i, m + j)] = b[(i, j)].clone();
        }
    }
    x
}

fn odd_matrix(a: &ExactMatrix, c: &ExactMatrix) -> ExactMatrix {
    let (m, p) = (a.rows(), a.cols());
    let mut x = ExactMatrix::zeros(m + p, m + p);
    for i in 0..m {
        for j in 0..p {
            x[(i, m + j)] = a[(i, j)].clone();
            x[(m + j, i)] = c[(j, i)].clone();
        }
    }
    x
}

fn supercommutator(x: &ExactMatrix, px: Parity, y: &ExactMatrix, py: Parity) -> ExactMatrix {
    let s = Parity::koszul(px, py);
    x.mul(y).sub(&y.mul(x).scale(&s))
}

/// Whether a homogeneous supermatrix satisfies `B(Xu, v) + (−1)^{|X||u|} B(u, Xv) = 0`.
fn preserves(x: &ExactMatrix, parity: Parity, b: &ExactMatrix, m: usize) -> bool {
    let xtb = x.transpose().mul(b);
    let bx = b.mul(x);
    (0..b.rows()).all(|r| {
        let row_parity = if r < m { Parity::Even } else { Parity::Odd };
        let s = Parity::koszul(parity, row_parity);
        (0..b.cols()).all(|c| (&xtb[(r, c)] + &(&s * &bx[(r, c)])).is_zero())
    })
}

/// Structure constants of the span of homogeneous supermatrices under the supercommutator.
fn from_supermatrices(
    gens: Vec<(String, Parity, ExactMatrix)>,
    sectors: Vec<(&str, Vec<usize>)>,
) -> Result<(SuperLieAlgebra, Vec<ExactMatrix>, Basis), SuperLieError> {
    let mats: Vec<ExactMatrix> = gens.iter().map(|g| g.2.clone()).collect();
    let basis = Basis::of_matrices(&mats)
        .ok_or_else(|| SuperLieError::NotInSubspace("supermatrix generators are dependent".into()))?;
    let mut b = SuperLieBuilder::new();
    for (name, parity, _) in &gens {
        b.generator(name.clone(), *parity);
    }
    let d = gens.len();
    for i in 0..d {
        for j in i..d {
            let c = supercommutator(&gens[i].2, gens[i].1, &gens[j].2, gens[j].1);
            let coords = basis.matrix_coords(&c).ok_or_else(|| {
                SuperLieError::NotInSubspace(format!("[{}, {}] leaves the span", gens[i].0, gens[j].0))
            })?;
            let terms: Terms = coords.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).collect();
            b.set_bracket(i, j, terms);
        }
    }
    for (name, idx) in sectors {
        let vecs = idx
            .into_iter()
            .map(|i| {
                let mut e = vec![GaussianRational::zero(); d];
                e[i] = GaussianRational::one();
                e
            })
            .collect();
        b.sector(name, vecs);
    }
    Ok((b.build()?, mats, basis))
}

impl Osp {
    pub fn m(&self) -> usize {
        self.g.rows()
    }

    pub fn two_k(&self) -> usize {
        self.omega.rows()
    }

    /// Coordinates of a supermatrix in the generator basis.
    pub fn element(&self, x: &ExactMatrix) -> Result<Vector, SuperLieError> {
        self.basis
            .matrix_coords(x)
            .ok_or_else(|| SuperLieError::NotInSubspace("supermatrix outside the algebra".into()))
    }

    /// Supermatrix of an element.
    pub fn matrix(&self, v: &[GaussianRational]) -> ExactMatrix {
        let n = self.m() + self.two_k();
        ExactMatrix::from_entries(n, n, self.basis.combine(v)).expect("square supermatrix")
    }

    /// `[[X, 0], [0, Y]]`.
    pub fn even_supermatrix(&self, x: &ExactMatrix, y: &ExactMatrix) -> ExactMatrix {
        block_diag(x, y)
    }

    /// Odd generator index for the entry `(w, u)` of `A`.
    pub fn odd_index(&self, w: usize, u: usize) -> usize {
        self.algebra.even_dim() + w * self.two_k() + u
    }
}

/// `osp(G | Ω)` with an arbitrary symmetric `G` and symplectic `Ω`. Generators: a basis of
/// `so(G)` named `A…`, a basis of `sp(Ω)` named `B…`, and odd `F{w}_{u}`.
pub fn osp_from_forms(g: &ExactMatrix, omega: &ExactMatrix) -> Result<Osp, SuperLieError> {
    let so: Vec<ExactMatrix> = preserving(g);
    let sp: Vec<ExactMatrix> = preserving(omega);
    let (m, p) = (g.rows(), omega.rows());
    let zero_m = ExactMatrix::zeros(m, m);
    let zero_p = ExactMatrix::zeros(p, p);
    let mut gens = Vec::new();
    for (i, x) in so.iter().enumerate() {
        gens.push((format!("A{i}"), Parity::Even, block_diag(x, &zero_p)));
    }
    for (i, y) in sp.iter().enumerate() {
        gens.push((format!("B{i}"), Parity::Even, block_diag(&zero_m, y)));
    }
    gens.extend(odd_generators(g, omega)?);
    let so_idx: Vec<usize> = (0..so.len()).collect();
    let sp_idx: Vec<usize> = (so.len()..so.len() + sp.len()).collect();
    let odd_idx: Vec<usize> = (so.len() + sp.len()..gens.len()).collect();
    let (algebra, matrices, basis) =
        from_supermatrices(gens, vec![("so", so_idx), ("sp", sp_idx), (sector::ODD, odd_idx)])?;
    Ok(Osp { algebra, matrices, g: g.clone(), omega: omega.clone(), basis })
}

fn odd_generators(g: &ExactMatrix, omega: &ExactMatrix) -> Result<Vec<(String, Parity, ExactMatrix)>, SuperLieError> {
    let (m, p) = (g.rows(), omega.rows());
    let omega_inv = omega.inverse().ok_or_else(|| SuperLieError::Unsupported("degenerate symplectic form".into()))?;
    let form = block_diag(g, omega);
    let mut out = Vec::new();
    for w in 0..m {
        for u in 0..p {
            let mut a = ExactMatrix::zeros(m, p);
            a[(w, u)] = GaussianRational::one();
            let c = omega_inv.mul(&a.transpose()).mul(g);
            let x = odd_matrix(&a, &c);
            debug_assert!(preserves(&x, Parity::Odd, &form, m));
            out.push((format!("F{w}_{u}"), Parity::Odd, x));
        }
    }
    Ok(out)
}

/// `osp(m | 2k)` with hyperbolic `G` and standard `Ω`.
pub fn build_osp(m: usize, two_k: usize) -> Result<SuperLieAlgebra, SuperLieError> {
    if two_k % 2 == 1 {
        return Err(SuperLieError::Unsupported(format!("symplectic block of odd size {two_k}")));
    }
    if m + two_k == 0 {
        return Err(SuperLieError::Unsupported("empty supermatrix space".into()));
    }
    let g = crate::susy::hyperbolic_form(m);
    let omega = crate::susy::symplectic_form(two_k / 2);
    Ok(osp_from_forms(&g, &omega)?.algebra)
}

/// The even part of an orthosymplectic algebra is `so(m) ⊕ sp(2k)`: both sectors have the
/// classical dimensions, close under the bracket, commute with each other, and together
/// exhaust the even generators.
pub fn even_part_check(l: &SuperLieAlgebra, m: usize, two_k: usize) -> Result<bool, SuperLieError> {
    let so = l.sector("so")?;
    let sp = l.sector("sp")?;
    let k = two_k / 2;
    let dims = so.len() == m * m.saturating_sub(1) / 2 && sp.len() == k * (2 * k + 1);
    let commute = so.iter().all(|x| sp.iter().all(|y| crate::exactfield::is_zero_vec(&l.bracket(x, y))));
    let mut all = so.to_vec();
    all.extend(sp.iter().cloned());
    let exhaust = all.len() == l.even_dim() && Basis::new(all).is_some();
    Ok(dims && commute && exhaust && l.closes("so")? && l.closes("sp")?)
}

fn mode_name(prefix: &str, twice: i64) -> String {
    if twice % 2 == 0 {
        format!("{prefix}[{}]", twice / 2)
    } else {
        format!("{prefix}[{}/2]", twice)
    }
}

/// The global part of two commuting `𝒩 = 2` Neveu–Schwarz algebras: `L₋₁, L₀, L₁, J₀,
/// G^±_{±1/2}` and barred copies (prefix `Lb`, `Jb`, `Gb`). Weights are mode numbers.
///
/// Brackets: `[L_m, L_n] = (m−n)L_{m+n}`, `[L_m, G_r] = (m/2 − r)G_{m+r}`,
/// `[J₀, G^±_r] = ±G^±_r`, `[G⁺_r, G⁻_s] = L_{r+s} + ½(r−s)J_{r+s}`; the central term
/// `(r²/6 − 1/24)c` vanishes at `r = ±1/2`.
pub fn build_global_2d_superconformal() -> SuperLieAlgebra {
    let mut b = SuperLieBuilder::new();
    let mut copies = Vec::new();
    for (lp, jp, gp) in [("L", "J", "G"), ("Lb", "Jb", "Gb")] {
        let l: Vec<usize> =
            (-1..=1).map(|m| b.weighted(mode_name(lp, 2 * m), Parity::Even, GaussianRational::int(m))).collect();
        let j = b.weighted(mode_name(jp, 0), Parity::Even, GaussianRational::zero());
        let mut g = [[0usize; 2]; 2];
        for (si, sign) in ["+", "-"].iter().enumerate() {
            for (ri, r2) in [-1i64, 1].iter().enumerate() {
                g[si][ri] = b.weighted(
                    mode_name(&format!("{gp}{sign}"), *r2),
                    Parity::Odd,
                    GaussianRational::from_fracs(*r2, 2, 0, 1),
                );
            }
        }
        copies.push((l, j, g));
    }
    let gidx = |r2: i64| usize::from(r2 > 0);
    for (l, j, g) in &copies {
        let lm = |m: i64| l[(m + 1) as usize];
        for m in -1..=1i64 {
            for n in m + 1..=1 {
                let terms = if (m + n).abs() <= 1 { vec![(lm(m + n), GaussianRational::int(m - n))] } else { vec![] };
                b.set_bracket(lm(m), lm(n), terms);
            }
            for s in 0..2 {
                for r2 in [-1i64, 1] {
                    let target = 2 * m + r2;
                    let coeff = GaussianRational::from_fracs(m - r2, 2, 0, 1);
                    let terms = if target.abs() == 1 { vec![(g[s][gidx(target)], coeff)] } else { vec![] };
                    b.set_bracket(lm(m), g[s][gidx(r2)], terms);
                }
            }
        }
        for (s, sign) in [(0usize, 1i64), (1, -1)] {
            for r2 in [-1i64, 1] {
                b.set_bracket(*j, g[s][gidx(r2)], vec![(g[s][gidx(r2)], GaussianRational::int(sign))]);
            }
        }
        for r2 in [-1i64, 1] {
            for s2 in [-1i64, 1] {
                let total = r2 + s2;
                let mut terms = vec![(lm(total / 2), GaussianRational::one())];
                if total == 0 {
                    terms.push((*j, GaussianRational::from_fracs(r2 - s2, 4, 0, 1)));
                }
                b.set_bracket(g[0][gidx(r2)], g[1][gidx(s2)], terms);
            }
        }
    }
    let (lu, ju, _) = &copies[0];
    let (lb, jb, _) = &copies[1];
    let d = b.len();
    let vec_of = |terms: &[(usize, i64)]| {
        let mut v = vec![GaussianRational::zero(); d];
        for (k, c) in terms {
            v[*k] = GaussianRational::int(*c);
        }
        v
    };
    let odd: Vec<Vector> =
        (0..d).filter(|&k| b.generators[k].parity == Parity::Odd).map(|k| vec_of(&[(k, 1)])).collect();
    b.sector(sector::TRANSLATIONS, vec![vec_of(&[(lu[0], 1)]), vec_of(&[(lb[0], 1)])]);
    b.sector(sector::ROTATIONS, vec![vec_of(&[(lu[1], 1), (lb[1], -1)])]);
    b.sector(sector::DILATION, vec![vec_of(&[(lu[1], 1), (lb[1], 1)])]);
    b.sector(sector::R_SYMMETRY, vec![vec_of(&[(*ju, 1)]), vec_of(&[(*jb, 1)])]);
    b.sector(sector::ODD, odd);
    b.build().expect("well-formed global superconformal algebra")
}

/// The topological twist of the 2d `𝒩 = (2,2)` superconformal algebra for signs `α, β`.
#[derive(Debug, Clone)]
pub struct Superconformal2dTwist {
    pub algebra: SuperLieAlgebra,
    pub q: Vector,
    pub phi: TwistingHom,
    pub psi: AffinePotential,
}

fn sign_str(s: i64) -> &'static str {
    if s > 0 {
        "+"
    } else {
        "-"
    }
}

/// `Q = G^{−α}_{−1/2} + Ḡ^{β}_{−1/2}`, `φ(L₀ − L̄₀) = ½(αJ₀ + βJ̄₀)`,
/// `ψ(L₋₁) = G^α_{−1/2}`, `ψ(L̄₋₁) = Ḡ^{−β}_{−1/2}`, `ψ(L₀ − L̄₀) = G^α_{1/2} − Ḡ^{−β}_{1/2}`.
pub fn superconformal_2d_twist(alpha: i64, beta: i64) -> Result<Superconformal2dTwist, SuperLieError> {
    if alpha.abs() != 1 || beta.abs() != 1 {
        return Err(SuperLieError::Unsupported(format!("signs must be ±1, got ({alpha}, {beta})")));
    }
    let l = build_global_2d_superconformal();
    let one = GaussianRational::one;
    let q = l.element(&[
        (&format!("G{}[-1/2]", sign_str(-alpha)), one()),
        (&format!("Gb{}[-1/2]", sign_str(beta)), one()),
    ])?;
    let phi_image = l.element(&[
        ("J[0]", GaussianRational::from_fracs(alpha, 2, 0, 1)),
        ("Jb[0]", GaussianRational::from_fracs(beta, 2, 0, 1)),
    ])?;
    let phi = TwistingHom::full(&l, format!("phi_({alpha},{beta})"), vec![phi_image])?;
    let psi = AffinePotential {
        translations: vec![
            l.element(&[(&format!("G{}[-1/2]", sign_str(alpha)), one())])?,
            l.element(&[(&format!("Gb{}[-1/2]", sign_str(-beta)), one())])?,
        ],
        rotations: vec![l.element(&[
            (&format!("G{}[1/2]", sign_str(alpha)), one()),
            (&format!("Gb{}[1/2]", sign_str(-beta)), -one()),
        ])?],
    };
    Ok(Superconformal2dTwist { algebra: l, q, phi, psi })
}

/// The 3d `𝒩 = 4` superconformal algebra `osp(4|4)` with the twist of type `i₁`.
///
/// The odd block of `ℂ^{4|4}` is `C ⊗ S` with `C = ⟨c₊, c₋⟩`, `Ω = g ⊗ ε` (`g(c₊, c₋) = 1`),
/// coordinate `2·c + s`. Rotations act as `1 ⊗ ρ(r)`, translations as `|c₋⟩⟨c₊| ⊗ B`,
/// special conformal transformations as `|c₊⟩⟨c₋| ⊗ B`, and `D = diag(−½, ½) ⊗ 1`. The
/// even block `W = ℂ⁴` is identified with `S₁ ⊗ S₂` via `w₀ = e₀₀, w₁ = e₁₁, w₂ = e₀₁,
/// w₃ = −e₁₀`, so that `ε ⊗ ε` becomes the hyperbolic form; `i₁` and `i₂` act through
/// the first and second factor. `Σ` is spanned by odd generators with `u ∈ c₊ ⊗ S`, `Σ*`
/// by those with `u ∈ c₋ ⊗ S`.
#[derive(Debug, Clone)]
pub struct Superconformal3d {
    pub osp: Osp,
    pub q: Vector,
    pub phi_i1: TwistingHom,
    pub phi_i2: TwistingHom,
    pub psi: AffinePotential,
}

fn outer(rows: usize, cols: usize, r: usize, c: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(rows, cols);
    m[(r, c)] = GaussianRational::one();
    m
}

/// Map `T: V → sl(2)` with `[ρ(r), T(v)] = T(r·v)`.
fn vector_to_sl2(rho: &[ExactMatrix], vrep: &[ExactMatrix]) -> Result<Vec<ExactMatrix>, SuperLieError> {
    // Unknown T[k][mu]: entry k of the flattened 2x2 image of e_mu, column k*3 + mu.
    let mut sys = crate::exactfield::SparseSystem::new(12);
    for (r, v) in rho.iter().zip(vrep) {
        for mu in 0..3 {
            for k in 0..4 {
                let (a, b) = (k / 2, k % 2);
                let mut row = Vec::new();
                // ([ρ, B_mu])_{ab} = Σ_c ρ_{ac} B_{cb} − B_{ac} ρ_{cb}
                for c in 0..2 {
                    row.push(((c * 2 + b) * 3 + mu, r[(a, c)].clone()));
                    row.push(((a * 2 + c) * 3 + mu, -&r[(c, b)]));
                }
                // − Σ_nu v_{nu mu} B_nu
                for nu in 0..3 {
                    row.push((k * 3 + nu, -&v[(nu, mu)]));
                }
                sys.push(row);
            }
        }
    }
    let kernel = sys.kernel();
    let t = kernel.first().ok_or_else(|| SuperLieError::Unsupported("no equivariant map V → sl(2)".into()))?;
    Ok((0..3)
        .map(|mu| ExactMatrix::from_entries(2, 2, (0..4).map(|k| t[k * 3 + mu].clone()).collect()).expect("2x2"))
        .collect())
}

pub fn superconformal_3d() -> Result<Superconformal3d, SuperLieError> {
    let model = clifford::model(3).map_err(|e| SuperLieError::Unsupported(e.to_string()))?;
    let pls = planes(3);
    let rho: Vec<ExactMatrix> = pls.iter().map(|&(i, j)| spinor_rep(model, Sector::Full, i, j)).collect();
    let vrep: Vec<ExactMatrix> = pls.iter().map(|&(i, j)| vector_rep(3, i, j)).collect();
    let b_of_v = vector_to_sl2(&rho, &vrep)?;

    let g = crate::susy::hyperbolic_form(4);
    let g2 = ExactMatrix::from_int_rows(&[&[0, 1], &[1, 0]]);
    let eps = ExactMatrix::from_int_rows(&[&[0, 1], &[-1, 0]]);
    let omega = g2.kron(&eps);
    let i2 = ExactMatrix::identity(2);
    let z4 = ExactMatrix::zeros(4, 4);
    let e_minus_plus = outer(2, 2, 1, 0);
    let e_plus_minus = outer(2, 2, 0, 1);
    let dil = ExactMatrix::diagonal(&[-half(), half()]).kron(&i2);

    let mut gens: Vec<(String, Parity, ExactMatrix)> = Vec::new();
    for (&(i, j), r) in pls.iter().zip(&rho) {
        gens.push((format!("M{i}{j}"), Parity::Even, block_diag(&z4, &i2.kron(r))));
    }
    for (mu, bm) in b_of_v.iter().enumerate() {
        gens.push((format!("P{mu}"), Parity::Even, block_diag(&z4, &e_minus_plus.kron(bm))));
    }
    for (mu, bm) in b_of_v.iter().enumerate() {
        gens.push((format!("K{mu}"), Parity::Even, block_diag(&z4, &e_plus_minus.kron(bm))));
    }
    gens.push(("D".into(), Parity::Even, block_diag(&z4, &dil)));
    let so_g = preserving(&g);
    for (k, x) in so_g.iter().enumerate() {
        gens.push((format!("R{k}"), Parity::Even, block_diag(x, &z4)));
    }
    gens.extend(odd_generators(&g, &omega)?);
    let form = block_diag(&g, &omega);
    if let Some((name, ..)) = gens.iter().find(|(_, p, x)| !preserves(x, *p, &form, 4)) {
        return Err(SuperLieError::NotInSubspace(format!("{name} does not preserve the form")));
    }
    let range = |a: usize, b: usize| (a..b).collect::<Vec<usize>>();
    let sigma: Vec<usize> = (0..4).flat_map(|w| [w * 4, w * 4 + 1]).map(|k| 16 + k).collect();
    let sigma_dual: Vec<usize> = (0..4).flat_map(|w| [w * 4 + 2, w * 4 + 3]).map(|k| 16 + k).collect();
    let (algebra, matrices, basis) = from_supermatrices(
        gens,
        vec![
            (sector::ROTATIONS, range(0, 3)),
            (sector::TRANSLATIONS, range(3, 6)),
            (sector::SPECIAL_CONFORMAL, range(6, 9)),
            (sector::DILATION, range(9, 10)),
            (sector::R_SYMMETRY, range(10, 16)),
            (sector::ODD, range(16, 32)),
            (sector::SIGMA, sigma),
            (sector::SIGMA_DUAL, sigma_dual),
        ],
    )?;
    let osp = Osp { algebra, matrices, g: g.clone(), omega, basis };

    // W-coordinates from S₁ ⊗ S₂ coordinates (index 2a + b).
    let mut u = ExactMatrix::zeros(4, 4);
    for (k, (e, sgn)) in [(0usize, 1i64), (3, 1), (1, 1), (2, -1)].into_iter().enumerate() {
        u[(e, k)] = GaussianRational::int(sgn);
    }
    let eps2 = eps.kron(&eps);
    debug_assert_eq!(u.transpose().mul(&eps2).mul(&u), g);
    let u_inv = u.inverse().expect("invertible change of basis");
    let hom = |first: bool, name: &str| -> Result<TwistingHom, SuperLieError> {
        let images = rho
            .iter()
            .map(|r| {
                let a = if first { r.kron(&i2) } else { i2.kron(r) };
                let x = u_inv.mul(&a).mul(&u);
                osp.element(&block_diag(&x, &z4))
            })
            .collect::<Result<Vec<_>, _>>()?;
        TwistingHom::full(&osp.algebra, name.to_string(), images)
    };
    let phi_i1 = hom(true, "i1")?;
    let phi_i2 = hom(false, "i2")?;

    // Σ elements from tensors c[a][b][t] over S₁ ⊗ S₂ ⊗ S, on the c₊ (Σ) or c₋ (Σ*) side.
    let l = &osp.algebra;
    let from_tensor = |c: &dyn Fn(usize, usize, usize) -> GaussianRational, dual: bool| -> Vector {
        let mut v = l.zero();
        for a in 0..2 {
            for bb in 0..2 {
                let mut e = vec![GaussianRational::zero(); 4];
                e[a * 2 + bb] = GaussianRational::one();
                let w = u_inv.mul_vec(&e);
                for t in 0..2 {
                    let x = c(a, bb, t);
                    if x.is_zero() {
                        continue;
                    }
                    let col = if dual { 2 + t } else { t };
                    for (wi, wc) in w.iter().enumerate() {
                        if !wc.is_zero() {
                            v[osp.odd_index(wi, col)] += &x * wc;
                        }
                    }
                }
            }
        }
        v
    };
    // Σ_b: tensors supported on the S₂ basis vector b.
    let slice = |b: usize, dual: bool| -> Vec<Vector> {
        (0..2)
            .flat_map(|a| (0..2).map(move |t| (a, t)))
            .map(|(a, t)| {
                from_tensor(
                    &|x, y, z| if (x, y, z) == (a, b, t) { GaussianRational::one() } else { GaussianRational::zero() },
                    dual,
                )
            })
            .collect()
    };
    let compatible = compatible_subspace(l, &phi_i1, &slice(0, false))?;
    let q = compatible
        .first()
        .cloned()
        .ok_or_else(|| SuperLieError::NotInSubspace("no i1-compatible supercharge in Σ".into()))?;

    // V ⊗ s: the image of the twisted rotations on the s-slice.
    let twisted_image = |vs: &[Vector]| -> Vec<Vector> {
        let mut out = Vec::new();
        for (r, p) in phi_i1.domain.iter().zip(&phi_i1.images) {
            let t = crate::exactfield::add_vec(r, p);
            for x in vs {
                out.push(l.bracket(&t, x));
            }
        }
        crate::exactfield::span_basis(l.dim(), &out)
    };
    let a = twisted_image(&slice(1, false));
    let a_dual = twisted_image(&slice(1, true));
    let solve_in = |span: &[Vector], target: &Vector| -> Result<Vector, SuperLieError> {
        let cols: Vec<Vector> = span.iter().map(|x| l.bracket(&q, x)).collect();
        let m = ExactMatrix::from_columns(l.dim(), &cols);
        let c = m.solve(target).ok_or_else(|| SuperLieError::NotInSubspace("[Q, -] does not reach target".into()))?;
        let mut out = l.zero();
        for (x, v) in c.iter().zip(span) {
            out = crate::exactfield::add_vec(&out, &crate::exactfield::scale_vec(v, x));
        }
        Ok(out)
    };
    let translations =
        l.sector(sector::TRANSLATIONS)?.iter().map(|v| solve_in(&a, v)).collect::<Result<Vec<_>, _>>()?;
    let rotations = phi_i1
        .domain
        .iter()
        .zip(&phi_i1.images)
        .map(|(r, p)| solve_in(&a_dual, &crate::exactfield::add_vec(r, p)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Superconformal3d { q, phi_i1, phi_i2, psi: AffinePotential { rotations, translations }, osp })
}
