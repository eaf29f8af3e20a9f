use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{is_square_zero, AuxCount, Supercharge, SusyError};
use crate::clifford::{self, Spinor};
use crate::exactfield::{is_zero_vec, span_dim, ExactMatrix, GaussianRational, Vector};
use crate::octonion::{octonionic_coordinates, octonionic_invariants};

/// Rank of `Q` as a map `S* → W` (odd n) or the pair of ranks of its two chiral blocks (even n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Rank {
    Single(usize),
    Pair(usize, usize),
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Single(r) => write!(f, "{r}"),
            Rank::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwistLabel {
    Topological,
    Holomorphic,
    /// Square-zero with `k` invariant directions, neither topological nor holomorphic.
    HolomorphicTopological(usize),
    NotSquareZero,
    Degenerate,
}

impl TwistLabel {
    pub fn from_directions(n: usize, directions: usize) -> TwistLabel {
        if directions == n {
            TwistLabel::Topological
        } else if n.is_multiple_of(2) && 2 * directions == n {
            TwistLabel::Holomorphic
        } else {
            TwistLabel::HolomorphicTopological(directions)
        }
    }
}

impl fmt::Display for TwistLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwistLabel::Topological => f.write_str("topological"),
            TwistLabel::Holomorphic => f.write_str("holomorphic"),
            TwistLabel::HolomorphicTopological(k) => write!(f, "holomorphic_topological({k})"),
            TwistLabel::NotSquareZero => f.write_str("not_square_zero"),
            TwistLabel::Degenerate => f.write_str("degenerate"),
        }
    }
}

impl FromStr for TwistLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "topological" => Ok(TwistLabel::Topological),
            "holomorphic" => Ok(TwistLabel::Holomorphic),
            "not_square_zero" => Ok(TwistLabel::NotSquareZero),
            "degenerate" => Ok(TwistLabel::Degenerate),
            _ => s
                .strip_prefix("holomorphic_topological(")
                .and_then(|r| r.strip_suffix(')'))
                .and_then(|k| k.parse().ok())
                .map(TwistLabel::HolomorphicTopological)
                .ok_or_else(|| format!("unknown label {s:?}")),
        }
    }
}

impl Serialize for TwistLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TwistLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExtraValue {
    Bool(bool),
    Count(usize),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistClass {
    pub rank: Rank,
    pub invariant_directions: usize,
    pub label: TwistLabel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pure: Option<bool>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, ExtraValue>,
}

fn column_space(m: &ExactMatrix) -> Vec<Vector> {
    m.image_basis()
}

fn row_space(m: &ExactMatrix) -> Vec<Vector> {
    m.transpose().image_basis()
}

pub fn rank(q: &Supercharge) -> Rank {
    let r: Vec<usize> = (0..q.algebra().blocks().len()).map(|b| q.block_matrix(b).rank()).collect();
    match r[..] {
        [a] => Rank::Single(a),
        [a, b] => Rank::Pair(a, b),
        _ => unreachable!("Σ has one or two blocks"),
    }
}

/// Basis of `S_Q`, the image of `[Q, −] : Σ → V`.
pub fn image_subspace(q: &Supercharge) -> Result<Vec<Vector>, SusyError> {
    if q.is_zero() {
        return Err(SusyError::ZeroSupercharge);
    }
    Ok(q.algebra().bracket_map(q.coeffs()).image_basis())
}

pub fn invariant_directions(q: &Supercharge) -> Result<usize, SusyError> {
    Ok(image_subspace(q)?.len())
}

fn is_minimal(n: usize, count: AuxCount) -> bool {
    match n {
        7..=9 => count == AuxCount::Single(1),
        10 => matches!(count, AuxCount::Pair(1, 0) | AuxCount::Pair(0, 1)),
        _ => false,
    }
}

/// Whether every spinor in the span of the spinor factors of `Q` is pure.
///
/// The pure cone is cut out by quadrics in the relevant cases, so the basis and its pairwise
/// sums are tested.
fn spinor_factors_pure(q: &Supercharge) -> Result<bool, SusyError> {
    let alg = q.algebra();
    let model = alg.clifford();
    for (b, blk) in alg.blocks().iter().enumerate() {
        if blk.is_empty() {
            continue;
        }
        let basis = column_space(&q.block_matrix(b));
        let mut probes = basis.clone();
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                probes.push(basis[i].iter().zip(&basis[j]).map(|(x, y)| x + y).collect());
            }
        }
        for v in probes {
            if !model.is_pure(&Spinor::new(alg.n(), blk.sector, v))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Purity of `Q`, defined for `n ≥ 7` with minimal supersymmetry.
pub fn pure_flag(q: &Supercharge) -> Result<Option<bool>, SusyError> {
    let alg = q.algebra();
    if q.is_zero() || !is_minimal(alg.n(), alg.aux().count) {
        return Ok(None);
    }
    spinor_factors_pure(q).map(Some)
}

pub fn classify(q: &Supercharge) -> Result<TwistClass, SusyError> {
    let n = q.dim();
    let rank = rank(q);
    if q.is_zero() {
        return Ok(TwistClass {
            rank,
            invariant_directions: 0,
            label: TwistLabel::Degenerate,
            pure: None,
            extra: BTreeMap::new(),
        });
    }
    let invariant_directions = invariant_directions(q)?;
    let square_zero = is_square_zero(q);
    let label =
        if square_zero { TwistLabel::from_directions(n, invariant_directions) } else { TwistLabel::NotSquareZero };
    let pure = pure_flag(q)?;
    let extra = extras(q, rank, square_zero)?;
    Ok(TwistClass { rank, invariant_directions, label, pure, extra })
}

fn extras(q: &Supercharge, rank: Rank, square_zero: bool) -> Result<BTreeMap<String, ExtraValue>, SusyError> {
    let alg = q.algebra();
    let n = alg.n();
    let model = alg.clifford();
    let mut extra = BTreeMap::new();
    match (n, rank) {
        (6, Rank::Pair(1, 1)) => {
            let x = column_space(&q.block_matrix(0)).remove(0);
            let y = column_space(&q.block_matrix(1)).remove(0);
            let xf = model.embed(&Spinor::new(6, alg.blocks()[0].sector, x));
            let yf = model.embed(&Spinor::new(6, alg.blocks()[1].sector, y));
            extra.insert("sector_pairing_nonzero".into(), ExtraValue::Bool(!model.scalar_pairing(&xf, &yf).is_zero()));
        }
        (5, Rank::Single(2)) => {
            let basis = column_space(&q.block_matrix(0));
            let form = model.scalar_pairing(&basis[0], &basis[1]);
            let kind = if form.is_zero() { "lagrangian" } else { "symplectic" };
            extra.insert("dual_image".into(), ExtraValue::Text(kind.into()));
        }
        (3, Rank::Single(2)) if square_zero && alg.aux().count == AuxCount::Single(4) && alg.aux().is_standard() => {
            let wq = row_space(&q.block_matrix(0));
            let mut reference = vec![vec![GaussianRational::zero(); 4]; 2];
            reference[0][0] = GaussianRational::one();
            reference[1][2] = GaussianRational::one();
            let mut all = wq.clone();
            all.extend(reference);
            let meet = 4 - span_dim(4, &all);
            let sign = if meet.is_multiple_of(2) { "positive" } else { "negative" };
            extra.insert("volume_sign".into(), ExtraValue::Text(sign.into()));
        }
        (4, Rank::Pair(2, 2)) if square_zero && alg.aux().count == AuxCount::Single(4) => {
            if let Some(c) = cstar_invariant(q) {
                extra.insert("cstar_invariant".into(), ExtraValue::Text(c.to_string()));
            }
        }
        _ => {}
    }
    if n >= 7 && !q.is_zero() && !is_minimal(n, alg.aux().count) {
        extra.insert("pure_components".into(), ExtraValue::Bool(spinor_factors_pure(q)?));
    }
    Ok(extra)
}

/// For `n = 4`, rank `(2,2)`: the exact sequence `0 → S₊* → W → S₋ → 0` compares the
/// coordinate volume forms of `S₊`, `S₋` and `W`; returns `det(r₁, r₂, x₁, x₂)` where `rᵢ` are
/// the images of the dual basis of `S₊` and `xᵢ` lift the basis of `S₋`.
fn cstar_invariant(q: &Supercharge) -> Option<GaussianRational> {
    let m_plus = q.block_matrix(0);
    let m_minus = q.block_matrix(1);
    let k = &q.algebra().aux().forms[0];
    let to_minus = m_minus.mul(&k.transpose());
    let mut rows: Vec<Vector> = (0..2).map(|s| m_plus.row(s).to_vec()).collect();
    for t in 0..2 {
        let mut e = vec![GaussianRational::zero(); 2];
        e[t] = GaussianRational::one();
        rows.push(to_minus.solve(&e)?);
    }
    Some(ExactMatrix::from_rows(rows).ok()?.determinant())
}

/// Per-dimension square-zero criterion, computed without the bracket tensor; `None` where
/// no such criterion is implemented.
pub fn lemma_square_zero(q: &Supercharge) -> Result<Option<bool>, SusyError> {
    let alg = q.algebra();
    let n = alg.n();
    let aux = alg.aux();
    let count = aux.count;
    Ok(match n {
        1..=3 => Some(aux.couplings().iter().all(|&(b, _, k)| {
            let m = q.block_matrix(b);
            m.mul(k).mul(&m.transpose()).is_zero()
        })),
        4 => {
            let k = &aux.forms[0];
            Some(q.block_matrix(0).mul(k).mul(&q.block_matrix(1).transpose()).is_zero())
        }
        5 => {
            let m = q.block_matrix(0);
            let pushed = m.mul(&aux.forms[0]).mul(&m.transpose());
            let pi = alg.clifford().pairing_conjugation().inverse().expect("C is invertible");
            Some(proportional(&pushed, &pi))
        }
        6 => {
            let b_plus = bivector(q, 0);
            let b_minus = bivector(q, 1);
            let dual = hodge6(&b_minus);
            Some(b_plus.add(&dual.scale(hodge6_constant())).is_zero())
        }
        7 if count == AuxCount::Single(1) => {
            let m = q.block_matrix(0);
            let mut v = m.column(0);
            v.extend(m.column(1));
            Some(octonionic_invariants(7, &octonionic_coordinates(7, &v)?)?.square_zero)
        }
        8 if count == AuxCount::Single(1) => {
            let mut v = q.block_matrix(0).column(0);
            v.extend(q.block_matrix(1).column(0));
            Some(octonionic_invariants(8, &octonionic_coordinates(8, &v)?)?.square_zero)
        }
        9 if count == AuxCount::Single(1) => {
            let v = q.block_matrix(0).column(0);
            Some(octonionic_invariants(9, &octonionic_coordinates(9, &v)?)?.square_zero)
        }
        10 if is_minimal(10, count) => {
            let b = if count == AuxCount::Pair(1, 0) { 0 } else { 1 };
            if alg.blocks()[b].sector != crate::octonion::image_sector10()? {
                None
            } else {
                let v = q.block_matrix(b).column(0);
                Some(octonionic_invariants(10, &octonionic_coordinates(10, &v)?)?.square_zero)
            }
        }
        _ => None,
    })
}

/// Whether `a = λ·b` for some (possibly zero) `λ`.
fn proportional(a: &ExactMatrix, b: &ExactMatrix) -> bool {
    let (x, y) = (a.entries(), b.entries());
    let Some(k) = y.iter().position(|c| !c.is_zero()) else { return is_zero_vec(x) };
    let lambda = &x[k] / &y[k];
    x.iter().zip(y).all(|(p, r)| *p == &lambda * r)
}

/// `B = M·ω·Mᵀ ∈ ∧²S_b` for block `b`.
fn bivector(q: &Supercharge, b: usize) -> ExactMatrix {
    let m = q.block_matrix(b);
    m.mul(&q.algebra().aux().forms[b]).mul(&m.transpose())
}

/// `C` restricted to `S₊ × S₋` in dimension 6.
fn pairing_plus_minus() -> ExactMatrix {
    let model = clifford::model(6).expect("n = 6");
    let plus = model.sector_indices(clifford::Sector::Plus);
    let minus = model.sector_indices(clifford::Sector::Minus);
    model.pairing_conjugation().select(&plus, &minus)
}

/// Bivector on `S₋` ↦ bivector on `S₊`: lower the indices with `C`, then apply the
/// coordinate Hodge star of `S₊`.
fn hodge6(b_minus: &ExactMatrix) -> ExactMatrix {
    let c = pairing_plus_minus();
    let beta = c.mul(b_minus).mul(&c.transpose());
    let mut out = ExactMatrix::zeros(4, 4);
    for i in 0..4 {
        for j in 0..4 {
            if i == j {
                continue;
            }
            let mut acc = GaussianRational::zero();
            for k in 0..4 {
                for l in 0..4 {
                    let s = levi_civita4([i, j, k, l]);
                    if s != 0 {
                        acc += &(&beta[(k, l)] * &GaussianRational::int(s));
                    }
                }
            }
            out[(i, j)] = &acc * &GaussianRational::from_fracs(1, 2, 0, 1);
        }
    }
    out
}

fn levi_civita4(p: [usize; 4]) -> i64 {
    let mut sign = 1;
    for i in 0..4 {
        for j in i + 1..4 {
            if p[i] == p[j] {
                return 0;
            }
            if p[i] > p[j] {
                sign = -sign;
            }
        }
    }
    sign
}

/// `Γ₊(B) = Σ Γ^μ(e_s, e_t)·B_{st}` on a chiral sector in dimension 6.
pub(crate) fn chiral_gamma6(b: &ExactMatrix, sector: clifford::Sector) -> Vector {
    let model = clifford::model(6).expect("n = 6");
    let idx = model.sector_indices(sector);
    (0..6)
        .map(|mu| {
            let mut acc = GaussianRational::zero();
            for (a, c, v) in model.pairing_entries(mu) {
                if let (Some(s), Some(t)) = (idx.iter().position(|x| x == a), idx.iter().position(|x| x == c)) {
                    acc += &(v * &b[(s, t)]);
                }
            }
            acc
        })
        .collect()
}

/// The constant `κ` with `Γ₋(B) = κ·Γ₊(⋆B)` for bivectors `B` on `S₋`.
pub(crate) fn hodge6_constant() -> &'static GaussianRational {
    static K: OnceLock<GaussianRational> = OnceLock::new();
    K.get_or_init(|| {
        let mut e = ExactMatrix::zeros(4, 4);
        e[(0, 1)] = GaussianRational::one();
        e[(1, 0)] = -GaussianRational::one();
        let lhs = chiral_gamma6(&e, clifford::Sector::Minus);
        let rhs = chiral_gamma6(&hodge6(&e), clifford::Sector::Plus);
        let k = rhs.iter().position(|c| !c.is_zero()).expect("Γ₊ is injective on bivectors");
        &lhs[k] / &rhs[k]
    })
}

#[cfg(test)]
pub(crate) fn hodge6_for_tests(b: &ExactMatrix) -> ExactMatrix {
    hodge6(b)
}
