//! Potentials for affine transformations and for dilations in superconformal algebras.
//!
//! A potential for affine transformations is a linear map `ψ: so(n) ⊕ V → 𝔄_odd` with abelian
//! image such that
//!
//! 1. `[Q, ψ(v)] = v`
//! 2. `[Q, ψ(r)] = r + φ(r)`
//! 3. `[ψ(r), v] = ψ([r, v])`
//! 4. `[ψ(v), r + φ(r)] = −ψ([r, v])`
//! 5. `[ψ(v), w] = 0`
//! 6. `[ψ(r₁), r₂ + φ(r₂)] = ψ([r₁, r₂])`
//!
//! for all rotations `r` and translations `v, w`. All six are linear in `ψ`.

use serde::{Deserialize, Serialize};

use super::basis::Basis;
use super::twist::{bounded_candidates, split_affine, TwistingHom};
use super::{sector, Parity, SuperLieAlgebra, SuperLieError};
use crate::exactfield::{add_vec, is_zero_vec, sub_vec, ExactMatrix, GaussianRational, SparseSystem, Vector};

/// `ψ` on the bases of the rotation and translation sectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffinePotential {
    pub rotations: Vec<Vector>,
    pub translations: Vec<Vector>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialReport {
    pub equations: [bool; 6],
    pub abelian: bool,
}

impl PotentialReport {
    pub fn passed(&self) -> bool {
        self.abelian && self.equations.iter().all(|&e| e)
    }
}

struct Sectors {
    rot: Vec<Vector>,
    trans: Vec<Vector>,
    rot_basis: Basis,
    trans_basis: Basis,
    twisted: Vec<Vector>,
}

fn sectors(l: &SuperLieAlgebra, phi: &TwistingHom) -> Result<Sectors, SuperLieError> {
    let rot = l.sector(sector::ROTATIONS)?.to_vec();
    let trans = l.sector(sector::TRANSLATIONS)?.to_vec();
    if !phi.is_full(l) {
        return Err(SuperLieError::Unsupported(format!("{} is not defined on all rotations", phi.source)));
    }
    let twisted = rot
        .iter()
        .map(|r| phi.apply(r).map(|p| add_vec(r, &p)))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| SuperLieError::NotHomomorphism("rotation outside the domain".into()))?;
    let dependent = |s: &str| SuperLieError::NotInSubspace(format!("{s} sector is dependent"));
    Ok(Sectors {
        rot_basis: Basis::new(rot.clone()).ok_or_else(|| dependent("rotation"))?,
        trans_basis: Basis::new(trans.clone()).ok_or_else(|| dependent("translation"))?,
        rot,
        trans,
        twisted,
    })
}

fn combine(len: usize, c: &[GaussianRational], vs: &[Vector]) -> Vector {
    let mut out = vec![GaussianRational::zero(); len];
    for (x, v) in c.iter().zip(vs) {
        if !x.is_zero() {
            out = add_vec(&out, &crate::exactfield::scale_vec(v, x));
        }
    }
    out
}

/// Exact verification of the six equations and abelianness of the image.
pub fn affine_potential_check(
    l: &SuperLieAlgebra,
    q: &[GaussianRational],
    phi: &TwistingHom,
    psi: &AffinePotential,
) -> Result<PotentialReport, SuperLieError> {
    let s = sectors(l, phi)?;
    if psi.rotations.len() != s.rot.len() || psi.translations.len() != s.trans.len() {
        return Err(SuperLieError::WrongLength {
            expected: s.rot.len() + s.trans.len(),
            found: psi.rotations.len() + psi.translations.len(),
        });
    }
    let d = l.dim();
    let psi_trans = |x: &[GaussianRational]| s.trans_basis.coords(x).map(|c| combine(d, &c, &psi.translations));
    let psi_rot = |x: &[GaussianRational]| s.rot_basis.coords(x).map(|c| combine(d, &c, &psi.rotations));
    let mut eq = [true; 6];
    eq[0] = s.trans.iter().zip(&psi.translations).all(|(v, p)| l.bracket(q, p) == *v);
    eq[1] = s.twisted.iter().zip(&psi.rotations).all(|(t, p)| l.bracket(q, p) == *t);
    for (a, r) in s.rot.iter().enumerate() {
        for (b, v) in s.trans.iter().enumerate() {
            let rv = psi_trans(&l.bracket(r, v));
            eq[2] &= rv.as_ref().is_some_and(|x| l.bracket(&psi.rotations[a], v) == *x);
            eq[3] &= rv.as_ref().is_some_and(|x| {
                add_vec(&l.bracket(&psi.translations[b], &s.twisted[a]), x).iter().all(|c| c.is_zero())
            });
        }
    }
    eq[4] = psi.translations.iter().all(|p| s.trans.iter().all(|w| is_zero_vec(&l.bracket(p, w))));
    for (a, p) in psi.rotations.iter().enumerate() {
        for (b, t) in s.twisted.iter().enumerate() {
            let rr = psi_rot(&l.bracket(&s.rot[a], &s.rot[b]));
            eq[5] &= rr.is_some_and(|x| l.bracket(p, t) == x);
        }
    }
    let image: Vec<&Vector> = psi.rotations.iter().chain(&psi.translations).collect();
    let abelian = image.iter().all(|x| image.iter().all(|y| is_zero_vec(&l.bracket(x, y))));
    let odd = image.iter().all(|x| is_zero_vec(x) || l.parity_of(x) == Some(Parity::Odd));
    Ok(PotentialReport { equations: eq, abelian: abelian && odd })
}

/// Solve equations 1–6 for `ψ` exactly, then search the affine solution space for an abelian
/// image (bounded integer combinations of the homogeneous directions).
pub fn find_affine_potential(
    l: &SuperLieAlgebra,
    q: &[GaussianRational],
    phi: &TwistingHom,
) -> Result<Option<AffinePotential>, SuperLieError> {
    find_affine_potential_bounded(l, q, phi, 2)
}

pub fn find_affine_potential_bounded(
    l: &SuperLieAlgebra,
    q: &[GaussianRational],
    phi: &TwistingHom,
    bound: i64,
) -> Result<Option<AffinePotential>, SuperLieError> {
    let s = sectors(l, phi)?;
    let odd = l.indices(Parity::Odd);
    let (nr, nt, no) = (s.rot.len(), s.trans.len(), odd.len());
    // ψ(rot a) at columns a*no.., ψ(trans b) at (nr + b)*no..; homogenizing column last.
    let var = |slot: usize, o: usize| slot * no + o;
    let t = (nr + nt) * no;
    let mut sys = SparseSystem::new(t + 1);
    let unit = |o: usize| l.unit(odd[o]);
    // column o of the map x ↦ [e_o, y]
    let right = |y: &Vector| -> Vec<Vector> { (0..no).map(|o| l.bracket(&unit(o), y)).collect() };
    let left_q: Vec<Vector> = (0..no).map(|o| l.bracket(q, &unit(o))).collect();

    let push_eq = |sys: &mut SparseSystem,
                   lhs_slot: usize,
                   cols: &[Vector],
                   rhs: Option<(&[(usize, GaussianRational)], GaussianRational)>,
                   constant: Option<&Vector>| {
        for k in 0..l.dim() {
            let mut row: Vec<(usize, GaussianRational)> = cols
                .iter()
                .enumerate()
                .filter(|(_, c)| !c[k].is_zero())
                .map(|(o, c)| (var(lhs_slot, o), c[k].clone()))
                .collect();
            if let Some((slots, sign)) = &rhs {
                if let Some(o) = odd.iter().position(|&i| i == k) {
                    for (slot, c) in slots.iter() {
                        row.push((var(*slot, o), sign * c));
                    }
                }
            }
            if let Some(v) = constant {
                if !v[k].is_zero() {
                    row.push((t, -v[k].clone()));
                }
            }
            if !row.is_empty() {
                sys.push(row);
            }
        }
    };
    let coord_slots = |c: Vector, offset: usize| -> Vec<(usize, GaussianRational)> {
        c.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (offset + i, x)).collect()
    };
    let not_closed = || SuperLieError::NotInSubspace("sector brackets leave the sectors".into());

    for (b, v) in s.trans.iter().enumerate() {
        push_eq(&mut sys, nr + b, &left_q, None, Some(v));
    }
    for (a, tw) in s.twisted.iter().enumerate() {
        push_eq(&mut sys, a, &left_q, None, Some(tw));
    }
    for (a, r) in s.rot.iter().enumerate() {
        for (b, v) in s.trans.iter().enumerate() {
            let c = s.trans_basis.coords(&l.bracket(r, v)).ok_or_else(not_closed)?;
            let slots = coord_slots(c, nr);
            push_eq(&mut sys, a, &right(v), Some((&slots, -GaussianRational::one())), None);
            push_eq(&mut sys, nr + b, &right(&s.twisted[a]), Some((&slots, GaussianRational::one())), None);
        }
    }
    for b in 0..nt {
        for w in &s.trans {
            push_eq(&mut sys, nr + b, &right(w), None, None);
        }
    }
    for a in 0..nr {
        for (b, tw) in s.twisted.iter().enumerate() {
            let c = s.rot_basis.coords(&l.bracket(&s.rot[a], &s.rot[b])).ok_or_else(not_closed)?;
            let slots = coord_slots(c, 0);
            push_eq(&mut sys, a, &right(tw), Some((&slots, -GaussianRational::one())), None);
        }
    }

    let Some((p, dirs)) = split_affine(sys.kernel(), t) else {
        return Ok(None);
    };
    let unpack = |x: &Vector| -> AffinePotential {
        let slot = |k: usize| {
            let mut v = l.zero();
            for o in 0..no {
                v[odd[o]] = x[var(k, o)].clone();
            }
            v
        };
        AffinePotential { rotations: (0..nr).map(slot).collect(), translations: (nr..nr + nt).map(slot).collect() }
    };
    for x in bounded_candidates(&p, &dirs, bound) {
        let psi = unpack(&x);
        if affine_potential_check(l, q, phi, &psi)?.passed() {
            return Ok(Some(psi));
        }
    }
    Ok(None)
}

/// `[Q, Z] − D` lies in the R-symmetry, where `D` spans the dilation sector.
pub fn dilation_potential_check(
    l: &SuperLieAlgebra,
    q: &[GaussianRational],
    z: &[GaussianRational],
) -> Result<bool, SuperLieError> {
    let dil = l.sector(sector::DILATION)?;
    let r = l.sector(sector::R_SYMMETRY)?;
    let [d] = dil else {
        return Err(SuperLieError::Unsupported("dilation sector must be one-dimensional".into()));
    };
    let rest = sub_vec(&l.bracket(q, z), d);
    Ok(crate::exactfield::in_span(l.dim(), r, &rest) && l.parity_of(z) == Some(Parity::Odd))
}

/// An odd `Z` with `[Q, Z] = D + J`, `J` in the R-symmetry, by an exact linear solve.
pub fn find_dilation_potential(l: &SuperLieAlgebra, q: &[GaussianRational]) -> Result<Option<Vector>, SuperLieError> {
    let dil = l.sector(sector::DILATION)?;
    let r = l.sector(sector::R_SYMMETRY)?;
    let [d] = dil else {
        return Err(SuperLieError::Unsupported("dilation sector must be one-dimensional".into()));
    };
    let odd = l.indices(Parity::Odd);
    let mut cols: Vec<Vector> = odd.iter().map(|&o| l.bracket(q, &l.unit(o))).collect();
    cols.extend(r.iter().map(|x| x.iter().map(|c| -c.clone()).collect()));
    let m = ExactMatrix::from_columns(l.dim(), &cols);
    Ok(m.solve(d).map(|c| {
        let mut z = l.zero();
        for (k, &o) in odd.iter().enumerate() {
            z[o] = c[k].clone();
        }
        z
    }))
}
