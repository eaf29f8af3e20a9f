use super::*;
use crate::exactfield::gr;
use crate::sampling::{random_nonzero_vector, rng};

fn anticommutator(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    a.mul(b).add(&b.mul(a))
}

#[test]
fn dim_one_gamma_is_one() {
    let m = model(1).unwrap();
    assert_eq!(m.gammas()[0], ExactMatrix::identity(1));
    assert_eq!(m.conj_plus(), Some(&ExactMatrix::identity(1)));
}

#[test]
fn dim_two_pauli_pair() {
    let m = model(2).unwrap();
    let g = m.gammas();
    assert_eq!(g.len(), 2);
    assert_eq!(g[0].mul(&g[0]), ExactMatrix::identity(2));
    assert_eq!(g[1].mul(&g[1]), ExactMatrix::identity(2));
    assert!(anticommutator(&g[0], &g[1]).is_zero());
}

#[test]
fn anticommutation_all_dims() {
    for n in 1..=MAX_DIM {
        let m = model(n).unwrap();
        let d = m.spinor_dim();
        assert_eq!(d, 1 << (n / 2));
        for i in 0..n {
            for j in 0..n {
                let ac = anticommutator(&m.gammas()[i], &m.gammas()[j]);
                let expected =
                    if i == j { ExactMatrix::identity(d).scale(&gr(2, 0)) } else { ExactMatrix::zeros(d, d) };
                assert_eq!(ac, expected, "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn entries_are_units_or_zero() {
    let units = [gr(0, 0), gr(1, 0), gr(-1, 0), gr(0, 1), gr(0, -1)];
    for n in 1..=MAX_DIM {
        for g in model(n).unwrap().gammas() {
            assert!(g.entries().iter().all(|x| units.contains(x)));
        }
    }
}

#[test]
fn chirality_properties() {
    for n in (2..=MAX_DIM).step_by(2) {
        let m = model(n).unwrap();
        let chi = m.chirality().unwrap();
        let d = m.spinor_dim();
        assert_eq!(chi.mul(chi), ExactMatrix::identity(d));
        for g in m.gammas() {
            assert!(anticommutator(chi, g).is_zero());
        }
        assert_eq!(m.sector_dim(Sector::Plus), d / 2);
        assert_eq!(m.sector_dim(Sector::Minus), d / 2);
    }
    assert!(model(5).unwrap().chirality().is_none());
}

#[test]
fn charge_conjugation_relations() {
    for n in 1..=MAX_DIM {
        let m = model(n).unwrap();
        for (sign, eps) in [(ConjSign::Plus, gr(1, 0)), (ConjSign::Minus, gr(-1, 0))] {
            if let Some(a) = m.charge_conjugation(sign) {
                assert!(a.inverse().is_some());
                let first = a.entries().iter().find(|x| !x.is_zero()).unwrap();
                assert!(first.is_one());
                for g in m.gammas() {
                    assert_eq!(a.mul(g), g.transpose().mul(a).scale(&eps), "n={n} {sign:?}");
                }
            }
        }
        let count = [m.conj_plus(), m.conj_minus()].iter().filter(|c| c.is_some()).count();
        assert_eq!(count, if n % 2 == 0 { 2 } else { 1 }, "n={n}");
    }
}

#[test]
fn dim_three_has_exactly_one_conjugation() {
    let m = model(3).unwrap();
    assert!(m.conj_plus().is_some() ^ m.conj_minus().is_some());
}

#[test]
fn pairing_symmetry_table() {
    for n in 1..=MAX_DIM {
        let m = model(n).unwrap();
        let c = m.pairing_conjugation();
        let kind = m.pairing_kind();
        assert_eq!(kind.symmetry, PairingSymmetry::for_dim(n));
        for g in m.gammas() {
            let cg = c.mul(g);
            match kind.symmetry {
                PairingSymmetry::Symmetric => assert!(cg.is_symmetric()),
                PairingSymmetry::Antisymmetric => assert!(cg.is_antisymmetric()),
                PairingSymmetry::DualChiral => {
                    let (p, q) = (m.sector_indices(Sector::Plus), m.sector_indices(Sector::Minus));
                    assert!(cg.select(&p, &p).is_zero() && cg.select(&q, &q).is_zero());
                }
                PairingSymmetry::ChiralSymmetric | PairingSymmetry::ChiralAntisymmetric => {
                    let (p, q) = (m.sector_indices(Sector::Plus), m.sector_indices(Sector::Minus));
                    assert!(cg.select(&p, &q).is_zero() && cg.select(&q, &p).is_zero());
                    for s in [&p, &q] {
                        let block = cg.select(s, s);
                        if kind.symmetry == PairingSymmetry::ChiralSymmetric {
                            assert!(block.is_symmetric());
                        } else {
                            assert!(block.is_antisymmetric());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn dim_three_first_basis_spinor_pairs_nontrivially() {
    let m = model(3).unwrap();
    let q = m.spinor(Sector::Full, vec![gr(1, 0), gr(0, 0)]).unwrap();
    let v = m.gamma_pairing(&q, &q).unwrap();
    assert!(!is_zero_vec(&v));
}

#[test]
fn dim_seven_diagonal_vanishes() {
    let m = model(7).unwrap();
    let mut r = rng(7);
    for _ in 0..20 {
        let q = m.spinor(Sector::Full, random_nonzero_vector(&mut r, 8, 3)).unwrap();
        assert!(is_zero_vec(&m.gamma_pairing(&q, &q).unwrap()));
    }
}

#[test]
fn sector_mismatch_is_rejected() {
    let m = model(4).unwrap();
    let q = m.spinor(Sector::Plus, vec![gr(1, 0), gr(0, 0)]).unwrap();
    assert!(matches!(m.gamma_pairing(&q, &q), Err(CliffordError::SectorMismatch(..))));
    let m = model(6).unwrap();
    let p = m.spinor(Sector::Plus, vec![gr(1, 0); 4]).unwrap();
    let q = m.spinor(Sector::Minus, vec![gr(1, 0); 4]).unwrap();
    assert!(m.gamma_pairing(&p, &q).is_err());
}

#[test]
fn weyl_fierz_selection_rule_dim_ten() {
    let m = model(10).unwrap();
    let mut r = rng(10);
    let q = m.spinor(Sector::Plus, random_nonzero_vector(&mut r, 16, 2)).unwrap();
    let f = m.fierz_decompose(&q).unwrap();
    for p in 0..=10 {
        if ![1, 5, 9].contains(&p) {
            assert!(f.vanishes(p), "F_{p} should vanish");
        }
    }
    assert!(!f.vanishes(5));
}

#[test]
fn weyl_fierz_selection_rule_even_dims() {
    let mut r = rng(11);
    for n in (2..=MAX_DIM).step_by(2) {
        let m = model(n).unwrap();
        let half = m.spinor_dim() / 2;
        for sector in [Sector::Plus, Sector::Minus] {
            let q = m.spinor(sector, random_nonzero_vector(&mut r, half, 2)).unwrap();
            let f = m.fierz_decompose(&q).unwrap();
            for p in 0..=n {
                if p % 4 != (n / 2) % 4 {
                    assert!(f.vanishes(p), "n={n} p={p}");
                }
            }
        }
    }
}

#[test]
fn fierz_reconstructs_tensor_square() {
    let mut r = rng(4);
    for n in [3, 4, 5] {
        let m = model(n).unwrap();
        let q = m.spinor(Sector::Full, random_nonzero_vector(&mut r, m.spinor_dim(), 3)).unwrap();
        let f = m.fierz_decompose(&q).unwrap();
        assert_eq!(m.fierz_reconstruct(&f), m.tensor_square(&q), "n={n}");
    }
}

#[test]
fn fierz_component_is_antisymmetric() {
    let m = model(4).unwrap();
    let q = m.spinor(Sector::Full, vec![gr(1, 0), gr(2, 1), gr(0, 1), gr(-1, 0)]).unwrap();
    let f = m.fierz_decompose(&q).unwrap();
    assert_eq!(f.component(&[2, 0]), -f.component(&[0, 2]));
    assert!(f.component(&[1, 1]).is_zero());
}

#[test]
fn dim_eight_pure_has_vanishing_scalar() {
    let m = model(8).unwrap();
    let mut r = rng(8);
    let q = random_pure_spinor(m, Sector::Plus, &mut r, 2);
    assert!(m.is_pure(&q).unwrap());
    assert!(m.fierz_decompose(&q).unwrap().vanishes(0));
}

#[test]
fn nullspace_dims() {
    let m = model(2).unwrap();
    let q = m.spinor(Sector::Plus, vec![gr(1, 0)]).unwrap();
    assert_eq!(m.nullspace(&q).unwrap().len(), 1);

    let m = model(8).unwrap();
    let q = (1..8)
        .map(|k| {
            let mut v = vec![gr(0, 0); 8];
            v[0] = gr(1, 0);
            v[k] = gr(1, 0);
            m.spinor(Sector::Plus, v).unwrap()
        })
        .find(|q| !m.fierz_decompose(q).unwrap().vanishes(0))
        .expect("some two-term spinor has nonzero scalar square");
    assert_eq!(m.nullspace(&q).unwrap().len(), 0);

    let m = model(10).unwrap();
    let mut r = rng(3);
    let q = random_pure_spinor(m, Sector::Plus, &mut r, 2);
    let t = m.nullspace(&q).unwrap();
    assert_eq!(t.len(), 5);
    assert!(is_isotropic(&t));
}

#[test]
fn every_weyl_spinor_is_pure_in_low_even_dims() {
    let mut r = rng(46);
    for n in [2, 4, 6] {
        let m = model(n).unwrap();
        for _ in 0..10 {
            let q = m.spinor(Sector::Plus, random_nonzero_vector(&mut r, m.spinor_dim() / 2, 3)).unwrap();
            assert!(m.is_pure(&q).unwrap(), "n={n}");
        }
    }
}

#[test]
fn dim_seven_purity_is_scalar_norm() {
    let m = model(7).unwrap();
    let mut v = vec![gr(0, 0); 8];
    v[0] = gr(1, 0);
    v[7] = gr(1, 0);
    let q = m.spinor(Sector::Full, v).unwrap();
    let norm = m.scalar_pairing(&m.embed(&q), &m.embed(&q));
    assert_eq!(m.is_pure(&q).unwrap(), norm.is_zero());
    let mut r = rng(77);
    for _ in 0..20 {
        let q = m.spinor(Sector::Full, random_nonzero_vector(&mut r, 8, 2)).unwrap();
        let norm = m.scalar_pairing(&m.embed(&q), &m.embed(&q));
        assert_eq!(m.is_pure(&q).unwrap(), norm.is_zero());
    }
}

#[test]
fn dim_nine_purity_via_lift() {
    let m9 = model(9).unwrap();
    let m10 = model(10).unwrap();
    let mut r = rng(99);
    for k in 0..10 {
        let q = if k % 2 == 0 {
            let p = random_pure_spinor(m10, Sector::Plus, &mut r, 2);
            Spinor::new(9, Sector::Full, p.coeffs)
        } else {
            m9.spinor(Sector::Full, random_nonzero_vector(&mut r, 16, 2)).unwrap()
        };
        let lifted = lift_to_even(&q);
        let gamma10 = m10.gamma_pairing(&lifted, &lifted).unwrap();
        assert_eq!(m9.is_pure(&q).unwrap(), m10.is_pure(&lifted).unwrap());
        assert_eq!(m9.is_pure(&q).unwrap(), is_zero_vec(&gamma10));
    }
}

#[test]
fn so_closure() {
    let m = model(5).unwrap();
    let mut r = rng(5);
    let q = m.spinor(Sector::Full, random_nonzero_vector(&mut r, 4, 3)).unwrap();
    // [r01, r12] = ± r02 as operators on S.
    let a = m.so_action(0, 1, &m.so_action(1, 2, &q).unwrap()).unwrap();
    let b = m.so_action(1, 2, &m.so_action(0, 1, &q).unwrap()).unwrap();
    let comm: Vector = a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect();
    let r02 = m.so_action(0, 2, &q).unwrap().coeffs;
    let neg: Vector = r02.iter().map(|x| -x).collect();
    assert!(comm != neg);
    assert_eq!(comm, r02);
}

#[test]
fn pairing_equivariance() {
    let mut r = rng(12);
    for n in 2..=MAX_DIM {
        let m = model(n).unwrap();
        let s1 = m.weyl_sectors()[0];
        let s2 = m.pairing_kind().symmetry.partner(s1);
        let q1 = m.spinor(s1, random_nonzero_vector(&mut r, m.sector_dim(s1), 2)).unwrap();
        let q2 = m.spinor(s2, random_nonzero_vector(&mut r, m.sector_dim(s2), 2)).unwrap();
        for (i, j) in [(0, 1), (0, n - 1)] {
            if i == j {
                continue;
            }
            let lhs: Vector = m
                .gamma_pairing(&m.so_action(i, j, &q1).unwrap(), &q2)
                .unwrap()
                .iter()
                .zip(m.gamma_pairing(&q1, &m.so_action(i, j, &q2).unwrap()).unwrap())
                .map(|(a, b)| a + &b)
                .collect();
            let rhs = rotate_vector(i, j, &m.gamma_pairing(&q1, &q2).unwrap());
            assert_eq!(lhs, rhs, "n={n} ({i},{j})");
        }
    }
}

#[test]
fn rotations_preserve_chirality() {
    let m = model(6).unwrap();
    let mut r = rng(6);
    let q = m.spinor(Sector::Plus, random_nonzero_vector(&mut r, 4, 2)).unwrap();
    for i in 0..6 {
        for j in 0..6 {
            if i != j {
                let out = m.so_action(i, j, &q).unwrap();
                let g = ExactMatrix::identity(1);
                let _ = g;
                let full = m.gamma_monomials()[i].compose(&m.gamma_monomials()[j]).apply(&m.embed(&q));
                assert!(m.in_sector(&full, Sector::Plus));
                assert_eq!(out.sector, Sector::Plus);
            }
        }
    }
}

#[test]
fn restriction_intertwines_rotations() {
    let mut r = rng(21);
    for n in 2..=MAX_DIM {
        let hi = model(n).unwrap();
        let sector = hi.weyl_sectors()[0];
        let q = hi.spinor(sector, random_nonzero_vector(&mut r, hi.sector_dim(sector), 2)).unwrap();
        let low = restrict_spinor(&q);
        let lo = model(n - 1).unwrap();
        for (i, j) in [(0, n - 2)] {
            if i == j {
                continue;
            }
            let a = restrict_spinor(&hi.so_action(i, j, &q).unwrap());
            let b = lo.so_action(i, j, &low).unwrap();
            assert_eq!(a, b, "n={n}");
        }
    }
}

#[test]
fn image_is_orthogonal_complement_of_nullspace() {
    let mut r = rng(31);
    for n in 2..=MAX_DIM {
        let m = model(n).unwrap();
        let s = m.weyl_sectors()[0];
        for k in 0..4 {
            let q = if k % 2 == 0 {
                random_pure_spinor(m, s, &mut r, 2)
            } else {
                m.spinor(s, random_nonzero_vector(&mut r, m.sector_dim(s), 2)).unwrap()
            };
            let t = m.nullspace(&q).unwrap();
            let sq = m.spinor_image(&q).unwrap();
            assert!(is_isotropic(&t));
            assert!(same_subspace(n, &sq, &orthogonal_complement(n, &t)), "n={n}");
            assert!(2 * sq.len() >= n);
        }
    }
}
