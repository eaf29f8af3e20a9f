use std::sync::Arc;

use super::*;
use crate::exactfield::{gr, is_zero_vec, scale_vec, ExactMatrix, GaussianRational, Vector};
use crate::sampling::{random_nonzero_vector, rng};
use crate::susy::{build_susy_str, classify, AuxCount, Rank, SusyAlgebra, TwistLabel};

fn half(n: i64) -> GaussianRational {
    GaussianRational::from_fracs(n, 2, 0, 1)
}

fn sl2(h_on_e: i64) -> SuperLieAlgebra {
    let mut b = SuperLieBuilder::new();
    let e = b.generator("e", Parity::Even);
    let f = b.generator("f", Parity::Even);
    let h = b.generator("h", Parity::Even);
    b.set_bracket(h, e, vec![(e, gr(h_on_e, 0))]);
    b.set_bracket(h, f, vec![(f, gr(-2, 0))]);
    b.set_bracket(e, f, vec![(h, gr(1, 0))]);
    b.build().unwrap()
}

fn susy_lie(n: usize, spec: &str) -> SusySuperLie {
    let a: Arc<SusyAlgebra> = build_susy_str(n, spec).unwrap();
    let rsym = RSymmetry::for_kind(a.aux().kind);
    build_susy_superlie(&a, rsym).unwrap()
}

fn compat_classes(sl: &SusySuperLie, phi: &TwistingHom) -> CompatReport {
    compatible_report(sl, phi, 20, 5).unwrap()
}

#[test]
fn jacobi_accepts_abelian_and_sl2() {
    let mut b = SuperLieBuilder::new();
    b.generator("x", Parity::Even);
    b.generator("y", Parity::Odd);
    assert_eq!(jacobi_check(&b.build().unwrap()), Ok(()));
    assert_eq!(jacobi_check(&sl2(2)), Ok(()));
}

#[test]
fn jacobi_names_the_failing_triple() {
    assert_eq!(jacobi_check(&sl2(3)), Err(JacobiFailure::Jacobi("e".into(), "f".into(), "h".into())));
}

#[test]
fn jacobi_detects_broken_antisymmetry() {
    let json = r#"{"generators":[{"name":"a","parity":"even"},{"name":"b","parity":"even"}],
        "brackets":[{"i":0,"j":1,"coeffs":{"0":"1"}},{"i":1,"j":0,"coeffs":{"0":"1"}}]}"#;
    let l: SuperLieAlgebra = serde_json::from_str(json).unwrap();
    assert_eq!(jacobi_check(&l), Err(JacobiFailure::Antisymmetry("a".into(), "b".into())));
}

#[test]
fn builder_rejects_parity_violations() {
    let mut b = SuperLieBuilder::new();
    let x = b.generator("x", Parity::Even);
    let y = b.generator("y", Parity::Odd);
    b.set_bracket(x, y, vec![(x, gr(1, 0))]);
    assert!(matches!(b.build(), Err(SuperLieError::ParityMismatch(..))));
}

#[test]
fn json_round_trip() {
    let l = build_osp(1, 2).unwrap();
    let text = serde_json::to_string(&l).unwrap();
    let back: SuperLieAlgebra = serde_json::from_str(&text).unwrap();
    assert_eq!(back, l);
}

#[test]
fn osp_1_2_has_classical_brackets() {
    let l = build_osp(1, 2).unwrap();
    assert_eq!((l.even_dim(), l.odd_dim()), (3, 2));
    assert_eq!(jacobi_check(&l), Ok(()));
    assert!(even_part_check(&l, 1, 2).unwrap());
    let sp = Basis::new(l.sector("sp").unwrap().to_vec()).unwrap();
    let odd = l.sector(sector::ODD).unwrap();
    for x in odd {
        for y in odd {
            assert!(sp.coords(&l.bracket(x, y)).is_some());
        }
    }
    // the odd part spans the sp(2) doublet: its brackets generate all of sp(2)
    let brackets: Vec<_> =
        odd.iter().flat_map(|x| odd.iter().map(move |y| (x, y))).map(|(x, y)| l.bracket(x, y)).collect();
    assert_eq!(crate::exactfield::span_dim(l.dim(), &brackets), 3);
}

#[test]
fn osp_dimensions_and_jacobi() {
    for (m, k2, even, odd) in [(2, 2, 4, 4), (3, 2, 6, 6), (4, 2, 9, 8), (2, 4, 11, 8), (4, 4, 16, 16)] {
        let l = build_osp(m, k2).unwrap();
        assert_eq!((l.even_dim(), l.odd_dim()), (even, odd), "osp({m}|{k2})");
        assert_eq!(jacobi_check(&l), Ok(()), "osp({m}|{k2})");
        assert!(even_part_check(&l, m, k2).unwrap(), "osp({m}|{k2})");
    }
    assert!(build_osp(2, 3).is_err());
}

#[test]
fn global_2d_algebra() {
    let l = build_global_2d_superconformal();
    assert_eq!((l.even_dim(), l.odd_dim()), (8, 8));
    assert_eq!(jacobi_check(&l), Ok(()));
    let e = |name: &str| l.element(&[(name, gr(1, 0))]).unwrap();
    let l0_plus_half_j = l.element(&[("L[0]", gr(1, 0)), ("J[0]", half(1))]).unwrap();
    let l0_minus_half_j = l.element(&[("L[0]", gr(1, 0)), ("J[0]", half(-1))]).unwrap();
    assert_eq!(l.bracket(&e("G-[-1/2]"), &e("G+[1/2]")), l0_plus_half_j);
    assert_eq!(l.bracket(&e("G+[-1/2]"), &e("G-[1/2]")), l0_minus_half_j);
    assert_eq!(l.bracket(&e("G+[-1/2]"), &e("G-[-1/2]")), e("L[-1]"));
    assert_eq!(l.bracket(&e("L[1]"), &e("L[-1]")), scale_vec(&e("L[0]"), &gr(2, 0)));
    assert_eq!(l.bracket(&e("L[1]"), &e("G+[-1/2]")), e("G+[1/2]"));
    assert!(is_zero_vec(&l.bracket(&e("G+[1/2]"), &e("G+[-1/2]"))));
    assert!(is_zero_vec(&l.bracket(&e("G+[1/2]"), &e("Gb-[-1/2]"))));
    assert_eq!(l.generators()[l.index_of("G+[1/2]").unwrap()].weight, Some(half(1)));
}

#[test]
fn global_2d_dilation_potential() {
    let l = build_global_2d_superconformal();
    let q = l.element(&[("G-[-1/2]", gr(1, 0)), ("Gb-[-1/2]", gr(1, 0))]).unwrap();
    let z = l.element(&[("G+[1/2]", gr(1, 0)), ("Gb+[1/2]", gr(1, 0))]).unwrap();
    let expected =
        l.element(&[("L[0]", gr(1, 0)), ("Lb[0]", gr(1, 0)), ("J[0]", half(1)), ("Jb[0]", half(1))]).unwrap();
    assert_eq!(l.bracket(&q, &z), expected);
    assert!(dilation_potential_check(&l, &q, &z).unwrap());
    let found = find_dilation_potential(&l, &q).unwrap().unwrap();
    assert!(dilation_potential_check(&l, &q, &found).unwrap());
    assert!(!dilation_potential_check(&l, &q, &l.zero()).unwrap());
}

#[test]
fn twisted_2d_potential() {
    for alpha in [1, -1] {
        for beta in [1, -1] {
            let t = superconformal_2d_twist(alpha, beta).unwrap();
            let l = &t.algebra;
            assert!(twist_compat(l, &t.q, &t.phi));
            let report = affine_potential_check(l, &t.q, &t.phi, &t.psi).unwrap();
            assert!(report.passed(), "({alpha},{beta}): {report:?}");
            let found = find_affine_potential(l, &t.q, &t.phi).unwrap().expect("potential exists");
            assert!(affine_potential_check(l, &t.q, &t.phi, &found).unwrap().passed());
            let zero = AffinePotential { rotations: vec![l.zero()], translations: vec![l.zero(); 2] };
            assert!(!affine_potential_check(l, &t.q, &t.phi, &zero).unwrap().equations[0]);
        }
    }
    assert!(superconformal_2d_twist(2, 1).is_err());
}

#[test]
fn twisted_2d_potential_needs_matching_hom() {
    let t = superconformal_2d_twist(1, 1).unwrap();
    let other = superconformal_2d_twist(-1, 1).unwrap();
    assert!(!twist_compat(&t.algebra, &t.q, &other.phi));
    assert_eq!(find_affine_potential(&t.algebra, &t.q, &other.phi).unwrap(), None);
}

#[test]
fn osp_4_4_superconformal() {
    let s = superconformal_3d().unwrap();
    let l = &s.osp.algebra;
    assert_eq!((l.even_dim(), l.odd_dim()), (16, 16));
    assert_eq!(jacobi_check(l), Ok(()));
    assert!(l.closes(sector::ROTATIONS).unwrap());
    assert!(l.closes(sector::R_SYMMETRY).unwrap());
    let d = &l.sector(sector::DILATION).unwrap()[0];
    for p in l.sector(sector::TRANSLATIONS).unwrap() {
        assert_eq!(l.bracket(d, p), *p);
    }
    for x in l.sector(sector::SIGMA).unwrap() {
        assert_eq!(l.bracket(d, x), scale_vec(x, &half(1)));
    }
    assert!(is_zero_vec(&l.bracket(&s.q, &s.q)));
    assert!(twist_compat(l, &s.q, &s.phi_i1));
    assert!(!twist_compat(l, &s.q, &s.phi_i2));
}

#[test]
fn osp_4_4_potential_construction_fails_only_equation_3() {
    let s = superconformal_3d().unwrap();
    let l = &s.osp.algebra;
    let report = affine_potential_check(l, &s.q, &s.phi_i1, &s.psi).unwrap();
    assert_eq!(report.equations, [true, true, false, true, true, true]);
    assert!(!report.abelian);
    assert_eq!(find_affine_potential(l, &s.q, &s.phi_i1).unwrap(), None);
    assert_eq!(find_affine_potential(l, &s.q, &s.phi_i2).unwrap(), None);
    let zero = AffinePotential { rotations: vec![l.zero(); 3], translations: vec![l.zero(); 3] };
    assert!(!affine_potential_check(l, &s.q, &s.phi_i1, &zero).unwrap().equations[0]);
    let z = find_dilation_potential(l, &s.q).unwrap().expect("rank-2 supercharge has a dilation potential");
    assert!(dilation_potential_check(l, &s.q, &z).unwrap());
}

// M01 commutes with P2, while ad(P2) is injective on the special supercharges, so
// [ψ(M01), P2] = 0 would push ψ(M01) into Σ, where [Q, -] only reaches translations.
#[test]
fn osp_4_4_equation_3_obstruction() {
    let s = superconformal_3d().unwrap();
    let l = &s.osp.algebra;
    let m01 = l.element(&[("M01", gr(1, 0))]).unwrap();
    let p2 = l.element(&[("P2", gr(1, 0))]).unwrap();
    assert!(is_zero_vec(&l.bracket(&m01, &p2)));
    let dual = l.sector(sector::SIGMA_DUAL).unwrap();
    let images: Vec<Vector> = dual.iter().map(|x| l.bracket(&p2, x)).collect();
    assert_eq!(crate::exactfield::span_dim(l.dim(), &images), dual.len());
    let sigma = l.sector(sector::SIGMA).unwrap();
    let translations = l.sector(sector::TRANSLATIONS).unwrap();
    for x in sigma {
        assert!(crate::exactfield::in_span(l.dim(), translations, &l.bracket(&s.q, x)));
    }
}

#[test]
fn susy_superlie_even_parts() {
    let three = susy_lie(3, "N=2");
    assert_eq!(three.algebra().sector(sector::ROTATIONS).unwrap().len(), 3);
    assert_eq!(three.algebra().sector(sector::TRANSLATIONS).unwrap().len(), 3);
    assert_eq!(three.algebra().sector(sector::R_SYMMETRY).unwrap().len(), 1);
    assert_eq!(susy_lie(5, "N=1").algebra().sector(sector::R_SYMMETRY).unwrap().len(), 3);
    assert_eq!(susy_lie(4, "N=2").algebra().sector(sector::R_SYMMETRY).unwrap().len(), 4);
    assert_eq!(susy_lie(4, "N=2").rsym(), RSymmetry::General);
    for (n, spec) in [(1, "N=2"), (2, "N=(2,2)"), (3, "N=2"), (3, "N=4"), (4, "N=2"), (5, "N=1"), (6, "N=(1,1)")] {
        let sl = susy_lie(n, spec);
        assert_eq!(jacobi_check(sl.algebra()), Ok(()), "n={n} {spec}");
    }
}

#[test]
fn susy_superlie_rejects_wrong_r_symmetry() {
    let a = build_susy_str(5, "N=1").unwrap();
    assert!(matches!(build_susy_superlie(&a, RSymmetry::Orthogonal), Err(SuperLieError::RSymmetryMismatch { .. })));
}

#[test]
fn r_symmetry_acts_trivially_on_v_and_preserves_the_bracket() {
    let mut r = rng(11);
    for (n, spec) in [(3, "N=4"), (4, "N=2"), (5, "N=2"), (6, "N=(1,1)")] {
        let sl = susy_lie(n, spec);
        let l = sl.algebra();
        let odd = l.sector(sector::ODD).unwrap();
        let combo = |c: Vec<GaussianRational>| {
            c.iter().zip(odd).fold(l.zero(), |acc, (x, v)| crate::exactfield::add_vec(&acc, &scale_vec(v, x)))
        };
        for g in l.sector(sector::R_SYMMETRY).unwrap() {
            for p in l.sector(sector::TRANSLATIONS).unwrap() {
                assert!(is_zero_vec(&l.bracket(g, p)));
            }
            let q1 = combo(random_nonzero_vector(&mut r, odd.len(), 2));
            let q2 = combo(random_nonzero_vector(&mut r, odd.len(), 2));
            let lhs = l.bracket(g, &l.bracket(&q1, &q2));
            let rhs =
                crate::exactfield::add_vec(&l.bracket(&l.bracket(g, &q1), &q2), &l.bracket(&q1, &l.bracket(g, &q2)));
            assert!(is_zero_vec(&lhs));
            assert!(is_zero_vec(&rhs), "n={n} {spec}");
        }
    }
}

#[test]
fn projections_4d_pick_out_unique_chiral_supercharges() {
    let sl = susy_lie(4, "N=2");
    for (first, rank) in [(true, Rank::Pair(2, 0)), (false, Rank::Pair(0, 2))] {
        let phi = projection_4d(&sl, first).unwrap();
        let compat = compatible_subspace(sl.algebra(), &phi, sl.algebra().sector(sector::ODD).unwrap()).unwrap();
        assert_eq!(compat.len(), 1);
        let q = &compat[0];
        assert!(twist_compat(sl.algebra(), q, &phi));
        assert!(twist_compat(sl.algebra(), &scale_vec(q, &gr(3, -2)), &phi));
        let class = classify(&sl.supercharge_of(q).unwrap()).unwrap();
        assert_eq!((class.rank, class.label), (rank, TwistLabel::Topological));
    }
}

#[test]
fn zero_hom_is_rarely_compatible() {
    let sl = susy_lie(4, "N=2");
    let phi = TwistingHom::zero(sl.algebra()).unwrap();
    let compat = compatible_subspace(sl.algebra(), &phi, sl.algebra().sector(sector::ODD).unwrap()).unwrap();
    assert!(compat.is_empty());
    let mut r = rng(3);
    let q = sl.embed(&sl.susy().supercharge(random_nonzero_vector(&mut r, 8, 2)).unwrap());
    assert!(!twist_compat(sl.algebra(), &q, &phi));
}

#[test]
fn twist_compat_is_scale_invariant() {
    let sl = susy_lie(4, "N=4");
    let phi = kapustin_witten(&sl).unwrap();
    let odd = sl.algebra().sector(sector::ODD).unwrap().to_vec();
    let compat = compatible_subspace(sl.algebra(), &phi, &odd).unwrap();
    let mut r = rng(9);
    for q in compat.iter().chain(odd.iter().take(4)) {
        let c = crate::sampling::nonzero_gaussian(&mut r, 3);
        assert_eq!(twist_compat(sl.algebra(), q, &phi), twist_compat(sl.algebra(), &scale_vec(q, &c), &phi));
    }
}

#[test]
fn homomorphisms_are_checked() {
    let sl = susy_lie(4, "N=2");
    let phi = projection_4d(&sl, true).unwrap();
    let mut bad = phi.images.clone();
    bad[0] = scale_vec(&bad[0], &gr(2, 0));
    assert!(matches!(TwistingHom::full(sl.algebra(), "bad", bad), Err(SuperLieError::NotHomomorphism(_))));
    let named = phi.to_named(sl.algebra());
    let text = serde_json::to_string(&named).unwrap();
    let back = TwistingHom::from_named(sl.algebra(), &serde_json::from_str(&text).unwrap()).unwrap();
    assert_eq!(back, phi);
}

#[test]
fn compatible_implies_topological_in_dims_3_to_5() {
    for (n, spec, expect_any) in
        [(3, "N=3", false), (3, "N=4", true), (4, "N=2", true), (4, "N=4", true), (5, "N=2", true)]
    {
        let sl = susy_lie(n, spec);
        let homs = standard_full_homs(&sl).unwrap();
        assert!(!homs.is_empty());
        for phi in &homs {
            let report = compatible_implies_topological_check(&sl, phi, 20, 1).unwrap();
            assert_eq!(report.non_topological, 0, "n={n} {spec} {}: {report:?}", phi.source);
            assert_eq!(report.square_zero_checked > 0, expect_any, "n={n} {spec} {}: {report:?}", phi.source);
        }
    }
}

#[test]
fn compatible_but_not_topological_in_dim_2() {
    let sl = susy_lie(2, "N=(2,0)");
    let phi = winding_2d(&sl, 1, 0).unwrap();
    assert!(compatible_implies_topological_check(&sl, &phi, 5, 1).is_err());
    let report = compat_classes(&sl, &phi);
    assert!(report.square_zero_checked > 0);
    assert_eq!(report.non_topological, report.square_zero_checked);
    assert!(report.classes.keys().all(|k| k.ends_with("holomorphic")), "{report:?}");
    assert_eq!(compat_classes(&sl, &winding_2d(&sl, 2, 0).unwrap()).square_zero_checked, 0);
}

#[test]
fn four_d_n4_twists() {
    let sl = susy_lie(4, "N=4");
    let kw = compat_classes(&sl, &kapustin_witten(&sl).unwrap());
    let keys: Vec<&str> = kw.classes.keys().map(String::as_str).collect();
    assert_eq!(keys, ["(0,2) topological", "(2,0) topological", "(2,2) topological"], "{kw:?}");
    let vw = compat_classes(&sl, &vafa_witten(&sl).unwrap());
    assert_eq!(vw.classes.keys().collect::<Vec<_>>(), ["(2,0) topological"]);
    assert_eq!(vw.compatible_dim, 2);
    let half = compat_classes(&sl, &half_twist_4d(&sl).unwrap());
    assert_eq!(half.classes.keys().collect::<Vec<_>>(), ["(2,0) topological"]);
    assert_eq!(half.compatible_dim, 1);
}

#[test]
fn three_d_twists() {
    let sl = susy_lie(3, "N=4");
    for first in [true, false] {
        let phi = inclusion_3d(&sl, first).unwrap();
        let report = compat_classes(&sl, &phi);
        assert_eq!(report.classes.keys().collect::<Vec<_>>(), ["2 topological"]);
    }
    let sl3 = susy_lie(3, "N=3");
    let report = compat_classes(&sl3, &projection_3d(&sl3).unwrap());
    assert_eq!(report.square_zero_checked, 0, "{report:?}");

    let sl2 = susy_lie(3, "N=2");
    for d in [1, -1] {
        let report = compat_classes(&sl2, &degree_3d(&sl2, d).unwrap());
        assert_eq!(report.classes.keys().collect::<Vec<_>>(), ["1 holomorphic_topological(2)"], "{report:?}");
    }
    assert_eq!(compat_classes(&sl2, &degree_3d(&sl2, 3).unwrap()).square_zero_checked, 0);
}

#[test]
fn five_d_maximal_compact() {
    let sl = susy_lie(5, "N=2");
    let phi = maximal_compact_5d(&sl).unwrap();
    let odd = sl.algebra().sector(sector::ODD).unwrap();
    let compat = compatible_subspace(sl.algebra(), &phi, odd).unwrap();
    assert_eq!(compat.len(), 1);
    let q = sl.supercharge_of(&compat[0]).unwrap();
    let class = classify(&q).unwrap();
    assert_eq!((class.rank, class.label), (Rank::Single(4), TwistLabel::Topological));
    let r = sl.algebra().sector(sector::R_SYMMETRY).unwrap();
    assert!(!weight_one_solvable(sl.algebra(), &compat[0], r));
    assert_eq!(sl.twisting_datum(&q, None), None);
}

#[test]
fn weight_one_on_an_isotropic_line() {
    let sl = susy_lie(1, "N=2");
    let q = sl.susy().pure_tensor(0, &[gr(1, 0)], &[gr(1, 0), gr(0, 0)]);
    let qv = sl.embed(&q);
    let alpha = sl.r_element(&[ExactMatrix::diagonal(&[gr(1, 0), gr(-1, 0)])]).unwrap();
    let datum = TwistingDatum { alpha };
    assert!(weight_check(sl.algebra(), &qv, &datum));
    assert!(is_integral_grading(sl.algebra(), &datum.alpha));
    assert!(!weight_check(sl.algebra(), &qv, &TwistingDatum { alpha: sl.algebra().zero() }));
    let found = sl.twisting_datum(&q, None).expect("datum exists");
    assert!(weight_check(sl.algebra(), &qv, &found));
}

#[test]
fn four_d_chiral_datum_is_the_diagonal_scaling() {
    let sl = susy_lie(4, "N=2");
    let phi = projection_4d(&sl, true).unwrap();
    let compat = compatible_subspace(sl.algebra(), &phi, sl.algebra().sector(sector::ODD).unwrap()).unwrap();
    let q = sl.supercharge_of(&compat[0]).unwrap();
    let datum = sl.twisting_datum(&q, Some(&phi)).expect("datum exists");
    let mats = sl.r_matrices(&datum.alpha);
    assert_eq!(mats[0], ExactMatrix::identity(2));
    assert!(is_integral_grading(sl.algebra(), &datum.alpha));
}

#[test]
fn integral_grading_rejects_fractional_weights() {
    let sl = susy_lie(1, "N=2");
    let alpha = sl.r_element(&[ExactMatrix::diagonal(&[half(1), half(-1)])]).unwrap();
    assert!(!is_integral_grading(sl.algebra(), &alpha));
    let alpha = sl.r_element(&[ExactMatrix::diagonal(&[gr(2, 0), gr(-2, 0)])]).unwrap();
    assert!(is_integral_grading(sl.algebra(), &alpha));
}

#[test]
fn winding_count_check() {
    let sl = susy_lie(2, "N=(2,2)");
    let report = compat_classes(&sl, &winding_2d(&sl, 1, 1).unwrap());
    assert!(report.classes.contains_key("(1,1) topological"), "{report:?}");
    assert!(matches!(sl.susy().aux().count, AuxCount::Pair(2, 2)));
}
