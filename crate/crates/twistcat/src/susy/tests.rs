use super::*;
use crate::clifford::Sector;
use crate::exactfield::{gr, is_zero_vec, ExactMatrix, GaussianRational};
use crate::octonion::{clifford_transport, ComplexOctonion, OctonionicSpinor};
use crate::sampling::{rng, small_gaussian};
use rand::Rng;

fn alg(n: usize, spec: &str) -> Arc<SusyAlgebra> {
    build_susy_str(n, spec).unwrap()
}

fn unit(d: usize, i: usize) -> Vec<GaussianRational> {
    let mut e = vec![GaussianRational::zero(); d];
    e[i] = GaussianRational::one();
    e
}

fn standard_algebras() -> Vec<(usize, &'static str)> {
    vec![
        (1, "N=1"),
        (1, "N=2"),
        (1, "N=3"),
        (2, "N=(1,1)"),
        (2, "N=(2,0)"),
        (2, "N=(2,2)"),
        (3, "N=2"),
        (3, "N=4"),
        (4, "N=1"),
        (4, "N=2"),
        (4, "N=4"),
        (5, "N=1"),
        (5, "N=2"),
        (6, "N=(1,0)"),
        (6, "N=(1,1)"),
        (6, "N=(2,0)"),
        (7, "N=1"),
        (8, "N=1"),
        (9, "N=1"),
        (10, "N=(1,0)"),
    ]
}

/// Sparse random supercharges: a few coordinates with small Gaussian coefficients.
fn sparse_random(a: &Arc<SusyAlgebra>, r: &mut impl Rng, terms: usize) -> Supercharge {
    let mut q = a.zero();
    for _ in 0..terms {
        let i = r.gen_range(0..a.sigma_dim());
        q.coeffs[i] = small_gaussian(r, 2);
    }
    q
}

#[test]
fn build_examples() {
    assert_eq!(alg(3, "N=2").sigma_dim(), 4);
    assert_eq!(alg(3, "N=2").aux().kind, AuxKind::Symmetric);
    assert_eq!(alg(4, "N=1").sigma_dim(), 4);
    assert_eq!(alg(4, "N=1").aux().kind, AuxKind::DualPair);
    assert_eq!(alg(10, "N=(1,0)").sigma_dim(), 16);
    assert!(matches!(build_susy_str(6, "N=2"), Err(SusyError::IllegalAux { .. })));
    assert!(matches!(build_susy_str(5, "N=(1,1)"), Err(SusyError::IllegalAux { .. })));
    assert!(matches!(build_susy_str(3, "N=x"), Err(SusyError::BadAuxSpec(_))));
    assert_eq!("n = (1, 1)".parse::<AuxCount>().unwrap(), AuxCount::Pair(1, 1));
}

#[test]
fn algebras_are_symmetric_and_nondegenerate() {
    for (n, spec) in standard_algebras() {
        let a = alg(n, spec);
        assert!(a.is_symmetric(), "{n} {spec}");
        assert!(a.is_nondegenerate(), "{n} {spec}");
    }
}

#[test]
fn bracket_is_r_symmetric_and_lorentz_equivariant() {
    // [r·x, y] + [x, r·y] = r·[x, y] for the rotation generators acting on the spinor factor.
    for (n, spec) in [(3, "N=2"), (4, "N=1"), (6, "N=(1,1)"), (7, "N=1")] {
        let a = alg(n, spec);
        let model = a.clifford();
        let mut r = rng(n as u64);
        let act = |i: usize, j: usize, x: &Supercharge| -> Vec<GaussianRational> {
            let mut out = vec![GaussianRational::zero(); a.sigma_dim()];
            for (b, blk) in a.blocks().iter().enumerate() {
                let m = x.block_matrix(b);
                for w in 0..blk.aux_dim {
                    let s = crate::clifford::Spinor::new(n, blk.sector, m.column(w));
                    let rs = model.so_action(i, j, &s).unwrap();
                    for (k, c) in rs.coeffs.iter().enumerate() {
                        out[blk.index(k, w)] = c.clone();
                    }
                }
            }
            out
        };
        for _ in 0..5 {
            let x = sparse_random(&a, &mut r, 4);
            let y = sparse_random(&a, &mut r, 4);
            let (i, j) = (0, n - 1);
            let lhs = crate::exactfield::add_vec(
                &a.bracket_vec(&act(i, j, &x), y.coeffs()),
                &a.bracket_vec(x.coeffs(), &act(i, j, &y)),
            );
            let rhs = crate::clifford::rotate_vector(i, j, &bracket(&x, &y).unwrap());
            assert_eq!(lhs, rhs, "{n} {spec}");
        }
    }
}

#[test]
fn bracket_basics() {
    let a = alg(3, "N=2");
    let mut r = rng(1);
    for _ in 0..10 {
        let x = sparse_random(&a, &mut r, 3);
        let y = sparse_random(&a, &mut r, 3);
        assert_eq!(bracket(&x, &y).unwrap(), bracket(&y, &x).unwrap());
        assert!(is_zero_vec(&bracket(&x, &a.zero()).unwrap()));
    }
    let one = alg(1, "N=2");
    let q = one.pure_tensor(0, &[gr(1, 0)], &[gr(1, 0), gr(0, 0)]);
    assert!(is_square_zero(&q));
    let other = alg(1, "N=3");
    assert_eq!(bracket(&q, &other.zero()), Err(SusyError::AlgebraMismatch));
}

#[test]
fn lemma_conditions_agree_with_bracket() {
    let mut seen = std::collections::BTreeMap::new();
    for (n, spec) in standard_algebras() {
        let a = alg(n, spec);
        let mut r = rng(100 + n as u64);
        for t in 0..60 {
            let q = sparse_random(&a, &mut r, 1 + t % 4);
            if let Some(lemma) = lemma_square_zero(&q).unwrap() {
                assert_eq!(lemma, is_square_zero(&q), "{n} {spec} {q:?}");
                *seen.entry((n, lemma)).or_insert(0) += 1;
            }
        }
    }
    for n in 1..=10 {
        assert!(seen.contains_key(&(n, true)), "no square-zero sample in dimension {n}");
    }
}

#[test]
fn hodge_constant_is_uniform() {
    let k = classify::hodge6_constant();
    for i in 0..4 {
        for j in i + 1..4 {
            let mut e = ExactMatrix::zeros(4, 4);
            e[(i, j)] = GaussianRational::one();
            e[(j, i)] = -GaussianRational::one();
            let lhs = classify::chiral_gamma6(&e, Sector::Minus);
            let rhs = classify::chiral_gamma6(&classify::hodge6_for_tests(&e), Sector::Plus);
            assert_eq!(lhs, crate::exactfield::scale_vec(&rhs, k));
        }
    }
}

#[test]
fn rank_examples() {
    let a = alg(5, "N=2");
    assert_eq!(rank(&a.zero()), Rank::Single(0));
    assert_eq!(rank(&alg(6, "N=(1,1)").zero()), Rank::Pair(0, 0));
    let iso = a.from_blocks(&[ExactMatrix::identity(4)]);
    assert_eq!(rank(&iso), Rank::Single(4));
}

/// Coordinate spinors `x ∈ S₊`, `y ∈ S₋` (sector positions) with `⟨x, y⟩` zero or not.
fn chiral_pair(n: usize, nonzero: bool) -> (usize, usize) {
    let m = crate::clifford::model(n).unwrap();
    let plus = m.sector_indices(Sector::Plus);
    let minus = m.sector_indices(Sector::Minus);
    for (s, &a) in plus.iter().enumerate() {
        for (t, &b) in minus.iter().enumerate() {
            if m.pairing_conjugation()[(a, b)].is_zero() != nonzero {
                return (s, t);
            }
        }
    }
    panic!("no such pair");
}

#[test]
fn direction_examples() {
    let a4 = alg(4, "N=1");
    let q = a4.pure_tensor(0, &unit(2, 0), &[gr(1, 0)]);
    assert_eq!(invariant_directions(&q).unwrap(), 2);
    assert_eq!(classify(&q).unwrap().label, TwistLabel::Holomorphic);

    let a6 = alg(6, "N=(1,1)");
    for (nonzero, dirs) in [(true, 6), (false, 4)] {
        let (s, t) = chiral_pair(6, nonzero);
        let q = a6
            .pure_tensor(0, &unit(4, s), &[gr(1, 0), gr(0, 0)])
            .add(&a6.pure_tensor(1, &unit(4, t), &[gr(1, 0), gr(0, 0)]))
            .unwrap();
        let c = classify(&q).unwrap();
        assert_eq!(c.rank, Rank::Pair(1, 1));
        assert_eq!(c.invariant_directions, dirs);
        assert_eq!(c.extra["sector_pairing_nonzero"], ExtraValue::Bool(nonzero));
    }

    let a = ComplexOctonion::new([gr(1, 0), gr(0, 1), gr(0, 0), gr(0, 0), gr(0, 0), gr(0, 0), gr(0, 0), gr(0, 0)]);
    let b = ComplexOctonion::new([gr(0, 0), gr(0, 0), gr(-1, 0), gr(0, 0), gr(0, 1), gr(0, 0), gr(0, 0), gr(0, 0)]);
    let t = clifford_transport(&OctonionicSpinor::new(7, a, b)).unwrap();
    let a7 = alg(7, "N=1");
    let q = a7
        .pure_tensor(0, &t.spinors[0].coeffs, &unit(2, 0))
        .add(&a7.pure_tensor(0, &t.spinors[1].coeffs, &unit(2, 1)))
        .unwrap();
    let c = classify(&q).unwrap();
    assert_eq!(c.rank, Rank::Single(2));
    assert_eq!(c.label, TwistLabel::HolomorphicTopological(5));
    assert_eq!(c.pure, Some(true));
    assert!(matches!(invariant_directions(&a7.zero()), Err(SusyError::ZeroSupercharge)));
}

#[test]
fn classify_examples() {
    let a2 = alg(2, "N=(2,2)");
    let q = a2.pure_tensor(0, &[gr(1, 0)], &unit(2, 0)).add(&a2.pure_tensor(1, &[gr(1, 0)], &unit(2, 0))).unwrap();
    let c = classify(&q).unwrap();
    assert_eq!((c.rank, c.label), (Rank::Pair(1, 1), TwistLabel::Topological));

    let a5 = alg(5, "N=2");
    let m = crate::clifford::model(5).unwrap();
    let c5 = m.pairing_conjugation();
    let find = |nonzero: bool| {
        (0..4).flat_map(|x| (x + 1..4).map(move |y| (x, y))).find(|&(x, y)| c5[(x, y)].is_zero() != nonzero).unwrap()
    };
    for (nonzero, label, kind) in
        [(true, TwistLabel::Topological, "symplectic"), (false, TwistLabel::HolomorphicTopological(4), "lagrangian")]
    {
        let (x, y) = find(nonzero);
        let q = a5.pure_tensor(0, &unit(4, x), &unit(4, 0)).add(&a5.pure_tensor(0, &unit(4, y), &unit(4, 2))).unwrap();
        let c = classify(&q).unwrap();
        assert_eq!(c.rank, Rank::Single(2));
        assert_eq!(c.label, label);
        assert_eq!(c.extra["dual_image"], ExtraValue::Text(kind.into()));
    }

    let a8 = alg(8, "N=1");
    let p = ComplexOctonion::new([gr(1, 0), gr(0, 1), gr(0, 0), gr(0, 0), gr(0, 0), gr(0, 0), gr(0, 0), gr(0, 0)]);
    let t = clifford_transport(&OctonionicSpinor::new(8, p.clone(), p.conj())).unwrap();
    let q = a8.from_blocks(&[
        ExactMatrix::from_columns(8, &[t.spinors[0].coeffs.clone()]),
        ExactMatrix::from_columns(8, &[t.spinors[1].coeffs.clone()]),
    ]);
    let c = classify(&q).unwrap();
    assert_eq!((c.rank, c.invariant_directions), (Rank::Pair(1, 1), 5));
    assert_eq!(c.pure, Some(true));

    let degenerate = classify(&a8.zero()).unwrap();
    assert_eq!(degenerate.label, TwistLabel::Degenerate);
}

#[test]
fn orbit_discriminators() {
    let a3 = alg(3, "N=4");
    let signs: std::collections::BTreeSet<_> = [(0, 2), (0, 3)]
        .into_iter()
        .map(|(u, v)| {
            let q =
                a3.pure_tensor(0, &unit(2, 0), &unit(4, u)).add(&a3.pure_tensor(0, &unit(2, 1), &unit(4, v))).unwrap();
            let c = classify(&q).unwrap();
            assert_eq!(c.label, TwistLabel::Topological);
            c.extra["volume_sign"].clone()
        })
        .collect();
    assert_eq!(signs.len(), 2);

    let a4 = alg(4, "N=4");
    let plus = ExactMatrix::from_int_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
    let minus = ExactMatrix::from_int_rows(&[&[0, 0, 1, 0], &[0, 0, 0, 3]]);
    let q = a4.from_blocks(&[plus, minus]);
    let c = classify(&q).unwrap();
    assert_eq!((c.rank, c.label), (Rank::Pair(2, 2), TwistLabel::Topological));
    assert_eq!(c.extra["cstar_invariant"], ExtraValue::Text("1/3".into()));
}

#[test]
fn directions_lower_bound_and_label_consistency() {
    for (n, spec) in standard_algebras() {
        let a = alg(n, spec);
        let mut r = rng(7 + n as u64);
        for t in 0..20 {
            let q = sparse_random(&a, &mut r, 1 + t % 3);
            if q.is_zero() {
                continue;
            }
            let c = classify(&q).unwrap();
            assert!(c.invariant_directions >= n.div_ceil(2), "{n} {spec}");
            assert_eq!(c.label == TwistLabel::Topological, c.invariant_directions == n && is_square_zero(&q));
        }
    }
}

#[test]
fn invariants_under_basis_symmetries_and_scaling() {
    let mut r = rng(5);
    for (n, spec) in [(3, "N=4"), (5, "N=2"), (6, "N=(2,0)"), (1, "N=3")] {
        let a = alg(n, spec);
        let wd = a.blocks()[0].aux_dim;
        for _ in 0..10 {
            let q = sparse_random(&a, &mut r, 4);
            if q.is_zero() {
                continue;
            }
            let base = (rank(&q), invariant_directions(&q).unwrap(), is_square_zero(&q));
            let scaled = q.scale(&gr(2, -3));
            assert_eq!(base, (rank(&scaled), invariant_directions(&scaled).unwrap(), is_square_zero(&scaled)));
            // Swap the first two W-pairs, and swap within the first pair (with a sign if symplectic).
            let perm: Vec<(usize, GaussianRational)> = (0..wd)
                .map(|w| match (a.aux().kind, w) {
                    (AuxKind::Symplectic, 0) => (1, gr(-1, 0)),
                    (AuxKind::Symplectic, 1) => (0, gr(1, 0)),
                    (AuxKind::Symmetric, w) if wd >= 4 && w < 4 => ((w + 2) % 4, gr(1, 0)),
                    (_, w) => (w, gr(1, 0)),
                })
                .collect();
            let mut m = ExactMatrix::zeros(a.blocks()[0].spinor_dim, wd);
            let qm = q.block_matrix(0);
            for s in 0..m.rows() {
                for (w, (w2, c)) in perm.iter().enumerate() {
                    m[(s, *w2)] = &qm[(s, w)] * c;
                }
            }
            let mut mats = vec![m];
            if a.blocks().len() > 1 {
                mats.push(q.block_matrix(1));
            }
            let p = a.from_blocks(&mats);
            assert_eq!(base, (rank(&p), invariant_directions(&p).unwrap(), is_square_zero(&p)), "{n} {spec}");
        }
    }
}

#[test]
fn abelian_section_examples() {
    let a4 = alg(4, "N=1");
    let q = a4.pure_tensor(0, &unit(2, 0), &[gr(1, 0)]);
    let s = abelian_section(&q).unwrap();
    assert_eq!(s.method, SectionMethod::ChiralComplement);
    assert_eq!(s.basis.len(), 2);
    let minus = a4.blocks()[1];
    assert!(s.basis.iter().all(|v| v[..minus.offset].iter().all(GaussianRational::is_zero)));

    let a1 = alg(1, "N=2");
    let q = a1.pure_tensor(0, &[gr(1, 0)], &unit(2, 0));
    let s = abelian_section(&q).unwrap();
    assert_eq!(s.basis.len(), 1);
    assert_eq!(bracket(&q, &a1.supercharge(s.basis[0].clone()).unwrap()).unwrap(), vec![gr(1, 0)]);
    assert!(verify_section(&q, &s));

    let not_sz = a1.pure_tensor(0, &[gr(1, 0)], &[gr(1, 0), gr(1, 0)]);
    assert_eq!(abelian_section(&not_sz), Err(SusyError::NotSquareZero));
}

#[test]
fn abelian_sections_for_covered_samples() {
    for (n, spec) in standard_algebras() {
        let a = alg(n, spec);
        let mut r = rng(40 + n as u64);
        let mut found = 0;
        for t in 0..40 {
            let q = sparse_random(&a, &mut r, 1 + t % 3);
            if q.is_zero() || !is_square_zero(&q) || !covered_by_hypotheses(&q) {
                continue;
            }
            let s = abelian_section(&q).unwrap_or_else(|e| panic!("{n} {spec} {q:?}: {e}"));
            assert!(verify_section(&q, &s));
            found += 1;
        }
        let _ = found;
    }
}

#[test]
fn reductions_project_images() {
    for (n, spec) in standard_algebras() {
        if n == 1 {
            continue;
        }
        let a = alg(n, spec);
        let red = reduction(&a).unwrap_or_else(|e| panic!("{n} {spec}: {e}"));
        assert_eq!(red.target.n(), n - 1);
        let mut r = rng(90 + n as u64);
        for t in 0..10 {
            let q = sparse_random(&a, &mut r, 1 + t % 3);
            if q.is_zero() {
                continue;
            }
            let low = reduce_dimension(&q).unwrap();
            let projected: Vec<_> = image_subspace(&q).unwrap().into_iter().map(|v| v[..n - 1].to_vec()).collect();
            let image = if low.is_zero() { vec![] } else { image_subspace(&low).unwrap() };
            assert!(crate::clifford::same_subspace(n - 1, &projected, &image), "{n} {spec}");
        }
    }
}

#[test]
fn reduction_examples() {
    let a10 = alg(10, "N=(1,0)");
    let p = ComplexOctonion::new([gr(1, 0), gr(0, 1), gr(0, 0), gr(0, 0), gr(0, 0), gr(0, 0), gr(0, 0), gr(0, 0)]);
    let t = clifford_transport(&OctonionicSpinor::new(10, p, ComplexOctonion::zero())).unwrap();
    let b = if t.spinors[0].sector == Sector::Plus { 0 } else { 1 };
    let a10 = if b == 0 { a10 } else { alg(10, "N=(0,1)") };
    let q = a10.pure_tensor(b, &t.spinors[0].coeffs, &[gr(1, 0)]);
    assert_eq!(classify(&q).unwrap().label, TwistLabel::Holomorphic);
    let low = reduce_dimension(&q).unwrap();
    assert_eq!(low.dim(), 9);
    assert_eq!(invariant_directions(&low).unwrap(), 5);
    assert!(is_square_zero(&low));

    let a4 = alg(4, "N=2");
    let q = a4.pure_tensor(0, &unit(2, 0), &unit(2, 0)).add(&a4.pure_tensor(0, &unit(2, 1), &unit(2, 1))).unwrap();
    let c = classify(&q).unwrap();
    assert_eq!((c.rank, c.label), (Rank::Pair(2, 0), TwistLabel::Topological));
    let low = reduce_dimension(&q).unwrap();
    let c = classify(&low).unwrap();
    assert_eq!((c.rank, c.label), (Rank::Single(2), TwistLabel::Topological));
    assert_eq!(low.algebra().aux().count, AuxCount::Single(4));
}

#[test]
fn json_round_trips() {
    let a = alg(6, "N=(1,1)");
    let mut r = rng(3);
    let q = sparse_random(&a, &mut r, 5);
    let s = serde_json::to_string(&q).unwrap();
    assert!(s.contains("\"dim\":6"));
    let back: Supercharge = serde_json::from_str(&s).unwrap();
    assert_eq!(back, q);
    let c = classify(&q).unwrap();
    let back: TwistClass = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
    let low = reduce_dimension(&q).unwrap();
    let back: Supercharge = serde_json::from_str(&serde_json::to_string(&low).unwrap()).unwrap();
    assert_eq!(back, low);
    let parsed: Supercharge =
        serde_json::from_str(r#"{"dim":4,"aux":{"kind":"dual_pair","N":1},"coeffs":["1","0","0","i"]}"#).unwrap();
    assert_eq!(parsed.coeffs()[3], gr(0, 1));
}
