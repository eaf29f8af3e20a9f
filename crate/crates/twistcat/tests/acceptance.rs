//! One line per acceptance criterion. Runs without the libtest harness so the lines always
//! reach the test log.

use std::process::ExitCode;
use std::time::Instant;

use twistcat::catalogue::{expected_table, tabulated, verify_catalogue, verify_twisting_table, CatalogueReport};
use twistcat::clifford::{self, ConjSign, PairingSymmetry, Sector};
use twistcat::exactfield::{ExactMatrix, GaussianRational};
use twistcat::octonion::{self, ComplexOctonion, OctonionicSpinor};
use twistcat::sampling::{self, SampleRng};
use twistcat::superlie::{self, RSymmetry};
use twistcat::susy::{self, AuxCount};

const CATALOGUE_SAMPLES: usize = 50;
const PURITY_SAMPLES: usize = 200;
const ORACLE_SAMPLES: usize = 100;

struct Outcome {
    passed: bool,
    /// The failure is the recorded gap in the 3d potential, not a regression.
    known_gap: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, known_gap: false, detail: detail.into() }
}

fn anticommutator(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    a.mul(b).add(&b.mul(a))
}

fn pairing_type_holds(m: &clifford::CliffordModel) -> bool {
    let c = m.pairing_conjugation();
    let (p, q) = (m.sector_indices(Sector::Plus), m.sector_indices(Sector::Minus));
    let sym = m.pairing_kind().symmetry;
    sym == PairingSymmetry::for_dim(m.n())
        && m.gammas().iter().all(|g| {
            let cg = c.mul(g);
            match sym {
                PairingSymmetry::Symmetric => cg.is_symmetric(),
                PairingSymmetry::Antisymmetric => cg.is_antisymmetric(),
                PairingSymmetry::DualChiral => cg.select(&p, &p).is_zero() && cg.select(&q, &q).is_zero(),
                PairingSymmetry::ChiralSymmetric | PairingSymmetry::ChiralAntisymmetric => {
                    let diagonal_ok = [&p, &q].iter().all(|s| {
                        let b = cg.select(s, s);
                        if sym == PairingSymmetry::ChiralSymmetric {
                            b.is_symmetric()
                        } else {
                            b.is_antisymmetric()
                        }
                    });
                    cg.select(&p, &q).is_zero() && cg.select(&q, &p).is_zero() && diagonal_ok
                }
            }
        })
}

fn clifford_core() -> Outcome {
    let mut failures = Vec::new();
    for n in 1..=10 {
        let m = clifford::model(n).unwrap();
        let d = m.spinor_dim();
        let two = ExactMatrix::identity(d).scale(&GaussianRational::int(2));
        let g = m.gammas();
        let relations = (0..n).all(|i| {
            (0..n).all(|j| anticommutator(&g[i], &g[j]) == if i == j { two.clone() } else { ExactMatrix::zeros(d, d) })
        });
        let chirality = match m.chirality() {
            Some(chi) => chi.mul(chi) == ExactMatrix::identity(d) && g.iter().all(|x| anticommutator(chi, x).is_zero()),
            None => n % 2 == 1,
        };
        let conjugation = [(ConjSign::Plus, 1), (ConjSign::Minus, -1)].iter().all(|&(sign, eps)| {
            m.charge_conjugation(sign)
                .is_none_or(|a| g.iter().all(|x| a.mul(x) == x.transpose().mul(a).scale(&GaussianRational::int(eps))))
        });
        for (ok, what) in [
            (relations, "anticommutation"),
            (chirality, "chirality"),
            (conjugation, "conjugation"),
            (pairing_type_holds(m), "pairing type"),
        ] {
            if !ok {
                failures.push(format!("n={n} {what}"));
            }
        }
    }
    outcome(failures.is_empty(), if failures.is_empty() { "n = 1..10 exact".into() } else { failures.join(", ") })
}

fn purity() -> Outcome {
    let mut lines = Vec::new();
    let mut passed = true;
    for n in 2..=10 {
        let s = clifford::purity_survey(n, PURITY_SAMPLES, 100 + n as u64).unwrap();
        passed &= s.passed() && s.samples >= PURITY_SAMPLES;
        lines.push(format!("n={n} {}/{}", s.routes_agree.min(s.image_is_complement), s.samples));
    }
    outcome(passed, lines.join(" "))
}

fn catalogue_reports() -> Vec<CatalogueReport> {
    tabulated().into_iter().map(|(d, a)| verify_catalogue(d, a, CATALOGUE_SAMPLES, 2024).unwrap()).collect()
}

fn realized(reports: &[CatalogueReport], dim: usize, aux: &str, prefix: &str, directions: usize) -> bool {
    let aux: AuxCount = aux.parse().unwrap();
    let Some(r) = reports.iter().find(|r| r.dim == dim && r.aux == aux) else { return false };
    let in_table = expected_table(dim, aux)
        .unwrap()
        .iter()
        .any(|c| c.key().starts_with(prefix) && c.invariant_directions == directions);
    in_table
        && r.classes.iter().any(|c| c.key.starts_with(prefix) && c.invariant_directions == directions && c.realized > 0)
}

fn catalogue(reports: &[CatalogueReport]) -> Outcome {
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| format!("{} {}", r.dim, r.aux)).collect();
    let headline = [
        (3, "N=2", "1 ", 2),
        (4, "N=2", "(1,1)", 3),
        (5, "N=2", "2 holomorphic_topological(4)", 4),
        (6, "N=(1,1)", "(2,2)", 5),
        (7, "N=1", "2 ", 5),
        (8, "N=1", "(1,1)", 5),
        (9, "N=1", "1 ", 5),
        (10, "N=(1,0)", "(1,0)", 5),
        (7, "N=1", "1 topological impure", 7),
        (8, "N=1", "(1,0) topological impure", 8),
    ];
    let missing: Vec<String> = headline
        .iter()
        .filter(|h| !realized(reports, h.0, h.1, h.2, h.3))
        .map(|h| format!("{} {} {}", h.0, h.1, h.2))
        .collect();
    let samples: usize = reports.iter().map(|r| r.constructive_samples + r.generic_square_zero).sum();
    outcome(
        failed.is_empty() && missing.is_empty(),
        format!(
            "{} algebras, {samples} samples, headline counts realized {}/{}{}",
            reports.len(),
            headline.len() - missing.len(),
            headline.len(),
            if failed.is_empty() { String::new() } else { format!(", failed: {}", failed.join(", ")) }
        ),
    )
}

fn lower_bound(reports: &[CatalogueReport]) -> Outcome {
    let violations: usize = reports.iter().map(|r| r.lower_bound_violations).sum();
    outcome(violations == 0, format!("{violations} violations"))
}

fn sections(reports: &[CatalogueReport]) -> Outcome {
    let sum = |f: fn(&CatalogueReport) -> usize| -> usize { reports.iter().map(f).sum() };
    let ok = sum(|r| r.sections.covered_ok);
    let failed = sum(|r| r.sections.covered_failed);
    let fallback = sum(|r| r.sections.fallback_ok);
    let not_covered = sum(|r| r.sections.not_covered);
    let false_success = sum(|r| r.sections.false_success);
    outcome(
        failed == 0 && false_success == 0 && ok > 0,
        format!("covered {ok} ok / {failed} failed, fallback {fallback} ok / {not_covered} not covered, {false_success} false successes"),
    )
}

fn compatible_topological() -> Outcome {
    let mut checked = 0;
    let mut bad = Vec::new();
    for (n, spec) in [(3, "N=3"), (3, "N=4"), (4, "N=2"), (4, "N=4"), (5, "N=2")] {
        let alg = susy::build_susy_str(n, spec).unwrap();
        let sl = superlie::build_susy_superlie(&alg, RSymmetry::for_kind(alg.aux().kind)).unwrap();
        for phi in superlie::standard_full_homs(&sl).unwrap() {
            let r = superlie::compatible_implies_topological_check(&sl, &phi, 20, 9).unwrap();
            checked += r.square_zero_checked;
            if r.non_topological > 0 {
                bad.push(format!("{n} {spec} {}", phi.source));
            }
        }
    }
    let alg = susy::build_susy_str(2, "N=(2,0)").unwrap();
    let sl = superlie::build_susy_superlie(&alg, RSymmetry::for_kind(alg.aux().kind)).unwrap();
    let phi = superlie::winding_2d(&sl, 1, 0).unwrap();
    let r = superlie::compatible_report(&sl, &phi, 20, 9).unwrap();
    let counterexample = r.square_zero_checked > 0 && r.non_topological == r.square_zero_checked;
    outcome(
        bad.is_empty() && checked > 0 && counterexample,
        format!(
            "{checked} compatible square-zero samples topological in dims 3-5; dimension 2 counterexample {}",
            if counterexample { "reproduced" } else { "missing" }
        ),
    )
}

fn twisting_table() -> Outcome {
    let mut mismatches = Vec::new();
    let mut homs = 0;
    for (d, a) in tabulated() {
        let r = verify_twisting_table(d, a, 2024).unwrap();
        homs += r.homs.len();
        mismatches.extend(r.mismatches.iter().map(|m| format!("{d} {a}: {m}")));
    }
    outcome(mismatches.is_empty(), format!("{homs} homomorphisms, {} mismatches", mismatches.len()))
}

fn potentials() -> Outcome {
    let mut parts = Vec::new();
    let mut passed = true;
    let mut gap = false;
    let two = superlie::superconformal_2d_twist(-1, 1).unwrap();
    let three = superlie::superconformal_3d().unwrap();
    let cases = [
        ("2d", &two.algebra, &two.q, &two.phi, &two.psi),
        ("osp(4|4)", &three.osp.algebra, &three.q, &three.phi_i1, &three.psi),
    ];
    for (name, l, q, phi, psi) in cases {
        let jacobi = superlie::jacobi_check(l).is_ok();
        let report = superlie::affine_potential_check(l, q, phi, psi).unwrap();
        let zero = superlie::AffinePotential {
            rotations: vec![l.zero(); psi.rotations.len()],
            translations: vec![l.zero(); psi.translations.len()],
        };
        let control = superlie::affine_potential_check(l, q, phi, &zero).unwrap();
        let failing: Vec<String> =
            report.equations.iter().enumerate().filter(|(_, ok)| !**ok).map(|(k, _)| (k + 1).to_string()).collect();
        let ok = jacobi && report.passed() && !control.equations[0];
        gap |= !ok && name == "osp(4|4)" && jacobi && !control.equations[0] && !report.equations[2];
        passed &= ok;
        parts.push(format!(
            "{name}: Jacobi {}, potential {}, zero potential fails equation 1: {}",
            if jacobi { "ok" } else { "fails" },
            if report.passed() {
                "ok".to_string()
            } else {
                format!(
                    "fails equations [{}]{}",
                    failing.join(","),
                    if report.abelian { "" } else { " and abelianness" }
                )
            },
            !control.equations[0]
        ));
    }
    let mut o = outcome(passed, parts.join("; "));
    o.known_gap = !passed && gap && parts[0].contains("potential ok");
    o
}

fn random_oct(r: &mut SampleRng) -> ComplexOctonion {
    ComplexOctonion::new(std::array::from_fn(|_| sampling::small_gaussian(r, 2)))
}

/// `a + i·a·e_k` for real `a`: a null octonion.
fn null_oct(r: &mut SampleRng) -> ComplexOctonion {
    loop {
        let a = ComplexOctonion::new(std::array::from_fn(|_| GaussianRational::int(sampling::small_int(r, 3))));
        if a.is_zero() {
            continue;
        }
        let k = 1 + sampling::small_int(r, 3).unsigned_abs() as usize % 7;
        return &a + &a.mul(&ComplexOctonion::unit(k)).scale(&GaussianRational::i());
    }
}

fn oracle_sample(n: usize, r: &mut SampleRng, k: usize) -> OctonionicSpinor {
    let (a, b) = match k % 4 {
        0 => (random_oct(r), random_oct(r)),
        1 => {
            let a = null_oct(r);
            let b = a.conj().mul(&random_oct(r));
            (a, b)
        }
        2 => (null_oct(r), ComplexOctonion::zero()),
        _ => (random_oct(r), ComplexOctonion::zero()),
    };
    OctonionicSpinor::new(n, a, b)
}

/// Clifford-side supercharge of the minimal algebra carrying the transported spinors.
fn clifford_supercharge(n: usize, t: &octonion::Transported) -> Option<susy::Supercharge> {
    let candidates: &[&str] = match n {
        10 => &["N=(1,0)", "N=(0,1)"],
        _ => &["N=1"],
    };
    for spec in candidates {
        let alg = susy::build_susy_str(n, spec).ok()?;
        let mut q = alg.zero();
        let mut placed = 0;
        for s in &t.spinors {
            if s.is_zero() {
                placed += 1;
                continue;
            }
            if let Some(b) = alg.blocks().iter().position(|b| b.sector == s.sector && b.aux_dim == 1) {
                q = q.add(&alg.pure_tensor(b, &s.coeffs, &[GaussianRational::one()])).ok()?;
                placed += 1;
            }
        }
        if placed == t.spinors.len() {
            return Some(q);
        }
    }
    None
}

fn oracle() -> Outcome {
    let mut agreed = [0usize; 3];
    let mut square_zero = [0usize; 3];
    let mut problems = Vec::new();
    for (i, n) in [8, 9, 10].into_iter().enumerate() {
        let mut r = sampling::rng(900 + n as u64);
        let mut k = 0;
        while agreed[i] < ORACLE_SAMPLES && k < 4 * ORACLE_SAMPLES {
            let s = oracle_sample(n, &mut r, k);
            k += 1;
            if s.is_zero() {
                continue;
            }
            let inv = octonion::octonionic_invariants(n, &s).unwrap();
            let t = octonion::clifford_transport(&s).unwrap();
            let Some(q) = clifford_supercharge(n, &t) else {
                problems.push(format!("n={n}: no Clifford block for the transported spinor"));
                break;
            };
            let c = susy::classify(&q).unwrap();
            let sz = susy::is_square_zero(&q);
            if inv.square_zero == sz && inv.image_dim == c.invariant_directions && Some(inv.pure) == c.pure {
                agreed[i] += 1;
                square_zero[i] += usize::from(sz);
            } else {
                problems.push(format!(
                    "n={n} sample {k}: octonionic {inv:?}, Clifford {sz} {} {:?}",
                    c.invariant_directions, c.pure
                ));
            }
        }
    }
    let projection = gamma10_projection();
    let enough = agreed.iter().zip(&square_zero).all(|(a, s)| *a >= ORACLE_SAMPLES && *s > 0);
    outcome(
        problems.is_empty() && enough && projection,
        format!(
            "agreement 8d {}, 9d {}, 10d {} (square-zero {}/{}/{}); 10 -> 9 -> 8 projection {}{}",
            agreed[0],
            agreed[1],
            agreed[2],
            square_zero[0],
            square_zero[1],
            square_zero[2],
            if projection { "exact" } else { "fails" },
            problems.first().map(|p| format!("; {p}")).unwrap_or_default()
        ),
    )
}

fn gamma10_projection() -> bool {
    let mut r = sampling::rng(1010);
    let (m10, m9, m8) = (clifford::model(10).unwrap(), clifford::model(9).unwrap(), clifford::model(8).unwrap());
    (0..20).all(|_| {
        let p = OctonionicSpinor::new(10, random_oct(&mut r), random_oct(&mut r));
        let q = OctonionicSpinor::new(10, random_oct(&mut r), random_oct(&mut r));
        let (tp, tq) = (octonion::clifford_transport(&p).unwrap(), octonion::clifford_transport(&q).unwrap());
        let g10 = m10.gamma_pairing(&tp.spinors[0], &tq.spinors[0]).unwrap();
        let (rp, rq) = (clifford::restrict_spinor(&tp.spinors[0]), clifford::restrict_spinor(&tq.spinors[0]));
        let g9 = m9.gamma_pairing(&rp, &rq).unwrap();
        let lower = |s: &OctonionicSpinor| {
            octonion::clifford_transport(&OctonionicSpinor::new(8, s.parts[0].clone(), s.parts[1].clone())).unwrap()
        };
        let (p8, q8) = (lower(&p), lower(&q));
        let x = m8.gamma_pairing(&p8.spinors[0], &q8.spinors[1]).unwrap();
        let y = m8.gamma_pairing(&q8.spinors[0], &p8.spinors[1]).unwrap();
        let g8: Vec<GaussianRational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        g9[..] == g10[..9] && g8[..] == g10[..8]
    })
}

fn main() -> ExitCode {
    let mut red = Vec::new();
    let mut regressions = Vec::new();
    let mut report = |k: usize, name: &str, target: Option<f64>, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        let timing = match target {
            Some(t) => format!("{secs:.1}s, target < {t:.0}s"),
            None => format!("{secs:.1}s"),
        };
        println!("criterion {k} {}: {name}: {} ({timing})", if o.passed { "PASS" } else { "FAIL" }, o.detail);
        if !o.passed {
            red.push(k);
            if !o.known_gap {
                regressions.push(k);
            }
        }
    };
    report(1, "Clifford core", Some(5.0), &mut clifford_core);
    report(2, "purity equivalence", Some(60.0), &mut purity);
    let start = Instant::now();
    let reports = catalogue_reports();
    println!(
        "catalogue replay: {CATALOGUE_SAMPLES} samples per class in {:.1}s (target < 300s)",
        start.elapsed().as_secs_f64()
    );
    report(3, "catalogue reproduction", None, &mut || catalogue(&reports));
    report(4, "lower bound", None, &mut || lower_bound(&reports));
    report(5, "abelian sections", None, &mut || sections(&reports));
    report(6, "compatible implies topological", None, &mut compatible_topological);
    report(7, "twisting table", None, &mut twisting_table);
    report(8, "superconformal potentials", Some(30.0), &mut potentials);
    report(9, "octonionic oracle", None, &mut oracle);
    println!("acceptance: {}/9 green; red: {red:?}; unexpected: {regressions:?}", 9 - red.len());
    if regressions.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
