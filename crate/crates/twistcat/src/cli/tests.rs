use std::io::Write as _;

use super::*;
use crate::catalogue::{expected_table, sample_square_zero, SampleSpec};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("twistcat").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn temp_json(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn coeffs_json(coeffs: &[GaussianRational]) -> String {
    serde_json::json!({ "coeffs": coeffs }).to_string()
}

fn class_sample(dim: usize, aux: &str, prefix: &str) -> Supercharge {
    let aux: AuxCount = aux.parse().unwrap();
    let class = expected_table(dim, aux).unwrap().iter().position(|c| c.key().starts_with(prefix)).unwrap();
    sample_square_zero(&SampleSpec { dim, aux, class, seed: 42, bound: 3 }).unwrap()
}

fn path(f: &tempfile::NamedTempFile) -> &str {
    f.path().to_str().unwrap()
}

#[test]
fn classify_rank_two_zero_in_dimension_four() {
    let q = class_sample(4, "N=2", "(2,0)");
    let f = temp_json(&coeffs_json(q.coeffs()));
    let (code, out, _) = call(&["classify", "--dim", "4", "--aux", "N=2", "--in", path(&f)]);
    assert_eq!(code, 0);
    let r: ClassifyOutput = serde_json::from_str(&out).unwrap();
    assert_eq!(r.class.unwrap().label, susy::TwistLabel::Topological);
    assert_eq!(r.catalogue_class.as_deref().map(|k| k.starts_with("(2,0) topological")), Some(true));
}

#[test]
fn classify_of_the_normal_form_is_idempotent() {
    for (dim, aux, prefix) in [(3, "N=4", "2 "), (6, "N=(1,1)", "(2,2)"), (8, "N=1", "(1,1)")] {
        let f = temp_json(&coeffs_json(class_sample(dim, aux, prefix).coeffs()));
        let d = dim.to_string();
        let (_, out, _) = call(&["classify", "--dim", &d, "--aux", aux, "--in", path(&f)]);
        let first: ClassifyOutput = serde_json::from_str(&out).unwrap();
        let g = temp_json(&coeffs_json(first.normal_form.as_ref().unwrap()));
        let (code, out, _) = call(&["classify", "--dim", &d, "--aux", aux, "--in", path(&g)]);
        let second: ClassifyOutput = serde_json::from_str(&out).unwrap();
        assert_eq!(code, 0);
        assert_eq!(first.class, second.class);
        assert_eq!(first.normal_form, second.normal_form);
    }
}

#[test]
fn block_and_flat_inputs_agree() {
    let q = class_sample(2, "N=(2,2)", "(1,1)");
    let blocks: Vec<Vec<Vec<String>>> = (0..q.algebra().blocks().len())
        .map(|b| {
            let m = q.block_matrix(b);
            (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
        })
        .collect();
    let f = temp_json(&serde_json::json!({ "dim": 2, "aux": "N=(2,2)", "blocks": blocks }).to_string());
    let g = temp_json(&coeffs_json(q.coeffs()));
    let a = call(&["classify", "--dim", "2", "--aux", "N=(2,2)", "--in", path(&f)]);
    let b = call(&["classify", "--dim", "2", "--aux", "n=(2,2)", "--in", path(&g)]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
}

#[test]
fn not_square_zero_exits_one() {
    let alg = susy::build_susy(3, AuxCount::Single(1)).unwrap();
    let q = (0..alg.sigma_dim()).map(|i| alg.basis_element(i)).find(|q| !susy::is_square_zero(q)).unwrap();
    let f = temp_json(&coeffs_json(q.coeffs()));
    let (code, out, _) = call(&["classify", "--dim", "3", "--aux", "N=1", "--in", path(&f)]);
    assert_eq!(code, 1);
    assert!(!serde_json::from_str::<ClassifyOutput>(&out).unwrap().square_zero);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(call(&["classify"]).0, 2);
    assert_eq!(call(&["classify", "--dim", "11", "--aux", "N=1", "--in", "x"]).0, 2);
    assert_eq!(call(&["verify-catalogue", "--dim", "3", "--bogus"]).0, 2);
    assert_eq!(call(&["verify-catalogue", "--dim", "3", "--format", "xml"]).0, 2);
    assert_eq!(call(&["verify-catalogue", "--dim", "3", "--aux", "N=7"]).0, 2);
    assert_eq!(call(&["twist-compat", "--dim", "4", "--aux", "N=4", "--hom", "half"]).0, 2);
    assert_eq!(call(&["classify", "--dim", "3", "--aux", "N=1", "--in", "/nonexistent/q.json"]).0, 2);
    assert_eq!(call(&["frobnicate"]).0, 2);
    assert_eq!(call(&["--version"]).0, 0);
}

#[test]
fn malformed_input_reports_line_and_field() {
    let f = temp_json("{\n  \"coeffs\": [\"1\",\n  oops]\n}");
    let (code, _, err) = call(&["classify", "--dim", "3", "--aux", "N=1", "--in", path(&f)]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");

    let g = temp_json(r#"{"coeffs": ["1", "0"], "colour": 3}"#);
    let (code, _, err) = call(&["classify", "--dim", "3", "--aux", "N=1", "--in", path(&g)]);
    assert_eq!(code, 2);
    assert!(err.contains("colour"), "{err}");

    let h = temp_json(r#"{"coeffs": ["1", "x/y"]}"#);
    let (code, _, err) = call(&["classify", "--dim", "3", "--aux", "N=1", "--in", path(&h)]);
    assert_eq!(code, 2);
    assert!(err.contains("coeffs"), "{err}");

    let k = temp_json(r#"{"coeffs": ["1"]}"#);
    assert_eq!(call(&["classify", "--dim", "3", "--aux", "N=1", "--in", path(&k)]).0, 2);

    let z = temp_json(r#"{"coeffs": [0, 0]}"#);
    assert_eq!(call(&["classify", "--dim", "3", "--aux", "N=1", "--in", path(&z)]).0, 2);

    let d = temp_json(r#"{"dim": 4, "coeffs": [1, 0]}"#);
    assert_eq!(call(&["classify", "--dim", "3", "--aux", "N=1", "--in", path(&d)]).0, 2);
}

#[test]
fn verify_catalogue_markdown_and_stable_json() {
    let (code, out, _) = call(&["verify-catalogue", "--dim", "9", "--samples", "2", "--seed", "1", "--format", "md"]);
    assert_eq!(code, 0);
    assert!(out.contains("**PASS**: every expected class matched"));
    let a = call(&["verify-catalogue", "--dim", "4", "--aux", "N=1", "--samples", "2", "--seed", "5"]);
    let b = call(&["verify-catalogue", "--dim", "4", "--aux", "N=1", "--samples", "2", "--seed", "5"]);
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let parsed: VerifyOutput = serde_json::from_str(&a.1).unwrap();
    assert!(parsed.passed && parsed.reports.len() == 1);
}

#[test]
fn pure_spinor_file_and_survey() {
    let m = clifford::model(6).unwrap();
    let q = clifford::random_pure_spinor(m, Sector::Plus, &mut crate::sampling::rng(1), 2);
    let f = temp_json(&serde_json::json!({ "sector": "plus", "coeffs": q.coeffs }).to_string());
    let (code, out, _) = call(&["pure-spinor", "--dim", "6", "--in", path(&f)]);
    assert_eq!(code, 0);
    let r: SpinorOutput = serde_json::from_str(&out).unwrap();
    assert!(r.pure_by_nullspace && r.pure_by_chevalley);
    assert_eq!((r.nullspace_dim, r.image_dim), (3, 3));
    let (code, out, _) = call(&["pure-spinor", "--dim", "8", "--samples", "10", "--format", "md"]);
    assert_eq!(code, 0);
    assert!(out.contains("10/10"));
}

#[test]
fn section_for_a_chiral_supercharge() {
    let q = class_sample(4, "N=1", "(1,0)");
    let f = temp_json(&coeffs_json(q.coeffs()));
    let (code, out, _) = call(&["section", "--dim", "4", "--aux", "N=1", "--in", path(&f)]);
    assert_eq!(code, 0);
    let r: SectionOutput = serde_json::from_str(&out).unwrap();
    assert!(r.covered && r.found && r.verified);
    assert_eq!(r.basis.len(), 2);
    assert_eq!(r.method, Some(susy::SectionMethod::ChiralComplement));
}

#[test]
fn twist_compat_single_and_table() {
    let (code, out, _) = call(&["twist-compat", "--dim", "4", "--aux", "N=4", "--format", "md"]);
    assert_eq!(code, 0);
    assert!(out.contains("vafa_witten"));
    let q = class_sample(4, "N=2", "(2,0)");
    let f = temp_json(&coeffs_json(q.coeffs()));
    let (code, out, _) = call(&["twist-compat", "--dim", "4", "--aux", "N=2", "--hom", "pi2", "--in", path(&f)]);
    assert_eq!(code, 0);
    let r: CompatOutput = serde_json::from_str(&out).unwrap();
    assert!(!r.compatible);
    assert!(r.twisting_datum.is_some());
    assert_eq!(call(&["twist-compat", "--dim", "4", "--aux", "N=2", "--hom", "nope", "--in", path(&f)]).0, 1);
}

#[test]
fn potentials() {
    let (code, out, _) = call(&["potential", "--dim", "2", "--alpha", "-1", "--beta", "1"]);
    assert_eq!(code, 0);
    let r: PotentialOutput = serde_json::from_str(&out).unwrap();
    assert!(r.passed && !r.zero_potential_equation_1);
    let (code, out, _) = call(&["potential", "--dim", "3"]);
    assert_eq!(code, 1);
    let r: PotentialOutput = serde_json::from_str(&out).unwrap();
    assert!(r.jacobi && !r.equations[2]);
    assert_eq!(call(&["potential", "--dim", "2", "--alpha", "2"]).0, 2);
    assert_eq!(call(&["potential", "--dim", "4"]).0, 2);
}
