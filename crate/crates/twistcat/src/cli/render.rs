use std::fmt::Write;

use super::{ClassifyOutput, CompatOutput, PotentialOutput, SectionOutput, SpinorOutput};
use crate::clifford::PuritySurvey;

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn classify_md(r: &ClassifyOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Classification: dimension {}, {}", r.dim, r.aux);
    let _ = writeln!(s);
    let _ = writeln!(s, "**{}**", status(r.passed));
    let _ = writeln!(s);
    let _ = writeln!(s, "| field | value |");
    let _ = writeln!(s, "|---|---|");
    let _ = writeln!(s, "| square-zero | {} |", yes_no(r.square_zero));
    if let Some(c) = &r.class {
        let _ = writeln!(s, "| rank | {} |", c.rank);
        let _ = writeln!(s, "| invariant directions | {} |", c.invariant_directions);
        let _ = writeln!(s, "| label | {} |", c.label);
        if let Some(p) = c.pure {
            let _ = writeln!(s, "| pure | {} |", yes_no(p));
        }
        for (k, v) in &c.extra {
            let _ = writeln!(s, "| {k} | {} |", crate::catalogue::extra_text(v));
        }
    }
    if let Some(k) = &r.catalogue_class {
        let _ = writeln!(s, "| catalogue class | {k} |");
    }
    if let Some(z) = r.z_gradable {
        let _ = writeln!(s, "| z-gradable | {} |", yes_no(z));
    }
    s
}

pub fn spinor_md(r: &SpinorOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Spinor purity: dimension {}, {:?} sector", r.dim, r.sector);
    let _ = writeln!(s);
    let _ = writeln!(s, "**{}**", status(r.passed));
    let _ = writeln!(s);
    let _ = writeln!(s, "| field | value |");
    let _ = writeln!(s, "|---|---|");
    let _ = writeln!(s, "| pure (nullspace) | {} |", yes_no(r.pure_by_nullspace));
    let _ = writeln!(s, "| pure (Fierz components) | {} |", yes_no(r.pure_by_chevalley));
    let _ = writeln!(s, "| nullspace dimension | {} |", r.nullspace_dim);
    let _ = writeln!(s, "| image dimension | {} |", r.image_dim);
    let _ = writeln!(s, "| image is the orthogonal complement | {} |", yes_no(r.image_is_complement));
    s
}

pub fn survey_md(r: &PuritySurvey) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Purity survey: dimension {}", r.n);
    let _ = writeln!(s);
    let _ = writeln!(s, "**{}**: {} samples, {} pure.", status(r.passed()), r.samples, r.pure);
    let _ = writeln!(s);
    let _ = writeln!(s, "| check | agreed |");
    let _ = writeln!(s, "|---|---|");
    let _ = writeln!(s, "| nullspace and Fierz criteria | {}/{} |", r.routes_agree, r.samples);
    let _ = writeln!(s, "| image is the orthogonal complement | {}/{} |", r.image_is_complement, r.samples);
    s
}

pub fn section_md(r: &SectionOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Abelian section: dimension {}, {}", r.dim, r.aux);
    let _ = writeln!(s);
    let _ = writeln!(s, "**{}**", status(r.passed));
    let _ = writeln!(s);
    let _ = writeln!(s, "| field | value |");
    let _ = writeln!(s, "|---|---|");
    let _ = writeln!(s, "| covered by the hypotheses | {} |", yes_no(r.covered));
    let _ = writeln!(s, "| found | {} |", yes_no(r.found));
    if let Some(m) = r.method {
        let _ = writeln!(s, "| method | {m:?} |");
        let _ = writeln!(s, "| dimension | {} |", r.basis.len());
        let _ = writeln!(s, "| replayed | {} |", yes_no(r.verified));
    }
    if let Some(why) = &r.reason {
        let _ = writeln!(s, "| reason | {why} |");
    }
    s
}

pub fn compat_md(r: &CompatOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Twisting compatibility: dimension {}, {}, {}", r.dim, r.aux, r.hom);
    let _ = writeln!(s);
    let _ = writeln!(s, "| field | value |");
    let _ = writeln!(s, "|---|---|");
    let _ = writeln!(s, "| compatible | {} |", yes_no(r.compatible));
    let _ = writeln!(s, "| twisting datum | {} |", yes_no(r.twisting_datum.is_some()));
    let _ = writeln!(s, "| datum commutes with the homomorphism | {} |", yes_no(r.datum_commutes));
    s
}

pub fn potential_md(r: &PotentialOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Affine potential: {}, {}", r.algebra, r.hom);
    let _ = writeln!(s);
    let _ = writeln!(s, "**{}**", status(r.passed));
    let _ = writeln!(s);
    let _ = writeln!(s, "| check | holds |");
    let _ = writeln!(s, "|---|---|");
    let _ = writeln!(s, "| Jacobi identity | {} |", yes_no(r.jacobi));
    for (k, e) in r.equations.iter().enumerate() {
        let _ = writeln!(s, "| equation {} | {} |", k + 1, yes_no(*e));
    }
    let _ = writeln!(s, "| abelian image | {} |", yes_no(r.abelian));
    let _ = writeln!(s, "| equation 1 with zero potential | {} |", yes_no(r.zero_potential_equation_1));
    s
}
