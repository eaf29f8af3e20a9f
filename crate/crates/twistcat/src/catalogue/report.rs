use std::fmt::Write;

use super::{CatalogueReport, TwistingTableReport};

fn status(passed: bool) -> &'static str {
    if passed {
        "PASS"
    } else {
        "FAIL"
    }
}

pub fn render_catalogue_md(r: &CatalogueReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Catalogue verification: dimension {}, {}", r.dim, r.aux);
    let _ = writeln!(s);
    let _ = writeln!(s, "Seed {}, {} samples per class.", r.seed, r.samples_per_class);
    let _ = writeln!(s);
    if r.passed {
        let n = r.classes.len();
        let _ = writeln!(
            s,
            "**{}**: every expected class matched ({n} {}).",
            status(true),
            if n == 1 { "class" } else { "classes" }
        );
    } else {
        let _ = writeln!(s, "**{}**: {} mismatches.", status(false), r.mismatches.len());
    }
    let _ = writeln!(s);
    if !r.classes.is_empty() {
        let _ = writeln!(s, "| class | rank | directions | label | z-gradable | samples |");
        let _ = writeln!(s, "|---|---|---|---|---|---|");
        for c in &r.classes {
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                c.key, c.rank, c.invariant_directions, c.label, c.z_gradable, c.realized
            );
        }
        let _ = writeln!(s);
    } else {
        let _ = writeln!(s, "No nonzero square-zero supercharges.");
        let _ = writeln!(s);
    }
    let _ = writeln!(s, "| check | result |");
    let _ = writeln!(s, "|---|---|");
    let _ = writeln!(s, "| constructive samples | {} |", r.constructive_samples);
    let _ = writeln!(s, "| generic draws (square-zero) | {} ({}) |", r.generic_drawn, r.generic_square_zero);
    let _ = writeln!(s, "| lower-bound violations | {} |", r.lower_bound_violations);
    let _ = writeln!(s, "| reductions landed | {}/{} |", r.reductions_landed, r.reductions_checked);
    let _ = writeln!(s, "| octonionic oracle agreed | {}/{} |", r.oracle_agreed, r.oracle_checked);
    let sec = &r.sections;
    let _ = writeln!(
        s,
        "| abelian sections | covered {} ok, {} failed; fallback {} ok, {} not covered; {} false |",
        sec.covered_ok, sec.covered_failed, sec.fallback_ok, sec.not_covered, sec.false_success
    );
    if !r.mismatches.is_empty() {
        let _ = writeln!(s);
        let _ = writeln!(s, "## Mismatches");
        let _ = writeln!(s);
        for m in &r.mismatches {
            let _ = writeln!(s, "- {m}");
        }
    }
    s
}

pub fn render_twisting_md(r: &TwistingTableReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "# Twisting table: dimension {}, {}", r.dim, r.aux);
    let _ = writeln!(s);
    let _ = writeln!(s, "**{}**", status(r.passed));
    let _ = writeln!(s);
    if !r.homs.is_empty() {
        let _ = writeln!(s, "| homomorphism | compatible classes | dim | datum commutes | result |");
        let _ = writeln!(s, "|---|---|---|---|---|");
        for h in &r.homs {
            let classes = if h.computed.is_empty() {
                "none".to_string()
            } else {
                h.computed.iter().cloned().collect::<Vec<_>>().join(", ")
            };
            let datum = h.datum_commutes.map_or("-".to_string(), |d| d.to_string());
            let _ =
                writeln!(s, "| {} | {} | {} | {} | {} |", h.hom, classes, h.compatible_dim, datum, status(h.passed));
        }
        let _ = writeln!(s);
    }
    if !r.gradability.is_empty() {
        let _ = writeln!(s, "| class | z-gradable | traceless datum | result |");
        let _ = writeln!(s, "|---|---|---|---|");
        for g in &r.gradability {
            let traceless = g.traceless_found.map_or("-".to_string(), |d| d.to_string());
            let _ = writeln!(s, "| {} | {} | {} | {} |", g.class, g.found, traceless, status(g.passed));
        }
        let _ = writeln!(s);
    }
    for m in &r.mismatches {
        let _ = writeln!(s, "- {m}");
    }
    s
}
