//! The full-analysis report: system summary, decision verdicts, complex
//! sizes, cohomology per flavor, rank bound, warnings. Field order is fixed
//! so identical inputs produce byte-identical reports.

use std::fmt::Write as _;

use crate::analysis::{self, Decision, Verdict};
use crate::cohomology::{self, CohomologyError};
use crate::complex::{build_complex, Flavor, SystemAtPosition};
use crate::word::{self, SequenceSpec, SubstitutionFamily};

#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub warnings: Vec<String>,
}

fn render_substitution(family: &SubstitutionFamily, idx: usize) -> String {
    let sub = family.substitution(idx);
    let a = family.alphabet();
    let rules: Vec<String> = (0..a.len())
        .map(|l| format!("{} -> {}", a.letter(l), a.render_word(sub.image(l))))
        .collect();
    rules.join(" / ")
}

fn verdict_line(d: &Decision) -> String {
    d.to_string()
}

/// Build the analyze report. Cohomology sections need a sequence spec;
/// without one only the family-level analysis is reported.
pub fn analyze(
    family: &SubstitutionFamily,
    spec: Option<&SequenceSpec>,
    include_matrices: bool,
) -> Result<Report, CohomologyError> {
    let mut out = String::new();
    let mut warnings: Vec<String> = Vec::new();
    let a = family.alphabet();

    out.push_str("== system ==\n");
    let _ = writeln!(out, "alphabet: {}", a.letters().join(" "));
    for i in 0..family.len() {
        let _ = writeln!(
            out,
            "sub {}: {}",
            family.substitution(i).name(),
            render_substitution(family, i)
        );
    }
    match spec {
        Some(s) => {
            let _ = writeln!(out, "sequence: {}", s.render(family));
        }
        None => out.push_str("sequence: (none)\n"),
    }

    out.push_str("\n== analysis ==\n");
    for i in 0..family.len() {
        let d = analysis::is_primitive(a, family.substitution(i));
        let _ = writeln!(
            out,
            "primitive {}: {}",
            family.substitution(i).name(),
            verdict_line(&d)
        );
    }
    let fam_prim = analysis::is_family_primitive(family, analysis::DEFAULT_CAP);
    let _ = writeln!(out, "family primitive: {}", verdict_line(&fam_prim));
    if let Some(s) = spec {
        let pair = analysis::is_pair_primitive(family, s, analysis::DEFAULT_CAP);
        let _ = writeln!(out, "pair primitive: {}", verdict_line(&pair));
    }
    let sc = analysis::is_self_correcting(family, analysis::DEFAULT_CAP);
    let _ = writeln!(out, "self-correcting: {}", verdict_line(&sc));
    if sc.verdict == Verdict::Unknown {
        warnings.push("self-correcting check inconclusive at the default cap".to_string());
    }
    out.push_str("condition 1 (injectivity on the hull): unchecked\n");

    out.push_str("\n== perron-frobenius ==\n");
    let mut all_primitive = true;
    for i in 0..family.len() {
        match word::pf_data(family.substitution(i), word::PF_DEFAULT_TOL) {
            Ok(pf) => {
                let lens: Vec<String> = pf
                    .left_eigenvector
                    .iter()
                    .map(|x| format!("{x:.6}"))
                    .collect();
                let _ = writeln!(
                    out,
                    "{}: lambda = {:.6}, tile lengths = [{}]",
                    family.substitution(i).name(),
                    pf.eigenvalue,
                    lens.join(", ")
                );
            }
            Err(e) => {
                all_primitive = false;
                let _ = writeln!(out, "{}: {}", family.substitution(i).name(), e);
            }
        }
    }
    if family.len() > 1 && all_primitive {
        match word::common_left_pf(family, word::COMMON_PF_DEFAULT_TOL) {
            Ok(c) => match c.vector {
                Some(v) => {
                    let vs: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
                    let _ = writeln!(out, "common left eigenvector: [{}]", vs.join(", "));
                }
                None => {
                    let _ = writeln!(
                        out,
                        "common left eigenvector: none (best residual {:.3e})",
                        c.worst_residual
                    );
                    warnings.push(
                        "no common left Perron-Frobenius eigenvector; shared tile lengths \
                         unavailable (cohomology is unaffected)"
                            .to_string(),
                    );
                }
            },
            Err(e) => {
                let _ = writeln!(out, "common left eigenvector: {e}");
            }
        }
    }

    if let Some(spec) = spec {
        out.push_str("\n== complexes (position 0) ==\n");
        for flavor in Flavor::all() {
            let sys = SystemAtPosition::new(family, spec, 0, flavor);
            let c = build_complex(&sys);
            let _ = writeln!(
                out,
                "{}: {} edges, {} vertices",
                flavor,
                c.edge_count(),
                c.vertex_count()
            );
        }
        if !spec.preperiod().is_empty() {
            let _ = writeln!(
                out,
                "(preperiod of length {} contributes {} further complexes; the limit only \
                 depends on the cycle)",
                spec.preperiod().len(),
                spec.preperiod().len()
            );
        }

        if include_matrices {
            out.push_str("\n== matrices ==\n");
            let flavor = default_flavor(family);
            out.push_str(&matrices_text(family, spec, flavor)?);
        }

        out.push_str("\n== cohomology ==\n");
        for flavor in Flavor::all() {
            let g0 = cohomology::h0(family, spec, flavor)?;
            let h1 = cohomology::h1(family, spec, flavor)?;
            let _ = writeln!(out, "flavor {}: H0 = {}, H1 = {}", flavor, g0, h1.group);
            warnings.extend(h1.warnings);
        }
        let bound_report = cohomology::rank_bound_report(family, spec, default_flavor(family))?;
        let _ = writeln!(
            out,
            "rank bound: rank {} <= {} (n^2-n+1): {}",
            bound_report.rank,
            bound_report.bound,
            if bound_report.ok { "ok" } else { "VIOLATED" }
        );
    } else {
        out.push_str("\n== cohomology ==\n");
        out.push_str("skipped: no mixing sequence (add a 'sequence:' line or --sequence)\n");
    }

    out.push_str("\n== warnings ==\n");
    let mut dedup: Vec<String> = Vec::new();
    for w in &warnings {
        if !dedup.contains(w) {
            dedup.push(w.clone());
        }
    }
    if dedup.is_empty() {
        out.push_str("(none)\n");
    } else {
        for w in &dedup {
            let _ = writeln!(out, "- {w}");
        }
    }
    Ok(Report {
        text: out,
        warnings: dedup,
    })
}

/// Classical route for a single substitution, always-valid left-collared
/// route for true mixed families.
pub fn default_flavor(family: &SubstitutionFamily) -> Flavor {
    if family.len() == 1 {
        Flavor::Ap
    } else {
        Flavor::ApLeftModified
    }
}

/// The matrices block: coboundaries per canonical position, then the
/// bonding maps of every step of the cycle (and of the preperiod).
pub fn matrices_text(
    family: &SubstitutionFamily,
    spec: &SequenceSpec,
    flavor: Flavor,
) -> Result<String, CohomologyError> {
    let mut out = String::new();
    let npos = spec.position_count();
    let _ = writeln!(
        out,
        "flavor {} (preperiod {}, period {})",
        flavor,
        spec.preperiod().len(),
        spec.period().len()
    );
    for p in 0..npos {
        let sys = SystemAtPosition::new(family, spec, p, flavor);
        let c = build_complex(&sys);
        let d = crate::complex::coboundary_matrix(&c);
        let _ = writeln!(
            out,
            "delta1 position {} ({} edges, {} vertices) =",
            p,
            c.edge_count(),
            c.vertex_count()
        );
        out.push_str(&d.to_text());
    }
    for step in 1..=npos {
        let src = SystemAtPosition::new(family, spec, step, flavor);
        let tgt = SystemAtPosition::new(family, spec, step - 1, flavor);
        let maps = crate::complex::bonding_maps(&src, &tgt)?;
        let _ = writeln!(
            out,
            "step {} via {} (source position {}, target position {}) =",
            step,
            family.substitution(spec.index_at(step)).name(),
            spec.canonical_position(step),
            step - 1
        );
        out.push_str("A0 =\n");
        out.push_str(&maps.a0.to_text());
        out.push_str("A1 =\n");
        out.push_str(&maps.a1.to_text());
    }
    Ok(out)
}
