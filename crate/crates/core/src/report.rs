//! Machine-readable (JSON) and plain-text renderings of an analysis.
//!
//! Exact values are always written as strings such as `"3/8"` or
//! `"(1/6)*u + 1/2"`.

use serde::Serialize;

use crate::analysis::AnalysisReport;
use crate::equation::{EquationSpec, StructureFlags, ValidationReport};
use crate::solver::SolutionBasis;

#[derive(Debug, Clone, Serialize)]
pub struct FieldJson {
    pub min_poly: String,
    pub degree: usize,
    pub distinguished_root: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeJson {
    pub p: usize,
    #[serde(rename = "T")]
    pub t: Vec<String>,
    pub identity_admissible: bool,
    pub c_tilde: Option<String>,
    pub kernel_witnesses: Vec<Vec<usize>>,
    pub classification: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonomialJson {
    pub p: usize,
    #[serde(rename = "F_coeff")]
    pub f_coeff: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisJson {
    pub constant: bool,
    pub monomials: Vec<MonomialJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReportJson {
    pub n: usize,
    pub field: FieldJson,
    pub validation: ValidationReport,
    pub flags: StructureFlags,
    pub degrees: Vec<DegreeJson>,
    pub basis: BasisJson,
}

pub fn field_json(spec: &EquationSpec) -> FieldJson {
    let f = spec.field();
    FieldJson {
        min_poly: f.min_poly_string(),
        degree: f.degree(),
        distinguished_root: f.distinguished_root_string(),
    }
}

pub fn report_json(spec: &EquationSpec, report: &AnalysisReport, basis: &SolutionBasis) -> ReportJson {
    ReportJson {
        n: spec.n(),
        field: field_json(spec),
        validation: report.validation.clone(),
        flags: report.flags,
        degrees: report
            .degree_reports
            .iter()
            .map(|r| DegreeJson {
                p: r.p,
                t: r.t.iter().map(|x| x.to_string()).collect(),
                identity_admissible: r.identity_admissible,
                c_tilde: r.c_tilde.as_ref().map(|c| c.to_string()),
                kernel_witnesses: r.kernel_witnesses.iter().map(|w| w.indices().to_vec()).collect(),
                classification: r.classification.to_string(),
            })
            .collect(),
        basis: BasisJson {
            constant: report.constant_term_admissible,
            monomials: basis
                .terms
                .iter()
                .map(|t| MonomialJson {
                    p: t.p,
                    f_coeff: t.f_coeff.to_string(),
                })
                .collect(),
        },
    }
}

/// Pretty-printed JSON, byte-for-byte deterministic.
pub fn render_json(spec: &EquationSpec, report: &AnalysisReport, basis: &SolutionBasis) -> String {
    serde_json::to_string_pretty(&report_json(spec, report, basis)).expect("report serializes") + "\n"
}

pub fn render_validation_json(report: &ValidationReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes") + "\n"
}

pub fn render_validation_text(report: &ValidationReport) -> String {
    if report.ok {
        return "validation: ok\n".to_string();
    }
    let mut out = String::from("validation: failed\n");
    for v in &report.violations {
        out.push_str(&format!("  {v}\n"));
    }
    out
}

fn x_power(k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => "x".into(),
        _ => format!("x^{k}"),
    }
}

pub fn render_text(spec: &EquationSpec, report: &AnalysisReport, basis: &SolutionBasis) -> String {
    let f = spec.field();
    let mut out = String::new();
    out.push_str(&format!("n = {}\n", spec.n()));
    if f.is_rational() {
        out.push_str("field: Q\n");
    } else {
        out.push_str(&format!(
            "field: Q({}), {} a root of {} (degree {}), {} = {}\n",
            f.symbol(),
            f.symbol(),
            f.min_poly_string(),
            f.degree(),
            f.symbol(),
            f.distinguished_root_string()
        ));
    }
    out.push_str(&render_validation_text(&report.validation));
    let fl = &report.flags;
    out.push_str(&format!(
        "flags: beta_is_one_minus_alpha={} alpha_all_one={} symmetric_swap={} coeff_sum_nonzero={}\n",
        fl.beta_is_one_minus_alpha, fl.alpha_all_one, fl.symmetric_swap, fl.coeff_sum_nonzero
    ));
    for r in &report.degree_reports {
        out.push_str(&format!("degree {}: {}\n", r.p, r.classification));
        let t: Vec<String> = r.t.iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("  T = [{}]\n", t.join(", ")));
        out.push_str(&format!("  identity admissible: {}\n", r.identity_admissible));
        match &r.c_tilde {
            Some(c) => out.push_str(&format!("  c_tilde = {c}\n")),
            None => out.push_str("  c_tilde: none\n"),
        }
        if r.kernel_witnesses.is_empty() {
            out.push_str("  kernel witnesses: none\n");
        } else {
            let w: Vec<String> = r
                .kernel_witnesses
                .iter()
                .map(|w| {
                    let v: Vec<String> = w.indices().iter().map(|h| h.to_string()).collect();
                    format!("({})", v.join(","))
                })
                .collect();
            out.push_str(&format!("  kernel witnesses: {}\n", w.join(" ")));
        }
    }
    out.push_str("basis:\n");
    out.push_str(&format!("  f = 1, F = ({})*x + C\n", basis.constant_f_coeff));
    for t in &basis.terms {
        out.push_str(&format!(
            "  f = {}, F = ({})*{}\n",
            x_power(t.p),
            t.f_coeff,
            x_power(t.p + 1)
        ));
    }
    for a in &basis.incomplete {
        out.push_str(&format!(
            "  degree {} ({}): kernel solutions not described\n",
            a.p, a.classification
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::parser::parse;
    use crate::solver::build_basis;

    const S55: &str = "field u: t^2 - 3\na = [1/2, 1/2]\nalpha = [(3+u)/6, (3-u)/6]\nbeta = [(3-u)/6, (3+u)/6]\n";

    #[test]
    fn json_shape() {
        let s = parse(S55).unwrap();
        let r = analyze(&s, None).unwrap();
        let b = build_basis(&s, &r).unwrap();
        let v: serde_json::Value = serde_json::from_str(&render_json(&s, &r, &b)).unwrap();
        assert_eq!(v["n"], 2);
        assert_eq!(v["field"]["min_poly"], "t^2 - 3");
        assert_eq!(v["degrees"][1]["c_tilde"], "1/3");
        assert_eq!(v["degrees"][2]["classification"], "UNIQUE_MONOMIAL");
        assert_eq!(v["degrees"][0]["T"][0], "1/2");
        assert_eq!(v["basis"]["monomials"][2]["F_coeff"], "1/4");
        assert_eq!(v["basis"]["constant"], true);
        assert_eq!(v["validation"]["ok"], true);
        assert_eq!(v["flags"]["symmetric_swap"], true);
    }

    #[test]
    fn text_mentions_values() {
        let s = parse(S55).unwrap();
        let r = analyze(&s, None).unwrap();
        let b = build_basis(&s, &r).unwrap();
        let text = render_text(&s, &r, &b);
        assert!(text.contains("degree 3: UNIQUE_MONOMIAL"));
        assert!(text.contains("c_tilde = 1/4"));
        assert!(text.contains("f = x^2, F = (1/3)*x^3"));
    }
}
