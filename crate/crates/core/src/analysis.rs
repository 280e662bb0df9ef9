//! Per-degree decision procedure: condition sums, admissibility of the
//! identity embedding, kernel search and classification.

use std::fmt;

use num_traits::One;
use serde::Serialize;

use crate::equation::{degree_bound, detect_structure, validate, EquationSpec, StructureFlags, ValidationReport};
use crate::error::{Error, Result};
use crate::number_field::{kernel_search_with_precision, EmbeddingTuple, FieldElement, PrecisionConfig};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    /// The degree-`p` part is exactly `gamma * x^p`.
    UniqueMonomial,
    /// `gamma * x^p` plus kernel solutions that are not described.
    MonomialPlusKernel,
    /// No nonzero degree-`p` solution.
    None,
    /// Kernel witnesses exist but no monomial solution; undecided here.
    SynthesisRequired,
}

impl Classification {
    pub fn as_str(self) -> &'static str {
        match self {
            Classification::UniqueMonomial => "UNIQUE_MONOMIAL",
            Classification::MonomialPlusKernel => "MONOMIAL_PLUS_KERNEL",
            Classification::None => "NONE",
            Classification::SynthesisRequired => "SYNTHESIS_REQUIRED",
        }
    }

    /// Whether `x^p` belongs to the solution basis.
    pub fn has_monomial(self) -> bool {
        matches!(self, Classification::UniqueMonomial | Classification::MonomialPlusKernel)
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeReport {
    pub p: usize,
    /// `T_0, ..., T_p`.
    pub t: Vec<FieldElement>,
    pub identity_admissible: bool,
    /// The common value of the `T_l` when they all agree and are nonzero,
    /// zero when they all vanish, absent otherwise.
    pub c_tilde: Option<FieldElement>,
    pub kernel_witnesses: Vec<EmbeddingTuple>,
    pub classification: Classification,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisReport {
    pub validation: ValidationReport,
    pub flags: StructureFlags,
    pub degree_reports: Vec<DegreeReport>,
    /// Constants always solve the equation, with `F(x) = (sum a_i) k x`.
    pub constant_term_admissible: bool,
    /// Fingerprint of the analyzed spec.
    pub fingerprint: u64,
    /// Largest working precision the zero tests needed (0 if none).
    pub precision_used: u32,
}

impl AnalysisReport {
    pub fn degree(&self, p: usize) -> Option<&DegreeReport> {
        self.degree_reports.iter().find(|r| r.p == p)
    }
}

fn require_valid(spec: &EquationSpec) -> Result<ValidationReport> {
    let report = validate(spec);
    if report.ok {
        Ok(report)
    } else {
        Err(Error::PreconditionFailed {
            reason: "equation fails validation".into(),
            validation: Some(report),
        })
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut b = Rational::one();
    for i in 0..k {
        b = b * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    b
}

/// `sum_i a_i * alpha_i^k`.
pub fn alpha_power_sum(spec: &EquationSpec, k: u32) -> FieldElement {
    spec.a()
        .iter()
        .zip(spec.alpha())
        .fold(FieldElement::constant(spec.field(), Rational::from_integer(0.into())), |s, (a, al)| {
            &s + &(a * &al.pow(k))
        })
}

/// `[T_0, ..., T_p]` with `T_l = sum_i a_i C(p, l) alpha_i^l beta_i^(p-l)`.
pub fn condition_sums(spec: &EquationSpec, p: usize) -> Result<Vec<FieldElement>> {
    require_valid(spec)?;
    let bound = degree_bound(spec);
    if p == 0 || p > bound {
        return Err(Error::precondition(format!("degree {p} outside 1..={bound}")));
    }
    Ok(sums_unchecked(spec, p))
}

fn sums_unchecked(spec: &EquationSpec, p: usize) -> Vec<FieldElement> {
    let zero = FieldElement::constant(spec.field(), Rational::from_integer(0.into()));
    (0..=p)
        .map(|l| {
            let s = (0..spec.n()).fold(zero.clone(), |acc, i| {
                let t = &(&spec.a()[i] * &spec.alpha()[i].pow(l as u32)) * &spec.beta()[i].pow((p - l) as u32);
                &acc + &t
            });
            &s * &FieldElement::rational(binomial(p, l))
        })
        .collect()
}

pub fn classify_degree(spec: &EquationSpec, p: usize) -> Result<DegreeReport> {
    classify_degree_with(spec, p, &PrecisionConfig::default()).map(|(r, _)| r)
}

/// As [`classify_degree`], also returning the working precision used.
pub fn classify_degree_with(spec: &EquationSpec, p: usize, cfg: &PrecisionConfig) -> Result<(DegreeReport, u32)> {
    let t = condition_sums(spec, p)?;
    let all_equal = t.iter().all(|x| *x == t[0]);
    let identity_admissible = all_equal && !t[0].is_zero();
    let c_tilde = all_equal.then(|| t[0].clone());
    let (kernel_witnesses, bits) = kernel_search_with_precision(spec, p, cfg)?;
    let all_zero = all_equal && t[0].is_zero();
    let identity = EmbeddingTuple::constant(spec.field().distinguished_root_index(), p);
    if all_zero != kernel_witnesses.contains(&identity) {
        return Err(Error::InternalInconsistency(format!(
            "degree {p}: vanishing condition sums disagree with the kernel search at the identity tuple"
        )));
    }
    let classification = match (identity_admissible, kernel_witnesses.is_empty()) {
        (true, true) => Classification::UniqueMonomial,
        (true, false) => Classification::MonomialPlusKernel,
        (false, true) => Classification::None,
        (false, false) => Classification::SynthesisRequired,
    };
    Ok((
        DegreeReport {
            p,
            t,
            identity_admissible,
            c_tilde,
            kernel_witnesses,
            classification,
        },
        bits,
    ))
}

/// Reports for `p = 1 ..= min(max_degree, 2n - 1)`.
pub fn analyze(spec: &EquationSpec, max_degree: Option<usize>) -> Result<AnalysisReport> {
    analyze_with(spec, max_degree, &PrecisionConfig::default())
}

pub fn analyze_with(spec: &EquationSpec, max_degree: Option<usize>, cfg: &PrecisionConfig) -> Result<AnalysisReport> {
    let validation = require_valid(spec)?;
    let top = max_degree.map_or(degree_bound(spec), |m| m.min(degree_bound(spec)));
    let mut degree_reports = Vec::with_capacity(top);
    let mut precision_used = 0;
    for p in 1..=top {
        let (r, bits) = classify_degree_with(spec, p, cfg)?;
        precision_used = precision_used.max(bits);
        degree_reports.push(r);
    }
    Ok(AnalysisReport {
        validation,
        flags: detect_structure(spec),
        degree_reports,
        constant_term_admissible: true,
        fingerprint: spec.fingerprint(),
        precision_used,
    })
}

/// `c_{p-1} = ((p+1)/p) c_p` and `sum_i a_i alpha_i^(p-2) = ((p+1)/(p-1)) c_p`,
/// both confirmed exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct DescendingRelation {
    pub p: usize,
    pub c_p: FieldElement,
    pub c_prev: FieldElement,
    pub power_sum: FieldElement,
}

fn check_report(spec: &EquationSpec, report: &AnalysisReport) -> Result<()> {
    if report.fingerprint != spec.fingerprint() {
        return Err(Error::precondition("report was produced from a different equation"));
    }
    Ok(())
}

/// For `beta_i = 1 - alpha_i` with `sum a_i != 0`: admissibility at `p`
/// forces admissibility at `p - 1` with the stated ratios.
pub fn descending_check(spec: &EquationSpec, report: &AnalysisReport) -> Result<Vec<DescendingRelation>> {
    check_report(spec, report)?;
    let flags = detect_structure(spec);
    if !flags.beta_is_one_minus_alpha || !flags.coeff_sum_nonzero {
        return Err(Error::StructureMismatch(
            "descending relations need beta_i = 1 - alpha_i and a nonzero coefficient sum".into(),
        ));
    }
    let mut out = Vec::new();
    for r in &report.degree_reports {
        let p = r.p;
        if p < 2 || !r.identity_admissible {
            continue;
        }
        let c_p = r.c_tilde.clone().expect("admissible degree carries c_tilde");
        let prev = report
            .degree(p - 1)
            .filter(|q| q.identity_admissible)
            .ok_or_else(|| Error::InternalInconsistency(format!("degree {p} admissible but degree {} is not", p - 1)))?;
        let c_prev = prev.c_tilde.clone().expect("admissible degree carries c_tilde");
        let ratio = |num: usize, den: usize| {
            FieldElement::rational(Rational::new((num as i64).into(), (den as i64).into()))
        };
        if c_prev != &ratio(p + 1, p) * &c_p {
            return Err(Error::InternalInconsistency(format!(
                "c_{} = {c_prev} but ({}/{p}) c_{p} = {}",
                p - 1,
                p + 1,
                &ratio(p + 1, p) * &c_p
            )));
        }
        let power_sum = alpha_power_sum(spec, (p - 2) as u32);
        if power_sum != &ratio(p + 1, p - 1) * &c_p {
            return Err(Error::InternalInconsistency(format!(
                "sum a_i alpha_i^{} = {power_sum} but ({}/{}) c_{p} = {}",
                p - 2,
                p + 1,
                p - 1,
                &ratio(p + 1, p - 1) * &c_p
            )));
        }
        out.push(DescendingRelation {
            p,
            c_p,
            c_prev,
            power_sum,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniversalConstant {
    /// Every admissible degree has `c_p = sum a_i`.
    pub holds: bool,
    pub admissible_degrees: Vec<usize>,
}

/// For `alpha_i = 1`: every admissible `c_p` equals `sum a_i`.
pub fn universal_constant_check(spec: &EquationSpec, report: &AnalysisReport) -> Result<UniversalConstant> {
    check_report(spec, report)?;
    if !detect_structure(spec).alpha_all_one {
        return Err(Error::StructureMismatch("universal constant needs alpha_i = 1 for all i".into()));
    }
    let sum = spec.coeff_sum();
    let admissible: Vec<&DegreeReport> = report.degree_reports.iter().filter(|r| r.identity_admissible).collect();
    Ok(UniversalConstant {
        holds: admissible.iter().all(|r| r.c_tilde.as_ref() == Some(&sum)),
        admissible_degrees: admissible.iter().map(|r| r.p).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::nf_create;
    use crate::QPoly;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    fn sqrt3_55(conjugate: bool) -> EquationSpec {
        let k = nf_create(QPoly::new(ints(&[-3, 0, 1])), None).unwrap();
        let u = FieldElement::generator(&k);
        let u = if conjugate { -u } else { u };
        let lam = &(&u + &FieldElement::from_i64(3)) / &FieldElement::from_i64(6);
        let mu = &FieldElement::from_i64(1) - &lam;
        let half = FieldElement::rational(q(1, 2));
        EquationSpec::new(k, vec![half.clone(), half], vec![lam.clone(), mu.clone()], vec![mu, lam]).unwrap()
    }

    fn spec54() -> EquationSpec {
        EquationSpec::rational(&[q(1, 4), q(3, 4)], &[q(1, 1), q(1, 3)], &[q(0, 1), q(2, 3)]).unwrap()
    }

    #[test]
    fn sums_for_55() {
        let s = sqrt3_55(false);
        let expect = [q(1, 2), q(1, 3), q(1, 4)];
        for p in 1..=3 {
            let t = condition_sums(&s, p).unwrap();
            assert_eq!(t.len(), p + 1);
            assert!(t.iter().all(|x| x.as_rational() == Some(expect[p - 1].clone())));
        }
    }

    #[test]
    fn classify_51() {
        let k = nf_create(QPoly::new(ints(&[-3, 0, 1])), None).unwrap();
        let al = &FieldElement::generator(&k) + &FieldElement::from_i64(2);
        let one = FieldElement::from_i64(1);
        let s = EquationSpec::new(k, vec![one.clone(), one.clone()], vec![al.clone(), one.clone()], vec![one, al]).unwrap();
        assert_eq!(classify_degree(&s, 2).unwrap().classification, Classification::UniqueMonomial);
        let r = EquationSpec::rational(&ints(&[1, 1]), &ints(&[2, 1]), &ints(&[1, 2])).unwrap();
        let rep = classify_degree(&r, 2).unwrap();
        assert_eq!(rep.classification, Classification::None);
        assert_eq!(rep.t[2].as_rational(), Some(q(5, 1)));
        assert_eq!(rep.t[1].as_rational(), Some(q(8, 1)));
    }

    #[test]
    fn classify_54() {
        let rep = analyze(&spec54(), None).unwrap();
        assert_eq!(rep.degree_reports.len(), 3);
        assert_eq!(rep.degree_reports[1].c_tilde.as_ref().unwrap().as_rational(), Some(q(1, 3)));
        assert_eq!(rep.degree_reports[2].classification, Classification::None);
        let rel = descending_check(&spec54(), &rep).unwrap();
        assert_eq!(rel.len(), 1);
        assert_eq!(rel[0].c_prev.as_rational(), Some(q(1, 2)));
    }

    #[test]
    fn analyze_55_and_conjugate() {
        let a = analyze(&sqrt3_55(false), None).unwrap();
        let b = analyze(&sqrt3_55(true), None).unwrap();
        for (x, y) in a.degree_reports.iter().zip(&b.degree_reports) {
            assert_eq!(x.classification, Classification::UniqueMonomial);
            assert_eq!(x.c_tilde, y.c_tilde);
            assert_eq!(x.classification, y.classification);
        }
        assert_eq!(descending_check(&sqrt3_55(false), &a).unwrap().len(), 2);
    }

    #[test]
    fn synthesis_required() {
        let s = EquationSpec::rational(&ints(&[1, 1, -1]), &ints(&[2, 1, 3]), &ints(&[1, 3, 4])).unwrap();
        let r = classify_degree(&s, 1).unwrap();
        assert_eq!(r.classification, Classification::SynthesisRequired);
        assert_eq!(r.kernel_witnesses, vec![EmbeddingTuple::new(vec![0])]);
        assert!(r.c_tilde.unwrap().is_zero());
    }

    #[test]
    fn universal_constant() {
        let s = EquationSpec::rational(&ints(&[1, 1]), &ints(&[1, 1]), &ints(&[0, 1])).unwrap();
        let rep = analyze(&s, None).unwrap();
        let u = universal_constant_check(&s, &rep).unwrap();
        assert!(u.holds);
        assert!(!rep.degree_reports[0].identity_admissible);
        assert!(matches!(descending_check(&s, &rep), Err(Error::StructureMismatch(_))));
    }

    #[test]
    fn invalid_spec_refused() {
        let s = EquationSpec::rational(&ints(&[1]), &ints(&[1]), &ints(&[-1])).unwrap();
        match analyze(&s, None) {
            Err(Error::PreconditionFailed { validation: Some(v), .. }) => assert!(!v.ok),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn max_degree_limits_reports() {
        assert_eq!(analyze(&spec54(), Some(2)).unwrap().degree_reports.len(), 2);
        assert_eq!(analyze(&spec54(), Some(10)).unwrap().degree_reports.len(), 3);
    }
}
