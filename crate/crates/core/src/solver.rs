//! Solution basis assembly and exact certification of `(f, F)` pairs.

use crate::analysis::{alpha_power_sum, AnalysisReport, Classification};
use crate::equation::EquationSpec;
use crate::error::{Error, Result};
use crate::exact_algebra::bipoly::{bipoly_expand_composite, BiPoly};
use crate::number_field::{EmbeddingTuple, FieldElement};
use crate::Rational;

/// `f = gamma x^p`, `F = gamma c_p x^(p+1)`, `h = gamma c_p x^p` for a free `gamma`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionTerm {
    pub p: usize,
    pub classification: Classification,
    /// `c_p`, the coefficient of `x^(p+1)` in `F` for `gamma = 1`.
    pub f_coeff: FieldElement,
    /// Coefficient of `x^p` in `h(x) = sum_i a_i f(alpha_i x)` for `gamma = 1`.
    pub h_coeff: FieldElement,
}

impl SolutionTerm {
    /// Coefficients of `f = x^p`.
    pub fn f_coeffs(&self) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::from_i64(0); self.p + 1];
        v[self.p] = FieldElement::from_i64(1);
        v
    }

    /// Coefficients of `F = c_p x^(p+1)`.
    pub fn big_f_coeffs(&self) -> Vec<FieldElement> {
        let mut v = vec![FieldElement::from_i64(0); self.p + 2];
        v[self.p + 1] = self.f_coeff.clone();
        v
    }
}

/// A degree whose kernel part is not described by the basis.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelAnnotation {
    pub p: usize,
    pub classification: Classification,
    pub witnesses: Vec<EmbeddingTuple>,
}

/// Constants `f = k` (with `F = (sum a_i) k x`), the admissible monomials,
/// and a free additive constant in `F`.
#[derive(Debug, Clone, PartialEq)]
pub struct SolutionBasis {
    /// `sum a_i`, the `F` coefficient paired with `f = 1`.
    pub constant_f_coeff: FieldElement,
    pub terms: Vec<SolutionTerm>,
    pub incomplete: Vec<KernelAnnotation>,
}

pub fn build_basis(spec: &EquationSpec, report: &AnalysisReport) -> Result<SolutionBasis> {
    if report.fingerprint != spec.fingerprint() {
        return Err(Error::precondition("report was produced from a different equation"));
    }
    let mut terms = Vec::new();
    let mut incomplete = Vec::new();
    for r in &report.degree_reports {
        if r.classification.has_monomial() {
            let c = r.c_tilde.clone().expect("admissible degree carries c_tilde");
            terms.push(SolutionTerm {
                p: r.p,
                classification: r.classification,
                f_coeff: c.clone(),
                h_coeff: c,
            });
        }
        if !r.kernel_witnesses.is_empty() {
            incomplete.push(KernelAnnotation {
                p: r.p,
                classification: r.classification,
                witnesses: r.kernel_witnesses.clone(),
            });
        }
    }
    Ok(SolutionBasis {
        constant_f_coeff: spec.coeff_sum(),
        terms,
        incomplete,
    })
}

/// Whether `F(y) - F(x) - (y - x) sum_i a_i f(alpha_i x + beta_i y)` is the
/// zero polynomial. Coefficients are listed lowest degree first; values from
/// another field make the identity fail.
pub fn verify_identity(spec: &EquationSpec, f: &[FieldElement], big_f: &[FieldElement]) -> bool {
    let home = |v: &[FieldElement]| -> Option<Vec<FieldElement>> {
        v.iter().map(|x| x.in_field(spec.field()).ok()).collect()
    };
    let (Some(f), Some(big_f)) = (home(f), home(big_f)) else {
        return false;
    };
    let mut lhs = BiPoly::zero();
    for (k, c) in big_f.iter().enumerate() {
        if k > 0 {
            lhs.add_term(c.clone(), 0, k as u32);
            lhs.add_term(-c, k as u32, 0);
        }
    }
    let mut sum = BiPoly::zero();
    for i in 0..spec.n() {
        let e = bipoly_expand_composite(&f, &spec.alpha()[i], &spec.beta()[i]);
        sum = &sum + &e.scale(&spec.a()[i]);
    }
    let y_minus_x = &BiPoly::y() - &BiPoly::x();
    (&lhs - &(&y_minus_x * &sum)).is_zero()
}

/// `F(x) = x h(x)` with `h(x) = sum_i a_i f(alpha_i x)`, so that `F(0) = 0`.
pub fn reconstruct_f(spec: &EquationSpec, f: &[FieldElement]) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::constant(spec.field(), Rational::from_integer(0.into()))];
    for (k, c) in f.iter().enumerate() {
        out.push(c * &alpha_power_sum(spec, k as u32));
    }
    while out.len() > 1 && out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::analyze;
    use crate::number_field::nf_create;
    use crate::QPoly;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn fe(n: i64, d: i64) -> FieldElement {
        FieldElement::rational(q(n, d))
    }

    fn spec54() -> EquationSpec {
        EquationSpec::rational(&[q(1, 4), q(3, 4)], &[q(1, 1), q(1, 3)], &[q(0, 1), q(2, 3)]).unwrap()
    }

    #[test]
    fn basis_54() {
        let s = spec54();
        let b = build_basis(&s, &analyze(&s, None).unwrap()).unwrap();
        let ps: Vec<usize> = b.terms.iter().map(|t| t.p).collect();
        assert_eq!(ps, vec![1, 2]);
        assert_eq!(b.constant_f_coeff, fe(1, 1));
        for t in &b.terms {
            assert!(verify_identity(&s, &t.f_coeffs(), &t.big_f_coeffs()));
        }
    }

    #[test]
    fn cubic_fails_54() {
        let s = spec54();
        let f = vec![fe(0, 1), fe(0, 1), fe(0, 1), fe(1, 1)];
        assert!(!verify_identity(&s, &f, &reconstruct_f(&s, &f)));
        for c in [fe(1, 4), fe(1, 5), fe(1, 1)] {
            assert!(!verify_identity(&s, &f, &[fe(0, 1), fe(0, 1), fe(0, 1), fe(0, 1), c]));
        }
    }

    #[test]
    fn reconstruct_examples() {
        let s = spec54();
        assert_eq!(reconstruct_f(&s, &[fe(0, 1), fe(1, 1)]), vec![fe(0, 1), fe(0, 1), fe(1, 2)]);
        assert_eq!(reconstruct_f(&s, &[fe(1, 1)]), vec![fe(0, 1), fe(1, 1)]);
        let k = nf_create(QPoly::new(vec![q(-3, 1), q(0, 1), q(1, 1)]), None).unwrap();
        let al = &FieldElement::generator(&k) + &fe(2, 1);
        let one = fe(1, 1);
        let s51 = EquationSpec::new(k.clone(), vec![one.clone(), one.clone()], vec![al.clone(), one.clone()], vec![one, al])
            .unwrap();
        let big = reconstruct_f(&s51, &[fe(0, 1), fe(0, 1), fe(1, 1)]);
        let expect = FieldElement::from_coeffs(&k, vec![q(8, 1), q(4, 1)]);
        assert_eq!(big[3], expect);
    }

    #[test]
    fn constants_always_verify() {
        let s = spec54();
        assert!(verify_identity(&s, &[fe(7, 1)], &[fe(3, 1), fe(7, 1)]));
    }

    #[test]
    fn mismatch_detected() {
        let s = EquationSpec::rational(&[q(1, 1)], &[q(1, 1)], &[q(2, 1)]).unwrap();
        let k = nf_create(QPoly::new(vec![q(-3, 1), q(0, 1), q(1, 1)]), None).unwrap();
        assert!(!verify_identity(&s, &[FieldElement::generator(&k)], &[]));
        let other = EquationSpec::rational(&[q(1, 1)], &[q(1, 1)], &[q(3, 1)]).unwrap();
        assert!(build_basis(&s, &analyze(&other, None).unwrap()).is_err());
    }
}
