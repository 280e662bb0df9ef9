//! The equation `F(y) - F(x) = (y - x) * sum_i a_i f(alpha_i x + beta_i y)`,
//! its hypotheses and the special parameter families.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::number_field::{FieldElement, NumberField};
use crate::Rational;

/// Parameters `a_i, alpha_i, beta_i` of one equation, all in one field.
#[derive(Clone)]
pub struct EquationSpec {
    field: Arc<NumberField>,
    a: Vec<FieldElement>,
    alpha: Vec<FieldElement>,
    beta: Vec<FieldElement>,
}

impl EquationSpec {
    /// Field-less constants are moved into `field`; elements of another
    /// field are rejected.
    pub fn new(
        field: Arc<NumberField>,
        a: Vec<FieldElement>,
        alpha: Vec<FieldElement>,
        beta: Vec<FieldElement>,
    ) -> Result<Self> {
        let n = a.len();
        if n == 0 || alpha.len() != n || beta.len() != n {
            return Err(Error::precondition(format!(
                "parameter lists must be nonempty and of equal length (a: {}, alpha: {}, beta: {})",
                a.len(),
                alpha.len(),
                beta.len()
            )));
        }
        let home = |v: Vec<FieldElement>| -> Result<Vec<FieldElement>> {
            v.iter().map(|x| x.in_field(&field)).collect()
        };
        Ok(EquationSpec {
            a: home(a)?,
            alpha: home(alpha)?,
            beta: home(beta)?,
            field,
        })
    }

    /// Spec over the rational field.
    pub fn rational(a: &[Rational], alpha: &[Rational], beta: &[Rational]) -> Result<Self> {
        let lift = |v: &[Rational]| v.iter().cloned().map(FieldElement::rational).collect();
        Self::new(NumberField::rational(), lift(a), lift(alpha), lift(beta))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.a.len()
    }

    pub fn a(&self) -> &[FieldElement] {
        &self.a
    }

    pub fn alpha(&self) -> &[FieldElement] {
        &self.alpha
    }

    pub fn beta(&self) -> &[FieldElement] {
        &self.beta
    }

    /// The same equation with the roles of `alpha` and `beta` exchanged.
    pub fn swapped(&self) -> Self {
        EquationSpec {
            field: self.field.clone(),
            a: self.a.clone(),
            alpha: self.beta.clone(),
            beta: self.alpha.clone(),
        }
    }

    /// `sum_i a_i`.
    pub fn coeff_sum(&self) -> FieldElement {
        self.a
            .iter()
            .fold(FieldElement::constant(&self.field, Rational::from_integer(0.into())), |s, x| &s + x)
    }

    /// Hash of the canonical form; two specs with equal fingerprints are
    /// treated as the same input.
    pub fn fingerprint(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.field.min_poly().to_string().hash(&mut h);
        self.field.distinguished_root_index().hash(&mut h);
        for list in [&self.a, &self.alpha, &self.beta] {
            list.len().hash(&mut h);
            for x in list.iter() {
                x.to_string().hash(&mut h);
            }
        }
        h.finish()
    }
}

impl PartialEq for EquationSpec {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field && self.a == other.a && self.alpha == other.alpha && self.beta == other.beta
    }
}

impl fmt::Debug for EquationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |v: &[FieldElement]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        f.debug_struct("EquationSpec")
            .field("min_poly", &self.field.min_poly().to_string())
            .field("a", &show(&self.a))
            .field("alpha", &show(&self.alpha))
            .field("beta", &show(&self.beta))
            .finish()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ViolationKind {
    DegenerateRow,
    CollinearPair,
    ZeroCoefficient,
}

impl fmt::Display for ViolationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One failed hypothesis; indices are 1-based row numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub indices: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "{}({})", self.kind, idx.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureFlags {
    pub beta_is_one_minus_alpha: bool,
    pub alpha_all_one: bool,
    pub symmetric_swap: bool,
    pub coeff_sum_nonzero: bool,
}

/// Check `alpha_i + beta_i != 0`, `alpha_i beta_j - alpha_j beta_i != 0`
/// for `i < j`, and `a_i != 0`.
pub fn validate(spec: &EquationSpec) -> ValidationReport {
    let mut violations = Vec::new();
    let n = spec.n();
    for i in 0..n {
        if spec.a[i].is_zero() {
            violations.push(Violation {
                kind: ViolationKind::ZeroCoefficient,
                indices: vec![i + 1],
            });
        }
    }
    for i in 0..n {
        if (&spec.alpha[i] + &spec.beta[i]).is_zero() {
            violations.push(Violation {
                kind: ViolationKind::DegenerateRow,
                indices: vec![i + 1],
            });
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let det = &(&spec.alpha[i] * &spec.beta[j]) - &(&spec.alpha[j] * &spec.beta[i]);
            if det.is_zero() {
                violations.push(Violation {
                    kind: ViolationKind::CollinearPair,
                    indices: vec![i + 1, j + 1],
                });
            }
        }
    }
    ValidationReport {
        ok: violations.is_empty(),
        violations,
    }
}

/// Solutions are generalized polynomials of degree at most `2n - 1`.
pub fn degree_bound(spec: &EquationSpec) -> usize {
    2 * spec.n() - 1
}

pub fn detect_structure(spec: &EquationSpec) -> StructureFlags {
    let one = FieldElement::from_i64(1);
    let beta_is_one_minus_alpha = spec.alpha.iter().zip(&spec.beta).all(|(a, b)| a + b == one);
    let alpha_all_one = spec.alpha.iter().all(|a| *a == one);
    // rows (a, alpha, beta) and (a, beta, alpha) agree as multisets
    let mut unused: Vec<usize> = (0..spec.n()).collect();
    let mut symmetric_swap = true;
    for i in 0..spec.n() {
        let hit = unused
            .iter()
            .position(|&j| spec.a[j] == spec.a[i] && spec.alpha[j] == spec.beta[i] && spec.beta[j] == spec.alpha[i]);
        match hit {
            Some(k) => {
                unused.swap_remove(k);
            }
            None => {
                symmetric_swap = false;
                break;
            }
        }
    }
    StructureFlags {
        beta_is_one_minus_alpha,
        alpha_all_one,
        symmetric_swap,
        coeff_sum_nonzero: !spec.coeff_sum().is_zero(),
    }
}
