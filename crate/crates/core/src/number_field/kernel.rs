use std::collections::BTreeSet;

use num_traits::One;

use super::condexpr::{zero_test, CondExpr, PrecisionConfig};
use crate::equation::{validate, EquationSpec};
use crate::error::{Error, Result};
use crate::Rational;

/// Root indices `(h_1, ..., h_p)`; slot `j` is evaluated under `u -> s_{h_j}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EmbeddingTuple(Vec<usize>);

impl EmbeddingTuple {
    pub fn new(indices: Vec<usize>) -> Self {
        EmbeddingTuple(indices)
    }

    /// `(h, h, ..., h)` of length `p`.
    pub fn constant(h: usize, p: usize) -> Self {
        EmbeddingTuple(vec![h; p])
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

fn binomial(n: usize, k: usize) -> Rational {
    let mut b = Rational::one();
    for i in 0..k {
        b = b * Rational::from_integer((n - i).into()) / Rational::from_integer((i + 1).into());
    }
    b
}

/// `sum_i a_i(x0) * C(p, l) * prod_{j in A} alpha_i(x_j) * prod_{j not in A} beta_i(x_j)`
/// where `A` is the set of slots with `alpha_slots[j - 1]` set and `l = |A|`.
pub fn condition_expression(spec: &EquationSpec, alpha_slots: &[bool]) -> Result<CondExpr> {
    let p = alpha_slots.len();
    let l = alpha_slots.iter().filter(|&&s| s).count();
    let roles: Vec<(usize, u32, u32)> = alpha_slots
        .iter()
        .enumerate()
        .map(|(j, &s)| if s { (j + 1, 1, 0) } else { (j + 1, 0, 1) })
        .collect();
    build(spec, p + 1, &roles, binomial(p, l))
}

/// `scale * sum_i a_i(x0) * prod_{(v, ea, eb)} alpha_i(x_v)^ea * beta_i(x_v)^eb`.
fn build(spec: &EquationSpec, nvars: usize, roles: &[(usize, u32, u32)], scale: Rational) -> Result<CondExpr> {
    let field = spec.field();
    let mut total = CondExpr::zero(field, nvars);
    for i in 0..spec.n() {
        let mut term = CondExpr::from_element(&spec.a()[i], nvars, 0, field)?;
        for &(v, ea, eb) in roles {
            let al = CondExpr::from_element(&spec.alpha()[i], nvars, v, field)?;
            let be = CondExpr::from_element(&spec.beta()[i], nvars, v, field)?;
            for _ in 0..ea {
                term = &term * &al;
            }
            for _ in 0..eb {
                term = &term * &be;
            }
        }
        total = &total + &term;
    }
    Ok(&total * &CondExpr::constant(field, nvars, scale))
}

/// Every tuple in `{0..d-1}^p` at which all condition expressions vanish,
/// in lexicographic order.
pub fn kernel_search(spec: &EquationSpec, p: usize) -> Result<Vec<EmbeddingTuple>> {
    kernel_search_with_precision(spec, p, &PrecisionConfig::default()).map(|(t, _)| t)
}

/// As [`kernel_search`], also returning the largest working precision used.
///
/// The condition value at a tuple depends only on how many slots of each
/// root index carry the `alpha` role, so only nondecreasing tuples and one
/// slot assignment per role count are checked; the result is closed under
/// permutation by construction.
pub fn kernel_search_with_precision(
    spec: &EquationSpec,
    p: usize,
    cfg: &PrecisionConfig,
) -> Result<(Vec<EmbeddingTuple>, u32)> {
    let report = validate(spec);
    if !report.ok {
        return Err(Error::PreconditionFailed {
            reason: "equation fails validation".into(),
            validation: Some(report),
        });
    }
    if p == 0 {
        return Err(Error::precondition("degree must be positive"));
    }
    let d = spec.field().degree();
    let identity = spec.field().distinguished_root_index();
    let mut found = BTreeSet::new();
    let mut bits = 0;
    for sorted in Multisets::new(d, p) {
        // runs of equal indices: (index, multiplicity)
        let mut groups: Vec<(usize, u32)> = Vec::new();
        for &h in &sorted {
            match groups.last_mut() {
                Some((g, c)) if *g == h => *c += 1,
                _ => groups.push((h, 1)),
            }
        }
        let tuple = EmbeddingTuple::new(groups.iter().map(|g| g.0).collect());
        let mut all_zero = true;
        for split in Splits::new(groups.iter().map(|g| g.1).collect()) {
            let l: u32 = split.iter().sum();
            let roles: Vec<(usize, u32, u32)> = split
                .iter()
                .zip(&groups)
                .enumerate()
                .map(|(k, (&la, &(_, c)))| (k + 1, la, c - la))
                .collect();
            let e = build(spec, groups.len() + 1, &roles, binomial(p, l as usize))?;
            let (zero, used) = zero_test(&e, identity, &tuple, cfg)?;
            bits = bits.max(used);
            if !zero {
                all_zero = false;
                break;
            }
        }
        if all_zero {
            for perm in permutations(&sorted) {
                found.insert(EmbeddingTuple(perm));
            }
        }
    }
    Ok((found.into_iter().collect(), bits))
}

/// Nondecreasing sequences of length `p` over `0..d`.
struct Multisets {
    d: usize,
    cur: Option<Vec<usize>>,
}

impl Multisets {
    fn new(d: usize, p: usize) -> Self {
        Multisets {
            d,
            cur: (d > 0).then(|| vec![0; p]),
        }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.take()?;
        let mut next = out.clone();
        if let Some(i) = (0..next.len()).rev().find(|&i| next[i] + 1 < self.d) {
            let v = next[i] + 1;
            for x in &mut next[i..] {
                *x = v;
            }
            self.cur = Some(next);
        }
        Some(out)
    }
}

/// All vectors `l` with `0 <= l_k <= caps_k`.
struct Splits {
    caps: Vec<u32>,
    cur: Option<Vec<u32>>,
}

impl Splits {
    fn new(caps: Vec<u32>) -> Self {
        let n = caps.len();
        Splits { caps, cur: Some(vec![0; n]) }
    }
}

impl Iterator for Splits {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.cur.take()?;
        let mut next = out.clone();
        for k in 0..next.len() {
            if next[k] < self.caps[k] {
                next[k] += 1;
                self.cur = Some(next);
                break;
            }
            next[k] = 0;
        }
        Some(out)
    }
}

/// Distinct permutations of a sorted sequence.
fn permutations(sorted: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![sorted.to_vec()];
    let mut cur = sorted.to_vec();
    // next lexicographic permutation
    loop {
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            return out;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multisets_count() {
        // C(d + p - 1, p)
        assert_eq!(Multisets::new(3, 2).count(), 6);
        assert_eq!(Multisets::new(1, 4).count(), 1);
        assert_eq!(Multisets::new(4, 3).count(), 20);
    }

    #[test]
    fn splits_count() {
        assert_eq!(Splits::new(vec![2, 1]).count(), 6);
        assert_eq!(Splits::new(vec![]).count(), 1);
    }

    #[test]
    fn permutations_distinct() {
        assert_eq!(permutations(&[0, 0, 1]), vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
        assert_eq!(permutations(&[0, 1, 2]).len(), 6);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Rational::from_integer(10.into()));
        assert_eq!(binomial(3, 0), Rational::one());
    }
}
