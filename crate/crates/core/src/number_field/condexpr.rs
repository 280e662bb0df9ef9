use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::element::FieldElement;
use super::field::NumberField;
use super::kernel::EmbeddingTuple;
use crate::error::{Error, Result};
use crate::exact_algebra::ball::Ball;
use crate::exact_algebra::dyadic::Dyadic;
use crate::{QPoly, Rational};

/// Precision schedule for ball evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionConfig {
    /// First working precision, in bits.
    pub initial_bits: u32,
    /// Working precision is doubled up to this limit.
    pub max_bits: u32,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            initial_bits: 128,
            max_bits: 65536,
        }
    }
}

/// Polynomial with rational coefficients in `x0, x1, ..., x_p`, every
/// variable a root of the field's minimal polynomial.
///
/// `x0` is evaluated at the identity root, `x_j` at the `j`-th tuple entry.
/// Exponents are kept below the field degree.
#[derive(Clone)]
pub struct CondExpr {
    field: Arc<NumberField>,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl CondExpr {
    pub fn zero(field: &Arc<NumberField>, nvars: usize) -> Self {
        CondExpr {
            field: field.clone(),
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: &Arc<NumberField>, nvars: usize, q: Rational) -> Self {
        let mut e = Self::zero(field, nvars);
        if !q.is_zero() {
            e.terms.insert(vec![0; nvars], q);
        }
        e
    }

    /// The variable `x_var`.
    pub fn var(field: &Arc<NumberField>, nvars: usize, var: usize) -> Self {
        Self::from_poly(field, nvars, var, &QPoly::x())
    }

    /// `g(x_var)` reduced modulo the minimal polynomial.
    pub fn from_poly(field: &Arc<NumberField>, nvars: usize, var: usize, g: &QPoly) -> Self {
        assert!(var < nvars, "variable x{var} out of range");
        let g = g.rem(field.min_poly());
        let mut e = Self::zero(field, nvars);
        for (k, c) in g.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut mono = vec![0; nvars];
                mono[var] = k as u32;
                e.terms.insert(mono, c.clone());
            }
        }
        e
    }

    /// The element `x` written in the variable `x_var`.
    pub fn from_element(x: &FieldElement, nvars: usize, var: usize, field: &Arc<NumberField>) -> Result<Self> {
        let x = x.in_field(field)?;
        Ok(Self::from_poly(field, nvars, var, x.poly()))
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Number of embedding variables `x1..x_p`.
    pub fn num_embedding_vars(&self) -> usize {
        self.nvars - 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(m, c)| (m.as_slice(), c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.iter().all(|&e| e == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, mono: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(mono).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            let key: Vec<Vec<u32>> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in key {
                self.terms.remove(&k);
            }
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert!(
            self.nvars == other.nvars && self.field.same_arithmetic(&other.field),
            "condition expressions over different variable sets"
        );
    }

    /// Rewrite exponents `>= d` through `t^e mod m`.
    fn reduce(mut self) -> Self {
        let d = self.field.degree() as u32;
        let max_e = self.terms.keys().flat_map(|m| m.iter().copied()).max().unwrap_or(0);
        if max_e < d {
            return self;
        }
        let table: Vec<QPoly> = (0..=max_e)
            .map(|e| QPoly::monomial(Rational::one(), e as usize).rem(self.field.min_poly()))
            .collect();
        for v in 0..self.nvars {
            if self.terms.keys().all(|m| m[v] < d) {
                continue;
            }
            let old = std::mem::take(&mut self.terms);
            for (mono, c) in old {
                if mono[v] < d {
                    self.add_term(mono, c);
                    continue;
                }
                for (k, r) in table[mono[v] as usize].coeffs().iter().enumerate() {
                    if !r.is_zero() {
                        let mut m2 = mono.clone();
                        m2[v] = k as u32;
                        self.add_term(m2, &c * r);
                    }
                }
            }
        }
        self
    }

    /// Substitute `x_v -> x_{map[v]}` into a space of `nvars` variables.
    pub fn substitute(&self, map: &[usize], nvars: usize) -> Self {
        assert_eq!(map.len(), self.nvars);
        let mut out = Self::zero(&self.field, nvars);
        for (mono, c) in &self.terms {
            let mut m2 = vec![0u32; nvars];
            for (v, &e) in mono.iter().enumerate() {
                m2[map[v]] += e;
            }
            out.add_term(m2, c.clone());
        }
        out.reduce()
    }

    /// Largest exponent of each variable.
    fn var_degrees(&self) -> Vec<u32> {
        let mut degs = vec![0; self.nvars];
        for m in self.terms.keys() {
            for (v, &e) in m.iter().enumerate() {
                degs[v] = degs[v].max(e);
            }
        }
        degs
    }

    /// Evaluate with variable `v` bound to `roots[v]`, rounding at `bits`.
    pub fn eval_ball(&self, roots: &[Ball], bits: i64) -> Ball {
        let degs = self.var_degrees();
        let powers: Vec<Vec<Ball>> = roots
            .iter()
            .zip(&degs)
            .map(|(r, &dv)| {
                let mut ps = vec![Ball::one()];
                for _ in 0..dv {
                    let next = (ps.last().unwrap() * r).round(bits);
                    ps.push(next);
                }
                ps
            })
            .collect();
        let mut acc = Ball::zero();
        for (mono, c) in &self.terms {
            let mut t = Ball::from_rational(c, bits);
            for (v, &e) in mono.iter().enumerate() {
                if e > 0 {
                    t = (&t * &powers[v][e as usize]).round(bits);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Bits `B` such that `e != 0` at a tuple using `distinct` different
    /// roots implies `|e| >= 2^-B`.
    ///
    /// With `c` the lcm of the minimal polynomial's denominators, each `c*s_h`
    /// is an algebraic integer of modulus at most `c*R` (Cauchy bound `R`).
    /// Scaling `e` by `D * c^S` (`D` the coefficient denominator lcm, `S` the
    /// summed variable degrees) gives an algebraic integer `g` with every
    /// conjugate bounded by `H`, in a field of degree at most
    /// `k = d (d-1) ... (d-distinct+1)`; a nonzero norm gives
    /// `|g| >= H^-(k-1)`.
    pub fn liouville_bits(&self, distinct: usize) -> u64 {
        let m = self.field.min_poly();
        let d = self.field.degree();
        let c = m.coeffs().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let r = Rational::one()
            + m.coeffs()[..d]
                .iter()
                .map(|q| q.abs())
                .fold(Rational::zero(), |a, b| if b > a { b } else { a });
        let r_int = r.ceil().to_integer();
        let den = self
            .terms
            .values()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let s: u32 = self.var_degrees().iter().sum();
        let sum_abs: Rational = self.terms.values().map(|q| q.abs()).sum();
        let scale = &den * num_traits::pow(c.clone(), s as usize);
        let h = (sum_abs * Rational::from_integer(scale.clone())).ceil().to_integer()
            * num_traits::pow(r_int, s as usize);
        let k: u64 = (0..distinct.min(d) as u64).map(|i| d as u64 - i).product();
        scale.bits() + (k.saturating_sub(1)).saturating_mul(h.bits().max(1))
    }
}

impl fmt::Debug for CondExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CondExpr(")?;
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, &e) in m.iter().enumerate() {
                if e > 0 {
                    write!(f, "*x{v}^{e}")?;
                }
            }
        }
        write!(f, ")")
    }
}

impl PartialEq for CondExpr {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.terms == other.terms
    }
}

impl Add for &CondExpr {
    type Output = CondExpr;
    fn add(self, rhs: &CondExpr) -> CondExpr {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &CondExpr {
    type Output = CondExpr;
    fn neg(self) -> CondExpr {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }
}

impl Sub for &CondExpr {
    type Output = CondExpr;
    fn sub(self, rhs: &CondExpr) -> CondExpr {
        self + &(-rhs)
    }
}

impl Mul for &CondExpr {
    type Output = CondExpr;
    fn mul(self, rhs: &CondExpr) -> CondExpr {
        self.check_compatible(rhs);
        let mut out = CondExpr::zero(&self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
                out.add_term(m, ca * cb);
            }
        }
        out.reduce()
    }
}

/// Exact decision whether `e(s_identity, s_h1, ..., s_hp) = 0`, with the
/// default precision schedule.
pub fn is_zero_at_tuple(e: &CondExpr, identity_index: usize, tuple: &EmbeddingTuple) -> Result<bool> {
    zero_test(e, identity_index, tuple, &PrecisionConfig::default()).map(|(z, _)| z)
}

/// As [`is_zero_at_tuple`], also returning the last working precision used
/// (0 when the answer was decided without numerics).
pub fn zero_test(
    e: &CondExpr,
    identity_index: usize,
    tuple: &EmbeddingTuple,
    cfg: &PrecisionConfig,
) -> Result<(bool, u32)> {
    let d = e.field.degree();
    if tuple.len() != e.num_embedding_vars() {
        return Err(Error::precondition(format!(
            "tuple of length {} for an expression in {} embedding variables",
            tuple.len(),
            e.num_embedding_vars()
        )));
    }
    let assignment: Vec<usize> = std::iter::once(identity_index).chain(tuple.indices().iter().copied()).collect();
    if let Some(&bad) = assignment.iter().find(|&&h| h >= d) {
        return Err(Error::precondition(format!("root index {bad} out of range for degree {d}")));
    }
    // variables bound to the same root collapse to one
    let mut distinct: Vec<usize> = Vec::new();
    let map: Vec<usize> = assignment
        .iter()
        .map(|h| match distinct.iter().position(|x| x == h) {
            Some(i) => i,
            None => {
                distinct.push(*h);
                distinct.len() - 1
            }
        })
        .collect();
    let merged = e.substitute(&map, distinct.len());
    if let Some(q) = merged.as_constant() {
        return Ok((q.is_zero(), 0));
    }
    let used: Vec<bool> = merged.var_degrees().iter().map(|&x| x > 0).collect();
    let live = used.iter().filter(|&&u| u).count();
    let need = merged.liouville_bits(live);
    let floor = Dyadic::pow2(-(need as i64) - 1);
    let mut w = cfg.initial_bits.max(16);
    loop {
        let roots = e.field.roots(w)?;
        let at: Vec<Ball> = distinct.iter().map(|&h| roots[h].clone()).collect();
        let value = merged.eval_ball(&at, w as i64 + 16);
        if value.excludes_zero() {
            return Ok((false, w));
        }
        if value.radius() < &floor {
            return Ok((true, w));
        }
        if w >= cfg.max_bits {
            return Err(Error::PrecisionExhausted {
                required_bits: need + 1,
                max_bits: cfg.max_bits as u64,
            });
        }
        w = w.saturating_mul(2).min(cfg.max_bits);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number_field::nf_create;

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn tuple(v: &[usize]) -> EmbeddingTuple {
        EmbeddingTuple::new(v.to_vec())
    }

    #[test]
    fn min_poly_relation_vanishes() {
        let k = nf_create(qp(&[-3, 0, 1]), None).unwrap();
        let x1 = CondExpr::var(&k, 2, 1);
        let e = &(&x1 * &x1) - &CondExpr::constant(&k, 2, q(3));
        assert!(e.is_zero());
        for h in 0..2 {
            assert!(is_zero_at_tuple(&e, 0, &tuple(&[h])).unwrap());
        }
    }

    #[test]
    fn conjugate_sum() {
        let k = nf_create(qp(&[-3, 0, 1]), None).unwrap();
        let e = &CondExpr::var(&k, 3, 1) + &CondExpr::var(&k, 3, 2);
        assert!(is_zero_at_tuple(&e, 0, &tuple(&[0, 1])).unwrap());
        assert!(is_zero_at_tuple(&e, 0, &tuple(&[1, 0])).unwrap());
        assert!(!is_zero_at_tuple(&e, 0, &tuple(&[0, 0])).unwrap());
    }

    #[test]
    fn identity_variable_participates() {
        let k = nf_create(qp(&[-3, 0, 1]), None).unwrap();
        // x0 - x1 vanishes exactly when the tuple repeats the identity root
        let e = &CondExpr::var(&k, 2, 0) - &CondExpr::var(&k, 2, 1);
        assert!(is_zero_at_tuple(&e, 1, &tuple(&[1])).unwrap());
        assert!(!is_zero_at_tuple(&e, 1, &tuple(&[0])).unwrap());
    }

    #[test]
    fn cubic_symmetric_functions() {
        // t^3 - 2: s0 + s1 + s2 = 0, s0 s1 s2 = 2
        let k = nf_create(qp(&[-2, 0, 0, 1]), None).unwrap();
        let v = |j| CondExpr::var(&k, 4, j);
        let sum = &(&v(1) + &v(2)) + &v(3);
        assert!(is_zero_at_tuple(&sum, 0, &tuple(&[0, 1, 2])).unwrap());
        assert!(!is_zero_at_tuple(&sum, 0, &tuple(&[0, 1, 1])).unwrap());
        let prod = &(&(&v(1) * &v(2)) * &v(3)) - &CondExpr::constant(&k, 4, q(2));
        assert!(is_zero_at_tuple(&prod, 0, &tuple(&[2, 0, 1])).unwrap());
    }

    #[test]
    fn wrong_tuple_length() {
        let k = nf_create(qp(&[-3, 0, 1]), None).unwrap();
        let e = CondExpr::var(&k, 2, 1);
        assert!(matches!(
            is_zero_at_tuple(&e, 0, &tuple(&[0, 1])),
            Err(Error::PreconditionFailed { .. })
        ));
    }

    #[test]
    fn exhausted_precision_is_an_error() {
        let k = nf_create(qp(&[-3, 0, 1]), None).unwrap();
        let big = CondExpr::constant(&k, 3, Rational::from_integer(BigInt::one() << 400));
        let e = &(&CondExpr::var(&k, 3, 1) + &CondExpr::var(&k, 3, 2)) * &big;
        let cfg = PrecisionConfig {
            initial_bits: 64,
            max_bits: 64,
        };
        // certifying this zero needs far more than 64 bits
        assert!(matches!(
            zero_test(&e, 0, &tuple(&[0, 1]), &cfg),
            Err(Error::PrecisionExhausted { .. })
        ));
    }

    #[test]
    fn renaming_symmetry() {
        let k = nf_create(qp(&[1, 0, -10, 0, 1]), None).unwrap();
        let v = |j| CondExpr::var(&k, 3, j);
        let e = &(&v(1) * &v(1)) + &(&v(2) * &CondExpr::constant(&k, 3, q(3)));
        let swapped = e.substitute(&[0, 2, 1], 3);
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(
                    is_zero_at_tuple(&e, 0, &tuple(&[a, b])).unwrap(),
                    is_zero_at_tuple(&swapped, 0, &tuple(&[b, a])).unwrap()
                );
            }
        }
    }
}
