use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Scalar;

/// Sparse bivariate polynomial in `x` and `y`, keyed by `(x-exponent, y-exponent)`.
/// Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<T> {
    terms: BTreeMap<(u32, u32), T>,
}

impl<T: Scalar> BiPoly<T> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: T) -> Self {
        Self::term(c, 0, 0)
    }

    /// `c * x^i * y^j`
    pub fn term(c: T, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn x() -> Self {
        Self::term(T::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::term(T::one(), 0, 1)
    }

    /// `sum_k coeffs[k] * x^k`
    pub fn from_x_coeffs(coeffs: &[T]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(c.clone(), k as u32, 0);
        }
        p
    }

    /// `sum_k coeffs[k] * y^k`
    pub fn from_y_coeffs(coeffs: &[T]) -> Self {
        let mut p = Self::zero();
        for (k, c) in coeffs.iter().enumerate() {
            p.add_term(c.clone(), 0, k as u32);
        }
        p
    }

    pub fn add_term(&mut self, c: T, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&(i, j)) {
            None => {
                self.terms.insert((i, j), c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert((i, j), s);
                }
            }
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> T {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &T)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn scale(&self, s: &T) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_term(c.clone() * s.clone(), i, j);
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::constant(T::one()), |acc, _| &acc * self)
    }
}

impl<T: Scalar> Add for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn add(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(c.clone(), i, j);
        }
        out
    }
}

impl<T: Scalar> Sub for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn sub(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(-c.clone(), i, j);
        }
        out
    }
}

impl<T: Scalar> Mul for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn mul(self, rhs: &BiPoly<T>) -> BiPoly<T> {
        let mut out = BiPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term(a.clone() * b.clone(), i1 + i2, j1 + j2);
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &BiPoly<T> {
    type Output = BiPoly<T>;
    fn neg(self) -> BiPoly<T> {
        self.scale(&-T::one())
    }
}

/// Expand `sum_k f_k * (arg_x * x + arg_y * y)^k` by the binomial theorem.
pub fn bipoly_expand_composite<T: Scalar>(f_coeffs: &[T], arg_x: &T, arg_y: &T) -> BiPoly<T> {
    let mut out = BiPoly::zero();
    let max_k = f_coeffs.len();
    let mut px = vec![T::one()];
    let mut py = vec![T::one()];
    for k in 1..max_k {
        px.push(px[k - 1].clone() * arg_x.clone());
        py.push(py[k - 1].clone() * arg_y.clone());
    }
    for (k, fk) in f_coeffs.iter().enumerate() {
        if fk.is_zero() {
            continue;
        }
        let mut binom: u128 = 1;
        for l in 0..=k {
            let c = T::from_rational(&crate::Rational::from_integer(binom.into()))
                * fk.clone()
                * px[l].clone()
                * py[k - l].clone();
            out.add_term(c, l as u32, (k - l) as u32);
            binom = binom * (k - l) as u128 / (l + 1) as u128;
        }
    }
    out
}
