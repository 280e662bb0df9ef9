//! Certified isolation of the complex roots of a squarefree rational polynomial.
//!
//! Candidates come from an Aberth pass in `f64`, are polished by
//! Weierstrass (Durand-Kerner) steps in dyadic arithmetic, and are then
//! certified exactly: with `W_i = m(z_i) / (lc * prod_{j != i} (z_i - z_j))`,
//! every root of `m` lies in the union of the discs `|z - z_i| <= d |W_i|`,
//! and a union of pairwise disjoint discs holds exactly one root per disc.
//! `m(z_i)` and the products are evaluated in exact rational arithmetic, so
//! the certificate does not depend on any floating-point step.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::{Complex64, ComplexPoly, QPoly, Rational};

use super::ball::Ball;
use super::dyadic::{Dyadic, Rounding};
use super::resultant::poly_resultant;

/// Precision of the isolation that fixes the root order.
pub(crate) const BASE_BITS: u32 = 64;
const GUARD_BITS: i64 = 16;
const MAX_ROUNDS: usize = 4000;

type CDyadic = (Dyadic, Dyadic);

/// Isolate all complex roots of `m` in disjoint balls of radius at most
/// `2^-precision_bits`.
///
/// The order is fixed by a base isolation: descending real part, roots whose
/// real parts cannot be told apart at base precision ordered by descending
/// imaginary part. Refining to any precision keeps that order.
pub fn root_isolate(m: &QPoly, precision_bits: u32) -> Result<Vec<Ball>> {
    let base = isolate_base(m)?;
    if precision_bits <= BASE_BITS {
        return Ok(base);
    }
    refine_roots(m, &base, precision_bits)
}

pub(crate) fn isolate_base(m: &QPoly) -> Result<Vec<Ball>> {
    let d = m.degree().unwrap_or(0);
    if d == 0 {
        return Err(Error::DegreeTooSmall(d));
    }
    if !m.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    if d == 1 {
        return Ok(vec![linear_root(m, BASE_BITS)]);
    }
    let start = initial_guesses(m);
    let mut balls = polish_and_certify(m, start, BASE_BITS)?;
    order_roots(&mut balls);
    Ok(balls)
}

/// Refine previously isolated roots of `m` to radius `2^-bits`, keeping the
/// index of every root.
pub(crate) fn refine_roots(m: &QPoly, current: &[Ball], bits: u32) -> Result<Vec<Ball>> {
    let limit = Dyadic::pow2(-(bits as i64));
    if current.iter().all(|b| b.radius() <= &limit) {
        return Ok(current.to_vec());
    }
    if m.degree() == Some(1) {
        return Ok(vec![linear_root(m, bits)]);
    }
    let start: Vec<CDyadic> = current.iter().map(|b| (b.re().clone(), b.im().clone())).collect();
    let fresh = polish_and_certify(m, start, bits)?;
    // Every new disc must sit inside exactly one old disc.
    let mut out: Vec<Option<Ball>> = vec![None; current.len()];
    for nb in fresh {
        let hosts: Vec<usize> = (0..current.len()).filter(|&k| current[k].contains_ball(&nb)).collect();
        match hosts.as_slice() {
            [k] if out[*k].is_none() => out[*k] = Some(nb),
            _ => {
                return Err(Error::RootIsolation(
                    "refined root escaped its previous enclosure".into(),
                ))
            }
        }
    }
    Ok(out.into_iter().map(|b| b.expect("bijection checked")).collect())
}

fn linear_root(m: &QPoly, bits: u32) -> Ball {
    let r = -m.coeff(0) / m.coeff(1);
    Ball::from_rational(&r, bits as i64)
}

fn order_roots(balls: &mut [Ball]) {
    balls.sort_by(|a, b| b.re().cmp(a.re()));
    let mut start = 0;
    while start < balls.len() {
        let mut end = start + 1;
        while end < balls.len() {
            let prev = &balls[end - 1];
            let cur = &balls[end];
            // real intervals overlap
            if &(cur.re() + cur.radius()) >= &(prev.re() - prev.radius()) {
                end += 1;
            } else {
                break;
            }
        }
        balls[start..end].sort_by(|a, b| match b.im().cmp(a.im()) {
            Ordering::Equal => b.re().cmp(a.re()),
            o => o,
        });
        start = end;
    }
}

fn initial_guesses(m: &QPoly) -> Vec<CDyadic> {
    let d = m.degree().unwrap();
    let p: ComplexPoly = m.monic().map(|c| <Complex64 as crate::Scalar>::from_rational(c));
    let dp = p.derivative();
    let bound = 1.0
        + p.coeffs()[..d]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(bound * 0.7, 0.4 + std::f64::consts::TAU * k as f64 / d as f64))
        .collect();
    if p.coeffs().iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
        for _ in 0..500 {
            let mut moved = 0.0f64;
            for i in 0..d {
                let pv = p.eval(&z[i]);
                let dv = dp.eval(&z[i]);
                if pv.norm() == 0.0 || dv.norm() == 0.0 {
                    continue;
                }
                let ratio = pv / dv;
                let s: Complex64 = (0..d).filter(|&j| j != i).map(|j| Complex64::new(1.0, 0.0) / (z[i] - z[j])).sum();
                let step = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
                if step.re.is_finite() && step.im.is_finite() {
                    z[i] -= step;
                    moved = moved.max(step.norm() / (1.0 + z[i].norm()));
                }
            }
            if moved < 1e-15 {
                break;
            }
        }
    }
    z.iter()
        .enumerate()
        .map(|(k, c)| {
            let fallback = Complex64::from_polar(bound * 0.7, 0.4 + std::f64::consts::TAU * k as f64 / d as f64);
            let c = if c.re.is_finite() && c.im.is_finite() { *c } else { fallback };
            (
                Dyadic::from_f64(c.re).unwrap_or_else(Dyadic::zero).round_to_exp(-60, Rounding::Nearest),
                Dyadic::from_f64(c.im).unwrap_or_else(Dyadic::zero).round_to_exp(-60, Rounding::Nearest),
            )
        })
        .collect()
}

/// Weierstrass polishing at growing working precision until the exact
/// certificate succeeds with radii at most `2^-bits`.
fn polish_and_certify(m: &QPoly, mut z: Vec<CDyadic>, bits: u32) -> Result<Vec<Ball>> {
    let d = z.len();
    let limit = Dyadic::pow2(-(bits as i64));
    let mut work = bits as i64 + GUARD_BITS + (d as i64).ilog2_ceil();
    separate_duplicates(&mut z);
    for round in 1..=MAX_ROUNDS {
        if let Some(radii) = certify(m, &z) {
            let balls: Vec<Ball> = z
                .iter()
                .zip(&radii)
                .map(|((re, im), r)| Ball::new(re.clone(), im.clone(), r.clone()))
                .collect();
            let disjoint = (0..d).all(|i| (i + 1..d).all(|j| balls[i].disjoint(&balls[j])));
            if disjoint && radii.iter().all(|r| r <= &limit) {
                return Ok(balls);
            }
        }
        let moved = weierstrass_step(m, &mut z, work);
        separate_duplicates(&mut z);
        // converged at this precision, or converging slowly near a cluster
        if !moved || round % 50 == 0 {
            work *= 2;
            if work > 1 << 22 {
                break;
            }
        }
    }
    Err(Error::RootIsolation(format!(
        "no certificate after {MAX_ROUNDS} rounds (degree {d})"
    )))
}

trait CeilLog2 {
    fn ilog2_ceil(self) -> i64;
}

impl CeilLog2 for i64 {
    fn ilog2_ceil(self) -> i64 {
        if self <= 1 {
            0
        } else {
            64 - (self - 1).leading_zeros() as i64
        }
    }
}

fn separate_duplicates(z: &mut [CDyadic]) {
    for i in 0..z.len() {
        for j in 0..i {
            if z[i] == z[j] {
                z[i].1 = &z[i].1 + &Dyadic::pow2(-20 - i as i64);
            }
        }
    }
}

fn cmul(a: &CDyadic, b: &CDyadic) -> CDyadic {
    (
        &(&a.0 * &b.0) - &(&a.1 * &b.1),
        &(&a.0 * &b.1) + &(&a.1 * &b.0),
    )
}

fn csub(a: &CDyadic, b: &CDyadic) -> CDyadic {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn cround(a: &CDyadic, exp: i64) -> CDyadic {
    (
        a.0.round_to_exp(exp, Rounding::Nearest),
        a.1.round_to_exp(exp, Rounding::Nearest),
    )
}

/// One simultaneous Weierstrass update; returns whether any point moved.
fn weierstrass_step(m: &QPoly, z: &mut [CDyadic], work: i64) -> bool {
    let d = z.len();
    let exp = -work;
    let coeffs: Vec<Dyadic> = m
        .coeffs()
        .iter()
        .map(|c| Dyadic::from_rational(c, exp - GUARD_BITS, Rounding::Nearest))
        .collect();
    let lc = m.leading().unwrap().clone();
    let lc_d = Dyadic::from_rational(&lc, exp - GUARD_BITS, Rounding::Nearest);
    let old = z.to_vec();
    let mut moved = false;
    for i in 0..d {
        let mut val: CDyadic = (Dyadic::zero(), Dyadic::zero());
        for c in coeffs.iter().rev() {
            val = cmul(&val, &old[i]);
            val.0 = &val.0 + c;
            val = cround(&val, exp - GUARD_BITS);
        }
        let mut den: CDyadic = (lc_d.clone(), Dyadic::zero());
        for j in 0..d {
            if j != i {
                den = cround(&cmul(&den, &csub(&old[i], &old[j])), exp - GUARD_BITS);
            }
        }
        let norm = &den.0.square() + &den.1.square();
        if norm.is_zero() {
            continue;
        }
        // val / den = val * conj(den) / |den|^2
        let num = cmul(&val, &(den.0.clone(), -&den.1));
        let w = (
            num.0.div_round(&norm, exp, Rounding::Nearest),
            num.1.div_round(&norm, exp, Rounding::Nearest),
        );
        if !(w.0.is_zero() && w.1.is_zero()) {
            moved = true;
            z[i] = cround(&csub(&old[i], &w), exp);
        }
    }
    moved
}

/// Exact Weierstrass inclusion radii `d * |W_i|`, rounded up; `None` if two
/// points coincide.
fn certify(m: &QPoly, z: &[CDyadic]) -> Option<Vec<Dyadic>> {
    let d = z.len();
    let lc = m.leading().unwrap();
    let lc2 = lc * lc;
    let dd = Rational::from_integer(BigInt::from((d * d) as u64));
    let mut radii = Vec::with_capacity(d);
    for i in 0..d {
        let (vre, vim) = eval_exact(m, &z[i]);
        let num = &vre * &vre + &vim * &vim;
        if num.is_zero() {
            radii.push(Dyadic::zero());
            continue;
        }
        let mut den = Dyadic::one();
        for j in 0..d {
            if j != i {
                let diff = csub(&z[i], &z[j]);
                let n2 = &diff.0.square() + &diff.1.square();
                if n2.is_zero() {
                    return None;
                }
                den = &den * &n2;
            }
        }
        let r2 = &dd * num / (den.to_rational() * &lc2);
        radii.push(sqrt_upper(&r2));
    }
    Some(radii)
}

fn eval_exact(m: &QPoly, z: &CDyadic) -> (Rational, Rational) {
    let zr = z.0.to_rational();
    let zi = z.1.to_rational();
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    for c in m.coeffs().iter().rev() {
        let nre = &re * &zr - &im * &zi + c;
        let nim = &re * &zi + &im * &zr;
        re = nre;
        im = nim;
    }
    (re, im)
}

fn bits_of(q: &Rational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64
}

/// Dyadic `s >= sqrt(q)` with about 50 significant bits.
pub(crate) fn sqrt_upper(q: &Rational) -> Dyadic {
    sqrt_dyadic(q, true)
}

/// Dyadic `0 <= s <= sqrt(q)` with about 50 significant bits.
pub(crate) fn sqrt_lower(q: &Rational) -> Dyadic {
    sqrt_dyadic(q, false)
}

fn sqrt_dyadic(q: &Rational, upper: bool) -> Dyadic {
    assert!(!q.is_negative(), "square root of a negative rational");
    if q.is_zero() {
        return Dyadic::zero();
    }
    // q * 4^k ~ 2^100
    let k = Integer::div_ceil(&(100 - bits_of(q)), &2);
    let (num, den) = if k >= 0 {
        (q.numer() << (2 * k) as usize, q.denom().clone())
    } else {
        (q.numer().clone(), q.denom() << (2 * -k) as usize)
    };
    let x = if upper { num.div_ceil(&den) } else { num.div_floor(&den) };
    let mut s = x.sqrt();
    if upper && &s * &s < x {
        s += BigInt::one();
    }
    Dyadic::new(s, -k)
}

/// A positive rational `B` below the minimum distance between distinct roots
/// of the squarefree polynomial `m`: `sqrt(3 |disc|) / (d^((d+2)/2) ||P||_2^(d-1))`
/// for the primitive integer multiple `P` of `m`.
pub fn separation_bound(m: &QPoly) -> Result<Rational> {
    let d = m.degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::DegreeTooSmall(d));
    }
    if !m.is_squarefree() {
        return Err(Error::NotSquarefree);
    }
    let p = primitive_integer_part(m);
    let dp = p.derivative();
    let res = poly_resultant(&p, &dp)?;
    let lc = p.leading().unwrap().abs();
    let disc = res.abs() / lc;
    let norm2: Rational = p.coeffs().iter().map(|c| c * c).sum();
    let dq = Rational::from_integer(BigInt::from(d as u64));
    let denom = num_traits::pow(dq, d + 2) * num_traits::pow(norm2, d - 1);
    let b2 = Rational::from_integer(BigInt::from(3)) * disc / denom;
    let b = sqrt_lower(&b2).to_rational();
    if b.is_positive() {
        Ok(b)
    } else {
        Err(Error::InternalInconsistency("separation bound underflow".into()))
    }
}

/// Integer polynomial with coprime coefficients and the same roots as `m`.
pub(crate) fn primitive_integer_part(m: &QPoly) -> QPoly {
    let lcm = m
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = m
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(|c| c.is_negative()) { -1 } else { 1 };
    QPoly::new(
        ints.into_iter()
            .map(|c| Rational::from_integer(c * sign / &g))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::new(cs.iter().map(|&c| q(c)).collect())
    }

    fn zero() -> Rational {
        q(0)
    }

    #[test]
    fn sqrt3_pair() {
        let balls = root_isolate(&qp(&[-3, 0, 1]), 30).unwrap();
        assert_eq!(balls.len(), 2);
        let s3 = 3f64.sqrt();
        assert!((balls[0].re().to_f64() - s3).abs() < 1e-8);
        assert!((balls[1].re().to_f64() + s3).abs() < 1e-8);
        for b in &balls {
            assert!(b.radius() <= &Dyadic::pow2(-30));
            // b contains a root: |mid^2 - 3| small and ball squared contains 3
            assert!(b.pow(2).contains(&q(3), &zero()));
        }
        assert!(balls[0].disjoint(&balls[1]));
    }

    #[test]
    fn imaginary_unit_order() {
        let balls = root_isolate(&qp(&[1, 0, 1]), 40).unwrap();
        assert!(balls[0].contains(&zero(), &q(1)));
        assert!(balls[1].contains(&zero(), &q(-1)));
    }

    #[test]
    fn rational_root_is_exact() {
        let balls = root_isolate(&qp(&[-5, 1]), 30).unwrap();
        assert_eq!(balls, vec![Ball::from_i64(5)]);
    }

    #[test]
    fn rejects_non_squarefree() {
        assert_eq!(root_isolate(&qp(&[1, 2, 1]), 10), Err(Error::NotSquarefree));
    }

    #[test]
    fn refinement_keeps_order() {
        let m = qp(&[-1, -1, 0, 1]); // one real root, complex pair
        let base = root_isolate(&m, 20).unwrap();
        let fine = root_isolate(&m, 300).unwrap();
        for (b, f) in base.iter().zip(&fine) {
            assert!(b.contains_ball(f));
            assert!(f.radius() <= &Dyadic::pow2(-300));
        }
        assert!(fine[1].im() > fine[2].im());
    }

    #[test]
    fn separation_bounds() {
        for (m, actual) in [(qp(&[-2, 0, 1]), 2.0 * 2f64.sqrt()), (qp(&[-3, 0, 1]), 2.0 * 3f64.sqrt()), (qp(&[1, 0, 1]), 2.0)] {
            let b = separation_bound(&m).unwrap();
            assert!(b > zero());
            assert!(num_traits::ToPrimitive::to_f64(&b).unwrap() <= actual);
        }
        assert!(separation_bound(&qp(&[-2, 0, 1])).unwrap() <= Rational::new(2829.into(), 1000.into()));
        assert_eq!(separation_bound(&qp(&[1, 1])), Err(Error::DegreeTooSmall(1)));
    }

    #[test]
    fn sqrt_bounds_bracket() {
        let two = q(2);
        let hi = sqrt_upper(&two).to_rational();
        let lo = sqrt_lower(&two).to_rational();
        assert!(&lo * &lo <= two && two <= &hi * &hi);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        // Every rational root lies in exactly one returned ball.
        #[test]
        fn rational_roots_are_found(roots in prop::collection::btree_set(-12i64..=12, 1..=5)) {
            let roots: Vec<i64> = roots.into_iter().collect();
            let m = roots.iter().fold(QPoly::one(), |acc, &r| &acc * &qp(&[-r, 1]));
            let balls = root_isolate(&m, 50).unwrap();
            prop_assert_eq!(balls.len(), roots.len());
            for &r in &roots {
                let hits = balls.iter().filter(|b| b.contains(&q(r), &zero())).count();
                prop_assert_eq!(hits, 1);
            }
            // descending real order
            for w in balls.windows(2) {
                prop_assert!(w[0].re() > w[1].re());
            }
        }
    }
}
