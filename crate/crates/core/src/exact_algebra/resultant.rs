use crate::error::{Error, Result};
use crate::scalar::FieldScalar;

use super::poly::UniPoly;

/// Degree threshold at or below which the Sylvester determinant is used.
const SYLVESTER_MAX_DEGREE: usize = 4;

/// `Res(f, g)`, normalized so that `Res(f, g) = lc(f)^deg(g) * prod_{f(r)=0} g(r)`.
///
/// Small inputs go through the Sylvester determinant, larger ones through the
/// subresultant remainder sequence.
pub fn poly_resultant<T: FieldScalar>(f: &UniPoly<T>, g: &UniPoly<T>) -> Result<T> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    let df = f.degree().unwrap_or(0);
    let dg = g.degree().unwrap_or(0);
    if df.max(dg) <= SYLVESTER_MAX_DEGREE {
        resultant_sylvester(f, g)
    } else {
        resultant_subresultant(f, g)
    }
}

/// Determinant of the Sylvester matrix by Gaussian elimination over the
/// coefficient field.
pub fn resultant_sylvester<T: FieldScalar>(f: &UniPoly<T>, g: &UniPoly<T>) -> Result<T> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(T::zero());
    }
    let m = f.degree().unwrap();
    let n = g.degree().unwrap();
    let size = m + n;
    if size == 0 {
        return Ok(T::one());
    }
    // Rows hold coefficients highest degree first.
    let mut mat = vec![vec![T::zero(); size]; size];
    for r in 0..n {
        for k in 0..=m {
            mat[r][r + k] = f.coeff(m - k);
        }
    }
    for r in 0..m {
        for k in 0..=n {
            mat[n + r][r + k] = g.coeff(n - k);
        }
    }
    Ok(determinant(mat))
}

fn determinant<T: FieldScalar>(mut mat: Vec<Vec<T>>) -> T {
    let size = mat.len();
    let mut det = T::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
            return T::zero();
        };
        if pivot != col {
            mat.swap(pivot, col);
            det = -det;
        }
        let p = mat[col][col].clone();
        det = det * p.clone();
        for r in col + 1..size {
            if mat[r][col].is_zero() {
                continue;
            }
            let factor = mat[r][col].clone() / p.clone();
            for c in col..size {
                let v = mat[r][c].clone() - factor.clone() * mat[col][c].clone();
                mat[r][c] = v;
            }
        }
    }
    det
}

/// Subresultant pseudo-remainder sequence (Collins/Brown).
pub fn resultant_subresultant<T: FieldScalar>(f: &UniPoly<T>, g: &UniPoly<T>) -> Result<T> {
    if f.is_zero() && g.is_zero() {
        return Err(Error::BothZero);
    }
    if f.is_zero() || g.is_zero() {
        return Ok(T::zero());
    }
    let (mut a, mut b) = (f.clone(), g.clone());
    let mut sign = T::one();
    if a.degree() < b.degree() {
        let (da, db) = (a.degree().unwrap(), b.degree().unwrap());
        std::mem::swap(&mut a, &mut b);
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
    }
    let db0 = b.degree().unwrap();
    if db0 == 0 {
        return Ok(sign * pow(b.coeff(0), a.degree().unwrap()));
    }
    let mut gg = T::one();
    let mut h = T::one();
    loop {
        let da = a.degree().unwrap();
        let db = b.degree().unwrap();
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign = -sign;
        }
        let lb = b.leading().unwrap().clone();
        let r = a.rem(&b).scale(&pow(lb, delta + 1));
        a = b;
        if r.is_zero() {
            return Ok(T::zero());
        }
        let denom = gg.clone() * pow(h.clone(), delta);
        b = r.scale(&(T::one() / denom));
        gg = a.leading().unwrap().clone();
        // h <- g^delta / h^(delta-1)
        if delta > 0 {
            h = pow(gg.clone(), delta) / pow(h, delta - 1);
        }
        if b.degree().unwrap() == 0 {
            let dega = a.degree().unwrap();
            let lb = b.coeff(0);
            let hh = pow(lb, dega) / pow(h, dega - 1);
            return Ok(sign * hh);
        }
    }
}

fn pow<T: FieldScalar>(base: T, e: usize) -> T {
    let mut acc = T::one();
    for _ in 0..e {
        acc = acc * base.clone();
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn qp(cs: &[i64]) -> UniPoly<Rational> {
        UniPoly::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn resultant_of_quadratics() {
        let f = qp(&[-2, 0, 1]);
        let g = qp(&[-3, 0, 1]);
        assert_eq!(poly_resultant(&f, &g).unwrap(), q(1));
        assert_eq!(resultant_subresultant(&f, &g).unwrap(), q(1));
    }

    #[test]
    fn resultant_of_linears() {
        let f = qp(&[-2, 1]);
        let g = qp(&[-3, 1]);
        assert_eq!(poly_resultant(&f, &g).unwrap(), q(-1));
        assert_eq!(resultant_subresultant(&f, &g).unwrap(), q(-1));
    }

    #[test]
    fn common_root_vanishes() {
        let f = qp(&[-2, 0, 1]);
        assert!(poly_resultant(&f, &f).unwrap().is_zero());
        assert!(resultant_subresultant(&f, &f).unwrap().is_zero());
    }

    #[test]
    fn both_zero_is_an_error() {
        let z = UniPoly::<Rational>::zero();
        assert_eq!(poly_resultant(&z, &z), Err(Error::BothZero));
    }

    #[test]
    fn constants() {
        assert!(poly_resultant(&qp(&[5]), &qp(&[7])).unwrap().is_one());
        // Res(f, c) = c^deg f
        assert_eq!(poly_resultant(&qp(&[1, 2, 3]), &qp(&[2])).unwrap(), q(4));
        assert_eq!(resultant_subresultant(&qp(&[2]), &qp(&[1, 2, 3])).unwrap(), q(4));
    }

    #[test]
    fn product_over_roots_formula() {
        // f = (t-1)(t-2)(t+3), Res(f, g) = prod g(r) for monic f
        let f = &(&qp(&[-1, 1]) * &qp(&[-2, 1])) * &qp(&[3, 1]);
        let g = qp(&[1, 0, 2, 1]);
        let expected = g.eval(&q(1)) * g.eval(&q(2)) * g.eval(&q(-3));
        assert_eq!(poly_resultant(&f, &g).unwrap(), expected);
        assert_eq!(resultant_subresultant(&f, &g).unwrap(), expected);
        assert_eq!(resultant_sylvester(&f, &g).unwrap(), expected);
    }

    fn small_poly(max_deg: usize) -> impl Strategy<Value = UniPoly<Rational>> {
        prop::collection::vec((-5i64..=5, 1i64..=3), 1..=max_deg + 1)
            .prop_map(|cs| UniPoly::new(cs.into_iter().map(|(n, d)| Rational::new(n.into(), d.into())).collect()))
    }

    proptest! {
        #[test]
        fn subresultant_matches_sylvester(f in small_poly(6), g in small_poly(6)) {
            prop_assume!(!(f.is_zero() && g.is_zero()));
            prop_assert_eq!(resultant_subresultant(&f, &g).unwrap(), resultant_sylvester(&f, &g).unwrap());
        }

        #[test]
        fn resultant_is_multiplicative(f in small_poly(3), g in small_poly(3), h in small_poly(3)) {
            prop_assume!(!f.is_zero());
            let gh = &g * &h;
            prop_assume!(!gh.is_zero());
            let lhs = poly_resultant(&f, &gh).unwrap();
            let rhs = poly_resultant(&f, &g).unwrap() * poly_resultant(&f, &h).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
