use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact_algebra::ball::Ball;
use crate::exact_algebra::dyadic::{to_decimal_string, Dyadic};
use crate::exact_algebra::roots::{isolate_base, refine_roots, sqrt_lower, sqrt_upper};
use crate::{QPoly, Rational};

/// Largest minimal-polynomial degree accepted by the irreducibility check.
pub const MAX_FIELD_DEGREE: usize = 8;

/// Precision at which a root hint is compared against the root enclosures.
const HINT_BITS: u32 = 128;

/// `K = Q(u)` with `u` a root of a monic irreducible rational polynomial,
/// realized in the complex numbers by a distinguished root.
///
/// Root enclosures are computed once at construction and refined on demand;
/// the cache only ever moves to tighter enclosures of the same roots.
pub struct NumberField {
    min_poly: QPoly,
    symbol: String,
    distinguished: usize,
    roots: RwLock<Vec<Ball>>,
}

impl NumberField {
    /// The rational field, presented as `Q(u)` with `u` a root of `t`.
    pub fn rational() -> Arc<NumberField> {
        Arc::new(NumberField {
            min_poly: QPoly::x(),
            symbol: "u".to_string(),
            distinguished: 0,
            roots: RwLock::new(vec![Ball::zero()]),
        })
    }

    pub fn min_poly(&self) -> &QPoly {
        &self.min_poly
    }

    pub fn degree(&self) -> usize {
        self.min_poly.degree().unwrap_or(0)
    }

    pub fn symbol(&self) -> &str {
        &self.symbol
    }

    pub fn distinguished_root_index(&self) -> usize {
        self.distinguished
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    /// Same minimal polynomial (hence isomorphic arithmetic).
    pub fn same_arithmetic(&self, other: &NumberField) -> bool {
        std::ptr::eq(self, other) || self.min_poly == other.min_poly
    }

    /// Enclosures of all conjugates, radius at most `2^-bits`.
    pub fn roots(&self, bits: u32) -> Result<Vec<Ball>> {
        let limit = Dyadic::pow2(-(bits as i64));
        {
            let cached = self.roots.read().expect("root cache poisoned");
            if cached.iter().all(|b| b.radius() <= &limit) {
                return Ok(cached.clone());
            }
        }
        let current = self.roots.read().expect("root cache poisoned").clone();
        let refined = refine_roots(&self.min_poly, &current, bits)?;
        let mut cache = self.roots.write().expect("root cache poisoned");
        let tighter = cache
            .iter()
            .zip(&refined)
            .all(|(old, new)| new.radius() <= old.radius());
        if tighter {
            *cache = refined.clone();
        }
        Ok(refined)
    }

    pub fn root(&self, index: usize, bits: u32) -> Result<Ball> {
        Ok(self.roots(bits)?.swap_remove(index))
    }

    /// Decimal rendering `re+imi` of the distinguished root, 20 digits each;
    /// the imaginary part is omitted when it rounds to zero.
    pub fn distinguished_root_string(&self) -> String {
        let b = self
            .root(self.distinguished, HINT_BITS)
            .expect("roots were isolated at construction");
        let re = to_decimal_string(b.re(), 20);
        let im = to_decimal_string(b.im(), 20);
        if im.trim_start_matches(['-', '0', '.']).is_empty() {
            re
        } else if im.starts_with('-') {
            format!("{re}{im}i")
        } else {
            format!("{re}+{im}i")
        }
    }

    pub fn min_poly_string(&self) -> String {
        self.min_poly.to_string()
    }
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("NumberField")
            .field("min_poly", &self.min_poly.to_string())
            .field("symbol", &self.symbol)
            .field("distinguished", &self.distinguished)
            .finish()
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.min_poly == other.min_poly && self.distinguished == other.distinguished
    }
}

/// Build `Q(u)` for a monic rational `min_poly`, symbol `u`.
pub fn nf_create(min_poly: QPoly, hint: Option<(Rational, Rational)>) -> Result<Arc<NumberField>> {
    nf_create_named(min_poly, "u", hint)
}

pub fn nf_create_named(
    min_poly: QPoly,
    symbol: &str,
    hint: Option<(Rational, Rational)>,
) -> Result<Arc<NumberField>> {
    let d = match min_poly.degree() {
        None | Some(0) => return Err(Error::InvalidMinPoly("degree must be at least 1".into())),
        Some(d) => d,
    };
    if !min_poly.leading().unwrap().is_one() {
        return Err(Error::InvalidMinPoly(format!("{min_poly} is not monic")));
    }
    if d > MAX_FIELD_DEGREE {
        return Err(Error::UnsupportedDegree(d));
    }
    check_irreducible(&min_poly)?;
    let base = isolate_base(&min_poly)?;
    let field = NumberField {
        min_poly,
        symbol: symbol.to_string(),
        distinguished: 0,
        roots: RwLock::new(base),
    };
    let distinguished = match hint {
        None => 0,
        Some((re, im)) => pick_root(&field, &re, &im)?,
    };
    Ok(Arc::new(NumberField {
        distinguished,
        ..field
    }))
}

fn pick_root(field: &NumberField, re: &Rational, im: &Rational) -> Result<usize> {
    let roots = field.roots(HINT_BITS)?;
    // [lo, hi] bracket of the distance from the hint to each root
    let brackets: Vec<(Dyadic, Dyadic)> = roots
        .iter()
        .map(|b| {
            let dr = b.re().to_rational() - re;
            let di = b.im().to_rational() - im;
            let d2 = &dr * &dr + &di * &di;
            let lo = &sqrt_lower(&d2) - b.radius();
            let hi = &sqrt_upper(&d2) + b.radius();
            (lo, hi)
        })
        .collect();
    (0..roots.len())
        .find(|&i| (0..roots.len()).all(|j| j == i || brackets[i].1 < brackets[j].0))
        .ok_or(Error::AmbiguousHint)
}

/// Squarefree test, then an exhaustive search for a monic factor of degree
/// at most `d/2`. Candidate factors are products of linear factors over
/// subsets of the certified roots (size one is the rational root test);
/// their coefficients must round to integers and divide exactly.
fn check_irreducible(m: &QPoly) -> Result<()> {
    let d = m.degree().unwrap();
    if d == 1 {
        return Ok(());
    }
    let g = m.gcd(&m.derivative());
    if !g.is_constant() {
        return Err(Error::Reducible { factor: g });
    }
    // P(t) = c^d m(t/c) is monic with integer coefficients
    let c = m.coeffs().iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let cq = Rational::from_integer(c.clone());
    let p = QPoly::new(
        m.coeffs()
            .iter()
            .enumerate()
            .map(|(k, q)| q * num_traits::pow(cq.clone(), d - k))
            .collect(),
    );
    // root magnitude bound for P
    let r_bound = Rational::one()
        + p.coeffs()[..d]
            .iter()
            .map(|q| q.abs())
            .fold(Rational::zero(), |a, b| if b > a { b } else { a });
    let r_bits = r_bound.ceil().to_integer().bits() as u32;
    let base = isolate_base(&p)?;
    let mut bits = (d as u32) * (r_bits + 2) + 16;
    loop {
        let roots = refine_roots(&p, &base, bits.max(64))?;
        match search_factor(&p, &roots)? {
            Search::Found(g) => {
                let k = g.degree().unwrap();
                // factor of m: g(c t) / c^k
                let scaled = QPoly::new(
                    g.coeffs()
                        .iter()
                        .enumerate()
                        .map(|(j, q)| q * num_traits::pow(cq.clone(), j) / num_traits::pow(cq.clone(), k))
                        .collect(),
                );
                return Err(Error::Reducible { factor: scaled });
            }
            Search::Irreducible => return Ok(()),
            Search::NeedPrecision => {
                bits *= 2;
                if bits > 1 << 16 {
                    return Err(Error::RootIsolation("irreducibility search did not converge".into()));
                }
            }
        }
    }
}

enum Search {
    Found(QPoly),
    Irreducible,
    NeedPrecision,
}

fn search_factor(p: &QPoly, roots: &[Ball]) -> Result<Search> {
    let d = roots.len();
    let quarter = Dyadic::pow2(-2);
    for k in 1..=d / 2 {
        for subset in Subsets::new(d, k) {
            // coefficients of prod (t - r), lowest degree first
            let mut coeffs = vec![Ball::one()];
            for &i in &subset {
                let mut next = vec![Ball::zero(); coeffs.len() + 1];
                for (j, c) in coeffs.iter().enumerate() {
                    next[j + 1] = &next[j + 1] + c;
                    next[j] = &next[j] - &(c * &roots[i]);
                }
                coeffs = next;
            }
            if coeffs.iter().any(|c| c.radius() >= &quarter) {
                return Ok(Search::NeedPrecision);
            }
            let mut ints = Vec::with_capacity(coeffs.len());
            for c in &coeffs {
                let n = c.re().to_rational().round();
                if !c.contains(&n, &Rational::zero()) {
                    break;
                }
                ints.push(n);
            }
            if ints.len() != coeffs.len() {
                continue;
            }
            let g = QPoly::new(ints);
            if p.rem(&g).is_zero() {
                return Ok(Search::Found(g));
            }
        }
    }
    Ok(Search::Irreducible)
}

/// k-subsets of 0..n in lexicographic order.
struct Subsets {
    n: usize,
    cur: Option<Vec<usize>>,
}

impl Subsets {
    fn new(n: usize, k: usize) -> Self {
        Subsets {
            n,
            cur: (k <= n).then(|| (0..k).collect()),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.cur.clone()?;
        let k = out.len();
        let mut next = out.clone();
        let mut i = k;
        loop {
            if i == 0 {
                self.cur = None;
                break;
            }
            i -= 1;
            if next[i] < self.n - k + i {
                next[i] += 1;
                for j in i + 1..k {
                    next[j] = next[j - 1] + 1;
                }
                self.cur = Some(next);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qp(cs: &[i64]) -> QPoly {
        QPoly::new(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn sqrt3_with_hint() {
        let f = nf_create(qp(&[-3, 0, 1]), Some((q(173, 100), q(0, 1)))).unwrap();
        assert_eq!(f.degree(), 2);
        let r = f.root(f.distinguished_root_index(), 40).unwrap();
        assert!((r.re().to_f64() - 3f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn negative_hint_selects_other_root() {
        let f = nf_create(qp(&[-3, 0, 1]), Some((q(-17, 10), q(0, 1)))).unwrap();
        assert_eq!(f.distinguished_root_index(), 1);
    }

    #[test]
    fn default_root_is_largest_real_part() {
        let f = nf_create(qp(&[-3, 0, 1]), None).unwrap();
        assert_eq!(f.distinguished_root_index(), 0);
        let r = f.root(0, 40).unwrap();
        assert!(r.re().to_f64() > 1.7);
        assert_eq!(f.distinguished_root_string(), "1.73205080756887729353");
    }

    #[test]
    fn reducible_quadratic() {
        let err = nf_create(qp(&[-4, 0, 1]), None).unwrap_err();
        assert_eq!(err, Error::Reducible { factor: qp(&[-2, 1]) });
    }

    #[test]
    fn reducible_quartic_without_rational_roots() {
        // (t^2 - 2)(t^2 - 3)
        let m = &qp(&[-2, 0, 1]) * &qp(&[-3, 0, 1]);
        match nf_create(m.clone(), None).unwrap_err() {
            Error::Reducible { factor } => {
                assert_eq!(factor.degree(), Some(2));
                assert!(m.rem(&factor).is_zero());
            }
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn reducible_with_rational_coefficients() {
        // (t - 1/2)(t + 1/3)
        let m = &QPoly::new(vec![q(-1, 2), q(1, 1)]) * &QPoly::new(vec![q(1, 3), q(1, 1)]);
        match nf_create(m.clone(), None).unwrap_err() {
            Error::Reducible { factor } => assert!(m.rem(&factor).is_zero() && factor.degree() == Some(1)),
            e => panic!("unexpected {e:?}"),
        }
    }

    #[test]
    fn irreducible_quartic() {
        // t^4 - 10 t^2 + 1 = minimal polynomial of sqrt2 + sqrt3
        let f = nf_create(qp(&[1, 0, -10, 0, 1]), None).unwrap();
        assert_eq!(f.degree(), 4);
    }

    #[test]
    fn non_squarefree_is_reducible() {
        assert!(matches!(nf_create(qp(&[1, 2, 1]), None), Err(Error::Reducible { .. })));
    }

    #[test]
    fn input_validation() {
        assert!(matches!(nf_create(qp(&[-3, 0, 2]), None), Err(Error::InvalidMinPoly(_))));
        let mut cs = vec![0i64; 10];
        cs[0] = 2;
        cs[9] = 1;
        assert_eq!(nf_create(qp(&cs), None).unwrap_err(), Error::UnsupportedDegree(9));
    }

    #[test]
    fn ambiguous_hint() {
        // 0 is equidistant from +sqrt3 and -sqrt3
        assert_eq!(nf_create(qp(&[-3, 0, 1]), Some((q(0, 1), q(0, 1)))).unwrap_err(), Error::AmbiguousHint);
    }

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(Subsets::new(5, 2).count(), 10);
        assert_eq!(Subsets::new(4, 0).count(), 1);
        assert_eq!(Subsets::new(3, 3).collect::<Vec<_>>(), vec![vec![0, 1, 2]]);
    }
}
