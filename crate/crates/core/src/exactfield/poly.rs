//! Dense univariate polynomials over the Gaussian rationals.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Scalar;

const DIVISOR_SEARCH_LIMIT: u64 = 1_000_000;

/// Positive divisors of `n != 0` by trial division; `None` when `|n|` is too
/// large.
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs();
    let (mut small, mut large) = (Vec::new(), Vec::new());
    let mut d = BigInt::one();
    let mut steps = 0;
    while &d * &d <= n {
        steps += 1;
        if steps > DIVISOR_SEARCH_LIMIT {
            return None;
        }
        if (&n % &d).is_zero() {
            let q = &n / &d;
            if q != d {
                large.push(q);
            }
            small.push(d.clone());
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// Coefficients lowest degree first, no trailing zeros. The zero polynomial
/// has no coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Poly::new(vec![c])
    }

    /// The polynomial `t`.
    pub fn var() -> Self {
        Poly::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn monomial(c: Scalar, degree: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); degree];
        coeffs.push(c);
        Poly::new(coeffs)
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| Scalar::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Divides by the leading coefficient. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let Some(nd) = self.degree() else {
            return (Poly::zero(), Poly::zero());
        };
        if nd < dd {
            return (Poly::zero(), self.clone());
        }
        let lc_inv = divisor.coeffs[dd]
            .inv()
            .expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Scalar::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(quot), Poly::new(rem))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.div_rem(divisor);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            if y.is_constant() {
                return Poly::one();
            }
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r.monic();
        }
        x.monic()
    }

    pub fn eval(&self, point: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * point) + c;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicity of `0` as a root (for the zero polynomial, 0).
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    pub fn shift_down(&self, k: usize) -> Poly {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn has_real_coefficients(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_real)
    }

    /// Rational roots with multiplicities in increasing order, and the
    /// cofactor left after dividing them out. `None` when the coefficients
    /// are too large for the divisor search.
    pub fn rational_roots(&self) -> Option<(Vec<(BigRational, usize)>, Poly)> {
        if self.is_zero() {
            return Some((Vec::new(), Poly::zero()));
        }
        let mut roots = Vec::new();
        let k = self.trailing_zeros();
        if k > 0 {
            roots.push((BigRational::zero(), k));
        }
        let mut rest = self.shift_down(k);
        // a rational root is a common root of the real and imaginary parts
        let re: Vec<BigRational> = rest.coeffs.iter().map(|c| c.re().clone()).collect();
        let im: Vec<BigRational> = rest.coeffs.iter().map(|c| c.im().clone()).collect();
        let source = if re.iter().any(|x| !x.is_zero()) {
            re
        } else {
            im
        };
        let lcm = source.iter().fold(BigInt::one(), |acc, x| {
            num_integer::Integer::lcm(&acc, x.denom())
        });
        let mut ints: Vec<BigInt> = source
            .iter()
            .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
            .skip_while(Zero::is_zero)
            .collect();
        while ints.last().is_some_and(Zero::is_zero) {
            ints.pop();
        }
        if ints.len() > 1 {
            let heads = divisors(&ints[0])?;
            let tails = divisors(ints.last().expect("nonempty"))?;
            let mut candidates = BTreeSet::new();
            for p in &heads {
                for q in &tails {
                    let r = BigRational::new(p.clone(), q.clone());
                    candidates.insert(-r.clone());
                    candidates.insert(r);
                }
            }
            for r in candidates {
                let point = Scalar::from_rational(r.clone());
                let factor = Poly::new(vec![-&point, Scalar::one()]);
                let mut mult = 0;
                while rest.degree().is_some_and(|d| d > 0) && rest.eval(&point).is_zero() {
                    rest = rest.div_rem(&factor).0;
                    mult += 1;
                }
                if mult > 0 {
                    roots.push((r, mult));
                }
            }
        }
        roots.sort();
        Some((roots, rest))
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Scalar::zero();
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = rhs.coeffs.get(k).unwrap_or(&zero);
                a + b
            })
            .collect();
        Poly::new(coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Scalar::zero();
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).unwrap_or(&zero);
                let b = rhs.coeffs.get(k).unwrap_or(&zero);
                a - b
            })
            .collect();
        Poly::new(coeffs)
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        if self.coeffs.len() == 1 {
            return rhs.scale(&self.coeffs[0]);
        }
        if rhs.coeffs.len() == 1 {
            return self.scale(&rhs.coeffs[0]);
        }
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Poly::new(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Coefficient-list literal `[c0, c1, ...]`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        if self.coeffs.is_empty() {
            write!(f, "0")?;
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_roots() {
        // 2 t^2 (t - 1)^2 (2t + 3) (t^2 + 1)
        let p = &(&Poly::from_ints(&[0, 0, 2]) * &Poly::from_ints(&[1, -2, 1]))
            * &(&Poly::from_ints(&[3, 2]) * &Poly::from_ints(&[1, 0, 1]));
        let (roots, rest) = p.rational_roots().unwrap();
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(roots, vec![(r(-3, 2), 1), (r(0, 1), 2), (r(1, 1), 2)]);
        assert_eq!(rest.monic(), Poly::from_ints(&[1, 0, 1]));
        assert!(Poly::from_ints(&[7]).rational_roots().unwrap().0.is_empty());
        // (t - i)(t - 2) has the rational root 2 only
        let q = &Poly::new(vec![-Scalar::i(), Scalar::one()]) * &Poly::from_ints(&[-2, 1]);
        assert_eq!(q.rational_roots().unwrap().0, vec![(r(2, 1), 1)]);
    }

    #[test]
    fn division_identity() {
        let a = Poly::from_ints(&[-2, 0, 2]);
        let b = Poly::from_ints(&[-2, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, Poly::from_ints(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn gcd_is_monic() {
        // (t-1)(t+1) and 3(t-1)(t-2)
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[6, -9, 3]);
        assert_eq!(Poly::gcd(&a, &b), Poly::from_ints(&[-1, 1]));
        assert_eq!(Poly::gcd(&a, &Poly::from_ints(&[5])), Poly::one());
    }

    #[test]
    fn eval_horner() {
        let p = Poly::from_ints(&[1, -2, 1]);
        assert_eq!(p.eval(&Scalar::from_int(3)), Scalar::from_int(4));
    }
}
