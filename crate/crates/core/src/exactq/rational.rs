use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Coeff, Laurent};
use crate::error::{Error, Result};

/// Product `sign * q^shift * prod_m (1 - q^m)^{e_m}` with signed exponents.
///
/// Every q-factorial ratio in the system has this shape, so products of
/// such ratios cancel factor-by-factor without any polynomial arithmetic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QProduct {
    pub negative: bool,
    pub shift: i64,
    factors: BTreeMap<i64, i32>,
}

impl QProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn signed_q_pow(negative: bool, shift: i64) -> Self {
        Self {
            negative,
            shift,
            factors: BTreeMap::new(),
        }
    }

    /// Multiplies in `(1 - q^m)^e`; `m` must be positive.
    pub fn push_factor(&mut self, m: i64, e: i32) {
        assert!(m > 0, "factor 1 - q^{m} is not admissible");
        let slot = self.factors.entry(m).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&m);
        }
    }

    /// Multiplies in `(q^base; q^base)_n = prod_{k=1..n} (1 - q^{base k})` raised to `e`.
    pub fn push_q_factorial(&mut self, base: i64, n: i64, e: i32) {
        for k in 1..=n {
            self.push_factor(base * k, e);
        }
    }

    pub fn factors(&self) -> impl Iterator<Item = (i64, i32)> + '_ {
        self.factors.iter().map(|(m, e)| (*m, *e))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.negative ^= other.negative;
        out.shift += other.shift;
        for (m, e) in other.factors() {
            out.push_factor(m, e);
        }
        out
    }

    pub fn recip(&self) -> Self {
        Self {
            negative: self.negative,
            shift: -self.shift,
            factors: self.factors.iter().map(|(m, e)| (*m, -e)).collect(),
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.factors.values().all(|e| *e >= 0)
    }

    fn numerator<C: Coeff>(&self) -> Laurent<C> {
        let mut num = Laurent::signed_q_pow(self.negative, self.shift);
        for (m, e) in self.factors() {
            for _ in 0..e.max(0) {
                num = num.mul_one_minus_q_pow(m);
            }
        }
        num
    }

    pub fn to_rational<C: Coeff>(&self) -> Rational<C> {
        let den = self
            .factors()
            .filter(|(_, e)| *e < 0)
            .map(|(m, e)| (m, (-e) as u32))
            .collect();
        Rational {
            num: self.numerator(),
            den: Denominator {
                factors: den,
                rest: Laurent::one(),
            },
        }
    }
}

/// Denominator stored as `rest * prod_m (1 - q^m)^{e_m}`.
///
/// Sums take the factor-wise maximum of the exponents, which keeps common
/// denominators small for q-factorial data without any polynomial GCD.
#[derive(Clone, Debug)]
struct Denominator<C> {
    factors: BTreeMap<i64, u32>,
    rest: Laurent<C>,
}

impl<C: Coeff> Denominator<C> {
    fn one() -> Self {
        Self {
            factors: BTreeMap::new(),
            rest: Laurent::one(),
        }
    }

    fn expand(&self) -> Laurent<C> {
        let mut d = self.rest.clone();
        for (m, e) in &self.factors {
            for _ in 0..*e {
                d = d.mul_one_minus_q_pow(*m);
            }
        }
        d
    }
}

/// Ratio of two Laurent polynomials in q.
///
/// Not reduced to lowest terms: equality is cross-multiplicative and
/// [`Rational::reduce_to_laurent`] performs exact division with a remainder
/// check.
#[derive(Clone, Debug)]
pub struct Rational<C> {
    num: Laurent<C>,
    den: Denominator<C>,
}

impl<C: Coeff> Rational<C> {
    pub fn zero() -> Self {
        Self::from_laurent(Laurent::zero())
    }

    pub fn one() -> Self {
        Self::from_laurent(Laurent::one())
    }

    pub fn from_laurent(num: Laurent<C>) -> Self {
        Self {
            num,
            den: Denominator::one(),
        }
    }

    pub fn new(num: Laurent<C>, den: Laurent<C>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_laurent(num).div_laurent_unchecked(&den))
    }

    pub fn num(&self) -> &Laurent<C> {
        &self.num
    }

    /// The denominator as an expanded Laurent polynomial.
    pub fn den(&self) -> Laurent<C> {
        self.den.expand()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn div_laurent_unchecked(mut self, d: &Laurent<C>) -> Self {
        if let Some((neg, e)) = d.as_signed_monomial() {
            self.num = self.num.mul_q_pow(-e);
            if neg {
                self.num = -self.num;
            }
            return self;
        }
        if let [(0, one), (m, minus_one)] = d.terms() {
            if one.is_one() && (-minus_one.clone()).is_one() && *m > 0 {
                *self.den.factors.entry(*m).or_insert(0) += 1;
                return self;
            }
        }
        self.den.rest = &self.den.rest * d;
        self
    }

    /// Division by a nonzero Laurent polynomial.
    pub fn div_laurent(&self, d: &Laurent<C>) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.clone().div_laurent_unchecked(d))
    }

    /// Division by `1 - q^m` for positive `m`.
    pub fn div_one_minus_q_pow(&self, m: i64) -> Self {
        assert!(m > 0);
        let mut out = self.clone();
        *out.den.factors.entry(m).or_insert(0) += 1;
        out
    }

    pub fn mul_laurent(&self, f: &Laurent<C>) -> Self {
        Self {
            num: &self.num * f,
            den: self.den.clone(),
        }
    }

    pub fn mul_q_pow(&self, k: i64) -> Self {
        Self {
            num: self.num.mul_q_pow(k),
            den: self.den.clone(),
        }
    }

    /// Multiplication by a factored q-product, cancelling shared factors.
    pub fn mul_product(&self, p: &QProduct) -> Self {
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        if p.negative {
            num = -num;
        }
        num = num.mul_q_pow(p.shift);
        for (m, e) in p.factors() {
            if e > 0 {
                let have = den.factors.get(&m).copied().unwrap_or(0);
                let cancel = have.min(e as u32);
                if cancel == have {
                    den.factors.remove(&m);
                } else {
                    den.factors.insert(m, have - cancel);
                }
                for _ in 0..(e as u32 - cancel) {
                    num = num.mul_one_minus_q_pow(m);
                }
            } else {
                *den.factors.entry(m).or_insert(0) += (-e) as u32;
            }
        }
        Self { num, den }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = &self.num * &other.den.expand();
        Ok(Self {
            num,
            den: self.den.clone(),
        }
        .div_laurent_unchecked(&other.num))
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let other_num = if negate {
            -&other.num
        } else {
            other.num.clone()
        };
        if other.num.is_zero() {
            return self.clone();
        }
        if self.num.is_zero() {
            return Self {
                num: other_num,
                den: other.den.clone(),
            };
        }
        let mut factors = self.den.factors.clone();
        for (m, e) in &other.den.factors {
            let slot = factors.entry(*m).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let lift = |num: &Laurent<C>, own: &BTreeMap<i64, u32>| {
            let mut n = num.clone();
            for (m, e) in &factors {
                for _ in 0..(e - own.get(m).copied().unwrap_or(0)) {
                    n = n.mul_one_minus_q_pow(*m);
                }
            }
            n
        };
        let mut a = lift(&self.num, &self.den.factors);
        let mut b = lift(&other_num, &other.den.factors);
        let rest = if self.den.rest == other.den.rest {
            self.den.rest.clone()
        } else {
            a = &a * &other.den.rest;
            b = &b * &self.den.rest;
            &self.den.rest * &other.den.rest
        };
        Self {
            num: a + b,
            den: Denominator { factors, rest },
        }
    }

    /// Exact conversion to a Laurent polynomial; errors if the denominator
    /// leaves a remainder.
    pub fn reduce_to_laurent(&self) -> Result<Laurent<C>> {
        let mut n = self.num.div_exact(&self.den.rest)?;
        for (m, e) in self.den.factors.iter().rev() {
            for _ in 0..*e {
                n = n.div_one_minus_q_pow(*m).map_err(|_| {
                    Error::InexactDivision(format!("{} is not a Laurent polynomial", self))
                })?;
            }
        }
        Ok(n)
    }
}

impl<C: Coeff> PartialEq for Rational<C> {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den.expand() == &other.num * &self.den.expand()
    }
}

impl<C: Coeff> Eq for Rational<C> {}

impl<C: Coeff> fmt::Display for Rational<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den = self.den.expand();
        if den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, den)
        }
    }
}

impl<C: Coeff> Add for &Rational<C> {
    type Output = Rational<C>;
    fn add(self, rhs: Self) -> Rational<C> {
        self.add_impl(rhs, false)
    }
}

impl<C: Coeff> Sub for &Rational<C> {
    type Output = Rational<C>;
    fn sub(self, rhs: Self) -> Rational<C> {
        self.add_impl(rhs, true)
    }
}

impl<C: Coeff> Add for Rational<C> {
    type Output = Rational<C>;
    fn add(self, rhs: Self) -> Rational<C> {
        self.add_impl(&rhs, false)
    }
}

impl<C: Coeff> Sub for Rational<C> {
    type Output = Rational<C>;
    fn sub(self, rhs: Self) -> Rational<C> {
        self.add_impl(&rhs, true)
    }
}

impl<C: Coeff> Mul for &Rational<C> {
    type Output = Rational<C>;
    fn mul(self, rhs: Self) -> Rational<C> {
        let mut factors = self.den.factors.clone();
        for (m, e) in &rhs.den.factors {
            *factors.entry(*m).or_insert(0) += e;
        }
        Rational {
            num: &self.num * &rhs.num,
            den: Denominator {
                factors,
                rest: &self.den.rest * &rhs.den.rest,
            },
        }
    }
}

impl<C: Coeff> Mul for Rational<C> {
    type Output = Rational<C>;
    fn mul(self, rhs: Self) -> Rational<C> {
        &self * &rhs
    }
}

impl<C: Coeff> Neg for Rational<C> {
    type Output = Rational<C>;
    fn neg(self) -> Rational<C> {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<C: Coeff> std::iter::Sum for Rational<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type L = Laurent<BigInt>;
    type R = Rational<BigInt>;

    #[test]
    fn equality_is_cross_multiplicative() {
        let a = R::new(L::one_minus_q_pow(4), L::one_minus_q_pow(2)).unwrap();
        let b = R::from_laurent(L::one() + L::q_pow(2));
        assert_eq!(a, b);
        assert_eq!(a.reduce_to_laurent().unwrap(), L::one() + L::q_pow(2));
    }

    #[test]
    fn reduce_fails_loudly_on_remainder() {
        let a = R::new(L::one(), L::one_minus_q_pow(2)).unwrap();
        assert!(a.reduce_to_laurent().is_err());
        assert!(R::new(L::one(), L::zero()).is_err());
    }

    #[test]
    fn sums_share_factor_denominators() {
        // 1/(1-q^2) - q^2/(1-q^2) = 1
        let a = R::one().div_one_minus_q_pow(2);
        let b = R::from_laurent(L::q_pow(2)).div_one_minus_q_pow(2);
        let s = &a - &b;
        assert_eq!(s.den(), L::one_minus_q_pow(2));
        assert_eq!(s.reduce_to_laurent().unwrap(), L::one());
    }

    #[test]
    fn product_cancellation() {
        let mut p = QProduct::one();
        p.push_q_factorial(2, 3, 1);
        p.push_q_factorial(2, 2, -1);
        let r: R = p.to_rational();
        assert_eq!(r.den(), L::one());
        assert_eq!(r.num(), &L::one_minus_q_pow(6));
        let back = r.mul_product(&p.recip());
        assert_eq!(back.reduce_to_laurent().unwrap(), L::one());
    }

    #[test]
    fn general_denominator_division() {
        let d = L::from_terms([
            (0, BigInt::from(1)),
            (1, BigInt::from(1)),
            (2, BigInt::from(1)),
        ]);
        let r = R::from_laurent(&d * &L::q_pow(3)).div_laurent(&d).unwrap();
        assert_eq!(r.reduce_to_laurent().unwrap(), L::q_pow(3));
        let s = r.checked_div(&R::from_laurent(L::q_pow(3))).unwrap();
        assert_eq!(s, R::one());
    }
}
