use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Coeff;
use crate::error::{Error, Result};

/// Laurent polynomial in q with integer coefficients.
///
/// Terms are kept sorted by ascending exponent and no stored coefficient is
/// zero, so the zero polynomial is the empty term list and structural
/// equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Laurent<C> {
    terms: Vec<(i64, C)>,
}

impl<C: Coeff> Default for Laurent<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff> Laurent<C> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i32) -> Self {
        Self::constant(C::from(c))
    }

    pub fn monomial(c: C, exp: i64) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self {
                terms: vec![(exp, c)],
            }
        }
    }

    /// `q^exp` with unit coefficient.
    pub fn q_pow(exp: i64) -> Self {
        Self::monomial(C::one(), exp)
    }

    /// `sign * q^exp` for `sign` in {+1, -1}.
    pub fn signed_q_pow(negative: bool, exp: i64) -> Self {
        let c = if negative { -C::one() } else { C::one() };
        Self::monomial(c, exp)
    }

    /// `1 - q^m`.
    pub fn one_minus_q_pow(m: i64) -> Self {
        Self::one() - Self::q_pow(m)
    }

    /// Builds a polynomial from arbitrary `(exponent, coefficient)` pairs,
    /// summing duplicates and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (i64, C)>>(iter: I) -> Self {
        let mut map: BTreeMap<i64, C> = BTreeMap::new();
        for (e, c) in iter {
            match map.get_mut(&e) {
                Some(slot) => *slot += &c,
                None => {
                    map.insert(e, c);
                }
            }
        }
        Self {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    fn from_sorted_unchecked(terms: Vec<(i64, C)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Self { terms }
    }

    fn from_dense(offset: i64, dense: Vec<C>) -> Self {
        let terms = dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (offset + k as i64, c))
            .collect();
        Self { terms }
    }

    fn to_dense(&self, lo: i64, hi: i64) -> Vec<C> {
        let mut dense = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            dense[(e - lo) as usize] = c.clone();
        }
        dense
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1.is_one()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(i64, C)] {
        &self.terms
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &C)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> C {
        match self.terms.binary_search_by_key(&exp, |(e, _)| *e) {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => C::zero(),
        }
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.first().map(|(e, _)| *e)
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.last().map(|(e, _)| *e)
    }

    /// `Some((sign, exp))` when the polynomial is `±q^exp`.
    pub fn as_signed_monomial(&self) -> Option<(bool, i64)> {
        match self.terms.as_slice() {
            [(e, c)] if c.is_one() => Some((false, *e)),
            [(e, c)] if (-c.clone()).is_one() => Some((true, *e)),
            _ => None,
        }
    }

    /// Constant term if the polynomial is a constant.
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.as_slice() {
            [] => Some(C::zero()),
            [(0, c)] => Some(c.clone()),
            _ => None,
        }
    }

    /// Multiplication by `q^k`.
    pub fn mul_q_pow(&self, k: i64) -> Self {
        Self::from_sorted_unchecked(self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect())
    }

    pub fn scale(&self, s: &C) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self::from_sorted_unchecked(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let mut c = c.clone();
                    c *= s;
                    (*e, c)
                })
                .collect(),
        )
    }

    /// Substitution `q -> q^m` for nonzero `m`.
    pub fn subs_q_pow(&self, m: i64) -> Self {
        assert!(m != 0, "q -> q^0 is not an automorphism");
        Self::from_terms(self.terms.iter().map(|(e, c)| (e * m, c.clone())))
    }

    /// Substitution `q -> q^{-1}`.
    pub fn invert_q(&self) -> Self {
        let mut terms: Vec<_> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        Self::from_sorted_unchecked(terms)
    }

    /// Multiplication by `1 - q^m`.
    pub fn mul_one_minus_q_pow(&self, m: i64) -> Self {
        if m == 0 {
            return Self::zero();
        }
        self - &self.mul_q_pow(m)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// True when every exponent is congruent to `parity` mod 2.
    pub fn has_parity(&self, parity: i64) -> bool {
        self.terms
            .iter()
            .all(|(e, _)| (e - parity).rem_euclid(2) == 0)
    }

    /// Exact division by `1 - q^m` (m > 0); fails if a remainder survives.
    pub fn div_one_minus_q_pow(&self, m: i64) -> Result<Self> {
        assert!(m > 0);
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let lo = self.min_exp().unwrap();
        let hi = self.max_exp().unwrap();
        if hi - lo < m {
            return Err(Error::InexactDivision(format!("{self} by 1 - q^{m}")));
        }
        let n = self.to_dense(lo, hi);
        let qlen = (hi - m - lo + 1) as usize;
        let m = m as usize;
        let mut quot: Vec<C> = Vec::with_capacity(qlen);
        for k in 0..qlen {
            let mut v = n[k].clone();
            if k >= m {
                v += &quot[k - m];
            }
            quot.push(v);
        }
        // Coefficients above the quotient range must cancel: N_e = -Q_{e-m}.
        for k in qlen..n.len() {
            let mut sum = n[k].clone();
            if k >= m {
                sum += &quot[k - m];
            }
            if !sum.is_zero() {
                return Err(Error::InexactDivision(format!("{self} by 1 - q^{m}")));
            }
        }
        Ok(Self::from_dense(lo, quot))
    }

    /// Exact division; fails loudly when the divisor does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        if let Some((neg, e)) = divisor.as_signed_monomial() {
            let r = self.mul_q_pow(-e);
            return Ok(if neg { -r } else { r });
        }
        if let [(0, one), (m, minus_one)] = divisor.terms.as_slice() {
            if one.is_one() && (-minus_one.clone()).is_one() && *m > 0 {
                return self.div_one_minus_q_pow(*m);
            }
        }
        let inexact = || Error::InexactDivision(format!("({self}) by ({divisor})"));
        let (n_lo, n_hi) = (self.min_exp().unwrap(), self.max_exp().unwrap());
        let (d_lo, d_hi) = (divisor.min_exp().unwrap(), divisor.max_exp().unwrap());
        let d_span = d_hi - d_lo;
        if n_hi - n_lo < d_span {
            return Err(inexact());
        }
        let mut rem = self.to_dense(n_lo, n_hi);
        let d_dense = divisor.to_dense(d_lo, d_hi);
        let lead = &d_dense[d_span as usize];
        let mut quot: Vec<(i64, C)> = Vec::new();
        let mut pos = (n_hi - n_lo) as usize;
        let stop = d_span as usize;
        loop {
            if !rem[pos].is_zero() {
                let (qc, r) = rem[pos].div_rem(lead);
                if !r.is_zero() {
                    return Err(inexact());
                }
                let base = pos - stop;
                for (k, dc) in d_dense.iter().enumerate() {
                    if dc.is_zero() {
                        continue;
                    }
                    let mut t = qc.clone();
                    t *= dc;
                    rem[base + k] -= &t;
                }
                quot.push((n_lo + base as i64 - d_lo, qc));
            }
            if pos == stop {
                break;
            }
            pos -= 1;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(inexact());
        }
        quot.reverse();
        Ok(Self::from_sorted_unchecked(quot))
    }

    fn add_impl(&self, other: &Self, negate_other: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i].clone());
                i += 1;
            } else if i >= a.len() || b[j].0 < a[i].0 {
                let c = if negate_other {
                    -b[j].1.clone()
                } else {
                    b[j].1.clone()
                };
                out.push((b[j].0, c));
                j += 1;
            } else {
                let mut c = a[i].1.clone();
                if negate_other {
                    c -= &b[j].1;
                } else {
                    c += &b[j].1;
                }
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
        Self::from_sorted_unchecked(out)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.scale(c).mul_q_pow(*e);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.scale(c).mul_q_pow(*e);
        }
        let lo = self.min_exp().unwrap() + other.min_exp().unwrap();
        let hi = self.max_exp().unwrap() + other.max_exp().unwrap();
        let mut acc = vec![C::zero(); (hi - lo + 1) as usize];
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut t = ca.clone();
                t *= cb;
                acc[(ea + eb - lo) as usize] += &t;
            }
        }
        Self::from_dense(lo, acc)
    }
}

impl<C: Coeff> fmt::Display for Laurent<C> {
    /// Signed monomial list with ascending exponents, e.g. `-q^6 - q^8 + q^22`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{mag}*q")?,
                (e, true) => write!(f, "q^{e}")?,
                (e, false) => write!(f, "{mag}*q^{e}")?,
            }
        }
        Ok(())
    }
}

impl<C: Coeff> Serialize for Laurent<C> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            q: Vec<(i64, String)>,
        }
        Repr {
            q: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.to_string()))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff> Deserialize<'de> for Laurent<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            q: Vec<(i64, String)>,
        }
        let repr = Repr::deserialize(d)?;
        let mut terms = Vec::with_capacity(repr.q.len());
        for (e, s) in repr.q {
            let c = s
                .parse::<C>()
                .map_err(|_| D::Error::custom(format!("bad coefficient {s:?}")))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, C: Coeff> $tr<&'a Laurent<C>> for &'a Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: &'a Laurent<C>) -> Laurent<C> {
                let f: fn(&Laurent<C>, &Laurent<C>) -> Laurent<C> = $body;
                f(self, rhs)
            }
        }
        impl<C: Coeff> $tr<Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: Laurent<C>) -> Laurent<C> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, C: Coeff> $tr<&'a Laurent<C>> for Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: &'a Laurent<C>) -> Laurent<C> {
                (&self).$method(rhs)
            }
        }
        impl<'a, C: Coeff> $tr<Laurent<C>> for &'a Laurent<C> {
            type Output = Laurent<C>;
            fn $method(self, rhs: Laurent<C>) -> Laurent<C> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl<C: Coeff> AddAssign<&Laurent<C>> for Laurent<C> {
    fn add_assign(&mut self, rhs: &Laurent<C>) {
        *self = self.add_impl(rhs, false);
    }
}

impl<C: Coeff> SubAssign<&Laurent<C>> for Laurent<C> {
    fn sub_assign(&mut self, rhs: &Laurent<C>) {
        *self = self.add_impl(rhs, true);
    }
}

impl<C: Coeff> MulAssign<&Laurent<C>> for Laurent<C> {
    fn mul_assign(&mut self, rhs: &Laurent<C>) {
        *self = self.mul_impl(rhs);
    }
}

impl<C: Coeff> Neg for Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        Laurent::from_sorted_unchecked(self.terms.into_iter().map(|(e, c)| (e, -c)).collect())
    }
}

impl<C: Coeff> Neg for &Laurent<C> {
    type Output = Laurent<C>;
    fn neg(self) -> Laurent<C> {
        self.clone().neg()
    }
}

impl<C: Coeff> std::iter::Sum for Laurent<C> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    type L = Laurent<BigInt>;

    fn l(terms: &[(i64, i32)]) -> L {
        L::from_terms(terms.iter().map(|&(e, c)| (e, BigInt::from(c))))
    }

    #[test]
    fn zero_is_empty_and_cancellation_drops_terms() {
        let a = l(&[(0, 1), (2, -3)]);
        let b = l(&[(2, -3), (0, 1)]);
        assert!((&a - &b).is_zero());
        assert_eq!(L::zero().terms().len(), 0);
        assert!(l(&[(1, 0)]).is_zero());
    }

    #[test]
    fn product_of_pochhammer_factors() {
        let p = L::one_minus_q_pow(2) * L::one_minus_q_pow(4);
        assert_eq!(p, l(&[(0, 1), (2, -1), (4, -1), (6, 1)]));
    }

    #[test]
    fn rendering() {
        let p = l(&[(6, -1), (8, -1), (10, -1), (22, 1)]);
        assert_eq!(p.to_string(), "-q^6 - q^8 - q^10 + q^22");
        assert_eq!(l(&[(-2, 3), (0, -1), (1, 1)]).to_string(), "3*q^-2 - 1 + q");
        assert_eq!(L::zero().to_string(), "0");
    }

    #[test]
    fn exact_division_and_remainder() {
        let d = l(&[(0, 1), (1, 1), (2, 1)]);
        let e = l(&[(0, 1), (1, -1), (2, 1)]);
        let n = (&d * &e).mul_q_pow(6);
        assert_eq!(n.div_exact(&d).unwrap(), e.mul_q_pow(6));
        assert!(n.div_exact(&l(&[(0, 2), (1, 1)])).is_err());
        assert!(l(&[(0, 1), (3, 1)])
            .div_exact(&L::one_minus_q_pow(1))
            .is_err());
        assert!(n.div_exact(&L::zero()).is_err());
    }

    #[test]
    fn fast_binomial_division_matches_general() {
        let n = l(&[(-3, 2), (0, 5), (4, -1), (9, 7)]) * L::one_minus_q_pow(4);
        let fast = n.div_one_minus_q_pow(4).unwrap();
        assert_eq!(fast, l(&[(-3, 2), (0, 5), (4, -1), (9, 7)]));
        assert!(l(&[(0, 1), (2, 1)]).div_one_minus_q_pow(2).is_err());
    }

    #[test]
    fn json_round_trip() {
        let p = l(&[(-1, -4), (3, 12)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"q":[[-1,"-4"],[3,"12"]]}"#);
        let back: L = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn works_over_machine_integers() {
        let a: Laurent<i64> = Laurent::from_terms([(0, 1), (1, 1)]);
        let sq = &a * &a;
        assert_eq!(sq, Laurent::from_terms([(0, 1), (1, 2), (2, 1)]));
        assert_eq!(sq.div_exact(&a).unwrap(), a);
    }
}
