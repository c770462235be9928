//! Sparse polynomials in a fixed tuple of named variables with Laurent-in-q
//! coefficients, plus the q-shift substitutions used by every difference
//! equation in the crate.

mod parse;
mod render;

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactq::{Coeff, Laurent};

/// Variable names in storage order; arity 3 uses the first three.
pub const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub const X: usize = 0;
pub const Y: usize = 1;
pub const Z: usize = 2;
pub const W: usize = 3;

/// Polynomial in `N` variables over Z[q, q^-1].
///
/// Exponent vectors are nonnegative and no stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly<C, const N: usize> {
    terms: BTreeMap<[u32; N], Laurent<C>>,
}

impl<C: Coeff, const N: usize> Default for MultiPoly<C, N> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coeff, const N: usize> MultiPoly<C, N> {
    pub fn zero() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Laurent::one())
    }

    pub fn constant(c: Laurent<C>) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn from_int(c: i32) -> Self {
        Self::constant(Laurent::from_int(c))
    }

    /// `q^k` as a polynomial.
    pub fn q_pow(k: i64) -> Self {
        Self::constant(Laurent::q_pow(k))
    }

    /// The variable with index `var`.
    pub fn var(var: usize) -> Self {
        let mut exp = [0; N];
        exp[var] = 1;
        Self::monomial(exp, Laurent::one())
    }

    pub fn monomial(exp: [u32; N], coeff: Laurent<C>) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = ([u32; N], Laurent<C>)>>(iter: I) -> Self {
        let mut p = Self::zero();
        for (exp, c) in iter {
            p.add_term(exp, &c);
        }
        p
    }

    fn add_term(&mut self, exp: [u32; N], c: &Laurent<C>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exp) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&exp);
                }
            }
            None => {
                self.terms.insert(exp, c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending lexicographic order of the exponent vector.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &Laurent<C>)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32; N]) -> Laurent<C> {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn map_coeffs<F: Fn(&Laurent<C>) -> Laurent<C>>(&self, f: F) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }

    pub fn scale(&self, c: &Laurent<C>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        self.map_coeffs(|x| x * c)
    }

    pub fn mul_q_pow(&self, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.mul_q_pow(k)))
                .collect(),
        }
    }

    /// Substitution `v -> q^k v` for the variable with index `var`.
    pub fn shift_substitute(&self, var: usize, k: i64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, c.mul_q_pow(k * e[var] as i64)))
                .collect(),
        }
    }

    /// Simultaneous substitution `v_m -> q^{shifts[m]} v_m`.
    pub fn shift_all(&self, shifts: [i64; N]) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let k: i64 = (0..N).map(|m| shifts[m] * e[m] as i64).sum();
                    (*e, c.mul_q_pow(k))
                })
                .collect(),
        }
    }

    /// Substitutes `v_m <- q^{exps[m]}` for every variable.
    pub fn evaluate_at_q_powers(&self, exps: [i64; N]) -> Laurent<C> {
        let terms = self.terms.iter().flat_map(|(e, c)| {
            let k: i64 = (0..N).map(|m| exps[m] * e[m] as i64).sum();
            c.iter().map(move |(qe, qc)| (qe + k, qc.clone()))
        });
        Laurent::from_terms(terms)
    }

    /// Substitutes a single variable by `q^exp`, keeping the arity.
    pub fn substitute_var(&self, var: usize, exp: i64) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let mut e2 = *e;
            e2[var] = 0;
            (e2, c.mul_q_pow(exp * e[var] as i64))
        }))
    }

    /// Exchanges two variables.
    pub fn swap_vars(&self, a: usize, b: usize) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = *e;
                    e2.swap(a, b);
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// Substitution `q -> q^{-1}` in every coefficient.
    pub fn invert_q(&self) -> Self {
        self.map_coeffs(Laurent::invert_q)
    }

    /// Extremal q-exponents over all coefficients.
    pub fn q_degree_range(&self) -> Result<(i64, i64)> {
        let lo = self.terms.values().filter_map(Laurent::min_exp).min();
        let hi = self.terms.values().filter_map(Laurent::max_exp).max();
        match (lo, hi) {
            (Some(lo), Some(hi)) => Ok((lo, hi)),
            _ => Err(Error::Domain("q-degree of the zero polynomial".into())),
        }
    }

    /// The polynomial formed by the coefficients of `q^e`.
    pub fn q_coefficient(&self, e: i64) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (*m, Laurent::constant(c.coeff(e)))),
        )
    }

    /// Maximal total exponent of the given variable.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var]).max().unwrap_or(0)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let mut e = [0u32; N];
                for m in 0..N {
                    e[m] = ea[m] + eb[m];
                }
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            if negate {
                out.add_term(*e, &-c);
            } else {
                out.add_term(*e, c);
            }
        }
        out
    }

    /// The variable names for this arity.
    pub fn var_names() -> &'static [&'static str] {
        &VAR_NAMES[..N]
    }

    /// Parses an expression in `q` and the variables of this arity; see
    /// [`parse`](self::parse) for the accepted syntax.
    pub fn parse(src: &str) -> Result<Self> {
        parse::parse(src)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, C: Coeff, const N: usize> $tr<&'a MultiPoly<C, N>> for &'a MultiPoly<C, N> {
            type Output = MultiPoly<C, N>;
            fn $method(self, rhs: &'a MultiPoly<C, N>) -> MultiPoly<C, N> {
                let f: fn(&MultiPoly<C, N>, &MultiPoly<C, N>) -> MultiPoly<C, N> = $body;
                f(self, rhs)
            }
        }
        impl<C: Coeff, const N: usize> $tr<MultiPoly<C, N>> for MultiPoly<C, N> {
            type Output = MultiPoly<C, N>;
            fn $method(self, rhs: MultiPoly<C, N>) -> MultiPoly<C, N> {
                (&self).$method(&rhs)
            }
        }
        impl<'a, C: Coeff, const N: usize> $tr<&'a MultiPoly<C, N>> for MultiPoly<C, N> {
            type Output = MultiPoly<C, N>;
            fn $method(self, rhs: &'a MultiPoly<C, N>) -> MultiPoly<C, N> {
                (&self).$method(rhs)
            }
        }
        impl<'a, C: Coeff, const N: usize> $tr<MultiPoly<C, N>> for &'a MultiPoly<C, N> {
            type Output = MultiPoly<C, N>;
            fn $method(self, rhs: MultiPoly<C, N>) -> MultiPoly<C, N> {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b, false));
forward_binop!(Sub, sub, |a, b| a.add_impl(b, true));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));

impl<C: Coeff, const N: usize> Neg for MultiPoly<C, N> {
    type Output = MultiPoly<C, N>;
    fn neg(self) -> MultiPoly<C, N> {
        MultiPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl<C: Coeff, const N: usize> Neg for &MultiPoly<C, N> {
    type Output = MultiPoly<C, N>;
    fn neg(self) -> MultiPoly<C, N> {
        self.clone().neg()
    }
}

impl<C: Coeff, const N: usize> std::iter::Sum for MultiPoly<C, N> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |acc, x| acc + x)
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr<C: Coeff> {
    exp: Vec<u32>,
    #[serde(bound = "")]
    coeff: Laurent<C>,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr<C: Coeff> {
    vars: Vec<String>,
    #[serde(bound = "")]
    terms: Vec<TermRepr<C>>,
}

impl<C: Coeff, const N: usize> Serialize for MultiPoly<C, N> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            vars: Self::var_names().iter().map(|v| v.to_string()).collect(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.to_vec(),
                    coeff: c.clone(),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de, C: Coeff, const N: usize> Deserialize<'de> for MultiPoly<C, N> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = PolyRepr::<C>::deserialize(d)?;
        if repr
            .vars
            .iter()
            .map(String::as_str)
            .ne(Self::var_names().iter().copied())
        {
            return Err(D::Error::custom(format!(
                "expected variables {:?}, found {:?}",
                Self::var_names(),
                repr.vars
            )));
        }
        let mut terms = Vec::with_capacity(repr.terms.len());
        for t in repr.terms {
            let exp: [u32; N] = t
                .exp
                .try_into()
                .map_err(|_| D::Error::custom("exponent vector has the wrong length"))?;
            terms.push((exp, t.coeff));
        }
        Ok(Self::from_terms(terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    type P4 = MultiPoly<BigInt, 4>;
    type L = Laurent<BigInt>;

    fn q10() -> P4 {
        P4::parse("w x y^2 z - w - x y + 1").unwrap()
    }

    #[test]
    fn shift_examples() {
        let xy = P4::parse("x y").unwrap();
        assert_eq!(xy.shift_substitute(X, -4), P4::parse("q^-4 x y").unwrap());
        assert_eq!(P4::one().shift_substitute(Z, 7), P4::one());
        assert_eq!(
            q10().shift_substitute(Y, 2),
            P4::parse("q^4 w x y^2 z - w - q^2 x y + 1").unwrap()
        );
    }

    #[test]
    fn evaluation_examples() {
        let v = q10().evaluate_at_q_powers([4, 6, 0, 0]);
        assert_eq!(v, L::q_pow(16) - L::q_pow(10));
        assert!(q10().evaluate_at_q_powers([0; 4]).is_zero());
        assert_eq!(P4::one().evaluate_at_q_powers([3, 1, 4, 1]), L::one());
    }

    #[test]
    fn degree_range() {
        assert_eq!(q10().q_degree_range().unwrap(), (0, 0));
        assert!(P4::zero().q_degree_range().is_err());
        let p = P4::parse("q^2 x + q^-3").unwrap();
        assert_eq!(p.q_degree_range().unwrap(), (-3, 2));
    }

    #[test]
    fn json_shape() {
        let p = P4::parse("2 x - q").unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(
            s,
            r#"{"vars":["x","y","z","w"],"terms":[{"exp":[0,0,0,0],"coeff":{"q":[[1,"-1"]]}},{"exp":[1,0,0,0],"coeff":{"q":[[0,"2"]]}}]}"#
        );
        let back: P4 = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        let bad = s.replace(r#""w""#, r#""v""#);
        assert!(serde_json::from_str::<P4>(&bad).is_err());
    }

    fn arb_poly() -> impl Strategy<Value = P4> {
        prop::collection::vec(
            (
                prop::array::uniform4(0u32..3),
                prop::collection::vec((-4i64..5, -3i32..4), 0..3),
            ),
            0..5,
        )
        .prop_map(|terms| {
            P4::from_terms(terms.into_iter().map(|(e, c)| {
                (
                    e,
                    L::from_terms(c.into_iter().map(|(k, v)| (k, BigInt::from(v)))),
                )
            }))
        })
    }

    proptest! {
        #[test]
        fn shift_then_unshift_is_identity(p in arb_poly(), var in 0usize..4, k in -6i64..7) {
            prop_assert_eq!(p.shift_substitute(var, k).shift_substitute(var, -k), p);
        }

        #[test]
        fn evaluation_is_a_ring_homomorphism(a in arb_poly(), b in arb_poly(),
                                             pt in prop::array::uniform4(-3i64..4)) {
            prop_assert_eq!(
                (&a + &b).evaluate_at_q_powers(pt),
                a.evaluate_at_q_powers(pt) + b.evaluate_at_q_powers(pt)
            );
            prop_assert_eq!(
                (&a * &b).evaluate_at_q_powers(pt),
                a.evaluate_at_q_powers(pt) * b.evaluate_at_q_powers(pt)
            );
        }

        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(P4::parse(&a.to_string()).unwrap(), a);
        }

        #[test]
        fn json_round_trip(a in arb_poly()) {
            let s = serde_json::to_string(&a).unwrap();
            prop_assert_eq!(serde_json::from_str::<P4>(&s).unwrap(), a);
        }
    }
}
