use super::{Coeff, Laurent, QProduct, Rational};
use crate::error::{Error, Result};

/// Signed power of q, `±q^exp`, used as the argument `z` of `(z; q^b)_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct QMonomial {
    pub negative: bool,
    pub exp: i64,
}

impl QMonomial {
    pub fn q_pow(exp: i64) -> Self {
        Self {
            negative: false,
            exp,
        }
    }

    pub fn neg_q_pow(exp: i64) -> Self {
        Self {
            negative: true,
            exp,
        }
    }

    pub fn to_laurent<C: Coeff>(self) -> Laurent<C> {
        Laurent::signed_q_pow(self.negative, self.exp)
    }
}

/// `(z; q^base)_n = prod_{j=0}^{n-1} (1 - z q^{base j})`, expanded exactly.
pub fn q_pochhammer<C: Coeff>(z: QMonomial, base_exp: i64, n: i64) -> Result<Laurent<C>> {
    if base_exp <= 0 {
        return Err(Error::Domain(format!(
            "q-Pochhammer base exponent {base_exp} must be positive"
        )));
    }
    if n < 0 {
        return Err(Error::Domain(format!(
            "q-Pochhammer length {n} is negative"
        )));
    }
    let mut acc = Laurent::one();
    for j in 0..n {
        let factor = Laurent::one()
            - QMonomial {
                exp: z.exp + base_exp * j,
                ..z
            }
            .to_laurent();
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// Factored form of the multi-index symbol
/// `prod_i (p;p)_{uppers_i} / prod_j (p;p)_{lowers_j}` with `p = q^base`.
///
/// Returns `Ok(None)` for the zero value (all uppers nonnegative and some
/// lower negative). A negative upper is left undefined and rejected.
pub fn q_symbol_product(uppers: &[i64], lowers: &[i64], base_exp: i64) -> Result<Option<QProduct>> {
    if base_exp <= 0 {
        return Err(Error::Domain(format!(
            "q-symbol base exponent {base_exp} must be positive"
        )));
    }
    if let Some(bad) = uppers.iter().find(|&&r| r < 0) {
        return Err(Error::Domain(format!(
            "q-symbol with negative upper index {bad} (uppers {uppers:?}, lowers {lowers:?})"
        )));
    }
    if lowers.iter().any(|&s| s < 0) {
        return Ok(None);
    }
    let mut p = QProduct::one();
    for &r in uppers {
        p.push_q_factorial(base_exp, r, 1);
    }
    for &s in lowers {
        p.push_q_factorial(base_exp, s, -1);
    }
    Ok(Some(p))
}

/// The multi-index q-factorial symbol as an exact ratio.
pub fn q_symbol<C: Coeff>(uppers: &[i64], lowers: &[i64], base_exp: i64) -> Result<Rational<C>> {
    Ok(match q_symbol_product(uppers, lowers, base_exp)? {
        Some(p) => p.to_rational(),
        None => Rational::zero(),
    })
}

/// `(q^base; q^base)_n` as a Laurent polynomial.
pub fn q_factorial<C: Coeff>(base_exp: i64, n: i64) -> Result<Laurent<C>> {
    q_pochhammer(QMonomial::q_pow(base_exp), base_exp, n)
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
    fn pochhammer_examples() {
        assert_eq!(
            q_pochhammer::<BigInt>(QMonomial::q_pow(2), 2, 0).unwrap(),
            L::one()
        );
        assert_eq!(
            q_pochhammer::<BigInt>(QMonomial::q_pow(2), 2, 2).unwrap(),
            l(&[(0, 1), (2, -1), (4, -1), (6, 1)])
        );
        assert_eq!(
            q_pochhammer::<BigInt>(QMonomial::q_pow(-1), 4, 1).unwrap(),
            l(&[(-1, -1), (0, 1)])
        );
        assert!(q_pochhammer::<BigInt>(QMonomial::q_pow(2), 2, -1).is_err());
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(q_symbol::<BigInt>(&[1], &[1], 2).unwrap(), Rational::one());
        let s = q_symbol::<BigInt>(&[2], &[1, 1], 2).unwrap();
        assert_eq!(s.reduce_to_laurent().unwrap(), l(&[(0, 1), (2, 1)]));
        assert!(q_symbol::<BigInt>(&[3], &[-1, 4], 2).unwrap().is_zero());
        assert!(q_symbol::<BigInt>(&[-1], &[0], 2).is_err());
    }

    #[test]
    fn gaussian_binomial_is_polynomial() {
        // [5 choose 2]_{q^2}
        let s = q_symbol::<BigInt>(&[5], &[2, 3], 2).unwrap();
        let p = s.reduce_to_laurent().unwrap();
        assert_eq!(p.coeff(0), BigInt::from(1));
        assert_eq!(p.max_exp(), Some(12));
    }
}
