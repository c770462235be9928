use super::{Coeff, Laurent, QMonomial, Rational};

/// Power series in an auxiliary variable `u`, truncated after `u^order`,
/// with rational-in-q coefficients.
#[derive(Clone, Debug)]
pub struct PowerSeries<C> {
    order: usize,
    coeffs: Vec<Rational<C>>,
}

impl<C: Coeff> PartialEq for PowerSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.coeffs == other.coeffs
    }
}

impl<C: Coeff> Eq for PowerSeries<C> {}

impl<C: Coeff> PowerSeries<C> {
    pub fn one(order: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); order + 1];
        coeffs[0] = Rational::one();
        Self { order, coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<Rational<C>>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a power series keeps at least the constant term"
        );
        Self {
            order: coeffs.len() - 1,
            coeffs,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeff(&self, k: usize) -> &Rational<C> {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Rational<C>] {
        &self.coeffs
    }

    /// Truncated Cauchy product; the result keeps the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let coeffs = (0..=order)
            .map(|n| {
                (0..=n)
                    .filter(|&k| !self.coeffs[k].is_zero() && !other.coeffs[n - k].is_zero())
                    .map(|k| &self.coeffs[k] * &other.coeffs[n - k])
                    .sum()
            })
            .collect();
        Self { order, coeffs }
    }
}

/// u-expansion of `(a u; q^2)_inf` (or its reciprocal) up to `u^order`.
///
/// Solves `f(u) = (1 - a u) f(q^2 u)` coefficient by coefficient:
/// `c_k = -a q^{2k-2} c_{k-1} / (1 - q^{2k})`, and for the reciprocal
/// `g(u) (1 - a u) = g(q^2 u)` gives `c_k = a c_{k-1} / (1 - q^{2k})`.
pub fn euler_factor_series<C: Coeff>(a: QMonomial, invert: bool, order: usize) -> PowerSeries<C> {
    let a_l: Laurent<C> = a.to_laurent();
    let mut coeffs: Vec<Rational<C>> = Vec::with_capacity(order + 1);
    coeffs.push(Rational::one());
    for k in 1..=order as i64 {
        let prev = &coeffs[(k - 1) as usize];
        let step = if invert {
            a_l.clone()
        } else {
            -a_l.mul_q_pow(2 * k - 2)
        };
        coeffs.push(prev.mul_laurent(&step).div_one_minus_q_pow(2 * k));
    }
    PowerSeries { order, coeffs }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::q_factorial;
    use num_bigint::BigInt;

    type L = Laurent<BigInt>;

    /// Direct truncated expansion of prod_{j<terms} (1 - a q^{2j} u), used as
    /// an independent oracle: the factors with j >= terms do not change the
    /// coefficients of u^k up to the q-degree window we compare.
    fn truncated_product_coeff(a: QMonomial, k: usize, factors: i64) -> L {
        // e_k of the values a q^{2j}, j < factors, times (-1)^k
        let mut poly: Vec<L> = vec![L::one()];
        for j in 0..factors {
            let root = QMonomial {
                exp: a.exp + 2 * j,
                ..a
            }
            .to_laurent::<BigInt>();
            let mut next = vec![L::zero(); poly.len() + 1];
            for (d, c) in poly.iter().enumerate() {
                next[d] = &next[d] + c;
                next[d + 1] = &next[d + 1] - &(c * &root);
            }
            poly = next;
        }
        poly.get(k).cloned().unwrap_or_else(L::zero)
    }

    #[test]
    fn order_zero_is_one() {
        let s = euler_factor_series::<BigInt>(QMonomial::neg_q_pow(5), false, 0);
        assert_eq!(s.coeffs(), &[Rational::one()]);
    }

    #[test]
    fn minus_u_first_coefficient() {
        // (-u; q^2)_inf = 1 + u/(1-q^2) + ...
        let s = euler_factor_series::<BigInt>(QMonomial::neg_q_pow(0), false, 1);
        assert_eq!(s.coeff(0), &Rational::one());
        assert_eq!(s.coeff(1), &Rational::one().div_one_minus_q_pow(2));
    }

    #[test]
    fn inverse_times_series_is_one() {
        for a in [
            QMonomial::neg_q_pow(0),
            QMonomial::q_pow(3),
            QMonomial::neg_q_pow(-2),
        ] {
            let f = euler_factor_series::<BigInt>(a, false, 6);
            let g = euler_factor_series::<BigInt>(a, true, 6);
            assert_eq!(f.mul(&g), PowerSeries::one(6));
        }
    }

    #[test]
    fn denominators_clear_with_q_factorial() {
        let s = euler_factor_series::<BigInt>(QMonomial::neg_q_pow(0), false, 12);
        for k in 0..=12 {
            let cleared = s.coeff(k).mul_laurent(&q_factorial(2, k as i64).unwrap());
            let p = cleared.reduce_to_laurent().unwrap();
            // Euler: coefficient is q^{k(k-1)} / (q^2;q^2)_k
            assert_eq!(p, L::q_pow((k as i64) * (k as i64 - 1)));
        }
    }

    #[test]
    fn agrees_with_truncated_product_in_low_degrees() {
        // Multiplying by (q^2;q^2)_k turns c_k into a polynomial; the finite
        // product over j < J agrees with the infinite one below q^{2J}.
        let a = QMonomial::q_pow(1);
        let s = euler_factor_series::<BigInt>(a, false, 3);
        let window = 20;
        for k in 0..=3 {
            let exact = s.coeff(k).mul_laurent(&q_factorial(2, k as i64).unwrap());
            let exact = exact.reduce_to_laurent().unwrap();
            let approx = truncated_product_coeff(a, k, 30) * q_factorial(2, k as i64).unwrap();
            for e in 0..window {
                assert_eq!(exact.coeff(e), approx.coeff(e), "u^{k}, q^{e}");
            }
        }
    }
}
