//! Explicit coefficients of Q_{b,c}: the support set, the triple sums C and
//! their normalized companions A.

use num_bigint::BigInt;

use super::exponents::{phi_bc, phi_c, phi_q, psi};
use crate::error::{Error, Result};
use crate::exactq::{q_symbol_product, QProduct};
use crate::{LaurentQ, QPoly, RationalQ};

/// Exponent quadruple `(r, s, t, u)` of a monomial `x^r y^s z^t w^u`.
pub type Quad = [i64; 4];

/// Whether `(r,s,t,u)` lies in the support set of Q_{b,c}.
pub fn in_support(b: i64, c: i64, quad: Quad) -> bool {
    let [r, s, t, u] = quad;
    r >= 0
        && s >= 0
        && t >= 0
        && u >= 0
        && u - t >= 0
        && 2 * r - s >= 0
        && b - s + 2 * t - u >= 0
        && c - r + s - t >= 0
}

/// All quadruples of the support set, lexicographically ordered.
pub fn support_set(b: i64, c: i64) -> Vec<Quad> {
    let mut out = Vec::new();
    if b < 0 || c < 0 {
        return out;
    }
    for r in 0..=b + c {
        for s in 0..=2 * r {
            for u in 0..=b + 2 * c {
                for t in 0..=u {
                    if in_support(b, c, [r, s, t, u]) {
                        out.push([r, s, t, u]);
                    }
                }
            }
        }
    }
    out
}

fn product(uppers: &[i64], lowers: &[i64], base: i64) -> Result<Option<QProduct>> {
    q_symbol_product(uppers, lowers, base)
}

fn join(a: Option<QProduct>, b: Option<QProduct>) -> Option<QProduct> {
    Some(a?.mul(&b?))
}

/// The summand Ξ as a product of q-factorials, `None` when it vanishes.
pub fn xi_product(b: i64, c: i64, quad: Quad, abg: [i64; 3]) -> Result<Option<QProduct>> {
    let [r, s, t, u] = quad;
    let [alpha, beta, gamma] = abg;
    let lowers2 = [
        alpha,
        beta,
        gamma,
        u - t - alpha,
        t - beta,
        b - s - alpha + beta,
        s - beta - gamma,
    ];
    let lowers4 = [c - r + gamma];
    // Negative lower entries kill the term; the upper entries are then safe.
    if lowers2.iter().chain(&lowers4).any(|&l| l < 0) {
        return Ok(None);
    }
    let p2 = product(&[b - s + t - alpha, 2 * r - s + beta], &lowers2, 2)?;
    let p4 = product(&[c + s - r - beta, c + gamma], &lowers4, 4)?;
    Ok(join(p2, p4))
}

/// The summand Ξ as an exact rational function.
pub fn xi_term(b: i64, c: i64, quad: Quad, abg: [i64; 3]) -> Result<RationalQ> {
    Ok(match xi_product(b, c, quad, abg)? {
        Some(p) => p.to_rational(),
        None => RationalQ::zero(),
    })
}

/// C^{b,c}_{r,s,t,u} reduced to a Laurent polynomial. Fails loudly if the
/// triple sum does not collapse to a polynomial.
pub fn coeff_c(b: i64, c: i64, quad: Quad) -> Result<LaurentQ> {
    coeff_c_rational(b, c, quad)?.reduce_to_laurent()
}

/// C^{b,c}_{r,s,t,u} before the final exact division.
pub fn coeff_c_rational(b: i64, c: i64, quad: Quad) -> Result<RationalQ> {
    if !in_support(b, c, quad) {
        return Err(Error::Domain(format!(
            "({quad:?}) is outside the support of Q_{{{b},{c}}}"
        )));
    }
    let [r, s, t, u] = quad;
    let mut sum = RationalQ::zero();
    for alpha in 0..=u - t {
        for beta in 0..=t {
            for gamma in 0..=s {
                if let Some(mut p) = xi_product(b, c, quad, [alpha, beta, gamma])? {
                    let sign = (beta + gamma) % 2 == 1;
                    p = p.mul(&QProduct::signed_q_pow(
                        sign,
                        phi_c(alpha, beta, gamma, b, r, t),
                    ));
                    sum = sum + p.to_rational();
                }
            }
        }
    }
    let Some(mut pre) = join(
        product(&[b, u - t], &[b + 2 * t - s - u, 2 * r - s], 2)?,
        product(&[], &[r, u - t, c - r + s - t], 4)?,
    ) else {
        return Ok(RationalQ::zero());
    };
    pre = pre.mul(&QProduct::signed_q_pow(s % 2 == 1, psi(r, s)));
    Ok(sum.mul_product(&pre))
}

/// Multinomial prefactor linking C to A.
fn c_over_a(b: i64, c: i64, quad: Quad) -> Result<Option<QProduct>> {
    let [r, s, t, u] = quad;
    Ok(join(
        product(&[b], &[s, t, b - s + 2 * t - u, 2 * r - s], 2)?,
        product(&[c], &[u - t, c - r + s - t], 4)?,
    ))
}

/// A^{b,c}_{r,s,t,u}, zero outside the support set.
pub fn coeff_a(b: i64, c: i64, quad: Quad) -> Result<RationalQ> {
    if b < 0 || c < 0 || !in_support(b, c, quad) {
        return Ok(RationalQ::zero());
    }
    let cr = coeff_c_rational(b, c, quad)?;
    match c_over_a(b, c, quad)? {
        Some(p) => Ok(cr.mul_product(&p.recip())),
        None => Err(Error::Domain(format!("vanishing prefactor at {quad:?}"))),
    }
}

/// Simplified C when one of the indices vanishes; `None` unless `b == 0` or
/// `c == 0`.
pub fn coeff_c_special(b: i64, c: i64, quad: Quad) -> Result<Option<RationalQ>> {
    let [r, s, t, u] = quad;
    let p = if c == 0 {
        join(
            product(&[b], &[u, b + 2 * t - s - u, 2 * r - s], 2)?,
            product(&[u], &[t, u - t, s - r - t], 4)?,
        )
    } else if b == 0 {
        join(
            product(&[2 * r], &[s, 2 * t - s - u, 2 * r - s], 2)?,
            product(&[c], &[r, u - t, c - r + s - t], 4)?,
        )
    } else {
        return Ok(None);
    };
    Ok(Some(
        p.map(|p| p.to_rational()).unwrap_or_else(RationalQ::zero),
    ))
}

/// Q_{b,c} assembled monomial by monomial from the coefficients C.
pub fn closed_form_q(b: i64, c: i64) -> Result<QPoly> {
    let base = phi_bc(b, c);
    let mut terms = Vec::new();
    for quad in support_set(b, c) {
        let [r, s, t, u] = quad;
        let coeff = coeff_c(b, c, quad)?;
        let mut coeff = coeff.mul_q_pow(base + phi_q(b, c, r, s, t, u) - psi(r, s));
        if (r + u) % 2 == 1 {
            coeff = -coeff;
        }
        terms.push(([r as u32, s as u32, t as u32, u as u32], coeff));
    }
    Ok(QPoly::from_terms(terms))
}

/// Per-quadruple outcome of the polynomiality conjecture for C.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureCheck {
    pub b: i64,
    pub c: i64,
    pub quad: Quad,
    pub polynomial: bool,
    pub even_nonnegative: bool,
    pub constant_term_one: bool,
}

impl ConjectureCheck {
    pub fn holds(&self) -> bool {
        self.polynomial && self.even_nonnegative && self.constant_term_one
    }
}

/// Tests "C lies in Z[q^2] with constant term 1" over every support point
/// with `b + c <= max_bc`.
pub fn conjecture_report(max_bc: i64) -> Result<Vec<ConjectureCheck>> {
    let mut out = Vec::new();
    for b in 0..=max_bc {
        for c in 0..=max_bc - b {
            for quad in support_set(b, c) {
                let check = match coeff_c(b, c, quad) {
                    Ok(l) => ConjectureCheck {
                        b,
                        c,
                        quad,
                        polynomial: true,
                        even_nonnegative: l.iter().all(|(e, _)| e >= 0 && e % 2 == 0),
                        constant_term_one: l.coeff(0) == BigInt::from(1),
                    },
                    Err(Error::InexactDivision(_)) => ConjectureCheck {
                        b,
                        c,
                        quad,
                        polynomial: false,
                        even_nonnegative: false,
                        constant_term_one: false,
                    },
                    Err(e) => return Err(e),
                };
                out.push(check);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn support_is_finite_and_bounded() {
        for b in 0..4 {
            for c in 0..4 {
                for [r, s, t, u] in support_set(b, c) {
                    assert!(2 * r >= s && r <= b + c);
                    assert!(t <= u && u <= b + 2 * c);
                }
            }
        }
        assert_eq!(support_set(0, 0), vec![[0, 0, 0, 0]]);
    }

    #[test]
    fn closed_form_reproduces_first_member() {
        let q10 = closed_form_q(1, 0).unwrap();
        assert_eq!(q10, QPoly::parse("w x y^2 z - w - x y + 1").unwrap());
    }

    #[test]
    fn out_of_support_is_an_error_for_c_and_zero_for_a() {
        assert!(coeff_c(1, 0, [0, 1, 0, 0]).is_err());
        assert!(coeff_a(1, 0, [0, 1, 0, 0]).unwrap().is_zero());
        assert!(coeff_a(-1, 0, [0, 0, 0, 0]).unwrap().is_zero());
    }
}
