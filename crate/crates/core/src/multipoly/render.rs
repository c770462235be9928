use std::fmt;

use super::{MultiPoly, VAR_NAMES};
use crate::exactq::Coeff;

/// Storage indices sorted by variable name, e.g. `[w, x, y, z]` for arity 4.
fn alphabetical<const N: usize>() -> Vec<usize> {
    let names = &VAR_NAMES[..N];
    let mut idx: Vec<usize> = (0..N).collect();
    idx.sort_by_key(|&i| names[i]);
    idx
}

impl<C: Coeff, const N: usize> fmt::Display for MultiPoly<C, N> {
    /// Renders like `w*x*y^2*z - w - x*y + 1`: monomials in descending
    /// lexicographic order over alphabetically sorted variables, coefficients
    /// that are not a single signed power of q wrapped in parentheses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let order = alphabetical::<N>();
        let names = Self::var_names();
        let mut terms: Vec<_> = self.terms().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let ka: Vec<u32> = order.iter().map(|&i| a[i]).collect();
            let kb: Vec<u32> = order.iter().map(|&i| b[i]).collect();
            kb.cmp(&ka)
        });
        for (k, (exp, coeff)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = order
                .iter()
                .filter(|&&i| exp[i] > 0)
                .map(|&i| match exp[i] {
                    1 => names[i].to_string(),
                    e => format!("{}^{e}", names[i]),
                })
                .collect();
            let mono = mono.join("*");
            let (negative, body) = match coeff.terms() {
                [(e, c)] => {
                    let neg = c.is_negative();
                    let mag = c.abs();
                    let qpart = match e {
                        0 => None,
                        1 => Some("q".to_string()),
                        e => Some(format!("q^{e}")),
                    };
                    let body = match (mag.is_one(), qpart, mono.is_empty()) {
                        (true, None, true) => "1".to_string(),
                        (true, None, false) => mono.clone(),
                        (false, None, true) => mag.to_string(),
                        (false, None, false) => format!("{mag}*{mono}"),
                        (true, Some(qp), true) => qp,
                        (true, Some(qp), false) => format!("{qp}*{mono}"),
                        (false, Some(qp), true) => format!("{mag}*{qp}"),
                        (false, Some(qp), false) => format!("{mag}*{qp}*{mono}"),
                    };
                    (neg, body)
                }
                _ if mono.is_empty() => (false, format!("({coeff})")),
                _ => (false, format!("({coeff})*{mono}")),
            };
            match (k, negative) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::MultiPoly;
    use num_bigint::BigInt;

    #[test]
    fn renders_in_descending_alphabetical_order() {
        let p = MultiPoly::<BigInt, 4>::parse("1 - x y - w + w x y^2 z").unwrap();
        assert_eq!(p.to_string(), "w*x*y^2*z - w - x*y + 1");
        let r = MultiPoly::<BigInt, 3>::parse("(1-x)(1-z) + x z (y - 1)").unwrap();
        assert_eq!(r.to_string(), "x*y*z - x - z + 1");
        let c = MultiPoly::<BigInt, 4>::parse("q^2 w - q^3 - 2 q^2 + (1 - q^2) x").unwrap();
        assert_eq!(c.to_string(), "q^2*w + (1 - q^2)*x + (-2*q^2 - q^3)");
    }
}
