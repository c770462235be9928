//! The 3D R: the polynomials P_b(x,y,z), their difference equations and the
//! matrix elements built from them.

mod element;
mod relations;

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

pub use element::{
    r_block, r_column, r_element, r_squared_report, verify_generating_series, verify_routes,
    RBlock, RElementKey, RRoute,
};
pub use relations::{check_relations_with, verify_mirror_pairs, verify_p_relations, PRelation};

use crate::exactq::{q_factorial, q_pochhammer, QMonomial};
use crate::multipoly::{X, Y, Z};
use crate::{LaurentQ, PPoly};

/// One step of the primary recursion: P_{b+1} from P_b.
pub fn step_p(prev: &PPoly, b: i64) -> PPoly {
    let x = PPoly::var(X);
    let yz = PPoly::var(Y) * PPoly::var(Z);
    let first = (PPoly::one() - PPoly::var(Z)) * prev.shift_substitute(Z, -2);
    let second = x.mul_q_pow(-2 * b) * (PPoly::one() - yz.mul_q_pow(-2 * b)) * prev;
    first - second
}

/// Memoized P_b, shared across threads like the Q family.
#[derive(Default)]
pub struct PFamily {
    cache: RwLock<HashMap<u32, Arc<PPoly>>>,
}

impl PFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn shared() -> &'static PFamily {
        static SHARED: OnceLock<PFamily> = OnceLock::new();
        SHARED.get_or_init(PFamily::new)
    }

    /// P_b, with the zero polynomial for negative `b`.
    pub fn get(&self, b: i64) -> Arc<PPoly> {
        match u32::try_from(b) {
            Ok(b) => self.compute_p(b),
            Err(_) => Arc::new(PPoly::zero()),
        }
    }

    pub fn compute_p(&self, b: u32) -> Arc<PPoly> {
        if let Some(p) = self.cache.read().get(&b) {
            return p.clone();
        }
        // Walk up from the largest cached index below b.
        let (mut k, mut p) = {
            let cache = self.cache.read();
            (0..b)
                .rev()
                .find_map(|k| cache.get(&k).map(|p| (k, (**p).clone())))
                .unwrap_or((0, PPoly::one()))
        };
        self.cache
            .write()
            .entry(k)
            .or_insert_with(|| Arc::new(p.clone()));
        while k < b {
            p = step_p(&p, k as i64);
            k += 1;
            self.cache
                .write()
                .entry(k)
                .or_insert_with(|| Arc::new(p.clone()));
        }
        self.cache.read()[&b].clone()
    }

    pub fn insert(&self, b: u32, poly: PPoly) {
        self.cache.write().insert(b, Arc::new(poly));
    }

    pub fn cached(&self) -> Vec<(u32, Arc<PPoly>)> {
        let mut out: Vec<_> = self
            .cache
            .read()
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        out.sort_by_key(|(k, _)| *k);
        out
    }

    pub fn clear(&self) {
        self.cache.write().clear();
    }
}

/// `prod_{j<n} (1 - q^{e0 + 2j} m)` for a monomial `m` in x,y,z.
fn poch_poly(e0: i64, m: &PPoly, n: i64) -> PPoly {
    (0..n).fold(PPoly::one(), |acc, j| {
        acc * (PPoly::one() - m.mul_q_pow(e0 + 2 * j))
    })
}

/// P_b from the terminating basic hypergeometric series.
pub fn hypergeometric_p(b: u32) -> PPoly {
    let b = b as i64;
    let z = PPoly::var(Z);
    let yz = PPoly::var(Y) * &z;
    let x = PPoly::var(X);
    let mut out = PPoly::zero();
    for n in 0..=b {
        // (q^{-2b};q^2)_n / (q^2;q^2)_n is a Laurent polynomial.
        let num: LaurentQ = q_pochhammer(QMonomial::q_pow(-2 * b), 2, n).expect("n is nonnegative");
        let ratio = num
            .div_exact(&q_factorial(2, n).expect("n is nonnegative"))
            .expect("q-binomial ratio is exact");
        // (q^{2-2b} z;q^2)_b / (q^{2-2b} z;q^2)_n
        let tail = poch_poly(2 - 2 * b + 2 * n, &z, b - n);
        let term = poch_poly(2 - 2 * b, &yz, n) * tail * x.pow(n as u32).mul_q_pow(2 * n);
        out = out + term.scale(&ratio);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_members() {
        let fam = PFamily::new();
        assert_eq!(*fam.compute_p(0), PPoly::one());
        assert_eq!(
            *fam.compute_p(1),
            PPoly::parse("(1-x)(1-z) + x z (y-1)").unwrap()
        );
        assert!(fam.get(-1).is_zero());
    }

    #[test]
    fn series_form_matches_recursion() {
        let fam = PFamily::new();
        for b in 0..5 {
            assert_eq!(hypergeometric_p(b), *fam.compute_p(b), "b={b}");
        }
    }

    #[test]
    fn cache_fills_out_of_order() {
        let fam = PFamily::new();
        let p3 = fam.compute_p(3);
        let p5 = fam.compute_p(5);
        let fresh = PFamily::new();
        assert_eq!(*fresh.compute_p(5), *p5);
        assert_eq!(*fresh.compute_p(3), *p3);
    }
}
