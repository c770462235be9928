//! The polynomial family Q_{b,c}(x,y,z,w) behind the matrix elements of K.

mod closed_form;
mod exponents;
mod props;
mod recursion;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

pub use closed_form::{
    closed_form_q, coeff_a, coeff_c, coeff_c_rational, coeff_c_special, conjecture_report,
    in_support, support_set, xi_product, xi_term, ConjectureCheck, Quad,
};
pub use exponents::{phi_bc, phi_c, phi_k, phi_q, psi};
pub use props::{check_specializations, check_structure, check_up_to};
pub use recursion::{dual_step_b, dual_step_c, step_b, step_c};

use crate::error::{Error, Result};
use crate::QPoly;

/// Index pair `(b, c)` of a family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QIndex {
    pub b: u32,
    pub c: u32,
}

impl QIndex {
    pub fn new(b: u32, c: u32) -> Self {
        Self { b, c }
    }

    /// `None` for negative indices, whose member is the zero polynomial.
    pub fn checked(b: i64, c: i64) -> Option<Self> {
        Some(Self {
            b: u32::try_from(b).ok()?,
            c: u32::try_from(c).ok()?,
        })
    }
}

impl fmt::Display for QIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q_{{{},{}}}", self.b, self.c)
    }
}

/// Memoized family. Concurrent fills of the same key compute the same value,
/// so whichever insert lands first wins and the other is dropped.
#[derive(Default)]
pub struct QFamily {
    cache: RwLock<HashMap<QIndex, Arc<QPoly>>>,
}

impl QFamily {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide instance used by the matrix element formulas.
    pub fn shared() -> &'static QFamily {
        static SHARED: OnceLock<QFamily> = OnceLock::new();
        SHARED.get_or_init(QFamily::new)
    }

    /// Q_{b,c}, with the zero polynomial for negative indices.
    pub fn get(&self, b: i64, c: i64) -> Arc<QPoly> {
        match QIndex::checked(b, c) {
            Some(idx) => self.compute_q(idx),
            None => Arc::new(QPoly::zero()),
        }
    }

    /// Reduces `c` to zero first, then `b`, starting from Q_{0,0} = 1.
    pub fn compute_q(&self, idx: QIndex) -> Arc<QPoly> {
        if let Some(p) = self.cache.read().get(&idx) {
            return p.clone();
        }
        let (b, c) = (idx.b as i64, idx.c as i64);
        let value = if idx.c > 0 {
            step_c(&self.compute_q(QIndex::new(idx.b, idx.c - 1)), b, c)
        } else if idx.b > 0 {
            step_b(&self.compute_q(QIndex::new(idx.b - 1, 0)), b, c)
        } else {
            QPoly::one()
        };
        self.cache
            .write()
            .entry(idx)
            .or_insert_with(|| Arc::new(value))
            .clone()
    }

    /// Same member through the other order: `b` first, then `c`. Not cached.
    pub fn compute_q_alternate(&self, idx: QIndex) -> QPoly {
        let mut p = QPoly::one();
        for c in 1..=idx.c as i64 {
            p = step_c(&p, 0, c);
        }
        for b in 1..=idx.b as i64 {
            p = step_b(&p, b, idx.c as i64);
        }
        p
    }

    /// The dual member in `p = q^{-1}`, checked against the primary route.
    pub fn compute_q_dual(&self, idx: QIndex) -> Result<QPoly> {
        let mut p = QPoly::one();
        for c in 1..=idx.c as i64 {
            p = dual_step_c(&p, 0, c);
        }
        for b in 1..=idx.b as i64 {
            p = dual_step_b(&p, b, idx.c as i64);
        }
        let expected = self
            .compute_q(idx)
            .invert_q()
            .mul_q_pow(phi_bc(idx.b as i64, idx.c as i64));
        if p != expected {
            return Err(Error::Verification(format!(
                "dual recursion disagrees with {idx}"
            )));
        }
        Ok(p)
    }

    pub fn insert(&self, idx: QIndex, poly: QPoly) {
        self.cache.write().insert(idx, Arc::new(poly));
    }

    pub fn cached(&self) -> Vec<(QIndex, Arc<QPoly>)> {
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

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_indices_give_zero() {
        let fam = QFamily::new();
        assert!(fam.get(-1, 2).is_zero());
        assert!(fam.get(3, -1).is_zero());
        assert_eq!(*fam.get(0, 0), QPoly::one());
    }

    #[test]
    fn dual_of_first_member_is_q_free() {
        let fam = QFamily::new();
        let d = fam.compute_q_dual(QIndex::new(1, 0)).unwrap();
        assert_eq!(d, QPoly::parse("w x y^2 z - w - x y + 1").unwrap());
    }

    #[test]
    fn routes_agree_on_small_members() {
        let fam = QFamily::new();
        for b in 0..3 {
            for c in 0..3 {
                let idx = QIndex::new(b, c);
                assert_eq!(*fam.compute_q(idx), fam.compute_q_alternate(idx), "{idx}");
                fam.compute_q_dual(idx).unwrap();
                assert_eq!(
                    *fam.compute_q(idx),
                    closed_form_q(b as i64, c as i64).unwrap(),
                    "{idx}"
                );
            }
        }
    }
}
