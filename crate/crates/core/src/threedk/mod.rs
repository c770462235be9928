//! Matrix elements of the 3D K and the difference equations behind them.

mod difference;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

pub use difference::{e_residual, verify_all_e, verify_e, verify_element_recursion, Label};

use crate::error::{Error, Result};
use crate::exactq::{q_factorial, q_symbol_product, QProduct};
use crate::qfamily::{phi_bc, phi_k, QFamily};
use crate::report::{Failure, VerificationReport};
use crate::LaurentQ;

/// Output occupations `(a,b,c,d)` and input occupations `(i,j,k,l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KElementKey {
    pub out: [u32; 4],
    pub inp: [u32; 4],
}

/// The two conserved weights `(a+b+c, b+2c+d)` of a state.
pub fn k_weights(s: [u32; 4]) -> (u32, u32) {
    (s[0] + s[1] + s[2], s[1] + 2 * s[2] + s[3])
}

impl KElementKey {
    pub fn new(out: [u32; 4], inp: [u32; 4]) -> Self {
        Self { out, inp }
    }

    pub fn conserves_weight(&self) -> bool {
        k_weights(self.out) == k_weights(self.inp)
    }

    pub fn transposed(&self) -> Self {
        Self::new(self.inp, self.out)
    }

    /// Parity of the q-exponents of a nonzero element.
    pub fn parity(&self) -> i64 {
        let [_, b, _, d] = self.out.map(i64::from);
        let [_, j, _, l] = self.inp.map(i64::from);
        (b * d + j * l).rem_euclid(2)
    }
}

impl fmt::Display for KElementKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.out;
        let [i, j, k, l] = self.inp;
        write!(f, "K^{{{a},{b},{c},{d}}}_{{{i},{j},{k},{l}}}")
    }
}

/// The two equivalent formulas for a matrix element of K.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KRoute {
    /// Uses Q_{b,c} evaluated at the input occupations.
    Primary,
    /// Uses Q_{j,k} evaluated at the output occupations.
    Dual,
}

impl KRoute {
    pub const BOTH: [KRoute; 2] = [KRoute::Primary, KRoute::Dual];
}

impl FromStr for KRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "primary" => Ok(KRoute::Primary),
            "dual" => Ok(KRoute::Dual),
            _ => Err(Error::Domain(format!("unknown K route {s:?}"))),
        }
    }
}

impl fmt::Display for KRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            KRoute::Primary => "primary",
            KRoute::Dual => "dual",
        })
    }
}

fn q2q4_ratio(
    uppers2: &[i64],
    lowers2: &[i64],
    uppers4: &[i64],
    lowers4: &[i64],
) -> Result<Option<QProduct>> {
    let p2 = q_symbol_product(uppers2, lowers2, 2)?;
    let p4 = q_symbol_product(uppers4, lowers4, 4)?;
    Ok(p2.zip(p4).map(|(a, b)| a.mul(&b)))
}

fn via_primary(fam: &QFamily, key: &KElementKey) -> Result<LaurentQ> {
    let out = key.out.map(i64::from);
    let inp = key.inp.map(i64::from);
    let [_, b, c, _] = out;
    let [i, j, k, l] = inp;
    let q = fam.get(b, c);
    let value = q.evaluate_at_q_powers([4 * i, 2 * j, 4 * k, 2 * l]);
    let den = q_factorial::<num_bigint::BigInt>(2, b)? * q_factorial(4, c)?;
    Ok(value
        .div_exact(&den)?
        .mul_q_pow(phi_k(out, inp) - phi_bc(b, c)))
}

fn via_dual(fam: &QFamily, key: &KElementKey) -> Result<LaurentQ> {
    let out = key.out.map(i64::from);
    let inp = key.inp.map(i64::from);
    let [a, b, c, d] = out;
    let [i, j, k, l] = inp;
    let q = fam.get(j, k);
    let value = q.evaluate_at_q_powers([4 * a, 2 * b, 4 * c, 2 * d]);
    let Some(ratio) = q2q4_ratio(&[l], &[b, d], &[i], &[a, c])? else {
        return Ok(LaurentQ::zero());
    };
    let scaled = ratio.to_rational().mul_laurent(&value);
    Ok(scaled
        .reduce_to_laurent()?
        .mul_q_pow(phi_k(out, inp) - phi_bc(j, k)))
}

fn route_value(fam: &QFamily, key: &KElementKey, route: KRoute) -> Result<LaurentQ> {
    if !key.conserves_weight() {
        return Ok(LaurentQ::zero());
    }
    let v = match route {
        KRoute::Primary => via_primary(fam, key)?,
        KRoute::Dual => via_dual(fam, key)?,
    };
    let eta = key.parity();
    if v.min_exp().is_some_and(|e| e < 0) || !v.has_parity(eta) {
        return Err(Error::Verification(format!(
            "{key} via {route} is {v}, not in q^{eta} Z[q^2]"
        )));
    }
    Ok(v)
}

/// A matrix element through the chosen routes; several routes must agree.
pub fn k_element(fam: &QFamily, key: &KElementKey, routes: &[KRoute]) -> Result<LaurentQ> {
    let mut value: Option<(KRoute, LaurentQ)> = None;
    for &route in routes {
        let v = route_value(fam, key, route)?;
        if let Some((first, prev)) = &value {
            if *prev != v {
                return Err(Error::Verification(format!(
                    "{key}: route {first} gives {prev} but {route} gives {v}"
                )));
            }
        } else {
            value = Some((route, v));
        }
    }
    value
        .map(|(_, v)| v)
        .ok_or_else(|| Error::Domain("no route selected".into()))
}

/// States with weights `(m, n)`, lexicographically ascending.
pub fn block_states(m: u32, n: u32) -> Vec<[u32; 4]> {
    let mut out = Vec::new();
    for a in 0..=m {
        for b in 0..=m - a {
            let c = m - a - b;
            if let Some(d) = n.checked_sub(b + 2 * c) {
                out.push([a, b, c, d]);
            }
        }
    }
    out.sort();
    out
}

/// Nonzero outputs of K applied to `|i,j,k,l>`, memoized process-wide.
pub fn k_column(inp: [u32; 4]) -> Arc<Vec<([u32; 4], LaurentQ)>> {
    type Column = Arc<Vec<([u32; 4], LaurentQ)>>;
    static CACHE: OnceLock<RwLock<HashMap<[u32; 4], Column>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(col) = cache.read().get(&inp) {
        return col.clone();
    }
    let (m, n) = k_weights(inp);
    let fam = QFamily::shared();
    let col: Vec<_> = block_states(m, n)
        .into_iter()
        .filter_map(|out| {
            let v = k_element(fam, &KElementKey::new(out, inp), &[KRoute::Primary])
                .expect("K element is exact");
            (!v.is_zero()).then_some((out, v))
        })
        .collect();
    cache
        .write()
        .entry(inp)
        .or_insert_with(|| Arc::new(col))
        .clone()
}

/// Block states and the matrix `rows[out][in]` on them.
pub type KBlock = (Vec<[u32; 4]>, Vec<Vec<LaurentQ>>);

/// Matrix of K on one weight block.
pub fn k_block(fam: &QFamily, m: u32, n: u32, routes: &[KRoute]) -> Result<KBlock> {
    let states = block_states(m, n);
    let mut rows = Vec::with_capacity(states.len());
    for out in &states {
        let mut row = Vec::with_capacity(states.len());
        for inp in &states {
            row.push(k_element(fam, &KElementKey::new(*out, *inp), routes)?);
        }
        rows.push(row);
    }
    Ok((states, rows))
}

/// The binomial transpose identity between an element and its transpose,
/// compared after clearing all q-factorial denominators.
pub fn check_transpose(fam: &QFamily, key: &KElementKey) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("transpose {key}"));
    let forward = k_element(fam, key, &[KRoute::Primary]);
    let backward = k_element(fam, &key.transposed(), &[KRoute::Primary]);
    let (forward, backward) = match (forward, backward) {
        (Ok(f), Ok(b)) => (f, b),
        (Err(e), _) | (_, Err(e)) => {
            rep.record_error(key.to_string(), e);
            return rep;
        }
    };
    let [a, b, c, d] = key.out.map(i64::from);
    let [i, j, k, l] = key.inp.map(i64::from);
    let fac = |base: i64, n: i64| {
        q_factorial::<num_bigint::BigInt>(base, n).expect("occupations are nonnegative")
    };
    let lhs = forward * fac(2, b) * fac(2, d) * fac(4, a) * fac(4, c);
    let rhs = backward * fac(2, j) * fac(2, l) * fac(4, i) * fac(4, k);
    rep.record(lhs == rhs, || Failure {
        location: key.to_string(),
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    });
    rep
}

/// Agreement of both formulas on every key of every block with
/// `m <= max_m`, `n <= max_n`.
pub fn verify_routes(fam: &QFamily, max_m: u32, max_n: u32) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("K routes m<={max_m}, n<={max_n}"));
    for m in 0..=max_m {
        for n in 0..=max_n {
            let states = block_states(m, n);
            for inp in &states {
                for out in &states {
                    let key = KElementKey::new(*out, *inp);
                    match k_element(fam, &key, &KRoute::BOTH) {
                        Ok(_) => rep.pass(),
                        Err(e) => rep.record_error(key.to_string(), e),
                    }
                }
            }
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_and_weight_mismatch() {
        let fam = QFamily::new();
        let v = k_element(&fam, &KElementKey::new([0; 4], [0; 4]), &KRoute::BOTH).unwrap();
        assert!(v.is_one());
        let z = k_element(&fam, &KElementKey::new([1, 0, 0, 0], [0; 4]), &KRoute::BOTH).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn blocks_enumerate_both_weights() {
        for m in 0..4 {
            for n in 0..6 {
                for s in block_states(m, n) {
                    assert_eq!(k_weights(s), (m, n));
                }
            }
        }
        assert_eq!(block_states(1, 1), vec![[0, 1, 0, 0], [1, 0, 0, 1]]);
    }
}
