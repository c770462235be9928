use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

use super::PFamily;
use crate::error::{Error, Result};
use crate::exactq::{euler_factor_series, q_factorial, q_symbol_product, QMonomial};
use crate::report::VerificationReport;
use crate::{LaurentQ, PowerSeriesU, RationalQ};

/// Output occupations `(a,b,c)` and input occupations `(i,j,k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RElementKey {
    pub out: [u32; 3],
    pub inp: [u32; 3],
}

impl RElementKey {
    pub fn new(out: [u32; 3], inp: [u32; 3]) -> Self {
        Self { out, inp }
    }

    pub fn conserves_weight(&self) -> bool {
        let [a, b, c] = self.out;
        let [i, j, k] = self.inp;
        a + b == i + j && b + c == j + k
    }

    fn ints(&self) -> ([i64; 3], [i64; 3]) {
        (self.out.map(i64::from), self.inp.map(i64::from))
    }
}

impl fmt::Display for RElementKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.out;
        let [i, j, k] = self.inp;
        write!(f, "R^{{{a},{b},{c}}}_{{{i},{j},{k}}}")
    }
}

/// Independent formulas for a matrix element of R.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RRoute {
    /// Specialization of P_b divided by (q^2;q^2)_b.
    Poly,
    /// Finite double sum over lambda + mu = b.
    DoubleSum,
    /// Coefficient extraction from the product of four Euler factors.
    Series,
}

impl RRoute {
    pub const ALL: [RRoute; 3] = [RRoute::Poly, RRoute::DoubleSum, RRoute::Series];
}

impl FromStr for RRoute {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "poly" => Ok(RRoute::Poly),
            "doublesum" => Ok(RRoute::DoubleSum),
            "series" => Ok(RRoute::Series),
            _ => Err(Error::Domain(format!("unknown R route {s:?}"))),
        }
    }
}

impl fmt::Display for RRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RRoute::Poly => "poly",
            RRoute::DoubleSum => "doublesum",
            RRoute::Series => "series",
        })
    }
}

fn via_poly(fam: &PFamily, key: &RElementKey) -> Result<LaurentQ> {
    let ([a, b, c], [i, j, k]) = key.ints();
    let p = fam.get(b);
    let value = p.evaluate_at_q_powers([2 * i, 2 * j, 2 * k]);
    Ok(value
        .div_exact(&q_factorial(2, b)?)?
        .mul_q_pow((a - j) * (c - j)))
}

fn via_double_sum(key: &RElementKey) -> Result<LaurentQ> {
    let ([a, b, c], [i, _, k]) = key.ints();
    let mut total = RationalQ::zero();
    for lambda in 0..=b {
        let mu = b - lambda;
        let Some(binoms) = q_symbol_product(&[lambda + a], &[lambda, a], 2)?
            .zip(q_symbol_product(&[i], &[mu, i - mu], 2)?)
            .map(|(l, r)| l.mul(&r))
        else {
            continue;
        };
        let exp = i * k + b + lambda * (c - a) + mu * (mu - i - k - 1);
        let sign = crate::exactq::QProduct::signed_q_pow(lambda % 2 == 1, exp);
        total = total + binoms.mul(&sign).to_rational();
    }
    total.reduce_to_laurent()
}

fn via_series(key: &RElementKey) -> Result<LaurentQ> {
    let ([a, b, c], [i, _, k]) = key.ints();
    let order = b as usize;
    let factors = [
        (QMonomial::neg_q_pow(2 + a + c), false),
        (QMonomial::neg_q_pow(-i - k), false),
        (QMonomial::neg_q_pow(a - c), true),
        (QMonomial::neg_q_pow(c - a), true),
    ];
    let series = factors
        .iter()
        .map(|&(m, inv)| euler_factor_series(m, inv, order))
        .fold(PowerSeriesU::one(order), |acc, s| acc.mul(&s));
    Ok(series
        .coeff(order)
        .reduce_to_laurent()?
        .mul_q_pow(i * k + b))
}

fn route_value(fam: &PFamily, key: &RElementKey, route: RRoute) -> Result<LaurentQ> {
    if !key.conserves_weight() {
        return Ok(LaurentQ::zero());
    }
    match route {
        RRoute::Poly => via_poly(fam, key),
        RRoute::DoubleSum => via_double_sum(key),
        RRoute::Series => via_series(key),
    }
}

/// A matrix element through the chosen routes; with several routes the
/// results must agree and the common value is returned.
pub fn r_element(fam: &PFamily, key: &RElementKey, routes: &[RRoute]) -> Result<LaurentQ> {
    let mut value: Option<(RRoute, LaurentQ)> = None;
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

/// States `(a,b,c)` with `a+b = m`, `b+c = n`, lexicographically ascending.
pub fn block_states(m: u32, n: u32) -> Vec<[u32; 3]> {
    let mut out: Vec<[u32; 3]> = (0..=m.min(n)).map(|b| [m - b, b, n - b]).collect();
    out.sort();
    out
}

/// Nonzero outputs of R applied to `|i,j,k>`, memoized process-wide.
pub fn r_column(inp: [u32; 3]) -> Arc<Vec<([u32; 3], LaurentQ)>> {
    type Column = Arc<Vec<([u32; 3], LaurentQ)>>;
    static CACHE: OnceLock<RwLock<HashMap<[u32; 3], Column>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(col) = cache.read().get(&inp) {
        return col.clone();
    }
    let [i, j, k] = inp;
    let fam = PFamily::shared();
    let col: Vec<_> = block_states(i + j, j + k)
        .into_iter()
        .filter_map(|out| {
            let v = r_element(fam, &RElementKey::new(out, inp), &[RRoute::Poly])
                .expect("R element is exact");
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
pub type RBlock = (Vec<[u32; 3]>, Vec<Vec<LaurentQ>>);

/// Matrix of R on one weight block.
pub fn r_block(fam: &PFamily, m: u32, n: u32) -> Result<RBlock> {
    let states = block_states(m, n);
    let mut rows = Vec::with_capacity(states.len());
    for out in &states {
        let mut row = Vec::with_capacity(states.len());
        for inp in &states {
            row.push(r_element(
                fam,
                &RElementKey::new(*out, *inp),
                &[RRoute::Poly],
            )?);
        }
        rows.push(row);
    }
    Ok((states, rows))
}

/// R squares to the identity on every block with `m, n <= max`.
pub fn r_squared_report(fam: &PFamily, max: u32) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new(format!("R^2 = 1 on blocks m,n<={max}"));
    for m in 0..=max {
        for n in 0..=max {
            let (states, rows) = r_block(fam, m, n)?;
            let dim = states.len();
            for r in 0..dim {
                for c in 0..dim {
                    let entry: LaurentQ = (0..dim).map(|t| &rows[r][t] * &rows[t][c]).sum();
                    let expected = if r == c {
                        LaurentQ::one()
                    } else {
                        LaurentQ::zero()
                    };
                    rep.record_eq(
                        || format!("block ({m},{n}) entry {:?} <- {:?}", states[r], states[c]),
                        &entry,
                        &expected,
                    );
                }
            }
        }
    }
    Ok(rep)
}

/// All three routes agree on every key with `i+j <= max_ij`, `j+k <= max_jk`.
pub fn verify_routes(fam: &PFamily, max_ij: u32, max_jk: u32) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("R routes i+j<={max_ij}, j+k<={max_jk}"));
    for m in 0..=max_ij {
        for n in 0..=max_jk {
            let states = block_states(m, n);
            for inp in &states {
                for out in &states {
                    let key = RElementKey::new(*out, *inp);
                    match r_element(fam, &key, &RRoute::ALL) {
                        Ok(_) => rep.pass(),
                        Err(e) => rep.record_error(key.to_string(), e),
                    }
                }
            }
        }
    }
    rep
}

/// Compares the generating series of P_b at `x = q^{2i}, y = q^{2j},
/// z = q^{2k}` with the product of four Euler factors up to `u^order`.
pub fn verify_generating_series(
    fam: &PFamily,
    i: i64,
    j: i64,
    k: i64,
    order: usize,
) -> Result<VerificationReport> {
    let mut rep =
        VerificationReport::new(format!("generating series at ({i},{j},{k}) to u^{order}"));
    let factors = [
        (QMonomial::neg_q_pow(2 * (i + j + k)), false),
        (QMonomial::neg_q_pow(0), false),
        (QMonomial::neg_q_pow(2 * i), true),
        (QMonomial::neg_q_pow(2 * k), true),
    ];
    let product = factors
        .iter()
        .map(|&(m, inv)| euler_factor_series(m, inv, order))
        .fold(PowerSeriesU::one(order), |acc, s| acc.mul(&s));
    for b in 0..=order as i64 {
        let p = fam.get(b);
        let num = p
            .evaluate_at_q_powers([2 * i, 2 * b - 2 + 2 * j, 2 * k])
            .mul_q_pow(b * (b - 1));
        let lhs = RationalQ::new(num, q_factorial(2, b)?)?;
        let rhs = product.coeff(b as usize);
        rep.record_eq(|| format!("u^{b}"), &lhs, rhs);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(out: [u32; 3], inp: [u32; 3]) -> RElementKey {
        RElementKey::new(out, inp)
    }

    #[test]
    fn normalization_and_small_values() {
        let fam = PFamily::new();
        let all = &RRoute::ALL;
        assert!(r_element(&fam, &key([0, 0, 0], [0, 0, 0]), all)
            .unwrap()
            .is_one());
        assert!(r_element(&fam, &key([1, 0, 1], [0, 1, 0]), all)
            .unwrap()
            .is_one());
        assert_eq!(
            r_element(&fam, &key([0, 1, 0], [1, 0, 1]), all).unwrap(),
            LaurentQ::one_minus_q_pow(2)
        );
        assert!(r_element(&fam, &key([2, 0, 1], [0, 1, 0]), all)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn block_order_is_lexicographic() {
        assert_eq!(block_states(1, 1), vec![[0, 1, 0], [1, 0, 1]]);
        assert_eq!(block_states(2, 0), vec![[2, 0, 0]]);
    }
}
