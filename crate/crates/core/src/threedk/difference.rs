//! The q-difference equations for Q_{b,c}, one per generator t_{i-1,j-1}
//! with `2 <= i, j <= 5`, and the element-level form of one of them.

use std::fmt;
use std::str::FromStr;

use super::{k_element, KElementKey, KRoute};
use crate::error::{Error, Result};
use crate::multipoly::{W, X, Y, Z};
use crate::qfamily::QFamily;
use crate::report::{Failure, VerificationReport};
use crate::{LaurentQ, QPoly};

/// Relation label `ij`, naming the generator t_{i-1,j-1} it comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub row: u8,
    pub col: u8,
}

impl Label {
    pub const fn new(row: u8, col: u8) -> Self {
        Self { row, col }
    }

    /// Labels carrying a difference equation for Q. The weight relations
    /// `25` and `52` only produce the selection rule.
    pub const DIFFERENCE: [Label; 14] = [
        Label::new(2, 2),
        Label::new(2, 3),
        Label::new(2, 4),
        Label::new(3, 2),
        Label::new(3, 3),
        Label::new(3, 4),
        Label::new(3, 5),
        Label::new(4, 2),
        Label::new(4, 3),
        Label::new(4, 4),
        Label::new(4, 5),
        Label::new(5, 3),
        Label::new(5, 4),
        Label::new(5, 5),
    ];

    /// The fifteen distinct operator relations; `52` coincides with `25`.
    pub const OPERATOR: [Label; 15] = [
        Label::new(2, 2),
        Label::new(2, 3),
        Label::new(2, 4),
        Label::new(2, 5),
        Label::new(3, 2),
        Label::new(3, 3),
        Label::new(3, 4),
        Label::new(3, 5),
        Label::new(4, 2),
        Label::new(4, 3),
        Label::new(4, 4),
        Label::new(4, 5),
        Label::new(5, 3),
        Label::new(5, 4),
        Label::new(5, 5),
    ];
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.row, self.col)
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim_start_matches(['E', 'e', '<']).trim_end_matches('>');
        let bytes = s.as_bytes();
        if bytes.len() != 2 || !bytes.iter().all(|b| (b'2'..=b'5').contains(b)) {
            return Err(Error::Domain(format!(
                "relation label must be two digits in 2..5, got {s:?}"
            )));
        }
        Ok(Label::new(bytes[0] - b'0', bytes[1] - b'0'))
    }
}

/// Left side of the difference equation `label` at `(b, c)`, with Q at
/// negative indices taken as zero. Vanishes when the equation holds.
pub fn e_residual(fam: &QFamily, label: Label, b: i64, c: i64) -> Result<QPoly> {
    let (x, y, z, w) = (QPoly::var(X), QPoly::var(Y), QPoly::var(Z), QPoly::var(W));
    let q = QPoly::q_pow;
    let one = QPoly::one();
    let qm1 = |e: i64| QPoly::q_pow(e) - QPoly::one();
    let at = |db: i64, dc: i64| fam.get(b + db, c + dc);
    let cur = at(0, 0);
    let s = |sh: [i64; 4]| cur.shift_all(sh);
    let wyz = &w * &y * &z;
    let xy2z = &x * &y * &y * &z;

    let res = match (label.row, label.col) {
        (2, 2) => {
            let n = -2 * (4 * b + 6 * c + 1);
            (&y * q(n)) * at(0, 1).as_ref()
                + (q(n) * (&wyz - q(2 * b + 4 * c + 2))) * at(1, 0).as_ref()
                + (&w - &one) * (&y - &one) * s([0, -2, 0, -2])
                + (&w * &y * (&z - &one)).mul_q_pow(-2 * b) * s([0, 0, -4, 0])
        }
        (2, 3) => {
            let n = -2 * (4 * b + 6 * c + 1);
            -(q(n) * at(0, 1).as_ref()) - (&w * &z).mul_q_pow(n) * at(1, 0).as_ref()
                + (&w * &x * (&y - &one) * &z).mul_q_pow(-2 * (b + 2 * c)) * s([0, -2, 0, 0])
                + (&w - &one) * (&x - &one) * s([-4, 0, 0, -2])
                + (&w * (&x - &one) * (&z - &one)).mul_q_pow(-2 * b) * s([-4, 2, -4, 0])
        }
        (2, 4) => {
            (wyz.mul_q_pow(-2 * (b + 2 * c)) - &one) * cur.as_ref() + (&one - &w) * s([0, 0, 0, -2])
                - (&w * (&z - &one)).mul_q_pow(-2 * b) * s([0, 2, -4, 0])
                - (&w * (&y - &one) * &z).mul_q_pow(-2 * (b + 2 * c)) * s([4, -2, 0, 0])
        }
        (3, 2) => {
            let f = q(4 * (b + c)) - &xy2z;
            ((q(2 * (b + 2 * c)) - &wyz) * &f).mul_q_pow(-6 * b - 8 * c) * cur.as_ref()
                - (&y * qm1(2 * b) * &f).mul_q_pow(-8 * (b + c)) * at(-1, 1).as_ref()
                - (&y * &z).mul_q_pow(-8 * (b + c)) * at(1, 0).as_ref()
                + (&y - &one) * s([0, -2, 0, 0])
                + (&y * (&z - &one)).mul_q_pow(-2 * b) * s([0, 0, -4, 2])
        }
        (3, 3) => {
            let f = q(4 * (b + c)) - &xy2z;
            (&w * &z * &f).mul_q_pow(-6 * b - 8 * c) * cur.as_ref()
                + (qm1(2 * b) * &f).mul_q_pow(-8 * (b + c)) * at(-1, 1).as_ref()
                + z.mul_q_pow(-8 * (b + c)) * at(1, 0).as_ref()
                + (&x - &one) * s([-4, 0, 0, 0])
                + (&x * (&y - &one) * &z).mul_q_pow(-2 * (b + 2 * c)) * s([0, -2, 0, 2])
                + ((&x - &one) * (&z - &one)).mul_q_pow(-2 * b) * s([-4, 2, -4, 2])
        }
        (3, 4) => {
            ((&y * &z).mul_q_pow(-2 * (b + 2 * c)) - &one) * cur.as_ref()
                + (&z * qm1(4 * c) * (q(2 * (b + 2 * c)) - wyz.mul_q_pow(2)))
                    .mul_q_pow(-2 * (b + 2 * c + 1))
                    * at(1, -1).as_ref()
                + (qm1(2 * b) * (q(2 * (b + 2 * c - 1)) - &wyz) * (q(4 * (b + c - 1)) - &xy2z))
                    .mul_q_pow(-2 * b)
                    * at(-1, 0).as_ref()
                - (&z - &one).mul_q_pow(-2 * b) * s([0, 2, -4, 2])
                - ((&y - &one) * &z).mul_q_pow(-2 * (b + 2 * c)) * s([4, -2, 0, 2])
        }
        (3, 5) => {
            -(&w * &z * qm1(4 * c)) * at(1, -1).as_ref()
                - s([0, 0, 0, 2])
                - (&w * qm1(2 * b) * (q(4 * (b + c - 1)) - &xy2z)).mul_q_pow(4 * c)
                    * at(-1, 0).as_ref()
                + cur.as_ref()
        }
        (4, 2) => {
            &x * &y * &y * qm1(2 * b) * at(-1, 1).as_ref()
                + (&x * &y * (&wyz - q(2 * (b + 2 * c)))).mul_q_pow(2 * b) * cur.as_ref()
                - (&w - &one).mul_q_pow(6 * b + 8 * c) * s([0, 0, 0, -2])
                - at(1, 0).as_ref()
        }
        (4, 3) => {
            &x * &y * &y * (&one - q(2 * b)) * at(-1, 1).as_ref()
                + (&w * &x * &y * (q(2 * (b + 2 * c)) - &y * &z)).mul_q_pow(2 * b) * cur.as_ref()
                - ((&w - &one) * &x * (&y - &one)).mul_q_pow(6 * b + 4 * c) * s([0, -2, 4, -2])
                - ((&w - &one) * (&x - &one)).mul_q_pow(6 * b + 8 * c) * s([-4, 2, 0, -2])
                + at(1, 0).as_ref()
        }
        (4, 4) => {
            qm1(4 * c) * (q(2 * (b + 2 * c - 1)) - &wyz) * at(1, -1).as_ref()
                - (&w * &y).mul_q_pow(-2 * b) * s([4, 0, 0, 0])
                + (&x * &y * &y * qm1(2 * b) * (&wyz - q(2 * (b + 2 * c - 1)))).mul_q_pow(4 * c)
                    * at(-1, 0).as_ref()
                + (&w - &one).mul_q_pow(4 * c) * s([0, 2, 0, -2])
                + (&w - &one) * (&y - &one) * s([4, -2, 4, -2])
                + &y * cur.as_ref()
        }
        (4, 5) => {
            (&w * &xy2z * qm1(2 * b)).mul_q_pow(4 * c) * at(-1, 0).as_ref()
                - &w * &z * qm1(4 * c) * at(1, -1).as_ref()
                - w.mul_q_pow(-2 * b) * s([0, 2, 0, 0])
                + (&w - &one) * s([0, 0, 4, -2])
                + cur.as_ref()
        }
        (5, 3) => {
            -(&x * &y).mul_q_pow(-2 * (b + 2 * c)) * s([0, 0, 0, 2])
                + (&x - &one) * s([-4, 2, 0, 0])
                + (&x * (&y - &one)).mul_q_pow(-4 * c) * s([0, -2, 4, 0])
                + cur.as_ref()
        }
        (5, 4) => {
            &y * qm1(2 * b) * at(-1, 0).as_ref()
                + (qm1(4 * c) * (q(2 * (b + 2 * c - 2)) - &wyz)).mul_q_pow(2 * b)
                    * at(0, -1).as_ref()
                - s([0, 2, 0, 0]).mul_q_pow(-4 * b - 4 * c + 6)
                + y.mul_q_pow(-6 * b - 8 * c + 6) * s([4, 0, 0, 2])
                - (&y - &one).mul_q_pow(-4 * b - 8 * c + 6) * s([4, -2, 4, 0])
        }
        (5, 5) => {
            -(&w * &z * qm1(4 * c)).mul_q_pow(2 * b) * at(0, -1).as_ref()
                + qm1(2 * b) * at(-1, 0).as_ref()
                - s([0, 0, 4, 0]).mul_q_pow(-4 * b - 8 * c + 6)
                + s([0, 2, 0, 2]).mul_q_pow(-6 * b - 8 * c + 6)
        }
        _ => {
            return Err(Error::Domain(format!(
                "no difference equation labelled E{label}"
            )))
        }
    };
    Ok(res)
}

/// Checks that the difference equation `label` vanishes identically at `(b, c)`.
pub fn verify_e(fam: &QFamily, label: Label, b: i64, c: i64) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("E{label} at (b,c)=({b},{c})"));
    match e_residual(fam, label, b, c) {
        Ok(res) => rep.record(res.is_zero(), || Failure {
            location: format!("E{label} at ({b},{c})"),
            lhs: res.to_string(),
            rhs: "0".into(),
        }),
        Err(e) => rep.record_error(format!("E{label}"), e),
    }
    rep
}

/// All fourteen equations for every `b, c <= max`.
pub fn verify_all_e(fam: &QFamily, max: i64) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("E equations b,c<={max}"));
    for b in 0..=max {
        for c in 0..=max {
            for label in Label::DIFFERENCE {
                rep.absorb(verify_e(fam, label, b, c));
            }
        }
    }
    rep
}

fn elem(fam: &QFamily, out: [u32; 4], inp: [i64; 4]) -> Result<LaurentQ> {
    if inp.iter().any(|&v| v < 0) {
        return Ok(LaurentQ::zero());
    }
    k_element(
        fam,
        &KElementKey::new(out, inp.map(|v| v as u32)),
        &[KRoute::Primary],
    )
}

/// The matrix-element form of relation `24`:
/// q^{b+2c}(1-q^{2d+2}) K^{a,b,c,d+1}_{i,j,k,l} equals a sum of three
/// neighbouring elements with output `(a,b,c,d)`.
pub fn verify_element_recursion(fam: &QFamily, out: [u32; 4], inp: [u32; 4]) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("element recursion {out:?} <- {inp:?}"));
    let [a, b, c, d] = out;
    let [i, j, k, l] = inp.map(i64::from);
    let (bi, ci, di) = (b as i64, c as i64, d as i64);
    let run = || -> Result<(LaurentQ, LaurentQ)> {
        let lhs = elem(fam, [a, b, c, d + 1], [i, j, k, l])?
            * LaurentQ::one_minus_q_pow(2 * di + 2).mul_q_pow(bi + 2 * ci);
        let rhs = elem(fam, out, [i + 1, j - 1, k, l])?
            * LaurentQ::one_minus_q_pow(2 * j).mul_q_pow(2 * k + l)
            + elem(fam, out, [i, j + 1, k - 1, l])?
                * LaurentQ::one_minus_q_pow(4 * k).mul_q_pow(2 * i + l)
            + elem(fam, out, [i, j, k, l - 1])?
                * LaurentQ::one_minus_q_pow(2 * l).mul_q_pow(2 * i + j);
        Ok((lhs, rhs))
    };
    match run() {
        Ok((lhs, rhs)) => rep.record_eq(|| format!("{out:?} <- {inp:?}"), &lhs, &rhs),
        Err(e) => rep.record_error(format!("{out:?} <- {inp:?}"), e),
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labels_round_trip() {
        for l in Label::DIFFERENCE {
            assert_eq!(l.to_string().parse::<Label>().unwrap(), l);
            assert_eq!(format!("E{l}").parse::<Label>().unwrap(), l);
        }
        assert!("26".parse::<Label>().is_err());
    }

    #[test]
    fn trivial_member_satisfies_every_equation() {
        let fam = QFamily::new();
        for l in Label::DIFFERENCE {
            let rep = verify_e(&fam, l, 0, 0);
            assert!(rep.passed, "{rep}");
        }
    }
}
