//! Printed reference values embedded at build time, and their reproduction.

use crate::error::{Error, Result};
use crate::exactq::QProduct;
use crate::qfamily::{QFamily, QIndex};
use crate::report::{Failure, VerificationReport};
use crate::threedk::{block_states, k_element, KElementKey, KRoute};
use crate::{LaurentQ, QPoly};

const Q_MEMBERS: &str = include_str!("../golden/q_members.txt");
const Q20_REPEATED_GROUP: &str = include_str!("../golden/q20_repeated_group.txt");
const K_3102: &str = include_str!("../golden/k_3102.txt");
const K_3102_QUOTIENTS: &str = include_str!("../golden/k_3102_quotients.txt");

/// Output occupations of the printed K row.
pub const K_ROW: [u32; 4] = [3, 1, 0, 2];

fn lines(src: &str) -> impl Iterator<Item = &str> {
    src.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn ints<const M: usize>(s: &str) -> Result<[i64; M]> {
    let v: Vec<i64> = s
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| Error::Malformed(format!("bad integer {t:?}")))
        })
        .collect::<Result<_>>()?;
    v.try_into()
        .map_err(|_| Error::Malformed(format!("expected {M} integers in {s:?}")))
}

fn split_eq(line: &str) -> Result<(&str, &str)> {
    line.split_once('=')
        .ok_or_else(|| Error::Malformed(format!("missing '=' in {line:?}")))
}

/// Printed Q members, keyed by index.
pub fn printed_q() -> Result<Vec<(QIndex, QPoly)>> {
    lines(Q_MEMBERS)
        .map(|l| {
            let (idx, expr) = split_eq(l)?;
            let [b, c] = ints::<2>(idx)?;
            Ok((QIndex::new(b as u32, c as u32), QPoly::parse(expr)?))
        })
        .collect()
}

/// The group that appears a second time at the end of the printed Q_{2,0}.
pub fn q20_repeated_group() -> Result<QPoly> {
    QPoly::parse(Q20_REPEATED_GROUP.trim())
}

/// The printed nonzero elements K^{3,1,0,2}_{i,j,k,l}.
pub fn printed_k_row() -> Result<Vec<([u32; 4], LaurentQ)>> {
    lines(K_3102)
        .map(|l| {
            let (idx, expr) = split_eq(l)?;
            let inp = ints::<4>(idx)?.map(|v| v as u32);
            Ok((inp, QPoly::parse(expr)?.coeff(&[0; 4])))
        })
        .collect()
}

/// One printed way of writing a K element as a special value of some Q_{b,c}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    pub inp: [u32; 4],
    pub q: QIndex,
    pub point: [i64; 4],
    pub prefactor: i64,
    pub denominator: Vec<i64>,
}

impl Quotient {
    /// `q^prefactor Q_{b,c}(q^point) / prod (1 - q^m)`, reduced exactly.
    pub fn evaluate(&self, fam: &QFamily) -> Result<LaurentQ> {
        let num = fam
            .compute_q(self.q)
            .evaluate_at_q_powers(self.point)
            .mul_q_pow(self.prefactor);
        let mut den = QProduct::one();
        for &m in &self.denominator {
            den.push_factor(m, 1);
        }
        den.recip()
            .to_rational()
            .mul_laurent(&num)
            .reduce_to_laurent()
    }
}

pub fn printed_quotients() -> Result<Vec<Quotient>> {
    lines(K_3102_QUOTIENTS)
        .map(|l| {
            let parts: Vec<&str> = l.split('|').collect();
            let [inp, bc, point, pre, den] = parts[..] else {
                return Err(Error::Malformed(format!("expected five fields in {l:?}")));
            };
            let [b, c] = ints::<2>(bc)?;
            let denominator = den
                .split_whitespace()
                .map(|t| {
                    t.parse()
                        .map_err(|_| Error::Malformed(format!("bad integer {t:?}")))
                })
                .collect::<Result<_>>()?;
            Ok(Quotient {
                inp: ints::<4>(inp)?.map(|v| v as u32),
                q: QIndex::new(b as u32, c as u32),
                point: ints::<4>(point)?,
                prefactor: ints::<1>(pre)?[0],
                denominator,
            })
        })
        .collect()
}

/// Recomputes the printed Q members and compares them exactly.
pub fn check_q_members(fam: &QFamily) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("printed Q members");
    for (idx, printed) in printed_q()? {
        let computed = fam.compute_q(idx);
        rep.record_eq(|| idx.to_string(), computed.as_ref(), &printed);
    }
    let q20 = fam.compute_q(QIndex::new(2, 0));
    let as_printed = printed_q()?
        .into_iter()
        .find(|(i, _)| *i == QIndex::new(2, 0))
        .map(|(_, p)| p)
        .ok_or_else(|| Error::Malformed("Q_{2,0} missing from golden file".into()))?;
    let repeated = q20_repeated_group()?;
    // the trailing printed line must be a verbatim repeat of the q^4 group
    rep.record_eq(
        || "Q_{2,0} trailing line equals its q^4 group".into(),
        &repeated,
        &as_printed.q_coefficient(4).mul_q_pow(4),
    );
    rep.record(q20.as_ref() != &(as_printed + repeated), || Failure {
        location: "Q_{2,0} with the q^4 group counted twice".into(),
        lhs: "matches".into(),
        rhs: "expected a mismatch".into(),
    });
    Ok(rep)
}

/// The printed K^{3,1,0,2} row through both formulas, the vanishing of every
/// other element of its block, and the printed quotient identities.
pub fn check_k_row(fam: &QFamily) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("printed K^{3,1,0,2}");
    let printed = printed_k_row()?;
    let (m, n) = crate::threedk::k_weights(K_ROW);
    for inp in block_states(m, n) {
        let key = KElementKey::new(K_ROW, inp);
        let expected = printed
            .iter()
            .find(|(s, _)| *s == inp)
            .map_or_else(LaurentQ::zero, |(_, v)| v.clone());
        match k_element(fam, &key, &KRoute::BOTH) {
            Ok(v) => rep.record_eq(|| key.to_string(), &v, &expected),
            Err(e) => rep.record_error(key.to_string(), e),
        }
    }
    for quot in printed_quotients()? {
        let key = KElementKey::new(K_ROW, quot.inp);
        let lhs = quot.evaluate(fam)?;
        let rhs = k_element(fam, &key, &[KRoute::Primary])?;
        rep.record_eq(|| format!("{key} via {}", quot.q), &lhs, &rhs);
    }
    Ok(rep)
}

/// Every printed value, recomputed.
pub fn reproduce_printed(fam: &QFamily) -> Result<VerificationReport> {
    let mut rep = VerificationReport::new("printed values");
    rep.absorb(check_q_members(fam)?);
    rep.absorb(check_k_row(fam)?);
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_files_parse() {
        assert_eq!(printed_q().unwrap().len(), 5);
        assert_eq!(printed_k_row().unwrap().len(), 6);
        assert_eq!(printed_quotients().unwrap().len(), 8);
    }
}
