//! Intertwining relations `X Op = Op Y` written as sums of generator words.

use rayon::prelude::*;

use super::{
    apply_generator, apply_local, BasisState, Generator, KOperator, LocalOperator, ROperator,
    SparseVector,
};
use crate::error::{Error, Result};
use crate::report::{Failure, VerificationReport};
use crate::threedk::Label;
use crate::LaurentQ;

/// `coeff` times a tensor product of generators, one per factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpTerm {
    pub coeff: LaurentQ,
    pub word: Vec<Generator>,
}

impl OpTerm {
    /// `sign * q^exp` times the space-separated word, e.g. `"1 k A- a+"`.
    fn parse(negative: bool, exp: i64, word: &str) -> Self {
        Self {
            coeff: LaurentQ::signed_q_pow(negative, exp),
            word: word
                .split_whitespace()
                .map(|g| g.parse().expect("generator table"))
                .collect(),
        }
    }
}

fn apply_sum(terms: &[OpTerm], v: &SparseVector) -> Result<SparseVector> {
    let mut out = SparseVector::zero(v.signature().to_vec());
    for t in terms {
        let mut w = v.clone();
        for (pos, &g) in t.word.iter().enumerate() {
            if g != Generator::Identity {
                w = apply_generator(g, &w, pos)?;
            }
        }
        out.add_assign(&w.scale(&t.coeff));
    }
    Ok(out)
}

/// `left * Op = Op * right`; a commutation relation has `left == right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorRelation {
    pub name: String,
    pub left: Vec<OpTerm>,
    pub right: Vec<OpTerm>,
}

fn sum(spec: &[(bool, i64, &str)]) -> Vec<OpTerm> {
    spec.iter()
        .map(|&(n, e, w)| OpTerm::parse(n, e, w))
        .collect()
}

fn rel(name: String, left: &[(bool, i64, &str)], right: &[(bool, i64, &str)]) -> OperatorRelation {
    OperatorRelation {
        name,
        left: sum(left),
        right: sum(right),
    }
}

const P: bool = false;
const N: bool = true;

/// The intertwining relation for K labelled `label`; `52` is the same as `25`.
pub fn k_relation(label: Label) -> Result<OperatorRelation> {
    let name = format!("<{label}>");
    let a23 = [(P, 0, "1 a- 1 k"), (P, 0, "1 k A- a+")];
    let b23 = [
        (P, 0, "A- a+ A- k"),
        (P, 0, "A- k 1 a-"),
        (N, 2, "K a- K k"),
    ];
    let a24 = [(P, 0, "1 k K a-")];
    let b24 = [(P, 0, "A+ a- K k"), (P, 0, "K a+ A- k"), (P, 0, "K k 1 a-")];
    let a34 = [
        (P, 0, "A- a+ K a-"),
        (P, 0, "K a- A+ a-"),
        (N, 1, "K k 1 k"),
    ];
    let b34 = [
        (P, 0, "A+ a- K a+"),
        (P, 0, "K a+ A- a+"),
        (N, 1, "K k 1 k"),
    ];
    let a35 = [(P, 0, "A- a+ K k"), (P, 0, "K a- A+ k"), (P, 0, "K k 1 a+")];
    let b35 = [(P, 0, "1 k K a+")];
    let a45 = [
        (P, 0, "A+ a- A+ k"),
        (P, 0, "A+ k 1 a+"),
        (N, 2, "K a+ K k"),
    ];
    let b45 = [(P, 0, "1 a+ 1 k"), (P, 0, "1 k A+ a-")];
    let commute = |x: &[(bool, i64, &str)]| rel(name.clone(), x, x);
    Ok(match (label.row, label.col) {
        (2, 2) => commute(&[(P, 0, "1 a- 1 a-"), (N, 1, "1 k A- k")]),
        (2, 3) => rel(name, &a23, &b23),
        (2, 4) => rel(name, &a24, &b24),
        (2, 5) | (5, 2) => commute(&[(P, 0, "1 k K k")]),
        (3, 2) => rel(name, &b23, &a23),
        (3, 3) => commute(&[
            (P, 0, "A- a+ A- a+"),
            (N, 1, "A- k 1 k"),
            (N, 2, "K a- K a+"),
        ]),
        (3, 4) => rel(name, &a34, &b34),
        (3, 5) => rel(name, &a35, &b35),
        (4, 2) => rel(name, &b24, &a24),
        (4, 3) => rel(name, &b34, &a34),
        (4, 4) => commute(&[
            (P, 0, "A+ a- A+ a-"),
            (N, 1, "A+ k 1 k"),
            (N, 2, "K a+ K a-"),
        ]),
        (4, 5) => rel(name, &a45, &b45),
        (5, 3) => rel(name, &b35, &a35),
        (5, 4) => rel(name, &b45, &a45),
        (5, 5) => commute(&[(P, 0, "1 a+ 1 a+"), (N, 1, "1 k A+ k")]),
        _ => {
            return Err(Error::Domain(format!(
                "no intertwining relation labelled {label}"
            )))
        }
    })
}

/// The listed intertwining relations characterizing R, in the form
/// `left * R = R * right`.
pub fn r_relations() -> Vec<OperatorRelation> {
    let mut out = Vec::new();
    for (s, up, dn) in [("+", "a+", "a-"), ("-", "a-", "a+")] {
        out.push(rel(
            format!("R(a{s} k 1)"),
            &[
                (P, 0, &format!("{up} 1 k")),
                (P, 0, &format!("k {up} {dn}")),
            ],
            &[(P, 0, &format!("{up} k 1"))],
        ));
        out.push(rel(
            format!("R(1 k a{s})"),
            &[
                (P, 0, &format!("k 1 {up}")),
                (P, 0, &format!("{dn} {up} k")),
            ],
            &[(P, 0, &format!("1 k {up}"))],
        ));
        out.push(rel(
            format!("R(1 a{s} 1)"),
            &[
                (P, 0, &format!("{up} 1 {up}")),
                (N, 1, &format!("k {up} k")),
            ],
            &[(P, 0, &format!("1 {up} 1"))],
        ));
    }
    out.push(rel(
        "[R, k k 1]".into(),
        &[(P, 0, "k k 1")],
        &[(P, 0, "k k 1")],
    ));
    out.push(rel(
        "[R, 1 k k]".into(),
        &[(P, 0, "1 k k")],
        &[(P, 0, "1 k k")],
    ));
    out.push(rel(
        "R(a+ a- a+ - q k 1 k)".into(),
        &[(P, 0, "a- a+ a-"), (N, 1, "k 1 k")],
        &[(P, 0, "a+ a- a+"), (N, 1, "k 1 k")],
    ));
    out
}

/// Applies both sides of `relation` to `input` and compares exactly.
pub fn verify_relation(
    op: &dyn LocalOperator,
    relation: &OperatorRelation,
    input: &BasisState,
) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("{} on {input}", relation.name));
    let positions: Vec<usize> = (0..op.signature().len()).collect();
    let run = || -> Result<(SparseVector, SparseVector)> {
        let v = SparseVector::basis(input);
        let lhs = apply_sum(&relation.left, &apply_local(op, &v, &positions)?)?;
        let rhs = apply_local(op, &apply_sum(&relation.right, &v)?, &positions)?;
        Ok((lhs, rhs))
    };
    match run() {
        Ok((lhs, rhs)) => match lhs.first_difference(&rhs) {
            None => rep.pass(),
            Some((state, l, r)) => rep.record(false, || Failure {
                location: format!("{} on {input}, output {state:?}", relation.name),
                lhs: l.to_string(),
                rhs: r.to_string(),
            }),
        },
        Err(e) => rep.record_error(format!("{} on {input}", relation.name), e),
    }
    rep
}

/// Checks the K relation `label` on one 4-fold basis state.
pub fn verify_intertwiner(label: Label, input: &BasisState) -> VerificationReport {
    match k_relation(label) {
        Ok(r) => verify_relation(&KOperator, &r, input),
        Err(e) => {
            let mut rep = VerificationReport::new(format!("<{label}>"));
            rep.record_error(format!("<{label}>"), e);
            rep
        }
    }
}

fn suite(
    name: String,
    jobs: Vec<(OperatorRelation, BasisState)>,
    op: &dyn LocalOperator,
) -> VerificationReport {
    let parts: Vec<_> = jobs
        .par_iter()
        .map(|(r, s)| verify_relation(op, r, s))
        .collect();
    let mut rep = VerificationReport::new(name);
    for p in parts {
        rep.absorb(p);
    }
    rep
}

/// All fifteen K relations on every 4-fold state with occupations `<= max_occ`.
pub fn intertwiner_suite(labels: &[Label], max_occ: u32) -> Result<VerificationReport> {
    let sig = KOperator.signature().to_vec();
    let states = super::states_up_to(&sig, max_occ);
    let mut jobs = Vec::new();
    for &l in labels {
        let r = k_relation(l)?;
        jobs.extend(states.iter().map(|s| (r.clone(), s.clone())));
    }
    Ok(suite(
        format!("K intertwiners, occupations <= {max_occ}"),
        jobs,
        &KOperator,
    ))
}

/// The R relations on every 3-fold state with occupations `<= max_occ`.
pub fn r_relation_suite(max_occ: u32) -> VerificationReport {
    let sig = ROperator.signature().to_vec();
    let states = super::states_up_to(&sig, max_occ);
    let jobs = r_relations()
        .into_iter()
        .flat_map(|r| states.iter().map(move |s| (r.clone(), s.clone())))
        .collect();
    suite(
        format!("R intertwiners, occupations <= {max_occ}"),
        jobs,
        &ROperator,
    )
}
