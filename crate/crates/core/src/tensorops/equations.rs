//! The tetrahedron and 3D reflection equations, checked vector by vector.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::{
    apply_local, BasisState, KOperator, LocalOperator, ROperator, SpaceType, SparseVector,
};
use crate::error::Result;
use crate::report::{Failure, VerificationReport};

use SpaceType::{Q1, Q2};

/// Factor types of the nine-fold space on which both sides of the
/// reflection equation act.
pub const REFLECTION_SIGNATURE: [SpaceType; 9] = [Q2, Q1, Q2, Q1, Q1, Q1, Q2, Q1, Q1];

/// A product of local operators, written left to right and applied right to left.
type Word<'a> = Vec<(&'a dyn LocalOperator, &'static [usize])>;

fn apply_word(word: &Word<'_>, input: &BasisState) -> Result<SparseVector> {
    let mut v = SparseVector::basis(input);
    for (op, positions) in word.iter().rev() {
        let zero_based: Vec<usize> = positions.iter().map(|p| p - 1).collect();
        v = apply_local(*op, &v, &zero_based)?;
    }
    Ok(v)
}

fn compare(name: &str, lhs: &Word<'_>, rhs: &Word<'_>, input: &BasisState) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("{name} on {input}"));
    match apply_word(lhs, input).and_then(|l| Ok((l, apply_word(rhs, input)?))) {
        Ok((l, r)) => match l.first_difference(&r) {
            None => rep.pass(),
            Some((state, a, b)) => rep.record(false, || Failure {
                location: format!("{name} on {input}, output {state:?}"),
                lhs: a.to_string(),
                rhs: b.to_string(),
            }),
        },
        Err(e) => rep.record_error(format!("{name} on {input}"), e),
    }
    rep
}

/// R356 R246 R145 R123 = R123 R145 R246 R356 on one six-fold state, with
/// `r` standing in for R.
pub fn verify_tetrahedron_with(r: &dyn LocalOperator, input: &BasisState) -> VerificationReport {
    let lhs: Word = vec![
        (r, &[3, 5, 6]),
        (r, &[2, 4, 6]),
        (r, &[1, 4, 5]),
        (r, &[1, 2, 3]),
    ];
    let rhs: Word = vec![
        (r, &[1, 2, 3]),
        (r, &[1, 4, 5]),
        (r, &[2, 4, 6]),
        (r, &[3, 5, 6]),
    ];
    compare("tetrahedron", &lhs, &rhs, input)
}

pub fn verify_tetrahedron(input: &BasisState) -> VerificationReport {
    verify_tetrahedron_with(&ROperator, input)
}

/// R456 R489 K3579 R269 R258 K1678 K1234 = K1234 K1678 R258 R269 K3579 R489 R456
/// on one nine-fold state.
pub fn verify_reflection_with(
    r: &dyn LocalOperator,
    k: &dyn LocalOperator,
    input: &BasisState,
) -> VerificationReport {
    let lhs: Word = vec![
        (r, &[4, 5, 6]),
        (r, &[4, 8, 9]),
        (k, &[3, 5, 7, 9]),
        (r, &[2, 6, 9]),
        (r, &[2, 5, 8]),
        (k, &[1, 6, 7, 8]),
        (k, &[1, 2, 3, 4]),
    ];
    let rhs: Word = vec![
        (k, &[1, 2, 3, 4]),
        (k, &[1, 6, 7, 8]),
        (r, &[2, 5, 8]),
        (r, &[2, 6, 9]),
        (k, &[3, 5, 7, 9]),
        (r, &[4, 8, 9]),
        (r, &[4, 5, 6]),
    ];
    compare("reflection", &lhs, &rhs, input)
}

pub fn verify_reflection(input: &BasisState) -> VerificationReport {
    verify_reflection_with(&ROperator, &KOperator, input)
}

/// Every state of the given signature with all occupations `<= max_occ`,
/// lexicographically ascending.
pub fn states_up_to(signature: &[SpaceType], max_occ: u32) -> Vec<BasisState> {
    let n = signature.len();
    let base = max_occ as usize + 1;
    let total = base.pow(n as u32);
    (0..total)
        .map(|mut idx| {
            let mut occ = vec![0u32; n];
            for slot in occ.iter_mut().rev() {
                *slot = (idx % base) as u32;
                idx /= base;
            }
            BasisState {
                occupations: occ,
                signature: signature.to_vec(),
            }
        })
        .collect()
}

/// States whose occupations are 0 or 1 with at most `max_ones` ones.
pub fn states_with_units(signature: &[SpaceType], max_ones: u32) -> Vec<BasisState> {
    states_up_to(signature, 1)
        .into_iter()
        .filter(|s| s.occupations.iter().sum::<u32>() <= max_ones)
        .collect()
}

/// `count` seeded random nine-fold states with occupations 0 or 1.
pub fn reflection_sample(count: usize, seed: u64) -> Vec<BasisState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| BasisState {
            occupations: (0..9).map(|_| rng.gen_range(0..=1)).collect(),
            signature: REFLECTION_SIGNATURE.to_vec(),
        })
        .collect()
}

fn run_all<F>(name: String, inputs: &[BasisState], check: F) -> VerificationReport
where
    F: Fn(&BasisState) -> VerificationReport + Sync + Send,
{
    let parts: Vec<_> = inputs.par_iter().map(check).collect();
    let mut rep = VerificationReport::new(name);
    for p in parts {
        rep.absorb(p);
    }
    rep
}

/// The tetrahedron equation on every six-fold state with occupations `<= max_occ`.
pub fn tetrahedron_suite(r: &dyn LocalOperator, max_occ: u32) -> VerificationReport {
    let inputs = states_up_to(&[Q1; 6], max_occ);
    run_all(
        format!("tetrahedron, occupations <= {max_occ}"),
        &inputs,
        |s| verify_tetrahedron_with(r, s),
    )
}

/// The reflection equation on the given nine-fold states.
pub fn reflection_suite(
    r: &dyn LocalOperator,
    k: &dyn LocalOperator,
    name: &str,
    inputs: &[BasisState],
) -> VerificationReport {
    run_all(name.to_string(), inputs, |s| {
        verify_reflection_with(r, k, s)
    })
}
