//! Fock-space tensor products, q-oscillator generators, and sparse
//! application of R and K at chosen tensor positions.

mod equations;
mod relations;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

pub use equations::{
    reflection_sample, reflection_suite, states_up_to, states_with_units, tetrahedron_suite,
    verify_reflection, verify_reflection_with, verify_tetrahedron, verify_tetrahedron_with,
    REFLECTION_SIGNATURE,
};
pub use relations::{
    intertwiner_suite, k_relation, r_relation_suite, r_relations, verify_intertwiner,
    verify_relation, OpTerm, OperatorRelation,
};

use crate::error::{Error, Result};
use crate::threedk::k_column;
use crate::threedr::r_column;
use crate::LaurentQ;

/// Deformation parameter of one tensor factor: `q` or `q^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpaceType {
    Q1,
    Q2,
}

impl SpaceType {
    fn base(self) -> i64 {
        match self {
            SpaceType::Q1 => 1,
            SpaceType::Q2 => 2,
        }
    }
}

/// A basis vector of a tensor product of Fock spaces.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisState {
    pub occupations: Vec<u32>,
    pub signature: Vec<SpaceType>,
}

impl BasisState {
    pub fn new(occupations: Vec<u32>, signature: Vec<SpaceType>) -> Result<Self> {
        if occupations.len() != signature.len() {
            return Err(Error::Signature(format!(
                "{} occupations for {} tensor factors",
                occupations.len(),
                signature.len()
            )));
        }
        Ok(Self {
            occupations,
            signature,
        })
    }

    pub fn vacuum(signature: Vec<SpaceType>) -> Self {
        Self {
            occupations: vec![0; signature.len()],
            signature,
        }
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|")?;
        for (i, m) in self.occupations.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str(">")
    }
}

/// Finite linear combination of basis states sharing one signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseVector {
    signature: Vec<SpaceType>,
    terms: BTreeMap<Vec<u32>, LaurentQ>,
}

impl SparseVector {
    pub fn zero(signature: Vec<SpaceType>) -> Self {
        Self {
            signature,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(state: &BasisState) -> Self {
        let mut v = Self::zero(state.signature.clone());
        v.terms.insert(state.occupations.clone(), LaurentQ::one());
        v
    }

    pub fn signature(&self) -> &[SpaceType] {
        &self.signature
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &LaurentQ)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn coeff(&self, occupations: &[u32]) -> LaurentQ {
        self.terms
            .get(occupations)
            .cloned()
            .unwrap_or_else(LaurentQ::zero)
    }

    pub fn add_term(&mut self, occupations: Vec<u32>, c: LaurentQ) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(occupations) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &LaurentQ) -> Self {
        let mut out = Self::zero(self.signature.clone());
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    /// Adds `other` in place; both must share the signature.
    pub fn add_assign(&mut self, other: &SparseVector) {
        debug_assert_eq!(self.signature, other.signature);
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    /// First state where the two vectors differ, with both coefficients.
    pub fn first_difference(&self, other: &SparseVector) -> Option<(Vec<u32>, LaurentQ, LaurentQ)> {
        let keys: std::collections::BTreeSet<_> =
            self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter().find_map(|k| {
            let (a, b) = (self.coeff(k), other.coeff(k));
            (a != b).then(|| (k.clone(), a, b))
        })
    }
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (k, v)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(
                f,
                "({v})|{}>",
                k.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
            )?;
        }
        Ok(())
    }
}

/// The q-oscillator generators and the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    /// a+ on a `q` factor.
    Raise,
    /// a- on a `q` factor.
    Lower,
    /// k on a `q` factor.
    Weight,
    /// A+ on a `q^2` factor.
    Raise2,
    /// A- on a `q^2` factor.
    Lower2,
    /// K on a `q^2` factor.
    Weight2,
    Identity,
}

impl Generator {
    fn space(self) -> Option<SpaceType> {
        match self {
            Generator::Raise | Generator::Lower | Generator::Weight => Some(SpaceType::Q1),
            Generator::Raise2 | Generator::Lower2 | Generator::Weight2 => Some(SpaceType::Q2),
            Generator::Identity => None,
        }
    }

    /// The image of `|m>` as `(coefficient, new occupation)`, or None for zero.
    fn act(self, m: u32) -> Option<(LaurentQ, u32)> {
        let base = self.space().map_or(1, SpaceType::base);
        let mi = i64::from(m);
        match self {
            Generator::Identity => Some((LaurentQ::one(), m)),
            Generator::Raise | Generator::Raise2 => Some((LaurentQ::one(), m + 1)),
            Generator::Lower | Generator::Lower2 => {
                (m > 0).then(|| (LaurentQ::one_minus_q_pow(2 * base * mi), m - 1))
            }
            Generator::Weight | Generator::Weight2 => Some((LaurentQ::q_pow(base * mi), m)),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "a+" => Generator::Raise,
            "a-" => Generator::Lower,
            "k" => Generator::Weight,
            "A+" => Generator::Raise2,
            "A-" => Generator::Lower2,
            "K" => Generator::Weight2,
            "1" => Generator::Identity,
            _ => return Err(Error::Domain(format!("unknown generator {s:?}"))),
        })
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Generator::Raise => "a+",
            Generator::Lower => "a-",
            Generator::Weight => "k",
            Generator::Raise2 => "A+",
            Generator::Lower2 => "A-",
            Generator::Weight2 => "K",
            Generator::Identity => "1",
        })
    }
}

/// Applies one generator at tensor position `pos` (0-based).
pub fn apply_generator(g: Generator, v: &SparseVector, pos: usize) -> Result<SparseVector> {
    let space = *v.signature.get(pos).ok_or_else(|| {
        Error::Signature(format!(
            "position {pos} outside {} factors",
            v.signature.len()
        ))
    })?;
    if g.space().is_some_and(|s| s != space) {
        return Err(Error::Signature(format!(
            "{g} cannot act on a {space:?} factor at {pos}"
        )));
    }
    let mut out = SparseVector::zero(v.signature.clone());
    for (occ, c) in &v.terms {
        if let Some((f, m)) = g.act(occ[pos]) {
            let mut next = occ.clone();
            next[pos] = m;
            out.add_term(next, c * &f);
        }
    }
    Ok(out)
}

/// An operator acting on a few tensor factors through its matrix columns.
pub trait LocalOperator: Sync {
    fn name(&self) -> String;

    /// Required types of the factors it acts on.
    fn signature(&self) -> &[SpaceType];

    /// Calls `f(out, value)` for every nonzero element in the column `inp`.
    fn for_each_output(&self, inp: &[u32], f: &mut dyn FnMut(&[u32], &LaurentQ));
}

/// The 3D R on three `q` factors.
#[derive(Clone, Copy, Debug, Default)]
pub struct ROperator;

/// The 3D K on `q^2, q, q^2, q` factors.
#[derive(Clone, Copy, Debug, Default)]
pub struct KOperator;

impl LocalOperator for ROperator {
    fn name(&self) -> String {
        "R".into()
    }

    fn signature(&self) -> &[SpaceType] {
        &[SpaceType::Q1; 3]
    }

    fn for_each_output(&self, inp: &[u32], f: &mut dyn FnMut(&[u32], &LaurentQ)) {
        for (out, v) in r_column([inp[0], inp[1], inp[2]]).iter() {
            f(out, v);
        }
    }
}

impl LocalOperator for KOperator {
    fn name(&self) -> String {
        "K".into()
    }

    fn signature(&self) -> &[SpaceType] {
        &[SpaceType::Q2, SpaceType::Q1, SpaceType::Q2, SpaceType::Q1]
    }

    fn for_each_output(&self, inp: &[u32], f: &mut dyn FnMut(&[u32], &LaurentQ)) {
        for (out, v) in k_column([inp[0], inp[1], inp[2], inp[3]]).iter() {
            f(out, v);
        }
    }
}

/// Wraps an operator with one matrix element replaced.
pub struct Corrupted<O> {
    pub inner: O,
    pub out: Vec<u32>,
    pub inp: Vec<u32>,
    pub value: LaurentQ,
}

impl<O: LocalOperator> Corrupted<O> {
    /// Sets the element `out <- inp` to zero.
    pub fn zeroed(inner: O, out: Vec<u32>, inp: Vec<u32>) -> Self {
        Self {
            inner,
            out,
            inp,
            value: LaurentQ::zero(),
        }
    }
}

impl<O: LocalOperator> LocalOperator for Corrupted<O> {
    fn name(&self) -> String {
        format!(
            "{} with element {:?} <- {:?} replaced",
            self.inner.name(),
            self.out,
            self.inp
        )
    }

    fn signature(&self) -> &[SpaceType] {
        self.inner.signature()
    }

    fn for_each_output(&self, inp: &[u32], f: &mut dyn FnMut(&[u32], &LaurentQ)) {
        let hit = inp == self.inp.as_slice();
        let mut seen = false;
        self.inner.for_each_output(inp, &mut |out, v| {
            if hit && out == self.out.as_slice() {
                seen = true;
                if !self.value.is_zero() {
                    f(out, &self.value);
                }
            } else {
                f(out, v);
            }
        });
        if hit && !seen && !self.value.is_zero() {
            f(&self.out, &self.value);
        }
    }
}

/// Applies `op` on the factors at `positions` (0-based).
pub fn apply_local(
    op: &dyn LocalOperator,
    v: &SparseVector,
    positions: &[usize],
) -> Result<SparseVector> {
    let sig = op.signature();
    if positions.len() != sig.len() {
        return Err(Error::Signature(format!(
            "{} acts on {} factors, got {} positions",
            op.name(),
            sig.len(),
            positions.len()
        )));
    }
    for (&p, &want) in positions.iter().zip(sig) {
        match v.signature.get(p) {
            Some(&have) if have == want => {}
            Some(&have) => {
                return Err(Error::Signature(format!(
                    "{} needs {want:?} at position {p}, found {have:?}",
                    op.name()
                )))
            }
            None => {
                return Err(Error::Signature(format!(
                    "position {p} outside {} factors",
                    v.signature.len()
                )))
            }
        }
    }
    let mut out = SparseVector::zero(v.signature.clone());
    let mut local = vec![0u32; positions.len()];
    for (occ, c) in &v.terms {
        for (slot, &p) in local.iter_mut().zip(positions) {
            *slot = occ[p];
        }
        op.for_each_output(&local, &mut |o, val| {
            let mut next = occ.clone();
            for (&p, &m) in positions.iter().zip(o) {
                next[p] = m;
            }
            out.add_term(next, c * val);
        });
    }
    Ok(out)
}

pub fn apply_k(v: &SparseVector, positions: [usize; 4]) -> Result<SparseVector> {
    apply_local(&KOperator, v, &positions)
}

pub fn apply_r(v: &SparseVector, positions: [usize; 3]) -> Result<SparseVector> {
    apply_local(&ROperator, v, &positions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(space: SpaceType, m: u32) -> SparseVector {
        SparseVector::basis(&BasisState::new(vec![m], vec![space]).unwrap())
    }

    #[test]
    fn generator_actions() {
        let v = apply_generator(Generator::Weight, &single(SpaceType::Q1, 3), 0).unwrap();
        assert_eq!(v.coeff(&[3]), LaurentQ::q_pow(3));
        let v = apply_generator(Generator::Weight2, &single(SpaceType::Q2, 2), 0).unwrap();
        assert_eq!(v.coeff(&[2]), LaurentQ::q_pow(4));
        assert!(
            apply_generator(Generator::Lower, &single(SpaceType::Q1, 0), 0)
                .unwrap()
                .is_zero()
        );
        assert!(
            apply_generator(Generator::Lower2, &single(SpaceType::Q2, 0), 0)
                .unwrap()
                .is_zero()
        );
        assert!(apply_generator(Generator::Raise2, &single(SpaceType::Q1, 0), 0).is_err());
    }

    #[test]
    fn oscillator_products() {
        for (space, up, down) in [
            (SpaceType::Q1, Generator::Raise, Generator::Lower),
            (SpaceType::Q2, Generator::Raise2, Generator::Lower2),
        ] {
            let base = space.base();
            for m in 0..=10u32 {
                let v = single(space, m);
                let ud = apply_generator(up, &apply_generator(down, &v, 0).unwrap(), 0).unwrap();
                let du = apply_generator(down, &apply_generator(up, &v, 0).unwrap(), 0).unwrap();
                let mi = i64::from(m);
                assert_eq!(ud.coeff(&[m]), LaurentQ::one_minus_q_pow(2 * base * mi));
                assert_eq!(
                    du.coeff(&[m]),
                    LaurentQ::one_minus_q_pow(2 * base * (mi + 1))
                );
            }
        }
    }

    #[test]
    fn signature_mismatch_is_rejected() {
        let v = SparseVector::basis(&BasisState::vacuum(vec![SpaceType::Q1; 4]));
        assert!(matches!(
            apply_k(&v, [0, 1, 2, 3]),
            Err(Error::Signature(_))
        ));
        assert!(apply_r(&v, [0, 1, 2]).is_ok());
    }

    #[test]
    fn corrupted_operator_drops_one_element() {
        let bad = Corrupted::zeroed(ROperator, vec![1, 0, 1], vec![0, 1, 0]);
        let mut outs = Vec::new();
        bad.for_each_output(&[0, 1, 0], &mut |o, v| outs.push((o.to_vec(), v.clone())));
        assert_eq!(
            outs,
            vec![(vec![0, 1, 0], LaurentQ::monomial((-1).into(), 1))]
        );
    }
}
