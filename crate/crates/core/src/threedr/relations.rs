//! The fourteen q-difference equations satisfied by P_b.

use std::fmt;

use super::PFamily;
use crate::multipoly::{X, Y, Z};
use crate::report::{Failure, VerificationReport};
use crate::PPoly;

/// Each variant names the equation by its shape; `Display` gives a short id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PRelation {
    /// P_b(q²x,y,z) − P_b − q^{2−2b}x(1−q^{2b})(1−q^{2−2b}yz)P_{b−1}
    RaiseX,
    /// P_b(x,y,q²z) − P_b − q^{2−2b}z(1−q^{2b})(1−q^{2−2b}xy)P_{b−1}
    RaiseZ,
    /// (1−x)P_b(q^{−2}x,y,z) − q^{−2b}z(1−q^{−2b}xy)P_b − P_{b+1}
    LowerXStep,
    /// (1−z)P_b(x,y,q^{−2}z) − q^{−2b}x(1−q^{−2b}yz)P_b − P_{b+1}
    LowerZStep,
    /// P_b(x,q²y,z) − P_b + q^{4−4b}xyz(1−q^{2b})P_{b−1}
    RaiseY,
    /// yP_{b+1} + (1−y)P_b(x,q^{−2}y,z) − (1−q^{−2b}xy)(1−q^{−2b}yz)P_b
    LowerYStep,
    /// (y−q^{2b})P_b + (1−y)P_b(q²x,q^{−2}y,q²z) − (1−q^{2b})(1−q^{2−2b}xy)(1−q^{2−2b}yz)P_{b−1}
    DiagonalDown,
    /// P_b − q^{−2b}zP_b(q²x,y,z) − (1−z)P_b(x,q²y,q^{−2}z)
    InverseXZ,
    /// P_b − q^{−2b}xP_b(x,y,q²z) − (1−x)P_b(q^{−2}x,q²y,z)
    InverseZX,
    /// q^{−2b}x(1−y)P_b(x,q^{−2}y,q²z) + (1−x)P_b(q^{−2}x,y,z) − (1−q^{−2b}xy)P_b
    InverseMixX,
    /// q^{−2b}z(1−y)P_b(q²x,q^{−2}y,z) + (1−z)P_b(x,y,q^{−2}z) − (1−q^{−2b}yz)P_b
    InverseMixZ,
    /// (1−q^{2b})P_{b−1} − P_b(q²x,y,q²z) + q^{2b}P_b(x,q²y,z)
    InverseOuter,
    /// q^{−2b}xz(1−y)P_b(x,q^{−2}y,z) − (1−x)(1−z)P_b(q^{−2}x,y,q^{−2}z) + P_{b+1}
    OuterStep,
    /// P_{b+1} − (1−x)(1−z)P_b(q^{−2}x,q²y,q^{−2}z) − xzq^{−4b}(y−q^{2b})P_b
    CentralStep,
}

impl PRelation {
    pub const ALL: [PRelation; 14] = [
        PRelation::RaiseX,
        PRelation::RaiseZ,
        PRelation::LowerXStep,
        PRelation::LowerZStep,
        PRelation::RaiseY,
        PRelation::LowerYStep,
        PRelation::DiagonalDown,
        PRelation::InverseXZ,
        PRelation::InverseZX,
        PRelation::InverseMixX,
        PRelation::InverseMixZ,
        PRelation::InverseOuter,
        PRelation::OuterStep,
        PRelation::CentralStep,
    ];

    /// Pairs exchanged by swapping x and z.
    pub const MIRROR_PAIRS: [(PRelation, PRelation); 4] = [
        (PRelation::RaiseX, PRelation::RaiseZ),
        (PRelation::LowerXStep, PRelation::LowerZStep),
        (PRelation::InverseXZ, PRelation::InverseZX),
        (PRelation::InverseMixX, PRelation::InverseMixZ),
    ];

    /// Left side of the equation for explicit P_{b-1}, P_b, P_{b+1}; zero
    /// when the equation holds.
    pub fn residual(self, b: i64, prev: &PPoly, cur: &PPoly, next: &PPoly) -> PPoly {
        let (x, y, z) = (PPoly::var(X), PPoly::var(Y), PPoly::var(Z));
        let om = |p: &PPoly| PPoly::one() - p;
        let q = PPoly::q_pow;
        let s = |dx: i64, dy: i64, dz: i64| cur.shift_all([dx, dy, dz]);
        let xy = &x * &y;
        let yz = &y * &z;
        let xz = &x * &z;
        match self {
            PRelation::RaiseX => {
                s(2, 0, 0)
                    - cur
                    - (&x * q(2 - 2 * b) * om(&q(2 * b)) * om(&yz.mul_q_pow(2 - 2 * b)) * prev)
            }
            PRelation::RaiseZ => {
                s(0, 0, 2)
                    - cur
                    - (&z * q(2 - 2 * b) * om(&q(2 * b)) * om(&xy.mul_q_pow(2 - 2 * b)) * prev)
            }
            PRelation::LowerXStep => {
                om(&x) * s(-2, 0, 0) - (&z * q(-2 * b) * om(&xy.mul_q_pow(-2 * b)) * cur) - next
            }
            PRelation::LowerZStep => {
                om(&z) * s(0, 0, -2) - (&x * q(-2 * b) * om(&yz.mul_q_pow(-2 * b)) * cur) - next
            }
            PRelation::RaiseY => {
                s(0, 2, 0) - cur + (&xy * &z * q(4 - 4 * b) * om(&q(2 * b)) * prev)
            }
            PRelation::LowerYStep => {
                &y * next + om(&y) * s(0, -2, 0)
                    - om(&xy.mul_q_pow(-2 * b)) * om(&yz.mul_q_pow(-2 * b)) * cur
            }
            PRelation::DiagonalDown => {
                (&y - q(2 * b)) * cur + om(&y) * s(2, -2, 2)
                    - om(&q(2 * b))
                        * om(&xy.mul_q_pow(2 - 2 * b))
                        * om(&yz.mul_q_pow(2 - 2 * b))
                        * prev
            }
            PRelation::InverseXZ => cur - z.mul_q_pow(-2 * b) * s(2, 0, 0) - om(&z) * s(0, 2, -2),
            PRelation::InverseZX => cur - x.mul_q_pow(-2 * b) * s(0, 0, 2) - om(&x) * s(-2, 2, 0),
            PRelation::InverseMixX => {
                x.mul_q_pow(-2 * b) * om(&y) * s(0, -2, 2) + om(&x) * s(-2, 0, 0)
                    - om(&xy.mul_q_pow(-2 * b)) * cur
            }
            PRelation::InverseMixZ => {
                z.mul_q_pow(-2 * b) * om(&y) * s(2, -2, 0) + om(&z) * s(0, 0, -2)
                    - om(&yz.mul_q_pow(-2 * b)) * cur
            }
            PRelation::InverseOuter => {
                om(&q(2 * b)) * prev - s(2, 0, 2) + s(0, 2, 0).mul_q_pow(2 * b)
            }
            PRelation::OuterStep => {
                xz.mul_q_pow(-2 * b) * om(&y) * s(0, -2, 0) - om(&x) * om(&z) * s(-2, 0, -2) + next
            }
            PRelation::CentralStep => {
                next - om(&x) * om(&z) * s(-2, 2, -2) - xz.mul_q_pow(-4 * b) * (&y - q(2 * b)) * cur
            }
        }
    }

    pub fn id(self) -> usize {
        Self::ALL.iter().position(|r| *r == self).unwrap() + 1
    }
}

impl fmt::Display for PRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P-relation {:02} ({:?})", self.id(), self)
    }
}

/// Checks all fourteen equations on explicitly supplied P_{b-1}, P_b, P_{b+1}.
pub fn check_relations_with(b: i64, prev: &PPoly, cur: &PPoly, next: &PPoly) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("P relations b={b}"));
    for rel in PRelation::ALL {
        let res = rel.residual(b, prev, cur, next);
        rep.record(res.is_zero(), || Failure {
            location: rel.to_string(),
            lhs: res.to_string(),
            rhs: "0".into(),
        });
    }
    rep
}

/// All fourteen equations at `b`, plus the x <-> z symmetry and the
/// denominator bound q^{2b(b-1)} P_b in Z[q^2, x, y, z].
pub fn verify_p_relations(fam: &PFamily, b: i64) -> VerificationReport {
    let cur = fam.get(b);
    let mut rep = check_relations_with(b, &fam.get(b - 1), &cur, &fam.get(b + 1));
    rep.record_eq(
        || format!("P_{b}(x,y,z) = P_{b}(z,y,x)"),
        cur.as_ref(),
        &cur.swap_vars(X, Z),
    );
    let shifted = cur.mul_q_pow(2 * b * (b - 1));
    let ok = shifted
        .terms()
        .all(|(_, c)| c.iter().all(|(e, _)| e >= 0 && e % 2 == 0));
    rep.record(ok, || Failure {
        location: format!("q^{{2b(b-1)}} P_{b} in Z[q^2]"),
        lhs: shifted.to_string(),
        rhs: String::new(),
    });
    rep
}

/// Checks that swapping x and z maps each mirror pair onto each other for
/// arbitrary (not necessarily symmetric) inputs.
pub fn verify_mirror_pairs(b: i64, prev: &PPoly, cur: &PPoly, next: &PPoly) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("mirror pairs b={b}"));
    let sw = |p: &PPoly| p.swap_vars(X, Z);
    for (l, r) in PRelation::MIRROR_PAIRS {
        let lhs = sw(&l.residual(b, prev, cur, next));
        let rhs = r.residual(b, &sw(prev), &sw(cur), &sw(next));
        rep.record_eq(|| format!("{l} vs {r}"), &lhs, &rhs);
    }
    rep
}
