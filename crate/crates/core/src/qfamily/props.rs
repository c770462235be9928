use super::{closed_form_q, in_support, phi_bc, QFamily, QIndex};
use crate::multipoly::{W, X, Y, Z};
use crate::report::{Failure, VerificationReport};
use crate::QPoly;

fn sign(c: i64) -> QPoly {
    if c % 2 == 0 {
        QPoly::one()
    } else {
        -QPoly::one()
    }
}

/// `prod_{j < n} (v - q^{step*j})`.
fn falling(var: usize, step: i64, n: i64) -> QPoly {
    (0..n).fold(QPoly::one(), |acc, j| {
        acc * (QPoly::var(var) - QPoly::q_pow(step * j))
    })
}

fn mono(exps: [u32; 4]) -> QPoly {
    QPoly::monomial(exps, crate::LaurentQ::one())
}

/// The two limits q -> 0, q -> infinity and the three specializations at
/// unit values of pairs of variables.
pub fn check_specializations(fam: &QFamily, b: i64, c: i64) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("specializations Q_{{{b},{c}}}"));
    let Some(idx) = QIndex::checked(b, c) else {
        rep.record_error("index", "negative index");
        return rep;
    };
    let q = fam.compute_q(idx);
    let phi = phi_bc(b, c);
    let (bu, cu) = (b as u32, c as u32);
    if (b, c) != (0, 0) {
        match q.q_degree_range() {
            Ok(range) => rep.record(range == (0, phi), || Failure {
                location: "q-degree range".into(),
                lhs: format!("{range:?}"),
                rhs: format!("{:?}", (0, phi)),
            }),
            Err(e) => rep.record_error("q-degree range", e),
        }
        let low = q.q_coefficient(0);
        let xy2 = bu + cu - 1;
        let zw = bu + 2 * cu - 1;
        let expected_low =
            sign(c) * mono([xy2, 2 * xy2, zw, zw]) * fam.compute_q(QIndex::new(1, 0)).as_ref();
        rep.record_eq(|| "limit q -> 0".into(), &low, &expected_low);

        let top = q.q_coefficient(phi);
        let d = |cond: bool| cond as u32;
        let expected_top = QPoly::one() - mono([1, d(c == 0), 0, 0]) - mono([0, 0, d(b == 0), 1])
            + mono([
                1,
                d(c == 0) + d(b + c == 1),
                d(b == 0) + d(b == 1) * d(c == 0),
                1,
            ]);
        rep.record_eq(|| "limit q -> infinity".into(), &top, &expected_top);
    }

    let lhs = q.substitute_var(Y, 0).substitute_var(Z, 0);
    let rhs = sign(c) * falling(X, 4, b + c) * falling(W, 2, b + 2 * c);
    rep.record_eq(|| "Q(x,1,1,w)".into(), &lhs, &rhs);

    let lhs = q.substitute_var(Z, 0).substitute_var(W, 0);
    let rhs = sign(c) * mono([bu + cu, bu, 0, 0]) * falling(Y, 2, b + 2 * c);
    rep.record_eq(|| "Q(x,y,1,1)".into(), &lhs, &rhs);

    let lhs = q.substitute_var(X, 0).substitute_var(Y, 0);
    let rhs = sign(c) * mono([0, 0, cu, bu + 2 * cu]) * falling(Z, 4, b + c);
    rep.record_eq(|| "Q(1,1,z,w)".into(), &lhs, &rhs);
    rep
}

/// Support, parity and degree bounds plus agreement of the four
/// independent constructions (both recursion orders, dual, closed form).
pub fn check_structure(fam: &QFamily, b: i64, c: i64) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("structure Q_{{{b},{c}}}"));
    let Some(idx) = QIndex::checked(b, c) else {
        rep.record_error("index", "negative index");
        return rep;
    };
    let q = fam.compute_q(idx);
    let phi = phi_bc(b, c);
    for (exp, coeff) in q.terms() {
        let quad = exp.map(|e| e as i64);
        rep.record(in_support(b, c, quad), || Failure {
            location: format!("monomial {exp:?}"),
            lhs: "outside support set".into(),
            rhs: String::new(),
        });
        let ok = coeff
            .iter()
            .all(|(e, _)| e % 2 == 0 && (0..=phi).contains(&e));
        rep.record(ok, || Failure {
            location: format!("coefficient of {exp:?}"),
            lhs: coeff.to_string(),
            rhs: format!("even powers within [0, {phi}]"),
        });
    }
    rep.record_eq(
        || "alternate recursion order".into(),
        q.as_ref(),
        &fam.compute_q_alternate(idx),
    );
    let dual = fam.compute_q_dual(idx);
    rep.record(dual.is_ok(), || Failure {
        location: "dual recursion".into(),
        lhs: dual.err().map(|e| e.to_string()).unwrap_or_default(),
        rhs: String::new(),
    });
    match closed_form_q(b, c) {
        Ok(cf) => rep.record_eq(|| "closed form".into(), q.as_ref(), &cf),
        Err(e) => rep.record_error("closed form", e),
    }
    rep
}

/// Every structural and specialization check for `b + c <= max_bc`.
pub fn check_up_to(fam: &QFamily, max_bc: i64) -> VerificationReport {
    let mut rep = VerificationReport::new(format!("Q properties b+c<={max_bc}"));
    for b in 0..=max_bc {
        for c in 0..=max_bc - b {
            rep.absorb(check_structure(fam, b, c));
            rep.absorb(check_specializations(fam, b, c));
        }
    }
    rep
}
