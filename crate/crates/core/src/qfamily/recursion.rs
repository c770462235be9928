//! One-step recursions for Q_{b,c} and for its dual in `p = q^{-1}`.
//!
//! Every function takes the already computed lower member and returns the
//! target `(b, c)`; shifts are written as q-exponents applied to `(x,y,z,w)`.

use crate::multipoly::{W, X, Y, Z};
use crate::QPoly;

fn v(i: usize) -> QPoly {
    QPoly::var(i)
}

fn v_minus_one(i: usize) -> QPoly {
    QPoly::var(i) - QPoly::one()
}

/// Q_{b,c} from Q_{b-1,c}.
pub fn step_b(prev: &QPoly, b: i64, c: i64) -> QPoly {
    let (x, y, z, w) = (v(X), v(Y), v(Z), v(W));
    let t1 =
        (&w * &y * v_minus_one(Z)).mul_q_pow(4 * b + 8 * c - 4) * prev.shift_all([0, 0, -4, 0]);
    let t2 = (&w * &x * v_minus_one(Y) * &y * &z).mul_q_pow(4 * b + 4 * c - 4)
        * prev.shift_all([0, -2, 0, 0]);
    let t3 = (v_minus_one(W) * v_minus_one(Y)).mul_q_pow(6 * b + 8 * c - 6)
        * prev.shift_all([0, -2, 0, -2]);
    let t4 = (&w * v_minus_one(X) * &y * v_minus_one(Z)).mul_q_pow(4 * b + 8 * c - 4)
        * prev.shift_all([-4, 2, -4, 0]);
    let t5 = (v_minus_one(W) * v_minus_one(X) * &y).mul_q_pow(6 * b + 8 * c - 6)
        * prev.shift_all([-4, 0, 0, -2]);
    t1 + t2 + t3 + t4 + t5
}

/// Q_{b,c} from Q_{b,c-1}.
pub fn step_c(prev: &QPoly, b: i64, c: i64) -> QPoly {
    let (x, y, z, w) = (v(X), v(Y), v(Z), v(W));
    let wyz = &w * &y * &z;
    // q^{2(b+2c)} - q^2 wyz
    let tail = QPoly::q_pow(2 * (b + 2 * c)) - wyz.mul_q_pow(2);
    let t1 = -(&w * &w * &y * v_minus_one(Z) * &z).mul_q_pow(4 * b + 8 * c - 8)
        * prev.shift_all([0, 0, -4, 0]);
    let t2 = (&w * &x * v_minus_one(Y) * &z * &tail).mul_q_pow(4 * b + 4 * c - 6)
        * prev.shift_all([0, -2, 0, 0]);
    let t3 = -(v_minus_one(W) * &w * v_minus_one(Y) * &z).mul_q_pow(6 * b + 8 * c - 8)
        * prev.shift_all([0, -2, 0, -2]);
    let t4 = (&w * v_minus_one(X) * v_minus_one(Z) * &tail).mul_q_pow(4 * b + 8 * c - 10)
        * prev.shift_all([-4, 2, -4, 0]);
    let t5 = (v_minus_one(W) * v_minus_one(X) * &tail).mul_q_pow(6 * b + 8 * c - 10)
        * prev.shift_all([-4, 0, 0, -2]);
    t1 + t2 + t3 + t4 + t5
}

/// Dual member (coefficients in `p`) from the dual of Q_{b-1,c}.
pub fn dual_step_b(prev: &QPoly, b: i64, c: i64) -> QPoly {
    let (x, y, z, w) = (v(X), v(Y), v(Z), v(W));
    let t1 = (&w * &y * v_minus_one(Z)).mul_q_pow(2 * b - 2) * prev.shift_all([0, 0, 4, 0]);
    let t2 = (&w * &x * v_minus_one(Y) * &y * &z).mul_q_pow(2 * b + 4 * c - 2)
        * prev.shift_all([0, 2, 0, 0]);
    let t3 = v_minus_one(W) * v_minus_one(Y) * prev.shift_all([0, 2, 0, 2]);
    let t4 = (&w * v_minus_one(X) * &y * v_minus_one(Z)).mul_q_pow(2 * b - 2)
        * prev.shift_all([4, -2, 4, 0]);
    let t5 = v_minus_one(W) * v_minus_one(X) * &y * prev.shift_all([4, 0, 0, 2]);
    t1 + t2 + t3 + t4 + t5
}

/// Dual member (coefficients in `p`) from the dual of Q_{b,c-1}.
pub fn dual_step_c(prev: &QPoly, b: i64, c: i64) -> QPoly {
    let (x, y, z, w) = (v(X), v(Y), v(Z), v(W));
    let wyz = &w * &y * &z;
    // wyz p^{2(b+2c)} - p^2
    let tail = wyz.mul_q_pow(2 * (b + 2 * c)) - QPoly::q_pow(2);
    let last = QPoly::one() - wyz.mul_q_pow(2 * (b + 2 * c - 1));
    let t1 = -(&w * &w * &y * v_minus_one(Z) * &z).mul_q_pow(4 * b + 4 * c - 2)
        * prev.shift_all([0, 0, 4, 0]);
    let t2 = -(&w * &x * v_minus_one(Y) * &z * &tail).mul_q_pow(2 * b + 4 * c - 6)
        * prev.shift_all([0, 2, 0, 0]);
    let t3 = -(v_minus_one(W) * &w * v_minus_one(Y) * &z).mul_q_pow(2 * b + 4 * c - 2)
        * prev.shift_all([0, 2, 0, 2]);
    let t4 = -(&w * v_minus_one(X) * v_minus_one(Z) * &tail).mul_q_pow(2 * b - 2)
        * prev.shift_all([4, -2, 4, 0]);
    let t5 = v_minus_one(W) * v_minus_one(X) * last * prev.shift_all([4, 0, 0, 2]);
    t1 + t2 + t3 + t4 + t5
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_steps_from_unity() {
        let one = QPoly::one();
        let q10 = step_b(&one, 1, 0);
        assert_eq!(q10, QPoly::parse("w x y^2 z - w - x y + 1").unwrap());
        let q01 = step_c(&one, 0, 1);
        let expected =
            QPoly::parse("q^2 (w x y z - w z - x + 1) - w z (w x y^2 z - w - x y + 1)").unwrap();
        assert_eq!(q01, expected);
    }
}
