//! Integer exponent bookkeeping shared by the K formulas and the closed form
//! of Q_{b,c}.

/// Exact q-degree of Q_{b,c}: `3b(b-1) + 2c(3c-2) + 8bc`.
pub fn phi_bc(b: i64, c: i64) -> i64 {
    3 * b * (b - 1) + 2 * c * (3 * c - 2) + 8 * b * c
}

/// Exponent of the K matrix element prefactor; symmetric under exchanging
/// the output indices `(a,b,c,d)` with the input indices `(i,j,k,l)`.
pub fn phi_k(out: [i64; 4], inp: [i64; 4]) -> i64 {
    let [a, b, c, d] = out;
    let [i, j, k, l] = inp;
    (a - k) * (d - j) + (b - l) * (c - i) - 2 * (b - j) * (c - k)
}

/// Monomial exponent in the closed form of Q_{b,c}.
pub fn phi_q(b: i64, c: i64, r: i64, s: i64, t: i64, u: i64) -> i64 {
    let m = s - 2 * t + u;
    m * m + 2 * r * (r + 2 * t + 1) - (2 * b - 1) * (s + u) - 4 * c * (r + t)
}

/// Exponent of the `(alpha, beta, gamma)` summand of C^{b,c}_{r,s,t,u}.
pub fn phi_c(alpha: i64, beta: i64, gamma: i64, b: i64, r: i64, t: i64) -> i64 {
    alpha * (alpha + 1 + 2 * t)
        + beta * (beta - 1 - 2 * alpha + 2 * b - 4 * r)
        + gamma * (gamma - 1 - 4 * r)
}

/// `s(4r - s + 1)`.
pub fn psi(r: i64, s: i64) -> i64 {
    s * (4 * r - s + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrees_of_printed_examples() {
        assert_eq!(phi_bc(0, 0), 0);
        assert_eq!(phi_bc(1, 0), 0);
        assert_eq!(phi_bc(0, 1), 2);
        assert_eq!(phi_bc(2, 0), 6);
        assert_eq!(phi_bc(1, 1), 10);
    }

    #[test]
    fn phi_k_is_transpose_symmetric() {
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    for d in 0..3 {
                        let out = [a, b, c, d];
                        let inp = [d, c, a, b];
                        assert_eq!(phi_k(out, inp), phi_k(inp, out));
                    }
                }
            }
        }
    }
}
