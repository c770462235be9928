use proptest::prelude::*;
use tetraref::threedr::*;
use tetraref::{LaurentQ, PPoly};

#[test]
fn fourteen_relations_hold() {
    let fam = PFamily::new();
    for b in 0..=5 {
        let rep = verify_p_relations(&fam, b);
        assert!(rep.passed, "{rep}");
        assert_eq!(rep.checked, 16);
    }
}

#[test]
fn corrupted_member_is_caught_with_relation_name() {
    let fam = PFamily::new();
    let mut bad = (*fam.compute_p(3)).clone();
    bad = bad + PPoly::parse("q^2 x y").unwrap();
    let rep = check_relations_with(3, &fam.get(2), &bad, &fam.get(4));
    assert!(!rep.passed);
    let fail = rep.first_failure.unwrap();
    assert!(fail.location.starts_with("P-relation"), "{}", fail.location);
}

#[test]
fn symmetric_and_bounded_denominators() {
    let fam = PFamily::new();
    for b in 0..=6 {
        let p = fam.get(b);
        assert_eq!(*p, p.swap_vars(0, 2), "b={b}");
        let lifted = p.mul_q_pow(2 * b * (b - 1));
        assert!(lifted
            .terms()
            .all(|(_, c)| c.iter().all(|(e, _)| e >= 0 && e % 2 == 0)));
    }
}

#[test]
fn terminating_series_matches_recursion() {
    let fam = PFamily::new();
    assert_eq!(
        hypergeometric_p(1),
        PPoly::parse("(1-z)(1-x)+x z(y-1)").unwrap()
    );
    for b in 0..=5 {
        assert_eq!(hypergeometric_p(b), *fam.compute_p(b), "b={b}");
    }
}

#[test]
fn generating_series_on_grid() {
    let fam = PFamily::new();
    for i in 0..3 {
        for (j, k) in [(0, 0), (1, 2), (2, 1)] {
            let rep = verify_generating_series(&fam, i, j, k, 6).unwrap();
            assert!(rep.passed, "{rep}");
        }
    }
    let rep = verify_generating_series(&fam, 1, 2, 1, 0).unwrap();
    assert!(rep.passed && rep.checked == 1);
}

#[test]
fn three_routes_agree() {
    let fam = PFamily::new();
    let rep = verify_routes(&fam, 4, 4);
    assert!(rep.passed, "{rep}");
}

#[test]
fn involution_on_blocks() {
    let fam = PFamily::new();
    let rep = r_squared_report(&fam, 4).unwrap();
    assert!(rep.passed, "{rep}");
}

#[test]
fn column_respects_weights() {
    for inp in [[0, 1, 0], [2, 1, 3], [1, 0, 1]] {
        for (out, v) in r_column(inp).iter() {
            assert!(!v.is_zero());
            assert_eq!(out[0] + out[1], inp[0] + inp[1]);
            assert_eq!(out[1] + out[2], inp[1] + inp[2]);
        }
    }
    let col = r_column([0, 1, 0]);
    let expect = vec![
        ([0, 1, 0], LaurentQ::monomial((-1).into(), 1)),
        ([1, 0, 1], LaurentQ::one()),
    ];
    assert_eq!(*col, expect);
}

fn small_poly() -> impl Strategy<Value = PPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..3), -3i64..4, -2i32..3), 0..5).prop_map(
        |terms| {
            PPoly::from_terms(
                terms
                    .into_iter()
                    .map(|((a, b, c), e, k)| ([a, b, c], LaurentQ::from_int(k).mul_q_pow(e))),
            )
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn mirror_pairs_swap_into_each_other(b in 0i64..4, p in small_poly(), c in small_poly(), n in small_poly()) {
        let rep = verify_mirror_pairs(b, &p, &c, &n);
        prop_assert!(rep.passed, "{}", rep);
    }
}
