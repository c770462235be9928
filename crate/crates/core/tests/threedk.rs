use tetraref::qfamily::QFamily;
use tetraref::threedk::*;
use tetraref::{LaurentQ, QPoly};

fn lq(src: &str) -> LaurentQ {
    QPoly::parse(src).unwrap().coeff(&[0; 4])
}

fn printed_block() -> Vec<([u32; 4], &'static str)> {
    vec![
        ([1, 3, 0, 0], "-q^6(1-q+q^2)(1+q+q^2)"),
        ([2, 1, 1, 0], "-q^10(1-q+q^2)(1+q+q^2)"),
        ([2, 2, 0, 1], "(1+q^2)(1-q^2+q^4-q^6+q^8-q^10-q^14)"),
        ([3, 0, 1, 1], "q^6(1+q^2)(1-q^2+q^4-q^6+q^8-q^10-q^14)"),
        ([3, 1, 0, 2], "q^6(1+q^2-q^14-q^16-q^18)"),
        ([4, 0, 0, 3], "q^14(1-q+q^2)(1+q+q^2)(1-q^16)"),
    ]
}

#[test]
fn printed_row_of_block_4_3() {
    let fam = QFamily::new();
    let out = [3, 1, 0, 2];
    let printed = printed_block();
    let states = block_states(4, 3);
    assert!(states.contains(&out));
    for inp in states {
        let v = k_element(&fam, &KElementKey::new(out, inp), &KRoute::BOTH).unwrap();
        match printed.iter().find(|(s, _)| *s == inp) {
            Some((_, src)) => assert_eq!(v, lq(src), "{inp:?}"),
            None => assert!(v.is_zero(), "{inp:?} gave {v}"),
        }
    }
}

#[test]
fn routes_agree_on_small_blocks() {
    let fam = QFamily::new();
    let rep = verify_routes(&fam, 3, 5);
    assert!(rep.passed, "{rep}");
    assert!(rep.checked > 100);
}

#[test]
fn transpose_identity_on_small_blocks() {
    let fam = QFamily::new();
    for m in 0..=3 {
        for n in 0..=4 {
            let states = block_states(m, n);
            for a in &states {
                for b in &states {
                    let rep = check_transpose(&fam, &KElementKey::new(*a, *b));
                    assert!(rep.passed, "{rep}");
                }
            }
        }
    }
}

#[test]
fn difference_equations_vanish() {
    let fam = QFamily::new();
    let rep = verify_all_e(&fam, 3);
    assert!(rep.passed, "{rep}");
    assert_eq!(rep.checked, 14 * 16);
}

#[test]
fn perturbed_member_breaks_an_equation() {
    let fam = QFamily::new();
    let good = fam.compute_q(tetraref::qfamily::QIndex::new(1, 1));
    fam.insert(
        tetraref::qfamily::QIndex::new(1, 1),
        (*good).clone() + QPoly::parse("q^2 x").unwrap(),
    );
    let rep = verify_all_e(&fam, 1);
    assert!(!rep.passed);
}

#[test]
fn element_recursion_on_blocks() {
    let fam = QFamily::new();
    for m in 0..=3 {
        for n in 0..=4 {
            for inp in block_states(m, n) {
                for out in block_states(m, n.saturating_sub(1)) {
                    if n == 0 {
                        continue;
                    }
                    let rep = verify_element_recursion(&fam, out, inp);
                    assert!(rep.passed, "{rep}");
                }
            }
        }
    }
}

#[test]
fn labels_parse() {
    assert_eq!("E35".parse::<Label>().unwrap(), Label::new(3, 5));
    assert!(e_residual(&QFamily::new(), Label::new(2, 5), 0, 0).is_err());
}
