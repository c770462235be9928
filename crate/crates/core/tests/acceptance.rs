//! Exit gate: eleven criteria, one PASS/FAIL line each. Exact comparisons only.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use tetraref::golden;
use tetraref::qfamily::{self, QFamily, QIndex};
use tetraref::tensorops::{self, Corrupted, KOperator, ROperator, REFLECTION_SIGNATURE};
use tetraref::threedk::{self, Label};
use tetraref::threedr::{self, PFamily};
use tetraref::VerificationReport;

struct Outcome {
    passed: bool,
    detail: String,
    fatal: bool,
}

fn from_report(rep: &VerificationReport) -> Outcome {
    Outcome {
        passed: rep.passed,
        detail: rep.to_string(),
        fatal: true,
    }
}

fn within(o: Outcome, elapsed: Duration, budget: Duration) -> Outcome {
    if elapsed <= budget {
        return o;
    }
    Outcome {
        passed: false,
        detail: format!("{} (took {elapsed:.2?}, budget {budget:.0?})", o.detail),
        fatal: o.fatal,
    }
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let o = f();
    within(o, start.elapsed(), budget)
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn golden_q() -> Outcome {
    timed(secs(1), || {
        from_report(&golden::check_q_members(&QFamily::new()).unwrap())
    })
}

fn golden_k() -> Outcome {
    timed(secs(5), || {
        from_report(&golden::check_k_row(&QFamily::new()).unwrap())
    })
}

fn k_routes() -> Outcome {
    timed(secs(120), || {
        let rep = threedk::verify_routes(&QFamily::new(), 3, 5);
        from_report(&rep)
    })
}

fn closed_form() -> Outcome {
    timed(secs(600), || {
        let fam = QFamily::new();
        let mut rep = VerificationReport::new("closed form = recursion = dual, b+c<=5");
        for b in 0..=5i64 {
            for c in 0..=5 - b {
                let idx = QIndex::new(b as u32, c as u32);
                let rec = fam.compute_q(idx);
                let cf = qfamily::closed_form_q(b, c).unwrap();
                rep.record_eq(|| format!("closed form {idx}"), &cf, rec.as_ref());
                let mut dual = tetraref::QPoly::one();
                for cc in 1..=c {
                    dual = qfamily::dual_step_c(&dual, 0, cc);
                }
                for bb in 1..=b {
                    dual = qfamily::dual_step_b(&dual, bb, c);
                }
                let back = dual.invert_q().mul_q_pow(qfamily::phi_bc(b, c));
                rep.record_eq(|| format!("dual {idx}"), &back, rec.as_ref());
            }
        }
        from_report(&rep)
    })
}

fn propositions() -> Outcome {
    let fam = QFamily::new();
    let mut rep = VerificationReport::new("support, degree, limits, specializations, b+c<=5");
    for b in 0..=5 {
        for c in 0..=5 - b {
            rep.absorb(qfamily::check_structure(&fam, b, c));
            rep.absorb(qfamily::check_specializations(&fam, b, c));
        }
    }
    from_report(&rep)
}

fn e_identities() -> Outcome {
    from_report(&threedk::verify_all_e(&QFamily::new(), 3))
}

fn intertwiners() -> Outcome {
    let rep = tensorops::intertwiner_suite(&Label::OPERATOR, 2).unwrap();
    let mut o = from_report(&rep);
    if rep.checked != 15 * 81 {
        o.passed = false;
        o.detail.push_str(" (wrong number of checks)");
    }
    o
}

fn r_suite() -> Outcome {
    let fam = PFamily::new();
    let mut rep = VerificationReport::new("R suite");
    for b in 0..=6 {
        let p = threedr::verify_p_relations(&fam, b);
        if b <= 5 {
            rep.absorb(p);
        } else {
            let cur = fam.get(b);
            rep.record_eq(|| "P_6 symmetry".into(), cur.as_ref(), &cur.swap_vars(0, 2));
        }
    }
    for b in 0..=5u32 {
        rep.record_eq(
            || format!("2phi1 P_{b}"),
            &threedr::hypergeometric_p(b),
            fam.compute_p(b).as_ref(),
        );
    }
    for i in 0..3 {
        for (j, k) in [(0, 0), (1, 2), (2, 1)] {
            rep.absorb(threedr::verify_generating_series(&fam, i, j, k, 6).unwrap());
        }
    }
    rep.absorb(threedr::verify_routes(&fam, 4, 4));
    rep.absorb(threedr::r_squared_report(&fam, 4).unwrap());
    from_report(&rep)
}

fn tetrahedron() -> Outcome {
    timed(secs(300), || {
        let rep = tensorops::tetrahedron_suite(&ROperator, 1);
        let mut o = from_report(&rep);
        o.passed &= rep.checked == 64;
        o
    })
}

fn reflection() -> Outcome {
    timed(secs(1800), || {
        let units = tensorops::states_with_units(&REFLECTION_SIGNATURE, 2);
        let sample = tensorops::reflection_sample(64, 2024);
        let a = tensorops::reflection_suite(&ROperator, &KOperator, "two units", &units);
        let b = tensorops::reflection_suite(&ROperator, &KOperator, "64 seeded samples", &sample);
        let bad = Corrupted::zeroed(KOperator, vec![1, 0, 0, 1], vec![0, 1, 0, 0]);
        let control = tensorops::reflection_suite(&ROperator, &bad, "corrupted K", &units);
        Outcome {
            passed: a.passed && b.passed && !control.passed,
            detail: format!(
                "{}; {}; negative control {}",
                a.summary(),
                b.summary(),
                if control.passed {
                    "NOT detected"
                } else {
                    "detected"
                }
            ),
            fatal: true,
        }
    })
}

fn conjecture() -> Outcome {
    let checks = qfamily::conjecture_report(4).unwrap();
    let bad: Vec<_> = checks.iter().filter(|c| !c.holds()).collect();
    Outcome {
        passed: bad.is_empty(),
        detail: format!(
            "{}/{} support points with C in Z[q^2] and constant term 1 (report only)",
            checks.len() - bad.len(),
            checks.len()
        ),
        fatal: false,
    }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("printed Q members", golden_q),
        ("printed K^{3,1,0,2} row and quotients", golden_k),
        ("K primary vs dual, m<=3, n<=5", k_routes),
        ("closed form = recursion = dual, b+c<=5", closed_form),
        ("support, degree, limits, specializations", propositions),
        ("fourteen E equations, b,c<=3", e_identities),
        ("fifteen K intertwiners, occupations<=2", intertwiners),
        ("R suite", r_suite),
        ("tetrahedron equation, 64 states", tetrahedron),
        ("3D reflection equation", reflection),
        ("closed-form coefficient conjecture, b+c<=4", conjecture),
    ];
    let mut fatal_failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let status = match (o.passed, o.fatal) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "FAIL (non-fatal)",
        };
        if !o.passed && o.fatal {
            fatal_failures += 1;
        }
        println!(
            "criterion {:>2} {status}: {name} [{:.2?}]",
            i + 1,
            start.elapsed()
        );
        if !o.passed || std::env::var_os("ACCEPTANCE_VERBOSE").is_some() {
            println!("    {}", o.detail.replace('\n', "\n    "));
        }
    }
    if fatal_failures == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{fatal_failures} criteria failed");
        ExitCode::FAILURE
    }
}
