//! Narrow-window smoke runs of every registered relation check; the full
//! acceptance windows live in `acceptance.rs`.

use std::sync::Arc;

use num_bigint::BigInt;

use qcurrents::lattice::Lattice;
use qcurrents::relcheck::{config_for, registry, run_suite, CheckWindow};
use qcurrents::scalars::{BigRational, ScalarCtx};

fn run_all(lattice: &str, window: CheckWindow) {
    let cfg = config_for(
        Arc::new(Lattice::builtin(lattice).unwrap()),
        ScalarCtx::Symbolic,
        &window,
    );
    for (name, check) in registry() {
        let r = check.run(&cfg, &window).unwrap();
        println!(
            "{lattice:8} {name:16} {} cells={} ms={}",
            r.status, r.cells, r.millis
        );
        assert!(r.passed(), "{lattice}/{name}: {:?}", r.witness);
    }
}

#[test]
fn all_checks_pass_on_a1_small() {
    run_all("A1", CheckWindow::new(2, 2));
}

#[test]
fn all_checks_pass_on_a2_small() {
    run_all("A2", CheckWindow::new(2, 2));
}

#[test]
fn all_checks_pass_on_km2_a2_small() {
    run_all("KM2_a2", CheckWindow::new(2, 2));
}

#[test]
fn suites_pass_at_rational_specializations() {
    // specialization is a filter, never the verdict: suites that pass
    // symbolically must also pass at sampled rational points v0
    let window = CheckWindow::new(2, 2);
    for (p, q) in [(3, 2), (-2, 5), (7, 3)] {
        let ctx = ScalarCtx::numeric(BigRational::new(BigInt::from(p), BigInt::from(q))).unwrap();
        let cfg = config_for(
            Arc::new(Lattice::builtin("A1").unwrap()),
            ctx,
            &window,
        );
        for suite in ["ope", "lemma22", "lemma23", "thm24"] {
            for r in run_suite(&cfg, suite, &window).unwrap() {
                assert!(r.passed(), "v0={p}/{q} {suite}/{}: {:?}", r.id, r.witness);
            }
        }
    }
}
