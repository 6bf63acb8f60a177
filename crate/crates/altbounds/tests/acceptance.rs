//! Acceptance suite: the ten gate checks for this crate, one test per
//! criterion, each printing a single pass/fail line (visible under
//! `cargo test -- --nocapture`).  Heavy checks serialize on a mutex so the
//! wall-clock budgets mean what they say.

use altbounds::altforms::{count_rank, space_size, RankDistribution};
use altbounds::gf::FieldSpec;
use altbounds::bounds::{
    self, code_anticode_dim, delsarte_lp, hoffman, perfectness_check, ratio_general_lp, ratio_k2,
    ratio_k3, singleton_like, total_distance, Applicability, Perfectness,
};
use altbounds::oracle::{
    self, build_graph, closed_walks, exact_alpha_k, verify_distance_regularity,
    verify_geodesic_rank, verify_spectrum, CheckStatus,
};
use altbounds::spectra::{self, diameter, spectrum};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use std::panic::{catch_unwind, resume_unwind, UnwindSafe};
use std::sync::Mutex;
use std::time::{Duration, Instant};

static HEAVY: Mutex<()> = Mutex::new(());

fn report(label: &str, body: impl FnOnce() + UnwindSafe) {
    let outcome = catch_unwind(body);
    match &outcome {
        Ok(()) => println!("{label}: pass"),
        Err(_) => println!("{label}: FAIL"),
    }
    if let Err(e) = outcome {
        resume_unwind(e);
    }
}

fn within(budget: Duration, started: Instant, label: &str) {
    let took = started.elapsed();
    assert!(
        took <= budget,
        "{label} took {took:?}, budget {budget:?}"
    );
}

const Q_GRID: [u64; 4] = [2, 3, 4, 5];

#[test]
fn c01_hoffman_equals_singleton_on_the_grid() {
    report("criterion 01 distance-4 equivalence", || {
        let started = Instant::now();
        for n in 4..=12 {
            for q in Q_GRID {
                let h = hoffman(q, n).unwrap();
                let s = singleton_like(q, n, 2).unwrap();
                assert_eq!(
                    h.exact,
                    BigRational::from_integer(BigInt::from(s.clone())),
                    "exact value at n={n} q={q}"
                );
                assert_eq!(h.floored, s, "floored value at n={n} q={q}");
            }
        }
        within(Duration::from_secs(1), started, "distance-4 grid");
    });
}

#[test]
fn c02_ratio_k2_equals_singleton_on_the_grid() {
    report("criterion 02 distance-6 equivalence", || {
        let started = Instant::now();
        for n in 6..=12 {
            for q in Q_GRID {
                let r = ratio_k2(q, n).unwrap();
                let s = singleton_like(q, n, 3).unwrap();
                assert_eq!(
                    r.exact,
                    BigRational::from_integer(BigInt::from(s.clone())),
                    "exact value at n={n} q={q}"
                );
                assert_eq!(r.floored, s, "floored value at n={n} q={q}");
            }
        }
        within(Duration::from_secs(1), started, "distance-6 grid");
    });
}

#[test]
fn c03_ratio_k3_equals_singleton_on_the_grid() {
    report("criterion 03 distance-8 equivalence", || {
        let started = Instant::now();
        for n in 8..=12 {
            for q in Q_GRID {
                // ratio_k3 itself asserts the located split index is
                // floor(n/2) - 2, so calling it covers the index claim.
                let r = ratio_k3(q, n).unwrap();
                let s = singleton_like(q, n, 4).unwrap();
                assert_eq!(
                    r.exact,
                    BigRational::from_integer(BigInt::from(s.clone())),
                    "exact value at n={n} q={q}"
                );
            }
        }
        within(Duration::from_secs(1), started, "distance-8 grid");
    });
}

#[test]
fn c04_minor_lp_coincides_with_delsarte_lp() {
    report("criterion 04 LP coincidence", || {
        let _lock = HEAVY.lock().unwrap_or_else(|e| e.into_inner());
        let started = Instant::now();
        for n in 4..=10usize {
            for q in [2u64, 3] {
                for d in 2..=diameter(n) {
                    let minor = ratio_general_lp(q, n, d - 1).unwrap();
                    let dels = delsarte_lp(q, n, d).unwrap();
                    assert_eq!(
                        minor.exact, dels.exact,
                        "LP optima differ at q={q} n={n} d={d}"
                    );
                }
            }
        }
        within(Duration::from_secs(30), started, "LP coincidence grid");
    });
}

#[test]
fn c05_oracle_structural_suite() {
    report("criterion 05 oracle structural suite", || {
        let _lock = HEAVY.lock().unwrap_or_else(|e| e.into_inner());
        let started = Instant::now();
        for (n, q) in [(2usize, 2u64), (3, 2), (4, 2), (3, 3), (4, 3), (5, 2)] {
            let g = build_graph(n, q).unwrap();
            assert_eq!(
                BigUint::from(g.degree()),
                count_rank(n, q, 2),
                "degree at n={n} q={q}"
            );
            assert!(
                verify_geodesic_rank(&g).passed,
                "geodesic vs rank at n={n} q={q}"
            );
            let dr = verify_distance_regularity(&g).unwrap();
            assert!(dr.passed, "distance regularity at n={n} q={q}: {:?}", dr.detail);
            let (st, _) = spectrum(n, q).unwrap();
            let sc = verify_spectrum(&g, &st).unwrap();
            assert_eq!(sc.annihilation, CheckStatus::Verified, "n={n} q={q}");
            assert_eq!(sc.traces, CheckStatus::Verified, "n={n} q={q}");
            assert_eq!(
                closed_walks(&g, 3, 0).unwrap(),
                spectra::delta_walks(n, q).unwrap(),
                "triangle walks at n={n} q={q}"
            );
        }
        within(Duration::from_secs(60), started, "oracle suite");
    });
}

#[test]
fn c06_exact_extremal_instance() {
    report("criterion 06 exact extremal instance", || {
        let _lock = HEAVY.lock().unwrap_or_else(|e| e.into_inner());
        let started = Instant::now();
        let g = build_graph(4, 2).unwrap();
        let alpha = exact_alpha_k(&g, 1, oracle::DEFAULT_NODE_BUDGET).unwrap();
        assert!(alpha.proven);
        assert_eq!(alpha.size, 8);
        assert_eq!(singleton_like(2, 4, 2).unwrap(), BigUint::from(8u32));
        within(Duration::from_secs(10), started, "extremal search");
    });
}

#[test]
fn c07_rank_count_formula_pinned() {
    report("criterion 07 rank-count formula", || {
        for (n, q) in [(4usize, 2u64), (5, 2), (4, 3)] {
            let spec = FieldSpec::from_order(q).unwrap();
            let formula = RankDistribution::from_formula(n, q);
            let enumerated = RankDistribution::from_enumeration(n, &spec).unwrap();
            assert_eq!(formula, enumerated, "distribution at n={n} q={q}");
        }
        for n in 2..=8usize {
            for q in Q_GRID {
                let total: BigUint = (0..=n).map(|r| count_rank(n, q, r)).sum();
                assert_eq!(total, space_size(n, q), "mass at n={n} q={q}");
            }
        }
    });
}

#[test]
fn c08_total_distance_boundary_values() {
    report("criterion 08 total-distance boundary", || {
        assert_eq!(
            total_distance(2, 4, 2).unwrap(),
            Applicability::Applies(BigUint::from(8u32))
        );
        assert_eq!(
            total_distance(2, 5, 2).unwrap(),
            Applicability::Applies(BigUint::from(128u32))
        );
        for n in 4..=12usize {
            for q in Q_GRID {
                for d in 1..diameter(n) {
                    assert!(
                        matches!(
                            total_distance(q, n, d).unwrap(),
                            Applicability::NotApplicable(_)
                        ),
                        "expected NA at q={q} n={n} d={d}"
                    );
                }
            }
        }
    });
}

#[test]
fn c09_perfectness_sweep() {
    report("criterion 09 perfectness sweep", || {
        for n in 4..=12usize {
            for q in Q_GRID {
                for d in (2..=diameter(n)).filter(|d| d % 2 == 0) {
                    assert_eq!(
                        perfectness_check(q, n, d).unwrap(),
                        Perfectness::PerfectImpossibleEvenD,
                        "even d={d} at q={q} n={n}"
                    );
                }
            }
        }
        for n in 4..=8usize {
            for q in [2u64, 3] {
                for d in 2..=diameter(n) {
                    let verdict = perfectness_check(q, n, d).unwrap();
                    assert_ne!(
                        verdict,
                        Perfectness::Tight,
                        "unexpected tight packing at q={q} n={n} d={d}"
                    );
                }
            }
        }
    });
}

#[test]
fn c10_code_anticode_boundary() {
    report("criterion 10 code-anticode boundary", || {
        // At d = 1 both bounds are the whole space for trivial reasons, so
        // the boundary claim is about d >= 2.
        for n in 4..=12usize {
            for q in Q_GRID {
                for d in 2..=diameter(n) {
                    let k = code_anticode_dim(n, d).unwrap();
                    let anticode = BigUint::from(q).pow(k as u32);
                    let single = singleton_like(q, n, d).unwrap();
                    assert!(single <= anticode, "q={q} n={n} d={d}");
                    assert_eq!(
                        single == anticode,
                        n == 2 * d,
                        "equality pattern at q={q} n={n} d={d}"
                    );
                }
            }
        }
        let _ = bounds::full_report(2, 6, 3).unwrap();
    });
}
