//! The rule engine applied to tables the oracle computes from explicit
//! polynomials. Tjurina numbers below come from the local singularity types
//! (node 1, cusp 2, ordinary triple point of a plane curve 4, ...).

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use singulus_core::bettirules::{koszul_smooth_table, structural_checks, Dimension};
use singulus_core::oracle::{cross_check, cross_check_with, graded_betti, hilbert_fit, OracleOptions};
use singulus_core::polycore::monomial_basis;
use singulus_core::{BettiTable, Polynomial, Verdict};

fn p(s: &str, n: usize) -> Polynomial {
    Polynomial::parse(s, n).unwrap()
}

fn assert_consistent(f: &Polynomial) -> BettiTable {
    let c = cross_check(f).unwrap();
    assert!(c.deviations.is_empty(), "{f}: {:?}", c.deviations);
    let b = c.betti.expect("betti computation");
    let s = structural_checks(&b.table);
    assert!(s.holds(), "{f}: {:?}", s);
    b.table
}

#[test]
fn fermat_hypersurfaces_give_koszul_tables() {
    for (n, d) in [(2, 3), (2, 4), (2, 5), (3, 3), (3, 4), (4, 3)] {
        let text: Vec<String> = (0..=n).map(|i| format!("x{i}^{d}")).collect();
        let f = p(&text.join(" + "), n);
        let table = assert_consistent(&f);
        assert_eq!(table, koszul_smooth_table(n, d as u64).unwrap(), "n={n} d={d}");
    }
}

#[test]
fn plane_curves_with_known_tjurina_numbers() {
    let cases = [
        ("x0*x1*x2 + x0^3 + x1^3", 1),
        ("x1^2*x2 - x0^3", 2),
        ("x1^2*x2 - x0^3 - x0^2*x2", 1),
        ("x0*x1*x2", 3),
        ("x2*(x0^2 + x1^2 + x2^2)", 2),
        // D4 point where three lines meet, plus three nodes on the fourth line
        ("x0*x1*(x0 - x1)*x2", 7),
    ];
    for (text, tau) in cases {
        let f = p(text, 2);
        let h = hilbert_fit(&f, None).unwrap();
        assert_eq!(h.tjurina, Some(BigInt::from(tau)), "{text}");
        let table = assert_consistent(&f);
        assert_eq!(
            singulus_core::full_report(&table).verdict,
            Verdict::Singular {
                delta: 0,
                degree: BigInt::from(tau)
            },
            "{text}"
        );
    }
}

#[test]
fn cayley_cubic_has_four_nodes() {
    let f = p("x0*x1*x2 + x0*x1*x3 + x0*x2*x3 + x1*x2*x3", 3);
    let h = hilbert_fit(&f, None).unwrap();
    assert_eq!(h.tjurina, Some(BigInt::from(4)));
    assert_consistent(&f);
}

#[test]
fn product_plus_cube() {
    let f = p("x0*x1*x2 + x3^3", 3);
    let table = assert_consistent(&f);
    assert_eq!(table.columns(), &[vec![1, 1, 2, 2, 2], vec![3, 3], vec![]]);
}

#[test]
fn surface_with_a_singular_line() {
    // singular along the line x0 = x1 = 0
    let f = p("x0^2*x2 - x1^2*x3", 3);
    let h = hilbert_fit(&f, None).unwrap();
    assert_eq!(h.delta, Some(1));
    let c = cross_check(&f).unwrap();
    assert!(c.deviations.is_empty(), "{:?}", c.deviations);
    let report = c.report.unwrap();
    assert_eq!(report.dimension, Dimension::Singular { delta: 1 });
}

#[test]
fn random_cubics_are_consistent() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in [2usize, 3] {
        for _ in 0..4 {
            let terms = monomial_basis(n, 3)
                .into_iter()
                .map(|m| (m, num_rational::BigRational::from_integer(rng.gen_range(-3i64..=3).into())));
            let f = Polynomial::from_terms(n, terms);
            if graded_betti(&f, None, &[]).is_err() {
                continue;
            }
            let table = assert_consistent(&f);
            if hilbert_fit(&f, None).unwrap().delta.is_none() {
                assert_eq!(table, koszul_smooth_table(n, 3).unwrap(), "{f}");
            }
        }
    }
}

#[test]
fn small_primes_escalate_to_rationals() {
    let f = p("x0*x1*x2 + x3^3", 3);
    let options = OracleOptions {
        primes: vec![3, 101],
        ..Default::default()
    };
    let c = cross_check_with(&f, &options).unwrap();
    assert!(c.deviations.is_empty());
    let b = c.betti.unwrap();
    assert!(!b.escalations.is_empty());
    assert_eq!(b.table.columns(), &[vec![1, 1, 2, 2, 2], vec![3, 3], vec![]]);
}

#[test]
fn results_do_not_depend_on_primes() {
    let f = p("x1^2*x2 - x0^3", 2);
    let a = graded_betti(&f, None, &[]).unwrap();
    let b = graded_betti(&f, None, &[1_000_000_007, 998_244_353]).unwrap();
    assert_eq!(a.table, b.table);
    assert_eq!(a.betti, b.betti);
}
