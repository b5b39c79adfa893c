//! Inputs shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use singulus_core::bettirules::koszul_smooth_table;
use singulus_core::{BettiTable, Polynomial};

/// Sum of `x_i^d` for `i = 0..=n`.
pub fn fermat(n: usize, d: u32) -> Polynomial {
    let text: Vec<String> = (0..=n).map(|i| format!("x{i}^{d}")).collect();
    Polynomial::parse(&text.join(" + "), n).expect("well-formed")
}

/// `x0*x1*x2 + x3^3`, singular at three points.
pub fn product_plus_cube() -> Polynomial {
    Polynomial::parse("x0*x1*x2 + x3^3", 3).expect("well-formed")
}

/// A cubic with small random integer coefficients in `n + 1` variables.
pub fn random_cubic(n: usize, seed: u64) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut terms = Vec::new();
    for a in 0..=n {
        for b in a..=n {
            for c in b..=n {
                let coeff: i32 = rng.gen_range(-5..=5);
                if coeff != 0 {
                    terms.push(format!("{coeff}*x{a}*x{b}*x{c}"));
                }
            }
        }
    }
    Polynomial::parse(&terms.join(" + "), n).expect("well-formed")
}

/// Koszul tables for `n` in `2..=6` and `d` in `3..=8`.
pub fn smooth_tables() -> Vec<BettiTable> {
    let mut out = Vec::new();
    for n in 2..=6 {
        for d in 3..=8 {
            out.push(koszul_smooth_table(n, d).expect("valid"));
        }
    }
    out
}

/// Random tables (not necessarily realizable) with a few entries per column.
pub fn random_tables(count: usize, seed: u64) -> Vec<BettiTable> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(2..=5usize);
            let d = rng.gen_range(3..=9u64);
            let columns = (0..n)
                .map(|k| {
                    let len = if k == 0 { n + 1 } else { rng.gen_range(0..=4) };
                    (0..len).map(|_| rng.gen_range(1..=12)).collect()
                })
                .collect();
            BettiTable::new(n, d, columns).expect("valid shape")
        })
        .collect()
}
