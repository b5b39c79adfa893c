use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use singulus_core::bettirules::{
    self, a_coefficients, dim_s, hilbert_function_from_table, hilbert_polynomial_from_table, koszul_smooth_table,
    SigmaProfile,
};
use singulus_core::exactla::{kernel_dim, rank_mod_p, rank_rational, SparseMatrix};
use singulus_core::oracle::evaluate;
use singulus_core::polycore::{count_monomials, monomial_basis, Monomial, Polynomial};
use singulus_core::BettiTable;

const P: u64 = 2_147_483_647;

fn q(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

/// Random homogeneous polynomial of degree `d` in `x0..xn` with small
/// integer coefficients.
fn homogeneous(n: usize, d: u32) -> impl Strategy<Value = Polynomial> {
    let basis = monomial_basis(n, d);
    let len = basis.len();
    prop::collection::vec((0..len, -5i64..=5), 1..6).prop_map(move |terms| {
        Polynomial::from_terms(n, terms.into_iter().map(|(i, c)| (basis[i].clone(), q(c))))
    })
}

fn any_poly(n: usize) -> impl Strategy<Value = Polynomial> {
    (0u32..4).prop_flat_map(move |d| homogeneous(n, d))
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
}

fn random_table() -> impl Strategy<Value = BettiTable> {
    (2usize..=4, 3u64..=6).prop_flat_map(|(n, d)| {
        prop::collection::vec(prop::collection::vec(0u64..12, 0..5), n)
            .prop_map(move |cols| BettiTable::new(n, d, cols).unwrap())
    })
}

proptest! {
    #[test]
    fn euler_identity(f in (2usize..=4).prop_flat_map(|n| (1u32..5).prop_flat_map(move |d| homogeneous(n, d)))) {
        let n = f.n();
        let d = f.degree().unwrap_or(0) as i64;
        let mut sum = Polynomial::zero(n);
        for (i, g) in f.partials().iter().enumerate() {
            sum = &sum + &(&Polynomial::variable(n, i) * g);
        }
        prop_assert_eq!(sum, f.scale(&q(d)));
    }

    #[test]
    fn print_then_parse(f in any_poly(3)) {
        let printed = f.to_string();
        prop_assert_eq!(Polynomial::parse(&printed, 3).unwrap(), f);
    }

    #[test]
    fn partials_are_derivations(f in any_poly(2), g in any_poly(2), i in 0usize..3) {
        let sum = (&f + &g).partial(i).unwrap();
        prop_assert_eq!(sum, &f.partial(i).unwrap() + &g.partial(i).unwrap());
        let product = (&f * &g).partial(i).unwrap();
        let leibniz = &(&f.partial(i).unwrap() * &g) + &(&f * &g.partial(i).unwrap());
        prop_assert_eq!(product, leibniz);
    }

    #[test]
    fn ranks_agree(rows in small_matrix(), seed in any::<u64>()) {
        let m = SparseMatrix::from_dense(&rows);
        let r = rank_mod_p(&m, P).unwrap().rank;
        prop_assert_eq!(rank_mod_p(&m.transpose(), P).unwrap().rank, r);
        prop_assert_eq!(kernel_dim(&m, P).unwrap() + r, m.cols());
        prop_assert!(rank_mod_p(&m, 3).unwrap().rank <= rank_rational(&m).rank);
        prop_assert_eq!(rank_rational(&m).rank, r);
        // permute rows and columns by rotation and reversal
        let rp: Vec<usize> = (0..m.rows()).map(|i| (i + seed as usize) % m.rows()).collect();
        let cp: Vec<usize> = (0..m.cols()).rev().collect();
        prop_assert_eq!(rank_mod_p(&m.permuted(&rp, &cp), P).unwrap().rank, r);
    }

    #[test]
    fn sigma_ignores_entry_order(t in random_table(), rot in 0usize..7) {
        let shuffled: Vec<Vec<u64>> = t
            .columns()
            .iter()
            .map(|c| {
                let mut c = c.clone();
                c.reverse();
                if !c.is_empty() {
                    let k = rot % c.len();
                    c.rotate_left(k);
                }
                c
            })
            .collect();
        let u = BettiTable::new(t.n(), t.d(), shuffled).unwrap();
        prop_assert_eq!(SigmaProfile::of(&t), SigmaProfile::of(&u));
    }

    #[test]
    fn hilbert_polynomial_matches_function_far_out(t in random_table()) {
        let top = t.columns().iter().flatten().max().copied().unwrap_or(0) as i64;
        let poly = hilbert_polynomial_from_table(&t);
        let start = t.d() as i64 - 1 + top;
        for k in start..start + 4 {
            let value = BigRational::from_integer(hilbert_function_from_table(&t, k));
            prop_assert_eq!(evaluate(&poly, k), value);
        }
    }
}

#[test]
fn monomial_counts() {
    for n in 2..=5 {
        for k in 0..=12 {
            let basis = monomial_basis(n, k);
            assert_eq!(BigInt::from(basis.len()), count_monomials(n, k));
            assert!(basis.windows(2).all(|w| w[0] < w[1]));
            assert!(basis.iter().all(|m: &Monomial| m.degree() == k));
        }
    }
}

#[test]
fn a_coefficients_at_zero_are_stirling_like() {
    // prod_{i=1..n} (z + i) at z = 0 is n!
    for n in 1..=8usize {
        let a = a_coefficients(n, 0);
        let fact: BigInt = (1..=n as u64).map(BigInt::from).product();
        assert_eq!(a[0], fact);
    }
}

#[test]
fn koszul_tables_have_vanishing_hilbert_polynomial() {
    for n in 2..=5 {
        for d in 3..=7u64 {
            let t = koszul_smooth_table(n, d).unwrap();
            assert!(hilbert_polynomial_from_table(&t).is_empty());
            // Hilbert series (1 + t + ... + t^(d-2))^(n+1) has top degree (n+1)(d-2)
            let socle = ((n + 1) as u64 * (d - 2)) as i64;
            assert_eq!(hilbert_function_from_table(&t, socle), BigInt::from(1));
            assert!(hilbert_function_from_table(&t, socle + 1).is_zero());
            assert_eq!(hilbert_function_from_table(&t, 1), dim_s(n, 1));
            assert_eq!(bettirules::singular_dimension(&t), bettirules::Dimension::Smooth);
        }
    }
}
