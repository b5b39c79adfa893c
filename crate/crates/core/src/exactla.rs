//! Exact linear algebra over word-size prime fields and over the rationals.
//!
//! Two elimination kernels live here:
//!
//! * [`markowitz_rank`]: rank of a sparse column-major matrix with
//!   Markowitz pivoting, ties broken by lowest column and then lowest row.
//! * [`Echelon`]: an incremental row-echelon basis whose pivots are the
//!   leading (lowest) columns, reduced on [`Echelon::finish`]. The oracle uses
//!   it to get normal forms modulo a graded piece of the Jacobian ideal.
//!
//! [`rank_rational`] is an independent fraction-free (Bareiss) elimination on
//! integer matrices and serves as the slow reference for the modular ranks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("{p} divides the denominator {denominator}")]
    BadPrime { p: u64, denominator: BigInt },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    IndexOutOfRange { row: usize, col: usize, rows: usize, cols: usize },
    #[error("duplicate entry at ({row}, {col})")]
    DuplicateEntry { row: usize, col: usize },
}

/// The ground field a rank was computed over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Modulus {
    Prime(u64),
    Rational,
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulus::Prime(p) => write!(f, "{p}"),
            Modulus::Rational => write!(f, "rational"),
        }
    }
}

/// Arithmetic in a field whose elements are plain values.
pub trait Field: Send + Sync {
    type Elem: Clone + PartialEq + Send + Sync + fmt::Debug;

    fn modulus(&self) -> Modulus;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Panics on zero.
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    #[allow(clippy::wrong_self_convention)]
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, LinalgError>;
    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, v: i64) -> Self::Elem;
}

/// `Z/pZ` for a prime `p < 2^63`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, LinalgError> {
        if p >= 1 << 63 || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    fn reduce_int(&self, v: &BigInt) -> u64 {
        let r = v.mod_floor(&BigInt::from(self.p));
        r.to_u64().expect("residue fits")
    }

    fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn modulus(&self) -> Modulus {
        Modulus::Prime(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "inverse of zero");
        self.pow(*a, self.p - 2)
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64, LinalgError> {
        let den = self.reduce_int(q.denom());
        if den == 0 {
            return Err(LinalgError::BadPrime {
                p: self.p,
                denominator: q.denom().clone(),
            });
        }
        Ok(self.mul(&self.reduce_int(q.numer()), &self.inv(&den)))
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce_int(&BigInt::from(v))
    }
}

/// The rationals, for escalation when modular results disagree.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

impl Field for RationalField {
    type Elem = BigRational;

    fn modulus(&self) -> Modulus {
        Modulus::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, LinalgError> {
        Ok(q.clone())
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Two distinct random primes in `(2^31, 2^32)`, reproducible from `seed`.
pub fn default_primes(seed: u64) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(2);
    while out.len() < 2 {
        let mut c = rng.gen_range((1u64 << 31)..(1u64 << 32)) | 1;
        while !is_prime(c) {
            c -= 2;
        }
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// A sparse matrix with exact rational entries, stored column by column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(usize, BigRational)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from `(row, col, value)` triplets; zero values are dropped.
    pub fn from_triplets(
        rows: usize,
        cols: usize,
        entries: impl IntoIterator<Item = (usize, usize, BigRational)>,
    ) -> Result<Self, LinalgError> {
        let mut columns: Vec<BTreeMap<usize, BigRational>> = vec![BTreeMap::new(); cols];
        for (row, col, v) in entries {
            if row >= rows || col >= cols {
                return Err(LinalgError::IndexOutOfRange { row, col, rows, cols });
            }
            if columns[col].insert(row, v).is_some() {
                return Err(LinalgError::DuplicateEntry { row, col });
            }
        }
        Ok(SparseMatrix {
            rows,
            cols,
            columns: columns
                .into_iter()
                .map(|c| c.into_iter().filter(|(_, v)| !v.is_zero()).collect())
                .collect(),
        })
    }

    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let entries = rows.iter().enumerate().flat_map(|(i, row)| {
            assert_eq!(row.len(), c, "ragged matrix");
            row.iter()
                .enumerate()
                .map(move |(j, &v)| (i, j, BigRational::from_integer(v.into())))
        });
        SparseMatrix::from_triplets(r, c, entries).expect("dense input is well formed")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn column(&self, j: usize) -> &[(usize, BigRational)] {
        &self.columns[j]
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |(i, v)| (*i, j, v)))
    }

    pub fn transpose(&self) -> SparseMatrix {
        SparseMatrix::from_triplets(self.cols, self.rows, self.entries().map(|(i, j, v)| (j, i, v.clone())))
            .expect("transpose of a valid matrix")
    }

    pub fn permuted(&self, row_perm: &[usize], col_perm: &[usize]) -> SparseMatrix {
        SparseMatrix::from_triplets(
            self.rows,
            self.cols,
            self.entries().map(|(i, j, v)| (row_perm[i], col_perm[j], v.clone())),
        )
        .expect("permutation of a valid matrix")
    }

    /// Writes one `row col numerator/denominator` line per stored entry.
    pub fn write_coordinates<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "% {} {} {}", self.rows, self.cols, self.nnz())?;
        for (i, j, v) in self.entries() {
            writeln!(w, "{} {} {}/{}", i, j, v.numer(), v.denom())?;
        }
        Ok(())
    }
}

/// Image of a [`SparseMatrix`] in `Z/pZ`; entries lie in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModMatrix {
    rows: usize,
    cols: usize,
    p: u64,
    columns: Vec<Vec<(usize, u64)>>,
}

impl ModMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn modulus(&self) -> u64 {
        self.p
    }
    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, c)| c.iter().map(move |&(i, v)| (i, j, v)))
    }
}

pub fn reduce_mod(m: &SparseMatrix, p: u64) -> Result<ModMatrix, LinalgError> {
    let field = PrimeField::new(p)?;
    let mut columns = Vec::with_capacity(m.cols);
    for col in &m.columns {
        let mut out = Vec::with_capacity(col.len());
        for (i, v) in col {
            let r = field.from_rational(v)?;
            if r != 0 {
                out.push((*i, r));
            }
        }
        columns.push(out);
    }
    Ok(ModMatrix {
        rows: m.rows,
        cols: m.cols,
        p,
        columns,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankCertificate {
    pub rank: usize,
    pub modulus: Modulus,
    /// Sorted; always `rank` long.
    pub pivot_columns: Vec<usize>,
}

pub fn rank_mod_p(m: &SparseMatrix, p: u64) -> Result<RankCertificate, LinalgError> {
    let reduced = reduce_mod(m, p)?;
    Ok(rank_of_mod_matrix(&reduced))
}

pub fn rank_of_mod_matrix(m: &ModMatrix) -> RankCertificate {
    let field = PrimeField { p: m.p };
    let pivots = markowitz_rank(&field, m.rows, m.columns.clone());
    RankCertificate {
        rank: pivots.len(),
        modulus: Modulus::Prime(m.p),
        pivot_columns: pivots,
    }
}

pub fn kernel_dim(m: &SparseMatrix, p: u64) -> Result<usize, LinalgError> {
    Ok(m.cols - rank_mod_p(m, p)?.rank)
}

/// Rank over the rationals by fraction-free elimination.
///
/// Each column is first scaled to integers; pivots are the lowest usable
/// column, then the lowest row.
pub fn rank_rational(m: &SparseMatrix) -> RankCertificate {
    let mut a = vec![vec![BigInt::zero(); m.cols]; m.rows];
    for (j, col) in m.columns.iter().enumerate() {
        let lcm = col.iter().fold(BigInt::one(), |acc, (_, v)| acc.lcm(v.denom()));
        for (i, v) in col {
            a[*i][j] = (v * BigRational::from_integer(lcm.clone())).to_integer();
        }
    }
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, pr);
        for i in r + 1..m.rows {
            for j in c + 1..m.cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        // every later update divides exactly by the previous pivot
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    RankCertificate {
        rank: pivots.len(),
        modulus: Modulus::Rational,
        pivot_columns: pivots,
    }
}

/// A sparse vector as `(index, value)` pairs sorted by index, no stored zeros.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `dst - factor * src` on sorted sparse vectors.
fn axpy<F: Field>(field: &F, dst: &[(usize, F::Elem)], factor: &F::Elem, src: &[(usize, F::Elem)]) -> SparseVec<F::Elem> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if take_src {
            out.push((src[j].0, field.neg(&field.mul(factor, &src[j].1))));
            j += 1;
        } else {
            let v = field.sub(&dst[i].1, &field.mul(factor, &src[j].1));
            if !field.is_zero(&v) {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank of a column-major sparse matrix by Markowitz pivoting.
///
/// Candidate pivots come from the active columns of minimal count; among
/// them the entry minimising `(r - 1)(c - 1)` wins, ties going to the lowest
/// column and then the lowest row. Returns the sorted pivot columns, which
/// index a basis of the column space.
pub fn markowitz_rank<F: Field>(field: &F, rows: usize, columns: Vec<SparseVec<F::Elem>>) -> Vec<usize> {
    let mut columns: Vec<SparseVec<F::Elem>> = columns
        .into_iter()
        .map(|c| c.into_iter().filter(|(_, v)| !field.is_zero(v)).collect())
        .collect();
    let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
    let mut active: BTreeSet<usize> = BTreeSet::new();
    for (j, col) in columns.iter().enumerate() {
        if col.is_empty() {
            continue;
        }
        active.insert(j);
        for (i, _) in col {
            row_cols[*i].insert(j);
        }
    }
    let mut pivots = Vec::new();
    while !active.is_empty() {
        let min_count = active.iter().map(|&j| columns[j].len()).min().unwrap();
        if min_count == 0 {
            active.retain(|&j| !columns[j].is_empty());
            continue;
        }
        let mut best: Option<(usize, usize, usize)> = None; // (cost, col, row)
        for &j in active.iter().filter(|&&j| columns[j].len() == min_count) {
            for (i, _) in &columns[j] {
                let cost = (row_cols[*i].len() - 1) * (min_count - 1);
                let cand = (cost, j, *i);
                if best.is_none_or(|b| cand < b) {
                    best = Some(cand);
                }
            }
            if best.is_some_and(|b| b.0 == 0) {
                break;
            }
        }
        let (_, pc, pr) = best.expect("nonempty active column");
        pivots.push(pc);
        active.remove(&pc);
        let pivot_col = std::mem::take(&mut columns[pc]);
        for (i, _) in &pivot_col {
            row_cols[*i].remove(&pc);
        }
        let pivot_val = pivot_col.iter().find(|(i, _)| *i == pr).unwrap().1.clone();
        let inv = field.inv(&pivot_val);
        let targets: Vec<usize> = row_cols[pr].iter().copied().collect();
        for j in targets {
            let a = columns[j]
                .binary_search_by_key(&pr, |(i, _)| *i)
                .map(|k| columns[j][k].1.clone())
                .expect("row index lists the column");
            let factor = field.mul(&a, &inv);
            let old = std::mem::take(&mut columns[j]);
            let new = axpy(field, &old, &factor, &pivot_col);
            // refresh the row index for rows touched by the pivot column
            for (i, _) in &pivot_col {
                let present = new.binary_search_by_key(i, |(r, _)| *r).is_ok();
                if present {
                    row_cols[*i].insert(j);
                } else {
                    row_cols[*i].remove(&j);
                }
            }
            if new.is_empty() {
                active.remove(&j);
            }
            columns[j] = new;
        }
    }
    pivots.sort_unstable();
    pivots
}

/// Incremental echelon basis of a space of sparse vectors; the pivot of a
/// row is its lowest column.
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    rows: BTreeMap<usize, SparseVec<F::Elem>>,
}

/// A reduced echelon basis: each row has leading coefficient one and no
/// entries in other pivot columns.
#[derive(Debug, Clone)]
pub struct ReducedEchelon<E> {
    rows: BTreeMap<usize, SparseVec<E>>,
}

impl<F: Field + Clone> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds a vector (sorted by column, no zeros); returns true if it was
    /// independent of the rows inserted so far.
    pub fn insert(&mut self, v: SparseVec<F::Elem>) -> bool {
        let f = &self.field;
        let mut acc: BTreeMap<usize, F::Elem> = v.into_iter().filter(|(_, x)| !f.is_zero(x)).collect();
        loop {
            let Some((&lead, lead_val)) = acc.iter().next() else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(row) => {
                    let factor = lead_val.clone();
                    for (c, x) in row {
                        let delta = f.mul(&factor, x);
                        let entry = acc.entry(*c).or_insert_with(|| f.zero());
                        *entry = f.sub(entry, &delta);
                        if f.is_zero(entry) {
                            acc.remove(c);
                        }
                    }
                }
                None => {
                    let inv = f.inv(lead_val);
                    let row: SparseVec<F::Elem> = acc.into_iter().map(|(c, x)| (c, f.mul(&x, &inv))).collect();
                    self.rows.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn finish(self) -> ReducedEchelon<F::Elem> {
        let f = &self.field;
        let mut done: BTreeMap<usize, SparseVec<F::Elem>> = BTreeMap::new();
        for (lead, row) in self.rows.into_iter().rev() {
            let mut acc: BTreeMap<usize, F::Elem> = row.into_iter().collect();
            let tail_pivots: Vec<usize> = acc.keys().copied().filter(|c| *c != lead && done.contains_key(c)).collect();
            for c in tail_pivots {
                let Some(factor) = acc.get(&c).cloned() else { continue };
                for (k, x) in &done[&c] {
                    let delta = f.mul(&factor, x);
                    let entry = acc.entry(*k).or_insert_with(|| f.zero());
                    *entry = f.sub(entry, &delta);
                    if f.is_zero(entry) {
                        acc.remove(k);
                    }
                }
            }
            done.insert(lead, acc.into_iter().collect());
        }
        ReducedEchelon { rows: done }
    }
}

impl<E> ReducedEchelon<E> {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    /// The reduced row with pivot `col`, including the leading one.
    pub fn row(&self, col: usize) -> Option<&[(usize, E)]> {
        self.rows.get(&col).map(Vec::as_slice)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }
}
