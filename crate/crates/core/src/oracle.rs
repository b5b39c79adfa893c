//! Ground truth from an explicit polynomial: graded pieces of the Milnor
//! algebra `M(f) = S/J_f`, its Hilbert polynomial, and its graded Betti
//! numbers as Koszul homology `Tor_p(M(f), Q)_q`.
//!
//! Each graded piece is computed over every requested prime. Slices where
//! the primes disagree are recomputed over the rationals and recorded as
//! escalations; results never depend on thread scheduling.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::bettirules::{self, dim_s, Dimension, SingularReport, Verdict};
use crate::exactla::{
    default_primes, markowitz_rank, rank_rational, Echelon, Field, LinalgError, PrimeField, RationalField,
    ReducedEchelon, SparseMatrix, SparseVec,
};
use crate::polycore::{monomial_basis, Monomial, Polynomial};
use crate::table::BettiTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("the zero polynomial defines no hypersurface")]
    ZeroPolynomial,
    #[error("polynomial is not homogeneous")]
    NonHomogeneous,
    #[error("degree {0} is below 3")]
    DegreeTooLow(u32),
    #[error("need at least 3 variables (got {0})")]
    TooFewVariables(usize),
    #[error("the partial derivatives span only {rank} of {expected} dimensions: f is a cone")]
    Cone { rank: usize, expected: usize },
    #[error("Betti numbers reach the degree bound {max_degree} ({detail}); raise --max-degree and retry")]
    Incomplete { max_degree: u32, detail: String },
    #[error("no stable Hilbert polynomial in degrees 0..={upper}; last values {tail:?}")]
    WindowTooSmall { upper: u32, tail: Vec<usize> },
    #[error("Hilbert polynomial has degree {delta} > n - 2 = {}: f is not reduced", .n - 2)]
    NotReduced { delta: usize, n: usize },
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Knobs shared by every oracle entry point; empty `primes` means two primes
/// derived from the polynomial.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OracleOptions {
    pub primes: Vec<u64>,
    pub max_degree: Option<u32>,
    pub window: Option<u32>,
}

/// A degree slice recomputed over the rationals after the primes disagreed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slice {
    Dimension { k: u32 },
    Betti { p: usize, q: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Escalation {
    pub slice: Slice,
    pub modular: Vec<(u64, usize)>,
    pub rational: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertData {
    pub n: usize,
    pub d: u32,
    /// `dim M(f)_k` for `k = 0..=window`.
    pub values: Vec<usize>,
    /// Coefficients by increasing power of `k`; empty for the zero polynomial.
    pub polynomial: Vec<BigRational>,
    /// First degree from which `values` follow `polynomial`.
    pub k0: u32,
    /// Degree of `polynomial`, None when it is zero (smooth case).
    pub delta: Option<usize>,
    pub degree_sigma: Option<BigInt>,
    pub tjurina: Option<BigInt>,
    pub escalations: Vec<Escalation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BettiComputation {
    pub table: BettiTable,
    /// Nonzero `beta_{p,q}` for `q <= max_degree`.
    pub betti: BTreeMap<(usize, u32), usize>,
    pub max_degree: u32,
    pub primes: Vec<u64>,
    /// `dim M(f)_k` for `k = 0..=max_degree + n + 1`.
    pub dims: Vec<usize>,
    pub escalations: Vec<Escalation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub kind: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub hilbert: HilbertData,
    /// Cones and truncated computations are kept here rather than raised.
    pub betti: Result<BettiComputation, OracleError>,
    pub report: Option<SingularReport>,
    pub deviations: Vec<Deviation>,
}

impl CrossCheck {
    pub fn consistent(&self) -> bool {
        self.betti.is_ok() && self.deviations.is_empty()
    }
}

// ---------------------------------------------------------------------------
// graded pieces

/// `M(f)_k` over one field: the standard monomials (non-pivots of the
/// reduced echelon form of `J_k`, columns ordered by decreasing monomial)
/// and the normal form of every degree-`k` monomial.
#[derive(Debug, Clone)]
struct Piece<E> {
    columns: HashMap<Monomial, usize>,
    echelon: Option<ReducedEchelon<E>>,
    basis: Vec<Monomial>,
    position: Vec<Option<usize>>,
}

impl<E: Clone> Piece<E> {
    fn zero() -> Self {
        Piece {
            columns: HashMap::new(),
            echelon: None,
            basis: Vec::new(),
            position: Vec::new(),
        }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    fn normal_form<F: Field<Elem = E>>(&self, field: &F, m: &Monomial) -> SparseVec<E> {
        if self.basis.is_empty() {
            return Vec::new();
        }
        let col = self.columns[m];
        if let Some(pos) = self.position[col] {
            return vec![(pos, field.one())];
        }
        let row = self
            .echelon
            .as_ref()
            .and_then(|e| e.row(col))
            .expect("a non-standard monomial has a pivot row");
        row.iter()
            .filter(|(c, _)| *c != col)
            .map(|(c, v)| (self.position[*c].expect("reduced rows avoid other pivots"), field.neg(v)))
            .collect()
    }
}

fn compute_piece<F: Field + Clone>(
    field: &F,
    partials: &[Vec<(Monomial, F::Elem)>],
    n: usize,
    d: u32,
    k: u32,
) -> Piece<F::Elem> {
    let mut monomials = monomial_basis(n, k);
    monomials.reverse();
    let columns: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut echelon = Echelon::new(field.clone());
    if k + 1 >= d {
        'fill: for m in monomial_basis(n, k + 1 - d) {
            for g in partials {
                let mut v: SparseVec<F::Elem> = g.iter().map(|(t, c)| (columns[&t.times(&m)], c.clone())).collect();
                v.sort_by_key(|(c, _)| *c);
                echelon.insert(v);
                if echelon.rank() == monomials.len() {
                    break 'fill;
                }
            }
        }
    }
    if echelon.rank() == monomials.len() {
        return Piece::zero();
    }
    let echelon = echelon.finish();
    let mut basis = Vec::new();
    let mut position = vec![None; monomials.len()];
    for (col, m) in monomials.iter().enumerate() {
        if !echelon.is_pivot(col) {
            position[col] = Some(basis.len());
            basis.push(m.clone());
        }
    }
    Piece {
        columns,
        echelon: Some(echelon),
        basis,
        position,
    }
}

/// Pieces `0..=top`, computed in parallel batches; once a piece vanishes
/// every later one does too.
fn compute_pieces<F: Field + Clone>(
    field: &F,
    partials: &[Vec<(Monomial, F::Elem)>],
    n: usize,
    d: u32,
    top: u32,
) -> Vec<Piece<F::Elem>> {
    let batch = rayon::current_num_threads().max(1) as u32;
    let mut out: Vec<Piece<F::Elem>> = Vec::with_capacity(top as usize + 1);
    let mut k = 0u32;
    while k <= top {
        if out.last().is_some_and(|p| p.dim() == 0) {
            out.push(Piece::zero());
            k += 1;
            continue;
        }
        let end = top.min(k + batch - 1);
        let pieces: Vec<_> = (k..=end)
            .into_par_iter()
            .map(|kk| compute_piece(field, partials, n, d, kk))
            .collect();
        out.extend(pieces);
        k = end + 1;
    }
    out
}

fn subsets(vars: usize, p: usize) -> Vec<u32> {
    (0u32..(1 << vars)).filter(|m| m.count_ones() as usize == p).collect()
}

/// Rank of the Koszul differential `C_p -> C_{p-1}` with source coefficients
/// in `src = M_k` and target coefficients in `dst = M_{k+1}`.
fn koszul_rank<F: Field>(field: &F, vars: usize, src: &Piece<F::Elem>, dst: &Piece<F::Elem>, p: usize) -> usize {
    let a = src.dim();
    let b = dst.dim();
    if a == 0 || b == 0 || p == 0 || p > vars {
        return 0;
    }
    let sources = subsets(vars, p);
    let targets = subsets(vars, p - 1);
    let target_index: HashMap<u32, usize> = targets.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mult: Vec<Vec<SparseVec<F::Elem>>> = src
        .basis
        .iter()
        .map(|m| (0..vars).map(|j| dst.normal_form(field, &m.times_variable(j))).collect())
        .collect();
    let mut columns = Vec::with_capacity(sources.len() * a);
    for &mask in &sources {
        for image in &mult {
            let mut col: SparseVec<F::Elem> = Vec::new();
            let mut t = 0;
            for (i, products) in image.iter().enumerate() {
                if mask & (1 << i) == 0 {
                    continue;
                }
                let block = target_index[&(mask ^ (1 << i))] * b;
                for (pos, v) in products {
                    let v = if t % 2 == 1 { field.neg(v) } else { v.clone() };
                    col.push((block + pos, v));
                }
                t += 1;
            }
            col.sort_by_key(|(r, _)| *r);
            columns.push(col);
        }
    }
    markowitz_rank(field, targets.len() * b, columns).len()
}

fn binom_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `beta_{p,q}` from the pieces `M_{q-p-1}, M_{q-p}, M_{q-p+1}`.
fn betti_at<F: Field>(
    field: &F,
    vars: usize,
    p: usize,
    lower: Option<&Piece<F::Elem>>,
    mid: &Piece<F::Elem>,
    upper: &Piece<F::Elem>,
) -> usize {
    let chains = binom_usize(vars, p) * mid.dim();
    let out = koszul_rank(field, vars, mid, upper, p);
    let inc = lower.map_or(0, |l| koszul_rank(field, vars, l, mid, p + 1));
    chains - out - inc
}

/// All `beta_{p,q}` with `q <= max_degree` over one field.
fn betti_over<F: Field>(field: &F, vars: usize, pieces: &[Piece<F::Elem>], max_degree: u32) -> BTreeMap<(usize, u32), usize> {
    // rank of d_p with source degree k depends only on (p, k)
    let jobs: Vec<(usize, u32)> = (1..=vars)
        .flat_map(|p| (0..=max_degree.saturating_sub(p as u32)).map(move |k| (p, k)))
        .filter(|&(p, k)| p as u32 + k <= max_degree)
        .collect();
    let ranks: HashMap<(usize, u32), usize> = jobs
        .par_iter()
        .map(|&(p, k)| {
            let r = koszul_rank(field, vars, &pieces[k as usize], &pieces[k as usize + 1], p);
            ((p, k), r)
        })
        .collect::<Vec<_>>()
        .into_iter()
        .collect();
    let mut out = BTreeMap::new();
    for p in 0..=vars {
        for q in p as u32..=max_degree {
            let k = q - p as u32;
            let chains = binom_usize(vars, p) * pieces[k as usize].dim();
            let out_rank = ranks.get(&(p, k)).copied().unwrap_or(0);
            let in_rank = if k >= 1 {
                ranks.get(&(p + 1, k - 1)).copied().unwrap_or(0)
            } else {
                0
            };
            let beta = chains - out_rank - in_rank;
            if beta > 0 {
                out.insert((p, q), beta);
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// shared computation

struct Prepared {
    n: usize,
    d: u32,
    partials: Vec<Polynomial>,
    primes: Vec<u64>,
}

fn prepare(f: &Polynomial, primes: &[u64]) -> Result<Prepared, OracleError> {
    if f.is_zero() {
        return Err(OracleError::ZeroPolynomial);
    }
    if !f.is_homogeneous() {
        return Err(OracleError::NonHomogeneous);
    }
    let n = f.n();
    if n < 2 {
        return Err(OracleError::TooFewVariables(n + 1));
    }
    let d = f.degree().expect("nonzero");
    if d < 3 {
        return Err(OracleError::DegreeTooLow(d));
    }
    let f = f.primitive_integer();
    let primes = if primes.is_empty() {
        default_primes(f.fingerprint())
    } else {
        for &p in primes {
            PrimeField::new(p)?;
        }
        let mut ps = primes.to_vec();
        ps.dedup();
        ps
    };
    Ok(Prepared {
        n,
        d,
        partials: f.partials(),
        primes,
    })
}

type Terms<E> = Vec<Vec<(Monomial, E)>>;

fn field_terms<F: Field>(field: &F, partials: &[Polynomial]) -> Result<Terms<F::Elem>, OracleError> {
    partials
        .iter()
        .map(|g| {
            g.terms()
                .map(|(m, c)| Ok((m.clone(), field.from_rational(c)?)))
                .filter(|r: &Result<(Monomial, F::Elem), LinalgError>| r.as_ref().map_or(true, |(_, v)| !field.is_zero(v)))
                .collect::<Result<Vec<_>, LinalgError>>()
                .map_err(OracleError::from)
        })
        .collect()
}

/// Modular pieces for every prime plus lazily computed rational pieces.
struct Computed {
    n: usize,
    d: u32,
    dims: Vec<usize>,
    modular: Vec<(PrimeField, Vec<Piece<u64>>)>,
    rational_terms: Vec<Vec<(Monomial, BigRational)>>,
    rational: BTreeMap<u32, Piece<BigRational>>,
    disagree: BTreeSet<u32>,
    escalations: Vec<Escalation>,
}

impl Computed {
    fn new(prep: &Prepared, top: u32) -> Result<Self, OracleError> {
        let (n, d) = (prep.n, prep.d);
        let modular: Vec<(PrimeField, Vec<Piece<u64>>)> = prep
            .primes
            .par_iter()
            .map(|&p| {
                let field = PrimeField::new(p)?;
                let terms = field_terms(&field, &prep.partials)?;
                let pieces = compute_pieces(&field, &terms, n, d, top);
                Ok((field, pieces))
            })
            .collect::<Result<Vec<_>, OracleError>>()?;
        let rational_terms = field_terms(&RationalField, &prep.partials)?;
        let mut c = Computed {
            n,
            d,
            dims: Vec::new(),
            modular,
            rational_terms,
            rational: BTreeMap::new(),
            disagree: BTreeSet::new(),
            escalations: Vec::new(),
        };
        for k in 0..=top {
            let values: Vec<(u64, usize)> = c.modular.iter().map(|(f, ps)| (f.p(), ps[k as usize].dim())).collect();
            if values.iter().all(|v| v.1 == values[0].1) {
                c.dims.push(values[0].1);
            } else {
                c.disagree.insert(k);
            }
        }
        let needed: Vec<u32> = c.disagree.iter().copied().collect();
        c.ensure_rational(&needed);
        for k in needed {
            let rational = c.rational[&k].dim();
            c.dims.insert(k as usize, rational);
            let modular = c.modular.iter().map(|(f, ps)| (f.p(), ps[k as usize].dim())).collect();
            c.escalations.push(Escalation {
                slice: Slice::Dimension { k },
                modular,
                rational,
            });
        }
        Ok(c)
    }

    fn ensure_rational(&mut self, degrees: &[u32]) {
        let missing: Vec<u32> = degrees.iter().copied().filter(|k| !self.rational.contains_key(k)).collect();
        let (n, d) = (self.n, self.d);
        let terms = &self.rational_terms;
        let built: Vec<(u32, Piece<BigRational>)> = missing
            .par_iter()
            .map(|&k| (k, compute_piece(&RationalField, terms, n, d, k)))
            .collect();
        self.rational.extend(built);
    }

    fn betti(&mut self, max_degree: u32) -> BTreeMap<(usize, u32), usize> {
        let vars = self.n + 1;
        let per_prime: Vec<BTreeMap<(usize, u32), usize>> = self
            .modular
            .par_iter()
            .map(|(f, ps)| betti_over(f, vars, ps, max_degree))
            .collect();
        let mut out = BTreeMap::new();
        let mut escalate = Vec::new();
        for p in 0..=vars {
            for q in p as u32..=max_degree {
                let k = q - p as u32;
                let touched = (k.saturating_sub(1)..=k + 1).any(|j| self.disagree.contains(&j));
                let values: Vec<usize> = per_prime.iter().map(|m| m.get(&(p, q)).copied().unwrap_or(0)).collect();
                if touched || values.iter().any(|v| *v != values[0]) {
                    escalate.push((p, q, values));
                } else if values[0] > 0 {
                    out.insert((p, q), values[0]);
                }
            }
        }
        if escalate.is_empty() {
            return out;
        }
        let mut degrees: BTreeSet<u32> = BTreeSet::new();
        for (p, q, _) in &escalate {
            let k = q - *p as u32;
            degrees.extend(k.saturating_sub(1)..=k + 1);
        }
        self.ensure_rational(&degrees.into_iter().collect::<Vec<_>>());
        let rational = &self.rational;
        let exact: Vec<usize> = escalate
            .par_iter()
            .map(|(p, q, _)| {
                let k = q - *p as u32;
                let lower = if k >= 1 { Some(&rational[&(k - 1)]) } else { None };
                betti_at(&RationalField, vars, *p, lower, &rational[&k], &rational[&(k + 1)])
            })
            .collect();
        for ((p, q, values), beta) in escalate.into_iter().zip(exact) {
            if beta > 0 {
                out.insert((p, q), beta);
            }
            let modular = self.modular.iter().map(|(f, _)| f.p()).zip(values).collect();
            self.escalations.push(Escalation {
                slice: Slice::Betti { p, q },
                modular,
                rational: beta,
            });
        }
        out
    }
}

fn check_cone(prep: &Prepared) -> Result<(), OracleError> {
    let columns: Vec<Monomial> = monomial_basis(prep.n, prep.d - 1);
    let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let entries = prep
        .partials
        .iter()
        .enumerate()
        .flat_map(|(i, g)| g.terms().map(|(m, c)| (i, index[m], c.clone())).collect::<Vec<_>>());
    let matrix = SparseMatrix::from_triplets(prep.partials.len(), columns.len(), entries)?;
    let rank = rank_rational(&matrix).rank;
    if rank < prep.n + 1 {
        return Err(OracleError::Cone {
            rank,
            expected: prep.n + 1,
        });
    }
    Ok(())
}

/// `(n+1)(d-1)`.
pub fn default_max_degree(n: usize, d: u32) -> u32 {
    (n as u32 + 1) * (d - 1)
}

/// `(n+1)(d-2) + n + 2`.
pub fn default_window(n: usize, d: u32) -> u32 {
    (n as u32 + 1) * (d - 2) + n as u32 + 2
}

fn betti_from(prep: &Prepared, comp: &mut Computed, max_degree: u32) -> Result<BettiComputation, OracleError> {
    let (n, d) = (prep.n, prep.d);
    let vars = n + 1;
    let betti = comp.betti(max_degree);
    let internal = |msg: String| Err(OracleError::Internal(msg));
    for (&(p, q), &b) in &betti {
        match p {
            0 if (q, b) != (0, 1) => return internal(format!("beta_0,{q} = {b}")),
            1 if (q, b) != (d - 1, vars) => return internal(format!("beta_1,{q} = {b}")),
            _ => {}
        }
    }
    if betti.get(&(1, d - 1)) != Some(&vars) {
        return internal("minimal generators of J_f are not the partials".into());
    }
    if let Some((&(p, q), b)) = betti.iter().find(|(&(p, q), _)| q == max_degree && p <= n) {
        return Err(OracleError::Incomplete {
            max_degree,
            detail: format!("beta_{p},{q} = {b}"),
        });
    }
    // the Betti numbers must reproduce the Hilbert function; past the bound a
    // failure means syzygies beyond it
    for (k, &dim) in comp.dims.iter().enumerate() {
        let k = k as i64;
        let mut predicted = BigInt::zero();
        for (&(p, q), &b) in &betti {
            let term = BigInt::from(b) * dim_s(n, k - q as i64);
            if p % 2 == 0 {
                predicted += term;
            } else {
                predicted -= term;
            }
        }
        if predicted != BigInt::from(dim) {
            if k <= max_degree as i64 {
                return internal(format!("alternating Betti sum {predicted} != dim M_{k} = {dim}"));
            }
            return Err(OracleError::Incomplete {
                max_degree,
                detail: format!("Betti numbers predict dim M_{k} = {predicted}, actual {dim}"),
            });
        }
    }
    let mut columns = vec![Vec::new(); n];
    for (&(p, q), &b) in &betti {
        if p < 2 {
            continue;
        }
        if q < d {
            return internal(format!("beta_{p},{q} below the partials' degree"));
        }
        columns[p - 2].extend(std::iter::repeat_n((q - (d - 1)) as u64, b));
    }
    let table = BettiTable::new(n, d as u64, columns).map_err(|e| OracleError::Internal(e.to_string()))?;
    Ok(BettiComputation {
        table,
        betti,
        max_degree,
        primes: prep.primes.clone(),
        dims: comp.dims.clone(),
        escalations: comp.escalations.clone(),
    })
}

fn fit_from(prep: &Prepared, dims: &[usize], upper: u32, escalations: Vec<Escalation>) -> Result<HilbertData, OracleError> {
    let n = prep.n;
    let values: Vec<usize> = dims[..=upper as usize].to_vec();
    let ys: Vec<BigInt> = values.iter().map(|&v| BigInt::from(v)).collect();
    let len = ys.len();
    for delta in -1..=n as i64 {
        let need = (delta + 4) as usize;
        if need > len {
            break;
        }
        let poly = if delta < 0 {
            Vec::new()
        } else {
            let pts = delta as usize + 1;
            fit_polynomial((len - pts) as i64, &ys[len - pts..])
        };
        let mut k0 = len;
        while k0 > 0 && evaluate(&poly, k0 as i64 - 1) == BigRational::from_integer(ys[k0 - 1].clone()) {
            k0 -= 1;
        }
        if len - k0 < need {
            continue;
        }
        let delta = (delta >= 0).then_some(delta as usize);
        let (degree_sigma, tjurina) = match delta {
            None => (None, None),
            Some(dl) => {
                if n < 2 || dl > n - 2 {
                    return Err(OracleError::NotReduced { delta: dl, n });
                }
                let lead = poly.last().expect("nonzero polynomial") * BigRational::from_integer(factorial(dl));
                if !lead.is_integer() || !lead.is_positive() {
                    return Err(OracleError::Internal(format!("leading term gives degree {lead}")));
                }
                let deg = lead.to_integer();
                (Some(deg.clone()), (dl == 0).then_some(deg))
            }
        };
        return Ok(HilbertData {
            n,
            d: prep.d,
            values,
            polynomial: poly,
            k0: k0 as u32,
            delta,
            degree_sigma,
            tjurina,
            escalations,
        });
    }
    Err(OracleError::WindowTooSmall {
        upper,
        tail: values[len.saturating_sub(6)..].to_vec(),
    })
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * i)
}

/// Polynomial through `(start + i, ys[i])` by Newton forward differences,
/// coefficients by increasing power.
fn fit_polynomial(start: i64, ys: &[BigInt]) -> Vec<BigRational> {
    let mut diffs = ys.to_vec();
    let mut poly = vec![BigRational::zero(); ys.len()];
    // basis_j(k) = (k - start)(k - start - 1)...(k - start - j + 1) / j!
    let mut basis = vec![BigRational::one()];
    for j in 0..ys.len() {
        let c = BigRational::from_integer(diffs[0].clone());
        for (i, b) in basis.iter().enumerate() {
            poly[i] += &c * b;
        }
        diffs = diffs.windows(2).map(|w| &w[1] - &w[0]).collect();
        let shift = BigRational::from_integer(BigInt::from(-(start + j as i64)));
        let scale = BigRational::new(BigInt::one(), BigInt::from(j as i64 + 1));
        let mut next = vec![BigRational::zero(); basis.len() + 1];
        for (i, b) in basis.iter().enumerate() {
            next[i + 1] += b * &scale;
            next[i] += b * &shift * &scale;
        }
        basis = next;
    }
    while poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    poly
}

/// Evaluates coefficients (increasing power) at an integer.
pub fn evaluate(poly: &[BigRational], k: i64) -> BigRational {
    let x = BigRational::from_integer(BigInt::from(k));
    poly.iter().rev().fold(BigRational::zero(), |acc, c| acc * &x + c)
}

// ---------------------------------------------------------------------------
// entry points

/// `dim M(f)_k`.
pub fn milnor_dimension(f: &Polynomial, k: u32) -> Result<usize, OracleError> {
    milnor_dimension_with(f, k, &[])
}

pub fn milnor_dimension_with(f: &Polynomial, k: u32, primes: &[u64]) -> Result<usize, OracleError> {
    let prep = prepare(f, primes)?;
    let mut dims = Vec::new();
    for &p in &prep.primes {
        let field = PrimeField::new(p)?;
        let terms = field_terms(&field, &prep.partials)?;
        dims.push(compute_piece(&field, &terms, prep.n, prep.d, k).dim());
    }
    if dims.iter().all(|v| *v == dims[0]) {
        return Ok(dims[0]);
    }
    let terms = field_terms(&RationalField, &prep.partials)?;
    Ok(compute_piece(&RationalField, &terms, prep.n, prep.d, k).dim())
}

/// Hilbert function on `0..=window` (default [`default_window`]) and the
/// polynomial it stabilizes to.
pub fn hilbert_fit(f: &Polynomial, window: Option<u32>) -> Result<HilbertData, OracleError> {
    hilbert_fit_with(
        f,
        &OracleOptions {
            window,
            ..Default::default()
        },
    )
}

pub fn hilbert_fit_with(f: &Polynomial, options: &OracleOptions) -> Result<HilbertData, OracleError> {
    let prep = prepare(f, &options.primes)?;
    let upper = options.window.unwrap_or_else(|| default_window(prep.n, prep.d));
    let comp = Computed::new(&prep, upper)?;
    fit_from(&prep, &comp.dims, upper, comp.escalations)
}

/// Graded Betti numbers of `M(f)` up to `max_degree` (default
/// [`default_max_degree`]), as a [`BettiTable`].
pub fn graded_betti(f: &Polynomial, max_degree: Option<u32>, primes: &[u64]) -> Result<BettiComputation, OracleError> {
    let prep = prepare(f, primes)?;
    check_cone(&prep)?;
    let max_degree = max_degree.unwrap_or_else(|| default_max_degree(prep.n, prep.d));
    let mut comp = Computed::new(&prep, max_degree + prep.n as u32 + 1)?;
    betti_from(&prep, &mut comp, max_degree)
}

/// Runs both pipelines and compares them through the rule engine.
pub fn cross_check(f: &Polynomial) -> Result<CrossCheck, OracleError> {
    cross_check_with(f, &OracleOptions::default())
}

pub fn cross_check_with(f: &Polynomial, options: &OracleOptions) -> Result<CrossCheck, OracleError> {
    let prep = prepare(f, &options.primes)?;
    let (n, d) = (prep.n, prep.d);
    let upper = options.window.unwrap_or_else(|| default_window(n, d));
    let max_degree = options.max_degree.unwrap_or_else(|| default_max_degree(n, d));
    let cone = check_cone(&prep);
    let top = if cone.is_ok() {
        upper.max(max_degree + n as u32 + 1)
    } else {
        upper
    };
    let mut comp = Computed::new(&prep, top)?;
    let betti = match cone {
        Ok(()) => betti_from(&prep, &mut comp, max_degree),
        Err(e) => Err(e),
    };
    let hilbert = fit_from(&prep, &comp.dims, upper, comp.escalations.clone())?;
    let mut deviations = Vec::new();
    let report = match &betti {
        Ok(b) => {
            let report = bettirules::full_report(&b.table);
            compare(&hilbert, b, &report, &mut deviations);
            Some(report)
        }
        Err(e @ OracleError::Incomplete { .. }) => {
            deviations.push(Deviation {
                kind: "incomplete",
                detail: e.to_string(),
            });
            None
        }
        Err(OracleError::Cone { .. }) => None,
        Err(e) => return Err(e.clone()),
    };
    Ok(CrossCheck {
        hilbert,
        betti,
        report,
        deviations,
    })
}

fn compare(h: &HilbertData, b: &BettiComputation, report: &SingularReport, out: &mut Vec<Deviation>) {
    let table_delta = match &report.dimension {
        Dimension::Smooth => None,
        Dimension::Singular { delta } => Some(*delta),
        Dimension::Inconsistent { reason } => {
            out.push(Deviation {
                kind: "dimension",
                detail: format!("table is inconsistent: {reason}"),
            });
            return;
        }
    };
    if table_delta != h.delta {
        out.push(Deviation {
            kind: "dimension",
            detail: format!("Hilbert fit gives delta {:?}, table gives {:?}", h.delta, table_delta),
        });
    }
    let table_degree = match &report.verdict {
        Verdict::Singular { degree, .. } => Some(degree.clone()),
        _ => None,
    };
    if table_degree != h.degree_sigma {
        out.push(Deviation {
            kind: "degree",
            detail: format!(
                "Hilbert fit gives degree {:?}, table gives {:?}",
                h.degree_sigma.as_ref().map(ToString::to_string),
                table_degree.as_ref().map(ToString::to_string)
            ),
        });
    }
    if report.tau != h.tjurina {
        out.push(Deviation {
            kind: "tjurina",
            detail: format!(
                "Hilbert fit gives tau {:?}, table gives {:?}",
                h.tjurina.as_ref().map(ToString::to_string),
                report.tau.as_ref().map(ToString::to_string)
            ),
        });
    }
    for (k, &v) in h.values.iter().enumerate() {
        let from_table = bettirules::hilbert_function_from_table(&b.table, k as i64);
        if from_table.to_usize() != Some(v) {
            out.push(Deviation {
                kind: "hilbert_function",
                detail: format!("degree {k}: computed {v}, table gives {from_table}"),
            });
        }
    }
    let table_poly = bettirules::hilbert_polynomial_from_table(&b.table);
    if table_poly != h.polynomial {
        out.push(Deviation {
            kind: "hilbert_polynomial",
            detail: "fitted polynomial differs from the one read off the table".into(),
        });
    }
}
