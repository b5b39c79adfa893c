//! Formulas and obstructions on a [`BettiTable`].
//!
//! Everything is exact integer (or rational) arithmetic. The central
//! quantity is the alternating power sum
//!
//! ```text
//! sigma_j = sum_{k=1..n} (-1)^(k+1) sum_i d_{k,i}^j
//! ```
//!
//! whose agreement with `(-1)^(j+1) (d-1)^j` for small `j` determines the
//! dimension of the singular subscheme, and whose first disagreement gives
//! its degree.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::polycore::binomial;
use crate::table::BettiTable;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("power index {j} outside 0..={n}")]
    PowerOutOfRange { j: usize, n: usize },
    #[error("t = {t} outside 1..={n}")]
    TOutOfRange { t: usize, n: usize },
    #[error("need n >= {min_n} and d >= 3 (got n = {n}, d = {d})")]
    Range { n: usize, d: u64, min_n: usize },
}

fn big(v: impl Into<BigInt>) -> BigInt {
    v.into()
}

fn factorial(n: usize) -> BigInt {
    (1..=n as u64).fold(BigInt::one(), |acc, i| acc * i)
}

fn pow(base: &BigInt, e: usize) -> BigInt {
    num_traits::pow(base.clone(), e)
}

/// `(-1)^e`.
fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// `sigma_j` for `0 <= j <= n`, with `0^0 = 1`.
pub fn sigma(table: &BettiTable, j: usize) -> Result<BigInt, RuleError> {
    if j > table.n() {
        return Err(RuleError::PowerOutOfRange { j, n: table.n() });
    }
    let mut total = BigInt::zero();
    for k in 1..=table.n() {
        let mut s = BigInt::zero();
        for &v in table.column(k) {
            s += pow(&big(v), j);
        }
        if k % 2 == 1 {
            total += s;
        } else {
            total -= s;
        }
    }
    Ok(total)
}

/// The value `sigma_j` takes for a smooth hypersurface: `n` for `j = 0`,
/// `(-1)^(j+1) (d-1)^j` otherwise.
pub fn expected_sigma(n: usize, d: u64, j: usize) -> BigInt {
    if j == 0 {
        big(n)
    } else {
        sign(j + 1) * pow(&big(d - 1), j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaProfile {
    pub sigma: Vec<BigInt>,
    pub expected: Vec<BigInt>,
    /// Smallest `j >= 1` with `sigma[j] != expected[j]`.
    pub first_mismatch: Option<usize>,
}

impl SigmaProfile {
    pub fn of(table: &BettiTable) -> Self {
        let n = table.n();
        let sigma: Vec<BigInt> = (0..=n).map(|j| self::sigma(table, j).expect("j in range")).collect();
        let expected: Vec<BigInt> = (0..=n).map(|j| expected_sigma(n, table.d(), j)).collect();
        let first_mismatch = (1..=n).find(|&j| sigma[j] != expected[j]);
        SigmaProfile {
            sigma,
            expected,
            first_mismatch,
        }
    }

    /// True when `sigma_j` matches for every `1 <= j < t`.
    pub fn matches_below(&self, t: usize) -> bool {
        self.first_mismatch.is_none_or(|j| j >= t)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerCheck {
    pub sigma0: BigInt,
    pub sigma1: BigInt,
    pub holds: bool,
}

/// `sigma_0 = n` and `sigma_1 = d - 1`, forced for every reduced hypersurface.
pub fn euler_consistency(table: &BettiTable) -> EulerCheck {
    let sigma0 = sigma(table, 0).expect("j = 0");
    let sigma1 = sigma(table, 1).expect("j = 1");
    let holds = sigma0 == big(table.n()) && sigma1 == big(table.d() - 1);
    EulerCheck { sigma0, sigma1, holds }
}

/// Dimension of the singular subscheme read off the sigma profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dimension {
    Smooth,
    Singular { delta: usize },
    Inconsistent { reason: String },
}

pub fn singular_dimension(table: &BettiTable) -> Dimension {
    let euler = euler_consistency(table);
    if !euler.holds {
        return Dimension::Inconsistent {
            reason: format!(
                "sigma_0 = {} (expected {}), sigma_1 = {} (expected {})",
                euler.sigma0,
                table.n(),
                euler.sigma1,
                table.d() - 1
            ),
        };
    }
    let profile = SigmaProfile::of(table);
    match profile.first_mismatch {
        None => Dimension::Smooth,
        Some(j) if j >= 2 => Dimension::Singular { delta: table.n() - j },
        Some(j) => Dimension::Inconsistent {
            reason: format!("sigma_{j} differs from its forced value"),
        },
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeOfSigma {
    pub delta: usize,
    /// `(d-1)^(n-delta) + (-1)^(n-delta) sigma_{n-delta}`.
    pub numerator: BigInt,
    pub denominator: BigInt,
    /// Exact quotient, when the division is exact.
    pub value: Option<BigInt>,
}

impl DegreeOfSigma {
    pub fn is_positive(&self) -> bool {
        self.value.as_ref().is_some_and(Signed::is_positive)
    }

    pub fn as_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), self.denominator.clone())
    }
}

/// Degree of the singular subscheme for a claimed dimension `delta`.
pub fn degree_of_sigma(table: &BettiTable, delta: usize) -> Result<DegreeOfSigma, RuleError> {
    let n = table.n();
    if delta > n {
        return Err(RuleError::PowerOutOfRange { j: delta, n });
    }
    let c = n - delta;
    let s = sigma(table, c)?;
    let numerator = pow(&big(table.d() - 1), c) + sign(c) * s;
    let denominator = factorial(c);
    let (q, r) = numerator.div_rem(&denominator);
    Ok(DegreeOfSigma {
        delta,
        value: r.is_zero().then_some(q),
        numerator,
        denominator,
    })
}

/// Column sizes `binom(n+1, k+1)` with all degrees `k(d-1)`: the Koszul
/// resolution of `n + 1` forms of degree `d - 1` forming a regular sequence.
pub fn koszul_smooth_table(n: usize, d: u64) -> Result<BettiTable, RuleError> {
    if n < 2 || d < 3 {
        return Err(RuleError::Range { n, d, min_n: 2 });
    }
    let columns = (1..=n)
        .map(|k| {
            let m = binomial(n as u64 + 1, k as u64 + 1).to_usize().expect("small binomial");
            vec![k as u64 * (d - 1); m]
        })
        .collect();
    Ok(BettiTable::new(n, d, columns).expect("valid shape"))
}

/// `dim S_m` in `n + 1` variables, zero for negative `m`.
pub fn dim_s(n: usize, m: i64) -> BigInt {
    if m < 0 {
        BigInt::zero()
    } else {
        binomial(m as u64 + n as u64, n as u64)
    }
}

/// Hilbert function of `M(f)` in degree `k` from the alternating sum over
/// the resolution.
pub fn hilbert_function_from_table(table: &BettiTable, k: i64) -> BigInt {
    let n = table.n();
    let shift = table.d() as i64 - 1;
    let mut h = dim_s(n, k) - big(n + 1) * dim_s(n, k - shift);
    for kk in 1..=n {
        let mut s = BigInt::zero();
        for &v in table.column(kk) {
            s += dim_s(n, k - shift - v as i64);
        }
        if kk % 2 == 1 {
            h += s;
        } else {
            h -= s;
        }
    }
    h
}

/// Coefficients `A_0(a), ..., A_n(a)` of `n! binom(k + a + n, n)` as a
/// polynomial in `k`; `A_j(a)` is the elementary symmetric function of degree
/// `n - j` in `a + 1, ..., a + n`.
pub fn a_coefficients(n: usize, a: i64) -> Vec<BigInt> {
    // expand prod_{i=1..n} (z + a + i)
    let mut poly = vec![BigInt::one()];
    for i in 1..=n as i64 {
        let root = big(a + i);
        let mut next = vec![BigInt::zero(); poly.len() + 1];
        for (e, c) in poly.iter().enumerate() {
            next[e + 1] += c;
            next[e] += c * &root;
        }
        poly = next;
    }
    poly
}

/// The coefficients `B_0..B_n` with `n! dim M(f)_{s+d-1} = sum B_j s^j` for
/// large `s`.
pub fn b_coefficients(table: &BettiTable) -> Vec<BigInt> {
    let n = table.n();
    let mut b = a_coefficients(n, table.d() as i64 - 1);
    for (bj, aj) in b.iter_mut().zip(a_coefficients(n, 0)) {
        *bj -= big(n + 1) * aj;
    }
    let mut cache: HashMap<u64, Vec<BigInt>> = HashMap::new();
    for k in 1..=n {
        for &v in table.column(k) {
            let a = cache.entry(v).or_insert_with(|| a_coefficients(n, -(v as i64)));
            for (bj, aj) in b.iter_mut().zip(a.iter()) {
                if k % 2 == 1 {
                    *bj += aj;
                } else {
                    *bj -= aj;
                }
            }
        }
    }
    b
}

/// Hilbert polynomial `P(k)` of a table, coefficients by increasing power of
/// `k`, trailing zeros removed (the zero polynomial is empty).
pub fn hilbert_polynomial_from_table(table: &BettiTable) -> Vec<BigRational> {
    let n = table.n();
    let b = b_coefficients(table);
    let c = big(table.d() - 1);
    let nf = factorial(n);
    let mut out = vec![BigRational::zero(); n + 1];
    // P(k) = 1/n! sum_j B_j (k - c)^j
    for (j, bj) in b.iter().enumerate() {
        if bj.is_zero() {
            continue;
        }
        for (i, slot) in out.iter_mut().enumerate().take(j + 1) {
            let term = bj * binomial(j as u64, i as u64) * pow(&(-&c), j - i);
            *slot += BigRational::new(term, nf.clone());
        }
    }
    while out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityBound {
    pub k: usize,
    /// Largest degree in column `k`, if any.
    pub top: Option<u64>,
    /// `n(d-2) + k - 1`.
    pub bound: i64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularity {
    /// `max_k (d_{k,m_k} + d - k - 2)` over nonempty columns.
    pub reg: Option<i64>,
    /// `(n+1)(d-2) - 1`, the bound for isolated singularities.
    pub isolated_bound: i64,
    pub bounds: Vec<RegularityBound>,
}

pub fn regularity_and_ik(table: &BettiTable) -> Regularity {
    let n = table.n() as i64;
    let d = table.d() as i64;
    let mut reg: Option<i64> = None;
    let mut bounds = Vec::with_capacity(table.n());
    for k in 1..=table.n() {
        let top = table.column(k).last().copied();
        if let Some(t) = top {
            let r = t as i64 + d - 1 - k as i64 - 1;
            reg = Some(reg.map_or(r, |x| x.max(r)));
        }
        let bound = n * (d - 2) + k as i64 - 1;
        bounds.push(RegularityBound {
            k,
            top,
            bound,
            holds: top.is_none_or(|t| t as i64 <= bound),
        });
    }
    Regularity {
        reg,
        isolated_bound: (n + 1) * (d - 2) - 1,
        bounds,
    }
}

/// Bounds on `tau` for isolated singularities in terms of `r = d_{1,1}`,
/// and the equivalent interval for `(-1)^n sigma_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TjurinaBounds {
    pub r: u64,
    pub sigma_interval: (BigInt, BigInt),
    pub signed_sigma: BigInt,
    pub tau_interval: (BigInt, BigInt),
    pub tau: BigRational,
    pub inside: bool,
}

/// Not applicable (None) unless the table reads as `delta = 0`.
pub fn duplessis_wall_check(table: &BettiTable) -> Option<TjurinaBounds> {
    if singular_dimension(table) != (Dimension::Singular { delta: 0 }) {
        return None;
    }
    let r = *table.column(1).first()?;
    let n = table.n();
    let d1 = big(table.d() - 1);
    let nf = factorial(n);
    let rb = big(r);
    let spread = big(table.d() as i64 - r as i64 - 1);
    let top = pow(&d1, n);
    let tau_low = &top - &rb * pow(&d1, n - 1);
    let tau_high = &top - &rb * &spread * pow(&d1, n - 2);
    let base = (&nf - 1) * &top;
    let sigma_low = &base - &nf * &rb * pow(&d1, n - 1);
    let sigma_high = &base - &nf * &rb * &spread * pow(&d1, n - 2);
    let signed_sigma = sign(n) * sigma(table, n).expect("j = n");
    let tau = BigRational::new(&top + &signed_sigma, nf);
    let inside = sigma_low <= signed_sigma && signed_sigma <= sigma_high;
    Some(TjurinaBounds {
        r,
        sigma_interval: (sigma_low, sigma_high),
        signed_sigma,
        tau_interval: (tau_low, tau_high),
        tau,
        inside,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Divisibility {
    pub t: usize,
    /// `(d-1)^t + (-1)^t sigma_t`.
    pub n_t: BigInt,
    pub divisible: bool,
}

/// `t! | N_t`, applicable (Some) when the sigma relations hold for `j < t`.
pub fn divisibility_n_t(table: &BettiTable, t: usize) -> Result<Option<Divisibility>, RuleError> {
    let n = table.n();
    if t == 0 || t > n {
        return Err(RuleError::TOutOfRange { t, n });
    }
    let d = table.d();
    for j in 1..t {
        if sigma(table, j)? != expected_sigma(n, d, j) {
            return Ok(None);
        }
    }
    let n_t = pow(&big(d - 1), t) + sign(t) * sigma(table, t)?;
    let divisible = n_t.is_multiple_of(&factorial(t));
    Ok(Some(Divisibility { t, n_t, divisible }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyzygyCheck {
    pub j: usize,
    pub previous_rank: usize,
    pub min_degree: u64,
    /// Largest of the three smallest degrees of column `j - 1`.
    pub previous_third: Option<u64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structural {
    /// `d_{1,1} = 0`.
    pub cone: bool,
    /// `m_1 = n` with nothing beyond.
    pub free: bool,
    pub m1: usize,
    /// `m_1 >= n`, and `m_1 = n` only for a resolution of length two.
    pub m1_holds: bool,
    /// One entry per nonempty column `j >= 2`.
    pub syzygies: Vec<SyzygyCheck>,
}

impl Structural {
    pub fn holds(&self) -> bool {
        self.m1_holds && self.syzygies.iter().all(|s| s.holds)
    }
}

pub fn structural_checks(table: &BettiTable) -> Structural {
    let n = table.n();
    let m1 = table.rank(1);
    let higher_empty = (2..=n).all(|k| table.rank(k) == 0);
    let cone = table.column(1).first() == Some(&0);
    let free = m1 == n && higher_empty;
    let m1_holds = m1 > n || free;
    let syzygies = (2..=n)
        .filter(|&j| table.rank(j) > 0)
        .map(|j| {
            let prev = table.column(j - 1);
            let min_degree = table.column(j)[0];
            let previous_third = prev.iter().take(3).max().copied();
            SyzygyCheck {
                j,
                previous_rank: prev.len(),
                min_degree,
                previous_third,
                holds: prev.len() >= 3 && previous_third.is_some_and(|m| min_degree > m),
            }
        })
        .collect();
    Structural {
        cone,
        free,
        m1,
        m1_holds,
        syzygies,
    }
}

/// `max{k : m_k > 0} + 1`.
pub fn projective_dimension(table: &BettiTable) -> usize {
    (1..=table.n()).rev().find(|&k| table.rank(k) > 0).unwrap_or(0) + 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PdCodim {
    pub pd: usize,
    pub codim: usize,
    pub holds: bool,
}

pub fn pd_codim_check(table: &BettiTable, delta: usize) -> PdCodim {
    let pd = projective_dimension(table);
    let codim = table.n().saturating_sub(delta);
    PdCodim {
        pd,
        codim,
        holds: pd >= codim,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HspogWitness {
    /// 1-based position in column 1 with `d_{2,1} = d_{1,i} + 1`.
    pub index: usize,
    /// Sum of the other `n` degrees of column 1.
    pub remaining_sum: u64,
    pub sum_matches_d: bool,
}

pub fn hspog_detect(table: &BettiTable) -> Option<HspogWitness> {
    let n = table.n();
    if table.rank(1) != n + 1 || table.rank(2) != 1 || (3..=n).any(|k| table.rank(k) > 0) {
        return None;
    }
    let d21 = table.column(2)[0];
    let c1 = table.column(1);
    let pos = c1.iter().position(|&v| v + 1 == d21)?;
    let remaining_sum = c1.iter().sum::<u64>() - c1[pos];
    Some(HspogWitness {
        index: pos + 1,
        remaining_sum,
        sum_matches_d: remaining_sum == table.d(),
    })
}

/// The largest root `n (n + 1 + a sqrt(b)) / (n + 1)` of
/// `g(d) = (n+1) d^2 - 2n(n+1) d + 4n^2`, with `a^2 b = n^2 - 2n - 3`.
#[derive(Debug, Clone, PartialEq)]
pub struct Threshold {
    pub n: usize,
    pub radical_coefficient: u64,
    pub radicand: u64,
    pub approx: f64,
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n as u64;
        let m = n + 1;
        if self.radicand == 0 {
            return write!(f, "{n}");
        }
        let rad = if self.radical_coefficient == 1 {
            format!("√{}", self.radicand)
        } else {
            format!("{}√{}", self.radical_coefficient, self.radicand)
        };
        write!(f, "{n}({m} + {rad})/{m}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HspogGuarantee {
    pub n: usize,
    pub d: u64,
    pub g: BigInt,
    pub guaranteed: bool,
    pub threshold: Threshold,
}

/// `g(d)` for the given `n`.
pub fn hspog_g(n: usize, d: u64) -> BigInt {
    let n = big(n);
    let d = big(d);
    (&n + 1) * &d * &d - big(2) * &n * (&n + 1) * &d + big(4) * &n * &n
}

/// Decides `d > d'` exactly: `g(d) > 0` to the right of the vertex `d = n`.
pub fn hspog_dim_guarantee(n: usize, d: u64) -> Result<HspogGuarantee, RuleError> {
    if n < 3 || d < 3 {
        return Err(RuleError::Range { n, d, min_n: 3 });
    }
    let g = hspog_g(n, d);
    let guaranteed = g.is_positive() && d > n as u64;
    let disc = (n as u64 - 3) * (n as u64 + 1);
    let (mut a, mut b) = (1u64, disc);
    let mut p = 2u64;
    while p * p <= b {
        while b % (p * p) == 0 {
            b /= p * p;
            a *= p;
        }
        p += 1;
    }
    let nf = n as f64;
    let approx = nf * (nf + 1.0 + (disc as f64).sqrt()) / (nf + 1.0);
    Ok(HspogGuarantee {
        n,
        d,
        g,
        guaranteed,
        threshold: Threshold {
            n,
            radical_coefficient: a,
            radicand: b,
            approx,
        },
    })
}

// ---------------------------------------------------------------------------
// aggregated report

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    NotApplicable,
}

impl Status {
    fn from_bool(b: bool) -> Self {
        if b {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::NotApplicable => "not-applicable",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Int(BigInt),
    Rational(BigRational),
    Interval(BigInt, BigInt),
    Bool(bool),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    /// What the check rests on, e.g. the dimension hypothesis it needs.
    pub source: &'static str,
    pub witness: Vec<(&'static str, Witness)>,
}

impl Check {
    fn new(name: impl Into<String>, status: Status, source: &'static str) -> Self {
        Check {
            name: name.into(),
            status,
            source,
            witness: Vec::new(),
        }
    }

    fn with(mut self, key: &'static str, w: Witness) -> Self {
        self.witness.push((key, w));
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flag {
    Cone,
    Free,
    KoszulShape,
    Hspog,
}

impl Flag {
    pub fn as_str(&self) -> &'static str {
        match self {
            Flag::Cone => "CONE",
            Flag::Free => "FREE",
            Flag::KoszulShape => "KOSZUL_SHAPE",
            Flag::Hspog => "HSPOG",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Smooth,
    Singular { delta: usize, degree: BigInt },
    Inconsistent { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularReport {
    pub n: usize,
    pub d: u64,
    pub sigma: SigmaProfile,
    pub dimension: Dimension,
    pub degree: Option<DegreeOfSigma>,
    /// Total Tjurina number, i.e. the degree when `delta = 0`.
    pub tau: Option<BigInt>,
    pub verdict: Verdict,
    pub regularity: Regularity,
    pub pd: usize,
    pub divisibility: Vec<(usize, Option<Divisibility>)>,
    pub tjurina_bounds: Option<TjurinaBounds>,
    pub structural: Structural,
    pub hspog: Option<HspogWitness>,
    pub hilbert_polynomial: Option<Vec<BigRational>>,
    pub flags: Vec<Flag>,
    pub checks: Vec<Check>,
}

impl SingularReport {
    /// Names of failed checks, in check order.
    pub fn obstructions(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| c.status == Status::Fail)
            .map(|c| c.name.as_str())
            .collect()
    }

    /// No necessary condition fails.
    pub fn realizable(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Runs every check on `table`.
pub fn full_report(table: &BettiTable) -> SingularReport {
    let n = table.n();
    let d = table.d();
    let sigma = SigmaProfile::of(table);
    let euler = euler_consistency(table);
    let dimension = singular_dimension(table);
    let delta = match dimension {
        Dimension::Singular { delta } => Some(delta),
        _ => None,
    };
    let degree = delta.map(|dl| degree_of_sigma(table, dl).expect("delta <= n"));
    let tau = match (&delta, &degree) {
        (Some(0), Some(dg)) => dg.value.clone(),
        _ => None,
    };
    let verdict = match (&dimension, &degree) {
        (Dimension::Smooth, _) => Verdict::Smooth,
        (Dimension::Inconsistent { reason }, _) => Verdict::Inconsistent { reason: reason.clone() },
        (Dimension::Singular { delta }, Some(dg)) => match &dg.value {
            Some(v) if v.is_positive() => Verdict::Singular {
                delta: *delta,
                degree: v.clone(),
            },
            Some(v) => Verdict::Inconsistent {
                reason: format!("degree of the singular subscheme would be {v}"),
            },
            None => Verdict::Inconsistent {
                reason: format!(
                    "degree of the singular subscheme would be {}, not an integer",
                    dg.as_rational()
                ),
            },
        },
        (Dimension::Singular { .. }, None) => unreachable!("degree computed for every delta"),
    };
    let regularity = regularity_and_ik(table);
    let pd = projective_dimension(table);
    let divisibility: Vec<_> = (1..=n)
        .map(|t| (t, divisibility_n_t(table, t).expect("t in range")))
        .collect();
    let tjurina_bounds = duplessis_wall_check(table);
    let structural = structural_checks(table);
    let hspog = hspog_detect(table);
    let hilbert_polynomial = euler.holds.then(|| hilbert_polynomial_from_table(table));

    let mut flags = Vec::new();
    if structural.cone {
        flags.push(Flag::Cone);
    }
    if structural.free {
        flags.push(Flag::Free);
    }
    if koszul_smooth_table(n, d).is_ok_and(|k| &k == table) {
        flags.push(Flag::KoszulShape);
    }
    if hspog.is_some() {
        flags.push(Flag::Hspog);
    }

    let mut checks = Vec::new();
    checks.push(
        Check::new("euler", Status::from_bool(euler.holds), "sigma_0 = n and sigma_1 = d - 1")
            .with("sigma_0", Witness::Int(euler.sigma0.clone()))
            .with("sigma_1", Witness::Int(euler.sigma1.clone())),
    );
    checks.push(
        Check::new(
            "structural.m1",
            Status::from_bool(structural.m1_holds),
            "m_1 >= n, with equality only for free hypersurfaces",
        )
        .with("m_1", Witness::Int(big(structural.m1)))
        .with("n", Witness::Int(big(n))),
    );
    for s in &structural.syzygies {
        let mut c = Check::new(
            format!("structural.syzygy_{}", s.j),
            Status::from_bool(s.holds),
            "a higher syzygy involves at least three lower ones of smaller degree",
        )
        .with("m_prev", Witness::Int(big(s.previous_rank)))
        .with("min_degree", Witness::Int(big(s.min_degree)));
        if let Some(p) = s.previous_third {
            c = c.with("prev_max_of_first_three", Witness::Int(big(p)));
        }
        checks.push(c);
    }
    checks.push(match &degree {
        Some(dg) => {
            let mut c = Check::new("degree", Status::from_bool(dg.is_positive()), "deg Sigma is a positive integer")
                .with("delta", Witness::Int(big(dg.delta)))
                .with("numerator", Witness::Int(dg.numerator.clone()));
            c = c.with("degree", Witness::Rational(dg.as_rational()));
            c
        }
        None => Check::new("degree", Status::NotApplicable, "deg Sigma is a positive integer"),
    });
    for (t, div) in &divisibility {
        let name = format!("divisibility.{t}");
        let source = "t! divides N_t once sigma_j matches for j < t";
        checks.push(match div {
            Some(dv) => Check::new(name, Status::from_bool(dv.divisible), source)
                .with("N_t", Witness::Int(dv.n_t.clone()))
                .with("t_factorial", Witness::Int(factorial(*t))),
            None => Check::new(name, Status::NotApplicable, source),
        });
    }
    let isolated = delta == Some(0);
    for b in &regularity.bounds {
        let status = if isolated {
            Status::from_bool(b.holds)
        } else {
            Status::NotApplicable
        };
        let mut c = Check::new(
            format!("regularity.I_{}", b.k),
            status,
            "regularity bound for isolated singularities",
        )
        .with("bound", Witness::Int(big(b.bound)));
        if let Some(t) = b.top {
            c = c.with("top", Witness::Int(big(t)));
        }
        checks.push(c);
    }
    checks.push(match &tjurina_bounds {
        Some(tb) => Check::new(
            "duplessis_wall",
            Status::from_bool(tb.inside),
            "du Plessis-Wall bounds on the total Tjurina number",
        )
        .with("r", Witness::Int(big(tb.r)))
        .with("signed_sigma_n", Witness::Int(tb.signed_sigma.clone()))
        .with("sigma_interval", Witness::Interval(tb.sigma_interval.0.clone(), tb.sigma_interval.1.clone()))
        .with("tau", Witness::Rational(tb.tau.clone()))
        .with("tau_interval", Witness::Interval(tb.tau_interval.0.clone(), tb.tau_interval.1.clone())),
        None => Check::new(
            "duplessis_wall",
            Status::NotApplicable,
            "du Plessis-Wall bounds on the total Tjurina number",
        ),
    });
    checks.push(match delta {
        Some(dl) => {
            let pc = pd_codim_check(table, dl);
            Check::new("pd_codim", Status::from_bool(pc.holds), "pd M(f) >= codim Sigma")
                .with("pd", Witness::Int(big(pc.pd)))
                .with("codim", Witness::Int(big(pc.codim)))
        }
        None => Check::new("pd_codim", Status::NotApplicable, "pd M(f) >= codim Sigma"),
    });

    SingularReport {
        n,
        d,
        sigma,
        dimension,
        degree,
        tau,
        verdict,
        regularity,
        pd,
        divisibility,
        tjurina_bounds,
        structural,
        hspog,
        hilbert_polynomial,
        flags,
        checks,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example1() -> BettiTable {
        BettiTable::from_runs(4, 3, &[&[(2, 9), (3, 1)], &[(4, 7), (5, 3)], &[(6, 2), (7, 3)], &[(9, 1)]]).unwrap()
    }

    fn example2() -> BettiTable {
        BettiTable::from_runs(
            4,
            3,
            &[
                &[(2, 10), (10, 17), (14, 17)],
                &[(4, 10), (11, 68)],
                &[(6, 5), (12, 102)],
                &[(8, 1), (13, 68)],
            ],
        )
        .unwrap()
    }

    fn triangle_plus_cube() -> BettiTable {
        BettiTable::new(3, 3, vec![vec![1, 1, 2, 2, 2], vec![3, 3]]).unwrap()
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(&example2(), 4).unwrap(), big(392));
        assert_eq!(sigma(&example1(), 4).unwrap(), big(-208));
        assert_eq!(sigma(&example1(), 0).unwrap(), big(4));
        assert_eq!(
            sigma(&example1(), 5),
            Err(RuleError::PowerOutOfRange { j: 5, n: 4 })
        );
        let p = SigmaProfile::of(&example1());
        assert_eq!(p.sigma, vec![big(4), big(2), big(-4), big(8), big(-208)]);
        assert_eq!(p.first_mismatch, Some(4));
    }

    #[test]
    fn euler_examples() {
        assert!(euler_consistency(&example1()).holds);
        assert!(euler_consistency(&koszul_smooth_table(2, 3).unwrap()).holds);
        let mut cols = example1().columns().to_vec();
        cols[3] = vec![8];
        let bad = BettiTable::new(4, 3, cols).unwrap();
        let e = euler_consistency(&bad);
        assert!(!e.holds);
        assert_eq!(e.sigma1, big(3));
        assert!(matches!(singular_dimension(&bad), Dimension::Inconsistent { .. }));
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(singular_dimension(&example1()), Dimension::Singular { delta: 0 });
        assert_eq!(singular_dimension(&koszul_smooth_table(3, 3).unwrap()), Dimension::Smooth);
        assert_eq!(singular_dimension(&triangle_plus_cube()), Dimension::Singular { delta: 0 });
        assert_eq!(sigma(&triangle_plus_cube(), 3).unwrap(), big(-28));
    }

    #[test]
    fn degree_examples() {
        let e1 = degree_of_sigma(&example1(), 0).unwrap();
        assert_eq!(e1.value, Some(big(-8)));
        assert!(!e1.is_positive());
        assert_eq!(degree_of_sigma(&example2(), 0).unwrap().value, Some(big(17)));
        assert_eq!(degree_of_sigma(&triangle_plus_cube(), 0).unwrap().value, Some(big(6)));
    }

    #[test]
    fn koszul_tables() {
        let t = koszul_smooth_table(2, 3).unwrap();
        assert_eq!(t.columns(), &[vec![2, 2, 2], vec![4]]);
        let t = koszul_smooth_table(3, 3).unwrap();
        assert_eq!(t.ranks(), vec![6, 4, 1]);
        assert_eq!(t.column(3), &[6]);
        assert!(koszul_smooth_table(1, 3).is_err());
        for n in 2..=6 {
            for d in 3..=8 {
                let t = koszul_smooth_table(n, d).unwrap();
                let p = SigmaProfile::of(&t);
                assert_eq!(p.sigma, p.expected, "n={n} d={d}");
                assert_eq!(singular_dimension(&t), Dimension::Smooth);
            }
        }
    }

    #[test]
    fn hilbert_function_examples() {
        let t = triangle_plus_cube();
        assert_eq!(hilbert_function_from_table(&t, 2), big(6));
        assert_eq!(hilbert_function_from_table(&t, 4), big(6));
        assert_eq!(hilbert_function_from_table(&koszul_smooth_table(2, 3).unwrap(), 7), big(0));
        let values: Vec<BigInt> = (0..6).map(|k| hilbert_function_from_table(&t, k)).collect();
        assert_eq!(values, vec![big(1), big(4), big(6), big(6), big(6), big(6)]);
    }

    #[test]
    fn a_coefficients_match_binomials() {
        // n! binom(k + a + n, n) = sum_j A_j(a) k^j for every k
        for n in 1..=5usize {
            for a in -4..=4i64 {
                let coeffs = a_coefficients(n, a);
                assert_eq!(coeffs[n], BigInt::one());
                assert_eq!(coeffs[n - 1], big(n as i64 * a) + big((n * (n + 1) / 2) as i64));
                for k in (a.abs() + 1)..(a.abs() + 6) {
                    let lhs = factorial(n) * dim_s(n, k + a);
                    let rhs: BigInt = coeffs.iter().enumerate().map(|(j, c)| c * pow(&big(k), j)).sum();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn hilbert_polynomial_examples() {
        assert_eq!(
            hilbert_polynomial_from_table(&triangle_plus_cube()),
            vec![BigRational::from_integer(big(6))]
        );
        assert!(hilbert_polynomial_from_table(&koszul_smooth_table(3, 3).unwrap()).is_empty());
        assert_eq!(
            hilbert_polynomial_from_table(&example2()),
            vec![BigRational::from_integer(big(17))]
        );
    }

    #[test]
    fn regularity_examples() {
        let r = regularity_and_ik(&example1());
        let holds: Vec<bool> = r.bounds.iter().map(|b| b.holds).collect();
        assert_eq!(holds, vec![true, true, false, false]);
        let r = regularity_and_ik(&example2());
        assert!(r.bounds.iter().all(|b| !b.holds));
        let r = regularity_and_ik(&triangle_plus_cube());
        assert_eq!(r.reg, Some(2));
        assert!(r.bounds[0].holds && r.bounds[0].bound == 3);
        assert!(r.bounds[1].holds && r.bounds[1].bound == 4);
        assert!(r.bounds[2].holds && r.bounds[2].top.is_none());
    }

    #[test]
    fn tjurina_bound_examples() {
        let tb = duplessis_wall_check(&example2()).unwrap();
        assert_eq!(tb.sigma_interval, (big(-16), big(368)));
        assert_eq!(tb.signed_sigma, big(392));
        assert!(!tb.inside);
        let tb = duplessis_wall_check(&triangle_plus_cube()).unwrap();
        assert_eq!(tb.tau_interval, (big(4), big(6)));
        assert_eq!(tb.tau, BigRational::from_integer(big(6)));
        assert!(tb.inside);
        let tb = duplessis_wall_check(&example1()).unwrap();
        assert!(!tb.inside);
        assert!(duplessis_wall_check(&koszul_smooth_table(3, 3).unwrap()).is_none());
    }

    #[test]
    fn divisibility_examples() {
        let dv = divisibility_n_t(&example1(), 4).unwrap().unwrap();
        assert_eq!(dv.n_t, big(-192));
        assert!(dv.divisible);
        let dv = divisibility_n_t(&example2(), 4).unwrap().unwrap();
        assert_eq!(dv.n_t, big(408));
        assert!(dv.divisible);
        let dv = divisibility_n_t(&triangle_plus_cube(), 1).unwrap().unwrap();
        assert_eq!(dv.n_t, big(0));
        assert!(divisibility_n_t(&example1(), 0).is_err());
        assert!(divisibility_n_t(&example1(), 5).is_err());
    }

    #[test]
    fn structural_examples() {
        assert!(structural_checks(&example1()).holds());
        let s = structural_checks(&triangle_plus_cube());
        assert!(s.holds());
        assert_eq!(s.syzygies[0].previous_third, Some(2));
        let bad = BettiTable::new(3, 4, vec![vec![1, 2, 3, 3], vec![3]]).unwrap();
        let s = structural_checks(&bad);
        assert!(!s.holds());
        let cone = BettiTable::new(2, 3, vec![vec![0, 2, 2], vec![3]]).unwrap();
        assert!(structural_checks(&cone).cone);
        let free = BettiTable::new(2, 4, vec![vec![1, 2]]).unwrap();
        let s = structural_checks(&free);
        assert!(s.free && s.holds());
    }

    #[test]
    fn pd_codim_examples() {
        let pc = pd_codim_check(&triangle_plus_cube(), 0);
        assert_eq!((pc.pd, pc.codim, pc.holds), (3, 3, true));
        let pc = pd_codim_check(&example1(), 0);
        assert_eq!((pc.pd, pc.holds), (5, true));
        let short = BettiTable::new(4, 3, vec![vec![2; 5], vec![3]]).unwrap();
        assert!(!pd_codim_check(&short, 0).holds);
    }

    #[test]
    fn hspog_examples() {
        let t = BettiTable::new(3, 4, vec![vec![1, 1, 2, 2], vec![3]]).unwrap();
        assert!(euler_consistency(&t).holds);
        let w = hspog_detect(&t).unwrap();
        assert_eq!(w.index, 3);
        assert_eq!(w.remaining_sum, 4);
        assert!(w.sum_matches_d);
        assert!(hspog_detect(&triangle_plus_cube()).is_none());
        assert!(hspog_detect(&example1()).is_none());
    }

    #[test]
    fn hspog_guarantee_examples() {
        assert!(hspog_dim_guarantee(3, 4).unwrap().guaranteed);
        assert!(!hspog_dim_guarantee(3, 3).unwrap().guaranteed);
        let g = hspog_dim_guarantee(4, 5).unwrap();
        assert!(!g.guaranteed);
        assert_eq!(g.threshold.to_string(), "4(5 + √5)/5");
        assert!((g.threshold.approx - 5.789).abs() < 1e-3);
        assert!(hspog_dim_guarantee(4, 6).unwrap().guaranteed);
        assert!(hspog_dim_guarantee(5, 10).unwrap().guaranteed);
        assert!(hspog_dim_guarantee(2, 10).is_err());
    }

    #[test]
    fn guarantee_matches_sign_of_g() {
        for n in 3..=50usize {
            for d in 3..=200u64 {
                let g = hspog_g(n, d);
                assert_eq!(hspog_dim_guarantee(n, d).unwrap().guaranteed, g.is_positive(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn full_report_examples() {
        let r = full_report(&example1());
        assert!(!r.realizable());
        assert_eq!(r.tau, Some(big(-8)));
        assert_eq!(
            r.obstructions(),
            vec!["degree", "regularity.I_3", "regularity.I_4", "duplessis_wall"]
        );
        let r = full_report(&example2());
        assert_eq!(
            r.obstructions(),
            vec![
                "regularity.I_1",
                "regularity.I_2",
                "regularity.I_3",
                "regularity.I_4",
                "duplessis_wall"
            ]
        );
        assert_eq!(r.verdict, Verdict::Singular { delta: 0, degree: big(17) });
        let r = full_report(&koszul_smooth_table(3, 4).unwrap());
        assert_eq!(r.verdict, Verdict::Smooth);
        assert!(r.obstructions().is_empty());
        assert!(r.flags.contains(&Flag::KoszulShape));
    }
}
