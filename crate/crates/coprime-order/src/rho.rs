//! The recurrence engine for the proportion rho(n) of permutations of
//! Sym(n) whose order is coprime to the modulus.
//!
//! With m the radical, Phi the coprime residues in [1, m] and phi = |Phi|,
//! the engine iterates
//!
//! ```text
//!   n rho(n) = sum_{k in Phi} rho(n-k) + (n-m) rho(n-m)      n >= m
//!   n rho(n) = sum_{1<=k<=n, gcd(k,m)=1} rho(n-k)            0 < n < m
//! ```
//!
//! with rho(0) = 1, keeping a sliding window of the last m values, so
//! memory is O(m) when only a tail value is requested and O(n_max) when
//! the series is retained.
//!
//! Exact backend: the canonical representation is the integer count
//! r(n) = rho(n) n! (the number of permutations itself), carried as
//! `BigUint`; multiplying the recurrence by (n-1)! turns it into
//!
//! ```text
//!   r(n) = sum_k (n-1)(n-2)...(n-k+1) r(n-k)  [ + (n-m)(n-1)...(n-m+1) r(n-m) ]
//! ```
//!
//! which needs no gcd anywhere. Reduced rationals (whose reduction cost
//! dominates everything else at 10^4-digit scale) are materialized only on
//! demand. A reference strategy carrying reduced `BigRational` values per
//! step is kept behind the same interface and must produce identical counts.
//!
//! Float backend: binary fixed point, mantissa/2^frac with
//! frac = precision_bits + GUARD_BITS. Summation order is fixed forever
//! (ascending k over Phi, telescoped term last) and the single rounding
//! per step is round-half-up division by n, so series are bit-identical
//! across platforms and runs. The rounding error after n steps is below
//! n/2 ulps (the recurrence is a subconvex combination: the coefficients
//! sum to (n-m+phi)/n <= 1), which enclosures account for with a safe
//! n+1 ulp radius.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::VecDeque;

use crate::arith::{is_prime, Modulus};
use crate::error::{Error, Result};
use crate::numeric::{biguint_to_f64_scaled, Interval, NumericConfig, GUARD_BITS};
use crate::oracle::factorial;

/// Which arithmetic produced a series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    ExactRational,
    Float { precision_bits: u32 },
}

/// How the exact backend carries its state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExactStrategy {
    /// Integer counts r(n) = rho(n) n!; no reduction in the loop. Default.
    #[default]
    IntegerForm,
    /// Reduced BigRational per step; reference implementation, identical
    /// output, far slower at long ranges.
    RationalWindow,
}

/// Exact series payload: r(n) = |{g in Sym(n) : order coprime to m}|.
#[derive(Debug, Clone)]
pub struct ExactSeries {
    counts: Vec<BigUint>,
}

/// Float series payload: values[n]/2^frac approximates rho(n).
#[derive(Debug, Clone)]
pub struct FloatSeries {
    frac: u32,
    values: Vec<BigUint>,
}

#[derive(Debug, Clone)]
pub enum SeriesValues {
    Exact(ExactSeries),
    Float(FloatSeries),
}

/// rho(0..=n_max) for one modulus, values tagged by backend.
#[derive(Debug, Clone)]
pub struct RhoSeries {
    modulus: Modulus,
    n_max: u64,
    backend: Backend,
    values: SeriesValues,
}

impl RhoSeries {
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn values(&self) -> &SeriesValues {
        &self.values
    }

    /// The integer count r(n); None on the float backend.
    pub fn count(&self, n: u64) -> Option<&BigUint> {
        match &self.values {
            SeriesValues::Exact(e) => e.counts.get(n as usize),
            SeriesValues::Float(_) => None,
        }
    }

    /// Reduced rho(n); None on the float backend. Costs one big gcd.
    pub fn exact(&self, n: u64) -> Option<BigRational> {
        let r = self.count(n)?;
        Some(BigRational::new(
            r.clone().into(),
            factorial(n).into(),
        ))
    }

    pub fn value_f64(&self, n: u64) -> f64 {
        match &self.values {
            SeriesValues::Exact(e) => {
                let iv = Interval::from_ratio(&e.counts[n as usize], &factorial(n), 128);
                iv.mid_f64()
            }
            SeriesValues::Float(f) => biguint_to_f64_scaled(&f.values[n as usize], f.frac),
        }
    }

    /// Certified enclosure of rho(n) at the requested scale.
    ///
    /// Exact backend: one ulp wide (recomputes n!, so prefer
    /// [`RhoSeries::intervals`] for sweeps). Float backend: the stored
    /// mantissa widened by the proven n+1 ulp error radius.
    pub fn interval(&self, n: u64, frac: u32) -> Interval {
        match &self.values {
            SeriesValues::Exact(e) => {
                Interval::from_ratio(&e.counts[n as usize], &factorial(n), frac)
            }
            SeriesValues::Float(f) => {
                Interval::from_mantissa(&f.values[n as usize], f.frac, n + 1).rescale(frac)
            }
        }
    }

    /// Streaming enclosures of rho(0..=n_max) carrying the factorial along.
    pub fn intervals(&self, frac: u32) -> RhoIntervals<'_> {
        RhoIntervals {
            series: self,
            frac,
            n: 0,
            fact: BigUint::one(),
        }
    }
}

pub struct RhoIntervals<'a> {
    series: &'a RhoSeries,
    frac: u32,
    n: u64,
    fact: BigUint,
}

impl Iterator for RhoIntervals<'_> {
    type Item = (u64, Interval);

    fn next(&mut self) -> Option<Self::Item> {
        let n = self.n;
        if n > self.series.n_max {
            return None;
        }
        let iv = match &self.series.values {
            SeriesValues::Exact(e) => {
                Interval::from_ratio(&e.counts[n as usize], &self.fact, self.frac)
            }
            SeriesValues::Float(f) => {
                Interval::from_mantissa(&f.values[n as usize], f.frac, n + 1).rescale(self.frac)
            }
        };
        self.n += 1;
        self.fact *= self.n;
        Some((n, iv))
    }
}

/// A single rho(n) from the windowed engine.
#[derive(Debug, Clone)]
pub enum RhoValue {
    Exact(BigRational),
    Float(FloatValue),
}

impl RhoValue {
    pub fn to_f64(&self) -> f64 {
        match self {
            RhoValue::Exact(r) => Interval::from_rational(r, 128).mid_f64(),
            RhoValue::Float(f) => f.to_f64(),
        }
    }
}

/// Fixed-point value mant/2^frac with its advertised precision.
#[derive(Debug, Clone)]
pub struct FloatValue {
    mant: BigUint,
    frac: u32,
    precision_bits: u32,
}

impl FloatValue {
    pub fn to_f64(&self) -> f64 {
        biguint_to_f64_scaled(&self.mant, self.frac)
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    /// The represented dyadic rational, exactly.
    pub fn to_rational(&self) -> BigRational {
        BigRational::new(
            self.mant.clone().into(),
            (BigUint::one() << self.frac).into(),
        )
    }
}

/// Full series with backend chosen by `cfg`: exact up to the cutoff,
/// float beyond.
pub fn rho_series(modulus: &Modulus, n_max: u64, cfg: &NumericConfig) -> Result<RhoSeries> {
    if n_max <= cfg.exact_cutoff {
        Ok(rho_series_exact(modulus, n_max))
    } else {
        rho_series_float(modulus, n_max, cfg.float_precision_bits)
    }
}

pub fn rho_series_exact(modulus: &Modulus, n_max: u64) -> RhoSeries {
    rho_series_exact_with(modulus, n_max, ExactStrategy::IntegerForm)
}

pub fn rho_series_exact_with(modulus: &Modulus, n_max: u64, strategy: ExactStrategy) -> RhoSeries {
    let counts = match strategy {
        ExactStrategy::IntegerForm => integer_counts(modulus, n_max),
        ExactStrategy::RationalWindow => rational_counts(modulus, n_max),
    };
    RhoSeries {
        modulus: modulus.clone(),
        n_max,
        backend: Backend::ExactRational,
        values: SeriesValues::Exact(ExactSeries { counts }),
    }
}

pub fn rho_series_float(modulus: &Modulus, n_max: u64, precision_bits: u32) -> Result<RhoSeries> {
    if precision_bits < 53 {
        return Err(Error::PrecisionTooSmall(precision_bits));
    }
    Ok(RhoSeries {
        modulus: modulus.clone(),
        n_max,
        backend: Backend::Float { precision_bits },
        values: SeriesValues::Float(float_values(modulus, n_max, precision_bits)),
    })
}

/// rho(n) via the sliding window: O(rad(m)) values retained.
pub fn rho_at(modulus: &Modulus, n: u64, cfg: &NumericConfig) -> Result<RhoValue> {
    if n <= cfg.exact_cutoff {
        let (r, fact) = integer_count_at(modulus, n);
        Ok(RhoValue::Exact(BigRational::new(r.into(), fact.into())))
    } else {
        let frac = cfg.float_precision_bits + GUARD_BITS;
        let mant = float_value_at(modulus, n, frac);
        Ok(RhoValue::Float(FloatValue {
            mant,
            frac,
            precision_bits: cfg.float_precision_bits,
        }))
    }
}

// ---- integer form ----

fn integer_counts(md: &Modulus, n_max: u64) -> Vec<BigUint> {
    let mut counts: Vec<BigUint> = Vec::with_capacity(n_max as usize + 1);
    counts.push(BigUint::one());
    if md.radical() == 1 {
        for n in 1..=n_max {
            let next = &counts[n as usize - 1] * n;
            counts.push(next);
        }
        return counts;
    }
    for n in 1..=n_max {
        let next = integer_step(md, n, &counts);
        counts.push(next);
    }
    counts
}

/// One step of the integer recurrence; prev[i] = r(i) for i < n.
fn integer_step(md: &Modulus, n: u64, prev: &[BigUint]) -> BigUint {
    let m = md.radical();
    let mut acc = BigUint::zero();
    // mult tracks (n-1)(n-2)...(n-k+1), the empty product for k = 1
    let mut mult = BigUint::one();
    let k_hi = m.min(n);
    for k in 1..=k_hi {
        if k > 1 {
            mult *= n - (k - 1);
        }
        if md.is_coprime(k) {
            acc += &mult * &prev[(n - k) as usize];
        }
    }
    if n >= m {
        // telescoped term, added last by convention
        acc += &mult * (n - m) * &prev[(n - m) as usize];
    }
    acc
}

/// Windowed integer form: returns (r(n), n!).
pub(crate) fn integer_count_at(md: &Modulus, n: u64) -> (BigUint, BigUint) {
    let m = md.radical();
    if m == 1 {
        let f = factorial(n);
        return (f.clone(), f);
    }
    let mut window: VecDeque<BigUint> = VecDeque::with_capacity(m as usize + 1);
    window.push_back(BigUint::one());
    let mut fact = BigUint::one();
    for cur in 1..=n {
        let len = window.len();
        let mut acc = BigUint::zero();
        let mut mult = BigUint::one();
        let k_hi = m.min(cur);
        for k in 1..=k_hi {
            if k > 1 {
                mult *= cur - (k - 1);
            }
            if md.is_coprime(k) {
                acc += &mult * &window[len - k as usize];
            }
        }
        if cur >= m {
            acc += &mult * (cur - m) * &window[len - m as usize];
        }
        window.push_back(acc);
        if window.len() > m as usize + 1 {
            window.pop_front();
        }
        fact *= cur;
    }
    (window.pop_back().unwrap(), fact)
}

// ---- rational window (reference strategy) ----

fn rational_counts(md: &Modulus, n_max: u64) -> Vec<BigUint> {
    let m = md.radical();
    let one = BigRational::one();
    let mut rho: Vec<BigRational> = vec![one.clone()];
    for n in 1..=n_max {
        if m == 1 {
            rho.push(one.clone());
            continue;
        }
        let mut acc = BigRational::zero();
        if n < m {
            for k in 1..=n {
                if md.is_coprime(k) {
                    acc += &rho[(n - k) as usize];
                }
            }
        } else {
            for &k in md.phi_set() {
                acc += &rho[(n - k) as usize];
            }
            acc += &rho[(n - m) as usize] * BigRational::from_integer((n - m).into());
        }
        rho.push(acc / BigRational::from_integer(n.into()));
    }
    // materialize counts r(n) = rho(n) n!; the denominator divides n!
    let mut fact = BigUint::one();
    rho.iter()
        .enumerate()
        .map(|(n, v)| {
            if n > 0 {
                fact *= n as u64;
            }
            let den = v.denom().magnitude();
            debug_assert!((&fact % den).is_zero());
            (&fact / den) * v.numer().magnitude()
        })
        .collect()
}

// ---- float backend ----

fn float_values(md: &Modulus, n_max: u64, precision_bits: u32) -> FloatSeries {
    let frac = precision_bits + GUARD_BITS;
    let one = BigUint::one() << frac;
    let m = md.radical();
    let mut values: Vec<BigUint> = Vec::with_capacity(n_max as usize + 1);
    values.push(one.clone());
    for n in 1..=n_max {
        if m == 1 {
            values.push(one.clone());
            continue;
        }
        let v = float_step(md, n, |back| &values[(n - back) as usize]);
        values.push(v);
    }
    FloatSeries { frac, values }
}

/// One float step: fixed summation order, one round-half-up division.
fn float_step<'a, F>(md: &Modulus, n: u64, at: F) -> BigUint
where
    F: Fn(u64) -> &'a BigUint,
{
    let m = md.radical();
    let mut acc = BigUint::zero();
    if n < m {
        for k in 1..=n {
            if md.is_coprime(k) {
                acc += at(k);
            }
        }
    } else {
        for &k in md.phi_set() {
            acc += at(k);
        }
        acc += at(m) * (n - m);
    }
    (acc + n / 2) / n
}

fn float_value_at(md: &Modulus, n: u64, frac: u32) -> BigUint {
    let one = BigUint::one() << frac;
    let m = md.radical();
    if m == 1 {
        return one;
    }
    let mut window: VecDeque<BigUint> = VecDeque::with_capacity(m as usize + 1);
    window.push_back(one);
    for cur in 1..=n {
        let len = window.len();
        let v = float_step(md, cur, |back| &window[len - back as usize]);
        window.push_back(v);
        if window.len() > m as usize + 1 {
            window.pop_front();
        }
    }
    window.pop_back().unwrap()
}

// ---- closed forms and constants ----

/// rho(n, p) for prime p: prod_{i=1}^{floor(n/p)} (1 - 1/(ip)).
pub fn rho_prime_closed_form(p: u64, n: u64) -> Result<BigRational> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut out = BigRational::one();
    for i in 1..=n / p {
        out *= BigRational::new((i * p - 1).into(), (i * p).into());
    }
    Ok(out)
}

/// Unreduced pieces of the prime closed form at block index a = floor(n/p):
/// (prod_{i<=a} (ip - 1), p^a a!). Intended for cross-multiplied equality
/// checks that avoid reduction.
pub fn rho_prime_closed_form_parts(p: u64, a: u64) -> (BigUint, BigUint) {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 1..=a {
        num *= i * p - 1;
        den *= i * p;
    }
    (num, den)
}

/// Proportion of Sym(n) with no cycle length divisible by m (m as given):
/// prod_{i=1}^{floor(n/m)} (1 - 1/(im)).
pub fn no_cycle_product(m: u64, n: u64) -> Result<BigRational> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut out = BigRational::one();
    for i in 1..=n / m {
        out *= BigRational::new((i * m - 1).into(), (i * m).into());
    }
    Ok(out)
}

/// The no-cycle product taken at the radical: an upper bound for rho(n),
/// with equality for all n exactly when the radical is prime.
pub fn p_not_m(modulus: &Modulus, n: u64) -> BigRational {
    no_cycle_product(modulus.radical(), n).expect("radical >= 1")
}

/// C(m) = min of rho over the window [rad, 2 rad - 1], as an exact
/// rational; equals 1 - 1/p when the radical is a prime p, and 1 for m = 1.
pub fn constant_c(modulus: &Modulus) -> BigRational {
    let m = modulus.radical();
    if m == 1 {
        return BigRational::one();
    }
    let series = rho_series_exact(modulus, 2 * m - 1);
    (m..=2 * m - 1)
        .map(|n| series.exact(n).expect("exact backend"))
        .min()
        .expect("nonempty window")
}
