//! Monotonicity structure of the rescaled sequence f(n) = rho(n) (n/m)^e,
//! e = 1 - phi(m)/m, along residue classes n = am + b.
//!
//! All comparisons go through the monotone transform F(n) = f(n)^v =
//! rho(n)^v (n/m)^u (with e = u/v reduced), so no real roots are needed:
//! enclosure comparisons settle almost every pair, and a genuine overlap
//! escalates to a cross-multiplied integer comparison
//!
//! ```text
//!   F(x) <=> F(y)   iff   r(x)^v x^u (y!)^v <=> r(y)^v y^u (x!)^v
//! ```
//!
//! whenever exact counts are reachable (exact backend, or n within the
//! configured exact cutoff for a windowed recomputation). A comparison
//! that stays unresolved is reported as `Flat` and counted, never
//! silently decided; the caller sees exactly where precision ran out.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;

use crate::arith::{is_prime, Modulus};
use crate::error::{Error, Result};
use crate::numeric::{Interval, NumericConfig, GUARD_BITS};
use crate::oracle::factorial;
use crate::rho::{integer_count_at, rho_series, Backend, RhoSeries};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
    Flat,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Up => "up",
            Direction::Down => "down",
            Direction::Flat => "flat",
        })
    }
}

/// Run-length view of the comparisons f((a+1)m+b) vs f(am+b) for
/// a in [a_lo, a_hi); run lengths sum to a_hi - a_lo.
#[derive(Debug, Clone)]
pub struct MonotonicityReport {
    pub modulus: Modulus,
    /// Residue class 0 <= b < rad(m); a class divisible by m is residue 0.
    pub residue: u64,
    pub a_lo: u64,
    pub a_hi: u64,
    pub runs: Vec<(Direction, u64)>,
    /// Least a0 with every comparison from a0 on sharing one direction;
    /// None when the trailing run is flat.
    pub eventually_monotonic_from: Option<u64>,
    /// Comparisons that could not be certified either way.
    pub unresolved: u64,
}

/// Comparison engine over F(n) = rho(n)^v (n/m)^u.
struct FComparer<'a> {
    series: &'a RhoSeries,
    uv: (u32, u32),
    frac: u32,
    exact_cutoff: u64,
}

impl<'a> FComparer<'a> {
    fn new(series: &'a RhoSeries, cfg: &NumericConfig) -> Self {
        let md = series.modulus();
        let (m, phi) = (md.radical(), md.phi());
        let g = num_integer::gcd(m - phi, m);
        let uv = (((m - phi) / g) as u32, (m / g) as u32);
        let frac = match series.backend() {
            Backend::Float { precision_bits } => precision_bits + GUARD_BITS,
            Backend::ExactRational => 192,
        };
        FComparer {
            series,
            uv,
            frac,
            exact_cutoff: cfg.exact_cutoff,
        }
    }

    fn f_pow(&self, n: u64, rho_iv: &Interval) -> Interval {
        let m = self.series.modulus().radical();
        let (u, v) = self.uv;
        let ratio = Interval::from_ratio(
            &BigUint::from(n).pow(u),
            &BigUint::from(m).pow(u),
            self.frac,
        );
        rho_iv.pow(v).mul(&ratio)
    }

    /// Enclosures of F at every requested n (ascending), in one pass
    /// over the series.
    fn f_at(&self, ns: &[u64]) -> Vec<Interval> {
        debug_assert!(ns.windows(2).all(|w| w[0] < w[1]));
        let mut out = Vec::with_capacity(ns.len());
        let mut want = ns.iter().copied().peekable();
        for (n, iv) in self.series.intervals(self.frac) {
            match want.peek() {
                Some(&w) if w == n => {
                    out.push(self.f_pow(n, &iv));
                    want.next();
                }
                Some(_) => {}
                None => break,
            }
        }
        assert_eq!(out.len(), ns.len(), "series does not cover the scan");
        out
    }

    fn exact_parts(&self, n: u64) -> Option<(BigUint, BigUint)> {
        if let Some(c) = self.series.count(n) {
            Some((c.clone(), factorial(n)))
        } else if n <= self.exact_cutoff {
            Some(integer_count_at(self.series.modulus(), n))
        } else {
            None
        }
    }

    /// Ordering of F(x) against F(y); None when unresolvable.
    fn cmp_f(&self, x: (u64, &Interval), y: (u64, &Interval)) -> Option<Ordering> {
        if let Some(o) = x.1.try_cmp(y.1) {
            return Some(o);
        }
        let (u, v) = self.uv;
        let (rx, fx) = self.exact_parts(x.0)?;
        let (ry, fy) = self.exact_parts(y.0)?;
        let lhs = rx.pow(v) * BigUint::from(x.0).pow(u) * fy.pow(v);
        let rhs = ry.pow(v) * BigUint::from(y.0).pow(u) * fx.pow(v);
        Some(lhs.cmp(&rhs))
    }
}

fn fold_runs(dirs: &[Direction]) -> Vec<(Direction, u64)> {
    let mut runs: Vec<(Direction, u64)> = Vec::new();
    for &d in dirs {
        match runs.last_mut() {
            Some((last, count)) if *last == d => *count += 1,
            _ => runs.push((d, 1)),
        }
    }
    runs
}

fn scan_with_series(
    series: &RhoSeries,
    b: u64,
    a_lo: u64,
    a_hi: u64,
    cfg: &NumericConfig,
) -> MonotonicityReport {
    let md = series.modulus().clone();
    let m = md.radical();
    let cmp = FComparer::new(series, cfg);
    let ns: Vec<u64> = (a_lo..=a_hi).map(|a| a * m + b).collect();
    let fs = cmp.f_at(&ns);
    let mut dirs = Vec::with_capacity(fs.len().saturating_sub(1));
    let mut unresolved = 0u64;
    for i in 0..fs.len() - 1 {
        let d = match cmp.cmp_f((ns[i + 1], &fs[i + 1]), (ns[i], &fs[i])) {
            Some(Ordering::Greater) => Direction::Up,
            Some(Ordering::Less) => Direction::Down,
            Some(Ordering::Equal) => Direction::Flat,
            None => {
                unresolved += 1;
                Direction::Flat
            }
        };
        dirs.push(d);
    }
    let runs = fold_runs(&dirs);
    let eventually_monotonic_from = runs.last().and_then(|&(d, len)| {
        if d == Direction::Flat {
            None
        } else {
            Some(a_hi - len)
        }
    });
    MonotonicityReport {
        modulus: md,
        residue: b,
        a_lo,
        a_hi,
        runs,
        eventually_monotonic_from,
        unresolved,
    }
}

/// Directions of f(am+b) -> f((a+1)m+b) for a in [a_lo, a_hi), folded
/// into maximal runs. m is taken at the radical.
pub fn scan_monotonicity(
    modulus: &Modulus,
    b: u64,
    a_lo: u64,
    a_hi: u64,
    cfg: &NumericConfig,
) -> Result<MonotonicityReport> {
    let m = modulus.radical();
    if b >= m {
        return Err(Error::IndexOutOfRange {
            index: b,
            radical: m,
        });
    }
    if a_hi <= a_lo {
        return Err(Error::InvalidRange(format!(
            "need a_hi > a_lo, got [{a_lo}, {a_hi}]"
        )));
    }
    let n_max = a_hi
        .checked_mul(m)
        .and_then(|x| x.checked_add(b))
        .ok_or(Error::CapExceeded {
            what: "scan window",
            n: a_hi,
            cap: u64::MAX / 2,
        })?;
    let series = rho_series(modulus, n_max, cfg)?;
    Ok(scan_with_series(&series, b, a_lo, a_hi, cfg))
}

/// One report per residue class, sharing a single series computation.
pub fn scan_all_residues(
    modulus: &Modulus,
    a_lo: u64,
    a_hi: u64,
    cfg: &NumericConfig,
) -> Result<Vec<MonotonicityReport>> {
    let m = modulus.radical();
    if a_hi <= a_lo {
        return Err(Error::InvalidRange(format!(
            "need a_hi > a_lo, got [{a_lo}, {a_hi}]"
        )));
    }
    let n_max = a_hi
        .checked_mul(m)
        .and_then(|x| x.checked_add(m - 1))
        .ok_or(Error::CapExceeded {
            what: "scan window",
            n: a_hi,
            cap: u64::MAX / 2,
        })?;
    let series = rho_series(modulus, n_max, cfg)?;
    Ok((0..m)
        .map(|b| scan_with_series(&series, b, a_lo, a_hi, cfg))
        .collect())
}

/// Residues 0..m-1 ordered by f at each class's largest representative
/// within [n_lo, n_hi], highest curve first. Certified comparisons;
/// a genuinely unresolvable tie falls back to residue order.
pub fn residue_ordering(
    modulus: &Modulus,
    n_lo: u64,
    n_hi: u64,
    cfg: &NumericConfig,
) -> Result<Vec<u64>> {
    let m = modulus.radical();
    if m == 1 {
        return Ok(vec![0]);
    }
    if n_lo < m || n_hi < n_lo || n_hi - n_lo + 1 < m {
        return Err(Error::InvalidRange(format!(
            "window [{n_lo}, {n_hi}] must start at m={m} or later and span a full residue cycle"
        )));
    }
    let series = rho_series(modulus, n_hi, cfg)?;
    let cmp = FComparer::new(&series, cfg);
    // the largest representatives are exactly the last m integers
    let ns: Vec<u64> = (n_hi - m + 1..=n_hi).collect();
    let fs = cmp.f_at(&ns);
    let mut items: Vec<(u64, u64, Interval)> = ns
        .iter()
        .zip(fs)
        .map(|(&n, f)| (n % m, n, f))
        .collect();
    items.sort_by(|x, y| {
        cmp.cmp_f((x.1, &x.2), (y.1, &y.2))
            .unwrap_or(Ordering::Equal)
            .reverse()
            .then(x.0.cmp(&y.0))
    });
    Ok(items.into_iter().map(|(b, _, _)| b).collect())
}

/// max over b of f(am+b) minus min over b, the vertical extent of the
/// residue fan at block a.
pub fn residue_spread(modulus: &Modulus, a: u64, cfg: &NumericConfig) -> Result<f64> {
    if a < 1 {
        return Err(Error::Domain {
            name: "a",
            value: a as f64,
            constraint: "a >= 1",
        });
    }
    let m = modulus.radical();
    if m == 1 {
        return Ok(0.0);
    }
    let series = rho_series(modulus, a * m + m - 1, cfg)?;
    let cmp = FComparer::new(&series, cfg);
    let ns: Vec<u64> = (a * m..a * m + m).collect();
    let v = cmp.uv.1;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for f_pow in cmp.f_at(&ns) {
        let f = f_pow.nth_root(v).mid_f64();
        lo = lo.min(f);
        hi = hi.max(f);
    }
    Ok(hi - lo)
}

/// One claimed-but-failed direction in the ratio test.
#[derive(Debug, Clone)]
pub struct Theorem32Failure {
    pub b: u64,
    pub a: u64,
    pub expected: Direction,
}

/// Outcome of the exact ratio test for a prime p: f increases strictly
/// in a for 0 <= b <= floor((p-1)/2), and decreases strictly for larger
/// b once a >= ceil((p-1)/2).
#[derive(Debug, Clone)]
pub struct Theorem32Report {
    pub p: u64,
    pub a_hi: u64,
    pub checked: u64,
    pub failures: Vec<Theorem32Failure>,
}

impl Theorem32Report {
    pub fn all_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Exact verification via the p-th power of the one-step ratio:
/// f(n+p)/f(n) > 1 iff ((a+1)p - 1)^p (n+p) > ((a+1)p)^p n, n = ap + b.
pub fn verify_theorem32(p: u64, a_hi: u64) -> Result<Theorem32Report> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    const P_CAP: u64 = 1000;
    if p > P_CAP {
        return Err(Error::CapExceeded {
            what: "ratio-test prime",
            n: p,
            cap: P_CAP,
        });
    }
    let up_through = (p - 1) / 2;
    let down_from = p / 2; // ceil((p-1)/2)
    let mut checked = 0u64;
    let mut failures = Vec::new();
    for b in 0..p {
        let expected = if b <= up_through {
            Direction::Up
        } else {
            Direction::Down
        };
        let a_start = if expected == Direction::Up { 0 } else { down_from };
        for a in a_start..=a_hi {
            let n = a * p + b;
            let base = (a + 1) * p;
            let lhs = BigUint::from(base - 1).pow(p as u32) * (n + p);
            let rhs = BigUint::from(base).pow(p as u32) * n;
            let got = match lhs.cmp(&rhs) {
                Ordering::Greater => Direction::Up,
                Ordering::Less => Direction::Down,
                Ordering::Equal => Direction::Flat,
            };
            checked += 1;
            if got != expected {
                failures.push(Theorem32Failure { b, a, expected });
            }
        }
    }
    Ok(Theorem32Report {
        p,
        a_hi,
        checked,
        failures,
    })
}
