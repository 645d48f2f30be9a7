//! Exact and high-precision computation of the proportion of permutations
//! in Sym(n) whose order is coprime to a fixed modulus m.
//!
//! The central quantity is
//!
//! ```text
//!   rho(n, m) = #{ g in Sym(n) : gcd(order(g), m) = 1 } / n!
//! ```
//!
//! which depends on m only through its radical (the product of its
//! distinct primes) and satisfies a short linear recurrence over the
//! coprime residues. The crate provides:
//!
//! - [`rho::rho_series`] / [`rho::rho_at`]: the recurrence engine, exact
//!   (big-rational, carried as integer permutation counts) or extended
//!   precision fixed-point, selected by [`NumericConfig`];
//! - [`oracle`]: independent brute-force counters (direct enumeration of
//!   permutations, and summation over integer partitions) used to
//!   validate the engine;
//! - [`asymptotics`]: the constants k(m), kappa_m, lambda_m, the
//!   power-law bounds on rho with their certified checker, and the exact
//!   algebraic identities behind the bound proof;
//! - [`explorer`]: monotonicity scans of the rescaled sequence
//!   f(n, m) = rho(n, m) (n/m)^(1 - phi(m)/m) along residue classes.
//!
//! Everything downstream of the engine consumes certified enclosures
//! ([`Interval`]); comparisons are never decided by unchecked floating
//! point.
//!
//! ```
//! use coprime_order::{rho_series_exact, Modulus};
//!
//! let m = Modulus::new(6).unwrap();
//! let series = rho_series_exact(&m, 6);
//! let v = series.exact(6).unwrap();
//! assert_eq!(v.to_string(), "29/144");
//! ```

pub mod arith;
pub mod asymptotics;
pub mod error;
pub mod explorer;
pub mod numeric;
pub mod oracle;
pub mod rho;

pub use arith::{factorize, is_prime, moebius, Modulus, MODULUS_CAP, RADICAL_CAP};
pub use asymptotics::{
    check_lemma22, check_theorem1, check_y0_lower, check_y0_upper, f_value, gamma_real, k_constant,
    kappa, lambda_constant, BoundsReport, Y0Check,
};
pub use error::{Error, Result};
pub use explorer::{
    residue_ordering, residue_spread, scan_all_residues, scan_monotonicity, verify_theorem32,
    Direction, MonotonicityReport, Theorem32Report,
};
pub use numeric::{decimal_string, format_sig, Interval, NumericConfig, GUARD_BITS};
pub use oracle::{
    count_coprime_order_direct, count_coprime_order_partitions, count_no_cycle_divisible,
    factorial, for_each_cycle_type, CycleType,
};
pub use rho::{
    constant_c, no_cycle_product, p_not_m, rho_at, rho_prime_closed_form,
    rho_prime_closed_form_parts, rho_series, rho_series_exact, rho_series_exact_with,
    rho_series_float, Backend, ExactStrategy, FloatValue, RhoSeries, RhoValue, SeriesValues,
};
