//! The power-law side of rho: the constants k(m), kappa_m, lambda_m, the
//! two-sided bound
//!
//! ```text
//!   C(m) floor(n/m)^y  <=  rho(n)  <=  ceil(n/m)^y,     y = phi(m)/m - 1,
//! ```
//!
//! (upper bound for all n >= 1, lower for n >= m, smooth (n/m)^y variants
//! for n >= m), and the exact rational identities the bound proof rests
//! on. Bound checking runs on certified enclosures with exact escalation,
//! so a reported pass means the inequality really holds; equality cases
//! (rho = 1 below the smallest prime, the minimum of the C window) resolve
//! through cross-multiplied integer comparisons, never through rounding.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Signed};
use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::arith::{factorize, Modulus};
use crate::error::{Error, Result};
use crate::numeric::{Interval, GUARD_BITS};
use crate::rho::RhoSeries;

// ---- Gamma and the derived constants ----

const LANCZOS_G: f64 = 7.0;
// Tabulated digits kept verbatim; the extra places round away harmlessly.
#[allow(clippy::excessive_precision)]
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

fn lanczos(x: f64) -> f64 {
    // valid for x >= 0.5
    let x = x - 1.0;
    let mut a = LANCZOS[0];
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * a
}

/// Gamma(x) on (0, 2], relative error well under 1e-12.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0 && x <= 2.0) {
        return Err(Error::Domain {
            name: "x",
            value: x,
            constraint: "0 < x <= 2",
        });
    }
    if x < 0.5 {
        // reflection; sin(pi x) > 0 on (0, 0.5)
        Ok(PI / ((PI * x).sin() * lanczos(1.0 - x)))
    } else {
        Ok(lanczos(x))
    }
}

/// k(m) = 1/Gamma(1 - 1/m) for m >= 2; satisfies pi^(-1/2) <= k(m) < 1
/// with equality exactly at m = 2.
pub fn k_constant(m: u64) -> Result<f64> {
    if m < 2 {
        return Err(Error::Domain {
            name: "m",
            value: m as f64,
            constraint: "m >= 2",
        });
    }
    let k = 1.0 / gamma_real(1.0 - 1.0 / m as f64)?;
    let lo = 1.0 / PI.sqrt();
    if k < lo - 1e-12 || k >= 1.0 {
        return Err(Error::InvalidRange(format!(
            "k({m}) = {k} escaped [pi^-1/2, 1)"
        )));
    }
    Ok(k)
}

fn distinct_primes(m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if m > crate::arith::MODULUS_CAP {
        return Err(Error::ModulusTooLarge(m));
    }
    Ok(factorize(m).into_iter().map(|(p, _)| p).collect())
}

/// kappa_m = Gamma(phi(m)/m)^(-1) prod_{d | m} d^(-mu(d)/d); only
/// square-free divisors contribute, so kappa depends on m through its
/// radical alone.
pub fn kappa(m: u64) -> Result<f64> {
    let primes = distinct_primes(m)?;
    if primes.is_empty() {
        return Ok(1.0);
    }
    let mut phi_over_m = 1.0;
    for &p in &primes {
        phi_over_m *= 1.0 - 1.0 / p as f64;
    }
    // sum over square-free divisors d > 1: -mu(d) ln(d) / d
    let mut ln_prod = 0.0;
    for mask in 1u32..(1 << primes.len()) {
        let mut d = 1u64;
        for (i, &p) in primes.iter().enumerate() {
            if mask >> i & 1 == 1 {
                d *= p;
            }
        }
        let mu = if mask.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        ln_prod += -mu * (d as f64).ln() / d as f64;
    }
    Ok(ln_prod.exp() / gamma_real(phi_over_m)?)
}

/// lambda_m = kappa_m / m^(1 - phi(m)/m), the limit of f(n, m); unlike
/// kappa this depends on the full m, not just its radical. For prime p,
/// lambda_p = k(p).
pub fn lambda_constant(m: u64) -> Result<f64> {
    let primes = distinct_primes(m)?;
    let mut phi_over_m = 1.0;
    for &p in &primes {
        phi_over_m *= 1.0 - 1.0 / p as f64;
    }
    Ok(kappa(m)? * (-(1.0 - phi_over_m) * (m as f64).ln()).exp())
}

/// f(n, m) = rho(n) (n/m)^(1 - phi/m) with m the radical; the rescaled
/// quantity that converges to lambda.
pub fn f_value(modulus: &Modulus, n: u64, rho_n: f64) -> f64 {
    let m = modulus.radical();
    let e = 1.0 - modulus.phi() as f64 / m as f64;
    rho_n * (n as f64 / m as f64).powf(e)
}

// ---- Lemma 2.2 ----

/// The chain 0 < L <= M < U with
/// L = 1 - ((y+1)/a)(1 - y/a), M = ((a-1)/a)^(y+1), U = 1 - (y+1)/a,
/// for -1 < y < 0 and a >= 2. Returns (L, M, U); errors if the inputs
/// are out of domain or the chain fails beyond a 1e-12 slack on the
/// weak inequality.
pub fn check_lemma22(y: f64, a: f64) -> Result<(f64, f64, f64)> {
    if !(-1.0 < y && y < 0.0) {
        return Err(Error::Domain {
            name: "y",
            value: y,
            constraint: "-1 < y < 0",
        });
    }
    if a.is_nan() || a < 2.0 {
        return Err(Error::Domain {
            name: "a",
            value: a,
            constraint: "a >= 2",
        });
    }
    let l = 1.0 - ((y + 1.0) / a) * (1.0 - y / a);
    let mid = ((a - 1.0) / a).powf(y + 1.0);
    let u = 1.0 - (y + 1.0) / a;
    if !(0.0 < l && l <= mid + 1e-12 && mid < u) {
        return Err(Error::InvalidRange(format!(
            "chain broke at y={y}, a={a}: L={l}, M={mid}, U={u}"
        )));
    }
    Ok((l, mid, u))
}

// ---- the Y0 identities ----

/// Outcome of one Y0 identity check: `y` is the composite expression from
/// the bound derivation, `y0` the closed factored form; the two are
/// compared exactly. `window_satisfied` marks whether the inputs lie in
/// the region where nonnegativity of y0 is claimed.
#[derive(Debug, Clone)]
pub struct Y0Check {
    pub y: BigRational,
    pub y0: BigRational,
    pub identity_holds: bool,
    pub window_satisfied: bool,
    pub nonnegative: bool,
}

fn r(x: i128) -> BigRational {
    BigRational::from_integer(x.into())
}

/// Upper-bound branch: checks exactly that
/// 1 - Y = (m-phi)(b+x_b-phi) / (m (a-1) (am-b)) where
/// Y = (1 - phi/(am))(1 - (b - a phi + a x_b)/((a-1)(am-b))) + x_b/(am-b).
/// Nonnegativity window: b < m and phi <= min(b + x_b, m).
pub fn check_y0_upper(a: u64, b: u64, x_b: u64, m: u64, phi: u64) -> Result<Y0Check> {
    if a < 2 {
        return Err(Error::DegenerateIdentity("a < 2 makes the a-1 factor vanish"));
    }
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let (ai, bi, xi, mi, pi_) = (a as i128, b as i128, x_b as i128, m as i128, phi as i128);
    if ai * mi == bi {
        return Err(Error::DegenerateIdentity("am = b makes the am-b factor vanish"));
    }
    let am_b = r(ai * mi - bi);
    let y = (r(1) - r(pi_) / r(ai * mi))
        * (r(1) - (r(bi) - r(ai * pi_) + r(ai * xi)) / (r(ai - 1) * &am_b))
        + r(xi) / &am_b;
    let y0 = r(mi - pi_) * r(bi + xi - pi_) / (r(mi) * r(ai - 1) * &am_b);
    let identity_holds = r(1) - &y == y0;
    let window_satisfied = b < m && phi <= b + x_b && phi <= m;
    let nonnegative = !y0.is_negative();
    Ok(Y0Check {
        y,
        y0,
        identity_holds,
        window_satisfied,
        nonnegative,
    })
}

/// Lower-bound branch: checks exactly that
/// Y - 1 = (m-phi)(am(b-y_b) + phi(y_b-b+m-phi)) / (m^2 a (a-1) (am+b))
/// where Y = (1 - phi/(am) (1 + (m-phi)/(am)))
///           (1 + (b + a phi - a y_b)/((a-1)(am+b))) + y_b/(am+b).
/// Nonnegativity window: b < m, phi <= m, phi-m+b <= y_b <= b.
pub fn check_y0_lower(a: u64, b: u64, y_b: u64, m: u64, phi: u64) -> Result<Y0Check> {
    if a < 2 {
        return Err(Error::DegenerateIdentity("a < 2 makes the a-1 factor vanish"));
    }
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    let (ai, bi, yi, mi, pi_) = (a as i128, b as i128, y_b as i128, m as i128, phi as i128);
    let am = r(ai * mi);
    let am_pb = r(ai * mi + bi);
    let y = (r(1) - r(pi_) / &am * (r(1) + r(mi - pi_) / &am))
        * (r(1) + (r(bi) + r(ai * pi_) - r(ai * yi)) / (r(ai - 1) * &am_pb))
        + r(yi) / &am_pb;
    let y0 = r(mi - pi_) * (&am * r(bi - yi) + r(pi_) * r(yi - bi + mi - pi_))
        / (r(mi * mi) * r(ai) * r(ai - 1) * &am_pb);
    let identity_holds = &y - r(1) == y0;
    let window_satisfied = b < m && phi <= m && pi_ - mi + bi <= yi && y_b <= b;
    let nonnegative = !y0.is_negative();
    Ok(Y0Check {
        y,
        y0,
        identity_holds,
        window_satisfied,
        nonnegative,
    })
}

// ---- the two-sided bound ----

/// One failed (or unresolvable) inequality in a bound sweep.
#[derive(Debug, Clone)]
pub struct BoundViolation {
    pub n: u64,
    pub bound: &'static str,
    /// Certified signed margin; negative means a proven violation, NaN
    /// means the comparison could not be resolved at the working
    /// precision.
    pub margin: f64,
}

/// Per-n outcome of the bound sweep over [1, n_hi]. Index i corresponds
/// to n = i + 1. `lower_ok` / smooth flags are vacuously true for n < m.
#[derive(Debug, Clone)]
pub struct BoundsReport {
    modulus: Modulus,
    pub n_hi: u64,
    pub upper_ok: Vec<bool>,
    pub lower_ok: Vec<bool>,
    pub smooth_upper_ok: Vec<bool>,
    pub smooth_lower_ok: Vec<bool>,
    /// Per-n minimum certified slack across the inequalities checked at
    /// that n; exactly 0.0 where some inequality is tight.
    pub margins: Vec<f64>,
    /// Minimum of `margins`; >= 0 iff every flag is true.
    pub worst_margin: f64,
    pub violations: Vec<BoundViolation>,
}

impl BoundsReport {
    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn all_ok(&self) -> bool {
        self.violations.is_empty()
            && self.upper_ok.iter().all(|&x| x)
            && self.lower_ok.iter().all(|&x| x)
            && self.smooth_upper_ok.iter().all(|&x| x)
            && self.smooth_lower_ok.iter().all(|&x| x)
    }
}

/// Which inequality a comparison settles.
#[derive(Clone, Copy)]
enum Side {
    RhoAtMost,
    RhoAtLeast,
}

/// Exact decision of rho(n) vs c * (base_num/base_den)^(-u/v) in powered
/// integer form: rho^v bn^u c_den^v <=> c_num^v n!^v bd^u.
fn exact_side(
    count: &BigUint,
    fact: &BigUint,
    (u, v): (u32, u32),
    base_num: u64,
    base_den: u64,
    c: Option<&BigRational>,
) -> Ordering {
    let one = BigUint::one();
    let (c_num, c_den) = match c {
        Some(c) => (c.numer().magnitude().clone(), c.denom().magnitude().clone()),
        None => (one.clone(), one),
    };
    let lhs = count.pow(v) * BigUint::from(base_num).pow(u) * c_den.pow(v);
    let rhs = c_num.pow(v) * fact.pow(v) * BigUint::from(base_den).pow(u);
    lhs.cmp(&rhs)
}

enum Resolution {
    Holds(f64),
    Fails(f64),
    Unresolved,
}

/// Decide one inequality, escalating an enclosure overlap to an exact
/// powered comparison. Exact counts come from the series itself or, on
/// the float backend, from a windowed recomputation for small n (the
/// only region where the bounds are ever tight).
#[allow(clippy::too_many_arguments)]
fn resolve(
    series: &RhoSeries,
    rho_iv: &Interval,
    bound: &Interval,
    side: Side,
    n: u64,
    fact: &BigUint,
    uv: (u32, u32),
    base: (u64, u64),
    c: Option<&BigRational>,
) -> Resolution {
    let (cmp, margin) = match side {
        Side::RhoAtMost => (rho_iv.try_cmp(bound), rho_iv.gap_below(bound)),
        Side::RhoAtLeast => (bound.try_cmp(rho_iv), bound.gap_below(rho_iv)),
    };
    match cmp {
        Some(Ordering::Less) | Some(Ordering::Equal) => Resolution::Holds(margin.max(0.0)),
        Some(Ordering::Greater) => Resolution::Fails(margin),
        None => {
            let m = series.modulus().radical();
            let ord = if let Some(count) = series.count(n) {
                exact_side(count, fact, uv, base.0, base.1, c)
            } else if n <= 4 * m {
                let (count, f) = crate::rho::integer_count_at(series.modulus(), n);
                exact_side(&count, &f, uv, base.0, base.1, c)
            } else {
                return Resolution::Unresolved;
            };
            let ok = match side {
                Side::RhoAtMost => ord != Ordering::Greater,
                Side::RhoAtLeast => ord != Ordering::Less,
            };
            if ok {
                Resolution::Holds(0.0)
            } else {
                Resolution::Fails(margin.min(0.0))
            }
        }
    }
}

// One queued comparison: bound enclosure, side, base of the exact power as
// a num/den pair, whether the exact fallback carries the C prefactor, a
// label for the violation record, and the per-n flag to clear on failure.
type QueuedCheck<'a> = (&'a Interval, Side, (u64, u64), bool, &'static str, &'a mut bool);

/// Sweeps the ceiling/floor and smooth bounds over 1 <= n <= series.n_max().
///
/// `c` is the lower-bound constant (use [`crate::rho::constant_c`]).
/// Comparisons run on enclosures; an enclosure overlap escalates to an
/// exact cross-multiplied integer comparison where counts are available,
/// and is otherwise recorded as an unresolved violation with NaN margin.
pub fn check_theorem1(series: &RhoSeries, c: &BigRational) -> BoundsReport {
    let modulus = series.modulus().clone();
    let m = modulus.radical();
    let n_hi = series.n_max();
    let len = n_hi as usize;
    if m == 1 {
        // rho = 1 = both bounds at every n; equality throughout
        return BoundsReport {
            modulus,
            n_hi,
            upper_ok: vec![true; len],
            lower_ok: vec![true; len],
            smooth_upper_ok: vec![true; len],
            smooth_lower_ok: vec![true; len],
            margins: vec![0.0; len],
            worst_margin: 0.0,
            violations: Vec::new(),
        };
    }
    let phi = modulus.phi();
    let g = num_integer::gcd(m - phi, m);
    let uv = (((m - phi) / g) as u32, (m / g) as u32);
    let frac = match series.backend() {
        crate::rho::Backend::Float { precision_bits } => precision_bits + GUARD_BITS,
        crate::rho::Backend::ExactRational => 192,
    };

    let mut upper_ok = vec![true; len];
    let mut lower_ok = vec![true; len];
    let mut smooth_upper_ok = vec![true; len];
    let mut smooth_lower_ok = vec![true; len];
    let mut margins = vec![f64::INFINITY; len];
    let mut violations = Vec::new();

    // (num/den)^(u/v) as an enclosure
    let pow_frac = |num: u64, den: u64| -> Interval {
        Interval::from_ratio(
            &BigUint::from(num).pow(uv.0),
            &BigUint::from(den).pow(uv.0),
            frac,
        )
        .nth_root(uv.1)
    };

    let c_iv = Interval::from_rational(c, frac);
    let mut cached_ceil = 0u64;
    let mut cached_floor = 0u64;
    let mut ub = pow_frac(1, 1);
    let mut lb = c_iv.clone();
    let mut fact = BigUint::one();

    for n in 1..=n_hi {
        fact *= n;
        let i = (n - 1) as usize;
        let rho_iv = if let Some(count) = series.count(n) {
            Interval::from_ratio(count, &fact, frac)
        } else {
            series.interval(n, frac)
        };
        let ceil_nm = n.div_ceil(m);
        let floor_nm = n / m;
        if ceil_nm != cached_ceil {
            cached_ceil = ceil_nm;
            ub = pow_frac(1, ceil_nm);
        }
        if floor_nm != cached_floor && floor_nm >= 1 {
            cached_floor = floor_nm;
            lb = c_iv.mul(&pow_frac(1, floor_nm));
        }

        let smooth = if n >= m { Some(pow_frac(m, n)) } else { None };
        let mut checks: Vec<QueuedCheck> = vec![(
            &ub,
            Side::RhoAtMost,
            (ceil_nm, 1),
            false,
            "upper",
            &mut upper_ok[i],
        )];
        let smooth_lo = smooth.as_ref().map(|s| c_iv.mul(s));
        if let (Some(s), Some(sl)) = (smooth.as_ref(), smooth_lo.as_ref()) {
            checks.push((
                &lb,
                Side::RhoAtLeast,
                (floor_nm, 1),
                true,
                "lower",
                &mut lower_ok[i],
            ));
            checks.push((
                s,
                Side::RhoAtMost,
                (n, m),
                false,
                "smooth-upper",
                &mut smooth_upper_ok[i],
            ));
            checks.push((
                sl,
                Side::RhoAtLeast,
                (n, m),
                true,
                "smooth-lower",
                &mut smooth_lower_ok[i],
            ));
        }
        let mut unresolved_here = false;
        for (bound, side, base, with_c, label, flag) in checks {
            let c_arg = if with_c { Some(c) } else { None };
            match resolve(series, &rho_iv, bound, side, n, &fact, uv, base, c_arg) {
                Resolution::Holds(mg) => margins[i] = margins[i].min(mg),
                Resolution::Fails(mg) => {
                    *flag = false;
                    margins[i] = margins[i].min(mg);
                    violations.push(BoundViolation {
                        n,
                        bound: label,
                        margin: mg,
                    });
                }
                Resolution::Unresolved => {
                    *flag = false;
                    unresolved_here = true;
                    violations.push(BoundViolation {
                        n,
                        bound: label,
                        margin: f64::NAN,
                    });
                }
            }
        }
        if unresolved_here {
            margins[i] = f64::NAN;
        }
    }

    let worst_margin = margins.iter().copied().fold(f64::INFINITY, f64::min);
    BoundsReport {
        modulus,
        n_hi,
        upper_ok,
        lower_ok,
        smooth_upper_ok,
        smooth_lower_ok,
        margins,
        worst_margin: if worst_margin.is_finite() {
            worst_margin
        } else {
            0.0
        },
        violations,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::NumericConfig;
    use crate::rho::{constant_c, rho_series_exact, rho_series_float};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn md(m: u64) -> Modulus {
        Modulus::new(m).unwrap()
    }

    #[test]
    fn gamma_reference_points() {
        #[allow(clippy::excessive_precision)]
        let cases = [
            (1.0, 1.0),
            (2.0, 1.0),
            (0.5, 1.772_453_850_905_516_0),
            (1.5, 0.886_226_925_452_758_0),
            (1.0 / 3.0, 2.678_938_534_707_747_6),
            (2.0 / 3.0, 1.354_117_939_426_400_4),
            (0.9, 1.068_628_702_119_319_4),
        ];
        for (x, want) in cases {
            let got = gamma_real(x).unwrap();
            assert!(
                ((got - want) / want).abs() < 1e-12,
                "Gamma({x}): got {got}, want {want}"
            );
        }
        assert!(gamma_real(0.0).is_err());
        assert!(gamma_real(-1.0).is_err());
        assert!(gamma_real(2.5).is_err());
    }

    #[test]
    fn k_reference_points_and_bracket() {
        assert!((k_constant(2).unwrap() - 0.564_189_583_547_756_3).abs() < 1e-13);
        assert!((k_constant(3).unwrap() - 0.738_488_111_621_648_3).abs() < 1e-13);
        assert!((k_constant(5).unwrap() - 0.858_937_019_224_667_5).abs() < 1e-13);
        assert!((k_constant(7).unwrap() - 0.904_349_591_359_468_4).abs() < 1e-13);
        assert!(k_constant(1).is_err());
        assert!(k_constant(0).is_err());
        // approach to 1 from below
        let ks: Vec<f64> = [2u64, 3, 10, 100, 1000, 10_000]
            .iter()
            .map(|&m| k_constant(m).unwrap())
            .collect();
        for w in ks.windows(2) {
            assert!(w[0] < w[1]);
        }
        assert!(*ks.last().unwrap() < 1.0);
    }

    #[test]
    fn kappa_and_lambda_reference_points() {
        assert_eq!(kappa(1).unwrap(), 1.0);
        assert_eq!(lambda_constant(1).unwrap(), 1.0);
        #[allow(clippy::excessive_precision)]
        let cases = [
            (2u64, 0.797_884_560_802_865_4, 0.564_189_583_547_756_3),
            (6, 0.564_807_937_852_881_0, 0.171_054_022_477_920_9),
            (12, 0.564_807_937_852_881_0, 0.107_757_281_794_561_67),
            (15, 0.997_999_957_298_569_5, 0.282_025_212_511_307_0),
            (30, 0.457_837_187_465_470_0, 0.037_799_739_906_140_41),
            (26, 0.792_044_564_656_598_7, 0.137_037_962_285_453_17),
        ];
        for (m, want_kappa, want_lambda) in cases {
            assert!(
                (kappa(m).unwrap() - want_kappa).abs() < 1e-12,
                "kappa({m})"
            );
            assert!(
                (lambda_constant(m).unwrap() - want_lambda).abs() < 1e-12,
                "lambda({m})"
            );
        }
        // kappa sees only the radical; identical float paths, so exact equality
        assert_eq!(kappa(12).unwrap(), kappa(6).unwrap());
        assert_eq!(kappa(720).unwrap(), kappa(30).unwrap());
        assert_ne!(lambda_constant(12).unwrap(), lambda_constant(6).unwrap());
    }

    #[test]
    fn lambda_equals_k_for_primes() {
        for p in [2u64, 3, 5, 7, 11, 13, 97] {
            let diff = (lambda_constant(p).unwrap() - k_constant(p).unwrap()).abs();
            assert!(diff < 1e-12, "p={p}: diff {diff}");
        }
    }

    #[test]
    fn f_value_examples() {
        assert_eq!(f_value(&md(1), 17, 1.0), 1.0);
        let f = f_value(&md(2), 4, 0.375);
        assert!((f - 0.375 * 2f64.sqrt()).abs() < 1e-15);
        let rho66 = 29.0 / 144.0;
        assert!((f_value(&md(6), 6, rho66) - rho66).abs() < 1e-15);
        // radical reduction: modulus 12 behaves as 6
        assert_eq!(f_value(&md(12), 10, 0.25), f_value(&md(6), 10, 0.25));
    }

    #[test]
    fn lemma22_chain() {
        let (l, m_, u) = check_lemma22(-0.5, 2.0).unwrap();
        assert_eq!(l, 0.6875);
        assert!((m_ - 0.707_106_781_186_547_5).abs() < 1e-15);
        assert_eq!(u, 0.75);
        assert!(check_lemma22(-2.0 / 3.0, 6.0).is_ok());
        assert!(check_lemma22(-1e-6, 2.0).is_ok());
        assert!(check_lemma22(-0.999, 97.0).is_ok());
        assert!(check_lemma22(0.0, 2.0).is_err());
        assert!(check_lemma22(-1.0, 2.0).is_err());
        assert!(check_lemma22(-0.5, 1.9).is_err());
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn y0_upper_examples() {
        // boundary: b + x_b = phi forces Y0 = 0
        let c = check_y0_upper(2, 0, 2, 6, 2).unwrap();
        assert!(c.identity_holds && c.window_satisfied && c.nonnegative);
        assert_eq!(c.y0, ratio(0, 1));
        assert_eq!(c.y, ratio(1, 1));
        let c = check_y0_upper(3, 1, 1, 6, 2).unwrap();
        assert!(c.identity_holds);
        assert_eq!(c.y0, ratio(0, 1));
        let c = check_y0_upper(2, 5, 0, 6, 2).unwrap();
        assert!(c.identity_holds && c.window_satisfied && c.nonnegative);
        assert_eq!(c.y0, ratio(2, 7));
        assert_eq!(c.y, ratio(5, 7));
        assert!(check_y0_upper(1, 0, 2, 6, 2).is_err());
        assert!(check_y0_upper(2, 12, 0, 6, 2).is_err()); // am = b
    }

    #[test]
    fn y0_lower_examples() {
        let c = check_y0_lower(2, 0, 0, 6, 2).unwrap();
        assert!(c.identity_holds && c.window_satisfied && c.nonnegative);
        assert_eq!(c.y0, ratio(32, 864));
        let c = check_y0_lower(2, 1, 1, 6, 2).unwrap();
        assert!(c.identity_holds && c.window_satisfied && c.nonnegative);
        assert_eq!(c.y0, ratio(32, 936));
        // m = phi kills the leading factor
        let c = check_y0_lower(3, 0, 0, 1, 1).unwrap();
        assert!(c.identity_holds);
        assert_eq!(c.y0, ratio(0, 1));
        assert!(check_y0_lower(0, 0, 0, 6, 2).is_err());
    }

    #[test]
    fn y0_identities_hold_off_window() {
        // the factorizations are pure algebra; try tuples violating the
        // nonnegativity windows and assert only the identity
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let a = rng.gen_range(2..=60);
            let m = rng.gen_range(1..=40);
            let phi = rng.gen_range(0..=2 * m);
            let b = rng.gen_range(0..=3 * m);
            let t = rng.gen_range(0..=2 * m);
            if a * m == b {
                continue;
            }
            let up = check_y0_upper(a, b, t, m, phi).unwrap();
            assert!(up.identity_holds, "upper a={a} b={b} x={t} m={m} phi={phi}");
            let lo = check_y0_lower(a, b, t, m, phi).unwrap();
            assert!(lo.identity_holds, "lower a={a} b={b} y={t} m={m} phi={phi}");
        }
    }

    #[test]
    fn y0_nonnegative_in_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let a = rng.gen_range(2..=50);
            let m: u64 = rng.gen_range(2..=30);
            let phi = rng.gen_range(1..=m);
            let b = rng.gen_range(0..m);
            // upper window: phi <= b + x_b
            let x_lo = phi.saturating_sub(b);
            let x_b = rng.gen_range(x_lo..=m);
            let up = check_y0_upper(a, b, x_b, m, phi).unwrap();
            assert!(up.identity_holds);
            if up.window_satisfied {
                assert!(up.nonnegative, "upper a={a} b={b} x={x_b} m={m} phi={phi}");
            }
            // lower window: phi-m+b <= y_b <= b
            let y_lo = (phi + b).saturating_sub(m);
            let y_b = rng.gen_range(y_lo..=b);
            let lo = check_y0_lower(a, b, y_b, m, phi).unwrap();
            assert!(lo.identity_holds);
            if lo.window_satisfied {
                assert!(lo.nonnegative, "lower a={a} b={b} y={y_b} m={m} phi={phi}");
            }
        }
    }

    #[test]
    fn theorem1_exact_small_moduli() {
        for m in [2u64, 3, 6, 10] {
            let modulus = md(m);
            let series = rho_series_exact(&modulus, 600);
            let c = constant_c(&modulus);
            let rep = check_theorem1(&series, &c);
            assert!(rep.all_ok(), "m={m}: {:?}", rep.violations);
            assert!(rep.worst_margin >= 0.0);
            // tight cases exist: rho(n) = 1 = ceil(n/m)^y below the
            // smallest prime, and the lower bound at the C window argmin
            assert_eq!(rep.worst_margin, 0.0, "m={m}");
            // strong bounds imply the smooth ones wherever both checked
            for i in 0..rep.upper_ok.len() {
                if rep.upper_ok[i] {
                    assert!(rep.smooth_upper_ok[i]);
                }
                if rep.lower_ok[i] {
                    assert!(rep.smooth_lower_ok[i]);
                }
            }
        }
    }

    #[test]
    fn theorem1_trivial_modulus() {
        let modulus = md(1);
        let series = rho_series_exact(&modulus, 50);
        let rep = check_theorem1(&series, &constant_c(&modulus));
        assert!(rep.all_ok());
        assert_eq!(rep.worst_margin, 0.0);
    }

    #[test]
    fn theorem1_float_backend() {
        let modulus = md(30);
        let series = rho_series_float(&modulus, 1500, 128).unwrap();
        let c = constant_c(&modulus);
        let rep = check_theorem1(&series, &c);
        // the tight cases (rho(1) = 1 = upper bound; the lower bound at
        // the C-window minimum) overlap under float enclosures and are
        // settled by the windowed exact escalation
        assert!(rep.all_ok(), "violations: {:?}", rep.violations);
        assert_eq!(rep.worst_margin, 0.0);
        // away from the tight region every margin is certified positive
        for (i, &mg) in rep.margins.iter().enumerate() {
            let n = i as u64 + 1;
            if n > 2 * 30 {
                assert!(mg > 2f64.powi(-64), "n={n} margin {mg}");
            }
        }
    }

    #[test]
    fn theorem1_detects_planted_violation() {
        // feed a deliberately wrong C: max of the window instead of min,
        // scaled up; the lower bound must then fail somewhere
        let modulus = md(6);
        let series = rho_series_exact(&modulus, 100);
        let wrong_c = ratio(1, 2);
        let rep = check_theorem1(&series, &wrong_c);
        assert!(!rep.all_ok());
        assert!(rep.worst_margin < 0.0);
        assert!(rep.violations.iter().any(|v| v.bound == "lower"));
    }

    #[test]
    fn erdos_turan_convergence_direction() {
        // soft sanity at desk scale: f(n, 2) drifts toward k(2)
        let modulus = md(2);
        let cfg = NumericConfig::default();
        let series = crate::rho::rho_series(&modulus, 20_000, &cfg).unwrap();
        let k2 = k_constant(2).unwrap();
        let at = |n: u64| f_value(&modulus, n, series.value_f64(n));
        let d1 = (at(1000) - k2).abs();
        let d2 = (at(20_000) - k2).abs();
        assert!(d2 < d1);
        assert!(d2 < 5.0 / 20_000.0);
    }
}
