//! Fixed-point plumbing shared by the engine and the bound checks.
//!
//! All quantities handled here are nonnegative reals, represented as
//! binary fixed point: a `BigUint` mantissa with an implicit scale of
//! 2^-frac. [`Interval`] keeps a directed-rounding enclosure [lo, hi]
//! so comparisons can be certified rather than guessed; the float
//! backend of the engine stores single rounded mantissas and converts
//! to enclosures through a proven error bound.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Backend selection knobs for the recurrence engine.
///
/// Series up to `exact_cutoff` default to exact big-rational arithmetic;
/// longer ones use the fixed-point float backend carrying
/// `float_precision_bits` of advertised mantissa precision (internally
/// padded with guard bits).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NumericConfig {
    pub exact_cutoff: u64,
    pub float_precision_bits: u32,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            exact_cutoff: 5000,
            float_precision_bits: 128,
        }
    }
}

impl NumericConfig {
    pub fn new(exact_cutoff: u64, float_precision_bits: u32) -> Result<Self> {
        if float_precision_bits < 53 {
            return Err(Error::PrecisionTooSmall(float_precision_bits));
        }
        Ok(NumericConfig {
            exact_cutoff,
            float_precision_bits,
        })
    }
}

/// Guard bits the engine adds beyond the advertised precision so that
/// accumulated rounding stays far below the reporting tolerance.
pub const GUARD_BITS: u32 = 64;

/// Directed-rounding enclosure of a nonnegative real:
/// the value lies in [lo, hi] / 2^frac.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigUint,
    hi: BigUint,
    frac: u32,
}

impl Interval {
    /// Exact (degenerate) enclosure of a nonnegative integer.
    pub fn from_int(v: &BigUint, frac: u32) -> Self {
        let m = v << frac;
        Interval {
            lo: m.clone(),
            hi: m,
            frac,
        }
    }

    /// Enclosure of num/den, den > 0, one ulp wide at most.
    pub fn from_ratio(num: &BigUint, den: &BigUint, frac: u32) -> Self {
        assert!(!den.is_zero());
        let scaled = num << frac;
        let (q, r) = scaled.div_rem(den);
        let hi = if r.is_zero() { q.clone() } else { &q + 1u32 };
        Interval { lo: q, hi, frac }
    }

    /// Enclosure of a nonnegative rational.
    pub fn from_rational(v: &BigRational, frac: u32) -> Self {
        assert!(!v.is_negative());
        Interval::from_ratio(v.numer().magnitude(), v.denom().magnitude(), frac)
    }

    /// Enclosure from a rounded fixed-point mantissa with a known error
    /// radius in ulps.
    pub fn from_mantissa(mant: &BigUint, frac: u32, err_ulps: u64) -> Self {
        let e = BigUint::from(err_ulps);
        let lo = if mant > &e {
            mant - &e
        } else {
            BigUint::zero()
        };
        Interval {
            lo,
            hi: mant + &e,
            frac,
        }
    }

    pub fn frac(&self) -> u32 {
        self.frac
    }

    pub fn add(&self, other: &Interval) -> Interval {
        assert_eq!(self.frac, other.frac);
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            frac: self.frac,
        }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        assert_eq!(self.frac, other.frac);
        Interval {
            lo: (&self.lo * &other.lo) >> self.frac,
            hi: div_ceil_pow2(&self.hi * &other.hi, self.frac),
            frac: self.frac,
        }
    }

    /// self / other; requires other.lo > 0.
    pub fn div(&self, other: &Interval) -> Interval {
        assert_eq!(self.frac, other.frac);
        assert!(!other.lo.is_zero(), "division by an interval touching zero");
        Interval {
            lo: (&self.lo << self.frac) / &other.hi,
            hi: div_ceil(&(&self.hi << self.frac), &other.lo),
            frac: self.frac,
        }
    }

    /// Integer power by repeated squaring, directed at both ends.
    pub fn pow(&self, e: u32) -> Interval {
        let mut out = Interval::from_int(&BigUint::one(), self.frac);
        let mut base = self.clone();
        let mut e = e;
        if e == 0 {
            return out;
        }
        loop {
            if e & 1 == 1 {
                out = out.mul(&base);
            }
            e >>= 1;
            if e == 0 {
                return out;
            }
            base = base.mul(&base);
        }
    }

    /// k-th root, k >= 1. Uses exact integer roots on the scaled mantissas,
    /// so the result enclosure is at most one ulp wider than the input's.
    pub fn nth_root(&self, k: u32) -> Interval {
        assert!(k >= 1);
        if k == 1 {
            return self.clone();
        }
        let shift = self.frac as usize * (k as usize - 1);
        let lo_scaled = &self.lo << shift;
        let hi_scaled = &self.hi << shift;
        let lo = lo_scaled.nth_root(k);
        let hi_root = hi_scaled.nth_root(k);
        let hi = if hi_root.pow(k) == hi_scaled {
            hi_root
        } else {
            hi_root + 1u32
        };
        Interval {
            lo,
            hi,
            frac: self.frac,
        }
    }

    /// Re-express at a different scale, directed at both ends.
    pub fn rescale(&self, frac: u32) -> Interval {
        match frac.cmp(&self.frac) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = frac - self.frac;
                Interval {
                    lo: &self.lo << s,
                    hi: &self.hi << s,
                    frac,
                }
            }
            Ordering::Less => {
                let s = self.frac - frac;
                Interval {
                    lo: &self.lo >> s,
                    hi: div_ceil_pow2(self.hi.clone(), s),
                    frac,
                }
            }
        }
    }

    /// 1 / self; requires self.lo > 0.
    pub fn recip(&self) -> Interval {
        Interval::from_int(&BigUint::one(), self.frac).div(self)
    }

    /// Certified comparison: `None` when the enclosures overlap.
    pub fn try_cmp(&self, other: &Interval) -> Option<Ordering> {
        assert_eq!(self.frac, other.frac);
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && other.lo == other.hi && self.lo == other.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// Signed distance other.lo - self.hi (how far below `other` we
    /// certifiably are), as f64. Positive iff cmp == Less.
    pub fn gap_below(&self, other: &Interval) -> f64 {
        signed_diff_f64(&other.lo, &self.hi, self.frac)
    }

    pub fn mid_f64(&self) -> f64 {
        let sum = &self.lo + &self.hi;
        biguint_to_f64_scaled(&sum, self.frac + 1)
    }

    pub fn width_f64(&self) -> f64 {
        biguint_to_f64_scaled(&(&self.hi - &self.lo), self.frac)
    }

    /// True iff the whole enclosure is below the rational bound.
    pub fn certainly_le(&self, bound: &BigRational) -> bool {
        // hi/2^frac <= num/den  <=>  hi * den <= num * 2^frac
        assert!(!bound.is_negative());
        let num = bound.numer().magnitude();
        let den = bound.denom().magnitude();
        &self.hi * den <= num << self.frac
    }

    pub fn certainly_ge(&self, bound: &BigRational) -> bool {
        assert!(!bound.is_negative());
        let num = bound.numer().magnitude();
        let den = bound.denom().magnitude();
        &self.lo * den >= num << self.frac
    }
}

fn div_ceil(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

fn div_ceil_pow2(a: BigUint, shift: u32) -> BigUint {
    let mask = (BigUint::one() << shift) - 1u32;
    if (&a & mask).is_zero() {
        a >> shift
    } else {
        (a >> shift) + 1u32
    }
}

/// x / 2^frac as f64, safe for mantissas far beyond f64 range.
pub fn biguint_to_f64_scaled(x: &BigUint, frac: u32) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let bits = x.bits();
    let (top, dropped) = if bits > 64 {
        let d = bits - 64;
        ((x >> d).to_u64().unwrap(), d as i64)
    } else {
        (x.to_u64().unwrap(), 0)
    };
    let e = dropped - frac as i64;
    // values of interest are O(1); clamp the exponent defensively
    (top as f64) * exp2i(e)
}

fn exp2i(e: i64) -> f64 {
    if e < -1100 {
        0.0
    } else if e > 1000 {
        f64::INFINITY
    } else {
        f64::powi(2.0, e as i32)
    }
}

/// (a - b) / 2^frac as f64, allowing a < b.
pub fn signed_diff_f64(a: &BigUint, b: &BigUint, frac: u32) -> f64 {
    if a >= b {
        biguint_to_f64_scaled(&(a - b), frac)
    } else {
        -biguint_to_f64_scaled(&(b - a), frac)
    }
}

/// Decimal expansion of a nonnegative rational, truncated toward zero,
/// with exactly `digits` digits after the point.
pub fn decimal_string(v: &BigRational, digits: usize) -> String {
    assert!(!v.is_negative());
    let num = v.numer().magnitude();
    let den = v.denom().magnitude();
    let (int, mut rem) = num.div_rem(den);
    let mut s = int.to_string();
    if digits > 0 {
        s.push('.');
        let ten = BigUint::from(10u32);
        for _ in 0..digits {
            rem *= &ten;
            let (d, r) = rem.div_rem(den);
            s.push(char::from(b'0' + d.to_u8().unwrap()));
            rem = r;
        }
    }
    s
}

/// Format a positive value below 10 with `sig` significant digits in
/// plain decimal notation (the shape the figure files use).
pub fn format_sig(v: f64, sig: usize) -> String {
    assert!(v.is_finite() && v > 0.0 && v < 10.0, "out of formatting range: {v}");
    // decimal exponent via the printed scientific form, immune to log10
    // edge cases at powers of ten
    let sci = format!("{:e}", v);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    let decimals = (sig as i32 - 1 - exp).max(0) as usize;
    format!("{:.*}", decimals, v)
}
