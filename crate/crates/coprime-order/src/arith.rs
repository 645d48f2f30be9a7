//! Modulus bookkeeping: radical, prime factors, the coprime residue set,
//! and the window counters the bound identities consume.

use num_integer::Integer;
use num_rational::Rational64;

use crate::error::{Error, Result};

/// Largest accepted modulus, 2^31 - 1.
pub const MODULUS_CAP: u64 = (1 << 31) - 1;

/// Largest radical for which the dense coprime residue list is materialized.
/// Beyond this the list itself (up to `radical` entries of 8 bytes) stops
/// being a sensible in-memory object.
pub const RADICAL_CAP: u64 = 1 << 20;

/// A positive modulus `m` plus the derived data everything else consumes.
///
/// The proportion of permutations of Sym(n) whose order is coprime to `m`
/// depends on `m` only through its radical (an element order is coprime to
/// `m` iff it is coprime to the product of the distinct primes of `m`), so
/// the residue set, totient and exponent are all taken at the radical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Modulus {
    m: u64,
    radical: u64,
    primes: Vec<u64>,
    phi_set: Vec<u64>,
}

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroModulus);
        }
        if m > MODULUS_CAP {
            return Err(Error::ModulusTooLarge(m));
        }
        let primes: Vec<u64> = factorize(m).into_iter().map(|(p, _)| p).collect();
        let radical: u64 = primes.iter().product::<u64>().max(1);
        if radical > RADICAL_CAP {
            return Err(Error::RadicalTooLarge(radical));
        }
        let phi_set: Vec<u64> = (1..=radical)
            .filter(|k| k.gcd(&radical) == 1)
            .collect();
        Ok(Modulus {
            m,
            radical,
            primes,
            phi_set,
        })
    }

    /// The modulus as given by the caller.
    pub fn m(&self) -> u64 {
        self.m
    }

    /// Product of the distinct primes dividing `m` (1 for m = 1).
    pub fn radical(&self) -> u64 {
        self.radical
    }

    /// Distinct primes dividing `m`, ascending.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Residues in [1, radical] coprime to the radical, ascending.
    /// Always contains 1; contains radical - 1 once radical >= 3.
    pub fn phi_set(&self) -> &[u64] {
        &self.phi_set
    }

    /// Euler totient of the radical.
    pub fn phi(&self) -> u64 {
        self.phi_set.len() as u64
    }

    /// The exponent y = phi(radical)/radical - 1, in (-1, 0]; 0 iff m = 1.
    pub fn y(&self) -> Rational64 {
        Rational64::new(
            self.phi() as i64 - self.radical as i64,
            self.radical as i64,
        )
    }

    /// True iff k is coprime to the radical.
    pub fn is_coprime(&self, k: u64) -> bool {
        k.gcd(&self.radical) == 1
    }

    /// Number of coprime residues k with k < radical - i, for 0 <= i < radical.
    ///
    /// This is the count of summands that a block of the recurrence keeps
    /// when shifted past a multiple of the radical; it always lies in the
    /// window [phi - i, radical - i - 1] (lower end may be negative).
    pub fn count_x(&self, i: u64) -> Result<u64> {
        if i >= self.radical {
            return Err(Error::IndexOutOfRange {
                index: i,
                radical: self.radical,
            });
        }
        let bound = self.radical - i;
        Ok(self.phi_set.partition_point(|&k| k < bound) as u64)
    }

    /// Number of coprime residues k with k <= i, for 0 <= i < radical.
    /// Lies in the window [phi - radical + i, i].
    pub fn count_y(&self, i: u64) -> Result<u64> {
        if i >= self.radical {
            return Err(Error::IndexOutOfRange {
                index: i,
                radical: self.radical,
            });
        }
        Ok(self.phi_set.partition_point(|&k| k <= i) as u64)
    }
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0u32;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == [(n, 1)]
}

/// Moebius function: 0 on non-square-free n, else (-1)^(number of primes).
pub fn moebius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::ZeroModulus);
    }
    let mut sign = 1i8;
    for (_, e) in factorize(n) {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_one() {
        let m = Modulus::new(1).unwrap();
        assert_eq!(m.radical(), 1);
        assert_eq!(m.phi_set(), &[1]);
        assert_eq!(m.phi(), 1);
        assert_eq!(m.y(), Rational64::new(0, 1));
        assert!(m.primes().is_empty());
    }

    #[test]
    fn modulus_six() {
        let m = Modulus::new(6).unwrap();
        assert_eq!(m.radical(), 6);
        assert_eq!(m.primes(), &[2, 3]);
        assert_eq!(m.phi_set(), &[1, 5]);
        assert_eq!(m.phi(), 2);
        assert_eq!(m.y(), Rational64::new(-2, 3));
    }

    #[test]
    fn radical_reduction() {
        let m = Modulus::new(12).unwrap();
        assert_eq!(m.m(), 12);
        assert_eq!(m.radical(), 6);
        assert_eq!(m.phi_set(), &[1, 5]);
        assert_eq!(m.phi(), 2);
        let m = Modulus::new(720).unwrap();
        assert_eq!(m.radical(), 30);
        assert_eq!(m.phi(), 8);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert!(matches!(Modulus::new(0), Err(Error::ZeroModulus)));
        assert!(matches!(
            Modulus::new(MODULUS_CAP + 1),
            Err(Error::ModulusTooLarge(_))
        ));
        // 2 * 3 * 5 * 7 * 11 * 13 * 17 = 510510 fits the m cap but its
        // radical exceeds the dense-list cap... it does not (510510 < 2^20).
        // 223092870 = primorial(9) does.
        assert!(matches!(
            Modulus::new(223_092_870),
            Err(Error::RadicalTooLarge(_))
        ));
    }

    #[test]
    fn phi_set_endpoints() {
        for m in 1..200u64 {
            let md = Modulus::new(m).unwrap();
            assert!(md.phi_set().contains(&1));
            if md.radical() >= 3 {
                assert!(md.phi_set().contains(&(md.radical() - 1)));
            }
            for &k in md.phi_set() {
                assert!(k >= 1 && k <= md.radical());
                assert!(md.is_coprime(k));
            }
        }
    }

    #[test]
    fn count_examples() {
        let m = Modulus::new(6).unwrap();
        assert_eq!(m.count_x(0).unwrap(), 2);
        assert_eq!(m.count_x(1).unwrap(), 1);
        assert_eq!(m.count_x(5).unwrap(), 0);
        assert_eq!(m.count_y(0).unwrap(), 0);
        assert_eq!(m.count_y(1).unwrap(), 1);
        assert_eq!(m.count_y(5).unwrap(), 2);
        assert!(m.count_x(6).is_err());
        assert!(m.count_y(6).is_err());
    }

    #[test]
    fn count_windows_all_squarefree_m_to_1000() {
        for m in 2..=1000u64 {
            if moebius(m).unwrap() == 0 {
                continue;
            }
            let md = Modulus::new(m).unwrap();
            let (rad, phi) = (md.radical() as i64, md.phi() as i64);
            for i in 0..md.radical() {
                let x = md.count_x(i).unwrap() as i64;
                let y = md.count_y(i).unwrap() as i64;
                // k < rad - i is the same prefix as k <= rad - i - 1
                assert_eq!(md.count_x(i).unwrap(), md.count_y(md.radical() - i - 1).unwrap());
                let i = i as i64;
                assert!(phi - i <= x && x < rad - i, "x window m={m} i={i}");
                assert!(phi - rad + i <= y && y <= i, "y window m={m} i={i}");
            }
        }
    }

    #[test]
    fn moebius_values() {
        assert_eq!(moebius(1).unwrap(), 1);
        assert_eq!(moebius(2).unwrap(), -1);
        assert_eq!(moebius(4).unwrap(), 0);
        assert_eq!(moebius(6).unwrap(), 1);
        assert_eq!(moebius(30).unwrap(), -1);
        assert!(moebius(0).is_err());
    }

    #[test]
    fn moebius_multiplicative_on_coprime_pairs() {
        for a in 1..200u64 {
            for b in 1..200u64 {
                if a.gcd(&b) == 1 {
                    assert_eq!(
                        moebius(a * b).unwrap(),
                        moebius(a).unwrap() * moebius(b).unwrap(),
                        "a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (2..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }
}
