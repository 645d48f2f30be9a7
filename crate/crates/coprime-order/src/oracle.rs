//! Brute-force oracles: count permutations with constrained orders by
//! direct enumeration of Sym(n) or by summing over cycle types.
//!
//! These are deliberately naive and independent of the recurrence engine;
//! the engine is tested against them, never the other way around.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Direct enumeration cap: 9! = 362880 permutations.
pub const DIRECT_CAP: u64 = 9;

/// Cycle-type enumeration cap; p(60) = 966467 partitions.
pub const PARTITION_CAP: u64 = 60;

/// A cycle type of Sym(n): a partition of n in multiplicity form,
/// parts descending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleType {
    n: u64,
    /// (part, multiplicity), parts strictly descending.
    parts: Vec<(u64, u32)>,
}

impl CycleType {
    pub fn new(n: u64, parts: Vec<(u64, u32)>) -> Self {
        debug_assert_eq!(
            parts.iter().map(|&(p, c)| p * c as u64).sum::<u64>(),
            n,
            "parts must sum to n"
        );
        debug_assert!(parts.windows(2).all(|w| w[0].0 > w[1].0));
        CycleType { n, parts }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn parts(&self) -> &[(u64, u32)] {
        &self.parts
    }

    /// Number of permutations of Sym(n) with this cycle type:
    /// n! / prod_j (j^c_j * c_j!).
    pub fn perm_count(&self) -> BigUint {
        let mut den = BigUint::one();
        for &(part, mult) in &self.parts {
            den *= BigUint::from(part).pow(mult);
            den *= factorial(mult as u64);
        }
        factorial(self.n) / den
    }

    /// Order of any permutation with this cycle type: lcm of the parts.
    pub fn order_lcm(&self) -> BigUint {
        let mut l = BigUint::one();
        for &(part, _) in &self.parts {
            l = l.lcm(&BigUint::from(part));
        }
        l
    }
}

pub fn factorial(n: u64) -> BigUint {
    let mut out = BigUint::one();
    for i in 2..=n {
        out *= i;
    }
    out
}

/// Visit every cycle type of Sym(n) in reverse-lexicographic order
/// ([n] first, [1,...,1] last), restricted to parts satisfying `keep`.
/// Restricting at generation time is what makes n = 60 tractable.
pub fn for_each_cycle_type<P, F>(n: u64, keep: P, mut visit: F)
where
    P: Fn(u64) -> bool,
    F: FnMut(&CycleType),
{
    let mut parts: Vec<(u64, u32)> = Vec::new();
    descend(n, n, &keep, &mut parts, &mut visit);
}

fn descend<P, F>(rem: u64, max_part: u64, keep: &P, parts: &mut Vec<(u64, u32)>, visit: &mut F)
where
    P: Fn(u64) -> bool,
    F: FnMut(&CycleType),
{
    if rem == 0 {
        let n = parts.iter().map(|&(p, c)| p * c as u64).sum();
        visit(&CycleType {
            n,
            parts: parts.clone(),
        });
        return;
    }
    for part in (1..=rem.min(max_part)).rev() {
        if !keep(part) {
            continue;
        }
        match parts.last_mut() {
            Some(last) if last.0 == part => last.1 += 1,
            _ => parts.push((part, 1)),
        }
        descend(rem - part, part, keep, parts, visit);
        let last = parts.last_mut().unwrap();
        if last.1 == 1 {
            parts.pop();
        } else {
            last.1 -= 1;
        }
    }
}

/// |{ g in Sym(n) : gcd(order(g), m) = 1 }| by enumerating all n!
/// permutations (Heap's algorithm) and taking the lcm of cycle lengths.
pub fn count_coprime_order_direct(n: u64, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if n > DIRECT_CAP {
        return Err(Error::CapExceeded {
            what: "direct enumeration",
            n,
            cap: DIRECT_CAP,
        });
    }
    let n = n as usize;
    let mut perm: Vec<usize> = (0..n).collect();
    let mut count: u64 = 0;
    let mut check = |perm: &[usize]| {
        if order_of(perm).gcd(&m) == 1 {
            count += 1;
        }
    };
    check(&perm);
    // Heap's algorithm, iterative form
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            check(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(BigUint::from(count))
}

/// Order of a permutation given in one-line notation: lcm of cycle lengths.
/// Fits u64 comfortably for n <= 9 (lcm(1..=9) = 2520).
fn order_of(perm: &[usize]) -> u64 {
    let mut seen = [false; DIRECT_CAP as usize];
    let mut order = 1u64;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}

/// |{ g in Sym(n) : gcd(order(g), m) = 1 }| by summing permutation counts
/// over cycle types whose parts are all coprime to rad(m). A part-wise
/// coprimality test is equivalent to gcd(lcm of parts, m) = 1; both
/// predicates are exercised in tests.
pub fn count_coprime_order_partitions(n: u64, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if n > PARTITION_CAP {
        return Err(Error::CapExceeded {
            what: "cycle-type enumeration",
            n,
            cap: PARTITION_CAP,
        });
    }
    let rad = radical(m);
    let mut total = BigUint::zero();
    for_each_cycle_type(n, |part| part.gcd(&rad) == 1, |ct| total += ct.perm_count());
    Ok(total)
}

/// |{ g in Sym(n) : no cycle of g has length divisible by m }|.
/// Here m is used as given (not reduced to its radical): divisibility of a
/// cycle length by m is a different constraint from order coprimality.
pub fn count_no_cycle_divisible(n: u64, m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::ZeroModulus);
    }
    if n > PARTITION_CAP {
        return Err(Error::CapExceeded {
            what: "cycle-type enumeration",
            n,
            cap: PARTITION_CAP,
        });
    }
    let mut total = BigUint::zero();
    for_each_cycle_type(n, |part| part % m != 0, |ct| total += ct.perm_count());
    Ok(total)
}

fn radical(m: u64) -> u64 {
    crate::arith::factorize(m).iter().map(|&(p, _)| p).product::<u64>().max(1)
}
