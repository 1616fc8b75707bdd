//! Elementary number theory: deterministic primality testing, prime
//! factorization, divisor enumeration, and Euler's totient via
//! inclusion-exclusion.

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin primality test, exact for all u64 inputs.
pub fn is_prime(n: u64) -> bool {
    match n {
        0 | 1 => return false,
        2 | 3 => return true,
        _ if n % 2 == 0 => return false,
        _ => {}
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This witness set is exact below 3.3 * 10^24, far beyond u64.
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    'witness: for &a in &WITNESSES {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// The prime factorization of a positive integer n >= 2, with primes in
/// strictly increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

/// Factorize n >= 2 by trial division.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(Error::Domain(format!("factorize requires n >= 2, got {n}")));
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            let mut r = 0u32;
            while m % p == 0 {
                m /= p;
                r += 1;
            }
            factors.push((p, r));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { n, factors })
}

impl Factorization {
    /// The factored integer.
    pub fn value(&self) -> u64 {
        self.n
    }

    /// The (prime, exponent) pairs, primes strictly increasing.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// The distinct primes dividing n, increasing.
    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// All divisors of n, sorted ascending.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, r) in &self.factors {
            let base = divs.clone();
            let mut pk = 1u64;
            for _ in 0..r {
                pk *= p;
                divs.extend(base.iter().map(|d| d * pk));
            }
        }
        divs.sort_unstable();
        divs
    }

    /// The maximal proper divisors n/p_i, one per distinct prime, sorted
    /// ascending.  Every proper divisor of n divides one of these.
    pub fn maximal_proper_divisors(&self) -> Vec<u64> {
        let mut divs: Vec<u64> = self.primes().map(|p| self.n / p).collect();
        divs.sort_unstable();
        divs
    }

    /// Rebuild n from the factors (used by the reconstruction invariant).
    pub fn reconstruct(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, r)| p.pow(r))
            .product()
    }
}

/// Euler's totient, computed literally by inclusion-exclusion over the
/// distinct prime divisors: phi(n) = n - sum n/p_i + sum n/(p_i p_j) - ...
pub fn euler_phi(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    if n == 1 {
        return 1;
    }
    let primes: Vec<u64> = factorize(n).expect("n >= 2").primes().collect();
    let mut phi: i128 = 0;
    for mask in 0u32..(1u32 << primes.len()) {
        let mut d = 1u64;
        for (idx, &p) in primes.iter().enumerate() {
            if mask & (1 << idx) != 0 {
                d *= p;
            }
        }
        let term = (n / d) as i128;
        if mask.count_ones() % 2 == 0 {
            phi += term;
        } else {
            phi -= term;
        }
    }
    phi as u64
}

/// The odd primes > 3 in the inclusive range [lo, hi], ascending.
pub fn odd_primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(5)..=hi).filter(|&n| n % 2 == 1 && is_prime(n)).collect()
}
