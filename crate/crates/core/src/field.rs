//! Exact arithmetic in the prime field F_p for odd primes p > 3.
//!
//! [`FieldElement`] is the canonical residue in [0, p); every operation
//! re-canonicalizes, so equality of values is equality in F_p.  Square
//! roots are deterministic (Tonelli-Shanks, smaller representative first)
//! which keeps every construction downstream reproducible.

use crate::error::{Error, Result};
use crate::numtheory::is_prime;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// An odd prime p > 3, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u64);

impl PrimeModulus {
    /// Validate that p is an odd prime > 3 (deterministic Miller-Rabin).
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        Ok(PrimeModulus(p))
    }

    pub fn value(self) -> u64 {
        self.0
    }

    /// |PL(F_p)| = p + 1.
    pub fn point_count(self) -> usize {
        self.0 as usize + 1
    }

    /// The canonical residue of `value` mod p.
    pub fn element(self, value: u64) -> FieldElement {
        FieldElement {
            value: value % self.0,
            modulus: self,
        }
    }

    /// The canonical residue of a signed integer mod p.
    pub fn element_from_i64(self, value: i64) -> FieldElement {
        let p = self.0 as i128;
        let v = (value as i128).rem_euclid(p) as u64;
        FieldElement {
            value: v,
            modulus: self,
        }
    }

    pub fn zero(self) -> FieldElement {
        self.element(0)
    }

    pub fn one(self) -> FieldElement {
        self.element(1)
    }

    /// All residues 0, 1, ..., p-1 in order.
    pub fn elements(self) -> impl Iterator<Item = FieldElement> {
        (0..self.0).map(move |v| self.element(v))
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The canonical residue of an element of F_p.
///
/// Arithmetic panics when the operands live over different moduli; the
/// crate never mixes fields.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    modulus: PrimeModulus,
}

impl FieldElement {
    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> PrimeModulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn assert_same_field(self, other: FieldElement) {
        assert_eq!(
            self.modulus, other.modulus,
            "field elements over different moduli"
        );
    }

    pub fn pow(self, mut exp: u64) -> FieldElement {
        let p = self.modulus.0 as u128;
        let mut base = self.value as u128;
        let mut acc: u128 = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        self.modulus.element(acc as u64)
    }

    /// The multiplicative inverse; errors on zero.
    pub fn inverse(self) -> Result<FieldElement> {
        if self.value == 0 {
            return Err(Error::ZeroInverse);
        }
        // Fermat: x^(p-2) since p is prime.
        Ok(self.pow(self.modulus.0 - 2))
    }

    /// Legendre symbol: 1 for nonzero squares, -1 for non-squares, 0 for 0.
    pub fn legendre(self) -> i32 {
        if self.value == 0 {
            return 0;
        }
        let e = self.pow((self.modulus.0 - 1) / 2);
        if e.value == 1 {
            1
        } else {
            -1
        }
    }

    /// Deterministic square root.
    ///
    /// Returns `Some((s, p - s))` with s <= p - s when the element is a
    /// square (both entries 0 for input 0), `None` otherwise.
    pub fn sqrt(self) -> Option<(FieldElement, FieldElement)> {
        let p = self.modulus.0;
        if self.value == 0 {
            return Some((self, self));
        }
        if self.legendre() != 1 {
            return None;
        }
        let root = if p % 4 == 3 {
            self.pow((p + 1) / 4)
        } else {
            self.tonelli_shanks()
        };
        let other = -root;
        if root.value <= other.value {
            Some((root, other))
        } else {
            Some((other, root))
        }
    }

    /// Tonelli-Shanks for p = 1 mod 4; the non-residue scan starts at 2,
    /// so the result is deterministic.
    fn tonelli_shanks(self) -> FieldElement {
        let p = self.modulus.0;
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        let z = (2..p)
            .map(|v| self.modulus.element(v))
            .find(|v| v.legendre() == -1)
            .expect("a non-residue exists for odd p");
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow((q + 1) / 2);
        loop {
            if t.value == 1 {
                return r;
            }
            let mut i = 0u32;
            let mut probe = t;
            while probe.value != 1 {
                probe = probe * probe;
                i += 1;
            }
            let mut b = c;
            for _ in 0..(m - i - 1) {
                b = b * b;
            }
            m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.modulus.0 as u128;
        let v = (self.value as u128 + rhs.value as u128) % p;
        self.modulus.element(v as u64)
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.modulus.0 as u128;
        let v = (self.value as u128 + p - rhs.value as u128) % p;
        self.modulus.element(v as u64)
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        self.assert_same_field(rhs);
        let p = self.modulus.0 as u128;
        let v = (self.value as u128 * rhs.value as u128) % p;
        self.modulus.element(v as u64)
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let p = self.modulus.0;
        self.modulus.element((p - self.value) % p)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
