//! Brute-force cross-checks over small groups PGL(2,q).
//!
//! Nothing here trusts the polynomial route: elements and pairs are
//! enumerated exhaustively and the counting claims are recomputed from
//! scratch, so agreement with the analytic machinery is meaningful.
//!
//! Enumeration is O(q^3) per group and refuses q > 64 unless forced.

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::gk::ThetaSet;
use crate::pgl2::{theta_invariant, PglElement, PointPermutation};
use std::collections::BTreeSet;

/// Largest q enumerated without an explicit override.
pub const DEFAULT_BUDGET: u64 = 64;

fn check_budget(q: PrimeModulus, force: bool) -> Result<()> {
    if !force && q.value() > DEFAULT_BUDGET {
        return Err(Error::SizeLimit {
            q: q.value(),
            budget: DEFAULT_BUDGET,
        });
    }
    Ok(())
}

/// All q^3 - q elements of PGL(2,q), one canonical representative each,
/// in a fixed deterministic order.
pub fn enumerate_elements(q: PrimeModulus) -> Vec<PglElement> {
    let p = q.value();
    let mut out = Vec::with_capacity((p * p * p - p) as usize);
    // First row (1, b): determinant d - bc must not vanish.
    for b in 0..p {
        for c in 0..p {
            for d in 0..p {
                if let Ok(m) = PglElement::new(q, [[1, b], [c, d]]) {
                    out.push(m);
                }
            }
        }
    }
    // First row (0, 1): determinant -c, so c != 0.
    for c in 1..p {
        for d in 0..p {
            out.push(PglElement::new(q, [[0, 1], [c, d]]).expect("det = -c != 0"));
        }
    }
    debug_assert_eq!(out.len() as u64, p * p * p - p);
    out
}

/// Census of the conjugacy classes of elements of one order, bucketed by
/// the invariant tr^2/det.
///
/// For orders n > 2 the invariant separates classes exactly, so
/// `class_count == class_invariants.len()`.  The two involution classes
/// share tr = 0 and are separated by the determinant's square class
/// instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCensus {
    pub q: u64,
    pub order: u64,
    pub class_count: usize,
    pub class_invariants: Vec<u64>,
}

/// Enumerate all of PGL(2,q) and bucket the elements of order n.
pub fn count_classes_of_order(q: PrimeModulus, n: u64, force: bool) -> Result<ClassCensus> {
    check_budget(q, force)?;
    let mut invariants = BTreeSet::new();
    let mut det_classes = BTreeSet::new();
    for m in enumerate_elements(q) {
        if m.order()? != n {
            continue;
        }
        invariants.insert(m.class_invariant().value());
        det_classes.insert(m.det().legendre());
    }
    let class_invariants: Vec<u64> = invariants.into_iter().collect();
    let class_count = if n == 2 {
        det_classes.len()
    } else {
        class_invariants.len()
    };
    Ok(ClassCensus {
        q: q.value(),
        order: n,
        class_count,
        class_invariants,
    })
}

/// Result of checking that a cyclic group of order (q+1)/2 splits
/// PL(F_q) into exactly two orbits of that size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitCheck {
    pub q: u64,
    pub k: u64,
    pub generator: PglElement,
    pub orbit_sizes: Vec<usize>,
    pub pass: bool,
}

/// Find an element of order (q+1)/2 and decompose the orbits of the
/// cyclic group it generates.
pub fn cyclic_orbit_check(q: PrimeModulus, force: bool) -> Result<OrbitCheck> {
    check_budget(q, force)?;
    let k = (q.value() + 1) / 2;
    let generator = enumerate_elements(q)
        .into_iter()
        .find(|m| m.order() == Ok(k))
        .ok_or(Error::NotFound {
            q: q.value(),
            order: k,
        })?;
    let orbit_sizes: Vec<usize> = generator
        .permutation()
        .cycles()
        .iter()
        .map(|c| c.len())
        .collect();
    let pass = orbit_sizes.len() == 2 && orbit_sizes.iter().all(|&s| s as u64 == k);
    Ok(OrbitCheck {
        q: q.value(),
        k,
        generator,
        orbit_sizes,
        pass,
    })
}

/// Count the cycles of "apply xp, then yp" without allocating, and the
/// size of each; returns (cycle_count, all_sizes_equal_to, lcm).
fn composed_cycle_shape(xp: &PointPermutation, yp: &PointPermutation) -> (usize, usize, u64) {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    let n = xp.degree();
    debug_assert!(n <= 128, "mask-based cycle scan supports degree <= 128");
    let mut visited: u128 = 0;
    let mut cycles = 0usize;
    let mut common = usize::MAX;
    let mut lcm = 1u64;
    for start in 0..n {
        if visited & (1 << start) != 0 {
            continue;
        }
        let mut len = 0usize;
        let mut cur = start;
        loop {
            visited |= 1 << cur;
            len += 1;
            cur = yp.apply(xp.apply(cur));
            if cur == start {
                break;
            }
        }
        cycles += 1;
        if common == usize::MAX {
            common = len;
        } else if common != len {
            common = 0;
        }
        lcm = lcm / gcd(lcm, len as u64) * len as u64;
    }
    (cycles, common, lcm)
}

/// Exhaust every pair (x, y) in PGL(2,p) with orders (2, l) and collect
/// the theta invariant of each pair whose product xy has order exactly
/// (p+1)/2 and exactly two equal-size orbits.
pub fn brute_force_thetas(p: PrimeModulus, l: u64, force: bool) -> Result<ThetaSet> {
    check_budget(p, force)?;
    let k = (p.value() + 1) / 2;
    let elements = enumerate_elements(p);
    let involutions: Vec<(PglElement, PointPermutation)> = elements
        .iter()
        .filter(|m| m.order() == Ok(2))
        .map(|m| (*m, m.permutation()))
        .collect();
    let order_l: Vec<(PglElement, PointPermutation)> = elements
        .iter()
        .filter(|m| m.order() == Ok(l))
        .map(|m| (*m, m.permutation()))
        .collect();

    let mut thetas = BTreeSet::new();
    for (x, xp) in &involutions {
        for (y, yp) in &order_l {
            let (cycles, common, lcm) = composed_cycle_shape(xp, yp);
            if cycles == 2 && common as u64 == k && lcm == k {
                thetas.insert(theta_invariant(x, y).value());
            }
        }
    }
    Ok(ThetaSet::from_sorted(p, k, thetas.into_iter().collect()))
}

/// Brute-force conjugacy test: scans every candidate conjugator.  Meant
/// for validating the invariant bucketing on very small q.
pub fn conjugate_in_pgl(a: &PglElement, b: &PglElement) -> bool {
    let q = a.modulus();
    enumerate_elements(q)
        .iter()
        .any(|c| c.mul(a).mul(&c.inverse()) == *b)
}
