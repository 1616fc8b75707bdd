//! The polynomials g_k(theta) and the theta values that index januarials.
//!
//! For generators x, y with tr(XY) = r, det(XY) = Delta, the power (XY)^k
//! is scalar exactly when the alternating binomial sum
//! sum_j (-1)^j C(k-1-j, j) r^(k-1-2j) Delta^j vanishes.  Substituting
//! r^2 = theta * Delta (and dropping one factor r when k is even; its
//! root is the excluded order-2 case theta = 0) turns the sum into a
//! polynomial g_k(theta) with integer coefficients (-1)^j C(k-1-j, j) in
//! descending powers, of degree (k-1)/2 for odd k and k/2 - 1 for even k.
//!
//! The theta values whose diagrams are januarials are the roots of g_k
//! mod p for k = (p+1)/2, minus the roots of g_{k/q} for every prime
//! q | k; their number is phi(k)/2.

use crate::error::{Error, Result};
use crate::field::PrimeModulus;
use crate::numtheory::{euler_phi, factorize};

/// g_k(theta) with exact signed coefficients in descending powers
/// (index 0 is the leading coefficient).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GkPolynomial {
    k: u64,
    coeffs: Vec<i128>,
}

/// Degree of g_k: (k-1)/2 for odd k, k/2 - 1 for even k.
pub fn gk_degree(k: u64) -> usize {
    ((k - 1) / 2) as usize
}

/// Exact binomial coefficient; panics on i128 overflow, which cannot
/// happen for k <= 183 (the coefficient is bounded by the Fibonacci
/// number F(k) < 2^127 there).
fn binomial_i128(n: u64, r: u64) -> i128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: i128 = 1;
    for i in 0..r {
        acc = acc
            .checked_mul((n - i) as i128)
            .expect("binomial coefficient overflows i128");
        acc /= (i + 1) as i128;
    }
    acc
}

/// The coefficients of g_k from the binomial expansion of (XY)^k:
/// coefficient j (descending) is (-1)^j C(k-1-j, j).
pub fn gk_coefficients(k: u64) -> GkPolynomial {
    assert!(k >= 1, "k must be positive");
    let deg = gk_degree(k);
    let coeffs = (0..=deg as u64)
        .map(|j| {
            let c = binomial_i128(k - 1 - j, j);
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    GkPolynomial { k, coeffs }
}

impl GkPolynomial {
    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Signed coefficients in descending powers.
    pub fn coefficients(&self) -> &[i128] {
        &self.coeffs
    }

    /// Coefficients reduced mod p, descending.
    pub fn reduced_mod(&self, p: PrimeModulus) -> Vec<u64> {
        let m = p.value() as i128;
        self.coeffs.iter().map(|&c| c.rem_euclid(m) as u64).collect()
    }

    /// Display in descending powers, e.g. "θ^3 - 6θ^2 + 10θ - 4".
    pub fn display(&self) -> String {
        display_signed_poly(&self.coeffs)
    }
}

/// Render signed descending coefficients as a polynomial in θ.
pub fn display_signed_poly(coeffs: &[i128]) -> String {
    let deg = coeffs.len() - 1;
    let mut out = String::new();
    for (idx, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let power = deg - idx;
        let mag = c.unsigned_abs();
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else if c < 0 {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let show_coeff = mag != 1 || power == 0;
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        match power {
            0 => {}
            1 => out.push('θ'),
            _ => out.push_str(&format!("θ^{power}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Horner evaluation of descending coefficients mod p.
fn eval_mod(coeffs: &[u64], x: u64, p: u64) -> u64 {
    let mut acc: u128 = 0;
    for &c in coeffs {
        acc = (acc * x as u128 + c as u128) % p as u128;
    }
    acc as u64
}

/// The coefficients of g_k directly mod p via factorials and inverse
/// factorials; exact whenever k - 1 < p, which holds for every
/// k <= (p+1)/2.
pub fn gk_coefficients_mod(k: u64, p: PrimeModulus) -> Result<Vec<u64>> {
    assert!(k >= 1, "k must be positive");
    if k > p.value() {
        return Err(Error::Domain(format!(
            "modular binomial route requires k - 1 < p (k = {k}, p = {p})"
        )));
    }
    let n = (k - 1) as usize;
    let mut fact = vec![p.one(); n + 1];
    for i in 1..=n {
        fact[i] = fact[i - 1] * p.element(i as u64);
    }
    let mut inv_fact = vec![p.one(); n + 1];
    inv_fact[n] = fact[n].inverse().expect("factorial has no factor p");
    for i in (0..n).rev() {
        inv_fact[i] = inv_fact[i + 1] * p.element(i as u64 + 1);
    }
    let deg = gk_degree(k);
    let coeffs = (0..=deg)
        .map(|j| {
            let top = (k - 1) as usize - j;
            let c = fact[top] * inv_fact[j] * inv_fact[top - j];
            if j % 2 == 0 {
                c.value()
            } else {
                (-c).value()
            }
        })
        .collect();
    Ok(coeffs)
}

/// The sorted set of roots of some g_k mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaSet {
    modulus: PrimeModulus,
    k: u64,
    values: Vec<u64>,
}

impl ThetaSet {
    pub(crate) fn from_sorted(modulus: PrimeModulus, k: u64, values: Vec<u64>) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        ThetaSet { modulus, k, values }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Sorted root values.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, v: u64) -> bool {
        self.values.binary_search(&v).is_ok()
    }
}

/// All roots of the polynomial mod p by exhaustive Horner scan over the
/// p residues.  The empty set is a valid answer.
pub fn find_roots(poly: &GkPolynomial, p: PrimeModulus) -> ThetaSet {
    assert!(
        (poly.degree() as u64) < p.value(),
        "find_roots requires deg < p"
    );
    let coeffs = poly.reduced_mod(p);
    scan_roots(&coeffs, poly.k, p)
}

/// Roots of g_k mod p through the direct modular coefficient route.
pub fn gk_roots_mod(k: u64, p: PrimeModulus) -> Result<ThetaSet> {
    let coeffs = gk_coefficients_mod(k, p)?;
    Ok(scan_roots(&coeffs, k, p))
}

fn scan_roots(coeffs: &[u64], k: u64, p: PrimeModulus) -> ThetaSet {
    let pv = p.value();
    let values = (0..pv).filter(|&x| eval_mod(coeffs, x, pv) == 0).collect();
    ThetaSet::from_sorted(p, k, values)
}

/// The theta values indexing januarials over F_p: roots of g_k for
/// k = (p+1)/2, minus the roots of g_{k/q} for every prime q | k.
///
/// Excluding only the maximal proper divisors k/q suffices because the
/// root set of g_{k/d} is contained in that of some g_{k/q}.  The scan
/// also asserts that g_k splits into deg(g_k) distinct roots mod p and
/// reports a `SplitDefect` instead of proceeding otherwise.
pub fn januarial_thetas(p: PrimeModulus) -> Result<ThetaSet> {
    let k = (p.value() + 1) / 2;
    let roots = gk_roots_mod(k, p)?;
    let expected = gk_degree(k);
    if roots.len() != expected {
        return Err(Error::SplitDefect {
            k,
            p: p.value(),
            expected,
            found: roots.len(),
        });
    }
    let mut excluded: Vec<u64> = Vec::new();
    for d in factorize(k)?.maximal_proper_divisors() {
        excluded.extend(gk_roots_mod(d, p)?.values());
    }
    let values = roots
        .values()
        .iter()
        .copied()
        .filter(|v| !excluded.contains(v))
        .collect();
    Ok(ThetaSet::from_sorted(p, k, values))
}

/// phi(k)/2: the predicted number of surviving theta values for k >= 3.
pub fn expected_count(k: u64) -> Result<u64> {
    if k < 3 {
        return Err(Error::Domain(format!(
            "expected_count requires k >= 3, got {k}"
        )));
    }
    let phi = euler_phi(k);
    debug_assert_eq!(phi % 2, 0, "phi(k) is even for k >= 3");
    Ok(phi / 2)
}
