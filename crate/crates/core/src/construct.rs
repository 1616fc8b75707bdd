//! Backward substitution from a theta value to concrete generators.
//!
//! The generators take the shapes X = [[a, ci], [c, -a]] (trace zero, so
//! x has order 2) and Y = [[e, fi], [f, b-e]] (determinant one, trace b
//! chosen so y has order l).  The free parameters satisfy
//!
//! ```text
//!   -(a^2 + i c^2) = Delta != 0        (det X)
//!   1 + i f^2 + e^2 - e b = 0          (det Y = 1)
//!   r = a(2e - b) + 2 i c f            (trace XY)
//!   r^2 = theta * Delta
//! ```
//!
//! The search below fixes every choice the equations leave open, so a
//! given (p, l, theta) always produces the same pair.

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeModulus};
use crate::pgl2::{find_order_trace, theta_invariant, PglElement, PointPermutation};

/// The solved parameters of one generator pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructionParams {
    pub i: FieldElement,
    pub e: FieldElement,
    pub f: FieldElement,
    pub b: FieldElement,
    pub a: FieldElement,
    pub c: FieldElement,
    pub delta: FieldElement,
    pub r: FieldElement,
}

impl ConstructionParams {
    /// Row-major entries of the shape matrix X = [[a, ci], [c, -a]].
    pub fn x_shape(&self) -> [[u64; 2]; 2] {
        [
            [self.a.value(), (self.c * self.i).value()],
            [self.c.value(), (-self.a).value()],
        ]
    }

    /// Row-major entries of the shape matrix Y = [[e, fi], [f, b-e]].
    pub fn y_shape(&self) -> [[u64; 2]; 2] {
        [
            [self.e.value(), (self.f * self.i).value()],
            [self.f.value(), (self.b - self.e).value()],
        ]
    }
}

/// A realized homomorphism image: generators, their permutations, and the
/// invariants (theta, k = order of xy).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorPair {
    pub p: PrimeModulus,
    pub l: u64,
    pub k: u64,
    pub theta: FieldElement,
    pub params: ConstructionParams,
    pub x: PglElement,
    pub y: PglElement,
    pub x_perm: PointPermutation,
    pub y_perm: PointPermutation,
    pub xy_perm: PointPermutation,
}

impl GeneratorPair {
    fn assemble(
        p: PrimeModulus,
        l: u64,
        theta: FieldElement,
        params: ConstructionParams,
    ) -> Result<Self> {
        let x = PglElement::new(p, params.x_shape())?;
        let y = PglElement::new(p, params.y_shape())?;
        let k = x.mul(&y).order()?;
        let x_perm = x.permutation();
        let y_perm = y.permutation();
        // The coset-diagram word xy acts "x first, then y".
        let xy_perm = x_perm.then(&y_perm);
        Ok(GeneratorPair {
            p,
            l,
            k,
            theta,
            params,
            x,
            y,
            x_perm,
            y_perm,
            xy_perm,
        })
    }
}

/// Canonical factorization of theta = r^2 / Delta.
///
/// When theta is a square, (Delta, r) = (1, smaller root of theta);
/// otherwise (Delta, r) = (theta, theta), since theta^2/theta = theta.
pub fn choose_delta_r(theta: FieldElement) -> Result<(FieldElement, FieldElement)> {
    if theta.is_zero() {
        return Err(Error::Domain(
            "theta = 0 is the degenerate order-2 case; no januarial exists there".into(),
        ));
    }
    match theta.sqrt() {
        Some((root, _)) => Ok((theta.modulus().one(), root)),
        None => Ok((theta, theta)),
    }
}

/// Smallest root in canonical order of q2 t^2 + q1 t + q0 = 0, if any.
fn smallest_root(
    q2: FieldElement,
    q1: FieldElement,
    q0: FieldElement,
) -> Option<FieldElement> {
    if q2.is_zero() {
        if q1.is_zero() {
            return q0.is_zero().then(|| q0.modulus().zero());
        }
        return Some(-(q0 * q1.inverse().expect("nonzero")));
    }
    let four = {
        let two = q2.modulus().element(2);
        two * two
    };
    let disc = q1 * q1 - four * q2 * q0;
    let (s, _) = disc.sqrt()?;
    let inv_2a = (q2 + q2).inverse().expect("nonzero");
    let r1 = (-q1 + s) * inv_2a;
    let r2 = (-q1 - s) * inv_2a;
    Some(if r1.value() <= r2.value() { r1 } else { r2 })
}

/// Deterministic backward substitution from theta to a generator pair.
///
/// The trace parameter b comes from [`find_order_trace`], (Delta, r) from
/// [`choose_delta_r`]; then the scan runs i = 1..p-1, e = 0..p-1, takes
/// the smaller root f of i f^2 = eb - e^2 - 1 (skipping non-residues and
/// candidates whose Y does not have order l), and solves
/// a u + c v = r, a^2 + i c^2 = -Delta with u = 2e - b, v = 2if,
/// preferring the smaller quadratic root.  The first solution in this
/// order is returned, after full re-verification.
pub fn solve_generators(
    p: PrimeModulus,
    l: u64,
    theta: FieldElement,
) -> Result<GeneratorPair> {
    if l < 3 {
        return Err(Error::Domain(format!("l must be >= 3, got {l}")));
    }
    let b = find_order_trace(p, l)?;
    let (delta, r) = choose_delta_r(theta)?;
    let one = p.one();
    for i_raw in 1..p.value() {
        let i = p.element(i_raw);
        let i_inv = i.inverse().expect("nonzero");
        for e_raw in 0..p.value() {
            let e = p.element(e_raw);
            let f2 = (e * b - e * e - one) * i_inv;
            let Some((f, _)) = f2.sqrt() else { continue };
            // A scalar Y (f = 0, 2e = b) can never have order l >= 3.
            if f.is_zero() && e + e == b {
                continue;
            }
            let y_probe = PglElement::new(
                p,
                [
                    [e.value(), (f * i).value()],
                    [f.value(), (b - e).value()],
                ],
            )?;
            if y_probe.order()? != l {
                continue;
            }
            let u = e + e - b;
            let v = (i + i) * f;
            let solution = if !u.is_zero() {
                // a = (r - vc)/u substituted into a^2 + i c^2 = -Delta
                // gives (v^2 + i u^2) c^2 - 2rv c + (r^2 + Delta u^2) = 0.
                let q2 = v * v + i * u * u;
                let q1 = -((r * v) + (r * v));
                let q0 = r * r + delta * u * u;
                smallest_root(q2, q1, q0)
                    .map(|c| ((r - v * c) * u.inverse().expect("nonzero"), c))
            } else if !v.is_zero() {
                let c = r * v.inverse().expect("nonzero");
                let a2 = -(delta + i * c * c);
                a2.sqrt().map(|(a, _)| (a, c))
            } else {
                // u = v = 0 forces r = 0, excluded by theta != 0.
                None
            };
            let Some((a, c)) = solution else { continue };
            let params = ConstructionParams {
                i,
                e,
                f,
                b,
                a,
                c,
                delta,
                r,
            };
            let pair = GeneratorPair::assemble(p, l, theta, params)?;
            let report = verify_pair(&pair);
            if let Some(failure) = report.first_failure() {
                return Err(Error::OrderMismatch(failure));
            }
            return Ok(pair);
        }
    }
    Err(Error::SearchExhausted {
        p: p.value(),
        l,
        theta: theta.value(),
    })
}

/// One line of a verification report.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyCheck {
    pub label: &'static str,
    pub pass: bool,
    pub detail: String,
}

/// The outcome of re-checking every pair invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<String> {
        self.checks
            .iter()
            .find(|c| !c.pass)
            .map(|c| format!("{}: {}", c.label, c.detail))
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{} {} ({})",
                    if c.pass { "ok  " } else { "FAIL" },
                    c.label,
                    c.detail
                )
            })
            .collect()
    }
}

/// Re-evaluate every constraint and invariant of a pair from scratch.
/// Failures are report entries, never panics, so tampered pairs can be
/// diagnosed.
pub fn verify_pair(pair: &GeneratorPair) -> VerifyReport {
    let q = &pair.params;
    let p = pair.p;
    let mut checks = Vec::new();
    let mut push = |label: &'static str, pass: bool, detail: String| {
        checks.push(VerifyCheck {
            label,
            pass,
            detail,
        });
    };

    push("i_nonzero", !q.i.is_zero(), format!("i = {}", q.i));

    let det_x = -(q.a * q.a + q.i * q.c * q.c);
    push(
        "det_x",
        det_x == q.delta && !q.delta.is_zero(),
        format!("-(a^2 + i c^2) = {det_x}, Delta = {}", q.delta),
    );

    let det_y_rel = p.one() + q.i * q.f * q.f + q.e * q.e - q.e * q.b;
    push(
        "det_y",
        det_y_rel.is_zero(),
        format!("1 + i f^2 + e^2 - eb = {det_y_rel}"),
    );

    let two = p.element(2);
    let trace = q.a * (two * q.e - q.b) + two * q.i * q.c * q.f;
    push(
        "trace_xy",
        trace == q.r,
        format!("a(2e - b) + 2icf = {trace}, r = {}", q.r),
    );

    push(
        "theta_relation",
        q.r * q.r == pair.theta * q.delta,
        format!("r^2 = {}, theta * Delta = {}", q.r * q.r, pair.theta * q.delta),
    );

    let shape_x = PglElement::new(p, q.x_shape());
    let shape_y = PglElement::new(p, q.y_shape());
    push(
        "x_matches_params",
        shape_x.as_ref() == Ok(&pair.x),
        format!("X = {}", pair.x),
    );
    push(
        "y_matches_params",
        shape_y.as_ref() == Ok(&pair.y),
        format!("Y = {}", pair.y),
    );

    let order_x = pair.x.order();
    push(
        "order_x",
        order_x == Ok(2),
        format!("order(X) = {order_x:?}, want 2"),
    );
    let order_y = pair.y.order();
    push(
        "order_y",
        order_y == Ok(pair.l),
        format!("order(Y) = {order_y:?}, want {}", pair.l),
    );
    let order_xy = pair.x.mul(&pair.y).order();
    push(
        "order_xy",
        order_xy == Ok(pair.k),
        format!("order(XY) = {order_xy:?}, want {}", pair.k),
    );

    let theta = theta_invariant(&pair.x, &pair.y);
    push(
        "theta_invariant",
        theta == pair.theta,
        format!("theta(X, Y) = {theta}, want {}", pair.theta),
    );

    let perms_ok = pair.x_perm == pair.x.permutation()
        && pair.y_perm == pair.y.permutation()
        && pair.xy_perm == pair.x_perm.then(&pair.y_perm);
    push(
        "permutations",
        perms_ok,
        "x_perm, y_perm, xy_perm consistent with the matrices".into(),
    );

    VerifyReport { checks }
}

/// The orders of y realizable with determinant one over F_p, in the range
/// 3..=p+1: every l for which [`find_order_trace`] succeeds.
pub fn valid_orders(p: PrimeModulus) -> Vec<u64> {
    (3..=p.value() + 1)
        .filter(|&l| find_order_trace(p, l).is_ok())
        .collect()
}
