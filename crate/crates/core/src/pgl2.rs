//! The projective line PL(F_p) and the group PGL(2,p).
//!
//! A [`PglElement`] is a 2x2 matrix over F_p with nonzero determinant,
//! stored in canonical form: the first nonzero entry in reading order is
//! scaled to 1, so `==` on canonical forms is equality in PGL(2,p).
//! Elements act on the p+1 points of PL(F_p) as linear fractional
//! transformations z -> (az+b)/(cz+d).
//!
//! Point indices run 0..=p with index p denoting the point at infinity.
//!
//! Composition convention: `PointPermutation::then` applies the receiver
//! first, so the coset-diagram word "xy" (x then y) is
//! `x.permutation().then(&y.permutation())`, which coincides with the
//! permutation of the matrix product Y*X.

use crate::error::{Error, Result};
use crate::field::{FieldElement, PrimeModulus};
use std::fmt;

/// A point of PL(F_p): a field element or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Finite(FieldElement),
    Infinity,
}

impl ProjectivePoint {
    /// Index in 0..=p; infinity maps to p.
    pub fn index(self, p: PrimeModulus) -> usize {
        match self {
            ProjectivePoint::Finite(z) => z.value() as usize,
            ProjectivePoint::Infinity => p.value() as usize,
        }
    }

    /// Inverse of [`index`](Self::index).  Panics for indices > p.
    pub fn from_index(p: PrimeModulus, idx: usize) -> Self {
        let pv = p.value() as usize;
        if idx == pv {
            ProjectivePoint::Infinity
        } else {
            assert!(idx < pv, "point index {idx} out of range for p = {pv}");
            ProjectivePoint::Finite(p.element(idx as u64))
        }
    }

    /// All p+1 points in index order.
    pub fn all(p: PrimeModulus) -> impl Iterator<Item = ProjectivePoint> {
        (0..=p.value() as usize).map(move |i| ProjectivePoint::from_index(p, i))
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Finite(z) => write!(f, "{z}"),
            ProjectivePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// An element of PGL(2,p) in canonical form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PglElement {
    // Row-major canonical entries [a11, a12, a21, a22].
    entries: [u64; 4],
    modulus: PrimeModulus,
}

impl PglElement {
    /// Build from row-major entries, reducing mod p and scaling so the
    /// first nonzero entry is 1.  Errors when the determinant vanishes.
    pub fn new(p: PrimeModulus, rows: [[u64; 2]; 2]) -> Result<Self> {
        let e = [
            p.element(rows[0][0]),
            p.element(rows[0][1]),
            p.element(rows[1][0]),
            p.element(rows[1][1]),
        ];
        Self::from_elements(p, e)
    }

    /// Same as [`new`](Self::new) but accepts signed entries.
    pub fn from_signed(p: PrimeModulus, rows: [[i64; 2]; 2]) -> Result<Self> {
        let e = [
            p.element_from_i64(rows[0][0]),
            p.element_from_i64(rows[0][1]),
            p.element_from_i64(rows[1][0]),
            p.element_from_i64(rows[1][1]),
        ];
        Self::from_elements(p, e)
    }

    fn from_elements(p: PrimeModulus, e: [FieldElement; 4]) -> Result<Self> {
        let det = e[0] * e[3] - e[1] * e[2];
        if det.is_zero() {
            return Err(Error::SingularMatrix(p.value()));
        }
        let scale = e
            .iter()
            .find(|x| !x.is_zero())
            .expect("nonzero determinant implies a nonzero entry")
            .inverse()
            .expect("nonzero");
        let canon = [e[0] * scale, e[1] * scale, e[2] * scale, e[3] * scale];
        Ok(PglElement {
            entries: [
                canon[0].value(),
                canon[1].value(),
                canon[2].value(),
                canon[3].value(),
            ],
            modulus: p,
        })
    }

    pub fn identity(p: PrimeModulus) -> Self {
        PglElement {
            entries: [1, 0, 0, 1],
            modulus: p,
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// Canonical row-major entries.
    pub fn entries(&self) -> [[u64; 2]; 2] {
        [
            [self.entries[0], self.entries[1]],
            [self.entries[2], self.entries[3]],
        ]
    }

    fn elem(&self, i: usize) -> FieldElement {
        self.modulus.element(self.entries[i])
    }

    /// Determinant of the canonical representative.
    pub fn det(&self) -> FieldElement {
        self.elem(0) * self.elem(3) - self.elem(1) * self.elem(2)
    }

    /// Trace of the canonical representative.
    pub fn trace(&self) -> FieldElement {
        self.elem(0) + self.elem(3)
    }

    /// tr(M)^2 / det(M): a conjugacy invariant of the PGL class.
    pub fn class_invariant(&self) -> FieldElement {
        let t = self.trace();
        t * t * self.det().inverse().expect("determinant is nonzero")
    }

    pub fn mul(&self, rhs: &PglElement) -> PglElement {
        assert_eq!(self.modulus, rhs.modulus, "mixed moduli");
        let p = self.modulus;
        let a = |i: usize| self.elem(i);
        let b = |i: usize| rhs.elem(i);
        let e = [
            a(0) * b(0) + a(1) * b(2),
            a(0) * b(1) + a(1) * b(3),
            a(2) * b(0) + a(3) * b(2),
            a(2) * b(1) + a(3) * b(3),
        ];
        Self::from_elements(p, e).expect("product of invertible matrices is invertible")
    }

    pub fn inverse(&self) -> PglElement {
        // Adjugate; the determinant scalar is irrelevant in PGL.
        let e = [self.elem(3), -self.elem(1), -self.elem(2), self.elem(0)];
        Self::from_elements(self.modulus, e).expect("inverse of invertible matrix")
    }

    pub fn is_identity(&self) -> bool {
        self.entries == [1, 0, 0, 1]
    }

    /// Order in PGL(2,p): the least n >= 1 with M^n scalar, found by
    /// repeated multiplication.  Orders divide p-1, p, or p+1, so the
    /// scan is bounded by p+1.
    pub fn order(&self) -> Result<u64> {
        let bound = self.modulus.value() + 1;
        let mut acc = *self;
        for n in 1..=bound {
            if acc.is_identity() {
                return Ok(n);
            }
            acc = acc.mul(self);
        }
        Err(Error::OrderOverflow { bound })
    }

    /// Linear fractional action on a point of PL(F_p).
    pub fn apply(&self, pt: ProjectivePoint) -> ProjectivePoint {
        let (a, b, c, d) = (self.elem(0), self.elem(1), self.elem(2), self.elem(3));
        match pt {
            ProjectivePoint::Infinity => {
                if c.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite(a * c.inverse().expect("nonzero"))
                }
            }
            ProjectivePoint::Finite(z) => {
                let den = c * z + d;
                if den.is_zero() {
                    ProjectivePoint::Infinity
                } else {
                    ProjectivePoint::Finite((a * z + b) * den.inverse().expect("nonzero"))
                }
            }
        }
    }

    /// The permutation of the p+1 point indices induced by the action.
    pub fn permutation(&self) -> PointPermutation {
        let p = self.modulus;
        let images = ProjectivePoint::all(p)
            .map(|pt| self.apply(pt).index(p))
            .collect();
        PointPermutation::from_images(images)
    }
}

impl fmt::Display for PglElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.entries[0], self.entries[1], self.entries[2], self.entries[3]
        )
    }
}

/// theta = tr(XY)^2 / det(XY): invariant of the conjugacy class of the
/// pair (x, y); scalar factors of either matrix cancel.
pub fn theta_invariant(x: &PglElement, y: &PglElement) -> FieldElement {
    x.mul(y).class_invariant()
}

/// The smallest trace b in [0, p) whose determinant-one companion matrix
/// [[0, -1], [1, b]] has order exactly l in PGL(2,p).
///
/// This is the canonical trace parameter for order-l generators with
/// determinant 1; `NoOrderElement` means no such element exists.
pub fn find_order_trace(p: PrimeModulus, l: u64) -> Result<FieldElement> {
    if l < 2 {
        return Err(Error::Domain(format!("order parameter l must be >= 2, got {l}")));
    }
    for b in 0..p.value() {
        let m = PglElement::new(p, [[0, p.value() - 1], [1, b]])
            .expect("companion matrix has determinant 1");
        if m.order()? == l {
            return Ok(p.element(b));
        }
    }
    Err(Error::NoOrderElement { p: p.value(), l })
}

/// A bijection of the point indices 0..=p of PL(F_p); index p is infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointPermutation {
    images: Vec<usize>,
}

impl PointPermutation {
    pub fn identity(degree: usize) -> Self {
        PointPermutation {
            images: (0..degree).collect(),
        }
    }

    /// Panics unless `images` is a bijection of 0..images.len().
    pub fn from_images(images: Vec<usize>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(i < images.len() && !seen[i], "images are not a bijection");
            seen[i] = true;
        }
        PointPermutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Apply `self` first, then `next`.
    pub fn then(&self, next: &PointPermutation) -> PointPermutation {
        assert_eq!(self.degree(), next.degree(), "mixed degrees");
        PointPermutation {
            images: self.images.iter().map(|&i| next.images[i]).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Order as a permutation: lcm of the cycle lengths.
    pub fn order(&self) -> u64 {
        fn gcd(mut a: u64, mut b: u64) -> u64 {
            while b != 0 {
                (a, b) = (b, a % b);
            }
            a
        }
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1u64, |acc, len| acc / gcd(acc, len) * len)
    }

    /// Cycle decomposition in canonical form: every cycle (including
    /// fixed points) starts at its smallest member and cycles are sorted
    /// by that member.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut cycles = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn nontrivial_cycles(&self) -> Vec<Vec<usize>> {
        self.cycles().into_iter().filter(|c| c.len() > 1).collect()
    }

    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.images[i] == i).collect()
    }

    /// Cycle notation over PL(F_p) with the last index printed as "inf";
    /// fixed points are omitted, the identity prints as "id".
    pub fn cycle_notation(&self) -> String {
        let inf = self.degree() - 1;
        let name = |i: usize| {
            if i == inf {
                "inf".to_string()
            } else {
                i.to_string()
            }
        };
        let cycles = self.nontrivial_cycles();
        if cycles.is_empty() {
            return "id".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|&i| name(i)).collect();
                format!("({})", inner.join(","))
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f31() -> PrimeModulus {
        PrimeModulus::new(31).unwrap()
    }

    /// The worked generator pair over F_31: x: z -> (3z+30)/(10z-3),
    /// y: z -> 42/(14z+8).
    fn published_x() -> PglElement {
        PglElement::from_signed(f31(), [[3, 30], [10, -3]]).unwrap()
    }

    fn published_y() -> PglElement {
        PglElement::new(f31(), [[0, 42], [14, 8]]).unwrap()
    }

    fn pt(v: u64) -> ProjectivePoint {
        ProjectivePoint::Finite(f31().element(v))
    }

    #[test]
    fn canonical_form_identifies_scalar_multiples() {
        let p = f31();
        let m = PglElement::new(p, [[3, 30], [10, 28]]).unwrap();
        let scaled = PglElement::new(p, [[9, 90], [30, 84]]).unwrap();
        assert_eq!(m, scaled);
        assert_eq!(m.entries()[0][0], 1);
        assert!(PglElement::new(p, [[1, 2], [2, 4]]).is_err());
    }

    #[test]
    fn lft_examples() {
        let x = published_x();
        let y = published_y();
        assert_eq!(x.apply(pt(0)), pt(21));
        assert_eq!(y.apply(pt(0)), pt(13));
        assert_eq!(
            PglElement::identity(f31()).apply(ProjectivePoint::Infinity),
            ProjectivePoint::Infinity
        );
    }

    #[test]
    fn permutation_fixtures() {
        let xp = published_x().permutation();
        let cycles = xp.cycles();
        assert_eq!(cycles.len(), 16);
        assert!(cycles.iter().all(|c| c.len() == 2));
        assert!(cycles.contains(&vec![0, 21]));
        assert!(cycles.contains(&vec![22, 31]));
        assert!(cycles.contains(&vec![17, 30]));
        assert!(cycles.contains(&vec![19, 25]));

        let id = PglElement::identity(f31()).permutation();
        assert!(id.is_identity());

        // x then y: the product permutation has two 16-cycles, the first
        // starting (0, 18, 16, 5, ...).
        let yp = published_y().permutation();
        let prod = xp.then(&yp);
        let orbits = prod.cycles();
        assert_eq!(orbits.len(), 2);
        assert!(orbits.iter().all(|c| c.len() == 16));
        assert_eq!(&orbits[0][..4], &[0, 18, 16, 5]);
    }

    #[test]
    fn orders() {
        assert_eq!(PglElement::identity(f31()).order().unwrap(), 1);
        assert_eq!(published_y().order().unwrap(), 4);
        assert_eq!(published_x().order().unwrap(), 2);
        assert_eq!(published_x().mul(&published_y()).order().unwrap(), 16);
    }

    #[test]
    fn theta_examples() {
        let x = published_x();
        let y = published_y();
        assert_eq!(theta_invariant(&x, &y).value(), 7);

        // theta(M, M^-1) = 4 for any M.
        for m in [x, y, x.mul(&y)] {
            assert_eq!(theta_invariant(&m, &m.inverse()).value(), 4);
        }

        // Conjugation invariance for the explicit C = [[1,1],[0,1]].
        let c = PglElement::new(f31(), [[1, 1], [0, 1]]).unwrap();
        let cx = c.mul(&x).mul(&c.inverse());
        let cy = c.mul(&y).mul(&c.inverse());
        assert_eq!(theta_invariant(&cx, &cy).value(), 7);
    }

    #[test]
    fn theta_conjugation_invariance_random() {
        // 100 pseudo-random conjugators per test prime.
        for pv in [13u64, 31] {
            let p = PrimeModulus::new(pv).unwrap();
            let x = PglElement::new(p, [[0, p.value() - 1], [1, 0]]).unwrap();
            let y = PglElement::new(p, [[0, p.value() - 1], [1, 1]]).unwrap();
            let theta = theta_invariant(&x, &y);
            let mut state = 0x9e3779b97f4a7c15u64;
            let mut found = 0;
            while found < 100 {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                let rows = [
                    [state % pv, (state >> 16) % pv],
                    [(state >> 32) % pv, (state >> 48) % pv],
                ];
                if let Ok(c) = PglElement::new(p, rows) {
                    let cx = c.mul(&x).mul(&c.inverse());
                    let cy = c.mul(&y).mul(&c.inverse());
                    assert_eq!(theta_invariant(&cx, &cy), theta);
                    found += 1;
                }
            }
        }
    }

    #[test]
    fn find_order_trace_examples() {
        let p = f31();
        assert_eq!(find_order_trace(p, 4).unwrap().value(), 8);
        assert_eq!(find_order_trace(p, 2).unwrap().value(), 0);
        assert_eq!(find_order_trace(p, 3).unwrap().value(), 1);
        // 5 divides p - 1 = 30, so order-5 elements exist.
        assert!(find_order_trace(p, 5).is_ok());
        // 7 divides none of p - 1, p, p + 1.
        assert_eq!(
            find_order_trace(p, 7),
            Err(Error::NoOrderElement { p: 31, l: 7 })
        );
    }

    #[test]
    fn action_is_antihomomorphism_of_then() {
        // permutation(M * N) applies N's permutation first.
        let p = PrimeModulus::new(5).unwrap();
        let elements = crate::oracle::enumerate_elements(p);
        for m in &elements {
            for n in &elements {
                let lhs = m.mul(n).permutation();
                let rhs = n.permutation().then(&m.permutation());
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn permutation_order_matches_group_order() {
        for pv in [5u64, 7, 11] {
            let p = PrimeModulus::new(pv).unwrap();
            for m in crate::oracle::enumerate_elements(p) {
                let n = m.order().unwrap();
                assert_eq!(m.permutation().order(), n);
                // A non-identity LFT fixes at most 2 points.
                if !m.is_identity() {
                    assert!(m.permutation().fixed_points().len() <= 2);
                }
            }
        }
    }

    #[test]
    fn cycle_notation_format() {
        let y = published_y().permutation();
        let s = y.cycle_notation();
        assert!(s.starts_with("(0,13,26,inf)"));
        assert_eq!(PointPermutation::identity(6).cycle_notation(), "id");
    }
}
