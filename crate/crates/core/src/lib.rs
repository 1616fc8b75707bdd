//! Coset diagrams of Hecke triangle-group quotients acting on projective
//! lines over prime fields.
//!
//! The pipeline: for an odd prime p > 3 and k = (p+1)/2, the polynomial
//! g_k(theta) picks out the conjugacy classes of pairs (x, y) with
//! x^2 = y^l = 1 whose product has order dividing k; the roots surviving
//! divisor exclusion index the diagrams in which xy has exactly two
//! orbits of equal size (januarials).  Backward substitution turns each
//! surviving theta into explicit generator matrices, the diagram module
//! decomposes the action and computes the genus three independent ways,
//! and the oracle module re-derives everything by exhaustive enumeration
//! of small groups.
//!
//! ```
//! use januarial::field::PrimeModulus;
//! use januarial::gk::januarial_thetas;
//! use januarial::construct::solve_generators;
//! use januarial::diagram::{build_diagram, GenusBreakdown};
//!
//! let p = PrimeModulus::new(31).unwrap();
//! let thetas = januarial_thetas(p).unwrap();
//! assert_eq!(thetas.values(), &[7, 16, 19, 28]);
//! let pair = solve_generators(p, 4, p.element(7)).unwrap();
//! let diagram = build_diagram(&pair);
//! assert!(diagram.is_januarial());
//! assert_eq!(GenusBreakdown::for_diagram(&diagram).unwrap().genus(), 4);
//! ```

// k = (p+1)/2 and explicit parity tests are the notation of the subject;
// div_ceil / is_multiple_of rewrites would obscure them.
#![allow(clippy::manual_div_ceil, clippy::manual_is_multiple_of)]

pub mod construct;
pub mod diagram;
pub mod error;
pub mod export;
pub mod field;
pub mod gk;
pub mod numtheory;
pub mod oracle;
pub mod pgl2;

pub use construct::{choose_delta_r, solve_generators, verify_pair, GeneratorPair};
pub use diagram::{build_diagram, CosetDiagram, GenusBreakdown};
pub use error::{Error, Result};
pub use field::{FieldElement, PrimeModulus};
pub use gk::{expected_count, gk_coefficients, januarial_thetas, GkPolynomial, ThetaSet};
pub use pgl2::{theta_invariant, PglElement, PointPermutation, ProjectivePoint};
