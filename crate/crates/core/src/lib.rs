//! Multivariate Tutte and chromatic polynomials of series-parallel graphs,
//! maxmaxflow, zero-free region certification for chromatic roots, and the
//! numerical tools used to probe the sharpness of those regions.
//!
//! ```
//! use tuttebound::region::{certify, rho_star, CertifyMode};
//! use tuttebound::sp::parse_sp;
//! use tuttebound::tutte::chromatic_poly_tree;
//! use tuttebound::Complex64;
//!
//! let (_, tree) = parse_sp("P(S(e,e),S(e,e))")?;
//! let p = chromatic_poly_tree(&tree)?;
//! assert_eq!(p.to_string(), "q^4 - 4q^3 + 6q^2 - 3q");
//!
//! let threshold = 1.0 / rho_star(3)?;
//! assert!((threshold - 2.6589670819).abs() < 1e-9);
//! let cert = certify(Complex64::new(4.2, 0.3), 3, CertifyMode::Chromatic)?;
//! assert!(cert.certified);
//! # Ok::<(), tuttebound::Error>(())
//! ```

pub mod error;
pub mod graph;
pub mod leaf;
pub mod region;
pub mod roots;
pub mod sp;
pub mod tutte;

pub use error::{Error, Result};
pub use graph::{Multigraph, TwoTerminalGraph, WeightAssignment};
pub use num_complex::Complex64;
pub use sp::{DecompTree, SpExpr};
pub use tutte::{AbPair, BiPoly, BigPoly, ExtendedComplex, System};
