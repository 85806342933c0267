//! Partial Tutte polynomials over decomposition trees and the weight
//! algebra on the Riemann sphere.

mod algo;
mod chromatic;
mod ext;
pub mod poly;

pub use algo::{algorithm1, algorithm1_nodes, algorithm2, AbPair, Alg2Result};
pub use chromatic::{chromatic_poly, chromatic_poly_tree, tutte_tree_uniform};
pub use ext::{convert, par, ser, ExtendedComplex, System, SNAP_TOL};
pub use poly::{BiPoly, BigPoly, Poly, Ring};
