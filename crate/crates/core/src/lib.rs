//! Exact curvature computations for left-invariant metrics on Lie groups,
//! with a real polynomial-system solver for the anti-self-duality equations.

pub mod exactmath;
pub mod liealg;
pub mod report;
pub mod frames;
pub mod curvature;
pub mod solver;
pub mod suite;
