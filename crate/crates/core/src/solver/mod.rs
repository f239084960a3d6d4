//! Exact real solving of the `W⁺ = 0` systems: lex Gröbner bases, Sturm
//! chains, branch splitting and certificates for empty branches.

mod groebner;
mod mpoly;
mod numeric;
mod real;
mod system;
mod univariate;
mod verify;

pub use groebner::{groebner, is_unit_ideal, normal_form, Budget, BudgetExhausted};
pub use mpoly::MPoly;
pub use numeric::{numeric_sanity, NumericSanity};
pub use real::{
    real_root_count, shape_residual, solve_real, AlgebraicValue, Certificate, PointShape,
    RealSolution, SolutionValue, SolveOptions, SolveReport, SolveStatus,
};
pub use system::{build_asd_system, CoframeEntry, Equation, Family, PolySystem};
pub use univariate::{
    eval_interval, isolate_real_roots, refine, sturm_count, Interval, SturmChain, SturmError,
    UPoly,
};
pub use verify::{verify_solution, CurvatureCheck, Residual, VerificationReport};

use crate::curvature::CurvatureError;
use crate::liealg::LieError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolverError {
    #[error("unknown family {0:?}; expected h3_ext, g2+g2 or g4_2")]
    UnknownFamily(String),
    #[error("variable {0} in {1} is not an unknown of the system")]
    UnknownVariable(String, String),
    #[error("unexpected system shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Lie(#[from] LieError),
}
