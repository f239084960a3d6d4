//! Levi-Civita connection (two independent routes), curvature 2-forms,
//! Ricci contraction and the two halves of the Weyl tensor.

mod connection;
mod forms;
mod hermitian;
mod riemann;
mod weyl;

pub use connection::{connection_cartan, connection_koszul, Connection};
pub use forms::Form;
pub use hermitian::{
    lee_form, nijenhuis, two_form_basis, AlmostComplexStructure, LeeForm, Nijenhuis,
};
pub use riemann::{ricci_scalar, riemann, RicciScalar, Riemann};
pub use weyl::{weyl_half, weyl_square_identity, Orientation, SquareIdentity, WeylHalf};

use serde::Serialize;

use crate::exactmath::{LinearSolveError, RatFunc};
use crate::frames::OrthoFrameAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CurvatureError {
    #[error("first structure equation could not be solved: {0}")]
    Cartan(LinearSolveError),
    #[error("connection routes disagree at {0} entries, first at (m,k,l) = {1:?}")]
    RouteMismatch(usize, (usize, usize, usize)),
    #[error("Lee form equation has no unique solution: {0}")]
    LeeForm(LinearSolveError),
    #[error("2-form is degenerate: {0}")]
    Degenerate(String),
    #[error("endomorphism does not square to -1")]
    NotComplex,
    #[error("dimension error: {0}")]
    Dimension(String),
}

/// Everything computed from one orthonormal frame.
#[derive(Clone, Debug, Serialize)]
pub struct CurvatureData {
    pub connection: Connection,
    pub riemann: Riemann,
    pub ricci: RicciScalar,
    pub w_plus: WeylHalf,
    pub w_minus: WeylHalf,
}

/// Computes the connection by both routes, insists they agree, then curvature,
/// Ricci and both Weyl halves.
pub fn curvature_pipeline(o: &OrthoFrameAlgebra) -> Result<CurvatureData, CurvatureError> {
    curvature_pipeline_with(o, connection_koszul)
}

/// As [`curvature_pipeline`] with a caller-supplied Koszul route (used to check
/// that the route comparison actually detects errors).
pub fn curvature_pipeline_with(
    o: &OrthoFrameAlgebra,
    koszul: impl Fn(&OrthoFrameAlgebra) -> Connection,
) -> Result<CurvatureData, CurvatureError> {
    let cartan = connection_cartan(o)?;
    let kz = koszul(o);
    let diff = cartan.differences(&kz);
    if let Some(first) = diff.first() {
        return Err(CurvatureError::RouteMismatch(diff.len(), *first));
    }
    let r = riemann(&cartan, o)?;
    let ricci = ricci_scalar(&r);
    let w_plus = weyl_half(&r, &ricci.scalar, Orientation::Plus)?;
    let w_minus = weyl_half(&r, &ricci.scalar, Orientation::Minus)?;
    Ok(CurvatureData { connection: cartan, riemann: r, ricci, w_plus, w_minus })
}

/// Curvature of a frame via the Koszul route only; used where speed matters
/// and the two routes have already been compared.
pub fn curvature_koszul_only(o: &OrthoFrameAlgebra) -> Result<CurvatureData, CurvatureError> {
    let conn = connection_koszul(o);
    let r = riemann(&conn, o)?;
    let ricci = ricci_scalar(&r);
    let w_plus = weyl_half(&r, &ricci.scalar, Orientation::Plus)?;
    let w_minus = weyl_half(&r, &ricci.scalar, Orientation::Minus)?;
    Ok(CurvatureData { connection: conn, riemann: r, ricci, w_plus, w_minus })
}

/// Whether every entry of a list vanishes.
pub fn all_zero(v: &[RatFunc]) -> bool {
    v.iter().all(|x| x.is_zero())
}
