use serde::Serialize;

use super::{CurvatureError, Riemann};
use crate::exactmath::{FracMatrix, RatFunc};

/// Orientation sign selecting the self-dual (`Plus`) or anti-self-dual half.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    Plus,
    Minus,
}

impl Orientation {
    pub fn sign(self) -> i64 {
        match self {
            Orientation::Plus => 1,
            Orientation::Minus => -1,
        }
    }

    pub fn from_sign(z: i64) -> Option<Orientation> {
        match z {
            1 => Some(Orientation::Plus),
            -1 => Some(Orientation::Minus),
            _ => None,
        }
    }
}

/// `W^±` as a symmetric 3×3 matrix in the basis
/// `ω1 = e12 ± e34`, `ω2 = e13 ± e42`, `ω3 = e14 ± e23`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylHalf {
    pub orientation: Orientation,
    pub matrix: FracMatrix,
}

impl WeylHalf {
    /// The five independent entries `W11, W12, W13, W22, W23`.
    pub fn independent_entries(&self) -> [RatFunc; 5] {
        let m = &self.matrix;
        [
            m.get(0, 0).clone(),
            m.get(0, 1).clone(),
            m.get(0, 2).clone(),
            m.get(1, 1).clone(),
            m.get(1, 2).clone(),
        ]
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }
}

/// Weyl half for the orientation `z`, from the curvature and scalar curvature.
pub fn weyl_half(r: &Riemann, scalar: &RatFunc, z: Orientation) -> Result<WeylHalf, CurvatureError> {
    if r.dim() != 4 {
        return Err(CurvatureError::Dimension(format!(
            "Weyl halves need dimension 4, got {}",
            r.dim()
        )));
    }
    let zz = RatFunc::int(z.sign());
    let two_z = RatFunc::int(2 * z.sign());
    let sixth = scalar * &RatFunc::frac(1, 6);
    let q = |i, j, x, y| r.r1(i, j, x, y).clone();
    let w11 = &(&(&q(1, 2, 1, 2) + &q(3, 4, 3, 4)) + &(&two_z * &q(1, 2, 3, 4))) - &sixth;
    let w22 = &(&(&q(1, 3, 1, 3) + &q(4, 2, 4, 2)) + &(&two_z * &q(1, 3, 4, 2))) - &sixth;
    let w33 = &(&(&q(1, 4, 1, 4) + &q(2, 3, 2, 3)) + &(&two_z * &q(1, 4, 2, 3))) - &sixth;
    let w12 = &(&q(1, 2, 1, 3) + &(&zz * &q(1, 2, 4, 2))) + &(&(&zz * &q(3, 4, 1, 3)) + &q(3, 4, 4, 2));
    let w13 = &(&q(1, 2, 1, 4) + &(&zz * &q(1, 2, 2, 3))) + &(&(&zz * &q(3, 4, 1, 4)) + &q(3, 4, 2, 3));
    let w23 = &(&q(1, 3, 1, 4) + &(&zz * &q(1, 3, 2, 3))) + &(&(&zz * &q(4, 2, 1, 4)) + &q(4, 2, 2, 3));
    let m = FracMatrix::from_rows(vec![
        vec![w11, w12.clone(), w13.clone()],
        vec![w12, w22, w23.clone()],
        vec![w13, w23, w33],
    ]);
    Ok(WeylHalf { orientation: z, matrix: m })
}

/// Result of testing `W² - ⅓ tr(W²) I = λ W`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SquareIdentity {
    /// Best `λ` (Frobenius projection of the traceless part of `W²` onto `W`).
    pub lambda: RatFunc,
    pub residual: FracMatrix,
}

impl SquareIdentity {
    pub fn holds(&self) -> bool {
        self.residual.is_zero()
    }
}

/// A traceless symmetric 3×3 matrix has a repeated eigenvalue exactly when the
/// traceless part of its square is proportional to it.
pub fn weyl_square_identity(w: &FracMatrix) -> SquareIdentity {
    let n = w.nrows();
    let w2 = w.mul(w);
    let third = &w2.trace() * &RatFunc::frac(1, n as i64);
    let t = w2.sub(&FracMatrix::identity(n).scale(&third));
    let dot = |a: &FracMatrix, b: &FracMatrix| -> RatFunc {
        a.entries().iter().zip(b.entries()).map(|(x, y)| x * y).sum()
    };
    let ww = dot(w, w);
    let lambda = if ww.is_zero() { RatFunc::zero() } else { &dot(&t, w) / &ww };
    let residual = t.sub(&w.scale(&lambda));
    SquareIdentity { lambda, residual }
}
