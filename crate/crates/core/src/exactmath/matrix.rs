use std::fmt;

use serde::Serialize;

use super::{MathError, RatFunc};

/// Dense matrix of rational functions.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct FracMatrix {
    rows: usize,
    cols: usize,
    data: Vec<RatFunc>,
}

/// Why a linear system could not be solved uniquely.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinearSolveError {
    #[error("inconsistent system: row {row} reduces to 0 = {residual}")]
    Inconsistent { row: usize, residual: String },
    #[error("column {column} is dependent on earlier columns")]
    Dependent { column: usize },
    #[error("dimension mismatch: {0}")]
    Shape(String),
}

impl FracMatrix {
    pub fn zeros(rows: usize, cols: usize) -> FracMatrix {
        FracMatrix { rows, cols, data: vec![RatFunc::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> FracMatrix {
        let mut m = FracMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, RatFunc::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<RatFunc>>) -> FracMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged matrix");
        FracMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RatFunc {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RatFunc) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[RatFunc] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<RatFunc>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> FracMatrix {
        let mut t = FracMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &FracMatrix) -> FracMatrix {
        assert_eq!(self.cols, o.rows, "matrix product shape");
        let mut m = FracMatrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let mut acc = RatFunc::zero();
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a * o.get(k, j));
                }
                m.set(i, j, acc);
            }
        }
        m
    }

    pub fn add(&self, o: &FracMatrix) -> FracMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        FracMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &FracMatrix) -> FracMatrix {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        FracMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &RatFunc) -> FracMatrix {
        FracMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn trace(&self) -> RatFunc {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn entries(&self) -> &[RatFunc] {
        &self.data
    }

    /// Determinant by fraction-aware Gaussian elimination.
    pub fn det(&self) -> RatFunc {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = RatFunc::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !a.get(r, c).is_zero()) else {
                return RatFunc::zero();
            };
            if p != c {
                a.swap_rows(p, c);
                det = -det;
            }
            let piv = a.get(c, c).clone();
            det = &det * &piv;
            let inv = piv.inv().expect("nonzero pivot");
            for r in c + 1..n {
                let f = a.get(r, c) * &inv;
                if f.is_zero() {
                    continue;
                }
                for k in c..n {
                    let v = a.get(r, k) - &(&f * a.get(c, k));
                    a.set(r, k, v);
                }
            }
        }
        det
    }

    /// Coefficients of det(t·I - A), lowest degree first.
    pub fn charpoly(&self) -> Vec<RatFunc> {
        // Faddeev–LeVerrier
        let n = self.rows;
        let mut coeffs = vec![RatFunc::zero(); n + 1];
        coeffs[n] = RatFunc::one();
        let mut m = FracMatrix::zeros(n, n);
        for k in 1..=n {
            let mut mk = self.mul(&m);
            for i in 0..n {
                let v = mk.get(i, i) + &coeffs[n - k + 1];
                mk.set(i, i, v);
            }
            let tr = self.mul(&mk).trace();
            coeffs[n - k] = -(&tr * &RatFunc::frac(1, k as i64));
            m = mk;
        }
        coeffs
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_tracked().into_iter().map(|(c, _)| c).collect()
    }

    /// Like [`FracMatrix::rref`], also returning each pivot's value at the moment it
    /// was chosen. Symbolic pivots are the quantities assumed nonzero.
    pub fn rref_tracked(&mut self) -> Vec<(usize, RatFunc)> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let pv = self.get(r, c).clone();
            let inv = pv.inv().expect("nonzero pivot");
            for k in c..self.cols {
                let v = self.get(r, k) * &inv;
                self.set(r, k, v);
            }
            for i in 0..self.rows {
                if i == r || self.get(i, c).is_zero() {
                    continue;
                }
                let f = self.get(i, c).clone();
                for k in c..self.cols {
                    let v = self.get(i, k) - &(&f * self.get(r, k));
                    self.set(i, k, v);
                }
            }
            pivots.push((c, pv));
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<RatFunc>> {
        let mut a = self.clone();
        let pivots = a.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![RatFunc::zero(); self.cols];
                v[f] = RatFunc::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -a.get(r, f).clone();
                }
                v
            })
            .collect()
    }

    pub fn mul_vec(&self, v: &[RatFunc]) -> Vec<RatFunc> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<FracMatrix, LinearSolveError> {
        linear_solve(self, &FracMatrix::identity(self.rows))
    }
}

/// Solves `A·X = B` exactly. `A` must have full column rank; the result is
/// checked by substitution before it is returned.
pub fn linear_solve(a: &FracMatrix, b: &FracMatrix) -> Result<FracMatrix, LinearSolveError> {
    if a.rows != b.rows {
        return Err(LinearSolveError::Shape(format!(
            "A has {} rows, B has {}",
            a.rows, b.rows
        )));
    }
    let n = a.cols;
    let m = b.cols;
    let mut aug = FracMatrix::zeros(a.rows, n + m);
    for i in 0..a.rows {
        for j in 0..n {
            aug.set(i, j, a.get(i, j).clone());
        }
        for j in 0..m {
            aug.set(i, n + j, b.get(i, j).clone());
        }
    }
    let pivots = aug.rref();
    for (k, &p) in pivots.iter().enumerate() {
        if p != k {
            return Err(if p < n {
                LinearSolveError::Dependent { column: k }
            } else {
                LinearSolveError::Inconsistent {
                    row: k,
                    residual: aug.get(k, p).to_string(),
                }
            });
        }
    }
    if pivots.iter().any(|&p| p >= n) {
        let row = pivots.iter().position(|&p| p >= n).unwrap();
        return Err(LinearSolveError::Inconsistent {
            row,
            residual: aug.get(row, pivots[row]).to_string(),
        });
    }
    if pivots.len() < n {
        return Err(LinearSolveError::Dependent { column: pivots.len() });
    }
    let mut x = FracMatrix::zeros(n, m);
    for i in 0..n {
        for j in 0..m {
            x.set(i, j, aug.get(i, n + j).clone());
        }
    }
    if a.mul(&x) != *b {
        return Err(LinearSolveError::Shape("substitution check failed".into()));
    }
    Ok(x)
}

impl fmt::Debug for FracMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl From<MathError> for LinearSolveError {
    fn from(e: MathError) -> Self {
        LinearSolveError::Shape(e.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[&str]]) -> FracMatrix {
        FracMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| s.parse().unwrap()).collect())
                .collect(),
        )
    }

    #[test]
    fn solve_symbolic_rhs() {
        let a = m(&[&["1", "1"], &["1", "-1"]]);
        let b = m(&[&["k"], &["1/k"]]);
        let x = linear_solve(&a, &b).unwrap();
        assert_eq!(x.get(0, 0), &"(k^2 + 1)/(2*k)".parse().unwrap());
    }

    #[test]
    fn inconsistent_row_reported() {
        let a = m(&[&["1", "1"], &["2", "2"], &["0", "1"]]);
        let b = m(&[&["1"], &["3"], &["0"]]);
        assert!(matches!(
            linear_solve(&a, &b),
            Err(LinearSolveError::Inconsistent { .. })
        ));
    }

    #[test]
    fn dependent_columns_reported() {
        let a = m(&[&["1", "2"], &["2", "4"]]);
        let b = m(&[&["1"], &["2"]]);
        assert!(matches!(linear_solve(&a, &b), Err(LinearSolveError::Dependent { .. })));
    }

    #[test]
    fn charpoly_2x2() {
        let a = m(&[&["1", "2"], &["3", "4"]]);
        let c = a.charpoly();
        assert_eq!(c, vec![RatFunc::int(-2), RatFunc::int(-5), RatFunc::one()]);
        assert_eq!(a.det(), RatFunc::int(-2));
    }
}
