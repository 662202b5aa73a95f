//! Dense Gaussian elimination over a [`Scalar`] field: reduced row echelon
//! form, rank, kernel bases and particular solutions.
//!
//! Matrices here are at most a few hundred columns wide (the adjoint
//! representation of a rank-8 algebra), so rows are stored densely and the
//! elimination skips zero entries of the pivot row instead of using a sparse
//! format.

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<F> {
    rows: Vec<Vec<F>>,
    ncols: usize,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    pub rows: Vec<Vec<F>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl<F: Scalar> Matrix<F> {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: (0..nrows).map(|_| vec![F::zero(); ncols]).collect(),
            ncols,
        }
    }

    /// Builds a matrix from rows; every row must have `ncols` entries.
    pub fn from_rows(rows: Vec<Vec<F>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        Self { rows, ncols }
    }

    /// Builds a matrix whose columns are the given vectors of length `nrows`.
    pub fn from_columns(cols: &[Vec<F>], nrows: usize) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows, "column {j} has wrong length");
            for (i, v) in col.iter().enumerate() {
                if !v.is_negligible() {
                    m.rows[i][j] = v.clone();
                }
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = F::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<F>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.rows[i][j] = v;
    }

    pub fn push_row(&mut self, row: Vec<F>) {
        assert_eq!(row.len(), self.ncols);
        self.rows.push(row);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.ncols, self.nrows());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                t.rows[j][i] = v.clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_negligible() && !b.is_negligible())
                    .fold(F::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.ncols, other.nrows());
        let mut out = Self::zeros(self.nrows(), other.ncols);
        for (i, row) in self.rows.iter().enumerate() {
            for (k, a) in row.iter().enumerate() {
                if a.is_negligible() {
                    continue;
                }
                for (j, b) in other.rows[k].iter().enumerate() {
                    if !b.is_negligible() {
                        let cur = std::mem::replace(&mut out.rows[i][j], F::zero());
                        out.rows[i][j] = cur + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    /// Reduced row echelon form. Zero rows are dropped from the result.
    pub fn echelon(&self) -> Echelon<F> {
        echelon_in_place(self.rows.clone(), self.ncols, self.ncols)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of `{x : A x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        self.echelon().kernel()
    }

    /// Some `x` with `A x = rhs`, or `None` when the system is inconsistent.
    pub fn solve(&self, rhs: &[F]) -> Option<Vec<F>> {
        assert_eq!(rhs.len(), self.nrows());
        let rows: Vec<Vec<F>> = self
            .rows
            .iter()
            .zip(rhs)
            .map(|(row, b)| {
                let mut r = row.clone();
                r.push(b.clone());
                r
            })
            .collect();
        let ech = echelon_in_place(rows, self.ncols + 1, self.ncols);
        // A pivot in the augmented column would have been eliminated only if
        // some row reduced to (0 … 0 | b) with b ≠ 0.
        for row in &ech.rows {
            if row[..self.ncols].iter().all(Scalar::is_negligible)
                && !row[self.ncols].is_negligible()
            {
                return None;
            }
        }
        let mut x = vec![F::zero(); self.ncols];
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            x[p] = row[self.ncols].clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, if it is nonsingular.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        let n = self.nrows();
        assert_eq!(n, self.ncols, "inverse of a non-square matrix");
        let rows: Vec<Vec<F>> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r.extend((0..n).map(|j| if i == j { F::one() } else { F::zero() }));
                r
            })
            .collect();
        let ech = echelon_in_place(rows, 2 * n, n);
        if ech.pivots.len() != n {
            return None;
        }
        Some(Matrix::from_rows(
            ech.rows.into_iter().map(|r| r[n..].to_vec()).collect(),
            n,
        ))
    }
}

impl<F: Scalar> Echelon<F> {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![F::zero(); self.ncols];
                v[free] = F::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[free].is_negligible() {
                        v[p] = -row[free].clone();
                    }
                }
                v
            })
            .collect()
    }
}

/// Row-reduces `rows` (each of width `width`), choosing pivots only among
/// the first `pivot_cols` columns. Rows that become zero in those columns are
/// kept at the bottom so an augmented part stays inspectable.
fn echelon_in_place<F: Scalar>(mut rows: Vec<Vec<F>>, width: usize, pivot_cols: usize) -> Echelon<F> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..pivot_cols {
        if r == rows.len() {
            break;
        }
        let Some(i) = (r..rows.len()).find(|&i| !rows[i][c].is_negligible()) else {
            continue;
        };
        rows.swap(r, i);
        let inv = F::one() / rows[r][c].clone();
        let support: Vec<usize> = (c..width).filter(|&j| !rows[r][j].is_negligible()).collect();
        for &j in &support {
            let v = std::mem::replace(&mut rows[r][j], F::zero());
            rows[r][j] = v * inv.clone();
        }
        let pivot_row = std::mem::take(&mut rows[r]);
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c].is_negligible() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &support {
                let v = std::mem::replace(&mut row[j], F::zero());
                row[j] = v - factor.clone() * pivot_row[j].clone();
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    // Keep rows that still carry something in the augmented part.
    let tail: Vec<Vec<F>> = rows
        .drain(r..)
        .filter(|row| row.iter().any(|v| !v.is_negligible()))
        .collect();
    rows.extend(tail);
    Echelon {
        rows,
        pivots,
        ncols: pivot_cols,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn q(v: i64) -> BigRational {
        BigRational::from_int(v)
    }

    fn qm(rows: &[&[i64]]) -> Matrix<BigRational> {
        let ncols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(), ncols)
    }

    #[test]
    fn kernel_of_rank_one() {
        let m = qm(&[&[1, 2, 3], &[2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let ker = m.kernel();
        assert_eq!(ker.len(), 2);
        for v in &ker {
            assert!(m.mul_vec(v).iter().all(|x| x == &q(0)));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = qm(&[&[1, 1], &[1, -1]]);
        let x = m.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let singular = qm(&[&[1, 1], &[2, 2]]);
        assert!(singular.solve(&[q(1), q(3)]).is_none());
        assert!(singular.solve(&[q(1), q(2)]).is_some());
    }

    #[test]
    fn inverse_of_a2_cartan() {
        let a = qm(&[&[2, -1], &[-1, 2]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(qm(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn empty_shapes() {
        let m: Matrix<BigRational> = Matrix::zeros(0, 3);
        assert_eq!(m.rank(), 0);
        assert_eq!(m.kernel().len(), 3);
        let n: Matrix<BigRational> = Matrix::zeros(3, 0);
        assert_eq!(n.kernel().len(), 0);
        assert_eq!(n.solve(&[q(0), q(0), q(0)]), Some(vec![]));
    }

    #[test]
    fn float_and_exact_agree_on_rank() {
        let exact = qm(&[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2], &[1, 1, 1]]);
        let float = Matrix::from_rows(
            vec![
                vec![2.0, -1.0, 0.0],
                vec![-1.0, 2.0, -1.0],
                vec![0.0, -1.0, 2.0],
                vec![1.0, 1.0, 1.0],
            ],
            3,
        );
        assert_eq!(exact.rank(), float.rank());
    }
}
