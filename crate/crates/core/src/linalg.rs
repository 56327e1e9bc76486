//! Dense matrices over exact rationals: products, reduced row echelon form and rank.

use std::fmt;

use num_traits::{One, Zero};

use crate::Q;

/// A dense `rows × cols` matrix of exact rationals, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Q::zero(); rows * cols],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for k in 0..size {
            m[(k, k)] = Q::one();
        }
        m
    }

    /// Builds a matrix from its rows; all rows must have `cols` entries.
    pub fn from_rows(rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged matrix row");
            data.extend(row);
        }
        Self {
            rows: nrows,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[Q] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    /// `self += scale * other`.
    pub fn add_scaled(&mut self, scale: &Q, other: &Matrix) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        if scale.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += scale * b;
            }
        }
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Q::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Reduced row echelon form with deterministic pivoting: columns are scanned left
    /// to right and the first row at or below the current position with a nonzero
    /// entry becomes the pivot row.
    pub fn rref(&self) -> Echelon {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| !m[(r, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(lead, p);
            let inv = m[(lead, c)].recip();
            for x in &mut m.data[lead * m.cols..(lead + 1) * m.cols] {
                *x *= &inv;
            }
            let pivot_row: Vec<Q> = m.row(lead).to_vec();
            for r in 0..m.rows {
                if r == lead {
                    continue;
                }
                let factor = m[(r, c)].clone();
                if factor.is_zero() {
                    continue;
                }
                for (k, pv) in pivot_row.iter().enumerate().skip(c) {
                    if !pv.is_zero() {
                        let delta = &factor * pv;
                        m[(r, k)] -= delta;
                    }
                }
            }
            pivots.push(c);
            lead += 1;
        }
        Echelon { reduced: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Q;
    fn index(&self, (r, c): (usize, usize)) -> &Q {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q {
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|q| q.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}

/// Result of [`Matrix::rref`]: the reduced matrix and its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

/// A basis of the column space of `m`, returned as the nonzero rows of the reduced
/// echelon form of `mᵀ` together with their pivot coordinates.
///
/// Every vector `v` in the column space equals `Σ_k v[pivots[k]] · basis[k]`.
pub fn column_space(m: &Matrix) -> Echelon {
    let ech = m.transpose().rref();
    let rank = ech.pivots.len();
    let reduced = Matrix::from_rows(
        (0..rank).map(|r| ech.reduced.row(r).to_vec()).collect(),
        m.rows(),
    );
    Echelon {
        reduced,
        pivots: ech.pivots,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Q {
        Q::from_integer(v.into())
    }

    fn mat(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(mat(&[&[0, 1], &[1, 0]]).rank(), 2);
        assert_eq!(Matrix::zeros(3, 3).rank(), 0);
        assert_eq!(Matrix::identity(4).rank(), 4);
        assert_eq!(mat(&[&[1, 1, 0], &[0, 1, 1], &[1, 2, 1]]).rank(), 2);
    }

    #[test]
    fn rref_pivots_first_nonzero_column() {
        let e = mat(&[&[0, 2, 4], &[0, 1, 3]]).rref();
        assert_eq!(e.pivots, vec![1, 2]);
        assert_eq!(e.reduced, mat(&[&[0, 1, 0], &[0, 0, 1]]));
    }

    #[test]
    fn column_space_coordinates_reconstruct() {
        // projection onto span{(1,1,0)} along e3 and (1,-1,0)
        let half = Q::new(1.into(), 2.into());
        let mut p = Matrix::zeros(3, 3);
        for r in 0..2 {
            for c in 0..2 {
                p[(r, c)] = half.clone();
            }
        }
        let basis = column_space(&p);
        assert_eq!(basis.pivots, vec![0]);
        let v = p.column(1);
        let rebuilt: Vec<Q> = (0..3)
            .map(|k| &v[basis.pivots[0]] * &basis.reduced[(0, k)])
            .collect();
        assert_eq!(rebuilt, v);
    }

    #[test]
    fn product_and_transpose() {
        let a = mat(&[&[1, 2], &[0, 1]]);
        let b = mat(&[&[3], &[4]]);
        assert_eq!(a.mul(&b), mat(&[&[11], &[4]]));
        assert_eq!(a.transpose(), mat(&[&[1, 0], &[2, 1]]));
        assert_eq!(a.mul_vec(&[q(1), q(1)]), vec![q(3), q(1)]);
    }
}
