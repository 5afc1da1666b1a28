//! Dense linear algebra over a finite field, enough for module splittings.

use super::field::{Fe, Fq};

pub type Vector = Vec<Fe>;

/// Row-major matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Fe>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vector]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        Matrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().copied().collect(),
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(n: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zero(n, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &v) in c.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Fe) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Fe] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn apply(&self, f: &Fq, v: &[Fe]) -> Vector {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, f: &Fq, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn sub_identity(&self, f: &Fq) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m.set(i, i, f.sub(m.get(i, i), 1));
        }
        m
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self, f: &Fq) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            for j in 0..self.cols {
                self.data.swap(r * self.cols + j, pr * self.cols + j);
            }
            let s = f.inv(self.get(r, c)).unwrap();
            for j in 0..self.cols {
                self.set(r, j, f.mul(s, self.get(r, j)));
            }
            for i in 0..self.rows {
                let t = self.get(i, c);
                if i != r && t != 0 {
                    for j in 0..self.cols {
                        let v = f.sub(self.get(i, j), f.mul(t, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &Fq) -> usize {
        self.clone().rref(f).len()
    }

    /// Basis of `{x : Mx = 0}`.
    pub fn nullspace(&self, f: &Fq) -> Vec<Vector> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![0; self.cols];
                v[fc] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self, f: &Fq) -> Option<Matrix> {
        let n = self.rows;
        if n != self.cols {
            return None;
        }
        let mut aug = Matrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.rref(f);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = Matrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, aug.get(i, n + j));
            }
        }
        Some(out)
    }
}

/// A basis of the span of `vectors` (echelon rows).
pub fn span_basis(f: &Fq, dim: usize, vectors: &[Vector]) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut m = Matrix::from_rows(vectors);
    debug_assert_eq!(m.cols, dim);
    let r = m.rref(f).len();
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::field::gf;

    #[test]
    fn inverse_and_nullspace() {
        let f = gf(7, 1).unwrap();
        let m = Matrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let inv = m.inverse(&f).unwrap();
        assert_eq!(m.mul(&f, &inv), Matrix::identity(2));
        let s = Matrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let ns = s.nullspace(&f);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!(s.apply(&f, &v).iter().all(|&x| x == 0));
        }
        assert!(Matrix::from_rows(&[vec![1, 2], vec![2, 4]])
            .inverse(&f)
            .is_none());
    }
}
