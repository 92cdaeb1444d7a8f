//! Sparse vectors and matrices over an exact field.
//!
//! Matrices are stored column-major: the maps in this crate are built one
//! basis vector at a time, and composition is "apply to every column".
//! No zero entry is ever stored.

use super::scalar::{FieldSpec, Scalar};
use std::collections::BTreeMap;

/// A sparse vector with exact entries. Zero entries are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub dim: usize,
    entries: BTreeMap<usize, Scalar>,
}

impl Vector {
    pub fn zero(dim: usize) -> Self {
        Vector { dim, entries: BTreeMap::new() }
    }

    pub fn unit(dim: usize, i: usize, field: FieldSpec) -> Self {
        let mut v = Vector::zero(dim);
        v.add_to(i, field.one());
        v
    }

    pub fn from_entries(dim: usize, entries: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut v = Vector::zero(dim);
        for (i, c) in entries {
            v.add_to(i, c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Scalar> {
        self.entries.get(&i)
    }

    pub fn add_to(&mut self, i: usize, c: Scalar) {
        debug_assert!(i < self.dim, "index {i} out of range {}", self.dim);
        if c.is_zero() {
            return;
        }
        match self.entries.entry(i) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// self += c * other
    pub fn axpy(&mut self, c: &Scalar, other: &Vector) {
        debug_assert_eq!(self.dim, other.dim);
        if c.is_zero() {
            return;
        }
        for (i, v) in &other.entries {
            self.add_to(*i, c.mul(v));
        }
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        let mut out = Vector::zero(self.dim);
        out.axpy(c, self);
        out
    }

    pub fn add(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        for (i, v) in &other.entries {
            out.add_to(*i, v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        let mut out = self.clone();
        for (i, v) in &other.entries {
            out.add_to(*i, v.neg());
        }
        out
    }

    pub fn neg(&self) -> Vector {
        Vector { dim: self.dim, entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect() }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.entries.iter().map(|(i, v)| (*i, v))
    }

    /// Index of the first nonzero entry, if any.
    pub fn leading(&self) -> Option<usize> {
        self.entries.keys().next().copied()
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    /// Concatenation-style embedding into a larger space at `offset`.
    pub fn shifted(&self, new_dim: usize, offset: usize) -> Vector {
        let mut out = Vector::zero(new_dim);
        for (i, v) in &self.entries {
            out.add_to(i + offset, v.clone());
        }
        out
    }
}

/// A sparse matrix, stored as a list of columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    columns: Vec<Vector>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, columns: vec![Vector::zero(rows); cols] }
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.columns[i] = Vector::unit(n, i, field);
        }
        m
    }

    pub fn from_columns(rows: usize, columns: Vec<Vector>) -> Self {
        for c in &columns {
            assert_eq!(c.dim, rows);
        }
        Matrix { rows, cols: columns.len(), columns }
    }

    pub fn col(&self, j: usize) -> &Vector {
        &self.columns[j]
    }

    pub fn set_col(&mut self, j: usize, v: Vector) {
        assert_eq!(v.dim, self.rows);
        self.columns[j] = v;
    }

    pub fn entry(&self, i: usize, j: usize) -> Option<&Scalar> {
        self.columns[j].get(i)
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        assert_eq!(v.dim, self.cols, "matrix-vector dimension mismatch");
        let mut out = Vector::zero(self.rows);
        for (j, c) in v.iter() {
            out.axpy(c, &self.columns[j]);
        }
        out
    }

    /// self ∘ other (matrix product; `other` is applied first).
    pub fn compose(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "composition dimension mismatch");
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        Matrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let columns =
            self.columns.iter().zip(&other.columns).map(|(a, b)| a.add(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let columns =
            self.columns.iter().zip(&other.columns).map(|(a, b)| a.sub(b)).collect();
        Matrix { rows: self.rows, cols: self.cols, columns }
    }

    pub fn neg(&self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|c| c.neg()).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            columns: self.columns.iter().map(|v| v.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let mut columns = vec![Vector::zero(self.cols); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.iter() {
                columns[i].add_to(j, v.clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, columns }
    }

    /// Rows of the matrix as sparse vectors (used by the elimination code).
    pub fn to_rows(&self) -> Vec<Vector> {
        let mut rows = vec![Vector::zero(self.cols); self.rows];
        for (j, c) in self.columns.iter().enumerate() {
            for (i, v) in c.iter() {
                rows[i].add_to(j, v.clone());
            }
        }
        rows
    }

    pub fn from_rows(cols: usize, rows: Vec<Vector>) -> Matrix {
        let nrows = rows.len();
        let mut m = Matrix::zero(nrows, cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.dim, cols);
            for (j, v) in r.iter() {
                m.columns[j].add_to(i, v.clone());
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn apply_and_compose_agree() {
        let f = FieldSpec::Q;
        let mut m = Matrix::zero(2, 2);
        m.set_col(0, Vector::from_entries(2, [(0, f.from_i64(1)), (1, f.from_i64(2))]));
        m.set_col(1, Vector::from_entries(2, [(0, f.from_i64(3))]));
        let v = Vector::from_entries(2, [(0, f.from_i64(1)), (1, f.from_i64(1))]);
        let mv = m.apply(&v);
        assert_eq!(mv.get(0), Some(&f.from_i64(4)));
        let m2 = m.compose(&m);
        assert_eq!(m2.apply(&v), m.apply(&mv));
    }

    #[test]
    fn no_zero_entries_stored() {
        let f = FieldSpec::Q;
        let mut v = Vector::zero(3);
        v.add_to(1, f.one());
        v.add_to(1, f.one().neg());
        assert!(v.is_zero());
        assert_eq!(v.support_len(), 0);
    }
}
