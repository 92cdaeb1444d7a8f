//! Echelon forms, subspaces, and quotient spaces.
//!
//! Everything downstream (tensor products over a subalgebra, commutator
//! quotients, homology, spectral pages) is phrased in terms of three
//! constructions implemented here: the reduced row echelon form with a fixed
//! deterministic pivot rule, [`Subspace`] (a span in canonical echelon form),
//! and [`Quotient`] (a quotient with explicit projection and section).

use super::matrix::{Matrix, Vector};
use super::scalar::FieldSpec;
use std::collections::BTreeMap;

/// Reduced row echelon form.
///
/// Pivot rule: scan columns left to right and take the lowest-index row not
/// yet used as a pivot. The result is the unique RREF of the row space, so
/// every derived basis in the crate is reproducible bit for bit.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>, usize) {
    let mut rows = m.to_rows();
    let (mut echelon, pivots) = rref_rows(&mut rows, m.cols);
    let rank = pivots.len();
    echelon.resize(m.rows, Vector::zero(m.cols));
    (Matrix::from_rows(m.cols, echelon), pivots, rank)
}

/// In-place elimination on a list of sparse rows. Returns the nonzero rows in
/// echelon order together with their pivot columns.
fn rref_rows(rows: &mut Vec<Vector>, cols: usize) -> (Vec<Vector>, Vec<usize>) {
    let mut pivots: Vec<usize> = Vec::new();
    let mut pivot_rows: Vec<Vector> = Vec::new();
    let mut done = vec![false; rows.len()];
    for col in 0..cols {
        // lowest-index row that is unreduced and has a nonzero entry here
        let mut found = None;
        for (i, r) in rows.iter().enumerate() {
            if !done[i] && r.get(col).is_some() {
                found = Some(i);
                break;
            }
        }
        let Some(i) = found else { continue };
        done[i] = true;
        let lead = rows[i].get(col).unwrap().clone();
        let pivot_row = rows[i].scale(&lead.inv());
        for (j, r) in rows.iter_mut().enumerate() {
            if j == i {
                continue;
            }
            if let Some(c) = r.get(col) {
                let c = c.neg();
                r.axpy(&c, &pivot_row);
            }
        }
        // also clear previously extracted pivot rows above
        for pr in pivot_rows.iter_mut() {
            if let Some(c) = pr.get(col) {
                let c = c.neg();
                pr.axpy(&c, &pivot_row);
            }
        }
        rows[i] = Vector::zero(cols);
        pivot_rows.push(pivot_row);
        pivots.push(col);
    }
    (pivot_rows, pivots)
}

/// A linear subspace of k^ambient, held as the unique RREF basis of its span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize, field: FieldSpec) -> Self {
        Subspace::from_vectors(
            ambient,
            (0..ambient).map(|i| Vector::unit(ambient, i, field)),
        )
    }

    pub fn from_vectors(ambient: usize, vecs: impl IntoIterator<Item = Vector>) -> Self {
        let mut rows: Vec<Vector> = vecs.into_iter().inspect(|v| {
            assert_eq!(v.dim, ambient, "span vector has wrong ambient dimension");
        }).collect();
        let (basis, pivots) = rref_rows(&mut rows, ambient);
        Subspace { ambient, basis, pivots }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Remainder of `v` after eliminating all pivot coordinates.
    pub fn reduce(&self, v: &Vector) -> Vector {
        assert_eq!(v.dim, self.ambient, "ambient dimension mismatch");
        let mut out = v.clone();
        for (b, p) in self.basis.iter().zip(&self.pivots) {
            if let Some(c) = out.get(*p) {
                let c = c.neg();
                out.axpy(&c, b);
            }
        }
        out
    }

    /// Exact membership test, no tolerance.
    pub fn member(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.member(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        Subspace::from_vectors(
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        )
    }

    /// Intersection, computed as the kernel of "reduce modulo `other`"
    /// restricted to this span.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.ambient);
        }
        let cols: Vec<Vector> = self.basis.iter().map(|b| other.reduce(b)).collect();
        let m = Matrix::from_columns(self.ambient, cols);
        let (ker, _) = kernel_image(&m);
        Subspace::from_vectors(
            self.ambient,
            ker.basis().iter().map(|x| {
                let mut v = Vector::zero(self.ambient);
                for (j, c) in x.iter() {
                    v.axpy(c, &self.basis[j]);
                }
                v
            }),
        )
    }
}

/// Kernel and image of a linear map, both in canonical echelon form.
pub fn kernel_image(m: &Matrix) -> (Subspace, Subspace) {
    let (ech, pivots, rank) = rref(m);
    let ech_rows = ech.to_rows();
    let pivot_set: BTreeMap<usize, usize> =
        pivots.iter().enumerate().map(|(r, c)| (*c, r)).collect();
    let mut kernel_gens = Vec::new();
    for j in 0..m.cols {
        if pivot_set.contains_key(&j) {
            continue;
        }
        // free column j: x_j = 1, pivot variables read off the echelon rows
        let mut v = Vector::zero(m.cols);
        v.add_to(j, field_of(m).one());
        for (c, r) in &pivot_set {
            if let Some(coef) = ech_rows[*r].get(j) {
                v.add_to(*c, coef.neg());
            }
        }
        kernel_gens.push(v);
    }
    let kernel = Subspace::from_vectors(m.cols, kernel_gens);
    debug_assert_eq!(kernel.dim() + rank, m.cols);
    let image = Subspace::from_vectors(m.rows, (0..m.cols).map(|j| m.col(j).clone()));
    (kernel, image)
}

/// Field of a matrix, defaulting to Q for an all-zero matrix. Matrices mixing
/// fields are a programming error caught by scalar arithmetic.
fn field_of(m: &Matrix) -> FieldSpec {
    for j in 0..m.cols {
        if let Some((_, c)) = m.col(j).iter().next() {
            return c.field();
        }
    }
    FieldSpec::Q
}

/// Inverse of a square matrix, if it exists.
pub fn invert(m: &Matrix) -> Option<Matrix> {
    if m.rows != m.cols {
        return None;
    }
    let field = field_of(m);
    let n = m.rows;
    let cols = (0..n)
        .map(|j| solve(m, &Vector::unit(n, j, field)))
        .collect::<Option<Vec<_>>>()?;
    Some(Matrix::from_columns(n, cols))
}

/// Solves m x = b; `None` when inconsistent.
pub fn solve(m: &Matrix, b: &Vector) -> Option<Vector> {
    assert_eq!(b.dim, m.rows);
    let mut rows = m.to_rows();
    let mut aug_rows: Vec<Vector> = rows
        .drain(..)
        .enumerate()
        .map(|(i, r)| {
            let mut a = r.shifted(m.cols + 1, 0);
            if let Some(c) = b.get(i) {
                a.add_to(m.cols, c.clone());
            }
            a
        })
        .collect();
    let (ech, pivots) = rref_rows(&mut aug_rows, m.cols + 1);
    if pivots.contains(&m.cols) {
        return None;
    }
    let mut x = Vector::zero(m.cols);
    for (row, p) in ech.iter().zip(&pivots) {
        if let Some(c) = row.get(m.cols) {
            x.add_to(*p, c.clone());
        }
    }
    Some(x)
}

/// A quotient k^ambient / relations with explicit projection and section.
///
/// The section places quotient coordinates on the non-pivot coordinates of
/// the relation span, so `proj ∘ sect = id` holds exactly and the kernel of
/// `proj` is precisely the relation span.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ambient: usize,
    pub relations: Subspace,
    pub dim: usize,
    free: Vec<usize>,
    proj: Matrix,
    sect: Matrix,
}

impl Quotient {
    pub fn new(ambient: usize, relations: Subspace, field: FieldSpec) -> Self {
        assert_eq!(relations.ambient, ambient, "relations live in the wrong ambient space");
        let pivot_set: Vec<usize> = relations.pivots().to_vec();
        let free: Vec<usize> =
            (0..ambient).filter(|i| !pivot_set.contains(i)).collect();
        let dim = free.len();
        let mut proj = Matrix::zero(dim, ambient);
        for (j, f) in free.iter().enumerate() {
            proj.set_col(*f, Vector::unit(dim, j, field));
        }
        for (row, p) in relations.basis().iter().zip(relations.pivots()) {
            // proj(e_p) = -sum over free coordinates of the relation row
            let mut col = Vector::zero(dim);
            for (j, f) in free.iter().enumerate() {
                if let Some(c) = row.get(*f) {
                    col.add_to(j, c.neg());
                }
            }
            proj.set_col(*p, col);
        }
        let mut sect = Matrix::zero(ambient, dim);
        for (j, f) in free.iter().enumerate() {
            sect.set_col(j, Vector::unit(ambient, *f, field));
        }
        Quotient { ambient, relations, dim, free, proj, sect }
    }

    /// Identity quotient (no relations).
    pub fn trivial(ambient: usize, field: FieldSpec) -> Self {
        Quotient::new(ambient, Subspace::zero(ambient), field)
    }

    pub fn project(&self, v: &Vector) -> Vector {
        self.proj.apply(v)
    }

    pub fn section(&self, v: &Vector) -> Vector {
        self.sect.apply(v)
    }

    pub fn proj_matrix(&self) -> &Matrix {
        &self.proj
    }

    pub fn sect_matrix(&self) -> &Matrix {
        &self.sect
    }

    /// Ambient coordinates chosen to represent the quotient.
    pub fn free_coords(&self) -> &[usize] {
        &self.free
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> super::super::scalar::Scalar {
        FieldSpec::Q.from_i64(n)
    }

    #[test]
    fn rref_hand_elimination() {
        // [[2,4],[1,2]] over Q -> [[1,2],[0,0]], rank 1
        let m = Matrix::from_rows(
            2,
            vec![
                Vector::from_entries(2, [(0, q(2)), (1, q(4))]),
                Vector::from_entries(2, [(0, q(1)), (1, q(2))]),
            ],
        );
        let (e, pivots, rank) = rref(&m);
        assert_eq!(rank, 1);
        assert_eq!(pivots, vec![0]);
        let rows = e.to_rows();
        assert_eq!(rows[0], Vector::from_entries(2, [(0, q(1)), (1, q(2))]));
        assert!(rows[1].is_zero());
    }

    #[test]
    fn rref_zero_and_identity() {
        let z = Matrix::zero(3, 3);
        let (e, p, r) = rref(&z);
        assert!(e.is_zero());
        assert!(p.is_empty());
        assert_eq!(r, 0);
        let id = Matrix::identity(4, FieldSpec::Q);
        let (e, p, r) = rref(&id);
        assert_eq!(e, id);
        assert_eq!(p, vec![0, 1, 2, 3]);
        assert_eq!(r, 4);
    }

    #[test]
    fn kernel_image_dimensions() {
        let id = Matrix::identity(3, FieldSpec::Q);
        let (k, im) = kernel_image(&id);
        assert_eq!(k.dim(), 0);
        assert_eq!(im.dim(), 3);
        let z = Matrix::zero(3, 3);
        let (k, im) = kernel_image(&z);
        assert_eq!(k.dim(), 3);
        assert_eq!(im.dim(), 0);
    }

    #[test]
    fn quotient_by_difference_of_coordinates() {
        // ambient 4, relations e0 - e1: projection identifies e0 and e1
        let rel = Subspace::from_vectors(
            4,
            [Vector::from_entries(4, [(0, q(1)), (1, q(-1))])],
        );
        let quo = Quotient::new(4, rel, FieldSpec::Q);
        assert_eq!(quo.dim, 3);
        let p0 = quo.project(&Vector::unit(4, 0, FieldSpec::Q));
        let p1 = quo.project(&Vector::unit(4, 1, FieldSpec::Q));
        assert_eq!(p0, p1);
        // proj ∘ sect = id
        for j in 0..3 {
            let u = Vector::unit(3, j, FieldSpec::Q);
            assert_eq!(quo.project(&quo.section(&u)), u);
        }
    }

    #[test]
    fn membership_basics() {
        let s = Subspace::from_vectors(2, [Vector::unit(2, 1, FieldSpec::Q)]);
        assert!(s.member(&Vector::zero(2)));
        assert!(!s.member(&Vector::unit(2, 0, FieldSpec::Q)));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = Matrix::from_rows(
            2,
            vec![
                Vector::from_entries(2, [(0, q(1)), (1, q(1))]),
                Vector::from_entries(2, [(0, q(2)), (1, q(2))]),
            ],
        );
        let b = Vector::from_entries(2, [(0, q(3)), (1, q(6))]);
        let x = solve(&m, &b).unwrap();
        assert_eq!(m.apply(&x), b);
        let bad = Vector::from_entries(2, [(0, q(3)), (1, q(5))]);
        assert!(solve(&m, &bad).is_none());
    }
}
