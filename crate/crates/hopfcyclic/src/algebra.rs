//! Finite-dimensional associative algebras, bimodules, and the relative
//! constructions ⊗_K and ♮ (commutator quotient) they generate.
//!
//! Algebras are basis-indexed multiplication tables. All relative tensor
//! products are materialized as quotients with explicit projection and
//! section; there is no symbolic tensor calculus — every formula in the
//! crate ends up as a finite matrix.

use crate::exactlin::{FieldSpec, Matrix, Quotient, Subspace, TensorSpace, Vector};

/// Outcome of a structural validation. An empty report means valid; each
/// violation names the axiom and the witnessing basis elements.
#[derive(Clone, Debug, Default, serde::Serialize)]
pub struct ValidationReport {
    pub violations: Vec<String>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, msg: String) {
        self.violations.push(msg);
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }
}

/// An associative unital algebra given by structure constants.
#[derive(Clone, Debug)]
pub struct AlgebraData {
    pub field: FieldSpec,
    pub dim: usize,
    pub labels: Vec<String>,
    mul: Vec<Vec<Vector>>,
    pub unit: Vector,
}

impl AlgebraData {
    pub fn new(
        field: FieldSpec,
        labels: Vec<String>,
        mul: Vec<Vec<Vector>>,
        unit: Vector,
    ) -> Self {
        let dim = labels.len();
        assert_eq!(mul.len(), dim);
        for row in &mul {
            assert_eq!(row.len(), dim);
            for v in row {
                assert_eq!(v.dim, dim);
            }
        }
        assert_eq!(unit.dim, dim);
        AlgebraData { field, dim, labels, mul, unit }
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: FieldSpec) -> Self {
        let one = Vector::unit(1, 0, field);
        AlgebraData::new(field, vec!["1".into()], vec![vec![one.clone()]], one)
    }

    /// Group algebra k[G] from a multiplication table on group element
    /// indices (`table[i][j]` = index of g_i g_j, index 0 is the identity).
    pub fn group_algebra(field: FieldSpec, labels: Vec<String>, table: &[Vec<usize>]) -> Self {
        let n = labels.len();
        let mul = (0..n)
            .map(|i| (0..n).map(|j| Vector::unit(n, table[i][j], field)).collect())
            .collect();
        AlgebraData::new(field, labels, mul, Vector::unit(n, 0, field))
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> &Vector {
        &self.mul[i][j]
    }

    pub fn mul_vec(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                out.axpy(&a.mul(b), &self.mul[i][j]);
            }
        }
        out
    }

    /// Left-multiplication matrix of a vector.
    pub fn left_mul_matrix(&self, x: &Vector) -> Matrix {
        let cols = (0..self.dim)
            .map(|j| self.mul_vec(x, &Vector::unit(self.dim, j, self.field)))
            .collect();
        Matrix::from_columns(self.dim, cols)
    }

    pub fn right_mul_matrix(&self, x: &Vector) -> Matrix {
        let cols = (0..self.dim)
            .map(|j| self.mul_vec(&Vector::unit(self.dim, j, self.field), x))
            .collect();
        Matrix::from_columns(self.dim, cols)
    }

    /// The algebra as a bimodule over itself.
    pub fn regular_bimodule(&self) -> BimoduleData {
        let left = (0..self.dim)
            .map(|i| self.left_mul_matrix(&Vector::unit(self.dim, i, self.field)))
            .collect();
        let right = (0..self.dim)
            .map(|i| self.right_mul_matrix(&Vector::unit(self.dim, i, self.field)))
            .collect();
        BimoduleData { dim: self.dim, left, right }
    }
}

/// Checks associativity on all basis triples and that the unit vector is a
/// two-sided identity.
pub fn check_algebra(a: &AlgebraData) -> ValidationReport {
    let mut report = ValidationReport::default();
    for i in 0..a.dim {
        let e = Vector::unit(a.dim, i, a.field);
        if a.mul_vec(&a.unit, &e) != e {
            report.push(format!("unit axiom fails on the left at basis {}", a.labels[i]));
        }
        if a.mul_vec(&e, &a.unit) != e {
            report.push(format!("unit axiom fails on the right at basis {}", a.labels[i]));
        }
    }
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let ei = Vector::unit(a.dim, i, a.field);
                let ek = Vector::unit(a.dim, k, a.field);
                let lhs = a.mul_vec(&a.mul[i][j], &ek);
                let rhs = a.mul_vec(&ei, &a.mul[j][k]);
                if lhs != rhs {
                    report.push(format!(
                        "associativity fails at ({}, {}, {})",
                        a.labels[i], a.labels[j], a.labels[k]
                    ));
                }
            }
        }
    }
    report
}

/// A subalgebra, held as the echelonized span of its basis inside the parent.
#[derive(Clone, Debug)]
pub struct SubalgebraData {
    pub basis: Subspace,
}

impl SubalgebraData {
    pub fn new(parent: &AlgebraData, vectors: Vec<Vector>) -> Self {
        SubalgebraData { basis: Subspace::from_vectors(parent.dim, vectors) }
    }

    /// The span of the unit alone.
    pub fn unit_only(parent: &AlgebraData) -> Self {
        SubalgebraData::new(parent, vec![parent.unit.clone()])
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn validate(&self, parent: &AlgebraData) -> ValidationReport {
        let mut report = ValidationReport::default();
        if !self.basis.member(&parent.unit) {
            report.push("subalgebra does not contain the unit".into());
        }
        for (i, x) in self.basis.basis().iter().enumerate() {
            for (j, y) in self.basis.basis().iter().enumerate() {
                if !self.basis.member(&parent.mul_vec(x, y)) {
                    report.push(format!("subalgebra not closed under product ({i}, {j})"));
                }
            }
        }
        report
    }
}

/// A bimodule: commuting unital left and right actions given as one matrix
/// per basis element of the acting algebras.
#[derive(Clone, Debug)]
pub struct BimoduleData {
    pub dim: usize,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

impl BimoduleData {
    pub fn act_left(&self, a: &Vector, v: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim);
        for (i, c) in a.iter() {
            out.axpy(c, &self.left[i].apply(v));
        }
        out
    }

    pub fn act_right(&self, v: &Vector, a: &Vector) -> Vector {
        let mut out = Vector::zero(self.dim);
        for (i, c) in a.iter() {
            out.axpy(c, &self.right[i].apply(v));
        }
        out
    }

    pub fn validate(&self, left_alg: &AlgebraData, right_alg: &AlgebraData) -> ValidationReport {
        let mut report = ValidationReport::default();
        let id = Matrix::identity(self.dim, left_alg.field);
        let unit_l = action_matrix(&self.left, &left_alg.unit);
        if unit_l != id {
            report.push("left action not unital".into());
        }
        let unit_r = action_matrix(&self.right, &right_alg.unit);
        if unit_r != id {
            report.push("right action not unital".into());
        }
        for i in 0..left_alg.dim {
            for j in 0..left_alg.dim {
                let prod = action_matrix(&self.left, left_alg.mul_basis(i, j));
                if prod != self.left[i].compose(&self.left[j]) {
                    report.push(format!("left action not associative at ({i}, {j})"));
                }
            }
        }
        for i in 0..right_alg.dim {
            for j in 0..right_alg.dim {
                let prod = action_matrix(&self.right, right_alg.mul_basis(i, j));
                // right action reverses composition order
                if prod != self.right[j].compose(&self.right[i]) {
                    report.push(format!("right action not associative at ({i}, {j})"));
                }
            }
        }
        for i in 0..left_alg.dim {
            for j in 0..right_alg.dim {
                let lr = self.right[j].compose(&self.left[i]);
                let rl = self.left[i].compose(&self.right[j]);
                if lr != rl {
                    report.push(format!("left and right actions do not commute at ({i}, {j})"));
                }
            }
        }
        report
    }
}

fn action_matrix(table: &[Matrix], x: &Vector) -> Matrix {
    let dim = table[0].rows;
    let mut m = Matrix::zero(dim, dim);
    for (i, c) in x.iter() {
        m = m.add(&table[i].scale(c));
    }
    m
}

/// M ⊗_R N as a quotient of M ⊗_k N by the span of m·λ ⊗ n − m ⊗ λ·n.
///
/// `r_basis` is a basis of R expressed in the coordinates the action tables
/// use; `right_of_m` is the right R-action on M and `left_of_n` the left
/// R-action on N.
pub fn tensor_over(
    field: FieldSpec,
    m_dim: usize,
    n_dim: usize,
    r_basis: &[Vector],
    right_of_m: impl Fn(usize, &Vector) -> Vector,
    left_of_n: impl Fn(usize, &Vector) -> Vector,
) -> TensorSpace {
    let shape = crate::exactlin::Shape::new(vec![m_dim, n_dim]);
    let mut relations = Vec::new();
    for (t, _) in r_basis.iter().enumerate() {
        for i in 0..m_dim {
            let mi = Vector::unit(m_dim, i, field);
            let mi_r = right_of_m(t, &mi);
            for j in 0..n_dim {
                let nj = Vector::unit(n_dim, j, field);
                let r_nj = left_of_n(t, &nj);
                let lhs = shape.tensor(&[&mi_r, &nj]);
                let rhs = shape.tensor(&[&mi, &r_nj]);
                let rel = lhs.sub(&rhs);
                if !rel.is_zero() {
                    relations.push(rel);
                }
            }
        }
    }
    TensorSpace::new(field, vec![m_dim, n_dim], relations)
}

/// M ⊗_R N for bimodules, with the actions read off the bimodule tables
/// restricted along `r_basis` (vectors in the acting algebra's coordinates).
pub fn tensor_over_bimodules(
    field: FieldSpec,
    m: &BimoduleData,
    n: &BimoduleData,
    r_basis: &[Vector],
) -> TensorSpace {
    tensor_over(
        field,
        m.dim,
        n.dim,
        r_basis,
        |t, v| m.act_right(v, &r_basis[t]),
        |t, v| n.act_left(&r_basis[t], v),
    )
}

/// M♮ = M/[M, K]: the quotient by the span of m·λ − λ·m.
pub fn natural_quotient(field: FieldSpec, m: &BimoduleData, k_basis: &[Vector]) -> Quotient {
    let mut relations = Vec::new();
    for lam in k_basis {
        for i in 0..m.dim {
            let v = Vector::unit(m.dim, i, field);
            let rel = m.act_right(&v, lam).sub(&m.act_left(lam, &v));
            if !rel.is_zero() {
                relations.push(rel);
            }
        }
    }
    Quotient::new(m.dim, Subspace::from_vectors(m.dim, relations), field)
}

/// The l-fold relative bar space B ⊗ D̄^{⊗l} ⊗ B (tensors over K), where D̄
/// is the quotient B/K. Returns the carrier together with the outer
/// B-bimodule actions on it.
pub struct BarSpace {
    pub space: TensorSpace,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

pub fn bar_space(b: &AlgebraData, k: &SubalgebraData, l: usize) -> BarSpace {
    let field = b.field;
    let dbar = Quotient::new(b.dim, k.basis.clone(), field);
    let db_dim = dbar.dim;
    let mut dims = vec![b.dim];
    dims.extend(std::iter::repeat(db_dim).take(l));
    dims.push(b.dim);
    let shape = crate::exactlin::Shape::new(dims.clone());
    // D̄ is a K-bimodule via multiplication in B through the section.
    let k_basis: Vec<Vector> = k.basis.basis().to_vec();
    let dbar_left = |lam: &Vector, v: &Vector| -> Vector {
        dbar.project(&b.mul_vec(lam, &dbar.section(v)))
    };
    let dbar_right = |v: &Vector, lam: &Vector| -> Vector {
        dbar.project(&b.mul_vec(&dbar.section(v), lam))
    };
    let mut relations = Vec::new();
    // junction j sits between slot j and slot j+1 (0-based slots)
    for junction in 0..=l {
        for lam in &k_basis {
            for code in 0..shape.total {
                let idx = shape.decode(code);
                let mut factors_l: Vec<Vector> = Vec::with_capacity(dims.len());
                let mut factors_r: Vec<Vector> = Vec::with_capacity(dims.len());
                for (slot, &i) in idx.iter().enumerate() {
                    let unit = Vector::unit(dims[slot], i, field);
                    let (lv, rv) = if slot == junction {
                        // move λ to the right of this slot / keep
                        let acted = if slot == 0 {
                            b.mul_vec(&unit, lam)
                        } else {
                            dbar_right(&unit, lam)
                        };
                        (acted, unit.clone())
                    } else if slot == junction + 1 {
                        let acted = if slot == dims.len() - 1 {
                            b.mul_vec(lam, &unit)
                        } else {
                            dbar_left(lam, &unit)
                        };
                        (unit.clone(), acted)
                    } else {
                        (unit.clone(), unit.clone())
                    };
                    factors_l.push(lv);
                    factors_r.push(rv);
                }
                let lhs = shape.tensor(&factors_l.iter().collect::<Vec<_>>());
                let rhs = shape.tensor(&factors_r.iter().collect::<Vec<_>>());
                let rel = lhs.sub(&rhs);
                if !rel.is_zero() {
                    relations.push(rel);
                }
            }
        }
    }
    let space = TensorSpace::new(field, dims.clone(), relations);
    let outer = |side_left: bool, g: usize| -> Matrix {
        let gv = Vector::unit(b.dim, g, field);
        space
            .induce_map(space.dim(), true, &mut |idx: &[usize]| {
                let mut factors: Vec<Vector> = idx
                    .iter()
                    .enumerate()
                    .map(|(slot, &i)| Vector::unit(dims[slot], i, field))
                    .collect();
                if side_left {
                    factors[0] = b.mul_vec(&gv, &factors[0]);
                } else {
                    let last = dims.len() - 1;
                    factors[last] = b.mul_vec(&factors[last], &gv);
                }
                space.class_of_tensor(&factors.iter().collect::<Vec<_>>())
            })
            .expect("outer bar-space action is well defined")
    };
    let left = (0..b.dim).map(|g| outer(true, g)).collect();
    let right = (0..b.dim).map(|g| outer(false, g)).collect();
    BarSpace { space, left, right }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Q
    }

    fn z2_group_algebra() -> AlgebraData {
        AlgebraData::group_algebra(q(), vec!["1".into(), "g".into()], &[vec![0, 1], vec![1, 0]])
    }

    /// 2x2 matrix algebra over Q, basis e11, e12, e21, e22.
    fn mat2() -> AlgebraData {
        let f = q();
        let dim = 4;
        let idx = |i: usize, j: usize| i * 2 + j;
        let mut mul = vec![vec![Vector::zero(dim); dim]; dim];
        for i in 0..2 {
            for j in 0..2 {
                for k in 0..2 {
                    for l in 0..2 {
                        let out = if j == k {
                            Vector::unit(dim, idx(i, l), f)
                        } else {
                            Vector::zero(dim)
                        };
                        mul[idx(i, j)][idx(k, l)] = out;
                    }
                }
            }
        }
        let mut unit = Vector::zero(dim);
        unit.add_to(idx(0, 0), f.one());
        unit.add_to(idx(1, 1), f.one());
        AlgebraData::new(
            f,
            vec!["e11".into(), "e12".into(), "e21".into(), "e22".into()],
            mul,
            unit,
        )
    }

    #[test]
    fn ground_field_is_valid() {
        assert!(check_algebra(&AlgebraData::ground(q())).ok());
    }

    #[test]
    fn missing_unit_is_reported() {
        // one-dimensional table with e0*e0 = 0: no unit
        let a = AlgebraData::new(
            q(),
            vec!["e".into()],
            vec![vec![Vector::zero(1)]],
            Vector::unit(1, 0, q()),
        );
        let rep = check_algebra(&a);
        assert!(!rep.ok());
        assert!(rep.violations.iter().any(|v| v.contains("unit")));
    }

    #[test]
    fn group_algebra_z2_is_valid() {
        assert!(check_algebra(&z2_group_algebra()).ok());
    }

    #[test]
    fn tensor_over_ground_field_is_plain_tensor() {
        let a = z2_group_algebra();
        let m = a.regular_bimodule();
        let k = vec![a.unit.clone()];
        let t = tensor_over_bimodules(q(), &m, &m, &k);
        assert_eq!(t.dim(), 4);
    }

    #[test]
    fn a_tensor_a_over_a_is_a() {
        let a = mat2();
        let m = a.regular_bimodule();
        let basis: Vec<Vector> = (0..a.dim).map(|i| Vector::unit(a.dim, i, q())).collect();
        let t = tensor_over_bimodules(q(), &m, &m, &basis);
        assert_eq!(t.dim(), a.dim);
    }

    #[test]
    fn natural_quotient_of_matrix_algebra_is_trace_line() {
        let a = mat2();
        let m = a.regular_bimodule();
        let basis: Vec<Vector> = (0..a.dim).map(|i| Vector::unit(a.dim, i, q())).collect();
        let quo = natural_quotient(q(), &m, &basis);
        assert_eq!(quo.dim, 1);
    }

    #[test]
    fn natural_quotient_commutative_is_identity() {
        // K = Q x Q acting on itself: commutators vanish
        let f = q();
        let mut mul = vec![vec![Vector::zero(2); 2]; 2];
        mul[0][0] = Vector::unit(2, 0, f);
        mul[1][1] = Vector::unit(2, 1, f);
        let unit = Vector::from_entries(2, [(0, f.one()), (1, f.one())]);
        let a = AlgebraData::new(f, vec!["p".into(), "q".into()], mul, unit);
        assert!(check_algebra(&a).ok());
        let m = a.regular_bimodule();
        let basis: Vec<Vector> = (0..2).map(|i| Vector::unit(2, i, f)).collect();
        let quo = natural_quotient(f, &m, &basis);
        assert_eq!(quo.dim, 2);
    }

    #[test]
    fn bar_space_dimensions() {
        let b = z2_group_algebra();
        let k = SubalgebraData::unit_only(&b);
        // l = 0: B ⊗ B
        assert_eq!(bar_space(&b, &k, 0).space.dim(), 4);
        // dim D̄ = 1, so l = 2 gives 2*1*1*2
        assert_eq!(bar_space(&b, &k, 2).space.dim(), 4);
        // B = K collapses everything with l >= 1
        let kk = SubalgebraData::new(&b, (0..2).map(|i| Vector::unit(2, i, q())).collect());
        assert_eq!(bar_space(&b, &kk, 1).space.dim(), 0);
    }

    #[test]
    fn regular_bimodule_validates() {
        let a = mat2();
        let m = a.regular_bimodule();
        assert!(m.validate(&a, &a).ok());
    }
}
