//! Hopf algebras as finite tables: Sweedler expansion, convolution algebra,
//! integrals, and the quotient coalgebra Ȟ = H/[H,H].

use crate::algebra::{check_algebra, AlgebraData, ValidationReport};
use crate::exactlin::{kernel_image, solve, FieldSpec, Matrix, Quotient, Scalar, Shape, Subspace, Vector};

/// Comultiplication table: for each basis element, Δ as a list of
/// (left index, right index, coefficient).
pub type ComulTable = Vec<Vec<(usize, usize, Scalar)>>;

/// A coalgebra given by structure constants.
#[derive(Clone, Debug)]
pub struct CoalgebraData {
    pub field: FieldSpec,
    pub dim: usize,
    pub comul: ComulTable,
    pub counit: Vector,
}

impl CoalgebraData {
    /// Δ of a vector, as a vector in the tensor square.
    pub fn comul_vec(&self, v: &Vector) -> Vector {
        let shape = Shape::new(vec![self.dim, self.dim]);
        let mut out = Vector::zero(shape.total);
        for (i, c) in v.iter() {
            for (a, b, coef) in &self.comul[i] {
                out.add_to(shape.encode(&[*a, *b]), c.mul(coef));
            }
        }
        out
    }

    pub fn counit_vec(&self, v: &Vector) -> Scalar {
        let mut out = self.field.zero();
        for (i, c) in v.iter() {
            if let Some(e) = self.counit.get(i) {
                out = out.add(&c.mul(e));
            }
        }
        out
    }

    /// Iterated coproduct of a basis element with `n` legs (n ≥ 1), as a sum
    /// of basis-index tuples. Coassociativity makes the association order
    /// irrelevant; we expand the last leg repeatedly.
    pub fn sweedler(&self, i: usize, n: usize) -> Vec<(Vec<usize>, Scalar)> {
        assert!(n >= 1);
        let mut terms = vec![(vec![i], self.field.one())];
        for _ in 1..n {
            let mut next = Vec::new();
            for (tuple, c) in &terms {
                let last = *tuple.last().unwrap();
                for (a, b, coef) in &self.comul[last] {
                    let mut t = tuple[..tuple.len() - 1].to_vec();
                    t.push(*a);
                    t.push(*b);
                    next.push((t, c.mul(coef)));
                }
            }
            terms = next;
        }
        terms
    }

    /// Iterated coproduct of a vector.
    pub fn sweedler_vec(&self, v: &Vector, n: usize) -> Vec<(Vec<usize>, Scalar)> {
        let mut out = Vec::new();
        for (i, c) in v.iter() {
            for (tuple, coef) in self.sweedler(i, n) {
                out.push((tuple, c.mul(&coef)));
            }
        }
        out
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let shape3 = Shape::new(vec![self.dim, self.dim, self.dim]);
        for i in 0..self.dim {
            // coassociativity: refine left leg vs right leg
            let mut left = Vector::zero(shape3.total);
            let mut right = Vector::zero(shape3.total);
            for (a, b, c1) in &self.comul[i] {
                for (x, y, c2) in &self.comul[*a] {
                    left.add_to(shape3.encode(&[*x, *y, *b]), c1.mul(c2));
                }
                for (x, y, c2) in &self.comul[*b] {
                    right.add_to(shape3.encode(&[*a, *x, *y]), c1.mul(c2));
                }
            }
            if left != right {
                report.push(format!("comultiplication not coassociative at basis {i}"));
            }
            // counit axioms
            let mut l = Vector::zero(self.dim);
            let mut r = Vector::zero(self.dim);
            for (a, b, c) in &self.comul[i] {
                if let Some(e) = self.counit.get(*a) {
                    l.add_to(*b, c.mul(e));
                }
                if let Some(e) = self.counit.get(*b) {
                    r.add_to(*a, c.mul(e));
                }
            }
            let unit = Vector::unit(self.dim, i, self.field);
            if l != unit || r != unit {
                report.push(format!("counit axiom fails at basis {i}"));
            }
        }
        report
    }
}

/// Tensor-product coalgebra C ⊗ D (used to invert maps on H ⊗ H).
pub fn tensor_coalgebra(c: &CoalgebraData, d: &CoalgebraData) -> CoalgebraData {
    let shape = Shape::new(vec![c.dim, d.dim]);
    let mut comul = Vec::with_capacity(shape.total);
    for code in 0..shape.total {
        let idx = shape.decode(code);
        let mut terms = Vec::new();
        for (a1, a2, ca) in &c.comul[idx[0]] {
            for (b1, b2, cb) in &d.comul[idx[1]] {
                terms.push((
                    shape.encode(&[*a1, *b1]),
                    shape.encode(&[*a2, *b2]),
                    ca.mul(cb),
                ));
            }
        }
        comul.push(terms);
    }
    let mut counit = Vector::zero(shape.total);
    for code in 0..shape.total {
        let idx = shape.decode(code);
        if let (Some(x), Some(y)) = (c.counit.get(idx[0]), d.counit.get(idx[1])) {
            counit.add_to(code, x.mul(y));
        }
    }
    CoalgebraData { field: c.field, dim: shape.total, comul, counit }
}

/// A Hopf algebra: algebra + coalgebra + antipode, all basis-indexed.
#[derive(Clone, Debug)]
pub struct HopfData {
    pub algebra: AlgebraData,
    pub coalgebra: CoalgebraData,
    pub antipode: Matrix,
}

impl HopfData {
    pub fn new(algebra: AlgebraData, comul: ComulTable, counit: Vector, antipode: Matrix) -> Self {
        let coalgebra =
            CoalgebraData { field: algebra.field, dim: algebra.dim, comul, counit };
        HopfData { algebra, coalgebra, antipode }
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field
    }

    /// The ground field as a trivial Hopf algebra.
    pub fn trivial(field: FieldSpec) -> Self {
        let algebra = AlgebraData::ground(field);
        let comul = vec![vec![(0, 0, field.one())]];
        let counit = Vector::unit(1, 0, field);
        HopfData::new(algebra, comul, counit, Matrix::identity(1, field))
    }

    /// Group algebra k[G] with grouplike comultiplication and antipode g ↦ g⁻¹.
    pub fn group_algebra(field: FieldSpec, labels: Vec<String>, table: &[Vec<usize>]) -> Self {
        let n = labels.len();
        let algebra = AlgebraData::group_algebra(field, labels, table);
        let comul = (0..n).map(|i| vec![(i, i, field.one())]).collect();
        let counit = Vector::from_entries(n, (0..n).map(|i| (i, field.one())));
        let mut antipode = Matrix::zero(n, n);
        for i in 0..n {
            let inv = (0..n).find(|&j| table[i][j] == 0).expect("group table has no inverse");
            antipode.set_col(i, Vector::unit(n, inv, field));
        }
        HopfData::new(algebra, comul, counit, antipode)
    }

    pub fn sweedler(&self, i: usize, n: usize) -> Vec<(Vec<usize>, Scalar)> {
        self.coalgebra.sweedler(i, n)
    }

    pub fn sweedler_vec(&self, v: &Vector, n: usize) -> Vec<(Vec<usize>, Scalar)> {
        self.coalgebra.sweedler_vec(v, n)
    }

    pub fn counit_vec(&self, v: &Vector) -> Scalar {
        self.coalgebra.counit_vec(v)
    }

    pub fn antipode_vec(&self, v: &Vector) -> Vector {
        self.antipode.apply(v)
    }

    pub fn unit(&self) -> &Vector {
        &self.algebra.unit
    }
}

/// Full Hopf validation: algebra and coalgebra axioms, Δ and ε are algebra
/// maps, and the antipode axiom m(S⊗id)Δ = ηε = m(id⊗S)Δ, all checked on
/// every basis element (pairs where bilinear).
pub fn check_hopf(h: &HopfData) -> ValidationReport {
    let mut report = check_algebra(&h.algebra);
    report.merge(h.coalgebra.validate());
    let f = h.field();
    let n = h.dim();
    let shape = Shape::new(vec![n, n]);
    // Δ is an algebra map
    let comul_mat = comul_matrix(&h.coalgebra);
    for i in 0..n {
        for j in 0..n {
            let lhs = comul_mat.apply(h.algebra.mul_basis(i, j));
            let di = h.coalgebra.comul_vec(&Vector::unit(n, i, f));
            let dj = h.coalgebra.comul_vec(&Vector::unit(n, j, f));
            let mut rhs = Vector::zero(shape.total);
            for (ci, xi) in di.iter() {
                let [a1, a2] = [shape.decode(ci)[0], shape.decode(ci)[1]];
                for (cj, xj) in dj.iter() {
                    let [b1, b2] = [shape.decode(cj)[0], shape.decode(cj)[1]];
                    let prod1 = h.algebra.mul_basis(a1, b1);
                    let prod2 = h.algebra.mul_basis(a2, b2);
                    let coef = xi.mul(xj);
                    for (p1, c1) in prod1.iter() {
                        for (p2, c2) in prod2.iter() {
                            rhs.add_to(shape.encode(&[p1, p2]), coef.mul(c1).mul(c2));
                        }
                    }
                }
            }
            if lhs != rhs {
                report.push(format!("Δ is not multiplicative at basis pair ({i}, {j})"));
            }
        }
    }
    if h.coalgebra.comul_vec(h.unit()) != {
        let u = h.unit();
        let mut t = Vector::zero(shape.total);
        for (i, a) in u.iter() {
            for (j, b) in u.iter() {
                t.add_to(shape.encode(&[i, j]), a.mul(b));
            }
        }
        t
    } {
        report.push("Δ(1) ≠ 1⊗1".into());
    }
    // ε is an algebra map
    for i in 0..n {
        for j in 0..n {
            let lhs = h.counit_vec(h.algebra.mul_basis(i, j));
            let rhs = h
                .counit_vec(&Vector::unit(n, i, f))
                .mul(&h.counit_vec(&Vector::unit(n, j, f)));
            if lhs != rhs {
                report.push(format!("ε is not multiplicative at basis pair ({i}, {j})"));
            }
        }
    }
    if !h.counit_vec(h.unit()).is_one() {
        report.push("ε(1) ≠ 1".into());
    }
    // antipode axiom
    for i in 0..n {
        let mut left = Vector::zero(n);
        let mut right = Vector::zero(n);
        for (a, b, c) in &h.coalgebra.comul[i] {
            let sa = h.antipode.col(*a);
            let sb = h.antipode.col(*b);
            left.axpy(c, &h.algebra.mul_vec(sa, &Vector::unit(n, *b, f)));
            right.axpy(c, &h.algebra.mul_vec(&Vector::unit(n, *a, f), sb));
        }
        let target = h.unit().scale(&h.counit_vec(&Vector::unit(n, i, f)));
        if left != target {
            report.push(format!("antipode axiom m(S⊗id)Δ fails at basis {i}"));
        }
        if right != target {
            report.push(format!("antipode axiom m(id⊗S)Δ fails at basis {i}"));
        }
    }
    report
}

/// Δ as a matrix H → H⊗H.
pub fn comul_matrix(c: &CoalgebraData) -> Matrix {
    let shape = Shape::new(vec![c.dim, c.dim]);
    let cols = (0..c.dim)
        .map(|i| c.comul_vec(&Vector::unit(c.dim, i, c.field)))
        .collect();
    let _ = &shape;
    Matrix::from_columns(shape.total, cols)
}

/// Convolution inverse of φ: C → A, solving the two linear systems
/// φ(c⁽¹⁾)ψ(c⁽²⁾) = ε(c)1 = ψ(c⁽¹⁾)φ(c⁽²⁾). Returns `None` when no inverse
/// exists.
pub fn convolution_inverse(phi: &Matrix, c: &CoalgebraData, a: &AlgebraData) -> Option<Matrix> {
    assert_eq!(phi.cols, c.dim);
    assert_eq!(phi.rows, a.dim);
    let f = a.field;
    let unknowns = c.dim * a.dim; // ψ(e_j) coefficient of basis b at j*dimA + b
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs_entries: Vec<(usize, Scalar)> = Vec::new();
    let mut row_idx = 0;
    for system in 0..2 {
        for t in 0..c.dim {
            // Σ Δ-terms ... = ε(t)·1_A, one equation per A-coordinate
            let mut eq = vec![Vector::zero(unknowns); a.dim];
            for (i, j, coef) in &c.comul[t] {
                for b in 0..a.dim {
                    let prod = if system == 0 {
                        // φ(e_i) · e_b, unknown slot (j, b)
                        a.mul_vec(phi.col(*i), &Vector::unit(a.dim, b, f))
                    } else {
                        // e_b · φ(e_j), unknown slot (i, b)
                        a.mul_vec(&Vector::unit(a.dim, b, f), phi.col(*j))
                    };
                    let slot = if system == 0 { j * a.dim + b } else { i * a.dim + b };
                    for (out, pc) in prod.iter() {
                        eq[out].add_to(slot, coef.mul(pc));
                    }
                }
            }
            let eps = c.counit_vec(&Vector::unit(c.dim, t, f));
            let target = a.unit.scale(&eps);
            for (out, eq_row) in eq.into_iter().enumerate() {
                if let Some(v) = target.get(out) {
                    rhs_entries.push((row_idx, v.clone()));
                }
                rows.push(eq_row);
                row_idx += 1;
            }
        }
    }
    let m = Matrix::from_rows(unknowns, rows);
    let b = Vector::from_entries(row_idx, rhs_entries);
    let x = solve(&m, &b)?;
    let mut psi = Matrix::zero(a.dim, c.dim);
    for j in 0..c.dim {
        let mut col = Vector::zero(a.dim);
        for bb in 0..a.dim {
            if let Some(v) = x.get(j * a.dim + bb) {
                col.add_to(bb, v.clone());
            }
        }
        psi.set_col(j, col);
    }
    Some(psi)
}

/// A left integral with ε(t) = 1, plus whether it is two-sided.
#[derive(Clone, Debug)]
pub struct IntegralElement {
    pub vector: Vector,
    pub two_sided: bool,
}

/// Solves the linear system {x·t = ε(x)t for all basis x, ε(t) = 1}.
/// Absence signals non-separability at the level this test detects.
pub fn find_integral(h: &HopfData) -> Option<IntegralElement> {
    let f = h.field();
    let n = h.dim();
    let mut rows: Vec<Vector> = Vec::new();
    let mut rhs: Vec<(usize, Scalar)> = Vec::new();
    let mut ridx = 0;
    for x in 0..n {
        let eps = h.counit_vec(&Vector::unit(n, x, f));
        // L_x - ε(x)·id applied to the unknown t
        for out in 0..n {
            let mut eq = Vector::zero(n);
            for tcol in 0..n {
                let prod = h.algebra.mul_basis(x, tcol);
                if let Some(c) = prod.get(out) {
                    eq.add_to(tcol, c.clone());
                }
                if tcol == out {
                    eq.add_to(tcol, eps.neg());
                }
            }
            rows.push(eq);
            ridx += 1;
        }
    }
    rows.push(h.coalgebra.counit.clone());
    rhs.push((ridx, f.one()));
    ridx += 1;
    let m = Matrix::from_rows(n, rows);
    let b = Vector::from_entries(ridx, rhs);
    let t = solve(&m, &b)?;
    let two_sided = (0..n).all(|x| {
        let eps = h.counit_vec(&Vector::unit(n, x, f));
        let tx = h.algebra.mul_vec(&t, &Vector::unit(n, x, f));
        tx == t.scale(&eps)
    });
    Some(IntegralElement { vector: t, two_sided })
}

/// The quotient coalgebra Ȟ = H/[H,H], with the projection H → Ȟ.
///
/// [H,H] is a coideal; the coideal property (Δ[H,H] ⊆ [H,H]⊗H + H⊗[H,H] and
/// ε[H,H] = 0) is verified by membership, and a failure is a hard error —
/// it would indicate an arithmetic bug, not a legal outcome.
pub struct CheckData {
    pub coalgebra: CoalgebraData,
    pub projection: Matrix,
    pub quotient: Quotient,
}

pub fn hcheck(h: &HopfData) -> CheckData {
    let f = h.field();
    let n = h.dim();
    let mut comms = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let c = h.algebra.mul_basis(i, j).sub(h.algebra.mul_basis(j, i));
            if !c.is_zero() {
                comms.push(c);
            }
        }
    }
    let span = Subspace::from_vectors(n, comms);
    // coideal property
    let shape = Shape::new(vec![n, n]);
    let mut side_gens: Vec<Vector> = Vec::new();
    for b in span.basis() {
        for j in 0..n {
            side_gens.push(shape.tensor(&[b, &Vector::unit(n, j, f)]));
            side_gens.push(shape.tensor(&[&Vector::unit(n, j, f), b]));
        }
    }
    let side = Subspace::from_vectors(shape.total, side_gens);
    for b in span.basis() {
        assert!(
            side.member(&h.coalgebra.comul_vec(b)),
            "commutator span is not a coideal: arithmetic bug"
        );
        assert!(
            h.counit_vec(b).is_zero(),
            "counit does not vanish on the commutator span: arithmetic bug"
        );
    }
    let quotient = Quotient::new(n, span, f);
    let dim = quotient.dim;
    // induced comultiplication: Δ̌([h]) = (π⊗π)Δ(h) on section representatives
    let qshape = Shape::new(vec![dim, dim]);
    let mut comul = Vec::with_capacity(dim);
    for q in 0..dim {
        let rep = quotient.section(&Vector::unit(dim, q, f));
        let mut terms: Vector = Vector::zero(qshape.total);
        for (i, c) in rep.iter() {
            for (a, b, coef) in &h.coalgebra.comul[i] {
                let pa = quotient.project(&Vector::unit(n, *a, f));
                let pb = quotient.project(&Vector::unit(n, *b, f));
                terms.axpy(&c.mul(coef), &qshape.tensor(&[&pa, &pb]));
            }
        }
        let mut list = Vec::new();
        for (code, c) in terms.iter() {
            let idx = qshape.decode(code);
            list.push((idx[0], idx[1], c.clone()));
        }
        comul.push(list);
    }
    let mut counit = Vector::zero(dim);
    for q in 0..dim {
        let rep = quotient.section(&Vector::unit(dim, q, f));
        let e = h.counit_vec(&rep);
        counit.add_to(q, e);
    }
    let coalgebra = CoalgebraData { field: f, dim, comul, counit };
    let report = coalgebra.validate();
    assert!(report.ok(), "induced quotient coalgebra fails axioms: {:?}", report.violations);
    CheckData { coalgebra, projection: quotient.proj_matrix().clone(), quotient }
}

/// N^C = {n ∈ N | ρ(n) ∈ N ⊗ C}, computed as the kernel of (id ⊗ q_C)∘ρ.
///
/// `rho` is the coaction N → N ⊗ Ȟ as a matrix (rows indexed by pairs
/// (n, ȟ) in the shape [n_dim, ȟ_dim]). `c` must be a subcoalgebra of `hc`
/// (verified) and `rho` a counital coassociative coaction (verified).
pub fn comodule_component(
    n_dim: usize,
    rho: &Matrix,
    hc: &CoalgebraData,
    c: &Subspace,
) -> Result<Subspace, String> {
    let f = hc.field;
    validate_subcoalgebra(hc, c)?;
    validate_coaction(n_dim, rho, hc)?;
    let qc = Quotient::new(hc.dim, c.clone(), f);
    let shape = Shape::new(vec![n_dim, hc.dim]);
    let out_shape = Shape::new(vec![n_dim, qc.dim]);
    let mut m = Matrix::zero(out_shape.total, n_dim);
    for j in 0..n_dim {
        let img = rho.apply(&Vector::unit(n_dim, j, f));
        let mut out = Vector::zero(out_shape.total);
        for (code, coef) in img.iter() {
            let idx = shape.decode(code);
            let q = qc.project(&Vector::unit(hc.dim, idx[1], f));
            for (qi, qc_coef) in q.iter() {
                out.add_to(out_shape.encode(&[idx[0], qi]), coef.mul(qc_coef));
            }
        }
        m.set_col(j, out);
    }
    let (ker, _) = kernel_image(&m);
    Ok(ker)
}

pub fn validate_subcoalgebra(hc: &CoalgebraData, c: &Subspace) -> Result<(), String> {
    let shape = Shape::new(vec![hc.dim, hc.dim]);
    let mut cc_gens = Vec::new();
    for x in c.basis() {
        for y in c.basis() {
            cc_gens.push(shape.tensor(&[x, y]));
        }
    }
    let cc = Subspace::from_vectors(shape.total, cc_gens);
    for x in c.basis() {
        if !cc.member(&hc.comul_vec(x)) {
            return Err("component is not a subcoalgebra: Δ(C) ⊄ C⊗C".into());
        }
    }
    Ok(())
}

pub fn validate_coaction(n_dim: usize, rho: &Matrix, hc: &CoalgebraData) -> Result<(), String> {
    let f = hc.field;
    let shape = Shape::new(vec![n_dim, hc.dim]);
    assert_eq!(rho.rows, shape.total);
    assert_eq!(rho.cols, n_dim);
    // counit: (id ⊗ ε)ρ = id
    for j in 0..n_dim {
        let img = rho.apply(&Vector::unit(n_dim, j, f));
        let mut collapsed = Vector::zero(n_dim);
        for (code, c) in img.iter() {
            let idx = shape.decode(code);
            if let Some(e) = hc.counit.get(idx[1]) {
                collapsed.add_to(idx[0], c.mul(e));
            }
        }
        if collapsed != Vector::unit(n_dim, j, f) {
            return Err(format!("coaction is not counital at basis {j}"));
        }
    }
    // coassociativity: (ρ ⊗ id)ρ = (id ⊗ Δ)ρ
    let shape3 = Shape::new(vec![n_dim, hc.dim, hc.dim]);
    for j in 0..n_dim {
        let img = rho.apply(&Vector::unit(n_dim, j, f));
        let mut lhs = Vector::zero(shape3.total);
        let mut rhs = Vector::zero(shape3.total);
        for (code, c) in img.iter() {
            let idx = shape.decode(code);
            let img2 = rho.apply(&Vector::unit(n_dim, idx[0], f));
            for (code2, c2) in img2.iter() {
                let idx2 = shape.decode(code2);
                lhs.add_to(shape3.encode(&[idx2[0], idx2[1], idx[1]]), c.mul(c2));
            }
            for (a, b, coef) in &hc.comul[idx[1]] {
                rhs.add_to(shape3.encode(&[idx[0], *a, *b]), c.mul(coef));
            }
        }
        if lhs != rhs {
            return Err(format!("coaction is not coassociative at basis {j}"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Q
    }

    pub fn z2() -> HopfData {
        HopfData::group_algebra(q(), vec!["1".into(), "g".into()], &[vec![0, 1], vec![1, 0]])
    }

    /// Sweedler's 4-dimensional Hopf algebra: basis 1, g, x, gx with
    /// g² = 1, x² = 0, xg = -gx, Δg = g⊗g, Δx = x⊗1 + g⊗x, Sg = g, Sx = -gx.
    fn sweedler4() -> HopfData {
        let f = q();
        let dim = 4;
        let (e1, g, x, gx) = (0usize, 1usize, 2usize, 3usize);
        let u = |i: usize| Vector::unit(dim, i, f);
        let mut mul = vec![vec![Vector::zero(dim); dim]; dim];
        let set = |mul: &mut Vec<Vec<Vector>>, i: usize, j: usize, v: Vector| mul[i][j] = v;
        // products in the basis {1, g, x, gx}
        set(&mut mul, e1, e1, u(e1));
        set(&mut mul, e1, g, u(g));
        set(&mut mul, e1, x, u(x));
        set(&mut mul, e1, gx, u(gx));
        set(&mut mul, g, e1, u(g));
        set(&mut mul, g, g, u(e1));
        set(&mut mul, g, x, u(gx));
        set(&mut mul, g, gx, u(x));
        set(&mut mul, x, e1, u(x));
        set(&mut mul, x, g, u(gx).neg());
        set(&mut mul, x, x, Vector::zero(dim));
        set(&mut mul, x, gx, Vector::zero(dim));
        set(&mut mul, gx, e1, u(gx));
        set(&mut mul, gx, g, u(x).neg());
        set(&mut mul, gx, x, Vector::zero(dim));
        set(&mut mul, gx, gx, Vector::zero(dim));
        let algebra = AlgebraData::new(
            f,
            vec!["1".into(), "g".into(), "x".into(), "gx".into()],
            mul,
            u(e1),
        );
        let one = f.one();
        let comul = vec![
            vec![(e1, e1, one.clone())],
            vec![(g, g, one.clone())],
            vec![(x, e1, one.clone()), (g, x, one.clone())],
            // Δ(gx) = Δ(g)Δ(x) = gx⊗g + 1⊗gx
            vec![(gx, g, one.clone()), (e1, gx, one.clone())],
        ];
        let counit = Vector::from_entries(dim, [(e1, one.clone()), (g, one.clone())]);
        let mut antipode = Matrix::zero(dim, dim);
        antipode.set_col(e1, u(e1));
        antipode.set_col(g, u(g));
        antipode.set_col(x, u(gx).neg());
        // S(gx) = S(x)S(g) = -gx·g = x
        antipode.set_col(gx, u(x));
        HopfData::new(algebra, comul, counit, antipode)
    }

    #[test]
    fn trivial_hopf_is_valid() {
        assert!(check_hopf(&HopfData::trivial(q())).ok());
    }

    #[test]
    fn group_algebra_z2_is_valid_hopf() {
        assert!(check_hopf(&z2()).ok());
    }

    #[test]
    fn wrong_antipode_on_z3_detected() {
        // S = id on Z/3 violates m(S⊗id)Δ(g) = g² ≠ ε(g)1
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let mut h = HopfData::group_algebra(
            q(),
            vec!["1".into(), "g".into(), "g2".into()],
            &table,
        );
        h.antipode = Matrix::identity(3, q());
        let rep = check_hopf(&h);
        assert!(rep.violations.iter().any(|v| v.contains("antipode")));
    }

    #[test]
    fn sweedler4_is_valid_hopf() {
        assert!(check_hopf(&sweedler4()).ok());
    }

    #[test]
    fn sweedler_expansion_grouplike_and_primitive() {
        let h = z2();
        // n = 1 returns the element itself
        assert_eq!(h.sweedler(1, 1), vec![(vec![1], q().one())]);
        // grouplike g: Δ²(g) = g⊗g⊗g
        assert_eq!(h.sweedler(1, 3), vec![(vec![1, 1, 1], q().one())]);
        // Sweedler x is (1, g)-primitive: Δx = x⊗1 + g⊗x has two terms
        let s4 = sweedler4();
        assert_eq!(s4.sweedler(2, 2).len(), 2);
    }

    #[test]
    fn sweedler_refinement_is_coassociative() {
        let s4 = sweedler4();
        for i in 0..4 {
            // refine the 2-leg expansion on either slot; both equal sweedler(i, 3)
            let mut via_left: Vec<(Vec<usize>, Scalar)> = Vec::new();
            for (t, c) in s4.sweedler(i, 2) {
                for (a, b, coef) in &s4.coalgebra.comul[t[0]] {
                    via_left.push((vec![*a, *b, t[1]], c.mul(coef)));
                }
            }
            let direct = s4.sweedler(i, 3);
            let shape = Shape::new(vec![4, 4, 4]);
            let sum = |terms: &[(Vec<usize>, Scalar)]| {
                let mut v = Vector::zero(shape.total);
                for (t, c) in terms {
                    v.add_to(shape.encode(t), c.clone());
                }
                v
            };
            assert_eq!(sum(&via_left), sum(&direct));
        }
    }

    #[test]
    fn convolution_unit_is_self_inverse() {
        let h = z2();
        let a = AlgebraData::ground(q());
        // η∘ε: H → k
        let phi = Matrix::from_columns(
            1,
            (0..2).map(|i| {
                Vector::from_entries(1, [(0, h.counit_vec(&Vector::unit(2, i, q())))])
            }).collect(),
        );
        let inv = convolution_inverse(&phi, &h.coalgebra, &a).unwrap();
        assert_eq!(inv, phi);
    }

    #[test]
    fn integral_of_z2_group_algebra() {
        let h = z2();
        let t = find_integral(&h).unwrap();
        // t = (1 + g)/2
        let expect = Vector::from_entries(
            2,
            [(0, q().parse("1/2").unwrap()), (1, q().parse("1/2").unwrap())],
        );
        assert_eq!(t.vector, expect);
        assert!(t.two_sided);
    }

    #[test]
    fn integral_absent_in_characteristic_two() {
        let f = FieldSpec::Fp(2);
        let h = HopfData::group_algebra(f, vec!["1".into(), "g".into()], &[vec![0, 1], vec![1, 0]]);
        assert!(find_integral(&h).is_none());
    }

    #[test]
    fn hcheck_commutative_is_identity() {
        let h = z2();
        let c = hcheck(&h);
        assert_eq!(c.coalgebra.dim, 2);
        assert_eq!(c.projection, Matrix::identity(2, q()));
        let k = HopfData::trivial(q());
        assert_eq!(hcheck(&k).coalgebra.dim, 1);
    }

    #[test]
    fn hcheck_sweedler4_quotient_is_smaller() {
        let c = hcheck(&sweedler4());
        assert_eq!(c.coalgebra.dim, 2);
        assert!(c.coalgebra.validate().ok());
    }

    #[test]
    fn comodule_component_of_regular_coaction() {
        // E = Q[Z/2] coacting on itself over Ȟ = H
        let h = z2();
        let c = hcheck(&h);
        let f = q();
        let shape = Shape::new(vec![2, 2]);
        let mut rho = Matrix::zero(shape.total, 2);
        for j in 0..2 {
            // grouplike: ρ(g) = g ⊗ ḡ
            let pj = c.projection.apply(&Vector::unit(2, j, f));
            let mut v = Vector::zero(shape.total);
            for (i, coef) in pj.iter() {
                v.add_to(shape.encode(&[j, i]), coef.clone());
            }
            rho.set_col(j, v);
        }
        let full = Subspace::full(2, f);
        let all = comodule_component(2, &rho, &c.coalgebra, &full).unwrap();
        assert_eq!(all.dim(), 2);
        let cg = Subspace::from_vectors(2, [Vector::unit(2, 1, f)]);
        let eg = comodule_component(2, &rho, &c.coalgebra, &cg).unwrap();
        assert_eq!(eg.dim(), 1);
        assert!(eg.member(&Vector::unit(2, 1, f)));
        let zero = Subspace::zero(2);
        let e0 = comodule_component(2, &rho, &c.coalgebra, &zero).unwrap();
        assert_eq!(e0.dim(), 0);
    }
}
