//! Weak actions, cocycles, and the crossed product E = A#_f H.
//!
//! `build` validates the weak-action axioms and the normality / cocycle /
//! twisted-module conditions on basis tuples, constructs E's multiplication
//! table from
//!
//! > (a⊗h)(b⊗l) = a b^{h⁽¹⁾} f(h⁽²⁾, l⁽¹⁾) ⊗ h⁽³⁾ l⁽²⁾
//!
//! and then re-verifies associativity of E directly on basis triples. The
//! two validations are independent implementations of the same criterion;
//! a disagreement is a hard error surfacing an arithmetic bug.

use crate::algebra::{check_algebra, AlgebraData, SubalgebraData, ValidationReport};
use crate::exactlin::{FieldSpec, Matrix, Scalar, Shape, Subspace, Vector};
use crate::hopf::{check_hopf, convolution_inverse, tensor_coalgebra, HopfData};

/// Weak action table: act[h][a] = a^h ∈ A for basis elements.
#[derive(Clone, Debug)]
pub struct WeakActionData {
    pub table: Vec<Vec<Vector>>,
}

impl WeakActionData {
    /// Trivial action a^h = ε(h)a.
    pub fn trivial(a: &AlgebraData, h: &HopfData) -> Self {
        let table = (0..h.dim())
            .map(|i| {
                let eps = h.counit_vec(&Vector::unit(h.dim(), i, h.field()));
                (0..a.dim).map(|j| Vector::unit(a.dim, j, a.field).scale(&eps)).collect()
            })
            .collect();
        WeakActionData { table }
    }

    /// a^h for a basis action index and an A-vector.
    pub fn act_basis(&self, h: usize, a: &Vector) -> Vector {
        let dim = self.table[h][0].dim;
        let mut out = Vector::zero(dim);
        for (j, c) in a.iter() {
            out.axpy(c, &self.table[h][j]);
        }
        out
    }

    /// Bilinear extension a^h for vectors.
    pub fn act(&self, h: &Vector, a: &Vector) -> Vector {
        let dim = self.table[0][0].dim;
        let mut out = Vector::zero(dim);
        for (i, c) in h.iter() {
            out.axpy(c, &self.act_basis(i, a));
        }
        out
    }
}

/// Cocycle table: f[h][l] = f(h, l) ∈ A for basis elements.
#[derive(Clone, Debug)]
pub struct CocycleData {
    pub table: Vec<Vec<Vector>>,
}

impl CocycleData {
    /// Trivial cocycle f = ε⊗ε·1_A.
    pub fn trivial(a: &AlgebraData, h: &HopfData) -> Self {
        let table = (0..h.dim())
            .map(|i| {
                let ei = h.counit_vec(&Vector::unit(h.dim(), i, h.field()));
                (0..h.dim())
                    .map(|j| {
                        let ej = h.counit_vec(&Vector::unit(h.dim(), j, h.field()));
                        a.unit.scale(&ei.mul(&ej))
                    })
                    .collect()
            })
            .collect();
        CocycleData { table }
    }

    pub fn eval(&self, h: &Vector, l: &Vector) -> Vector {
        let dim = self.table[0][0].dim;
        let mut out = Vector::zero(dim);
        for (i, ci) in h.iter() {
            for (j, cj) in l.iter() {
                out.axpy(&ci.mul(cj), &self.table[i][j]);
            }
        }
        out
    }

    /// As a matrix H⊗H → A.
    pub fn as_matrix(&self, a_dim: usize, h_dim: usize) -> Matrix {
        let shape = Shape::new(vec![h_dim, h_dim]);
        let mut m = Matrix::zero(a_dim, shape.total);
        for i in 0..h_dim {
            for j in 0..h_dim {
                m.set_col(shape.encode(&[i, j]), self.table[i][j].clone());
            }
        }
        m
    }
}

/// A validated crossed product with its derived data.
#[derive(Clone, Debug)]
pub struct CrossedData {
    pub field: FieldSpec,
    pub a: AlgebraData,
    pub h: HopfData,
    pub action: WeakActionData,
    pub cocycle: CocycleData,
    pub k: SubalgebraData,
    /// E = A#_f H with basis (a_i, h_j) at index i·dim H + j.
    pub e: AlgebraData,
    /// f⁻¹: H⊗H → A when f is convolution invertible.
    pub f_inverse: Option<Matrix>,
    /// γ⁻¹: H → E by the closed formula, cross-checked against the solver.
    pub gamma_inverse_matrix: Option<Matrix>,
    /// Every f(h, l) lies in K (capability required by the second spectral
    /// sequence).
    pub f_in_k: bool,
    /// 𝓗: the image of H under γ inside E.
    pub h_image: Subspace,
}

impl CrossedData {
    pub fn e_dim(&self) -> usize {
        self.a.dim * self.h.dim()
    }

    pub fn e_index(&self, a: usize, h: usize) -> usize {
        a * self.h.dim() + h
    }

    pub fn e_split(&self, idx: usize) -> (usize, usize) {
        (idx / self.h.dim(), idx % self.h.dim())
    }

    /// a ⊗ h for sparse factors.
    pub fn e_tensor(&self, a: &Vector, h: &Vector) -> Vector {
        let mut out = Vector::zero(self.e_dim());
        for (i, ca) in a.iter() {
            for (j, ch) in h.iter() {
                out.add_to(self.e_index(i, j), ca.mul(ch));
            }
        }
        out
    }

    pub fn embed_a(&self, a: &Vector) -> Vector {
        self.e_tensor(a, self.h.unit())
    }

    /// γ(h) = 1#h.
    pub fn gamma(&self, h: &Vector) -> Vector {
        self.e_tensor(&self.a.unit, h)
    }

    pub fn gamma_inv(&self, h: &Vector) -> Vector {
        self.gamma_inverse_matrix
            .as_ref()
            .expect("cocycle is not convolution invertible")
            .apply(h)
    }

    pub fn multiply(&self, x: &Vector, y: &Vector) -> Vector {
        self.e.mul_vec(x, y)
    }

    /// Diagonal Sweedler action on a tuple: a_{1r} ↦ a_1^{h⁽¹⁾} ⊗ … ⊗ a_r^{h⁽ʳ⁾},
    /// returned as a sum of tuples of A-vectors. An empty tuple carries the
    /// coefficient ε(h).
    pub fn act_tuple(&self, tuple: &[Vector], h: &Vector) -> Vec<(Scalar, Vec<Vector>)> {
        if tuple.is_empty() {
            return vec![(self.h.counit_vec(h), Vec::new())];
        }
        let mut out = Vec::new();
        for (legs, c) in self.h.sweedler_vec(h, tuple.len()) {
            let acted: Vec<Vector> = tuple
                .iter()
                .zip(&legs)
                .map(|(a, leg)| self.action.act_basis(*leg, a))
                .collect();
            out.push((c, acted));
        }
        out
    }

    /// Iterated action a^{h_{ij}} = (⋯(a^{h_j})^{h_{j−1}}⋯)^{h_i}: rightmost
    /// element of the tuple acts first.
    pub fn act_iterated(&self, a: &Vector, h_tuple: &[Vector]) -> Vector {
        let mut v = a.clone();
        for h in h_tuple.iter().rev() {
            v = self.action.act(h, &v);
        }
        v
    }
}

fn check_weak_action(a: &AlgebraData, h: &HopfData, act: &WeakActionData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let f = a.field;
    for hi in 0..h.dim() {
        // (2) 1^h = ε(h)1
        let lhs = act.act_basis(hi, &a.unit);
        let eps = h.counit_vec(&Vector::unit(h.dim(), hi, f));
        if lhs != a.unit.scale(&eps) {
            report.push(format!("weak action condition (2) fails at h = {}", h.algebra.labels[hi]));
        }
        // (1) (ab)^h = a^{h⁽¹⁾} b^{h⁽²⁾}
        for ai in 0..a.dim {
            for bi in 0..a.dim {
                let lhs = act.act_basis(hi, a.mul_basis(ai, bi));
                let mut rhs = Vector::zero(a.dim);
                for (legs, c) in h.sweedler(hi, 2) {
                    let xa = act.act_basis(legs[0], &Vector::unit(a.dim, ai, f));
                    let xb = act.act_basis(legs[1], &Vector::unit(a.dim, bi, f));
                    rhs.axpy(&c, &a.mul_vec(&xa, &xb));
                }
                if lhs != rhs {
                    report.push(format!(
                        "weak action condition (1) fails at (h, a, b) = ({}, {}, {})",
                        h.algebra.labels[hi], a.labels[ai], a.labels[bi]
                    ));
                }
            }
        }
    }
    // (3) a^1 = a
    for ai in 0..a.dim {
        let e = Vector::unit(a.dim, ai, f);
        if act.act(h.unit(), &e) != e {
            report.push(format!("weak action condition (3) fails at a = {}", a.labels[ai]));
        }
    }
    report
}

fn check_cocycle_conditions(
    a: &AlgebraData,
    h: &HopfData,
    act: &WeakActionData,
    coc: &CocycleData,
) -> ValidationReport {
    let mut report = ValidationReport::default();
    let f = a.field;
    let unit_h = h.unit();
    // (i) normality
    for hi in 0..h.dim() {
        let e = Vector::unit(h.dim(), hi, f);
        let eps = h.counit_vec(&e);
        let target = a.unit.scale(&eps);
        if coc.eval(&e, unit_h) != target || coc.eval(unit_h, &e) != target {
            report.push(format!("cocycle normality (i) fails at h = {}", h.algebra.labels[hi]));
        }
    }
    // (ii) cocycle condition on basis triples
    for hi in 0..h.dim() {
        for li in 0..h.dim() {
            for mi in 0..h.dim() {
                let mut lhs = Vector::zero(a.dim);
                for (hl, ch) in h.sweedler(hi, 2) {
                    for (ll, cl) in h.sweedler(li, 2) {
                        for (ml, cm) in h.sweedler(mi, 2) {
                            let c = ch.mul(&cl).mul(&cm);
                            let inner = coc.table[ll[0]][ml[0]].clone();
                            let acted = act.act_basis(hl[0], &inner);
                            let lm = h.algebra.mul_basis(ll[1], ml[1]);
                            let second = coc.eval(&Vector::unit(h.dim(), hl[1], f), lm);
                            lhs.axpy(&c, &a.mul_vec(&acted, &second));
                        }
                    }
                }
                let mut rhs = Vector::zero(a.dim);
                for (hl, ch) in h.sweedler(hi, 2) {
                    for (ll, cl) in h.sweedler(li, 2) {
                        let c = ch.mul(&cl);
                        let first = coc.table[hl[0]][ll[0]].clone();
                        let hl2 = h.algebra.mul_basis(hl[1], ll[1]);
                        let second = coc.eval(hl2, &Vector::unit(h.dim(), mi, f));
                        rhs.axpy(&c, &a.mul_vec(&first, &second));
                    }
                }
                if lhs != rhs {
                    report.push(format!(
                        "cocycle condition (ii) fails at (h, l, m) = ({}, {}, {})",
                        h.algebra.labels[hi], h.algebra.labels[li], h.algebra.labels[mi]
                    ));
                }
            }
        }
    }
    // (iii) twisted module condition
    for hi in 0..h.dim() {
        for li in 0..h.dim() {
            for ai in 0..a.dim {
                let av = Vector::unit(a.dim, ai, f);
                let mut lhs = Vector::zero(a.dim);
                for (hl, ch) in h.sweedler(hi, 2) {
                    for (ll, cl) in h.sweedler(li, 2) {
                        let c = ch.mul(&cl);
                        let acted = act.act_basis(hl[0], &act.act_basis(ll[0], &av));
                        let fval = coc.table[hl[1]][ll[1]].clone();
                        lhs.axpy(&c, &a.mul_vec(&acted, &fval));
                    }
                }
                let mut rhs = Vector::zero(a.dim);
                for (hl, ch) in h.sweedler(hi, 2) {
                    for (ll, cl) in h.sweedler(li, 2) {
                        let c = ch.mul(&cl);
                        let fval = coc.table[hl[0]][ll[0]].clone();
                        let prod = h.algebra.mul_basis(hl[1], ll[1]);
                        let acted = act.act(prod, &av);
                        rhs.axpy(&c, &a.mul_vec(&fval, &acted));
                    }
                }
                if lhs != rhs {
                    report.push(format!(
                        "twisted module condition (iii) fails at (h, l, a) = ({}, {}, {})",
                        h.algebra.labels[hi], h.algebra.labels[li], a.labels[ai]
                    ));
                }
            }
        }
    }
    report
}

/// Builds E's multiplication table from the crossed-product formula.
fn build_e_table(
    a: &AlgebraData,
    h: &HopfData,
    act: &WeakActionData,
    coc: &CocycleData,
) -> AlgebraData {
    let f = a.field;
    let dim = a.dim * h.dim();
    let eidx = |ai: usize, hi: usize| ai * h.dim() + hi;
    let mut mul = vec![vec![Vector::zero(dim); dim]; dim];
    for ai in 0..a.dim {
        for hi in 0..h.dim() {
            for bi in 0..a.dim {
                for li in 0..h.dim() {
                    let mut out = Vector::zero(dim);
                    for (hl, ch) in h.sweedler(hi, 3) {
                        for (ll, cl) in h.sweedler(li, 2) {
                            let c = ch.mul(&cl);
                            let acted_b = act.act_basis(hl[0], &Vector::unit(a.dim, bi, f));
                            let fval = coc.table[hl[1]][ll[0]].clone();
                            let apart = a.mul_vec(
                                &a.mul_vec(&Vector::unit(a.dim, ai, f), &acted_b),
                                &fval,
                            );
                            let hpart = h.algebra.mul_basis(hl[2], ll[1]);
                            for (x, ca) in apart.iter() {
                                for (y, chh) in hpart.iter() {
                                    out.add_to(eidx(x, y), c.mul(ca).mul(chh));
                                }
                            }
                        }
                    }
                    mul[eidx(ai, hi)][eidx(bi, li)] = out;
                }
            }
        }
    }
    let labels = (0..a.dim)
        .flat_map(|ai| (0..h.dim()).map(move |hi| (ai, hi)))
        .map(|(ai, hi)| format!("{}#{}", a.labels[ai], h.algebra.labels[hi]))
        .collect();
    let mut unit = Vector::zero(dim);
    for (i, ca) in a.unit.iter() {
        for (j, ch) in h.unit().iter() {
            unit.add_to(eidx(i, j), ca.mul(ch));
        }
    }
    AlgebraData::new(f, labels, mul, unit)
}

/// Validates all inputs and constructs the crossed product.
pub fn build(
    a: AlgebraData,
    h: HopfData,
    action: WeakActionData,
    cocycle: CocycleData,
    k: SubalgebraData,
) -> Result<CrossedData, ValidationReport> {
    let mut report = ValidationReport::default();
    report.merge(check_algebra(&a));
    report.merge(check_hopf(&h));
    if !report.ok() {
        return Err(report);
    }
    let action_rep = check_weak_action(&a, &h, &action);
    let cond_rep = check_cocycle_conditions(&a, &h, &action, &cocycle);
    let conditions_ok = action_rep.ok() && cond_rep.ok();
    report.merge(action_rep);
    report.merge(cond_rep);

    let e = build_e_table(&a, &h, &action, &cocycle);
    // independent route: associativity and unitality of the built table
    let direct_ok = check_algebra(&e).ok();
    assert_eq!(
        conditions_ok, direct_ok,
        "validator disagreement between conditions (i)-(iii) and direct \
         associativity — arithmetic bug"
    );
    if !conditions_ok {
        return Err(report);
    }

    // K: a subalgebra, stable under the weak action
    let mut k_rep = k.validate(&a);
    for hi in 0..h.dim() {
        for kb in k.basis.basis() {
            if !k.basis.member(&action.act_basis(hi, kb)) {
                k_rep.push(format!(
                    "K is not stable under the weak action at h = {}",
                    h.algebra.labels[hi]
                ));
            }
        }
    }
    if !k_rep.ok() {
        return Err(k_rep);
    }

    let field = a.field;
    let f_matrix = cocycle.as_matrix(a.dim, h.dim());
    let hh = tensor_coalgebra(&h.coalgebra, &h.coalgebra);
    let f_inverse = convolution_inverse(&f_matrix, &hh, &a);

    let mut cd = CrossedData {
        field,
        a,
        h,
        action,
        cocycle,
        k,
        e,
        f_inverse,
        gamma_inverse_matrix: None,
        f_in_k: false,
        h_image: Subspace::zero(0),
    };
    cd.h_image = Subspace::from_vectors(
        cd.e_dim(),
        (0..cd.h.dim()).map(|i| cd.gamma(&Vector::unit(cd.h.dim(), i, field))),
    );
    cd.f_in_k = (0..cd.h.dim())
        .all(|i| (0..cd.h.dim()).all(|j| cd.k.basis.member(&cd.cocycle.table[i][j])));
    if let Some(ref finv) = cd.f_inverse {
        // closed formula: γ⁻¹(h) = f⁻¹(S(h⁽²⁾), h⁽³⁾) # S(h⁽¹⁾)
        let hshape = Shape::new(vec![cd.h.dim(), cd.h.dim()]);
        let mut gamma_inv = Matrix::zero(cd.e_dim(), cd.h.dim());
        for i in 0..cd.h.dim() {
            let mut out = Vector::zero(cd.e_dim());
            for (legs, c) in cd.h.sweedler(i, 3) {
                let s2 = cd.h.antipode.col(legs[1]);
                let mut fval = Vector::zero(cd.a.dim);
                for (x, cx) in s2.iter() {
                    fval.axpy(cx, finv.col(hshape.encode(&[x, legs[2]])));
                }
                let s1 = cd.h.antipode.col(legs[0]);
                out.axpy(&c, &cd.e_tensor(&fval, s1));
            }
            gamma_inv.set_col(i, out);
        }
        // cross-check against the generic convolution solver
        let gamma_matrix = Matrix::from_columns(
            cd.e_dim(),
            (0..cd.h.dim()).map(|i| cd.gamma(&Vector::unit(cd.h.dim(), i, field))).collect(),
        );
        let solved = convolution_inverse(&gamma_matrix, &cd.h.coalgebra, &cd.e)
            .expect("γ must be convolution invertible when f is");
        assert_eq!(
            gamma_inv, solved,
            "closed γ⁻¹ formula disagrees with the convolution solver"
        );
        cd.gamma_inverse_matrix = Some(gamma_inv);
    }
    Ok(cd)
}

/// Hopf subalgebra ⟨gens⟩: the smallest subspace containing 1 and the
/// generators that is closed under multiplication, the antipode, and both
/// Sweedler legs of Δ.
pub fn hopf_subalgebra(h: &HopfData, gens: &[Vector]) -> Subspace {
    let f = h.field();
    let n = h.dim();
    let mut current: Vec<Vector> = vec![h.unit().clone()];
    current.extend(gens.iter().cloned());
    let mut span = Subspace::from_vectors(n, current);
    loop {
        let mut new_vecs: Vec<Vector> = Vec::new();
        for x in span.basis() {
            new_vecs.push(h.antipode_vec(x));
            for y in span.basis() {
                new_vecs.push(h.algebra.mul_vec(x, y));
            }
            for (i, c) in x.iter() {
                for (a, b, coef) in &h.coalgebra.comul[i] {
                    let s = c.mul(coef);
                    new_vecs.push(Vector::unit(n, *a, f).scale(&s));
                    new_vecs.push(Vector::unit(n, *b, f).scale(&s));
                }
            }
        }
        let bigger = span.sum(&Subspace::from_vectors(n, new_vecs));
        if bigger.dim() == span.dim() {
            return span;
        }
        span = bigger;
    }
}

/// f⟨h_1,…,h_i⟩: the span of f(u, v) for u, v in the Hopf subalgebra
/// generated by the given elements.
pub fn f_span(cd: &CrossedData, gens: &[Vector]) -> Subspace {
    let sub = hopf_subalgebra(&cd.h, gens);
    let mut vecs = Vec::new();
    for u in sub.basis() {
        for v in sub.basis() {
            vecs.push(cd.cocycle.eval(u, v));
        }
    }
    Subspace::from_vectors(cd.a.dim, vecs)
}

/// Which Hopf elements act in the closure defining f̃⟨…⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ActingScope {
    /// The subalgebra generated by the listed elements.
    Generated,
    /// All of H.
    FullHopf,
}

/// f̃⟨h_1,…,h_i⟩: the minimal K-subbimodule of A including f⟨h_1,…,h_i⟩ and
/// closed under the weak action, computed as a fixed-point closure.
pub fn ftilde_span(cd: &CrossedData, gens: &[Vector], scope: ActingScope) -> Subspace {
    let mut span = f_span(cd, gens);
    let actors: Vec<Vector> = match scope {
        ActingScope::Generated => hopf_subalgebra(&cd.h, gens).basis().to_vec(),
        ActingScope::FullHopf => {
            (0..cd.h.dim()).map(|i| Vector::unit(cd.h.dim(), i, cd.field)).collect()
        }
    };
    loop {
        let mut new_vecs = Vec::new();
        for x in span.basis() {
            for lam in cd.k.basis.basis() {
                new_vecs.push(cd.a.mul_vec(lam, x));
                new_vecs.push(cd.a.mul_vec(x, lam));
            }
            for hv in &actors {
                new_vecs.push(cd.action.act(hv, x));
            }
        }
        let bigger = span.sum(&Subspace::from_vectors(cd.a.dim, new_vecs));
        if bigger.dim() == span.dim() {
            return span;
        }
        span = bigger;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Q
    }

    fn z2_hopf() -> HopfData {
        HopfData::group_algebra(q(), vec!["1".into(), "g".into()], &[vec![0, 1], vec![1, 0]])
    }

    /// A = Q[x]/(x²).
    fn dual_numbers() -> AlgebraData {
        let f = q();
        let mut mul = vec![vec![Vector::zero(2); 2]; 2];
        mul[0][0] = Vector::unit(2, 0, f);
        mul[0][1] = Vector::unit(2, 1, f);
        mul[1][0] = Vector::unit(2, 1, f);
        mul[1][1] = Vector::zero(2);
        AlgebraData::new(f, vec!["1".into(), "x".into()], mul, Vector::unit(2, 0, f))
    }

    /// The sign action of Z/2 on Q[x]/(x²): x^g = -x.
    fn sign_action(a: &AlgebraData, h: &HopfData) -> WeakActionData {
        let f = a.field;
        let mut table = WeakActionData::trivial(a, h).table;
        table[1][0] = Vector::unit(2, 0, f);
        table[1][1] = Vector::unit(2, 1, f).neg();
        WeakActionData { table }
    }

    fn smash() -> CrossedData {
        let a = dual_numbers();
        let h = z2_hopf();
        let action = sign_action(&a, &h);
        let cocycle = CocycleData::trivial(&a, &h);
        let k = SubalgebraData::unit_only(&a);
        build(a, h, action, cocycle, k).expect("smash product is a crossed product")
    }

    #[test]
    fn trivial_collapse_to_a() {
        let a = dual_numbers();
        let h = HopfData::trivial(q());
        let action = WeakActionData::trivial(&a, &h);
        let cocycle = CocycleData::trivial(&a, &h);
        let k = SubalgebraData::unit_only(&a);
        let cd = build(a.clone(), h, action, cocycle, k).unwrap();
        assert_eq!(cd.e_dim(), a.dim);
        for i in 0..a.dim {
            for j in 0..a.dim {
                assert_eq!(cd.e.mul_basis(i, j), a.mul_basis(i, j));
            }
        }
    }

    #[test]
    fn group_algebra_as_crossed_product() {
        let a = AlgebraData::ground(q());
        let h = z2_hopf();
        let action = WeakActionData::trivial(&a, &h);
        let cocycle = CocycleData::trivial(&a, &h);
        let k = SubalgebraData::unit_only(&a);
        let cd = build(a, h, action, cocycle, k).unwrap();
        assert_eq!(cd.e_dim(), 2);
        // E ≅ Q[Z/2]: γ(g)² = 1
        let g = Vector::unit(2, 1, q());
        let gg = cd.multiply(&cd.gamma(&g), &cd.gamma(&g));
        assert_eq!(gg, cd.e.unit);
    }

    #[test]
    fn smash_product_is_associative_dim_4() {
        let cd = smash();
        assert_eq!(cd.e_dim(), 4);
        assert!(check_algebra(&cd.e).ok());
        // (1#g)(x#1) = x^g # g = -(x#g)
        let g = Vector::unit(2, 1, q());
        let x = Vector::unit(2, 1, q());
        let left = cd.multiply(&cd.gamma(&g), &cd.embed_a(&x));
        let expect = cd.e_tensor(&x, &g).neg();
        assert_eq!(left, expect);
    }

    #[test]
    fn unit_and_a_embedding_multiplication() {
        let cd = smash();
        // (1#1)·y = y on every basis vector
        for i in 0..cd.e_dim() {
            let y = Vector::unit(cd.e_dim(), i, q());
            assert_eq!(cd.multiply(&cd.e.unit, &y), y);
        }
        // (a#1)(b#1) = ab#1
        for ai in 0..cd.a.dim {
            for bi in 0..cd.a.dim {
                let av = Vector::unit(cd.a.dim, ai, q());
                let bv = Vector::unit(cd.a.dim, bi, q());
                let lhs = cd.multiply(&cd.embed_a(&av), &cd.embed_a(&bv));
                assert_eq!(lhs, cd.embed_a(&cd.a.mul_vec(&av, &bv)));
            }
        }
    }

    #[test]
    fn gamma_inverse_formula_and_unit() {
        let cd = smash();
        // γ⁻¹(1) = 1#1
        assert_eq!(cd.gamma_inv(cd.h.unit()), cd.e.unit);
        // grouplike g with trivial f: γ⁻¹(g) = 1#g⁻¹ = 1#g
        let g = Vector::unit(2, 1, q());
        assert_eq!(cd.gamma_inv(&g), cd.gamma(&g));
        // convolution identity γ(h⁽¹⁾)γ⁻¹(h⁽²⁾) = ε(h)1
        for i in 0..cd.h.dim() {
            let mut sum = Vector::zero(cd.e_dim());
            for (legs, c) in cd.h.sweedler(i, 2) {
                let x = cd.gamma(&Vector::unit(cd.h.dim(), legs[0], q()));
                let y = cd.gamma_inv(&Vector::unit(cd.h.dim(), legs[1], q()));
                sum.axpy(&c, &cd.multiply(&x, &y));
            }
            let eps = cd.h.counit_vec(&Vector::unit(cd.h.dim(), i, q()));
            assert_eq!(sum, cd.e.unit.scale(&eps));
        }
    }

    #[test]
    fn gamma_multiplicative_up_to_f() {
        // γ(h)γ(l) = f(h⁽¹⁾, l⁽¹⁾) # h⁽²⁾l⁽²⁾ on basis pairs
        let cd = smash();
        for i in 0..cd.h.dim() {
            for j in 0..cd.h.dim() {
                let gi = cd.gamma(&Vector::unit(cd.h.dim(), i, q()));
                let gj = cd.gamma(&Vector::unit(cd.h.dim(), j, q()));
                let lhs = cd.multiply(&gi, &gj);
                let mut rhs = Vector::zero(cd.e_dim());
                for (hl, ch) in cd.h.sweedler(i, 2) {
                    for (ll, cl) in cd.h.sweedler(j, 2) {
                        let fval = cd.cocycle.table[hl[0]][ll[0]].clone();
                        let hpart = cd.h.algebra.mul_basis(hl[1], ll[1]);
                        rhs.axpy(&ch.mul(&cl), &cd.e_tensor(&fval, hpart));
                    }
                }
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn act_tuple_and_iterated() {
        let cd = smash();
        let g = Vector::unit(2, 1, q());
        let x = Vector::unit(2, 1, q());
        // empty tuple: coefficient ε(g) = 1
        let empty = cd.act_tuple(&[], &g);
        assert_eq!(empty.len(), 1);
        assert!(empty[0].0.is_one());
        // grouplike: (x, x)^g = (x^g, x^g)
        let pairs = cd.act_tuple(&[x.clone(), x.clone()], &g);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].1[0], x.neg());
        // a^{(g,g)} = (a^g)^g = a
        assert_eq!(cd.act_iterated(&x, &[g.clone(), g.clone()]), x);
    }

    #[test]
    fn broken_normality_is_reported_by_both_validators() {
        let a = dual_numbers();
        let h = z2_hopf();
        let action = sign_action(&a, &h);
        let mut cocycle = CocycleData::trivial(&a, &h);
        // break normality: f(g, 1) = x instead of ε(g)·1
        cocycle.table[1][0] = Vector::unit(2, 1, q());
        let k = SubalgebraData::unit_only(&a);
        let err = build(a, h, action, cocycle, k).unwrap_err();
        assert!(err.violations.iter().any(|v| v.contains("normality")));
    }

    #[test]
    fn f_in_k_capability_flag() {
        let cd = smash();
        assert!(cd.f_in_k);
        assert!(cd.f_inverse.is_some());
    }

    #[test]
    fn hopf_subalgebra_and_f_spans() {
        let cd = smash();
        let g = Vector::unit(2, 1, q());
        let sub = hopf_subalgebra(&cd.h, &[g.clone()]);
        assert_eq!(sub.dim(), 2);
        let none = hopf_subalgebra(&cd.h, &[]);
        assert_eq!(none.dim(), 1);
        // trivial f: span of f-values is the line through 1
        let fs = f_span(&cd, &[g.clone()]);
        assert_eq!(fs.dim(), 1);
        assert!(fs.member(&cd.a.unit));
        let ft = ftilde_span(&cd, &[g], ActingScope::FullHopf);
        assert_eq!(ft.dim(), 1);
    }
}
