//! Chain complexes, mixed complexes, totalizations, homology, and the
//! homological perturbation engine.
//!
//! Complexes are built up to a caller-chosen degree bound. BC needs no
//! window (finitely many columns per total degree); BN and BP involve
//! unbounded column products and are only computed under a truncation
//! window, with a stabilization report comparing windows W−1 and W.

use crate::algebra::{AlgebraData, SubalgebraData, ValidationReport};
use crate::exactlin::{
    kernel_image, BlockSpace, FieldSpec, Matrix, Quotient, Shape, Subspace, TensorSpace, Vector,
};

/// A non-negatively graded chain complex, built through a degree bound.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    /// d[n]: C_n → C_{n−1}; d[0] has zero rows.
    pub d: Vec<Matrix>,
}

impl ChainComplex {
    pub fn bound(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn zero(field: FieldSpec, bound: usize) -> Self {
        ChainComplex {
            field,
            dims: vec![0; bound + 1],
            d: (0..=bound).map(|_| Matrix::zero(0, 0)).collect(),
        }
    }

    pub fn verify_square_zero(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        for n in 1..self.bound() {
            if !self.d[n].compose(&self.d[n + 1]).is_zero() {
                report.push(format!("d∘d ≠ 0 into degree {}", n - 1));
            }
        }
        report
    }
}

/// Dimension and echelon-canonical representatives of a homology group.
#[derive(Clone, Debug)]
pub struct HomologyData {
    pub dim: usize,
    pub representatives: Vec<Vector>,
    pub cycles: Subspace,
    pub boundaries: Subspace,
}

/// Homology at degree n; requires d² = 0 there (hard error otherwise) and
/// n + 1 within the built bound.
pub fn homology(c: &ChainComplex, n: usize) -> HomologyData {
    assert!(n + 1 <= c.bound(), "homology at degree {n} needs the complex through {}", n + 1);
    assert!(c.d[n].compose(&c.d[n + 1]).is_zero(), "d² ≠ 0 at degree {n}: not a complex");
    let (cycles, _) = kernel_image(&c.d[n]);
    let (_, boundaries) = kernel_image(&c.d[n + 1]);
    let reduced: Vec<Vector> = cycles.basis().iter().map(|z| boundaries.reduce(z)).collect();
    let canon = Subspace::from_vectors(c.dims[n], reduced);
    HomologyData {
        dim: cycles.dim() - boundaries.dim(),
        representatives: canon.basis().to_vec(),
        cycles,
        boundaries,
    }
}

/// Betti numbers for degrees 0..=max (max ≤ bound − 1).
pub fn betti(c: &ChainComplex, max: usize) -> Vec<usize> {
    (0..=max).map(|n| homology(c, n).dim).collect()
}

/// A mixed complex (X, b, B) built through a degree bound: b has degree −1,
/// B degree +1, with b² = B² = bB + Bb = 0.
#[derive(Clone, Debug)]
pub struct MixedComplex {
    pub field: FieldSpec,
    pub dims: Vec<usize>,
    /// b[n]: X_n → X_{n−1}.
    pub b: Vec<Matrix>,
    /// bb[n]: X_n → X_{n+1}, available for n < bound.
    pub bb: Vec<Matrix>,
}

impl MixedComplex {
    pub fn bound(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn hochschild(&self) -> ChainComplex {
        ChainComplex { field: self.field, dims: self.dims.clone(), d: self.b.clone() }
    }
}

pub fn verify_mixed(m: &MixedComplex) -> ValidationReport {
    let mut report = ValidationReport::default();
    let bound = m.bound();
    for n in 2..=bound {
        if !m.b[n - 1].compose(&m.b[n]).is_zero() {
            report.push(format!("b∘b ≠ 0 out of degree {n}"));
        }
    }
    for n in 0..bound.saturating_sub(1) {
        if !m.bb[n + 1].compose(&m.bb[n]).is_zero() {
            report.push(format!("B∘B ≠ 0 out of degree {n}"));
        }
    }
    for n in 0..bound {
        let mut anti = m.b[n + 1].compose(&m.bb[n]);
        if n >= 1 {
            anti = anti.add(&m.bb[n - 1].compose(&m.b[n]));
        }
        if !anti.is_zero() {
            report.push(format!("B∘b + b∘B ≠ 0 at degree {n}"));
        }
    }
    report
}

/// Which double complex to totalize.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum TotalVariant {
    /// Columns u^j, j ≥ 0 (cyclic homology). Exact, no window.
    BC,
    /// Columns u^j, j ≤ 0 (negative). Truncated to j ≥ −W.
    BN,
    /// All columns (periodic). Truncated to |j| ≤ W.
    BP,
}

/// A totalized double complex. Logical total degree n lives at index
/// n + offset of the underlying chain complex; BN/BP are ℤ-graded, so they
/// carry one extra slot below zero to make kernels at degree 0 honest.
#[derive(Clone, Debug)]
pub struct TotalComplex {
    pub complex: ChainComplex,
    pub columns: Vec<BlockSpace<i64>>,
    pub variant: TotalVariant,
    pub window: Option<usize>,
    pub offset: usize,
}

impl TotalComplex {
    /// Betti numbers at logical degrees 0..=max.
    pub fn betti(&self, max: usize) -> Vec<usize> {
        (0..=max).map(|n| homology(&self.complex, n + self.offset).dim).collect()
    }

    pub fn block_at(&self, n: usize) -> &BlockSpace<i64> {
        &self.columns[n + self.offset]
    }
}

/// Totalizes through total degree `n_max`. BN/BP require a window W ≥ 1 and
/// a mixed complex built through `n_max + 2W`. B-components that would leave
/// the window are dropped; the result is still a complex (verified).
pub fn totalize(
    m: &MixedComplex,
    variant: TotalVariant,
    n_max: usize,
    window: Option<usize>,
) -> Result<TotalComplex, String> {
    if matches!(variant, TotalVariant::BN | TotalVariant::BP) {
        let w = window.ok_or("BN/BP require a truncation window W ≥ 1")?;
        if w == 0 {
            return Err("window must be at least 1".into());
        }
        if m.bound() < n_max + 2 * w {
            return Err(format!(
                "window {w} at degree {n_max} needs the mixed complex through degree {}",
                n_max + 2 * w
            ));
        }
    }
    let cols_for = |n: i64| -> Vec<i64> {
        let js: Vec<i64> = match variant {
            TotalVariant::BC => (0..=(n / 2).max(0)).collect(),
            TotalVariant::BN => {
                let w = window.unwrap() as i64;
                (-w..=0).collect()
            }
            TotalVariant::BP => {
                let w = window.unwrap() as i64;
                (-w..=w).collect()
            }
        };
        js.into_iter().filter(|j| n - 2 * j >= 0 && n - 2 * j <= m.bound() as i64).collect()
    };
    // BN/BP are Z-graded: carry one degree below zero so kernels at logical
    // degree 0 see the descending differential.
    let offset: usize = match variant {
        TotalVariant::BC => 0,
        _ => 1,
    };
    let lo = -(offset as i64);
    let mut columns = Vec::new();
    for n in lo..=n_max as i64 {
        let parts = cols_for(n)
            .into_iter()
            .map(|j| (j, m.dims[(n - 2 * j) as usize]))
            .collect::<Vec<_>>();
        columns.push(BlockSpace::new(parts));
    }
    let mut d = vec![Matrix::zero(0, columns[0].total)];
    for idx in 1..columns.len() {
        let n = lo + idx as i64;
        let src = &columns[idx];
        let tgt = &columns[idx - 1];
        let mut blocks = Vec::new();
        for j in &src.keys {
            let deg = (n - 2 * j) as usize;
            if tgt.index_of(j).is_some() && deg >= 1 {
                blocks.push((*j, *j, m.b[deg].clone()));
            }
            if tgt.index_of(&(j - 1)).is_some() && deg < m.bound() {
                blocks.push((*j, j - 1, m.bb[deg].clone()));
            }
        }
        d.push(BlockSpace::assemble(tgt, src, &blocks));
    }
    let complex =
        ChainComplex { field: m.field, dims: columns.iter().map(|c| c.total).collect(), d };
    let rep = complex.verify_square_zero();
    assert!(rep.ok(), "totalization differential does not square to zero: {:?}", rep.violations);
    Ok(TotalComplex { complex, columns, variant, window, offset })
}

/// Cyclic homology dimensions HC_0..HC_max of a mixed complex.
pub fn hc_betti(m: &MixedComplex, max: usize) -> Vec<usize> {
    let tot = totalize(m, TotalVariant::BC, max + 1, None).expect("BC needs no window");
    betti(&tot.complex, max)
}

pub fn hh_betti(m: &MixedComplex, max: usize) -> Vec<usize> {
    betti(&m.hochschild(), max)
}

/// Truncation-honesty record for HN/HP: dimensions at windows W−1 and W.
#[derive(Clone, Debug, serde::Serialize)]
pub struct StabilizationReport {
    pub window: usize,
    pub dims_at_window_minus_one: Vec<usize>,
    pub dims_at_window: Vec<usize>,
    pub stable: bool,
}

/// Windowed HN/HP Betti numbers with the mandatory stabilization comparison.
pub fn windowed_betti(
    m: &MixedComplex,
    variant: TotalVariant,
    max: usize,
    window: usize,
) -> Result<(Vec<usize>, StabilizationReport), String> {
    if window < 1 {
        return Err("window must be at least 1".into());
    }
    let dims_w = totalize(m, variant, max + 1, Some(window))?.betti(max);
    let dims_prev = if window == 1 {
        Vec::new()
    } else {
        totalize(m, variant, max + 1, Some(window - 1))?.betti(max)
    };
    let stable = !dims_prev.is_empty() && dims_prev == dims_w;
    Ok((
        dims_w.clone(),
        StabilizationReport {
            window,
            dims_at_window_minus_one: dims_prev,
            dims_at_window: dims_w,
            stable,
        },
    ))
}

/// Special-deformation-retract data between (Y, ∂) and (X, d).
#[derive(Clone, Debug)]
pub struct SdrData {
    pub y: ChainComplex,
    pub x: ChainComplex,
    /// i[n]: Y_n → X_n.
    pub incl: Vec<Matrix>,
    /// p[n]: X_n → Y_n.
    pub proj: Vec<Matrix>,
    /// h[n]: X_n → X_{n+1}, available for n < bound.
    pub h: Vec<Matrix>,
}

pub fn verify_sdr(s: &SdrData) -> ValidationReport {
    let mut report = ValidationReport::default();
    let bound = s.x.bound();
    for n in 0..=bound {
        if s.proj[n].compose(&s.incl[n]) != Matrix::identity(s.y.dims[n], s.y.field) {
            report.push(format!("p∘i ≠ id at degree {n}"));
        }
    }
    for n in 1..=bound {
        if s.proj[n - 1].compose(&s.x.d[n]) != s.y.d[n].compose(&s.proj[n]) {
            report.push(format!("p is not a chain map at degree {n}"));
        }
        if s.x.d[n].compose(&s.incl[n]) != s.incl[n - 1].compose(&s.y.d[n]) {
            report.push(format!("i is not a chain map at degree {n}"));
        }
    }
    // homotopy from i∘p to the identity: d∘h + h∘d = i∘p − id (the
    // convention under which the perturbation formulas are stated)
    for n in 0..bound {
        let mut lhs = s.x.d[n + 1].compose(&s.h[n]);
        if n >= 1 {
            lhs = lhs.add(&s.h[n - 1].compose(&s.x.d[n]));
        }
        let rhs =
            s.incl[n].compose(&s.proj[n]).sub(&Matrix::identity(s.x.dims[n], s.x.field));
        if lhs != rhs {
            report.push(format!("d∘h + h∘d ≠ i∘p − id at degree {n}"));
        }
    }
    // special identities
    for n in 0..bound {
        if !s.h[n].compose(&s.incl[n]).is_zero() {
            report.push(format!("h∘i ≠ 0 at degree {n}"));
        }
        if !s.proj[n + 1].compose(&s.h[n]).is_zero() {
            report.push(format!("p∘h ≠ 0 at degree {n}"));
        }
    }
    for n in 0..bound.saturating_sub(1) {
        if !s.h[n + 1].compose(&s.h[n]).is_zero() {
            report.push(format!("h∘h ≠ 0 at degree {n}"));
        }
    }
    report
}

/// The perturbation lemma. Transfers the perturbation δ of (X, d) across the
/// retract via A = (id − δ∘h)⁻¹∘δ = Σ (δ∘h)ⁿ∘δ, the series being finite by
/// nilpotency of δ∘h in each degree (checked up to `cap`, which only guards
/// misuse: in all uses here δ∘h strictly raises the column index).
///
/// Returns the perturbed data ∂¹ = ∂ + p∘A∘i, i¹ = i + h∘A∘i,
/// p¹ = p + p∘A∘h, h¹ = h + h∘A∘h.
pub fn perturb(s: &SdrData, delta: &[Matrix], cap: usize) -> Result<SdrData, String> {
    let bound = s.x.bound();
    assert_eq!(delta.len(), bound + 1, "need one δ per degree");
    for n in 1..bound {
        let dd = s.x.d[n].add(&delta[n]);
        let dd1 = s.x.d[n + 1].add(&delta[n + 1]);
        if !dd.compose(&dd1).is_zero() {
            return Err(format!("(d + δ)² ≠ 0 out of degree {}", n + 1));
        }
    }
    // A_n = Σ_k (δ∘h)^k ∘ δ at degree n, where δ∘h maps degree n−1 to n−1…
    // concretely A_n = δ_n + δ_n h_{n−1} δ_n + δ_n h_{n−1} δ_n h_{n−1} δ_n + …
    let mut a_maps: Vec<Matrix> = Vec::with_capacity(bound + 1);
    for n in 0..=bound {
        let mut acc = delta[n].clone();
        if n >= 1 {
            let mut term = delta[n].clone();
            let mut steps = 0;
            loop {
                term = delta[n].compose(&s.h[n - 1]).compose(&term);
                if term.is_zero() {
                    break;
                }
                acc = acc.add(&term);
                steps += 1;
                if steps > cap {
                    return Err(format!(
                        "δ∘h is not nilpotent within {cap} iterations at degree {n}"
                    ));
                }
            }
        }
        a_maps.push(acc);
    }
    let x = ChainComplex {
        field: s.x.field,
        dims: s.x.dims.clone(),
        d: s.x.d.iter().zip(delta).map(|(d, del)| d.add(del)).collect(),
    };
    let mut y_d = vec![Matrix::zero(0, s.y.dims[0])];
    for n in 1..=bound {
        y_d.push(s.y.d[n].add(&s.proj[n - 1].compose(&a_maps[n]).compose(&s.incl[n])));
    }
    let y = ChainComplex { field: s.y.field, dims: s.y.dims.clone(), d: y_d };
    let incl = (0..=bound)
        .map(|n| {
            if n >= 1 {
                s.incl[n].add(&s.h[n - 1].compose(&a_maps[n]).compose(&s.incl[n]))
            } else {
                s.incl[n].clone()
            }
        })
        .collect();
    let proj = (0..=bound)
        .map(|n| {
            if n < bound {
                s.proj[n].add(&s.proj[n].compose(&a_maps[n + 1]).compose(&s.h[n]))
            } else {
                s.proj[n].clone()
            }
        })
        .collect();
    let h = (0..bound)
        .map(|n| s.h[n].add(&s.h[n].compose(&a_maps[n + 1]).compose(&s.h[n])))
        .collect();
    Ok(SdrData { y, x, incl, proj, h })
}

/// The normalized mixed complex of the K-algebra C: spaces (C ⊗ C̄^{⊗n})♮
/// with the Hochschild boundary b and the cyclic operator
/// B([c_0 ⊗ ⋯ ⊗ c_n]) = Σ (−1)^{in} [1 ⊗ c_i ⊗ ⋯ ⊗ c_n ⊗ c_0 ⊗ ⋯ ⊗ c_{i−1}].
pub struct CanonicalComplex {
    pub spaces: Vec<TensorSpace>,
    pub mixed: MixedComplex,
    /// C̄ = C/K with its section back into C.
    pub cbar: Quotient,
}

/// The space (C ⊗ C̄^{⊗n})♮ for the K-algebra C: ⊗_K junction relations
/// between consecutive slots plus the commutator relation wrapping the last
/// slot around to the front.
pub fn cyclic_space(c: &AlgebraData, k: &SubalgebraData, cbar: &Quotient, n: usize) -> TensorSpace {
    let field = c.field;
    let mut dims = vec![c.dim];
    dims.extend(std::iter::repeat(cbar.dim).take(n));
    let shape = Shape::new(dims.clone());
    let mut relations = Vec::new();
    let k_basis = k.basis.basis();
    let unit_of = |slot: usize, i: usize| Vector::unit(dims[slot], i, field);
    let slot_left = |lam: &Vector, j: usize| {
        cbar.project(&c.mul_vec(lam, &cbar.section(&Vector::unit(cbar.dim, j, field))))
    };
    let slot_right = |j: usize, lam: &Vector| {
        cbar.project(&c.mul_vec(&cbar.section(&Vector::unit(cbar.dim, j, field)), lam))
    };
    for code in 0..shape.total {
        let idx = shape.decode(code);
        for lam in k_basis {
            for jn in 0..=n {
                // junction jn: between slot jn and slot jn+1 (mod n+1; the
                // last junction is the ♮ wrap-around to slot 0)
                let mut lhs: Vec<Vector> = (0..=n).map(|s| unit_of(s, idx[s])).collect();
                let mut rhs = lhs.clone();
                if jn < n {
                    lhs[jn] = if jn == 0 {
                        c.mul_vec(&lhs[0], lam)
                    } else {
                        slot_right(idx[jn], lam)
                    };
                    rhs[jn + 1] = slot_left(lam, idx[jn + 1]);
                } else {
                    lhs[n] = if n == 0 {
                        c.mul_vec(&lhs[0], lam)
                    } else {
                        slot_right(idx[n], lam)
                    };
                    rhs[0] = c.mul_vec(lam, &rhs[0]);
                }
                let rel = shape
                    .tensor(&lhs.iter().collect::<Vec<_>>())
                    .sub(&shape.tensor(&rhs.iter().collect::<Vec<_>>()));
                if !rel.is_zero() {
                    relations.push(rel);
                }
            }
        }
    }
    TensorSpace::new(field, dims, relations)
}

pub fn canonical_mixed(c: &AlgebraData, k: &SubalgebraData, bound: usize) -> CanonicalComplex {
    let field = c.field;
    let cbar = Quotient::new(c.dim, k.basis.clone(), field);
    let spaces: Vec<TensorSpace> = (0..=bound).map(|n| cyclic_space(c, k, &cbar, n)).collect();
    let sect = |j: usize| cbar.section(&Vector::unit(cbar.dim, j, field));
    let sign = |j: usize| if j % 2 == 0 { field.one() } else { field.one().neg() };
    let mut b = vec![Matrix::zero(0, spaces[0].dim())];
    for n in 1..=bound {
        let target = spaces[n - 1].clone();
        let m = spaces[n]
            .induce_map(target.dim(), true, &mut |idx: &[usize]| {
                let mut out = Vector::zero(target.dim());
                // j = 0: x_0 · x_1 stays in the C slot
                {
                    let head = c.mul_vec(&Vector::unit(c.dim, idx[0], field), &sect(idx[1]));
                    let mut factors = vec![head];
                    factors.extend(idx[2..].iter().map(|&i| Vector::unit(cbar.dim, i, field)));
                    out.axpy(&sign(0), &target.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
                }
                // 1 ≤ j ≤ n−1: x_j x_{j+1} projected back into C̄
                for j in 1..n {
                    let prod = cbar.project(&c.mul_vec(&sect(idx[j]), &sect(idx[j + 1])));
                    let mut factors = vec![Vector::unit(c.dim, idx[0], field)];
                    for (slot, &i) in idx.iter().enumerate().skip(1) {
                        if slot == j {
                            factors.push(prod.clone());
                        } else if slot != j + 1 {
                            factors.push(Vector::unit(cbar.dim, i, field));
                        }
                    }
                    out.axpy(&sign(j), &target.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
                }
                // j = n: x_n · x_0 wraps to the front
                {
                    let head = c.mul_vec(&sect(idx[n]), &Vector::unit(c.dim, idx[0], field));
                    let mut factors = vec![head];
                    factors.extend(idx[1..n].iter().map(|&i| Vector::unit(cbar.dim, i, field)));
                    out.axpy(&sign(n), &target.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
                }
                out
            })
            .expect("Hochschild boundary must descend to the normalized ♮ complex");
        b.push(m);
    }
    let mut bb = Vec::new();
    for n in 0..bound {
        let target = spaces[n + 1].clone();
        let m = spaces[n]
            .induce_map(target.dim(), true, &mut |idx: &[usize]| {
                let mut out = Vector::zero(target.dim());
                for i in 0..=n {
                    let mut factors: Vec<Vector> = vec![c.unit.clone()];
                    for off in 0..=n {
                        let slot = (i + off) % (n + 1);
                        factors.push(if slot == 0 {
                            cbar.project(&Vector::unit(c.dim, idx[0], field))
                        } else {
                            Vector::unit(cbar.dim, idx[slot], field)
                        });
                    }
                    let sgn = if (i * n) % 2 == 0 { field.one() } else { field.one().neg() };
                    out.axpy(&sgn, &target.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
                }
                out
            })
            .expect("Connes operator must descend to the normalized ♮ complex");
        bb.push(m);
    }
    let mixed = MixedComplex { field, dims: spaces.iter().map(|s| s.dim()).collect(), b, bb };
    CanonicalComplex { spaces, mixed, cbar }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::FieldSpec;

    fn q() -> FieldSpec {
        FieldSpec::Q
    }

    fn z2_algebra() -> AlgebraData {
        AlgebraData::group_algebra(q(), vec!["1".into(), "g".into()], &[vec![0, 1], vec![1, 0]])
    }

    fn z2_canonical(bound: usize) -> CanonicalComplex {
        let c = z2_algebra();
        let k = SubalgebraData::unit_only(&c);
        canonical_mixed(&c, &k, bound)
    }

    #[test]
    fn canonical_z2_passes_mixed_identities() {
        let cc = z2_canonical(5);
        assert!(verify_mixed(&cc.mixed).ok());
    }

    #[test]
    fn b_zero_formula_at_degree_zero() {
        // B([c_0]) = [1 ⊗ c_0]
        let cc = z2_canonical(2);
        let g_class = cc.spaces[0].class_of(&[1]);
        let img = cc.mixed.bb[0].apply(&g_class);
        let gbar = cc.cbar.project(&Vector::unit(2, 1, q()));
        let expect = cc.spaces[1].class_of_tensor(&[&z2_algebra().unit, &gbar]);
        assert_eq!(img, expect);
    }

    /// Upper-triangular 2×2 matrices: a noncommutative algebra whose
    /// canonical complex has nonzero differentials in every low degree.
    fn upper_triangular() -> AlgebraData {
        let f = q();
        let dim = 3; // u = e11, v = e12, w = e22
        let (u, v, w) = (0usize, 1usize, 2usize);
        let mut mul = vec![vec![Vector::zero(dim); dim]; dim];
        mul[u][u] = Vector::unit(dim, u, f);
        mul[u][v] = Vector::unit(dim, v, f);
        mul[v][w] = Vector::unit(dim, v, f);
        mul[w][w] = Vector::unit(dim, w, f);
        let unit = Vector::from_entries(dim, [(u, f.one()), (w, f.one())]);
        AlgebraData::new(f, vec!["e11".into(), "e12".into(), "e22".into()], mul, unit)
    }

    #[test]
    fn mutated_b_fails_verification() {
        let c = upper_triangular();
        let k = SubalgebraData::unit_only(&c);
        let mut cc = canonical_mixed(&c, &k, 4);
        assert!(verify_mixed(&cc.mixed).ok());
        // flip the sign of an entry of b_2 whose column feeds a nonzero
        // column of b_1, so b∘b ≠ 0 is reported out of degree 2
        let b1 = cc.mixed.b[1].clone();
        let b2 = cc.mixed.b[2].clone();
        let mut hit = None;
        'outer: for j in 0..b2.cols {
            for (i, coef) in b2.col(j).iter() {
                if !b1.col(i).is_zero() {
                    hit = Some((i, j, coef.clone()));
                    break 'outer;
                }
            }
        }
        let (i, j, coef) = hit.expect("b_2 must feed b_1 somewhere");
        let mut col = cc.mixed.b[2].col(j).clone();
        let two = coef.add(&coef);
        col.add_to(i, two.neg());
        cc.mixed.b[2].set_col(j, col);
        let rep = verify_mixed(&cc.mixed);
        assert!(rep.violations.iter().any(|v| v.contains("b∘b ≠ 0 out of degree 2")));
    }

    #[test]
    fn hochschild_of_z2_group_algebra() {
        let cc = z2_canonical(5);
        assert_eq!(hh_betti(&cc.mixed, 4), vec![2, 0, 0, 0, 0]);
    }

    #[test]
    fn cyclic_of_z2_group_algebra() {
        let cc = z2_canonical(6);
        assert_eq!(hc_betti(&cc.mixed, 4), vec![2, 0, 2, 0, 2]);
    }

    #[test]
    fn collapsed_algebra_has_no_higher_degrees() {
        let c = z2_algebra();
        let k = SubalgebraData::new(&c, (0..2).map(|i| Vector::unit(2, i, q())).collect());
        let cc = canonical_mixed(&c, &k, 3);
        assert_eq!(cc.mixed.dims, vec![2, 0, 0, 0]);
    }

    #[test]
    fn bc_totalization_shape() {
        let cc = z2_canonical(4);
        let tot = totalize(&cc.mixed, TotalVariant::BC, 3, None).unwrap();
        assert_eq!(tot.complex.dims[0], cc.mixed.dims[0]);
        // Tot(BC)_2 = X_2 ⊕ X_0 u
        assert_eq!(tot.complex.dims[2], cc.mixed.dims[2] + cc.mixed.dims[0]);
        assert_eq!(tot.columns[2].keys, vec![0, 1]);
    }

    #[test]
    fn windowed_hp_of_z2_stabilizes() {
        let cc = z2_canonical(4 + 2 * 4 + 1);
        let (hp3, rep3) = windowed_betti(&cc.mixed, TotalVariant::BP, 4, 3).unwrap();
        assert!(rep3.stable, "HP of Q[Z/2] should stabilize by W = 3 at bound 4");
        let (hp4, _) = windowed_betti(&cc.mixed, TotalVariant::BP, 4, 4).unwrap();
        assert_eq!(hp3, hp4);
        assert_eq!(hp3, vec![2, 0, 2, 0, 2]);
    }

    #[test]
    fn hn_requires_window() {
        let cc = z2_canonical(4);
        assert!(totalize(&cc.mixed, TotalVariant::BN, 3, None).is_err());
    }

    #[test]
    fn homology_of_zero_complex() {
        let c = ChainComplex::zero(q(), 3);
        for n in 0..=2 {
            assert_eq!(homology(&c, n).dim, 0);
        }
    }

    fn identity_sdr(c: &ChainComplex) -> SdrData {
        let bound = c.bound();
        SdrData {
            y: c.clone(),
            x: c.clone(),
            incl: (0..=bound).map(|n| Matrix::identity(c.dims[n], c.field)).collect(),
            proj: (0..=bound).map(|n| Matrix::identity(c.dims[n], c.field)).collect(),
            h: (0..bound).map(|n| Matrix::zero(c.dims[n + 1], c.dims[n])).collect(),
        }
    }

    #[test]
    fn perturb_with_zero_delta_is_identity() {
        let cc = z2_canonical(4);
        let tot = totalize(&cc.mixed, TotalVariant::BC, 4, None).unwrap();
        let s = identity_sdr(&tot.complex);
        assert!(verify_sdr(&s).ok());
        let delta: Vec<Matrix> = (0..=4)
            .map(|n| {
                let rows = if n == 0 { 0 } else { tot.complex.dims[n - 1] };
                Matrix::zero(rows, tot.complex.dims[n])
            })
            .collect();
        let out = perturb(&s, &delta, 10).unwrap();
        assert_eq!(out.x.d, s.x.d);
        assert_eq!(out.incl, s.incl);
        assert_eq!(out.proj, s.proj);
        assert_eq!(out.h, s.h);
    }

    #[test]
    fn perturb_with_zero_homotopy_collapses_series() {
        // h = 0: A = δ, ∂¹ = ∂ + p∘δ∘i
        let cc = z2_canonical(4);
        let hoch = cc.mixed.hochschild();
        let s = identity_sdr(&hoch);
        let delta: Vec<Matrix> = hoch.d.iter().map(|m| m.neg()).collect();
        let out = perturb(&s, &delta, 10).unwrap();
        for n in 1..=4 {
            assert!(out.x.d[n].is_zero());
            assert!(out.y.d[n].is_zero());
        }
    }
}
