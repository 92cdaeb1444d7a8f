//! The small resolution X_{rs} of a crossed product, its recursive
//! differentials and contracting homotopy, the comparison maps against the
//! relative bar resolution, and the induced mixed complex (X̂, d̂, D̂).
//!
//! Spaces are realized through the linear identification
//! X_{rs} ≃ E ⊗ H̄^{⊗s} ⊗ Ā^{⊗r} ⊗ E: the left block E ⊗ H̄^{⊗s} carries a
//! translated right A-action (elements of A migrate leftwards through the
//! H̄ slots by the weak action), and the tensor products over K become
//! explicit junction relations. Every recursive map is a memoized matrix;
//! the recursions are evaluated on the generator domains (… ⊗ 1) and
//! extended by E-bimodule linearity.

mod comparison;
mod congruence;
mod hat;
mod maps;

pub use congruence::{CongruenceReport, PropositionCheck};
pub use hat::Theorem24Data;

use crate::crossed::CrossedData;
use crate::exactlin::{
    BlockSpace, FieldSpec, Matrix, Quotient, Scalar, Shape, Subspace, TensorSpace, Vector,
};
use crate::homcore::{canonical_mixed, CanonicalComplex};
use std::collections::HashMap;
use std::rc::Rc;

/// Builder and cache for everything attached to one crossed product up to a
/// fixed homological bound.
pub struct Resolution {
    pub cd: CrossedData,
    pub bound: usize,
    pub field: FieldSpec,
    /// Ā = A/K.
    pub abar: Quotient,
    /// H̄ = H/k·1.
    pub hbar: Quotient,
    /// Ē = E/K.
    pub ebar: Quotient,
    /// The canonical mixed complex of the K-algebra E through `bound`.
    pub canonical: CanonicalComplex,
    k_is_ground: bool,

    x_spaces: HashMap<(usize, usize), Rc<TensorSpace>>,
    g_spaces: HashMap<(usize, usize), Rc<TensorSpace>>,
    xhat_spaces: HashMap<(usize, usize), Rc<TensorSpace>>,
    bar_spaces: HashMap<usize, Rc<TensorSpace>>,
    bg_spaces: HashMap<usize, Rc<TensorSpace>>,

    ws_push_cache: HashMap<(usize, usize, usize), Rc<Vector>>,

    pub(crate) d_gen: HashMap<(usize, usize, usize), Rc<Matrix>>,
    pub(crate) d_full_cache: HashMap<(usize, usize, usize), Rc<Matrix>>,
    pub(crate) sigma_x_cache: HashMap<(usize, usize, usize), Rc<Matrix>>,
    pub(crate) sigma_y_cache: HashMap<(usize, usize), Rc<Matrix>>,
    pub(crate) sigma_bar_cache: HashMap<usize, Rc<Matrix>>,
    pub(crate) right_act_cache: HashMap<(usize, usize), Rc<Vec<Matrix>>>,
    pub(crate) bar_right_act_cache: HashMap<usize, Rc<Vec<Matrix>>>,

    pub(crate) phi_gen_cache: HashMap<usize, Rc<Matrix>>,
    pub(crate) phi_full_cache: HashMap<usize, Rc<Matrix>>,
    pub(crate) psi_gen_cache: HashMap<usize, Rc<Matrix>>,
    pub(crate) psi_full_cache: HashMap<usize, Rc<Matrix>>,
    pub(crate) omega_gen_cache: HashMap<usize, Rc<Matrix>>,
    pub(crate) omega_full_cache: HashMap<usize, Rc<Matrix>>,

    pub(crate) dhat_cache: HashMap<(usize, usize, usize), Rc<Matrix>>,
    pub(crate) phi_hat_cache: HashMap<usize, Rc<Matrix>>,
    pub(crate) psi_hat_cache: HashMap<usize, Rc<Matrix>>,
    pub(crate) omega_hat_cache: HashMap<usize, Rc<Matrix>>,
    pub(crate) dd_hat_cache: HashMap<usize, Rc<Matrix>>,
}

impl Resolution {
    pub fn new(cd: CrossedData, bound: usize) -> Self {
        let field = cd.field;
        let abar = Quotient::new(cd.a.dim, cd.k.basis.clone(), field);
        let hbar = Quotient::new(
            cd.h.dim(),
            Subspace::from_vectors(cd.h.dim(), [cd.h.unit().clone()]),
            field,
        );
        let ebar = Quotient::new(
            cd.e_dim(),
            Subspace::from_vectors(
                cd.e_dim(),
                cd.k.basis.basis().iter().map(|v| cd.embed_a(v)),
            ),
            field,
        );
        let canonical = canonical_mixed(&cd.e, &embedded_k(&cd), bound);
        let k_is_ground = cd.k.dim() == 1 && cd.k.basis.member(&cd.a.unit);
        Resolution {
            field,
            abar,
            hbar,
            ebar,
            canonical,
            k_is_ground,
            cd,
            bound,
            x_spaces: HashMap::new(),
            g_spaces: HashMap::new(),
            xhat_spaces: HashMap::new(),
            bar_spaces: HashMap::new(),
            bg_spaces: HashMap::new(),
            ws_push_cache: HashMap::new(),
            d_gen: HashMap::new(),
            d_full_cache: HashMap::new(),
            sigma_x_cache: HashMap::new(),
            sigma_y_cache: HashMap::new(),
            sigma_bar_cache: HashMap::new(),
            right_act_cache: HashMap::new(),
            bar_right_act_cache: HashMap::new(),
            phi_gen_cache: HashMap::new(),
            phi_full_cache: HashMap::new(),
            psi_gen_cache: HashMap::new(),
            psi_full_cache: HashMap::new(),
            omega_gen_cache: HashMap::new(),
            omega_full_cache: HashMap::new(),
            dhat_cache: HashMap::new(),
            phi_hat_cache: HashMap::new(),
            psi_hat_cache: HashMap::new(),
            omega_hat_cache: HashMap::new(),
            dd_hat_cache: HashMap::new(),
        }
    }

    pub fn e_dim(&self) -> usize {
        self.cd.e_dim()
    }

    fn hbar_sect(&self, i: usize) -> Vector {
        self.hbar.section(&Vector::unit(self.hbar.dim, i, self.field))
    }

    fn abar_sect(&self, i: usize) -> Vector {
        self.abar.section(&Vector::unit(self.abar.dim, i, self.field))
    }

    fn ebar_sect(&self, i: usize) -> Vector {
        self.ebar.section(&Vector::unit(self.ebar.dim, i, self.field))
    }

    /// Dimensions [E, H̄×s, Ā×r, E] of the X_{rs} ambient.
    fn x_dims(&self, r: usize, s: usize) -> Vec<usize> {
        let mut dims = vec![self.e_dim()];
        dims.extend(std::iter::repeat(self.hbar.dim).take(s));
        dims.extend(std::iter::repeat(self.abar.dim).take(r));
        dims.push(self.e_dim());
        dims
    }

    fn g_dims(&self, r: usize, s: usize) -> Vec<usize> {
        let mut dims = self.x_dims(r, s);
        dims.pop();
        dims
    }

    /// Right action of `a` ∈ A on the block E ⊗ H̄^{⊗j}, pushing `a`
    /// leftwards through the H̄ slots by the weak action (the translated
    /// structure of E ⊗_A (E/A)^{⊗j}).
    pub fn ws_push(&mut self, j: usize, code: usize, a: &Vector) -> Vector {
        let prefix_total = self.e_dim() * self.hbar.dim.pow(j as u32);
        let mut out = Vector::zero(prefix_total);
        for (ai, c) in a.iter() {
            let v = self.ws_push_basis(j, code, ai);
            out.axpy(c, &v);
        }
        out
    }

    fn ws_push_basis(&mut self, j: usize, code: usize, ai: usize) -> Rc<Vector> {
        if let Some(v) = self.ws_push_cache.get(&(j, code, ai)) {
            return v.clone();
        }
        let field = self.field;
        let result = if j == 0 {
            // code is an E index: right-multiply by a#1
            let av = Vector::unit(self.cd.a.dim, ai, field);
            self.cd.multiply(&Vector::unit(self.e_dim(), code, field), &self.cd.embed_a(&av))
        } else {
            let hdim = self.hbar.dim;
            let (prefix_code, slot) = (code / hdim, code % hdim);
            let h = self.hbar_sect(slot);
            let mut out = Vector::zero(self.e_dim() * hdim.pow(j as u32));
            for (legs, c) in self.cd.h.sweedler_vec(&h, 2) {
                let acted = self.cd.action.act_basis(legs[0], &Vector::unit(self.cd.a.dim, ai, field));
                let slot2 = self.hbar.project(&Vector::unit(self.cd.h.dim(), legs[1], field));
                if slot2.is_zero() || acted.is_zero() {
                    continue;
                }
                let inner = self.ws_push(j - 1, prefix_code, &acted);
                for (pc, pcoef) in inner.iter() {
                    for (sc, scoef) in slot2.iter() {
                        out.add_to(pc * hdim + sc, c.mul(pcoef).mul(scoef));
                    }
                }
            }
            out
        };
        let rc = Rc::new(result);
        self.ws_push_cache.insert((j, code, ai), rc.clone());
        rc
    }

    /// Relations for the X_{rs} quotient: ⊗_K junctions at every interface.
    fn x_relations(&mut self, r: usize, s: usize) -> Vec<Vector> {
        if self.k_is_ground {
            return Vec::new();
        }
        self.block_relations(r, s, true, false)
    }

    fn g_relations(&mut self, r: usize, s: usize) -> Vec<Vector> {
        if self.k_is_ground {
            return Vec::new();
        }
        self.block_relations(r, s, false, false)
    }

    fn xhat_relations(&mut self, r: usize, s: usize) -> Vec<Vector> {
        if self.k_is_ground {
            return Vec::new();
        }
        self.block_relations(r, s, false, true)
    }

    /// Junction relations for [E, H̄^s, Ā^r(, E)]. `with_tail` includes the
    /// final ⊗_K E junction; `wrap` adds the ♮ commutator relation instead.
    fn block_relations(&mut self, r: usize, s: usize, with_tail: bool, wrap: bool) -> Vec<Vector> {
        let field = self.field;
        let mut dims = self.g_dims(r, s);
        if with_tail {
            dims.push(self.e_dim());
        }
        let shape = Shape::new(dims.clone());
        let nslots = dims.len();
        let k_basis: Vec<Vector> = self.cd.k.basis.basis().to_vec();
        let mut rels = Vec::new();
        // junction jn = 0 sits between the W block (slots 0..=s) and Ā_1;
        // junction jn = t between Ā_t and Ā_{t+1}; junction jn = r between
        // Ā_r and the tail (with_tail) or wraps around to the head (wrap).
        let n_junctions = r + usize::from(with_tail || wrap);
        for code in 0..shape.total {
            let idx = shape.decode(code);
            let prefix_code = {
                let mut c = 0;
                for slot in 0..=s {
                    c = c * dims[slot] + idx[slot];
                }
                c
            };
            let prefix_total = self.e_dim() * self.hbar.dim.pow(s as u32);
            for lam in &k_basis {
                for jn in 0..n_junctions {
                    let prefix_unit = Vector::unit(prefix_total, prefix_code, field);
                    let lhs_prefix = if jn == 0 {
                        self.ws_push(s, prefix_code, lam)
                    } else {
                        prefix_unit.clone()
                    };
                    let rhs_prefix = if wrap && jn == r {
                        // λ·x: left multiply into the E head
                        let lam_e = self.cd.embed_a(lam);
                        let hdimpow = self.hbar.dim.pow(s as u32);
                        let (ecode, hcode) = (prefix_code / hdimpow, prefix_code % hdimpow);
                        let lhead =
                            self.cd.multiply(&lam_e, &Vector::unit(self.e_dim(), ecode, field));
                        let mut pref = Vector::zero(prefix_total);
                        for (ei, c) in lhead.iter() {
                            pref.add_to(ei * hdimpow + hcode, c.clone());
                        }
                        pref
                    } else {
                        prefix_unit
                    };
                    let mut lhs_groups = vec![(s + 1, lhs_prefix)];
                    let mut rhs_groups = vec![(s + 1, rhs_prefix)];
                    for t in 0..r {
                        let slot = s + 1 + t;
                        let unit = Vector::unit(self.abar.dim, idx[slot], field);
                        let lv = if t + 1 == jn {
                            self.abar.project(&self.cd.a.mul_vec(&self.abar_sect(idx[slot]), lam))
                        } else {
                            unit.clone()
                        };
                        let rv = if t == jn {
                            self.abar.project(&self.cd.a.mul_vec(lam, &self.abar_sect(idx[slot])))
                        } else {
                            unit
                        };
                        lhs_groups.push((1, lv));
                        rhs_groups.push((1, rv));
                    }
                    if with_tail {
                        let slot = nslots - 1;
                        let unit = Vector::unit(self.e_dim(), idx[slot], field);
                        let rv = if jn == r {
                            self.cd.multiply(&self.cd.embed_a(lam), &unit)
                        } else {
                            unit.clone()
                        };
                        lhs_groups.push((1, unit));
                        rhs_groups.push((1, rv));
                    }
                    let rel = splice(&shape, &lhs_groups).sub(&splice(&shape, &rhs_groups));
                    if !rel.is_zero() {
                        rels.push(rel);
                    }
                }
            }
        }
        rels
    }

    pub fn x_space(&mut self, r: usize, s: usize) -> Rc<TensorSpace> {
        if let Some(sp) = self.x_spaces.get(&(r, s)) {
            return sp.clone();
        }
        let rels = self.x_relations(r, s);
        let sp = Rc::new(TensorSpace::new(self.field, self.x_dims(r, s), rels));
        self.x_spaces.insert((r, s), sp.clone());
        sp
    }

    pub fn g_space(&mut self, r: usize, s: usize) -> Rc<TensorSpace> {
        if let Some(sp) = self.g_spaces.get(&(r, s)) {
            return sp.clone();
        }
        let rels = self.g_relations(r, s);
        let sp = Rc::new(TensorSpace::new(self.field, self.g_dims(r, s), rels));
        self.g_spaces.insert((r, s), sp.clone());
        sp
    }

    /// X̂_{rs} = (E ⊗_A (E/A)^{⊗s} ⊗ Ā^{⊗r})♮.
    pub fn xhat_space(&mut self, r: usize, s: usize) -> Rc<TensorSpace> {
        if let Some(sp) = self.xhat_spaces.get(&(r, s)) {
            return sp.clone();
        }
        let rels = {
            let mut rels = self.g_relations(r, s);
            rels.extend(self.xhat_relations(r, s));
            rels
        };
        let sp = Rc::new(TensorSpace::new(self.field, self.g_dims(r, s), rels));
        self.xhat_spaces.insert((r, s), sp.clone());
        sp
    }

    /// Y_s ≃ E ⊗ H̄^{⊗s} ⊗ H (no relations).
    pub fn y_shape(&self, s: usize) -> Shape {
        let mut dims = vec![self.e_dim()];
        dims.extend(std::iter::repeat(self.hbar.dim).take(s));
        dims.push(self.cd.h.dim());
        Shape::new(dims)
    }

    pub fn y_dim(&self, s: usize) -> usize {
        self.y_shape(s).total
    }

    /// The relative bar space B_n(E) = E ⊗ Ē^{⊗n} ⊗ E.
    pub fn bar_space(&mut self, n: usize) -> Rc<TensorSpace> {
        if let Some(sp) = self.bar_spaces.get(&n) {
            return sp.clone();
        }
        let sp = Rc::new(self.bar_like_space(n, true));
        self.bar_spaces.insert(n, sp.clone());
        sp
    }

    /// The generator space E ⊗ Ē^{⊗n} (bar space without its tail).
    pub fn bg_space(&mut self, n: usize) -> Rc<TensorSpace> {
        if let Some(sp) = self.bg_spaces.get(&n) {
            return sp.clone();
        }
        let sp = Rc::new(self.bar_like_space(n, false));
        self.bg_spaces.insert(n, sp.clone());
        sp
    }

    fn bar_like_space(&mut self, n: usize, with_tail: bool) -> TensorSpace {
        let field = self.field;
        let mut dims = vec![self.e_dim()];
        dims.extend(std::iter::repeat(self.ebar.dim).take(n));
        if with_tail {
            dims.push(self.e_dim());
        }
        if self.k_is_ground {
            return TensorSpace::plain(field, dims);
        }
        let shape = Shape::new(dims.clone());
        let nslots = dims.len();
        let k_basis: Vec<Vector> = self.cd.k.basis.basis().to_vec();
        let mut rels = Vec::new();
        let n_junctions = nslots - 1;
        for code in 0..shape.total {
            let idx = shape.decode(code);
            for lam in &k_basis {
                let lam_e = self.cd.embed_a(lam);
                for jn in 0..n_junctions {
                    let mut lhs: Vec<Vector> = Vec::with_capacity(nslots);
                    let mut rhs: Vec<Vector> = Vec::with_capacity(nslots);
                    for (slot, &i) in idx.iter().enumerate() {
                        let unit = Vector::unit(dims[slot], i, field);
                        let is_e = slot == 0 || (with_tail && slot == nslots - 1);
                        let lv = if slot == jn {
                            if is_e {
                                self.cd.multiply(&unit, &lam_e)
                            } else {
                                self.ebar.project(&self.cd.multiply(&self.ebar_sect(i), &lam_e))
                            }
                        } else {
                            unit.clone()
                        };
                        let rv = if slot == jn + 1 {
                            if is_e {
                                self.cd.multiply(&lam_e, &unit)
                            } else {
                                self.ebar.project(&self.cd.multiply(&lam_e, &self.ebar_sect(i)))
                            }
                        } else {
                            unit
                        };
                        lhs.push(lv);
                        rhs.push(rv);
                    }
                    let rel = shape
                        .tensor(&lhs.iter().collect::<Vec<_>>())
                        .sub(&shape.tensor(&rhs.iter().collect::<Vec<_>>()));
                    if !rel.is_zero() {
                        rels.push(rel);
                    }
                }
            }
        }
        TensorSpace::new(field, dims, rels)
    }

    /// The canonical space (E ⊗ Ē^{⊗n})♮.
    pub fn can_space(&self, n: usize) -> &TensorSpace {
        &self.canonical.spaces[n]
    }

    /// Direct sum X_n = ⊕_{r+s=n} X_{rs}, keyed by (r, s) with r ascending.
    pub fn x_block(&mut self, n: usize) -> BlockSpace<(usize, usize)> {
        let parts = (0..=n)
            .map(|r| {
                let s = n - r;
                ((r, s), self.x_space(r, s).dim())
            })
            .collect();
        BlockSpace::new(parts)
    }

    pub fn g_block(&mut self, n: usize) -> BlockSpace<(usize, usize)> {
        let parts = (0..=n)
            .map(|r| {
                let s = n - r;
                ((r, s), self.g_space(r, s).dim())
            })
            .collect();
        BlockSpace::new(parts)
    }

    pub fn xhat_block(&mut self, n: usize) -> BlockSpace<(usize, usize)> {
        let parts = (0..=n)
            .map(|r| {
                let s = n - r;
                ((r, s), self.xhat_space(r, s).dim())
            })
            .collect();
        BlockSpace::new(parts)
    }

    /// Right action of the E basis on the X_{rs} carrier (tail slot).
    pub fn right_act(&mut self, r: usize, s: usize) -> Rc<Vec<Matrix>> {
        if let Some(m) = self.right_act_cache.get(&(r, s)) {
            return m.clone();
        }
        let space = self.x_space(r, s);
        let field = self.field;
        let e_dim = self.e_dim();
        let nslots = space.shape.dims.len();
        let mut mats = Vec::with_capacity(e_dim);
        for j in 0..e_dim {
            let ej = Vector::unit(e_dim, j, field);
            let m = space
                .induce_map(space.dim(), true, &mut |idx: &[usize]| {
                    let mut factors: Vec<Vector> = idx
                        .iter()
                        .enumerate()
                        .map(|(slot, &i)| Vector::unit(space.shape.dims[slot], i, field))
                        .collect();
                    factors[nslots - 1] = self.cd.multiply(&factors[nslots - 1], &ej);
                    space.class_of_tensor(&factors.iter().collect::<Vec<_>>())
                })
                .expect("right E-action descends to the ⊗_K quotient");
            mats.push(m);
        }
        let rc = Rc::new(mats);
        self.right_act_cache.insert((r, s), rc.clone());
        rc
    }

    /// Right action of the E basis on the bar space B_n(E).
    pub fn bar_right_act(&mut self, n: usize) -> Rc<Vec<Matrix>> {
        if let Some(m) = self.bar_right_act_cache.get(&n) {
            return m.clone();
        }
        let space = self.bar_space(n);
        let field = self.field;
        let e_dim = self.e_dim();
        let nslots = space.shape.dims.len();
        let mut mats = Vec::with_capacity(e_dim);
        for j in 0..e_dim {
            let ej = Vector::unit(e_dim, j, field);
            let m = space
                .induce_map(space.dim(), true, &mut |idx: &[usize]| {
                    let mut factors: Vec<Vector> = idx
                        .iter()
                        .enumerate()
                        .map(|(slot, &i)| Vector::unit(space.shape.dims[slot], i, field))
                        .collect();
                    factors[nslots - 1] = self.cd.multiply(&factors[nslots - 1], &ej);
                    space.class_of_tensor(&factors.iter().collect::<Vec<_>>())
                })
                .expect("right E-action descends to the bar space");
            mats.push(m);
        }
        let rc = Rc::new(mats);
        self.bar_right_act_cache.insert(n, rc.clone());
        rc
    }

    /// Applies the right E-action to a carrier vector: v · e.
    pub fn apply_right(mats: &[Matrix], v: &Vector, e: &Vector) -> Vector {
        let mut out = Vector::zero(mats[0].rows);
        for (j, c) in e.iter() {
            out.axpy(c, &mats[j].apply(v));
        }
        out
    }
}

fn embedded_k(cd: &CrossedData) -> crate::algebra::SubalgebraData {
    crate::algebra::SubalgebraData::new(
        &cd.e,
        cd.k.basis.basis().iter().map(|v| cd.embed_a(v)).collect(),
    )
}

/// Assembles an ambient vector from groups of consecutive slots: each group
/// supplies a vector over the sub-product of its slots, in slot order.
pub(crate) fn splice(shape: &Shape, groups: &[(usize, Vector)]) -> Vector {
    let slot_count: usize = groups.iter().map(|(k, _)| k).sum();
    assert_eq!(slot_count, shape.dims.len());
    let mut terms: Vec<(usize, Scalar)> = vec![(0, shape_one(shape, groups))];
    for (_, v) in groups {
        let mut next = Vec::with_capacity(terms.len() * v.support_len().max(1));
        for (code, coef) in &terms {
            for (gc, gcoef) in v.iter() {
                next.push((code * v.dim + gc, coef.mul(gcoef)));
            }
        }
        terms = next;
        if terms.is_empty() {
            break;
        }
    }
    Vector::from_entries(shape.total, terms)
}

fn shape_one(_shape: &Shape, groups: &[(usize, Vector)]) -> Scalar {
    for (_, v) in groups {
        if let Some((_, c)) = v.iter().next() {
            return c.field().one();
        }
    }
    FieldSpec::Q.one()
}
