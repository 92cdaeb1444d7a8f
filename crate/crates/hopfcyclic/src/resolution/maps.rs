//! The recursive differentials d^l, the contracting homotopies σ^l and σ̄,
//! and the closed first- and second-layer formulas used as cross-checks.

use super::{splice, Resolution};
use crate::exactlin::{Matrix, Vector};
use std::rc::Rc;

impl Resolution {
    /// μ_s: X_{0s} → Y_s, the canonical projection (⊗_K to ⊗_A on the tail).
    pub fn mu(&mut self, s: usize) -> Matrix {
        let space = self.x_space(0, s);
        let y_dim = self.y_dim(s);
        let hdim = self.cd.h.dim();
        space
            .induce_map(y_dim, true, &mut |idx: &[usize]| {
                let (a, h) = self.cd.e_split(idx[s + 1]);
                let prefix_code = fold_code(&space.shape.dims[..=s], &idx[..=s]);
                let av = Vector::unit(self.cd.a.dim, a, self.field);
                let pushed = self.ws_push(s, prefix_code, &av);
                let mut out = Vector::zero(y_dim);
                for (pc, c) in pushed.iter() {
                    out.add_to(pc * hdim + h, c.clone());
                }
                out
            })
            .expect("μ descends from ⊗_K to ⊗_A")
    }

    /// μ̃: Y_0 → E, the multiplication map.
    pub fn mu_tilde(&mut self) -> Matrix {
        let shape = self.y_shape(0);
        let mut m = Matrix::zero(self.e_dim(), shape.total);
        for code in 0..shape.total {
            let idx = shape.decode(code);
            let e0 = Vector::unit(self.e_dim(), idx[0], self.field);
            let gh = self.cd.gamma(&Vector::unit(self.cd.h.dim(), idx[1], self.field));
            m.set_col(code, self.cd.multiply(&e0, &gh));
        }
        m
    }

    /// μ: X_{00} → E, the multiplication map (augmentation of the resolution
    /// is −μ).
    pub fn mu_aug(&mut self) -> Matrix {
        let space = self.x_space(0, 0);
        space
            .induce_map(self.e_dim(), true, &mut |idx: &[usize]| {
                let e0 = Vector::unit(self.e_dim(), idx[0], self.field);
                let e1 = Vector::unit(self.e_dim(), idx[1], self.field);
                self.cd.multiply(&e0, &e1)
            })
            .expect("multiplication descends to ⊗_K")
    }

    /// ∂_s: Y_s → Y_{s−1}, the normalized bar boundary of the A-algebra E.
    pub fn partial(&mut self, s: usize) -> Matrix {
        assert!(s >= 1);
        let src = self.y_shape(s);
        let tgt = self.y_shape(s - 1);
        let field = self.field;
        let hdim = self.cd.h.dim();
        let mut m = Matrix::zero(tgt.total, src.total);
        for code in 0..src.total {
            let idx = src.decode(code);
            let mut out = Vector::zero(tgt.total);
            // j = 0: e0 · γ(h̄_1)
            {
                let e0g = self.cd.multiply(
                    &Vector::unit(self.e_dim(), idx[0], field),
                    &self.cd.gamma(&self.hbar_sect(idx[1])),
                );
                let mut groups = vec![(1usize, e0g)];
                for slot in 2..=s {
                    groups.push((1, Vector::unit(self.hbar.dim, idx[slot], field)));
                }
                groups.push((1, Vector::unit(hdim, idx[s + 1], field)));
                out = out.add(&splice(&tgt, &groups));
            }
            // 1 ≤ j ≤ s−1: γ(h̄_j) γ(h̄_{j+1}), the A-part migrating left
            for j in 1..s {
                let p = self.cd.multiply(
                    &self.cd.gamma(&self.hbar_sect(idx[j])),
                    &self.cd.gamma(&self.hbar_sect(idx[j + 1])),
                );
                let sign = sign_of(j, field);
                let prefix_code = fold_code(&src.dims[..j], &idx[..j]);
                for (eidx, c) in p.iter() {
                    let (ac, hc) = self.cd.e_split(eidx);
                    let slot2 = self.hbar.project(&Vector::unit(hdim, hc, field));
                    if slot2.is_zero() {
                        continue;
                    }
                    let av = Vector::unit(self.cd.a.dim, ac, field);
                    let prefix = self.ws_push(j - 1, prefix_code, &av);
                    let mut groups = vec![(j, prefix), (1, slot2)];
                    for slot in j + 2..=s {
                        groups.push((1, Vector::unit(self.hbar.dim, idx[slot], field)));
                    }
                    groups.push((1, Vector::unit(hdim, idx[s + 1], field)));
                    out.axpy(&sign.mul(c), &splice(&tgt, &groups));
                }
            }
            // j = s: γ(h̄_s) · γ(h_last)
            {
                let p = self.cd.multiply(
                    &self.cd.gamma(&self.hbar_sect(idx[s])),
                    &self.cd.gamma(&Vector::unit(hdim, idx[s + 1], field)),
                );
                let sign = sign_of(s, field);
                let prefix_code = fold_code(&src.dims[..s], &idx[..s]);
                for (eidx, c) in p.iter() {
                    let (ac, hc) = self.cd.e_split(eidx);
                    let av = Vector::unit(self.cd.a.dim, ac, field);
                    let prefix = self.ws_push(s - 1, prefix_code, &av);
                    let groups = vec![(s, prefix), (1, Vector::unit(hdim, hc, field))];
                    out.axpy(&sign.mul(c), &splice(&tgt, &groups));
                }
            }
            m.set_col(code, out);
        }
        m
    }

    /// σ⁰_{0s}: Y_s → X_{0s}, splitting μ_s.
    pub fn sigma0_y(&mut self, s: usize) -> Matrix {
        let src = self.y_shape(s);
        let tgt = self.x_space(0, s);
        let field = self.field;
        let mut m = Matrix::zero(tgt.dim(), src.total);
        for code in 0..src.total {
            let idx = src.decode(code);
            let mut factors: Vec<Vector> = Vec::with_capacity(s + 2);
            factors.push(Vector::unit(self.e_dim(), idx[0], field));
            for slot in 1..=s {
                factors.push(Vector::unit(self.hbar.dim, idx[slot], field));
            }
            factors.push(self.cd.gamma(&Vector::unit(self.cd.h.dim(), idx[s + 1], field)));
            m.set_col(code, tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
        }
        m
    }

    /// σ⁰_{r+1,s}: X_{rs} → X_{r+1,s}: moves the A-part of the tail into a
    /// new Ā slot, with sign (−1)^{r+s+1}.
    pub fn sigma0_x(&mut self, r: usize, s: usize) -> Matrix {
        let src = self.x_space(r, s);
        let tgt = self.x_space(r + 1, s);
        let field = self.field;
        let sign = sign_of(r + s + 1, field);
        src.induce_map(tgt.dim(), true, &mut |idx: &[usize]| {
            let (a, h) = self.cd.e_split(idx[s + r + 1]);
            let abar_slot = self.abar.project(&Vector::unit(self.cd.a.dim, a, field));
            if abar_slot.is_zero() {
                return Vector::zero(tgt.dim());
            }
            let mut factors: Vec<Vector> = Vec::with_capacity(s + r + 3);
            factors.push(Vector::unit(self.e_dim(), idx[0], field));
            for slot in 1..=s {
                factors.push(Vector::unit(self.hbar.dim, idx[slot], field));
            }
            for slot in s + 1..=s + r {
                factors.push(Vector::unit(self.abar.dim, idx[slot], field));
            }
            factors.push(abar_slot);
            factors.push(self.cd.gamma(&Vector::unit(self.cd.h.dim(), h, field)));
            tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>()).scale(&sign)
        })
        .expect("σ⁰ is right K-linear")
    }

    /// σ^{−1}_{s+1}: Y_s → Y_{s+1}: x ↦ (−1)^s x ⊗_A 1.
    pub fn sigma_m1(&mut self, s: usize) -> Matrix {
        let src = self.y_shape(s);
        let tgt = self.y_shape(s + 1);
        let field = self.field;
        let hdim = self.cd.h.dim();
        let sign = sign_of(s, field);
        let mut m = Matrix::zero(tgt.total, src.total);
        for code in 0..src.total {
            let idx = src.decode(code);
            let new_slot = self.hbar.project(&Vector::unit(hdim, idx[s + 1], field));
            if new_slot.is_zero() {
                continue;
            }
            let prefix_code = fold_code(&src.dims[..=s], &idx[..=s]);
            let prefix =
                Vector::unit(self.e_dim() * self.hbar.dim.pow(s as u32), prefix_code, field);
            let groups =
                vec![(s + 1, prefix), (1, new_slot), (1, self.cd.h.unit().clone())];
            m.set_col(code, splice(&tgt, &groups).scale(&sign));
        }
        m
    }

    /// σ^{−1}_0: E → Y_0: x ↦ −(x ⊗_A 1).
    pub fn sigma_m1_aug(&mut self) -> Matrix {
        let tgt = self.y_shape(0);
        let field = self.field;
        let mut m = Matrix::zero(tgt.total, self.e_dim());
        for e in 0..self.e_dim() {
            let groups = vec![
                (1usize, Vector::unit(self.e_dim(), e, field)),
                (1, self.cd.h.unit().clone()),
            ];
            m.set_col(e, splice(&tgt, &groups).neg());
        }
        m
    }

    /// d⁰_{rs}: (−1)^s times the normalized bar boundary of K ⊆ A with the
    /// stated coefficients.
    fn d0(&mut self, r: usize, s: usize) -> Matrix {
        assert!(r >= 1);
        let src = self.x_space(r, s);
        let tgt = self.x_space(r - 1, s);
        let field = self.field;
        let outer = sign_of(s, field);
        let hbar_dim = self.hbar.dim;
        src.induce_map(tgt.dim(), true, &mut |idx: &[usize]| {
            let mut out = Vector::zero(tgt.dim());
            let tgt_shape = &tgt.shape;
            // term 0: push ā_1 into the W block
            {
                let a1 = self.abar_sect(idx[s + 1]);
                let prefix_code = fold_code(&src.shape.dims[..=s], &idx[..=s]);
                let prefix = self.ws_push(s, prefix_code, &a1);
                let mut groups = vec![(s + 1, prefix)];
                for t in 1..r {
                    groups.push((1, Vector::unit(self.abar.dim, idx[s + 1 + t], field)));
                }
                groups.push((1, Vector::unit(self.e_dim(), idx[s + r + 1], field)));
                out = out.add(&tgt.quot.project(&splice(tgt_shape, &groups)));
            }
            // middle terms: ā_j ā_{j+1}
            for j in 1..r {
                let prod = self.abar.project(&self.cd.a.mul_vec(
                    &self.abar_sect(idx[s + j]),
                    &self.abar_sect(idx[s + j + 1]),
                ));
                let sign = sign_of(j, field);
                let mut factors: Vec<Vector> = Vec::with_capacity(s + r + 1);
                factors.push(Vector::unit(self.e_dim(), idx[0], field));
                for slot in 1..=s {
                    factors.push(Vector::unit(hbar_dim, idx[slot], field));
                }
                for t in 1..=r {
                    if t == j {
                        factors.push(prod.clone());
                    } else if t != j + 1 {
                        factors.push(Vector::unit(self.abar.dim, idx[s + t], field));
                    }
                }
                factors.push(Vector::unit(self.e_dim(), idx[s + r + 1], field));
                out.axpy(&sign, &tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
            }
            // last term: ā_r multiplies the tail from the left
            {
                let ar = self.abar_sect(idx[s + r]);
                let tail = self.cd.multiply(
                    &self.cd.embed_a(&ar),
                    &Vector::unit(self.e_dim(), idx[s + r + 1], field),
                );
                let sign = sign_of(r, field);
                let mut factors: Vec<Vector> = Vec::with_capacity(s + r + 1);
                factors.push(Vector::unit(self.e_dim(), idx[0], field));
                for slot in 1..=s {
                    factors.push(Vector::unit(hbar_dim, idx[slot], field));
                }
                for t in 1..r {
                    factors.push(Vector::unit(self.abar.dim, idx[s + t], field));
                }
                factors.push(tail);
                out.axpy(&sign, &tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
            }
            out.scale(&outer)
        })
        .expect("d⁰ descends to the ⊗_K quotient")
    }

    /// g ↦ g ⊗ 1: the generator inclusion G_{rs} → X_{rs}.
    pub fn inc_g_x(&mut self, r: usize, s: usize) -> Matrix {
        let src = self.g_space(r, s);
        let tgt = self.x_space(r, s);
        let field = self.field;
        src.induce_map(tgt.dim(), true, &mut |idx: &[usize]| {
            let mut factors: Vec<Vector> = idx
                .iter()
                .enumerate()
                .map(|(slot, &i)| Vector::unit(src.shape.dims[slot], i, field))
                .collect();
            factors.push(self.cd.e.unit.clone());
            tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>())
        })
        .expect("generator inclusion descends")
    }

    /// The recursive differential d^l_{rs}: X_{rs} → X_{r+l−1, s−l} on the
    /// generator domain G_{rs} (values of d^l on g ⊗ 1).
    pub fn d_gen_matrix(&mut self, r: usize, s: usize, l: usize) -> Rc<Matrix> {
        assert!(l >= 1 && l <= s);
        if let Some(m) = self.d_gen.get(&(r, s, l)) {
            return m.clone();
        }
        let inc = self.inc_g_x(r, s);
        let m = if l == 1 && r == 0 {
            // σ⁰ ∘ ∂ ∘ μ
            let mu = self.mu(s);
            let par = self.partial(s);
            let s0 = self.sigma0_y(s - 1);
            s0.compose(&par).compose(&mu).compose(&inc)
        } else if l == 1 {
            // −σ⁰ ∘ d¹ ∘ d⁰
            let d0 = self.d_full(r, s, 0);
            let d1 = self.d_full(r - 1, s, 1);
            let s0 = self.sigma0_x(r - 1, s - 1);
            s0.compose(&d1).compose(&d0).compose(&inc).neg()
        } else if r == 0 {
            // −Σ_{j=1}^{l−1} σ⁰ ∘ d^{l−j} ∘ d^j
            let mut acc = Matrix::zero(self.x_space(l - 1, s - l).dim(), inc.cols);
            for j in 1..l {
                let dj = self.d_full(0, s, j);
                let dlj = self.d_full(j - 1, s - j, l - j);
                let s0 = self.sigma0_x(l - 2, s - l);
                acc = acc.add(&s0.compose(&dlj).compose(&dj).compose(&inc));
            }
            acc.neg()
        } else {
            // −Σ_{j=0}^{l−1} σ⁰ ∘ d^{l−j} ∘ d^j
            let mut acc = Matrix::zero(self.x_space(r + l - 1, s - l).dim(), inc.cols);
            for j in 0..l {
                let dj = self.d_full(r, s, j);
                let dlj = if j == 0 {
                    self.d_full(r - 1, s, l)
                } else {
                    self.d_full(r + j - 1, s - j, l - j)
                };
                let s0 = self.sigma0_x(r + l - 2, s - l);
                acc = acc.add(&s0.compose(&dlj).compose(&dj).compose(&inc));
            }
            acc.neg()
        };
        let rc = Rc::new(m);
        self.d_gen.insert((r, s, l), rc.clone());
        rc
    }

    /// d^l_{rs} on all of X_{rs}, extended from the generators by the right
    /// E-action.
    pub fn d_full(&mut self, r: usize, s: usize, l: usize) -> Rc<Matrix> {
        if let Some(m) = self.d_full_cache.get(&(r, s, l)) {
            return m.clone();
        }
        let m = if l == 0 {
            self.d0(r, s)
        } else {
            let gen = self.d_gen_matrix(r, s, l);
            let (tr, ts) = (r + l - 1, s - l);
            let right = self.right_act(tr, ts);
            let src = self.x_space(r, s);
            let gsp = self.g_space(r, s);
            let field = self.field;
            src.induce_map(self.x_space(tr, ts).dim(), true, &mut |idx: &[usize]| {
                let gclass = gsp.class_of(&idx[..idx.len() - 1]);
                let v = gen.apply(&gclass);
                let tail = Vector::unit(self.cd.e_dim(), idx[idx.len() - 1], field);
                Resolution::apply_right(&right, &v, &tail)
            })
            .expect("d^l extends E-bilinearly")
        };
        let rc = Rc::new(m);
        self.d_full_cache.insert((r, s, l), rc.clone());
        rc
    }

    /// The assembled differential d_n: X_n → X_{n−1}.
    pub fn d_total(&mut self, n: usize) -> Matrix {
        assert!(n >= 1);
        let src = self.x_block(n);
        let tgt = self.x_block(n - 1);
        let mut blocks = Vec::new();
        for r in 0..=n {
            let s = n - r;
            let lmin = usize::from(r == 0);
            for l in lmin..=s {
                let m = self.d_full(r, s, l);
                blocks.push(((r, s), (r + l - 1, s - l), (*m).clone()));
            }
        }
        crate::exactlin::BlockSpace::assemble(&tgt, &src, &blocks)
    }

    /// μ as a map X_n → Y_n (zero outside the X_{0n} block).
    pub fn mu_block(&mut self, n: usize) -> Matrix {
        let src = self.x_block(n);
        let mu = self.mu(n);
        let mut m = Matrix::zero(self.y_dim(n), src.total);
        let off = src.offsets[src.index_of(&(0, n)).unwrap()];
        for j in 0..mu.cols {
            m.set_col(off + j, mu.col(j).clone());
        }
        m
    }

    /// σ^l on Y_s, landing in X_{l, s−l}.
    pub fn sigma_y(&mut self, s: usize, l: usize) -> Rc<Matrix> {
        if let Some(m) = self.sigma_y_cache.get(&(s, l)) {
            return m.clone();
        }
        let m = if l == 0 {
            self.sigma0_y(s)
        } else {
            let mut acc = Matrix::zero(self.x_space(l, s - l).dim(), self.y_dim(s));
            for i in 0..l {
                let si = self.sigma_y(s, i);
                let d = self.d_full(i, s - i, l - i);
                let s0 = self.sigma0_x(l - 1, s - l);
                acc = acc.add(&s0.compose(&d).compose(&si));
            }
            acc.neg()
        };
        let rc = Rc::new(m);
        self.sigma_y_cache.insert((s, l), rc.clone());
        rc
    }

    /// σ^l on X_{rs}, landing in X_{r+l+1, s−l}.
    pub fn sigma_x(&mut self, r: usize, s: usize, l: usize) -> Rc<Matrix> {
        if let Some(m) = self.sigma_x_cache.get(&(r, s, l)) {
            return m.clone();
        }
        let m = if l == 0 {
            self.sigma0_x(r, s)
        } else {
            let mut acc = Matrix::zero(self.x_space(r + l + 1, s - l).dim(), self.x_space(r, s).dim());
            for i in 0..l {
                let si = self.sigma_x(r, s, i);
                let d = self.d_full(r + i + 1, s - i, l - i);
                let s0 = self.sigma0_x(r + l, s - l);
                acc = acc.add(&s0.compose(&d).compose(&si));
            }
            acc.neg()
        };
        let rc = Rc::new(m);
        self.sigma_x_cache.insert((r, s, l), rc.clone());
        rc
    }

    /// The contracting homotopy σ̄_n: X_{n−1} → X_n (n ≥ 1), and σ̄_0 via
    /// `sigma_bar0`.
    pub fn sigma_bar(&mut self, n: usize) -> Rc<Matrix> {
        assert!(n >= 1);
        if let Some(m) = self.sigma_bar_cache.get(&n) {
            return m.clone();
        }
        let src = self.x_block(n - 1);
        let tgt = self.x_block(n);
        // −Σ_l σ^l_{l,n−l} ∘ σ^{−1}_n ∘ μ_{n−1}
        let mu = self.mu_block(n - 1);
        let sm1 = self.sigma_m1(n - 1);
        let first = sm1.compose(&mu);
        let mut total = Matrix::zero(tgt.total, src.total);
        for l in 0..=n {
            let sy = self.sigma_y(n, l);
            let part = sy.compose(&first);
            let mut embedded = Matrix::zero(tgt.total, src.total);
            for j in 0..src.total {
                embedded.set_col(j, tgt.embed(&(l, n - l), part.col(j)));
            }
            total = total.sub(&embedded);
        }
        // + Σ_{r+s=n−1} Σ_{l≤s} σ^l_X(r, s)
        let mut blocks = Vec::new();
        for r in 0..n {
            let s = n - 1 - r;
            for l in 0..=s {
                let m = self.sigma_x(r, s, l);
                blocks.push(((r, s), (r + l + 1, s - l), (*m).clone()));
            }
        }
        total = total.add(&crate::exactlin::BlockSpace::assemble(&tgt, &src, &blocks));
        let rc = Rc::new(total);
        self.sigma_bar_cache.insert(n, rc.clone());
        rc
    }

    /// σ̄_0 = σ⁰_{00} ∘ σ^{−1}_0: E → X_0.
    pub fn sigma_bar0(&mut self) -> Matrix {
        let s0 = self.sigma0_y(0);
        let sm1 = self.sigma_m1_aug();
        s0.compose(&sm1)
    }

    /// Closed formula for d¹ on generators (first layer of the boundary).
    pub fn closed_d1_gen(&mut self, r: usize, s: usize) -> Matrix {
        assert!(s >= 1);
        let src = self.g_space(r, s);
        let tgt = self.x_space(r, s - 1);
        let field = self.field;
        let hdim = self.cd.h.dim();
        src.induce_map(tgt.dim(), true, &mut |idx: &[usize]| {
            let mut out = Vector::zero(tgt.dim());
            // i = 0: e0 · γ(h̄_1)
            {
                let e0g = self.cd.multiply(
                    &Vector::unit(self.e_dim(), idx[0], field),
                    &self.cd.gamma(&self.hbar_sect(idx[1])),
                );
                let mut factors: Vec<Vector> = vec![e0g];
                for slot in 2..=s {
                    factors.push(Vector::unit(self.hbar.dim, idx[slot], field));
                }
                for t in 1..=r {
                    factors.push(Vector::unit(self.abar.dim, idx[s + t], field));
                }
                factors.push(self.cd.e.unit.clone());
                out = out.add(&tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
            }
            // 1 ≤ i ≤ s−1: γ(h̄_i) γ(h̄_{i+1})
            for i in 1..s {
                let p = self.cd.multiply(
                    &self.cd.gamma(&self.hbar_sect(idx[i])),
                    &self.cd.gamma(&self.hbar_sect(idx[i + 1])),
                );
                let sign = sign_of(i, field);
                let prefix_code = fold_code(&src.shape.dims[..i], &idx[..i]);
                for (eidx, c) in p.iter() {
                    let (ac, hc) = self.cd.e_split(eidx);
                    let slot2 = self.hbar.project(&Vector::unit(hdim, hc, field));
                    if slot2.is_zero() {
                        continue;
                    }
                    let av = Vector::unit(self.cd.a.dim, ac, field);
                    let prefix = self.ws_push(i - 1, prefix_code, &av);
                    let mut groups = vec![(i, prefix), (1, slot2)];
                    for slot in i + 2..=s {
                        groups.push((1, Vector::unit(self.hbar.dim, idx[slot], field)));
                    }
                    for t in 1..=r {
                        groups.push((1, Vector::unit(self.abar.dim, idx[s + t], field)));
                    }
                    groups.push((1, self.cd.e.unit.clone()));
                    let amb = splice(&tgt.shape, &groups);
                    out.axpy(&sign.mul(c), &tgt.quot.project(&amb));
                }
            }
            // i = s: (−1)^s γ̄(h_{0,s−1}) ⊗ a_{1r}^{h_s⁽¹⁾} ⊗ γ(h_s⁽²⁾)
            {
                let hs = self.hbar_sect(idx[s]);
                let sign = sign_of(s, field);
                let tuple: Vec<Vector> = (1..=r).map(|t| self.abar_sect(idx[s + t])).collect();
                for (legs, c) in self.cd.h.sweedler_vec(&hs, r + 1) {
                    let mut factors: Vec<Vector> =
                        vec![Vector::unit(self.e_dim(), idx[0], field)];
                    for slot in 1..s {
                        factors.push(Vector::unit(self.hbar.dim, idx[slot], field));
                    }
                    let mut ok = true;
                    for (t, a) in tuple.iter().enumerate() {
                        let acted = self.abar.project(&self.cd.action.act_basis(legs[t], a));
                        if acted.is_zero() {
                            ok = false;
                            break;
                        }
                        factors.push(acted);
                    }
                    if !ok {
                        continue;
                    }
                    factors.push(
                        self.cd.gamma(&Vector::unit(hdim, legs[r], field)),
                    );
                    out.axpy(&sign.mul(&c), &tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
                }
            }
            out
        })
        .expect("closed d¹ descends")
    }

    /// Closed formula for d² on generators (the cocycle layer):
    /// (−1)^{s−1} γ̄(h_{0,s−2}) ⊗ f(h_{s−1}, h_s)·ā_{1r} ⊗ γ(…), where the
    /// middle operation inserts f(h_{s−1}⁽²⁾, h_s⁽²⁾) into the Ā block with
    /// the surrounding slots acted diagonally.
    pub fn closed_d2_gen(&mut self, r: usize, s: usize) -> Matrix {
        assert!(s >= 2);
        let src = self.g_space(r, s);
        let tgt = self.x_space(r + 1, s - 2);
        let field = self.field;
        let hdim = self.cd.h.dim();
        let outer = sign_of(s - 1, field);
        src.induce_map(tgt.dim(), true, &mut |idx: &[usize]| {
            let mut out = Vector::zero(tgt.dim());
            let h = self.hbar_sect(idx[s - 1]);
            let l = self.hbar_sect(idx[s]);
            let tuple: Vec<Vector> = (1..=r).map(|t| self.abar_sect(idx[s + t])).collect();
            for (hl, ch) in self.cd.h.sweedler_vec(&h, 4) {
                for (ll, cl) in self.cd.h.sweedler_vec(&l, 4) {
                    let coef = ch.mul(&cl);
                    for i in 0..=r {
                        let sign = sign_of(i, field).mul(&coef);
                        // prefix a_{1i} acted by l⁽¹⁾ then h⁽¹⁾
                        let l1 = Vector::unit(hdim, ll[0], field);
                        let h1 = Vector::unit(hdim, hl[0], field);
                        let mut prefixes: Vec<(crate::exactlin::Scalar, Vec<Vector>)> =
                            vec![(field.one(), tuple[..i].to_vec())];
                        for act_by in [&l1, &h1] {
                            let mut next = Vec::new();
                            for (c0, tup) in &prefixes {
                                for (c1, acted) in self.cd.act_tuple(tup, act_by) {
                                    next.push((c0.mul(&c1), acted));
                                }
                            }
                            prefixes = next;
                        }
                        // suffix a_{i+1,r} acted by h⁽³⁾l⁽³⁾
                        let h3l3 = self.cd.h.algebra.mul_basis(hl[2], ll[2]).clone();
                        let suffixes = self.cd.act_tuple(&tuple[i..], &h3l3);
                        let fslot = self.abar.project(&self.cd.cocycle.eval(
                            &Vector::unit(hdim, hl[1], field),
                            &Vector::unit(hdim, ll[1], field),
                        ));
                        if fslot.is_zero() {
                            continue;
                        }
                        let tail = self.cd.gamma(self.cd.h.algebra.mul_basis(hl[3], ll[3]));
                        for (cp, ptuple) in &prefixes {
                            for (cs, stuple) in &suffixes {
                                let mut factors: Vec<Vector> =
                                    vec![Vector::unit(self.e_dim(), idx[0], field)];
                                for slot in 1..=s - 2 {
                                    factors
                                        .push(Vector::unit(self.hbar.dim, idx[slot], field));
                                }
                                let mut ok = true;
                                for a in ptuple {
                                    let pa = self.abar.project(a);
                                    if pa.is_zero() {
                                        ok = false;
                                        break;
                                    }
                                    factors.push(pa);
                                }
                                if !ok {
                                    continue;
                                }
                                factors.push(fslot.clone());
                                for a in stuple {
                                    let pa = self.abar.project(a);
                                    if pa.is_zero() {
                                        ok = false;
                                        break;
                                    }
                                    factors.push(pa);
                                }
                                if !ok {
                                    continue;
                                }
                                factors.push(tail.clone());
                                out.axpy(
                                    &sign.mul(cp).mul(cs),
                                    &tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>()),
                                );
                            }
                        }
                    }
                }
            }
            out.scale(&outer)
        })
        .expect("closed d² descends")
    }
}

pub(crate) fn fold_code(dims: &[usize], idx: &[usize]) -> usize {
    let mut c = 0;
    for (d, i) in dims.iter().zip(idx) {
        c = c * d + i;
    }
    c
}

pub(crate) fn sign_of(j: usize, field: crate::exactlin::FieldSpec) -> crate::exactlin::Scalar {
    if j % 2 == 0 {
        field.one()
    } else {
        field.one().neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::Matrix;
    use crate::instance::load_fixture;

    fn smash_res(bound: usize) -> Resolution {
        let (cd, _) = load_fixture("z2_smash");
        Resolution::new(cd, bound)
    }

    #[test]
    fn resolution_squares_to_zero_and_augments() {
        for name in ["z2_smash", "qq_swap", "z2z2_twisted"] {
            let (cd, _) = load_fixture(name);
            let mut res = Resolution::new(cd, 4);
            let mu = res.mu_aug();
            let d1 = res.d_total(1);
            assert!(mu.compose(&d1).is_zero(), "μ∘d₁ ≠ 0 for {name}");
            for n in 2..=4 {
                let dn = res.d_total(n);
                let dprev = res.d_total(n - 1);
                assert!(dprev.compose(&dn).is_zero(), "d² ≠ 0 at degree {n} for {name}");
            }
        }
    }

    #[test]
    fn contracting_homotopy_identities() {
        for name in ["z2_smash", "qq_swap"] {
            let (cd, _) = load_fixture(name);
            let mut res = Resolution::new(cd, 4);
            let field = res.field;
            // (−μ)∘σ̄₀ = id_E
            let mu = res.mu_aug();
            let s0 = res.sigma_bar0();
            assert_eq!(mu.compose(&s0).neg(), Matrix::identity(res.e_dim(), field));
            // d₁σ̄₁ + σ̄₀(−μ) = id
            let d1 = res.d_total(1);
            let sb1 = res.sigma_bar(1);
            let x0 = res.x_block(0);
            let lhs = d1.compose(&sb1).add(&s0.compose(&mu.neg()));
            assert_eq!(lhs, Matrix::identity(x0.total, field), "degree-0 homotopy for {name}");
            // dσ̄ + σ̄d = id in degrees 1..3
            for n in 1..=3usize {
                let dn1 = res.d_total(n + 1);
                let sbn1 = res.sigma_bar(n + 1);
                let sbn = res.sigma_bar(n);
                let dn = res.d_total(n);
                let xn = res.x_block(n);
                let lhs = dn1.compose(&sbn1).add(&sbn.compose(&dn));
                assert_eq!(
                    lhs,
                    Matrix::identity(xn.total, field),
                    "homotopy identity fails at degree {n} for {name}"
                );
            }
        }
    }

    #[test]
    fn sigma_bar_squares_to_zero() {
        let mut res = smash_res(4);
        let s0 = res.sigma_bar0();
        let s1 = res.sigma_bar(1);
        assert!(s1.compose(&s0).is_zero());
        for n in 1..=3usize {
            let sn = res.sigma_bar(n);
            let sn1 = res.sigma_bar(n + 1);
            assert!(sn1.compose(&sn).is_zero(), "σ̄σ̄ ≠ 0 at degree {n}");
        }
    }

    #[test]
    fn sigma_bar_simplification_lemma() {
        // σ^l ∘ σ^{−1} ∘ μ vanishes for l ≥ 1, so the first sum of the
        // homotopy reduces to its l = 0 term
        let mut res = smash_res(4);
        for n in 1..=3usize {
            let mu = res.mu_block(n - 1);
            let sm1 = res.sigma_m1(n - 1);
            for l in 1..=n {
                let sy = res.sigma_y(n, l);
                let comp = sy.compose(&sm1).compose(&mu);
                assert!(comp.is_zero(), "σ^{l}∘σ⁻¹∘μ ≠ 0 at degree {n}");
            }
        }
    }

    #[test]
    fn closed_d1_matches_recursion() {
        for name in ["z2_smash", "qq_swap", "z2z2_twisted"] {
            let (cd, _) = load_fixture(name);
            let mut res = Resolution::new(cd, 4);
            for n in 1..=4usize {
                for r in 0..n {
                    let s = n - r;
                    let closed = res.closed_d1_gen(r, s);
                    let gen = res.d_gen_matrix(r, s, 1);
                    assert_eq!(closed, *gen, "d¹ closed formula at (r, s) = ({r}, {s}) for {name}");
                }
            }
        }
    }

    #[test]
    fn closed_d2_matches_recursion() {
        // dual_cocycle has f outside K, so its l = 2 layer is nonzero and
        // the comparison is not vacuous
        let mut seen_nonzero = false;
        for name in ["z2_smash", "z2z2_twisted", "dual_cocycle"] {
            let (cd, _) = load_fixture(name);
            let mut res = Resolution::new(cd, 4);
            for n in 2..=4usize {
                for r in 0..=(n - 2) {
                    let s = n - r;
                    let closed = res.closed_d2_gen(r, s);
                    let gen = res.d_gen_matrix(r, s, 2);
                    assert_eq!(closed, *gen, "d² closed formula at (r, s) = ({r}, {s}) for {name}");
                    seen_nonzero |= !gen.is_zero();
                }
            }
        }
        assert!(seen_nonzero, "every tested d² layer was zero: the check is vacuous");
    }

    #[test]
    fn trivial_hopf_collapses_to_bar_resolution() {
        // H = k: all d^l with l ≥ 1 vanish in positive s; only the r-row
        // survives and equals the bar resolution of K ⊆ A
        let (cd, _) = load_fixture("trivial_hopf");
        let mut res = Resolution::new(cd, 3);
        assert_eq!(res.hbar.dim, 0);
        for n in 1..=3usize {
            let block = res.x_block(n);
            for (key, dim) in block.keys.iter().zip(&block.dims) {
                if key.1 > 0 {
                    assert_eq!(*dim, 0, "H̄ = 0 must kill positive s");
                }
            }
        }
    }
}
