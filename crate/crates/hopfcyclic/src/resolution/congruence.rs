//! The congruence suites: the ∗ product, the submodule families (F^i, V̂,
//! V̂′, Ĉ, Ĵ, HĴ), the auxiliary rotations η̂ / t̂_H / t̂_A, and the
//! membership checks behind the structure statements for φ̂, ω̂, ψ̂ and D̂.
//!
//! Every check evaluates a map on basis generators (exhaustively when the
//! generator count is at most the sampling cap, otherwise a seeded
//! deterministic sample) and verifies that the stated difference lies in the
//! stated span — exact membership, no tolerance.

use super::maps::sign_of;
use super::Resolution;
use crate::crossed::{f_span, ftilde_span, ActingScope};
use crate::exactlin::{Matrix, Scalar, Subspace, Vector};

/// Exhaustive below this many generators, seeded sample of 200 above it.
pub const EXHAUSTIVE_LIMIT: usize = 2000;
pub const SAMPLE_SIZE: usize = 200;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Deterministic choice of `SAMPLE_SIZE` indices when the range is large.
pub fn sample_indices(total: usize, seed: u64) -> (Vec<usize>, bool) {
    if total <= EXHAUSTIVE_LIMIT {
        return ((0..total).collect(), true);
    }
    let mut state = seed;
    let mut picked = std::collections::BTreeSet::new();
    while picked.len() < SAMPLE_SIZE {
        picked.insert((splitmix64(&mut state) % total as u64) as usize);
    }
    (picked.into_iter().collect(), false)
}

/// Outcome of one proposition's membership checks.
#[derive(Clone, Debug, serde::Serialize)]
pub struct PropositionCheck {
    pub name: String,
    pub generators_checked: usize,
    pub exhaustive: bool,
    pub failures: Vec<String>,
}

impl PropositionCheck {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct CongruenceReport {
    pub seed: u64,
    pub degree: usize,
    pub checks: Vec<PropositionCheck>,
}

impl CongruenceReport {
    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok())
    }
}

impl Resolution {
    /// The recursive shuffle γ(h_{1s}) ∗ a_{1r}, as a sum of Ē-slot tuples.
    pub fn star_product(
        &mut self,
        hs: &[Vector],
        avs: &[Vector],
    ) -> Vec<(Scalar, Vec<Vector>)> {
        let field = self.field;
        if hs.is_empty() {
            return vec![(field.one(), avs.iter().map(|a| self.cd.embed_a(a)).collect())];
        }
        if avs.is_empty() {
            return vec![(field.one(), hs.iter().map(|h| self.cd.gamma(h)).collect())];
        }
        let r = avs.len();
        let hlast = hs.last().unwrap().clone();
        let mut out = Vec::new();
        for (legs, c) in self.cd.h.sweedler_vec(&hlast, 2) {
            let leg1 = Vector::unit(self.cd.h.dim(), legs[0], field);
            let leg2 = Vector::unit(self.cd.h.dim(), legs[1], field);
            for i in 0..=r {
                let sign = sign_of(i, field);
                for (ca, acted) in self.cd.act_tuple(&avs[..i], &leg1) {
                    let inner = self.star_product(&hs[..hs.len() - 1], &acted);
                    for (ci, tuple) in inner {
                        let mut t = tuple;
                        t.push(self.cd.gamma(&leg2));
                        for a in &avs[i..] {
                            t.push(self.cd.embed_a(a));
                        }
                        out.push((c.mul(&ca).mul(&ci).mul(&sign), t));
                    }
                }
            }
        }
        out
    }

    /// The span of classes of simple tensors in (E ⊗ Ē^{⊗n})♮ whose middle
    /// slots are drawn from the given per-slot spanning sets.
    fn can_span_from_choices(&mut self, n: usize, choices: &[Vec<Vector>]) -> Vec<Vector> {
        let space = self.can_space(n).clone();
        let mut stack: Vec<Vec<Vector>> = vec![Vec::new()];
        for ch in choices {
            let mut next = Vec::with_capacity(stack.len() * ch.len());
            for partial in &stack {
                for c in ch {
                    if c.is_zero() {
                        continue;
                    }
                    let mut p = partial.clone();
                    p.push(c.clone());
                    next.push(p);
                }
            }
            stack = next;
        }
        stack
            .into_iter()
            .filter_map(|factors| {
                let v = space.class_of_tensor(&factors.iter().collect::<Vec<_>>());
                (!v.is_zero()).then_some(v)
            })
            .collect()
    }

    fn e_basis_vectors(&self) -> Vec<Vector> {
        (0..self.e_dim()).map(|i| Vector::unit(self.e_dim(), i, self.field)).collect()
    }

    fn ebar_basis_vectors(&self) -> Vec<Vector> {
        (0..self.ebar.dim).map(|i| Vector::unit(self.ebar.dim, i, self.field)).collect()
    }

    /// A ∪ 𝓗 inside Ē, as a spanning set.
    fn a_or_h_in_ebar(&self) -> Vec<Vector> {
        let mut v: Vec<Vector> = (0..self.cd.a.dim)
            .map(|i| self.ebar.project(&self.cd.embed_a(&Vector::unit(self.cd.a.dim, i, self.field))))
            .collect();
        v.extend((0..self.cd.h.dim()).map(|i| {
            self.ebar.project(&self.cd.gamma(&Vector::unit(self.cd.h.dim(), i, self.field)))
        }));
        v
    }

    fn a_in_ebar(&self) -> Vec<Vector> {
        (0..self.cd.a.dim)
            .map(|i| self.ebar.project(&self.cd.embed_a(&Vector::unit(self.cd.a.dim, i, self.field))))
            .collect()
    }

    /// F^i of (E ⊗ Ē^{⊗n})♮: at least n − i middle slots in A.
    pub fn can_filtration(&mut self, n: usize, i: usize) -> Subspace {
        let a = self.a_in_ebar();
        let full = self.ebar_basis_vectors();
        let e = self.e_basis_vectors();
        let mut gens = Vec::new();
        for subset in super::comparison::subsets_of_size(n, n.saturating_sub(i)) {
            let mut choices = vec![e.clone()];
            for slot in 1..=n {
                choices.push(if subset.contains(&slot) { a.clone() } else { full.clone() });
            }
            gens.extend(self.can_span_from_choices(n, &choices));
        }
        Subspace::from_vectors(self.can_space(n).dim(), gens)
    }

    /// V̂_n: every middle slot in A ∪ 𝓗.
    pub fn vhat(&mut self, n: usize) -> Subspace {
        let ah = self.a_or_h_in_ebar();
        let e = self.e_basis_vectors();
        let mut choices = vec![e];
        for _ in 1..=n {
            choices.push(ah.clone());
        }
        let gens = self.can_span_from_choices(n, &choices);
        Subspace::from_vectors(self.can_space(n).dim(), gens)
    }

    /// V̂′_n: at most one middle slot outside A ∪ 𝓗.
    pub fn vhat_prime(&mut self, n: usize) -> Subspace {
        let ah = self.a_or_h_in_ebar();
        let full = self.ebar_basis_vectors();
        let e = self.e_basis_vectors();
        let mut gens = Vec::new();
        for free in 0..=n {
            let mut choices = vec![e.clone()];
            for slot in 1..=n {
                choices.push(if slot == free { full.clone() } else { ah.clone() });
            }
            gens.extend(self.can_span_from_choices(n, &choices));
        }
        Subspace::from_vectors(self.can_space(n).dim(), gens)
    }

    /// Ĉ_n(h_1, …, h_i): some middle slot in f̃⟨h_1, …, h_i⟩.
    pub fn chat(&mut self, n: usize, gens_h: &[Vector]) -> Subspace {
        let ft = ftilde_span(&self.cd, gens_h, ActingScope::FullHopf);
        let ft_in_ebar: Vec<Vector> = ft
            .basis()
            .iter()
            .map(|a| self.ebar.project(&self.cd.embed_a(a)))
            .collect();
        let full = self.ebar_basis_vectors();
        let e = self.e_basis_vectors();
        let mut gens = Vec::new();
        for special in 1..=n {
            let mut choices = vec![e.clone()];
            for slot in 1..=n {
                choices.push(if slot == special { ft_in_ebar.clone() } else { full.clone() });
            }
            gens.extend(self.can_span_from_choices(n, &choices));
        }
        Subspace::from_vectors(self.can_space(n).dim(), gens)
    }

    /// The span K ⊗ Ē^{⊗n} inside the ♮ quotient.
    pub fn k_head_span(&mut self, n: usize) -> Subspace {
        let k_in_e: Vec<Vector> =
            self.cd.k.basis.basis().iter().map(|v| self.cd.embed_a(v)).collect();
        let full = self.ebar_basis_vectors();
        let mut choices = vec![k_in_e];
        for _ in 1..=n {
            choices.push(full.clone());
        }
        let gens = self.can_span_from_choices(n, &choices);
        Subspace::from_vectors(self.can_space(n).dim(), gens)
    }

    /// Ĵ_n / HĴ_n: the span in X̂_n of classes with some Ā slot in
    /// f⟨h_1, …, h_i⟩ (resp. f̃⟨h_1, …, h_i⟩), taken over the blocks with
    /// s < n, embedded into the degree-n block space; `limit_l` restricts to
    /// blocks X̂_{n−l,l} with l ≤ limit_l.
    pub fn jhat(
        &mut self,
        n: usize,
        gens_h: &[Vector],
        tilde: bool,
        limit_l: Option<usize>,
    ) -> Subspace {
        let span_a = if tilde {
            ftilde_span(&self.cd, gens_h, ActingScope::FullHopf)
        } else {
            f_span(&self.cd, gens_h)
        };
        let special_abar: Vec<Vector> =
            span_a.basis().iter().map(|a| self.abar.project(a)).collect();
        let block = self.xhat_block(n);
        let field = self.field;
        let mut gens = Vec::new();
        for (bi, key) in block.keys.clone().iter().enumerate() {
            let (r, s) = *key;
            if s >= n || r == 0 {
                continue;
            }
            if let Some(lim) = limit_l {
                if s > lim {
                    continue;
                }
            }
            let space = self.xhat_space(r, s);
            let abar_full: Vec<Vector> =
                (0..self.abar.dim).map(|i| Vector::unit(self.abar.dim, i, field)).collect();
            let hbar_full: Vec<Vector> =
                (0..self.hbar.dim).map(|i| Vector::unit(self.hbar.dim, i, field)).collect();
            for special in 0..r {
                let mut choices: Vec<Vec<Vector>> = vec![self.e_basis_vectors()];
                for _ in 0..s {
                    choices.push(hbar_full.clone());
                }
                for t in 0..r {
                    choices.push(if t == special {
                        special_abar.clone()
                    } else {
                        abar_full.clone()
                    });
                }
                let mut stack: Vec<Vec<Vector>> = vec![Vec::new()];
                for ch in &choices {
                    let mut next = Vec::new();
                    for partial in &stack {
                        for c in ch {
                            if c.is_zero() {
                                continue;
                            }
                            let mut p = partial.clone();
                            p.push(c.clone());
                            next.push(p);
                        }
                    }
                    stack = next;
                }
                for factors in stack {
                    let v = space.class_of_tensor(&factors.iter().collect::<Vec<_>>());
                    if !v.is_zero() {
                        gens.push(block.embed(key, &v));
                    }
                }
            }
            let _ = bi;
        }
        Subspace::from_vectors(block.total, gens)
    }

    /// F^i(X̂_n): the blocks with s ≤ i, as a subspace of the block space.
    pub fn xhat_filtration(&mut self, n: usize, i: usize) -> Subspace {
        let block = self.xhat_block(n);
        let field = self.field;
        let mut gens = Vec::new();
        for (bi, key) in block.keys.iter().enumerate() {
            if key.1 > i {
                continue;
            }
            for j in 0..block.dims[bi] {
                gens.push(Vector::unit(block.total, block.offsets[bi] + j, field));
            }
        }
        Subspace::from_vectors(block.total, gens)
    }

    /// η̂ on the block X̂_{n−i,i}: [a_0γ(h_0) ⊗_A γ̄(h_{1i}) ⊗ ā] ↦
    /// [γ̄(h_{0i}) ⊗ ā ⊗ a_0].
    pub fn eta_hat(&mut self, n: usize, i: usize) -> Matrix {
        let r = n - i;
        let src = self.xhat_space(r, i);
        let tgt = self.xhat_space(r + 1, i);
        let field = self.field;
        src.induce_map(tgt.dim(), true, &mut |idx: &[usize]| {
            let (a0, h0) = self.cd.e_split(idx[0]);
            let abar_new = self.abar.project(&Vector::unit(self.cd.a.dim, a0, field));
            let mut factors =
                vec![self.cd.gamma(&Vector::unit(self.cd.h.dim(), h0, field))];
            for slot in 1..=i {
                factors.push(Vector::unit(self.hbar.dim, idx[slot], field));
            }
            for t in 1..=r {
                factors.push(Vector::unit(self.abar.dim, idx[i + t], field));
            }
            factors.push(abar_new);
            tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>())
        })
        .expect("η̂ descends")
    }

    /// t̂_H on the block X̂_{n−i,i} (i ≥ 1): rotation by the last H̄ slot with
    /// its first Sweedler leg acting on the Ā tuple.
    pub fn t_hat_h(&mut self, n: usize, i: usize) -> Matrix {
        assert!(i >= 1);
        let r = n - i;
        let src = self.xhat_space(r, i);
        let field = self.field;
        let src2 = src.clone();
        src.induce_map(src2.dim(), true, &mut |idx: &[usize]| {
            let hi = self.hbar_sect(idx[i]);
            let tuple: Vec<Vector> = (1..=r).map(|t| self.abar_sect(idx[i + t])).collect();
            let mut out = Vector::zero(src2.dim());
            for (legs, c) in self.cd.h.sweedler_vec(&hi, 2) {
                // head: γ(h_i⁽²⁾) · a_0, then slot [h_0]
                let (a0, h0) = self.cd.e_split(idx[0]);
                let head = self.cd.multiply(
                    &self.cd.gamma(&Vector::unit(self.cd.h.dim(), legs[1], field)),
                    &self.cd.embed_a(&Vector::unit(self.cd.a.dim, a0, field)),
                );
                let slot1 = self.hbar.project(&Vector::unit(self.cd.h.dim(), h0, field));
                let leg1 = Vector::unit(self.cd.h.dim(), legs[0], field);
                for (ca, acted) in self.cd.act_tuple(&tuple, &leg1) {
                    let mut factors = vec![head.clone(), slot1.clone()];
                    let mut ok = !slot1.is_zero() || i == 0;
                    for slot in 1..i {
                        factors.push(Vector::unit(self.hbar.dim, idx[slot], field));
                    }
                    for a in &acted {
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
                    out.axpy(&c.mul(&ca), &src2.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
                }
            }
            out
        })
        .expect("t̂_H descends")
    }

    /// t̂_A on the block X̂_{n+1−i,i}: rotation of the Ā tuple through the
    /// iterated action of the whole H̄ prefix.
    pub fn t_hat_a(&mut self, n: usize, i: usize) -> Matrix {
        let r = n + 1 - i;
        assert!(r >= 1);
        let src = self.xhat_space(r, i);
        let field = self.field;
        let src2 = src.clone();
        src.induce_map(src2.dim(), true, &mut |idx: &[usize]| {
            let (a0, h0) = self.cd.e_split(idx[0]);
            let a0v = Vector::unit(self.cd.a.dim, a0, field);
            let a1 = self.abar_sect(idx[i + 1]);
            // Sweedler each of h_0, …, h_i into two legs
            let mut out = Vector::zero(src2.dim());
            let h0v = Vector::unit(self.cd.h.dim(), h0, field);
            let mut leg_sets: Vec<(Scalar, Vec<usize>, Vec<usize>)> =
                vec![(field.one(), Vec::new(), Vec::new())];
            let mut hvecs = vec![h0v];
            for slot in 1..=i {
                hvecs.push(self.hbar_sect(idx[slot]));
            }
            for hv in &hvecs {
                let mut next = Vec::new();
                for (c, l1s, l2s) in &leg_sets {
                    for (legs, ch) in self.cd.h.sweedler_vec(hv, 2) {
                        let mut a = l1s.clone();
                        let mut b = l2s.clone();
                        a.push(legs[0]);
                        b.push(legs[1]);
                        next.push((c.mul(&ch), a, b));
                    }
                }
                leg_sets = next;
            }
            for (c, l1s, l2s) in leg_sets {
                // a_1^{h_{0i}⁽¹⁾}: iterated action, rightmost (h_i) first
                let mut acted = a1.clone();
                for leg in l1s.iter().rev() {
                    acted = self.cd.action.act_basis(*leg, &acted);
                }
                let appended =
                    self.abar.project(&self.cd.a.mul_vec(&a0v, &acted));
                let head = self.cd.gamma(&Vector::unit(self.cd.h.dim(), l2s[0], field));
                let mut factors = vec![head];
                let mut ok = true;
                for leg in &l2s[1..] {
                    let ph = self.hbar.project(&Vector::unit(self.cd.h.dim(), *leg, field));
                    if ph.is_zero() {
                        ok = false;
                        break;
                    }
                    factors.push(ph);
                }
                if !ok {
                    continue;
                }
                for t in 2..=r {
                    factors.push(Vector::unit(self.abar.dim, idx[i + t], field));
                }
                factors.push(appended);
                out.axpy(&c, &src2.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
            }
            out
        })
        .expect("t̂_A descends")
    }

    /// "1 ⊗_A −": X̂_{rs} → X̂_{r,s+1}, prepending the unit and pushing the
    /// head into the ⊗_A block.
    pub fn one_tensor_a(&mut self, r: usize, s: usize) -> Matrix {
        let src = self.xhat_space(r, s);
        let tgt = self.xhat_space(r, s + 1);
        let field = self.field;
        src.induce_map(tgt.dim(), true, &mut |idx: &[usize]| {
            let (a0, h0) = self.cd.e_split(idx[0]);
            let slot = self.hbar.project(&Vector::unit(self.cd.h.dim(), h0, field));
            if slot.is_zero() {
                return Vector::zero(tgt.dim());
            }
            let head = self.cd.embed_a(&Vector::unit(self.cd.a.dim, a0, field));
            let mut factors = vec![head, slot];
            for s2 in 1..=s {
                factors.push(Vector::unit(self.hbar.dim, idx[s2], field));
            }
            for t in 1..=r {
                factors.push(Vector::unit(self.abar.dim, idx[s + t], field));
            }
            tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>())
        })
        .expect("1 ⊗_A − descends")
    }

    /// The full congruence suite for Propositions 2.1, 2.2, 2.5 and 2.6 at
    /// one total degree.
    pub fn congruence_suite(&mut self, n: usize, seed: u64) -> CongruenceReport {
        let mut checks = Vec::new();
        checks.push(self.check_prop21(n, seed));
        checks.push(self.check_prop22(n, seed));
        checks.extend(self.check_prop25(n, seed));
        checks.extend(self.check_prop26(n, seed));
        CongruenceReport { seed, degree: n, checks }
    }

    /// Proposition 2.1: φ̂([a_0γ(h_0) ⊗_A γ̄(h_{1i}) ⊗ ā]) ≡
    /// [a_0γ(h_0) ⊗ γ(h_{1i}) ∗ ā] modulo F^{i−1} ∩ V̂_n ∩ Ĉ_n(h_1, …, h_i).
    fn check_prop21(&mut self, n: usize, seed: u64) -> PropositionCheck {
        let mut failures = Vec::new();
        let mut count = 0;
        let mut exhaustive = true;
        let can = self.can_space(n).clone();
        for i in 0..=n {
            let r = n - i;
            let space = self.xhat_space(r, i);
            let phi = self.phi_hat(n);
            let block = self.xhat_block(n);
            let (picks, exh) = sample_indices(space.shape.total, seed ^ (i as u64));
            exhaustive &= exh;
            let vhat = self.vhat(n);
            let filt: Vec<Subspace> =
                (0..=n).map(|lvl| self.can_filtration(n, lvl)).collect();
            for code in picks {
                let idx = space.shape.decode(code);
                let x = space.class_of(&idx);
                if x.is_zero() {
                    continue;
                }
                count += 1;
                let img = phi.apply(&block.embed(&(r, i), &x));
                // main term: head ⊗ (γ(h_{1i}) ∗ ā)
                let hs: Vec<Vector> = (1..=i).map(|s| self.hbar_sect(idx[s])).collect();
                let avs: Vec<Vector> = (1..=r).map(|t| self.abar_sect(idx[i + t])).collect();
                let head = Vector::unit(self.e_dim(), idx[0], self.field);
                let mut main = Vector::zero(can.dim());
                for (c, tuple) in self.star_product(&hs, &avs) {
                    let mut factors = vec![head.clone()];
                    factors.extend(tuple.iter().map(|e| self.ebar.project(e)));
                    main.axpy(&c, &can.class_of_tensor(&factors.iter().collect::<Vec<_>>()));
                }
                let diff = img.sub(&main);
                if diff.is_zero() {
                    continue;
                }
                if i == 0 {
                    failures.push(format!(
                        "Prop 2.1 at (n, i) = ({n}, 0): remainder must vanish, generator {code}"
                    ));
                    continue;
                }
                let chat = self.chat(n, &hs);
                let span = filt[i - 1].intersect(&vhat).intersect(&chat);
                if !span.member(&diff) {
                    failures.push(format!(
                        "Prop 2.1 at (n, i) = ({n}, {i}): remainder outside the span, generator {code}"
                    ));
                }
            }
        }
        PropositionCheck {
            name: format!("prop_2_1 at degree {n}"),
            generators_checked: count,
            exhaustive,
            failures,
        }
    }

    /// Proposition 2.2: for x = [1 ⊗ x_{1n}] ∈ F^i ∩ V̂′_n,
    /// ω̂(x) ∈ (K ⊗ Ē^{⊗n+1}) ∩ F^i ∩ V̂_{n+1}.
    fn check_prop22(&mut self, n: usize, _seed: u64) -> PropositionCheck {
        let mut failures = Vec::new();
        let mut count = 0;
        let omega = self.omega_hat(n + 1);
        let khead = self.k_head_span(n + 1);
        let vhat_up = self.vhat(n + 1);
        let can = self.can_space(n).clone();
        // spanning generators of F^i ∩ V̂′: one free slot, n − i slots in A,
        // the rest in 𝓗
        let a_gens = self.a_in_ebar();
        let h_gens: Vec<Vector> = (0..self.cd.h.dim())
            .map(|i| self.ebar.project(&self.cd.gamma(&Vector::unit(self.cd.h.dim(), i, self.field))))
            .collect();
        let free = self.ebar_basis_vectors();
        for i in 0..=n {
            let filt_up = self.can_filtration(n + 1, i);
            let span = khead.intersect(&filt_up).intersect(&vhat_up);
            for a_slots in super::comparison::subsets_of_size(n, n - i) {
                for free_slot in 0..=n {
                    if free_slot > 0 && a_slots.contains(&free_slot) {
                        continue;
                    }
                    let mut choices: Vec<Vec<Vector>> = vec![vec![self.cd.e.unit.clone()]];
                    for slot in 1..=n {
                        choices.push(if a_slots.contains(&slot) {
                            a_gens.clone()
                        } else if slot == free_slot {
                            free.clone()
                        } else {
                            h_gens.clone()
                        });
                    }
                    let gens = self.can_span_from_choices(n, &choices);
                    for g in gens {
                        count += 1;
                        let img = omega.apply(&g);
                        if !span.member(&img) {
                            failures.push(format!(
                                "Prop 2.2 at (n, i) = ({n}, {i}): ω̂ image outside span"
                            ));
                        }
                    }
                }
            }
        }
        let _ = can;
        PropositionCheck {
            name: format!("prop_2_2 at degree {n}"),
            generators_checked: count,
            exhaustive: true,
            failures,
        }
    }

    /// Proposition 2.5, items (1)–(6): the structure of ψ̂ on tensors with a
    /// γ-prefix shape.
    fn check_prop25(&mut self, n: usize, _seed: u64) -> Vec<PropositionCheck> {
        let mut out = Vec::new();
        let can = self.can_space(n).clone();
        let psi = self.psi_hat(n);
        let block = self.xhat_block(n);
        let field = self.field;
        let hdim = self.cd.h.dim();

        // item (1): exact equality on γ-prefix generators
        {
            let mut failures = Vec::new();
            let mut count = 0;
            for i in 0..=n {
                let r = n - i;
                let tgt = self.xhat_space(r, i);
                for e0 in 0..self.e_dim() {
                    for hcodes in super::comparison::tuples_pub(self.hbar.dim, i) {
                        for acodes in super::comparison::tuples_pub(self.abar.dim, r) {
                            count += 1;
                            let mut factors =
                                vec![Vector::unit(self.e_dim(), e0, field)];
                            for &hc in &hcodes {
                                factors.push(
                                    self.ebar.project(&self.cd.gamma(&self.hbar_sect(hc))),
                                );
                            }
                            for &ac in &acodes {
                                factors.push(
                                    self.ebar.project(&self.cd.embed_a(&self.abar_sect(ac))),
                                );
                            }
                            let x = can.class_of_tensor(&factors.iter().collect::<Vec<_>>());
                            let img = psi.apply(&x);
                            let mut ef = vec![Vector::unit(self.e_dim(), e0, field)];
                            for &hc in &hcodes {
                                ef.push(Vector::unit(self.hbar.dim, hc, field));
                            }
                            for &ac in &acodes {
                                ef.push(Vector::unit(self.abar.dim, ac, field));
                            }
                            let expect = block.embed(
                                &(r, i),
                                &tgt.class_of_tensor(&ef.iter().collect::<Vec<_>>()),
                            );
                            if img != expect {
                                failures.push(format!(
                                    "Prop 2.5 (1) fails at (n, i) = ({n}, {i})"
                                ));
                            }
                        }
                    }
                }
            }
            out.push(PropositionCheck {
                name: format!("prop_2_5_item_1 at degree {n}"),
                generators_checked: count,
                exhaustive: true,
                failures,
            });
        }

        // item (2): ψ̂ vanishes when an A-entry precedes position i within a
        // pure A∪𝓗 tensor of filtration level exactly i
        {
            let mut failures = Vec::new();
            let mut count = 0;
            for i in 1..=n {
                // patterns: exactly n − i slots in A, the rest γ's; at least
                // one A among positions 1..i
                for a_slots in super::comparison::subsets_of_size(n, n - i) {
                    if !a_slots.iter().any(|&j| j <= i) {
                        continue;
                    }
                    let mut choices: Vec<Vec<Vector>> = vec![self.e_basis_vectors()];
                    for slot in 1..=n {
                        choices.push(if a_slots.contains(&slot) {
                            self.a_in_ebar()
                        } else {
                            (0..hdim)
                                .map(|hh| {
                                    self.ebar.project(
                                        &self.cd.gamma(&Vector::unit(hdim, hh, field)),
                                    )
                                })
                                .collect()
                        });
                    }
                    for g in self.can_span_from_choices(n, &choices) {
                        count += 1;
                        if !psi.apply(&g).is_zero() {
                            failures.push(format!(
                                "Prop 2.5 (2) fails at (n, i) = ({n}, {i})"
                            ));
                        }
                    }
                }
            }
            out.push(PropositionCheck {
                name: format!("prop_2_5_item_2 at degree {n}"),
                generators_checked: count,
                exhaustive: true,
                failures,
            });
        }

        // items (3)–(5): congruences modulo ⊕_{l ≤ i−2} X̂_{n−l,l} ∩ Ĵ_n
        {
            let mut failures = Vec::new();
            let mut count = 0;
            for i in 1..=n {
                for e0 in 0..self.e_dim() {
                    for hcodes in super::comparison::tuples_pub(self.hbar.dim, i) {
                        for ai in 0..self.cd.a.dim {
                            for acodes in super::comparison::tuples_pub(self.abar.dim, n - i) {
                                count += 1;
                                let hs: Vec<Vector> =
                                    hcodes.iter().map(|&hc| self.hbar_sect(hc)).collect();
                                if let Some(msg) = self.prop25_item3(
                                    n, i, e0, &hcodes, &hs, ai, &acodes, &can, &psi, &block,
                                ) {
                                    failures.push(msg);
                                }
                            }
                        }
                    }
                }
            }
            out.push(PropositionCheck {
                name: format!("prop_2_5_item_3 at degree {n}"),
                generators_checked: count,
                exhaustive: true,
                failures,
            });
        }

        // item (4): an interior a_jγ(h_j) inside the γ-prefix (j < i)
        {
            let mut failures = Vec::new();
            let mut count = 0;
            for i in 2..=n {
                for j in 1..i {
                    for e0 in 0..self.e_dim() {
                        for hcodes in super::comparison::tuples_pub(self.hbar.dim, i) {
                            for ai in 0..self.cd.a.dim {
                                for acodes in
                                    super::comparison::tuples_pub(self.abar.dim, n - i)
                                {
                                    count += 1;
                                    let hs: Vec<Vector> =
                                        hcodes.iter().map(|&hc| self.hbar_sect(hc)).collect();
                                    let aiv = Vector::unit(self.cd.a.dim, ai, field);
                                    let mut factors =
                                        vec![Vector::unit(self.e_dim(), e0, field)];
                                    for hc in &hs[..j - 1] {
                                        factors.push(self.ebar.project(&self.cd.gamma(hc)));
                                    }
                                    let aghj = self.cd.multiply(
                                        &self.cd.embed_a(&aiv),
                                        &self.cd.gamma(&hs[j - 1]),
                                    );
                                    factors.push(self.ebar.project(&aghj));
                                    for hc in &hs[j..] {
                                        factors.push(self.ebar.project(&self.cd.gamma(hc)));
                                    }
                                    for &ac in &acodes {
                                        factors.push(self.ebar.project(
                                            &self.cd.embed_a(&self.abar_sect(ac)),
                                        ));
                                    }
                                    let x =
                                        can.class_of_tensor(&factors.iter().collect::<Vec<_>>());
                                    if x.is_zero() {
                                        continue;
                                    }
                                    let img = psi.apply(&x);
                                    // main: a_j pushed through h̄_{1,j−1}
                                    let main = {
                                        let space = self.xhat_space(n - i, i);
                                        let mut pcode = e0;
                                        for &hc in &hcodes[..j - 1] {
                                            pcode = pcode * self.hbar.dim + hc;
                                        }
                                        let prefix = self.ws_push(j - 1, pcode, &aiv);
                                        let mut groups = vec![
                                            (j, prefix),
                                            (1, self.hbar.project(&hs[j - 1])),
                                        ];
                                        for &hc in &hcodes[j..] {
                                            groups.push((
                                                1,
                                                Vector::unit(self.hbar.dim, hc, field),
                                            ));
                                        }
                                        for &ac in &acodes {
                                            groups.push((
                                                1,
                                                Vector::unit(self.abar.dim, ac, field),
                                            ));
                                        }
                                        let amb = super::splice(&space.shape, &groups);
                                        block.embed(&(n - i, i), &space.quot.project(&amb))
                                    };
                                    let diff = img.sub(&main);
                                    if diff.is_zero() {
                                        continue;
                                    }
                                    let span = self.jhat(n, &hs, false, Some(i - 2));
                                    if !span.member(&diff) {
                                        failures.push(format!(
                                            "Prop 2.5 (4) at (n, i, j) = ({n}, {i}, {j})"
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            out.push(PropositionCheck {
                name: format!("prop_2_5_item_4 at degree {n}"),
                generators_checked: count,
                exhaustive: true,
                failures,
            });
        }

        // item (5): an a_jγ(h_j) after the γ-prefix and an A-run (j > i)
        {
            let mut failures = Vec::new();
            let mut count = 0;
            for i in 1..=n {
                for j in (i + 1)..=n {
                    for e0 in 0..self.e_dim() {
                        for hcodes in super::comparison::tuples_pub(self.hbar.dim, i) {
                            for ai in 0..self.cd.a.dim {
                                for acodes in
                                    super::comparison::tuples_pub(self.abar.dim, n - i)
                                {
                                    count += 1;
                                    let hs: Vec<Vector> =
                                        hcodes.iter().map(|&hc| self.hbar_sect(hc)).collect();
                                    let aiv = Vector::unit(self.cd.a.dim, ai, field);
                                    // middle run a_i..a_{j−1} and tail a_{j+1..n}
                                    let run = &acodes[..j - i];
                                    let tail = &acodes[j - i..];
                                    let mut factors =
                                        vec![Vector::unit(self.e_dim(), e0, field)];
                                    for hc in &hs[..i - 1] {
                                        factors.push(self.ebar.project(&self.cd.gamma(hc)));
                                    }
                                    for &ac in run {
                                        factors.push(self.ebar.project(
                                            &self.cd.embed_a(&self.abar_sect(ac)),
                                        ));
                                    }
                                    let aghj = self.cd.multiply(
                                        &self.cd.embed_a(&aiv),
                                        &self.cd.gamma(&hs[i - 1]),
                                    );
                                    factors.push(self.ebar.project(&aghj));
                                    for &ac in tail {
                                        factors.push(self.ebar.project(
                                            &self.cd.embed_a(&self.abar_sect(ac)),
                                        ));
                                    }
                                    let x =
                                        can.class_of_tensor(&factors.iter().collect::<Vec<_>>());
                                    if x.is_zero() {
                                        continue;
                                    }
                                    let img = psi.apply(&x);
                                    // main: [γ(h⁽²⁾) a_0γ(h_0) ⊗_A γ̄ ⊗ a_run, a_j ⊗ tail^{h⁽¹⁾}]
                                    let main = {
                                        let space = self.xhat_space(n - i + 1, i - 1);
                                        let mut acc = Vector::zero(block.total);
                                        let tail_vs: Vec<Vector> = tail
                                            .iter()
                                            .map(|&ac| self.abar_sect(ac))
                                            .collect();
                                        for (legs, c) in
                                            self.cd.h.sweedler_vec(&hs[i - 1], 2)
                                        {
                                            let head = self.cd.multiply(
                                                &self.cd.gamma(&Vector::unit(
                                                    self.cd.h.dim(),
                                                    legs[1],
                                                    field,
                                                )),
                                                &Vector::unit(self.e_dim(), e0, field),
                                            );
                                            let leg1 = Vector::unit(
                                                self.cd.h.dim(),
                                                legs[0],
                                                field,
                                            );
                                            for (ca, acted) in
                                                self.cd.act_tuple(&tail_vs, &leg1)
                                            {
                                                let mut fs = vec![head.clone()];
                                                for &hc in &hcodes[..i - 1] {
                                                    fs.push(Vector::unit(
                                                        self.hbar.dim,
                                                        hc,
                                                        field,
                                                    ));
                                                }
                                                for &ac in run {
                                                    fs.push(Vector::unit(
                                                        self.abar.dim,
                                                        ac,
                                                        field,
                                                    ));
                                                }
                                                fs.push(self.abar.project(&aiv));
                                                let mut ok = true;
                                                for a in &acted {
                                                    let pa = self.abar.project(a);
                                                    if pa.is_zero() {
                                                        ok = false;
                                                        break;
                                                    }
                                                    fs.push(pa);
                                                }
                                                if !ok {
                                                    continue;
                                                }
                                                acc.axpy(
                                                    &c.mul(&ca),
                                                    &block.embed(
                                                        &(n - i + 1, i - 1),
                                                        &space.class_of_tensor(
                                                            &fs.iter().collect::<Vec<_>>(),
                                                        ),
                                                    ),
                                                );
                                            }
                                        }
                                        acc
                                    };
                                    let diff = img.sub(&main);
                                    if diff.is_zero() {
                                        continue;
                                    }
                                    if i < 2 {
                                        failures.push(format!(
                                            "Prop 2.5 (5) at (n, i, j) = ({n}, {i}, {j}): nonzero remainder"
                                        ));
                                        continue;
                                    }
                                    let mut gens_h: Vec<Vector> = hs[..i - 1].to_vec();
                                    gens_h.push(hs[i - 1].clone());
                                    let span = self.jhat(n, &gens_h, false, Some(i - 2));
                                    if !span.member(&diff) {
                                        failures.push(format!(
                                            "Prop 2.5 (5) at (n, i, j) = ({n}, {i}, {j})"
                                        ));
                                    }
                                }
                            }
                        }
                    }
                }
            }
            out.push(PropositionCheck {
                name: format!("prop_2_5_item_5 at degree {n}"),
                generators_checked: count,
                exhaustive: true,
                failures,
            });
        }

        // item (6): one entry outside A ∪ 𝓗 allowed; an A-entry before an
        // 𝓗-entry still kills ψ̂
        {
            let mut failures = Vec::new();
            let mut count = 0;
            let full = self.ebar_basis_vectors();
            let a_gens = self.a_in_ebar();
            let h_gens: Vec<Vector> = (0..hdim)
                .map(|g| {
                    self.ebar.project(&self.cd.gamma(&Vector::unit(hdim, g, field)))
                })
                .collect();
            for i in 1..=n {
                // patterns over {A, H, free} with exactly n − i A-slots,
                // at most one free slot, and some A before some H
                for a_slots in super::comparison::subsets_of_size(n, n - i) {
                    for free_slot in 0..=n {
                        if free_slot > 0 && a_slots.contains(&free_slot) {
                            continue;
                        }
                        let h_positions: Vec<usize> = (1..=n)
                            .filter(|p| !a_slots.contains(p) && *p != free_slot)
                            .collect();
                        let has_a_before_h = a_slots
                            .iter()
                            .any(|&ja| h_positions.iter().any(|&jh| ja < jh));
                        if !has_a_before_h {
                            continue;
                        }
                        let mut choices: Vec<Vec<Vector>> = vec![self.e_basis_vectors()];
                        for slot in 1..=n {
                            choices.push(if a_slots.contains(&slot) {
                                a_gens.clone()
                            } else if slot == free_slot {
                                full.clone()
                            } else {
                                h_gens.clone()
                            });
                        }
                        for g in self.can_span_from_choices(n, &choices) {
                            count += 1;
                            if !psi.apply(&g).is_zero() {
                                failures.push(format!(
                                    "Prop 2.5 (6) at (n, i) = ({n}, {i})"
                                ));
                            }
                        }
                    }
                }
            }
            out.push(PropositionCheck {
                name: format!("prop_2_5_item_6 at degree {n}"),
                generators_checked: count,
                exhaustive: true,
                failures,
            });
        }
        out
    }

    /// Item (3) of Proposition 2.5 on one generator: x has a γ-prefix of
    /// length i − 1, then a_i γ(h_i), then an A-tail.
    #[allow(clippy::too_many_arguments)]
    fn prop25_item3(
        &mut self,
        n: usize,
        i: usize,
        e0: usize,
        hcodes: &[usize],
        hs: &[Vector],
        ai: usize,
        acodes: &[usize],
        can: &crate::exactlin::TensorSpace,
        psi: &Matrix,
        block: &crate::exactlin::BlockSpace<(usize, usize)>,
    ) -> Option<String> {
        let field = self.field;
        let aiv = Vector::unit(self.cd.a.dim, ai, field);
        let mut factors = vec![Vector::unit(self.e_dim(), e0, field)];
        for &hc in &hcodes[..i - 1] {
            factors.push(self.ebar.project(&self.cd.gamma(&self.hbar_sect(hc))));
        }
        let aghi = self.cd.multiply(&self.cd.embed_a(&aiv), &self.cd.gamma(&hs[i - 1]));
        factors.push(self.ebar.project(&aghi));
        for &ac in acodes {
            factors.push(self.ebar.project(&self.cd.embed_a(&self.abar_sect(ac))));
        }
        let x = can.class_of_tensor(&factors.iter().collect::<Vec<_>>());
        if x.is_zero() {
            return None;
        }
        let img = psi.apply(&x);
        // main term 1: [a_0γ(h_0) ⊗_A γ̄(h_{1,i−1}) ⊗_A a_iγ(h_i) ⊗ ā]
        let t1 = {
            let space = self.xhat_space(n - i, i);
            // a_i pushes left through h̄_{1,i−1}
            let mut pcode = e0;
            for &hc in &hcodes[..i - 1] {
                pcode = pcode * self.hbar.dim + hc;
            }
            let prefix = self.ws_push(i - 1, pcode, &aiv);
            let slot = self.hbar.project(&hs[i - 1]);
            let mut groups = vec![(i, prefix), (1, slot)];
            for &ac in acodes {
                groups.push((1, Vector::unit(self.abar.dim, ac, field)));
            }
            let amb = super::splice(&space.shape, &groups);
            block.embed(&(n - i, i), &space.quot.project(&amb))
        };
        // main term 2: [γ(h_i⁽²⁾) a_0 γ(h_0) ⊗_A γ̄(h_{1,i−1}) ⊗ a_i ⊗ ā^{h_i⁽¹⁾}]
        let t2 = {
            let space = self.xhat_space(n - i + 1, i - 1);
            let mut acc = Vector::zero(block.total);
            let tuple: Vec<Vector> = acodes.iter().map(|&ac| self.abar_sect(ac)).collect();
            for (legs, c) in self.cd.h.sweedler_vec(&hs[i - 1], 2) {
                let head = self.cd.multiply(
                    &self.cd.gamma(&Vector::unit(self.cd.h.dim(), legs[1], field)),
                    &Vector::unit(self.e_dim(), e0, field),
                );
                let leg1 = Vector::unit(self.cd.h.dim(), legs[0], field);
                for (ca, acted) in self.cd.act_tuple(&tuple, &leg1) {
                    let mut fs = vec![head.clone()];
                    for &hc in &hcodes[..i - 1] {
                        fs.push(Vector::unit(self.hbar.dim, hc, field));
                    }
                    fs.push(self.abar.project(&aiv));
                    let mut ok = true;
                    for a in &acted {
                        let pa = self.abar.project(a);
                        if pa.is_zero() {
                            ok = false;
                            break;
                        }
                        fs.push(pa);
                    }
                    if !ok {
                        continue;
                    }
                    acc.axpy(
                        &c.mul(&ca),
                        &block.embed(
                            &(n - i + 1, i - 1),
                            &space.class_of_tensor(&fs.iter().collect::<Vec<_>>()),
                        ),
                    );
                }
            }
            acc
        };
        let diff = img.sub(&t1).sub(&t2);
        if diff.is_zero() {
            return None;
        }
        if i < 2 {
            return Some(format!("Prop 2.5 (3) at (n, i) = ({n}, {i}): nonzero remainder"));
        }
        let span = self.jhat(n, hs, false, Some(i - 2));
        if span.member(&diff) {
            None
        } else {
            Some(format!("Prop 2.5 (3) at (n, i) = ({n}, {i}): remainder outside Ĵ span"))
        }
    }

    /// Proposition 2.6: the structure of D̂ through η̂, t̂_H, t̂_A.
    fn check_prop26(&mut self, n: usize, _seed: u64) -> Vec<PropositionCheck> {
        let mut out = Vec::new();
        let field = self.field;
        let dd = self.dd_hat(n);
        let block = self.xhat_block(n);
        let block_up = self.xhat_block(n + 1);

        let mut failures1 = Vec::new();
        let mut failures2 = Vec::new();
        let mut count1 = 0;
        let mut count2 = 0;
        for i in 0..=n {
            let r = n - i;
            let space = self.xhat_space(r, i);
            let eta = self.eta_hat(n, i);
            let ta = self.t_hat_a(n, i);
            let th = if i >= 1 { Some(self.t_hat_h(n, i)) } else { None };
            let one_a = self.one_tensor_a(r, i);
            for code in 0..space.shape.total {
                let idx = space.shape.decode(code);
                let x = space.class_of(&idx);
                if x.is_zero() {
                    continue;
                }
                let (_, h0) = self.cd.e_split(idx[0]);
                let h0_in_hbar =
                    !self.hbar.project(&Vector::unit(self.cd.h.dim(), h0, field)).is_zero();
                let hs: Vec<Vector> = (1..=i).map(|s| self.hbar_sect(idx[s])).collect();
                let img = dd.apply(&block.embed(&(r, i), &x));
                // second sum: Σ_j (−1)^{j(n−i)+n} t̂_A^j ∘ η̂(x)
                let mut second = Vector::zero(block_up.total);
                {
                    let mut cur = eta.apply(&x);
                    for j in 0..=r {
                        let sign = sign_of(j * (n - i) + n, field);
                        second.axpy(&sign, &block_up.embed(&(r + 1, i), &cur));
                        if j < r {
                            cur = ta.apply(&cur);
                        }
                    }
                }
                if !h0_in_hbar {
                    // item (1): head in A
                    count1 += 1;
                    let diff = img.sub(&second);
                    if !diff.is_zero() {
                        if i == 0 {
                            failures1.push(format!(
                                "Prop 2.6 (1) at (n, i) = ({n}, 0): exact equality fails"
                            ));
                            continue;
                        }
                        let filt = self.xhat_filtration(n + 1, i - 1);
                        let hj = self.jhat(n + 1, &hs, true, None);
                        if !filt.intersect(&hj).member(&diff) {
                            failures1.push(format!(
                                "Prop 2.6 (1) at (n, i) = ({n}, {i}): remainder outside span"
                            ));
                        }
                    }
                } else {
                    // item (2): head involves H̄; needs the first sum too
                    count2 += 1;
                    let mut first = Vector::zero(block_up.total);
                    if let Some(th) = &th {
                        let mut cur = x.clone();
                        for j in 0..=i {
                            let sign = sign_of(j * i, field);
                            first.axpy(&sign, &block_up.embed(&(r, i + 1), &one_a.apply(&cur)));
                            if j < i {
                                cur = th.apply(&cur);
                            }
                        }
                    } else {
                        first = block_up.embed(&(r, i + 1), &one_a.apply(&x));
                    }
                    let diff = img.sub(&first).sub(&second);
                    if !diff.is_zero() {
                        let filt = self.xhat_filtration(n + 1, i);
                        let hj = self.jhat(n + 1, &hs, true, None);
                        if !filt.intersect(&hj).member(&diff) {
                            failures2.push(format!(
                                "Prop 2.6 (2) at (n, i) = ({n}, {i}): remainder outside span"
                            ));
                        }
                    }
                }
            }
        }
        out.push(PropositionCheck {
            name: format!("prop_2_6_item_1 at degree {n}"),
            generators_checked: count1,
            exhaustive: true,
            failures: failures1,
        });
        out.push(PropositionCheck {
            name: format!("prop_2_6_item_2 at degree {n}"),
            generators_checked: count2,
            exhaustive: true,
            failures: failures2,
        });
        out
    }

    /// Theorem 1.4's range statement: for l ≥ 2, d^l maps the generator
    /// 1 ⊗ γ̄(h̄s) ⊗ ā ⊗ 1 into the E-subbimodule spanned by tensors with one
    /// Ā slot in f⟨h̄s⟩ and l − 2 further slots in f̃⟨h̄s⟩.
    pub fn check_dl_range(&mut self, r: usize, s: usize, l: usize) -> bool {
        assert!(l >= 2 && l <= s);
        let gen = self.d_gen_matrix(r, s, l);
        let src = self.g_space(r, s);
        let (tr, ts) = (r + l - 1, s - l);
        let tgt = self.x_space(tr, ts);
        let field = self.field;
        for code in 0..src.shape.total {
            let idx = src.shape.decode(code);
            let g = src.class_of(&idx);
            if g.is_zero() {
                continue;
            }
            let img = gen.apply(&g);
            if img.is_zero() {
                continue;
            }
            let hs: Vec<Vector> = (1..=s).map(|ss| self.hbar_sect(idx[ss])).collect();
            let fsp = f_span(&self.cd, &hs);
            let ftsp = ftilde_span(&self.cd, &hs, ActingScope::Generated);
            let f_abar: Vec<Vector> =
                fsp.basis().iter().map(|a| self.abar.project(a)).collect();
            let ft_abar: Vec<Vector> =
                ftsp.basis().iter().map(|a| self.abar.project(a)).collect();
            let abar_full: Vec<Vector> =
                (0..self.abar.dim).map(|t| Vector::unit(self.abar.dim, t, field)).collect();
            let hbar_full: Vec<Vector> =
                (0..self.hbar.dim).map(|t| Vector::unit(self.hbar.dim, t, field)).collect();
            let e_full = self.e_basis_vectors();
            let mut gens = Vec::new();
            // choose the f-slot and l − 2 of the remaining slots for f̃
            for fslot in 0..tr {
                let others: Vec<usize> = (0..tr).filter(|&t| t != fslot).collect();
                for ft_slots in choose(&others, l - 2) {
                    let mut choices: Vec<Vec<Vector>> = vec![e_full.clone()];
                    for _ in 0..ts {
                        choices.push(hbar_full.clone());
                    }
                    for t in 0..tr {
                        choices.push(if t == fslot {
                            f_abar.clone()
                        } else if ft_slots.contains(&t) {
                            ft_abar.clone()
                        } else {
                            abar_full.clone()
                        });
                    }
                    choices.push(e_full.clone());
                    let mut stack: Vec<Vec<Vector>> = vec![Vec::new()];
                    for ch in &choices {
                        let mut next = Vec::new();
                        for partial in &stack {
                            for c in ch {
                                if c.is_zero() {
                                    continue;
                                }
                                let mut p = partial.clone();
                                p.push(c.clone());
                                next.push(p);
                            }
                        }
                        stack = next;
                    }
                    for factors in stack {
                        let v = tgt.class_of_tensor(&factors.iter().collect::<Vec<_>>());
                        if !v.is_zero() {
                            gens.push(v);
                        }
                    }
                }
            }
            let span = Subspace::from_vectors(tgt.dim(), gens);
            if !span.member(&img) {
                return false;
            }
        }
        true
    }
}

fn choose(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for (pos, &first) in items.iter().enumerate() {
        for mut rest in choose(&items[pos + 1..], k - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::load_fixture;

    fn res_for(name: &str, bound: usize) -> super::super::Resolution {
        let (cd, _) = load_fixture(name);
        super::super::Resolution::new(cd, bound)
    }

    #[test]
    fn star_product_base_cases() {
        let mut res = res_for("z2_smash", 2);
        let g = Vector::unit(2, 1, res.field);
        let x = Vector::unit(2, 1, res.field);
        // s = 0: identity on a-tuples
        let t = res.star_product(&[], &[x.clone()]);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].1[0], res.cd.embed_a(&x));
        // r = 0: γ(h_1) ⊗ … ⊗ γ(h_s)
        let t = res.star_product(&[g.clone(), g.clone()], &[]);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].1, vec![res.cd.gamma(&g), res.cd.gamma(&g)]);
        // s = r = 1 grouplike: γ(g) ∗ a = a^g ⊗ γ(g) − γ(g) ⊗ a … with the
        // recursion's signs: i = 0 gives +γ(g)⊗a? expand once
        let t = res.star_product(&[g.clone()], &[x.clone()]);
        assert_eq!(t.len(), 2);
    }

    #[test]
    fn congruence_suite_passes_on_smash() {
        let mut res = res_for("z2_smash", 4);
        for n in 1..=3usize {
            let report = res.congruence_suite(n, 0xC0FFEE);
            for c in &report.checks {
                assert!(c.ok(), "{} failed: {:?}", c.name, c.failures);
            }
        }
    }

    #[test]
    fn congruence_suite_passes_on_twisted() {
        let mut res = res_for("z2z2_twisted", 4);
        for n in 1..=3usize {
            let report = res.congruence_suite(n, 0xC0FFEE);
            for c in &report.checks {
                assert!(c.ok(), "{} failed: {:?}", c.name, c.failures);
            }
        }
    }

    #[test]
    fn dl_range_membership() {
        let mut res = res_for("z2z2_twisted", 4);
        for s in 2..=4usize {
            for l in 2..=s.min(3) {
                for r in 0..=(4 - s) {
                    assert!(
                        res.check_dl_range(r, s, l),
                        "d^{l} range statement fails at (r, s) = ({r}, {s})"
                    );
                }
            }
        }
    }
}
