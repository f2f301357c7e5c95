//! The tube algebra of a skeletal category: basis, structure constants,
//! involution, trace, Fell-bundle grading, twisting and the theorem check.
//!
//! The basis is the channel decomposition of `⊕ C(S⊗X_j, X_k⊗S)` over the
//! simples; products and involutions are computed by composing tree-basis
//! morphisms with associator moves for every `α` in the defining formulas,
//! never through a pointed shortcut. Pointed data therefore exercises the
//! same engine with exact phases.

use std::collections::HashMap;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

use crate::cohomology::{GroupCochain, GroupoidCochain};
use crate::fusion::{RigidityReport, SkeletalCategory};
use crate::groupoid::{centralizer_cocycle, induce_psi, normalize_psi, Arrow};
use crate::scalar::Scalar;
use crate::trees::{Mor, Word};

#[derive(Debug, Error)]
pub enum TubeError {
    #[error("duality data fails the rigidity check; refusing to build the involution")]
    BadDuality,
    #[error("involution unavailable: category has no duality data")]
    InvolutionUnavailable,
    #[error("unit synthesis failed at basis element {0}")]
    UnitSynthesisFailure(usize),
    #[error("twisting cochain is not a unit-normalized groupoid 2-cocycle on the grading groupoid")]
    BadTwistCocycle,
    #[error("associativity fails at basis triple ({0}, {1}, {2})")]
    AssociativityFailure(usize, usize, usize),
    #[error("Fell grading violated by the product entry ({0}, {1}) → {2}")]
    FellGradingViolation(usize, usize, usize),
    #[error("trace fails to be tracial")]
    TraceLawFailure,
    #[error("involution law fails at basis element {0}")]
    InvolutionLawFailure(usize),
    #[error("operation requires a pointed category")]
    NotPointed,
    #[error("rescaling cochain does not solve δη = φ′_a")]
    BadEta,
    #[error("algebras are not comparable: {0}")]
    NotComparable(String),
    #[error(transparent)]
    Groupoid(#[from] crate::groupoid::GroupoidError),
}

/// One channel of `C(S⊗X_j, X_k⊗S)`: the morphism factoring through `u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TubeBasisElement {
    pub s: usize,
    pub j: usize,
    pub k: usize,
    pub u: usize,
}

pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct TubeAlgebra {
    pub category: Arc<SkeletalCategory>,
    pub basis: Vec<TubeBasisElement>,
    index: HashMap<TubeBasisElement, usize>,
    /// `(i, j) → Σ coeff·e_t`; only nonzero products stored.
    product: HashMap<(usize, usize), SparseVec>,
    /// `i → e_i^#` as a sparse vector; `None` when duality is unavailable.
    involution: Option<Vec<SparseVec>>,
    trace: Vec<Scalar>,
    /// Fell-bundle degree in `Γ ⋉_Ad Γ`: `(γ_S, γ_j)`.
    degree: Vec<Arrow>,
    exact: bool,
}

/// Basis morphism `Y^{k,s}_u ∘ (Y^{s,j}_u)† : (s,j) → (k,s)`.
fn basis_mor(cat: &SkeletalCategory, x: &TubeBasisElement) -> Mor {
    Mor::vertex(cat, x.k, x.s, x.u).compose(&Mor::vertex(cat, x.s, x.j, x.u).dagger())
}

/// All structure constants of `x1 • x2` per the annular product formula:
/// for each `U ⊂ S⊗T` the composite
/// `(1⊗w*) α (f⊗1) α⁻¹ (1⊗f′) α (w⊗1)` read off in the channel basis.
fn product_terms(
    cat: &SkeletalCategory,
    x1: &TubeBasisElement,
    x2: &TubeBasisElement,
) -> Vec<(TubeBasisElement, Scalar)> {
    if x1.j != x2.k {
        return Vec::new();
    }
    let (s, t) = (x1.s, x2.s);
    let (m, k, j) = (x1.k, x1.j, x2.j);
    let f1 = basis_mor(cat, x1);
    let f2 = basis_mor(cat, x2);
    let id_s = Mor::identity(cat, &Word::leaf(s));
    let id_t = Mor::identity(cat, &Word::leaf(t));
    let id_m = Mor::identity(cat, &Word::leaf(m));
    let id_j = Mor::identity(cat, &Word::leaf(j));
    let a1 = Mor::associator(cat, &Word::leaf(s), &Word::leaf(t), &Word::leaf(j), false);
    let a2 = Mor::associator(cat, &Word::leaf(s), &Word::leaf(k), &Word::leaf(t), true);
    let a3 = Mor::associator(cat, &Word::leaf(m), &Word::leaf(s), &Word::leaf(t), false);
    let middle = a3
        .compose(&f1.tensor(cat, &id_t))
        .compose(&a2)
        .compose(&id_s.tensor(cat, &f2))
        .compose(&a1);

    let mut out = Vec::new();
    for cap in cat.channels(s, t) {
        let w = Mor::vertex(cat, s, t, cap);
        let total = id_m
            .tensor(cat, &w.dagger())
            .compose(&middle)
            .compose(&w.tensor(cat, &id_j));
        for (ti, tt) in total.target_trees().iter().enumerate() {
            for (si, st) in total.source_trees().iter().enumerate() {
                if tt.root() != st.root() {
                    continue;
                }
                let coeff = total.entry(ti, si);
                if coeff.is_negligible() {
                    continue;
                }
                out.push((
                    TubeBasisElement {
                        s: cap,
                        j,
                        k: m,
                        u: tt.root(),
                    },
                    coeff.clone(),
                ));
            }
        }
    }
    out
}

/// The `#`-image of a basis element: the dual-side composite with the cup
/// scaled by `duality_coeff` and the cap derived from the zig-zag.
fn involution_terms(
    cat: &SkeletalCategory,
    x: &TubeBasisElement,
) -> Option<Vec<(TubeBasisElement, Scalar)>> {
    let (s, j, k) = (x.s, x.j, x.k);
    let sd = cat.dual(s);
    let e = cat.unit();
    let r = cat.duality_coeff(s)?.clone();
    let rbar = cat.rbar_coeff(s)?;
    let r_mor = Mor::vertex(cat, sd, s, e).scale(&r);
    let rbar_mor = Mor::vertex(cat, s, sd, e).scale(&rbar);
    let fd = basis_mor(cat, x).dagger();

    let id_sd = Mor::identity(cat, &Word::leaf(sd));
    let id_k = Mor::identity(cat, &Word::leaf(k));
    let id_j = Mor::identity(cat, &Word::leaf(j));

    // (sd, k) → (sd, (k, e)) → (sd, (k, (s, sd))) → (sd, ((k,s), sd))
    let step1 = id_sd.tensor(cat, &Mor::rho(cat, &Word::leaf(k)).dagger());
    let step2 = id_sd.tensor(cat, &id_k.tensor(cat, &rbar_mor));
    let step3 = id_sd.tensor(cat, &Mor::associator(
        cat,
        &Word::leaf(k),
        &Word::leaf(s),
        &Word::leaf(sd),
        true,
    ));
    // → ((sd, (k,s)), sd) → ((sd, (s,j)), sd)
    let step4 = Mor::associator(cat, &Word::leaf(sd), &Word::pair(k, s), &Word::leaf(sd), true);
    let step5 = id_sd.tensor(cat, &fd).tensor(cat, &id_sd);
    // ((sd,(s,j)), sd) → (j, sd) through the cup on the left factor
    let contract = Mor::lambda(cat, &Word::leaf(j))
        .compose(&r_mor.dagger().tensor(cat, &id_j))
        .compose(&Mor::associator(
            cat,
            &Word::leaf(sd),
            &Word::leaf(s),
            &Word::leaf(j),
            true,
        ));
    let step6 = contract.tensor(cat, &id_sd);

    let total = step6
        .compose(&step5)
        .compose(&step4)
        .compose(&step3)
        .compose(&step2)
        .compose(&step1);

    let mut out = Vec::new();
    for (ti, tt) in total.target_trees().iter().enumerate() {
        for (si, st) in total.source_trees().iter().enumerate() {
            if tt.root() != st.root() {
                continue;
            }
            let coeff = total.entry(ti, si);
            if coeff.is_negligible() {
                continue;
            }
            out.push((
                TubeBasisElement {
                    s: sd,
                    j: k,
                    k: j,
                    u: tt.root(),
                },
                coeff.clone(),
            ));
        }
    }
    Some(out)
}

/// `τ` on a basis element: zero off `S = 1, j = k`, otherwise the unit
/// channel coefficient times the categorical trace of `1_j`.
fn trace_value(cat: &SkeletalCategory, x: &TubeBasisElement) -> Scalar {
    if x.s != cat.unit() || x.j != x.k {
        return Scalar::Zero;
    }
    let f = basis_mor(cat, x);
    let m = Mor::rho(cat, &Word::leaf(x.j))
        .compose(&f)
        .compose(&Mor::lambda(cat, &Word::leaf(x.j)).dagger());
    m.coefficient_at_root(x.j).mul(cat.qdim(x.j))
}

impl TubeAlgebra {
    /// Builds `T(C)` over the family `Irr(C)`. The involution requires the
    /// duality data to pass the rigidity check; without duality the algebra
    /// comes back product-only.
    pub fn build(category: Arc<SkeletalCategory>) -> Result<TubeAlgebra, TubeError> {
        let n = category.num_simples();
        let mut basis = Vec::new();
        for s in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for u in 0..n {
                        if category.n(s, j, u) && category.n(k, s, u) {
                            basis.push(TubeBasisElement { s, j, k, u });
                        }
                    }
                }
            }
        }
        let index: HashMap<TubeBasisElement, usize> =
            basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let degree: Vec<Arrow> = basis
            .iter()
            .map(|b| Arrow {
                s: category.grading(b.s),
                dom: category.grading(b.j),
            })
            .collect();

        let mut product = HashMap::new();
        for (i1, x1) in basis.iter().enumerate() {
            for (i2, x2) in basis.iter().enumerate() {
                if x1.j != x2.k {
                    continue;
                }
                let terms = product_terms(&category, x1, x2);
                if terms.is_empty() {
                    continue;
                }
                let sparse: SparseVec = terms.into_iter().map(|(b, c)| (index[&b], c)).collect();
                product.insert((i1, i2), sparse);
            }
        }

        let involution = match category.check_rigidity() {
            RigidityReport::Unavailable => None,
            RigidityReport::Checked { pass: false, .. } => return Err(TubeError::BadDuality),
            RigidityReport::Checked { pass: true, .. } => {
                let mut table = Vec::with_capacity(basis.len());
                for x in &basis {
                    let terms = involution_terms(&category, x).ok_or(TubeError::BadDuality)?;
                    table.push(terms.into_iter().map(|(b, c)| (index[&b], c)).collect());
                }
                Some(table)
            }
        };

        let trace = basis.iter().map(|x| trace_value(&category, x)).collect();
        let exact = category.is_exact();
        Ok(TubeAlgebra {
            category,
            basis,
            index,
            product,
            involution,
            trace,
            degree,
            exact,
        })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_exact(&self) -> bool {
        self.exact
    }

    pub fn has_involution(&self) -> bool {
        self.involution.is_some()
    }

    pub fn index_of(&self, b: &TubeBasisElement) -> Option<usize> {
        self.index.get(b).copied()
    }

    pub fn degree(&self, i: usize) -> Arrow {
        self.degree[i]
    }

    pub fn trace_coeff(&self, i: usize) -> &Scalar {
        &self.trace[i]
    }

    pub fn product_entry(&self, i: usize, j: usize) -> &[(usize, Scalar)] {
        self.product.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn involution_entry(&self, i: usize) -> Result<&[(usize, Scalar)], TubeError> {
        self.involution
            .as_ref()
            .map(|t| t[i].as_slice())
            .ok_or(TubeError::InvolutionUnavailable)
    }

    pub fn product_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVec)> {
        self.product.iter()
    }

    /// The two-sided unit `Σ_j e_(1, j, j, j)`, verified against the table.
    pub fn unit_element(&self) -> Result<SparseVec, TubeError> {
        let e = self.category.unit();
        let unit: SparseVec = self
            .basis
            .iter()
            .enumerate()
            .filter(|(_, b)| b.s == e)
            .map(|(i, _)| (i, Scalar::one()))
            .collect();
        for i in 0..self.dim() {
            let mut left = vec![Complex64::new(0.0, 0.0); self.dim()];
            let mut right = vec![Complex64::new(0.0, 0.0); self.dim()];
            for (u, c) in &unit {
                for (t, p) in self.product_entry(*u, i) {
                    left[*t] += c.to_complex() * p.to_complex();
                }
                for (t, p) in self.product_entry(i, *u) {
                    right[*t] += c.to_complex() * p.to_complex();
                }
            }
            for t in 0..self.dim() {
                let expect = if t == i { 1.0 } else { 0.0 };
                if (left[t] - expect).norm() > 1e-9 || (right[t] - expect).norm() > 1e-9 {
                    return Err(TubeError::UnitSynthesisFailure(i));
                }
            }
        }
        Ok(unit)
    }

    /// Bilinear extension of the product table on dense coefficient vectors.
    pub fn multiply(&self, a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(a.len(), self.dim());
        assert_eq!(b.len(), self.dim());
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for (&(i, j), terms) in &self.product {
            let f = a[i] * b[j];
            if f.norm() == 0.0 {
                continue;
            }
            for (t, c) in terms {
                out[*t] += f * c.to_complex();
            }
        }
        out
    }

    /// Conjugate-linear extension of the involution table.
    pub fn involute(&self, a: &[Complex64]) -> Result<Vec<Complex64>, TubeError> {
        let table = self
            .involution
            .as_ref()
            .ok_or(TubeError::InvolutionUnavailable)?;
        let mut out = vec![Complex64::new(0.0, 0.0); self.dim()];
        for i in 0..self.dim() {
            if a[i].norm() == 0.0 {
                continue;
            }
            for (t, c) in &table[i] {
                out[*t] += a[i].conj() * c.to_complex();
            }
        }
        Ok(out)
    }

    pub fn trace_of(&self, a: &[Complex64]) -> Complex64 {
        a.iter()
            .zip(&self.trace)
            .map(|(x, t)| x * t.to_complex())
            .sum()
    }

    /// `⟨e_i, e_j⟩ = τ(e_i • e_j^#)` as an exact scalar when possible.
    pub fn gram_entry(&self, i: usize, j: usize) -> Result<Scalar, TubeError> {
        let table = self
            .involution
            .as_ref()
            .ok_or(TubeError::InvolutionUnavailable)?;
        let mut acc = Scalar::Zero;
        for (m, c) in &table[j] {
            for (t, p) in self.product_entry(i, *m) {
                let contrib = c.mul(p).mul(&self.trace[*t]);
                if !contrib.is_zero() {
                    acc = acc.add(&contrib);
                }
            }
        }
        Ok(acc)
    }

    /// Partition of the basis by the conjugacy class of the object degree.
    pub fn fell_blocks(&self) -> Vec<FellBlock> {
        let g = &self.category.grading_group;
        let classes = g.conjugacy_classes();
        classes
            .iter()
            .enumerate()
            .map(|(ci, class)| FellBlock {
                class_rep: class[0],
                members: (0..self.dim())
                    .filter(|&i| g.class_of(&classes, self.degree[i].dom) == ci)
                    .collect(),
            })
            .collect()
    }

    /// Twists the Fell bundle by a unit-normalized groupoid 2-cocycle:
    /// products scale by `ψ(g₁,g₂)`, the involution by `ψ̄(g⁻¹,g)`.
    pub fn twist_fell_bundle(&self, psi: &GroupoidCochain) -> Result<TubeAlgebra, TubeError> {
        if psi.degree() != 2 || !psi.is_cocycle() {
            return Err(TubeError::BadTwistCocycle);
        }
        let gd = psi.groupoid.clone();
        if gd.group.order() != self.category.grading_group.order() {
            return Err(TubeError::BadTwistCocycle);
        }
        for g in gd.arrows() {
            if !psi.value(&[g, gd.unit(g.dom)]).is_one()
                || !psi.value(&[gd.unit(g.codom(&gd.group)), g]).is_one()
            {
                return Err(TubeError::BadTwistCocycle);
            }
        }
        let mut product = HashMap::new();
        for (&(i, j), terms) in &self.product {
            let factor = Scalar::Exact(psi.value(&[self.degree[i], self.degree[j]]).clone());
            product.insert(
                (i, j),
                terms
                    .iter()
                    .map(|(t, c)| (*t, c.mul(&factor)))
                    .collect::<SparseVec>(),
            );
        }
        let involution = self.involution.as_ref().map(|table| {
            table
                .iter()
                .enumerate()
                .map(|(i, terms)| {
                    let g = self.degree[i];
                    let factor =
                        Scalar::Exact(psi.value(&[g.inverse(&gd.group), g]).conj());
                    terms.iter().map(|(t, c)| (*t, c.mul(&factor))).collect()
                })
                .collect()
        });
        let out = TubeAlgebra {
            category: self.category.clone(),
            basis: self.basis.clone(),
            index: self.index.clone(),
            product,
            involution,
            trace: self.trace.clone(),
            degree: self.degree.clone(),
            exact: self.exact,
        };
        out.verify_laws(LawCheckMode::for_algebra(&out))?;
        Ok(out)
    }

    /// Exhaustive or sampled re-verification of the algebra laws.
    pub fn verify_laws(&self, mode: LawCheckMode) -> Result<LawReport, TubeError> {
        let mut report = LawReport::default();
        // Fell grading: stored entries sit on composable degrees, target on
        // the composite; the involution inverts degrees.
        let g = &self.category.grading_group;
        for (&(i, j), terms) in &self.product {
            let (di, dj) = (self.degree[i], self.degree[j]);
            let composite = match di.compose(&dj, g) {
                Some(c) => c,
                None => return Err(TubeError::FellGradingViolation(i, j, i)),
            };
            for (t, c) in terms {
                if c.is_negligible() {
                    continue;
                }
                if self.degree[*t] != composite {
                    return Err(TubeError::FellGradingViolation(i, j, *t));
                }
            }
        }
        // associativity
        let triples: Vec<(usize, usize, usize)> = match mode {
            LawCheckMode::Exhaustive => {
                let mut v = Vec::new();
                for i in 0..self.dim() {
                    for j in 0..self.dim() {
                        if self.basis[i].j != self.basis[j].k {
                            continue;
                        }
                        for k in 0..self.dim() {
                            if self.basis[j].j == self.basis[k].k {
                                v.push((i, j, k));
                            }
                        }
                    }
                }
                v
            }
            LawCheckMode::Random { samples, seed } => {
                use rand::{Rng, SeedableRng};
                let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
                (0..samples)
                    .map(|_| {
                        (
                            rng.gen_range(0..self.dim()),
                            rng.gen_range(0..self.dim()),
                            rng.gen_range(0..self.dim()),
                        )
                    })
                    .collect()
            }
        };
        for (i, j, k) in triples {
            let mut lhs = vec![Complex64::new(0.0, 0.0); self.dim()];
            for (t, c) in self.product_entry(i, j) {
                for (r, d) in self.product_entry(*t, k) {
                    lhs[*r] += c.to_complex() * d.to_complex();
                }
            }
            let mut rhs = vec![Complex64::new(0.0, 0.0); self.dim()];
            for (m, c) in self.product_entry(j, k) {
                for (r, d) in self.product_entry(i, *m) {
                    rhs[*r] += c.to_complex() * d.to_complex();
                }
            }
            let residual = lhs
                .iter()
                .zip(&rhs)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max);
            report.associativity_residual = report.associativity_residual.max(residual);
            if residual > 1e-9 {
                return Err(TubeError::AssociativityFailure(i, j, k));
            }
        }
        // involution laws
        if let Some(table) = &self.involution {
            for i in 0..self.dim() {
                // (e_i^#)^#
                let mut twice = vec![Complex64::new(0.0, 0.0); self.dim()];
                for (m, c) in &table[i] {
                    for (t, d) in &table[*m] {
                        twice[*t] += c.to_complex().conj() * d.to_complex();
                    }
                }
                let residual = (0..self.dim())
                    .map(|t| {
                        let expect = if t == i { 1.0 } else { 0.0 };
                        (twice[t] - expect).norm()
                    })
                    .fold(0.0, f64::max);
                report.involutive_residual = report.involutive_residual.max(residual);
                if residual > 1e-9 {
                    return Err(TubeError::InvolutionLawFailure(i));
                }
                let gdeg = self.degree[i];
                let ginv = gdeg.inverse(g);
                for (t, c) in &table[i] {
                    if !c.is_negligible() && self.degree[*t] != ginv {
                        return Err(TubeError::InvolutionLawFailure(i));
                    }
                }
            }
            // antimultiplicativity on all product pairs
            for (&(i, j), _) in &self.product {
                let mut lhs = vec![Complex64::new(0.0, 0.0); self.dim()];
                for (t, c) in self.product_entry(i, j) {
                    for (m, d) in &table[*t] {
                        lhs[*m] += c.to_complex().conj() * d.to_complex();
                    }
                }
                let mut rhs = vec![Complex64::new(0.0, 0.0); self.dim()];
                for (jm, cj) in &table[j] {
                    for (im, ci) in &table[i] {
                        for (t, p) in self.product_entry(*jm, *im) {
                            rhs[*t] += cj.to_complex() * ci.to_complex() * p.to_complex();
                        }
                    }
                }
                let residual = lhs
                    .iter()
                    .zip(&rhs)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max);
                report.antimultiplicative_residual =
                    report.antimultiplicative_residual.max(residual);
                if residual > 1e-9 {
                    return Err(TubeError::InvolutionLawFailure(i));
                }
            }
        }
        // trace is tracial
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let ab: Complex64 = self
                    .product_entry(i, j)
                    .iter()
                    .map(|(t, c)| c.to_complex() * self.trace[*t].to_complex())
                    .sum();
                let ba: Complex64 = self
                    .product_entry(j, i)
                    .iter()
                    .map(|(t, c)| c.to_complex() * self.trace[*t].to_complex())
                    .sum();
                report.trace_residual = report.trace_residual.max((ab - ba).norm());
            }
        }
        if report.trace_residual > 1e-9 {
            return Err(TubeError::TraceLawFailure);
        }
        Ok(report)
    }

    /// Pointed unit-recovery identity `e^# • e = e_(1, dom)` for every basis
    /// element, in this algebra's own product and involution.
    pub fn corner_unit_check(&self) -> Result<usize, TubeError> {
        let cat = &self.category;
        let pointed = (0..cat.num_simples())
            .all(|a| (0..cat.num_simples()).all(|b| cat.channels(a, b).len() == 1));
        if !pointed {
            return Err(TubeError::NotPointed);
        }
        let table = self
            .involution
            .as_ref()
            .ok_or(TubeError::InvolutionUnavailable)?;
        let mut checked = 0;
        for i in 0..self.dim() {
            let b = self.basis[i];
            let expect = TubeBasisElement {
                s: cat.unit(),
                j: b.j,
                k: b.j,
                u: b.j,
            };
            let expect_idx = self.index[&expect];
            let mut acc = vec![Scalar::Zero; self.dim()];
            for (m, c) in &table[i] {
                for (t, p) in self.product_entry(*m, i) {
                    acc[*t] = acc[*t].add(&c.mul(p));
                }
            }
            for (t, v) in acc.iter().enumerate() {
                let expect_v = if t == expect_idx {
                    Scalar::one()
                } else {
                    Scalar::Zero
                };
                if v.abs_diff(&expect_v) > 1e-9 {
                    return Err(TubeError::InvolutionLawFailure(i));
                }
            }
            checked += 1;
        }
        Ok(checked)
    }
}

#[derive(Clone, Debug)]
pub struct FellBlock {
    /// Least element of the conjugacy class in the grading group.
    pub class_rep: usize,
    pub members: Vec<usize>,
}

#[derive(Clone, Copy, Debug)]
pub enum LawCheckMode {
    Exhaustive,
    Random { samples: usize, seed: u64 },
}

impl LawCheckMode {
    /// Exhaustive for small exact algebras, sampled otherwise.
    pub fn for_algebra(t: &TubeAlgebra) -> LawCheckMode {
        if t.is_exact() && t.dim() <= 64 {
            LawCheckMode::Exhaustive
        } else {
            LawCheckMode::Random {
                samples: 1000,
                seed: 17,
            }
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct LawReport {
    pub associativity_residual: f64,
    pub involutive_residual: f64,
    pub antimultiplicative_residual: f64,
    pub trace_residual: f64,
}

/// Report for the twisting theorem: `T(C^ω)` against the `ψ`-twist of `T(C)`.
#[derive(Clone, Debug)]
pub struct TwistReport {
    pub pass: bool,
    pub exact: bool,
    pub max_discrepancy: f64,
    pub witness: Option<String>,
}

/// Builds `T(twist(C, ω))` directly and `twist_fell_bundle(T(C), ψ_ω)`
/// independently, then compares product and involution tables entrywise.
pub fn verify_twist_theorem(
    category: &Arc<SkeletalCategory>,
    omega: &GroupCochain,
) -> Result<TwistReport, TubeError> {
    let twisted_cat = Arc::new(
        category
            .twist(omega)
            .map_err(|_| TubeError::BadTwistCocycle)?,
    );
    let direct = TubeAlgebra::build(twisted_cat)?;
    let psi = induce_psi(omega)?;
    let base = TubeAlgebra::build(category.clone())?;
    let bundled = base.twist_fell_bundle(&psi)?;
    compare_tables(&direct, &bundled)
}

/// Entrywise comparison of two algebras over the same basis.
pub fn compare_tables(a: &TubeAlgebra, b: &TubeAlgebra) -> Result<TwistReport, TubeError> {
    if a.basis != b.basis {
        return Err(TubeError::NotComparable("basis enumerations differ".into()));
    }
    let exact = a.is_exact() && b.is_exact();
    let mut max_discrepancy = 0.0f64;
    let mut witness = None;
    let dim = a.dim();
    for i in 0..dim {
        for j in 0..dim {
            let mut lhs: HashMap<usize, Scalar> = HashMap::new();
            for (t, c) in a.product_entry(i, j) {
                lhs.insert(*t, c.clone());
            }
            let mut keys: Vec<usize> = lhs.keys().copied().collect();
            for (t, _) in b.product_entry(i, j) {
                if !keys.contains(t) {
                    keys.push(*t);
                }
            }
            for t in keys {
                let va = lhs.get(&t).cloned().unwrap_or(Scalar::Zero);
                let vb = b
                    .product_entry(i, j)
                    .iter()
                    .find(|(x, _)| *x == t)
                    .map(|(_, c)| c.clone())
                    .unwrap_or(Scalar::Zero);
                let d = if exact {
                    if va == vb {
                        0.0
                    } else {
                        va.abs_diff(&vb).max(f64::MIN_POSITIVE)
                    }
                } else {
                    va.abs_diff(&vb)
                };
                if d > max_discrepancy {
                    max_discrepancy = d;
                    witness = Some(format!(
                        "product ({:?} • {:?}) → {:?}",
                        a.basis[i], a.basis[j], a.basis[t]
                    ));
                }
            }
        }
    }
    match (a.has_involution(), b.has_involution()) {
        (true, true) => {
            for i in 0..dim {
                let ta = a.involution_entry(i)?;
                let tb = b.involution_entry(i)?;
                let mut keys: Vec<usize> = ta.iter().map(|(t, _)| *t).collect();
                for (t, _) in tb {
                    if !keys.contains(t) {
                        keys.push(*t);
                    }
                }
                for t in keys {
                    let va = ta
                        .iter()
                        .find(|(x, _)| *x == t)
                        .map(|(_, c)| c.clone())
                        .unwrap_or(Scalar::Zero);
                    let vb = tb
                        .iter()
                        .find(|(x, _)| *x == t)
                        .map(|(_, c)| c.clone())
                        .unwrap_or(Scalar::Zero);
                    let d = if exact {
                        if va == vb {
                            0.0
                        } else {
                            va.abs_diff(&vb).max(f64::MIN_POSITIVE)
                        }
                    } else {
                        va.abs_diff(&vb)
                    };
                    if d > max_discrepancy {
                        max_discrepancy = d;
                        witness = Some(format!("involution of {:?}", a.basis[i]));
                    }
                }
            }
        }
        (false, false) => {}
        _ => return Err(TubeError::NotComparable("involution availability differs".into())),
    }
    let pass = if exact {
        max_discrepancy == 0.0
    } else {
        max_discrepancy < 1e-9
    };
    Ok(TwistReport {
        pass,
        exact,
        max_discrepancy,
        witness: if pass { None } else { witness },
    })
}

/// Rescales the block `T_{a,a}` of the twisted algebra by a solution of the
/// block coboundary problem and certifies that the tables become the plain
/// ones exactly. `eta` must satisfy `δη = φ′_a`, the ξ-normalized
/// centralizer cocycle; the transport combines it with ξ restricted to the
/// isotropy arrows at `a`.
pub struct TransportCertificate {
    pub block_dim: usize,
    pub products_checked: usize,
    pub involutions_checked: usize,
}

pub fn coboundary_transport(
    twisted: &TubeAlgebra,
    plain: &TubeAlgebra,
    omega: &GroupCochain,
    a: usize,
    eta: &GroupCochain,
) -> Result<TransportCertificate, TubeError> {
    if twisted.basis != plain.basis {
        return Err(TubeError::NotComparable("basis enumerations differ".into()));
    }
    let g = &plain.category.grading_group;
    let phi = centralizer_cocycle(omega, a)?;
    let psi = induce_psi(omega)?;
    let np = normalize_psi(&psi)?;
    // φ′_a = φ_a · δ(ξ̄ restricted to the isotropy at a)
    let xi_restr = GroupCochain::from_fn(phi.subgroup.clone(), 1, |t| {
        let s = phi.embed[t[0]];
        np.xi.value(&[Arrow { s, dom: a }]).clone()
    });
    let phi_prime = phi
        .cochain
        .pointwise_mul(&xi_restr.conj().coboundary())
        .expect("same subgroup");
    if eta.degree() != 1 || &eta.coboundary() != &phi_prime {
        return Err(TubeError::BadEta);
    }
    // combined rescaling μ = η·ξ| with δμ = φ_a
    let mu = eta.pointwise_mul(&xi_restr).expect("same subgroup");

    // position of an ambient centralizer element in the subgroup
    let sub_pos = |s: usize| phi.embed.iter().position(|&x| x == s);

    let members: Vec<usize> = (0..twisted.dim())
        .filter(|&i| twisted.degree(i).dom == a && twisted.degree(i).codom(g) == a)
        .collect();
    let mu_of = |i: usize| -> Result<crate::phase::Phase, TubeError> {
        let s = twisted.degree(i).s;
        let p = sub_pos(s).ok_or(TubeError::BadEta)?;
        Ok(mu.value(&[p]).clone())
    };

    let mut products_checked = 0;
    for &i in &members {
        for &j in &members {
            if twisted.basis[i].j != twisted.basis[j].k {
                continue;
            }
            let scale = Scalar::Exact(mu_of(i)?.conj() * mu_of(j)?.conj());
            for (t, c) in twisted.product_entry(i, j) {
                let rescaled = c.mul(&scale).mul(&Scalar::Exact(mu_of(*t)?));
                let expect = plain
                    .product_entry(i, j)
                    .iter()
                    .find(|(x, _)| x == t)
                    .map(|(_, c)| c.clone())
                    .unwrap_or(Scalar::Zero);
                if rescaled != expect {
                    return Err(TubeError::NotComparable(format!(
                        "transported product differs at ({i}, {j})"
                    )));
                }
            }
            products_checked += 1;
        }
    }
    let mut involutions_checked = 0;
    if twisted.has_involution() && plain.has_involution() {
        for &i in &members {
            let ti = twisted.involution_entry(i)?;
            let pi = plain.involution_entry(i)?;
            for (t, c) in ti {
                let rescaled = c
                    .mul(&Scalar::Exact(mu_of(i)?))
                    .mul(&Scalar::Exact(mu_of(*t)?));
                let expect = pi
                    .iter()
                    .find(|(x, _)| x == t)
                    .map(|(_, c)| c.clone())
                    .unwrap_or(Scalar::Zero);
                if rescaled != expect {
                    return Err(TubeError::NotComparable(format!(
                        "transported involution differs at {i}"
                    )));
                }
            }
            involutions_checked += 1;
        }
    }
    Ok(TransportCertificate {
        block_dim: members.len(),
        products_checked,
        involutions_checked,
    })
}
