//! Skeletal data for graded fusion categories: simples with duals, a
//! multiplicity-free fusion table, a group grading, F-symbols, quantum
//! dimensions and the duality normalization.
//!
//! Pointed categories are generated from a group plus a normalized
//! 3-cocycle and stay exact; other data ships as files and is accepted only
//! if the pentagon, grading and rigidity checkers pass — the checkers, not
//! the files, are the source of truth.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::cohomology::GroupCochain;
use crate::groups::FiniteGroup;
use crate::phase::Phase;
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum CategoryError {
    #[error("fusion table has no unit simple")]
    NoUnit,
    #[error("dual map is not an involution at simple {0}")]
    BadDual(usize),
    #[error("unit fusion rule violated at ({0}, {1}, {2})")]
    BadUnitFusion(usize, usize, usize),
    #[error("N[a][b][unit] must match duality at a={0}, b={1}")]
    DualFusionMismatch(usize, usize),
    #[error("grading is incompatible: {0}")]
    BadGrading(String),
    #[error("cocycle must be a normalized 3-cocycle on the grading group")]
    BadCocycle,
    #[error("cocycle lives on a different group than the grading")]
    GradingGroupMismatch,
    #[error("F-symbol entry at {0:?} is not admissible")]
    InadmissibleF([usize; 6]),
    #[error("F-matrix for (a,b,c,d)=({0},{1},{2},{3}) fails unitarity (residual {4:.3e})")]
    NonUnitaryF(usize, usize, usize, usize, f64),
    #[error("F-symbol with a unit slot must be 1 at {0:?}")]
    UnitSlotF([usize; 6]),
    #[error("pentagon fails: residual {residual:.3e} at {witness:?}")]
    PentagonFail {
        residual: f64,
        witness: PentagonWitness,
    },
    #[error("rigidity data invalid at simple {0}")]
    RigidityFail(usize),
    #[error("duality coefficient vector has wrong length")]
    BadDualityData,
}

/// Admissibility-indexed associator entries: the coefficient of the tree
/// `a⊗(b⊗c) ⊃ v ⊃ d` in the image of `(a⊗b)⊗c ⊃ u ⊃ d`.
#[derive(Clone, Debug)]
enum FSymbols {
    /// Pointed: `F(a,b,c;d;u,v) = ω(a,b,c)` for the unique admissible tree pair.
    Pointed(GroupCochain),
    /// Explicit table over admissible 6-tuples; unlisted admissible entries are 1.
    Table(HashMap<[usize; 6], Scalar>),
}

#[derive(Clone, Debug)]
pub struct SkeletalCategory {
    names: Vec<String>,
    dual: Vec<usize>,
    fusion: Vec<bool>,
    pub grading_group: Arc<FiniteGroup>,
    grading: Vec<usize>,
    f: FSymbols,
    qdim: Vec<Scalar>,
    duality: Option<Vec<Scalar>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PentagonWitness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub total: usize,
    pub u: usize,
    pub g: usize,
    pub h: usize,
    pub k: usize,
}

#[derive(Clone, Debug)]
pub struct PentagonReport {
    pub pass: bool,
    pub max_residual: f64,
    pub witness: Option<PentagonWitness>,
    pub instances: usize,
}

#[derive(Clone, Debug)]
pub struct GradingReport {
    pub unit_in_trivial_degree: bool,
    pub tensor_compatible: bool,
    pub dual_inverts_degree: bool,
    pub support_generates: bool,
}

impl GradingReport {
    pub fn pass(&self) -> bool {
        self.unit_in_trivial_degree
            && self.tensor_compatible
            && self.dual_inverts_degree
            && self.support_generates
    }
}

#[derive(Clone, Debug)]
pub enum RigidityReport {
    /// No duality coefficients present; the involution is unavailable.
    Unavailable,
    Checked {
        pass: bool,
        max_residual: f64,
        witness: Option<usize>,
    },
}

impl SkeletalCategory {
    /// `C_Γ^ω`: simples are the group elements, fusion is the group law,
    /// `F(a,b,c) = ω(a,b,c)`, all dimensions 1.
    pub fn pointed(
        group: Arc<FiniteGroup>,
        omega: &GroupCochain,
    ) -> Result<SkeletalCategory, CategoryError> {
        if omega.degree() != 3 || !omega.is_normalized() || !omega.is_cocycle() {
            return Err(CategoryError::BadCocycle);
        }
        if !same_structure(&group, &omega.group) {
            return Err(CategoryError::GradingGroupMismatch);
        }
        let n = group.order();
        let mut fusion = vec![false; n * n * n];
        for a in 0..n {
            for b in 0..n {
                fusion[(a * n + b) * n + group.mul(a, b)] = true;
            }
        }
        let cat = SkeletalCategory {
            names: (0..n).map(|x| group.label(x)).collect(),
            dual: (0..n).map(|x| group.inv(x)).collect(),
            fusion,
            grading_group: group.clone(),
            grading: (0..n).collect(),
            f: FSymbols::Pointed(omega.clone()),
            qdim: vec![Scalar::one(); n],
            duality: Some(vec![Scalar::one(); n]),
        };
        debug_assert_eq!(cat.unit(), group.identity());
        Ok(cat)
    }

    /// Builds from explicit skeletal data. Structural checks only; run the
    /// pentagon/grading/rigidity checkers (or [`Self::validate`]) to accept it.
    #[allow(clippy::too_many_arguments)]
    pub fn from_parts(
        names: Vec<String>,
        dual: Vec<usize>,
        fusion_triples: &[[usize; 3]],
        grading_group: Arc<FiniteGroup>,
        grading: Vec<usize>,
        f_entries: HashMap<[usize; 6], Scalar>,
        qdim: Vec<Scalar>,
        duality: Option<Vec<Scalar>>,
    ) -> Result<SkeletalCategory, CategoryError> {
        let n = names.len();
        let mut fusion = vec![false; n * n * n];
        for t in fusion_triples {
            fusion[(t[0] * n + t[1]) * n + t[2]] = true;
        }
        if let Some(d) = &duality {
            if d.len() != n {
                return Err(CategoryError::BadDualityData);
            }
        }
        let cat = SkeletalCategory {
            names,
            dual,
            fusion,
            grading_group,
            grading,
            f: FSymbols::Table(f_entries),
            qdim,
            duality,
        };
        cat.check_structure()?;
        Ok(cat)
    }

    fn check_structure(&self) -> Result<(), CategoryError> {
        let n = self.num_simples();
        let unit = self.find_unit().ok_or(CategoryError::NoUnit)?;
        for a in 0..n {
            if self.dual[a] >= n || self.dual[self.dual[a]] != a {
                return Err(CategoryError::BadDual(a));
            }
        }
        if self.dual[unit] != unit {
            return Err(CategoryError::BadDual(unit));
        }
        for b in 0..n {
            for c in 0..n {
                if self.n(unit, b, c) != (b == c) {
                    return Err(CategoryError::BadUnitFusion(unit, b, c));
                }
                if self.n(b, unit, c) != (b == c) {
                    return Err(CategoryError::BadUnitFusion(b, unit, c));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if self.n(a, b, unit) != (b == self.dual[a]) {
                    return Err(CategoryError::DualFusionMismatch(a, b));
                }
            }
        }
        if let FSymbols::Table(map) = &self.f {
            for (key, _) in map.iter() {
                let [a, b, c, d, u, v] = *key;
                if !self.admissible_f(a, b, c, d, u, v) {
                    return Err(CategoryError::InadmissibleF(*key));
                }
                if (a == unit || b == unit || c == unit)
                    && map.get(key).map(|s| s.abs_diff(&Scalar::one())) > Some(1e-12)
                {
                    return Err(CategoryError::UnitSlotF(*key));
                }
            }
        }
        Ok(())
    }

    fn find_unit(&self) -> Option<usize> {
        let n = self.num_simples();
        (0..n).find(|&u| {
            (0..n).all(|b| (0..n).all(|c| self.n(u, b, c) == (b == c) && self.n(b, u, c) == (b == c)))
        })
    }

    pub fn num_simples(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn unit(&self) -> usize {
        self.find_unit().expect("validated category has a unit")
    }

    pub fn dual(&self, a: usize) -> usize {
        self.dual[a]
    }

    #[inline]
    pub fn n(&self, a: usize, b: usize, c: usize) -> bool {
        let n = self.num_simples();
        self.fusion[(a * n + b) * n + c]
    }

    pub fn channels(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.num_simples()).filter(|&c| self.n(a, b, c)).collect()
    }

    pub fn grading(&self, a: usize) -> usize {
        self.grading[a]
    }

    pub fn qdim(&self, a: usize) -> &Scalar {
        &self.qdim[a]
    }

    pub fn duality_coeff(&self, a: usize) -> Option<&Scalar> {
        self.duality.as_ref().map(|d| &d[a])
    }

    pub fn has_duality(&self) -> bool {
        self.duality.is_some()
    }

    /// All coefficients exact (pointed data or an exact twist of it).
    pub fn is_exact(&self) -> bool {
        let f_exact = match &self.f {
            FSymbols::Pointed(_) => true,
            FSymbols::Table(map) => map.values().all(Scalar::is_exact),
        };
        f_exact
            && self.qdim.iter().all(Scalar::is_exact)
            && self
                .duality
                .as_ref()
                .is_none_or(|d| d.iter().all(Scalar::is_exact))
    }

    pub fn admissible_f(&self, a: usize, b: usize, c: usize, d: usize, u: usize, v: usize) -> bool {
        self.n(a, b, u) && self.n(u, c, d) && self.n(b, c, v) && self.n(a, v, d)
    }

    /// Associator matrix element; `Zero` on non-admissible labels.
    pub fn f_symbol(&self, a: usize, b: usize, c: usize, d: usize, u: usize, v: usize) -> Scalar {
        if !self.admissible_f(a, b, c, d, u, v) {
            return Scalar::Zero;
        }
        match &self.f {
            FSymbols::Pointed(omega) => Scalar::Exact(omega.value(&[a, b, c]).clone()),
            FSymbols::Table(map) => map
                .get(&[a, b, c, d, u, v])
                .cloned()
                .unwrap_or_else(Scalar::one),
        }
    }

    /// All admissible F labels, lexicographic.
    pub fn admissible_f_labels(&self) -> Vec<[usize; 6]> {
        let n = self.num_simples();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for u in self.channels(a, b) {
                        for d in self.channels(u, c) {
                            for v in self.channels(b, c) {
                                if self.n(a, v, d) {
                                    out.push([a, b, c, d, u, v]);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// The cap coefficient paired with `duality_coeff`: from the zig-zag on
    /// the dual side, `R̄_a = conj((R_a · F[ā,a,ā; ā; e,e])⁻¹)`.
    pub fn rbar_coeff(&self, a: usize) -> Option<Scalar> {
        let r = self.duality_coeff(a)?;
        let ad = self.dual(a);
        let e = self.unit();
        let f = self.f_symbol(ad, a, ad, ad, e, e);
        if f.is_negligible() || r.is_negligible() {
            return None;
        }
        Some(r.mul(&f).inv().conj())
    }

    /// Twists the associator by a normalized 3-cocycle on the grading group:
    /// `F′ = ω(γ_a, γ_b, γ_c)·F`. Fusion, grading, `qdim` and the cup
    /// normalization are untouched; the cap picks up its factor through
    /// [`Self::rbar_coeff`].
    pub fn twist(&self, omega: &GroupCochain) -> Result<SkeletalCategory, CategoryError> {
        if omega.degree() != 3 || !omega.is_normalized() || !omega.is_cocycle() {
            return Err(CategoryError::BadCocycle);
        }
        if !same_structure(&self.grading_group, &omega.group) {
            return Err(CategoryError::GradingGroupMismatch);
        }
        let mut table = HashMap::new();
        for key in self.admissible_f_labels() {
            let [a, b, c, d, u, v] = key;
            let w = omega.value(&[self.grading[a], self.grading[b], self.grading[c]]);
            table.insert(key, self.f_symbol(a, b, c, d, u, v).mul(&Scalar::Exact(w.clone())));
        }
        Ok(SkeletalCategory {
            names: self.names.clone(),
            dual: self.dual.clone(),
            fusion: self.fusion.clone(),
            grading_group: self.grading_group.clone(),
            grading: self.grading.clone(),
            f: FSymbols::Table(table),
            qdim: self.qdim.clone(),
            duality: self.duality.clone(),
        })
    }

    /// Checks every pentagon instance
    /// `F[u,c,d;e₀;g,h]·F[a,b,h;e₀;u,k] = Σ_m F[a,b,c;g;u,m]·F[a,m,d;e₀;g,k]·F[b,c,d;k;m,h]`.
    pub fn check_pentagon(&self) -> PentagonReport {
        let n = self.num_simples();
        let mut max_residual = 0.0f64;
        let mut witness = None;
        let mut instances = 0usize;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        for u in self.channels(a, b) {
                            for g in self.channels(u, c) {
                                for total in self.channels(g, d) {
                                    for h in self.channels(c, d) {
                                        for k in self.channels(b, h) {
                                            if !self.n(a, k, total) {
                                                continue;
                                            }
                                            instances += 1;
                                            let lhs = self
                                                .f_symbol(u, c, d, total, g, h)
                                                .mul(&self.f_symbol(a, b, h, total, u, k));
                                            let terms: Vec<Scalar> = self
                                                .channels(b, c)
                                                .into_iter()
                                                .map(|m| {
                                                    self.f_symbol(a, b, c, g, u, m)
                                                        .mul(&self.f_symbol(a, m, d, total, g, k))
                                                        .mul(&self.f_symbol(b, c, d, k, m, h))
                                                })
                                                .filter(|s| !s.is_zero())
                                                .collect();
                                            let residual = match (&lhs, terms.as_slice()) {
                                                (l, [single]) => l.abs_diff(single),
                                                (l, []) => l.abs_diff(&Scalar::Zero),
                                                (l, many) => {
                                                    let sum = many
                                                        .iter()
                                                        .map(Scalar::to_complex)
                                                        .sum::<num_complex::Complex64>();
                                                    (l.to_complex() - sum).norm()
                                                }
                                            };
                                            if residual > max_residual {
                                                max_residual = residual;
                                                witness = Some(PentagonWitness {
                                                    a,
                                                    b,
                                                    c,
                                                    d,
                                                    total,
                                                    u,
                                                    g,
                                                    h,
                                                    k,
                                                });
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        let pass = max_residual < 1e-9;
        PentagonReport {
            pass,
            max_residual,
            witness: if pass { None } else { witness },
            instances,
        }
    }

    /// Grading compatibility plus Z-support generation.
    pub fn check_grading(&self) -> GradingReport {
        let n = self.num_simples();
        let g = &self.grading_group;
        let unit_in_trivial_degree = self.grading[self.unit()] == g.identity();
        let mut tensor_compatible = true;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.n(a, b, c)
                        && g.mul(self.grading[a], self.grading[b]) != self.grading[c]
                    {
                        tensor_compatible = false;
                    }
                }
            }
        }
        let dual_inverts_degree =
            (0..n).all(|a| self.grading[self.dual[a]] == g.inv(self.grading[a]));
        // closure of the degree support must be the whole group
        let mut support: Vec<bool> = vec![false; g.order()];
        for a in 0..n {
            support[self.grading[a]] = true;
        }
        loop {
            let mut grew = false;
            let present: Vec<usize> = (0..g.order()).filter(|&x| support[x]).collect();
            for &x in &present {
                for &y in &present {
                    let z = g.mul(x, y);
                    if !support[z] {
                        support[z] = true;
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        let support_generates = support.iter().all(|&b| b);
        GradingReport {
            unit_in_trivial_degree,
            tensor_compatible,
            dual_inverts_degree,
            support_generates,
        }
    }

    /// Evaluates both conjugate-equation zig-zags for every simple with the
    /// stored cup scale and the derived cap scale, and checks the standard
    /// normalization `|R|² = d`.
    pub fn check_rigidity(&self) -> RigidityReport {
        if !self.has_duality() {
            return RigidityReport::Unavailable;
        }
        let e = self.unit();
        let mut max_residual = 0.0f64;
        let mut witness = None;
        for a in 0..self.num_simples() {
            let r = self.duality_coeff(a).unwrap().clone();
            let ad = self.dual(a);
            let Some(rbar) = self.rbar_coeff(a) else {
                return RigidityReport::Checked {
                    pass: false,
                    max_residual: f64::INFINITY,
                    witness: Some(a),
                };
            };
            let d = self.qdim(a).to_complex().re;
            let norm_r = (r.norm() * r.norm() - d).abs();
            let norm_rbar = (rbar.norm() * rbar.norm() - d).abs();
            // zig-zag 1 on ā: R·conj(R̄)·F[ā,a,ā;ā;e,e] = 1 (how R̄ is derived)
            let zz1 = r
                .mul(&rbar.conj())
                .mul(&self.f_symbol(ad, a, ad, ad, e, e))
                .abs_diff(&Scalar::one());
            // zig-zag 2 on a: R̄·conj(R)·F[a,ā,a;a;e,e] = 1
            let zz2 = rbar
                .mul(&r.conj())
                .mul(&self.f_symbol(a, ad, a, a, e, e))
                .abs_diff(&Scalar::one());
            let residual = norm_r.max(norm_rbar).max(zz1).max(zz2);
            if residual > max_residual {
                max_residual = residual;
                witness = Some(a);
            }
        }
        let pass = max_residual < 1e-9;
        RigidityReport::Checked {
            pass,
            max_residual,
            witness: if pass { None } else { witness },
        }
    }

    /// Blockwise unitarity of the F-matrices.
    pub fn check_unitarity(&self) -> Result<(), CategoryError> {
        let n = self.num_simples();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let us: Vec<usize> = self
                            .channels(a, b)
                            .into_iter()
                            .filter(|&u| self.n(u, c, d))
                            .collect();
                        let vs: Vec<usize> = self
                            .channels(b, c)
                            .into_iter()
                            .filter(|&v| self.n(a, v, d))
                            .collect();
                        if us.is_empty() {
                            continue;
                        }
                        if us.len() != vs.len() {
                            return Err(CategoryError::NonUnitaryF(a, b, c, d, f64::INFINITY));
                        }
                        let mut residual = 0.0f64;
                        for (i, &u1) in us.iter().enumerate() {
                            for (j, &u2) in us.iter().enumerate() {
                                let mut acc = num_complex::Complex64::new(0.0, 0.0);
                                for &v in &vs {
                                    acc += self.f_symbol(a, b, c, d, u1, v).to_complex()
                                        * self.f_symbol(a, b, c, d, u2, v).to_complex().conj();
                                }
                                let expect = if i == j { 1.0 } else { 0.0 };
                                residual = residual
                                    .max((acc - num_complex::Complex64::new(expect, 0.0)).norm());
                            }
                        }
                        if residual > 1e-9 {
                            return Err(CategoryError::NonUnitaryF(a, b, c, d, residual));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Full acceptance gate used when loading data files.
    pub fn validate(&self) -> Result<(), CategoryError> {
        self.check_structure()?;
        self.check_unitarity()?;
        let p = self.check_pentagon();
        if !p.pass {
            return Err(CategoryError::PentagonFail {
                residual: p.max_residual,
                witness: p.witness.unwrap(),
            });
        }
        let g = self.check_grading();
        if !g.pass() {
            return Err(CategoryError::BadGrading(format!("{g:?}")));
        }
        if let RigidityReport::Checked { pass: false, witness, .. } = self.check_rigidity() {
            return Err(CategoryError::RigidityFail(witness.unwrap_or(0)));
        }
        Ok(())
    }
}

fn same_structure(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.order() == b.order()
        && a.elements()
            .all(|x| a.elements().all(|y| a.mul(x, y) == b.mul(x, y)))
}

/// Convenience: the neutral 3-cocycle on a group.
pub fn neutral_cocycle(group: &Arc<FiniteGroup>) -> GroupCochain {
    GroupCochain::neutral(group.clone(), 3)
}

/// Convenience: `exp(2πi q)` as a scalar.
pub fn phase_scalar(num: i64, den: i64) -> Scalar {
    Scalar::Exact(Phase::new(num, den))
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    /// The Ising data as shipped in `data/ising.json`, built in code as the
    /// oracle for the loader.
    pub(crate) fn ising() -> SkeletalCategory {
        use std::f64::consts::FRAC_1_SQRT_2;
        let z2 = Arc::new(FiniteGroup::cyclic(2).unwrap());
        let mut f = HashMap::new();
        for u in 0..2usize {
            for v in 0..2usize {
                let sign = if u == 1 && v == 1 { -1.0 } else { 1.0 };
                f.insert([2, 2, 2, 2, u, v], Scalar::real(sign * FRAC_1_SQRT_2));
            }
        }
        f.insert([1, 2, 1, 2, 2, 2], Scalar::real(-1.0));
        f.insert([2, 1, 2, 1, 2, 2], Scalar::real(-1.0));
        SkeletalCategory::from_parts(
            vec!["1".into(), "psi".into(), "sigma".into()],
            vec![0, 1, 2],
            &[
                [0, 0, 0],
                [0, 1, 1],
                [0, 2, 2],
                [1, 0, 1],
                [2, 0, 2],
                [1, 1, 0],
                [1, 2, 2],
                [2, 1, 2],
                [2, 2, 0],
                [2, 2, 1],
            ],
            z2,
            vec![0, 0, 1],
            f,
            vec![
                Scalar::real(1.0),
                Scalar::real(1.0),
                Scalar::real(std::f64::consts::SQRT_2),
            ],
            Some(vec![
                Scalar::real(1.0),
                Scalar::real(1.0),
                Scalar::real(2f64.powf(0.25)),
            ]),
        )
        .unwrap()
    }

    /// Fibonacci data matching `data/fibonacci.json`.
    pub(crate) fn fibonacci() -> SkeletalCategory {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let trivial = Arc::new(FiniteGroup::trivial());
        let mut f = HashMap::new();
        f.insert([1, 1, 1, 1, 0, 0], Scalar::real(1.0 / phi));
        f.insert([1, 1, 1, 1, 0, 1], Scalar::real(1.0 / phi.sqrt()));
        f.insert([1, 1, 1, 1, 1, 0], Scalar::real(1.0 / phi.sqrt()));
        f.insert([1, 1, 1, 1, 1, 1], Scalar::real(-1.0 / phi));
        SkeletalCategory::from_parts(
            vec!["1".into(), "tau".into()],
            vec![0, 1],
            &[[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]],
            trivial,
            vec![0, 0],
            f,
            vec![Scalar::real(1.0), Scalar::real(phi)],
            Some(vec![Scalar::real(1.0), Scalar::real(phi.sqrt())]),
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cyclic_generator, product_generator, ProductGenerator};

    fn z2() -> Arc<FiniteGroup> {
        Arc::new(FiniteGroup::cyclic(2).unwrap())
    }

    #[test]
    fn pointed_trivial_z2() {
        let g = z2();
        let cat = SkeletalCategory::pointed(g.clone(), &neutral_cocycle(&g)).unwrap();
        assert_eq!(cat.num_simples(), 2);
        assert!(cat.is_exact());
        assert!(cat
            .admissible_f_labels()
            .iter()
            .all(|&[a, b, c, d, u, v]| cat.f_symbol(a, b, c, d, u, v) == Scalar::one()));
        assert!(cat.check_pentagon().pass);
        assert!(cat.check_grading().pass());
        assert!(matches!(
            cat.check_rigidity(),
            RigidityReport::Checked { pass: true, .. }
        ));
    }

    #[test]
    fn pointed_z2_sign_cocycle() {
        let omega = cyclic_generator(2, 1).unwrap();
        let cat = SkeletalCategory::pointed(omega.group.clone(), &omega).unwrap();
        assert_eq!(
            cat.f_symbol(1, 1, 1, 1, 0, 0),
            Scalar::Exact(Phase::new(1, 2))
        );
        assert_eq!(cat.f_symbol(1, 1, 0, 0, 0, 1), Scalar::one());
        assert!(cat.check_pentagon().pass);
        // R̄ coefficient picks up ω(a⁻¹,a,a⁻¹)
        assert_eq!(cat.rbar_coeff(1), Some(Scalar::Exact(Phase::new(1, 2))));
    }

    #[test]
    fn pentagon_iff_cocycle() {
        // generators pass; a perturbed table fails with a witness
        let g222 = Arc::new(FiniteGroup::product(&[2, 2, 2]).unwrap());
        let omega =
            product_generator(&g222, ProductGenerator::Triple { i: 0, j: 1, k: 2 }).unwrap();
        let cat = SkeletalCategory::pointed(g222.clone(), &omega).unwrap();
        let rep = cat.check_pentagon();
        assert!(rep.pass);
        assert_eq!(rep.max_residual, 0.0);

        // pointed categories reject non-cocycles outright
        let mut bad = GroupCochain::neutral(g222.clone(), 3);
        bad.set(&[1, 1, 1], Phase::new(1, 2));
        assert!(!bad.is_cocycle());
        assert!(SkeletalCategory::pointed(g222, &bad).is_err());
    }

    #[test]
    fn twist_composes_pointwise() {
        let g = Arc::new(FiniteGroup::cyclic(4).unwrap());
        let w1 = cyclic_generator(4, 1).unwrap();
        let w2 = cyclic_generator(4, 2).unwrap();
        let c1 = SkeletalCategory::pointed(g.clone(), &w1).unwrap();
        let tw = c1.twist(&w2).unwrap();
        let direct = SkeletalCategory::pointed(g, &w1.pointwise_mul(&w2).unwrap()).unwrap();
        for key in tw.admissible_f_labels() {
            let [a, b, c, d, u, v] = key;
            assert_eq!(tw.f_symbol(a, b, c, d, u, v), direct.f_symbol(a, b, c, d, u, v));
        }
        assert!(tw.check_pentagon().pass);
        assert!(tw.is_exact());

        // twist by the neutral cocycle changes nothing
        let neutral = neutral_cocycle(&tw.grading_group);
        let same = direct.twist(&neutral).unwrap();
        for key in same.admissible_f_labels() {
            let [a, b, c, d, u, v] = key;
            assert_eq!(
                same.f_symbol(a, b, c, d, u, v),
                direct.f_symbol(a, b, c, d, u, v)
            );
        }
    }

    #[test]
    fn twist_functorial_and_involutive() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let w1 = cyclic_generator(3, 1).unwrap();
        let w2 = cyclic_generator(3, 2).unwrap();
        let base = SkeletalCategory::pointed(g, &neutral_cocycle(&w1.group)).unwrap();
        let ab = base.twist(&w1.pointwise_mul(&w2).unwrap()).unwrap();
        let chained = base.twist(&w1).unwrap().twist(&w2).unwrap();
        for key in ab.admissible_f_labels() {
            let [a, b, c, d, u, v] = key;
            assert_eq!(ab.f_symbol(a, b, c, d, u, v), chained.f_symbol(a, b, c, d, u, v));
        }
        // twist then untwist restores the table
        let back = base.twist(&w1).unwrap().twist(&w1.conj()).unwrap();
        for key in back.admissible_f_labels() {
            let [a, b, c, d, u, v] = key;
            assert_eq!(back.f_symbol(a, b, c, d, u, v), base.f_symbol(a, b, c, d, u, v));
        }
    }

    #[test]
    fn shipped_data_validates() {
        let ising = test_support::ising();
        assert!(ising.validate().is_ok());
        let p = ising.check_pentagon();
        assert!(p.pass, "residual {}", p.max_residual);
        assert!(ising.check_grading().pass());

        let fib = test_support::fibonacci();
        assert!(fib.validate().is_ok());
        let p = fib.check_pentagon();
        assert!(p.pass && p.max_residual < 1e-12, "residual {}", p.max_residual);
        assert!(matches!(
            fib.check_rigidity(),
            RigidityReport::Checked { pass: true, .. }
        ));
    }

    #[test]
    fn perturbed_fibonacci_fails_pentagon() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let trivial = Arc::new(FiniteGroup::trivial());
        let mut f = HashMap::new();
        f.insert([1, 1, 1, 1, 0, 0], Scalar::real(1.0 / phi));
        // sign of one entry flipped
        f.insert([1, 1, 1, 1, 0, 1], Scalar::real(-1.0 / phi.sqrt()));
        f.insert([1, 1, 1, 1, 1, 0], Scalar::real(1.0 / phi.sqrt()));
        f.insert([1, 1, 1, 1, 1, 1], Scalar::real(-1.0 / phi));
        let cat = SkeletalCategory::from_parts(
            vec!["1".into(), "tau".into()],
            vec![0, 1],
            &[[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]],
            trivial,
            vec![0, 0],
            f,
            vec![Scalar::real(1.0), Scalar::real(phi)],
            Some(vec![Scalar::real(1.0), Scalar::real(phi.sqrt())]),
        )
        .unwrap();
        let rep = cat.check_pentagon();
        assert!(!rep.pass);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn ising_twisted_by_sign_cocycle() {
        let ising = test_support::ising();
        let omega = cyclic_generator(2, 1).unwrap();
        let tw = ising.twist(&omega).unwrap();
        assert!(tw.check_pentagon().pass);
        // odd-degree triple (σ,σ,σ) flips sign, even-degree entries unchanged
        let before = ising.f_symbol(2, 2, 2, 2, 0, 0).to_complex();
        let after = tw.f_symbol(2, 2, 2, 2, 0, 0).to_complex();
        assert!((before + after).norm() < 1e-14);
        let even_before = ising.f_symbol(1, 2, 1, 2, 2, 2).to_complex();
        let even_after = tw.f_symbol(1, 2, 1, 2, 2, 2).to_complex();
        assert!((even_before - even_after).norm() < 1e-14);
    }

    #[test]
    fn ising_with_sigma_in_degree_zero_fails_support() {
        let ising = test_support::ising();
        let mut grading = vec![0usize, 0, 0];
        let rebuilt = SkeletalCategory::from_parts(
            (0..3).map(|i| ising.name(i).to_string()).collect(),
            (0..3).map(|i| ising.dual(i)).collect(),
            &[
                [0, 0, 0],
                [0, 1, 1],
                [0, 2, 2],
                [1, 0, 1],
                [2, 0, 2],
                [1, 1, 0],
                [1, 2, 2],
                [2, 1, 2],
                [2, 2, 0],
                [2, 2, 1],
            ],
            ising.grading_group.clone(),
            std::mem::take(&mut grading),
            HashMap::new(),
            vec![Scalar::real(1.0); 3],
            None,
        )
        .unwrap();
        let rep = rebuilt.check_grading();
        assert!(rep.tensor_compatible && rep.dual_inverts_degree && rep.unit_in_trivial_degree);
        assert!(!rep.support_generates);
        assert!(!rep.pass());
    }

    #[test]
    fn doubled_duality_coefficient_fails_rigidity() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let trivial = Arc::new(FiniteGroup::trivial());
        let mut f = HashMap::new();
        f.insert([1, 1, 1, 1, 0, 0], Scalar::real(1.0 / phi));
        f.insert([1, 1, 1, 1, 0, 1], Scalar::real(1.0 / phi.sqrt()));
        f.insert([1, 1, 1, 1, 1, 0], Scalar::real(1.0 / phi.sqrt()));
        f.insert([1, 1, 1, 1, 1, 1], Scalar::real(-1.0 / phi));
        let cat = SkeletalCategory::from_parts(
            vec!["1".into(), "tau".into()],
            vec![0, 1],
            &[[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]],
            trivial,
            vec![0, 0],
            f,
            vec![Scalar::real(1.0), Scalar::real(phi)],
            Some(vec![Scalar::real(1.0), Scalar::real(2.0 * phi.sqrt())]),
        )
        .unwrap();
        match cat.check_rigidity() {
            RigidityReport::Checked { pass, .. } => assert!(!pass),
            RigidityReport::Unavailable => panic!("duality data is present"),
        }
        // no duality data at all: involution unavailable, not a failure
        let cat2 = SkeletalCategory::from_parts(
            vec!["1".into(), "tau".into()],
            vec![0, 1],
            &[[0, 0, 0], [0, 1, 1], [1, 0, 1], [1, 1, 0], [1, 1, 1]],
            Arc::new(FiniteGroup::trivial()),
            vec![0, 0],
            HashMap::new(),
            vec![Scalar::real(1.0), Scalar::real(phi)],
            None,
        )
        .unwrap();
        assert!(matches!(cat2.check_rigidity(), RigidityReport::Unavailable));
    }

    #[test]
    fn grading_rejects_mismatch() {
        let g = z2();
        let omega = neutral_cocycle(&g);
        let cat = SkeletalCategory::pointed(g, &omega).unwrap();
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let w3 = cyclic_generator(3, 1).unwrap();
        assert!(matches!(
            cat.twist(&w3),
            Err(CategoryError::GradingGroupMismatch)
        ));
        let _ = z3;
    }
}
