//! Semisimple structure of a tube algebra: center dimension, Wedderburn
//! block sizes and the per-class split along the Fell decomposition.
//!
//! The center is the nullspace of the stacked commutator system, solved
//! block by block. When the structure constants are phases with exponent
//! denominator dividing 4 the rank is computed exactly over the Gaussian
//! rationals; otherwise a float rank with tolerance 1e-8 is used. Block
//! dimensions come from the spectrum of a random Hermitian central element
//! in orthonormal coordinates.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{
    self, cholesky_factor, hermitian_eigenvalues, inv_upper_from_cholesky, CMat, GaussRat,
};
use crate::scalar::Scalar;
use crate::tube::TubeAlgebra;

pub const DEFAULT_SEED: u64 = 0xA11CE;
const FLOAT_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum SpectrumError {
    #[error("unit synthesis failed; the algebra is not unital as stored")]
    NonUnital,
    #[error("involution unavailable; Wedderburn analysis needs the *-structure")]
    InvolutionUnavailable,
    #[error("spectral degeneracy persisted after {0} reseeds; use the exact path")]
    Degenerate(usize),
    #[error(transparent)]
    Tube(#[from] crate::tube::TubeError),
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassReport {
    /// Least element of the conjugacy class in the grading group.
    pub class_rep: usize,
    pub class_label: String,
    pub block_dim: usize,
    pub center_dim: usize,
    pub block_dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WedderburnReport {
    pub algebra_dim: usize,
    pub center_dim: usize,
    pub block_dims: Vec<usize>,
    pub per_class: Vec<ClassReport>,
    pub commutative: bool,
    pub exact_center: bool,
    pub seed: u64,
}

/// The stacked commutator system for one Fell block: one signed term per
/// structure constant, row `(a, r)`, column `m`, for `[x, e_a] = 0`.
struct CommutatorSystem {
    rows: usize,
    cols: usize,
    terms: Vec<(usize, usize, Scalar, bool)>,
}

fn commutator_system(t: &TubeAlgebra, members: &[usize]) -> CommutatorSystem {
    let pos: std::collections::HashMap<usize, usize> =
        members.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let dim = members.len();
    let mut terms = Vec::new();
    for (ap, &a) in members.iter().enumerate() {
        for (mp, &m) in members.iter().enumerate() {
            for (r, c) in t.product_entry(m, a) {
                terms.push((ap * dim + pos[r], mp, c.clone(), false));
            }
            for (r, c) in t.product_entry(a, m) {
                terms.push((ap * dim + pos[r], mp, c.clone(), true));
            }
        }
    }
    CommutatorSystem {
        rows: dim * dim,
        cols: dim,
        terms,
    }
}

fn scalar_to_gauss(s: &Scalar) -> Option<GaussRat> {
    match s {
        Scalar::Zero => Some(GaussRat::zero()),
        Scalar::Exact(p) => p.to_gaussian_rational().map(|(re, im)| GaussRat { re, im }),
        Scalar::Approx(_) => None,
    }
}

fn system_to_cmat(sys: &CommutatorSystem) -> CMat {
    let mut m = CMat::zeros(sys.rows, sys.cols);
    for (r, c, s, negate) in &sys.terms {
        let v = if *negate {
            -s.to_complex()
        } else {
            s.to_complex()
        };
        let cur = m.get(*r, *c) + v;
        m.set(*r, *c, cur);
    }
    m
}

fn system_to_gauss(sys: &CommutatorSystem) -> Option<Vec<GaussRat>> {
    let mut data = vec![GaussRat::zero(); sys.rows * sys.cols];
    for (r, c, s, negate) in &sys.terms {
        let g = scalar_to_gauss(s)?;
        let cell = &mut data[r * sys.cols + c];
        if *negate {
            cell.sub_assign(&g);
        } else {
            cell.add_assign(&g);
        }
    }
    Some(data)
}

/// Center dimension of one block; exact when every coefficient converts.
fn block_center_dim(t: &TubeAlgebra, members: &[usize]) -> (usize, bool) {
    let dim = members.len();
    if dim == 0 {
        return (0, true);
    }
    let sys = commutator_system(t, members);
    match system_to_gauss(&sys) {
        Some(data) => {
            let rank = linalg::rank_exact(sys.rows, sys.cols, data);
            (dim - rank, true)
        }
        None => {
            let rank = linalg::rank(system_to_cmat(&sys), FLOAT_TOL);
            (dim - rank, false)
        }
    }
}

/// Number of irreducible representations, computed as `dim Z(T)` summed
/// over the Fell blocks.
pub fn center_dimension(t: &TubeAlgebra) -> Result<(usize, bool), SpectrumError> {
    t.unit_element().map_err(|_| SpectrumError::NonUnital)?;
    let mut total = 0;
    let mut exact = true;
    for block in t.fell_blocks() {
        let (d, e) = block_center_dim(t, &block.members);
        total += d;
        exact &= e;
    }
    Ok((total, exact))
}

/// Wedderburn block dimensions of one Fell block via the spectrum of a
/// random Hermitian central element.
fn block_wedderburn(
    t: &TubeAlgebra,
    members: &[usize],
    center_dim: usize,
    seed: u64,
) -> Result<Vec<usize>, SpectrumError> {
    let dim = members.len();
    if dim == 0 {
        return Ok(Vec::new());
    }
    if center_dim == dim {
        // commutative block: all lines
        return Ok(vec![1; dim]);
    }
    let pos: std::collections::HashMap<usize, usize> =
        members.iter().enumerate().map(|(p, &i)| (i, p)).collect();

    // float center basis from the commutator system
    let center = linalg::nullspace(system_to_cmat(&commutator_system(t, members)), FLOAT_TOL);

    // Gram factor for orthonormal coordinates: H[i][j] = ⟨e_j, e_i⟩
    let mut h = CMat::zeros(dim, dim);
    for (ip, &i) in members.iter().enumerate() {
        for (jp, &j) in members.iter().enumerate() {
            h.set(ip, jp, t.gram_entry(j, i)?.to_complex());
        }
    }
    let l = cholesky_factor(&h).ok_or(SpectrumError::Degenerate(0))?;
    let linv = inv_upper_from_cholesky(&l);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let max_reseeds = 3;
    for _attempt in 0..max_reseeds {
        // random Hermitian central element z = w + w^# over the center
        // basis; complex coefficients, otherwise conjugate-pair blocks give
        // systematically equal real parts and never separate
        let mut w = vec![Complex64::new(0.0, 0.0); t.dim()];
        for v in &center {
            let c = Complex64::new(rng.gen_range(0.1..1.0), rng.gen_range(0.1..1.0));
            for (p, &i) in members.iter().enumerate() {
                w[i] += c * v[p];
            }
        }
        let wh = t.involute(&w).map_err(|_| SpectrumError::InvolutionUnavailable)?;
        let z: Vec<Complex64> = w.iter().zip(&wh).map(|(a, b)| a + b).collect();

        // left multiplication matrix on the block
        let mut zmat = CMat::zeros(dim, dim);
        for (jp, &j) in members.iter().enumerate() {
            for &i in members {
                if z[i].norm() == 0.0 {
                    continue;
                }
                for (r, c) in t.product_entry(i, j) {
                    let rp = pos[r];
                    let v = zmat.get(rp, jp) + z[i] * c.to_complex();
                    zmat.set(rp, jp, v);
                }
            }
        }
        // conjugate into orthonormal coordinates: L^H Z L^{-H}
        let mut lh_z = CMat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    acc += l.get(k, i).conj() * zmat.get(k, j);
                }
                lh_z.set(i, j, acc);
            }
        }
        let mut zon = CMat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                let mut acc = Complex64::new(0.0, 0.0);
                for k in 0..dim {
                    acc += lh_z.get(i, k) * linv.get(k, j);
                }
                zon.set(i, j, acc);
            }
        }
        let mut eigen = hermitian_eigenvalues(&zon, 60);
        eigen.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let spread = (eigen[dim - 1] - eigen[0]).abs().max(1.0);
        let tol = 1e-6 * spread;
        let mut clusters: Vec<usize> = Vec::new();
        let mut count = 1;
        for i in 1..dim {
            if (eigen[i] - eigen[i - 1]).abs() < tol {
                count += 1;
            } else {
                clusters.push(count);
                count = 1;
            }
        }
        clusters.push(count);

        if clusters.len() == center_dim {
            let dims: Option<Vec<usize>> = clusters
                .iter()
                .map(|&mult| {
                    let d = (mult as f64).sqrt().round() as usize;
                    (d * d == mult).then_some(d)
                })
                .collect();
            if let Some(mut dims) = dims {
                if dims.iter().map(|d| d * d).sum::<usize>() == dim {
                    dims.sort_unstable();
                    return Ok(dims);
                }
            }
        }
    }
    Err(SpectrumError::Degenerate(max_reseeds))
}

pub fn wedderburn(t: &TubeAlgebra, seed: u64) -> Result<WedderburnReport, SpectrumError> {
    if !t.has_involution() {
        return Err(SpectrumError::InvolutionUnavailable);
    }
    t.unit_element().map_err(|_| SpectrumError::NonUnital)?;
    let g = &t.category.grading_group;
    let mut per_class = Vec::new();
    let mut block_dims = Vec::new();
    let mut center_total = 0;
    let mut exact_center = true;
    for block in t.fell_blocks() {
        let (cd, exact) = block_center_dim(t, &block.members);
        exact_center &= exact;
        let dims = block_wedderburn(t, &block.members, cd, seed)?;
        center_total += cd;
        block_dims.extend(dims.iter().copied());
        per_class.push(ClassReport {
            class_rep: block.class_rep,
            class_label: g.label(block.class_rep),
            block_dim: block.members.len(),
            center_dim: cd,
            block_dims: dims,
        });
    }
    block_dims.sort_unstable();
    Ok(WedderburnReport {
        algebra_dim: t.dim(),
        center_dim: center_total,
        commutative: center_total == t.dim(),
        block_dims,
        per_class,
        exact_center,
        seed,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassDelta {
    pub class_rep: usize,
    pub center_dim_left: usize,
    pub center_dim_right: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectraComparison {
    pub equal_center: bool,
    pub equal_blocks: bool,
    pub center_left: usize,
    pub center_right: usize,
    pub deltas: Vec<ClassDelta>,
}

pub fn compare_spectra(a: &WedderburnReport, b: &WedderburnReport) -> SpectraComparison {
    let deltas = a
        .per_class
        .iter()
        .zip(&b.per_class)
        .filter(|(x, y)| x.center_dim != y.center_dim || x.block_dims != y.block_dims)
        .map(|(x, y)| ClassDelta {
            class_rep: x.class_rep,
            center_dim_left: x.center_dim,
            center_dim_right: y.center_dim,
        })
        .collect();
    SpectraComparison {
        equal_center: a.center_dim == b.center_dim,
        equal_blocks: a.block_dims == b.block_dims,
        center_left: a.center_dim,
        center_right: b.center_dim,
        deltas,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{cyclic_generator, product_generator, ProductGenerator};
    use crate::fusion::{neutral_cocycle, SkeletalCategory};
    use crate::groups::test_support::symmetric_3;
    use crate::groups::FiniteGroup;
    use std::sync::Arc;

    fn pointed_tube(group: &Arc<FiniteGroup>, omega: &crate::cohomology::GroupCochain) -> TubeAlgebra {
        let cat = Arc::new(SkeletalCategory::pointed(group.clone(), omega).unwrap());
        TubeAlgebra::build(cat).unwrap()
    }

    #[test]
    fn center_of_untwisted_z2_cubed_is_full() {
        let g = Arc::new(FiniteGroup::product(&[2, 2, 2]).unwrap());
        let t = pointed_tube(&g, &neutral_cocycle(&g));
        let (c, exact) = center_dimension(&t).unwrap();
        assert_eq!(c, 64);
        assert!(exact);
        let rep = wedderburn(&t, DEFAULT_SEED).unwrap();
        assert!(rep.commutative);
        assert_eq!(rep.block_dims, vec![1; 64]);
    }

    #[test]
    fn center_of_signed_z2() {
        let omega = cyclic_generator(2, 1).unwrap();
        let t = pointed_tube(&omega.group, &omega);
        let (c, exact) = center_dimension(&t).unwrap();
        assert_eq!(c, 4);
        assert!(exact);
        let rep = wedderburn(&t, DEFAULT_SEED).unwrap();
        assert_eq!(rep.block_dims, vec![1, 1, 1, 1]);
    }

    #[test]
    fn center_of_pointed_s3() {
        let s3 = Arc::new(symmetric_3());
        let t = pointed_tube(&s3, &neutral_cocycle(&s3));
        let (c, exact) = center_dimension(&t).unwrap();
        // Σ_σ #Irr(C_Γ(a)) = 3 + 2 + 3
        assert_eq!(c, 8);
        assert!(exact);
        let rep = wedderburn(&t, DEFAULT_SEED).unwrap();
        assert_eq!(rep.center_dim, 8);
        assert_eq!(rep.algebra_dim, 36);
        let sum: usize = rep.block_dims.iter().map(|d| d * d).sum();
        assert_eq!(sum, 36);
        let per_total: usize = rep.per_class.iter().map(|c| c.center_dim).sum();
        assert_eq!(per_total, rep.center_dim);
    }

    #[test]
    fn twisted_z2_cubed_spectrum() {
        let g = Arc::new(FiniteGroup::product(&[2, 2, 2]).unwrap());
        let omega =
            product_generator(&g, ProductGenerator::Triple { i: 0, j: 1, k: 2 }).unwrap();
        let t = pointed_tube(&g, &omega);
        let (c, exact) = center_dimension(&t).unwrap();
        assert_eq!(c, 22);
        assert!(exact);
        let rep = wedderburn(&t, DEFAULT_SEED).unwrap();
        assert_eq!(rep.center_dim, 22);
        // eight lines from the class of e, fourteen 2×2 blocks elsewhere
        let ones = rep.block_dims.iter().filter(|&&d| d == 1).count();
        let twos = rep.block_dims.iter().filter(|&&d| d == 2).count();
        assert_eq!((ones, twos), (8, 14));
        // the block over a = (0,0,1) (element index 1) splits as {2,2}
        let block = rep
            .per_class
            .iter()
            .find(|c| c.class_rep == 1)
            .unwrap();
        assert_eq!(block.block_dims, vec![2, 2]);
        assert_eq!(block.block_dim, 8);
        assert!(!rep.commutative);
    }

    #[test]
    fn compare_untwisted_and_twisted() {
        let g = Arc::new(FiniteGroup::product(&[2, 2, 2]).unwrap());
        let omega =
            product_generator(&g, ProductGenerator::Triple { i: 0, j: 1, k: 2 }).unwrap();
        let plain = pointed_tube(&g, &neutral_cocycle(&g));
        let twisted = pointed_tube(&g, &omega);
        let ra = wedderburn(&plain, DEFAULT_SEED).unwrap();
        let rb = wedderburn(&twisted, DEFAULT_SEED).unwrap();
        let cmp = compare_spectra(&ra, &rb);
        assert!(!cmp.equal_center);
        assert!(cmp.center_right < cmp.center_left);

        // neutral bundle twist leaves the spectrum alone
        let psi = crate::groupoid::induce_psi(&neutral_cocycle(&g)).unwrap();
        let same = plain.twist_fell_bundle(&psi).unwrap();
        let rc = wedderburn(&same, DEFAULT_SEED).unwrap();
        let cmp2 = compare_spectra(&ra, &rc);
        assert!(cmp2.equal_center && cmp2.equal_blocks);
    }

    #[test]
    fn spectrum_invariant_under_coboundary_twist() {
        use crate::cohomology::GroupCochain;
        use crate::phase::Phase;
        for n in [3usize, 4, 6] {
            let g = Arc::new(FiniteGroup::cyclic(n).unwrap());
            let t = pointed_tube(&g, &neutral_cocycle(&g));
            let base = wedderburn(&t, DEFAULT_SEED).unwrap();
            // twist by δη for a normalized 1-cochain η on the groupoid side:
            // use a coboundary 3-cocycle δβ of a 2-cochain β
            let beta = GroupCochain::from_fn(g.clone(), 2, |tu| {
                Phase::new((tu[0] * tu[1]) as i64, (2 * n) as i64)
            });
            let omega = beta.coboundary();
            assert!(omega.is_cocycle() && omega.is_normalized());
            let tw = pointed_tube(&g, &omega);
            let rep = wedderburn(&tw, DEFAULT_SEED).unwrap();
            let cmp = compare_spectra(&base, &rep);
            assert!(cmp.equal_center && cmp.equal_blocks, "n = {n}");
        }
    }

    #[test]
    fn center_matches_brute_force_class_count_for_pointed() {
        // pointed(Γ, 1): center dim = Σ_a #conj-classes of C_Γ(a) over class reps
        let s3 = Arc::new(symmetric_3());
        let mut expected = 0;
        for class in s3.conjugacy_classes() {
            let a = class[0];
            let (sub, _) = s3.subgroup(&s3.centralizer(a)).unwrap();
            expected += sub.conjugacy_classes().len();
        }
        let t = pointed_tube(&s3, &neutral_cocycle(&s3));
        assert_eq!(center_dimension(&t).unwrap().0, expected);
    }

    #[test]
    fn wedderburn_requires_involution() {
        use crate::scalar::Scalar;
        use std::collections::HashMap;
        let trivial = Arc::new(FiniteGroup::trivial());
        let cat = SkeletalCategory::from_parts(
            vec!["1".into()],
            vec![0],
            &[[0, 0, 0]],
            trivial,
            vec![0],
            HashMap::new(),
            vec![Scalar::real(1.0)],
            None,
        )
        .unwrap();
        let t = TubeAlgebra::build(Arc::new(cat)).unwrap();
        assert!(matches!(
            wedderburn(&t, DEFAULT_SEED),
            Err(SpectrumError::InvolutionUnavailable)
        ));
        // center still works product-only
        assert_eq!(center_dimension(&t).unwrap().0, 1);
    }
}
