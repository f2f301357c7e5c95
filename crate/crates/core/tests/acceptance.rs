//! Acceptance suite: each numbered check runs one cited claim end to end
//! at its stated tolerance and prints one pass/fail line.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use tubetwist::cohomology::{
    cyclic_generator, product_generator, residue_identity_check, solve_coboundary, GroupCochain,
    ProductGenerator,
};
use tubetwist::fusion::{neutral_cocycle, SkeletalCategory};
use tubetwist::groupoid::{
    centralizer_cocycle, induce_psi, monad_psi_tilde, normalize_psi, Arrow,
};
use tubetwist::groups::FiniteGroup;
use tubetwist::phase::Phase;
use tubetwist::scalar::Scalar;
use tubetwist::specs::{resolve_category, resolve_group, GroupSpec};
use tubetwist::spectrum::{center_dimension, compare_spectra, wedderburn, DEFAULT_SEED};
use tubetwist::tube::{
    coboundary_transport, verify_twist_theorem, LawCheckMode, TubeAlgebra,
};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

fn load_group(name: &str) -> Arc<FiniteGroup> {
    let spec: GroupSpec =
        serde_json::from_str(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
    resolve_group(&spec).unwrap()
}

fn load_category(name: &str) -> Arc<SkeletalCategory> {
    let spec: tubetwist::specs::CategorySpec =
        serde_json::from_str(&std::fs::read_to_string(data(name)).unwrap()).unwrap();
    resolve_category(&spec).unwrap()
}

/// The acceptance matrix: every generator (and pullback, for S₃) 3-cocycle
/// on each listed group.
fn cocycle_matrix() -> Vec<(String, Arc<FiniteGroup>, GroupCochain)> {
    let mut out = Vec::new();
    for n in [2usize, 3, 4, 6] {
        for k in 0..n {
            let w = cyclic_generator(n, k).unwrap();
            out.push((format!("Z/{n} k={k}"), w.group.clone(), w));
        }
    }
    for (label, factors) in [("Z/2×Z/2", vec![2u32, 2]), ("(Z/2)³", vec![2, 2, 2])] {
        let g = Arc::new(FiniteGroup::product(&factors).unwrap());
        let nf = factors.len();
        for i in 0..nf {
            let w = product_generator(&g, ProductGenerator::Factor { i, level: 1 }).unwrap();
            out.push((format!("{label} factor {i}"), g.clone(), w));
        }
        for i in 0..nf {
            for j in 0..nf {
                if i == j {
                    continue;
                }
                let w = product_generator(&g, ProductGenerator::Pair { i, j }).unwrap();
                out.push((format!("{label} pair ({i},{j})"), g.clone(), w));
            }
        }
        if nf == 3 {
            let w =
                product_generator(&g, ProductGenerator::Triple { i: 0, j: 1, k: 2 }).unwrap();
            out.push((format!("{label} triple"), g.clone(), w));
        }
    }
    // S₃ from the shipped table, with the sign pullback and the neutral class
    let s3 = load_group("s3.json");
    let spec: tubetwist::specs::CocycleSpec =
        serde_json::from_str(&std::fs::read_to_string(data("s3_sign_pullback.json")).unwrap())
            .unwrap();
    let pulled = tubetwist::specs::resolve_cocycle(&spec, Some(&s3)).unwrap();
    out.push(("S₃ sign pullback".into(), s3.clone(), pulled));
    out.push(("S₃ neutral".into(), s3.clone(), neutral_cocycle(&s3)));
    out
}

fn report(name: &str, start: Instant, limit_s: f64) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("[PASS] {name} ({elapsed:.2}s, limit {limit_s}s)");
    assert!(
        elapsed < limit_s,
        "{name} took {elapsed:.2}s, over the {limit_s}s budget"
    );
}

/// 1. Induced-cocycle suite: ψ = induce_psi(ω) is a groupoid 2-cocycle over
/// all |Γ|⁴ composable triples, exactly, for the whole matrix.
#[test]
fn criterion_01_induced_cocycles() {
    let start = Instant::now();
    for (name, group, omega) in cocycle_matrix() {
        let psi = induce_psi(&omega).unwrap();
        assert!(psi.is_normalized(), "{name}: ψ not unit-normalized");
        assert!(
            psi.cocycle_witness().is_none(),
            "{name}: δψ ≠ 1 somewhere"
        );
        let triples = group.order().pow(4);
        assert_eq!(psi.groupoid.composable_tuples(3).count(), triples);
    }
    report("criterion 1: induced groupoid 2-cocycles (exact)", start, 5.0);
}

/// 2. Main theorem, exact: the twisted-category route and the bundle-twist
/// route produce identical product and involution tables, discrepancy 0.
#[test]
fn criterion_02_twist_theorem_exact() {
    let start = Instant::now();
    for (name, group, omega) in cocycle_matrix() {
        let cat = Arc::new(SkeletalCategory::pointed(group.clone(), &neutral_cocycle(&group)).unwrap());
        let rep = verify_twist_theorem(&cat, &omega).unwrap();
        assert!(rep.exact, "{name}: expected the exact path");
        assert!(rep.pass, "{name}: {:?}", rep.witness);
        assert_eq!(rep.max_discrepancy, 0.0, "{name}");
    }
    // nontrivial base categories twist exactly as well
    let w1 = cyclic_generator(4, 1).unwrap();
    let w2 = cyclic_generator(4, 2).unwrap();
    let base = Arc::new(SkeletalCategory::pointed(w1.group.clone(), &w1).unwrap());
    let rep = verify_twist_theorem(&base, &w2).unwrap();
    assert!(rep.pass && rep.exact && rep.max_discrepancy == 0.0);
    report("criterion 2: twist theorem, exact pointed matrix", start, 10.0);
}

/// 3. Main theorem, skeletal: shipped Ising data with ω¹ on Z/2.
#[test]
fn criterion_03_twist_theorem_ising() {
    let start = Instant::now();
    let ising = load_category("ising.json");
    let omega = cyclic_generator(2, 1).unwrap();
    let rep = verify_twist_theorem(&ising, &omega).unwrap();
    assert!(rep.pass, "{:?}", rep.witness);
    assert!(rep.max_discrepancy < 1e-9, "{}", rep.max_discrepancy);
    report("criterion 3: twist theorem on Ising data (float)", start, 5.0);
}

/// 4. The (Z/2)³ / φ₁₂₃ example: commutative 64 untwisted, center 22 and a
/// {2,2} block over a=(0,0,1) twisted, strictly fewer irreducibles.
#[test]
fn criterion_04_z2cubed_spectra() {
    let start = Instant::now();
    let plain = load_category("pointed_z2cubed_trivial.json");
    let twisted = load_category("pointed_z2cubed_phi123.json");
    let t_plain = TubeAlgebra::build(plain).unwrap();
    let t_twisted = TubeAlgebra::build(twisted).unwrap();

    assert_eq!(t_plain.dim(), 64);
    let (c_plain, exact) = center_dimension(&t_plain).unwrap();
    assert!(exact, "exact path required");
    assert_eq!(c_plain, 64, "untwisted tube algebra is commutative of dim 2⁶");

    let (c_twisted, exact) = center_dimension(&t_twisted).unwrap();
    assert!(exact, "exact path required");
    assert_eq!(c_twisted, 22);

    let rep_plain = wedderburn(&t_plain, DEFAULT_SEED).unwrap();
    let rep_twisted = wedderburn(&t_twisted, DEFAULT_SEED).unwrap();
    assert!(rep_plain.commutative);
    let block_a = rep_twisted
        .per_class
        .iter()
        .find(|c| c.class_rep == 1)
        .expect("a = (0,0,1) is element index 1");
    assert_eq!(block_a.block_dims, vec![2, 2], "noncommutative summand");

    let cmp = compare_spectra(&rep_plain, &rep_twisted);
    assert!(!cmp.equal_center && cmp.center_right < cmp.center_left);
    report("criterion 4: (Z/2)³ φ₁₂₃ spectra, exact path", start, 30.0);
}

/// 5. Cyclic triviality: for Z/n, n ≤ 6, all k, all a, solve the block
/// coboundary problem and certify blockwise table equality exactly.
#[test]
fn criterion_05_cyclic_triviality() {
    let start = Instant::now();
    for n in 1..=6usize {
        let group = Arc::new(FiniteGroup::cyclic(n).unwrap());
        let plain = TubeAlgebra::build(Arc::new(
            SkeletalCategory::pointed(group.clone(), &neutral_cocycle(&group)).unwrap(),
        ))
        .unwrap();
        for k in 0..n {
            let omega = cyclic_generator(n, k).unwrap();
            let twisted = TubeAlgebra::build(Arc::new(
                SkeletalCategory::pointed(group.clone(), &omega).unwrap(),
            ))
            .unwrap();
            let psi = induce_psi(&omega).unwrap();
            let np = normalize_psi(&psi).unwrap();
            for a in 0..n {
                let phi = centralizer_cocycle(&omega, a).unwrap();
                let xi_restr = GroupCochain::from_fn(phi.subgroup.clone(), 1, |t| {
                    np.xi
                        .value(&[Arrow {
                            s: phi.embed[t[0]],
                            dom: a,
                        }])
                        .clone()
                });
                let phi_prime = phi
                    .cochain
                    .pointwise_mul(&xi_restr.conj().coboundary())
                    .unwrap();
                let eta = solve_coboundary(&phi_prime)
                    .unwrap_or_else(|e| panic!("n={n} k={k} a={a}: {e}"));
                let cert = coboundary_transport(&twisted, &plain, &omega, a, &eta)
                    .unwrap_or_else(|e| panic!("n={n} k={k} a={a}: {e}"));
                assert_eq!(cert.block_dim, n);
            }
        }
    }
    report("criterion 5: cyclic blockwise triviality, exact", start, 10.0);
}

/// 6. Algebra law suite: associativity, involution laws, traciality, Gram
/// positivity, sector orthogonality and Fell closure.
#[test]
fn criterion_06_algebra_laws() {
    let start = Instant::now();
    let mut algebras: Vec<(String, TubeAlgebra)> = Vec::new();
    // exact pointed, |Γ| ≤ 8, exhaustive
    for (name, group, omega) in [
        ("Z/2 signed", cyclic_generator(2, 1).unwrap()),
        ("Z/4 k=1", cyclic_generator(4, 1).unwrap()),
    ]
    .map(|(n, w)| (n, w.group.clone(), w))
    {
        let cat = Arc::new(SkeletalCategory::pointed(group, &omega).unwrap());
        algebras.push((name.to_string(), TubeAlgebra::build(cat).unwrap()));
    }
    let g222 = Arc::new(FiniteGroup::product(&[2, 2, 2]).unwrap());
    let phi123 = product_generator(&g222, ProductGenerator::Triple { i: 0, j: 1, k: 2 }).unwrap();
    algebras.push((
        "(Z/2)³ φ₁₂₃".into(),
        TubeAlgebra::build(Arc::new(SkeletalCategory::pointed(g222, &phi123).unwrap())).unwrap(),
    ));
    let s3 = load_group("s3.json");
    algebras.push((
        "S₃ neutral".into(),
        TubeAlgebra::build(Arc::new(
            SkeletalCategory::pointed(s3.clone(), &neutral_cocycle(&s3)).unwrap(),
        ))
        .unwrap(),
    ));
    for (name, t) in &algebras {
        t.verify_laws(LawCheckMode::Exhaustive)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
    }
    // skeletal data: 1000 random triples under 1e-9
    for name in ["ising.json", "fibonacci.json"] {
        let t = TubeAlgebra::build(load_category(name)).unwrap();
        let rep = t
            .verify_laws(LawCheckMode::Random {
                samples: 1000,
                seed: 23,
            })
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(rep.associativity_residual < 1e-9, "{name}");
        algebras.push((name.to_string(), t));
    }
    // Gram positivity and sector orthogonality, |basis| ≤ 64
    for (name, t) in &algebras {
        let n = t.dim();
        let mut gram = tubetwist::linalg::CMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = t.gram_entry(i, j).unwrap();
                if t.basis[i].s != t.basis[j].s {
                    assert!(
                        v.abs_diff(&Scalar::Zero) < 1e-12,
                        "{name}: sectors not orthogonal"
                    );
                }
                gram.set(i, j, v.to_complex());
            }
        }
        let pivot = tubetwist::linalg::cholesky_min_pivot(&gram)
            .unwrap_or_else(|| panic!("{name}: Gram not positive definite"));
        assert!(pivot > 0.0, "{name}");
    }
    report("criterion 6: algebra law suite", start, 30.0);
}

/// 7. Morita corner identity: e^# • e recovers the unit at the base object,
/// exhaustively, untwisted S₃ and twisted Z/2.
#[test]
fn criterion_07_corner_identity() {
    let start = Instant::now();
    let s3 = load_group("s3.json");
    let t = TubeAlgebra::build(Arc::new(
        SkeletalCategory::pointed(s3.clone(), &neutral_cocycle(&s3)).unwrap(),
    ))
    .unwrap();
    assert_eq!(t.corner_unit_check().unwrap(), 36);

    let omega = cyclic_generator(2, 1).unwrap();
    let tw = TubeAlgebra::build(Arc::new(
        SkeletalCategory::pointed(omega.group.clone(), &omega).unwrap(),
    ))
    .unwrap();
    assert_eq!(tw.corner_unit_check().unwrap(), 4);
    report("criterion 7: Morita corner identity", start, 5.0);
}

/// 8. Monad remark: ψ̃ = ψ·δξ̄₀ with ξ₀(g) = ω(s⁻¹, s, γ), exhaustively.
#[test]
fn criterion_08_monad_cochain() {
    let start = Instant::now();
    for (name, group, omega) in cocycle_matrix() {
        let m = monad_psi_tilde(&omega).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(m.pairs_checked, group.order().pow(3), "{name}");
    }
    report("criterion 8: monad cochain certificate", start, 10.0);
}

/// 9. Normalization lemma: ψ(g,g⁻¹) = ψ(g⁻¹,g); ψ′ kills those values and
/// stays a cocycle.
#[test]
fn criterion_09_normalization_lemma() {
    let start = Instant::now();
    for (name, _, omega) in cocycle_matrix() {
        let psi = induce_psi(&omega).unwrap();
        let gd = psi.groupoid.clone();
        for g in gd.arrows() {
            let gi = g.inverse(&gd.group);
            assert_eq!(
                psi.value(&[g, gi]),
                psi.value(&[gi, g]),
                "{name}: symmetry fails"
            );
        }
        let np = normalize_psi(&psi).unwrap_or_else(|e| panic!("{name}: {e}"));
        for g in gd.arrows() {
            let gi = g.inverse(&gd.group);
            assert!(np.psi_prime.value(&[g, gi]).is_one(), "{name}");
            assert_eq!(np.xi.value(&[g]), np.xi.value(&[gi]), "{name}");
            assert!(np.xi.value(&[gd.unit(g.dom)]).is_one(), "{name}");
            let sq = np.xi.value(&[g]).principal_sqrt();
            let _ = sq; // ξ itself is the square root; checked next
            assert_eq!(
                &(np.xi.value(&[g]) * np.xi.value(&[g])),
                psi.value(&[g, gi]),
                "{name}: ξ² ≠ ψ(g,g⁻¹)"
            );
        }
        assert!(np.psi_prime.is_cocycle(), "{name}");
    }
    report("criterion 9: normalization lemma", start, 10.0);
}

/// 10. Residue identity for n ≤ 12.
#[test]
fn criterion_10_residue_identity() {
    let start = Instant::now();
    for n in 1..=12 {
        assert!(residue_identity_check(n), "n = {n}");
    }
    report("criterion 10: residue identity", start, 5.0);
}

/// The pointed tube algebra has dimension |Γ|² and block dims |σ|·|Γ|;
/// cross-checked here for the matrix groups (supporting invariant).
#[test]
fn supporting_dimension_counts() {
    let start = Instant::now();
    for name in ["z2.json", "z4.json", "s3.json"] {
        let g = load_group(name);
        let t = TubeAlgebra::build(Arc::new(
            SkeletalCategory::pointed(g.clone(), &neutral_cocycle(&g)).unwrap(),
        ))
        .unwrap();
        assert_eq!(t.dim(), g.order() * g.order());
        for block in t.fell_blocks() {
            let class_len = g
                .conjugacy_classes()
                .into_iter()
                .find(|c| c.contains(&block.class_rep))
                .unwrap()
                .len();
            assert_eq!(block.members.len(), class_len * g.order());
        }
    }
    // Fibonacci channel count frozen from the admissibility enumeration
    let t = TubeAlgebra::build(load_category("fibonacci.json")).unwrap();
    assert_eq!(t.dim(), 7);
    report("supporting: dimension counts", start, 5.0);
}

/// Phase example values used throughout the suite (sanity anchors).
#[test]
fn supporting_phase_anchors() {
    let start = Instant::now();
    assert_eq!(Phase::new(1, 2) * Phase::new(1, 2), Phase::one());
    assert_eq!(Phase::new(1, 2).principal_sqrt(), Phase::new(1, 4));
    let omega = cyclic_generator(4, 1).unwrap();
    assert_eq!(omega.value(&[3, 3, 2]), &Phase::new(1, 2));
    report("supporting: phase anchors", start, 5.0);
}
