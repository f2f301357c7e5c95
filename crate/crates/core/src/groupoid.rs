//! The adjoint action groupoid `Γ ⋉_Ad Γ` and the 2-cocycles a group
//! 3-cocycle induces on it.
//!
//! An arrow `(s, γ)` runs from `γ` to `sγs⁻¹`; `(s, γ)·(t, γ′)` is defined
//! exactly when `γ = tγ′t⁻¹` and equals `(st, γ′)`. Arrows enumerate in
//! lexicographic `(s, γ)` order so every emitted table is reproducible.

use std::sync::Arc;

use thiserror::Error;

use crate::cohomology::{
    index_tuple, EquivariantCochain, GroupCochain, GroupoidCochain,
};
use crate::groups::FiniteGroup;

#[derive(Debug, Error)]
pub enum GroupoidError {
    #[error("input must be a normalized 3-cocycle (degree {degree}, normalized {normalized}, cocycle {cocycle})")]
    NotANormalizedThreeCocycle {
        degree: usize,
        normalized: bool,
        cocycle: bool,
    },
    #[error("cochain is not a unit-normalized groupoid 2-cocycle")]
    NotAUnitNormalizedCocycle,
    #[error("symmetry ψ(g,g⁻¹) = ψ(g⁻¹,g) fails at arrow ({s}, {dom})")]
    SymmetryFailure { s: usize, dom: usize },
    #[error("element {0} is outside the group")]
    ElementOutOfRange(usize),
    #[error("coboundary certificate failed at a composable pair; implementation bug")]
    CertificateFailure,
}

/// An arrow of `Γ ⋉_Ad Γ`: conjugation by `s` based at `dom`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub s: usize,
    pub dom: usize,
}

impl Arrow {
    pub fn codom(&self, group: &FiniteGroup) -> usize {
        group.conj(self.s, self.dom)
    }

    pub fn is_unit(&self) -> bool {
        self.s == 0
    }

    pub fn inverse(&self, group: &FiniteGroup) -> Arrow {
        Arrow {
            s: group.inv(self.s),
            dom: self.codom(group),
        }
    }

    /// `self · other`, defined when `dom(self) = codom(other)`.
    pub fn compose(&self, other: &Arrow, group: &FiniteGroup) -> Option<Arrow> {
        if self.dom != other.codom(group) {
            return None;
        }
        Some(Arrow {
            s: group.mul(self.s, other.s),
            dom: other.dom,
        })
    }
}

/// `Γ ⋉_Ad Γ` for a fixed finite group.
#[derive(Clone, Debug, PartialEq)]
pub struct ActionGroupoid {
    pub group: Arc<FiniteGroup>,
}

impl ActionGroupoid {
    pub fn new(group: Arc<FiniteGroup>) -> Self {
        ActionGroupoid { group }
    }

    pub fn unit(&self, x: usize) -> Arrow {
        Arrow { s: 0, dom: x }
    }

    /// All arrows in lexicographic `(s, dom)` order.
    pub fn arrows(&self) -> impl Iterator<Item = Arrow> + '_ {
        let n = self.group.order();
        (0..n).flat_map(move |s| (0..n).map(move |dom| Arrow { s, dom }))
    }

    pub fn is_composable(&self, arrows: &[Arrow]) -> bool {
        arrows
            .windows(2)
            .all(|w| w[0].dom == w[1].codom(&self.group))
    }

    /// Decodes the dense index `(s₁, …, sₙ, dom gₙ)` into a composable tuple.
    pub fn tuple_from_index(&self, degree: usize, idx: usize) -> Vec<Arrow> {
        let order = self.group.order();
        let parts = index_tuple(order, degree + 1, idx);
        let mut arrows = vec![Arrow { s: 0, dom: 0 }; degree];
        let mut dom = parts[degree];
        for i in (0..degree).rev() {
            arrows[i] = Arrow { s: parts[i], dom };
            dom = arrows[i].codom(&self.group);
        }
        arrows
    }

    pub fn index_of_tuple(&self, arrows: &[Arrow]) -> usize {
        let order = self.group.order();
        let mut idx = 0;
        for g in arrows {
            idx = idx * order + g.s;
        }
        idx * order + arrows.last().map(|g| g.dom).unwrap_or(0)
    }

    /// Composable `n`-tuples, `|Γ|ⁿ⁺¹` of them, in index order.
    pub fn composable_tuples(&self, degree: usize) -> impl Iterator<Item = Vec<Arrow>> + '_ {
        assert!(degree >= 1);
        let count = self.group.order().pow((degree + 1) as u32);
        (0..count).map(move |idx| self.tuple_from_index(degree, idx))
    }
}

fn require_normalized_three_cocycle(omega: &GroupCochain) -> Result<(), GroupoidError> {
    let normalized = omega.is_normalized();
    let cocycle = omega.is_cocycle();
    if omega.degree() != 3 || !normalized || !cocycle {
        return Err(GroupoidError::NotANormalizedThreeCocycle {
            degree: omega.degree(),
            normalized,
            cocycle,
        });
    }
    Ok(())
}

/// The equivariant 2-cochain
/// `Ψ[s,t](γ) = ω(γ,s,t)·ω̄(s, s⁻¹γs, t)·ω(s, t, t⁻¹s⁻¹γst)`.
pub fn induce_big_psi(omega: &GroupCochain) -> Result<EquivariantCochain, GroupoidError> {
    require_normalized_three_cocycle(omega)?;
    let g = omega.group.clone();
    let om = omega.clone();
    Ok(EquivariantCochain::from_fn(g.clone(), 2, move |st, gamma| {
        let (s, t) = (st[0], st[1]);
        let gs = g.conj(g.inv(s), gamma);
        let gst = g.conj(g.inv(t), gs);
        om.value(&[gamma, s, t])
            * &(om.value(&[s, gs, t]).conj() * om.value(&[s, t, gst]).clone())
    }))
}

/// The groupoid 2-cocycle
/// `ψ(g₁,g₂) = ω(codom g₁, s₁, s₂)·ω̄(s₁, dom g₁, s₂)·ω(s₁, s₂, dom g₂)`.
///
/// This is the equivariant cochain `Ψ` read through the cochain isomorphism
/// with the action groupoid; the two stay equal tablewise.
pub fn induce_psi(omega: &GroupCochain) -> Result<GroupoidCochain, GroupoidError> {
    require_normalized_three_cocycle(omega)?;
    let group = omega.group.clone();
    let groupoid = Arc::new(ActionGroupoid::new(group.clone()));
    let om = omega.clone();
    Ok(GroupoidCochain::from_fn(groupoid, 2, move |t| {
        let (g1, g2) = (t[0], t[1]);
        om.value(&[g1.codom(&group), g1.s, g2.s])
            * &(om.value(&[g1.s, g1.dom, g2.s]).conj()
                * om.value(&[g1.s, g2.s, g2.dom]).clone())
    }))
}

/// The restriction of `Ψ` to the isotropy group at `a`, as a 2-cochain on
/// the centralizer `C_Γ(a)`: `φ_a(s,t) = ω(a,s,t)·ω̄(s,a,t)·ω(s,t,a)`.
#[derive(Clone, Debug)]
pub struct CentralizerCocycle {
    /// The centralizer as a group in its own right, identity at index 0.
    pub subgroup: Arc<FiniteGroup>,
    /// Subgroup index → ambient element index.
    pub embed: Vec<usize>,
    pub cochain: GroupCochain,
}

pub fn centralizer_cocycle(
    omega: &GroupCochain,
    a: usize,
) -> Result<CentralizerCocycle, GroupoidError> {
    require_normalized_three_cocycle(omega)?;
    let g = &omega.group;
    if a >= g.order() {
        return Err(GroupoidError::ElementOutOfRange(a));
    }
    let elements = g.centralizer(a);
    let (sub, embed) = g
        .subgroup(&elements)
        .expect("centralizers are closed under the group operations");
    let sub = Arc::new(sub);
    let emb = embed.clone();
    let om = omega.clone();
    let cochain = GroupCochain::from_fn(sub.clone(), 2, move |t| {
        let (s, tt) = (emb[t[0]], emb[t[1]]);
        om.value(&[a, s, tt]) * &(om.value(&[s, a, tt]).conj() * om.value(&[s, tt, a]).clone())
    });
    Ok(CentralizerCocycle {
        subgroup: sub,
        embed,
        cochain,
    })
}

/// Output of [`normalize_psi`]: the square-root cochain `ξ` and the
/// cohomologous cocycle `ψ′ = ψ·δ¹ξ̄` with `ψ′(g, g⁻¹) = 1`.
pub struct NormalizedPsi {
    pub xi: GroupoidCochain,
    pub psi_prime: GroupoidCochain,
}

/// Chooses `ξ(g) = principal_sqrt(ψ(g, g⁻¹))` and renormalizes.
///
/// Requires `ψ(g, dom g) = 1 = ψ(codom g, g)`; under that hypothesis
/// `ψ(g, g⁻¹) = ψ(g⁻¹, g)`, which makes `ξ(g) = ξ(g⁻¹)` automatic.
pub fn normalize_psi(psi: &GroupoidCochain) -> Result<NormalizedPsi, GroupoidError> {
    if psi.degree() != 2 || !psi.is_cocycle() {
        return Err(GroupoidError::NotAUnitNormalizedCocycle);
    }
    let gd = psi.groupoid.clone();
    let group = &gd.group;
    for g in gd.arrows() {
        let u_dom = gd.unit(g.dom);
        let u_cod = gd.unit(g.codom(group));
        if !psi.value(&[g, u_dom]).is_one() || !psi.value(&[u_cod, g]).is_one() {
            return Err(GroupoidError::NotAUnitNormalizedCocycle);
        }
    }
    for g in gd.arrows() {
        let gi = g.inverse(group);
        if psi.value(&[g, gi]) != psi.value(&[gi, g]) {
            return Err(GroupoidError::SymmetryFailure { s: g.s, dom: g.dom });
        }
    }
    let psi_c = psi.clone();
    let grp = group.clone();
    let xi = GroupoidCochain::from_fn(gd.clone(), 1, move |t| {
        let g = t[0];
        psi_c.value(&[g, g.inverse(&grp)]).principal_sqrt()
    });
    let psi_prime = psi.pointwise_mul(&xi.conj().coboundary()).expect("same groupoid");
    // ψ′(g, g⁻¹) = 1 by construction
    debug_assert!(gd
        .arrows()
        .all(|g| psi_prime.value(&[g, g.inverse(group)]).is_one()));
    Ok(NormalizedPsi { xi, psi_prime })
}

/// The monad-side 2-cochain
/// `ψ̃(g₁,g₂) = ω(γ,s,t)·ω̄(t⁻¹,s⁻¹,γst)·ω(s⁻¹,γs,t)·ω̄(t⁻¹s⁻¹,s,t)·ω(t⁻¹,s⁻¹,s)`
/// with `γ = codom g₁`, `s = s₁`, `t = s₂`, together with the verified
/// certificate `ψ̃ = ψ·δ(ξ̄₀)`, `ξ₀(g) = ω(s⁻¹, s, dom g)`.
pub struct MonadCochain {
    pub psi_tilde: GroupoidCochain,
    pub xi0: GroupoidCochain,
    /// Number of composable pairs the certificate was checked on.
    pub pairs_checked: usize,
}

pub fn monad_psi_tilde(omega: &GroupCochain) -> Result<MonadCochain, GroupoidError> {
    require_normalized_three_cocycle(omega)?;
    let group = omega.group.clone();
    let groupoid = Arc::new(ActionGroupoid::new(group.clone()));
    let om = omega.clone();
    let grp = group.clone();
    let psi_tilde = GroupoidCochain::from_fn(groupoid.clone(), 2, move |t| {
        let (g1, g2) = (t[0], t[1]);
        let (s, tt) = (g1.s, g2.s);
        let gamma = g1.codom(&grp);
        let si = grp.inv(s);
        let ti = grp.inv(tt);
        let gs = grp.mul(gamma, s);
        let gst = grp.mul(gs, tt);
        om.value(&[gamma, s, tt])
            * &(om.value(&[ti, si, gst]).conj()
                * &(om.value(&[si, gs, tt])
                    * &(om.value(&[grp.mul(ti, si), s, tt]).conj()
                        * om.value(&[ti, si, s]).clone())))
    });

    let omc = omega.clone();
    let grp2 = group.clone();
    let xi0 = GroupoidCochain::from_fn(groupoid.clone(), 1, move |t| {
        let g = t[0];
        let si = grp2.inv(g.s);
        omc.value(&[si, g.s, g.dom]).clone()
    });

    let psi = induce_psi(omega)?;
    let expected = psi
        .pointwise_mul(&xi0.conj().coboundary())
        .expect("same groupoid");
    let mut pairs_checked = 0;
    for pair in groupoid.composable_tuples(2) {
        if psi_tilde.value(&pair) != expected.value(&pair) {
            return Err(GroupoidError::CertificateFailure);
        }
        pairs_checked += 1;
    }
    Ok(MonadCochain {
        psi_tilde,
        xi0,
        pairs_checked,
    })
}
