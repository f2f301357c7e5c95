//! Cochains on finite groups and on the adjoint action groupoid, with
//! unit-circle coefficients and trivial action.
//!
//! Everything is stored dense over tuples and computed in exact [`Phase`]
//! arithmetic: cocycle identities are equalities here, not tolerances.
//! The coboundary solver reduces `δη = target` to an integer linear system
//! mod D on the exponents and runs Smith reduction on it.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::groupoid::{ActionGroupoid, Arrow};
use crate::groups::{FiniteGroup, GroupHom};
use crate::phase::Phase;
use crate::snf::{self, IntMat};

#[derive(Debug, Error)]
pub enum CohomologyError {
    #[error("cochains live on different groups")]
    GroupMismatch,
    #[error("cochain degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("cochain on the wrong group for this operation")]
    WrongGroup,
    #[error("target is not a cocycle (witness tuple {0:?})")]
    NotACocycle(Vec<usize>),
    #[error("no coboundary solution at searched denominators {0:?}")]
    NoSolution(Vec<BigInt>),
    #[error("generator index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("generator level {level} out of range for modulus {modulus}")]
    LevelOutOfRange { level: usize, modulus: usize },
    #[error("generator indices must be distinct")]
    IndicesNotDistinct,
    #[error("group has no cyclic-product coordinates")]
    MissingCoords,
}

pub(crate) fn tuple_index(order: usize, tuple: &[usize]) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * order + t)
}

pub(crate) fn index_tuple(order: usize, degree: usize, mut idx: usize) -> Vec<usize> {
    let mut t = vec![0usize; degree];
    for i in (0..degree).rev() {
        t[i] = idx % order;
        idx /= order;
    }
    t
}

/// A dense map `Γⁿ → T`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupCochain {
    pub group: Arc<FiniteGroup>,
    degree: usize,
    values: Vec<Phase>,
}

impl GroupCochain {
    pub fn neutral(group: Arc<FiniteGroup>, degree: usize) -> Self {
        let len = group.order().pow(degree as u32);
        GroupCochain {
            group,
            degree,
            values: vec![Phase::one(); len],
        }
    }

    pub fn from_fn(
        group: Arc<FiniteGroup>,
        degree: usize,
        mut f: impl FnMut(&[usize]) -> Phase,
    ) -> Self {
        let order = group.order();
        let len = order.pow(degree as u32);
        let values = (0..len)
            .map(|idx| f(&index_tuple(order, degree, idx)))
            .collect();
        GroupCochain {
            group,
            degree,
            values,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value(&self, tuple: &[usize]) -> &Phase {
        debug_assert_eq!(tuple.len(), self.degree);
        &self.values[tuple_index(self.group.order(), tuple)]
    }

    pub fn values(&self) -> &[Phase] {
        &self.values
    }

    #[cfg(test)]
    pub(crate) fn set(&mut self, tuple: &[usize], p: Phase) {
        let idx = tuple_index(self.group.order(), tuple);
        self.values[idx] = p;
    }

    /// Neutral whenever some argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let order = self.group.order();
        (0..self.values.len()).all(|idx| {
            let t = index_tuple(order, self.degree, idx);
            !t.contains(&0) || self.values[idx].is_one()
        })
    }

    /// `δⁿ` with trivial action on the coefficients.
    pub fn coboundary(&self) -> GroupCochain {
        let n = self.degree;
        let g = self.group.clone();
        let group = self.group.clone();
        GroupCochain::from_fn(group, n + 1, |tuple| {
            let mut acc = self.value(&tuple[1..]).clone();
            let mut sign: i64 = -1;
            for i in 0..n {
                let mut t = Vec::with_capacity(n);
                t.extend_from_slice(&tuple[..i]);
                t.push(g.mul(tuple[i], tuple[i + 1]));
                t.extend_from_slice(&tuple[i + 2..]);
                acc = acc * self.value(&t).pow(sign);
                sign = -sign;
            }
            acc * self.value(&tuple[..n]).pow(sign)
        })
    }

    /// First tuple where `δc` is not neutral, `None` when `c` is a cocycle.
    pub fn cocycle_witness(&self) -> Option<Vec<usize>> {
        let d = self.coboundary();
        let order = self.group.order();
        d.values
            .iter()
            .position(|p| !p.is_one())
            .map(|idx| index_tuple(order, d.degree, idx))
    }

    pub fn is_cocycle(&self) -> bool {
        self.cocycle_witness().is_none()
    }

    pub fn pointwise_mul(&self, other: &GroupCochain) -> Result<GroupCochain, CohomologyError> {
        if self.degree != other.degree {
            return Err(CohomologyError::DegreeMismatch(self.degree, other.degree));
        }
        if !same_group(&self.group, &other.group) {
            return Err(CohomologyError::GroupMismatch);
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .collect();
        Ok(GroupCochain {
            group: self.group.clone(),
            degree: self.degree,
            values,
        })
    }

    pub fn conj(&self) -> GroupCochain {
        GroupCochain {
            group: self.group.clone(),
            degree: self.degree,
            values: self.values.iter().map(Phase::conj).collect(),
        }
    }

    /// Largest denominator appearing among the values.
    pub fn denominator_lcm(&self) -> BigInt {
        self.values
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator()))
    }
}

fn same_group(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    a.order() == b.order()
        && a.elements()
            .all(|x| a.elements().all(|y| a.mul(x, y) == b.mul(x, y)))
}

/// `h*c`, the cochain `(x₁..xₙ) ↦ c(h(x₁)..h(xₙ))` on the source of `h`.
pub fn pullback(h: &GroupHom, c: &GroupCochain) -> Result<GroupCochain, CohomologyError> {
    if !same_group(&h.target, &c.group) {
        return Err(CohomologyError::WrongGroup);
    }
    Ok(GroupCochain::from_fn(
        h.source.clone(),
        c.degree,
        |tuple| {
            let image: Vec<usize> = tuple.iter().map(|&x| h.apply(x)).collect();
            c.value(&image).clone()
        },
    ))
}

/// The standard degree-3 generator on `Z/n` at level `k`:
/// exponent `k·⌊(a+b)/n⌋·c/n` on canonical residues.
pub fn cyclic_generator(n: usize, k: usize) -> Result<GroupCochain, CohomologyError> {
    if k >= n {
        return Err(CohomologyError::LevelOutOfRange {
            level: k,
            modulus: n,
        });
    }
    let group = Arc::new(FiniteGroup::cyclic(n).expect("n >= 1"));
    Ok(GroupCochain::from_fn(group, 3, |t| {
        let carry = ((t[0] + t[1]) / n) as i64;
        Phase::new(k as i64 * carry * t[2] as i64, n as i64)
    }))
}

/// The three families of degree-3 generators on a product of cyclic groups.
#[derive(Clone, Copy, Debug)]
pub enum ProductGenerator {
    /// Per-factor cyclic generator at `level` on factor `i`.
    Factor { i: usize, level: usize },
    /// Carry in factor `i` paired with the coordinate of factor `j`.
    Pair { i: usize, j: usize },
    /// `a_i·b_j·c_k / gcd(n_i, n_j, n_k)`.
    Triple { i: usize, j: usize, k: usize },
}

pub fn product_generator(
    group: &Arc<FiniteGroup>,
    gen: ProductGenerator,
) -> Result<GroupCochain, CohomologyError> {
    let coords = group.coords().ok_or(CohomologyError::MissingCoords)?;
    let moduli = coords.moduli.clone();
    let nf = moduli.len();
    let check = |i: usize| {
        if i < nf {
            Ok(())
        } else {
            Err(CohomologyError::IndexOutOfRange(i))
        }
    };
    match gen {
        ProductGenerator::Factor { i, level } => {
            check(i)?;
            let n = moduli[i] as usize;
            if level >= n {
                return Err(CohomologyError::LevelOutOfRange {
                    level,
                    modulus: n,
                });
            }
        }
        ProductGenerator::Pair { i, j } => {
            check(i)?;
            check(j)?;
            if i == j {
                return Err(CohomologyError::IndicesNotDistinct);
            }
        }
        ProductGenerator::Triple { i, j, k } => {
            check(i)?;
            check(j)?;
            check(k)?;
            if i == j || j == k || i == k {
                return Err(CohomologyError::IndicesNotDistinct);
            }
        }
    }
    let g = group.clone();
    Ok(GroupCochain::from_fn(group.clone(), 3, move |t| {
        let ca = g.coords().unwrap().of(t[0]);
        let cb = g.coords().unwrap().of(t[1]);
        let cc = g.coords().unwrap().of(t[2]);
        match gen {
            ProductGenerator::Factor { i, level } => {
                let n = moduli[i] as i64;
                let carry = ((ca[i] + cb[i]) as i64) / n;
                Phase::new(level as i64 * carry * cc[i] as i64, n)
            }
            ProductGenerator::Pair { i, j } => {
                let carry = ((ca[i] + cb[i]) as i64) / moduli[i] as i64;
                Phase::new(carry * cc[j] as i64, moduli[j] as i64)
            }
            ProductGenerator::Triple { i, j, k } => {
                let d = gcd3(moduli[i], moduli[j], moduli[k]) as i64;
                Phase::new(ca[i] as i64 * cb[j] as i64 * cc[k] as i64, d)
            }
        }
    }))
}

fn gcd3(a: u32, b: u32, c: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    gcd(gcd(a, b), c)
}

/// `r(s) + r(t) − r(s+t) = n(⌊(s+t)/n⌋ − ⌊s/n⌋ − ⌊t/n⌋)` for all
/// `−2n ≤ s, t < 2n`, with `r` the canonical residue.
pub fn residue_identity_check(n: i64) -> bool {
    assert!(n >= 1);
    let r = |m: i64| m.rem_euclid(n);
    for s in -2 * n..2 * n {
        for t in -2 * n..2 * n {
            let lhs = r(s) + r(t) - r(s + t);
            let rhs = n * ((s + t).div_euclid(n) - s.div_euclid(n) - t.div_euclid(n));
            if lhs != rhs {
                return false;
            }
        }
    }
    true
}

/// Solves `δη = target` for a group cochain `η` of one lower degree.
///
/// Works at the exponent level: unknown phases are `y/D` with
/// `D = lcm(target denominators)·exp(Γ)`, doubled once before giving up.
/// A `NoSolution` is relative to the searched denominators.
pub fn solve_coboundary(target: &GroupCochain) -> Result<GroupCochain, CohomologyError> {
    if let Some(w) = target.cocycle_witness() {
        return Err(CohomologyError::NotACocycle(w));
    }
    let n = target.degree;
    assert!(n >= 1, "cannot solve below degree 1");
    let order = target.group.order();
    let unknowns = order.pow((n - 1) as u32);
    let equations = order.pow(n as u32);

    let mut mat = IntMat::zeros(equations, unknowns);
    for row in 0..equations {
        let tuple = index_tuple(order, n, row);
        let mut add = |t: &[usize], sign: i64| {
            let col = tuple_index(order, t);
            mat[(row, col)] += BigInt::from(sign);
        };
        add(&tuple[1..], 1);
        let mut sign: i64 = -1;
        for i in 0..n - 1 {
            let mut t = Vec::with_capacity(n - 1);
            t.extend_from_slice(&tuple[..i]);
            t.push(target.group.mul(tuple[i], tuple[i + 1]));
            t.extend_from_slice(&tuple[i + 2..]);
            add(&t, sign);
            sign = -sign;
        }
        add(&tuple[..n - 1], sign);
    }

    let base = target.denominator_lcm() * BigInt::from(target.group.exponent());
    let mut tried = Vec::new();
    for d in [base.clone(), &base * BigInt::from(2)] {
        let rhs: Vec<BigInt> = target
            .values
            .iter()
            .map(|p| (p.exponent() * BigRational::from(d.clone())).to_integer())
            .collect();
        if let Some(y) = snf::solve_mod(&mat, &rhs, &d) {
            let eta = GroupCochain {
                group: target.group.clone(),
                degree: n - 1,
                values: y
                    .iter()
                    .map(|v| Phase::from_rational(BigRational::new(v.clone(), d.clone())))
                    .collect(),
            };
            debug_assert_eq!(&eta.coboundary(), target);
            return Ok(eta);
        }
        tried.push(d);
    }
    Err(CohomologyError::NoSolution(tried))
}

// ---------------------------------------------------------------------------
// groupoid cochains
// ---------------------------------------------------------------------------

/// A dense map on composable `n`-tuples of arrows of `Γ ⋉_Ad Γ`.
///
/// A composable tuple `(g₁, …, gₙ)` is stored at the index built from
/// `(s₁, …, sₙ, dom gₙ)`; this enumerates exactly the `|Γ|ⁿ⁺¹` tuples.
/// Degree 0 is a function on the objects.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupoidCochain {
    pub groupoid: Arc<ActionGroupoid>,
    degree: usize,
    values: Vec<Phase>,
}

impl GroupoidCochain {
    pub fn neutral(groupoid: Arc<ActionGroupoid>, degree: usize) -> Self {
        let order = groupoid.group.order();
        GroupoidCochain {
            groupoid,
            degree,
            values: vec![Phase::one(); order.pow((degree + 1) as u32)],
        }
    }

    pub fn from_fn(
        groupoid: Arc<ActionGroupoid>,
        degree: usize,
        mut f: impl FnMut(&[Arrow]) -> Phase,
    ) -> Self {
        assert!(degree >= 1, "use on_objects for degree 0");
        let order = groupoid.group.order();
        let len = order.pow((degree + 1) as u32);
        let gd = groupoid.clone();
        let values = (0..len)
            .map(|idx| f(&gd.tuple_from_index(degree, idx)))
            .collect();
        GroupoidCochain {
            groupoid,
            degree,
            values,
        }
    }

    /// Degree-0 constructor from a function on objects.
    pub fn on_objects(groupoid: Arc<ActionGroupoid>, mut f: impl FnMut(usize) -> Phase) -> Self {
        let order = groupoid.group.order();
        GroupoidCochain {
            groupoid,
            degree: 0,
            values: (0..order).map(|x| f(x)).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value(&self, arrows: &[Arrow]) -> &Phase {
        debug_assert_eq!(arrows.len(), self.degree);
        debug_assert!(self.groupoid.is_composable(arrows));
        &self.values[self.groupoid.index_of_tuple(arrows)]
    }

    /// Degree-0 value on an object.
    pub fn object_value(&self, x: usize) -> &Phase {
        assert_eq!(self.degree, 0);
        &self.values[x]
    }

    pub fn is_normalized(&self) -> bool {
        if self.degree == 0 {
            return true;
        }
        let len = self.values.len();
        (0..len).all(|idx| {
            let t = self.groupoid.tuple_from_index(self.degree, idx);
            !t.iter().any(|g| g.is_unit()) || self.values[idx].is_one()
        })
    }

    pub fn coboundary(&self) -> GroupoidCochain {
        let n = self.degree;
        let gd = self.groupoid.clone();
        if n == 0 {
            let this = self.clone();
            return GroupoidCochain::from_fn(gd, 1, move |t| {
                let g = t[0];
                this.object_value(g.dom) * &this.object_value(g.codom(&this.groupoid.group)).conj()
            });
        }
        let this = self.clone();
        let group = self.groupoid.group.clone();
        GroupoidCochain::from_fn(gd, n + 1, move |tuple| {
            let mut acc = this.value(&tuple[1..]).clone();
            let mut sign: i64 = -1;
            for i in 0..n {
                let mut t = Vec::with_capacity(n);
                t.extend_from_slice(&tuple[..i]);
                t.push(tuple[i].compose(&tuple[i + 1], &group).expect("composable"));
                t.extend_from_slice(&tuple[i + 2..]);
                acc = acc * this.value(&t).pow(sign);
                sign = -sign;
            }
            acc * this.value(&tuple[..n]).pow(sign)
        })
    }

    pub fn cocycle_witness(&self) -> Option<Vec<Arrow>> {
        let d = self.coboundary();
        d.values
            .iter()
            .position(|p| !p.is_one())
            .map(|idx| self.groupoid.tuple_from_index(d.degree, idx))
    }

    pub fn is_cocycle(&self) -> bool {
        self.cocycle_witness().is_none()
    }

    pub fn pointwise_mul(&self, other: &GroupoidCochain) -> Result<GroupoidCochain, CohomologyError> {
        if self.degree != other.degree {
            return Err(CohomologyError::DegreeMismatch(self.degree, other.degree));
        }
        if !same_group(&self.groupoid.group, &other.groupoid.group) {
            return Err(CohomologyError::GroupMismatch);
        }
        Ok(GroupoidCochain {
            groupoid: self.groupoid.clone(),
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    pub fn conj(&self) -> GroupoidCochain {
        GroupoidCochain {
            groupoid: self.groupoid.clone(),
            degree: self.degree,
            values: self.values.iter().map(Phase::conj).collect(),
        }
    }

    pub fn denominator_lcm(&self) -> BigInt {
        self.values
            .iter()
            .fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator()))
    }

    /// The equivariant form `ψ̃[γ₁..γₙ](x₀) = ψ(g₁..gₙ)` with
    /// `gᵢ = (γᵢ, xᵢ)`, `xᵢ = γᵢ⁻¹·xᵢ₋₁·γᵢ`.
    pub fn to_equivariant(&self) -> EquivariantCochain {
        let group = self.groupoid.group.clone();
        let n = self.degree;
        if n == 0 {
            let this = self.clone();
            return EquivariantCochain::from_fn(group, 0, move |_, x| this.object_value(x).clone());
        }
        let this = self.clone();
        EquivariantCochain::from_fn(group.clone(), n, move |params, x0| {
            let mut arrows = Vec::with_capacity(n);
            let mut x = x0;
            for &s in params {
                let dom = group.conj(group.inv(s), x);
                arrows.push(Arrow { s, dom });
                x = dom;
            }
            this.value(&arrows).clone()
        })
    }

    pub fn from_equivariant(
        eq: &EquivariantCochain,
        groupoid: Arc<ActionGroupoid>,
    ) -> Result<GroupoidCochain, CohomologyError> {
        if !same_group(&eq.group, &groupoid.group) {
            return Err(CohomologyError::GroupMismatch);
        }
        let n = eq.degree;
        if n == 0 {
            let eqc = eq.clone();
            return Ok(GroupoidCochain::on_objects(groupoid, move |x| {
                eqc.value(&[], x).clone()
            }));
        }
        let group = groupoid.group.clone();
        let eqc = eq.clone();
        Ok(GroupoidCochain::from_fn(groupoid, n, move |arrows| {
            let params: Vec<usize> = arrows.iter().map(|g| g.s).collect();
            let x0 = arrows[0].codom(&group);
            eqc.value(&params, x0).clone()
        }))
    }
}

/// Solves `δη = target` on the groupoid complex.
pub fn solve_groupoid_coboundary(
    target: &GroupoidCochain,
) -> Result<GroupoidCochain, CohomologyError> {
    if target.cocycle_witness().is_some() {
        return Err(CohomologyError::NotACocycle(vec![]));
    }
    let n = target.degree;
    assert!(n >= 1);
    let gd = &target.groupoid;
    let group = &gd.group;
    let order = group.order();
    let unknowns = order.pow(n as u32);
    let equations = order.pow((n + 1) as u32);

    let mut mat = IntMat::zeros(equations, unknowns);
    for row in 0..equations {
        let tuple = gd.tuple_from_index(n, row);
        let mut add = |t: &[Arrow], sign: i64| {
            let col = if n == 1 {
                // unknowns are on objects
                t.first().map(|g| g.dom).unwrap_or(0)
            } else {
                gd.index_of_tuple(t)
            };
            mat[(row, col)] += BigInt::from(sign);
        };
        if n == 1 {
            // δ⁰f(g) = f(dom g) − f(codom g)
            let g = tuple[0];
            mat[(row, g.dom)] += BigInt::one();
            mat[(row, g.codom(group))] -= BigInt::one();
        } else {
            add(&tuple[1..], 1);
            let mut sign: i64 = -1;
            for i in 0..n - 1 {
                let mut t = Vec::with_capacity(n - 1);
                t.extend_from_slice(&tuple[..i]);
                t.push(tuple[i].compose(&tuple[i + 1], group).expect("composable"));
                t.extend_from_slice(&tuple[i + 2..]);
                add(&t, sign);
                sign = -sign;
            }
            add(&tuple[..n - 1], sign);
        }
    }

    let base = target.denominator_lcm() * BigInt::from(group.exponent());
    let mut tried = Vec::new();
    for d in [base.clone(), &base * BigInt::from(2)] {
        let rhs: Vec<BigInt> = target
            .values
            .iter()
            .map(|p| (p.exponent() * BigRational::from(d.clone())).to_integer())
            .collect();
        if let Some(y) = snf::solve_mod(&mat, &rhs, &d) {
            let eta = GroupoidCochain {
                groupoid: target.groupoid.clone(),
                degree: n - 1,
                values: y
                    .iter()
                    .map(|v| Phase::from_rational(BigRational::new(v.clone(), d.clone())))
                    .collect(),
            };
            debug_assert_eq!(&eta.coboundary(), target);
            return Ok(eta);
        }
        tried.push(d);
    }
    Err(CohomologyError::NoSolution(tried))
}

/// The equivariant picture: a map `Γⁿ × Γ → T`, `Φ[s₁..sₙ](x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivariantCochain {
    pub group: Arc<FiniteGroup>,
    degree: usize,
    values: Vec<Phase>,
}

impl EquivariantCochain {
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        degree: usize,
        mut f: impl FnMut(&[usize], usize) -> Phase,
    ) -> Self {
        let order = group.order();
        let len = order.pow((degree + 1) as u32);
        let values = (0..len)
            .map(|idx| {
                let t = index_tuple(order, degree + 1, idx);
                f(&t[..degree], t[degree])
            })
            .collect();
        EquivariantCochain {
            group,
            degree,
            values,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn value(&self, params: &[usize], x: usize) -> &Phase {
        debug_assert_eq!(params.len(), self.degree);
        let mut t = params.to_vec();
        t.push(x);
        &self.values[tuple_index(self.group.order(), &t)]
    }

    /// Neutral whenever some group argument is the identity.
    pub fn is_normalized(&self) -> bool {
        let order = self.group.order();
        (0..self.values.len()).all(|idx| {
            let t = index_tuple(order, self.degree + 1, idx);
            !t[..self.degree].contains(&0) || self.values[idx].is_one()
        })
    }

    /// Witness `(s, t, u, γ)` violating the equivariant 2-cocycle identity
    /// `Φ[t,u](s⁻¹γs)·Φ̄[st,u](γ)·Φ[s,tu](γ)·Φ̄[s,t](γ) = 1`, if any.
    pub fn two_cocycle_witness(&self) -> Option<(usize, usize, usize, usize)> {
        assert_eq!(self.degree, 2);
        let g = &self.group;
        for s in g.elements() {
            for t in g.elements() {
                for u in g.elements() {
                    for gamma in g.elements() {
                        let lhs = self.value(&[t, u], g.conj(g.inv(s), gamma))
                            * &self.value(&[g.mul(s, t), u], gamma).conj()
                            * &(self.value(&[s, g.mul(t, u)], gamma)
                                * &self.value(&[s, t], gamma).conj());
                        if !lhs.is_one() {
                            return Some((s, t, u, gamma));
                        }
                    }
                }
            }
        }
        None
    }
}
