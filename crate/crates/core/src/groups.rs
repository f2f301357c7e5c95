//! Finite group arithmetic backed by multiplication tables.
//!
//! Elements are dense indices `0..order`, and the identity is always index 0
//! after canonicalization. Groups built from cyclic or product specs carry
//! per-factor coordinates used by the product-group cocycle generators.

use std::sync::Arc;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is not square of size {order}")]
    MalformedTable { order: usize },
    #[error("table entry {value} at ({row}, {col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("no two-sided identity element found")]
    NoIdentity,
    #[error("associativity fails at triple ({x}, {y}, {z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("element {x} has no inverse")]
    NoInverse { x: usize },
    #[error("cyclic order must be at least 1")]
    BadCyclicOrder,
    #[error("subset is not closed under multiplication: {x} * {y} escapes")]
    NotASubgroup { x: usize, y: usize },
    #[error("homomorphism image of element {x} is out of range")]
    HomOutOfRange { x: usize },
    #[error("map is not multiplicative at ({x}, {y})")]
    HomNotMultiplicative { x: usize, y: usize },
}

/// Per-factor coordinates for groups of the form `Z/n_1 × ... × Z/n_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCoords {
    pub moduli: Vec<u32>,
    table: Vec<Vec<u32>>,
}

impl CyclicCoords {
    /// Coordinates of element `x`, each in `[0, n_i)`.
    pub fn of(&self, x: usize) -> &[u32] {
        &self.table[x]
    }
}

/// A finite group given by its Cayley table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    labels: Option<Vec<String>>,
    coords: Option<CyclicCoords>,
}

impl FiniteGroup {
    /// Cyclic group `Z/n` with elements the canonical residues.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::BadCyclicOrder);
        }
        Self::product(&[n as u32])
    }

    /// Direct product of cyclic factors, elements enumerated mixed-radix
    /// with the last factor varying fastest.
    pub fn product(factors: &[u32]) -> Result<Self, GroupError> {
        if factors.iter().any(|&n| n == 0) {
            return Err(GroupError::BadCyclicOrder);
        }
        let order: usize = factors.iter().map(|&n| n as usize).product();
        let k = factors.len();
        let mut table = Vec::with_capacity(order);
        for x in 0..order {
            let mut c = vec![0u32; k];
            let mut rem = x;
            for i in (0..k).rev() {
                c[i] = (rem % factors[i] as usize) as u32;
                rem /= factors[i] as usize;
            }
            table.push(c);
        }
        let encode = |c: &[u32]| -> usize {
            let mut x = 0usize;
            for i in 0..k {
                x = x * factors[i] as usize + c[i] as usize;
            }
            x
        };
        let mut mul = vec![0usize; order * order];
        for x in 0..order {
            for y in 0..order {
                let c: Vec<u32> = (0..k)
                    .map(|i| (table[x][i] + table[y][i]) % factors[i])
                    .collect();
                mul[x * order + y] = encode(&c);
            }
        }
        let mut g = FiniteGroup {
            order,
            mul,
            inv: vec![0; order],
            labels: None,
            coords: Some(CyclicCoords {
                moduli: factors.to_vec(),
                table,
            }),
        };
        g.fill_inverses()?;
        g.validate()?;
        Ok(g)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).unwrap()
    }

    /// Builds a group from an explicit Cayley table, validating the axioms
    /// and permuting elements so the identity lands at index 0.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 || table.iter().any(|row| row.len() != order) {
            return Err(GroupError::MalformedTable { order });
        }
        for (i, row) in table.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::EntryOutOfRange {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or(GroupError::NoIdentity)?;

        // relabel so the identity is element 0
        let mut perm: Vec<usize> = (0..order).collect(); // new -> old
        perm.swap(0, identity);
        let mut inv_perm = vec![0usize; order]; // old -> new
        for (new, &old) in perm.iter().enumerate() {
            inv_perm[old] = new;
        }
        let mut mul = vec![0usize; order * order];
        for x in 0..order {
            for y in 0..order {
                mul[x * order + y] = inv_perm[table[perm[x]][perm[y]]];
            }
        }
        let labels = labels.map(|ls| perm.iter().map(|&old| ls[old].clone()).collect());

        let mut g = FiniteGroup {
            order,
            mul,
            inv: vec![0; order],
            labels,
            coords: None,
        };
        g.fill_inverses()?;
        g.validate()?;
        Ok(g)
    }

    fn fill_inverses(&mut self) -> Result<(), GroupError> {
        for x in 0..self.order {
            let inv = (0..self.order)
                .find(|&y| self.mul[x * self.order + y] == 0 && self.mul[y * self.order + x] == 0)
                .ok_or(GroupError::NoInverse { x })?;
            self.inv[x] = inv;
        }
        Ok(())
    }

    /// Exhaustive axiom check: associativity, two-sided identity, inverses.
    pub fn validate(&self) -> Result<(), GroupError> {
        let n = self.order;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x {
                return Err(GroupError::NoIdentity);
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)) {
                        return Err(GroupError::NotAssociative { x, y, z });
                    }
                }
            }
        }
        for x in 0..n {
            if self.mul(x, self.inv(x)) != 0 || self.mul(self.inv(x), x) != 0 {
                return Err(GroupError::NoInverse { x });
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mul[x * self.order + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    /// `s x s⁻¹`.
    #[inline]
    pub fn conj(&self, s: usize, x: usize) -> usize {
        self.mul(self.mul(s, x), self.inv(s))
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|x| (x..self.order).all(|y| self.mul(x, y) == self.mul(y, x)))
    }

    pub fn element_order(&self, x: usize) -> usize {
        let mut p = x;
        let mut n = 1;
        while p != 0 {
            p = self.mul(p, x);
            n += 1;
        }
        n
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1usize, |acc, x| {
            let o = self.element_order(x);
            acc / gcd(acc, o) * o
        })
    }

    /// Conjugacy classes, each sorted, ordered by least element.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if seen[x] {
                continue;
            }
            let mut class: Vec<usize> = (0..self.order).map(|s| self.conj(s, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                seen[y] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Index of the conjugacy class containing `x` in `conjugacy_classes()` order.
    pub fn class_of(&self, classes: &[Vec<usize>], x: usize) -> usize {
        classes
            .iter()
            .position(|c| c.binary_search(&x).is_ok())
            .expect("classes cover the group")
    }

    /// `{γ : aγ = γa}`, sorted ascending (so the identity comes first).
    pub fn centralizer(&self, a: usize) -> Vec<usize> {
        (0..self.order)
            .filter(|&g| self.mul(a, g) == self.mul(g, a))
            .collect()
    }

    /// Builds the subgroup on a closed subset. Returns the subgroup (with the
    /// induced table, identity reindexed to 0) and the embedding into `self`.
    pub fn subgroup(&self, elements: &[usize]) -> Result<(FiniteGroup, Vec<usize>), GroupError> {
        let mut elems = elements.to_vec();
        elems.sort_unstable();
        elems.dedup();
        let pos = |x: usize| elems.binary_search(&x).ok();
        let m = elems.len();
        let mut table = vec![vec![0usize; m]; m];
        for (i, &x) in elems.iter().enumerate() {
            for (j, &y) in elems.iter().enumerate() {
                table[i][j] = pos(self.mul(x, y)).ok_or(GroupError::NotASubgroup { x, y })?;
            }
        }
        let labels = self
            .labels
            .as_ref()
            .map(|ls| elems.iter().map(|&x| ls[x].clone()).collect());
        let sub = FiniteGroup::from_table(table, labels)?;
        // from_table keeps the sorted order because the identity (global
        // index 0) is already first in `elems`.
        debug_assert_eq!(elems[0], 0);
        Ok((sub, elems))
    }

    pub fn coords(&self) -> Option<&CyclicCoords> {
        self.coords.as_ref()
    }

    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(ls) => ls[x].clone(),
            None => match &self.coords {
                Some(c) => format!(
                    "({})",
                    c.of(x)
                        .iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                ),
                None => x.to_string(),
            },
        }
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A homomorphism between validated finite groups, stored as an image table.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub source: Arc<FiniteGroup>,
    pub target: Arc<FiniteGroup>,
    map: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        map: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if map.len() != source.order() {
            return Err(GroupError::HomOutOfRange { x: map.len() });
        }
        for (x, &fx) in map.iter().enumerate() {
            if fx >= target.order() {
                return Err(GroupError::HomOutOfRange { x });
            }
        }
        for x in source.elements() {
            for y in source.elements() {
                if map[source.mul(x, y)] != target.mul(map[x], map[y]) {
                    return Err(GroupError::HomNotMultiplicative { x, y });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            map,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let map = (0..group.order()).collect();
        GroupHom {
            source: group.clone(),
            target: group,
            map,
        }
    }

    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        GroupHom {
            map: vec![0; source.order()],
            source,
            target,
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    /// S₃ as permutations of {0,1,2} composed left-to-right; serves as the
    /// independent oracle for table-based inputs.
    pub fn symmetric_3() -> FiniteGroup {
        let perms: Vec<[usize; 3]> = vec![
            [0, 1, 2],
            [1, 2, 0],
            [2, 0, 1],
            [0, 2, 1],
            [2, 1, 0],
            [1, 0, 2],
        ];
        let compose = |p: &[usize; 3], q: &[usize; 3]| [q[p[0]], q[p[1]], q[p[2]]];
        let find = |p: &[usize; 3]| perms.iter().position(|x| x == p).unwrap();
        let table: Vec<Vec<usize>> = perms
            .iter()
            .map(|p| perms.iter().map(|q| find(&compose(p, q))).collect())
            .collect();
        FiniteGroup::from_table(table, None).unwrap()
    }
}
