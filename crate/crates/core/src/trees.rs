//! Morphism calculus between parenthesized tensor words of simples.
//!
//! A hom space between two words is spanned by pairs of fusion trees with a
//! common root; morphisms are matrices over those orthonormal tree bases.
//! Composition is matrix product, the tensor product acts through the root
//! vertex, and the associator acts on the top vertices through an F-matrix
//! at the roots of the subtrees — naturality pushes everything else down.
//!
//! Words stay tiny here (at most four letters), so dense matrices over the
//! enumerated trees are all that is needed.

use crate::fusion::SkeletalCategory;
use crate::scalar::Scalar;

/// A parenthesized tensor word over simple indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    Leaf(usize),
    Node(Box<Word>, Box<Word>),
}

impl Word {
    pub fn leaf(s: usize) -> Word {
        Word::Leaf(s)
    }

    pub fn node(a: Word, b: Word) -> Word {
        Word::Node(Box::new(a), Box::new(b))
    }

    pub fn pair(a: usize, b: usize) -> Word {
        Word::node(Word::leaf(a), Word::leaf(b))
    }
}

/// A fusion tree: the word with a simple assigned to every internal node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Tree {
    Leaf(usize),
    Node(Box<Tree>, Box<Tree>, usize),
}

impl Tree {
    pub fn root(&self) -> usize {
        match self {
            Tree::Leaf(s) => *s,
            Tree::Node(_, _, r) => *r,
        }
    }
}

/// All fusion trees of a word, in a deterministic order.
pub fn enumerate_trees(cat: &SkeletalCategory, word: &Word) -> Vec<Tree> {
    match word {
        Word::Leaf(s) => vec![Tree::Leaf(*s)],
        Word::Node(a, b) => {
            let ta = enumerate_trees(cat, a);
            let tb = enumerate_trees(cat, b);
            let mut out = Vec::new();
            for l in &ta {
                for r in &tb {
                    for c in cat.channels(l.root(), r.root()) {
                        out.push(Tree::Node(Box::new(l.clone()), Box::new(r.clone()), c));
                    }
                }
            }
            out
        }
    }
}

/// A morphism between words, as a matrix over tree bases
/// (`entries[target_tree][source_tree]`, zero unless the roots agree).
#[derive(Clone, Debug)]
pub struct Mor {
    pub source: Word,
    pub target: Word,
    source_trees: Vec<Tree>,
    target_trees: Vec<Tree>,
    entries: Vec<Scalar>,
}

impl Mor {
    fn new(cat: &SkeletalCategory, source: Word, target: Word) -> Mor {
        let source_trees = enumerate_trees(cat, &source);
        let target_trees = enumerate_trees(cat, &target);
        let entries = vec![Scalar::Zero; source_trees.len() * target_trees.len()];
        Mor {
            source,
            target,
            source_trees,
            target_trees,
            entries,
        }
    }

    #[inline]
    fn idx(&self, t: usize, s: usize) -> usize {
        t * self.source_trees.len() + s
    }

    pub fn entry(&self, t: usize, s: usize) -> &Scalar {
        &self.entries[self.idx(t, s)]
    }

    fn set(&mut self, t: usize, s: usize, v: Scalar) {
        debug_assert!(
            v.is_zero() || self.target_trees[t].root() == self.source_trees[s].root(),
            "entries connect trees with equal roots"
        );
        let i = self.idx(t, s);
        self.entries[i] = v;
    }

    pub fn source_trees(&self) -> &[Tree] {
        &self.source_trees
    }

    pub fn target_trees(&self) -> &[Tree] {
        &self.target_trees
    }

    /// Coefficient between the unique source tree with root `r` and the
    /// unique target tree with root `r`; panics if the trees are ambiguous.
    pub fn coefficient_at_root(&self, r: usize) -> Scalar {
        let s: Vec<usize> = (0..self.source_trees.len())
            .filter(|&i| self.source_trees[i].root() == r)
            .collect();
        let t: Vec<usize> = (0..self.target_trees.len())
            .filter(|&i| self.target_trees[i].root() == r)
            .collect();
        assert!(s.len() == 1 && t.len() == 1, "root channel not unique");
        self.entry(t[0], s[0]).clone()
    }

    pub fn identity(cat: &SkeletalCategory, word: &Word) -> Mor {
        let mut m = Mor::new(cat, word.clone(), word.clone());
        for i in 0..m.source_trees.len() {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Mor) -> Mor {
        assert_eq!(self.source, other.target, "composition type mismatch");
        let mut out = Mor {
            source: other.source.clone(),
            target: self.target.clone(),
            source_trees: other.source_trees.clone(),
            target_trees: self.target_trees.clone(),
            entries: vec![Scalar::Zero; other.source_trees.len() * self.target_trees.len()],
        };
        for t in 0..self.target_trees.len() {
            for s in 0..other.source_trees.len() {
                let mut acc = Scalar::Zero;
                for m in 0..self.source_trees.len() {
                    let x = self.entry(t, m);
                    if x.is_zero() {
                        continue;
                    }
                    let y = other.entry(m, s);
                    if y.is_zero() {
                        continue;
                    }
                    acc = acc.add(&x.mul(y));
                }
                out.set(t, s, acc);
            }
        }
        out
    }

    /// `self ⊗ other`, acting through the root fusion vertex.
    pub fn tensor(&self, cat: &SkeletalCategory, other: &Mor) -> Mor {
        let source = Word::node(self.source.clone(), other.source.clone());
        let target = Word::node(self.target.clone(), other.target.clone());
        let mut out = Mor::new(cat, source, target);
        for (ti, tt) in out.target_trees.clone().iter().enumerate() {
            let Tree::Node(ta2, tb2, c2) = tt else { unreachable!() };
            for (si, st) in out.source_trees.clone().iter().enumerate() {
                let Tree::Node(ta, tb, c) = st else { unreachable!() };
                if c != c2 {
                    continue;
                }
                let ia = self.source_trees.iter().position(|x| x == &**ta).unwrap();
                let ia2 = self.target_trees.iter().position(|x| x == &**ta2).unwrap();
                let ib = other.source_trees.iter().position(|x| x == &**tb).unwrap();
                let ib2 = other.target_trees.iter().position(|x| x == &**tb2).unwrap();
                let v = self.entry(ia2, ia).mul(other.entry(ib2, ib));
                if !v.is_zero() {
                    out.set(ti, si, v);
                }
            }
        }
        out
    }

    /// Conjugate transpose; valid because tree bases are orthonormal.
    pub fn dagger(&self) -> Mor {
        let mut out = Mor {
            source: self.target.clone(),
            target: self.source.clone(),
            source_trees: self.target_trees.clone(),
            target_trees: self.source_trees.clone(),
            entries: vec![Scalar::Zero; self.entries.len()],
        };
        for t in 0..out.target_trees.len() {
            for s in 0..out.source_trees.len() {
                out.set(t, s, self.entry(s, t).conj());
            }
        }
        out
    }

    pub fn scale(&self, k: &Scalar) -> Mor {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = e.mul(k);
        }
        out
    }

    /// The fusion vertex `Y^{a,b}_c : c → a⊗b` (an isometry).
    pub fn vertex(cat: &SkeletalCategory, a: usize, b: usize, c: usize) -> Mor {
        assert!(cat.n(a, b, c), "vertex must be admissible");
        let mut m = Mor::new(cat, Word::leaf(c), Word::pair(a, b));
        let t = m
            .target_trees
            .iter()
            .position(|tr| tr.root() == c)
            .expect("channel exists");
        m.set(t, 0, Scalar::one());
        m
    }

    /// Left unit constraint `λ_W : e ⊗ W → W` (the unit vertex collapsed).
    pub fn lambda(cat: &SkeletalCategory, word: &Word) -> Mor {
        let source = Word::node(Word::leaf(cat.unit()), word.clone());
        let mut m = Mor::new(cat, source, word.clone());
        for (ti, tt) in m.target_trees.clone().iter().enumerate() {
            for (si, st) in m.source_trees.clone().iter().enumerate() {
                let Tree::Node(_, inner, root) = st else { unreachable!() };
                if **inner == *tt && *root == tt.root() {
                    m.set(ti, si, Scalar::one());
                }
            }
        }
        m
    }

    /// Right unit constraint `ρ_W : W ⊗ e → W`.
    pub fn rho(cat: &SkeletalCategory, word: &Word) -> Mor {
        let source = Word::node(word.clone(), Word::leaf(cat.unit()));
        let mut m = Mor::new(cat, source, word.clone());
        for (ti, tt) in m.target_trees.clone().iter().enumerate() {
            for (si, st) in m.source_trees.clone().iter().enumerate() {
                let Tree::Node(inner, _, root) = st else { unreachable!() };
                if **inner == *tt && *root == tt.root() {
                    m.set(ti, si, Scalar::one());
                }
            }
        }
        m
    }

    /// The associator `α_{A,B,C} : (A⊗B)⊗C → A⊗(B⊗C)` on words, or its
    /// inverse. Acts by `F[a,b,c; d; u, v]` at the subtree roots.
    pub fn associator(cat: &SkeletalCategory, a: &Word, b: &Word, c: &Word, inverse: bool) -> Mor {
        let left = Word::node(Word::node(a.clone(), b.clone()), c.clone());
        let right = Word::node(a.clone(), Word::node(b.clone(), c.clone()));
        let (source, target) = if inverse {
            (right.clone(), left.clone())
        } else {
            (left.clone(), right.clone())
        };
        let mut m = Mor::new(cat, source, target);
        for (si, st) in m.source_trees.clone().iter().enumerate() {
            for (ti, tt) in m.target_trees.clone().iter().enumerate() {
                let (lt, rt) = if inverse { (tt, st) } else { (st, tt) };
                // lt is a tree of (A⊗B)⊗C, rt of A⊗(B⊗C)
                let Tree::Node(ab, tc, d1) = lt else { unreachable!() };
                let Tree::Node(ta1, tb1, u) = &**ab else { unreachable!() };
                let Tree::Node(ta2, bc, d2) = rt else { unreachable!() };
                let Tree::Node(tb2, tc2, v) = &**bc else { unreachable!() };
                if d1 != d2 || ta1 != ta2 || tb1 != tb2 || tc != tc2 {
                    continue;
                }
                let f = cat.f_symbol(ta1.root(), tb1.root(), tc.root(), *d1, *u, *v);
                if f.is_zero() {
                    continue;
                }
                let val = if inverse { f.conj() } else { f };
                m.set(ti, si, val);
            }
        }
        m
    }

    /// Largest entrywise deviation from another morphism of the same type.
    pub fn max_abs_diff(&self, other: &Mor) -> f64 {
        assert_eq!(self.source, other.source);
        assert_eq!(self.target, other.target);
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.abs_diff(b))
            .fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cyclic_generator;
    use crate::fusion::neutral_cocycle;
    use crate::groups::FiniteGroup;
    use crate::phase::Phase;
    use std::sync::Arc;

    fn pointed_z2_signed() -> SkeletalCategory {
        let omega = cyclic_generator(2, 1).unwrap();
        SkeletalCategory::pointed(omega.group.clone(), &omega).unwrap()
    }

    #[test]
    fn pointed_words_have_unique_trees() {
        let cat = pointed_z2_signed();
        let w = Word::node(Word::pair(1, 1), Word::leaf(1));
        let trees = enumerate_trees(&cat, &w);
        assert_eq!(trees.len(), 1);
        assert_eq!(trees[0].root(), 1);
    }

    #[test]
    fn vertex_isometry() {
        let cat = pointed_z2_signed();
        let y = Mor::vertex(&cat, 1, 1, 0);
        let yy = y.dagger().compose(&y);
        assert_eq!(yy.coefficient_at_root(0), Scalar::one());
    }

    #[test]
    fn associator_is_the_f_symbol() {
        let cat = pointed_z2_signed();
        let a = Mor::associator(&cat, &Word::leaf(1), &Word::leaf(1), &Word::leaf(1), false);
        assert_eq!(
            a.coefficient_at_root(1),
            Scalar::Exact(Phase::new(1, 2)),
            "F(1,1,1) = −1 for the sign cocycle"
        );
        let ai = Mor::associator(&cat, &Word::leaf(1), &Word::leaf(1), &Word::leaf(1), true);
        let round = ai.compose(&a);
        assert_eq!(round.coefficient_at_root(1), Scalar::one());
    }

    #[test]
    fn unit_constraints_cancel() {
        let g = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let cat = SkeletalCategory::pointed(g.clone(), &neutral_cocycle(&g)).unwrap();
        let w = Word::leaf(2);
        let l = Mor::lambda(&cat, &w);
        let li = l.dagger();
        assert_eq!(l.compose(&li).coefficient_at_root(2), Scalar::one());
        let r = Mor::rho(&cat, &w);
        assert_eq!(r.compose(&r.dagger()).coefficient_at_root(2), Scalar::one());
    }

    #[test]
    fn tensor_respects_roots() {
        let cat = pointed_z2_signed();
        let id1 = Mor::identity(&cat, &Word::leaf(1));
        let y = Mor::vertex(&cat, 1, 0, 1);
        let t = id1.tensor(&cat, &y);
        assert_eq!(t.source, Word::pair(1, 1));
        // the only tree of 1⊗1 has root 0; of 1⊗(1⊗0) also root 0
        assert_eq!(t.coefficient_at_root(0), Scalar::one());
    }
}
