use serde::Serialize;

use super::subloop::coset_congruence;
use super::LoopTable;

#[derive(Clone, Debug)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when two classes were merged.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        // smaller root wins so representatives are class minima
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// A partition of `0..n`; blocks are sorted and numbered by their least element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Congruence {
    block_of: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

impl Congruence {
    pub fn discrete(n: usize) -> Self {
        Congruence {
            block_of: (0..n).collect(),
            blocks: (0..n).map(|i| vec![i]).collect(),
        }
    }

    pub(super) fn from_unions(n: usize, pairs: &[(usize, usize)]) -> Self {
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        Self::from_uf(&mut uf)
    }

    fn from_uf(uf: &mut UnionFind) -> Self {
        let n = uf.parent.len();
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut root_block = vec![usize::MAX; n];
        for (x, slot) in block_of.iter_mut().enumerate() {
            let r = uf.find(x);
            if root_block[r] == usize::MAX {
                root_block[r] = blocks.len();
                blocks.push(Vec::new());
            }
            *slot = root_block[r];
            blocks[root_block[r]].push(x);
        }
        Congruence { block_of, blocks }
    }

    pub fn block(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn class_of_element(&self, x: usize) -> Vec<usize> {
        self.blocks[self.block_of[x]].clone()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.block_of[a] == self.block_of[b]
    }

    pub fn is_discrete(&self) -> bool {
        self.blocks.len() == self.block_of.len()
    }

    /// `x≡x'` and `y≡y'` imply `xy≡x'y'`.
    pub fn is_compatible(&self, t: &LoopTable) -> bool {
        let n = t.order();
        (0..n).all(|x| {
            let rx = self.blocks[self.block_of[x]][0];
            (0..n).all(|y| {
                let ry = self.blocks[self.block_of[y]][0];
                self.related(t.mul(x, y), t.mul(rx, ry))
            })
        })
    }
}

/// Least congruence containing `pairs`: union-find closed under all left and
/// right translations until nothing merges.
pub fn congruence_from_pairs(t: &LoopTable, pairs: &[(usize, usize)]) -> Congruence {
    let n = t.order();
    let mut uf = UnionFind::new(n);
    for &(a, b) in pairs {
        uf.union(a, b);
    }
    close(t, &mut uf);
    Congruence::from_uf(&mut uf)
}

fn close(t: &LoopTable, uf: &mut UnionFind) {
    let n = t.order();
    loop {
        let mut changed = false;
        for a in 0..n {
            let r = uf.find(a);
            if r == a {
                continue;
            }
            for z in 0..n {
                changed |= uf.union(t.mul(z, a), t.mul(z, r));
                changed |= uf.union(t.mul(a, z), t.mul(r, z));
            }
        }
        if !changed {
            break;
        }
    }
}

/// Whether the congruence induced by the normal subloop `normal` is abelian,
/// i.e. whether its commutator with itself is discrete.
///
/// The commutator is generated by pairs `(φ_b(a), φ_c(a))` for inner mappings
/// `φ ∈ {T, L, R}`, `a ∈ normal` and coordinatewise related `b`, `c`. Pairing
/// each value with the value at the class representatives generates the same
/// congruence.
pub fn is_abelian_congruence(t: &LoopTable, normal: &[usize]) -> bool {
    let n = t.order();
    let rho = coset_congruence(t, normal);
    let rep = |x: usize| rho.blocks()[rho.block(x)][0];
    let mut uf = UnionFind::new(n);
    for &a in normal {
        for b1 in 0..n {
            let c1 = rep(b1);
            uf.union(t.conj(b1, a), t.conj(c1, a));
            for b2 in 0..n {
                let c2 = rep(b2);
                uf.union(t.inner_l(b1, b2, a), t.inner_l(c1, c2, a));
                uf.union(t.inner_r(b1, b2, a), t.inner_r(c1, c2, a));
            }
        }
    }
    close(t, &mut uf);
    Congruence::from_uf(&mut uf).is_discrete()
}
