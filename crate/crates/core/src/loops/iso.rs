//! Loop isomorphism by backtracking over the images of a generating set.

use std::collections::BTreeMap;

use super::LoopTable;

/// Orders up to this bound are decided; larger loops may come back `Unknown`.
pub const ISO_COMPLETE_BOUND: usize = 96;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoResult {
    /// `witness[x]` is the image of `x`.
    Isomorphic(Vec<usize>),
    NotIsomorphic,
    Unknown,
}

impl IsoResult {
    pub fn is_isomorphic(&self) -> bool {
        matches!(self, IsoResult::Isomorphic(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct ElementInvariant {
    power_order: usize,
    square_is_identity: bool,
    in_nucleus: bool,
    in_center: bool,
    commuting: usize,
    /// Number of `y` with `(xy)x = x(yx)`.
    flexible: usize,
}

fn power_order(t: &LoopTable, x: usize) -> usize {
    let mut acc = x;
    for k in 1..=t.order() {
        if acc == t.identity() {
            return k;
        }
        acc = t.mul(x, acc);
    }
    0
}

fn invariants(t: &LoopTable) -> Vec<ElementInvariant> {
    let n = t.order();
    let mut nuc = vec![false; n];
    for a in t.nucleus() {
        nuc[a] = true;
    }
    (0..n)
        .map(|x| {
            let commuting = (0..n).filter(|&y| t.mul(x, y) == t.mul(y, x)).count();
            ElementInvariant {
                power_order: power_order(t, x),
                square_is_identity: t.mul(x, x) == t.identity(),
                in_nucleus: nuc[x],
                in_center: nuc[x] && commuting == n,
                commuting,
                flexible: (0..n)
                    .filter(|&y| t.mul(t.mul(x, y), x) == t.mul(x, t.mul(y, x)))
                    .count(),
            }
        })
        .collect()
}

fn histogram(inv: &[ElementInvariant]) -> BTreeMap<&ElementInvariant, usize> {
    let mut h = BTreeMap::new();
    for i in inv {
        *h.entry(i).or_insert(0) += 1;
    }
    h
}

struct Search<'a> {
    a: &'a LoopTable,
    b: &'a LoopTable,
    inv_a: Vec<ElementInvariant>,
    inv_b: Vec<ElementInvariant>,
    gens: Vec<usize>,
}

#[derive(Clone)]
struct Partial {
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    domain: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl Search<'_> {
    /// Assign `x ↦ y` and close under products; false on any conflict.
    fn extend(&self, p: &mut Partial, x: usize, y: usize) -> bool {
        if !self.assign(p, x, y) {
            return false;
        }
        let mut k = p.domain.len() - 1;
        while k < p.domain.len() {
            let u = p.domain[k];
            let mut j = 0;
            while j <= k {
                let v = p.domain[j];
                for (s, t) in [(u, v), (v, u)] {
                    let img = self.b.mul(p.fwd[s], p.fwd[t]);
                    if !self.assign(p, self.a.mul(s, t), img) {
                        return false;
                    }
                }
                j += 1;
            }
            k += 1;
        }
        true
    }

    fn assign(&self, p: &mut Partial, x: usize, y: usize) -> bool {
        if p.fwd[x] != NONE {
            return p.fwd[x] == y;
        }
        if p.bwd[y] != NONE || self.inv_a[x] != self.inv_b[y] {
            return false;
        }
        p.fwd[x] = y;
        p.bwd[y] = x;
        p.domain.push(x);
        true
    }

    fn run(&self, depth: usize, p: &Partial) -> Option<Vec<usize>> {
        if depth == self.gens.len() {
            let n = self.a.order();
            if p.domain.len() != n {
                return None;
            }
            let ok = (0..n).all(|x| (0..n).all(|y| p.fwd[self.a.mul(x, y)] == self.b.mul(p.fwd[x], p.fwd[y])));
            return ok.then(|| p.fwd.clone());
        }
        let g = self.gens[depth];
        if p.fwd[g] != NONE {
            return self.run(depth + 1, p);
        }
        let n = self.b.order();
        let candidates = std::iter::once(g).chain((0..n).filter(|&c| c != g));
        for c in candidates {
            if p.bwd[c] != NONE || self.inv_a[g] != self.inv_b[c] {
                continue;
            }
            let mut next = p.clone();
            if self.extend(&mut next, g, c) {
                if let Some(w) = self.run(depth + 1, &next) {
                    return Some(w);
                }
            }
        }
        None
    }
}

/// Generators chosen greedily, rarest invariant class first.
fn generating_sequence(t: &LoopTable, inv: &[ElementInvariant]) -> Vec<usize> {
    let hist = histogram(inv);
    let mut order: Vec<usize> = (0..t.order()).collect();
    order.sort_by_key(|&x| (hist[&inv[x]], x));
    let mut gens = Vec::new();
    let mut span = t.subloop_generated(&[]);
    for x in order {
        if span.len() == t.order() {
            break;
        }
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = t.subloop_generated(&gens);
        }
    }
    gens
}

pub fn isomorphic(a: &LoopTable, b: &LoopTable) -> IsoResult {
    if a.order() != b.order() {
        return IsoResult::NotIsomorphic;
    }
    let n = a.order();
    if a.identity() == b.identity() && a.flat() == b.flat() {
        return IsoResult::Isomorphic((0..n).collect());
    }
    let inv_a = invariants(a);
    let inv_b = invariants(b);
    if histogram(&inv_a) != histogram(&inv_b) {
        return IsoResult::NotIsomorphic;
    }
    if n > ISO_COMPLETE_BOUND {
        return IsoResult::Unknown;
    }
    let gens = generating_sequence(a, &inv_a);
    let search = Search {
        a,
        b,
        inv_a,
        inv_b,
        gens,
    };
    let mut start = Partial {
        fwd: vec![NONE; n],
        bwd: vec![NONE; n],
        domain: Vec::new(),
    };
    if !search.extend(&mut start, a.identity(), b.identity()) {
        return IsoResult::NotIsomorphic;
    }
    match search.run(0, &start) {
        Some(w) => IsoResult::Isomorphic(w),
        None => IsoResult::NotIsomorphic,
    }
}
