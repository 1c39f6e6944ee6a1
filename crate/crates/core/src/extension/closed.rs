use serde::Serialize;

use super::{ExtElement, ExtensionSpec};
use crate::maps::bimap_image_span;

/// `[(b^i,x),(b^j,y)] = (1, -x + g^{-j}x + y - g^{-i}y + Δ_{I(-i,-j)} + Δ_{I(-i-j,i+j)})`.
pub fn ext_commutator(spec: &ExtensionSpec, a: ExtElement, b: ExtElement) -> ExtElement {
    let p = spec.pair();
    let grp = p.group();
    let (i, j, x, y) = (a.i as i64, b.i as i64, a.x, b.x);
    let terms = [
        grp.neg_idx(x),
        p.g_pow(-j).apply(x),
        y,
        grp.neg_idx(p.g_pow(-i).apply(y)),
        p.delta_interval(-i, -j, x, y),
        p.delta_interval(-i - j, i + j, x, y),
    ];
    spec.element(0, terms.iter().fold(0, |acc, &t| grp.add_idx(acc, t)))
}

/// `[(b^i,x),(b^j,y),(b^k,z)] = (1, Δ_{I(i+j,i+j+k)}(x,y) + Δ_{I(i+k,i+j+k)}(x,z) + Δ_{I(j+k,i+j+k)}(y,z))`.
pub fn ext_associator(spec: &ExtensionSpec, a: ExtElement, b: ExtElement, c: ExtElement) -> ExtElement {
    let p = spec.pair();
    let grp = p.group();
    let (i, j, k) = (a.i as i64, b.i as i64, c.i as i64);
    let s = i + j + k;
    let v = grp.add_idx(
        grp.add_idx(p.delta_interval(i + j, s, a.x, b.x), p.delta_interval(i + k, s, a.x, c.x)),
        p.delta_interval(j + k, s, b.x, c.x),
    );
    spec.element(0, v)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NucleusCenter {
    pub nucleus: Vec<usize>,
    pub center: Vec<usize>,
}

/// Nucleus: `x ∈ rad γ` and `r | i`. Center: additionally `|g| | i` and `g(x) = x`.
pub fn ext_nucleus_center(spec: &ExtensionSpec) -> NucleusCenter {
    let p = spec.pair();
    let r = p.r().finite().expect("well-defined extensions have finite r");
    let mut nucleus = Vec::new();
    let mut center = Vec::new();
    for i in 0..spec.n() {
        if i % r != 0 {
            continue;
        }
        for x in p.radical() {
            let idx = spec.index_of(ExtElement { i, x });
            nucleus.push(idx);
            if i % p.g_order() == 0 && p.g().apply(x) == x {
                center.push(idx);
            }
        }
    }
    NucleusCenter { nucleus, center }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtDerived {
    /// `1 × ⟨img γ⟩`
    pub associator_subloop: Vec<usize>,
    /// `1 × ⟨img γ ∪ img(1-g)⟩`
    pub commutator_subloop: Vec<usize>,
}

pub fn ext_derived(spec: &ExtensionSpec) -> ExtDerived {
    let p = spec.pair();
    let grp = p.group();
    let img = bimap_image_span(p.gamma());
    let mut gens = img.clone();
    gens.extend((0..grp.order()).map(|x| grp.sub_idx(x, p.g().apply(x))));
    let to_idx = |xs: Vec<usize>| xs.into_iter().map(|x| spec.index_of(ExtElement { i: 0, x })).collect();
    ExtDerived {
        associator_subloop: to_idx(img),
        commutator_subloop: to_idx(grp.span_indices(&gens)),
    }
}
