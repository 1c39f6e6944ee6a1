//! Permutations of an abelian group and maps `X x X -> X` stored as full tables.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::abelian::AbelianGroup;
use crate::error::{ForgeError, Result};
use crate::perm::Perm;

/// A permutation of the elements of `group`, by element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermTable {
    group: AbelianGroup,
    perm: Perm,
}

impl PermTable {
    pub fn new(group: AbelianGroup, image: Vec<usize>) -> Result<Self> {
        if image.len() != group.order() {
            return Err(ForgeError::Structural(format!(
                "permutation has {} entries, group {} has order {}",
                image.len(),
                group,
                group.order()
            )));
        }
        let perm = Perm::from_images(image)?;
        Ok(PermTable { group, perm })
    }

    pub fn from_perm(group: AbelianGroup, perm: Perm) -> Result<Self> {
        if perm.len() != group.order() {
            return Err(ForgeError::Structural(format!(
                "permutation on {} points, group {} has order {}",
                perm.len(),
                group,
                group.order()
            )));
        }
        Ok(PermTable { group, perm })
    }

    pub fn identity(group: AbelianGroup) -> Self {
        let perm = Perm::identity(group.order());
        PermTable { group, perm }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn perm(&self) -> &Perm {
        &self.perm
    }

    pub fn images(&self) -> &[usize] {
        self.perm.images()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.perm.apply(x)
    }

    pub fn inverse(&self) -> PermTable {
        PermTable {
            group: self.group.clone(),
            perm: self.perm.inverse(),
        }
    }

    pub fn compose(&self, other: &PermTable) -> PermTable {
        PermTable {
            group: self.group.clone(),
            perm: self.perm.compose(&other.perm),
        }
    }

    pub fn power(&self, i: i64) -> PermTable {
        PermTable {
            group: self.group.clone(),
            perm: self.perm.pow(i),
        }
    }

    pub fn order(&self) -> u64 {
        self.perm.order()
    }

    /// True iff the permutation is an automorphism of `(X,+)`.
    pub fn is_additive(&self) -> bool {
        let g = &self.group;
        let n = g.order();
        (0..n).all(|x| (0..n).all(|y| self.apply(g.add_idx(x, y)) == g.add_idx(self.apply(x), self.apply(y))))
    }
}

pub fn perm_power(g: &PermTable, i: i64) -> PermTable {
    g.power(i)
}

pub fn perm_order(g: &PermTable) -> u64 {
    g.order()
}

/// A map `X x X -> X` given by its full value table (row `x`, column `y`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiAddMap {
    group: AbelianGroup,
    table: Vec<usize>,
}

impl fmt::Debug for BiAddMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiAddMap({}, {:?})", self.group, self.rows())
    }
}

impl BiAddMap {
    pub fn zero(group: AbelianGroup) -> Self {
        let n = group.order();
        BiAddMap {
            group,
            table: vec![0; n * n],
        }
    }

    pub fn from_rows(group: AbelianGroup, rows: &[Vec<usize>]) -> Result<Self> {
        let n = group.order();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(ForgeError::Structural(format!(
                "map table must be {n}x{n} for group {group}"
            )));
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        if let Some(bad) = table.iter().find(|&&v| v >= n) {
            return Err(ForgeError::Structural(format!(
                "map value {bad} out of range 0..{n}"
            )));
        }
        Ok(BiAddMap { group, table })
    }

    /// Builds the table by evaluating `f` on every pair of element indices.
    pub fn from_fn(group: AbelianGroup, f: impl Fn(usize, usize) -> usize) -> Self {
        let n = group.order();
        let mut table = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                table.push(f(x, y));
            }
        }
        BiAddMap { group, table }
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> usize {
        self.table[x * self.group.order() + y]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        let n = self.group.order();
        self.table.chunks(n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.table.iter().all(|&v| v == 0)
    }

    /// `p ∘ self`, i.e. `(x,y) -> p(self(x,y))`.
    pub fn post_compose(&self, p: &PermTable) -> BiAddMap {
        BiAddMap {
            group: self.group.clone(),
            table: self.table.iter().map(|&v| p.apply(v)).collect(),
        }
    }

    /// Pointwise sum of maps.
    pub fn plus(&self, other: &BiAddMap) -> BiAddMap {
        let g = &self.group;
        BiAddMap {
            group: g.clone(),
            table: self
                .table
                .iter()
                .zip(&other.table)
                .map(|(&a, &b)| g.add_idx(a, b))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapWitness {
    pub property: &'static str,
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BimapReport {
    pub symmetric: bool,
    pub alternating: bool,
    pub biadditive: bool,
    /// First counterexample of each failed property.
    pub counterexamples: Vec<MapWitness>,
}

impl BimapReport {
    pub fn all_hold(&self) -> bool {
        self.symmetric && self.alternating && self.biadditive
    }
}

/// Exhaustive symmetry, alternation and biadditivity check.
///
/// When symmetry holds, additivity is only checked in the first slot; the
/// second slot follows by symmetry. Otherwise both slots are checked.
pub fn bimap_check(gamma: &BiAddMap) -> BimapReport {
    let g = gamma.group();
    let n = g.order();
    let mut cex = Vec::new();

    let sym_fail = (0..n)
        .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
        .find(|&(x, y)| gamma.get(x, y) != gamma.get(y, x));
    if let Some((x, y)) = sym_fail {
        cex.push(MapWitness {
            property: "symmetric",
            elements: vec![x, y],
        });
    }

    let alt_fail = (0..n).find(|&x| gamma.get(x, x) != 0);
    if let Some(x) = alt_fail {
        cex.push(MapWitness {
            property: "alternating",
            elements: vec![x],
        });
    }

    let mut add_fail = None;
    'outer: for x in 0..n {
        for y in 0..n {
            let s = g.add_idx(x, y);
            for z in 0..n {
                if gamma.get(s, z) != g.add_idx(gamma.get(x, z), gamma.get(y, z)) {
                    add_fail = Some(vec![x, y, z]);
                    break 'outer;
                }
                if sym_fail.is_some()
                    && gamma.get(z, s) != g.add_idx(gamma.get(z, x), gamma.get(z, y))
                {
                    add_fail = Some(vec![z, x, y]);
                    break 'outer;
                }
            }
        }
    }
    if let Some(w) = &add_fail {
        cex.push(MapWitness {
            property: "biadditive",
            elements: w.clone(),
        });
    }

    BimapReport {
        symmetric: sym_fail.is_none(),
        alternating: alt_fail.is_none(),
        biadditive: add_fail.is_none(),
        counterexamples: cex,
    }
}

/// `rad γ = {x : γ(x,y) = 0 for all y}`, sorted.
pub fn bimap_radical(gamma: &BiAddMap) -> Vec<usize> {
    let n = gamma.group().order();
    (0..n)
        .filter(|&x| (0..n).all(|y| gamma.get(x, y) == 0))
        .collect()
}

/// The subgroup generated by all values of the map, sorted.
pub fn bimap_image_span(gamma: &BiAddMap) -> Vec<usize> {
    let mut vals: Vec<usize> = gamma.table().to_vec();
    vals.sort_unstable();
    vals.dedup();
    gamma.group().span_indices(&vals)
}

/// Extends generator values biadditively:
/// `γ(x,y) = Σ_{s<t} (x_s y_t + x_t y_s) · vals(s,t)`.
///
/// Pairs absent from `vals` are zero. Each value must be killed by 2 and by
/// both invariants `n_s`, `n_t`, or the extension is not well defined.
pub fn bimap_from_generators(
    group: &AbelianGroup,
    vals: &BTreeMap<(usize, usize), usize>,
) -> Result<BiAddMap> {
    let k = group.rank();
    let inv = group.invariants();
    let mut dense = vec![vec![0usize; k]; k];
    for (&(s, t), &v) in vals {
        if s >= t || t >= k {
            return Err(ForgeError::Validation(format!(
                "generator pair ({s},{t}) must satisfy s < t < {k}"
            )));
        }
        if v >= group.order() {
            return Err(ForgeError::Structural(format!(
                "value index {v} out of range for group {group}"
            )));
        }
        for (what, m) in [("2", 2i64), ("n_s", inv[s] as i64), ("n_t", inv[t] as i64)] {
            if group.scale_idx(m, v) != 0 {
                return Err(ForgeError::Validation(format!(
                    "value {v} for generator pair ({s},{t}) is not killed by {what} = {m}"
                )));
            }
        }
        dense[s][t] = v;
    }
    let n = group.order();
    let coords: Vec<Vec<u64>> = (0..n)
        .map(|i| group.element_at(i).map(|e| e.coords))
        .collect::<Result<_>>()?;
    Ok(BiAddMap::from_fn(group.clone(), |x, y| {
        let mut acc = 0usize;
        for s in 0..k {
            for t in s + 1..k {
                let v = dense[s][t];
                if v == 0 {
                    continue;
                }
                let c = coords[x][s] * coords[y][t] + coords[x][t] * coords[y][s];
                acc = group.add_idx(acc, group.scale_idx(c as i64, v));
            }
        }
        acc
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(lit: &str) -> AbelianGroup {
        lit.parse().unwrap()
    }

    /// `e3` in Z_2^3 has coordinates (0,0,1), index 4.
    fn z2cubed_map() -> BiAddMap {
        let g = grp("2,2,2");
        let mut vals = BTreeMap::new();
        vals.insert((0, 1), 4);
        bimap_from_generators(&g, &vals).unwrap()
    }

    #[test]
    fn zero_map_passes() {
        let r = bimap_check(&BiAddMap::zero(grp("2,4")));
        assert!(r.all_hold());
        assert!(r.counterexamples.is_empty());
    }

    #[test]
    fn non_alternating_detected() {
        let g = grp("2");
        let m = BiAddMap::from_rows(g, &[vec![0, 0], vec![0, 1]]).unwrap();
        let r = bimap_check(&m);
        assert!(!r.alternating);
        assert_eq!(r.counterexamples[0].property, "alternating");
        assert_eq!(r.counterexamples[0].elements, vec![1]);
    }

    #[test]
    fn asymmetric_map_checks_both_slots() {
        // γ(x,y) = x_1 y_2 on Z_2^2: additive in each slot, not symmetric.
        let g = grp("2,2");
        let m = BiAddMap::from_fn(g.clone(), |x, y| {
            let (a, b) = (g.element_at(x).unwrap(), g.element_at(y).unwrap());
            ((a.coords[0] * b.coords[1]) % 2) as usize
        });
        let r = bimap_check(&m);
        assert!(!r.symmetric);
        assert!(r.biadditive);
        // Left-additive only: γ(x,y) = x_1 * [y == (1,1)].
        let m2 = BiAddMap::from_fn(g.clone(), |x, y| {
            let a = g.element_at(x).unwrap();
            if y == 3 {
                a.coords[0] as usize
            } else {
                0
            }
        });
        let r2 = bimap_check(&m2);
        assert!(!r2.symmetric);
        assert!(!r2.biadditive);
    }

    #[test]
    fn z2cubed_radical_and_image() {
        let m = z2cubed_map();
        assert!(bimap_check(&m).all_hold());
        assert_eq!(bimap_radical(&m), vec![0, 4]);
        assert_eq!(bimap_image_span(&m), vec![0, 4]);
        // γ(e1,e2) = e3 and γ(e1,e3) = 0
        assert_eq!(m.get(1, 2), 4);
        assert_eq!(m.get(1, 4), 0);
    }

    #[test]
    fn zero_map_radical_is_everything() {
        let m = BiAddMap::zero(grp("2,2"));
        assert_eq!(bimap_radical(&m), vec![0, 1, 2, 3]);
        assert_eq!(bimap_image_span(&m), vec![0]);
    }

    #[test]
    fn generators_reject_order_violation() {
        let g = grp("3,3");
        let mut vals = BTreeMap::new();
        vals.insert((0, 1), 1);
        let err = bimap_from_generators(&g, &vals).unwrap_err();
        assert!(matches!(err, ForgeError::Validation(ref m) if m.contains("(0,1)")));
    }

    #[test]
    fn generators_all_zero() {
        let g = grp("2,2,2");
        let m = bimap_from_generators(&g, &BTreeMap::new()).unwrap();
        assert!(m.is_zero());
    }

    #[test]
    fn perm_table_size_checked() {
        assert!(PermTable::new(grp("2,2"), vec![0, 1, 2]).is_err());
        assert!(PermTable::new(grp("2,2"), vec![0, 2, 1, 3]).is_ok());
    }
}
