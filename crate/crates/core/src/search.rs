//! Exhaustive search for construction pairs and a deduplicated loop catalog.

use std::collections::BTreeMap;

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{lcm, AbelianGroup};
use crate::error::{ForgeError, Result};
use crate::extension::{build_table, ExtensionSpec};
use crate::io::{table_hash, PairFile};
use crate::loops::{derived_subloops, isomorphic, IsoResult, LoopTable};
use crate::maps::{bimap_check, bimap_from_generators, BiAddMap, PermTable};
use crate::pair::{verify_construction_pair, ConstructionPair};

/// Largest group order handled by the permutation search.
pub const MAX_SEARCH_ORDER: usize = 16;

/// Default largest cyclic order in catalogs.
pub const DEFAULT_CYCLIC_MAX: u64 = 12;

fn check_bound(group: &AbelianGroup) -> Result<()> {
    if group.order() > MAX_SEARCH_ORDER {
        return Err(ForgeError::Resource(format!(
            "group order {} exceeds the search limit {MAX_SEARCH_ORDER}",
            group.order()
        )));
    }
    Ok(())
}

/// All abelian groups of order `k` in invariant-factor form, `n_1 | n_2 | ...`.
pub fn abelian_groups_of_order(k: u64) -> Vec<AbelianGroup> {
    fn rec(rest: u64, min: u64, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rest == 1 {
            out.push(acc.clone());
            return;
        }
        for d in (min.max(2)..=rest).filter(|d| rest.is_multiple_of(*d)) {
            if acc.last().is_some_and(|&p| d % p != 0) {
                continue;
            }
            acc.push(d);
            rec(rest / d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, 2, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out.into_iter()
        .map(|inv| if inv.is_empty() { AbelianGroup::trivial() } else { AbelianGroup::new(inv).expect("valid invariants") })
        .collect()
}

/// Every abelian group of order at most `k`, by order.
pub fn abelian_groups_up_to(k: u64) -> Vec<AbelianGroup> {
    (1..=k).flat_map(abelian_groups_of_order).collect()
}

/// Symmetric alternating biadditive maps with `img γ ⊆ rad γ`, sorted by table.
pub fn enumerate_bimaps(group: &AbelianGroup) -> Result<Vec<BiAddMap>> {
    check_bound(group)?;
    let k = group.rank();
    let inv = group.invariants();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|s| (s + 1..k).map(move |t| (s, t))).collect();
    let choices: Vec<Vec<usize>> = pairs
        .iter()
        .map(|&(s, t)| {
            (0..group.order())
                .filter(|&v| [2, inv[s] as i64, inv[t] as i64].iter().all(|&m| group.scale_idx(m, v) == 0))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut pick = vec![0usize; pairs.len()];
    loop {
        let vals: BTreeMap<(usize, usize), usize> = pairs
            .iter()
            .zip(&pick)
            .enumerate()
            .map(|(c, (&p, &k))| (p, choices[c][k]))
            .collect();
        let gamma = bimap_from_generators(group, &vals)?;
        let rad = crate::maps::bimap_radical(&gamma);
        let img_in_rad = gamma.table().iter().all(|v| rad.binary_search(v).is_ok());
        if img_in_rad && bimap_check(&gamma).all_hold() {
            out.push(gamma);
        }
        // odometer over the generator choices
        let mut c = 0;
        while c < pick.len() {
            pick[c] += 1;
            if pick[c] < choices[c].len() {
                break;
            }
            pick[c] = 0;
            c += 1;
        }
        if c == pick.len() {
            break;
        }
    }
    out.sort_by(|a, b| a.table().cmp(b.table()));
    Ok(out)
}

const UNSET: usize = usize::MAX;

#[derive(Clone)]
struct SearchState {
    g: Vec<usize>,
    ginv: Vec<usize>,
}

impl SearchState {
    fn set(&mut self, x: usize, v: usize) -> Option<bool> {
        if self.g[x] != UNSET {
            return (self.g[x] == v).then_some(false);
        }
        if self.ginv[v] != UNSET {
            return None;
        }
        self.g[x] = v;
        self.ginv[v] = x;
        Some(true)
    }
}

struct Searcher<'a> {
    group: &'a AbelianGroup,
    gamma: &'a BiAddMap,
}

impl Searcher<'_> {
    /// Forces values implied by `g(-x) = -g(x)`, `g(2x) = 2g(x)`, the
    /// γ-compatibility rule and the pair equation. `false` on conflict.
    fn propagate(&self, st: &mut SearchState) -> bool {
        let grp = self.group;
        let m = grp.order();
        loop {
            let mut changed = false;
            for x in 0..m {
                let gx = st.g[x];
                if gx == UNSET {
                    continue;
                }
                for (p, v) in [(grp.neg_idx(x), grp.neg_idx(gx)), (grp.add_idx(x, x), grp.add_idx(gx, gx))] {
                    match st.set(p, v) {
                        None => return false,
                        Some(c) => changed |= c,
                    }
                }
                for y in 0..m {
                    // g(γ(g(x), y)) = γ(x, y)
                    match st.set(self.gamma.get(gx, y), self.gamma.get(x, y)) {
                        None => return false,
                        Some(c) => changed |= c,
                    }
                    let gy = st.g[y];
                    if gy == UNSET {
                        continue;
                    }
                    // g(x + y + c + g⁻¹c + g⁻²c) = g(x) + g(y)
                    let c = self.gamma.get(x, y);
                    let c1 = st.ginv[c];
                    if c1 == UNSET {
                        continue;
                    }
                    let c2 = st.ginv[c1];
                    if c2 == UNSET {
                        continue;
                    }
                    let p = [c, c1, c2].iter().fold(grp.add_idx(x, y), |a, &t| grp.add_idx(a, t));
                    match st.set(p, grp.add_idx(gx, gy)) {
                        None => return false,
                        Some(c) => changed |= c,
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn branch(&self, st: SearchState, out: &mut Vec<Vec<usize>>) {
        let Some(x) = st.g.iter().position(|&v| v == UNSET) else {
            out.push(st.g);
            return;
        };
        for v in 0..self.group.order() {
            if st.ginv[v] != UNSET {
                continue;
            }
            let mut next = st.clone();
            next.set(x, v);
            if self.propagate(&mut next) {
                self.branch(next, out);
            }
        }
    }
}

/// Every `g` making `(g, γ)` a construction pair, in lexicographic order of
/// image tables. Pruning uses necessary conditions only; each result is
/// re-verified.
pub fn search_pairs(group: &AbelianGroup, gamma: &BiAddMap) -> Result<Vec<PermTable>> {
    check_bound(group)?;
    if gamma.group() != group {
        return Err(ForgeError::Structural("gamma is defined on a different group".into()));
    }
    let m = group.order();
    let searcher = Searcher { group, gamma };
    let mut root = SearchState {
        g: vec![UNSET; m],
        ginv: vec![UNSET; m],
    };
    root.set(0, 0);
    if !searcher.propagate(&mut root) {
        return Ok(Vec::new());
    }
    // split the first free choice across workers
    let mut found: Vec<Vec<usize>> = match root.g.iter().position(|&v| v == UNSET) {
        None => vec![root.g.clone()],
        Some(x) => (0..m)
            .into_par_iter()
            .filter(|&v| root.ginv[v] == UNSET)
            .flat_map_iter(|v| {
                let mut st = root.clone();
                st.set(x, v);
                let mut out = Vec::new();
                if searcher.propagate(&mut st) {
                    searcher.branch(st, &mut out);
                }
                out
            })
            .collect(),
    };
    found.sort();
    found.dedup();
    let mut verified = Vec::with_capacity(found.len());
    for images in found {
        let g = PermTable::new(group.clone(), images)?;
        let verdict = verify_construction_pair(group, &g, gamma)?;
        if verdict.holds {
            verified.push(g);
        }
    }
    Ok(verified)
}

/// Multiples of `lcm(|g|, r)` up to `n_max`.
pub fn admissible_orders(pair: &ConstructionPair, n_max: u64) -> Vec<u64> {
    let Some(r) = pair.r().finite() else {
        return Vec::new();
    };
    let step = lcm(pair.g_order(), r);
    (1..=n_max / step).map(|k| k * step).collect()
}

/// Every `(pair, n)` over the given groups, in canonical order: group (as
/// listed), γ table, g table, n.
pub fn candidate_specs(groups: &[AbelianGroup], n_max: u64) -> Result<Vec<ExtensionSpec>> {
    let mut out = Vec::new();
    for group in groups {
        for gamma in enumerate_bimaps(group)? {
            for g in search_pairs(group, &gamma)? {
                let pair = ConstructionPair::new(g, gamma.clone())?;
                for n in admissible_orders(&pair, n_max) {
                    out.push(ExtensionSpec::new(n, pair.clone())?);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub order: usize,
    pub associative: bool,
    pub commutative: bool,
    pub nucleus: usize,
    pub center: usize,
    pub associator_subloop: usize,
    pub commutator_subloop: usize,
    pub derived: usize,
    /// `(k, count)`: number of elements whose powers first return to 1 after `k` steps.
    pub power_orders: Vec<(usize, usize)>,
    pub commuting_pairs: usize,
}

pub fn fingerprint(t: &LoopTable) -> Fingerprint {
    let n = t.order();
    let d = derived_subloops(t);
    let mut orders: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..n {
        let mut acc = x;
        let mut k = 1;
        while acc != t.identity() && k <= n {
            acc = t.mul(x, acc);
            k += 1;
        }
        *orders.entry(k).or_insert(0) += 1;
    }
    let commuting_pairs = (0..n)
        .map(|x| (0..n).filter(|&y| t.mul(x, y) == t.mul(y, x)).count())
        .sum();
    let nucleus = t.nucleus();
    Fingerprint {
        order: n,
        associative: d.associator_subloop.len() == 1,
        commutative: commuting_pairs == n * n,
        nucleus: nucleus.len(),
        center: t.center().len(),
        associator_subloop: d.associator_subloop.len(),
        commutator_subloop: d.commutator_subloop.len(),
        derived: d.derived.len(),
        power_orders: orders.into_iter().collect(),
        commuting_pairs,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub pair: PairFile,
    pub n: u64,
    pub order: usize,
    pub g_order: u64,
    pub r: u64,
    pub gamma_zero: bool,
    pub fingerprint: Fingerprint,
    pub table_sha256: String,
    /// Number of candidate `(pair, n)` whose loop is isomorphic to this one.
    pub multiplicity: usize,
}

impl CatalogEntry {
    pub fn spec(&self) -> Result<ExtensionSpec> {
        let pair = self.pair.resolve()?.into_construction_pair()?;
        ExtensionSpec::new(self.n, pair)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub groups: Vec<String>,
    pub cyclic_max: u64,
    /// Candidates consumed so far, in canonical order.
    pub processed: usize,
    pub total_candidates: usize,
    pub complete: bool,
    pub skipped: Vec<String>,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("catalog serializes") + "\n"
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

struct Built {
    spec: ExtensionSpec,
    outcome: Result<(LoopTable, Fingerprint)>,
}

/// Builds, fingerprints and deduplicates every candidate loop.
///
/// With `resume`, continues a partial catalog for the same groups and bound.
/// `limit` caps the candidates processed in this call.
pub fn build_catalog(
    groups: &[AbelianGroup],
    cyclic_max: u64,
    resume: Option<Catalog>,
    limit: Option<usize>,
) -> Result<Catalog> {
    for g in groups {
        check_bound(g)?;
    }
    let names: Vec<String> = groups.iter().map(|g| g.to_string()).collect();
    let candidates = candidate_specs(groups, cyclic_max)?;
    let mut cat = match resume {
        Some(c) => {
            if c.groups != names || c.cyclic_max != cyclic_max {
                return Err(ForgeError::Validation(format!(
                    "cannot resume: catalog was built for groups {:?} with cyclic max {}",
                    c.groups, c.cyclic_max
                )));
            }
            if c.total_candidates != candidates.len() || c.processed > candidates.len() {
                return Err(ForgeError::Validation("cannot resume: candidate list changed".into()));
            }
            c
        }
        None => Catalog {
            groups: names,
            cyclic_max,
            processed: 0,
            total_candidates: candidates.len(),
            complete: false,
            skipped: Vec::new(),
            entries: Vec::new(),
        },
    };
    let mut tables: Vec<LoopTable> = cat
        .entries
        .iter()
        .map(|e| build_table(&e.spec()?))
        .collect::<Result<_>>()?;

    let end = limit.map_or(candidates.len(), |l| (cat.processed + l).min(candidates.len()));
    const CHUNK: usize = 64;
    let mut start = cat.processed;
    while start < end {
        let stop = (start + CHUNK).min(end);
        let built: Vec<Built> = candidates[start..stop]
            .par_iter()
            .map(|spec| Built {
                spec: spec.clone(),
                outcome: build_table(spec).map(|t| {
                    let fp = fingerprint(&t);
                    (t, fp)
                }),
            })
            .collect();
        for b in built {
            let (table, fp) = match b.outcome {
                Ok(v) => v,
                Err(ForgeError::Resource(msg)) => {
                    warn!("skipping {} with n = {}: {msg}", b.spec.pair().group(), b.spec.n());
                    cat.skipped.push(format!(
                        "group {} g {:?} n {}: {msg}",
                        b.spec.pair().group(),
                        b.spec.pair().g().images(),
                        b.spec.n()
                    ));
                    continue;
                }
                Err(e) => return Err(e),
            };
            let mut merged = false;
            for (k, e) in cat.entries.iter_mut().enumerate() {
                if e.fingerprint != fp {
                    continue;
                }
                match isomorphic(&tables[k], &table) {
                    IsoResult::Isomorphic(_) => {
                        e.multiplicity += 1;
                        merged = true;
                        break;
                    }
                    IsoResult::NotIsomorphic => {}
                    IsoResult::Unknown => {
                        warn!("isomorphism undecided for order {}; keeping both", table.order());
                    }
                }
            }
            if !merged {
                let pair = b.spec.pair();
                cat.entries.push(CatalogEntry {
                    pair: PairFile::from_pair(pair),
                    n: b.spec.n(),
                    order: table.order(),
                    g_order: pair.g_order(),
                    r: pair.r().finite().unwrap_or(0),
                    gamma_zero: pair.gamma().is_zero(),
                    fingerprint: fp,
                    table_sha256: table_hash(&table),
                    multiplicity: 1,
                });
                tables.push(table);
            }
        }
        info!("catalog: processed {stop}/{} candidates, {} entries", candidates.len(), cat.entries.len());
        start = stop;
    }
    cat.processed = end;
    cat.complete = end == candidates.len();
    Ok(cat)
}

/// `(group, g images, n, identity, witness)`.
pub type SweepViolation = (String, Vec<usize>, u64, String, [usize; 3]);

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub loops_checked: usize,
    pub largest_order: usize,
    pub violations: Vec<SweepViolation>,
}

/// Builds every candidate loop (no dedup) and scans all four Moufang identities.
pub fn moufang_sweep(groups: &[AbelianGroup], cyclic_max: u64) -> Result<SweepReport> {
    let mut report = SweepReport::default();
    for spec in candidate_specs(groups, cyclic_max)? {
        let t = build_table(&spec)?;
        report.loops_checked += 1;
        report.largest_order = report.largest_order.max(t.order());
        for r in t.check_moufang().identities {
            if let Some(w) = r.witness {
                report.violations.push((
                    spec.pair().group().to_string(),
                    spec.pair().g().images().to_vec(),
                    spec.n(),
                    r.identity.to_string(),
                    w,
                ));
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_by_order() {
        let lits: Vec<String> = abelian_groups_of_order(8).iter().map(|g| g.to_string()).collect();
        assert_eq!(lits.len(), 3);
        for l in ["8", "2,4", "2,2,2"] {
            assert!(lits.contains(&l.to_string()), "{l} in {lits:?}");
        }
        assert_eq!(abelian_groups_of_order(1)[0].to_string(), "1");
        assert_eq!(abelian_groups_of_order(12).len(), 2);
        assert_eq!(abelian_groups_up_to(8).len(), 11);
    }

    #[test]
    fn bimap_enumeration_examples() {
        let z2: AbelianGroup = "2".parse().unwrap();
        assert_eq!(enumerate_bimaps(&z2).unwrap().len(), 1);
        let z33: AbelianGroup = "3,3".parse().unwrap();
        let maps = enumerate_bimaps(&z33).unwrap();
        assert_eq!(maps.len(), 1);
        assert!(maps[0].is_zero());
        let z222: AbelianGroup = "2,2,2".parse().unwrap();
        let maps = enumerate_bimaps(&z222).unwrap();
        // e3 has index 4; e1 index 1, e2 index 2
        assert!(maps.iter().any(|m| m.get(1, 2) == 4 && (0..8).all(|y| m.get(4, y) == 0)));
    }

    #[test]
    fn zero_gamma_gives_automorphisms() {
        let v4: AbelianGroup = "2,2".parse().unwrap();
        let auts = search_pairs(&v4, &BiAddMap::zero(v4.clone())).unwrap();
        assert_eq!(auts.len(), 6);
        assert!(auts.iter().all(|g| g.is_additive()));
        let z5: AbelianGroup = "5".parse().unwrap();
        assert_eq!(search_pairs(&z5, &BiAddMap::zero(z5.clone())).unwrap().len(), 4);
    }

    #[test]
    fn bound_enforced() {
        let big: AbelianGroup = "17".parse().unwrap();
        assert!(matches!(enumerate_bimaps(&big), Err(ForgeError::Resource(_))));
    }

    #[test]
    fn tiny_catalog() {
        let z2: AbelianGroup = "2".parse().unwrap();
        let cat = build_catalog(&[z2], 2, None, None).unwrap();
        // n = 1 gives Z_2, n = 2 gives the Klein group
        assert_eq!(cat.entries.len(), 2);
        assert!(cat.complete);
        assert!(cat.entries.iter().all(|e| e.fingerprint.associative));
    }
}
