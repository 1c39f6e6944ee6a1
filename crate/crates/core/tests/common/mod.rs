#![allow(dead_code)]

pub mod batteries;

use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use moufang_forge::extension::{build_table, ExtensionSpec};
use moufang_forge::loops::LoopTable;
use moufang_forge::pair::ConstructionPair;
use moufang_forge::search::{abelian_groups_up_to, build_catalog, enumerate_bimaps, search_pairs, Catalog};
use moufang_forge::AbelianGroup;

pub const CATALOG_MAX_GROUP_ORDER: u64 = 8;
pub const CATALOG_CYCLIC_MAX: u64 = 12;
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;
pub const SAMPLES: usize = 10_000;

pub struct CatalogLoop {
    pub spec: ExtensionSpec,
    pub table: LoopTable,
    pub gamma_zero: bool,
}

pub struct Fixture {
    pub catalog: Catalog,
    pub loops: Vec<CatalogLoop>,
}

/// Catalog over every abelian group of order ≤ 8 with `n ≤ 12`, built once per test binary.
pub fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let groups = abelian_groups_up_to(CATALOG_MAX_GROUP_ORDER);
        let catalog = build_catalog(&groups, CATALOG_CYCLIC_MAX, None, None).expect("catalog builds");
        let loops = catalog
            .entries
            .iter()
            .map(|e| {
                let spec = e.spec().expect("entry extension");
                let table = build_table(&spec).expect("entry table");
                CatalogLoop {
                    gamma_zero: spec.pair().gamma().is_zero(),
                    spec,
                    table,
                }
            })
            .collect();
        Fixture { catalog, loops }
    })
}

/// Every construction pair found by the search on the given groups.
pub fn all_pairs(groups: &[AbelianGroup]) -> Vec<ConstructionPair> {
    let mut out = Vec::new();
    for g in groups {
        for gamma in enumerate_bimaps(g).unwrap() {
            for perm in search_pairs(g, &gamma).unwrap() {
                out.push(ConstructionPair::new(perm, gamma.clone()).unwrap());
            }
        }
    }
    out
}

pub fn group(lit: &str) -> AbelianGroup {
    lit.parse().unwrap()
}

/// All tuples of the box `dims` when it has at most 10⁶ points, else a
/// fixed-seed sample of 10⁴.
pub fn tuples<const K: usize>(dims: [usize; K], seed: u64) -> Vec<[usize; K]> {
    let total: u128 = dims.iter().map(|&d| d as u128).product();
    if total == 0 {
        return Vec::new();
    }
    if total <= EXHAUSTIVE_LIMIT {
        let mut out = Vec::with_capacity(total as usize);
        let mut cur = [0usize; K];
        loop {
            out.push(cur);
            let mut k = K;
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < dims[k] {
                    break;
                }
                cur[k] = 0;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..SAMPLES)
        .map(|_| {
            let mut t = [0usize; K];
            for (slot, &d) in t.iter_mut().zip(&dims) {
                *slot = rng.gen_range(0..d);
            }
            t
        })
        .collect()
}

/// `[i, j]` for exponent windows written as non-negative offsets.
pub fn exponent(offset: usize, radius: i64) -> i64 {
    offset as i64 - radius
}
