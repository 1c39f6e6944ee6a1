mod common;

use std::collections::BTreeSet;

use moufang_forge::extension::{
    build_table, central_cyclic_kernels, check_well_defined, ext_mul, ExtElement, ExtensionSpec,
};
use moufang_forge::loops::isomorphic;
use moufang_forge::loops::LoopTable;
use moufang_forge::search::{abelian_groups_up_to, candidate_specs, moufang_sweep};

use common::{all_pairs, fixture, group};

#[test]
fn quotient_by_x_is_cyclic_and_c_meets_x_trivially() {
    for l in &fixture().loops {
        let n = l.spec.n() as usize;
        let q = l.table.quotient(&l.spec.x_indices()).unwrap();
        assert!(isomorphic(&q, &LoopTable::cyclic(n).unwrap()).is_isomorphic(), "{:?}", l.spec);
        let xs: BTreeSet<usize> = l.spec.x_indices().into_iter().collect();
        let meet: Vec<usize> = l.spec.c_indices().into_iter().filter(|c| xs.contains(c)).collect();
        assert_eq!(meet, vec![l.table.identity()]);
        assert!(l.table.is_normal(&l.spec.x_indices()));
    }
}

#[test]
fn table_matches_product_formula() {
    for l in fixture().loops.iter().filter(|l| l.spec.order() <= 48) {
        let s = &l.spec;
        for a in 0..s.order() {
            for b in 0..s.order() {
                let e = ext_mul(s, s.element_at(a), s.element_at(b));
                assert_eq!(l.table.mul(a, b), s.index_of(e));
            }
        }
        assert_eq!(l.table.identity(), s.index_of(ExtElement { i: 0, x: 0 }));
    }
}

#[test]
fn commutative_catalog_loops_are_groups() {
    for l in &fixture().loops {
        if l.table.is_commutative() {
            assert!(l.table.is_associative(), "{:?}", l.spec);
        }
    }
}

#[test]
fn divisibility_matches_representative_independence() {
    let groups = abelian_groups_up_to(8);
    let mut ill = 0;
    for p in all_pairs(&groups) {
        for n in 1..=12u64 {
            let w = check_well_defined(n, &p).unwrap();
            assert_eq!(w.holds(), w.representative_independent, "n = {n}, {p:?}");
            assert_eq!(w.holds(), ExtensionSpec::new(n, p.clone()).is_ok());
            if !w.holds() {
                ill += 1;
                assert!(!w.failures().is_empty());
            }
        }
    }
    assert!(ill > 0);
}

#[test]
fn central_kernels_match_brute_force() {
    for l in fixture().loops.iter().filter(|l| l.spec.order() <= 48) {
        let s = &l.spec;
        let t = &l.table;
        let grp = s.pair().group();
        let center: BTreeSet<usize> = t.center().into_iter().collect();
        let xs: BTreeSet<usize> = s.x_indices().into_iter().collect();
        let cs: BTreeSet<usize> = s.c_indices().into_iter().collect();
        let mut expected = BTreeSet::new();
        for idx in 0..s.order() {
            let e = s.element_at(idx);
            let ord_c = s.n() / moufang_forge::abelian::gcd(s.n(), e.i);
            if !center.contains(&idx) || ord_c != grp.order_idx(e.x) {
                continue;
            }
            let cyc: Vec<usize> = t.subloop_generated(&[idx]);
            assert!(cyc.iter().all(|c| center.contains(c)));
            assert_eq!(cyc.iter().filter(|c| xs.contains(c)).count(), 1);
            assert_eq!(cyc.iter().filter(|c| cs.contains(c)).count(), 1);
            let mut sorted = cyc.clone();
            sorted.sort();
            expected.insert(sorted);
        }
        let got: BTreeSet<Vec<usize>> = central_cyclic_kernels(s).unwrap().into_iter().collect();
        assert_eq!(got, expected, "{s:?}");
    }
}

#[test]
fn sweep_covers_every_candidate() {
    let groups = vec![group("2,2"), group("4"), group("2,2,2")];
    let report = moufang_sweep(&groups, 8).unwrap();
    assert_eq!(report.loops_checked, candidate_specs(&groups, 8).unwrap().len());
    assert!(report.violations.is_empty(), "{:?}", report.violations);
    assert_eq!(report.largest_order, 64);
}

#[test]
fn catalog_entries_rebuild_to_their_hash() {
    let cat = &fixture().catalog;
    assert!(cat.complete);
    for (e, l) in cat.entries.iter().zip(&fixture().loops) {
        let t = build_table(&e.spec().unwrap()).unwrap();
        assert_eq!(moufang_forge::io::table_hash(&t), e.table_sha256);
        assert_eq!(t.order(), e.order);
        assert_eq!(e.gamma_zero, l.gamma_zero);
        assert_eq!(e.fingerprint.associative, t.is_associative());
    }
    for (i, a) in cat.entries.iter().enumerate() {
        for b in &cat.entries[i + 1..] {
            if a.fingerprint == b.fingerprint {
                let ta = build_table(&a.spec().unwrap()).unwrap();
                let tb = build_table(&b.spec().unwrap()).unwrap();
                assert!(!isomorphic(&ta, &tb).is_isomorphic());
            }
        }
    }
}
