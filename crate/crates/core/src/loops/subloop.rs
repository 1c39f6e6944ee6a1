use serde::Serialize;

use super::congruence::{congruence_from_pairs, Congruence};
use super::LoopTable;
use crate::error::{ForgeError, Result};

pub(super) fn generated(t: &LoopTable, gens: &[usize]) -> Vec<usize> {
    let n = t.order();
    let mut inside = vec![false; n];
    let mut members = vec![t.identity()];
    inside[t.identity()] = true;
    for &g in gens {
        if !inside[g] {
            inside[g] = true;
            members.push(g);
        }
    }
    // Each new member is multiplied against everything already present.
    let mut k = 0;
    while k < members.len() {
        let a = members[k];
        let mut j = 0;
        while j <= k {
            let b = members[j];
            for p in [t.mul(a, b), t.mul(b, a)] {
                if !inside[p] {
                    inside[p] = true;
                    members.push(p);
                }
            }
            j += 1;
        }
        k += 1;
    }
    members.sort_unstable();
    members
}

pub(super) fn is_subloop(t: &LoopTable, set: &[usize]) -> bool {
    let n = t.order();
    let mut inside = vec![false; n];
    for &s in set {
        inside[s] = true;
    }
    inside[t.identity()]
        && set
            .iter()
            .all(|&a| set.iter().all(|&b| inside[t.mul(a, b)] && inside[t.ldiv(a, b)] && inside[t.rdiv(a, b)]))
}

/// Subloop stable under every `T_x`, `L_{x,y}`, `R_{x,y}`.
pub(super) fn is_normal(t: &LoopTable, set: &[usize]) -> bool {
    if !is_subloop(t, set) {
        return false;
    }
    let n = t.order();
    let mut inside = vec![false; n];
    for &s in set {
        inside[s] = true;
    }
    set.iter().all(|&a| {
        (0..n).all(|x| {
            inside[t.conj(x, a)]
                && (0..n).all(|y| inside[t.inner_l(x, y, a)] && inside[t.inner_r(x, y, a)])
        })
    })
}

/// Identity class of the least congruence identifying every member of `set` with 1.
pub(super) fn normal_closure(t: &LoopTable, set: &[usize]) -> Vec<usize> {
    let pairs: Vec<(usize, usize)> = set.iter().map(|&s| (t.identity(), s)).collect();
    congruence_from_pairs(t, &pairs).class_of_element(t.identity())
}

pub(super) fn coset_congruence(t: &LoopTable, normal: &[usize]) -> Congruence {
    let pairs: Vec<(usize, usize)> = (0..t.order())
        .flat_map(|x| normal.iter().map(move |&s| (x, s)))
        .map(|(x, s)| (x, t.mul(x, s)))
        .collect();
    Congruence::from_unions(t.order(), &pairs)
}

pub(super) fn quotient(t: &LoopTable, normal: &[usize]) -> Result<LoopTable> {
    if !is_normal(t, normal) {
        return Err(ForgeError::Structural("quotient by a subset that is not a normal subloop".into()));
    }
    let cong = coset_congruence(t, normal);
    let k = cong.block_count();
    let reps: Vec<usize> = cong.blocks().iter().map(|b| b[0]).collect();
    let mut flat = vec![usize::MAX; k * k];
    for x in 0..t.order() {
        for y in 0..t.order() {
            let (bx, by, bz) = (cong.block(x), cong.block(y), cong.block(t.mul(x, y)));
            let cell = &mut flat[bx * k + by];
            if *cell == usize::MAX {
                *cell = bz;
            } else if *cell != bz {
                return Err(ForgeError::Internal(format!(
                    "coset product not well defined at ({x},{y})"
                )));
            }
        }
    }
    debug_assert_eq!(reps.len(), k);
    LoopTable::from_flat(k, cong.block(t.identity()), flat)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedSubloops {
    pub associator_subloop: Vec<usize>,
    pub commutator_subloop: Vec<usize>,
    pub derived: Vec<usize>,
}

/// Normal closures of all associators, all commutators, and both together.
pub fn derived_subloops(t: &LoopTable) -> DerivedSubloops {
    let n = t.order();
    let mut assoc = vec![false; n];
    let mut comm = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            comm[t.commutator(x, y)] = true;
            for z in 0..n {
                assoc[t.associator(x, y, z)] = true;
            }
        }
    }
    let collect = |m: &[bool]| (0..n).filter(|&i| m[i]).collect::<Vec<_>>();
    let a = collect(&assoc);
    let c = collect(&comm);
    let both: Vec<usize> = (0..n).filter(|&i| assoc[i] || comm[i]).collect();
    DerivedSubloops {
        associator_subloop: normal_closure(t, &a),
        commutator_subloop: normal_closure(t, &c),
        derived: normal_closure(t, &both),
    }
}
